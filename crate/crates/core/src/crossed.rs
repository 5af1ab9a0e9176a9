//! Algebraic crossed products `R ⋊ G` and `R ⋊ S(G) = L/N` over basis
//! algebras, and the isomorphism between them.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::action::{partial_to_sg, validate_sg_action, ActionError, SgAction};
use crate::algebra::{add_term, AlgPartialAction};
use crate::groupoid::ElementId;
use crate::linalg::{RowSpace, SparseVec};
use crate::report::Report;
use crate::scalar::Scalar;
use crate::semigroupoid::{ExelSemigroupoid, SgElement};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CrossedError {
    #[error("elements belong to different crossed products")]
    ContextMismatch,
    #[error("coefficient {basis} is not in the ideal at {at}")]
    NotInIdeal { at: String, basis: String },
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error("the action is not an action by ideals and isomorphisms: {}", .0.join(", "))]
    InvalidContext(Vec<String>),
}

/// `Σ a_g δ_g` with each `a_g ∈ D_g`, stored as `(g, basis) ↦ coefficient`.
#[derive(Debug, Clone, PartialEq)]
pub struct CpElement<S = BigRational> {
    context: u64,
    terms: BTreeMap<(ElementId, usize), S>,
}

impl<S: Scalar> CpElement<S> {
    pub fn terms(&self) -> &BTreeMap<(ElementId, usize), S> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Result<Self, CrossedError> {
        if self.context != other.context {
            return Err(CrossedError::ContextMismatch);
        }
        let mut out = self.clone();
        for (k, c) in &other.terms {
            add_term(&mut out.terms, *k, c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = CpElement { context: self.context, terms: BTreeMap::new() };
        for (k, a) in &self.terms {
            add_term(&mut out.terms, *k, c.clone() * a.clone());
        }
        out
    }
}

/// Exhaustive over basis monomials, or random finite sums from a seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SamplingPlan {
    Exhaustive,
    Random { trials: usize, seed: u64 },
}

/// `R ⋊_α G`.
#[derive(Debug, Clone)]
pub struct CrossedProduct {
    ctx: AlgPartialAction,
    basis: Vec<(ElementId, usize)>,
}

impl CrossedProduct {
    pub fn new(ctx: AlgPartialAction) -> Self {
        let g = ctx.basis_action().groupoid();
        let basis = g.elements().flat_map(|x| ctx.domain(x).iter().map(move |&p| (x, p))).collect();
        CrossedProduct { ctx, basis }
    }

    pub fn context(&self) -> &AlgPartialAction {
        &self.ctx
    }

    /// Basis `{b δ_g : b basis element of D_g}`.
    pub fn basis(&self) -> &[(ElementId, usize)] {
        &self.basis
    }

    /// `Σ_g dim D_g`.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn zero<S: Scalar>(&self) -> CpElement<S> {
        CpElement { context: self.ctx.tag(), terms: BTreeMap::new() }
    }

    pub fn monomial<S: Scalar>(&self, g: ElementId, p: usize, c: S) -> Result<CpElement<S>, CrossedError> {
        if !self.ctx.domain(g).contains(&p) {
            let grp = self.ctx.basis_action().groupoid();
            return Err(CrossedError::NotInIdeal {
                at: format!("D_{}", grp.label(g)),
                basis: self.ctx.algebra().label(p).to_string(),
            });
        }
        let mut x = self.zero();
        add_term(&mut x.terms, (g, p), c);
        Ok(x)
    }

    pub fn basis_element<S: Scalar>(&self, i: usize) -> CpElement<S> {
        let (g, p) = self.basis[i];
        self.monomial(g, p, S::one()).expect("basis pairs lie in their ideals")
    }

    /// `(b_p δ_g)(b_q δ_h) = α_g(α_g⁻¹(b_p) b_q) δ_gh`, or `None` for 0.
    pub fn basis_product(&self, (g, p): (ElementId, usize), (h, q): (ElementId, usize)) -> Option<(ElementId, usize)> {
        let grp = self.ctx.basis_action().groupoid();
        let gh = grp.mul(g, h)?;
        let back = self.ctx.apply_basis(grp.inverse(g), p).expect("coefficient lies in D_g");
        let m = self.ctx.algebra().basis_mul(back, q)?;
        // D_g⁻¹ is an ideal, so m ∈ D_g⁻¹
        let r = self.ctx.apply_basis(g, m).expect("D_g⁻¹ is an ideal");
        Some((gh, r))
    }

    pub fn multiply<S: Scalar>(&self, x: &CpElement<S>, y: &CpElement<S>) -> Result<CpElement<S>, CrossedError> {
        if x.context != self.ctx.tag() || y.context != self.ctx.tag() {
            return Err(CrossedError::ContextMismatch);
        }
        let mut out = self.zero();
        for (&u, a) in &x.terms {
            for (&v, b) in &y.terms {
                if let Some(k) = self.basis_product(u, v) {
                    add_term(&mut out.terms, k, a.clone() * b.clone());
                }
            }
        }
        Ok(out)
    }

    /// `(a δ_g)* = α_g⁻¹(a*) δ_g⁻¹`; basis elements are self-adjoint.
    pub fn star<S: Scalar>(&self, x: &CpElement<S>) -> Result<CpElement<S>, CrossedError> {
        if x.context != self.ctx.tag() {
            return Err(CrossedError::ContextMismatch);
        }
        let grp = self.ctx.basis_action().groupoid();
        let mut out = self.zero();
        for (&(g, p), c) in &x.terms {
            let gi = grp.inverse(g);
            let q = self.ctx.apply_basis(gi, p).expect("coefficient lies in D_g");
            add_term(&mut out.terms, (gi, q), c.conj());
        }
        Ok(out)
    }

    fn random_element(&self, rng: &mut ChaCha8Rng) -> CpElement<BigRational> {
        let mut x = self.zero();
        for &k in &self.basis {
            if rng.gen_bool(0.5) {
                let c: i64 = rng.gen_range(-3..=3);
                add_term(&mut x.terms, k, BigRational::from_i64(c));
            }
        }
        x
    }

    /// `(xy)z = x(yz)`, `x** = x` and `(xy)* = y*x*`.
    pub fn check_associativity(&self, plan: SamplingPlan) -> Report {
        let mut rep = Report::new("crossed product R⋊G");
        rep.declare("associative");
        rep.declare("star involutive");
        rep.declare("star anti-multiplicative");
        let mul = |x: &CpElement, y: &CpElement| self.multiply(x, y).expect("same context");
        let star = |x: &CpElement| self.star(x).expect("same context");
        match plan {
            SamplingPlan::Exhaustive => {
                let n = self.dim();
                let bad = associativity_failures(n, |i, j| {
                    self.basis_product(self.basis[i], self.basis[j]).map(|k| self.index_of(k))
                });
                record_triples(&mut rep, "associative", n, &bad, |i| self.show_basis(i));
                for i in 0..n {
                    let x: CpElement = self.basis_element(i);
                    rep.record("star involutive", star(&star(&x)) == x, || self.show_basis(i));
                    for j in 0..n {
                        let y: CpElement = self.basis_element(j);
                        rep.record("star anti-multiplicative", star(&mul(&x, &y)) == mul(&star(&y), &star(&x)), || {
                            format!("{} · {}", self.show_basis(i), self.show_basis(j))
                        });
                    }
                }
            }
            SamplingPlan::Random { trials, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                for t in 0..trials {
                    let (x, y, z) =
                        (self.random_element(&mut rng), self.random_element(&mut rng), self.random_element(&mut rng));
                    rep.record("associative", mul(&mul(&x, &y), &z) == mul(&x, &mul(&y, &z)), || format!("trial {t}"));
                    rep.record("star involutive", star(&star(&x)) == x, || format!("trial {t}"));
                    rep.record("star anti-multiplicative", star(&mul(&x, &y)) == mul(&star(&y), &star(&x)), || {
                        format!("trial {t}")
                    });
                }
            }
        }
        rep
    }

    fn index_of(&self, k: (ElementId, usize)) -> usize {
        self.basis.binary_search(&k).expect("products stay in the basis")
    }

    pub fn show_basis(&self, i: usize) -> String {
        let (g, p) = self.basis[i];
        format!("{}δ_{}", self.ctx.algebra().label(p), self.ctx.basis_action().groupoid().label(g))
    }

    /// Solves `u x = x = x u` for all basis `x`.
    pub fn find_unit(&self) -> Option<CpElement> {
        let n = self.dim();
        let mut eqs = Vec::new();
        for j in 0..n {
            // coefficient of basis k in Σ_i c_i b_i b_j, and in Σ_i c_i b_j b_i
            for side in [true, false] {
                let mut rows: BTreeMap<usize, SparseVec> = BTreeMap::new();
                for i in 0..n {
                    let (a, b) = if side { (i, j) } else { (j, i) };
                    if let Some(k) = self.basis_product(self.basis[a], self.basis[b]) {
                        rows.entry(self.index_of(k)).or_default().insert(i, BigRational::one());
                    }
                }
                for k in 0..n {
                    let rhs = if k == j { BigRational::one() } else { BigRational::zero() };
                    eqs.push((rows.remove(&k).unwrap_or_default(), rhs));
                }
            }
        }
        let sol = crate::linalg::solve(n, &eqs)?;
        let mut u = self.zero();
        for (i, c) in sol.into_iter().enumerate() {
            add_term(&mut u.terms, self.basis[i], c);
        }
        Some(u)
    }
}

/// Basis triples `(i, j, k)` with `(b_i b_j) b_k ≠ b_i (b_j b_k)` for a
/// product of basis elements that is again a basis element or 0.
fn associativity_failures(n: usize, prod: impl Fn(usize, usize) -> Option<usize> + Sync) -> Vec<(usize, usize, usize)> {
    (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            let prod = &prod;
            (0..n).flat_map(move |j| {
                (0..n).filter_map(move |k| {
                    let left = prod(i, j).and_then(|ij| prod(ij, k));
                    let right = prod(j, k).and_then(|jk| prod(i, jk));
                    (left != right).then_some((i, j, k))
                })
            })
        })
        .collect()
}

fn record_triples(
    rep: &mut Report,
    axiom: &str,
    n: usize,
    bad: &[(usize, usize, usize)],
    show: impl Fn(usize) -> String,
) {
    let bad: BTreeSet<_> = bad.iter().copied().collect();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let ok = !bad.contains(&(i, j, k));
                rep.record(axiom, ok, || format!("({}, {}, {})", show(i), show(j), show(k)));
            }
        }
    }
}

/// `Σ a_s δ_s` in `L` with `a_s ∈ E_s`.
#[derive(Debug, Clone, PartialEq)]
pub struct LElement<S = BigRational> {
    context: u64,
    terms: BTreeMap<(SgElement, usize), S>,
}

impl<S: Scalar> LElement<S> {
    pub fn terms(&self) -> &BTreeMap<(SgElement, usize), S> {
        &self.terms
    }
}

/// Canonical representative of a class in `L/N`: supported on generators `[g]`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuotientElement<S = BigRational> {
    terms: BTreeMap<(ElementId, usize), S>,
}

impl<S: Scalar> QuotientElement<S> {
    pub fn terms(&self) -> &BTreeMap<(ElementId, usize), S> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// `L = ⊕_s E_s δ_s` for the `S(G)`-action induced by a partial action.
#[derive(Debug, Clone)]
pub struct SgCrossedProduct {
    ctx: AlgPartialAction,
    sg: ExelSemigroupoid,
    beta: SgAction,
    basis: Vec<(SgElement, usize)>,
}

impl SgCrossedProduct {
    /// Fails if the context is invalid or some `E_s` is not an ideal.
    pub fn new(ctx: AlgPartialAction) -> Result<Self, CrossedError> {
        let rep = ctx.validate();
        if !rep.is_ok() {
            return Err(CrossedError::InvalidContext(rep.failing().iter().map(|s| s.to_string()).collect()));
        }
        let beta = partial_to_sg(ctx.basis_action())?;
        let sg = beta.semigroupoid().clone();
        let mut basis = Vec::new();
        for s in sg.enumerate() {
            let e = beta.set(&s);
            if !ctx.algebra().is_ideal(&e) {
                return Err(CrossedError::InvalidContext(vec![format!("E_{} is not an ideal", sg.display(&s))]));
            }
            basis.extend(e.into_iter().map(|p| (s.clone(), p)));
        }
        Ok(SgCrossedProduct { ctx, sg, beta, basis })
    }

    pub fn semigroupoid(&self) -> &ExelSemigroupoid {
        &self.sg
    }

    pub fn beta(&self) -> &SgAction {
        &self.beta
    }

    pub fn basis(&self) -> &[(SgElement, usize)] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn zero<S: Scalar>(&self) -> LElement<S> {
        LElement { context: self.ctx.tag(), terms: BTreeMap::new() }
    }

    pub fn monomial<S: Scalar>(&self, s: &SgElement, p: usize, c: S) -> Result<LElement<S>, CrossedError> {
        if !self.beta.set(s).contains(&p) {
            return Err(CrossedError::NotInIdeal {
                at: format!("E_{}", self.sg.display(s)),
                basis: self.ctx.algebra().label(p).to_string(),
            });
        }
        let mut x = self.zero();
        add_term(&mut x.terms, (s.clone(), p), c);
        Ok(x)
    }

    pub fn basis_element<S: Scalar>(&self, i: usize) -> LElement<S> {
        let (s, p) = &self.basis[i];
        self.monomial(s, *p, S::one()).expect("basis pairs lie in their ideals")
    }

    /// `(b_p δ_s)(b_q δ_t) = β_s(β_s*(b_p) b_q) δ_st`, or `None` for 0.
    pub fn basis_product(
        &self,
        (s, p): (&SgElement, usize),
        (t, q): (&SgElement, usize),
    ) -> Option<(SgElement, usize)> {
        let st = self.sg.mul(s, t)?;
        let back = self.beta.map(&self.sg.star(s)).apply(p).expect("coefficient lies in E_s");
        let m = self.ctx.algebra().basis_mul(back, q)?;
        let r = self.beta.map(s).apply(m).expect("E_s* is an ideal");
        Some((st, r))
    }

    pub fn multiply<S: Scalar>(&self, x: &LElement<S>, y: &LElement<S>) -> Result<LElement<S>, CrossedError> {
        if x.context != self.ctx.tag() || y.context != self.ctx.tag() {
            return Err(CrossedError::ContextMismatch);
        }
        let mut out = self.zero();
        for ((s, p), a) in &x.terms {
            for ((t, q), b) in &y.terms {
                if let Some(k) = self.basis_product((s, *p), (t, *q)) {
                    add_term(&mut out.terms, k, a.clone() * b.clone());
                }
            }
        }
        Ok(out)
    }

    /// `(a δ_s)* = β_s*(a*) δ_s*`.
    pub fn star<S: Scalar>(&self, x: &LElement<S>) -> LElement<S> {
        let mut out = self.zero();
        for ((s, p), c) in &x.terms {
            let ss = self.sg.star(s);
            let q = self.beta.map(&ss).apply(*p).expect("coefficient lies in E_s");
            add_term(&mut out.terms, (ss, q), c.conj());
        }
        out
    }

    /// Pushes every `a δ_α` to `a δ_[∂α]`. Legal because `α ≤ [∂α]` and
    /// `E_α ⊆ E_[∂α]`.
    pub fn quotient_normalize<S: Scalar>(&self, x: &LElement<S>) -> QuotientElement<S> {
        let mut terms = BTreeMap::new();
        for ((s, p), c) in &x.terms {
            add_term(&mut terms, (s.anchor(), *p), c.clone());
        }
        QuotientElement { terms }
    }

    /// `φ(a δ_g) = a δ_[g]`, as an element of `L`.
    pub fn lift<S: Scalar>(&self, x: &CpElement<S>) -> Result<LElement<S>, CrossedError> {
        if x.context != self.ctx.tag() {
            return Err(CrossedError::ContextMismatch);
        }
        let mut out = self.zero();
        for (&(g, p), c) in &x.terms {
            let s = self.sg.generator(g).expect("g is in G");
            add_term(&mut out.terms, (s, p), c.clone());
        }
        Ok(out)
    }

    pub fn phi<S: Scalar>(&self, x: &CpElement<S>) -> Result<QuotientElement<S>, CrossedError> {
        Ok(self.quotient_normalize(&self.lift(x)?))
    }

    /// `ψ(a δ_γ) = a δ_∂(γ)`.
    pub fn psi<S: Scalar>(&self, x: &LElement<S>) -> CpElement<S> {
        let mut out = CpElement { context: self.ctx.tag(), terms: BTreeMap::new() };
        for ((s, p), c) in &x.terms {
            add_term(&mut out.terms, (s.anchor(), *p), c.clone());
        }
        out
    }

    /// `ψ̄` on a canonical representative.
    pub fn psi_bar<S: Scalar>(&self, x: &QuotientElement<S>) -> CpElement<S> {
        CpElement { context: self.ctx.tag(), terms: x.terms.clone() }
    }

    /// Generators `a δ_r - a δ_t` of `N`, `r ≤ t`, `r ≠ t`, `a` a basis element of `E_r`.
    pub fn n_generators(&self) -> Vec<LElement> {
        let elems = self.sg.enumerate();
        let mut out = Vec::new();
        for r in &elems {
            for t in &elems {
                if r == t || !self.sg.leq(r, t).expect("same groupoid") {
                    continue;
                }
                for p in self.beta.set(r) {
                    let mut x = self.zero();
                    add_term(&mut x.terms, (r.clone(), p), BigRational::one());
                    add_term(&mut x.terms, (t.clone(), p), -BigRational::one());
                    out.push(x);
                }
            }
        }
        out
    }

    fn index_of(&self, s: &SgElement, p: usize) -> usize {
        self.basis.binary_search_by(|(t, q)| (t, *q).cmp(&(s, p))).expect("products stay in the basis")
    }

    fn coords(&self, x: &LElement) -> SparseVec {
        x.terms.iter().map(|((s, p), c)| (self.index_of(s, *p), c.clone())).collect()
    }

    fn element_of_coords(&self, v: &SparseVec) -> LElement {
        let mut x = self.zero();
        for (&i, c) in v {
            let (s, p) = &self.basis[i];
            add_term(&mut x.terms, (s.clone(), *p), c.clone());
        }
        x
    }

    /// Span of `N` and the two-sided ideal it generates.
    pub fn n_spaces(&self) -> (RowSpace, RowSpace) {
        let gens = self.n_generators();
        let mut span = RowSpace::new();
        let mut ideal = RowSpace::new();
        let mut queue = VecDeque::new();
        for x in &gens {
            let v = self.coords(x);
            span.insert(&v);
            if let Some(r) = ideal.insert(&v) {
                queue.push_back(r);
            }
        }
        while let Some(v) = queue.pop_front() {
            let x = self.element_of_coords(&v);
            for i in 0..self.dim() {
                let b = self.basis_element(i);
                for y in [self.multiply(&b, &x), self.multiply(&x, &b)] {
                    let y = self.coords(&y.expect("same context"));
                    if let Some(r) = ideal.insert(&y) {
                        queue.push_back(r);
                    }
                }
            }
        }
        (span, ideal)
    }

    pub fn show_basis(&self, i: usize) -> String {
        let (s, p) = &self.basis[i];
        format!("{}δ_{}", self.ctx.algebra().label(*p), self.sg.display(s))
    }
}

/// Dimensions of the spaces involved in the isomorphism.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Dimensions {
    pub crossed_product: usize,
    pub sum_of_ideals: usize,
    pub l: usize,
    pub n_span: usize,
    pub n_ideal: usize,
    pub quotient: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct IsoOutcome {
    pub report: Report,
    pub dims: Dimensions,
}

/// Verifies that `φ : R⋊G → L/N` and `ψ̄ : L/N → R⋊G` are mutually inverse
/// algebra homomorphisms, with `dim L/N` computed from the ideal generated by
/// `N` rather than from the representatives.
pub fn iso_roundtrip(ctx: &AlgPartialAction) -> Result<IsoOutcome, CrossedError> {
    let cp = CrossedProduct::new(ctx.clone());
    let l = SgCrossedProduct::new(ctx.clone())?;
    let sg = l.semigroupoid();
    let grp = sg.groupoid();
    let alg = ctx.algebra();
    let mut rep = Report::new("R⋊G ≅ L/N");

    rep.absorb("β: ", validate_sg_action(l.beta()));
    for s in sg.enumerate() {
        let m = l.beta().map(&s);
        for (p, bp) in m.pairs() {
            for (q, bq) in m.pairs() {
                let ok = alg.basis_mul(p, q).map(|r| m.apply(r)) == alg.basis_mul(bp, bq).map(Some);
                rep.record("β_s multiplicative", ok, || {
                    format!("β_{} on {} {}", sg.display(&s), alg.label(p), alg.label(q))
                });
            }
        }
        let top = sg.generator(s.anchor()).expect("anchor is in G");
        rep.record("E_α ⊆ E_[∂α]", l.beta().set(&s).is_subset(&l.beta().set(&top)), || {
            sg.display(&s).to_string()
        });
    }

    let n = l.dim();
    let bad = associativity_failures(n, |i, j| {
        let (s, p) = &l.basis[i];
        let (t, q) = &l.basis[j];
        l.basis_product((s, *p), (t, *q)).map(|(u, r)| l.index_of(&u, r))
    });
    record_triples(&mut rep, "L associative", n, &bad, |i| l.show_basis(i));

    let gens = l.n_generators();
    rep.declare("N-soundness");
    for x in &gens {
        let show = || {
            format!(
                "{:?}",
                x.terms.keys().map(|(s, p)| format!("{}δ_{}", alg.label(*p), sg.display(s))).collect::<Vec<_>>()
            )
        };
        rep.record("N-soundness", l.quotient_normalize(x).is_zero(), show);
        rep.record("N ⊆ ker ψ", l.psi(x).is_zero(), show);
    }
    let (span, ideal) = l.n_spaces();

    let cpb: Vec<CpElement> = (0..cp.dim()).map(|i| cp.basis_element(i)).collect();
    let lb: Vec<LElement> = (0..n).map(|i| l.basis_element(i)).collect();
    for (i, x) in cpb.iter().enumerate() {
        let px = l.phi(x)?;
        rep.record("ψ̄ ∘ φ = id", l.psi_bar(&px) == *x, || cp.show_basis(i));
        let xs = cp.star(x)?;
        rep.record("φ preserves star", l.phi(&xs)? == l.quotient_normalize(&l.star(&l.lift(x)?)), || cp.show_basis(i));
        for (j, y) in cpb.iter().enumerate() {
            let lhs = l.phi(&cp.multiply(x, y)?)?;
            let rhs = l.quotient_normalize(&l.multiply(&l.lift(x)?, &l.lift(y)?)?);
            rep.record("φ multiplicative", lhs == rhs, || format!("{} · {}", cp.show_basis(i), cp.show_basis(j)));
        }
    }
    for (i, x) in lb.iter().enumerate() {
        // x and φ(ψ̄(x̄)) lift to the same class modulo the ideal generated by N
        let back = l.lift(&l.psi(x))?;
        let diff = {
            let mut d = l.coords(x);
            for (k, c) in l.coords(&back) {
                add_term(&mut d, k, -c);
            }
            d
        };
        rep.record("φ ∘ ψ̄ = id", ideal.contains(&diff), || l.show_basis(i));
        for (j, y) in lb.iter().enumerate() {
            let lhs = l.psi(&l.multiply(x, y)?);
            let rhs = cp.multiply(&l.psi(x), &l.psi(y))?;
            rep.record("ψ multiplicative", lhs == rhs, || format!("{} · {}", l.show_basis(i), l.show_basis(j)));
        }
    }

    // the images of the R⋊G basis stay independent modulo N
    let mut with_images = ideal.clone();
    let independent = cpb.iter().all(|x| with_images.insert(&l.coords(&l.lift(x).expect("same context"))).is_some());
    rep.record("φ injective on basis", independent, || "basis images dependent modulo N".into());

    let sum: usize = grp.elements().map(|g| ctx.domain(g).len()).sum();
    let dims = Dimensions {
        crossed_product: cp.dim(),
        sum_of_ideals: sum,
        l: n,
        n_span: span.rank(),
        n_ideal: ideal.rank(),
        quotient: n - ideal.rank(),
    };
    rep.record("dim R⋊G = Σ dim D_g", dims.crossed_product == sum, || format!("{} vs {sum}", dims.crossed_product));
    rep.record("dim L/N = dim R⋊G", dims.quotient == dims.crossed_product, || {
        format!("{} vs {}", dims.quotient, dims.crossed_product)
    });
    Ok(IsoOutcome { report: rep, dims })
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::action::{ActionSpec, GroupoidPartialAction};
    use crate::groupoid::{arrow_groupoid, FiniteGroupoid};
    use crate::scalar::rat;

    pub(crate) fn z2_context() -> AlgPartialAction {
        let g = FiniteGroupoid::cyclic(2);
        let spec: ActionSpec = serde_json::from_str(
            r#"{"set": ["1", "2"], "D": {"e": ["1", "2"], "a": ["1"]},
                "alpha": {"e": {"1": "1", "2": "2"}, "a": {"1": "1"}}}"#,
        )
        .unwrap();
        AlgPartialAction::functions(&GroupoidPartialAction::from_spec(&g, &spec).unwrap())
    }

    pub(crate) fn g1_context() -> AlgPartialAction {
        let g = arrow_groupoid();
        let spec: ActionSpec = serde_json::from_str(
            r#"{"set": ["1", "2", "3"],
                "D": {"e": ["1", "2"], "f": ["3"], "gi": ["1"], "g": ["3"]},
                "alpha": {"e": {"1": "1", "2": "2"}, "f": {"3": "3"},
                          "gi": {"3": "1"}, "g": {"1": "3"}}}"#,
        )
        .unwrap();
        AlgPartialAction::functions(&GroupoidPartialAction::from_spec(&g, &spec).unwrap())
    }

    #[test]
    fn z2_products_by_hand() {
        let ctx = z2_context();
        assert!(ctx.validate().is_ok());
        let cp = CrossedProduct::new(ctx);
        let g = cp.context().basis_action().groupoid().clone();
        let (e, a) = (g.id("e").unwrap(), g.id("a").unwrap());
        let x = cp.monomial(a, 0, rat(1, 1)).unwrap();
        // (1_1 δ_a)(1_1 δ_a) = α_a(α_a(1_1) 1_1) δ_e = 1_1 δ_e
        assert_eq!(cp.multiply(&x, &x).unwrap(), cp.monomial(e, 0, rat(1, 1)).unwrap());
        assert_eq!(cp.star(&x).unwrap(), x);
        let one = cp.monomial(e, 0, rat(1, 1)).unwrap().add(&cp.monomial(e, 1, rat(1, 1)).unwrap()).unwrap();
        let y = cp.monomial(a, 0, rat(5, 2)).unwrap();
        assert_eq!(cp.multiply(&one, &y).unwrap(), y);
        assert_eq!(cp.find_unit().unwrap(), one);
        assert!(cp.monomial(a, 1, rat(1, 1)).is_err());
    }

    #[test]
    fn non_composable_products_vanish() {
        let cp = CrossedProduct::new(g1_context());
        let g = cp.context().basis_action().groupoid().clone();
        let gg = g.id("g").unwrap();
        let x = cp.monomial(gg, 2, rat(1, 1)).unwrap();
        assert!(cp.multiply(&x, &x).unwrap().is_zero());
    }

    #[test]
    fn context_mismatch_detected() {
        let a = CrossedProduct::new(z2_context());
        let b = CrossedProduct::new(g1_context());
        let x: CpElement = a.basis_element(0);
        let y: CpElement = b.basis_element(0);
        assert_eq!(a.multiply(&x, &y), Err(CrossedError::ContextMismatch));
        assert!(x.add(&y).is_err());
    }

    #[test]
    fn associativity_exhaustive_and_random() {
        for ctx in [z2_context(), g1_context()] {
            let cp = CrossedProduct::new(ctx);
            assert!(cp.check_associativity(SamplingPlan::Exhaustive).is_ok());
            assert!(cp.check_associativity(SamplingPlan::Random { trials: 20, seed: 7 }).is_ok());
        }
    }

    #[test]
    fn z2_isomorphism() {
        let out = iso_roundtrip(&z2_context()).unwrap();
        assert!(out.report.is_ok(), "{:#?}", out.report.failing());
        assert_eq!(out.dims.crossed_product, 3);
        assert_eq!(out.dims.quotient, 3);
    }

    #[test]
    fn g1_isomorphism() {
        let out = iso_roundtrip(&g1_context()).unwrap();
        assert!(out.report.is_ok(), "{:#?}", out.report.failing());
        assert_eq!(out.dims.quotient, out.dims.sum_of_ideals);
    }

    #[test]
    fn quotient_relations() {
        let l = SgCrossedProduct::new(z2_context()).unwrap();
        let sg = l.semigroupoid().clone();
        let a = sg.groupoid().id("a").unwrap();
        let ga = sg.generator(a).unwrap();
        // ε_a = ({a}, e) is pushed to [e]
        let eps_a = sg.epsilon(a).unwrap();
        let e = sg.groupoid().id("e").unwrap();
        let x = l.monomial(&eps_a, 0, rat(1, 1)).unwrap();
        let top = l.monomial(&sg.generator(e).unwrap(), 0, rat(1, 1)).unwrap();
        assert_eq!(l.quotient_normalize(&x), l.quotient_normalize(&top));
        let gens: LElement = l.monomial(&ga, 0, rat(1, 1)).unwrap();
        assert_eq!(l.quotient_normalize(&gens).terms().len(), 1);
    }
}
