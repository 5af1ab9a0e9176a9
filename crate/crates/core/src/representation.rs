//! Finite-dimensional matrix models: partial representations of `G`,
//! representations of `S(G)`, covariant representations of the projection
//! algebra, and representations of `C_p*(G)`, with the maps between them.

use std::collections::{BTreeMap, BTreeSet};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::action::{validate_partial_action, GroupoidPartialAction};
use crate::groupoid::{ElementId, FiniteGroupoid, GroupoidError};
use crate::projection::{build_cp_star_algebra, CpStarAlgebra};
use crate::report::Report;
use crate::semigroupoid::{ExelSemigroupoid, SgElement};

/// Default tolerance for matrix identities.
pub const TAU: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepError {
    #[error(transparent)]
    Groupoid(#[from] GroupoidError),
    #[error("malformed representation: {0}")]
    Malformed(String),
    #[error("input fails its axioms: {}", .0.join(", "))]
    InvalidInput(Vec<String>),
    #[error("constructed representation fails: {}", .0.join(", "))]
    Correspondence(Vec<String>),
}

fn failing(rep: &Report) -> Vec<String> {
    rep.checks
        .iter()
        .filter(|c| !c.passed())
        .map(|c| match c.witnesses.first() {
            Some(w) => format!("{} at {w}", c.axiom),
            None => c.axiom.clone(),
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix(pub DMatrix<Complex64>);

impl Matrix {
    pub fn zeros(n: usize) -> Self {
        Matrix(DMatrix::zeros(n, n))
    }

    pub fn identity(n: usize) -> Self {
        Matrix(DMatrix::identity(n, n))
    }

    /// Row-major entries.
    pub fn from_entries(n: usize, entries: &[Complex64]) -> Result<Self, RepError> {
        if entries.len() != n * n {
            return Err(RepError::Malformed(format!("expected {} entries, got {}", n * n, entries.len())));
        }
        Ok(Matrix(DMatrix::from_row_slice(n, n, entries)))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn entries(&self) -> Vec<Complex64> {
        self.0.transpose().iter().copied().collect()
    }

    pub fn adjoint(&self) -> Self {
        Matrix(self.0.adjoint())
    }

    pub fn mul(&self, other: &Matrix) -> Self {
        Matrix(&self.0 * &other.0)
    }

    pub fn product<'a>(n: usize, factors: impl IntoIterator<Item = &'a Matrix>) -> Self {
        factors.into_iter().fold(Matrix::identity(n), |acc, m| acc.mul(m))
    }

    /// Largest entrywise modulus of the difference.
    pub fn distance(&self, other: &Matrix) -> f64 {
        (&self.0 - &other.0).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Matrix, tau: f64) -> bool {
        self.distance(other) <= tau
    }

    pub fn is_zero(&self, tau: f64) -> bool {
        self.0.iter().all(|z| z.norm() <= tau)
    }

    /// Self-adjoint idempotent.
    pub fn is_projection(&self, tau: f64) -> bool {
        self.approx_eq(&self.adjoint(), tau) && self.approx_eq(&self.mul(self), tau)
    }

    /// `u u* u = u`.
    pub fn is_partial_isometry(&self, tau: f64) -> bool {
        self.mul(&self.adjoint()).mul(self).approx_eq(self, tau)
    }
}

/// JSON form `{"dim": n, "pi": {element: [[re, im], ...]}}`, entries row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RepSpec {
    pub dim: usize,
    pub pi: BTreeMap<String, Vec<[f64; 2]>>,
}

/// `t ↦ π(t)`, candidate partial representation of `G` on `C^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct PartialRep {
    groupoid: FiniteGroupoid,
    dim: usize,
    pi: Vec<Matrix>,
}

impl PartialRep {
    pub fn new(groupoid: FiniteGroupoid, dim: usize, pi: Vec<Matrix>) -> Result<Self, RepError> {
        if pi.len() != groupoid.len() {
            return Err(RepError::Malformed("one matrix per element required".into()));
        }
        if pi.iter().any(|m| m.dim() != dim) {
            return Err(RepError::Malformed(format!("all matrices must be {dim}×{dim}")));
        }
        Ok(PartialRep { groupoid, dim, pi })
    }

    pub fn from_spec(groupoid: &FiniteGroupoid, spec: &RepSpec) -> Result<Self, RepError> {
        let mut pi: Vec<Option<Matrix>> = vec![None; groupoid.len()];
        for (label, entries) in &spec.pi {
            let x = groupoid.id(label)?;
            let entries: Vec<Complex64> = entries.iter().map(|&[re, im]| Complex64::new(re, im)).collect();
            pi[x.index()] = Some(Matrix::from_entries(spec.dim, &entries)?);
        }
        let pi = groupoid
            .elements()
            .map(|x| {
                pi[x.index()]
                    .take()
                    .ok_or_else(|| RepError::Malformed(format!("no matrix for `{}`", groupoid.label(x))))
            })
            .collect::<Result<_, _>>()?;
        Self::new(groupoid.clone(), spec.dim, pi)
    }

    pub fn to_spec(&self) -> RepSpec {
        RepSpec {
            dim: self.dim,
            pi: self
                .groupoid
                .elements()
                .map(|x| {
                    (self.groupoid.label(x).to_string(), self.pi(x).entries().iter().map(|z| [z.re, z.im]).collect())
                })
                .collect(),
        }
    }

    pub fn groupoid(&self) -> &FiniteGroupoid {
        &self.groupoid
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn pi(&self, t: ElementId) -> &Matrix {
        &self.pi[t.index()]
    }

    pub fn approx_eq(&self, other: &PartialRep, tau: f64) -> bool {
        self.groupoid == other.groupoid
            && self.dim == other.dim
            && self.pi.iter().zip(&other.pi).all(|(a, b)| a.approx_eq(b, tau))
    }
}

/// (PR1)-(PR3), with (PR3) read as "π(e) is an orthogonal projection", and
/// the consequences `π(s⁻¹)π(s)π(t) = π(s⁻¹)π(st)`, `π(r(t))π(t) = π(t)` and
/// `π(t)` a partial isometry.
pub fn check_partial_rep(p: &PartialRep, tau: f64) -> Report {
    let g = &p.groupoid;
    let pi = |x: ElementId| p.pi(x);
    let mut rep = Report::new("partial representation");
    for name in ["PR1", "PR2", "PR3", "π(s⁻¹)π(s)π(t) = π(s⁻¹)π(st)"] {
        rep.declare(name);
    }
    for s in g.elements() {
        for t in g.elements() {
            let Some(st) = g.mul(s, t) else { continue };
            let (si, ti) = (g.inverse(s), g.inverse(t));
            let w = || format!("({}, {})", g.label(s), g.label(t));
            rep.record("PR1", pi(s).mul(pi(t)).mul(pi(ti)).approx_eq(&pi(st).mul(pi(ti)), tau), w);
            rep.record(
                "π(s⁻¹)π(s)π(t) = π(s⁻¹)π(st)",
                pi(si).mul(pi(s)).mul(pi(t)).approx_eq(&pi(si).mul(pi(st)), tau),
                w,
            );
        }
    }
    for t in g.elements() {
        let w = || g.label(t).to_string();
        rep.record("PR2", pi(g.inverse(t)).approx_eq(&pi(t).adjoint(), tau), w);
        rep.record("π(r(t))π(t) = π(t)", pi(g.range(t)).mul(pi(t)).approx_eq(pi(t), tau), w);
        rep.record("π(t) partial isometry", pi(t).is_partial_isometry(tau), w);
    }
    for &e in g.units() {
        rep.record("PR3", pi(e).is_projection(tau), || g.label(e).to_string());
    }
    rep
}

/// Partial permutation matrices of a partial action on the free span of the set.
pub fn regular_partial_rep(a: &GroupoidPartialAction) -> Result<PartialRep, RepError> {
    let rep = validate_partial_action(a);
    if !rep.is_ok() {
        return Err(RepError::InvalidInput(failing(&rep)));
    }
    let g = a.groupoid();
    let n = a.points().len();
    let pi = g
        .elements()
        .map(|x| {
            let mut m = Matrix::zeros(n);
            for (from, to) in a.map(x).pairs() {
                m.0[(to, from)] = Complex64::new(1.0, 0.0);
            }
            m
        })
        .collect();
    PartialRep::new(g.clone(), n, pi)
}

/// `α ↦ π(α)` on every element of `S(G)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SgRep {
    sg: ExelSemigroupoid,
    dim: usize,
    pi: BTreeMap<SgElement, Matrix>,
}

impl SgRep {
    pub fn new(sg: ExelSemigroupoid, dim: usize, pi: BTreeMap<SgElement, Matrix>) -> Result<Self, RepError> {
        if pi.values().any(|m| m.dim() != dim) {
            return Err(RepError::Malformed(format!("all matrices must be {dim}×{dim}")));
        }
        Ok(SgRep { sg, dim, pi })
    }

    pub fn semigroupoid(&self) -> &ExelSemigroupoid {
        &self.sg
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Missing elements are read as the zero matrix.
    pub fn pi(&self, a: &SgElement) -> Matrix {
        self.pi.get(a).cloned().unwrap_or_else(|| Matrix::zeros(self.dim))
    }

    pub fn approx_eq(&self, other: &SgRep, tau: f64) -> bool {
        self.dim == other.dim
            && self.sg == other.sg
            && self.sg.enumerate().iter().all(|a| self.pi(a).approx_eq(&other.pi(a), tau))
    }
}

/// (R1)-(R3), with (R3) read as "π(e) is an orthogonal projection".
pub fn check_sg_rep(r: &SgRep, tau: f64) -> Report {
    let sg = &r.sg;
    let elems = sg.enumerate();
    let known: BTreeSet<&SgElement> = elems.iter().collect();
    let mut rep = Report::new("S(G) representation");
    for name in ["defined on S(G)", "R1", "R2", "R3"] {
        rep.declare(name);
    }
    for k in r.pi.keys() {
        rep.record("defined on S(G)", known.contains(k), || format!("{k:?}"));
    }
    for a in &elems {
        let w = || sg.display(a).to_string();
        rep.record("R2", r.pi(&sg.star(a)).approx_eq(&r.pi(a).adjoint(), tau), w);
        if sg.is_idempotent(a) {
            rep.record("R3", r.pi(a).is_projection(tau), w);
        }
        for b in &elems {
            let Some(ab) = sg.mul(a, b) else { continue };
            rep.record("R1", r.pi(&ab).approx_eq(&r.pi(a).mul(&r.pi(b)), tau), || {
                format!("({}, {})", sg.display(a), sg.display(b))
            });
        }
    }
    rep
}

/// `π̄(ε_r1 ⋯ ε_rn [s]) = π(r1)π(r1⁻¹) ⋯ π(s)`.
pub fn rep_g_to_sg(p: &PartialRep, tau: f64) -> Result<SgRep, RepError> {
    let rep = check_partial_rep(p, tau);
    if !rep.is_ok() {
        return Err(RepError::InvalidInput(failing(&rep)));
    }
    let sg = ExelSemigroupoid::new(p.groupoid.clone());
    let pi = sg
        .enumerate()
        .into_iter()
        .map(|a| {
            let m = Matrix::product(p.dim, sg.word_of(&a).iter().map(|&x| p.pi(x)));
            (a, m)
        })
        .collect();
    let out = SgRep::new(sg, p.dim, pi)?;
    let check = check_sg_rep(&out, tau);
    if !check.is_ok() {
        return Err(RepError::Correspondence(failing(&check)));
    }
    Ok(out)
}

/// `π(t) = ρ([t])`.
pub fn rep_sg_to_g(r: &SgRep, tau: f64) -> Result<PartialRep, RepError> {
    let rep = check_sg_rep(r, tau);
    if !rep.is_ok() {
        return Err(RepError::InvalidInput(failing(&rep)));
    }
    let g = r.sg.groupoid();
    let pi = g.elements().map(|t| r.pi(&r.sg.generator(t).expect("t in G"))).collect();
    let out = PartialRep::new(g.clone(), r.dim, pi)?;
    let check = check_partial_rep(&out, tau);
    if !check.is_ok() {
        return Err(RepError::Correspondence(failing(&check)));
    }
    Ok(out)
}

/// `(ρ, u)` for the translation action on the projection algebra; `rho` is
/// indexed by projection-algebra basis, `u` by element.
#[derive(Debug, Clone)]
pub struct CovariantRep {
    cstar: CpStarAlgebra,
    dim: usize,
    rho: Vec<Matrix>,
    u: Vec<Matrix>,
}

impl CovariantRep {
    pub fn new(cstar: CpStarAlgebra, dim: usize, rho: Vec<Matrix>, u: Vec<Matrix>) -> Result<Self, RepError> {
        if rho.len() != cstar.projections().dim() || u.len() != cstar.groupoid().len() {
            return Err(RepError::Malformed("one ρ per basis projection and one u per element required".into()));
        }
        if rho.iter().chain(&u).any(|m| m.dim() != dim) {
            return Err(RepError::Malformed(format!("all matrices must be {dim}×{dim}")));
        }
        Ok(CovariantRep { cstar, dim, rho, u })
    }

    pub fn rho(&self, i: usize) -> &Matrix {
        &self.rho[i]
    }

    pub fn u(&self, g: ElementId) -> &Matrix {
        &self.u[g.index()]
    }
}

/// `ρ` a *-representation of the projection algebra, each `u_g` a partial
/// isometry, (CR1)-(CR3), and the consequences `π(x)u_g u_g⁻¹ = π(x) = u_g u_g⁻¹ π(x)`
/// for `x ∈ D_g`.
pub fn check_covariant(c: &CovariantRep, tau: f64) -> Report {
    let proj = c.cstar.projections();
    let alg = proj.algebra();
    let ctx = c.cstar.crossed_product().context();
    let g = c.cstar.groupoid();
    let zero = Matrix::zeros(c.dim);
    let mut rep = Report::new("covariant representation");
    for name in
        ["ρ multiplicative", "ρ self-adjoint", "u partial isometry", "CR1", "CR2", "CR3", "lemma (i)", "lemma (ii)"]
    {
        rep.declare(name);
    }
    for i in 0..proj.dim() {
        rep.record("ρ self-adjoint", c.rho(i).approx_eq(&c.rho(i).adjoint(), tau), || alg.label(i).to_string());
        for j in 0..proj.dim() {
            let want = alg.basis_mul(i, j).map_or(&zero, |k| c.rho(k));
            rep.record("ρ multiplicative", c.rho(i).mul(c.rho(j)).approx_eq(want, tau), || {
                format!("{} {}", alg.label(i), alg.label(j))
            });
        }
    }
    for x in g.elements() {
        let xi = g.inverse(x);
        let w = || g.label(x).to_string();
        rep.record("u partial isometry", c.u(x).is_partial_isometry(tau), w);
        rep.record("CR3", c.u(x).adjoint().approx_eq(c.u(xi), tau), w);
        for &i in ctx.domain(xi) {
            let moved = ctx.apply_basis(x, i).expect("i ∈ D_x⁻¹");
            let lhs = c.u(x).mul(c.rho(i)).mul(c.u(xi));
            rep.record("CR1", lhs.approx_eq(c.rho(moved), tau), || format!("{} on {}", g.label(x), alg.label(i)));
        }
        let uu = c.u(x).mul(c.u(xi));
        for &i in ctx.domain(x) {
            let w = || format!("{} on {}", g.label(x), alg.label(i));
            rep.record("lemma (i)", c.rho(i).mul(&uu).approx_eq(c.rho(i), tau), w);
            rep.record("lemma (ii)", uu.mul(c.rho(i)).approx_eq(c.rho(i), tau), w);
        }
        for h in g.elements() {
            let w = |i: usize| format!("({}, {}) on {}", g.label(x), g.label(h), alg.label(i));
            let uxh = c.u(x).mul(c.u(h));
            match g.mul(x, h) {
                Some(xh) => {
                    for &i in ctx.domain(x).intersection(ctx.domain(xh)) {
                        let ok = c.rho(i).mul(&uxh).approx_eq(&c.rho(i).mul(c.u(xh)), tau);
                        rep.record("CR2", ok, || w(i));
                    }
                }
                None => {
                    for i in 0..proj.dim() {
                        rep.record("CR2", c.rho(i).mul(&uxh).is_zero(tau), || w(i));
                    }
                }
            }
        }
    }
    rep
}

/// A linear map on `C_p*(G)` given on its basis.
#[derive(Debug, Clone)]
pub struct CstarRep {
    cstar: CpStarAlgebra,
    dim: usize,
    phi: Vec<Matrix>,
}

impl CstarRep {
    pub fn new(cstar: CpStarAlgebra, dim: usize, phi: Vec<Matrix>) -> Result<Self, RepError> {
        if phi.len() != cstar.dim() || phi.iter().any(|m| m.dim() != dim) {
            return Err(RepError::Malformed("one n×n matrix per basis element required".into()));
        }
        Ok(CstarRep { cstar, dim, phi })
    }

    pub fn algebra(&self) -> &CpStarAlgebra {
        &self.cstar
    }

    pub fn phi(&self, i: usize) -> &Matrix {
        &self.phi[i]
    }

    pub fn approx_eq(&self, other: &CstarRep, tau: f64) -> bool {
        self.dim == other.dim && self.phi.iter().zip(&other.phi).all(|(a, b)| a.approx_eq(b, tau))
    }
}

/// Multiplicativity and the star law on all basis pairs.
pub fn check_cstar_rep(r: &CstarRep, tau: f64) -> Report {
    let cp = r.cstar.crossed_product();
    let table = r.cstar.structure_constants();
    let zero = Matrix::zeros(r.dim);
    let mut rep = Report::new("C_p*(G) representation");
    rep.declare("multiplicative");
    rep.declare("star");
    for (i, row) in table.iter().enumerate() {
        let bi: crate::crossed::CpElement = cp.basis_element(i);
        let star = cp.star(&bi).expect("same context");
        let (&(t, p), _) = star.terms().iter().next().expect("star of a basis element is a basis element");
        let j = cp.basis().binary_search(&(t, p)).expect("in basis");
        rep.record("star", r.phi(j).approx_eq(&r.phi(i).adjoint(), tau), || cp.show_basis(i));
        for (j, k) in row.iter().enumerate() {
            let want = k.map_or(&zero, |k| r.phi(k));
            rep.record("multiplicative", r.phi(i).mul(r.phi(j)).approx_eq(want, tau), || {
                format!("{} · {}", cp.show_basis(i), cp.show_basis(j))
            });
        }
    }
    rep
}

/// `(π × u)(a δ_g) = π(a) u_g`.
pub fn integrate(c: &CovariantRep) -> CstarRep {
    let cp = c.cstar.crossed_product();
    let phi = cp.basis().iter().map(|&(g, i)| c.rho(i).mul(c.u(g))).collect();
    CstarRep { cstar: c.cstar.clone(), dim: c.dim, phi }
}

/// `ρ(P_E) = Q_E = π(ε_r1 ⋯ ε_rn)` (label order, `Q_∅ = I`) and `u_g = π([g])`.
pub fn covariant_from_sg(r: &SgRep) -> CovariantRep {
    let cstar = build_cp_star_algebra(r.sg.groupoid());
    let proj = cstar.projections();
    let rho = (0..proj.dim())
        .map(|i| {
            let factors: Vec<Matrix> = proj.set(i).iter().map(|&x| r.pi(&r.sg.epsilon(x).expect("x in G"))).collect();
            Matrix::product(r.dim, &factors)
        })
        .collect();
    let g = r.sg.groupoid();
    let u = g.elements().map(|x| r.pi(&r.sg.generator(x).expect("x in G"))).collect();
    CovariantRep { cstar, dim: r.dim, rho, u }
}

/// `ρ × u` from an `S(G)`-representation. Fails with `Correspondence` if
/// `(ρ, u)` is not covariant or `ρ × u` is not a *-homomorphism; this
/// happens when `π([e])π([f]) ≠ 0` for distinct units.
pub fn rep_sg_to_cstar(r: &SgRep, tau: f64) -> Result<CstarRep, RepError> {
    let rep = check_sg_rep(r, tau);
    if !rep.is_ok() {
        return Err(RepError::InvalidInput(failing(&rep)));
    }
    let cov = covariant_from_sg(r);
    let check = check_covariant(&cov, tau);
    if !check.is_ok() {
        return Err(RepError::Correspondence(failing(&check)));
    }
    let out = integrate(&cov);
    let check = check_cstar_rep(&out, tau);
    if !check.is_ok() {
        return Err(RepError::Correspondence(failing(&check)));
    }
    Ok(out)
}

/// `π(t) = φ(a_t)`, `a_t = P_{r(t), t} δ_t`.
pub fn rep_cstar_to_g(phi: &CstarRep, tau: f64) -> Result<PartialRep, RepError> {
    let rep = check_cstar_rep(phi, tau);
    if !rep.is_ok() {
        return Err(RepError::InvalidInput(failing(&rep)));
    }
    let cs = &phi.cstar;
    let g = cs.groupoid();
    let basis = cs.crossed_product().basis();
    let pi = g
        .elements()
        .map(|t| {
            let (&(s, p), _) = cs.a(t).terms().iter().next().expect("a_t is a monomial");
            phi.phi(basis.binary_search(&(s, p)).expect("a_t is a basis element")).clone()
        })
        .collect();
    let out = PartialRep::new(g.clone(), phi.dim, pi)?;
    let check = check_partial_rep(&out, tau);
    if !check.is_ok() {
        return Err(RepError::Correspondence(failing(&check)));
    }
    Ok(out)
}

/// Runs every conversion starting from `p` and checks that each loop returns
/// its starting point.
pub fn triangle(p: &PartialRep, tau: f64) -> Result<Report, RepError> {
    let b = rep_g_to_sg(p, tau)?;
    let c = rep_sg_to_cstar(&b, tau)?;
    let mut rep = Report::new("representation correspondence");
    rep.absorb("(a) ", check_partial_rep(p, tau));
    rep.absorb("(b) ", check_sg_rep(&b, tau));
    rep.absorb("(b→c) ", check_covariant(&covariant_from_sg(&b), tau));
    rep.absorb("(c) ", check_cstar_rep(&c, tau));

    let a_back = rep_sg_to_g(&b, tau)?;
    rep.record("a→b→a", a_back.approx_eq(p, tau), || "π".into());
    let b_back = rep_g_to_sg(&a_back, tau)?;
    rep.record("b→a→b", b_back.approx_eq(&b, tau), || "π̄".into());

    let a_tri = rep_cstar_to_g(&c, tau)?;
    rep.record("a→b→c→a", a_tri.approx_eq(p, tau), || "π".into());
    let b_tri = rep_g_to_sg(&a_tri, tau)?;
    rep.record("b→c→a→b", b_tri.approx_eq(&b, tau), || "π̄".into());
    let c_tri = rep_sg_to_cstar(&b_tri, tau)?;
    rep.record("c→a→b→c", c_tri.approx_eq(&c, tau), || "π × u".into());
    Ok(rep)
}
