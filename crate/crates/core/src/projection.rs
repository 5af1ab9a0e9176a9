//! The projection algebra `R` spanned by symbols `P_E`, its translation
//! partial action, and the algebraic crossed product `C_p*(G) = R ⋊ G`.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::One;

use crate::action::{GroupoidPartialAction, PartialBijection};
use crate::algebra::{AlgElement, AlgPartialAction, MonomialAlgebra};
use crate::crossed::{CpElement, CrossedProduct, SamplingPlan};
use crate::groupoid::{ElementId, FiniteGroupoid};
use crate::report::Report;

/// `Σ c_E P_E`, keyed by basis index.
pub type ProjElement = AlgElement<BigRational>;

/// Basis: `P_∅` and `P_E` for non-empty `E` inside a single class `X_g`.
#[derive(Debug, Clone)]
pub struct ProjectionAlgebra {
    groupoid: FiniteGroupoid,
    sets: Vec<BTreeSet<ElementId>>,
    index: BTreeMap<BTreeSet<ElementId>, usize>,
    algebra: MonomialAlgebra,
}

fn subsets(items: &[ElementId]) -> impl Iterator<Item = BTreeSet<ElementId>> + '_ {
    (1u64..1 << items.len())
        .map(move |mask| items.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &x)| x).collect())
}

impl ProjectionAlgebra {
    pub fn new(groupoid: &FiniteGroupoid) -> Self {
        let g = groupoid;
        assert!(g.len() < 64, "projection algebra limited to fewer than 64 elements");
        let mut sets = vec![BTreeSet::new()];
        for &e in g.units() {
            let class: Vec<ElementId> = g.elements().filter(|&x| g.range(x) == e).collect();
            sets.extend(subsets(&class));
        }
        sets.sort();
        let index: BTreeMap<_, _> = sets.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let n = sets.len();
        let single_class = |u: &BTreeSet<ElementId>| {
            let mut ranges = u.iter().map(|&x| g.range(x));
            ranges.next().is_none_or(|r| ranges.all(|s| s == r))
        };
        let table = (0..n * n)
            .map(|k| {
                let u: BTreeSet<ElementId> = sets[k / n].union(&sets[k % n]).copied().collect();
                single_class(&u).then(|| index[&u])
            })
            .collect();
        let labels = sets.iter().map(|s| format!("P{{{}}}", g.labels_of(s).join(","))).collect();
        ProjectionAlgebra { groupoid: g.clone(), sets, index, algebra: MonomialAlgebra::new(labels, table) }
    }

    pub fn groupoid(&self) -> &FiniteGroupoid {
        &self.groupoid
    }

    pub fn algebra(&self) -> &MonomialAlgebra {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.sets.len()
    }

    pub fn set(&self, i: usize) -> &BTreeSet<ElementId> {
        &self.sets[i]
    }

    pub fn index_of(&self, e: &BTreeSet<ElementId>) -> Option<usize> {
        self.index.get(e).copied()
    }

    /// `P_E`, which is 0 unless `E` lies in one class `X_g`.
    pub fn symbol(&self, e: &BTreeSet<ElementId>) -> ProjElement {
        self.index_of(e).map(|i| ProjElement::from([(i, BigRational::one())])).unwrap_or_default()
    }

    pub fn unit(&self) -> ProjElement {
        self.symbol(&BTreeSet::new())
    }

    pub fn multiply(&self, p: &ProjElement, q: &ProjElement) -> ProjElement {
        self.algebra.multiply(p, q)
    }

    /// `α_t(P_E) = P_tE` when `E ⊆ X_t⁻¹`, else 0; on basis indices.
    pub fn translate_basis(&self, t: ElementId, i: usize) -> Option<usize> {
        let g = &self.groupoid;
        let moved: Option<BTreeSet<ElementId>> = self.sets[i].iter().map(|&x| g.mul(t, x)).collect();
        self.index_of(&moved?)
    }

    pub fn proj_action(&self, t: ElementId, p: &ProjElement) -> ProjElement {
        let mut out = ProjElement::new();
        for (&i, c) in p {
            if let Some(j) = self.translate_basis(t, i) {
                crate::algebra::add_term(&mut out, j, c.clone());
            }
        }
        out
    }

    /// `D_t`: basis of `span{P_E : t, r(t) ∈ E ⊆ X_t}`.
    pub fn ideal(&self, t: ElementId) -> BTreeSet<usize> {
        let r = self.groupoid.range(t);
        (0..self.dim())
            .filter(|&i| {
                let e = &self.sets[i];
                e.contains(&t) && e.contains(&r) && e.iter().all(|&x| self.groupoid.range(x) == r)
            })
            .collect()
    }

    /// The partial action `(D_t, α_t|D_t⁻¹)` on `R`.
    pub fn translation_action(&self) -> AlgPartialAction {
        let g = &self.groupoid;
        let domains: Vec<BTreeSet<usize>> = g.elements().map(|t| self.ideal(t)).collect();
        let maps = g
            .elements()
            .map(|t| {
                let pairs = domains[g.inverse(t).index()]
                    .iter()
                    .map(|&i| (i, self.translate_basis(t, i).expect("D_t⁻¹ ⊆ X_t⁻¹")));
                PartialBijection::new(pairs).expect("left translation is injective")
            })
            .collect();
        let action = GroupoidPartialAction::new(g.clone(), self.algebra.labels().to_vec(), domains, maps)
            .expect("indices are in range");
        AlgPartialAction::new(self.algebra.clone(), action)
    }

    /// Exhaustive over basis pairs: the product rule recomputed from the
    /// `X_g` classes, commutativity, idempotent basis, `P_∅` as unit.
    pub fn check_relations(&self) -> Report {
        let g = &self.groupoid;
        let classes: Vec<BTreeSet<ElementId>> =
            g.elements().map(|x| g.x_class(x).expect("x in G").into_iter().collect()).collect();
        let in_some_class = |u: &BTreeSet<ElementId>| classes.iter().any(|c| u.is_subset(c));
        let mut rep = Report::new("projection algebra");
        let unit = self.unit();
        for i in 0..self.dim() {
            let p = ProjElement::from([(i, BigRational::one())]);
            let show = || self.algebra.label(i).to_string();
            rep.record("P_E² = P_E", self.multiply(&p, &p) == p, show);
            rep.record("P_∅ unit", self.multiply(&unit, &p) == p && self.multiply(&p, &unit) == p, show);
            for j in 0..self.dim() {
                let q = ProjElement::from([(j, BigRational::one())]);
                let pq = self.multiply(&p, &q);
                let u: BTreeSet<ElementId> = self.sets[i].union(&self.sets[j]).copied().collect();
                let expected = if in_some_class(&u) { self.symbol(&u) } else { ProjElement::new() };
                let show = || format!("{} {}", self.algebra.label(i), self.algebra.label(j));
                rep.record("P_E P_F rule", pq == expected && (pq.is_empty() || self.index_of(&u).is_some()), show);
                rep.record("commutative", pq == self.multiply(&q, &p), show);
            }
        }
        rep.absorb("", self.algebra.check_structure());
        rep
    }
}

/// `C_p*(G)` at the algebraic level.
#[derive(Debug, Clone)]
pub struct CpStarAlgebra {
    proj: ProjectionAlgebra,
    cp: CrossedProduct,
}

pub fn build_cp_star_algebra(groupoid: &FiniteGroupoid) -> CpStarAlgebra {
    let proj = ProjectionAlgebra::new(groupoid);
    let cp = CrossedProduct::new(proj.translation_action());
    CpStarAlgebra { proj, cp }
}

impl CpStarAlgebra {
    pub fn projections(&self) -> &ProjectionAlgebra {
        &self.proj
    }

    pub fn crossed_product(&self) -> &CrossedProduct {
        &self.cp
    }

    pub fn groupoid(&self) -> &FiniteGroupoid {
        &self.proj.groupoid
    }

    pub fn dim(&self) -> usize {
        self.cp.dim()
    }

    /// `#{(t, E) : t, r(t) ∈ E ⊆ X_t}` counted directly: `2^(|X_t| - 2)` for
    /// `t ∉ G0`, `2^(|X_t| - 1)` for units.
    pub fn independent_dim(&self) -> usize {
        let g = self.groupoid();
        g.elements()
            .map(|t| {
                let fixed = if g.is_unit(t) { 1 } else { 2 };
                1usize << (g.x_class(t).expect("t in G").len() - fixed)
            })
            .sum()
    }

    /// `(i, j) ↦ k` with `b_i b_j = b_k`, or `None` for 0.
    pub fn structure_constants(&self) -> Vec<Vec<Option<usize>>> {
        let b = self.cp.basis();
        (0..b.len())
            .map(|i| {
                (0..b.len())
                    .map(|j| self.cp.basis_product(b[i], b[j]).map(|k| b.binary_search(&k).expect("closed basis")))
                    .collect()
            })
            .collect()
    }

    pub fn basis_label(&self, i: usize) -> String {
        self.cp.show_basis(i)
    }

    /// `a_t = P_{r(t), t} δ_t`.
    pub fn a(&self, t: ElementId) -> CpElement {
        let g = self.groupoid();
        let i = self.proj.index_of(&BTreeSet::from([t, g.range(t)])).expect("{r(t), t} ⊆ X_t");
        self.cp.monomial(t, i, BigRational::one()).expect("P_{r(t), t} ∈ D_t")
    }

    /// `Σ_{e ∈ G0} P_{e} δ_e`.
    pub fn expected_unit(&self) -> CpElement {
        self.groupoid()
            .units()
            .iter()
            .map(|&e| self.a(e))
            .fold(self.cp.zero(), |acc, x| acc.add(&x).expect("same context"))
    }

    /// A two-sided unit found by solving the linear system, if any.
    pub fn find_unit(&self) -> Option<CpElement> {
        self.cp.find_unit()
    }

    /// Exact relations among the `a_t`, the translation action axioms, and
    /// associativity of the whole algebra.
    pub fn check_generators(&self) -> Report {
        let g = self.groupoid();
        let cp = &self.cp;
        let mul = |x: &CpElement, y: &CpElement| cp.multiply(x, y).expect("same context");
        let mut rep = Report::new("C_p*(G) generators");
        rep.declare("a_s a_t a_t⁻¹ = a_st a_t⁻¹");
        for s in g.elements() {
            for t in g.elements() {
                let Some(st) = g.mul(s, t) else { continue };
                let ti = self.a(g.inverse(t));
                let lhs = mul(&mul(&self.a(s), &self.a(t)), &ti);
                let rhs = mul(&self.a(st), &ti);
                rep.record("a_s a_t a_t⁻¹ = a_st a_t⁻¹", lhs == rhs, || {
                    format!("({}, {})", g.label(s), g.label(t))
                });
            }
        }
        for t in g.elements() {
            rep.record("a_t* = a_t⁻¹", cp.star(&self.a(t)).expect("same context") == self.a(g.inverse(t)), || {
                g.label(t).to_string()
            });
        }
        for &e in g.units() {
            let ae = self.a(e);
            let ok = self.proj.ideal(e).into_iter().all(|i| {
                let x = cp.monomial(e, i, BigRational::one()).expect("i ∈ D_e");
                mul(&ae, &x) == x && mul(&x, &ae) == x
            });
            rep.record("a_e = 1_D_e", ok, || g.label(e).to_string());
        }
        rep
    }

    pub fn check_all(&self) -> Report {
        let mut rep = Report::new("C_p*(G)");
        rep.absorb("R: ", self.proj.check_relations());
        rep.absorb("α: ", self.cp.context().validate());
        rep.absorb("", self.cp.check_associativity(SamplingPlan::Exhaustive));
        rep.absorb("", self.check_generators());
        rep.record("dim = independent count", self.dim() == self.independent_dim(), || {
            format!("{} vs {}", self.dim(), self.independent_dim())
        });
        rep
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::arrow_groupoid;

    fn set(g: &FiniteGroupoid, labels: &[&str]) -> BTreeSet<ElementId> {
        labels.iter().map(|l| g.id(l).unwrap()).collect()
    }

    #[test]
    fn z2_projection_products() {
        let g = FiniteGroupoid::cyclic(2);
        let r = ProjectionAlgebra::new(&g);
        assert_eq!(r.dim(), 4);
        let pe = r.symbol(&set(&g, &["e"]));
        let pa = r.symbol(&set(&g, &["a"]));
        assert_eq!(r.multiply(&pe, &pa), r.symbol(&set(&g, &["e", "a"])));
        assert_eq!(r.multiply(&r.unit(), &pa), pa);
        let a = g.id("a").unwrap();
        let pea = r.symbol(&set(&g, &["e", "a"]));
        assert_eq!(r.proj_action(a, &pea), pea);
        assert!(r.check_relations().is_ok());
    }

    #[test]
    fn g1_projection_products() {
        let g = arrow_groupoid();
        let r = ProjectionAlgebra::new(&g);
        assert_eq!(r.dim(), 7);
        let pg = r.symbol(&set(&g, &["g"]));
        let pgi = r.symbol(&set(&g, &["gi"]));
        assert!(r.multiply(&pg, &pgi).is_empty());
        assert!(r.symbol(&set(&g, &["g", "gi"])).is_empty());
        let gg = g.id("g").unwrap();
        assert_eq!(r.proj_action(gg, &r.symbol(&set(&g, &["e", "gi"]))), r.symbol(&set(&g, &["g", "f"])));
        assert!(r.translation_action().validate().is_ok());
        assert!(r.check_relations().is_ok());
    }

    #[test]
    fn dimensions() {
        let z2 = build_cp_star_algebra(&FiniteGroupoid::cyclic(2));
        assert_eq!(z2.dim(), 3);
        let trivial = build_cp_star_algebra(&FiniteGroupoid::cyclic(1));
        assert_eq!(trivial.dim(), 1);
        for g in [arrow_groupoid(), FiniteGroupoid::cyclic(3), FiniteGroupoid::cyclic(4)] {
            let c = build_cp_star_algebra(&g);
            assert_eq!(c.dim(), c.independent_dim());
        }
    }

    #[test]
    fn unit_and_generators() {
        for g in [FiniteGroupoid::cyclic(2), arrow_groupoid(), FiniteGroupoid::cyclic(3)] {
            let c = build_cp_star_algebra(&g);
            assert_eq!(c.find_unit(), Some(c.expected_unit()));
            let rep = c.check_all();
            assert!(rep.is_ok(), "{:?}", rep.failing());
        }
    }
}
