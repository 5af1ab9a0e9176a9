//! Commutative algebras with a distinguished basis closed under products
//! (up to zero), and partial groupoid actions on them by basis permutations.
//!
//! Both the function algebra on a finite set (`1_x 1_y = δ_xy 1_x`) and the
//! projection algebra spanned by the `P_E` have this shape.

use std::collections::{BTreeMap, BTreeSet};
use std::hash::{DefaultHasher, Hash, Hasher};

use num_rational::BigRational;
use num_traits::Zero;

use crate::action::{validate_partial_action, GroupoidPartialAction, Point};
use crate::groupoid::ElementId;
use crate::linalg::dense_rank;
use crate::report::Report;
use crate::scalar::Scalar;

/// Basis index ↦ coefficient; zero coefficients are never stored.
pub type AlgElement<S> = BTreeMap<usize, S>;

pub(crate) fn add_term<K: Ord, S: Scalar>(x: &mut BTreeMap<K, S>, k: K, c: S) {
    use std::collections::btree_map::Entry;
    match x.entry(k) {
        Entry::Vacant(v) => {
            if !c.is_zero() {
                v.insert(c);
            }
        }
        Entry::Occupied(mut o) => {
            let sum = o.get().clone() + c;
            if sum.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = sum;
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialAlgebra {
    labels: Vec<String>,
    table: Vec<Option<usize>>,
}

impl MonomialAlgebra {
    /// `table[p * n + q]` is the basis product `b_p b_q`, `None` for 0.
    pub fn new(labels: Vec<String>, table: Vec<Option<usize>>) -> Self {
        assert_eq!(table.len(), labels.len() * labels.len(), "table must be n×n");
        assert!(table.iter().flatten().all(|&r| r < labels.len()), "product out of range");
        MonomialAlgebra { labels, table }
    }

    /// Scalar functions on `points`, basis the point indicators.
    pub fn functions(points: &[String]) -> Self {
        let n = points.len();
        let table = (0..n * n).map(|i| (i / n == i % n).then_some(i / n)).collect();
        Self::new(points.iter().map(|p| format!("1_{p}")).collect(), table)
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, p: usize) -> &str {
        &self.labels[p]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn basis_mul(&self, p: usize, q: usize) -> Option<usize> {
        self.table[p * self.dim() + q]
    }

    pub fn multiply<S: Scalar>(&self, x: &AlgElement<S>, y: &AlgElement<S>) -> AlgElement<S> {
        let mut out = AlgElement::new();
        for (&p, a) in x {
            for (&q, b) in y {
                if let Some(r) = self.basis_mul(p, q) {
                    add_term(&mut out, r, a.clone() * b.clone());
                }
            }
        }
        out
    }

    /// A set of basis elements spans an ideal iff it absorbs every basis product.
    pub fn is_ideal(&self, set: &BTreeSet<usize>) -> bool {
        set.iter().all(|&p| {
            (0..self.dim())
                .all(|q| [self.basis_mul(p, q), self.basis_mul(q, p)].iter().flatten().all(|r| set.contains(r)))
        })
    }

    /// `I² = I` for the ideal spanned by `set`.
    pub fn ideal_is_idempotent(&self, set: &BTreeSet<usize>) -> bool {
        let products: BTreeSet<usize> =
            set.iter().flat_map(|&p| set.iter().filter_map(move |&q| self.basis_mul(p, q))).collect();
        set.is_subset(&products)
    }

    /// Associativity, commutativity and semiprimeness. For a commutative
    /// algebra in characteristic 0 the nilradical is the radical of the trace
    /// form `(x, y) ↦ tr(L_xy)`, so semiprime iff that form is nondegenerate.
    pub fn check_structure(&self) -> Report {
        let n = self.dim();
        let mut rep = Report::new("basis algebra");
        rep.declare("associative");
        rep.declare("commutative");
        for p in 0..n {
            for q in 0..n {
                rep.record("commutative", self.basis_mul(p, q) == self.basis_mul(q, p), || {
                    format!("{} {}", self.label(p), self.label(q))
                });
                for r in 0..n {
                    let left = self.basis_mul(p, q).and_then(|pq| self.basis_mul(pq, r));
                    let right = self.basis_mul(q, r).and_then(|qr| self.basis_mul(p, qr));
                    rep.record("associative", left == right, || {
                        format!("{} {} {}", self.label(p), self.label(q), self.label(r))
                    });
                }
            }
        }
        let trace = |z: usize| (0..n).filter(|&w| self.basis_mul(z, w) == Some(w)).count() as i64;
        let form: Vec<Vec<BigRational>> = (0..n)
            .map(|p| {
                (0..n)
                    .map(|q| self.basis_mul(p, q).map_or_else(BigRational::zero, |z| BigRational::from_i64(trace(z))))
                    .collect()
            })
            .collect();
        let r = dense_rank(&form);
        rep.record("semiprime", rep.holds("commutative") && r == n, || format!("trace form rank {r} of {n}"));
        rep
    }
}

/// A partial action of a groupoid on a [`MonomialAlgebra`] that permutes basis
/// elements: `D_g` is spanned by a set of basis elements and `α_g` is the
/// linear extension of a bijection between them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgPartialAction {
    algebra: MonomialAlgebra,
    action: GroupoidPartialAction,
    tag: u64,
}

impl AlgPartialAction {
    /// `action` must act on the basis indices of `algebra`.
    pub fn new(algebra: MonomialAlgebra, action: GroupoidPartialAction) -> Self {
        assert_eq!(algebra.dim(), action.points().len(), "action must act on the basis");
        let mut h = DefaultHasher::new();
        algebra.hash(&mut h);
        action.groupoid().tag().hash(&mut h);
        for g in action.groupoid().elements() {
            action.domain(g).hash(&mut h);
            action.map(g).hash(&mut h);
        }
        AlgPartialAction { algebra, action, tag: h.finish() }
    }

    /// The pullback action `α_g(f) = f ∘ α_g⁻¹` on functions on the set:
    /// `α_g(1_x) = 1_α_g(x)`.
    pub fn functions(action: &GroupoidPartialAction) -> Self {
        Self::new(MonomialAlgebra::functions(action.points()), action.clone())
    }

    pub fn algebra(&self) -> &MonomialAlgebra {
        &self.algebra
    }

    pub fn basis_action(&self) -> &GroupoidPartialAction {
        &self.action
    }

    pub fn tag(&self) -> u64 {
        self.tag
    }

    pub fn domain(&self, g: ElementId) -> &BTreeSet<Point> {
        self.action.domain(g)
    }

    pub fn apply_basis(&self, g: ElementId, p: usize) -> Option<usize> {
        self.action.map(g).apply(p)
    }

    /// `α_g(x)`, or `None` when `x ∉ D_g⁻¹`.
    pub fn apply<S: Scalar>(&self, g: ElementId, x: &AlgElement<S>) -> Option<AlgElement<S>> {
        x.iter().map(|(&p, c)| self.apply_basis(g, p).map(|q| (q, c.clone()))).collect()
    }

    /// Partial action axioms on the basis, plus: the algebra is semiprime,
    /// `D_g ◁ D_r(g) ◁ R`, each `D_g` idempotent, and each `α_g` multiplicative.
    pub fn validate(&self) -> Report {
        let g = self.action.groupoid();
        let alg = &self.algebra;
        let mut rep = Report::new("algebra partial action");
        rep.absorb("", alg.check_structure());
        rep.absorb("", validate_partial_action(&self.action));
        for x in g.elements() {
            let d = self.domain(x);
            rep.record("D_g ◁ R", alg.is_ideal(d), || g.label(x).to_string());
            rep.record("D_g ◁ D_r(g)", d.is_subset(self.domain(g.range(x))), || g.label(x).to_string());
            rep.record("D_g² = D_g", alg.ideal_is_idempotent(d), || g.label(x).to_string());
            let m = self.action.map(x);
            for (p, ap) in m.pairs() {
                for (q, aq) in m.pairs() {
                    let lhs = alg.basis_mul(p, q).map(|r| m.apply(r));
                    let rhs = alg.basis_mul(ap, aq).map(Some);
                    rep.record("α_g multiplicative", lhs == rhs, || {
                        format!("α_{} on {} {}", g.label(x), alg.label(p), alg.label(q))
                    });
                }
            }
        }
        rep
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn function_algebra_structure() {
        let pts: Vec<String> = ["1", "2", "3"].iter().map(|s| s.to_string()).collect();
        let a = MonomialAlgebra::functions(&pts);
        assert!(a.check_structure().is_ok());
        assert!(a.is_ideal(&BTreeSet::from([0, 2])));
        assert!(a.ideal_is_idempotent(&BTreeSet::from([1])));
    }

    #[test]
    fn nilpotent_algebra_is_not_semiprime() {
        // span{1, x} with x² = 0: basis products 1·1 = 1, 1·x = x, x·x = 0
        let a = MonomialAlgebra::new(vec!["1".into(), "x".into()], vec![Some(0), Some(1), Some(1), None]);
        let rep = a.check_structure();
        assert!(rep.holds("associative") && rep.holds("commutative"));
        assert!(!rep.holds("semiprime"));
        assert!(!a.ideal_is_idempotent(&BTreeSet::from([1])));
    }
}
