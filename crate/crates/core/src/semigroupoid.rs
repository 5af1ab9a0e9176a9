//! The Exel inverse semigroupoid `S(G)` of a finite groupoid.
//!
//! Every element has a unique standard form `ε_{r1} ⋯ ε_{rn} [s]` with distinct
//! `r_i ∈ X_s`, `r_i ∉ G0`, `r_i ≠ s`. [`SgElement`] stores exactly that data
//! (the sorted set of `r_i` and the anchor `s`), so equality in `S(G)` is
//! structural equality.
//!
//! Products are computed by the closed formula
//! `(E, s)(F, t) = (E ∪ sF ∪ {s}, st)` followed by deleting identities and the
//! new anchor; [`ExelSemigroupoid::normalize_word`] folds it over generator
//! words. The independent check is the congruence oracle in [`crate::oracle`].

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::groupoid::{ElementId, FiniteGroupoid, GroupoidError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SgError {
    #[error(transparent)]
    Groupoid(#[from] GroupoidError),
    #[error("elements come from different groupoids")]
    MixedGroupoids,
    #[error("word is empty or has non-composable neighbours at position {0}")]
    NonComposableWord(usize),
    #[error("set is not r-closed: contains `{0}` but not its range")]
    NotRClosed(String),
    #[error("not a standard form: {0}")]
    InvalidStandardForm(String),
}

/// An element of `S(G)` in standard form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SgElement {
    anchor: ElementId,
    eps: Vec<ElementId>,
    groupoid: u64,
}

impl SgElement {
    /// `∂(α)`, the anchor `s`.
    pub fn anchor(&self) -> ElementId {
        self.anchor
    }

    /// The `r_i` of the standard form, sorted.
    pub fn eps(&self) -> &[ElementId] {
        &self.eps
    }

    pub fn groupoid_tag(&self) -> u64 {
        self.groupoid
    }
}

/// JSON form of an [`SgElement`]: `{"eps": [..], "anchor": ..}` with labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SgElementRepr {
    pub eps: Vec<String>,
    pub anchor: String,
}

/// `S(G)` for one groupoid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExelSemigroupoid {
    groupoid: FiniteGroupoid,
}

impl ExelSemigroupoid {
    pub fn new(groupoid: FiniteGroupoid) -> Self {
        ExelSemigroupoid { groupoid }
    }

    pub fn groupoid(&self) -> &FiniteGroupoid {
        &self.groupoid
    }

    fn known(&self, a: &SgElement) -> Result<(), SgError> {
        if a.groupoid == self.groupoid.tag() {
            Ok(())
        } else {
            Err(SgError::MixedGroupoids)
        }
    }

    /// Builds `(E, s)` from raw parts after dropping identities and `s` from
    /// `E`. Panics if some member of `E` is outside `X_s`.
    fn normalized(&self, eps: impl IntoIterator<Item = ElementId>, anchor: ElementId) -> SgElement {
        let g = &self.groupoid;
        let r = g.range(anchor);
        let eps: BTreeSet<ElementId> = eps
            .into_iter()
            .inspect(|&x| debug_assert_eq!(g.range(x), r, "eps member outside X_anchor"))
            .filter(|&x| x != anchor && !g.is_unit(x))
            .collect();
        SgElement { anchor, eps: eps.into_iter().collect(), groupoid: g.tag() }
    }

    /// Validating constructor for an explicit standard form.
    pub fn element(&self, eps: &[ElementId], anchor: ElementId) -> Result<SgElement, SgError> {
        let g = &self.groupoid;
        g.compose(anchor, anchor)?;
        let mut set = BTreeSet::new();
        for &r in eps {
            g.compose(r, r)?;
            if g.range(r) != g.range(anchor) {
                return Err(SgError::InvalidStandardForm(format!("`{}` is not in X_{}", g.label(r), g.label(anchor))));
            }
            if r == anchor || g.is_unit(r) {
                return Err(SgError::InvalidStandardForm(format!("`{}` may not appear as an ε index", g.label(r))));
            }
            if !set.insert(r) {
                return Err(SgError::InvalidStandardForm(format!("`{}` repeated", g.label(r))));
            }
        }
        Ok(SgElement { anchor, eps: set.into_iter().collect(), groupoid: g.tag() })
    }

    pub fn parse(&self, repr: &SgElementRepr) -> Result<SgElement, SgError> {
        let eps = repr.eps.iter().map(|l| self.groupoid.id(l)).collect::<Result<Vec<_>, _>>()?;
        self.element(&eps, self.groupoid.id(&repr.anchor)?)
    }

    pub fn repr(&self, a: &SgElement) -> SgElementRepr {
        SgElementRepr { eps: self.groupoid.labels_of(&a.eps), anchor: self.groupoid.label(a.anchor).to_string() }
    }

    /// Human-readable standard form, e.g. `ε_g[f]`.
    pub fn display<'a>(&'a self, a: &'a SgElement) -> impl fmt::Display + 'a {
        DisplaySg { sg: self, a }
    }

    /// The generator `[g]`.
    pub fn generator(&self, g: ElementId) -> Result<SgElement, SgError> {
        self.groupoid.compose(g, g)?;
        Ok(SgElement { anchor: g, eps: Vec::new(), groupoid: self.groupoid.tag() })
    }

    /// `ε_t = [t][t⁻¹]`.
    pub fn epsilon(&self, t: ElementId) -> Result<SgElement, SgError> {
        self.groupoid.compose(t, t)?;
        Ok(self.normalized([t], self.groupoid.range(t)))
    }

    /// Product in `S(G)`; `Ok(None)` when `∂(α)∂(β)` is undefined in `G`.
    pub fn multiply(&self, a: &SgElement, b: &SgElement) -> Result<Option<SgElement>, SgError> {
        self.known(a)?;
        self.known(b)?;
        Ok(self.mul(a, b))
    }

    pub(crate) fn mul(&self, a: &SgElement, b: &SgElement) -> Option<SgElement> {
        let g = &self.groupoid;
        let (s, t) = (a.anchor, b.anchor);
        let st = g.mul(s, t)?;
        let shifted = b.eps.iter().map(|&f| g.mul(s, f).expect("f ∈ X_t and d(s) = r(t)"));
        Some(self.normalized(a.eps.iter().copied().chain(shifted).chain([s]), st))
    }

    /// The involution: `(E, s)* = (s⁻¹E, s⁻¹)`.
    pub fn star(&self, a: &SgElement) -> SgElement {
        let g = &self.groupoid;
        let si = g.inverse(a.anchor);
        let eps: BTreeSet<ElementId> = a.eps.iter().map(|&r| g.mul(si, r).expect("r ∈ X_s")).collect();
        SgElement { anchor: si, eps: eps.into_iter().collect(), groupoid: a.groupoid }
    }

    /// Standard form of the word `[w_0][w_1]⋯[w_k]`.
    pub fn normalize_word(&self, word: &[ElementId]) -> Result<SgElement, SgError> {
        let (first, rest) = word.split_first().ok_or(SgError::NonComposableWord(0))?;
        let mut acc = self.generator(*first)?;
        for (i, &x) in rest.iter().enumerate() {
            let gen = self.generator(x)?;
            acc = self.mul(&acc, &gen).ok_or(SgError::NonComposableWord(i + 1))?;
        }
        Ok(acc)
    }

    /// The word `[r1][r1⁻¹]⋯[rn][rn⁻¹][s]` spelling a standard form.
    pub fn word_of(&self, a: &SgElement) -> Vec<ElementId> {
        let g = &self.groupoid;
        let mut w: Vec<ElementId> = a.eps.iter().flat_map(|&r| [r, g.inverse(r)]).collect();
        w.push(a.anchor);
        w
    }

    /// `∂ : S(G) → G`.
    pub fn partial_degree(&self, a: &SgElement) -> ElementId {
        a.anchor
    }

    /// `φ_g(E) = gE ∪ {g, r(g)}` when `gh` exists for all `h ∈ E`;
    /// `None` otherwise.
    fn phi(&self, g: ElementId, set: &BTreeSet<ElementId>) -> Option<BTreeSet<ElementId>> {
        let grp = &self.groupoid;
        let mut out = BTreeSet::from([g, grp.range(g)]);
        for &h in set {
            out.insert(grp.mul(g, h)?);
        }
        Some(out)
    }

    /// `Λ(α)(E)`, evaluated letter by letter along the standard-form word.
    ///
    /// `Ok(None)` is the empty-set outcome of a letter whose products are not
    /// all defined; it absorbs the remaining letters.
    pub fn lambda_apply(
        &self,
        a: &SgElement,
        set: &BTreeSet<ElementId>,
    ) -> Result<Option<BTreeSet<ElementId>>, SgError> {
        self.known(a)?;
        let g = &self.groupoid;
        for &x in set {
            g.compose(x, x)?;
            if !set.contains(&g.range(x)) {
                return Err(SgError::NotRClosed(g.label(x).to_string()));
            }
        }
        let mut cur = set.clone();
        for &letter in self.word_of(a).iter().rev() {
            match self.phi(letter, &cur) {
                Some(next) => cur = next,
                None => return Ok(None),
            }
        }
        Ok(Some(cur))
    }

    pub fn is_idempotent(&self, a: &SgElement) -> bool {
        self.groupoid.is_unit(a.anchor)
    }

    /// Natural partial order: same anchor and `eps(β) ⊆ eps(α)`.
    pub fn leq(&self, a: &SgElement, b: &SgElement) -> Result<bool, SgError> {
        self.known(a)?;
        self.known(b)?;
        Ok(a.anchor == b.anchor && b.eps.iter().all(|x| a.eps.binary_search(x).is_ok()))
    }

    /// All standard forms: every `(E, s)` with `E ⊆ X_s \ (G0 ∪ {s})`.
    pub fn enumerate(&self) -> Vec<SgElement> {
        let g = &self.groupoid;
        let mut out = Vec::new();
        for s in g.elements() {
            let pool: Vec<ElementId> =
                g.elements().filter(|&h| g.range(h) == g.range(s) && h != s && !g.is_unit(h)).collect();
            assert!(pool.len() < 32, "X-class too large to enumerate");
            for mask in 0u32..(1 << pool.len()) {
                let eps = pool.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, &x)| x).collect();
                out.push(SgElement { anchor: s, eps, groupoid: g.tag() });
            }
        }
        out.sort();
        out
    }

    /// `S(G)` as the closure of the generators under products and `*`.
    pub fn enumerate_by_closure(&self) -> Vec<SgElement> {
        let mut seen: BTreeSet<SgElement> = BTreeSet::new();
        let mut queue: VecDeque<SgElement> =
            self.groupoid.elements().map(|x| self.generator(x).expect("own element")).collect();
        while let Some(a) = queue.pop_front() {
            if !seen.insert(a.clone()) {
                continue;
            }
            let mut fresh = vec![self.star(&a)];
            for b in &seen {
                fresh.extend(self.mul(&a, b));
                fresh.extend(self.mul(b, &a));
            }
            queue.extend(fresh.into_iter().filter(|x| !seen.contains(x)));
        }
        seen.into_iter().collect()
    }

    /// The idempotent `ε_{E}` with `E` inside one X-class; `P_∅`-style empty
    /// sets have no idempotent and give `None`.
    pub fn epsilon_product(&self, set: &BTreeSet<ElementId>) -> Option<SgElement> {
        let g = &self.groupoid;
        let first = *set.iter().next()?;
        let r = g.range(first);
        if set.iter().any(|&x| g.range(x) != r) {
            return None;
        }
        Some(self.normalized(set.iter().copied(), r))
    }
}

struct DisplaySg<'a> {
    sg: &'a ExelSemigroupoid,
    a: &'a SgElement,
}

impl fmt::Display for DisplaySg<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = &self.sg.groupoid;
        for &r in &self.a.eps {
            write!(f, "ε_{}", g.label(r))?;
        }
        write!(f, "[{}]", g.label(self.a.anchor))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::arrow_groupoid;

    fn sg(g: FiniteGroupoid) -> ExelSemigroupoid {
        ExelSemigroupoid::new(g)
    }

    fn form(s: &ExelSemigroupoid, eps: &[&str], anchor: &str) -> SgElement {
        let g = s.groupoid();
        let eps: Vec<_> = eps.iter().map(|l| g.id(l).unwrap()).collect();
        s.element(&eps, g.id(anchor).unwrap()).unwrap()
    }

    #[test]
    fn generators_and_epsilons() {
        let s = sg(arrow_groupoid());
        let g = s.groupoid().clone();
        let x = g.id("g").unwrap();
        assert_eq!(s.generator(x).unwrap(), form(&s, &[], "g"));
        assert_eq!(s.generator(g.id("e").unwrap()).unwrap(), form(&s, &[], "e"));
        assert_eq!(s.epsilon(x).unwrap(), form(&s, &["g"], "f"));
        assert_eq!(s.epsilon(g.id("e").unwrap()).unwrap(), form(&s, &[], "e"));

        let z2 = sg(FiniteGroupoid::cyclic(2));
        let a = z2.groupoid().id("a").unwrap();
        assert_eq!(z2.generator(a).unwrap(), form(&z2, &[], "a"));
        assert_eq!(z2.epsilon(a).unwrap(), form(&z2, &["a"], "e"));
    }

    #[test]
    fn multiplication_examples() {
        let s = sg(arrow_groupoid());
        let eps_g = s.multiply(&form(&s, &[], "g"), &form(&s, &[], "gi")).unwrap();
        assert_eq!(eps_g, Some(form(&s, &["g"], "f")));
        assert_eq!(s.multiply(&form(&s, &[], "g"), &form(&s, &[], "g")).unwrap(), None);
        assert_eq!(s.multiply(&form(&s, &[], "e"), &form(&s, &[], "e")).unwrap(), Some(form(&s, &[], "e")));
        // [g⁻¹]ε_g = ε_{g⁻¹g}[g⁻¹] = [g⁻¹]
        assert_eq!(s.multiply(&form(&s, &[], "gi"), &form(&s, &["g"], "f")).unwrap(), Some(form(&s, &[], "gi")));

        let z2 = sg(FiniteGroupoid::cyclic(2));
        assert_eq!(z2.multiply(&form(&z2, &[], "a"), &form(&z2, &[], "a")).unwrap(), Some(form(&z2, &["a"], "e")));
    }

    #[test]
    fn mixed_groupoids_rejected() {
        let s = sg(arrow_groupoid());
        let z2 = sg(FiniteGroupoid::cyclic(2));
        let a = form(&z2, &[], "a");
        let b = form(&s, &[], "g");
        assert_eq!(s.multiply(&b, &a), Err(SgError::MixedGroupoids));
        assert_eq!(s.leq(&a, &b), Err(SgError::MixedGroupoids));
    }

    #[test]
    fn star_examples() {
        let s = sg(arrow_groupoid());
        assert_eq!(s.star(&form(&s, &[], "g")), form(&s, &[], "gi"));
        assert_eq!(s.star(&form(&s, &["g"], "f")), form(&s, &["g"], "f"));
        for a in s.enumerate() {
            assert_eq!(s.star(&s.star(&a)), a);
        }
    }

    #[test]
    fn words() {
        let s = sg(arrow_groupoid());
        let g = s.groupoid().clone();
        let w: Vec<_> = ["g", "gi", "g"].iter().map(|l| g.id(l).unwrap()).collect();
        assert_eq!(s.normalize_word(&w).unwrap(), form(&s, &[], "g"));
        assert_eq!(s.normalize_word(&[g.id("e").unwrap()]).unwrap(), form(&s, &[], "e"));
        let bad: Vec<_> = ["g", "g"].iter().map(|l| g.id(l).unwrap()).collect();
        assert_eq!(s.normalize_word(&bad), Err(SgError::NonComposableWord(1)));
        assert_eq!(s.normalize_word(&[]), Err(SgError::NonComposableWord(0)));

        let z3 = sg(FiniteGroupoid::cyclic(3));
        let a = z3.groupoid().id("a").unwrap();
        // [a]³ = ε_a ε_{a²}: (∅,a)(∅,a) = ({a}, a2), then ({a} ∪ {a2}, e).
        assert_eq!(z3.normalize_word(&[a, a, a]).unwrap(), form(&z3, &["a", "a2"], "e"));
        for x in z3.enumerate() {
            assert_eq!(z3.normalize_word(&z3.word_of(&x)).unwrap(), x);
        }
    }

    #[test]
    fn degree_and_lambda() {
        let s = sg(arrow_groupoid());
        let g = s.groupoid().clone();
        let id = |l: &str| g.id(l).unwrap();
        assert_eq!(s.partial_degree(&form(&s, &[], "g")), id("g"));
        assert_eq!(s.partial_degree(&form(&s, &["g"], "f")), id("f"));

        let lam = s.lambda_apply(&form(&s, &[], "g"), &BTreeSet::from([id("e")])).unwrap();
        assert_eq!(lam, Some(BTreeSet::from([id("g"), id("f")])));
        let lam = s.lambda_apply(&form(&s, &["g"], "f"), &BTreeSet::from([id("f")])).unwrap();
        assert_eq!(lam, Some(BTreeSet::from([id("g"), id("f")])));
        // φ_g needs gh for every h ∈ E.
        let lam = s.lambda_apply(&form(&s, &[], "g"), &BTreeSet::from([id("f")])).unwrap();
        assert_eq!(lam, None);
        assert!(matches!(
            s.lambda_apply(&form(&s, &[], "g"), &BTreeSet::from([id("gi")])),
            Err(SgError::NotRClosed(_))
        ));

        let z3 = sg(FiniteGroupoid::cyclic(3));
        let h = z3.groupoid().clone();
        let x = form(&z3, &["a"], "a2");
        let lam = z3.lambda_apply(&x, &BTreeSet::from([h.id("e").unwrap()])).unwrap();
        assert_eq!(lam, Some(h.ids(&["a", "a2", "e"]).unwrap()));

        let z1 = sg(FiniteGroupoid::cyclic(1));
        let e = z1.groupoid().id("e").unwrap();
        let lam = z1.lambda_apply(&form(&z1, &[], "e"), &BTreeSet::from([e])).unwrap();
        assert_eq!(lam, Some(BTreeSet::from([e])));
    }

    #[test]
    fn idempotents_and_order() {
        let s = sg(arrow_groupoid());
        assert!(s.is_idempotent(&form(&s, &["g"], "f")));
        assert!(!s.is_idempotent(&form(&s, &[], "g")));
        assert!(s.is_idempotent(&form(&s, &[], "e")));
        assert!(!s.leq(&form(&s, &[], "g"), &form(&s, &[], "e")).unwrap());

        let z2 = sg(FiniteGroupoid::cyclic(2));
        let (small, big) = (form(&z2, &["a"], "e"), form(&z2, &[], "e"));
        assert!(z2.leq(&small, &big).unwrap());
        assert!(!z2.leq(&big, &small).unwrap());
        let gamma = z2.epsilon(z2.groupoid().id("a").unwrap()).unwrap();
        assert_eq!(z2.multiply(&big, &gamma).unwrap(), Some(small.clone()));
        for a in s.enumerate() {
            assert!(s.leq(&a, &a).unwrap());
        }
    }

    #[test]
    fn enumeration_sizes() {
        assert_eq!(sg(arrow_groupoid()).enumerate().len(), 6);
        assert_eq!(sg(FiniteGroupoid::cyclic(1)).enumerate().len(), 1);
        assert_eq!(sg(FiniteGroupoid::cyclic(2)).enumerate().len(), 3);
        assert_eq!(sg(FiniteGroupoid::cyclic(3)).enumerate().len(), 8);
        let z2 = FiniteGroupoid::cyclic(2);
        let u = FiniteGroupoid::disjoint_union(&[z2.clone(), z2]).unwrap();
        assert_eq!(sg(u).enumerate().len(), 6);
    }

    #[test]
    fn closure_matches_combinatorial_enumeration() {
        for g in [
            arrow_groupoid(),
            FiniteGroupoid::cyclic(1),
            FiniteGroupoid::cyclic(2),
            FiniteGroupoid::cyclic(3),
            FiniteGroupoid::cyclic(4),
        ] {
            let s = sg(g);
            assert_eq!(s.enumerate(), s.enumerate_by_closure());
        }
    }

    #[test]
    fn invalid_standard_forms_rejected() {
        let s = sg(arrow_groupoid());
        let g = s.groupoid().clone();
        let id = |l: &str| g.id(l).unwrap();
        assert!(s.element(&[id("f")], id("g")).is_err());
        assert!(s.element(&[id("g")], id("g")).is_err());
        assert!(s.element(&[id("gi")], id("g")).is_err());
        assert!(s.element(&[id("g"), id("g")], id("f")).is_err());
    }

    #[test]
    fn display_and_repr() {
        let s = sg(arrow_groupoid());
        let x = form(&s, &["g"], "f");
        assert_eq!(s.display(&x).to_string(), "ε_g[f]");
        let r = s.repr(&x);
        assert_eq!(serde_json::to_string(&r).unwrap(), r#"{"eps":["g"],"anchor":"f"}"#);
        assert_eq!(s.parse(&r).unwrap(), x);
    }
}
