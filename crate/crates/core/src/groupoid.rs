//! Finite groupoids given by explicit composition and inverse tables.
//!
//! A [`FiniteGroupoid`] is validated on construction and immutable afterwards.
//! Elements are addressed by [`ElementId`], an index into the label-sorted
//! element list, so iteration order (and every printed artifact built on top
//! of it) is the lexicographic order of labels.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupoidError {
    #[error("malformed groupoid spec: {0}")]
    MalformedSpec(String),
    #[error("groupoid axiom violated: {0}")]
    AxiomViolation(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("disjoint union needs at least one part")]
    EmptyUnion,
}

/// Index of an element inside one [`FiniteGroupoid`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ElementId(u32);

impl ElementId {
    pub fn index(self) -> usize {
        self.0 as usize
    }

    fn from_index(i: usize) -> Self {
        ElementId(i as u32)
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Serialized form of a groupoid: `{"elements": [..], "inv": {..}, "comp": [[a, b, ab], ..]}`.
///
/// Pairs missing from `comp` are not composable.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupoidSpec {
    pub elements: Vec<String>,
    pub inv: BTreeMap<String, String>,
    pub comp: Vec<[String; 3]>,
}

#[derive(Debug)]
struct Inner {
    tag: u64,
    labels: Vec<String>,
    index: HashMap<String, ElementId>,
    comp: Vec<Option<ElementId>>,
    inv: Vec<ElementId>,
    source: Vec<ElementId>,
    range: Vec<ElementId>,
    units: Vec<ElementId>,
}

/// A validated finite groupoid. Cloning is cheap (shared storage).
#[derive(Debug, Clone)]
pub struct FiniteGroupoid {
    inner: Arc<Inner>,
}

impl PartialEq for FiniteGroupoid {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.tag == other.inner.tag
                && self.inner.labels == other.inner.labels
                && self.inner.comp == other.inner.comp
                && self.inner.inv == other.inner.inv)
    }
}

impl Eq for FiniteGroupoid {}

impl FiniteGroupoid {
    /// Validates a spec and builds the groupoid, deriving `d`, `r` and `G0`.
    pub fn build(spec: &GroupoidSpec) -> Result<Self, GroupoidError> {
        if spec.elements.is_empty() {
            return Err(GroupoidError::MalformedSpec("no elements".into()));
        }
        let mut labels = spec.elements.clone();
        labels.sort();
        for w in labels.windows(2) {
            if w[0] == w[1] {
                return Err(GroupoidError::MalformedSpec(format!("element `{}` listed twice", w[0])));
            }
        }
        let index: HashMap<String, ElementId> =
            labels.iter().enumerate().map(|(i, l)| (l.clone(), ElementId::from_index(i))).collect();
        let lookup = |l: &str| {
            index
                .get(l)
                .copied()
                .ok_or_else(|| GroupoidError::MalformedSpec(format!("table references unlisted element `{l}`")))
        };

        let n = labels.len();
        let mut inv = vec![None; n];
        for (k, v) in &spec.inv {
            let (k, v) = (lookup(k)?, lookup(v)?);
            inv[k.index()] = Some(v);
        }
        let inv: Vec<ElementId> = inv
            .into_iter()
            .enumerate()
            .map(|(i, x)| {
                x.ok_or_else(|| GroupoidError::MalformedSpec(format!("no inverse given for `{}`", labels[i])))
            })
            .collect::<Result<_, _>>()?;

        let mut comp = vec![None; n * n];
        for [a, b, ab] in &spec.comp {
            let (a, b, ab) = (lookup(a)?, lookup(b)?, lookup(ab)?);
            let slot = &mut comp[a.index() * n + b.index()];
            match slot {
                Some(prev) if *prev != ab => {
                    return Err(GroupoidError::MalformedSpec(format!(
                        "conflicting products for ({}, {})",
                        labels[a.index()],
                        labels[b.index()]
                    )))
                }
                _ => *slot = Some(ab),
            }
        }

        let tag = {
            let mut h = std::collections::hash_map::DefaultHasher::new();
            labels.hash(&mut h);
            comp.hash(&mut h);
            inv.hash(&mut h);
            h.finish()
        };
        let mut inner =
            Inner { tag, labels, index, comp, inv, source: Vec::new(), range: Vec::new(), units: Vec::new() };
        check_axioms(&mut inner)?;
        Ok(FiniteGroupoid { inner: Arc::new(inner) })
    }

    /// One-object groupoid from a group multiplication table
    /// (`table[i][j]` is the index of `labels[i] * labels[j]`).
    pub fn from_group<S: AsRef<str>>(labels: &[S], table: &[Vec<usize>]) -> Result<Self, GroupoidError> {
        let n = labels.len();
        if n == 0 || table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(GroupoidError::MalformedSpec("group table must be a non-empty square matrix".into()));
        }
        if table.iter().flatten().any(|&x| x >= n) {
            return Err(GroupoidError::MalformedSpec("group table entry out of range".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| GroupoidError::AxiomViolation("group table has no identity".into()))?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(GroupoidError::AxiomViolation(format!(
                            "group table not associative at ({}, {}, {})",
                            labels[a].as_ref(),
                            labels[b].as_ref(),
                            labels[c].as_ref()
                        )));
                    }
                }
            }
        }
        let mut inv = BTreeMap::new();
        for a in 0..n {
            let b = (0..n).find(|&b| table[a][b] == identity && table[b][a] == identity).ok_or_else(|| {
                GroupoidError::AxiomViolation(format!("`{}` has no inverse in the group table", labels[a].as_ref()))
            })?;
            inv.insert(labels[a].as_ref().to_string(), labels[b].as_ref().to_string());
        }
        let comp = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .map(|(a, b)| {
                [
                    labels[a].as_ref().to_string(),
                    labels[b].as_ref().to_string(),
                    labels[table[a][b]].as_ref().to_string(),
                ]
            })
            .collect();
        Self::build(&GroupoidSpec { elements: labels.iter().map(|l| l.as_ref().to_string()).collect(), inv, comp })
    }

    /// The cyclic group Z_n as a one-object groupoid, labelled `e, a, a2, ..`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0, "Z_0 does not exist");
        let labels: Vec<String> = (0..n)
            .map(|k| match k {
                0 => "e".to_string(),
                1 => "a".to_string(),
                k => format!("a{k}"),
            })
            .collect();
        let table: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        Self::from_group(&labels, &table).expect("cyclic group table is a group")
    }

    /// Tagged disjoint union; part `i`'s element `x` becomes `i.x`.
    pub fn disjoint_union(parts: &[FiniteGroupoid]) -> Result<Self, GroupoidError> {
        if parts.is_empty() {
            return Err(GroupoidError::EmptyUnion);
        }
        let tagged = |i: usize, g: &FiniteGroupoid, x: ElementId| format!("{i}.{}", g.label(x));
        let mut spec = GroupoidSpec { elements: Vec::new(), inv: BTreeMap::new(), comp: Vec::new() };
        for (i, g) in parts.iter().enumerate() {
            for x in g.elements() {
                spec.elements.push(tagged(i, g, x));
                spec.inv.insert(tagged(i, g, x), tagged(i, g, g.inverse(x)));
                for y in g.elements() {
                    if let Some(xy) = g.mul(x, y) {
                        spec.comp.push([tagged(i, g, x), tagged(i, g, y), tagged(i, g, xy)]);
                    }
                }
            }
        }
        Self::build(&spec)
    }

    pub fn to_spec(&self) -> GroupoidSpec {
        let mut comp = Vec::new();
        for x in self.elements() {
            for y in self.elements() {
                if let Some(xy) = self.mul(x, y) {
                    comp.push([self.label(x).into(), self.label(y).into(), self.label(xy).into()]);
                }
            }
        }
        GroupoidSpec {
            elements: self.inner.labels.clone(),
            inv: self
                .elements()
                .map(|x| (self.label(x).to_string(), self.label(self.inverse(x)).to_string()))
                .collect(),
            comp,
        }
    }

    /// Content fingerprint; equal for groupoids built from equal tables.
    pub fn tag(&self) -> u64 {
        self.inner.tag
    }

    pub fn len(&self) -> usize {
        self.inner.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inner.labels.is_empty()
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> + Clone + '_ {
        (0..self.len()).map(ElementId::from_index)
    }

    pub fn label(&self, x: ElementId) -> &str {
        &self.inner.labels[x.index()]
    }

    pub fn id(&self, label: &str) -> Result<ElementId, GroupoidError> {
        self.inner.index.get(label).copied().ok_or_else(|| GroupoidError::UnknownElement(label.to_string()))
    }

    pub fn contains(&self, x: ElementId) -> bool {
        x.index() < self.len()
    }

    fn check(&self, x: ElementId) -> Result<ElementId, GroupoidError> {
        if self.contains(x) {
            Ok(x)
        } else {
            Err(GroupoidError::UnknownElement(x.to_string()))
        }
    }

    /// `st`, or `None` when `d(s) != r(t)`. Both ids must belong to this groupoid.
    pub fn mul(&self, s: ElementId, t: ElementId) -> Option<ElementId> {
        self.inner.comp[s.index() * self.len() + t.index()]
    }

    /// Checked composition: `Ok(None)` is the undefined product.
    pub fn compose(&self, s: ElementId, t: ElementId) -> Result<Option<ElementId>, GroupoidError> {
        Ok(self.mul(self.check(s)?, self.check(t)?))
    }

    pub fn composable(&self, s: ElementId, t: ElementId) -> bool {
        self.mul(s, t).is_some()
    }

    pub fn inverse(&self, x: ElementId) -> ElementId {
        self.inner.inv[x.index()]
    }

    /// `d(x) = x⁻¹x`.
    pub fn source(&self, x: ElementId) -> ElementId {
        self.inner.source[x.index()]
    }

    /// `r(x) = xx⁻¹`.
    pub fn range(&self, x: ElementId) -> ElementId {
        self.inner.range[x.index()]
    }

    /// The identities `G0`, in label order.
    pub fn units(&self) -> &[ElementId] {
        &self.inner.units
    }

    pub fn is_unit(&self, x: ElementId) -> bool {
        self.range(x) == x
    }

    /// `X_g = {h : r(h) = r(g)}`.
    pub fn x_class(&self, g: ElementId) -> Result<Vec<ElementId>, GroupoidError> {
        let g = self.check(g)?;
        let r = self.range(g);
        Ok(self.elements().filter(|&h| self.range(h) == r).collect())
    }

    pub fn labels_of<'a>(&'a self, xs: impl IntoIterator<Item = &'a ElementId>) -> Vec<String> {
        xs.into_iter().map(|&x| self.label(x).to_string()).collect()
    }

    /// Resolves a set of labels.
    pub fn ids<S: AsRef<str>>(&self, labels: &[S]) -> Result<BTreeSet<ElementId>, GroupoidError> {
        labels.iter().map(|l| self.id(l.as_ref())).collect()
    }
}

fn check_axioms(g: &mut Inner) -> Result<(), GroupoidError> {
    let n = g.labels.len();
    let mul = |comp: &[Option<ElementId>], a: ElementId, b: ElementId| comp[a.index() * n + b.index()];
    let name = |x: ElementId| g.labels[x.index()].as_str();

    for x in (0..n).map(ElementId::from_index) {
        if g.inv[g.inv[x.index()].index()] != x {
            return Err(GroupoidError::AxiomViolation(format!(
                "inverse of inverse of `{}` is not `{}`",
                name(x),
                name(x)
            )));
        }
    }

    let mut source = Vec::with_capacity(n);
    let mut range = Vec::with_capacity(n);
    for x in (0..n).map(ElementId::from_index) {
        let xi = g.inv[x.index()];
        let r = mul(&g.comp, x, xi)
            .ok_or_else(|| GroupoidError::AxiomViolation(format!("`{}` · its inverse is undefined", name(x))))?;
        let d = mul(&g.comp, xi, x)
            .ok_or_else(|| GroupoidError::AxiomViolation(format!("inverse · `{}` is undefined", name(x))))?;
        range.push(r);
        source.push(d);
    }

    let mut units: BTreeSet<ElementId> = BTreeSet::new();
    units.extend(source.iter().copied());
    units.extend(range.iter().copied());
    for &e in &units {
        if mul(&g.comp, e, e) != Some(e) || source[e.index()] != e || range[e.index()] != e {
            return Err(GroupoidError::AxiomViolation(format!(
                "`{}` arises as g·g⁻¹ or g⁻¹·g but is not an identity",
                name(e)
            )));
        }
    }

    for x in (0..n).map(ElementId::from_index) {
        if mul(&g.comp, range[x.index()], x) != Some(x) || mul(&g.comp, x, source[x.index()]) != Some(x) {
            return Err(GroupoidError::AxiomViolation(format!("identity laws fail for `{}`", name(x))));
        }
    }

    for s in (0..n).map(ElementId::from_index) {
        for t in (0..n).map(ElementId::from_index) {
            let defined = mul(&g.comp, s, t).is_some();
            if defined != (source[s.index()] == range[t.index()]) {
                return Err(GroupoidError::AxiomViolation(format!(
                    "({}, {}) composable iff d(s) = r(t) fails",
                    name(s),
                    name(t)
                )));
            }
        }
    }

    for s in (0..n).map(ElementId::from_index) {
        for t in (0..n).map(ElementId::from_index) {
            for u in (0..n).map(ElementId::from_index) {
                let st = mul(&g.comp, s, t);
                let tu = mul(&g.comp, t, u);
                let left = st.and_then(|st| mul(&g.comp, st, u));
                let right = tu.and_then(|tu| mul(&g.comp, s, tu));
                if left != right || (st.is_some() && tu.is_some()) != left.is_some() {
                    return Err(GroupoidError::AxiomViolation(format!(
                        "associativity fails at ({}, {}, {})",
                        name(s),
                        name(t),
                        name(u)
                    )));
                }
            }
        }
    }

    g.source = source;
    g.range = range;
    g.units = units.into_iter().collect();
    Ok(())
}

/// The four-element groupoid `{g, g⁻¹, d(g), r(g)}` with labels `g, gi, e, f`
/// (`e = d(g)`, `f = r(g)`).
pub fn arrow_groupoid() -> FiniteGroupoid {
    let spec = GroupoidSpec {
        elements: ["g", "gi", "e", "f"].map(String::from).to_vec(),
        inv: [("g", "gi"), ("gi", "g"), ("e", "e"), ("f", "f")]
            .into_iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect(),
        comp: [
            ["g", "gi", "f"],
            ["gi", "g", "e"],
            ["e", "e", "e"],
            ["f", "f", "f"],
            ["f", "g", "g"],
            ["g", "e", "g"],
            ["e", "gi", "gi"],
            ["gi", "f", "gi"],
        ]
        .into_iter()
        .map(|t| t.map(String::from))
        .collect(),
    };
    FiniteGroupoid::build(&spec).expect("arrow groupoid is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ids(g: &FiniteGroupoid, ls: &[&str]) -> Vec<ElementId> {
        ls.iter().map(|l| g.id(l).unwrap()).collect()
    }

    #[test]
    fn arrow_groupoid_structure() {
        let g = arrow_groupoid();
        assert_eq!(g.len(), 4);
        assert_eq!(g.units(), ids(&g, &["e", "f"]).as_slice());
        let (a, ai) = (g.id("g").unwrap(), g.id("gi").unwrap());
        assert_eq!(g.compose(a, ai).unwrap(), Some(g.id("f").unwrap()));
        assert_eq!(g.compose(a, a).unwrap(), None);
        assert_eq!(g.source(a), g.id("e").unwrap());
        assert_eq!(g.range(a), g.id("f").unwrap());
        assert_eq!(g.x_class(a).unwrap(), ids(&g, &["f", "g"]));
    }

    #[test]
    fn trivial_and_cyclic() {
        let z1 = FiniteGroupoid::cyclic(1);
        assert_eq!(z1.len(), 1);
        assert_eq!(z1.units().len(), 1);
        let e = z1.id("e").unwrap();
        assert_eq!(z1.x_class(e).unwrap(), vec![e]);

        let z2 = FiniteGroupoid::cyclic(2);
        let a = z2.id("a").unwrap();
        assert_eq!(z2.compose(a, a).unwrap(), Some(z2.id("e").unwrap()));
        assert_eq!(z2.x_class(a).unwrap(), ids(&z2, &["a", "e"]));

        let z3 = FiniteGroupoid::cyclic(3);
        assert_eq!(z3.len(), 3);
        assert_eq!(z3.units().len(), 1);
    }

    #[test]
    fn broken_range_is_an_axiom_violation() {
        let mut spec = arrow_groupoid().to_spec();
        for t in spec.comp.iter_mut() {
            if t[0] == "g" && t[1] == "gi" {
                t[2] = "e".into();
            }
        }
        assert!(matches!(FiniteGroupoid::build(&spec), Err(GroupoidError::AxiomViolation(_))));
    }

    #[test]
    fn referential_errors_are_malformed() {
        let mut spec = arrow_groupoid().to_spec();
        spec.comp.push(["g".into(), "zz".into(), "g".into()]);
        assert!(matches!(FiniteGroupoid::build(&spec), Err(GroupoidError::MalformedSpec(_))));

        let mut spec = arrow_groupoid().to_spec();
        spec.inv.remove("g");
        assert!(matches!(FiniteGroupoid::build(&spec), Err(GroupoidError::MalformedSpec(_))));

        let mut spec = arrow_groupoid().to_spec();
        spec.elements.push("g".into());
        assert!(matches!(FiniteGroupoid::build(&spec), Err(GroupoidError::MalformedSpec(_))));
    }

    #[test]
    fn unknown_elements() {
        let g = arrow_groupoid();
        assert!(matches!(g.id("nope"), Err(GroupoidError::UnknownElement(_))));
        let bad = ElementId::from_index(17);
        assert!(g.compose(bad, bad).is_err());
        assert!(g.x_class(bad).is_err());
    }

    #[test]
    fn non_group_table_rejected() {
        let labels = ["e", "a"];
        let table = vec![vec![0, 1], vec![1, 1]];
        assert!(matches!(FiniteGroupoid::from_group(&labels, &table), Err(GroupoidError::AxiomViolation(_))));
    }

    #[test]
    fn disjoint_unions() {
        let z2 = FiniteGroupoid::cyclic(2);
        let z3 = FiniteGroupoid::cyclic(3);
        let u = FiniteGroupoid::disjoint_union(&[z2.clone(), z2.clone()]).unwrap();
        assert_eq!(u.len(), 4);
        assert_eq!(u.units().len(), 2);
        let u = FiniteGroupoid::disjoint_union(&[z2.clone(), z3]).unwrap();
        assert_eq!(u.len(), 5);
        let (a0, a1) = (u.id("0.a").unwrap(), u.id("1.a").unwrap());
        assert_eq!(u.compose(a0, a1).unwrap(), None);
        let single = FiniteGroupoid::disjoint_union(std::slice::from_ref(&z2)).unwrap();
        assert_eq!(single.len(), z2.len());
        assert_eq!(single.to_spec().comp.len(), z2.to_spec().comp.len());
        assert_eq!(FiniteGroupoid::disjoint_union(&[]), Err(GroupoidError::EmptyUnion));
    }

    #[test]
    fn spec_round_trips_through_json() {
        let g = arrow_groupoid();
        let json = serde_json::to_string(&g.to_spec()).unwrap();
        let back: GroupoidSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(FiniteGroupoid::build(&back).unwrap(), g);
    }
}
