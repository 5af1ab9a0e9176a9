//! Partial actions of a groupoid and actions of `S(G)` on finite sets, and the
//! constructive correspondence between them.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::groupoid::{ElementId, FiniteGroupoid, GroupoidError};
use crate::report::Report;
use crate::semigroupoid::{ExelSemigroupoid, SgElement, SgError};

/// Index into an action's point list.
pub type Point = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ActionError {
    #[error(transparent)]
    Groupoid(#[from] GroupoidError),
    #[error(transparent)]
    Sg(#[from] SgError),
    #[error("map is not injective: {0}")]
    NotInjective(String),
    #[error("unknown point `{0}`")]
    UnknownPoint(String),
    #[error("malformed action: {0}")]
    Malformed(String),
    #[error("input fails its axioms: {}", .0.join(", "))]
    InvalidInput(Vec<String>),
}

/// An injective map from a subset of the points into the points.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PartialBijection {
    map: BTreeMap<Point, Point>,
}

impl PartialBijection {
    pub fn new(pairs: impl IntoIterator<Item = (Point, Point)>) -> Result<Self, ActionError> {
        let mut map = BTreeMap::new();
        let mut image = BTreeSet::new();
        for (x, y) in pairs {
            if map.insert(x, y).is_some() {
                return Err(ActionError::NotInjective(format!("point {x} mapped twice")));
            }
            if !image.insert(y) {
                return Err(ActionError::NotInjective(format!("point {y} hit twice")));
            }
        }
        Ok(PartialBijection { map })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn identity(set: &BTreeSet<Point>) -> Self {
        PartialBijection { map: set.iter().map(|&x| (x, x)).collect() }
    }

    pub fn apply(&self, x: Point) -> Option<Point> {
        self.map.get(&x).copied()
    }

    pub fn domain(&self) -> BTreeSet<Point> {
        self.map.keys().copied().collect()
    }

    pub fn image(&self) -> BTreeSet<Point> {
        self.map.values().copied().collect()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        self.map.iter().map(|(&x, &y)| (x, y))
    }

    pub fn inverse(&self) -> Self {
        PartialBijection { map: self.map.iter().map(|(&x, &y)| (y, x)).collect() }
    }

    /// `self ∘ inner` on the largest domain where it makes sense:
    /// `dom = inner⁻¹(dom self ∩ im inner)`.
    pub fn after(&self, inner: &PartialBijection) -> Self {
        PartialBijection { map: inner.map.iter().filter_map(|(&x, y)| self.apply(*y).map(|z| (x, z))).collect() }
    }

    /// `f(A ∩ dom f)`.
    pub fn image_of(&self, set: &BTreeSet<Point>) -> BTreeSet<Point> {
        set.iter().filter_map(|&x| self.apply(x)).collect()
    }

    /// `f⁻¹(A) = {x ∈ dom f : f(x) ∈ A}`.
    pub fn preimage_of(&self, set: &BTreeSet<Point>) -> BTreeSet<Point> {
        self.pairs().filter(|(_, y)| set.contains(y)).map(|(x, _)| x).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().all(|(x, y)| x == y)
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

/// Every partial bijection of `{0, .., n-1}`.
pub fn all_partial_bijections(n: usize) -> Vec<PartialBijection> {
    fn go(n: usize, x: usize, used: &mut Vec<bool>, cur: &mut Vec<(Point, Point)>, out: &mut Vec<PartialBijection>) {
        if x == n {
            out.push(PartialBijection::new(cur.iter().copied()).expect("injective by construction"));
            return;
        }
        go(n, x + 1, used, cur, out);
        for y in 0..n {
            if !used[y] {
                used[y] = true;
                cur.push((x, y));
                go(n, x + 1, used, cur, out);
                cur.pop();
                used[y] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(n, 0, &mut vec![false; n], &mut Vec::new(), &mut out);
    out.sort();
    out
}

fn show_set(points: &[String], set: &BTreeSet<Point>) -> String {
    let items: Vec<&str> = set.iter().map(|&p| points[p].as_str()).collect();
    format!("{{{}}}", items.join(","))
}

fn union_of<'a>(sets: impl IntoIterator<Item = &'a BTreeSet<Point>>) -> BTreeSet<Point> {
    sets.into_iter().flatten().copied().collect()
}

/// JSON form: `{"set": [..], "D": {g: [..]}, "alpha": {g: {x: y}}}`.
/// Missing `D` entries are empty; missing `alpha` entries are the empty map.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionSpec {
    pub set: Vec<String>,
    #[serde(rename = "D", default)]
    pub domains: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub alpha: BTreeMap<String, BTreeMap<String, String>>,
}

/// Candidate partial action of `G` on a finite set; see
/// [`validate_partial_action`] for the axioms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupoidPartialAction {
    groupoid: FiniteGroupoid,
    points: Vec<String>,
    domains: Vec<BTreeSet<Point>>,
    maps: Vec<PartialBijection>,
}

fn check_points(points: &[String]) -> Result<(), ActionError> {
    let distinct: BTreeSet<&String> = points.iter().collect();
    if distinct.len() != points.len() {
        return Err(ActionError::Malformed("point listed twice".into()));
    }
    Ok(())
}

impl GroupoidPartialAction {
    /// `domains` and `maps` are indexed by element index. No axioms are checked.
    pub fn new(
        groupoid: FiniteGroupoid,
        points: Vec<String>,
        domains: Vec<BTreeSet<Point>>,
        maps: Vec<PartialBijection>,
    ) -> Result<Self, ActionError> {
        check_points(&points)?;
        if domains.len() != groupoid.len() || maps.len() != groupoid.len() {
            return Err(ActionError::Malformed("one domain and one map per element required".into()));
        }
        let n = points.len();
        let in_range = domains.iter().flatten().all(|&p| p < n)
            && maps.iter().flat_map(|m| m.pairs()).all(|(x, y)| x < n && y < n);
        if !in_range {
            return Err(ActionError::Malformed("point index out of range".into()));
        }
        Ok(GroupoidPartialAction { groupoid, points, domains, maps })
    }

    /// Points labelled `0..n`, `D_g := Im(α_g)`.
    pub fn from_maps(groupoid: FiniteGroupoid, n: usize, maps: Vec<PartialBijection>) -> Result<Self, ActionError> {
        let domains = maps.iter().map(PartialBijection::image).collect();
        Self::new(groupoid, (0..n).map(|i| i.to_string()).collect(), domains, maps)
    }

    pub fn from_spec(groupoid: &FiniteGroupoid, spec: &ActionSpec) -> Result<Self, ActionError> {
        check_points(&spec.set)?;
        let point =
            |l: &str| spec.set.iter().position(|p| p == l).ok_or_else(|| ActionError::UnknownPoint(l.to_string()));
        let mut domains = vec![BTreeSet::new(); groupoid.len()];
        for (g, pts) in &spec.domains {
            let g = groupoid.id(g)?;
            domains[g.index()] = pts.iter().map(|p| point(p)).collect::<Result<_, _>>()?;
        }
        let mut maps = vec![PartialBijection::empty(); groupoid.len()];
        for (g, m) in &spec.alpha {
            let g = groupoid.id(g)?;
            let pairs = m.iter().map(|(x, y)| Ok((point(x)?, point(y)?))).collect::<Result<Vec<_>, ActionError>>()?;
            maps[g.index()] = PartialBijection::new(pairs)?;
        }
        Self::new(groupoid.clone(), spec.set.clone(), domains, maps)
    }

    pub fn to_spec(&self) -> ActionSpec {
        let g = &self.groupoid;
        let label = |p: Point| self.points[p].clone();
        ActionSpec {
            set: self.points.clone(),
            domains: g
                .elements()
                .map(|x| (g.label(x).to_string(), self.domain(x).iter().map(|&p| label(p)).collect()))
                .collect(),
            alpha: g
                .elements()
                .map(|x| (g.label(x).to_string(), self.map(x).pairs().map(|(a, b)| (label(a), label(b))).collect()))
                .collect(),
        }
    }

    pub fn groupoid(&self) -> &FiniteGroupoid {
        &self.groupoid
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn domain(&self, g: ElementId) -> &BTreeSet<Point> {
        &self.domains[g.index()]
    }

    pub fn map(&self, g: ElementId) -> &PartialBijection {
        &self.maps[g.index()]
    }

    pub fn maps(&self) -> &[PartialBijection] {
        &self.maps
    }

    /// The partial map of a generator word, composed right to left.
    pub fn word_map(&self, word: &[ElementId]) -> PartialBijection {
        let mut acc: Option<PartialBijection> = None;
        for &x in word.iter().rev() {
            acc = Some(match acc {
                None => self.map(x).clone(),
                Some(inner) => self.map(x).after(&inner),
            });
        }
        acc.unwrap_or_default()
    }
}

/// Checks the partial-action axioms, and that the two equivalent axiom sets
/// (with `PA2/PA3` or with `PA2'/PA3'`) agree on this instance.
pub fn validate_partial_action(a: &GroupoidPartialAction) -> Report {
    let g = &a.groupoid;
    let pts = &a.points;
    let lab = |x: ElementId| g.label(x);
    let mut rep = Report::new("groupoid partial action");
    for name in ["D_g ⊆ D_r(g)", "α_g : D_g⁻¹ → D_g", "PA1", "PA2", "PA3", "PA2'", "PA3'"] {
        rep.declare(name);
    }

    for x in g.elements() {
        let (dx, dr) = (a.domain(x), a.domain(g.range(x)));
        rep.record("D_g ⊆ D_r(g)", dx.is_subset(dr), || {
            format!("D_{} = {} ⊄ D_{}", lab(x), show_set(pts, dx), lab(g.range(x)))
        });
        let m = a.map(x);
        let (dom, im) = (m.domain(), m.image());
        let want_dom = a.domain(g.inverse(x));
        rep.record("α_g : D_g⁻¹ → D_g", &dom == want_dom && &im == dx, || {
            format!(
                "α_{} has domain {} and image {}, expected {} → {}",
                lab(x),
                show_set(pts, &dom),
                show_set(pts, &im),
                show_set(pts, want_dom),
                show_set(pts, dx)
            )
        });
    }
    let shaped = rep.is_ok();

    let mut pa1 = true;
    for &e in g.units() {
        let ok = a.map(e) == &PartialBijection::identity(a.domain(e));
        pa1 &= ok;
        rep.record("PA1", ok, || format!("α_{} is not the identity of D_{}", lab(e), lab(e)));
    }

    let (mut pa23, mut pa23p) = (true, true);
    for s in g.elements() {
        for t in g.elements() {
            let Some(st) = g.mul(s, t) else { continue };
            let (ms, mt, mst) = (a.map(s), a.map(t), a.map(st));
            let d = |x: ElementId| a.domain(x);

            // PA2: α_t⁻¹(D_s⁻¹ ∩ D_t) ⊆ D_(st)⁻¹
            let meet: BTreeSet<Point> = d(g.inverse(s)).intersection(d(t)).copied().collect();
            let pre = mt.preimage_of(&meet);
            let ok2 = pre.is_subset(d(g.inverse(st)));
            rep.record("PA2", ok2, || {
                format!("({}, {}): α_t⁻¹(D_s⁻¹ ∩ D_t) = {}", lab(s), lab(t), show_set(pts, &pre))
            });
            let mut ok3 = true;
            for &x in &pre {
                let lhs = mt.apply(x).and_then(|y| ms.apply(y));
                let good = lhs.is_some() && lhs == mst.apply(x);
                ok3 &= good;
                rep.record("PA3", good, || format!("({}, {}) at {}", lab(s), lab(t), pts[x]));
            }
            pa23 &= ok2 && ok3;

            // PA2': α_s(D_s⁻¹ ∩ D_t) = D_s ∩ D_st
            let lhs = ms.image_of(&d(g.inverse(s)).intersection(d(t)).copied().collect());
            let rhs: BTreeSet<Point> = d(s).intersection(d(st)).copied().collect();
            let ok2p = lhs == rhs;
            rep.record("PA2'", ok2p, || {
                format!("({}, {}): {} ≠ {}", lab(s), lab(t), show_set(pts, &lhs), show_set(pts, &rhs))
            });
            let mut ok3p = true;
            for &x in d(g.inverse(t)).intersection(d(g.inverse(st))) {
                let lhs = mt.apply(x).and_then(|y| ms.apply(y));
                let good = lhs.is_some() && lhs == mst.apply(x);
                ok3p &= good;
                rep.record("PA3'", good, || format!("({}, {}) at {}", lab(s), lab(t), pts[x]));
            }
            pa23p &= ok2p && ok3p;
        }
    }

    if shaped {
        let (first, second) = (pa1 && pa23, pa1 && pa23p);
        rep.record("PA1-3 ⇔ PA1,PA2',PA3'", first == second, || {
            format!("PA1-3 gives {first}, primed axioms give {second}")
        });
    }
    rep
}

/// Consequences every partial action must satisfy: `α_g⁻¹ = α_g⁻¹` and
/// `α_h⁻¹(D_h ∩ D_g⁻¹) = D_h⁻¹ ∩ D_(gh)⁻¹`.
pub fn partial_action_consequences(a: &GroupoidPartialAction) -> Report {
    let g = &a.groupoid;
    let mut rep = Report::new("partial action consequences");
    for x in g.elements() {
        rep.record("inverse map", a.map(x).inverse() == *a.map(g.inverse(x)), || g.label(x).to_string());
    }
    for s in g.elements() {
        for t in g.elements() {
            let Some(st) = g.mul(s, t) else { continue };
            let d = |x: ElementId| a.domain(x);
            let lhs = a.map(g.inverse(t)).image_of(&d(t).intersection(d(g.inverse(s))).copied().collect());
            let rhs: BTreeSet<Point> = d(g.inverse(t)).intersection(d(g.inverse(st))).copied().collect();
            rep.record("domain transport", lhs == rhs, || format!("({}, {})", g.label(s), g.label(t)));
        }
    }
    rep
}

/// Result of the map-level characterization of partial actions.
#[derive(Debug, Clone)]
pub struct CharacterizationOutcome {
    pub holds: bool,
    pub report: Report,
    /// The partial action with `D_t = Im(α_t)`, when the characterization holds.
    pub action: Option<GroupoidPartialAction>,
}

/// Checks `α_s ∘ α_t ∘ α_t⁻¹ = α_st ∘ α_t⁻¹` on `G²` and `α_e = id_dom(α_e)`
/// on `G0` (`holds`). When they hold, also checks
/// `α_s⁻¹ ∘ α_s ∘ α_t = α_s⁻¹ ∘ α_st` and whether `D_t = Im(α_t)` really is a
/// partial action; `action` is set only in that case.
///
/// These two conditions are necessary but not sufficient: on `Z2` with
/// `α_e = ∅`, `α_a = {0 ↦ 1}` they hold and PA2 fails. See
/// [`inverse_law`] for the missing condition.
pub fn lemma1_characterize(
    groupoid: &FiniteGroupoid,
    points: &[String],
    maps: &[PartialBijection],
) -> Result<CharacterizationOutcome, ActionError> {
    if maps.len() != groupoid.len() {
        return Err(ActionError::Malformed("one map per element required".into()));
    }
    let g = groupoid;
    let m = |x: ElementId| &maps[x.index()];
    let mut rep = Report::new("map characterization");
    rep.declare("(i) α_s α_t α_t⁻¹ = α_st α_t⁻¹");
    rep.declare("(ii) α_e = id");
    for s in g.elements() {
        for t in g.elements() {
            let Some(st) = g.mul(s, t) else { continue };
            let ti = m(g.inverse(t));
            let lhs = m(s).after(&m(t).after(ti));
            let rhs = m(st).after(ti);
            rep.record("(i) α_s α_t α_t⁻¹ = α_st α_t⁻¹", lhs == rhs, || {
                format!("({}, {})", g.label(s), g.label(t))
            });
        }
    }
    for &e in g.units() {
        rep.record("(ii) α_e = id", m(e).is_identity(), || g.label(e).to_string());
    }
    let holds = rep.is_ok();
    let mut action = None;
    if holds {
        for s in g.elements() {
            for t in g.elements() {
                let Some(st) = g.mul(s, t) else { continue };
                let si = m(g.inverse(s));
                let ok = si.after(&m(s).after(m(t))) == si.after(m(st));
                rep.record("(iii) α_s⁻¹ α_s α_t = α_s⁻¹ α_st", ok, || {
                    format!("({}, {})", g.label(s), g.label(t))
                });
            }
        }
        let domains = maps.iter().map(PartialBijection::image).collect();
        let derived = GroupoidPartialAction::new(g.clone(), points.to_vec(), domains, maps.to_vec())?;
        let check = validate_partial_action(&derived);
        rep.record("derived action valid", check.is_ok(), || check.failing().join(", "));
        action = check.is_ok().then_some(derived);
    }
    Ok(CharacterizationOutcome { holds, report: rep, action })
}

/// `α_t⁻¹ = α_t` read as maps, i.e. `α_{t⁻¹}` is the inverse bijection of `α_t`.
/// Together with (i) and (ii) of [`lemma1_characterize`] this decides exactly
/// whether `maps` is a partial action on every exhaustive family we enumerate.
pub fn inverse_law(groupoid: &FiniteGroupoid, maps: &[PartialBijection]) -> Report {
    let mut rep = Report::new("inverse law");
    rep.declare("α_t⁻¹ = (α_t)⁻¹");
    for t in groupoid.elements() {
        let ok = maps[groupoid.inverse(t).index()] == maps[t.index()].inverse();
        rep.record("α_t⁻¹ = (α_t)⁻¹", ok, || groupoid.label(t).to_string());
    }
    rep
}

/// An action of `S(G)` on a finite set: `E_α` and `β_α : E_α* → E_α` per element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SgAction {
    sg: ExelSemigroupoid,
    points: Vec<String>,
    sets: BTreeMap<SgElement, BTreeSet<Point>>,
    maps: BTreeMap<SgElement, PartialBijection>,
}

impl SgAction {
    pub fn new(
        sg: ExelSemigroupoid,
        points: Vec<String>,
        sets: BTreeMap<SgElement, BTreeSet<Point>>,
        maps: BTreeMap<SgElement, PartialBijection>,
    ) -> Result<Self, ActionError> {
        check_points(&points)?;
        let n = points.len();
        if union_of(sets.values()).iter().any(|&p| p >= n)
            || maps.values().flat_map(|m| m.pairs()).any(|(x, y)| x >= n || y >= n)
        {
            return Err(ActionError::Malformed("point index out of range".into()));
        }
        if sets.keys().chain(maps.keys()).any(|k| k.groupoid_tag() != sg.groupoid().tag()) {
            return Err(SgError::MixedGroupoids.into());
        }
        Ok(SgAction { sg, points, sets, maps })
    }

    /// `E_α := Im(β_α)`.
    pub fn from_maps(
        sg: ExelSemigroupoid,
        points: Vec<String>,
        maps: BTreeMap<SgElement, PartialBijection>,
    ) -> Result<Self, ActionError> {
        let sets = maps.iter().map(|(k, m)| (k.clone(), m.image())).collect();
        Self::new(sg, points, sets, maps)
    }

    pub fn semigroupoid(&self) -> &ExelSemigroupoid {
        &self.sg
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn set(&self, a: &SgElement) -> BTreeSet<Point> {
        self.sets.get(a).cloned().unwrap_or_default()
    }

    pub fn map(&self, a: &SgElement) -> PartialBijection {
        self.maps.get(a).cloned().unwrap_or_default()
    }
}

/// Checks the action axioms on every element of `S(G)`, plus the derived
/// facts `β_s* = β_s⁻¹`, `β_s(E_t) = E_st` and `E_st ⊆ E_s` for `∃st`.
pub fn validate_sg_action(b: &SgAction) -> Report {
    let sg = &b.sg;
    let pts = &b.points;
    let elems = sg.enumerate();
    let show = |a: &SgElement| sg.display(a).to_string();
    let mut rep = Report::new("S(G) action");
    for name in [
        "defined on S(G)",
        "E_s = E_ss*",
        "β_s : E_s* → E_s",
        "A1",
        "A2",
        "β_s* = β_s⁻¹",
        "β_s(E_t) = E_st",
        "E_st ⊆ E_s",
    ] {
        rep.declare(name);
    }
    let known: BTreeSet<&SgElement> = elems.iter().collect();
    for k in b.sets.keys().chain(b.maps.keys()) {
        rep.record("defined on S(G)", known.contains(k), || format!("unexpected key {}", show(k)));
    }

    for a in &elems {
        let st = sg.star(a);
        let aa = sg.mul(a, &st).expect("α α* exists");
        rep.record("E_s = E_ss*", b.set(a) == b.set(&aa), || show(a));
        let m = b.map(a);
        rep.record("β_s : E_s* → E_s", m.domain() == b.set(&st) && m.image() == b.set(a), || {
            format!("β_{} : {} → {}", show(a), show_set(pts, &m.domain()), show_set(pts, &m.image()))
        });
        if sg.is_idempotent(a) {
            rep.record("A1", m == PartialBijection::identity(&b.set(a)), || show(a));
        }
        rep.record("β_s* = β_s⁻¹", b.map(&st) == m.inverse(), || show(a));
    }
    for x in &elems {
        for y in &elems {
            let Some(xy) = sg.mul(x, y) else { continue };
            rep.record("A2", b.map(x).after(&b.map(y)) == b.map(&xy), || format!("({}, {})", show(x), show(y)));
            let moved = b.map(x).image_of(&b.set(y));
            rep.record("β_s(E_t) = E_st", moved == b.set(&xy), || format!("({}, {})", show(x), show(y)));
            rep.record("E_st ⊆ E_s", b.set(&xy).is_subset(&b.set(x)), || format!("({}, {})", show(x), show(y)));
        }
    }
    rep
}

/// The `S(G)`-action induced by a partial action:
/// `β_(E,s) = (∏_{r ∈ E} α_r ∘ α_r⁻¹) ∘ α_s`, `E_α = Im(β_α)`.
pub fn partial_to_sg(a: &GroupoidPartialAction) -> Result<SgAction, ActionError> {
    let rep = validate_partial_action(a);
    if !rep.is_ok() {
        return Err(ActionError::InvalidInput(rep.failing().iter().map(|s| s.to_string()).collect()));
    }
    let sg = ExelSemigroupoid::new(a.groupoid.clone());
    let maps = sg
        .enumerate()
        .into_iter()
        .map(|x| {
            let m = a.word_map(&sg.word_of(&x));
            (x, m)
        })
        .collect();
    SgAction::from_maps(sg, a.points.clone(), maps)
}

/// The partial action `α_g = β_[g]`, `D_g = E_[g]` of an `S(G)`-action.
pub fn sg_to_partial(b: &SgAction) -> Result<GroupoidPartialAction, ActionError> {
    let rep = validate_sg_action(b);
    if !rep.is_ok() {
        return Err(ActionError::InvalidInput(rep.failing().iter().map(|s| s.to_string()).collect()));
    }
    let g = b.sg.groupoid();
    let gens: Vec<SgElement> = g.elements().map(|x| b.sg.generator(x)).collect::<Result<_, _>>()?;
    let maps: Vec<PartialBijection> = gens.iter().map(|x| b.map(x)).collect();
    let domains = gens.iter().map(|x| b.set(x)).collect();
    let a = GroupoidPartialAction::new(g.clone(), b.points.clone(), domains, maps)?;
    let rep = validate_partial_action(&a);
    if !rep.is_ok() {
        return Err(ActionError::InvalidInput(rep.failing().iter().map(|s| s.to_string()).collect()));
    }
    Ok(a)
}

/// Upper bound on `|I(X)|^|S(G)|` for [`exhaustive_family`].
pub const FAMILY_BUDGET: u64 = 5_000_000;

/// Counts and report of the exhaustive comparison over all maps into `I(X)`.
#[derive(Debug, Clone, Serialize)]
pub struct FamilyOutcome {
    pub groupoid_size: usize,
    pub sg_size: usize,
    pub points: usize,
    pub maps_g: usize,
    pub maps_sg: usize,
    pub valid_partial: usize,
    pub valid_sg: usize,
    pub report: Report,
}

fn nth_assignment(mut index: u64, slots: usize, choices: &[PartialBijection]) -> Vec<PartialBijection> {
    let k = choices.len() as u64;
    (0..slots)
        .map(|_| {
            let c = &choices[(index % k) as usize];
            index /= k;
            c.clone()
        })
        .collect()
}

/// Over every map `G → I(X)` and every map `S(G) → I(X)` with `|X| = n`:
/// the map characterization is compared with the partial action axioms in
/// both directions (with and without the inverse law), and
/// `partial_to_sg` is a bijection onto the valid `S(G)`-actions with inverse
/// `sg_to_partial`.
pub fn exhaustive_family(groupoid: &FiniteGroupoid, n: usize) -> Result<FamilyOutcome, ActionError> {
    use rayon::prelude::*;

    let choices = all_partial_bijections(n);
    let points: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let sg = ExelSemigroupoid::new(groupoid.clone());
    let elems = sg.enumerate();
    let k = choices.len() as u64;
    let total_g = k.checked_pow(groupoid.len() as u32).filter(|&t| t <= FAMILY_BUDGET);
    let total_sg = k.checked_pow(elems.len() as u32).filter(|&t| t <= FAMILY_BUDGET);
    let (Some(total_g), Some(total_sg)) = (total_g, total_sg) else {
        return Err(ActionError::Malformed(format!("more than {FAMILY_BUDGET} assignments")));
    };

    let per_map: Vec<(bool, bool, bool, Option<GroupoidPartialAction>)> = (0..total_g)
        .into_par_iter()
        .map(|i| {
            let maps = nth_assignment(i, groupoid.len(), &choices);
            let lemma = lemma1_characterize(groupoid, &points, &maps).expect("one map per element").holds;
            let inv = inverse_law(groupoid, &maps).is_ok();
            let act = GroupoidPartialAction::from_maps(groupoid.clone(), n, maps).expect("indices in range");
            let valid = validate_partial_action(&act).is_ok();
            (lemma, inv, valid, valid.then_some(act))
        })
        .collect();
    // A2 on indices; an assignment failing it cannot pass validate_sg_action
    let index: BTreeMap<&SgElement, usize> = elems.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let products: Vec<(usize, usize, usize)> = elems
        .iter()
        .enumerate()
        .flat_map(|(i, x)| elems.iter().enumerate().map(move |(j, y)| (i, j, x, y)))
        .filter_map(|(i, j, x, y)| sg.mul(x, y).map(|xy| (i, j, index[&xy])))
        .collect();
    let valid_sg: Vec<SgAction> = (0..total_sg)
        .into_par_iter()
        .filter_map(|i| {
            let assigned = nth_assignment(i, elems.len(), &choices);
            if products.iter().any(|&(x, y, xy)| assigned[x].after(&assigned[y]) != assigned[xy]) {
                return None;
            }
            let maps = elems.iter().cloned().zip(assigned).collect();
            let b = SgAction::from_maps(sg.clone(), points.clone(), maps).expect("indices in range");
            validate_sg_action(&b).is_ok().then_some(b)
        })
        .collect();

    let mut rep = Report::new("exhaustive action family");
    for name in [
        "partial action ⇒ characterization",
        "characterization ⇒ partial action",
        "characterization + inverse law ⇔ partial action",
    ] {
        rep.declare(name);
    }
    for (i, &(lemma, inv, valid, _)) in per_map.iter().enumerate() {
        let w = || show_assignment(groupoid, &nth_assignment(i as u64, groupoid.len(), &choices));
        if valid {
            rep.record("partial action ⇒ characterization", lemma, w);
        }
        if lemma {
            rep.record("characterization ⇒ partial action", valid, w);
        }
        rep.record("characterization + inverse law ⇔ partial action", (lemma && inv) == valid, w);
    }
    let partials: Vec<&GroupoidPartialAction> = per_map.iter().filter_map(|(.., a)| a.as_ref()).collect();
    let mut images = BTreeSet::new();
    for a in &partials {
        let shown = || format!("{:?}", a.to_spec().alpha);
        match partial_to_sg(a) {
            Ok(b) => {
                rep.record("induced S(G)-action valid", validate_sg_action(&b).is_ok(), shown);
                rep.record("α → β → α", sg_to_partial(&b).as_ref() == Ok(*a), shown);
                images.insert(sg_key(&b, &elems));
            }
            Err(_) => rep.record("induced S(G)-action valid", false, shown),
        }
    }
    let targets: BTreeSet<Vec<PartialBijection>> = valid_sg.iter().map(|b| sg_key(b, &elems)).collect();
    for b in &valid_sg {
        let shown = || format!("{:?}", sg_key(b, &elems));
        match sg_to_partial(b) {
            Ok(a) => rep.record("β → α → β", partial_to_sg(&a).as_ref() == Ok(b), shown),
            Err(_) => rep.record("β → α → β", false, shown),
        }
    }
    rep.record("injective", images.len() == partials.len(), || {
        format!("{} images of {}", images.len(), partials.len())
    });
    rep.record("surjective", images == targets, || format!("{} images, {} S(G)-actions", images.len(), targets.len()));

    Ok(FamilyOutcome {
        groupoid_size: groupoid.len(),
        sg_size: elems.len(),
        points: n,
        maps_g: total_g as usize,
        maps_sg: total_sg as usize,
        valid_partial: partials.len(),
        valid_sg: valid_sg.len(),
        report: rep,
    })
}

fn show_assignment(g: &FiniteGroupoid, maps: &[PartialBijection]) -> String {
    let show = |m: &PartialBijection| m.pairs().map(|(x, y)| format!("{x}↦{y}")).collect::<Vec<_>>().join(", ");
    g.elements().map(|x| format!("α_{} = {{{}}}", g.label(x), show(&maps[x.index()]))).collect::<Vec<_>>().join(", ")
}

fn sg_key(b: &SgAction, elems: &[SgElement]) -> Vec<PartialBijection> {
    elems.iter().map(|s| b.map(s)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::arrow_groupoid;

    fn pb(pairs: &[(Point, Point)]) -> PartialBijection {
        PartialBijection::new(pairs.iter().copied()).unwrap()
    }

    /// Z2 on {1, 2}: D_e = X, D_a = {1}, α_a = id on {1}.
    pub(crate) fn z2_example() -> GroupoidPartialAction {
        let g = FiniteGroupoid::cyclic(2);
        let spec: ActionSpec = serde_json::from_str(
            r#"{"set": ["1", "2"], "D": {"e": ["1", "2"], "a": ["1"]},
                "alpha": {"e": {"1": "1", "2": "2"}, "a": {"1": "1"}}}"#,
        )
        .unwrap();
        GroupoidPartialAction::from_spec(&g, &spec).unwrap()
    }

    #[test]
    fn partial_bijection_basics() {
        assert!(PartialBijection::new([(0, 1), (1, 1)]).is_err());
        assert!(PartialBijection::new([(0, 1), (0, 0)]).is_err());
        let f = pb(&[(0, 1), (1, 2)]);
        let g = pb(&[(2, 0), (1, 1)]);
        // f ∘ g: 2 ↦ 0 ↦ 1, 1 ↦ 1 ↦ 2
        assert_eq!(f.after(&g), pb(&[(1, 2), (2, 1)]));
        assert_eq!(f.inverse().after(&f), PartialBijection::identity(&f.domain()));
        assert_eq!(all_partial_bijections(2).len(), 7);
        assert_eq!(all_partial_bijections(3).len(), 34);
    }

    #[test]
    fn z2_example_is_valid() {
        let a = z2_example();
        let rep = validate_partial_action(&a);
        assert!(rep.is_ok(), "{rep:#?}");
        assert!(partial_action_consequences(&a).is_ok());
    }

    #[test]
    fn range_mismatch_reported() {
        let a = z2_example();
        let g = a.groupoid().clone();
        let mut maps = a.maps().to_vec();
        maps[g.id("a").unwrap().index()] = pb(&[(0, 1)]);
        let bad = GroupoidPartialAction::new(g, a.points().to_vec(), a.domains.clone(), maps).unwrap();
        let rep = validate_partial_action(&bad);
        assert!(!rep.holds("α_g : D_g⁻¹ → D_g"));
    }

    #[test]
    fn global_actions_are_valid() {
        let g = FiniteGroupoid::cyclic(2);
        let swap = pb(&[(0, 1), (1, 0)]);
        let id = pb(&[(0, 0), (1, 1)]);
        let (e, a) = (g.id("e").unwrap(), g.id("a").unwrap());
        let mut maps = vec![PartialBijection::empty(); 2];
        maps[e.index()] = id;
        maps[a.index()] = swap;
        let act = GroupoidPartialAction::from_maps(g.clone(), 2, maps).unwrap();
        assert!(validate_partial_action(&act).is_ok());
        for x in g.elements() {
            assert_eq!(act.domain(x), act.domain(g.range(x)));
        }
    }

    #[test]
    fn characterization_examples() {
        let a = z2_example();
        let out = lemma1_characterize(a.groupoid(), a.points(), a.maps()).unwrap();
        assert!(out.holds && out.report.is_ok());
        assert_eq!(out.action.unwrap(), a);

        let mut maps = a.maps().to_vec();
        let e = a.groupoid().id("e").unwrap();
        maps[e.index()] = pb(&[(0, 1), (1, 0)]);
        let out = lemma1_characterize(a.groupoid(), a.points(), &maps).unwrap();
        assert!(!out.holds && out.action.is_none());
    }

    #[test]
    fn z2_induced_sg_action() {
        let a = z2_example();
        let b = partial_to_sg(&a).unwrap();
        assert!(validate_sg_action(&b).is_ok());
        let sg = b.semigroupoid().clone();
        let g = sg.groupoid().clone();
        let x = g.id("a").unwrap();
        assert_eq!(b.map(&sg.generator(x).unwrap()), *a.map(x));
        let eps = sg.epsilon(x).unwrap();
        assert_eq!(b.map(&eps), PartialBijection::identity(a.domain(x)));
        assert_eq!(b.set(&eps), BTreeSet::from([0]));
        for y in g.elements() {
            assert_eq!(b.set(&sg.generator(y).unwrap()), b.set(&sg.epsilon(y).unwrap()));
        }
        assert_eq!(sg_to_partial(&b).unwrap(), a);
    }

    #[test]
    fn broken_a1_reported() {
        let b = partial_to_sg(&z2_example()).unwrap();
        let sg = b.semigroupoid().clone();
        let eps = sg.epsilon(sg.groupoid().id("a").unwrap()).unwrap();
        let mut maps = b.maps.clone();
        maps.insert(eps, pb(&[(0, 1)]));
        let bad = SgAction::new(sg, b.points.clone(), b.sets.clone(), maps).unwrap();
        let rep = validate_sg_action(&bad);
        assert!(!rep.holds("A1"));
        assert!(sg_to_partial(&bad).is_err());
    }

    #[test]
    fn identity_groupoid_and_trivial_actions() {
        let g = FiniteGroupoid::cyclic(1);
        let e = g.id("e").unwrap();
        let dom = BTreeSet::from([0, 1]);
        let act = GroupoidPartialAction::new(
            g,
            vec!["p".into(), "q".into()],
            vec![dom.clone()],
            vec![PartialBijection::identity(&dom)],
        )
        .unwrap();
        let b = partial_to_sg(&act).unwrap();
        let sg = b.semigroupoid().clone();
        assert_eq!(b.map(&sg.generator(e).unwrap()), PartialBijection::identity(&dom));

        // only D_e = X non-empty on the arrow groupoid
        let g = arrow_groupoid();
        let mut domains = vec![BTreeSet::new(); g.len()];
        let mut maps = vec![PartialBijection::empty(); g.len()];
        let ex = g.id("e").unwrap();
        domains[ex.index()] = dom.clone();
        maps[ex.index()] = PartialBijection::identity(&dom);
        let act = GroupoidPartialAction::new(g, vec!["p".into(), "q".into()], domains, maps).unwrap();
        assert!(validate_partial_action(&act).is_ok());
        let b = partial_to_sg(&act).unwrap();
        assert_eq!(sg_to_partial(&b).unwrap(), act);
    }

    #[test]
    fn spec_round_trip_and_errors() {
        let a = z2_example();
        let back = GroupoidPartialAction::from_spec(a.groupoid(), &a.to_spec()).unwrap();
        assert_eq!(back, a);
        let mut spec = a.to_spec();
        spec.alpha.get_mut("a").unwrap().insert("9".into(), "1".into());
        assert!(matches!(GroupoidPartialAction::from_spec(a.groupoid(), &spec), Err(ActionError::UnknownPoint(_))));
        let mut spec = a.to_spec();
        spec.domains.insert("zz".into(), vec![]);
        assert!(GroupoidPartialAction::from_spec(a.groupoid(), &spec).is_err());
    }

    #[test]
    fn z2_family() {
        let out = exhaustive_family(&FiniteGroupoid::cyclic(2), 2).unwrap();
        assert_eq!((out.maps_g, out.maps_sg), (49, 343));
        assert_eq!(out.valid_partial, out.valid_sg);
        // (i) and (ii) alone accept four maps that are not partial actions
        assert_eq!(out.report.failing(), vec!["characterization ⇒ partial action"]);
        assert_eq!(out.report.get("characterization ⇒ partial action").unwrap().failures, 4);
    }

    #[test]
    fn g1_family() {
        let out = exhaustive_family(&crate::groupoid::arrow_groupoid(), 2).unwrap();
        assert_eq!((out.maps_g, out.maps_sg), (2401, 117_649));
        assert_eq!(out.valid_partial, out.valid_sg);
        assert_eq!(out.report.failing(), vec!["characterization ⇒ partial action"]);
        assert_eq!(out.report.get("characterization ⇒ partial action").unwrap().failures, 112);
    }

    #[test]
    fn characterization_counterexample() {
        let a = z2_example();
        let g = a.groupoid();
        let mut maps = vec![PartialBijection::empty(); 2];
        maps[g.id("a").unwrap().index()] = pb(&[(0, 1)]);
        let out = lemma1_characterize(g, a.points(), &maps).unwrap();
        assert!(out.holds);
        assert!(out.action.is_none());
        assert!(!out.report.holds("derived action valid"));
        assert!(!inverse_law(g, &maps).is_ok());
    }

    #[test]
    fn word_maps_respect_relations() {
        // the induced action is well defined on words: equal words act equally
        let a = z2_example();
        let sg = ExelSemigroupoid::new(a.groupoid().clone());
        let g = sg.groupoid().clone();
        let x = g.id("a").unwrap();
        let b = partial_to_sg(&a).unwrap();
        for len in 1..=5 {
            let word = vec![x; len];
            assert_eq!(a.word_map(&word), b.map(&sg.normalize_word(&word).unwrap()));
        }
    }
}
