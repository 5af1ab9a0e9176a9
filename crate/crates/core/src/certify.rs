//! Brute-force certification of the algebraic laws of `S(G)`.

use rayon::prelude::*;

use crate::report::Report;
use crate::semigroupoid::{ExelSemigroupoid, SgElement};

/// `αα*α = α`, `α*αα* = α*`, `α*` the only generalized inverse, commuting
/// idempotents, and `∃αβ ⇔ ∃∂(α)∂(β)`.
pub fn certify_inverse(sg: &ExelSemigroupoid) -> Report {
    let g = sg.groupoid();
    let elems = sg.enumerate();
    let show = |a: &SgElement| sg.display(a).to_string();
    let mut rep = Report::new("inverse semigroupoid");
    for name in ["αα*α = α", "α*αα* = α*", "unique inverse", "idempotents commute", "∃αβ ⇔ ∃∂α∂β"]
    {
        rep.declare(name);
    }
    let m = |a: &SgElement, b: &SgElement| sg.mul(a, b);
    let triple = |a: &SgElement, b: &SgElement, c: &SgElement| m(a, b).and_then(|ab| m(&ab, c));

    let inverses: Vec<Vec<SgElement>> = elems
        .par_iter()
        .map(|a| {
            elems
                .iter()
                .filter(|b| triple(a, b, a).as_ref() == Some(a) && triple(b, a, b).as_ref() == Some(*b))
                .cloned()
                .collect()
        })
        .collect();
    for (a, inv) in elems.iter().zip(&inverses) {
        let s = sg.star(a);
        rep.record("αα*α = α", triple(a, &s, a).as_ref() == Some(a), || show(a));
        rep.record("α*αα* = α*", triple(&s, a, &s).as_ref() == Some(&s), || show(a));
        rep.record("unique inverse", inv.as_slice() == [s.clone()], || {
            format!("{} has inverses {:?}", show(a), inv.iter().map(show).collect::<Vec<_>>())
        });
    }
    for a in &elems {
        for b in &elems {
            let w = || format!("({}, {})", show(a), show(b));
            rep.record("∃αβ ⇔ ∃∂α∂β", m(a, b).is_some() == g.composable(a.anchor(), b.anchor()), w);
            if sg.is_idempotent(a) && sg.is_idempotent(b) {
                if let Some(ab) = m(a, b) {
                    rep.record("idempotents commute", m(b, a) == Some(ab), w);
                }
            }
        }
    }
    rep
}

/// The identities of the `ε_t = [t][t⁻¹]` over all applicable pairs of `G`.
pub fn check_epsilon_identities(sg: &ExelSemigroupoid) -> Report {
    let g = sg.groupoid();
    let gen = |t| sg.generator(t).expect("t in G");
    let eps = |t| sg.epsilon(t).expect("t in G");
    let m = |a: &SgElement, b: &SgElement| sg.mul(a, b);
    let mut rep = Report::new("ε identities");
    for name in ["(i) ε_t² = ε_t = ε_t*", "(ii) ε_t ε_s = ε_s ε_t", "(iii) [t]ε_s = ε_ts[t]", "(iv) [t]² = ε_t[t²]"]
    {
        rep.declare(name);
    }
    for t in g.elements() {
        let e = eps(t);
        // ε_t must also equal the literal product [t][t⁻¹]
        let literal = m(&gen(t), &gen(g.inverse(t)));
        let ok = literal.as_ref() == Some(&e) && m(&e, &e).as_ref() == Some(&e) && sg.star(&e) == e;
        rep.record("(i) ε_t² = ε_t = ε_t*", ok, || g.label(t).to_string());
        if let Some(tt) = g.mul(t, t) {
            let ok = m(&gen(t), &gen(t)).is_some() && m(&gen(t), &gen(t)) == m(&e, &gen(tt));
            rep.record("(iv) [t]² = ε_t[t²]", ok, || g.label(t).to_string());
        }
        for s in g.elements() {
            let w = || format!("(t, s) = ({}, {})", g.label(t), g.label(s));
            if g.composable(g.inverse(t), s) {
                let (et, es) = (eps(t), eps(s));
                let ok = m(&et, &es).is_some() && m(&et, &es) == m(&es, &et);
                rep.record("(ii) ε_t ε_s = ε_s ε_t", ok, w);
            }
            if let Some(ts) = g.mul(t, s) {
                let ok = m(&gen(t), &eps(s)).is_some() && m(&gen(t), &eps(s)) == m(&eps(ts), &gen(t));
                rep.record("(iii) [t]ε_s = ε_ts[t]", ok, w);
            }
        }
    }
    rep
}

/// Compares, on every pair, the standard-form order test with the
/// definition (`α = iβ`, `i` idempotent) and the four equivalent conditions
/// of the order lemma.
pub fn check_order_lemma(sg: &ExelSemigroupoid) -> Report {
    let elems = sg.enumerate();
    let idem: Vec<&SgElement> = elems.iter().filter(|a| sg.is_idempotent(a)).collect();
    let m = |a: &SgElement, b: &SgElement| sg.mul(a, b);
    let mut rep = Report::new("natural order");
    for s in &elems {
        for t in &elems {
            let fast = sg.leq(s, t).expect("same groupoid");
            let by_def = idem.iter().any(|i| m(i, t).as_ref() == Some(s));
            let star = sg.leq(&sg.star(s), &sg.star(t)).expect("same groupoid");
            let ss = sg.star(s);
            let ii = m(&ss, t).is_some() && m(s, &ss).and_then(|x| m(&x, t)).as_ref() == Some(s);
            let iii = m(t, &ss).is_some() && m(t, &ss).and_then(|x| m(&x, s)).as_ref() == Some(s);
            let iv = idem.iter().any(|f| m(t, f).as_ref() == Some(s));
            let all = [by_def, star, ii, iii, iv];
            rep.record("order conditions agree", all.iter().all(|&c| c == fast), || {
                format!("({}, {}): leq={fast} def/i/ii/iii/iv={all:?}", sg.display(s), sg.display(t))
            });
        }
    }
    rep
}
