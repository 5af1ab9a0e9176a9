//! One PASS/FAIL line per acceptance criterion; exits non-zero if any fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use exel_sgpd::action::{exhaustive_family, ActionSpec, GroupoidPartialAction};
use exel_sgpd::algebra::AlgPartialAction;
use exel_sgpd::certify::{certify_inverse, check_epsilon_identities};
use exel_sgpd::crossed::{iso_roundtrip, CrossedProduct, SamplingPlan};
use exel_sgpd::groupoid::{arrow_groupoid, FiniteGroupoid};
use exel_sgpd::oracle::{compare_with_normalizer, congruence_classes};
use exel_sgpd::projection::{build_cp_star_algebra, ProjectionAlgebra};
use exel_sgpd::report::Report;
use exel_sgpd::representation::{regular_partial_rep, triangle, TAU};
use exel_sgpd::semigroupoid::ExelSemigroupoid;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn z(n: usize) -> FiniteGroupoid {
    FiniteGroupoid::cyclic(n)
}

fn union(parts: &[FiniteGroupoid]) -> FiniteGroupoid {
    FiniteGroupoid::disjoint_union(parts).expect("non-empty")
}

fn action(g: &FiniteGroupoid, text: &str) -> GroupoidPartialAction {
    let spec: ActionSpec = serde_json::from_str(text).expect("bundled action parses");
    GroupoidPartialAction::from_spec(g, &spec).expect("bundled action fits its groupoid")
}

fn require(rep: &Report, what: &str) -> Result<(), String> {
    if rep.is_ok() {
        return Ok(());
    }
    let detail: Vec<String> = rep
        .checks
        .iter()
        .filter(|c| !c.passed())
        .map(|c| format!("{} ({} of {}; {:?})", c.axiom, c.failures, c.instances, c.witnesses.first()))
        .collect();
    Err(format!("{what}: {}", detail.join("; ")))
}

fn size(g: &FiniteGroupoid) -> usize {
    ExelSemigroupoid::new(g.clone()).enumerate().len()
}

fn g1_forms() -> Outcome {
    let sg = ExelSemigroupoid::new(arrow_groupoid());
    let g = sg.groupoid();
    let id = |l: &str| g.id(l).unwrap();
    let words =
        [vec![id("g")], vec![id("gi")], vec![id("e")], vec![id("f")], vec![id("g"), id("gi")], vec![id("gi"), id("g")]];
    let listed: BTreeSet<_> = words.iter().map(|w| sg.normalize_word(w).unwrap()).collect();
    let all: BTreeSet<_> = sg.enumerate().into_iter().collect();
    if all.len() == 6 && listed == all {
        Ok("|S(G1)| = 6, equal to the six listed words".into())
    } else {
        Err(format!("|S(G1)| = {}, listed words give {} forms", all.len(), listed.len()))
    }
}

fn additivity() -> Outcome {
    let (z2, z3) = (z(2), z(3));
    let a = (size(&union(&[z2.clone(), z2.clone()])), 2 * size(&z2));
    let b = (size(&union(&[z2.clone(), z3.clone()])), size(&z2) + size(&z3));
    if a.0 == a.1 && b.0 == b.1 {
        Ok(format!("|S(Z2⊔Z2)| = {}, |S(Z2⊔Z3)| = {}", a.0, b.0))
    } else {
        Err(format!("Z2⊔Z2: {} vs {}, Z2⊔Z3: {} vs {}", a.0, a.1, b.0, b.1))
    }
}

fn oracle() -> Outcome {
    let mut notes = Vec::new();
    for (name, g) in [("Z2", z(2)), ("Z3", z(3)), ("G1", arrow_groupoid())] {
        let part = congruence_classes(&g, 6).map_err(|e| format!("{name}: {e}"))?;
        let stable = part.restrict(5).class_count == part.class_count;
        let agreement = compare_with_normalizer(&ExelSemigroupoid::new(g), &part);
        if !agreement.agrees || !stable {
            return Err(format!("{name}: agrees = {}, stable = {stable}, {:?}", agreement.agrees, agreement.witnesses));
        }
        notes.push(format!("{name} {} words/{} classes", agreement.words, agreement.classes));
    }
    Ok(notes.join(", "))
}

fn inverse_certification() -> Outcome {
    for g in [z(2), z(3), arrow_groupoid(), union(&[z(2), z(2)])] {
        require(&certify_inverse(&ExelSemigroupoid::new(g)), "certification")?;
    }
    Ok("Z2, Z3, G1, Z2⊔Z2".into())
}

fn epsilon() -> Outcome {
    let mut instances = 0;
    for g in [z(1), z(2), z(3), z(4), arrow_groupoid(), union(&[z(2), z(2)]), union(&[z(2), z(3)])] {
        let rep = check_epsilon_identities(&ExelSemigroupoid::new(g));
        require(&rep, "ε identities")?;
        instances += rep.checks.iter().map(|c| c.instances).sum::<usize>();
    }
    Ok(format!("{instances} instances"))
}

fn action_bijection() -> Outcome {
    let mut notes = Vec::new();
    for (name, g) in [("Z2", z(2)), ("G1", arrow_groupoid())] {
        let out = exhaustive_family(&g, 2).map_err(|e| e.to_string())?;
        for axiom in ["induced S(G)-action valid", "α → β → α", "β → α → β", "injective", "surjective"] {
            if !out.report.holds(axiom) {
                return Err(format!("{name}: {axiom} fails"));
            }
        }
        if out.valid_partial != out.valid_sg {
            return Err(format!("{name}: {} partial actions, {} S(G)-actions", out.valid_partial, out.valid_sg));
        }
        notes.push(format!("{name}: {} ↔ {}", out.valid_partial, out.valid_sg));
    }
    Ok(notes.join(", "))
}

fn crossed_products() -> Outcome {
    let contexts = [
        ("Z2", z(2), include_str!("../data/z2_action.json")),
        ("G1", arrow_groupoid(), include_str!("../data/g1_action.json")),
        ("G1 on 3 points", arrow_groupoid(), include_str!("../data/g1_action3.json")),
    ];
    let mut notes = Vec::new();
    for (name, g, text) in contexts {
        let ctx = AlgPartialAction::functions(&action(&g, text));
        require(&ctx.validate(), name)?;
        require(&CrossedProduct::new(ctx.clone()).check_associativity(SamplingPlan::Exhaustive), name)?;
        let iso = iso_roundtrip(&ctx).map_err(|e| format!("{name}: {e}"))?;
        require(&iso.report, name)?;
        let d = &iso.dims;
        if d.crossed_product != d.sum_of_ideals || d.crossed_product != d.quotient {
            return Err(format!("{name}: {d:?}"));
        }
        notes.push(format!("{name} dim {}", d.crossed_product));
    }
    Ok(notes.join(", "))
}

/// Groupoids with at most five elements, up to the ones we can name.
fn small_groupoids() -> Vec<FiniteGroupoid> {
    let klein = FiniteGroupoid::from_group(
        &["e", "x", "y", "xy"],
        &[vec![0, 1, 2, 3], vec![1, 0, 3, 2], vec![2, 3, 0, 1], vec![3, 2, 1, 0]],
    )
    .expect("Klein four-group");
    let g1 = arrow_groupoid();
    vec![
        z(1),
        z(2),
        z(3),
        z(4),
        z(5),
        klein,
        g1.clone(),
        union(&[z(1), z(1)]),
        union(&[z(1), z(2)]),
        union(&[z(1), z(1), z(1)]),
        union(&[z(2), z(2)]),
        union(&[z(1), z(3)]),
        union(&[z(2), z(3)]),
        union(&[z(1), z(4)]),
        union(&[z(1), g1]),
        union(&[z(1), z(2), z(2)]),
    ]
}

fn cp_star() -> Outcome {
    let gs = small_groupoids();
    for g in &gs {
        require(&ProjectionAlgebra::new(g).check_relations(), "projection relations")?;
    }
    let z2 = build_cp_star_algebra(&z(2));
    if z2.dim() != 3 || z2.independent_dim() != 3 {
        return Err(format!("dim C_p*(Z2) = {}, independent count {}", z2.dim(), z2.independent_dim()));
    }
    for g in [arrow_groupoid(), z(3)] {
        require(&build_cp_star_algebra(&g).check_generators(), "generators")?;
    }
    Ok(format!("{} groupoids with |G| ≤ 5, dim C_p*(Z2) = 3", gs.len()))
}

fn representations() -> Outcome {
    let models = [
        ("Z2", z(2), include_str!("../data/z2_action.json")),
        ("G1", arrow_groupoid(), include_str!("../data/g1_action.json")),
    ];
    for (name, g, text) in models {
        let p = regular_partial_rep(&action(&g, text)).map_err(|e| format!("{name}: {e}"))?;
        let rep = triangle(&p, TAU).map_err(|e| format!("{name}: {e}"))?;
        require(&rep, name)?;
    }
    Ok(format!("Z2, G1 at τ = {TAU:e}"))
}

fn characterization() -> Outcome {
    let mut notes = Vec::new();
    let mut failed = false;
    for (name, g) in [("Z2", z(2)), ("G1", arrow_groupoid())] {
        let out = exhaustive_family(&g, 2).map_err(|e| e.to_string())?;
        for axiom in ["partial action ⇒ characterization", "characterization ⇒ partial action"] {
            let c = out.report.get(axiom).expect("declared");
            if !c.passed() {
                failed = true;
                notes.push(format!(
                    "{name}: {axiom} fails on {} of {} maps, e.g. {}",
                    c.failures, c.instances, c.witnesses[0]
                ));
            }
        }
    }
    if failed {
        Err(notes.join("; "))
    } else {
        Ok("exact on Z2 and G1".into())
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("S(G1) standard forms", g1_forms),
        ("disjoint-union additivity", additivity),
        ("oracle equivalence", oracle),
        ("inverse-semigroupoid certification", inverse_certification),
        ("ε identities", epsilon),
        ("action bijection", action_bijection),
        ("crossed-product suite", crossed_products),
        ("C_p*(G) suite", cp_star),
        ("representation triangle", representations),
        ("map characterization of partial actions", characterization),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name} [{secs:.2}s]: {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL {:>2} {name} [{secs:.2}s]: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
