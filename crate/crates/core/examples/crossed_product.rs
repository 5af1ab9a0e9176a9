//! R ⋊ G for functions on a finite set, and its isomorphism with L/N.

use exel_sgpd::action::{ActionSpec, GroupoidPartialAction};
use exel_sgpd::algebra::AlgPartialAction;
use exel_sgpd::crossed::{iso_roundtrip, CpElement, CrossedProduct, SamplingPlan};
use exel_sgpd::groupoid::arrow_groupoid;

fn main() -> anyhow::Result<()> {
    let g = arrow_groupoid();
    let spec: ActionSpec = serde_json::from_str(include_str!("../data/g1_action.json"))?;
    let ctx = AlgPartialAction::functions(&GroupoidPartialAction::from_spec(&g, &spec)?);
    println!("context valid: {}", ctx.validate().is_ok());

    let cp = CrossedProduct::new(ctx.clone());
    println!("basis of R ⋊ G:");
    for i in 0..cp.dim() {
        println!("  {}", cp.show_basis(i));
    }
    for i in 0..cp.dim() {
        for j in 0..cp.dim() {
            let (x, y): (CpElement, CpElement) = (cp.basis_element(i), cp.basis_element(j));
            let xy = cp.multiply(&x, &y)?;
            if !xy.is_zero() {
                println!("  ({}) ({}) ≠ 0", cp.show_basis(i), cp.show_basis(j));
            }
        }
    }
    println!("associative on all basis triples: {}", cp.check_associativity(SamplingPlan::Exhaustive).is_ok());
    println!("sampled: {}", cp.check_associativity(SamplingPlan::Random { trials: 200, seed: 7 }).is_ok());

    let iso = iso_roundtrip(&ctx)?;
    println!("dimensions: {:?}", iso.dims);
    println!("φ and ψ̄ mutually inverse homomorphisms: {}", iso.report.is_ok());
    Ok(())
}
