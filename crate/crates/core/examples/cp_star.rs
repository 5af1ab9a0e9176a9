//! The algebra C_p*(G) generated by projections P_E and partial isometries a_t.

use exel_sgpd::groupoid::{arrow_groupoid, FiniteGroupoid};
use exel_sgpd::projection::build_cp_star_algebra;

fn main() -> anyhow::Result<()> {
    for (name, g) in [("Z2", FiniteGroupoid::cyclic(2)), ("Z3", FiniteGroupoid::cyclic(3)), ("G1", arrow_groupoid())] {
        let c = build_cp_star_algebra(&g);
        let labels: Vec<String> = (0..c.dim()).map(|i| c.basis_label(i)).collect();
        println!("{name}: dim C_p* = {} (projection algebra dim {})", c.dim(), c.projections().dim());
        println!("  basis: {}", labels.join(", "));
        let unit = c.find_unit().expect("finite crossed products here are unital");
        println!("  unit is Σ_e P_{{e}}δ_e: {}", unit == c.expected_unit());
        let rep = c.check_all();
        println!("  relations and generators hold: {}", rep.is_ok());
    }
    Ok(())
}
