//! Building groupoids from tables and inspecting source, range and X-classes.

use exel_sgpd::groupoid::{arrow_groupoid, FiniteGroupoid, GroupoidSpec};

fn main() -> anyhow::Result<()> {
    let spec: GroupoidSpec = serde_json::from_str(include_str!("../data/g1.json"))?;
    let g = FiniteGroupoid::build(&spec)?;
    assert_eq!(g, arrow_groupoid());

    println!("units: {:?}", g.labels_of(g.units()));
    for x in g.elements() {
        let class = g.x_class(x)?;
        println!(
            "{:>3}: d = {}, r = {}, inverse = {}, X = {:?}",
            g.label(x),
            g.label(g.source(x)),
            g.label(g.range(x)),
            g.label(g.inverse(x)),
            g.labels_of(&class)
        );
    }

    let u = FiniteGroupoid::disjoint_union(&[FiniteGroupoid::cyclic(2), FiniteGroupoid::cyclic(3)])?;
    println!("Z2 ⊔ Z3 has {} elements and units {:?}", u.len(), u.labels_of(u.units()));

    // a table whose inverse map is not an involution is rejected
    let broken: GroupoidSpec = serde_json::from_str(include_str!("../data/broken_inverse.json"))?;
    println!("broken table: {}", FiniteGroupoid::build(&broken).unwrap_err());
    Ok(())
}
