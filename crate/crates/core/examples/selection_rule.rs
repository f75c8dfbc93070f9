// Elementary fractions of lower cells, and the rule that picks the
// boundary of a generator out of them.

use std::collections::BTreeSet;

use biassoc::hinf::GenTable;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let table = GenTable::build(6)?;
    println!("fractions for θ_3^2 by dimension: {:?}", table.census(3, 2)?);
    let sel = table.selection_rule(3, 2)?;
    println!("selected: {}", sel.len());
    for t in sel.values() {
        println!("  {t}");
    }
    println!("admissible cells: {}", table.admissible_closure(3, 2)?.len() - 1);

    for tot in 3..=6 {
        for m in 1..tot {
            let n = tot - m;
            let a: BTreeSet<_> = table.selection_rule(m, n)?.into_keys().collect();
            let b: BTreeSet<_> = table.boundary_generator(m, n)?.graphs().cloned().collect();
            println!("({m},{n}): selection rule agrees with the boundary: {}", a == b);
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
