// Step matrices, derived matrices and the diagonal on P_n.

use biassoc::diagonal::{chain_map_defects, delta_p, derived_matrices, step_matrix_of};
use biassoc::OrderedPartition;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let e = step_matrix_of(&[2, 1, 3])?;
    println!("step matrix of 213:\n{e}");
    for d in derived_matrices(&e) {
        let (a, b) = d.complementary_pair();
        println!("  derived {:?} -> {a} ⊗ {b}", d.rows());
    }

    for n in 1..=4 {
        let d = delta_p(&OrderedPartition::top(n));
        println!("Δ(P_{n}) has {} terms", d.len());
    }
    println!("Δ(12) = {}", delta_p(&"12".parse()?));
    println!("Δ(1|23) = {}", delta_p(&"1|23".parse()?));

    let bad = chain_map_defects(4)?;
    println!("chain map defects on P_4: {}", bad.len());
    assert!(bad.is_empty());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
