// Planar trees, the Tonks projection, level trees and the diagonal on K_n.

use biassoc::trees::{delta_k, descent_sequences, partition_to_plt, plt_to_partition, tonks_project, Orientation};
use biassoc::{OrderedPartition, PlanarTree};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for s in ["1|2", "2|1", "12", "1|2|3", "2|13", "13|2"] {
        let f: OrderedPartition = s.parse()?;
        match tonks_project(&f) {
            Some(t) => println!("{s} -> {t}"),
            None => println!("{s} -> degenerate"),
        }
    }

    let f: OrderedPartition = "2|13".parse()?;
    let up = partition_to_plt(&f, Orientation::Up);
    println!("{f} as a level tree: {:?}, back to {}", descent_sequences(&up), plt_to_partition(&up)?);

    for k in 3..=4 {
        let d = delta_k(&PlanarTree::corolla(k));
        println!("Δ_K on the {k}-corolla ({} terms):", d.len());
        for (a, b) in d.iter() {
            println!("  {a} ⊗ {b}");
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
