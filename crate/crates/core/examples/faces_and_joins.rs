// Faces of permutahedra as ordered partitions, and the combinatorial join.

use biassoc::partition::{enumerate_faces, join_table};
use biassoc::OrderedPartition;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for n in 1..=4 {
        let counts: Vec<usize> =
            (0..n).map(|d| enumerate_faces(n, Some(d)).map(|f| f.len())).collect::<Result<_, _>>()?;
        println!("P_{n}: faces by dimension {counts:?}");
    }

    let f: OrderedPartition = "13|24".parse()?;
    println!("dim {f} = {}, boundary = {}", f.dim(), f.boundary());
    println!("chi({f}) = {}", f.chi());

    let rows = join_table(2, 2, 2)?;
    for r in &rows {
        println!("{} {} * {} = {}", r.index, r.a, r.b, r.join);
    }
    assert_eq!(rows.len(), 14);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
