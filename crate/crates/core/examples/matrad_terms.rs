// Matrad terms: parsing, wiring graphs, and the product of bisequence matrices.

use biassoc::terms::{btp_decompose, contact_sequences, parse_term, upsilon, Notation, TermMatrix};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let t = parse_term("g(t2^1 t2^1 t2^1; g(t1^2 1; t1^2) t1^3)")?;
    println!("{t}");
    println!("{}", t.display(Notation::Fraction));
    println!("arity {:?}, dim {}, row tree {}, col tree {}", t.arity(), t.dim(), t.row_tree(), t.col_tree());
    println!("contact sequences {:?}", contact_sequences(&t)?);

    // the same graph, written with different associations
    let a = parse_term("g(g(t2^1; t2^1 1); t2^1 1 1)")?;
    let b = parse_term("g(t2^1; g(t2^1; t2^1 1) 1)")?;
    println!("{a} and {b} equal: {}", a.graph() == b.graph());

    let x = TermMatrix::of_generators(&[1, 5, 4, 3], &[2, 1]);
    let y = TermMatrix::of_generators(&[3, 1], &[1, 2, 3]);
    let bl = btp_decompose(&x, &y).ok_or("not a block transverse pair")?;
    println!("row blocks {:?}, column runs {:?}", bl.row_blocks, bl.col_runs);
    let z = upsilon(&x, &y).ok_or("zero product")?;
    println!("product has shape {:?}, rls {:?}, cls {:?}", z.shape(), z.rls(), z.cls());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
