// The posets PP_{n,m}, transpositions, and the quotients KK_{n+1,m+1}.

use biassoc::posets::{build_pp, export_dot, quotient_kk};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let pp = build_pp(1, 2);
    for (a, b) in &pp.poset.covers {
        println!("{} < {}", pp.poset.labels[*a], pp.poset.labels[*b]);
    }
    let u1 = &pp.base[0].seq;
    for (i, j, k) in u1.edge_pairs() {
        println!("T^{k}_{i}{j}({u1}) = {}", u1.transpose(i, j, k)?);
    }
    print!("{}", export_dot(&pp.poset));

    for (n, m) in [(1, 1), (1, 2), (1, 3), (2, 2), (0, 4)] {
        let q = quotient_kk(n, m);
        println!(
            "PP_{n},{m}: {} elements, {} con; quotient has {} classes",
            q.pp.elements.len(),
            q.pp.con_count(),
            q.poset.len()
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
