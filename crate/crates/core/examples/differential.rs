// The differential on the generators and the complexes KK_{n,m}.

use biassoc::hinf::GenTable;
use biassoc::terms::Notation;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let table = GenTable::build(6)?;
    for (m, n) in [(2, 2), (3, 1), (2, 3)] {
        let bd = table.boundary_generator(m, n)?;
        println!("∂θ_{m}^{n} ({} terms):", bd.len());
        for t in bd.terms() {
            println!("  {}", t.display(Notation::Fraction));
        }
    }

    let report = table.verify_d_squared(6)?;
    println!("∂² = 0 up to m+n = 6: {}", report.passed());

    for (n, m) in [(2, 2), (2, 3), (3, 3), (2, 4), (1, 5)] {
        let kk = table.kk_cells(n, m)?;
        println!(
            "KK_{n},{m}: f = {:?}, homology = {:?}, χ = {}",
            kk.f_vector(),
            kk.homology(),
            kk.euler_characteristic()
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
