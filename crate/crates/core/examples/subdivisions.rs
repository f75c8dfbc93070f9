// Subdivisions P_n^(k) cut out by the iterated diagonal, and the basic
// subdivision vertices of the faces m|n+m.

use biassoc::diagonal::subdivision_complex;
use biassoc::posets::count_basic_subdivision;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for (n, k) in [(2, 1), (2, 2), (3, 1), (3, 2), (4, 1)] {
        let s = subdivision_complex(n, k);
        println!("P_{n}^({k}): f = {:?}", s.f_vector());
    }
    for (m, n, cell) in [(2, 2, "12|34"), (3, 1, "123|4"), (3, 2, "123|45")] {
        let c = count_basic_subdivision(m, n, &cell.parse()?)?;
        println!("({m},{n}) on {cell}: {} basic vertices, {} top cells", c.basic_vertices, c.top_cells);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
