// Canonical JSON and the command line driver.

use biassoc::cli::run;
use biassoc::formats::{decode, encode};
use biassoc::terms::parse_term;
use biassoc::{OrderedPartition, Term};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let f: OrderedPartition = "13|24".parse()?;
    let s = encode(&f, None);
    println!("{s}");
    assert_eq!(decode::<OrderedPartition>(&s)?, f);

    let t = parse_term("g(t2^1 t2^1; t1^2 t1^2)")?;
    let s = encode(&t, None);
    println!("{s}");
    assert_eq!(decode::<Term>(&s)?, t);

    if let Err(e) = decode::<Term>(r#"{"gen":[2,0]}"#) {
        println!("{e}");
    }

    for args in [
        vec!["biassoc", "fvector", "--kk", "2,3", "--json-indent", "0"],
        vec!["biassoc", "boundary", "--gen", "2,2", "--notation", "fraction"],
    ] {
        let out = run(args);
        println!("exit {}: {}", out.code, out.stdout.trim_end());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
