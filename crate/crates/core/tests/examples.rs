mod faces_and_joins {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/faces_and_joins.rs"));
}
mod diagonal {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/diagonal.rs"));
}
mod subdivisions {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/subdivisions.rs"));
}
mod associahedra {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/associahedra.rs"));
}
mod matrad_terms {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/matrad_terms.rs"));
}
mod differential {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/differential.rs"));
}
mod selection_rule {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/selection_rule.rs"));
}
mod posets {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/posets.rs"));
}
mod json_and_cli {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/json_and_cli.rs"));
}

#[test]
fn faces_and_joins_runs() {
    faces_and_joins::run_example().expect("faces_and_joins");
}

#[test]
fn diagonal_runs() {
    diagonal::run_example().expect("diagonal");
}

#[test]
fn subdivisions_runs() {
    subdivisions::run_example().expect("subdivisions");
}

#[test]
fn associahedra_runs() {
    associahedra::run_example().expect("associahedra");
}

#[test]
fn matrad_terms_runs() {
    matrad_terms::run_example().expect("matrad_terms");
}

#[test]
fn differential_runs() {
    differential::run_example().expect("differential");
}

#[test]
fn selection_rule_runs() {
    selection_rule::run_example().expect("selection_rule");
}

#[test]
fn posets_runs() {
    posets::run_example().expect("posets");
}

#[test]
fn json_and_cli_runs() {
    json_and_cli::run_example().expect("json_and_cli");
}
