//! The complete case analysis over m^3_0(6).
//!
//! Run with an optional maximal dimension: `cargo run --example classify_q3 -- 24`.

use maxclass::classify::{classify_q3, render_tree};

fn main() {
    let max_dim = std::env::args().nth(1).map_or(30, |s| s.parse().expect("max_dim"));
    let c = classify_q3(max_dim).unwrap();
    print!("{}", render_tree(&c.root));
    let types: Vec<String> = c.summary.surviving_types().iter().map(|t| t.to_string()).collect();
    println!("{} surviving types: {}", types.len(), types.join(", "));
    println!(
        "{} branches open at the horizon, {} dead ends",
        c.summary.open.len(),
        c.summary.dead
    );
}
