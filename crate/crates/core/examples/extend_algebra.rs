//! One-step and chained graded extensions.

use maxclass::extend::{extend_by_recursion, extend_chain, extend_once};
use maxclass::liealg::build_m0q;
use maxclass::report::extension_human;

fn main() {
    // Odd top degree: the extension is unique and adds nothing.
    print!("{}", extension_human(&extend_once(&build_m0q(3, 9).unwrap()).unwrap()));
    // Even top degree: a one-parameter family λ_{r,9−r} = (−1)^{4−r} b1.
    print!("{}", extension_human(&extend_once(&build_m0q(3, 8).unwrap()).unwrap()));

    // The [e_1, ·] recursion alone, keeping every parameter free.
    let step = extend_by_recursion(&build_m0q(3, 10).unwrap());
    println!("recursion to dim {} adds {:?}", step.algebra.top(), step.fresh_params);

    // A chain of six steps from m^3_0(6) threads forced parameters.
    for step in extend_chain(&build_m0q(3, 6).unwrap(), 6).unwrap() {
        print!("{}", extension_human(&step.outcome));
        for b in &step.bindings {
            println!("  forced {}", b);
        }
        if !step.pending.is_empty() {
            println!("  {} open constraints", step.pending.len());
        }
    }
}
