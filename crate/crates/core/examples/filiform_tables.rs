//! The fixed filiform tables: m_{0,3}(9) extends to m_{0,4}(10) and
//! m_{0,5}(11), which has no further extension, and neither does any
//! m_{0,3}(2k+3) with k ≥ 4.

use maxclass::extend::{extend_chain, extend_once};
use maxclass::liealg::{build_filiform_table, FiliformTable};
use maxclass::report::extension_human;

fn main() {
    let m03 = build_filiform_table(FiliformTable::M03, 3).unwrap();
    let chain = extend_chain(&m03, 2).unwrap();
    let m04 = build_filiform_table(FiliformTable::M04_10, 0).unwrap();
    let m05 = build_filiform_table(FiliformTable::M05_11, 0).unwrap();
    println!(
        "step 1 gives m_(0,4)(10): {}",
        chain[0].outcome.algebra.as_ref() == Some(&m04)
    );
    println!(
        "step 2 gives m_(0,5)(11): {}",
        chain[1].outcome.algebra.as_ref() == Some(&m05)
    );
    println!("lambda(5,6) = {}", m05.lambda(5, 6));

    print!("m_(0,5)(11) -> {}", extension_human(&extend_once(&m05).unwrap()));
    for k in 4..=10 {
        let a = build_filiform_table(FiliformTable::M03, k).unwrap();
        println!("m_(0,3)({}) -> {}", 2 * k + 3, extend_once(&a).unwrap().kind);
    }
}
