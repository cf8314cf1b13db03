//! Uniqueness of m^q_0 among chains with a long zero prefix, and the q = 3
//! dead ends for k = 4, 5, 6.

use maxclass::classify::{verify_k_lemmas, verify_main_theorem};

fn main() {
    for q in [3, 4] {
        let r = verify_main_theorem(q, 40).unwrap();
        println!("q = {}: holds = {}", q, r.holds());
        for d in &r.deviations {
            println!(
                "  b = 1 at dim {}: dead by {:?} (decidable: {})",
                d.level, d.died_at, d.decidable
            );
        }
    }
    let k = verify_k_lemmas();
    for c in &k.cases {
        let betas: Vec<String> = c.betas.iter().map(|b| b.to_string()).collect();
        println!("k = {}: betas ({}), dies at {:?}", c.k, betas.join(", "), c.death_level);
    }
}
