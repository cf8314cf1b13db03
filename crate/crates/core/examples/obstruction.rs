//! A one-parameter chain started far from m^q_0 dies within 2q−1 steps,
//! and the binomial matrix behind the obstruction is nonsingular.

use std::collections::BTreeMap;

use maxclass::exactnum::{det, ParamPoly};
use maxclass::extend::{binomial_matrix, extend_chain, extend_once, ExtensionKind};
use maxclass::liealg::build_m0q;

fn main() {
    for q in 3..=5 {
        let k = 2 * q + 1;
        // m^q_{0,1}(2k+1): the family over m^q_0(2k) with its parameter at 1.
        let out = extend_once(&build_m0q(q, 2 * k).unwrap()).unwrap();
        let mut map = BTreeMap::new();
        map.insert(out.fresh_params[0].clone(), ParamPoly::one());
        let start = out.algebra.unwrap().substitute(&map);
        let chain = extend_chain(&start, 2 * q).unwrap();
        let last = chain.last().unwrap();
        let died = last.outcome.kind == ExtensionKind::Inconsistent;
        println!(
            "q = {}, k = {}: chain from dim {} {} at dim {}",
            q,
            k,
            start.top(),
            if died { "dies" } else { "survives" },
            last.outcome.level
        );
        let m = binomial_matrix(q, k).unwrap();
        println!("  det of the {}x{} binomial matrix = {}", q, q, det(&m).unwrap());
    }
}
