//! The polynomial systems cutting out the graded filiform algebras of
//! dimension n, in the x and z coordinates, with restrictions and a
//! Jacobian rank.

use maxclass::exactnum::Rational;
use maxclass::varieties::{
    all_weights_except, assemble_system, change_coords, jacobian_rank_at, restrict, z_map_m10_1, Point, VarietyVar,
};

fn main() {
    for n in 9..=11 {
        println!("n = {}:", n);
        print!("{}", assemble_system(n).unwrap().export());
    }

    let m10 = assemble_system(10).unwrap();
    println!("M_10 in z coordinates:");
    print!("{}", change_coords(&m10, &z_map_m10_1()).unwrap().export());

    // Keeping only the weight-2 coordinates of M_13 leaves one equation.
    let only2 = restrict(&assemble_system(13).unwrap(), &all_weights_except(13, 2));
    println!("M_13 on the weight-2 coordinates:");
    for p in only2.polys.iter().filter(|p| !p.poly.is_zero()) {
        println!("{}: {}", p.label, p.poly);
    }

    let mut pt: Point = m10.vars.iter().map(|v| (*v, Rational::zero())).collect();
    pt.insert(VarietyVar::x(3, 0), Rational::one());
    println!(
        "Jacobian rank of M_10 at x[3,0] = 1: {}",
        jacobian_rank_at(&m10, &pt).unwrap()
    );
}
