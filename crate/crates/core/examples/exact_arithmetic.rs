//! Exact polynomials, gcds, rational roots and a fraction-free determinant.

use maxclass::exactnum::{det, poly_gcd, rational_roots, ParamPoly, RatMatrix};

fn main() {
    let p: ParamPoly = "245*b1^10 + 238*b1^9 - 606*b1^8 + 270*b1^7 - 27*b1^6".parse().unwrap();
    let q: ParamPoly = "35*b1^3 - 26*b1^2 + 3*b1".parse().unwrap();
    println!("p = {}", p);
    println!("gcd(p, q) = {}", poly_gcd(&p, &q).unwrap());
    let roots = rational_roots(&p).unwrap();
    println!(
        "rational roots of p: {}",
        roots.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(", ")
    );

    // A matrix with symbolic entries: the determinant stays exact.
    let m = RatMatrix::from_rows(vec![
        vec!["a".parse().unwrap(), ParamPoly::int(2)],
        vec![ParamPoly::int(3), "a + 1".parse().unwrap()],
    ]);
    println!("det = {}", det(&m).unwrap());
}
