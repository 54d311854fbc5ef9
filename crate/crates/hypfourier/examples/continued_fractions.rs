//! Even-integer continued fractions, the even Gauss map, and the
//! classification of half-plane points into even-rational cells.
//!
//!     cargo run --release --example continued_fractions

use hypfourier::cfrac::{
    classify_point, convergents, even_parts, even_rational_decompose, gauss_map_h, phi_apply,
    phi_apply_rational, CFWord, CellKind,
};
use hypfourier::theta::C64;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

fn main() {
    println!("even integer / fractional parts");
    for &x in &[0.3, 8.0 / 3.0, -5.0, 1.0] {
        let (e, f) = even_parts(x);
        println!("  {x:>8.4} = {e} + {f:.4}");
    }

    println!("\ndecomposition of even rationals into words");
    for &(p, q) in &[(3i64, 8i64), (-2, 3), (1, 10), (89, 144)] {
        let w = even_rational_decompose(p, q).unwrap();
        let back = phi_apply_rational(&w, &BigRational::zero());
        println!("  {p}/{q} -> {:?} -> {back}", w.entries);
    }

    println!("\nconvergents of (1,-1,-1): p_k, q_k with p_(k-1) q_k - p_k q_(k-1) = 1");
    let w = CFWord::new(vec![1, -1, -1]).unwrap();
    let c = convergents(&w);
    for k in -1..=3i64 {
        println!("  k = {k:>2}: p = {:>4}, q = {:>4}", c.p(k), c.q(k));
    }
    let det = c.p(2) * c.q(3) - c.p(3) * c.q(2);
    assert_eq!(det, BigInt::from(1));

    println!("\ncomplex Gauss map inverts the word maps");
    let inner = C64::new(0.2, 0.5);
    let z = phi_apply(&CFWord::new(vec![3]).unwrap(), inner);
    let (g, j) = gauss_map_h(z).unwrap();
    println!("  phi_(3)({inner}) = {z:.6}; G2 back: {g:.6} with shift index {j}");

    println!("\nclassification in the even-rational partition");
    for &z in &[
        C64::new(0.1, 3.0),
        C64::new(0.45, 0.6),
        phi_apply(&CFWord::new(vec![1, -1]).unwrap(), C64::new(0.1, 0.6)),
        C64::new(0.372, 0.004),
    ] {
        match classify_point(z, 1e-9) {
            Ok(cell) => {
                let kind = match cell.kind {
                    CellKind::EInf => "exterior",
                    CellKind::EWord => "word cell",
                };
                println!(
                    "  {z:.6}: {kind}, shift {}, word {:?}, height {}",
                    cell.shift, cell.word.entries, cell.height
                );
            }
            Err(e) => println!("  {z:.6}: {e}"),
        }
    }
}
