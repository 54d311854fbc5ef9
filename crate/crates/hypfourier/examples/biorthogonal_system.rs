//! The biorthogonal system H_0, H_n, M_n dual to 1, e^{i pi n x}, e^{i pi n/x}:
//! envelopes, periodization identities, and the delta pairings.
//!
//!     cargo run --release --example biorthogonal_system

use hypfourier::biortho::{BiorthoEvaluator, Family};
use hypfourier::faber::FaberBasis;
use hypfourier::theta::C64;
use std::f64::consts::PI;
use std::sync::Arc;

fn main() {
    let ev = BiorthoEvaluator::new(Arc::new(FaberBasis::new(8).unwrap()));

    println!("sample values");
    for &x in &[0.0, 0.5, 1.0, 2.0, 5.0] {
        println!(
            "  H_0({x:>4}) = {:>12.8}   H_2({x:>4}) = {:>24.8}   M_2({x:>4}) = {:>24.8}",
            ev.h0(x).unwrap(),
            ev.hn(2, x).unwrap(),
            ev.mn(2, x).unwrap()
        );
    }

    println!("\nsymmetries");
    let x = 1.7;
    println!(
        "  H_0(-1/x) - x^2 H_0(x) = {:.2e}",
        (ev.h0(-1.0 / x).unwrap() - x * x * ev.h0(x).unwrap()).abs()
    );
    println!(
        "  M_2(x) - H_2(-1/x)/x^2 = {:.2e}",
        (ev.mn(2, 0.6).unwrap() - ev.hn(2, -1.0 / 0.6).unwrap() / 0.36).norm()
    );

    println!("\nperiodization identities (certified tails)");
    let (p0, e0) = ev.periodize(Family::H0, 0, 0.3, 1e-6).unwrap();
    println!("  2 sum_k H_0(0.3+2k) = {:.8} (exact 1), err est {e0:.1e}", 2.0 * p0.re);
    let (p2, _) = ev.periodize(Family::H, 2, 0.25, 1e-6).unwrap();
    let want = (C64::new(0.0, 2.0 * PI * 0.25)).exp();
    println!(
        "  2 sum_k H_2(0.25+2k) = {:.8}, e^(i pi 2 0.25) = {want:.8}",
        2.0 * p2
    );
    let (pm, _) = ev.periodize(Family::M, 1, 0.7, 1e-6).unwrap();
    println!("  sum_k M_1(0.7+2k) = {:.2e} (exact 0)", pm.norm());

    println!("\ndelta pairings int e^(-i pi m x) H_n(x) dx");
    for (m, n) in [(2i64, 2i64), (1, 2), (0, 0), (3, -1)] {
        let fam = if n == 0 { Family::H0 } else { Family::H };
        let v = ev.pairing(m, fam, n, 1e-5).unwrap();
        println!("  (m, n) = ({m:>2}, {n:>2}): {v:.6}");
    }
}
