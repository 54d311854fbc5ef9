//! Klein-Gordon interpolation on the characteristics: the functions R_n,
//! reconstruction of U_phi from lattice samples, and the continuous-solution
//! residual.
//!
//!     cargo run --release --example klein_gordon

use hypfourier::faber::FaberBasis;
use hypfourier::hfs::{Support, TestFunction};
use hypfourier::kleingordon::{kg_residual, u_phi, KGSamples, KgEvaluator, QuadrantPoint};
use hypfourier::theta::C64;
use hypfourier::QuadConfig;
use std::f64::consts::PI;
use std::sync::Arc;

fn main() {
    let q = QuadConfig::default();
    let kg = KgEvaluator::new(Arc::new(FaberBasis::new(8).unwrap()));

    println!("interpolation deltas R_n(pi m, 0)");
    for n in 0..=3usize {
        let row: Vec<String> = (0..=3i64)
            .map(|m| format!("{:>9.2e}", kg.r_interp(n, PI * m as f64, 0.0).unwrap().norm()))
            .collect();
        println!("  n = {n}: {}", row.join(" "));
    }

    let phi = TestFunction::new(
        |t| {
            let (a, b) = (2.0 / 3.0, 1.5);
            if t <= a || t >= b {
                C64::new(0.0, 0.0)
            } else {
                C64::new((-1.0 / ((t - a) * (b - t))).exp(), 0.0)
            }
        },
        Support::Interval(2.0 / 3.0, 1.5),
        1.0,
    );

    println!("\nreconstruction of U_phi from 16 lattice samples per characteristic");
    let kg16 = KgEvaluator::new(Arc::new(FaberBasis::new(16).unwrap()));
    let n = 16usize;
    let mut s = KGSamples::zero(n);
    for k in -(n as i64)..=(n as i64) {
        s.set_ux(k, u_phi(&phi, PI * k as f64, 0.0, &q).unwrap());
        if k != 0 {
            s.set_uy(k, u_phi(&phi, 0.0, PI * k as f64, &q).unwrap());
        }
    }
    for &(x, y) in &[(0.5, -0.5), (1.5, -1.0), (2.0, 0.0)] {
        let p = QuadrantPoint::new(x, y).unwrap();
        let (got, _) = kg16.reconstruct(&s, p).unwrap();
        let want = u_phi(&phi, x, y, &q).unwrap();
        println!(
            "  U({x:>4},{y:>5}) = {:>12.8}; reconstructed {:>12.8}; diff {:.1e}",
            want.re,
            got.re,
            (got - want).norm()
        );
    }

    println!("\ncontinuous-solution residual on rectangles (corner sum + double integral)");
    let u = |x: f64, y: f64| u_phi(&phi, x, y, &QuadConfig::with_tol(1e-10));
    for rect in [(0.0, 1.0, -1.0, 0.0), (0.5, 1.5, -2.0, -0.5)] {
        let r = kg_residual(&u, rect, &QuadConfig::with_tol(1e-8)).unwrap();
        println!("  rect {rect:?}: residual {:.2e}", r.norm());
    }
    let one = |_: f64, _: f64| Ok(C64::new(1.0, 0.0));
    let r = kg_residual(&one, (0.0, 1.0, 0.0, 1.0), &QuadConfig::with_tol(1e-9)).unwrap();
    println!("  constants are not solutions: residual on the unit square = {:.6}", r.re);
}
