//! The generating functions Phi^delta over the semicircle and rectangle
//! contours, and their analytic continuation across the even-rational
//! partition of the strip.
//!
//!     cargo run --release --example generating_functions

use hypfourier::cfrac::{phi_apply, CFWord};
use hypfourier::genfun::{phi_inf, phi_pi, phi_strip};
use hypfourier::theta::C64;
use hypfourier::QuadConfig;
use std::f64::consts::PI;

fn main() {
    let q = QuadConfig::default();
    let x = 0.6;

    println!("the two contours agree on the cell of zero");
    for &z in &[C64::new(0.05, 0.6), C64::new(-0.2, 0.55)] {
        let a = phi_inf(0, x, z, &q).unwrap();
        let b = phi_pi(0, x, z, &q).unwrap();
        println!("  z = {z:.3}: semicircle {a:.10}, rectangle {b:.10}, diff {:.1e}", (a - b).norm());
    }

    println!("\ncontinuation equals the original integral on the exterior set");
    let z = C64::new(0.1, 1.4);
    let a = phi_strip(0, x, z, &q).unwrap();
    let b = phi_inf(0, x, z, &q).unwrap();
    println!("  z = {z:.3}: strip {a:.10} vs semicircle {b:.10}");

    println!("\ninversion law: -Phi^d(x,z) = z^(-2) Phi^(1-d)(x,-1/z)");
    let z = C64::new(0.2, 3.0);
    let lhs = -phi_inf(0, x, z, &q).unwrap();
    let rhs = phi_inf(1, x, -1.0 / z, &q).unwrap() / (z * z);
    println!("  residual {:.2e}", (lhs - rhs).norm());

    println!("\nevaluation inside a word cell of the partition");
    let w = CFWord::new(vec![1, -1]).unwrap();
    let z = phi_apply(&w, C64::new(0.1, 0.6));
    let v = phi_strip(0, x, z, &q).unwrap();
    let bound = 20.0 * PI * PI / z.im.powi(3);
    println!("  z = {z:.6} (im {:.4}): Phi_strip = {v:.8}", z.im);
    println!("  |Phi| = {:.4e} <= 20 pi^2 / im^3 = {:.4e}", v.norm(), bound);

    println!("\ncontinuity across the roof of the cell of zero");
    let re: f64 = 0.3;
    let circ = (1.0 - re * re).sqrt();
    let above = phi_strip(0, x, C64::new(re, circ + 1e-4), &q).unwrap();
    let below = phi_strip(0, x, C64::new(re, circ - 1e-4), &q).unwrap();
    println!("  two-sided values differ by {:.2e} across the arc", (above - below).norm());
}
