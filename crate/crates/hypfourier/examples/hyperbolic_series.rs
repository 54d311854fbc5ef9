//! Hyperbolic Fourier analysis and synthesis, and the conjugate series.
//!
//!     cargo run --release --example hyperbolic_series

use hypfourier::biortho::BiorthoEvaluator;
use hypfourier::faber::FaberBasis;
use hypfourier::hfs::{analyze, conj_analyze, conj_synthesize, synthesize, Support, TestFunction};
use hypfourier::theta::C64;
use std::f64::consts::PI;
use std::sync::Arc;

fn bump() -> TestFunction {
    TestFunction::new(
        |t| {
            if t <= 1.0 || t >= 2.0 {
                C64::new(0.0, 0.0)
            } else {
                C64::new((-1.0 / ((t - 1.0) * (2.0 - t))).exp(), 0.0)
            }
        },
        Support::Interval(1.0, 2.0),
        1.0,
    )
}

fn main() {
    let ev = BiorthoEvaluator::new(Arc::new(FaberBasis::new(8).unwrap()));

    println!("periodic functions reduce to classical Fourier series");
    let f = TestFunction::new(|x| (C64::new(0.0, PI * x)).exp(), Support::Periodic2, 1.0);
    let c = analyze(&ev, &f, 3).unwrap();
    for n in -3i64..=3 {
        println!("  h_{n:>2} = {:.8}", c.h(n));
    }
    let x = 0.4;
    let s = synthesize(&c, x).unwrap();
    println!("  synthesis at {x}: {s:.10} vs e^(i pi x) = {:.10}", (C64::new(0.0, PI * x)).exp());

    println!("\nconjugate series of a smooth bump on [1,2]");
    let phi = bump();
    for n_max in [4usize, 8] {
        let cc = conj_analyze(&phi, n_max).unwrap();
        let mut worst = 0.0f64;
        for &t in &[1.2, 1.5] {
            let got = conj_synthesize(&ev, &cc, t).unwrap();
            worst = worst.max((got - phi.at(t)).norm());
        }
        println!("  N = {n_max:>2}: max reconstruction error {worst:.2e}");
    }

    println!("\nPoisson kernel through its explicit conjugate coefficients");
    let (x0, y0, t) = (0.3, 1.5, 0.2);
    let mut c = hypfourier::hfs::HFSCoeffs::zero(10);
    c.set_h(0, C64::new(1.0, 0.0));
    for n in 1..=10i64 {
        let nf = n as f64;
        c.set_h(n, (-PI * nf * C64::new(y0, x0)).exp());
        c.set_h(-n, (-PI * nf * C64::new(y0, -x0)).exp());
        c.set_m(n, (-PI * nf / C64::new(y0, x0)).exp());
        c.set_m(-n, (-PI * nf / C64::new(y0, -x0)).exp());
    }
    let got = conj_synthesize(&ev, &c, t).unwrap();
    let want = (1.0 / PI) * y0 / ((t - x0) * (t - x0) + y0 * y0);
    println!("  P_z({t}) = {want:.10}; synthesized {got:.10}");
}
