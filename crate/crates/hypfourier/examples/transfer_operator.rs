//! The Perron-Frobenius-Ruelle operator of the even Gauss map and its fixed
//! relations with the biorthogonal system.
//!
//!     cargo run --release --example transfer_operator

use hypfourier::biortho::BiorthoEvaluator;
use hypfourier::faber::FaberBasis;
use hypfourier::transfer::{
    contraction_check, fixed_relation_residual, transfer_iterate_one, DEFAULT_NODES,
};
use std::f64::consts::PI;
use std::sync::Arc;

fn main() {
    println!("iterates of T_1 on the constant function");
    for n in 1..=3usize {
        let g = transfer_iterate_one(n, DEFAULT_NODES, 300).unwrap();
        println!(
            "  N = {n}: T^N[1](0) = {:.12}, T^N[1](1) = {:.12}, int = {:.10}",
            g.value_at_zero.re,
            g.values.last().unwrap().re,
            g.integral().re
        );
    }
    println!("  exact T_1[1](0) = pi^2/12 = {:.12}", PI * PI / 12.0);

    println!("\ncontraction ratio T^N[1](0) / T^(N-1)[1](0) <= pi^2/4 - 1 = {:.6}", PI * PI / 4.0 - 1.0);
    for n in [2usize, 3] {
        println!("  N = {n}: ratio = {:.6}", contraction_check(n, 129, 200).unwrap());
    }

    println!("\nfixed relations with the biorthogonal system");
    let ev = BiorthoEvaluator::new(Arc::new(FaberBasis::new(6).unwrap()));
    let r0 = fixed_relation_residual(&ev, 0, 65, 400).unwrap();
    println!("  max |(I + T_1)[2 H_0] - 1|            = {r0:.2e}");
    let r1 = fixed_relation_residual(&ev, 1, 65, 400).unwrap();
    println!("  max |(I +- T_1)[H_1^pm] - e^(i pi x)| = {r1:.2e}");
    let r2 = fixed_relation_residual(&ev, -2, 65, 400).unwrap();
    println!("  same for n = -2                       = {r2:.2e}");
}
