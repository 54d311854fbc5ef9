//! Theta functions, the modular function lambda, and their identities.
//!
//!     cargo run --release --example modular_identities

use hypfourier::theta::{big_theta_triple, lambda, lambda_prime, C64};
use hypfourier::hypergeom::{delta_ratio, schwarz_tau};
use hypfourier::EvalConfig;

fn main() {
    let cfg = EvalConfig::default();

    println!("special values");
    let li = lambda(C64::new(0.0, 1.0), &cfg).unwrap();
    println!("  lambda(i)   = {:.15}  (exact: 1/2)", li.re);
    let l2i = lambda(C64::new(0.0, 2.0), &cfg).unwrap();
    println!(
        "  lambda(2i)  = {:.15}  (exact: 17 - 12 sqrt 2 = {:.15})",
        l2i.re,
        17.0 - 12.0 * 2.0f64.sqrt()
    );
    let tau = schwarz_tau(C64::new(0.5, 0.0)).unwrap();
    println!("  tau(1/2)    = {tau:.15}  (exact: i)");
    println!("  Delta(1) Delta(1) = {:.15}  (exact: 1)", delta_ratio(1.0).unwrap().powi(2));

    println!("\nJacobi identity Theta3^4 = Theta2^4 + Theta4^4 on sample points");
    for &z in &[C64::new(0.3, 0.8), C64::new(-1.2, 0.15), C64::new(0.0, 4.0)] {
        let (t2, t3, t4) = big_theta_triple(z, &cfg).unwrap();
        let res = (t3.powu(4) - t2.powu(4) - t4.powu(4)).norm();
        let scale = t3.norm().powi(4).max(t2.norm().powi(4)).max(t4.norm().powi(4));
        println!("  z = {z:>20}:  residual {:.2e} (relative)", res / scale);
    }

    println!("\nfunctional equations of lambda");
    let z = C64::new(0.4, 1.3);
    let a = lambda(z, &cfg).unwrap();
    let b = lambda(-1.0 / z, &cfg).unwrap();
    println!("  lambda(z) + lambda(-1/z) - 1 = {:.2e}", (a + b - 1.0).norm());
    let lp = lambda_prime(z, &cfg).unwrap();
    println!("  lambda'({z}) = {lp:.12}");

    println!("\ndecay sandwich e^(-pi y) < lambda(iy) < 16 e^(-pi y)");
    for &y in &[0.5, 1.0, 2.0, 4.0] {
        let l = lambda(C64::new(0.0, y), &cfg).unwrap().re;
        let lo = (-std::f64::consts::PI * y).exp();
        println!(
            "  y = {y}: {:.3e} < {:.3e} < {:.3e}",
            lo,
            l,
            16.0 * lo
        );
    }
}
