//! Exact Schwarz triangle polynomials and their generating identities.
//!
//!     cargo run --release --example triangle_polynomials

use hypfourier::faber::FaberBasis;
use hypfourier::theta::{lambda_with_prime, C64};
use hypfourier::EvalConfig;
use num_bigint::BigInt;
use num_rational::BigRational;

fn main() {
    let basis = FaberBasis::new(12).unwrap();

    println!("first polynomials (exact coefficients s_{{n,k}}, k = 1..n)");
    for n in 1..=4usize {
        let p = basis.schwarz_poly(n).unwrap();
        let coeffs: Vec<String> = (1..=n).map(|k| p.coeff(k).to_string()).collect();
        println!("  S_{n}: {}", coeffs.join(", "));
    }

    println!("\nvalues at 1 follow the four-squares counts: S_n(1) = (1-(-1)^n) r_4(n)");
    let one = BigRational::from_integer(BigInt::from(1));
    for n in 1..=8usize {
        let v = basis.schwarz_poly(n).unwrap().eval_rational(&one);
        println!("  S_{n}(1) = {v}, r_4({n}) = {}", basis.table.r4(n).unwrap());
    }

    println!("\nholomorphic remainder at the origin: Delta_n(0) = (-1)^n r_4(n)");
    for n in 1..=6usize {
        println!(
            "  Delta_{n}(0) = {} (from the exact series: {})",
            basis.delta_n_at_zero(n).unwrap(),
            basis.delta_at_zero_from_series(n).unwrap()
        );
    }

    // generating law: sum_n S_n(1/z) e^{i pi n y} = lambda'(y) / (i pi (z - lambda(y)))
    println!("\ngenerating law at z = 2, y = 0.3 + 2i");
    let cfg = EvalConfig::default();
    let y = C64::new(0.3, 2.0);
    let (ly, lpy) = lambda_with_prime(y, &cfg).unwrap();
    let z = C64::new(2.0, 0.0);
    let mut sum = C64::new(0.0, 0.0);
    for n in 1..=12 {
        sum += basis.eval_s_at(n, 1.0 / z).unwrap()
            * (C64::new(0.0, 1.0) * std::f64::consts::PI * n as f64 * y).exp();
    }
    let rhs = lpy / (C64::new(0.0, std::f64::consts::PI) * (z - ly));
    println!("  partial sum = {sum:.12}");
    println!("  closed form = {rhs:.12}");
    println!("  difference  = {:.2e}", (sum - rhs).norm());
}
