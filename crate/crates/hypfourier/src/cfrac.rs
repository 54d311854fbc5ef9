//! Even-integer continued fractions and the two partitions of the upper
//! half-plane they generate.
//!
//! A word (n_N, ..., n_1) of nonzero integers names the Moebius map
//!
//!   phi_{n_N,...,n_1}(z) = 1/(2 n_N - 1/(2 n_{N-1} - ... - 1/(2 n_1 - z))),
//!
//! an element of the theta subgroup. Convergents follow the matrix recursion
//! p_k = 2 n_k p_{k-1} - p_{k-2}, q_k = 2 n_k q_{k-1} - q_{k-2} seeded with
//! p_{-1} = 1, p_0 = 0, q_{-1} = 0, q_0 = 1, indexed from the innermost
//! entry n_1, and phi(z) = (z p_{N-1} + q_{N-1}) / (z p_N + q_N).
//!
//! The real even Gauss map sends x to the even-fractional part of -1/x; its
//! complex analogue acts on the strip |Re z| <= 1 and drives both the
//! classification of half-plane points into even-rational cells and the
//! analytic continuation of the generating functions.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::theta::C64;

/// Finite word of nonzero integers (n_N, ..., n_1); `entries[0]` is the
/// outermost map index n_N. The empty word acts as the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct CFWord {
    pub entries: Vec<i64>,
}

impl CFWord {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if entries.iter().any(|&n| n == 0) {
            return Err(Error::InvalidInput("word entries must be nonzero".into()));
        }
        Ok(CFWord { entries })
    }

    pub fn identity() -> Self {
        CFWord { entries: vec![] }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// sigma = sign of the innermost entry n_1.
    pub fn sigma(&self) -> i64 {
        self.entries.last().map(|n| n.signum()).unwrap_or(0)
    }
}

/// Convergent integers p_k, q_k for k = -1..N.
#[derive(Debug, Clone)]
pub struct ConvergentPair {
    p: Vec<BigInt>,
    q: Vec<BigInt>,
}

impl ConvergentPair {
    pub fn len(&self) -> usize {
        self.p.len() - 2
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// p_k for k in -1..=N.
    pub fn p(&self, k: i64) -> &BigInt {
        &self.p[(k + 1) as usize]
    }

    pub fn q(&self, k: i64) -> &BigInt {
        &self.q[(k + 1) as usize]
    }
}

/// Convergents of a word, indexed from the innermost entry.
pub fn convergents(word: &CFWord) -> ConvergentPair {
    let n = word.len();
    let mut p = Vec::with_capacity(n + 2);
    let mut q = Vec::with_capacity(n + 2);
    p.push(BigInt::from(1));
    p.push(BigInt::from(0));
    q.push(BigInt::from(0));
    q.push(BigInt::from(1));
    for k in 1..=n {
        // k-th recursion entry is n_k, the k-th from the inner end
        let nk = BigInt::from(2 * word.entries[n - k]);
        let pk = &nk * &p[k] - &p[k - 1];
        let qk = &nk * &q[k] - &q[k - 1];
        p.push(pk);
        q.push(qk);
    }
    ConvergentPair { p, q }
}

/// phi_word(z) for complex z via the convergent integers.
pub fn phi_apply(word: &CFWord, z: C64) -> C64 {
    if word.is_empty() {
        return z;
    }
    let c = convergents(word);
    let n = word.len() as i64;
    let pn1 = c.p(n - 1).to_f64().unwrap();
    let qn1 = c.q(n - 1).to_f64().unwrap();
    let pn = c.p(n).to_f64().unwrap();
    let qn = c.q(n).to_f64().unwrap();
    (z * pn1 + qn1) / (z * pn + qn)
}

/// phi_word on an exact rational argument.
pub fn phi_apply_rational(word: &CFWord, z: &BigRational) -> BigRational {
    if word.is_empty() {
        return z.clone();
    }
    let c = convergents(word);
    let n = word.len() as i64;
    let num = z * BigRational::from_integer(c.p(n - 1).clone())
        + BigRational::from_integer(c.q(n - 1).clone());
    let den =
        z * BigRational::from_integer(c.p(n).clone()) + BigRational::from_integer(c.q(n).clone());
    num / den
}

/// Even integer part per the half-open interval convention
/// R = (-1,1) u [2m-1, 2m+1) u (-2m-1, -2m+1]: the value is
/// sign(x) * 2 * floor((1+|x|)/2).
pub fn even_int_part(x: f64) -> i64 {
    let e = 2.0 * ((1.0 + x.abs()) / 2.0).floor() * x.signum();
    e as i64
}

/// (even integer part, even fractional part) of a real number;
/// the fractional part lies in [-1, 1].
pub fn even_parts(x: f64) -> (i64, f64) {
    let e = even_int_part(x);
    (e, x - e as f64)
}

/// Exact even integer part of a rational number.
pub fn even_int_part_rational(x: &BigRational) -> BigInt {
    if x.is_zero() {
        return BigInt::zero();
    }
    let one = BigRational::from_integer(BigInt::from(1));
    let half = (one + x.abs()) / BigRational::from_integer(BigInt::from(2));
    let f = half.floor().to_integer() * BigInt::from(2);
    if x.is_negative() {
        -f
    } else {
        f
    }
}

/// The unique word with phi_word(0) = p/q for an even rational p/q in
/// (-1,1) minus 0, obtained by exact iteration of the real even Gauss map:
/// 2 n_{N-k} is the even integer part of 1/G2^k(p/q).
pub fn even_rational_decompose(p: i64, q: i64) -> Result<CFWord> {
    if p == 0 || q == 0 {
        return Err(Error::InvalidInput("p and q must be nonzero".into()));
    }
    let g = gcd_i64(p, q);
    if g != 1 {
        return Err(Error::InvalidInput(format!("gcd({p},{q}) = {g} != 1")));
    }
    if (p % 2 != 0) && (q % 2 != 0) {
        return Err(Error::InvalidInput(format!("{p}/{q} is not an even rational")));
    }
    if p.abs() >= q.abs() {
        return Err(Error::OutsideDomain(format!("{p}/{q} not in (-1,1)")));
    }
    let mut num = BigInt::from(p);
    let mut den = BigInt::from(q);
    // normalize sign into the numerator
    if den.is_negative() {
        num = -num;
        den = -den;
    }
    let cap = 2 * (p.unsigned_abs() + q.unsigned_abs()) as usize + 8;
    let mut entries = Vec::new();
    while !num.is_zero() {
        // 1/x = den/num; its even part 2n, then G2(x) = (2n*num - den)/num.
        let inv = BigRational::new(den.clone(), num.clone());
        let e = even_int_part_rational(&inv);
        debug_assert!(!e.is_zero());
        entries.push(
            (&e / BigInt::from(2))
                .to_i64()
                .ok_or_else(|| Error::InvalidInput("word entry overflow".into()))?,
        );
        let r = &e * &num - &den;
        den = num;
        num = r;
        // keep denominators positive
        if den.is_negative() {
            den = -den;
            num = -num;
        }
        if entries.len() > cap {
            return Err(Error::InvalidInput("decomposition did not terminate".into()));
        }
    }
    CFWord::new(entries)
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// One step of the complex even Gauss map on the strip |Re z| <= 1:
/// G2(z) = -1/z - even_int_part(Re(-1/z)); the returned index
/// j = -even_int_part(Re(-1/z))/2 vanishes exactly on the fundamental set.
pub fn gauss_map_h(z: C64) -> Result<(C64, i64)> {
    if !(z.im > 0.0) {
        return Err(Error::NotUpperHalfPlane(z.im));
    }
    if z.re.abs() > 1.0 + 1e-12 {
        return Err(Error::OutsideDomain(format!(
            "gauss map needs |Re z| <= 1, got {z}"
        )));
    }
    let w = -1.0 / z;
    let e = even_int_part(w.re);
    Ok((C64::new(w.re - e as f64, w.im), -e / 2))
}

/// 2x2 integer Moebius matrix (a b; c d) acting as z -> (az+b)/(cz+d).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat2 {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl Mat2 {
    pub fn identity() -> Self {
        Mat2 {
            a: BigInt::from(1),
            b: BigInt::from(0),
            c: BigInt::from(0),
            d: BigInt::from(1),
        }
    }

    /// Matrix of one Gauss step w -> -1/w + 2j, i.e. (2j w - 1)/w.
    pub fn gauss_step(j: i64) -> Self {
        Mat2 {
            a: BigInt::from(2 * j),
            b: BigInt::from(-1),
            c: BigInt::from(1),
            d: BigInt::from(0),
        }
    }

    pub fn mul(&self, rhs: &Mat2) -> Mat2 {
        Mat2 {
            a: &self.a * &rhs.a + &self.b * &rhs.c,
            b: &self.a * &rhs.b + &self.b * &rhs.d,
            c: &self.c * &rhs.a + &self.d * &rhs.c,
            d: &self.c * &rhs.b + &self.d * &rhs.d,
        }
    }

    pub fn apply(&self, z: C64) -> C64 {
        let a = self.a.to_f64().unwrap();
        let b = self.b.to_f64().unwrap();
        let c = self.c.to_f64().unwrap();
        let d = self.d.to_f64().unwrap();
        (z * a + b) / (z * c + d)
    }

    /// Derivative det/(cz+d)^2 of the Moebius action; the matrices built
    /// here are unimodular so det = 1.
    pub fn derivative(&self, z: C64) -> C64 {
        let c = self.c.to_f64().unwrap();
        let d = self.d.to_f64().unwrap();
        let den = z * c + d;
        1.0 / (den * den)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CellKind {
    /// The exterior neighborhood of infinity, H minus all disks 2m + closed D.
    EInf,
    /// An even-rational cell 2 n_0 + roofed E^word (empty word = the cell of 2 n_0).
    EWord,
}

/// Classification of a half-plane point in the even-rational partition.
#[derive(Debug, Clone)]
pub struct PartitionCell {
    pub kind: CellKind,
    /// The even shift 2 n_0 moving z into the strip (0 for EInf).
    pub shift: i64,
    pub word: CFWord,
    /// Number of Gauss steps to exit into the exterior set; 0 iff EInf,
    /// 1 + word length otherwise.
    pub height: usize,
}

/// One recorded step of the complex Gauss orbit: the iterate after the step
/// and the composite Moebius matrix mapping the starting point to it.
#[derive(Debug, Clone)]
pub struct GaussStep {
    pub iterate: C64,
    pub shift_index: i64,
    pub matrix: Mat2,
}

/// Classify a point of the upper half-plane into the even-rational partition
/// and record the Gauss orbit that exits into the exterior set.
///
/// A point within `boundary_eps` of a cell roof (any iterate within that
/// distance of the unit circle) is reported as ambiguous rather than guessed.
pub fn classify_with_orbit(
    z: C64,
    boundary_eps: f64,
) -> Result<(PartitionCell, Vec<GaussStep>)> {
    if !(z.im > 0.0) {
        return Err(Error::NotUpperHalfPlane(z.im));
    }
    let shift = even_int_part(z.re);
    let mut w = C64::new(z.re - shift as f64, z.im);
    if (w.norm() - 1.0).abs() < boundary_eps {
        return Err(Error::BoundaryAmbiguous(format!(
            "point {z} within {boundary_eps} of a cell roof"
        )));
    }
    if w.norm() > 1.0 {
        return Ok((
            PartitionCell {
                kind: CellKind::EInf,
                shift: 0,
                word: CFWord::identity(),
                height: 0,
            },
            vec![],
        ));
    }
    let cap = 2 + (1.0 / (2.0 * z.im)).ceil() as usize;
    let mut steps: Vec<GaussStep> = Vec::new();
    let mut mat = Mat2::identity();
    for _ in 0..cap {
        let (next, j) = gauss_map_h(w)?;
        mat = Mat2::gauss_step(j).mul(&mat);
        w = next;
        steps.push(GaussStep {
            iterate: w,
            shift_index: j,
            matrix: mat.clone(),
        });
        if (w.norm() - 1.0).abs() < boundary_eps {
            return Err(Error::BoundaryAmbiguous(format!(
                "iterate of {z} within {boundary_eps} of a cell roof"
            )));
        }
        if w.norm() > 1.0 {
            let height = steps.len();
            let word = CFWord::new(
                steps[..height - 1].iter().map(|s| s.shift_index).collect(),
            )?;
            return Ok((
                PartitionCell {
                    kind: CellKind::EWord,
                    shift,
                    word,
                    height,
                },
                steps,
            ));
        }
    }
    Err(Error::BoundaryAmbiguous(format!(
        "orbit of {z} did not exit within the height cap {cap}"
    )))
}

/// Classification only; see [`classify_with_orbit`].
pub fn classify_point(z: C64, boundary_eps: f64) -> Result<PartitionCell> {
    classify_with_orbit(z, boundary_eps).map(|(c, _)| c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn word(v: &[i64]) -> CFWord {
        CFWord::new(v.to_vec()).unwrap()
    }

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    /// Brute-force evaluation of the nested fraction, innermost first.
    fn phi_brute(w: &CFWord, z: C64) -> C64 {
        let mut acc = z;
        for &n in w.entries.iter().rev() {
            acc = 1.0 / (2.0 * n as f64 - acc);
        }
        acc
    }

    #[test]
    fn even_parts_examples() {
        assert_eq!(even_parts(0.3), (0, 0.3));
        let (e, f) = even_parts(8.0 / 3.0);
        assert_eq!(e, 2);
        assert!((f - 2.0 / 3.0).abs() < 1e-15);
        // -2n + sign(n) for n = 3
        assert_eq!(even_parts(-5.0), (-6, 1.0));
        // half-open convention at odd integers
        assert_eq!(even_int_part(1.0), 2);
        assert_eq!(even_int_part(-1.0), -2);
        assert_eq!(even_int_part(3.0), 4);
        assert_eq!(even_int_part(-3.0), -4);
    }

    #[test]
    fn phi_simple_values() {
        let w = word(&[1]);
        let v = phi_apply_rational(&w, &BigRational::zero());
        assert_eq!(v, rat(1, 2));
        let w = word(&[1, -1, -1]);
        let v = phi_apply_rational(&w, &BigRational::zero());
        assert_eq!(v, rat(3, 8));
        // against the brute-force nested fraction at a complex point
        let z = C64::new(0.37, 0.61);
        let a = phi_apply(&w, z);
        let b = phi_brute(&w, z);
        assert!((a - b).norm() < 1e-14);
    }

    #[test]
    fn convergent_determinant() {
        let w = word(&[1, -1, -1]);
        let c = convergents(&w);
        for k in 0..=3i64 {
            let det = c.p(k - 1) * c.q(k) - c.p(k) * c.q(k - 1);
            assert!(det.is_one(), "k = {k}");
        }
    }

    #[test]
    fn convergent_inequalities_random_words() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10_000 {
            let len = rng.gen_range(1..=12usize);
            let entries: Vec<i64> = (0..len)
                .map(|_| {
                    let mut n = 0;
                    while n == 0 {
                        n = rng.gen_range(-6..=6);
                    }
                    n
                })
                .collect();
            let w = word(&entries);
            let c = convergents(&w);
            for k in 1..=len as i64 {
                assert!(c.q(k).abs() > c.p(k).abs());
                assert!(c.q(k).abs() > c.q(k - 1).abs());
                assert!(c.p(k).abs() > c.p(k - 1).abs() || k == 1);
                let det = c.p(k - 1) * c.q(k) - c.p(k) * c.q(k - 1);
                assert!(det.is_one());
            }
        }
    }

    #[test]
    fn decompose_examples() {
        assert_eq!(even_rational_decompose(3, 8).unwrap(), word(&[1, -1, -1]));
        assert_eq!(even_rational_decompose(1, 10).unwrap(), word(&[5]));
        assert_eq!(even_rational_decompose(-2, 3).unwrap(), word(&[-1, -1]));
        assert!(even_rational_decompose(1, 3).is_err()); // odd rational
        assert!(even_rational_decompose(2, 4).is_err()); // not coprime
    }

    #[test]
    fn decompose_roundtrip_all_small_denominators() {
        for q in 2..=200i64 {
            for p in -(q - 1)..=(q - 1) {
                if p == 0 || gcd_i64(p, q) != 1 || (p % 2 != 0 && q % 2 != 0) {
                    continue;
                }
                let w = even_rational_decompose(p, q).unwrap();
                let v = phi_apply_rational(&w, &BigRational::zero());
                assert_eq!(v, rat(p, q), "{p}/{q}");
            }
        }
    }

    #[test]
    fn roof_diameter_bound() {
        // |phi(inf) - phi(sigma)| = 1/(|p_N| (|q_N| - sigma_n p_N ...)) <= 1/N
        // exactly, for all words of length <= 8 with small entries.
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..2000 {
            let len = rng.gen_range(1..=8usize);
            let entries: Vec<i64> = (0..len)
                .map(|_| {
                    let mut n = 0;
                    while n == 0 {
                        n = rng.gen_range(-5..=5);
                    }
                    n
                })
                .collect();
            let w = word(&entries);
            let c = convergents(&w);
            let n = len as i64;
            // phi(inf) = p_{N-1}/p_N, phi(sigma) = (sigma p_{N-1}+q_{N-1})/(sigma p_N+q_N)
            let sigma = BigInt::from(w.sigma());
            let phi_inf = BigRational::new(c.p(n - 1).clone(), c.p(n).clone());
            let phi_sigma = BigRational::new(
                &sigma * c.p(n - 1) + c.q(n - 1),
                &sigma * c.p(n) + c.q(n),
            );
            let diam = (phi_inf - phi_sigma).abs();
            // exact identity: diam = 1 / (|p_N| |sigma p_N + q_N|)
            let exact = BigRational::new(
                BigInt::one(),
                c.p(n).abs() * (&sigma * c.p(n) + c.q(n)).abs(),
            );
            assert_eq!(diam, exact);
            let bound = BigRational::new(BigInt::one(), BigInt::from(len as i64));
            assert!(diam <= bound, "word {entries:?}");
        }
    }

    #[test]
    fn gauss_map_fixed_inversion_and_expansion() {
        let (g, j) = gauss_map_h(C64::new(0.0, 2.0)).unwrap();
        assert!((g - C64::new(0.0, 0.5)).norm() < 1e-15);
        assert_eq!(j, 0);
        let z = C64::new(0.4, 0.1);
        let (g, _) = gauss_map_h(z).unwrap();
        let lower = z.im / (0.5 + (0.25 - z.im * z.im).sqrt());
        assert!(g.im >= lower - 1e-15);
        // expansion property on the unit half-disk
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..500 {
            let w = C64::new(rng.gen_range(-0.9..0.9), rng.gen_range(0.01..0.9));
            if w.norm() >= 1.0 {
                continue;
            }
            let (g, _) = gauss_map_h(w).unwrap();
            assert!(g.im >= w.im - 1e-15);
        }
    }

    #[test]
    fn gauss_map_inverts_phi() {
        let w0 = C64::new(0.2, 0.5);
        let z = phi_apply(&word(&[3]), w0);
        let (g, j) = gauss_map_h(z).unwrap();
        assert!((g - w0).norm() < 1e-14);
        assert_eq!(j, 3);
    }

    #[test]
    fn classify_examples() {
        let c = classify_point(C64::new(0.1, 3.0), 1e-9).unwrap();
        assert_eq!(c.kind, CellKind::EInf);
        assert_eq!(c.height, 0);

        // in the unit disk, one inversion exits: the cell of 0, empty word
        let z = C64::new(0.45, 0.6);
        let c = classify_point(z, 1e-9).unwrap();
        assert_eq!(c.kind, CellKind::EWord);
        assert!(c.word.is_empty());
        assert_eq!(c.height, 1);
        // membership oracle: -1/z outside all shifted closed disks
        let w = -1.0 / z;
        for m in -3i64..=3 {
            assert!((w - C64::new(2.0 * m as f64, 0.0)).norm() > 1.0);
        }

        // forward-constructed word cell
        let inner = C64::new(0.1, 0.6);
        let z = phi_apply(&word(&[1, -1]), inner);
        let c = classify_point(z, 1e-9).unwrap();
        assert_eq!(c.word, word(&[1, -1]));
        assert_eq!(c.height, 3);
    }

    #[test]
    fn classify_matches_membership_oracle() {
        // For random z the returned cell contains z under the direct
        // membership test built from the word's Moebius map.
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let mut checked = 0;
        for _ in 0..2000 {
            if checked >= 1000 {
                break;
            }
            let z = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(0.02..1.4));
            let cell = match classify_point(z, 1e-9) {
                Ok(c) => c,
                Err(_) => continue,
            };
            checked += 1;
            let zs = z - C64::new(cell.shift as f64, 0.0);
            match cell.kind {
                CellKind::EInf => {
                    let s = z; // EInf is unshifted
                    for m in -4i64..=4 {
                        assert!(
                            (s - C64::new(2.0 * m as f64, 0.0)).norm() > 1.0,
                            "EInf point {z} inside disk at {m}"
                        );
                    }
                }
                CellKind::EWord => {
                    // z' must lie in phi_word(closed half-disk): psi(z') in D,
                    // and its image under one more inversion must exit.
                    let c = convergents(&cell.word);
                    let n = cell.word.len() as i64;
                    // psi = inverse of phi: matrix (q_{N-1}, -q_N ... ) from
                    // inverting (p_{N-1} q_{N-1}; p_N q_N): inverse = (q_N, -q_{N-1}; -p_N, p_{N-1}) scaled by det=...
                    // (det of phi matrix written as (a b; c d) = (p_{N-1}, q_{N-1}; p_N, q_N)) hmm det = p_{N-1} q_N - q_{N-1} p_N = 1.
                    let a = c.q(n).to_f64().unwrap();
                    let b = -c.q(n - 1).to_f64().unwrap();
                    let cc = -c.p(n).to_f64().unwrap();
                    let d = c.p(n - 1).to_f64().unwrap();
                    let u = if n == 0 {
                        zs
                    } else {
                        (zs * a + b) / (zs * cc + d)
                    };
                    assert!(u.norm() <= 1.0 + 1e-9, "psi image off the half-disk: {u}");
                    // one more inversion exits into the exterior set
                    let v = -1.0 / u;
                    let (_, frac) = even_parts(v.re);
                    let vs = C64::new(frac, v.im);
                    assert!(vs.norm() > 1.0 - 1e-9, "inner point did not exit: {vs}");
                }
            }
        }
        assert!(checked >= 1000);
    }

    #[test]
    fn classify_boundary_is_an_error() {
        // a point on the unit circle is ambiguous by construction
        let z = C64::new(0.6, 0.8);
        assert!(matches!(
            classify_point(z, 1e-9),
            Err(Error::BoundaryAmbiguous(_))
        ));
    }

    #[test]
    fn orbit_matrices_match_iterates() {
        let z = phi_apply(&word(&[2, -1, 3]), C64::new(-0.3, 0.55));
        let (cell, steps) = classify_with_orbit(z, 1e-9).unwrap();
        assert_eq!(cell.word, word(&[2, -1, 3]));
        for s in &steps {
            let via_matrix = s.matrix.apply(z);
            assert!((via_matrix - s.iterate).norm() < 1e-11);
        }
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn even_parts_reassemble(x in -1e6f64..1e6) {
                let (e, f) = even_parts(x);
                prop_assert_eq!(e % 2, 0);
                prop_assert!((-1.0..=1.0).contains(&f));
                prop_assert!((x - (e as f64 + f)).abs() <= 1e-9 * x.abs().max(1.0));
            }

            #[test]
            fn decompose_inverts_evaluation(
                p_raw in 1i64..5000,
                q_raw in 2i64..5000,
                negative in proptest::bool::ANY,
            ) {
                // build a valid even rational in (-1,1) from the raw pair:
                // reduce to lowest terms, and if both parts come out odd,
                // replace the numerator by q - p (even, coprime, still < q)
                let mut p = p_raw % q_raw;
                if p == 0 {
                    p = 1;
                }
                let g = super::gcd_i64(p, q_raw);
                let (mut p, q) = (p / g, q_raw / g);
                prop_assume!(q > 1);
                if p % 2 != 0 && q % 2 != 0 {
                    p = q - p;
                }
                if negative {
                    p = -p;
                }
                let w = even_rational_decompose(p, q).unwrap();
                let v = phi_apply_rational(&w, &BigRational::zero());
                prop_assert_eq!(v, rat(p, q));
            }

            #[test]
            fn convergents_stay_unimodular(entries in proptest::collection::vec(
                (1i64..=7, proptest::bool::ANY), 1..12
            )) {
                let signed: Vec<i64> = entries
                    .iter()
                    .map(|&(n, neg)| if neg { -n } else { n })
                    .collect();
                let w = CFWord::new(signed).unwrap();
                let c = convergents(&w);
                for k in 1..=w.len() as i64 {
                    let det = c.p(k - 1) * c.q(k) - c.p(k) * c.q(k - 1);
                    prop_assert!(det.is_one());
                    prop_assert!(c.q(k).abs() > c.p(k).abs());
                }
            }

            #[test]
            fn gauss_map_never_shrinks_in_the_disk(
                re in -0.85f64..0.85,
                im in 0.02f64..0.95,
            ) {
                let z = C64::new(re, im);
                prop_assume!(z.norm() < 0.999);
                let (g, _) = gauss_map_h(z).unwrap();
                prop_assert!(g.im >= z.im - 1e-12);
                prop_assert!(g.re.abs() <= 1.0 + 1e-12);
            }
        }
    }
}
