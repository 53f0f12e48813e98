//! Exact integer and rational scalar arithmetic.
//!
//! `Int` and `Rat` are the arbitrary-precision scalars used everywhere in the
//! crate (re-exports of `num` types: sign-magnitude integers, and reduced
//! fractions with positive denominator).  On top of them this module provides
//! the number-theoretic helpers the solution families and the search need:
//!
//! * floor square root and a perfect-square test with a quadratic-residue
//!   fast path,
//! * p-adic valuation `nu_p` (with an explicit infinity for 0), base-p digit
//!   sums, and the factorial valuation `nu_p(n!) = (n - s_p(n)) / (p - 1)`,
//! * fundamental solutions of `u^2 - D*v^2 = 1` by the continued-fraction
//!   expansion of `sqrt(D)`, and iteration to the k-th solution.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::str::FromStr;

use crate::{Error, Result};

/// Arbitrary-precision signed integer (canonical zero, decimal round-trip).
pub type Int = BigInt;

/// Arbitrary-precision rational, always reduced with positive denominator.
pub type Rat = BigRational;

/// Shorthand for small constants.
pub fn int(n: i64) -> Int {
    Int::from(n)
}

/// Parses a decimal integer string (optional leading `-`).
pub fn parse_int(s: &str) -> Result<Int> {
    Int::from_str(s.trim()).map_err(|e| Error::Parse {
        pos: 0,
        msg: format!("invalid integer {s:?}: {e}"),
    })
}

/// Parses `"a"` or `"a/b"` into a reduced rational with positive denominator.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        None => Ok(Rat::from_integer(parse_int(s)?)),
        Some((num, den)) => {
            let num = parse_int(num)?;
            let den = parse_int(den)?;
            if den.is_zero() {
                return Err(Error::domain(format!("zero denominator in {s:?}")));
            }
            Ok(Rat::new(num, den))
        }
    }
}

/// Formats a rational as `"a"` or `"a/b"`, matching [`parse_rat`].
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Floor of the square root of a non-negative integer.
///
/// `isqrt(n)` is the unique `r >= 0` with `r^2 <= n < (r+1)^2`.
pub fn isqrt(n: &Int) -> Result<Int> {
    if n.is_negative() {
        return Err(Error::domain(format!("isqrt of negative {n}")));
    }
    Ok(n.sqrt())
}

/// Residue masks for the perfect-square fast path.  A square is a quadratic
/// residue mod 64, 63, 65 and 11; testing those rejects roughly 99% of
/// non-squares without a bigint square root.
struct SquareFilter {
    mod64: [bool; 64],
    mod63: [bool; 63],
    mod65: [bool; 65],
    mod11: [bool; 11],
}

fn square_filter() -> &'static SquareFilter {
    use std::sync::OnceLock;
    static FILTER: OnceLock<SquareFilter> = OnceLock::new();
    FILTER.get_or_init(|| {
        let mut f = SquareFilter {
            mod64: [false; 64],
            mod63: [false; 63],
            mod65: [false; 65],
            mod11: [false; 11],
        };
        for i in 0..64u64 {
            f.mod64[((i * i) % 64) as usize] = true;
        }
        for i in 0..63u64 {
            f.mod63[((i * i) % 63) as usize] = true;
        }
        for i in 0..65u64 {
            f.mod65[((i * i) % 65) as usize] = true;
        }
        for i in 0..11u64 {
            f.mod11[((i * i) % 11) as usize] = true;
        }
        f
    })
}

fn residue(n: &Int, m: u64) -> usize {
    let r = n.mod_floor(&Int::from(m));
    let (_, digits) = r.to_u64_digits();
    digits.first().copied().unwrap_or(0) as usize
}

/// Returns `Some(r)` with `r^2 = n`, `r >= 0`, when `n` is a perfect square.
pub fn perfect_sqrt(n: &Int) -> Option<Int> {
    if n.is_negative() {
        return None;
    }
    let f = square_filter();
    if !f.mod64[residue(n, 64)]
        || !f.mod63[residue(n, 63)]
        || !f.mod65[residue(n, 65)]
        || !f.mod11[residue(n, 11)]
    {
        return None;
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

/// Perfect-square test (residue filter mod 64/63/65/11, then one `isqrt`).
pub fn is_perfect_square(n: &Int) -> bool {
    perfect_sqrt(n).is_some()
}

/// Deterministic Miller-Rabin for `n < 2^64`; the same base set acts as a
/// strong probable-prime test above that, which is all the valuation helpers
/// need (they only validate that a caller-supplied modulus is prime).
pub fn is_prime(n: &Int) -> bool {
    if n < &int(2) {
        return false;
    }
    for p in [2i64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let p = int(p);
        if n == &p {
            return true;
        }
        if n.is_multiple_of(&p) {
            return false;
        }
    }
    // n - 1 = d * 2^s with d odd
    let one = Int::one();
    let n1 = n - &one;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    'witness: for a in [2i64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = int(a).modpow(&d, n);
        if x.is_one() || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&int(2), n);
            if x == n1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// p-adic valuation: `Finite(k)` with `p^k || n`, or `Infinite` for `n = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Valuation {
    Finite(u64),
    Infinite,
}

impl std::fmt::Display for Valuation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Valuation::Finite(k) => write!(f, "{k}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

impl Valuation {
    /// Finite value, or `None` for infinity.
    pub fn finite(self) -> Option<u64> {
        match self {
            Valuation::Finite(k) => Some(k),
            Valuation::Infinite => None,
        }
    }
}

fn require_prime(p: &Int) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::domain(format!("{p} is not prime")));
    }
    Ok(())
}

/// Largest `k` with `p^k | n`; `nu_p(0) = Infinite` by convention so that the
/// polynomial content valuation has a uniform zero case.
pub fn nu_p(n: &Int, p: &Int) -> Result<Valuation> {
    require_prime(p)?;
    if n.is_zero() {
        return Ok(Valuation::Infinite);
    }
    let mut k = 0u64;
    let mut m = n.abs();
    loop {
        let (q, r) = m.div_rem(p);
        if !r.is_zero() {
            return Ok(Valuation::Finite(k));
        }
        k += 1;
        m = q;
    }
}

/// Sum of the base-`p` digits of `n >= 0` (any base `p >= 2`, not just primes).
pub fn digit_sum(n: &Int, p: &Int) -> Result<Int> {
    if n.is_negative() {
        return Err(Error::domain(format!("digit_sum of negative {n}")));
    }
    if p < &int(2) {
        return Err(Error::domain(format!("digit_sum base {p} < 2")));
    }
    let mut s = Int::zero();
    let mut m = n.clone();
    while !m.is_zero() {
        let (q, r) = m.div_rem(p);
        s += r;
        m = q;
    }
    Ok(s)
}

/// `nu_p(n!)` by the floor sum `sum_i floor(n / p^i)`.
///
/// Equals `(n - s_p(n)) / (p - 1)` (Legendre's formula); the test suite pins
/// that identity against [`digit_sum`].
pub fn nu_p_factorial(n: &Int, p: &Int) -> Result<Int> {
    require_prime(p)?;
    if n.is_negative() {
        return Err(Error::domain(format!("factorial of negative {n}")));
    }
    let mut total = Int::zero();
    let mut pk = p.clone();
    while &pk <= n {
        total += n / &pk;
        pk *= p;
    }
    Ok(total)
}

/// A solution of the Pell equation `u^2 - D v^2 = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PellSolution {
    pub d: Int,
    pub u: Int,
    pub v: Int,
}

impl PellSolution {
    /// Validates `u^2 - D v^2 = 1`.
    pub fn new(d: Int, u: Int, v: Int) -> Result<Self> {
        let lhs = &u * &u - &d * &v * &v;
        if !lhs.is_one() {
            return Err(Error::domain(format!(
                "({u}, {v}) does not solve u^2 - {d} v^2 = 1"
            )));
        }
        Ok(PellSolution { d, u, v })
    }
}

/// Fundamental (least positive) solution of `u^2 - D v^2 = 1` for `D > 0`
/// not a perfect square, via the periodic continued fraction of `sqrt(D)`.
///
/// With period length `L`, the convergent `h_{L-1} / k_{L-1}` solves
/// `h^2 - D k^2 = (-1)^L`; for odd `L` the solution is squared to land on
/// the `+1` equation.  All arithmetic is exact.
pub fn pell_fundamental(d: &Int) -> Result<PellSolution> {
    if !d.is_positive() {
        return Err(Error::domain(format!("Pell parameter D = {d} must be > 0")));
    }
    let a0 = d.sqrt();
    if &(&a0 * &a0) == d {
        return Err(Error::domain(format!("Pell parameter D = {d} is a perfect square")));
    }
    // Continued fraction state: sqrt(D) = (sqrt(D) + m) / den.
    let mut m = Int::zero();
    let mut den = Int::one();
    let mut a = a0.clone();
    // Convergents h/k of the expansion.
    let (mut h_prev, mut h) = (Int::one(), a0.clone());
    let (mut k_prev, mut k) = (Int::zero(), Int::one());
    let two_a0 = &a0 * 2;
    loop {
        m = &den * &a - &m;
        den = (d - &m * &m) / &den;
        a = (&a0 + &m) / &den;
        let h_next = &a * &h + &h_prev;
        let k_next = &a * &k + &k_prev;
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
        if a == two_a0 {
            // Period complete: (h_prev, k_prev) is the last in-period convergent.
            let (u, v) = (h_prev.clone(), k_prev.clone());
            let norm = &u * &u - d * &v * &v;
            return if norm.is_one() {
                PellSolution::new(d.clone(), u, v)
            } else {
                // norm = -1 (odd period): square the unit.
                let u2 = &u * &u + d * &v * &v;
                let v2 = &u * &v * 2;
                PellSolution::new(d.clone(), u2, v2)
            };
        }
    }
}

/// k-th solution `(u + v sqrt(D))^k` from the fundamental one, `k >= 1`.
pub fn pell_iterate(fundamental: &PellSolution, k: u64) -> Result<PellSolution> {
    if k == 0 {
        return Err(Error::domain("Pell iterate index k must be >= 1"));
    }
    let d = &fundamental.d;
    let (mut u, mut v) = (fundamental.u.clone(), fundamental.v.clone());
    for _ in 1..k {
        let nu = &u * &fundamental.u + d * &v * &fundamental.v;
        let nv = &u * &fundamental.v + &v * &fundamental.u;
        u = nu;
        v = nv;
    }
    PellSolution::new(d.clone(), u, v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn isqrt_brackets() {
        assert_eq!(isqrt(&int(29_160_000)).unwrap(), int(5400));
        assert_eq!(isqrt(&int(29_159_999)).unwrap(), int(5399));
        assert_eq!(isqrt(&int(0)).unwrap(), int(0));
        assert_eq!(isqrt(&int(1)).unwrap(), int(1));
        assert!(isqrt(&int(-1)).is_err());
    }

    #[test]
    fn perfect_square_examples() {
        assert_eq!(perfect_sqrt(&int(38_564_100)), Some(int(6210)));
        assert!(is_perfect_square(&int(0)));
        assert!(is_perfect_square(&int(1)));
        assert!(!is_perfect_square(&int(2)));
        assert!(!is_perfect_square(&int(-4)));
        // every residue class gets exercised
        for n in 0i64..2000 {
            let expected = {
                let r = (n as f64).sqrt().round() as i64;
                r * r == n
            };
            assert_eq!(is_perfect_square(&int(n)), expected, "n = {n}");
        }
    }

    #[test]
    fn primes_small() {
        let primes: Vec<i64> = (2..100).filter(|&n| is_prime(&int(n))).collect();
        assert_eq!(
            primes,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97]
        );
        // strong pseudoprime to several bases
        assert!(!is_prime(&int(3_215_031_751)));
        assert!(is_prime(&parse_int("1000000000000000003").unwrap()));
    }

    #[test]
    fn nu_p_basics() {
        assert_eq!(nu_p(&int(80), &int(2)).unwrap(), Valuation::Finite(4));
        assert_eq!(nu_p(&int(80), &int(5)).unwrap(), Valuation::Finite(1));
        assert_eq!(nu_p(&int(80), &int(3)).unwrap(), Valuation::Finite(0));
        assert_eq!(nu_p(&int(0), &int(7)).unwrap(), Valuation::Infinite);
        assert_eq!(nu_p(&int(-24), &int(2)).unwrap(), Valuation::Finite(3));
        assert!(nu_p(&int(10), &int(6)).is_err());
    }

    #[test]
    fn digit_sums() {
        // 80 = 1010000 in base 2
        assert_eq!(digit_sum(&int(80), &int(2)).unwrap(), int(2));
        // 24 = 44 in base 5
        assert_eq!(digit_sum(&int(24), &int(5)).unwrap(), int(8));
        assert_eq!(digit_sum(&int(0), &int(7)).unwrap(), int(0));
        assert!(digit_sum(&int(5), &int(1)).is_err());
        assert!(digit_sum(&int(-5), &int(2)).is_err());
    }

    #[test]
    fn digit_sum_recurrence() {
        // s_p(a*p + b) = s_p(a) + b for 0 <= b < p
        for p in [2i64, 3, 5, 7] {
            for a in 0i64..50 {
                for b in 0..p {
                    let lhs = digit_sum(&int(a * p + b), &int(p)).unwrap();
                    let rhs = digit_sum(&int(a), &int(p)).unwrap() + int(b);
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn factorial_valuation_examples() {
        // nu_2(10!) = 5 + 2 + 1 = 8, nu_5(10!) = 2
        assert_eq!(nu_p_factorial(&int(10), &int(2)).unwrap(), int(8));
        assert_eq!(nu_p_factorial(&int(10), &int(5)).unwrap(), int(2));
        assert_eq!(nu_p_factorial(&int(0), &int(3)).unwrap(), int(0));
    }

    #[test]
    fn legendre_identity_dense() {
        // nu_p(n!) = (n - s_p(n)) / (p - 1) over a dense grid
        let primes = [2i64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97];
        for &p in &primes {
            for n in (0i64..10_000).step_by(13) {
                let lhs = nu_p_factorial(&int(n), &int(p)).unwrap();
                let s = digit_sum(&int(n), &int(p)).unwrap();
                let rhs = (int(n) - s) / int(p - 1);
                assert_eq!(lhs, rhs, "p = {p}, n = {n}");
            }
        }
    }

    /// Brute-force Pell oracle: scan v = 1, 2, ... until D v^2 + 1 is square.
    fn pell_oracle(d: i64) -> (Int, Int) {
        let d = int(d);
        let mut v = Int::one();
        loop {
            let cand = &d * &v * &v + 1;
            if let Some(u) = perfect_sqrt(&cand) {
                return (u, v);
            }
            v += 1;
        }
    }

    #[test]
    fn pell_fundamental_matches_oracle() {
        for d in [2i64, 3, 5, 6, 7, 8, 10, 11, 12, 13, 14, 15, 17] {
            let sol = pell_fundamental(&int(d)).unwrap();
            let (u, v) = pell_oracle(d);
            assert_eq!((sol.u, sol.v), (u, v), "D = {d}");
        }
    }

    #[test]
    fn pell_fundamental_rejects_bad_d() {
        assert!(pell_fundamental(&int(0)).is_err());
        assert!(pell_fundamental(&int(-3)).is_err());
        assert!(pell_fundamental(&int(9)).is_err());
    }

    #[test]
    fn pell_iteration() {
        // D = 8: (3,1), (17,6), (99,35)
        let f = pell_fundamental(&int(8)).unwrap();
        assert_eq!((f.u.clone(), f.v.clone()), (int(3), int(1)));
        let s2 = pell_iterate(&f, 2).unwrap();
        assert_eq!((s2.u, s2.v), (int(17), int(6)));
        let s3 = pell_iterate(&f, 3).unwrap();
        assert_eq!((s3.u, s3.v), (int(99), int(35)));
        assert!(pell_iterate(&f, 0).is_err());
    }

    #[test]
    fn pell_d61_stress() {
        // D = 61 has a famously large fundamental solution.
        let sol = pell_fundamental(&int(61)).unwrap();
        assert_eq!(sol.u, parse_int("1766319049").unwrap());
        assert_eq!(sol.v, parse_int("226153980").unwrap());
    }

    #[test]
    fn rational_strings() {
        assert_eq!(format_rat(&parse_rat("3/7").unwrap()), "3/7");
        assert_eq!(format_rat(&parse_rat("-25").unwrap()), "-25");
        assert_eq!(format_rat(&parse_rat("4/6").unwrap()), "2/3");
        assert_eq!(format_rat(&parse_rat("3/-7").unwrap()), "-3/7");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    proptest! {
        #[test]
        fn isqrt_invariant(bytes in proptest::collection::vec(any::<u8>(), 1..32)) {
            let n = Int::from_bytes_be(num_bigint::Sign::Plus, &bytes);
            let r = isqrt(&n).unwrap();
            prop_assert!(&r * &r <= n);
            let r1 = &r + 1;
            prop_assert!(&r1 * &r1 > n);
        }

        #[test]
        fn perfect_square_roundtrip(bytes in proptest::collection::vec(any::<u8>(), 1..16)) {
            let r = Int::from_bytes_be(num_bigint::Sign::Plus, &bytes);
            let n = &r * &r;
            prop_assert_eq!(perfect_sqrt(&n), Some(r));
        }

        #[test]
        fn digit_sum_subadditive(a in 0i64..1_000_000, b in 0i64..1_000_000, pidx in 0usize..4) {
            let p = int([2i64, 3, 5, 7][pidx]);
            let sa = digit_sum(&int(a), &p).unwrap();
            let sb = digit_sum(&int(b), &p).unwrap();
            let sab = digit_sum(&int(a + b), &p).unwrap();
            prop_assert!(sab <= &sa + &sb);
        }
    }
}
