//! The odd signed power-sum sequence
//!
//! ```text
//! F_n(x,y,z) = (x+y+z)^{2n+1} + (-x-y+z)^{2n+1} + (x-y-z)^{2n+1} + (-x+y-z)^{2n+1}
//! ```
//!
//! for `n ≥ 1`.  Three of the four sign patterns flip an even number of
//! variables, so every monomial with an even exponent cancels and `F_n`
//! collapses to `x·y·z` times a symmetric polynomial: the first members are
//! `F₁ = 24·xyz` and `F₂ = 80·xyz·(x²+y²+z²)`.
//!
//! The module exposes the sequence in two independent forms — direct
//! expansion ([`fn_direct`]) and a closed double-binomial sum
//! ([`fn_closed`]) — plus the per-prime valuation of the coefficient gcd:
//! `phi_p(F_n)` computed from the polynomial itself ([`phi_p`]) and from the
//! arithmetic of `n` alone ([`phi_formula`]).  Their agreement is the
//! content law this module exists to check; [`phi_product`] aggregates the
//! formula over the primes dividing `n`.

use std::collections::BTreeMap;

use num_integer::binomial;
use num_traits::Zero;

use crate::arith::{int, is_prime, nu_p, Int, Valuation};
use crate::mpoly::{MPoly, VarSet};
use crate::{Error, Result};

/// Variable set `(x, y, z)` shared by every polynomial in the sequence.
fn xyz_vars() -> Result<VarSet> {
    VarSet::new(["x", "y", "z"].iter().copied())
}

fn require_positive(n: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::domain("the power-sum index must be at least 1"));
    }
    Ok(())
}

/// Raises a polynomial to the `e`-th power by repeated multiplication.  For
/// the short linear forms used here this beats binary squaring: every step
/// multiplies by a three-term polynomial instead of squaring a dense one.
fn linear_pow(base: &MPoly, e: u32) -> Result<MPoly> {
    let mut acc = MPoly::constant(base.vars().clone(), int(1));
    for _ in 0..e {
        acc = &acc * base;
    }
    Ok(acc)
}

/// One member of the sequence together with its closed-form coefficient
/// table.  The table is indexed by `(i, j)` with `0 ≤ i ≤ n-1`,
/// `0 ≤ j ≤ n-1-i`, and the recorded coefficient belongs to the monomial
/// `x^{2i+1} · y^{2(n-i-j)-1} · z^{2j+1}`; all three exponents are odd and
/// sum to `2n+1`, and the table has exactly `n(n+1)/2` entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FnRecord {
    pub n: u32,
    pub poly: MPoly,
    pub coeff_table: BTreeMap<(u32, u32), Int>,
}

/// Expands the four signed `(2n+1)`-th powers and sums them.
pub fn fn_direct(n: u32) -> Result<MPoly> {
    require_positive(n)?;
    let vs = xyz_vars()?;
    let x = MPoly::var(vs.clone(), "x")?;
    let y = MPoly::var(vs.clone(), "y")?;
    let z = MPoly::var(vs.clone(), "z")?;
    let e = 2 * n + 1;
    let bases = [
        &(&x + &y) + &z,
        &(&z - &x) - &y,
        &(&x - &y) - &z,
        &(&y - &x) - &z,
    ];
    let mut sum = MPoly::zero(vs);
    for b in &bases {
        sum = &sum + &linear_pow(b, e)?;
    }
    Ok(sum)
}

/// Builds the same polynomial from the closed double-binomial sum
///
/// ```text
/// F_n = Σ_{i=0}^{n-1} Σ_{j=0}^{n-1-i} 4·C(2n+1, 2i+1)·C(2(n-i), 2j+1)
///                                     · x^{2i+1} y^{2(n-i-j)-1} z^{2j+1}
/// ```
///
/// and records the coefficients in a table keyed by `(i, j)`.
pub fn fn_closed(n: u32) -> Result<FnRecord> {
    require_positive(n)?;
    let vs = xyz_vars()?;
    let x = MPoly::var(vs.clone(), "x")?;
    let y = MPoly::var(vs.clone(), "y")?;
    let z = MPoly::var(vs.clone(), "z")?;
    let mut coeff_table = BTreeMap::new();
    let mut poly = MPoly::zero(vs);
    for i in 0..n {
        for j in 0..(n - i) {
            let c = int(4)
                * binomial(Int::from(2 * n + 1), Int::from(2 * i + 1))
                * binomial(Int::from(2 * (n - i)), Int::from(2 * j + 1));
            let mono = &(&x.pow(2 * i + 1) * &y.pow(2 * (n - i - j) - 1)) * &z.pow(2 * j + 1);
            poly = &poly + &mono.mul_scalar(&c);
            coeff_table.insert((i, j), c);
        }
    }
    Ok(FnRecord { n, poly, coeff_table })
}

/// The `p`-adic valuation of the coefficient gcd of a polynomial.  Errors on
/// the zero polynomial (whose content carries no valuation) and on
/// non-prime `p`.
pub fn phi_p(poly: &MPoly, p: &Int) -> Result<u64> {
    let content = poly.content();
    if content.is_zero() {
        return Err(Error::domain(
            "the zero polynomial has no content valuation",
        ));
    }
    match nu_p(&content, p)? {
        Valuation::Finite(k) => Ok(k),
        Valuation::Infinite => unreachable!("nonzero content has finite valuation"),
    }
}

/// The content valuation of `F_n` at a prime `p`, computed from `n` alone:
/// `ν₂(n) + 3` at `p = 2`; for odd `p`, `1` when `2n+1` is a power of `p`
/// and `0` otherwise.
pub fn phi_formula(n: u32, p: &Int) -> Result<u64> {
    require_positive(n)?;
    if !is_prime(p) {
        return Err(Error::domain(format!("{p} is not prime")));
    }
    if *p == int(2) {
        let v = match nu_p(&Int::from(n), p)? {
            Valuation::Finite(k) => k,
            Valuation::Infinite => unreachable!("n is positive"),
        };
        return Ok(v + 3);
    }
    let mut m = Int::from(2 * n + 1);
    while (&m % p).is_zero() {
        m /= p;
    }
    Ok(u64::from(m == int(1)))
}

/// The formula aggregated over the distinct primes dividing `n`:
/// `Π_{p | n} p^{phi_formula(n, p)}`.  The empty product at `n = 1` is `1`.
pub fn phi_product(n: u32) -> Result<Int> {
    require_positive(n)?;
    let mut product = int(1);
    let mut rest = n;
    let mut p = 2u32;
    while u64::from(p) * u64::from(p) <= u64::from(rest) {
        if rest % p == 0 {
            while rest % p == 0 {
                rest /= p;
            }
            let e = phi_formula(n, &Int::from(p))?;
            product *= Int::from(p).pow(u32::try_from(e).expect("tiny exponent"));
        }
        p += 1;
    }
    if rest > 1 {
        let e = phi_formula(n, &Int::from(rest))?;
        product *= Int::from(rest).pow(u32::try_from(e).expect("tiny exponent"));
    }
    Ok(product)
}
