//! Reduction of a weighted fifth-power form along a known null solution.
//!
//! Given weights `(a, b, c, d)` and integers `(x₁, x₂, x₃, x₄)` with
//! `a·x₁⁵ + b·x₂⁵ + c·x₃⁵ + d·x₄⁵ = 0`, substituting the pencil of lines
//! `Xᵢ = pᵢ·U + xᵢ·V` (slopes `p₁..p₄` named `p, q, r, s`) into
//! `G = a·X₁⁵ + … + d·X₄⁵` kills the `V⁵` term and leaves
//!
//! ```text
//! G(p·U + x₁·V, …) = Σ_{i=1..5} Cᵢ · Uⁱ · V⁵⁻ⁱ,
//! Cᵢ = C(5,i) · (a·pⁱ·x₁⁵⁻ⁱ + b·qⁱ·x₂⁵⁻ⁱ + c·rⁱ·x₃⁵⁻ⁱ + d·sⁱ·x₄⁵⁻ⁱ).
//! ```
//!
//! Choosing one slope to clear `C₁` (and, for special weight shapes, a
//! second to clear `C₂`) makes the substituted form divisible by `U²`, so
//! finding square values of the quintic form reduces to finding square
//! values of a cubic `H` with `G = U²·H`.  All slope solutions are kept
//! exact as numerator/denominator pairs; [`extract_h`] multiplies every
//! coordinate by the common denominator `D` and then by one more factor of
//! `D`, so the output satisfies `U²·H = D⁶·G∘σ` — an even power, absorbable
//! into the square: a value `T² = G∘σ` corresponds to `(D³T)² = U²·H`.

use num_integer::{binomial, Integer};
use num_traits::Zero;

use crate::arith::{int, Int};
use crate::mpoly::{MPoly, VarSet};
use crate::{Error, Result};

/// Names of the four pencil slopes, in coordinate order.
const SLOPES: [&str; 4] = ["p", "q", "r", "s"];

fn slope_vars() -> Result<VarSet> {
    VarSet::new(SLOPES.iter().copied())
}

fn pencil_vars() -> Result<VarSet> {
    VarSet::new(["p", "q", "r", "s", "U", "V"].iter().copied())
}

/// Weights and a point at which the weighted fifth-power form vanishes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NullSolution {
    pub coeffs: [Int; 4],
    pub xs: [Int; 4],
}

impl NullSolution {
    /// Checks the defining relation `Σ coeffᵢ·xᵢ⁵ = 0` and rejects the
    /// all-zero weight vector, for which the reduction is vacuous.
    pub fn new(coeffs: [Int; 4], xs: [Int; 4]) -> Result<NullSolution> {
        if coeffs.iter().all(Zero::is_zero) {
            return Err(Error::domain("all four weights are zero"));
        }
        let residual: Int = coeffs.iter().zip(&xs).map(|(w, x)| w * x.pow(5)).sum();
        if !residual.is_zero() {
            return Err(Error::domain(format!(
                "the weighted fifth-power sum at the point is {residual}, not zero"
            )));
        }
        Ok(NullSolution { coeffs, xs })
    }
}

/// The five pencil coefficients `C₁..C₅` as polynomials in the slopes
/// `p, q, r, s`.  (`C₀` is the defining relation of the null solution and
/// is identically zero.)
pub fn build_pencil(ns: &NullSolution) -> Result<Vec<MPoly>> {
    let vs = slope_vars()?;
    let mut cs = Vec::with_capacity(5);
    for i in 1..=5u32 {
        let mut c = MPoly::zero(vs.clone());
        for (idx, slope) in SLOPES.iter().enumerate() {
            if ns.coeffs[idx].is_zero() {
                continue;
            }
            let weight = &ns.coeffs[idx] * ns.xs[idx].pow(5 - i);
            c = &c + &MPoly::var(vs.clone(), slope)?.pow(i).mul_scalar(&weight);
        }
        cs.push(c.mul_scalar(&binomial(int(5), Int::from(i))));
    }
    Ok(cs)
}

/// One solved slope, kept exact: the named slope equals
/// `numerator / denominator` with the numerator a polynomial in the
/// remaining slopes.  Denominators are normalized positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Substitution {
    pub var: String,
    pub numerator: MPoly,
    pub denominator: Int,
}

impl Substitution {
    fn new(var: &str, numerator: MPoly, denominator: Int) -> Substitution {
        if denominator < Int::zero() {
            Substitution {
                var: var.to_string(),
                numerator: numerator.neg(),
                denominator: -denominator,
            }
        } else {
            Substitution { var: var.to_string(), numerator, denominator }
        }
    }
}

impl std::fmt::Display for Substitution {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.denominator == int(1) {
            write!(f, "{} = {}", self.var, self.numerator)
        } else {
            write!(f, "{} = ({}) / {}", self.var, self.numerator, self.denominator)
        }
    }
}

/// Clears the linear pencil coefficient `C₁` by solving for the last
/// nonzero-weight slope: for `d ≠ 0` (and `x₄ ≠ 0`)
///
/// ```text
/// s = −(a·x₁⁴·p + b·x₂⁴·q + c·x₃⁴·r) / (d·x₄⁴),
/// ```
///
/// and when `d = 0` the three-term variant solves for `r` with denominator
/// `c·x₃⁴` instead.
pub fn solve_c1(ns: &NullSolution) -> Result<Substitution> {
    let vs = slope_vars()?;
    let (solved, active) = if !ns.coeffs[3].is_zero() {
        (3, 3)
    } else if !ns.coeffs[2].is_zero() {
        (2, 2)
    } else {
        return Err(Error::domain(
            "need a nonzero third or fourth weight to solve the linear coefficient",
        ));
    };
    if ns.xs[solved].is_zero() {
        return Err(Error::domain(format!(
            "cannot solve for {} when its coordinate is zero",
            SLOPES[solved]
        )));
    }
    let mut numerator = MPoly::zero(vs.clone());
    for idx in 0..active {
        if ns.coeffs[idx].is_zero() {
            continue;
        }
        let weight = &ns.coeffs[idx] * ns.xs[idx].pow(4);
        numerator = &numerator - &MPoly::var(vs.clone(), SLOPES[idx])?.mul_scalar(&weight);
    }
    let denominator = &ns.coeffs[solved] * ns.xs[solved].pow(4);
    Ok(Substitution::new(SLOPES[solved], numerator, denominator))
}

/// Clears `C₁` and `C₂` simultaneously.  Implemented for the antisymmetric
/// shape `weights = (a, −a, c, −c)` at the all-ones point, where
///
/// ```text
/// r = ((c−a)·p + (c+a)·q) / 2c,   s = ((c+a)·p + (c−a)·q) / 2c
/// ```
///
/// clear both coefficients identically in `p, q`.  Other shapes are not
/// implemented for this simultaneous elimination.
pub fn solve_c1_c2(ns: &NullSolution) -> Result<[Substitution; 2]> {
    let [a, b, c, d] = &ns.coeffs;
    let shape_ok = !a.is_zero()
        && !c.is_zero()
        && *b == -a
        && *d == -c
        && ns.xs.iter().all(|x| *x == int(1));
    if !shape_ok {
        return Err(Error::Unsupported(
            "simultaneous elimination of the first two pencil coefficients is not \
             implemented for this shape; need weights (a, -a, c, -c) at the all-ones point"
                .into(),
        ));
    }
    let vs = slope_vars()?;
    let p = MPoly::var(vs.clone(), "p")?;
    let q = MPoly::var(vs, "q")?;
    let r_num = &p.mul_scalar(&(c - a)) + &q.mul_scalar(&(c + a));
    let s_num = &p.mul_scalar(&(c + a)) + &q.mul_scalar(&(c - a));
    let den = int(2) * c;
    Ok([
        Substitution::new("r", r_num, den.clone()),
        Substitution::new("s", s_num, den),
    ])
}

/// The outcome of a pencil reduction: the coefficients, the residual cubic,
/// and the bookkeeping needed to transport square values back.
#[derive(Debug, Clone)]
pub struct PencilReduction {
    /// Pencil coefficients `C₁..C₅` in the slope variables.
    pub c: Vec<MPoly>,
    /// Residual cubic with `U²·h = scale⁶ · G∘σ`, in the slope variables
    /// plus `U, V`.
    pub h: MPoly,
    /// Common denominator of the solved slopes.  A square value
    /// `T² = G∘σ` of the substituted form corresponds to
    /// `(scale³·T)² = U²·h`.
    pub scale: Int,
    /// Human-readable record of which slopes were eliminated and how.
    pub eliminated: String,
}

/// Applies solved slopes to the pencil and divides the substituted form by
/// `U²` exactly.  Every coordinate is multiplied by the common denominator
/// `D` of the substitutions and the result by one more factor of `D`, so
/// the output satisfies `U²·h = D⁶·G∘σ` (an even power of `D`, absorbable
/// into the square being sought).  A nonzero remainder means the requested
/// substitutions did not clear the linear coefficient, which is an internal
/// error, not a user error.
pub fn extract_h(ns: &NullSolution, subs: &[Substitution]) -> Result<PencilReduction> {
    if subs.is_empty() {
        return Err(Error::domain("at least one solved slope is required"));
    }
    let vs = pencil_vars()?;
    let u = MPoly::var(vs.clone(), "U")?;
    let v = MPoly::var(vs.clone(), "V")?;
    let mut d_common = int(1);
    for sub in subs {
        d_common = d_common.lcm(&sub.denominator);
    }
    let mut g_tilde = MPoly::zero(vs.clone());
    for (idx, slope) in SLOPES.iter().enumerate() {
        if ns.coeffs[idx].is_zero() {
            continue;
        }
        let line = match subs.iter().find(|s| s.var == *slope) {
            Some(sub) => {
                let lift = &d_common / &sub.denominator;
                let num = sub.numerator.remap(&vs)?;
                &(&num * &u).mul_scalar(&lift)
                    + &v.mul_scalar(&(&d_common * &ns.xs[idx]))
            }
            None => {
                let slope_var = MPoly::var(vs.clone(), slope)?;
                (&(&slope_var * &u) + &v.mul_scalar(&ns.xs[idx])).mul_scalar(&d_common)
            }
        };
        g_tilde = &g_tilde + &line.pow(5).mul_scalar(&ns.coeffs[idx]);
    }
    let g_scaled = g_tilde.mul_scalar(&d_common);
    let h = g_scaled.div_exact(&u.pow(2)).map_err(|_| {
        Error::Internal(
            "the substituted pencil is not divisible by U²; \
             the linear coefficient was not cleared"
                .into(),
        )
    })?;
    let eliminated = subs
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(", ");
    Ok(PencilReduction { c: build_pencil(ns)?, h, scale: d_common, eliminated })
}
