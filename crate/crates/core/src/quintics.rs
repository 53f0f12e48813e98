//! Polynomial solution families for weighted sums of fifth powers.
//!
//! The target equations have the shape `s · T² = a·X₁⁵ + b·X₂⁵ + c·X₃⁵ + d·X₄⁵`
//! (three-term variants drop `X₄`).  Each `family_*` constructor returns a
//! [`ParametricFamily`] whose solution polynomials satisfy the identity
//! exactly over ℤ; [`crate::family::verify_family`] re-derives every claim.
//!
//! Highlights:
//!
//! * [`family_four_fifth`] solves `T² = n(X₁⁵+X₂⁵+X₃⁵+X₄⁵)` for any nonzero
//!   rational `n`, with two free integer parameters and unit content in every
//!   coordinate.  Even numerators are absorbed by reparameterizing
//!   `(u, v) → (2u, 2^⌈α/2⌉ v)`; denominators are cleared by weighting the
//!   three coefficient layers with `25a²`, `10ab`, `b²`; a factor of five in
//!   the denominator strips a uniform `25` from the coordinates.
//! * [`family_corollary_y`] is the one-parameter fiber `(u, v) = (0, 5at)` of
//!   the same construction, rescaled to unit content; its first and third
//!   coordinates admit an explicit unimodular certificate.
//! * [`family_fifth_general`] solves `T² = m(X₁⁵−X₂⁵) + n²(X₃⁵−X₄⁵)` with all
//!   four coordinates congruent to `−1` modulo the reparameterization step
//!   `40m²(m²−n⁴)`, which forces coprime values at every integer point.  The
//!   degenerate case `m² = n⁴` reduces to [`family_four_fifth`] after sign
//!   flips.
//! * [`family_two_plus_minus`] solves `T² = n(X₁⁵+X₂⁵−2X₃⁵)` for rational `n`.
//! * [`family_bremner`] produces coprime triples for `T² = X₁⁵+X₂⁵+X₃⁵` from a
//!   quadratic pencil whose discriminant becomes a perfect square along the
//!   curve `a = −2t², b = 1−3t²`; the half-integer intermediate values are
//!   kept as doubled integers throughout and only divided out at the end.
//! * [`family_mostafa`] is the classical two-parameter solution of
//!   `X₁⁵+X₂⁵+X₃⁵+X₄⁵ = T²` with every coordinate divisible by five.
//! * [`nonprimitive_demo`] shows why solutions with a common factor are cheap:
//!   any seed tuple scales into one, which is the reason the search tooling
//!   only ever looks for primitive tuples.

use std::collections::BTreeMap;

use num_integer::Integer as _;
use num_traits::{Signed, Zero};

use crate::arith::{int, nu_p, Int, Rat, Valuation};
use crate::family::{content_lcm, ParametricFamily, TargetEquation, VerifyOptions};
use crate::mpoly::{MPoly, VarSet};
use crate::{Error, Result};

/// The diagonal equation `T² = n_scale · (a·X₁⁵ + b·X₂⁵ + c·X₃⁵ + d·X₄⁵)`
/// with integer weights and an exact rational prefactor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuinticEquation {
    pub a: Int,
    pub b: Int,
    pub c: Int,
    pub d: Int,
    /// Overall rational scale applied to the weighted sum.
    pub n_scale: Rat,
}

impl QuinticEquation {
    /// Requires at least one nonzero weight and a nonzero scale, since
    /// otherwise the right-hand side is identically zero and every claim
    /// about solutions is vacuous.
    pub fn new(a: Int, b: Int, c: Int, d: Int, n_scale: Rat) -> Result<QuinticEquation> {
        if a.is_zero() && b.is_zero() && c.is_zero() && d.is_zero() {
            return Err(Error::domain("all four weights are zero"));
        }
        if n_scale.is_zero() {
            return Err(Error::domain("the overall scale must be nonzero"));
        }
        Ok(QuinticEquation { a, b, c, d, n_scale })
    }

    /// Extracts the equation of a family whose target is a fifth-power sum
    /// with constant coefficients, folding the left-hand factor into
    /// `n_scale`.
    pub fn from_family(fam: &ParametricFamily) -> Result<QuinticEquation> {
        let TargetEquation::QuinticSum { lhs, coeffs } = &fam.equation else {
            return Err(Error::domain(format!(
                "family {} does not target a fifth-power sum",
                fam.name
            )));
        };
        let constant = |p: &MPoly| -> Result<Int> {
            if p.total_degree() > 0 {
                return Err(Error::domain(format!(
                    "coefficient {p} is not constant; evaluate the family first"
                )));
            }
            p.eval(&[])
        };
        let l = constant(lhs)?;
        if l.is_zero() {
            return Err(Error::domain("left-hand factor of the family is zero"));
        }
        if coeffs.len() != 3 && coeffs.len() != 4 {
            return Err(Error::domain(format!(
                "expected 3 or 4 fifth-power coefficients, got {}",
                coeffs.len()
            )));
        }
        let mut w = [Int::zero(), Int::zero(), Int::zero(), Int::zero()];
        for (slot, c) in w.iter_mut().zip(coeffs) {
            *slot = constant(c)?;
        }
        let [a, b, c, d] = w;
        QuinticEquation::new(a, b, c, d, Rat::new(int(1), l))
    }

    /// The right-hand side `n_scale · Σ wᵢ·xᵢ⁵` at an integer point.  Accepts
    /// three values when the fourth weight is zero.
    pub fn rhs_at(&self, xs: &[Int]) -> Result<Rat> {
        if xs.len() != 4 && !(xs.len() == 3 && self.d.is_zero()) {
            return Err(Error::domain(format!(
                "expected 4 coordinates (or 3 when the last weight is zero), got {}",
                xs.len()
            )));
        }
        let weights = [&self.a, &self.b, &self.c, &self.d];
        let mut sum = Int::zero();
        for (w, x) in weights.iter().zip(xs) {
            sum += *w * x.pow(5);
        }
        Ok(&self.n_scale * Rat::from_integer(sum))
    }
}

/// An integer solution tuple together with its square root value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntSolution {
    pub xs: Vec<Int>,
    pub t: Int,
}

impl IntSolution {
    /// Exact check of `t² = n_scale · Σ wᵢ·xᵢ⁵`.
    pub fn check(&self, eq: &QuinticEquation) -> Result<bool> {
        Ok(Rat::from_integer(&self.t * &self.t) == eq.rhs_at(&self.xs)?)
    }

    /// Greatest common divisor of the coordinates (not including `t`).
    pub fn gcd_xs(&self) -> Int {
        self.xs.iter().fold(Int::zero(), |g, x| g.gcd(x))
    }

    /// A solution is primitive when its coordinates share no factor.
    pub fn is_primitive(&self) -> bool {
        self.gcd_xs() == int(1)
    }
}

/// Evaluates a fifth-power-sum family at an integer parameter point and
/// re-checks the target identity on the evaluated values before emitting the
/// solution.  The point must bind every family variable (and any symbolic
/// equation parameters).
pub fn solution_at(fam: &ParametricFamily, point: &[(&str, Int)]) -> Result<IntSolution> {
    let mut sol_vals = Vec::with_capacity(fam.sols.len());
    for (name, p) in &fam.sols {
        sol_vals.push((name.clone(), p.eval(point)?));
    }
    let t_val = fam.t_poly.eval(point)?;
    if !fam.equation.check_point(&sol_vals, &t_val, point)? {
        return Err(Error::Internal(format!(
            "family {} failed its own identity at an emitted point",
            fam.name
        )));
    }
    Ok(IntSolution { xs: sol_vals.into_iter().map(|(_, v)| v).collect(), t: t_val })
}

/// Scales a seed tuple into a (generally non-primitive) solution: with
/// `g = n_scale·Σ wᵢ·sᵢ⁵ ≠ 0`, the tuple `xᵢ = sᵢ·g`, `t = g³` satisfies the
/// equation because the right-hand side is homogeneous of degree five.  This
/// is why only primitive solutions are interesting: every seed that does not
/// kill the form produces a solution with common factor `|g|`.
pub fn nonprimitive_demo(eq: &QuinticEquation, seed: &[Int]) -> Result<IntSolution> {
    let g_rat = eq.rhs_at(seed)?;
    if !g_rat.is_integer() {
        return Err(Error::domain(format!(
            "the form value {g_rat} at the seed is not an integer; scaling needs an integer value"
        )));
    }
    let g = g_rat.to_integer();
    if g.is_zero() {
        return Err(Error::domain(
            "the form vanishes at the seed, so scaling only reproduces zero",
        ));
    }
    let sol = IntSolution {
        xs: seed.iter().map(|s| s * &g).collect(),
        t: (&g * &g) * &g,
    };
    if !sol.check(eq)? {
        return Err(Error::Internal("scaled seed failed the target identity".into()));
    }
    Ok(sol)
}

/// Verification options with coprimality specializations for the symbolic
/// families, whose solutions involve too many variables for a direct gcd
/// computation over Q.  Concrete families get the defaults.
pub fn suggested_verify_options(fam: &ParametricFamily) -> VerifyOptions {
    let samples: &[&[(&str, i64)]] = match fam.name.as_str() {
        "four-fifth-symbolic" | "two-plus-minus-symbolic" => {
            &[&[("n", 1)], &[("n", 3)], &[("n", -2)]]
        }
        "fifth-general-symbolic" => {
            &[&[("m", 2), ("n", 1)], &[("m", -3), ("n", 2)], &[("m", 5), ("n", 2)]]
        }
        "corollary-y-symbolic" => {
            &[&[("a", 1), ("b", 1)], &[("a", 2), ("b", 3)], &[("a", -1), ("b", 2)]]
        }
        _ => &[],
    };
    let mut opts = VerifyOptions::default();
    opts.coprime_samples = samples
        .iter()
        .map(|s| s.iter().map(|(n, v)| (n.to_string(), int(*v))).collect())
        .collect();
    opts
}

fn pp(vs: &VarSet, s: &str) -> Result<MPoly> {
    MPoly::parse(s, Some(vs))
}

fn cst(vs: &VarSet, k: Int) -> MPoly {
    MPoly::constant(vs.clone(), k)
}

fn named_sols(names: &[&str], polys: Vec<MPoly>) -> Vec<(String, MPoly)> {
    names.iter().map(|n| n.to_string()).zip(polys).collect()
}

// ---------------------------------------------------------------------------
// T² = n(X₁⁵ + X₂⁵ + X₃⁵ + X₄⁵)
// ---------------------------------------------------------------------------

/// Assembles the four solution polynomials and `T` for the four-term sum.
/// Each solution is a sum of three layers `q₂·Aᵢ(u) + q₁·Bᵢ(u)·v² + q₀·Cᵢ(u)·v⁴`;
/// the callers pass `(q₂, q₁, q₀, tf) = (25n², 10n, 1, 10n)` with `n` symbolic,
/// or `(25a², 10ab, b², 10a)` to clear the denominator of `n = a/b`.
fn four_fifth_parts(
    vs: &VarSet,
    q2: &MPoly,
    q1: &MPoly,
    q0: &MPoly,
    tf: &MPoly,
) -> Result<(Vec<MPoly>, MPoly)> {
    let v2 = pp(vs, "v^2")?;
    let v4 = pp(vs, "v^4")?;
    let a1 = pp(vs, "1+2*u-u^2")?;
    let a2 = pp(vs, "u^2+2*u-1")?;
    let b1 = pp(vs, "1+2*u+3*u^2-2*u^3")?;
    let b2 = pp(vs, "1-2*u+3*u^2+2*u^3")?;
    let b34 = pp(vs, "-1-3*u^2")?;
    let c1 = pp(vs, "-2*(1+u^2)*(u^2-2*u-1)")?;
    let c2 = pp(vs, "2*(1+u^2)*(u^2+2*u-1)")?;
    let layer = |a: &MPoly, b: &MPoly, c: &MPoly| q2 * a + &(q1 * b) * &v2 + &(q0 * c) * &v4;
    let x1 = layer(&a1, &b1, &c1);
    let x2 = layer(&a2, &b2, &c2);
    let x3 = layer(&a2.neg(), &b34, &c1.neg());
    let x4 = layer(&a1.neg(), &b34, &c2.neg());
    let s = layer(&pp(vs, "1+u^2")?, &pp(vs, "u*(3+u^2)")?, &pp(vs, "2*(1+u^2)^2")?);
    let t = &(&(tf * &pp(vs, "(u^2-1)*v")?) * &s) * &(&x1 + &x2);
    Ok((vec![x1, x2, x3, x4], t))
}

/// Two-parameter solutions of `T² = n(X₁⁵+X₂⁵+X₃⁵+X₄⁵)` for any nonzero
/// rational `n = a/b`, with every coordinate of unit content.
///
/// * Denominators are cleared by the layer weights `(25a², 10ab, b²)`, which
///   multiply the rational solutions through by `b²` (and `T` by `b⁵`).
/// * An even numerator would leave every coordinate with content exactly 2, so
///   for `α = ν₂(a) > 0` the parameters are rebased via `u → 2u`,
///   `v → 2^⌈α/2⌉·v` and the uniform factors `2^{2α}` (coordinates) and
///   `2^{5α}` (`T`) are divided out.
/// * A denominator divisible by five leaves content exactly 25, divided out
///   together with `5⁵` from `T`.
pub fn family_four_fifth(n: &Rat) -> Result<ParametricFamily> {
    if n.is_zero() {
        return Err(Error::domain("the coefficient n must be nonzero"));
    }
    let a = n.numer().clone();
    let b = n.denom().clone(); // canonical form: b > 0, gcd(a, b) = 1
    let vs = VarSet::new(["u", "v"].iter().copied())?;
    let q2 = cst(&vs, &(&a * &a) * 25);
    let q1 = cst(&vs, &(&a * &b) * 10);
    let q0 = cst(&vs, &b * &b);
    let tf = cst(&vs, &a * 10);
    let (mut xs, mut t) = four_fifth_parts(&vs, &q2, &q1, &q0, &tf)?;
    let alpha = match nu_p(&a, &int(2))? {
        Valuation::Finite(k) => k as usize,
        Valuation::Infinite => unreachable!("a is nonzero"),
    };
    if alpha > 0 {
        let beta = alpha.div_ceil(2);
        let bind = [
            ("u", pp(&vs, "2*u")?),
            ("v", MPoly::var(vs.clone(), "v")?.mul_scalar(&(int(1) << beta))),
        ];
        let dx = int(1) << (2 * alpha);
        let dt = int(1) << (5 * alpha);
        for x in xs.iter_mut() {
            *x = x.substitute(&bind)?.div_exact_scalar(&dx)?;
        }
        t = t.substitute(&bind)?.div_exact_scalar(&dt)?;
    }
    if (&b % &int(5)).is_zero() {
        for x in xs.iter_mut() {
            *x = x.div_exact_scalar(&int(25))?;
        }
        t = t.div_exact_scalar(&int(3125))?;
    }
    let sols = named_sols(&["x1", "x2", "x3", "x4"], xs);
    let claimed_content_divisor = content_lcm(&sols)?;
    let equation = TargetEquation::QuinticSum {
        lhs: cst(&vs, b.clone()),
        coeffs: vec![cst(&vs, a.clone()); 4],
    };
    let mut params = BTreeMap::new();
    params.insert("n".to_string(), n.to_string());
    Ok(ParametricFamily {
        name: "four-fifth".to_string(),
        params,
        vars: vs,
        sols,
        t_poly: t,
        equation,
        claimed_content_divisor,
    })
}

/// [`family_four_fifth`] with the coefficient kept symbolic: solutions over
/// `ℤ[n, u, v]` satisfying `T² = n(X₁⁵+X₂⁵+X₃⁵+X₄⁵)` identically.
pub fn family_four_fifth_symbolic() -> Result<ParametricFamily> {
    let vs = VarSet::new(["n", "u", "v"].iter().copied())?;
    let nn = MPoly::var(vs.clone(), "n")?;
    let q2 = (&nn * &nn).mul_scalar(&int(25));
    let q1 = nn.mul_scalar(&int(10));
    let q0 = cst(&vs, int(1));
    let (xs, t) = four_fifth_parts(&vs, &q2, &q1, &q0, &q1)?;
    let sols = named_sols(&["x1", "x2", "x3", "x4"], xs);
    let claimed_content_divisor = content_lcm(&sols)?;
    let equation = TargetEquation::QuinticSum {
        lhs: cst(&vs, int(1)),
        coeffs: vec![nn; 4],
    };
    let mut params = BTreeMap::new();
    params.insert("n".to_string(), "n".to_string());
    Ok(ParametricFamily {
        name: "four-fifth-symbolic".to_string(),
        params,
        vars: vs,
        sols,
        t_poly: t,
        equation,
        claimed_content_divisor,
    })
}

// ---------------------------------------------------------------------------
// The fiber (u, v) = (0, 5at): coordinates congruent to ±1 modulo 10abt²
// ---------------------------------------------------------------------------

fn corollary_parts(vs: &VarSet, a: &MPoly, b: &MPoly) -> Result<(Vec<MPoly>, MPoly)> {
    let one = cst(vs, int(1));
    let s = (&(a * b) * &pp(vs, "t^2")?).mul_scalar(&int(10));
    let q = (&(&(a * a) * &(b * b)) * &pp(vs, "t^4")?).mul_scalar(&int(50));
    let y1 = &(&one + &s) + &q;
    let y2 = &(&s - &one) - &q;
    let y3 = &(&one - &s) - &q;
    let y4 = &(&q - &one) - &s;
    let t = (&(&(a * a) * b) * &pp(vs, "t^3")?).mul_scalar(&int(-200)) * (&one + &q);
    Ok((vec![y1, y2, y3, y4], t))
}

/// One-parameter solutions of `b·T² = a(Y₁⁵+Y₂⁵+Y₃⁵+Y₄⁵)` for nonzero
/// integers `a`, `b`: with `s = 10abt²` and `q = 50a²b²t⁴`,
/// `(Y₁, Y₂, Y₃, Y₄) = (1+s+q, −1+s−q, 1−s−q, −1−s+q)` and
/// `T = −200a²bt³(1+50a²b²t⁴)`.  This is the `(u, v) = (0, 5at)` fiber of
/// [`family_four_fifth`] with the uniform factor `25a²` divided out, so the
/// tuple is automatically unimodular: `h·Y₁ + (h+1)·Y₃ = 1` for
/// `h = 5abt² + 25a²b²t⁴` (see the tests).
pub fn family_corollary_y(a: &Int, b: &Int) -> Result<ParametricFamily> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::domain("both parameters must be nonzero"));
    }
    let vs = VarSet::new(["t"].iter().copied())?;
    let (ys, t) = corollary_parts(&vs, &cst(&vs, a.clone()), &cst(&vs, b.clone()))?;
    let sols = named_sols(&["x1", "x2", "x3", "x4"], ys);
    let claimed_content_divisor = content_lcm(&sols)?;
    let equation = TargetEquation::QuinticSum {
        lhs: cst(&vs, b.clone()),
        coeffs: vec![cst(&vs, a.clone()); 4],
    };
    let mut params = BTreeMap::new();
    params.insert("a".to_string(), a.to_string());
    params.insert("b".to_string(), b.to_string());
    Ok(ParametricFamily {
        name: "corollary-y".to_string(),
        params,
        vars: vs,
        sols,
        t_poly: t,
        equation,
        claimed_content_divisor,
    })
}

/// [`family_corollary_y`] with both parameters symbolic, over `ℤ[a, b, t]`.
pub fn family_corollary_y_symbolic() -> Result<ParametricFamily> {
    let vs = VarSet::new(["a", "b", "t"].iter().copied())?;
    let a = MPoly::var(vs.clone(), "a")?;
    let b = MPoly::var(vs.clone(), "b")?;
    let (ys, t) = corollary_parts(&vs, &a, &b)?;
    let sols = named_sols(&["x1", "x2", "x3", "x4"], ys);
    let claimed_content_divisor = content_lcm(&sols)?;
    let equation = TargetEquation::QuinticSum { lhs: b, coeffs: vec![a; 4] };
    let mut params = BTreeMap::new();
    params.insert("a".to_string(), "a".to_string());
    params.insert("b".to_string(), "b".to_string());
    Ok(ParametricFamily {
        name: "corollary-y-symbolic".to_string(),
        params,
        vars: vs,
        sols,
        t_poly: t,
        equation,
        claimed_content_divisor,
    })
}

// ---------------------------------------------------------------------------
// X₁⁵ + X₂⁵ + X₃⁵ + X₄⁵ = T², all coordinates divisible by five
// ---------------------------------------------------------------------------

/// The classical two-parameter solution of `X₁⁵+X₂⁵+X₃⁵+X₄⁵ = T²`:
/// `(5pq, 5(p²+pq+q²), −5p(p+q), −5q(p+q))` with
/// `T = 125pq(p+q)(p²+pq+q²)`.  Every coordinate has content exactly five, so
/// no member of the family is primitive; the four-term families above exist
/// precisely to do better than this.
pub fn family_mostafa() -> Result<ParametricFamily> {
    let vs = VarSet::new(["p", "q"].iter().copied())?;
    let xs = vec![
        pp(&vs, "5*p*q")?,
        pp(&vs, "5*(p^2+p*q+q^2)")?,
        pp(&vs, "-5*p*(p+q)")?,
        pp(&vs, "-5*q*(p+q)")?,
    ];
    let t = pp(&vs, "125*p*q*(p+q)*(p^2+p*q+q^2)")?;
    let sols = named_sols(&["x1", "x2", "x3", "x4"], xs);
    let claimed_content_divisor = content_lcm(&sols)?;
    let equation = TargetEquation::QuinticSum {
        lhs: cst(&vs, int(1)),
        coeffs: vec![cst(&vs, int(1)); 4],
    };
    Ok(ParametricFamily {
        name: "mostafa".to_string(),
        params: BTreeMap::new(),
        vars: vs,
        sols,
        t_poly: t,
        equation,
        claimed_content_divisor,
    })
}

// ---------------------------------------------------------------------------
// T² = m(X₁⁵ − X₂⁵) + n²(X₃⁵ − X₄⁵)
// ---------------------------------------------------------------------------

/// Degree-four solutions in the parameter named `tvar`: with
/// `K = 10m²(m²−n⁴)²(m²+n⁴)`,
///
/// ```text
/// X₁ = Kt⁴ − 20mn²(m²−n⁴)t² − 1        X₃ = Kt⁴ + 20m²(m²−n⁴)t² − 1
/// X₂ = Kt⁴ + 20mn²(m²−n⁴)t² − 1        X₄ = Kt⁴ − 20m²(m²−n⁴)t² − 1
/// T  = 400m²n(m²−n⁴)²t³(Kt⁴ + 1)
/// ```
fn fifth_general_parts(
    vs: &VarSet,
    m: &MPoly,
    n: &MPoly,
    tvar: &str,
) -> Result<(Vec<MPoly>, MPoly)> {
    let t2 = pp(vs, &format!("{tvar}^2"))?;
    let t3 = pp(vs, &format!("{tvar}^3"))?;
    let t4 = pp(vs, &format!("{tvar}^4"))?;
    let one = cst(vs, int(1));
    let m2 = m * m;
    let n4 = n.pow(4);
    let dd = &m2 - &n4;
    let k = (&(&(&m2 * &dd) * &dd) * &(&m2 + &n4)).mul_scalar(&int(10));
    let w_mn = (&(m * &n.pow(2)) * &dd).mul_scalar(&int(20));
    let w_mm = (&m2 * &dd).mul_scalar(&int(20));
    let quartic = &(&k * &t4) - &one;
    let x1 = &quartic - &(&w_mn * &t2);
    let x2 = &quartic + &(&w_mn * &t2);
    let x3 = &quartic + &(&w_mm * &t2);
    let x4 = &quartic - &(&w_mm * &t2);
    let t = &(&(&(&m2 * n) * &(&dd * &dd)).mul_scalar(&int(400)) * &t3) * &(&(&k * &t4) + &one);
    Ok((vec![x1, x2, x3, x4], t))
}

fn fifth_general_equation(vs: &VarSet, m: &MPoly, n: &MPoly) -> TargetEquation {
    TargetEquation::QuinticSum {
        lhs: cst(vs, int(1)),
        coeffs: vec![m.clone(), m.neg(), n.pow(2), n.pow(2).neg()],
    }
}

fn fifth_general_params(m: &Int, n: &Int) -> BTreeMap<String, String> {
    let mut params = BTreeMap::new();
    params.insert("m".to_string(), m.to_string());
    params.insert("n".to_string(), n.to_string());
    params
}

/// Solutions of `T² = m(X₁⁵−X₂⁵) + n²(X₃⁵−X₄⁵)` in the rebased parameter
/// `t = 40m²(m²−n⁴)·u`.  The rebasing makes every coordinate congruent to
/// `−1` modulo the step `40m²(m²−n⁴)`, and since the coordinates are also
/// congruent to `−1` modulo `u`, their values at any integer `u` are coprime —
/// the plain degree-four form ([`family_fifth_general_t`]) only bounds the
/// common factor by `40m²(m²−n⁴)`.
///
/// When `m² = n⁴` this construction degenerates (all coordinates become `−1`),
/// and the equation collapses to `T² = m·ΣZᵢ⁵`, which [`family_four_fifth`]
/// solves; the returned family applies the sign flips that transport its
/// solutions back (flipping `X₂, X₄` for `m = n²` and `X₂, X₃` for `m = −n²`).
pub fn family_fifth_general(m: &Int, n: &Int) -> Result<ParametricFamily> {
    if m.is_zero() || n.is_zero() {
        return Err(Error::domain("both coefficients must be nonzero"));
    }
    if m * m == n.pow(4) {
        return fifth_general_degenerate(m, n);
    }
    let vs = VarSet::new(["u"].iter().copied())?;
    let mp = cst(&vs, m.clone());
    let np = cst(&vs, n.clone());
    let (mut xs, mut t) = fifth_general_parts(&vs, &mp, &np, "u")?;
    let step: Int = (m * m * 40) * (m * m - n.pow(4));
    let bind = [("u", MPoly::var(vs.clone(), "u")?.mul_scalar(&step))];
    for x in xs.iter_mut() {
        *x = x.substitute(&bind)?;
    }
    t = t.substitute(&bind)?;
    let sols = named_sols(&["x1", "x2", "x3", "x4"], xs);
    let claimed_content_divisor = content_lcm(&sols)?;
    let equation = fifth_general_equation(&vs, &mp, &np);
    let mut params = fifth_general_params(m, n);
    params.insert("t-step".to_string(), step.to_string());
    Ok(ParametricFamily {
        name: "fifth-general".to_string(),
        params,
        vars: vs,
        sols,
        t_poly: t,
        equation,
        claimed_content_divisor,
    })
}

/// The unrebased degree-four form of [`family_fifth_general`]; the values of
/// the four coordinates at an integer point may share a factor (bounded by
/// `40m²(m²−n⁴)`), so the rebased form is the one to use when primitivity
/// matters.
pub fn family_fifth_general_t(m: &Int, n: &Int) -> Result<ParametricFamily> {
    if m.is_zero() || n.is_zero() {
        return Err(Error::domain("both coefficients must be nonzero"));
    }
    if m * m == n.pow(4) {
        return Err(Error::domain(
            "m² = n⁴ degenerates the construction; family_fifth_general handles that case",
        ));
    }
    let vs = VarSet::new(["t"].iter().copied())?;
    let mp = cst(&vs, m.clone());
    let np = cst(&vs, n.clone());
    let (xs, t) = fifth_general_parts(&vs, &mp, &np, "t")?;
    let sols = named_sols(&["x1", "x2", "x3", "x4"], xs);
    let claimed_content_divisor = content_lcm(&sols)?;
    let equation = fifth_general_equation(&vs, &mp, &np);
    Ok(ParametricFamily {
        name: "fifth-general-t".to_string(),
        params: fifth_general_params(m, n),
        vars: vs,
        sols,
        t_poly: t,
        equation,
        claimed_content_divisor,
    })
}

/// `m² = n⁴` collapse: `T² = m(X₁⁵−X₂⁵) + n²(X₃⁵−X₄⁵) = m·ΣZᵢ⁵` after sign
/// flips, solved by [`family_four_fifth`] at the integer `m`.
fn fifth_general_degenerate(m: &Int, n: &Int) -> Result<ParametricFamily> {
    let base = family_four_fifth(&Rat::from_integer(m.clone()))?;
    let flips = if m.is_positive() {
        [false, true, false, true] // m = n²:  (X₁,X₂,X₃,X₄) = (Z₁,−Z₂,Z₃,−Z₄)
    } else {
        [false, true, true, false] // m = −n²: (X₁,X₂,X₃,X₄) = (Z₁,−Z₂,−Z₃,Z₄)
    };
    let sols: Vec<(String, MPoly)> = base
        .sols
        .iter()
        .zip(flips)
        .map(|((name, p), flip)| (name.clone(), if flip { p.neg() } else { p.clone() }))
        .collect();
    let claimed_content_divisor = content_lcm(&sols)?;
    let vs = base.vars.clone();
    let equation = fifth_general_equation(&vs, &cst(&vs, m.clone()), &cst(&vs, n.clone()));
    let mut params = fifth_general_params(m, n);
    params.insert("reduces-to".to_string(), format!("four-fifth({m})"));
    Ok(ParametricFamily {
        name: "fifth-general-degenerate".to_string(),
        params,
        vars: vs,
        sols,
        t_poly: base.t_poly,
        equation,
        claimed_content_divisor,
    })
}

/// [`family_fifth_general_t`] with both coefficients symbolic, over
/// `ℤ[m, n, t]`.
pub fn family_fifth_general_symbolic() -> Result<ParametricFamily> {
    let vs = VarSet::new(["m", "n", "t"].iter().copied())?;
    let m = MPoly::var(vs.clone(), "m")?;
    let n = MPoly::var(vs.clone(), "n")?;
    let (xs, t) = fifth_general_parts(&vs, &m, &n, "t")?;
    let sols = named_sols(&["x1", "x2", "x3", "x4"], xs);
    let claimed_content_divisor = content_lcm(&sols)?;
    let equation = fifth_general_equation(&vs, &m, &n);
    let mut params = BTreeMap::new();
    params.insert("m".to_string(), "m".to_string());
    params.insert("n".to_string(), "n".to_string());
    Ok(ParametricFamily {
        name: "fifth-general-symbolic".to_string(),
        params,
        vars: vs,
        sols,
        t_poly: t,
        equation,
        claimed_content_divisor,
    })
}

// ---------------------------------------------------------------------------
// T² = n(X₁⁵ + X₂⁵ − 2X₃⁵)
// ---------------------------------------------------------------------------

fn two_plus_minus_parts(vs: &VarSet, a: &MPoly, b: &MPoly) -> Result<(Vec<MPoly>, MPoly)> {
    let t4 = pp(vs, "t^4")?;
    let w4 = pp(vs, "w^4")?;
    let t2w2 = pp(vs, "t^2*w^2")?;
    let g2 = (b * b).mul_scalar(&int(2));
    let g10 = (a * b).mul_scalar(&int(10));
    let g25 = (a * a).mul_scalar(&int(25));
    let x1 = &(&(&g2 * &w4) + &(&g10 * &t2w2)) - &(&g25 * &t4);
    let x2 = &(&(&g25 * &t4) + &(&g10 * &t2w2)) - &(&g2 * &w4);
    let x3 = &g10 * &t2w2;
    let t = &(&(a.mul_scalar(&int(5)) * pp(vs, "t*w")?) * &(&(&g25 * &t4) + &(&g2 * &w4)))
        * &(&x2 - &x1);
    Ok((vec![x1, x2, x3], t))
}

/// Two-parameter solutions of `T² = n(X₁⁵+X₂⁵−2X₃⁵)` for nonzero rational
/// `n = a/b`:
///
/// ```text
/// X₁ = 2b²w⁴ + 10abt²w² − 25a²t⁴       X₃ = 10abt²w²
/// X₂ = 25a²t⁴ + 10abt²w² − 2b²w⁴       T  = 5atw(25a²t⁴ + 2b²w⁴)(X₂ − X₁)
/// ```
///
/// Even numerators are absorbed by `w → 2^⌈α/2⌉·w` and uniform division by
/// `2^{2α}` / `2^{5α}`, a denominator divisible by five by the uniform factors
/// `25` / `5⁵`, exactly as in [`family_four_fifth`].
pub fn family_two_plus_minus(n: &Rat) -> Result<ParametricFamily> {
    if n.is_zero() {
        return Err(Error::domain("the coefficient n must be nonzero"));
    }
    let a = n.numer().clone();
    let b = n.denom().clone();
    let vs = VarSet::new(["t", "w"].iter().copied())?;
    let (mut xs, mut t) = two_plus_minus_parts(&vs, &cst(&vs, a.clone()), &cst(&vs, b.clone()))?;
    let alpha = match nu_p(&a, &int(2))? {
        Valuation::Finite(k) => k as usize,
        Valuation::Infinite => unreachable!("a is nonzero"),
    };
    if alpha > 0 {
        let beta = alpha.div_ceil(2);
        let bind = [("w", MPoly::var(vs.clone(), "w")?.mul_scalar(&(int(1) << beta)))];
        let dx = int(1) << (2 * alpha);
        let dt = int(1) << (5 * alpha);
        for x in xs.iter_mut() {
            *x = x.substitute(&bind)?.div_exact_scalar(&dx)?;
        }
        t = t.substitute(&bind)?.div_exact_scalar(&dt)?;
    }
    if (&b % &int(5)).is_zero() {
        for x in xs.iter_mut() {
            *x = x.div_exact_scalar(&int(25))?;
        }
        t = t.div_exact_scalar(&int(3125))?;
    }
    let sols = named_sols(&["x1", "x2", "x3"], xs);
    let claimed_content_divisor = content_lcm(&sols)?;
    let equation = TargetEquation::QuinticSum {
        lhs: cst(&vs, b.clone()),
        coeffs: vec![cst(&vs, a.clone()), cst(&vs, a.clone()), cst(&vs, &a * -2)],
    };
    let mut params = BTreeMap::new();
    params.insert("n".to_string(), n.to_string());
    Ok(ParametricFamily {
        name: "two-plus-minus".to_string(),
        params,
        vars: vs,
        sols,
        t_poly: t,
        equation,
        claimed_content_divisor,
    })
}

/// [`family_two_plus_minus`] with the coefficient kept symbolic, over
/// `ℤ[n, t, w]`.
pub fn family_two_plus_minus_symbolic() -> Result<ParametricFamily> {
    let vs = VarSet::new(["n", "t", "w"].iter().copied())?;
    let nn = MPoly::var(vs.clone(), "n")?;
    let one = cst(&vs, int(1));
    let (xs, t) = two_plus_minus_parts(&vs, &nn, &one)?;
    let sols = named_sols(&["x1", "x2", "x3"], xs);
    let claimed_content_divisor = content_lcm(&sols)?;
    let equation = TargetEquation::QuinticSum {
        lhs: one,
        coeffs: vec![nn.clone(), nn.clone(), nn.mul_scalar(&int(-2))],
    };
    let mut params = BTreeMap::new();
    params.insert("n".to_string(), "n".to_string());
    Ok(ParametricFamily {
        name: "two-plus-minus-symbolic".to_string(),
        params,
        vars: vs,
        sols,
        t_poly: t,
        equation,
        claimed_content_divisor,
    })
}

// ---------------------------------------------------------------------------
// T² = X₁⁵ + X₂⁵ + X₃⁵ with coprime coordinates
// ---------------------------------------------------------------------------

/// One-parameter coprime solutions of `T² = Y₁⁵+Y₂⁵+Y₃⁵`.
///
/// The construction starts from the pencil identity (see the tests)
///
/// ```text
/// T² − (X₁⁵+X₂⁵+X₃⁵) = 5(b−a)(b²−X₁)(a²+X₁)·G(X₁)
/// ```
///
/// for `X₂ = −a²+b²−X₁`, `X₃ = a²`, `T = b⁵ − 5(b−a)(b²−X₁)(a²+X₁)`, where
/// `G` is a quadratic whose discriminant `4a(3a−2b)(a−b)⁴` becomes the square
/// `(4t(t²−1)²)²` along `a = −2t²`, `b = 1−3t²`.  Solving `G = 0` there gives
///
/// ```text
/// 2X₁ = (t²−1)(t³+5t²−t−1),   2X₂ = (1−t²)(t³−5t²−t+1),   2X₃ = 8t⁴,
/// ```
///
/// half-integers for odd `t`; substituting `t = 2u+1` and dividing the
/// doubled forms by 8 (and the quadrupled `T` by 128 — the halves are never
/// materialized) yields integer triples `(Y₁, Y₂, Y₃)` with
/// `Y₃ = (2u+1)⁴` and an explicit certificate
/// `8·Y₂ + (1−18u−44u²−8u³+16u⁴)(2u+1) = 1` making `gcd(Y₂, Y₃) = 1` at every
/// integer `u`.
pub fn family_bremner() -> Result<ParametricFamily> {
    let vs = VarSet::new(["t", "u"].iter().copied())?;
    let n1 = pp(&vs, "(t^2-1)*(t^3+5*t^2-t-1)")?;
    let n2 = pp(&vs, "(1-t^2)*(t^3-5*t^2-t+1)")?;
    let n3 = pp(&vs, "8*t^4")?;
    let a = pp(&vs, "-2*t^2")?;
    let b = pp(&vs, "1-3*t^2")?;
    // 4T = 4b⁵ − 5(b−a)(2b²−N₁)(2a²+N₁), everything in doubled coordinates
    let four_t = &b.pow(5).mul_scalar(&int(4))
        - &(&(&(&b - &a).mul_scalar(&int(5)) * &(&(&b * &b).mul_scalar(&int(2)) - &n1))
            * &(&(&a * &a).mul_scalar(&int(2)) + &n1));
    let odd = pp(&vs, "2*u+1")?;
    let bind = [("t", odd)];
    let y1 = n1.substitute(&bind)?.div_exact_scalar(&int(8))?.prune_vars();
    let y2 = n2.substitute(&bind)?.div_exact_scalar(&int(8))?.prune_vars();
    let y3 = n3.substitute(&bind)?.div_exact_scalar(&int(8))?.prune_vars();
    let t_y = four_t.substitute(&bind)?.div_exact_scalar(&int(128))?.prune_vars();
    let vsu = y3.vars().clone();
    let sols = named_sols(&["x1", "x2", "x3"], vec![y1, y2, y3]);
    let claimed_content_divisor = content_lcm(&sols)?;
    let equation = TargetEquation::QuinticSum {
        lhs: cst(&vsu, int(1)),
        coeffs: vec![cst(&vsu, int(1)); 3],
    };
    Ok(ParametricFamily {
        name: "bremner".to_string(),
        params: BTreeMap::new(),
        vars: vsu,
        sols,
        t_poly: t_y,
        equation,
        claimed_content_divisor,
    })
}
