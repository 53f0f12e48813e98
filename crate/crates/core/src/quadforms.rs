//! Solution families for `t² = n·x·y·z·F(x,y,z)` with
//! `F = x² + y² + a·z² + b·x·y + c·y·z + d·x·z`.
//!
//! Four polynomial branches cover every integer coefficient constellation
//! with `(b−2, 4a−d², d) ≠ (0,0,0)`:
//!
//! * [`family_pos1`] — the generic branch (`b ≠ 2`, `4a ≠ d²`),
//! * [`family_pos2`] — `b ≠ 2`, `4a = d²` (so `d = 2e`, `a = e²`),
//! * [`family_pos3`] — `b = 2`, `4a ≠ d²`,
//! * [`family_pos4`] — `b = 2`, `4a = d²`, `d ≠ 0`.
//!
//! The remaining constellation `a = d = 0`, `b = 2` has no polynomial family
//! here; instead [`family_pell`] (n not a perfect square) and
//! [`family_square_n`] (n a perfect square) emit primitive integer solutions.
//!
//! Each polynomial branch stores `t` in the recovered closed form
//! `t = pre · s`, where `pre` is the explicit product of the branch's factors
//! (for the generic branch `pre = n·v·(a−u²)·(n+(2u−c)v²)·W`) and `s` is the
//! exact polynomial square root of `±F(x,y,z)` evaluated at the solutions.
//! The constructor proves `n·x·y·z = ±pre²` on the spot, so `t² = n·x·y·z·F`
//! holds by construction and is re-proved by [`verify_family`].

use std::collections::BTreeMap;

use num_integer::Integer as _;
use num_traits::{Signed, Zero};

use crate::arith::{int, is_perfect_square, pell_fundamental, pell_iterate, perfect_sqrt, Int};
use crate::family::{content_lcm, ParametricFamily, TargetEquation, VerifyOptions};
use crate::mpoly::{MPoly, VarSet};
use crate::{Error, Result};

/// Integer coefficients of the target equation `t² = n·x·y·z·F(x,y,z)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadFormParams {
    pub n: Int,
    pub a: Int,
    pub b: Int,
    pub c: Int,
    pub d: Int,
}

impl QuadFormParams {
    pub fn new(n: Int, a: Int, b: Int, c: Int, d: Int) -> Result<Self> {
        if n.is_zero() {
            return Err(Error::domain("n must be nonzero"));
        }
        Ok(QuadFormParams { n, a, b, c, d })
    }

    /// `F(x,y,z)` at an integer point.
    pub fn form_at(&self, x: &Int, y: &Int, z: &Int) -> Int {
        x * x + y * y + &self.a * z * z + &self.b * x * y + &self.c * y * z + &self.d * x * z
    }
}

/// Which construction applies to a given coefficient constellation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseTag {
    /// `b ≠ 2`, `4a ≠ d²`.
    Generic,
    /// `b ≠ 2`, `4a = d²`.
    BNe2FourAEqD2,
    /// `b = 2`, `4a ≠ d²`.
    B2FourANeD2,
    /// `b = 2`, `4a = d²`, `d ≠ 0`.
    B2FourAEqD2DNe0,
    /// `a = d = 0`, `b = 2`, `n` not a perfect square.
    Pell,
    /// `a = d = 0`, `b = 2`, `n` a perfect square.
    SquareN,
}

impl std::fmt::Display for CaseTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            CaseTag::Generic => "generic (b != 2, 4a != d^2)",
            CaseTag::BNe2FourAEqD2 => "b != 2, 4a = d^2",
            CaseTag::B2FourANeD2 => "b = 2, 4a != d^2",
            CaseTag::B2FourAEqD2DNe0 => "b = 2, 4a = d^2, d != 0",
            CaseTag::Pell => "a = d = 0, b = 2, n not a square",
            CaseTag::SquareN => "a = d = 0, b = 2, n a square",
        };
        f.write_str(s)
    }
}

/// Total case dispatch on the coefficient constellation.
pub fn dispatch_case(p: &QuadFormParams) -> Result<CaseTag> {
    if p.n.is_zero() {
        return Err(Error::domain("n must be nonzero"));
    }
    let four_a = &p.a * 4;
    let d_sq = &p.d * &p.d;
    Ok(if p.b == int(2) {
        if four_a != d_sq {
            CaseTag::B2FourANeD2
        } else if !p.d.is_zero() {
            CaseTag::B2FourAEqD2DNe0
        } else {
            // 4a = d² with d = 0 forces a = 0, so this is the a = d = 0 corner
            if is_perfect_square(&p.n) {
                CaseTag::SquareN
            } else {
                CaseTag::Pell
            }
        }
    } else if four_a == d_sq {
        CaseTag::BNe2FourAEqD2
    } else {
        CaseTag::Generic
    })
}

// ---------------------------------------------------------------------------
// shared construction machinery
// ---------------------------------------------------------------------------

/// `x² + y² + a·z² + b·x·y + c·y·z + d·x·z` over `{x,y,z}` plus whatever
/// variables the coefficient polynomials carry.
fn quad_form_poly(a: &MPoly, b: &MPoly, c: &MPoly, d: &MPoly) -> Result<MPoly> {
    let mut vs = VarSet::new(["x", "y", "z"].iter().copied())?;
    for p in [a, b, c, d] {
        vs = vs.union(p.vars());
    }
    let x = MPoly::var(vs.clone(), "x")?;
    let y = MPoly::var(vs.clone(), "y")?;
    let z = MPoly::var(vs.clone(), "z")?;
    let (a, b, c, d) = (a.remap(&vs)?, b.remap(&vs)?, c.remap(&vs)?, d.remap(&vs)?);
    Ok((x.pow(2) + y.pow(2) + a * z.pow(2) + b * &x * &y + c * &y * &z + d * &x * &z).prune_vars())
}

/// Least common multiple of the solution contents; used as the recorded
/// content divisor so the claim is exact rather than estimated.
/// Builds `t = pre·s` with `s² = ±F(sols)` and proves `n·x·y·z = ±pre²`,
/// which together give `t² = n·x·y·z·F(sols)` exactly.
fn solve_t(
    n: &MPoly,
    quad: &MPoly,
    sols: &[(String, MPoly)],
    pre: &MPoly,
) -> Result<MPoly> {
    let bindings: Vec<(&str, MPoly)> =
        sols.iter().map(|(name, p)| (name.as_str(), p.clone())).collect();
    let form = quad.substitute(&bindings)?;
    let (root, sign) = form.sqrt_with_sign()?;
    let mut xyz = n.clone();
    for (_, p) in sols {
        xyz = xyz.mul(p);
    }
    let signed_pre2 = pre.mul(pre).mul_scalar(&int(sign as i64));
    if xyz != signed_pre2 {
        return Err(Error::Internal(
            "prefactor square does not match n·x·y·z".into(),
        ));
    }
    Ok(pre.mul(&root))
}

fn assemble(
    name: &str,
    params: BTreeMap<String, String>,
    free: &[&str],
    sols: Vec<(String, MPoly)>,
    n: &MPoly,
    quad: &MPoly,
    pre: &MPoly,
) -> Result<ParametricFamily> {
    let t_poly = solve_t(n, quad, &sols, pre)?.prune_vars();
    let sols: Vec<(String, MPoly)> =
        sols.into_iter().map(|(nm, p)| (nm, p.prune_vars())).collect();
    let claimed_content_divisor = content_lcm(&sols)?;
    Ok(ParametricFamily {
        name: name.to_string(),
        params,
        vars: VarSet::new(free.iter().copied())?,
        sols,
        t_poly,
        equation: TargetEquation::QuadXyz {
            n: n.prune_vars(),
            quad: quad.clone(),
        },
        claimed_content_divisor,
    })
}

fn named(sols: [(&str, MPoly); 3]) -> Vec<(String, MPoly)> {
    sols.into_iter().map(|(n, p)| (n.to_string(), p)).collect()
}

struct Pos1Parts {
    x: MPoly,
    y: MPoly,
    z: MPoly,
    pre: MPoly,
}

/// Generic-branch solutions over whatever ring the coefficients live in:
/// with `A = a−u²`, `B = n+(2u−c)v²`,
/// `W = n(2u−d) + (a(2−b)+cd−2(c+d)u+(b+2)u²)v²`:
/// `x = n·A·B`, `y = A·v²·W`, `z = B·W`, and prefactor `pre = n·v·A·B·W`.
fn pos1_parts(vs: &VarSet, a: &MPoly, b: &MPoly, c: &MPoly, d: &MPoly, n: &MPoly) -> Result<Pos1Parts> {
    let u = MPoly::var(vs.clone(), "u")?;
    let v = MPoly::var(vs.clone(), "v")?;
    let two = MPoly::constant(vs.clone(), int(2));
    let big_a = a - u.pow(2);
    let big_b = n + (u.mul_scalar(&int(2)) - c) * v.pow(2);
    let big_w = n * (u.mul_scalar(&int(2)) - d)
        + (a * (&two - b) + c * d - (c + d) * u.mul_scalar(&int(2)) + (b + &two) * u.pow(2))
            * v.pow(2);
    Ok(Pos1Parts {
        x: n * &big_a * &big_b,
        y: &big_a * v.pow(2) * &big_w,
        z: &big_b * &big_w,
        pre: n * &v * &big_a * &big_b * &big_w,
    })
}

fn pos1_build(
    params: BTreeMap<String, String>,
    vs: &VarSet,
    a: &MPoly,
    b: &MPoly,
    c: &MPoly,
    d: &MPoly,
    n: &MPoly,
) -> Result<ParametricFamily> {
    let parts = pos1_parts(vs, a, b, c, d, n)?;
    let quad = quad_form_poly(a, b, c, d)?;
    let sols = named([("x", parts.x), ("y", parts.y), ("z", parts.z)]);
    assemble("pos1", params, &["u", "v"], sols, n, &quad, &parts.pre)
}

/// Generic branch with all five coefficients symbolic; the solutions live in
/// the polynomial ring over `a, b, c, d, n, u, v`.
pub fn family_pos1_symbolic() -> Result<ParametricFamily> {
    let vs = VarSet::new(["a", "b", "c", "d", "n", "u", "v"].iter().copied())?;
    let gp = |name: &str| MPoly::var(vs.clone(), name);
    let params = ["a", "b", "c", "d", "n"]
        .iter()
        .map(|k| (k.to_string(), k.to_string()))
        .collect();
    pos1_build(params, &vs, &gp("a")?, &gp("b")?, &gp("c")?, &gp("d")?, &gp("n")?)
}

/// Generic branch at concrete coefficients (`b ≠ 2`, `4a ≠ d²`).
pub fn family_pos1(p: &QuadFormParams) -> Result<ParametricFamily> {
    let tag = dispatch_case(p)?;
    if tag != CaseTag::Generic {
        return Err(Error::domain(format!(
            "coefficients fall in case \"{tag}\", not the generic branch"
        )));
    }
    let vs = VarSet::new(["u", "v"].iter().copied())?;
    let k = |v: &Int| MPoly::constant(vs.clone(), v.clone());
    let params = param_map(p);
    pos1_build(params, &vs, &k(&p.a), &k(&p.b), &k(&p.c), &k(&p.d), &k(&p.n))
}

struct Pos2Parts {
    x: MPoly,
    y: MPoly,
    z: MPoly,
    pre: MPoly,
}

/// Branch for `4a = d²` (`d = 2e`, `a = e²`), `b ≠ 2`: with `P = 2d+w²`,
/// `Q = (c−d−w²)v²−n`, `R = (2+b)v²w²−2(2c−bd)v²+4n`:
/// `x = 4n·P·Q`, `y = −v²w²·P·R`, `z = −4·Q·R`, prefactor `pre = 4n·v·w·P·Q·R`.
///
/// The sign of `z` matters: substituting `u = (d+w²)/2` into the generic
/// branch and stripping the shared square `(w/4)²` yields `z = −4QR` (its
/// second factor is the same `−R` that appears in `y`); flipping it breaks
/// the identity, e.g. at `(b,c,d,n,v,w) = (0,0,2,1,1,1)` the right-hand side
/// would be negative.
fn pos2_parts(vs: &VarSet, b: &MPoly, c: &MPoly, e: &MPoly, n: &MPoly) -> Result<Pos2Parts> {
    let v = MPoly::var(vs.clone(), "v")?;
    let w = MPoly::var(vs.clone(), "w")?;
    let d = e.mul_scalar(&int(2));
    let big_p = d.mul_scalar(&int(2)) + w.pow(2);
    let big_q = (c - &d - w.pow(2)) * v.pow(2) - n;
    let big_r = (b + MPoly::constant(vs.clone(), int(2))) * v.pow(2) * w.pow(2)
        - (c.mul_scalar(&int(2)) - b * &d).mul_scalar(&int(2)) * v.pow(2)
        + n.mul_scalar(&int(4));
    Ok(Pos2Parts {
        x: n.mul_scalar(&int(4)) * &big_p * &big_q,
        y: -(v.pow(2) * w.pow(2) * &big_p * &big_r),
        z: (&big_q * &big_r).mul_scalar(&int(-4)),
        pre: n.mul_scalar(&int(4)) * &v * &w * &big_p * &big_q * &big_r,
    })
}

fn pos2_build(
    params: BTreeMap<String, String>,
    vs: &VarSet,
    b: &MPoly,
    c: &MPoly,
    e: &MPoly,
    n: &MPoly,
) -> Result<ParametricFamily> {
    let parts = pos2_parts(vs, b, c, e, n)?;
    let a = e.mul(e);
    let d = e.mul_scalar(&int(2));
    let quad = quad_form_poly(&a, b, c, &d)?;
    let sols = named([("x", parts.x), ("y", parts.y), ("z", parts.z)]);
    assemble("pos2", params, &["v", "w"], sols, n, &quad, &parts.pre)
}

/// `4a = d²` branch with `b, c, e, n` symbolic (`d = 2e`, `a = e²` keep the
/// constraint inside the integers).
pub fn family_pos2_symbolic() -> Result<ParametricFamily> {
    let vs = VarSet::new(["b", "c", "e", "n", "v", "w"].iter().copied())?;
    let gp = |name: &str| MPoly::var(vs.clone(), name);
    let params: BTreeMap<String, String> = [("a", "e^2"), ("b", "b"), ("c", "c"), ("d", "2*e"), ("n", "n")]
        .iter()
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect();
    pos2_build(params, &vs, &gp("b")?, &gp("c")?, &gp("e")?, &gp("n")?)
}

/// `4a = d²` branch at concrete coefficients (`b ≠ 2`).
pub fn family_pos2(p: &QuadFormParams) -> Result<ParametricFamily> {
    let tag = dispatch_case(p)?;
    if tag != CaseTag::BNe2FourAEqD2 {
        return Err(Error::domain(format!(
            "coefficients fall in case \"{tag}\", not the 4a = d^2 branch"
        )));
    }
    // 4a = d² over the integers forces d even and a = (d/2)².
    let two: Int = int(2);
    let e = &p.d / &two;
    let vs = VarSet::new(["v", "w"].iter().copied())?;
    let k = |v: &Int| MPoly::constant(vs.clone(), v.clone());
    let params = param_map(p);
    pos2_build(params, &vs, &k(&p.b), &k(&p.c), &k(&e), &k(&p.n))
}

struct Pos3Parts {
    x: MPoly,
    y: MPoly,
    z: MPoly,
    pre: MPoly,
}

/// Branch for `b = 2`, `4a ≠ d²`: with
/// `D = w⁴−2(n−cv²)w²+n²−2cnv²+(c²−4a)v⁴` and `E = n−w²−(c−d)v²`:
/// `x = −n·D`, `y = E·D`, `z = −4v²w²·E`, prefactor `pre = 2n·v·w·D·E`.
fn pos3_parts(vs: &VarSet, a: &MPoly, c: &MPoly, d: &MPoly, n: &MPoly) -> Result<Pos3Parts> {
    let v = MPoly::var(vs.clone(), "v")?;
    let w = MPoly::var(vs.clone(), "w")?;
    let big_d = w.pow(4) - (n - c * v.pow(2)).mul_scalar(&int(2)) * w.pow(2) + n.pow(2)
        - (c * n).mul_scalar(&int(2)) * v.pow(2)
        + (c.pow(2) - a.mul_scalar(&int(4))) * v.pow(4);
    let big_e = n - w.pow(2) - (c - d) * v.pow(2);
    Ok(Pos3Parts {
        x: -(n * &big_d),
        y: &big_e * &big_d,
        z: -(v.pow(2) * w.pow(2) * &big_e).mul_scalar(&int(4)),
        pre: (n * &v * &w * &big_d * &big_e).mul_scalar(&int(2)),
    })
}

fn pos3_build(
    params: BTreeMap<String, String>,
    vs: &VarSet,
    a: &MPoly,
    c: &MPoly,
    d: &MPoly,
    n: &MPoly,
) -> Result<ParametricFamily> {
    let parts = pos3_parts(vs, a, c, d, n)?;
    let b = MPoly::constant(vs.clone(), int(2));
    let quad = quad_form_poly(a, &b, c, d)?;
    let sols = named([("x", parts.x), ("y", parts.y), ("z", parts.z)]);
    assemble("pos3", params, &["v", "w"], sols, n, &quad, &parts.pre)
}

/// `b = 2` branch with `a, c, d, n` symbolic.
pub fn family_pos3_symbolic() -> Result<ParametricFamily> {
    let vs = VarSet::new(["a", "c", "d", "n", "v", "w"].iter().copied())?;
    let gp = |name: &str| MPoly::var(vs.clone(), name);
    let params: BTreeMap<String, String> = [("a", "a"), ("b", "2"), ("c", "c"), ("d", "d"), ("n", "n")]
        .iter()
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect();
    pos3_build(params, &vs, &gp("a")?, &gp("c")?, &gp("d")?, &gp("n")?)
}

/// `b = 2` branch at concrete coefficients (`4a ≠ d²`).
pub fn family_pos3(p: &QuadFormParams) -> Result<ParametricFamily> {
    let tag = dispatch_case(p)?;
    if tag != CaseTag::B2FourANeD2 {
        return Err(Error::domain(format!(
            "coefficients fall in case \"{tag}\", not the b = 2 branch"
        )));
    }
    let vs = VarSet::new(["v", "w"].iter().copied())?;
    let k = |v: &Int| MPoly::constant(vs.clone(), v.clone());
    let params = param_map(p);
    pos3_build(params, &vs, &k(&p.a), &k(&p.c), &k(&p.d), &k(&p.n))
}

struct Pos4Parts {
    x: MPoly,
    y: MPoly,
    z: MPoly,
    pre: MPoly,
}

/// Branch for `b = 2`, `4a = d²`, `d ≠ 0` (`d = 2e`, `a = e²`): with
/// `S = v²+w²`, `T = n−(c+d)v²−2dw²`, `R = n−(c−d)v²`:
/// `x = −n·S·T`, `y = v²·R·T`, `z = −4·R·w²·S`, prefactor `pre = 2n·v·w·S·T·R`.
fn pos4_parts(vs: &VarSet, c: &MPoly, e: &MPoly, n: &MPoly) -> Result<Pos4Parts> {
    let v = MPoly::var(vs.clone(), "v")?;
    let w = MPoly::var(vs.clone(), "w")?;
    let d = e.mul_scalar(&int(2));
    let big_s = v.pow(2) + w.pow(2);
    let big_t = n - (c + &d) * v.pow(2) - d.mul_scalar(&int(2)) * w.pow(2);
    let big_r = n - (c - &d) * v.pow(2);
    Ok(Pos4Parts {
        x: -(n * &big_s * &big_t),
        y: v.pow(2) * &big_r * &big_t,
        z: -(&big_r * w.pow(2) * &big_s).mul_scalar(&int(4)),
        pre: (n * &v * &w * &big_s * &big_t * &big_r).mul_scalar(&int(2)),
    })
}

fn pos4_build(
    params: BTreeMap<String, String>,
    vs: &VarSet,
    c: &MPoly,
    e: &MPoly,
    n: &MPoly,
) -> Result<ParametricFamily> {
    let parts = pos4_parts(vs, c, e, n)?;
    let a = e.mul(e);
    let b = MPoly::constant(vs.clone(), int(2));
    let d = e.mul_scalar(&int(2));
    let quad = quad_form_poly(&a, &b, c, &d)?;
    let sols = named([("x", parts.x), ("y", parts.y), ("z", parts.z)]);
    assemble("pos4", params, &["v", "w"], sols, n, &quad, &parts.pre)
}

/// `b = 2`, `4a = d²`, `d ≠ 0` branch with `c, e, n` symbolic.
pub fn family_pos4_symbolic() -> Result<ParametricFamily> {
    let vs = VarSet::new(["c", "e", "n", "v", "w"].iter().copied())?;
    let gp = |name: &str| MPoly::var(vs.clone(), name);
    let params: BTreeMap<String, String> = [("a", "e^2"), ("b", "2"), ("c", "c"), ("d", "2*e"), ("n", "n")]
        .iter()
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect();
    pos4_build(params, &vs, &gp("c")?, &gp("e")?, &gp("n")?)
}

/// `b = 2`, `4a = d²`, `d ≠ 0` branch at concrete coefficients.
pub fn family_pos4(p: &QuadFormParams) -> Result<ParametricFamily> {
    let tag = dispatch_case(p)?;
    if tag != CaseTag::B2FourAEqD2DNe0 {
        return Err(Error::domain(format!(
            "coefficients fall in case \"{tag}\", not the b = 2, 4a = d^2, d != 0 branch"
        )));
    }
    let two: Int = int(2);
    let e = &p.d / &two;
    let vs = VarSet::new(["v", "w"].iter().copied())?;
    let k = |v: &Int| MPoly::constant(vs.clone(), v.clone());
    let params = param_map(p);
    pos4_build(params, &vs, &k(&p.c), &k(&e), &k(&p.n))
}

fn param_map(p: &QuadFormParams) -> BTreeMap<String, String> {
    [
        ("a", p.a.to_string()),
        ("b", p.b.to_string()),
        ("c", p.c.to_string()),
        ("d", p.d.to_string()),
        ("n", p.n.to_string()),
    ]
    .iter()
    .map(|(k, v)| (k.to_string(), v.clone()))
    .collect()
}

/// Rescales a `pos2` family built at `n = 1` via `v → 4v`, `w → w/2`.  The
/// result has integer coefficients (the halving provably clears), the
/// coefficient of `w²` in `x` is exactly `−1` (hence `content(x) = 1`), and
/// together with coprimality over Q the three solutions have no common
/// factor at all — not even an integer one.
pub fn normalize_n1(fam: &ParametricFamily) -> Result<ParametricFamily> {
    if fam.name != "pos2" {
        return Err(Error::domain(format!(
            "normalization applies to pos2 families, got {:?}",
            fam.name
        )));
    }
    if fam.params.get("n").map(String::as_str) != Some("1") {
        return Err(Error::domain("normalization requires n = 1"));
    }
    let v4 = MPoly::parse("4*v", None)?;
    let w_num = MPoly::parse("w", None)?;
    let two: Int = int(2);
    let transform = |p: &MPoly| -> Result<MPoly> {
        let stretched = p.substitute(&[("v", v4.clone())])?;
        stretched.substitute_rational_exact("w", &w_num, &two)
    };
    let mut sols = Vec::new();
    for (name, p) in &fam.sols {
        sols.push((name.clone(), transform(p)?.prune_vars()));
    }
    let t_poly = transform(&fam.t_poly)?.prune_vars();
    let claimed_content_divisor = content_lcm(&sols)?;
    Ok(ParametricFamily {
        name: "pos2-n1".to_string(),
        params: fam.params.clone(),
        vars: fam.vars.clone(),
        sols,
        t_poly,
        equation: fam.equation.clone(),
        claimed_content_divisor,
    })
}

/// Verification options tailored to a family produced by this module: for
/// the symbolic constructors the solutions involve too many variables for a
/// direct gcd over Q, so generic in-case parameter specializations are
/// supplied.
pub fn suggested_verify_options(fam: &ParametricFamily) -> VerifyOptions {
    let symbolic = fam.params.values().any(|v| v.parse::<i64>().is_err());
    if !symbolic {
        return VerifyOptions::default();
    }
    let tuples: &[&[(&str, i64)]] = match fam.name.as_str() {
        "pos1" => &[
            &[("a", 1), ("b", 0), ("c", 0), ("d", 1), ("n", 1)],
            &[("a", 3), ("b", 1), ("c", 2), ("d", -1), ("n", 2)],
            &[("a", -2), ("b", 5), ("c", 1), ("d", 3), ("n", -3)],
        ],
        "pos2" => &[
            &[("b", 0), ("c", 0), ("e", 1), ("n", 1)],
            &[("b", 1), ("c", 2), ("e", -1), ("n", 3)],
            &[("b", 3), ("c", -1), ("e", 2), ("n", -2)],
        ],
        "pos3" => &[
            &[("a", 1), ("c", 0), ("d", 0), ("n", 1)],
            &[("a", 2), ("c", 1), ("d", 1), ("n", -1)],
            &[("a", -1), ("c", 2), ("d", 3), ("n", 2)],
        ],
        "pos4" => &[
            &[("c", 0), ("e", 1), ("n", 1)],
            &[("c", 1), ("e", -1), ("n", 2)],
            &[("c", 2), ("e", 2), ("n", -3)],
        ],
        _ => &[],
    };
    VerifyOptions {
        coprime_samples: tuples
            .iter()
            .map(|t| t.iter().map(|(k, v)| (k.to_string(), int(*v))).collect())
            .collect(),
        ..VerifyOptions::default()
    }
}

// ---------------------------------------------------------------------------
// integer branches for a = d = 0, b = 2
// ---------------------------------------------------------------------------

/// One integer solution of `t² = n·x·y·z·((x+y)² + c·y·z)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadSolution {
    pub x: Int,
    pub y: Int,
    pub z: Int,
    pub t: Int,
}

impl QuadSolution {
    /// Exact big-integer check of `t² = n·x·y·z·F(x,y,z)`.
    pub fn verify(&self, p: &QuadFormParams) -> bool {
        let rhs = &p.n * &self.x * &self.y * &self.z * p.form_at(&self.x, &self.y, &self.z);
        &self.t * &self.t == rhs
    }

    pub fn gcd_xyz(&self) -> Int {
        self.x.gcd(&self.y).gcd(&self.z)
    }
}

/// Integer solutions for `a = d = 0`, `b = 2` when `n` is positive and not a
/// perfect square: `x = y = c·n·v²`, `z = 1`, `t = c²·n²·v³·u`, where `(u,v)`
/// is the `k`-th solution of `u² − 4n·v² = 1`.
pub fn family_pell(n: &Int, c: &Int, k: u64) -> Result<QuadSolution> {
    if n.is_zero() {
        return Err(Error::domain("n must be nonzero"));
    }
    if n.is_negative() {
        return Err(Error::Unsupported(
            "negative n with a = d = 0, b = 2: no construction given".into(),
        ));
    }
    if is_perfect_square(n) {
        return Err(Error::domain(format!(
            "n = {n} is a perfect square; use family_square_n"
        )));
    }
    let fundamental = pell_fundamental(&(n * 4))?;
    let sol = pell_iterate(&fundamental, k)?;
    let v2 = &sol.v * &sol.v;
    let x = c * n * &v2;
    let t = c * c * n * n * &v2 * &sol.v * &sol.u;
    Ok(QuadSolution {
        x: x.clone(),
        y: x,
        z: Int::from(1),
        t,
    })
}

/// Integer solutions for `a = d = 0`, `b = 2` when `n = k²` is a perfect
/// square: with `p = c·s + 1`, `q = c·s`: `x = y = c·p²·q²`,
/// `z = (p²−q²)²`, `t = k·c²·p³·q³·(p⁴−q⁴)`; `gcd(x, y, z) = 1`.
pub fn family_square_n(n: &Int, c: &Int, s: &Int) -> Result<QuadSolution> {
    if n.is_zero() {
        return Err(Error::domain("n must be nonzero"));
    }
    let k = perfect_sqrt(n)
        .ok_or_else(|| Error::domain(format!("n = {n} is not a perfect square; use family_pell")))?;
    if c.is_zero() {
        return Err(Error::domain("c must be nonzero for the square-n branch"));
    }
    if !s.is_positive() {
        return Err(Error::domain("s must be >= 1"));
    }
    let q = c * s;
    let p = &q + 1;
    let p2 = &p * &p;
    let q2 = &q * &q;
    let x: Int = c * &p2 * &q2;
    let z = (&p2 - &q2) * (&p2 - &q2);
    let t = &k * c * c * &p2 * &p * &q2 * &q * (&p2 * &p2 - &q2 * &q2);
    Ok(QuadSolution {
        x: x.clone(),
        y: x,
        z,
        t,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::verify_family;
    use crate::mpoly::gcd_many;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn params(n: i64, a: i64, b: i64, c: i64, d: i64) -> QuadFormParams {
        QuadFormParams::new(int(n), int(a), int(b), int(c), int(d)).unwrap()
    }

    #[test]
    fn dispatch_is_total_and_matches_pinned_cases() {
        assert_eq!(dispatch_case(&params(1, 1, 0, 0, 1)).unwrap(), CaseTag::Generic);
        assert_eq!(dispatch_case(&params(1, 1, 0, 0, 2)).unwrap(), CaseTag::BNe2FourAEqD2);
        assert_eq!(dispatch_case(&params(2, 0, 2, 1, 0)).unwrap(), CaseTag::Pell);
        assert_eq!(dispatch_case(&params(4, 0, 2, 1, 0)).unwrap(), CaseTag::SquareN);
        assert_eq!(dispatch_case(&params(-2, 0, 2, 1, 0)).unwrap(), CaseTag::Pell);
        assert_eq!(dispatch_case(&params(5, 1, 2, 7, 3)).unwrap(), CaseTag::B2FourANeD2);
        assert_eq!(dispatch_case(&params(5, 1, 2, 7, 2)).unwrap(), CaseTag::B2FourAEqD2DNe0);
        assert!(QuadFormParams::new(int(0), int(1), int(1), int(1), int(1)).is_err());
    }

    #[test]
    fn pos1_symbolic_identity_holds() {
        let fam = family_pos1_symbolic().unwrap();
        let report = verify_family(&fam, &suggested_verify_options(&fam)).unwrap();
        assert!(report.passed(), "{report}");
        assert_eq!(report.coprime_ok, Some(true));
    }

    #[test]
    fn pos2_symbolic_identity_holds() {
        let fam = family_pos2_symbolic().unwrap();
        let report = verify_family(&fam, &suggested_verify_options(&fam)).unwrap();
        assert!(report.passed(), "{report}");
        assert_eq!(report.coprime_ok, Some(true));
    }

    #[test]
    fn pos3_symbolic_identity_holds() {
        let fam = family_pos3_symbolic().unwrap();
        let report = verify_family(&fam, &suggested_verify_options(&fam)).unwrap();
        assert!(report.passed(), "{report}");
        assert_eq!(report.coprime_ok, Some(true));
    }

    #[test]
    fn pos4_symbolic_identity_holds() {
        let fam = family_pos4_symbolic().unwrap();
        let report = verify_family(&fam, &suggested_verify_options(&fam)).unwrap();
        assert!(report.passed(), "{report}");
        assert_eq!(report.coprime_ok, Some(true));
    }

    #[test]
    fn pos1_specialized_point_check() {
        // coefficients (a,b,c,d,n) = (1,0,0,1,1), point (u,v) = (2,1)
        let fam = family_pos1(&params(1, 1, 0, 0, 1)).unwrap();
        let point = [("u", int(2)), ("v", int(1))];
        let xv = fam.sols[0].1.eval(&point).unwrap();
        let yv = fam.sols[1].1.eval(&point).unwrap();
        let zv = fam.sols[2].1.eval(&point).unwrap();
        let tv = fam.t_poly.eval(&point).unwrap();
        let p = params(1, 1, 0, 0, 1);
        let rhs = &p.n * &xv * &yv * &zv * p.form_at(&xv, &yv, &zv);
        assert_eq!(&tv * &tv, rhs);
        // and the whole specialized family verifies
        let report = verify_family(&fam, &VerifyOptions::default()).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn pos3_specialized_identity() {
        // (a,c,d,n) = (1,0,0,1) with b = 2
        let fam = family_pos3(&params(1, 1, 2, 0, 0)).unwrap();
        let report = verify_family(&fam, &VerifyOptions::default()).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn constructors_reject_case_mismatch() {
        assert!(family_pos1(&params(1, 1, 0, 0, 2)).is_err()); // 4a = d²
        assert!(family_pos2(&params(1, 1, 0, 0, 1)).is_err()); // 4a ≠ d²
        assert!(family_pos3(&params(1, 1, 0, 0, 1)).is_err()); // b ≠ 2
        assert!(family_pos4(&params(1, 1, 2, 0, 0)).is_err()); // d = 0
        assert!(family_pos4(&params(1, 1, 2, 0, 1)).is_err()); // 4a ≠ d²
    }

    #[test]
    fn normalized_pos2_has_unit_joint_content() {
        let fam = family_pos2(&params(1, 1, 0, 0, 2)).unwrap();
        let norm = normalize_n1(&fam).unwrap();
        // the coefficient of w² (and no other variable) in x is exactly −1
        let x = &norm.sols[0].1;
        assert_eq!(x.coeff(&[("w", 2)]).unwrap(), int(-1));
        assert_eq!(x.content(), int(1));
        // contents of y and z pick up square scale factors, but jointly the
        // three polynomials share nothing: gcd of contents is 1
        let contents: Vec<Int> = norm.sols.iter().map(|(_, p)| p.content()).collect();
        let joint = contents.iter().fold(Int::zero(), |acc, c| acc.gcd(c));
        assert_eq!(joint, int(1));
        let report = verify_family(&norm, &VerifyOptions::default()).unwrap();
        assert!(report.passed(), "{report}");
        assert_eq!(report.coprime_ok, Some(true));
    }

    #[test]
    fn normalize_rejects_wrong_input() {
        let pos1 = family_pos1(&params(1, 1, 0, 0, 1)).unwrap();
        assert!(normalize_n1(&pos1).is_err());
        let pos2_n2 = family_pos2(&params(2, 1, 0, 0, 2)).unwrap();
        assert!(normalize_n1(&pos2_n2).is_err());
    }

    #[test]
    fn pell_branch_examples() {
        let p = params(2, 0, 2, 1, 0);
        let s1 = family_pell(&int(2), &int(1), 1).unwrap();
        assert_eq!((&s1.x, &s1.y, &s1.z, &s1.t), (&int(2), &int(2), &int(1), &int(12)));
        assert!(s1.verify(&p));
        assert_eq!(s1.gcd_xyz(), int(1));

        let s2 = family_pell(&int(2), &int(1), 2).unwrap();
        assert_eq!((&s2.x, &s2.y, &s2.z, &s2.t), (&int(72), &int(72), &int(1), &int(14688)));
        assert!(s2.verify(&p));

        assert!(family_pell(&int(4), &int(1), 1).is_err()); // 4n = 16 is a square
        assert!(family_pell(&int(-2), &int(1), 1).is_err()); // no construction
        assert!(family_pell(&int(2), &int(1), 0).is_err()); // k >= 1
    }

    #[test]
    fn pell_branch_iterates_stay_on_curve() {
        let p = params(3, 0, 2, -2, 0);
        for k in 1..=6 {
            let s = family_pell(&int(3), &int(-2), k).unwrap();
            assert!(s.verify(&p), "k = {k}");
            assert_eq!(s.gcd_xyz(), int(1));
        }
    }

    #[test]
    fn square_n_branch_examples() {
        let p = params(1, 0, 2, 1, 0);
        let s = family_square_n(&int(1), &int(1), &int(1)).unwrap();
        assert_eq!((&s.x, &s.y, &s.z, &s.t), (&int(4), &int(4), &int(9), &int(120)));
        assert!(s.verify(&p));
        assert_eq!(s.gcd_xyz(), int(1));

        // n = 4 doubles t through k = 2
        let s4 = family_square_n(&int(4), &int(1), &int(1)).unwrap();
        assert_eq!(s4.t, int(240));
        assert!(s4.verify(&params(4, 0, 2, 1, 0)));

        assert!(family_square_n(&int(2), &int(1), &int(1)).is_err());
        assert!(family_square_n(&int(1), &int(0), &int(1)).is_err());
        assert!(family_square_n(&int(1), &int(1), &int(0)).is_err());
    }

    #[test]
    fn square_n_branch_gcd_is_always_one() {
        for (n, c, s) in [(1i64, 2i64, 3i64), (9, -1, 2), (4, 3, 1), (16, 5, 4), (25, -7, 2)] {
            let sol = family_square_n(&int(n), &int(c), &int(s)).unwrap();
            assert!(sol.verify(&params(n, 0, 2, c, 0)), "n={n} c={c} s={s}");
            assert_eq!(sol.gcd_xyz(), int(1), "n={n} c={c} s={s}");
        }
    }

    /// The elimination of `u` from the generic branch: resolving `a − u²`
    /// against `z` yields `(4a − d²)·(n² − 2cnv² − (4a − c²)v⁴)²`, which is
    /// the algebraic reason the branch needs `4a ≠ d²`.
    #[test]
    fn generic_branch_resultant_in_u() {
        let fam = family_pos1_symbolic().unwrap();
        let z = &fam.sols[2].1;
        let vs = z.vars().clone();
        let a_minus_u2 = MPoly::parse("a - u^2", Some(&vs)).unwrap();
        let res = a_minus_u2.resultant(z, "u").unwrap();
        let expected = MPoly::parse(
            "(4*a - d^2)*(n^2 - 2*c*n*v^2 - (4*a - c^2)*v^4)^2",
            Some(&vs),
        )
        .unwrap();
        assert_eq!(res, expected, "sign convention: Res(f, g) = lc(f)^deg(g) * prod g(roots of f)");
    }

    /// Eliminating `w` between `2d + w²` and `z` of the 4a = d² branch gives
    /// `256·((c+d)v² − n)⁴` — nonzero for every n ≠ 0, which is what rules
    /// out a shared factor.  (A ⁴-power of the eliminated variable sometimes
    /// quoted for this value cannot be right, since the resultant no longer
    /// contains `w`.)
    #[test]
    fn pos2_resultant_of_p_against_z() {
        let vs = VarSet::new(["b", "c", "d", "n", "v", "w"].iter().copied()).unwrap();
        let p = MPoly::parse("2*d + w^2", Some(&vs)).unwrap();
        let z1 = MPoly::parse(
            "-4*(((c - d - w^2)*v^2 - n) * ((2 + b)*v^2*w^2 - 2*(2*c - b*d)*v^2 + 4*n))",
            Some(&vs),
        )
        .unwrap();
        let res = p.resultant(&z1, "w").unwrap();
        let expected = MPoly::parse("256*((c + d)*v^2 - n)^4", Some(&vs)).unwrap();
        assert_eq!(res, expected);
    }

    /// The factor `n + (w² + d − c)v²` (which is `−Q`) divides both `x` and
    /// `z` of the 4a = d² branch, so the triple stays coprime only if it
    /// avoids `y`.  Eliminating `v` between that factor and `y` gives
    /// `n⁴·w⁴·(2d + w²)⁴·(b − 2)²`: nonzero exactly because `b ≠ 2` in this
    /// branch.  (Resolving against `z` instead would be vacuous — `Q`
    /// divides `z` — so `y` is the right partner here.)
    #[test]
    fn pos2_resultant_certifies_b_ne_2() {
        let vs = VarSet::new(["b", "c", "d", "n", "v", "w"].iter().copied()).unwrap();
        let q_neg = MPoly::parse("n + (w^2 + d - c)*v^2", Some(&vs)).unwrap();
        let y1 = MPoly::parse(
            "v^2*w^2*(2*d + w^2)*(2*(2*c - b*d)*v^2 - (2 + b)*v^2*w^2 - 4*n)",
            Some(&vs),
        )
        .unwrap();
        let res = q_neg.resultant(&y1, "v").unwrap();
        let expected =
            MPoly::parse("n^4*w^4*(2*d + w^2)^4*(b - 2)^2", Some(&vs)).unwrap();
        assert_eq!(res, expected);
    }

    /// For the b = 2 branch, `x` and `z` can only share the core factor of
    /// `z = 4v²w²·E` (the `v²w²` part never divides `x` since `n ≠ 0`).
    /// Eliminating either variable between `x` and `E` leaves
    /// `(4a − d²)²·n²` times a manifestly nonzero cofactor, so the branch
    /// needs `4a ≠ d²`.
    #[test]
    fn pos3_resultants_certify_4a_ne_d2() {
        let vs = VarSet::new(["a", "c", "d", "n", "v", "w"].iter().copied()).unwrap();
        let x2 = MPoly::parse(
            "-n*(w^4 - 2*(n - c*v^2)*w^2 + n^2 - 2*c*n*v^2 + (c^2 - 4*a)*v^4)",
            Some(&vs),
        )
        .unwrap();
        let core = MPoly::parse("w^2 + (c - d)*v^2 - n", Some(&vs)).unwrap();
        let res_v = x2.resultant(&core, "v").unwrap();
        let expected_v = MPoly::parse("(4*a - d^2)^2 * n^2 * (n - w^2)^4", Some(&vs)).unwrap();
        assert_eq!(res_v, expected_v);
        let res_w = x2.resultant(&core, "w").unwrap();
        let expected_w = MPoly::parse("(4*a - d^2)^2 * n^2 * v^8", Some(&vs)).unwrap();
        assert_eq!(res_w, expected_w);

        // against the full z (with its 4v²w² cofactor) the same conclusion
        // holds; the extra factors are powers of n, v, w, n−w² and the
        // u-elimination invariant n²−2cnv²+(c²−4a)v⁴, all nonzero here
        let z2 = MPoly::parse("4*v^2*w^2*(w^2 + (c - d)*v^2 - n)", Some(&vs)).unwrap();
        let full_v = x2.resultant(&z2, "v").unwrap();
        let expected_full_v = MPoly::parse(
            "256 * n^4 * w^8 * (n - w^2)^8 * (4*a - d^2)^2",
            Some(&vs),
        )
        .unwrap();
        assert_eq!(full_v, expected_full_v);
        let full_w = x2.resultant(&z2, "w").unwrap();
        let expected_full_w = MPoly::parse(
            "256 * n^4 * v^16 * (n^2 - 2*c*n*v^2 + (c^2 - 4*a)*v^4)^2 * (4*a - d^2)^2",
            Some(&vs),
        )
        .unwrap();
        assert_eq!(full_w, expected_full_w);
    }

    /// For the last branch, the two eliminations that certify coprimality:
    /// `Res_v(x, n−(c−d)v²) = 4d²n²(n+(c−d)w²)⁴` (nonzero since d·n ≠ 0) and
    /// `Res_v(y, v²+w²) = w⁴·(n+(c−d)w²)⁴` — note the second is a polynomial
    /// in `w` alone, as it must be after eliminating `v`.
    #[test]
    fn pos4_resultants() {
        let vs = VarSet::new(["c", "d", "n", "v", "w"].iter().copied()).unwrap();
        let x3 = MPoly::parse("-n*(v^2 + w^2)*(n - (c + d)*v^2 - 2*d*w^2)", Some(&vs)).unwrap();
        let y3 = MPoly::parse("v^2*(n - (c - d)*v^2)*(n - (c + d)*v^2 - 2*d*w^2)", Some(&vs)).unwrap();
        let r = MPoly::parse("n - (c - d)*v^2", Some(&vs)).unwrap();
        let s = MPoly::parse("v^2 + w^2", Some(&vs)).unwrap();

        let res_x = x3.resultant(&r, "v").unwrap();
        let expected_x = MPoly::parse("4*d^2*n^2*(n + (c - d)*w^2)^4", Some(&vs)).unwrap();
        assert!(
            res_x == expected_x || res_x == expected_x.neg(),
            "got {res_x}"
        );

        let res_y = y3.resultant(&s, "v").unwrap();
        let expected_y = MPoly::parse("w^4*(n + (c - d)*w^2)^4", Some(&vs)).unwrap();
        assert!(
            res_y == expected_y || res_y == expected_y.neg(),
            "got {res_y}"
        );
    }

    /// Joint integer content across sampled in-case coefficients.  The joint
    /// gcd of the three solutions always divides 4n (2n for the generic
    /// branch); it does not always divide 2n — e.g. the 4a = d² branch at
    /// (n,b,c,d) = (3,10,4,2) has joint content 12.
    #[test]
    fn sampled_families_verify_and_joint_content_divides_4n() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut draw = |lo: i64, hi: i64| int(rng.gen_range(lo..=hi));
        let mut checked = 0usize;
        for case in 0..4 {
            let mut done = 0usize;
            while done < 6 {
                let n = draw(-6, 6);
                if n.is_zero() {
                    continue;
                }
                // draw parameters inside the case under test
                let p = match case {
                    0 => QuadFormParams::new(n, draw(-6, 6), draw(-6, 6), draw(-6, 6), draw(-6, 6)),
                    1 => {
                        let e = draw(-4, 4);
                        QuadFormParams::new(n, &e * &e, draw(-6, 6), draw(-6, 6), &e * 2)
                    }
                    2 => QuadFormParams::new(n, draw(-6, 6), int(2), draw(-6, 6), draw(-6, 6)),
                    _ => {
                        let e = draw(-4, 4);
                        QuadFormParams::new(n, &e * &e, int(2), draw(-6, 6), &e * 2)
                    }
                }
                .unwrap();
                let fam = match (case, dispatch_case(&p).unwrap()) {
                    (0, CaseTag::Generic) => family_pos1(&p).unwrap(),
                    (1, CaseTag::BNe2FourAEqD2) => family_pos2(&p).unwrap(),
                    (2, CaseTag::B2FourANeD2) => family_pos3(&p).unwrap(),
                    (3, CaseTag::B2FourAEqD2DNe0) => family_pos4(&p).unwrap(),
                    _ => continue, // draw fell outside the intended case
                };
                done += 1;
                checked += 1;
                let report = verify_family(&fam, &VerifyOptions::default()).unwrap();
                assert!(report.passed(), "{:?}: {report}", fam.params);
                let joint = fam
                    .sols
                    .iter()
                    .fold(Int::zero(), |acc, (_, p)| acc.gcd(&p.content()));
                let bound: Int = if case == 0 { &p.n * 2 } else { &p.n * 4 };
                assert!(
                    bound.is_multiple_of(&joint),
                    "joint content {joint} exceeds bound {bound} at {:?}",
                    fam.params
                );
            }
        }
        assert_eq!(checked, 24);
    }

    #[test]
    fn documented_joint_content_counterexample() {
        // joint content 12 with 2n = 6: the classical 2n bound fails here,
        // while 4n = 12 holds.
        let fam = family_pos2(&params(3, 1, 10, 4, 2)).unwrap();
        let joint = fam
            .sols
            .iter()
            .fold(Int::zero(), |acc, (_, p)| acc.gcd(&p.content()));
        assert_eq!(joint, int(12));
        let report = verify_family(&fam, &VerifyOptions::default()).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn polynomial_gcd_of_generic_solutions_is_constant() {
        // direct two-variable gcd on a specialized family
        let fam = family_pos1(&params(2, 3, 1, 2, -1)).unwrap();
        let polys: Vec<MPoly> = fam.sols.iter().map(|(_, p)| p.clone()).collect();
        let g = gcd_many(&polys).unwrap();
        assert_eq!(g.total_degree(), 0);
    }

    #[test]
    fn family_json_includes_all_solutions() {
        let fam = family_pos1(&params(1, 1, 0, 0, 1)).unwrap();
        let json = fam.to_json(true).unwrap();
        let doc: crate::family::FamilyJson = serde_json::from_str(&json).unwrap();
        assert_eq!(doc.name, "pos1");
        assert_eq!(doc.vars, vec!["u", "v"]);
        assert!(doc.sols.contains_key("x"));
        assert!(doc.sols.contains_key("y"));
        assert!(doc.sols.contains_key("z"));
        assert_eq!(doc.params["n"], "1");
    }
}
