//! Division, square roots, resultants, and gcd-based coprimality.

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use super::{MPoly, Monomial, VarSet};
use crate::arith::{perfect_sqrt, Int};
use crate::{Error, Result};

impl MPoly {
    /// Exact polynomial division: returns `q` with `self = q * divisor`,
    /// or `NotDivisible` if no such polynomial exists over Z.
    pub fn div_exact(&self, divisor: &MPoly) -> Result<MPoly> {
        if divisor.is_zero() {
            return Err(Error::domain("division by zero polynomial"));
        }
        let (f, g) = MPoly::aligned(self, divisor);
        let (lm_g, lc_g) = {
            let (m, c) = g.leading().expect("nonzero divisor");
            (m.clone(), c.clone())
        };
        let mut rem = f;
        let mut q = MPoly::zero(rem.vars.clone());
        while !rem.is_zero() {
            let (lm_r, lc_r) = {
                let (m, c) = rem.leading().expect("nonzero remainder");
                (m.clone(), c.clone())
            };
            if !lm_g.divides(&lm_r) {
                return Err(Error::NotDivisible(format!(
                    "leading monomial {} not divisible by {}",
                    super::parse::monomial_string(&rem.vars, &lm_r),
                    super::parse::monomial_string(&g.vars, &lm_g),
                )));
            }
            let (c, r) = lc_r.div_rem(&lc_g);
            if !r.is_zero() {
                return Err(Error::NotDivisible(format!(
                    "leading coefficient {lc_r} not divisible by {lc_g}"
                )));
            }
            let m = lm_r.div(&lm_g);
            // rem -= c * m * g; leading monomial strictly decreases
            let piece = g.mul_monomial(&m, &c);
            rem = rem.sub(&piece);
            q.insert_term(m, c);
        }
        Ok(q)
    }

    /// Exact square root: returns `r` with positive leading coefficient and
    /// `r * r = self`, or `NotASquare`.
    pub fn sqrt_exact(&self) -> Result<MPoly> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        let (lm, lc) = self.leading().expect("nonzero");
        if lc.is_negative() {
            return Err(Error::NotASquare("leading coefficient is negative".into()));
        }
        if lm.0.iter().any(|&e| e % 2 != 0) {
            return Err(Error::NotASquare("leading monomial has odd exponent".into()));
        }
        let rc = perfect_sqrt(lc).ok_or_else(|| {
            Error::NotASquare(format!("leading coefficient {lc} is not a perfect square"))
        })?;
        let rm = Monomial(lm.0.iter().map(|&e| e / 2).collect());
        let mut root = MPoly::zero(self.vars.clone());
        root.terms.insert(rm.clone(), rc.clone());
        // rem = self - root^2, updated incrementally as terms are added
        let mut rem = self.sub(&root.mul(&root));
        let two_rc = &rc * 2;
        while !rem.is_zero() {
            let (lm_r, lc_r) = {
                let (m, c) = rem.leading().expect("nonzero remainder");
                (m.clone(), c.clone())
            };
            // next root term t satisfies 2 * lead(root) * t = lead(rem)
            if !rm.divides(&lm_r) {
                return Err(Error::NotASquare(format!(
                    "residual term {} outside the square's span",
                    super::parse::monomial_string(&rem.vars, &lm_r)
                )));
            }
            let (c, r) = lc_r.div_rem(&two_rc);
            if !r.is_zero() {
                return Err(Error::NotASquare(format!(
                    "residual coefficient {lc_r} not divisible by {two_rc}"
                )));
            }
            let m = lm_r.div(&rm);
            // rem -= 2*root*t + t^2
            let mut t = MPoly::zero(self.vars.clone());
            t.terms.insert(m.clone(), c.clone());
            let delta = root.mul_monomial(&m, &(&c * 2)).add(&t.mul(&t));
            rem = rem.sub(&delta);
            root.insert_term(m, c);
        }
        Ok(root)
    }

    /// Square root of `self` or `-self`:  returns `(r, sign)` with
    /// `sign * r^2 = self` and `sign` in `{1, -1}`.
    pub fn sqrt_with_sign(&self) -> Result<(MPoly, i8)> {
        match self.sqrt_exact() {
            Ok(r) => Ok((r, 1)),
            Err(_) => {
                let r = self.neg().sqrt_exact().map_err(|_| {
                    Error::NotASquare(format!("neither the polynomial nor its negation is a square: {self}"))
                })?;
                Ok((r, -1))
            }
        }
    }

    /// Coefficient polynomials with respect to one variable: entry `e` is the
    /// coefficient of `var^e` (over the same variable set, `var`-free).
    pub fn coeffs_in(&self, var: &str) -> Result<Vec<MPoly>> {
        let idx = self
            .vars
            .index_of(var)
            .ok_or_else(|| Error::domain(format!("unknown variable {var:?}")))?;
        let d = self.degree_in(var) as usize;
        let mut out = vec![MPoly::zero(self.vars.clone()); d + 1];
        for (m, c) in &self.terms {
            let e = m.0[idx] as usize;
            let mut m2 = m.clone();
            m2.0[idx] = 0;
            out[e].terms.insert(m2, c.clone());
        }
        Ok(out)
    }

    /// Inverse of [`coeffs_in`](MPoly::coeffs_in): `sum coeffs[e] * var^e`.
    pub fn from_coeffs_in(vars: &VarSet, var: &str, coeffs: &[MPoly]) -> Result<MPoly> {
        let v = MPoly::var(vars.clone(), var)?;
        let mut acc = MPoly::zero(vars.clone());
        for (e, c) in coeffs.iter().enumerate() {
            acc = acc.add(&c.mul(&v.pow(e as u32)));
        }
        Ok(acc)
    }

    /// Resultant of `self` and `other` with respect to `var`: determinant of
    /// the Sylvester matrix, computed fraction-free (Bareiss) so every
    /// intermediate division is exact.  With `m = deg(self)`, `n = deg(other)`
    /// in `var`, satisfies `Res(f, g) = lc(f)^n * prod g(roots of f)`; e.g.
    /// `Res_x(x - 1, x + 1) = 2`.
    pub fn resultant(&self, other: &MPoly, var: &str) -> Result<MPoly> {
        let (f, g) = MPoly::aligned(self, other);
        let vars = f.vars.clone();
        if f.is_zero() || g.is_zero() {
            return Ok(MPoly::zero(vars));
        }
        let fc = if f.vars.index_of(var).is_some() { f.coeffs_in(var)? } else { vec![f.clone()] };
        let gc = if g.vars.index_of(var).is_some() { g.coeffs_in(var)? } else { vec![g.clone()] };
        let m = fc.len() - 1;
        let n = gc.len() - 1;
        let size = m + n;
        if size == 0 {
            return Ok(MPoly::constant(vars, Int::one()));
        }
        // Sylvester matrix: n shifted rows of f's coefficients (descending),
        // then m shifted rows of g's.
        let zero = MPoly::zero(vars.clone());
        let mut mat = vec![vec![zero.clone(); size]; size];
        for i in 0..n {
            for (k, c) in fc.iter().rev().enumerate() {
                mat[i][i + k] = c.clone();
            }
        }
        for i in 0..m {
            for (k, c) in gc.iter().rev().enumerate() {
                mat[n + i][i + k] = c.clone();
            }
        }
        bareiss_determinant(mat, &vars)
    }
}

/// Fraction-free determinant of a square `MPoly` matrix.
fn bareiss_determinant(mut m: Vec<Vec<MPoly>>, vars: &VarSet) -> Result<MPoly> {
    let n = m.len();
    if n == 0 {
        return Ok(MPoly::constant(vars.clone(), Int::one()));
    }
    let mut sign = 1i8;
    let mut prev = MPoly::constant(vars.clone(), Int::one());
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return Ok(MPoly::zero(vars.clone())),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                // Bareiss: division by the previous pivot is exact
                m[i][j] = num.div_exact(&prev)?;
            }
            m[i][k] = MPoly::zero(vars.clone());
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if sign < 0 { det.neg() } else { det })
}

fn positive_normalized(p: MPoly) -> MPoly {
    if p.leading_coeff().is_negative() {
        p.neg()
    } else {
        p
    }
}

/// Highest-index variable actually used by either polynomial.
fn main_var(f: &MPoly, g: &MPoly) -> Option<usize> {
    debug_assert_eq!(f.vars, g.vars);
    (0..f.vars.len()).rev().find(|&i| {
        let name = &f.vars.names()[i];
        f.degree_in(name) > 0 || g.degree_in(name) > 0
    })
}

/// Content of `f` viewed as univariate in `var`: gcd of its coefficient
/// polynomials.
fn var_content(f: &MPoly, var: &str) -> Result<MPoly> {
    let mut acc = MPoly::zero(f.vars.clone());
    for c in f.coeffs_in(var)? {
        if c.is_zero() {
            continue;
        }
        acc = gcd_mpoly(&acc, &c)?;
        if acc.total_degree() == 0 && acc.leading_coeff().is_one() {
            break;
        }
    }
    Ok(acc)
}

/// Polynomial gcd over Z (primitive pseudo-remainder sequences, recursing on
/// the variable of highest index).  Result has positive leading coefficient
/// and includes the integer content: `gcd(2x + 2, 4x^2 - 4) = 2x + 2`.
pub(crate) fn gcd_mpoly(f: &MPoly, g: &MPoly) -> Result<MPoly> {
    if f.is_zero() {
        return Ok(positive_normalized(g.clone()));
    }
    if g.is_zero() {
        return Ok(positive_normalized(f.clone()));
    }
    let (f, g) = MPoly::aligned(f, g);
    let v = match main_var(&f, &g) {
        None => {
            let c = f.leading_coeff().gcd(&g.leading_coeff());
            return Ok(MPoly::constant(f.vars.clone(), c));
        }
        Some(i) => f.vars.names()[i].clone(),
    };
    let cont_f = var_content(&f, &v)?;
    let cont_g = var_content(&g, &v)?;
    let cont_gcd = gcd_mpoly(&cont_f, &cont_g)?;
    let mut a = f.div_exact(&cont_f)?;
    let mut b = g.div_exact(&cont_g)?;
    if a.degree_in(&v) < b.degree_in(&v) {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_zero() {
        let r = pseudo_rem(&a, &b, &v)?;
        a = b;
        b = if r.is_zero() { r } else { r.div_exact(&var_content(&r, &v)?)? };
    }
    Ok(positive_normalized(cont_gcd.mul(&a)))
}

/// Pseudo-remainder in `var`: repeatedly cancels the leading `var`-term of
/// `f` against `g` after scaling by `g`'s leading coefficient, so only ring
/// operations are needed.  The result is `f` times a power of `lc(g)` modulo
/// `g`, which is all a primitive remainder sequence requires.
fn pseudo_rem(f: &MPoly, g: &MPoly, var: &str) -> Result<MPoly> {
    let dg = g.degree_in(var);
    let gc = g.coeffs_in(var)?;
    let lc_g = gc[dg as usize].clone();
    let v = MPoly::var(f.vars.clone(), var)?;
    let mut r = f.clone();
    while !r.is_zero() && r.degree_in(var) >= dg {
        let dr = r.degree_in(var);
        let lc_r = r.coeffs_in(var)?[dr as usize].clone();
        let shift = v.pow(dr - dg);
        r = lc_g.mul(&r).sub(&lc_r.mul(&shift).mul(g));
        if dr == 0 {
            // dg == 0 too, and the step above cancelled r entirely
            break;
        }
        debug_assert!(r.is_zero() || r.degree_in(var) < dr);
    }
    Ok(r)
}

/// Whether the given polynomials have no common factor of positive degree
/// over Q (integer contents are ignored).  Supports at most two variables
/// that actually occur with positive degree; more yields `Unsupported`.
pub fn coprime_over_q(polys: &[MPoly]) -> Result<bool> {
    if polys.is_empty() {
        return Err(Error::domain("coprimality of an empty set is undefined"));
    }
    // a nonzero constant settles it regardless of variable count
    if polys.iter().any(|p| !p.is_zero() && p.total_degree() == 0) {
        return Ok(true);
    }
    let mut union = polys[0].vars().clone();
    for p in &polys[1..] {
        union = union.union(p.vars());
    }
    let effective: Vec<&String> = union
        .names()
        .iter()
        .filter(|n| polys.iter().any(|p| p.degree_in(n) > 0))
        .collect();
    if effective.len() > 2 {
        return Err(Error::Unsupported(format!(
            "gcd over Q supports at most 2 effective variables, got {}: {:?}",
            effective.len(),
            effective
        )));
    }
    let mut g = polys[0].clone();
    for p in &polys[1..] {
        g = gcd_mpoly(&g, p)?;
        if !g.is_zero() && g.total_degree() == 0 {
            return Ok(true);
        }
    }
    Ok(!g.is_zero() && g.total_degree() == 0)
}

/// Gcd over Z of the whole list (positive leading coefficient, integer
/// content included).  Same effective-variable limit as [`coprime_over_q`];
/// an all-zero list yields zero.
pub fn gcd_many(polys: &[MPoly]) -> Result<MPoly> {
    if polys.is_empty() {
        return Err(Error::domain("gcd of an empty set is undefined"));
    }
    let mut union = polys[0].vars().clone();
    for p in &polys[1..] {
        union = union.union(p.vars());
    }
    let effective = union
        .names()
        .iter()
        .filter(|n| polys.iter().any(|p| p.degree_in(n) > 0))
        .count();
    if effective > 2 {
        return Err(Error::Unsupported(format!(
            "gcd over Z supports at most 2 effective variables, got {effective}"
        )));
    }
    let mut g = polys[0].clone();
    for p in &polys[1..] {
        if !g.is_zero() && g.total_degree() == 0 && g.leading_coeff().is_one() {
            break;
        }
        g = gcd_mpoly(&g, p)?;
    }
    Ok(g)
}
