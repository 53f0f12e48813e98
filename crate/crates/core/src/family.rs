//! Parametric solution families and their verification.
//!
//! A [`ParametricFamily`] packages named solution polynomials together with
//! the equation they are claimed to solve and the content bound they are
//! claimed to satisfy.  [`verify_family`] re-checks every claim from scratch:
//! the identity is expanded symbolically, contents are recomputed, pairwise
//! common factors are hunted over Q, and the identity is additionally
//! evaluated at pseudo-random integer points through a numeric path that
//! shares no code with the symbolic expansion.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer as _;
use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::Int;
use crate::mpoly::{coprime_over_q, MPoly, VarSet};
use crate::{Error, Result};

/// Seed used by [`VerifyOptions::default`]; fixed so that verification runs
/// are reproducible across machines and sessions.
pub const DEFAULT_VERIFY_SEED: u64 = 0x5eed_0001;

/// Least common multiple of the contents of the solution polynomials — the
/// tightest claim of the form "d divides every coefficient gcd" a family can
/// make.  Errors on an identically zero solution, which would make any
/// divisor claim vacuous.
pub fn content_lcm(sols: &[(String, MPoly)]) -> Result<Int> {
    let mut l = Int::from(1);
    for (name, p) in sols {
        let c = p.content();
        if c.is_zero() {
            return Err(Error::Internal(format!("solution {name} is zero")));
        }
        l = l.lcm(&c);
    }
    Ok(l)
}

/// The identity a family claims to satisfy.
#[derive(Debug, Clone)]
pub enum TargetEquation {
    /// `t² = n · x·y·z · Q(x,y,z)`, where `quad`'s variables named after the
    /// solutions are replaced by the solution polynomials (any further
    /// variables of `quad` and `n` stay symbolic).
    QuadXyz { n: MPoly, quad: MPoly },
    /// `lhs · t² = Σ coeffs[i] · sols[i]⁵`.
    QuinticSum { lhs: MPoly, coeffs: Vec<MPoly> },
}

impl TargetEquation {
    /// Symbolic residual (left side minus right side) after substituting the
    /// solution polynomials; the family's identity holds iff this is zero.
    pub fn residual(&self, sols: &[(String, MPoly)], t: &MPoly) -> Result<MPoly> {
        match self {
            TargetEquation::QuadXyz { n, quad } => {
                if sols.len() != 3 {
                    return Err(Error::domain(format!(
                        "three solution polynomials required, got {}",
                        sols.len()
                    )));
                }
                let bindings: Vec<(&str, MPoly)> =
                    sols.iter().map(|(name, p)| (name.as_str(), p.clone())).collect();
                let form = quad.substitute(&bindings)?;
                let mut rhs = n.mul(&form);
                for (_, p) in sols {
                    rhs = rhs.mul(p);
                }
                Ok(t.mul(t).sub(&rhs))
            }
            TargetEquation::QuinticSum { lhs, coeffs } => {
                if sols.len() != coeffs.len() {
                    return Err(Error::domain(format!(
                        "{} coefficients for {} solutions",
                        coeffs.len(),
                        sols.len()
                    )));
                }
                let mut rhs = MPoly::zero(t.vars().clone());
                for ((_, p), c) in sols.iter().zip(coeffs) {
                    rhs = rhs.add(&c.mul(&p.pow(5)));
                }
                Ok(lhs.mul(&t.mul(t)).sub(&rhs))
            }
        }
    }

    /// Checks the identity at one integer point using plain integer
    /// arithmetic on the already-evaluated solution values, independently of
    /// the symbolic expansion in [`TargetEquation::residual`].
    pub fn check_point(
        &self,
        sol_vals: &[(String, Int)],
        t_val: &Int,
        point: &[(&str, Int)],
    ) -> Result<bool> {
        match self {
            TargetEquation::QuadXyz { n, quad } => {
                let n_val = n.eval(point)?;
                let mut form_point: Vec<(&str, Int)> = point.to_vec();
                for (name, v) in sol_vals {
                    form_point.push((name.as_str(), v.clone()));
                }
                let form_val = quad.eval(&form_point)?;
                let mut rhs = n_val * form_val;
                for (_, v) in sol_vals {
                    rhs *= v;
                }
                Ok(t_val * t_val == rhs)
            }
            TargetEquation::QuinticSum { lhs, coeffs } => {
                let mut rhs = Int::zero();
                for ((_, v), c) in sol_vals.iter().zip(coeffs) {
                    rhs += c.eval(point)? * v.pow(5);
                }
                Ok(lhs.eval(point)? * t_val * t_val == rhs)
            }
        }
    }

    /// Variables of the equation that stay symbolic, excluding the given
    /// solution names (those get substituted).
    fn symbolic_vars(&self, sol_names: &[&str]) -> Vec<String> {
        let polys: Vec<&MPoly> = match self {
            TargetEquation::QuadXyz { n, quad } => vec![n, quad],
            TargetEquation::QuinticSum { lhs, coeffs } => {
                let mut v: Vec<&MPoly> = coeffs.iter().collect();
                v.push(lhs);
                v
            }
        };
        let mut out = Vec::new();
        for p in polys {
            for name in p.vars().names() {
                if p.degree_in(name) > 0 && !sol_names.contains(&name.as_str()) {
                    out.push(name.clone());
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }
}

impl fmt::Display for TargetEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TargetEquation::QuadXyz { n, quad } => {
                write!(f, "t^2 = ({n}) * x*y*z * ({quad})")
            }
            TargetEquation::QuinticSum { lhs, coeffs } => {
                write!(f, "({lhs}) * T^2 =")?;
                for (i, c) in coeffs.iter().enumerate() {
                    if i > 0 {
                        write!(f, " +")?;
                    }
                    write!(f, " ({c}) * X{}^5", i + 1)?;
                }
                Ok(())
            }
        }
    }
}

/// A named family of polynomial solutions to a target equation.
#[derive(Debug, Clone)]
pub struct ParametricFamily {
    /// Stable identifier, e.g. `"pos1"` or `"four-fifth"`.
    pub name: String,
    /// Human-readable parameter assignments (symbolic parameters map to
    /// their own name).
    pub params: BTreeMap<String, String>,
    /// The free variables of the parametrization, e.g. `{u, v}`.
    pub vars: VarSet,
    /// Named solution polynomials (over the free variables plus any
    /// parameters kept symbolic).
    pub sols: Vec<(String, MPoly)>,
    /// The accompanying square root of the right-hand side.
    pub t_poly: MPoly,
    /// The identity the solutions are claimed to satisfy.
    pub equation: TargetEquation,
    /// Every solution polynomial's integer content must divide this.
    pub claimed_content_divisor: Int,
}

/// Knobs for [`verify_family`].
#[derive(Debug, Clone)]
pub struct VerifyOptions {
    /// Seed for the spot-check point generator.
    pub seed: u64,
    /// Number of pseudo-random integer points to test.
    pub spot_checks: usize,
    /// Spot-check coordinates are drawn uniformly from `[-value_range, value_range]`.
    pub value_range: i64,
    /// Parameter specializations to use when the solutions involve too many
    /// symbolic variables for a direct gcd computation over Q.  Each entry
    /// binds parameter names to integers; the free variables stay free.
    pub coprime_samples: Vec<Vec<(String, Int)>>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            seed: DEFAULT_VERIFY_SEED,
            spot_checks: 32,
            value_range: 9,
            coprime_samples: Vec::new(),
        }
    }
}

/// Outcome of [`verify_family`], clause by clause.
#[derive(Debug, Clone)]
pub struct VerifyReport {
    /// Whether the symbolic residual of the target identity is zero.
    pub identity_holds: bool,
    /// Integer content of each solution polynomial.
    pub contents: Vec<(String, Int)>,
    /// Whether each content divides the claimed divisor.
    pub content_ok: bool,
    /// Whether the solutions are coprime over Q; `None` when the gcd
    /// computation was not possible and no specializations were supplied.
    pub coprime_ok: Option<bool>,
    /// Number of numeric spot checks executed.
    pub spot_checks_run: usize,
    /// Whether every spot check confirmed the identity.
    pub spot_checks_ok: bool,
    /// Free-form diagnostics gathered along the way.
    pub notes: Vec<String>,
}

impl VerifyReport {
    /// True when every clause that could be evaluated passed.
    pub fn passed(&self) -> bool {
        self.identity_holds
            && self.content_ok
            && self.coprime_ok != Some(false)
            && self.spot_checks_ok
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "identity: {}", if self.identity_holds { "ok" } else { "FAILED" })?;
        for (name, c) in &self.contents {
            writeln!(f, "content({name}) = {c}")?;
        }
        writeln!(f, "contents divide claim: {}", if self.content_ok { "ok" } else { "FAILED" })?;
        match self.coprime_ok {
            Some(true) => writeln!(f, "coprime over Q: ok")?,
            Some(false) => writeln!(f, "coprime over Q: FAILED")?,
            None => writeln!(f, "coprime over Q: skipped")?,
        }
        writeln!(
            f,
            "spot checks: {}/{} {}",
            self.spot_checks_run,
            self.spot_checks_run,
            if self.spot_checks_ok { "ok" } else { "FAILED" }
        )?;
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        Ok(())
    }
}

/// Re-derives every claim of the family: symbolic identity, integer
/// contents, coprimality over Q (directly, or on the supplied parameter
/// specializations when more than two variables are involved), and seeded
/// numeric spot checks through an independent evaluation path.
pub fn verify_family(fam: &ParametricFamily, opts: &VerifyOptions) -> Result<VerifyReport> {
    let mut notes = Vec::new();
    if fam.sols.is_empty() {
        return Err(Error::domain("family has no solution polynomials"));
    }
    if fam.claimed_content_divisor.is_zero() {
        return Err(Error::domain("claimed content divisor must be nonzero"));
    }
    let sol_names: Vec<&str> = fam.sols.iter().map(|(n, _)| n.as_str()).collect();
    for name in &sol_names {
        if fam.vars.index_of(name).is_some() {
            return Err(Error::domain(format!(
                "solution name {name} collides with a free variable"
            )));
        }
    }

    // (i) the target identity, expanded symbolically.
    let residual = fam.equation.residual(&fam.sols, &fam.t_poly)?;
    let identity_holds = residual.is_zero();
    if !identity_holds {
        notes.push(format!(
            "identity residual is nonzero: {} terms, total degree {}",
            residual.num_terms(),
            residual.total_degree()
        ));
    }

    // (ii) integer content of each solution against the claimed divisor.
    let mut contents = Vec::new();
    let mut content_ok = true;
    for (name, p) in &fam.sols {
        let c = p.content();
        if c.is_zero() {
            content_ok = false;
            notes.push(format!("solution {name} is the zero polynomial"));
        } else if !fam.claimed_content_divisor.is_multiple_of(&c) {
            content_ok = false;
            notes.push(format!(
                "content({name}) = {c} does not divide claimed {}",
                fam.claimed_content_divisor
            ));
        }
        contents.push((name.clone(), c));
    }

    // (iii) no common factor of positive degree over Q.
    let sol_polys: Vec<MPoly> = fam.sols.iter().map(|(_, p)| p.clone()).collect();
    let coprime_ok = match coprime_over_q(&sol_polys) {
        Ok(flag) => {
            if !flag {
                notes.push("solutions share a factor of positive degree over Q".into());
            }
            Some(flag)
        }
        Err(Error::Unsupported(msg)) => {
            if opts.coprime_samples.is_empty() {
                notes.push(format!("coprimality skipped: {msg}"));
                None
            } else {
                let mut all = true;
                for sample in &opts.coprime_samples {
                    let bind: Vec<(&str, Int)> =
                        sample.iter().map(|(n, v)| (n.as_str(), v.clone())).collect();
                    let specialized: Result<Vec<MPoly>> =
                        sol_polys.iter().map(|p| p.substitute_ints(&bind)).collect();
                    match coprime_over_q(&specialized?) {
                        Ok(true) => {}
                        Ok(false) => {
                            all = false;
                            notes.push(format!(
                                "common factor over Q at specialization {sample:?}"
                            ));
                        }
                        Err(e) => return Err(e),
                    }
                }
                notes.push(format!(
                    "coprimality checked on {} parameter specializations",
                    opts.coprime_samples.len()
                ));
                Some(all)
            }
        }
        Err(e) => return Err(e),
    };

    // (iv) numeric spot checks at seeded pseudo-random integer points.
    let mut draw_vars = fam.vars.clone();
    for (_, p) in &fam.sols {
        draw_vars = draw_vars.union(p.vars());
    }
    draw_vars = draw_vars.union(fam.t_poly.vars());
    let extra = fam.equation.symbolic_vars(&sol_names);
    if !extra.is_empty() {
        draw_vars = draw_vars.union(&VarSet::new(extra.iter().map(String::as_str))?);
    }
    let names: Vec<String> = draw_vars
        .names()
        .iter()
        .filter(|n| !sol_names.contains(&n.as_str()))
        .cloned()
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut spot_checks_ok = true;
    let mut spot_checks_run = 0;
    for _ in 0..opts.spot_checks {
        let point: Vec<(&str, Int)> = names
            .iter()
            .map(|n| (n.as_str(), Int::from(rng.gen_range(-opts.value_range..=opts.value_range))))
            .collect();
        let mut sol_vals = Vec::new();
        for (name, p) in &fam.sols {
            sol_vals.push((name.clone(), p.eval(&point)?));
        }
        let t_val = fam.t_poly.eval(&point)?;
        spot_checks_run += 1;
        if !fam.equation.check_point(&sol_vals, &t_val, &point)? {
            spot_checks_ok = false;
            notes.push(format!("spot check failed at {point:?}"));
            break;
        }
    }

    Ok(VerifyReport {
        identity_holds,
        contents,
        content_ok,
        coprime_ok,
        spot_checks_run,
        spot_checks_ok,
        notes,
    })
}

/// Serialization form of a family: polynomials and big integers as strings.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FamilyJson {
    pub name: String,
    pub params: BTreeMap<String, String>,
    pub vars: Vec<String>,
    pub sols: BTreeMap<String, String>,
    pub t: String,
    pub claimed_content_divisor: String,
    pub verified: bool,
}

impl ParametricFamily {
    /// JSON document with canonical polynomial text and the given
    /// verification verdict.
    pub fn to_json(&self, verified: bool) -> Result<String> {
        let doc = FamilyJson {
            name: self.name.clone(),
            params: self.params.clone(),
            vars: self.vars.names().to_vec(),
            sols: self
                .sols
                .iter()
                .map(|(n, p)| (n.clone(), p.to_string()))
                .collect(),
            t: self.t_poly.to_string(),
            claimed_content_divisor: self.claimed_content_divisor.to_string(),
            verified,
        };
        serde_json::to_string_pretty(&doc).map_err(Error::from)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    fn poly(s: &str) -> MPoly {
        MPoly::parse(s, None).unwrap()
    }

    fn toy_quintic(x4: &str) -> ParametricFamily {
        let one = MPoly::constant(VarSet::new(["u", "v"].iter().copied()).unwrap(), int(1));
        ParametricFamily {
            name: "toy".into(),
            params: BTreeMap::new(),
            vars: VarSet::new(["u", "v"].iter().copied()).unwrap(),
            sols: vec![
                ("X1".into(), poly("u")),
                ("X2".into(), poly("-u")),
                ("X3".into(), poly("v")),
                ("X4".into(), poly(x4)),
            ],
            t_poly: MPoly::zero(VarSet::new(["u", "v"].iter().copied()).unwrap()),
            equation: TargetEquation::QuinticSum {
                lhs: one.clone(),
                coeffs: vec![one.clone(), one.clone(), one.clone(), one],
            },
            claimed_content_divisor: int(1),
        }
    }

    #[test]
    fn toy_family_verifies() {
        let fam = toy_quintic("-v");
        let report = verify_family(&fam, &VerifyOptions::default()).unwrap();
        assert!(report.identity_holds);
        assert!(report.content_ok);
        assert_eq!(report.coprime_ok, Some(true));
        assert_eq!(report.spot_checks_run, 32);
        assert!(report.spot_checks_ok);
        assert!(report.passed());
    }

    #[test]
    fn broken_identity_is_detected_by_both_paths() {
        let fam = toy_quintic("v");
        let report = verify_family(&fam, &VerifyOptions::default()).unwrap();
        assert!(!report.identity_holds);
        assert!(!report.spot_checks_ok);
        assert!(!report.passed());
        assert!(report.spot_checks_run < 32, "spot checks stop at first failure");
    }

    #[test]
    fn content_claim_violation_is_reported() {
        let mut fam = toy_quintic("-v");
        fam.sols = fam
            .sols
            .into_iter()
            .map(|(n, p)| (n, p.mul_scalar(&int(6))))
            .collect();
        fam.t_poly = fam.t_poly.mul_scalar(&int(6 * 6 * 6)); // still zero; keeps identity
        fam.claimed_content_divisor = int(3);
        let report = verify_family(&fam, &VerifyOptions::default()).unwrap();
        assert!(report.identity_holds);
        assert!(!report.content_ok);
        assert!(!report.passed());
        assert_eq!(report.contents[0].1, int(6));
    }

    #[test]
    fn common_factor_over_q_is_detected() {
        let mut fam = toy_quintic("-v");
        // multiply every solution by u + v and t by (u + v)^2 ... t is zero,
        // so the identity survives and only coprimality should fail.
        let f = poly("u + v");
        fam.sols = fam.sols.into_iter().map(|(n, p)| (n, p.mul(&f))).collect();
        let report = verify_family(&fam, &VerifyOptions::default()).unwrap();
        assert!(report.identity_holds);
        assert_eq!(report.coprime_ok, Some(false));
        assert!(!report.passed());
    }

    #[test]
    fn quad_equation_toy_family() {
        let vars = VarSet::new(["u", "v"].iter().copied()).unwrap();
        let fam = ParametricFamily {
            name: "quad-toy".into(),
            params: BTreeMap::new(),
            vars: vars.clone(),
            sols: vec![
                ("x".into(), poly("u^2")),
                ("y".into(), poly("v^2")),
                ("z".into(), poly("u^2*v^2")),
            ],
            t_poly: poly("u^2*v^2"),
            equation: TargetEquation::QuadXyz {
                n: MPoly::constant(vars.clone(), int(1)),
                quad: MPoly::constant(vars, int(1)),
            },
            claimed_content_divisor: int(2),
        };
        let report = verify_family(&fam, &VerifyOptions::default()).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn symbolic_parameter_with_specializations() {
        // X1 = n*u, X2 = -n*u, X3 = v, X4 = -v with coefficient n on every
        // term: n * (n^5 u^5 - n^5 u^5 + v^5 - v^5) = 0 = t^2 * 1.
        let vars = VarSet::new(["u", "v"].iter().copied()).unwrap();
        let full = VarSet::new(["n", "u", "v"].iter().copied()).unwrap();
        let n = MPoly::var(full.clone(), "n").unwrap();
        let fam = ParametricFamily {
            name: "toy-symbolic".into(),
            params: BTreeMap::from([("n".to_string(), "n".to_string())]),
            vars,
            sols: vec![
                ("X1".into(), poly("n*u")),
                ("X2".into(), poly("-n*u")),
                ("X3".into(), poly("v")),
                ("X4".into(), poly("-v")),
            ],
            t_poly: MPoly::zero(full.clone()),
            equation: TargetEquation::QuinticSum {
                lhs: MPoly::constant(full, int(1)),
                coeffs: vec![n.clone(), n.clone(), n.clone(), n],
            },
            claimed_content_divisor: int(1),
        };
        // without specializations the coprimality clause is skipped
        let report = verify_family(&fam, &VerifyOptions::default()).unwrap();
        assert_eq!(report.coprime_ok, None);
        assert!(report.passed());
        // with specializations it runs and passes
        let opts = VerifyOptions {
            coprime_samples: vec![
                vec![("n".to_string(), int(3))],
                vec![("n".to_string(), int(-7))],
            ],
            ..VerifyOptions::default()
        };
        let report = verify_family(&fam, &opts).unwrap();
        assert_eq!(report.coprime_ok, Some(true));
        assert!(report.passed());
    }

    #[test]
    fn json_shape() {
        let fam = toy_quintic("-v");
        let s = fam.to_json(true).unwrap();
        let back: FamilyJson = serde_json::from_str(&s).unwrap();
        assert_eq!(back.name, "toy");
        assert_eq!(back.vars, vec!["u", "v"]);
        assert_eq!(back.sols["X1"], "u");
        assert_eq!(back.sols["X4"], "-v");
        assert_eq!(back.t, "0");
        assert_eq!(back.claimed_content_divisor, "1");
        assert!(back.verified);
    }

    #[test]
    fn check_point_is_a_real_numeric_path() {
        let vars = VarSet::new(["u"].iter().copied()).unwrap();
        let eq = TargetEquation::QuinticSum {
            lhs: MPoly::constant(vars.clone(), int(1)),
            coeffs: vec![MPoly::constant(vars, int(2))],
        };
        // 2 * 2^5 = 64 = 8^2
        let sols = vec![("X1".to_string(), int(2))];
        assert!(eq.check_point(&sols, &int(8), &[]).unwrap());
        assert!(!eq.check_point(&sols, &int(7), &[]).unwrap());
    }
}
