//! Sparse multivariate polynomials over Z.
//!
//! A polynomial is a map from exponent vectors to nonzero `Int` coefficients,
//! relative to an ordered variable set.  Monomials are ordered graded-lex
//! (total degree first, then lexicographically by exponent vector in variable
//! order); the leading term is the graded-lex greatest and the canonical
//! string form lists terms in descending order.
//!
//! Key operations:
//! * ring arithmetic (`+`, `-`, `*`, `pow`) with deterministic variable-set
//!   union when operands disagree;
//! * simultaneous substitution of polynomials for variables, plus a
//!   denominator-clearing form for rational substitutions (`substitute_cleared`
//!   returns `den^D * f(var -> num/den)` exactly);
//! * full evaluation at integer points;
//! * content / primitive part and the coefficient valuation `phi_p`;
//! * exact division, polynomial square root, Sylvester resultants with
//!   fraction-free (Bareiss) elimination, and PRS-based gcd for coprimality
//!   over Q (see [`algebra`], re-exported here);
//! * parsing and canonical printing (see [`parse`]).
//!
//! Design notes: all coefficients are exact `Int`s; values are immutable and
//! `Send + Sync`, so identity checks parallelize without shared state.

mod algebra;
mod parse;

pub use algebra::{coprime_over_q, gcd_many};

use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::arith::{nu_p, Int, Valuation};
use crate::{Error, Result};

/// Ordered set of distinct variable names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarSet {
    names: Vec<String>,
}

impl VarSet {
    /// Builds a variable set; names must be distinct identifiers
    /// (`[A-Za-z][A-Za-z0-9_]*`).
    pub fn new<I, S>(names: I) -> Result<VarSet>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, n) in names.iter().enumerate() {
            if !is_identifier(n) {
                return Err(Error::domain(format!("invalid variable name {n:?}")));
            }
            if names[..i].contains(n) {
                return Err(Error::domain(format!("duplicate variable {n:?}")));
            }
        }
        Ok(VarSet { names })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Deterministic union: `self`'s variables in order, then `other`'s new
    /// variables in `other`'s order.
    pub fn union(&self, other: &VarSet) -> VarSet {
        let mut names = self.names.clone();
        for n in &other.names {
            if !names.contains(n) {
                names.push(n.clone());
            }
        }
        VarSet { names }
    }

    /// One generator polynomial per variable, in order.
    pub fn gens(&self) -> Vec<MPoly> {
        self.names
            .iter()
            .map(|n| MPoly::var(self.clone(), n).expect("name from this varset"))
            .collect()
    }

    /// Constant polynomial over this variable set.
    pub fn constant(&self, value: impl Into<Int>) -> MPoly {
        MPoly::constant(self.clone(), value.into())
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Exponent vector, ordered graded-lex.  Vectors of different lengths compare
/// as if zero-padded on the right.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub(crate) Vec<u32>);

impl Monomial {
    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let n = self.0.len().max(other.0.len());
        let mut out = vec![0u32; n];
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = self.0.get(i).copied().unwrap_or(0) + other.0.get(i).copied().unwrap_or(0);
        }
        Monomial(out)
    }

    /// Componentwise divisibility.
    fn divides(&self, other: &Monomial) -> bool {
        self.0
            .iter()
            .enumerate()
            .all(|(i, &e)| e <= other.0.get(i).copied().unwrap_or(0))
    }

    fn div(&self, other: &Monomial) -> Monomial {
        let mut out = self.0.clone();
        for (i, &e) in other.0.iter().enumerate() {
            out[i] -= e;
        }
        Monomial(out)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| {
                let n = self.0.len().max(other.0.len());
                for i in 0..n {
                    let a = self.0.get(i).copied().unwrap_or(0);
                    let b = other.0.get(i).copied().unwrap_or(0);
                    match a.cmp(&b) {
                        Ordering::Equal => continue,
                        // larger exponent on an earlier variable = greater
                        ord => return ord,
                    }
                }
                Ordering::Equal
            })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial over Z.
#[derive(Debug, Clone)]
pub struct MPoly {
    vars: VarSet,
    /// Invariant: no zero coefficients; keys have length `vars.len()`.
    terms: BTreeMap<Monomial, Int>,
}

impl MPoly {
    pub fn zero(vars: VarSet) -> MPoly {
        MPoly { vars, terms: BTreeMap::new() }
    }

    pub fn constant(vars: VarSet, value: Int) -> MPoly {
        let mut p = MPoly::zero(vars);
        if !value.is_zero() {
            let n = p.vars.len();
            p.terms.insert(Monomial(vec![0; n]), value);
        }
        p
    }

    pub fn var(vars: VarSet, name: &str) -> Result<MPoly> {
        let idx = vars
            .index_of(name)
            .ok_or_else(|| Error::domain(format!("unknown variable {name:?}")))?;
        let mut exps = vec![0u32; vars.len()];
        exps[idx] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(Monomial(exps), Int::one());
        Ok(MPoly { vars, terms })
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Int)> {
        self.terms.iter()
    }

    /// Graded-lex leading term.
    pub fn leading(&self) -> Option<(&Monomial, &Int)> {
        self.terms.iter().next_back()
    }

    /// Leading coefficient (zero for the zero polynomial).
    pub fn leading_coeff(&self) -> Int {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(Int::zero)
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.keys().map(|m| m.total_degree()).max().unwrap_or(0)
    }

    /// Degree in one variable (0 if the variable is absent or unknown).
    pub fn degree_in(&self, name: &str) -> u32 {
        match self.vars.index_of(name) {
            None => 0,
            Some(i) => self
                .terms
                .keys()
                .map(|m| m.0.get(i).copied().unwrap_or(0))
                .max()
                .unwrap_or(0),
        }
    }

    /// Coefficient of the monomial given as `(name, exponent)` pairs
    /// (unlisted variables at exponent 0).
    pub fn coeff(&self, mono: &[(&str, u32)]) -> Result<Int> {
        let mut exps = vec![0u32; self.vars.len()];
        for (name, e) in mono {
            let idx = self
                .vars
                .index_of(name)
                .ok_or_else(|| Error::domain(format!("unknown variable {name:?}")))?;
            exps[idx] = *e;
        }
        Ok(self.terms.get(&Monomial(exps)).cloned().unwrap_or_else(Int::zero))
    }

    fn insert_term(&mut self, mono: Monomial, coeff: Int) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(mono) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Re-expresses the polynomial over `target`, which must contain every
    /// variable this polynomial actually uses.
    pub fn remap(&self, target: &VarSet) -> Result<MPoly> {
        if &self.vars == target {
            return Ok(self.clone());
        }
        let map: Vec<Option<usize>> = self
            .vars
            .names
            .iter()
            .map(|n| target.index_of(n))
            .collect();
        let mut out = MPoly::zero(target.clone());
        for (mono, coeff) in &self.terms {
            let mut exps = vec![0u32; target.len()];
            for (i, &e) in mono.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => exps[j] = e,
                    None => {
                        return Err(Error::domain(format!(
                            "variable {:?} not present in target varset",
                            self.vars.names[i]
                        )))
                    }
                }
            }
            out.terms.insert(Monomial(exps), coeff.clone());
        }
        Ok(out)
    }

    /// Drops variables that appear in no term; keeps relative order.
    pub fn prune_vars(&self) -> MPoly {
        let used: Vec<bool> = (0..self.vars.len())
            .map(|i| self.terms.keys().any(|m| m.0[i] != 0))
            .collect();
        if used.iter().all(|&u| u) {
            return self.clone();
        }
        let names: Vec<String> = self
            .vars
            .names
            .iter()
            .zip(&used)
            .filter(|(_, &u)| u)
            .map(|(n, _)| n.clone())
            .collect();
        let target = VarSet { names };
        self.remap(&target).expect("pruned varset keeps used variables")
    }

    fn aligned(a: &MPoly, b: &MPoly) -> (MPoly, MPoly) {
        if a.vars == b.vars {
            (a.clone(), b.clone())
        } else {
            let u = a.vars.union(&b.vars);
            (
                a.remap(&u).expect("union contains lhs vars"),
                b.remap(&u).expect("union contains rhs vars"),
            )
        }
    }

    pub fn neg(&self) -> MPoly {
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        let (mut a, b) = MPoly::aligned(self, other);
        for (m, c) in b.terms {
            a.insert_term(m, c);
        }
        a
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        let (mut a, b) = MPoly::aligned(self, other);
        for (m, c) in b.terms {
            a.insert_term(m, -c);
        }
        a
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        let (a, b) = MPoly::aligned(self, other);
        let mut out = MPoly::zero(a.vars.clone());
        // iterate the smaller operand outermost
        let (outer, inner) = if a.terms.len() <= b.terms.len() { (&a, &b) } else { (&b, &a) };
        for (m1, c1) in &outer.terms {
            for (m2, c2) in &inner.terms {
                out.insert_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn mul_scalar(&self, k: &Int) -> MPoly {
        if k.is_zero() {
            return MPoly::zero(self.vars.clone());
        }
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut result = MPoly::constant(self.vars.clone(), Int::one());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Simultaneous substitution of polynomials for variables.  Unbound
    /// variables pass through, and bindings for variables this polynomial
    /// does not mention are ignored; the result lives on the union of the
    /// variable sets that take part.
    pub fn substitute(&self, bindings: &[(&str, MPoly)]) -> Result<MPoly> {
        let mut target = self.vars.clone();
        for (name, poly) in bindings {
            if self.vars.index_of(name).is_some() {
                target = target.union(&poly.vars);
            }
        }
        // binding index per variable of self
        let mut bound: Vec<Option<MPoly>> = vec![None; self.vars.len()];
        for (name, poly) in bindings {
            let Some(idx) = self.vars.index_of(name) else {
                continue;
            };
            if bound[idx].is_some() {
                return Err(Error::domain(format!("variable {name:?} bound twice")));
            }
            bound[idx] = Some(poly.remap(&target)?);
        }
        // lazily computed powers of each bound polynomial
        let mut powers: Vec<Vec<MPoly>> = bound
            .iter()
            .map(|b| match b {
                Some(_) => vec![MPoly::constant(target.clone(), Int::one())],
                None => Vec::new(),
            })
            .collect();
        let mut out = MPoly::zero(target.clone());
        for (mono, coeff) in &self.terms {
            let mut residual = vec![0u32; target.len()];
            let mut acc: Option<MPoly> = None;
            for (i, &e) in mono.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match &bound[i] {
                    None => {
                        let j = target.index_of(&self.vars.names[i]).unwrap();
                        residual[j] = e;
                    }
                    Some(b) => {
                        let cache = &mut powers[i];
                        while cache.len() <= e as usize {
                            let next = cache.last().unwrap().mul(b);
                            cache.push(next);
                        }
                        let pw = &cache[e as usize];
                        acc = Some(match acc {
                            None => pw.clone(),
                            Some(a) => a.mul(pw),
                        });
                    }
                }
            }
            let mut term = acc.unwrap_or_else(|| MPoly::constant(target.clone(), Int::one()));
            term = term.mul_monomial(&Monomial(residual), coeff);
            for (m, c) in term.terms {
                out.insert_term(m, c);
            }
        }
        Ok(out)
    }

    fn mul_monomial(&self, mono: &Monomial, coeff: &Int) -> MPoly {
        let mut out = MPoly::zero(self.vars.clone());
        for (m, c) in &self.terms {
            out.terms.insert(m.mul(mono), c * coeff);
        }
        out
    }

    /// Substitutes integer constants for variables.
    pub fn substitute_ints(&self, values: &[(&str, Int)]) -> Result<MPoly> {
        let bindings: Vec<(&str, MPoly)> = values
            .iter()
            .map(|(n, v)| (*n, MPoly::constant(self.vars.clone(), v.clone())))
            .collect();
        self.substitute(&bindings)
    }

    /// Denominator-clearing rational substitution: returns
    /// `(den^D * f(var -> num/den), D)` with `D = degree_in(var)`, computed
    /// entirely over Z.  Callers divide out the even part of `den^D` (or check
    /// exact divisibility) as the surrounding identity dictates.
    pub fn substitute_cleared(&self, var: &str, num: &MPoly, den: &Int) -> Result<(MPoly, u32)> {
        if den.is_zero() {
            return Err(Error::domain("zero denominator in substitution"));
        }
        let idx = self
            .vars
            .index_of(var)
            .ok_or_else(|| Error::domain(format!("substituted variable {var:?} not in varset")))?;
        let d = self.degree_in(var);
        let target = self.vars.union(&num.vars);
        let num = num.remap(&target)?;
        // powers of num and den
        let mut num_pows = vec![MPoly::constant(target.clone(), Int::one())];
        for _ in 0..d {
            num_pows.push(num_pows.last().unwrap().mul(&num));
        }
        let mut den_pows = vec![Int::one()];
        for _ in 0..d {
            den_pows.push(den_pows.last().unwrap() * den);
        }
        let mut out = MPoly::zero(target.clone());
        for (mono, coeff) in &self.terms {
            let e = mono.0[idx] as usize;
            let mut residual_exps = vec![0u32; target.len()];
            for (i, &ex) in mono.0.iter().enumerate() {
                if i == idx || ex == 0 {
                    continue;
                }
                let j = target.index_of(&self.vars.names[i]).unwrap();
                residual_exps[j] = ex;
            }
            let scaled = &den_pows[d as usize - e] * coeff;
            let term = num_pows[e].mul_monomial(&Monomial(residual_exps), &scaled);
            for (m, c) in term.terms {
                out.insert_term(m, c);
            }
        }
        Ok((out, d))
    }

    /// Rational substitution that must produce an integer polynomial:
    /// `f(var -> num/den)`, erroring if the denominator does not clear.
    pub fn substitute_rational_exact(&self, var: &str, num: &MPoly, den: &Int) -> Result<MPoly> {
        let (cleared, d) = self.substitute_cleared(var, num, den)?;
        let mut den_pow = Int::one();
        for _ in 0..d {
            den_pow = &den_pow * den;
        }
        cleared.div_exact_scalar(&den_pow)
    }

    /// Evaluates at an integer point; every variable that actually occurs
    /// must be assigned, while bindings for other names are ignored.
    pub fn eval(&self, values: &[(&str, Int)]) -> Result<Int> {
        let mut assignment: Vec<Option<&Int>> = vec![None; self.vars.len()];
        for (name, v) in values {
            if let Some(i) = self.vars.index_of(name) {
                assignment[i] = Some(v);
            }
        }
        for (i, a) in assignment.iter().enumerate() {
            if a.is_none() && self.degree_in(&self.vars.names[i]) > 0 {
                return Err(Error::domain(format!(
                    "variable {:?} not assigned",
                    self.vars.names[i]
                )));
            }
        }
        let mut pow_cache: Vec<BTreeMap<u32, Int>> = vec![BTreeMap::new(); self.vars.len()];
        let mut total = Int::zero();
        for (mono, coeff) in &self.terms {
            let mut term = coeff.clone();
            for (i, &e) in mono.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let base = assignment[i].expect("checked above");
                let cached = pow_cache[i].entry(e).or_insert_with(|| base.pow(e));
                term *= &*cached;
            }
            total += term;
        }
        Ok(total)
    }

    /// Gcd of all coefficients, `>= 0` (0 for the zero polynomial).
    pub fn content(&self) -> Int {
        use num_integer::Integer as _;
        let mut g = Int::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// `f / content(f)`, sign-normalized so the graded-lex leading coefficient
    /// is positive; thus `f = sign(lc(f)) * content(f) * primitive_part(f)`.
    pub fn primitive_part(&self) -> MPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.leading_coeff().is_negative() {
            c = -c;
        }
        self.div_exact_scalar(&c).expect("content divides all coefficients")
    }

    /// Minimum p-adic valuation over all coefficients (`Infinite` for 0).
    pub fn phi_p(&self, p: &Int) -> Result<Valuation> {
        nu_p(&self.content(), p)
    }

    /// Divides every coefficient by `k`, erroring with the offending monomial.
    pub fn div_exact_scalar(&self, k: &Int) -> Result<MPoly> {
        if k.is_zero() {
            return Err(Error::domain("division by zero"));
        }
        let mut out = MPoly::zero(self.vars.clone());
        for (m, c) in &self.terms {
            use num_integer::Integer as _;
            let (q, r) = c.div_rem(k);
            if !r.is_zero() {
                return Err(Error::NotDivisible(format!(
                    "coefficient {c} of {} not divisible by {k}",
                    parse::monomial_string(&self.vars, m)
                )));
            }
            out.terms.insert(m.clone(), q);
        }
        Ok(out)
    }
}

impl PartialEq for MPoly {
    /// Mathematical equality: representations are aligned to the union
    /// variable set before comparing.
    fn eq(&self, other: &Self) -> bool {
        if self.vars == other.vars {
            return self.terms == other.terms;
        }
        let (a, b) = MPoly::aligned(self, other);
        a.terms == b.terms
    }
}

impl Eq for MPoly {}

macro_rules! impl_binop {
    ($trait:ident, $method:ident, $imp:ident) => {
        impl std::ops::$trait for &MPoly {
            type Output = MPoly;
            fn $method(self, rhs: &MPoly) -> MPoly {
                self.$imp(rhs)
            }
        }
        impl std::ops::$trait for MPoly {
            type Output = MPoly;
            fn $method(self, rhs: MPoly) -> MPoly {
                (&self).$imp(&rhs)
            }
        }
        impl std::ops::$trait<&MPoly> for MPoly {
            type Output = MPoly;
            fn $method(self, rhs: &MPoly) -> MPoly {
                (&self).$imp(rhs)
            }
        }
        impl std::ops::$trait<MPoly> for &MPoly {
            type Output = MPoly;
            fn $method(self, rhs: MPoly) -> MPoly {
                self.$imp(&rhs)
            }
        }
    };
}

impl_binop!(Add, add, add);
impl_binop!(Sub, sub, sub);
impl_binop!(Mul, mul, mul);

impl std::ops::Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly::neg(self)
    }
}

impl std::ops::Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly::neg(&self)
    }
}
