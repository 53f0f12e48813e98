//! Bounded exhaustive search for primitive integer solutions of
//! `T² = n·(a·X₁⁵ + b·X₂⁵ + c·X₃⁵ + d·X₄⁵)`.
//!
//! Candidates are enumerated in shells of increasing norm (either
//! `max|Xᵢ|` or `Σ|Xᵢ|`), lexicographically within each shell, so the first
//! hit is a minimal-norm, reproducible witness.  Coordinates whose weight
//! is zero are not enumerated — the three-term equation is searched over
//! three coordinates.  The inner loop works on `i128` values against a
//! precomputed fifth-power table with a residue filter before each exact
//! square-root test; every accepted tuple is re-verified in exact big
//! integers before it is reported.
//!
//! Parallelism: within a shell the first coordinate's range is partitioned
//! across workers; each worker emits its hits in enumeration order and the
//! per-value results are concatenated in range order, so the report is
//! identical for any worker count.  Shells are processed sequentially,
//! which is what makes `stop = First` well-defined: the shell containing
//! the first hit is always completed and its lexicographically least hit is
//! returned.  The candidate budget is enforced at shell granularity —
//! a shell is either fully enumerated or not started — so a budget-limited
//! report is deterministic too, and is flagged incomplete.

use std::path::Path;
use std::sync::atomic::{AtomicU64, Ordering};
use std::time::Instant;

use num_integer::{binomial, Integer, Roots};
use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::json;

use crate::arith::{int, Int};
use crate::quintics::{IntSolution, QuinticEquation};
use crate::{Error, Result};

/// Norm defining the enumeration shells.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    /// Shells of constant `max|Xᵢ|`.
    MaxAbs,
    /// Shells of constant `Σ|Xᵢ|`.
    AbsSum,
}

/// Whether coordinates range over all integers or only the non-negatives.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignMode {
    All,
    Nonneg,
}

/// Whether to stop at the first hit or enumerate the whole region.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopRule {
    First,
    All,
}

/// Filters for degenerate hits.  A hit is suppressed when a flagged
/// condition holds; the flags do not affect which tuples are enumerated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Exclusions {
    /// Reject hits with a zero coordinate (among the searched coordinates).
    pub zero_coordinate: bool,
    /// Reject hits in which a proper nonempty subset of the weighted fifth
    /// powers already sums to zero — such a hit collapses to a solution of
    /// a shorter equation.
    pub vanishing_subsum: bool,
    /// Reject hits with `Xᵢ² = Xⱼ²` for some `i ≠ j` — fifth powers with
    /// equal squares differ only by sign, which again collapses terms.
    pub equal_squares: bool,
}

impl Exclusions {
    /// All degeneracy filters switched on.
    pub fn all() -> Exclusions {
        Exclusions { zero_coordinate: true, vanishing_subsum: true, equal_squares: true }
    }
}

/// Guard rail applied when a task does not set an explicit candidate
/// budget.
pub const DEFAULT_CANDIDATE_BUDGET: u64 = 100_000_000;

/// A bounded search region plus acceptance filters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchTask {
    pub eq: QuinticEquation,
    /// Largest shell norm to enumerate (shells run from 1 to `bound`).
    pub bound: Int,
    pub bound_kind: BoundKind,
    pub sign_mode: SignMode,
    pub stop: StopRule,
    pub primitive_only: bool,
    pub exclusions: Exclusions,
    /// Candidate budget; `None` applies [`DEFAULT_CANDIDATE_BUDGET`].
    /// Enforced before each shell: a shell whose size would overrun the
    /// budget is not started and the report is flagged incomplete.
    pub budget: Option<u64>,
}

impl SearchTask {
    /// A full enumeration task with every degeneracy filter on and
    /// primitivity required — the configuration that yields tables of
    /// genuinely distinct primitive solutions.
    pub fn new(eq: QuinticEquation, bound: Int) -> Result<SearchTask> {
        if bound < int(1) {
            return Err(Error::domain("the search bound must be at least 1"));
        }
        Ok(SearchTask {
            eq,
            bound,
            bound_kind: BoundKind::MaxAbs,
            sign_mode: SignMode::All,
            stop: StopRule::All,
            primitive_only: true,
            exclusions: Exclusions::all(),
            budget: None,
        })
    }
}

/// Search outcome: the verified hits plus enumeration statistics.
#[derive(Debug, Clone)]
pub struct SearchReport {
    pub task: SearchTask,
    /// Hits in enumeration order (shell by shell, lexicographic within a
    /// shell); every entry has been re-verified in exact arithmetic.
    pub solutions: Vec<IntSolution>,
    /// Number of candidate tuples enumerated.
    pub candidates: u64,
    /// Number of exact square-root tests performed (candidates surviving
    /// the residue filter).
    pub squares_tested: u64,
    /// Norm of the last fully enumerated shell (0 when none).
    pub last_shell: u64,
    pub wall_ms: u128,
    /// True only when `stop = All` and every shell up to the bound was
    /// enumerated within budget.
    pub complete: bool,
}

/// Exact check that `(xs, t)` solves the equation and that the coordinates
/// are coprime — the two conditions a reported search hit must satisfy.
pub fn verify_solution(eq: &QuinticEquation, xs: &[Int], t: &Int) -> bool {
    let sol = IntSolution { xs: xs.to_vec(), t: t.clone() };
    sol.check(eq).unwrap_or(false) && sol.is_primitive()
}

// ---------------------------------------------------------------------------
// Fast-path preparation
// ---------------------------------------------------------------------------

/// The equation lowered to `i128`, with only the nonzero-weight coordinates
/// kept.
struct FastEq {
    /// `(slot, weight)` for each searched coordinate, in slot order.
    active: Vec<(usize, i128)>,
    /// `n_scale` as an exact fraction.
    n_num: i128,
    n_den: i128,
    /// Length of the emitted coordinate vector: 3 when the fourth weight is
    /// zero, otherwise 4.
    emit_len: usize,
}

impl FastEq {
    fn prepare(eq: &QuinticEquation, bound: u32) -> Result<FastEq> {
        let weights = [&eq.a, &eq.b, &eq.c, &eq.d];
        let mut active = Vec::new();
        for (slot, w) in weights.iter().enumerate() {
            if !w.is_zero() {
                let wv = w.to_i128().ok_or_else(|| {
                    Error::domain(format!("weight {w} does not fit the fast integer path"))
                })?;
                active.push((slot, wv));
            }
        }
        if active.is_empty() {
            return Err(Error::domain("all weights are zero"));
        }
        let n_num = eq.n_scale.numer().to_i128().ok_or_else(|| {
            Error::domain("the overall scale does not fit the fast integer path")
        })?;
        let n_den = eq.n_scale.denom().to_i128().ok_or_else(|| {
            Error::domain("the overall scale does not fit the fast integer path")
        })?;
        // Overflow guard: |Σ wᵢ·Xᵢ⁵| · |n_num| must stay well inside i128.
        let mut extreme = Int::zero();
        for (_, w) in &active {
            extreme += Int::from(w.abs()) * Int::from(bound).pow(5);
        }
        extreme *= Int::from(n_num.abs().max(1));
        if extreme > Int::from(i128::MAX / 4) {
            return Err(Error::domain(format!(
                "bound {bound} is too large for the fast integer path with these weights"
            )));
        }
        let emit_len = if eq.d.is_zero() { 3 } else { 4 };
        Ok(FastEq { active, n_num, n_den, emit_len })
    }
}

/// Quadratic-residue masks modulo 64 and 63 — a cheap rejection test that
/// filters out roughly 94% of non-squares before the exact root.
struct SquareFilter {
    m64: [bool; 64],
    m63: [bool; 63],
}

impl SquareFilter {
    fn new() -> SquareFilter {
        let mut m64 = [false; 64];
        let mut m63 = [false; 63];
        for r in 0i128..64 {
            m64[((r * r) % 64) as usize] = true;
        }
        for r in 0i128..63 {
            m63[((r * r) % 63) as usize] = true;
        }
        SquareFilter { m64, m63 }
    }

    /// Returns `Some(root)` when `v` is a perfect square.
    fn exact_root(&self, v: i128, squares_tested: &mut u64) -> Option<i128> {
        if v < 0 {
            return None;
        }
        if !self.m64[(v & 63) as usize] || !self.m63[(v % 63) as usize] {
            return None;
        }
        *squares_tested += 1;
        let r = v.sqrt();
        (r * r == v).then_some(r)
    }
}

// ---------------------------------------------------------------------------
// Shell enumeration
// ---------------------------------------------------------------------------

/// Number of `k`-tuples on the shell of norm `n`, used to enforce the
/// candidate budget without starting the shell.
fn shell_size(kind: BoundKind, sign: SignMode, k: u32, n: u64) -> u128 {
    let n = n as u128;
    let k_u = k as u128;
    match (kind, sign) {
        (BoundKind::MaxAbs, SignMode::All) => {
            (2 * n + 1).pow(k) - (2 * n - 1).pow(k)
        }
        (BoundKind::MaxAbs, SignMode::Nonneg) => (n + 1).pow(k) - n.pow(k),
        (BoundKind::AbsSum, SignMode::All) => {
            // Choose the j nonzero slots, their signs, and a composition of
            // n into j positive parts.
            let mut total: u128 = 0;
            for j in 1..=k.min(n as u32) {
                let c1 = binomial(Int::from(k), Int::from(j));
                let c2 = binomial(Int::from(n as u64 - 1), Int::from(j - 1));
                let term = (c1 * c2 * Int::from(2u32).pow(j)).to_u128().expect("small");
                total += term;
            }
            total
        }
        (BoundKind::AbsSum, SignMode::Nonneg) => {
            binomial(Int::from(n + k_u - 1), Int::from(k_u - 1))
                .to_u128()
                .expect("small")
        }
    }
}

/// Enumerates, in lexicographic order, the completions of `prefix` to a
/// shell tuple, calling `visit` on each full tuple.
fn complete_tuple(
    kind: BoundKind,
    sign: SignMode,
    n: i64,
    vals: &mut Vec<i64>,
    k: usize,
    saturated: bool,
    remaining: i64,
    visit: &mut impl FnMut(&[i64]),
) {
    if vals.len() == k {
        visit(vals);
        return;
    }
    let last = vals.len() + 1 == k;
    match kind {
        BoundKind::MaxAbs => {
            let lo = if sign == SignMode::All { -n } else { 0 };
            if last && !saturated {
                // The final coordinate must realize the norm.
                if sign == SignMode::All {
                    for v in [-n, n] {
                        vals.push(v);
                        visit(vals);
                        vals.pop();
                    }
                } else {
                    vals.push(n);
                    visit(vals);
                    vals.pop();
                }
            } else {
                for v in lo..=n {
                    vals.push(v);
                    complete_tuple(kind, sign, n, vals, k, saturated || v.abs() == n, remaining, visit);
                    vals.pop();
                }
            }
        }
        BoundKind::AbsSum => {
            if last {
                if sign == SignMode::All && remaining > 0 {
                    for v in [-remaining, remaining] {
                        vals.push(v);
                        visit(vals);
                        vals.pop();
                    }
                } else {
                    vals.push(remaining);
                    visit(vals);
                    vals.pop();
                }
            } else {
                let lo = if sign == SignMode::All { -remaining } else { 0 };
                for v in lo..=remaining {
                    vals.push(v);
                    complete_tuple(kind, sign, n, vals, k, saturated, remaining - v.abs(), visit);
                    vals.pop();
                }
            }
        }
    }
}

/// First-coordinate values for a shell, in ascending order.
fn first_coordinate_range(kind: BoundKind, sign: SignMode, k: usize, n: i64) -> Vec<i64> {
    let lo = if sign == SignMode::All { -n } else { 0 };
    match kind {
        BoundKind::MaxAbs => {
            if k == 1 {
                if sign == SignMode::All {
                    vec![-n, n]
                } else {
                    vec![n]
                }
            } else {
                (lo..=n).collect()
            }
        }
        BoundKind::AbsSum => {
            if k == 1 {
                if sign == SignMode::All {
                    vec![-n, n]
                } else {
                    vec![n]
                }
            } else {
                (lo..=n).collect()
            }
        }
    }
}

/// A verified hit still carrying its enumeration key.
struct Hit {
    key: Vec<i64>,
    sol: IntSolution,
}

/// Enumerates one shell below one fixed first coordinate and returns the
/// hits in enumeration order.
#[allow(clippy::too_many_arguments)]
fn scan_subtree(
    task: &SearchTask,
    fast: &FastEq,
    pow5: &[i128],
    filter: &SquareFilter,
    n: i64,
    first: i64,
    candidates: &AtomicU64,
    squares: &AtomicU64,
) -> Result<Vec<Hit>> {
    let k = fast.active.len();
    let mut hits = Vec::new();
    let mut local_candidates = 0u64;
    let mut local_squares = 0u64;
    let mut error: Option<Error> = None;
    let mut vals = vec![first];
    let saturated = first.abs() == n;
    let remaining = n - first.abs();
    let mut visit = |tuple: &[i64]| {
        local_candidates += 1;
        if error.is_some() {
            return;
        }
        // Weighted fifth-power sum over the active coordinates.
        let mut s: i128 = 0;
        for (pos, (_, w)) in fast.active.iter().enumerate() {
            let x = tuple[pos];
            let p5 = pow5[x.unsigned_abs() as usize];
            s += w * if x < 0 { -p5 } else { p5 };
        }
        // t² = n_scale · s, exactly.
        let scaled = s * fast.n_num;
        if scaled % fast.n_den != 0 {
            return;
        }
        let Some(t) = filter.exact_root(scaled / fast.n_den, &mut local_squares) else {
            return;
        };
        // Degeneracy filters.
        let ex = &task.exclusions;
        if ex.zero_coordinate && tuple.iter().any(|v| *v == 0) {
            return;
        }
        if ex.equal_squares {
            for i in 0..k {
                for j in (i + 1)..k {
                    if tuple[i].abs() == tuple[j].abs() {
                        return;
                    }
                }
            }
        }
        if ex.vanishing_subsum && k > 1 {
            let terms: Vec<i128> = fast
                .active
                .iter()
                .zip(tuple)
                .map(|((_, w), x)| {
                    let p5 = pow5[x.unsigned_abs() as usize];
                    w * if *x < 0 { -p5 } else { p5 }
                })
                .collect();
            for mask in 1..((1u32 << k) - 1) {
                let sub: i128 = (0..k)
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| terms[i])
                    .sum();
                if sub == 0 {
                    return;
                }
            }
        }
        if task.primitive_only {
            let mut g: u64 = 0;
            for v in tuple {
                g = g.gcd(&v.unsigned_abs());
            }
            if g != 1 {
                return;
            }
        }
        // Exact re-verification before reporting.
        let mut xs = vec![Int::zero(); fast.emit_len];
        for (pos, (slot, _)) in fast.active.iter().enumerate() {
            xs[*slot] = Int::from(tuple[pos]);
        }
        let sol = IntSolution { xs, t: Int::from(t) };
        match sol.check(&task.eq) {
            Ok(true) => hits.push(Hit { key: tuple.to_vec(), sol }),
            Ok(false) => {
                error = Some(Error::Internal(format!(
                    "fast path accepted {tuple:?} but exact verification failed"
                )))
            }
            Err(e) => error = Some(e),
        }
    };
    complete_tuple(
        task.bound_kind,
        task.sign_mode,
        n,
        &mut vals,
        k,
        saturated,
        remaining,
        &mut visit,
    );
    drop(visit);
    candidates.fetch_add(local_candidates, Ordering::Relaxed);
    squares.fetch_add(local_squares, Ordering::Relaxed);
    match error {
        Some(e) => Err(e),
        None => Ok(hits),
    }
}

// ---------------------------------------------------------------------------
// Drivers
// ---------------------------------------------------------------------------

/// Runs a search with the worker count taken from the `QUINTIC_WORKERS`
/// environment variable (the process default when unset).
pub fn search(task: &SearchTask) -> Result<SearchReport> {
    search_with_workers(task, workers_from_env())
}

/// Worker count requested via `QUINTIC_WORKERS`; 0 means "use the process
/// default".
pub fn workers_from_env() -> usize {
    std::env::var("QUINTIC_WORKERS")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(0)
}

/// Runs a search with an explicit worker count (0 = process default).  The
/// report is identical for every worker count.
pub fn search_with_workers(task: &SearchTask, workers: usize) -> Result<SearchReport> {
    run_shells(task, workers, 0, ShellState::default())
}

/// Statistics carried across shells (and across checkpoint resumes).
#[derive(Default, Clone)]
struct ShellState {
    solutions: Vec<IntSolution>,
    candidates: u64,
    squares_tested: u64,
}

fn run_shells(
    task: &SearchTask,
    workers: usize,
    first_shell_after: u64,
    state: ShellState,
) -> Result<SearchReport> {
    run_shells_with(task, workers, first_shell_after, state, |_, _| Ok(()))
}

fn run_shells_with(
    task: &SearchTask,
    workers: usize,
    first_shell_after: u64,
    mut state: ShellState,
    mut on_shell_done: impl FnMut(u64, &ShellState) -> Result<()>,
) -> Result<SearchReport> {
    let started = Instant::now();
    if task.bound < int(1) {
        return Err(Error::domain("the search bound must be at least 1"));
    }
    let bound = task.bound.to_u32().ok_or_else(|| {
        Error::domain("the search bound does not fit the fast integer path")
    })?;
    let fast = FastEq::prepare(&task.eq, bound)?;
    let k = fast.active.len();
    let pow5: Vec<i128> = (0..=bound as i128).map(|v| v.pow(5)).collect();
    let filter = SquareFilter::new();
    let budget = task.budget.unwrap_or(DEFAULT_CANDIDATE_BUDGET);

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;

    let mut last_shell = first_shell_after;
    let mut complete = true;
    for n in (first_shell_after + 1)..=u64::from(bound) {
        let size = shell_size(task.bound_kind, task.sign_mode, k as u32, n);
        if u128::from(state.candidates) + size > u128::from(budget) {
            complete = false;
            break;
        }
        let candidates = AtomicU64::new(0);
        let squares = AtomicU64::new(0);
        let firsts = first_coordinate_range(task.bound_kind, task.sign_mode, k, n as i64);
        let chunks: Vec<Result<Vec<Hit>>> = pool.install(|| {
            use rayon::prelude::*;
            firsts
                .par_iter()
                .map(|first| {
                    scan_subtree(task, &fast, &pow5, &filter, n as i64, *first, &candidates, &squares)
                })
                .collect()
        });
        let mut shell_hits = Vec::new();
        for chunk in chunks {
            shell_hits.extend(chunk?);
        }
        // Defensive: enumeration order is concatenation order, but the
        // merge contract is sorted order, so enforce it.
        shell_hits.sort_by(|a, b| a.key.cmp(&b.key));
        state.candidates += candidates.load(Ordering::Relaxed);
        state.squares_tested += squares.load(Ordering::Relaxed);
        let had_hit = !shell_hits.is_empty();
        state
            .solutions
            .extend(shell_hits.into_iter().map(|h| h.sol));
        last_shell = n;
        on_shell_done(n, &state)?;
        if task.stop == StopRule::First && had_hit {
            // Earlier shells were hit-free (or we would have stopped), so
            // the first hit in enumeration order is the head of the list.
            state.solutions.truncate(1);
            complete = false;
            break;
        }
    }
    Ok(SearchReport {
        task: task.clone(),
        solutions: state.solutions,
        candidates: state.candidates,
        squares_tested: state.squares_tested,
        last_shell,
        wall_ms: started.elapsed().as_millis(),
        complete: complete && task.stop == StopRule::All,
    })
}

// ---------------------------------------------------------------------------
// Checkpoints
// ---------------------------------------------------------------------------

fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in bytes {
        h ^= u64::from(*b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

fn task_fingerprint(task: &SearchTask) -> String {
    let desc = format!(
        "{}|{}|{}|{}|{}|{:?}|{:?}|{:?}|{}|{:?}|{:?}",
        task.eq.a,
        task.eq.b,
        task.eq.c,
        task.eq.d,
        task.eq.n_scale,
        task.bound_kind,
        task.sign_mode,
        task.stop,
        task.primitive_only,
        task.exclusions,
        task.budget,
    );
    format!("{:016x}", fnv1a64(desc.as_bytes()))
}

fn state_to_json(task: &SearchTask, shell: u64, state: &ShellState) -> serde_json::Value {
    json!({
        "task_hash": task_fingerprint(task),
        "bound": task.bound.to_string(),
        "last_completed_shell": shell,
        "candidates": state.candidates,
        "squares_tested": state.squares_tested,
        "solutions": state
            .solutions
            .iter()
            .map(|s| json!({
                "xs": s.xs.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "t": s.t.to_string(),
            }))
            .collect::<Vec<_>>(),
    })
}

fn state_from_json(task: &SearchTask, v: &serde_json::Value) -> Result<(u64, ShellState)> {
    let hash = v["task_hash"].as_str().unwrap_or_default();
    if hash != task_fingerprint(task) {
        return Err(Error::CheckpointMismatch(format!(
            "checkpoint was written by a different task (hash {hash})"
        )));
    }
    let shell = v["last_completed_shell"]
        .as_u64()
        .ok_or_else(|| Error::CheckpointMismatch("missing last_completed_shell".into()))?;
    let mut state = ShellState {
        candidates: v["candidates"].as_u64().unwrap_or(0),
        squares_tested: v["squares_tested"].as_u64().unwrap_or(0),
        solutions: Vec::new(),
    };
    for s in v["solutions"].as_array().map(Vec::as_slice).unwrap_or(&[]) {
        let xs = s["xs"]
            .as_array()
            .map(Vec::as_slice)
            .unwrap_or(&[])
            .iter()
            .map(|x| crate::arith::parse_int(x.as_str().unwrap_or("")))
            .collect::<Result<Vec<_>>>()?;
        let t = crate::arith::parse_int(s["t"].as_str().unwrap_or(""))?;
        state.solutions.push(IntSolution { xs, t });
    }
    Ok((shell, state))
}

/// Runs a search, persisting progress after every completed shell; when the
/// checkpoint file already holds progress for the same task, enumeration
/// resumes after the last completed shell instead of restarting.
pub fn search_resumable(
    task: &SearchTask,
    checkpoint: &Path,
    workers: usize,
) -> Result<SearchReport> {
    let (start_after, state) = if checkpoint.exists() {
        let text = std::fs::read_to_string(checkpoint)?;
        let v: serde_json::Value = serde_json::from_str(&text)?;
        state_from_json(task, &v)?
    } else {
        (0, ShellState::default())
    };
    run_shells_with(task, workers, start_after, state, |shell, st| {
        let v = state_to_json(task, shell, st);
        std::fs::write(checkpoint, serde_json::to_string_pretty(&v)?)?;
        Ok(())
    })
}

// ---------------------------------------------------------------------------
// Coefficient sweep
// ---------------------------------------------------------------------------

/// Options for sweeping weight tuples `0 < a ≤ b ≤ c ≤ a_max`,
/// `0 ≤ d ≤ d_max`, searching each equation `T² = aX₁⁵+bX₂⁵+cX₃⁵+dX₄⁵`
/// for one primitive solution.
#[derive(Debug, Clone)]
pub struct SweepOptions {
    pub a_max: u32,
    pub d_max: u32,
    /// Per-tuple `max|Xᵢ|` search bound.
    pub bound: u32,
    /// Per-tuple candidate budget.
    pub budget: u64,
    pub sign_mode: SignMode,
    pub workers: usize,
}

impl Default for SweepOptions {
    fn default() -> SweepOptions {
        SweepOptions {
            a_max: 10,
            d_max: 10,
            bound: 100,
            budget: 2_000_000,
            sign_mode: SignMode::All,
            workers: 0,
        }
    }
}

/// One sweep row: the weight tuple and the first primitive solution found
/// within budget, if any.
#[derive(Debug, Clone)]
pub struct SweepRow {
    pub coeffs: [u32; 4],
    pub solution: Option<IntSolution>,
    /// Shell norm at which the solution was found.
    pub norm: Option<u64>,
    pub wall_ms: u128,
}

/// The weight tuples of a sweep, in row order.
pub fn sweep_tuples(a_max: u32, d_max: u32) -> Vec<[u32; 4]> {
    let mut out = Vec::new();
    for a in 1..=a_max {
        for b in a..=a_max {
            for c in b..=a_max {
                for d in 0..=d_max {
                    out.push([a, b, c, d]);
                }
            }
        }
    }
    out
}

/// CSV header matching [`sweep_row_csv`].
pub const SWEEP_CSV_HEADER: &str = "a,b,c,d,X1,X2,X3,X4,T,norm,primitive,wall_ms";

/// One CSV line per row; tuples without a solution leave the solution
/// columns empty.
pub fn sweep_row_csv(row: &SweepRow) -> String {
    let [a, b, c, d] = row.coeffs;
    match &row.solution {
        Some(sol) => {
            let mut xs = sol.xs.iter().map(ToString::to_string).collect::<Vec<_>>();
            while xs.len() < 4 {
                xs.push("0".into());
            }
            format!(
                "{a},{b},{c},{d},{},{},{},{},{},{},{},{}",
                xs[0],
                xs[1],
                xs[2],
                xs[3],
                sol.t,
                row.norm.unwrap_or(0),
                sol.is_primitive(),
                row.wall_ms
            )
        }
        None => format!("{a},{b},{c},{d},,,,,,,,{}", row.wall_ms),
    }
}

fn sweep_fingerprint(opts: &SweepOptions) -> String {
    let desc = format!(
        "{}|{}|{}|{}|{:?}",
        opts.a_max, opts.d_max, opts.bound, opts.budget, opts.sign_mode
    );
    format!("{:016x}", fnv1a64(desc.as_bytes()))
}

/// Sweeps every weight tuple, searching each equation for its first
/// primitive solution.  Tuples without a hit inside the budget produce a
/// row with no solution — incompleteness is data here, not an error.  When
/// a checkpoint path is given, finished rows are persisted after each tuple
/// and a rerun resumes where it stopped.
pub fn conjecture_sweep(
    opts: &SweepOptions,
    checkpoint: Option<&Path>,
) -> Result<Vec<SweepRow>> {
    let tuples = sweep_tuples(opts.a_max, opts.d_max);
    let mut rows: Vec<SweepRow> = Vec::new();
    if let Some(path) = checkpoint {
        if path.exists() {
            let text = std::fs::read_to_string(path)?;
            let v: serde_json::Value = serde_json::from_str(&text)?;
            let hash = v["sweep_hash"].as_str().unwrap_or_default();
            if hash != sweep_fingerprint(opts) {
                return Err(Error::CheckpointMismatch(
                    "checkpoint was written by a different sweep".into(),
                ));
            }
            for r in v["rows"].as_array().map(Vec::as_slice).unwrap_or(&[]) {
                let coeffs_v = r["coeffs"].as_array().cloned().unwrap_or_default();
                let mut coeffs = [0u32; 4];
                for (slot, cv) in coeffs.iter_mut().zip(&coeffs_v) {
                    *slot = cv.as_u64().unwrap_or(0) as u32;
                }
                let solution = if r["xs"].is_array() {
                    let xs = r["xs"]
                        .as_array()
                        .unwrap()
                        .iter()
                        .map(|x| crate::arith::parse_int(x.as_str().unwrap_or("")))
                        .collect::<Result<Vec<_>>>()?;
                    let t = crate::arith::parse_int(r["t"].as_str().unwrap_or(""))?;
                    Some(IntSolution { xs, t })
                } else {
                    None
                };
                rows.push(SweepRow {
                    coeffs,
                    solution,
                    norm: r["norm"].as_u64(),
                    wall_ms: r["wall_ms"].as_u64().unwrap_or(0) as u128,
                });
            }
        }
    }
    for tuple in tuples.iter().skip(rows.len()) {
        let [a, b, c, d] = *tuple;
        let eq = QuinticEquation::new(
            Int::from(a),
            Int::from(b),
            Int::from(c),
            Int::from(d),
            crate::arith::Rat::from_integer(int(1)),
        )?;
        let mut task = SearchTask::new(eq, Int::from(opts.bound))?;
        task.sign_mode = opts.sign_mode;
        task.stop = StopRule::First;
        task.budget = Some(opts.budget);
        let report = search_with_workers(&task, opts.workers)?;
        let norm = report.solutions.first().map(|s| tuple_norm(task.bound_kind, s));
        rows.push(SweepRow {
            coeffs: *tuple,
            solution: report.solutions.into_iter().next(),
            norm,
            wall_ms: report.wall_ms,
        });
        if let Some(path) = checkpoint {
            let v = json!({
                "sweep_hash": sweep_fingerprint(opts),
                "rows": rows.iter().map(|r| {
                    let mut obj = json!({
                        "coeffs": r.coeffs,
                        "norm": r.norm,
                        "wall_ms": r.wall_ms as u64,
                    });
                    if let Some(sol) = &r.solution {
                        obj["xs"] = json!(sol
                            .xs
                            .iter()
                            .map(ToString::to_string)
                            .collect::<Vec<_>>());
                        obj["t"] = json!(sol.t.to_string());
                    }
                    obj
                }).collect::<Vec<_>>(),
            });
            std::fs::write(path, serde_json::to_string_pretty(&v)?)?;
        }
    }
    Ok(rows)
}

fn tuple_norm(kind: BoundKind, sol: &IntSolution) -> u64 {
    match kind {
        BoundKind::MaxAbs => sol
            .xs
            .iter()
            .map(|x| x.abs().to_u64().unwrap_or(u64::MAX))
            .max()
            .unwrap_or(0),
        BoundKind::AbsSum => sol
            .xs
            .iter()
            .map(|x| x.abs().to_u64().unwrap_or(u64::MAX))
            .sum(),
    }
}
