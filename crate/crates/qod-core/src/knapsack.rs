//! Exact and approximate solvers for the boolean knapsack family.
//!
//! Three variants share one item list: decide whether some subset of the
//! weights hits a target exactly, decide whether some subset sum falls in an
//! open interval, or maximize a profit sum under a strict weight budget. The
//! subset-sum dynamic program here is also the ground truth the optical
//! simulator is checked against.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Item count above which [`exhaustive_oracle`] refuses to enumerate.
pub const DEFAULT_EXHAUSTIVE_LIMIT: usize = 24;

/// Upper bound on DP table cells; keeps malformed inputs from exhausting memory.
const MAX_DP_CELLS: u128 = 200_000_000;

/// Which of the three problem statements an instance poses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Is there a subset with weight sum exactly equal to a target?
    ExactSum,
    /// Is there a subset with weight sum strictly inside an open interval?
    IntervalSum,
    /// Maximize the profit sum subject to a strict weight budget.
    Optimization,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variant::ExactSum => write!(f, "exact-sum"),
            Variant::IntervalSum => write!(f, "interval-sum"),
            Variant::Optimization => write!(f, "optimization"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KnapsackError {
    /// Interval bounds must satisfy `lo < hi`.
    BoundsNotIncreasing { lo: u64, hi: u64 },
    /// Weight and profit lists must have equal length.
    LengthMismatch { weights: usize, profits: usize },
    /// A strict budget of zero admits no assignment, not even the empty one.
    ZeroBudget,
    /// Totals would not fit exact 64-bit arithmetic.
    Overflow,
    /// The operation was handed an instance of the wrong variant.
    VariantMismatch { expected: Variant, found: Variant },
    /// Too many items for exhaustive enumeration.
    TooManyItems { n: usize, limit: usize },
    /// The DP table would exceed the configured memory guard.
    TableTooLarge,
    /// Approximation quality must lie strictly inside (0, 1).
    EpsilonOutOfRange,
    /// No feasible item has positive profit, so the relative bound is void.
    NoPositiveProfit,
}

impl fmt::Display for KnapsackError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KnapsackError::BoundsNotIncreasing { lo, hi } => {
                write!(f, "bounds not increasing: {lo} >= {hi}")
            }
            KnapsackError::LengthMismatch { weights, profits } => {
                write!(f, "length mismatch: {weights} weights vs {profits} profits")
            }
            KnapsackError::ZeroBudget => write!(f, "budget must be at least 1"),
            KnapsackError::Overflow => write!(f, "integer totals overflow 64 bits"),
            KnapsackError::VariantMismatch { expected, found } => {
                write!(f, "variant mismatch: expected {expected}, found {found}")
            }
            KnapsackError::TooManyItems { n, limit } => {
                write!(f, "{n} items exceed the exhaustive-search limit of {limit}")
            }
            KnapsackError::TableTooLarge => write!(f, "DP table exceeds the memory guard"),
            KnapsackError::EpsilonOutOfRange => write!(f, "epsilon must lie in (0, 1)"),
            KnapsackError::NoPositiveProfit => {
                write!(f, "no feasible item with positive profit")
            }
        }
    }
}

/// One problem instance. Weights are the `c_i` costs, profits the `w_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KnapsackInstance {
    ExactSum {
        weights: Vec<u64>,
        target: u64,
    },
    IntervalSum {
        weights: Vec<u64>,
        bound_lo: u64,
        bound_hi: u64,
    },
    Optimization {
        weights: Vec<u64>,
        profits: Vec<u64>,
        bound_hi: u64,
    },
}

fn checked_total(values: &[u64]) -> Result<u64, KnapsackError> {
    values
        .iter()
        .try_fold(0u64, |acc, &v| acc.checked_add(v))
        .ok_or(KnapsackError::Overflow)
}

impl KnapsackInstance {
    pub fn exact_sum(weights: Vec<u64>, target: u64) -> Result<Self, KnapsackError> {
        checked_total(&weights)?;
        Ok(KnapsackInstance::ExactSum { weights, target })
    }

    pub fn interval_sum(
        weights: Vec<u64>,
        bound_lo: u64,
        bound_hi: u64,
    ) -> Result<Self, KnapsackError> {
        checked_total(&weights)?;
        if bound_lo >= bound_hi {
            return Err(KnapsackError::BoundsNotIncreasing {
                lo: bound_lo,
                hi: bound_hi,
            });
        }
        Ok(KnapsackInstance::IntervalSum {
            weights,
            bound_lo,
            bound_hi,
        })
    }

    pub fn optimization(
        weights: Vec<u64>,
        profits: Vec<u64>,
        bound_hi: u64,
    ) -> Result<Self, KnapsackError> {
        if weights.len() != profits.len() {
            return Err(KnapsackError::LengthMismatch {
                weights: weights.len(),
                profits: profits.len(),
            });
        }
        if bound_hi == 0 {
            // The weight constraint is strict, so budget 0 excludes even the
            // empty assignment.
            return Err(KnapsackError::ZeroBudget);
        }
        checked_total(&weights)?;
        checked_total(&profits)?;
        Ok(KnapsackInstance::Optimization {
            weights,
            profits,
            bound_hi,
        })
    }

    pub fn variant(&self) -> Variant {
        match self {
            KnapsackInstance::ExactSum { .. } => Variant::ExactSum,
            KnapsackInstance::IntervalSum { .. } => Variant::IntervalSum,
            KnapsackInstance::Optimization { .. } => Variant::Optimization,
        }
    }

    pub fn n(&self) -> usize {
        self.weights().len()
    }

    pub fn weights(&self) -> &[u64] {
        match self {
            KnapsackInstance::ExactSum { weights, .. }
            | KnapsackInstance::IntervalSum { weights, .. }
            | KnapsackInstance::Optimization { weights, .. } => weights,
        }
    }

    pub fn profits(&self) -> Option<&[u64]> {
        match self {
            KnapsackInstance::Optimization { profits, .. } => Some(profits),
            _ => None,
        }
    }

    /// The largest sum the solution space has to represent: the target for
    /// the exact variant, the upper interval bound otherwise.
    pub fn cap(&self) -> u64 {
        match self {
            KnapsackInstance::ExactSum { target, .. } => *target,
            KnapsackInstance::IntervalSum { bound_hi, .. }
            | KnapsackInstance::Optimization { bound_hi, .. } => *bound_hi,
        }
    }

    /// Drops items that cannot appear in any witness: weights above the
    /// target for the exact variant, weights at or above the strict upper
    /// bound otherwise. Returns the reduced instance together with the
    /// original indices of the kept items.
    pub fn normalized(&self) -> (Self, Vec<usize>) {
        let keep: Vec<usize> = match self {
            KnapsackInstance::ExactSum { weights, target } => (0..weights.len())
                .filter(|&i| weights[i] <= *target)
                .collect(),
            KnapsackInstance::IntervalSum {
                weights, bound_hi, ..
            }
            | KnapsackInstance::Optimization {
                weights, bound_hi, ..
            } => (0..weights.len())
                .filter(|&i| weights[i] < *bound_hi)
                .collect(),
        };
        let pick = |v: &[u64]| keep.iter().map(|&i| v[i]).collect::<Vec<u64>>();
        let reduced = match self {
            KnapsackInstance::ExactSum { weights, target } => KnapsackInstance::ExactSum {
                weights: pick(weights),
                target: *target,
            },
            KnapsackInstance::IntervalSum {
                weights,
                bound_lo,
                bound_hi,
            } => KnapsackInstance::IntervalSum {
                weights: pick(weights),
                bound_lo: *bound_lo,
                bound_hi: *bound_hi,
            },
            KnapsackInstance::Optimization {
                weights,
                profits,
                bound_hi,
            } => KnapsackInstance::Optimization {
                weights: pick(weights),
                profits: pick(profits),
                bound_hi: *bound_hi,
            },
        };
        (reduced, keep)
    }
}

/// The set of subset sums reachable within `{0, ..., cap}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsumSet {
    cap: u64,
    members: BTreeSet<u64>,
}

impl SubsumSet {
    fn from_row(cap: u64, row: &[bool]) -> Self {
        let members = row
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(s, _)| s as u64)
            .collect();
        SubsumSet { cap, members }
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }

    pub fn contains(&self, sum: u64) -> bool {
        self.members.contains(&sum)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &BTreeSet<u64> {
        &self.members
    }

    pub fn is_subset_of(&self, other: &SubsumSet) -> bool {
        self.members.is_subset(&other.members)
    }
}

/// The solver verdict: a decision for the exact/interval variants, the best
/// attainable profit for the optimization variant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Answer {
    Yes,
    No,
    Optimum(u64),
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Answer::Yes => write!(f, "YES"),
            Answer::No => write!(f, "NO"),
            Answer::Optimum(v) => write!(f, "{v}"),
        }
    }
}

/// A verdict plus, when one exists, the lexicographically smallest witness
/// (as a sorted list of item indices).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub answer: Answer,
    pub witness: Option<Vec<usize>>,
}

fn table_guard(rows: usize, width: u64) -> Result<usize, KnapsackError> {
    let width = width.checked_add(1).ok_or(KnapsackError::Overflow)?;
    let cells = (rows as u128 + 1) * width as u128;
    if cells > MAX_DP_CELLS {
        return Err(KnapsackError::TableTooLarge);
    }
    usize::try_from(width).map_err(|_| KnapsackError::TableTooLarge)
}

/// Reachability rows `rows[j]` = sums achievable from the first `j` items,
/// capped to `{0, ..., cap}`.
fn prefix_rows(weights: &[u64], cap: u64) -> Result<Vec<Vec<bool>>, KnapsackError> {
    let width = table_guard(weights.len(), cap)?;
    let mut rows = Vec::with_capacity(weights.len() + 1);
    let mut first = vec![false; width];
    first[0] = true;
    rows.push(first);
    for &wt in weights {
        let prev = rows.last().expect("seed row present");
        let mut next = prev.clone();
        if wt <= cap {
            let wt = wt as usize;
            for s in wt..width {
                if prev[s - wt] {
                    next[s] = true;
                }
            }
        }
        rows.push(next);
    }
    Ok(rows)
}

/// Reachability rows `rows[j]` = sums achievable from items `j..n`.
fn suffix_rows(weights: &[u64], cap: u64) -> Result<Vec<Vec<bool>>, KnapsackError> {
    let width = table_guard(weights.len(), cap)?;
    let mut rows = vec![Vec::new(); weights.len() + 1];
    let mut last = vec![false; width];
    last[0] = true;
    rows[weights.len()] = last;
    for j in (0..weights.len()).rev() {
        let prev = &rows[j + 1];
        let mut row = prev.clone();
        let wt = weights[j];
        if wt <= cap {
            let wt = wt as usize;
            for s in wt..width {
                if prev[s - wt] {
                    row[s] = true;
                }
            }
        }
        rows[j] = row;
    }
    Ok(rows)
}

/// Every intermediate state of the subset-sum DP, `stages[j]` being the
/// reachable-sum set after the first `j` items.
pub fn dp_stages(weights: &[u64], cap: u64) -> Result<Vec<SubsumSet>, KnapsackError> {
    let rows = prefix_rows(weights, cap)?;
    Ok(rows.iter().map(|r| SubsumSet::from_row(cap, r)).collect())
}

/// The exact set of subset sums of `weights` lying in `{0, ..., cap}`,
/// computed by the `O(n * cap)` dynamic program.
pub fn dp_reachable_sums(weights: &[u64], cap: u64) -> Result<SubsumSet, KnapsackError> {
    let rows = prefix_rows(weights, cap)?;
    Ok(SubsumSet::from_row(
        cap,
        rows.last().expect("seed row present"),
    ))
}

fn expect_variant(inst: &KnapsackInstance, expected: Variant) -> Result<(), KnapsackError> {
    if inst.variant() != expected {
        return Err(KnapsackError::VariantMismatch {
            expected,
            found: inst.variant(),
        });
    }
    Ok(())
}

/// Decides the exact-sum variant by dynamic programming. The witness, when
/// one exists, is the lexicographically smallest index set, reconstructed by
/// greedy backtracking over suffix reachability.
pub fn solve_variant1(inst: &KnapsackInstance) -> Result<SolveResult, KnapsackError> {
    expect_variant(inst, Variant::ExactSum)?;
    let (weights, target) = match inst {
        KnapsackInstance::ExactSum { weights, target } => (weights.as_slice(), *target),
        _ => unreachable!(),
    };
    let suffix = suffix_rows(weights, target)?;
    if !suffix[0][target as usize] {
        return Ok(SolveResult {
            answer: Answer::No,
            witness: None,
        });
    }
    let mut witness = Vec::new();
    let mut rem = target;
    for (j, &wt) in weights.iter().enumerate() {
        if rem == 0 {
            break;
        }
        if wt <= rem && suffix[j + 1][(rem - wt) as usize] {
            witness.push(j);
            rem -= wt;
        }
    }
    debug_assert_eq!(rem, 0);
    Ok(SolveResult {
        answer: Answer::Yes,
        witness: Some(witness),
    })
}

/// True when some reachable sum `base + s`, `s` taken from `row`, lies
/// strictly between `lo` and `hi`.
fn open_window_hit(row: &[bool], base: u64, lo: u64, hi: u64) -> bool {
    let lo = lo as i128 - base as i128;
    let hi = hi as i128 - base as i128;
    let start = core::cmp::max(lo + 1, 0);
    let end = core::cmp::min(hi - 1, row.len() as i128 - 1);
    (start..=end).any(|s| row[s as usize])
}

/// Decides the interval variant: is some subset sum strictly inside
/// `(bound_lo, bound_hi)`?
pub fn solve_variant2(inst: &KnapsackInstance) -> Result<SolveResult, KnapsackError> {
    expect_variant(inst, Variant::IntervalSum)?;
    let (weights, lo, hi) = match inst {
        KnapsackInstance::IntervalSum {
            weights,
            bound_lo,
            bound_hi,
        } => (weights.as_slice(), *bound_lo, *bound_hi),
        _ => unreachable!(),
    };
    let suffix = suffix_rows(weights, hi)?;
    if !open_window_hit(&suffix[0], 0, lo, hi) {
        return Ok(SolveResult {
            answer: Answer::No,
            witness: None,
        });
    }
    let mut witness = Vec::new();
    let mut acc = 0u64;
    for (j, &wt) in weights.iter().enumerate() {
        if lo < acc && acc < hi {
            break;
        }
        if acc + wt <= hi && open_window_hit(&suffix[j + 1], acc + wt, lo, hi) {
            witness.push(j);
            acc += wt;
        }
    }
    debug_assert!(lo < acc && acc < hi);
    Ok(SolveResult {
        answer: Answer::Yes,
        witness: Some(witness),
    })
}

/// Profit table `best[j][r]` = maximum profit over items `j..n` whose weight
/// sum is at most `r`.
fn suffix_best(
    weights: &[u64],
    profits: &[u64],
    capacity: u64,
) -> Result<Vec<Vec<u64>>, KnapsackError> {
    let width = table_guard(weights.len(), capacity)?;
    let mut rows = vec![Vec::new(); weights.len() + 1];
    rows[weights.len()] = vec![0u64; width];
    for j in (0..weights.len()).rev() {
        let prev = &rows[j + 1];
        let mut row = prev.clone();
        let wt = weights[j];
        if wt <= capacity {
            let wt = wt as usize;
            for r in wt..width {
                let take = profits[j]
                    .checked_add(prev[r - wt])
                    .ok_or(KnapsackError::Overflow)?;
                if take > row[r] {
                    row[r] = take;
                }
            }
        }
        rows[j] = row;
    }
    Ok(rows)
}

/// Solves the optimization variant exactly: maximize the profit sum over
/// subsets whose weight sum is strictly below the budget.
pub fn solve_variant3_exact(inst: &KnapsackInstance) -> Result<SolveResult, KnapsackError> {
    expect_variant(inst, Variant::Optimization)?;
    let (weights, profits, bound_hi) = match inst {
        KnapsackInstance::Optimization {
            weights,
            profits,
            bound_hi,
        } => (weights.as_slice(), profits.as_slice(), *bound_hi),
        _ => unreachable!(),
    };
    // Strict bound: weight sums are integers, so "< bound" means "<= bound-1".
    let capacity = bound_hi - 1;
    let best = suffix_best(weights, profits, capacity)?;
    let optimum = best[0][capacity as usize];
    let mut witness = Vec::new();
    let mut rem = capacity;
    for (j, &wt) in weights.iter().enumerate() {
        if best[j][rem as usize] == 0 {
            break;
        }
        if wt <= rem && profits[j] + best[j + 1][(rem - wt) as usize] == best[j][rem as usize] {
            witness.push(j);
            rem -= wt;
        }
    }
    Ok(SolveResult {
        answer: Answer::Optimum(optimum),
        witness: Some(witness),
    })
}

fn mask_indices(mask: u32, n: usize) -> Vec<usize> {
    (0..n).filter(|&i| mask & (1u32 << i) != 0).collect()
}

fn mask_sum(values: &[u64], mask: u32) -> u64 {
    values
        .iter()
        .enumerate()
        .filter(|(i, _)| mask & (1u32 << i) != 0)
        .map(|(_, &v)| v)
        .sum()
}

/// Brute-force reference solver enumerating all `2^n` assignments. Same
/// contract (including witness tie-breaking) as the variant solvers; used as
/// the independent test oracle.
pub fn exhaustive_oracle(inst: &KnapsackInstance) -> Result<SolveResult, KnapsackError> {
    exhaustive_oracle_with_limit(inst, DEFAULT_EXHAUSTIVE_LIMIT)
}

pub fn exhaustive_oracle_with_limit(
    inst: &KnapsackInstance,
    limit: usize,
) -> Result<SolveResult, KnapsackError> {
    let n = inst.n();
    if n > limit || n >= 32 {
        return Err(KnapsackError::TooManyItems { n, limit });
    }
    let weights = inst.weights();
    let masks = 1u64 << n;
    match inst {
        KnapsackInstance::ExactSum { target, .. } => {
            let mut best: Option<Vec<usize>> = None;
            for mask in 0..masks {
                let mask = mask as u32;
                if mask_sum(weights, mask) == *target {
                    let idx = mask_indices(mask, n);
                    if best.as_ref().map_or(true, |b| idx < *b) {
                        best = Some(idx);
                    }
                }
            }
            Ok(match best {
                Some(w) => SolveResult {
                    answer: Answer::Yes,
                    witness: Some(w),
                },
                None => SolveResult {
                    answer: Answer::No,
                    witness: None,
                },
            })
        }
        KnapsackInstance::IntervalSum {
            bound_lo, bound_hi, ..
        } => {
            let mut best: Option<Vec<usize>> = None;
            for mask in 0..masks {
                let mask = mask as u32;
                let s = mask_sum(weights, mask);
                if *bound_lo < s && s < *bound_hi {
                    let idx = mask_indices(mask, n);
                    if best.as_ref().map_or(true, |b| idx < *b) {
                        best = Some(idx);
                    }
                }
            }
            Ok(match best {
                Some(w) => SolveResult {
                    answer: Answer::Yes,
                    witness: Some(w),
                },
                None => SolveResult {
                    answer: Answer::No,
                    witness: None,
                },
            })
        }
        KnapsackInstance::Optimization {
            profits, bound_hi, ..
        } => {
            let mut best_profit = 0u64;
            let mut best: Option<Vec<usize>> = None;
            for mask in 0..masks {
                let mask = mask as u32;
                if mask_sum(weights, mask) < *bound_hi {
                    let p = mask_sum(profits, mask);
                    let idx = mask_indices(mask, n);
                    let better = match &best {
                        None => true,
                        Some(b) => p > best_profit || (p == best_profit && idx < *b),
                    };
                    if better {
                        best_profit = p;
                        best = Some(idx);
                    }
                }
            }
            Ok(SolveResult {
                answer: Answer::Optimum(best_profit),
                witness: best,
            })
        }
    }
}

/// Profit truncation: replaces every profit by `floor(w / 2^t)`, keeping
/// weights and the budget exact so feasibility is never corrupted.
pub fn truncate_instance(
    inst: &KnapsackInstance,
    t: u32,
) -> Result<KnapsackInstance, KnapsackError> {
    expect_variant(inst, Variant::Optimization)?;
    let (weights, profits, bound_hi) = match inst {
        KnapsackInstance::Optimization {
            weights,
            profits,
            bound_hi,
        } => (weights.clone(), profits.as_slice(), *bound_hi),
        _ => unreachable!(),
    };
    let shifted = profits
        .iter()
        .map(|&w| if t >= 64 { 0 } else { w >> t })
        .collect();
    KnapsackInstance::optimization(weights, shifted, bound_hi)
}

/// Full truncation: drops the low `t` binary digits of profits, weights and
/// the budget alike. Fails when the truncated budget collapses to zero.
pub fn truncate_instance_full(
    inst: &KnapsackInstance,
    t: u32,
) -> Result<KnapsackInstance, KnapsackError> {
    expect_variant(inst, Variant::Optimization)?;
    let (weights, profits, bound_hi) = match inst {
        KnapsackInstance::Optimization {
            weights,
            profits,
            bound_hi,
        } => (weights.as_slice(), profits.as_slice(), *bound_hi),
        _ => unreachable!(),
    };
    let shift = |v: u64| if t >= 64 { 0 } else { v >> t };
    KnapsackInstance::optimization(
        weights.iter().copied().map(shift).collect(),
        profits.iter().copied().map(shift).collect(),
        shift(bound_hi),
    )
}

/// Outcome of the truncation-based approximation: the evaluated result plus
/// the number of profit digits that were dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproxResult {
    pub result: SolveResult,
    pub digits_dropped: u32,
}

/// Approximate solver for the optimization variant with relative error
/// guarantee `(R_opt - R_appr) / R_opt < epsilon`.
///
/// Picks the largest `t >= 0` with `n * 2^t <= epsilon * w_max`, solves the
/// profit-truncated instance exactly, then re-evaluates the witness on the
/// original profits.
pub fn solve_variant3_approx(
    inst: &KnapsackInstance,
    epsilon: f64,
) -> Result<ApproxResult, KnapsackError> {
    expect_variant(inst, Variant::Optimization)?;
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(KnapsackError::EpsilonOutOfRange);
    }
    let (reduced, keep) = inst.normalized();
    let profits = reduced.profits().expect("optimization instance");
    let w_max = profits.iter().copied().max().unwrap_or(0);
    if w_max == 0 {
        return Err(KnapsackError::NoPositiveProfit);
    }
    let n = inst.n() as f64;
    let mut t = 0u32;
    while t < 63 && n * exp2(t + 1) <= epsilon * w_max as f64 {
        t += 1;
    }
    if n * exp2(t) > epsilon * w_max as f64 {
        t = 0;
    }
    let truncated = truncate_instance(&reduced, t)?;
    let truncated_solution = solve_variant3_exact(&truncated)?;
    let witness_reduced = truncated_solution.witness.unwrap_or_default();
    let witness: Vec<usize> = witness_reduced.iter().map(|&i| keep[i]).collect();
    let full_profits = inst.profits().expect("optimization instance");
    let value = witness.iter().map(|&i| full_profits[i]).sum();
    Ok(ApproxResult {
        result: SolveResult {
            answer: Answer::Optimum(value),
            witness: Some(witness),
        },
        digits_dropped: t,
    })
}

fn exp2(t: u32) -> f64 {
    let mut v = 1.0f64;
    for _ in 0..t {
        v *= 2.0;
    }
    v
}

/// Re-evaluates a witness against its instance: the weight and profit sums
/// and whether the variant's constraint holds.
pub fn evaluate_witness(inst: &KnapsackInstance, witness: &[usize]) -> (u64, u64, bool) {
    let weights = inst.weights();
    let wsum: u64 = witness.iter().map(|&i| weights[i]).sum();
    let psum: u64 = match inst.profits() {
        Some(p) => witness.iter().map(|&i| p[i]).sum(),
        None => 0,
    };
    let ok = match inst {
        KnapsackInstance::ExactSum { target, .. } => wsum == *target,
        KnapsackInstance::IntervalSum {
            bound_lo, bound_hi, ..
        } => *bound_lo < wsum && wsum < *bound_hi,
        KnapsackInstance::Optimization { bound_hi, .. } => wsum < *bound_hi,
    };
    (wsum, psum, ok)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn members(set: &SubsumSet) -> Vec<u64> {
        set.members().iter().copied().collect()
    }

    #[test]
    fn reachable_sums_small() {
        let set = dp_reachable_sums(&[3, 5], 10).unwrap();
        assert_eq!(members(&set), vec![0, 3, 5, 8]);
    }

    #[test]
    fn reachable_sums_empty_items() {
        let set = dp_reachable_sums(&[], 5).unwrap();
        assert_eq!(members(&set), vec![0]);
    }

    #[test]
    fn reachable_sums_cap_excludes() {
        let set = dp_reachable_sums(&[7], 3).unwrap();
        assert_eq!(members(&set), vec![0]);
    }

    #[test]
    fn variant1_yes_with_witness() {
        let inst = KnapsackInstance::exact_sum(vec![3, 5, 7], 8).unwrap();
        let res = solve_variant1(&inst).unwrap();
        assert_eq!(res.answer, Answer::Yes);
        assert_eq!(res.witness, Some(vec![0, 1]));
    }

    #[test]
    fn variant1_parity_no() {
        let inst = KnapsackInstance::exact_sum(vec![2, 4, 6], 5).unwrap();
        let res = solve_variant1(&inst).unwrap();
        assert_eq!(res.answer, Answer::No);
        assert_eq!(res.witness, None);
    }

    #[test]
    fn variant1_zero_target_is_empty_witness() {
        let inst = KnapsackInstance::exact_sum(vec![3], 0).unwrap();
        let res = solve_variant1(&inst).unwrap();
        assert_eq!(res.answer, Answer::Yes);
        assert_eq!(res.witness, Some(vec![]));
    }

    #[test]
    fn variant2_interior_hit() {
        let inst = KnapsackInstance::interval_sum(vec![3, 5, 7], 9, 11).unwrap();
        let res = solve_variant2(&inst).unwrap();
        assert_eq!(res.answer, Answer::Yes);
        let (wsum, _, ok) = evaluate_witness(&inst, res.witness.as_ref().unwrap());
        assert_eq!(wsum, 10);
        assert!(ok);
    }

    #[test]
    fn variant2_unreachable_window() {
        let inst = KnapsackInstance::interval_sum(vec![3, 5, 7], 16, 20).unwrap();
        assert_eq!(solve_variant2(&inst).unwrap().answer, Answer::No);
    }

    #[test]
    fn variant2_strict_boundary_excluded() {
        // Total is 15; the open interval (15, 17) contains no subset sum.
        let inst = KnapsackInstance::interval_sum(vec![3, 5, 7], 15, 17).unwrap();
        assert_eq!(solve_variant2(&inst).unwrap().answer, Answer::No);
    }

    #[test]
    fn variant3_exact_small() {
        let inst = KnapsackInstance::optimization(vec![2, 3, 4], vec![3, 4, 5], 6).unwrap();
        let res = solve_variant3_exact(&inst).unwrap();
        assert_eq!(res.answer, Answer::Optimum(7));
        assert_eq!(res.witness, Some(vec![0, 1]));
    }

    #[test]
    fn variant3_single_infeasible_item() {
        // Weight 1 is not strictly below budget 1.
        let inst = KnapsackInstance::optimization(vec![1], vec![9], 1).unwrap();
        let res = solve_variant3_exact(&inst).unwrap();
        assert_eq!(res.answer, Answer::Optimum(0));
        assert_eq!(res.witness, Some(vec![]));
    }

    #[test]
    fn variant3_empty_instance() {
        let inst = KnapsackInstance::optimization(vec![], vec![], 5).unwrap();
        let res = solve_variant3_exact(&inst).unwrap();
        assert_eq!(res.answer, Answer::Optimum(0));
    }

    #[test]
    fn oracle_matches_dp_examples() {
        let inst = KnapsackInstance::exact_sum(vec![3, 5, 7], 8).unwrap();
        assert_eq!(exhaustive_oracle(&inst).unwrap().answer, Answer::Yes);
        let inst = KnapsackInstance::optimization(vec![2, 3, 4], vec![3, 4, 5], 6).unwrap();
        assert_eq!(
            exhaustive_oracle(&inst).unwrap().answer,
            Answer::Optimum(7)
        );
    }

    #[test]
    fn oracle_empty_instance() {
        let inst = KnapsackInstance::exact_sum(vec![], 0).unwrap();
        assert_eq!(exhaustive_oracle(&inst).unwrap().answer, Answer::Yes);
        let inst = KnapsackInstance::optimization(vec![], vec![], 1).unwrap();
        assert_eq!(
            exhaustive_oracle(&inst).unwrap().answer,
            Answer::Optimum(0)
        );
    }

    #[test]
    fn oracle_rejects_oversized() {
        let inst = KnapsackInstance::exact_sum(vec![1; 25], 3).unwrap();
        assert!(matches!(
            exhaustive_oracle(&inst),
            Err(KnapsackError::TooManyItems { .. })
        ));
    }

    #[test]
    fn truncation_examples() {
        let inst = KnapsackInstance::optimization(vec![1], vec![13], 9).unwrap();
        let out = truncate_instance(&inst, 2).unwrap();
        assert_eq!(out.profits().unwrap(), &[3]);

        let inst = KnapsackInstance::optimization(vec![1, 2], vec![5, 6], 9).unwrap();
        assert_eq!(truncate_instance(&inst, 0).unwrap(), inst);

        let inst = KnapsackInstance::optimization(vec![1, 2, 3], vec![5, 6, 7], 9).unwrap();
        let out = truncate_instance(&inst, 10).unwrap();
        assert_eq!(out.profits().unwrap(), &[0, 0, 0]);
    }

    #[test]
    fn approx_reduces_to_exact_for_tiny_epsilon() {
        let inst = KnapsackInstance::optimization(vec![2, 3, 4], vec![3, 4, 5], 6).unwrap();
        // epsilon too small for any digit to be dropped
        let out = solve_variant3_approx(&inst, 0.1).unwrap();
        assert_eq!(out.digits_dropped, 0);
        assert_eq!(out.result.answer, Answer::Optimum(7));
    }

    #[test]
    fn approx_bound_holds() {
        let inst = KnapsackInstance::optimization(vec![1, 1], vec![8, 9], 3).unwrap();
        let out = solve_variant3_approx(&inst, 0.5).unwrap();
        let appr = match out.result.answer {
            Answer::Optimum(v) => v as f64,
            _ => panic!("expected optimum"),
        };
        // exact optimum is 17 (both items fit)
        assert!(appr >= 0.5 * 17.0);
    }

    #[test]
    fn approx_rejects_bad_epsilon() {
        let inst = KnapsackInstance::optimization(vec![1], vec![2], 3).unwrap();
        assert!(matches!(
            solve_variant3_approx(&inst, 0.0),
            Err(KnapsackError::EpsilonOutOfRange)
        ));
        assert!(matches!(
            solve_variant3_approx(&inst, 1.0),
            Err(KnapsackError::EpsilonOutOfRange)
        ));
    }

    #[test]
    fn approx_rejects_zero_profits() {
        let inst = KnapsackInstance::optimization(vec![1, 2], vec![0, 0], 5).unwrap();
        assert!(matches!(
            solve_variant3_approx(&inst, 0.5),
            Err(KnapsackError::NoPositiveProfit)
        ));
    }

    #[test]
    fn constructor_validation() {
        assert!(matches!(
            KnapsackInstance::interval_sum(vec![1], 9, 4),
            Err(KnapsackError::BoundsNotIncreasing { .. })
        ));
        assert!(matches!(
            KnapsackInstance::optimization(vec![1, 2], vec![3], 5),
            Err(KnapsackError::LengthMismatch { .. })
        ));
        assert!(matches!(
            KnapsackInstance::optimization(vec![1], vec![1], 0),
            Err(KnapsackError::ZeroBudget)
        ));
        assert!(matches!(
            KnapsackInstance::exact_sum(vec![u64::MAX, 1], 3),
            Err(KnapsackError::Overflow)
        ));
    }

    #[test]
    fn variant_mismatch_is_rejected() {
        let inst = KnapsackInstance::exact_sum(vec![1], 1).unwrap();
        assert!(matches!(
            solve_variant2(&inst),
            Err(KnapsackError::VariantMismatch { .. })
        ));
        assert!(matches!(
            solve_variant3_exact(&inst),
            Err(KnapsackError::VariantMismatch { .. })
        ));
    }

    #[test]
    fn normalization_drops_oversized_items() {
        let inst = KnapsackInstance::exact_sum(vec![3, 50, 5], 8).unwrap();
        let (reduced, keep) = inst.normalized();
        assert_eq!(reduced.weights(), &[3, 5]);
        assert_eq!(keep, vec![0, 2]);
    }
}
