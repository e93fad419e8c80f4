//! Combinatorial abstraction of a pencil-of-lines sweep: chains of interior
//! ovals, their contribution to the pair balance, and an exhaustive check of
//! the bounds on small instances.
//!
//! A sweep based at a hull vertex (or at an exterior oval) distributes the
//! interior ovals into `k - 2` chains. Within a chain, consecutive interior
//! ovals carry alternating orientations, so a run of `l` consecutive
//! interior ovals contributes its start sign when `l` is odd and nothing
//! when `l` is even. Exterior ovals interrupt a chain: a chain with `j`
//! jumps splits into `j + 1` runs whose start signs are independent, hence
//! contributes at most `j + 1` in absolute value. The total number of jumps
//! is at most `alpha` for a vertex base (whose own oval adds one more unit)
//! and at most `alpha - 1` for an exterior base, giving the bounds
//! `k - 1 + alpha` and `k + alpha - 3`.
//!
//! The oracle enumerates every configuration: each chain takes at least one
//! interior oval, and chain order is cut by enumerating non-decreasing
//! `(size, jumps)` signatures, which cannot change the extremes. The model
//! is a sound over-approximation: the refinement available when a bound is
//! attained with equality rests on geometry the abstraction does not see,
//! and folds are ignored throughout.

use std::collections::HashMap;

use thiserror::Error;

use crate::scheme::Sign;

/// Soft limit on enumerated configurations per oracle call.
pub const CONFIG_LIMIT: u128 = 10_000_000;

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum SweepError {
    #[error("the sweep needs k >= 3, got {0}")]
    KTooSmall(u32),
    #[error("an exterior-based sweep needs at least one exterior oval (alpha >= 1)")]
    ExteriorNeedsAlpha,
    #[error("beta = {beta} is too small: the sweep needs at least {needed} interior ovals")]
    InfeasibleBeta { beta: u32, needed: u32 },
    #[error("search space exceeds the limit of {limit} configurations")]
    SearchSpaceTooLarge { limit: u128 },
    #[error("a run must contain at least one oval")]
    EmptyRun,
    #[error("a chain must contain at least one run")]
    EmptyChain,
    #[error("expected {expected} chains (k - 2), got {got}")]
    WrongChainCount { expected: u32, got: usize },
    #[error("{jumps} jumps exceed the budget {budget}")]
    JumpBudgetExceeded { jumps: u32, budget: u32 },
    #[error("a vertex base carries an oval sign and an exterior base does not")]
    BaseSignMismatch,
}

/// Where the sweeping pencil is based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseMode {
    /// At an interior oval placed at a vertex of the hull; the base oval
    /// itself contributes one pair.
    Vertex,
    /// At an exterior oval.
    Exterior,
}

impl BaseMode {
    pub fn as_str(self) -> &'static str {
        match self {
            BaseMode::Vertex => "vertex",
            BaseMode::Exterior => "exterior",
        }
    }
}

impl std::fmt::Display for BaseMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A maximal block of consecutive interior ovals in a chain. Orientations
/// alternate inside the run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Run {
    length: u32,
    start_sign: Sign,
}

impl Run {
    pub fn new(length: u32, start_sign: Sign) -> Result<Self, SweepError> {
        if length == 0 {
            return Err(SweepError::EmptyRun);
        }
        Ok(Self { length, start_sign })
    }

    pub fn length(&self) -> u32 {
        self.length
    }

    pub fn start_sign(&self) -> Sign {
        self.start_sign
    }

    /// Alternating sum of the run: the start sign for odd length, zero for
    /// even length.
    pub fn contribution(&self) -> i64 {
        if self.length % 2 == 1 {
            self.start_sign.unit()
        } else {
            0
        }
    }
}

/// Runs separated by jumps; `runs - 1` jumps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    runs: Vec<Run>,
}

impl Chain {
    pub fn new(runs: Vec<Run>) -> Result<Self, SweepError> {
        if runs.is_empty() {
            return Err(SweepError::EmptyChain);
        }
        Ok(Self { runs })
    }

    pub fn runs(&self) -> &[Run] {
        &self.runs
    }

    pub fn jumps(&self) -> u32 {
        (self.runs.len() - 1) as u32
    }

    pub fn interior_ovals(&self) -> u64 {
        self.runs.iter().map(|r| u64::from(r.length)).sum()
    }

    /// Sum of the run contributions; at most `jumps + 1` in absolute value.
    pub fn contribution(&self) -> i64 {
        let total: i64 = self.runs.iter().map(Run::contribution).sum();
        debug_assert!(total.unsigned_abs() as usize <= self.runs.len());
        total
    }
}

/// One full sweep: `k - 2` chains, a jump budget, and for a vertex base the
/// sign of the base oval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepConfig {
    k: u32,
    alpha: u32,
    base: BaseMode,
    base_oval_sign: Option<Sign>,
    chains: Vec<Chain>,
}

impl SweepConfig {
    pub fn new(
        k: u32,
        alpha: u32,
        base: BaseMode,
        base_oval_sign: Option<Sign>,
        chains: Vec<Chain>,
    ) -> Result<Self, SweepError> {
        if k < 3 {
            return Err(SweepError::KTooSmall(k));
        }
        match base {
            BaseMode::Vertex if base_oval_sign.is_none() => {
                return Err(SweepError::BaseSignMismatch)
            }
            BaseMode::Exterior if base_oval_sign.is_some() => {
                return Err(SweepError::BaseSignMismatch)
            }
            BaseMode::Exterior if alpha == 0 => return Err(SweepError::ExteriorNeedsAlpha),
            _ => {}
        }
        let expected = k - 2;
        if chains.len() != expected as usize {
            return Err(SweepError::WrongChainCount {
                expected,
                got: chains.len(),
            });
        }
        let jumps: u32 = chains.iter().map(Chain::jumps).sum();
        let budget = match base {
            BaseMode::Vertex => alpha,
            BaseMode::Exterior => alpha - 1,
        };
        if jumps > budget {
            return Err(SweepError::JumpBudgetExceeded { jumps, budget });
        }
        Ok(Self {
            k,
            alpha,
            base,
            base_oval_sign,
            chains,
        })
    }

    pub fn chains(&self) -> &[Chain] {
        &self.chains
    }

    /// Interior ovals met by the sweep, the base oval included.
    pub fn interior_ovals(&self) -> u64 {
        let base = u64::from(self.base == BaseMode::Vertex);
        self.chains.iter().map(Chain::interior_ovals).sum::<u64>() + base
    }

    /// Total contribution to the pair balance.
    pub fn total_contribution(&self) -> i64 {
        let base = self.base_oval_sign.map_or(0, Sign::unit);
        self.chains.iter().map(Chain::contribution).sum::<i64>() + base
    }
}

/// The counting bound on `|Pi+ - Pi-|`: `k - 1 + alpha` for a vertex base,
/// `k + alpha - 3` for an exterior base without J-jumps between interior
/// ovals.
pub fn sweep_bound(k: u32, alpha: u32, base: BaseMode) -> Result<i64, SweepError> {
    if k < 3 {
        return Err(SweepError::KTooSmall(k));
    }
    let k = i64::from(k);
    let alpha = i64::from(alpha);
    match base {
        BaseMode::Vertex => Ok(k - 1 + alpha),
        BaseMode::Exterior => {
            if alpha == 0 {
                return Err(SweepError::ExteriorNeedsAlpha);
            }
            Ok(k + alpha - 3)
        }
    }
}

/// Exact extremes of the total contribution over every sweep configuration
/// with `beta` interior ovals. Exhaustive; instances above [`CONFIG_LIMIT`]
/// configurations are refused.
pub fn oracle_extremes(
    k: u32,
    alpha: u32,
    beta: u32,
    base: BaseMode,
) -> Result<(i64, i64), SweepError> {
    if k < 3 {
        return Err(SweepError::KTooSmall(k));
    }
    let vertex = base == BaseMode::Vertex;
    if base == BaseMode::Exterior && alpha == 0 {
        return Err(SweepError::ExteriorNeedsAlpha);
    }
    let chain_count = k - 2;
    let needed = chain_count + u32::from(vertex);
    if beta < needed {
        return Err(SweepError::InfeasibleBeta { beta, needed });
    }
    let in_chains = beta - u32::from(vertex);
    let jump_budget = if vertex { alpha } else { alpha - 1 };

    if !within_limit(in_chains, chain_count, jump_budget, vertex) {
        return Err(SweepError::SearchSpaceTooLarge {
            limit: CONFIG_LIMIT,
        });
    }

    let mut search = Search {
        vertex,
        cache: HashMap::new(),
        min: i64::MAX,
        max: i64::MIN,
    };
    let mut signature = Vec::with_capacity(chain_count as usize);
    walk_signatures(
        in_chains,
        chain_count,
        jump_budget,
        (1, 0),
        &mut signature,
        &mut |sig| search.visit(sig),
    );
    Ok((search.min, search.max))
}

struct Search {
    vertex: bool,
    cache: HashMap<(u32, u32), Vec<i64>>,
    min: i64,
    max: i64,
}

impl Search {
    fn visit(&mut self, signature: &[(u32, u32)]) {
        for &pair in signature {
            self.cache
                .entry(pair)
                .or_insert_with(|| chain_values(pair.0, pair.1));
        }
        let vecs: Vec<&[i64]> = signature
            .iter()
            .map(|pair| self.cache[pair].as_slice())
            .collect();
        let mut min = self.min;
        let mut max = self.max;
        let vertex = self.vertex;
        cross_sums(&vecs, 0, 0, &mut |sum| {
            let (lo, hi) = if vertex {
                (sum - 1, sum + 1)
            } else {
                (sum, sum)
            };
            min = min.min(lo);
            max = max.max(hi);
        });
        self.min = min;
        self.max = max;
    }
}

/// Visits every non-decreasing `(size, jumps)` signature: sizes sum to
/// `remaining` over `chains_left` entries, each size >= 1, each jumps
/// <= size - 1, jumps summing to at most `jumps_left`.
fn walk_signatures(
    remaining: u32,
    chains_left: u32,
    jumps_left: u32,
    min_pair: (u32, u32),
    current: &mut Vec<(u32, u32)>,
    visit: &mut impl FnMut(&[(u32, u32)]),
) {
    if chains_left == 0 {
        if remaining == 0 {
            visit(current);
        }
        return;
    }
    // Leave at least one oval per remaining chain.
    let max_size = remaining.saturating_sub(chains_left - 1);
    for size in 1..=max_size {
        for jumps in 0..=jumps_left.min(size - 1) {
            if (size, jumps) < min_pair {
                continue;
            }
            current.push((size, jumps));
            walk_signatures(
                remaining - size,
                chains_left - 1,
                jumps_left - jumps,
                (size, jumps),
                current,
                visit,
            );
            current.pop();
        }
    }
}

/// Counts configurations with early abort; true when within [`CONFIG_LIMIT`].
fn within_limit(total: u32, chains: u32, jump_budget: u32, vertex: bool) -> bool {
    fn recurse(
        remaining: u32,
        chains_left: u32,
        jumps_left: u32,
        min_pair: (u32, u32),
        product: u128,
        counted: &mut u128,
    ) -> bool {
        if chains_left == 0 {
            if remaining == 0 {
                *counted = counted.saturating_add(product);
            }
            return *counted <= CONFIG_LIMIT;
        }
        let max_size = remaining.saturating_sub(chains_left - 1);
        for size in 1..=max_size {
            for jumps in 0..=jumps_left.min(size - 1) {
                if (size, jumps) < min_pair {
                    continue;
                }
                let product = product.saturating_mul(chain_configuration_count(size, jumps));
                if product > CONFIG_LIMIT {
                    *counted = u128::MAX;
                    return false;
                }
                if !recurse(
                    remaining - size,
                    chains_left - 1,
                    jumps_left - jumps,
                    (size, jumps),
                    product,
                    counted,
                ) {
                    return false;
                }
            }
        }
        true
    }

    let mut counted: u128 = 0;
    let seed = if vertex { 2 } else { 1 };
    recurse(total, chains, jump_budget, (1, 0), seed, &mut counted)
}

/// Compositions of `size` into `jumps + 1` positive runs, times the free
/// start signs.
fn chain_configuration_count(size: u32, jumps: u32) -> u128 {
    let signs = if jumps + 1 >= 127 {
        u128::MAX
    } else {
        1u128 << (jumps + 1)
    };
    binomial(size - 1, jumps).saturating_mul(signs)
}

fn binomial(n: u32, k: u32) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut result: u128 = 1;
    for i in 0..u128::from(k) {
        result = result.saturating_mul(u128::from(n) - i) / (i + 1);
    }
    result
}

/// Every contribution a chain of `size` ovals with `jumps` jumps can make,
/// one entry per (run composition, sign choice).
fn chain_values(size: u32, jumps: u32) -> Vec<i64> {
    let runs = (jumps + 1) as usize;
    let mut values = Vec::new();
    let mut parts = vec![0u32; runs];
    compose(size, 0, &mut parts, &mut |parts| {
        let odd: Vec<usize> = parts
            .iter()
            .enumerate()
            .filter(|(_, &p)| p % 2 == 1)
            .map(|(i, _)| i)
            .collect();
        for mask in 0u32..(1 << runs) {
            let mut sum = 0i64;
            for &i in &odd {
                sum += if mask & (1 << i) != 0 { 1 } else { -1 };
            }
            values.push(sum);
        }
    });
    values
}

/// Compositions of `remaining` into positive parts filling `parts[from..]`.
fn compose(remaining: u32, from: usize, parts: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
    let slots = parts.len() - from;
    if slots == 1 {
        parts[from] = remaining;
        f(parts);
        return;
    }
    for value in 1..=remaining - (slots as u32 - 1) {
        parts[from] = value;
        compose(remaining - value, from + 1, parts, f);
    }
}

fn cross_sums(vecs: &[&[i64]], index: usize, sum: i64, f: &mut impl FnMut(i64)) {
    if index == vecs.len() {
        f(sum);
        return;
    }
    for &value in vecs[index] {
        cross_sums(vecs, index + 1, sum + value, f);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(length: u32, sign: Sign) -> Run {
        Run::new(length, sign).unwrap()
    }

    fn chain(spec: &[(u32, Sign)]) -> Chain {
        Chain::new(spec.iter().map(|&(l, s)| run(l, s)).collect()).unwrap()
    }

    fn collect_signatures(total: u32, chains: u32, jump_budget: u32) -> Vec<Vec<(u32, u32)>> {
        let mut out = Vec::new();
        let mut current = Vec::new();
        walk_signatures(total, chains, jump_budget, (1, 0), &mut current, &mut |s| {
            out.push(s.to_vec())
        });
        out
    }

    #[test]
    fn run_contribution() {
        assert_eq!(run(3, Sign::Plus).contribution(), 1);
        assert_eq!(run(2, Sign::Minus).contribution(), 0);
        assert_eq!(run(1, Sign::Minus).contribution(), -1);
    }

    #[test]
    fn chain_contribution() {
        let c = chain(&[(1, Sign::Plus), (1, Sign::Plus), (1, Sign::Plus)]);
        assert_eq!(c.contribution(), 3);
        assert_eq!(c.jumps(), 2);

        assert_eq!(chain(&[(2, Sign::Plus), (2, Sign::Minus)]).contribution(), 0);
        assert_eq!(chain(&[(3, Sign::Plus), (1, Sign::Minus)]).contribution(), 0);
    }

    #[test]
    fn sweep_bound_examples() {
        assert_eq!(sweep_bound(4, 2, BaseMode::Vertex), Ok(5));
        assert_eq!(sweep_bound(5, 1, BaseMode::Exterior), Ok(3));
        assert_eq!(
            sweep_bound(3, 0, BaseMode::Exterior),
            Err(SweepError::ExteriorNeedsAlpha)
        );
        assert_eq!(
            sweep_bound(2, 0, BaseMode::Vertex),
            Err(SweepError::KTooSmall(2))
        );
    }

    #[test]
    fn config_validation() {
        let one = chain(&[(3, Sign::Plus)]);
        let cfg = SweepConfig::new(
            3,
            0,
            BaseMode::Vertex,
            Some(Sign::Minus),
            vec![one.clone()],
        )
        .unwrap();
        assert_eq!(cfg.total_contribution(), 0);
        assert_eq!(cfg.interior_ovals(), 4);

        assert_eq!(
            SweepConfig::new(4, 0, BaseMode::Vertex, Some(Sign::Plus), vec![one.clone()])
                .unwrap_err(),
            SweepError::WrongChainCount { expected: 2, got: 1 }
        );
        assert_eq!(
            SweepConfig::new(3, 0, BaseMode::Vertex, None, vec![one.clone()]).unwrap_err(),
            SweepError::BaseSignMismatch
        );
        let jumpy = chain(&[(1, Sign::Plus), (1, Sign::Plus)]);
        assert_eq!(
            SweepConfig::new(3, 0, BaseMode::Vertex, Some(Sign::Plus), vec![jumpy]).unwrap_err(),
            SweepError::JumpBudgetExceeded { jumps: 1, budget: 0 }
        );
        assert_eq!(
            SweepConfig::new(3, 0, BaseMode::Exterior, None, vec![one]).unwrap_err(),
            SweepError::ExteriorNeedsAlpha
        );
    }

    #[test]
    fn oracle_small_vertex() {
        assert_eq!(oracle_extremes(3, 0, 4, BaseMode::Vertex), Ok((-2, 2)));
    }

    #[test]
    fn oracle_degree9_nest_case() {
        // Two chains of a 26-oval interior plus the base oval: the extremes
        // match the forced pair balance of the degree-9 nest scheme.
        assert_eq!(oracle_extremes(4, 0, 27, BaseMode::Vertex), Ok((-3, 3)));
    }

    #[test]
    fn oracle_within_bound() {
        let bound = sweep_bound(4, 2, BaseMode::Vertex).unwrap();
        assert_eq!(bound, 5);
        let (min, max) = oracle_extremes(4, 2, 10, BaseMode::Vertex).unwrap();
        assert!(-bound <= min && max <= bound);
    }

    #[test]
    fn oracle_infeasible_beta() {
        assert_eq!(
            oracle_extremes(4, 0, 2, BaseMode::Vertex),
            Err(SweepError::InfeasibleBeta { beta: 2, needed: 3 })
        );
        assert_eq!(
            oracle_extremes(5, 1, 2, BaseMode::Exterior),
            Err(SweepError::InfeasibleBeta { beta: 2, needed: 3 })
        );
    }

    #[test]
    fn oracle_limit() {
        let err = oracle_extremes(3, 30, 40, BaseMode::Vertex).unwrap_err();
        assert!(matches!(err, SweepError::SearchSpaceTooLarge { .. }));
        // A wide instance must abort quickly rather than expand signatures.
        let err = oracle_extremes(40, 30, 200, BaseMode::Vertex).unwrap_err();
        assert!(matches!(err, SweepError::SearchSpaceTooLarge { .. }));
    }

    #[test]
    fn negation_symmetry() {
        for k in 3..=5u32 {
            for alpha in 0..=2u32 {
                for beta in (k - 1)..=10u32 {
                    let (min, max) = oracle_extremes(k, alpha, beta, BaseMode::Vertex).unwrap();
                    assert_eq!(min, -max, "k={k} alpha={alpha} beta={beta}");
                }
            }
        }
    }

    #[test]
    fn monotone_in_alpha() {
        for k in 3..=5u32 {
            for beta in (k - 1)..=10u32 {
                let mut last = i64::MIN;
                for alpha in 0..=3u32 {
                    let (_, max) = oracle_extremes(k, alpha, beta, BaseMode::Vertex).unwrap();
                    assert!(max >= last, "k={k} alpha={alpha} beta={beta}");
                    last = max;
                }
            }
        }
    }

    #[test]
    fn not_monotone_in_beta() {
        // Parity can shrink the attainable range: with a single chain and no
        // jumps, an even run contributes nothing.
        assert_eq!(oracle_extremes(3, 0, 4, BaseMode::Vertex), Ok((-2, 2)));
        assert_eq!(oracle_extremes(3, 0, 5, BaseMode::Vertex), Ok((-1, 1)));
    }

    #[test]
    fn exterior_base_extremes() {
        // k = 5, alpha = 1, beta = 7: three chains, no jumps allowed, and
        // 7 splits into three odd runs.
        let (min, max) = oracle_extremes(5, 1, 7, BaseMode::Exterior).unwrap();
        assert_eq!((min, max), (-3, 3));
        assert_eq!(sweep_bound(5, 1, BaseMode::Exterior), Ok(3));
        // With 6 ovals at most two runs can be odd.
        let (min, max) = oracle_extremes(5, 1, 6, BaseMode::Exterior).unwrap();
        assert_eq!((min, max), (-2, 2));
    }

    #[test]
    fn signatures_cover_all_partitions() {
        // 4 ovals in 2 chains, one jump available.
        let signatures = collect_signatures(4, 2, 1);
        assert!(signatures.contains(&vec![(1, 0), (3, 0)]));
        assert!(signatures.contains(&vec![(2, 0), (2, 0)]));
        assert!(signatures.contains(&vec![(1, 0), (3, 1)]));
        assert!(signatures.contains(&vec![(2, 0), (2, 1)]));
        // Ordered duplicates are cut.
        assert!(!signatures.contains(&vec![(3, 0), (1, 0)]));
        // Sizes always sum to the total.
        for s in &signatures {
            assert_eq!(s.iter().map(|p| p.0).sum::<u32>(), 4);
        }
    }

    #[test]
    fn binomial_small_table() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(12, 0), 1);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(26, 13), 10400600);
    }
}
