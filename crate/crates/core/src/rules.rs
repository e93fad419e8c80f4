//! Restriction rules on complex schemes, each returning a verdict.
//!
//! Every restriction is an independently invocable rule. A rule whose
//! hypotheses are unmet reports `NotApplicable` with the reason, never a
//! failure, so that adding rules can only shrink the admissible set. The
//! verdict detail always embeds the instantiated numbers.
//!
//! Applicability:
//!
//! * `rm-identity` needs an M-curve; the rewritten identities assume the
//!   maximal oval count on the right-hand side.
//! * `lemma2-bounds` needs degree <= 11, which guarantees the interior
//!   ovals a convex hull; for degree >= 13 they may have none.
//! * `lemma3-congruence` needs an M-curve of degree >= 7 with at least one
//!   exterior empty oval and a negative non-empty oval.
//! * `lemma3-inequalities` and `lemma3-alpha-floor` need an M-curve of
//!   degree 7..=11 with at least one exterior empty oval.

use std::fmt;

use crate::params::CurveParams;
use crate::scheme::{ComplexScheme, RealScheme, Sign};

/// Stable rule identifiers, as printed in reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RuleId {
    MCount,
    RmIdentity,
    Lemma2Bounds,
    Lemma3Congruence,
    Lemma3Inequalities,
    Lemma3AlphaFloor,
}

impl RuleId {
    pub fn as_str(self) -> &'static str {
        match self {
            RuleId::MCount => "m-count",
            RuleId::RmIdentity => "rm-identity",
            RuleId::Lemma2Bounds => "lemma2-bounds",
            RuleId::Lemma3Congruence => "lemma3-congruence",
            RuleId::Lemma3Inequalities => "lemma3-inequalities",
            RuleId::Lemma3AlphaFloor => "lemma3-alpha-floor",
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    NotApplicable,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::NotApplicable => "not-applicable",
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Outcome of one rule on one scheme.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleVerdict {
    rule: RuleId,
    outcome: Outcome,
    detail: String,
}

impl RuleVerdict {
    fn pass(rule: RuleId, detail: String) -> Self {
        Self {
            rule,
            outcome: Outcome::Pass,
            detail,
        }
    }

    fn fail(rule: RuleId, detail: String) -> Self {
        debug_assert!(!detail.is_empty());
        Self {
            rule,
            outcome: Outcome::Fail,
            detail,
        }
    }

    fn not_applicable(rule: RuleId, detail: String) -> Self {
        debug_assert!(!detail.is_empty());
        Self {
            rule,
            outcome: Outcome::NotApplicable,
            detail,
        }
    }

    pub fn rule(&self) -> RuleId {
        self.rule
    }

    pub fn outcome(&self) -> Outcome {
        self.outcome
    }

    pub fn detail(&self) -> &str {
        &self.detail
    }

    pub fn is_pass(&self) -> bool {
        self.outcome == Outcome::Pass
    }

    pub fn is_fail(&self) -> bool {
        self.outcome == Outcome::Fail
    }

    pub fn is_not_applicable(&self) -> bool {
        self.outcome == Outcome::NotApplicable
    }
}

/// Aggregate of all rules on one complex scheme.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    scheme: ComplexScheme,
    params: CurveParams,
    verdicts: Vec<RuleVerdict>,
}

impl Report {
    pub fn scheme(&self) -> &ComplexScheme {
        &self.scheme
    }

    pub fn params(&self) -> &CurveParams {
        &self.params
    }

    pub fn verdicts(&self) -> &[RuleVerdict] {
        &self.verdicts
    }

    /// True when no verdict failed.
    pub fn arithmetically_admissible(&self) -> bool {
        self.verdicts.iter().all(|v| !v.is_fail())
    }

    pub fn failures(&self) -> impl Iterator<Item = &RuleVerdict> {
        self.verdicts.iter().filter(|v| v.is_fail())
    }
}

/// `m-count`: an M-curve uses its full oval budget.
pub fn validate_m_scheme(scheme: &RealScheme, params: &CurveParams) -> RuleVerdict {
    let total = scheme.total_ovals();
    let budget = params.oval_budget();
    let counted = format!(
        "oval count {} + {} + 1 = {total}",
        scheme.alpha(),
        scheme.beta()
    );
    if total == budget {
        RuleVerdict::pass(
            RuleId::MCount,
            format!("{counted} equals the M-curve budget {budget}"),
        )
    } else if total < budget {
        RuleVerdict::fail(
            RuleId::MCount,
            format!(
                "{counted} falls short of the M-curve budget {budget} by {}",
                budget - total
            ),
        )
    } else {
        RuleVerdict::fail(
            RuleId::MCount,
            format!(
                "{counted} exceeds the M-curve budget {budget} by {}",
                total - budget
            ),
        )
    }
}

fn m_curve_na(rule: RuleId, scheme: &RealScheme, params: &CurveParams) -> Option<RuleVerdict> {
    if scheme.is_m_scheme(params) {
        None
    } else {
        Some(RuleVerdict::not_applicable(
            rule,
            format!(
                "needs an M-curve: oval count {} differs from the budget {}",
                scheme.total_ovals(),
                params.oval_budget()
            ),
        ))
    }
}

fn hull_na(rule: RuleId, params: &CurveParams) -> Option<RuleVerdict> {
    if params.m() <= 11 {
        None
    } else {
        Some(RuleVerdict::not_applicable(
            rule,
            format!(
                "the interior ovals of a degree-{} curve need not have a convex hull \
                 (degree <= 11 required)",
                params.m()
            ),
        ))
    }
}

fn lemma3_common_na(
    rule: RuleId,
    scheme: &RealScheme,
    params: &CurveParams,
) -> Option<RuleVerdict> {
    if let Some(v) = m_curve_na(rule, scheme, params) {
        return Some(v);
    }
    if params.m() < 7 {
        return Some(RuleVerdict::not_applicable(
            rule,
            format!("needs degree >= 7, got {}", params.m()),
        ));
    }
    if scheme.alpha() == 0 {
        return Some(RuleVerdict::not_applicable(
            rule,
            "needs at least one exterior empty oval (alpha >= 1)".to_string(),
        ));
    }
    None
}

/// `rm-identity`: the Rokhlin-Mishachev identity rewritten for M-curves of
/// the one-nest family, `D + 1 + (alpha+ - alpha-) = k^2 - 2k` for a
/// positive non-empty oval and `3D - 1 + (alpha+ - alpha-) = k^2 - 2k` for
/// a negative one.
pub fn rule_rm(scheme: &ComplexScheme, params: &CurveParams) -> RuleVerdict {
    if let Some(v) = m_curve_na(RuleId::RmIdentity, &scheme.real_scheme(), params) {
        return v;
    }
    let d = scheme.pi_balance();
    let diff = scheme.alpha_diff();
    let rhs = params.rm_rhs();
    let (lhs, expr) = match scheme.eps() {
        Sign::Plus => (d + 1 + diff, format!("({d}) + 1 + ({diff})")),
        Sign::Minus => (3 * d - 1 + diff, format!("3*({d}) - 1 + ({diff})")),
    };
    if lhs == rhs {
        RuleVerdict::pass(
            RuleId::RmIdentity,
            format!("identity {expr} = {lhs} holds (k^2 - 2k = {rhs})"),
        )
    } else {
        RuleVerdict::fail(
            RuleId::RmIdentity,
            format!("identity {expr} = {lhs} breaks (k^2 - 2k = {rhs})"),
        )
    }
}

/// `lemma2-bounds`: for a dividing curve of degree <= 11,
/// `1 - k - alpha <= D <= k - 1 + alpha - e` where `e = 0` if `alpha = 0`
/// and `e = 1` otherwise.
pub fn rule_lemma2(scheme: &ComplexScheme, params: &CurveParams) -> RuleVerdict {
    if let Some(v) = hull_na(RuleId::Lemma2Bounds, params) {
        return v;
    }
    let k = i64::from(params.k());
    let alpha = i64::from(scheme.alpha());
    let indicator = i64::from(alpha != 0);
    let lo = 1 - k - alpha;
    let hi = k - 1 + alpha - indicator;
    let d = scheme.pi_balance();
    if d < lo {
        RuleVerdict::fail(
            RuleId::Lemma2Bounds,
            format!("D = {d} falls below the lower bound 1 - k - alpha = {lo}"),
        )
    } else if d > hi {
        RuleVerdict::fail(
            RuleId::Lemma2Bounds,
            format!("D = {d} exceeds the upper bound k - 1 + alpha - {indicator} = {hi}"),
        )
    } else {
        RuleVerdict::pass(
            RuleId::Lemma2Bounds,
            format!("bounds 1 - k - alpha = {lo} <= D = {d} <= k - 1 + alpha - {indicator} = {hi}"),
        )
    }
}

/// `lemma3-congruence`: with a negative non-empty oval,
/// `alpha+ - alpha- = (k - 1)^2 (mod 3)`.
pub fn rule_l3_congruence(scheme: &ComplexScheme, params: &CurveParams) -> RuleVerdict {
    let rule = RuleId::Lemma3Congruence;
    if let Some(v) = lemma3_common_na(rule, &scheme.real_scheme(), params) {
        return v;
    }
    if scheme.eps() == Sign::Plus {
        return RuleVerdict::not_applicable(
            rule,
            "applies only when the non-empty oval is negative".to_string(),
        );
    }
    let diff = scheme.alpha_diff();
    let k = i64::from(params.k());
    let target = (k - 1) * (k - 1);
    if diff.rem_euclid(3) == target.rem_euclid(3) {
        RuleVerdict::pass(
            rule,
            format!("alpha+ - alpha- = {diff} matches (k - 1)^2 = {target} (mod 3)"),
        )
    } else {
        RuleVerdict::fail(
            rule,
            format!("alpha+ - alpha- = {diff} misses (k - 1)^2 = {target} (mod 3)"),
        )
    }
}

/// `lemma3-inequalities`: `k^2 - 3k + 1 <= 2 alpha+` for a positive
/// non-empty oval, `k^2 - 5k + 7 <= 2 alpha+ + 2 alpha` for a negative one.
pub fn rule_l3_inequalities(scheme: &ComplexScheme, params: &CurveParams) -> RuleVerdict {
    let rule = RuleId::Lemma3Inequalities;
    if let Some(v) = lemma3_common_na(rule, &scheme.real_scheme(), params) {
        return v;
    }
    if let Some(v) = hull_na(rule, params) {
        return v;
    }
    let k = i64::from(params.k());
    let alpha_plus = i64::from(scheme.alpha_plus());
    match scheme.eps() {
        Sign::Plus => {
            let lhs = k * k - 3 * k + 1;
            let rhs = 2 * alpha_plus;
            if lhs <= rhs {
                RuleVerdict::pass(rule, format!("k^2 - 3k + 1 = {lhs} <= 2 alpha+ = {rhs}"))
            } else {
                RuleVerdict::fail(rule, format!("k^2 - 3k + 1 = {lhs} > 2 alpha+ = {rhs}"))
            }
        }
        Sign::Minus => {
            let lhs = k * k - 5 * k + 7;
            let rhs = 2 * alpha_plus + 2 * i64::from(scheme.alpha());
            if lhs <= rhs {
                RuleVerdict::pass(
                    rule,
                    format!("k^2 - 5k + 7 = {lhs} <= 2 alpha+ + 2 alpha = {rhs}"),
                )
            } else {
                RuleVerdict::fail(
                    rule,
                    format!("k^2 - 5k + 7 = {lhs} > 2 alpha+ + 2 alpha = {rhs}"),
                )
            }
        }
    }
}

/// `lemma3-alpha-floor`: `alpha >= (k^2 - 5k + 7) / 4`, a real-scheme-level
/// screen implied by the two sign-specific inequalities.
pub fn rule_l3_alpha_floor(scheme: &RealScheme, params: &CurveParams) -> RuleVerdict {
    let rule = RuleId::Lemma3AlphaFloor;
    if let Some(v) = lemma3_common_na(rule, scheme, params) {
        return v;
    }
    if let Some(v) = hull_na(rule, params) {
        return v;
    }
    let k = i64::from(params.k());
    let lhs = 4 * i64::from(scheme.alpha());
    let rhs = k * k - 5 * k + 7;
    if lhs >= rhs {
        RuleVerdict::pass(rule, format!("4 alpha = {lhs} >= k^2 - 5k + 7 = {rhs}"))
    } else {
        RuleVerdict::fail(rule, format!("4 alpha = {lhs} < k^2 - 5k + 7 = {rhs}"))
    }
}

/// Runs every scheme-level rule in fixed order: `m-count`, `rm-identity`,
/// `lemma2-bounds`, `lemma3-congruence`, `lemma3-inequalities`.
pub fn check_all(scheme: &ComplexScheme, params: &CurveParams) -> Report {
    let real = scheme.real_scheme();
    let verdicts = vec![
        validate_m_scheme(&real, params),
        rule_rm(scheme, params),
        rule_lemma2(scheme, params),
        rule_l3_congruence(scheme, params),
        rule_l3_inequalities(scheme, params),
    ];
    Report {
        scheme: *scheme,
        params: *params,
        verdicts,
    }
}
