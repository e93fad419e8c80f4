//! Exhaustive generation of complex orientations of M-schemes
//! `<J, alpha, 1<beta>>` for a given degree, filtered by the rules.
//!
//! Candidates are generated by solving the rewritten Rokhlin-Mishachev
//! identities rather than scanning all sign splittings: for each `eps` and
//! each split `alpha+ + alpha- = alpha`, the identity determines the pair
//! balance `D` (for a negative non-empty oval it must divide by 3), and
//! `beta+ = (beta - eps * D) / 2` must be an integer in `[0, beta]`.
//! Candidates failing integrality or range are counted as searched and
//! rejected. Each remaining candidate runs through `check_all`.

use thiserror::Error;

use crate::db::Database;
use crate::params::CurveParams;
use crate::rules::{check_all, Report};
use crate::scheme::{ComplexScheme, RealScheme, Sign};

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum EnumerateError {
    /// Degrees above 11 lose Lemma 2 and Lemma 3(2); enumeration there
    /// would report near-vacuous "survivors" and is refused.
    #[error("degree {0} is out of the supported range (5 <= m <= 11, odd)")]
    UnsupportedDegree(u32),
    #[error("alpha = {alpha} leaves no room for the nest: an M-curve of degree {m} has \
             {budget} ovals and needs beta >= 1")]
    AlphaTooLarge { alpha: u32, m: u32, budget: u64 },
}

/// All surviving orientations for one `(degree, alpha)`.
#[derive(Debug, Clone)]
pub struct EnumerationResult {
    pub params: CurveParams,
    pub alpha: u32,
    /// Survivors with their reports, sorted by canonical string.
    pub survivors: Vec<(ComplexScheme, Report)>,
    /// Candidates examined, including integrality and range rejections.
    pub searched: u32,
}

impl EnumerationResult {
    /// Interior ovals forced by the M-count: `budget - 1 - alpha`.
    pub fn beta(&self) -> u32 {
        (self.params.oval_budget() - 1 - u64::from(self.alpha)) as u32
    }
}

fn supported(params: &CurveParams, alpha: u32) -> Result<(), EnumerateError> {
    if params.m() > 11 {
        return Err(EnumerateError::UnsupportedDegree(params.m()));
    }
    let budget = params.oval_budget();
    if u64::from(alpha) > budget - 2 {
        return Err(EnumerateError::AlphaTooLarge {
            alpha,
            m: params.m(),
            budget,
        });
    }
    Ok(())
}

/// Enumerates every complex orientation of the M-scheme with the given
/// number of exterior ovals and returns the arithmetic survivors.
pub fn enumerate_orientations(
    params: &CurveParams,
    alpha: u32,
) -> Result<EnumerationResult, EnumerateError> {
    supported(params, alpha)?;
    let beta = (params.oval_budget() - 1 - u64::from(alpha)) as i64;
    let rhs = params.rm_rhs();

    let mut survivors = Vec::new();
    let mut searched = 0u32;
    for eps in [Sign::Plus, Sign::Minus] {
        for alpha_plus in 0..=alpha {
            searched += 1;
            let alpha_minus = alpha - alpha_plus;
            let diff = i64::from(alpha_plus) - i64::from(alpha_minus);
            let d = match eps {
                Sign::Plus => rhs - 1 - diff,
                Sign::Minus => {
                    let numerator = rhs + 1 - diff;
                    if numerator % 3 != 0 {
                        continue;
                    }
                    numerator / 3
                }
            };
            let doubled = beta - eps.unit() * d;
            if doubled < 0 || doubled > 2 * beta || doubled % 2 != 0 {
                continue;
            }
            let beta_plus = (doubled / 2) as u32;
            let beta_minus = (beta as u32) - beta_plus;
            let scheme = ComplexScheme::new(eps, alpha_plus, alpha_minus, beta_plus, beta_minus)
                .expect("beta >= 1 by the alpha bound");
            let report = check_all(&scheme, params);
            if report.arithmetically_admissible() {
                survivors.push((scheme, report));
            }
        }
    }
    survivors.sort_by_key(|(scheme, _)| scheme.to_string());
    Ok(EnumerationResult {
        params: *params,
        alpha,
        survivors,
        searched,
    })
}

/// One row per `alpha` with the arithmetic survivor count; zero-count rows
/// are retained.
pub fn admissible_real(
    params: &CurveParams,
) -> Result<Vec<(RealScheme, usize)>, EnumerateError> {
    supported(params, 0)?;
    let max_alpha = (params.oval_budget() - 2) as u32;
    let mut rows = Vec::with_capacity(max_alpha as usize + 1);
    for alpha in 0..=max_alpha {
        let result = enumerate_orientations(params, alpha)?;
        let beta = result.beta();
        let scheme = RealScheme::new(alpha, beta).expect("beta >= 1");
        rows.push((scheme, result.survivors.len()));
    }
    Ok(rows)
}

/// Smallest `alpha` admitting an orientation that survives the rules and is
/// not already excluded as a complex scheme by the bundled knowledge base.
///
/// Orientation-level exclusions established by non-arithmetic means are
/// final, so an `alpha` whose every survivor carries such a record is
/// skipped. Records about the underlying real schemes are not consulted
/// here; `Database::lookup` gives the full view for a single scheme.
pub fn min_alpha(params: &CurveParams) -> Result<Option<u32>, EnumerateError> {
    min_alpha_with(params, Database::bundled())
}

/// `min_alpha` against a caller-provided knowledge base.
pub fn min_alpha_with(
    params: &CurveParams,
    db: &Database,
) -> Result<Option<u32>, EnumerateError> {
    supported(params, 0)?;
    let max_alpha = (params.oval_budget() - 2) as u32;
    for alpha in 0..=max_alpha {
        let result = enumerate_orientations(params, alpha)?;
        let viable = result
            .survivors
            .iter()
            .any(|(scheme, _)| db.complex_exclusion(params.m(), scheme).is_none());
        if viable {
            return Ok(Some(alpha));
        }
    }
    Ok(None)
}
