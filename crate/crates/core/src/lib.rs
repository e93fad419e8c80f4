//! Restrictions on complex orientations of odd-degree M-curves with a
//! unique non-empty oval.
//!
//! A real plane curve of odd degree `m = 2k + 1` has one pseudo-line `J`
//! and a collection of ovals; this crate works with the family whose real
//! scheme is `<J, alpha, 1<beta>>`: `alpha` exterior empty ovals plus one
//! non-empty oval enclosing `beta` empty ovals. An M-curve carries the
//! maximal number of components, is dividing, and therefore inherits a
//! complex orientation, which refines the real scheme to a complex scheme
//! `<J, a+, a-, 1e<b+, b->>`.
//!
//! The crate provides:
//!
//! * [`notation`] — the bracket grammar, a parser and the canonical printer;
//! * [`scheme`] — scheme values and their orientation balances;
//! * [`rules`] — the arithmetic restrictions (Rokhlin-Mishachev identity,
//!   pair-balance bounds, congruence and inequalities on the exterior
//!   signs), each an independent rule with pass / fail / not-applicable
//!   verdicts;
//! * [`enumerate`] — exhaustive generation of the orientations surviving
//!   every rule for degrees 5 to 11;
//! * [`db`] — a flat-file knowledge base of statuses established by other
//!   means (constructions and geometric exclusions);
//! * [`sweep`] — a combinatorial model of pencil-of-lines sweeps certifying
//!   the pair-balance bounds by brute force on small instances.

pub mod db;
pub mod enumerate;
pub mod notation;
pub mod params;
pub mod rules;
pub mod scheme;
pub mod sweep;

pub use db::{
    AnnotatedResult, AnnotatedSurvivor, Database, DbError, LookupOutcome, SchemeKind,
    SchemeRecord, SchemeStatus,
};
pub use enumerate::{
    admissible_real, enumerate_orientations, min_alpha, min_alpha_with, EnumerateError,
    EnumerationResult,
};
pub use notation::{parse_any, parse_scheme, AnyScheme, NotationError, ParsedScheme};
pub use params::{CurveParams, DegreeError};
pub use rules::{
    check_all, rule_l3_alpha_floor, rule_l3_congruence, rule_l3_inequalities, rule_lemma2,
    rule_rm, validate_m_scheme, Outcome, Report, RuleId, RuleVerdict,
};
pub use scheme::{Balances, ComplexScheme, RealScheme, SchemeError, Sign};
pub use sweep::{
    oracle_extremes, sweep_bound, BaseMode, Chain, Run, SweepConfig, SweepError, CONFIG_LIMIT,
};
