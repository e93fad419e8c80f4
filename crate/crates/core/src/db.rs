//! Flat-file knowledge base of scheme statuses established outside the
//! arithmetic rules: geometric exclusions and known constructions.
//!
//! One record per line, UTF-8: `degree;kind;scheme;status;source`. Lines
//! beginning with `#` and blank lines are ignored. `kind` is `real` or
//! `complex`, `status` is `realized` or `excluded`, `source` is a free-text
//! citation tag. Scheme strings must be canonical. Real records may use the
//! nest-free form `<J, n>`; complex records always carry the nest.
//!
//! Arithmetic exclusions are recomputable and never stored. Loading
//! validates that realized complex records of degree <= 11 pass every rule.

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

use crate::enumerate::EnumerationResult;
use crate::notation::{parse_any, AnyScheme, NotationError, ParsedScheme};
use crate::params::{CurveParams, DegreeError};
use crate::rules::{check_all, Report};
use crate::scheme::{ComplexScheme, RealScheme};

static BUNDLED_TEXT: &str = include_str!("../data/known_schemes.db");
static BUNDLED: OnceLock<Database> = OnceLock::new();

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SchemeKind {
    Real,
    Complex,
}

impl SchemeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SchemeKind::Real => "real",
            SchemeKind::Complex => "complex",
        }
    }
}

impl fmt::Display for SchemeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SchemeStatus {
    Realized,
    Excluded,
}

impl SchemeStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            SchemeStatus::Realized => "realized",
            SchemeStatus::Excluded => "excluded",
        }
    }
}

impl fmt::Display for SchemeStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One knowledge-base row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemeRecord {
    pub degree: u32,
    pub kind: SchemeKind,
    /// Canonical scheme string.
    pub scheme: String,
    pub status: SchemeStatus,
    pub source: String,
}

#[derive(Debug, Error)]
pub enum DbError {
    #[error("line {line}: expected 5 ';'-separated fields (degree;kind;scheme;status;source)")]
    Malformed { line: usize },
    #[error("line {line}: bad degree {text:?}")]
    BadDegreeText { line: usize, text: String },
    #[error("line {line}: {source}")]
    BadDegree {
        line: usize,
        #[source]
        source: DegreeError,
    },
    #[error("line {line}: unknown kind {text:?} (expected real or complex)")]
    BadKind { line: usize, text: String },
    #[error("line {line}: unknown status {text:?} (expected realized or excluded)")]
    BadStatus { line: usize, text: String },
    #[error("line {line}: {source}")]
    BadScheme {
        line: usize,
        #[source]
        source: NotationError,
    },
    #[error("line {line}: kind {kind} does not match the scheme {scheme}")]
    KindMismatch {
        line: usize,
        kind: SchemeKind,
        scheme: String,
    },
    #[error("line {line}: scheme is not canonical, expected {expected}")]
    NotCanonical { line: usize, expected: String },
    #[error("line {line}: {scheme} has {total} ovals, not the M-curve count {budget} \
             of degree {degree}")]
    NotAnMCount {
        line: usize,
        scheme: String,
        total: u64,
        budget: u64,
        degree: u32,
    },
    #[error("line {line}: duplicate record for (degree {degree}, {kind}, {scheme})")]
    DuplicateKey {
        line: usize,
        degree: u32,
        kind: SchemeKind,
        scheme: String,
    },
    #[error("line {line}: realized scheme {scheme} fails {rule}: {detail}")]
    ContradictsArithmetic {
        line: usize,
        scheme: String,
        rule: String,
        detail: String,
    },
}

/// Status returned by a lookup. `Open` means no record speaks for the key.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LookupOutcome {
    Realized { source: String },
    Excluded { source: String },
    Open,
}

impl LookupOutcome {
    pub fn status_str(&self) -> &'static str {
        match self {
            LookupOutcome::Realized { .. } => "realized",
            LookupOutcome::Excluded { .. } => "excluded",
            LookupOutcome::Open => "open",
        }
    }

    pub fn source(&self) -> Option<&str> {
        match self {
            LookupOutcome::Realized { source } | LookupOutcome::Excluded { source } => {
                Some(source)
            }
            LookupOutcome::Open => None,
        }
    }

    pub fn is_excluded(&self) -> bool {
        matches!(self, LookupOutcome::Excluded { .. })
    }
}

/// An enumeration survivor tagged with its knowledge-base status.
#[derive(Debug, Clone)]
pub struct AnnotatedSurvivor {
    pub scheme: ComplexScheme,
    pub report: Report,
    pub status: LookupOutcome,
}

/// An `EnumerationResult` with every survivor tagged; the arithmetic
/// content is untouched.
#[derive(Debug, Clone)]
pub struct AnnotatedResult {
    pub params: CurveParams,
    pub alpha: u32,
    pub searched: u32,
    pub survivors: Vec<AnnotatedSurvivor>,
}

/// Immutable, indexed record set.
#[derive(Debug, Clone)]
pub struct Database {
    records: Vec<SchemeRecord>,
    index: HashMap<(u32, SchemeKind, String), usize>,
}

impl Database {
    /// Parses and validates a record file.
    pub fn load(text: &str) -> Result<Self, DbError> {
        let mut records = Vec::new();
        let mut index = HashMap::new();
        for (number, raw) in text.lines().enumerate() {
            let line = number + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = trimmed.splitn(5, ';').collect();
            if fields.len() != 5 {
                return Err(DbError::Malformed { line });
            }
            let degree: u32 = fields[0]
                .trim()
                .parse()
                .map_err(|_| DbError::BadDegreeText {
                    line,
                    text: fields[0].trim().to_string(),
                })?;
            let params =
                CurveParams::new(degree).map_err(|source| DbError::BadDegree { line, source })?;
            let kind = match fields[1].trim() {
                "real" => SchemeKind::Real,
                "complex" => SchemeKind::Complex,
                other => {
                    return Err(DbError::BadKind {
                        line,
                        text: other.to_string(),
                    })
                }
            };
            let status = match fields[3].trim() {
                "realized" => SchemeStatus::Realized,
                "excluded" => SchemeStatus::Excluded,
                other => {
                    return Err(DbError::BadStatus {
                        line,
                        text: other.to_string(),
                    })
                }
            };
            let scheme_text = fields[2].trim();
            let parsed =
                parse_any(scheme_text).map_err(|source| DbError::BadScheme { line, source })?;
            let kind_matches = match (&parsed, kind) {
                (AnyScheme::Real(_) | AnyScheme::Bare(_), SchemeKind::Real) => true,
                (AnyScheme::Complex(_), SchemeKind::Complex) => true,
                _ => false,
            };
            if !kind_matches {
                return Err(DbError::KindMismatch {
                    line,
                    kind,
                    scheme: scheme_text.to_string(),
                });
            }
            let canonical = parsed.canonical_string();
            if canonical != scheme_text {
                return Err(DbError::NotCanonical {
                    line,
                    expected: canonical,
                });
            }
            if kind == SchemeKind::Real {
                let total = parsed.total_ovals();
                if total != params.oval_budget() {
                    return Err(DbError::NotAnMCount {
                        line,
                        scheme: canonical,
                        total,
                        budget: params.oval_budget(),
                        degree,
                    });
                }
            }
            if status == SchemeStatus::Realized && degree <= 11 {
                if let AnyScheme::Complex(cs) = &parsed {
                    let report = check_all(cs, &params);
                    if let Some(failure) = report.failures().next() {
                        return Err(DbError::ContradictsArithmetic {
                            line,
                            scheme: canonical,
                            rule: failure.rule().as_str().to_string(),
                            detail: failure.detail().to_string(),
                        });
                    }
                }
            }
            let key = (degree, kind, canonical.clone());
            if index.contains_key(&key) {
                return Err(DbError::DuplicateKey {
                    line,
                    degree,
                    kind,
                    scheme: canonical,
                });
            }
            index.insert(key, records.len());
            records.push(SchemeRecord {
                degree,
                kind,
                scheme: canonical,
                status,
                source: fields[4].trim().to_string(),
            });
        }
        Ok(Self { records, index })
    }

    /// The embedded default record set.
    pub fn bundled() -> &'static Database {
        BUNDLED.get_or_init(|| {
            Database::load(BUNDLED_TEXT).expect("bundled records must validate")
        })
    }

    pub fn records(&self) -> &[SchemeRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    fn get(&self, degree: u32, kind: SchemeKind, scheme: &str) -> Option<&SchemeRecord> {
        self.index
            .get(&(degree, kind, scheme.to_string()))
            .map(|&i| &self.records[i])
    }

    fn outcome_of(record: &SchemeRecord) -> LookupOutcome {
        match record.status {
            SchemeStatus::Realized => LookupOutcome::Realized {
                source: record.source.clone(),
            },
            SchemeStatus::Excluded => LookupOutcome::Excluded {
                source: record.source.clone(),
            },
        }
    }

    /// Status of a real scheme.
    pub fn lookup_real(&self, degree: u32, scheme: &RealScheme) -> LookupOutcome {
        match self.get(degree, SchemeKind::Real, &scheme.to_string()) {
            Some(record) => Self::outcome_of(record),
            None => LookupOutcome::Open,
        }
    }

    /// Status of a complex scheme. When no complex record exists, an
    /// exclusion of the underlying real scheme counts: no curve realizes
    /// the real scheme, so no orientation of it exists either. A realized
    /// real scheme says nothing about a particular orientation.
    pub fn lookup_complex(&self, degree: u32, scheme: &ComplexScheme) -> LookupOutcome {
        if let Some(record) = self.get(degree, SchemeKind::Complex, &scheme.to_string()) {
            return Self::outcome_of(record);
        }
        let real = scheme.real_scheme();
        match self.get(degree, SchemeKind::Real, &real.to_string()) {
            Some(record) if record.status == SchemeStatus::Excluded => Self::outcome_of(record),
            _ => LookupOutcome::Open,
        }
    }

    pub fn lookup(&self, degree: u32, scheme: &ParsedScheme) -> LookupOutcome {
        match scheme {
            ParsedScheme::Real(s) => self.lookup_real(degree, s),
            ParsedScheme::Complex(s) => self.lookup_complex(degree, s),
        }
    }

    /// Lookup covering the nest-free record form as well.
    pub fn lookup_any(&self, degree: u32, scheme: &AnyScheme) -> LookupOutcome {
        match scheme {
            AnyScheme::Real(s) => self.lookup_real(degree, s),
            AnyScheme::Complex(s) => self.lookup_complex(degree, s),
            AnyScheme::Bare(_) => {
                match self.get(degree, SchemeKind::Real, &scheme.canonical_string()) {
                    Some(record) => Self::outcome_of(record),
                    None => LookupOutcome::Open,
                }
            }
        }
    }

    /// The explicit complex-kind exclusion record for this orientation, if
    /// any. Real-scheme records are deliberately not consulted.
    pub fn complex_exclusion(&self, degree: u32, scheme: &ComplexScheme) -> Option<&SchemeRecord> {
        self.get(degree, SchemeKind::Complex, &scheme.to_string())
            .filter(|record| record.status == SchemeStatus::Excluded)
    }

    /// Tags every survivor with its status; the reports are passed through.
    pub fn annotate(&self, result: EnumerationResult) -> AnnotatedResult {
        let degree = result.params.m();
        AnnotatedResult {
            params: result.params,
            alpha: result.alpha,
            searched: result.searched,
            survivors: result
                .survivors
                .into_iter()
                .map(|(scheme, report)| AnnotatedSurvivor {
                    status: self.lookup_complex(degree, &scheme),
                    scheme,
                    report,
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::enumerate_orientations;
    use crate::notation::parse_scheme;

    fn complex(text: &str) -> ComplexScheme {
        match parse_scheme(text).unwrap() {
            ParsedScheme::Complex(s) => s,
            ParsedScheme::Real(_) => panic!("expected complex"),
        }
    }

    #[test]
    fn bundled_records_load_and_validate() {
        let db = Database::bundled();
        assert_eq!(db.len(), 44);
    }

    #[test]
    fn every_bundled_scheme_round_trips() {
        for record in Database::bundled().records() {
            let parsed = parse_any(&record.scheme).unwrap();
            assert_eq!(parsed.canonical_string(), record.scheme);
        }
    }

    #[test]
    fn lookup_excluded_with_source() {
        let db = Database::bundled();
        let outcome = db.lookup_complex(9, &complex("<J, 1-<15+, 12->>"));
        assert_eq!(
            outcome,
            LookupOutcome::Excluded {
                source: "[go], Prop 1 alt proof".to_string()
            }
        );
    }

    #[test]
    fn lookup_realized() {
        let db = Database::bundled();
        let outcome = db.lookup_complex(7, &complex("<J, 1+, 1+<6+, 7->>"));
        assert!(matches!(outcome, LookupOutcome::Realized { .. }));
    }

    #[test]
    fn lookup_absent_key_is_open() {
        let db = Database::bundled();
        let scheme = RealScheme::new(7, 20).unwrap();
        assert_eq!(db.lookup_real(9, &scheme), LookupOutcome::Open);
    }

    #[test]
    fn real_exclusion_implies_complex_exclusion() {
        // The degree-7 nest scheme has no complex record, but its real
        // scheme is excluded.
        let db = Database::bundled();
        let outcome = db.lookup_complex(7, &complex("<J, 1+<6+, 8->>"));
        assert!(outcome.is_excluded());
        assert_eq!(outcome.source(), Some("[vi1],[fi], Prop 1 alt proof"));
        // The explicit complex-record view does not see it.
        assert!(db.complex_exclusion(7, &complex("<J, 1+<6+, 8->>")).is_none());
    }

    #[test]
    fn realized_real_scheme_leaves_orientations_open() {
        let db = Database::bundled();
        // <J, 13, 1<14>> is realized, but this orientation has no record.
        let outcome = db.lookup_complex(9, &complex("<J, 7+, 6-, 1-<8+, 6->>"));
        assert_eq!(outcome, LookupOutcome::Open);
    }

    #[test]
    fn bare_scheme_lookup() {
        let db = Database::bundled();
        let outcome = db.lookup_any(7, &AnyScheme::Bare(15));
        assert!(matches!(outcome, LookupOutcome::Realized { .. }));
        assert_eq!(db.lookup_any(9, &AnyScheme::Bare(28)), LookupOutcome::Open);
    }

    #[test]
    fn accepts_the_documented_record_line() {
        let db = Database::load("7;real;<J, 15>;realized;degree-7 classification").unwrap();
        assert_eq!(db.len(), 1);
        assert_eq!(db.records()[0].kind, SchemeKind::Real);
    }

    #[test]
    fn rejects_contradictory_duplicate() {
        let text = "9;real;<J, 1<27>>;excluded;a\n9;real;<J, 1<27>>;realized;b";
        let err = Database::load(text).unwrap_err();
        assert!(matches!(err, DbError::DuplicateKey { line: 2, .. }));
    }

    #[test]
    fn rejects_malformed_line() {
        let err = Database::load("9;real;<J, 1<27>>;excluded").unwrap_err();
        assert!(matches!(err, DbError::Malformed { line: 1 }));
    }

    #[test]
    fn rejects_non_canonical_scheme() {
        let err = Database::load("9;real;<J,1<27>>;excluded;x").unwrap_err();
        match err {
            DbError::NotCanonical { line: 1, expected } => {
                assert_eq!(expected, "<J, 1<27>>");
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn rejects_kind_mismatch() {
        let err = Database::load("9;complex;<J, 1<27>>;excluded;x").unwrap_err();
        assert!(matches!(err, DbError::KindMismatch { line: 1, .. }));
    }

    #[test]
    fn rejects_non_m_real_record() {
        let err = Database::load("9;real;<J, 1<26>>;excluded;x").unwrap_err();
        assert!(matches!(err, DbError::NotAnMCount { line: 1, .. }));
    }

    #[test]
    fn rejects_realized_complex_record_failing_arithmetic() {
        let err = Database::load("9;complex;<J, 1-<14+, 13->>;realized;x").unwrap_err();
        match err {
            DbError::ContradictsArithmetic { line: 1, rule, .. } => {
                assert_eq!(rule, "rm-identity");
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn annotate_tags_survivors() {
        let db = Database::bundled();
        let nine = CurveParams::new(9).unwrap();

        let annotated = db.annotate(enumerate_orientations(&nine, 0).unwrap());
        assert_eq!(annotated.survivors.len(), 1);
        assert!(annotated.survivors[0].status.is_excluded());

        let seven = CurveParams::new(7).unwrap();
        let annotated = db.annotate(enumerate_orientations(&seven, 1).unwrap());
        assert_eq!(annotated.survivors.len(), 2);
        assert!(annotated
            .survivors
            .iter()
            .all(|s| matches!(s.status, LookupOutcome::Realized { .. })));

        let annotated = db.annotate(enumerate_orientations(&nine, 1).unwrap());
        assert!(annotated.survivors.is_empty());
    }
}
