//! Bracket notation for schemes: parser and canonical printer.
//!
//! ```text
//! scheme := '<' 'J' (',' group)* '>'
//! group  := COUNT SIGN? NEST?
//! NEST   := '<' (inner (',' inner)*)? '>'
//! inner  := COUNT SIGN?
//! COUNT  := decimal integer >= 1
//! SIGN   := '+' | '-'
//! ```
//!
//! Whitespace is permitted around every token. At most one group carries a
//! nest, and that group's count must be 1. A scheme is *real* when no sign
//! occurs anywhere and *complex* when every group and every inner oval is
//! signed; mixing the two is rejected.
//!
//! Canonical printing writes a single space after each comma, orders groups
//! as [exterior `+`, exterior `-`, nest] with same-sign exterior groups
//! merged, orders the nest interior as [`+`, `-`] and omits zero counts:
//! `<J, 3+, 1+<10+, 14->>`, `<J, 2, 1<25>>`.

use std::fmt;

use thiserror::Error;

use crate::scheme::{ComplexScheme, RealScheme, SchemeError, Sign};

/// Parse failures. Positions are 1-based character offsets.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NotationError {
    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("scheme has no nest; exactly one non-empty oval is required")]
    MissingNest,
    #[error("second nest at position {pos}; only one oval may be non-empty")]
    MultipleNests { pos: usize },
    #[error("groups mix signed and unsigned ovals; sign all of them or none")]
    MixedSigns,
    #[error("the nest is empty; the non-empty oval must contain at least one oval")]
    EmptyNest,
}

/// A scheme with exactly one nest, as required of the one-nest family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParsedScheme {
    Real(RealScheme),
    Complex(ComplexScheme),
}

impl ParsedScheme {
    pub fn degree_real_scheme(&self) -> RealScheme {
        match self {
            ParsedScheme::Real(s) => *s,
            ParsedScheme::Complex(s) => s.real_scheme(),
        }
    }

    pub fn canonical_string(&self) -> String {
        match self {
            ParsedScheme::Real(s) => s.to_string(),
            ParsedScheme::Complex(s) => s.to_string(),
        }
    }
}

impl fmt::Display for ParsedScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_string())
    }
}

/// Any grammatical scheme, including the nest-free form `<J, n>` in which
/// every oval is empty. Knowledge-base records may use the bare form; the
/// one-nest operations reject it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnyScheme {
    Real(RealScheme),
    Complex(ComplexScheme),
    /// `<J, n>`: `n` empty ovals and no nest.
    Bare(u32),
}

impl AnyScheme {
    pub fn canonical_string(&self) -> String {
        match self {
            AnyScheme::Real(s) => s.to_string(),
            AnyScheme::Complex(s) => s.to_string(),
            AnyScheme::Bare(0) => "<J>".to_string(),
            AnyScheme::Bare(n) => format!("<J, {n}>"),
        }
    }

    pub fn is_signed(&self) -> bool {
        matches!(self, AnyScheme::Complex(_))
    }

    /// All ovals, nested or not.
    pub fn total_ovals(&self) -> u64 {
        match self {
            AnyScheme::Real(s) => s.total_ovals(),
            AnyScheme::Complex(s) => s.real_scheme().total_ovals(),
            AnyScheme::Bare(n) => u64::from(*n),
        }
    }
}

impl fmt::Display for AnyScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_string())
    }
}

impl fmt::Display for RealScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<J, ")?;
        if self.alpha() > 0 {
            write!(f, "{}, ", self.alpha())?;
        }
        write!(f, "1<{}>>", self.beta())
    }
}

impl fmt::Display for ComplexScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<J, ")?;
        if self.alpha_plus() > 0 {
            write!(f, "{}+, ", self.alpha_plus())?;
        }
        if self.alpha_minus() > 0 {
            write!(f, "{}-, ", self.alpha_minus())?;
        }
        write!(f, "1{}<", self.eps())?;
        match (self.beta_plus(), self.beta_minus()) {
            (0, bm) => write!(f, "{bm}-")?,
            (bp, 0) => write!(f, "{bp}+")?,
            (bp, bm) => write!(f, "{bp}+, {bm}-")?,
        }
        write!(f, ">>")
    }
}

/// Parses a scheme, requiring exactly one nest.
pub fn parse_scheme(text: &str) -> Result<ParsedScheme, NotationError> {
    match parse_any(text)? {
        AnyScheme::Real(s) => Ok(ParsedScheme::Real(s)),
        AnyScheme::Complex(s) => Ok(ParsedScheme::Complex(s)),
        AnyScheme::Bare(_) => Err(NotationError::MissingNest),
    }
}

/// Parses any grammatical scheme, allowing the unsigned nest-free form.
pub fn parse_any(text: &str) -> Result<AnyScheme, NotationError> {
    let ast = Parser::new(text).parse()?;
    ast.classify()
}

struct Inner {
    count: u32,
    sign: Option<Sign>,
}

struct Group {
    count: u32,
    sign: Option<Sign>,
    nest: Option<Vec<Inner>>,
    nest_pos: usize,
}

struct Ast {
    groups: Vec<Group>,
}

impl Ast {
    fn classify(self) -> Result<AnyScheme, NotationError> {
        let mut nest: Option<&Group> = None;
        for group in &self.groups {
            if group.nest.is_some() {
                if nest.is_some() {
                    return Err(NotationError::MultipleNests {
                        pos: group.nest_pos,
                    });
                }
                nest = Some(group);
            }
        }

        let mut items = 0usize;
        let mut signed = 0usize;
        for group in &self.groups {
            items += 1;
            signed += usize::from(group.sign.is_some());
            for inner in group.nest.iter().flatten() {
                items += 1;
                signed += usize::from(inner.sign.is_some());
            }
        }
        if signed != 0 && signed != items {
            return Err(NotationError::MixedSigns);
        }
        let all_signed = items > 0 && signed == items;

        let sum = |acc: u32, n: u32| -> Result<u32, NotationError> {
            acc.checked_add(n).ok_or(NotationError::Syntax {
                pos: 1,
                message: "oval counts overflow".to_string(),
            })
        };

        let Some(nest_group) = nest else {
            if all_signed {
                // A signed scheme needs the nest to carry the sign of the
                // non-empty oval.
                return Err(NotationError::MissingNest);
            }
            let mut total = 0u32;
            for group in &self.groups {
                total = sum(total, group.count)?;
            }
            return Ok(AnyScheme::Bare(total));
        };
        let inners = nest_group.nest.as_deref().unwrap_or(&[]);

        if all_signed {
            let eps = nest_group.sign.expect("signed scheme");
            let (mut ap, mut am) = (0u32, 0u32);
            for group in &self.groups {
                if group.nest.is_some() {
                    continue;
                }
                match group.sign.expect("signed scheme") {
                    Sign::Plus => ap = sum(ap, group.count)?,
                    Sign::Minus => am = sum(am, group.count)?,
                }
            }
            let (mut bp, mut bm) = (0u32, 0u32);
            for inner in inners {
                match inner.sign.expect("signed scheme") {
                    Sign::Plus => bp = sum(bp, inner.count)?,
                    Sign::Minus => bm = sum(bm, inner.count)?,
                }
            }
            let scheme = ComplexScheme::new(eps, ap, am, bp, bm).map_err(from_scheme_error)?;
            Ok(AnyScheme::Complex(scheme))
        } else {
            let mut alpha = 0u32;
            for group in &self.groups {
                if group.nest.is_some() {
                    continue;
                }
                alpha = sum(alpha, group.count)?;
            }
            let mut beta = 0u32;
            for inner in inners {
                beta = sum(beta, inner.count)?;
            }
            let scheme = RealScheme::new(alpha, beta).map_err(from_scheme_error)?;
            Ok(AnyScheme::Real(scheme))
        }
    }
}

fn from_scheme_error(err: SchemeError) -> NotationError {
    match err {
        SchemeError::EmptyNest => NotationError::EmptyNest,
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn new(text: &str) -> Self {
        Self {
            chars: text.chars().collect(),
            pos: 0,
        }
    }

    fn parse(mut self) -> Result<Ast, NotationError> {
        self.skip_ws();
        self.expect('<')?;
        self.skip_ws();
        self.expect('J')?;
        let mut groups = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                Some(',') => {
                    self.bump();
                    groups.push(self.parse_group()?);
                }
                Some('>') => {
                    self.bump();
                    break;
                }
                _ => return Err(self.error("expected ',' or '>'")),
            }
        }
        self.skip_ws();
        if self.peek().is_some() {
            return Err(self.error("unexpected input after the closing '>'"));
        }
        Ok(Ast { groups })
    }

    fn parse_group(&mut self) -> Result<Group, NotationError> {
        self.skip_ws();
        let count_pos = self.pos + 1;
        let count = self.parse_count()?;
        self.skip_ws();
        let sign = self.parse_sign();
        self.skip_ws();
        let mut nest = None;
        let mut nest_pos = 0;
        if self.peek() == Some('<') {
            nest_pos = self.pos + 1;
            if count != 1 {
                return Err(NotationError::Syntax {
                    pos: count_pos,
                    message: format!("a nested group must have count 1, got {count}"),
                });
            }
            self.bump();
            nest = Some(self.parse_inners()?);
        }
        Ok(Group {
            count,
            sign,
            nest,
            nest_pos,
        })
    }

    fn parse_inners(&mut self) -> Result<Vec<Inner>, NotationError> {
        let mut inners = Vec::new();
        self.skip_ws();
        if self.peek() == Some('>') {
            self.bump();
            return Ok(inners);
        }
        loop {
            self.skip_ws();
            let count = self.parse_count()?;
            self.skip_ws();
            let sign = self.parse_sign();
            inners.push(Inner { count, sign });
            self.skip_ws();
            match self.peek() {
                Some(',') => {
                    self.bump();
                }
                Some('>') => {
                    self.bump();
                    return Ok(inners);
                }
                _ => return Err(self.error("expected ',' or '>' inside the nest")),
            }
        }
    }

    fn parse_count(&mut self) -> Result<u32, NotationError> {
        let start = self.pos + 1;
        let mut digits = String::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_digit() {
                digits.push(c);
                self.bump();
            } else {
                break;
            }
        }
        if digits.is_empty() {
            return Err(self.error("expected a count"));
        }
        let value: u32 = digits.parse().map_err(|_| NotationError::Syntax {
            pos: start,
            message: format!("count {digits} is too large"),
        })?;
        if value == 0 {
            return Err(NotationError::Syntax {
                pos: start,
                message: "count must be at least 1".to_string(),
            });
        }
        Ok(value)
    }

    fn parse_sign(&mut self) -> Option<Sign> {
        match self.peek() {
            Some('+') => {
                self.bump();
                Some(Sign::Plus)
            }
            Some('-') => {
                self.bump();
                Some(Sign::Minus)
            }
            _ => None,
        }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) {
        self.pos += 1;
    }

    fn expect(&mut self, c: char) -> Result<(), NotationError> {
        if self.peek() == Some(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.error(format!("expected '{c}'")))
        }
    }

    fn error(&self, message: impl Into<String>) -> NotationError {
        NotationError::Syntax {
            pos: self.pos + 1,
            message: message.into(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn complex(eps: Sign, ap: u32, am: u32, bp: u32, bm: u32) -> ComplexScheme {
        ComplexScheme::new(eps, ap, am, bp, bm).unwrap()
    }

    #[test]
    fn parses_real_scheme() {
        let parsed = parse_scheme("<J, 2, 1<25>>").unwrap();
        assert_eq!(
            parsed,
            ParsedScheme::Real(RealScheme::new(2, 25).unwrap())
        );
    }

    #[test]
    fn parses_complex_scheme() {
        let parsed = parse_scheme("<J, 1+, 1-, 1-<14+, 11->>").unwrap();
        assert_eq!(
            parsed,
            ParsedScheme::Complex(complex(Sign::Minus, 1, 1, 14, 11))
        );
    }

    #[test]
    fn exterior_group_after_nest_reorders() {
        let parsed = parse_scheme("<J, 1+<6-, 8+>, 1->").unwrap();
        assert_eq!(
            parsed,
            ParsedScheme::Complex(complex(Sign::Plus, 0, 1, 8, 6))
        );
        assert_eq!(parsed.canonical_string(), "<J, 1-, 1+<8+, 6->>");
    }

    #[test]
    fn whitespace_is_free() {
        let parsed = parse_scheme("  < J ,  2 , 1 < 25 > >  ").unwrap();
        assert_eq!(
            parsed,
            ParsedScheme::Real(RealScheme::new(2, 25).unwrap())
        );
    }

    #[test]
    fn merges_same_sign_groups() {
        let parsed = parse_scheme("<J, 1+, 1+, 1+, 1-<2+, 3+, 1->>").unwrap();
        assert_eq!(
            parsed,
            ParsedScheme::Complex(complex(Sign::Minus, 3, 0, 5, 1))
        );
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(
            complex(Sign::Plus, 3, 0, 10, 14).to_string(),
            "<J, 3+, 1+<10+, 14->>"
        );
        assert_eq!(RealScheme::new(1, 26).unwrap().to_string(), "<J, 1, 1<26>>");
        assert_eq!(
            complex(Sign::Minus, 0, 0, 15, 12).to_string(),
            "<J, 1-<15+, 12->>"
        );
        assert_eq!(complex(Sign::Plus, 0, 2, 0, 4).to_string(), "<J, 2-, 1+<4->>");
    }

    #[test]
    fn rejects_mixed_signs() {
        assert_eq!(parse_scheme("<J, 2, 1+<3->>"), Err(NotationError::MixedSigns));
        assert_eq!(parse_scheme("<J, 1+, 1<3>>"), Err(NotationError::MixedSigns));
    }

    #[test]
    fn rejects_multiple_nests() {
        let err = parse_scheme("<J, 1<2>, 1<3>>").unwrap_err();
        assert!(matches!(err, NotationError::MultipleNests { .. }));
    }

    #[test]
    fn rejects_missing_nest() {
        assert_eq!(parse_scheme("<J, 15>"), Err(NotationError::MissingNest));
        assert_eq!(parse_scheme("<J>"), Err(NotationError::MissingNest));
        // Signed schemes need the nest for the sign of the non-empty oval.
        assert_eq!(parse_scheme("<J, 3+>"), Err(NotationError::MissingNest));
    }

    #[test]
    fn rejects_empty_nest() {
        assert_eq!(parse_scheme("<J, 2, 1<>>"), Err(NotationError::EmptyNest));
    }

    #[test]
    fn rejects_nested_group_count() {
        let err = parse_scheme("<J, 2<3>>").unwrap_err();
        assert_eq!(
            err,
            NotationError::Syntax {
                pos: 5,
                message: "a nested group must have count 1, got 2".to_string()
            }
        );
    }

    #[test]
    fn rejects_zero_count() {
        let err = parse_scheme("<J, 0, 1<3>>").unwrap_err();
        assert!(matches!(err, NotationError::Syntax { pos: 5, .. }));
    }

    #[test]
    fn rejects_trailing_input() {
        let err = parse_scheme("<J, 1<3>> extra").unwrap_err();
        assert!(matches!(err, NotationError::Syntax { .. }));
    }

    #[test]
    fn rejects_deeper_nesting() {
        let err = parse_scheme("<J, 1<1<2>>>").unwrap_err();
        assert!(matches!(err, NotationError::Syntax { .. }));
    }

    #[test]
    fn bare_scheme_parses_loosely() {
        assert_eq!(parse_any("<J, 15>"), Ok(AnyScheme::Bare(15)));
        assert_eq!(AnyScheme::Bare(15).canonical_string(), "<J, 15>");
        assert_eq!(parse_any("<J>"), Ok(AnyScheme::Bare(0)));
    }

    proptest! {
        #[test]
        fn real_round_trip(alpha in 0u32..200, beta in 1u32..200) {
            let scheme = RealScheme::new(alpha, beta).unwrap();
            let text = scheme.to_string();
            let reparsed = parse_scheme(&text).unwrap();
            prop_assert_eq!(reparsed, ParsedScheme::Real(scheme));
            prop_assert_eq!(reparsed.canonical_string(), text);
        }

        #[test]
        fn complex_round_trip(
            plus in proptest::bool::ANY,
            ap in 0u32..100,
            am in 0u32..100,
            bp in 0u32..100,
            bm in 0u32..100,
        ) {
            prop_assume!(bp + bm >= 1);
            let eps = if plus { Sign::Plus } else { Sign::Minus };
            let scheme = ComplexScheme::new(eps, ap, am, bp, bm).unwrap();
            let text = scheme.to_string();
            let reparsed = parse_scheme(&text).unwrap();
            prop_assert_eq!(reparsed, ParsedScheme::Complex(scheme));
            prop_assert_eq!(reparsed.canonical_string(), text);
        }
    }
}
