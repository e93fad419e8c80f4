//! Real and complex schemes of the one-nest family and their orientation
//! balances.
//!
//! A real scheme `<J, alpha, 1<beta>>` consists of the pseudo-line, `alpha`
//! exterior empty ovals and one non-empty oval `O` enclosing `beta` empty
//! ovals. A complex scheme refines it with a sign for every oval: `eps` for
//! `O`, `alpha+/alpha-` and `beta+/beta-` splitting the empty ovals by sign.
//!
//! The injective pairs of this family are exactly the `beta` pairs formed by
//! `O` with one interior oval. Writing `D = Pi+ - Pi-` for the pair balance,
//! the Rokhlin-Mishachev identity
//!
//! ```text
//! 2 (Pi+ - Pi-) + (Lambda+ - Lambda-) = k^2 - 2k
//! ```
//!
//! must reduce to `D + 1 + (alpha+ - alpha-) = k^2 - 2k` when `O` is
//! positive and to `3D - 1 + (alpha+ - alpha-) = k^2 - 2k` when `O` is
//! negative. Substituting `Lambda+ - Lambda- = eps + (alpha+ - alpha-) +
//! (beta+ - beta-)`, both reductions hold exactly when
//!
//! ```text
//! D = -eps * (beta+ - beta-)
//! ```
//!
//! which is therefore adopted as the pair-sign convention: an injective pair
//! is positive precisely when its two ovals carry opposite signs.

use std::fmt;

use thiserror::Error;

use crate::params::CurveParams;

/// Complex-orientation sign of an oval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// `+1` or `-1`.
    pub fn unit(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flipped(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// Invalid scheme shapes.
#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum SchemeError {
    #[error("the non-empty oval must contain at least one oval (beta >= 1)")]
    EmptyNest,
}

/// Isotopy type `<J, alpha, 1<beta>>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RealScheme {
    alpha: u32,
    beta: u32,
}

impl RealScheme {
    pub fn new(alpha: u32, beta: u32) -> Result<Self, SchemeError> {
        if beta == 0 {
            return Err(SchemeError::EmptyNest);
        }
        Ok(Self { alpha, beta })
    }

    /// Exterior empty ovals.
    pub fn alpha(&self) -> u32 {
        self.alpha
    }

    /// Ovals interior to the non-empty oval.
    pub fn beta(&self) -> u32 {
        self.beta
    }

    /// All ovals, including the non-empty one.
    pub fn total_ovals(&self) -> u64 {
        u64::from(self.alpha) + u64::from(self.beta) + 1
    }

    /// Whether the scheme uses the full oval budget of an M-curve of the
    /// given degree.
    pub fn is_m_scheme(&self, params: &CurveParams) -> bool {
        self.total_ovals() == params.oval_budget()
    }
}

/// A real scheme enriched with complex-orientation signs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ComplexScheme {
    eps: Sign,
    alpha_plus: u32,
    alpha_minus: u32,
    beta_plus: u32,
    beta_minus: u32,
}

impl ComplexScheme {
    pub fn new(
        eps: Sign,
        alpha_plus: u32,
        alpha_minus: u32,
        beta_plus: u32,
        beta_minus: u32,
    ) -> Result<Self, SchemeError> {
        if beta_plus == 0 && beta_minus == 0 {
            return Err(SchemeError::EmptyNest);
        }
        Ok(Self {
            eps,
            alpha_plus,
            alpha_minus,
            beta_plus,
            beta_minus,
        })
    }

    /// Sign of the non-empty oval.
    pub fn eps(&self) -> Sign {
        self.eps
    }

    pub fn alpha_plus(&self) -> u32 {
        self.alpha_plus
    }

    pub fn alpha_minus(&self) -> u32 {
        self.alpha_minus
    }

    pub fn beta_plus(&self) -> u32 {
        self.beta_plus
    }

    pub fn beta_minus(&self) -> u32 {
        self.beta_minus
    }

    pub fn alpha(&self) -> u32 {
        self.alpha_plus + self.alpha_minus
    }

    pub fn beta(&self) -> u32 {
        self.beta_plus + self.beta_minus
    }

    /// `alpha+ - alpha-`.
    pub fn alpha_diff(&self) -> i64 {
        i64::from(self.alpha_plus) - i64::from(self.alpha_minus)
    }

    /// `beta+ - beta-`.
    pub fn beta_diff(&self) -> i64 {
        i64::from(self.beta_plus) - i64::from(self.beta_minus)
    }

    /// The underlying real scheme.
    pub fn real_scheme(&self) -> RealScheme {
        RealScheme {
            alpha: self.alpha(),
            beta: self.beta(),
        }
    }

    /// Injective-pair balance `D = Pi+ - Pi- = -eps * (beta+ - beta-)`.
    pub fn pi_balance(&self) -> i64 {
        -self.eps.unit() * self.beta_diff()
    }

    /// Oval-sign balance `Lambda+ - Lambda- = eps + (alpha+ - alpha-) +
    /// (beta+ - beta-)`.
    pub fn lambda_balance(&self) -> i64 {
        self.eps.unit() + self.alpha_diff() + self.beta_diff()
    }

    pub fn balances(&self) -> Balances {
        Balances::of(self)
    }
}

/// Derived pair and sign counts of a complex scheme.
///
/// Every injective pair joins the non-empty oval with one interior oval, so
/// `pi_plus + pi_minus = beta` and the two counts are recovered from the
/// pair balance. `beta` and the balance always share parity, making the
/// halving exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Balances {
    pi_plus: u32,
    pi_minus: u32,
    pi_balance: i64,
    lambda_balance: i64,
}

impl Balances {
    pub fn of(scheme: &ComplexScheme) -> Self {
        let beta = i64::from(scheme.beta());
        let pi_balance = scheme.pi_balance();
        debug_assert_eq!((beta + pi_balance) % 2, 0);
        let pi_plus = (beta + pi_balance) / 2;
        let pi_minus = (beta - pi_balance) / 2;
        Self {
            pi_plus: pi_plus as u32,
            pi_minus: pi_minus as u32,
            pi_balance,
            lambda_balance: scheme.lambda_balance(),
        }
    }

    pub fn pi_plus(&self) -> u32 {
        self.pi_plus
    }

    pub fn pi_minus(&self) -> u32 {
        self.pi_minus
    }

    pub fn pi_balance(&self) -> i64 {
        self.pi_balance
    }

    pub fn lambda_balance(&self) -> i64 {
        self.lambda_balance
    }
}
