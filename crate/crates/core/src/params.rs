//! Numerical invariants attached to the degree of the curve.

use thiserror::Error;

/// Rejected degrees.
#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum DegreeError {
    #[error("degree must be odd, got {0}")]
    Even(u32),
    #[error("degree must be at least 5, got {0}")]
    TooSmall(u32),
}

/// Parameters of a non-singular real plane curve of odd degree `m = 2k + 1`.
///
/// The complex point set is a surface of genus `g = (m - 1)(m - 2) / 2` and
/// the real point set consists of at most `g + 1` circles: the pseudo-line
/// plus at most `g` ovals. An M-curve attains the maximum, so its oval
/// budget equals the genus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CurveParams {
    m: u32,
    k: u32,
    genus: u64,
}

impl CurveParams {
    /// Parameters for an odd degree `m >= 5`.
    pub fn new(m: u32) -> Result<Self, DegreeError> {
        if m % 2 == 0 {
            return Err(DegreeError::Even(m));
        }
        if m < 5 {
            return Err(DegreeError::TooSmall(m));
        }
        let k = (m - 1) / 2;
        let genus = u64::from(k) * u64::from(2 * k - 1);
        Ok(Self { m, k, genus })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn genus(&self) -> u64 {
        self.genus
    }

    /// Number of ovals of an M-curve of this degree.
    pub fn oval_budget(&self) -> u64 {
        self.genus
    }

    /// `k^2 - 2k`, the Rokhlin-Mishachev right-hand side for an M-curve of
    /// degree `2k + 1`.
    pub fn rm_rhs(&self) -> i64 {
        let k = i64::from(self.k);
        k * k - 2 * k
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_nine() {
        let p = CurveParams::new(9).unwrap();
        assert_eq!(p.k(), 4);
        assert_eq!(p.genus(), 28);
        assert_eq!(p.oval_budget(), 28);
        assert_eq!(p.rm_rhs(), 8);
    }

    #[test]
    fn degree_seven() {
        let p = CurveParams::new(7).unwrap();
        assert_eq!(p.k(), 3);
        assert_eq!(p.genus(), 15);
        assert_eq!(p.rm_rhs(), 3);
    }

    #[test]
    fn degree_five() {
        let p = CurveParams::new(5).unwrap();
        assert_eq!(p.k(), 2);
        assert_eq!(p.genus(), 6);
        assert_eq!(p.rm_rhs(), 0);
    }

    #[test]
    fn even_degree_rejected() {
        assert_eq!(CurveParams::new(8), Err(DegreeError::Even(8)));
    }

    #[test]
    fn small_degree_rejected() {
        assert_eq!(CurveParams::new(3), Err(DegreeError::TooSmall(3)));
        assert_eq!(CurveParams::new(1), Err(DegreeError::TooSmall(1)));
    }

    #[test]
    fn genus_matches_closed_form() {
        for m in (5..=99u32).step_by(2) {
            let p = CurveParams::new(m).unwrap();
            let g = u64::from(m - 1) * u64::from(m - 2) / 2;
            assert_eq!(p.genus(), g, "degree {m}");
        }
    }
}
