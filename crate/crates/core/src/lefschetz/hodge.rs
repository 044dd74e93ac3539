use num::rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exalg::binomial;
use crate::scalar::{integer, Field};

/// Hodge numbers of an irreducible holomorphic symplectic fourfold whose
/// `H^4` is `S^2 H^2`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HodgeData {
    pub h11: usize,
    /// `diamond[p][q] = h^{p,q}`
    pub diamond: [[usize; 5]; 5],
}

impl Default for HodgeData {
    fn default() -> Self {
        Self::with_h11(21)
    }
}

impl HodgeData {
    pub fn with_h11(h11: usize) -> Self {
        let h22 = 1 + binomial(h11, 2) + h11;
        let mut d = [[0usize; 5]; 5];
        for (p, q) in [(0, 0), (2, 0), (0, 2), (4, 0), (0, 4), (2, 4), (4, 2), (4, 4)] {
            d[p][q] = 1;
        }
        for (p, q) in [(1, 1), (3, 1), (1, 3), (3, 3)] {
            d[p][q] = h11;
        }
        d[2][2] = h22;
        HodgeData { h11, diamond: d }
    }

    pub fn b2(&self) -> usize {
        (0..=2).map(|p| self.diamond[p][2 - p]).sum()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..5).all(|p| {
            (0..5).all(|q| self.diamond[p][q] == self.diamond[q][p] && self.diamond[p][q] == self.diamond[4 - p][4 - q])
        })
    }

    /// `h^{2,2} = 1 + dim S^2 H^{1,1}`.
    pub fn h22_consistent(&self) -> bool {
        self.diamond[2][2] == 1 + self.h11 * (self.h11 + 1) / 2
    }

    /// Trace of a symplectic involution on `H^{p,q}` given its trace `tau` on `H^{1,1}`.
    pub fn trace_on(&self, p: usize, q: usize, tau: i64) -> Result<BigRational> {
        if self.diamond[p][q] == 0 {
            return Ok(integer(0));
        }
        Ok(match (p % 2, q % 2) {
            (0, 0) if (p, q) == (2, 2) => trace_s2(tau, self.h11 as i64)?,
            (0, 0) => integer(1),
            (1, 1) => integer(tau),
            _ => integer(0),
        })
    }
}

/// Trace on `H^{2,2} ≅ C ⊕ S^2 H^{1,1}` of an involution with trace `tau` on
/// `H^{1,1}` (`h = h^{1,1}`).
pub fn trace_s2(tau: i64, h: i64) -> Result<BigRational> {
    if tau.abs() > h || (h - tau).rem_euclid(2) != 0 {
        return Err(Error::InvalidArgument(format!("trace {tau} impossible on a space of dimension {h}")));
    }
    let plus = (h + tau) / 2;
    let minus = (h - tau) / 2;
    let sigma = integer(1)
        + <BigRational as Field>::from_ratio(plus * (plus + 1), 2)
        + <BigRational as Field>::from_ratio(minus * (minus + 1), 2)
        - integer(plus * minus);
    debug_assert_eq!(
        sigma,
        integer(1) + <BigRational as Field>::from_ratio(h, 2) + <BigRational as Field>::from_ratio(tau * tau, 2)
    );
    Ok(sigma)
}

/// `(L(O), L(Ω^1), L(Ω^2))` as alternating sums of traces on `H^{p,q}`.
pub fn lefschetz_numbers(tau: i64, hodge: &HodgeData) -> Result<[BigRational; 3]> {
    let mut out = [integer(0), integer(0), integer(0)];
    for (p, slot) in out.iter_mut().enumerate() {
        let mut acc = integer(0);
        for q in 0..5 {
            let t = hodge.trace_on(p, q, tau)?;
            acc = if q % 2 == 0 { acc + t } else { acc - t };
        }
        *slot = acc;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;

    #[test]
    fn default_diamond() {
        let h = HodgeData::default();
        assert_eq!(h.b2(), 23);
        assert_eq!(h.diamond[2][2], 232);
        assert!(h.is_symmetric() && h.h22_consistent());
    }

    #[test]
    fn trace_examples() {
        assert_eq!(trace_s2(5, 21).unwrap(), integer(24));
        assert_eq!(trace_s2(-3, 21).unwrap(), integer(16));
        assert_eq!(trace_s2(21, 21).unwrap(), integer(1 + 21 * 22 / 2));
        assert!(trace_s2(4, 21).is_err());
        assert!(trace_s2(23, 21).is_err());
    }

    #[test]
    fn lefschetz_examples() {
        let h = HodgeData::default();
        assert_eq!(lefschetz_numbers(5, &h).unwrap(), [integer(3), integer(-10), integer(26)]);
        assert_eq!(lefschetz_numbers(-3, &h).unwrap(), [integer(3), integer(6), integer(18)]);
        assert_eq!(lefschetz_numbers(3, &h).unwrap(), [integer(3), integer(-6), integer(18)]);
        // (27 + τ²)/2 at τ = 1
        assert_eq!(lefschetz_numbers(1, &h).unwrap()[2], rational(14, 1));
    }
}
