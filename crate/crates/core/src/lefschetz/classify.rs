use num::rational::BigRational;
use num::traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::Result;
use crate::lefschetz::hodge::{lefschetz_numbers, HodgeData};
use crate::lefschetz::local_terms::{point_local_term, surface_local_term, Sheaf};
use crate::linalg::Matrix;
use crate::poly;
use crate::scalar::integer;

/// `∫ c_2` of a K3 surface.
pub const K3_EULER: i64 = 24;
/// `∫ c_2` of an abelian surface.
pub const ABELIAN_EULER: i64 = 0;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassificationSolution {
    pub tau: i64,
    pub n: i64,
    pub k: i64,
    /// `Σ a_j` over all fixed surfaces.
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub sum_a: BigRational,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Rejection {
    NegativePoints,
    NegativeK3,
    NonIntegralPoints,
    NonIntegralK3,
}

/// One row `point·N + k3·K + a·Σa = lefschetz` per sheaf.
#[derive(Clone, Debug, PartialEq)]
pub struct SystemRow {
    pub sheaf: Sheaf,
    pub point: BigRational,
    pub k3: BigRational,
    pub a: BigRational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Classification {
    pub rows: Vec<SystemRow>,
    pub solutions: Vec<ClassificationSolution>,
    pub rejected: Vec<(i64, Vec<Rejection>)>,
    /// `N(τ)`, `16·K(τ)`, `Σa(τ)` as polynomials in `τ`, constant term first.
    pub reduced: ReducedSystem,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReducedSystem {
    pub points: Vec<BigRational>,
    pub sixteen_k3: Vec<BigRational>,
    pub sum_a: Vec<BigRational>,
}

impl ReducedSystem {
    /// Real interval on which `N(τ) ≥ 0`, from the quadratic `N(τ)`.
    pub fn nonnegative_points_interval(&self) -> Option<(f64, f64)> {
        let c: Vec<f64> = self.points.iter().map(|x| x.to_f64().unwrap()).collect();
        if c.len() != 3 || c[2] >= 0.0 {
            return None;
        }
        let disc = c[1] * c[1] - 4.0 * c[2] * c[0];
        if disc < 0.0 {
            return None;
        }
        let r1 = (-c[1] + disc.sqrt()) / (2.0 * c[2]);
        let r2 = (-c[1] - disc.sqrt()) / (2.0 * c[2]);
        Some((r1.min(r2), r1.max(r2)))
    }
}

pub fn system_rows() -> Result<Vec<SystemRow>> {
    Sheaf::ALL
        .iter()
        .map(|&sheaf| {
            let surface = surface_local_term::<BigRational>(sheaf)?;
            Ok(SystemRow {
                sheaf,
                point: point_local_term(sheaf),
                // a K3 contributes its c2 integral; its a_j goes into Σa
                k3: surface.integrate(&integer(K3_EULER), &integer(0)),
                a: surface.a.clone(),
            })
        })
        .collect()
}

fn solve_for(rows: &[SystemRow], rhs: &[BigRational; 3]) -> Option<[BigRational; 3]> {
    let m = Matrix::from_rows(rows.iter().map(|r| vec![r.point.clone(), r.k3.clone(), r.a.clone()]).collect());
    let x = m.inverse()?.mul_vec(rhs);
    Some([x[0].clone(), x[1].clone(), x[2].clone()])
}

/// Enumerates every trace `τ` with `|τ| ≤ h^{1,1}`, `τ ≡ h^{1,1} (mod 2)`,
/// solves the three Lefschetz equations for `(N, K, Σa)` and keeps the
/// integral, nonnegative solutions.
pub fn solve_classification(hodge: &HodgeData) -> Result<Classification> {
    let rows = system_rows()?;
    let h = hodge.h11 as i64;
    let mut solutions = Vec::new();
    let mut rejected = Vec::new();
    let mut tau = -h;
    while tau <= h {
        let rhs = lefschetz_numbers(tau, hodge)?;
        let [n, k, sum_a] = solve_for(&rows, &rhs).expect("Lefschetz system is nonsingular");
        let mut reasons = Vec::new();
        if n.is_negative() {
            reasons.push(Rejection::NegativePoints);
        }
        if k.is_negative() {
            reasons.push(Rejection::NegativeK3);
        }
        if !n.is_integer() {
            reasons.push(Rejection::NonIntegralPoints);
        }
        if !k.is_integer() {
            reasons.push(Rejection::NonIntegralK3);
        }
        if reasons.is_empty() {
            solutions.push(ClassificationSolution {
                tau,
                n: n.to_integer().to_i64().unwrap(),
                k: k.to_integer().to_i64().unwrap(),
                sum_a,
            });
        } else {
            rejected.push((tau, reasons));
        }
        tau += 2;
    }
    let reduced = reduced_system(&rows, hodge)?;
    Ok(Classification { rows, solutions, rejected, reduced })
}

/// Eliminates `Σa` symbolically: the solution is quadratic in `τ`, so three
/// samples of the right-hand side determine it.
fn reduced_system(rows: &[SystemRow], hodge: &HodgeData) -> Result<ReducedSystem> {
    let taus: Vec<BigRational> = (0..3).map(integer).collect();
    let mut samples = [Vec::new(), Vec::new(), Vec::new()];
    for t in 0..3 {
        let rhs = lefschetz_numbers_unchecked(t, hodge)?;
        let x = solve_for(rows, &rhs).expect("nonsingular");
        for (s, v) in samples.iter_mut().zip(x) {
            s.push(v);
        }
    }
    let interp = |ys: &[BigRational]| poly::trim(poly::interpolate(&taus, ys));
    let sixteen: Vec<BigRational> = samples[1].iter().map(|k| k * integer(16)).collect();
    Ok(ReducedSystem { points: interp(&samples[0]), sixteen_k3: interp(&sixteen), sum_a: interp(&samples[2]) })
}

/// Lefschetz numbers as polynomials in `τ`, evaluated without the parity check.
fn lefschetz_numbers_unchecked(tau: i64, hodge: &HodgeData) -> Result<[BigRational; 3]> {
    let h = integer(hodge.h11 as i64);
    let t = integer(tau);
    let sigma = integer(1) + h / integer(2) + t.clone() * t.clone() / integer(2);
    Ok([integer(3), integer(-2) * t, integer(2) + sigma])
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CorollaryReport {
    pub tau: i64,
    pub at_least_12_points: bool,
    pub at_most_one_k3: bool,
    pub k3_forces_28_points: bool,
    /// `K = 0` and `Σa > 0`: some fixed surface exists and all fixed surfaces are abelian.
    pub requires_abelian_surface: bool,
    pub has_fixed_surface: bool,
}

impl CorollaryReport {
    pub fn holds(&self) -> bool {
        self.at_least_12_points && self.at_most_one_k3 && self.k3_forces_28_points && self.has_fixed_surface
    }
}

pub fn corollary_check(sol: &ClassificationSolution) -> CorollaryReport {
    let requires_abelian = sol.k == 0 && sol.sum_a > BigRational::zero();
    CorollaryReport {
        tau: sol.tau,
        at_least_12_points: sol.n >= 12,
        at_most_one_k3: sol.k <= 1,
        k3_forces_28_points: sol.k != 1 || sol.n == 28,
        requires_abelian_surface: requires_abelian,
        has_fixed_surface: sol.k >= 1 || requires_abelian,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_cases() {
        let c = solve_classification(&HodgeData::default()).unwrap();
        let got: Vec<_> = c.solutions.iter().map(|s| (s.tau, s.n, s.k, s.sum_a.clone())).collect();
        assert_eq!(got, vec![(-3, 12, 0, integer(36)), (3, 36, 0, integer(12)), (5, 28, 1, integer(36))]);
    }

    #[test]
    fn reduced_equations() {
        let c = solve_classification(&HodgeData::default()).unwrap();
        assert_eq!(c.reduced.points, vec![integer(33), integer(4), integer(-1)]);
        assert_eq!(c.reduced.sixteen_k3, vec![integer(-9), integer(0), integer(1)]);
        let (lo, hi) = c.reduced.nonnegative_points_interval().unwrap();
        assert!((lo - (2.0 - 37f64.sqrt())).abs() < 1e-12);
        assert!((hi - (2.0 + 37f64.sqrt())).abs() < 1e-12);
    }

    #[test]
    fn seven_excluded() {
        let c = solve_classification(&HodgeData::default()).unwrap();
        let reasons = |t| c.rejected.iter().find(|(tau, _)| *tau == t).map(|(_, r)| r.clone()).unwrap();
        assert!(reasons(7).contains(&Rejection::NonIntegralK3));
        assert!(reasons(-7).contains(&Rejection::NegativePoints));
    }

    #[test]
    fn corollary() {
        let c = solve_classification(&HodgeData::default()).unwrap();
        for s in &c.solutions {
            let r = corollary_check(s);
            assert!(r.holds());
            assert_eq!(r.requires_abelian_surface, s.k == 0);
        }
    }
}
