use num::rational::BigRational;
use num::traits::Zero;
use num::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::census::FromRational;
use crate::epw::lagrangian::{
    fiber_split, numeric_eigenvalues, numeric_fiber_dim, numeric_rank, FiberSplit, InvariantLagrangian,
};
use crate::epw::operators::SelfAdjointOp;
use crate::epw::split::{f1, f2, plus_coords};
use crate::error::{Error, Result};
use crate::exalg::MultiVector;
use crate::linalg::{dot, Matrix};
use crate::poly;
use crate::scalar::{integer, Field};

type Q = BigRational;
type C64 = Complex<f64>;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EigenPoint {
    /// `λ` in the point `f1 + λ f2`.
    pub lambda: String,
    pub exact: bool,
    pub residual: f64,
    pub fiber: FiberSplit,
}

/// The points `f1 + λ f2` of `Y_A ∩ P(V⁻)`, one per eigenvalue of `u`.
pub fn eigen_fixed_points(lag: &InvariantLagrangian) -> Result<Vec<EigenPoint>> {
    let u = &lag.u;
    if !u.has_distinct_eigenvalues() {
        return Err(Error::RepeatedEigenvalues);
    }
    if let Some(ev) = u.exact_spectrum() {
        return ev
            .iter()
            .map(|l| {
                let v = f1::<Q>() + f2::<Q>().scale(l);
                Ok(EigenPoint { lambda: l.to_string(), exact: true, residual: 0.0, fiber: fiber_split(&v, lag)? })
            })
            .collect();
    }
    let cp: Vec<C64> = u.characteristic_polynomial().iter().map(C64::from_ratio_big).collect();
    Ok(numeric_eigenvalues(u.matrix())
        .into_iter()
        .map(|l| {
            let mut v = vec![C64::zero(); 6];
            v[4] = C64::new(1.0, 0.0);
            v[5] = l;
            let fiber = FiberSplit {
                total: numeric_fiber_dim(&v, &lag.a),
                plus: numeric_fiber_dim(&v, &lag.a_plus),
                minus: numeric_fiber_dim(&v, &lag.a_minus),
            };
            EigenPoint {
                lambda: format!("{:.12}{:+.12}i", l.re, l.im),
                exact: false,
                residual: poly::eval(&cp, &l).norm(),
                fiber,
            }
        })
        .collect())
}

/// Coordinates of `v ∧ w` in `e12, e13, e14, e23, e24, e34`.
pub fn wedge_pair<F: Field>(v: &[F], w: &[F]) -> Vec<F> {
    const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    PAIRS.iter().map(|&(a, b)| v[a].clone() * w[b].clone() - v[b].clone() * w[a].clone()).collect()
}

/// `M_ab = Q(v∧w_a, u(v∧w_b))`; `qu` is the matrix of `Q·u`. Its corank is
/// `dim (v∧V⁺) ∩ u⁻¹(v∧V⁺)` when `v, w_1, w_2, w_3` span `V⁺`.
pub fn kummer_matrix<F: Field>(qu: &Matrix<F>, v: &[F], complement: &[Vec<F>]) -> Matrix<F> {
    let xs: Vec<Vec<F>> = complement.iter().map(|w| wedge_pair(v, w)).collect();
    let uxs: Vec<Vec<F>> = xs.iter().map(|x| qu.mul_vec(x)).collect();
    Matrix::from_fn(3, 3, |a, b| dot(&xs[a], &uxs[b]))
}

/// Unit vectors other than the one at the largest coordinate of `v`.
pub fn standard_complement<F: Field>(v: &[F]) -> Vec<Vec<F>> {
    let k = (0..4).max_by(|&i, &j| v[i].magnitude().partial_cmp(&v[j].magnitude()).unwrap()).unwrap();
    (0..4).filter(|&i| i != k).map(|i| (0..4).map(|j| if i == j { F::one() } else { F::zero() }).collect()).collect()
}

/// `dim (v∧V⁺) ∩ u⁻¹(v∧V⁺)`: 0 off `S`, at least 1 on `S`, 2 at a node.
pub fn kummer_membership(v: &MultiVector<Q>, u: &SelfAdjointOp) -> Result<usize> {
    let c = plus_coords(v)?;
    if c.iter().all(Zero::is_zero) {
        return Err(Error::ZeroVector("Kummer membership of the zero vector"));
    }
    let m = kummer_matrix(&u.form_matrix(), &c, &standard_complement(&c));
    Ok(3 - m.rank())
}

/// Numeric membership from singular values of the Kummer matrix at `v / |v|`.
pub fn kummer_membership_numeric(v: &[C64], u: &SelfAdjointOp, rel_tol: f64) -> (usize, Vec<f64>) {
    let norm = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    let vn: Vec<C64> = v.iter().map(|x| x / norm).collect();
    let qu = u.form_matrix().map(C64::from_ratio_big);
    let m = kummer_matrix(&qu, &vn, &standard_complement(&vn));
    let (rank, sv) = numeric_rank(&m, rel_tol);
    (3 - rank, sv)
}

/// Degree of `S` from exact interpolation of `det M` along a rational line of
/// the chart `v_1 = 1`, where the complement `e2, e3, e4` keeps `det[v, w]` constant.
pub fn kummer_degree(u: &SelfAdjointOp) -> usize {
    let qu = u.form_matrix();
    let base: Vec<Q> = [1, 2, -1, 3].iter().map(|&x| integer(x)).collect();
    let dir: Vec<Q> = [0, 1, 3, -2].iter().map(|&x| integer(x)).collect();
    let comp: Vec<Vec<Q>> = (1..4).map(|i| (0..4).map(|j| integer((i == j) as i64)).collect()).collect();
    // the restriction has degree at most 6, so 9 samples over-determine it
    let ts: Vec<Q> = (0..9).map(integer).collect();
    let ys: Vec<Q> = ts
        .iter()
        .map(|t| {
            let v: Vec<Q> = base.iter().zip(&dir).map(|(a, b)| a.clone() + t.clone() * b.clone()).collect();
            kummer_matrix(&qu, &v, &comp).determinant()
        })
        .collect();
    poly::degree(&poly::trim(poly::interpolate(&ts, &ys))).unwrap_or(0)
}

/// Simultaneous diagonalization of the Plücker form and `Q·u`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LineComplexNormalForm {
    #[serde(serialize_with = "crate::report::ser_rationals")]
    pub eigenvalues: Vec<Q>,
    #[serde(serialize_with = "crate::report::ser_matrix")]
    pub change_of_basis: Matrix<Q>,
    /// Diagonals of `G = Σ q_i X_i²`, `F = Σ q_i λ_i X_i²`, `H = Σ q_i λ_i² X_i²`.
    #[serde(serialize_with = "crate::report::ser_rationals")]
    pub g: Vec<Q>,
    #[serde(serialize_with = "crate::report::ser_rationals")]
    pub f: Vec<Q>,
    #[serde(serialize_with = "crate::report::ser_rationals")]
    pub h: Vec<Q>,
    /// `H` in the original basis equals `Q'Q⁻¹Q'` with `Q' = Q·u`.
    pub h_matches: bool,
}

pub fn line_complex_normal_form(q: &Matrix<Q>, u: &Matrix<Q>) -> Result<LineComplexNormalForm> {
    let cp = u.characteristic_polynomial();
    if !poly::is_squarefree(&cp) {
        return Err(Error::RepeatedEigenvalues);
    }
    let ev = poly::rational_roots(&cp);
    if ev.len() != u.rows() {
        return Err(Error::Unsupported("exact normal form needs rational eigenvalues".into()));
    }
    let n = u.rows();
    let cols: Vec<Vec<Q>> = ev.iter().map(|l| u.sub(&Matrix::identity(n).scale(l)).kernel().remove(0)).collect();
    let p = Matrix::from_columns(&cols);
    let q1 = q.mul(u);
    let q2 = q1.mul(u);
    let diag = |m: &Matrix<Q>| -> Option<Vec<Q>> {
        let d = p.transpose().mul(m).mul(&p);
        let off_zero = (0..n).all(|i| (0..n).all(|j| i == j || d[(i, j)].is_zero()));
        off_zero.then(|| (0..n).map(|i| d[(i, i)].clone()).collect())
    };
    let g = diag(q).ok_or_else(|| Error::Unsupported("eigenvectors not orthogonal for the form".into()))?;
    let f = diag(&q1).ok_or_else(|| Error::Unsupported("Q·u not diagonal in the eigenbasis".into()))?;
    let h = diag(&q2).ok_or_else(|| Error::Unsupported("Q·u² not diagonal in the eigenbasis".into()))?;
    let q_inv = q.inverse().ok_or_else(|| Error::InvalidArgument("form is degenerate".into()))?;
    let h_matches = q1.mul(&q_inv).mul(&q1) == q2
        && (0..n).all(|i| h[i] == g[i].clone() * ev[i].clone() * ev[i].clone() && f[i] == g[i].clone() * ev[i].clone());
    Ok(LineComplexNormalForm { eigenvalues: ev, change_of_basis: p, g, f, h, h_matches })
}

impl LineComplexNormalForm {
    /// Samples points of `G ∩ F ∩ H` and returns the largest relative value of
    /// the three original forms there.
    pub fn sample_sigma(&self, q: &Matrix<Q>, u: &Matrix<Q>, seed: u64, count: usize) -> f64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = |m: &Matrix<Q>| m.map(C64::from_ratio_big);
        let forms = [c(q), c(&q.mul(u)), c(&q.mul(u).mul(u))];
        let p = c(&self.change_of_basis);
        let g: Vec<C64> = self.g.iter().map(C64::from_ratio_big).collect();
        let l: Vec<C64> = self.eigenvalues.iter().map(C64::from_ratio_big).collect();
        let mut worst: f64 = 0.0;
        for _ in 0..count {
            let mut y: Vec<C64> =
                (0..6).map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
            // solve Σ g_i λ_i^j y_i² = 0 (j = 0, 1, 2) for y_0², y_1², y_2²
            let a = Matrix::from_fn(3, 3, |j, i| g[i] * l[i].powu(j as u32));
            let rhs: Vec<C64> =
                (0..3).map(|j| -(3..6).map(|i| g[i] * l[i].powu(j as u32) * y[i] * y[i]).sum::<C64>()).collect();
            let s = a.solve(&rhs).expect("Vandermonde system with distinct eigenvalues");
            for i in 0..3 {
                y[i] = s[i].sqrt();
            }
            let x = p.mul_vec(&y);
            let n2: f64 = x.iter().map(|z| z.norm_sqr()).sum();
            for f in &forms {
                worst = worst.max(dot(&x, &f.mul_vec(&x)).norm() / n2);
            }
        }
        worst
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::epw::lagrangian::fiber_dim;
    use crate::epw::split::{plucker_matrix, plus_vector as plus, wedge2_plus_coords};

    #[test]
    fn reference_eigen_points() {
        let lag = InvariantLagrangian::reference();
        let pts = eigen_fixed_points(&lag).unwrap();
        assert_eq!(pts.len(), 6);
        for (k, p) in pts.iter().enumerate() {
            assert_eq!(p.lambda, (k + 1).to_string());
            assert_eq!((p.fiber.total, p.fiber.plus, p.fiber.minus), (1, 0, 1));
        }
    }

    #[test]
    fn zero_eigenvalue_gives_f1() {
        let ev: Vec<Q> = (0..6).map(integer).collect();
        let u = SelfAdjointOp::from_spectral(&SelfAdjointOp::hyperbolic_eigenbasis(), &ev).unwrap();
        let lag = InvariantLagrangian::assemble(u, crate::epw::SymmetricPhi::reference()).unwrap();
        let pts = eigen_fixed_points(&lag).unwrap();
        assert_eq!(pts[0].lambda, "0");
        assert_eq!(fiber_dim(&f1::<Q>(), &lag.a).unwrap(), 1);
    }

    #[test]
    fn identity_rejected() {
        let u = SelfAdjointOp::from_matrix(Matrix::identity(6)).unwrap();
        let lag = InvariantLagrangian::assemble(u, crate::epw::SymmetricPhi::reference()).unwrap();
        assert_eq!(eigen_fixed_points(&lag), Err(Error::RepeatedEigenvalues));
    }

    #[test]
    fn membership_matches_minus_fiber() {
        let lag = InvariantLagrangian::reference();
        for v in [[1, 2, -3, 5], [1, 0, 0, 0], [0, 1, 1, 0], [2, -1, 4, 7]] {
            let c: Vec<Q> = v.iter().map(|&x| integer(x)).collect();
            let m = kummer_membership(&plus(&c), &lag.u).unwrap();
            assert_eq!(m, fiber_dim(&plus(&c), &lag.a_minus).unwrap());
            assert_eq!(m, 0);
        }
        assert!(kummer_membership(&f1::<Q>(), &lag.u).is_err());
    }

    #[test]
    fn degree_is_four() {
        assert_eq!(kummer_degree(&SelfAdjointOp::reference()), 4);
    }

    #[test]
    fn normal_form() {
        let u = SelfAdjointOp::reference();
        let nf = line_complex_normal_form(&plucker_matrix(), u.matrix()).unwrap();
        assert_eq!(nf.eigenvalues, (1..=6).map(integer).collect::<Vec<_>>());
        assert!(nf.h_matches);
        assert!(nf.sample_sigma(&plucker_matrix(), u.matrix(), 3, 50) < 1e-10);
        for (j, x) in SelfAdjointOp::hyperbolic_eigenbasis().iter().enumerate() {
            let pair = Matrix::from_rows(vec![nf.change_of_basis.column(j), wedge2_plus_coords(x)]);
            assert_eq!(pair.rank(), 1);
        }
    }

    #[test]
    fn diagonal_normal_form_is_identity() {
        let q = Matrix::diagonal(&[1, -1, 1, -1, 1, -1].map(integer));
        let u = Matrix::diagonal(&(1..=6).map(integer).collect::<Vec<_>>());
        let nf = line_complex_normal_form(&q, &u).unwrap();
        assert_eq!(nf.change_of_basis, Matrix::identity(6));
        assert!(nf.h_matches);
    }
}
