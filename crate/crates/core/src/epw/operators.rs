use num::rational::BigRational;
use num::traits::Zero;
use serde::Serialize;

use crate::epw::split::{hat_basis, plucker_matrix, plus_vector, wedge2_plus, wedge2_plus_coords};
use crate::error::{Error, Result};
use crate::exalg::MultiVector;
use crate::linalg::Matrix;
use crate::poly;
use crate::scalar::{integer, Field};

type Q = BigRational;

/// Operator on `∧²V⁺` (basis `e12..e34`) that is self-adjoint for the Plücker form.
#[derive(Clone, Debug, PartialEq)]
pub struct SelfAdjointOp {
    matrix: Matrix<Q>,
}

impl SelfAdjointOp {
    pub fn from_matrix(matrix: Matrix<Q>) -> Result<Self> {
        if matrix.rows() != 6 || matrix.cols() != 6 {
            return Err(Error::WrongDimension { expected: 6, found: matrix.rows() });
        }
        let q = plucker_matrix();
        let qu = q.mul(&matrix);
        for i in 0..6 {
            for j in i + 1..6 {
                if qu[(i, j)] != qu[(j, i)] {
                    return Err(Error::NotSelfAdjoint(i, j));
                }
            }
        }
        Ok(SelfAdjointOp { matrix })
    }

    /// `u = P diag(λ) P⁻¹` with the eigenvectors as columns of `P`.
    pub fn from_spectral(eigenvectors: &[MultiVector<Q>], eigenvalues: &[Q]) -> Result<Self> {
        if eigenvectors.len() != 6 || eigenvalues.len() != 6 {
            return Err(Error::WrongDimension { expected: 6, found: eigenvectors.len().min(eigenvalues.len()) });
        }
        for x in eigenvectors {
            x.check_degree(2)?;
            if x.terms().any(|(b, _)| b.indices().iter().any(|&i| i > 4)) {
                return Err(Error::NotInPlusSpace);
            }
        }
        let cols: Vec<Vec<Q>> = eigenvectors.iter().map(wedge2_plus_coords).collect();
        let p = Matrix::from_columns(&cols);
        let p_inv = p.inverse().ok_or_else(|| Error::InvalidArgument("eigenvectors are linearly dependent".into()))?;
        Self::from_matrix(p.mul(&Matrix::diagonal(eigenvalues)).mul(&p_inv))
    }

    /// Eigenvectors `e12 ± e34, e13 ± e24, e14 ± e23` (Plücker-orthogonal and
    /// not decomposable).
    pub fn hyperbolic_eigenbasis() -> Vec<MultiVector<Q>> {
        let c = |i: usize, s: i64| {
            let mut v = vec![integer(0); 6];
            v[i] = integer(1);
            v[5 - i] = integer(s);
            wedge2_plus(&v)
        };
        vec![c(0, 1), c(0, -1), c(1, 1), c(1, -1), c(2, 1), c(2, -1)]
    }

    pub fn reference() -> Self {
        let ev: Vec<Q> = (1..=6).map(integer).collect();
        Self::from_spectral(&Self::hyperbolic_eigenbasis(), &ev).expect("reference spectral data")
    }

    pub fn matrix(&self) -> &Matrix<Q> {
        &self.matrix
    }

    pub fn apply(&self, x: &MultiVector<Q>) -> MultiVector<Q> {
        wedge2_plus(&self.matrix.mul_vec(&wedge2_plus_coords(x)))
    }

    pub fn characteristic_polynomial(&self) -> Vec<Q> {
        self.matrix.characteristic_polynomial()
    }

    pub fn has_distinct_eigenvalues(&self) -> bool {
        poly::is_squarefree(&self.characteristic_polynomial())
    }

    /// Rational eigenvalues, ascending.
    pub fn rational_eigenvalues(&self) -> Vec<Q> {
        poly::rational_roots(&self.characteristic_polynomial())
    }

    /// All eigenvalues when they are rational and distinct.
    pub fn exact_spectrum(&self) -> Option<Vec<Q>> {
        let ev = self.rational_eigenvalues();
        (ev.len() == 6).then_some(ev)
    }

    pub fn eigenvector(&self, lambda: &Q) -> Option<Vec<Q>> {
        let shifted = self.matrix.sub(&Matrix::identity(6).scale(lambda));
        let k = shifted.kernel();
        (k.len() == 1).then(|| k[0].clone())
    }

    /// `Q·u`, the matrix of the second quadric of the line complex.
    pub fn form_matrix(&self) -> Matrix<Q> {
        plucker_matrix().mul(&self.matrix)
    }
}

/// `φ: V⁺ → ∧³V⁺` with matrix `B` in the bases `e_j` and `ê_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetricPhi {
    b: Matrix<Q>,
    /// `P` with `B = Pᵀ diag(1,-1,1,-1) P`, when known.
    frame: Option<Matrix<Q>>,
}

impl SymmetricPhi {
    pub fn new(b: Matrix<Q>) -> Result<Self> {
        if b.rows() != 4 || b.cols() != 4 {
            return Err(Error::WrongDimension { expected: 4, found: b.rows() });
        }
        for i in 0..4 {
            for j in i + 1..4 {
                if b[(i, j)] != b[(j, i)] {
                    return Err(Error::PhiNotSymmetric(i, j));
                }
            }
        }
        Ok(SymmetricPhi { b, frame: None })
    }

    /// `B = Pᵀ diag(1,-1,1,-1) P`: the quadric is split over the rationals.
    pub fn split_from_frame(p: Matrix<Q>) -> Result<Self> {
        let d = Matrix::diagonal(&[integer(1), integer(-1), integer(1), integer(-1)]);
        if p.determinant().is_zero() {
            return Err(Error::PhiSingular);
        }
        let mut phi = Self::new(p.transpose().mul(&d).mul(&p))?;
        phi.frame = Some(p);
        Ok(phi)
    }

    pub fn reference_frame() -> Matrix<Q> {
        let rows = [[1, 2, 0, 1], [0, 1, 3, 1], [2, 0, 1, 1], [1, 1, 1, 3]];
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| integer(x)).collect()).collect())
    }

    pub fn reference() -> Self {
        Self::split_from_frame(Self::reference_frame()).expect("reference frame is invertible")
    }

    pub fn matrix(&self) -> &Matrix<Q> {
        &self.b
    }

    pub fn frame(&self) -> Option<&Matrix<Q>> {
        self.frame.as_ref()
    }

    pub fn is_invertible(&self) -> bool {
        !self.b.determinant().is_zero()
    }

    /// `φ(v)` for `v` given by coordinates on `e_1..e_4`.
    pub fn apply(&self, v: &[Q]) -> MultiVector<Q> {
        let c = self.b.mul_vec(v);
        hat_basis::<Q>().iter().zip(&c).fold(MultiVector::zero(6, 3), |acc, (h, ci)| acc + h.scale(ci))
    }

    /// `v ∧ φ(w) = w ∧ φ(v)` on basis pairs, computed with the wedge product.
    pub fn symmetric_by_wedge(&self) -> Result<bool> {
        let unit = |i: usize| {
            let mut c = vec![integer(0); 4];
            c[i] = integer(1);
            c
        };
        for i in 0..4 {
            for j in 0..4 {
                let vi = plus_vector(&unit(i));
                let vj = plus_vector(&unit(j));
                if vi.wedge(&self.apply(&unit(j)))? != vj.wedge(&self.apply(&unit(i)))? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Rational point of the quadric from a point `(α:β) × (γ:δ)` of `P¹×P¹`.
    pub fn quadric_point(&self, ab: [i64; 2], cd: [i64; 2]) -> Option<Vec<Q>> {
        let p_inv = self.frame.as_ref()?.inverse()?;
        let (a, b, c, d) = (integer(ab[0]), integer(ab[1]), integer(cd[0]), integer(cd[1]));
        // x0² - x1² + x2² - x3² = pq - rs with p = x0-x1, q = x0+x1, r = x2-x3, s = -(x2+x3)
        let p = a.clone() * c.clone();
        let q = b.clone() * d.clone();
        let r = a * d;
        let s = b * c;
        let half = Q::from_ratio(1, 2);
        let x = vec![
            (p.clone() + q.clone()) * half.clone(),
            (q - p) * half.clone(),
            (r.clone() - s.clone()) * half.clone(),
            -(r + s) * half,
        ];
        Some(p_inv.mul_vec(&x))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuadricReport {
    #[serde(serialize_with = "crate::report::ser_matrix")]
    pub matrix: Matrix<Q>,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub determinant: Q,
    pub smooth: bool,
}

/// Matrix of `v ↦ B(v, v)`; the quadric is `v ∧ φ(v) = 0`.
pub fn quadric_of_phi(phi: &SymmetricPhi) -> QuadricReport {
    let determinant = phi.b.determinant();
    QuadricReport { matrix: phi.b.clone(), smooth: !determinant.is_zero(), determinant }
}

impl QuadricReport {
    pub fn eval<F: Field>(&self, v: &[F]) -> F {
        let m = self.matrix.map(|q| crate::census::FromRational::from_ratio_big(q));
        crate::linalg::dot(v, &m.mul_vec(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::epw::split::top_plus_coefficient;

    #[test]
    fn reference_u() {
        let u = SelfAdjointOp::reference();
        let h = Q::from_ratio(1, 2);
        assert_eq!(u.matrix()[(0, 0)], integer(3) * h.clone());
        assert_eq!(u.matrix()[(0, 5)], -h.clone());
        assert_eq!(u.matrix()[(2, 2)], integer(11) * h);
        assert!(u.has_distinct_eigenvalues());
        assert_eq!(u.rational_eigenvalues(), (1..=6).map(integer).collect::<Vec<_>>());
        for x in SelfAdjointOp::hyperbolic_eigenbasis() {
            assert_ne!(top_plus_coefficient(&x, &x).unwrap(), integer(0));
        }
    }

    #[test]
    fn not_self_adjoint() {
        let mut m = Matrix::identity(6);
        m[(0, 1)] = integer(1);
        assert!(matches!(SelfAdjointOp::from_matrix(m), Err(Error::NotSelfAdjoint(_, _))));
    }

    #[test]
    fn phi_checks() {
        let phi = SymmetricPhi::reference();
        assert!(phi.matrix().is_symmetric());
        assert!(phi.is_invertible());
        assert!(phi.symmetric_by_wedge().unwrap());
        let mut b = Matrix::identity(4);
        b[(0, 1)] = integer(2);
        assert!(matches!(SymmetricPhi::new(b), Err(Error::PhiNotSymmetric(0, 1))));
        let flat = SymmetricPhi::new(Matrix::diagonal(&[integer(1), integer(1), integer(1), integer(0)])).unwrap();
        assert!(!quadric_of_phi(&flat).smooth);
        assert!(quadric_of_phi(&SymmetricPhi::new(Matrix::identity(4)).unwrap()).smooth);
        assert!(quadric_of_phi(&phi).smooth);
    }

    #[test]
    fn ruling_points_lie_on_quadric() {
        let phi = SymmetricPhi::reference();
        let q = quadric_of_phi(&phi);
        for ab in [[1, 0], [0, 1], [2, 3], [-1, 4]] {
            for cd in [[1, 1], [3, -2], [0, 1]] {
                let v = phi.quadric_point(ab, cd).unwrap();
                assert!(q.eval(&v).is_zero());
            }
        }
    }
}
