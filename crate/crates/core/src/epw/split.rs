use num::rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exalg::{binomial, blades, Blade, MultiVector, Subspace};
use crate::linalg::Matrix;
use crate::scalar::Field;

type Q = BigRational;

/// `V = V⁺ ⊕ V⁻` with `V⁺ = span(e_1..e_p)` and `V⁻` spanned by the rest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct InvolutionSplit {
    pub dim_plus: usize,
}

impl InvolutionSplit {
    pub const N: usize = 6;

    pub fn new(dim_plus: usize) -> Result<Self> {
        if !(3..=5).contains(&dim_plus) {
            return Err(Error::InvalidArgument(format!("dim V+ = {dim_plus} not in 3..=5")));
        }
        Ok(InvolutionSplit { dim_plus })
    }

    pub fn standard() -> Self {
        InvolutionSplit { dim_plus: 4 }
    }

    pub fn dim_minus(self) -> usize {
        Self::N - self.dim_plus
    }

    /// Eigenvalue of the involution on a basis blade.
    pub fn blade_sign(self, b: Blade) -> i64 {
        let minus = b.indices().iter().filter(|&&i| i > self.dim_plus).count();
        if minus % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// The `sign`-eigenspace of the involution on `∧^k V`.
    pub fn eigenspace<F: Field>(self, k: usize, sign: i64) -> Subspace<F> {
        let vs: Vec<MultiVector<F>> = blades(Self::N, k)
            .into_iter()
            .filter(|&b| self.blade_sign(b) == sign)
            .map(|b| MultiVector::basis(Self::N, &b.indices()).unwrap())
            .collect();
        Subspace::span(Self::N, k, &vs).unwrap()
    }

    /// `∧^a V⁺ ⊗ ∧^b V⁻` inside `∧^{a+b} V`.
    pub fn block<F: Field>(self, a: usize, b: usize) -> Subspace<F> {
        let vs: Vec<MultiVector<F>> = blades(Self::N, a + b)
            .into_iter()
            .filter(|bl| bl.indices().iter().filter(|&&i| i <= self.dim_plus).count() == a)
            .map(|bl| MultiVector::basis(Self::N, &bl.indices()).unwrap())
            .collect();
        Subspace::span(Self::N, a + b, &vs).unwrap()
    }

    pub fn is_plus_vector<F: Field>(self, v: &MultiVector<F>) -> bool {
        v.degree() == 1 && v.terms().all(|(b, _)| b.indices()[0] <= self.dim_plus)
    }

    pub fn is_minus_vector<F: Field>(self, v: &MultiVector<F>) -> bool {
        v.degree() == 1 && v.terms().all(|(b, _)| b.indices()[0] > self.dim_plus)
    }
}

pub fn e<F: Field>(i: usize) -> MultiVector<F> {
    MultiVector::basis(InvolutionSplit::N, &[i]).unwrap()
}

/// `f_1 = e_5`.
pub fn f1<F: Field>() -> MultiVector<F> {
    e(5)
}

/// `f_2 = e_6`.
pub fn f2<F: Field>() -> MultiVector<F> {
    e(6)
}

/// Embeds coordinates on `e_1..e_4` as a vector of `V`.
pub fn plus_vector<F: Field>(coords: &[F]) -> MultiVector<F> {
    let mut c = coords.to_vec();
    c.resize(InvolutionSplit::N, F::zero());
    MultiVector::vector(&c)
}

/// Coordinates on `e_1..e_4` of a vector of `V⁺`.
pub fn plus_coords<F: Field>(v: &MultiVector<F>) -> Result<Vec<F>> {
    if !InvolutionSplit::standard().is_plus_vector(v) {
        return Err(Error::NotInPlusSpace);
    }
    Ok((1..=4).map(|i| v.coefficient(&[i])).collect())
}

/// Basis `e12, e13, e14, e23, e24, e34` of `∧²V⁺`.
pub fn wedge2_plus_basis<F: Field>() -> Vec<MultiVector<F>> {
    blades(4, 2).into_iter().map(|b| MultiVector::basis(InvolutionSplit::N, &b.indices()).unwrap()).collect()
}

/// Element of `∧²V⁺` with the given coordinates in [`wedge2_plus_basis`].
pub fn wedge2_plus<F: Field>(coords: &[F]) -> MultiVector<F> {
    wedge2_plus_basis()
        .iter()
        .zip(coords)
        .fold(MultiVector::zero(InvolutionSplit::N, 2), |acc, (b, c)| acc + b.scale(c))
}

pub fn wedge2_plus_coords<F: Field>(x: &MultiVector<F>) -> Vec<F> {
    blades(4, 2).into_iter().map(|b| x.coefficient(&b.indices())).collect()
}

/// `ê_1 = e234, ê_2 = -e134, ê_3 = e124, ê_4 = -e123`, so `e_j ∧ ê_i = δ_ij e1234`.
pub fn hat_basis<F: Field>() -> Vec<MultiVector<F>> {
    let n = InvolutionSplit::N;
    vec![
        MultiVector::basis(n, &[2, 3, 4]).unwrap(),
        -MultiVector::basis(n, &[1, 3, 4]).unwrap(),
        MultiVector::basis(n, &[1, 2, 4]).unwrap(),
        -MultiVector::basis(n, &[1, 2, 3]).unwrap(),
    ]
}

/// Coefficient of `e1234` in `x ∧ y`.
pub fn top_plus_coefficient<F: Field>(x: &MultiVector<F>, y: &MultiVector<F>) -> Result<F> {
    Ok(x.wedge(y)?.coefficient(&[1, 2, 3, 4]))
}

/// Symmetric form `Q(x, y)` = coefficient of `e1234` in `x ∧ y` on `∧²V⁺`.
#[derive(Clone, Debug, PartialEq)]
pub struct PluckerForm<F> {
    matrix: Matrix<F>,
}

impl<F: Field> PluckerForm<F> {
    pub fn new() -> Self {
        let b = wedge2_plus_basis::<F>();
        let matrix = Matrix::from_fn(6, 6, |i, j| top_plus_coefficient(&b[i], &b[j]).unwrap());
        PluckerForm { matrix }
    }

    pub fn matrix(&self) -> &Matrix<F> {
        &self.matrix
    }

    pub fn eval(&self, x: &[F], y: &[F]) -> F {
        crate::linalg::dot(x, &self.matrix.mul_vec(y))
    }
}

impl<F: Field> Default for PluckerForm<F> {
    fn default() -> Self {
        Self::new()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "verdict")]
pub enum SmoothnessVerdict {
    Obstructed { witness: String },
    Admissible,
}

/// Dimensions of the two eigenspaces of the involution on `∧³V`.
pub fn eigenspace_dims(split: InvolutionSplit) -> (usize, usize) {
    let p = split.dim_plus;
    let m = split.dim_minus();
    let plus = binomial(p, 3) + binomial(p, 1) * binomial(m, 2);
    let minus = binomial(p, 2) * binomial(m, 1) + binomial(m, 3);
    (plus, minus)
}

pub fn smoothness_obstruction(dim_plus: usize) -> Result<SmoothnessVerdict> {
    let split = InvolutionSplit::new(dim_plus)?;
    let (plus, minus) = eigenspace_dims(split);
    Ok(match dim_plus {
        5 => {
            // A⁺ is half of ∧³V⁺; the Grassmannian G(3,5) has dimension 6 in P^9
            let a_plus = plus / 2;
            let proj = a_plus - 1;
            let grass = 3 * (5 - 3);
            let ambient = plus - 1;
            debug_assert!(proj + grass >= ambient);
            SmoothnessVerdict::Obstructed {
                witness: format!(
                    "dim P(A+) + dim G(3,5) = {proj} + {grass} >= {ambient} = dim P(wedge3 V+), so A+ contains a decomposable tensor"
                ),
            }
        }
        3 => SmoothnessVerdict::Obstructed {
            witness: format!(
                "eigenspaces of dimension {plus} and {minus}; for v in V+ or V-, dim (v ^ wedge2 V) ∩ A >= 3"
            ),
        },
        _ => SmoothnessVerdict::Admissible,
    })
}

/// Matrix of the Plücker form over the rationals.
pub fn plucker_matrix() -> Matrix<Q> {
    PluckerForm::<Q>::new().matrix().clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exalg::symplectic_form;
    use crate::scalar::integer;

    #[test]
    fn plucker_entries() {
        let q = plucker_matrix();
        assert!(q.is_symmetric());
        assert_eq!(q[(0, 5)], integer(1));
        assert_eq!(q[(1, 4)], integer(-1));
        assert_eq!(q[(2, 3)], integer(1));
        assert_eq!(q.rank(), 6);
    }

    #[test]
    fn hat_duality() {
        let h = hat_basis::<Q>();
        for j in 1..=4 {
            for (i, hi) in h.iter().enumerate() {
                let c = top_plus_coefficient(&e(j), hi).unwrap();
                assert_eq!(c, integer((i + 1 == j) as i64));
            }
        }
    }

    #[test]
    fn eigenspaces_are_orthogonal() {
        let s = InvolutionSplit::standard();
        let plus = s.eigenspace::<Q>(3, 1);
        let minus = s.eigenspace::<Q>(3, -1);
        assert_eq!((plus.dim(), minus.dim()), (8, 12));
        assert_eq!(eigenspace_dims(s), (8, 12));
        for a in plus.basis() {
            for b in minus.basis() {
                assert_eq!(symplectic_form(a, b).unwrap(), integer(0));
            }
        }
    }

    #[test]
    fn obstruction_verdicts() {
        assert!(matches!(smoothness_obstruction(5).unwrap(), SmoothnessVerdict::Obstructed { .. }));
        assert!(matches!(smoothness_obstruction(3).unwrap(), SmoothnessVerdict::Obstructed { .. }));
        assert_eq!(smoothness_obstruction(4).unwrap(), SmoothnessVerdict::Admissible);
        assert!(smoothness_obstruction(2).is_err());
        assert!(smoothness_obstruction(6).is_err());
    }
}
