//! Decomposability of 3-vectors in `∧^3 V`, `dim V = 6`.
//!
//! The primary test is the dimension of the annihilator `{v : v ∧ α = 0}`,
//! which is 3 exactly when `α` is decomposable. The Plücker relations
//! `(ι_ξ α) ∧ α = 0` for `ξ ∈ ∧^2 V*` are kept as an independent check.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exalg::{LinearMap, MultiVector, Subspace};
use crate::scalar::Field;

#[derive(Clone, Debug, PartialEq)]
pub struct DecompVerdict<F> {
    pub decomposable: bool,
    /// The 3-dimensional annihilator, present iff `decomposable`.
    pub witness_plane: Option<Subspace<F>>,
}

fn check_input<F: Field>(alpha: &MultiVector<F>) -> Result<()> {
    if alpha.dim() != 6 {
        return Err(Error::WrongDimension { expected: 6, found: alpha.dim() });
    }
    alpha.check_degree(3)?;
    if alpha.is_zero() {
        return Err(Error::ZeroVector("decomposability of the zero 3-vector"));
    }
    Ok(())
}

pub fn annihilator<F: Field>(alpha: &MultiVector<F>) -> Result<Subspace<F>> {
    check_input(alpha)?;
    let map = LinearMap::from_fn(Subspace::full(6, 1), Subspace::full(6, 4), |v| v.wedge(alpha))?;
    Ok(map.kernel())
}

pub fn is_decomposable<F: Field>(alpha: &MultiVector<F>) -> Result<DecompVerdict<F>> {
    let ann = annihilator(alpha)?;
    let verdict = if ann.dim() == 3 {
        DecompVerdict { decomposable: true, witness_plane: Some(ann) }
    } else {
        DecompVerdict { decomposable: false, witness_plane: None }
    };
    debug_assert!(!F::EXACT || verdict.decomposable == contraction_criterion(alpha)?);
    Ok(verdict)
}

/// Plücker relations: true iff `(ι_{e_i^* ∧ e_j^*} α) ∧ α = 0` for all `i < j`.
pub fn contraction_criterion<F: Field>(alpha: &MultiVector<F>) -> Result<bool> {
    check_input(alpha)?;
    for i in 1..=6 {
        let once = alpha.contract(i);
        for j in (i + 1)..=6 {
            let v = once.contract(j);
            if !v.wedge(alpha)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The wedge of a basis of a 3-dimensional subspace of `V`.
pub fn plane_wedge<F: Field>(plane: &Subspace<F>) -> Result<MultiVector<F>> {
    let b = plane.basis();
    if b.len() != 3 || plane.degree() != 1 {
        return Err(Error::InvalidArgument("expected a 3-dimensional subspace of V".into()));
    }
    b[0].wedge(&b[1])?.wedge(&b[2])
}

/// Randomized search for a decomposable element of `A ⊂ ∧^3 V`.
///
/// Tries every basis vector, then `budget` random integer combinations with
/// coefficients in `[-5, 5]`. Deterministic in `(budget, seed)`. Finding
/// nothing is not a proof that `P(A)` misses `G(3,6)`.
pub fn decomposable_witness_in<F: Field>(a: &Subspace<F>, budget: usize, seed: u64) -> Result<Option<MultiVector<F>>> {
    if a.is_zero() {
        return Err(Error::ZeroVector("witness search in the zero subspace"));
    }
    if a.n() != 6 || a.degree() != 3 {
        return Err(Error::WrongDegree { expected: 3, found: a.degree() });
    }
    for b in a.basis() {
        if is_decomposable(b)?.decomposable {
            return Ok(Some(b.clone()));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..budget {
        let coords: Vec<F> = (0..a.dim()).map(|_| F::from_i64(rng.gen_range(-5..=5))).collect();
        let candidate = a.combine(&coords);
        if candidate.is_zero() {
            continue;
        }
        if is_decomposable(&candidate)?.decomposable {
            return Ok(Some(candidate));
        }
    }
    Ok(None)
}
