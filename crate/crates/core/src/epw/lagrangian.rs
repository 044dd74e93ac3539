use num::rational::BigRational;
use num::traits::Zero;
use num::Complex;

use crate::epw::operators::{SelfAdjointOp, SymmetricPhi};
use crate::epw::split::{e, f1, f2, plucker_matrix, wedge2_plus_basis, InvolutionSplit};
use crate::error::{Error, Result};
use crate::exalg::{blades, graph_extract, symplectic_form, MultiVector, Subspace};
use crate::grassmann::decomposable_witness_in;
use crate::linalg::Matrix;
use crate::report::Certificate;
use crate::scalar::{integer, Field};

type Q = BigRational;
type C64 = Complex<f64>;

/// `A⁻ = { f1∧x + f2∧u(x) : x ∈ ∧²V⁺ }`.
pub fn build_a_minus(u: &SelfAdjointOp) -> Result<Subspace<Q>> {
    let gens: Vec<MultiVector<Q>> = wedge2_plus_basis::<Q>()
        .iter()
        .map(|x| Ok(f1::<Q>().wedge(x)? + f2::<Q>().wedge(&u.apply(x))?))
        .collect::<Result<_>>()?;
    Subspace::span(6, 3, &gens)
}

/// `A⁺ = { f1∧f2∧v + φ(v) : v ∈ V⁺ }`.
pub fn build_a_plus(phi: &SymmetricPhi) -> Result<Subspace<Q>> {
    if !phi.is_invertible() {
        return Err(Error::PhiSingular);
    }
    let f12 = f1::<Q>().wedge(&f2())?;
    let gens: Vec<MultiVector<Q>> = (1..=4)
        .map(|j| {
            let mut c = vec![integer(0); 4];
            c[j - 1] = integer(1);
            Ok(f12.wedge(&e(j))? + phi.apply(&c))
        })
        .collect::<Result<_>>()?;
    Subspace::span(6, 3, &gens)
}

#[derive(Clone, Debug, PartialEq)]
pub struct InvariantLagrangian {
    pub split: InvolutionSplit,
    pub u: SelfAdjointOp,
    pub phi: SymmetricPhi,
    pub a_plus: Subspace<Q>,
    pub a_minus: Subspace<Q>,
    pub a: Subspace<Q>,
}

impl InvariantLagrangian {
    pub fn assemble(u: SelfAdjointOp, phi: SymmetricPhi) -> Result<Self> {
        let a_plus = build_a_plus(&phi)?;
        let a_minus = build_a_minus(&u)?;
        let a = a_plus.sum(&a_minus)?;
        Ok(InvariantLagrangian { split: InvolutionSplit::standard(), u, phi, a_plus, a_minus, a })
    }

    pub fn reference() -> Self {
        Self::assemble(SelfAdjointOp::reference(), SymmetricPhi::reference()).expect("reference instance")
    }
}

pub fn is_isotropic(a: &Subspace<Q>) -> Result<bool> {
    let b = a.basis();
    for i in 0..b.len() {
        for j in i + 1..b.len() {
            if !symplectic_form(&b[i], &b[j])?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `F_v = v ∧ ∧²V` inside `∧³V`.
pub fn f_v<F: Field>(v: &MultiVector<F>) -> Result<Subspace<F>> {
    v.check_degree(1)?;
    if v.is_zero() {
        return Err(Error::ZeroVector("fiber of the zero vector"));
    }
    let gens: Vec<MultiVector<F>> = blades(6, 2)
        .into_iter()
        .map(|b| v.wedge(&MultiVector::basis(6, &b.indices()).unwrap()))
        .collect::<Result<_>>()?;
    Subspace::span(6, 3, &gens)
}

/// `dim (v ∧ ∧²V) ∩ A`.
pub fn fiber_dim<F: Field>(v: &MultiVector<F>, a: &Subspace<F>) -> Result<usize> {
    Ok(f_v(v)?.intersect(a)?.dim())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct FiberSplit {
    pub total: usize,
    pub plus: usize,
    pub minus: usize,
}

/// Fiber dimension with its decomposition along `A = A⁺ ⊕ A⁻`, for `v` in `V⁺` or `V⁻`.
pub fn fiber_split(v: &MultiVector<Q>, lag: &InvariantLagrangian) -> Result<FiberSplit> {
    let fv = f_v(v)?;
    Ok(FiberSplit {
        total: fv.intersect(&lag.a)?.dim(),
        plus: fv.intersect(&lag.a_plus)?.dim(),
        minus: fv.intersect(&lag.a_minus)?.dim(),
    })
}

/// Numerical rank from singular values, relative to the largest one.
pub fn numeric_rank(m: &Matrix<C64>, rel_tol: f64) -> (usize, Vec<f64>) {
    let nm = nalgebra::DMatrix::from_fn(m.rows(), m.cols(), |i, j| m[(i, j)]);
    let mut sv: Vec<f64> = nm.singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let top = sv.first().copied().unwrap_or(0.0);
    let rank = sv.iter().filter(|&&s| s > rel_tol * top.max(1e-300)).count();
    (rank, sv)
}

/// `dim F_v ∩ A = dim F_v + dim A - rank [F_v; A]` with ranks from singular values.
pub fn numeric_fiber_dim(v: &[C64], a: &Subspace<Q>) -> usize {
    let vc = MultiVector::vector(v);
    let fv: Vec<Vec<C64>> = blades(6, 2)
        .into_iter()
        .map(|b| vc.wedge(&MultiVector::basis(6, &b.indices()).unwrap()).unwrap().to_dense())
        .collect();
    let ac: Vec<Vec<C64>> =
        a.basis().iter().map(|x| x.map_scalars(crate::census::FromRational::from_ratio_big).to_dense()).collect();
    let (rank_f, _) = numeric_rank(&Matrix::from_rows(fv.clone()), 1e-9);
    let mut all = fv;
    all.extend(ac);
    let (rank_all, _) = numeric_rank(&Matrix::from_rows(all), 1e-9);
    rank_f + a.dim() - rank_all
}

/// Certificate list for membership in `LG(∧³V)*`.
pub fn check_lg_star(lag: &InvariantLagrangian, witness_budget: usize, seed: u64) -> Result<Vec<Certificate>> {
    let mut certs = Vec::new();
    let split = lag.split;

    certs.push(Certificate::new(
        "lagrangian_dimension",
        lag.a.dim() == 10 && lag.a_plus.dim() == 4 && lag.a_minus.dim() == 6,
        format!("dim A = {} (A+ {}, A- {})", lag.a.dim(), lag.a_plus.dim(), lag.a_minus.dim()),
    ));
    certs.push(Certificate::new("lagrangian_isotropic", is_isotropic(&lag.a)?, "ω vanishes on all basis pairs of A"));
    let plus_block = split.eigenspace::<Q>(3, 1);
    let minus_block = split.eigenspace::<Q>(3, -1);
    certs.push(Certificate::new(
        "invariant_blocks",
        plus_block.contains_subspace(&lag.a_plus)? && minus_block.contains_subspace(&lag.a_minus)?,
        "A+ ⊂ (∧³V)+ and A- ⊂ (∧³V)-",
    ));

    let f1_block = f1_wedge2_plus()?;
    let f2_block = f2_wedge2_plus()?;
    for (name, block) in [("a_minus_meets_f1_block", &f1_block), ("a_minus_meets_f2_block", &f2_block)] {
        let d = lag.a_minus.intersect(block)?.dim();
        certs.push(Certificate::new(name, d == 0, format!("dim A- ∩ f_i∧∧²V+ = {d}")));
    }

    let round_trip =
        graph_extract(&lag.a_minus, &f1_block, &f2_block).map(|m| m.matrix() == lag.u.matrix()).unwrap_or(false);
    certs.push(Certificate::new("u_graph_round_trip", round_trip, "A- is the graph of u over f1∧∧²V+"));

    let distinct = lag.u.has_distinct_eigenvalues();
    certs.push(Certificate::new(
        "u_distinct_eigenvalues",
        distinct,
        "characteristic polynomial of u is squarefree (6 distinct eigenvalues)",
    ));
    let (no_decomp, detail) = no_decomposable_eigenvector(&lag.u);
    certs.push(Certificate::new("u_no_decomposable_eigenvector", distinct && no_decomp, detail));

    certs.push(Certificate::new(
        "phi_symmetric",
        lag.phi.matrix().is_symmetric() && lag.phi.symmetric_by_wedge()?,
        "v∧φ(w) = w∧φ(v) on basis pairs",
    ));
    certs.push(Certificate::new("phi_invertible", lag.phi.is_invertible(), "det B ≠ 0"));
    let f12_block = f12_wedge_plus()?;
    let top_block = split.block::<Q>(3, 0);
    let graph_ok = graph_extract(&lag.a_plus, &f12_block, &top_block)
        .map(|m| m.matrix().determinant() != integer(0))
        .unwrap_or(false);
    certs.push(Certificate::new(
        "a_plus_graph",
        graph_ok && lag.a_plus.intersect(&top_block)?.is_zero() && lag.a_plus.intersect(&f12_block)?.is_zero(),
        "A+ is the graph of an isomorphism f1∧f2∧V+ → ∧³V+",
    ));

    let witness = decomposable_witness_in(&lag.a, witness_budget, seed)?;
    certs.push(Certificate::new(
        "no_decomposable_found",
        witness.is_none(),
        format!("random search over {witness_budget} rational combinations"),
    ));
    Ok(certs)
}

fn no_decomposable_eigenvector(u: &SelfAdjointOp) -> (bool, String) {
    let q = plucker_matrix();
    if let Some(ev) = u.exact_spectrum() {
        let ok = ev.iter().all(|l| match u.eigenvector(l) {
            Some(x) => !crate::linalg::dot(&x, &q.mul_vec(&x)).is_zero(),
            None => false,
        });
        return (ok, "exact: x∧x ≠ 0 for every eigenvector".into());
    }
    let qc = q.map(crate::census::FromRational::from_ratio_big);
    let uc = u.matrix().map(crate::census::FromRational::from_ratio_big);
    let mut min_ratio = f64::INFINITY;
    for lambda in numeric_eigenvalues(u.matrix()) {
        let shifted: Matrix<C64> = uc.sub(&Matrix::identity(6).scale(&lambda));
        let k = shifted.kernel();
        let Some(x) = k.first() else { return (false, "numeric eigenvector not found".into()) };
        let norm2: f64 = x.iter().map(|c| c.norm_sqr()).sum();
        let qx = crate::linalg::dot(x, &qc.mul_vec(x)).norm() / norm2;
        min_ratio = min_ratio.min(qx);
    }
    (min_ratio > 1e-6, format!("numeric: min |x∧x|/|x|² = {min_ratio:.3e}"))
}

pub fn numeric_eigenvalues(m: &Matrix<Q>) -> Vec<C64> {
    use num::ToPrimitive;
    let nm = nalgebra::DMatrix::from_fn(m.rows(), m.cols(), |i, j| m[(i, j)].to_f64().unwrap());
    let mut ev: Vec<C64> = nm.complex_eigenvalues().iter().copied().collect();
    ev.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
    ev
}

fn f_wedge2_plus(f: MultiVector<Q>) -> Result<Subspace<Q>> {
    let gens: Vec<_> = wedge2_plus_basis::<Q>().iter().map(|x| f.wedge(x)).collect::<Result<_>>()?;
    Subspace::span(6, 3, &gens)
}

pub fn f1_wedge2_plus() -> Result<Subspace<Q>> {
    f_wedge2_plus(f1())
}

pub fn f2_wedge2_plus() -> Result<Subspace<Q>> {
    f_wedge2_plus(f2())
}

pub fn f12_wedge_plus() -> Result<Subspace<Q>> {
    let f12 = f1::<Q>().wedge(&f2())?;
    let gens: Vec<_> = (1..=4).map(|j| f12.wedge(&e(j))).collect::<Result<_>>()?;
    Subspace::span(6, 3, &gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::epw::split::plus_vector;

    #[test]
    fn reference_passes_everything() {
        let lag = InvariantLagrangian::reference();
        let certs = check_lg_star(&lag, 50, 1).unwrap();
        for c in &certs {
            assert!(c.passed, "{c:?}");
        }
    }

    #[test]
    fn identity_u() {
        let u = SelfAdjointOp::from_matrix(Matrix::identity(6)).unwrap();
        let a = build_a_minus(&u).unwrap();
        let f = f1::<Q>() + f2::<Q>();
        let expected: Vec<_> = wedge2_plus_basis::<Q>().iter().map(|x| f.wedge(x).unwrap()).collect();
        assert_eq!(a, Subspace::span(6, 3, &expected).unwrap());
        let lag = InvariantLagrangian::assemble(u, SymmetricPhi::reference()).unwrap();
        let certs = check_lg_star(&lag, 0, 0).unwrap();
        let failed: Vec<_> = certs.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
        assert!(failed.contains(&"u_distinct_eigenvalues"));
    }

    #[test]
    fn zero_u_violates_openness() {
        let u = SelfAdjointOp::from_matrix(Matrix::zeros(6, 6)).unwrap();
        let a = build_a_minus(&u).unwrap();
        assert_eq!(a, f1_wedge2_plus().unwrap());
        let lag = InvariantLagrangian::assemble(u, SymmetricPhi::reference()).unwrap();
        let certs = check_lg_star(&lag, 0, 0).unwrap();
        assert!(!certs.iter().find(|c| c.name == "a_minus_meets_f1_block").unwrap().passed);
    }

    #[test]
    fn diagonal_u_has_decomposable_eigenvector() {
        let d: Vec<Q> = [1, 2, 3, 3, 2, 1].iter().map(|&x| integer(x)).collect();
        // diagonal in e12..e34 is self-adjoint only when symmetric under the pairing
        let u = SelfAdjointOp::from_matrix(Matrix::diagonal(&d)).unwrap();
        let (ok, _) = no_decomposable_eigenvector(&u);
        assert!(!ok || !u.has_distinct_eigenvalues());
        let lag = InvariantLagrangian::assemble(u, SymmetricPhi::reference()).unwrap();
        let c = check_lg_star(&lag, 0, 0).unwrap();
        assert!(!c.iter().find(|c| c.name == "u_no_decomposable_eigenvector").unwrap().passed);
    }

    #[test]
    fn singular_phi_rejected() {
        let b = Matrix::diagonal(&[integer(1), integer(1), integer(1), integer(0)]);
        assert_eq!(build_a_plus(&SymmetricPhi::new(b).unwrap()), Err(Error::PhiSingular));
    }

    #[test]
    fn standard_phi_is_lagrangian() {
        let a = build_a_plus(&SymmetricPhi::new(Matrix::identity(4)).unwrap()).unwrap();
        assert_eq!(a.dim(), 4);
        assert!(is_isotropic(&a).unwrap());
    }

    #[test]
    fn fiber_of_eigen_point() {
        let lag = InvariantLagrangian::reference();
        let v = f1::<Q>() + f2::<Q>().scale(&integer(3));
        let s = fiber_split(&v, &lag).unwrap();
        assert_eq!((s.total, s.plus, s.minus), (1, 0, 1));
        let generic = plus_vector(&[integer(1), integer(2), integer(-3), integer(5)]);
        assert_eq!(fiber_dim(&generic, &lag.a).unwrap(), 0);
        assert!(fiber_dim(&MultiVector::zero(6, 1), &lag.a).is_err());
    }

    #[test]
    fn numeric_fiber_agrees() {
        let lag = InvariantLagrangian::reference();
        let v: Vec<C64> = [0.0, 0.0, 0.0, 0.0, 1.0, 2.0].iter().map(|&x| C64::new(x, 0.0)).collect();
        assert_eq!(numeric_fiber_dim(&v, &lag.a), 1);
        let w: Vec<C64> = [1.0, 2.0, -3.0, 5.0, 0.0, 0.0].iter().map(|&x| C64::new(x, 0.0)).collect();
        assert_eq!(numeric_fiber_dim(&w, &lag.a), 0);
    }
}
