use crate::error::{Error, GraphFailure, Result};
use crate::exalg::multivector::{binomial, blades, MultiVector};
use crate::linalg::Matrix;
use crate::scalar::Field;

/// A linear subspace of `∧^k V`, held in reduced row-echelon form with respect
/// to the lexicographic blade order, so equal subspaces compare equal.
#[derive(Clone, PartialEq, Debug)]
pub struct Subspace<F> {
    n: usize,
    k: usize,
    basis: Vec<MultiVector<F>>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(n: usize, k: usize) -> Self {
        Subspace { n, k, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(n: usize, k: usize) -> Self {
        let basis = blades(n, k)
            .into_iter()
            .map(|b| MultiVector::basis(n, &b.indices()).expect("valid blade"))
            .collect::<Vec<_>>();
        Subspace { n, k, pivots: (0..basis.len()).collect(), basis }
    }

    /// Span of `vectors` in `∧^k V`. All vectors must share the ambient space.
    pub fn span(n: usize, k: usize, vectors: &[MultiVector<F>]) -> Result<Self> {
        for v in vectors {
            if v.dim() != n || v.degree() != k {
                return Err(Error::AmbientMismatch { n1: n, k1: k, n2: v.dim(), k2: v.degree() });
            }
        }
        let rows: Vec<Vec<F>> = vectors.iter().map(MultiVector::to_dense).collect();
        Ok(Self::from_dense_rows(n, k, rows))
    }

    /// Span of the first vector's ambient space; the list must be nonempty.
    pub fn from_vectors(vectors: &[MultiVector<F>]) -> Result<Self> {
        let first = vectors.first().ok_or(Error::InvalidArgument("empty generating set".into()))?;
        Self::span(first.dim(), first.degree(), vectors)
    }

    fn from_dense_rows(n: usize, k: usize, rows: Vec<Vec<F>>) -> Self {
        let width = binomial(n, k);
        if rows.is_empty() {
            return Self::zero(n, k);
        }
        let (r, pivots) = Matrix::from_rows(rows).rref();
        debug_assert_eq!(r.cols(), width);
        let basis = (0..pivots.len()).map(|i| MultiVector::from_dense(n, k, r.row(i))).collect();
        Subspace { n, k, basis, pivots }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        binomial(self.n, self.k)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn basis(&self) -> &[MultiVector<F>] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    fn check_same_ambient(&self, other: &Self) -> Result<()> {
        if self.n != other.n || self.k != other.k {
            return Err(Error::AmbientMismatch { n1: self.n, k1: self.k, n2: other.n, k2: other.k });
        }
        Ok(())
    }

    fn check_vector(&self, v: &MultiVector<F>) -> Result<()> {
        if v.dim() != self.n || v.degree() != self.k {
            return Err(Error::AmbientMismatch { n1: self.n, k1: self.k, n2: v.dim(), k2: v.degree() });
        }
        Ok(())
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` is outside.
    pub fn coordinates(&self, v: &MultiVector<F>) -> Result<Option<Vec<F>>> {
        self.check_vector(v)?;
        let dense = v.to_dense();
        let coords: Vec<F> = self.pivots.iter().map(|&p| dense[p].clone()).collect();
        let mut residual = dense;
        for (c, b) in coords.iter().zip(&self.basis) {
            for (slot, x) in residual.iter_mut().zip(b.to_dense()) {
                *slot = slot.clone() - c.clone() * x;
            }
        }
        if residual.iter().all(Field::is_negligible) {
            Ok(Some(coords))
        } else {
            Ok(None)
        }
    }

    pub fn contains(&self, v: &MultiVector<F>) -> Result<bool> {
        Ok(self.coordinates(v)?.is_some())
    }

    pub fn contains_subspace(&self, other: &Self) -> Result<bool> {
        self.check_same_ambient(other)?;
        for b in &other.basis {
            if !self.contains(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_same_ambient(other)?;
        let rows = self.basis.iter().chain(&other.basis).map(MultiVector::to_dense).collect();
        Ok(Self::from_dense_rows(self.n, self.k, rows))
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_same_ambient(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.n, self.k));
        }
        // Σ x_i a_i - Σ y_j b_j = 0
        let a: Vec<Vec<F>> = self.basis.iter().map(MultiVector::to_dense).collect();
        let b: Vec<Vec<F>> = other.basis.iter().map(MultiVector::to_dense).collect();
        let width = self.ambient_dim();
        let m = Matrix::from_fn(width, a.len() + b.len(), |i, j| {
            if j < a.len() {
                a[j][i].clone()
            } else {
                -b[j - a.len()][i].clone()
            }
        });
        let rows = m
            .kernel()
            .into_iter()
            .map(|x| {
                let mut v = vec![F::zero(); width];
                for (xi, ai) in x.iter().zip(&a) {
                    for (slot, c) in v.iter_mut().zip(ai) {
                        *slot = slot.clone() + xi.clone() * c.clone();
                    }
                }
                v
            })
            .collect();
        Ok(Self::from_dense_rows(self.n, self.k, rows))
    }

    /// Linear combination of the basis with the given coordinates.
    pub fn combine(&self, coords: &[F]) -> MultiVector<F> {
        assert_eq!(coords.len(), self.dim());
        self.basis.iter().zip(coords).fold(MultiVector::zero(self.n, self.k), |acc, (b, c)| acc + b.scale(c))
    }

    pub fn map_scalars<G: Field>(&self, f: impl Fn(&F) -> G + Copy) -> Subspace<G> {
        let vecs: Vec<MultiVector<G>> = self.basis.iter().map(|b| b.map_scalars(f)).collect();
        Subspace::span(self.n, self.k, &vecs).expect("same ambient")
    }
}

/// A linear map between subspaces, as a matrix in their echelon bases
/// (`codomain.dim() × domain.dim()`).
#[derive(Clone, PartialEq, Debug)]
pub struct LinearMap<F> {
    domain: Subspace<F>,
    codomain: Subspace<F>,
    matrix: Matrix<F>,
}

impl<F: Field> LinearMap<F> {
    pub fn new(domain: Subspace<F>, codomain: Subspace<F>, matrix: Matrix<F>) -> Result<Self> {
        if matrix.rows() != codomain.dim() || matrix.cols() != domain.dim() {
            return Err(Error::InvalidArgument(format!(
                "matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                codomain.dim(),
                domain.dim()
            )));
        }
        Ok(LinearMap { domain, codomain, matrix })
    }

    /// Tabulates `f` on the domain basis. Every image must lie in `codomain`.
    pub fn from_fn(
        domain: Subspace<F>,
        codomain: Subspace<F>,
        f: impl Fn(&MultiVector<F>) -> Result<MultiVector<F>>,
    ) -> Result<Self> {
        let mut cols = Vec::with_capacity(domain.dim());
        for b in domain.basis() {
            let image = f(b)?;
            let coords = codomain.coordinates(&image)?.ok_or(Error::NotInDomain)?;
            cols.push(coords);
        }
        let matrix = if cols.is_empty() { Matrix::zeros(codomain.dim(), 0) } else { Matrix::from_columns(&cols) };
        Self::new(domain, codomain, matrix)
    }

    pub fn domain(&self) -> &Subspace<F> {
        &self.domain
    }

    pub fn codomain(&self) -> &Subspace<F> {
        &self.codomain
    }

    pub fn matrix(&self) -> &Matrix<F> {
        &self.matrix
    }

    pub fn apply(&self, v: &MultiVector<F>) -> Result<MultiVector<F>> {
        let coords = self.domain.coordinates(v)?.ok_or(Error::NotInDomain)?;
        Ok(self.codomain.combine(&self.matrix.mul_vec(&coords)))
    }

    pub fn kernel(&self) -> Subspace<F> {
        let vecs: Vec<MultiVector<F>> = self.matrix.kernel().iter().map(|x| self.domain.combine(x)).collect();
        Subspace::span(self.domain.n(), self.domain.degree(), &vecs).expect("domain ambient")
    }

    pub fn image(&self) -> Subspace<F> {
        let vecs: Vec<MultiVector<F>> =
            (0..self.matrix.cols()).map(|j| self.codomain.combine(&self.matrix.column(j))).collect();
        Subspace::span(self.codomain.n(), self.codomain.degree(), &vecs).expect("codomain ambient")
    }
}

/// Recovers `f: E1 → E2` with `W = { x + f(x) : x ∈ E1 }`.
///
/// Fails naming the first hypothesis that does not hold: equal dimensions,
/// `E1 ∩ E2 = 0`, `W ⊂ E1 ⊕ E2`, `W ∩ E1 = 0`, `W ∩ E2 = 0`.
pub fn graph_extract<F: Field>(w: &Subspace<F>, e1: &Subspace<F>, e2: &Subspace<F>) -> Result<LinearMap<F>> {
    let fail = |g| Err(Error::GraphHypothesis(g));
    if w.dim() != e1.dim() || w.dim() != e2.dim() {
        return fail(GraphFailure::DimensionsDiffer);
    }
    if !e1.intersect(e2)?.is_zero() {
        return fail(GraphFailure::NotDirectSum);
    }
    let total = e1.sum(e2)?;
    if !total.contains_subspace(w)? {
        return fail(GraphFailure::NotContained);
    }
    if !w.intersect(e1)?.is_zero() {
        return fail(GraphFailure::MeetsFirst);
    }
    if !w.intersect(e2)?.is_zero() {
        return fail(GraphFailure::MeetsSecond);
    }
    let d = w.dim();
    // Decompose each w_j = x_j + y_j over the stacked basis [E1 | E2].
    let stacked: Vec<Vec<F>> = e1.basis().iter().chain(e2.basis()).map(MultiVector::to_dense).collect();
    let m = Matrix::from_columns(&stacked);
    let mut p1 = Matrix::zeros(d, d);
    let mut p2 = Matrix::zeros(d, d);
    for (j, wj) in w.basis().iter().enumerate() {
        let c = m.solve(&wj.to_dense()).ok_or(Error::GraphHypothesis(GraphFailure::NotContained))?;
        for i in 0..d {
            p1[(i, j)] = c[i].clone();
            p2[(i, j)] = c[d + i].clone();
        }
    }
    let p1_inv = p1.inverse().ok_or(Error::GraphHypothesis(GraphFailure::MeetsSecond))?;
    LinearMap::new(e1.clone(), e2.clone(), p2.mul(&p1_inv))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::integer;
    use num::rational::BigRational;

    type Mv = MultiVector<BigRational>;
    type Sub = Subspace<BigRational>;

    fn e(n: usize, idx: &[usize]) -> Mv {
        Mv::basis(n, idx).unwrap()
    }

    #[test]
    fn intersection_example() {
        let a = Sub::span(6, 3, &[e(6, &[1, 2, 3])]).unwrap();
        let b = Sub::span(6, 3, &[e(6, &[1, 2, 3]), e(6, &[4, 5, 6])]).unwrap();
        assert_eq!(a.intersect(&b).unwrap(), a);
    }

    #[test]
    fn dimension_formula_lower_bound() {
        let a = Sub::span(4, 2, &[e(4, &[1, 2]), e(4, &[1, 3]), e(4, &[2, 3]) + e(4, &[3, 4])]).unwrap();
        let b = Sub::span(4, 2, &[e(4, &[1, 3]), e(4, &[2, 4]), e(4, &[3, 4]), e(4, &[1, 4])]).unwrap();
        let i = a.intersect(&b).unwrap();
        assert!(i.dim() + 6 >= a.dim() + b.dim());
        for v in i.basis() {
            assert!(a.contains(v).unwrap() && b.contains(v).unwrap());
        }
    }

    #[test]
    fn kernel_of_wedge_with_decomposable() {
        let alpha = e(6, &[1, 2, 3]);
        let map = LinearMap::from_fn(Sub::full(6, 1), Sub::full(6, 4), |v| v.wedge(&alpha)).unwrap();
        let expected = Sub::span(6, 1, &[e(6, &[1]), e(6, &[2]), e(6, &[3])]).unwrap();
        assert_eq!(map.kernel(), expected);
    }

    #[test]
    fn fiber_image_rank() {
        let v = e(6, &[1]);
        let map = LinearMap::from_fn(Sub::full(6, 2), Sub::full(6, 3), |t| v.wedge(t)).unwrap();
        assert_eq!(map.image().dim(), 10);
    }

    #[test]
    fn mixed_ambient_rejected() {
        let a = Sub::full(6, 3);
        let b = Sub::full(6, 2);
        assert!(matches!(a.intersect(&b), Err(Error::AmbientMismatch { .. })));
        assert!(Sub::span(6, 3, &[e(6, &[1, 2])]).is_err());
    }

    #[test]
    fn graph_examples() {
        let e1 = Sub::span(2, 1, &[e(2, &[1])]).unwrap();
        let e2 = Sub::span(2, 1, &[e(2, &[2])]).unwrap();
        let w = Sub::span(2, 1, &[e(2, &[1]) + e(2, &[2])]).unwrap();
        let f = graph_extract(&w, &e1, &e2).unwrap();
        assert_eq!(f.apply(&e(2, &[1])).unwrap(), e(2, &[2]));

        let w2 = Sub::span(2, 1, &[e(2, &[1]) + e(2, &[2]).scale(&integer(2))]).unwrap();
        let f2 = graph_extract(&w2, &e1, &e2).unwrap();
        assert_eq!(f2.apply(&e(2, &[1])).unwrap(), e(2, &[2]).scale(&integer(2)));
    }

    #[test]
    fn graph_failures_are_named() {
        let e1 = Sub::span(3, 1, &[e(3, &[1])]).unwrap();
        let e2 = Sub::span(3, 1, &[e(3, &[2])]).unwrap();
        let on_e1 = e1.clone();
        assert_eq!(graph_extract(&on_e1, &e1, &e2).unwrap_err(), Error::GraphHypothesis(GraphFailure::MeetsFirst));
        let outside = Sub::span(3, 1, &[e(3, &[3])]).unwrap();
        assert_eq!(graph_extract(&outside, &e1, &e2).unwrap_err(), Error::GraphHypothesis(GraphFailure::NotContained));
        let big = Sub::full(3, 1);
        assert_eq!(graph_extract(&big, &e1, &e2).unwrap_err(), Error::GraphHypothesis(GraphFailure::DimensionsDiffer));
    }
}
