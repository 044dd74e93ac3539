use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::Field;

/// Largest supported dimension of `V`.
pub const MAX_DIM: usize = 16;

/// A basis element `e_{i1..ik}`, stored as a bitmask (bit `i-1` for index `i`).
///
/// Ordering is lexicographic on the increasing index tuple, which is the
/// pivot order used by [`super::Subspace`].
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Blade(u32);

impl Blade {
    /// Builds a blade from 1-based, strictly increasing indices.
    pub fn from_indices(idx: &[usize], n: usize) -> Result<Self> {
        let mut mask = 0u32;
        let mut prev = 0;
        for &i in idx {
            if i <= prev || i > n || i > MAX_DIM {
                return Err(Error::InvalidIndex(idx.to_vec()));
            }
            mask |= 1 << (i - 1);
            prev = i;
        }
        Ok(Blade(mask))
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn grade(self) -> usize {
        self.0.count_ones() as usize
    }

    /// 1-based indices in increasing order.
    pub fn indices(self) -> Vec<usize> {
        (0..32).filter(|b| self.0 & (1 << b) != 0).map(|b| b + 1).collect()
    }

    pub fn contains(self, i: usize) -> bool {
        i >= 1 && self.0 & (1 << (i - 1)) != 0
    }

    /// `e_self ∧ e_other = sign · e_result`, or `None` when an index repeats.
    pub fn wedge(self, other: Blade) -> Option<(Blade, bool)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        // count pairs (i in self, j in other) with i > j
        let mut inversions = 0;
        let mut rest = other.0;
        while rest != 0 {
            let j = rest.trailing_zeros();
            let above = if j >= 31 { 0 } else { self.0 >> (j + 1) };
            inversions += above.count_ones();
            rest &= rest - 1;
        }
        Some((Blade(self.0 | other.0), inversions % 2 == 1))
    }

    /// Left contraction by the dual covector `e_i^*`: removes index `i` with
    /// sign `(-1)^p`, `p` the number of indices below `i`.
    pub fn contract(self, i: usize) -> Option<(Blade, bool)> {
        if !self.contains(i) {
            return None;
        }
        let below = self.0 & ((1u32 << (i - 1)) - 1);
        Some((Blade(self.0 & !(1 << (i - 1))), below.count_ones() % 2 == 1))
    }
}

impl Ord for Blade {
    fn cmp(&self, other: &Self) -> Ordering {
        let (mut a, mut b) = (self.0, other.0);
        loop {
            match (a == 0, b == 0) {
                (true, true) => return Ordering::Equal,
                (true, false) => return Ordering::Less,
                (false, true) => return Ordering::Greater,
                _ => {}
            }
            let (ia, ib) = (a.trailing_zeros(), b.trailing_zeros());
            if ia != ib {
                return ia.cmp(&ib);
            }
            a &= a - 1;
            b &= b - 1;
        }
    }
}

impl PartialOrd for Blade {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e")?;
        for i in self.indices() {
            write!(f, "{i}")?;
        }
        Ok(())
    }
}

/// All `k`-subsets of `1..=n` in lexicographic order.
pub fn blades(n: usize, k: usize) -> Vec<Blade> {
    fn rec(start: usize, n: usize, k: usize, mask: u32, out: &mut Vec<Blade>) {
        if k == 0 {
            out.push(Blade(mask));
            return;
        }
        for i in start..=n {
            if n - i + 1 < k {
                break;
            }
            rec(i + 1, n, k - 1, mask | (1 << (i - 1)), out);
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(1, n, k, 0, &mut out);
    }
    out
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// A homogeneous element of `∧^k V`, `dim V = n`.
#[derive(Clone, PartialEq)]
pub struct MultiVector<F> {
    n: usize,
    degree: usize,
    terms: BTreeMap<Blade, F>,
}

impl<F: Field> MultiVector<F> {
    pub fn zero(n: usize, degree: usize) -> Self {
        assert!(degree <= n && n <= MAX_DIM, "degree {degree} in dimension {n}");
        MultiVector { n, degree, terms: BTreeMap::new() }
    }

    /// The basis blade `e_{idx}`.
    pub fn basis(n: usize, idx: &[usize]) -> Result<Self> {
        Self::from_terms(n, idx.len(), [(idx.to_vec(), F::one())])
    }

    pub fn from_terms<I>(n: usize, degree: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, F)>,
    {
        if degree > n {
            return Err(Error::DegreeOverflow { left: degree, right: 0, dim: n });
        }
        let mut mv = Self::zero(n, degree);
        for (idx, c) in terms {
            if idx.len() != degree {
                return Err(Error::WrongDegree { expected: degree, found: idx.len() });
            }
            let b = Blade::from_indices(&idx, n)?;
            mv.add_term(b, c);
        }
        Ok(mv)
    }

    /// The degree-1 element `Σ coords[i] e_{i+1}`.
    pub fn vector(coords: &[F]) -> Self {
        let n = coords.len();
        let mut mv = Self::zero(n, 1);
        for (i, c) in coords.iter().enumerate() {
            mv.add_term(Blade(1 << i), c.clone());
        }
        mv
    }

    pub(crate) fn add_term(&mut self, b: Blade, c: F) {
        debug_assert_eq!(b.grade(), self.degree);
        let slot = self.terms.entry(b).or_insert_with(F::zero);
        *slot = slot.clone() + c;
        if slot.is_negligible() {
            self.terms.remove(&b);
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Blade, &F)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, idx: &[usize]) -> F {
        Blade::from_indices(idx, self.n).ok().and_then(|b| self.terms.get(&b).cloned()).unwrap_or_else(F::zero)
    }

    pub fn coefficient_of(&self, b: Blade) -> F {
        self.terms.get(&b).cloned().unwrap_or_else(F::zero)
    }

    /// Leading blade in lexicographic order.
    pub fn leading(&self) -> Option<(Blade, &F)> {
        self.terms.iter().next().map(|(b, c)| (*b, c))
    }

    pub fn scale(&self, s: &F) -> Self {
        let mut out = Self::zero(self.n, self.degree);
        for (b, c) in &self.terms {
            out.add_term(*b, c.clone() * s.clone());
        }
        out
    }

    pub fn wedge(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::WrongDimension { expected: self.n, found: other.n });
        }
        if self.degree + other.degree > self.n {
            return Err(Error::DegreeOverflow { left: self.degree, right: other.degree, dim: self.n });
        }
        let mut out = Self::zero(self.n, self.degree + other.degree);
        for (ba, ca) in &self.terms {
            for (bb, cb) in &other.terms {
                if let Some((b, negative)) = ba.wedge(*bb) {
                    let c = ca.clone() * cb.clone();
                    out.add_term(b, if negative { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    /// Left contraction by the dual basis covector `e_i^*`.
    pub fn contract(&self, i: usize) -> Self {
        assert!(self.degree > 0, "contraction of a scalar");
        let mut out = Self::zero(self.n, self.degree - 1);
        for (b, c) in &self.terms {
            if let Some((rest, negative)) = b.contract(i) {
                out.add_term(rest, if negative { -c.clone() } else { c.clone() });
            }
        }
        out
    }

    /// Coordinates in the lexicographic basis of `∧^k V`.
    pub fn to_dense(&self) -> Vec<F> {
        blades(self.n, self.degree).into_iter().map(|b| self.coefficient_of(b)).collect()
    }

    pub fn from_dense(n: usize, degree: usize, coords: &[F]) -> Self {
        let basis = blades(n, degree);
        assert_eq!(basis.len(), coords.len(), "dense length mismatch");
        let mut out = Self::zero(n, degree);
        for (b, c) in basis.into_iter().zip(coords) {
            if !c.is_negligible() {
                out.add_term(b, c.clone());
            }
        }
        out
    }

    pub fn map_scalars<G: Field>(&self, f: impl Fn(&F) -> G) -> MultiVector<G> {
        let mut out = MultiVector::zero(self.n, self.degree);
        for (b, c) in &self.terms {
            out.add_term(*b, f(c));
        }
        out
    }

    pub fn check_degree(&self, expected: usize) -> Result<()> {
        if self.degree != expected {
            return Err(Error::WrongDegree { expected, found: self.degree });
        }
        Ok(())
    }
}

/// `ω(a, b)`: coefficient of `e_123456` in `a ∧ b`, for `a, b ∈ ∧^3 V`, `dim V = 6`.
pub fn symplectic_form<F: Field>(a: &MultiVector<F>, b: &MultiVector<F>) -> Result<F> {
    for mv in [a, b] {
        if mv.dim() != 6 {
            return Err(Error::WrongDimension { expected: 6, found: mv.dim() });
        }
        mv.check_degree(3)?;
    }
    Ok(a.wedge(b)?.coefficient(&[1, 2, 3, 4, 5, 6]))
}

impl<F: Field> Add for MultiVector<F> {
    type Output = MultiVector<F>;

    fn add(mut self, rhs: Self) -> Self {
        assert_eq!((self.n, self.degree), (rhs.n, rhs.degree), "adding different graded pieces");
        for (b, c) in rhs.terms {
            self.add_term(b, c);
        }
        self
    }
}

impl<F: Field> Sub for MultiVector<F> {
    type Output = MultiVector<F>;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<F: Field> Neg for MultiVector<F> {
    type Output = MultiVector<F>;

    fn neg(mut self) -> Self {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl<F: fmt::Display> fmt::Display for MultiVector<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(b, c)| format!("({c}){b:?}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<F: fmt::Debug> fmt::Debug for MultiVector<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}
