use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::Field;

/// Multivariate polynomial in `nvars` variables, keyed by exponent vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct MPoly<F> {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, F>,
}

impl<F: Field> MPoly<F> {
    pub fn zero(nvars: usize) -> Self {
        MPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: F) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(nvars, e, F::one())
    }

    pub fn monomial(nvars: usize, exps: Vec<u32>, c: F) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut p = Self::zero(nvars);
        p.add_term(exps, c);
        p
    }

    /// `Σ c_i x_i`.
    pub fn linear(coeffs: &[F]) -> Self {
        let n = coeffs.len();
        coeffs.iter().enumerate().fold(Self::zero(n), |acc, (i, c)| acc + Self::var(n, i).scale(c))
    }

    fn add_term(&mut self, exps: Vec<u32>, c: F) {
        let slot = self.terms.entry(exps).or_insert_with(F::zero);
        *slot = slot.clone() + c;
        self.terms.retain(|_, v| !v.is_negligible());
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &F)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: &[u32]) -> F {
        self.terms.get(exps).cloned().unwrap_or_else(F::zero)
    }

    pub fn scale(&self, s: &F) -> Self {
        let mut p = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            p.add_term(e.clone(), c.clone() * s.clone());
        }
        p
    }

    pub fn derivative(&self, i: usize) -> Self {
        let mut p = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut f = e.clone();
                f[i] -= 1;
                p.add_term(f, c.clone() * F::from_i64(e[i] as i64));
            }
        }
        p
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::constant(self.nvars, F::one()), |acc, _| acc * self.clone())
    }

    /// Degree in the variables listed in `vars`, if homogeneous in them.
    pub fn degree_in(&self, vars: &[usize]) -> Option<u32> {
        let mut degs = self.terms.keys().map(|e| vars.iter().map(|&v| e[v]).sum::<u32>());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        let all: Vec<usize> = (0..self.nvars).collect();
        self.is_zero() || self.degree_in(&all).is_some()
    }

    pub fn eval(&self, x: &[F]) -> F {
        assert_eq!(x.len(), self.nvars);
        self.terms.iter().fold(F::zero(), |acc, (e, c)| {
            let m = e.iter().zip(x).fold(c.clone(), |m, (&k, xi)| (0..k).fold(m, |m, _| m * xi.clone()));
            acc + m
        })
    }

    /// Substitutes `subs[i]` for variable `i`.
    pub fn compose(&self, subs: &[MPoly<F>]) -> MPoly<F> {
        assert_eq!(subs.len(), self.nvars);
        let m = subs.first().map(|s| s.nvars).unwrap_or(0);
        self.terms.iter().fold(MPoly::zero(m), |acc, (e, c)| {
            let term = e.iter().zip(subs).fold(MPoly::constant(m, c.clone()), |t, (&k, s)| t * s.pow(k));
            acc + term
        })
    }

    /// Re-embeds into `nvars` variables, sending variable `i` to `map[i]`.
    pub fn relabel(&self, nvars: usize, map: &[usize]) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in &self.terms {
            let mut f = vec![0; nvars];
            for (i, &k) in e.iter().enumerate() {
                f[map[i]] += k;
            }
            p.add_term(f, c.clone());
        }
        p
    }

    pub fn map_scalars<G: Field>(&self, f: impl Fn(&F) -> G) -> MPoly<G> {
        let mut p = MPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            p.add_term(e.clone(), f(c));
        }
        p
    }
}

impl<F: Field> Add for MPoly<F> {
    type Output = Self;

    fn add(mut self, rhs: Self) -> Self {
        assert_eq!(self.nvars, rhs.nvars);
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
        self
    }
}

impl<F: Field> Neg for MPoly<F> {
    type Output = Self;

    fn neg(self) -> Self {
        self.scale(&-F::one())
    }
}

impl<F: Field> Sub for MPoly<F> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<F: Field> Mul for MPoly<F> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        assert_eq!(self.nvars, rhs.nvars);
        let mut p = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                p.add_term(e, c1.clone() * c2.clone());
            }
        }
        p
    }
}
