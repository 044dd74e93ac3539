//! Univariate polynomials as coefficient vectors, constant term first.

use num::bigint::BigInt;
use num::integer::Integer;
use num::rational::BigRational;
use num::traits::{One, Signed, Zero};

use crate::scalar::Field;

pub fn trim<F: Field>(mut p: Vec<F>) -> Vec<F> {
    while p.last().is_some_and(Field::is_negligible) {
        p.pop();
    }
    p
}

/// Degree of `p`, `None` for the zero polynomial.
pub fn degree<F: Field>(p: &[F]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_negligible())
}

pub fn eval<F: Field>(p: &[F], x: &F) -> F {
    p.iter().rev().fold(F::zero(), |acc, c| acc * x.clone() + c.clone())
}

pub fn derivative<F: Field>(p: &[F]) -> Vec<F> {
    p.iter().enumerate().skip(1).map(|(k, c)| c.clone() * F::from_i64(k as i64)).collect()
}

/// Remainder of `a` modulo `b`. Panics on a zero divisor.
pub fn rem<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    let b = trim(b.to_vec());
    let db = degree(&b).expect("division by the zero polynomial");
    let lead = b[db].clone();
    let mut r = trim(a.to_vec());
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let factor = r[dr].clone() / lead.clone();
        for i in 0..=db {
            let delta = factor.clone() * b[i].clone();
            r[dr - db + i] = r[dr - db + i].clone() - delta;
        }
        r[dr] = F::zero();
        r = trim(r);
    }
    r
}

/// Monic greatest common divisor.
pub fn gcd<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while degree(&y).is_some() {
        let r = rem(&x, &y);
        x = y;
        y = r;
    }
    match degree(&x) {
        Some(d) => {
            let lead = x[d].clone();
            x.into_iter().map(|c| c / lead.clone()).collect()
        }
        None => Vec::new(),
    }
}

/// True when `p` has no repeated roots over an algebraic closure.
pub fn is_squarefree<F: Field>(p: &[F]) -> bool {
    degree(&gcd(p, &derivative(p))) == Some(0)
}

/// Lagrange interpolation through `(xs[i], ys[i])`, returning coefficients.
pub fn interpolate<F: Field>(xs: &[F], ys: &[F]) -> Vec<F> {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len();
    let mut out = vec![F::zero(); n];
    for i in 0..n {
        let mut basis = vec![F::one()];
        let mut denom = F::one();
        for j in 0..n {
            if i == j {
                continue;
            }
            // basis *= (x - xs[j])
            let mut next = vec![F::zero(); basis.len() + 1];
            for (k, c) in basis.iter().enumerate() {
                next[k + 1] = next[k + 1].clone() + c.clone();
                next[k] = next[k].clone() - c.clone() * xs[j].clone();
            }
            basis = next;
            denom = denom * (xs[i].clone() - xs[j].clone());
        }
        let scale = ys[i].clone() / denom;
        for (k, c) in basis.into_iter().enumerate() {
            out[k] = out[k].clone() + c * scale.clone();
        }
    }
    out
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            let other = &n / &d;
            if other != d {
                out.push(other);
            }
        }
        d += 1;
    }
    out
}

/// All rational roots of a rational polynomial, sorted ascending, without multiplicity.
pub fn rational_roots(p: &[BigRational]) -> Vec<BigRational> {
    let p = trim(p.to_vec());
    if degree(&p).is_none() {
        return Vec::new();
    }
    let mut roots = Vec::new();
    // strip factors of t
    let low = p.iter().position(|c| !c.is_zero()).unwrap();
    if low > 0 {
        roots.push(BigRational::zero());
    }
    let p = &p[low..];
    if p.len() <= 1 {
        return roots;
    }
    let lcm = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let lead = ints.last().unwrap();
    let constant = &ints[0];
    for num in divisors(constant) {
        for den in divisors(lead) {
            for sign in [1, -1] {
                let cand = BigRational::new(num.clone() * sign, den.clone());
                if eval(p, &cand).is_zero() && !roots.contains(&cand) {
                    roots.push(cand);
                }
            }
        }
    }
    roots.sort();
    roots
}

/// All complex roots of `c_0 + c_1 x + … + c_n x^n` (`c_n ≠ 0`) by
/// Durand–Kerner iteration.
pub fn complex_roots(c: &[num::Complex<f64>]) -> Vec<num::Complex<f64>> {
    use num::Complex;
    let n = c.len() - 1;
    let lead = c[n];
    let a: Vec<Complex<f64>> = c.iter().map(|x| x / lead).collect();
    let f = |z: Complex<f64>| a.iter().rev().fold(Complex::new(0.0, 0.0), |acc, ai| acc * z + ai);
    let bound = 1.0 + a[..n].iter().map(|x| x.norm()).fold(0.0, f64::max);
    let seed = Complex::from_polar(1.0, 0.4);
    let mut z: Vec<Complex<f64>> = (0..n).map(|k| seed.powu(k as u32) * bound.min(2.0)).collect();
    for _ in 0..2000 {
        let mut delta: f64 = 0.0;
        for i in 0..n {
            let denom = (0..n).filter(|&j| j != i).fold(Complex::new(1.0, 0.0), |acc, j| acc * (z[i] - z[j]));
            let step = f(z[i]) / denom;
            z[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 {
            break;
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{integer, rational};

    fn ints(cs: &[i64]) -> Vec<BigRational> {
        cs.iter().map(|&c| integer(c)).collect()
    }

    #[test]
    fn squarefree_detection() {
        // (t-1)(t-2)
        assert!(is_squarefree(&ints(&[2, -3, 1])));
        // (t-1)^2
        assert!(!is_squarefree(&ints(&[1, -2, 1])));
    }

    #[test]
    fn roots_of_product() {
        // (2t - 1)(t + 3) t = 2t^3 + 5t^2 - 3t
        let roots = rational_roots(&ints(&[0, -3, 5, 2]));
        assert_eq!(roots, vec![integer(-3), integer(0), rational(1, 2)]);
        // t^2 - 2 has none
        assert!(rational_roots(&ints(&[-2, 0, 1])).is_empty());
    }

    #[test]
    fn interpolation_is_exact() {
        let p = ints(&[1, 0, -2, 0, 3]);
        let xs: Vec<_> = (0..7).map(integer).collect();
        let ys: Vec<_> = xs.iter().map(|x| eval(&p, x)).collect();
        let back = trim(interpolate(&xs, &ys));
        assert_eq!(back, p);
        assert_eq!(degree(&back), Some(4));
    }
}
