use num::rational::BigRational;
use num::traits::{One, Zero};
use num::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::census::cyclotomic::Eisenstein;
use crate::census::mpoly::MPoly;
use crate::error::{Error, Result};
use crate::exalg::MultiVector;
use crate::report::{CensusReport, ComponentKind, ProvenanceItem};
use crate::scalar::{Field, FLOAT_NEGLIGIBLE};

type Q = BigRational;
type C64 = Complex<f64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Symmetry {
    Symplectic,
    Antisymplectic,
}

/// Coordinate signs of the involution of `P^5` negating the first `k` coordinates.
pub fn involution_signs(k: usize) -> Result<[i64; 6]> {
    if !(1..=3).contains(&k) {
        return Err(Error::InvalidArgument(format!("signature {k} not in 1..=3")));
    }
    let mut s = [1; 6];
    s[..k].iter_mut().for_each(|x| *x = -1);
    Ok(s)
}

/// One summand `coeff · X_var · dX_{dx[0]} ∧ … ∧ dX_{dx[4]}` of the numerator
/// of the residue 5-form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormTerm {
    pub coeff: i64,
    pub var: usize,
    pub dx: Vec<usize>,
}

pub fn residue_numerator() -> Vec<FormTerm> {
    (0..6)
        .map(|i| FormTerm { coeff: if i % 2 == 0 { 1 } else { -1 }, var: i, dx: (0..6).filter(|&j| j != i).collect() })
        .collect()
}

/// Factor by which the diagonal involution of signature `k` multiplies the
/// residue form, computed term by term.
pub fn residue_factor(k: usize) -> Result<i64> {
    let s = involution_signs(k)?;
    let factors: Vec<i64> =
        residue_numerator().iter().map(|t| s[t.var] * t.dx.iter().map(|&j| s[j]).product::<i64>()).collect();
    // the denominator is the square of an invariant cubic
    if factors.windows(2).any(|w| w[0] != w[1]) {
        return Err(Error::Unsupported("residue form is not an eigenvector".into()));
    }
    Ok(factors[0])
}

pub fn residue_sign(k: usize) -> Result<Symmetry> {
    Ok(if residue_factor(k)? == 1 { Symmetry::Symplectic } else { Symmetry::Antisymplectic })
}

pub fn fermat_cubic<F: Field>() -> MPoly<F> {
    (0..4).fold(MPoly::zero(4), |acc, i| acc + MPoly::var(4, i).pow(3))
}

/// Invariant cubic `X0²L0 + X1²L1 + X0X1L2 + G` for the signature-2 involution;
/// `L_i` and `G` are forms in `X2..X5`.
#[derive(Clone, Debug, PartialEq)]
pub struct CubicData {
    pub signature: usize,
    pub l: [MPoly<Q>; 3],
    pub g: MPoly<Q>,
    pub cubic: MPoly<Q>,
}

const FIXED_P3: [usize; 4] = [2, 3, 4, 5];

impl CubicData {
    pub fn row2(l0: MPoly<Q>, l1: MPoly<Q>, l2: MPoly<Q>, g: MPoly<Q>) -> Result<Self> {
        for l in [&l0, &l1, &l2] {
            if l.nvars() != 4 || l.degree_in(&[0, 1, 2, 3]) != Some(1) {
                return Err(Error::InvalidArgument("L_i must be linear forms in four variables".into()));
            }
        }
        if g.nvars() != 4 || g.degree_in(&[0, 1, 2, 3]) != Some(3) {
            return Err(Error::InvalidArgument("G must be a cubic form in four variables".into()));
        }
        let x = |i| MPoly::<Q>::var(6, i);
        let lift = |p: &MPoly<Q>| p.relabel(6, &FIXED_P3);
        let cubic = x(0).pow(2) * lift(&l0) + x(1).pow(2) * lift(&l1) + x(0) * x(1) * lift(&l2) + lift(&g);
        Ok(CubicData { signature: 2, l: [l0, l1, l2], g, cubic })
    }

    /// `L0 = Y1, L1 = Y2, L2 = Y3` and the Fermat cubic surface.
    pub fn fermat_fixture() -> Self {
        let y = |i| MPoly::<Q>::var(4, i);
        Self::row2(y(0), y(1), y(2), fermat_cubic()).expect("fixture is well formed")
    }

    pub fn is_invariant(&self) -> bool {
        let s = involution_signs(self.signature).unwrap();
        let subs: Vec<MPoly<Q>> = (0..6).map(|i| MPoly::var(6, i).scale(&Q::from_i64(s[i]))).collect();
        self.cubic.compose(&subs) == self.cubic
    }

    /// Whether the gradient of the cubic vanishes at `x` (up to rounding).
    pub fn singular_at(&self, x: &[C64]) -> bool {
        let p = self.cubic.map_scalars(to_c64);
        let scale = x.iter().map(|c| c.norm()).fold(0.0, f64::max).max(1.0);
        (0..6).all(|i| p.derivative(i).eval(x).norm() / scale.powi(2) < FLOAT_NEGLIGIBLE)
    }

    /// The line `X2 = … = X5 = 0` lies on the cubic.
    pub fn contains_special_line(&self) -> bool {
        let s = MPoly::<Q>::var(2, 0);
        let t = MPoly::<Q>::var(2, 1);
        let mut subs = vec![s, t];
        subs.extend((0..4).map(|_| MPoly::zero(2)));
        self.cubic.compose(&subs).is_zero()
    }
}

fn to_c64(q: &Q) -> C64 {
    use num::ToPrimitive;
    C64::new(q.to_f64().unwrap(), 0.0)
}

/// A line `Y_i = -ζ^a Y_j, Y_k = -ζ^b Y_l` on the Fermat cubic surface,
/// spanned by `p` and `q`.
#[derive(Clone, Debug, PartialEq)]
pub struct FermatLine {
    pub pairing: [(usize, usize); 2],
    pub a: u32,
    pub b: u32,
    pub p: Vec<Eisenstein>,
    pub q: Vec<Eisenstein>,
}

const PAIRINGS: [[(usize, usize); 2]; 3] = [[(0, 1), (2, 3)], [(0, 2), (1, 3)], [(0, 3), (1, 2)]];

impl FermatLine {
    fn new(pairing: [(usize, usize); 2], a: u32, b: u32) -> Self {
        let z = Eisenstein::zeta();
        let mut p = vec![Eisenstein::zero(); 4];
        let mut q = vec![Eisenstein::zero(); 4];
        let [(i, j), (k, l)] = pairing;
        p[j] = Eisenstein::one();
        p[i] = -z.pow(a);
        q[l] = Eisenstein::one();
        q[k] = -z.pow(b);
        FermatLine { pairing, a, b, p, q }
    }

    /// Restriction of `g` to the line vanishes identically.
    pub fn lies_on(&self, g: &MPoly<Eisenstein>) -> bool {
        let s = MPoly::<Eisenstein>::var(2, 0);
        let t = MPoly::<Eisenstein>::var(2, 1);
        let subs: Vec<_> = (0..4).map(|m| s.scale(&self.p[m]) + t.scale(&self.q[m])).collect();
        g.compose(&subs).is_zero()
    }

    /// Plücker vector scaled so its leading coefficient is 1.
    pub fn plucker(&self) -> MultiVector<Eisenstein> {
        normalized_plucker(&self.p, &self.q)
    }

    /// `(0, 0, p)` and `(0, 0, q)` in `P^5`.
    pub fn embedded(&self) -> (Vec<Eisenstein>, Vec<Eisenstein>) {
        let lift = |v: &[Eisenstein]| {
            let mut out = vec![Eisenstein::zero(); 2];
            out.extend_from_slice(v);
            out
        };
        (lift(&self.p), lift(&self.q))
    }

    /// Whether the diagonal involution with `signs` maps the embedded line to itself.
    pub fn fixed_by(&self, signs: &[i64; 6]) -> bool {
        let (p, q) = self.embedded();
        let act = |v: &[Eisenstein]| -> Vec<Eisenstein> {
            v.iter().zip(signs).map(|(c, &s)| c.clone() * Eisenstein::from_i64(s)).collect()
        };
        normalized_plucker(&act(&p), &act(&q)) == normalized_plucker(&p, &q)
    }
}

fn normalized_plucker(p: &[Eisenstein], q: &[Eisenstein]) -> MultiVector<Eisenstein> {
    let w = MultiVector::vector(p).wedge(&MultiVector::vector(q)).expect("degrees fit");
    match w.leading() {
        Some((_, c)) => {
            let s = c.inv();
            w.scale(&s)
        }
        None => w,
    }
}

/// All lines of the Fermat cubic surface, each verified on the surface.
pub fn fermat_27_lines() -> Vec<FermatLine> {
    let g = fermat_cubic::<Eisenstein>();
    let mut lines = Vec::with_capacity(27);
    for pairing in PAIRINGS {
        for a in 0..3 {
            for b in 0..3 {
                let line = FermatLine::new(pairing, a, b);
                assert!(line.lies_on(&g), "line {:?} not on the surface", line.pairing);
                lines.push(line);
            }
        }
    }
    lines
}

pub fn count_distinct(lines: &[FermatLine]) -> usize {
    let mut seen: Vec<MultiVector<Eisenstein>> = Vec::new();
    for l in lines {
        let p = l.plucker();
        if !seen.contains(&p) {
            seen.push(p);
        }
    }
    seen.len()
}

/// `a1²L0(b) + a2²L1(b) + a1a2L2(b)` on `P^1 × V(G)`; variables are
/// `(a1, a2, Y1, …, Y4)`.
#[derive(Clone, Debug, PartialEq)]
pub struct K3Equation {
    pub form: MPoly<Q>,
    pub l: [MPoly<Q>; 3],
    pub g: MPoly<Q>,
}

pub fn fano_fixed_k3_equation(l0: &MPoly<Q>, l1: &MPoly<Q>, l2: &MPoly<Q>, g: &MPoly<Q>) -> Result<K3Equation> {
    let data = CubicData::row2(l0.clone(), l1.clone(), l2.clone(), g.clone())?;
    let a = |i| MPoly::<Q>::var(6, i);
    let lift = |p: &MPoly<Q>| p.relabel(6, &FIXED_P3);
    let form = a(0).pow(2) * lift(l0) + a(1).pow(2) * lift(l1) + a(0) * a(1) * lift(l2);
    let [l0, l1, l2] = data.l;
    Ok(K3Equation { form, l: [l0, l1, l2], g: data.g })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct K3SpotCheck {
    pub samples: usize,
    pub nondegenerate: usize,
    pub max_surface_residual: f64,
    pub min_abs_discriminant: f64,
}

impl K3SpotCheck {
    pub fn passed(&self) -> bool {
        self.nondegenerate == self.samples && self.max_surface_residual < 1e-9
    }
}

impl K3Equation {
    pub fn bidegree(&self) -> Option<(u32, u32)> {
        Some((self.form.degree_in(&[0, 1])?, self.form.degree_in(&FIXED_P3)?))
    }

    /// Discriminant `L2(b)² - 4L0(b)L1(b)` of the fiber over `b`.
    pub fn discriminant_at<F: Field>(&self, b: &[F]) -> F {
        let v: Vec<F> = self.l.iter().map(|l| l.map_scalars(|q| F::from_ratio_big(q)).eval(b)).collect();
        v[2].clone() * v[2].clone() - F::from_i64(4) * v[0].clone() * v[1].clone()
    }

    /// The whole `P^1` lies in the divisor over `b`.
    pub fn degenerate_at<F: Field>(&self, b: &[F]) -> bool {
        self.l.iter().all(|l| l.map_scalars(|q| F::from_ratio_big(q)).eval(b).is_negligible())
    }

    /// Samples points of `V(G)` on random complex lines and checks each
    /// fiber is two distinct points.
    pub fn spot_check(&self, seed: u64, samples: usize) -> K3SpotCheck {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = self.g.map_scalars(to_c64);
        let mut out =
            K3SpotCheck { samples, nondegenerate: 0, max_surface_residual: 0.0, min_abs_discriminant: f64::INFINITY };
        for _ in 0..samples {
            let b = loop {
                let p: Vec<C64> =
                    (0..4).map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
                let q: Vec<C64> =
                    (0..4).map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
                if let Some(b) = point_on_line(&g, &p, &q) {
                    break b;
                }
            };
            let res = g.eval(&b).norm();
            out.max_surface_residual = out.max_surface_residual.max(res);
            let d = self.discriminant_at(&b).norm();
            out.min_abs_discriminant = out.min_abs_discriminant.min(d);
            if !self.degenerate_at(&b) && d > FLOAT_NEGLIGIBLE {
                out.nondegenerate += 1;
            }
        }
        out
    }
}

/// A unit-norm point of `V(g)` on the line `p + tq`, from a root of the
/// restricted cubic.
fn point_on_line(g: &MPoly<C64>, p: &[C64], q: &[C64]) -> Option<Vec<C64>> {
    let t = MPoly::<C64>::var(1, 0);
    let subs: Vec<_> = (0..4).map(|m| MPoly::constant(1, p[m]) + t.scale(&q[m])).collect();
    let r = g.compose(&subs);
    let c: Vec<C64> = (0..=3).map(|k| r.coefficient(&[k])).collect();
    if c[3].norm() < 1e-6 {
        return None;
    }
    let root = crate::poly::complex_roots(&c)[0];
    let b: Vec<C64> = (0..4).map(|m| p[m] + q[m] * root).collect();
    let norm = b.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    Some(b.into_iter().map(|x| x / norm).collect())
}

/// Exact conversion from rationals into any field.
pub trait FromRational {
    fn from_ratio_big(q: &Q) -> Self;
}

impl<F: Field> FromRational for F {
    fn from_ratio_big(q: &Q) -> Self {
        use num::ToPrimitive;
        match (q.numer().to_i64(), q.denom().to_i64()) {
            (Some(n), Some(d)) => F::from_ratio(n, d),
            _ => panic!("rational {q} out of i64 range"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FanoCensus {
    pub symmetry_by_signature: Vec<(usize, Symmetry)>,
    pub cubic_invariant: bool,
    pub lines: usize,
    pub lines_on_surface: usize,
    pub distinct_lines: usize,
    pub lines_fixed_by_involution: usize,
    pub special_line_on_cubic: bool,
    pub k3_bidegree: Option<(u32, u32)>,
    pub k3_spot_check: K3SpotCheck,
    pub report: CensusReport,
}

/// Fixed locus of the symplectic involution on the Fano variety of lines of
/// the signature-2 cubic `cubic`; its surface `G` must be the Fermat cubic.
pub fn fano_census(cubic: &CubicData, seed: u64) -> Result<FanoCensus> {
    if cubic.g != fermat_cubic::<Q>() {
        return Err(Error::Unsupported("line census needs G to be the Fermat cubic".into()));
    }
    let symmetry_by_signature = (1..=3).map(|k| Ok((k, residue_sign(k)?))).collect::<Result<Vec<_>>>()?;
    let signs = involution_signs(cubic.signature)?;
    let lines = fermat_27_lines();
    let g = fermat_cubic::<Eisenstein>();
    let lines_on_surface = lines.iter().filter(|l| l.lies_on(&g)).count();
    let distinct_lines = count_distinct(&lines);
    let lines_fixed_by_involution = lines.iter().filter(|l| l.fixed_by(&signs)).count();
    let special_line_on_cubic = cubic.contains_special_line();
    let [l0, l1, l2] = &cubic.l;
    let k3 = fano_fixed_k3_equation(l0, l1, l2, &cubic.g)?;
    let k3_spot_check = k3.spot_check(seed, 20);

    let mut items = vec![ProvenanceItem::new(
        ComponentKind::IsolatedPoint,
        distinct_lines.min(lines_fixed_by_involution) as u64,
        "fermat_27_lines",
        "lines of the cubic surface G = 0 in the fixed P^3",
    )];
    if special_line_on_cubic {
        items.push(ProvenanceItem::new(
            ComponentKind::IsolatedPoint,
            1,
            "CubicData::contains_special_line",
            "the fixed line X2 = X3 = X4 = X5 = 0",
        ));
    }
    if k3.bidegree() == Some((2, 1)) && k3_spot_check.passed() {
        items.push(ProvenanceItem::new(
            ComponentKind::K3Surface,
            1,
            "fano_fixed_k3_equation",
            "bidegree (2,1) divisor a1²L0 + a2²L1 + a1a2L2 = 0 in P^1 × V(G)",
        ));
    }
    Ok(FanoCensus {
        symmetry_by_signature,
        cubic_invariant: cubic.is_invariant(),
        lines: lines.len(),
        lines_on_surface,
        distinct_lines,
        lines_fixed_by_involution,
        special_line_on_cubic,
        k3_bidegree: k3.bidegree(),
        k3_spot_check,
        report: CensusReport::from_items(items),
    })
}
