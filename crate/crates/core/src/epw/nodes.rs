use num::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::census::FromRational;
use crate::epw::fixed::{kummer_matrix, kummer_membership_numeric, wedge_pair};
use crate::epw::lagrangian::{numeric_fiber_dim, InvariantLagrangian};
use crate::epw::operators::QuadricReport;
use crate::error::{Error, Result};
use crate::linalg::{dot, Matrix};

type C64 = Complex<f64>;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchConfig {
    pub starts: usize,
    pub residual_tol: f64,
    pub dedupe_tol: f64,
    pub seed: u64,
    pub max_iter: usize,
    pub max_charts: usize,
    pub expected: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            starts: 1000,
            residual_tol: 1e-10,
            dedupe_tol: 1e-6,
            seed: 42,
            max_iter: 100,
            max_charts: 3,
            expected: 16,
        }
    }
}

fn ser_point<S: Serializer>(v: &[C64], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|z| format!("{:.10}{:+.10}i", z.re, z.im)))
}

fn ser_sci<S: Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{x:.2e}"))
}

fn ser_sci_vec<S: Serializer>(xs: &[f64], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(|x| format!("{x:.2e}")))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Node {
    /// Point of `P(V⁺)` scaled so that the chart functional equals 1.
    #[serde(serialize_with = "ser_point")]
    pub coords: Vec<C64>,
    #[serde(serialize_with = "ser_sci")]
    pub residual: f64,
    pub membership: usize,
    #[serde(serialize_with = "ser_sci_vec")]
    pub singular_values: Vec<f64>,
    pub fiber_dim: usize,
    /// `|B(v,v)| / |v|²`.
    #[serde(serialize_with = "ser_sci")]
    pub quadric_value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NodeCensus {
    pub nodes: Vec<Node>,
    pub converged_starts: usize,
    pub charts_used: usize,
    pub expected: usize,
}

impl NodeCensus {
    pub fn count_ok(&self) -> bool {
        self.nodes.len() == self.expected
    }

    pub fn all_rank_two(&self) -> bool {
        self.nodes.iter().all(|n| n.membership == 2 && n.fiber_dim == 2)
    }

    pub fn none_on_quadric(&self) -> bool {
        self.nodes.iter().all(|n| n.quadric_value > 1e-6)
    }
}

/// Affine chart `v = p0 + t1 p1 + t2 p2 + t3 p3`; the `p_a` (a ≥ 1) also serve
/// as the complement in the Kummer matrix, so `det[v, p1, p2, p3]` is constant.
struct Chart {
    p: [Vec<C64>; 4],
    qu: Matrix<C64>,
    /// `p_k ∧ p_a` for `k, a ∈ 1..=3`.
    pk_pa: Vec<Vec<Vec<C64>>>,
}

const MINORS: [((usize, usize), (usize, usize)); 6] =
    [((0, 1), (0, 1)), ((0, 1), (0, 2)), ((0, 1), (1, 2)), ((0, 2), (0, 2)), ((0, 2), (1, 2)), ((1, 2), (1, 2))];

fn random_c64(rng: &mut ChaCha8Rng, r: f64) -> C64 {
    C64::new(rng.gen_range(-r..r), rng.gen_range(-r..r))
}

impl Chart {
    fn random(qu: Matrix<C64>, rng: &mut ChaCha8Rng) -> Self {
        let mut col = || -> Vec<C64> {
            let v: Vec<C64> = (0..4).map(|_| random_c64(rng, 1.0)).collect();
            let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            v.into_iter().map(|z| z / n).collect()
        };
        let p = [col(), col(), col(), col()];
        let pk_pa = (1..4).map(|k| (1..4).map(|a| wedge_pair(&p[k], &p[a])).collect()).collect();
        Chart { p, qu, pk_pa }
    }

    fn point(&self, t: &[C64; 3]) -> Vec<C64> {
        (0..4).map(|i| self.p[0][i] + t[0] * self.p[1][i] + t[1] * self.p[2][i] + t[2] * self.p[3][i]).collect()
    }

    fn complement(&self) -> [Vec<C64>; 3] {
        [self.p[1].clone(), self.p[2].clone(), self.p[3].clone()]
    }

    /// Minors and their Jacobian in `t`, at `v` scaled to unit norm.
    fn residual(&self, t: &[C64; 3]) -> (Vec<C64>, Matrix<C64>, f64) {
        let v = self.point(t);
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let xs: Vec<Vec<C64>> = self.complement().iter().map(|w| wedge_pair(&v, w)).collect();
        let uxs: Vec<Vec<C64>> = xs.iter().map(|x| self.qu.mul_vec(x)).collect();
        let m = Matrix::from_fn(3, 3, |a, b| dot(&xs[a], &uxs[b]));
        let dm: Vec<Matrix<C64>> = (0..3)
            .map(|k| Matrix::from_fn(3, 3, |a, b| dot(&self.pk_pa[k][a], &uxs[b]) + dot(&uxs[a], &self.pk_pa[k][b])))
            .collect();
        let minor = |m: &Matrix<C64>, ((i1, i2), (j1, j2)): ((usize, usize), (usize, usize))| {
            m[(i1, j1)] * m[(i2, j2)] - m[(i1, j2)] * m[(i2, j1)]
        };
        let r: Vec<C64> = MINORS.iter().map(|&ij| minor(&m, ij)).collect();
        let jac = Matrix::from_fn(6, 3, |row, k| {
            let ((i1, i2), (j1, j2)) = MINORS[row];
            let d = &dm[k];
            d[(i1, j1)] * m[(i2, j2)] + m[(i1, j1)] * d[(i2, j2)]
                - d[(i1, j2)] * m[(i2, j1)]
                - m[(i1, j2)] * d[(i2, j1)]
        });
        let scaled = r.iter().map(|z| z.norm()).fold(0.0, f64::max) / norm.powi(4);
        (r, jac, scaled)
    }

    /// Damped Gauss–Newton from `t`; returns the point and its scaled residual.
    fn polish(&self, mut t: [C64; 3], cfg: &SearchConfig) -> Option<([C64; 3], f64)> {
        let (mut r, mut jac, mut res) = self.residual(&t);
        let mut mu = 1e-3;
        for _ in 0..cfg.max_iter {
            if res <= cfg.residual_tol * 1e-2 {
                break;
            }
            let jh = jac.transpose().map(|z| z.conj());
            let jhj = jh.mul(&jac);
            let g = jh.mul_vec(&r);
            let scale = (0..3).map(|i| jhj[(i, i)].norm()).fold(0.0, f64::max).max(1e-300);
            let mut improved = false;
            for _ in 0..12 {
                let damped = jhj.add(&Matrix::identity(3).scale(&C64::new(mu * scale, 0.0)));
                let Some(step) = damped.solve(&g.iter().map(|z| -z).collect::<Vec<_>>()) else { break };
                let cand = [t[0] + step[0], t[1] + step[1], t[2] + step[2]];
                let (r2, j2, res2) = self.residual(&cand);
                if res2 < res {
                    t = cand;
                    r = r2;
                    jac = j2;
                    res = res2;
                    mu = (mu / 4.0).max(1e-12);
                    improved = true;
                    break;
                }
                mu *= 5.0;
            }
            if !improved || t.iter().any(|z| z.norm() > 1e8) {
                break;
            }
        }
        (res <= cfg.residual_tol).then_some((t, res))
    }
}

/// Multistart search for the points of `P(V⁺)` where the Kummer matrix drops
/// to rank 1, each re-verified numerically.
pub fn node_census(lag: &InvariantLagrangian, quadric: &QuadricReport, cfg: &SearchConfig) -> Result<NodeCensus> {
    if !lag.u.has_distinct_eigenvalues() {
        return Err(Error::MissingCertificate("u_distinct_eigenvalues".into()));
    }
    if cfg.residual_tol <= 0.0 || cfg.dedupe_tol <= 0.0 {
        return Err(Error::InvalidArgument("tolerances must be positive".into()));
    }
    let qu = lag.u.form_matrix().map(C64::from_ratio_big);
    let mut found: Vec<(Vec<C64>, f64)> = Vec::new();
    let mut converged = 0;
    let mut charts_used = 0;
    let mut normalizer = ChaCha8Rng::seed_from_u64(cfg.seed);
    // fixed generic functional used to pick a representative of each point
    let ell: Vec<C64> = (0..4).map(|_| random_c64(&mut normalizer, 1.0)).collect();

    for chart_idx in 0..cfg.max_charts {
        charts_used += 1;
        let mut chart_rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        chart_rng.set_stream(1 + chart_idx as u64);
        let chart = Chart::random(qu.clone(), &mut chart_rng);
        let results: Vec<Option<(Vec<C64>, f64)>> = (0..cfg.starts)
            .into_par_iter()
            .map(|s| {
                let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
                rng.set_stream(1_000 + (chart_idx * cfg.starts + s) as u64);
                let t0 = [random_c64(&mut rng, 2.0), random_c64(&mut rng, 2.0), random_c64(&mut rng, 2.0)];
                chart.polish(t0, cfg).map(|(t, res)| {
                    let v = chart.point(&t);
                    let l = dot(&ell, &v);
                    (v.iter().map(|z| z / l).collect(), res)
                })
            })
            .collect();
        for (v, res) in results.into_iter().flatten() {
            converged += 1;
            found.push((v, res));
        }
        found.sort_by(|a, b| cmp_point(&a.0, &b.0));
        found = dedupe(found, cfg.dedupe_tol);
        if found.len() >= cfg.expected {
            break;
        }
    }

    let nodes = found
        .into_iter()
        .map(|(coords, residual)| {
            let (membership, singular_values) = kummer_membership_numeric(&coords, &lag.u, 1e-8);
            let mut v6 = coords.clone();
            v6.extend([C64::new(0.0, 0.0); 2]);
            let fiber_dim = numeric_fiber_dim(&v6, &lag.a);
            let n2: f64 = coords.iter().map(|z| z.norm_sqr()).sum();
            let quadric_value = quadric.eval(&coords).norm() / n2;
            Node { coords, residual, membership, singular_values, fiber_dim, quadric_value }
        })
        .collect();
    Ok(NodeCensus { nodes, converged_starts: converged, charts_used, expected: cfg.expected })
}

fn cmp_point(a: &[C64], b: &[C64]) -> std::cmp::Ordering {
    let key = |v: &[C64]| v.iter().flat_map(|z| [z.re, z.im]).collect::<Vec<f64>>();
    key(a).partial_cmp(&key(b)).unwrap_or(std::cmp::Ordering::Equal)
}

/// Keeps the best-residual representative of each cluster, in sorted order.
fn dedupe(points: Vec<(Vec<C64>, f64)>, tol: f64) -> Vec<(Vec<C64>, f64)> {
    let mut kept: Vec<(Vec<C64>, f64)> = Vec::new();
    for (v, res) in points {
        let close = kept
            .iter_mut()
            .find(|(w, _)| v.iter().zip(w.iter()).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt() < tol);
        match close {
            Some(k) if res < k.1 => *k = (v, res),
            Some(_) => {}
            None => kept.push((v, res)),
        }
    }
    kept
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CurveSpotCheck {
    pub points: usize,
    #[serde(serialize_with = "ser_sci")]
    pub max_residual: f64,
    #[serde(serialize_with = "ser_sci")]
    pub min_independence: f64,
}

impl CurveSpotCheck {
    pub fn passed(&self) -> bool {
        self.points > 0 && self.max_residual < 1e-8 && self.min_independence > 1e-6
    }
}

/// Samples points of `Q ∩ S` on lines of one ruling of the split quadric and
/// checks the gradients of `Q` and `S` are independent there.
pub fn quadric_kummer_spot_check(
    lag: &InvariantLagrangian,
    quadric: &QuadricReport,
    seed: u64,
    lines: usize,
) -> Option<CurveSpotCheck> {
    let p_inv = lag.phi.frame()?.inverse()?.map(C64::from_ratio_big);
    let b = quadric.matrix.map(C64::from_ratio_big);
    let qu = lag.u.form_matrix().map(C64::from_ratio_big);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = CurveSpotCheck { points: 0, max_residual: 0.0, min_independence: f64::INFINITY };
    let half = C64::new(0.5, 0.0);
    for _ in 0..lines {
        let (al, be) = (random_c64(&mut rng, 1.0), random_c64(&mut rng, 1.0));
        // point (γ:δ) of the ruling line through (α:β), as in SymmetricPhi::quadric_point
        let lift = |ga: C64, de: C64| {
            let (p, q, r, s) = (al * ga, be * de, al * de, be * ga);
            p_inv.mul_vec(&[(p + q) * half, (q - p) * half, (r - s) * half, -(r + s) * half])
        };
        let a = lift(C64::new(0.0, 0.0), C64::new(1.0, 0.0));
        let dir = lift(C64::new(1.0, 0.0), C64::new(0.0, 0.0));
        let comp = [
            dir.clone(),
            (0..4).map(|_| random_c64(&mut rng, 1.0)).collect(),
            (0..4).map(|_| random_c64(&mut rng, 1.0)).collect(),
        ];
        let at = |g: C64| -> Vec<C64> { (0..4).map(|i| a[i] + g * dir[i]).collect() };
        let det_at = |v: &[C64]| kummer_matrix(&qu, v, &comp).determinant();
        let xs: Vec<C64> = (0..5).map(|k| C64::new(k as f64 - 2.0, 0.0)).collect();
        let ys: Vec<C64> = xs.iter().map(|&g| det_at(&at(g))).collect();
        let coeffs = crate::poly::trim(crate::poly::interpolate(&xs, &ys));
        if coeffs.len() < 2 {
            continue;
        }
        for g in crate::poly::complex_roots(&coeffs) {
            let v = at(g);
            let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            let vn: Vec<C64> = v.iter().map(|z| z / n).collect();
            let scale = n.powi(4);
            let res = (det_at(&v) / scale).norm().max(dot(&vn, &b.mul_vec(&vn)).norm());
            let grad_q: Vec<C64> = b.mul_vec(&vn);
            let h = 1e-6;
            let grad_s: Vec<C64> = (0..4)
                .map(|k| {
                    let mut vp = vn.clone();
                    let mut vm = vn.clone();
                    vp[k] += h;
                    vm[k] -= h;
                    (det_at(&vp) - det_at(&vm)) / (2.0 * h)
                })
                .collect();
            let rank_ratio = independence(&grad_q, &grad_s);
            out.points += 1;
            out.max_residual = out.max_residual.max(res);
            out.min_independence = out.min_independence.min(rank_ratio);
        }
    }
    Some(out)
}

/// Largest 2×2 minor of `[a; b]` relative to `|a||b|`.
fn independence(a: &[C64], b: &[C64]) -> f64 {
    let na = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let nb = b.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let mut best: f64 = 0.0;
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            best = best.max((a[i] * b[j] - a[j] * b[i]).norm());
        }
    }
    best / (na * nb).max(1e-300)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::epw::operators::quadric_of_phi;

    #[test]
    fn chart_jacobian_matches_finite_differences() {
        let lag = InvariantLagrangian::reference();
        let qu = lag.u.form_matrix().map(C64::from_ratio_big);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let chart = Chart::random(qu, &mut rng);
        let t = [C64::new(0.3, -0.2), C64::new(-0.1, 0.5), C64::new(0.7, 0.1)];
        let (r, jac, _) = chart.residual(&t);
        let h = 1e-6;
        for k in 0..3 {
            let mut tp = t;
            tp[k] += h;
            let (rp, _, _) = chart.residual(&tp);
            for i in 0..6 {
                let fd = (rp[i] - r[i]) / h;
                assert!((fd - jac[(i, k)]).norm() < 1e-4 * (1.0 + fd.norm()), "{i} {k}");
            }
        }
    }

    #[test]
    fn small_search_finds_only_nodes() {
        let lag = InvariantLagrangian::reference();
        let q = quadric_of_phi(&lag.phi);
        let cfg = SearchConfig { starts: 60, max_charts: 1, ..SearchConfig::default() };
        let census = node_census(&lag, &q, &cfg).unwrap();
        assert!(!census.nodes.is_empty());
        assert!(census.nodes.len() <= 16);
        assert!(census.all_rank_two());
    }
}
