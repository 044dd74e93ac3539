//! Seeded generators and case checks shared by the acceptance runner and
//! the property tests. Each `check_*` returns `Err` describing a failing case.

#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use symplectic_census::epw::{is_isotropic, plucker_matrix, SelfAdjointOp, SymmetricPhi};
use symplectic_census::exalg::{blades, graph_extract, symplectic_form, MultiVector, Subspace};
use symplectic_census::grassmann::{contraction_criterion, is_decomposable};
use symplectic_census::lefschetz::trace_s2;
use symplectic_census::linalg::Matrix;
use symplectic_census::scalar::{integer, rational};
use symplectic_census::{MatrixQ, MultiVectorQ, Q};

pub type Case = Result<(), String>;

pub fn small_rational(rng: &mut ChaCha8Rng) -> Q {
    rational(rng.gen_range(-6..=6), rng.gen_range(1..=4))
}

/// Random element of `∧^k C^n`; each blade is present with probability `density`.
pub fn random_multivector(rng: &mut ChaCha8Rng, n: usize, k: usize, density: f64) -> MultiVectorQ {
    let mut terms: Vec<(Vec<usize>, Q)> = Vec::new();
    for b in blades(n, k) {
        if rng.gen_bool(density) {
            terms.push((b.indices(), small_rational(rng)));
        }
    }
    MultiVector::from_terms(n, k, terms).unwrap()
}

pub fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> MultiVectorQ {
    random_multivector(rng, n, 1, 0.8)
}

pub fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> MatrixQ {
    Matrix::from_fn(rows, cols, |_, _| small_rational(rng))
}

pub fn random_invertible(rng: &mut ChaCha8Rng, n: usize) -> MatrixQ {
    loop {
        let m = random_matrix(rng, n, n);
        if m.inverse().is_some() {
            return m;
        }
    }
}

pub fn random_symmetric(rng: &mut ChaCha8Rng, n: usize) -> MatrixQ {
    let m = random_matrix(rng, n, n);
    m.add(&m.transpose())
}

/// `a ∧ b = (-1)^{pq} b ∧ a` in `∧ C^n`.
pub fn check_graded_commutativity(rng: &mut ChaCha8Rng) -> Case {
    let n = rng.gen_range(2..=7);
    let p = rng.gen_range(0..=n);
    let q = rng.gen_range(0..=n - p);
    let a = random_multivector(rng, n, p, 0.5);
    let b = random_multivector(rng, n, q, 0.5);
    let ab = a.wedge(&b).map_err(|e| e.to_string())?;
    let ba = b.wedge(&a).map_err(|e| e.to_string())?;
    let sign = if (p * q) % 2 == 0 { integer(1) } else { integer(-1) };
    if ab == ba.scale(&sign) {
        Ok(())
    } else {
        Err(format!("n={n} p={p} q={q}: a={a:?} b={b:?}"))
    }
}

/// `ω(a, b) = -ω(b, a)`, `ω(a, a) = 0`, and a nonzero `a` pairs nontrivially
/// with its complementary blade.
pub fn check_omega(rng: &mut ChaCha8Rng) -> Case {
    let a = random_multivector(rng, 6, 3, 0.5);
    let b = random_multivector(rng, 6, 3, 0.5);
    let w = |x: &MultiVectorQ, y: &MultiVectorQ| symplectic_form(x, y).map_err(|e| e.to_string());
    if w(&a, &b)? != -w(&b, &a)? {
        return Err(format!("antisymmetry fails at a={a:?} b={b:?}"));
    }
    if w(&a, &a)? != integer(0) {
        return Err(format!("ω(a, a) ≠ 0 at a={a:?}"));
    }
    if let Some((blade, _)) = a.leading() {
        let complement: Vec<usize> = (1..=6).filter(|i| !blade.indices().contains(i)).collect();
        let c = MultiVector::basis(6, &complement).unwrap();
        if w(&a, &c)? == integer(0) {
            return Err(format!("a={a:?} is orthogonal to its complementary blade"));
        }
    }
    Ok(())
}

/// Gram matrix of `ω` on the blade basis of `∧^3 C^6`.
pub fn omega_gram() -> MatrixQ {
    let basis: Vec<MultiVectorQ> =
        blades(6, 3).into_iter().map(|b| MultiVector::basis(6, &b.indices()).unwrap()).collect();
    Matrix::from_fn(20, 20, |i, j| symplectic_form(&basis[i], &basis[j]).unwrap())
}

/// Blades of `∧^3 C^6` containing / avoiding index 1: a Lagrangian splitting.
pub fn lagrangian_splitting() -> (Vec<MultiVectorQ>, Vec<MultiVectorQ>) {
    blades(6, 3).into_iter().map(|b| (b.contains(1), MultiVector::basis(6, &b.indices()).unwrap())).fold(
        (Vec::new(), Vec::new()),
        |(mut l1, mut l2), (has1, v)| {
            if has1 {
                l1.push(v)
            } else {
                l2.push(v)
            }
            (l1, l2)
        },
    )
}

fn combine(basis: &[MultiVectorQ], coords: &[Q]) -> MultiVectorQ {
    basis.iter().zip(coords).fold(MultiVector::zero(6, 3), |acc, (b, c)| acc + b.scale(c))
}

/// Graph `{x + f(x)}` of `f: L1 → L2`, with `f` given by columns of `f`.
fn graph(l1: &[MultiVectorQ], l2: &[MultiVectorQ], f: &MatrixQ) -> Vec<MultiVectorQ> {
    (0..l1.len()).map(|j| l1[j].clone() + combine(l2, &f.column(j))).collect()
}

/// The graph of `G⁻¹S` is Lagrangian exactly when `S` is symmetric, for `ω`
/// and for any nonzero multiple of it, and `graph_extract` recovers the map.
pub fn check_lagrangian_graph(rng: &mut ChaCha8Rng) -> Case {
    let (l1, l2) = lagrangian_splitting();
    let g = Matrix::from_fn(10, 10, |i, j| symplectic_form(&l1[i], &l2[j]).unwrap());
    let g_inv = g.inverse().ok_or("ω does not pair the splitting")?;
    let symmetric = rng.gen_bool(0.5);
    let s = if symmetric { random_symmetric(rng, 10) } else { random_matrix(rng, 10, 10) };
    let f = g_inv.mul(&s);
    let w = Subspace::span(6, 3, &graph(&l1, &l2, &f)).map_err(|e| e.to_string())?;
    if w.dim() != 10 {
        return Err(format!("graph has dimension {}", w.dim()));
    }
    let iso = is_isotropic(&w).map_err(|e| e.to_string())?;
    if iso != s.is_symmetric() {
        return Err(format!("isotropic = {iso} but S symmetric = {}", s.is_symmetric()));
    }
    // any rescaling of ω gives the same verdict
    let c = [integer(-3), integer(-1), rational(1, 2), integer(7)][rng.gen_range(0..4)].clone();
    let b = w.basis();
    let scaled_iso = (0..b.len())
        .all(|i| (i + 1..b.len()).all(|j| c.clone() * symplectic_form(&b[i], &b[j]).unwrap() == integer(0)));
    if scaled_iso != iso {
        return Err(format!("isotropy changes when ω is scaled by {c}"));
    }
    let e1 = Subspace::span(6, 3, &l1).unwrap();
    let e2 = Subspace::span(6, 3, &l2).unwrap();
    let map = graph_extract(&w, &e1, &e2).map_err(|e| e.to_string())?;
    for (j, x) in l1.iter().enumerate() {
        if map.apply(x).map_err(|e| e.to_string())? != combine(&l2, &f.column(j)) {
            return Err(format!("graph_extract differs on basis vector {j}"));
        }
    }
    Ok(())
}

/// Random graph over a random splitting `C^6 = E1 ⊕ E2`, extracted back.
pub fn check_graph_round_trip(rng: &mut ChaCha8Rng) -> Case {
    let p = random_invertible(rng, 6);
    let cols: Vec<MultiVectorQ> = (0..6).map(|j| MultiVector::vector(&p.column(j))).collect();
    let e1 = Subspace::span(6, 1, &cols[..3]).unwrap();
    let e2 = Subspace::span(6, 1, &cols[3..]).unwrap();
    let f = random_invertible(rng, 3);
    let image =
        |x: &[Q]| -> MultiVectorQ { (0..3).fold(MultiVector::zero(6, 1), |acc, i| acc + cols[3 + i].scale(&x[i])) };
    let gens: Vec<MultiVectorQ> = (0..3).map(|j| cols[j].clone() + image(&f.column(j))).collect();
    let w = Subspace::span(6, 1, &gens).unwrap();
    let map = graph_extract(&w, &e1, &e2).map_err(|e| e.to_string())?;
    for (j, x) in cols[..3].iter().enumerate() {
        if map.apply(x).map_err(|e| e.to_string())? != image(&f.column(j)) {
            return Err(format!("round trip differs on E1 basis vector {j}"));
        }
    }
    Ok(())
}

/// The echelon basis depends only on the span.
pub fn check_echelon_determinism(rng: &mut ChaCha8Rng) -> Case {
    let n = rng.gen_range(3..=6);
    let k = rng.gen_range(1..n);
    let m = rng.gen_range(1..=5);
    let vs: Vec<MultiVectorQ> = (0..m).map(|_| random_multivector(rng, n, k, 0.6)).collect();
    let mix = random_invertible(rng, m);
    let mut ws: Vec<MultiVectorQ> =
        (0..m).map(|j| (0..m).fold(MultiVector::zero(n, k), |acc, i| acc + vs[i].scale(&mix[(i, j)]))).collect();
    ws.shuffle(rng);
    let a = Subspace::span(n, k, &vs).map_err(|e| e.to_string())?;
    let b = Subspace::span(n, k, &ws).map_err(|e| e.to_string())?;
    if a == b {
        Ok(())
    } else {
        Err(format!("n={n} k={k}: {:?} vs {:?}", a.basis(), b.basis()))
    }
}

/// Random invariant Lagrangian `A+ ⊕ A-` from a random self-adjoint `u` and
/// a random symmetric `φ`.
pub fn random_invariant_parts(rng: &mut ChaCha8Rng) -> (SelfAdjointOp, SymmetricPhi) {
    let q_inv = plucker_matrix().inverse().unwrap();
    let u = SelfAdjointOp::from_matrix(q_inv.mul(&random_symmetric(rng, 6))).unwrap();
    let phi = loop {
        if let Ok(p) = SymmetricPhi::new(random_symmetric(rng, 4)) {
            if p.is_invertible() {
                break p;
            }
        }
    };
    (u, phi)
}

/// Three kinds of 3-vectors: wedges of three vectors, sparse random ones and
/// decomposables perturbed by a blade.
pub fn decomposability_input(rng: &mut ChaCha8Rng, i: usize) -> Option<(MultiVectorQ, Option<bool>)> {
    let alpha = match i % 3 {
        0 => {
            let (a, b, c) = (random_vector(rng, 6), random_vector(rng, 6), random_vector(rng, 6));
            let x = a.wedge(&b).unwrap().wedge(&c).unwrap();
            return (!x.is_zero()).then_some((x, Some(true)));
        }
        1 => {
            let density = rng.gen_range(0.1..0.6);
            random_multivector(rng, 6, 3, density)
        }
        _ => {
            let (a, b, c) = (random_vector(rng, 6), random_vector(rng, 6), random_vector(rng, 6));
            let blade = blades(6, 3)[rng.gen_range(0..20)];
            a.wedge(&b).unwrap().wedge(&c).unwrap() + MultiVector::basis(6, &blade.indices()).unwrap()
        }
    };
    (!alpha.is_zero()).then_some((alpha, None))
}

pub fn check_decomposability(alpha: &MultiVectorQ, expected: Option<bool>) -> Case {
    let ann = is_decomposable(alpha).map_err(|e| e.to_string())?.decomposable;
    let con = contraction_criterion(alpha).map_err(|e| e.to_string())?;
    if ann != con {
        return Err(format!("annihilator {ann} vs contraction {con} at {alpha:?}"));
    }
    if expected.is_some_and(|e| e != ann) {
        return Err(format!("wedge of three vectors judged indecomposable: {alpha:?}"));
    }
    Ok(())
}

/// Trace of `S^2 g` on the monomial basis `x_i x_j`, `i ≤ j`, plus the
/// trivial summand, for `g` an involution with trace `tau` conjugated by `p`.
pub fn brute_force_trace_s2(h: usize, tau: i64, p: &MatrixQ) -> Q {
    let plus = (h as i64 + tau) / 2;
    let d = Matrix::diagonal(&(0..h).map(|i| integer(if (i as i64) < plus { 1 } else { -1 })).collect::<Vec<_>>());
    let g = p.mul(&d).mul(&p.inverse().unwrap());
    let mut trace = integer(1);
    for i in 0..h {
        for j in i..h {
            // coefficient of x_i x_j in (g x_i)(g x_j)
            let c = if i == j {
                g[(i, i)].clone() * g[(i, i)].clone()
            } else {
                g[(i, i)].clone() * g[(j, j)].clone() + g[(j, i)].clone() * g[(i, j)].clone()
            };
            trace += c;
        }
    }
    trace
}

pub fn check_trace_s2(h: usize, tau: i64, p: &MatrixQ) -> Case {
    let formula = trace_s2(tau, h as i64).map_err(|e| e.to_string())?;
    let brute = brute_force_trace_s2(h, tau, p);
    if formula == brute {
        Ok(())
    } else {
        Err(format!("h={h} tau={tau}: formula {formula} vs brute force {brute}"))
    }
}

/// Number of failures among `cases` seeded draws, with the first message.
pub fn run_cases(seed: u64, cases: usize, mut check: impl FnMut(&mut ChaCha8Rng) -> Case) -> (usize, Option<String>) {
    use rand::SeedableRng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0;
    let mut first = None;
    for _ in 0..cases {
        if let Err(e) = check(&mut rng) {
            failures += 1;
            first.get_or_insert(e);
        }
    }
    (failures, first)
}

/// Certificates that hold for every invariant Lagrangian built from a
/// self-adjoint `u` and an invertible symmetric `φ`.
pub const STRUCTURAL_CERTIFICATES: [&str; 8] = [
    "lagrangian_dimension",
    "lagrangian_isotropic",
    "invariant_blocks",
    "a_minus_meets_f1_block",
    "a_minus_meets_f2_block",
    "u_graph_round_trip",
    "phi_symmetric",
    "a_plus_graph",
];

pub fn check_invariant_lagrangian(rng: &mut ChaCha8Rng) -> Case {
    use symplectic_census::epw::{check_lg_star, InvariantLagrangian};
    let (u, phi) = random_invariant_parts(rng);
    let lag = InvariantLagrangian::assemble(u, phi).map_err(|e| e.to_string())?;
    let certs = check_lg_star(&lag, 0, 0).map_err(|e| e.to_string())?;
    for name in STRUCTURAL_CERTIFICATES {
        match certs.iter().find(|c| c.name == name) {
            Some(c) if c.passed => {}
            Some(c) => return Err(format!("{name} failed: {}", c.detail)),
            None => return Err(format!("{name} missing")),
        }
    }
    Ok(())
}
