use symplectic_census::epw::{
    kummer_matrix, kummer_membership, plus_vector, run_epw, standard_complement, InstanceConfig, SelfAdjointOp,
    REFERENCE_TOML,
};
use symplectic_census::scalar::integer;
use symplectic_census::Q;

fn with_last_eigenvalue(l6: Q) -> SelfAdjointOp {
    let mut ev: Vec<Q> = (1..=5).map(integer).collect();
    ev.push(l6);
    SelfAdjointOp::from_spectral(&SelfAdjointOp::hyperbolic_eigenbasis(), &ev).unwrap()
}

fn det_at(coords: &[Q], u: &SelfAdjointOp) -> Q {
    kummer_matrix(&u.form_matrix(), coords, &standard_complement(coords)).determinant()
}

// The reference quartic has no small rational points, so move the sixth
// eigenvalue until a chosen rational point lies on S. `u` depends affinely on
// the eigenvalue through a rank-one term, hence so does det M.
#[test]
fn rational_point_on_kummer_has_membership_one() {
    let candidates = [[1, 1, 0, 0], [1, 2, 0, 1], [1, 2, 3, 5], [2, 1, 1, 3]];
    let (coords, l6) = candidates
        .iter()
        .find_map(|c| {
            let coords: Vec<Q> = c.iter().map(|&x| integer(x)).collect();
            let d0 = det_at(&coords, &with_last_eigenvalue(integer(0)));
            let d1 = det_at(&coords, &with_last_eigenvalue(integer(1)));
            let d2 = det_at(&coords, &with_last_eigenvalue(integer(2)));
            assert_eq!(d2 - d1.clone(), d1.clone() - d0.clone(), "det M is not affine in the eigenvalue");
            if d0 == d1 {
                return None;
            }
            let l6 = d0.clone() / (d0 - d1);
            (!(1..=5).any(|k| l6 == integer(k))).then_some((coords, l6))
        })
        .expect("some candidate gives a sixth eigenvalue distinct from 1..5");

    let u = with_last_eigenvalue(l6);
    assert!(u.has_distinct_eigenvalues());
    let v = plus_vector(&coords);
    assert_eq!(kummer_membership(&v, &u).unwrap(), 1);
    let off = plus_vector(&[integer(3), integer(-1), integer(4), integer(1)]);
    assert_eq!(kummer_membership(&off, &u).unwrap(), 0);
}

#[test]
fn reference_point_off_kummer() {
    let u = SelfAdjointOp::reference();
    let v = plus_vector(&[integer(1), integer(0), integer(0), integer(0)]);
    assert_eq!(kummer_membership(&v, &u).unwrap(), 0);
}

#[test]
fn matrix_form_instance_matches_spectral_form() {
    let reference = InstanceConfig::reference();
    let u = reference.operator().unwrap();
    let rows: Vec<String> = (0..6)
        .map(|i| {
            let row: Vec<String> = (0..6).map(|j| format!("\"{}\"", u.matrix()[(i, j)])).collect();
            format!("[{}]", row.join(", "))
        })
        .collect();
    let phi = reference.phi().unwrap();
    let b_rows: Vec<String> = (0..4)
        .map(|i| {
            let row: Vec<String> = (0..4).map(|j| format!("\"{}\"", phi.matrix()[(i, j)])).collect();
            format!("[{}]", row.join(", "))
        })
        .collect();
    let text =
        format!("name = \"matrix form\"\n[u]\nmatrix = [{}]\n[phi]\nb = [{}]\n", rows.join(", "), b_rows.join(", "));
    let cfg = InstanceConfig::parse(&text).unwrap();
    assert_eq!(cfg.operator().unwrap(), u);
    assert_eq!(cfg.phi().unwrap().matrix(), phi.matrix());
}

#[test]
fn unknown_keys_rejected() {
    let text = format!("{REFERENCE_TOML}\nextra = 1\n");
    assert!(InstanceConfig::parse(&text).is_err());
}

#[test]
fn repeated_eigenvalues_fail_certificate() {
    let text = REFERENCE_TOML
        .replace(r#"eigenvalues = ["1", "2", "3", "4", "5", "6"]"#, r#"eigenvalues = ["1", "2", "3", "4", "5", "5"]"#);
    let mut cfg = InstanceConfig::parse(&text).unwrap();
    cfg.checks.decomposable_budget = 10;
    let mut search = cfg.search_config();
    search.starts = 20;
    let report = run_epw(&cfg, &search).unwrap();
    let cert = report.certificates.iter().find(|c| c.name == "u_distinct_eigenvalues").unwrap();
    assert!(!cert.passed);
}
