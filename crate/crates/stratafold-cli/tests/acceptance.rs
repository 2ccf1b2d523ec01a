//! Twelve numbered end-to-end checks with their tolerances pinned right
//! here. Each test prints one PASS/FAIL line (run with --nocapture to see
//! them all); a FAIL line always comes with a panic so the target goes red.

use std::process::Command;
use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use stratafold::clifford::{vee_product, CliffordElement, MetricSpec};
use stratafold::dec::{
    dirac_kahler_matrix, dispersion_table, hodge_decompose, inner_product, laplacian_matrix,
    Cochain, SimplicialRing,
};
use stratafold::exterior::{pairing, Form, LieAlgebraSpec, Multivector};
use stratafold::qgeom::{
    gradient_field_at, hamiltonian_field_at, integrate, jordan_product, kl_vector_field,
    lie_product, lindblad_generator, polar_state, rank_and_stratum, tangent_space_dimension,
    AlgebraConfig, DensityState, DualElement, HermitianOperator, LindbladSpec, ObservableBasis,
    EPS_RANK,
};
use stratafold::statgeom::{pullback_residual, sqrt_embed, ProbabilityVector};

const FIELD_TOL: f64 = 1e-12; // criterion 1
const GENERATOR_TOL: f64 = 1e-10; // criterion 2
const TRACE_TOL: f64 = 1e-8; // criterion 3
const EIG_FLOOR: f64 = -1e-8; // criterion 3
const DECAY_TOL: f64 = 1e-6; // criterion 3
const FD_STEP: f64 = 1e-5; // criterion 5
const FD_TOL: f64 = 1e-6; // criterion 5
const DISPERSION_TOL: f64 = 1e-10; // criterion 6
const SQUARE_TOL: f64 = 1e-12; // criterion 6
const EXTERIOR_TOL: f64 = 1e-12; // criterion 7
const CLIFFORD_TOL: f64 = 1e-10; // criterion 8
const JORDAN_TOL: f64 = 1e-12; // criterion 9
const FISHER_TOL: f64 = 1e-10; // criterion 10
const SPHERE_TOL: f64 = 1e-12; // criterion 10
const HODGE_TOL: f64 = 1e-10; // criterion 11

fn report_worst(number: usize, label: &str, worst: f64, tol: f64) {
    let ok = worst <= tol;
    let status = if ok { "PASS" } else { "FAIL" };
    println!("{status} criterion {number}: {label} (worst {worst:.3e}, tolerance {tol:.0e})");
    assert!(ok, "criterion {number}: worst {worst:.3e} exceeds {tol:.0e}");
}

fn report_ok(number: usize, label: &str, ok: bool, detail: &str) {
    let status = if ok { "PASS" } else { "FAIL" };
    println!("{status} criterion {number}: {label} ({detail})");
    assert!(ok, "criterion {number}: {detail}");
}

fn random_hermitian(rng: &mut ChaCha8Rng, n: usize) -> HermitianOperator {
    let m = DMatrix::from_fn(n, n, |_, _| {
        Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    });
    HermitianOperator::new((&m + m.adjoint()).map(|z| z * 0.5)).unwrap()
}

fn random_state(rng: &mut ChaCha8Rng, basis: &Arc<ObservableBasis>) -> DensityState {
    let n = basis.dim();
    let a = DMatrix::from_fn(n, n, |_, _| {
        Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    });
    let m = &a * a.adjoint();
    DensityState::from_matrix(basis, &m.map(|z| z / m.trace().re)).unwrap()
}

fn random_spec(rng: &mut ChaCha8Rng, n: usize) -> LindbladSpec {
    let h = random_hermitian(rng, n);
    let count = rng.random_range(1..=(n * n - 1).min(3));
    let collapse = (0..count)
        .map(|_| {
            DMatrix::from_fn(n, n, |_, _| {
                Complex64::new(rng.random_range(-0.7..0.7), rng.random_range(-0.7..0.7))
            })
        })
        .collect();
    LindbladSpec::new(h, collapse).unwrap()
}

#[test]
fn criterion_01_phase_damping_field_closed_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacc0_0001);
    let gamma = 0.4;
    let spec = LindbladSpec::phase_damping(gamma).unwrap();
    let cfg = AlgebraConfig::default();
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let x1 = rng.random_range(-0.56..0.56);
        let x2 = rng.random_range(-0.56..0.56);
        let x3 = rng.random_range(-0.56..0.56);
        let rho = DensityState::bloch(x1, x2, x3).unwrap();
        let field = kl_vector_field(&spec, &rho, &cfg).unwrap();
        let expected = [0.0, -2.0 * gamma * x1, -2.0 * gamma * x2, 0.0];
        for (got, want) in field.coordinates().iter().zip(expected) {
            worst = worst.max((got - want).abs());
        }
    }
    report_worst(
        1,
        "dephasing field equals (-2g x1, -2g x2, 0) at 100 points",
        worst,
        FIELD_TOL,
    );
}

#[test]
fn criterion_02_field_sum_equals_generator_coordinates() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacc0_0002);
    let cfg = AlgebraConfig::default();
    let mut worst = 0.0f64;
    let mut pairs = 0usize;
    for (n, count) in [(2usize, 70usize), (3, 70), (4, 60)] {
        let basis = Arc::new(ObservableBasis::standard(n).unwrap());
        for _ in 0..count {
            let spec = random_spec(&mut rng, n);
            let rho = random_state(&mut rng, &basis);
            let field = kl_vector_field(&spec, &rho, &cfg).unwrap();
            let image =
                DualElement::from_operator(&basis, &lindblad_generator(&spec, &rho).unwrap())
                    .unwrap();
            worst = worst.max(field.sub(&image).unwrap().norm_inf());
            pairs += 1;
        }
    }
    assert_eq!(pairs, 200);
    report_worst(
        2,
        "dissipative field sum equals generator coordinates, 200 pairs n in {2,3,4}",
        worst,
        GENERATOR_TOL,
    );
}

#[test]
fn criterion_03_rank_transition_and_decay_along_dephasing() {
    let gamma = 0.3;
    let spec = LindbladSpec::phase_damping(gamma).unwrap();
    let rho0 = DensityState::bloch(1.0, 0.0, 0.0).unwrap();
    let path = integrate(&spec, &rho0, 2.0, 1e-3).unwrap();

    let rank_start_ok = path[0].state.rank() == 1;
    let rank_rest_ok = path[1..].iter().all(|s| s.state.rank() == 2);
    let mut trace_drift = 0.0f64;
    let mut min_eig = f64::INFINITY;
    let mut decay_gap = 0.0f64;
    for sample in &path {
        trace_drift = trace_drift.max((sample.state.dual().trace_component() - 1.0).abs());
        min_eig = min_eig.min(sample.state.min_eigenvalue());
        let x1 = sample.state.coordinates()[1];
        decay_gap = decay_gap.max((x1 - (-2.0 * gamma * sample.tau).exp()).abs());
    }
    let ok = rank_start_ok
        && rank_rest_ok
        && trace_drift <= TRACE_TOL
        && min_eig >= EIG_FLOOR
        && decay_gap <= DECAY_TOL;
    report_ok(
        3,
        "pure start leaves its stratum once and decays at the closed-form rate",
        ok,
        &format!(
            "rank 1 at start {rank_start_ok}, rank 2 after {rank_rest_ok}, trace drift {trace_drift:.2e} <= {TRACE_TOL:.0e}, min eig {min_eig:.2e} >= {EIG_FLOOR:.0e}, decay gap {decay_gap:.2e} <= {DECAY_TOL:.0e}"
        ),
    );
}

#[test]
fn criterion_04_stratum_dimensions_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacc0_0004);
    let mut all_ok = true;
    let mut checked = 0usize;
    for n in 2..=4usize {
        for k in 1..=n {
            for _ in 0..3 {
                let mut p = vec![0.0; n];
                let mut total = 0.0;
                for slot in p.iter_mut().take(k) {
                    *slot = rng.random_range(0.2..1.0);
                    total += *slot;
                }
                for slot in p.iter_mut() {
                    *slot /= total;
                }
                let weights = ProbabilityVector::new(p).unwrap();
                let u = DMatrix::from_fn(n, n, |_, _| {
                    Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
                })
                .qr()
                .q();
                let rho = polar_state(&weights, &u).unwrap();
                let expected = 2 * n * k - k * k - 1;
                let info = rank_and_stratum(rho.dual(), EPS_RANK);
                let span = tangent_space_dimension(&rho).unwrap();
                all_ok &= info.rank == k && info.dimension == expected && span == expected;
                checked += 1;
            }
        }
    }
    report_ok(
        4,
        "stratum dimension 2nk - k^2 - 1 matches the tangent span rank, n <= 4",
        all_ok,
        &format!("{checked} random states, exact integer agreement {all_ok}"),
    );
}

fn eval_bare(
    kind: u8,
    op: &HermitianOperator,
    basis: &Arc<ObservableBasis>,
    coords: &[f64],
) -> Vec<f64> {
    let xi = DualElement::from_coordinates(basis, coords.to_vec()).unwrap();
    let cfg = AlgebraConfig::bare();
    let out = if kind == 0 {
        hamiltonian_field_at(op, &xi, &cfg).unwrap()
    } else {
        gradient_field_at(op, &xi, &cfg).unwrap()
    };
    out.coordinates().to_vec()
}

fn fd_bracket(
    f: impl Fn(&[f64]) -> Vec<f64>,
    g: impl Fn(&[f64]) -> Vec<f64>,
    x: &[f64],
    h: f64,
) -> Vec<f64> {
    let fx = f(x);
    let gx = g(x);
    let shift =
        |dir: &[f64], s: f64| -> Vec<f64> { x.iter().zip(dir).map(|(a, d)| a + s * d).collect() };
    let directional = |field: &dyn Fn(&[f64]) -> Vec<f64>, dir: &[f64]| -> Vec<f64> {
        let plus = field(&shift(dir, h));
        let minus = field(&shift(dir, -h));
        plus.iter()
            .zip(&minus)
            .map(|(p, m)| (p - m) / (2.0 * h))
            .collect()
    };
    let dg_f = directional(&g, &fx);
    let df_g = directional(&f, &gx);
    dg_f.iter().zip(&df_g).map(|(a, b)| a - b).collect()
}

#[test]
fn criterion_05_flow_commutators_close_on_the_bracket() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacc0_0005);
    let mut worst = 0.0f64;
    let mut pairs = 0usize;
    for n in 2..=3usize {
        let basis = Arc::new(ObservableBasis::standard(n).unwrap());
        for _ in 0..25 {
            let a = random_hermitian(&mut rng, n);
            let b = random_hermitian(&mut rng, n);
            let c = lie_product(&a, &b).unwrap();
            let x: Vec<f64> = (0..basis.size())
                .map(|_| rng.random_range(-1.0..1.0))
                .collect();
            let xa = |p: &[f64]| eval_bare(0, &a, &basis, p);
            let xb = |p: &[f64]| eval_bare(0, &b, &basis, p);
            let ya = |p: &[f64]| eval_bare(1, &a, &basis, p);
            let yb = |p: &[f64]| eval_bare(1, &b, &basis, p);
            let xc = eval_bare(0, &c, &basis, &x);
            let yc = eval_bare(1, &c, &basis, &x);

            let gap = |got: Vec<f64>, want: &[f64]| -> f64 {
                got.iter()
                    .zip(want)
                    .map(|(p, q)| (p - q).abs())
                    .fold(0.0, f64::max)
            };
            worst = worst.max(gap(fd_bracket(xa, xb, &x, FD_STEP), &xc));
            worst = worst.max(gap(fd_bracket(xa, yb, &x, FD_STEP), &yc));
            let neg_xc: Vec<f64> = xc.iter().map(|v| -v).collect();
            worst = worst.max(gap(fd_bracket(ya, yb, &x, FD_STEP), &neg_xc));
            pairs += 1;
        }
    }
    assert_eq!(pairs, 50);
    report_worst(
        5,
        "finite-difference flow commutators match the bracketed generators",
        worst,
        FD_TOL,
    );
}

#[test]
fn criterion_06_lattice_dispersion_and_operator_square() {
    let mut worst_dispersion = 0.0f64;
    let mut worst_square = 0.0f64;
    for sites in 3..=64usize {
        for spacing in [0.5, 1.0, 2.0] {
            let ring = SimplicialRing::uniform(sites, spacing).unwrap();
            for row in dispersion_table(&ring).unwrap() {
                worst_dispersion = worst_dispersion.max(row.abs_error);
            }
            let dk = dirac_kahler_matrix(&ring);
            let square = &dk * &dk;
            let lap = laplacian_matrix(&ring);
            for r in 0..2 * sites {
                for c in 0..2 * sites {
                    let gap = (square[(r, c)] - Complex64::new(lap[(r, c)], 0.0)).norm();
                    worst_square = worst_square.max(gap);
                }
            }
        }
    }
    report_worst(
        6,
        "spectrum matches the dispersion law for N in 3..=64, l in {0.5, 1, 2}",
        worst_dispersion,
        DISPERSION_TOL,
    );
    report_worst(
        6,
        "squared ring operator equals the Laplacian",
        worst_square,
        SQUARE_TOL,
    );
}

fn random_form(rng: &mut ChaCha8Rng, parent: &Arc<LieAlgebraSpec>, grade: usize) -> Form {
    let n = parent.dim();
    let blades: Vec<Vec<usize>> = (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == grade)
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
        .collect();
    let parts: Vec<(Vec<usize>, f64)> = blades
        .into_iter()
        .map(|ix| (ix, rng.random_range(-1.0..1.0)))
        .collect();
    let borrowed: Vec<(&[usize], f64)> = parts.iter().map(|(ix, v)| (ix.as_slice(), *v)).collect();
    Form::from_components(parent, grade, &borrowed).unwrap()
}

fn random_multivector(
    rng: &mut ChaCha8Rng,
    parent: &Arc<LieAlgebraSpec>,
    grade: usize,
) -> Multivector {
    let n = parent.dim();
    let blades: Vec<Vec<usize>> = (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == grade)
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
        .collect();
    let parts: Vec<(Vec<usize>, f64)> = blades
        .into_iter()
        .map(|ix| (ix, rng.random_range(-1.0..1.0)))
        .collect();
    let borrowed: Vec<(&[usize], f64)> = parts.iter().map(|(ix, v)| (ix.as_slice(), *v)).collect();
    Multivector::from_components(parent, grade, &borrowed).unwrap()
}

fn random_vector(rng: &mut ChaCha8Rng, parent: &Arc<LieAlgebraSpec>) -> (Vec<f64>, Multivector) {
    let coords: Vec<f64> = (0..parent.dim())
        .map(|_| rng.random_range(-1.0..1.0))
        .collect();
    let mv = Multivector::vector(parent, &coords).unwrap();
    (coords, mv)
}

#[test]
fn criterion_07_exterior_identities_on_three_algebras() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacc0_0007);
    let random4 = loop {
        let a = DMatrix::<f64>::from_fn(4, 4, |_, _| rng.random_range(-1.0..1.0));
        if a.determinant().abs() < 0.3 {
            continue;
        }
        let base = LieAlgebraSpec::from_entries(4, &[(0, 1, 1, 1.0), (0, 2, 2, 1.0)]).unwrap();
        break base.change_basis(&a).unwrap();
    };
    let algebras = [
        Arc::new(LieAlgebraSpec::so3()),
        Arc::new(LieAlgebraSpec::heisenberg()),
        Arc::new(random4),
    ];

    let mut worst = 0.0f64;
    for parent in &algebras {
        let n = parent.dim();
        for _ in 0..500 {
            let g2 = rng.random_range(2..=n);
            let a = random_multivector(&mut rng, parent, g2);
            worst = worst.max(a.koszul_boundary().koszul_boundary().norm_inf());

            let g0 = rng.random_range(0..=n.saturating_sub(2));
            let b = random_form(&mut rng, parent, g0);
            worst = worst.max(b.exterior_derivative().exterior_derivative().norm_inf());

            let (u_coords, u) = random_vector(&mut rng, parent);
            let (v_coords, v) = random_vector(&mut rng, parent);
            let g = rng.random_range(0..=n);
            let w = random_form(&mut rng, parent, g);

            let cartan = w
                .lie_derivative(&v)
                .unwrap()
                .sub(
                    &w.exterior_derivative()
                        .contract(&v)
                        .unwrap()
                        .add(&w.contract(&v).unwrap().exterior_derivative())
                        .unwrap(),
                )
                .unwrap();
            worst = worst.max(cartan.norm_inf());

            let vu = Multivector::vector(parent, &parent.bracket(&v_coords, &u_coords).unwrap())
                .unwrap();
            let insertion = w
                .contract(&u)
                .unwrap()
                .lie_derivative(&v)
                .unwrap()
                .sub(&w.lie_derivative(&v).unwrap().contract(&u).unwrap())
                .unwrap()
                .sub(&w.contract(&vu).unwrap())
                .unwrap();
            worst = worst.max(insertion.norm_inf());

            let uv = Multivector::vector(parent, &parent.bracket(&u_coords, &v_coords).unwrap())
                .unwrap();
            let commuted = w
                .lie_derivative(&v)
                .unwrap()
                .lie_derivative(&u)
                .unwrap()
                .sub(&w.lie_derivative(&u).unwrap().lie_derivative(&v).unwrap())
                .unwrap()
                .sub(&w.lie_derivative(&uv).unwrap())
                .unwrap();
            worst = worst.max(commuted.norm_inf());

            let gp = rng.random_range(1..=n);
            let mv = random_multivector(&mut rng, parent, gp);
            let fm = random_form(&mut rng, parent, gp - 1);
            let transpose = pairing(&mv.koszul_boundary(), &fm).unwrap()
                + pairing(&mv, &fm.exterior_derivative()).unwrap();
            worst = worst.max(transpose.abs());
        }
    }
    report_worst(
        7,
        "six operator identities over 500 cases each on three algebras",
        worst,
        EXTERIOR_TOL,
    );
}

#[test]
fn criterion_08_clifford_relations_and_leibniz_witness() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacc0_0008);
    let mut worst = 0.0f64;
    for n in 2..=4usize {
        let parent = Arc::new(LieAlgebraSpec::abelian(n));
        for metric in [MetricSpec::euclidean(n), MetricSpec::lorentzian(n)] {
            let metric = Arc::new(metric);
            let element = |rng: &mut ChaCha8Rng| {
                let mut acc = CliffordElement::zero(&parent, &metric).unwrap();
                for g in 0..=2.min(n) {
                    let part =
                        CliffordElement::from_form(&metric, &random_form(rng, &parent, g)).unwrap();
                    acc = acc.add(&part).unwrap();
                }
                acc
            };
            for _ in 0..100 {
                let v = random_form(&mut rng, &parent, 1);
                let coords: Vec<f64> = (0..n).map(|i| v.coeff(&[i])).collect();
                let mut gvv = 0.0;
                for (i, a) in coords.iter().enumerate() {
                    for (j, b) in coords.iter().enumerate() {
                        gvv += metric.matrix()[(i, j)] * a * b;
                    }
                }
                let cv = CliffordElement::from_form(&metric, &v).unwrap();
                let squared = vee_product(&cv, &cv).unwrap();
                let expected = CliffordElement::scalar(&parent, &metric, gvv).unwrap();
                worst = worst.max(squared.sub(&expected).unwrap().norm_inf());

                let a = element(&mut rng);
                let b = element(&mut rng);
                let c = element(&mut rng);
                let assoc = vee_product(&vee_product(&a, &b).unwrap(), &c)
                    .unwrap()
                    .sub(&vee_product(&a, &vee_product(&b, &c).unwrap()).unwrap())
                    .unwrap();
                worst = worst.max(assoc.norm_inf());

                let (_, u) = random_vector(&mut rng, &parent);
                let p = rng.random_range(0..=n);
                let ap = CliffordElement::from_form(&metric, &random_form(&mut rng, &parent, p))
                    .unwrap();
                let bq = element(&mut rng);
                let sign = if p % 2 == 0 { 1.0 } else { -1.0 };
                let derivation = vee_product(&ap, &bq)
                    .unwrap()
                    .contract(&u)
                    .unwrap()
                    .sub(&vee_product(&ap.contract(&u).unwrap(), &bq).unwrap())
                    .unwrap()
                    .sub(
                        &vee_product(&ap, &bq.contract(&u).unwrap())
                            .unwrap()
                            .scaled(sign),
                    )
                    .unwrap();
                worst = worst.max(derivation.norm_inf());
            }
        }
    }
    report_worst(
        8,
        "square, associativity, and insertion derivation in dims 2-4, both signatures",
        worst,
        CLIFFORD_TOL,
    );

    // the exterior differential does not derive the metric product: on the
    // rotation algebra with the flat metric, a = e0^e1 and b = e2 leave a
    // residual of exactly 1 under either Leibniz sign
    let parent = Arc::new(LieAlgebraSpec::so3());
    let metric = Arc::new(MetricSpec::euclidean(3));
    let d_of = |x: &CliffordElement| -> CliffordElement {
        let mut out = CliffordElement::zero(&parent, &metric).unwrap();
        for g in x.grades() {
            let part = CliffordElement::from_form(&metric, &x.part(g).exterior_derivative());
            out = out.add(&part.unwrap()).unwrap();
        }
        out
    };
    let a = CliffordElement::from_form(
        &metric,
        &Form::basis_blade(&parent, &[0, 1]).unwrap(),
    )
    .unwrap();
    let b = CliffordElement::from_form(&metric, &Form::basis_blade(&parent, &[2]).unwrap())
        .unwrap();
    let whole = d_of(&vee_product(&a, &b).unwrap());
    let mut defects = Vec::new();
    for sign in [1.0, -1.0] {
        let split = vee_product(&d_of(&a), &b)
            .unwrap()
            .add(&vee_product(&a, &d_of(&b)).unwrap().scaled(sign))
            .unwrap();
        defects.push(whole.sub(&split).unwrap().norm_inf());
    }
    let ok = defects.iter().all(|d| (d - 1.0).abs() <= 1e-12);
    report_ok(
        8,
        "stored witness: the differential fails Leibniz for the metric product",
        ok,
        &format!("defect norms {defects:?} (both sign conventions), expected 1"),
    );
}

#[test]
fn criterion_09_bracket_and_product_axioms() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacc0_0009);
    let mut worst = 0.0f64;
    let mut triples = 0usize;
    for n in 2..=5usize {
        for _ in 0..125 {
            let a = random_hermitian(&mut rng, n);
            let b = random_hermitian(&mut rng, n);
            let c = random_hermitian(&mut rng, n);

            let derivation = lie_product(&jordan_product(&a, &b).unwrap(), &c)
                .unwrap()
                .sub(
                    &jordan_product(&a, &lie_product(&b, &c).unwrap())
                        .unwrap()
                        .add(&jordan_product(&lie_product(&a, &c).unwrap(), &b).unwrap())
                        .unwrap(),
                )
                .unwrap();
            worst = worst.max(derivation.norm_inf());

            let associator = jordan_product(&jordan_product(&a, &b).unwrap(), &c)
                .unwrap()
                .sub(&jordan_product(&a, &jordan_product(&b, &c).unwrap()).unwrap())
                .unwrap()
                .sub(&lie_product(&lie_product(&a, &c).unwrap(), &b).unwrap())
                .unwrap();
            worst = worst.max(associator.norm_inf());

            let rebuilt = jordan_product(&a, &b).unwrap().matrix()
                + lie_product(&a, &b)
                    .unwrap()
                    .matrix()
                    .map(|z| z * Complex64::new(0.0, 1.0));
            let gap = (rebuilt - a.matrix() * b.matrix()).map(|z| z.norm()).max();
            worst = worst.max(gap);
            triples += 1;
        }
    }
    assert_eq!(triples, 500);
    report_worst(
        9,
        "derivation, associator, and product reconstruction over 500 triples",
        worst,
        JORDAN_TOL,
    );
}

#[test]
fn criterion_10_simplex_metric_pullback() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacc0_0010);
    let mut worst_residual = 0.0f64;
    let mut worst_sphere = 0.0f64;
    let mut points = 0usize;
    for n in 2..=8usize {
        for _ in 0..143 {
            let mut p: Vec<f64> = (0..n).map(|_| rng.random_range(0.05..1.0)).collect();
            let total: f64 = p.iter().sum();
            for v in p.iter_mut() {
                *v /= total;
            }
            let p = ProbabilityVector::new(p).unwrap();

            let x = sqrt_embed(&p);
            let r2: f64 = x.iter().map(|v| v * v).sum();
            worst_sphere = worst_sphere.max((r2 - 1.0).abs());

            let tangent = |rng: &mut ChaCha8Rng| -> Vec<f64> {
                let mut u: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
                let mean = u.iter().sum::<f64>() / n as f64;
                for v in u.iter_mut() {
                    *v -= mean;
                }
                u
            };
            let u = tangent(&mut rng);
            let v = tangent(&mut rng);
            worst_residual = worst_residual.max(pullback_residual(&p, &u, &v).unwrap());
            points += 1;
        }
    }
    assert!(points >= 1000);
    report_worst(
        10,
        "metric pairing matches the sphere pairing on 1001 interior points",
        worst_residual,
        FISHER_TOL,
    );
    report_worst(
        10,
        "square-root embedding lands on the unit sphere",
        worst_sphere,
        SPHERE_TOL,
    );
}

#[test]
fn criterion_11_ring_decomposition_reassembles_orthogonally() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacc0_0011);
    let mut worst_reassembly = 0.0f64;
    let mut worst_orthogonality = 0.0f64;
    for case in 0..100 {
        let sites = rng.random_range(3..=32usize);
        let spacing = rng.random_range(0.5..2.0);
        let ring = Arc::new(SimplicialRing::uniform(sites, spacing).unwrap());
        let degree = case % 2;
        let values: Vec<f64> = (0..sites).map(|_| rng.random_range(-2.0..2.0)).collect();
        let a = Cochain::new(&ring, degree, values).unwrap();

        let (exact, coexact, harmonic) = hodge_decompose(&a).unwrap();
        let rebuilt = exact.add(&coexact).unwrap().add(&harmonic).unwrap();
        worst_reassembly = worst_reassembly.max(rebuilt.sub(&a).unwrap().norm_inf());

        for (left, right) in [
            (&exact, &coexact),
            (&exact, &harmonic),
            (&coexact, &harmonic),
        ] {
            worst_orthogonality =
                worst_orthogonality.max(inner_product(left, right).unwrap().abs());
        }
    }
    report_worst(
        11,
        "decomposition reassembles 100 random cochains, N <= 32",
        worst_reassembly,
        HODGE_TOL,
    );
    report_worst(
        11,
        "decomposition pieces are pairwise orthogonal",
        worst_orthogonality,
        HODGE_TOL,
    );
}

#[test]
fn criterion_12_cli_reruns_are_byte_identical() {
    let dir = std::env::temp_dir();
    let config = dir.join(format!("stratafold_acceptance_{}.json", std::process::id()));
    std::fs::write(
        &config,
        r#"{
  "dim": 2,
  "H": [[[0.3, 0.0], [0.1, -0.2]], [[0.1, 0.2], [-0.3, 0.0]]],
  "V": [
    [[[0.8660254037844386, 0.0], [0.0, 0.0]], [[0.0, 0.0], [0.8660254037844386, 0.0]]],
    [[[0.5, 0.0], [0.0, 0.0]], [[0.0, 0.0], [-0.5, 0.0]]]
  ],
  "initial": {"coords": [1.0, 0.7, 0.1, -0.2]},
  "t_max": 0.5,
  "dt": 0.001
}"#,
    )
    .unwrap();
    let sampler = dir.join(format!(
        "stratafold_acceptance_fisher_{}.json",
        std::process::id()
    ));
    std::fs::write(&sampler, r#"{"sites": 6, "samples": 25}"#).unwrap();

    let config_path = config.to_str().unwrap().to_string();
    let sampler_path = sampler.to_str().unwrap().to_string();
    let commands: Vec<Vec<&str>> = vec![
        vec!["lindblad", "--config", &config_path],
        vec!["dec-spectrum", "--sites", "24", "--spacing", "0.5"],
        vec!["algebra-check", "--seed", "9"],
        vec!["fisher", "--config", &sampler_path, "--seed", "4"],
    ];

    let mut ok = true;
    let mut detail = String::new();
    for args in &commands {
        let first = Command::new(env!("CARGO_BIN_EXE_stratafold"))
            .args(args)
            .output()
            .unwrap();
        let second = Command::new(env!("CARGO_BIN_EXE_stratafold"))
            .args(args)
            .output()
            .unwrap();
        let same = first.stdout == second.stdout
            && first.status.success()
            && second.status.success();
        ok &= same;
        detail.push_str(&format!("{} {}; ", args[0], if same { "ok" } else { "DIFFERS" }));
    }
    let _ = std::fs::remove_file(config);
    let _ = std::fs::remove_file(sampler);
    report_ok(
        12,
        "two runs of every subcommand emit identical bytes",
        ok,
        detail.trim_end_matches("; "),
    );
}
