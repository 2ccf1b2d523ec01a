//! The invariant-suite subcommand. Each line reports the worst residual of
//! one operator identity over a seeded randomized sweep; the run fails if
//! any line exceeds its tolerance.

use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use stratafold::clifford::{vee_product, CliffordElement, MetricSpec};
use stratafold::exterior::{pairing, Form, LieAlgebraSpec, Multivector};
use stratafold::qgeom::{
    jordan_product, kl_vector_field, lie_product, lindblad_generator, AlgebraConfig, DensityState,
    DualElement, HermitianOperator, LindbladSpec, ObservableBasis,
};

use crate::config::{classify, read_config_text, Failure, Outcome, RunArgs};
use crate::pool::run_indexed;
use crate::report::{Cell, Table};

const EXTERIOR_TOL: f64 = 1e-12;
const CLIFFORD_TOL: f64 = 1e-10;
const MATRIX_TOL: f64 = 1e-12;
const GENERATOR_TOL: f64 = 1e-10;
const CASES: usize = 100;

struct CheckLine {
    suite: String,
    invariant: &'static str,
    residual: f64,
    tol: f64,
}

impl CheckLine {
    fn passed(&self) -> bool {
        self.residual <= self.tol
    }
}

fn grade_indices(n: usize, grade: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|mask| mask.count_ones() as usize == grade)
        .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).collect())
        .collect()
}

fn random_form(rng: &mut ChaCha8Rng, parent: &Arc<LieAlgebraSpec>, grade: usize) -> Form {
    let blades = grade_indices(parent.dim(), grade);
    let parts: Vec<(Vec<usize>, f64)> = blades
        .into_iter()
        .map(|ix| (ix, rng.random_range(-1.0..1.0)))
        .collect();
    let borrowed: Vec<(&[usize], f64)> = parts.iter().map(|(ix, v)| (ix.as_slice(), *v)).collect();
    Form::from_components(parent, grade, &borrowed).expect("grade and indices are in range")
}

fn random_multivector(
    rng: &mut ChaCha8Rng,
    parent: &Arc<LieAlgebraSpec>,
    grade: usize,
) -> Multivector {
    let blades = grade_indices(parent.dim(), grade);
    let parts: Vec<(Vec<usize>, f64)> = blades
        .into_iter()
        .map(|ix| (ix, rng.random_range(-1.0..1.0)))
        .collect();
    let borrowed: Vec<(&[usize], f64)> = parts.iter().map(|(ix, v)| (ix.as_slice(), *v)).collect();
    Multivector::from_components(parent, grade, &borrowed).expect("grade and indices are in range")
}

fn random_vector(rng: &mut ChaCha8Rng, parent: &Arc<LieAlgebraSpec>) -> (Vec<f64>, Multivector) {
    let coords: Vec<f64> = (0..parent.dim())
        .map(|_| rng.random_range(-1.0..1.0))
        .collect();
    let mv = Multivector::vector(parent, &coords).expect("coordinate count matches dim");
    (coords, mv)
}

fn exterior_lines(name: &str, parent: &Arc<LieAlgebraSpec>, seed: u64) -> Vec<CheckLine> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = parent.dim();
    let line = |invariant, residual| CheckLine {
        suite: name.to_string(),
        invariant,
        residual,
        tol: EXTERIOR_TOL,
    };

    let mut boundary_sq = 0.0f64;
    let mut differential_sq = 0.0f64;
    let mut cartan = 0.0f64;
    let mut lie_bracket = 0.0f64;
    let mut insertion_bracket = 0.0f64;
    let mut transpose = 0.0f64;
    let mut schouten = 0.0f64;

    for _ in 0..CASES {
        for g in 2..=n {
            let a = random_multivector(&mut rng, parent, g);
            boundary_sq = boundary_sq.max(a.koszul_boundary().koszul_boundary().norm_inf());
        }
        for g in 0..n.saturating_sub(1) {
            let a = random_form(&mut rng, parent, g);
            differential_sq =
                differential_sq.max(a.exterior_derivative().exterior_derivative().norm_inf());
        }
        let (u_coords, u) = random_vector(&mut rng, parent);
        let (v_coords, v) = random_vector(&mut rng, parent);
        let uv = Multivector::vector(parent, &parent.bracket(&u_coords, &v_coords).unwrap())
            .expect("bracket has full coordinate length");
        for g in 0..=n {
            let a = random_form(&mut rng, parent, g);
            let lie = a.lie_derivative(&v).unwrap();
            let split = a
                .exterior_derivative()
                .contract(&v)
                .unwrap()
                .add(&a.contract(&v).unwrap().exterior_derivative())
                .unwrap();
            cartan = cartan.max(lie.sub(&split).unwrap().norm_inf());

            let commuted = a
                .lie_derivative(&v)
                .unwrap()
                .lie_derivative(&u)
                .unwrap()
                .sub(&a.lie_derivative(&u).unwrap().lie_derivative(&v).unwrap())
                .unwrap();
            lie_bracket = lie_bracket.max(commuted.sub(&a.lie_derivative(&uv).unwrap()).unwrap().norm_inf());

            let inserted = a
                .contract(&u)
                .unwrap()
                .lie_derivative(&v)
                .unwrap()
                .sub(&a.lie_derivative(&v).unwrap().contract(&u).unwrap())
                .unwrap();
            let vu = Multivector::vector(parent, &parent.bracket(&v_coords, &u_coords).unwrap())
                .expect("bracket has full coordinate length");
            insertion_bracket =
                insertion_bracket.max(inserted.sub(&a.contract(&vu).unwrap()).unwrap().norm_inf());
        }
        for g in 1..=n {
            let a = random_multivector(&mut rng, parent, g);
            let b = random_form(&mut rng, parent, g - 1);
            let lhs = pairing(&a.koszul_boundary(), &b).unwrap();
            let rhs = pairing(&a, &b.exterior_derivative()).unwrap();
            transpose = transpose.max((lhs + rhs).abs());
        }
        for p in 1..=n {
            for q in 1..=n {
                let a = random_multivector(&mut rng, parent, p);
                let b = random_multivector(&mut rng, parent, q);
                let ab = a.schouten_bracket(&b).unwrap();
                let ba = b.schouten_bracket(&a).unwrap();
                let sign = if (p - 1) * (q - 1) % 2 == 0 { 1.0 } else { -1.0 };
                schouten = schouten.max(ab.add(&ba.scaled(sign)).unwrap().norm_inf());
            }
        }
    }

    vec![
        line("boundary_squared_zero", boundary_sq),
        line("differential_squared_zero", differential_sq),
        line("cartan_formula", cartan),
        line("lie_derivative_bracket", lie_bracket),
        line("insertion_bracket", insertion_bracket),
        line("boundary_transpose_pairing", transpose),
        line("schouten_antisymmetry", schouten),
    ]
}

fn clifford_lines(name: &str, parent: &Arc<LieAlgebraSpec>, seed: u64) -> Vec<CheckLine> {
    let n = parent.dim();
    let metrics = [
        ("euclidean", MetricSpec::euclidean(n)),
        ("lorentzian", MetricSpec::lorentzian(n)),
    ];
    let mut out = Vec::new();
    for (metric_name, metric) in metrics {
        let metric = Arc::new(metric);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ metric_name.len() as u64);
        let mut square = 0.0f64;
        let mut associativity = 0.0f64;
        let mut derivation = 0.0f64;

        let element = |rng: &mut ChaCha8Rng, top: usize| {
            let mut acc = CliffordElement::zero(parent, &metric).unwrap();
            for g in 0..=top.min(n) {
                let part = CliffordElement::from_form(&metric, &random_form(rng, parent, g)).unwrap();
                acc = acc.add(&part).unwrap();
            }
            acc
        };

        for _ in 0..CASES {
            let v = random_form(&mut rng, parent, 1);
            let coords: Vec<f64> = (0..n).map(|i| v.coeff(&[i])).collect();
            let mut gvv = 0.0;
            for (i, a) in coords.iter().enumerate() {
                for (j, b) in coords.iter().enumerate() {
                    gvv += metric.matrix()[(i, j)] * a * b;
                }
            }
            let cv = CliffordElement::from_form(&metric, &v).unwrap();
            let expected = CliffordElement::scalar(parent, &metric, gvv).unwrap();
            square = square.max(
                vee_product(&cv, &cv)
                    .unwrap()
                    .sub(&expected)
                    .unwrap()
                    .norm_inf(),
            );

            let a = element(&mut rng, 2);
            let b = element(&mut rng, 2);
            let c = element(&mut rng, 2);
            let left = vee_product(&vee_product(&a, &b).unwrap(), &c).unwrap();
            let right = vee_product(&a, &vee_product(&b, &c).unwrap()).unwrap();
            associativity = associativity.max(left.sub(&right).unwrap().norm_inf());

            let (_, u) = random_vector(&mut rng, parent);
            for p in 0..=n {
                let ap = CliffordElement::from_form(&metric, &random_form(&mut rng, parent, p))
                    .unwrap();
                let bq = element(&mut rng, 2);
                let whole = vee_product(&ap, &bq).unwrap().contract(&u).unwrap();
                let sign = if p % 2 == 0 { 1.0 } else { -1.0 };
                let parts = vee_product(&ap.contract(&u).unwrap(), &bq)
                    .unwrap()
                    .add(&vee_product(&ap, &bq.contract(&u).unwrap()).unwrap().scaled(sign))
                    .unwrap();
                derivation = derivation.max(whole.sub(&parts).unwrap().norm_inf());
            }
        }

        let line = |invariant, residual| CheckLine {
            suite: format!("{name}.{metric_name}"),
            invariant,
            residual,
            tol: CLIFFORD_TOL,
        };
        out.push(line("vee_square_scalar", square));
        out.push(line("vee_associativity", associativity));
        out.push(line("insertion_vee_derivation", derivation));
    }
    out
}

fn random_hermitian(rng: &mut ChaCha8Rng, n: usize) -> HermitianOperator {
    let m = DMatrix::from_fn(n, n, |_, _| {
        Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    });
    HermitianOperator::new((&m + m.adjoint()).map(|z| z * 0.5)).unwrap()
}

fn matrix_lines(seed: u64) -> Vec<CheckLine> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut derivation = 0.0f64;
    let mut associator = 0.0f64;
    let mut reconstruction = 0.0f64;
    let mut generator_gap = 0.0f64;

    for n in 2..=4usize {
        for _ in 0..CASES / 2 {
            let a = random_hermitian(&mut rng, n);
            let b = random_hermitian(&mut rng, n);
            let c = random_hermitian(&mut rng, n);

            let lhs = lie_product(&jordan_product(&a, &b).unwrap(), &c).unwrap();
            let rhs = jordan_product(&a, &lie_product(&b, &c).unwrap())
                .unwrap()
                .add(&jordan_product(&lie_product(&a, &c).unwrap(), &b).unwrap())
                .unwrap();
            derivation = derivation.max(lhs.sub(&rhs).unwrap().norm_inf());

            let assoc = jordan_product(&jordan_product(&a, &b).unwrap(), &c)
                .unwrap()
                .sub(&jordan_product(&a, &jordan_product(&b, &c).unwrap()).unwrap())
                .unwrap();
            let double = lie_product(&lie_product(&a, &c).unwrap(), &b).unwrap();
            associator = associator.max(assoc.sub(&double).unwrap().norm_inf());

            let rebuilt = jordan_product(&a, &b).unwrap().matrix()
                + lie_product(&a, &b)
                    .unwrap()
                    .matrix()
                    .map(|z| z * Complex64::new(0.0, 1.0));
            let gap = (rebuilt - a.matrix() * b.matrix()).map(|z| z.norm()).max();
            reconstruction = reconstruction.max(gap);
        }
    }

    let cfg = AlgebraConfig::default();
    for n in 2..=3usize {
        let basis = Arc::new(ObservableBasis::standard(n).unwrap());
        for _ in 0..CASES / 2 {
            let h = random_hermitian(&mut rng, n);
            let count = rng.random_range(1..=3usize);
            let collapse = (0..count)
                .map(|_| {
                    DMatrix::from_fn(n, n, |_, _| {
                        Complex64::new(rng.random_range(-0.7..0.7), rng.random_range(-0.7..0.7))
                    })
                })
                .collect();
            let spec = LindbladSpec::new(h, collapse).unwrap();
            let raw = DMatrix::from_fn(n, n, |_, _| {
                Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
            });
            let gram = &raw * raw.adjoint();
            let rho =
                DensityState::from_matrix(&basis, &gram.map(|z| z / gram.trace().re)).unwrap();
            let field = kl_vector_field(&spec, &rho, &cfg).unwrap();
            let generator = lindblad_generator(&spec, &rho).unwrap();
            let image = DualElement::from_operator(&basis, &generator).unwrap();
            generator_gap = generator_gap.max(field.sub(&image).unwrap().norm_inf());
        }
    }

    let line = |invariant, residual, tol| CheckLine {
        suite: "matrix".to_string(),
        invariant,
        residual,
        tol,
    };
    vec![
        line("lie_jordan_derivation", derivation, MATRIX_TOL),
        line("jordan_associator_double_bracket", associator, MATRIX_TOL),
        line("product_reconstruction", reconstruction, MATRIX_TOL),
        line("generator_field_sum", generator_gap, GENERATOR_TOL),
    ]
}

enum Suite {
    Algebra(String, Arc<LieAlgebraSpec>),
    Matrix,
}

pub fn run(args: &RunArgs) -> Result<Outcome, Failure> {
    let seed = args.seed.unwrap_or(0);

    let suites: Vec<Suite> = match read_config_text(args)? {
        Some(text) => {
            let parsed = LieAlgebraSpec::from_json(&text).map_err(classify)?;
            vec![Suite::Algebra("input".into(), Arc::new(parsed))]
        }
        None => vec![
            Suite::Algebra("so3".into(), Arc::new(LieAlgebraSpec::so3())),
            Suite::Algebra("heisenberg".into(), Arc::new(LieAlgebraSpec::heisenberg())),
            Suite::Algebra("abelian3".into(), Arc::new(LieAlgebraSpec::abelian(3))),
            Suite::Matrix,
        ],
    };

    let per_suite = run_indexed(suites.len(), |i| {
        let stream = seed ^ 0x9e37_79b9_7f4a_7c15u64.wrapping_mul(i as u64 + 1);
        match &suites[i] {
            Suite::Algebra(name, parent) => {
                let mut lines = exterior_lines(name, parent, stream);
                lines.extend(clifford_lines(name, parent, stream.rotate_left(17)));
                lines
            }
            Suite::Matrix => matrix_lines(stream),
        }
    });

    let mut table = Table::new(
        ["status", "suite", "invariant", "max_residual", "tolerance"]
            .map(String::from)
            .to_vec(),
    );
    let mut failed = 0usize;
    let mut total = 0usize;
    for line in per_suite.into_iter().flatten() {
        total += 1;
        if !line.passed() {
            failed += 1;
        }
        table.rows.push(vec![
            Cell::Text(if line.passed() { "pass" } else { "fail" }.into()),
            Cell::Text(line.suite),
            Cell::Text(line.invariant.into()),
            Cell::Float(line.residual),
            Cell::Float(line.tol),
        ]);
    }
    table.trailers.push(format!(
        "checked {total} invariants, failed {failed}, cases per invariant {CASES}"
    ));

    Ok(Outcome {
        text: table.render(args.format),
        failed_invariants: failed,
    })
}
