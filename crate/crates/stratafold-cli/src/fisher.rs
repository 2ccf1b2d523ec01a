//! The simplex subcommand: each row is a probability vector, its sphere
//! embedding, and the worst metric-vs-embedding residual over a spanning
//! family of tangent pairs.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

use stratafold::statgeom::{pullback_residual, sqrt_embed, ProbabilityVector};

use crate::config::{classify, config_error, read_config_text, Failure, Outcome, RunArgs};
use crate::pool::run_indexed;
use crate::report::{Cell, Table};

#[derive(Deserialize, Default)]
struct Extras {
    #[serde(default)]
    p: Option<Vec<f64>>,
    #[serde(default)]
    points: Option<Vec<Vec<f64>>>,
    #[serde(default)]
    samples: Option<usize>,
    #[serde(default)]
    sites: Option<usize>,
}

/// Worst residual over all pairs of coordinate-difference tangents
/// e_i - e_j; these span the tangent space of the simplex.
fn difference_residual(p: &ProbabilityVector) -> Result<f64, stratafold::Error> {
    let n = p.values().len();
    let mut worst = 0.0f64;
    let mut u = vec![0.0; n];
    let mut v = vec![0.0; n];
    for i in 0..n {
        for j in (i + 1)..n {
            u.fill(0.0);
            u[i] = 1.0;
            u[j] = -1.0;
            for k in 0..n {
                for l in (k + 1)..n {
                    v.fill(0.0);
                    v[k] = 1.0;
                    v[l] = -1.0;
                    worst = worst.max(pullback_residual(p, &u, &v)?);
                }
            }
        }
    }
    Ok(worst)
}

fn sampled_interior(seed: u64, index: u64, n: usize) -> Vec<f64> {
    let stream = seed ^ 0x9e37_79b9_7f4a_7c15u64.wrapping_mul(index + 1);
    let mut rng = ChaCha8Rng::seed_from_u64(stream);
    let mut p: Vec<f64> = (0..n).map(|_| rng.random_range(0.05..1.0)).collect();
    let total: f64 = p.iter().sum();
    for v in p.iter_mut() {
        *v /= total;
    }
    p
}

pub fn run(args: &RunArgs) -> Result<Outcome, Failure> {
    let extras = match read_config_text(args)? {
        None => Extras::default(),
        Some(text) => {
            serde_json::from_str(&text).map_err(|e| config_error(format!("config: {e}")))?
        }
    };

    let mut raw_points: Vec<Vec<f64>> = Vec::new();
    if let Some(p) = extras.p {
        raw_points.push(p);
    }
    if let Some(points) = extras.points {
        raw_points.extend(points);
    }

    let sites = args
        .sites
        .or(extras.sites)
        .or_else(|| raw_points.first().map(Vec::len))
        .unwrap_or(3);
    if raw_points.is_empty() && extras.samples.unwrap_or(0) == 0 {
        raw_points.push(vec![1.0 / sites as f64; sites]);
    }
    if raw_points.iter().any(|p| p.len() != sites) {
        return Err(config_error(format!(
            "every point must have {sites} outcomes"
        )));
    }

    let seed = args.seed.unwrap_or(0);
    for index in 0..extras.samples.unwrap_or(0) {
        raw_points.push(sampled_interior(seed, index as u64, sites));
    }

    let points: Vec<ProbabilityVector> = raw_points
        .into_iter()
        .map(|p| ProbabilityVector::new(p).map_err(classify))
        .collect::<Result<_, _>>()?;

    let computed = run_indexed(points.len(), |i| -> Result<Vec<Cell>, stratafold::Error> {
        let p = &points[i];
        let x = sqrt_embed(p);
        let residual = difference_residual(p)?;
        let mut row: Vec<Cell> = p.values().iter().map(|&v| Cell::Float(v)).collect();
        row.extend(x.into_iter().map(Cell::Float));
        row.push(Cell::Float(residual));
        Ok(row)
    });

    let mut columns = Vec::new();
    for i in 1..=sites {
        columns.push(format!("p_{i}"));
    }
    for i in 1..=sites {
        columns.push(format!("x_{i}"));
    }
    columns.push("residual".into());

    let mut table = Table::new(columns);
    for row in computed {
        table.rows.push(row.map_err(classify)?);
    }

    Ok(Outcome {
        text: table.render(args.format),
        failed_invariants: 0,
    })
}
