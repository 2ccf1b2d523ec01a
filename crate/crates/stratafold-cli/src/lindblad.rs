//! The trajectory subcommand: load a generator spec and an initial state,
//! integrate, and tabulate one row per sample.

use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Deserialize;

use stratafold::qgeom::{integrate, DensityState, LindbladSpec, ObservableBasis};

use crate::config::{classify, config_error, read_config_text, Failure, Outcome, RunArgs};
use crate::report::{Cell, Table};

#[derive(Deserialize)]
struct Extras {
    #[serde(default)]
    t_max: Option<f64>,
    #[serde(default)]
    dt: Option<f64>,
    #[serde(default)]
    initial: Option<Initial>,
}

#[derive(Deserialize)]
struct Initial {
    #[serde(default)]
    coords: Option<Vec<f64>>,
    #[serde(default)]
    rho: Option<Vec<Vec<[f64; 2]>>>,
}

fn dense_from_rows(n: usize, rows: &[Vec<[f64; 2]>]) -> Result<DMatrix<Complex64>, Failure> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(config_error(format!("initial rho must be {n}x{n}")));
    }
    Ok(DMatrix::from_fn(n, n, |r, c| {
        Complex64::new(rows[r][c][0], rows[r][c][1])
    }))
}

fn initial_state(
    basis: &Arc<ObservableBasis>,
    initial: Option<Initial>,
) -> Result<DensityState, Failure> {
    match initial {
        None => DensityState::maximally_mixed(basis).map_err(classify),
        Some(Initial {
            coords: Some(_),
            rho: Some(_),
        }) => Err(config_error("initial state: give coords or rho, not both")),
        Some(Initial {
            coords: Some(x), ..
        }) => DensityState::from_coordinates(basis, x).map_err(classify),
        Some(Initial { rho: Some(rows), .. }) => {
            let m = dense_from_rows(basis.dim(), &rows)?;
            DensityState::from_matrix(basis, &m).map_err(classify)
        }
        Some(Initial {
            coords: None,
            rho: None,
        }) => Err(config_error("initial state: give coords or rho")),
    }
}

pub fn run(args: &RunArgs) -> Result<Outcome, Failure> {
    let text = read_config_text(args)?
        .ok_or_else(|| config_error("lindblad needs --config pointing at a generator spec"))?;
    let spec = LindbladSpec::from_json(&text).map_err(classify)?;
    let extras: Extras =
        serde_json::from_str(&text).map_err(|e| config_error(format!("config: {e}")))?;

    let t_max = args.t_max.or(extras.t_max).unwrap_or(1.0);
    let dt = args.dt.or(extras.dt).unwrap_or(1e-3);

    let basis = Arc::new(ObservableBasis::standard(spec.dim()).map_err(classify)?);
    let rho0 = initial_state(&basis, extras.initial)?;

    let path = integrate(&spec, &rho0, t_max, dt).map_err(classify)?;

    let mut columns = vec!["tau".to_string()];
    for mu in 1..basis.size() {
        columns.push(format!("x_{mu}"));
    }
    columns.push("purity".into());
    columns.push("min_eig".into());
    columns.push("rank".into());

    let mut table = Table::new(columns);
    for sample in &path {
        let state = &sample.state;
        let mut row = vec![Cell::Float(sample.tau)];
        for &x in &state.coordinates()[1..] {
            row.push(Cell::Float(x));
        }
        row.push(Cell::Float(state.purity()));
        row.push(Cell::Float(state.min_eigenvalue()));
        row.push(Cell::Int(state.rank() as i64));
        table.rows.push(row);
    }

    Ok(Outcome {
        text: table.render(args.format),
        failed_invariants: 0,
    })
}
