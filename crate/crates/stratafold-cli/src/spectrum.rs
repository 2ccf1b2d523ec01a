//! The lattice spectrum subcommand: eigenvalues of the ring operator next
//! to the dispersion law, with the worst error as a trailer comment.

use serde::Deserialize;

use stratafold::dec::{dispersion_table, SimplicialRing};

use crate::config::{classify, config_error, read_config_text, Failure, Outcome, RunArgs};
use crate::report::{format_float, Cell, Table};

#[derive(Deserialize, Default)]
struct Extras {
    #[serde(default)]
    sites: Option<usize>,
    #[serde(default)]
    spacing: Option<f64>,
}

pub fn run(args: &RunArgs) -> Result<Outcome, Failure> {
    let extras = match read_config_text(args)? {
        None => Extras::default(),
        Some(text) => {
            serde_json::from_str(&text).map_err(|e| config_error(format!("config: {e}")))?
        }
    };
    let sites = args.sites.or(extras.sites).unwrap_or(8);
    let spacing = args.spacing.or(extras.spacing).unwrap_or(1.0);

    let ring = SimplicialRing::uniform(sites, spacing).map_err(classify)?;
    let rows = dispersion_table(&ring).map_err(classify)?;

    let mut table = Table::new(
        ["m", "k_m", "eig_numeric", "eig_analytic", "abs_error"]
            .map(String::from)
            .to_vec(),
    );
    let mut worst = 0.0f64;
    for row in &rows {
        worst = worst.max(row.abs_error);
        table.rows.push(vec![
            Cell::Int(row.mode as i64),
            Cell::Float(row.wavenumber),
            Cell::Float(row.eigenvalue_numeric),
            Cell::Float(row.eigenvalue_analytic),
            Cell::Float(row.abs_error),
        ]);
    }
    table
        .trailers
        .push(format!("max_abs_error {}", format_float(worst)));

    Ok(Outcome {
        text: table.render(args.format),
        failed_invariants: 0,
    })
}
