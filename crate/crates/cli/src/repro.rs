use anyhow::Result;
use serde::Serialize;

use sepcrit::catalog::{family, published_witness};
use sepcrit::criteria::CriterionId;
use sepcrit::matcore::hermitian_eigenvalues;
use sepcrit::scan::{threshold_for, DEFAULT_GRID, DEFAULT_TOL};

use crate::Format;

#[derive(Debug, Serialize)]
struct Item {
    id: &'static str,
    what: &'static str,
    value: f64,
    target: f64,
    tol: f64,
    pass: bool,
}

impl Item {
    fn new(id: &'static str, what: &'static str, value: f64, target: f64, tol: f64) -> Self {
        Self {
            id,
            what,
            value,
            target,
            tol,
            pass: (value - target).abs() <= tol,
        }
    }
}

fn found(fam: &str, id: CriterionId) -> Result<f64> {
    let fam = family(fam).expect("built-in family");
    let r = threshold_for(&fam, id, DEFAULT_GRID, DEFAULT_TOL)?;
    Ok(r.x_star.unwrap_or(f64::NAN))
}

/// Smallest eigenvalue of either partial transpose over a 101-point grid.
fn tiles_ppt_floor() -> Result<f64> {
    let fam = family("tiles-noise").expect("built-in family");
    let mut worst = f64::INFINITY;
    for k in 0..=100 {
        let rho = fam.at(k as f64 / 100.0)?;
        for party in 0..2 {
            worst = worst.min(hermitian_eigenvalues(&rho.partial_transpose(party)?)[0]);
        }
    }
    Ok(worst)
}

pub fn run(format: Format) -> Result<u8> {
    let a2 = found("tiles-noise", CriterionId::Cm)?;
    let a3 = found("tiles-noise", CriterionId::WitnessM)?;
    let a4 = found("tiles-noise", CriterionId::AugmentedCm)?;
    let a5 = found("chessboard-noise", CriterionId::AugmentedGcm)?;
    let floor = tiles_ppt_floor()?;
    let ordered = a4 < a3 && a3 < a2;
    let items = vec![
        Item::new(
            "A1",
            "sigma_max of witness M",
            published_witness().sigma_max(),
            1.036,
            1e-3,
        ),
        Item::new("A2", "tiles-noise / cm threshold", a2, 0.9493, 5e-4),
        Item::new("A3", "tiles-noise / witness-m threshold", a3, 0.94, 5e-3),
        Item::new(
            "A4",
            "tiles-noise / augmented-cm threshold",
            a4,
            0.89254,
            5e-4,
        ),
        Item::new(
            "A5",
            "chessboard-noise / augmented-gcm threshold",
            a5,
            0.83265,
            5e-4,
        ),
        Item {
            id: "A6",
            what: "tiles-noise PPT on 101 points (min eigenvalue)",
            value: floor,
            target: 0.0,
            tol: 1e-9,
            pass: floor >= -1e-9,
        },
        Item {
            id: "A8",
            what: "ordering A4 < A3 < A2",
            value: f64::from(u8::from(ordered)),
            target: 1.0,
            tol: 0.0,
            pass: ordered,
        },
    ];
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&items)?),
        Format::Human => {
            for it in &items {
                let tag = if it.pass { "PASS" } else { "FAIL" };
                println!(
                    "{} {tag} {}: {:.6} (target {} +- {:e})",
                    it.id, it.what, it.value, it.target, it.tol
                );
            }
        }
    }
    Ok(if items.iter().all(|it| it.pass) { 0 } else { 1 })
}
