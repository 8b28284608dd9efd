use anyhow::Result;
use serde::Serialize;
use serde_json::{json, Value};

use sepcrit::bloch::{augmented_tensor, correlation_tensor};
use sepcrit::catalog::{self, StateFamily, FAMILIES};
use sepcrit::criteria::{battery, ppt, CriterionId, CriterionReport};
use sepcrit::gellmann::GellMannBasis;
use sepcrit::matcore::{random_separable, ComplexMatrix, DensityMatrix};
use sepcrit::scan::{
    compare_table, rows_to_csv, threshold_for, TableRow, ThresholdResult, ThresholdStatus,
};
use sepcrit::tensor::RealTensor;
use sepcrit::Error;

use crate::{AnalyzeArgs, Format, ScanArgs};

const EXIT_NO_CROSSING: u8 = 3;

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn matrix_pairs(m: &ComplexMatrix) -> Vec<Vec<[f64; 2]>> {
    (0..m.nrows())
        .map(|i| {
            (0..m.ncols())
                .map(|j| [m[(i, j)].re, m[(i, j)].im])
                .collect()
        })
        .collect()
}

pub fn basis(d: usize, as_json: bool) -> Result<u8> {
    let basis = GellMannBasis::new(d)?;
    let labels = basis.labels();
    if as_json {
        let gens: Vec<Value> = basis
            .generators()
            .iter()
            .zip(&labels)
            .enumerate()
            .map(|(a, (g, label))| json!({ "index": a + 1, "label": label, "matrix": matrix_pairs(g) }))
            .collect();
        print_json(&json!({ "d": d, "generators": gens }))?;
        return Ok(0);
    }
    for (a, (g, label)) in basis.generators().iter().zip(&labels).enumerate() {
        println!("lambda_{} {:?}", a + 1, label);
        for i in 0..d {
            let row: Vec<String> = (0..d).map(|j| format!("{:>14.6}", g[(i, j)])).collect();
            println!("  {}", row.join(" "));
        }
    }
    Ok(0)
}

fn unknown(kind: &str, name: &str, valid: impl Iterator<Item = &'static str>) -> Error {
    let valid: Vec<_> = valid.collect();
    Error::InvalidArgument(format!(
        "unknown {kind} '{name}'; expected one of: {}",
        valid.join(", ")
    ))
}

fn catalog_entry(name: &str) -> Result<catalog::CatalogEntry, Error> {
    catalog::entry(name).ok_or_else(|| {
        unknown(
            "catalog state",
            name,
            catalog::ENTRIES.iter().map(|e| e.name),
        )
    })
}

fn state_family(name: &str) -> Result<StateFamily, Error> {
    catalog::family(name).ok_or_else(|| unknown("family", name, FAMILIES.iter().map(|f| f.name)))
}

pub fn catalog(
    list: bool,
    emit: Option<&str>,
    param: Option<f64>,
    out: Option<&str>,
) -> Result<u8> {
    if list {
        for e in catalog::ENTRIES {
            let param = e
                .param
                .map(|(p, v)| format!("{p}={v}"))
                .unwrap_or_else(|| "-".into());
            println!(
                "{:<18} {:<10} {:<8} {}",
                e.name,
                format!("{:?}", e.dims),
                param,
                e.description
            );
        }
        return Ok(0);
    }
    let (Some(name), Some(out)) = (emit, out) else {
        anyhow::bail!(Error::InvalidArgument(
            "catalog needs --list or --emit with --out".into()
        ));
    };
    let rho = catalog_entry(name)?.build(param)?;
    rho.save(out)?;
    Ok(0)
}

fn tensor_json(t: &RealTensor, mode_dump: bool) -> Result<Value> {
    let (kf, mode) = t.kf_norm();
    let mut v = json!({
        "shape": t.shape(),
        "entries": t.data(),
        "kf_norm": kf,
        "kf_mode": mode,
    });
    if mode_dump {
        let modes = (0..t.order())
            .map(|m| {
                let sv = t.singular_values_mode(m)?;
                Ok(json!({ "mode": m, "trace_norm": sv.iter().sum::<f64>(), "singular_values": sv }))
            })
            .collect::<Result<Vec<Value>, Error>>()?;
        v["modes"] = Value::Array(modes);
    }
    Ok(v)
}

pub fn tensor(path: &str, augmented: bool, mode_dump: bool) -> Result<u8> {
    let rho = DensityMatrix::load(path)?;
    let (kind, t) = if augmented {
        ("augmented", augmented_tensor(&rho).tensor)
    } else {
        ("correlation", correlation_tensor(&rho).tensor)
    };
    let mut v = tensor_json(&t, mode_dump)?;
    v["kind"] = json!(kind);
    v["dims"] = json!(rho.dims());
    print_json(&v)?;
    Ok(0)
}

fn parse_criteria(names: &[String]) -> Result<Vec<CriterionId>, Error> {
    names.iter().map(|n| n.trim().parse()).collect()
}

fn load_state(args: &AnalyzeArgs) -> Result<(Value, DensityMatrix)> {
    if let Some(name) = &args.catalog {
        let rho = catalog_entry(name)?.build(args.param)?;
        return Ok((json!({ "catalog": name, "param": args.param }), rho));
    }
    if let Some(path) = &args.state {
        return Ok((json!({ "state": path }), DensityMatrix::load(path)?));
    }
    if let Some(dims) = &args.random {
        let (rho, _) = random_separable(dims, args.terms, args.seed)?;
        return Ok((
            json!({ "random": { "dims": dims, "seed": args.seed, "terms": args.terms } }),
            rho,
        ));
    }
    anyhow::bail!(Error::InvalidArgument(
        "analyze needs one of --catalog, --state, --random".into()
    ))
}

fn run_criteria(rho: &DensityMatrix, ids: &[CriterionId]) -> Result<Vec<CriterionReport>, Error> {
    if let Some(bad) = ids.iter().find(|id| !id.applies_to(rho.dims())) {
        return Err(Error::InvalidArgument(format!(
            "criterion '{bad}' does not apply to dims {:?}",
            rho.dims()
        )));
    }
    let mut out = Vec::new();
    for &id in ids {
        if id == CriterionId::Ppt {
            out.extend(ppt(rho));
        } else {
            out.push(id.evaluate(rho)?);
        }
    }
    Ok(out)
}

pub fn analyze(args: &AnalyzeArgs) -> Result<u8> {
    let ids = args.criteria.as_deref().map(parse_criteria).transpose()?;
    let (source, rho) = load_state(args)?;
    let reports = match ids {
        Some(ids) => run_criteria(&rho, &ids)?,
        None => battery(&rho),
    };
    match args.format {
        Format::Json => {
            print_json(&json!({ "source": source, "dims": rho.dims(), "reports": reports }))?
        }
        Format::Human => {
            println!("dims {:?}", rho.dims());
            for r in &reports {
                println!(
                    "{:<16} lhs {:>12.8}  bound {:>12.8}  margin {:>+12.8}  {:?}",
                    r.criterion, r.lhs, r.bound, r.margin, r.verdict
                );
            }
        }
    }
    Ok(0)
}

fn describe(r: &ThresholdResult) -> String {
    match (r.status, r.x_star) {
        (ThresholdStatus::Found, Some(x)) => format!(
            "{} / {}: threshold {x:.7} +- {:.1e} ({} evaluations)",
            r.family, r.criterion, r.bracket, r.evaluations
        ),
        (status, _) => format!(
            "{} / {}: {status:?} ({} evaluations)",
            r.family, r.criterion, r.evaluations
        ),
    }
}

fn print_row(r: &TableRow) {
    match r.threshold {
        Some(x) => println!("{:<18} {:<18} {:?} {x:.7}", r.family, r.criterion, r.status),
        None => println!("{:<18} {:<18} {:?}", r.family, r.criterion, r.status),
    }
}

pub fn scan(args: &ScanArgs) -> Result<u8> {
    let no_crossing = if args.table {
        let rows = compare_table(&FAMILIES, &CriterionId::ALL, args.grid, args.tol)?;
        if args.csv {
            print!("{}", rows_to_csv(&rows)?);
        } else if args.json {
            print_json(&rows)?;
        } else {
            rows.iter().for_each(print_row);
        }
        rows.iter().any(|r| r.status == ThresholdStatus::NoCrossing)
    } else {
        let (Some(fam), Some(crit)) = (&args.family, &args.criterion) else {
            anyhow::bail!(Error::InvalidArgument(
                "scan needs --family and --criterion, or --table".into()
            ));
        };
        let id: CriterionId = crit.parse()?;
        let result = threshold_for(&state_family(fam)?, id, args.grid, args.tol)?;
        if args.csv {
            print!("{}", rows_to_csv(std::slice::from_ref(&result))?);
        } else if args.json {
            print_json(&result)?;
        } else {
            println!("{}", describe(&result));
        }
        result.status == ThresholdStatus::NoCrossing
    };
    Ok(if args.expect_crossing && no_crossing {
        EXIT_NO_CROSSING
    } else {
        0
    })
}
