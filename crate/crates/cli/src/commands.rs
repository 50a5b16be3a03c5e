//! One function per subcommand. Each returns the full rendered document.

use rayon::prelude::*;
use serde::Serialize;

use ssot_core::cycles::{
    nonequilibrium_cycle, nonequilibrium_refrigerator, qubit_engine as run_qubit_engine,
    qubit_refrigerator, CycleReport, RefrigeratorReport,
};
use ssot_core::fluctuations::{fluctuation_cycle, BatteryGrid};
use ssot_core::manybody::{check_scan_fractions, scan_row, ScanRow};
use ssot_core::statefile::parse_state;
use ssot_core::thermo::{
    beta_order, equilibrium_free_energy, is_reversible, max_free_energy, min_free_energy,
    state_functionals, Bath, HamiltonianSpectrum, Support, REVERSIBILITY_TOLERANCE,
};

use crate::config::{CliError, Range};
use crate::format::{to_csv, to_json, Cell};
use crate::{
    CheckStateArgs, FluctSweepArgs, Format, ManybodyScanArgs, NoneqCycleArgs, OutputArgs,
    QubitEngineArgs, RefrigeratorArgs, SpectrumArgs,
};

const REPORT_COLUMNS: [&str; 7] = [
    "w_cycle",
    "q_hot",
    "q_cold",
    "eta",
    "eta_carnot",
    "q_irr_bc",
    "q_irr_da",
];

fn json<T: Serialize>(value: &T) -> Result<String, CliError> {
    to_json(value).map_err(|e| CliError::config("format", format!("cannot serialize output: {e}")))
}

fn format_of(output: &OutputArgs, default: Format) -> Format {
    output.format.unwrap_or(default)
}

/// Maps `f` over `items` in parallel and keeps input order. The first
/// failing item in input order decides the error.
fn par_map<T, U, F>(items: &[T], f: F) -> Result<Vec<U>, CliError>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> Result<U, CliError> + Sync + Send,
{
    let results: Vec<Result<U, CliError>> = items.par_iter().map(f).collect();
    results.into_iter().collect()
}

fn report_cells(r: &CycleReport) -> Vec<Cell> {
    [
        r.w_cycle,
        r.q_hot,
        r.q_cold,
        r.eta,
        r.eta_carnot,
        r.q_irr_bc,
        r.q_irr_da,
    ]
    .into_iter()
    .map(Cell::Num)
    .collect()
}

#[derive(Debug, Serialize)]
struct StateReport {
    temperature: f64,
    dimension: usize,
    energy: f64,
    entropy: f64,
    free_energy: f64,
    free_energy_equilibrium: f64,
    f_min: f64,
    f_max: f64,
    w_ext: f64,
    w_form: f64,
    reversible: bool,
    beta_order: Vec<usize>,
}

pub fn check_state(args: &CheckStateArgs) -> Result<String, CliError> {
    let path = &args.input;
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::config("in", format!("cannot read {}: {e}", path.display())))?;
    let (h, rho) = parse_state(&text)
        .map_err(|e| CliError::config("in", format!("{}: {e}", path.display())))?;
    let bath = Bath::new(args.temp).map_err(|e| CliError::config("temp", e.to_string()))?;
    let ctx = |e| CliError::domain(format!("check-state at T={}", args.temp), e);

    let f = state_functionals(&rho, &h, bath).map_err(ctx)?;
    let f_eq = equilibrium_free_energy(&h, bath);
    let f_min = min_free_energy(&rho, &h, bath).map_err(ctx)?;
    let f_max = max_free_energy(&rho, &h, bath).map_err(ctx)?;
    let report = StateReport {
        temperature: args.temp,
        dimension: h.dimension(),
        energy: f.energy,
        entropy: f.entropy,
        free_energy: f.free_energy,
        free_energy_equilibrium: f_eq,
        f_min,
        f_max,
        w_ext: f_min - f_eq,
        w_form: f_max - f_eq,
        reversible: is_reversible(&rho, &h, bath, REVERSIBILITY_TOLERANCE).map_err(ctx)?,
        beta_order: beta_order(&rho, &h, bath).map_err(ctx)?,
    };

    match format_of(&args.output, Format::Json) {
        Format::Json => json(&report),
        Format::Csv => {
            let order: Vec<String> = report.beta_order.iter().map(usize::to_string).collect();
            Ok(to_csv(
                &[
                    "temperature",
                    "dimension",
                    "energy",
                    "entropy",
                    "free_energy",
                    "free_energy_equilibrium",
                    "f_min",
                    "f_max",
                    "w_ext",
                    "w_form",
                    "reversible",
                    "beta_order",
                ],
                &[vec![
                    Cell::Num(report.temperature),
                    Cell::Int(report.dimension as u64),
                    Cell::Num(report.energy),
                    Cell::Num(report.entropy),
                    Cell::Num(report.free_energy),
                    Cell::Num(report.free_energy_equilibrium),
                    Cell::Num(report.f_min),
                    Cell::Num(report.f_max),
                    Cell::Num(report.w_ext),
                    Cell::Num(report.w_form),
                    Cell::Text(report.reversible.to_string()),
                    Cell::Text(order.join(" ")),
                ]],
            ))
        }
    }
}

#[derive(Debug, Serialize)]
struct EnginePoint {
    w1: f64,
    w2: f64,
    t_hot: f64,
    t_cold: f64,
    report: CycleReport,
}

fn grid4(a: &Range, b: &Range, c: &Range, d: &Range) -> Vec<[f64; 4]> {
    let mut out = Vec::with_capacity(a.count * b.count * c.count * d.count);
    for &x in &a.values() {
        for &y in &b.values() {
            for &z in &c.values() {
                for &w in &d.values() {
                    out.push([x, y, z, w]);
                }
            }
        }
    }
    out
}

pub fn qubit_engine(args: &QubitEngineArgs) -> Result<String, CliError> {
    let points = grid4(&args.w1, &args.w2, &args.thot, &args.tcold);
    let results = par_map(&points, |&[w1, w2, t_hot, t_cold]| {
        run_qubit_engine(w1, w2, t_hot, t_cold)
            .map(|report| EnginePoint {
                w1,
                w2,
                t_hot,
                t_cold,
                report,
            })
            .map_err(|e| {
                CliError::domain(
                    format!("qubit-engine at w1={w1}, w2={w2}, thot={t_hot}, tcold={t_cold}"),
                    e,
                )
            })
    })?;
    let single = points.len() == 1;

    match format_of(
        &args.output,
        if single { Format::Json } else { Format::Csv },
    ) {
        Format::Json if single => json(&results[0].report),
        Format::Json => json(&results),
        Format::Csv => {
            let mut header = vec!["w1", "w2", "t_hot", "t_cold"];
            header.extend(REPORT_COLUMNS);
            let rows: Vec<Vec<Cell>> = results
                .iter()
                .map(|p| {
                    let mut row = vec![
                        Cell::Num(p.w1),
                        Cell::Num(p.w2),
                        Cell::Num(p.t_hot),
                        Cell::Num(p.t_cold),
                    ];
                    row.extend(report_cells(&p.report));
                    row
                })
                .collect();
            Ok(to_csv(&header, &rows))
        }
    }
}

fn spectrum_and_supports(
    args: &SpectrumArgs,
) -> Result<(HamiltonianSpectrum, Support, Support), CliError> {
    let energies = args
        .energies
        .as_ref()
        .ok_or_else(|| CliError::config("energies", "required"))?;
    let degeneracies = args
        .degeneracies
        .clone()
        .unwrap_or_else(|| vec![1; energies.len()]);
    if degeneracies.len() != energies.len() {
        return Err(CliError::config(
            "degeneracies",
            format!(
                "{} degeneracies for {} energies",
                degeneracies.len(),
                energies.len()
            ),
        ));
    }
    let h = HamiltonianSpectrum::new(energies.iter().copied().zip(degeneracies))
        .map_err(|e| CliError::config("energies", e.to_string()))?;
    let u = args
        .u
        .as_ref()
        .ok_or_else(|| CliError::config("u", "required"))?;
    let u = Support::from_levels(&h, u).map_err(|e| CliError::config("u", e.to_string()))?;
    let v = match &args.v {
        Some(v) => Support::from_levels(&h, v).map_err(|e| CliError::config("v", e.to_string()))?,
        None => Support::full(&h),
    };
    Ok((h, u, v))
}

fn single_report(report: &CycleReport, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => json(report),
        Format::Csv => Ok(to_csv(&REPORT_COLUMNS, &[report_cells(report)])),
    }
}

pub fn noneq_cycle(args: &NoneqCycleArgs) -> Result<String, CliError> {
    let (h, u, v) = spectrum_and_supports(&args.spectrum)?;
    let report = nonequilibrium_cycle(&h, &u, &v, args.thot, args.tcold).map_err(|e| {
        CliError::domain(
            format!("noneq-cycle at thot={}, tcold={}", args.thot, args.tcold),
            e,
        )
    })?;
    single_report(&report, format_of(&args.output, Format::Json))
}

#[derive(Debug, Serialize)]
struct FluctRow {
    delta_w: f64,
    w_bc_avg: f64,
    w_da_avg: f64,
    eta: f64,
    eta_carnot: f64,
}

pub fn fluct_sweep(args: &FluctSweepArgs) -> Result<String, CliError> {
    let grid = BatteryGrid::new(args.w_min, args.w_max, args.levels)
        .map_err(|e| CliError::config("levels", format!("battery grid: {e}")))?;
    let deltas = args.delta_w.values();
    if let Some(d) = deltas.iter().find(|d| **d < 0.0) {
        return Err(CliError::config(
            "delta-w",
            format!("fluctuation bound {d} is negative"),
        ));
    }
    let rows = par_map(&deltas, |&dw| {
        fluctuation_cycle(args.w1, args.w2, args.thot, args.tcold, dw, &grid)
            .map(|r| FluctRow {
                delta_w: dw,
                w_bc_avg: r.w_bc.mean,
                w_da_avg: r.w_da.mean,
                eta: r.eta,
                eta_carnot: r.eta_carnot,
            })
            .map_err(|e| {
                CliError::domain(
                    format!(
                        "fluct-sweep at delta_w={dw}, w1={}, w2={}, thot={}, tcold={}",
                        args.w1, args.w2, args.thot, args.tcold
                    ),
                    e,
                )
            })
    })?;

    match format_of(&args.output, Format::Csv) {
        Format::Json => json(&rows),
        Format::Csv => Ok(to_csv(
            &["delta_w", "w_bc_avg", "w_da_avg", "eta", "eta_carnot"],
            &rows
                .iter()
                .map(|r| {
                    [r.delta_w, r.w_bc_avg, r.w_da_avg, r.eta, r.eta_carnot]
                        .into_iter()
                        .map(Cell::Num)
                        .collect()
                })
                .collect::<Vec<_>>(),
        )),
    }
}

pub fn manybody_scan(args: &ManybodyScanArgs) -> Result<String, CliError> {
    if let Some(n) = args.sizes.iter().find(|n| **n < 2) {
        return Err(CliError::config(
            "n",
            format!("register size {n} is below 2"),
        ));
    }
    check_scan_fractions(args.q, args.r, args.omega, args.thot, args.tcold)
        .map_err(|e| CliError::config("q", e.to_string()))?;
    let rows: Vec<ScanRow> = par_map(&args.sizes, |&n| {
        scan_row(n, args.q, args.r, args.omega, args.thot, args.tcold)
            .map_err(|e| CliError::domain(format!("manybody-scan at n={n}"), e))
    })?;

    match format_of(&args.output, Format::Csv) {
        Format::Json => json(&rows),
        Format::Csv => Ok(to_csv(
            &[
                "n",
                "k",
                "l",
                "eta",
                "eta_carnot",
                "w_per_particle",
                "corr_per_particle",
            ],
            &rows
                .iter()
                .map(|r| {
                    vec![
                        Cell::Int(r.n),
                        Cell::Int(r.k),
                        Cell::Int(r.l),
                        Cell::Num(r.eta),
                        Cell::Num(r.eta_carnot),
                        Cell::Num(r.w_per_particle),
                        Cell::Num(r.corr_per_particle),
                    ]
                })
                .collect::<Vec<_>>(),
        )),
    }
}

pub fn refrigerator(args: &RefrigeratorArgs) -> Result<String, CliError> {
    let ctx = |e| {
        CliError::domain(
            format!("refrigerator at thot={}, tcold={}", args.thot, args.tcold),
            e,
        )
    };
    let report: RefrigeratorReport = match (args.w1, args.w2, &args.spectrum.energies) {
        (Some(w1), Some(w2), None) => {
            qubit_refrigerator(w1, w2, args.thot, args.tcold).map_err(ctx)?
        }
        (None, None, Some(_)) => {
            let (h, u, v) = spectrum_and_supports(&args.spectrum)?;
            nonequilibrium_refrigerator(&h, &u, &v, args.thot, args.tcold).map_err(ctx)?
        }
        (_, _, Some(_)) => {
            return Err(CliError::config(
                "energies",
                "cannot be combined with --w1/--w2",
            ))
        }
        (None, _, None) => {
            return Err(CliError::config(
                "w1",
                "required (or give --energies and --u)",
            ))
        }
        (Some(_), None, None) => return Err(CliError::config("w2", "required together with --w1")),
    };
    match format_of(&args.output, Format::Json) {
        Format::Json => json(&report),
        Format::Csv => Ok(to_csv(
            &[
                "w_input",
                "q_cold_extracted",
                "q_hot_dumped",
                "cop",
                "cop_carnot",
            ],
            &[[
                report.w_input,
                report.q_cold_extracted,
                report.q_hot_dumped,
                report.cop,
                report.cop_carnot,
            ]
            .into_iter()
            .map(Cell::Num)
            .collect()],
        )),
    }
}
