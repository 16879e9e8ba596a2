use std::collections::HashMap;
use std::path::{Path, PathBuf};

use kickwalk::analytic::{analytic_distribution, coefficient_rows, coefficients_closed_form};
use kickwalk::ensemble::ensemble_over_betas;
use kickwalk::{
    central_fraction, compare_walks, fit_power_law, make_lattice, mean_energy, mean_energy_of_totals, ratchet_state,
    run_walk, sample_betas, side_peak_mass, talbot_time, History, Kick, PowerLawFit, Spin,
};
use serde::Serialize;

use crate::config::{RunConfig, SweepAxis, SweepSpec, VERSION};
use crate::error::{CliError, CliResult};
use crate::io::{self, float, LabelledMatrix, PlotTsv};

/// Largest accepted `|1 - sum_n P(n, j)|` in an emitted history.
pub const NORM_TOLERANCE: f64 = 1e-9;
/// Largest accepted analytic-versus-numeric deviation in `analytic`.
pub const ANALYTIC_TOLERANCE: f64 = 1e-6;
/// Half-width of the central window reported by sweeps.
pub const CENTRAL_HALFWIDTH: u64 = 2;

fn check_normalization(history: &History) -> CliResult<()> {
    for j in 0..=history.steps() {
        let drift = (history.norm(j) - 1.0).abs();
        if !(drift <= NORM_TOLERANCE) {
            return Err(CliError::SelfCheck(format!("step {j}: total probability off by {drift:e}")));
        }
    }
    Ok(())
}

/// Threshold of the side-peak mass: half the ballistic front `j k`.
pub fn side_peak_threshold(steps: usize, k: f64) -> u64 {
    (steps as f64 * k / 2.0).ceil() as u64
}

/// Runs the configured (possibly ensemble-averaged) walk and writes its
/// artifacts into `out`.
pub fn simulate(config: &RunConfig, out: &Path, workers: usize) -> CliResult<History> {
    let plan = config.plan()?;
    let lattice = make_lattice(plan.steps, plan.params.k(), &plan.spec)?;
    let initial = ratchet_state(&plan.spec, &lattice, Spin::Two)?;
    let betas = sample_betas(&plan.ensemble);
    let history = ensemble_over_betas(&plan.protocol, &initial, plan.steps, &plan.params, &betas, workers)?;
    check_normalization(&history)?;

    io::create_dir(out)?;
    io::write_history(out, &history)?;
    let energy = mean_energy(&history);
    io::write_csv(
        &out.join("energy.csv"),
        &["j".into(), "E".into()],
        energy.values().iter().enumerate().map(|(j, &e)| [j.to_string(), float(e)]),
    )?;
    if !plan.ensemble.is_degenerate() {
        io::write_csv(
            &out.join("betas.csv"),
            &["index".into(), "beta".into()],
            betas.iter().enumerate().map(|(i, &b)| [i.to_string(), float(b)]),
        )?;
    }

    let mut plot = PlotTsv::default();
    let momenta: Vec<i64> = lattice.momenta().collect();
    plot.block(
        "P_total(n, j)",
        &["n", "j", "P"],
        (0..=history.steps()).flat_map(|j| {
            let p = history.total(j);
            momenta.iter().zip(p).map(move |(n, v)| [n.to_string(), j.to_string(), float(*v)])
        }),
    );
    plot.block(
        "E(j)",
        &["j", "E"],
        energy.values().iter().enumerate().map(|(j, &e)| [j.to_string(), float(e)]),
    );
    io::write_text(&out.join("plot.tsv"), &plot.into_string())?;
    io::write_json(&out.join("manifest.json"), &config.manifest("simulate"))?;
    Ok(history)
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalyticCheck {
    pub j: usize,
    pub k: f64,
    pub classes: Vec<i64>,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

/// Closed-form distribution after `config.steps` steps of the resonant
/// Hadamard-executed walk, checked against the simulation.
pub fn analytic(config: &RunConfig, out: &Path) -> CliResult<AnalyticCheck> {
    let j = config.steps;
    if j == 0 {
        return Err(CliError::config("steps", "the closed form needs j >= 1"));
    }
    if config.protocol != "swapped" {
        return Err(CliError::config("protocol", "the closed form covers only the `swapped` protocol"));
    }
    if config.tau != talbot_time::<f64>() {
        return Err(CliError::config("tau", "the closed form needs tau = 4 pi"));
    }
    if config.fwhm != 0.0 || config.thermal_fraction != 0.0 {
        return Err(CliError::config("fwhm", "the closed form needs beta = 0 (fwhm = 0, thermal_fraction = 0)"));
    }
    if config.light_shift {
        return Err(CliError::config("light_shift", "the closed form has no light shift"));
    }
    let plan = config.plan()?;
    let k = plan.params.k();
    let lattice = make_lattice(j, k, &plan.spec)?;
    let exact = analytic_distribution(j, k, &plan.spec, &lattice)?;
    let initial = ratchet_state(&plan.spec, &lattice, Spin::Two)?;
    let numeric = run_walk(&plan.protocol, &initial, j, &Kick::resonant(k)?, 0.0)?;
    let max_deviation = exact
        .iter()
        .zip(numeric.total(j))
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);

    io::create_dir(out)?;
    io::write_csv(
        &out.join("analytic.csv"),
        &["n".into(), "P_analytic".into(), "P_numeric".into()],
        lattice
            .momenta()
            .zip(exact.iter().zip(numeric.total(j)))
            .map(|(n, (a, b))| [n.to_string(), float(*a), float(*b)]),
    )?;
    let mut rows = Vec::new();
    for order in 0..j {
        for (n, l, a1, a2) in coefficient_rows(&coefficients_closed_form(order)?) {
            rows.push([n.to_string(), l.to_string(), a1, a2]);
        }
    }
    io::write_csv(
        &out.join("coefficients.csv"),
        &["N".into(), "l".into(), "a1".into(), "a2".into()],
        rows,
    )?;
    let check = AnalyticCheck {
        j,
        k,
        classes: config.classes.clone(),
        max_deviation,
        tolerance: ANALYTIC_TOLERANCE,
        passed: max_deviation <= ANALYTIC_TOLERANCE,
    };
    io::write_json(&out.join("check.json"), &check)?;
    io::write_json(&out.join("manifest.json"), &config.manifest("analytic"))?;
    if !check.passed {
        return Err(CliError::SelfCheck(format!(
            "analytic and numeric distributions differ by {max_deviation:e} (> {ANALYTIC_TOLERANCE:e})"
        )));
    }
    Ok(check)
}

fn axis_label(axis: SweepAxis, value: f64) -> String {
    format!("{}_{}", axis.name(), value)
}

fn cell_config(base: &RunConfig, axis: SweepAxis, value: f64) -> CliResult<RunConfig> {
    let mut cell = RunConfig {
        sweep: None,
        command: None,
        version: None,
        ..base.clone()
    };
    match axis {
        SweepAxis::S => {
            if !(value >= 1.0 && value.fract() == 0.0 && value <= 1e6) {
                return Err(CliError::config("values", format!("ratchet width must be a positive integer, got {value}")));
            }
            cell.classes = (0..value as i64).collect();
        }
        SweepAxis::K => cell.k = value,
        SweepAxis::Fwhm => cell.fwhm = value,
    }
    Ok(cell)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepCell {
    pub value: f64,
    pub directory: PathBuf,
    pub outcome: Result<(f64, f64, f64), String>,
}

/// One `simulate` per axis value in `out/<axis>_<value>`, plus `rollup.csv`.
pub fn sweep(base: &RunConfig, spec: &SweepSpec, out: &Path, workers: usize) -> CliResult<Vec<SweepCell>> {
    if spec.values.is_empty() {
        return Err(CliError::config("values", "sweep axis needs at least one value"));
    }
    let mut seen = std::collections::HashSet::new();
    for v in &spec.values {
        if !seen.insert(axis_label(spec.axis, *v)) {
            return Err(CliError::config("values", format!("duplicate sweep value {v}")));
        }
    }
    let cells: Vec<RunConfig> = spec
        .values
        .iter()
        .map(|&v| cell_config(base, spec.axis, v))
        .collect::<CliResult<_>>()?;

    io::create_dir(out)?;
    let mut results = Vec::new();
    let mut failed = Vec::new();
    let mut code = 0;
    for (cell, &value) in cells.iter().zip(&spec.values) {
        let directory = out.join(axis_label(spec.axis, value));
        let outcome = match simulate(cell, &directory, workers) {
            Ok(history) => {
                let j = history.steps();
                let p = history.total(j);
                Ok((
                    central_fraction(p, history.lattice(), CENTRAL_HALFWIDTH),
                    side_peak_mass(p, history.lattice(), side_peak_threshold(j, cell.k)),
                    mean_energy(&history).at(j),
                ))
            }
            Err(e) => {
                code = code.max(e.exit_code());
                failed.push(format!("{}: {e}", axis_label(spec.axis, value)));
                Err(e.to_string())
            }
        };
        results.push(SweepCell {
            value,
            directory,
            outcome,
        });
    }

    let header: Vec<String> = [
        "axis",
        "value",
        "status",
        "central_fraction",
        "side_peak_mass",
        "energy_final",
        "directory",
    ]
    .map(String::from)
    .to_vec();
    let rows = results.iter().map(|cell| {
        let dir = cell.directory.file_name().unwrap_or_default().to_string_lossy().into_owned();
        let (status, metrics) = match &cell.outcome {
            Ok((c, s, e)) => ("ok".to_string(), [float(*c), float(*s), float(*e)]),
            Err(msg) => (format!("error: {msg}"), [String::new(), String::new(), String::new()]),
        };
        let [c, s, e] = metrics;
        [spec.axis.name().to_string(), cell.value.to_string(), status, c, s, e, dir]
    });
    io::write_csv(&out.join("rollup.csv"), &header, rows)?;
    let manifest = RunConfig {
        sweep: Some(spec.clone()),
        ..base.manifest("sweep")
    };
    io::write_json(&out.join("manifest.json"), &manifest)?;
    if !failed.is_empty() {
        return Err(CliError::Sweep { failed, code });
    }
    Ok(results)
}

#[derive(Debug, Clone, Serialize)]
struct EnergyFitRecord<'a> {
    input: &'a Path,
    fit_range: (usize, usize),
    exponent: f64,
    stderr: f64,
    prefactor: f64,
    points: usize,
}

#[derive(Debug, Clone, Serialize)]
struct FileManifest<'a> {
    version: &'static str,
    command: &'static str,
    inputs: Vec<&'a Path>,
    #[serde(skip_serializing_if = "Option::is_none")]
    window: Option<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    a: Option<f64>,
}

/// Output stems: input file stems, with `_2`, `_3`, ... on repeats.
fn unique_stems(inputs: &[PathBuf]) -> Vec<String> {
    let mut counts: HashMap<String, usize> = HashMap::new();
    inputs
        .iter()
        .map(|p| {
            let stem = p.file_stem().unwrap_or_default().to_string_lossy().into_owned();
            let count = counts.entry(stem.clone()).or_insert(0);
            *count += 1;
            if *count == 1 {
                stem
            } else {
                format!("{stem}_{count}")
            }
        })
        .collect()
}

/// Energy series and power-law fits of history CSVs; `window` defaults to
/// `[2, j_max]`.
pub fn energy(inputs: &[PathBuf], window: Option<(usize, usize)>, out: &Path) -> CliResult<Vec<PowerLawFit>> {
    if inputs.is_empty() {
        return Err(CliError::config("inputs", "no history files given"));
    }
    let loaded: Vec<_> = inputs.iter().map(|p| io::read_history(p)).collect::<CliResult<_>>()?;
    let mut fits = Vec::new();
    let mut series_list = Vec::new();
    for (lattice, totals) in &loaded {
        let series = mean_energy_of_totals(totals, lattice);
        let range = window.unwrap_or((2, series.max_step()));
        fits.push(fit_power_law(&series, range)?);
        series_list.push(series);
    }
    io::create_dir(out)?;
    for (((input, stem), series), fit) in inputs.iter().zip(unique_stems(inputs)).zip(&series_list).zip(&fits) {
        io::write_csv(
            &out.join(format!("{stem}_energy.csv")),
            &["j".into(), "E".into()],
            series.values().iter().enumerate().map(|(j, &e)| [j.to_string(), float(e)]),
        )?;
        let record = EnergyFitRecord {
            input,
            fit_range: fit.fit_range,
            exponent: fit.exponent,
            stderr: fit.stderr,
            prefactor: fit.prefactor,
            points: fit.fit_range.1 - fit.fit_range.0 + 1,
        };
        io::write_json(&out.join(format!("{stem}_fit.json")), &record)?;
    }
    let manifest = FileManifest {
        version: VERSION,
        command: "energy",
        inputs: inputs.iter().map(PathBuf::as_path).collect(),
        window,
        a: None,
    };
    io::write_json(&out.join("manifest.json"), &manifest)?;
    Ok(fits)
}

#[derive(Debug, Clone, Serialize)]
pub struct ComparisonSummary {
    pub total_error: f64,
    pub evaluated: usize,
    pub skipped: usize,
    pub a: f64,
}

/// Pixelwise comparison of two labelled matrices (e.g. history CSVs).
pub fn compare(observed: &Path, predicted: &Path, a: f64, out: &Path) -> CliResult<ComparisonSummary> {
    let obs = io::read_matrix(observed)?;
    let pred = io::read_matrix(predicted)?;
    if obs.values.shape() != pred.values.shape() {
        return Err(CliError::config(
            "shape",
            format!("observed is {:?}, predicted is {:?}", obs.values.shape(), pred.values.shape()),
        ));
    }
    if obs.row_labels != pred.row_labels || obs.column_labels != pred.column_labels {
        return Err(CliError::config("shape", "row or column labels differ"));
    }
    let result = compare_walks(&obs.values, &pred.values, a)?;
    io::create_dir(out)?;
    let mut header = vec![obs.corner.clone()];
    header.extend(obs.column_labels.iter().cloned());
    let rows = obs.row_labels.iter().zip(result.pixels.rows()).map(|(label, row)| {
        std::iter::once(label.clone())
            .chain(row.iter().map(|d| d.map(float).unwrap_or_default()))
            .collect::<Vec<_>>()
    });
    io::write_csv(&out.join("pixels.csv"), &header, rows)?;
    let summary = ComparisonSummary {
        total_error: result.total_error,
        evaluated: result.evaluated,
        skipped: result.skipped,
        a,
    };
    io::write_json(&out.join("summary.json"), &summary)?;
    let manifest = FileManifest {
        version: VERSION,
        command: "compare",
        inputs: vec![observed, predicted],
        window: None,
        a: Some(a),
    };
    io::write_json(&out.join("manifest.json"), &manifest)?;
    Ok(summary)
}

/// Writes a labelled matrix from a history, for feeding `compare`.
pub fn history_matrix(history: &History) -> LabelledMatrix {
    LabelledMatrix {
        corner: "n".into(),
        row_labels: history.lattice().momenta().map(|n| n.to_string()).collect(),
        column_labels: (0..=history.steps()).map(|j| format!("j{j}")).collect(),
        values: history.to_matrix(),
    }
}
