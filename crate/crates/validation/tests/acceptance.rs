//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! Run with `cargo test -p kickwalk-validation --test acceptance`.

use std::f64::consts::{FRAC_PI_2, PI};
use std::path::Path;
use std::time::{Duration, Instant};

use kickwalk::analytic::{analytic_distribution, coefficients_closed_form, coefficients_recursion};
use kickwalk::ensemble::ensemble_over_betas;
use kickwalk::lattice::MomentumLattice;
use kickwalk::{
    apply_kick, bessel_j, central_fraction, compare_walks, ensemble_distribution, fit_power_law, make_lattice,
    mean_energy, quadrature_kick_oracle, ratchet_state, run_walk, sample_betas, w_gate, y_gate, Complex, History,
    Kick, Protocol, QuasiMomentumEnsemble, RatchetSpec, Spin, State, WalkProtocol,
};
use clap::Parser;
use kickwalk_cli::Cli;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 42;

struct Verdict {
    passed: bool,
    detail: String,
}

fn verdict(passed: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        passed,
        detail: detail.into(),
    }
}

fn ratchet(steps: usize, k: f64, s: usize) -> State {
    let spec = RatchetSpec::contiguous(s).unwrap();
    let lattice = make_lattice(steps, k, &spec).unwrap();
    ratchet_state(&spec, &lattice, Spin::Two).unwrap()
}

fn max_abs(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn l1(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum()
}

fn analytic_numeric_equivalence() -> Verdict {
    let start = Instant::now();
    let (k, spec) = (1.45, RatchetSpec::contiguous(2).unwrap());
    let psi = ratchet(25, k, 2);
    let history = run_walk(&Protocol::swapped(), &psi, 25, &Kick::resonant(k).unwrap(), 0.0).unwrap();
    let mut worst: f64 = 0.0;
    for j in [1, 2, 5, 10, 15, 25] {
        let exact = analytic_distribution(j, k, &spec, psi.lattice()).unwrap();
        worst = worst.max(max_abs(&exact, history.total(j)));
    }
    let elapsed = start.elapsed();
    verdict(
        worst < 1e-8 && elapsed < Duration::from_secs(10),
        format!("max |P_analytic - P_numeric| = {worst:.2e} (< 1e-8), {elapsed:.2?} (< 10 s)"),
    )
}

fn coefficient_oracle() -> Verdict {
    let start = Instant::now();
    let mismatches: Vec<usize> = (0..=30)
        .filter(|&n| coefficients_closed_form(n).unwrap() != coefficients_recursion(n).unwrap())
        .collect();
    let elapsed = start.elapsed();
    verdict(
        mismatches.is_empty() && elapsed < Duration::from_secs(5),
        format!("closed form == recursion for N <= 30 (mismatches {mismatches:?}), {elapsed:.2?} (< 5 s)"),
    )
}

fn kick_kernel() -> Verdict {
    let lattice = MomentumLattice::new(-30, 30).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut oracle_dev: f64 = 0.0;
    for case in 0..50 {
        let k = [0.5, 1.2, 1.45, 1.8][case % 4];
        let mut amps = || -> Vec<Complex<f64>> {
            lattice
                .momenta()
                .map(|n| {
                    if n.abs() <= 10 {
                        Complex::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
                    } else {
                        Complex::new(0.0, 0.0)
                    }
                })
                .collect()
        };
        let (a2, a1) = (amps(), amps());
        let psi = State::normalized(lattice, a2, a1).unwrap();
        let params = Kick::resonant(k).unwrap();
        let fast = apply_kick(&psi, &params).unwrap();
        let slow = quadrature_kick_oracle(&psi, &params, 4 * lattice.size()).unwrap();
        let pairs = fast.amps2().iter().zip(slow.amps2()).chain(fast.amps1().iter().zip(slow.amps1()));
        oracle_dev = pairs.fold(oracle_dev, |m, (x, y)| m.max((x - y).norm()));
    }
    let mut site_dev: f64 = 0.0;
    for k in [0.5, 1.2, 1.45, 1.8] {
        let mut a2 = vec![Complex::new(0.0, 0.0); lattice.size()];
        a2[lattice.index_of(0).unwrap()] = Complex::new(1.0, 0.0);
        let psi = State::from_amplitudes(lattice, a2, vec![Complex::new(0.0, 0.0); lattice.size()]).unwrap();
        let out = apply_kick(&psi, &Kick::resonant(k).unwrap()).unwrap();
        for m in lattice.momenta() {
            let expected = Complex::new(0.0, -1.0).powi(m.rem_euclid(4) as i32) * bessel_j(m, k);
            site_dev = site_dev.max((out.amp(Spin::Two, m) - expected).norm());
        }
    }
    verdict(
        oracle_dev < 1e-10 && site_dev < 1e-12,
        format!("kernel vs quadrature {oracle_dev:.2e} (< 1e-10); single site vs (-i)^m J_m(k) {site_dev:.2e} (< 1e-12)"),
    )
}

fn unitarity() -> Verdict {
    let k = 1.45;
    let psi = ratchet(30, k, 2);
    let params = Kick::resonant(k).unwrap();
    let protocols = [
        ("original", Protocol::original()),
        ("swapped", Protocol::swapped()),
        ("lightshift-raw", Protocol::lightshift_raw(PI).unwrap()),
    ];
    let mut drift: f64 = 0.0;
    for (_, protocol) in &protocols {
        for beta in [0.0, 0.0123, 0.5] {
            let h = run_walk(protocol, &psi, 30, &params, beta).unwrap();
            drift = (0..=30).fold(drift, |m, j| m.max((h.norm(j) - 1.0).abs()));
        }
    }
    let spec = RatchetSpec::contiguous(2).unwrap();
    let ensemble = QuasiMomentumEnsemble::new(0.025, 300, SEED, 0.125).unwrap();
    let mut ensemble_drift: f64 = 0.0;
    for (_, protocol) in &protocols {
        let h = ensemble_distribution(protocol, &spec, 30, &params, &ensemble, 4).unwrap();
        ensemble_drift = (0..=30).fold(ensemble_drift, |m, j| m.max((h.norm(j) - 1.0).abs()));
    }
    verdict(
        drift < 1e-10 && ensemble_drift < 1e-9,
        format!("single-walk norm drift {drift:.2e} (< 1e-10); ensemble sum P drift {ensemble_drift:.2e} (< 1e-9)"),
    )
}

fn coin_swap() -> Verdict {
    let k = 1.45;
    let psi = ratchet(20, k, 2);
    let params = Kick::resonant(k).unwrap();
    let wy = run_walk(&WalkProtocol::new(w_gate(), y_gate(), false), &psi, 20, &params, 0.0).unwrap();
    let yw = run_walk(&WalkProtocol::new(y_gate(), w_gate(), false), &psi, 20, &params, 0.0).unwrap();
    let dev = (0..=20).map(|j| max_abs(wy.total(j), yw.total(j))).fold(0.0, f64::max);
    verdict(dev < 1e-12, format!("(W,Y) vs (Y,W) max deviation {dev:.2e} (< 1e-12)"))
}

fn light_shift_exact() -> Verdict {
    let k = FRAC_PI_2;
    let psi = ratchet(20, k, 2);
    let params = Kick::resonant(k).unwrap();
    let raw = run_walk(&Protocol::lightshift_raw(PI).unwrap(), &psi, 20, &params, 0.0).unwrap();
    let hadamard = run_walk(&Protocol::swapped(), &psi, 20, &params, 0.0).unwrap();
    let dev = (0..=20).map(|j| max_abs(raw.total(j), hadamard.total(j))).fold(0.0, f64::max);
    verdict(dev < 1e-12, format!("k = pi/2: max deviation {dev:.2e} (< 1e-12)"))
}

fn light_shift_experimental() -> Verdict {
    let k = 1.45;
    let steps = 20;
    let spec = RatchetSpec::contiguous(2).unwrap();
    let lattice = make_lattice(steps, k, &spec).unwrap();
    let psi = ratchet_state(&spec, &lattice, Spin::Two).unwrap();
    let params = Kick::resonant(k).unwrap();
    let raw = Protocol::lightshift_raw(PI).unwrap();
    let mut worst = Vec::new();
    for fwhm in [0.0, 0.01, 0.025] {
        let betas = sample_betas(&QuasiMomentumEnsemble::new(fwhm, 1000, SEED, 0.0).unwrap());
        let a = ensemble_over_betas(&raw, &psi, steps, &params, &betas, 4).unwrap();
        let b = ensemble_over_betas(&Protocol::swapped(), &psi, steps, &params, &betas, 4).unwrap();
        let per_step = (0..=steps).map(|j| l1(a.total(j), b.total(j))).fold(0.0, f64::max);
        worst.push((fwhm, per_step));
    }
    let passed = worst.iter().all(|&(_, d)| d < 0.1);
    let listing: Vec<String> = worst.iter().map(|(f, d)| format!("fwhm {f}: {d:.3}")).collect();
    verdict(passed, format!("k = 1.45: max per-step L1 {} (each < 0.1)", listing.join(", ")))
}

fn central_peak() -> Verdict {
    let k = 1.45;
    let params = Kick::resonant(k).unwrap();
    let fractions: Vec<f64> = [2, 3, 5]
        .iter()
        .map(|&s| {
            let psi = ratchet(20, k, s);
            let h = run_walk(&Protocol::swapped(), &psi, 20, &params, 0.0).unwrap();
            central_fraction(h.total(20), h.lattice(), 2)
        })
        .collect();
    verdict(
        fractions[0] > fractions[1] && fractions[1] > fractions[2],
        format!("central fraction at j = 20 for S = 2, 3, 5: {fractions:.4?} (strictly decreasing)"),
    )
}

fn energy_exponents() -> Verdict {
    let start = Instant::now();
    let k = 1.45;
    let spec = RatchetSpec::contiguous(2).unwrap();
    let params = Kick::resonant(k).unwrap();
    let ensemble = QuasiMomentumEnsemble::new(0.025, 1000, SEED, 0.0).unwrap();
    let run = |protocol: &Protocol| -> History {
        ensemble_distribution(protocol, &spec, 15, &params, &ensemble, 4).unwrap()
    };
    let (gh, y) = (run(&Protocol::swapped()), run(&Protocol::original()));
    let (egh, ey) = (mean_energy(&gh), mean_energy(&y));
    let fit_gh = fit_power_law(&egh, (2, 15)).unwrap();
    let fit_y = fit_power_law(&ey, (2, 15)).unwrap();
    let elapsed = start.elapsed();
    let passed = (1.5..=1.9).contains(&fit_gh.exponent)
        && (1.1..=1.5).contains(&fit_y.exponent)
        && egh.at(15) > ey.at(15)
        && elapsed < Duration::from_secs(300);
    verdict(
        passed,
        format!(
            "exponent G_H {:.3} +- {:.3} (in [1.5, 1.9]), Y {:.3} +- {:.3} (in [1.1, 1.5]); E(15) {:.2} vs {:.2}; {elapsed:.2?}",
            fit_gh.exponent,
            fit_gh.stderr,
            fit_y.exponent,
            fit_y.stderr,
            egh.at(15),
            ey.at(15)
        ),
    )
}

fn comparison_metric() -> Verdict {
    let psi = ratchet(15, 1.45, 2);
    let h = run_walk(&Protocol::swapped(), &psi, 15, &Kick::resonant(1.45).unwrap(), 0.0).unwrap();
    let x = h.to_matrix();
    let same = compare_walks(&x, &x, 1.0).unwrap();
    let scaled = compare_walks(&(&x * 3.0), &x, 3.0).unwrap();
    verdict(
        same.total_error == 0.0 && scaled.total_error == 0.0,
        format!(
            "compare(X, X, 1) = {}, compare(3X, X, 3) = {} over {} pixels; published totals need the experimental matrix, not shipped",
            same.total_error, scaled.total_error, same.evaluated
        ),
    )
}

// same path as the binary: parse, then run
fn kickwalk(args: &[&str]) -> bool {
    Cli::try_parse_from(std::iter::once("kickwalk").chain(args.iter().copied()))
        .map(|cli| kickwalk_cli::run(cli).is_ok())
        .unwrap_or(false)
}

fn tree_bytes(root: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files = Vec::new();
    let mut stack = vec![root.to_path_buf()];
    while let Some(dir) = stack.pop() {
        for entry in std::fs::read_dir(&dir).unwrap() {
            let path = entry.unwrap().path();
            if path.is_dir() {
                stack.push(path);
            } else {
                let rel = path.strip_prefix(root).unwrap().to_string_lossy().into_owned();
                files.push((rel, std::fs::read(&path).unwrap()));
            }
        }
    }
    files.sort();
    files
}

fn determinism() -> Verdict {
    let tmp = tempfile::tempdir().unwrap();
    let dir = |name: &str| tmp.path().join(name).to_string_lossy().into_owned();
    let sim = |out: &str, workers: &str| {
        kickwalk(&[
            "simulate", "--out", out, "--workers", workers, "--protocol", "original", "--steps", "12", "--fwhm",
            "0.025", "--n_samples", "200", "--thermal_fraction", "0.125", "--seed", "7",
        ])
    };
    let sweep = |out: &str, workers: &str| {
        kickwalk(&[
            "sweep", "--out", out, "--workers", workers, "--axis", "fwhm", "--values", "0,0.01,0.025", "--steps",
            "10", "--n_samples", "100", "--seed", "7",
        ])
    };
    let ran = sim(&dir("s1"), "1") && sim(&dir("s4"), "4") && sim(&dir("s4b"), "4");
    let ran = ran && sweep(&dir("w1"), "1") && sweep(&dir("w4"), "4");
    let manifest = tmp.path().join("s1/manifest.json").to_string_lossy().into_owned();
    let ran = ran && kickwalk(&["simulate", "--config", &manifest, "--out", &dir("replay"), "--workers", "3"]);
    if !ran {
        return verdict(false, "a kickwalk invocation failed");
    }
    let t = |name: &str| tree_bytes(&tmp.path().join(name));
    let simulate_same = t("s1") == t("s4") && t("s4") == t("s4b");
    let sweep_same = t("w1") == t("w4");
    let closure = t("s1") == t("replay");
    verdict(
        simulate_same && sweep_same && closure,
        format!(
            "simulate workers 1/4/4 identical: {simulate_same}; sweep workers 1/4 identical: {sweep_same}; manifest replay identical: {closure}"
        ),
    )
}

type Criterion = (&'static str, fn() -> Verdict);

fn main() {
    let criteria: [Criterion; 11] = [
        ("1  analytic-numeric equivalence", analytic_numeric_equivalence),
        ("2  coefficient oracle", coefficient_oracle),
        ("3  kick kernel", kick_kernel),
        ("4  unitarity and normalization", unitarity),
        ("5  coin-swap equivalence", coin_swap),
        ("6a light-shift compensation at k = pi/2", light_shift_exact),
        ("6b light-shift protocols at k = 1.45", light_shift_experimental),
        ("7  central-peak suppression", central_peak),
        ("8  energy exponents", energy_exponents),
        ("9  comparison metric", comparison_metric),
        ("10 determinism and manifest closure", determinism),
    ];
    let mut failures = 0;
    for (name, check) in criteria {
        let v = check();
        if !v.passed {
            failures += 1;
        }
        println!("[{}] criterion {name}: {}", if v.passed { "PASS" } else { "FAIL" }, v.detail);
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
