//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits with a
//! nonzero status if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use thermoprobe_core::dynamics::{
    optimal_short_time_ratio, optimize_protocol, qfi_transient, qfi_transient_closed_form_qubit, transient_scan,
    ultimate_rate, DissipationModel, Preparation, TransientSeries,
};
use thermoprobe_core::equilibrium::{
    hessian_certificate, optimal_gap, qfi_bures_oracle, qfi_equilibrium_scan, qfi_thermal, Series,
};
use thermoprobe_core::gaussian::{fidelity_gaussian, qfi_harmonic_transient, CovarianceMatrix};
use thermoprobe_core::numerics::{eigen_symmetric, log_space};
use thermoprobe_core::spectra::{EffectiveTwoLevelSpectrum, Spectrum};

type Check = Result<String, String>;

fn pass_if(ok: bool, detail: String) -> Check {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn within(limit: Duration, started: Instant) -> (bool, f64) {
    let elapsed = started.elapsed();
    (elapsed < limit, elapsed.as_secs_f64())
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn c1_oracle_equivalence() -> Check {
    let started = Instant::now();
    let mut rng = StdRng::seed_from_u64(0x7e57);
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let n = rng.gen_range(2..=6);
        let energies: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..5.0)).collect();
        let t = rng.gen_range(0.2..5.0);
        let s = Spectrum::new(energies).map_err(|e| e.to_string())?;
        let direct = qfi_thermal(&s.thermalize(t).map_err(|e| e.to_string())?).value;
        let oracle = qfi_bures_oracle(&s, t).map_err(|e| e.to_string())?.value;
        worst = worst.max(rel(oracle, direct));
    }
    let (fast, secs) = within(Duration::from_secs(5), started);
    pass_if(worst < 1e-5 && fast, format!("max rel err {worst:.2e} over 200 spectra (limit 1e-5), {secs:.2} s (limit 5 s)"))
}

fn c2_optimal_gap() -> Check {
    let started = Instant::now();
    let opt = optimal_gap(2, 1, 1.0).map_err(|e| e.to_string())?;
    let x = opt.x_star;
    let residual = x.exp() - (x + 2.0) / (x - 2.0);
    let (lo, hi, points) = (1e-3, 20.0, 100_000);
    let step = (hi - lo) / (points - 1) as f64;
    let mut best = (0.0, f64::NEG_INFINITY);
    for k in 0..points {
        let gap = lo + k as f64 * step;
        let v = Spectrum::new(vec![0.0, gap]).unwrap().thermalize(1.0).unwrap().energy_variance();
        if v > best.1 {
            best = (gap, v);
        }
    }
    let off = (best.0 - x).abs();
    let (fast, secs) = within(Duration::from_secs(1), started);
    pass_if(
        residual.abs() < 1e-10 && off <= step && fast,
        format!(
            "x* = {x:.15}, residual {residual:.1e} (limit 1e-10); grid argmax {:.6} off by {off:.1e} (step {step:.1e}); {secs:.3} s (limit 1 s)",
            best.0
        ),
    )
}

fn c3_degeneracy_ordering() -> Check {
    let t = 1.0;
    let peak = |n: usize, n0: usize| -> Result<(f64, f64), String> {
        let opt = optimal_gap(n, n0, t).map_err(|e| e.to_string())?;
        let v = EffectiveTwoLevelSpectrum::new(opt.gap, n, n0)
            .and_then(|s| s.expand().thermalize(t))
            .map_err(|e| e.to_string())?
            .energy_variance();
        Ok((opt.x_star, v))
    };
    let (mut worst, mut cases, mut ordered) = (0.0f64, 0, true);
    for n in 3..=10 {
        for n0 in 2..n {
            let (x_less, v_less) = peak(n, n0 - 1)?;
            let (x_more, v_more) = peak(n, n0)?;
            ordered &= v_less > v_more;
            worst = worst.max(((v_less - v_more) - t * t * (x_less * x_less - x_more * x_more) / 4.0).abs());
            cases += 1;
        }
    }
    pass_if(ordered && worst < 1e-9, format!("{cases} (N, N0) pairs, all strictly ordered: {ordered}; max identity error {worst:.1e} (limit 1e-9)"))
}

/// Compares the Jacobi spectrum of the assembled matrix against a candidate
/// closed-form list, and checks the single zero mode along (1, …, 1).
fn hessian_against(lambda2: impl Fn(f64, usize) -> f64) -> Result<(f64, bool), String> {
    let mut worst = 0.0f64;
    let mut zero_ok = true;
    for n in 2..=20 {
        let cert = hessian_certificate(n, 1.0).map_err(|e| e.to_string())?;
        let x = cert.x_star;
        let matrix = cert.coefficients.assemble(n);
        let eig = eigen_symmetric(&matrix).map_err(|e| e.to_string())?;
        let mut expected = vec![-(x - 2.0) / (2.0 * (n - 1) as f64); n - 2];
        expected.push(lambda2(x, n));
        expected.push(0.0);
        expected.sort_by(f64::total_cmp);
        for (a, b) in eig.values.iter().zip(&expected) {
            worst = worst.max((a - b).abs());
        }
        let zeros: Vec<usize> = (0..n).filter(|&k| eig.values[k].abs() < 1e-8).collect();
        zero_ok &= zeros.len() == 1 && {
            let v = &eig.vectors[zeros[0]];
            let align = v.iter().sum::<f64>().abs() / (n as f64).sqrt();
            (align - 1.0).abs() < 1e-8
        };
    }
    Ok((worst, zero_ok))
}

fn c4_hessian_printed() -> Check {
    let (worst, zero_ok) = hessian_against(|x, n| -(x * x - 4.0) / (8.0 * (n - 1) as f64))?;
    pass_if(
        worst < 1e-8 && zero_ok,
        format!(
            "N = 2..20 against printed lambda2 = -(x*^2-4)/(8(N-1)): max deviation {worst:.3e} (limit 1e-8); single zero mode along ones: {zero_ok}. \
             The assembled matrix has lambda2 = a - c = -N(x*^2-4)/(8(N-1)); the printed value is off by the factor N"
        ),
    )
}

fn c4_hessian_corrected() -> Check {
    let (worst, zero_ok) = hessian_against(|x, n| -(n as f64) * (x * x - 4.0) / (8.0 * (n - 1) as f64))?;
    pass_if(
        worst < 1e-8 && zero_ok,
        format!("N = 2..20 against lambda2 = -N(x*^2-4)/(8(N-1)): max deviation {worst:.1e} (limit 1e-8); single zero mode along ones: {zero_ok}"),
    )
}

fn c5_figure_one() -> Check {
    let ns = [2, 4, 6, 8, 10];
    let grid = log_space(0.05, 50.0, 4000);
    let scan = qfi_equilibrium_scan(&ns, &grid, 1.0).map_err(|e| e.to_string())?;
    let peaks: Vec<f64> = ns.iter().map(|&n| scan.peak(Series::Optimal { n }).unwrap().qfi).collect();
    let increasing = peaks.windows(2).all(|w| w[1] > w[0]);
    let w2 = scan.fwhm(Series::Optimal { n: 2 }).ok_or("N=2 curve has no FWHM in range")?;
    let w10 = scan.fwhm(Series::Optimal { n: 10 }).ok_or("N=10 curve has no FWHM in range")?;

    let harmonic: Vec<f64> = scan.rows_of(Series::Harmonic).map(|r| r.qfi).collect();
    let mut crossing = true;
    for &n in &ns[1..] {
        let curve: Vec<f64> = scan.rows_of(Series::Optimal { n }).map(|r| r.qfi).collect();
        let below = harmonic.iter().zip(&curve).any(|(h, c)| h < c);
        let above = harmonic.iter().zip(&curve).any(|(h, c)| h > c);
        crossing &= below && above;
    }
    // the two curves differ by the factor ((eˣ+1)/(eˣ−1))², which rounds to 1
    // beyond x ≈ 36; compare where the difference is representable
    let qubit_dominated = scan
        .rows_of(Series::Optimal { n: 2 })
        .zip(scan.rows_of(Series::Harmonic))
        .filter(|(q, _)| q.ratio < 30.0)
        .all(|(q, h)| h.qfi > q.qfi);
    pass_if(
        increasing && w10 < w2 && crossing && qubit_dominated,
        format!(
            "peaks {peaks:.4?} increasing: {increasing}; FWHM N=2 {w2:.4}, N=10 {w10:.4}; harmonic crosses N=4..10: {crossing}; \
             harmonic above N=2 at every x < 30: {qubit_dominated}"
        ),
    )
}

/// Transient QFI of a ground-state qubit as printed, with `(Δt/2τ)csch(x/2)`.
fn printed_transient(x: f64, dt: f64, tau: f64, t: f64) -> f64 {
    let e = x.exp();
    let u = (dt / tau).exp();
    let csch = 1.0 / (x / 2.0).sinh();
    let num = x * x * (e * (u - 1.0) + (1.0 + e) * (dt / (2.0 * tau)) * csch).powi(2);
    num / ((1.0 + e).powi(2) * (u - 1.0) * (1.0 + e * u) * t * t)
}

fn transient_pairs() -> Vec<(f64, f64)> {
    let xs = log_space(1.0, 8.0, 10);
    let ss = log_space(0.01, 10.0, 5);
    xs.iter().flat_map(|&x| ss.iter().map(move |&s| (x, s))).collect()
}

fn c6_against(closed: impl Fn(f64, f64, f64) -> f64) -> Result<(f64, usize, f64), String> {
    let started = Instant::now();
    let pairs = transient_pairs();
    let mut worst = 0.0f64;
    for &(x, s) in &pairs {
        let m = DissipationModel::new(x, 1.0, 1e-3).map_err(|e| e.to_string())?;
        let tau = m.relaxation_time();
        let num = qfi_transient(&Preparation::Ground, 2, &m, s * tau).map_err(|e| e.to_string())?.value;
        worst = worst.max(rel(num, closed(x, s * tau, tau)));
    }
    Ok((worst, pairs.len(), started.elapsed().as_secs_f64()))
}

fn c6_transient_printed() -> Check {
    let (worst, count, secs) = c6_against(|x, dt, tau| printed_transient(x, dt, tau, 1.0))?;
    pass_if(
        worst < 1e-5 && secs < 10.0,
        format!(
            "{count} (x, dt/tau) pairs against the printed closed form: max rel err {worst:.3e} (limit 1e-5), {secs:.2} s. \
             Differentiating the ground-state solution in T (tau included) gives (dt/tau)csch(x) in place of (dt/2tau)csch(x/2)"
        ),
    )
}

fn c6_transient_corrected() -> Check {
    let (worst, count, secs) =
        c6_against(|x, dt, tau| qfi_transient_closed_form_qubit(x, dt, tau, 1.0).map(|q| q.value).unwrap_or(f64::NAN))?;
    pass_if(
        worst < 1e-5 && secs < 10.0,
        format!("{count} (x, dt/tau) pairs against the csch(x) form: max rel err {worst:.1e} (limit 1e-5), {secs:.2} s (limit 10 s)"),
    )
}

fn c7_short_time_limit() -> Check {
    let x_tilde = optimal_short_time_ratio().map_err(|e| e.to_string())?.root;
    let mut worst = 0.0f64;
    for x in [1.0, 2.5, x_tilde, 7.0] {
        let m = DissipationModel::new(x, 1.0, 1e-3).map_err(|e| e.to_string())?;
        let dt = 1e-4 * m.relaxation_time();
        for n in [2, 4, 10] {
            let rate = qfi_transient(&Preparation::Ground, n, &m, dt).map_err(|e| e.to_string())?.value / dt;
            let limit = ultimate_rate(n, x, 1e-3, 1.0).map_err(|e| e.to_string())?;
            worst = worst.max(rel(rate, limit));
        }
    }
    pass_if(worst < 1e-3, format!("N in {{2,4,10}}, x in {{1, 2.5, x~, 7}}, dt = 1e-4 tau: max rel err {worst:.2e} (limit 1e-3)"))
}

fn c8_optimal_ratio() -> Check {
    let root = optimal_short_time_ratio().map_err(|e| e.to_string())?;
    let x = root.root;
    let (lo, step, points) = (4.8, 1e-7, 2_000_001);
    let mut argmaxes = Vec::new();
    for n in [2, 4, 10] {
        let mut best = (lo, f64::NEG_INFINITY);
        for k in 0..points {
            let xi = lo + k as f64 * step;
            let r = ultimate_rate(n, xi, 1e-3, 1.0).map_err(|e| e.to_string())?;
            if r > best.1 {
                best = (xi, r);
            }
        }
        argmaxes.push(best.0);
    }
    let off = argmaxes.iter().map(|a| (a - x).abs()).fold(0.0, f64::max);
    let spread = argmaxes.iter().map(|a| (a - argmaxes[0]).abs()).fold(0.0, f64::max);
    pass_if(
        (x - 4.885).abs() < 5e-3 && root.residual.abs() < 1e-12 && off < 1e-6 && spread < 1e-8,
        format!("x~ = {x:.12} (expected ~4.885); grid argmax over N = 2, 4, 10 off by {off:.1e} (limit 1e-6), spread across N {spread:.1e}"),
    )
}

fn c9_preparations() -> Check {
    let x = optimal_short_time_ratio().map_err(|e| e.to_string())?.root;
    let m = DissipationModel::new(x, 1.0, 1e-3).map_err(|e| e.to_string())?;
    let tau = m.relaxation_time();
    let grid = log_space(1e-3 * tau, 20.0 * tau, 200);
    let preps = [
        Preparation::Ground,
        Preparation::Thermal { temperature: 0.8 },
        Preparation::Thermal { temperature: 0.9 },
        Preparation::PlusState,
    ];
    let series: Vec<TransientSeries> = preps.iter().map(|&p| TransientSeries { preparation: p, levels: 2 }).collect();
    let rows = transient_scan(&series, &m, &grid).map_err(|e| e.to_string())?;
    let curve = |k: usize| &rows[k * grid.len()..(k + 1) * grid.len()];
    let ground = curve(0);
    let mut dominated = true;
    let mut tightest = f64::INFINITY;
    for k in 1..preps.len() {
        for (g, o) in ground.iter().zip(curve(k)) {
            dominated &= g.fisher_rate > o.fisher_rate;
            tightest = tightest.min((g.fisher_rate - o.fisher_rate) / g.fisher_rate);
        }
    }
    let mut interior = true;
    for prep in &preps[1..3] {
        let opt = optimize_protocol(&m, prep, 2, &grid).map_err(|e| e.to_string())?;
        interior &= !opt.at_lower_edge && !opt.at_upper_edge;
    }
    pass_if(
        dominated && interior,
        format!("ground above thermal 0.8/0.9 and |+> at all 200 points: {dominated} (smallest relative margin {tightest:.1e}); thermal optima interior: {interior}"),
    )
}

fn c10_harmonic_equivalence() -> Check {
    let x = optimal_short_time_ratio().map_err(|e| e.to_string())?.root;
    let m = DissipationModel::new(x, 1.0, 1e-3).map_err(|e| e.to_string())?;
    let gamma_rate = m.decay_rate();
    let vacuum = CovarianceMatrix::vacuum();
    let dt = 1e-4 / gamma_rate;
    let frozen = qfi_harmonic_transient(&vacuum, &m, dt).map_err(|e| e.to_string())?.frozen.value / dt;
    let limit = ultimate_rate(2, x, 1e-3, 1.0).map_err(|e| e.to_string())?;
    let limit_err = rel(frozen, limit);

    let mut worst = (0.0f64, 0.0);
    for dt in log_space(0.01 / gamma_rate, 5.0 / gamma_rate, 60) {
        let h = qfi_harmonic_transient(&vacuum, &m, dt).map_err(|e| e.to_string())?.frozen.value;
        let q = qfi_transient(&Preparation::Ground, 2, &m, dt).map_err(|e| e.to_string())?.value;
        let d = rel(h, q);
        if d > worst.0 {
            worst = (d, dt * gamma_rate);
        }
    }
    pass_if(
        limit_err < 1e-3 && worst.0 < 0.02,
        format!(
            "dt -> 0 rate vs N=2 limit: rel err {limit_err:.1e} (limit 1e-3); harmonic vs qubit over [0.01, 5]/Gamma: max rel gap {:.4} at dt = {:.2}/Gamma (limit 0.02). \
             The gap tends to the equilibrium ratio ((e^x+1)/(e^x-1))^2 - 1 = {:.4} at x~",
            worst.0,
            worst.1,
            ((x.exp() + 1.0) / x.exp_m1()).powi(2) - 1.0
        ),
    )
}

fn c11_gaussian_fock() -> Check {
    let mut rng = StdRng::seed_from_u64(11);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let (x1, x2) = (rng.gen_range(0.2..10.0), rng.gen_range(0.2..10.0));
        let gaussian = fidelity_gaussian(&CovarianceMatrix::thermal(x1).unwrap(), &CovarianceMatrix::thermal(x2).unwrap());
        // diagonal thermal density matrices in the number basis, truncated at 200
        let (q1, q2): (f64, f64) = ((-x1).exp(), (-x2).exp());
        let overlap: f64 = (0..200).map(|k| ((1.0 - q1) * (1.0 - q2)).sqrt() * (q1 * q2).sqrt().powi(k)).sum();
        worst = worst.max((gaussian - overlap * overlap).abs());
    }
    pass_if(worst < 1e-8, format!("50 thermal pairs, x in [0.2, 10]: max abs deviation {worst:.1e} (limit 1e-8)"))
}

fn main() -> ExitCode {
    let criteria: [(&str, &str, fn() -> Check); 13] = [
        ("1", "oracle equivalence", c1_oracle_equivalence),
        ("2", "optimal gap", c2_optimal_gap),
        ("3", "degeneracy ordering", c3_degeneracy_ordering),
        ("4", "Hessian certification", c4_hessian_printed),
        ("4*", "Hessian certification, a - c eigenvalue", c4_hessian_corrected),
        ("5", "equilibrium curve properties", c5_figure_one),
        ("6", "transient closed form", c6_transient_printed),
        ("6*", "transient closed form, csch(x) term", c6_transient_corrected),
        ("7", "short-time limit", c7_short_time_limit),
        ("8", "optimal short-time ratio", c8_optimal_ratio),
        ("9", "preparation dominance", c9_preparations),
        ("10", "harmonic/qubit transient equivalence", c10_harmonic_equivalence),
        ("11", "Gaussian fidelity vs number basis", c11_gaussian_fock),
    ];
    let mut failed = Vec::new();
    for (id, name, check) in &criteria {
        match check() {
            Ok(detail) => println!("PASS  [{id}] {name}: {detail}"),
            Err(detail) => {
                println!("FAIL  [{id}] {name}: {detail}");
                failed.push(*id);
            }
        }
    }
    if failed.is_empty() {
        println!("all {} checks passed", criteria.len());
        ExitCode::SUCCESS
    } else {
        println!("{} of {} checks failed: {}", failed.len(), criteria.len(), failed.join(", "));
        ExitCode::FAILURE
    }
}
