//! Named reproduction experiments. Each one recomputes a specific
//! construction at desk scale, prints a one-line verdict summary and emits
//! CSV/JSON artifacts when an output directory is given.

use crate::spec::scaled_pow2;
use crate::Common;
use num_complex::Complex64;
use orlicz::bergman::{bergman_compact_ratio, blaschke_s_bound};
use orlicz::carleson::{
    compactness_diagnostic_with_profile, exact_pullback_profile, profile, psi_carleson_test,
    pullback, DiagnosticConfig, XiGrid,
};
use orlicz::measure::EmpiricalMeasure;
use orlicz::num;
use orlicz::symbol::{ring_level, ring_tail_bound, step_outer_symbol, Symbol};
use orlicz::{Error, GeometricGrid, OrliczFunction, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fs;
use std::path::Path;

pub fn run(name: &str, psi_override: Option<&str>, common: &Common) -> Result<()> {
    if let Some(dir) = &common.out {
        fs::create_dir_all(dir)?;
    }
    match name {
        "meme-module" => meme_module(common),
        "lens" => lens(common),
        "psummming" => psummming(psi_override, common),
        "blaschke" => blaschke(common),
        "bergman-zB" => bergman_zb(common),
        "suite-exemple" => suite_exemple(common),
        "counterexample-2" => counterexample_2(psi_override, common),
        "counterexample-3" => counterexample_3(psi_override, common),
        other => Err(Error::Parse(format!("unknown experiment {other:?}"))),
    }
}

fn write(dir: Option<&Path>, name: &str, contents: &str) -> Result<()> {
    if let Some(dir) = dir {
        fs::write(dir.join(name), contents)?;
        println!("wrote {}", dir.join(name).display());
    }
    Ok(())
}

fn write_profile(dir: Option<&Path>, name: &str, prof: &orlicz::carleson::CarlesonProfile) -> Result<()> {
    if let Some(dir) = dir {
        let path = dir.join(name);
        prof.write_csv(fs::File::create(&path)?)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

/// Two symbols with the same boundary modulus separate the classical window
/// test: the twisted lens map has rho(h) ~ h^{3/2}, so the little-oh
/// condition holds even though the psi2 products do not vanish.
fn meme_module(common: &Common) -> Result<()> {
    let n = scaled_pow2(1 << 30, common.size) as u64;
    let h = GeometricGrid::new(1e-4, 1e-2, 9);
    let xi = XiGrid::with_contact(scaled_pow2(1 << 12, common.size), &[0.0]);
    let prof = exact_pullback_profile(&Symbol::LensSingular, n, &h, &xi).expect("charted symbol");
    let slope = prof.fitted_slope(1e-4, 1e-2);

    let psi2 = OrliczFunction::psi2();
    // the little-oh check reaches h = 1e-5, where window masses are ~1e-8:
    // resolving the last decade needs the bigger grid-counted run
    let n_full = scaled_pow2(1 << 34, common.size) as u64;
    let full_h = GeometricGrid::new(1e-5, 1e-1, 9);
    let full = exact_pullback_profile(&Symbol::LensSingular, n_full, &full_h, &xi).expect("charted symbol");
    let rep = psi_carleson_test(&full, &psi2, &[0.5, 1.0, 1.25]);
    let ln_mc: Vec<f64> = full
        .rho
        .iter()
        .zip(&full.h)
        .map(|(&r, &hh)| if r > 0.0 { r.ln() - hh.ln() } else { f64::NEG_INFINITY })
        .collect();
    let mc_drop = (ln_mc[ln_mc.len() - 10] - ln_mc[ln_mc.len() - 1]).exp();
    let mc_holds = mc_drop >= 2.0;

    println!(
        "fitted rho slope over h in [1e-4, 1e-2]: {slope:.3} (target [1.4, 1.6]); MC {} / R0(psi2) {}",
        if mc_holds { "holds" } else { "fails" },
        if rep.r0.holds { "holds" } else { "fails" },
    );
    write_profile(common.out.as_deref(), "meme-module-profile.csv", &full)?;
    let summary = serde_json::json!({
        "slope": slope,
        "slope_window": [1e-4, 1e-2],
        "boundary_n_log2": (n as f64).log2(),
        "full_profile_n_log2": (n_full as f64).log2(),
        "MC": mc_holds,
        "R0_psi2": rep.r0.holds,
    });
    write(common.out.as_deref(), "meme-module-summary.json", &serde_json::to_string_pretty(&summary).expect("json"))
}

/// Lens-map profile: rho(h)/h stays pinned near 2/pi (the operator is not
/// compact on H^2); the sampled route is cross-checked against the exact
/// interval counts.
fn lens(common: &Common) -> Result<()> {
    let n = scaled_pow2(1 << 22, common.size);
    let h = GeometricGrid::new(1e-4, 1e-2, 9);
    let xi = XiGrid::with_contact(scaled_pow2(1 << 12, common.size), &[0.0]);
    let trace = Symbol::Lens.trace(n, 1e-6)?;
    let mu = pullback(&trace)?;
    let sampled = profile(&mu, &h, &xi);
    let exact = exact_pullback_profile(&Symbol::Lens, n as u64, &h, &xi).expect("charted symbol");
    let mut worst = 0.0f64;
    for (s, e) in sampled.rho.iter().zip(&exact.rho) {
        worst = worst.max((s - e).abs() * n as f64);
    }
    let ratios: Vec<f64> = sampled.rho.iter().zip(&sampled.h).map(|(&r, &hh)| r / hh).collect();
    let lo = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = ratios.iter().cloned().fold(0.0f64, f64::max);
    println!(
        "rho(h)/h in [{lo:.4}, {hi:.4}] over h in [1e-4, 1e-2] (2/pi = {:.4}); max atom-count gap vs interval oracle: {worst}",
        2.0 / std::f64::consts::PI
    );
    write_profile(common.out.as_deref(), "lens-profile.csv", &sampled)
}

/// Step-outer symbol: order bounded into the small space with norm lower
/// bounds decaying only logarithmically.
fn psummming(psi_override: Option<&str>, common: &Common) -> Result<()> {
    let psi = OrliczFunction::from_name(psi_override.unwrap_or("psi2"))?;
    let plan = step_outer_symbol(&psi, 6)?;
    let mut chi_err = 0.0f64;
    for lvl in &plan.levels {
        let lhs = psi.chi(lvl.m, 1.0 / (1.0 - lvl.radius))?;
        chi_err = chi_err.max(num::rel_diff(lhs, 8.0 / lvl.beta));
    }
    // order-bound integrals for A up to M_N are finite by the tail bound
    let a_top = plan.levels.last().expect("nonempty").m;
    let integral: f64 = plan
        .levels
        .iter()
        .map(|l| plan.c * l.beta * psi.chi(a_top, 1.0 / (1.0 - l.radius)).unwrap_or(f64::INFINITY))
        .sum();
    println!(
        "built {} levels (truncated: {}); max chi-identity error {chi_err:.2e}; int chi_{{M_N}}(1/(1-|phi*|)) dm = {integral:.4}; norm lower bounds {:?}",
        plan.levels.len(),
        plan.truncated,
        plan.levels.iter().map(|l| (l.norm_lower_bound * 1e4).round() / 1e4).collect::<Vec<_>>()
    );
    let levels = serde_json::to_string_pretty(&plan.levels).expect("json");
    write(common.out.as_deref(), "psummming-levels.json", &levels)
}

/// Ring Blaschke product: |B|^2 <= exp(-S) with the per-level minorant, and
/// the truncation tail report.
fn blaschke(common: &Common) -> Result<()> {
    let levels = 6;
    let b = Symbol::ring_blaschke(levels)?;
    let mut rng = ChaCha8Rng::seed_from_u64(common.seed);
    let top = ring_level(levels).radius;
    let mut rows = String::from("re,im,modulus_sq,exp_bound,s,minorant\n");
    let mut checked = 0u32;
    let samples = scaled_pow2(1 << 14, common.size).min(1 << 20);
    for _ in 0..samples {
        let r = rng.gen_range(0.0..top);
        let t = rng.gen_range(0.0..2.0 * std::f64::consts::PI);
        let z = Complex64::from_polar(r, t);
        let bound = blaschke_s_bound(&b, z)?;
        if bound.modulus_sq > bound.exp_bound {
            return Err(Error::Convergence(format!("|B|^2 > exp(-S) at {z}")));
        }
        if let Some(m) = bound.minorant {
            if bound.s < m {
                return Err(Error::Convergence(format!("S < level minorant at {z}")));
            }
        }
        if checked < 64 {
            rows.push_str(&format!(
                "{:.12e},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e}\n",
                z.re,
                z.im,
                bound.modulus_sq,
                bound.exp_bound,
                bound.s,
                bound.minorant.unwrap_or(f64::NAN)
            ));
        }
        checked += 1;
    }
    let tail = ring_tail_bound(levels);
    let mut per_level = String::from("level,radius,count,p_times_gap,bound\n");
    for n in 1..=levels {
        let lvl = ring_level(n);
        per_level.push_str(&format!(
            "{n},{:.12e},{},{:.12e},{:.12e}\n",
            lvl.radius,
            lvl.count,
            lvl.count as f64 * (1.0 - lvl.radius),
            2.0 * (-(n as f64).sqrt()).exp2()
        ));
    }
    println!(
        "checked |B|^2 <= exp(-S) and the level minorant at {checked} random points (levels = {levels}); truncation tail bound sum_{{n>{levels}}} 2*2^(-sqrt n) = {tail:.4}"
    );
    write(common.out.as_deref(), "blaschke-samples.csv", &rows)?;
    write(common.out.as_deref(), "blaschke-levels.csv", &per_level)
}

/// Ratio table for phi(z) = z B_6(z) under psi2, with the slow-approach
/// infima.
fn bergman_zb(common: &Common) -> Result<()> {
    let psi = OrliczFunction::psi2();
    let phi = Symbol::z_times_blaschke(Symbol::ring_blaschke(6)?)?;
    let radii: Vec<f64> = (4..=24).map(|k| 1.0 - 0.5f64.powf(k as f64 / 4.0)).collect();
    let table = bergman_compact_ratio(&phi, &psi, &radii, 64)?;
    let last = table.final_column();
    let min = last.iter().cloned().fold(f64::INFINITY, f64::min);
    let max = last.iter().cloned().fold(0.0f64, f64::max);
    println!(
        "ratio at |a| = {:.6}: min {min:.4}, max {max:.4} over 64 rays; decreasing within 5%: {}; eps-infima {:?}",
        radii[radii.len() - 1],
        table.decreasing_along_rays(0.05),
        table.eps_infima.iter().map(|(e, v)| format!("eps {e}: {v:.3}")).collect::<Vec<_>>()
    );
    if let Some(dir) = &common.out {
        let path = dir.join("bergman-zB-ratios.csv");
        table.write_csv(fs::File::create(&path)?)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

/// The separation example: under the spliced log-square psi the twisted lens
/// map is compact (vanishing products) yet not order bounded into the small
/// space, while under psi2 even the classical window test passing does not
/// make the products vanish.
fn suite_exemple(common: &Common) -> Result<()> {
    let cfg = DiagnosticConfig::default().scaled(common.size);
    let phi = Symbol::LensSingular;
    let prof = exact_pullback_profile(&phi, cfg.exact_n, &cfg.h, &cfg.xi).expect("charted symbol");
    for psi_name in ["spliced-logsq", "psi2"] {
        let psi = OrliczFunction::from_name(psi_name)?;
        let rep = compactness_diagnostic_with_profile(&phi, &psi, &cfg, prof.clone())?;
        println!("{}", rep.summary_line());
        for w in &rep.warnings {
            println!("warning: {w}");
        }
        if let Some(dir) = &common.out {
            let path = dir.join(format!("suite-exemple-{}.json", psi_name.replace(':', "_")));
            fs::write(&path, rep.to_json())?;
            println!("wrote {}", path.display());
        }
    }
    write_profile(common.out.as_deref(), "suite-exemple-profile.csv", &prof)
}

/// A discrete measure on [0, 1) whose windows at the atom scales carry mass
/// N/psi(2 a_N): the embedding stays continuous while K(h) explodes, so the
/// measure is not Carleson.
fn counterexample_2(psi_override: Option<&str>, common: &Common) -> Result<()> {
    let psi = OrliczFunction::from_name(psi_override.unwrap_or("psi2"))?;
    // a_n increasing with psi(2 a_n)/psi(a_n) >= n 2^n and psi(a_n)/n
    // increasing; the doubling gap must be unbounded (psi outside the
    // doubling class) for the sequence to exist
    let gap = |a: f64| psi.ln_eval(2.0 * a) - psi.ln_eval(a);
    let mut levels: Vec<(f64, f64)> = Vec::new(); // (a_n, x_n)
    let mut prev_ratio = f64::NEG_INFINITY;
    let mut a_prev = 1.0f64;
    for n in 1..=40u32 {
        let target = (n as f64).ln() + n as f64 * std::f64::consts::LN_2;
        let floor = if n == 1 {
            1.0
        } else {
            // keep both a_n and psi(a_n)/n strictly increasing
            let value_floor = psi.inverse(1.2 * (prev_ratio + (n as f64).ln()).exp())?;
            (a_prev * 1.05).max(value_floor)
        };
        let a_n = if gap(floor) >= target {
            floor
        } else {
            let (lo, hi) = match num::grow_bracket(|a| gap(floor + a), target, 1.0) {
                Ok(b) => b,
                Err(_) => break,
            };
            floor + num::bisect_monotone(|a| gap(floor + a), target, lo, hi, 1e-12)?
        };
        if gap(a_n) < target - 1e-9 {
            return Err(Error::Domain(format!(
                "{} stays in the doubling class: psi(2a)/psi(a) never reaches n 2^n at n = {n}",
                psi.label()
            )));
        }
        let ratio = psi.ln_eval(a_n) - (n as f64).ln();
        if ratio <= prev_ratio {
            return Err(Error::Domain(format!(
                "{}: psi(a_n)/n fails to increase at n = {n}",
                psi.label()
            )));
        }
        prev_ratio = ratio;
        a_prev = a_n;
        let w = psi.ln_eval(2.0 * a_n);
        if w > 700.0f64.ln() + 690.0 {
            break;
        }
        let x_n = 1.0 - (-w).exp();
        if 1.0 - x_n < 1e-15 {
            break;
        }
        levels.push((a_n, x_n));
    }
    if levels.len() < 3 {
        return Err(Error::Capacity("fewer than 3 representable atoms".into()));
    }
    let big_n = levels.len();
    // weights n/psi(2a_n) - (n+1)/psi(2a_{n+1}), telescoping to N/psi(2a_N)
    let mut pts = Vec::new();
    let mut wts = Vec::new();
    for (i, &(a_n, x_n)) in levels.iter().enumerate() {
        let n = (i + 1) as f64;
        let here = n * (-psi.ln_eval(2.0 * a_n)).exp();
        let next = if i + 1 < big_n {
            (n + 1.0) * (-psi.ln_eval(2.0 * levels[i + 1].0)).exp()
        } else {
            0.0
        };
        pts.push(Complex64::new(x_n, 0.0));
        wts.push(here - next);
    }
    let mu = EmpiricalMeasure::new(pts, wts)?;
    // window at xi = 1 with h_n = 1 - x_n holds mass n/psi(2 a_n) = n h_n
    let mut rows = String::from("n,h,window_mass,mass_over_h\n");
    let mut worst = 0.0f64;
    for (i, &(a_n, x_n)) in levels.iter().enumerate() {
        let n = (i + 1) as f64;
        let h = (1.0 - x_n) * 1.01;
        let w = orlicz::carleson::Window::boxed(0.0, h)?;
        let mass = orlicz::carleson::window_measure(&mu, &w);
        let expect = n * (-psi.ln_eval(2.0 * a_n)).exp();
        worst = worst.max(num::rel_diff(mass, expect));
        rows.push_str(&format!("{},{:.12e},{:.12e},{:.12e}\n", i + 1, h, mass, mass / h));
    }
    println!(
        "{} atoms; window mass at h_n = 1-x_n equals n/psi(2a_n) (max rel err {worst:.1e}); mass/h grows like n, so the measure is not Carleson",
        big_n
    );
    write(common.out.as_deref(), "counterexample-2-windows.csv", &rows)?;
    if let Some(dir) = &common.out {
        let path = dir.join("counterexample-2-measure.csv");
        mu.write_csv_path(&path)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

/// Discrete ring measure nu = sum 1/psi(2^k y_k) delta at radius
/// 1 - 1/psi(y_k): the embedding tail norms shrink like 2^{-N} (compact
/// side), K(h_k) >= psi(y_k)/psi(2^k y_k) exactly; the (K0)-violating
/// companion sequence exists only for psi outside the doubling-regularity
/// class, which the catalog entries satisfy.
fn counterexample_3(psi_override: Option<&str>, common: &Common) -> Result<()> {
    let psi = OrliczFunction::from_name(psi_override.unwrap_or("exp"))?;
    let mut ys = Vec::new();
    for k in 1..=12u32 {
        let y = psi.inverse(2.0 * 2f64.powi(k as i32))?;
        let scale = 2f64.powi(k as i32) * y;
        if psi.ln_eval(scale) > 690.0 {
            break;
        }
        ys.push(y);
    }
    if ys.len() < 3 {
        return Err(Error::Capacity("fewer than 3 representable rings".into()));
    }
    let mut pts = Vec::new();
    let mut wts = Vec::new();
    for (i, &y) in ys.iter().enumerate() {
        let k = (i + 1) as i32;
        let r = 1.0 - 1.0 / psi.eval(y)?;
        pts.push(Complex64::new(r, 0.0));
        wts.push(1.0 / psi.eval(2f64.powi(k) * y)?);
    }
    let mu = EmpiricalMeasure::new(pts.clone(), wts.clone())?;
    // identity: K(h_k) >= psi(y_k) sum_{j>=k} 1/psi(2^j y_j)
    let mut rows = String::from("k,h,K_lower,tail_norm_bound\n");
    let mut tail_ok = true;
    for (i, &y) in ys.iter().enumerate() {
        let h = 1.0 / psi.eval(y)?;
        let mass: f64 = wts[i..].iter().sum();
        let k_lower = mass / h;
        // compact side: sup over the unit ball of the tail norm beyond ring
        // N is <= 2^{-N+2}; the bound uses psi(2^N y_j)/psi(2^j y_j) <= 2^{N-j}
        let n_lvl = (i + 1) as i32;
        let bound: f64 = ys
            .iter()
            .enumerate()
            .skip(i + 1)
            .map(|(j, &yj)| {
                let jj = (j + 1) as i32;
                (psi.ln_eval(2f64.powi(n_lvl) * yj) - psi.ln_eval(2f64.powi(jj) * yj)).exp()
            })
            .sum();
        if bound > 2f64.powi(-(n_lvl) + 1) + 1e-12 {
            tail_ok = false;
        }
        rows.push_str(&format!("{},{:.12e},{:.12e},{:.12e}\n", i + 1, h, k_lower, bound));
    }
    println!(
        "{} rings under {}; compact-side tail bounds {}; no doubling-violation sequence exists for this psi (its doubling ratio is monotone), so the K-side stays consistent",
        ys.len(),
        psi.label(),
        if tail_ok { "verified" } else { "FAILED" }
    );
    if !tail_ok {
        return Err(Error::Convergence("tail norm bound failed".into()));
    }
    write(common.out.as_deref(), "counterexample-3-rings.csv", &rows)?;
    if let Some(dir) = &common.out {
        let path = dir.join("counterexample-3-measure.csv");
        mu.write_csv_path(&path)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}
