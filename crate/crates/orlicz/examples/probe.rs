// scratch probe for acceptance-sensitive quantities (deleted before ship)
use num_complex::Complex64;
use orlicz::carleson::{
    compactness_diagnostic, condition_w_table, exact_pullback_profile, DiagnosticConfig, XiGrid,
};
use orlicz::bergman::bergman_compact_ratio;
use orlicz::symbol::{step_outer_symbol, Symbol};
use orlicz::{GeometricGrid, OrliczFunction};
use std::time::Instant;

fn main() {
    let which = std::env::args().nth(1).unwrap_or_default();
    match which.as_str() {
        "slope" => slope(),
        "ratio" => ratio(),
        "w" => wtable(),
        "r0" => r0trend(),
        "ks" => ks(),
        "psum" => psum(),
        _ => eprintln!("probe slope|ratio|w|r0|ks|psum"),
    }
}

fn slope() {
    for pow in [26u32, 30, 32, 34] {
        let t0 = Instant::now();
        let grid = GeometricGrid::new(1e-4, 1e-2, 9);
        let prof = exact_pullback_profile(
            &Symbol::LensSingular,
            1u64 << pow,
            &grid,
            &XiGrid::with_contact(1 << 12, &[0.0]),
        )
        .unwrap();
        let slope = prof.fitted_slope(1e-4, 1e-2);
        println!(
            "n = 2^{pow}: slope = {slope:.4}  rho(1e-4) = {:.3e} ({} atoms)  rho(1e-2) = {:.3e}  [{:?}]",
            prof.rho[prof.rho.len() - 1],
            (prof.rho[prof.rho.len() - 1] * (1u64 << pow) as f64).round(),
            prof.rho[0],
            t0.elapsed()
        );
    }
}

fn ratio() {
    let psi = OrliczFunction::psi2();
    let b6 = Symbol::ring_blaschke(6).unwrap();
    let phi = Symbol::z_times_blaschke(b6).unwrap();
    let radii: Vec<f64> = (4..=24).map(|k| 1.0 - 0.5f64.powf(k as f64 / 4.0)).collect();
    let table = bergman_compact_ratio(&phi, &psi, &radii, 64).unwrap();
    let last = table.final_column();
    let max = last.iter().cloned().fold(0.0f64, f64::max);
    let min = last.iter().cloned().fold(f64::INFINITY, f64::min);
    println!("final radius {} ratio: min {min:.4} max {max:.4}", radii[radii.len() - 1]);
    println!("decreasing(5%): {}", table.decreasing_along_rays(0.05));
    // per-ray final values
    for (i, &v) in last.iter().enumerate() {
        if i % 8 == 0 {
            println!("ray {i}: {v:.4}");
        }
    }
}

fn wtable() {
    let psi = OrliczFunction::psi2();
    for (name, sym) in [
        ("constant:0.5", Symbol::constant(Complex64::new(0.5, 0.0)).unwrap()),
        ("identity", Symbol::Identity),
        ("lens-singular", Symbol::LensSingular),
    ] {
        let t0 = Instant::now();
        let table = condition_w_table(&sym, &psi, &[1.0 - 1e-3], 1 << 10, 1 << 20).unwrap();
        println!("{name}: product at r=1-1e-3: {:.4} [{:?}]", table.rows[0].sup_product, t0.elapsed());
    }
}

fn r0trend() {
    let cfg = DiagnosticConfig::default();
    let t0 = Instant::now();
    let prof = exact_pullback_profile(&Symbol::LensSingular, cfg.exact_n, &cfg.h, &cfg.xi).unwrap();
    println!("profile at 2^34 in {:?}", t0.elapsed());
    for psi_name in ["psi2", "spliced-logsq"] {
        let psi = OrliczFunction::from_name(psi_name).unwrap();
        let rep = orlicz::carleson::psi_carleson_test(&prof, &psi, &cfg.a_grid);
        println!(
            "{psi_name}: R {} (witness {:?}) R0 {} K {} K0 {}",
            rep.r.holds, rep.r.witness, rep.r0.holds, rep.k.holds, rep.k0.holds
        );
        // last-decade factors per A
        for (a, products) in cfg.a_grid.iter().zip(&rep.ln_rho_products) {
            let lastidx = prof.h.len() - 1;
            let mut up = lastidx;
            for (i, &hv) in prof.h.iter().enumerate() {
                if hv >= 10.0 * prof.h[lastidx] * (1.0 - 1e-9) {
                    up = i;
                }
            }
            println!(
                "  A = {a}: drop over last decade = {:.3}x",
                (products[up] - products[lastidx]).exp()
            );
        }
    }
    let t1 = Instant::now();
    let psi = OrliczFunction::psi2();
    let rep = compactness_diagnostic(&Symbol::Lens, &psi, &DiagnosticConfig {
        boundary_n: 1 << 22,
        ..DiagnosticConfig::default()
    })
    .unwrap();
    println!("lens/psi2: {} warnings {:?} [{:?}]", rep.summary_line(), rep.warnings, t1.elapsed());
}

fn ks() {
    use orlicz::num::ks_distance;
    let t0 = Instant::now();
    let n = 1 << 20;
    let trace = Symbol::SingularInner.trace(n, 1e-6).unwrap();
    let mut angles: Vec<f64> = trace
        .values()
        .iter()
        .filter(|v| v.norm() > 0.5)
        .map(|v| v.arg().rem_euclid(2.0 * std::f64::consts::PI))
        .collect();
    angles.sort_by(f64::total_cmp);
    let a = (-1.0f64).exp();
    let cdf = |t: f64| -> f64 {
        // harmonic measure of the arc (0, t) seen from a (real a > 0)
        let f = |s: f64| -> f64 {
            let half = 0.5 * s;
            ((1.0 + a) / (1.0 - a) * half.tan()).atan() / std::f64::consts::PI
        };
        if t <= std::f64::consts::PI {
            f(t)
        } else {
            1.0 - f(2.0 * std::f64::consts::PI - t)
        }
    };
    let d = ks_distance(&angles, cdf);
    println!("KS at n = 2^20: {d:.5} (excluded {}) [{:?}]", n - angles.len(), t0.elapsed());
}

fn psum() {
    let psi = OrliczFunction::psi2();
    for n in [3u32, 6, 12] {
        match step_outer_symbol(&psi, n) {
            Ok(plan) => {
                println!(
                    "request {n}: built {} levels (truncated {}), c = {:.3}",
                    plan.levels.len(),
                    plan.truncated,
                    plan.c
                );
                for l in &plan.levels {
                    println!(
                        "  n={} beta={:.3e} t={:.3} 1-r={:.3e} bound={:.4}",
                        l.index, l.beta, l.t, 1.0 - l.radius, l.norm_lower_bound
                    );
                }
            }
            Err(e) => println!("request {n}: {e}"),
        }
    }
}
