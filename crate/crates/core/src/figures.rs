//! Pinned parameter presets that regenerate the data behind figures 1-11.
//!
//! Figures 1-8 have no legible axis values, so their grids are our own
//! choice and the output is a qualitative reproduction. Figures 10 and 11
//! use the DVB-S2X (`n = 32400`) and Euclid (`n = 8192`) block lengths.

use rayon::prelude::*;

use crate::channel::{BpskSymbol, WiretapChannelParams};
use crate::error::{argument, Result};
use crate::finite_length::{CodeParams, ExponentCurve};
use crate::geometry::{min_protected_angle, protected_region_map, RegionParams};
use crate::report::{Cell, Table};
use crate::secrecy_capacity::{capacity_curves, secrecy_capacity, secrecy_sweep};

/// Valid figure ids.
pub const FIGURE_IDS: [u8; 11] = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11];

/// Orbit presets `(name, rho_B in km)`.
pub const ORBITS: [(&str, f64); 3] = [("LEO", 500.0), ("MEO", 20_200.0), ("GEO", 35_786.0)];

/// `s` samples per exponent curve for figures 9-11.
pub const S_RESOLUTION: usize = 400;

/// `(gamma_g, gamma_n)` operating points of figure 10.
pub const FIG10_POINTS: [(f64, f64); 2] = [(0.3, 2.0), (0.5, 2.0)];
pub const FIG10_N: usize = 32_400;
/// `(gamma_g, gamma_n)` operating points of figure 11.
pub const FIG11_POINTS: [(f64, f64); 2] = [(0.3, 1.0), (0.3, 2.0)];
pub const FIG11_N: usize = 8_192;

/// `start, start + step, ...` up to `stop` inclusive (within half a step).
pub fn linspace_step(start: f64, stop: f64, step: f64) -> Vec<f64> {
    let count = ((stop - start) / step + 0.5).floor() as usize + 1;
    (0..count).map(|i| start + step * i as f64).collect()
}

pub fn figure(id: u8) -> Result<Table> {
    match id {
        1 => fig1(),
        2 => fig2(),
        3 => fig3(),
        4 => fig4(),
        5 => fig5(),
        6 => densities(&[(1.0, 1.0)], &[0.25, 0.5, 1.0], "bob"),
        7 => densities(&[(0.5, 1.0), (0.5, 2.0)], &[0.25, 0.5, 1.0], "eve"),
        8 => fig8(),
        9 => fig9(),
        10 => rate_sweep(FIG10_N, &FIG10_POINTS),
        11 => rate_sweep(FIG11_N, &FIG11_POINTS),
        other => Err(argument(format!(
            "unknown figure {other}; valid ids are {}",
            FIGURE_IDS.map(|i| i.to_string()).join(", ")
        ))),
    }
}

/// Minimum protected angle vs distance ratio for three orbits and two
/// propagation laws.
fn fig1() -> Result<Table> {
    let mut t = Table::new(&["orbit", "rho_b_km", "r", "rho_ratio", "theta_min_deg"]);
    let ratios = linspace_step(0.05, 2.0, 0.05);
    for r in [2.0, 2.2] {
        for (name, rho_b) in ORBITS {
            let params = RegionParams { rho_b, r, a: 2.0, mu: 1.0 };
            for &q in &ratios {
                let theta = min_protected_angle(q, &params, 90.0)?;
                t.push(vec![name.into(), rho_b.into(), r.into(), q.into(), theta.into()]);
            }
        }
    }
    Ok(t)
}

fn region_rows(t: &mut Table, label: &str, r: f64, params: &RegionParams) -> Result<()> {
    let thetas = linspace_step(0.5, 20.0, 0.5);
    let ratios = linspace_step(0.1, 3.0, 0.1);
    for c in protected_region_map(&thetas, &ratios, params)? {
        t.push(vec![
            label.into(),
            r.into(),
            c.theta_deg.into(),
            c.rho_ratio.into(),
            c.gamma_g.into(),
            c.protected.into(),
        ]);
    }
    Ok(())
}

const REGION_COLUMNS: [&str; 6] = ["surface", "r", "theta_deg", "rho_ratio", "gamma_g", "protected"];

/// Free space, antenna patterns favourable (`a = 1, mu = 1`) and
/// unfavourable (`a = 3, mu = 0.1`) to Eve.
fn fig2() -> Result<Table> {
    let mut t = Table::new(&REGION_COLUMNS);
    region_rows(&mut t, "favourable", 2.0, &RegionParams { rho_b: ORBITS[0].1, r: 2.0, a: 1.0, mu: 1.0 })?;
    region_rows(&mut t, "unfavourable", 2.0, &RegionParams { rho_b: ORBITS[0].1, r: 2.0, a: 3.0, mu: 0.1 })?;
    Ok(t)
}

/// LEO, free space against `r = 2.2`.
fn fig3() -> Result<Table> {
    let mut t = Table::new(&REGION_COLUMNS);
    for r in [2.0, 2.2] {
        region_rows(&mut t, "LEO", r, &RegionParams { rho_b: ORBITS[0].1, r, a: 2.0, mu: 1.0 })?;
    }
    Ok(t)
}

fn fig4() -> Result<Table> {
    let mut t = Table::new(&["gamma_g", "gamma_n", "c_bob", "c_eve", "c_s"]);
    let gg = linspace_step(0.0, 1.5, 0.05);
    for row in secrecy_sweep(&gg, &[0.5, 1.0, 1.5, 2.0], 1.0, 1.0)? {
        t.push(vec![row.gamma_g.into(), row.gamma_n.into(), row.c_bob.into(), row.c_eve.into(), row.c_s.into()]);
    }
    Ok(t)
}

fn fig5() -> Result<Table> {
    let mut t = Table::new(&["snr_db", "c_bob", "c_eve", "c_s", "gauss_ref", "bsc_ref"]);
    let snr: Vec<f64> = linspace_step(-10.0, 20.0, 0.5).iter().map(|db| 10f64.powf(db / 10.0)).collect();
    let params = WiretapChannelParams::new(0.5, 1.0, 1.0)?;
    for row in capacity_curves(&snr, &params)? {
        t.push(vec![
            row.snr_db.into(),
            row.c_bob.into(),
            row.c_eve.into(),
            row.c_s.into(),
            row.gauss_ref.into(),
            row.bsc_ref.into(),
        ]);
    }
    Ok(t)
}

/// Conditional and mixture densities on `[-5, 5]`. `points` are
/// `(gamma_g, gamma_n)`; for Bob use `(1, 1)`.
pub fn densities(points: &[(f64, f64)], n0_grid: &[f64], who: &str) -> Result<Table> {
    let mut t = Table::new(&["channel", "gamma_g", "gamma_n", "n0", "y", "w_plus", "w_minus", "mixture"]);
    let ys = linspace_step(-5.0, 5.0, 0.05);
    for &(gg, gn) in points {
        for &n0 in n0_grid {
            let p = WiretapChannelParams::new(gg, gn, n0)?;
            let ch = if who == "bob" { p.bob() } else { p.eve() };
            for &y in &ys {
                t.push(vec![
                    who.into(),
                    gg.into(),
                    gn.into(),
                    n0.into(),
                    y.into(),
                    ch.density(y, BpskSymbol::Plus).into(),
                    ch.density(y, BpskSymbol::Minus).into(),
                    ch.mixture(y).into(),
                ]);
            }
        }
    }
    Ok(t)
}

/// Capacity gap against the analytic positivity and separation predicates.
fn fig8() -> Result<Table> {
    let mut t = Table::new(&["gamma_g", "gamma_n", "delta", "positive", "predicate", "c_separated"]);
    let gg = linspace_step(0.05, 1.5, 0.05);
    let gn = linspace_step(0.25, 2.5, 0.25);
    let cells: Vec<(f64, f64)> = gg.iter().flat_map(|&g| gn.iter().map(move |&n| (g, n))).collect();
    let rows = cells
        .into_par_iter()
        .map(|(g, n)| {
            let p = WiretapChannelParams::new(g, n, 1.0)?;
            let cap = secrecy_capacity(&p)?;
            let delta = cap.c_bob - cap.c_eve;
            Ok(vec![
                g.into(),
                n.into(),
                delta.into(),
                (delta > 0.0).into(),
                crate::secrecy_capacity::positivity_condition(&p).into(),
                crate::secrecy_capacity::c_separation_condition(&p).into(),
            ])
        })
        .collect::<Result<Vec<Vec<Cell>>>>()?;
    rows.into_iter().for_each(|r| t.push(r));
    Ok(t)
}

fn fig9() -> Result<Table> {
    let mut t = Table::new(&["gamma_g", "gamma_n", "s", "e0_max"]);
    for gg in [0.6, 0.3] {
        for gn in [0.5, 1.0, 2.0] {
            let curve = ExponentCurve::new(&WiretapChannelParams::new(gg, gn, 1.0)?, S_RESOLUTION)?;
            for &(s, e) in curve.samples() {
                t.push(vec![gg.into(), gn.into(), s.into(), e.into()]);
            }
        }
    }
    Ok(t)
}

/// Minimised bound against `rho_sec = k'/n` on `0, 0.005, ..., 0.3`.
pub fn rate_sweep(n: usize, points: &[(f64, f64)]) -> Result<Table> {
    let mut t = Table::new(&["gamma_g", "gamma_n", "n", "rho_sec", "k_prime", "s_star", "log2_bound"]);
    let rhos = linspace_step(0.0, 0.3, 0.005);
    for &(gg, gn) in points {
        let curve = ExponentCurve::new(&WiretapChannelParams::new(gg, gn, 1.0)?, S_RESOLUTION)?;
        let rows = rhos
            .par_iter()
            .map(|&rho| {
                let code = CodeParams::from_rho_sec(n, rho)?;
                let b = curve.minimize(n, code.k_prime)?;
                Ok(vec![
                    gg.into(),
                    gn.into(),
                    n.into(),
                    rho.into(),
                    code.k_prime.into(),
                    b.s_star.into(),
                    b.log2_bound.into(),
                ])
            })
            .collect::<Result<Vec<Vec<Cell>>>>()?;
        rows.into_iter().for_each(|r| t.push(r));
    }
    Ok(t)
}
