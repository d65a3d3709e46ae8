//! Small dense checks of the well-posedness machinery: Galerkin ODEs, the
//! inf-sup bound, Piola transforms and the partial integration identity.

pub mod galerkin;
pub mod identities;
pub mod infsup;
pub mod piola;
pub mod stgrid;

use nalgebra::DVector;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use galerkin::{energy_history, galerkin_ode_solve, sine_system, GalerkinSystem};
use infsup::{c_s, infsup_estimate, standard_configs, InfSupConfig, InfSupReport};
use piola::{flow, piola_apply, piola_material_derivative, sample_trajectory, CellularFlow, Field2d, Mat2, TrigField, Vec2};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct LabConfig {
    /// Ellipticity / continuity constants of an extra inf-sup configuration
    /// (`mu` ranges over `[gamma, big_gamma]`).
    pub gamma: f64,
    pub big_gamma: f64,
    pub seed: u64,
    /// Size of the random field families.
    pub family: usize,
}

impl Default for LabConfig {
    fn default() -> Self {
        Self { gamma: 0.5, big_gamma: 2.0, seed: 20240611, family: 100 }
    }
}

impl LabConfig {
    pub fn validate(&self) -> Result<()> {
        c_s(self.gamma, self.big_gamma)?;
        if self.family == 0 {
            return Err(Error::Config("family size must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub value: f64,
    pub bound: f64,
    pub detail: String,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct LabReport {
    pub checks: Vec<Check>,
    pub infsup: Vec<InfSupReport>,
}

impl LabReport {
    fn push(&mut self, name: &str, passed: bool, value: f64, bound: f64, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), passed, value, bound, detail: detail.into() });
    }

    /// `value <= bound`
    fn le(&mut self, name: &str, value: f64, bound: f64, detail: impl Into<String>) {
        self.push(name, value <= bound, value, bound, detail);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            s += &format!("[{}] {:<34} {:>12.4e} (bound {:.3e})  {}\n", if c.passed { "PASS" } else { "FAIL" }, c.name, c.value, c.bound, c.detail);
        }
        s += "inf-sup configurations:\n";
        for r in &self.infsup {
            let c = &r.config;
            s += &format!(
                "  nx={:<3} nt={:<3} rho={:?} mu={:?} mu_late={} speed={}: gamma={} Gamma={} c_s={:.6} discrete={:.6} {}\n",
                c.nx, c.nt, c.rho, c.mu, c.mu_late, c.speed, r.gamma, r.big_gamma, r.c_s, r.value, if r.holds { "ok" } else { "VIOLATED" }
            );
        }
        s
    }
}

/// Runs every analysis check. Fails up front on an inconsistent config;
/// individual check failures are collected in the report.
pub fn run_suite(cfg: &LabConfig) -> Result<LabReport> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut rep = LabReport::default();

    // c_s formula
    let cs11 = c_s(1.0, 1.0)?;
    rep.le("c_s(1,1) = sqrt(2)/4", (cs11 - 2f64.sqrt() / 4.0).abs(), 0.0, format!("c_s = {cs11:.15}"));
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let g: f64 = rand::Rng::gen_range(&mut rng, 0.01..10.0);
        let gg = g * rand::Rng::gen_range(&mut rng, 1.0..10.0);
        let alt = g / (2f64.sqrt() * (1.0 + gg * gg));
        worst = worst.max((c_s(g, gg)? - alt).abs() / alt);
    }
    rep.le("c_s formula identity (random)", worst, 1e-15, "1000 random (gamma, Gamma)");

    // inf-sup
    let mut configs = standard_configs();
    configs.push(InfSupConfig { mu: [cfg.gamma, cfg.big_gamma], ..InfSupConfig::default() });
    for c in &configs {
        rep.infsup.push(infsup_estimate(c)?);
    }
    let margin = rep.infsup.iter().map(|r| r.value - r.c_s).fold(f64::INFINITY, f64::min);
    let ok = rep.infsup.iter().all(|r| r.holds);
    rep.push("discrete inf-sup >= c_s", ok, margin, -1e-10, format!("{} configurations, min(value - c_s)", rep.infsup.len()));

    // Galerkin ODE
    let relax = GalerkinSystem {
        m: 1,
        mass: Box::new(|_| nalgebra::DMatrix::from_element(1, 1, 1.0)),
        stiffness: Box::new(|_| nalgebra::DMatrix::from_element(1, 1, 1.0)),
        load: Box::new(|_| DVector::from_element(1, 1.0)),
    };
    let tr = galerkin_ode_solve(&relax, 1.0, 1000)?;
    let err = tr.times.iter().zip(&tr.states).map(|(t, g)| (g[0] - (1.0 - (-t).exp())).abs()).fold(0.0, f64::max);
    rep.le("Galerkin ODE vs 1 - exp(-t)", err, 1e-8, "RK4, 1000 steps");
    let zero = sine_system(6, |x, _| if x < 0.4 { 3.0 } else { 1.0 }, |_, _| 2.0, |_, _| 0.0, 32);
    let tz = galerkin_ode_solve(&zero, 1.0, 100)?;
    rep.le("Galerkin ODE zero load", tz.states.iter().map(|g| g.amax()).fold(0.0, f64::max), 0.0, "g stays 0");
    let gamma_e = 0.5;
    let sys = sine_system(
        8,
        |x, _| if x < 0.4 { 3.0 } else { 1.0 },
        move |x, _| if x < 0.6 { gamma_e } else { 2.0 },
        |x, t| (3.0 * x + t).sin() + 1.0,
        40,
    );
    let tr = galerkin_ode_solve(&sys, 1.0, 400)?;
    let worst = energy_history(&sys, &tr).iter().skip(1).map(|(u, f)| u - f / gamma_e).fold(f64::NEG_INFINITY, f64::max);
    rep.le("energy |u_m|_X <= |f|_X'/gamma", worst, 0.0, "max over t of |u_m|_X(0,t) - |f|/gamma");

    // Piola
    let z = Vec2::new(0.7, -0.2);
    rep.le("Piola identity map", (piola_apply(&Mat2::identity(), z)? - z).norm(), 0.0, "");
    rep.le("Piola divergence preservation", piola_divergence_defect(), 1e-6, "affine maps, FD");
    let cell = CellularFlow { amp: 1.0, growth: 0.5 };
    let mut det_err: f64 = 0.0;
    for i in 1..8 {
        for j in 1..8 {
            let (_, jac) = flow(&cell, Vec2::new(i as f64 / 8.0, j as f64 / 8.0), 1.0);
            det_err = det_err.max((jac.determinant() - 1.0).abs());
        }
    }
    rep.le("det J Phi_t = 1 (div-free flow)", det_err, 1e-8, "RK4 step 1e-3, t = 1");
    let (rel, ratio, cmax) = piola_bound_check(&cell, cfg.family, &mut rng)?;
    rep.le("u' = R u + u_dot", rel, 1e-6, "central differences along trajectories");
    rep.le("|u' - u_dot| <= C |u| (family)", ratio, cmax * (1.0 + 1e-6), format!("{} fields, C = sup |R| = {cmax:.4}", cfg.family));

    // partial integration
    rep.le("partial integration, rho=1, w=0", identities::partint_static(1.0), 1e-10, "u = t sin(pi x)");
    let (res, scale) = identities::partint_rotation(0.2, 1.1);
    rep.le("partial integration, rotation", res, 1e-8, format!("unit disk, |lhs| = {scale:.3}"));
    let aligned = identities::partint_two_phase(8, true);
    rep.le("partial integration, two-phase exact", aligned, 1e-10, "interface-aligned quadrature");
    let seq: Vec<f64> = [8, 16, 32, 64].iter().map(|&n| identities::partint_two_phase(n, false)).collect();
    let conv = seq.windows(2).all(|w| w[1] < w[0]) && seq[3] < 0.25 * seq[0];
    rep.push("partial integration, two-phase unaligned", conv, seq[3], seq[0], format!("residuals n=8..64: {:.2e} {:.2e} {:.2e} {:.2e}", seq[0], seq[1], seq[2], seq[3]));

    // trace ratio
    let ts = identities::trace_ratio_study(&mut rng, cfg.family.min(40), 24, 12);
    rep.push("trace ratio finite", ts.all_finite, ts.max_ratio_coarse, f64::INFINITY, "");
    rep.le("trace ratio stable under refinement", ts.relative_change, 0.05, format!("max ratio {:.4} -> {:.4}", ts.max_ratio_coarse, ts.max_ratio_fine));
    rep.le("trace ratio homogeneous", ts.homogeneity_defect, 1e-12, "u -> 2u");

    // Garding
    let gc = identities::garding_check(&mut rng, 12, 3, 6);
    let stable = (gc.m_fine - gc.m_coarse).abs() <= 0.05 * gc.m_fine.max(1e-3);
    rep.le("Garding M below 4 mu_max |grad w|", gc.m_fine, gc.m_bound, format!("M estimate {:.4}", gc.m_fine));
    rep.push("Garding M stable under refinement", stable, gc.m_fine, gc.m_coarse, format!("coarse {:.4}, fine {:.4}", gc.m_coarse, gc.m_fine));
    Ok(rep)
}

/// Max `|div(P z)|` for divergence-free polynomial `z` under affine maps,
/// by central differences.
pub fn piola_divergence_defect() -> f64 {
    // z = curl of psi = x^3 y - x y^2 + 2 x^2
    let z = |p: Vec2| Vec2::new(p[0].powi(3) - 2.0 * p[0] * p[1], -(3.0 * p[0] * p[0] * p[1] - p[1] * p[1] + 4.0 * p[0]));
    let maps = [Mat2::new(2.0, 1.0, 1.0, 1.0), Mat2::new(1.0, 0.5, 0.0, 1.0), Mat2::new(0.3, -1.2, 0.8, 2.0)];
    let c = Vec2::new(0.1, -0.3);
    let mut worst: f64 = 0.0;
    for g in &maps {
        let ginv = g.try_inverse().expect("invertible");
        // (P z)(y) = G z(G^{-1}(y - c)) / det G
        let pz = |y: Vec2| piola_apply(g, z(ginv * (y - c))).expect("regular map");
        let h = 1e-4;
        for &y in &[Vec2::new(0.3, 0.4), Vec2::new(-1.0, 2.0), Vec2::new(0.9, -0.7)] {
            let dx = (pz(y + Vec2::new(h, 0.0))[0] - pz(y - Vec2::new(h, 0.0))[0]) / (2.0 * h);
            let dy = (pz(y + Vec2::new(0.0, h))[1] - pz(y - Vec2::new(0.0, h))[1]) / (2.0 * h);
            worst = worst.max((dx + dy).abs());
        }
    }
    worst
}

/// Compares the finite-difference Piola derivative with `R u + u_dot` and
/// checks `|u' - u_dot|_{L2} <= sup|R| |u|_{L2}` over a random family.
/// Returns `(max relative defect, max ratio, sup|R|)`.
pub fn piola_bound_check(fl: &CellularFlow, family: usize, rng: &mut ChaCha8Rng) -> Result<(f64, f64, f64)> {
    let mut samples = Vec::new();
    let mut cmax: f64 = 0.0;
    let xs = galerkin::composite_points(3, 2);
    for &t in &[0.25, 0.5, 0.75] {
        for &(x, wx) in &xs {
            for &(y, wy) in &xs {
                let p = Vec2::new(x, y);
                let s = sample_trajectory(fl, p, t, 2e-5)?;
                let r = piola::matrix_r(fl, p, t);
                cmax = cmax.max(nalgebra::DMatrix::from_column_slice(2, 2, r.as_slice()).singular_values()[0]);
                samples.push((s, r, wx * wy));
            }
        }
    }
    let mut worst_rel: f64 = 0.0;
    let mut ratio: f64 = 0.0;
    for _ in 0..family {
        let u = TrigField::random(rng);
        let (mut num, mut den) = (0.0, 0.0);
        for (s, r, w) in &samples {
            let up = piola_material_derivative(&u, s);
            let ud = u.material(fl, s.x, s.t);
            let ru = r * u.value(s.x, s.t);
            worst_rel = worst_rel.max((up - ud - ru).norm() / (up.norm() + ud.norm()).max(1e-12));
            num += w * (up - ud).norm_squared();
            den += w * u.value(s.x, s.t).norm_squared();
        }
        ratio = ratio.max(num.sqrt() / den.sqrt());
    }
    Ok((worst_rel, ratio, cmax))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_above_continuity_rejected() {
        let cfg = LabConfig { gamma: 3.0, big_gamma: 1.0, ..Default::default() };
        assert!(matches!(run_suite(&cfg), Err(Error::Config(_))));
    }

    #[test]
    fn affine_piola_preserves_divergence() {
        assert!(piola_divergence_defect() <= 1e-6);
    }
}
