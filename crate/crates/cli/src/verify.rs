//! Invariant checks run by `tomokit verify`.

use serde::Serialize;

use tomokit::frames::{frame_from_angle, FrameParams, LinearGrid, PolarGrid};
use tomokit::infotheory::{
    linear_entropy, linear_entropy_gram, reduced_eigenvalues, von_neumann_reduced, BipartiteSpec,
};
use tomokit::multiparticle::{nparticle_tomogram, overlap, reduced_tomogram, NParticleState};
use tomokit::quad::{integrate_line, QuadConfig};
use tomokit::states::State;
use tomokit::tomography::{oracle_tomogram_at, time_dependent_tomogram, tomogram_norm_with};
use tomokit::Result;

#[derive(Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Largest deviation seen against the allowed bound.
fn check(name: &'static str, worst: f64, bound: f64) -> Check {
    Check { name, passed: worst <= bound, detail: format!("max deviation {worst:.3e}, bound {bound:.1e}") }
}

fn probes() -> Result<Vec<(FrameParams, f64)>> {
    let mut out = Vec::new();
    for theta in [0.3, 1.1, 2.0, 2.8] {
        let f = frame_from_angle(theta, 1.0)?;
        out.extend([-1.2, 0.3, 1.7].map(|x| (f, x)));
    }
    Ok(out)
}

pub fn state(st: &State, t: f64, cfg: &QuadConfig) -> Result<Vec<Check>> {
    let w = |f: &FrameParams, x: f64| time_dependent_tomogram(st, t, f, x);
    let mut checks = Vec::new();

    let frames = PolarGrid::new(16)?.frames()?;
    let xs = LinearGrid::new(-10.0, 10.0, 81)?.points();
    let mut bad = 0usize;
    for f in &frames {
        for &x in &xs {
            let v = w(f, x)?;
            if !(v >= 0.0 && v.is_finite()) {
                bad += 1;
            }
        }
    }
    checks.push(Check {
        name: "nonnegative",
        passed: bad == 0,
        detail: format!("{bad} of {} grid values negative or not finite", frames.len() * xs.len()),
    });

    let mut homogeneity = 0.0f64;
    let mut symmetry = 0.0f64;
    let mut oracle = 0.0f64;
    for (f, x) in probes()? {
        let v = w(&f, x)?;
        let scale = v.max(1.0);
        for lambda in [-2.0, 0.5] {
            let scaled = w(&f.scaled(lambda)?, lambda * x)?;
            homogeneity = homogeneity.max((scaled * lambda.abs() - v).abs() / scale);
        }
        symmetry = symmetry.max((w(&f.scaled(-1.0)?, -x)? - v).abs() / scale);
        oracle = oracle.max((oracle_tomogram_at(st, t, &f, x, cfg)? - v).abs() / scale);
    }
    checks.push(check("homogeneity", homogeneity, 1e-10));
    checks.push(check("symmetry", symmetry, 1e-10));
    checks.push(check("oracle_agreement", oracle, 1e-6));

    if st.is_normalized() {
        let mut worst = 0.0f64;
        for theta in [0.0, 0.7, std::f64::consts::FRAC_PI_2, 2.4] {
            let n = tomogram_norm_with(st, t, &frame_from_angle(theta, 1.0)?, cfg)?;
            worst = worst.max((n - 1.0).abs());
        }
        checks.push(check("normalization", worst, 1e-6));
    } else {
        checks.push(Check { name: "normalization", passed: true, detail: "not applicable: plane-wave state".into() });
    }
    Ok(checks)
}

pub fn bipartite(bp: &BipartiteSpec) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let sl = linear_entropy(bp)?;
    checks.push(check("linear_entropy_gram", (sl - linear_entropy_gram(bp)?).abs(), 1e-12));
    let s = von_neumann_reduced(bp)?;
    checks.push(Check { name: "entropy_ordering", passed: s >= sl - 1e-12, detail: format!("S = {s}, S_L = {sl}") });
    let [l1, l2] = reduced_eigenvalues(bp)?;
    checks.push(check("unit_trace", (l1 + l2 - 1.0).abs(), 1e-12));

    if let Some(factors) = &bp.factors {
        let (j, l) = (State::new(factors.j.clone())?, State::new(factors.l.clone())?);
        let mut worst = (overlap(&l, &j)? - bp.c_lj).norm();
        if let (Some(k), Some(m)) = (&factors.k, &factors.m) {
            worst = worst.max((overlap(&State::new(k.clone())?, &State::new(m.clone())?)? - bp.c_km).norm());
        }
        checks.push(check("overlap_consistency", worst, 1e-8));

        if factors.k.is_some() && factors.m.is_some() {
            let full = NParticleState::from_bipartite(bp)?;
            let f = [frame_from_angle(0.7, 1.0)?, frame_from_angle(2.1, 1.0)?];
            let cfg = QuadConfig::with_tol(1e-12);
            let mut worst = 0.0f64;
            for x1 in [-1.0, 0.2, 1.4] {
                let mut failure = None;
                let marginal = integrate_line(
                    |x2| {
                        nparticle_tomogram(&full, 0.0, &f, &[x1, x2]).unwrap_or_else(|e| {
                            failure.get_or_insert(e);
                            0.0
                        })
                    },
                    0.0,
                    1.0,
                    &[],
                    &cfg,
                )?;
                if let Some(e) = failure {
                    return Err(e);
                }
                worst = worst.max((marginal - reduced_tomogram(bp, 0.0, &f[0], x1)?).abs());
            }
            checks.push(check("reduced_marginal", worst, 1e-6));
        }
    }
    Ok(checks)
}
