use serde::{Deserialize, Serialize};

use super::{closed_form_tomogram, oracle::oracle_tomogram_at, snapshot};
use crate::error::{Error, Result};
use crate::frames::FrameParams;
use crate::parallel::map_indices;
use crate::quad::QuadConfig;
use crate::states::State;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    ClosedForm,
    Oracle,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FieldOptions {
    pub time: f64,
    pub provenance: Provenance,
    /// Worker threads; `None` lets rayon decide.
    pub jobs: Option<usize>,
    /// Only used by the oracle.
    pub quad: QuadConfig,
}

impl Default for FieldOptions {
    fn default() -> Self {
        FieldOptions { time: 0.0, provenance: Provenance::ClosedForm, jobs: None, quad: QuadConfig::with_tol(1e-10) }
    }
}

/// Tomogram values on a frames x `X` grid; `values[i][j]` belongs to
/// `frames[i]` and `x_grid[j]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TomogramField {
    pub frames: Vec<FrameParams>,
    #[serde(rename = "X_grid")]
    pub x_grid: Vec<f64>,
    pub values: Vec<Vec<f64>>,
    pub provenance: Provenance,
    /// False for plane-wave states, whose tomograms are not densities.
    pub normalized: bool,
    pub time: f64,
}

impl TomogramField {
    /// Trapezoid sum of each row over `x_grid`.
    pub fn trapezoid_sums(&self) -> Vec<f64> {
        self.values
            .iter()
            .map(|row| {
                row.windows(2).zip(self.x_grid.windows(2)).map(|(w, x)| 0.5 * (w[0] + w[1]) * (x[1] - x[0])).sum()
            })
            .collect()
    }

    /// Every value is finite and nonnegative; for normalized states every
    /// row sums to `1 +- eps`.
    pub fn check(&self, eps: f64) -> Result<()> {
        for (i, row) in self.values.iter().enumerate() {
            if let Some((j, v)) = row.iter().enumerate().find(|(_, v)| !(**v >= 0.0) || !v.is_finite()) {
                return Err(Error::Domain(format!("value {v} at frame {i}, X index {j}")));
            }
        }
        if self.normalized {
            for (i, s) in self.trapezoid_sums().into_iter().enumerate() {
                if (s - 1.0).abs() > eps {
                    return Err(Error::Domain(format!("frame {i} integrates to {s}")));
                }
            }
        }
        Ok(())
    }
}

/// Evaluate the tomogram of `state` on every pair of `frames` and `x_grid`.
pub fn evaluate_field(
    state: &State,
    frames: &[FrameParams],
    x_grid: &[f64],
    opts: &FieldOptions,
) -> Result<TomogramField> {
    let t = opts.time;
    let values = map_indices(frames.len(), opts.jobs, |i| {
        let f = &frames[i];
        match opts.provenance {
            Provenance::ClosedForm => {
                let (st, frame) = snapshot(state, t, f)?;
                x_grid.iter().map(|&x| closed_form_tomogram(&st, &frame, x)).collect()
            }
            Provenance::Oracle => x_grid.iter().map(|&x| oracle_tomogram_at(state, t, f, x, &opts.quad)).collect(),
        }
    })?;
    Ok(TomogramField {
        frames: frames.to_vec(),
        x_grid: x_grid.to_vec(),
        values,
        provenance: opts.provenance,
        normalized: state.is_normalized(),
        time: t,
    })
}
