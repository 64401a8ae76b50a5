//! JSON ingestion of state and channel specs.
//!
//! State schemas:
//! ```json
//! {"type": "fock", "dims": [3, 3], "coefficients": [[re, im], ...]}
//! {"type": "fock_mixed", "dims": [3], "matrix": [[[re, im], ...], ...]}
//! {"type": "gaussian", "means": [0, 0], "cm": [[1, 0], [0, 1]]}
//! ```
//! Channel schemas:
//! ```json
//! {"type": "xy", "x": [[...], ...], "y": [[...], ...]}
//! {"type": "pure_loss", "eta": 0.8}
//! ```
//! Matrices are row-major nested arrays of decimal numbers; complex entries
//! are `[re, im]` pairs.  Parse failures carry the file path and the line
//! and column reported by the JSON parser.

use std::fs;
use std::path::Path;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Deserialize;

use crate::channels::{make_pure_loss, GaussianChannel};
use crate::error::{Error, Result};
use crate::fock::FockDensityOperator;
use crate::phase_space::{CovarianceMatrix, GaussianState, MeansVector};

#[derive(Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
enum StateSpec {
    Fock {
        dims: Vec<usize>,
        coefficients: Vec<[f64; 2]>,
    },
    FockMixed {
        dims: Vec<usize>,
        matrix: Vec<Vec<[f64; 2]>>,
    },
    Gaussian {
        means: Vec<f64>,
        cm: Vec<Vec<f64>>,
    },
}

#[derive(Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
enum ChannelSpec {
    Xy { x: Vec<Vec<f64>>, y: Vec<Vec<f64>> },
    PureLoss { eta: f64 },
}

/// A state spec resolved into whichever representation it describes.
#[derive(Debug)]
pub enum LoadedState {
    Fock(FockDensityOperator),
    Gaussian(GaussianState),
}

impl LoadedState {
    pub fn n_modes(&self) -> usize {
        match self {
            LoadedState::Fock(f) => f.n_modes(),
            LoadedState::Gaussian(g) => g.n_modes(),
        }
    }
}

fn read_and_parse<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path.display().to_string(), e))?;
    serde_json::from_str(&text).map_err(|e| Error::parse(path.display().to_string(), e.to_string()))
}

fn real_matrix(path: &Path, name: &str, rows: &[Vec<f64>]) -> Result<DMatrix<f64>> {
    let n = rows.len();
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(Error::parse(
                path.display().to_string(),
                format!("{name}: row {i} has {} entries, expected {n}", row.len()),
            ));
        }
    }
    Ok(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
}

/// Load a state spec.
pub fn load_state(path: &Path) -> Result<LoadedState> {
    match read_and_parse::<StateSpec>(path)? {
        StateSpec::Fock { dims, coefficients } => {
            let coeffs: Vec<Complex64> = coefficients
                .iter()
                .map(|&[re, im]| Complex64::new(re, im))
                .collect();
            Ok(LoadedState::Fock(FockDensityOperator::build_pure_state(
                &dims, &coeffs,
            )?))
        }
        StateSpec::FockMixed { dims, matrix } => {
            let n = matrix.len();
            for (i, row) in matrix.iter().enumerate() {
                if row.len() != n {
                    return Err(Error::parse(
                        path.display().to_string(),
                        format!("matrix: row {i} has {} entries, expected {n}", row.len()),
                    ));
                }
            }
            let mat =
                DMatrix::from_fn(n, n, |i, j| Complex64::new(matrix[i][j][0], matrix[i][j][1]));
            Ok(LoadedState::Fock(FockDensityOperator::from_matrix(
                &dims, mat,
            )?))
        }
        StateSpec::Gaussian { means, cm } => {
            let cm = real_matrix(path, "cm", &cm)?;
            let state = GaussianState::new(
                MeansVector::new(DVector::from_vec(means))?,
                CovarianceMatrix::new(cm)?,
            )?;
            Ok(LoadedState::Gaussian(state))
        }
    }
}

/// Load a channel spec.
pub fn load_channel(path: &Path) -> Result<GaussianChannel> {
    match read_and_parse::<ChannelSpec>(path)? {
        ChannelSpec::Xy { x, y } => {
            let x = real_matrix(path, "x", &x)?;
            let y = real_matrix(path, "y", &y)?;
            GaussianChannel::new(x, y)
        }
        ChannelSpec::PureLoss { eta } => make_pure_loss(eta),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::path::PathBuf;

    fn scratch(name: &str, contents: &str) -> PathBuf {
        let path = std::env::temp_dir().join(format!("cvx-schema-{}-{name}", std::process::id()));
        fs::write(&path, contents).unwrap();
        path
    }

    #[test]
    fn loads_a_pure_fock_spec() {
        let path = scratch(
            "fock.json",
            r#"{"type":"fock","dims":[2,2],"coefficients":[[0.8,0],[0,0],[0,0],[0.6,0]]}"#,
        );
        let LoadedState::Fock(state) = load_state(&path).unwrap() else {
            panic!("expected a Fock state");
        };
        assert_eq!(state.dims(), &[2, 2]);
        assert_abs_diff_eq!(state.rho()[(0, 0)].re, 0.64, epsilon = 1e-12);
        fs::remove_file(path).unwrap();
    }

    #[test]
    fn loads_a_mixed_spec_and_rejects_ragged_rows() {
        let path = scratch(
            "mixed.json",
            r#"{"type":"fock_mixed","dims":[2],"matrix":[[[0.5,0],[0,0]],[[0,0],[0.5,0]]]}"#,
        );
        let LoadedState::Fock(state) = load_state(&path).unwrap() else {
            panic!("expected a Fock state");
        };
        assert_abs_diff_eq!(state.purity(), 0.5, epsilon = 1e-12);
        fs::remove_file(path).unwrap();

        let path = scratch(
            "ragged.json",
            r#"{"type":"fock_mixed","dims":[2],"matrix":[[[0.5,0]],[[0,0],[0.5,0]]]}"#,
        );
        assert!(matches!(load_state(&path), Err(Error::Parse { .. })));
        fs::remove_file(path).unwrap();
    }

    #[test]
    fn loads_a_gaussian_spec() {
        let path = scratch(
            "gauss.json",
            r#"{"type":"gaussian","means":[0.5,-0.25],"cm":[[1,0],[0,1]]}"#,
        );
        let LoadedState::Gaussian(state) = load_state(&path).unwrap() else {
            panic!("expected a Gaussian state");
        };
        assert_eq!(state.n_modes(), 1);
        assert_abs_diff_eq!(state.means().vector()[0], 0.5, epsilon = 1e-15);
        fs::remove_file(path).unwrap();
    }

    #[test]
    fn loads_channels_in_both_forms() {
        let path = scratch("loss.json", r#"{"type":"pure_loss","eta":0.8}"#);
        let ch = load_channel(&path).unwrap();
        assert_abs_diff_eq!(ch.x()[(0, 0)], 0.8_f64.sqrt(), epsilon = 1e-15);
        fs::remove_file(path).unwrap();

        let path = scratch(
            "xy.json",
            r#"{"type":"xy","x":[[1,0],[0,1]],"y":[[0,0],[0,0]]}"#,
        );
        let ch = load_channel(&path).unwrap();
        assert_eq!(ch.n_modes(), 1);
        fs::remove_file(path).unwrap();
    }

    #[test]
    fn malformed_input_reports_path_and_position() {
        let path = scratch("broken.json", r#"{"type":"fock","dims":[2,"#);
        let err = load_state(&path).unwrap_err();
        let text = err.to_string();
        assert!(matches!(err, Error::Parse { .. }));
        assert!(text.contains("broken"), "path missing from: {text}");
        assert!(text.contains("line"), "position missing from: {text}");
        fs::remove_file(path).unwrap();

        let missing = std::env::temp_dir().join("cvx-schema-does-not-exist.json");
        assert!(matches!(load_state(&missing), Err(Error::Io { .. })));

        let path = scratch("unknown.json", r#"{"type":"matrix_product","bond":7}"#);
        assert!(matches!(load_state(&path), Err(Error::Parse { .. })));
        fs::remove_file(path).unwrap();
    }
}
