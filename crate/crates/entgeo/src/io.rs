//! JSON wire formats shared by the CLI and any external tooling.
//!
//! States travel as `{"dims":[dA,dB],"re":[[...]],"im":[[...]]}` with
//! row-major entry blocks; channels use the same envelope with a
//! `"kraus":[...]` list of operator blocks; fitted ellipsoids carry their
//! center, shape and fit metadata.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::convexgeo::Ellipsoid;
use crate::error::{Error, Result};
use crate::infochannel::KrausChannel;
use crate::qstate::{CMatrix, DensityOperator, RMatrix, RVector};
use num_complex::Complex64;

/// Row-major real/imaginary blocks of a complex matrix.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComplexBlock {
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl ComplexBlock {
    pub fn pack(m: &CMatrix) -> Self {
        let rows = m.nrows();
        let cols = m.ncols();
        let mut re = vec![vec![0.0; cols]; rows];
        let mut im = vec![vec![0.0; cols]; rows];
        for i in 0..rows {
            for j in 0..cols {
                re[i][j] = m[(i, j)].re;
                im[i][j] = m[(i, j)].im;
            }
        }
        Self { re, im }
    }

    pub fn unpack(&self) -> Result<CMatrix> {
        let rows = self.re.len();
        if rows == 0 || self.im.len() != rows {
            return Err(Error::MalformedFile(
                "re/im blocks must be nonempty and equally sized".into(),
            ));
        }
        let cols = self.re[0].len();
        if self
            .re
            .iter()
            .chain(self.im.iter())
            .any(|row| row.len() != cols)
        {
            return Err(Error::MalformedFile("ragged matrix rows".into()));
        }
        let mut m = CMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = Complex64::new(self.re[i][j], self.im[i][j]);
            }
        }
        Ok(m)
    }
}

/// On-disk form of a density operator.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StateJson {
    pub dims: Vec<usize>,
    #[serde(flatten)]
    pub matrix: ComplexBlock,
}

impl StateJson {
    pub fn pack(rho: &DensityOperator) -> Self {
        Self {
            dims: rho.dims().to_vec(),
            matrix: ComplexBlock::pack(rho.matrix()),
        }
    }

    pub fn unpack(&self) -> Result<DensityOperator> {
        DensityOperator::new(self.matrix.unpack()?, self.dims.clone())
    }
}

/// On-disk form of a Kraus channel: the state envelope plus a `kraus`
/// operator list. `dims` records the input subsystem dimensions.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ChannelJson {
    pub dims: Vec<usize>,
    pub kraus: Vec<ComplexBlock>,
}

impl ChannelJson {
    pub fn pack(ch: &KrausChannel) -> Self {
        Self {
            dims: vec![ch.dim_in()],
            kraus: ch.operators().iter().map(ComplexBlock::pack).collect(),
        }
    }

    pub fn unpack(&self) -> Result<KrausChannel> {
        let ops = self
            .kraus
            .iter()
            .map(|b| b.unpack())
            .collect::<Result<Vec<_>>>()?;
        KrausChannel::new(ops)
    }
}

/// On-disk form of a fitted classifier ellipsoid with its provenance.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EllipsoidJson {
    pub center: Vec<f64>,
    pub shape: Vec<Vec<f64>>,
    pub eps: f64,
    pub ensemble_norm: f64,
    pub dims: Vec<usize>,
}

impl EllipsoidJson {
    pub fn pack(e: &Ellipsoid, eps: f64, ensemble_norm: f64, dims: (usize, usize)) -> Self {
        let n = e.dim();
        let shape = (0..n)
            .map(|i| (0..n).map(|j| e.shape()[(i, j)]).collect())
            .collect();
        Self {
            center: e.center().iter().copied().collect(),
            shape,
            eps,
            ensemble_norm,
            dims: vec![dims.0, dims.1],
        }
    }

    pub fn unpack(&self) -> Result<Ellipsoid> {
        let n = self.center.len();
        if self.shape.len() != n || self.shape.iter().any(|row| row.len() != n) {
            return Err(Error::MalformedFile("shape block must be n x n".into()));
        }
        let center = RVector::from_row_slice(&self.center);
        let shape = RMatrix::from_fn(n, n, |i, j| self.shape[i][j]);
        Ellipsoid::new(center, shape)
    }

    pub fn dims_pair(&self) -> Result<(usize, usize)> {
        if self.dims.len() != 2 {
            return Err(Error::MalformedFile("dims must list two subsystems".into()));
        }
        Ok((self.dims[0], self.dims[1]))
    }
}

pub fn save_state(path: &Path, rho: &DensityOperator) -> Result<()> {
    fs::write(path, serde_json::to_string_pretty(&StateJson::pack(rho))?)?;
    Ok(())
}

pub fn load_state(path: &Path) -> Result<DensityOperator> {
    let raw = fs::read_to_string(path)?;
    serde_json::from_str::<StateJson>(&raw)?.unpack()
}

pub fn load_channel(path: &Path) -> Result<KrausChannel> {
    let raw = fs::read_to_string(path)?;
    serde_json::from_str::<ChannelJson>(&raw)?.unpack()
}

pub fn save_channel(path: &Path, ch: &KrausChannel) -> Result<()> {
    fs::write(path, serde_json::to_string_pretty(&ChannelJson::pack(ch))?)?;
    Ok(())
}

pub fn save_ellipsoid(
    path: &Path,
    e: &Ellipsoid,
    eps: f64,
    ensemble_norm: f64,
    dims: (usize, usize),
) -> Result<()> {
    let packed = EllipsoidJson::pack(e, eps, ensemble_norm, dims);
    fs::write(path, serde_json::to_string_pretty(&packed)?)?;
    Ok(())
}

pub fn load_ellipsoid(path: &Path) -> Result<(Ellipsoid, EllipsoidJson)> {
    let raw = fs::read_to_string(path)?;
    let packed: EllipsoidJson = serde_json::from_str(&raw)?;
    Ok((packed.unpack()?, packed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entdetect::fit_separable_mvce;
    use crate::qstate::{bell_state, sample_state, StateKind};

    #[test]
    fn state_json_roundtrip() {
        let rho = sample_state(StateKind::MixedHs, (2, 3), 5).unwrap();
        let packed = StateJson::pack(&rho);
        let text = serde_json::to_string(&packed).unwrap();
        assert!(text.contains("\"dims\""));
        assert!(text.contains("\"re\""));
        let back = serde_json::from_str::<StateJson>(&text).unwrap().unpack().unwrap();
        assert!((back.matrix() - rho.matrix()).norm() < 1e-14);
        assert_eq!(back.dims(), rho.dims());
    }

    #[test]
    fn channel_json_roundtrip() {
        let ch = KrausChannel::erasure(0.25).unwrap();
        let text = serde_json::to_string(&ChannelJson::pack(&ch)).unwrap();
        let back = serde_json::from_str::<ChannelJson>(&text).unwrap().unpack().unwrap();
        assert_eq!(back.dim_in(), 2);
        assert_eq!(back.dim_out(), 3);
    }

    #[test]
    fn ellipsoid_json_roundtrip() {
        let e = fit_separable_mvce(2, 2, 0.5, 1e-5).unwrap();
        let packed = EllipsoidJson::pack(&e, 1e-5, 0.5, (2, 2));
        let text = serde_json::to_string(&packed).unwrap();
        let parsed: EllipsoidJson = serde_json::from_str(&text).unwrap();
        let back = parsed.unpack().unwrap();
        assert!((back.center() - e.center()).norm() < 1e-14);
        assert!((back.shape() - e.shape()).norm() < 1e-12);
        assert_eq!(parsed.dims_pair().unwrap(), (2, 2));

        let singlet = bell_state(4).unwrap();
        let d1 = crate::entdetect::classify(&singlet, &e).unwrap().1;
        let d2 = crate::entdetect::classify(&singlet, &back).unwrap().1;
        assert!((d1 - d2).abs() < 1e-10);
    }

    #[test]
    fn malformed_blocks_are_rejected() {
        let block = ComplexBlock {
            re: vec![vec![1.0, 0.0], vec![0.0]],
            im: vec![vec![0.0, 0.0], vec![0.0, 0.0]],
        };
        assert!(block.unpack().is_err());
    }
}
