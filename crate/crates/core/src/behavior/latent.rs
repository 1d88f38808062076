use super::kernel::{minimal_kernel, total_dim, KernelRep, SignalBlock};
use crate::error::{dim_err, Result};
use crate::polymatrix::{smith_form, PolyMatrix};

/// Latent variable representation `R_w(d/dt) w = E(d/dt) l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatentRep {
    manifest: PolyMatrix,
    latent: PolyMatrix,
    signals: Vec<SignalBlock>,
}

impl LatentRep {
    pub fn new(manifest: PolyMatrix, latent: PolyMatrix, signals: Vec<SignalBlock>) -> Result<Self> {
        if manifest.rows() != latent.rows() {
            return dim_err(format!(
                "manifest part has {} rows, latent part {}",
                manifest.rows(),
                latent.rows()
            ));
        }
        if manifest.cols() != total_dim(&signals) {
            return dim_err(format!(
                "manifest part has {} columns but the signals have dimension {}",
                manifest.cols(),
                total_dim(&signals)
            ));
        }
        Ok(LatentRep {
            manifest,
            latent,
            signals,
        })
    }

    /// `R_w`, acting on the manifest signals.
    pub fn manifest(&self) -> &PolyMatrix {
        &self.manifest
    }

    /// `E`, acting on the latent signals.
    pub fn latent(&self) -> &PolyMatrix {
        &self.latent
    }

    pub fn signals(&self) -> &[SignalBlock] {
        &self.signals
    }

    pub fn latent_dim(&self) -> usize {
        self.latent.cols()
    }
}

/// Kernel representation of `{ w | exists l: R_w w = E l }`.
///
/// With `E = U [D 0; 0 0] V` the rows of `U^-1 E` beyond the rank vanish and
/// the leading rows can be met by some smooth `l` for every `w`, so the
/// manifest behavior is cut out by the trailing rows of `U^-1 R_w`.
pub fn eliminate_latent(l: &LatentRep) -> KernelRep {
    let sd = smith_form(&l.latent);
    let transformed = &sd.u_inv * &l.manifest;
    let trailing = transformed.select_rows(sd.rank()..transformed.rows());
    let k = KernelRep::new(trailing, l.signals.clone()).expect("columns preserved");
    minimal_kernel(&k)
}
