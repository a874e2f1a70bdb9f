//! Parameter-plane sweeps. Cells are independent and fan out across worker
//! threads under the `parallel` feature; results are assembled by grid index
//! so output never depends on scheduling.

use num_complex::Complex64;

use crate::error::Error;
use crate::params::PlasmaParameters;
use crate::spectrum::{classify, Region};

/// start:stop:count axis description.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl GridSpec {
    pub fn new(start: f64, stop: f64, count: usize) -> crate::Result<Self> {
        if !(start.is_finite() && stop.is_finite()) || count < 2 || stop < start {
            return Err(Error::InvalidParameters {
                field: "grid",
                message: format!("need finite start <= stop and count >= 2, got {start}:{stop}:{count}"),
            });
        }
        Ok(Self { start, stop, count })
    }

    pub fn points(&self) -> Vec<f64> {
        let n = self.count;
        (0..n)
            .map(|k| self.start + (self.stop - self.start) * k as f64 / (n - 1) as f64)
            .collect()
    }
}

/// Outcome of classifying one (gamma, eps) cell.
#[derive(Debug, Clone, PartialEq)]
pub enum CellOutcome {
    Classified { kappa: u32, region: Region },
    NearL,
    Failed(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModeMapCell {
    pub gamma: f64,
    pub eps: f64,
    pub outcome: CellOutcome,
}

/// Classify every cell of the (gamma, eps) grid, row-major with gamma as the
/// outer axis, both ascending.
pub fn mode_map(gammas: &[f64], epss: &[f64]) -> Vec<ModeMapCell> {
    let cells: Vec<(f64, f64)> = gammas
        .iter()
        .flat_map(|&g| epss.iter().map(move |&e| (g, e)))
        .collect();
    crate::map_slice(&cells, |&(gamma, eps)| ModeMapCell {
        gamma,
        eps,
        outcome: classify_cell(gamma, eps),
    })
}

fn classify_cell(gamma: f64, eps: f64) -> CellOutcome {
    let p = match PlasmaParameters::new(gamma, eps, 0.5, Complex64::new(1.0, 0.0)) {
        Ok(p) => p,
        Err(e) => return CellOutcome::Failed(e.to_string()),
    };
    match classify(&p) {
        Ok(cls) => CellOutcome::Classified {
            kappa: cls.kappa,
            region: cls.region,
        },
        Err(Error::NearL { .. }) | Err(Error::Resonance { .. }) => CellOutcome::NearL,
        Err(e) => CellOutcome::Failed(e.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_arithmetic() {
        let g = GridSpec::new(0.0, 1.0, 2).unwrap();
        assert_eq!(g.points(), vec![0.0, 1.0]);
        assert!(GridSpec::new(0.0, 1.0, 1).is_err());
        assert!(GridSpec::new(1.0, 0.0, 4).is_err());
    }

    #[test]
    fn two_by_two_map_has_four_rows_in_row_major_order() {
        let cells = mode_map(&[0.0, 1.0], &[0.1, 0.2]);
        assert_eq!(cells.len(), 4);
        assert_eq!((cells[0].gamma, cells[0].eps), (0.0, 0.1));
        assert_eq!((cells[1].gamma, cells[1].eps), (0.0, 0.2));
        assert_eq!((cells[2].gamma, cells[2].eps), (1.0, 0.1));
        assert_eq!((cells[3].gamma, cells[3].eps), (1.0, 0.2));
        for c in &cells {
            assert!(matches!(
                c.outcome,
                CellOutcome::Classified { kappa: 0 | 1, .. }
            ));
        }
    }

    #[test]
    fn sweep_is_deterministic() {
        let a = mode_map(&[0.0, 0.5, 1.0], &[0.1, 0.4]);
        let b = mode_map(&[0.0, 0.5, 1.0], &[0.1, 0.4]);
        assert_eq!(a, b);
    }
}
