//! 2D wavelet scattering: Morlet filter bank and the order-0/1/2 transform
//! used as the fixed (non-learned) front end of the classifier.

mod filters;
mod transform;

pub use filters::{build_filterbank, FilterBank};
pub use transform::{scatter, wst_block, ScatterOutput, WstOutput};

use crate::error::{CxrError, Result};

/// Transform parameters: J dilation scales, L angular sectors, input extents.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScatterConfig {
    pub j: usize,
    pub l: usize,
    pub height: usize,
    pub width: usize,
}

impl ScatterConfig {
    pub fn new(j: usize, l: usize, height: usize, width: usize) -> Result<Self> {
        if j < 1 || l < 1 {
            return Err(CxrError::Parameter(format!(
                "scattering needs J >= 1 and L >= 1, got J={j}, L={l}"
            )));
        }
        if height < 1 || width < 1 {
            return Err(CxrError::Parameter(format!(
                "scattering needs positive extents, got {height}x{width}"
            )));
        }
        let inv = 1usize << j;
        if inv > height.min(width) {
            return Err(CxrError::Parameter(format!(
                "invariance scale 2^{j} = {inv} exceeds min extent of {height}x{width}"
            )));
        }
        Ok(ScatterConfig {
            j,
            l,
            height,
            width,
        })
    }

    /// Output spatial extents after the final 2^J decimation.
    pub fn output_extents(&self) -> (usize, usize) {
        let f = 1usize << self.j;
        (self.height.div_ceil(f), self.width.div_ceil(f))
    }

    pub fn downsample_factor(&self) -> usize {
        1 << self.j
    }
}

/// One scattering channel: which filter path produced it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScatterPath {
    Order0,
    Order1 { j1: usize, theta1: usize },
    Order2 { j1: usize, theta1: usize, j2: usize, theta2: usize },
}

impl ScatterPath {
    pub fn order(&self) -> usize {
        match self {
            ScatterPath::Order0 => 0,
            ScatterPath::Order1 { .. } => 1,
            ScatterPath::Order2 { .. } => 2,
        }
    }
}

/// Total channels: 1 + J*L + (1/2)*J*(J-1)*L^2. Order-2 paths are
/// restricted to j2 > j1, which is what makes the closed form count.
pub fn channel_count(j: usize, l: usize) -> usize {
    1 + j * l + j * (j - 1) / 2 * l * l
}

/// All channel descriptors in output order: order 0, then order 1 in
/// (j1, theta1) lexicographic order, then order 2 in (j1, theta1, j2, theta2)
/// lexicographic order with j2 > j1.
pub fn path_index(j: usize, l: usize) -> Vec<ScatterPath> {
    let mut paths = Vec::with_capacity(channel_count(j, l));
    paths.push(ScatterPath::Order0);
    for j1 in 0..j {
        for theta1 in 0..l {
            paths.push(ScatterPath::Order1 { j1, theta1 });
        }
    }
    for j1 in 0..j {
        for theta1 in 0..l {
            for j2 in (j1 + 1)..j {
                for theta2 in 0..l {
                    paths.push(ScatterPath::Order2 {
                        j1,
                        theta1,
                        j2,
                        theta2,
                    });
                }
            }
        }
    }
    debug_assert_eq!(paths.len(), channel_count(j, l));
    paths
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn channel_count_matches_paper_config() {
        assert_eq!(channel_count(2, 6), 49);
    }

    #[test]
    fn channel_count_no_order2_when_j_is_1() {
        for l in 1..10 {
            assert_eq!(channel_count(1, l), 1 + l);
        }
    }

    #[test]
    fn channel_count_matches_brute_force_enumeration() {
        // Independently enumerate every (j1,theta1,j2,theta2) with j2 > j1.
        for j in 1..5usize {
            for l in 1..7usize {
                let mut count = 1 + j * l;
                for j1 in 0..j {
                    for _t1 in 0..l {
                        for j2 in 0..j {
                            if j2 > j1 {
                                count += l;
                            }
                        }
                    }
                }
                assert_eq!(channel_count(j, l), count, "J={j} L={l}");
                assert_eq!(path_index(j, l).len(), count);
            }
        }
        assert_eq!(channel_count(3, 4), 61);
    }

    #[test]
    fn path_index_order2_count() {
        let paths = path_index(3, 4);
        let order2 = paths.iter().filter(|p| p.order() == 2).count();
        assert_eq!(order2, 3 * 2 / 2 * 16);
        assert_eq!(paths[0], ScatterPath::Order0);
    }

    #[test]
    fn config_rejects_oversized_invariance_scale() {
        assert!(ScatterConfig::new(3, 2, 7, 64).is_err());
        assert!(ScatterConfig::new(3, 2, 8, 64).is_ok());
        assert!(ScatterConfig::new(0, 2, 8, 8).is_err());
        assert!(ScatterConfig::new(1, 0, 8, 8).is_err());
    }

    #[test]
    fn output_extents_use_ceiling() {
        let cfg = ScatterConfig::new(2, 6, 300, 340).unwrap();
        assert_eq!(cfg.output_extents(), (75, 85));
        let odd = ScatterConfig::new(1, 2, 7, 7).unwrap();
        assert_eq!(odd.output_extents(), (4, 4));
    }
}
