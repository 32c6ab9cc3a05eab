//! Morlet filter bank construction.
//!
//! Band-pass filters are oriented Gabor functions with a Gaussian correction
//! term enforcing exactly zero mean; the low-pass is a plain Gaussian.
//! Filters are built in the spatial domain on the H x W torus (periodized
//! over +-2 wraps) and stored as Fourier-domain tensors.
//!
//! Parameterization: sigma_j = 0.8 * 2^j, center frequency xi_j =
//! (3*pi/4) / 2^j along orientation theta*pi/L, ellipse slant 4/L; low-pass
//! sigma_phi = 0.8 * 2^(J-1). The low-pass is L1-normalized (unit DC gain)
//! and the band-pass family is globally rescaled so that the
//! Littlewood-Paley sum stays at or below one, which makes the transform
//! non-expansive.

use super::ScatterConfig;
use crate::error::Result;
use crate::tensor::{fft2, Tensor};

const SIGMA0: f64 = 0.8;
const XI0: f64 = 3.0 * std::f64::consts::PI / 4.0;
/// Periodization wraps on each side when sampling the spatial filters.
const WRAPS: i64 = 2;

/// Fourier-domain Morlet wavelets psi_hat[(j, theta)] plus the Gaussian
/// low-pass phi_hat, with the measured Littlewood-Paley bounds.
#[derive(Debug, Clone)]
pub struct FilterBank {
    cfg: ScatterConfig,
    /// Complex [H,W] spectra, indexed j * L + theta.
    psi_hat: Vec<Tensor>,
    /// Real [H,W] spectrum with phi_hat[0,0] == 1.
    phi_hat: Tensor,
    /// max over the frequency grid of |phi_hat|^2 + 1/2 sum |psi_hat|^2.
    pub lp_max: f64,
    /// min of the same sum over the annulus pi/2^J <= |omega| <= pi.
    pub lp_min_annulus: f64,
}

impl FilterBank {
    pub fn cfg(&self) -> &ScatterConfig {
        &self.cfg
    }

    pub fn psi(&self, j: usize, theta: usize) -> &Tensor {
        debug_assert!(j < self.cfg.j && theta < self.cfg.l);
        &self.psi_hat[j * self.cfg.l + theta]
    }

    pub fn phi(&self) -> &Tensor {
        &self.phi_hat
    }

    /// Frame bound for the non-expansiveness estimate.
    pub fn frame_bound(&self) -> f64 {
        self.lp_max.sqrt()
    }

    /// Filter spectrum magnitudes tiled into one image (debug dump).
    /// Layout: J rows of L band-pass filters, then the low-pass alone.
    pub fn spectrum_grid(&self) -> Tensor {
        let (h, w) = (self.cfg.height, self.cfg.width);
        let rows = self.cfg.j + 1;
        let cols = self.cfg.l;
        let mut grid = Tensor::zeros(&[rows * h, cols * w]);
        let mut blit = |tile: &Tensor, row: usize, col: usize| {
            let mag = crate::tensor::modulus(tile);
            let peak = mag.max_abs().max(1e-300);
            for r in 0..h {
                for c in 0..w {
                    // fft-shift so the spectrum is centered in each tile
                    let (sr, sc) = ((r + h / 2) % h, (c + w / 2) % w);
                    grid.set2(row * h + r, col * w + c, mag.at2(sr, sc) / peak);
                }
            }
        };
        for j in 0..self.cfg.j {
            for theta in 0..self.cfg.l {
                blit(self.psi(j, theta), j, theta);
            }
        }
        blit(&self.phi_hat, self.cfg.j, 0);
        grid
    }
}

/// Periodized 2D Gabor sampled on the torus, returned as (real, imag)
/// planes. `xi` = 0 gives the plain Gaussian envelope.
fn gabor_spatial(
    h: usize,
    w: usize,
    sigma: f64,
    theta: f64,
    xi: f64,
    slant: f64,
) -> (Tensor, Tensor) {
    let (cos_t, sin_t) = (theta.cos(), theta.sin());
    // R * diag(1, slant^2) * R^T / (2 sigma^2)
    let a = (cos_t * cos_t + slant * slant * sin_t * sin_t) / (2.0 * sigma * sigma);
    let b = (cos_t * sin_t - slant * slant * cos_t * sin_t) / (2.0 * sigma * sigma);
    let c = (sin_t * sin_t + slant * slant * cos_t * cos_t) / (2.0 * sigma * sigma);
    let mut re = Tensor::zeros(&[h, w]);
    let mut im = Tensor::zeros(&[h, w]);
    for r in 0..h {
        for col in 0..w {
            let (mut sr, mut si) = (0.0, 0.0);
            for wr in -WRAPS..=WRAPS {
                for wc in -WRAPS..=WRAPS {
                    let x = r as f64 + (wr * h as i64) as f64;
                    let y = col as f64 + (wc * w as i64) as f64;
                    let quad = a * x * x + 2.0 * b * x * y + c * y * y;
                    if quad > 60.0 {
                        continue; // below 1e-26, irrelevant
                    }
                    let env = (-quad).exp();
                    let phase = xi * (x * cos_t + y * sin_t);
                    sr += env * phase.cos();
                    si += env * phase.sin();
                }
            }
            re.set2(r, col, sr);
            im.set2(r, col, si);
        }
    }
    (re, im)
}

fn interleave(re: &Tensor, im: &Tensor) -> Tensor {
    let mut data = Vec::with_capacity(2 * re.len());
    for i in 0..re.len() {
        data.push(re.data()[i]);
        data.push(im.data()[i]);
    }
    Tensor::from_vec_complex(re.shape(), data).expect("matching shapes")
}

/// Morlet spectrum: Gabor minus the Gaussian correction that zeroes the
/// mean, transformed to the frequency domain (imaginary residue dropped).
fn morlet_hat(h: usize, w: usize, sigma: f64, theta: f64, xi: f64, slant: f64) -> Tensor {
    let (g_re, g_im) = gabor_spatial(h, w, sigma, theta, xi, slant);
    let (env, _) = gabor_spatial(h, w, sigma, theta, 0.0, slant);
    let env_sum = env.sum();
    let k_re = g_re.sum() / env_sum;
    let k_im = g_im.sum() / env_sum;
    let re = g_re.sub(&env.scale(k_re)).expect("same shape");
    let im = g_im.sub(&env.scale(k_im)).expect("same shape");
    let hat = fft2(&interleave(&re, &im)).expect("non-empty");
    // The analytic Morlet has a real spectrum; keep only the real part so
    // psi_hat(0) is exactly the (zero) corrected mean.
    let real = hat.real();
    let mut data = Vec::with_capacity(2 * real.len());
    for &v in real.data() {
        data.push(v);
        data.push(0.0);
    }
    Tensor::from_vec_complex(&[h, w], data).expect("matching length")
}

/// Signed frequency of grid index k in an n-point DFT, in radians/sample.
fn grid_freq(k: usize, n: usize) -> f64 {
    let k = k as f64;
    let n = n as f64;
    if k <= n / 2.0 {
        std::f64::consts::TAU * k / n
    } else {
        std::f64::consts::TAU * (k - n) / n
    }
}

/// Build the J*L band-pass wavelets and the scale-2^J low-pass for `cfg`.
pub fn build_filterbank(cfg: &ScatterConfig) -> Result<FilterBank> {
    // Re-validate so stale configs cannot sneak past.
    let cfg = ScatterConfig::new(cfg.j, cfg.l, cfg.height, cfg.width)?;
    let (h, w) = (cfg.height, cfg.width);
    let slant = 4.0 / cfg.l as f64;

    let mut psi_hat = Vec::with_capacity(cfg.j * cfg.l);
    for j in 0..cfg.j {
        let sigma = SIGMA0 * (1 << j) as f64;
        let xi = XI0 / (1 << j) as f64;
        for theta in 0..cfg.l {
            let angle = theta as f64 * std::f64::consts::PI / cfg.l as f64;
            psi_hat.push(morlet_hat(h, w, sigma, angle, xi, slant));
        }
    }

    // Low-pass: Gaussian of scale 2^J, L1-normalized for unit DC gain.
    let sigma_phi = SIGMA0 * (1 << (cfg.j - 1)) as f64;
    let (phi_spatial, _) = gabor_spatial(h, w, sigma_phi, 0.0, 0.0, 1.0);
    let phi_spatial = phi_spatial.scale(1.0 / phi_spatial.sum());
    let phi_hat = fft2(&phi_spatial)?.real();

    // Littlewood-Paley sum with unit psi scale, then the largest global
    // rescale keeping max(LP) <= 1 (+eps). LP(0) = |phi_hat(0)|^2 = 1
    // exactly, so the bound is tight at DC by construction.
    let n = h * w;
    let mut gsq = vec![0.0; n]; // |phi|^2
    let mut ssq = vec![0.0; n]; // 1/2 sum |psi|^2, unscaled
    for i in 0..n {
        gsq[i] = phi_hat.data()[i] * phi_hat.data()[i];
    }
    for p in &psi_hat {
        for i in 0..n {
            let re = p.data()[2 * i];
            ssq[i] += 0.5 * re * re;
        }
    }
    let mut alpha_sq = f64::INFINITY;
    for i in 0..n {
        if ssq[i] > 1e-30 {
            alpha_sq = alpha_sq.min((1.0 + 1e-9 - gsq[i]) / ssq[i]);
        }
    }
    if !alpha_sq.is_finite() {
        alpha_sq = 1.0;
    }
    let alpha = alpha_sq.sqrt();
    for p in &mut psi_hat {
        *p = p.scale(alpha);
    }

    let mut lp_max: f64 = 0.0;
    let mut lp_min_annulus = f64::INFINITY;
    let band_lo = std::f64::consts::PI / (1 << cfg.j) as f64;
    let band_hi = std::f64::consts::PI;
    for r in 0..h {
        for c in 0..w {
            let i = r * w + c;
            let lp = gsq[i] + alpha_sq * ssq[i];
            lp_max = lp_max.max(lp);
            let freq = grid_freq(r, h).hypot(grid_freq(c, w));
            if freq >= band_lo && freq <= band_hi {
                lp_min_annulus = lp_min_annulus.min(lp);
            }
        }
    }
    if !lp_min_annulus.is_finite() {
        lp_min_annulus = 0.0;
    }

    Ok(FilterBank {
        cfg,
        psi_hat,
        phi_hat,
        lp_max,
        lp_min_annulus,
    })
}
