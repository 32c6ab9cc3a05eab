//! The scattering cascade: wavelet convolution, modulus, low-pass
//! averaging, final 2^J decimation. All convolutions run at full
//! resolution; decimation happens once at the end of each path.

use super::{path_index, FilterBank, ScatterConfig, ScatterPath};
use crate::error::{CxrError, Result};
use crate::tensor::{concat_channels, downsample2d, fft2, ifft2, modulus, Tensor};

/// Scattering coefficients [h, w, C] plus the descriptor of every channel.
#[derive(Debug, Clone)]
pub struct ScatterOutput {
    pub coeffs: Tensor,
    pub paths: Vec<ScatterPath>,
}

/// WST block outputs: scattering + mask channel, and the binary mask.
#[derive(Debug, Clone)]
pub struct WstOutput {
    /// [h, w, C+1]: scattering coefficients with the down-sampled floating
    /// point mask appended as the last channel.
    pub features: Tensor,
    /// [h, w, 1] in {0,1}: down-sampled mask thresholded at 0.5 (inclusive).
    pub binary_mask: Tensor,
    /// [h, w]: the down-sampled floating point mask itself.
    pub float_mask_ds: Tensor,
}

fn spectrum_times(spec: &Tensor, kernel_hat: &Tensor) -> Result<Tensor> {
    spec.mul_complex(kernel_hat)
}

/// Low-pass with phi and decimate by 2^J: the averaging step A_J.
fn average_and_decimate(spec: &Tensor, fb: &FilterBank, factor: usize) -> Result<Tensor> {
    let smoothed = ifft2(&spectrum_times(spec, fb.phi())?)?.real();
    downsample2d(&smoothed, factor)
}

/// Order-0/1/2 scattering coefficients of a real image.
pub fn scatter(x: &Tensor, fb: &FilterBank, cfg: &ScatterConfig) -> Result<ScatterOutput> {
    if x.is_complex() || x.rank() != 2 || x.shape() != [cfg.height, cfg.width] {
        return Err(CxrError::Shape(format!(
            "scatter: expected real [{}, {}] input, got {:?}",
            cfg.height,
            cfg.width,
            x.shape()
        )));
    }
    if fb.cfg() != cfg {
        return Err(CxrError::Shape(format!(
            "scatter: filter bank built for {:?}, input config {:?}",
            fb.cfg(),
            cfg
        )));
    }
    let factor = cfg.downsample_factor();
    let paths = path_index(cfg.j, cfg.l);
    let mut channels: Vec<Tensor> = Vec::with_capacity(paths.len());

    let x_spec = fft2(x)?;
    // S0 = x * phi, decimated.
    channels.push(average_and_decimate(&x_spec, fb, factor)?);

    // First order: U1 = |x * psi_{j1,t1}|, S1 = U1 * phi decimated.
    // U1 spectra are kept for the second-order pass.
    let mut u1_specs: Vec<(usize, Tensor)> = Vec::with_capacity(cfg.j * cfg.l);
    for j1 in 0..cfg.j {
        for t1 in 0..cfg.l {
            let u1 = modulus(&ifft2(&spectrum_times(&x_spec, fb.psi(j1, t1))?)?);
            let u1_spec = fft2(&u1)?;
            channels.push(average_and_decimate(&u1_spec, fb, factor)?);
            u1_specs.push((j1, u1_spec));
        }
    }

    // Second order: U2 = |U1 * psi_{j2,t2}| for j2 > j1, S2 = U2 * phi.
    for (j1, u1_spec) in &u1_specs {
        for j2 in (j1 + 1)..cfg.j {
            for t2 in 0..cfg.l {
                let u2 = modulus(&ifft2(&spectrum_times(u1_spec, fb.psi(j2, t2))?)?);
                let u2_spec = fft2(&u2)?;
                channels.push(average_and_decimate(&u2_spec, fb, factor)?);
            }
        }
    }

    let views: Vec<&Tensor> = channels.iter().collect();
    let stacked = stack_channels(&views)?;
    debug_assert_eq!(stacked.shape()[2], paths.len());
    Ok(ScatterOutput {
        coeffs: stacked,
        paths,
    })
}

/// Stack rank-2 [h,w] maps into one [h,w,C] tensor.
fn stack_channels(maps: &[&Tensor]) -> Result<Tensor> {
    let reshaped: Vec<Tensor> = maps
        .iter()
        .map(|m| {
            let (h, w) = (m.shape()[0], m.shape()[1]);
            (*m).clone().reshape(&[h, w, 1])
        })
        .collect::<Result<_>>()?;
    let views: Vec<&Tensor> = reshaped.iter().collect();
    concat_channels(&views)
}

/// The classifier front end: scattering coefficients with the down-sampled
/// floating point mask as the last channel, plus the binary mask derived by
/// decimating and thresholding at 0.5 (inclusive).
pub fn wst_block(
    x: &Tensor,
    float_mask: &Tensor,
    fb: &FilterBank,
    cfg: &ScatterConfig,
) -> Result<WstOutput> {
    if !x.same_shape(float_mask) {
        return Err(CxrError::Shape(format!(
            "wst_block: image {:?} vs mask {:?}",
            x.shape(),
            float_mask.shape()
        )));
    }
    if float_mask.data().iter().any(|&v| !(0.0..=1.0).contains(&v)) {
        return Err(CxrError::Validation(
            "wst_block: float mask values must lie in [0, 1]".into(),
        ));
    }
    let sc = scatter(x, fb, cfg)?;
    // The mask channel is plain strided decimation: thresholding then
    // decimating equals decimating then thresholding, which keeps the
    // binary mask consistent with the float channel.
    let mask_ds = downsample2d(float_mask, cfg.downsample_factor())?;
    let (h, w) = (mask_ds.shape()[0], mask_ds.shape()[1]);
    let mask_ch = mask_ds.clone().reshape(&[h, w, 1])?;
    let features = concat_channels(&[&sc.coeffs, &mask_ch])?;
    let binary_mask = mask_ds.map(|v| if v >= 0.5 { 1.0 } else { 0.0 }).reshape(&[h, w, 1])?;
    Ok(WstOutput {
        features,
        binary_mask,
        float_mask_ds: mask_ds,
    })
}
