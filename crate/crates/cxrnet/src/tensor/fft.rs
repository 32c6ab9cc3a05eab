//! 2D FFT and Fourier-domain periodic convolution.
//!
//! Forward transform is unnormalized; the inverse carries the 1/(H*W)
//! factor. Arbitrary extents are supported (rustfft falls back to
//! mixed-radix/Bluestein internally).

use std::cell::RefCell;
use std::collections::HashMap;
use std::sync::Arc;

use rustfft::num_complex::Complex;
use rustfft::{Fft, FftPlanner};

use super::Tensor;
use crate::error::{CxrError, Result};

thread_local! {
    static PLANS: RefCell<PlanCache> = RefCell::new(PlanCache::new());
}

struct PlanCache {
    planner: FftPlanner<f64>,
    forward: HashMap<usize, Arc<dyn Fft<f64>>>,
    inverse: HashMap<usize, Arc<dyn Fft<f64>>>,
}

impl PlanCache {
    fn new() -> Self {
        PlanCache {
            planner: FftPlanner::new(),
            forward: HashMap::new(),
            inverse: HashMap::new(),
        }
    }
}

impl PlanCache {
    fn forward(&mut self, n: usize) -> Arc<dyn Fft<f64>> {
        self.forward
            .entry(n)
            .or_insert_with(|| self.planner.plan_fft_forward(n))
            .clone()
    }
    fn inverse(&mut self, n: usize) -> Arc<dyn Fft<f64>> {
        self.inverse
            .entry(n)
            .or_insert_with(|| self.planner.plan_fft_inverse(n))
            .clone()
    }
}

fn to_complex_buf(t: &Tensor) -> Vec<Complex<f64>> {
    let n = t.len();
    let d = t.data();
    if t.is_complex() {
        (0..n).map(|i| Complex::new(d[2 * i], d[2 * i + 1])).collect()
    } else {
        d.iter().map(|&x| Complex::new(x, 0.0)).collect()
    }
}

fn from_complex_buf(shape: &[usize], buf: &[Complex<f64>]) -> Tensor {
    let mut data = Vec::with_capacity(2 * buf.len());
    for z in buf {
        data.push(z.re);
        data.push(z.im);
    }
    Tensor::from_vec_complex(shape, data).expect("buffer length matches shape")
}

fn check_2d(t: &Tensor, op: &str) -> Result<(usize, usize)> {
    if t.rank() != 2 {
        return Err(CxrError::Shape(format!(
            "{op}: expected rank-2 tensor, got {:?}",
            t.shape()
        )));
    }
    let (h, w) = (t.shape()[0], t.shape()[1]);
    if h == 0 || w == 0 {
        return Err(CxrError::Shape(format!("{op}: empty tensor {:?}", t.shape())));
    }
    Ok((h, w))
}

/// Row-column decomposition over the cached 1D plans. `inverse` only flips
/// the transform direction; scaling is applied by the caller.
fn fft2_raw(buf: &mut [Complex<f64>], h: usize, w: usize, inverse: bool) {
    PLANS.with(|cache| {
        let mut cache = cache.borrow_mut();
        let row_plan = if inverse { cache.inverse(w) } else { cache.forward(w) };
        for r in 0..h {
            row_plan.process(&mut buf[r * w..(r + 1) * w]);
        }
        let col_plan = if inverse { cache.inverse(h) } else { cache.forward(h) };
        let mut col = vec![Complex::default(); h];
        for c in 0..w {
            for r in 0..h {
                col[r] = buf[r * w + c];
            }
            col_plan.process(&mut col);
            for r in 0..h {
                buf[r * w + c] = col[r];
            }
        }
    });
}

/// Unnormalized forward 2D DFT of a real or complex tensor.
pub fn fft2(t: &Tensor) -> Result<Tensor> {
    let (h, w) = check_2d(t, "fft2")?;
    let mut buf = to_complex_buf(t);
    fft2_raw(&mut buf, h, w, false);
    Ok(from_complex_buf(t.shape(), &buf))
}

/// Inverse 2D DFT with 1/(H*W) normalization; ifft2(fft2(x)) == x.
pub fn ifft2(t: &Tensor) -> Result<Tensor> {
    let (h, w) = check_2d(t, "ifft2")?;
    let mut buf = to_complex_buf(t);
    fft2_raw(&mut buf, h, w, true);
    let s = 1.0 / (h * w) as f64;
    for z in &mut buf {
        *z *= s;
    }
    Ok(from_complex_buf(t.shape(), &buf))
}

/// Circular convolution of `x` with a kernel given in the Fourier domain:
/// ifft2(fft2(x) .* kernel_hat). Output is complex whenever the kernel is.
pub fn conv2_periodic(x: &Tensor, kernel_hat: &Tensor) -> Result<Tensor> {
    let (h, w) = check_2d(x, "conv2_periodic")?;
    let (kh, kw) = check_2d(kernel_hat, "conv2_periodic")?;
    if (h, w) != (kh, kw) {
        return Err(CxrError::Shape(format!(
            "conv2_periodic: image {:?} vs kernel {:?}",
            x.shape(),
            kernel_hat.shape()
        )));
    }
    let spectrum = fft2(x)?.mul_complex(kernel_hat)?;
    let out = ifft2(&spectrum)?;
    if kernel_hat.is_complex() {
        Ok(out)
    } else {
        // Real kernel spectra arise only for even-symmetric kernels here
        // (the Gaussian low-pass); with real input the result is real.
        if x.is_complex() {
            Ok(out)
        } else {
            Ok(out.real())
        }
    }
}
