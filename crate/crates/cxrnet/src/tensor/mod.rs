//! Dense real/complex tensors with row-major storage.
//!
//! The one value type every other module works in. Real tensors store one
//! f64 per element; complex tensors store interleaved (re, im) pairs.
//! Shapes are explicit and checked; all arithmetic is f64.

mod fft;

pub use fft::{conv2_periodic, fft2, ifft2};

use crate::error::{CxrError, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Tensor {
    shape: Vec<usize>,
    data: Vec<f64>,
    is_complex: bool,
}

impl Tensor {
    pub fn zeros(shape: &[usize]) -> Self {
        let n: usize = shape.iter().product();
        Tensor {
            shape: shape.to_vec(),
            data: vec![0.0; n],
            is_complex: false,
        }
    }

    pub fn zeros_complex(shape: &[usize]) -> Self {
        let n: usize = shape.iter().product();
        Tensor {
            shape: shape.to_vec(),
            data: vec![0.0; 2 * n],
            is_complex: true,
        }
    }

    pub fn filled(shape: &[usize], value: f64) -> Self {
        let n: usize = shape.iter().product();
        Tensor {
            shape: shape.to_vec(),
            data: vec![value; n],
            is_complex: false,
        }
    }

    pub fn from_vec(shape: &[usize], data: Vec<f64>) -> Result<Self> {
        let n: usize = shape.iter().product();
        if data.len() != n {
            return Err(CxrError::Shape(format!(
                "expected {} scalars for shape {:?}, got {}",
                n,
                shape,
                data.len()
            )));
        }
        Ok(Tensor {
            shape: shape.to_vec(),
            data,
            is_complex: false,
        })
    }

    pub fn from_vec_complex(shape: &[usize], interleaved: Vec<f64>) -> Result<Self> {
        let n: usize = shape.iter().product();
        if interleaved.len() != 2 * n {
            return Err(CxrError::Shape(format!(
                "expected {} interleaved scalars for complex shape {:?}, got {}",
                2 * n,
                shape,
                interleaved.len()
            )));
        }
        Ok(Tensor {
            shape: shape.to_vec(),
            data: interleaved,
            is_complex: true,
        })
    }

    /// Build from a function of the row-major flat index.
    pub fn from_fn(shape: &[usize], mut f: impl FnMut(usize) -> f64) -> Self {
        let n: usize = shape.iter().product();
        Tensor {
            shape: shape.to_vec(),
            data: (0..n).map(|i| f(i)).collect(),
            is_complex: false,
        }
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn rank(&self) -> usize {
        self.shape.len()
    }

    /// Number of logical elements (complex pairs count once).
    pub fn len(&self) -> usize {
        self.shape.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_complex(&self) -> bool {
        self.is_complex
    }

    /// Raw storage: real layout, or interleaved (re, im) when complex.
    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn into_data(self) -> Vec<f64> {
        self.data
    }

    /// Reinterpret with a new shape of equal element count.
    pub fn reshape(mut self, shape: &[usize]) -> Result<Self> {
        let n: usize = shape.iter().product();
        if n != self.len() {
            return Err(CxrError::Shape(format!(
                "cannot reshape {:?} into {:?}",
                self.shape, shape
            )));
        }
        self.shape = shape.to_vec();
        Ok(self)
    }

    pub fn same_shape(&self, other: &Tensor) -> bool {
        self.shape == other.shape
    }

    fn check_same_shape(&self, other: &Tensor, op: &str) -> Result<()> {
        if !self.same_shape(other) {
            return Err(CxrError::Shape(format!(
                "{op}: shape mismatch {:?} vs {:?}",
                self.shape, other.shape
            )));
        }
        Ok(())
    }

    // ---- 2D indexing helpers (first two axes are rows, cols) ----

    #[inline]
    pub fn at2(&self, r: usize, c: usize) -> f64 {
        debug_assert!(!self.is_complex && self.rank() == 2);
        self.data[r * self.shape[1] + c]
    }

    #[inline]
    pub fn set2(&mut self, r: usize, c: usize, v: f64) {
        debug_assert!(!self.is_complex && self.rank() == 2);
        self.data[r * self.shape[1] + c] = v;
    }

    #[inline]
    pub fn at2c(&self, r: usize, c: usize) -> (f64, f64) {
        debug_assert!(self.is_complex && self.rank() == 2);
        let i = 2 * (r * self.shape[1] + c);
        (self.data[i], self.data[i + 1])
    }

    // ---- elementwise arithmetic ----

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Tensor {
        debug_assert!(!self.is_complex);
        Tensor {
            shape: self.shape.clone(),
            data: self.data.iter().map(|&x| f(x)).collect(),
            is_complex: false,
        }
    }

    pub fn add(&self, other: &Tensor) -> Result<Tensor> {
        self.check_same_shape(other, "add")?;
        debug_assert_eq!(self.is_complex, other.is_complex);
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Tensor {
            shape: self.shape.clone(),
            data,
            is_complex: self.is_complex,
        })
    }

    pub fn sub(&self, other: &Tensor) -> Result<Tensor> {
        self.check_same_shape(other, "sub")?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Tensor {
            shape: self.shape.clone(),
            data,
            is_complex: self.is_complex,
        })
    }

    /// Elementwise product of two real tensors.
    pub fn mul(&self, other: &Tensor) -> Result<Tensor> {
        self.check_same_shape(other, "mul")?;
        debug_assert!(!self.is_complex && !other.is_complex);
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a * b)
            .collect();
        Ok(Tensor {
            shape: self.shape.clone(),
            data,
            is_complex: false,
        })
    }

    pub fn scale(&self, s: f64) -> Tensor {
        Tensor {
            shape: self.shape.clone(),
            data: self.data.iter().map(|&x| x * s).collect(),
            is_complex: self.is_complex,
        }
    }

    /// Elementwise complex product; either operand may be real.
    pub fn mul_complex(&self, other: &Tensor) -> Result<Tensor> {
        self.check_same_shape(other, "mul_complex")?;
        let a = self.to_complex();
        let b = other.to_complex();
        let n = a.len();
        let mut data = vec![0.0; 2 * n];
        let (ad, bd) = (a.data(), b.data());
        for i in 0..n {
            let (ar, ai) = (ad[2 * i], ad[2 * i + 1]);
            let (br, bi) = (bd[2 * i], bd[2 * i + 1]);
            data[2 * i] = ar * br - ai * bi;
            data[2 * i + 1] = ar * bi + ai * br;
        }
        Ok(Tensor {
            shape: self.shape.clone(),
            data,
            is_complex: true,
        })
    }

    /// Promote a real tensor to complex with zero imaginary parts.
    pub fn to_complex(&self) -> Tensor {
        if self.is_complex {
            return self.clone();
        }
        let mut data = vec![0.0; 2 * self.data.len()];
        for (i, &x) in self.data.iter().enumerate() {
            data[2 * i] = x;
        }
        Tensor {
            shape: self.shape.clone(),
            data,
            is_complex: true,
        }
    }

    /// Real part of a complex tensor (identity on real tensors).
    pub fn real(&self) -> Tensor {
        if !self.is_complex {
            return self.clone();
        }
        Tensor {
            shape: self.shape.clone(),
            data: self.data.iter().step_by(2).copied().collect(),
            is_complex: false,
        }
    }

    pub fn sum(&self) -> f64 {
        debug_assert!(!self.is_complex);
        self.data.iter().sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, &x| m.max(x.abs()))
    }

    /// Euclidean norm over all stored scalars.
    pub fn norm2(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn all_finite(&self) -> bool {
        self.data.iter().all(|x| x.is_finite())
    }
}

/// Pointwise magnitude of a complex tensor (absolute value on real input).
pub fn modulus(t: &Tensor) -> Tensor {
    if !t.is_complex {
        return t.map(f64::abs);
    }
    let n = t.len();
    let d = t.data();
    let data = (0..n)
        .map(|i| d[2 * i].hypot(d[2 * i + 1]))
        .collect();
    Tensor {
        shape: t.shape().to_vec(),
        data,
        is_complex: false,
    }
}

/// Strided decimation of the two leading spatial axes: keeps every
/// `factor`-th sample starting at index 0, so odd extents round up.
pub fn downsample2d(t: &Tensor, factor: usize) -> Result<Tensor> {
    if factor == 0 || !factor.is_power_of_two() {
        return Err(CxrError::Parameter(format!(
            "downsample factor must be a power of two, got {factor}"
        )));
    }
    if t.rank() < 2 {
        return Err(CxrError::Shape(format!(
            "downsample2d needs rank >= 2, got {:?}",
            t.shape()
        )));
    }
    if factor == 1 {
        return Ok(t.clone());
    }
    let (h, w) = (t.shape()[0], t.shape()[1]);
    let tail: usize = t.shape()[2..].iter().product::<usize>().max(1);
    let stride = if t.is_complex() { 2 * tail } else { tail };
    let oh = h.div_ceil(factor);
    let ow = w.div_ceil(factor);
    let mut data = Vec::with_capacity(oh * ow * stride);
    for r in (0..h).step_by(factor) {
        for c in (0..w).step_by(factor) {
            let base = (r * w + c) * stride;
            data.extend_from_slice(&t.data()[base..base + stride]);
        }
    }
    let mut shape = vec![oh, ow];
    shape.extend_from_slice(&t.shape()[2..]);
    Ok(Tensor {
        shape,
        data,
        is_complex: t.is_complex(),
    })
}

/// Concatenate rank-3 [H,W,C] tensors along the channel axis.
pub fn concat_channels(parts: &[&Tensor]) -> Result<Tensor> {
    assert!(!parts.is_empty());
    let (h, w) = (parts[0].shape()[0], parts[0].shape()[1]);
    let mut channels = 0;
    for p in parts {
        if p.rank() != 3 || p.shape()[0] != h || p.shape()[1] != w {
            return Err(CxrError::Shape(format!(
                "concat_channels: incompatible shape {:?}, expected [{h}, {w}, _]",
                p.shape()
            )));
        }
        debug_assert!(!p.is_complex());
        channels += p.shape()[2];
    }
    let mut data = Vec::with_capacity(h * w * channels);
    for pos in 0..h * w {
        for p in parts {
            let c = p.shape()[2];
            data.extend_from_slice(&p.data()[pos * c..(pos + 1) * c]);
        }
    }
    Ok(Tensor {
        shape: vec![h, w, channels],
        data,
        is_complex: false,
    })
}

/// Extract one channel of a rank-3 [H,W,C] tensor as a rank-2 [H,W] tensor.
pub fn channel_slice(t: &Tensor, channel: usize) -> Result<Tensor> {
    if t.rank() != 3 || channel >= t.shape()[2] {
        return Err(CxrError::Shape(format!(
            "channel_slice: channel {channel} of shape {:?}",
            t.shape()
        )));
    }
    let (h, w, c) = (t.shape()[0], t.shape()[1], t.shape()[2]);
    let data = (0..h * w).map(|pos| t.data()[pos * c + channel]).collect();
    Ok(Tensor {
        shape: vec![h, w],
        data,
        is_complex: false,
    })
}

/// Transpose the two leading axes of a rank-2 or rank-3 real tensor.
pub fn transpose_hw(t: &Tensor) -> Tensor {
    debug_assert!(!t.is_complex());
    let (h, w) = (t.shape()[0], t.shape()[1]);
    let tail: usize = t.shape()[2..].iter().product::<usize>().max(1);
    let mut data = vec![0.0; t.data().len()];
    for r in 0..h {
        for c in 0..w {
            let src = (r * w + c) * tail;
            let dst = (c * h + r) * tail;
            data[dst..dst + tail].copy_from_slice(&t.data()[src..src + tail]);
        }
    }
    let mut shape = vec![w, h];
    shape.extend_from_slice(&t.shape()[2..]);
    Tensor {
        shape,
        data,
        is_complex: false,
    }
}
