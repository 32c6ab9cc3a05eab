//! CXR-Net style chest X-ray pipeline: a fixed-coefficient 2D wavelet
//! scattering front end feeding small learned attention/residual-convolution
//! networks, plus the residual lung-segmentation network, Tanimoto-family
//! losses, Grad-CAM saliency, and the data plumbing to train and verify the
//! whole thing at desk scale on synthetic phantoms.

pub mod error;
pub mod rng;
pub mod scatter;
pub mod tensor;

pub use error::{CxrError, Result};
pub use tensor::Tensor;
