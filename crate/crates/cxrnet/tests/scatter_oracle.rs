//! Cross-checks the FFT-based scattering against a naive spatial-domain
//! oracle that computes every path with direct circular convolutions,
//! explicit moduli, and strided decimation. The oracle shares no code with
//! the implementation path: filters are recovered by a direct inverse DFT
//! and convolved with O((HW)^2) loops.

use cxrnet::rng::SplitMix64;
use cxrnet::scatter::{build_filterbank, channel_count, scatter, FilterBank, ScatterConfig};
use cxrnet::tensor::Tensor;

/// Direct inverse DFT returning (re, im) planes.
fn naive_idft2(hat: &Tensor) -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
    let (h, w) = (hat.shape()[0], hat.shape()[1]);
    let cx = hat.to_complex();
    let mut re = vec![vec![0.0; w]; h];
    let mut im = vec![vec![0.0; w]; h];
    for r in 0..h {
        for c in 0..w {
            let (mut sr, mut si) = (0.0, 0.0);
            for u in 0..h {
                for v in 0..w {
                    let i = 2 * (u * w + v);
                    let (fr, fi) = (cx.data()[i], cx.data()[i + 1]);
                    let ang = std::f64::consts::TAU
                        * (u as f64 * r as f64 / h as f64 + v as f64 * c as f64 / w as f64);
                    let (s, co) = ang.sin_cos();
                    sr += fr * co - fi * s;
                    si += fr * s + fi * co;
                }
            }
            re[r][c] = sr / (h * w) as f64;
            im[r][c] = si / (h * w) as f64;
        }
    }
    (re, im)
}

type Plane = Vec<Vec<f64>>;

/// Circular convolution of complex planes by direct summation.
fn conv_circ(
    (xr, xi): (&Plane, &Plane),
    (kr, ki): (&Plane, &Plane),
) -> (Plane, Plane) {
    let (h, w) = (xr.len(), xr[0].len());
    let mut or_ = vec![vec![0.0; w]; h];
    let mut oi = vec![vec![0.0; w]; h];
    for r in 0..h {
        for c in 0..w {
            let (mut sr, mut si) = (0.0, 0.0);
            for i in 0..h {
                for j in 0..w {
                    let (ar, ai) = (xr[i][j], xi[i][j]);
                    let (br, bi) = (kr[(r + h - i) % h][(c + w - j) % w], ki[(r + h - i) % h][(c + w - j) % w]);
                    sr += ar * br - ai * bi;
                    si += ar * bi + ai * br;
                }
            }
            or_[r][c] = sr;
            oi[r][c] = si;
        }
    }
    (or_, oi)
}

fn plane_modulus((re, im): &(Plane, Plane)) -> (Plane, Plane) {
    let (h, w) = (re.len(), re[0].len());
    let mut m = vec![vec![0.0; w]; h];
    for r in 0..h {
        for c in 0..w {
            m[r][c] = re[r][c].hypot(im[r][c]);
        }
    }
    (m, vec![vec![0.0; w]; h])
}

fn decimate(plane: &Plane, f: usize) -> Plane {
    plane
        .iter()
        .step_by(f)
        .map(|row| row.iter().step_by(f).copied().collect())
        .collect()
}

/// Every scattering path computed entirely in the spatial domain.
fn oracle_scatter(x: &Tensor, fb: &FilterBank, cfg: &ScatterConfig) -> Vec<Plane> {
    let (h, w) = (cfg.height, cfg.width);
    let zeros = vec![vec![0.0; w]; h];
    let xr: Plane = (0..h)
        .map(|r| (0..w).map(|c| x.at2(r, c)).collect())
        .collect();
    let x_pl = (xr, zeros.clone());

    let phi = naive_idft2(fb.phi());
    let f = cfg.downsample_factor();
    let avg = |u: &(Plane, Plane)| -> Plane {
        let (re, _) = conv_circ((&u.0, &u.1), (&phi.0, &phi.1));
        decimate(&re, f)
    };

    let mut out = Vec::new();
    out.push(avg(&x_pl));
    for j1 in 0..cfg.j {
        for t1 in 0..cfg.l {
            let psi1 = naive_idft2(fb.psi(j1, t1));
            let u1 = plane_modulus(&conv_circ((&x_pl.0, &x_pl.1), (&psi1.0, &psi1.1)));
            out.push(avg(&u1));
        }
    }
    for j1 in 0..cfg.j {
        for t1 in 0..cfg.l {
            let psi1 = naive_idft2(fb.psi(j1, t1));
            let u1 = plane_modulus(&conv_circ((&x_pl.0, &x_pl.1), (&psi1.0, &psi1.1)));
            for j2 in (j1 + 1)..cfg.j {
                for t2 in 0..cfg.l {
                    let psi2 = naive_idft2(fb.psi(j2, t2));
                    let u2 = plane_modulus(&conv_circ((&u1.0, &u1.1), (&psi2.0, &psi2.1)));
                    out.push(avg(&u2));
                }
            }
        }
    }
    out
}

fn compare(cfg: &ScatterConfig, x: &Tensor) {
    let fb = build_filterbank(cfg).unwrap();
    let fast = scatter(x, &fb, cfg).unwrap();
    let slow = oracle_scatter(x, &fb, cfg);
    let c = channel_count(cfg.j, cfg.l);
    assert_eq!(fast.coeffs.shape()[2], c);
    assert_eq!(slow.len(), c);
    let (oh, ow) = cfg.output_extents();
    for ch in 0..c {
        let mut max_abs_ch: f64 = 0.0;
        let mut max_diff: f64 = 0.0;
        for r in 0..oh {
            for cc in 0..ow {
                let a = fast.coeffs.data()[(r * ow + cc) * c + ch];
                let b = slow[ch][r][cc];
                max_abs_ch = max_abs_ch.max(b.abs());
                max_diff = max_diff.max((a - b).abs());
            }
        }
        let rel = max_diff / max_abs_ch.max(1e-300);
        assert!(
            rel < 1e-6,
            "config {cfg:?} channel {ch}: relative error {rel}"
        );
    }
}

#[test]
fn delta_image_matches_oracle() {
    let cfg = ScatterConfig::new(1, 2, 8, 8).unwrap();
    let mut x = Tensor::zeros(&[8, 8]);
    x.set2(3, 4, 1.0);
    compare(&cfg, &x);
}

#[test]
fn random_images_match_oracle_all_configs() {
    let start = std::time::Instant::now();
    let mut rng = SplitMix64::new(99);
    for &(j, l, n) in &[(1usize, 2usize, 8usize), (2, 2, 8), (1, 2, 12), (2, 2, 12)] {
        let cfg = ScatterConfig::new(j, l, n, n).unwrap();
        let x = Tensor::from_fn(&[n, n], |_| rng.uniform(0.0, 1.0));
        compare(&cfg, &x);
    }
    assert!(
        start.elapsed().as_secs() < 10,
        "oracle comparison exceeded the 10 s budget"
    );
}
