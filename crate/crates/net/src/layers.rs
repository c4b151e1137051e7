use rand::Rng;

use crate::tensor::Tensor;

/// Kernel side length used by every convolution in the model.
pub const KERNEL: usize = 3;
/// Zero padding applied on every side.
pub const PAD: usize = 1;

/// 3x3 zero-padded convolution with a per-output-channel bias.
///
/// Weights are stored as [out_channel][in_channel][ky][kx], biases as
/// [out_channel]. Initialization draws uniformly from
/// +-sqrt(6 / fan_in), which keeps activation variance stable under the
/// rectifier, and zeros the biases.
#[derive(Debug, Clone)]
pub struct ConvLayer {
    pub in_channels: usize,
    pub out_channels: usize,
    pub stride: usize,
    pub weights: Vec<f64>,
    pub bias: Vec<f64>,
}

impl ConvLayer {
    pub fn new<R: Rng>(in_channels: usize, out_channels: usize, stride: usize, rng: &mut R) -> Self {
        assert!(stride == 1 || stride == 2);
        let fan_in = (in_channels * KERNEL * KERNEL) as f64;
        let limit = (6.0 / fan_in).sqrt();
        let weights = (0..out_channels * in_channels * KERNEL * KERNEL)
            .map(|_| rng.random_range(-limit..limit))
            .collect();
        ConvLayer {
            in_channels,
            out_channels,
            stride,
            weights,
            bias: vec![0.0; out_channels],
        }
    }

    /// Output spatial size for an input of the given size.
    pub fn out_dims(&self, h: usize, w: usize) -> (usize, usize) {
        (
            (h + 2 * PAD - KERNEL) / self.stride + 1,
            (w + 2 * PAD - KERNEL) / self.stride + 1,
        )
    }

    #[inline]
    fn w_at(&self, oc: usize, ic: usize, ky: usize, kx: usize) -> f64 {
        self.weights[((oc * self.in_channels + ic) * KERNEL + ky) * KERNEL + kx]
    }

    /// Pre-activation output.
    pub fn forward(&self, input: &Tensor) -> Tensor {
        let (c, h, w) = input.shape();
        assert_eq!(c, self.in_channels);
        let (oh, ow) = self.out_dims(h, w);
        let mut out = Tensor::zeros(self.out_channels, oh, ow);
        for oc in 0..self.out_channels {
            for oy in 0..oh {
                let row = out.row_mut(oc, oy);
                row.fill(self.bias[oc]);
            }
            for ic in 0..self.in_channels {
                for ky in 0..KERNEL {
                    for oy in 0..oh {
                        let iy = (oy * self.stride + ky) as isize - PAD as isize;
                        if iy < 0 || iy >= h as isize {
                            continue;
                        }
                        let in_row = input.row(ic, iy as usize);
                        for kx in 0..KERNEL {
                            let wv = self.w_at(oc, ic, ky, kx);
                            if wv == 0.0 {
                                continue;
                            }
                            let out_row = out.row_mut(oc, oy);
                            for ox in 0..ow {
                                let ix = (ox * self.stride + kx) as isize - PAD as isize;
                                if ix >= 0 && ix < w as isize {
                                    out_row[ox] += wv * in_row[ix as usize];
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Accumulates weight and bias gradients for `d_pre` (the gradient at
    /// this layer's pre-activation output) and returns the gradient at the
    /// layer input.
    pub fn backward(
        &self,
        input: &Tensor,
        d_pre: &Tensor,
        grad_w: &mut [f64],
        grad_b: &mut [f64],
    ) -> Tensor {
        let (c, h, w) = input.shape();
        let (oc_n, oh, ow) = d_pre.shape();
        assert_eq!(c, self.in_channels);
        assert_eq!(oc_n, self.out_channels);
        assert_eq!(grad_w.len(), self.weights.len());
        assert_eq!(grad_b.len(), self.bias.len());

        let mut d_in = Tensor::zeros(c, h, w);
        for oc in 0..self.out_channels {
            for oy in 0..oh {
                let d_row = d_pre.row(oc, oy);
                grad_b[oc] += d_row.iter().sum::<f64>();
                for ic in 0..self.in_channels {
                    for ky in 0..KERNEL {
                        let iy = (oy * self.stride + ky) as isize - PAD as isize;
                        if iy < 0 || iy >= h as isize {
                            continue;
                        }
                        let in_row = input.row(ic, iy as usize);
                        for kx in 0..KERNEL {
                            let w_idx =
                                ((oc * self.in_channels + ic) * KERNEL + ky) * KERNEL + kx;
                            let wv = self.weights[w_idx];
                            let mut gw = 0.0;
                            let d_in_row = d_in.row_mut(ic, iy as usize);
                            for ox in 0..ow {
                                let ix = (ox * self.stride + kx) as isize - PAD as isize;
                                if ix >= 0 && ix < w as isize {
                                    let g = d_row[ox];
                                    gw += g * in_row[ix as usize];
                                    d_in_row[ix as usize] += g * wv;
                                }
                            }
                            grad_w[w_idx] += gw;
                        }
                    }
                }
            }
        }
        d_in
    }
}

/// Fully connected layer; weights stored [out][in].
#[derive(Debug, Clone)]
pub struct DenseLayer {
    pub in_dim: usize,
    pub out_dim: usize,
    pub weights: Vec<f64>,
    pub bias: Vec<f64>,
}

impl DenseLayer {
    pub fn new<R: Rng>(in_dim: usize, out_dim: usize, rng: &mut R) -> Self {
        let limit = (6.0 / in_dim as f64).sqrt();
        let weights = (0..out_dim * in_dim)
            .map(|_| rng.random_range(-limit..limit))
            .collect();
        DenseLayer {
            in_dim,
            out_dim,
            weights,
            bias: vec![0.0; out_dim],
        }
    }

    /// Pre-activation output.
    pub fn forward(&self, input: &[f64]) -> Vec<f64> {
        assert_eq!(input.len(), self.in_dim);
        let mut out = self.bias.clone();
        for (o, out_v) in out.iter_mut().enumerate() {
            let row = &self.weights[o * self.in_dim..(o + 1) * self.in_dim];
            *out_v += row.iter().zip(input).map(|(w, x)| w * x).sum::<f64>();
        }
        out
    }

    /// Accumulates gradients and returns the gradient at the input.
    pub fn backward(
        &self,
        input: &[f64],
        d_pre: &[f64],
        grad_w: &mut [f64],
        grad_b: &mut [f64],
    ) -> Vec<f64> {
        assert_eq!(input.len(), self.in_dim);
        assert_eq!(d_pre.len(), self.out_dim);
        let mut d_in = vec![0.0; self.in_dim];
        for (o, &g) in d_pre.iter().enumerate() {
            grad_b[o] += g;
            let row = &self.weights[o * self.in_dim..(o + 1) * self.in_dim];
            let g_row = &mut grad_w[o * self.in_dim..(o + 1) * self.in_dim];
            for i in 0..self.in_dim {
                g_row[i] += g * input[i];
                d_in[i] += g * row[i];
            }
        }
        d_in
    }
}

/// max(0, x), elementwise.
pub fn relu(t: &Tensor) -> Tensor {
    let (c, h, w) = t.shape();
    Tensor::from_values(c, h, w, t.data().iter().map(|&x| x.max(0.0)).collect())
}

/// Gradient at the pre-activation given the activated output.
pub fn relu_backward(activated: &Tensor, d_act: &Tensor) -> Tensor {
    let (c, h, w) = activated.shape();
    let data = activated
        .data()
        .iter()
        .zip(d_act.data())
        .map(|(&a, &g)| if a > 0.0 { g } else { 0.0 })
        .collect();
    Tensor::from_values(c, h, w, data)
}

pub fn relu_vec(v: &[f64]) -> Vec<f64> {
    v.iter().map(|&x| x.max(0.0)).collect()
}

pub fn relu_backward_vec(activated: &[f64], d_act: &[f64]) -> Vec<f64> {
    activated
        .iter()
        .zip(d_act)
        .map(|(&a, &g)| if a > 0.0 { g } else { 0.0 })
        .collect()
}

/// Logistic squashing 1 / (1 + e^-x), elementwise.
pub fn sigmoid(t: &Tensor) -> Tensor {
    let (c, h, w) = t.shape();
    Tensor::from_values(
        c,
        h,
        w,
        t.data().iter().map(|&x| logistic(x)).collect(),
    )
}

#[inline]
pub fn logistic(x: f64) -> f64 {
    1.0 / (1.0 + (-x).exp())
}

/// Gradient at the pre-activation given the activated output a = s(x),
/// using s'(x) = a (1 - a).
pub fn sigmoid_backward(activated: &Tensor, d_act: &Tensor) -> Tensor {
    let (c, h, w) = activated.shape();
    let data = activated
        .data()
        .iter()
        .zip(d_act.data())
        .map(|(&a, &g)| g * a * (1.0 - a))
        .collect();
    Tensor::from_values(c, h, w, data)
}
