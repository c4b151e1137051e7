use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use dispvo_data::DisparityMap;
use nalgebra::Vector3;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::NetError;
use crate::layers::{
    relu, relu_backward, relu_backward_vec, relu_vec, sigmoid, sigmoid_backward, ConvLayer,
    DenseLayer,
};
use crate::loss::{loss_gradients, loss_from_predictions, LossBreakdown, LossConfig};
use crate::tensor::Tensor;

/// Channel plan of the shared per-frame feature stack (stride 2 each).
const FEATURE_CHANNELS: [(usize, usize); 4] = [(1, 8), (8, 16), (16, 32), (32, 32)];
/// Channel plan of the shared per-frame gate stack; spatial dims mirror the
/// feature stack, the last layer collapses to one channel that is broadcast
/// over all feature channels.
const ATTENTION_CHANNELS: [(usize, usize); 4] = [(1, 8), (8, 16), (16, 32), (32, 1)];
/// (in, out, stride) of the two convolutions shared by both head designs.
const HEAD_CONV: [(usize, usize, usize); 2] = [(64, 32, 1), (32, 16, 2)];
/// Hidden width of the translation head's single hidden dense layer.
const TRANS_HIDDEN: usize = 64;
/// Hidden widths of the rotation head's three hidden dense layers; two more
/// layers than the translation head overall.
const ROT_HIDDEN: [usize; 3] = [64, 32, 16];

const CHECKPOINT_MAGIC: [u8; 4] = *b"DVCK";
const CHECKPOINT_VERSION: u32 = 1;

/// Input resolution the network is built for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NetworkConfig {
    pub height: usize,
    pub width: usize,
}

impl NetworkConfig {
    pub fn new(height: usize, width: usize) -> Result<Self, NetError> {
        if height < 8 || width < 8 {
            return Err(NetError::InvalidConfig(format!(
                "resolution {width}x{height} is too small; need at least 8x8"
            )));
        }
        Ok(NetworkConfig { height, width })
    }
}

/// Regressed frame-to-frame motion: Euler angles (roll, pitch, yaw) in
/// radians and a translation in meters, both in the earlier frame's camera
/// coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Prediction {
    pub euler: Vector3<f64>,
    pub translation: Vector3<f64>,
}

/// Coarse parameter category, used to stratify gradient verification.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LayerKind {
    Conv,
    Dense,
    AttentionGate,
}

/// One named tensor's slice of the flat parameter vector.
#[derive(Debug, Clone)]
pub struct ParamRange {
    pub label: String,
    pub kind: LayerKind,
    pub start: usize,
    pub len: usize,
}

/// Two-stream regression network over a pair of disparity maps.
///
/// Both frames pass through the SAME feature and gate stacks (shared
/// weights). Per frame, the single-channel gate map (logistic-activated
/// after every gate layer) is broadcast-multiplied over the feature map's
/// channels; the two gated maps are channel-concatenated and fed to two
/// independent heads, a translation regressor and a rotation regressor
/// that is exactly two layers deeper. All non-gate layers use max(0, x);
/// final regression layers are linear so outputs can take either sign.
#[derive(Debug, Clone)]
pub struct Network {
    config: NetworkConfig,
    feature: Vec<ConvLayer>,
    attention: Vec<ConvLayer>,
    trans_conv: Vec<ConvLayer>,
    trans_dense: Vec<DenseLayer>,
    rot_conv: Vec<ConvLayer>,
    rot_dense: Vec<DenseLayer>,
}

struct FrameTrace {
    input: Tensor,
    feat_act: Vec<Tensor>,
    att_act: Vec<Tensor>,
}

struct HeadTrace {
    conv_act: Vec<Tensor>,
    /// Activated hidden outputs; the last entry is the linear output.
    dense_act: Vec<Vec<f64>>,
}

struct PairTrace {
    frame_a: FrameTrace,
    frame_b: FrameTrace,
    concat: Tensor,
    trans: HeadTrace,
    rot: HeadTrace,
    prediction: Prediction,
}

impl Network {
    /// Builds a freshly initialized network: uniform fan-in weight init,
    /// zero biases, and a +1 bias on the final gate layer so gates start
    /// mostly open.
    pub fn new(config: NetworkConfig, seed: u64) -> Result<Self, NetError> {
        NetworkConfig::new(config.height, config.width)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let feature: Vec<ConvLayer> = FEATURE_CHANNELS
            .iter()
            .map(|&(i, o)| ConvLayer::new(i, o, 2, &mut rng))
            .collect();
        let mut attention: Vec<ConvLayer> = ATTENTION_CHANNELS
            .iter()
            .map(|&(i, o)| ConvLayer::new(i, o, 2, &mut rng))
            .collect();
        attention.last_mut().unwrap().bias[0] = 1.0;

        let trans_conv: Vec<ConvLayer> = HEAD_CONV
            .iter()
            .map(|&(i, o, s)| ConvLayer::new(i, o, s, &mut rng))
            .collect();

        let (mut h, mut w) = (config.height, config.width);
        for layer in &feature {
            let (nh, nw) = layer.out_dims(h, w);
            h = nh;
            w = nw;
        }
        for layer in &trans_conv {
            let (nh, nw) = layer.out_dims(h, w);
            h = nh;
            w = nw;
        }
        let flat_len = HEAD_CONV[1].1 * h * w;

        let trans_dense = vec![
            DenseLayer::new(flat_len, TRANS_HIDDEN, &mut rng),
            DenseLayer::new(TRANS_HIDDEN, 3, &mut rng),
        ];
        let rot_conv: Vec<ConvLayer> = HEAD_CONV
            .iter()
            .map(|&(i, o, s)| ConvLayer::new(i, o, s, &mut rng))
            .collect();
        let rot_dense = vec![
            DenseLayer::new(flat_len, ROT_HIDDEN[0], &mut rng),
            DenseLayer::new(ROT_HIDDEN[0], ROT_HIDDEN[1], &mut rng),
            DenseLayer::new(ROT_HIDDEN[1], ROT_HIDDEN[2], &mut rng),
            DenseLayer::new(ROT_HIDDEN[2], 3, &mut rng),
        ];

        let net = Network {
            config,
            feature,
            attention,
            trans_conv,
            trans_dense,
            rot_conv,
            rot_dense,
        };
        // The rotation path must be exactly two layers deeper than the
        // translation path.
        assert_eq!(
            net.rot_conv.len() + net.rot_dense.len(),
            net.trans_conv.len() + net.trans_dense.len() + 2
        );
        Ok(net)
    }

    pub fn config(&self) -> NetworkConfig {
        self.config
    }

    /// Regresses the motion of `later` with respect to `earlier`.
    pub fn forward(
        &self,
        earlier: &DisparityMap,
        later: &DisparityMap,
    ) -> Result<Prediction, NetError> {
        let trace = self.forward_traced(earlier, later)?;
        Ok(trace.prediction)
    }

    /// The activated output of every gate layer for one frame, in layer
    /// order. Useful for inspecting what the gates attend to.
    pub fn attention_activations(&self, frame: &DisparityMap) -> Result<Vec<Tensor>, NetError> {
        self.check_resolution(frame)?;
        let input = tensor_from_map(frame);
        let mut acts = Vec::with_capacity(self.attention.len());
        for (k, layer) in self.attention.iter().enumerate() {
            let x = if k == 0 { &input } else { &acts[k - 1] };
            acts.push(sigmoid(&layer.forward(x)));
        }
        Ok(acts)
    }

    fn check_resolution(&self, map: &DisparityMap) -> Result<(), NetError> {
        if map.width() != self.config.width || map.height() != self.config.height {
            return Err(NetError::ResolutionMismatch {
                want_w: self.config.width,
                want_h: self.config.height,
                found_w: map.width(),
                found_h: map.height(),
            });
        }
        Ok(())
    }

    fn frame_blocks(&self, input: Tensor) -> FrameTrace {
        let mut feat_act: Vec<Tensor> = Vec::with_capacity(self.feature.len());
        for (k, layer) in self.feature.iter().enumerate() {
            let x = if k == 0 { &input } else { &feat_act[k - 1] };
            feat_act.push(relu(&layer.forward(x)));
        }
        let mut att_act: Vec<Tensor> = Vec::with_capacity(self.attention.len());
        for (k, layer) in self.attention.iter().enumerate() {
            let x = if k == 0 { &input } else { &att_act[k - 1] };
            att_act.push(sigmoid(&layer.forward(x)));
        }
        FrameTrace {
            input,
            feat_act,
            att_act,
        }
    }

    fn gated(trace: &FrameTrace) -> Tensor {
        gate_forward(
            trace.feat_act.last().unwrap(),
            trace.att_act.last().unwrap(),
        )
    }

    fn head_forward(convs: &[ConvLayer], denses: &[DenseLayer], concat: &Tensor) -> HeadTrace {
        let mut conv_act: Vec<Tensor> = Vec::with_capacity(convs.len());
        for (k, layer) in convs.iter().enumerate() {
            let x = if k == 0 { concat } else { &conv_act[k - 1] };
            conv_act.push(relu(&layer.forward(x)));
        }
        let flat = conv_act.last().unwrap().data().to_vec();
        let mut dense_act: Vec<Vec<f64>> = Vec::with_capacity(denses.len());
        for (k, layer) in denses.iter().enumerate() {
            let x = if k == 0 { &flat } else { &dense_act[k - 1] };
            let pre = layer.forward(x);
            if k + 1 < denses.len() {
                dense_act.push(relu_vec(&pre));
            } else {
                // Final regression layer stays linear: motions are signed.
                dense_act.push(pre);
            }
        }
        HeadTrace {
            conv_act,
            dense_act,
        }
    }

    fn forward_traced(
        &self,
        earlier: &DisparityMap,
        later: &DisparityMap,
    ) -> Result<PairTrace, NetError> {
        self.check_resolution(earlier)?;
        self.check_resolution(later)?;
        let frame_a = self.frame_blocks(tensor_from_map(earlier));
        let frame_b = self.frame_blocks(tensor_from_map(later));
        let concat = Tensor::concat_channels(&Self::gated(&frame_a), &Self::gated(&frame_b));
        let trans = Self::head_forward(&self.trans_conv, &self.trans_dense, &concat);
        let rot = Self::head_forward(&self.rot_conv, &self.rot_dense, &concat);
        let t = trans.dense_act.last().unwrap();
        let e = rot.dense_act.last().unwrap();
        let prediction = Prediction {
            euler: Vector3::new(e[0], e[1], e[2]),
            translation: Vector3::new(t[0], t[1], t[2]),
        };
        if !prediction.euler.iter().chain(prediction.translation.iter()).all(|v| v.is_finite()) {
            return Err(NetError::NonFinite("network output"));
        }
        Ok(PairTrace {
            frame_a,
            frame_b,
            concat,
            trans,
            rot,
            prediction,
        })
    }

    /// Forward-only loss of one triple batch (pairs ordered adjacent,
    /// adjacent, then the optional skip pair).
    pub fn evaluate_loss(
        &self,
        pairs: &[dispvo_data::PairSample],
        cfg: &LossConfig,
        skip_ordering: bool,
    ) -> Result<LossBreakdown, NetError> {
        check_pair_structure(pairs, skip_ordering)?;
        let mut predictions = Vec::with_capacity(pairs.len());
        for pair in pairs {
            predictions.push(self.forward(pair.earlier(), pair.later())?);
        }
        let targets: Vec<_> = pairs.iter().map(|p| *p.target()).collect();
        loss_from_predictions(&predictions, &targets, cfg, skip_ordering)
    }

    /// Reverse-mode gradients of the triple loss with respect to every
    /// parameter, flattened in the canonical parameter order. Gradients of
    /// the shared per-frame stacks accumulate over both frames of every
    /// pair.
    pub fn backward(
        &self,
        pairs: &[dispvo_data::PairSample],
        cfg: &LossConfig,
        skip_ordering: bool,
    ) -> Result<(LossBreakdown, Vec<f64>), NetError> {
        check_pair_structure(pairs, skip_ordering)?;
        let mut g = self.zeroed_clone();
        let mut predictions = Vec::with_capacity(pairs.len());
        let mut traces = Vec::with_capacity(pairs.len());
        for pair in pairs {
            let trace = self.forward_traced(pair.earlier(), pair.later())?;
            predictions.push(trace.prediction);
            traces.push(trace);
        }
        let targets: Vec<_> = pairs.iter().map(|p| *p.target()).collect();
        let breakdown = loss_from_predictions(&predictions, &targets, cfg, skip_ordering)?;
        let grads_out = loss_gradients(&predictions, &targets, cfg);

        for (trace, (d_euler, d_trans)) in traces.iter().zip(&grads_out) {
            let d_concat_t = Self::head_backward(
                &self.trans_conv,
                &self.trans_dense,
                &mut g.trans_conv,
                &mut g.trans_dense,
                &trace.concat,
                &trace.trans,
                d_trans.as_slice(),
            );
            let d_concat_r = Self::head_backward(
                &self.rot_conv,
                &self.rot_dense,
                &mut g.rot_conv,
                &mut g.rot_dense,
                &trace.concat,
                &trace.rot,
                d_euler.as_slice(),
            );
            let mut d_concat = d_concat_t;
            for (a, b) in d_concat.data_mut().iter_mut().zip(d_concat_r.data()) {
                *a += b;
            }
            let feat_channels = FEATURE_CHANNELS.last().unwrap().1;
            let (d_gated_a, d_gated_b) = d_concat.split_channels(feat_channels);
            self.frame_backward(&mut g, &trace.frame_a, &d_gated_a);
            self.frame_backward(&mut g, &trace.frame_b, &d_gated_b);
        }
        Ok((breakdown, g.params_vec()))
    }

    #[allow(clippy::too_many_arguments)]
    fn head_backward(
        convs: &[ConvLayer],
        denses: &[DenseLayer],
        g_convs: &mut [ConvLayer],
        g_denses: &mut [DenseLayer],
        concat: &Tensor,
        trace: &HeadTrace,
        d_out: &[f64],
    ) -> Tensor {
        let flat = trace.conv_act.last().unwrap().data();
        let mut d = d_out.to_vec();
        for k in (0..denses.len()).rev() {
            let input: &[f64] = if k == 0 { flat } else { &trace.dense_act[k - 1] };
            d = denses[k].backward(input, &d, &mut g_denses[k].weights, &mut g_denses[k].bias);
            if k > 0 {
                d = relu_backward_vec(&trace.dense_act[k - 1], &d);
            }
        }
        let last = trace.conv_act.last().unwrap();
        let (c, h, w) = last.shape();
        let mut d_t = relu_backward(last, &Tensor::from_values(c, h, w, d));
        for k in (0..convs.len()).rev() {
            let input = if k == 0 { concat } else { &trace.conv_act[k - 1] };
            d_t = convs[k].backward(input, &d_t, &mut g_convs[k].weights, &mut g_convs[k].bias);
            if k > 0 {
                d_t = relu_backward(&trace.conv_act[k - 1], &d_t);
            }
        }
        d_t
    }

    fn frame_backward(&self, g: &mut Network, trace: &FrameTrace, d_gated: &Tensor) {
        let feat_final = trace.feat_act.last().unwrap();
        let att_final = trace.att_act.last().unwrap();
        let (d_feat, d_att) = gate_backward(feat_final, att_final, d_gated);

        let mut d = relu_backward(feat_final, &d_feat);
        for k in (0..self.feature.len()).rev() {
            let input = if k == 0 { &trace.input } else { &trace.feat_act[k - 1] };
            let gl = &mut g.feature[k];
            d = self.feature[k].backward(input, &d, &mut gl.weights, &mut gl.bias);
            if k > 0 {
                d = relu_backward(&trace.feat_act[k - 1], &d);
            }
        }

        let mut d = sigmoid_backward(att_final, &d_att);
        for k in (0..self.attention.len()).rev() {
            let input = if k == 0 { &trace.input } else { &trace.att_act[k - 1] };
            let gl = &mut g.attention[k];
            d = self.attention[k].backward(input, &d, &mut gl.weights, &mut gl.bias);
            if k > 0 {
                d = sigmoid_backward(&trace.att_act[k - 1], &d);
            }
        }
    }

    fn zeroed_clone(&self) -> Network {
        let mut g = self.clone();
        g.visit_params_mut(|p| *p = 0.0);
        g
    }

    fn visit_params_mut(&mut self, mut f: impl FnMut(&mut f64)) {
        for layer in self
            .feature
            .iter_mut()
            .chain(&mut self.attention)
            .chain(&mut self.trans_conv)
        {
            layer.weights.iter_mut().for_each(&mut f);
            layer.bias.iter_mut().for_each(&mut f);
        }
        for layer in &mut self.trans_dense {
            layer.weights.iter_mut().for_each(&mut f);
            layer.bias.iter_mut().for_each(&mut f);
        }
        for layer in &mut self.rot_conv {
            layer.weights.iter_mut().for_each(&mut f);
            layer.bias.iter_mut().for_each(&mut f);
        }
        for layer in &mut self.rot_dense {
            layer.weights.iter_mut().for_each(&mut f);
            layer.bias.iter_mut().for_each(&mut f);
        }
    }

    /// Named tensors in canonical order, used for both the flat parameter
    /// vector layout and checkpointing.
    fn tensor_views(&self) -> Vec<(String, LayerKind, &[f64])> {
        let mut v: Vec<(String, LayerKind, &[f64])> = Vec::new();
        push_conv_views(&mut v, "feature", LayerKind::Conv, &self.feature);
        push_conv_views(&mut v, "gate", LayerKind::AttentionGate, &self.attention);
        push_conv_views(&mut v, "translation", LayerKind::Conv, &self.trans_conv);
        for (i, l) in self.trans_dense.iter().enumerate() {
            v.push((
                format!("translation.dense{i}.weight"),
                LayerKind::Dense,
                &l.weights,
            ));
            v.push((
                format!("translation.dense{i}.bias"),
                LayerKind::Dense,
                &l.bias,
            ));
        }
        push_conv_views(&mut v, "rotation", LayerKind::Conv, &self.rot_conv);
        for (i, l) in self.rot_dense.iter().enumerate() {
            v.push((
                format!("rotation.dense{i}.weight"),
                LayerKind::Dense,
                &l.weights,
            ));
            v.push((
                format!("rotation.dense{i}.bias"),
                LayerKind::Dense,
                &l.bias,
            ));
        }
        v
    }

    pub fn param_count(&self) -> usize {
        self.tensor_views().iter().map(|(_, _, s)| s.len()).sum()
    }

    /// All parameters flattened in canonical order.
    pub fn params_vec(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.param_count());
        for (_, _, s) in self.tensor_views() {
            out.extend_from_slice(s);
        }
        out
    }

    /// Overwrites all parameters from a flat vector in canonical order.
    pub fn set_params_vec(&mut self, params: &[f64]) -> Result<(), NetError> {
        if params.len() != self.param_count() {
            return Err(NetError::InvalidConfig(format!(
                "parameter vector has {} values, expected {}",
                params.len(),
                self.param_count()
            )));
        }
        let mut it = params.iter();
        self.visit_params_mut(|p| *p = *it.next().unwrap());
        Ok(())
    }

    /// Label, category, and flat-vector range of every parameter tensor.
    pub fn param_layout(&self) -> Vec<ParamRange> {
        let mut out = Vec::new();
        let mut offset = 0;
        for (label, kind, s) in self.tensor_views() {
            out.push(ParamRange {
                label,
                kind,
                start: offset,
                len: s.len(),
            });
            offset += s.len();
        }
        out
    }

    /// Zeroes the final dense layer of both heads, making every output the
    /// (zero) output bias. Handy as an explicit identity-motion baseline.
    pub fn zero_output_layers(&mut self) {
        for layer in [
            self.trans_dense.last_mut().unwrap(),
            self.rot_dense.last_mut().unwrap(),
        ] {
            layer.weights.iter_mut().for_each(|w| *w = 0.0);
            layer.bias.iter_mut().for_each(|b| *b = 0.0);
        }
    }
}

fn push_conv_views<'a>(
    v: &mut Vec<(String, LayerKind, &'a [f64])>,
    name: &str,
    kind: LayerKind,
    layers: &'a [ConvLayer],
) {
    for (i, l) in layers.iter().enumerate() {
        v.push((format!("{name}.conv{i}.weight"), kind, &l.weights));
        v.push((format!("{name}.conv{i}.bias"), kind, &l.bias));
    }
}

/// Validates a triple batch: two adjacent pairs, plus one skip pair when
/// skip-ordering is on.
fn check_pair_structure(
    pairs: &[dispvo_data::PairSample],
    skip_ordering: bool,
) -> Result<(), NetError> {
    let want = if skip_ordering { 3 } else { 2 };
    if pairs.len() != want {
        return Err(NetError::BadPairStructure(format!(
            "expected {want} pairs, found {}",
            pairs.len()
        )));
    }
    let want_gaps: &[usize] = if skip_ordering { &[1, 1, 2] } else { &[1, 1] };
    for (pair, &gap) in pairs.iter().zip(want_gaps) {
        if pair.gap() != gap {
            return Err(NetError::BadPairStructure(format!(
                "expected frame gap {gap}, found {}",
                pair.gap()
            )));
        }
    }
    Ok(())
}

fn tensor_from_map(map: &DisparityMap) -> Tensor {
    Tensor::from_values(
        1,
        map.height(),
        map.width(),
        map.values().iter().map(|&v| v as f64).collect(),
    )
}

/// Broadcast-multiplies the single gate channel over every feature channel.
fn gate_forward(features: &Tensor, attention: &Tensor) -> Tensor {
    let (fc, h, w) = features.shape();
    assert_eq!(attention.shape(), (1, h, w));
    let att = attention.channel(0);
    let mut out = features.clone();
    let plane = h * w;
    for c in 0..fc {
        let chunk = &mut out.data_mut()[c * plane..(c + 1) * plane];
        for (o, a) in chunk.iter_mut().zip(att) {
            *o *= a;
        }
    }
    out
}

/// d(features) = d_gated * gate per channel; d(gate) = sum over channels of
/// d_gated * features.
fn gate_backward(features: &Tensor, attention: &Tensor, d_gated: &Tensor) -> (Tensor, Tensor) {
    let (fc, h, w) = features.shape();
    let att = attention.channel(0);
    let plane = h * w;
    let mut d_feat = Tensor::zeros(fc, h, w);
    let mut d_att = Tensor::zeros(1, h, w);
    for c in 0..fc {
        let dg = &d_gated.data()[c * plane..(c + 1) * plane];
        let f = features.channel(c);
        let df = &mut d_feat.data_mut()[c * plane..(c + 1) * plane];
        for i in 0..plane {
            df[i] = dg[i] * att[i];
        }
        let da = d_att.data_mut();
        for i in 0..plane {
            da[i] += dg[i] * f[i];
        }
    }
    (d_feat, d_att)
}

/// Writes a versioned binary checkpoint: resolution plus every parameter
/// tensor in canonical order. Bit-exact round trip.
pub fn save_checkpoint<W: Write>(net: &Network, mut out: W) -> Result<(), NetError> {
    out.write_all(&CHECKPOINT_MAGIC)?;
    out.write_all(&CHECKPOINT_VERSION.to_le_bytes())?;
    out.write_all(&(net.config.height as u32).to_le_bytes())?;
    out.write_all(&(net.config.width as u32).to_le_bytes())?;
    let params = net.params_vec();
    out.write_all(&(params.len() as u64).to_le_bytes())?;
    for p in &params {
        out.write_all(&p.to_le_bytes())?;
    }
    Ok(())
}

/// Reads a checkpoint written by `save_checkpoint`.
pub fn load_checkpoint<R: Read>(mut input: R) -> Result<Network, NetError> {
    let mut magic = [0u8; 4];
    input.read_exact(&mut magic)?;
    if magic != CHECKPOINT_MAGIC {
        return Err(NetError::BadCheckpoint("bad magic bytes".into()));
    }
    let version = read_u32(&mut input)?;
    if version != CHECKPOINT_VERSION {
        return Err(NetError::BadCheckpoint(format!(
            "unsupported version {version}"
        )));
    }
    let height = read_u32(&mut input)? as usize;
    let width = read_u32(&mut input)? as usize;
    let mut count_buf = [0u8; 8];
    input.read_exact(&mut count_buf)?;
    let count = u64::from_le_bytes(count_buf) as usize;

    let mut net = Network::new(NetworkConfig { height, width }, 0)
        .map_err(|e| NetError::BadCheckpoint(e.to_string()))?;
    if count != net.param_count() {
        return Err(NetError::BadCheckpoint(format!(
            "checkpoint has {count} parameters, architecture needs {}",
            net.param_count()
        )));
    }
    let mut bytes = vec![0u8; count * 8];
    input.read_exact(&mut bytes)?;
    let params: Vec<f64> = bytes
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
        .collect();
    net.set_params_vec(&params)?;
    Ok(net)
}

fn read_u32<R: Read>(input: &mut R) -> Result<u32, NetError> {
    let mut buf = [0u8; 4];
    input.read_exact(&mut buf)?;
    Ok(u32::from_le_bytes(buf))
}

pub fn save_checkpoint_file<P: AsRef<Path>>(net: &Network, path: P) -> Result<(), NetError> {
    let mut out = BufWriter::new(File::create(path)?);
    save_checkpoint(net, &mut out)?;
    out.flush()?;
    Ok(())
}

pub fn load_checkpoint_file<P: AsRef<Path>>(path: P) -> Result<Network, NetError> {
    load_checkpoint(BufReader::new(File::open(path)?))
}
