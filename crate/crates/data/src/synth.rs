use dispvo_pose::{integrate_step, EulerAngles, Pose, RelativeMotion};
use nalgebra::Vector3;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::disparity::DisparityMap;
use crate::error::DataError;

/// Closest ray hit the renderer accepts, in meters along the optical axis.
const NEAR_CLIP: f64 = 0.2;

/// Per-frame camera motion ranges. Each sampled motion draws uniformly
/// from `[-x, x]` for every jitter field, so a profile of all zeros is a
/// stationary camera. Axes follow the KITTI camera convention: x right,
/// y down, z forward.
#[derive(Debug, Clone)]
pub struct MotionProfile {
    /// Mean forward (+z) translation per frame, meters.
    pub forward_speed: f64,
    /// Uniform jitter added to the forward translation.
    pub speed_jitter: f64,
    /// Uniform jitter on the x and y translation components.
    pub lateral_jitter: f64,
    /// Uniform yaw per frame, radians.
    pub yaw_jitter: f64,
    /// Uniform pitch and roll per frame, radians.
    pub pitch_roll_jitter: f64,
}

impl Default for MotionProfile {
    fn default() -> Self {
        MotionProfile {
            forward_speed: 0.8,
            speed_jitter: 0.3,
            lateral_jitter: 0.05,
            yaw_jitter: 0.02,
            pitch_roll_jitter: 0.004,
        }
    }
}

impl MotionProfile {
    /// A profile that never moves the camera.
    pub fn stationary() -> Self {
        MotionProfile {
            forward_speed: 0.0,
            speed_jitter: 0.0,
            lateral_jitter: 0.0,
            yaw_jitter: 0.0,
            pitch_roll_jitter: 0.0,
        }
    }

    fn validate(&self) -> Result<(), DataError> {
        let fields = [
            self.forward_speed,
            self.speed_jitter,
            self.lateral_jitter,
            self.yaw_jitter,
            self.pitch_roll_jitter,
        ];
        if fields.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(DataError::InvalidConfig(
                "motion profile fields must be finite and nonnegative".into(),
            ));
        }
        if self.yaw_jitter.max(self.pitch_roll_jitter) > 0.5 {
            return Err(DataError::InvalidConfig(
                "per-frame rotation jitter above 0.5 rad is not supported".into(),
            ));
        }
        Ok(())
    }

    /// Draws one frame-to-frame motion.
    pub fn sample<R: Rng>(&self, rng: &mut R) -> RelativeMotion {
        let roll = jitter(rng, self.pitch_roll_jitter);
        let pitch = jitter(rng, self.pitch_roll_jitter);
        let yaw = jitter(rng, self.yaw_jitter);
        let translation = Vector3::new(
            jitter(rng, self.lateral_jitter),
            jitter(rng, self.lateral_jitter),
            self.forward_speed + jitter(rng, self.speed_jitter),
        );
        let euler = EulerAngles::new(roll, pitch, yaw).expect("jitter kept angles in range");
        RelativeMotion::from_euler(euler, translation)
    }
}

fn jitter<R: Rng>(rng: &mut R, magnitude: f64) -> f64 {
    if magnitude > 0.0 {
        rng.random_range(-magnitude..magnitude)
    } else {
        0.0
    }
}

/// Synthetic sequence description.
#[derive(Debug, Clone)]
pub struct SynthConfig {
    pub width: usize,
    pub height: usize,
    pub frame_count: usize,
    pub motion: MotionProfile,
    /// Inclusive range for the number of scene panels.
    pub panel_count: (usize, usize),
    /// Depth range the panels are placed in, meters.
    pub depth_range: (f64, f64),
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig {
            width: 192,
            height: 64,
            frame_count: 60,
            motion: MotionProfile::default(),
            panel_count: (20, 50),
            depth_range: (5.0, 80.0),
        }
    }
}

impl SynthConfig {
    fn validate(&self) -> Result<(), DataError> {
        if self.frame_count == 0 {
            return Err(DataError::InvalidConfig("frame_count must be > 0".into()));
        }
        if self.width == 0 || self.height == 0 {
            return Err(DataError::InvalidConfig(
                "resolution must be nonzero in both dimensions".into(),
            ));
        }
        if self.panel_count.0 == 0 || self.panel_count.0 > self.panel_count.1 {
            return Err(DataError::InvalidConfig(
                "panel_count must be a nonempty range starting at 1 or more".into(),
            ));
        }
        let (near, far) = self.depth_range;
        if !(near.is_finite() && far.is_finite()) || near <= NEAR_CLIP || near >= far {
            return Err(DataError::InvalidConfig(
                "depth_range must satisfy 0.2 < near < far".into(),
            ));
        }
        self.motion.validate()
    }
}

/// Pinhole camera with a disparity normalization constant.
#[derive(Debug, Clone)]
pub struct Camera {
    pub width: usize,
    pub height: usize,
    pub focal: f64,
    pub cx: f64,
    pub cy: f64,
    /// Disparity is `clamp(disparity_scale / depth, 0, 1)`, so a point at
    /// `disparity_scale` meters saturates to 1.
    pub disparity_scale: f64,
}

impl Camera {
    /// Camera centered on the image with a focal length of 0.6 widths.
    pub fn for_resolution(width: usize, height: usize) -> Self {
        Camera {
            width,
            height,
            focal: 0.6 * width as f64,
            cx: (width as f64 - 1.0) / 2.0,
            cy: (height as f64 - 1.0) / 2.0,
            disparity_scale: 5.0,
        }
    }

    /// Unnormalized camera-frame ray direction for a pixel center, with
    /// z = 1 so the ray parameter of a hit equals its camera depth.
    pub fn pixel_ray(&self, x: usize, y: usize) -> Vector3<f64> {
        Vector3::new(
            (x as f64 - self.cx) / self.focal,
            (y as f64 - self.cy) / self.focal,
            1.0,
        )
    }
}

/// Fronto-parallel rectangle at fixed depth, axes aligned with the world
/// frame (the first camera frame).
#[derive(Debug, Clone)]
pub struct Panel {
    pub z: f64,
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

/// Which surface a ray hit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Surface {
    Ground,
    Panel(usize),
}

/// Static scene: a horizontal ground plane plus fronto-parallel panels
/// standing on it. World axes are the first camera frame, so the ground
/// plane sits at positive y (the y axis points down).
#[derive(Debug, Clone)]
pub struct Scene {
    pub ground_y: f64,
    pub panels: Vec<Panel>,
}

impl Scene {
    /// Draws a random scene: panel count from `config.panel_count`, depths
    /// from `config.depth_range`, lateral placement widening with depth so
    /// panels cover the field of view at every distance.
    pub fn sample<R: Rng>(rng: &mut R, config: &SynthConfig) -> Self {
        let ground_y = 1.6;
        let count = rng.random_range(config.panel_count.0..=config.panel_count.1);
        let (near, far) = config.depth_range;
        let panels = (0..count)
            .map(|_| {
                let z = rng.random_range(near..far);
                let x_center = rng.random_range(-0.55 * z..0.55 * z);
                let half_width = rng.random_range(0.5..1.0 + 0.04 * z);
                let height = rng.random_range(1.0..6.0);
                Panel {
                    z,
                    x_min: x_center - half_width,
                    x_max: x_center + half_width,
                    y_min: ground_y - height,
                    y_max: ground_y,
                }
            })
            .collect();
        Scene { ground_y, panels }
    }

    /// Closest intersection of the ray `origin + t * dir` with the scene,
    /// returned as the ray parameter t and the surface hit. When `dir` has
    /// z = 1 in camera coordinates, t is the hit's camera depth.
    pub fn raycast(&self, origin: &Vector3<f64>, dir: &Vector3<f64>) -> Option<(f64, Surface)> {
        let mut best: Option<(f64, Surface)> = None;
        let mut consider = |t: f64, surface: Surface| {
            if t >= NEAR_CLIP && best.map_or(true, |(bt, _)| t < bt) {
                best = Some((t, surface));
            }
        };
        if dir.y.abs() > 1e-12 {
            let t = (self.ground_y - origin.y) / dir.y;
            if t.is_finite() {
                consider(t, Surface::Ground);
            }
        }
        for (i, panel) in self.panels.iter().enumerate() {
            if dir.z.abs() <= 1e-12 {
                continue;
            }
            let t = (panel.z - origin.z) / dir.z;
            if !t.is_finite() || t < NEAR_CLIP {
                continue;
            }
            let x = origin.x + t * dir.x;
            let y = origin.y + t * dir.y;
            if x >= panel.x_min && x <= panel.x_max && y >= panel.y_min && y <= panel.y_max {
                consider(t, Surface::Panel(i));
            }
        }
        best
    }
}

/// Renders the scene from a camera pose as a normalized disparity map:
/// each pixel is `clamp(disparity_scale / depth, 0, 1)` for the closest
/// hit along its ray, 0 where the ray escapes the scene.
pub fn render_disparity(
    scene: &Scene,
    camera: &Camera,
    pose: &Pose,
    frame_index: usize,
) -> DisparityMap {
    let mut values = Vec::with_capacity(camera.width * camera.height);
    for y in 0..camera.height {
        for x in 0..camera.width {
            let dir = pose.rotation.rotate(&camera.pixel_ray(x, y));
            let d = match scene.raycast(&pose.position, &dir) {
                Some((depth, _)) => (camera.disparity_scale / depth).clamp(0.0, 1.0),
                None => 0.0,
            };
            values.push(d as f32);
        }
    }
    DisparityMap::new(camera.width, camera.height, frame_index, values)
        .expect("rendered values are clamped")
}

/// A generated sequence: one disparity frame per pose, plus the exact
/// frame-to-frame motions that produced the trajectory.
#[derive(Debug, Clone)]
pub struct SyntheticSequence {
    pub frames: Vec<DisparityMap>,
    pub poses: Vec<Pose>,
    pub motions: Vec<RelativeMotion>,
}

/// Generates a deterministic synthetic disparity sequence: a random scene
/// is drawn once, then the camera walks through it under the motion
/// profile, rendering one frame per pose. The same config and seed always
/// produce bit-identical output.
pub fn generate_synthetic_sequence(
    config: &SynthConfig,
    seed: u64,
) -> Result<SyntheticSequence, DataError> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let scene = Scene::sample(&mut rng, config);
    let camera = Camera::for_resolution(config.width, config.height);

    let mut poses = vec![Pose::identity()];
    let mut motions = Vec::with_capacity(config.frame_count.saturating_sub(1));
    for _ in 1..config.frame_count {
        let motion = config.motion.sample(&mut rng);
        let next = integrate_step(poses.last().unwrap(), &motion);
        poses.push(next);
        motions.push(motion);
    }

    let frames = poses
        .iter()
        .enumerate()
        .map(|(k, pose)| render_disparity(&scene, &camera, pose, k))
        .collect();
    Ok(SyntheticSequence {
        frames,
        poses,
        motions,
    })
}
