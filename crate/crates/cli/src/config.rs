use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use dispvo_data::{MotionProfile, SynthConfig};
use dispvo_net::SCHEDULE_EPOCHS;

/// Tunable settings shared by the subcommands.
///
/// Values come from built-in defaults, then an optional `key = value` config
/// file, then command-line flags, in that order of increasing precedence.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub width: usize,
    pub height: usize,
    pub frames: usize,
    pub skip_ordering: bool,
    pub alpha: f64,
    pub epochs: usize,
    pub base_lr: f64,
    pub steps_per_epoch: Option<usize>,
    pub forward_speed: f64,
    pub speed_jitter: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        let motion = MotionProfile::default();
        let synth = SynthConfig::default();
        Self {
            width: synth.width,
            height: synth.height,
            frames: synth.frame_count,
            skip_ordering: true,
            alpha: 350.0,
            epochs: SCHEDULE_EPOCHS,
            base_lr: dispvo_net::BASE_LEARNING_RATE,
            steps_per_epoch: None,
            forward_speed: motion.forward_speed,
            speed_jitter: motion.speed_jitter,
        }
    }
}

impl RunConfig {
    /// Defaults overlaid with the config file, when one is given.
    pub fn load(path: Option<&Path>) -> Result<Self> {
        let mut config = Self::default();
        if let Some(path) = path {
            let text = fs::read_to_string(path)
                .with_context(|| format!("reading config file {}", path.display()))?;
            config
                .apply_file(&text)
                .with_context(|| format!("in config file {}", path.display()))?;
        }
        Ok(config)
    }

    fn apply_file(&mut self, text: &str) -> Result<()> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                bail!("line {}: expected `key = value`, got {raw:?}", lineno + 1);
            };
            self.set(key.trim(), value.trim())
                .with_context(|| format!("line {}", lineno + 1))?;
        }
        Ok(())
    }

    fn set(&mut self, key: &str, value: &str) -> Result<()> {
        fn parse<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
            value
                .parse()
                .map_err(|_| anyhow::anyhow!("invalid value {value:?} for {key}"))
        }
        match key {
            "width" => self.width = parse(key, value)?,
            "height" => self.height = parse(key, value)?,
            "frames" => self.frames = parse(key, value)?,
            "skip_ordering" => self.skip_ordering = parse(key, value)?,
            "alpha" => self.alpha = parse(key, value)?,
            "epochs" => self.epochs = parse(key, value)?,
            "base_lr" => self.base_lr = parse(key, value)?,
            "steps_per_epoch" => self.steps_per_epoch = Some(parse(key, value)?),
            "forward_speed" => self.forward_speed = parse(key, value)?,
            "speed_jitter" => self.speed_jitter = parse(key, value)?,
            _ => bail!("unknown config key {key:?}"),
        }
        Ok(())
    }

    /// Rejects settings outside the supported domain, in particular epoch
    /// counts past the end of the halving schedule.
    pub fn validate(&self) -> Result<()> {
        if self.epochs == 0 || self.epochs > SCHEDULE_EPOCHS {
            bail!(
                "epochs must be in 1..={SCHEDULE_EPOCHS} (learning-rate schedule domain), got {}",
                self.epochs
            );
        }
        if !(self.alpha > 0.0) || !self.alpha.is_finite() {
            bail!("alpha must be positive and finite, got {}", self.alpha);
        }
        if !(self.base_lr > 0.0) || !self.base_lr.is_finite() {
            bail!("base_lr must be positive and finite, got {}", self.base_lr);
        }
        if self.width < 8 || self.height < 8 {
            bail!("resolution must be at least 8x8, got {}x{}", self.width, self.height);
        }
        if self.frames < 3 {
            bail!("need at least 3 frames, got {}", self.frames);
        }
        if self.steps_per_epoch == Some(0) {
            bail!("steps_per_epoch must be positive when given");
        }
        Ok(())
    }
}

/// Canonical disparity frame file name for a frame index.
pub fn frame_file_name(index: usize) -> String {
    format!("{index:06}.dsp")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate() {
        RunConfig::default().validate().unwrap();
    }

    #[test]
    fn file_overrides_and_comments_apply() {
        let mut config = RunConfig::default();
        config
            .apply_file("# comment\n\nepochs = 5\nalpha = 10.5\nskip_ordering = false\n")
            .unwrap();
        assert_eq!(config.epochs, 5);
        assert_eq!(config.alpha, 10.5);
        assert!(!config.skip_ordering);
    }

    #[test]
    fn unknown_key_is_rejected() {
        let mut config = RunConfig::default();
        assert!(config.apply_file("learning_rate = 3\n").is_err());
    }

    #[test]
    fn malformed_line_is_rejected() {
        let mut config = RunConfig::default();
        assert!(config.apply_file("epochs 5\n").is_err());
    }

    #[test]
    fn out_of_domain_epochs_fail_validation() {
        let mut config = RunConfig::default();
        config.epochs = 31;
        assert!(config.validate().is_err());
        config.epochs = 0;
        assert!(config.validate().is_err());
    }

    #[test]
    fn non_positive_alpha_fails_validation() {
        let mut config = RunConfig::default();
        config.alpha = 0.0;
        assert!(config.validate().is_err());
    }

    #[test]
    fn frame_names_are_zero_padded() {
        assert_eq!(frame_file_name(0), "000000.dsp");
        assert_eq!(frame_file_name(1234), "001234.dsp");
    }
}
