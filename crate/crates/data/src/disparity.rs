use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::error::DataError;

/// Magic bytes at the start of the native binary container.
const MAGIC: [u8; 4] = *b"DSPM";
/// Container version written by this crate.
const FORMAT_VERSION: u32 = 1;
/// Dimension guard so a corrupt header cannot request a huge allocation.
const MAX_DIM: usize = 1 << 16;

/// One normalized disparity frame.
///
/// Values are stored row-major, one `f32` per pixel, always inside `[0, 1]`
/// where larger means closer to the camera. `frame_index` records the frame's
/// position in time order within its sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct DisparityMap {
    width: usize,
    height: usize,
    frame_index: usize,
    values: Vec<f32>,
}

impl DisparityMap {
    /// Builds a map from row-major values, rejecting out-of-range input.
    pub fn new(
        width: usize,
        height: usize,
        frame_index: usize,
        values: Vec<f32>,
    ) -> Result<Self, DataError> {
        Self::check_dims(width, height)?;
        let expected = width * height;
        if values.len() != expected {
            return Err(DataError::ValueCount {
                expected,
                found: values.len(),
            });
        }
        for (index, v) in values.iter().enumerate() {
            if !v.is_finite() || !(0.0..=1.0).contains(v) {
                return Err(DataError::NonFiniteValue { index });
            }
        }
        Ok(DisparityMap {
            width,
            height,
            frame_index,
            values,
        })
    }

    /// Same as `new` but clamps finite values into `[0, 1]` instead of
    /// rejecting them. Non-finite values are still errors.
    pub fn new_clamped(
        width: usize,
        height: usize,
        frame_index: usize,
        mut values: Vec<f32>,
    ) -> Result<Self, DataError> {
        for (index, v) in values.iter_mut().enumerate() {
            if !v.is_finite() {
                return Err(DataError::NonFiniteValue { index });
            }
            *v = v.clamp(0.0, 1.0);
        }
        Self::new(width, height, frame_index, values)
    }

    fn check_dims(width: usize, height: usize) -> Result<(), DataError> {
        if width == 0 || height == 0 || width > MAX_DIM || height > MAX_DIM {
            return Err(DataError::BadDimensions { width, height });
        }
        Ok(())
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn frame_index(&self) -> usize {
        self.frame_index
    }

    /// Row-major pixel values.
    pub fn values(&self) -> &[f32] {
        &self.values
    }

    /// Value at column x, row y.
    pub fn get(&self, x: usize, y: usize) -> f32 {
        assert!(x < self.width && y < self.height);
        self.values[y * self.width + x]
    }

    /// Copy of this map stamped with a different time index.
    pub fn with_frame_index(&self, frame_index: usize) -> Self {
        DisparityMap {
            frame_index,
            ..self.clone()
        }
    }
}

/// Writes the native binary container: magic, version, width, height,
/// frame index (all little-endian u32), then row-major f32 values.
pub fn save_disparity<W: Write>(map: &DisparityMap, mut out: W) -> Result<(), DataError> {
    out.write_all(&MAGIC)?;
    out.write_all(&FORMAT_VERSION.to_le_bytes())?;
    out.write_all(&(map.width as u32).to_le_bytes())?;
    out.write_all(&(map.height as u32).to_le_bytes())?;
    out.write_all(&(map.frame_index as u32).to_le_bytes())?;
    for v in &map.values {
        out.write_all(&v.to_le_bytes())?;
    }
    Ok(())
}

/// Reads the native binary container written by `save_disparity`.
pub fn load_disparity<R: Read>(mut input: R) -> Result<DisparityMap, DataError> {
    let mut magic = [0u8; 4];
    input.read_exact(&mut magic)?;
    if magic != MAGIC {
        return Err(DataError::BadMagic);
    }
    let version = read_u32(&mut input)?;
    if version != FORMAT_VERSION {
        return Err(DataError::UnsupportedVersion(version));
    }
    let width = read_u32(&mut input)? as usize;
    let height = read_u32(&mut input)? as usize;
    let frame_index = read_u32(&mut input)? as usize;
    DisparityMap::check_dims(width, height)?;
    let count = width * height;
    let mut bytes = vec![0u8; count * 4];
    input.read_exact(&mut bytes)?;
    let values = bytes
        .chunks_exact(4)
        .map(|c| f32::from_le_bytes([c[0], c[1], c[2], c[3]]))
        .collect();
    DisparityMap::new_clamped(width, height, frame_index, values)
}

fn read_u32<R: Read>(input: &mut R) -> Result<u32, DataError> {
    let mut buf = [0u8; 4];
    input.read_exact(&mut buf)?;
    Ok(u32::from_le_bytes(buf))
}

/// Writes a map to a file in the native binary format.
pub fn save_disparity_file<P: AsRef<Path>>(map: &DisparityMap, path: P) -> Result<(), DataError> {
    let mut out = BufWriter::new(File::create(path)?);
    save_disparity(map, &mut out)?;
    out.flush()?;
    Ok(())
}

/// Reads a map from a file in the native binary format.
pub fn load_disparity_file<P: AsRef<Path>>(path: P) -> Result<DisparityMap, DataError> {
    load_disparity(BufReader::new(File::open(path)?))
}

/// Imports a single-channel 8-bit or 16-bit grayscale image, normalizing
/// pixel values by the format's maximum so a saturated pixel maps to 1.0.
pub fn import_grayscale<P: AsRef<Path>>(
    path: P,
    frame_index: usize,
) -> Result<DisparityMap, DataError> {
    let img = image::ImageReader::open(path)?
        .with_guessed_format()?
        .decode()?;
    let (values, width, height) = match img {
        image::DynamicImage::ImageLuma8(buf) => {
            let (w, h) = (buf.width() as usize, buf.height() as usize);
            let v = buf.into_raw().iter().map(|&p| p as f32 / 255.0).collect();
            (v, w, h)
        }
        image::DynamicImage::ImageLuma16(buf) => {
            let (w, h) = (buf.width() as usize, buf.height() as usize);
            let v = buf.into_raw().iter().map(|&p| p as f32 / 65535.0).collect();
            (v, w, h)
        }
        other => {
            return Err(DataError::NotGrayscale(format!("{:?}", other.color())));
        }
    };
    DisparityMap::new_clamped(width, height, frame_index, values)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn constant_map(w: usize, h: usize, value: f32) -> DisparityMap {
        DisparityMap::new(w, h, 0, vec![value; w * h]).unwrap()
    }

    #[test]
    fn rejects_wrong_value_count() {
        let err = DisparityMap::new(4, 4, 0, vec![0.0; 15]).unwrap_err();
        assert!(matches!(
            err,
            DataError::ValueCount {
                expected: 16,
                found: 15
            }
        ));
    }

    #[test]
    fn rejects_zero_dimensions() {
        assert!(matches!(
            DisparityMap::new(0, 4, 0, vec![]),
            Err(DataError::BadDimensions { .. })
        ));
        assert!(matches!(
            DisparityMap::new(4, 0, 0, vec![]),
            Err(DataError::BadDimensions { .. })
        ));
    }

    #[test]
    fn rejects_out_of_range_and_nan() {
        assert!(DisparityMap::new(1, 1, 0, vec![1.5]).is_err());
        assert!(DisparityMap::new(1, 1, 0, vec![-0.1]).is_err());
        assert!(DisparityMap::new(1, 1, 0, vec![f32::NAN]).is_err());
        assert!(DisparityMap::new_clamped(1, 1, 0, vec![f32::NAN]).is_err());
    }

    #[test]
    fn clamped_constructor_limits_range() {
        let m = DisparityMap::new_clamped(2, 1, 0, vec![1.5, -0.25]).unwrap();
        assert_eq!(m.values(), &[1.0, 0.0]);
    }

    #[test]
    fn constant_half_map_round_trips_bit_exactly() {
        let m = constant_map(4, 4, 0.5);
        let mut buf = Vec::new();
        save_disparity(&m, &mut buf).unwrap();
        let back = load_disparity(buf.as_slice()).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn random_map_round_trips_bit_exactly() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let (w, h) = (19, 7);
        let values: Vec<f32> = (0..w * h).map(|_| rng.random::<f32>()).collect();
        let m = DisparityMap::new(w, h, 42, values).unwrap();
        let mut buf = Vec::new();
        save_disparity(&m, &mut buf).unwrap();
        let back = load_disparity(buf.as_slice()).unwrap();
        assert_eq!(back, m);
        assert_eq!(back.frame_index(), 42);

        let mut buf2 = Vec::new();
        save_disparity(&back, &mut buf2).unwrap();
        assert_eq!(buf, buf2);
    }

    #[test]
    fn load_rejects_bad_magic_and_version() {
        let m = constant_map(2, 2, 0.25);
        let mut buf = Vec::new();
        save_disparity(&m, &mut buf).unwrap();

        let mut bad_magic = buf.clone();
        bad_magic[0] = b'X';
        assert!(matches!(
            load_disparity(bad_magic.as_slice()),
            Err(DataError::BadMagic)
        ));

        let mut bad_version = buf.clone();
        bad_version[4] = 9;
        assert!(matches!(
            load_disparity(bad_version.as_slice()),
            Err(DataError::UnsupportedVersion(9))
        ));

        let truncated = &buf[..buf.len() - 2];
        assert!(matches!(load_disparity(truncated), Err(DataError::Io(_))));
    }

    #[test]
    fn file_round_trip_preserves_bytes() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("frame.dmap");
        let m = constant_map(3, 5, 0.75).with_frame_index(9);
        save_disparity_file(&m, &path).unwrap();
        let back = load_disparity_file(&path).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn grayscale_16bit_max_becomes_one() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("frame.png");
        let buf: image::ImageBuffer<image::Luma<u16>, Vec<u16>> =
            image::ImageBuffer::from_raw(2, 1, vec![65535, 0]).unwrap();
        buf.save(&path).unwrap();
        let m = import_grayscale(&path, 0).unwrap();
        assert_eq!(m.values(), &[1.0, 0.0]);
    }

    #[test]
    fn grayscale_8bit_normalizes_by_255() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("frame8.png");
        let buf: image::ImageBuffer<image::Luma<u8>, Vec<u8>> =
            image::ImageBuffer::from_raw(2, 2, vec![255, 0, 51, 102]).unwrap();
        buf.save(&path).unwrap();
        let m = import_grayscale(&path, 3).unwrap();
        assert_eq!(m.frame_index(), 3);
        assert_eq!(m.get(0, 0), 1.0);
        assert_eq!(m.get(1, 0), 0.0);
        assert!((m.get(0, 1) - 0.2).abs() < 1e-6);
        assert!((m.get(1, 1) - 0.4).abs() < 1e-6);
    }

    #[test]
    fn grayscale_rejects_rgb_input() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("rgb.png");
        let buf: image::ImageBuffer<image::Rgb<u8>, Vec<u8>> =
            image::ImageBuffer::from_raw(1, 1, vec![1, 2, 3]).unwrap();
        buf.save(&path).unwrap();
        assert!(matches!(
            import_grayscale(&path, 0),
            Err(DataError::NotGrayscale(_))
        ));
    }
}
