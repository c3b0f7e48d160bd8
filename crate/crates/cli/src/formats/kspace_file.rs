use std::path::Path;

use prom_core::{Complex64, ComplexGrid, Error, GridShape};

use super::{check_payload, check_preamble, read_file, tag, write_file, Cursor, FileError, FormatError, FORMAT_VERSION};

pub const KSPACE_MAGIC: [u8; 4] = *b"PKSP";
const HEADER_LEN: usize = 4 + 2 + 4 + 4 + 4;

/// A stack of equally shaped complex slices stored as interleaved f32
/// `(re, im)` pairs, row-major, DC at the grid center.
#[derive(Debug, Clone, PartialEq)]
pub struct KSpaceFile {
    shape: GridShape,
    count: usize,
    samples: Vec<[f32; 2]>,
}

impl KSpaceFile {
    /// Narrows every sample to f32.
    pub fn from_slices(slices: &[ComplexGrid]) -> Result<Self, FormatError> {
        let first = slices.first().ok_or(Error::EmptyInput("no slices to store"))?;
        let shape = first.shape();
        let mut samples = Vec::with_capacity(slices.len() * shape.len());
        for grid in slices {
            if grid.shape() != shape {
                return Err(Error::ShapeMismatch {
                    left: shape,
                    right: grid.shape(),
                }
                .into());
            }
            samples.extend(grid.data().iter().map(|z| [z.re as f32, z.im as f32]));
        }
        if let Some(i) = samples.iter().position(|s| !(s[0].is_finite() && s[1].is_finite())) {
            return Err(FormatError::NonFinite(i));
        }
        Ok(KSpaceFile {
            shape,
            count: slices.len(),
            samples,
        })
    }

    pub fn shape(&self) -> GridShape {
        self.shape
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn samples(&self) -> &[[f32; 2]] {
        &self.samples
    }

    pub fn slice(&self, index: usize) -> Option<ComplexGrid> {
        let d = self.shape.len();
        let chunk = self.samples.get(index * d..(index + 1) * d)?;
        let data = chunk
            .iter()
            .map(|s| Complex64::new(s[0] as f64, s[1] as f64))
            .collect();
        Some(ComplexGrid::new(self.shape, data).expect("finite samples of the right length"))
    }

    pub fn slices(&self) -> Vec<ComplexGrid> {
        (0..self.count).filter_map(|i| self.slice(i)).collect()
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(HEADER_LEN + 8 * self.samples.len());
        out.extend_from_slice(&KSPACE_MAGIC);
        out.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
        for dim in [self.count, self.shape.height(), self.shape.width()] {
            out.extend_from_slice(&(dim as u32).to_le_bytes());
        }
        for [re, im] in &self.samples {
            out.extend_from_slice(&re.to_le_bytes());
            out.extend_from_slice(&im.to_le_bytes());
        }
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self, FormatError> {
        check_preamble(bytes, KSPACE_MAGIC, HEADER_LEN)?;
        let mut cur = Cursor::new(&bytes[6..]);
        let (count, height, width) = (cur.u32() as usize, cur.u32() as usize, cur.u32() as usize);
        if count == 0 || height == 0 || width == 0 {
            return Err(FormatError::ZeroDimension);
        }
        let values = (count as u64)
            .checked_mul(height as u64)
            .and_then(|v| v.checked_mul(width as u64))
            .ok_or(FormatError::Overflow)?;
        check_payload(bytes, HEADER_LEN, values, 8)?;

        let shape = GridShape::new(height, width)?;
        let mut cur = Cursor::new(&bytes[HEADER_LEN..]);
        let mut samples = Vec::with_capacity(values as usize);
        for i in 0..values as usize {
            let (re, im) = (cur.f32(), cur.f32());
            if !(re.is_finite() && im.is_finite()) {
                return Err(FormatError::NonFinite(i));
            }
            samples.push([re, im]);
        }
        Ok(KSpaceFile { shape, count, samples })
    }

    pub fn load(path: &Path) -> Result<Self, FileError> {
        Self::from_bytes(&read_file(path)?).map_err(tag(path))
    }

    pub fn save(&self, path: &Path) -> Result<(), FileError> {
        write_file(path, &self.to_bytes())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> KSpaceFile {
        let shape = GridShape::new(2, 3).unwrap();
        let grids: Vec<ComplexGrid> = (0..2)
            .map(|k| {
                let data = (0..6).map(|i| Complex64::new(i as f64 + k as f64, -0.5 * i as f64)).collect();
                ComplexGrid::new(shape, data).unwrap()
            })
            .collect();
        KSpaceFile::from_slices(&grids).unwrap()
    }

    #[test]
    fn header_layout() {
        let bytes = sample().to_bytes();
        assert_eq!(&bytes[..4], b"PKSP");
        assert_eq!(&bytes[4..6], &[1, 0]);
        assert_eq!(&bytes[6..18], &[2, 0, 0, 0, 2, 0, 0, 0, 3, 0, 0, 0]);
        assert_eq!(bytes.len(), 18 + 8 * 12);
    }

    #[test]
    fn round_trip() {
        let file = sample();
        let back = KSpaceFile::from_bytes(&file.to_bytes()).unwrap();
        assert_eq!(back, file);
        assert_eq!(back.slice(1).unwrap().data()[2], Complex64::new(3.0, -1.0));
        assert!(back.slice(2).is_none());
    }

    #[test]
    fn malformed_headers() {
        let good = sample().to_bytes();
        let mut bad = good.clone();
        bad[0] = b'X';
        assert!(matches!(KSpaceFile::from_bytes(&bad), Err(FormatError::BadMagic { .. })));
        assert!(matches!(KSpaceFile::from_bytes(&good[..10]), Err(FormatError::TruncatedHeader(10))));
        let mut bad = good.clone();
        bad[4] = 2;
        assert_eq!(KSpaceFile::from_bytes(&bad), Err(FormatError::UnsupportedVersion(2)));
        let mut bad = good.clone();
        bad[6] = 3;
        assert!(matches!(KSpaceFile::from_bytes(&bad), Err(FormatError::PayloadLength { .. })));
        let mut bad = good.clone();
        bad[10..14].copy_from_slice(&0u32.to_le_bytes());
        assert_eq!(KSpaceFile::from_bytes(&bad), Err(FormatError::ZeroDimension));
        let mut bad = good.clone();
        bad[6..18].copy_from_slice(&[0xff; 12]);
        assert!(KSpaceFile::from_bytes(&bad).is_err());
        let mut bad = good;
        bad.push(0);
        assert!(matches!(KSpaceFile::from_bytes(&bad), Err(FormatError::PayloadLength { .. })));
    }

    #[test]
    fn rejects_non_finite_payload() {
        let mut bytes = sample().to_bytes();
        bytes[18..22].copy_from_slice(&f32::NAN.to_le_bytes());
        assert_eq!(KSpaceFile::from_bytes(&bytes), Err(FormatError::NonFinite(0)));
    }
}
