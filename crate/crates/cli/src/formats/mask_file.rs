use std::path::Path;

use prom_core::mask::expand_to_grid;
use prom_core::{BinaryMask, GridShape, MaskDistribution, MaskKind};

use super::{check_payload, check_preamble, read_file, tag, write_file, Cursor, FileError, FormatError, FORMAT_VERSION};

pub const MASK_MAGIC: [u8; 4] = *b"PMSK";
const HEADER_LEN: usize = 4 + 2 + 1 + 1 + 4 + 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValueType {
    Binary,
    Probability,
}

impl ValueType {
    fn code(self) -> u8 {
        match self {
            ValueType::Binary => 0,
            ValueType::Probability => 1,
        }
    }
}

fn kind_code(kind: MaskKind) -> u8 {
    match kind {
        MaskKind::Full2D => 0,
        MaskKind::Lines1D => 1,
    }
}

/// A binary mask or probability vector; Lines1D files store one value per
/// column.
#[derive(Debug, Clone, PartialEq)]
pub struct MaskFile {
    shape: GridShape,
    kind: MaskKind,
    value_type: ValueType,
    values: Vec<f32>,
}

impl MaskFile {
    pub fn new(shape: GridShape, kind: MaskKind, value_type: ValueType, values: Vec<f32>) -> Result<Self, FormatError> {
        let expected = kind.param_len(shape);
        if values.len() != expected {
            return Err(prom_core::Error::LengthMismatch {
                expected,
                found: values.len(),
            }
            .into());
        }
        for (index, &value) in values.iter().enumerate() {
            let ok = match value_type {
                ValueType::Binary => value == 0.0 || value == 1.0,
                ValueType::Probability => (0.0..=1.0).contains(&value),
            };
            if !ok {
                return Err(FormatError::InvalidValue { index, value });
            }
        }
        Ok(MaskFile {
            shape,
            kind,
            value_type,
            values,
        })
    }

    pub fn from_binary(mask: &BinaryMask) -> Self {
        let values = mask.values().iter().map(|&b| if b { 1.0 } else { 0.0 }).collect();
        MaskFile {
            shape: mask.shape(),
            kind: mask.kind(),
            value_type: ValueType::Binary,
            values,
        }
    }

    /// θ narrowed to f32, clamped so rounding cannot leave `[0, 1]`.
    pub fn from_distribution(dist: &MaskDistribution) -> Self {
        let values = dist.theta().iter().map(|&t| (t as f32).clamp(0.0, 1.0)).collect();
        MaskFile {
            shape: dist.shape(),
            kind: dist.kind(),
            value_type: ValueType::Probability,
            values,
        }
    }

    pub fn shape(&self) -> GridShape {
        self.shape
    }

    pub fn kind(&self) -> MaskKind {
        self.kind
    }

    pub fn value_type(&self) -> ValueType {
        self.value_type
    }

    pub fn values(&self) -> &[f32] {
        &self.values
    }

    pub fn to_binary(&self) -> Option<BinaryMask> {
        if self.value_type != ValueType::Binary {
            return None;
        }
        let values = self.values.iter().map(|&v| v == 1.0).collect();
        BinaryMask::new(self.shape, self.kind, values).ok()
    }

    /// Values broadcast to the full `H×W` grid.
    pub fn grid_values(&self) -> Vec<f64> {
        let values: Vec<f64> = self.values.iter().map(|&v| v as f64).collect();
        expand_to_grid(&values, self.kind, self.shape).expect("length validated at construction")
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(HEADER_LEN + 4 * self.values.len());
        out.extend_from_slice(&MASK_MAGIC);
        out.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
        out.push(kind_code(self.kind));
        out.push(self.value_type.code());
        out.extend_from_slice(&(self.shape.height() as u32).to_le_bytes());
        out.extend_from_slice(&(self.shape.width() as u32).to_le_bytes());
        for v in &self.values {
            out.extend_from_slice(&v.to_le_bytes());
        }
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self, FormatError> {
        check_preamble(bytes, MASK_MAGIC, HEADER_LEN)?;
        let mut cur = Cursor::new(&bytes[6..]);
        let kind = match cur.u8() {
            0 => MaskKind::Full2D,
            1 => MaskKind::Lines1D,
            k => return Err(FormatError::UnknownKind(k)),
        };
        let value_type = match cur.u8() {
            0 => ValueType::Binary,
            1 => ValueType::Probability,
            t => return Err(FormatError::UnknownValueType(t)),
        };
        let (height, width) = (cur.u32() as usize, cur.u32() as usize);
        if height == 0 || width == 0 {
            return Err(FormatError::ZeroDimension);
        }
        let len = match kind {
            MaskKind::Full2D => (height as u64).checked_mul(width as u64).ok_or(FormatError::Overflow)?,
            MaskKind::Lines1D => width as u64,
        };
        check_payload(bytes, HEADER_LEN, len, 4)?;

        let shape = GridShape::new(height, width)?;
        let mut cur = Cursor::new(&bytes[HEADER_LEN..]);
        let values = (0..len).map(|_| cur.f32()).collect();
        Self::new(shape, kind, value_type, values)
    }

    pub fn load(path: &Path) -> Result<Self, FileError> {
        Self::from_bytes(&read_file(path)?).map_err(tag(path))
    }

    pub fn save(&self, path: &Path) -> Result<(), FileError> {
        write_file(path, &self.to_bytes())
    }
}
