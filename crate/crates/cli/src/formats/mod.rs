//! Binary k-space and mask containers, PGM export.
//!
//! All integers and floats are little-endian. Readers validate the complete
//! header, including the expected payload length, before decoding any
//! payload bytes.

mod kspace_file;
mod mask_file;
mod pgm;

pub use kspace_file::{KSpaceFile, KSPACE_MAGIC};
pub use mask_file::{MaskFile, ValueType, MASK_MAGIC};
pub use pgm::{encode_pgm, write_pgm, Grayscale};

use std::fs;
use std::path::Path;

pub const FORMAT_VERSION: u16 = 1;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FormatError {
    #[error("bad magic: expected {expected:?}, found {found:?}")]
    BadMagic { expected: [u8; 4], found: Vec<u8> },
    #[error("unsupported format version {0}")]
    UnsupportedVersion(u16),
    #[error("truncated header: {0} bytes")]
    TruncatedHeader(usize),
    #[error("payload is {found} bytes, header implies {expected}")]
    PayloadLength { expected: u64, found: u64 },
    #[error("header dimensions overflow")]
    Overflow,
    #[error("zero dimension in header")]
    ZeroDimension,
    #[error("unknown mask kind code {0}")]
    UnknownKind(u8),
    #[error("unknown value type code {0}")]
    UnknownValueType(u8),
    #[error("value {value} at index {index} is not allowed for this value type")]
    InvalidValue { index: usize, value: f32 },
    #[error("non-finite sample at index {0}")]
    NonFinite(usize),
    #[error(transparent)]
    Core(#[from] prom_core::Error),
}

#[derive(Debug, thiserror::Error)]
pub enum FileError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Format { path: String, source: FormatError },
}

pub(crate) fn read_file(path: &Path) -> Result<Vec<u8>, FileError> {
    fs::read(path).map_err(|source| FileError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub(crate) fn write_file(path: &Path, bytes: &[u8]) -> Result<(), FileError> {
    fs::write(path, bytes).map_err(|source| FileError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub(crate) fn tag(path: &Path) -> impl FnOnce(FormatError) -> FileError + '_ {
    move |source| FileError::Format {
        path: path.display().to_string(),
        source,
    }
}

/// Sequential little-endian reader over a byte slice whose lengths have
/// already been validated.
pub(crate) struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(bytes: &'a [u8]) -> Self {
        Cursor { bytes, pos: 0 }
    }

    fn take<const N: usize>(&mut self) -> [u8; N] {
        let out = self.bytes[self.pos..self.pos + N].try_into().expect("length checked");
        self.pos += N;
        out
    }

    pub(crate) fn u8(&mut self) -> u8 {
        self.take::<1>()[0]
    }

    pub(crate) fn u32(&mut self) -> u32 {
        u32::from_le_bytes(self.take())
    }

    pub(crate) fn f32(&mut self) -> f32 {
        f32::from_le_bytes(self.take())
    }
}

/// Checks magic, header length and version.
pub(crate) fn check_preamble(bytes: &[u8], magic: [u8; 4], header_len: usize) -> Result<(), FormatError> {
    if bytes.len() < 4 || bytes[..4] != magic {
        return Err(FormatError::BadMagic {
            expected: magic,
            found: bytes[..bytes.len().min(4)].to_vec(),
        });
    }
    if bytes.len() < header_len {
        return Err(FormatError::TruncatedHeader(bytes.len()));
    }
    let version = u16::from_le_bytes([bytes[4], bytes[5]]);
    if version != FORMAT_VERSION {
        return Err(FormatError::UnsupportedVersion(version));
    }
    Ok(())
}

pub(crate) fn check_payload(bytes: &[u8], header_len: usize, values: u64, width: u64) -> Result<(), FormatError> {
    let expected = values.checked_mul(width).ok_or(FormatError::Overflow)?;
    let found = (bytes.len() - header_len) as u64;
    if found != expected {
        return Err(FormatError::PayloadLength { expected, found });
    }
    Ok(())
}
