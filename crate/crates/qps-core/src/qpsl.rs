//! The QPSL binary logit container.
//!
//! Layout: magic `QPSL`, one format-version byte (1), one level-count byte,
//! then per level: a length-prefixed UTF-8 level name (one length byte),
//! unsigned 32-bit little-endian T and V, and T*V little-endian 32-bit
//! floats, row-major in time.

use std::io::{Read, Write};

use crate::ctc::LogProbMatrix;
use crate::error::{Error, Result};

pub const MAGIC: [u8; 4] = *b"QPSL";
pub const VERSION: u8 = 1;

/// One named level read from or written to a QPSL file.
#[derive(Debug, Clone, PartialEq)]
pub struct Level {
    pub name: String,
    pub matrix: LogProbMatrix,
}

pub fn write_levels<W: Write>(mut w: W, levels: &[Level]) -> Result<()> {
    if levels.len() > u8::MAX as usize {
        return Err(Error::LogitFormat("too many levels".into()));
    }
    w.write_all(&MAGIC)?;
    w.write_all(&[VERSION, levels.len() as u8])?;
    for level in levels {
        let name = level.name.as_bytes();
        if name.len() > u8::MAX as usize {
            return Err(Error::LogitFormat(format!(
                "level name too long: {}",
                level.name
            )));
        }
        w.write_all(&[name.len() as u8])?;
        w.write_all(name)?;
        w.write_all(&(level.matrix.steps() as u32).to_le_bytes())?;
        w.write_all(&(level.matrix.vocab() as u32).to_le_bytes())?;
        for &v in level.matrix.values() {
            w.write_all(&(v as f32).to_le_bytes())?;
        }
    }
    Ok(())
}

/// Reads a QPSL stream. Rows are validated for normalization with tolerance
/// `1e-6`; `renormalize` shifts slightly-off rows instead of rejecting.
pub fn read_levels<R: Read>(mut r: R, renormalize: bool) -> Result<Vec<Level>> {
    let mut magic = [0u8; 4];
    r.read_exact(&mut magic)?;
    if magic != MAGIC {
        return Err(Error::LogitFormat("bad magic bytes".into()));
    }
    let mut header = [0u8; 2];
    r.read_exact(&mut header)?;
    if header[0] != VERSION {
        return Err(Error::LogitFormat(format!(
            "unsupported version {}",
            header[0]
        )));
    }
    let count = header[1] as usize;
    let mut levels = Vec::with_capacity(count);
    for _ in 0..count {
        let mut len = [0u8; 1];
        r.read_exact(&mut len)?;
        let mut name = vec![0u8; len[0] as usize];
        r.read_exact(&mut name)?;
        let name = String::from_utf8(name)
            .map_err(|_| Error::LogitFormat("level name is not UTF-8".into()))?;
        let mut dims = [0u8; 8];
        r.read_exact(&mut dims)?;
        let steps = u32::from_le_bytes(dims[0..4].try_into().unwrap()) as usize;
        let vocab = u32::from_le_bytes(dims[4..8].try_into().unwrap()) as usize;
        let total = steps
            .checked_mul(vocab)
            .ok_or_else(|| Error::LogitFormat("dimension overflow".into()))?;
        let mut raw = vec![0u8; total * 4];
        r.read_exact(&mut raw)?;
        let values: Vec<f64> = raw
            .chunks_exact(4)
            .map(|b| f32::from_le_bytes(b.try_into().unwrap()) as f64)
            .collect();
        let matrix = LogProbMatrix::new(steps, vocab, values, renormalize)?;
        levels.push(Level { name, matrix });
    }
    Ok(levels)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let m = LogProbMatrix::uniform(3, 4);
        let levels = vec![Level {
            name: "phonemes".into(),
            matrix: m,
        }];
        let mut bytes = Vec::new();
        write_levels(&mut bytes, &levels).unwrap();
        assert_eq!(&bytes[0..4], b"QPSL");
        assert_eq!(bytes[4], VERSION);
        assert_eq!(bytes[5], 1);
        let back = read_levels(bytes.as_slice(), true).unwrap();
        assert_eq!(back.len(), 1);
        assert_eq!(back[0].name, "phonemes");
        assert_eq!(back[0].matrix.steps(), 3);
        assert_eq!(back[0].matrix.vocab(), 4);
    }

    #[test]
    fn rejects_bad_magic() {
        let err = read_levels(&b"NOPE\x01\x00"[..], false).unwrap_err();
        assert!(matches!(err, Error::LogitFormat(_)));
    }

    #[test]
    fn rejects_unnormalized_rows_without_flag() {
        let mut bytes = Vec::new();
        bytes.extend_from_slice(b"QPSL");
        bytes.extend_from_slice(&[1, 1]);
        bytes.push(1);
        bytes.extend_from_slice(b"x");
        bytes.extend_from_slice(&1u32.to_le_bytes());
        bytes.extend_from_slice(&2u32.to_le_bytes());
        bytes.extend_from_slice(&0.0f32.to_le_bytes());
        bytes.extend_from_slice(&0.0f32.to_le_bytes());
        assert!(read_levels(bytes.as_slice(), false).is_err());
        assert!(read_levels(bytes.as_slice(), true).is_ok());
    }
}
