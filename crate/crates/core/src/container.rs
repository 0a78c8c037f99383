//! Compressed file layout.
//!
//! ```text
//! offset  size  field
//!      0     4  magic "VLPM"
//!      4     1  version (1)
//!      5     1  mode (0 = ppm, 1 = vlppm)
//!      6     1  context order
//!      7     1  prefix length
//!      8     8  original length, little-endian
//!     16     -  range-coder payload
//! ```

use alloc::vec::Vec;

use crate::codec::{CodecConfig, Mode};
use crate::error::DecodeError;

pub const MAGIC: [u8; 4] = *b"VLPM";
pub const VERSION: u8 = 1;
pub const HEADER_LEN: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Container {
    pub config: CodecConfig,
    pub original_len: u64,
    pub payload: Vec<u8>,
}

impl Container {
    pub fn encoded_len(&self) -> usize {
        HEADER_LEN + self.payload.len()
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.encoded_len());
        out.extend_from_slice(&MAGIC);
        out.push(VERSION);
        out.push(self.config.mode as u8);
        out.push(self.config.order);
        out.push(self.config.prefix_len);
        out.extend_from_slice(&self.original_len.to_le_bytes());
        out.extend_from_slice(&self.payload);
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self, DecodeError> {
        let (header, payload) = Self::split_header(bytes)?;
        Ok(Self { config: header.0, original_len: header.1, payload: payload.to_vec() })
    }

    /// Parses and validates the header without copying the payload.
    pub fn split_header(bytes: &[u8]) -> Result<((CodecConfig, u64), &[u8]), DecodeError> {
        if bytes.len() < HEADER_LEN {
            if bytes.len() >= 4 && bytes[..4] != MAGIC {
                return Err(DecodeError::BadMagic(bytes[..4].try_into().unwrap()));
            }
            return Err(DecodeError::TruncatedHeader(HEADER_LEN));
        }
        let magic: [u8; 4] = bytes[..4].try_into().unwrap();
        if magic != MAGIC {
            return Err(DecodeError::BadMagic(magic));
        }
        if bytes[4] != VERSION {
            return Err(DecodeError::UnsupportedVersion(bytes[4]));
        }
        let config = CodecConfig { mode: Mode::try_from(bytes[5])?, order: bytes[6], prefix_len: bytes[7] };
        config.validate()?;
        let original_len = u64::from_le_bytes(bytes[8..16].try_into().unwrap());
        Ok(((config, original_len), &bytes[HEADER_LEN..]))
    }
}
