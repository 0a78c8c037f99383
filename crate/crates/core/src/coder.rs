//! 32-bit range coder with byte-wise renormalization and carry propagation.
//!
//! Models describe every decision as a [`FreqSlice`]: the half-open
//! interval `[cum_lo, cum_hi)` out of `total`. The coder never adapts; all
//! probabilities come from the caller.
//!
//! The encoder keeps a 33-bit `low` so that a carry out of the top byte can
//! be detected and folded into the last byte not yet written. A run of
//! `0xFF` bytes that might still be hit by a carry is held back as a count.

use alloc::vec::Vec;

use crate::error::{DecodeError, SliceError};

/// Largest total any slice may use. Models rescale their counts to stay
/// at or below it, which keeps `range / total >= 2^8`.
pub const MAX_TOTAL: u32 = 1 << 16;

const TOP: u32 = 1 << 24;

/// Bytes read by [`Decoder::new`] before the first symbol.
pub const INIT_BYTES: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FreqSlice {
    cum_lo: u32,
    cum_hi: u32,
    total: u32,
}

impl FreqSlice {
    pub fn new(cum_lo: u32, cum_hi: u32, total: u32) -> Result<Self, SliceError> {
        if cum_lo < cum_hi && cum_hi <= total && total <= MAX_TOTAL {
            Ok(Self { cum_lo, cum_hi, total })
        } else {
            Err(SliceError { cum_lo, cum_hi, total })
        }
    }

    /// Builds a slice the caller has already validated.
    pub(crate) fn from_parts(cum_lo: u32, cum_hi: u32, total: u32) -> Self {
        debug_assert!(
            cum_lo < cum_hi && cum_hi <= total && total <= MAX_TOTAL,
            "bad slice ({cum_lo}, {cum_hi}, {total})"
        );
        Self { cum_lo, cum_hi, total }
    }

    pub fn cum_lo(&self) -> u32 {
        self.cum_lo
    }

    pub fn cum_hi(&self) -> u32 {
        self.cum_hi
    }

    pub fn total(&self) -> u32 {
        self.total
    }

    pub fn width(&self) -> u32 {
        self.cum_hi - self.cum_lo
    }

    /// True when the slice covers the whole total and so carries no information.
    pub fn is_certain(&self) -> bool {
        self.width() == self.total
    }

    pub fn contains(&self, point: u32) -> bool {
        self.cum_lo <= point && point < self.cum_hi
    }
}

#[derive(Debug, Clone)]
pub struct Encoder {
    low: u64,
    range: u32,
    cache: u8,
    pending: u64,
    started: bool,
    out: Vec<u8>,
}

impl Default for Encoder {
    fn default() -> Self {
        Self::new()
    }
}

impl Encoder {
    pub fn new() -> Self {
        Self { low: 0, range: u32::MAX, cache: 0, pending: 0, started: false, out: Vec::new() }
    }

    pub fn encode(&mut self, slice: FreqSlice) {
        let r = self.range / slice.total;
        self.low += u64::from(r * slice.cum_lo);
        self.range = r * slice.width();
        while self.range < TOP {
            self.range <<= 8;
            self.shift_low();
        }
    }

    /// Bytes emitted so far. Carries may still change the last of them,
    /// and held-back bytes are not counted.
    pub fn bytes_written(&self) -> usize {
        self.out.len()
    }

    pub fn finish(mut self) -> Vec<u8> {
        for _ in 0..5 {
            self.shift_low();
        }
        self.out
    }

    fn shift_low(&mut self) {
        if self.low < 0xFF00_0000 || self.low >= 1 << 32 {
            let carry = (self.low >> 32) as u8;
            if self.started {
                self.out.push(self.cache.wrapping_add(carry));
            } else {
                // The leading byte is the integer part of a code value in
                // [0, 1) and is always zero; it is never written.
                debug_assert_eq!(carry, 0);
                self.started = true;
            }
            for _ in 0..self.pending {
                self.out.push(0xFFu8.wrapping_add(carry));
            }
            self.pending = 0;
            self.cache = (self.low >> 24) as u8;
        } else {
            self.pending += 1;
        }
        self.low = (self.low & 0x00FF_FFFF) << 8;
    }
}

#[derive(Debug, Clone)]
pub struct Decoder<'a> {
    code: u32,
    range: u32,
    scale: u32,
    input: &'a [u8],
    pos: usize,
}

impl<'a> Decoder<'a> {
    pub fn new(input: &'a [u8]) -> Result<Self, DecodeError> {
        if input.len() < INIT_BYTES {
            return Err(DecodeError::TruncatedPayload);
        }
        let code = u32::from_be_bytes([input[0], input[1], input[2], input[3]]);
        Ok(Self { code, range: u32::MAX, scale: 0, input, pos: INIT_BYTES })
    }

    /// Returns the point in `[0, total)` selected by the encoder. The next
    /// call must be [`Decoder::consume`] with the slice containing it.
    pub fn decode_point(&mut self, total: u32) -> Result<u32, DecodeError> {
        debug_assert!((1..=MAX_TOTAL).contains(&total));
        self.scale = self.range / total;
        let point = self.code / self.scale;
        if point >= total {
            return Err(DecodeError::CorruptPayload);
        }
        Ok(point)
    }

    pub fn consume(&mut self, slice: FreqSlice) -> Result<(), DecodeError> {
        debug_assert_eq!(self.scale, self.range / slice.total);
        self.code = self.code.checked_sub(self.scale * slice.cum_lo).ok_or(DecodeError::CorruptPayload)?;
        self.range = self.scale * slice.width();
        if self.code >= self.range {
            return Err(DecodeError::CorruptPayload);
        }
        while self.range < TOP {
            let byte = *self.input.get(self.pos).ok_or(DecodeError::TruncatedPayload)?;
            self.pos += 1;
            self.code = (self.code << 8) | u32::from(byte);
            self.range <<= 8;
        }
        Ok(())
    }

    /// Checks that the whole payload was consumed. The encoder's output is
    /// exactly as long as what the decoder reads, so leftovers mean damage.
    pub fn finish(self) -> Result<(), DecodeError> {
        match self.input.len() - self.pos {
            0 => Ok(()),
            n => Err(DecodeError::TrailingBytes(n)),
        }
    }
}
