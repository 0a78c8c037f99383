use thiserror::Error;

/// A cumulative-frequency slice that breaks `0 <= lo < hi <= total <= MAX_TOTAL`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("invalid frequency slice ({cum_lo}, {cum_hi}, {total})")]
pub struct SliceError {
    pub cum_lo: u32,
    pub cum_hi: u32,
    pub total: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("context order {0} outside 0..=8")]
    Order(u8),
    #[error("prefix length {0} outside 1..=8")]
    PrefixLen(u8),
    #[error("unknown mode byte {0}")]
    Mode(u8),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecodeError {
    #[error("container shorter than its {0}-byte header")]
    TruncatedHeader(usize),
    #[error("bad magic bytes {0:02x?}")]
    BadMagic([u8; 4]),
    #[error("unsupported container version {0}")]
    UnsupportedVersion(u8),
    #[error("invalid header: {0}")]
    BadHeader(#[from] ConfigError),
    #[error("payload ended before the stream was complete")]
    TruncatedPayload,
    #[error("payload is corrupt")]
    CorruptPayload,
    #[error("payload has {0} unused trailing bytes")]
    TrailingBytes(usize),
    #[error("decoded {actual} bytes but header records {expected}")]
    LengthMismatch { expected: u64, actual: u64 },
}
