//! Input texts and sentinel wrapping.
//!
//! Symbols are raw bytes. Two byte values are reserved for the start (`♯`)
//! and end (`$`) sentinels when wrapping is requested; by default these are
//! `0x01` and `0x00`.

use std::fmt;

use thiserror::Error;

/// Which sentinels are injected around the raw input.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Sentinels {
    /// The text is indexed verbatim.
    None,
    /// A unique `$` is appended.
    EndOnly,
    /// A unique `♯` is prepended and a unique `$` appended.
    #[default]
    Both,
}

impl Sentinels {
    pub fn has_start(self) -> bool {
        matches!(self, Sentinels::Both)
    }

    pub fn has_end(self) -> bool {
        matches!(self, Sentinels::EndOnly | Sentinels::Both)
    }

    pub(crate) fn to_code(self) -> u8 {
        match self {
            Sentinels::None => 0,
            Sentinels::EndOnly => 1,
            Sentinels::Both => 2,
        }
    }

    pub(crate) fn from_code(code: u8) -> Option<Self> {
        match code {
            0 => Some(Sentinels::None),
            1 => Some(Sentinels::EndOnly),
            2 => Some(Sentinels::Both),
            _ => None,
        }
    }
}

/// Byte values used for the sentinels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SentinelCodes {
    pub start: u8,
    pub end: u8,
}

impl Default for SentinelCodes {
    fn default() -> Self {
        SentinelCodes {
            start: 0x01,
            end: 0x00,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WrapError {
    #[error("reserved sentinel byte 0x{byte:02x} found at position {position}")]
    ReservedSymbol { position: usize, byte: u8 },
    #[error("start and end sentinels must be distinct bytes")]
    IdenticalSentinels,
    #[error("text is empty; use a sentinel mode or supply at least one symbol")]
    Empty,
}

/// A wrapped text ready to be indexed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Text {
    symbols: Vec<u8>,
    mode: Sentinels,
    codes: SentinelCodes,
    sigma: usize,
}

impl Text {
    /// Wraps `raw` with the default sentinel codes.
    pub fn wrap(raw: &[u8], mode: Sentinels) -> Result<Text, WrapError> {
        Text::wrap_with(raw, mode, SentinelCodes::default())
    }

    pub fn wrap_with(raw: &[u8], mode: Sentinels, codes: SentinelCodes) -> Result<Text, WrapError> {
        if mode != Sentinels::None {
            if codes.start == codes.end && mode.has_start() {
                return Err(WrapError::IdenticalSentinels);
            }
            let reserved = |b: u8| (mode.has_start() && b == codes.start) || b == codes.end;
            if let Some(position) = raw.iter().position(|&b| reserved(b)) {
                return Err(WrapError::ReservedSymbol {
                    position,
                    byte: raw[position],
                });
            }
        }
        let mut symbols = Vec::with_capacity(raw.len() + 2);
        if mode.has_start() {
            symbols.push(codes.start);
        }
        symbols.extend_from_slice(raw);
        if mode.has_end() {
            symbols.push(codes.end);
        }
        Text::from_symbols(symbols, mode, codes)
    }

    /// Builds a text from symbols that are already wrapped (or raw, for
    /// [`Sentinels::None`]). No reserved-symbol validation is performed.
    pub fn from_symbols(symbols: Vec<u8>, mode: Sentinels, codes: SentinelCodes) -> Result<Text, WrapError> {
        if symbols.is_empty() {
            return Err(WrapError::Empty);
        }
        let sigma = alphabet_size(&symbols);
        Ok(Text {
            symbols,
            mode,
            codes,
            sigma,
        })
    }

    /// The reversed text. Sentinel roles are swapped, so the mode is kept
    /// as-is; the reversed text is only ever used as an indexing target.
    pub fn reversed(&self) -> Text {
        let mut symbols = self.symbols.clone();
        symbols.reverse();
        Text {
            symbols,
            mode: self.mode,
            codes: self.codes,
            sigma: self.sigma,
        }
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn mode(&self) -> Sentinels {
        self.mode
    }

    pub fn codes(&self) -> SentinelCodes {
        self.codes
    }

    pub fn sigma(&self) -> usize {
        self.sigma
    }
}

impl fmt::Debug for Text {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Text")
            .field("symbols", &String::from_utf8_lossy(&self.symbols))
            .field("mode", &self.mode)
            .field("sigma", &self.sigma)
            .finish()
    }
}

pub(crate) fn alphabet_size(symbols: &[u8]) -> usize {
    let mut seen = [false; 256];
    for &b in symbols {
        seen[b as usize] = true;
    }
    seen.iter().filter(|&&s| s).count()
}
