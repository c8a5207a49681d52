use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

use super::lz4::{self, Lz4Stream};

/// Lossless compressor, used only through the size of its output.
pub trait Compressor: Send + Sync + fmt::Debug {
    fn name(&self) -> &'static str;

    fn compressed_len(&self, data: &[u8]) -> usize;

    /// A growable buffer answering `compressed_len(buffer ‖ suffix)` queries.
    fn stream(&self) -> Box<dyn CompressionStream + '_> {
        Box::new(ConcatStream {
            compressor: self,
            data: Vec::new(),
        })
    }
}

pub trait CompressionStream: Send + Sync {
    fn append(&mut self, bytes: &[u8]);

    fn bytes(&self) -> &[u8];

    /// Must equal `compressed_len(self.bytes() ‖ suffix)`.
    fn compressed_len_with(&self, suffix: &[u8]) -> usize;
}

struct ConcatStream<'a, C: ?Sized> {
    compressor: &'a C,
    data: Vec<u8>,
}

impl<C: Compressor + ?Sized> CompressionStream for ConcatStream<'_, C> {
    fn append(&mut self, bytes: &[u8]) {
        self.data.extend_from_slice(bytes);
    }

    fn bytes(&self) -> &[u8] {
        &self.data
    }

    fn compressed_len_with(&self, suffix: &[u8]) -> usize {
        let mut joined = Vec::with_capacity(self.data.len() + suffix.len());
        joined.extend_from_slice(&self.data);
        joined.extend_from_slice(suffix);
        self.compressor.compressed_len(&joined)
    }
}

/// LZ4 block format; the default backend.
#[derive(Debug, Clone, Copy, Default)]
pub struct Lz4;

impl Compressor for Lz4 {
    fn name(&self) -> &'static str {
        "lz4"
    }

    fn compressed_len(&self, data: &[u8]) -> usize {
        lz4::compressed_len(data)
    }

    fn stream(&self) -> Box<dyn CompressionStream + '_> {
        Box::new(Lz4Stream::new())
    }
}

impl CompressionStream for Lz4Stream {
    fn append(&mut self, bytes: &[u8]) {
        Lz4Stream::append(self, bytes)
    }

    fn bytes(&self) -> &[u8] {
        Lz4Stream::bytes(self)
    }

    fn compressed_len_with(&self, suffix: &[u8]) -> usize {
        Lz4Stream::compressed_len_with(self, suffix)
    }
}

/// `C(x) = |x|`. Useful for checking formula arithmetic.
#[derive(Debug, Clone, Copy, Default)]
pub struct Identity;

impl Compressor for Identity {
    fn name(&self) -> &'static str {
        "identity"
    }

    fn compressed_len(&self, data: &[u8]) -> usize {
        data.len()
    }
}

pub fn compressor_by_name(name: &str) -> Result<Arc<dyn Compressor>> {
    match name.to_ascii_lowercase().as_str() {
        "lz4" => Ok(Arc::new(Lz4)),
        "identity" => Ok(Arc::new(Identity)),
        _ => Err(Error::UnknownTag {
            kind: "compressor",
            value: name.to_owned(),
        }),
    }
}
