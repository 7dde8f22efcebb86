//! Binary weight files: magic `SGCM`, format version (u32), `d` and `C`
//! (u64), then `d·C` row-major f64 values, all little-endian.

use std::path::Path;

use crate::dense::DenseMatrix;
use crate::error::{Error, Result};

pub const MODEL_MAGIC: &[u8; 4] = b"SGCM";
pub const MODEL_VERSION: u32 = 1;
const HEADER_LEN: usize = 4 + 4 + 8 + 8;

pub fn encode_weights(theta: &DenseMatrix) -> Vec<u8> {
    let mut out = Vec::with_capacity(HEADER_LEN + 8 * theta.as_slice().len());
    out.extend_from_slice(MODEL_MAGIC);
    out.extend_from_slice(&MODEL_VERSION.to_le_bytes());
    out.extend_from_slice(&(theta.n_rows() as u64).to_le_bytes());
    out.extend_from_slice(&(theta.n_cols() as u64).to_le_bytes());
    for v in theta.as_slice() {
        out.extend_from_slice(&v.to_le_bytes());
    }
    out
}

/// Decodes a weight file; `path` is only used in error messages.
pub fn decode_weights(bytes: &[u8], path: &Path) -> Result<DenseMatrix> {
    let bad = |msg: &str| Error::Parse { path: path.to_path_buf(), line: 0, msg: msg.into() };
    if bytes.len() < HEADER_LEN {
        return Err(bad("truncated header"));
    }
    if &bytes[..4] != MODEL_MAGIC {
        return Err(bad("bad magic"));
    }
    let version = u32::from_le_bytes(bytes[4..8].try_into().unwrap());
    if version != MODEL_VERSION {
        return Err(bad(&format!("unsupported version {version}")));
    }
    let d = u64::from_le_bytes(bytes[8..16].try_into().unwrap()) as usize;
    let c = u64::from_le_bytes(bytes[16..24].try_into().unwrap()) as usize;
    let body = &bytes[HEADER_LEN..];
    if d.checked_mul(c).and_then(|k| k.checked_mul(8)) != Some(body.len()) {
        return Err(bad(&format!("payload of {} bytes does not match {d}x{c}", body.len())));
    }
    let values = body.chunks_exact(8).map(|b| f64::from_le_bytes(b.try_into().unwrap())).collect();
    DenseMatrix::new(d, c, values)
}

pub fn save_weights(path: &Path, theta: &DenseMatrix) -> Result<()> {
    crate::experiments::write_atomic(path, &encode_weights(theta))
}

pub fn load_weights(path: &Path) -> Result<DenseMatrix> {
    if !path.exists() {
        return Err(Error::MissingFile(path.to_path_buf()));
    }
    decode_weights(&std::fs::read(path)?, path)
}
