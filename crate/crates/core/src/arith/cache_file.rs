//! Binary sieve-cache files.
//!
//! Layout, little-endian: magic `LAMB`, format version `u16`, `lo: u64`,
//! `count: u64`, then `count` signed bytes.

use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use crate::arith::ArithFnTable;
use crate::error::{Error, Result};

pub const MAGIC: &[u8; 4] = b"LAMB";
pub const FORMAT_VERSION: u16 = 1;
pub const CACHE_DIR_ENV: &str = "LIOUVILLE_CACHE_DIR";
const HEADER_LEN: usize = 4 + 2 + 8 + 8;

/// Cache directory from `LIOUVILLE_CACHE_DIR`, defaulting to `./.cache`.
pub fn cache_dir() -> PathBuf {
    std::env::var_os(CACHE_DIR_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(".cache"))
}

pub fn encode(table: &ArithFnTable) -> Vec<u8> {
    let mut buf = Vec::with_capacity(HEADER_LEN + table.len());
    buf.extend_from_slice(MAGIC);
    buf.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
    buf.extend_from_slice(&table.lo().to_le_bytes());
    buf.extend_from_slice(&(table.len() as u64).to_le_bytes());
    buf.extend(table.values().iter().map(|&v| v as u8));
    buf
}

pub fn decode(bytes: &[u8], path: &Path) -> Result<ArithFnTable> {
    let bad = |reason: &str| Error::Format {
        path: path.to_path_buf(),
        reason: reason.to_string(),
    };
    if bytes.len() < HEADER_LEN {
        return Err(bad("truncated header"));
    }
    if &bytes[..4] != MAGIC {
        return Err(bad("bad magic"));
    }
    let version = u16::from_le_bytes([bytes[4], bytes[5]]);
    if version != FORMAT_VERSION {
        return Err(bad(&format!("unsupported version {version}")));
    }
    let lo = u64::from_le_bytes(bytes[6..14].try_into().unwrap());
    let count = u64::from_le_bytes(bytes[14..22].try_into().unwrap());
    let payload = &bytes[HEADER_LEN..];
    if payload.len() as u64 != count {
        return Err(bad(&format!(
            "count {count} does not match payload length {}",
            payload.len()
        )));
    }
    ArithFnTable::new(lo, payload.iter().map(|&b| b as i8).collect())
        .map_err(|e| bad(&e.to_string()))
}

pub fn write_table(path: &Path, table: &ArithFnTable) -> Result<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)?;
        }
    }
    let mut file = fs::File::create(path)?;
    file.write_all(&encode(table))?;
    Ok(())
}

pub fn read_table(path: &Path) -> Result<ArithFnTable> {
    let mut bytes = Vec::new();
    fs::File::open(path)?.read_to_end(&mut bytes)?;
    decode(&bytes, path)
}
