//! `x,L` checkpoint files holding summatory values at grid points.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

pub const HEADER: &str = "x,L";

pub fn format_checkpoint(rows: &[(u64, i64)]) -> String {
    let mut out = String::from(HEADER);
    out.push('\n');
    for (x, l) in rows {
        writeln!(out, "{x},{l}").unwrap();
    }
    out
}

pub fn parse_checkpoint(text: &str, path: &Path) -> Result<Vec<(u64, i64)>> {
    let bad = |line: usize, reason: &str| Error::Format {
        path: path.to_path_buf(),
        reason: format!("line {line}: {reason}"),
    };
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h.trim() == HEADER => {}
        _ => return Err(bad(1, "expected header `x,L`")),
    }
    let mut rows = Vec::new();
    for (i, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let (x, l) = line
            .split_once(',')
            .ok_or_else(|| bad(i + 1, "expected two columns"))?;
        let x = x.trim().parse().map_err(|_| bad(i + 1, "bad x"))?;
        let l = l.trim().parse().map_err(|_| bad(i + 1, "bad L"))?;
        rows.push((x, l));
    }
    Ok(rows)
}

pub fn write_checkpoint(path: &Path, rows: &[(u64, i64)]) -> Result<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)?;
        }
    }
    fs::write(path, format_checkpoint(rows))?;
    Ok(())
}

pub fn read_checkpoint(path: &Path) -> Result<Vec<(u64, i64)>> {
    parse_checkpoint(&fs::read_to_string(path)?, path)
}
