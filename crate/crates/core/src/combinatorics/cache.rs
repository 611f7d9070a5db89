//! Plain-text persistence of the Bernoulli and partition tables.
//!
//! Each file starts with the header line `sylwave-cache v1` followed by one
//! value per line (integers, or rationals as `num/den`).

use std::fs;
use std::path::Path;

use rug::{Integer, Rational};

use super::bernoulli::{bernoulli_cached, bernoulli_numbers, seed_bernoulli};
use super::partitions::{partition_table, partitions_cached, seed_partitions};
use crate::error::{Error, Result};

pub const CACHE_HEADER: &str = "sylwave-cache v1";

fn read_lines(path: &Path) -> Result<Option<Vec<String>>> {
    if !path.exists() {
        return Ok(None);
    }
    let text = fs::read_to_string(path).map_err(|e| Error::Usage(format!("{}: {e}", path.display())))?;
    let mut lines = text.lines();
    if lines.next() != Some(CACHE_HEADER) {
        return Err(Error::Parse(format!("{}: missing cache header", path.display())));
    }
    Ok(Some(lines.map(str::to_string).collect()))
}

fn write_lines<I: Iterator<Item = String>>(path: &Path, lines: I) -> Result<()> {
    let mut out = String::from(CACHE_HEADER);
    out.push('\n');
    for l in lines {
        out.push_str(&l);
        out.push('\n');
    }
    fs::write(path, out).map_err(|e| Error::Usage(format!("{}: {e}", path.display())))
}

/// Load cached tables from `dir` if present.
pub fn load_caches(dir: &Path) -> Result<()> {
    if let Some(lines) = read_lines(&dir.join("bernoulli.txt"))? {
        let vals = lines
            .iter()
            .map(|l| l.parse::<Rational>().map_err(|e| Error::Parse(format!("bernoulli cache: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        seed_bernoulli(vals);
    }
    if let Some(lines) = read_lines(&dir.join("partitions.txt"))? {
        let vals = lines
            .iter()
            .map(|l| l.parse::<Integer>().map_err(|e| Error::Parse(format!("partition cache: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        seed_partitions(vals);
    }
    Ok(())
}

/// Write tables of `B_0..=B_bern` and `p(0..=parts)` into `dir`.
pub fn save_caches(dir: &Path, bern: usize, parts: u64) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::Usage(format!("{}: {e}", dir.display())))?;
    write_lines(&dir.join("bernoulli.txt"), bernoulli_numbers(bern).iter().map(|q| q.to_string()))?;
    write_lines(&dir.join("partitions.txt"), partition_table(parts).iter().map(|q| q.to_string()))?;
    Ok(())
}

/// Write whatever the in-memory tables hold into `dir`.
pub fn save_current_caches(dir: &Path) -> Result<()> {
    let bern = bernoulli_cached().max(2) - 1;
    let parts = partitions_cached().max(1) as u64 - 1;
    save_caches(dir, bern, parts)
}
