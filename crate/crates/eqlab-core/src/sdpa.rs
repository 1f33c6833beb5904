//! Reader and writer for the sparse SDPA input format (`.dat-s`).
//!
//! The encoded problem is
//!
//! ```text
//! minimize    c . x
//! subject to  X = sum_i x_i F_i - F_0,   X positive semidefinite,
//! ```
//!
//! with `X` block-diagonal; a negative block size denotes a diagonal
//! block. Entries are `1`-based `(matrix, block, i, j, value)` with only
//! the upper triangle stored.

use std::fmt::Write as _;
use std::path::Path;

/// One upper-triangle entry of a constraint matrix (all indices 1-based).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SparseEntry {
    pub block: usize,
    pub i: usize,
    pub j: usize,
    pub value: f64,
}

/// A block-diagonal semidefinite program in SDPA form. `mats[0]` is `F_0`
/// and `mats[k]` for `k >= 1` pairs with `objective[k - 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SdpaProblem {
    pub objective: Vec<f64>,
    /// Block sizes; negative means a diagonal block of that many entries.
    pub blocks: Vec<i64>,
    pub mats: Vec<Vec<SparseEntry>>,
}

#[derive(Debug, thiserror::Error)]
pub enum SdpaError {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed SDPA data: {0}")]
    Parse(String),
}

impl SdpaProblem {
    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    /// Serializes to the sparse SDPA text format.
    pub fn to_dat_s(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.num_vars());
        let _ = writeln!(out, "{}", self.blocks.len());
        let sizes: Vec<String> = self.blocks.iter().map(|b| b.to_string()).collect();
        let _ = writeln!(out, "{}", sizes.join(" "));
        let costs: Vec<String> = self.objective.iter().map(|c| c.to_string()).collect();
        let _ = writeln!(out, "{}", costs.join(" "));
        for (mat_no, entries) in self.mats.iter().enumerate() {
            for e in entries {
                let _ = writeln!(out, "{} {} {} {} {}", mat_no, e.block, e.i, e.j, e.value);
            }
        }
        out
    }

    pub fn write_dat_s(&self, path: &Path) -> Result<(), SdpaError> {
        std::fs::write(path, self.to_dat_s())?;
        Ok(())
    }

    /// Parses the sparse SDPA text format. Comment lines start with `"`
    /// or `*`; the punctuation `{}(),` is treated as whitespace.
    pub fn parse_dat_s(text: &str) -> Result<Self, SdpaError> {
        let mut tokens: Vec<String> = Vec::new();
        for line in text.lines() {
            let trimmed = line.trim_start();
            if trimmed.starts_with('"') || trimmed.starts_with('*') {
                continue;
            }
            let cleaned: String = line
                .chars()
                .map(|c| {
                    if matches!(c, '{' | '}' | '(' | ')' | ',') {
                        ' '
                    } else {
                        c
                    }
                })
                .collect();
            tokens.extend(cleaned.split_whitespace().map(str::to_owned));
        }
        let mut pos = 0usize;
        let mut next = |what: &str| -> Result<String, SdpaError> {
            let tok = tokens
                .get(pos)
                .ok_or_else(|| SdpaError::Parse(format!("unexpected end of file reading {what}")))?
                .clone();
            pos += 1;
            Ok(tok)
        };
        let m: usize = next("variable count")?
            .parse()
            .map_err(|e| SdpaError::Parse(format!("variable count: {e}")))?;
        let nblocks: usize = next("block count")?
            .parse()
            .map_err(|e| SdpaError::Parse(format!("block count: {e}")))?;
        let mut blocks = Vec::with_capacity(nblocks);
        for k in 0..nblocks {
            let b: i64 = next("block size")?
                .parse()
                .map_err(|e| SdpaError::Parse(format!("block size {k}: {e}")))?;
            blocks.push(b);
        }
        let mut objective = Vec::with_capacity(m);
        for k in 0..m {
            let c: f64 = next("objective")?
                .parse()
                .map_err(|e| SdpaError::Parse(format!("objective {k}: {e}")))?;
            objective.push(c);
        }
        let mut mats: Vec<Vec<SparseEntry>> = vec![Vec::new(); m + 1];
        while pos + 5 <= tokens.len() {
            let mat_no: usize = tokens[pos]
                .parse()
                .map_err(|e| SdpaError::Parse(format!("matrix index: {e}")))?;
            let block: usize = tokens[pos + 1]
                .parse()
                .map_err(|e| SdpaError::Parse(format!("block index: {e}")))?;
            let i: usize = tokens[pos + 2]
                .parse()
                .map_err(|e| SdpaError::Parse(format!("row index: {e}")))?;
            let j: usize = tokens[pos + 3]
                .parse()
                .map_err(|e| SdpaError::Parse(format!("column index: {e}")))?;
            let value: f64 = tokens[pos + 4]
                .parse()
                .map_err(|e| SdpaError::Parse(format!("entry value: {e}")))?;
            pos += 5;
            if mat_no > m {
                return Err(SdpaError::Parse(format!(
                    "matrix index {mat_no} exceeds variable count {m}"
                )));
            }
            if block == 0 || block > nblocks {
                return Err(SdpaError::Parse(format!("block index {block} out of range")));
            }
            mats[mat_no].push(SparseEntry { block, i, j, value });
        }
        if pos != tokens.len() {
            return Err(SdpaError::Parse(format!(
                "{} trailing tokens after last complete entry",
                tokens.len() - pos
            )));
        }
        Ok(SdpaProblem {
            objective,
            blocks,
            mats,
        })
    }

    pub fn read_dat_s(path: &Path) -> Result<Self, SdpaError> {
        let text = std::fs::read_to_string(path)?;
        Self::parse_dat_s(&text)
    }
}
