//! Plain-text dump of a quotient complex.
//!
//! ```text
//! # corners quotient complex v1
//! dim 2
//! colours 3
//! cells 0 20
//! cells 1 40
//! cells 2 16
//! cell 0 0 4 5          # degree, index, stratum, least coset element
//! 1 0 0 -1              # d row col value: entry of ∂_d
//! ```
//!
//! Matrix lines are sorted by degree, then row, then column.

use std::fmt::Write as _;

use super::{OrbitError, QuotientComplex};
use crate::homology::{ChainComplex, SparseIntMatrix};

pub fn write_dump(q: &QuotientComplex) -> String {
    let mut out = String::from("# corners quotient complex v1\n");
    let _ = writeln!(out, "dim {}", q.dim());
    let _ = writeln!(out, "colours {}", q.k());
    for d in 0..=q.dim() {
        let _ = writeln!(out, "cells {d} {}", q.cells(d).len());
    }
    for d in 0..=q.dim() {
        for (i, c) in q.cells(d).iter().enumerate() {
            let _ = writeln!(out, "cell {d} {i} {} {}", c.stratum, c.coset);
        }
    }
    for d in 1..=q.dim() {
        for &(r, c, v) in q.chain().boundary(d).entries() {
            let _ = writeln!(out, "{d} {r} {c} {v}");
        }
    }
    out
}

/// Reads the cell counts and boundary matrices back; the cell table is
/// checked for consistency with the counts but otherwise ignored.
pub fn parse_dump(text: &str) -> Result<ChainComplex, OrbitError> {
    let mut dim: Option<usize> = None;
    let mut counts: Vec<Option<usize>> = Vec::new();
    let mut listed: Vec<usize> = Vec::new();
    let mut triplets: Vec<Vec<(u32, u32, i64)>> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: &str| OrbitError::Format { line: k + 1, msg: msg.to_string() };
        let words: Vec<&str> = line.split_whitespace().collect();
        let num = |s: &str| s.parse::<i64>().map_err(|_| err(&format!("bad number `{s}`")));
        let need_dim = || dim.ok_or_else(|| err("`dim` must come first"));
        match words[0] {
            "dim" if words.len() == 2 => {
                let n = num(words[1])? as usize;
                dim = Some(n);
                counts = vec![None; n + 1];
                listed = vec![0; n + 1];
                triplets = vec![Vec::new(); n + 1];
            }
            "colours" => {}
            "cells" if words.len() == 3 => {
                let n = need_dim()?;
                let d = num(words[1])? as usize;
                if d > n {
                    return Err(err("degree out of range"));
                }
                counts[d] = Some(num(words[2])? as usize);
            }
            "cell" if words.len() == 5 => {
                let n = need_dim()?;
                let d = num(words[1])? as usize;
                if d > n {
                    return Err(err("degree out of range"));
                }
                listed[d] += 1;
            }
            _ if words.len() == 4 => {
                let n = need_dim()?;
                let d = num(words[0])? as usize;
                if d == 0 || d > n {
                    return Err(err("degree out of range"));
                }
                let (r, c, v) = (num(words[1])?, num(words[2])?, num(words[3])?);
                if r < 0 || c < 0 {
                    return Err(err("negative index"));
                }
                triplets[d].push((r as u32, c as u32, v));
            }
            _ => return Err(err("unrecognised line")),
        }
    }
    let missing = |msg: &str| OrbitError::Format { line: 0, msg: msg.to_string() };
    let n = dim.ok_or_else(|| missing("missing `dim`"))?;
    let counts: Vec<usize> = counts
        .into_iter()
        .map(|c| c.ok_or_else(|| missing("missing `cells` line")))
        .collect::<Result<_, _>>()?;
    if listed.iter().any(|&l| l != 0) && listed != counts {
        return Err(missing("cell table disagrees with `cells` counts"));
    }
    let mut boundary = Vec::with_capacity(n);
    for d in 1..=n {
        let (rows, cols) = (counts[d - 1], counts[d]);
        if triplets[d].iter().any(|&(r, c, _)| r as usize >= rows || c as usize >= cols) {
            return Err(missing(&format!("entry of ∂_{d} outside {rows}x{cols}")));
        }
        boundary.push(SparseIntMatrix::from_triplets(rows, cols, std::mem::take(&mut triplets[d])));
    }
    Ok(ChainComplex::new(counts, boundary)?)
}
