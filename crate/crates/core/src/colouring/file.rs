//! Colouring files.
//!
//! Plain colourings are lines `facetId colour`. Generalised colourings start
//! with a line `vector m` and then list `facetId bits`, where `bits` is a
//! string of `m` characters `0`/`1` whose first character is the `e_1`
//! coordinate. Blank lines and `#` comments are ignored; every facet id from
//! 0 up must appear exactly once.

use std::fmt::Write as _;

use super::{Colouring, ColouringError, GeneralisedColouring};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ColouringFile {
    Plain(Colouring),
    Vector(GeneralisedColouring),
}

pub fn write_colouring_file(c: &ColouringFile) -> String {
    let mut out = String::new();
    match c {
        ColouringFile::Plain(l) => {
            for (f, c) in l.colours.iter().enumerate() {
                let _ = writeln!(out, "{f} {c}");
            }
        }
        ColouringFile::Vector(r) => {
            let _ = writeln!(out, "vector {}", r.m);
            for (f, v) in r.vectors.iter().enumerate() {
                let bits: String = (0..r.m).map(|i| if v >> i & 1 == 1 { '1' } else { '0' }).collect();
                let _ = writeln!(out, "{f} {bits}");
            }
        }
    }
    out
}

pub fn parse_colouring_file(text: &str) -> Result<ColouringFile, ColouringError> {
    let mut width: Option<usize> = None;
    let mut entries: Vec<(usize, u64)> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: &str| ColouringError::Format { line: k + 1, msg: msg.to_string() };
        let words: Vec<&str> = line.split_whitespace().collect();
        let [a, b] = words[..] else {
            return Err(err("expected two fields"));
        };
        if a == "vector" {
            if width.is_some() || !entries.is_empty() {
                return Err(err("`vector` must come first"));
            }
            let m: usize = b.parse().map_err(|_| err("bad width"))?;
            if m == 0 || m > 64 {
                return Err(err("width must be between 1 and 64"));
            }
            width = Some(m);
            continue;
        }
        let f: usize = a.parse().map_err(|_| err("bad facet id"))?;
        let value = match width {
            None => b.parse::<u64>().map_err(|_| err("bad colour"))?,
            Some(m) => {
                if b.len() != m || !b.bytes().all(|c| c == b'0' || c == b'1') {
                    return Err(err(&format!("expected {m} binary digits")));
                }
                b.bytes().enumerate().fold(0u64, |acc, (i, c)| acc | (u64::from(c - b'0') << i))
            }
        };
        entries.push((f, value));
    }
    entries.sort_unstable();
    for (i, &(f, _)) in entries.iter().enumerate() {
        if f != i {
            return Err(ColouringError::Format { line: 0, msg: format!("facet ids are not 0..{} without repeats", entries.len()) });
        }
    }
    let values = entries.into_iter().map(|(_, v)| v);
    Ok(match width {
        None => ColouringFile::Plain(Colouring { colours: values.map(|v| v as u32).collect() }),
        Some(m) => ColouringFile::Vector(GeneralisedColouring { m, vectors: values.collect() }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plain_round_trip() {
        let c = ColouringFile::Plain(Colouring { colours: vec![3, 1, 2] });
        let text = write_colouring_file(&c);
        assert_eq!(text, "0 3\n1 1\n2 2\n");
        assert_eq!(parse_colouring_file("# lambda\n2 2\n0 3\n1 1\n").unwrap(), c);
    }

    #[test]
    fn vector_round_trip() {
        let c = ColouringFile::Vector(GeneralisedColouring { m: 3, vectors: vec![1, 7, 2] });
        let text = write_colouring_file(&c);
        assert_eq!(text, "vector 3\n0 100\n1 111\n2 010\n");
        assert_eq!(parse_colouring_file(&text).unwrap(), c);
    }

    #[test]
    fn gaps_and_bad_bits_are_rejected() {
        assert!(parse_colouring_file("0 1\n2 2\n").is_err());
        assert!(parse_colouring_file("vector 2\n0 102\n").is_err());
        assert!(parse_colouring_file("0 1\nvector 2\n").is_err());
    }
}
