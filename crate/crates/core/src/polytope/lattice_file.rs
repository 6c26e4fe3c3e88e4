use std::fmt::Write as _;

use super::{FaceRef, Polytope, PolytopeError};

const HEADER: &str = "# corners face lattice v1";

/// Serialises the covering relation, one `d face sub` line per pair,
/// top face included.
pub fn write_lattice(p: &Polytope) -> String {
    let mut out = String::new();
    let fv: Vec<String> = p.f_vector().iter().map(ToString::to_string).collect();
    let _ = writeln!(out, "{HEADER}");
    let _ = writeln!(out, "name {}", p.name());
    let _ = writeln!(out, "dim {}", p.dim());
    let _ = writeln!(out, "fvector {}", fv.join(" "));
    for d in 1..=p.dim() {
        for i in 0..p.count(d) {
            for &s in p.subs(FaceRef::new(d, i)) {
                let _ = writeln!(out, "{d} {i} {s}");
            }
        }
    }
    out
}

pub fn parse_lattice(text: &str) -> Result<Polytope, PolytopeError> {
    let bad = |m: String| PolytopeError::Malformed(m);
    let mut name = None;
    let mut dim = None;
    let mut fvector: Option<Vec<usize>> = None;
    let mut pairs = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut words = line.split_whitespace();
        let head = words.next().unwrap_or_default();
        let rest: Vec<&str> = words.collect();
        let num = |s: &str| s.parse::<usize>().map_err(|_| bad(format!("line {}: bad number `{s}`", lineno + 1)));
        match head {
            "name" => name = Some(rest.join(" ")),
            "dim" => dim = Some(num(rest.first().copied().unwrap_or(""))?),
            "fvector" => fvector = Some(rest.iter().map(|s| num(s)).collect::<Result<_, _>>()?),
            _ => {
                if rest.len() != 2 {
                    return Err(bad(format!("line {}: expected `d face sub`", lineno + 1)));
                }
                pairs.push((num(head)?, num(rest[0])? as u32, num(rest[1])? as u32));
            }
        }
    }
    let name = name.ok_or_else(|| bad("missing `name`".into()))?;
    let dim = dim.ok_or_else(|| bad("missing `dim`".into()))?;
    let fvector = fvector.ok_or_else(|| bad("missing `fvector`".into()))?;
    Polytope::from_covering(&name, dim, &fvector, &pairs)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TRIANGLE: &str = "# corners face lattice v1\nname tri\ndim 2\nfvector 3 3\n\
        1 0 0\n1 0 1\n1 1 1\n1 1 2\n1 2 0\n1 2 2\n2 0 0\n2 0 1\n2 0 2\n";

    #[test]
    fn round_trip() {
        let p = parse_lattice(TRIANGLE).unwrap();
        assert_eq!(p.f_vector(), vec![3, 3]);
        assert_eq!(write_lattice(&p), TRIANGLE);
    }

    #[test]
    fn missing_header_fields() {
        assert!(parse_lattice("dim 2\nfvector 3 3\n").is_err());
        assert!(parse_lattice("name x\ndim 2\nfvector 3 3\n1 0\n").is_err());
    }
}
