use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use super::LspaceError;

/// A primitive pair `(p, q)` up to sign, read as the extended rational `p/q`.
/// Stored with `q > 0`, or as `(1, 0)` for ∞.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slope {
    p: i64,
    q: i64,
}

impl Slope {
    pub const INFINITY: Slope = Slope { p: 1, q: 0 };

    /// Any nonzero pair; the common factor and sign are removed.
    pub fn new(p: i64, q: i64) -> Result<Slope, LspaceError> {
        if p == 0 && q == 0 {
            return Err(LspaceError::ZeroSlope);
        }
        let g = p.gcd(&q);
        let (mut p, mut q) = (p / g, q / g);
        if q < 0 || (q == 0 && p < 0) {
            p = -p;
            q = -q;
        }
        Ok(Slope { p, q })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn is_infinite(&self) -> bool {
        self.q == 0
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for Slope {
    type Err = LspaceError;

    /// Accepts `p/q`, `(p, q)` and a bare integer.
    fn from_str(s: &str) -> Result<Slope, LspaceError> {
        let bad = || LspaceError::Format { line: 0, msg: format!("bad slope `{s}`") };
        let t = s.trim();
        let (p, q) = if let Some(inner) = t.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
            inner.split_once(',').ok_or_else(bad)?
        } else if let Some(pq) = t.split_once('/') {
            pq
        } else {
            (t, "1")
        };
        let p: i64 = p.trim().parse().map_err(|_| bad())?;
        let q: i64 = q.trim().parse().map_err(|_| bad())?;
        Slope::new(p, q).map_err(|_| bad())
    }
}

fn det(a: Slope, b: Slope) -> i128 {
    a.p as i128 * b.q as i128 - a.q as i128 * b.p as i128
}

/// `a` comes before `b` when walking the circle of extended rationals in the
/// direction of increasing `p/q`, starting just after ∞.
fn before(a: Slope, b: Slope) -> bool {
    det(a, b) < 0
}

/// `b` lies strictly inside the arc that runs from `a` to `c` in the
/// direction of increasing `p/q` (passing through ∞ if needed).
pub fn strictly_between(a: Slope, b: Slope, c: Slope) -> bool {
    (before(a, b) && before(b, c)) || (before(b, c) && before(c, a)) || (before(c, a) && before(a, b))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SlopeInterval {
    /// The closed arc from `lo` to `hi` in the direction of increasing `p/q`.
    Arc { lo: Slope, hi: Slope },
    /// Every slope except the given longitude.
    AllBut(Slope),
}

impl SlopeInterval {
    /// The closed arc with these endpoints that does not contain `avoid`.
    pub fn avoiding(a: Slope, b: Slope, avoid: Slope) -> SlopeInterval {
        if strictly_between(a, avoid, b) {
            SlopeInterval::Arc { lo: b, hi: a }
        } else {
            SlopeInterval::Arc { lo: a, hi: b }
        }
    }

    pub fn contains(&self, s: Slope) -> bool {
        slope_in_interval(s, self)
    }

    pub fn strictly_contains(&self, s: Slope) -> bool {
        match *self {
            SlopeInterval::Arc { lo, hi } => strictly_between(lo, s, hi),
            SlopeInterval::AllBut(l) => s != l,
        }
    }
}

pub fn slope_in_interval(s: Slope, i: &SlopeInterval) -> bool {
    match *i {
        SlopeInterval::Arc { lo, hi } => s == lo || s == hi || strictly_between(lo, s, hi),
        SlopeInterval::AllBut(l) => s != l,
    }
}

impl fmt::Display for SlopeInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SlopeInterval::Arc { lo, hi } => write!(f, "[{lo}, {hi}]"),
            SlopeInterval::AllBut(l) => write!(f, "all but {l}"),
        }
    }
}
