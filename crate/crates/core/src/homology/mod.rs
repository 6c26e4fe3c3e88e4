//! Ranks of integer matrices and Betti numbers of cellular chain complexes.

mod exact;
mod gf2;
mod matrix;
mod modp;

use std::fmt;
use std::time::Instant;

use num_traits::ToPrimitive;
use thiserror::Error;

pub use exact::{rank_exact, smith_normal_form, SNF_CAP};
pub use gf2::{rank_gf2, rank_gf2_naive};
pub use matrix::SparseIntMatrix;
pub use modp::{random_prime, rank_modp, rank_rational, rank_rational_with, RankMethod};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum HomologyError {
    #[error("{rows}x{cols} matrix exceeds the Smith normal form cap {cap}")]
    TooLarge { rows: usize, cols: usize, cap: usize },
    #[error("{maps} boundary maps for {degrees} degrees")]
    Degrees { degrees: usize, maps: usize },
    #[error("boundary map {d} is {rows}x{cols}, expected {exp_rows}x{exp_cols}")]
    Shape { d: usize, rows: usize, cols: usize, exp_rows: usize, exp_cols: usize },
    #[error("boundary of boundary is nonzero in degree {0}")]
    BoundarySquare(usize),
    #[error("the duality shortcut needs a closed orientable manifold of even dimension")]
    FastPathUnavailable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Gf2,
    Rational,
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Field::Gf2 => "gf2",
            Field::Rational => "rational",
        })
    }
}

/// Cell counts and boundary maps `∂_d : C_d → C_{d-1}` for `d = 1..=n`.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    cells: Vec<usize>,
    boundary: Vec<SparseIntMatrix>,
}

impl ChainComplex {
    pub fn new(cells: Vec<usize>, boundary: Vec<SparseIntMatrix>) -> Result<Self, HomologyError> {
        assert!(!cells.is_empty(), "a chain complex has at least one degree");
        if boundary.len() + 1 != cells.len() {
            return Err(HomologyError::Degrees { degrees: cells.len(), maps: boundary.len() });
        }
        for (i, m) in boundary.iter().enumerate() {
            let d = i + 1;
            if m.rows() != cells[d - 1] || m.cols() != cells[d] {
                return Err(HomologyError::Shape {
                    d,
                    rows: m.rows(),
                    cols: m.cols(),
                    exp_rows: cells[d - 1],
                    exp_cols: cells[d],
                });
            }
        }
        Ok(ChainComplex { cells, boundary })
    }

    pub fn dim(&self) -> usize {
        self.cells.len() - 1
    }

    pub fn cells(&self) -> &[usize] {
        &self.cells
    }

    /// `∂_d`, for `1 <= d <= dim`.
    pub fn boundary(&self, d: usize) -> &SparseIntMatrix {
        &self.boundary[d - 1]
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.cells.iter().enumerate().map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) }).sum()
    }

    pub fn check_boundary_squared(&self) -> Result<(), HomologyError> {
        for d in 2..=self.dim() {
            if !self.boundary(d - 1).mul(self.boundary(d)).is_zero() {
                return Err(HomologyError::BoundarySquare(d));
            }
        }
        Ok(())
    }

    /// Rank of `∂_d` over `field`, zero outside `1..=dim`.
    pub fn rank(&self, d: usize, field: Field) -> usize {
        if d == 0 || d > self.dim() {
            return 0;
        }
        match field {
            Field::Gf2 => rank_gf2(self.boundary(d)),
            Field::Rational => rank_rational(self.boundary(d)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiVector {
    pub field: Field,
    pub values: Vec<usize>,
}

impl BettiVector {
    pub fn alternating_sum(&self) -> i64 {
        self.values.iter().enumerate().map(|(d, &b)| if d % 2 == 0 { b as i64 } else { -(b as i64) }).sum()
    }
}

impl fmt::Display for BettiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

fn betti_from_ranks(cells: &[usize], ranks: &[usize]) -> Vec<usize> {
    // ranks[d] = rank ∂_d, with ranks[0] = ranks[n + 1] = 0
    (0..cells.len()).map(|d| cells[d] - ranks[d] - ranks[d + 1]).collect()
}

/// Betti numbers by rank–nullity in every degree.
pub fn betti(cx: &ChainComplex, field: Field) -> BettiVector {
    let n = cx.dim();
    let ranks: Vec<usize> = (0..=n + 1).map(|d| cx.rank(d, field)).collect();
    BettiVector { field, values: betti_from_ranks(cx.cells(), &ranks) }
}

/// Rational Betti numbers of a closed orientable manifold of even dimension
/// `2m`: ranks are computed only up to `∂_m`; Poincaré duality and the Euler
/// characteristic give the rest.
pub fn betti_fast_rational(cx: &ChainComplex, orientable: bool) -> Result<BettiVector, HomologyError> {
    let n = cx.dim();
    if !orientable || n % 2 == 1 {
        return Err(HomologyError::FastPathUnavailable);
    }
    let m = n / 2;
    let ranks: Vec<usize> = (0..=m).map(|d| cx.rank(d, Field::Rational)).collect();
    let mut values = vec![0usize; n + 1];
    for d in 0..m {
        values[d] = cx.cells()[d] - ranks[d] - ranks[d + 1];
        values[n - d] = values[d];
    }
    let others: i64 = (0..=n)
        .filter(|&d| d != m)
        .map(|d| if d % 2 == 0 { values[d] as i64 } else { -(values[d] as i64) })
        .sum();
    let middle = (cx.euler_characteristic() - others) * if m % 2 == 0 { 1 } else { -1 };
    values[m] = usize::try_from(middle).map_err(|_| HomologyError::FastPathUnavailable)?;
    Ok(BettiVector { field: Field::Rational, values })
}

/// GF(2) Betti numbers from integral invariant factors via universal
/// coefficients: free rank plus the even torsion of `H_d` and `H_{d-1}`.
pub fn uct_gf2_betti(cx: &ChainComplex, cap: usize) -> Result<Vec<usize>, HomologyError> {
    let n = cx.dim();
    let mut factors: Vec<Vec<u64>> = vec![Vec::new(); n + 2];
    for d in 1..=n {
        factors[d] = smith_normal_form(cx.boundary(d), cap)?
            .iter()
            .map(|f| f.to_u64().unwrap_or(u64::MAX))
            .collect();
    }
    let rank = |d: usize| factors[d].len();
    let even = |d: usize| factors[d].iter().filter(|&&f| f % 2 == 0).count();
    Ok((0..=n)
        .map(|d| {
            let free = cx.cells()[d] - rank(d) - rank(d + 1);
            let tor_d = even(d + 1);
            let tor_prev = if d >= 1 { even(d) } else { 0 };
            free + tor_d + tor_prev
        })
        .collect())
}

#[derive(Clone, Debug)]
pub struct HomologyReport {
    pub cells: Vec<usize>,
    pub euler: i64,
    /// Rank of `∂_1 .. ∂_n` per field computed.
    pub ranks: Vec<(Field, Vec<usize>)>,
    pub betti: Vec<BettiVector>,
    pub fast_rational: Option<BettiVector>,
    pub millis: u128,
}

impl HomologyReport {
    /// `key=value` lines.
    pub fn to_text(&self) -> String {
        let join = |v: &[usize]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
        let mut out = format!("cells={}\neuler={}\n", join(&self.cells), self.euler);
        for (field, r) in &self.ranks {
            out += &format!("rank_{field}={}\n", join(r));
        }
        for b in &self.betti {
            out += &format!("betti_{}={}\n", b.field, join(&b.values));
        }
        if let Some(b) = &self.fast_rational {
            out += &format!("betti_rational_fast={}\n", join(&b.values));
        }
        out += &format!("time_ms={}\n", self.millis);
        out
    }
}

/// Runs the requested fields (and the duality shortcut when `fast`) and
/// cross-checks the results against the Euler characteristic and each other.
pub fn homology_report(
    cx: &ChainComplex,
    fields: &[Field],
    fast: bool,
    orientable: bool,
) -> Result<HomologyReport, HomologyError> {
    let start = Instant::now();
    let n = cx.dim();
    let mut ranks = Vec::new();
    let mut bettis = Vec::new();
    for &field in fields {
        let r: Vec<usize> = (0..=n + 1).map(|d| cx.rank(d, field)).collect();
        bettis.push(BettiVector { field, values: betti_from_ranks(cx.cells(), &r) });
        ranks.push((field, r[1..=n].to_vec()));
    }
    let fast_rational = if fast { Some(betti_fast_rational(cx, orientable)?) } else { None };
    let euler = cx.euler_characteristic();
    for b in bettis.iter().chain(fast_rational.iter()) {
        assert_eq!(b.alternating_sum(), euler, "Betti numbers contradict the Euler characteristic");
    }
    if let (Some(f), Some(slow)) = (&fast_rational, bettis.iter().find(|b| b.field == Field::Rational)) {
        assert_eq!(f, slow, "duality shortcut disagrees with full rank computation");
    }
    Ok(HomologyReport {
        cells: cx.cells().to_vec(),
        euler,
        ranks,
        betti: bettis,
        fast_rational,
        millis: start.elapsed().as_millis(),
    })
}

#[cfg(test)]
mod tests;
