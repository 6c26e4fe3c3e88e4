use thiserror::Error;

use super::{Colouring, ColouringError};
use crate::corners::CornerComplex;

/// Facet colours in `Z_2^m`; bit `i` of a vector is its `e_{i+1}` coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralisedColouring {
    pub m: usize,
    pub vectors: Vec<u64>,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum Violation {
    #[error("{found} vectors for {expected} facets")]
    Length { found: usize, expected: usize },
    #[error("vector of facet {facet} does not fit in {m} bits")]
    TooWide { facet: u32, m: usize },
    #[error("facet {0} is coloured by the zero vector")]
    Zero(u32),
    #[error("images span a subspace of rank {rank}, not all of Z_2^{m}")]
    NotGenerating { rank: usize, m: usize },
    #[error("facets {facets:?} meet at stratum {stratum} but their colours are dependent")]
    Dependent { stratum: u32, facets: Vec<u32> },
    #[error("facet {0} is adjacent to itself")]
    NotEmbedded(u32),
}

/// GF(2) rank of a set of bit vectors.
pub(crate) fn rank_of(vectors: impl IntoIterator<Item = u64>) -> usize {
    let mut basis = [0u64; 64];
    let mut rank = 0;
    for mut v in vectors {
        while v != 0 {
            let top = 63 - v.leading_zeros() as usize;
            if basis[top] == 0 {
                basis[top] = v;
                rank += 1;
                break;
            }
            v ^= basis[top];
        }
    }
    rank
}

pub fn validate_generalised(rho: &GeneralisedColouring, cx: &CornerComplex) -> Result<(), Violation> {
    if rho.vectors.len() != cx.facets().len() {
        return Err(Violation::Length { found: rho.vectors.len(), expected: cx.facets().len() });
    }
    if let Some(f) = cx.facets().iter().find(|f| !f.embedded) {
        return Err(Violation::NotEmbedded(f.id));
    }
    for (f, &v) in rho.vectors.iter().enumerate() {
        if v == 0 {
            return Err(Violation::Zero(f as u32));
        }
        if rho.m < 64 && v >> rho.m != 0 {
            return Err(Violation::TooWide { facet: f as u32, m: rho.m });
        }
    }
    let rank = rank_of(rho.vectors.iter().copied());
    if rank != rho.m {
        return Err(Violation::NotGenerating { rank, m: rho.m });
    }
    for (sid, st) in cx.strata().iter().enumerate() {
        if st.facets.len() > 1 && rank_of(st.facets.iter().map(|&f| rho.vectors[f as usize])) != st.facets.len() {
            return Err(Violation::Dependent { stratum: sid as u32, facets: st.facets.clone() });
        }
    }
    Ok(())
}

/// `F ↦ e_{λ(F)}` in `Z_2^k`.
pub fn lift(lambda: &Colouring) -> Result<GeneralisedColouring, ColouringError> {
    let k = lambda.colour_count() as usize;
    if k > 64 {
        return Err(ColouringError::TooWide(k));
    }
    if lambda.colours.contains(&0) {
        return Err(ColouringError::ZeroColour);
    }
    Ok(GeneralisedColouring { m: k, vectors: lambda.colours.iter().map(|&c| 1u64 << (c - 1)).collect() })
}

/// Trades the last colour of an even `k`-colouring for the all-ones vector
/// of `Z_2^{k-1}`, giving a generalised colouring whose vectors are all odd.
pub fn reduce_colouring(lambda: &Colouring, n: usize) -> Result<GeneralisedColouring, ColouringError> {
    let k = lambda.colour_count();
    if k % 2 == 1 || k as usize <= n {
        return Err(ColouringError::Reduction { k, n });
    }
    if k > 65 {
        return Err(ColouringError::TooWide(k as usize - 1));
    }
    let all = if k == 65 { u64::MAX } else { (1u64 << (k - 1)) - 1 };
    let vectors = lambda
        .colours
        .iter()
        .map(|&c| match c {
            0 => Err(ColouringError::ZeroColour),
            c if c == k => Ok(all),
            c => Ok(1u64 << (c - 1)),
        })
        .collect::<Result<_, _>>()?;
    Ok(GeneralisedColouring { m: k as usize - 1, vectors })
}

/// Every vector has an odd number of nonzero coordinates.
pub fn is_orientable(rho: &GeneralisedColouring) -> bool {
    rho.vectors.iter().all(|v| v.count_ones() % 2 == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::catalog;

    fn pentagon() -> CornerComplex {
        CornerComplex::build(vec![catalog::load("pentagon").unwrap()], vec![]).unwrap()
    }

    #[test]
    fn standard_basis_lift_validates() {
        let cx = pentagon();
        let lambda = Colouring { colours: vec![1, 2, 1, 2, 3] };
        let rho = lift(&lambda).unwrap();
        assert_eq!(validate_generalised(&rho, &cx), Ok(()));
        assert!(is_orientable(&rho));
    }

    #[test]
    fn equal_colours_at_a_corner_are_dependent() {
        let cx = pentagon();
        let rho = GeneralisedColouring { m: 3, vectors: vec![1, 1, 2, 1, 4] };
        assert!(matches!(validate_generalised(&rho, &cx), Err(Violation::Dependent { .. })));
        let short = GeneralisedColouring { m: 3, vectors: vec![1, 2, 1, 2, 1] };
        assert_eq!(validate_generalised(&short, &cx), Err(Violation::NotGenerating { rank: 2, m: 3 }));
    }

    #[test]
    fn reduction_of_a_four_colouring() {
        let cx = pentagon();
        let lambda = Colouring { colours: vec![1, 2, 3, 4, 2] };
        let rho = reduce_colouring(&lambda, 2).unwrap();
        assert_eq!(rho.m, 3);
        assert_eq!(rho.vectors, vec![1, 2, 4, 7, 2]);
        assert!(is_orientable(&rho));
        assert_eq!(validate_generalised(&rho, &cx), Ok(()));
    }

    #[test]
    fn reduction_preconditions() {
        let three = Colouring { colours: vec![1, 2, 3] };
        assert_eq!(reduce_colouring(&three, 2), Err(ColouringError::Reduction { k: 3, n: 2 }));
        let two = Colouring { colours: vec![1, 2] };
        assert_eq!(reduce_colouring(&two, 2), Err(ColouringError::Reduction { k: 2, n: 2 }));
    }

    #[test]
    fn orientability_is_parity() {
        assert!(!is_orientable(&GeneralisedColouring { m: 2, vectors: vec![1, 3] }));
        assert!(is_orientable(&GeneralisedColouring { m: 3, vectors: vec![1, 7] }));
    }
}
