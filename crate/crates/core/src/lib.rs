//! Manifolds with right-angled corners built from polytope tessellations,
//! their colourings and quotient homology, and a checker for L-space
//! certificates on drilling-filling trees.

pub mod colouring;
pub mod corners;
pub mod homology;
pub mod lspace;
pub mod orbit;
pub mod polytope;

pub use colouring::{Colouring, ColouringError, FacetGraph, GeneralisedColouring};
pub use corners::{CornerComplex, CornersError, Gluing, Slot};
pub use homology::{ChainComplex, Field, HomologyError, SparseIntMatrix};
pub use lspace::{Certificate, LspaceError, Slope, SlopeInterval};
pub use orbit::{OrbitError, QuotientComplex};
pub use polytope::{FaceIso, FaceRef, Polytope, PolytopeError};
