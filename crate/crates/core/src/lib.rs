//! Generalized cevian feet on a triangle side, the conics traced by
//! circumcenters through the apex, and the double-contact pencil those
//! conics belong to.
//!
//! Everything is computed in the canonical frame `B = (0,0)`, `C = (1,0)`,
//! apex above the x-axis; see [`geom::canonical_frame`].

pub mod cevian;
pub mod conic;
pub mod error;
pub mod geom;
pub mod pencil;
pub mod tol;
pub mod verify;

pub use cevian::{FootFamily, FootPoint, ReflectionStep};
pub use conic::{Conic, ConicClass};
pub use error::{Error, Result};
pub use geom::{Circle, LineForm, Point, TriangleFrame};
pub use pencil::{Pencil, RegionLabel, SpanFamily, SpanResult};
