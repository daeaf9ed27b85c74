//! JSON polytope documents: `{"lattice_dim": d, "vertices": [[...], ...]}`.

use serde::{Deserialize, Serialize};

use super::LatticePolytope;
use crate::intlin::IntVec;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeDocument {
    pub lattice_dim: usize,
    pub vertices: Vec<IntVec>,
}

impl PolytopeDocument {
    /// Vertices are written in canonical order.
    pub fn from_polytope(p: &LatticePolytope) -> PolytopeDocument {
        let nf = p.canonical_form();
        let vertices = nf.vertex_order().iter().map(|&i| p.vertices()[i].clone()).collect();
        PolytopeDocument { lattice_dim: p.dim(), vertices }
    }

    pub fn to_polytope(&self) -> Result<LatticePolytope> {
        if self.vertices.iter().any(|v| v.len() != self.lattice_dim) {
            return Err(Error::InvalidInput(format!(
                "every vertex must have {} coordinates",
                self.lattice_dim
            )));
        }
        if self.lattice_dim == 0 {
            return LatticePolytope::restrict_to_span(&self.vertices).map(|(p, _)| p);
        }
        LatticePolytope::hull(&self.vertices)
    }
}

pub fn from_json(text: &str) -> std::result::Result<PolytopeDocument, serde_json::Error> {
    serde_json::from_str(text)
}

pub fn to_json(p: &LatticePolytope) -> String {
    serde_json::to_string_pretty(&PolytopeDocument::from_polytope(p)).expect("serializable document")
}

pub fn read_polytope(text: &str) -> Result<LatticePolytope> {
    from_json(text).map_err(|e| Error::InvalidInput(e.to_string()))?.to_polytope()
}
