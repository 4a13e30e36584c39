use serde::{Deserialize, Serialize};

use super::halfopen::HalfOpenDecomposition;
use super::triangulation::Triangulation;
use crate::polynomial::PolynomialJson;
use crate::IntPolynomial;

/// Serialized triangulation: cells as label arrays.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangulationJson {
    pub cells: Vec<Vec<String>>,
    pub h_vector: PolynomialJson,
    pub dual_edges: Vec<[usize; 2]>,
}

/// Triangulation plus, per cell, the removed facets as label arrays.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalfOpenJson {
    pub cells: Vec<Vec<String>>,
    pub h_vector: PolynomialJson,
    pub dual_edges: Vec<[usize; 2]>,
    pub removed: Vec<Vec<Vec<String>>>,
}

fn cell_strings(t: &Triangulation) -> Vec<Vec<String>> {
    (0..t.cell_count())
        .map(|c| t.cell_labels(c).iter().map(|l| l.to_string()).collect())
        .collect()
}

fn dual(t: &Triangulation) -> Vec<[usize; 2]> {
    t.dual_edges().iter().map(|&(a, b)| [a, b]).collect()
}

impl TriangulationJson {
    pub fn new(t: &Triangulation, h_vector: &IntPolynomial) -> Self {
        TriangulationJson {
            cells: cell_strings(t),
            h_vector: h_vector.to_json(),
            dual_edges: dual(t),
        }
    }
}

impl HalfOpenJson {
    pub fn new(t: &Triangulation, decomp: &HalfOpenDecomposition) -> Self {
        HalfOpenJson {
            cells: cell_strings(t),
            h_vector: decomp.h_vector().to_json(),
            dual_edges: dual(t),
            removed: (0..decomp.cells.len())
                .map(|c| {
                    decomp
                        .removed_facets(t, c)
                        .into_iter()
                        .map(|f| f.iter().map(|l| l.to_string()).collect())
                        .collect()
                })
                .collect(),
        }
    }
}
