use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::lattice::PointLabel;
use super::triangulation::Triangulation;
use crate::error::{Error, Result};
use crate::geometry::barycentric_coordinates;
use crate::multigraph::{DisjointSets, EdgeSubset, Multigraph};
use crate::Rational;

/// How a maximal cell decorates one edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeStatus {
    Squiggly,
    Selected,
    Left,
    Right,
    /// Selected and left-directed.
    DoubleLeft,
    /// Selected and right-directed.
    DoubleRight,
}

impl EdgeStatus {
    pub fn is_double(self) -> bool {
        matches!(self, EdgeStatus::DoubleLeft | EdgeStatus::DoubleRight)
    }
}

/// The combinatorial shadow of a maximal cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decoration {
    /// Nodes `u` with `e_u` in the cell, ascending.
    pub selected_nodes: Vec<usize>,
    pub statuses: Vec<EdgeStatus>,
}

/// Squiggle set, double-edge set and which double edges point right.
/// In a good triangulation this key determines the cell uniquely.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DecorationKey {
    pub squiggly: EdgeSubset,
    pub double: EdgeSubset,
    pub double_right: EdgeSubset,
}

impl fmt::Display for DecorationKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "squiggly {} double {} (right {})",
            self.squiggly, self.double, self.double_right
        )
    }
}

impl Decoration {
    fn edges_where(&self, pred: impl Fn(EdgeStatus) -> bool) -> EdgeSubset {
        EdgeSubset::from_indices(
            self.statuses
                .iter()
                .enumerate()
                .filter(|(_, s)| pred(**s))
                .map(|(f, _)| f),
        )
    }

    pub fn squiggly_edges(&self) -> EdgeSubset {
        self.edges_where(|s| s == EdgeStatus::Squiggly)
    }

    pub fn double_edges(&self) -> EdgeSubset {
        self.edges_where(EdgeStatus::is_double)
    }

    /// Number of squiggly plus double edges.
    pub fn k(&self) -> usize {
        self.squiggly_edges().len() + self.double_edges().len()
    }

    pub fn key(&self) -> DecorationKey {
        DecorationKey {
            squiggly: self.squiggly_edges(),
            double: self.double_edges(),
            double_right: self.edges_where(|s| s == EdgeStatus::DoubleRight),
        }
    }
}

/// Reads the decoration off a maximal cell and validates it: one admissible
/// status per edge, acyclic double edges, exactly one selected node per
/// component of `(V, D)`, and `|V(S)| = n - |D|`.
pub fn decoration_of(g: &Multigraph, cell: &[PointLabel]) -> Result<Decoration> {
    let n = g.node_count();
    let m = g.edge_count();
    if cell.len() != n + m {
        return Err(Error::Internal(format!(
            "cell has {} points, a maximal cell needs {}",
            cell.len(),
            n + m
        )));
    }
    let mut selected_nodes = Vec::new();
    // per edge: squiggle, e_f, left, right
    let mut flags = vec![[false; 4]; m];
    for &label in cell {
        match label {
            PointLabel::Node(u) => selected_nodes.push(u),
            PointLabel::Squiggle(f) => flags[f][0] = true,
            PointLabel::Edge(f) => flags[f][1] = true,
            PointLabel::LeftArrow(f) => flags[f][2] = true,
            PointLabel::RightArrow(f) => flags[f][3] = true,
        }
    }
    selected_nodes.sort_unstable();
    let statuses = flags
        .iter()
        .enumerate()
        .map(|(f, fl)| match fl {
            [true, false, false, false] => Ok(EdgeStatus::Squiggly),
            [false, true, false, false] => Ok(EdgeStatus::Selected),
            [false, false, true, false] => Ok(EdgeStatus::Left),
            [false, false, false, true] => Ok(EdgeStatus::Right),
            [false, true, true, false] => Ok(EdgeStatus::DoubleLeft),
            [false, true, false, true] => Ok(EdgeStatus::DoubleRight),
            _ => Err(Error::Internal(format!(
                "edge {f} has an inadmissible point combination {fl:?}"
            ))),
        })
        .collect::<Result<Vec<_>>>()?;
    let deco = Decoration {
        selected_nodes,
        statuses,
    };

    let double = deco.double_edges();
    let mut dsu = DisjointSets::new(n);
    for f in double.iter() {
        let (u, v) = g.edge(f);
        if !dsu.union(u, v) {
            return Err(Error::Internal(format!(
                "double edges {double} contain a cycle"
            )));
        }
    }
    let mut per_component: HashMap<usize, usize> = HashMap::new();
    for &u in &deco.selected_nodes {
        *per_component.entry(dsu.find(u)).or_default() += 1;
    }
    for u in 0..n {
        let root = dsu.find(u);
        if per_component.get(&root).copied().unwrap_or(0) != 1 {
            return Err(Error::Internal(format!(
                "component of node {u} in (V, D) has {} selected nodes",
                per_component.get(&root).copied().unwrap_or(0)
            )));
        }
    }
    if deco.selected_nodes.len() != n - double.len() {
        return Err(Error::Internal(
            "selected node count differs from n - |D|".into(),
        ));
    }
    Ok(deco)
}

impl Triangulation {
    pub fn decoration(&self, cell: usize) -> Result<Decoration> {
        decoration_of(self.graph(), &self.cell_labels(cell))
    }

    pub fn decorations(&self) -> Result<Vec<Decoration>> {
        (0..self.cell_count()).map(|c| self.decoration(c)).collect()
    }
}

/// Outcome of checking cell ↦ (squiggles, oriented double edges).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BijectionReport {
    pub cells: usize,
    /// `2^m` times the number of acyclic edge subsets.
    pub expected: BigInt,
}

/// Verifies that decorations of the maximal cells are pairwise distinct and
/// hit every pair `(Q, H with orientation)` where `H` is acyclic and
/// `Q ⊆ E \ H`, and nothing else.
pub fn verify_main_bijection(t: &Triangulation) -> Result<BijectionReport> {
    let g = t.graph();
    let m = g.edge_count();
    let mut seen: HashMap<DecorationKey, usize> = HashMap::new();
    for c in 0..t.cell_count() {
        let key = t.decoration(c)?.key();
        if !key.squiggly.is_subset_of(EdgeSubset(!key.double.0)) || !g.is_acyclic(key.double) {
            return Err(Error::Verification(format!(
                "cell {c} has invalid decoration {key}"
            )));
        }
        if let Some(prev) = seen.insert(key, c) {
            return Err(Error::Verification(format!(
                "cells {prev} and {c} share decoration {key}"
            )));
        }
    }
    let all = g.all_edges();
    let mut expected = BigInt::zero();
    for h in g.acyclic_subsets()? {
        expected += BigInt::one() << m;
        let rest = EdgeSubset(all.0 & !h.0);
        let mut orient = 0u64;
        loop {
            let right = EdgeSubset(pdep(orient, h.0));
            let mut q = 0u64;
            loop {
                let key = DecorationKey {
                    squiggly: EdgeSubset(q),
                    double: h,
                    double_right: right,
                };
                if !seen.contains_key(&key) {
                    return Err(Error::Verification(format!(
                        "no cell carries decoration {key}"
                    )));
                }
                if q == rest.0 {
                    break;
                }
                q = q.wrapping_sub(rest.0) & rest.0;
            }
            orient += 1;
            if orient >> h.len() != 0 {
                break;
            }
        }
    }
    if BigInt::from(t.cell_count()) != expected {
        return Err(Error::Verification(format!(
            "{} cells, expected {expected}",
            t.cell_count()
        )));
    }
    Ok(BijectionReport {
        cells: t.cell_count(),
        expected,
    })
}

/// Scatters the low bits of `bits` onto the set positions of `mask`.
fn pdep(mut bits: u64, mut mask: u64) -> u64 {
    let mut out = 0;
    while mask != 0 {
        let low = mask & mask.wrapping_neg();
        if bits & 1 == 1 {
            out |= low;
        }
        bits >>= 1;
        mask &= mask - 1;
    }
    out
}

/// Coefficients of `e_w = sum_u lambda_u e_u + sum_f lambda_f (e_tail(f) - e_head(f))`
/// over selected nodes `u` and double edges `f` of a maximal cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineCoordinates {
    pub nodes: BTreeMap<usize, Rational>,
    pub double_edges: BTreeMap<usize, Rational>,
}

impl AffineCoordinates {
    pub fn all_in_unit_range(&self) -> bool {
        let allowed = [-Rational::one(), Rational::zero(), Rational::one()];
        self.nodes
            .values()
            .chain(self.double_edges.values())
            .all(|v| allowed.contains(v))
    }
}

/// Expresses `e_w` in the affine basis of a maximal cell and folds the arrow
/// and edge-unit coefficients of each double edge into one edge coefficient.
pub fn affine_coordinates(t: &Triangulation, cell: usize, w: usize) -> Result<AffineCoordinates> {
    let g = t.graph();
    let n = g.node_count();
    if w >= n {
        return Err(Error::InvalidArgument(format!("node {w} out of range")));
    }
    let labels = t.cell_labels(cell);
    let verts: Vec<Vec<Rational>> = t
        .cell_coords(cell)
        .into_iter()
        .map(|r| {
            r.into_iter()
                .map(|c| Rational::from_integer(BigInt::from(c)))
                .collect()
        })
        .collect();
    let mut target = vec![Rational::zero(); verts.len()];
    target[w] = Rational::one();
    let lambda = barycentric_coordinates(&verts, &target)
        .map_err(|_| Error::Internal(format!("cell {cell} is singular")))?;
    let deco = decoration_of(g, &labels)?;

    let mut out = AffineCoordinates {
        nodes: BTreeMap::new(),
        double_edges: BTreeMap::new(),
    };
    let mut edge_unit: HashMap<usize, Rational> = HashMap::new();
    for (label, value) in labels.iter().zip(&lambda) {
        match *label {
            PointLabel::Node(u) => {
                out.nodes.insert(u, value.clone());
            }
            PointLabel::Edge(f) => {
                edge_unit.insert(f, value.clone());
            }
            PointLabel::LeftArrow(f) | PointLabel::RightArrow(f)
                if deco.statuses[f].is_double() =>
            {
                // left - e_f = e_tail - e_head, right - e_f = e_head - e_tail
                let v = if matches!(label, PointLabel::LeftArrow(_)) {
                    value.clone()
                } else {
                    -value.clone()
                };
                out.double_edges.insert(f, v);
            }
            _ => {
                if !value.is_zero() {
                    return Err(Error::Internal(format!(
                        "point {label} of cell {cell} has nonzero coefficient {value}"
                    )));
                }
            }
        }
    }
    for (f, v) in edge_unit {
        let folded = out.double_edges.get(&f);
        let consistent = match folded {
            // e_f must cancel against its arrow
            Some(arrow) => {
                let arrow_coeff = match deco.statuses[f] {
                    EdgeStatus::DoubleLeft => arrow.clone(),
                    _ => -arrow.clone(),
                };
                (arrow_coeff + v.clone()).is_zero()
            }
            None => v.is_zero(),
        };
        if !consistent {
            return Err(Error::Internal(format!(
                "edge unit e:{f} of cell {cell} has coefficient {v} inconsistent with its arrow"
            )));
        }
    }
    Ok(out)
}
