use std::collections::{BTreeMap, HashMap, HashSet};

use rand::seq::SliceRandom;
use rand::Rng;

use super::lattice::{default_insertion_order, lattice_points, LatticePoint, PointLabel};
use crate::error::{Error, Result};
use crate::geometry::{cofactor_normal, dot, Matrix};
use crate::multigraph::Multigraph;

/// Largest ambient dimension `n + m` handled by the placing engine. Lattice
/// coordinates lie in `{-1, 0, 1, 2}`, so Hadamard's bound keeps every
/// Bareiss intermediate far inside `i128` at this size.
pub const MAX_AMBIENT_DIMENSION: usize = 40;

/// A triangulation of the cosmological polytope using all of its lattice
/// points. Cells are sorted lists of indices into [`Triangulation::points`];
/// cell 0 is the standard simplex.
#[derive(Clone, Debug)]
pub struct Triangulation {
    graph: Multigraph,
    points: Vec<LatticePoint>,
    index: HashMap<PointLabel, usize>,
    cells: Vec<Vec<usize>>,
    dual_edges: Vec<(usize, usize)>,
}

struct BoundaryFacet {
    /// Outward normal: `normal . x < 0` for points of the owning cell.
    normal: Vec<i128>,
}

fn coords_i128(p: &LatticePoint) -> Vec<i128> {
    p.coords.iter().map(|&c| c as i128).collect()
}

/// Outward normal of `facet` with respect to the opposite vertex `apex`.
fn outward_normal(points: &[LatticePoint], facet: &[usize], apex: usize) -> Result<Vec<i128>> {
    let rows: Vec<Vec<i128>> = facet.iter().map(|&i| coords_i128(&points[i])).collect();
    let mut normal = cofactor_normal(&rows)?;
    let side = dot(&normal, &coords_i128(&points[apex]));
    if side == 0 {
        return Err(Error::Internal(format!(
            "cell with apex {} is degenerate",
            points[apex].label
        )));
    }
    if side > 0 {
        normal.iter_mut().for_each(|v| *v = -*v);
    }
    Ok(normal)
}

fn without(cell: &[usize], pos: usize) -> Vec<usize> {
    let mut f = cell.to_vec();
    f.remove(pos);
    f
}

fn insert_sorted(facet: &[usize], p: usize) -> Vec<usize> {
    let mut c = facet.to_vec();
    let at = c.partition_point(|&x| x < p);
    c.insert(at, p);
    c
}

/// Placing triangulation: start from the standard simplex and add the
/// remaining lattice points in `order`, coning each one over the boundary
/// facets it strictly sees.
pub fn placing_triangulation(g: &Multigraph, order: &[PointLabel]) -> Result<Triangulation> {
    let n = g.node_count();
    let dim = n + g.edge_count();
    if n == 0 {
        return Err(Error::InvalidArgument(
            "a graph without nodes has an empty cosmological polytope".into(),
        ));
    }
    if dim > MAX_AMBIENT_DIMENSION {
        return Err(Error::SizeLimit {
            what: "ambient dimension n + m",
            limit: MAX_AMBIENT_DIMENSION,
            actual: dim,
        });
    }
    let points = lattice_points(g);
    let index: HashMap<PointLabel, usize> = points
        .iter()
        .enumerate()
        .map(|(i, p)| (p.label, i))
        .collect();

    let mut expected: HashSet<PointLabel> = points[dim..].iter().map(|p| p.label).collect();
    if order.len() != expected.len() {
        return Err(Error::InvalidArgument(format!(
            "insertion order has {} points, expected {}",
            order.len(),
            expected.len()
        )));
    }
    let mut order_idx = Vec::with_capacity(order.len());
    for label in order {
        if !expected.remove(label) {
            return Err(Error::InvalidArgument(format!(
                "insertion order repeats or invents point {label}"
            )));
        }
        order_idx.push(index[label]);
    }

    let standard: Vec<usize> = (0..dim).collect();
    let mut cells = vec![standard.clone()];
    let mut boundary: HashMap<Vec<usize>, BoundaryFacet> = HashMap::new();
    for pos in 0..dim {
        let facet = without(&standard, pos);
        let normal = outward_normal(&points, &facet, standard[pos])?;
        boundary.insert(facet, BoundaryFacet { normal });
    }

    for &p in &order_idx {
        let pc = coords_i128(&points[p]);
        let mut visible: Vec<Vec<usize>> = boundary
            .iter()
            .filter(|(_, bf)| dot(&bf.normal, &pc) > 0)
            .map(|(f, _)| f.clone())
            .collect();
        if visible.is_empty() {
            return Err(Error::Internal(format!(
                "point {} lies beyond no boundary facet",
                points[p].label
            )));
        }
        visible.sort();
        let mut fresh: BTreeMap<Vec<usize>, Option<usize>> = BTreeMap::new();
        for facet in visible {
            boundary.remove(&facet);
            let cell = insert_sorted(&facet, p);
            for (k, &apex) in facet.iter().enumerate() {
                let ridge = insert_sorted(&without(&facet, k), p);
                // a ridge seen twice is shared by two new cells and is interior
                match fresh.get(&ridge) {
                    Some(_) => {
                        fresh.insert(ridge, None);
                    }
                    None => {
                        fresh.insert(ridge, Some(apex));
                    }
                }
            }
            cells.push(cell);
        }
        for (facet, apex) in fresh {
            if let Some(apex) = apex {
                let normal = outward_normal(&points, &facet, apex)?;
                boundary.insert(facet, BoundaryFacet { normal });
            }
        }
    }

    let dual_edges = dual_graph(&cells)?;
    Ok(Triangulation {
        graph: g.clone(),
        points,
        index,
        cells,
        dual_edges,
    })
}

/// Placing triangulation with the default insertion order.
pub fn placing_triangulation_default(g: &Multigraph) -> Result<Triangulation> {
    placing_triangulation(g, &default_insertion_order(g))
}

/// A uniformly shuffled insertion order.
pub fn random_insertion_order<R: Rng + ?Sized>(g: &Multigraph, rng: &mut R) -> Vec<PointLabel> {
    let mut order = default_insertion_order(g);
    order.shuffle(rng);
    order
}

/// Pairs of cells sharing a facet. Fails if some facet lies in three or more cells.
fn dual_graph(cells: &[Vec<usize>]) -> Result<Vec<(usize, usize)>> {
    let mut owners: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    for (ci, cell) in cells.iter().enumerate() {
        for pos in 0..cell.len() {
            owners.entry(without(cell, pos)).or_default().push(ci);
        }
    }
    let mut edges = Vec::new();
    for (facet, cs) in owners {
        match cs.as_slice() {
            [_] => {}
            [a, b] => edges.push(((*a).min(*b), (*a).max(*b))),
            _ => {
                return Err(Error::Internal(format!(
                    "facet {facet:?} lies in {} cells",
                    cs.len()
                )))
            }
        }
    }
    edges.sort_unstable();
    Ok(edges)
}

impl Triangulation {
    pub fn graph(&self) -> &Multigraph {
        &self.graph
    }

    pub fn points(&self) -> &[LatticePoint] {
        &self.points
    }

    pub fn point_index(&self, label: PointLabel) -> Option<usize> {
        self.index.get(&label).copied()
    }

    /// Maximal cells as sorted point-index lists.
    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }

    pub fn cell_labels(&self, cell: usize) -> Vec<PointLabel> {
        self.cells[cell]
            .iter()
            .map(|&i| self.points[i].label)
            .collect()
    }

    pub fn dual_edges(&self) -> &[(usize, usize)] {
        &self.dual_edges
    }

    /// Dimension `n + m - 1` of the polytope.
    pub fn dimension(&self) -> usize {
        self.graph.node_count() + self.graph.edge_count() - 1
    }

    pub fn cell_coords(&self, cell: usize) -> Vec<Vec<i128>> {
        self.cells[cell]
            .iter()
            .map(|&i| coords_i128(&self.points[i]))
            .collect()
    }

    /// Determinant of the cell's vertex matrix; its absolute value is the
    /// normalized volume of the cell.
    pub fn cell_determinant(&self, cell: usize) -> i128 {
        Matrix::from_rows(&self.cell_coords(cell))
            .and_then(|m| m.determinant())
            .expect("cells are square")
    }

    pub fn is_unimodular(&self) -> bool {
        (0..self.cell_count()).all(|c| self.cell_determinant(c).abs() == 1)
    }

    pub fn contains_standard_simplex(&self) -> bool {
        let dim = self.graph.node_count() + self.graph.edge_count();
        let standard: Vec<usize> = (0..dim).collect();
        self.cells.contains(&standard)
    }

    /// No cell holds `~e_f` together with `e_f` or an arrow of `f`.
    pub fn respects_squiggle_exclusions(&self) -> bool {
        (0..self.cell_count()).all(|c| {
            let labels = self.cell_labels(c);
            labels.iter().all(|l| match l {
                PointLabel::Squiggle(f) => !labels.iter().any(|o| {
                    matches!(o, PointLabel::Edge(g) | PointLabel::LeftArrow(g) | PointLabel::RightArrow(g) if g == f)
                }),
                _ => true,
            })
        })
    }
}
