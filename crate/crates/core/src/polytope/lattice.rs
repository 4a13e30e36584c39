use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::multigraph::Multigraph;

/// Identity of a lattice point of the cosmological polytope. The derived
/// order (nodes, edges, squiggles, left arrows, right arrows) matches the
/// order of [`lattice_points`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PointLabel {
    /// `e_u`
    Node(usize),
    /// `e_f`; for a loop also both arrows.
    Edge(usize),
    /// `e_u + e_v - e_f`
    Squiggle(usize),
    /// `e_u - e_v + e_f` for `f = (u, v)`
    LeftArrow(usize),
    /// `-e_u + e_v + e_f` for `f = (u, v)`
    RightArrow(usize),
}

impl PointLabel {
    /// The edge this point belongs to, if any.
    pub fn edge(self) -> Option<usize> {
        match self {
            PointLabel::Node(_) => None,
            PointLabel::Edge(f)
            | PointLabel::Squiggle(f)
            | PointLabel::LeftArrow(f)
            | PointLabel::RightArrow(f) => Some(f),
        }
    }
}

impl fmt::Display for PointLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointLabel::Node(u) => write!(f, "v:{u}"),
            PointLabel::Edge(e) => write!(f, "e:{e}"),
            PointLabel::Squiggle(e) => write!(f, "sq:{e}"),
            PointLabel::LeftArrow(e) => write!(f, "la:{e}"),
            PointLabel::RightArrow(e) => write!(f, "ra:{e}"),
        }
    }
}

impl FromStr for PointLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("invalid point label `{s}`"));
        let (kind, idx) = s.split_once(':').ok_or_else(bad)?;
        let idx: usize = idx.parse().map_err(|_| bad())?;
        Ok(match kind {
            "v" => PointLabel::Node(idx),
            "e" => PointLabel::Edge(idx),
            "sq" => PointLabel::Squiggle(idx),
            "la" => PointLabel::LeftArrow(idx),
            "ra" => PointLabel::RightArrow(idx),
            _ => return Err(bad()),
        })
    }
}

/// A labeled integer point in `Z^(n+m)`; node coordinates come first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticePoint {
    pub label: PointLabel,
    pub coords: Vec<i64>,
}

impl LatticePoint {
    pub fn new(g: &Multigraph, label: PointLabel) -> Self {
        let n = g.node_count();
        let mut coords = vec![0i64; n + g.edge_count()];
        let mut ends = |f: usize, cu: i64, cv: i64, cf: i64| {
            let (u, v) = g.edge(f);
            coords[u] += cu;
            coords[v] += cv;
            coords[n + f] += cf;
        };
        match label {
            PointLabel::Node(u) => coords[u] = 1,
            PointLabel::Edge(f) => coords[n + f] = 1,
            PointLabel::Squiggle(f) => ends(f, 1, 1, -1),
            PointLabel::LeftArrow(f) => ends(f, 1, -1, 1),
            PointLabel::RightArrow(f) => ends(f, -1, 1, 1),
        }
        LatticePoint { label, coords }
    }
}

/// All lattice points of the cosmological polytope: every `e_u`, then per
/// edge `e_f`, `~e_f` and (for non-loops) both arrows. Total `n + 4m - 2 loops`.
pub fn lattice_points(g: &Multigraph) -> Vec<LatticePoint> {
    let m = g.edge_count();
    let mut labels: Vec<PointLabel> = (0..g.node_count()).map(PointLabel::Node).collect();
    labels.extend((0..m).map(PointLabel::Edge));
    labels.extend((0..m).map(PointLabel::Squiggle));
    labels.extend((0..m).filter(|&f| !g.is_loop(f)).map(PointLabel::LeftArrow));
    labels.extend(
        (0..m)
            .filter(|&f| !g.is_loop(f))
            .map(PointLabel::RightArrow),
    );
    labels
        .into_iter()
        .map(|l| LatticePoint::new(g, l))
        .collect()
}

/// Labels of the standard simplex: all `e_u` and all `e_f`.
pub fn standard_simplex(g: &Multigraph) -> Vec<PointLabel> {
    (0..g.node_count())
        .map(PointLabel::Node)
        .chain((0..g.edge_count()).map(PointLabel::Edge))
        .collect()
}

/// Squiggles by edge index, then left arrows, then right arrows.
pub fn default_insertion_order(g: &Multigraph) -> Vec<PointLabel> {
    lattice_points(g)
        .into_iter()
        .map(|p| p.label)
        .filter(|l| !matches!(l, PointLabel::Node(_) | PointLabel::Edge(_)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(text: &str) -> Multigraph {
        Multigraph::parse(text).unwrap()
    }

    #[test]
    fn point_counts() {
        assert_eq!(lattice_points(&g("nodes 2\n0 1")).len(), 6);
        assert_eq!(lattice_points(&g("nodes 2\n0 1\n0 1")).len(), 10);
        let lp = lattice_points(&g("nodes 1\n0 0"));
        assert_eq!(lp.len(), 3);
        let sq = lp
            .iter()
            .find(|p| p.label == PointLabel::Squiggle(0))
            .unwrap();
        assert_eq!(sq.coords, vec![2, -1]);
    }

    #[test]
    fn coordinates_sum_to_one_and_stay_small() {
        let h = g("nodes 3\n0 1\n1 2\n2 2\n0 1");
        for p in lattice_points(&h) {
            assert_eq!(p.coords.iter().sum::<i64>(), 1, "{}", p.label);
            assert!(p.coords.iter().all(|c| (-1..=2).contains(c)));
            if p.coords.contains(&2) {
                assert_eq!(p.label, PointLabel::Squiggle(2));
            }
        }
    }

    #[test]
    fn arrows_follow_edge_orientation() {
        let h = g("nodes 2\n1 0");
        assert_eq!(
            LatticePoint::new(&h, PointLabel::LeftArrow(0)).coords,
            vec![-1, 1, 1]
        );
        assert_eq!(
            LatticePoint::new(&h, PointLabel::RightArrow(0)).coords,
            vec![1, -1, 1]
        );
    }

    #[test]
    fn labels_round_trip() {
        for l in [
            PointLabel::Node(3),
            PointLabel::Edge(0),
            PointLabel::Squiggle(7),
            PointLabel::LeftArrow(2),
            PointLabel::RightArrow(11),
        ] {
            assert_eq!(l.to_string().parse::<PointLabel>().unwrap(), l);
        }
        assert!("x:1".parse::<PointLabel>().is_err());
        assert!("v:".parse::<PointLabel>().is_err());
    }

    #[test]
    fn default_order() {
        let h = g("nodes 2\n0 1\n1 1");
        assert_eq!(
            default_insertion_order(&h),
            vec![
                PointLabel::Squiggle(0),
                PointLabel::Squiggle(1),
                PointLabel::LeftArrow(0),
                PointLabel::RightArrow(0)
            ]
        );
    }
}
