use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::lattice::PointLabel;
use super::triangulation::Triangulation;
use crate::error::{Error, Result};
use crate::geometry::barycentric_coordinates;
use crate::polynomial::binomial;
use crate::{IntPolynomial, QVector, Rational};

const MAX_RETRIES: usize = 64;

/// A maximal cell with the facets opposite `removed` taken away.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfOpenCell {
    pub cell: usize,
    /// Point indices whose opposite facet is removed, ascending.
    pub removed: Vec<usize>,
}

impl HalfOpenCell {
    pub fn removed_count(&self) -> usize {
        self.removed.len()
    }
}

#[derive(Clone, Debug)]
pub struct HalfOpenDecomposition {
    pub cells: Vec<HalfOpenCell>,
    pub visibility_point: QVector,
    pub delta: Rational,
}

fn q(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// `(1 - delta) q + delta b` with `q` the node barycenter and `b` the
/// barycenter of the standard simplex.
pub fn visibility_point(n: usize, m: usize, delta: &Rational) -> QVector {
    let keep = q(1) - delta.clone();
    let b = delta.clone() / q((n + m) as i64);
    (0..n + m)
        .map(|i| {
            if i < n {
                keep.clone() / q(n as i64) + b.clone()
            } else {
                b.clone()
            }
        })
        .collect()
}

/// Facets of each cell that separate it from the visibility point, or `None`
/// if the point lies on some facet hyperplane.
fn separated_facets(t: &Triangulation, point: &[Rational]) -> Result<Option<Vec<HalfOpenCell>>> {
    let mut out = Vec::with_capacity(t.cell_count());
    for c in 0..t.cell_count() {
        let verts: Vec<Vec<Rational>> = t
            .cell_coords(c)
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|x| Rational::from_integer(BigInt::from(x)))
                    .collect()
            })
            .collect();
        let lambda = barycentric_coordinates(&verts, point)
            .map_err(|_| Error::Internal(format!("cell {c} is singular")))?;
        if lambda.iter().any(Zero::is_zero) {
            return Ok(None);
        }
        let removed = lambda
            .iter()
            .zip(&t.cells()[c])
            .filter(|(l, _)| l.is_negative())
            .map(|(_, &p)| p)
            .collect();
        out.push(HalfOpenCell { cell: c, removed });
    }
    Ok(Some(out))
}

/// Removes from every cell the facets through which it is seen from a
/// generic point near the node barycenter, shrinking the perturbation until
/// that point avoids every facet hyperplane.
pub fn half_open_decomposition(t: &Triangulation) -> Result<HalfOpenDecomposition> {
    let n = t.graph().node_count();
    let m = t.graph().edge_count();
    if n == 0 {
        return Err(Error::InvalidArgument("graph has no nodes".into()));
    }
    let mut delta = Rational::new(BigInt::from(1), BigInt::from(8 * (n + m)));
    for _ in 0..MAX_RETRIES {
        let point = visibility_point(n, m, &delta);
        if let Some(cells) = separated_facets(t, &point)? {
            return Ok(HalfOpenDecomposition {
                cells,
                visibility_point: point,
                delta,
            });
        }
        delta /= q(2);
    }
    Err(Error::Internal("no generic visibility point found".into()))
}

impl HalfOpenDecomposition {
    pub fn removed_facets(&self, t: &Triangulation, cell: usize) -> Vec<Vec<PointLabel>> {
        let h = &self.cells[cell];
        h.removed
            .iter()
            .map(|&p| {
                t.cells()[h.cell]
                    .iter()
                    .filter(|&&i| i != p)
                    .map(|&i| t.points()[i].label)
                    .collect()
            })
            .collect()
    }

    /// Histogram of removed-facet counts.
    pub fn h_vector(&self) -> IntPolynomial {
        histogram(self.cells.iter().map(HalfOpenCell::removed_count))
    }

    /// Cells whose removed-facet count differs from their decoration's `k`.
    pub fn count_mismatches(&self, t: &Triangulation) -> Result<Vec<usize>> {
        let mut bad = Vec::new();
        for h in &self.cells {
            if t.decoration(h.cell)?.k() != h.removed_count() {
                bad.push(h.cell);
            }
        }
        Ok(bad)
    }
}

fn histogram(values: impl Iterator<Item = usize>) -> IntPolynomial {
    let mut counts: Vec<BigInt> = Vec::new();
    for k in values {
        if counts.len() <= k {
            counts.resize(k + 1, BigInt::zero());
        }
        counts[k] += 1;
    }
    IntPolynomial::new(counts)
}

/// `sum_S z^k(S)` over the maximal cells.
pub fn h_vector_from_triangulation(t: &Triangulation) -> Result<IntPolynomial> {
    let ks = t
        .decorations()?
        .into_iter()
        .map(|d| d.k())
        .collect::<Vec<_>>();
    Ok(histogram(ks.into_iter()))
}

/// Lattice points of the `j`-th dilate, counted cell by cell: a half-open
/// unimodular `d`-simplex missing `k` facets holds `C(j + d - k, d)` of them.
pub fn ehrhart_from_halfopen(decomp: &HalfOpenDecomposition, j: usize, d: usize) -> BigInt {
    decomp
        .cells
        .iter()
        .map(|h| {
            let k = h.removed_count();
            if j + d < k {
                BigInt::zero()
            } else {
                binomial(j + d - k, d)
            }
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multigraph::Multigraph;
    use crate::polytope::triangulation::placing_triangulation_default;

    fn g(text: &str) -> Multigraph {
        Multigraph::parse(text).unwrap()
    }

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn visibility_point_sums_to_one() {
        let d = Rational::new(1.into(), 24.into());
        let x = visibility_point(2, 1, &d);
        assert_eq!(x.iter().cloned().sum::<Rational>(), q(1));
        assert!(x.iter().all(|v| v.is_positive()));
    }

    #[test]
    fn single_edge() {
        let t = placing_triangulation_default(&g("nodes 2\n0 1")).unwrap();
        let h = half_open_decomposition(&t).unwrap();
        assert_eq!(h.h_vector(), p(&[1, 3]));
        assert!(h.cells[0].removed.is_empty());
        assert!(h.count_mismatches(&t).unwrap().is_empty());
        let counts: Vec<_> = (0..4).map(|j| ehrhart_from_halfopen(&h, j, 2)).collect();
        assert_eq!(counts, [1, 6, 15, 28].map(BigInt::from));
    }

    #[test]
    fn examples() {
        for (text, expected) in [
            ("nodes 2\n0 1\n0 1", p(&[1, 6, 5])),
            ("nodes 3\n0 1\n1 2", p(&[1, 6, 9])),
            ("nodes 1\n0 0", p(&[1, 1])),
            ("nodes 3\n0 1\n1 2\n2 0", p(&[1, 9, 27, 19])),
        ] {
            let t = placing_triangulation_default(&g(text)).unwrap();
            assert_eq!(h_vector_from_triangulation(&t).unwrap(), expected);
            let h = half_open_decomposition(&t).unwrap();
            assert_eq!(h.h_vector(), expected);
            assert!(h.count_mismatches(&t).unwrap().is_empty());
        }
    }

    #[test]
    fn two_parallel_first_dilate() {
        let t = placing_triangulation_default(&g("nodes 2\n0 1\n0 1")).unwrap();
        let h = half_open_decomposition(&t).unwrap();
        assert_eq!(ehrhart_from_halfopen(&h, 1, 3), BigInt::from(10));
        let facets = h.removed_facets(&t, 1);
        assert!(facets.iter().all(|f| f.len() == 3));
    }
}
