use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::lattice::lattice_points;
use super::triangulation::Triangulation;
use crate::config::Limits;
use crate::error::{Error, Result};
use crate::geometry::{barycentric_coordinates, lp_membership};
use crate::multigraph::Multigraph;
use crate::polynomial::binomial;
use crate::{IntPolynomial, Rational};

/// How the brute-force counter decides membership in the polytope.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Membership {
    /// Exact phase-1 simplex over the lattice points.
    Lp,
    /// Nonnegative barycentric coordinates in some cell of a triangulation.
    Cells,
}

/// `L(j) = sum_i h*_i C(j + d - i, d)`.
pub fn ehrhart_from_hstar(hstar: &IntPolynomial, d: usize, j: usize) -> BigInt {
    hstar
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(i, _)| *i <= j + d)
        .map(|(i, c)| c * binomial(j + d - i, d))
        .sum()
}

fn to_rational(v: &[i64], j: usize) -> Vec<Rational> {
    v.iter()
        .map(|&x| Rational::new(BigInt::from(x), BigInt::from(j)))
        .collect()
}

/// Integer vectors with coordinate sum `j`, node coordinates in `[-j, 2j]`
/// and edge coordinates in `[-j, j]`; these cover every point of `j C_G`.
fn box_candidates(n: usize, m: usize, j: usize) -> Vec<Vec<i64>> {
    let j = j as i64;
    let dim = n + m;
    let bounds: Vec<(i64, i64)> = (0..dim)
        .map(|i| if i < n { (-j, 2 * j) } else { (-j, j) })
        .collect();
    let mut out = Vec::new();
    let mut cur = vec![0i64; dim];
    fn rec(
        i: usize,
        sum: i64,
        j: i64,
        bounds: &[(i64, i64)],
        cur: &mut Vec<i64>,
        out: &mut Vec<Vec<i64>>,
    ) {
        let last = bounds.len() - 1;
        if i == last {
            let x = j - sum;
            if (bounds[i].0..=bounds[i].1).contains(&x) {
                cur[i] = x;
                out.push(cur.clone());
            }
            return;
        }
        for x in bounds[i].0..=bounds[i].1 {
            cur[i] = x;
            rec(i + 1, sum + x, j, bounds, cur, out);
        }
    }
    rec(0, 0, j, &bounds, &mut cur, &mut out);
    out
}

fn in_some_cell(t: &Triangulation, x: &[Rational]) -> Result<bool> {
    for c in 0..t.cell_count() {
        let verts: Vec<Vec<Rational>> = t
            .cell_coords(c)
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|v| Rational::from_integer(BigInt::from(v)))
                    .collect()
            })
            .collect();
        let lambda = barycentric_coordinates(&verts, x)?;
        if !lambda.iter().any(Signed::is_negative) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Counts `|j C_G ∩ Z^(n+m)|` by testing every candidate in a bounding box.
/// The `Cells` backend needs a triangulation of `g`.
pub fn ehrhart_brute(
    g: &Multigraph,
    j: usize,
    membership: Membership,
    triangulation: Option<&Triangulation>,
    limits: &Limits,
) -> Result<BigInt> {
    let dim = g.node_count() + g.edge_count();
    if dim > limits.brute_dimension {
        return Err(Error::SizeLimit {
            what: "ambient dimension for brute-force counting",
            limit: limits.brute_dimension,
            actual: dim,
        });
    }
    if j > limits.brute_dilation {
        return Err(Error::SizeLimit {
            what: "dilation for brute-force counting",
            limit: limits.brute_dilation,
            actual: j,
        });
    }
    if g.node_count() == 0 {
        return Err(Error::InvalidArgument("graph has no nodes".into()));
    }
    if j == 0 {
        return Ok(BigInt::from(1));
    }
    let generators: Vec<Vec<Rational>> = lattice_points(g)
        .iter()
        .map(|p| to_rational(&p.coords, 1))
        .collect();
    let t = match (membership, triangulation) {
        (Membership::Cells, None) => {
            return Err(Error::InvalidArgument(
                "cell membership needs a triangulation".into(),
            ))
        }
        (_, t) => t,
    };
    let mut count = BigInt::zero();
    for cand in box_candidates(g.node_count(), g.edge_count(), j) {
        let x = to_rational(&cand, j);
        let inside = match membership {
            Membership::Lp => lp_membership(&x, &generators)?,
            Membership::Cells => in_some_cell(t.expect("checked above"), &x)?,
        };
        if inside {
            count += 1;
        }
    }
    Ok(count)
}
