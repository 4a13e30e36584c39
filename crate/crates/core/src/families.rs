//! Closed-form h*-polynomials for multitrees, multicycles, theta graphs and
//! `K_{2,n}`, together with constructors for the matching graphs.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::hstar::{one_plus_3z, one_plus_z, two_z};
use crate::multigraph::Multigraph;
use crate::IntPolynomial;

fn require_positive(values: &[usize], what: &str) -> Result<()> {
    if values.is_empty() {
        return Err(Error::InvalidArgument(format!(
            "{what}: need at least one parameter"
        )));
    }
    if values.contains(&0) {
        return Err(Error::InvalidArgument(format!(
            "{what}: parameters must be >= 1"
        )));
    }
    Ok(())
}

/// Contribution `2 a z (1+z)^(a-1)` of a parallel class of size `a` whose
/// double edge is chosen.
fn doubled_class(a: usize) -> IntPolynomial {
    (&two_z() * &one_plus_z().pow(a as u32 - 1)).scale(&BigInt::from(a))
}

/// `2 a z (1+z)^(a-1) + (1+z)^a`
fn class_factor(a: usize) -> IntPolynomial {
    &doubled_class(a) + &one_plus_z().pow(a as u32)
}

/// Multitree whose `i`-th tree edge has multiplicity `a_i`:
/// `prod_i (2 a_i z (1+z)^(a_i-1) + (1+z)^(a_i))`.
pub fn closed_form_multitree(multiplicities: &[usize]) -> Result<IntPolynomial> {
    require_positive(multiplicities, "multitree")?;
    Ok(multiplicities
        .iter()
        .fold(IntPolynomial::one(), |acc, &a| &acc * &class_factor(a)))
}

/// Multicycle with parallel classes `a_1..a_n` around a cycle of length `n`.
/// For `n = 1` the single class is a bundle of `a_1` loops.
pub fn closed_form_multicycle(multiplicities: &[usize]) -> Result<IntPolynomial> {
    require_positive(multiplicities, "multicycle")?;
    let all = closed_form_multitree(multiplicities)?;
    let cyclic = multiplicities
        .iter()
        .fold(IntPolynomial::one(), |acc, &a| &acc * &doubled_class(a));
    Ok(&all - &cyclic)
}

/// Theta graph with internally disjoint paths of lengths `a`, `b`, `c`.
pub fn closed_form_theta(a: usize, b: usize, c: usize) -> Result<IntPolynomial> {
    require_positive(&[a, b, c], "theta")?;
    let s = one_plus_3z();
    let t = two_z();
    let pw = |p: &IntPolynomial, k: usize| p.pow(k as u32);
    let mut out = pw(&s, a + b + c);
    out = &out - &(&pw(&t, a + b) * &pw(&s, c));
    out = &out - &(&pw(&t, a + c) * &pw(&s, b));
    out = &out - &(&pw(&t, b + c) * &pw(&s, a));
    out = &out + &pw(&t, a + b + c).scale(&BigInt::from(2));
    Ok(out)
}

/// `K_{2,n}`: `(1+6z+5z^2)^n + 4 n z^2 (1+6z+5z^2)^(n-1)`.
pub fn closed_form_k2n(n: usize) -> Result<IntPolynomial> {
    require_positive(&[n], "k2n")?;
    let base = IntPolynomial::from_i64s(&[1, 6, 5]);
    let tail = &IntPolynomial::monomial(BigInt::from(4 * n), 2) * &base.pow(n as u32 - 1);
    Ok(&base.pow(n as u32) + &tail)
}

/// Path `0 - 1 - ... - k` where the `i`-th step carries `a_i` parallel edges.
pub fn multitree_graph(multiplicities: &[usize]) -> Result<Multigraph> {
    require_positive(multiplicities, "multitree")?;
    let mut edges = Vec::new();
    for (i, &a) in multiplicities.iter().enumerate() {
        edges.extend(std::iter::repeat_n((i, i + 1), a));
    }
    Multigraph::new(multiplicities.len() + 1, edges)
}

/// Cycle `0 - 1 - ... - (n-1) - 0` with `a_i` parallel edges on step `i`;
/// `n = 1` yields `a_1` loops on a single node.
pub fn multicycle_graph(multiplicities: &[usize]) -> Result<Multigraph> {
    require_positive(multiplicities, "multicycle")?;
    let n = multiplicities.len();
    let mut edges = Vec::new();
    for (i, &a) in multiplicities.iter().enumerate() {
        edges.extend(std::iter::repeat_n((i, (i + 1) % n), a));
    }
    Multigraph::new(n, edges)
}

/// Nodes `0` and `1` joined by three paths of lengths `a`, `b`, `c`.
pub fn theta_graph(a: usize, b: usize, c: usize) -> Result<Multigraph> {
    require_positive(&[a, b, c], "theta")?;
    let mut edges = Vec::new();
    let mut next = 2;
    for len in [a, b, c] {
        let mut prev = 0;
        for _ in 1..len {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
        edges.push((prev, 1));
    }
    Multigraph::new(next, edges)
}

/// Complete bipartite `K_{2,n}` with sides `{0, 1}` and `{2, .., n+1}`.
pub fn k2n_graph(n: usize) -> Result<Multigraph> {
    require_positive(&[n], "k2n")?;
    let edges = (2..n + 2).flat_map(|k| [(0, k), (1, k)]).collect();
    Multigraph::new(n + 2, edges)
}
