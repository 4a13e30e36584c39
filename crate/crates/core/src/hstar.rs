//! The independent h*-polynomial computations and the normalized volume.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::config::Limits;
use crate::error::{Error, Result};
use crate::multigraph::{EdgeSubset, Multigraph};
use crate::polytope::{h_vector_from_triangulation, placing_triangulation_default};
use crate::tutte::{
    count_acyclic_via_tutte, tutte_delcon_with, DeletionContraction, GrothendieckRule,
};
use crate::IntPolynomial;

/// Which route computed an h*-polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    /// Sum over acyclic edge subsets.
    Acyclic,
    /// Deletion-contraction recurrence.
    Delcon,
    /// Specialization of the Tutte polynomial.
    Tutte,
    /// Möbius inversion over bridge-free subsets.
    Moebius,
    /// `k`-statistics of a placing triangulation.
    Triangulation,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::Acyclic,
        Method::Delcon,
        Method::Tutte,
        Method::Moebius,
        Method::Triangulation,
    ];

    /// The four triangulation-free formulas.
    pub const FORMULAS: [Method; 4] = [
        Method::Acyclic,
        Method::Delcon,
        Method::Tutte,
        Method::Moebius,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Acyclic => "acyclic",
            Method::Delcon => "delcon",
            Method::Tutte => "tutte",
            Method::Moebius => "moebius",
            Method::Triangulation => "triangulation",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown method `{s}`")))
    }
}

/// An h*-polynomial together with its provenance and volume.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HstarReport {
    pub polynomial: IntPolynomial,
    pub method: Method,
    /// `h*(1)`, the normalized volume.
    pub volume: BigInt,
    /// Number of edges `m`, an upper bound for the degree.
    pub degree_bound: usize,
}

impl HstarReport {
    pub fn new(polynomial: IntPolynomial, method: Method, degree_bound: usize) -> Self {
        let volume = polynomial.eval_at_one();
        HstarReport {
            polynomial,
            method,
            volume,
            degree_bound,
        }
    }
}

pub fn hstar(g: &Multigraph, method: Method, limits: &Limits) -> Result<HstarReport> {
    let poly = match method {
        Method::Acyclic => hstar_acyclic_with(g, limits)?,
        Method::Delcon => hstar_delcon_with(g, limits),
        Method::Tutte => hstar_tutte_with(g, limits),
        Method::Moebius => hstar_moebius_with(g, limits)?,
        Method::Triangulation => hstar_triangulation(g)?,
    };
    Ok(HstarReport::new(poly, method, g.edge_count()))
}

fn int(c: i64) -> BigInt {
    BigInt::from(c)
}

/// `1 + z`
pub(crate) fn one_plus_z() -> IntPolynomial {
    IntPolynomial::linear(int(1), int(1))
}

/// `1 + 3z`
pub(crate) fn one_plus_3z() -> IntPolynomial {
    IntPolynomial::linear(int(1), int(3))
}

/// `2z`
pub(crate) fn two_z() -> IntPolynomial {
    IntPolynomial::monomial(int(2), 1)
}

/// `sum_k counts[k] * a^k * b^(m-k)`
fn weighted_binomial_sum(
    counts: &[BigInt],
    a: &IntPolynomial,
    b: &IntPolynomial,
    m: usize,
) -> IntPolynomial {
    counts
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .fold(IntPolynomial::zero(), |acc, (k, c)| {
            let term = &a.pow(k as u32) * &b.pow((m - k) as u32);
            &acc + &term.scale(c)
        })
}

/// `sum_H (2z)^|H| (1+z)^(m-|H|)` over acyclic `H`.
pub fn hstar_acyclic(g: &Multigraph) -> Result<IntPolynomial> {
    hstar_acyclic_with(g, &Limits::default())
}

pub fn hstar_acyclic_with(g: &Multigraph, limits: &Limits) -> Result<IntPolynomial> {
    let m = g.edge_count();
    let mut by_size = vec![BigInt::zero(); m + 1];
    let mut seen = 0usize;
    for h in g.acyclic_subsets()? {
        seen += 1;
        if seen > limits.acyclic_subsets {
            return Err(Error::SizeLimit {
                what: "acyclic edge subsets",
                limit: limits.acyclic_subsets,
                actual: seen,
            });
        }
        by_size[h.len()] += 1;
    }
    Ok(weighted_binomial_sum(&by_size, &two_z(), &one_plus_z(), m))
}

fn hstar_rule() -> GrothendieckRule<IntPolynomial> {
    GrothendieckRule {
        loop_factor: one_plus_z(),
        bridge_factor: one_plus_3z(),
        delete_weight: one_plus_z(),
        contract_weight: two_z(),
        empty: IntPolynomial::one(),
    }
}

/// Deletion-contraction: loops give `1+z`, bridges `1+3z`, any other edge
/// `(1+z) h*(G\e) + 2z h*(G/e)`.
pub fn hstar_delcon(g: &Multigraph) -> IntPolynomial {
    hstar_delcon_with(g, &Limits::default())
}

pub fn hstar_delcon_with(g: &Multigraph, limits: &Limits) -> IntPolynomial {
    let rule = hstar_rule();
    DeletionContraction::new(&rule, limits.memo_entries).eval(g)
}

/// `(1+z)^(m-r) (2z)^r T_G((1+3z)/(2z), 1)`, expanded without rational functions.
pub fn hstar_tutte(g: &Multigraph) -> IntPolynomial {
    hstar_tutte_with(g, &Limits::default())
}

pub fn hstar_tutte_with(g: &Multigraph, limits: &Limits) -> IntPolynomial {
    let m = g.edge_count();
    let r = g.rank();
    let t_x1 = tutte_delcon_with(g, limits).at_y_one();
    // deg_x T = r, so every (2z)^(r-k) has a non-negative exponent
    let inner = weighted_binomial_sum(t_x1.coeffs(), &one_plus_3z(), &two_z(), r);
    &one_plus_z().pow((m - r) as u32) * &inner
}

/// Möbius function `mu(empty, H)` on the inclusion poset of the given
/// subsets, which must contain the empty set.
pub fn moebius_values(subsets: &[EdgeSubset]) -> Vec<BigInt> {
    let mut order: Vec<usize> = (0..subsets.len()).collect();
    order.sort_by_key(|&i| (subsets[i].len(), subsets[i]));
    let mut mu = vec![BigInt::zero(); subsets.len()];
    for (pos, &i) in order.iter().enumerate() {
        let h = subsets[i];
        if h.is_empty() {
            mu[i] = BigInt::one();
            continue;
        }
        let below: BigInt = order[..pos]
            .iter()
            .filter(|&&j| subsets[j] != h && subsets[j].is_subset_of(h))
            .map(|&j| mu[j].clone())
            .sum();
        mu[i] = -below;
    }
    mu
}

/// `sum_H mu(H) (2z)^|H| (1+3z)^(m-|H|)` over bridge-free `H`.
pub fn hstar_moebius(g: &Multigraph) -> Result<IntPolynomial> {
    hstar_moebius_with(g, &Limits::default())
}

pub fn hstar_moebius_with(g: &Multigraph, limits: &Limits) -> Result<IntPolynomial> {
    let m = g.edge_count();
    let mut subsets = Vec::new();
    for h in g.bridge_free_subsets()? {
        if subsets.len() == limits.bridge_free_subsets {
            return Err(Error::SizeLimit {
                what: "bridge-free edge subsets",
                limit: limits.bridge_free_subsets,
                actual: subsets.len() + 1,
            });
        }
        subsets.push(h);
    }
    let mu = moebius_values(&subsets);
    let mut by_size = vec![BigInt::zero(); m + 1];
    for (h, mu) in subsets.iter().zip(mu) {
        by_size[h.len()] += mu;
    }
    Ok(weighted_binomial_sum(&by_size, &two_z(), &one_plus_3z(), m))
}

/// h* read off a placing triangulation with the default insertion order.
pub fn hstar_triangulation(g: &Multigraph) -> Result<IntPolynomial> {
    let t = placing_triangulation_default(g)?;
    h_vector_from_triangulation(&t)
}

/// Normalized volume `2^m T_G(2, 1)`.
pub fn volume(g: &Multigraph) -> BigInt {
    (BigInt::one() << g.edge_count()) * count_acyclic_via_tutte(g)
}
