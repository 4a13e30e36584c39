//! Tutte polynomial by subset expansion and by memoized deletion-contraction.
//!
//! The deletion-contraction driver is generic: any Tutte-Grothendieck
//! invariant is described by a [`GrothendieckRule`], and both the Tutte
//! polynomial and the h*-polynomial run through the same recursion.

use std::collections::HashMap;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_traits::One;

use crate::config::Limits;
use crate::error::{Error, Result};
use crate::multigraph::{EdgeSubset, Multigraph};
use crate::polynomial::BivarPolynomial;
use crate::IntBivarPolynomial;

/// Recurrence data for an invariant `F` with
/// `F(G) = loop_factor * F(G \ e)` for a loop,
/// `F(G) = bridge_factor * F(G / e)` for a bridge,
/// `F(G) = delete_weight * F(G \ e) + contract_weight * F(G / e)` otherwise,
/// and `F(edgeless) = empty`.
#[derive(Clone, Debug)]
pub struct GrothendieckRule<P> {
    pub loop_factor: P,
    pub bridge_factor: P,
    pub delete_weight: P,
    pub contract_weight: P,
    pub empty: P,
}

/// Memoized deletion-contraction evaluator for one rule.
pub struct DeletionContraction<'r, P> {
    rule: &'r GrothendieckRule<P>,
    memo: HashMap<Vec<u8>, P>,
    capacity: usize,
    hits: usize,
}

impl<'r, P> DeletionContraction<'r, P>
where
    P: Clone,
    for<'a> &'a P: Add<&'a P, Output = P> + Mul<&'a P, Output = P>,
{
    pub fn new(rule: &'r GrothendieckRule<P>, capacity: usize) -> Self {
        DeletionContraction {
            rule,
            memo: HashMap::new(),
            capacity,
            hits: 0,
        }
    }

    pub fn cache_hits(&self) -> usize {
        self.hits
    }

    pub fn cache_len(&self) -> usize {
        self.memo.len()
    }

    pub fn eval(&mut self, g: &Multigraph) -> P {
        let (loops, bridges, core) = strip_loops_and_bridges(g);
        let mut factor: Option<P> = None;
        let factors = std::iter::repeat_n(&self.rule.loop_factor, loops)
            .chain(std::iter::repeat_n(&self.rule.bridge_factor, bridges));
        for f in factors {
            factor = Some(match factor {
                None => f.clone(),
                Some(acc) => &acc * f,
            });
        }
        let apply = |value: P| match &factor {
            None => value,
            Some(f) => f * &value,
        };
        if core.edge_count() == 0 {
            return apply(self.rule.empty.clone());
        }
        let key = core.canonical_key();
        if let Some(v) = self.memo.get(&key) {
            self.hits += 1;
            return apply(v.clone());
        }
        // Every remaining edge is neither a loop nor a bridge; pivot on the first.
        let deleted = self.eval(&core.delete_edge(0));
        let contracted = self.eval(
            &core
                .contract_edge(0)
                .expect("pivot edge of the reduced graph is never a loop"),
        );
        let value =
            &(&self.rule.delete_weight * &deleted) + &(&self.rule.contract_weight * &contracted);
        if self.memo.len() < self.capacity {
            self.memo.insert(key, value.clone());
        }
        apply(value)
    }
}

/// Deletes all loops and contracts all bridges. Returns the loop count, the
/// bridge count and the reduced graph with isolated nodes dropped.
pub(crate) fn strip_loops_and_bridges(g: &Multigraph) -> (usize, usize, Multigraph) {
    let mut loops: Vec<usize> = (0..g.edge_count()).filter(|&e| g.is_loop(e)).collect();
    let mut h = g.clone();
    loops.reverse();
    for &e in &loops {
        h = h.delete_edge(e);
    }
    let mut bridges = h.bridges_within(0..h.edge_count());
    bridges.reverse();
    for &e in &bridges {
        h = h.contract_edge(e).expect("a bridge is never a loop");
    }
    (loops.len(), bridges.len(), h.without_isolated_nodes())
}

fn tutte_rule() -> GrothendieckRule<IntBivarPolynomial> {
    GrothendieckRule {
        loop_factor: BivarPolynomial::y(),
        bridge_factor: BivarPolynomial::x(),
        delete_weight: BivarPolynomial::one(),
        contract_weight: BivarPolynomial::one(),
        empty: BivarPolynomial::one(),
    }
}

/// `T_G(x, y)` by memoized deletion-contraction.
pub fn tutte_delcon(g: &Multigraph) -> IntBivarPolynomial {
    tutte_delcon_with(g, &Limits::default())
}

pub fn tutte_delcon_with(g: &Multigraph, limits: &Limits) -> IntBivarPolynomial {
    let rule = tutte_rule();
    DeletionContraction::new(&rule, limits.memo_entries).eval(g)
}

/// `T_G(x, y) = sum_H (x-1)^{c(H)-c(E)} (y-1)^{c(H)+|H|-|V|}` over all `2^m`
/// subsets. Exponent pairs are tallied first and expanded once at the end.
pub fn tutte_subset_expansion(g: &Multigraph) -> Result<IntBivarPolynomial> {
    tutte_subset_expansion_with(g, &Limits::default())
}

pub fn tutte_subset_expansion_with(g: &Multigraph, limits: &Limits) -> Result<IntBivarPolynomial> {
    let m = g.edge_count();
    if m > limits.subset_edges {
        return Err(Error::SizeLimit {
            what: "Tutte subset expansion edges",
            limit: limits.subset_edges,
            actual: m,
        });
    }
    let n = g.node_count();
    let c_all = g.component_count(g.all_edges());
    let mut tally: HashMap<(usize, usize), u64> = HashMap::new();
    for mask in 0..(1u64 << m) {
        let h = EdgeSubset(mask);
        let c = g.component_count(h);
        *tally.entry((c - c_all, c + h.len() - n)).or_default() += 1;
    }
    let minus_one = -BigInt::one();
    let mut out = BivarPolynomial::zero();
    let mut keys: Vec<_> = tally.into_iter().collect();
    keys.sort_unstable();
    for ((a, b), count) in keys {
        out = &out
            + &BivarPolynomial::shifted_power(&BigInt::from(count), &minus_one, a, &minus_one, b);
    }
    Ok(out)
}

/// `T_G(2, 1)`, the number of acyclic edge subsets.
pub fn count_acyclic_via_tutte(g: &Multigraph) -> BigInt {
    tutte_delcon(g).eval(&BigInt::from(2), &BigInt::one())
}
