//! The full invariant suite over one graph, as run by `cosmo verify`.

use std::fmt;

use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::config::Limits;
use crate::error::Result;
use crate::hstar::{hstar, Method};
use crate::multigraph::Multigraph;
use crate::polynomial::{check_coefficient_bound, check_ultra_log_concave};
use crate::polytope::{
    affine_coordinates, ehrhart_brute, ehrhart_from_halfopen, ehrhart_from_hstar,
    h_vector_from_triangulation, half_open_decomposition, placing_triangulation,
    placing_triangulation_default, random_insertion_order, verify_main_bijection, Membership,
    Triangulation,
};
use crate::tutte::{count_acyclic_via_tutte, tutte_delcon_with, tutte_subset_expansion_with};
use crate::IntPolynomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        };
        write!(f, "{tag} {}", self.name)?;
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub seed: u64,
    pub random_orders: usize,
    /// Largest `n + m` for which the triangulation checks run.
    pub max_geometric_dimension: usize,
    pub brute_force: bool,
    pub limits: Limits,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            seed: 0,
            random_orders: 10,
            max_geometric_dimension: 10,
            brute_force: false,
            limits: Limits::default(),
        }
    }
}

struct Suite {
    checks: Vec<Check>,
}

impl Suite {
    fn record(&mut self, name: &'static str, ok: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name,
            status: if ok { Status::Pass } else { Status::Fail },
            detail: detail.into(),
        });
    }

    fn skip(&mut self, name: &'static str, why: impl Into<String>) {
        self.checks.push(Check {
            name,
            status: Status::Skip,
            detail: why.into(),
        });
    }

    fn outcome<T>(
        &mut self,
        name: &'static str,
        r: Result<T>,
        ok: impl FnOnce(&T) -> (bool, String),
    ) -> Option<T> {
        match r {
            Ok(v) => {
                let (pass, detail) = ok(&v);
                self.record(name, pass, detail);
                Some(v)
            }
            Err(e) => {
                self.record(name, false, e.to_string());
                None
            }
        }
    }
}

pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.status != Status::Fail)
}

/// Formula-level checks on an h*-polynomial of `g`.
pub fn hstar_property_checks(g: &Multigraph, h: &IntPolynomial) -> Vec<Check> {
    let mut s = Suite { checks: Vec::new() };
    let m = g.edge_count();
    let lc = check_ultra_log_concave(h, m);
    s.record(
        "ultra log-concavity",
        lc.holds,
        lc.first_violation
            .map(|i| format!("fails at i = {i}"))
            .unwrap_or_default(),
    );
    s.record(
        "coefficient bound 3^i C(m,i)",
        check_coefficient_bound(h, m),
        "",
    );
    let tree_power = IntPolynomial::from_i64s(&[1, 3]).pow(m as u32);
    s.record(
        "bound attained iff forest",
        (h == &tree_power) == g.is_forest(),
        format!("forest: {}", g.is_forest()),
    );
    let h1 = BigInt::from(3 * m - 2 * g.loop_count());
    s.record(
        "h*_1 = 3m - 2 loops",
        h.coeff(1) == h1,
        format!("h*_1 = {}", h.coeff(1)),
    );
    let vol = h.eval_at_one();
    let (lo, hi) = (BigInt::from(1) << m, BigInt::from(1) << (2 * m));
    s.record(
        "2^m <= volume <= 4^m",
        lo <= vol && vol <= hi && ((vol == hi) == g.is_forest()),
        format!("volume {vol}"),
    );
    s.record("nonnegative coefficients", h.has_nonnegative_coeffs(), "");
    s.checks
}

fn geometric_checks(s: &mut Suite, g: &Multigraph, reference: &IntPolynomial, opts: &SuiteOptions) {
    let Some(t) = s.outcome(
        "triangulation builds",
        placing_triangulation_default(g),
        |t| (true, format!("{} cells", t.cell_count())),
    ) else {
        return;
    };
    let volume = reference.eval_at_one();
    s.record(
        "cell count = volume",
        BigInt::from(t.cell_count()) == volume,
        format!("{} cells, volume {volume}", t.cell_count()),
    );
    s.record("unimodular cells", t.is_unimodular(), "");
    s.record(
        "standard simplex is a cell",
        t.contains_standard_simplex(),
        "",
    );
    s.record("squiggle exclusions", t.respects_squiggle_exclusions(), "");
    s.outcome("decoration invariants", t.decorations(), |_| {
        (true, String::new())
    });
    s.outcome(
        "decoration bijection (default order)",
        verify_main_bijection(&t),
        |r| (true, format!("{} cells", r.cells)),
    );

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut failures = Vec::new();
    for i in 0..opts.random_orders {
        let order = random_insertion_order(g, &mut rng);
        let outcome = placing_triangulation(g, &order).and_then(|rt| {
            verify_main_bijection(&rt)?;
            let h = h_vector_from_triangulation(&rt)?;
            Ok(rt.is_unimodular() && rt.contains_standard_simplex() && &h == reference)
        });
        match outcome {
            Ok(true) => {}
            Ok(false) => failures.push(format!("order {i}: invariant mismatch")),
            Err(e) => failures.push(format!("order {i}: {e}")),
        }
    }
    s.record(
        "decoration bijection (random orders)",
        failures.is_empty(),
        if failures.is_empty() {
            format!("{} orders", opts.random_orders)
        } else {
            failures.join("; ")
        },
    );

    s.outcome(
        "triangulation h-vector",
        h_vector_from_triangulation(&t),
        |h| (h == reference, format!("{h}")),
    );
    affine_check(s, &t);
    halfopen_checks(s, &t, reference, opts);
}

fn affine_check(s: &mut Suite, t: &Triangulation) {
    let n = t.graph().node_count();
    for c in 0..t.cell_count() {
        for w in 0..n {
            match affine_coordinates(t, c, w) {
                Ok(a) if a.all_in_unit_range() => {}
                Ok(_) => {
                    s.record(
                        "affine coordinates in {-1,0,1}",
                        false,
                        format!("cell {c}, node {w}"),
                    );
                    return;
                }
                Err(e) => {
                    s.record("affine coordinates in {-1,0,1}", false, e.to_string());
                    return;
                }
            }
        }
    }
    s.record("affine coordinates in {-1,0,1}", true, "");
}

fn halfopen_checks(
    s: &mut Suite,
    t: &Triangulation,
    reference: &IntPolynomial,
    opts: &SuiteOptions,
) {
    let Some(decomp) = s.outcome("half-open decomposition", half_open_decomposition(t), |d| {
        (true, format!("delta {}", d.delta))
    }) else {
        return;
    };
    s.outcome("removed facets = k(S)", decomp.count_mismatches(t), |bad| {
        (
            bad.is_empty(),
            if bad.is_empty() {
                String::new()
            } else {
                format!("cells {bad:?}")
            },
        )
    });
    let d = t.dimension();
    let mismatch = (0..=d + 1)
        .find(|&j| ehrhart_from_halfopen(&decomp, j, d) != ehrhart_from_hstar(reference, d, j));
    s.record(
        "half-open Ehrhart = h* Ehrhart",
        mismatch.is_none(),
        mismatch
            .map(|j| format!("differs at j = {j}"))
            .unwrap_or_else(|| format!("j = 0..{}", d + 1)),
    );
    if opts.brute_force {
        let g = t.graph();
        let dim = g.node_count() + g.edge_count();
        if dim > opts.limits.brute_dimension {
            s.skip(
                "brute-force Ehrhart",
                format!("n + m = {dim} exceeds {}", opts.limits.brute_dimension),
            );
            return;
        }
        let mut detail = Vec::new();
        let mut ok = true;
        for j in 1..=opts.limits.brute_dilation.min(3) {
            let expected = ehrhart_from_hstar(reference, d, j);
            let lp = ehrhart_brute(g, j, Membership::Lp, None, &opts.limits);
            let cells = ehrhart_brute(g, j, Membership::Cells, Some(t), &opts.limits);
            match (lp, cells) {
                (Ok(a), Ok(b)) => {
                    ok &= a == expected && b == expected;
                    detail.push(format!("L({j}) = {a}"));
                }
                (Err(e), _) | (_, Err(e)) => {
                    ok = false;
                    detail.push(e.to_string());
                }
            }
        }
        s.record("brute-force Ehrhart", ok, detail.join(", "));
    }
}

/// Runs every invariant that applies to `g`. Formula checks always run;
/// triangulation checks run when `n + m` is within the configured size.
pub fn run_invariant_suite(g: &Multigraph, opts: &SuiteOptions) -> Vec<Check> {
    let mut s = Suite { checks: Vec::new() };
    let mut polys: Vec<(Method, IntPolynomial)> = Vec::new();
    for method in Method::FORMULAS {
        match hstar(g, method, &opts.limits) {
            Ok(r) => polys.push((method, r.polynomial)),
            Err(e) => s.skip("formula pipeline", format!("{method}: {e}")),
        }
    }
    let Some((_, reference)) = polys.first().cloned() else {
        s.record("formula pipelines agree", false, "no pipeline succeeded");
        return s.checks;
    };
    let disagree: Vec<String> = polys
        .iter()
        .filter(|(_, p)| p != &reference)
        .map(|(m, p)| format!("{m}: {p}"))
        .collect();
    s.record(
        "formula pipelines agree",
        disagree.is_empty(),
        if disagree.is_empty() {
            format!("{reference}")
        } else {
            format!("reference {reference}; {}", disagree.join("; "))
        },
    );
    s.checks.extend(hstar_property_checks(g, &reference));

    let acyclic = count_acyclic_via_tutte(g);
    let volume = reference.eval_at_one();
    s.record(
        "volume = 2^m T(2,1)",
        volume == (BigInt::from(1) << g.edge_count()) * &acyclic,
        format!("T(2,1) = {acyclic}"),
    );
    if g.edge_count() <= opts.limits.subset_edges {
        match tutte_subset_expansion_with(g, &opts.limits) {
            Ok(t) => s.record(
                "Tutte: subset expansion = deletion-contraction",
                t == tutte_delcon_with(g, &opts.limits),
                "",
            ),
            Err(e) => s.skip(
                "Tutte: subset expansion = deletion-contraction",
                e.to_string(),
            ),
        }
    } else {
        s.skip(
            "Tutte: subset expansion = deletion-contraction",
            "too many edges",
        );
    }

    let padded = g.with_isolated_nodes(1);
    match hstar(&padded, Method::Delcon, &opts.limits) {
        Ok(r) => s.record(
            "isolated node leaves h* unchanged",
            r.polynomial == reference,
            "",
        ),
        Err(e) => s.record("isolated node leaves h* unchanged", false, e.to_string()),
    }

    let dim = g.node_count() + g.edge_count();
    if g.node_count() == 0 {
        s.skip("geometric checks", "graph has no nodes");
    } else if dim > opts.max_geometric_dimension {
        s.skip(
            "geometric checks",
            format!("n + m = {dim} exceeds {}", opts.max_geometric_dimension),
        );
    } else {
        geometric_checks(&mut s, g, &reference, opts);
    }
    s.checks
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_passes_on_small_graphs() {
        for text in [
            "nodes 2\n0 1\n0 1",
            "nodes 1\n0 0",
            "nodes 3\n0 1\n1 2\n2 0",
            "nodes 2",
        ] {
            let g = Multigraph::parse(text).unwrap();
            let opts = SuiteOptions {
                random_orders: 2,
                brute_force: true,
                ..SuiteOptions::default()
            };
            let checks = run_invariant_suite(&g, &opts);
            assert!(all_passed(&checks), "{text}: {checks:#?}");
            assert!(checks
                .iter()
                .any(|c| c.name == "half-open Ehrhart = h* Ehrhart"));
        }
    }

    #[test]
    fn property_checks_flag_a_bad_polynomial() {
        let g = Multigraph::parse("nodes 2\n0 1").unwrap();
        let bad = IntPolynomial::from_i64s(&[1, 4]);
        let checks = hstar_property_checks(&g, &bad);
        assert!(!all_passed(&checks));
    }

    #[test]
    fn large_graphs_skip_geometry() {
        let g = crate::families::k2n_graph(4).unwrap();
        let checks = run_invariant_suite(&g, &SuiteOptions::default());
        assert!(all_passed(&checks));
        assert!(checks.iter().any(|c| c.status == Status::Skip));
    }
}
