//! Exit gate: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cosmo_core::families::{
    closed_form_k2n, closed_form_multicycle, closed_form_theta, k2n_graph, multicycle_graph,
    theta_graph,
};
use cosmo_core::hstar::{hstar, hstar_acyclic, volume, Method};
use cosmo_core::polynomial::{check_coefficient_bound, check_ultra_log_concave};
use cosmo_core::polytope::{
    ehrhart_brute, ehrhart_from_halfopen, ehrhart_from_hstar, h_vector_from_triangulation,
    half_open_decomposition, placing_triangulation, placing_triangulation_default,
    random_insertion_order, verify_main_bijection, Membership,
};
use cosmo_core::random::random_multigraph_mixed;
use cosmo_core::tutte::count_acyclic_via_tutte;
use cosmo_core::{IntPolynomial, Limits, Multigraph};

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn g(text: &str) -> Multigraph {
    Multigraph::parse(text).expect("valid graph")
}

fn p(c: &[i64]) -> IntPolynomial {
    IntPolynomial::from_i64s(c)
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn formulas(h: &Multigraph) -> Result<Vec<IntPolynomial>, String> {
    Method::FORMULAS
        .iter()
        .map(|&m| {
            hstar(h, m, &Limits::default())
                .map(|r| r.polynomial)
                .map_err(|e| format!("{m}: {e}"))
        })
        .collect()
}

fn agreed(h: &Multigraph) -> Result<IntPolynomial, String> {
    let polys = formulas(h)?;
    ensure(polys.iter().all(|q| q == &polys[0]), || {
        format!(
            "pipelines disagree on {:?}: {}",
            h.edges(),
            polys
                .iter()
                .map(|q| q.to_string())
                .collect::<Vec<_>>()
                .join(" | ")
        )
    })?;
    Ok(polys[0].clone())
}

fn timed(
    limit: Duration,
    label: &str,
    f: impl FnOnce() -> Result<(), String>,
) -> Result<Duration, String> {
    let start = Instant::now();
    f().map_err(|e| format!("{label}: {e}"))?;
    let spent = start.elapsed();
    ensure(spent < limit, || {
        format!("{label} took {spent:?}, limit {limit:?}")
    })?;
    Ok(spent)
}

fn expect_eq(label: &str, got: &IntPolynomial, want: &IntPolynomial) -> Result<(), String> {
    ensure(got == want, || {
        format!("{label}: got {got}, expected {want}")
    })
}

/// Simple trees with up to 8 edges: paths, stars and random attachments.
fn simple_trees() -> Vec<Multigraph> {
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for m in 1..=8usize {
        out.push(Multigraph::new(m + 1, (0..m).map(|i| (i, i + 1)).collect()).unwrap());
        out.push(Multigraph::new(m + 1, (1..=m).map(|i| (0, i)).collect()).unwrap());
        out.push(
            Multigraph::new(m + 1, (1..=m).map(|i| (rng.gen_range(0..i), i)).collect()).unwrap(),
        );
    }
    out
}

fn criterion_regressions() -> Outcome {
    let second = Duration::from_secs(1);
    let mut worst = Duration::ZERO;
    let mut note = |d: Duration| worst = worst.max(d);

    note(timed(second, "2 parallel edges", || {
        let par = g("nodes 2\n0 1\n0 1");
        for m in Method::ALL {
            let r = hstar(&par, m, &Limits::default()).map_err(|e| e.to_string())?;
            expect_eq(m.name(), &r.polynomial, &p(&[1, 6, 5]))?;
        }
        Ok(())
    })?);
    note(timed(second, "triangle", || {
        let tri = g("nodes 3\n0 1\n1 2\n2 0");
        let want = p(&[1, 9, 27, 19]);
        expect_eq(
            "triangle factorization",
            &(&p(&[1, 1]) * &p(&[1, 8, 19])),
            &want,
        )?;
        for m in Method::ALL {
            let r = hstar(&tri, m, &Limits::default()).map_err(|e| e.to_string())?;
            expect_eq(m.name(), &r.polynomial, &want)?;
        }
        Ok(())
    })?);
    note(timed(second, "simple trees", || {
        for t in simple_trees() {
            let m = t.edge_count() as u32;
            expect_eq(
                &format!("tree {:?}", t.edges()),
                &agreed(&t)?,
                &p(&[1, 3]).pow(m),
            )?;
        }
        Ok(())
    })?);
    note(timed(second, "loops", || {
        expect_eq("single loop", &agreed(&g("nodes 1\n0 0"))?, &p(&[1, 1]))?;
        for m in 1..=8usize {
            let bundle = Multigraph::new(1, vec![(0, 0); m]).unwrap();
            let h = agreed(&bundle)?;
            ensure(h.eval_at_one() == BigInt::from(1u64 << m), || {
                format!("{m} loops: volume {}", h.eval_at_one())
            })?;
        }
        Ok(())
    })?);
    note(timed(second, "K_{2,n}", || {
        let want = [
            p(&[1, 6, 9]),
            p(&[1, 12, 54, 108, 65]),
            p(&[1, 18, 135, 540, 1167, 1170, 425]),
        ];
        for (n, w) in (1..=3).zip(&want) {
            let cf = closed_form_k2n(n).map_err(|e| e.to_string())?;
            expect_eq(&format!("closed form n={n}"), &cf, w)?;
            expect_eq(
                &format!("pipelines n={n}"),
                &agreed(&k2n_graph(n).unwrap())?,
                w,
            )?;
        }
        let v = volume(&k2n_graph(3).unwrap());
        ensure(v == BigInt::from(3456), || format!("volume(K_2,3) = {v}"))
    })?);
    note(timed(second, "theta graphs", || {
        for a in 1..=3 {
            for b in a..=3 {
                for c in b..=3 {
                    let cf = closed_form_theta(a, b, c).map_err(|e| e.to_string())?;
                    let h = agreed(&theta_graph(a, b, c).unwrap())?;
                    expect_eq(&format!("theta {a},{b},{c}"), &h, &cf)?;
                }
            }
        }
        Ok(())
    })?);
    note(timed(second, "multicycle (1,1,1,1)", || {
        let cf = closed_form_multicycle(&[1, 1, 1, 1]).map_err(|e| e.to_string())?;
        let want = &p(&[1, 3]).pow(4) - &p(&[0, 2]).pow(4);
        expect_eq("closed form", &cf, &want)?;
        expect_eq(
            "k2n(2)",
            &closed_form_k2n(2).map_err(|e| e.to_string())?,
            &want,
        )?;
        expect_eq(
            "pipelines",
            &agreed(&multicycle_graph(&[1, 1, 1, 1]).unwrap())?,
            &want,
        )
    })?);
    Ok(format!("all regressions exact, slowest {worst:?}"))
}

/// 200 random multigraphs, `1 <= n <= 6`, `m <= 10`, loops and parallels.
fn random_suite() -> Vec<Multigraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    (0..200)
        .map(|_| {
            let n = rng.gen_range(1..=6);
            let m = rng.gen_range(0..=10);
            random_multigraph_mixed(&mut rng, n, m, 0.15, 0.25)
        })
        .collect()
}

fn criterion_cross_method(suite: &[Multigraph]) -> Outcome {
    let start = Instant::now();
    let (mut loops, mut parallel) = (0, 0);
    for h in suite {
        agreed(h)?;
        loops += usize::from(h.loop_count() > 0);
        let mut e = h
            .edges()
            .iter()
            .map(|&(u, v)| (u.min(v), u.max(v)))
            .collect::<Vec<_>>();
        e.sort_unstable();
        parallel += usize::from(e.windows(2).any(|w| w[0] == w[1]));
    }
    let spent = start.elapsed();
    ensure(spent < Duration::from_secs(60), || {
        format!("took {spent:?}")
    })?;
    Ok(format!(
        "{} graphs ({loops} with loops, {parallel} with parallels) in {spent:?}",
        suite.len()
    ))
}

fn geometric_suite() -> Vec<(&'static str, Multigraph)> {
    vec![
        ("single edge", g("nodes 2\n0 1")),
        ("single loop", g("nodes 1\n0 0")),
        ("2 parallel edges", g("nodes 2\n0 1\n0 1")),
        ("2-path", g("nodes 3\n0 1\n1 2")),
        ("triangle", g("nodes 3\n0 1\n1 2\n2 0")),
        ("theta 1,1,1", theta_graph(1, 1, 1).unwrap()),
        ("triangle + pendant", g("nodes 4\n0 1\n1 2\n2 0\n2 3")),
    ]
}

fn criterion_geometric() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut cells = Vec::new();
    for (name, h) in geometric_suite() {
        ensure(h.node_count() + h.edge_count() <= 9, || {
            format!("{name} too large")
        })?;
        let expected = (BigInt::from(1) << h.edge_count()) * count_acyclic_via_tutte(&h);
        let reference = agreed(&h)?;
        let check = |order: Option<Vec<_>>| -> Result<usize, String> {
            let t = match order {
                None => placing_triangulation_default(&h),
                Some(o) => placing_triangulation(&h, &o),
            }
            .map_err(|e| format!("{name}: {e}"))?;
            ensure(BigInt::from(t.cell_count()) == expected, || {
                format!("{name}: {} cells, expected {expected}", t.cell_count())
            })?;
            ensure(t.is_unimodular(), || format!("{name}: non-unimodular cell"))?;
            ensure(t.contains_standard_simplex(), || {
                format!("{name}: standard simplex missing")
            })?;
            verify_main_bijection(&t).map_err(|e| format!("{name}: {e}"))?;
            let hv = h_vector_from_triangulation(&t).map_err(|e| format!("{name}: {e}"))?;
            expect_eq(name, &hv, &reference)?;
            Ok(t.cell_count())
        };
        cells.push(check(None)?);
        for _ in 0..10 {
            check(Some(random_insertion_order(&h, &mut rng)))?;
        }
    }
    Ok(format!(
        "cell counts {cells:?}, default + 10 random orders each"
    ))
}

fn criterion_halfopen() -> Outcome {
    let mut detail = Vec::new();
    for (name, h) in geometric_suite() {
        let t = placing_triangulation_default(&h).map_err(|e| format!("{name}: {e}"))?;
        let d = half_open_decomposition(&t).map_err(|e| format!("{name}: {e}"))?;
        let bad = d.count_mismatches(&t).map_err(|e| e.to_string())?;
        ensure(bad.is_empty(), || {
            format!("{name}: |B(S)| != k(S) on cells {bad:?}")
        })?;
        let reference = hstar_acyclic(&h).map_err(|e| e.to_string())?;
        let dim = t.dimension();
        for j in 0..=dim + 1 {
            let a = ehrhart_from_halfopen(&d, j, dim);
            let b = ehrhart_from_hstar(&reference, dim, j);
            ensure(a == b, || format!("{name}: L({j}) half-open {a} vs h* {b}"))?;
        }
        detail.push(format!("{name} (delta {})", d.delta));
    }
    Ok(detail.join(", "))
}

fn criterion_ehrhart_oracle() -> Outcome {
    let start = Instant::now();
    let mut values = Vec::new();
    for (name, text) in [
        ("single edge", "nodes 2\n0 1"),
        ("single loop", "nodes 1\n0 0"),
        ("2 parallel edges", "nodes 2\n0 1\n0 1"),
    ] {
        let h = g(text);
        let hs = hstar_acyclic(&h).map_err(|e| e.to_string())?;
        let d = h.node_count() + h.edge_count() - 1;
        let mut row = Vec::new();
        for j in 1..=3 {
            let brute = ehrhart_brute(&h, j, Membership::Lp, None, &Limits::default())
                .map_err(|e| e.to_string())?;
            let formula = ehrhart_from_hstar(&hs, d, j);
            ensure(brute == formula, || {
                format!("{name}: L({j}) brute {brute} vs {formula}")
            })?;
            row.push(brute.to_string());
        }
        values.push(format!("{name} {}", row.join("/")));
    }
    let single: Vec<BigInt> = (1..=3)
        .map(|j| {
            ehrhart_brute(
                &g("nodes 2\n0 1"),
                j,
                Membership::Lp,
                None,
                &Limits::default(),
            )
            .unwrap()
        })
        .collect();
    ensure(single == [6, 15, 28].map(BigInt::from), || {
        format!("single edge counts {single:?}")
    })?;
    let spent = start.elapsed();
    ensure(spent < Duration::from_secs(30), || {
        format!("took {spent:?}")
    })?;
    Ok(format!("{} in {spent:?}", values.join(", ")))
}

fn criterion_properties(suite: &[Multigraph]) -> Outcome {
    let mut graphs: Vec<Multigraph> = suite.to_vec();
    graphs.extend(geometric_suite().into_iter().map(|(_, h)| h));
    graphs.extend(simple_trees());
    for n in 1..=3 {
        graphs.push(k2n_graph(n).unwrap());
    }
    let mut forests = 0;
    for h in &graphs {
        let hs = agreed(h)?;
        let m = h.edge_count();
        let lc = check_ultra_log_concave(&hs, m);
        ensure(lc.holds, || {
            format!(
                "{:?}: log-concavity fails at {:?}",
                h.edges(),
                lc.first_violation
            )
        })?;
        ensure(check_coefficient_bound(&hs, m), || {
            format!("{:?}: coefficient bound fails", h.edges())
        })?;
        let tree_power = p(&[1, 3]).pow(m as u32);
        ensure((hs == tree_power) == h.is_forest(), || {
            format!("{:?}: bound equality vs forest", h.edges())
        })?;
        forests += usize::from(h.is_forest());
        let h1 = BigInt::from(3 * m - 2 * h.loop_count());
        ensure(hs.coeff(1) == h1, || {
            format!("{:?}: h*_1 = {}, expected {h1}", h.edges(), hs.coeff(1))
        })?;
    }
    let path3 = agreed(&g("nodes 4\n0 1\n1 2\n2 3"))?;
    let star3 = agreed(&g("nodes 4\n0 1\n0 2\n0 3"))?;
    expect_eq("path-3 vs star-3", &path3, &star3)?;
    Ok(format!(
        "{} graphs ({forests} forests); path-3 = star-3 = {path3}",
        graphs.len()
    ))
}

fn criterion_volume_bounds(suite: &[Multigraph]) -> Outcome {
    let mut at_max = 0;
    for h in suite {
        let v = volume(h);
        let m = h.edge_count();
        let (lo, hi) = (BigInt::from(1) << m, BigInt::from(1) << (2 * m));
        ensure(lo <= v && v <= hi, || {
            format!("{:?}: volume {v} outside [{lo}, {hi}]", h.edges())
        })?;
        ensure((v == hi) == h.is_forest(), || {
            format!("{:?}: volume {v}, forest {}", h.edges(), h.is_forest())
        })?;
        at_max += usize::from(v == hi);
    }
    Ok(format!(
        "{} graphs, {at_max} attain 4^m, all forests",
        suite.len()
    ))
}

fn main() -> ExitCode {
    let suite = random_suite();
    let criteria: Vec<Criterion> = vec![
        ("1 value regressions", Box::new(criterion_regressions)),
        (
            "2 cross-method agreement",
            Box::new(|| criterion_cross_method(&suite)),
        ),
        ("3 geometric certification", Box::new(criterion_geometric)),
        ("4 half-open certification", Box::new(criterion_halfopen)),
        ("5 Ehrhart oracle", Box::new(criterion_ehrhart_oracle)),
        (
            "6 property suites",
            Box::new(|| criterion_properties(&suite)),
        ),
        (
            "7 volume bounds",
            Box::new(|| criterion_volume_bounds(&suite)),
        ),
    ];
    let mut failed = 0;
    for (name, run) in &criteria {
        match run() {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name}: {why}");
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
