use num_bigint::BigInt;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cosmo_core::families::{
    closed_form_k2n, closed_form_multicycle, closed_form_multitree, closed_form_theta, k2n_graph,
    multicycle_graph, multitree_graph, theta_graph,
};
use cosmo_core::geometry::{barycentric_coordinates, lp_membership};
use cosmo_core::hstar::{hstar_acyclic, hstar_delcon, hstar_moebius, hstar_tutte};
use cosmo_core::polynomial::binomial_signed;
use cosmo_core::polytope::{
    ehrhart_brute, h_vector_from_triangulation, half_open_decomposition, lattice_points,
    placing_triangulation, placing_triangulation_default, random_insertion_order,
    verify_main_bijection, Membership,
};
use cosmo_core::tutte::{count_acyclic_via_tutte, tutte_delcon, tutte_subset_expansion};
use cosmo_core::{IntPolynomial, Limits, Multigraph, Rational};

fn arb_graph(max_n: usize, max_m: usize) -> impl Strategy<Value = Multigraph> {
    (1..=max_n).prop_flat_map(move |n| {
        prop::collection::vec((0..n, 0..n), 0..=max_m)
            .prop_map(move |edges| Multigraph::new(n, edges).unwrap())
    })
}

/// Counts forests among all `2^m` subsets with a plain union-find.
fn oracle_acyclic_count(g: &Multigraph) -> u64 {
    let m = g.edge_count();
    let mut count = 0;
    for mask in 0u64..(1 << m) {
        let mut parent: Vec<usize> = (0..g.node_count()).collect();
        fn root(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                x = p[x];
            }
            x
        }
        let mut ok = true;
        for (f, &(u, v)) in g.edges().iter().enumerate() {
            if mask >> f & 1 == 1 {
                let (a, b) = (root(&mut parent, u), root(&mut parent, v));
                if a == b {
                    ok = false;
                    break;
                }
                parent[a] = b;
            }
        }
        count += u64::from(ok);
    }
    count
}

/// Recovers h* from lattice-point counts: `h*(z) = (1 - z)^(d+1) sum_j L(j) z^j`
/// truncated at degree `d`.
fn hstar_from_counts(counts: &[BigInt], d: usize) -> IntPolynomial {
    let coeffs = (0..=d)
        .map(|i| {
            (0..=i)
                .map(|j| {
                    let sign = if (i - j) % 2 == 0 { 1 } else { -1 };
                    BigInt::from(sign) * binomial_signed((d + 1) as i64, i - j) * &counts[j]
                })
                .sum()
        })
        .collect();
    IntPolynomial::new(coeffs)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn delcon_matches_subset_expansion(g in arb_graph(5, 10)) {
        prop_assert_eq!(tutte_delcon(&g), tutte_subset_expansion(&g).unwrap());
    }

    #[test]
    fn acyclic_count_is_t21(g in arb_graph(5, 10)) {
        prop_assert_eq!(count_acyclic_via_tutte(&g), BigInt::from(oracle_acyclic_count(&g)));
    }

    #[test]
    fn tutte_multiplies_over_disjoint_unions(a in arb_graph(4, 5), b in arb_graph(4, 5)) {
        let u = a.disjoint_union(&b);
        prop_assert_eq!(tutte_delcon(&u), &tutte_delcon(&a) * &tutte_delcon(&b));
        prop_assert_eq!(hstar_delcon(&u), &hstar_delcon(&a) * &hstar_delcon(&b));
    }

    #[test]
    fn four_pipelines_agree(g in arb_graph(6, 10)) {
        let a = hstar_acyclic(&g).unwrap();
        prop_assert_eq!(&a, &hstar_delcon(&g));
        prop_assert_eq!(&a, &hstar_tutte(&g));
        prop_assert_eq!(&a, &hstar_moebius(&g).unwrap());
    }

    #[test]
    fn relabeling_keeps_hstar(g in arb_graph(5, 8), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = g.node_count();
        let mut perm: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            perm.swap(i, rng.gen_range(0..=i));
        }
        let mut edges: Vec<(usize, usize)> = g.edges().iter().map(|&(u, v)| (perm[v], perm[u])).collect();
        edges.reverse();
        let h = Multigraph::new(n, edges).unwrap();
        prop_assert_eq!(hstar_delcon(&g), hstar_delcon(&h));
    }

    #[test]
    fn multitree_closed_form(a in prop::collection::vec(1usize..=4, 1..=3)) {
        prop_assume!(a.iter().sum::<usize>() <= 10);
        prop_assert_eq!(closed_form_multitree(&a).unwrap(), hstar_acyclic(&multitree_graph(&a).unwrap()).unwrap());
    }

    #[test]
    fn multicycle_closed_form(a in prop::collection::vec(1usize..=3, 1..=4)) {
        prop_assume!(a.iter().sum::<usize>() <= 10);
        prop_assert_eq!(closed_form_multicycle(&a).unwrap(), hstar_acyclic(&multicycle_graph(&a).unwrap()).unwrap());
    }

    #[test]
    fn theta_closed_form(a in 1usize..=4, b in 1usize..=3, c in 1usize..=3) {
        prop_assert_eq!(closed_form_theta(a, b, c).unwrap(), hstar_acyclic(&theta_graph(a, b, c).unwrap()).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn random_orders_give_good_triangulations(g in arb_graph(3, 3), seed in any::<u64>()) {
        prop_assume!(g.node_count() + g.edge_count() <= 6);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let order = random_insertion_order(&g, &mut rng);
        let t = placing_triangulation(&g, &order).unwrap();
        prop_assert!(t.is_unimodular());
        prop_assert!(t.contains_standard_simplex());
        prop_assert!(verify_main_bijection(&t).is_ok());
        let d = half_open_decomposition(&t).unwrap();
        prop_assert!(d.count_mismatches(&t).unwrap().is_empty());
        prop_assert_eq!(h_vector_from_triangulation(&t).unwrap(), hstar_delcon(&g));
    }
}

#[test]
fn k2n_closed_form() {
    for n in 1..=5 {
        assert_eq!(
            closed_form_k2n(n).unwrap(),
            hstar_acyclic(&k2n_graph(n).unwrap()).unwrap()
        );
    }
}

#[test]
fn brute_force_counts_recover_hstar() {
    for (text, d) in [
        ("nodes 2\n0 1", 2),
        ("nodes 1\n0 0", 1),
        ("nodes 2\n0 1\n0 1", 3),
        ("nodes 1\n0 0\n0 0", 2),
    ] {
        let g = Multigraph::parse(text).unwrap();
        let counts: Vec<BigInt> = (0..=d)
            .map(|j| ehrhart_brute(&g, j, Membership::Lp, None, &Limits::default()).unwrap())
            .collect();
        assert_eq!(
            hstar_from_counts(&counts, d),
            hstar_acyclic(&g).unwrap(),
            "{text}"
        );
    }
}

fn q(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

/// Random points on the hyperplane `sum x = 1`, biased toward the polytope.
#[test]
fn lp_and_cell_membership_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let graphs = [
        "nodes 2\n0 1\n0 1",
        "nodes 3\n0 1\n1 2",
        "nodes 2\n0 1\n1 1",
    ];
    let mut inside = 0;
    for (i, text) in graphs.iter().cycle().take(1000).enumerate() {
        let g = Multigraph::parse(text).unwrap();
        let t = placing_triangulation_default(&g).unwrap();
        let dim = g.node_count() + g.edge_count();
        let den = rng.gen_range(1..=6);
        let mut x: Vec<Rational> = (0..dim - 1)
            .map(|_| q(rng.gen_range(-den..=2 * den), den))
            .collect();
        let rest = q(1, 1) - x.iter().cloned().sum::<Rational>();
        x.push(rest);
        let gens: Vec<Vec<Rational>> = lattice_points(&g)
            .iter()
            .map(|p| p.coords.iter().map(|&c| q(c, 1)).collect())
            .collect();
        let lp = lp_membership(&x, &gens).unwrap();
        let cells = (0..t.cell_count()).any(|c| {
            let verts: Vec<Vec<Rational>> = t
                .cell_coords(c)
                .iter()
                .map(|r| r.iter().map(|&v| q(v as i64, 1)).collect())
                .collect();
            barycentric_coordinates(&verts, &x)
                .unwrap()
                .iter()
                .all(|l| l >= &q(0, 1))
        });
        assert_eq!(lp, cells, "point {i} of {text}: {x:?}");
        inside += usize::from(lp);
    }
    assert!(inside > 50, "only {inside} points inside");
}

#[test]
fn path_and_star_share_hstar() {
    let path = Multigraph::parse("nodes 4\n0 1\n1 2\n2 3").unwrap();
    let star = Multigraph::parse("nodes 4\n0 1\n0 2\n0 3").unwrap();
    assert_eq!(hstar_delcon(&path), hstar_delcon(&star));
    assert_eq!(
        hstar_acyclic(&path).unwrap(),
        IntPolynomial::from_i64s(&[1, 3]).pow(3)
    );
}
