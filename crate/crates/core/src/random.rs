//! Random multigraphs for property and cross-method testing.

use rand::Rng;

use crate::multigraph::Multigraph;

/// `m` edges with endpoints drawn uniformly from `n` nodes, so loops and
/// parallel edges occur freely.
pub fn random_multigraph<R: Rng + ?Sized>(rng: &mut R, n: usize, m: usize) -> Multigraph {
    assert!(n >= 1, "need at least one node");
    let edges = (0..m)
        .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n)))
        .collect();
    Multigraph::new(n, edges).expect("endpoints are in range")
}

/// Like [`random_multigraph`] but with loops drawn with probability
/// `loop_rate` and parallel edges encouraged by reusing earlier pairs.
pub fn random_multigraph_mixed<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    m: usize,
    loop_rate: f64,
    repeat_rate: f64,
) -> Multigraph {
    assert!(n >= 1, "need at least one node");
    let mut edges: Vec<(usize, usize)> = Vec::with_capacity(m);
    for _ in 0..m {
        let e = if !edges.is_empty() && rng.gen_bool(repeat_rate) {
            edges[rng.gen_range(0..edges.len())]
        } else if n == 1 || rng.gen_bool(loop_rate) {
            let u = rng.gen_range(0..n);
            (u, u)
        } else {
            let u = rng.gen_range(0..n);
            let mut v = rng.gen_range(0..n - 1);
            if v >= u {
                v += 1;
            }
            (u, v)
        };
        edges.push(e);
    }
    Multigraph::new(n, edges).expect("endpoints are in range")
}
