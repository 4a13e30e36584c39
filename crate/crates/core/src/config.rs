/// Size guards for the exponential enumerators and caches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Maximum edge count for routines that visit all `2^m` edge subsets.
    pub subset_edges: usize,
    /// Maximum number of acyclic subsets summed by the acyclic pipeline.
    pub acyclic_subsets: usize,
    /// Maximum number of bridge-free subsets in the Möbius pipeline.
    pub bridge_free_subsets: usize,
    /// Deletion-contraction memo capacity; new entries are dropped once full.
    pub memo_entries: usize,
    /// Largest ambient dimension `n + m` for brute-force lattice counting.
    pub brute_dimension: usize,
    /// Largest dilation factor for brute-force lattice counting.
    pub brute_dilation: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            subset_edges: 20,
            acyclic_subsets: 1 << 24,
            bridge_free_subsets: 1 << 14,
            memo_entries: 1_000_000,
            brute_dimension: 5,
            brute_dilation: 4,
        }
    }
}
