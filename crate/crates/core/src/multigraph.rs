//! Multigraphs with loops and parallel edges, and the subset enumerations the
//! h*-formulas sum over.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};

/// Largest edge count the bitmask-based subset enumerators support.
pub const MAX_SUBSET_EDGES: usize = 64;

/// An undirected multigraph. Edge `i` is `edges[i] = (tail, head)`; the order
/// of endpoints is kept as given and fixes the arrow orientation of edge `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Multigraph {
    node_count: usize,
    edges: Vec<(usize, usize)>,
}

/// A set of edge indices, stored as a bitmask over `0..m` with `m <= 64`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeSubset(pub u64);

impl EdgeSubset {
    pub const EMPTY: EdgeSubset = EdgeSubset(0);

    /// All edges `0..m`.
    pub fn full(m: usize) -> Self {
        assert!(m <= MAX_SUBSET_EDGES);
        if m == 64 {
            EdgeSubset(u64::MAX)
        } else {
            EdgeSubset((1u64 << m) - 1)
        }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        EdgeSubset(indices.into_iter().fold(0u64, |acc, i| acc | (1u64 << i)))
    }

    pub fn contains(self, e: usize) -> bool {
        e < 64 && self.0 >> e & 1 == 1
    }

    pub fn with(self, e: usize) -> Self {
        EdgeSubset(self.0 | (1u64 << e))
    }

    pub fn without(self, e: usize) -> Self {
        EdgeSubset(self.0 & !(1u64 << e))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset_of(self, other: EdgeSubset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let e = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(e)
            }
        })
    }
}

impl fmt::Display for EdgeSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

/// Union-find with path compression and union by rank.
#[derive(Clone, Debug)]
pub struct DisjointSets {
    parent: Vec<usize>,
    rank: Vec<u8>,
    sets: usize,
}

impl DisjointSets {
    pub fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
            rank: vec![0; n],
            sets: n,
        }
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    /// Merges the sets of `a` and `b`; returns false if they were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        self.sets -= 1;
        true
    }

    pub fn set_count(&self) -> usize {
        self.sets
    }
}

impl Multigraph {
    pub fn new(node_count: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        for (i, &(u, v)) in edges.iter().enumerate() {
            if u >= node_count || v >= node_count {
                return Err(Error::InvalidArgument(format!(
                    "edge {i} = ({u}, {v}) has an endpoint outside 0..{node_count}"
                )));
            }
        }
        Ok(Multigraph { node_count, edges })
    }

    pub fn edgeless(node_count: usize) -> Self {
        Multigraph {
            node_count,
            edges: Vec::new(),
        }
    }

    /// Parses the plain-text graph format: `#` comments, a `nodes <n>` header,
    /// then one `<u> <v>` line per edge.
    pub fn parse(text: &str) -> Result<Self> {
        let mut node_count = None;
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let err = |message: String| Error::Parse {
                line: line_no,
                message,
            };
            match node_count {
                None => {
                    if fields.len() != 2 || fields[0] != "nodes" {
                        return Err(err(format!("expected `nodes <n>` header, found `{line}`")));
                    }
                    let n = fields[1]
                        .parse::<usize>()
                        .map_err(|_| err(format!("invalid node count `{}`", fields[1])))?;
                    node_count = Some(n);
                }
                Some(n) => {
                    if fields.len() != 2 {
                        return Err(err(format!("expected `<u> <v>`, found `{line}`")));
                    }
                    let mut ends = [0usize; 2];
                    for (slot, field) in ends.iter_mut().zip(&fields) {
                        *slot = field
                            .parse::<usize>()
                            .map_err(|_| err(format!("invalid node index `{field}`")))?;
                        if *slot >= n {
                            return Err(err(format!("node index {slot} out of range 0..{n}")));
                        }
                    }
                    edges.push((ends[0], ends[1]));
                }
            }
        }
        let node_count = node_count.ok_or(Error::Parse {
            line: text.lines().count().max(1),
            message: "missing `nodes <n>` header".into(),
        })?;
        Ok(Multigraph { node_count, edges })
    }

    /// Renders the graph in the format accepted by [`Multigraph::parse`].
    pub fn to_text(&self) -> String {
        let mut out = format!("nodes {}\n", self.node_count);
        for &(u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn is_loop(&self, e: usize) -> bool {
        let (u, v) = self.edges[e];
        u == v
    }

    pub fn loop_count(&self) -> usize {
        (0..self.edge_count()).filter(|&e| self.is_loop(e)).count()
    }

    pub fn all_edges(&self) -> EdgeSubset {
        EdgeSubset::full(self.edge_count())
    }

    /// Degree of every node; a loop contributes two.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.node_count];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    /// True iff `(V, h)` contains no cycle. Loops and parallel pairs are cycles.
    pub fn is_acyclic(&self, h: EdgeSubset) -> bool {
        let mut dsu = DisjointSets::new(self.node_count);
        h.iter().all(|e| {
            let (u, v) = self.edges[e];
            dsu.union(u, v)
        })
    }

    pub fn is_forest(&self) -> bool {
        let mut dsu = DisjointSets::new(self.node_count);
        self.edges.iter().all(|&(u, v)| dsu.union(u, v))
    }

    /// Connected components of `(V, h)`, counting isolated nodes.
    pub fn component_count(&self, h: EdgeSubset) -> usize {
        let mut dsu = DisjointSets::new(self.node_count);
        for e in h.iter() {
            let (u, v) = self.edges[e];
            dsu.union(u, v);
        }
        dsu.set_count()
    }

    fn component_count_all(&self) -> usize {
        let mut dsu = DisjointSets::new(self.node_count);
        for &(u, v) in &self.edges {
            dsu.union(u, v);
        }
        dsu.set_count()
    }

    /// Graphic-matroid rank `n - c(E)`.
    pub fn rank(&self) -> usize {
        self.node_count - self.component_count_all()
    }

    /// Edges of `(V, h)` whose removal increases the number of components.
    /// Lowlink DFS keyed on edge ids so parallel edges are handled correctly.
    pub fn bridges_within(&self, h: impl IntoIterator<Item = usize>) -> Vec<usize> {
        let n = self.node_count;
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for e in h {
            let (u, v) = self.edges[e];
            if u != v {
                adj[u].push((v, e));
                adj[v].push((u, e));
            }
        }
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut timer = 0;
        let mut bridges = Vec::new();
        // (node, parent edge, next adjacency position)
        let mut stack: Vec<(usize, usize, usize)> = Vec::new();
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            stack.push((root, usize::MAX, 0));
            while let Some(&mut (u, pe, ref mut pos)) = stack.last_mut() {
                if *pos < adj[u].len() {
                    let (w, e) = adj[u][*pos];
                    *pos += 1;
                    if e == pe {
                        continue;
                    }
                    if disc[w] == usize::MAX {
                        disc[w] = timer;
                        low[w] = timer;
                        timer += 1;
                        stack.push((w, e, 0));
                    } else {
                        low[u] = low[u].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let Some(&(p, _, _)) = stack.last() {
                        low[p] = low[p].min(low[u]);
                        if low[u] > disc[p] {
                            bridges.push(pe);
                        }
                    }
                }
            }
        }
        bridges.sort_unstable();
        bridges
    }

    /// True iff deleting `e` increases the component count of `G`.
    pub fn is_bridge(&self, e: usize) -> bool {
        if self.is_loop(e) {
            return false;
        }
        let (u, v) = self.edges[e];
        let mut dsu = DisjointSets::new(self.node_count);
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            if i != e {
                dsu.union(a, b);
            }
        }
        dsu.find(u) != dsu.find(v)
    }

    /// True iff no edge of `(V, h)` is a bridge of `(V, h)`.
    pub fn is_bridge_free(&self, h: EdgeSubset) -> bool {
        self.bridges_within(h.iter()).is_empty()
    }

    /// `G \ e`: removes edge `e`, keeps every node.
    pub fn delete_edge(&self, e: usize) -> Multigraph {
        let mut edges = self.edges.clone();
        edges.remove(e);
        Multigraph {
            node_count: self.node_count,
            edges,
        }
    }

    /// `G / e`: merges the endpoints of `e` and renumbers nodes densely.
    /// Edges parallel to `e` become loops.
    pub fn contract_edge(&self, e: usize) -> Result<Multigraph> {
        let (a, b) = self.edges[e];
        if a == b {
            return Err(Error::ContractLoop(e));
        }
        let (keep, gone) = (a.min(b), a.max(b));
        let relabel = |x: usize| {
            let x = if x == gone { keep } else { x };
            if x > gone {
                x - 1
            } else {
                x
            }
        };
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != e)
            .map(|(_, &(u, v))| (relabel(u), relabel(v)))
            .collect();
        Ok(Multigraph {
            node_count: self.node_count - 1,
            edges,
        })
    }

    /// Drops nodes without incident edges, keeping the relative node order.
    pub fn without_isolated_nodes(&self) -> Multigraph {
        let deg = self.degrees();
        let mut new_id = vec![usize::MAX; self.node_count];
        let mut next = 0;
        for (u, &d) in deg.iter().enumerate() {
            if d > 0 {
                new_id[u] = next;
                next += 1;
            }
        }
        Multigraph {
            node_count: next,
            edges: self
                .edges
                .iter()
                .map(|&(u, v)| (new_id[u], new_id[v]))
                .collect(),
        }
    }

    /// Adds `k` isolated nodes at the end.
    pub fn with_isolated_nodes(&self, k: usize) -> Multigraph {
        Multigraph {
            node_count: self.node_count + k,
            edges: self.edges.clone(),
        }
    }

    /// Disjoint union; the nodes of `other` are shifted past those of `self`.
    pub fn disjoint_union(&self, other: &Multigraph) -> Multigraph {
        let shift = self.node_count;
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(u, v)| (u + shift, v + shift)));
        Multigraph {
            node_count: self.node_count + other.node_count,
            edges,
        }
    }

    /// A memoization key. Nodes are relabeled by a BFS that always expands the
    /// highest-degree unvisited node first (ties by index); the key is the node
    /// count followed by the sorted relabeled edge multiset. Equal keys imply
    /// isomorphic graphs.
    pub fn canonical_key(&self) -> Vec<u8> {
        let n = self.node_count;
        let deg = self.degrees();
        let mut nbrs: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(u, v) in &self.edges {
            nbrs[u].push(v);
            if u != v {
                nbrs[v].push(u);
            }
        }
        let by_priority = |a: &usize, b: &usize| deg[*b].cmp(&deg[*a]).then(a.cmp(b));
        for list in &mut nbrs {
            list.sort_by(by_priority);
            list.dedup();
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(by_priority);

        let mut label = vec![usize::MAX; n];
        let mut next = 0;
        let mut queue = VecDeque::new();
        for &start in &order {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = next;
            next += 1;
            queue.push_back(start);
            while let Some(u) = queue.pop_front() {
                for &w in &nbrs[u] {
                    if label[w] == usize::MAX {
                        label[w] = next;
                        next += 1;
                        queue.push_back(w);
                    }
                }
            }
        }

        let mut relabeled: Vec<(u32, u32)> = self
            .edges
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (label[u] as u32, label[v] as u32);
                (a.min(b), a.max(b))
            })
            .collect();
        relabeled.sort_unstable();
        let mut key = Vec::with_capacity(4 + 8 * relabeled.len());
        key.extend_from_slice(&(n as u32).to_le_bytes());
        for (a, b) in relabeled {
            key.extend_from_slice(&a.to_le_bytes());
            key.extend_from_slice(&b.to_le_bytes());
        }
        key
    }

    fn check_subset_capacity(&self) -> Result<()> {
        if self.edge_count() > MAX_SUBSET_EDGES {
            return Err(Error::SizeLimit {
                what: "edge subset bitmask",
                limit: MAX_SUBSET_EDGES,
                actual: self.edge_count(),
            });
        }
        Ok(())
    }

    /// Every acyclic edge subset, in increasing bitmask order.
    pub fn acyclic_subsets(&self) -> Result<AcyclicSubsets<'_>> {
        self.check_subset_capacity()?;
        let m = self.edge_count();
        Ok(AcyclicSubsets {
            graph: self,
            stack: vec![Frame {
                next: m,
                mask: EdgeSubset::EMPTY,
                dsu: DisjointSets::new(self.node_count),
            }],
        })
    }

    /// Every bridge-free edge subset (unions of cycles, loops included), in
    /// increasing bitmask order.
    pub fn bridge_free_subsets(&self) -> Result<impl Iterator<Item = EdgeSubset> + '_> {
        self.check_subset_capacity()?;
        let full = self.all_edges().0;
        // Edges that are bridges of G can never lie on a cycle of any subgraph.
        let bridges = EdgeSubset::from_indices(self.bridges_within(0..self.edge_count()));
        let usable = full & !bridges.0;
        Ok(SubmaskIter::new(usable)
            .map(EdgeSubset)
            .filter(move |&h| self.is_bridge_free(h)))
    }
}

/// Ascending enumeration of all submasks of a mask.
struct SubmaskIter {
    mask: u64,
    next: Option<u64>,
}

impl SubmaskIter {
    fn new(mask: u64) -> Self {
        SubmaskIter {
            mask,
            next: Some(0),
        }
    }
}

impl Iterator for SubmaskIter {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let cur = self.next?;
        self.next = if cur == self.mask {
            None
        } else {
            // next submask in increasing numeric order
            Some(cur.wrapping_sub(self.mask) & self.mask)
        };
        Some(cur)
    }
}

struct Frame {
    /// Edges `0..next` are still undecided; the highest is decided first.
    next: usize,
    mask: EdgeSubset,
    dsu: DisjointSets,
}

/// Depth-first enumerator of acyclic edge subsets. Only acyclic partial
/// choices are extended, and the exclude branch is explored first so the
/// output is sorted by bitmask.
pub struct AcyclicSubsets<'g> {
    graph: &'g Multigraph,
    stack: Vec<Frame>,
}

impl Iterator for AcyclicSubsets<'_> {
    type Item = EdgeSubset;

    fn next(&mut self) -> Option<EdgeSubset> {
        while let Some(frame) = self.stack.pop() {
            if frame.next == 0 {
                return Some(frame.mask);
            }
            let e = frame.next - 1;
            let (u, v) = self.graph.edges[e];
            let mut with = frame.dsu.clone();
            if with.union(u, v) {
                self.stack.push(Frame {
                    next: e,
                    mask: frame.mask.with(e),
                    dsu: with,
                });
            }
            self.stack.push(Frame {
                next: e,
                mask: frame.mask,
                dsu: frame.dsu,
            });
        }
        None
    }
}

impl fmt::Display for Multigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G(n={}, E=[", self.node_count)?;
        for (i, (u, v)) in self.edges.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        write!(f, "])")
    }
}
