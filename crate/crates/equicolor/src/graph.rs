//! Graph representation, outerplane-embedding validation and recovery,
//! neighborhood structure, weak dual, and the capped 3-colouring.
//!
//! Vertices are dense integers `0..n`. A graph may carry an outerplane
//! embedding: a cyclic order of all vertices (the outer boundary). All
//! operations are pure; `Graph` values are immutable once built and safe to
//! share across threads.

use std::collections::HashMap;

use crate::coloring::Coloring;
use crate::error::{Error, Result};

/// Undirected simple graph with an optional outerplane embedding.
#[derive(Debug, Clone)]
pub struct Graph {
    n: usize,
    /// Sorted neighbor lists.
    adj: Vec<Vec<usize>>,
    /// Normalized (u < v) edges in insertion order.
    edges: Vec<(usize, usize)>,
    /// Cyclic order of all vertices on the outer boundary, if attached.
    outer: Option<Vec<usize>>,
    /// Inverse of `outer`: vertex → position.
    pos: Option<Vec<usize>>,
}

impl PartialEq for Graph {
    /// Equality on (n, edge set, embedding); edge insertion order is not
    /// semantic.
    fn eq(&self, other: &Self) -> bool {
        if self.n != other.n || self.edges.len() != other.edges.len() || self.outer != other.outer {
            return false;
        }
        let mut a = self.edges.clone();
        let mut b = other.edges.clone();
        a.sort_unstable();
        b.sort_unstable();
        a == b
    }
}
impl Eq for Graph {}

impl Graph {
    /// Empty graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Graph {
            n,
            adj: vec![Vec::new(); n],
            edges: Vec::new(),
            outer: None,
            pos: None,
        }
    }

    /// Graph from an edge list.
    ///
    /// # Panics
    /// Panics on out-of-range endpoints or self-loops (programmer error).
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Neighbors of `v` in increasing vertex order.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges normalized (u < v), in insertion order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Edges sorted lexicographically (canonical order for comparisons).
    pub fn sorted_edges(&self) -> Vec<(usize, usize)> {
        let mut e = self.edges.clone();
        e.sort_unstable();
        e
    }

    /// Adds an edge; returns false if it was already present.
    ///
    /// # Panics
    /// Panics on self-loops or out-of-range endpoints.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        assert!(u != v, "self-loop at vertex {u}");
        assert!(u < self.n && v < self.n, "edge ({u},{v}) out of range n={}", self.n);
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        match self.adj[a].binary_search(&b) {
            Ok(_) => false,
            Err(ia) => {
                self.adj[a].insert(ia, b);
                let ib = self.adj[b].binary_search(&a).unwrap_err();
                self.adj[b].insert(ib, a);
                self.edges.push((a, b));
                true
            }
        }
    }

    /// The attached outer boundary order, if any.
    pub fn outer_order(&self) -> Option<&[usize]> {
        self.outer.as_deref()
    }

    /// Position of `v` in the attached outer order.
    pub fn position_in_outer(&self, v: usize) -> Option<usize> {
        self.pos.as_ref().map(|p| p[v])
    }

    /// Attaches an outer boundary order after checking it is a permutation of
    /// the vertex set (crossing-freeness is checked by `validate_embedding`).
    pub fn set_outer_order(&mut self, order: Vec<usize>) -> Result<()> {
        if order.len() != self.n {
            return Err(Error::NotOuterplanar(format!(
                "outer order lists {} vertices, expected {}",
                order.len(),
                self.n
            )));
        }
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in order.iter().enumerate() {
            if v >= self.n {
                return Err(Error::NotOuterplanar(format!("outer order names vertex {v} >= n")));
            }
            if pos[v] != usize::MAX {
                return Err(Error::NotOuterplanar(format!("vertex {v} repeated in outer order")));
            }
            pos[v] = i;
        }
        self.outer = Some(order);
        self.pos = Some(pos);
        Ok(())
    }

    /// Drops the attached embedding.
    pub fn clear_outer(&mut self) {
        self.outer = None;
        self.pos = None;
    }

    /// Ensures an outerplane embedding is attached, computing one if absent.
    pub fn ensure_embedding(&mut self) -> Result<()> {
        if self.outer.is_some() {
            return Ok(());
        }
        let order = compute_outer_order(self)?;
        self.set_outer_order(order)
    }

    /// Consuming convenience: returns the graph with an embedding attached.
    pub fn with_embedding(mut self) -> Result<Self> {
        self.ensure_embedding()?;
        Ok(self)
    }

    /// Induced subgraph on `keep` (order defines the new vertex ids).
    ///
    /// Returns `(subgraph, new_to_old)`. An attached embedding is projected:
    /// the restriction of an outer boundary order to a vertex subset is a
    /// valid outer boundary order of the induced subgraph.
    pub fn induced(&self, keep: &[usize]) -> (Graph, Vec<usize>) {
        let mut old_to_new = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            assert!(old_to_new[v] == usize::MAX, "vertex {v} repeated in induced()");
            old_to_new[v] = i;
        }
        let mut g = Graph::new(keep.len());
        for &(u, v) in &self.edges {
            let (nu, nv) = (old_to_new[u], old_to_new[v]);
            if nu != usize::MAX && nv != usize::MAX {
                g.add_edge(nu, nv);
            }
        }
        if let Some(outer) = &self.outer {
            let proj: Vec<usize> = outer
                .iter()
                .filter(|&&v| old_to_new[v] != usize::MAX)
                .map(|&v| old_to_new[v])
                .collect();
            g.set_outer_order(proj).expect("projected outer order is a permutation");
        }
        (g, keep.to_vec())
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut comps = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut head = 0;
            while head < comp.len() {
                let v = comp[head];
                head += 1;
                for &u in self.neighbors(v) {
                    if !seen[u] {
                        seen[u] = true;
                        comp.push(u);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.connected_components().len() == 1
    }

    /// True iff the graph is acyclic.
    pub fn is_forest(&self) -> bool {
        self.find_cycle_vertex().is_none()
    }

    /// Some vertex lying on a cycle, if one exists.
    pub fn find_cycle_vertex(&self) -> Option<usize> {
        let mut dsu = crate::util::Dsu::new(self.n);
        for &(u, v) in &self.edges {
            if !dsu.union(u, v) {
                return Some(u);
            }
        }
        None
    }
}

/// Validation findings for a claimed (or computed) outerplane embedding.
#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub is_outerplanar: bool,
    pub is_maximal: bool,
    /// Human-readable findings (crossing chord pair, edge-count excess,
    /// missing vertex in the outer order, …). Empty when clean.
    pub violations: Vec<String>,
}

/// Validates the attached embedding, or — when none is attached — whether one
/// exists at all (by computing one).
///
/// `is_maximal` means maximal outerplanar: outerplanar with `2n − 3` edges
/// (n ≥ 3), equivalently a triangulated polygon. For n ≤ 2 a complete graph
/// counts as maximal.
pub fn validate_embedding(g: &Graph) -> ValidationReport {
    let mut violations = Vec::new();
    let order: Option<Vec<usize>> = match g.outer_order() {
        Some(o) => Some(o.to_vec()),
        None => match compute_outer_order(g) {
            Ok(o) => Some(o),
            Err(e) => {
                violations.push(format!("no outerplane embedding exists: {e}"));
                None
            }
        },
    };

    if g.n() >= 2 && g.m() > 2 * g.n() - 3 {
        violations.push(format!(
            "edge count {} exceeds outerplanar bound 2n-3 = {}",
            g.m(),
            2 * g.n() - 3
        ));
    }

    if let Some(order) = &order {
        if order.len() != g.n() {
            violations.push(format!(
                "outer order lists {} vertices, expected {}",
                order.len(),
                g.n()
            ));
        } else {
            let mut pos = vec![usize::MAX; g.n()];
            let mut shape_ok = true;
            for (i, &v) in order.iter().enumerate() {
                if v >= g.n() || pos[v] != usize::MAX {
                    violations.push(format!("outer order is not a permutation at entry {i} ({v})"));
                    shape_ok = false;
                    break;
                }
                pos[v] = i;
            }
            if shape_ok {
                if let Some((e1, e2)) = find_crossing(g, &pos) {
                    violations.push(format!(
                        "chords ({},{}) and ({},{}) cross in the outer order",
                        e1.0, e1.1, e2.0, e2.1
                    ));
                }
            }
        }
    }

    let is_outerplanar = violations.is_empty();
    let is_maximal = is_outerplanar
        && match g.n() {
            0 => false,
            1 => true,
            2 => g.m() == 1,
            n => g.m() == 2 * n - 3,
        };
    ValidationReport {
        is_outerplanar,
        is_maximal,
        violations,
    }
}

/// Finds one crossing pair of edges under the vertex positions `pos`, via the
/// balanced-parentheses test (edges nested or disjoint ⇔ one-page embedding).
pub(crate) fn find_crossing(g: &Graph, pos: &[usize]) -> Option<((usize, usize), (usize, usize))> {
    let n = g.n();
    // opens[p] = edges whose smaller position is p; closes[p] likewise.
    let mut opens: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    let mut closes: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for &(u, v) in g.edges() {
        let (a, b) = if pos[u] < pos[v] { (pos[u], pos[v]) } else { (pos[v], pos[u]) };
        opens[a].push((a, b));
        closes[b].push((a, b));
    }
    let mut stack: Vec<(usize, usize)> = Vec::new();
    let mut orig = HashMap::new();
    for &(u, v) in g.edges() {
        let (a, b) = if pos[u] < pos[v] { (pos[u], pos[v]) } else { (pos[v], pos[u]) };
        orig.insert((a, b), (u, v));
    }
    for p in 0..n {
        // Close deepest-first: among edges ending here, the one opened last
        // must be on top.
        closes[p].sort_unstable_by(|x, y| y.0.cmp(&x.0));
        for e in &closes[p] {
            match stack.last() {
                Some(top) if top == e => {
                    stack.pop();
                }
                Some(top) => return Some((orig[top], orig[e])),
                None => unreachable!("edge closed before being opened"),
            }
        }
        // Open edges reaching furthest first, so the nearest-closing edge is
        // on top.
        opens[p].sort_unstable_by(|x, y| y.1.cmp(&x.1));
        for e in &opens[p] {
            stack.push(*e);
        }
    }
    None
}

/// Computes an outerplane embedding (outer boundary order) for `g`, or fails
/// with `NotOuterplanar`.
///
/// Strategy: biconnected blocks; each 2-connected block of an outerplanar
/// graph has a unique Hamiltonian cycle, recovered by repeatedly peeling a
/// degree-2 vertex; blocks and bridges are stitched at cut vertices in DFS
/// order (the boundary-walk first-occurrence order). Disconnected graphs are
/// laid out component after component.
pub fn compute_outer_order(g: &Graph) -> Result<Vec<usize>> {
    if g.n() >= 2 && g.m() > 2 * g.n() - 3 {
        return Err(Error::NotOuterplanar(format!(
            "{} edges exceed the outerplanar bound 2n-3 = {}",
            g.m(),
            2 * g.n() - 3
        )));
    }
    let blocks = biconnected_blocks(g);
    // blocks_at[v] = indices of blocks containing v.
    let mut blocks_at: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    let mut block_cycles: Vec<Vec<usize>> = Vec::with_capacity(blocks.len());
    for (bi, block_edges) in blocks.iter().enumerate() {
        let cycle = block_boundary_cycle(block_edges)?;
        for &v in &cycle {
            blocks_at[v].push(bi);
        }
        block_cycles.push(cycle);
    }
    for v in 0..g.n() {
        blocks_at[v].sort_unstable();
    }

    let mut order = Vec::with_capacity(g.n());
    let mut v_done = vec![false; g.n()];
    let mut b_done = vec![false; block_cycles.len()];
    // Boundary-walk DFS: emitting a vertex dives into each of its unvisited
    // blocks, nesting sub-block intervals between consecutive block-walk
    // vertices (the first-occurrence order of the outer boundary walk).
    fn dive(
        v: usize,
        blocks_at: &[Vec<usize>],
        block_cycles: &[Vec<usize>],
        v_done: &mut [bool],
        b_done: &mut [bool],
        order: &mut Vec<usize>,
    ) -> Result<()> {
        while let Some(b) = blocks_at[v].iter().copied().find(|&b| !b_done[b]) {
            b_done[b] = true;
            // Walk the block cycle from v, deterministically choosing the
            // direction whose first step is the smaller vertex.
            let cyc = &block_cycles[b];
            let k = cyc.len();
            let at = cyc.iter().position(|&x| x == v).expect("v lies in its block");
            let forward = k == 2 || cyc[(at + 1) % k] <= cyc[(at + k - 1) % k];
            for i in 1..k {
                let u = if forward { cyc[(at + i) % k] } else { cyc[(at + k - i) % k] };
                if v_done[u] {
                    return Err(Error::NotOuterplanar(format!(
                        "block structure revisits vertex {u}"
                    )));
                }
                v_done[u] = true;
                order.push(u);
                dive(u, blocks_at, block_cycles, v_done, b_done, order)?;
            }
        }
        Ok(())
    }
    for start in 0..g.n() {
        if v_done[start] {
            continue;
        }
        v_done[start] = true;
        order.push(start);
        dive(start, &blocks_at, &block_cycles, &mut v_done, &mut b_done, &mut order)?;
    }
    debug_assert_eq!(order.len(), g.n());
    // Certify: the produced order must be crossing-free.
    let mut pos = vec![usize::MAX; g.n()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    if let Some((e1, e2)) = find_crossing(g, &pos) {
        return Err(Error::NotOuterplanar(format!(
            "edges ({},{}) and ({},{}) cannot be drawn without crossing",
            e1.0, e1.1, e2.0, e2.1
        )));
    }
    Ok(order)
}

/// Biconnected blocks as edge lists (bridges are 2-vertex blocks).
pub(crate) fn biconnected_blocks(g: &Graph) -> Vec<Vec<(usize, usize)>> {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut blocks: Vec<Vec<(usize, usize)>> = Vec::new();
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    let mut timer = 0usize;

    // Iterative DFS frame: (v, parent, neighbor index).
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        let mut frames: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        while let Some(&mut (v, parent, ref mut idx)) = frames.last_mut() {
            if *idx < g.neighbors(v).len() {
                let u = g.neighbors(v)[*idx];
                *idx += 1;
                if u == parent {
                    continue;
                }
                if disc[u] == usize::MAX {
                    edge_stack.push((v, u));
                    disc[u] = timer;
                    low[u] = timer;
                    timer += 1;
                    frames.push((u, v, 0));
                } else if disc[u] < disc[v] {
                    edge_stack.push((v, u));
                    low[v] = low[v].min(disc[u]);
                }
            } else {
                frames.pop();
                if let Some(&mut (p, _, _)) = frames.last_mut() {
                    low[p] = low[p].min(low[v]);
                    if low[v] >= disc[p] {
                        // p separates v's subtree: everything pushed after the
                        // tree edge (p, v) belongs to one block.
                        let mut block = Vec::new();
                        while let Some(e) = edge_stack.pop() {
                            block.push(e);
                            if e == (p, v) {
                                break;
                            }
                        }
                        if !block.is_empty() {
                            blocks.push(block);
                        }
                    }
                }
            }
        }
    }
    blocks
}

/// The boundary cycle of one block: for a bridge, the 2 endpoints; for a
/// 2-connected block, its unique Hamiltonian cycle (exists iff the block is
/// outerplanar), found by peeling degree-2 vertices down to a triangle and
/// re-inserting.
pub(crate) fn block_boundary_cycle(block_edges: &[(usize, usize)]) -> Result<Vec<usize>> {
    // Collect block vertices.
    let mut verts: Vec<usize> = block_edges.iter().flat_map(|&(u, v)| [u, v]).collect();
    verts.sort_unstable();
    verts.dedup();
    if block_edges.len() == 1 {
        return Ok(verts);
    }
    let k = verts.len();
    let local: HashMap<usize, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    // Local adjacency sets for peeling (transient multigraph-free).
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); k];
    for &(u, v) in block_edges {
        let (a, b) = (local[&u], local[&v]);
        if !adj[a].contains(&b) {
            adj[a].push(b);
            adj[b].push(a);
        }
    }
    let mut alive = vec![true; k];
    let mut alive_count = k;
    let mut peeled: Vec<(usize, usize, usize)> = Vec::new(); // (v, nbr_a, nbr_b)
    let mut queue: Vec<usize> = (0..k).filter(|&v| adj[v].len() == 2).collect();
    let mut qi = 0;
    while alive_count > 3 {
        // Take the next still-valid degree-2 vertex.
        let v = loop {
            if qi >= queue.len() {
                return Err(Error::NotOuterplanar(
                    "a 2-connected block has no degree-2 vertex to peel".into(),
                ));
            }
            let v = queue[qi];
            qi += 1;
            if alive[v] && adj[v].len() == 2 {
                break v;
            }
        };
        let (a, b) = (adj[v][0], adj[v][1]);
        peeled.push((v, a, b));
        alive[v] = false;
        alive_count -= 1;
        for &x in &[a, b] {
            adj[x].retain(|&y| y != v);
        }
        if !adj[a].contains(&b) {
            adj[a].push(b);
            adj[b].push(a);
        }
        for &x in &[a, b] {
            if adj[x].len() == 2 {
                queue.push(x);
            }
        }
    }
    // Base: exactly 3 alive vertices forming a triangle.
    let base: Vec<usize> = (0..k).filter(|&v| alive[v]).collect();
    if base.len() != 3
        || !(adj[base[0]].contains(&base[1])
            && adj[base[1]].contains(&base[2])
            && adj[base[0]].contains(&base[2]))
    {
        return Err(Error::NotOuterplanar("block does not peel down to a triangle".into()));
    }
    let mut cycle = base;
    // Re-insert peeled vertices (reverse order) between their two neighbors,
    // which must be consecutive on the current cycle.
    for &(v, a, b) in peeled.iter().rev() {
        let kk = cycle.len();
        let pa = cycle.iter().position(|&x| x == a).unwrap();
        let here = if cycle[(pa + 1) % kk] == b {
            (pa + 1) % kk
        } else if cycle[(pa + kk - 1) % kk] == b {
            pa
        } else {
            return Err(Error::NotOuterplanar(format!(
                "vertices of a removed ear are not consecutive on the block cycle \
                 (block vertex {v})"
            )));
        };
        cycle.insert(here, v);
    }
    Ok(cycle.into_iter().map(|lv| verts[lv]).collect())
}

/// Neighbors of `v` in rotation order around `v` (by circular position after
/// `v` in the outer order). In a maximal outerplanar graph consecutive
/// entries are exactly the adjacent pairs of `G[N(v)]`, and the first and
/// last entries are non-adjacent.
pub fn neighbors_in_rotation(g: &Graph, v: usize) -> Result<Vec<usize>> {
    let Some(pos) = g.pos.as_ref() else {
        return Err(Error::MissingEmbedding(format!(
            "neighbors_in_rotation({v}) needs an outer order"
        )));
    };
    let n = g.n();
    let mut nbrs: Vec<usize> = g.neighbors(v).to_vec();
    nbrs.sort_unstable_by_key(|&u| (pos[u] + n - pos[v]) % n);
    Ok(nbrs)
}

/// The connected components of `G[N(v)]`, each returned as a path (possibly a
/// single vertex), ordered by smallest contained vertex; each path starts at
/// its smaller endpoint.
pub fn neighborhood_paths(g: &Graph, v: usize) -> Result<Vec<Vec<usize>>> {
    let nbrs = g.neighbors(v);
    let in_nbrs: HashMap<usize, usize> = nbrs.iter().enumerate().map(|(i, &u)| (u, i)).collect();
    let k = nbrs.len();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); k];
    for (i, &u) in nbrs.iter().enumerate() {
        for &w in g.neighbors(u) {
            if let Some(&j) = in_nbrs.get(&w) {
                if j > i {
                    adj[i].push(j);
                    adj[j].push(i);
                }
            }
        }
    }
    let mut seen = vec![false; k];
    let mut paths = Vec::new();
    for s in 0..k {
        if seen[s] {
            continue;
        }
        // Gather the component.
        let mut comp = vec![s];
        seen[s] = true;
        let mut head = 0;
        while head < comp.len() {
            let x = comp[head];
            head += 1;
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    comp.push(y);
                }
            }
        }
        // It must be a path: all degrees ≤ 2 and |edges| = |comp| − 1.
        let degsum: usize = comp.iter().map(|&x| adj[x].len()).sum();
        if comp.iter().any(|&x| adj[x].len() > 2) || degsum != 2 * (comp.len() - 1) {
            return Err(Error::NotOuterplanar(format!(
                "neighborhood of vertex {v} is not a disjoint union of paths"
            )));
        }
        // Walk from the smaller endpoint.
        let path = if comp.len() == 1 {
            vec![comp[0]]
        } else {
            let mut ends: Vec<usize> = comp.iter().copied().filter(|&x| adj[x].len() == 1).collect();
            ends.sort_unstable_by_key(|&x| nbrs[x]);
            let mut path = vec![ends[0]];
            let mut prev = usize::MAX;
            let mut cur = ends[0];
            while path.len() < comp.len() {
                let next = *adj[cur].iter().find(|&&y| y != prev).expect("path continues");
                path.push(next);
                prev = cur;
                cur = next;
            }
            path
        };
        paths.push(path.into_iter().map(|x| nbrs[x]).collect());
    }
    paths.sort_by_key(|p: &Vec<usize>| p.iter().copied().min());
    Ok(paths)
}

/// Weak dual of a maximal outerplanar graph: the tree of inner triangular
/// faces, adjacent when faces share an edge.
#[derive(Debug, Clone)]
pub struct DualTree {
    /// Inner triangular faces, vertex triples sorted ascending.
    nodes: Vec<[usize; 3]>,
    /// Pairs of face indices sharing an edge.
    links: Vec<(usize, usize)>,
    /// Face adjacency derived from `links`.
    adj: Vec<Vec<usize>>,
    /// Edge (normalized) → incident face indices (1 for boundary edges, 2 for
    /// chords).
    face_of_edge: HashMap<(usize, usize), Vec<usize>>,
}

impl DualTree {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[[usize; 3]] {
        &self.nodes
    }

    pub fn links(&self) -> &[(usize, usize)] {
        &self.links
    }

    pub fn neighbors(&self, face: usize) -> &[usize] {
        &self.adj[face]
    }

    pub fn degree(&self, face: usize) -> usize {
        self.adj[face].len()
    }

    /// Faces incident to the (normalized) edge `u,v`.
    pub fn faces_of_edge(&self, u: usize, v: usize) -> &[usize] {
        let key = if u < v { (u, v) } else { (v, u) };
        self.face_of_edge.get(&key).map(|f| f.as_slice()).unwrap_or(&[])
    }

    /// Endpoints of a longest path in the tree, plus the path itself, via
    /// double BFS. Deterministic: ties broken by smaller face index.
    pub fn longest_path(&self) -> Vec<usize> {
        if self.nodes.is_empty() {
            return Vec::new();
        }
        let far = |s: usize| -> (usize, Vec<usize>) {
            let mut parent = vec![usize::MAX; self.nodes.len()];
            let mut dist = vec![usize::MAX; self.nodes.len()];
            dist[s] = 0;
            let mut q = std::collections::VecDeque::from([s]);
            let mut best = s;
            while let Some(v) = q.pop_front() {
                if dist[v] > dist[best] {
                    best = v;
                }
                for &u in &self.adj[v] {
                    if dist[u] == usize::MAX {
                        dist[u] = dist[v] + 1;
                        parent[u] = v;
                        q.push_back(u);
                    }
                }
            }
            (best, parent)
        };
        let (a, _) = far(0);
        let (b, parent) = far(a);
        let mut path = vec![b];
        let mut cur = b;
        while parent[cur] != usize::MAX {
            cur = parent[cur];
            path.push(cur);
        }
        path.reverse();
        path
    }
}

/// Builds the weak dual of a maximal outerplanar graph (n ≥ 3) by peeling
/// ears: each degree-2 vertex closes one face; the face across its base edge
/// is whichever face later claims that edge.
pub fn weak_dual(g: &Graph) -> Result<DualTree> {
    let n = g.n();
    if n < 3 {
        return Err(Error::NotMaximal(format!("weak dual needs n >= 3, got {n}")));
    }
    if g.m() != 2 * n - 3 {
        return Err(Error::NotMaximal(format!(
            "{} edges, a triangulated polygon on {n} vertices has {}",
            g.m(),
            2 * n - 3
        )));
    }
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut alive = vec![true; n];
    let mut alive_count = n;
    let mut nodes: Vec<[usize; 3]> = Vec::with_capacity(n - 2);
    let mut links: Vec<(usize, usize)> = Vec::new();
    let mut open_face: HashMap<(usize, usize), usize> = HashMap::new();
    let mut queue: Vec<usize> = (0..n).filter(|&v| deg[v] == 2).collect();
    let mut qi = 0;

    let norm = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
    let settle =
        |face: usize, e: (usize, usize), open_face: &mut HashMap<(usize, usize), usize>, links: &mut Vec<(usize, usize)>| {
            match open_face.remove(&e) {
                Some(other) => links.push((other, face)),
                None => {
                    open_face.insert(e, face);
                }
            }
        };

    while alive_count > 3 {
        let v = loop {
            if qi >= queue.len() {
                return Err(Error::NotMaximal(
                    "no ear to peel; the graph is not a triangulated polygon".into(),
                ));
            }
            let v = queue[qi];
            qi += 1;
            if alive[v] && deg[v] == 2 {
                break v;
            }
        };
        let mut nb = g.neighbors(v).iter().copied().filter(|&u| alive[u]);
        let a = nb.next().ok_or_else(|| Error::NotMaximal("dangling ear".into()))?;
        let b = nb.next().ok_or_else(|| Error::NotMaximal("dangling ear".into()))?;
        if !g.has_edge(a, b) {
            return Err(Error::NotMaximal(format!(
                "degree-2 vertex {v} has non-adjacent neighbors {a},{b}"
            )));
        }
        let face = nodes.len();
        let mut tri = [v, a, b];
        tri.sort_unstable();
        nodes.push(tri);
        settle(face, norm(v, a), &mut open_face, &mut links);
        settle(face, norm(v, b), &mut open_face, &mut links);
        settle(face, norm(a, b), &mut open_face, &mut links);
        alive[v] = false;
        alive_count -= 1;
        for &x in &[a, b] {
            deg[x] -= 1;
            if deg[x] == 2 {
                queue.push(x);
            }
        }
    }
    // Base triangle.
    let base: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    if base.len() != 3
        || !(g.has_edge(base[0], base[1]) && g.has_edge(base[1], base[2]) && g.has_edge(base[0], base[2]))
    {
        return Err(Error::NotMaximal("peeling does not end at a triangle".into()));
    }
    let face = nodes.len();
    nodes.push([base[0], base[1], base[2]]);
    settle(face, norm(base[0], base[1]), &mut open_face, &mut links);
    settle(face, norm(base[1], base[2]), &mut open_face, &mut links);
    settle(face, norm(base[0], base[2]), &mut open_face, &mut links);

    debug_assert_eq!(nodes.len(), n - 2);
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); nodes.len()];
    for &(x, y) in &links {
        adj[x].push(y);
        adj[y].push(x);
    }
    for l in adj.iter_mut() {
        l.sort_unstable();
    }
    if adj.iter().any(|l| l.len() > 3) {
        return Err(Error::NotMaximal("a dual node has degree > 3".into()));
    }
    let mut face_of_edge: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (i, tri) in nodes.iter().enumerate() {
        for &(a, b) in &[(tri[0], tri[1]), (tri[1], tri[2]), (tri[0], tri[2])] {
            face_of_edge.entry((a, b)).or_default().push(i);
        }
    }
    Ok(DualTree {
        nodes,
        links,
        adj,
        face_of_edge,
    })
}

/// Adds edges to an outerplanar graph until it is maximal outerplanar
/// (triangulated polygon), preserving all existing edges and the embedding.
///
/// The input's embedding is used if attached, computed otherwise. Returns the
/// saturated graph with its outer order attached.
pub fn triangulate_any(g: &Graph) -> Result<Graph> {
    let mut h = g.clone();
    h.ensure_embedding()?;
    let order = h.outer_order().unwrap().to_vec();
    let n = h.n();
    if n < 3 {
        return Ok(h);
    }
    let report = validate_embedding(&h);
    if !report.is_outerplanar {
        return Err(Error::NotOuterplanar(report.violations.join("; ")));
    }
    // Work in position space: sides first, then triangulate region [0, n-1].
    let pos: Vec<usize> = {
        let mut p = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            p[v] = i;
        }
        p
    };
    for i in 0..n {
        h.add_edge(order[i], order[(i + 1) % n]);
    }
    // nbr_pos[p] = sorted positions adjacent to position p (kept updated).
    let mut nbr_pos: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(u, v) in h.edges() {
        nbr_pos[pos[u]].push(pos[v]);
        nbr_pos[pos[v]].push(pos[u]);
    }
    for l in nbr_pos.iter_mut() {
        l.sort_unstable();
    }
    // Regions as (i, j) position pairs with i < j and edge (i, j) present.
    let mut regions = vec![(0usize, n - 1)];
    while let Some((i, j)) = regions.pop() {
        if j - i <= 1 {
            continue;
        }
        // Largest existing neighbor of i strictly inside (i, j); the polygon
        // side guarantees at least i+1.
        let m = *nbr_pos[i]
            .iter()
            .filter(|&&t| t > i && t < j)
            .max()
            .expect("side i..i+1 exists");
        // Close the triangle (i, m, j); maximality of m over existing edges
        // guarantees the new chord (m, j) crosses nothing.
        if !nbr_pos[m].contains(&j) {
            h.add_edge(order[m], order[j]);
            nbr_pos[m].push(j);
            nbr_pos[j].push(m);
        }
        regions.push((i, m));
        regions.push((m, j));
    }
    debug_assert_eq!(h.m(), 2 * n - 3, "triangulation fills to 2n-3 edges");
    Ok(h)
}

/// Proper 3-colouring of an outerplanar graph with every class of size
/// ≤ ⌊n/2⌋ (cap vacuous at n = 1, where a single vertex must be coloured).
///
/// Saturates to maximal outerplanar, then unwinds the unique 3-colouring by
/// ear peeling.
pub fn three_color_capped(g: &Graph) -> Result<Coloring> {
    let n = g.n();
    let mut col = Coloring::new(n, 3);
    if n == 0 {
        return Ok(col);
    }
    if n == 1 {
        col.set(0, 1);
        return Ok(col);
    }
    if n == 2 {
        // The cap ⌊2/2⌋ = 1 forces distinct classes even without an edge.
        col.set(0, 1);
        col.set(1, 2);
        return Ok(col);
    }
    let h = triangulate_any(g)?;
    // Peel ears to a stack, then colour backwards.
    let mut deg: Vec<usize> = (0..n).map(|v| h.degree(v)).collect();
    let mut alive = vec![true; n];
    let mut alive_count = n;
    let mut stack: Vec<(usize, usize, usize)> = Vec::new();
    let mut queue: Vec<usize> = (0..n).filter(|&v| deg[v] == 2).collect();
    let mut qi = 0;
    while alive_count > 3 {
        let v = loop {
            if qi >= queue.len() {
                return Err(Error::internal("triangulated graph has no ear"));
            }
            let v = queue[qi];
            qi += 1;
            if alive[v] && deg[v] == 2 {
                break v;
            }
        };
        let mut nb = h.neighbors(v).iter().copied().filter(|&u| alive[u]);
        let (a, b) = (nb.next().unwrap(), nb.next().unwrap());
        stack.push((v, a, b));
        alive[v] = false;
        alive_count -= 1;
        for &x in &[a, b] {
            deg[x] -= 1;
            if deg[x] == 2 {
                queue.push(x);
            }
        }
    }
    let base: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    for (i, &v) in base.iter().enumerate() {
        col.set(v, i + 1);
    }
    for &(v, a, b) in stack.iter().rev() {
        let used = [col.get(a), col.get(b)];
        let c = (1..=3).find(|c| !used.contains(&Some(*c))).expect("a third colour is free");
        col.set(v, c);
    }
    // Contract checks on every call: proper on the input, ≤ 3 colours, cap.
    for &(u, v) in g.edges() {
        if col.get(u) == col.get(v) {
            return Err(Error::internal(format!(
                "capped 3-colouring is improper on edge ({u},{v})"
            )));
        }
    }
    let cap = n / 2;
    for c in 1..=3 {
        if n >= 2 && col.class_size(c) > cap {
            return Err(Error::internal(format!(
                "capped 3-colouring class {c} has {} > {cap} vertices",
                col.class_size(c)
            )));
        }
    }
    Ok(col)
}
