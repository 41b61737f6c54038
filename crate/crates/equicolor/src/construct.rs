//! Generators for the extremal families — stalactite chains, the planar join
//! gadget, extender chains, the d-degenerate gadget — plus seeded random
//! fixtures (outerplanar, planar, trees, grids) used by tests and benches.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::Graph;

/// What a generated family claims about itself; desk-scale parameters are
/// verified against the oracles in the test suite.
#[derive(Debug, Clone)]
pub struct ConstructionCertificate {
    pub family: &'static str,
    pub params: Vec<usize>,
    pub claimed_order: usize,
    pub claimed_max_degree: usize,
    /// Expected colour-class sizes of the unique/forced colouring, when the
    /// family forces one (sorted descending); `None` when the claim is pure
    /// infeasibility.
    pub claimed_class_profile: Option<Vec<usize>>,
    /// A colour count s for which the family admits no equitable s-colouring.
    pub claimed_infeasible_s: Option<usize>,
}

/// One stalactite: K_{1,4} with leaves x_1..x_4, edges x_i x_{i+1}, and a
/// pendant triangle vertex y_i over each x_i x_{i+1}.
///
/// Vertex layout within a block at `off`: centre c = off, x_j = off+j
/// (j = 1..4), y_j = off+4+j (j = 1..3).
fn add_stalactite_block(g: &mut Graph, off: usize) {
    let c = off;
    let x = |j: usize| off + j;
    let y = |j: usize| off + 4 + j;
    for j in 1..=4 {
        g.add_edge(c, x(j));
    }
    for j in 1..=3 {
        g.add_edge(x(j), x(j + 1));
        g.add_edge(y(j), x(j));
        g.add_edge(y(j), x(j + 1));
    }
}

/// The chained stalactite family: `i = 1` is a single stalactite (n = 8);
/// each later index splices two more stalactites onto the ends, giving
/// n = 8 + 20(i−1). Every member is maximal outerplanar with Δ = 5, its
/// unique 3-colouring has class sizes (n/2, n/4, n/4) — never equitable —
/// yet every vertex lies in an independent set of size ⌊n/3⌋.
///
/// # Example
///
/// ```
/// let (g, cert) = equicolor::construct::stalactite_chain(2);
/// assert_eq!(g.n(), 28);
/// assert_eq!(cert.claimed_class_profile, Some(vec![14, 7, 7]));
/// ```
pub fn stalactite_chain(i: usize) -> (Graph, ConstructionCertificate) {
    assert!(i >= 1, "chain index must be at least 1");
    let blocks = 2 * i - 1;
    let n = 10 * blocks - 2;
    let mut g = Graph::new(n);
    // Blocks left to right; between consecutive blocks a glue pair (v, w)
    // occupies the two indices after the left block.
    let base = |b: usize| b * 10;
    for b in 0..blocks {
        add_stalactite_block(&mut g, base(b));
    }
    for b in 0..blocks - 1 {
        let (v, w) = (base(b) + 8, base(b) + 9);
        let (lx4, ly3) = (base(b) + 4, base(b) + 7);
        let (rx1, ry1) = (base(b + 1) + 1, base(b + 1) + 5);
        g.add_edge(v, w);
        g.add_edge(v, lx4);
        g.add_edge(v, rx1);
        g.add_edge(w, lx4);
        g.add_edge(w, ly3);
        g.add_edge(w, rx1);
        g.add_edge(w, ry1);
    }
    // Outer cycle: along the top (x_1, c, x_4, v)*, then back along the
    // bottom (y_1, w, y_3, x_3, y_2, x_2 reversed)*.
    let mut order = Vec::with_capacity(n);
    for b in 0..blocks {
        order.extend([base(b) + 1, base(b), base(b) + 4]);
        if b + 1 < blocks {
            order.push(base(b) + 8); // v
        }
    }
    for b in (0..blocks).rev() {
        let o = base(b);
        order.extend([o + 7, o + 3, o + 6, o + 2, o + 5]);
        if b > 0 {
            order.push(base(b - 1) + 9); // w of the pair to the left
        }
    }
    g.set_outer_order(order).expect("stalactite outer cycle");
    let cert = ConstructionCertificate {
        family: "stalactite",
        params: vec![i],
        claimed_order: n,
        claimed_max_degree: 5,
        claimed_class_profile: Some(vec![n / 2, n / 4, n / 4]),
        claimed_infeasible_s: Some(3),
    };
    (g, cert)
}

/// The planar join gadget (K_2 ∨ P_{s²}) + sK_1 on n = s² + s + 2 vertices:
/// two hubs joined to an s²-path, plus s isolated vertices. Both hubs have
/// α_v = s + 1 = ⌊n/s⌋ and every other vertex has degree ≤ 4, yet the graph
/// has no equitable s-colouring (each hub would need all the isolated
/// vertices in its own class).
pub fn planar_gadget(s: usize) -> (Graph, ConstructionCertificate) {
    assert!(s >= 2, "gadget needs s >= 2");
    let path = s * s;
    let n = path + s + 2;
    let mut g = Graph::new(n);
    g.add_edge(0, 1);
    for p in 0..path {
        let v = 2 + p;
        g.add_edge(0, v);
        g.add_edge(1, v);
        if p + 1 < path {
            g.add_edge(v, v + 1);
        }
    }
    // Vertices path+2 .. n-1 stay isolated.
    let cert = ConstructionCertificate {
        family: "planar-gadget",
        params: vec![s],
        claimed_order: n,
        claimed_max_degree: path + 1,
        claimed_class_profile: None,
        claimed_infeasible_s: Some(s),
    };
    (g, cert)
}

/// An extender is K_2 ∨ 2K_2: root edge r_1 r_2 joined to two leaf edges.
/// Adds one at `root = (r1, r2)` (the root edge must already exist), creating
/// four fresh vertices; returns the two new leaf edges.
fn add_extender(g: &mut Graph, root: (usize, usize), next: &mut usize) -> [(usize, usize); 2] {
    let base = *next;
    *next += 4;
    let leaves = [(base, base + 1), (base + 2, base + 3)];
    for &(a, b) in &leaves {
        g.add_edge(a, b);
        for r in [root.0, root.1] {
            g.add_edge(r, a);
            g.add_edge(r, b);
        }
    }
    leaves
}

/// The planar extender chain: G_1 = K_2 ∨ 2K_2 (n = 6); each later index
/// takes the first unused leaf edge, roots a new extender on it, and roots
/// two further extenders on that extender's own leaf edges, adding 12
/// vertices. Every proper 4-colouring has two classes of size n/3 and two of
/// size n/6, so no member has an equitable 4-colouring.
pub fn extender_chain(i: usize) -> (Graph, ConstructionCertificate) {
    assert!(i >= 1, "chain index must be at least 1");
    let n = 6 + 12 * (i - 1);
    let mut g = Graph::new(n);
    let mut next = 2;
    g.add_edge(0, 1);
    let mut pool: Vec<(usize, usize)> = add_extender(&mut g, (0, 1), &mut next).into();
    let mut used = 0;
    for _ in 2..=i {
        let e = pool[used];
        used += 1;
        let mid = add_extender(&mut g, e, &mut next);
        for leaf in mid {
            let fresh = add_extender(&mut g, leaf, &mut next);
            pool.extend(fresh);
        }
    }
    debug_assert_eq!(next, n);
    let cert = ConstructionCertificate {
        family: "extender",
        params: vec![i],
        claimed_order: n,
        claimed_max_degree: if i == 1 { 5 } else { 7 },
        claimed_class_profile: Some(vec![n / 3, n / 3, n / 6, n / 6]),
        claimed_infeasible_s: Some(4),
    };
    (g, cert)
}

/// The d-degenerate gadget K_d ∨ (s² + 2s)K_1 + (ds + d²)K_1: a d-clique
/// joined to a large independent set, plus isolated vertices, on
/// n = d + s² + 2s + ds + d² vertices; it has no equitable s-colouring.
pub fn degenerate_gadget(d: usize, s: usize) -> (Graph, ConstructionCertificate) {
    assert!(d >= 1 && s >= d, "gadget needs 1 <= d <= s");
    let joined = s * s + 2 * s;
    let isolated = d * s + d * d;
    let n = d + joined + isolated;
    let mut g = Graph::new(n);
    for a in 0..d {
        for b in a + 1..d {
            g.add_edge(a, b);
        }
        for x in 0..joined {
            g.add_edge(a, d + x);
        }
    }
    let cert = ConstructionCertificate {
        family: "degenerate",
        params: vec![d, s],
        claimed_order: n,
        claimed_max_degree: d - 1 + joined,
        claimed_class_profile: None,
        claimed_infeasible_s: Some(s),
    };
    (g, cert)
}

// ---------------------------------------------------------------------------
// Seeded random fixtures (tests and benches; all deterministic under a seed).
// ---------------------------------------------------------------------------

/// A random triangulation of the convex n-gon (maximal outerplanar, n ≥ 3),
/// with outer order 0..n−1 attached: each boundary region picks a uniform
/// random apex.
pub fn random_maximal_outerplanar<R: Rng>(n: usize, rng: &mut R) -> Graph {
    assert!(n >= 3);
    let mut g = Graph::new(n);
    for v in 0..n {
        g.add_edge(v, (v + 1) % n);
    }
    let mut regions = vec![(0usize, n - 1)];
    while let Some((i, j)) = regions.pop() {
        if j - i <= 1 {
            continue;
        }
        let m = rng.gen_range(i + 1..j);
        if m > i + 1 {
            g.add_edge(i, m);
        }
        if j > m + 1 {
            g.add_edge(m, j);
        }
        regions.push((i, m));
        regions.push((m, j));
    }
    g.set_outer_order((0..n).collect()).expect("polygon order");
    g
}

/// A random outerplanar graph: a random triangulation with every edge kept
/// independently with probability `keep`; the polygon order stays valid, the
/// result may be disconnected.
pub fn random_outerplanar<R: Rng>(n: usize, keep: f64, rng: &mut R) -> Graph {
    let full = random_maximal_outerplanar(n, rng);
    let mut g = Graph::new(n);
    for &(u, v) in full.edges() {
        if rng.gen_bool(keep) {
            g.add_edge(u, v);
        }
    }
    g.set_outer_order((0..n).collect()).expect("polygon order");
    g
}

/// A random maximal outerplanar graph with two adjacent high-degree apexes
/// (degrees p + 2 and q + 2): the outer cycle w_1, a_1..a_p, w_2, b_1..b_q
/// where w_1 fans over the a-side and w_2 over the b-side.
pub fn double_fan(p: usize, q: usize) -> Graph {
    assert!(p >= 2 && q >= 2);
    let n = p + q + 2;
    let w1 = 0;
    let w2 = p + 1;
    let mut g = Graph::new(n);
    for v in 0..n {
        g.add_edge(v, (v + 1) % n);
    }
    for a in 2..=p {
        g.add_edge(w1, a);
    }
    for b in p + 3..p + q + 2 {
        g.add_edge(w2, b);
    }
    g.add_edge(w1, w2);
    g.set_outer_order((0..n).collect()).expect("polygon order");
    g
}

/// A uniform random labeled tree on n vertices (decoded from a uniform
/// random sequence by degree counting).
pub fn random_tree<R: Rng>(n: usize, rng: &mut R) -> Graph {
    let mut g = Graph::new(n);
    if n <= 1 {
        return g;
    }
    if n == 2 {
        g.add_edge(0, 1);
        return g;
    }
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &v in &seq {
        degree[v] += 1;
    }
    let mut leaves: std::collections::BinaryHeap<std::cmp::Reverse<usize>> = (0..n)
        .filter(|&v| degree[v] == 1)
        .map(std::cmp::Reverse)
        .collect();
    for &v in &seq {
        let std::cmp::Reverse(leaf) = leaves.pop().expect("leaf available");
        g.add_edge(leaf, v);
        degree[v] -= 1;
        if degree[v] == 1 {
            leaves.push(std::cmp::Reverse(v));
        }
    }
    let std::cmp::Reverse(a) = leaves.pop().unwrap();
    let std::cmp::Reverse(b) = leaves.pop().unwrap();
    g.add_edge(a, b);
    g
}

/// A random forest: a random tree with each edge kept with probability `keep`.
pub fn random_forest<R: Rng>(n: usize, keep: f64, rng: &mut R) -> Graph {
    let t = random_tree(n, rng);
    let mut g = Graph::new(n);
    for &(u, v) in t.edges() {
        if rng.gen_bool(keep) {
            g.add_edge(u, v);
        }
    }
    g
}

/// A random maximal planar graph (a stacked triangulation): start from a
/// triangle and repeatedly insert a vertex into a uniformly random face,
/// joining it to the face's three corners. Gives m = 3n − 6.
pub fn random_maximal_planar<R: Rng>(n: usize, rng: &mut R) -> Graph {
    assert!(n >= 3);
    let mut g = Graph::new(n);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(0, 2);
    let mut faces = vec![[0usize, 1, 2], [0, 1, 2]]; // inner and outer side
    for v in 3..n {
        let idx = rng.gen_range(0..faces.len());
        let [a, b, c] = faces.swap_remove(idx);
        for u in [a, b, c] {
            g.add_edge(v, u);
        }
        faces.push([a, b, v]);
        faces.push([a, c, v]);
        faces.push([b, c, v]);
    }
    g
}

/// A random planar fixture: a stacked triangulation minus a random matching
/// (each matched edge removed), keeping the graph planar and connected.
pub fn random_planar_minus_matching<R: Rng>(n: usize, rng: &mut R) -> Graph {
    let full = random_maximal_planar(n, rng);
    let mut edges: Vec<(usize, usize)> = full.edges().to_vec();
    edges.shuffle(rng);
    let mut matched = vec![false; n];
    let mut drop = std::collections::HashSet::new();
    for &(u, v) in &edges {
        // Keep low-degree vertices intact so the graph stays connected.
        if !matched[u] && !matched[v] && full.degree(u) >= 4 && full.degree(v) >= 4 {
            matched[u] = true;
            matched[v] = true;
            drop.insert((u, v));
        }
    }
    let mut g = Graph::new(n);
    for &(u, v) in full.edges() {
        if !drop.contains(&(u, v)) {
            g.add_edge(u, v);
        }
    }
    g
}

/// A random subgraph of the rows × cols grid (planar, Δ ≤ 4): each grid edge
/// kept with probability `keep`.
pub fn random_grid_subgraph<R: Rng>(rows: usize, cols: usize, keep: f64, rng: &mut R) -> Graph {
    let n = rows * cols;
    let id = |r: usize, c: usize| r * cols + c;
    let mut g = Graph::new(n);
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols && rng.gen_bool(keep) {
                g.add_edge(id(r, c), id(r, c + 1));
            }
            if r + 1 < rows && rng.gen_bool(keep) {
                g.add_edge(id(r, c), id(r + 1, c));
            }
        }
    }
    g
}
