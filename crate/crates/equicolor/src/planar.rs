//! Equitable colouring of planar graphs with many colours.
//!
//! Three cooperating pieces. A balanced four-forest partition (every planar
//! graph has one) turns a low-degree planar graph into four forests that are
//! coloured separately, giving an equitable 4s-colouring whenever
//! 4sΔ(G) ≤ (s − 2)n. A witness search looks for two disjoint independent
//! sets of sizes ⌊n/s⌋ and ⌊(n + 1)/s⌋ that jointly cover the two vertices
//! of largest degree; such a pair is exactly the hypothesis the main routine
//! needs, and when none exists no equitable s-colouring exists around those
//! vertices. The main routine, at s ≥ 40 colours, assigns the witness sets
//! to the first two colours and then peels one independent class per colour,
//! each built around the current maximum-degree vertex, steering the third
//! and fourth classes around the dominant vertices through their common
//! neighbourhoods. As soon as the residue is sparse enough and the number
//! of remaining colours is divisible by four, the four-forest escape
//! finishes the colouring in one step; a counting argument keeps the loop
//! from ever reaching the last eleven colours.
//!
//! Inputs are declared planar rather than certified: the only cheap check
//! applied throughout is the edge bound m ≤ 3n − 6.

use crate::coloring::Coloring;
use crate::error::{Error, Result};
use crate::forest::equitable_color_forest;
use crate::graph::Graph;
use crate::oracle::{exhaustive_forest_partition_with, SearchBudget};
use crate::partition::ForestPartition;
use std::collections::VecDeque;

// ---------------------------------------------------------------------------
// Input sanity
// ---------------------------------------------------------------------------

/// The one cheap planarity certificate required of every input: at n ≥ 3
/// vertices a planar graph has at most 3n − 6 edges.
fn planar_edge_sanity(g: &Graph) -> Result<()> {
    let n = g.n();
    if n >= 3 && g.m() > 3 * n - 6 {
        return Err(Error::TooLarge(format!(
            "{} edges exceed the planar bound {} at {n} vertices",
            g.m(),
            3 * n - 6
        )));
    }
    Ok(())
}

/// Maximum degree of `g` (0 on the empty graph).
fn max_degree(g: &Graph) -> usize {
    (0..g.n()).map(|v| g.degree(v)).max().unwrap_or(0)
}

/// The two vertices of largest degree, ties broken towards lower indices.
pub fn witness_anchors(g: &Graph) -> Result<(usize, usize)> {
    let n = g.n();
    if n < 2 {
        return Err(Error::TooSmall(format!(
            "two anchor vertices need at least two vertices, got {n}"
        )));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_unstable_by(|&a, &b| g.degree(b).cmp(&g.degree(a)).then(a.cmp(&b)));
    Ok((order[0], order[1]))
}

// ---------------------------------------------------------------------------
// Balanced four-forest partitions
// ---------------------------------------------------------------------------

/// How [`forest_four_partition`] constructs its partition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ForestBackend {
    /// Complete branch-and-bound search (n ≤ 24); exhaustion is a proof
    /// that no balanced four-forest partition exists.
    Exhaustive,
    /// Greedy along the reverse peeling order with move/relay rebalancing;
    /// may give up with `Unsolved`, never returns an invalid partition.
    Heuristic,
}

/// Partitions a planar graph into four forests with part sizes pairwise
/// within one. Every planar graph admits such a partition, so with the
/// exhaustive backend a fruitless search is reported as an internal error:
/// the input cannot have been planar.
///
/// # Example
///
/// ```
/// use equicolor::Graph;
/// use equicolor::planar::{forest_four_partition, ForestBackend};
///
/// let k4 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
/// let fp = forest_four_partition(&k4, ForestBackend::Exhaustive).unwrap();
/// assert_eq!(fp.sizes(), vec![1, 1, 1, 1]);
/// ```
pub fn forest_four_partition(g: &Graph, backend: ForestBackend) -> Result<ForestPartition> {
    planar_edge_sanity(g)?;
    match backend {
        ForestBackend::Exhaustive => {
            let mut budget = SearchBudget::from_env();
            match exhaustive_forest_partition_with(g, 4, true, &mut budget)? {
                Some(fp) => Ok(fp),
                None => Err(Error::internal(
                    "no balanced four-forest partition exists, so the input cannot be planar",
                )),
            }
        }
        ForestBackend::Heuristic => heuristic_four_forests(g),
    }
}

/// Repeated minimum-degree peeling order (ties to the lowest vertex). In
/// the reverse of this order every vertex of a planar graph sees at most
/// five earlier neighbours.
fn degeneracy_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !removed[v])
            .min_by_key(|&v| (deg[v], v))
            .unwrap();
        removed[v] = true;
        order.push(v);
        for &u in g.neighbors(v) {
            if !removed[u] {
                deg[u] -= 1;
            }
        }
    }
    order
}

/// Would placing `v` into part `p` close a cycle? True iff two of `v`'s
/// neighbours already in `p` are connected within `p`.
fn closes_cycle(g: &Graph, part_of: &[usize], p: usize, v: usize) -> bool {
    let anchors: Vec<usize> = g
        .neighbors(v)
        .iter()
        .copied()
        .filter(|&u| part_of[u] == p)
        .collect();
    if anchors.len() <= 1 {
        return false;
    }
    let mut seen = vec![false; g.n()];
    for &start in &anchors {
        if seen[start] {
            // reached from an earlier anchor: two anchors share a component
            return true;
        }
        seen[start] = true;
        let mut q = VecDeque::from([start]);
        let mut hits = 1usize;
        while let Some(x) = q.pop_front() {
            for &u in g.neighbors(x) {
                if part_of[u] == p && !seen[u] {
                    seen[u] = true;
                    if anchors.contains(&u) {
                        hits += 1;
                    }
                    q.push_back(u);
                }
            }
        }
        if hits > 1 {
            return true;
        }
    }
    false
}

/// The lowest vertex of part `from` that can move to part `to` without
/// closing a cycle there.
fn movable_vertex(g: &Graph, part_of: &[usize], from: usize, to: usize) -> Option<usize> {
    (0..part_of.len()).find(|&v| part_of[v] == from && !closes_cycle(g, part_of, to, v))
}

/// Greedy four-forest partition plus rebalancing. Processing the reverse
/// peeling order leaves each vertex at most five placed neighbours, so some
/// part holds at most one of them and is always safe to join; rebalancing
/// moves vertices out of the largest part, relaying through an intermediate
/// part when no direct move exists.
fn heuristic_four_forests(g: &Graph) -> Result<ForestPartition> {
    let n = g.n();
    let order = degeneracy_order(g);
    let mut part_of = vec![usize::MAX; n];
    let mut sizes = [0usize; 4];
    for &v in order.iter().rev() {
        let mut choice = None;
        for p in 0..4 {
            if closes_cycle(g, &part_of, p, v) {
                continue;
            }
            match choice {
                None => choice = Some(p),
                Some(c) if sizes[p] < sizes[c] => choice = Some(p),
                _ => {}
            }
        }
        let Some(p) = choice else {
            return Err(Error::Unsolved(format!(
                "greedy found no cycle-free part for vertex {v}"
            )));
        };
        part_of[v] = p;
        sizes[p] += 1;
    }
    let mut rounds = 0usize;
    loop {
        let mut max_p = 0;
        let mut min_p = 0;
        for p in 1..4 {
            if sizes[p] > sizes[max_p] {
                max_p = p;
            }
            if sizes[p] < sizes[min_p] {
                min_p = p;
            }
        }
        if sizes[max_p] - sizes[min_p] <= 1 {
            break;
        }
        rounds += 1;
        if rounds > 4 * n + 16 {
            return Err(Error::Unsolved("four-forest rebalancing stalled".into()));
        }
        if let Some(v) = movable_vertex(g, &part_of, max_p, min_p) {
            part_of[v] = min_p;
            sizes[max_p] -= 1;
            sizes[min_p] += 1;
            continue;
        }
        let mut relayed = false;
        for mid in 0..4 {
            if mid == max_p || mid == min_p {
                continue;
            }
            if let Some(v) = movable_vertex(g, &part_of, max_p, mid) {
                part_of[v] = mid;
                if let Some(u) = movable_vertex(g, &part_of, mid, min_p) {
                    part_of[u] = min_p;
                    sizes[max_p] -= 1;
                    sizes[min_p] += 1;
                    relayed = true;
                    break;
                }
                part_of[v] = max_p;
            }
        }
        if !relayed {
            return Err(Error::Unsolved(format!(
                "four-forest rebalancing stuck at sizes {sizes:?}"
            )));
        }
    }
    let mut parts = vec![Vec::new(); 4];
    for v in 0..n {
        parts[part_of[v]].push(v);
    }
    ForestPartition::new(g, parts, vec![usize::MAX; n])
}

// ---------------------------------------------------------------------------
// The low-degree route: four forests, s colours each
// ---------------------------------------------------------------------------

/// Equitably colours a planar graph with 4s colours (s ≥ 3), provided its
/// maximum degree satisfies 4sΔ(G) ≤ (s − 2)n. The graph is split into
/// four balanced forests, each forest is equitably s-coloured on its own
/// palette, and the degree bound guarantees every forest satisfies the
/// forest colouring hypothesis. Graphs with at most 4s vertices are
/// rainbow-coloured directly.
///
/// # Errors
///
/// `TooSmall` for s < 3, `TooLarge` when the degree bound fails, and any
/// error of the chosen partition backend (exhaustive for n ≤ 24, greedy
/// beyond).
///
/// # Example
///
/// ```
/// use equicolor::Graph;
///
/// let c8 = Graph::from_edges(
///     8,
///     &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (0, 7)],
/// );
/// let col = equicolor::planar::equitable_color_planar_lowdeg(&c8, 3).unwrap();
/// assert_eq!(col.sorted_sizes(), vec![1, 1, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0]);
/// ```
pub fn equitable_color_planar_lowdeg(g: &Graph, s: usize) -> Result<Coloring> {
    if s < 3 {
        return Err(Error::TooSmall(format!(
            "each forest needs at least three colours, got {s}"
        )));
    }
    planar_edge_sanity(g)?;
    let n = g.n();
    let k = 4 * s;
    if n <= k {
        let mut col = Coloring::new(n, k);
        for v in 0..n {
            col.set(v, v + 1);
        }
        col.verify_equitable(g)?;
        return Ok(col);
    }
    let dmax = max_degree(g);
    if 4u128 * s as u128 * dmax as u128 > (s as u128 - 2) * n as u128 {
        return Err(Error::TooLarge(format!(
            "maximum degree {dmax} exceeds the four-forest bound for {n} vertices and 4·{s} colours"
        )));
    }
    let backend = if n <= 24 {
        ForestBackend::Exhaustive
    } else {
        ForestBackend::Heuristic
    };
    let fp = forest_four_partition(g, backend)?;
    let mut col = Coloring::new(n, k);
    for (i, part) in fp.parts().iter().enumerate() {
        let (sub, back) = g.induced(part);
        let sub_col = equitable_color_forest(&sub, s).map_err(|e| match e {
            Error::HypothesisViolated { vertex, alpha, need } => Error::internal(format!(
                "forest part {i} lost the colouring hypothesis at vertex {vertex} \
                 (α = {alpha}, need {need}) despite the degree bound"
            )),
            other => other,
        })?;
        for v in 0..sub.n() {
            let c = sub_col
                .get(v)
                .ok_or_else(|| Error::internal("incomplete forest colouring"))?;
            col.set(back[v], s * i + c);
        }
    }
    col.verify_equitable(g)?;
    Ok(col)
}

// ---------------------------------------------------------------------------
// Witness sets
// ---------------------------------------------------------------------------

/// Checks a claimed witness pair: sizes exactly ⌊n/s⌋ and ⌊(n + 1)/s⌋,
/// disjoint, each independent, and jointly covering the two largest-degree
/// vertices. Returns those anchors (w_0, w_1) on success.
pub fn validate_witnesses(
    g: &Graph,
    s: usize,
    i0: &[usize],
    i1: &[usize],
) -> Result<(usize, usize)> {
    if s == 0 {
        return Err(Error::TooSmall("witness sets need at least one colour".into()));
    }
    let (w0, w1) = witness_anchors(g)?;
    let n = g.n();
    let want0 = n / s;
    let want1 = (n + 1) / s;
    if i0.len() != want0 || i1.len() != want1 {
        return Err(Error::WitnessInvalid(format!(
            "witness sizes ({}, {}) differ from ({want0}, {want1})",
            i0.len(),
            i1.len()
        )));
    }
    let mut used = vec![false; n];
    for (label, set) in [("first", i0), ("second", i1)] {
        for &v in set {
            if v >= n {
                return Err(Error::WitnessInvalid(format!(
                    "the {label} witness set mentions vertex {v}, graph has {n}"
                )));
            }
            if used[v] {
                return Err(Error::WitnessInvalid(format!(
                    "vertex {v} appears twice across the witness sets"
                )));
            }
            used[v] = true;
        }
        for (i, &x) in set.iter().enumerate() {
            for &y in &set[i + 1..] {
                if g.has_edge(x, y) {
                    return Err(Error::WitnessInvalid(format!(
                        "the {label} witness set contains the edge {x}-{y}"
                    )));
                }
            }
        }
    }
    for w in [w0, w1] {
        if !used[w] {
            return Err(Error::WitnessInvalid(format!(
                "largest-degree vertex {w} is outside both witness sets"
            )));
        }
    }
    Ok((w0, w1))
}

/// Backtracking context for the witness search: two partial independent
/// sets with incremental neighbour-in-set counters.
struct WitnessSearch<'a> {
    g: &'a Graph,
    a: usize,
    b: usize,
    /// 0 = free, 1 = first set, 2 = second set.
    mem: Vec<u8>,
    /// Number of neighbours inside the first / second set.
    block0: Vec<u32>,
    block1: Vec<u32>,
    i0: Vec<usize>,
    i1: Vec<usize>,
}

impl WitnessSearch<'_> {
    fn candidates0(&self, from: usize) -> Vec<usize> {
        (from..self.g.n())
            .filter(|&v| self.mem[v] == 0 && self.block0[v] == 0)
            .collect()
    }

    fn candidates1(&self, from: usize) -> Vec<usize> {
        (from..self.g.n())
            .filter(|&v| self.mem[v] == 0 && self.block1[v] == 0)
            .collect()
    }

    fn extend0(&mut self, from: usize, budget: &mut SearchBudget) -> Result<bool> {
        budget.tick()?;
        if self.i0.len() == self.a {
            return self.extend1(0, budget);
        }
        let need = self.a - self.i0.len();
        let cands = self.candidates0(from);
        if cands.len() < need {
            return Ok(false);
        }
        for (idx, &v) in cands.iter().enumerate() {
            if cands.len() - idx < need {
                break;
            }
            self.mem[v] = 1;
            self.i0.push(v);
            for &u in self.g.neighbors(v) {
                self.block0[u] += 1;
            }
            if self.extend0(v + 1, budget)? {
                return Ok(true);
            }
            for &u in self.g.neighbors(v) {
                self.block0[u] -= 1;
            }
            self.i0.pop();
            self.mem[v] = 0;
        }
        Ok(false)
    }

    fn extend1(&mut self, from: usize, budget: &mut SearchBudget) -> Result<bool> {
        budget.tick()?;
        if self.i1.len() == self.b {
            return Ok(true);
        }
        let need = self.b - self.i1.len();
        let cands = self.candidates1(from);
        if cands.len() < need {
            return Ok(false);
        }
        for (idx, &v) in cands.iter().enumerate() {
            if cands.len() - idx < need {
                break;
            }
            self.mem[v] = 2;
            self.i1.push(v);
            for &u in self.g.neighbors(v) {
                self.block1[u] += 1;
            }
            if self.extend1(v + 1, budget)? {
                return Ok(true);
            }
            for &u in self.g.neighbors(v) {
                self.block1[u] -= 1;
            }
            self.i1.pop();
            self.mem[v] = 0;
        }
        Ok(false)
    }
}

/// One anchor placement: exhausts all completions of the two sets, smallest
/// vertices first.
fn witness_case(
    g: &Graph,
    a: usize,
    b: usize,
    anch0: &[usize],
    anch1: &[usize],
    budget: &mut SearchBudget,
) -> Result<Option<(Vec<usize>, Vec<usize>)>> {
    let n = g.n();
    let mut search = WitnessSearch {
        g,
        a,
        b,
        mem: vec![0u8; n],
        block0: vec![0u32; n],
        block1: vec![0u32; n],
        i0: anch0.to_vec(),
        i1: anch1.to_vec(),
    };
    for &v in anch0 {
        search.mem[v] = 1;
        for &u in g.neighbors(v) {
            search.block0[u] += 1;
        }
    }
    for &v in anch1 {
        search.mem[v] = 2;
        for &u in g.neighbors(v) {
            search.block1[u] += 1;
        }
    }
    // cheap feasibility bounds before any enumeration
    if search.candidates0(0).len() + anch0.len() < a
        || search.candidates1(0).len() + anch1.len() < b
    {
        return Ok(None);
    }
    if search.extend0(0, budget)? {
        let (mut i0, mut i1) = (search.i0, search.i1);
        i0.sort_unstable();
        i1.sort_unstable();
        Ok(Some((i0, i1)))
    } else {
        Ok(None)
    }
}

/// Searches for a witness pair: disjoint independent sets I_0, I_1 of sizes
/// ⌊n/s⌋ and ⌊(n + 1)/s⌋ with the two largest-degree vertices in I_0 ∪ I_1.
/// `Ok(None)` is a proof of exhaustion over all four anchor placements, so
/// no equitable s-colouring can place those two vertices either.
///
/// # Example
///
/// ```
/// use equicolor::Graph;
///
/// let g = Graph::from_edges(6, &[]);
/// let (i0, i1) = equicolor::planar::find_witness_sets(&g, 6).unwrap().unwrap();
/// assert_eq!((i0, i1), (vec![0], vec![1]));
/// ```
pub fn find_witness_sets(g: &Graph, s: usize) -> Result<Option<(Vec<usize>, Vec<usize>)>> {
    find_witness_sets_with(g, s, &mut SearchBudget::from_env())
}

/// [`find_witness_sets`] under an explicit search budget.
pub fn find_witness_sets_with(
    g: &Graph,
    s: usize,
    budget: &mut SearchBudget,
) -> Result<Option<(Vec<usize>, Vec<usize>)>> {
    if s == 0 {
        return Err(Error::TooSmall("witness sets need at least one colour".into()));
    }
    planar_edge_sanity(g)?;
    let (w0, w1) = witness_anchors(g)?;
    let n = g.n();
    let a = n / s;
    let b = (n + 1) / s;
    let adjacent = g.has_edge(w0, w1);
    let cases = [
        (vec![w0], vec![w1]),
        (vec![w1], vec![w0]),
        (vec![w0, w1], Vec::new()),
        (Vec::new(), vec![w0, w1]),
    ];
    for (anch0, anch1) in &cases {
        if anch0.len() > a || anch1.len() > b {
            continue;
        }
        if (anch0.len() == 2 || anch1.len() == 2) && adjacent {
            continue;
        }
        if let Some(pair) = witness_case(g, a, b, anch0, anch1, budget)? {
            return Ok(Some(pair));
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------------------
// Independent-set engine for the peeling loop
// ---------------------------------------------------------------------------

/// Greedy maximal independent set along the peeling order, as a membership
/// vector.
fn greedy_is(sub: &Graph) -> Vec<bool> {
    let order = degeneracy_order(sub);
    let mut sel = vec![false; sub.n()];
    let mut blocked = vec![false; sub.n()];
    for &v in &order {
        if blocked[v] {
            continue;
        }
        sel[v] = true;
        blocked[v] = true;
        for &u in sub.neighbors(v) {
            blocked[u] = true;
        }
    }
    sel
}

/// Grows an independent set in place: maximalize, then repeatedly replace
/// one member by two outsiders that only it was blocking, until `target`
/// is reached or no such swap applies.
fn improve_is(sub: &Graph, sel: &mut [bool], target: usize) {
    let n = sub.n();
    loop {
        let mut cnt = vec![0u32; n];
        for v in 0..n {
            if sel[v] {
                for &u in sub.neighbors(v) {
                    cnt[u] += 1;
                }
            }
        }
        let mut size = sel.iter().filter(|&&x| x).count();
        for v in 0..n {
            if !sel[v] && cnt[v] == 0 {
                sel[v] = true;
                size += 1;
                for &u in sub.neighbors(v) {
                    cnt[u] += 1;
                }
            }
        }
        if size >= target {
            return;
        }
        // the unique selected blocker of each just-blocked outsider
        let mut owner = vec![usize::MAX; n];
        for v in 0..n {
            if !sel[v] && cnt[v] == 1 {
                owner[v] = sub
                    .neighbors(v)
                    .iter()
                    .copied()
                    .find(|&u| sel[u])
                    .unwrap();
            }
        }
        let mut swapped = false;
        'outer: for u in 0..n {
            if !sel[u] {
                continue;
            }
            let exclusive: Vec<usize> = (0..n).filter(|&v| owner[v] == u).collect();
            for (i, &x) in exclusive.iter().enumerate() {
                for &y in &exclusive[i + 1..] {
                    if !sub.has_edge(x, y) {
                        sel[u] = false;
                        sel[x] = true;
                        sel[y] = true;
                        swapped = true;
                        break 'outer;
                    }
                }
            }
        }
        if !swapped {
            return;
        }
    }
}

/// Complete search for an independent set of exactly `need` vertices;
/// only invoked on small graphs.
fn exact_is(sub: &Graph, need: usize) -> Option<Vec<usize>> {
    fn rec(
        sub: &Graph,
        from: usize,
        need: usize,
        blocked: &mut [u32],
        out: &mut Vec<usize>,
    ) -> bool {
        if need == 0 {
            return true;
        }
        let cands: Vec<usize> = (from..sub.n()).filter(|&v| blocked[v] == 0).collect();
        if cands.len() < need {
            return false;
        }
        for (i, &v) in cands.iter().enumerate() {
            if cands.len() - i < need {
                return false;
            }
            out.push(v);
            for &u in sub.neighbors(v) {
                blocked[u] += 1;
            }
            if rec(sub, v + 1, need - 1, blocked, out) {
                return true;
            }
            for &u in sub.neighbors(v) {
                blocked[u] -= 1;
            }
            out.pop();
        }
        false
    }
    let mut blocked = vec![0u32; sub.n()];
    let mut out = Vec::new();
    rec(sub, 0, need, &mut blocked, &mut out).then_some(out)
}

/// Builds an independent class of exactly `size` vertices: the anchor `w`
/// plus `size − 1` vertices of `pool` (already independent of `w`), found
/// greedily with a swap-improvement pass and, on small pools, a complete
/// fallback search. Returns the class sorted, together with the pre-trim
/// candidate count for telemetry.
fn anchored_peel_set(g: &Graph, w: usize, pool: &[usize], size: usize) -> Result<(Vec<usize>, usize)> {
    debug_assert!(size >= 1);
    let need = size - 1;
    if need == 0 {
        return Ok((vec![w], 1));
    }
    let (sub, back) = g.induced(pool);
    let mut sel = greedy_is(&sub);
    improve_is(&sub, &mut sel, need);
    let mut found = sel.iter().filter(|&&x| x).count();
    if found < need && sub.n() <= 30 {
        if let Some(exact) = exact_is(&sub, need) {
            sel = vec![false; sub.n()];
            for v in exact {
                sel[v] = true;
            }
            found = need;
        }
    }
    if found < need {
        return Err(Error::Unsolved(format!(
            "independent-set search around vertex {w} reached {} of {size} vertices",
            found + 1
        )));
    }
    let candidate = found + 1;
    let mut class: Vec<usize> = (0..sub.n())
        .filter(|&v| sel[v])
        .take(need)
        .map(|v| back[v])
        .collect();
    class.push(w);
    class.sort_unstable();
    Ok((class, candidate))
}

/// The still-uncoloured non-neighbours of `w`, ascending.
fn open_pool(g: &Graph, alive: &[bool], w: usize) -> Vec<usize> {
    let mut excl = vec![false; g.n()];
    excl[w] = true;
    for &u in g.neighbors(w) {
        excl[u] = true;
    }
    (0..g.n()).filter(|&v| alive[v] && !excl[v]).collect()
}

/// Candidate pool for the third class. While the residue is balanced
/// (Δ(G_2) ≤ 2n/3) any non-neighbour of w_2 will do; otherwise the class
/// is drawn from the common neighbourhood of the first two anchors, where
/// w_2 has few neighbours of its own.
fn pool_step_two(g: &Graph, alive: &[bool], w0: usize, w1: usize, w2: usize) -> Vec<usize> {
    let n = g.n();
    let d2 = g.neighbors(w2).iter().filter(|&&u| alive[u]).count();
    if 3 * d2 <= 2 * n {
        return open_pool(g, alive, w2);
    }
    let mut common = vec![0u8; n];
    for &u in g.neighbors(w0) {
        common[u] |= 1;
    }
    for &u in g.neighbors(w1) {
        common[u] |= 2;
    }
    let mut excl = vec![false; n];
    excl[w2] = true;
    for &u in g.neighbors(w2) {
        excl[u] = true;
    }
    (0..n)
        .filter(|&v| alive[v] && common[v] == 3 && !excl[v])
        .collect()
}

/// Candidate pool for the fourth class: as [`pool_step_two`], but against
/// the threshold Δ(G_3) ≤ n/2 and drawing, in the unbalanced case, on the
/// pair of earlier anchors with the largest common neighbourhood.
fn pool_step_three(g: &Graph, alive: &[bool], ws: &[usize], w3: usize) -> Vec<usize> {
    let n = g.n();
    let d3 = g.neighbors(w3).iter().filter(|&&u| alive[u]).count();
    if 2 * d3 <= n {
        return open_pool(g, alive, w3);
    }
    let mut marks = vec![0u8; n];
    let mut best = (ws[0], ws[1]);
    let mut best_count = 0usize;
    for (i, &x) in ws.iter().enumerate() {
        for &y in &ws[i + 1..] {
            for m in marks.iter_mut() {
                *m = 0;
            }
            for &u in g.neighbors(x) {
                marks[u] |= 1;
            }
            for &u in g.neighbors(y) {
                marks[u] |= 2;
            }
            let count = marks.iter().filter(|&&m| m == 3).count();
            if count > best_count {
                best_count = count;
                best = (x, y);
            }
        }
    }
    let (x, y) = best;
    let mut common = vec![0u8; n];
    for &u in g.neighbors(x) {
        common[u] |= 1;
    }
    for &u in g.neighbors(y) {
        common[u] |= 2;
    }
    let mut excl = vec![false; n];
    excl[w3] = true;
    for &u in g.neighbors(w3) {
        excl[u] = true;
    }
    (0..n)
        .filter(|&v| alive[v] && common[v] == 3 && !excl[v])
        .collect()
}

// ---------------------------------------------------------------------------
// The peeling loop
// ---------------------------------------------------------------------------

/// Trace of the peeling loop: the step index, the current residue graph,
/// every peeled class, and telemetry.
#[derive(Debug, Clone)]
pub struct PlanarLoopState {
    /// Total number of colours.
    pub s: usize,
    /// Order of the input graph.
    pub n0: usize,
    /// Step index: classes I_0 … I_{j−1} have been peeled.
    pub j: usize,
    /// The residue graph G_j.
    pub current: Graph,
    /// current\[v\] corresponds to input vertex current_vertices\[v\].
    pub current_vertices: Vec<usize>,
    /// The peeled classes I_0 … I_{j−1}, ascending input-vertex lists.
    pub peeled: Vec<Vec<usize>>,
    /// Maximum-degree vertex of G_j (input id, ties to the lowest id).
    pub max_degree_vertex: Option<usize>,
    /// Times a peeled candidate set fell short of the α-style lower bound
    /// 1 + ⌈(n_j − Δ_j − 1)/4⌉ before trimming. Soft telemetry: actual
    /// quota shortfalls error out instead.
    pub monitor_misses: u64,
    /// The step at which the four-forest escape finished the colouring.
    pub escape_j: Option<usize>,
}

impl PlanarLoopState {
    /// Order of the current residue graph.
    pub fn n_j(&self) -> usize {
        self.current.n()
    }

    /// Size ⌊(n + j)/s⌋ of the class peeled at the current step.
    pub fn quota(&self) -> usize {
        (self.n0 + self.j) / self.s
    }

    /// Position within the window of the last forty colours, once at most
    /// forty colours remain.
    pub fn tail_index(&self) -> Option<usize> {
        (self.j + 40 >= self.s).then(|| self.j + 40 - self.s)
    }

    /// The loop's running degree bound: Δ(G_j) ≤ 2n_j/3 for 4 ≤ j ≤ s − 12
    /// (vacuously true outside that range).
    pub fn invariant_ok(&self) -> bool {
        if self.j < 4 || self.j + 12 > self.s {
            return true;
        }
        3 * max_degree(&self.current) <= 2 * self.current.n()
    }

    /// Structural re-check against the input graph: peeled classes have
    /// sizes ⌊(n + i)/s⌋, are pairwise disjoint and independent, and
    /// together with the residue cover every vertex exactly once.
    pub fn verify(&self, g: &Graph) -> Result<()> {
        let n = self.n0;
        if g.n() != n {
            return Err(Error::WitnessInvalid(format!(
                "state was built for {n} vertices, graph has {}",
                g.n()
            )));
        }
        let mut seen = vec![false; n];
        for (i, class) in self.peeled.iter().enumerate() {
            let want = (n + i) / self.s;
            if class.len() != want {
                return Err(Error::WitnessInvalid(format!(
                    "class {i} holds {} vertices, expected {want}",
                    class.len()
                )));
            }
            for &v in class {
                if v >= n {
                    return Err(Error::WitnessInvalid(format!("vertex {v} out of range")));
                }
                if seen[v] {
                    return Err(Error::WitnessInvalid(format!(
                        "vertex {v} appears in two classes"
                    )));
                }
                seen[v] = true;
            }
            for (ai, &x) in class.iter().enumerate() {
                for &y in &class[ai + 1..] {
                    if g.has_edge(x, y) {
                        return Err(Error::WitnessInvalid(format!(
                            "class {i} contains the edge {x}-{y}"
                        )));
                    }
                }
            }
        }
        for &v in &self.current_vertices {
            if v >= n || seen[v] {
                return Err(Error::WitnessInvalid(format!(
                    "residue vertex {v} is out of range or already peeled"
                )));
            }
            seen[v] = true;
        }
        if let Some(v) = (0..n).find(|&v| !seen[v]) {
            return Err(Error::WitnessInvalid(format!(
                "vertex {v} is neither peeled nor in the residue"
            )));
        }
        Ok(())
    }
}

/// Equitably colours a declared-planar graph with s ≥ 40 colours, given a
/// witness pair as produced by [`find_witness_sets`]. See
/// [`equitable_color_planar_traced`] for the returned trace.
///
/// # Example
///
/// ```
/// use equicolor::Graph;
///
/// let edges: Vec<(usize, usize)> = (0..39).map(|v| (v, v + 1)).collect();
/// let p40 = Graph::from_edges(40, &edges);
/// let col = equicolor::planar::equitable_color_planar(&p40, 40, &[1], &[2]).unwrap();
/// assert!(col.sorted_sizes().iter().all(|&k| k <= 1));
/// ```
pub fn equitable_color_planar(g: &Graph, s: usize, i0: &[usize], i1: &[usize]) -> Result<Coloring> {
    equitable_color_planar_traced(g, s, i0, i1).map(|(col, _)| col)
}

/// The full peeling pipeline with its trace. The witness sets take colours
/// 1 and 2; each further step peels an independent class of size
/// ⌊(n + j)/s⌋ around the residue's maximum-degree vertex, drawing the
/// third and fourth classes from guarded pools when a dominant vertex
/// remains. When the number of remaining colours is divisible by four and
/// the residue satisfies the four-forest degree bound, the rest of the
/// colouring is produced in one step; residues with at most one vertex per
/// remaining colour are rainbow-finished directly.
///
/// # Errors
///
/// `TooSmall` for s < 40, `TooLarge` when the edge bound m ≤ 3n − 6 fails,
/// `WitnessInvalid` for a bad witness pair, `Unsolved` when a class cannot
/// be filled, and `InternalAssertionFailed` when a proven invariant breaks
/// (which would refute the input's planarity).
pub fn equitable_color_planar_traced(
    g: &Graph,
    s: usize,
    i0: &[usize],
    i1: &[usize],
) -> Result<(Coloring, PlanarLoopState)> {
    if s < 40 {
        return Err(Error::TooSmall(format!(
            "the peeling pipeline needs at least 40 colours, got {s}"
        )));
    }
    planar_edge_sanity(g)?;
    let (w0, w1) = validate_witnesses(g, s, i0, i1)?;
    let n = g.n();
    let mut col = Coloring::new(n, s);
    let mut alive = vec![true; n];
    let mut first = i0.to_vec();
    let mut second = i1.to_vec();
    first.sort_unstable();
    second.sort_unstable();
    for &v in &first {
        col.set(v, 1);
        alive[v] = false;
    }
    for &v in &second {
        col.set(v, 2);
        alive[v] = false;
    }
    let mut ws = vec![w0, w1];
    let mut state = PlanarLoopState {
        s,
        n0: n,
        j: 2,
        current: Graph::new(0),
        current_vertices: Vec::new(),
        peeled: vec![first, second],
        max_degree_vertex: None,
        monitor_misses: 0,
        escape_j: None,
    };
    for j in 2.. {
        let keep: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
        let (current, back) = g.induced(&keep);
        let nj = current.n();
        let (w_local, dmax) = (0..nj)
            .map(|v| (v, current.degree(v)))
            .max_by(|x, y| x.1.cmp(&y.1).then(y.0.cmp(&x.0)))
            .unwrap_or((0, 0));
        state.j = j;
        state.current = current;
        state.current_vertices = back;
        state.max_degree_vertex = (nj > 0).then(|| state.current_vertices[w_local]);
        if nj == 0 {
            if (n + j) / s > 0 {
                return Err(Error::internal(
                    "the graph ran out of vertices before the colour quotas did",
                ));
            }
            break;
        }
        if n <= s {
            // every remaining class has size at most one: rainbow-finish
            // the residue on the top colours
            if nj + j > s {
                return Err(Error::internal(format!(
                    "a residue of {nj} vertices cannot fit the {} remaining colours",
                    s - j
                )));
            }
            for (idx, &v) in state.current_vertices.iter().enumerate() {
                col.set(v, s - nj + idx + 1);
            }
            break;
        }
        if j + 12 > s {
            return Err(Error::internal(format!(
                "the peeling loop passed step {} without reaching the four-forest escape",
                s - 12
            )));
        }
        let s_rem = s - j;
        if s_rem % 4 == 0 {
            let s4 = s_rem / 4;
            debug_assert!(s4 >= 3);
            if 4u128 * s4 as u128 * dmax as u128 <= (s4 as u128 - 2) * nj as u128 {
                let sub_col = equitable_color_planar_lowdeg(&state.current, s4)?;
                for v in 0..nj {
                    let c = sub_col
                        .get(v)
                        .ok_or_else(|| Error::internal("incomplete escape colouring"))?;
                    col.set(state.current_vertices[v], j + c);
                }
                state.escape_j = Some(j);
                break;
            }
        }
        let w = state.max_degree_vertex.unwrap();
        if j >= 4 && 3 * dmax > 2 * nj {
            return Err(Error::internal(format!(
                "maximum degree {dmax} of the step-{j} residue breaks the two-thirds bound at order {nj}"
            )));
        }
        let quota = (n + j) / s;
        let pool = match j {
            2 => pool_step_two(g, &alive, ws[0], ws[1], w),
            3 => pool_step_three(g, &alive, &ws, w),
            _ => open_pool(g, &alive, w),
        };
        let (class, candidate) = anchored_peel_set(g, w, &pool, quota)?;
        let bound = 1 + (nj - dmax - 1).div_ceil(4);
        if candidate < bound {
            state.monitor_misses += 1;
        }
        for &v in &class {
            col.set(v, j + 1);
            alive[v] = false;
        }
        state.peeled.push(class);
        ws.push(w);
    }
    col.verify_equitable(g)?;
    Ok((col, state))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{planar_gadget, random_maximal_planar, random_planar_minus_matching};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn path(n: usize) -> Graph {
        let edges: Vec<(usize, usize)> = (0..n - 1).map(|v| (v, v + 1)).collect();
        Graph::from_edges(n, &edges)
    }

    fn cycle(n: usize) -> Graph {
        let mut edges: Vec<(usize, usize)> = (0..n - 1).map(|v| (v, v + 1)).collect();
        edges.push((n - 1, 0));
        Graph::from_edges(n, &edges)
    }

    fn grid(rows: usize, cols: usize) -> Graph {
        let mut edges = Vec::new();
        for r in 0..rows {
            for c in 0..cols {
                let v = r * cols + c;
                if c + 1 < cols {
                    edges.push((v, v + 1));
                }
                if r + 1 < rows {
                    edges.push((v, v + cols));
                }
            }
        }
        Graph::from_edges(rows * cols, &edges)
    }

    fn wheel(n: usize) -> Graph {
        let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (0, v)).collect();
        for v in 1..n - 1 {
            edges.push((v, v + 1));
        }
        edges.push((n - 1, 1));
        Graph::from_edges(n, &edges)
    }

    fn octahedron() -> Graph {
        let mut edges = Vec::new();
        for u in 0..6 {
            for v in (u + 1)..6 {
                if v != u + 3 {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_edges(6, &edges)
    }

    /// Two isolated vertices next to a four-cycle.
    fn two_k1_c4() -> Graph {
        Graph::from_edges(6, &[(2, 3), (3, 4), (4, 5), (2, 5)])
    }

    /// Three mutually adjacent apexes over 87 leaves, wired so that the
    /// first two apexes are peeled as witnesses, the third keeps degree
    /// 61 > 2·90/3 in the residue, and its class must come from the common
    /// neighbourhood of the first two.
    fn triple_apex_90() -> Graph {
        let mut edges = vec![(0, 1), (0, 2), (1, 2)];
        let leaf = |l: usize| 3 + l;
        for l in 0..=60 {
            edges.push((0, leaf(l)));
        }
        for l in 22..=82 {
            edges.push((1, leaf(l)));
        }
        for l in 23..=84 {
            if l != 61 {
                edges.push((2, leaf(l)));
            }
        }
        Graph::from_edges(90, &edges)
    }

    /// Four mutually adjacent apexes over 96 leaves: the fourth keeps
    /// degree 51 > 100/2 at step three, forcing the best-pair pool, which
    /// is exactly the four leaves shared by the second and third apexes
    /// but missed by the fourth.
    fn quad_apex_100() -> Graph {
        let mut edges = vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        let leaf = |l: usize| 4 + l;
        for l in 0..=59 {
            edges.push((0, leaf(l)));
        }
        for l in 36..=95 {
            edges.push((1, leaf(l)));
        }
        for l in 20..=79 {
            edges.push((2, leaf(l)));
        }
        for l in 40..=91 {
            edges.push((3, leaf(l)));
        }
        Graph::from_edges(100, &edges)
    }

    /// Two degree-3 hubs plus an odd 31-cycle: witness completion for two
    /// colours is a large, fruitless search, ideal for budget tests.
    fn budget_fixture() -> Graph {
        let mut edges = vec![(0, 2), (0, 3), (0, 4), (1, 5), (1, 6), (1, 7)];
        for v in 8..38 {
            edges.push((v, v + 1));
        }
        edges.push((38, 8));
        Graph::from_edges(39, &edges)
    }

    // ---------------------------------------------------------------- anchors

    #[test]
    fn anchors_prefer_degree_then_index() {
        let (w0, w1) = witness_anchors(&wheel(8)).unwrap();
        assert_eq!((w0, w1), (0, 1));
        let (w0, w1) = witness_anchors(&path(2)).unwrap();
        assert_eq!((w0, w1), (0, 1));
        assert!(matches!(
            witness_anchors(&Graph::new(1)),
            Err(Error::TooSmall(_))
        ));
    }

    // ------------------------------------------------------- forest partition

    #[test]
    fn partitions_k4_into_singletons() {
        let k4 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        let fp = forest_four_partition(&k4, ForestBackend::Exhaustive).unwrap();
        assert_eq!(fp.sizes(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn partitions_octahedron_balanced() {
        let fp = forest_four_partition(&octahedron(), ForestBackend::Exhaustive).unwrap();
        let mut sizes = fp.sizes();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        assert_eq!(sizes, vec![2, 2, 1, 1]);
        assert!(fp.is_balanced());
    }

    #[test]
    fn partitions_random_triangulation_exhaustively() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let g = random_maximal_planar(20, &mut rng);
        let fp = forest_four_partition(&g, ForestBackend::Exhaustive).unwrap();
        assert!(fp.is_balanced());
        assert_eq!(fp.k(), 4);
    }

    #[test]
    fn partitions_large_triangulation_heuristically() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let g = random_maximal_planar(200, &mut rng);
        let fp = forest_four_partition(&g, ForestBackend::Heuristic).unwrap();
        assert!(fp.is_balanced());
        assert_eq!(fp.sizes().iter().sum::<usize>(), 200);
    }

    #[test]
    fn heuristic_handles_small_graphs_too() {
        let fp = forest_four_partition(&octahedron(), ForestBackend::Heuristic).unwrap();
        assert!(fp.is_balanced());
        let fp = forest_four_partition(&wheel(50), ForestBackend::Heuristic).unwrap();
        assert!(fp.is_balanced());
    }

    #[test]
    fn rejects_overfull_edge_counts() {
        let k5 = Graph::from_edges(
            5,
            &[
                (0, 1),
                (0, 2),
                (0, 3),
                (0, 4),
                (1, 2),
                (1, 3),
                (1, 4),
                (2, 3),
                (2, 4),
                (3, 4),
            ],
        );
        assert!(matches!(
            forest_four_partition(&k5, ForestBackend::Exhaustive),
            Err(Error::TooLarge(_))
        ));
        assert!(matches!(
            equitable_color_planar_lowdeg(&k5, 3),
            Err(Error::TooLarge(_))
        ));
        assert!(matches!(find_witness_sets(&k5, 2), Err(Error::TooLarge(_))));
    }

    #[test]
    fn reports_partition_exhaustion_as_internal() {
        // K_9 with eight padding vertices fits the edge bound, but every
        // balanced four-part split puts three clique vertices together.
        let mut edges = Vec::new();
        for u in 0..9 {
            for v in (u + 1)..9 {
                edges.push((u, v));
            }
        }
        let g = Graph::from_edges(17, &edges);
        assert!(matches!(
            forest_four_partition(&g, ForestBackend::Exhaustive),
            Err(Error::InternalAssertionFailed(_))
        ));
    }

    // ------------------------------------------------------- low-degree route

    #[test]
    fn lowdeg_rainbows_small_graphs() {
        let col = equitable_color_planar_lowdeg(&cycle(8), 3).unwrap();
        assert_eq!(col.sorted_sizes(), vec![1, 1, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0]);
        let col = equitable_color_planar_lowdeg(&grid(5, 5), 10).unwrap();
        assert!(col.sorted_sizes().iter().all(|&k| k <= 1));
    }

    #[test]
    fn lowdeg_partitions_grid_at_ten_colours_each() {
        let g = grid(7, 7);
        let col = equitable_color_planar_lowdeg(&g, 10).unwrap();
        let mut want = vec![2; 9];
        want.extend(vec![1; 31]);
        assert_eq!(col.sorted_sizes(), want);
    }

    #[test]
    fn lowdeg_partitions_grid_at_three_colours_each() {
        let g = grid(7, 7);
        let col = equitable_color_planar_lowdeg(&g, 3).unwrap();
        let mut want = vec![5];
        want.extend(vec![4; 11]);
        assert_eq!(col.sorted_sizes(), want);
    }

    #[test]
    fn lowdeg_rejects_high_degree_and_few_colours() {
        let star = Graph::from_edges(14, &(1..14).map(|v| (0, v)).collect::<Vec<_>>());
        assert!(matches!(
            equitable_color_planar_lowdeg(&star, 3),
            Err(Error::TooLarge(_))
        ));
        assert!(matches!(
            equitable_color_planar_lowdeg(&star, 2),
            Err(Error::TooSmall(_))
        ));
    }

    // ----------------------------------------------------------- witness sets

    #[test]
    fn validates_witness_pairs() {
        let g = two_k1_c4();
        // anchors are the two lowest-index cycle vertices
        assert_eq!(validate_witnesses(&g, 3, &[0, 2], &[1, 3]).unwrap(), (2, 3));
        let wrong_size = validate_witnesses(&g, 3, &[0], &[1, 3]);
        assert!(matches!(wrong_size, Err(Error::WitnessInvalid(_))));
        let overlap = validate_witnesses(&g, 3, &[0, 2], &[0, 3]);
        assert!(matches!(overlap, Err(Error::WitnessInvalid(_))));
        let edge_inside = validate_witnesses(&g, 3, &[0, 2], &[3, 4]);
        assert!(matches!(edge_inside, Err(Error::WitnessInvalid(_))));
        let anchor_missing = validate_witnesses(&g, 3, &[0, 2], &[1, 5]);
        assert!(matches!(anchor_missing, Err(Error::WitnessInvalid(_))));
        let out_of_range = validate_witnesses(&g, 3, &[0, 6], &[1, 3]);
        assert!(matches!(out_of_range, Err(Error::WitnessInvalid(_))));
    }

    #[test]
    fn finds_witnesses_on_small_graphs() {
        let g = two_k1_c4();
        let (i0, i1) = find_witness_sets(&g, 3).unwrap().unwrap();
        let (w0, w1) = validate_witnesses(&g, 3, &i0, &i1).unwrap();
        assert_eq!((w0, w1), (2, 3));

        let empty = Graph::from_edges(6, &[]);
        let (i0, i1) = find_witness_sets(&empty, 6).unwrap().unwrap();
        assert_eq!((i0, i1), (vec![0], vec![1]));
    }

    #[test]
    fn proves_gadget_witnesses_impossible() {
        let (g, _) = planar_gadget(5);
        assert_eq!(find_witness_sets(&g, 5).unwrap(), None);
    }

    #[test]
    fn proves_wheel_witnesses_impossible() {
        // the hub neighbours everything, so no size-5 class can contain it
        assert_eq!(find_witness_sets(&wheel(200), 40).unwrap(), None);
    }

    #[test]
    fn witness_search_respects_budget() {
        let g = budget_fixture();
        let mut budget = SearchBudget::with_ms(0);
        let got = find_witness_sets_with(&g, 2, &mut budget);
        assert!(matches!(got, Err(Error::BudgetExceeded { .. })));
    }

    // ----------------------------------------------------------- peeling loop

    #[test]
    fn state_arithmetic_helpers() {
        let state = PlanarLoopState {
            s: 45,
            n0: 100,
            j: 3,
            current: Graph::new(0),
            current_vertices: Vec::new(),
            peeled: Vec::new(),
            max_degree_vertex: None,
            monitor_misses: 0,
            escape_j: None,
        };
        assert_eq!(state.quota(), 2);
        assert_eq!(state.tail_index(), None);
        let mut later = state.clone();
        later.j = 5;
        assert_eq!(later.tail_index(), Some(0));
        assert!(later.invariant_ok());
    }

    #[test]
    fn colors_path_forty_with_singleton_witnesses() {
        let g = path(40);
        let (i0, i1) = find_witness_sets(&g, 40).unwrap().unwrap();
        assert_eq!((i0.as_slice(), i1.as_slice()), (&[1usize][..], &[2usize][..]));
        let (col, state) = equitable_color_planar_traced(&g, 40, &i0, &i1).unwrap();
        assert!(col.sorted_sizes().iter().all(|&k| k <= 1));
        assert_eq!(col.get(1), Some(1));
        assert_eq!(col.get(2), Some(2));
        assert_eq!(col.get(0), Some(3));
        assert_eq!(state.j, 2);
        assert_eq!(state.escape_j, None);
        assert_eq!(state.tail_index(), Some(2));
        state.verify(&g).unwrap();
    }

    #[test]
    fn rejects_too_few_colours_and_bad_witnesses() {
        let g = path(40);
        assert!(matches!(
            equitable_color_planar(&g, 39, &[1], &[2]),
            Err(Error::TooSmall(_))
        ));
        assert!(matches!(
            equitable_color_planar(&g, 40, &[0], &[3]),
            Err(Error::WitnessInvalid(_))
        ));
    }

    #[test]
    fn steers_third_class_through_common_neighbourhood() {
        let g = triple_apex_90();
        let (col, state) = equitable_color_planar_traced(&g, 40, &[0, 64], &[1, 3]).unwrap();
        assert_eq!(
            state.peeled,
            vec![vec![0, 64], vec![1, 3], vec![2, 25], vec![4, 5]]
        );
        assert_eq!(state.escape_j, Some(4));
        assert_eq!(state.n_j(), 82);
        assert_eq!(state.monitor_misses, 1);
        assert_eq!(col.get(2), Some(3));
        assert_eq!(col.get(25), Some(3));
        state.verify(&g).unwrap();
    }

    #[test]
    fn steers_fourth_class_through_best_pair() {
        let g = quad_apex_100();
        let (col, state) = equitable_color_planar_traced(&g, 40, &[0, 64], &[1, 4]).unwrap();
        assert_eq!(
            state.peeled,
            vec![vec![0, 64], vec![1, 4], vec![2, 5], vec![3, 40]]
        );
        assert_eq!(state.escape_j, Some(4));
        assert_eq!(state.n_j(), 92);
        assert_eq!(state.monitor_misses, 1);
        assert_eq!(col.get(3), Some(4));
        assert_eq!(col.get(40), Some(4));
        state.verify(&g).unwrap();
    }

    #[test]
    fn end_to_end_on_random_planar_minus_matching() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let g = random_planar_minus_matching(150, &mut rng);
        let (i0, i1) = find_witness_sets(&g, 40).unwrap().unwrap();
        let (col, state) = equitable_color_planar_traced(&g, 40, &i0, &i1).unwrap();
        col.verify_equitable(&g).unwrap();
        state.verify(&g).unwrap();
        for (i, class) in state.peeled.iter().enumerate() {
            assert_eq!(class.len(), (150 + i) / 40);
        }
        assert!(state.escape_j.is_some());
    }

    #[test]
    fn finds_and_uses_witnesses_on_triangulations() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let g = random_maximal_planar(120, &mut rng);
        let (i0, i1) = find_witness_sets(&g, 41).unwrap().unwrap();
        let col = equitable_color_planar(&g, 41, &i0, &i1).unwrap();
        col.verify_equitable(&g).unwrap();
    }
}
