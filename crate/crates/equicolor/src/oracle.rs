//! Ground-truth engines: exact α_v, exhaustive equitable-colouring search,
//! exhaustive forest equipartition, and canonical enumeration of maximal
//! outerplanar graphs and free trees. These are the referees for everything
//! the constructive pipelines produce.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use crate::coloring::{equitable_targets, Coloring};
use crate::error::{Error, Result};
use crate::graph::{triangulate_any, validate_embedding, weak_dual, Graph};
use crate::partition::ForestPartition;

/// Environment variable capping oracle wall-clock budgets (milliseconds).
pub const BUDGET_ENV_VAR: &str = "EQUICOLOR_BUDGET_MS";

/// Wall-clock budget for exhaustive searches, with an explored-node counter.
#[derive(Debug, Clone)]
pub struct SearchBudget {
    deadline: Option<Instant>,
    budget_ms: u64,
    pub explored: u64,
}

impl SearchBudget {
    pub fn unlimited() -> Self {
        SearchBudget {
            deadline: None,
            budget_ms: 0,
            explored: 0,
        }
    }

    pub fn with_ms(ms: u64) -> Self {
        SearchBudget {
            deadline: Some(Instant::now() + Duration::from_millis(ms)),
            budget_ms: ms,
            explored: 0,
        }
    }

    /// Budget from `EQUICOLOR_BUDGET_MS`, unlimited when unset or unparsable.
    pub fn from_env() -> Self {
        match std::env::var(BUDGET_ENV_VAR).ok().and_then(|v| v.parse::<u64>().ok()) {
            Some(ms) => SearchBudget::with_ms(ms),
            None => SearchBudget::unlimited(),
        }
    }

    /// Counts one explored node; checks the clock every 1024 nodes.
    pub(crate) fn tick(&mut self) -> Result<()> {
        self.explored += 1;
        if self.explored % 1024 == 0 {
            if let Some(deadline) = self.deadline {
                if Instant::now() > deadline {
                    return Err(Error::BudgetExceeded {
                        budget_ms: self.budget_ms,
                        explored: self.explored,
                    });
                }
            }
        }
        Ok(())
    }
}

/// A maximum independent set through a prescribed vertex.
#[derive(Debug, Clone)]
pub struct AlphaWitness {
    pub vertex: usize,
    pub size: usize,
    /// Independent in the graph; contains `vertex`; no larger independent set
    /// through `vertex` exists.
    pub witness: Vec<usize>,
}

impl AlphaWitness {
    /// Checks independence, membership, and size consistency (maximality is
    /// the producer's contract).
    pub fn verify(&self, g: &Graph) -> Result<()> {
        if !self.witness.contains(&self.vertex) {
            return Err(Error::WitnessInvalid(format!(
                "witness omits its own vertex {}",
                self.vertex
            )));
        }
        if self.witness.len() != self.size {
            return Err(Error::WitnessInvalid("witness size mismatch".into()));
        }
        for (i, &u) in self.witness.iter().enumerate() {
            for &w in &self.witness[i + 1..] {
                if g.has_edge(u, w) {
                    return Err(Error::WitnessInvalid(format!(
                        "witness contains adjacent vertices {u} and {w}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Exact α_v: the size (with witness) of a largest independent set containing
/// `v`. Outerplanar graphs use dynamic programming over the width-2 tree
/// decomposition given by the saturated supergraph's dual tree (bags from the
/// supergraph's triangles, independence constraints from the original edges);
/// other graphs fall back to branch-and-bound for n ≤ 24.
pub fn alpha_v_exact(g: &Graph, v: usize) -> Result<AlphaWitness> {
    alpha_with_forced(g, Some(v)).map(|(size, witness)| AlphaWitness {
        vertex: v,
        size,
        witness,
    })
}

/// Exact independence number α(G) with witness (no prescribed vertex).
pub fn alpha_exact(g: &Graph) -> Result<(usize, Vec<usize>)> {
    alpha_with_forced(g, None)
}

fn alpha_with_forced(g: &Graph, forced: Option<usize>) -> Result<(usize, Vec<usize>)> {
    let n = g.n();
    if let Some(v) = forced {
        assert!(v < n, "vertex {v} out of range");
    }
    if n == 0 {
        return Ok((0, Vec::new()));
    }
    if n <= 2 {
        let mut set: Vec<usize> = match forced {
            Some(v) => vec![v],
            None => vec![0],
        };
        for u in 0..n {
            if !set.contains(&u) && set.iter().all(|&w| !g.has_edge(u, w)) {
                set.push(u);
            }
        }
        set.sort_unstable();
        return Ok((set.len(), set));
    }
    match triangulate_any(g) {
        Ok(h) => alpha_dp(g, &h, forced),
        Err(_) => {
            if n > 24 {
                Err(Error::TooLarge(format!(
                    "alpha on a non-outerplanar graph needs n <= 24, got {n}"
                )))
            } else {
                Ok(alpha_branch_bound(g, forced))
            }
        }
    }
}

/// DP over the dual tree of the triangulated supergraph `h` (width-2 bags),
/// testing independence against the original graph `g` only.
fn alpha_dp(g: &Graph, h: &Graph, forced: Option<usize>) -> Result<(usize, Vec<usize>)> {
    let dual = weak_dual(h)?;
    let f = dual.node_count();
    // Root the dual tree at face 0.
    let mut parent = vec![usize::MAX; f];
    let mut order = Vec::with_capacity(f);
    let mut seen = vec![false; f];
    seen[0] = true;
    order.push(0);
    let mut head = 0;
    while head < order.len() {
        let x = order[head];
        head += 1;
        for &y in dual.neighbors(x) {
            if !seen[y] {
                seen[y] = true;
                parent[y] = x;
                order.push(y);
            }
        }
    }
    const NEG: i64 = i64::MIN / 4;
    // dp[face][mask over the face's sorted triple]
    let mut dp = vec![[NEG; 8]; f];
    let mut choice: Vec<[Vec<(usize, usize)>; 8]> = vec![Default::default(); f];
    for &x in order.iter().rev() {
        let tri = dual.nodes()[x];
        for mask in 0u8..8 {
            let picked: Vec<usize> =
                (0..3).filter(|&i| mask & (1 << i) != 0).map(|i| tri[i]).collect();
            // Independence within the bag, against original edges.
            let mut ok = picked
                .iter()
                .enumerate()
                .all(|(i, &a)| picked[i + 1..].iter().all(|&b| !g.has_edge(a, b)));
            if let Some(fv) = forced {
                if tri.contains(&fv) && !picked.contains(&fv) {
                    ok = false;
                }
            }
            if !ok {
                continue;
            }
            let mut total = picked.len() as i64;
            let mut picks = Vec::new();
            for &c in dual.neighbors(x) {
                if c == parent[x] {
                    continue;
                }
                let ctri = dual.nodes()[c];
                // Separator: the two shared vertices.
                let mut best = NEG;
                let mut best_mask = 0usize;
                for cmask in 0u8..8 {
                    if dp[c][cmask as usize] == NEG {
                        continue;
                    }
                    // Compatibility: agreement on every shared vertex.
                    let mut overlap = 0i64;
                    let mut compatible = true;
                    for (ci, &cv) in ctri.iter().enumerate() {
                        let c_in = cmask & (1 << ci) != 0;
                        if let Some(pi) = tri.iter().position(|&pv| pv == cv) {
                            let p_in = mask & (1 << pi) != 0;
                            if c_in != p_in {
                                compatible = false;
                                break;
                            }
                            if c_in {
                                overlap += 1;
                            }
                        }
                    }
                    if !compatible {
                        continue;
                    }
                    let val = dp[c][cmask as usize] - overlap;
                    if val > best {
                        best = val;
                        best_mask = cmask as usize;
                    }
                }
                if best == NEG {
                    total = NEG;
                    break;
                }
                total += best;
                picks.push((c, best_mask));
            }
            if total > NEG {
                dp[x][mask as usize] = total;
                choice[x][mask as usize] = picks;
            }
        }
    }
    let (best_mask, best) = (0..8)
        .map(|m| (m, dp[0][m]))
        .max_by_key(|&(_, v)| v)
        .expect("root has masks");
    if best <= NEG {
        return Err(Error::internal("alpha DP found no feasible labelling"));
    }
    // Reconstruct the witness.
    let mut in_set = vec![false; g.n()];
    let mut stack = vec![(0usize, best_mask)];
    while let Some((x, mask)) = stack.pop() {
        let tri = dual.nodes()[x];
        for i in 0..3 {
            if mask & (1 << i) != 0 {
                in_set[tri[i]] = true;
            }
        }
        for &(c, cmask) in &choice[x][mask] {
            stack.push((c, cmask));
        }
    }
    let witness: Vec<usize> = (0..g.n()).filter(|&u| in_set[u]).collect();
    if witness.len() != best as usize {
        return Err(Error::internal(format!(
            "alpha DP witness has {} vertices, dp value {best}",
            witness.len()
        )));
    }
    Ok((best as usize, witness))
}

/// Branch-and-bound maximum independent set (optionally through `forced`),
/// for small graphs of any structure.
fn alpha_branch_bound(g: &Graph, forced: Option<usize>) -> (usize, Vec<usize>) {
    let n = g.n();
    debug_assert!(n <= 64);
    let nbr: Vec<u64> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &u| m | 1 << u))
        .collect();
    let mut alive: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut base = Vec::new();
    if let Some(v) = forced {
        base.push(v);
        alive &= !(nbr[v] | (1 << v));
    }
    let mut best: Vec<usize> = base.clone();
    let mut current = base;
    fn rec(
        nbr: &[u64],
        alive: u64,
        current: &mut Vec<usize>,
        best: &mut Vec<usize>,
    ) {
        if current.len() + alive.count_ones() as usize <= best.len() {
            return;
        }
        if alive == 0 {
            if current.len() > best.len() {
                *best = current.clone();
            }
            return;
        }
        // Pivot on the alive vertex of maximum alive-degree.
        let mut pivot = usize::MAX;
        let mut pdeg = usize::MAX;
        let mut m = alive;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            let d = (nbr[v] & alive).count_ones() as usize;
            if pivot == usize::MAX || d > pdeg {
                pivot = v;
                pdeg = d;
            }
        }
        // Include pivot.
        current.push(pivot);
        rec(nbr, alive & !(nbr[pivot] | (1 << pivot)), current, best);
        current.pop();
        // Exclude pivot.
        rec(nbr, alive & !(1 << pivot), current, best);
    }
    rec(&nbr, alive, &mut current, &mut best);
    best.sort_unstable();
    (best.len(), best)
}

/// Naive α_v by full subset enumeration (cross-check referee, n ≤ 20).
pub fn alpha_v_naive(g: &Graph, v: usize) -> Result<AlphaWitness> {
    let n = g.n();
    if n > 20 {
        return Err(Error::TooLarge(format!("naive subset enumeration needs n <= 20, got {n}")));
    }
    let nbr: Vec<u32> = (0..n)
        .map(|x| g.neighbors(x).iter().fold(0u32, |m, &u| m | 1 << u))
        .collect();
    let mut best: u32 = 1 << v;
    for mask in 0u32..(1 << n) {
        if mask & (1 << v) == 0 || mask.count_ones() <= best.count_ones() {
            continue;
        }
        let mut ok = true;
        let mut m = mask;
        while m != 0 {
            let x = m.trailing_zeros() as usize;
            m &= m - 1;
            if nbr[x] & mask != 0 {
                ok = false;
                break;
            }
        }
        if ok {
            best = mask;
        }
    }
    let witness: Vec<usize> = (0..n).filter(|&x| best & (1 << x) != 0).collect();
    Ok(AlphaWitness {
        vertex: v,
        size: witness.len(),
        witness,
    })
}

/// Exhaustive equitable s-colouring search: a colouring with all class sizes
/// in {⌊n/s⌋, ⌈n/s⌉}, or `None` as a proof of exhaustion. Budget comes from
/// `EQUICOLOR_BUDGET_MS` (unlimited when unset).
pub fn exhaustive_equitable(g: &Graph, s: usize) -> Result<Option<Coloring>> {
    exhaustive_equitable_with(g, s, &mut SearchBudget::from_env(), true)
}

/// Exhaustive equitable search with an explicit budget.
///
/// `rigidity_fast_path` enables the near-triangulation shortcut: a maximal
/// outerplanar graph has a unique proper 3-colouring up to permuting colours,
/// so for s = 3 feasibility reduces to checking that colouring's class sizes.
/// Disable to force the generic branch-and-bound.
pub fn exhaustive_equitable_with(
    g: &Graph,
    s: usize,
    budget: &mut SearchBudget,
    rigidity_fast_path: bool,
) -> Result<Option<Coloring>> {
    assert!(s >= 1, "colour count must be positive");
    let n = g.n();
    if rigidity_fast_path && s == 3 && n >= 3 && validate_embedding(g).is_maximal {
        let col = crate::graph::three_color_capped(g)?;
        return Ok(if col.is_equitable_sizes() { Some(col) } else { None });
    }
    let caps = equitable_targets(n, s);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_unstable_by_key(|&v| (usize::MAX - g.degree(v), v));
    let mut col = Coloring::new(n, s);
    fn rec(
        g: &Graph,
        order: &[usize],
        caps: &[usize],
        col: &mut Coloring,
        i: usize,
        budget: &mut SearchBudget,
    ) -> Result<bool> {
        budget.tick()?;
        if i == order.len() {
            return Ok(true);
        }
        let v = order[i];
        'colour: for c in 1..=col.s() {
            if col.class_size(c) >= caps[c - 1] {
                continue;
            }
            // Class symmetry: among empty classes of equal capacity, open
            // only the lowest-indexed one.
            if col.class_size(c) == 0
                && (1..c).any(|c2| col.class_size(c2) == 0 && caps[c2 - 1] == caps[c - 1])
            {
                continue;
            }
            for &u in g.neighbors(v) {
                if col.raw(u) == c {
                    continue 'colour;
                }
            }
            col.set(v, c);
            if rec(g, order, caps, col, i + 1, budget)? {
                return Ok(true);
            }
            col.unset(v);
        }
        Ok(false)
    }
    if rec(g, &order, &caps, &mut col, 0, budget)? {
        debug_assert!(col.verify_equitable(g).is_ok());
        Ok(Some(col))
    } else {
        Ok(None)
    }
}

/// Union-find with an undo log (union by size, no path compression) for the
/// forest-partition backtracking search.
struct RollbackDsu {
    parent: Vec<usize>,
    size: Vec<usize>,
    log: Vec<(usize, usize)>, // (child root attached, parent root)
}

impl RollbackDsu {
    fn new(n: usize) -> Self {
        RollbackDsu {
            parent: (0..n).collect(),
            size: vec![1; n],
            log: Vec::new(),
        }
    }

    fn find(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    /// Returns false when already joined (a cycle would close).
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (big, small) = if self.size[ra] >= self.size[rb] { (ra, rb) } else { (rb, ra) };
        self.parent[small] = big;
        self.size[big] += self.size[small];
        self.log.push((small, big));
        true
    }

    fn mark(&self) -> usize {
        self.log.len()
    }

    fn rollback(&mut self, mark: usize) {
        while self.log.len() > mark {
            let (small, big) = self.log.pop().unwrap();
            self.size[big] -= self.size[small];
            self.parent[small] = small;
        }
    }
}

/// Exhaustive k-part forest partition (each part induces a forest); balanced
/// demands part sizes pairwise within 1. `None` is a proof of exhaustion.
pub fn exhaustive_forest_partition(
    g: &Graph,
    k: usize,
    balanced: bool,
) -> Result<Option<ForestPartition>> {
    exhaustive_forest_partition_with(g, k, balanced, &mut SearchBudget::from_env())
}

pub fn exhaustive_forest_partition_with(
    g: &Graph,
    k: usize,
    balanced: bool,
    budget: &mut SearchBudget,
) -> Result<Option<ForestPartition>> {
    assert!(k >= 1);
    let n = g.n();
    if n > 24 {
        return Err(Error::TooLarge(format!("exhaustive forest partition needs n <= 24, got {n}")));
    }
    let caps: Vec<usize> = if balanced { equitable_targets(n, k) } else { vec![n; k] };
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_unstable_by_key(|&v| (usize::MAX - g.degree(v), v));
    let mut dsu = RollbackDsu::new(n);
    let mut part_of = vec![usize::MAX; n];
    let mut part_size = vec![0usize; k];

    #[allow(clippy::too_many_arguments)]
    fn rec(
        g: &Graph,
        order: &[usize],
        caps: &[usize],
        dsu: &mut RollbackDsu,
        part_of: &mut [usize],
        part_size: &mut [usize],
        i: usize,
        budget: &mut SearchBudget,
    ) -> Result<bool> {
        budget.tick()?;
        if i == order.len() {
            return Ok(true);
        }
        let v = order[i];
        'part: for p in 0..caps.len() {
            if part_size[p] >= caps[p] {
                continue;
            }
            if part_size[p] == 0 && (0..p).any(|q| part_size[q] == 0 && caps[q] == caps[p]) {
                continue;
            }
            let mark = dsu.mark();
            for &u in g.neighbors(v) {
                if part_of[u] == p && !dsu.union(v, u) {
                    dsu.rollback(mark);
                    continue 'part;
                }
            }
            part_of[v] = p;
            part_size[p] += 1;
            if rec(g, order, caps, dsu, part_of, part_size, i + 1, budget)? {
                return Ok(true);
            }
            part_of[v] = usize::MAX;
            part_size[p] -= 1;
            dsu.rollback(mark);
        }
        Ok(false)
    }
    if rec(g, &order, &caps, &mut dsu, &mut part_of, &mut part_size, 0, &mut *budget)? {
        let mut parts = vec![Vec::new(); k];
        for v in 0..n {
            parts[part_of[v]].push(v);
        }
        let fp = ForestPartition::new(g, parts, vec![usize::MAX; n])?;
        Ok(Some(fp))
    } else {
        Ok(None)
    }
}

/// All triangulations of the labeled convex n-gon (3 ≤ n ≤ 14), exactly
/// Catalan(n−2) maximal outerplanar graphs, each with outer order 0..n−1.
pub fn enumerate_maximal_outerplanar(n: usize) -> Result<impl Iterator<Item = Graph>> {
    if n < 3 {
        return Err(Error::TooSmall(format!("triangulations need n >= 3, got {n}")));
    }
    if n > 14 {
        return Err(Error::TooLarge(format!(
            "triangulation enumeration capped at n = 14, got {n}"
        )));
    }
    // A triangulation of the polygon 0..n-1 is a set of non-crossing chords;
    // enumerate by picking, for each open region (i, j) of the boundary, the
    // apex m of the triangle i-m-j and recursing into both sub-regions via an
    // explicit worklist (so every triangulation is produced exactly once).
    let mut all: Vec<Vec<(u16, u16)>> = Vec::new();
    let mut chords: Vec<(u16, u16)> = Vec::new();
    fn rec_regions(
        regions: &mut Vec<(usize, usize)>,
        chords: &mut Vec<(u16, u16)>,
        all: &mut Vec<Vec<(u16, u16)>>,
    ) {
        let Some((i, j)) = regions.pop() else {
            all.push(chords.clone());
            return;
        };
        for m in i + 1..j {
            let before = chords.len();
            if m > i + 1 {
                chords.push((i as u16, m as u16));
            }
            if j > m + 1 {
                chords.push((m as u16, j as u16));
            }
            let rlen = regions.len();
            if m - i > 1 {
                regions.push((i, m));
            }
            if j - m > 1 {
                regions.push((m, j));
            }
            rec_regions(regions, chords, all);
            regions.truncate(rlen);
            chords.truncate(before);
        }
        regions.push((i, j));
    }
    let mut regions = vec![(0usize, n - 1)];
    regions.retain(|&(a, b)| b - a > 1);
    rec_regions(&mut regions, &mut chords, &mut all);
    Ok(all.into_iter().map(move |chords| {
        let mut g = Graph::new(n);
        for i in 0..n {
            g.add_edge(i, (i + 1) % n);
        }
        for (a, b) in chords {
            g.add_edge(a as usize, b as usize);
        }
        g.set_outer_order((0..n).collect()).expect("identity order");
        g
    }))
}

/// Labeled triangulation count: Catalan(n−2).
pub fn catalan(k: usize) -> u64 {
    let mut c: u64 = 1;
    for i in 0..k {
        c = c * 2 * (2 * i as u64 + 1) / (i as u64 + 2);
    }
    c
}

/// Triangulations of the n-gon up to rotation and reflection (canonical
/// representatives, deterministic order).
pub fn enumerate_maximal_outerplanar_dedup(n: usize) -> Result<Vec<Graph>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for g in enumerate_maximal_outerplanar(n)? {
        let mut key: Option<Vec<(usize, usize)>> = None;
        for refl in [false, true] {
            for rot in 0..n {
                let map = |v: usize| {
                    let x = if refl { n - v } else { v } % n;
                    (x + rot) % n
                };
                let mut edges: Vec<(usize, usize)> = g
                    .edges()
                    .iter()
                    .map(|&(u, v)| {
                        let (a, b) = (map(u), map(v));
                        if a < b {
                            (a, b)
                        } else {
                            (b, a)
                        }
                    })
                    .collect();
                edges.sort_unstable();
                if key.as_ref().map_or(true, |k| edges < *k) {
                    key = Some(edges);
                }
            }
        }
        if seen.insert(key.expect("orbit nonempty")) {
            out.push(g);
        }
    }
    Ok(out)
}

/// All free trees on n vertices (one labeled representative per isomorphism
/// class), built by leaf growth with AHU canonical-form deduplication.
pub fn enumerate_trees(n: usize) -> Result<Vec<Graph>> {
    if n > 16 {
        return Err(Error::TooLarge(format!("tree enumeration capped at n = 16, got {n}")));
    }
    if n == 0 {
        return Ok(vec![Graph::new(0)]);
    }
    let mut current = vec![Graph::new(1)];
    for size in 2..=n {
        let mut next = Vec::new();
        let mut seen = HashSet::new();
        for t in &current {
            for attach in 0..t.n() {
                let mut bigger = Graph::new(size);
                for &(u, v) in t.edges() {
                    bigger.add_edge(u, v);
                }
                bigger.add_edge(attach, size - 1);
                let canon = tree_canonical_form(&bigger);
                if seen.insert(canon) {
                    next.push(bigger);
                }
            }
        }
        current = next;
    }
    Ok(current)
}

/// AHU canonical form of a tree: the minimum, over its 1 or 2 centers, of the
/// sorted-bracket rooted encoding.
pub fn tree_canonical_form(t: &Graph) -> String {
    let n = t.n();
    if n == 0 {
        return String::new();
    }
    if n == 1 {
        return "()".into();
    }
    // Centers by leaf peeling.
    let mut deg: Vec<usize> = (0..n).map(|v| t.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut layer: Vec<usize> = (0..n).filter(|&v| deg[v] <= 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        let mut nxt = Vec::new();
        for &v in &layer {
            removed[v] = true;
            remaining -= 1;
            for &u in t.neighbors(v) {
                if !removed[u] {
                    deg[u] -= 1;
                    if deg[u] == 1 {
                        nxt.push(u);
                    }
                }
            }
        }
        layer = nxt;
    }
    let centers: Vec<usize> = (0..n).filter(|&v| !removed[v]).collect();
    fn encode(t: &Graph, v: usize, parent: usize) -> String {
        let mut subs: Vec<String> = t
            .neighbors(v)
            .iter()
            .filter(|&&u| u != parent)
            .map(|&u| encode(t, u, v))
            .collect();
        subs.sort();
        format!("({})", subs.concat())
    }
    centers
        .iter()
        .map(|&c| encode(t, c, usize::MAX))
        .min()
        .expect("at least one center")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_c5_any_vertex_is_2() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        for v in 0..5 {
            let w = alpha_v_exact(&g, v).unwrap();
            assert_eq!(w.size, 2, "alpha_v of C_5 at {v}");
            w.verify(&g).unwrap();
        }
    }

    #[test]
    fn alpha_star_center_is_1() {
        let g = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]);
        assert_eq!(alpha_v_exact(&g, 0).unwrap().size, 1);
        assert_eq!(alpha_v_exact(&g, 1).unwrap().size, 4);
    }

    #[test]
    fn alpha_dp_matches_naive_on_varied_graphs() {
        let samples = vec![
            Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]),
            Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]),
            Graph::from_edges(7, &[(0, 1), (0, 2), (0, 3), (3, 4), (3, 5), (5, 6)]),
            Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)]),
            Graph::new(4),
        ];
        for g in samples {
            for v in 0..g.n() {
                let exact = alpha_v_exact(&g, v).unwrap();
                let naive = alpha_v_naive(&g, v).unwrap();
                assert_eq!(exact.size, naive.size, "graph {:?} vertex {v}", g.edges());
                exact.verify(&g).unwrap();
            }
        }
    }

    #[test]
    fn alpha_branch_bound_path_nonouterplanar() {
        // K_4 is not outerplanar: exercises the branch-and-bound fallback.
        let g = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        for v in 0..4 {
            assert_eq!(alpha_v_exact(&g, v).unwrap().size, 1);
        }
    }

    #[test]
    fn alpha_exact_no_forced_vertex() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        let (a, w) = alpha_exact(&g).unwrap();
        assert_eq!(a, 2);
        assert_eq!(w.len(), 2);
    }

    #[test]
    fn equitable_p6_three_classes() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]);
        let col = exhaustive_equitable(&g, 3).unwrap().expect("P_6 is 3-equitable");
        assert_eq!(col.sorted_sizes(), vec![2, 2, 2]);
        col.verify_equitable(&g).unwrap();
    }

    #[test]
    fn equitable_triangle_two_colours_infeasible() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]);
        assert!(exhaustive_equitable(&g, 2).unwrap().is_none());
    }

    #[test]
    fn equitable_respects_budget() {
        // A 3-partite-ish dense instance large enough to out-run a 0 ms budget.
        let mut edges = Vec::new();
        for u in 0..10 {
            for v in 10..20 {
                edges.push((u, v));
            }
        }
        let g = Graph::from_edges(20, &edges);
        let mut b = SearchBudget::with_ms(0);
        match exhaustive_equitable_with(&g, 7, &mut b, false) {
            Err(Error::BudgetExceeded { .. }) => {}
            other => panic!("expected BudgetExceeded, got {other:?}"),
        }
    }

    #[test]
    fn forest_partition_triangle() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]);
        let fp = exhaustive_forest_partition(&g, 2, true).unwrap().expect("2-1 split works");
        let mut sizes = fp.sizes();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2]);
    }

    #[test]
    fn forest_partition_k4() {
        let g = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        let fp = exhaustive_forest_partition(&g, 2, true).unwrap().expect("2-2 split works");
        assert_eq!(fp.sizes(), vec![2, 2]);
        assert!(fp.is_balanced());
    }

    #[test]
    fn forest_partition_infeasible_when_k_too_small() {
        // K_4 into one part would keep a cycle.
        let g = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert!(exhaustive_forest_partition(&g, 1, true).unwrap().is_none());
    }

    #[test]
    fn triangulation_counts_match_catalan() {
        assert_eq!(catalan(2), 2);
        assert_eq!(catalan(3), 5);
        assert_eq!(catalan(4), 14);
        for n in 3..=8 {
            let count = enumerate_maximal_outerplanar(n).unwrap().count() as u64;
            assert_eq!(count, catalan(n - 2), "n = {n}");
        }
    }

    #[test]
    fn triangulations_are_maximal() {
        for g in enumerate_maximal_outerplanar(7).unwrap() {
            let rep = validate_embedding(&g);
            assert!(rep.is_maximal, "{:?} -> {:?}", g.edges(), rep.violations);
        }
    }

    #[test]
    fn triangulation_n4_two_chords() {
        let graphs: Vec<Graph> = enumerate_maximal_outerplanar(4).unwrap().collect();
        assert_eq!(graphs.len(), 2);
        let has02 = graphs.iter().any(|g| g.has_edge(0, 2));
        let has13 = graphs.iter().any(|g| g.has_edge(1, 3));
        assert!(has02 && has13);
    }

    #[test]
    fn dedup_counts_smaller() {
        // n=6: 14 labeled, 3 up to the dihedral group.
        assert_eq!(enumerate_maximal_outerplanar_dedup(6).unwrap().len(), 3);
    }

    #[test]
    fn free_tree_counts() {
        let expected = [1usize, 1, 1, 1, 2, 3, 6, 11, 23, 47, 106];
        for n in 1..=10 {
            assert_eq!(enumerate_trees(n).unwrap().len(), expected[n], "n = {n}");
        }
    }

    #[test]
    fn feasibility_forces_alpha_lower_bound() {
        // Necessity: an equitable s-colouring exists only if every vertex has
        // an independent set of size floor(n/s) through it (its class).
        let g = Graph::from_edges(7, &[(0, 1), (0, 2), (0, 3), (3, 4), (4, 5), (5, 6)]);
        assert!(exhaustive_equitable(&g, 3).unwrap().is_some());
        for v in 0..g.n() {
            assert!(alpha_v_exact(&g, v).unwrap().size >= g.n() / 3);
        }
    }
}
