//! Equitable colouring of outerplanar graphs for every s ≥ 6.
//!
//! The driver [`equitable_color_outerplanar`] first peels one independent
//! class per colour until six colours remain ([`reduce_color_count`]), then
//! saturates the residual to a triangulated polygon and dispatches on how
//! many vertices have degree near `2⌈n/6⌉ + 4` ([`classify_danger`]):
//!
//! - no dangerous vertex: split into two balanced forests and 3-colour each
//!   half ([`color_zero_dangerous`]);
//! - two near-dangerous hubs: carve independent runs out of both fans
//!   ([`color_two_dangerous`]);
//! - one dangerous vertex `w`: three constructions depending on `d(w)` and on
//!   the second neighbourhood `T` (the vertices at distance exactly two from
//!   `w`) — [`color_one_dangerous_highdeg`] when `2·d(w) ≥ n`,
//!   [`color_one_dangerous_small_t`] when `T` carries only a small
//!   independent set, and [`color_one_dangerous_big_t`] otherwise.
//!
//! Every construction step re-checks the invariants it is supposed to
//! restore and reports [`Error::InternalAssertionFailed`] instead of
//! producing an unverified colouring; every public entry point verifies the
//! final colouring before returning it.

use std::collections::VecDeque;
use std::sync::atomic::{AtomicU64, Ordering};

use crate::coloring::Coloring;
use crate::error::{Error, Result};
use crate::forest::equitable_color_forest;
use crate::graph::{
    neighbors_in_rotation, three_color_capped, validate_embedding, Graph,
};
use crate::oracle::{alpha_v_exact, AlphaWitness};
use crate::partition::{
    find_reducible, partition_lemma, reattach, saturate_with_degree_control, Removal,
};
use crate::util::ceil_div;

// ---------------------------------------------------------------------------
// Telemetry
// ---------------------------------------------------------------------------

static GAP_FALLBACKS: AtomicU64 = AtomicU64::new(0);

/// How many times the high-degree construction had to re-derive its anchored
/// independent set from the pre-saturation graph because saturation chords
/// consumed every witness in the supergraph.
pub fn gap_fallback_count() -> u64 {
    GAP_FALLBACKS.load(Ordering::Relaxed)
}

// ---------------------------------------------------------------------------
// Quota bookkeeping
// ---------------------------------------------------------------------------

/// Per-colour quota bookkeeping for an equitable s-colouring of n vertices.
///
/// The targets are `n_j = ⌊(n + j − 1) / s⌋` for `j = 1..=s`; they are
/// non-decreasing in `j` and sum to `n`, so colour `s` always owns a largest
/// class and colour 1 a smallest.
///
/// # Example
/// ```
/// use equicolor::outerplanar::ColorBudget;
///
/// let b = ColorBudget::new(21, 6);
/// assert_eq!(b.n_j, vec![3, 3, 3, 4, 4, 4]);
/// assert_eq!(b.n_j.iter().sum::<usize>(), 21);
/// ```
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorBudget {
    /// Full class targets `n_1 ≤ … ≤ n_s`.
    pub n_j: Vec<usize>,
    /// Remaining capacity per colour (target minus vertices already placed).
    pub n_j_rem: Vec<usize>,
}

impl ColorBudget {
    /// Fresh budget with nothing placed.
    pub fn new(n: usize, s: usize) -> Self {
        assert!(s >= 1, "a colouring needs at least one colour");
        let n_j: Vec<usize> = (1..=s).map(|j| (n + j - 1) / s).collect();
        let n_j_rem = n_j.clone();
        ColorBudget { n_j, n_j_rem }
    }

    /// Budget with a partial colouring already subtracted; errors if any
    /// class is over its target.
    pub fn from_partial(n: usize, s: usize, partial: &Coloring) -> Result<Self> {
        let mut b = ColorBudget::new(n, s);
        for j in 1..=s {
            let used = partial.class_size(j);
            if used > b.n_j[j - 1] {
                return Err(Error::internal(format!(
                    "class {j} already holds {used} vertices, over its target {}",
                    b.n_j[j - 1]
                )));
            }
            b.n_j_rem[j - 1] -= used;
        }
        Ok(b)
    }

    /// Remaining capacity of colour `j` (1-based).
    pub fn rem(&self, j: usize) -> usize {
        self.n_j_rem[j - 1]
    }

    fn take(&mut self, j: usize) {
        self.n_j_rem[j - 1] -= 1;
    }
}

// ---------------------------------------------------------------------------
// Hypothesis checking
// ---------------------------------------------------------------------------

/// Checks the independence hypothesis for `(g, s)`: every vertex must lie in
/// an independent set of `⌊n/s⌋` vertices.
///
/// A cheap lower bound (`v` plus a third of what survives deleting `N[v]`,
/// valid because outerplanar graphs are 3-colourable) filters most vertices;
/// the exact `α_v` search decides the rest. The error carries the lowest
/// violating vertex.
///
/// # Example
/// ```
/// use equicolor::outerplanar::check_hypothesis;
/// use equicolor::{Error, Graph};
///
/// let c6 = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)]);
/// assert!(check_hypothesis(&c6, 3).is_ok());
///
/// let star = Graph::from_edges(10, &(1..10).map(|v| (0, v)).collect::<Vec<_>>());
/// assert!(check_hypothesis(&star, 6).is_ok(), "⌊10/6⌋ = 1 asks nothing");
/// match check_hypothesis(&star, 3) {
///     Err(Error::HypothesisViolated { vertex, alpha, need }) => {
///         assert_eq!((vertex, alpha, need), (0, 1, 3));
///     }
///     other => panic!("expected a violation at the centre, got {other:?}"),
/// }
/// ```
pub fn check_hypothesis(g: &Graph, s: usize) -> Result<()> {
    assert!(s >= 1, "a colouring needs at least one colour");
    let n = g.n();
    let need = n / s;
    if need <= 1 {
        // Every vertex alone is an independent set of size 1.
        return Ok(());
    }
    for v in 0..n {
        let cheap = 1 + ceil_div(n - g.degree(v) - 1, 3);
        if cheap >= need {
            continue;
        }
        let wit = alpha_v_exact(g, v)?;
        // The size bound and the colour-count bound are the same condition.
        debug_assert_eq!(wit.size >= need, s >= ceil_div(n + 1, wit.size + 1));
        if wit.size < need {
            return Err(Error::HypothesisViolated {
                vertex: v,
                alpha: wit.size,
                need,
            });
        }
    }
    Ok(())
}

/// Finds an independent set of exactly `size` vertices containing `keep`.
///
/// The working graph is searched first. When it is a saturated supergraph of
/// `original`, the added chords may have consumed every witness; the
/// fallback re-derives the set from `original` restricted away from
/// `forbidden` (the working-graph neighbourhood of `keep`) and bumps the
/// gap-fallback counter. Failing both is a hypothesis violation.
fn anchored_independent_set(
    work: &Graph,
    original: Option<&Graph>,
    keep: usize,
    size: usize,
    forbidden: &[usize],
) -> Result<Vec<usize>> {
    if size == 0 {
        return Err(Error::internal("an anchored independent set has size ≥ 1"));
    }
    let wit = alpha_v_exact(work, keep)?;
    if wit.size >= size {
        return Ok(truncate_witness(&wit, keep, size));
    }
    let mut best = wit.size;
    if let Some(orig) = original {
        GAP_FALLBACKS.fetch_add(1, Ordering::Relaxed);
        let n = orig.n();
        let mut banned = vec![false; n];
        for &u in forbidden {
            banned[u] = true;
        }
        banned[keep] = false;
        let allowed: Vec<usize> = (0..n).filter(|&v| !banned[v]).collect();
        let (h, back) = orig.induced(&allowed);
        let lk = allowed
            .binary_search(&keep)
            .map_err(|_| Error::internal("the anchor fell out of its own restriction"))?;
        let wit2 = alpha_v_exact(&h, lk)?;
        if wit2.size >= size {
            let local = truncate_witness(&wit2, lk, size);
            return Ok(local.into_iter().map(|lv| back[lv]).collect());
        }
        best = best.max(wit2.size);
    }
    Err(Error::HypothesisViolated {
        vertex: keep,
        alpha: best,
        need: size,
    })
}

/// Keeps the anchor and the lowest-id other members, sorted ascending.
fn truncate_witness(wit: &AlphaWitness, keep: usize, size: usize) -> Vec<usize> {
    let mut others: Vec<usize> = wit.witness.iter().copied().filter(|&v| v != keep).collect();
    others.sort_unstable();
    others.truncate(size - 1);
    others.push(keep);
    others.sort_unstable();
    others
}

// ---------------------------------------------------------------------------
// Colour-count reduction: s > 6 down to 6
// ---------------------------------------------------------------------------

/// One peeled colour class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeelStep {
    /// The colour this class receives in the combined colouring.
    pub color: usize,
    /// Its members, as vertices of the original graph, ascending.
    pub vertices: Vec<usize>,
}

/// Outcome of [`reduce_color_count`]: the peeled classes and the six-colour
/// residual instance.
#[derive(Debug, Clone)]
pub struct ColorReduction {
    /// Peels in the order they were taken (colours `s, s−1, …, 7`).
    pub peels: Vec<PeelStep>,
    /// What remains after all peels.
    pub residual: Graph,
    /// `residual_vertices[local] = original id`.
    pub residual_vertices: Vec<usize>,
}

/// Reduces an s-colour instance (s ≥ 7) to a six-colour one by repeatedly
/// peeling an independent set of `⌊n_cur/s_cur⌋` vertices through a vertex
/// of maximum degree (lowest id on ties).
///
/// The hypothesis is checked up front and re-checked on every residual; a
/// residual losing it is an internal assertion failure, because peeling
/// through a maximum-degree vertex must preserve the hypothesis.
pub fn reduce_color_count(g: &Graph, s: usize) -> Result<ColorReduction> {
    if s < 7 {
        return Err(Error::TooSmall(format!(
            "colour-count reduction starts at 7 colours, got {s}"
        )));
    }
    check_hypothesis(g, s)?;
    let mut cur = g.clone();
    let mut cur_vertices: Vec<usize> = (0..g.n()).collect();
    let mut peels = Vec::new();
    let mut s_cur = s;
    while s_cur > 6 {
        let n_cur = cur.n();
        let v = (0..n_cur)
            .max_by(|&a, &b| cur.degree(a).cmp(&cur.degree(b)).then(b.cmp(&a)))
            .ok_or_else(|| Error::TooSmall("cannot peel an empty graph".into()))?;
        let size = n_cur / s_cur;
        if size == 0 {
            return Err(Error::TooSmall(format!(
                "peeling {n_cur} vertices at {s_cur} colours would take an empty class"
            )));
        }
        let set = anchored_independent_set(&cur, None, v, size, &[])?;
        peels.push(PeelStep {
            color: s_cur,
            vertices: set.iter().map(|&lv| cur_vertices[lv]).collect(),
        });
        let mut gone = vec![false; n_cur];
        for &lv in &set {
            gone[lv] = true;
        }
        let keep: Vec<usize> = (0..n_cur).filter(|&lv| !gone[lv]).collect();
        let (next, back) = cur.induced(&keep);
        cur_vertices = back.iter().map(|&lv| cur_vertices[lv]).collect();
        cur = next;
        s_cur -= 1;
        if let Err(e) = check_hypothesis(&cur, s_cur) {
            return Err(Error::internal(format!(
                "the residual lost the hypothesis after peeling to {s_cur} colours: {e}"
            )));
        }
    }
    Ok(ColorReduction {
        peels,
        residual: cur,
        residual_vertices: cur_vertices,
    })
}

// ---------------------------------------------------------------------------
// Danger classification
// ---------------------------------------------------------------------------

/// Degree classification of a graph around the thresholds of the six-colour
/// case analysis.
///
/// # Example
/// ```
/// use equicolor::construct::double_fan;
/// use equicolor::outerplanar::classify_danger;
///
/// // Two hubs of degree 11 over 20 vertices: near the threshold, not over.
/// let g = double_fan(9, 9);
/// let report = classify_danger(&g).unwrap();
/// assert_eq!(report.threshold_dangerous, 12);
/// assert_eq!(report.threshold_near, 11);
/// assert!(report.dangerous.is_empty());
/// assert_eq!(report.near, vec![0, 10]);
/// ```
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DangerReport {
    /// `2⌈n/6⌉ + 4`: a vertex of at least this degree is *dangerous*.
    pub threshold_dangerous: usize,
    /// `2⌈n/6⌉ + 3`: at least this degree is *near dangerous*.
    pub threshold_near: usize,
    /// Dangerous vertices, ascending.
    pub dangerous: Vec<usize>,
    /// Near-dangerous vertices (a superset of the dangerous ones), ascending.
    pub near: Vec<usize>,
}

/// Classifies the vertices of `g` against the danger thresholds.
///
/// An outerplanar graph cannot hold three near-dangerous vertices; if the
/// input is outerplanar and three are found, that is an internal assertion
/// failure.
pub fn classify_danger(g: &Graph) -> Result<DangerReport> {
    let n = g.n();
    let threshold_dangerous = 2 * ceil_div(n, 6) + 4;
    let threshold_near = threshold_dangerous - 1;
    let near: Vec<usize> = (0..n).filter(|&v| g.degree(v) >= threshold_near).collect();
    let dangerous: Vec<usize> = near
        .iter()
        .copied()
        .filter(|&v| g.degree(v) >= threshold_dangerous)
        .collect();
    if near.len() > 2 && validate_embedding(g).is_outerplanar {
        return Err(Error::internal(format!(
            "{} vertices reach the near-dangerous degree {threshold_near}; \
             outerplanarity allows two",
            near.len()
        )));
    }
    Ok(DangerReport {
        threshold_dangerous,
        threshold_near,
        dangerous,
        near,
    })
}

// ---------------------------------------------------------------------------
// No dangerous vertex: two balanced forests
// ---------------------------------------------------------------------------

/// Equitable 6-colouring when no vertex is dangerous: split the graph into
/// two balanced forests with controlled within-part degrees, 3-colour each
/// half equitably, and use colours {1,2,3} on one part and {4,5,6} on the
/// other.
///
/// # Example
/// ```
/// use equicolor::outerplanar::color_zero_dangerous;
/// use equicolor::Graph;
///
/// let c6 = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)]);
/// let col = color_zero_dangerous(&c6).unwrap();
/// assert_eq!(col.sorted_sizes(), vec![1; 6], "six vertices, six singleton classes");
/// ```
pub fn color_zero_dangerous(g: &Graph) -> Result<Coloring> {
    let n = g.n();
    let fp = partition_lemma(g)?;
    let mut col = Coloring::new(n, 6);
    for (pi, part) in fp.parts().iter().enumerate() {
        if part.is_empty() {
            continue;
        }
        let (f, back) = g.induced(part);
        let sub = equitable_color_forest(&f, 3).map_err(|e| match e {
            Error::HypothesisViolated { .. } => Error::internal(format!(
                "a partition half lost the forest hypothesis: {e}"
            )),
            other => other,
        })?;
        for (lv, &gv) in back.iter().enumerate() {
            let c = sub
                .get(lv)
                .ok_or_else(|| Error::internal("the forest colouring left a vertex out"))?;
            col.set(gv, c + 3 * pi);
        }
    }
    col.verify_equitable(g)?;
    Ok(col)
}

// ---------------------------------------------------------------------------
// Two near-dangerous hubs
// ---------------------------------------------------------------------------

/// Working state of the two-hub construction (see
/// [`prepare_two_dangerous`]).
#[derive(Debug, Clone)]
pub struct TwoDangerousScratch {
    pub w1: usize,
    pub w2: usize,
    /// Neighbours of `w1` outside the closed neighbourhood of
    /// `N[w2] ∖ {w1}`, in rotation order around `w1`.
    pub s1: Vec<usize>,
    /// The mirror set around `w2`.
    pub s2: Vec<usize>,
    /// The chosen consecutive run inside `s1`, `n_1 + n_5 − 1` long.
    pub s1_run: Vec<usize>,
    /// The chosen consecutive run inside `s2`, `n_4 + n_6 − 1` long.
    pub s2_run: Vec<usize>,
    /// Even-position vertices of `s1_run`: independent, exactly `n_1` many.
    pub s1_alt: Vec<usize>,
    /// Even-position vertices of `s2_run`: independent, exactly `n_4` many.
    pub s2_alt: Vec<usize>,
    /// Vertices outside the hubs with neighbours in both `s1` and `s2`;
    /// outerplanarity allows at most two.
    pub y_vertices: Vec<usize>,
    /// The graph with both runs and both hubs removed (it has exactly
    /// `n_2 + n_3` vertices), plus the map back to `g`.
    pub g_prime: Graph,
    pub g_prime_back: Vec<usize>,
}

struct TwoHubBase {
    s1: Vec<usize>,
    s2: Vec<usize>,
    y_vertices: Vec<usize>,
    len1: usize,
    len2: usize,
}

fn two_hub_base(g: &Graph, w1: usize, w2: usize) -> Result<TwoHubBase> {
    let n = g.n();
    if w1 == w2 {
        return Err(Error::internal("the two hubs must be distinct"));
    }
    let report = validate_embedding(g);
    if !report.is_maximal {
        return Err(Error::NotMaximal(
            "the two-hub construction needs a saturated graph".into(),
        ));
    }
    let threshold_near = 2 * ceil_div(n, 6) + 3;
    for &w in &[w1, w2] {
        if g.degree(w) < threshold_near {
            return Err(Error::TooSmall(format!(
                "hub {w} has degree {} below the near-dangerous threshold {threshold_near}",
                g.degree(w)
            )));
        }
    }
    // hull(w, other) = N[ N[w] ∖ {other} ]
    let hull = |w: usize, other: usize| -> Vec<bool> {
        let mut base: Vec<usize> = g.neighbors(w).to_vec();
        base.push(w);
        base.retain(|&v| v != other);
        let mut h = vec![false; n];
        for &u in &base {
            h[u] = true;
            for &z in g.neighbors(u) {
                h[z] = true;
            }
        }
        h
    };
    let hull2 = hull(w2, w1);
    let hull1 = hull(w1, w2);
    let s1: Vec<usize> = neighbors_in_rotation(g, w1)?
        .into_iter()
        .filter(|&x| !hull2[x])
        .collect();
    let s2: Vec<usize> = neighbors_in_rotation(g, w2)?
        .into_iter()
        .filter(|&x| !hull1[x])
        .collect();
    // Shape facts the cut guarantees; cheap to re-check.
    for &a in &s1 {
        for &b in &s2 {
            if a == b || g.has_edge(a, b) {
                return Err(Error::internal(format!(
                    "the pruned hub neighbourhoods touch at {a} and {b}"
                )));
            }
        }
    }
    let mut in_s1 = vec![false; n];
    let mut in_s2 = vec![false; n];
    for &v in &s1 {
        in_s1[v] = true;
    }
    for &v in &s2 {
        in_s2[v] = true;
    }
    let y_vertices: Vec<usize> = (0..n)
        .filter(|&z| {
            z != w1
                && z != w2
                && g.neighbors(z).iter().any(|&u| in_s1[u])
                && g.neighbors(z).iter().any(|&u| in_s2[u])
        })
        .collect();
    if y_vertices.len() > 2 {
        return Err(Error::internal(format!(
            "{} vertices see both pruned neighbourhoods; outerplanarity allows two",
            y_vertices.len()
        )));
    }
    let t = ColorBudget::new(n, 6).n_j;
    let len1 = t[0] + t[4] - 1;
    let len2 = t[3] + t[5] - 1;
    for (s, len, w) in [(&s1, len1, w1), (&s2, len2, w2)] {
        if s.len() < len {
            return Err(Error::internal(format!(
                "the pruned neighbourhood of hub {w} holds {} vertices; the construction needs {len}",
                s.len()
            )));
        }
    }
    Ok(TwoHubBase {
        s1,
        s2,
        y_vertices,
        len1,
        len2,
    })
}

/// One placement attempt for a fixed pair of run starts. `Ok(None)` means
/// this pair cannot finish (the next one is tried); `Err` is a hard failure.
fn two_dangerous_attempt(
    g: &Graph,
    w1: usize,
    w2: usize,
    base: &TwoHubBase,
    start1: usize,
    start2: usize,
) -> Result<Option<(TwoDangerousScratch, Coloring)>> {
    let n = g.n();
    let targets = ColorBudget::new(n, 6).n_j;
    let run1 = &base.s1[start1..start1 + base.len1];
    let run2 = &base.s2[start2..start2 + base.len2];
    let alt1: Vec<usize> = run1.iter().copied().step_by(2).collect();
    let alt2: Vec<usize> = run2.iter().copied().step_by(2).collect();
    let odd1: Vec<usize> = run1.iter().copied().skip(1).step_by(2).collect();
    let odd2: Vec<usize> = run2.iter().copied().skip(1).step_by(2).collect();
    // Run arithmetic: the evens hit the small target exactly.
    if alt1.len() != targets[0] || alt2.len() != targets[3] {
        return Err(Error::internal("a run's even half misses its target size"));
    }
    let mut removed = vec![false; n];
    for &v in run1.iter().chain(run2.iter()) {
        removed[v] = true;
    }
    removed[w1] = true;
    removed[w2] = true;
    let keep: Vec<usize> = (0..n).filter(|&v| !removed[v]).collect();
    let (g_prime, g_prime_back) = g.induced(&keep);
    if g_prime.n() != targets[1] + targets[2] {
        return Err(Error::internal(format!(
            "removing the runs and hubs left {} vertices, expected n_2 + n_3 = {}",
            g_prime.n(),
            targets[1] + targets[2]
        )));
    }
    let mut col = Coloring::new(n, 6);
    // Colour 5: the odd half of run 1 plus the far hub; colour 6 mirrors it.
    for &v in &odd1 {
        col.set(v, 5);
    }
    col.set(w2, 5);
    for &v in &odd2 {
        col.set(v, 6);
    }
    col.set(w1, 6);
    // The remainder takes colours 1..3 from the capped colouring, largest
    // class to colour 3.
    let classes = capped_classes(&g_prime)?;
    let colours = [3, 2, 1];
    for (ci, cls) in classes.iter().enumerate() {
        if cls.len() > targets[colours[ci] - 1] {
            return Ok(None);
        }
        for &lv in cls {
            col.set(g_prime_back[lv], colours[ci]);
        }
    }
    // Greedy completion of colours 1..3 over the independent even halves.
    let mut quota: Vec<usize> = (1..=3).map(|j| targets[j - 1] - col.class_size(j)).collect();
    let mut open: Vec<usize> = alt1.iter().chain(alt2.iter()).copied().collect();
    open.sort_unstable();
    while let Some(j) = (1..=3).find(|&j| quota[j - 1] > 0) {
        let slot = open.iter().position(|&z| {
            g.neighbors(z).iter().all(|&u| col.get(u) != Some(j))
        });
        let Some(slot) = slot else {
            return Ok(None); // stalled: try the next run pair
        };
        col.set(open.remove(slot), j);
        quota[j - 1] -= 1;
    }
    // Whatever is left of the even halves is independent: colour 4.
    for &z in &open {
        col.set(z, 4);
    }
    if col.verify_equitable(g).is_err() {
        return Ok(None);
    }
    let scratch = TwoDangerousScratch {
        w1,
        w2,
        s1: base.s1.clone(),
        s2: base.s2.clone(),
        s1_run: run1.to_vec(),
        s2_run: run2.to_vec(),
        s1_alt: alt1,
        s2_alt: alt2,
        y_vertices: base.y_vertices.clone(),
        g_prime,
        g_prime_back,
    };
    Ok(Some((scratch, col)))
}

fn two_dangerous_search(
    g: &Graph,
    w1: usize,
    w2: usize,
) -> Result<(TwoDangerousScratch, Coloring)> {
    let base = two_hub_base(g, w1, w2)?;
    for start1 in 0..=(base.s1.len() - base.len1) {
        for start2 in 0..=(base.s2.len() - base.len2) {
            if let Some(hit) = two_dangerous_attempt(g, w1, w2, &base, start1, start2)? {
                return Ok(hit);
            }
        }
    }
    Err(Error::internal(
        "no pair of consecutive runs supports the two-hub construction",
    ))
}

/// Builds the two-hub working state for the first run pair that completes:
/// the pruned rotation-ordered neighbourhoods, the chosen consecutive runs
/// with their independent even halves, the vertices seeing both sides, and
/// the residual graph.
pub fn prepare_two_dangerous(g: &Graph, w1: usize, w2: usize) -> Result<TwoDangerousScratch> {
    two_dangerous_search(g, w1, w2).map(|(s, _)| s)
}

/// Equitable 6-colouring of a saturated graph around two near-dangerous
/// hubs `w1`, `w2`: colour 5 takes the odd half of a run in `w1`'s fan plus
/// `w2`, colour 6 mirrors it, the residual middle takes colours 1–3 by a
/// capped 3-colouring, and the independent even halves absorb the leftover
/// quota of colours 1–4. Run starts are tried in lexicographic order and the
/// first completing pair wins.
pub fn color_two_dangerous(g: &Graph, w1: usize, w2: usize) -> Result<Coloring> {
    two_dangerous_search(g, w1, w2).map(|(_, c)| c)
}

/// Runs the capped 3-colouring and returns its classes as local vertex
/// lists, largest first (ties: lower class index first).
fn capped_classes(gp: &Graph) -> Result<[Vec<usize>; 3]> {
    let cap = three_color_capped(gp)?;
    let mut cls: Vec<(usize, Vec<usize>)> =
        (1..=3).map(|c| (c, cap.class_members(c))).collect();
    cls.sort_by(|a, b| b.1.len().cmp(&a.1.len()).then(a.0.cmp(&b.0)));
    let mut it = cls.into_iter().map(|(_, m)| m);
    Ok([
        it.next().unwrap(),
        it.next().unwrap(),
        it.next().unwrap(),
    ])
}

// ---------------------------------------------------------------------------
// The colour-cycling extension
// ---------------------------------------------------------------------------

/// Which construction drives the colour-cycling extension. The two callers
/// promise different invariants, checked during the run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtendMode {
    /// High-degree pipeline: the fallback jump to colour 6 must never fire,
    /// no colour-6 attempt may fail, and the colour-5 and colour-6 quotas
    /// stay locked together.
    HighDeg,
    /// Small-second-neighbourhood pipeline: the jump is live and the looser
    /// quota invariants apply.
    SmallT,
}

/// Counters describing one extension run.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Algorithm1Trace {
    /// Colour attempts made (successful or not).
    pub iterations: u64,
    /// Times the jump condition `n_3′ + n_4′ + n_5′ < n_6′` held.
    pub line6_condition_hits: u64,
    /// Times it actually moved the cursor onto colour 6.
    pub line6_jumps: u64,
    /// Colour-6 attempts.
    pub six_attempts: u64,
    /// Colour-6 attempts that failed.
    pub six_failures: u64,
}

/// [`algorithm1_extend_traced`] without the trace.
pub fn algorithm1_extend(
    g: &Graph,
    w: usize,
    partial: Coloring,
    budget: ColorBudget,
    mode: ExtendMode,
) -> Result<Coloring> {
    algorithm1_extend_traced(g, w, partial, budget, mode).map(|(c, _)| c)
}

/// Completes a partial equitable 6-colouring over the still-uncoloured fan
/// `N(w)`, walking the fan in rotation order while cycling the colour
/// cursor 1→2→…→6→1 and jumping to colour 6 whenever the remaining quota of
/// colours 3–5 falls below that of colour 6.
///
/// Preconditions: `w` and everything outside `N(w)` is coloured, `N(w)` is
/// untouched, and `budget` matches the partial colouring. Twelve consecutive
/// failed attempts, or any violated mode invariant, abort with an internal
/// assertion failure; on success the colouring is complete and every quota
/// is exactly met.
pub fn algorithm1_extend_traced(
    g: &Graph,
    w: usize,
    mut partial: Coloring,
    mut budget: ColorBudget,
    mode: ExtendMode,
) -> Result<(Coloring, Algorithm1Trace)> {
    let n = g.n();
    if budget.n_j.len() != 6 || partial.s() != 6 {
        return Err(Error::internal("the extension cycles exactly six colours"));
    }
    let xs = neighbors_in_rotation(g, w)?;
    let mut in_x = vec![false; n];
    for &x in &xs {
        in_x[x] = true;
    }
    for v in 0..n {
        if in_x[v] {
            if partial.get(v).is_some() {
                return Err(Error::internal(format!(
                    "fan vertex {v} is already coloured"
                )));
            }
        } else if partial.get(v).is_none() {
            return Err(Error::internal(format!(
                "vertex {v} outside the fan is uncoloured"
            )));
        }
    }
    let fresh = ColorBudget::new(n, 6);
    for j in 1..=6 {
        if budget.n_j[j - 1] != fresh.n_j[j - 1]
            || budget.n_j[j - 1] - budget.rem(j) != partial.class_size(j)
        {
            return Err(Error::internal(format!(
                "the budget for colour {j} disagrees with the partial colouring"
            )));
        }
    }
    let d = xs.len();
    let mut trace = Algorithm1Trace::default();
    let mut i = 0;
    let mut j = if budget.n_j[5] == budget.n_j[4] { 1 } else { 6 };
    let mut consecutive_failures = 0u32;
    while i < d {
        trace.iterations += 1;
        loop_top_asserts(&budget, j, mode)?;
        let v = xs[i];
        let quota_ok = budget.rem(j) > 0;
        let free_ok = g.neighbors(v).iter().all(|&u| partial.get(u) != Some(j));
        let ok = quota_ok && free_ok;
        if j == 6 {
            trace.six_attempts += 1;
            if !ok {
                trace.six_failures += 1;
                if mode == ExtendMode::HighDeg {
                    return Err(Error::internal(format!(
                        "a colour-6 attempt failed at fan vertex {v} in high-degree mode"
                    )));
                }
            }
        }
        if ok {
            partial.set(v, j);
            budget.take(j);
            consecutive_failures = 0;
        } else {
            consecutive_failures += 1;
            if consecutive_failures >= 12 {
                return Err(Error::internal(
                    "twelve consecutive colour attempts failed; the extension is stuck",
                ));
            }
        }
        j = j % 6 + 1;
        let small_rem: usize = budget.n_j_rem[2..5].iter().sum();
        if small_rem < budget.rem(6) {
            trace.line6_condition_hits += 1;
            if j != 6 {
                trace.line6_jumps += 1;
                if mode == ExtendMode::HighDeg {
                    return Err(Error::internal(
                        "the fallback jump to colour 6 fired in high-degree mode",
                    ));
                }
                j = 6;
            }
        }
        if ok {
            i += 1;
        }
    }
    if !partial.is_complete() || budget.n_j_rem.iter().any(|&r| r != 0) {
        return Err(Error::internal("the extension ended with unmet quota"));
    }
    Ok((partial, trace))
}

/// Mode invariants checked at the top of every extension iteration: the
/// high-degree run keeps the colour-5 and colour-6 quotas locked together
/// (equal, or one apart exactly while the cursor sits on 6), and the
/// small-second-neighbourhood run only leaves colour 6 while the combined
/// colour-3–5 quota still dominates it.
fn loop_top_asserts(budget: &ColorBudget, j: usize, mode: ExtendMode) -> Result<()> {
    match mode {
        ExtendMode::HighDeg => {
            let r5 = budget.rem(5);
            let r6 = budget.rem(6);
            let ok = r6 == r5 || (r6 == r5 + 1 && j == 6);
            if !ok {
                return Err(Error::internal(format!(
                    "the colour-5/6 quotas drifted apart: {r5} vs {r6} at cursor {j}"
                )));
            }
        }
        ExtendMode::SmallT => {
            if j != 6 {
                let small: usize = budget.n_j_rem[2..5].iter().sum();
                if small < budget.rem(6) {
                    return Err(Error::internal(
                        "the cursor left colour 6 while its quota dominates colours 3-5",
                    ));
                }
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// One dangerous vertex, high degree: 2·d(w) ≥ n
// ---------------------------------------------------------------------------

/// Equitable 6-colouring of a saturated graph whose single dangerous vertex
/// `w` has `2·d(w) ≥ n`: colour 1 takes an independent set of `⌊n/6⌋`
/// through `w`, the small residual outside `N(w)` takes colours 2–4 by a
/// capped 3-colouring, and the colour-cycling extension finishes the fan.
pub fn color_one_dangerous_highdeg(g: &Graph, w: usize) -> Result<Coloring> {
    color_one_dangerous_highdeg_in(g, None, w)
}

/// As [`color_one_dangerous_highdeg`], but when `g` is a saturation of
/// `original` the anchored independent set may fall back to the original
/// graph, and the final verification runs against the original.
pub(crate) fn color_one_dangerous_highdeg_in(
    g: &Graph,
    original: Option<&Graph>,
    w: usize,
) -> Result<Coloring> {
    let n = g.n();
    if n < 7 {
        return Err(Error::TooSmall(format!(
            "the six-colour constructions start at 7 vertices, got {n}"
        )));
    }
    let report = validate_embedding(g);
    if !report.is_maximal {
        return Err(Error::NotMaximal(
            "the high-degree construction needs a saturated graph".into(),
        ));
    }
    let d = g.degree(w);
    if 2 * d < n {
        return Err(Error::TooSmall(format!(
            "the high-degree construction needs 2·d(w) ≥ n, got d = {d}"
        )));
    }
    let targets = ColorBudget::new(n, 6).n_j;
    let k = targets[0];
    let xs = neighbors_in_rotation(g, w)?;
    let i1 = anchored_independent_set(g, original, w, k, &xs)?;
    let mut partial = Coloring::new(n, 6);
    for &v in &i1 {
        partial.set(v, 1);
    }
    let mut gone = vec![false; n];
    for &v in xs.iter().chain(i1.iter()) {
        gone[v] = true;
    }
    let keep: Vec<usize> = (0..n).filter(|&v| !gone[v]).collect();
    let (gp, gback) = g.induced(&keep);
    let ell = n - 6 * k;
    if gp.n() != n - d - k || gp.n() > 2 * k + ell / 2 {
        return Err(Error::internal(format!(
            "the residual outside the fan and the anchored set has {} vertices, \
             expected n − d − ⌊n/6⌋ = {} ≤ {}",
            gp.n(),
            n - d - k,
            2 * k + ell / 2
        )));
    }
    let classes = capped_classes(&gp)?;
    let colours = [4, 3, 2];
    for (ci, cls) in classes.iter().enumerate() {
        if cls.len() > targets[colours[ci] - 1] {
            return Err(Error::internal(format!(
                "a residual class of {} exceeds the colour-{} target {}",
                cls.len(),
                colours[ci],
                targets[colours[ci] - 1]
            )));
        }
        for &lv in cls {
            partial.set(gback[lv], colours[ci]);
        }
    }
    let budget = ColorBudget::from_partial(n, 6, &partial)?;
    let (col, _trace) = algorithm1_extend_traced(g, w, partial, budget, ExtendMode::HighDeg)?;
    col.verify_equitable(original.unwrap_or(g))?;
    Ok(col)
}

// ---------------------------------------------------------------------------
// One dangerous vertex: shared second-neighbourhood state
// ---------------------------------------------------------------------------

/// Working state shared by the one-dangerous-vertex constructions.
#[derive(Debug, Clone, Default)]
pub struct OneDangerousScratch {
    pub w: usize,
    /// Second neighbourhood: vertices at distance exactly two from `w`,
    /// ascending.
    pub t: Vec<usize>,
    /// `t` decomposed into the disjoint paths it induces, each listed end to
    /// end starting from its lower-id end.
    pub t_paths: Vec<Vec<usize>>,
    /// Independence number of the graph induced on `t`: the closed form
    /// `Σ ⌈len/2⌉` over the paths.
    pub alpha_t: usize,
    /// The graph left once the far components are reduced away (big-T
    /// construction), with its map back to `g`.
    pub g_prime: Option<(Graph, Vec<usize>)>,
    /// `g` restricted to `{w} ∪ N(w) ∪ t`.
    pub g_double: Option<(Graph, Vec<usize>)>,
    /// The same after the paths of `t` are pared down.
    pub g_triple: Option<(Graph, Vec<usize>)>,
    /// Pared paths of three vertices.
    pub a: usize,
    /// Pared paths of one vertex.
    pub b: usize,
    /// Capped-colouring classes used by the small-T construction (global
    /// ids, largest class first).
    pub classes: Option<[Vec<usize>; 3]>,
}

/// BFS distances from `src` (`None` = unreachable).
fn bfs_distances(g: &Graph, src: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.n()];
    dist[src] = Some(0);
    let mut queue = VecDeque::from([src]);
    while let Some(v) = queue.pop_front() {
        let dv = dist[v].unwrap();
        for &u in g.neighbors(v) {
            if dist[u].is_none() {
                dist[u] = Some(dv + 1);
                queue.push_back(u);
            }
        }
    }
    dist
}

/// Decomposes `set` into the paths it induces in `g`, each walked from its
/// lower-id end. Errors if any member has three neighbours inside the set or
/// a cycle closes.
fn induced_paths(g: &Graph, set: &[usize]) -> Result<Vec<Vec<usize>>> {
    let n = g.n();
    let mut in_set = vec![false; n];
    for &v in set {
        in_set[v] = true;
    }
    let nbrs_in = |v: usize| -> Vec<usize> {
        g.neighbors(v).iter().copied().filter(|&u| in_set[u]).collect()
    };
    for &v in set {
        if nbrs_in(v).len() > 2 {
            return Err(Error::NotMaximal(format!(
                "vertex {v} has three neighbours inside a set that should induce paths"
            )));
        }
    }
    let mut seen = vec![false; n];
    let mut paths = Vec::new();
    for &v in set {
        if seen[v] {
            continue;
        }
        // Collect the component, then walk it from its lower-id end.
        let mut comp = vec![v];
        seen[v] = true;
        let mut qi = 0;
        while qi < comp.len() {
            let c = comp[qi];
            qi += 1;
            for u in nbrs_in(c) {
                if !seen[u] {
                    seen[u] = true;
                    comp.push(u);
                }
            }
        }
        let ends: Vec<usize> = comp
            .iter()
            .copied()
            .filter(|&c| nbrs_in(c).len() <= 1)
            .collect();
        if ends.is_empty() {
            return Err(Error::NotMaximal(format!(
                "a cycle through vertex {v} sits inside a set that should induce paths"
            )));
        }
        let start = ends.iter().copied().min().unwrap();
        let mut path = vec![start];
        let mut prev = None;
        let mut cur = start;
        loop {
            let next = nbrs_in(cur).into_iter().find(|&u| Some(u) != prev);
            match next {
                Some(u) => {
                    path.push(u);
                    prev = Some(cur);
                    cur = u;
                }
                None => break,
            }
        }
        if path.len() != comp.len() {
            return Err(Error::internal("a path walk missed part of its component"));
        }
        paths.push(path);
    }
    Ok(paths)
}

/// Builds the second-neighbourhood state around `w`: the distance-two layer,
/// its path decomposition, and the closed-form independence number.
pub fn one_dangerous_scratch(g: &Graph, w: usize) -> Result<OneDangerousScratch> {
    let n = g.n();
    let dist = bfs_distances(g, w);
    let t: Vec<usize> = (0..n).filter(|&v| dist[v] == Some(2)).collect();
    let t_paths = induced_paths(g, &t)?;
    let alpha_t = t_paths.iter().map(|p| (p.len() + 1) / 2).sum();
    Ok(OneDangerousScratch {
        w,
        t,
        t_paths,
        alpha_t,
        ..Default::default()
    })
}

// ---------------------------------------------------------------------------
// One dangerous vertex, small second neighbourhood
// ---------------------------------------------------------------------------

/// Equitable 6-colouring of a saturated graph whose single dangerous vertex
/// `w` has `2·d(w) < n` and a second neighbourhood whose independence number
/// stays below `⌊n/6⌋`: the graph outside `N[w]` takes a capped
/// 3-colouring, its classes seed colours 1–3 (with `w` joining colour 1 and
/// the oversized parts spilling into colours 4–6), and the colour-cycling
/// extension finishes the fan.
pub fn color_one_dangerous_small_t(g: &Graph, w: usize) -> Result<Coloring> {
    small_t_pipeline(g, w).map(|p| p.0)
}

fn small_t_pipeline(g: &Graph, w: usize) -> Result<(Coloring, OneDangerousScratch)> {
    let n = g.n();
    if n < 7 {
        return Err(Error::TooSmall(format!(
            "the six-colour constructions start at 7 vertices, got {n}"
        )));
    }
    let report = validate_embedding(g);
    if !report.is_maximal {
        return Err(Error::NotMaximal(
            "the dangerous-vertex constructions need a saturated graph".into(),
        ));
    }
    let d = g.degree(w);
    let threshold_dangerous = 2 * ceil_div(n, 6) + 4;
    if d < threshold_dangerous {
        return Err(Error::TooSmall(format!(
            "vertex {w} has degree {d} below the dangerous threshold {threshold_dangerous}"
        )));
    }
    if 2 * d >= n {
        return Err(Error::TooLarge(format!(
            "with 2·d(w) = {} ≥ n the high-degree construction applies",
            2 * d
        )));
    }
    let mut scratch = one_dangerous_scratch(g, w)?;
    let targets = ColorBudget::new(n, 6).n_j;
    let k = targets[0];
    if scratch.alpha_t + 1 > k {
        return Err(Error::TooLarge(format!(
            "the second neighbourhood carries an independent set of {} ≥ ⌊n/6⌋ = {k}; \
             the big-T construction applies",
            scratch.alpha_t
        )));
    }
    let xs = neighbors_in_rotation(g, w)?;
    let mut in_x = vec![false; n];
    for &x in &xs {
        in_x[x] = true;
    }
    let mut in_t = vec![false; n];
    for &tv in &scratch.t {
        in_t[tv] = true;
    }
    // The graph outside the closed neighbourhood of w.
    let keep: Vec<usize> = (0..n).filter(|&v| v != w && !in_x[v]).collect();
    let (gp, gback) = g.induced(&keep);
    let local_classes = capped_classes(&gp)?;
    let cls: [Vec<usize>; 3] = local_classes.map(|m| {
        let mut global: Vec<usize> = m.into_iter().map(|lv| gback[lv]).collect();
        global.sort_unstable();
        global
    });
    for c in &cls {
        if 3 * c.len() + 6 > n {
            return Err(Error::internal(format!(
                "a capped class of {} exceeds (n − 6)/3",
                c.len()
            )));
        }
    }
    if cls[0].len() + 1 < k {
        return Err(Error::internal(
            "the largest capped class cannot seed the first colour",
        ));
    }
    let t_in_c1: Vec<usize> = cls[0].iter().copied().filter(|&v| in_t[v]).collect();
    if t_in_c1.len() + 1 > k {
        return Err(Error::internal(format!(
            "{} second-neighbourhood vertices crowd the largest class",
            t_in_c1.len()
        )));
    }
    // Colour 1: w, every second-neighbourhood member of the largest class,
    // then lowest-id fill; the class remainder spills into colour 4.
    let mut i1 = vec![w];
    i1.extend(&t_in_c1);
    for &v in &cls[0] {
        if i1.len() == k {
            break;
        }
        if !in_t[v] {
            i1.push(v);
        }
    }
    if i1.len() != k {
        return Err(Error::internal("the first colour class came up short"));
    }
    let mut partial = Coloring::new(n, 6);
    for &v in &i1 {
        partial.set(v, 1);
    }
    let spill4: Vec<usize> = cls[0]
        .iter()
        .copied()
        .filter(|&v| partial.get(v).is_none())
        .collect();
    if spill4.len() > targets[3] {
        return Err(Error::internal(format!(
            "the colour-4 spill of {} exceeds its target {}",
            spill4.len(),
            targets[3]
        )));
    }
    if spill4.iter().any(|&v| in_t[v]) {
        return Err(Error::internal(
            "a second-neighbourhood vertex leaked into the colour-4 spill",
        ));
    }
    for &v in &spill4 {
        partial.set(v, 4);
    }
    // Classes two and three seed colours 2 and 3, spilling into 5 and 6.
    for (ci, main, spill) in [(1usize, 2usize, 5usize), (2, 3, 6)] {
        let class = &cls[ci];
        let target = targets[main - 1];
        let t_members: Vec<usize> = class.iter().copied().filter(|&v| in_t[v]).collect();
        if t_members.len() > target {
            return Err(Error::internal(format!(
                "{} second-neighbourhood vertices overflow colour {main}",
                t_members.len()
            )));
        }
        let mut taken = t_members;
        for &v in class.iter() {
            if taken.len() == target {
                break;
            }
            if !in_t[v] {
                taken.push(v);
            }
        }
        for &v in &taken {
            partial.set(v, main);
        }
        for &v in class.iter() {
            if partial.get(v).is_none() {
                partial.set(v, spill);
            }
        }
        if partial.class_size(spill) > targets[spill - 1] {
            return Err(Error::internal(format!(
                "the colour-{spill} spill exceeds its target"
            )));
        }
    }
    let budget = ColorBudget::from_partial(n, 6, &partial)?;
    for j in 1..=5 {
        if budget.rem(6) < budget.rem(j) {
            return Err(Error::internal(format!(
                "colour 6 must start with the largest remaining quota, but colour {j} \
                 holds {} > {}",
                budget.rem(j),
                budget.rem(6)
            )));
        }
    }
    if budget.rem(1) != 0 {
        return Err(Error::internal("colour 1 must be fully placed before the fan"));
    }
    if budget.rem(5) + 1 < budget.rem(6) {
        // The skewed branch: colour 2 is necessarily full, and the counting
        // identity leaves enough small-colour room for the jumps.
        if budget.rem(2) != 0 {
            return Err(Error::internal(
                "a skewed colour-6 surplus with unplaced colour-2 quota",
            ));
        }
        let g2 = gp
            .n()
            .checked_sub(k - 1 + targets[1])
            .ok_or_else(|| Error::internal("the seeded classes overfill the outside"))?;
        let bound = (targets[2] + targets[3] + targets[4]) as i64 - targets[5] as i64 - 3;
        if (g2 as i64) > bound {
            return Err(Error::internal(format!(
                "the unseeded outside holds {g2} vertices, over the skew bound {bound}"
            )));
        }
        let small: usize = budget.n_j_rem[2..5].iter().sum();
        if small < targets[5] + 3 {
            return Err(Error::internal(
                "the skewed branch needs three spare small-colour slots",
            ));
        }
    }
    scratch.g_prime = Some((gp, gback));
    scratch.classes = Some(cls);
    let (col, _trace) = algorithm1_extend_traced(g, w, partial, budget, ExtendMode::SmallT)?;
    col.verify_equitable(g)?;
    Ok((col, scratch))
}

// ---------------------------------------------------------------------------
// One dangerous vertex, big second neighbourhood
// ---------------------------------------------------------------------------

/// A pared path pair, recorded for reattachment in reverse order.
enum PairRec {
    /// Two vertices taken from a path end; `anchor` is the vertex the pair
    /// used to continue into.
    Outer {
        end: usize,
        inner: usize,
        anchor: usize,
    },
    /// A whole two-vertex path.
    Last { u: usize, v: usize },
}

/// Equitable 6-colouring of a saturated graph whose single dangerous vertex
/// `w` has `2·d(w) < n` and a second neighbourhood `T` carrying an
/// independent set of at least `⌊n/6⌋` vertices: reduce the components far
/// from `w` through reducible configurations, pare the paths of `T` down to
/// short stubs, split everything into two balanced forests that alternate
/// along `T` and the fan, undo the reductions, and 3-colour each forest
/// equitably.
pub fn color_one_dangerous_big_t(g: &Graph, w: usize) -> Result<Coloring> {
    big_t_pipeline(g, w).map(|p| p.0)
}

fn big_t_pipeline(g: &Graph, w: usize) -> Result<(Coloring, OneDangerousScratch)> {
    let n = g.n();
    if n < 7 {
        return Err(Error::TooSmall(format!(
            "the six-colour constructions start at 7 vertices, got {n}"
        )));
    }
    let report = validate_embedding(g);
    if !report.is_maximal {
        return Err(Error::NotMaximal(
            "the dangerous-vertex constructions need a saturated graph".into(),
        ));
    }
    let d = g.degree(w);
    let threshold_dangerous = 2 * ceil_div(n, 6) + 4;
    if d < threshold_dangerous {
        return Err(Error::TooSmall(format!(
            "vertex {w} has degree {d} below the dangerous threshold {threshold_dangerous}"
        )));
    }
    let k = n / 6;
    let mut scratch = one_dangerous_scratch(g, w)?;
    if scratch.alpha_t < k {
        return Err(Error::TooSmall(format!(
            "the second neighbourhood only supports an independent set of {} < ⌊n/6⌋ = {k}; \
             the small-T construction applies",
            scratch.alpha_t
        )));
    }
    let dist = bfs_distances(g, w);
    let far = |v: usize| matches!(dist[v], Some(dd) if dd >= 3);
    let xs = neighbors_in_rotation(g, w)?;
    let mut in_x = vec![false; n];
    for &x in &xs {
        in_x[x] = true;
    }
    let mut in_t = vec![false; n];
    for &tv in &scratch.t {
        in_t[tv] = true;
    }

    // ---- far-component reduction --------------------------------------
    let mut alive = vec![true; n];
    let mut config_removals: Vec<Removal> = Vec::new();
    while let Some(comp) = next_far_component(g, &dist, &alive) {
        let mut in_comp = vec![false; n];
        for &c in &comp {
            in_comp[c] = true;
        }
        let mut boundary: Vec<usize> = comp
            .iter()
            .flat_map(|&c| g.neighbors(c).iter().copied())
            .filter(|&u| alive[u] && !in_comp[u])
            .collect();
        boundary.sort_unstable();
        boundary.dedup();
        if boundary.len() != 2 || !boundary.iter().all(|&y| in_t[y]) {
            return Err(Error::internal(format!(
                "a far component must hang from two adjacent second-neighbourhood \
                 vertices, found {boundary:?}"
            )));
        }
        let (y1, y2) = (boundary[0], boundary[1]);
        if !g.has_edge(y1, y2) {
            return Err(Error::internal(
                "the two anchors of a far component must be adjacent",
            ));
        }
        let apexes: Vec<usize> = xs
            .iter()
            .copied()
            .filter(|&x| g.has_edge(x, y1) && g.has_edge(x, y2))
            .collect();
        if apexes.len() != 1 {
            return Err(Error::internal(format!(
                "expected one fan vertex over the anchor edge ({y1}, {y2}), found {}",
                apexes.len()
            )));
        }
        let mut members = comp.clone();
        members.extend([apexes[0], y1, y2]);
        members.sort_unstable();
        let (h, hback) = g.induced(&members);
        let lpos = |gv: usize| {
            members
                .binary_search(&gv)
                .map_err(|_| Error::internal("a pocket member went missing"))
        };
        let cfg = find_reducible(&h, Some((lpos(y1)?, lpos(y2)?)))?;
        cfg.verify(&h)?;
        let rem = globalize_removal(&Removal::from_config(&cfg), &hback);
        for v in rem.removed() {
            if !in_comp[v] {
                return Err(Error::internal(
                    "a reducible configuration reached outside its far component",
                ));
            }
            alive[v] = false;
        }
        config_removals.push(rem);
    }
    let survivors: Vec<usize> = (0..n).filter(|&v| far(v) && alive[v]).collect();
    for &sv in &survivors {
        let live_nb: Vec<usize> = g
            .neighbors(sv)
            .iter()
            .copied()
            .filter(|&u| alive[u])
            .collect();
        let ok = !live_nb.is_empty()
            && live_nb.len() <= 2
            && live_nb.iter().all(|&u| in_t[u])
            && (live_nb.len() == 1 || g.has_edge(live_nb[0], live_nb[1]));
        if !ok {
            return Err(Error::internal(format!(
                "survivor {sv} is not pendant on the second neighbourhood"
            )));
        }
    }
    let live: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    scratch.g_prime = Some(g.induced(&live));
    let core: Vec<usize> = (0..n)
        .filter(|&v| v == w || in_x[v] || in_t[v])
        .collect();
    scratch.g_double = Some(g.induced(&core));

    // ---- special vertices: two fan neighbours -------------------------
    let mut x_nbrs: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &tv in &scratch.t {
        let mut nb: Vec<usize> = g
            .neighbors(tv)
            .iter()
            .copied()
            .filter(|&u| in_x[u])
            .collect();
        nb.sort_unstable();
        match nb.len() {
            0 => {
                return Err(Error::internal(format!(
                    "second-neighbourhood vertex {tv} does not touch the fan"
                )))
            }
            1 | 2 => {}
            more => {
                return Err(Error::internal(format!(
                    "second-neighbourhood vertex {tv} touches {more} fan vertices; \
                     outerplanarity allows two"
                )))
            }
        }
        if nb.len() == 2 && !g.has_edge(nb[0], nb[1]) {
            return Err(Error::internal(format!(
                "the two fan neighbours of {tv} must be consecutive"
            )));
        }
        x_nbrs[tv] = nb;
    }
    let mut special_of_path: Vec<Option<usize>> = Vec::with_capacity(scratch.t_paths.len());
    for path in &scratch.t_paths {
        let specials: Vec<usize> = path
            .iter()
            .copied()
            .filter(|&tv| x_nbrs[tv].len() == 2)
            .collect();
        if specials.len() > 1 {
            return Err(Error::internal(format!(
                "two vertices on one second-neighbourhood path see two fan vertices each: \
                 {specials:?}"
            )));
        }
        special_of_path.push(specials.first().copied());
    }

    // ---- paring --------------------------------------------------------
    let mut pared: Vec<PairRec> = Vec::new();
    let mut final_paths: Vec<Vec<usize>> = Vec::new();
    for (pi, path) in scratch.t_paths.iter().enumerate() {
        let sp = special_of_path[pi];
        let mut cur: VecDeque<usize> = path.iter().copied().collect();
        while cur.len() >= 4 {
            let l = cur.len();
            let f_ok = sp.map_or(true, |s| s != cur[0] && s != cur[1]);
            let b_ok = sp.map_or(true, |s| s != cur[l - 1] && s != cur[l - 2]);
            let take_front = if f_ok && b_ok { cur[0] < cur[l - 1] } else { f_ok };
            let (end, inner, anchor) = if take_front {
                (cur[0], cur[1], cur[2])
            } else {
                (cur[l - 1], cur[l - 2], cur[l - 3])
            };
            pared.push(PairRec::Outer { end, inner, anchor });
            if take_front {
                cur.pop_front();
                cur.pop_front();
            } else {
                cur.pop_back();
                cur.pop_back();
            }
        }
        if cur.len() == 2 {
            pared.push(PairRec::Last {
                u: cur[0],
                v: cur[1],
            });
            cur.clear();
        }
        match cur.len() {
            0 => {}
            1 | 3 => final_paths.push(cur.into_iter().collect()),
            _ => return Err(Error::internal("paring left a path of unexpected length")),
        }
    }
    let a = final_paths.iter().filter(|p| p.len() == 3).count();
    let b = final_paths.len() - a;
    scratch.a = a;
    scratch.b = b;
    let mut pared_gone = vec![false; n];
    for rec in &pared {
        match *rec {
            PairRec::Outer { end, inner, .. } => {
                pared_gone[end] = true;
                pared_gone[inner] = true;
            }
            PairRec::Last { u, v } => {
                pared_gone[u] = true;
                pared_gone[v] = true;
            }
        }
    }
    let triple: Vec<usize> = core.iter().copied().filter(|&v| !pared_gone[v]).collect();
    scratch.g_triple = Some(g.induced(&triple));

    // ---- core partition ------------------------------------------------
    let mut part: Vec<Option<bool>> = vec![None; n]; // Some(true) = first forest
    let mut counts = [0usize, 0usize];
    macro_rules! put {
        ($v:expr, $f1:expr) => {{
            let v: usize = $v;
            let f1: bool = $f1;
            if part[v].is_some() {
                return Err(Error::internal(format!("vertex {v} placed twice")));
            }
            part[v] = Some(f1);
            counts[if f1 { 0 } else { 1 }] += 1;
        }};
    }
    put!(w, true);
    let mut finals_sorted: Vec<&Vec<usize>> = final_paths.iter().collect();
    finals_sorted.sort_by_key(|p| p.iter().copied().min().unwrap_or(usize::MAX));
    if 3 * (3 * a + b) >= n {
        // Half the stub paths send their independent layer to the first
        // forest; the fan alternates starting from the second.
        let half = (a + b) / 2;
        for (idx, path) in finals_sorted.iter().enumerate() {
            let f1_extra = idx < half;
            match path[..] {
                [t1, t2, t3] => {
                    put!(t1, f1_extra);
                    put!(t3, f1_extra);
                    put!(t2, !f1_extra);
                }
                [t] => put!(t, f1_extra),
                _ => return Err(Error::internal("a stub path has unexpected length")),
            }
        }
        for (i, &x) in xs.iter().enumerate() {
            put!(x, i % 2 == 1);
        }
    } else {
        // Every independent layer goes to the first forest; the second
        // forest instead takes a block of fan vertices clear of the stub
        // centres, and the rest of the fan alternates.
        for path in &final_paths {
            match path[..] {
                [t1, t2, t3] => {
                    put!(t1, true);
                    put!(t3, true);
                    put!(t2, false);
                }
                [t] => put!(t, true),
                _ => return Err(Error::internal("a stub path has unexpected length")),
            }
        }
        let mut reserved = vec![false; n];
        for path in &final_paths {
            if let [_, t2, _] = path[..] {
                for &xn in &x_nbrs[t2] {
                    reserved[xn] = true;
                }
            }
        }
        let block_size = a + b + 1;
        let mut in_block = vec![false; n];
        let mut got = 0;
        for &x in &xs {
            if got == block_size {
                break;
            }
            if !reserved[x] {
                in_block[x] = true;
                got += 1;
            }
        }
        if got < block_size {
            return Err(Error::internal(
                "not enough unreserved fan vertices for the block",
            ));
        }
        for &x in &xs {
            if in_block[x] {
                put!(x, false);
            }
        }
        let mut alt = 0;
        for &x in &xs {
            if !in_block[x] {
                put!(x, alt % 2 == 1);
                alt += 1;
            }
        }
    }

    // ---- reattach pared pairs (reverse order) --------------------------
    for rec in pared.iter().rev() {
        match *rec {
            PairRec::Outer { end, inner, anchor } => {
                let af = part[anchor]
                    .ok_or_else(|| Error::internal("a pared pair's anchor is unplaced"))?;
                put!(inner, !af);
                put!(end, af);
            }
            PairRec::Last { u, v } => {
                // The vertex with two fan neighbours dodges the one that only
                // touches it; without such a vertex, the lower end dodges its
                // unique fan neighbour.
                let (first, second) = if x_nbrs[u].len() == 2 {
                    (u, v)
                } else if x_nbrs[v].len() == 2 {
                    (v, u)
                } else {
                    (u.min(v), u.max(v))
                };
                let xanchor = if x_nbrs[first].len() == 2 {
                    let (xa, xb) = (x_nbrs[first][0], x_nbrs[first][1]);
                    let cnt = |x: usize| {
                        [u, v].iter().filter(|&&e| g.has_edge(x, e)).count()
                    };
                    match (cnt(xa), cnt(xb)) {
                        (1, c) if c != 1 => xa,
                        (c, 1) if c != 1 => xb,
                        _ => xa.min(xb),
                    }
                } else {
                    x_nbrs[first][0]
                };
                let xf = part[xanchor]
                    .ok_or_else(|| Error::internal("a pair's fan anchor is unplaced"))?;
                put!(first, !xf);
                put!(second, xf);
            }
        }
    }

    // ---- survivors -----------------------------------------------------
    for &sv in &survivors {
        let f1 = counts[0] <= counts[1];
        put!(sv, f1);
    }

    // ---- reducible configurations (reverse order) ----------------------
    let mut in_f1: Vec<bool> = (0..n).map(|v| part[v] == Some(true)).collect();
    for rem in config_removals.iter().rev() {
        reattach(rem, &mut in_f1, &mut counts);
    }
    for v in 0..n {
        if part[v].is_none() {
            part[v] = Some(in_f1[v]);
        }
    }

    // ---- audits --------------------------------------------------------
    let f1: Vec<usize> = (0..n).filter(|&v| part[v] == Some(true)).collect();
    let f2: Vec<usize> = (0..n).filter(|&v| part[v] == Some(false)).collect();
    if counts[0] != f1.len() || counts[1] != f2.len() {
        return Err(Error::internal("the part counters drifted from the parts"));
    }
    if counts[0].abs_diff(counts[1]) > 1 {
        return Err(Error::internal(format!(
            "the forest halves are unbalanced: {} vs {}",
            counts[0], counts[1]
        )));
    }
    for &tv in &scratch.t {
        for &u in g.neighbors(tv) {
            if u > tv && in_t[u] && part[u] == part[tv] {
                return Err(Error::internal(format!(
                    "adjacent second-neighbourhood vertices {tv} and {u} share a part"
                )));
            }
        }
    }
    let (f1g, f1b) = g.induced(&f1);
    let (f2g, f2b) = g.induced(&f2);
    for (fg, fb) in [(&f1g, &f1b), (&f2g, &f2b)] {
        if !fg.is_forest() {
            return Err(Error::internal("a part of the split is not a forest"));
        }
        for (lv, &gv) in fb.iter().enumerate() {
            if gv == w {
                continue;
            }
            if fg.degree(lv) > (g.degree(gv) + 2) / 2 {
                return Err(Error::internal(format!(
                    "vertex {gv} keeps {} of its {} neighbours inside its part",
                    fg.degree(lv),
                    g.degree(gv)
                )));
            }
        }
    }
    let lw = f1
        .binary_search(&w)
        .map_err(|_| Error::internal("the hub fell out of the first forest"))?;
    let wit = alpha_v_exact(&f1g, lw)?;
    if wit.size < f1.len() / 3 {
        return Err(Error::internal(format!(
            "the hub only reaches an independent set of {} in its forest of {}",
            wit.size,
            f1.len()
        )));
    }

    // ---- colour the halves --------------------------------------------
    let mut col = Coloring::new(n, 6);
    for (offset, (fg, fb)) in [(0usize, (&f1g, &f1b)), (3, (&f2g, &f2b))] {
        let sub = equitable_color_forest(fg, 3).map_err(|e| {
            Error::internal(format!("a forest half refused its 3-colouring: {e}"))
        })?;
        for (lv, &gv) in fb.iter().enumerate() {
            let c = sub
                .get(lv)
                .ok_or_else(|| Error::internal("the forest colouring left a vertex out"))?;
            col.set(gv, c + offset);
        }
    }
    col.verify_equitable(g)?;
    Ok((col, scratch))
}

/// Lowest-id component (two or more vertices) of the still-alive far region.
fn next_far_component(
    g: &Graph,
    dist: &[Option<usize>],
    alive: &[bool],
) -> Option<Vec<usize>> {
    let n = g.n();
    let far_alive =
        |v: usize| alive[v] && matches!(dist[v], Some(dd) if dd >= 3);
    let mut seen = vec![false; n];
    for v in 0..n {
        if !far_alive(v) || seen[v] {
            continue;
        }
        let mut comp = vec![v];
        seen[v] = true;
        let mut qi = 0;
        while qi < comp.len() {
            let c = comp[qi];
            qi += 1;
            for &u in g.neighbors(c) {
                if far_alive(u) && !seen[u] {
                    seen[u] = true;
                    comp.push(u);
                }
            }
        }
        if comp.len() >= 2 {
            comp.sort_unstable();
            return Some(comp);
        }
    }
    None
}

fn globalize_removal(rem: &Removal, back: &[usize]) -> Removal {
    match *rem {
        Removal::A { x1, x2, y2 } => Removal::A {
            x1: back[x1],
            x2: back[x2],
            y2: back[y2],
        },
        Removal::B { v, x1, x2, y1, y2 } => Removal::B {
            v: back[v],
            x1: back[x1],
            x2: back[x2],
            y1: back[y1],
            y2: back[y2],
        },
    }
}

// ---------------------------------------------------------------------------
// The driver
// ---------------------------------------------------------------------------

/// Equitable s-colouring of an outerplanar graph for any s ≥ 6.
///
/// Checks the hypothesis, peels down to six colours if s > 6, saturates the
/// residual, dispatches on the danger classification, and verifies the
/// combined colouring against the input before returning it.
///
/// # Example
/// ```
/// use equicolor::outerplanar::equitable_color_outerplanar;
/// use equicolor::Graph;
///
/// let path = Graph::from_edges(20, &(0..19).map(|i| (i, i + 1)).collect::<Vec<_>>());
/// let col = equitable_color_outerplanar(&path, 10).unwrap();
/// assert_eq!(col.sorted_sizes(), vec![2; 10]);
/// ```
pub fn equitable_color_outerplanar(g: &Graph, s: usize) -> Result<Coloring> {
    if s < 6 {
        return Err(Error::TooSmall(format!(
            "the constructive pipeline starts at six colours, got {s}; \
             smaller counts go through the exhaustive oracle"
        )));
    }
    let n = g.n();
    let report = validate_embedding(g);
    if !report.is_outerplanar {
        return Err(Error::NotOuterplanar(report.violations.join("; ")));
    }
    check_hypothesis(g, s)?;
    if n <= s {
        let mut col = Coloring::new(n, s);
        for v in 0..n {
            col.set(v, v + 1);
        }
        col.verify_equitable(g)?;
        return Ok(col);
    }
    let reduction = if s > 6 {
        reduce_color_count(g, s)?
    } else {
        ColorReduction {
            peels: Vec::new(),
            residual: g.clone(),
            residual_vertices: (0..n).collect(),
        }
    };
    let mut col = Coloring::new(n, s);
    for peel in &reduction.peels {
        for &v in &peel.vertices {
            col.set(v, peel.color);
        }
    }
    let sub = color_residual_six(&reduction.residual)?;
    for (lv, &gv) in reduction.residual_vertices.iter().enumerate() {
        let c = sub
            .get(lv)
            .ok_or_else(|| Error::internal("the residual colouring left a vertex out"))?;
        col.set(gv, c);
    }
    col.verify_equitable(g)?;
    Ok(col)
}

/// Six-colour core: saturate, classify, dispatch, verify against the
/// (pre-saturation) residual.
fn color_residual_six(res: &Graph) -> Result<Coloring> {
    let rn = res.n();
    if rn <= 6 {
        let mut col = Coloring::new(rn, 6);
        for v in 0..rn {
            col.set(v, v + 1);
        }
        col.verify_equitable(res)?;
        return Ok(col);
    }
    let sat = saturate_with_degree_control(res)?;
    let gs = &sat.supergraph;
    let danger = classify_danger(gs)?;
    let col = if danger.near.len() >= 2 {
        let mut hubs = danger.near.clone();
        // Highest degree first, lowest id on ties.
        hubs.sort_by(|&x, &y| gs.degree(y).cmp(&gs.degree(x)).then(x.cmp(&y)));
        color_two_dangerous(gs, hubs[0], hubs[1])?
    } else if let [w] = danger.dangerous[..] {
        if 2 * gs.degree(w) >= rn {
            color_one_dangerous_highdeg_in(gs, Some(res), w)?
        } else {
            let sc = one_dangerous_scratch(gs, w)?;
            if sc.alpha_t < rn / 6 {
                color_one_dangerous_small_t(gs, w)?
            } else {
                color_one_dangerous_big_t(gs, w)?
            }
        }
    } else {
        color_zero_dangerous(res)?
    };
    col.verify_equitable(res)?;
    Ok(col)
}

// ---------------------------------------------------------------------------
// Experimental: reducing five colours to four
// ---------------------------------------------------------------------------

/// Certificate of a five-to-four reduction: which case fired, the peeled
/// colour-5 class, and the verified equitable 5-colouring assembled from the
/// peel plus an exhaustive 4-colouring of the residual.
#[cfg(feature = "experimental")]
#[derive(Debug, Clone)]
pub struct PeelCertificate {
    /// Which construction produced the peel (`"case-1"`, `"case-2-joint"`,
    /// `"case-2-partner-peel"`, `"case-2-disjoint"`, `"case-3.1-K3"`,
    /// `"case-3.2-P3"`, `"case-3.3-P3bar"`, or `"case-3.4-K3bar"`).
    pub case_label: String,
    /// The peeled independent set, ascending.
    pub peeled: Vec<usize>,
    /// The full verified equitable 5-colouring (colour 5 = the peel).
    pub coloring: Coloring,
}

/// Peels one colour class off a five-colour instance so that the residual
/// still satisfies the four-colour hypothesis, then finishes the residual
/// with the exhaustive search. The peel construction is case-split on how
/// many vertices have degree at least `⌈n/5⌉ + 4`.
///
/// The four-colour base case rests on an open conjecture, so the finish is
/// an oracle search rather than a construction; a search miss reports
/// [`Error::Unsolved`].
#[cfg(feature = "experimental")]
pub fn reduce_5_to_4(g: &Graph) -> Result<PeelCertificate> {
    use crate::oracle::{exhaustive_equitable_with, SearchBudget};

    let n = g.n();
    if n < 10 {
        return Err(Error::TooSmall(format!(
            "the five-to-four reduction starts at 10 vertices, got {n}"
        )));
    }
    let report = validate_embedding(g);
    if !report.is_outerplanar {
        return Err(Error::NotOuterplanar(report.violations.join("; ")));
    }
    check_hypothesis(g, 5)?;
    let k5 = n / 5;
    let big = ceil_div(n, 5) + 4;
    let s_set: Vec<usize> = (0..n).filter(|&v| g.degree(v) >= big).collect();
    let (case_label, peeled) = match s_set.len() {
        0 | 1 => {
            let w = (0..n)
                .max_by(|&x, &y| g.degree(x).cmp(&g.degree(y)).then(y.cmp(&x)))
                .expect("n ≥ 10");
            (
                "case-1".to_string(),
                anchored_independent_set(g, None, w, k5, &[])?,
            )
        }
        2 => five_to_four_case2(g, s_set[0], s_set[1], k5)?,
        _ => five_to_four_case3(g, &s_set, k5)?,
    };
    // The peel must be independent: cheap to re-check.
    for (ai, &u) in peeled.iter().enumerate() {
        for &v in &peeled[ai + 1..] {
            if g.has_edge(u, v) {
                return Err(Error::internal(format!(
                    "the {case_label} peel is not independent at ({u}, {v})"
                )));
            }
        }
    }
    let mut gone = vec![false; n];
    for &v in &peeled {
        gone[v] = true;
    }
    let keep: Vec<usize> = (0..n).filter(|&v| !gone[v]).collect();
    let (residual, back) = g.induced(&keep);
    if let Err(e) = check_hypothesis(&residual, 4) {
        return Err(Error::internal(format!(
            "the {case_label} residual lost the four-colour hypothesis: {e}"
        )));
    }
    let sub = exhaustive_equitable_with(&residual, 4, &mut SearchBudget::from_env(), true)?
        .ok_or_else(|| {
            Error::Unsolved(format!(
                "the four-colour base search found no equitable colouring for the \
                 {case_label} residual"
            ))
        })?;
    let mut coloring = Coloring::new(n, 5);
    for &v in &peeled {
        coloring.set(v, 5);
    }
    for (lv, &gv) in back.iter().enumerate() {
        let c = sub
            .get(lv)
            .ok_or_else(|| Error::internal("the base colouring left a vertex out"))?;
        coloring.set(gv, c);
    }
    coloring.verify_equitable(g)?;
    Ok(PeelCertificate {
        case_label,
        peeled,
        coloring,
    })
}

/// Alternation classes of a set inducing disjoint paths: per path, the
/// even-position layer (from the lower-id end) and the odd layer. Returns
/// `(bigger, smaller)` by total size, ties keeping the even layer first.
#[cfg(feature = "experimental")]
fn path_layers(g: &Graph, set: &[usize]) -> Result<(Vec<usize>, Vec<usize>)> {
    let paths = induced_paths(g, set)?;
    let mut even = Vec::new();
    let mut odd = Vec::new();
    for p in &paths {
        for (i, &v) in p.iter().enumerate() {
            if i % 2 == 0 {
                even.push(v);
            } else {
                odd.push(v);
            }
        }
    }
    even.sort_unstable();
    odd.sort_unstable();
    if even.len() >= odd.len() {
        Ok((even, odd))
    } else {
        Ok((odd, even))
    }
}

#[cfg(feature = "experimental")]
fn five_to_four_case2(
    g: &Graph,
    w1: usize,
    w2: usize,
    k5: usize,
) -> Result<(String, Vec<usize>)> {
    use crate::oracle::alpha_exact;

    let n = g.n();
    // (a) A joint independent set through both hubs.
    if !g.has_edge(w1, w2) {
        let mut banned = vec![false; n];
        for &u in g.neighbors(w1).iter().chain(g.neighbors(w2).iter()) {
            banned[u] = true;
        }
        banned[w1] = false;
        banned[w2] = false;
        let keep: Vec<usize> =
            (0..n).filter(|&v| !banned[v] && v != w1 && v != w2).collect();
        let (h, back) = g.induced(&keep);
        let (size, wit) = alpha_exact(&h)?;
        if size + 2 >= k5 {
            let mut members: Vec<usize> = wit.into_iter().map(|lv| back[lv]).collect();
            members.sort_unstable();
            members.truncate(k5 - 2);
            members.extend([w1, w2]);
            members.sort_unstable();
            return Ok(("case-2-joint".to_string(), members));
        }
    }
    // (b) Peel the partner's witness when it nearly covers a hub's fan.
    let i1 = anchored_independent_set(g, None, w1, k5, &[])?;
    let i2 = anchored_independent_set(g, None, w2, k5, &[])?;
    let overlap = |w: usize, set: &[usize]| -> usize {
        set.iter().filter(|&&v| g.has_edge(w, v)).count()
    };
    let cap = ceil_div(n, 5) + 3;
    if g.degree(w1) - overlap(w1, &i2) <= cap {
        return Ok(("case-2-partner-peel".to_string(), i2));
    }
    if g.degree(w2) - overlap(w2, &i1) <= cap {
        return Ok(("case-2-partner-peel".to_string(), i1));
    }
    // (c) Disjoint fan segments clear of all short hub-to-hub paths.
    let mut peel = Vec::new();
    for (w, other, partner_set) in [(w1, w2, &i2), (w2, w1, &i1)] {
        let on_short_path = |x: usize| {
            g.has_edge(x, other)
                || g.neighbors(x)
                    .iter()
                    .any(|&y| y != w && y != other && g.has_edge(y, other))
        };
        let s_i: Vec<usize> = g
            .neighbors(w)
            .iter()
            .copied()
            .filter(|&x| !partner_set.contains(&x) && !on_short_path(x))
            .collect();
        if s_i.len() + 2 < ceil_div(n, 5) + 4 {
            return Err(Error::internal(format!(
                "the pruned fan of hub {w} holds {} vertices, fewer than ⌈n/5⌉ + 2",
                s_i.len()
            )));
        }
        let (bigger, _) = path_layers(g, &s_i)?;
        peel.extend(bigger);
    }
    peel.sort_unstable();
    let want = (n + 1) / 5;
    if peel.len() < want {
        return Err(Error::internal(
            "the two fan layers cannot fill a colour class",
        ));
    }
    peel.truncate(want);
    Ok(("case-2-disjoint".to_string(), peel))
}

#[cfg(feature = "experimental")]
fn five_to_four_case3(g: &Graph, s_set: &[usize], k5: usize) -> Result<(String, Vec<usize>)> {
    let n = g.n();
    // Choose the triple spanned by the smallest Steiner tree (exact for
    // three terminals), ties lexicographic.
    let dists: Vec<Vec<Option<usize>>> =
        s_set.iter().map(|&w| bfs_distances(g, w)).collect();
    let mut best: Option<(usize, [usize; 3])> = None;
    for i in 0..s_set.len() {
        for j in i + 1..s_set.len() {
            for l in j + 1..s_set.len() {
                let size = (0..n)
                    .filter_map(|h| {
                        Some(dists[i][h]? + dists[j][h]? + dists[l][h]? + 1)
                    })
                    .min();
                let Some(size) = size else { continue };
                let triple = [s_set[i], s_set[j], s_set[l]];
                if best.map_or(true, |(bs, bt)| (size, triple) < (bs, bt)) {
                    best = Some((size, triple));
                }
            }
        }
    }
    let (_, triple) = best.ok_or_else(|| {
        Error::internal("three high-degree vertices exist but no triple is connected")
    })?;
    // Relabel by the shape the triple induces.
    let [mut w1, mut w2, mut w3] = triple;
    let e12 = g.has_edge(w1, w2);
    let e13 = g.has_edge(w1, w3);
    let e23 = g.has_edge(w2, w3);
    let label = match (e12 as u8) + (e13 as u8) + (e23 as u8) {
        3 => "case-3.1-K3",
        2 => {
            // Centre (adjacent to both others) first.
            let centre = if e12 && e13 {
                w1
            } else if e12 && e23 {
                w2
            } else {
                w3
            };
            let rest: Vec<usize> =
                triple.iter().copied().filter(|&v| v != centre).collect();
            (w1, w2, w3) = (centre, rest[0], rest[1]);
            "case-3.2-P3"
        }
        1 => {
            // The isolated vertex first.
            let lone = if !e12 && !e13 {
                w1
            } else if !e12 && !e23 {
                w2
            } else {
                w3
            };
            let rest: Vec<usize> =
                triple.iter().copied().filter(|&v| v != lone).collect();
            (w1, w2, w3) = (lone, rest[0], rest[1]);
            "case-3.3-P3bar"
        }
        _ => "case-3.4-K3bar",
    };
    // Fan remainders clear of the other two hubs' closed neighbourhoods.
    let closed = |w: usize| -> Vec<bool> {
        let mut c = vec![false; n];
        c[w] = true;
        for &u in g.neighbors(w) {
            c[u] = true;
        }
        c
    };
    let (c1, c2, c3) = (closed(w1), closed(w2), closed(w3));
    let fan = |w: usize, block_a: &[bool], block_b: &[bool]| -> Vec<usize> {
        g.neighbors(w)
            .iter()
            .copied()
            .filter(|&x| !block_a[x] && !block_b[x])
            .collect()
    };
    let mut s: [Vec<usize>; 3] = [
        fan(w1, &c2, &c3),
        fan(w2, &c1, &c3),
        fan(w3, &c1, &c2),
    ];
    // Remove cross edges pairwise: always drop from the currently larger
    // side (ties: the first of the pair) the vertex meeting the most cross
    // edges (ties: lowest id).
    for (pi, pj) in [(0, 1), (0, 2), (1, 2)] {
        loop {
            let cross: Vec<(usize, usize)> = s[pi]
                .iter()
                .flat_map(|&u| {
                    s[pj]
                        .iter()
                        .filter(move |&&v| g.has_edge(u, v))
                        .map(move |&v| (u, v))
                })
                .collect();
            if cross.is_empty() {
                break;
            }
            let from_i = s[pi].len() >= s[pj].len();
            let side = if from_i { pi } else { pj };
            let worst = s[side]
                .iter()
                .copied()
                .map(|u| {
                    let hits = cross
                        .iter()
                        .filter(|&&(a, b)| if from_i { a == u } else { b == u })
                        .count();
                    (hits, u)
                })
                .filter(|&(hits, _)| hits > 0)
                .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)))
                .map(|(_, u)| u)
                .expect("a cross edge names at least one vertex on this side");
            s[side].retain(|&u| u != worst);
        }
    }
    // w1 plus the smaller alternation layers of the other two fans.
    let mut peel = vec![w1];
    for fan_set in &s[1..] {
        let (_, smaller) = path_layers(g, fan_set)?;
        peel.extend(smaller);
    }
    peel.sort_unstable();
    peel.dedup();
    if peel.len() < k5 {
        return Err(Error::internal(format!(
            "the triple construction only reaches {} of the {k5} needed vertices",
            peel.len()
        )));
    }
    // Keep w1 and the lowest ids.
    peel.retain(|&v| v != w1);
    peel.truncate(k5 - 1);
    peel.push(w1);
    peel.sort_unstable();
    Ok((label.to_string(), peel))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::equitable_targets;
    use crate::construct::{
        double_fan, random_maximal_outerplanar, random_tree, stalactite_chain,
    };
    use crate::oracle::{enumerate_maximal_outerplanar_dedup, exhaustive_equitable};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, &(0..n - 1).map(|i| (i, i + 1)).collect::<Vec<_>>())
    }

    /// Apex 0 over the path 1..n-1, with the round-trip outer order.
    fn fan(n: usize) -> Graph {
        let mut e: Vec<(usize, usize)> = (1..n).map(|v| (0, v)).collect();
        e.extend((1..n - 1).map(|v| (v, v + 1)));
        let mut g = Graph::from_edges(n, &e);
        g.set_outer_order((0..n).collect()).unwrap();
        g
    }

    /// Saturated 36-vertex graph whose only dangerous vertex 0 has degree
    /// 20, so 2·d ≥ n: hub chords to 9..26, an apex at 9 over 1..7, and an
    /// apex at 26 over 28..35.
    fn fixture_highdeg_36() -> Graph {
        let mut e: Vec<(usize, usize)> = (0..35).map(|i| (i, i + 1)).collect();
        e.push((0, 35));
        e.extend((9..=26).map(|v| (0, v)));
        e.extend((1..=7).map(|v| (9, v)));
        e.extend((28..=34).map(|v| (26, v)));
        e.push((26, 35));
        let mut g = Graph::from_edges(36, &e);
        g.set_outer_order((0..36).collect()).unwrap();
        g
    }

    /// Saturated 48-vertex graph whose only dangerous vertex 0 has degree
    /// 20 < n/2 and whose distance-two layer is {2, 14, 33, 46}: two
    /// two-vertex paths, so its independent sets stay below ⌊n/6⌋ = 8.
    fn fixture_smallt_48() -> Graph {
        let mut e: Vec<(usize, usize)> = (0..47).map(|i| (i, i + 1)).collect();
        e.push((0, 47));
        e.extend((15..=32).map(|v| (0, v)));
        e.extend([(1, 15), (2, 15), (2, 14)]);
        e.extend((2..=6).map(|v| (8, v)));
        e.extend((10..=14).map(|v| (8, v)));
        e.extend([(47, 32), (46, 32), (46, 33)]);
        e.extend((33..=38).map(|v| (40, v)));
        e.extend((42..=46).map(|v| (40, v)));
        let mut g = Graph::from_edges(48, &e);
        g.set_outer_order((0..48).collect()).unwrap();
        g
    }

    /// 15-vertex fixture for the colour-cycling extension: hub 0, fan
    /// [1..9, 14], and a pre-coloured tail 10..13 that forces the jump to
    /// colour 6 mid-run.
    fn fixture_line6_15() -> Graph {
        let mut e: Vec<(usize, usize)> = (0..14).map(|i| (i, i + 1)).collect();
        e.push((0, 14));
        e.extend((2..=9).map(|v| (0, v)));
        e.extend([(9, 14), (9, 13), (9, 11), (11, 13)]);
        let mut g = Graph::from_edges(15, &e);
        g.set_outer_order((0..15).collect()).unwrap();
        g
    }

    #[derive(Clone, Copy)]
    enum Pocket {
        /// One vertex hanging under a fan edge.
        One,
        /// A two-vertex distance-two path.
        Two,
        /// A three-vertex distance-two path.
        Three,
        /// Two distance-two anchors over a two-vertex far component.
        FarPair,
        /// Two distance-two anchors around one far vertex that survives
        /// reduction.
        FarSingle,
    }

    /// Saturated one-hub graph built from "pockets" hung between chosen
    /// consecutive fan pairs (x_i, x_{i+1}); the hub 0 is adjacent to every
    /// x and the outer order is the identity.
    fn pocket_fixture(num_x: usize, pockets: &[(usize, Pocket)]) -> Graph {
        let mut xs = Vec::new();
        let mut placed: Vec<(usize, Pocket, Vec<usize>)> = Vec::new();
        let mut next = 1usize;
        for i in 1..=num_x {
            xs.push(next);
            next += 1;
            if let Some(&(_, kind)) = pockets.iter().find(|&&(at, _)| at == i) {
                assert!(i < num_x, "a pocket needs a fan pair");
                let size = match kind {
                    Pocket::One => 1,
                    Pocket::Two => 2,
                    Pocket::Three | Pocket::FarSingle => 3,
                    Pocket::FarPair => 4,
                };
                placed.push((i, kind, (next..next + size).collect()));
                next += size;
            }
        }
        let n = next;
        let mut edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
        edges.push((0, n - 1));
        for &x in &xs {
            if x != 1 && x != n - 1 {
                edges.push((0, x));
            }
        }
        for (i, kind, vs) in &placed {
            let l = xs[i - 1];
            let r = xs[*i];
            edges.push((l, r));
            match kind {
                Pocket::One => {}
                Pocket::Two => edges.push((vs[0], r)),
                Pocket::Three => {
                    edges.push((vs[0], r));
                    edges.push((vs[1], r));
                }
                Pocket::FarPair => {
                    edges.push((vs[0], vs[3]));
                    edges.push((vs[0], vs[2]));
                    edges.push((vs[0], r));
                }
                Pocket::FarSingle => {
                    edges.push((vs[0], vs[2]));
                    edges.push((vs[2], l));
                }
            }
        }
        let mut g = Graph::from_edges(n, &edges);
        g.set_outer_order((0..n).collect()).unwrap();
        g
    }

    /// 36-vertex big-T fixture: 16 fan vertices, a = 2 three-stubs and
    /// b = 4 singleton stubs after paring, landing in the blocked branch.
    fn fixture_bigt_36() -> Graph {
        use Pocket::*;
        pocket_fixture(
            16,
            &[
                (1, One),
                (2, One),
                (3, Three),
                (5, Three),
                (7, Two),
                (9, One),
                (11, FarPair),
                (13, FarSingle),
                (15, One),
            ],
        )
    }

    /// 46-vertex big-T fixture: 20 fan vertices, a = 4 and b = 4, landing
    /// in the alternating branch.
    fn fixture_bigt_46() -> Graph {
        use Pocket::*;
        pocket_fixture(
            20,
            &[
                (1, One),
                (2, One),
                (3, Three),
                (5, Three),
                (7, Three),
                (9, One),
                (11, FarPair),
                (13, FarSingle),
                (15, One),
                (17, Three),
                (19, Two),
            ],
        )
    }

    // ---- budgets -------------------------------------------------------

    #[test]
    fn budget_targets_partition_n_up_to_a_million() {
        for n in 0..=1_000_000 {
            let b = ColorBudget::new(n, 6);
            assert_eq!(b.n_j.iter().sum::<usize>(), n);
            assert_eq!(b.n_j[0], n / 6);
            assert_eq!(b.n_j[5], n.div_ceil(6));
        }
        for n in 0..=10_000usize {
            for s in 1..=12 {
                let b = ColorBudget::new(n, s);
                assert_eq!(b.n_j.iter().sum::<usize>(), n, "n = {n}, s = {s}");
                assert!(b.n_j.windows(2).all(|w| w[0] <= w[1]));
                let mut want = equitable_targets(n, s);
                want.reverse();
                assert_eq!(b.n_j, want);
            }
        }
    }

    #[test]
    fn budget_from_partial_subtracts_and_rejects_overfull() {
        let mut c = Coloring::new(13, 6);
        c.set(0, 6);
        c.set(1, 6);
        c.set(2, 1);
        let b = ColorBudget::from_partial(13, 6, &c).unwrap();
        assert_eq!(b.rem(6), 1);
        assert_eq!(b.rem(1), 1);
        assert_eq!(b.rem(2), 2);
        c.set(3, 1);
        c.set(4, 1);
        assert!(matches!(
            ColorBudget::from_partial(13, 6, &c),
            Err(Error::InternalAssertionFailed(_))
        ));
    }

    // ---- hypothesis ----------------------------------------------------

    #[test]
    fn hypothesis_fan_fifteen_at_seven_fails_at_apex() {
        match check_hypothesis(&fan(15), 7) {
            Err(Error::HypothesisViolated { vertex, alpha, need }) => {
                assert_eq!((vertex, alpha, need), (0, 1, 2));
            }
            other => panic!("expected an apex violation, got {other:?}"),
        }
    }

    #[test]
    fn hypothesis_matches_exact_alpha_on_small_graphs() {
        for n in 4..=8 {
            for g in enumerate_maximal_outerplanar_dedup(n).unwrap() {
                for s in 2..=8 {
                    let need = n / s;
                    let direct = (0..n)
                        .all(|v| alpha_v_exact(&g, v).unwrap().size >= need);
                    assert_eq!(
                        check_hypothesis(&g, s).is_ok(),
                        direct,
                        "n = {n}, s = {s}"
                    );
                }
            }
        }
    }

    // ---- colour-count reduction ----------------------------------------

    #[test]
    fn reduce_path_twenty_from_ten_colors() {
        let g = path(20);
        let red = reduce_color_count(&g, 10).unwrap();
        assert_eq!(
            red.peels.iter().map(|p| p.color).collect::<Vec<_>>(),
            vec![10, 9, 8, 7]
        );
        assert!(red.peels.iter().all(|p| p.vertices.len() == 2));
        assert_eq!(red.residual.n(), 12);
        let mut seen: Vec<usize> = red
            .peels
            .iter()
            .flat_map(|p| p.vertices.iter().copied())
            .chain(red.residual_vertices.iter().copied())
            .collect();
        seen.sort_unstable();
        assert_eq!(seen, (0..20).collect::<Vec<_>>(), "peels partition the graph");
        for p in &red.peels {
            for (ai, &u) in p.vertices.iter().enumerate() {
                for &v in &p.vertices[ai + 1..] {
                    assert!(!g.has_edge(u, v), "peel {} is independent", p.color);
                }
            }
        }
    }

    #[test]
    fn reduce_takes_one_peel_at_seven() {
        let mut rng = ChaCha8Rng::seed_from_u64(71);
        let g = random_maximal_outerplanar(20, &mut rng);
        let red = reduce_color_count(&g, 7).unwrap();
        assert_eq!(red.peels.len(), 1);
        assert_eq!(red.peels[0].color, 7);
        assert_eq!(red.peels[0].vertices.len(), 2);
        assert_eq!(red.residual.n(), 18);
    }

    #[test]
    fn reduce_rejects_six_colors() {
        assert!(matches!(
            reduce_color_count(&path(20), 6),
            Err(Error::TooSmall(_))
        ));
    }

    // ---- danger classification -----------------------------------------

    #[test]
    fn classify_fan_twelve_apex_is_dangerous() {
        let report = classify_danger(&fan(12)).unwrap();
        assert_eq!(report.threshold_dangerous, 8);
        assert_eq!(report.threshold_near, 7);
        assert_eq!(report.dangerous, vec![0]);
        assert_eq!(report.near, vec![0]);
    }

    #[test]
    fn classify_never_sees_three_near_vertices_on_small_graphs() {
        for n in 4..=9 {
            for g in enumerate_maximal_outerplanar_dedup(n).unwrap() {
                let report = classify_danger(&g).unwrap();
                assert!(report.near.len() <= 2);
                assert!(report.dangerous.len() <= report.near.len());
            }
        }
    }

    // ---- zero dangerous -------------------------------------------------

    #[test]
    fn zero_dangerous_path_thirteen() {
        let col = color_zero_dangerous(&path(13)).unwrap();
        assert_eq!(col.sorted_sizes(), vec![3, 2, 2, 2, 2, 2]);
        col.verify_equitable(&path(13)).unwrap();
    }

    #[test]
    fn zero_dangerous_random_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(600);
        for _ in 0..3 {
            let g = random_tree(120, &mut rng);
            if !classify_danger(&g).unwrap().dangerous.is_empty() {
                continue;
            }
            let col = color_zero_dangerous(&g).unwrap();
            col.verify_equitable(&g).unwrap();
        }
        for _ in 0..3 {
            let g = random_maximal_outerplanar(60, &mut rng);
            if !classify_danger(&g).unwrap().dangerous.is_empty() {
                continue;
            }
            let col = color_zero_dangerous(&g).unwrap();
            col.verify_equitable(&g).unwrap();
        }
    }

    // ---- two hubs -------------------------------------------------------

    #[test]
    fn two_hub_scratch_on_a_double_fan() {
        let g = double_fan(19, 19);
        assert!(validate_embedding(&g).is_maximal);
        let sc = prepare_two_dangerous(&g, 0, 20).unwrap();
        assert_eq!(sc.s1_run.len(), 12, "n_1 + n_5 - 1 for n = 40");
        assert_eq!(sc.s2_run.len(), 13, "n_4 + n_6 - 1 for n = 40");
        assert_eq!(sc.s1_alt.len(), 6);
        assert_eq!(sc.s2_alt.len(), 7);
        assert!(sc.y_vertices.len() <= 2);
        assert_eq!(sc.g_prime.n(), 13, "n_2 + n_3 vertices remain");
        for w in [sc.s1_alt.as_slice(), sc.s2_alt.as_slice()] {
            for (ai, &u) in w.iter().enumerate() {
                for &v in &w[ai + 1..] {
                    assert!(!g.has_edge(u, v), "alternation layers are independent");
                }
            }
        }
    }

    #[test]
    fn two_hub_coloring_on_double_fans() {
        for (p, q) in [(19, 19), (19, 17), (20, 16)] {
            let g = double_fan(p, q);
            let report = classify_danger(&g).unwrap();
            assert_eq!(report.near.len(), 2, "double fan ({p}, {q})");
            let col = color_two_dangerous(&g, report.near[0], report.near[1]).unwrap();
            col.verify_equitable(&g).unwrap();
        }
    }

    #[test]
    fn two_hub_rejects_unsaturated_input() {
        assert!(matches!(
            color_two_dangerous(&path(20), 0, 10),
            Err(Error::NotMaximal(_))
        ));
    }

    // ---- the extension --------------------------------------------------

    fn line6_partial() -> (Graph, Coloring, ColorBudget) {
        let g = fixture_line6_15();
        let mut partial = Coloring::new(15, 6);
        partial.set(0, 1);
        partial.set(11, 1);
        partial.set(10, 5);
        partial.set(12, 5);
        partial.set(13, 2);
        let budget = ColorBudget::from_partial(15, 6, &partial).unwrap();
        (g, partial, budget)
    }

    #[test]
    fn extension_jumps_to_colour_six_and_completes() {
        let (g, partial, budget) = line6_partial();
        let (col, trace) =
            algorithm1_extend_traced(&g, 0, partial, budget, ExtendMode::SmallT).unwrap();
        col.verify_equitable(&g).unwrap();
        assert!(trace.line6_jumps >= 1, "the fallback jump must fire");
        assert_eq!(trace.six_attempts, 3);
        assert_eq!(trace.six_failures, 0);
    }

    #[test]
    fn extension_enforces_the_high_degree_invariants() {
        // The same partial colouring is illegal in high-degree mode: its
        // colour-5 and colour-6 quotas start two apart.
        let (g, partial, budget) = line6_partial();
        assert!(matches!(
            algorithm1_extend_traced(&g, 0, partial, budget, ExtendMode::HighDeg),
            Err(Error::InternalAssertionFailed(_))
        ));
    }

    #[test]
    fn extension_rejects_malformed_preconditions() {
        let (g, mut partial, _) = line6_partial();
        // A fan vertex is already coloured.
        partial.set(1, 3);
        let budget = ColorBudget::from_partial(15, 6, &partial).unwrap();
        assert!(matches!(
            algorithm1_extend_traced(&g, 0, partial, budget, ExtendMode::SmallT),
            Err(Error::InternalAssertionFailed(_))
        ));
        // A budget that was never reconciled with the partial colouring.
        let (g, partial, _) = line6_partial();
        let fresh = ColorBudget::new(15, 6);
        assert!(matches!(
            algorithm1_extend_traced(&g, 0, partial, fresh, ExtendMode::SmallT),
            Err(Error::InternalAssertionFailed(_))
        ));
    }

    // ---- one dangerous vertex, high degree ------------------------------

    #[test]
    fn highdeg_fixture_is_as_designed() {
        let g = fixture_highdeg_36();
        assert_eq!(g.m(), 69, "2n - 3 edges");
        let report = validate_embedding(&g);
        assert!(report.is_maximal, "{:?}", report.violations);
        assert_eq!(g.degree(0), 20);
        assert_eq!(classify_danger(&g).unwrap().dangerous, vec![0]);
    }

    #[test]
    fn highdeg_colours_the_fixture() {
        let g = fixture_highdeg_36();
        let col = color_one_dangerous_highdeg(&g, 0).unwrap();
        assert_eq!(col.sorted_sizes(), vec![6; 6]);
        col.verify_equitable(&g).unwrap();
    }

    #[test]
    fn highdeg_reports_the_fan_apex_violation() {
        match color_one_dangerous_highdeg(&fan(12), 0) {
            Err(Error::HypothesisViolated { vertex, alpha, need }) => {
                assert_eq!((vertex, alpha, need), (0, 1, 2));
            }
            other => panic!("expected a hypothesis violation, got {other:?}"),
        }
    }

    // ---- one dangerous vertex, small T ----------------------------------

    #[test]
    fn smallt_fixture_is_as_designed() {
        let g = fixture_smallt_48();
        assert_eq!(g.m(), 93, "2n - 3 edges");
        let report = validate_embedding(&g);
        assert!(report.is_maximal, "{:?}", report.violations);
        assert_eq!(g.degree(0), 20);
        assert_eq!(classify_danger(&g).unwrap().dangerous, vec![0]);
        let sc = one_dangerous_scratch(&g, 0).unwrap();
        assert_eq!(sc.t, vec![2, 14, 33, 46]);
        assert_eq!(sc.t_paths, vec![vec![2, 14], vec![33, 46]]);
        assert_eq!(sc.alpha_t, 2);
    }

    #[test]
    fn smallt_colours_the_fixture() {
        let g = fixture_smallt_48();
        let col = color_one_dangerous_small_t(&g, 0).unwrap();
        assert_eq!(col.sorted_sizes(), vec![8; 6]);
        col.verify_equitable(&g).unwrap();
    }

    #[test]
    fn smallt_defers_to_the_other_constructions() {
        // 2·d(w) ≥ n: the high-degree construction owns this range.
        assert!(matches!(
            color_one_dangerous_small_t(&fixture_highdeg_36(), 0),
            Err(Error::TooLarge(_))
        ));
        // A big second neighbourhood: the big-T construction owns it.
        assert!(matches!(
            color_one_dangerous_small_t(&fixture_bigt_36(), 0),
            Err(Error::TooLarge(_))
        ));
    }

    // ---- one dangerous vertex, big T ------------------------------------

    #[test]
    fn bigt_fixtures_are_as_designed() {
        for (g, n, d) in [(fixture_bigt_36(), 36, 16), (fixture_bigt_46(), 46, 20)] {
            assert_eq!(g.n(), n);
            assert_eq!(g.m(), 2 * n - 3);
            let report = validate_embedding(&g);
            assert!(report.is_maximal, "n = {n}: {:?}", report.violations);
            assert_eq!(g.degree(0), d);
            assert_eq!(classify_danger(&g).unwrap().dangerous, vec![0]);
            let sc = one_dangerous_scratch(&g, 0).unwrap();
            assert!(sc.alpha_t >= n / 6, "the big-T regime applies");
        }
    }

    #[test]
    fn bigt_colours_both_branches() {
        let g36 = fixture_bigt_36();
        let (col, sc) = big_t_pipeline(&g36, 0).unwrap();
        assert_eq!(col.sorted_sizes(), vec![6; 6]);
        col.verify_equitable(&g36).unwrap();
        assert_eq!((sc.a, sc.b), (2, 4));
        assert_eq!(sc.g_prime.as_ref().unwrap().0.n(), 34, "one far pair reduced");

        let g46 = fixture_bigt_46();
        let (col, sc) = big_t_pipeline(&g46, 0).unwrap();
        assert_eq!(col.sorted_sizes(), vec![8, 8, 8, 8, 7, 7]);
        col.verify_equitable(&g46).unwrap();
        assert_eq!((sc.a, sc.b), (4, 4));
    }

    #[test]
    fn bigt_defers_to_small_t() {
        assert!(matches!(
            color_one_dangerous_big_t(&fixture_smallt_48(), 0),
            Err(Error::TooSmall(_))
        ));
    }

    #[test]
    fn bigt_rejects_unsaturated_input() {
        assert!(matches!(
            color_one_dangerous_big_t(&path(10), 0),
            Err(Error::NotMaximal(_))
        ));
    }

    // ---- the driver -----------------------------------------------------

    #[test]
    fn driver_handles_tiny_and_invalid_inputs() {
        let col = equitable_color_outerplanar(&path(5), 6).unwrap();
        assert_eq!(col.sorted_sizes(), vec![1, 1, 1, 1, 1, 0]);
        assert!(matches!(
            equitable_color_outerplanar(&path(10), 5),
            Err(Error::TooSmall(_))
        ));
        let k4 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert!(matches!(
            equitable_color_outerplanar(&k4, 6),
            Err(Error::NotOuterplanar(_))
        ));
    }

    #[test]
    fn driver_colours_the_stalactite_chain_with_six() {
        let (g, _) = stalactite_chain(2);
        let col = equitable_color_outerplanar(&g, 6).unwrap();
        col.verify_equitable(&g).unwrap();
    }

    #[test]
    fn driver_colours_the_hub_fixtures() {
        for g in [
            fixture_highdeg_36(),
            fixture_smallt_48(),
            fixture_bigt_36(),
            fixture_bigt_46(),
            double_fan(19, 19),
            double_fan(9, 9),
        ] {
            for s in [6, 7] {
                let col = equitable_color_outerplanar(&g, s)
                    .unwrap_or_else(|e| panic!("n = {}, s = {s}: {e}", g.n()));
                col.verify_equitable(&g).unwrap();
            }
        }
    }

    #[test]
    fn driver_agrees_with_the_oracle_on_small_graphs() {
        for n in 7..=10 {
            for g in enumerate_maximal_outerplanar_dedup(n).unwrap() {
                for s in [6, 7] {
                    let col = equitable_color_outerplanar(&g, s)
                        .unwrap_or_else(|e| panic!("n = {n}, s = {s}: {e}"));
                    col.verify_equitable(&g).unwrap();
                    assert!(
                        exhaustive_equitable(&g, s).unwrap().is_some(),
                        "oracle disagrees at n = {n}, s = {s}"
                    );
                }
            }
        }
    }

    #[test]
    fn residual_core_handles_six_or_fewer_vertices() {
        let col = color_residual_six(&path(5)).unwrap();
        assert_eq!(col.sorted_sizes(), vec![1, 1, 1, 1, 1, 0]);
    }

    // ---- five to four ---------------------------------------------------

    #[cfg(feature = "experimental")]
    mod five_to_four {
        use super::*;

        #[test]
        fn case_one_peels_a_path() {
            let g = path(15);
            let cert = reduce_5_to_4(&g).unwrap();
            assert_eq!(cert.case_label, "case-1");
            assert_eq!(cert.peeled.len(), 3);
            cert.coloring.verify_equitable(&g).unwrap();
            assert_eq!(cert.coloring.sorted_sizes(), vec![3; 5]);
        }

        /// Two adjacent hubs of degree 10 on 20 vertices; either hub's fan
        /// is nearly covered by the partner's witness set.
        #[test]
        fn case_two_peels_the_partner_witness() {
            let mut e: Vec<(usize, usize)> = (0..19).map(|i| (i, i + 1)).collect();
            e.push((0, 19));
            e.extend((2..=9).map(|v| (0, v)));
            e.extend((10..=17).map(|v| (19, v)));
            let mut g = Graph::from_edges(20, &e);
            g.set_outer_order((0..20).collect()).unwrap();
            let cert = reduce_5_to_4(&g).unwrap();
            assert_eq!(cert.case_label, "case-2-partner-peel");
            assert_eq!(cert.peeled.len(), 4);
            cert.coloring.verify_equitable(&g).unwrap();
        }

        /// Three hubs of degree 8 on 18 vertices forming a triangle.
        #[test]
        fn case_three_triangle_of_hubs() {
            let mut e: Vec<(usize, usize)> = (0..17).map(|i| (i, i + 1)).collect();
            e.push((0, 17));
            e.extend((2..=5).map(|v| (0, v)));
            e.extend((8..=11).map(|v| (6, v)));
            e.extend((14..=17).map(|v| (12, v)));
            e.extend([(0, 6), (6, 12), (0, 12)]);
            let mut g = Graph::from_edges(18, &e);
            g.set_outer_order((0..18).collect()).unwrap();
            assert!(validate_embedding(&g).is_maximal);
            let cert = reduce_5_to_4(&g).unwrap();
            assert_eq!(cert.case_label, "case-3.1-K3");
            assert_eq!(cert.peeled.len(), 3);
            assert!(cert.peeled.contains(&0), "the first hub anchors the peel");
            cert.coloring.verify_equitable(&g).unwrap();
        }
    }
}
