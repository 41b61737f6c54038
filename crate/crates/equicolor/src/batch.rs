//! Batch runners over graph corpora.
//!
//! Every pipeline in this crate is deterministic given its input, so a
//! corpus can be processed in any execution order as long as results come
//! back in corpus order. The `*_seq` runners are always available; with the
//! `parallel` feature the `*_par` twins fan the same work out over a rayon
//! pool and return bit-identical results, and `*_auto` picks the parallel
//! runner when it is compiled in.

use crate::coloring::Coloring;
use crate::error::Result;
use crate::forest::equitable_color_forest;
use crate::graph::Graph;
use crate::outerplanar::equitable_color_outerplanar;
use crate::partition::{partition_lemma, ForestPartition};
#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Applies `f` to every graph, in order, on the current thread.
pub fn map_seq<T, F>(corpus: &[Graph], f: F) -> Vec<T>
where
    F: Fn(&Graph) -> T + Sync + Send,
    T: Send,
{
    corpus.iter().map(f).collect()
}

/// Applies `f` across the rayon pool; results keep corpus order.
#[cfg(feature = "parallel")]
pub fn map_par<T, F>(corpus: &[Graph], f: F) -> Vec<T>
where
    F: Fn(&Graph) -> T + Sync + Send,
    T: Send,
{
    corpus.par_iter().map(f).collect()
}

/// The parallel runner when compiled in, the sequential one otherwise.
pub fn map_auto<T, F>(corpus: &[Graph], f: F) -> Vec<T>
where
    F: Fn(&Graph) -> T + Sync + Send,
    T: Send,
{
    #[cfg(feature = "parallel")]
    {
        map_par(corpus, f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        map_seq(corpus, f)
    }
}

/// Equitably s-colours every forest in the corpus.
pub fn color_forests_seq(corpus: &[Graph], s: usize) -> Vec<Result<Coloring>> {
    map_seq(corpus, |g| equitable_color_forest(g, s))
}

/// Parallel twin of [`color_forests_seq`].
#[cfg(feature = "parallel")]
pub fn color_forests_par(corpus: &[Graph], s: usize) -> Vec<Result<Coloring>> {
    map_par(corpus, |g| equitable_color_forest(g, s))
}

/// Equitably s-colours every outerplanar graph in the corpus (s ≥ 6).
pub fn color_outerplanar_seq(corpus: &[Graph], s: usize) -> Vec<Result<Coloring>> {
    map_seq(corpus, |g| equitable_color_outerplanar(g, s))
}

/// Parallel twin of [`color_outerplanar_seq`].
#[cfg(feature = "parallel")]
pub fn color_outerplanar_par(corpus: &[Graph], s: usize) -> Vec<Result<Coloring>> {
    map_par(corpus, |g| equitable_color_outerplanar(g, s))
}

/// Runs the capped two-forest partition on every outerplanar graph.
pub fn partition_seq(corpus: &[Graph]) -> Vec<Result<ForestPartition>> {
    map_seq(corpus, partition_lemma)
}

/// Parallel twin of [`partition_seq`].
#[cfg(feature = "parallel")]
pub fn partition_par(corpus: &[Graph]) -> Vec<Result<ForestPartition>> {
    map_par(corpus, partition_lemma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{random_forest, random_maximal_outerplanar};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn forest_corpus() -> Vec<Graph> {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        (0..12).map(|_| random_forest(30, 0.9, &mut rng)).collect()
    }

    fn outerplanar_corpus() -> Vec<Graph> {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        (0..8)
            .map(|_| random_maximal_outerplanar(40, &mut rng))
            .collect()
    }

    #[test]
    fn sequential_results_keep_corpus_order() {
        let corpus = forest_corpus();
        let ns = map_seq(&corpus, |g| g.n());
        assert_eq!(ns.len(), corpus.len());
        for (g, n) in corpus.iter().zip(&ns) {
            assert_eq!(g.n(), *n);
        }
    }

    #[test]
    fn forests_color_across_backends() {
        let corpus = forest_corpus();
        let seq = color_forests_seq(&corpus, 4);
        for (g, r) in corpus.iter().zip(&seq) {
            r.as_ref().unwrap().verify_equitable(g).unwrap();
        }
        #[cfg(feature = "parallel")]
        {
            let par = color_forests_par(&corpus, 4);
            assert_eq!(seq, par);
        }
    }

    #[test]
    fn outerplanar_colors_across_backends() {
        let corpus = outerplanar_corpus();
        let seq = color_outerplanar_seq(&corpus, 6);
        for (g, r) in corpus.iter().zip(&seq) {
            r.as_ref().unwrap().verify_equitable(g).unwrap();
        }
        #[cfg(feature = "parallel")]
        {
            let par = color_outerplanar_par(&corpus, 6);
            assert_eq!(seq, par);
        }
    }

    #[test]
    fn partitions_agree_across_backends() {
        let corpus = outerplanar_corpus();
        let seq = partition_seq(&corpus);
        for r in &seq {
            assert!(r.is_ok());
        }
        #[cfg(feature = "parallel")]
        {
            let par = partition_par(&corpus);
            for (a, b) in seq.iter().zip(&par) {
                let (a, b) = (a.as_ref().unwrap(), b.as_ref().unwrap());
                assert_eq!(a.parts(), b.parts());
                assert_eq!(a.sizes(), b.sizes());
            }
        }
    }

    #[test]
    fn auto_matches_sequential() {
        let corpus = forest_corpus();
        let seq = map_seq(&corpus, |g| g.m());
        let auto = map_auto(&corpus, |g| g.m());
        assert_eq!(seq, auto);
    }
}
