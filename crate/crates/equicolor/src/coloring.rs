//! Colourings: assignment vertex → colour in [s] with per-class tallies.
//!
//! Colours are 1-based (`1..=s`); 0 marks an unassigned vertex. Partial
//! colourings arise inside the constructive pipelines; verification demands
//! completeness.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A (possibly partial) colouring with colours in `1..=s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    s: usize,
    /// Colour per vertex; 0 = unassigned.
    assign: Vec<usize>,
    /// class_size[c] = |I_c| for c in 1..=s (index 0 unused).
    class_size: Vec<usize>,
    assigned: usize,
}

impl Coloring {
    pub fn new(n: usize, s: usize) -> Self {
        assert!(s >= 1, "colour count must be positive");
        Coloring {
            s,
            assign: vec![0; n],
            class_size: vec![0; s + 1],
            assigned: 0,
        }
    }

    pub fn n(&self) -> usize {
        self.assign.len()
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn get(&self, v: usize) -> Option<usize> {
        match self.assign[v] {
            0 => None,
            c => Some(c),
        }
    }

    /// Raw colour value (0 = unassigned).
    pub fn raw(&self, v: usize) -> usize {
        self.assign[v]
    }

    /// Assigns a colour to an unassigned vertex.
    ///
    /// # Panics
    /// Panics if `v` already has a colour or `c ∉ 1..=s`.
    pub fn set(&mut self, v: usize, c: usize) {
        assert!(c >= 1 && c <= self.s, "colour {c} out of range 1..={}", self.s);
        assert_eq!(self.assign[v], 0, "vertex {v} already coloured {}", self.assign[v]);
        self.assign[v] = c;
        self.class_size[c] += 1;
        self.assigned += 1;
    }

    /// Changes the colour of an already-coloured vertex.
    pub fn reassign(&mut self, v: usize, c: usize) {
        assert!(c >= 1 && c <= self.s, "colour {c} out of range 1..={}", self.s);
        let old = self.assign[v];
        assert_ne!(old, 0, "vertex {v} has no colour to change");
        self.class_size[old] -= 1;
        self.assign[v] = c;
        self.class_size[c] += 1;
    }

    /// Removes the colour of `v`.
    pub fn unset(&mut self, v: usize) {
        let old = self.assign[v];
        assert_ne!(old, 0, "vertex {v} has no colour to remove");
        self.class_size[old] -= 1;
        self.assign[v] = 0;
        self.assigned -= 1;
    }

    pub fn class_size(&self, c: usize) -> usize {
        self.class_size[c]
    }

    /// Sizes of classes 1..=s.
    pub fn sizes(&self) -> Vec<usize> {
        self.class_size[1..].to_vec()
    }

    /// Class sizes as a sorted (descending) multiset.
    pub fn sorted_sizes(&self) -> Vec<usize> {
        let mut s = self.sizes();
        s.sort_unstable_by(|a, b| b.cmp(a));
        s
    }

    pub fn is_complete(&self) -> bool {
        self.assigned == self.assign.len()
    }

    pub fn assigned_count(&self) -> usize {
        self.assigned
    }

    /// Members of class `c` in increasing vertex order.
    pub fn class_members(&self, c: usize) -> Vec<usize> {
        (0..self.n()).filter(|&v| self.assign[v] == c).collect()
    }

    /// Checks properness of the assigned part against `g`.
    pub fn verify_proper(&self, g: &Graph) -> Result<()> {
        for &(u, v) in g.edges() {
            if self.assign[u] != 0 && self.assign[u] == self.assign[v] {
                return Err(Error::WitnessInvalid(format!(
                    "adjacent vertices {u} and {v} share colour {}",
                    self.assign[u]
                )));
            }
        }
        Ok(())
    }

    /// True iff complete with all class sizes in {⌊n/s⌋, ⌈n/s⌉}.
    pub fn is_equitable_sizes(&self) -> bool {
        if !self.is_complete() {
            return false;
        }
        let n = self.n();
        let lo = n / self.s;
        let hi = n.div_ceil(self.s);
        (1..=self.s).all(|c| self.class_size[c] >= lo && self.class_size[c] <= hi)
    }

    /// Full verification: complete, proper on `g`, and equitable.
    pub fn verify_equitable(&self, g: &Graph) -> Result<()> {
        if self.n() != g.n() {
            return Err(Error::WitnessInvalid(format!(
                "colouring covers {} vertices, graph has {}",
                self.n(),
                g.n()
            )));
        }
        if !self.is_complete() {
            let v = (0..self.n()).find(|&v| self.assign[v] == 0).unwrap();
            return Err(Error::WitnessInvalid(format!("vertex {v} is uncoloured")));
        }
        self.verify_proper(g)?;
        let n = self.n();
        let (lo, hi) = (n / self.s, n.div_ceil(self.s));
        for c in 1..=self.s {
            let k = self.class_size[c];
            if k < lo || k > hi {
                return Err(Error::WitnessInvalid(format!(
                    "class {c} has {k} vertices, outside [{lo}, {hi}]"
                )));
            }
        }
        Ok(())
    }
}

/// The equitable class-size targets for n vertices and s colours, largest
/// first: the lowest colour indices receive ⌈n/s⌉.
pub fn equitable_targets(n: usize, s: usize) -> Vec<usize> {
    (0..s).map(|j| (n + s - 1 - j) / s).collect()
}
