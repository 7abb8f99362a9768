//! Seeded random instances and counterexample shrinking.
//!
//! The draw order below is frozen: changing it silently re-labels every
//! seeded corpus. Vertices come first (count 1..=6), then arrows
//! (count 0..=10; per arrow: source, target, frozen with probability 1/3),
//! then per-vertex extra frozen markings with probability 1/4.

use rand::Rng;

use crate::dg::{Element, GenId, Presentation, Scalar, Word};
use crate::quiver::{ArrowDoc, QuiverDoc, QuiverWithFrozen, VertexId};
use std::collections::BTreeMap;
use std::collections::BTreeSet;

pub fn random_quiver(rng: &mut impl Rng) -> QuiverWithFrozen {
    let nv = rng.gen_range(1..=6usize);
    let vertices: Vec<String> = (1..=nv).map(|i| format!("v{i}")).collect();
    let na = rng.gen_range(0..=10usize);
    let mut arrows = Vec::with_capacity(na);
    let mut forced: BTreeSet<String> = BTreeSet::new();
    for i in 1..=na {
        let src = vertices[rng.gen_range(0..nv)].clone();
        let tgt = vertices[rng.gen_range(0..nv)].clone();
        let frozen = rng.gen_bool(1.0 / 3.0);
        if frozen {
            forced.insert(src.clone());
            forced.insert(tgt.clone());
        }
        arrows.push(ArrowDoc { id: format!("e{i}"), src, tgt, frozen });
    }
    let mut frozen_vertices = Vec::new();
    for v in &vertices {
        if forced.contains(v) || rng.gen_bool(0.25) {
            frozen_vertices.push(v.clone());
        }
    }
    let doc = QuiverDoc { vertices, arrows, frozen_vertices };
    QuiverWithFrozen::from_doc(&doc).expect("generated quiver is valid by construction")
}

/// Greedy shrink: drop arrows, then isolated vertices, as long as
/// `still_fails` holds, restarting after every successful deletion until a
/// full sweep removes nothing.
pub fn shrink_failing(
    q: &QuiverWithFrozen,
    still_fails: &dyn Fn(&QuiverWithFrozen) -> bool,
) -> QuiverWithFrozen {
    let mut cur = q.clone();
    loop {
        let mut progressed = false;
        let mut i = 0;
        while i < cur.arrows().len() {
            let candidate = cur.with_arrow_removed(i);
            if still_fails(&candidate) {
                cur = candidate;
                progressed = true;
            } else {
                i += 1;
            }
        }
        let mut j = 0;
        while j < cur.vertices().len() {
            let v = cur.vertices()[j].clone();
            if cur.valency(&v) == 0 {
                let candidate = cur.with_vertex_removed(j);
                if still_fails(&candidate) {
                    cur = candidate;
                    progressed = true;
                    continue;
                }
            }
            j += 1;
        }
        if !progressed {
            return cur;
        }
    }
}

/// Samples composable words and small linear combinations from a
/// presentation, for the randomized identity properties.
pub struct ElementSampler<'a> {
    presentation: &'a Presentation,
    by_src: BTreeMap<VertexId, Vec<GenId>>,
}

impl<'a> ElementSampler<'a> {
    pub fn new(presentation: &'a Presentation) -> Self {
        let mut by_src: BTreeMap<VertexId, Vec<GenId>> = BTreeMap::new();
        for (id, info) in presentation.generators() {
            by_src.entry(info.src.clone()).or_default().push(id.clone());
        }
        ElementSampler { presentation, by_src }
    }

    pub fn presentation(&self) -> &Presentation {
        self.presentation
    }

    pub fn random_vertex(&self, rng: &mut impl Rng) -> Option<VertexId> {
        let vs = self.presentation.vertices();
        if vs.is_empty() {
            return None;
        }
        Some(vs[rng.gen_range(0..vs.len())].clone())
    }

    /// A random composable generator word starting at `start`, of length at
    /// most `max_len` (possibly empty). Returns the word and its endpoint.
    pub fn word_from(
        &self,
        rng: &mut impl Rng,
        start: &VertexId,
        max_len: usize,
    ) -> (Vec<GenId>, VertexId) {
        let mut word = Vec::new();
        let mut at = start.clone();
        let len = rng.gen_range(0..=max_len);
        for _ in 0..len {
            match self.by_src.get(&at) {
                Some(options) if !options.is_empty() => {
                    let id = options[rng.gen_range(0..options.len())].clone();
                    at = self.presentation.generator(&id).unwrap().tgt.clone();
                    word.push(id);
                }
                _ => break,
            }
        }
        (word, at)
    }

    fn word_as_element(&self, word: &[GenId], start: &VertexId, end: &VertexId) -> Element {
        if word.is_empty() {
            self.presentation.idempotent(start).unwrap()
        } else {
            let _ = end;
            self.presentation.word_element(word).unwrap()
        }
    }

    /// A random element from `start`: a first walk fixes the endpoints,
    /// further walks that land on the same endpoint are mixed in with small
    /// integer coefficients. Returns the element (never the zero element)
    /// and its target vertex.
    pub fn element_from(
        &self,
        rng: &mut impl Rng,
        start: &VertexId,
        max_terms: usize,
        max_len: usize,
    ) -> (Element, VertexId) {
        let (first, end) = self.word_from(rng, start, max_len);
        let mut acc = self
            .word_as_element(&first, start, &end)
            .scale(&self.nonzero_coeff(rng));
        for _ in 1..max_terms {
            let (word, at) = self.word_from(rng, start, max_len);
            if at != end {
                continue;
            }
            let term = self
                .word_as_element(&word, start, &end)
                .scale(&self.random_coeff(rng));
            let sum = acc.add(&term).unwrap();
            if !sum.is_zero() {
                acc = sum;
            }
        }
        (acc, end)
    }

    /// A random homogeneous element: one scaled word.
    pub fn homogeneous_from(
        &self,
        rng: &mut impl Rng,
        start: &VertexId,
        max_len: usize,
    ) -> (Element, VertexId) {
        let (word, end) = self.word_from(rng, start, max_len);
        let e = self
            .word_as_element(&word, start, &end)
            .scale(&self.nonzero_coeff(rng));
        (e, end)
    }

    fn random_coeff(&self, rng: &mut impl Rng) -> Scalar {
        self.presentation.field().from_i64(rng.gen_range(-3..=3))
    }

    fn nonzero_coeff(&self, rng: &mut impl Rng) -> Scalar {
        let mut k = 0;
        while k == 0 {
            k = rng.gen_range(-3..=3);
        }
        self.presentation.field().from_i64(k)
    }

    /// A raw unnormalized term list together with its normalized element,
    /// for the normalization idempotence property. The raw list repeats
    /// words and may carry zero coefficients.
    pub fn raw_terms(
        &self,
        rng: &mut impl Rng,
        start: &VertexId,
        max_terms: usize,
        max_len: usize,
    ) -> (VertexId, Vec<(Word, Scalar)>) {
        let (first, end) = self.word_from(rng, start, max_len);
        let mut terms: Vec<(Word, Scalar)> = Vec::new();
        let as_word = |w: &[GenId], v: &VertexId| {
            if w.is_empty() {
                Word::Idempotent(v.clone())
            } else {
                Word::Path(w.to_vec())
            }
        };
        terms.push((as_word(&first, start), self.random_coeff(rng)));
        for _ in 1..max_terms {
            if rng.gen_bool(0.3) {
                // Repeat an existing word with a fresh coefficient.
                let i = rng.gen_range(0..terms.len());
                let w = terms[i].0.clone();
                terms.push((w, self.random_coeff(rng)));
            } else {
                let (word, at) = self.word_from(rng, start, max_len);
                if at == end {
                    terms.push((as_word(&word, start), self.random_coeff(rng)));
                }
            }
        }
        (end, terms)
    }
}
