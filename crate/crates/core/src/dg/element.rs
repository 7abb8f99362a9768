//! Words and elements of a free graded path algebra.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::dg::scalar::Scalar;
use crate::dg::AlgebraError;
use crate::quiver::VertexId;

/// Generator identifier inside a presentation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GenId(pub String);

impl fmt::Display for GenId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for GenId {
    fn from(s: &str) -> Self {
        GenId(s.to_owned())
    }
}

/// A basis word: either the length-zero idempotent path at a vertex or a
/// nonempty composable sequence of generators, read left to right.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Word {
    Idempotent(VertexId),
    Path(Vec<GenId>),
}

impl Word {
    pub fn len(&self) -> usize {
        match self {
            Word::Idempotent(_) => 0,
            Word::Path(gens) => gens.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Canonical word order: length first, then lexicographic on generator ids.
/// Idempotents at different vertices are ordered by vertex id.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Word::Idempotent(a), Word::Idempotent(b)) => a.cmp(b),
            (Word::Idempotent(_), Word::Path(_)) => Ordering::Less,
            (Word::Path(_), Word::Idempotent(_)) => Ordering::Greater,
            (Word::Path(a), Word::Path(b)) => {
                a.len().cmp(&b.len()).then_with(|| a.cmp(b))
            }
        }
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Word::Idempotent(v) => write!(f, "e_{v}"),
            Word::Path(gens) => {
                let names: Vec<&str> = gens.iter().map(|g| g.0.as_str()).collect();
                f.write_str(&names.join("*"))
            }
        }
    }
}

/// A finite linear combination of words sharing one source and one target.
///
/// Invariants: no zero coefficients are stored; terms are kept in canonical
/// word order; `endpoints` is `None` exactly for the zero element, which is
/// the only element free of endpoint constraints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    endpoints: Option<(VertexId, VertexId)>,
    terms: BTreeMap<Word, Scalar>,
}

impl Element {
    pub fn zero() -> Element {
        Element { endpoints: None, terms: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Single-term element. Returns zero if the scalar is zero.
    pub fn term(word: Word, coeff: Scalar, src: VertexId, tgt: VertexId) -> Element {
        if coeff.is_zero() {
            return Element::zero();
        }
        let mut terms = BTreeMap::new();
        terms.insert(word, coeff);
        Element { endpoints: Some((src, tgt)), terms }
    }

    /// Sum a raw term list over fixed endpoints, merging duplicate words and
    /// dropping zero coefficients. This is the normalization map; it is
    /// idempotent.
    pub fn from_terms(
        src: VertexId,
        tgt: VertexId,
        terms: impl IntoIterator<Item = (Word, Scalar)>,
    ) -> Element {
        let mut map: BTreeMap<Word, Scalar> = BTreeMap::new();
        for (w, c) in terms {
            let entry = match map.remove(&w) {
                Some(prev) => prev.add(&c),
                None => c,
            };
            if !entry.is_zero() {
                map.insert(w, entry);
            }
        }
        if map.is_empty() {
            Element::zero()
        } else {
            Element { endpoints: Some((src, tgt)), terms: map }
        }
    }

    pub fn endpoints(&self) -> Option<(&VertexId, &VertexId)> {
        self.endpoints.as_ref().map(|(s, t)| (s, t))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Addition. Zero is neutral; otherwise endpoints must agree.
    pub fn add(&self, other: &Element) -> Result<Element, AlgebraError> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        let (s, t) = self.endpoints.clone().unwrap();
        if self.endpoints != other.endpoints {
            return Err(AlgebraError::EndpointMismatch {
                left: format!("({s}, {t})"),
                right: {
                    let (os, ot) = other.endpoints.as_ref().unwrap();
                    format!("({os}, {ot})")
                },
            });
        }
        Ok(Element::from_terms(
            s,
            t,
            self.terms
                .iter()
                .chain(other.terms.iter())
                .map(|(w, c)| (w.clone(), c.clone())),
        ))
    }

    pub fn sub(&self, other: &Element) -> Result<Element, AlgebraError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Element {
        self.scale_i64(-1)
    }

    pub fn scale(&self, k: &Scalar) -> Element {
        if k.is_zero() || self.is_zero() {
            return Element::zero();
        }
        let (s, t) = self.endpoints.clone().unwrap();
        Element::from_terms(
            s,
            t,
            self.terms.iter().map(|(w, c)| (w.clone(), c.mul(k))),
        )
    }

    pub fn scale_i64(&self, k: i64) -> Element {
        if self.is_zero() {
            return Element::zero();
        }
        let (s, t) = self.endpoints.clone().unwrap();
        Element::from_terms(
            s,
            t,
            self.terms.iter().map(|(w, c)| (w.clone(), c.mul_i64(k))),
        )
    }

    /// Concatenation product, words composing left to right: for `x * y`,
    /// the target of `x` must equal the source of `y`. Zero times anything
    /// is zero.
    pub fn concat(&self, other: &Element) -> Result<Element, AlgebraError> {
        if self.is_zero() || other.is_zero() {
            return Ok(Element::zero());
        }
        let (ls, lt) = self.endpoints.as_ref().unwrap();
        let (rs, rt) = other.endpoints.as_ref().unwrap();
        if lt != rs {
            return Err(AlgebraError::NonComposable {
                left_tgt: lt.to_string(),
                right_src: rs.to_string(),
            });
        }
        let mut out: Vec<(Word, Scalar)> = Vec::new();
        for (wl, cl) in &self.terms {
            for (wr, cr) in &other.terms {
                let word = match (wl, wr) {
                    (Word::Idempotent(_), w) | (w, Word::Idempotent(_)) => w.clone(),
                    (Word::Path(a), Word::Path(b)) => {
                        let mut gens = Vec::with_capacity(a.len() + b.len());
                        gens.extend(a.iter().cloned());
                        gens.extend(b.iter().cloned());
                        Word::Path(gens)
                    }
                };
                out.push((word, cl.mul(cr)));
            }
        }
        Ok(Element::from_terms(ls.clone(), rt.clone(), out))
    }

    /// Coefficient of a word (zero scalar is reported as `None`).
    pub fn coeff(&self, word: &Word) -> Option<&Scalar> {
        self.terms.get(word)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (w, c) in &self.terms {
            if first {
                first = false;
            } else {
                f.write_str(" + ")?;
            }
            if c.is_one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "{c} {w}")?;
            }
        }
        Ok(())
    }
}
