//! Presentations of free graded path algebras with differential.

use std::collections::{BTreeMap, BTreeSet};

use indexmap::IndexMap;

use crate::dg::element::{Element, GenId, Word};
use crate::dg::report::{CheckReport, Failure};
use crate::dg::scalar::Field;
use crate::dg::AlgebraError;
use crate::quiver::VertexId;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorInfo {
    pub src: VertexId,
    pub tgt: VertexId,
    pub degree: i64,
}

/// A free graded path algebra given by vertices, generators with endpoints
/// and degrees, and a degree +1 differential defined on generators.
///
/// The differential is total: every generator has an entry, possibly zero.
/// Unless construction explicitly defers it, `d^2 = 0` holds on generators.
#[derive(Clone, Debug)]
pub struct Presentation {
    label: String,
    field: Field,
    vertices: Vec<VertexId>,
    vertex_set: BTreeSet<VertexId>,
    generators: IndexMap<GenId, GeneratorInfo>,
    differential: IndexMap<GenId, Element>,
}

/// Structural equality ignores the display label.
impl PartialEq for Presentation {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.vertices == other.vertices
            && self.generators == other.generators
            && self.differential == other.differential
    }
}

impl Eq for Presentation {}

impl Presentation {
    pub fn builder(label: impl Into<String>, field: Field) -> PresentationBuilder {
        PresentationBuilder {
            label: label.into(),
            field,
            vertices: Vec::new(),
            generators: Vec::new(),
            differentials: Vec::new(),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn has_vertex(&self, v: &VertexId) -> bool {
        self.vertex_set.contains(v)
    }

    pub fn generators(&self) -> impl Iterator<Item = (&GenId, &GeneratorInfo)> {
        self.generators.iter()
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn generator(&self, id: &GenId) -> Result<&GeneratorInfo, AlgebraError> {
        self.generators
            .get(id)
            .ok_or_else(|| AlgebraError::UnknownGenerator(id.to_string()))
    }

    /// The differential of a generator.
    pub fn differential_of(&self, id: &GenId) -> Result<&Element, AlgebraError> {
        self.differential
            .get(id)
            .ok_or_else(|| AlgebraError::UnknownGenerator(id.to_string()))
    }

    /// Length-zero path at `v`, with coefficient one.
    pub fn idempotent(&self, v: &VertexId) -> Result<Element, AlgebraError> {
        if !self.has_vertex(v) {
            return Err(AlgebraError::UnknownVertex(v.to_string()));
        }
        Ok(Element::term(
            Word::Idempotent(v.clone()),
            self.field.one(),
            v.clone(),
            v.clone(),
        ))
    }

    /// The generator as a one-term element.
    pub fn gen_element(&self, id: &GenId) -> Result<Element, AlgebraError> {
        let info = self.generator(id)?;
        Ok(Element::term(
            Word::Path(vec![id.clone()]),
            self.field.one(),
            info.src.clone(),
            info.tgt.clone(),
        ))
    }

    /// A composable word of generators as a one-term element.
    pub fn word_element(&self, ids: &[GenId]) -> Result<Element, AlgebraError> {
        let mut acc: Option<Element> = None;
        for id in ids {
            let g = self.gen_element(id)?;
            acc = Some(match acc {
                None => g,
                Some(prev) => prev.concat(&g)?,
            });
        }
        acc.ok_or_else(|| AlgebraError::BrokenWord {
            word: String::new(),
            position: 0,
        })
    }

    /// Degree of a word (sum of generator degrees; idempotents have degree 0).
    pub fn word_degree(&self, word: &Word) -> Result<i64, AlgebraError> {
        match word {
            Word::Idempotent(_) => Ok(0),
            Word::Path(gens) => {
                let mut deg = 0;
                for g in gens {
                    deg += self.generator(g)?.degree;
                }
                Ok(deg)
            }
        }
    }

    /// Endpoints of a word, verifying interior composability.
    pub fn word_endpoints(
        &self,
        word: &Word,
    ) -> Result<(VertexId, VertexId), AlgebraError> {
        match word {
            Word::Idempotent(v) => {
                if !self.has_vertex(v) {
                    return Err(AlgebraError::UnknownVertex(v.to_string()));
                }
                Ok((v.clone(), v.clone()))
            }
            Word::Path(gens) => {
                let first = self.generator(&gens[0])?;
                let mut tgt = first.tgt.clone();
                for (i, g) in gens.iter().enumerate().skip(1) {
                    let info = self.generator(g)?;
                    if info.src != tgt {
                        return Err(AlgebraError::BrokenWord {
                            word: word.to_string(),
                            position: i,
                        });
                    }
                    tgt = info.tgt.clone();
                }
                Ok((first.src.clone(), tgt))
            }
        }
    }

    /// Check that an element is well formed over this presentation: words
    /// composable, all endpoints equal to the element's, scalars over the
    /// presentation field.
    pub fn validate_element(&self, e: &Element) -> Result<(), AlgebraError> {
        let Some((src, tgt)) = e.endpoints() else {
            return Ok(());
        };
        for (word, coeff) in e.terms() {
            if coeff.field() != self.field {
                return Err(AlgebraError::FieldMismatch(self.field.to_string()));
            }
            let (ws, wt) = self.word_endpoints(word)?;
            if &ws != src || &wt != tgt {
                return Err(AlgebraError::WrongEndpoints {
                    expected: format!("({src}, {tgt})"),
                    found: format!("({ws}, {wt})"),
                });
            }
        }
        Ok(())
    }

    /// Check that a nonzero element is homogeneous of the given degree.
    pub fn validate_degree(&self, e: &Element, degree: i64) -> Result<(), AlgebraError> {
        for (word, _) in e.terms() {
            let d = self.word_degree(word)?;
            if d != degree {
                return Err(AlgebraError::DegreeNonUniform {
                    expected: degree,
                    found: d,
                    word: word.to_string(),
                });
            }
        }
        Ok(())
    }

    /// Extend the differential from generators to an arbitrary element by
    /// linearity and the Koszul rule. Idempotents differentiate to zero.
    pub fn differentiate(&self, e: &Element) -> Result<Element, AlgebraError> {
        let mut acc = Element::zero();
        for (word, coeff) in e.terms() {
            let Word::Path(gens) = word else { continue };
            let (src, tgt) = self.word_endpoints(word)?;
            let mut parity = 0i64;
            for (i, g) in gens.iter().enumerate() {
                let info = self.generator(g)?;
                let dg = self.differential_of(g)?;
                if !dg.is_zero() {
                    let prefix = if i == 0 {
                        self.idempotent(&src)?
                    } else {
                        self.word_element(&gens[..i])?
                    };
                    let suffix = if i + 1 == gens.len() {
                        self.idempotent(&tgt)?
                    } else {
                        self.word_element(&gens[i + 1..])?
                    };
                    let sign = if parity % 2 == 0 { 1 } else { -1 };
                    let term = prefix.concat(dg)?.concat(&suffix)?;
                    acc = acc.add(&term.scale(coeff).scale_i64(sign))?;
                }
                parity += info.degree;
            }
        }
        Ok(acc)
    }

    /// Residuals of `d^2` on every generator.
    pub fn check_d_squared(&self) -> CheckReport {
        let mut failures = Vec::new();
        for (id, _) in &self.generators {
            let d1 = self.differential.get(id).expect("total differential");
            let d2 = self
                .differentiate(d1)
                .expect("differential of a valid element stays valid");
            if !d2.is_zero() {
                failures.push(Failure {
                    generator: id.clone(),
                    residual: d2,
                    note: None,
                });
            }
        }
        CheckReport::new("d_squared", self.generators.len(), failures)
    }

    /// Number of composable words of the given total degree with length at
    /// most `max_len`. Length-zero idempotents count once per vertex in
    /// degree 0. Counted by dynamic programming on (endpoint, degree).
    pub fn graded_dimension(&self, degree: i64, max_len: usize) -> u128 {
        let mut total: u128 = if degree == 0 { self.vertices.len() as u128 } else { 0 };
        // frontier maps (current target vertex, accumulated degree) to the
        // number of words of the current length reaching that state.
        let mut frontier: BTreeMap<(VertexId, i64), u128> = BTreeMap::new();
        for v in &self.vertices {
            frontier.insert((v.clone(), 0), 1);
        }
        for _ in 0..max_len {
            let mut next: BTreeMap<(VertexId, i64), u128> = BTreeMap::new();
            for ((at, deg), count) in &frontier {
                for (_, info) in self.generators.iter().filter(|(_, i)| &i.src == at) {
                    let key = (info.tgt.clone(), deg + info.degree);
                    *next.entry(key).or_insert(0) += count;
                }
            }
            for ((_, deg), count) in &next {
                if *deg == degree {
                    total += count;
                }
            }
            if next.is_empty() {
                break;
            }
            frontier = next;
        }
        total
    }
}

pub struct PresentationBuilder {
    label: String,
    field: Field,
    vertices: Vec<VertexId>,
    generators: Vec<(GenId, GeneratorInfo)>,
    differentials: Vec<(GenId, Element)>,
}

impl PresentationBuilder {
    pub fn vertex(mut self, v: VertexId) -> Self {
        self.vertices.push(v);
        self
    }

    pub fn vertices(mut self, vs: impl IntoIterator<Item = VertexId>) -> Self {
        self.vertices.extend(vs);
        self
    }

    pub fn generator(mut self, id: GenId, src: VertexId, tgt: VertexId, degree: i64) -> Self {
        self.generators.push((id, GeneratorInfo { src, tgt, degree }));
        self
    }

    /// Set the differential of a generator. Generators without an entry get
    /// the zero differential.
    pub fn differential(mut self, id: GenId, value: Element) -> Self {
        self.differentials.push((id, value));
        self
    }

    /// Validate and build, including the `d^2 = 0` check.
    pub fn build(self) -> Result<Presentation, AlgebraError> {
        let p = self.build_deferring_d2()?;
        let report = p.check_d_squared();
        if let Some(first) = report.failures.first() {
            return Err(AlgebraError::DSquared {
                generator: first.generator.to_string(),
                residual: first.residual.to_string(),
            });
        }
        Ok(p)
    }

    /// Validate endpoints and degrees but skip the `d^2 = 0` check, for
    /// constructions whose consistency is itself under test.
    pub fn build_deferring_d2(self) -> Result<Presentation, AlgebraError> {
        let mut vertex_set = BTreeSet::new();
        for v in &self.vertices {
            if !vertex_set.insert(v.clone()) {
                return Err(AlgebraError::DuplicateVertex(v.to_string()));
            }
        }
        let mut generators: IndexMap<GenId, GeneratorInfo> = IndexMap::new();
        for (id, info) in self.generators {
            if !vertex_set.contains(&info.src) {
                return Err(AlgebraError::UnknownVertex(info.src.to_string()));
            }
            if !vertex_set.contains(&info.tgt) {
                return Err(AlgebraError::UnknownVertex(info.tgt.to_string()));
            }
            if generators.insert(id.clone(), info).is_some() {
                return Err(AlgebraError::DuplicateGenerator(id.to_string()));
            }
        }
        let mut p = Presentation {
            label: self.label,
            field: self.field,
            vertices: self.vertices,
            vertex_set,
            generators,
            differential: IndexMap::new(),
        };
        let mut differential: IndexMap<GenId, Element> = IndexMap::new();
        for (id, _) in &p.generators {
            differential.insert(id.clone(), Element::zero());
        }
        for (id, value) in self.differentials {
            let info = p.generator(&id)?.clone();
            p.validate_element(&value)?;
            if !value.is_zero() {
                let (s, t) = value.endpoints().unwrap();
                if s != &info.src || t != &info.tgt {
                    return Err(AlgebraError::WrongEndpoints {
                        expected: format!("({}, {})", info.src, info.tgt),
                        found: format!("({s}, {t})"),
                    });
                }
                p.validate_degree(&value, info.degree + 1)?;
            }
            differential.insert(id, value);
        }
        p.differential = differential;
        Ok(p)
    }
}
