//! Degree-0 algebra morphisms determined by vertex and generator images.

use std::collections::BTreeMap;
use std::sync::Arc;

use indexmap::IndexMap;

use crate::dg::element::{Element, GenId, Word};
use crate::dg::presentation::Presentation;
use crate::dg::report::{CheckReport, Failure};
use crate::dg::AlgebraError;
use crate::quiver::VertexId;

pub(crate) fn same_presentation(a: &Arc<Presentation>, b: &Arc<Presentation>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// A morphism of presented dg-algebras: a vertex map together with a
/// degree-0, endpoint-compatible image for every source generator, extended
/// by linearity and multiplicativity. Being a chain map is a separate check,
/// not a construction invariant.
#[derive(Clone, Debug)]
pub struct Morphism {
    label: String,
    source: Arc<Presentation>,
    target: Arc<Presentation>,
    vertex_map: BTreeMap<VertexId, VertexId>,
    images: IndexMap<GenId, Element>,
}

impl Morphism {
    /// Validates totality, endpoint compatibility and degree preservation.
    pub fn new(
        label: impl Into<String>,
        source: Arc<Presentation>,
        target: Arc<Presentation>,
        vertex_map: BTreeMap<VertexId, VertexId>,
        images: IndexMap<GenId, Element>,
    ) -> Result<Morphism, AlgebraError> {
        if source.field() != target.field() {
            return Err(AlgebraError::MorphismFieldMismatch {
                src_field: source.field().to_string(),
                tgt_field: target.field().to_string(),
            });
        }
        for v in source.vertices() {
            let image = vertex_map
                .get(v)
                .ok_or_else(|| AlgebraError::UnknownVertex(v.to_string()))?;
            if !target.has_vertex(image) {
                return Err(AlgebraError::UnknownVertex(image.to_string()));
            }
        }
        for (id, info) in source.generators() {
            let image = images
                .get(id)
                .ok_or_else(|| AlgebraError::UnknownGenerator(id.to_string()))?;
            target.validate_element(image)?;
            if let Some((s, t)) = image.endpoints() {
                let (es, et) = (&vertex_map[&info.src], &vertex_map[&info.tgt]);
                if s != es || t != et {
                    return Err(AlgebraError::WrongEndpoints {
                        expected: format!("({es}, {et})"),
                        found: format!("({s}, {t})"),
                    });
                }
                target.validate_degree(image, info.degree)?;
            }
        }
        Ok(Morphism {
            label: label.into(),
            source,
            target,
            vertex_map,
            images,
        })
    }

    pub fn identity(p: &Arc<Presentation>) -> Morphism {
        let vertex_map = p.vertices().iter().map(|v| (v.clone(), v.clone())).collect();
        let images = p
            .generators()
            .map(|(id, _)| (id.clone(), p.gen_element(id).expect("own generator")))
            .collect();
        Morphism::new("id", Arc::clone(p), Arc::clone(p), vertex_map, images)
            .expect("identity is always valid")
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn source(&self) -> &Arc<Presentation> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Presentation> {
        &self.target
    }

    pub fn vertex_image(&self, v: &VertexId) -> Result<&VertexId, AlgebraError> {
        self.vertex_map
            .get(v)
            .ok_or_else(|| AlgebraError::UnknownVertex(v.to_string()))
    }

    pub fn gen_image(&self, id: &GenId) -> Result<&Element, AlgebraError> {
        self.images
            .get(id)
            .ok_or_else(|| AlgebraError::UnknownGenerator(id.to_string()))
    }

    /// Apply to an element of the source algebra.
    pub fn apply(&self, e: &Element) -> Result<Element, AlgebraError> {
        let mut acc = Element::zero();
        for (word, coeff) in e.terms() {
            let image = match word {
                Word::Idempotent(v) => self.target.idempotent(self.vertex_image(v)?)?,
                Word::Path(gens) => {
                    let mut m: Option<Element> = None;
                    for gid in gens {
                        let gi = self.gen_image(gid)?;
                        m = Some(match m {
                            None => gi.clone(),
                            Some(prev) => prev.concat(gi)?,
                        });
                        if m.as_ref().unwrap().is_zero() {
                            break;
                        }
                    }
                    m.unwrap()
                }
            };
            acc = acc.add(&image.scale(coeff))?;
        }
        Ok(acc)
    }

    /// Residual `m(d x) - d(m x)` per source generator.
    pub fn check_chain_map(&self) -> Result<CheckReport, AlgebraError> {
        let mut failures = Vec::new();
        let mut checked = 0;
        for (id, _) in self.source.generators() {
            checked += 1;
            let dx = self.source.differential_of(id)?;
            let lhs = self.apply(dx)?;
            let rhs = self.target.differentiate(self.gen_image(id)?)?;
            let residual = lhs.sub(&rhs)?;
            if !residual.is_zero() {
                failures.push(Failure { generator: id.clone(), residual, note: None });
            }
        }
        Ok(CheckReport::new(
            format!("chain_map:{}", self.label),
            checked,
            failures,
        ))
    }
}

/// Composite `outer . inner` (apply `inner` first). The inner target and
/// outer source must be the same presentation.
pub fn compose_morphisms(outer: &Morphism, inner: &Morphism) -> Result<Morphism, AlgebraError> {
    if !same_presentation(&inner.target, &outer.source) {
        return Err(AlgebraError::PresentationMismatch(format!(
            "cannot compose {} after {}: middle presentations differ",
            outer.label, inner.label
        )));
    }
    let vertex_map = inner
        .vertex_map
        .iter()
        .map(|(v, w)| Ok((v.clone(), outer.vertex_image(w)?.clone())))
        .collect::<Result<BTreeMap<_, _>, AlgebraError>>()?;
    let images = inner
        .images
        .iter()
        .map(|(id, e)| Ok((id.clone(), outer.apply(e)?)))
        .collect::<Result<IndexMap<_, _>, AlgebraError>>()?;
    Morphism::new(
        format!("{}.{}", outer.label, inner.label),
        Arc::clone(&inner.source),
        Arc::clone(&outer.target),
        vertex_map,
        images,
    )
}

/// Generator-wise equality of two parallel morphisms.
pub fn check_morphisms_equal(
    name: impl Into<String>,
    a: &Morphism,
    b: &Morphism,
) -> Result<CheckReport, AlgebraError> {
    if !same_presentation(&a.source, &b.source) || !same_presentation(&a.target, &b.target) {
        return Err(AlgebraError::PresentationMismatch(format!(
            "{} and {} are not parallel",
            a.label, b.label
        )));
    }
    let mut failures = Vec::new();
    let mut checked = 0;
    for (id, _) in a.source.generators() {
        checked += 1;
        let residual = a.gen_image(id)?.sub(b.gen_image(id)?)?;
        if !residual.is_zero() {
            failures.push(Failure { generator: id.clone(), residual, note: None });
        }
    }
    for v in a.source.vertices() {
        if a.vertex_image(v)? != b.vertex_image(v)? {
            failures.push(Failure {
                generator: GenId(format!("vertex:{v}")),
                residual: Element::zero(),
                note: Some(format!(
                    "vertex images differ: {} vs {}",
                    a.vertex_image(v)?,
                    b.vertex_image(v)?
                )),
            });
        }
    }
    Ok(CheckReport::new(name, checked, failures))
}
