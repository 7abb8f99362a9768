//! Relative Ginzburg algebras of a quiver with frozen subquiver.
//!
//! For a quiver `Q` with frozen part `F` and an integer `n`, the algebra has
//! a degree-0 generator `g_e` per arrow, a dual `g*_e` of degree `2-n` with
//! reversed endpoints per non-frozen arrow, and a loop `h_v` of degree `1-n`
//! per non-frozen vertex, with
//! `d h_v = [g, g*]_v` summed over non-frozen half-edges at `v`:
//! outgoing half-edges contribute `g_e g*_e`, incoming ones `-g*_e g_e`.
//! A loop contributes both terms.

use std::collections::BTreeMap;
use std::sync::Arc;

use indexmap::IndexMap;

use crate::dg::{AlgebraError, Element, Field, GenId, Morphism, Presentation, Scalar, Word};
use crate::quiver::{Arrow, ArrowId, EndpointRole, QuiverWithFrozen, VertexId};

/// Generator id of the degree-0 arrow generator `g_e`.
pub fn arrow_gen(e: &ArrowId) -> GenId {
    GenId(format!("g:{e}"))
}

/// Generator id of the dual generator `g*_e`.
pub fn dual_gen(e: &ArrowId) -> GenId {
    GenId(format!("gs:{e}"))
}

/// Generator id of the loop generator `h_v`.
pub fn loop_gen(v: &VertexId) -> GenId {
    GenId(format!("h:{v}"))
}

/// The signed sum `[g, g*]_v` over the given half-edges at `v`: `+g_e g*_e`
/// for an outgoing half-edge, `-g*_e g_e` for an incoming one.
pub fn half_edge_bracket<'a>(
    one: &Scalar,
    v: &VertexId,
    half_edges: impl Iterator<Item = (&'a Arrow, EndpointRole)>,
) -> Element {
    let mut terms: Vec<(Word, Scalar)> = Vec::new();
    for (arrow, role) in half_edges {
        match role {
            EndpointRole::Tail => terms.push((
                Word::Path(vec![arrow_gen(&arrow.id), dual_gen(&arrow.id)]),
                one.clone(),
            )),
            EndpointRole::Head => terms.push((
                Word::Path(vec![dual_gen(&arrow.id), arrow_gen(&arrow.id)]),
                one.neg(),
            )),
        }
    }
    Element::from_terms(v.clone(), v.clone(), terms)
}

/// `[g, g*]_v` over the non-frozen half-edges at `v` in `q`.
pub fn non_frozen_bracket(q: &QuiverWithFrozen, field: Field, v: &VertexId) -> Element {
    half_edge_bracket(
        &field.one(),
        v,
        q.half_edges_at(v).into_iter().filter(|(a, _)| !a.frozen),
    )
}

/// Build the relative Ginzburg algebra of `(Q, F)` over the rationals.
pub fn build_relative_ginzburg(
    q: &QuiverWithFrozen,
    n: i64,
) -> Result<Presentation, AlgebraError> {
    build_relative_ginzburg_over(q, n, Field::Rationals)
}

pub fn build_relative_ginzburg_over(
    q: &QuiverWithFrozen,
    n: i64,
    field: Field,
) -> Result<Presentation, AlgebraError> {
    let mut b = Presentation::builder(format!("ginzburg[n={n}]"), field)
        .vertices(q.vertices().iter().cloned());
    for a in q.arrows() {
        b = b.generator(arrow_gen(&a.id), a.src.clone(), a.tgt.clone(), 0);
    }
    for a in q.non_frozen_arrows() {
        b = b.generator(dual_gen(&a.id), a.tgt.clone(), a.src.clone(), 2 - n);
    }
    for v in q.non_frozen_vertices() {
        b = b.generator(loop_gen(v), v.clone(), v.clone(), 1 - n);
        b = b.differential(loop_gen(v), non_frozen_bracket(q, field, v));
    }
    b.build()
}

/// Build the (non-relative) Ginzburg algebra of `Q`, ignoring any frozen
/// markings: duals for every arrow, loops for every vertex.
pub fn build_ginzburg(q: &QuiverWithFrozen, n: i64) -> Result<Presentation, AlgebraError> {
    build_ginzburg_over(q, n, Field::Rationals)
}

pub fn build_ginzburg_over(
    q: &QuiverWithFrozen,
    n: i64,
    field: Field,
) -> Result<Presentation, AlgebraError> {
    build_relative_ginzburg_over(&q.with_frozen_cleared(), n, field)
}

/// The comparison map from the Ginzburg algebra of the frozen subquiver one
/// dimension down into the relative Ginzburg algebra of `(Q, F)`:
/// `g_e` maps to `g_e`, duals die, and the loop at a frozen vertex maps to
/// the non-frozen bracket `[g, g*]_v`.
///
/// `source` must be the Ginzburg algebra of `q.frozen_subquiver()` for
/// `n - 1` and `target` the relative Ginzburg algebra of `(q, n)`.
pub fn build_inclusion_g(
    q: &QuiverWithFrozen,
    source: &Arc<Presentation>,
    target: &Arc<Presentation>,
) -> Result<Morphism, AlgebraError> {
    let field = target.field();
    let vertex_map: BTreeMap<VertexId, VertexId> =
        source.vertices().iter().map(|v| (v.clone(), v.clone())).collect();
    let mut images: IndexMap<GenId, Element> = IndexMap::new();
    for a in q.frozen_arrows() {
        images.insert(arrow_gen(&a.id), target.gen_element(&arrow_gen(&a.id))?);
        images.insert(dual_gen(&a.id), Element::zero());
    }
    for v in q.frozen_vertices() {
        images.insert(loop_gen(v), non_frozen_bracket(q, field, v));
    }
    Morphism::new("G", Arc::clone(source), Arc::clone(target), vertex_map, images)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> QuiverWithFrozen {
        QuiverWithFrozen::parse(text).unwrap()
    }

    fn one_arrow() -> QuiverWithFrozen {
        parse(
            r#"{"vertices": ["v", "w"],
                "arrows": [{"id": "e", "src": "v", "tgt": "w"}]}"#,
        )
    }

    #[test]
    fn one_arrow_generators_and_degrees() {
        let p = build_relative_ginzburg(&one_arrow(), 5).unwrap();
        let degrees: Vec<(String, i64)> = p
            .generators()
            .map(|(id, info)| (id.to_string(), info.degree))
            .collect();
        assert_eq!(
            degrees,
            vec![
                ("g:e".into(), 0),
                ("gs:e".into(), -3),
                ("h:v".into(), -4),
                ("h:w".into(), -4),
            ]
        );
        // d h_v = g g*, d h_w = -g* g.
        let ggs = p.word_element(&["g:e".into(), "gs:e".into()]).unwrap();
        assert_eq!(p.differential_of(&"h:v".into()).unwrap(), &ggs);
        let gsg = p.word_element(&["gs:e".into(), "g:e".into()]).unwrap().neg();
        assert_eq!(p.differential_of(&"h:w".into()).unwrap(), &gsg);
    }

    #[test]
    fn fully_frozen_quiver_has_closed_arrow_generators_only() {
        let q = parse(
            r#"{"vertices": ["v", "w"],
                "arrows": [{"id": "e", "src": "v", "tgt": "w", "frozen": true}],
                "frozen_vertices": ["v", "w"]}"#,
        );
        let p = build_relative_ginzburg(&q, 5).unwrap();
        let ids: Vec<String> = p.generators().map(|(id, _)| id.to_string()).collect();
        assert_eq!(ids, vec!["g:e".to_string()]);
        assert!(p.differential_of(&"g:e".into()).unwrap().is_zero());
    }

    #[test]
    fn parallel_arrows_sum_in_the_bracket() {
        let q = parse(
            r#"{"vertices": ["v", "w"],
                "arrows": [{"id": "e1", "src": "v", "tgt": "w"},
                           {"id": "e2", "src": "v", "tgt": "w"}]}"#,
        );
        let p = build_relative_ginzburg(&q, 4).unwrap();
        let dv = p.differential_of(&"h:v".into()).unwrap();
        let expected = p
            .word_element(&["g:e1".into(), "gs:e1".into()])
            .unwrap()
            .add(&p.word_element(&["g:e2".into(), "gs:e2".into()]).unwrap())
            .unwrap();
        assert_eq!(dv, &expected);
        let dw = p.differential_of(&"h:w".into()).unwrap();
        let expected_w = p
            .word_element(&["gs:e1".into(), "g:e1".into()])
            .unwrap()
            .add(&p.word_element(&["gs:e2".into(), "g:e2".into()]).unwrap())
            .unwrap()
            .neg();
        assert_eq!(dw, &expected_w);
    }

    #[test]
    fn loop_contributes_both_bracket_terms() {
        let q = parse(
            r#"{"vertices": ["v"],
                "arrows": [{"id": "l", "src": "v", "tgt": "v"}]}"#,
        );
        let p = build_relative_ginzburg(&q, 4).unwrap();
        let dv = p.differential_of(&"h:v".into()).unwrap();
        let expected = p
            .word_element(&["g:l".into(), "gs:l".into()])
            .unwrap()
            .sub(&p.word_element(&["gs:l".into(), "g:l".into()]).unwrap())
            .unwrap();
        assert_eq!(dv, &expected);
    }

    #[test]
    fn isolated_vertex_gets_closed_loop() {
        let q = parse(r#"{"vertices": ["v"], "arrows": []}"#);
        let p = build_relative_ginzburg(&q, 4).unwrap();
        assert_eq!(p.generator_count(), 1);
        assert!(p.differential_of(&"h:v".into()).unwrap().is_zero());
    }

    #[test]
    fn relative_with_empty_frozen_equals_plain_ginzburg() {
        let q = one_arrow();
        let rel = build_relative_ginzburg(&q, 6).unwrap();
        let plain = build_ginzburg(&q, 6).unwrap();
        assert_eq!(rel, plain);
        // And plain ignores frozen markings entirely.
        let frozen = parse(
            r#"{"vertices": ["v", "w"],
                "arrows": [{"id": "e", "src": "v", "tgt": "w", "frozen": true}],
                "frozen_vertices": ["v", "w"]}"#,
        );
        assert_eq!(build_ginzburg(&frozen, 6).unwrap(), plain);
    }

    #[test]
    fn inclusion_on_fully_frozen_arrow() {
        let q = parse(
            r#"{"vertices": ["v", "w"],
                "arrows": [{"id": "e", "src": "v", "tgt": "w", "frozen": true}],
                "frozen_vertices": ["v", "w"]}"#,
        );
        let n = 5;
        let source = Arc::new(build_ginzburg(&q.frozen_subquiver(), n - 1).unwrap());
        let target = Arc::new(build_relative_ginzburg(&q, n).unwrap());
        // Degrees line up: the source dual sits in 2-(n-1) = 3-n, the source
        // loop in 1-(n-1) = 2-n.
        assert_eq!(source.generator(&"gs:e".into()).unwrap().degree, 3 - n);
        assert_eq!(source.generator(&"h:v".into()).unwrap().degree, 2 - n);
        let g = build_inclusion_g(&q, &source, &target).unwrap();
        assert_eq!(
            g.gen_image(&"g:e".into()).unwrap(),
            &target.gen_element(&"g:e".into()).unwrap()
        );
        assert!(g.gen_image(&"gs:e".into()).unwrap().is_zero());
        // No non-frozen arrows at v, so h_v dies too.
        assert!(g.gen_image(&"h:v".into()).unwrap().is_zero());
        assert!(g.check_chain_map().unwrap().passed());
    }

    #[test]
    fn inclusion_sends_frozen_loop_to_non_frozen_bracket() {
        // Frozen vertex v with one non-frozen outgoing arrow: h_v maps to
        // g e g*_e even though e is not frozen.
        let q = parse(
            r#"{"vertices": ["v", "w"],
                "arrows": [{"id": "e", "src": "v", "tgt": "w"}],
                "frozen_vertices": ["v"]}"#,
        );
        let n = 5;
        let source = Arc::new(build_ginzburg(&q.frozen_subquiver(), n - 1).unwrap());
        let target = Arc::new(build_relative_ginzburg(&q, n).unwrap());
        let g = build_inclusion_g(&q, &source, &target).unwrap();
        let expected = target
            .word_element(&["g:e".into(), "gs:e".into()])
            .unwrap();
        assert_eq!(g.gen_image(&"h:v".into()).unwrap(), &expected);
        assert!(g.check_chain_map().unwrap().passed());
    }
}
