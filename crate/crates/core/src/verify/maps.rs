//! The six comparison maps between the Chekanov-Eliashberg colimit, its
//! boundary subalgebra, and the two Ginzburg algebras, plus the commuting
//! square tying them together.
//!
//! With `A` the colimit, `B` its boundary subalgebra, `G_rel` the relative
//! Ginzburg algebra of `(Q, F)` at parameter `n` and `G_F` the Ginzburg
//! algebra of the frozen subquiver at `n - 1`:
//!
//! ```text
//! tau:     A -> G_rel        phi:     G_rel -> A      tau . phi = id
//! sigma:   B -> G_F          epsilon: G_F -> B        sigma . epsilon = id
//! K on A, companion phi.tau: dK + Kd = id - phi.tau
//! J on B, companion epsilon.sigma: dJ + Jd = id - epsilon.sigma
//! tau . incl = G . sigma     (incl: B -> A, G: G_F -> G_rel)
//! ```

use std::collections::BTreeMap;
use std::sync::Arc;

use indexmap::IndexMap;

use crate::ce::{
    a_half, a_prime_half, a_vertex, b_half, b_vertex, chord, d_half, handle, handle_dual,
};
use crate::dg::{
    check_morphisms_equal, compose_morphisms, AlgebraError, CheckReport, Element, GenId,
    Morphism, Presentation, Scalar, TwistedDerivation, Word,
};
use crate::ginzburg::{arrow_gen, dual_gen, loop_gen, non_frozen_bracket};
use crate::quiver::{EndpointRole, QuiverWithFrozen, VertexId};

fn identity_vertex_map(p: &Presentation) -> BTreeMap<VertexId, VertexId> {
    p.vertices().iter().map(|v| (v.clone(), v.clone())).collect()
}

fn word(src: &VertexId, tgt: &VertexId, coeff: Scalar, gens: Vec<GenId>) -> Element {
    Element::term(Word::Path(gens), coeff, src.clone(), tgt.clone())
}

/// `tau: A -> G_rel`. Kills every generator except `a_v` at non-frozen `v`
/// (to `h_v`), `b_v` (to the non-frozen bracket), `b_{e,v}` at non-frozen
/// `e` (to `+- g g*`), `g_e`, `g*_e`, and `h_e` (to the frozen arrow's
/// degree-0 generator).
pub fn build_tau(
    q: &QuiverWithFrozen,
    colimit: &Arc<Presentation>,
    ginzburg_rel: &Arc<Presentation>,
) -> Result<Morphism, AlgebraError> {
    let field = ginzburg_rel.field();
    let one = field.one();
    let mut images: IndexMap<GenId, Element> = IndexMap::new();
    for v in q.vertices() {
        if q.is_frozen_vertex(v) {
            images.insert(a_vertex(v), Element::zero());
            images.insert(b_vertex(v), non_frozen_bracket(q, field, v));
        } else {
            images.insert(a_vertex(v), ginzburg_rel.gen_element(&loop_gen(v))?);
        }
    }
    for a in q.arrows() {
        let e = &a.id;
        if a.frozen {
            images.insert(handle(e), ginzburg_rel.gen_element(&arrow_gen(e))?);
            images.insert(handle_dual(e), Element::zero());
            images.insert(chord(e), Element::zero());
            for role in EndpointRole::BOTH {
                images.insert(b_half(e, role), Element::zero());
                images.insert(d_half(e, role), Element::zero());
                images.insert(a_half(e, role), Element::zero());
                images.insert(a_prime_half(e, role), Element::zero());
            }
        } else {
            images.insert(arrow_gen(e), ginzburg_rel.gen_element(&arrow_gen(e))?);
            images.insert(dual_gen(e), ginzburg_rel.gen_element(&dual_gen(e))?);
            images.insert(
                b_half(e, EndpointRole::Tail),
                word(&a.src, &a.src, one.clone(), vec![arrow_gen(e), dual_gen(e)]),
            );
            images.insert(
                b_half(e, EndpointRole::Head),
                word(&a.tgt, &a.tgt, one.neg(), vec![dual_gen(e), arrow_gen(e)]),
            );
            for role in EndpointRole::BOTH {
                images.insert(a_half(e, role), Element::zero());
            }
        }
    }
    Morphism::new(
        "tau",
        Arc::clone(colimit),
        Arc::clone(ginzburg_rel),
        identity_vertex_map(colimit),
        images,
    )
}

/// `phi: G_rel -> A`. `g_e` goes to itself (non-frozen) or to `h_e`
/// (frozen), `g*_e` to itself, and the loop `h_v` at a non-frozen vertex to
/// `a_v - sum over half-edges of a_{e,v}`.
pub fn build_phi(
    q: &QuiverWithFrozen,
    ginzburg_rel: &Arc<Presentation>,
    colimit: &Arc<Presentation>,
) -> Result<Morphism, AlgebraError> {
    let field = colimit.field();
    let one = field.one();
    let mut images: IndexMap<GenId, Element> = IndexMap::new();
    for a in q.arrows() {
        let e = &a.id;
        if a.frozen {
            images.insert(arrow_gen(e), colimit.gen_element(&handle(e))?);
        } else {
            images.insert(arrow_gen(e), colimit.gen_element(&arrow_gen(e))?);
            images.insert(dual_gen(e), colimit.gen_element(&dual_gen(e))?);
        }
    }
    for v in q.non_frozen_vertices() {
        let mut terms = vec![(Word::Path(vec![a_vertex(v)]), one.clone())];
        for (arrow, role) in q.half_edges_at(v) {
            terms.push((Word::Path(vec![a_half(&arrow.id, role)]), one.neg()));
        }
        images.insert(loop_gen(v), Element::from_terms(v.clone(), v.clone(), terms));
    }
    Morphism::new(
        "phi",
        Arc::clone(ginzburg_rel),
        Arc::clone(colimit),
        identity_vertex_map(ginzburg_rel),
        images,
    )
}

/// The homotopy `K` on the colimit, a degree -1 derivation twisted by
/// `phi.tau`: `K(b_{e,v}) = a_{e,v}`, `K(b_v) = -a_v + sum a_{e,v}`,
/// `K(d_{e,v}) = h_e c + a'_{e,v}` (tail) or `-c h_e + a'_{e,v}` (head),
/// `K(h*_e) = c`, zero on everything else.
pub fn build_k(
    q: &QuiverWithFrozen,
    colimit: &Arc<Presentation>,
    phi_tau: Morphism,
) -> Result<TwistedDerivation, AlgebraError> {
    let field = colimit.field();
    let one = field.one();
    let mut images: IndexMap<GenId, Element> = IndexMap::new();
    for v in q.vertices() {
        images.insert(a_vertex(v), Element::zero());
        if q.is_frozen_vertex(v) {
            let mut terms = vec![(Word::Path(vec![a_vertex(v)]), one.neg())];
            for (arrow, role) in q.half_edges_at(v) {
                terms.push((Word::Path(vec![a_half(&arrow.id, role)]), one.clone()));
            }
            images.insert(b_vertex(v), Element::from_terms(v.clone(), v.clone(), terms));
        }
    }
    for a in q.arrows() {
        let e = &a.id;
        for role in EndpointRole::BOTH {
            images.insert(b_half(e, role), colimit.gen_element(&a_half(e, role))?);
            images.insert(a_half(e, role), Element::zero());
        }
        if a.frozen {
            let (v1, v2) = (&a.src, &a.tgt);
            images.insert(
                d_half(e, EndpointRole::Tail),
                Element::from_terms(
                    v1.clone(),
                    v1.clone(),
                    [
                        (Word::Path(vec![handle(e), chord(e)]), one.clone()),
                        (Word::Path(vec![a_prime_half(e, EndpointRole::Tail)]), one.clone()),
                    ],
                ),
            );
            images.insert(
                d_half(e, EndpointRole::Head),
                Element::from_terms(
                    v2.clone(),
                    v2.clone(),
                    [
                        (Word::Path(vec![chord(e), handle(e)]), one.neg()),
                        (Word::Path(vec![a_prime_half(e, EndpointRole::Head)]), one.clone()),
                    ],
                ),
            );
            for role in EndpointRole::BOTH {
                images.insert(a_prime_half(e, role), Element::zero());
            }
            images.insert(handle_dual(e), colimit.gen_element(&chord(e))?);
            images.insert(chord(e), Element::zero());
            images.insert(handle(e), Element::zero());
        } else {
            images.insert(arrow_gen(e), Element::zero());
            images.insert(dual_gen(e), Element::zero());
        }
    }
    TwistedDerivation::new("K", Arc::clone(colimit), phi_tau, images)
}

/// `sigma: B -> G_F`. `b_v` goes to the loop `h_v`, `h_e` to `g_e`, `h*_e`
/// to `g*_e`, `d_{e,v}` to `+- g g*`, and `a'_{e,v}` to zero.
pub fn build_sigma(
    q: &QuiverWithFrozen,
    boundary: &Arc<Presentation>,
    ginzburg_frozen: &Arc<Presentation>,
) -> Result<Morphism, AlgebraError> {
    let one = ginzburg_frozen.field().one();
    let mut images: IndexMap<GenId, Element> = IndexMap::new();
    for v in q.frozen_vertices() {
        images.insert(b_vertex(v), ginzburg_frozen.gen_element(&loop_gen(v))?);
    }
    for a in q.frozen_arrows() {
        let e = &a.id;
        images.insert(
            d_half(e, EndpointRole::Tail),
            word(&a.src, &a.src, one.clone(), vec![arrow_gen(e), dual_gen(e)]),
        );
        images.insert(
            d_half(e, EndpointRole::Head),
            word(&a.tgt, &a.tgt, one.neg(), vec![dual_gen(e), arrow_gen(e)]),
        );
        for role in EndpointRole::BOTH {
            images.insert(a_prime_half(e, role), Element::zero());
        }
        images.insert(handle(e), ginzburg_frozen.gen_element(&arrow_gen(e))?);
        images.insert(handle_dual(e), ginzburg_frozen.gen_element(&dual_gen(e))?);
    }
    Morphism::new(
        "sigma",
        Arc::clone(boundary),
        Arc::clone(ginzburg_frozen),
        identity_vertex_map(boundary),
        images,
    )
}

/// `epsilon: G_F -> B`. `g_e` goes to `h_e`, `g*_e` to `h*_e`, and `h_v` to
/// `b_v - sum over frozen half-edges of a'_{e,v}`.
pub fn build_epsilon(
    q: &QuiverWithFrozen,
    ginzburg_frozen: &Arc<Presentation>,
    boundary: &Arc<Presentation>,
) -> Result<Morphism, AlgebraError> {
    let one = boundary.field().one();
    let fs = q.frozen_subquiver();
    let mut images: IndexMap<GenId, Element> = IndexMap::new();
    for a in fs.arrows() {
        images.insert(arrow_gen(&a.id), boundary.gen_element(&handle(&a.id))?);
        images.insert(dual_gen(&a.id), boundary.gen_element(&handle_dual(&a.id))?);
    }
    for v in fs.vertices() {
        let mut terms = vec![(Word::Path(vec![b_vertex(v)]), one.clone())];
        for (arrow, role) in fs.half_edges_at(v) {
            terms.push((Word::Path(vec![a_prime_half(&arrow.id, role)]), one.neg()));
        }
        images.insert(loop_gen(v), Element::from_terms(v.clone(), v.clone(), terms));
    }
    Morphism::new(
        "epsilon",
        Arc::clone(ginzburg_frozen),
        Arc::clone(boundary),
        identity_vertex_map(ginzburg_frozen),
        images,
    )
}

/// The homotopy `J` on the boundary subalgebra, twisted by
/// `epsilon.sigma`: `J(d_{e,v}) = a'_{e,v}`, zero on everything else.
pub fn build_j(
    q: &QuiverWithFrozen,
    boundary: &Arc<Presentation>,
    epsilon_sigma: Morphism,
) -> Result<TwistedDerivation, AlgebraError> {
    let mut images: IndexMap<GenId, Element> = IndexMap::new();
    for v in q.frozen_vertices() {
        images.insert(b_vertex(v), Element::zero());
    }
    for a in q.frozen_arrows() {
        let e = &a.id;
        for role in EndpointRole::BOTH {
            images.insert(d_half(e, role), boundary.gen_element(&a_prime_half(e, role))?);
            images.insert(a_prime_half(e, role), Element::zero());
        }
        images.insert(handle(e), Element::zero());
        images.insert(handle_dual(e), Element::zero());
    }
    TwistedDerivation::new("J", Arc::clone(boundary), epsilon_sigma, images)
}

/// The inclusion of the boundary subalgebra into the colimit: the identity
/// on vertices and generator ids.
pub fn build_boundary_inclusion(
    boundary: &Arc<Presentation>,
    colimit: &Arc<Presentation>,
) -> Result<Morphism, AlgebraError> {
    let images = boundary
        .generators()
        .map(|(id, _)| Ok((id.clone(), colimit.gen_element(id)?)))
        .collect::<Result<IndexMap<_, _>, AlgebraError>>()?;
    Morphism::new(
        "incl",
        Arc::clone(boundary),
        Arc::clone(colimit),
        identity_vertex_map(boundary),
        images,
    )
}

/// The commuting square `tau . incl = G . sigma` on the boundary
/// subalgebra, checked generator by generator.
pub fn check_square(
    tau: &Morphism,
    incl: &Morphism,
    g_map: &Morphism,
    sigma: &Morphism,
) -> Result<CheckReport, AlgebraError> {
    let lhs = compose_morphisms(tau, incl)?;
    let rhs = compose_morphisms(g_map, sigma)?;
    check_morphisms_equal("square", &lhs, &rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ce::{assemble_colimit, boundary_subalgebra, CeOptions};
    use crate::dg::Field;
    use crate::ginzburg::{build_ginzburg_over, build_inclusion_g, build_relative_ginzburg_over};

    struct Setup {
        q: QuiverWithFrozen,
        colimit: Arc<Presentation>,
        boundary: Arc<Presentation>,
        ginzburg_rel: Arc<Presentation>,
        ginzburg_frozen: Arc<Presentation>,
    }

    fn setup(text: &str, n: i64) -> Setup {
        let q = QuiverWithFrozen::parse(text).unwrap();
        let field = Field::Rationals;
        let opts = CeOptions { field, literal_frozen_boundary: false };
        let colimit = Arc::new(assemble_colimit(&q, n, &opts).unwrap());
        let (b, closure) = boundary_subalgebra(&colimit, &q).unwrap();
        assert!(closure.passed());
        let ginzburg_rel = Arc::new(build_relative_ginzburg_over(&q, n, field).unwrap());
        let ginzburg_frozen =
            Arc::new(build_ginzburg_over(&q.frozen_subquiver(), n - 1, field).unwrap());
        Setup { q, colimit, boundary: Arc::new(b), ginzburg_rel, ginzburg_frozen }
    }

    fn check_all(s: &Setup) {
        let tau = build_tau(&s.q, &s.colimit, &s.ginzburg_rel).unwrap();
        let phi = build_phi(&s.q, &s.ginzburg_rel, &s.colimit).unwrap();
        assert!(tau.check_chain_map().unwrap().passed(), "tau");
        assert!(phi.check_chain_map().unwrap().passed(), "phi");
        let tau_phi = compose_morphisms(&tau, &phi).unwrap();
        let id_g = Morphism::identity(&s.ginzburg_rel);
        assert!(check_morphisms_equal("tau_phi", &tau_phi, &id_g).unwrap().passed());

        let phi_tau = compose_morphisms(&phi, &tau).unwrap();
        let k = build_k(&s.q, &s.colimit, phi_tau.clone()).unwrap();
        assert!(k.check_homotopy(&phi_tau, 1).unwrap().passed(), "K homotopy");

        let sigma = build_sigma(&s.q, &s.boundary, &s.ginzburg_frozen).unwrap();
        let epsilon = build_epsilon(&s.q, &s.ginzburg_frozen, &s.boundary).unwrap();
        assert!(sigma.check_chain_map().unwrap().passed(), "sigma");
        assert!(epsilon.check_chain_map().unwrap().passed(), "epsilon");
        let sigma_epsilon = compose_morphisms(&sigma, &epsilon).unwrap();
        let id_f = Morphism::identity(&s.ginzburg_frozen);
        assert!(check_morphisms_equal("sigma_epsilon", &sigma_epsilon, &id_f).unwrap().passed());

        let epsilon_sigma = compose_morphisms(&epsilon, &sigma).unwrap();
        let j = build_j(&s.q, &s.boundary, epsilon_sigma.clone()).unwrap();
        assert!(j.check_homotopy(&epsilon_sigma, 1).unwrap().passed(), "J homotopy");

        let incl = build_boundary_inclusion(&s.boundary, &s.colimit).unwrap();
        assert!(incl.check_chain_map().unwrap().passed(), "incl");
        let g_map =
            build_inclusion_g(&s.q, &s.ginzburg_frozen, &s.ginzburg_rel).unwrap();
        assert!(g_map.check_chain_map().unwrap().passed(), "G");
        assert!(check_square(&tau, &incl, &g_map, &sigma).unwrap().passed(), "square");
    }

    #[test]
    fn one_non_frozen_arrow_all_identities() {
        for n in [4, 5] {
            check_all(&setup(
                r#"{"vertices": ["v", "w"],
                    "arrows": [{"id": "e", "src": "v", "tgt": "w"}]}"#,
                n,
            ));
        }
    }

    #[test]
    fn one_frozen_arrow_all_identities() {
        for n in [4, 5] {
            check_all(&setup(
                r#"{"vertices": ["v", "w"],
                    "arrows": [{"id": "e", "src": "v", "tgt": "w", "frozen": true}],
                    "frozen_vertices": ["v", "w"]}"#,
                n,
            ));
        }
    }

    #[test]
    fn mixed_quiver_all_identities() {
        // Frozen arrow hanging off a non-frozen loop, plus an isolated
        // frozen vertex.
        check_all(&setup(
            r#"{"vertices": ["u", "v", "w", "z"],
                "arrows": [{"id": "e1", "src": "u", "tgt": "v", "frozen": true},
                           {"id": "e2", "src": "v", "tgt": "v"},
                           {"id": "e3", "src": "v", "tgt": "w"}],
                "frozen_vertices": ["u", "v", "z"]}"#,
            4,
        ));
    }

    #[test]
    fn tau_on_b_half_is_signed_product() {
        let s = setup(
            r#"{"vertices": ["v", "w"],
                "arrows": [{"id": "e", "src": "v", "tgt": "w"}]}"#,
            4,
        );
        let tau = build_tau(&s.q, &s.colimit, &s.ginzburg_rel).unwrap();
        let e = crate::quiver::ArrowId::from("e");
        let tail = tau.gen_image(&b_half(&e, EndpointRole::Tail)).unwrap();
        let expected = s
            .ginzburg_rel
            .word_element(&[arrow_gen(&e), dual_gen(&e)])
            .unwrap();
        assert_eq!(tail, &expected);
        let head = tau.gen_image(&b_half(&e, EndpointRole::Head)).unwrap();
        let expected = s
            .ginzburg_rel
            .word_element(&[dual_gen(&e), arrow_gen(&e)])
            .unwrap()
            .neg();
        assert_eq!(head, &expected);
    }

    #[test]
    fn homotopy_k_rejects_wrong_sign_on_frozen_instance() {
        let s = setup(
            r#"{"vertices": ["v", "w"],
                "arrows": [{"id": "e", "src": "v", "tgt": "w", "frozen": true}],
                "frozen_vertices": ["v", "w"]}"#,
            5,
        );
        let tau = build_tau(&s.q, &s.colimit, &s.ginzburg_rel).unwrap();
        let phi = build_phi(&s.q, &s.ginzburg_rel, &s.colimit).unwrap();
        let phi_tau = compose_morphisms(&phi, &tau).unwrap();
        let k = build_k(&s.q, &s.colimit, phi_tau.clone()).unwrap();
        assert!(!k.check_homotopy(&phi_tau, -1).unwrap().passed());
    }

    #[test]
    fn square_mismatch_is_reported() {
        // Sanity check that check_square actually compares: send the handle
        // to zero instead of g_e and watch exactly h_e fail. (The handle is
        // the one generator here on which both legs are nonzero.)
        let s = setup(
            r#"{"vertices": ["v", "w"],
                "arrows": [{"id": "e", "src": "v", "tgt": "w", "frozen": true}],
                "frozen_vertices": ["v", "w"]}"#,
            5,
        );
        let tau = build_tau(&s.q, &s.colimit, &s.ginzburg_rel).unwrap();
        let incl = build_boundary_inclusion(&s.boundary, &s.colimit).unwrap();
        let g_map = build_inclusion_g(&s.q, &s.ginzburg_frozen, &s.ginzburg_rel).unwrap();
        let sigma = build_sigma(&s.q, &s.boundary, &s.ginzburg_frozen).unwrap();
        let report = check_square(&tau, &incl, &g_map, &sigma).unwrap();
        assert!(report.passed());

        let mut images: IndexMap<GenId, Element> = IndexMap::new();
        for (id, _) in s.boundary.generators() {
            images.insert(id.clone(), sigma.gen_image(id).unwrap().clone());
        }
        let e = crate::quiver::ArrowId::from("e");
        images.insert(handle(&e), Element::zero());
        let bad = Morphism::new(
            "sigma",
            Arc::clone(&s.boundary),
            Arc::clone(&s.ginzburg_frozen),
            identity_vertex_map(&s.boundary),
            images,
        )
        .unwrap();
        let report = check_square(&tau, &incl, &g_map, &bad).unwrap();
        assert!(!report.passed());
        assert_eq!(report.failures.len(), 1);
        assert_eq!(report.failures[0].generator, handle(&e));
    }
}
