//! JSON export of presentations and elements.
//!
//! An element serializes as a list of terms; each term carries an exact
//! coefficient string and either a generator-id word or an idempotent
//! marker:
//!
//! ```text
//! [{"coeff": "1", "word": ["g:e", "gs:e"]},
//!  {"coeff": "-2/3", "word": {"idempotent": "v"}}]
//! ```

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::dg::{Element, Presentation, Word};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WordJson {
    Path(Vec<String>),
    Idempotent { idempotent: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub word: WordJson,
}

pub fn element_terms(e: &Element) -> Vec<TermJson> {
    e.terms()
        .map(|(word, coeff)| TermJson {
            coeff: coeff.to_string(),
            word: match word {
                Word::Idempotent(v) => WordJson::Idempotent { idempotent: v.to_string() },
                Word::Path(gens) => {
                    WordJson::Path(gens.iter().map(|g| g.to_string()).collect())
                }
            },
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorJson {
    pub id: String,
    pub src: String,
    pub tgt: String,
    pub degree: i64,
}

/// Full presentation document. Generators keep construction order; the
/// differential map is sorted by generator id.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationJson {
    pub vertices: Vec<String>,
    pub generators: Vec<GeneratorJson>,
    pub differential: BTreeMap<String, Vec<TermJson>>,
}

pub fn presentation_json(p: &Presentation) -> PresentationJson {
    let vertices = p.vertices().iter().map(|v| v.to_string()).collect();
    let generators = p
        .generators()
        .map(|(id, info)| GeneratorJson {
            id: id.to_string(),
            src: info.src.to_string(),
            tgt: info.tgt.to_string(),
            degree: info.degree,
        })
        .collect();
    let differential = p
        .generators()
        .map(|(id, _)| {
            let d = p.differential_of(id).expect("differential is total");
            (id.to_string(), element_terms(d))
        })
        .collect();
    PresentationJson { vertices, generators, differential }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ginzburg::build_ginzburg;
    use crate::quiver::QuiverWithFrozen;

    #[test]
    fn ginzburg_export_shape() {
        let q = QuiverWithFrozen::parse(
            r#"{"vertices": ["v", "w"],
                "arrows": [{"id": "e", "src": "v", "tgt": "w"}]}"#,
        )
        .unwrap();
        let p = build_ginzburg(&q, 5).unwrap();
        let doc = presentation_json(&p);
        let text = serde_json::to_string_pretty(&doc).unwrap();
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(value["vertices"], serde_json::json!(["v", "w"]));
        assert_eq!(value["generators"][0]["id"], "g:e");
        assert_eq!(value["generators"][1]["degree"], -3);
        // dh_v = g g*.
        assert_eq!(
            value["differential"]["h:v"],
            serde_json::json!([{"coeff": "1", "word": ["g:e", "gs:e"]}])
        );
        assert_eq!(
            value["differential"]["h:w"],
            serde_json::json!([{"coeff": "-1", "word": ["gs:e", "g:e"]}])
        );
    }

    #[test]
    fn idempotent_term_shape() {
        use crate::dg::Field;
        let e = Element::term(
            Word::Idempotent("v".into()),
            Field::Rationals.from_i64(-2),
            "v".into(),
            "v".into(),
        );
        let json = serde_json::to_value(element_terms(&e)).unwrap();
        assert_eq!(
            json,
            serde_json::json!([{"coeff": "-2", "word": {"idempotent": "v"}}])
        );
    }
}
