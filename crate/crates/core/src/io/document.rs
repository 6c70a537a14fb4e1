//! JSON poset documents.
//!
//! ```json
//! {
//!   "schema": 1,
//!   "elements": ["a", "b", "c"],
//!   "realizers": { "l1": ["a", "b", "c"], "l2": ["b", "a", "c"] },
//!   "metadata": { "family": "random2d", "n": 3, "seed": 7 }
//! }
//! ```
//!
//! The body is either `realizers` or `relations` (a list of `[lower, upper]`
//! pairs), never both. Unknown fields are rejected.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::constructions::{Family, GeneratedFamily};
use crate::error::{Error, Result};
use crate::order::{Poset, RealizerPair};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Realizers {
    pub l1: Vec<String>,
    pub l2: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<Family>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetDocument {
    pub schema: u32,
    pub elements: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub realizers: Option<Realizers>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relations: Option<Vec<[String; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
}

fn doc_err(field: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Document {
        field: field.into(),
        line: None,
        message: message.into(),
    }
}

impl PosetDocument {
    pub fn from_realizers(rp: &RealizerPair) -> Self {
        PosetDocument {
            schema: SCHEMA_VERSION,
            elements: rp.l1().to_vec(),
            realizers: Some(Realizers {
                l1: rp.l1().to_vec(),
                l2: rp.l2().to_vec(),
            }),
            relations: None,
            metadata: None,
        }
    }

    /// Relations body listing the cover pairs of `p`.
    pub fn from_poset(p: &Poset) -> Self {
        let relations = p
            .cover_graph()
            .edges
            .iter()
            .map(|&(u, v)| [p.name(u).to_string(), p.name(v).to_string()])
            .collect();
        PosetDocument {
            schema: SCHEMA_VERSION,
            elements: p.names().to_vec(),
            realizers: None,
            relations: Some(relations),
            metadata: None,
        }
    }

    pub fn from_family(g: &GeneratedFamily) -> Self {
        let mut doc = Self::from_realizers(&g.realizers);
        doc.metadata = Some(Metadata {
            family: Some(g.family),
            w: g.w,
            n: g.n,
            seed: g.seed,
        });
        doc
    }

    /// Parses and validates, including acyclicity of a relations body.
    /// Syntax and type errors carry the line and the path of the field.
    pub fn parse(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let doc: PosetDocument = serde_path_to_error::deserialize(de).map_err(|e| {
            let field = e.path().to_string();
            let inner = e.into_inner();
            let full = inner.to_string();
            let message = match full.rsplit_once(" at line ") {
                Some((msg, _)) => msg.to_string(),
                None => full,
            };
            Error::Document {
                field,
                line: Some(inner.line()),
                message,
            }
        })?;
        if doc.relations.is_some() {
            doc.poset()?;
        } else {
            doc.validate()?;
        }
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents always serialize");
        s.push('\n');
        s
    }

    pub fn validate(&self) -> Result<()> {
        if self.schema != SCHEMA_VERSION {
            return Err(doc_err(
                "schema",
                format!(
                    "unsupported version {}, expected {SCHEMA_VERSION}",
                    self.schema
                ),
            ));
        }
        if self.elements.is_empty() {
            return Err(doc_err("elements", "no elements"));
        }
        let mut index = HashMap::with_capacity(self.elements.len());
        for (i, name) in self.elements.iter().enumerate() {
            if index.insert(name.as_str(), i).is_some() {
                return Err(doc_err(
                    format!("elements[{i}]"),
                    format!("duplicate name `{name}`"),
                ));
            }
        }
        match (&self.realizers, &self.relations) {
            (Some(_), Some(_)) => Err(doc_err(
                ".",
                "give either `realizers` or `relations`, not both",
            )),
            (None, None) => Err(doc_err(".", "missing body: `realizers` or `relations`")),
            (Some(r), None) => {
                check_permutation(&index, &r.l1, "realizers.l1")?;
                check_permutation(&index, &r.l2, "realizers.l2")
            }
            (None, Some(rel)) => {
                for (i, [u, v]) in rel.iter().enumerate() {
                    for (j, name) in [u, v].into_iter().enumerate() {
                        if !index.contains_key(name.as_str()) {
                            return Err(doc_err(
                                format!("relations[{i}][{j}]"),
                                format!("unknown element `{name}`"),
                            ));
                        }
                    }
                    if u == v {
                        return Err(doc_err(
                            format!("relations[{i}]"),
                            format!("`{u}` related to itself"),
                        ));
                    }
                }
                Ok(())
            }
        }
    }

    pub fn realizer_pair(&self) -> Option<Result<RealizerPair>> {
        self.realizers
            .as_ref()
            .map(|r| RealizerPair::new(r.l1.clone(), r.l2.clone()))
    }

    /// The poset with element indices following `elements`.
    pub fn poset(&self) -> Result<Poset> {
        self.validate()?;
        let pairs: Vec<(&str, &str)> = match (&self.realizers, &self.relations) {
            (Some(r), _) => {
                let pos2: HashMap<&str, usize> =
                    r.l2.iter()
                        .enumerate()
                        .map(|(i, x)| (x.as_str(), i))
                        .collect();
                let mut pairs = Vec::new();
                for (i, u) in r.l1.iter().enumerate() {
                    for v in &r.l1[i + 1..] {
                        if pos2[u.as_str()] < pos2[v.as_str()] {
                            pairs.push((u.as_str(), v.as_str()));
                        }
                    }
                }
                pairs
            }
            (None, Some(rel)) => rel.iter().map(|[u, v]| (u.as_str(), v.as_str())).collect(),
            (None, None) => unreachable!("validated"),
        };
        Poset::from_relations(&self.elements, &pairs).map_err(|e| match e {
            Error::Cycle(_) => doc_err("relations", e.to_string()),
            other => other,
        })
    }
}

fn check_permutation(index: &HashMap<&str, usize>, list: &[String], field: &str) -> Result<()> {
    let mut seen = HashSet::with_capacity(list.len());
    for (i, name) in list.iter().enumerate() {
        if !index.contains_key(name.as_str()) {
            return Err(doc_err(
                format!("{field}[{i}]"),
                format!("unknown element `{name}`"),
            ));
        }
        if !seen.insert(name.as_str()) {
            return Err(doc_err(
                format!("{field}[{i}]"),
                format!("`{name}` listed twice"),
            ));
        }
    }
    if list.len() != index.len() {
        return Err(doc_err(
            field,
            format!("lists {} of {} elements", list.len(), index.len()),
        ));
    }
    Ok(())
}
