//! JSON input documents. Every document carries a `schema` tag naming its
//! kind and version, and unknown fields are rejected.

use serde::{de::DeserializeOwned, Deserialize, Serialize};

use gradecheck_core::graph::GraphSpec;
use gradecheck_core::groupoid::GroupoidSpec;
use gradecheck_core::kgraph::KGraphSpec;
use gradecheck_core::paction::PartialActionSpec;
use gradecheck_core::steinberg::AlgebraSpec;

pub const GRAPH_SCHEMA: &str = "gradecheck.graph/1";
pub const GROUPOID_SCHEMA: &str = "gradecheck.groupoid/1";
pub const PACTION_SCHEMA: &str = "gradecheck.paction/1";
pub const KGRAPH_SCHEMA: &str = "gradecheck.kgraph/1";
pub const ALGEBRA_SCHEMA: &str = "gradecheck.algebra/1";
pub const REPORT_SCHEMA: &str = "gradecheck.report/1";

/// Something that went wrong while reading a document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormatError(pub String);

impl std::fmt::Display for FormatError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

pub trait Document: Serialize + DeserializeOwned {
    const SCHEMA: &'static str;
    fn schema(&self) -> &str;
}

/// Parses `text` as a document of kind `D`. Errors name the line and column.
pub fn parse<D: Document>(text: &str) -> Result<D, FormatError> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| FormatError(format!("line {} column {}: {e}", e.line(), e.column())))?;
    match value.get("schema").and_then(|s| s.as_str()) {
        Some(s) if s == D::SCHEMA => {}
        Some(s) => return Err(FormatError(format!("field `schema`: expected `{}`, found `{s}`", D::SCHEMA))),
        None => return Err(FormatError(format!("field `schema`: missing, expected `{}`", D::SCHEMA))),
    }
    // Reparse from text so the error positions refer to the file.
    serde_json::from_str(text).map_err(|e| FormatError(format!("line {} column {}: {e}", e.line(), e.column())))
}

pub fn to_string<D: Document>(d: &D) -> String {
    let mut s = serde_json::to_string_pretty(d).expect("documents serialise");
    s.push('\n');
    s
}

macro_rules! document {
    ($t:ty, $schema:expr) => {
        impl Document for $t {
            const SCHEMA: &'static str = $schema;
            fn schema(&self) -> &str {
                &self.schema
            }
        }
    };
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDoc {
    pub schema: String,
    pub vertices: Vec<String>,
    #[serde(default)]
    pub edges: Vec<EdgeDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub infinite_emitters: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rays: Vec<RayDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDoc {
    pub id: String,
    pub src: String,
    pub rng: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RayDoc {
    pub id: String,
    /// Core vertices with an edge into the head of the ray.
    pub entries: Vec<String>,
}

document!(GraphDoc, GRAPH_SCHEMA);

impl GraphDoc {
    pub fn spec(&self) -> GraphSpec {
        GraphSpec {
            vertices: self.vertices.clone(),
            edges: self.edges.iter().map(|e| (e.id.clone(), e.src.clone(), e.rng.clone())).collect(),
            infinite_emitters: self.infinite_emitters.clone(),
            rays: self.rays.iter().map(|r| (r.id.clone(), r.entries.clone())).collect(),
        }
    }

    pub fn from_spec(s: &GraphSpec) -> GraphDoc {
        GraphDoc {
            schema: GRAPH_SCHEMA.into(),
            vertices: s.vertices.clone(),
            edges: s.edges.iter().map(|(id, src, rng)| EdgeDoc { id: id.clone(), src: src.clone(), rng: rng.clone() }).collect(),
            infinite_emitters: s.infinite_emitters.clone(),
            rays: s.rays.iter().map(|(id, entries)| RayDoc { id: id.clone(), entries: entries.clone() }).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupoidDoc {
    pub schema: String,
    pub group: String,
    pub units: Vec<String>,
    pub morphisms: Vec<MorphismDoc>,
    /// `[x, y, xy]` for every composable pair with `d(x) = c(y)`.
    pub compose: Vec<[String; 3]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismDoc {
    pub id: String,
    pub dom: String,
    pub cod: String,
    pub deg: Vec<i64>,
}

document!(GroupoidDoc, GROUPOID_SCHEMA);

impl GroupoidDoc {
    pub fn spec(&self) -> GroupoidSpec {
        GroupoidSpec {
            group: self.group.clone(),
            units: self.units.clone(),
            morphisms: self.morphisms.iter().map(|m| (m.id.clone(), m.dom.clone(), m.cod.clone(), m.deg.clone())).collect(),
            compose: self.compose.iter().map(|[x, y, z]| (x.clone(), y.clone(), z.clone())).collect(),
        }
    }

    pub fn from_spec(s: &GroupoidSpec) -> GroupoidDoc {
        GroupoidDoc {
            schema: GROUPOID_SCHEMA.into(),
            group: s.group.clone(),
            units: s.units.clone(),
            morphisms: s
                .morphisms
                .iter()
                .map(|(id, dom, cod, deg)| MorphismDoc { id: id.clone(), dom: dom.clone(), cod: cod.clone(), deg: deg.clone() })
                .collect(),
            compose: s.compose.iter().map(|(x, y, z)| [x.clone(), y.clone(), z.clone()]).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartialActionDoc {
    pub schema: String,
    pub group: String,
    pub points: Vec<String>,
    /// Group elements missing here act by the empty map.
    pub maps: Vec<MapDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDoc {
    pub gamma: Vec<i64>,
    /// `[y, θ_γ(y)]`
    pub pairs: Vec<[String; 2]>,
}

document!(PartialActionDoc, PACTION_SCHEMA);

impl PartialActionDoc {
    pub fn spec(&self) -> PartialActionSpec {
        PartialActionSpec {
            group: self.group.clone(),
            points: self.points.clone(),
            maps: self
                .maps
                .iter()
                .map(|m| (m.gamma.clone(), m.pairs.iter().map(|[a, b]| (a.clone(), b.clone())).collect()))
                .collect(),
        }
    }

    pub fn from_spec(s: &PartialActionSpec) -> PartialActionDoc {
        PartialActionDoc {
            schema: PACTION_SCHEMA.into(),
            group: s.group.clone(),
            points: s.points.clone(),
            maps: s
                .maps
                .iter()
                .map(|(g, pairs)| MapDoc { gamma: g.clone(), pairs: pairs.iter().map(|(a, b)| [a.clone(), b.clone()]).collect() })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KGraphDoc {
    pub schema: String,
    pub rank: usize,
    pub vertices: Vec<String>,
    pub edges: Vec<KEdgeDoc>,
    /// `[a, b, c, d]`: the word `ab` equals the word `cd`.
    pub squares: Vec<[String; 4]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KEdgeDoc {
    pub id: String,
    pub color: usize,
    pub src: String,
    pub rng: String,
}

document!(KGraphDoc, KGRAPH_SCHEMA);

impl KGraphDoc {
    pub fn spec(&self) -> KGraphSpec {
        KGraphSpec {
            rank: self.rank,
            vertices: self.vertices.clone(),
            edges: self.edges.iter().map(|e| (e.id.clone(), e.color, e.src.clone(), e.rng.clone())).collect(),
            squares: self.squares.clone(),
        }
    }

    pub fn from_spec(s: &KGraphSpec) -> KGraphDoc {
        KGraphDoc {
            schema: KGRAPH_SCHEMA.into(),
            rank: s.rank,
            vertices: s.vertices.clone(),
            edges: s
                .edges
                .iter()
                .map(|(id, color, src, rng)| KEdgeDoc { id: id.clone(), color: *color, src: src.clone(), rng: rng.clone() })
                .collect(),
            squares: s.squares.clone(),
        }
    }
}

/// A graded algebra, given either by structure constants or as the
/// Steinberg algebra of an embedded groupoid document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDoc {
    pub schema: String,
    /// `Q` or `Z/p` for a supported prime `p`.
    pub field: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub basis: Vec<BasisDoc>,
    /// `[x, y, [[b, coefficient], ...]]`; missing products are zero.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub products: Vec<ProductDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub local_units: Vec<Vec<[String; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub steinberg: Option<GroupoidDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisDoc {
    pub id: String,
    pub deg: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductDoc {
    pub x: String,
    pub y: String,
    pub terms: Vec<[String; 2]>,
}

document!(AlgebraDoc, ALGEBRA_SCHEMA);

impl AlgebraDoc {
    /// Structure-constant part; `None` for Steinberg documents.
    pub fn spec(&self) -> Option<AlgebraSpec> {
        if self.steinberg.is_some() {
            return None;
        }
        let pairs = |v: &Vec<[String; 2]>| v.iter().map(|[a, b]| (a.clone(), b.clone())).collect();
        Some(AlgebraSpec {
            group: self.group.clone().unwrap_or_default(),
            basis: self.basis.iter().map(|b| (b.id.clone(), b.deg.clone())).collect(),
            products: self.products.iter().map(|p| (p.x.clone(), p.y.clone(), pairs(&p.terms))).collect(),
            local_units: self.local_units.iter().map(pairs).collect(),
        })
    }

    pub fn from_spec(field: &str, s: &AlgebraSpec) -> AlgebraDoc {
        let pairs = |v: &Vec<(String, String)>| v.iter().map(|(a, b)| [a.clone(), b.clone()]).collect();
        AlgebraDoc {
            schema: ALGEBRA_SCHEMA.into(),
            field: field.into(),
            group: Some(s.group.clone()),
            basis: s.basis.iter().map(|(id, deg)| BasisDoc { id: id.clone(), deg: deg.clone() }).collect(),
            products: s.products.iter().map(|(x, y, t)| ProductDoc { x: x.clone(), y: y.clone(), terms: pairs(t) }).collect(),
            local_units: s.local_units.iter().map(pairs).collect(),
            steinberg: None,
        }
    }
}
