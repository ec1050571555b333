//! JSON problem documents.
//!
//! Every document carries `"schema": 1` and a `"kind"`. Matrix entries are
//! strings holding an integer or `"inf"`, labels are arbitrary strings and
//! subsets are arrays of labels.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::blowup::BlowupProblem;
use crate::complexes::SimplicialComplex;
use crate::coxeter::{CoxeterMatrix, Entry, Subset};
use crate::groups::GluingSystem;
use crate::linrep::{parse_rational, MinkowskiVector, Rational};
use crate::{input_err, Result};

/// The only schema version understood.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProblemDocument {
    pub schema: u32,
    #[serde(flatten)]
    pub problem: Problem,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Problem {
    Blowup(BlowupDoc),
    GluingSystem(GluingDoc),
    ClassifyAssoc(ClassifyDoc),
    Permutohedron(CoxeterDoc),
    Represent(RepresentDoc),
    Enumerate(EnumerateDoc),
    Minkowski(MinkowskiDoc),
}

impl Problem {
    pub fn kind(&self) -> &'static str {
        match self {
            Problem::Blowup(_) => "blowup",
            Problem::GluingSystem(_) => "gluing-system",
            Problem::ClassifyAssoc(_) => "classify-assoc",
            Problem::Permutohedron(_) => "permutohedron",
            Problem::Represent(_) => "represent",
            Problem::Enumerate(_) => "enumerate",
            Problem::Minkowski(_) => "minkowski",
        }
    }
}

/// A Coxeter matrix, given either in full or by a Schläfli symbol (whose
/// generators are then `"1"` to `"n+1"`).
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct CoxeterDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schlafli: Option<Vec<u32>>,
}

impl CoxeterDoc {
    pub fn to_matrix(&self) -> Result<CoxeterMatrix> {
        match (&self.generators, &self.matrix, &self.schlafli) {
            (None, None, Some(s)) => CoxeterMatrix::schlafli(s),
            (Some(g), Some(m), None) => parse_matrix(g, m),
            _ => input_err("give either \"generators\" and \"matrix\", or \"schlafli\""),
        }
    }
}

fn parse_matrix(gens: &[String], rows: &[Vec<String>]) -> Result<CoxeterMatrix> {
    let entries = rows
        .iter()
        .map(|r| r.iter().map(|e| Entry::parse(e)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    CoxeterMatrix::new(gens.to_vec(), entries)
}

fn subsets(matrix: &CoxeterMatrix, sets: &[Vec<String>]) -> Result<Vec<Subset>> {
    sets.iter().map(|s| matrix.subset_from_labels(s)).collect()
}

/// Which blow-up collection to use when `r` is not listed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Collection {
    Maximal,
    Minimal,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct BlowupDoc {
    #[serde(flatten)]
    pub coxeter: CoxeterDoc,
    /// Facets of `L`; all spherical subsets when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l_facets: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub collection: Option<Collection>,
    /// Explicit blow-up collection; empty when neither this nor
    /// `collection` is given.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<Vec<Vec<String>>>,
}

impl BlowupDoc {
    pub fn to_problem(&self) -> Result<BlowupProblem> {
        let matrix = self.coxeter.to_matrix()?;
        let facets = self.l_facets.as_ref().map(|f| subsets(&matrix, f)).transpose()?;
        match (self.collection, &self.r) {
            (Some(_), Some(_)) => input_err("give at most one of \"collection\" and \"r\""),
            (Some(Collection::Maximal), None) => BlowupProblem::maximal(matrix, facets),
            (Some(Collection::Minimal), None) => BlowupProblem::minimal(matrix, facets),
            (None, r) => {
                let r = r.as_ref().map(|r| subsets(&matrix, r)).transpose()?.unwrap_or_default();
                BlowupProblem::new(matrix, facets, r)
            }
        }
    }
}

/// Explicit gluing data on a framing system `(V, M, L)`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct GluingDoc {
    pub vertices: Vec<String>,
    pub matrix: Vec<Vec<String>>,
    pub l_facets: Vec<Vec<String>>,
    /// The involution `v -> bar v`; identity when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bar: Option<BTreeMap<String, String>>,
    /// `j[v][x] = j_v(x)`; unlisted points of a star are fixed.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub j: BTreeMap<String, BTreeMap<String, String>>,
    /// Pairs `[u, v]` with `u < v`; transitively closed by the reader.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<Vec<[String; 2]>>,
}

impl GluingDoc {
    pub fn to_system(&self) -> Result<GluingSystem> {
        let matrix = parse_matrix(&self.vertices, &self.matrix)?;
        let index = |l: &str| match matrix.index_of(l) {
            Some(i) => Ok(i),
            None => input_err(format!("unknown vertex {l:?}")),
        };
        let facets =
            self.l_facets.iter().map(|f| f.iter().map(|l| index(l)).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
        let complex = SimplicialComplex::from_facets(self.vertices.clone(), &facets)?;
        let n = self.vertices.len();
        let mut bar: Vec<usize> = (0..n).collect();
        if let Some(b) = &self.bar {
            for (k, v) in b {
                bar[index(k)?] = index(v)?;
            }
        }
        for k in self.j.keys() {
            index(k)?;
        }
        let mut j = Vec::with_capacity(n);
        for v in 0..n {
            let given = self.j.get(&self.vertices[v]);
            let mut pairs = Vec::new();
            for x in complex.star_vertices(v) {
                let y = match given.and_then(|m| m.get(&self.vertices[x])) {
                    Some(l) => index(l)?,
                    None if x == v => bar[v],
                    None => x,
                };
                pairs.push((x, y));
            }
            if let Some(m) = given {
                for k in m.keys() {
                    if !complex.star_vertices(v).contains(&index(k)?) {
                        return input_err(format!("j_{} is given at {k}, outside the star", self.vertices[v]));
                    }
                }
            }
            j.push(pairs);
        }
        let order = match &self.order {
            None => None,
            Some(pairs) => {
                let mut less = vec![vec![false; n]; n];
                for [u, v] in pairs {
                    less[index(u)?][index(v)?] = true;
                }
                for k in 0..n {
                    for a in 0..n {
                        for b in 0..n {
                            if less[a][k] && less[k][b] {
                                less[a][b] = true;
                            }
                        }
                    }
                }
                Some(less)
            }
        };
        GluingSystem::new(matrix, complex, bar, j, order)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ClassifyDoc {
    pub symbols: Vec<Vec<u32>>,
    /// Also run the maximal symmetry test on every symbol.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub max_symmetry: bool,
}

/// A gluing system given inline, either explicitly or as a blow-up.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SystemSource {
    Blowup(BlowupDoc),
    GluingSystem(GluingDoc),
}

impl SystemSource {
    pub fn to_system(&self) -> Result<GluingSystem> {
        match self {
            SystemSource::Blowup(b) => GluingSystem::from_blowup(&b.to_problem()?),
            SystemSource::GluingSystem(g) => g.to_system(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RepresentDoc {
    pub system: SystemSource,
    /// Parameters to evaluate, as rational strings; chosen by scanning when
    /// empty.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub t: Vec<String>,
}

impl RepresentDoc {
    pub fn parameters(&self) -> Result<Vec<Rational>> {
        self.t.iter().map(|s| parse_rational(s)).collect()
    }
}

/// A finitely presented group, or the group of a gluing system or blow-up.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct EnumerateDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relators: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub system: Option<SystemSource>,
    /// Radius of the Cayley ball in the report; the whole group when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radius: Option<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct MinkowskiDoc {
    /// Named vectors of `R^{3,1}` with rational coordinates; the built-in
    /// fixtures when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vectors: Option<BTreeMap<String, [String; 4]>>,
    /// Pairs `[v, x]`: evaluate `r_v(x)`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub reflect: Vec<[String; 2]>,
}

impl MinkowskiDoc {
    pub fn to_vectors(&self) -> Result<Vec<(String, MinkowskiVector)>> {
        match &self.vectors {
            None => Ok(crate::linrep::minkowski_fixtures().into_iter().map(|(n, v)| (n.to_string(), v)).collect()),
            Some(map) => map
                .iter()
                .map(|(name, coords)| {
                    let parsed = coords.iter().map(|c| parse_rational(c)).collect::<Result<Vec<_>>>()?;
                    Ok((name.clone(), MinkowskiVector(parsed.try_into().expect("four coordinates"))))
                })
                .collect(),
        }
    }
}

/// Parses a document and checks the schema version.
pub fn parse_document(text: &str) -> Result<ProblemDocument> {
    let doc: ProblemDocument = serde_json::from_str(text).map_err(|e| crate::Error::Input(format!("bad document: {e}")))?;
    if doc.schema != SCHEMA_VERSION {
        return input_err(format!("unsupported schema {}; expected {SCHEMA_VERSION}", doc.schema));
    }
    Ok(doc)
}
