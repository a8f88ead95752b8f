//! JSON input files and their loaders.
//!
//! Every file read through an [`InputSet`] is hashed so that reports can
//! record exactly what they were computed from.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use acyc_core::action::{group_closure, FiniteGroup, Generator, GroupAction, Permutation};
use acyc_core::constructions::MirroredComplex;
use acyc_core::groups;
use acyc_core::simplicial::{SimplicialComplex, VertexId};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::corpus;

#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}:{column}: {message}")]
    Json {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: {message}")]
    Invalid { path: String, message: String },
}

impl InputError {
    fn invalid(path: &Path, message: impl ToString) -> Self {
        InputError::Invalid {
            path: path.display().to_string(),
            message: message.to_string(),
        }
    }
}

/// `{ "vertices": [...], "facets": [[...], ...] }`. An empty or missing
/// vertex list means "the vertices of the facets".
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexFile {
    #[serde(default)]
    pub vertices: Vec<String>,
    pub facets: Vec<Vec<String>>,
}

impl ComplexFile {
    pub fn from_complex(c: &SimplicialComplex) -> Self {
        ComplexFile {
            vertices: c.labels().to_vec(),
            facets: c.labelled_facets(),
        }
    }

    pub fn build(&self) -> Result<SimplicialComplex, String> {
        if let Some(i) = self.facets.iter().position(|f| f.is_empty()) {
            return Err(format!("facet {i} is empty"));
        }
        if !self.vertices.is_empty() {
            for (i, f) in self.facets.iter().enumerate() {
                if let Some(v) = f.iter().find(|v| !self.vertices.contains(v)) {
                    return Err(format!("facet {i} {f:?} uses unknown vertex {v:?}"));
                }
            }
            SimplicialComplex::from_facets(&self.vertices, &self.facets).map_err(|e| e.to_string())
        } else {
            SimplicialComplex::from_labelled_facets(&self.facets).map_err(|e| e.to_string())
        }
    }
}

/// Either an inline complex or a path relative to the referring file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ComplexRef {
    File(String),
    Inline(ComplexFile),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorFile {
    pub name: String,
    /// Vertex label to vertex label; unmapped vertices are fixed.
    #[serde(default)]
    pub map: BTreeMap<String, String>,
    /// Declared order, for generators that act with a kernel (for example
    /// a generator of Z/n acting trivially).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionFile {
    pub complex: ComplexRef,
    pub generators: Vec<GeneratorFile>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MirroredFile {
    #[serde(default)]
    pub vertices: Vec<String>,
    pub facets: Vec<Vec<String>>,
    pub boundary_facets: Vec<Vec<String>>,
}

/// A group given by name (`"Z2xZ2"`, `"S3"`, `"D4"`, ...) or by permutation
/// generators on `0..degree`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupFile {
    Named { name: String },
    Permutations { generators: Vec<Vec<u32>> },
}

/// A group with display names for its generators.
#[derive(Clone, Debug)]
pub struct NamedGroup {
    pub group: FiniteGroup,
    pub generator_names: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

/// Resolves a command-line input: an existing path, or else the name of a
/// fixture in the corpus (with or without `.json`).
pub fn resolve(arg: &str) -> PathBuf {
    let p = PathBuf::from(arg);
    if p.exists() {
        return p;
    }
    let dir = corpus::corpus_dir();
    for candidate in [dir.join(arg), dir.join(format!("{arg}.json"))] {
        if candidate.is_file() {
            return candidate;
        }
    }
    p
}

/// Loads input files and remembers their digests.
#[derive(Debug, Default)]
pub struct InputSet {
    digests: Vec<InputDigest>,
    max_group_order: Option<usize>,
}

impl InputSet {
    pub fn new(max_group_order: usize) -> Self {
        InputSet {
            digests: Vec::new(),
            max_group_order: Some(max_group_order),
        }
    }

    pub fn digests(&self) -> &[InputDigest] {
        &self.digests
    }

    pub fn into_digests(self) -> Vec<InputDigest> {
        self.digests
    }

    fn max_order(&self) -> usize {
        self.max_group_order.unwrap_or(acyc_core::action::DEFAULT_MAX_GROUP_ORDER)
    }

    fn read<T: for<'de> Deserialize<'de>>(&mut self, path: &Path) -> Result<T, InputError> {
        let bytes = fs::read(path).map_err(|source| InputError::Io {
            path: path.display().to_string(),
            source,
        })?;
        self.digests.push(InputDigest {
            path: display_path(path),
            sha256: hex::encode(Sha256::digest(&bytes)),
        });
        serde_json::from_slice(&bytes).map_err(|e| json_error(path, &e))
    }

    pub fn complex(&mut self, path: &Path) -> Result<SimplicialComplex, InputError> {
        let f: ComplexFile = self.read(path)?;
        f.build().map_err(|m| InputError::invalid(path, m))
    }

    pub fn mirrored(&mut self, path: &Path) -> Result<MirroredComplex, InputError> {
        let f: MirroredFile = self.read(path)?;
        let space = ComplexFile {
            vertices: f.vertices.clone(),
            facets: f.facets,
        }
        .build()
        .map_err(|m| InputError::invalid(path, m))?;
        let boundary = ComplexFile {
            vertices: Vec::new(),
            facets: f.boundary_facets,
        }
        .build()
        .map_err(|m| InputError::invalid(path, format!("boundary: {m}")))?;
        MirroredComplex::new(space, boundary).map_err(|e| InputError::invalid(path, e))
    }

    pub fn action(&mut self, path: &Path) -> Result<GroupAction, InputError> {
        let f: ActionFile = self.read(path)?;
        let complex = match &f.complex {
            ComplexRef::Inline(c) => c.build().map_err(|m| InputError::invalid(path, m))?,
            ComplexRef::File(rel) => {
                let target = path.parent().unwrap_or(Path::new(".")).join(rel);
                self.complex(&target)?
            }
        };
        let generators = f
            .generators
            .iter()
            .map(|g| generator(&complex, g).map_err(|m| InputError::invalid(path, m)))
            .collect::<Result<Vec<_>, _>>()?;
        GroupAction::from_generators(complex, generators, self.max_order()).map_err(|e| InputError::invalid(path, e))
    }

    /// A group file, or the group of an action file.
    pub fn group(&mut self, path: &Path) -> Result<NamedGroup, InputError> {
        let value: Value = self.read(path)?;
        if value.get("complex").is_some() {
            self.digests.pop();
            let a = self.action(path)?;
            return Ok(NamedGroup {
                group: a.group().clone(),
                generator_names: a.generator_names().to_vec(),
            });
        }
        let f: GroupFile = serde_json::from_value(value)
            .map_err(|e| InputError::invalid(path, format!("expected {{\"name\": ...}} or {{\"generators\": ...}}: {e}")))?;
        match f {
            GroupFile::Named { name } => {
                let group = groups::by_name(&name).ok_or_else(|| InputError::invalid(path, format!("unknown group {name:?}")))?;
                if group.order() > self.max_order() {
                    return Err(InputError::invalid(path, format!("group {name} exceeds the order bound")));
                }
                let generator_names = (0..group.generators().len()).map(|i| format!("s{i}")).collect();
                Ok(NamedGroup { group, generator_names })
            }
            GroupFile::Permutations { generators } => {
                let degree = generators.first().map_or(1, Vec::len);
                let mut perms = Vec::new();
                for (i, g) in generators.into_iter().enumerate() {
                    if g.len() != degree {
                        return Err(InputError::invalid(path, format!("generator {i} has degree {}, expected {degree}", g.len())));
                    }
                    perms.push(
                        Permutation::new(g).ok_or_else(|| InputError::invalid(path, format!("generator {i} is not a permutation")))?,
                    );
                }
                let group = group_closure(degree, &perms, self.max_order()).map_err(|e| InputError::invalid(path, e))?;
                let generator_names = (0..perms.len()).map(|i| format!("s{i}")).collect();
                Ok(NamedGroup { group, generator_names })
            }
        }
    }
}

/// Corpus files are recorded as `corpus:<file>` so that reports do not
/// depend on where the corpus lives.
fn display_path(path: &Path) -> String {
    let dir = corpus::corpus_dir();
    let canonical = |p: &Path| fs::canonicalize(p).unwrap_or_else(|_| p.to_path_buf());
    match canonical(path).strip_prefix(canonical(&dir)) {
        Ok(rel) => format!("corpus:{}", rel.display()),
        Err(_) => path.display().to_string(),
    }
}

fn generator(c: &SimplicialComplex, g: &GeneratorFile) -> Result<Generator, String> {
    let lookup = |label: &String| {
        c.vertex_id(label)
            .ok_or_else(|| format!("generator {:?} mentions unknown vertex {label:?}", g.name))
    };
    let mut vertex_map: Vec<VertexId> = (0..c.vertex_count() as VertexId).collect();
    for (from, to) in &g.map {
        vertex_map[lookup(from)? as usize] = lookup(to)?;
    }
    Ok(Generator {
        name: g.name.clone(),
        vertex_map,
        order: g.order,
    })
}

fn json_error(path: &Path, e: &serde_json::Error) -> InputError {
    InputError::Json {
        path: path.display().to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

/// Indented JSON with a trailing newline, the on-disk form of every file
/// the crate writes. Arrays of scalars stay on one line, so facets read one
/// per line.
pub fn to_pretty<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("serializable");
    let mut s = String::new();
    write_value(&mut s, &v, 0);
    s.push('\n');
    s
}

fn write_value(out: &mut String, v: &Value, indent: usize) {
    let pad = |n: usize| "  ".repeat(n);
    match v {
        Value::Array(items) if items.iter().all(|x| !x.is_array() && !x.is_object()) => {
            let parts: Vec<String> = items.iter().map(Value::to_string).collect();
            out.push('[');
            out.push_str(&parts.join(", "));
            out.push(']');
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_value(out, x, indent + 1);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (k, x)) in map.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_value(out, x, indent + 1);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        scalar => out.push_str(&scalar.to_string()),
    }
}
