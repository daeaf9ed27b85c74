//! On-disk layout of a classification database:
//!
//! ```text
//! DIR/manifest.json
//! DIR/index-<r>/<digest>.json
//! ```
//!
//! Polytope files are ordinary polytope documents with a few extra fields;
//! the reader ignores fields it does not know.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use gorenstein::construct::FamilySpec;
use gorenstein::intlin::IntVec;
use gorenstein::polytope::io::PolytopeDocument;
use gorenstein::LatticePolytope;

use crate::Failure;

pub const MANIFEST: &str = "manifest.json";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub engine_version: String,
    pub d: usize,
    pub r_min: usize,
    pub box_bound: i64,
    pub boxes_tried: Vec<i64>,
    pub box_warning: bool,
    pub counts: BTreeMap<usize, usize>,
    pub digests: BTreeMap<usize, Vec<String>>,
    /// Seconds since the Unix epoch; the only field that differs between
    /// identical runs.
    pub timestamp: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FamilyMeta {
    pub label: String,
    pub spec: FamilySpec,
    pub predicted_index: usize,
    /// `(s̃, degrees)` of the attached complete intersection, where defined.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ci_degrees: Option<(usize, Vec<u64>)>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StoredPolytope {
    pub lattice_dim: usize,
    pub vertices: Vec<IntVec>,
    pub digest: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub index: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub family: Option<FamilyMeta>,
}

impl StoredPolytope {
    pub fn new(p: &LatticePolytope) -> StoredPolytope {
        let doc = PolytopeDocument::from_polytope(p);
        StoredPolytope {
            lattice_dim: doc.lattice_dim,
            vertices: doc.vertices,
            digest: p.canonical_form().digest_hex(),
            index: None,
            family: None,
        }
    }

    pub fn to_json(&self) -> String {
        pretty(self)
    }
}

/// Pretty JSON with arrays of scalars kept on one line, newline-terminated.
pub fn pretty<T: Serialize + ?Sized>(value: &T) -> String {
    let text = serde_json::to_string_pretty(value).expect("serializable");
    let mut out = String::with_capacity(text.len());
    let mut rest = text.as_str();
    while let Some(i) = rest.find('[') {
        out.push_str(&rest[..i]);
        rest = &rest[i..];
        let end = rest.find(']').expect("balanced brackets");
        let inner = &rest[1..end];
        if inner.contains(['[', '{', '"']) {
            out.push('[');
            rest = &rest[1..];
        } else {
            let items: Vec<&str> = inner.split(',').map(str::trim).filter(|x| !x.is_empty()).collect();
            out.push('[');
            out.push_str(&items.join(", "));
            out.push(']');
            rest = &rest[end + 1..];
        }
    }
    out.push_str(rest);
    out.push('\n');
    out
}

pub fn index_dir(root: &Path, r: usize) -> PathBuf {
    root.join(format!("index-{r}"))
}

/// Writes `contents` unless the file already holds exactly that.
pub fn write_if_changed(path: &Path, contents: &str) -> Result<(), Failure> {
    if fs::read_to_string(path).ok().as_deref() == Some(contents) {
        return Ok(());
    }
    fs::write(path, contents).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

pub fn read_manifest(root: &Path) -> Result<Manifest, Failure> {
    let path = root.join(MANIFEST);
    let text = fs::read_to_string(&path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

pub fn write_manifest(root: &Path, m: &Manifest) -> Result<(), Failure> {
    write_if_changed(&root.join(MANIFEST), &pretty(m))
}

/// `.json` files of one index directory, sorted by name.
pub fn polytope_files(root: &Path, r: usize) -> Result<Vec<PathBuf>, Failure> {
    let dir = index_dir(root, r);
    if !dir.exists() {
        return Ok(Vec::new());
    }
    let mut files: Vec<PathBuf> = fs::read_dir(&dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    Ok(files)
}

/// Index directories present under `root`.
pub fn index_dirs(root: &Path) -> Result<Vec<usize>, Failure> {
    let mut out = Vec::new();
    for e in fs::read_dir(root)? {
        let name = e?.file_name();
        if let Some(r) = name.to_str().and_then(|n| n.strip_prefix("index-")).and_then(|n| n.parse().ok()) {
            out.push(r);
        }
    }
    out.sort();
    Ok(out)
}

pub fn read_stored(path: &Path) -> Result<(StoredPolytope, LatticePolytope), String> {
    let text = fs::read_to_string(path).map_err(|e| e.to_string())?;
    let stored: StoredPolytope = serde_json::from_str(&text).map_err(|e| format!("parse error: {e}"))?;
    let doc = PolytopeDocument { lattice_dim: stored.lattice_dim, vertices: stored.vertices.clone() };
    let p = doc.to_polytope().map_err(|e| e.to_string())?;
    Ok((stored, p))
}
