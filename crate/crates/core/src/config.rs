//! Group files and the bundled example configurations.
//!
//! A group file is JSON of the form
//! `{"name": ..., "nodes": [...], "cartan": [[...]], "K": [...]}` with `K`
//! optional.

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::cartan::{GeneralizedCartanMatrix, GluedDiagram};
use crate::catalog;
use crate::error::{Error, Result};
use crate::nodes::NodeSet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupFile {
    pub name: String,
    pub nodes: Vec<String>,
    pub cartan: Vec<Vec<i64>>,
    #[serde(default, rename = "K")]
    pub k: Vec<String>,
}

impl GroupFile {
    pub fn from_matrix(name: &str, m: &GeneralizedCartanMatrix, k: NodeSet) -> Self {
        Self {
            name: name.to_string(),
            nodes: m.nodes().to_vec(),
            cartan: m.rows(),
            k: k.iter().map(|i| m.nodes()[i].clone()).collect(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn matrix(&self) -> Result<GeneralizedCartanMatrix> {
        GeneralizedCartanMatrix::validate(self.nodes.clone(), &self.cartan)
    }

    pub fn k_set(&self) -> Result<NodeSet> {
        self.matrix()?.node_set(&self.k)
    }
}

macro_rules! bundled {
    ($($file:literal),* $(,)?) => {
        /// File names and contents of the bundled configurations.
        pub const BUNDLED: &[(&str, &str)] = &[$(($file, include_str!(concat!("../configs/", $file)))),*];
    };
}

bundled!(
    "a2.json",
    "a2-k1.json",
    "a2-k2.json",
    "a3.json",
    "a3-k1.json",
    "a3-k2.json",
    "a3-k3.json",
    "a3-k12.json",
    "a3-k13.json",
    "a3-k23.json",
    "a3-k123.json",
    "b2.json",
    "b2-k1.json",
    "b2-k2.json",
    "b2-k12.json",
    "a1xa1.json",
    "a1xa1-k1.json",
    "a1xa1-k2.json",
    "a1xa1-k12.json",
    "affine-a1.json",
    "affine-a1-k1.json",
    "affine-a1-k2.json",
    "affine-a1-k12.json",
    "inf-a3-k23.json",
    "inf-a3-k12.json",
);

/// A bundled configuration by file name, with or without `.json`.
pub fn bundled(name: &str) -> Option<GroupFile> {
    let file = if name.ends_with(".json") { name.to_string() } else { format!("{name}.json") };
    BUNDLED
        .iter()
        .find(|(f, _)| *f == file)
        .map(|(_, text)| GroupFile::from_json(text).expect("bundled configs parse"))
}

/// Resolves a `--group` argument: an existing file, then a bundled
/// configuration, then a catalog name such as `A3` or `affine-A1`.
pub fn resolve(spec: &str) -> Result<GroupFile> {
    let path = Path::new(spec);
    if path.exists() {
        return GroupFile::load(path);
    }
    let base = path.file_name().and_then(|f| f.to_str()).unwrap_or(spec);
    if let Some(g) = bundled(base) {
        return Ok(g);
    }
    if let Some(m) = catalog::named(spec) {
        return Ok(GroupFile::from_matrix(spec, &m, NodeSet::empty()));
    }
    Err(Error::Config(format!("no group file, bundled config or catalog type named {spec:?}")))
}

/// Parses a comma-separated list of node names. Empty means the empty set.
pub fn parse_node_list(m: &GeneralizedCartanMatrix, csv: &str) -> Result<NodeSet> {
    let names: Vec<&str> = csv.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    m.node_set(&names)
}

/// A glued diagram in the group-file schema, plus the two copy maps.
pub fn diagram_json(d: &GluedDiagram, base: &GeneralizedCartanMatrix) -> Value {
    let m = &d.matrix;
    let map = |v: &[usize]| -> serde_json::Map<String, Value> {
        base.nodes().iter().zip(v).map(|(n, &i)| (n.clone(), json!(m.nodes()[i]))).collect()
    };
    json!({
        "name": format!("{} gluing", d.gluing),
        "nodes": m.nodes(),
        "cartan": m.rows(),
        "K": d.k.iter().map(|i| base.nodes()[i].clone()).collect::<Vec<_>>(),
        "flat_map": map(&d.flat_map),
        "sharp_map": map(&d.sharp_map),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_bundled_config_is_valid() {
        for (file, _) in BUNDLED {
            let g = bundled(file).unwrap();
            let m = g.matrix().unwrap();
            assert!(g.k_set().unwrap().is_subset(NodeSet::full(m.rank())), "{file}");
        }
        assert_eq!(BUNDLED.len(), 25);
    }

    #[test]
    fn resolve_falls_back_to_catalog() {
        assert_eq!(resolve("a3-k2").unwrap().k, vec!["2".to_string()]);
        assert_eq!(resolve("B2").unwrap().cartan, vec![vec![2, -2], vec![-1, 2]]);
        assert!(matches!(resolve("nope"), Err(Error::Config(_))));
    }

    #[test]
    fn node_lists() {
        let m = catalog::type_a(3);
        assert_eq!(parse_node_list(&m, "").unwrap(), NodeSet::empty());
        assert_eq!(parse_node_list(&m, "1, 3").unwrap(), [0, 2].into_iter().collect());
        assert!(parse_node_list(&m, "4").is_err());
    }

    #[test]
    fn k_defaults_to_empty() {
        let g = GroupFile::from_json(r#"{"name": "x", "nodes": ["a"], "cartan": [[2]]}"#).unwrap();
        assert!(g.k.is_empty());
    }
}
