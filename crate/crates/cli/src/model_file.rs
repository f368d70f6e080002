//! TOML model files.

use std::path::Path;

use mldual::variety::Model;
use mldual::zoo::{Role, ZooEntry};
use mldual::{Error, Polynomial, Result, VariableSet};
use serde::{Deserialize, Serialize};

use crate::FORMAT_VERSION;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expected {
    pub ml_degree: usize,
    pub provenance: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub format_version: u32,
    pub name: String,
    /// `primal` for `X`, `dual` for `X*`.
    pub role: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub description: String,
    pub variables: Vec<String>,
    pub generators: Vec<String>,
    #[serde(default, skip_serializing_if = "is_false")]
    pub lagrange_subset: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub data: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<Expected>,
}

fn is_false(b: &bool) -> bool {
    !*b
}

impl ModelFile {
    pub fn from_zoo(e: &ZooEntry) -> Self {
        ModelFile {
            format_version: FORMAT_VERSION,
            name: e.name.to_string(),
            role: e.role.name().to_string(),
            description: e.description.to_string(),
            variables: e.vars.clone(),
            generators: e.model().expect("zoo models parse").generators().iter().map(|g| g.to_string()).collect(),
            lagrange_subset: e.lagrange_subset,
            data: e.data.as_ref().map(|d| d.iter().map(|s| s.to_string()).collect()),
            notes: e.notes.iter().map(|s| s.to_string()).collect(),
            expected: e.ml_degree.map(|d| Expected { ml_degree: d, provenance: e.provenance.to_string() }),
        }
    }

    /// A file for `model` with canonical generator strings.
    pub fn from_model(name: &str, role: Role, description: &str, model: &Model) -> Self {
        ModelFile {
            format_version: FORMAT_VERSION,
            name: name.to_string(),
            role: role.name().to_string(),
            description: description.to_string(),
            variables: model.vars().names().to_vec(),
            generators: model.generators().iter().map(|g| g.to_string()).collect(),
            lagrange_subset: false,
            data: None,
            notes: Vec::new(),
            expected: None,
        }
    }

    /// Parses and validates a model file; generators are rewritten in
    /// canonical form.
    pub fn parse(text: &str) -> Result<Self> {
        let mut f: ModelFile = toml::from_str(text).map_err(|e| Error::InvalidData(format!("model file: {}", e.message())))?;
        if f.format_version != FORMAT_VERSION {
            return Err(Error::InvalidData(format!(
                "model file format_version {} is not supported (expected {FORMAT_VERSION})",
                f.format_version
            )));
        }
        f.role()?;
        let vars = VariableSet::new(&f.variables)?;
        f.generators = f
            .generators
            .iter()
            .map(|g| Polynomial::parse(&vars, g).map(|p| p.to_string()))
            .collect::<Result<_>>()?;
        f.model()?;
        Ok(f)
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn to_text(&self) -> String {
        toml::to_string(self).expect("model files serialize")
    }

    pub fn role(&self) -> Result<Role> {
        self.role.parse()
    }

    pub fn model(&self) -> Result<Model> {
        let gens: Vec<&str> = self.generators.iter().map(|s| s.as_str()).collect();
        let m = Model::parse(&self.variables, &gens)?;
        Ok(if self.lagrange_subset { m.with_codim(gens.len()) } else { m })
    }
}
