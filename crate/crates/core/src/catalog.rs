//! Named instances shipped with the crate, overridable from a directory.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::finspace::{Closure, FinSpace, SpaceDoc};
use crate::metrize::MetricBundle;
use crate::monoid::{MonoidDoc, TopMonoid};
use crate::quniform::{BaseDoc, EntourageBase};

/// Environment variable naming a catalog directory to use instead of the
/// embedded one.
pub const CATALOG_ENV: &str = "QTOP_CATALOG";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InstanceKind {
    Space,
    Base,
    Monoid,
    Bundle,
}

impl InstanceKind {
    fn dir(self) -> &'static str {
        match self {
            InstanceKind::Space => "spaces",
            InstanceKind::Base => "bases",
            InstanceKind::Monoid => "monoids",
            InstanceKind::Bundle => "bundles",
        }
    }
}

/// One catalog file: `{"name": .., "kind": .., "payload": ..}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Instance {
    pub name: String,
    pub kind: InstanceKind,
    pub payload: Value,
}

impl Instance {
    pub fn parse(text: &str) -> Result<Instance> {
        Ok(serde_json::from_str(text)?)
    }

    /// Parses the payload strictly and re-serializes it in canonical form.
    pub fn canonical(&self) -> Result<Instance> {
        let payload = match self.kind {
            InstanceKind::Space => serde_json::to_value(self.space()?.to_doc())?,
            InstanceKind::Base => serde_json::to_value(self.base()?.to_doc())?,
            InstanceKind::Monoid => serde_json::to_value(self.monoid()?.to_doc())?,
            InstanceKind::Bundle => serde_json::to_value(self.bundle()?)?,
        };
        Ok(Instance {
            name: self.name.clone(),
            kind: self.kind,
            payload,
        })
    }

    /// Compact JSON with a trailing newline, the on-disk format.
    pub fn to_file_string(&self) -> Result<String> {
        Ok(serde_json::to_string(self)? + "\n")
    }

    fn expect(&self, kind: InstanceKind) -> Result<()> {
        if self.kind == kind {
            Ok(())
        } else {
            Err(Error::Parse(format!(
                "instance `{}` is a {:?}, not a {:?}",
                self.name, self.kind, kind
            )))
        }
    }

    pub fn space(&self) -> Result<FinSpace> {
        self.expect(InstanceKind::Space)?;
        let doc: SpaceDoc = serde_json::from_value(self.payload.clone())?;
        FinSpace::from_doc(&doc, Closure::Strict)
    }

    pub fn base(&self) -> Result<EntourageBase> {
        self.expect(InstanceKind::Base)?;
        let doc: BaseDoc = serde_json::from_value(self.payload.clone())?;
        EntourageBase::from_doc(&doc, true)
    }

    pub fn monoid(&self) -> Result<TopMonoid> {
        self.expect(InstanceKind::Monoid)?;
        let doc: MonoidDoc = serde_json::from_value(self.payload.clone())?;
        TopMonoid::from_doc(&doc, Closure::Strict)
    }

    pub fn bundle(&self) -> Result<MetricBundle> {
        self.expect(InstanceKind::Bundle)?;
        Ok(serde_json::from_value(self.payload.clone())?)
    }
}

macro_rules! embedded {
    ($($dir:literal / $name:literal),* $(,)?) => {
        &[$((concat!($dir, "/", $name), include_str!(concat!("../catalog/", $dir, "/", $name, ".json")))),*]
    };
}

const EMBEDDED: &[(&str, &str)] = embedded![
    "spaces" / "chain-3",
    "spaces" / "discrete-3",
    "spaces" / "fork-3",
    "spaces" / "indiscrete-3",
    "spaces" / "khalimsky-4",
    "spaces" / "partition-4",
    "spaces" / "path-5",
    "spaces" / "pseudocircle-4",
    "spaces" / "sierpinski",
    "spaces" / "sierpinski-pair",
    "bases" / "cyclic-3",
    "bases" / "diagonal-3",
    "bases" / "indiscrete-3",
    "bases" / "khalimsky-4",
    "bases" / "left-zero-unit-LvR",
    "bases" / "nested-partitions-4",
    "bases" / "order-3",
    "bases" / "partition-4",
    "bases" / "path-5",
    "bases" / "sierpinski-entourage",
    "bases" / "step-4",
    "bases" / "z3-discrete-L",
    "bases" / "z4-coset-L",
    "monoids" / "left-zero-right-unit",
    "monoids" / "left-zero-unit-discrete",
    "monoids" / "left-zero-unit-indiscrete",
    "monoids" / "left-zero-unit-nonbalanced",
    "monoids" / "max-semilattice-3",
    "monoids" / "sierpinski-monoid",
    "monoids" / "v4-coset",
    "monoids" / "z2-discrete",
    "monoids" / "z2-indiscrete",
    "monoids" / "z3-discrete",
    "monoids" / "z4-coset",
];

/// Parsed catalog, each list sorted by name.
#[derive(Debug, Clone, PartialEq)]
pub struct Catalog {
    pub spaces: Vec<(String, FinSpace)>,
    pub bases: Vec<(String, EntourageBase)>,
    pub monoids: Vec<(String, TopMonoid)>,
    /// Raw file texts keyed by `dir/name`, for round-trip checks.
    pub files: Vec<(String, String)>,
}

impl Catalog {
    pub fn embedded() -> Result<Catalog> {
        Catalog::from_files(EMBEDDED.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect())
    }

    /// Reads `spaces/`, `bases/`, `monoids/` (each optional) under `dir`.
    pub fn from_dir(dir: &Path) -> Result<Catalog> {
        let mut files = vec![];
        for kind in [InstanceKind::Space, InstanceKind::Base, InstanceKind::Monoid] {
            let sub = dir.join(kind.dir());
            if !sub.is_dir() {
                continue;
            }
            for entry in fs::read_dir(&sub)? {
                let path = entry?.path();
                if path.extension().and_then(|e| e.to_str()) != Some("json") {
                    continue;
                }
                let stem = path
                    .file_stem()
                    .and_then(|s| s.to_str())
                    .unwrap_or_default()
                    .to_string();
                files.push((format!("{}/{stem}", kind.dir()), fs::read_to_string(&path)?));
            }
        }
        Catalog::from_files(files)
    }

    /// The directory named by [`CATALOG_ENV`] if set, else the embedded one.
    pub fn load() -> Result<Catalog> {
        match std::env::var_os(CATALOG_ENV) {
            Some(dir) => Catalog::from_dir(Path::new(&dir)),
            None => Catalog::embedded(),
        }
    }

    fn from_files(mut files: Vec<(String, String)>) -> Result<Catalog> {
        files.sort();
        let mut cat = Catalog {
            spaces: vec![],
            bases: vec![],
            monoids: vec![],
            files: vec![],
        };
        for (key, text) in &files {
            let inst = Instance::parse(text).map_err(|e| Error::Parse(format!("{key}: {e}")))?;
            let (dir, stem) = key.split_once('/').unwrap_or(("", key));
            if inst.kind.dir() != dir || inst.name != stem {
                return Err(Error::Parse(format!(
                    "{key}: file holds {:?} `{}`",
                    inst.kind, inst.name
                )));
            }
            let ctx = |e: Error| Error::Parse(format!("{key}: {e}"));
            match inst.kind {
                InstanceKind::Space => cat.spaces.push((inst.name.clone(), inst.space().map_err(ctx)?)),
                InstanceKind::Base => cat.bases.push((inst.name.clone(), inst.base().map_err(ctx)?)),
                InstanceKind::Monoid => cat.monoids.push((inst.name.clone(), inst.monoid().map_err(ctx)?)),
                InstanceKind::Bundle => return Err(Error::Parse(format!("{key}: bundles are not catalog entries"))),
            }
        }
        cat.files = files;
        Ok(cat)
    }

    pub fn space(&self, name: &str) -> Option<&FinSpace> {
        self.spaces.iter().find(|(n, _)| n == name).map(|(_, s)| s)
    }

    pub fn base(&self, name: &str) -> Option<&EntourageBase> {
        self.bases.iter().find(|(n, _)| n == name).map(|(_, b)| b)
    }

    pub fn monoid(&self, name: &str) -> Option<&TopMonoid> {
        self.monoids.iter().find(|(n, _)| n == name).map(|(_, m)| m)
    }
}
