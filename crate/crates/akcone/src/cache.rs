//! On-disk cache of class tables.
//!
//! One JSON file per `(model, tag, bound)` key, carrying the schema version it was written
//! with. Files from another schema version are rebuilt. Files that fail to parse or whose
//! entries fail re-verification are reported as corrupt and never used. Readers take a shared
//! advisory lock on a sibling `.lock` file and writers an exclusive one; writes go through a
//! temporary file and a rename.

use std::fs::{self, File, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};

use akcone_core::enumerate::{exceptional_degree_bound, ClassTable, EnumError, SquareFilter, TableTag};
use akcone_core::Model;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::json::{coeffs_json, Coeff, ModelJson};

pub const SCHEMA_VERSION: u32 = 1;
/// Default cache directory when `--cache` is not given.
pub const CACHE_ENV: &str = "AKCONE_CACHE_DIR";

#[derive(Debug, thiserror::Error)]
pub enum CacheError {
    #[error("cache file {file} is corrupt: {reason}")]
    Corrupt { file: String, reason: String },
    #[error("cache I/O on {file}: {source}")]
    Io { file: String, source: std::io::Error },
    #[error(transparent)]
    Enum(#[from] EnumError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CacheStatus {
    Hit,
    Miss,
    /// Written by another schema version and rebuilt.
    Stale,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CacheEvent {
    pub file: String,
    pub status: CacheStatus,
    pub schema_version: u32,
}

/// What a table is, independent of where it is stored.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TableKey {
    pub model: Model,
    pub tag: TableTag,
    pub bound: u64,
}

impl TableKey {
    /// Complete exceptional tables ignore the requested bound, so it is normalised away.
    pub fn new(model: Model, tag: TableTag, bound: u64) -> Self {
        let bound = match (tag, model) {
            (TableTag::Exceptional, Model::Blowup(k)) => exceptional_degree_bound(k).unwrap_or(bound),
            _ => bound,
        };
        Self { model, tag, bound }
    }

    pub fn file_name(&self) -> String {
        let model = match self.model {
            Model::Blowup(k) => format!("b{k}"),
            Model::SphereBundle => "s2xs2".to_string(),
        };
        format!("{}-{model}-d{}.json", tag_name(self.tag), self.bound)
    }

    pub fn build(&self) -> Result<ClassTable, EnumError> {
        match self.tag {
            TableTag::Exceptional => akcone_core::enumerate::exceptional_classes(self.model, self.bound),
            TableTag::Spherical(f) => akcone_core::enumerate::spherical_classes(self.model, self.bound, f),
        }
    }
}

pub fn tag_name(tag: TableTag) -> &'static str {
    match tag {
        TableTag::Exceptional => "exceptional",
        TableTag::Spherical(SquareFilter::Positive) => "spherical-pos",
        TableTag::Spherical(SquareFilter::Zero) => "spherical-zero",
        TableTag::Spherical(SquareFilter::NonNegative) => "spherical-nonneg",
        TableTag::Spherical(SquareFilter::MinusOne) => "spherical-minus-one",
        TableTag::Spherical(SquareFilter::Any) => "spherical-any",
    }
}

fn tag_from_name(s: &str) -> Option<TableTag> {
    let all = [
        TableTag::Exceptional,
        TableTag::Spherical(SquareFilter::Positive),
        TableTag::Spherical(SquareFilter::Zero),
        TableTag::Spherical(SquareFilter::NonNegative),
        TableTag::Spherical(SquareFilter::MinusOne),
        TableTag::Spherical(SquareFilter::Any),
    ];
    all.into_iter().find(|t| tag_name(*t) == s)
}

/// The serialized table; also the payload of `enum`.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableFile {
    pub schema_version: u32,
    pub model: ModelJson,
    pub tag: String,
    pub bound: u64,
    pub complete: bool,
    pub count: usize,
    pub classes: Vec<Vec<Coeff>>,
}

impl TableFile {
    pub fn from_table(t: &ClassTable) -> Self {
        let classes = t
            .classes
            .iter()
            .map(|c| serde_json::from_value(coeffs_json(c)).expect("coefficients round-trip"))
            .collect();
        Self {
            schema_version: SCHEMA_VERSION,
            model: t.model.into(),
            tag: tag_name(t.tag).to_string(),
            bound: t.bound,
            complete: t.complete,
            count: t.classes.len(),
            classes,
        }
    }

    /// Rebuild the table and re-verify every entry against its defining equations.
    pub fn to_table(&self) -> Result<ClassTable, String> {
        let model = Model::from(self.model);
        let tag = tag_from_name(&self.tag).ok_or_else(|| format!("unknown tag '{}'", self.tag))?;
        if self.count != self.classes.len() {
            return Err(format!("count {} but {} classes listed", self.count, self.classes.len()));
        }
        let mut classes = Vec::with_capacity(self.classes.len());
        for (i, c) in self.classes.iter().enumerate() {
            let v = c
                .iter()
                .map(Coeff::to_integer)
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| format!("entry {i}: {e}"))?;
            classes.push(akcone_core::IntClass::new(model, v).map_err(|e| format!("entry {i}: {e}"))?);
        }
        let table = ClassTable { model, tag, bound: self.bound, classes, complete: self.complete };
        table.verify().map_err(|d| d.to_string())?;
        Ok(table)
    }
}

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    /// The `--cache` flag, else the environment default, else no cache.
    pub fn resolve(flag: Option<&Path>) -> Option<Self> {
        flag.map(Path::to_path_buf)
            .or_else(|| std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from))
            .map(Self::new)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, key: &TableKey) -> PathBuf {
        self.dir.join(key.file_name())
    }

    fn lock(&self, key: &TableKey, exclusive: bool) -> Result<File, CacheError> {
        let path = self.dir.join(format!("{}.lock", key.file_name()));
        let io = |source| CacheError::Io { file: path.display().to_string(), source };
        fs::create_dir_all(&self.dir).map_err(io)?;
        let f = OpenOptions::new().create(true).truncate(false).write(true).open(&path).map_err(io)?;
        if exclusive { f.lock() } else { f.lock_shared() }.map_err(io)?;
        Ok(f)
    }

    /// Load the table for `key`, building and storing it when absent or stale.
    pub fn table(&self, key: &TableKey) -> Result<(ClassTable, CacheEvent), CacheError> {
        let path = self.path(key);
        let file = path.display().to_string();
        let event = |status| CacheEvent { file: file.clone(), status, schema_version: SCHEMA_VERSION };
        let status = {
            let _guard = self.lock(key, false)?;
            match fs::read_to_string(&path) {
                Ok(text) => match self.parse(key, &file, &text)? {
                    Some(table) => return Ok((table, event(CacheStatus::Hit))),
                    None => CacheStatus::Stale,
                },
                Err(e) if e.kind() == std::io::ErrorKind::NotFound => CacheStatus::Miss,
                Err(source) => return Err(CacheError::Io { file, source }),
            }
        };
        let table = key.build()?;
        self.store(key, &table)?;
        Ok((table, event(status)))
    }

    /// `Ok(None)` for a well-formed file of another schema version.
    fn parse(&self, key: &TableKey, file: &str, text: &str) -> Result<Option<ClassTable>, CacheError> {
        let corrupt = |reason: String| CacheError::Corrupt { file: file.to_string(), reason };
        let v: Value = serde_json::from_str(text).map_err(|e| corrupt(e.to_string()))?;
        let version =
            v.get("schema_version").and_then(Value::as_u64).ok_or_else(|| corrupt("no schema_version".into()))?;
        if version != u64::from(SCHEMA_VERSION) {
            return Ok(None);
        }
        let tf: TableFile = serde_json::from_value(v).map_err(|e| corrupt(e.to_string()))?;
        let table = tf.to_table().map_err(corrupt)?;
        if TableKey::new(table.model, table.tag, table.bound) != *key {
            return Err(corrupt(format!(
                "file holds {} instead",
                TableKey::new(table.model, table.tag, table.bound).file_name()
            )));
        }
        Ok(Some(table))
    }

    fn store(&self, key: &TableKey, table: &ClassTable) -> Result<(), CacheError> {
        let _guard = self.lock(key, true)?;
        let path = self.path(key);
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        let io = |source| CacheError::Io { file: tmp.display().to_string(), source };
        let text = serde_json::to_string(&TableFile::from_table(table)).expect("table serializes");
        let mut f = File::create(&tmp).map_err(io)?;
        f.write_all(text.as_bytes()).map_err(io)?;
        f.sync_all().map_err(io)?;
        fs::rename(&tmp, &path).map_err(io)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn key(k: u32) -> TableKey {
        TableKey::new(Model::Blowup(k), TableTag::Exceptional, 1)
    }

    #[test]
    fn miss_then_hit() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        let (t1, e1) = cache.table(&key(3)).unwrap();
        assert_eq!(e1.status, CacheStatus::Miss);
        let (t2, e2) = cache.table(&key(3)).unwrap();
        assert_eq!(e2.status, CacheStatus::Hit);
        assert_eq!(t1, t2);
        assert_eq!(t1.len(), 6);
    }

    #[test]
    fn stale_version_is_rebuilt() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        std::fs::write(cache.path(&key(2)), r#"{"schema_version":0,"whatever":true}"#).unwrap();
        let (t, e) = cache.table(&key(2)).unwrap();
        assert_eq!(e.status, CacheStatus::Stale);
        assert_eq!(t.len(), 3);
        assert_eq!(cache.table(&key(2)).unwrap().1.status, CacheStatus::Hit);
    }

    #[test]
    fn corruption_is_reported() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        cache.table(&key(2)).unwrap();
        let path = cache.path(&key(2));
        let text = std::fs::read_to_string(&path).unwrap();
        // E1 = (0; -1, 0) becomes (0; -2, 0), which is not exceptional
        std::fs::write(&path, text.replacen("[0,-1,0]", "[0,-2,0]", 1)).unwrap();
        assert!(matches!(cache.table(&key(2)), Err(CacheError::Corrupt { .. })));
        std::fs::write(&path, "{not json").unwrap();
        assert!(matches!(cache.table(&key(2)), Err(CacheError::Corrupt { .. })));
    }

    #[test]
    fn complete_tables_share_a_key() {
        assert_eq!(key(6), TableKey::new(Model::Blowup(6), TableTag::Exceptional, 40));
        assert_ne!(
            TableKey::new(Model::Blowup(9), TableTag::Exceptional, 3),
            TableKey::new(Model::Blowup(9), TableTag::Exceptional, 4)
        );
    }
}
