//! Content-addressed on-disk store for class families. Files are keyed by
//! root system, family and a hash of the code version, written atomically,
//! and re-validated (GKM condition) on load.

use kflag::json::{family_from_json, family_to_json};
use kflag::kclass::{LocalizedClass, SchubertExpansion};
use kflag::motivic::Family;
use kflag::weyl::Flag;
use serde_json::Value;
use sha2::{Digest, Sha256};
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

pub const FORMAT_REVISION: u32 = 1;

pub fn code_version() -> String {
    format!("kflag {} / cache format {FORMAT_REVISION}", kflag::VERSION)
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

pub struct Cache {
    dir: PathBuf,
}

pub enum Loaded {
    Hit(Vec<LocalizedClass>, Vec<SchubertExpansion>),
    Miss,
    /// Present but unusable; the reason is reported and the caller recomputes.
    Stale(String),
}

impl Cache {
    pub fn new(dir: &Path) -> std::io::Result<Cache> {
        fs::create_dir_all(dir)?;
        Ok(Cache { dir: dir.to_path_buf() })
    }

    pub fn key(fv: &Flag, family: Family) -> String {
        let mut h = Sha256::new();
        h.update(format!("{}|{}|{}|{}", fv.rs.lie_type, fv.rs.rank, family.name(), code_version()).as_bytes());
        hex(&h.finalize())
    }

    pub fn path(&self, fv: &Flag, family: Family) -> PathBuf {
        let key = Cache::key(fv, family);
        self.dir.join(format!("{}{}-{}-{}.json", fv.rs.lie_type, fv.rs.rank, family.name(), &key[..16]))
    }

    pub fn store(&self, fv: &Flag, family: Family, classes: &[LocalizedClass], exps: &[SchubertExpansion]) -> std::io::Result<PathBuf> {
        let mut v = family_to_json(fv, family.name(), classes, exps);
        v["code_version"] = Value::from(code_version());
        v["key"] = Value::from(Cache::key(fv, family));
        let path = self.path(fv, family);
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(serde_json::to_string(&v)?.as_bytes())?;
            f.sync_all()?;
        }
        fs::rename(&tmp, &path)?;
        Ok(path)
    }

    pub fn load(&self, fv: &Flag, family: Family) -> Loaded {
        let path = self.path(fv, family);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Loaded::Miss,
            Err(e) => return Loaded::Stale(format!("{}: {e}", path.display())),
        };
        let v: Value = match serde_json::from_str(&text) {
            Ok(v) => v,
            Err(e) => return Loaded::Stale(format!("{}: corrupt JSON ({e})", path.display())),
        };
        if v["code_version"].as_str() != Some(code_version().as_str()) || v["key"].as_str() != Some(Cache::key(fv, family).as_str()) {
            return Loaded::Stale(format!("{}: written by a different code version", path.display()));
        }
        let (name, classes, exps) = match family_from_json(fv, &v) {
            Ok(t) => t,
            Err(e) => return Loaded::Stale(format!("{}: {e}", path.display())),
        };
        if name != family.name() || classes.len() != fv.n() || !(exps.is_empty() || exps.len() == fv.n()) {
            return Loaded::Stale(format!("{}: wrong shape", path.display()));
        }
        for c in &classes {
            if let Err(e) = fv.gkm_check(c) {
                return Loaded::Stale(format!("{}: {e}", path.display()));
            }
        }
        Loaded::Hit(classes, exps)
    }
}
