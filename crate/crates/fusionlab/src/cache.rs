//! On-disk cache of subgroup lattices and hom-sets, keyed by a SHA-256 of the
//! Cayley table. Entries carry a checksum; unreadable or corrupt entries are
//! reported and recomputed.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use fusionlab_core::fusion::FusionSystem;
use fusionlab_core::{ElementSet, FiniteGroup, GroupMorphism, Subgroup};

const MAGIC: &str = "fusionlab-cache 1";

#[derive(Debug, thiserror::Error)]
pub enum CacheError {
    #[error("cache entry {0} is corrupt: {1}")]
    CacheCorrupt(PathBuf, String),
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CacheStats {
    pub hits: usize,
    pub misses: usize,
    pub corrupt: usize,
}

#[derive(Debug, Clone)]
pub struct Cache {
    dir: Option<PathBuf>,
}

/// Hex SHA-256 of the multiplication table.
pub fn table_hash(g: &FiniteGroup) -> String {
    let mut h = Sha256::new();
    h.update((g.order() as u64).to_le_bytes());
    for &x in g.table() {
        h.update(x.to_le_bytes());
    }
    hex(&h.finalize())
}

fn hex(bytes: &[u8]) -> String {
    bytes
        .iter()
        .fold(String::with_capacity(bytes.len() * 2), |mut s, b| {
            let _ = write!(s, "{b:02x}");
            s
        })
}

fn checksum(body: &str) -> String {
    hex(&Sha256::digest(body.as_bytes()))
}

fn members_line(s: &Subgroup) -> String {
    let m: Vec<String> = s.iter().map(|x| x.to_string()).collect();
    m.join(" ")
}

fn parse_members(line: &str) -> Result<Vec<u32>, String> {
    line.split_whitespace()
        .map(|w| w.parse::<u32>().map_err(|_| format!("bad index '{w}'")))
        .collect()
}

impl Cache {
    pub fn disabled() -> Self {
        Self { dir: None }
    }

    pub fn at(dir: impl Into<PathBuf>) -> Self {
        Self {
            dir: Some(dir.into()),
        }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    fn path(&self, key: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{key}.txt")))
    }

    fn read(&self, key: &str) -> Result<Option<String>, CacheError> {
        let Some(path) = self.path(key) else {
            return Ok(None);
        };
        let Ok(text) = fs::read_to_string(&path) else {
            return Ok(None);
        };
        let corrupt = |why: &str| CacheError::CacheCorrupt(path.clone(), why.to_string());
        let mut parts = text.splitn(3, '\n');
        if parts.next() != Some(MAGIC) {
            return Err(corrupt("bad header"));
        }
        let sum = parts.next().ok_or_else(|| corrupt("missing checksum"))?;
        let body = parts.next().unwrap_or("");
        if checksum(body) != sum {
            return Err(corrupt("checksum mismatch"));
        }
        Ok(Some(body.to_string()))
    }

    fn write(&self, key: &str, body: &str) {
        let Some(path) = self.path(key) else { return };
        let dir = path.parent().expect("cache file has a parent");
        if fs::create_dir_all(dir).is_err() {
            return;
        }
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        let text = format!("{MAGIC}\n{}\n{body}", checksum(body));
        if fs::write(&tmp, text).is_ok() {
            let _ = fs::rename(&tmp, &path);
        }
    }

    /// Makes sure the group's lattice is available, from the cache if possible.
    pub fn ensure_lattice(
        &self,
        g: &FiniteGroup,
        stats: &mut CacheStats,
    ) -> fusionlab_core::Result<()> {
        if self.dir.is_none() || g.cached_lattice().is_some() {
            return g.subgroup_lattice().map(|_| ());
        }
        let key = format!("lattice-{}", table_hash(g));
        match self.read(&key).and_then(|body| match body {
            Some(body) => decode_lattice(g, &body)
                .map(Some)
                .map_err(|e| CacheError::CacheCorrupt(self.path(&key).unwrap_or_default(), e)),
            None => Ok(None),
        }) {
            Ok(Some(lattice)) => {
                g.seed_lattice(lattice);
                stats.hits += 1;
                return Ok(());
            }
            Ok(None) => stats.misses += 1,
            Err(e) => {
                eprintln!("warning: {e}; recomputing");
                stats.corrupt += 1;
            }
        }
        let lattice = g.subgroup_lattice()?;
        let body: String = lattice.iter().map(|s| members_line(s) + "\n").collect();
        self.write(&key, &body);
        Ok(())
    }

    /// Makes sure every hom-set of a realized system is available.
    pub fn ensure_homs(
        &self,
        f: &FusionSystem,
        stats: &mut CacheStats,
    ) -> fusionlab_core::Result<()> {
        if self.dir.is_none() {
            for q in f.objects() {
                f.homs_to_carrier(q)?;
            }
            return Ok(());
        }
        let key = format!(
            "homs-{}-p{}-{}",
            table_hash(f.ambient()),
            f.p(),
            &checksum(&members_line(f.carrier()))[..16]
        );
        match self.read(&key).and_then(|body| match body {
            Some(body) => decode_homs(f, &body)
                .map(Some)
                .map_err(|e| CacheError::CacheCorrupt(self.path(&key).unwrap_or_default(), e)),
            None => Ok(None),
        }) {
            Ok(Some(sets)) => {
                for (q, maps) in f.objects().iter().zip(sets) {
                    f.seed_homs(q, maps);
                }
                stats.hits += 1;
                return Ok(());
            }
            Ok(None) => stats.misses += 1,
            Err(e) => {
                eprintln!("warning: {e}; recomputing");
                stats.corrupt += 1;
            }
        }
        let mut body = String::new();
        for q in f.objects() {
            let maps: Vec<String> = f
                .homs_to_carrier(q)?
                .iter()
                .map(|m| {
                    let imgs: Vec<String> = m.images().iter().map(|x| x.to_string()).collect();
                    imgs.join(" ")
                })
                .collect();
            body.push_str(&maps.join(";"));
            body.push('\n');
        }
        self.write(&key, &body);
        Ok(())
    }
}

fn decode_lattice(g: &FiniteGroup, body: &str) -> Result<Vec<Subgroup>, String> {
    let mut out = Vec::new();
    for line in body.lines() {
        let members = parse_members(line)?;
        if members.iter().any(|&x| x as usize >= g.order()) {
            return Err("index outside the group".into());
        }
        let set = ElementSet::from_indices(g.order(), members);
        out.push(g.subgroup_from_set(set).map_err(|e| e.to_string())?);
    }
    if out.first().map(|s| s.order()) != Some(1) || out.last().map(|s| s.order()) != Some(g.order())
    {
        return Err("lattice does not run from 1 to G".into());
    }
    Ok(out)
}

fn decode_homs(f: &FusionSystem, body: &str) -> Result<Vec<Vec<GroupMorphism>>, String> {
    let g = f.ambient();
    let lines: Vec<&str> = body.lines().collect();
    if lines.len() != f.objects().len() {
        return Err("object count mismatch".into());
    }
    let mut out = Vec::with_capacity(lines.len());
    for (q, line) in f.objects().iter().zip(lines) {
        let mut maps = Vec::new();
        for chunk in line.split(';') {
            let images = parse_members(chunk)?;
            if images.len() != q.order() || images.iter().any(|&y| !f.carrier().contains(y)) {
                return Err("morphism does not fit its domain".into());
            }
            let m = GroupMorphism::from_images(q.clone(), f.carrier().clone(), images);
            if !m.is_injective_hom(g) {
                return Err("stored map is not an injective homomorphism".into());
            }
            maps.push(m);
        }
        out.push(maps);
    }
    Ok(out)
}
