//! Growth-table persistence.
//!
//! Deep balls (Heisenberg especially) are expensive to enumerate, so tables
//! can be cached on disk, one file per (group spec, radius), content-addressed
//! by a hash of the spec text.
//!
//! # File format (version 1)
//!
//! All integers little-endian:
//!
//! ```text
//! magic   4 bytes  "GGTB"
//! version u32      1
//! spec    u32 length + UTF-8 group spec text
//! radius  u32
//! spheres (radius+1) records:
//!           count u64, then per element: u32 length + encoding bytes
//! ```
//!
//! Elements appear in their canonical per-sphere order, so a table
//! round-trips byte-identically. Loaders validate each element against the
//! declared group and rebuild the cumulative counts rather than trusting the
//! file.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::group::{Element, GroupSpec};
use crate::growth::{enumerate_ball_with_budget, GrowthError, GrowthTable};

const MAGIC: &[u8; 4] = b"GGTB";
const VERSION: u32 = 1;

/// Environment variable overriding the cache directory.
pub const CACHE_DIR_ENV: &str = "GROUPGROWTH_CACHE_DIR";

/// Resolves the cache directory: `$GROUPGROWTH_CACHE_DIR`, else
/// `$XDG_CACHE_HOME/groupgrowth`, else `$HOME/.cache/groupgrowth`, else a
/// directory under the system temp dir.
pub fn default_cache_dir() -> PathBuf {
    if let Ok(dir) = std::env::var(CACHE_DIR_ENV) {
        return PathBuf::from(dir);
    }
    if let Ok(xdg) = std::env::var("XDG_CACHE_HOME") {
        return Path::new(&xdg).join("groupgrowth");
    }
    if let Ok(home) = std::env::var("HOME") {
        return Path::new(&home).join(".cache").join("groupgrowth");
    }
    std::env::temp_dir().join("groupgrowth-cache")
}

/// Cache file path for a (spec, radius) pair inside `dir`.
pub fn cache_path(dir: &Path, group: &GroupSpec, radius: u32) -> PathBuf {
    let digest = Sha256::digest(group.render().as_bytes());
    let hex: String = digest[..8].iter().map(|b| format!("{b:02x}")).collect();
    dir.join(format!("{hex}-r{radius}.ggt"))
}

pub fn write_table(table: &GrowthTable, mut w: impl Write) -> io::Result<()> {
    w.write_all(MAGIC)?;
    w.write_all(&VERSION.to_le_bytes())?;
    let spec = table.group().render();
    w.write_all(&(spec.len() as u32).to_le_bytes())?;
    w.write_all(spec.as_bytes())?;
    w.write_all(&table.radius().to_le_bytes())?;
    for n in 0..=table.radius() {
        let sphere = table.sphere(n).expect("radius in range");
        w.write_all(&(sphere.len() as u64).to_le_bytes())?;
        for e in sphere {
            w.write_all(&(e.bytes().len() as u32).to_le_bytes())?;
            w.write_all(e.bytes())?;
        }
    }
    Ok(())
}

fn read_exact<const N: usize>(r: &mut impl Read) -> io::Result<[u8; N]> {
    let mut buf = [0u8; N];
    r.read_exact(&mut buf)?;
    Ok(buf)
}

pub fn read_table(mut r: impl Read) -> Result<GrowthTable, GrowthError> {
    let bad = |msg: &str| GrowthError::CacheFormat(msg.to_string());
    if &read_exact::<4>(&mut r)? != MAGIC {
        return Err(bad("bad magic; not a growth-table cache file"));
    }
    let version = u32::from_le_bytes(read_exact::<4>(&mut r)?);
    if version != VERSION {
        return Err(GrowthError::CacheFormat(format!(
            "unsupported cache version {version} (expected {VERSION})"
        )));
    }
    let spec_len = u32::from_le_bytes(read_exact::<4>(&mut r)?) as usize;
    if spec_len > 4096 {
        return Err(bad("unreasonable spec length"));
    }
    let mut spec_bytes = vec![0u8; spec_len];
    r.read_exact(&mut spec_bytes)?;
    let spec_text =
        String::from_utf8(spec_bytes).map_err(|_| bad("spec text is not valid UTF-8"))?;
    let group = GroupSpec::parse(&spec_text)
        .map_err(|e| GrowthError::CacheFormat(format!("bad group spec in cache: {e}")))?;
    let radius = u32::from_le_bytes(read_exact::<4>(&mut r)?);
    let mut spheres = Vec::with_capacity(radius as usize + 1);
    for _ in 0..=radius {
        let count = u64::from_le_bytes(read_exact::<8>(&mut r)?);
        let mut sphere = Vec::with_capacity(count.min(1 << 20) as usize);
        let mut prev: Option<Element> = None;
        for _ in 0..count {
            let len = u32::from_le_bytes(read_exact::<4>(&mut r)?) as usize;
            if len > 1 << 20 {
                return Err(bad("unreasonable element length"));
            }
            let mut bytes = vec![0u8; len];
            r.read_exact(&mut bytes)?;
            let e = Element::from_bytes(&bytes);
            if let Some(p) = &prev {
                if *p >= e {
                    return Err(bad("sphere elements out of canonical order"));
                }
            }
            prev = Some(e.clone());
            sphere.push(e);
        }
        spheres.push(sphere);
    }
    GrowthTable::from_parts(group, spheres)
}

/// Stores a table under its content-addressed name, atomically (write to a
/// temporary file in the same directory, then rename over the target).
pub fn store(table: &GrowthTable, dir: &Path) -> Result<PathBuf, GrowthError> {
    fs::create_dir_all(dir)?;
    let target = cache_path(dir, table.group(), table.radius());
    let tmp = target.with_extension(format!("tmp-{}", std::process::id()));
    let mut file = io::BufWriter::new(fs::File::create(&tmp)?);
    write_table(table, &mut file)?;
    file.flush()?;
    drop(file);
    fs::rename(&tmp, &target)?;
    Ok(target)
}

/// Loads a cached table for (group, radius) or builds and caches one.
///
/// A cached file whose embedded spec does not match (hash collision or a
/// stale file) is ignored and rebuilt.
pub fn load_or_build(
    group: &GroupSpec,
    radius: u32,
    dir: &Path,
    budget_bytes: u64,
) -> Result<GrowthTable, GrowthError> {
    let path = cache_path(dir, group, radius);
    if let Ok(file) = fs::File::open(&path) {
        if let Ok(table) = read_table(io::BufReader::new(file)) {
            if table.group() == group && table.radius() == radius {
                return Ok(table);
            }
        }
    }
    let table = enumerate_ball_with_budget(group, radius, budget_bytes)?;
    store(&table, dir)?;
    Ok(table)
}
