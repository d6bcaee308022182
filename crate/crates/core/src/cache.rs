//! On-disk lattice cache.
//!
//! One text file per group spec, named by a SHA-256 prefix of the spec:
//!
//! ```text
//! mulambda-lattice <version>
//! spec <spec>
//! degree <n>
//! generators <k>
//! <images>                                  k lines
//! elements <order>
//! <images>                                  one line per element, sorted
//! subgroups <count>
//! <class> <maximal> <maxint> <ranks...>     one line per subgroup, sorted
//! end
//! ```
//!
//! Files with another version are ignored and overwritten. Writes go to a
//! temporary file that is renamed into place.

use std::fmt::Write as _;
use std::fs;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::group::{Group, Rank};
use crate::lattice::SubgroupLattice;
use crate::perm::Permutation;
use crate::zoo::{build_group, GroupSpec};

pub const FORMAT_VERSION: u32 = 1;
const MAGIC: &str = "mulambda-lattice";

#[derive(Clone, Debug)]
pub struct LatticeCache {
    dir: PathBuf,
}

impl LatticeCache {
    pub fn new(dir: impl Into<PathBuf>) -> LatticeCache {
        LatticeCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, spec: &GroupSpec) -> PathBuf {
        let digest = Sha256::digest(spec.to_string().as_bytes());
        self.dir
            .join(format!("{}.lattice", &hex::encode(digest)[..16]))
    }

    /// `Ok(None)` when there is no file or it has another format version.
    pub fn load(&self, spec: &GroupSpec) -> Result<Option<SubgroupLattice>> {
        let path = self.path_for(spec);
        let file = match fs::File::open(&path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        read_lattice(BufReader::new(file), spec)
    }

    pub fn store(&self, spec: &GroupSpec, lattice: &SubgroupLattice) -> Result<()> {
        fs::create_dir_all(&self.dir)?;
        let path = self.path_for(spec);
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        {
            let mut w = BufWriter::new(fs::File::create(&tmp)?);
            write_lattice(&mut w, spec, lattice)?;
            w.flush()?;
        }
        fs::rename(&tmp, &path)?;
        Ok(())
    }
}

fn join<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn write_lattice(w: &mut impl Write, spec: &GroupSpec, l: &SubgroupLattice) -> Result<()> {
    let g = l.group();
    writeln!(w, "{MAGIC} {FORMAT_VERSION}")?;
    writeln!(w, "spec {spec}")?;
    writeln!(w, "degree {}", g.degree())?;
    writeln!(w, "generators {}", g.generators().len())?;
    for p in g.generators() {
        writeln!(w, "{}", join(p.images()))?;
    }
    writeln!(w, "elements {}", g.order())?;
    for r in 0..g.order() as Rank {
        writeln!(w, "{}", join(g.row(r)))?;
    }
    writeln!(w, "subgroups {}", l.len())?;
    let mut line = String::new();
    for i in 0..l.len() {
        line.clear();
        let _ = write!(
            line,
            "{} {} {}",
            l.class_of(i),
            u8::from(l.is_maximal(i)),
            u8::from(l.is_maxint(i))
        );
        for &x in l.subgroup(i) {
            let _ = write!(line, " {x}");
        }
        writeln!(w, "{line}")?;
    }
    writeln!(w, "end")?;
    Ok(())
}

struct Lines<R> {
    inner: std::io::Lines<R>,
    number: usize,
}

impl<R: BufRead> Lines<R> {
    fn next(&mut self) -> Result<String> {
        self.number += 1;
        match self.inner.next() {
            Some(line) => Ok(line?),
            None => Err(Error::Cache(format!(
                "unexpected end of file at line {}",
                self.number
            ))),
        }
    }

    fn bad(&self, what: &str) -> Error {
        Error::Cache(format!("line {}: {what}", self.number))
    }

    fn keyed(&mut self, key: &str) -> Result<String> {
        let line = self.next()?;
        line.strip_prefix(key)
            .and_then(|rest| rest.strip_prefix(' '))
            .map(str::to_string)
            .ok_or_else(|| self.bad(&format!("expected `{key}`")))
    }

    fn count(&mut self, key: &str) -> Result<usize> {
        let v = self.keyed(key)?;
        v.parse().map_err(|_| self.bad("bad count"))
    }

    fn numbers(&mut self) -> Result<Vec<u32>> {
        let line = self.next()?;
        line.split_ascii_whitespace()
            .map(|t| t.parse().map_err(|_| self.bad("bad number")))
            .collect()
    }
}

/// Reads a lattice written by [`write_lattice`]. Returns `Ok(None)` for a
/// different format version.
pub fn read_lattice(r: impl BufRead, spec: &GroupSpec) -> Result<Option<SubgroupLattice>> {
    let mut lines = Lines {
        inner: r.lines(),
        number: 0,
    };
    let header = lines.next()?;
    match header
        .strip_prefix(MAGIC)
        .map(str::trim)
        .map(str::parse::<u32>)
    {
        Some(Ok(FORMAT_VERSION)) => {}
        Some(Ok(_)) => return Ok(None),
        _ => return Err(lines.bad("not a lattice cache file")),
    }
    if lines.keyed("spec")? != spec.to_string() {
        return Err(lines.bad("spec does not match"));
    }
    let degree = lines.count("degree")?;
    let k = lines.count("generators")?;
    let mut gens = Vec::with_capacity(k);
    for _ in 0..k {
        let images = lines.numbers()?;
        if images.len() != degree {
            return Err(lines.bad("generator degree"));
        }
        gens.push(Permutation::from_images(images)?);
    }
    let order = lines.count("elements")?;
    let mut table = Vec::with_capacity(order * degree);
    for _ in 0..order {
        let row = lines.numbers()?;
        if row.len() != degree {
            return Err(lines.bad("element degree"));
        }
        table.extend(row);
    }
    let group = Group::from_table(degree, gens, table)?;
    let count = lines.count("subgroups")?;
    let mut subgroups = Vec::with_capacity(count);
    let mut class_of = Vec::with_capacity(count);
    let mut flags = Vec::with_capacity(count);
    for _ in 0..count {
        let nums = lines.numbers()?;
        if nums.len() < 4 || nums[3..].iter().any(|&x| x as usize >= order) {
            return Err(lines.bad("subgroup record"));
        }
        class_of.push(nums[0] as usize);
        flags.push((nums[1] == 1, nums[2] == 1));
        subgroups.push(nums[3..].to_vec());
    }
    if lines.next()? != "end" {
        return Err(lines.bad("expected `end`"));
    }
    let l = SubgroupLattice::from_parts(group, subgroups, class_of)?;
    for (i, &(maximal, maxint)) in flags.iter().enumerate() {
        if l.is_maximal(i) != maximal || l.is_maxint(i) != maxint {
            return Err(Error::Cache(format!(
                "stored flags of subgroup {i} disagree with recomputation"
            )));
        }
    }
    Ok(Some(l))
}

/// Builds the group and its lattice, reusing and refreshing the cache when
/// one is given. Unreadable or stale cache files are recomputed.
pub fn load_or_enumerate(
    spec: &GroupSpec,
    element_cap: usize,
    subgroup_cap: usize,
    cache: Option<&LatticeCache>,
) -> Result<SubgroupLattice> {
    if let Some(cache) = cache {
        if let Ok(Some(l)) = cache.load(spec) {
            if l.group().order() > element_cap {
                return Err(Error::ElementCapExceeded { cap: element_cap });
            }
            if l.len() > subgroup_cap {
                return Err(Error::SubgroupCapExceeded { cap: subgroup_cap });
            }
            return Ok(l);
        }
    }
    let l = SubgroupLattice::enumerate(build_group(spec, element_cap)?, subgroup_cap)?;
    if let Some(cache) = cache {
        cache.store(spec, &l)?;
    }
    Ok(l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::DEFAULT_SUBGROUP_CAP;
    use crate::zoo::parse_spec;

    fn serialize(spec: &GroupSpec, l: &SubgroupLattice) -> Vec<u8> {
        let mut buf = Vec::new();
        write_lattice(&mut buf, spec, l).unwrap();
        buf
    }

    #[test]
    fn round_trip_is_byte_identical() {
        let spec = parse_spec("sym:4").unwrap();
        let l = load_or_enumerate(&spec, 1000, DEFAULT_SUBGROUP_CAP, None).unwrap();
        let bytes = serialize(&spec, &l);
        let back = read_lattice(&bytes[..], &spec).unwrap().unwrap();
        assert_eq!(serialize(&spec, &back), bytes);
        assert_eq!(back.group(), l.group());
    }

    #[test]
    fn other_versions_are_ignored() {
        let spec = parse_spec("cyclic:4").unwrap();
        let l = load_or_enumerate(&spec, 1000, DEFAULT_SUBGROUP_CAP, None).unwrap();
        let text = String::from_utf8(serialize(&spec, &l)).unwrap();
        let stale = text.replacen(
            &format!("{MAGIC} {FORMAT_VERSION}"),
            &format!("{MAGIC} 0"),
            1,
        );
        assert!(read_lattice(stale.as_bytes(), &spec).unwrap().is_none());
    }

    #[test]
    fn corrupt_files_are_rejected() {
        let spec = parse_spec("sym:3").unwrap();
        let l = load_or_enumerate(&spec, 1000, DEFAULT_SUBGROUP_CAP, None).unwrap();
        let text = String::from_utf8(serialize(&spec, &l)).unwrap();
        let truncated = &text[..text.len() / 2];
        assert!(read_lattice(truncated.as_bytes(), &spec).is_err());
        let other = parse_spec("sym:4").unwrap();
        assert!(read_lattice(text.as_bytes(), &other).is_err());
        let flipped = text.replacen("\n1 1 1 ", "\n1 0 1 ", 1);
        assert!(read_lattice(flipped.as_bytes(), &spec).is_err());
    }

    #[test]
    fn cache_directory_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let cache = LatticeCache::new(dir.path().join("nested"));
        let spec = parse_spec("alt:4").unwrap();
        let cold = load_or_enumerate(&spec, 1000, DEFAULT_SUBGROUP_CAP, Some(&cache)).unwrap();
        assert!(cache.path_for(&spec).exists());
        let warm = load_or_enumerate(&spec, 1000, DEFAULT_SUBGROUP_CAP, Some(&cache)).unwrap();
        assert_eq!(serialize(&spec, &cold), serialize(&spec, &warm));
        assert!(matches!(
            load_or_enumerate(&spec, 5, DEFAULT_SUBGROUP_CAP, Some(&cache)),
            Err(Error::ElementCapExceeded { cap: 5 })
        ));
        fs::write(cache.path_for(&spec), "garbage").unwrap();
        let again = load_or_enumerate(&spec, 1000, DEFAULT_SUBGROUP_CAP, Some(&cache)).unwrap();
        assert_eq!(again.len(), 10);
        assert!(cache.load(&spec).unwrap().is_some());
    }
}
