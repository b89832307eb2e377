//! Group sources: the line-oriented group file format, built-in
//! constructors, the order-216 fixture and catalog directories.
//!
//! Group file grammar, one directive per line, `#` starting a comment:
//!
//! ```text
//! group <name>
//! degree <n>
//! gen <cycles>        # one or more, e.g. (1 2 3)(4 5)
//! end
//! ```

use std::fs;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::classes::{is_p_supersolvable, is_solvable};
use crate::error::GroupError;
use crate::group::{Group, Limits};
use crate::perm::{parse_cycles, CycleError, Permutation};
use crate::scan::NamedGroup;
use crate::structure::{nilpotency_class, sylow_subgroup};
use crate::subgroup::normalizer;

/// Name of the order-216 fixture inside its group file.
pub const FIXTURE_NAME: &str = "sg216_153";
const FIXTURE_TEXT: &str = include_str!("../fixtures/sg216_153.group");
/// File listing built-in catalog entries, one `<constructor> [order]` per line.
pub const BUILTINS_FILE: &str = "builtins.txt";
/// Extension of group files picked up from a catalog directory.
pub const GROUP_EXTENSION: &str = "group";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unknown builtin {0:?}")]
    UnknownBuiltin(String),
    #[error("bad builtin parameters in {0:?}")]
    BadParameters(String),
    #[error("{name}: expected order {expected}, constructed {found}")]
    OrderMismatch {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("fixture does not match its catalog description: {0}")]
    Fixture(String),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error(transparent)]
    Group(#[from] GroupError),
}

// ---------------------------------------------------------------------------
// Group files

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupFile {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<Permutation>,
}

impl GroupFile {
    pub fn to_group(&self, limits: Limits) -> Result<Group, GroupError> {
        Group::generate_with_limits(&self.generators, self.degree, limits)
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> CatalogError {
    CatalogError::Parse {
        line,
        message: message.into(),
    }
}

fn cycle_message(e: CycleError) -> String {
    match e {
        CycleError::RepeatedPoint(p) => format!("repeated point in cycle: {p}"),
        other => other.to_string(),
    }
}

pub fn parse_group_file(text: &str) -> Result<GroupFile, CatalogError> {
    let mut name = None;
    let mut degree = None;
    let mut gens: Vec<(usize, Vec<Vec<usize>>)> = Vec::new();
    let mut ended = false;
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        last_line = line_no;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if ended {
            return Err(parse_err(line_no, "content after `end`"));
        }
        let (keyword, rest) = match line.split_once(char::is_whitespace) {
            Some((k, r)) => (k, r.trim()),
            None => (line, ""),
        };
        match keyword {
            "group" => {
                if name.is_some() {
                    return Err(parse_err(line_no, "duplicate `group` line"));
                }
                if rest.is_empty() || rest.contains(char::is_whitespace) {
                    return Err(parse_err(line_no, "`group` takes a single name"));
                }
                name = Some(rest.to_string());
            }
            "degree" => {
                if degree.is_some() {
                    return Err(parse_err(line_no, "duplicate `degree` line"));
                }
                let n: usize = rest
                    .parse()
                    .map_err(|_| parse_err(line_no, format!("bad degree {rest:?}")))?;
                degree = Some(n);
            }
            "gen" => {
                let cycles =
                    parse_cycles(rest).map_err(|e| parse_err(line_no, cycle_message(e)))?;
                gens.push((line_no, cycles));
            }
            "end" => {
                if !rest.is_empty() {
                    return Err(parse_err(line_no, "`end` takes no arguments"));
                }
                ended = true;
            }
            other => return Err(parse_err(line_no, format!("unknown keyword {other:?}"))),
        }
    }
    if !ended {
        return Err(parse_err(last_line.max(1), "missing `end`"));
    }
    let name = name.ok_or_else(|| parse_err(1, "missing `group` line"))?;
    let degree = degree.ok_or_else(|| parse_err(1, "missing `degree` line"))?;
    if gens.is_empty() {
        return Err(parse_err(last_line, "no `gen` lines"));
    }
    let mut generators = Vec::with_capacity(gens.len());
    for (line_no, cycles) in gens {
        let p = Permutation::from_cycles(&cycles, degree)
            .map_err(|e| parse_err(line_no, cycle_message(e)))?;
        generators.push(p);
    }
    Ok(GroupFile {
        name,
        degree,
        generators,
    })
}

/// Serializes a group through its stored generators.
pub fn write_group_file(name: &str, group: &Group) -> String {
    let mut out = format!("group {name}\ndegree {}\n", group.degree());
    let gens = group.generators();
    if gens.is_empty() {
        out.push_str("gen ()\n");
    }
    for g in gens {
        out.push_str(&format!("gen {}\n", g.to_string().replace(") (", ")(")));
    }
    out.push_str("end\n");
    out
}

// ---------------------------------------------------------------------------
// Built-in constructors

/// Generators and degree for a built-in name such as `symmetric4`,
/// `dihedral(8)`, `elementary_abelian2^3` or `direct_product(a,b)`.
pub fn builtin_generators(desc: &str) -> Result<(Vec<Permutation>, usize), CatalogError> {
    let compact: String = desc.chars().filter(|c| !c.is_whitespace()).collect();
    let s = compact.strip_prefix("builtin:").unwrap_or(&compact);
    let bad = || CatalogError::BadParameters(desc.to_string());

    if let Some(inner) = s
        .strip_prefix("direct_product(")
        .and_then(|r| r.strip_suffix(')'))
    {
        let (a, b) = split_top_level(inner).ok_or_else(bad)?;
        let (ga, da) = builtin_generators(a)?;
        let (gb, db) = builtin_generators(b)?;
        let degree = da + db;
        let mut gens: Vec<Permutation> = ga.iter().map(|g| g.shifted(0, degree)).collect();
        gens.extend(gb.iter().map(|g| g.shifted(da, degree)));
        return Ok((gens, degree));
    }

    let split = s
        .find(|c: char| !(c.is_ascii_alphabetic() || c == '_'))
        .unwrap_or(s.len());
    let (name, params) = s.split_at(split);
    let params = params
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .unwrap_or(params);
    let nums: Vec<usize> = if params.is_empty() {
        Vec::new()
    } else {
        params
            .split([',', '^'])
            .map(|t| t.parse().map_err(|_| bad()))
            .collect::<Result<_, _>>()?
    };
    let one = |nums: &[usize]| match nums {
        [n] => Ok(*n),
        _ => Err(bad()),
    };
    let perm =
        |cycles: Vec<Vec<usize>>, n: usize| Permutation::from_cycles(&cycles, n).map_err(|_| bad());

    match name {
        "cyclic" => {
            let n = one(&nums)?;
            if n == 0 {
                return Err(bad());
            }
            Ok((vec![perm(vec![(1..=n).collect()], n)?], n))
        }
        "dihedral" => {
            let m = one(&nums)?;
            if m < 6 || m % 2 != 0 {
                return Err(bad());
            }
            let n = m / 2;
            let rotation = perm(vec![(1..=n).collect()], n)?;
            let reflection = perm(
                (2..=n / 2 + n % 2)
                    .map(|i| vec![i, n + 2 - i])
                    .filter(|c| c[0] != c[1])
                    .collect(),
                n,
            )?;
            Ok((vec![rotation, reflection], n))
        }
        "symmetric" => {
            let n = one(&nums)?;
            if n == 0 || n > 6 {
                return Err(bad());
            }
            let mut gens = Vec::new();
            if n >= 2 {
                gens.push(perm(vec![vec![1, 2]], n)?);
            }
            if n >= 3 {
                gens.push(perm(vec![(1..=n).collect()], n)?);
            }
            Ok((gens, n))
        }
        "alternating" => {
            let n = one(&nums)?;
            if n == 0 || n > 6 {
                return Err(bad());
            }
            let gens = (3..=n)
                .map(|i| perm(vec![vec![1, 2, i]], n))
                .collect::<Result<_, _>>()?;
            Ok((gens, n))
        }
        "quaternion" => {
            if one(&nums)? != 8 {
                return Err(bad());
            }
            Ok((quaternion_generators(), 8))
        }
        "elementary_abelian" => {
            let [p, k] = nums[..] else {
                return Err(bad());
            };
            if !crate::arith::is_prime(p as u64) || k == 0 {
                return Err(bad());
            }
            let degree = p * k;
            let gens = (0..k)
                .map(|i| perm(vec![(i * p + 1..=(i + 1) * p).collect()], degree))
                .collect::<Result<_, _>>()?;
            Ok((gens, degree))
        }
        _ => Err(CatalogError::UnknownBuiltin(desc.to_string())),
    }
}

/// Splits `a,b` at the comma not nested inside parentheses.
fn split_top_level(s: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => return Some((&s[..i], &s[i + 1..])),
            _ => {}
        }
    }
    None
}

/// Right regular representation of `{±1, ±i, ±j, ±k}` on 8 points.
fn quaternion_generators() -> Vec<Permutation> {
    // unit u in 0..4 = 1, i, j, k; element (sign, u) numbered sign*4 + u
    const UNIT_MUL: [[(bool, usize); 4]; 4] = [
        [(false, 0), (false, 1), (false, 2), (false, 3)],
        [(false, 1), (true, 0), (false, 3), (true, 2)],
        [(false, 2), (true, 3), (true, 0), (false, 1)],
        [(false, 3), (false, 2), (true, 1), (true, 0)],
    ];
    let mul = |a: usize, b: usize| {
        let (neg, u) = UNIT_MUL[a % 4][b % 4];
        let sign = (a / 4 + b / 4 + neg as usize) % 2;
        sign * 4 + u
    };
    [1usize, 2]
        .iter()
        .map(|&g| {
            let images = (0..8).map(|x| mul(x, g) as u32).collect();
            Permutation::from_images(images).expect("right multiplication is a bijection")
        })
        .collect()
}

pub fn builtin(desc: &str, limits: Limits) -> Result<Group, CatalogError> {
    let (gens, degree) = builtin_generators(desc)?;
    Ok(Group::generate_with_limits(&gens, degree, limits)?)
}

// ---------------------------------------------------------------------------
// Fixture

/// Checks the structural facts the order-216 fixture stands for.
pub fn validate_fixture(group: &Group) -> Result<(), CatalogError> {
    let fail = |what: &str| Err(CatalogError::Fixture(what.to_string()));
    if group.order() != 216 {
        return fail("order is not 216");
    }
    if !is_solvable(group).holds {
        return fail("group is not solvable");
    }
    let p = sylow_subgroup(group, 3)?;
    if p.order() != 27 || nilpotency_class(&p.to_group()) != Some(2) {
        return fail("Sylow 3-subgroup is not of order 27 and class 2");
    }
    let n = normalizer(group, &p)?.to_group();
    if !is_p_supersolvable(&n, 3)?.holds {
        return fail("Sylow 3-normalizer is not 3-supersolvable");
    }
    if is_p_supersolvable(group, 3)?.holds {
        return fail("group is 3-supersolvable");
    }
    Ok(())
}

/// The order-216 fixture, validated on every load.
pub fn fixture_216_153() -> Result<Group, CatalogError> {
    let file = parse_group_file(FIXTURE_TEXT)?;
    let group = file.to_group(Limits::default())?;
    validate_fixture(&group)?;
    Ok(group)
}

// ---------------------------------------------------------------------------
// Catalogs

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    Builtin(String),
    File(PathBuf),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub source: Source,
    pub expected_order: Option<usize>,
}

impl CatalogEntry {
    pub fn load(&self, limits: Limits) -> Result<NamedGroup, CatalogError> {
        let (name, group) = match &self.source {
            Source::Builtin(desc) => (self.name.clone(), builtin(desc, limits)?),
            Source::File(path) => {
                let file = parse_group_file(&read(path)?)?;
                let group = file.to_group(limits)?;
                if file.name == FIXTURE_NAME {
                    validate_fixture(&group)?;
                }
                (file.name, group)
            }
        };
        if let Some(expected) = self.expected_order {
            if group.order() != expected {
                return Err(CatalogError::OrderMismatch {
                    name,
                    expected,
                    found: group.order(),
                });
            }
        }
        Ok(NamedGroup { name, group })
    }
}

fn read(path: &Path) -> Result<String, CatalogError> {
    fs::read_to_string(path).map_err(|e| CatalogError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

/// Parses a builtins list: `<constructor> [expected order]` per line.
pub fn parse_builtin_list(text: &str) -> Result<Vec<CatalogEntry>, CatalogError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let desc = parts.next().expect("nonempty line");
        let expected_order = match parts.next() {
            Some(t) => Some(
                t.parse()
                    .map_err(|_| parse_err(i + 1, format!("bad expected order {t:?}")))?,
            ),
            None => None,
        };
        if parts.next().is_some() {
            return Err(parse_err(i + 1, "expected `<constructor> [order]`"));
        }
        out.push(CatalogEntry {
            name: desc.to_string(),
            source: Source::Builtin(desc.to_string()),
            expected_order,
        });
    }
    Ok(out)
}

/// Entries of a catalog directory: the builtins list first (if present),
/// then every `*.group` file in file-name order.
pub fn catalog_entries(dir: &Path) -> Result<Vec<CatalogEntry>, CatalogError> {
    let io = |e: std::io::Error| CatalogError::Io {
        path: dir.display().to_string(),
        message: e.to_string(),
    };
    let mut entries = Vec::new();
    let list = dir.join(BUILTINS_FILE);
    if list.is_file() {
        entries.extend(parse_builtin_list(&read(&list)?)?);
    }
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(io)?
        .map(|e| e.map(|e| e.path()))
        .collect::<Result<_, _>>()
        .map_err(io)?;
    files.retain(|p| p.extension().is_some_and(|e| e == GROUP_EXTENSION));
    files.sort();
    for path in files {
        let stem = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        entries.push(CatalogEntry {
            name: stem,
            source: Source::File(path),
            expected_order: None,
        });
    }
    Ok(entries)
}

pub fn load_catalog(dir: &Path, limits: Limits) -> Result<Vec<NamedGroup>, CatalogError> {
    catalog_entries(dir)?
        .iter()
        .map(|e| e.load(limits))
        .collect()
}

/// The catalog shipped with the crate.
pub fn shipped_catalog_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

/// Resolves `builtin:<desc>` or a group file path.
pub fn load_group_arg(arg: &str, limits: Limits) -> Result<NamedGroup, CatalogError> {
    if let Some(desc) = arg.strip_prefix("builtin:") {
        return Ok(NamedGroup {
            name: desc.to_string(),
            group: builtin(desc, limits)?,
        });
    }
    CatalogEntry {
        name: arg.to_string(),
        source: Source::File(PathBuf::from(arg)),
        expected_order: None,
    }
    .load(limits)
}
