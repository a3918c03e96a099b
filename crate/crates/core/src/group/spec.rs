//! Group-spec strings:
//!
//! ```text
//! cyclic:N | dihedral:N | sym:N | alt:N | quaternion:N | heisenberg:P
//! | aff:P | sl2:P | direct(SPEC,SPEC) | perm:PATH | cayley:PATH | ctbl:PATH
//! ```

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use super::{families, FiniteGroup, DEFAULT_MAX_ORDER};
use crate::catalog;
use crate::error::{Error, Result};

/// Environment variable listing extra fixture directories (`:`-separated).
pub const FIXTURE_PATH_ENV: &str = "CENTRAL_FOURIER_FIXTURES";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(u64),
    Dihedral(u64),
    Sym(u64),
    Alt(u64),
    Quaternion(u64),
    Heisenberg(u64),
    Aff(u64),
    Sl2(u64),
    Direct(Box<GroupSpec>, Box<GroupSpec>),
    Perm(PathBuf),
    Cayley(PathBuf),
    Ctbl(PathBuf),
}

fn malformed(spec: &str, reason: impl Into<String>) -> Error {
    Error::MalformedSpec { spec: spec.to_string(), reason: reason.into() }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn parse(&mut self) -> Result<GroupSpec> {
        let rest = self.rest();
        if let Some(inner) = rest.strip_prefix("direct(") {
            self.pos += "direct(".len();
            let _ = inner;
            let a = self.parse()?;
            self.expect(',')?;
            let b = self.parse()?;
            self.expect(')')?;
            return Ok(GroupSpec::Direct(Box::new(a), Box::new(b)));
        }
        let colon = rest.find(':').ok_or_else(|| malformed(self.src, "expected `family:parameter`"))?;
        let family = &rest[..colon];
        self.pos += colon + 1;
        let arg = self.take_argument();
        if arg.is_empty() {
            return Err(malformed(self.src, format!("missing parameter for `{family}`")));
        }
        let number = || -> Result<u64> {
            arg.parse::<u64>().map_err(|_| malformed(self.src, format!("`{arg}` is not a positive integer")))
        };
        Ok(match family {
            "cyclic" => GroupSpec::Cyclic(number()?),
            "dihedral" => GroupSpec::Dihedral(number()?),
            "sym" => GroupSpec::Sym(number()?),
            "alt" => GroupSpec::Alt(number()?),
            "quaternion" => GroupSpec::Quaternion(number()?),
            "heisenberg" => GroupSpec::Heisenberg(number()?),
            "aff" => GroupSpec::Aff(number()?),
            "sl2" => GroupSpec::Sl2(number()?),
            "perm" => GroupSpec::Perm(arg.into()),
            "cayley" => GroupSpec::Cayley(arg.into()),
            "ctbl" => GroupSpec::Ctbl(arg.into()),
            other => return Err(malformed(self.src, format!("unknown family `{other}`"))),
        })
    }

    // Everything up to a `,` or `)` at nesting depth zero.
    fn take_argument(&mut self) -> &'a str {
        let rest = self.rest();
        let mut depth = 0i32;
        let mut end = rest.len();
        for (i, ch) in rest.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' if depth == 0 => {
                    end = i;
                    break;
                }
                ')' => depth -= 1,
                ',' if depth == 0 => {
                    end = i;
                    break;
                }
                _ => {}
            }
        }
        self.pos += end;
        &rest[..end]
    }

    fn expect(&mut self, ch: char) -> Result<()> {
        if self.rest().starts_with(ch) {
            self.pos += ch.len_utf8();
            Ok(())
        } else {
            Err(malformed(self.src, format!("expected `{ch}` at offset {}", self.pos)))
        }
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut p = Parser { src: s, pos: 0 };
        let spec = p.parse()?;
        if p.pos != s.len() {
            return Err(malformed(s, format!("trailing input `{}`", p.rest())));
        }
        Ok(spec)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "cyclic:{n}"),
            GroupSpec::Dihedral(n) => write!(f, "dihedral:{n}"),
            GroupSpec::Sym(n) => write!(f, "sym:{n}"),
            GroupSpec::Alt(n) => write!(f, "alt:{n}"),
            GroupSpec::Quaternion(n) => write!(f, "quaternion:{n}"),
            GroupSpec::Heisenberg(n) => write!(f, "heisenberg:{n}"),
            GroupSpec::Aff(n) => write!(f, "aff:{n}"),
            GroupSpec::Sl2(n) => write!(f, "sl2:{n}"),
            GroupSpec::Direct(a, b) => write!(f, "direct({a},{b})"),
            GroupSpec::Perm(p) => write!(f, "perm:{}", p.display()),
            GroupSpec::Cayley(p) => write!(f, "cayley:{}", p.display()),
            GroupSpec::Ctbl(p) => write!(f, "ctbl:{}", p.display()),
        }
    }
}

/// Limits and lookup paths used when realizing a spec.
#[derive(Clone, Debug)]
pub struct BuildOptions {
    pub max_order: usize,
    pub search_paths: Vec<PathBuf>,
}

impl Default for BuildOptions {
    fn default() -> Self {
        let mut search_paths = Vec::new();
        if let Ok(v) = std::env::var(FIXTURE_PATH_ENV) {
            search_paths.extend(std::env::split_paths(&v));
        }
        BuildOptions { max_order: DEFAULT_MAX_ORDER, search_paths }
    }
}

impl BuildOptions {
    /// Resolves a fixture path: as given if it exists, else under each search path.
    pub fn resolve(&self, path: &Path) -> PathBuf {
        if path.exists() || path.is_absolute() {
            return path.to_path_buf();
        }
        self.search_paths
            .iter()
            .map(|dir| dir.join(path))
            .find(|p| p.exists())
            .unwrap_or_else(|| path.to_path_buf())
    }
}

impl GroupSpec {
    pub fn build(&self, opts: &BuildOptions) -> Result<FiniteGroup> {
        let max = opts.max_order;
        match self {
            GroupSpec::Cyclic(n) => families::cyclic(*n, max),
            GroupSpec::Dihedral(n) => families::dihedral(*n, max),
            GroupSpec::Sym(n) => families::symmetric(*n, max),
            GroupSpec::Alt(n) => families::alternating(*n, max),
            GroupSpec::Quaternion(n) => families::quaternion(*n, max),
            GroupSpec::Heisenberg(p) => families::heisenberg(*p, max),
            GroupSpec::Aff(p) => families::affine(*p, max),
            GroupSpec::Sl2(p) => families::special_linear(*p, max),
            GroupSpec::Direct(a, b) => {
                let ga = a.build(opts)?;
                let gb = b.build(opts)?;
                Ok(FiniteGroup::direct_product(&ga, &gb, max)?.with_label(self.to_string()))
            }
            GroupSpec::Perm(p) => catalog::load_perm_group_with(&opts.resolve(p), max),
            GroupSpec::Cayley(p) => catalog::load_cayley(&opts.resolve(p)),
            GroupSpec::Ctbl(_) => Err(Error::Unsupported(
                "a ctbl: spec carries only a character table, not a multiplication table".into(),
            )),
        }
    }
}

/// Parses and builds a group with default options.
pub fn make_group(spec: &str) -> Result<FiniteGroup> {
    make_group_with(spec, &BuildOptions::default())
}

pub fn make_group_with(spec: &str, opts: &BuildOptions) -> Result<FiniteGroup> {
    spec.parse::<GroupSpec>()?.build(opts)
}
