//! Lattice inputs and numeric range arguments.

use std::fs;
use std::path::PathBuf;

use clap::Args;
use invlat::constructions::Construction;
use invlat::{CongruenceSystem, LatticeBasis};
use serde_json::Value;

use crate::Failure;

/// Exactly one way of naming a lattice.
#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct LatticeInput {
    /// Inline congruence system, e.g. '{"moduli":[4],"coefficients":[[1,3]]}'.
    #[arg(long)]
    pub congruence: Option<String>,
    /// Inline basis, e.g. '{"dimension":2,"columns":[[1,1],[0,4]]}'.
    #[arg(long)]
    pub basis: Option<String>,
    /// JSON file holding a congruence system or a basis.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Named family: sharp:p=5,m=2[,missing=-1], counterexample:n=6, dicyclic:n=3.
    #[arg(long)]
    pub construct: Option<String>,
}

#[derive(Debug, Clone)]
pub struct Resolved {
    pub system: Option<CongruenceSystem>,
    pub lattice: LatticeBasis,
}

fn parse_json(text: &str, what: &str) -> Result<Resolved, Failure> {
    let v: Value = serde_json::from_str(text).map_err(|e| Failure::input(format!("{what}: {e}")))?;
    if v.get("columns").is_some() {
        let lattice: LatticeBasis = serde_json::from_value(v).map_err(|e| Failure::input(format!("{what}: {e}")))?;
        Ok(Resolved { system: None, lattice })
    } else {
        let system: CongruenceSystem = serde_json::from_value(v).map_err(|e| Failure::input(format!("{what}: {e}")))?;
        Ok(Resolved { lattice: system.lattice(), system: Some(system) })
    }
}

impl LatticeInput {
    pub fn resolve(&self) -> Result<Resolved, Failure> {
        if let Some(s) = &self.congruence {
            let system: CongruenceSystem =
                serde_json::from_str(s).map_err(|e| Failure::input(format!("--congruence: {e}")))?;
            return Ok(Resolved { lattice: system.lattice(), system: Some(system) });
        }
        if let Some(s) = &self.basis {
            let lattice: LatticeBasis = serde_json::from_str(s).map_err(|e| Failure::input(format!("--basis: {e}")))?;
            return Ok(Resolved { system: None, lattice });
        }
        if let Some(path) = &self.input {
            let text = fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
            return parse_json(&text, &path.display().to_string());
        }
        let spec = self.construct.as_deref().expect("clap enforces one input");
        let c: Construction = spec.parse().map_err(|e| Failure::input(format!("--construct: {e}")))?;
        let system = c.system().map_err(|e| Failure::input(format!("--construct: {e}")))?;
        Ok(Resolved { lattice: system.lattice(), system: Some(system) })
    }
}

/// `a..b` (inclusive), `a,b,c` or a single value.
pub fn parse_list(s: &str) -> Result<Vec<u64>, String> {
    let s = s.trim();
    if let Some((a, b)) = s.split_once("..") {
        let b = b.strip_prefix('=').unwrap_or(b);
        let a: u64 = a.trim().parse().map_err(|_| format!("bad range start in `{s}`"))?;
        let b: u64 = b.trim().parse().map_err(|_| format!("bad range end in `{s}`"))?;
        if a > b {
            return Err(format!("empty range `{s}`"));
        }
        return Ok((a..=b).collect());
    }
    s.split(',').map(|x| x.trim().parse::<u64>().map_err(|_| format!("`{x}` is not a nonnegative integer"))).collect()
}

#[derive(Clone, Debug)]
pub struct NumList(pub Vec<u64>);

impl std::str::FromStr for NumList {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        parse_list(s).map(NumList)
    }
}

/// 1-based pairs `i-j` separated by commas; returned 0-based.
pub fn parse_pairs(s: &str) -> Result<Vec<(usize, usize)>, String> {
    s.split(',')
        .map(|p| {
            let (a, b) = p.split_once('-').ok_or_else(|| format!("`{p}`: expected i-j"))?;
            let a: usize = a.trim().parse().map_err(|_| format!("`{p}`: bad index"))?;
            let b: usize = b.trim().parse().map_err(|_| format!("`{p}`: bad index"))?;
            if a == 0 || b == 0 {
                return Err(format!("`{p}`: indices are 1-based"));
            }
            Ok((a - 1, b - 1))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lists() {
        assert_eq!(parse_list("1..4").unwrap(), vec![1, 2, 3, 4]);
        assert_eq!(parse_list("1..=2").unwrap(), vec![1, 2]);
        assert_eq!(parse_list("6,8, 10").unwrap(), vec![6, 8, 10]);
        assert_eq!(parse_list("3").unwrap(), vec![3]);
        assert!(parse_list("4..1").is_err());
        assert!(parse_list("a").is_err());
        assert!(parse_list("-1").is_err());
    }

    #[test]
    fn pairs() {
        assert_eq!(parse_pairs("1-4,2-3").unwrap(), vec![(0, 3), (1, 2)]);
        assert!(parse_pairs("0-1").is_err());
        assert!(parse_pairs("1").is_err());
    }

    #[test]
    fn resolve_forms() {
        let i = LatticeInput {
            congruence: Some(r#"{"moduli":[4],"coefficients":[[1,3]]}"#.into()),
            basis: None,
            input: None,
            construct: None,
        };
        assert_eq!(i.resolve().unwrap().lattice.index_u64(), Some(4));
        let i = LatticeInput {
            congruence: None,
            basis: Some(r#"{"dimension":2,"columns":[[1,1],[0,4]]}"#.into()),
            input: None,
            construct: None,
        };
        assert!(i.resolve().unwrap().system.is_none());
        let i = LatticeInput { congruence: None, basis: None, input: None, construct: Some("dihedral:n=4".into()) };
        assert_eq!(i.resolve().unwrap_err().code, 2);
    }
}
