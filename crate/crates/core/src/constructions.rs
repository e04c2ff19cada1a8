//! Named lattice families with known degree bounds.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::ControlFlow;
use std::str::FromStr;

use serde::Serialize;

use crate::ball::{for_each_shell_point, Orthant};
use crate::bounds::{bfield, bfieldr, bfieldr_with, SearchOptions};
use crate::error::GeomError;
use crate::geomnum::{ceil_div, determinant_form};
use crate::lattice::{CongruenceSystem, CosetLabel, LatticeBasis, LatticeVector};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `ceil(p / ceil(m/2))`.
pub fn conjecture_bound(p: u64, m: u64) -> u64 {
    assert!(m >= 1, "m must be positive");
    ceil_div(p, ceil_div(m, 2))
}

/// Coefficients `+-1, ..., +-ceil(m/2)` mod a prime `p`, with one removed
/// when `m` is odd.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SharpCaseSpec {
    pub p: u64,
    pub m: usize,
    pub missing: Option<i64>,
}

impl SharpCaseSpec {
    /// For odd `m` the missing coefficient defaults to `-ceil(m/2)`.
    pub fn new(p: u64, m: usize, missing: Option<i64>) -> Result<Self, GeomError> {
        if p < 3 || !is_prime(p) {
            return Err(GeomError::InvalidConstruction(format!("p = {p} must be a prime >= 3")));
        }
        if m == 0 || m as u64 >= p {
            return Err(GeomError::InvalidConstruction(format!("need 1 <= m < p, got m = {m}, p = {p}")));
        }
        let k = m.div_ceil(2) as i64;
        let missing = match (m % 2, missing) {
            (0, None) => None,
            (0, Some(x)) => {
                return Err(GeomError::InvalidConstruction(format!("missing coefficient {x} given for even m = {m}")))
            }
            (_, None) => Some(-k),
            (_, Some(x)) if x != 0 && x.abs() <= k => Some(x),
            (_, Some(x)) => {
                return Err(GeomError::InvalidConstruction(format!("missing coefficient {x} not in +-1..+-{k}")))
            }
        };
        Ok(SharpCaseSpec { p, m, missing })
    }

    /// Signed exponents in the order `1, -1, 2, -2, ...`.
    pub fn exponents(&self) -> Vec<i64> {
        let k = self.m.div_ceil(2) as i64;
        (1..=k).flat_map(|j| [j, -j]).filter(|&x| Some(x) != self.missing).collect()
    }
}

pub fn sharp_case_lattice(spec: &SharpCaseSpec) -> CongruenceSystem {
    CongruenceSystem::cyclic(spec.p, spec.exponents()).expect("valid sharp-case system")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SharpCaseReport {
    pub spec: SharpCaseSpec,
    pub coefficients: Vec<u64>,
    pub bfield: u64,
    pub bfieldr: u64,
    pub bound: u64,
    pub equal: bool,
}

/// Exact `bfield` and `bfieldr` against `ceil(p / ceil(m/2))`.
pub fn sharp_case_check(spec: &SharpCaseSpec) -> Result<SharpCaseReport, GeomError> {
    let sys = sharp_case_lattice(spec);
    let l = sys.lattice();
    let bf = bfield(&l)?.value;
    let bfr = bfieldr(&l)?.value;
    let bound = conjecture_bound(spec.p, spec.m as u64);
    Ok(SharpCaseReport {
        spec: spec.clone(),
        coefficients: sys.coefficients()[0].clone(),
        bfield: bf,
        bfieldr: bfr,
        bound,
        equal: bf == bound && bfr == bound,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactSublatticeReport {
    /// Signed coefficients of the exact equation, one per coordinate.
    pub coefficients: Vec<i64>,
    /// 0-based coordinate with coefficient `+-1` the induction starts from.
    pub start: usize,
    pub points: Vec<LatticeVector>,
    pub generates: bool,
}

/// Builds nonnegative points of norm 2 or 3 on `sum c_i a_i = 0`, one per
/// coordinate after the first, each with a 1 in its new coordinate and
/// support on coordinates already used. Together with `e_start` they must
/// generate `Z^m`, which happens exactly when they generate the exact
/// sublattice.
pub fn exact_sublattice_basis(coefficients: &[i64]) -> Result<ExactSublatticeReport, GeomError> {
    let m = coefficients.len();
    let start = coefficients
        .iter()
        .position(|c| c.abs() == 1)
        .ok_or_else(|| GeomError::InvalidConstruction("no coefficient +-1".into()))?;
    let mut used = vec![false; m];
    used[start] = true;
    let mut points = Vec::with_capacity(m.saturating_sub(1));
    'grow: while points.len() + 1 < m {
        for k in (0..m).filter(|&k| !used[k]) {
            let mut found = None;
            for d in 2..=3 {
                let _ = for_each_shell_point(m, d, Orthant::Nonnegative, |p| {
                    let ok = p[k] == 1
                        && p.iter().enumerate().all(|(i, &x)| x == 0 || used[i] || i == k)
                        && p.iter().zip(coefficients).map(|(x, c)| x * c).sum::<i64>() == 0;
                    if ok {
                        found = Some(LatticeVector(p.to_vec()));
                        return ControlFlow::Break(());
                    }
                    ControlFlow::Continue(())
                });
                if found.is_some() {
                    break;
                }
            }
            if let Some(p) = found {
                used[k] = true;
                points.push(p);
                continue 'grow;
            }
        }
        break;
    }
    let generates = points.len() + 1 == m && {
        let mut all = points.clone();
        all.push(LatticeVector::unit(m, start));
        LatticeBasis::identity(m).is_generating(&all)
    };
    Ok(ExactSublatticeReport { coefficients: coefficients.to_vec(), start, points, generates })
}

/// `[1, n/2 - 1, n/2, n/2 + 1, n - 1]` mod `n`.
pub fn counterexample_lattice(n: u64) -> Result<CongruenceSystem, GeomError> {
    if !n.is_multiple_of(2) || n < 4 {
        return Err(GeomError::InvalidConstruction(format!("n = {n} must be even and >= 4")));
    }
    let h = n / 2;
    Ok(CongruenceSystem::new(vec![n], vec![vec![1, h - 1, h, h + 1, n - 1]])?)
}

/// Vectors whose determinant form certifies the lower bound.
pub fn counterexample_vectors() -> Vec<LatticeVector> {
    [[0, 1, 0, 1, 0], [0, 0, 1, 1, 1], [1, 1, 1, 0, 0], [0, 0, 2, 0, 0]]
        .iter()
        .map(|v| LatticeVector(v.to_vec()))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CounterexampleReport {
    pub n: u64,
    pub coefficients: Vec<u64>,
    pub bfieldr: u64,
    pub half: u64,
    pub conjecture_bound: u64,
    pub d_vector: Vec<i64>,
    pub vectors_in_lattice: bool,
    pub passed: bool,
}

pub fn counterexample_check(n: u64) -> Result<CounterexampleReport, GeomError> {
    if n < 6 {
        return Err(GeomError::InvalidConstruction(format!("n = {n} must be at least 6")));
    }
    let sys = counterexample_lattice(n)?;
    let l = sys.lattice();
    let bfr = bfieldr_with(&l, &SearchOptions::with_cap(n))?.value;
    let bs = counterexample_vectors();
    let vectors_in_lattice = bs.iter().all(|b| l.contains_coords(b.coords()));
    let d_vector = determinant_form(&bs)?.coeffs;
    let half = n / 2;
    let conj = conjecture_bound(n, 5);
    let passed = bfr >= half && half > conj && d_vector == [2, -2, 0, 2, -2] && vectors_in_lattice;
    Ok(CounterexampleReport {
        n,
        coefficients: sys.coefficients()[0].clone(),
        bfieldr: bfr,
        half,
        conjecture_bound: conj,
        d_vector,
        vectors_in_lattice,
        passed,
    })
}

/// Reflection representation of the dihedral group of order `2n`.
pub fn dihedral_dspan(n: u64) -> Result<u64, GeomError> {
    if n < 3 {
        return Err(GeomError::InvalidConstruction(format!("dihedral needs n >= 3, got {n}")));
    }
    Ok(n)
}

/// Dicyclic group of order `4n` in its 2-dimensional representation.
pub fn dicyclic_dspan(n: u64) -> Result<u64, GeomError> {
    if n < 2 {
        return Err(GeomError::InvalidConstruction(format!("dicyclic needs n >= 2, got {n}")));
    }
    Ok(n + 1)
}

/// Kernel of `[1, 2n-1]` mod `2n`: the cyclic subgroup of index 2.
pub fn dicyclic_restriction(n: u64) -> Result<CongruenceSystem, GeomError> {
    if n < 2 {
        return Err(GeomError::InvalidConstruction(format!("dicyclic needs n >= 2, got {n}")));
    }
    Ok(CongruenceSystem::new(vec![2 * n], vec![vec![1, 2 * n - 1]])?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DicyclicWitness {
    pub n: u64,
    pub label: CosetLabel,
    /// Nonnegative points with the label, grouped by norm, for norms up to `n + 1`.
    pub by_norm: Vec<(u64, Vec<LatticeVector>)>,
    pub passed: bool,
}

/// In label class `n - 1`: `(n-1, 0)` is the only point of norm `n - 1`,
/// nothing has norm `n`, and `(n, 1)` has norm `n + 1`.
pub fn dicyclic_witness_check(n: u64) -> Result<DicyclicWitness, GeomError> {
    let sys = dicyclic_restriction(n)?;
    let label = CosetLabel(vec![n - 1]);
    let mut by_norm = Vec::new();
    for d in 0..=n + 1 {
        let mut pts = Vec::new();
        let _ = for_each_shell_point(2, d, Orthant::Nonnegative, |p| {
            let v = LatticeVector(p.to_vec());
            if sys.coset_label(&v).is_ok_and(|x| x == label) {
                pts.push(v);
            }
            ControlFlow::Continue(())
        });
        if !pts.is_empty() {
            by_norm.push((d, pts));
        }
    }
    let ni = n as i64;
    let passed = by_norm.len() >= 2
        && by_norm[0] == (n - 1, vec![LatticeVector(vec![ni - 1, 0])])
        && by_norm[1].0 == n + 1
        && by_norm[1].1.contains(&LatticeVector(vec![ni, 1]));
    Ok(DicyclicWitness { n, label, by_norm, passed })
}

/// Parsed `family:key=value,...` construction name.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum Construction {
    Sharp(SharpCaseSpec),
    Counterexample { n: u64 },
    Dihedral { n: u64 },
    Dicyclic { n: u64 },
}

impl Construction {
    /// The congruence system of the family. Dihedral groups are not abelian
    /// and have none; dicyclic gives the restriction to the cyclic subgroup.
    pub fn system(&self) -> Result<CongruenceSystem, GeomError> {
        match self {
            Construction::Sharp(s) => Ok(sharp_case_lattice(s)),
            Construction::Counterexample { n } => counterexample_lattice(*n),
            Construction::Dicyclic { n } => dicyclic_restriction(*n),
            Construction::Dihedral { .. } => {
                Err(GeomError::InvalidConstruction("dihedral groups have no congruence lattice".into()))
            }
        }
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Construction::Sharp(s) => {
                write!(f, "sharp:p={},m={}", s.p, s.m)?;
                match s.missing {
                    Some(x) => write!(f, ",missing={x}"),
                    None => Ok(()),
                }
            }
            Construction::Counterexample { n } => write!(f, "counterexample:n={n}"),
            Construction::Dihedral { n } => write!(f, "dihedral:n={n}"),
            Construction::Dicyclic { n } => write!(f, "dicyclic:n={n}"),
        }
    }
}

impl FromStr for Construction {
    type Err = GeomError;

    fn from_str(s: &str) -> Result<Self, GeomError> {
        let bad = |msg: String| GeomError::InvalidConstruction(msg);
        let (family, rest) = s.split_once(':').ok_or_else(|| bad(format!("`{s}`: expected family:key=value,...")))?;
        let mut keys = BTreeSet::new();
        let mut get = std::collections::BTreeMap::new();
        for kv in rest.split(',').filter(|x| !x.is_empty()) {
            let (k, v) = kv.split_once('=').ok_or_else(|| bad(format!("`{kv}`: expected key=value")))?;
            let v: i64 = v.trim().parse().map_err(|_| bad(format!("`{v}` is not an integer")))?;
            if !keys.insert(k.trim().to_string()) {
                return Err(bad(format!("duplicate key `{k}`")));
            }
            get.insert(k.trim().to_string(), v);
        }
        let allowed: &[&str] = if family == "sharp" { &["p", "m", "missing"] } else { &["n"] };
        if let Some(k) = keys.iter().find(|k| !allowed.contains(&k.as_str())) {
            return Err(bad(format!("unknown key `{k}` for {family}")));
        }
        let need = |k: &str| -> Result<u64, GeomError> {
            let v = *get.get(k).ok_or_else(|| bad(format!("missing key `{k}`")))?;
            u64::try_from(v).map_err(|_| bad(format!("`{k}` must be nonnegative")))
        };
        match family {
            "sharp" => Ok(Construction::Sharp(SharpCaseSpec::new(
                need("p")?,
                need("m")? as usize,
                get.get("missing").copied(),
            )?)),
            "counterexample" => {
                let n = need("n")?;
                counterexample_lattice(n)?;
                Ok(Construction::Counterexample { n })
            }
            "dihedral" => {
                let n = need("n")?;
                dihedral_dspan(n)?;
                Ok(Construction::Dihedral { n })
            }
            "dicyclic" => {
                let n = need("n")?;
                dicyclic_dspan(n)?;
                Ok(Construction::Dicyclic { n })
            }
            _ => Err(bad(format!("unknown family `{family}`"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::TrivialDuplicateReport;

    fn spec(p: u64, m: usize, missing: Option<i64>) -> SharpCaseSpec {
        SharpCaseSpec::new(p, m, missing).unwrap()
    }

    #[test]
    fn sharp_systems() {
        let s = sharp_case_lattice(&spec(5, 2, None));
        assert_eq!(s.coefficients(), &[vec![1, 4]]);
        let s = sharp_case_lattice(&spec(7, 3, Some(-2)));
        assert_eq!(s.coefficients(), &[vec![1, 6, 2]]);
        let s = sharp_case_lattice(&spec(11, 4, None));
        assert_eq!(s.coefficients(), &[vec![1, 10, 2, 9]]);
        assert_eq!(spec(7, 3, None).missing, Some(-2));
        assert_eq!(spec(7, 5, None).exponents(), vec![1, -1, 2, -2, 3]);
    }

    #[test]
    fn sharp_spec_rejections() {
        assert!(SharpCaseSpec::new(9, 2, None).is_err());
        assert!(SharpCaseSpec::new(2, 1, None).is_err());
        assert!(SharpCaseSpec::new(5, 5, None).is_err());
        assert!(SharpCaseSpec::new(7, 2, Some(1)).is_err());
        assert!(SharpCaseSpec::new(7, 3, Some(3)).is_err());
        assert!(SharpCaseSpec::new(7, 3, Some(0)).is_err());
    }

    #[test]
    fn primes() {
        let small: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn conjecture_values() {
        assert_eq!(conjecture_bound(11, 3), 6);
        assert_eq!(conjecture_bound(5, 2), 5);
        assert_eq!(conjecture_bound(7, 4), 4);
    }

    #[test]
    fn sharp_equality_small() {
        for (p, m) in [(5, 2), (5, 3), (7, 2), (7, 4)] {
            let r = sharp_case_check(&spec(p, m, None)).unwrap();
            assert!(r.equal, "{r:?}");
        }
        for missing in [-1, 1, 2, -2] {
            assert!(sharp_case_check(&spec(7, 3, Some(missing))).unwrap().equal);
        }
    }

    #[test]
    fn exact_sublattice_small_norm_basis() {
        for m in 1..=9usize {
            let k = m.div_ceil(2) as i64;
            let choices: Vec<Option<i64>> =
                if m % 2 == 0 { vec![None] } else { (1..=k).flat_map(|j| [Some(j), Some(-j)]).collect() };
            for missing in choices {
                let s = SharpCaseSpec::new(23, m, missing).unwrap();
                let r = exact_sublattice_basis(&s.exponents()).unwrap();
                assert!(r.generates, "m={m} missing={missing:?} {r:?}");
                assert_eq!(r.points.len(), m - 1);
                for p in &r.points {
                    assert!(p.is_nonnegative() && (2..=3).contains(&p.l1norm()));
                }
            }
        }
        assert!(exact_sublattice_basis(&[2, -2]).is_err());
    }

    #[test]
    fn counterexample_systems() {
        assert_eq!(counterexample_lattice(6).unwrap().coefficients(), &[vec![1, 2, 3, 4, 5]]);
        assert_eq!(counterexample_lattice(8).unwrap().coefficients(), &[vec![1, 3, 4, 5, 7]]);
        let four = counterexample_lattice(4).unwrap().lattice();
        assert_eq!(
            four.detect_trivial_or_duplicate(),
            TrivialDuplicateReport { trivial_indices: vec![], duplicate_pairs: vec![(0, 1), (3, 4)] }
        );
        assert!(counterexample_lattice(7).is_err());
        assert!(counterexample_lattice(2).is_err());
    }

    #[test]
    fn counterexample_reports() {
        for n in [6, 8] {
            let r = counterexample_check(n).unwrap();
            assert!(r.passed, "{r:?}");
            assert_eq!(r.d_vector, vec![2, -2, 0, 2, -2]);
        }
        assert_eq!(counterexample_check(6).unwrap().conjecture_bound, 2);
        assert!(counterexample_check(4).is_err());
    }

    #[test]
    fn closed_forms() {
        assert_eq!(dihedral_dspan(5).unwrap(), 5);
        assert_eq!(dihedral_dspan(3).unwrap(), 3);
        assert_eq!(dihedral_dspan(12).unwrap(), 12);
        assert!(dihedral_dspan(2).is_err());
        assert_eq!(dicyclic_dspan(2).unwrap(), 3);
        assert_eq!(dicyclic_dspan(3).unwrap(), 4);
        assert_eq!(dicyclic_dspan(10).unwrap(), 11);
        assert!(dicyclic_dspan(1).is_err());
    }

    #[test]
    fn dicyclic_witnesses() {
        let r = dicyclic_witness_check(3).unwrap();
        assert!(r.passed);
        assert_eq!(r.by_norm[0], (2, vec![LatticeVector(vec![2, 0])]));
        // (0, n+1) ties with (n, 1)
        assert_eq!(r.by_norm[1], (4, vec![LatticeVector(vec![0, 4]), LatticeVector(vec![3, 1])]));
        for n in [2, 5, 7] {
            assert!(dicyclic_witness_check(n).unwrap().passed);
        }
    }

    #[test]
    fn parse_constructions() {
        let c: Construction = "sharp:p=5,m=2".parse().unwrap();
        assert_eq!(c, Construction::Sharp(spec(5, 2, None)));
        let c: Construction = "sharp:p=7,m=3,missing=1".parse().unwrap();
        assert_eq!(c.to_string(), "sharp:p=7,m=3,missing=1");
        assert_eq!("counterexample:n=6".parse::<Construction>().unwrap(), Construction::Counterexample { n: 6 });
        assert_eq!("dihedral:n=5".parse::<Construction>().unwrap(), Construction::Dihedral { n: 5 });
        assert_eq!("dicyclic:n=3".parse::<Construction>().unwrap().system().unwrap().coefficients(), &[vec![1, 5]]);
        for bad in [
            "sharp",
            "sharp:p=4,m=2",
            "sharp:p=5",
            "cyclic:n=3",
            "dihedral:n=x",
            "dihedral:n=5,n=6",
            "dicyclic:m=2",
            "counterexample:n=5",
        ] {
            assert!(bad.parse::<Construction>().is_err(), "{bad}");
        }
        assert!("dihedral:n=5".parse::<Construction>().unwrap().system().is_err());
    }
}
