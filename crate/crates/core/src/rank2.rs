//! Plane lattices: the extremal points H and E, the staircase bound and an
//! exhaustive check of `D_span <= n/2` over all sublattices of index `n`.

use num_integer::Integer;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::ball::{lattice_points_up_to, Orthant};
use crate::bounds::dspan;
use crate::error::GeomError;
use crate::lattice::{LatticeBasis, LatticeVector};

fn require_plane(l: &LatticeBasis) -> Result<u64, GeomError> {
    if l.dimension() != 2 {
        return Err(GeomError::NotRankTwo(l.dimension()));
    }
    Ok(l.index_u64().ok_or(crate::error::LatticeError::Overflow)?)
}

/// Lattice point with `a_1 <= 0 < a_2`, positive weight and least `a_2`;
/// ties go to the least negative `a_1`.
pub fn find_h(l: &LatticeBasis) -> Result<LatticeVector, GeomError> {
    let n = require_plane(l)? as i64;
    for a2 in 1..=n {
        for a1 in (-(a2 - 1)..=0).rev() {
            if l.contains_coords(&[a1, a2]) {
                return Ok(LatticeVector(vec![a1, a2]));
            }
        }
    }
    unreachable!("(0, n) lies in every index-n lattice")
}

/// Mirror image of [`find_h`]: `a_2 <= 0 < a_1`, least `a_1`.
pub fn find_e(l: &LatticeBasis) -> Result<LatticeVector, GeomError> {
    let n = require_plane(l)? as i64;
    for a1 in 1..=n {
        for a2 in (-(a1 - 1)..=0).rev() {
            if l.contains_coords(&[a1, a2]) {
                return Ok(LatticeVector(vec![a1, a2]));
            }
        }
    }
    unreachable!("(n, 0) lies in every index-n lattice")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HeChecks {
    /// No nonzero lattice point in the closed triangle `0, H, E` off `[H, E]`.
    pub empty_triangle: bool,
    /// Non-basis case only; `true` when not applicable.
    pub equal_weights: bool,
    pub segment_shape: bool,
    pub weight_times_step: bool,
    pub alphabeta: bool,
}

impl HeChecks {
    pub fn all(&self) -> bool {
        self.empty_triangle && self.equal_weights && self.segment_shape && self.weight_times_step && self.alphabeta
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HePoints {
    pub h: LatticeVector,
    pub e: LatticeVector,
    pub det: i64,
    pub forms_basis: bool,
    /// Lattice points on `[H, E]` from H to E; just `[H, E]` in the basis case.
    pub segment: Vec<LatticeVector>,
    /// Step `F` with consecutive segment points differing by `(F, -F)`.
    pub step: Option<i64>,
    pub checks: HeChecks,
}

fn in_closed_triangle(p: (i64, i64), a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> bool {
    let cross = |o: (i64, i64), u: (i64, i64), v: (i64, i64)| (u.0 - o.0) * (v.1 - o.1) - (u.1 - o.1) * (v.0 - o.0);
    let d1 = cross(a, b, p);
    let d2 = cross(b, c, p);
    let d3 = cross(c, a, p);
    let neg = d1 < 0 || d2 < 0 || d3 < 0;
    let pos = d1 > 0 || d2 > 0 || d3 > 0;
    !(neg && pos)
}

fn on_segment(p: (i64, i64), a: (i64, i64), b: (i64, i64)) -> bool {
    let cross = (b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0);
    cross == 0 && p.0 >= a.0.min(b.0) && p.0 <= a.0.max(b.0) && p.1 >= a.1.min(b.1) && p.1 <= a.1.max(b.1)
}

pub fn he_analysis(l: &LatticeBasis) -> Result<HePoints, GeomError> {
    let n = require_plane(l)? as i64;
    let h = find_h(l)?;
    let e = find_e(l)?;
    let (h1, h2, e1, e2) = (h.0[0], h.0[1], e.0[0], e.0[1]);
    let det = e1 * h2 - e2 * h1;
    let forms_basis = det.abs() == n;

    let mut empty_triangle = true;
    let (lo0, hi0) = (h1.min(0), e1.max(0));
    let (lo1, hi1) = (e2.min(0), h2.max(0));
    'scan: for x in lo0..=hi0 {
        for y in lo1..=hi1 {
            if (x, y) == (0, 0) || !in_closed_triangle((x, y), (0, 0), (h1, h2), (e1, e2)) {
                continue;
            }
            if l.contains_coords(&[x, y]) && !on_segment((x, y), (h1, h2), (e1, e2)) {
                empty_triangle = false;
                break 'scan;
            }
        }
    }

    let mut checks =
        HeChecks { empty_triangle, equal_weights: true, segment_shape: true, weight_times_step: true, alphabeta: true };
    if forms_basis {
        return Ok(HePoints { h: h.clone(), e: e.clone(), det, forms_basis, segment: vec![h, e], step: None, checks });
    }

    let g = (e1 - h1).gcd(&(e2 - h2));
    let (s1, s2) = ((e1 - h1) / g, (e2 - h2) / g);
    let segment: Vec<LatticeVector> =
        (0..=g).map(|k| LatticeVector(vec![h1 + k * s1, h2 + k * s2])).filter(|p| l.contains_coords(&p.0)).collect();
    let diffs: Vec<LatticeVector> = segment.windows(2).map(|w| w[1].sub(&w[0])).collect();
    let step = diffs.first().map(|d| d.0[0]);
    let wt = h.weight();
    checks.equal_weights = wt == e.weight();
    checks.segment_shape = segment.len() >= 3
        && diffs.iter().all(|d| Some(d.0[0]) == step && d.0[1] == -d.0[0])
        && step.is_some_and(|f| f >= 2);
    if let Some(f) = step {
        checks.weight_times_step = wt * f == n;
        checks.alphabeta = wt < 2 || f < 2 || 2 * (wt + f - 2) <= wt * f;
    }
    Ok(HePoints { h, e, det, forms_basis, segment, step, checks })
}

/// Corner points of a staircase: positive weight, first coordinates strictly
/// increasing, second strictly decreasing, `a^1_1 <= 0` and `a^r_2 <= 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StaircaseInput {
    points: Vec<LatticeVector>,
}

impl StaircaseInput {
    /// Drops points that dominate another point, then sorts.
    pub fn new(points: Vec<LatticeVector>) -> Result<Self, GeomError> {
        if points.is_empty() {
            return Err(GeomError::InvalidStaircase("no points".into()));
        }
        for p in &points {
            if p.dim() != 2 {
                return Err(GeomError::NotRankTwo(p.dim()));
            }
            if p.weight() <= 0 {
                return Err(GeomError::InvalidStaircase(format!("{p} has nonpositive weight")));
            }
        }
        let mut kept: Vec<LatticeVector> = Vec::new();
        for (i, p) in points.iter().enumerate() {
            let dominated = points.iter().enumerate().any(|(j, q)| q.leq_componentwise(p) && (q != p || j < i));
            if !dominated {
                kept.push(p.clone());
            }
        }
        kept.sort();
        if kept[0].0[0] > 0 {
            return Err(GeomError::InvalidStaircase("first point must have a_1 <= 0".into()));
        }
        if kept[kept.len() - 1].0[1] > 0 {
            return Err(GeomError::InvalidStaircase("last point must have a_2 <= 0".into()));
        }
        Ok(StaircaseInput { points: kept })
    }

    pub fn points(&self) -> &[LatticeVector] {
        &self.points
    }
}

/// `max_j (a^j_1 + a^{j-1}_2 - 2)`, clamped below at 0.
pub fn staircase_dspan_bound(s: &StaircaseInput) -> u64 {
    s.points.windows(2).map(|w| w[1].0[0] + w[0].0[1] - 2).max().unwrap_or(0).max(0) as u64
}

/// Staircase bound on `(H, H+E, E)` for the case where H and E form a basis.
pub fn basis_case_bound(h: &LatticeVector, e: &LatticeVector) -> Result<u64, GeomError> {
    let s = StaircaseInput::new(vec![h.clone(), h.add(e), e.clone()])?;
    Ok(staircase_dspan_bound(&s))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HrdMode {
    All,
    Excluded,
    Nonexcluded,
}

impl std::str::FromStr for HrdMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "all" => Ok(HrdMode::All),
            "excluded" => Ok(HrdMode::Excluded),
            "nonexcluded" => Ok(HrdMode::Nonexcluded),
            _ => Err(format!("unknown mode `{s}`")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HrdRow {
    pub n: u64,
    pub a: u64,
    pub b: u64,
    pub d: u64,
    pub excluded: bool,
    pub dspan: u64,
    pub bound_ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HeFailure {
    pub a: u64,
    pub b: u64,
    pub d: u64,
    pub he: HePoints,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SublatticeAnalysis {
    pub row: HrdRow,
    pub he: Option<HePoints>,
    /// Basis case only: staircase bound on `(H, H+E, E)`.
    pub staircase_bound: Option<u64>,
}

impl SublatticeAnalysis {
    pub fn he_ok(&self) -> bool {
        let stair_ok = self.staircase_bound.is_none_or(|s| s <= self.row.n / 2 && s >= self.row.dspan);
        self.he.as_ref().is_none_or(|h| h.checks.all()) && stair_ok
    }
}

/// `(a, b, d)` with `a d = n` and `0 <= b < d`: one row-echelon basis
/// `(a, b), (0, d)` per sublattice of index `n`.
pub fn sublattices_of_index(n: u64) -> Vec<(u64, u64, u64)> {
    let mut out = Vec::new();
    for a in 1..=n {
        if n.is_multiple_of(a) {
            let d = n / a;
            for b in 0..d {
                out.push((a, b, d));
            }
        }
    }
    out
}

pub fn sublattice(a: u64, b: u64, d: u64) -> LatticeBasis {
    let gens = [LatticeVector(vec![a as i64, b as i64]), LatticeVector(vec![0, d as i64])];
    LatticeBasis::from_generators(2, &gens).expect("triangular basis has full rank")
}

/// Contains `e_1`, `e_2` or `e_1 - e_2`.
pub fn is_excluded(l: &LatticeBasis) -> bool {
    l.contains_coords(&[1, 0]) || l.contains_coords(&[0, 1]) || l.contains_coords(&[1, -1])
}

pub fn analyze_sublattice(a: u64, b: u64, d: u64) -> Result<SublatticeAnalysis, GeomError> {
    let n = a * d;
    let l = sublattice(a, b, d);
    let excluded = is_excluded(&l);
    let ds = dspan(&l)?.value;
    let row = HrdRow { n, a, b, d, excluded, dspan: ds, bound_ok: ds <= n / 2 };
    if excluded {
        return Ok(SublatticeAnalysis { row, he: None, staircase_bound: None });
    }
    let he = he_analysis(&l)?;
    let staircase_bound = if he.forms_basis { Some(basis_case_bound(&he.h, &he.e)?) } else { None };
    Ok(SublatticeAnalysis { row, he: Some(he), staircase_bound })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HrdReport {
    pub n: u64,
    pub sublattices: usize,
    pub excluded: usize,
    pub max_dspan_nonexcluded: Option<u64>,
    pub rows: Vec<HrdRow>,
    pub violations: Vec<HrdRow>,
    pub he_failures: Vec<HeFailure>,
}

impl HrdReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.he_failures.is_empty()
    }

    /// Builds a report from analyses in canonical `(a, b, d)` order.
    pub fn from_analyses(n: u64, mode: HrdMode, analyses: Vec<SublatticeAnalysis>) -> HrdReport {
        let sublattices = analyses.len();
        let excluded = analyses.iter().filter(|x| x.row.excluded).count();
        let max_dspan_nonexcluded = analyses.iter().filter(|x| !x.row.excluded).map(|x| x.row.dspan).max();
        let violations =
            analyses.iter().filter(|x| !x.row.excluded && !x.row.bound_ok).map(|x| x.row.clone()).collect();
        let he_failures = analyses
            .iter()
            .filter(|x| !x.he_ok())
            .map(|x| HeFailure { a: x.row.a, b: x.row.b, d: x.row.d, he: x.he.clone().expect("non-excluded") })
            .collect();
        let rows = analyses
            .into_iter()
            .map(|x| x.row)
            .filter(|r| match mode {
                HrdMode::All => true,
                HrdMode::Excluded => r.excluded,
                HrdMode::Nonexcluded => !r.excluded,
            })
            .collect();
        HrdReport { n, sublattices, excluded, max_dspan_nonexcluded, rows, violations, he_failures }
    }
}

pub fn hrd_verify(n: u64, mode: HrdMode) -> Result<HrdReport, GeomError> {
    let analyses = sublattices_of_index(n)
        .into_iter()
        .map(|(a, b, d)| analyze_sublattice(a, b, d))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(HrdReport::from_analyses(n, mode, analyses))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlobViolation {
    pub witness: LatticeVector,
    pub point: LatticeVector,
}

/// No lattice point of positive weight and norm `<= 2n` lies below a
/// `D_span` witness.
pub fn blob_check(l: &LatticeBasis) -> Result<Option<BlobViolation>, GeomError> {
    let n = l.index_u64().ok_or(crate::error::LatticeError::Overflow)?;
    let report = dspan(l)?;
    let reps = report.representatives().expect("dspan witnesses");
    let pts: Vec<LatticeVector> =
        lattice_points_up_to(l, 2 * n, Orthant::All).into_iter().filter(|p| p.weight() > 0).collect();
    for w in reps.values() {
        if let Some(p) = pts.iter().find(|p| p.leq_componentwise(w)) {
            return Ok(Some(BlobViolation { witness: w.clone(), point: p.clone() }));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BiteCase {
    pub a: LatticeVector,
    pub b: LatticeVector,
    pub c: LatticeVector,
    pub holds: bool,
}

/// For `a` in `L` with positive weight and `b >= a`, `c = b - a` is
/// nonnegative, congruent to `b` and strictly lighter than `b`.
pub fn bite(l: &LatticeBasis, a: &LatticeVector, b: &LatticeVector) -> Result<BiteCase, GeomError> {
    if !l.contains(a)? || a.weight() <= 0 || !a.leq_componentwise(b) {
        return Err(GeomError::InvalidConstruction("need a in L, wt(a) > 0 and a <= b".into()));
    }
    let c = b.sub(a);
    let holds = c.is_nonnegative() && l.contains(&b.sub(&c))? && b.weight() > c.l1norm() as i64;
    Ok(BiteCase { a: a.clone(), b: b.clone(), c, holds })
}

/// Random instances of [`bite`] on random plane sublattices of index
/// `2..=nmax`, reproducible from `seed`.
pub fn bite_sweep(seed: u64, count: usize, nmax: u64) -> Result<Vec<BiteCase>, GeomError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.gen_range(2..=nmax.max(2));
        let subs = sublattices_of_index(n);
        let (a0, b0, d0) = subs[rng.gen_range(0..subs.len())];
        let l = sublattice(a0, b0, d0);
        let pts: Vec<LatticeVector> =
            lattice_points_up_to(&l, n, Orthant::All).into_iter().filter(|p| p.weight() > 0).collect();
        let a = &pts[rng.gen_range(0..pts.len())];
        let b = LatticeVector(a.0.iter().map(|&x| x + rng.gen_range(0..=n as i64)).collect());
        out.push(bite(&l, a, &b)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::CongruenceSystem;
    use proptest::prelude::*;

    fn cyc(n: u64, c: &[i64]) -> LatticeBasis {
        CongruenceSystem::cyclic(n, c.to_vec()).unwrap().lattice()
    }

    fn v(c: &[i64]) -> LatticeVector {
        LatticeVector(c.to_vec())
    }

    /// Oracle for H: among all lattice points in the box with a_1 <= 0 < a_2
    /// and positive weight, minimize (a_2, -a_1).
    fn h_oracle(l: &LatticeBasis) -> LatticeVector {
        let n = l.index_u64().unwrap() as i64;
        let mut best: Option<(i64, i64)> = None;
        for a1 in -n..=0 {
            for a2 in 1..=n {
                if a1 + a2 > 0 && l.contains_coords(&[a1, a2]) {
                    let key = (a2, -a1);
                    if best.is_none_or(|b| key < (b.1, -b.0)) {
                        best = Some((a1, a2));
                    }
                }
            }
        }
        let (a1, a2) = best.unwrap();
        v(&[a1, a2])
    }

    /// Divisor sum.
    fn sigma(n: u64) -> usize {
        (1..=n).filter(|d| n.is_multiple_of(*d)).map(|d| d as usize).sum()
    }

    #[test]
    fn he_examples() {
        let l = cyc(4, &[1, 3]);
        assert_eq!(find_h(&l).unwrap(), v(&[-1, 3]));
        assert_eq!(find_e(&l).unwrap(), v(&[3, -1]));

        let l = cyc(5, &[1, 4]);
        assert_eq!(find_h(&l).unwrap(), v(&[-2, 3]));
        assert_eq!(find_e(&l).unwrap(), v(&[3, -2]));

        let l = LatticeBasis::scaled_identity(2, 3);
        assert_eq!(find_h(&l).unwrap(), v(&[0, 3]));
        assert_eq!(find_e(&l).unwrap(), v(&[3, 0]));

        assert_eq!(find_h(&LatticeBasis::identity(3)), Err(GeomError::NotRankTwo(3)));
    }

    #[test]
    fn analysis_examples() {
        let he = he_analysis(&cyc(4, &[1, 3])).unwrap();
        assert!(!he.forms_basis);
        assert_eq!(he.det, 8);
        assert_eq!(he.segment, vec![v(&[-1, 3]), v(&[1, 1]), v(&[3, -1])]);
        assert_eq!(he.step, Some(2));
        assert!(he.checks.all());

        let he = he_analysis(&cyc(7, &[1, 2])).unwrap();
        assert_eq!((he.h.clone(), he.e.clone()), (v(&[-1, 4]), v(&[2, -1])));
        assert!(he.forms_basis);
        assert_eq!(he.det, 7);
        assert!(he.checks.all());

        let he = he_analysis(&LatticeBasis::scaled_identity(2, 4)).unwrap();
        assert!(he.forms_basis);
        assert_eq!(he.det, 16);
    }

    #[test]
    fn staircase_examples() {
        let s = StaircaseInput::new(vec![v(&[-1, 3]), v(&[1, 1]), v(&[3, -1])]).unwrap();
        assert_eq!(staircase_dspan_bound(&s), 2);
        let s = StaircaseInput::new(vec![v(&[-1, 2]), v(&[1, 0])]).unwrap();
        assert_eq!(staircase_dspan_bound(&s), 1);
        // unsorted input with a dominated point
        let s = StaircaseInput::new(vec![v(&[3, -1]), v(&[2, 2]), v(&[-1, 3]), v(&[1, 1])]).unwrap();
        assert_eq!(s.points(), &[v(&[-1, 3]), v(&[1, 1]), v(&[3, -1])]);
        assert!(StaircaseInput::new(vec![v(&[1, -1])]).is_err());
        assert!(StaircaseInput::new(vec![v(&[1, 2])]).is_err());
        assert!(StaircaseInput::new(vec![]).is_err());
    }

    #[test]
    fn basis_case_staircase() {
        let l = cyc(7, &[1, 2]);
        let he = he_analysis(&l).unwrap();
        assert!(he.forms_basis);
        let bound = basis_case_bound(&he.h, &he.e).unwrap();
        let exact = dspan(&l).unwrap().value;
        assert!(exact <= bound && bound <= 3, "exact {exact} bound {bound}");
    }

    #[test]
    fn hrd_small() {
        let r = hrd_verify(4, HrdMode::All).unwrap();
        assert_eq!(r.sublattices, 7);
        assert!(r.passed());
        assert!(r.rows.iter().filter(|x| !x.excluded).all(|x| x.dspan <= 2));

        let r = hrd_verify(1, HrdMode::All).unwrap();
        assert_eq!(r.sublattices, 1);
        assert_eq!(r.excluded, 1);
        assert_eq!(r.max_dspan_nonexcluded, None);

        let r = hrd_verify(6, HrdMode::Nonexcluded).unwrap();
        assert_eq!(r.sublattices, 12);
        assert!(r.passed());
        assert!(r.max_dspan_nonexcluded.unwrap() <= 3);
        assert!(r.rows.iter().all(|x| !x.excluded));
    }

    #[test]
    fn sublattice_counts() {
        for n in 1..=30 {
            let subs = sublattices_of_index(n);
            assert_eq!(subs.len(), sigma(n));
            let mut forms: Vec<_> = subs.iter().map(|&(a, b, d)| sublattice(a, b, d)).collect();
            forms.dedup();
            for (i, x) in forms.iter().enumerate() {
                assert_eq!(x.index_u64(), Some(n));
                assert!(forms[..i].iter().all(|y| y != x));
            }
        }
    }

    #[test]
    fn exclusion_matches_coefficients() {
        // single congruences: excluded exactly when a coefficient is 0 mod n or
        // the two agree mod n
        for n in 2..=12u64 {
            for a in 0..n as i64 {
                for b in 0..n as i64 {
                    let l = cyc(n, &[a, b]);
                    let expect = a == 0 || b == 0 || a == b;
                    assert_eq!(is_excluded(&l), expect, "n={n} a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn blob_and_bite() {
        for (n, c) in [(4, [1, 3]), (7, [1, 2]), (9, [2, 3])] {
            assert_eq!(blob_check(&cyc(n, &c)).unwrap(), None);
        }
        let l = cyc(4, &[1, 3]);
        let case = bite(&l, &v(&[1, 1]), &v(&[3, 1])).unwrap();
        assert_eq!(case.c, v(&[2, 0]));
        assert!(case.holds);
        assert!(bite(&l, &v(&[1, 0]), &v(&[3, 1])).is_err());
        assert!(bite_sweep(3, 50, 12).unwrap().iter().all(|c| c.holds));
        assert_eq!(bite_sweep(3, 5, 12).unwrap(), bite_sweep(3, 5, 12).unwrap());
    }

    proptest! {
        #[test]
        fn h_e_match_oracle(n in 2u64..25, a in 0i64..25, b in 0i64..25) {
            let l = cyc(n, &[a, b]);
            prop_assert_eq!(find_h(&l).unwrap(), h_oracle(&l));
            // E is H of the mirrored lattice
            let mirrored = cyc(n, &[b, a]);
            let e = find_e(&l).unwrap();
            prop_assert_eq!(v(&[e.0[1], e.0[0]]), h_oracle(&mirrored));
        }

        #[test]
        fn staircase_bound_dominates_dspan(n in 2u64..25, a in 1i64..25, b in 1i64..25) {
            let l = cyc(n, &[a, b]);
            prop_assume!(!is_excluded(&l));
            let he = he_analysis(&l).unwrap();
            prop_assert!(he.checks.all());
            let exact = dspan(&l).unwrap().value;
            let bound = if he.forms_basis {
                basis_case_bound(&he.h, &he.e).unwrap()
            } else {
                staircase_dspan_bound(&StaircaseInput::new(he.segment.clone()).unwrap())
            };
            prop_assert!(exact <= bound, "exact {} bound {}", exact, bound);
            prop_assert!(bound <= n / 2);
        }
    }
}
