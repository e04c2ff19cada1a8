//! Successive minima of the L1 ball, short bases and related constructions.

use std::ops::ControlFlow;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::ball::{for_each_shell_point, Orthant};
use crate::error::{GeomError, LatticeError};
use crate::hnf::Echelon;
use crate::lattice::{LatticeBasis, LatticeVector};
use crate::linalg::{det_columns, solve_in_span, to_big, SpanTracker};

pub(crate) fn rat_to_json<S: Serializer>(x: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(x)
}

fn rats_to_json<S: Serializer>(xs: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(|x| x.to_string()))
}

fn rat(x: BigInt) -> BigRational {
    BigRational::from_integer(x)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuccessiveMinima {
    pub lambdas: Vec<u64>,
    pub witnesses: Vec<LatticeVector>,
}

/// Exact successive minima by scanning shells and keeping each point that
/// raises the rank. Only points whose first nonzero coordinate is positive
/// are considered.
pub fn successive_minima(l: &LatticeBasis) -> SuccessiveMinima {
    let m = l.dimension();
    let mut span = SpanTracker::new();
    let mut lambdas = Vec::with_capacity(m);
    let mut witnesses = Vec::with_capacity(m);
    let mut d = 0u64;
    while lambdas.len() < m {
        d += 1;
        let _ = for_each_shell_point(m, d, Orthant::All, |p| {
            if p.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) || !l.contains_coords(p) {
                return ControlFlow::Continue(());
            }
            if span.insert(&to_big(p)) {
                lambdas.push(d);
                witnesses.push(LatticeVector(p.to_vec()));
                if lambdas.len() == m {
                    return ControlFlow::Break(());
                }
            }
            ControlFlow::Continue(())
        });
    }
    SuccessiveMinima { lambdas, witnesses }
}

fn factorial(m: usize) -> BigInt {
    (1..=m).fold(BigInt::one(), |acc, k| acc * k)
}

/// `lambda_1 ... lambda_m <= m! [Z^m : L]`.
pub fn minkowski_check(l: &LatticeBasis, sm: &SuccessiveMinima) -> bool {
    let prod: BigInt = sm.lambdas.iter().fold(BigInt::one(), |acc, &x| acc * x);
    prod <= factorial(l.dimension()) * l.index()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MahlerBasis {
    pub basis: Vec<LatticeVector>,
    pub norms: Vec<u64>,
    pub minima: SuccessiveMinima,
}

impl MahlerBasis {
    /// Whether `||b_i||_1 <= i * lambda_i` for every `i` (1-based).
    pub fn satisfies_norm_bound(&self) -> bool {
        self.norms.iter().zip(&self.minima.lambdas).enumerate().all(|(i, (&n, &lam))| n <= (i as u64 + 1) * lam)
    }
}

/// A basis `b_1..b_m` of `L` with `b_i` in the span of the first `i` minima
/// witnesses and `||b_i||_1 <= ((i-1)/2 + 1) lambda_i`. The determinant is
/// made positive by flipping the sign of `b_m`.
pub fn mahler_basis(l: &LatticeBasis) -> Result<MahlerBasis, GeomError> {
    let m = l.dimension();
    let minima = successive_minima(l);
    let v: Vec<Vec<BigInt>> = minima.witnesses.iter().map(|w| w.to_big()).collect();
    let dv = det_columns(&v);

    // Coordinates of L in the witness basis, scaled by det(V) to be integral.
    let mut coords = Vec::with_capacity(m);
    for col in l.columns() {
        let rhs: Vec<BigRational> = col.iter().map(|x| rat(x * &dv)).collect();
        let t = solve_in_span(&v, &rhs).ok_or(GeomError::DependentInput)?;
        let t: Vec<BigInt> = t.into_iter().map(|x| x.to_integer()).collect();
        coords.push(t);
    }
    // Upper-triangular basis: Hermite form with the coordinate order reversed.
    let reversed = coords.into_iter().map(|mut c| {
        c.reverse();
        c
    });
    let ech = Echelon::from_generators(m, reversed);
    let mut tri: Vec<Vec<BigInt>> = ech.columns().iter().map(|c| c.iter().rev().cloned().collect()).collect();
    tri.reverse();

    let mut basis = Vec::with_capacity(m);
    for (i, col) in tri.iter().enumerate() {
        let mut t: Vec<BigRational> = col.iter().map(|x| BigRational::new(x.clone(), dv.clone())).collect();
        if t[i].is_negative() {
            t.iter_mut().for_each(|x| *x = -&*x);
        }
        for tj in t.iter_mut().take(i) {
            // shift into (-1/2, 1/2]
            let half = BigRational::new(BigInt::one(), BigInt::from(2));
            let k = (&*tj - &half).ceil();
            *tj -= k;
        }
        let mut b = vec![BigRational::zero(); m];
        for (tj, vj) in t.iter().zip(&v) {
            for (x, y) in b.iter_mut().zip(vj) {
                *x += tj * rat(y.clone());
            }
        }
        let b: Vec<BigInt> = b
            .into_iter()
            .map(|x| {
                debug_assert!(x.is_integer());
                x.to_integer()
            })
            .collect();
        basis.push(LatticeVector::try_from_big(&b)?);
    }
    let big: Vec<Vec<BigInt>> = basis.iter().map(|b| b.to_big()).collect();
    if det_columns(&big).is_negative() {
        let last = basis.pop().expect("nonempty basis");
        basis.push(last.neg());
    }
    let norms = basis.iter().map(|b| b.l1norm()).collect();
    Ok(MahlerBasis { basis, norms, minima })
}

/// Coefficients `D` with `D . w = det(b_1, ..., b_{m-1}, w)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeterminantForm {
    pub coeffs: Vec<i64>,
    pub source: Vec<LatticeVector>,
}

impl DeterminantForm {
    pub fn apply(&self, w: &[i64]) -> BigInt {
        self.coeffs.iter().zip(w).map(|(&d, &x)| BigInt::from(d) * x).sum()
    }

    fn apply_big(&self, w: &[BigInt]) -> BigInt {
        self.coeffs.iter().zip(w).map(|(&d, x)| BigInt::from(d) * x).sum()
    }
}

pub fn determinant_form(b: &[LatticeVector]) -> Result<DeterminantForm, GeomError> {
    let m = b.len() + 1;
    if let Some(bad) = b.iter().find(|v| v.dim() != m) {
        return Err(LatticeError::DimensionMismatch { expected: m, got: bad.dim() }.into());
    }
    let mut cols: Vec<Vec<BigInt>> = b.iter().map(|v| v.to_big()).collect();
    let mut coeffs = Vec::with_capacity(m);
    for j in 0..m {
        cols.push(to_big(LatticeVector::unit(m, j).coords()));
        let d = det_columns(&cols);
        cols.pop();
        coeffs.push(d.to_i64().ok_or(LatticeError::Overflow)?);
    }
    if coeffs.iter().all(|&d| d == 0) {
        return Err(GeomError::DependentInput);
    }
    Ok(DeterminantForm { coeffs, source: b.to_vec() })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Completion {
    pub bstar: LatticeVector,
    pub dstar: i64,
    /// 0-based coordinate of `dstar`.
    pub dstar_coord: usize,
    #[serde(serialize_with = "rat_to_json")]
    pub norm_bound: BigRational,
    pub form: DeterminantForm,
    /// Every `D_j` is divisible by the index.
    pub all_coeffs_divisible: bool,
}

/// Extends `m-1` independent lattice vectors to a basis of `L` with a short
/// last vector.
pub fn complete_basis_short(l: &LatticeBasis, b: &[LatticeVector]) -> Result<Completion, GeomError> {
    let m = l.dimension();
    if b.len() + 1 != m {
        return Err(LatticeError::DimensionMismatch { expected: m - 1, got: b.len() }.into());
    }
    for v in b {
        if !l.contains(v)? {
            return Err(GeomError::NoSolution);
        }
    }
    let form = determinant_form(b)?;
    let index = l.index();
    let (jstar, &dstar) = form
        .coeffs
        .iter()
        .enumerate()
        .max_by(|(i, x), (j, y)| x.unsigned_abs().cmp(&y.unsigned_abs()).then(j.cmp(i)))
        .expect("nonempty form");

    let mut u = vec![BigRational::zero(); m];
    u[jstar] = BigRational::new(index.clone(), BigInt::from(dstar));

    // c in L with D . c = index, from an extended gcd over the basis images.
    let cols = l.columns();
    let mut g = BigInt::zero();
    let mut x: Vec<BigInt> = Vec::with_capacity(cols.len());
    for col in cols {
        let gk = form.apply_big(col);
        let e = g.extended_gcd(&gk);
        let (mut s, mut t, mut ng) = (e.x, e.y, e.gcd);
        if ng.is_negative() {
            ng = -ng;
            s = -s;
            t = -t;
        }
        x.iter_mut().for_each(|xi| *xi = &*xi * &s);
        x.push(t);
        g = ng;
    }
    if g.is_zero() || !index.is_multiple_of(&g) {
        return Err(GeomError::NoSolution);
    }
    let scale = &index / &g;
    let mut c = vec![BigInt::zero(); m];
    for (xk, col) in x.iter().zip(cols) {
        for (ci, yi) in c.iter_mut().zip(col) {
            *ci += &scale * xk * yi;
        }
    }
    debug_assert_eq!(form.apply_big(&c), index);

    let rhs: Vec<BigRational> = u.iter().zip(&c).map(|(ui, ci)| ui - rat(ci.clone())).collect();
    let bbig: Vec<Vec<BigInt>> = b.iter().map(|v| v.to_big()).collect();
    let t = solve_in_span(&bbig, &rhs).ok_or(GeomError::NoSolution)?;
    let mut bstar = c;
    for (ti, bi) in t.iter().zip(&bbig) {
        let f = ti.floor().to_integer();
        for (x, y) in bstar.iter_mut().zip(bi) {
            *x += &f * y;
        }
    }
    let bstar = LatticeVector::try_from_big(&bstar)?;
    let sum_b: u64 = b.iter().map(|v| v.l1norm()).sum();
    let norm_bound = BigRational::new(index.clone(), BigInt::from(dstar.unsigned_abs())) + rat(BigInt::from(sum_b));
    let all_coeffs_divisible = form.coeffs.iter().all(|&d| BigInt::from(d).is_multiple_of(&index));
    Ok(Completion { bstar, dstar, dstar_coord: jstar, norm_bound, form, all_coeffs_divisible })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenDegBasis {
    pub basis: Vec<LatticeVector>,
    pub norms: Vec<u64>,
    pub max_norm: u64,
    /// `ceil(index / ceil(m/2))`.
    pub target: u64,
    pub within_target: bool,
    pub completion: Completion,
}

pub fn ceil_div(a: u64, b: u64) -> u64 {
    a.div_ceil(b)
}

/// First `m-1` Mahler vectors completed by [`complete_basis_short`], with
/// `det = +index`.
pub fn gen_deg_basis(l: &LatticeBasis) -> Result<GenDegBasis, GeomError> {
    let m = l.dimension();
    let index = l.index_u64().ok_or(LatticeError::Overflow)?;
    let mahler = mahler_basis(l)?;
    let head = &mahler.basis[..m - 1];
    let completion = complete_basis_short(l, head)?;
    let mut basis = head.to_vec();
    basis.push(completion.bstar.clone());
    let big: Vec<Vec<BigInt>> = basis.iter().map(|b| b.to_big()).collect();
    if det_columns(&big).is_negative() {
        let last = basis.pop().expect("nonempty basis");
        basis.push(last.neg());
    }
    let norms: Vec<u64> = basis.iter().map(|b| b.l1norm()).collect();
    let max_norm = norms.iter().copied().max().unwrap_or(0);
    let target = ceil_div(index, ceil_div(m as u64, 2));
    Ok(GenDegBasis { basis, norms, max_norm, target, within_target: max_norm <= target, completion })
}

/// Smallest `y` with `(y / 10^6)^k >= num / den`.
fn root_upper(num: &BigInt, den: &BigInt, k: u32) -> BigInt {
    let scale = BigInt::from(10u32).pow(6 * k);
    let target = num * &scale;
    let ok = |y: &BigInt| y.pow(k) * den >= target;
    let mut lo = BigInt::zero();
    let mut hi = (num / den + 2u32) * BigInt::from(1_000_000u32);
    while lo < hi {
        let mid: BigInt = (&lo + &hi) >> 1;
        if ok(&mid) {
            hi = mid;
        } else {
            lo = mid + 1u32;
        }
    }
    lo
}

/// Rational upper enclosures (denominator `10^6`, times `i`) of the norm
/// bounds for `b_1..b_{m-1}` on a prime-index lattice of dimension `m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinimaBounds {
    #[serde(serialize_with = "rats_to_json")]
    pub bounds: Vec<BigRational>,
}

pub fn effective_minima_bounds(m: usize, p: u64) -> MinimaBounds {
    assert!(m >= 2 && p >= 2, "need m >= 2 and p >= 2");
    let half = m / 2;
    let top = factorial(m) * p;
    let mut bounds = Vec::with_capacity(m - 1);
    for i in 1..m {
        let den = if i <= half {
            BigInt::from(2u32).pow(i as u32 - 1)
        } else {
            BigInt::from(2u32).pow(half as u32) * BigInt::from(3u32).pow((i - 1 - half) as u32)
        };
        let k = (m - i + 1) as u32;
        let y = root_upper(&top, &den, k);
        bounds.push(BigRational::new(y * i, BigInt::from(1_000_000u32)));
    }
    MinimaBounds { bounds }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualPairLift {
    pub lifted: Vec<LatticeVector>,
    pub pair_vectors: Vec<LatticeVector>,
}

impl DualPairLift {
    pub fn all(&self) -> Vec<LatticeVector> {
        self.lifted.iter().chain(&self.pair_vectors).cloned().collect()
    }

    pub fn max_norm(&self) -> u64 {
        self.lifted.iter().chain(&self.pair_vectors).map(|v| v.l1norm()).max().unwrap_or(0)
    }
}

/// Moves every vector of `s` into the nonnegative orthant by adding
/// multiples of `e_i + e_j` for each pair. Indices are 0-based.
pub fn dual_pair_lift(
    l: &LatticeBasis,
    pairs: &[(usize, usize)],
    s: &[LatticeVector],
) -> Result<DualPairLift, GeomError> {
    let m = l.dimension();
    let mut seen = vec![false; m];
    for &(i, j) in pairs {
        if i == j || i >= m || j >= m || seen[i] || seen[j] {
            return Err(GeomError::PairsNotAPartition);
        }
        seen[i] = true;
        seen[j] = true;
    }
    if seen.iter().any(|&x| !x) {
        return Err(GeomError::PairsNotAPartition);
    }
    let mut pair_vectors = Vec::with_capacity(pairs.len());
    for &(i, j) in pairs {
        let u = LatticeVector::unit(m, i).add(&LatticeVector::unit(m, j));
        if !l.contains(&u)? {
            return Err(GeomError::PairNotInLattice(i, j));
        }
        pair_vectors.push(u);
    }
    if !l.is_generating(s) {
        return Err(LatticeError::InvalidBasis("input set does not generate the lattice".into()).into());
    }
    let lifted = s
        .iter()
        .map(|a| {
            let mut out = a.0.clone();
            for &(i, j) in pairs {
                let c = -a.0[i].min(a.0[j]).min(0);
                out[i] += c;
                out[j] += c;
            }
            LatticeVector(out)
        })
        .collect();
    Ok(DualPairLift { lifted, pair_vectors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ball::lattice_points_up_to;
    use crate::bounds::bfieldr;
    use crate::lattice::CongruenceSystem;
    use proptest::prelude::*;

    fn cyc(n: u64, c: &[i64]) -> LatticeBasis {
        CongruenceSystem::cyclic(n, c.to_vec()).unwrap().lattice()
    }

    fn v(c: &[i64]) -> LatticeVector {
        LatticeVector(c.to_vec())
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn det_of(vs: &[LatticeVector]) -> BigInt {
        det_columns(&vs.iter().map(|x| x.to_big()).collect::<Vec<_>>())
    }

    /// Oracle: lambda_i as the least r where all lattice points of norm <= r
    /// span rank >= i, recomputed from scratch for each r.
    fn minima_oracle(l: &LatticeBasis) -> Vec<u64> {
        let m = l.dimension();
        let mut out = Vec::new();
        let mut r = 0;
        while out.len() < m {
            r += 1;
            let mut span = SpanTracker::new();
            for p in lattice_points_up_to(l, r, Orthant::All) {
                span.insert(&p.to_big());
            }
            while out.len() < span.rank() {
                out.push(r);
            }
        }
        out
    }

    #[test]
    fn minima_examples() {
        let sm = successive_minima(&cyc(5, &[1, 4]));
        assert_eq!(sm.lambdas, vec![2, 5]);
        assert_eq!(sm.witnesses, vec![v(&[1, 1]), v(&[0, 5])]);
        assert_eq!(successive_minima(&LatticeBasis::identity(3)).lambdas, vec![1, 1, 1]);
        let sm = successive_minima(&cyc(4, &[1, 3]));
        assert_eq!(sm.lambdas, vec![2, 4]);
        assert_eq!(sm.witnesses[0], v(&[1, 1]));
        assert_eq!(successive_minima(&cyc(7, &[1, 2])).lambdas, vec![3, 4]);
    }

    #[test]
    fn minkowski_examples() {
        let l = cyc(5, &[1, 4]);
        assert!(minkowski_check(&l, &successive_minima(&l)));
        let id = LatticeBasis::identity(2);
        assert!(minkowski_check(&id, &successive_minima(&id)));
        let fake = SuccessiveMinima { lambdas: vec![3, 4], witnesses: vec![] };
        assert!(!minkowski_check(&l, &fake));
    }

    #[test]
    fn mahler_examples() {
        let l = cyc(5, &[1, 4]);
        let mb = mahler_basis(&l).unwrap();
        assert_eq!(mb.basis[0], v(&[1, 1]));
        assert!(mb.norms[1] <= 10);
        assert_eq!(det_of(&mb.basis), BigInt::from(5));
        assert!(l.is_generating(&mb.basis));

        let id = mahler_basis(&LatticeBasis::identity(3)).unwrap();
        // unit vectors, in shell order, with the last one flipped for det = +1
        assert_eq!(id.basis, vec![v(&[0, 0, 1]), v(&[0, 1, 0]), v(&[-1, 0, 0])]);
        assert_eq!(det_of(&id.basis), BigInt::one());

        let mb = mahler_basis(&cyc(7, &[1, 2])).unwrap();
        assert_eq!(mb.basis[0], v(&[2, -1]));
        assert_eq!(mb.norms[0], 3);
    }

    #[test]
    fn determinant_form_examples() {
        assert_eq!(determinant_form(&[v(&[1, 1])]).unwrap().coeffs, vec![-1, 1]);
        assert_eq!(determinant_form(&[v(&[2, -1])]).unwrap().coeffs, vec![1, 2]);
        assert_eq!(determinant_form(&[v(&[1, 0, 0]), v(&[0, 1, 0])]).unwrap().coeffs, vec![0, 0, 1]);
        assert_eq!(determinant_form(&[v(&[1, 2, 0]), v(&[2, 4, 0])]), Err(GeomError::DependentInput));
        assert_eq!(determinant_form(&[]).unwrap().coeffs, vec![1]);
    }

    #[test]
    fn completion_examples() {
        let c = complete_basis_short(&cyc(7, &[1, 2]), &[v(&[2, -1])]).unwrap();
        assert_eq!(c.form.coeffs, vec![1, 2]);
        assert_eq!((c.dstar, c.dstar_coord), (2, 1));
        assert_eq!(c.bstar, v(&[-1, 4]));
        assert_eq!(det_of(&[v(&[2, -1]), c.bstar.clone()]), BigInt::from(7));
        assert_eq!(c.norm_bound, q(13, 2));

        let c = complete_basis_short(&cyc(7, &[1, 6]), &[v(&[1, 1])]).unwrap();
        assert_eq!((c.dstar, c.dstar_coord), (-1, 0));
        assert_eq!(c.bstar, v(&[-7, 0]));
        assert_eq!(c.norm_bound, q(9, 1));

        let c = complete_basis_short(&LatticeBasis::identity(2), &[v(&[1, 0])]).unwrap();
        assert_eq!(c.bstar, v(&[0, 1]));
        assert_eq!(c.norm_bound, q(2, 1));

        assert_eq!(complete_basis_short(&cyc(7, &[1, 2]), &[v(&[1, 0])]), Err(GeomError::NoSolution));
    }

    #[test]
    fn divisible_coefficients_flagged() {
        // b_1 = (7,0) gives D = (0,7) with index 7
        let c = complete_basis_short(&cyc(7, &[1, 2]), &[v(&[7, 0])]);
        match c {
            Ok(c) => assert!(c.all_coeffs_divisible),
            Err(e) => assert_eq!(e, GeomError::NoSolution),
        }
    }

    #[test]
    fn gen_deg_examples() {
        let g = gen_deg_basis(&cyc(5, &[1, 4])).unwrap();
        assert_eq!(g.max_norm, 5);
        assert_eq!(g.target, 5);
        assert!(g.within_target);

        let g = gen_deg_basis(&cyc(7, &[1, 2])).unwrap();
        assert_eq!(g.basis, vec![v(&[2, -1]), v(&[-1, 4])]);
        assert_eq!((g.max_norm, g.target), (5, 7));

        let l = cyc(7, &[1, 2, 4]);
        let g = gen_deg_basis(&l).unwrap();
        assert_eq!(g.target, 4);
        assert!(l.is_generating(&g.basis));
        assert_eq!(det_of(&g.basis), BigInt::from(7));
        assert!(g.max_norm >= bfieldr(&l).unwrap().value);
    }

    #[test]
    fn one_dimensional() {
        let l = CongruenceSystem::cyclic(6, vec![1]).unwrap().lattice();
        let g = gen_deg_basis(&l).unwrap();
        assert_eq!(g.basis, vec![v(&[6])]);
    }

    #[test]
    fn effective_bounds_examples() {
        let b = effective_minima_bounds(2, 5).bounds;
        assert_eq!(b.len(), 1);
        // sqrt(10) = 3.16227766...
        assert_eq!(b[0], q(3_162_278, 1_000_000));
        assert!(b[0] >= q(2, 1));
        let b = effective_minima_bounds(3, 11).bounds;
        // 66^(1/3) = 4.04124..., 2*sqrt(33) = 2*5.744562...
        assert_eq!(b[0], q(4_041_241, 1_000_000));
        assert_eq!(b[1], q(2 * 5_744_563, 1_000_000));
        assert_eq!(effective_minima_bounds(2, 2).bounds, vec![q(2, 1)]);
    }

    #[test]
    fn effective_bounds_are_enclosures() {
        for m in 2..=5usize {
            for p in [2u64, 3, 7, 31, 101] {
                let half = m / 2;
                for (idx, b) in effective_minima_bounds(m, p).bounds.iter().enumerate() {
                    let i = idx + 1;
                    let k = (m - i + 1) as u32;
                    let den = if i <= half {
                        BigInt::from(2).pow(i as u32 - 1)
                    } else {
                        BigInt::from(2).pow(half as u32) * BigInt::from(3).pow((i - 1 - half) as u32)
                    };
                    let x = BigRational::new(factorial(m) * p, den);
                    let r = b / BigRational::from_integer(BigInt::from(i));
                    let below = &r - q(1, 1_000_000);
                    assert!(r.pow(k as i32) >= x);
                    assert!(below.pow(k as i32) < x);
                }
            }
        }
    }

    #[test]
    fn dual_pair_examples() {
        let l = cyc(5, &[1, 4]);
        let s = vec![v(&[2, -3]), v(&[1, 1])];
        let out = dual_pair_lift(&l, &[(0, 1)], &s).unwrap();
        assert_eq!(out.lifted, vec![v(&[5, 0]), v(&[1, 1])]);
        assert_eq!(out.pair_vectors, vec![v(&[1, 1])]);
        assert!(l.is_generating(&out.all()));

        let l4 = cyc(5, &[1, 2, 3, 4]);
        let g = gen_deg_basis(&l4).unwrap();
        let out = dual_pair_lift(&l4, &[(0, 3), (1, 2)], &g.basis).unwrap();
        assert!(out.all().iter().all(|x| x.is_nonnegative()));
        assert!(l4.is_generating(&out.all()));
        assert!(out.max_norm() <= g.max_norm.max(2));

        assert_eq!(dual_pair_lift(&l4, &[(0, 1), (2, 3)], &g.basis), Err(GeomError::PairNotInLattice(0, 1)));
        assert_eq!(dual_pair_lift(&l4, &[(0, 3)], &g.basis), Err(GeomError::PairsNotAPartition));
        assert_eq!(dual_pair_lift(&l4, &[(0, 3), (3, 2)], &g.basis), Err(GeomError::PairsNotAPartition));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(80))]

        #[test]
        fn minima_match_oracle(n in 2u64..31, c in prop::collection::vec(0i64..31, 2..=3)) {
            let l = CongruenceSystem::cyclic(n, c).unwrap().lattice();
            let sm = successive_minima(&l);
            prop_assert_eq!(&sm.lambdas, &minima_oracle(&l));
            for (w, &lam) in sm.witnesses.iter().zip(&sm.lambdas) {
                prop_assert!(l.contains(w).unwrap());
                prop_assert_eq!(w.l1norm(), lam);
            }
            prop_assert!(minkowski_check(&l, &sm));
        }

        #[test]
        fn mahler_properties(n in 2u64..40, c in prop::collection::vec(0i64..40, 2..=4)) {
            let l = CongruenceSystem::cyclic(n, c).unwrap().lattice();
            let mb = mahler_basis(&l).unwrap();
            prop_assert!(mb.satisfies_norm_bound());
            prop_assert_eq!(det_of(&mb.basis), l.index());
            prop_assert!(l.is_generating(&mb.basis));
        }

        #[test]
        fn completion_properties(n in 2u64..40, c in prop::collection::vec(0i64..40, 2..=4)) {
            let l = CongruenceSystem::cyclic(n, c).unwrap().lattice();
            let m = l.dimension();
            let mb = mahler_basis(&l).unwrap();
            let comp = complete_basis_short(&l, &mb.basis[..m - 1]).unwrap();
            prop_assert_eq!(comp.form.apply(comp.bstar.coords()), l.index());
            let mut all = mb.basis[..m - 1].to_vec();
            all.push(comp.bstar.clone());
            prop_assert_eq!(det_of(&all).abs(), l.index());
            prop_assert!(rat(BigInt::from(comp.bstar.l1norm())) <= comp.norm_bound);
        }

        #[test]
        fn form_matches_determinant(
            rows in prop::collection::vec(prop::collection::vec(-9i64..10, 3), 2),
            ws in prop::collection::vec(prop::collection::vec(-50i64..50, 3), 100),
        ) {
            let b: Vec<LatticeVector> = rows.into_iter().map(LatticeVector).collect();
            if let Ok(f) = determinant_form(&b) {
                for w in ws {
                    let mut all = b.clone();
                    all.push(LatticeVector(w.clone()));
                    prop_assert_eq!(f.apply(&w), det_of(&all));
                }
                for bi in &b {
                    prop_assert!(f.apply(bi.coords()).is_zero());
                }
            }
        }

        #[test]
        fn lift_properties(p in prop::sample::select(vec![5u64, 7, 11, 13]), k in 1i64..5, s in prop::collection::vec(prop::collection::vec(-8i64..9, 2), 1..4)) {
            let k = k % (p as i64 - 1) + 1;
            let l = cyc(p, &[1, p as i64 - 1, k, p as i64 - k]);
            let g = gen_deg_basis(&l).unwrap();
            let mut gens = g.basis.clone();
            // add extra lattice vectors built from the basis
            for coeffs in &s {
                gens.push(g.basis[0].scale(coeffs[0]).add(&g.basis[1].scale(coeffs[1])));
            }
            let out = dual_pair_lift(&l, &[(0, 1), (2, 3)], &gens).unwrap();
            prop_assert!(out.all().iter().all(|x| x.is_nonnegative()));
            prop_assert!(l.is_generating(&out.all()));
            for (a, b) in gens.iter().zip(&out.lifted) {
                prop_assert!(b.l1norm() <= a.l1norm());
            }
        }
    }
}
