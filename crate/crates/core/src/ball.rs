//! Integer points of the L1 ball, shell by shell, in lexicographic order.

use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::lattice::{LatticeBasis, LatticeVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orthant {
    All,
    Nonnegative,
}

/// Visits every point of `Z^m` with L1 norm exactly `d` in lexicographic
/// order (most significant coordinate first). Stops early on `Break`.
pub fn for_each_shell_point<F>(m: usize, d: u64, mode: Orthant, mut f: F) -> ControlFlow<()>
where
    F: FnMut(&[i64]) -> ControlFlow<()>,
{
    assert!(m >= 1, "dimension must be at least 1");
    let mut buf = vec![0i64; m];
    visit(&mut buf, 0, d as i64, mode, &mut f)
}

fn visit<F>(buf: &mut [i64], k: usize, r: i64, mode: Orthant, f: &mut F) -> ControlFlow<()>
where
    F: FnMut(&[i64]) -> ControlFlow<()>,
{
    let m = buf.len();
    if k == m - 1 {
        if r == 0 || mode == Orthant::Nonnegative {
            buf[k] = r;
            return f(buf);
        }
        buf[k] = -r;
        f(buf)?;
        buf[k] = r;
        return f(buf);
    }
    let lo = match mode {
        Orthant::All => -r,
        Orthant::Nonnegative => 0,
    };
    for x in lo..=r {
        buf[k] = x;
        visit(buf, k + 1, r - x.abs(), mode, f)?;
    }
    buf[k] = 0;
    ControlFlow::Continue(())
}

/// All points of norm exactly `d`, lexicographically ordered.
pub fn shell_points(m: usize, d: u64, mode: Orthant) -> Vec<LatticeVector> {
    let mut out = Vec::new();
    let _ = for_each_shell_point(m, d, mode, |p| {
        out.push(LatticeVector(p.to_vec()));
        ControlFlow::Continue(())
    });
    out
}

/// Number of integer points with L1 norm exactly `d` in `Z^m` (all orthants):
/// `sum_k 2^k C(m,k) C(d-1,k-1)` for `d >= 1`.
pub fn cross_polytope_shell_count(m: u64, d: u64) -> u128 {
    if d == 0 {
        return 1;
    }
    (1..=m.min(d)).map(|k| (1u128 << k) * binomial(m, k) * binomial(d - 1, k - 1)).sum()
}

fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Shells `0, 1, 2, ...` of a fixed dimension and orthant.
#[derive(Clone, Debug)]
pub struct ShellIterator {
    dim: usize,
    radius: u64,
    mode: Orthant,
}

impl ShellIterator {
    pub fn new(dim: usize, mode: Orthant) -> Self {
        ShellIterator { dim, radius: 0, mode }
    }

    pub fn radius(&self) -> u64 {
        self.radius
    }
}

impl Iterator for ShellIterator {
    type Item = (u64, Vec<LatticeVector>);

    fn next(&mut self) -> Option<Self::Item> {
        let d = self.radius;
        self.radius += 1;
        Some((d, shell_points(self.dim, d, self.mode)))
    }
}

/// Points of `L` in the requested orthant with norm at most `d`, ordered by
/// norm and then lexicographically.
pub fn lattice_points_up_to(l: &LatticeBasis, d: u64, mode: Orthant) -> Vec<LatticeVector> {
    let m = l.dimension();
    let mut out = Vec::new();
    for r in 0..=d {
        let _ = for_each_shell_point(m, r, mode, |p| {
            if l.contains_coords(p) {
                out.push(LatticeVector(p.to_vec()));
            }
            ControlFlow::Continue(())
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::CongruenceSystem;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    fn v(c: &[i64]) -> LatticeVector {
        LatticeVector(c.to_vec())
    }

    /// Oracle: scan the box [-d, d]^m.
    fn box_scan(m: usize, d: i64, mode: Orthant) -> Vec<Vec<i64>> {
        let lo = if mode == Orthant::All { -d } else { 0 };
        let mut out = Vec::new();
        let mut p = vec![lo; m];
        loop {
            if p.iter().map(|x| x.abs()).sum::<i64>() == d {
                out.push(p.clone());
            }
            let mut k = m;
            loop {
                if k == 0 {
                    out.sort();
                    return out;
                }
                k -= 1;
                p[k] += 1;
                if p[k] <= d {
                    break;
                }
                p[k] = lo;
            }
        }
    }

    #[test]
    fn small_shells() {
        assert_eq!(shell_points(2, 1, Orthant::All), vec![v(&[-1, 0]), v(&[0, -1]), v(&[0, 1]), v(&[1, 0])]);
        assert_eq!(shell_points(2, 0, Orthant::All), vec![v(&[0, 0])]);
        assert_eq!(shell_points(2, 0, Orthant::Nonnegative), vec![v(&[0, 0])]);
        assert_eq!(shell_points(2, 2, Orthant::Nonnegative), vec![v(&[0, 2]), v(&[1, 1]), v(&[2, 0])]);
    }

    #[test]
    fn counts_match_box_scan() {
        for m in 1..=4usize {
            for d in 0..=10i64 {
                for mode in [Orthant::All, Orthant::Nonnegative] {
                    let got: Vec<Vec<i64>> = shell_points(m, d as u64, mode).into_iter().map(|p| p.0).collect();
                    assert_eq!(got, box_scan(m, d, mode), "m={m} d={d} {mode:?}");
                }
                assert_eq!(
                    shell_points(m, d as u64, Orthant::All).len() as u128,
                    cross_polytope_shell_count(m as u64, d as u64)
                );
            }
        }
    }

    #[test]
    fn lattice_points() {
        let l = CongruenceSystem::cyclic(5, vec![1, 4]).unwrap().lattice();
        assert_eq!(lattice_points_up_to(&l, 2, Orthant::All), vec![v(&[0, 0]), v(&[-1, -1]), v(&[1, 1])]);
        assert_eq!(lattice_points_up_to(&l, 0, Orthant::All), vec![v(&[0, 0])]);
        let l = CongruenceSystem::cyclic(4, vec![1, 3]).unwrap().lattice();
        assert_eq!(lattice_points_up_to(&l, 2, Orthant::Nonnegative), vec![v(&[0, 0]), v(&[1, 1])]);
    }

    #[test]
    fn shell_iterator_increasing() {
        let radii: Vec<u64> = ShellIterator::new(3, Orthant::All).take(4).map(|(d, _)| d).collect();
        assert_eq!(radii, vec![0, 1, 2, 3]);
    }

    proptest! {
        #[test]
        fn shells_disjoint_and_complete(m in 1usize..4, d in 0u64..7) {
            let mut seen = BTreeSet::new();
            for r in 0..=d {
                for p in shell_points(m, r, Orthant::All) {
                    prop_assert_eq!(p.l1norm(), r);
                    prop_assert!(seen.insert(p));
                }
            }
            let expected: u128 = (0..=d).map(|r| cross_polytope_shell_count(m as u64, r)).sum();
            prop_assert_eq!(seen.len() as u128, expected);
        }

        #[test]
        fn lattice_points_monotone(n in 2u64..12, a in 0i64..12, b in 0i64..12, d in 0u64..6) {
            let l = CongruenceSystem::cyclic(n, vec![a, b]).unwrap().lattice();
            let small = lattice_points_up_to(&l, d, Orthant::All);
            let big = lattice_points_up_to(&l, d + 1, Orthant::All);
            prop_assert_eq!(&big[..small.len()], &small[..]);
            for p in &big {
                prop_assert!(l.contains(p).unwrap());
            }
        }
    }
}
