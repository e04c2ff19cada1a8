//! Column-style Hermite normal form for integer lattices given by generators.
//!
//! The echelon form keeps one column per pivot. Column `k` is zero above its
//! pivot row, has a positive pivot, and every earlier column has its entry in
//! that pivot row reduced into `[0, pivot)`. For a full-rank lattice this is
//! the usual lower-triangular HNF and it is unique, so lattices compare equal
//! exactly when their echelon forms do.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Echelon {
    dim: usize,
    cols: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
    small: Option<Vec<Vec<i64>>>,
}

impl Echelon {
    pub(crate) fn from_generators<I>(dim: usize, gens: I) -> Echelon
    where
        I: IntoIterator<Item = Vec<BigInt>>,
    {
        let mut rest: Vec<Vec<BigInt>> = gens
            .into_iter()
            .inspect(|g| assert_eq!(g.len(), dim, "generator length"))
            .filter(|g| g.iter().any(|x| !x.is_zero()))
            .collect();
        let mut cols: Vec<Vec<BigInt>> = Vec::new();
        let mut pivots = Vec::new();

        for row in 0..dim {
            let pivot = loop {
                let nz: Vec<usize> = (0..rest.len()).filter(|&i| !rest[i][row].is_zero()).collect();
                match nz.len() {
                    0 => break None,
                    1 => break Some(nz[0]),
                    _ => {
                        let k = *nz.iter().min_by_key(|&&i| rest[i][row].abs()).unwrap();
                        let pivot_col = rest[k].clone();
                        for &i in nz.iter().filter(|&&i| i != k) {
                            let q = &rest[i][row] / &pivot_col[row];
                            sub_multiple(&mut rest[i], &q, &pivot_col, row);
                        }
                    }
                }
            };
            if let Some(k) = pivot {
                let mut c = rest.swap_remove(k);
                if c[row].is_negative() {
                    c.iter_mut().for_each(|x| *x = -&*x);
                }
                for prev in cols.iter_mut() {
                    let q = prev[row].div_floor(&c[row]);
                    if !q.is_zero() {
                        sub_multiple(prev, &q, &c, row);
                    }
                }
                cols.push(c);
                pivots.push(row);
            }
            rest.retain(|g| g.iter().any(|x| !x.is_zero()));
        }
        debug_assert!(rest.is_empty());

        let small =
            cols.iter().map(|c| c.iter().map(|x| x.to_i64()).collect::<Option<Vec<_>>>()).collect::<Option<Vec<_>>>();
        Echelon { dim, cols, pivots, small }
    }

    pub(crate) fn dim(&self) -> usize {
        self.dim
    }

    pub(crate) fn rank(&self) -> usize {
        self.cols.len()
    }

    pub(crate) fn is_full_rank(&self) -> bool {
        self.rank() == self.dim
    }

    pub(crate) fn columns(&self) -> &[Vec<BigInt>] {
        &self.cols
    }

    /// Product of the pivots; equals the index when the lattice has full rank.
    pub(crate) fn pivot_product(&self) -> BigInt {
        self.cols.iter().zip(&self.pivots).fold(BigInt::one(), |acc, (c, &p)| acc * &c[p])
    }

    pub(crate) fn with_vector(&self, v: &[i64]) -> Echelon {
        let gens = self.cols.iter().cloned().chain(std::iter::once(v.iter().map(|&x| BigInt::from(x)).collect()));
        Echelon::from_generators(self.dim, gens)
    }

    pub(crate) fn contains(&self, v: &[i64]) -> bool {
        assert_eq!(v.len(), self.dim);
        if let Some(small) = &self.small {
            if let Some(r) = contains_small(small, &self.pivots, v) {
                return r;
            }
        }
        let big: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        self.contains_big(&big)
    }

    pub(crate) fn contains_big(&self, v: &[BigInt]) -> bool {
        let mut v = v.to_vec();
        for (c, &p) in self.cols.iter().zip(&self.pivots) {
            if v[..p].iter().any(|x| !x.is_zero()) {
                return false;
            }
            let (q, r) = v[p].div_rem(&c[p]);
            if !r.is_zero() {
                return false;
            }
            sub_multiple(&mut v, &q, c, p);
        }
        v.iter().all(|x| x.is_zero())
    }

    /// Canonical coset representative: coordinate at pivot row `p` lands in
    /// `[0, pivot)`. Only meaningful for full-rank lattices.
    pub(crate) fn reduce(&self, v: &[i64]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.dim);
        if let Some(small) = &self.small {
            if let Some(r) = reduce_small(small, &self.pivots, v) {
                return r.into_iter().map(BigInt::from).collect();
            }
        }
        let mut v: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        for (c, &p) in self.cols.iter().zip(&self.pivots) {
            let q = v[p].div_floor(&c[p]);
            sub_multiple(&mut v, &q, c, p);
        }
        v
    }
}

fn sub_multiple(target: &mut [BigInt], q: &BigInt, col: &[BigInt], from: usize) {
    if q.is_zero() {
        return;
    }
    for (t, c) in target[from..].iter_mut().zip(&col[from..]) {
        if !c.is_zero() {
            *t -= q * c;
        }
    }
}

fn contains_small(cols: &[Vec<i64>], pivots: &[usize], v: &[i64]) -> Option<bool> {
    let mut v: Vec<i128> = v.iter().map(|&x| x as i128).collect();
    for (c, &p) in cols.iter().zip(pivots) {
        if v[..p].iter().any(|&x| x != 0) {
            return Some(false);
        }
        let piv = c[p] as i128;
        if v[p] % piv != 0 {
            return Some(false);
        }
        let q = v[p] / piv;
        for (t, &x) in v[p..].iter_mut().zip(&c[p..]) {
            *t = t.checked_sub(q.checked_mul(x as i128)?)?;
        }
    }
    Some(v.iter().all(|&x| x == 0))
}

fn reduce_small(cols: &[Vec<i64>], pivots: &[usize], v: &[i64]) -> Option<Vec<i64>> {
    let mut v: Vec<i128> = v.iter().map(|&x| x as i128).collect();
    for (c, &p) in cols.iter().zip(pivots) {
        let q = v[p].div_euclid(c[p] as i128);
        for (t, &x) in v[p..].iter_mut().zip(&c[p..]) {
            *t = t.checked_sub(q.checked_mul(x as i128)?)?;
        }
    }
    v.into_iter().map(|x| i64::try_from(x).ok()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn full_rank_form() {
        let e = Echelon::from_generators(2, big(&[&[4, 0], &[1, 1], &[0, 4]]));
        assert_eq!(e.columns(), big(&[&[1, 1], &[0, 4]]).as_slice());
        assert_eq!(e.pivot_product(), BigInt::from(4));
    }

    #[test]
    fn rank_deficient() {
        let e = Echelon::from_generators(3, big(&[&[0, 2, 4], &[0, 3, 6]]));
        assert_eq!(e.rank(), 1);
        assert_eq!(e.columns(), big(&[&[0, 1, 2]]).as_slice());
        assert!(e.contains(&[0, -3, -6]));
        assert!(!e.contains(&[1, 0, 0]));
        assert!(!e.contains(&[0, 1, 3]));
    }

    #[test]
    fn order_independent() {
        let a = Echelon::from_generators(2, big(&[&[2, -1], &[1, 3]]));
        let b = Echelon::from_generators(2, big(&[&[1, 3], &[3, 2], &[-2, 1]]));
        assert_eq!(a, b);
    }

    #[test]
    fn reduce_lands_in_box() {
        let e = Echelon::from_generators(2, big(&[&[1, 3], &[0, 7]]));
        let r = e.reduce(&[5, -20]);
        assert_eq!(r[0], BigInt::from(0));
        assert!(r[1] >= BigInt::from(0) && r[1] < BigInt::from(7));
    }
}
