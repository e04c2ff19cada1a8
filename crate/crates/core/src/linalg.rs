//! Exact dense linear algebra over the integers and rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Determinant of a square matrix given as rows (Bareiss elimination).
pub fn det(rows: &[Vec<BigInt>]) -> BigInt {
    let n = rows.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Determinant of the matrix whose columns are the given vectors.
pub fn det_columns(cols: &[Vec<BigInt>]) -> BigInt {
    let n = cols.len();
    let rows: Vec<Vec<BigInt>> = (0..n).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
    det(&rows)
}

pub fn to_big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Incremental rank tracker for vectors in Q^m.
///
/// Stored rows are kept primitive (content 1) with distinct pivot positions.
#[derive(Clone, Debug, Default)]
pub struct SpanTracker {
    rows: Vec<(usize, Vec<BigInt>)>,
}

impl SpanTracker {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn eliminate(&self, v: &[BigInt]) -> Vec<BigInt> {
        let mut v = v.to_vec();
        for (p, r) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let a = r[*p].clone();
            let b = v[*p].clone();
            for (x, y) in v.iter_mut().zip(r) {
                *x = &*x * &a - &b * y;
            }
            make_primitive(&mut v);
        }
        v
    }

    pub fn is_independent(&self, v: &[BigInt]) -> bool {
        self.eliminate(v).iter().any(|x| !x.is_zero())
    }

    /// Adds `v` if it increases the rank; returns whether it did.
    pub fn insert(&mut self, v: &[BigInt]) -> bool {
        let mut w = self.eliminate(v);
        match w.iter().position(|x| !x.is_zero()) {
            None => false,
            Some(p) => {
                make_primitive(&mut w);
                // keep stored rows reduced in the new pivot column
                for (_, r) in self.rows.iter_mut() {
                    if !r[p].is_zero() {
                        let a = w[p].clone();
                        let b = r[p].clone();
                        for (x, y) in r.iter_mut().zip(&w) {
                            *x = &*x * &a - &b * y;
                        }
                        make_primitive(r);
                    }
                }
                self.rows.push((p, w));
                true
            }
        }
    }
}

fn make_primitive(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        v.iter_mut().for_each(|x| *x = &*x / &g);
    }
}

/// Solves `sum_j x_j * cols[j] = rhs` over the rationals when the system is
/// consistent and the columns are independent.
pub fn solve_in_span(cols: &[Vec<BigInt>], rhs: &[BigRational]) -> Option<Vec<BigRational>> {
    let m = rhs.len();
    let k = cols.len();
    // augmented rows: m equations in k unknowns
    let mut a: Vec<Vec<BigRational>> = (0..m)
        .map(|i| {
            let mut row: Vec<BigRational> = cols.iter().map(|c| BigRational::from_integer(c[i].clone())).collect();
            row.push(rhs[i].clone());
            row
        })
        .collect();
    let mut pivot_row = 0;
    let mut where_: Vec<Option<usize>> = vec![None; k];
    for col in 0..k {
        let sel = (pivot_row..m).find(|&i| !a[i][col].is_zero())?;
        a.swap(pivot_row, sel);
        let p = a[pivot_row][col].clone();
        for x in a[pivot_row].iter_mut() {
            *x = &*x / &p;
        }
        for i in 0..m {
            if i != pivot_row && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for j in col..=k {
                    let t = &f * &a[pivot_row][j];
                    a[i][j] -= t;
                }
            }
        }
        where_[col] = Some(pivot_row);
        pivot_row += 1;
    }
    if a[pivot_row..].iter().any(|r| !r[k].is_zero()) {
        return None;
    }
    Some(where_.iter().map(|w| a[w.unwrap()][k].clone()).collect())
}

pub fn l1(v: &[BigInt]) -> BigInt {
    v.iter().map(|x| x.abs()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| to_big(r)).collect()
    }

    #[test]
    fn det_small() {
        assert_eq!(det(&m(&[&[2, -1], &[-1, 4]])), BigInt::from(7));
        assert_eq!(det(&m(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(det(&m(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]])), BigInt::from(-3));
        assert_eq!(det(&m(&[&[1, 2], &[2, 4]])), BigInt::zero());
    }

    #[test]
    fn span_tracker() {
        let mut s = SpanTracker::new();
        assert!(s.insert(&to_big(&[1, 1, 0])));
        assert!(!s.insert(&to_big(&[3, 3, 0])));
        assert!(s.insert(&to_big(&[0, 2, 1])));
        assert!(!s.is_independent(&to_big(&[1, 3, 1])));
        assert!(s.is_independent(&to_big(&[0, 0, 1])));
        assert_eq!(s.rank(), 2);
    }

    #[test]
    fn solve() {
        let cols = m(&[&[2, -1]]);
        let rhs = vec![BigRational::from_integer((-1).into()), BigRational::new(1.into(), 2.into())];
        let t = solve_in_span(&cols, &rhs).unwrap();
        assert_eq!(t, vec![BigRational::new((-1).into(), 2.into())]);
        let bad = vec![BigRational::one(), BigRational::one()];
        assert!(solve_in_span(&cols, &bad).is_none());
    }
}
