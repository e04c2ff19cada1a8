//! Full-rank sublattices of `Z^m` cut out by congruences on exponent vectors.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::LatticeError;
use crate::hnf::Echelon;

/// An integer point of `Z^m`; the exponent vector of a Laurent monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticeVector(pub Vec<i64>);

impl LatticeVector {
    pub fn new(coords: Vec<i64>) -> Self {
        LatticeVector(coords)
    }

    pub fn zero(m: usize) -> Self {
        LatticeVector(vec![0; m])
    }

    pub fn unit(m: usize, i: usize) -> Self {
        let mut v = vec![0; m];
        v[i] = 1;
        LatticeVector(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn l1norm(&self) -> u64 {
        self.0.iter().map(|x| x.unsigned_abs()).sum()
    }

    /// Coordinate sum. Agrees with the L1 norm on the nonnegative orthant.
    pub fn weight(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    /// First nonzero coordinate is positive. Picks one of `v`, `-v`.
    pub fn is_sign_normalized(&self) -> bool {
        self.0.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0)
    }

    /// Componentwise partial order.
    pub fn leq_componentwise(&self, other: &LatticeVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn add(&self, other: &LatticeVector) -> LatticeVector {
        LatticeVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &LatticeVector) -> LatticeVector {
        LatticeVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> LatticeVector {
        LatticeVector(self.0.iter().map(|a| a * k).collect())
    }

    pub fn neg(&self) -> LatticeVector {
        self.scale(-1)
    }

    pub fn to_big(&self) -> Vec<BigInt> {
        self.0.iter().map(|&x| BigInt::from(x)).collect()
    }

    pub fn try_from_big(v: &[BigInt]) -> Result<Self, LatticeError> {
        v.iter().map(|x| x.to_i64().ok_or(LatticeError::Overflow)).collect::<Result<Vec<_>, _>>().map(LatticeVector)
    }
}

impl From<Vec<i64>> for LatticeVector {
    fn from(v: Vec<i64>) -> Self {
        LatticeVector(v)
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Tuple of residues naming a coset of a lattice in `Z^m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CosetLabel(pub Vec<u64>);

impl CosetLabel {
    pub fn residues(&self) -> &[u64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&r| r == 0)
    }
}

impl fmt::Display for CosetLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|r| r.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl Serialize for CosetLabel {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Character data of a diagonal representation of `Z/n_1 x ... x Z/n_r`:
/// row `i` holds the exponents by which generator `i` acts on each coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CongruenceSystem {
    moduli: Vec<u64>,
    coefficients: Vec<Vec<u64>>,
}

#[derive(Deserialize)]
struct RawSystem {
    moduli: Vec<u64>,
    coefficients: Vec<Vec<u64>>,
}

impl<'de> Deserialize<'de> for CongruenceSystem {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = RawSystem::deserialize(d)?;
        CongruenceSystem::new(raw.moduli, raw.coefficients).map_err(D::Error::custom)
    }
}

impl CongruenceSystem {
    pub fn new(moduli: Vec<u64>, coefficients: Vec<Vec<u64>>) -> Result<Self, LatticeError> {
        let bad = |msg: String| Err(LatticeError::InvalidSystem(msg));
        if moduli.is_empty() {
            return bad("at least one congruence is required".into());
        }
        if moduli.len() != coefficients.len() {
            return bad(format!("{} moduli but {} coefficient rows", moduli.len(), coefficients.len()));
        }
        let m = coefficients[0].len();
        if m == 0 {
            return bad("coefficient rows are empty".into());
        }
        for (i, (&n, row)) in moduli.iter().zip(&coefficients).enumerate() {
            if n < 2 {
                return bad(format!("modulus {n} in row {i} is below 2"));
            }
            if row.len() != m {
                return bad(format!("row {i} has length {}, expected {m}", row.len()));
            }
            if let Some(&a) = row.iter().find(|&&a| a >= n) {
                return bad(format!("coefficient {a} in row {i} is not reduced mod {n}"));
            }
        }
        Ok(CongruenceSystem { moduli, coefficients })
    }

    /// Builds a system from arbitrary integer coefficients, reducing each row
    /// into `[0, n_i)`.
    pub fn from_signed(moduli: Vec<u64>, coefficients: Vec<Vec<i64>>) -> Result<Self, LatticeError> {
        if moduli.len() != coefficients.len() {
            return Err(LatticeError::InvalidSystem("row count does not match moduli".into()));
        }
        if moduli.iter().any(|&n| n < 2) {
            return Err(LatticeError::InvalidSystem("moduli must be at least 2".into()));
        }
        let rows = coefficients
            .into_iter()
            .zip(&moduli)
            .map(|(row, &n)| row.into_iter().map(|a| a.rem_euclid(n as i64) as u64).collect())
            .collect();
        CongruenceSystem::new(moduli, rows)
    }

    pub fn cyclic(n: u64, coefficients: Vec<i64>) -> Result<Self, LatticeError> {
        CongruenceSystem::from_signed(vec![n], vec![coefficients])
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn coefficients(&self) -> &[Vec<u64>] {
        &self.coefficients
    }

    pub fn dimension(&self) -> usize {
        self.coefficients[0].len()
    }

    pub fn rows(&self) -> usize {
        self.moduli.len()
    }

    /// The character of coordinate `j`, one residue per cyclic factor.
    pub fn column(&self, j: usize) -> Vec<u64> {
        self.coefficients.iter().map(|row| row[j]).collect()
    }

    /// Residues `sum_j A_ij v_j mod n_i`: the character of the monomial `x^v`.
    pub fn coset_label(&self, v: &LatticeVector) -> Result<CosetLabel, LatticeError> {
        let m = self.dimension();
        if v.dim() != m {
            return Err(LatticeError::DimensionMismatch { expected: m, got: v.dim() });
        }
        let residues = self
            .moduli
            .iter()
            .zip(&self.coefficients)
            .map(|(&n, row)| {
                let n = n as i128;
                let s: i128 = row.iter().zip(v.coords()).map(|(&a, &x)| (a as i128 * x as i128).rem_euclid(n)).sum();
                s.rem_euclid(n) as u64
            })
            .collect();
        Ok(CosetLabel(residues))
    }

    /// The lattice of solutions `{a : sum_j A_ij a_j = 0 mod n_i for all i}`.
    pub fn lattice(&self) -> LatticeBasis {
        from_congruences(self)
    }
}

/// Canonical (Hermite) basis of a full-rank sublattice of `Z^m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticeBasis {
    ech: Echelon,
}

impl LatticeBasis {
    pub fn from_generators(dim: usize, gens: &[LatticeVector]) -> Result<Self, LatticeError> {
        if let Some(g) = gens.iter().find(|g| g.dim() != dim) {
            return Err(LatticeError::DimensionMismatch { expected: dim, got: g.dim() });
        }
        Self::from_big_generators(dim, gens.iter().map(|g| g.to_big()).collect())
    }

    pub fn from_big_generators(dim: usize, gens: Vec<Vec<BigInt>>) -> Result<Self, LatticeError> {
        if dim == 0 {
            return Err(LatticeError::InvalidBasis("dimension must be at least 1".into()));
        }
        if let Some(g) = gens.iter().find(|g| g.len() != dim) {
            return Err(LatticeError::DimensionMismatch { expected: dim, got: g.len() });
        }
        let ech = Echelon::from_generators(dim, gens);
        if !ech.is_full_rank() {
            return Err(LatticeError::InvalidBasis(format!("generators span rank {} in dimension {dim}", ech.rank())));
        }
        Ok(LatticeBasis { ech })
    }

    pub fn identity(m: usize) -> Self {
        Self::scaled_identity(m, 1)
    }

    /// `k Z^m`.
    pub fn scaled_identity(m: usize, k: i64) -> Self {
        let gens = (0..m).map(|i| LatticeVector::unit(m, i).scale(k)).collect::<Vec<_>>();
        Self::from_generators(m, &gens).expect("k Z^m has full rank for k != 0")
    }

    pub fn dimension(&self) -> usize {
        self.ech.dim()
    }

    /// Columns in canonical form: column `j` is zero above row `j`, has a
    /// positive diagonal entry, and entries below the diagonal in row `i`
    /// lie in `[0, d_i)`.
    pub fn columns(&self) -> &[Vec<BigInt>] {
        self.ech.columns()
    }

    pub fn column_vectors(&self) -> Result<Vec<LatticeVector>, LatticeError> {
        self.columns().iter().map(|c| LatticeVector::try_from_big(c)).collect()
    }

    pub fn diagonal(&self) -> Vec<BigInt> {
        self.columns().iter().enumerate().map(|(j, c)| c[j].clone()).collect()
    }

    /// `[Z^m : L]`, the product of the diagonal.
    pub fn index(&self) -> BigInt {
        self.ech.pivot_product()
    }

    pub fn index_u64(&self) -> Option<u64> {
        self.index().to_u64()
    }

    pub fn contains(&self, v: &LatticeVector) -> Result<bool, LatticeError> {
        self.check_dim(v)?;
        Ok(self.ech.contains(v.coords()))
    }

    /// Membership test on raw coordinates. Panics on a dimension mismatch.
    pub fn contains_coords(&self, v: &[i64]) -> bool {
        self.ech.contains(v)
    }

    /// Label of the coset of `v`: its canonical representative in the box
    /// `0 <= r_i < d_i` cut out by the diagonal.
    pub fn coset_label(&self, v: &LatticeVector) -> Result<CosetLabel, LatticeError> {
        self.check_dim(v)?;
        self.ech
            .reduce(v.coords())
            .iter()
            .map(|r| r.to_u64().ok_or(LatticeError::Overflow))
            .collect::<Result<Vec<_>, _>>()
            .map(CosetLabel)
    }

    /// True iff `gens` lie in `L` and generate all of it.
    pub fn is_generating(&self, gens: &[LatticeVector]) -> bool {
        let m = self.dimension();
        if gens.iter().any(|g| g.dim() != m || !self.ech.contains(g.coords())) {
            return false;
        }
        let sub = Echelon::from_generators(m, gens.iter().map(|g| g.to_big()));
        sub.is_full_rank() && sub.pivot_product() == self.index()
    }

    /// True iff `sub` is contained in `self`.
    pub fn contains_lattice(&self, sub: &LatticeBasis) -> bool {
        sub.columns().iter().all(|c| self.ech.contains_big(c))
    }

    pub fn detect_trivial_or_duplicate(&self) -> TrivialDuplicateReport {
        let m = self.dimension();
        let trivial_indices = (0..m).filter(|&i| self.contains_coords(LatticeVector::unit(m, i).coords())).collect();
        let mut duplicate_pairs = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                let d = LatticeVector::unit(m, i).sub(&LatticeVector::unit(m, j));
                if self.contains_coords(d.coords()) {
                    duplicate_pairs.push((i, j));
                }
            }
        }
        TrivialDuplicateReport { trivial_indices, duplicate_pairs }
    }

    fn check_dim(&self, v: &LatticeVector) -> Result<(), LatticeError> {
        if v.dim() != self.dimension() {
            return Err(LatticeError::DimensionMismatch { expected: self.dimension(), got: v.dim() });
        }
        Ok(())
    }
}

/// Coordinates (0-based) whose character is trivial, and pairs of coordinates
/// carrying the same character.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TrivialDuplicateReport {
    pub trivial_indices: Vec<usize>,
    pub duplicate_pairs: Vec<(usize, usize)>,
}

impl TrivialDuplicateReport {
    pub fn is_empty(&self) -> bool {
        self.trivial_indices.is_empty() && self.duplicate_pairs.is_empty()
    }
}

/// Kernel of the character map `a -> (sum_j A_ij a_j mod n_i)_i`.
pub fn from_congruences(sys: &CongruenceSystem) -> LatticeBasis {
    let m = sys.dimension();
    let mut basis: Vec<Vec<BigInt>> = (0..m)
        .map(|i| {
            let mut e = vec![BigInt::zero(); m];
            e[i] = BigInt::one();
            e
        })
        .collect();
    for (&n, row) in sys.moduli().iter().zip(sys.coefficients()) {
        let n = BigInt::from(n);
        let row: Vec<BigInt> = row.iter().map(|&a| BigInt::from(a)).collect();
        // values of the character on the current basis
        let g: Vec<BigInt> =
            basis.iter().map(|b| b.iter().zip(&row).map(|(x, a)| x * a).sum::<BigInt>().mod_floor(&n)).collect();
        let (u, h) = unimodular_row_gcd(&g);
        // kernel of x -> g.x mod n is U * span((n / gcd(h, n)) e_1, e_2, ..., e_k)
        let k = basis.len();
        let scale0 = &n / h.gcd(&n);
        let mut next = Vec::with_capacity(k);
        for (c, ucol) in u.iter().enumerate() {
            let mut v = vec![BigInt::zero(); m];
            for (coef, b) in ucol.iter().zip(&basis) {
                if !coef.is_zero() {
                    for (vi, bi) in v.iter_mut().zip(b) {
                        *vi += coef * bi;
                    }
                }
            }
            if c == 0 {
                v.iter_mut().for_each(|x| *x *= &scale0);
            }
            next.push(v);
        }
        basis = Echelon::from_generators(m, next).columns().to_vec();
    }
    LatticeBasis::from_big_generators(m, basis).expect("congruence kernels have full rank")
}

/// Column operations `U` (unimodular, returned as columns) with
/// `g . U = (h, 0, ..., 0)`, `h = gcd(g) >= 0`.
fn unimodular_row_gcd(g: &[BigInt]) -> (Vec<Vec<BigInt>>, BigInt) {
    let k = g.len();
    let mut u: Vec<Vec<BigInt>> = (0..k)
        .map(|i| {
            let mut e = vec![BigInt::zero(); k];
            e[i] = BigInt::one();
            e
        })
        .collect();
    let mut row = g.to_vec();
    for j in 1..k {
        if row[j].is_zero() {
            continue;
        }
        let a = row[0].clone();
        let b = row[j].clone();
        let eg = a.extended_gcd(&b);
        let (d, s, t) = (eg.gcd, eg.x, eg.y);
        let (ad, bd) = (&a / &d, &b / &d);
        let c0: Vec<BigInt> = u[0].iter().zip(&u[j]).map(|(x, y)| &s * x + &t * y).collect();
        let cj: Vec<BigInt> = u[0].iter().zip(&u[j]).map(|(x, y)| -&bd * x + &ad * y).collect();
        u[0] = c0;
        u[j] = cj;
        row[0] = d;
        row[j] = BigInt::zero();
    }
    if row[0].is_negative() {
        u[0].iter_mut().for_each(|x| *x = -&*x);
        row[0] = -&row[0];
    }
    (u, row[0].clone())
}

/// Drops coordinates with trivial character and keeps one coordinate per
/// distinct character (first occurrence wins).
pub fn drop_trivial_and_duplicates(sys: &CongruenceSystem) -> Result<CongruenceSystem, LatticeError> {
    let m = sys.dimension();
    let mut kept: Vec<usize> = Vec::new();
    let mut seen: Vec<Vec<u64>> = Vec::new();
    for j in 0..m {
        let col = sys.column(j);
        if col.iter().all(|&a| a == 0) || seen.contains(&col) {
            continue;
        }
        seen.push(col);
        kept.push(j);
    }
    if kept.is_empty() {
        return Err(LatticeError::AllColumnsRemoved);
    }
    let rows = sys.coefficients().iter().map(|row| kept.iter().map(|&j| row[j]).collect()).collect();
    CongruenceSystem::new(sys.moduli().to_vec(), rows)
}

// ---- serialization of bases: {"dimension": m, "columns": [[...]], "index": k}

pub(crate) fn big_to_json<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    match x.to_i64() {
        Some(v) => s.serialize_i64(v),
        None => s.collect_str(x),
    }
}

#[derive(Serialize)]
struct BigJson<'a>(#[serde(serialize_with = "big_to_json")] &'a BigInt);

#[derive(Deserialize)]
#[serde(untagged)]
enum BigIn {
    Int(i64),
    Str(String),
}

impl BigIn {
    fn to_big(&self) -> Result<BigInt, String> {
        match self {
            BigIn::Int(v) => Ok(BigInt::from(*v)),
            BigIn::Str(s) => s.parse().map_err(|_| format!("not an integer: {s}")),
        }
    }
}

impl Serialize for LatticeBasis {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let cols: Vec<Vec<BigJson>> = self.columns().iter().map(|c| c.iter().map(BigJson).collect()).collect();
        let index = self.index();
        let mut st = s.serialize_struct("LatticeBasis", 3)?;
        st.serialize_field("dimension", &self.dimension())?;
        st.serialize_field("columns", &cols)?;
        st.serialize_field("index", &BigJson(&index))?;
        st.end()
    }
}

#[derive(Deserialize)]
struct RawBasis {
    dimension: usize,
    columns: Vec<Vec<BigIn>>,
    index: Option<BigIn>,
}

impl<'de> Deserialize<'de> for LatticeBasis {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = RawBasis::deserialize(d)?;
        let cols = raw
            .columns
            .iter()
            .map(|c| c.iter().map(BigIn::to_big).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(D::Error::custom)?;
        let basis = LatticeBasis::from_big_generators(raw.dimension, cols).map_err(D::Error::custom)?;
        if let Some(idx) = raw.index {
            let idx = idx.to_big().map_err(D::Error::custom)?;
            if idx != basis.index() {
                return Err(D::Error::custom(format!("stated index {idx} but columns give {}", basis.index())));
            }
        }
        Ok(basis)
    }
}
