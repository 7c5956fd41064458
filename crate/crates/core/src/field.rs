//! Exact scalars and the small amount of linear algebra the rest of the
//! crate needs: rationals, prime fields, matrices and echelonized subspaces.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"a"`, `"-a"` or `"a/b"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Canonical string form: `"3"`, `"-7/2"`.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational_list(s: &str) -> Result<Vec<Rational>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse_rational).collect()
}

/// Which field a representation's matrices live over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rational,
    Prime(u32),
}

impl FieldSpec {
    pub fn prime(p: u32) -> Result<Self> {
        if p < 2 || (2..p).take_while(|d| d * d <= p).any(|d| p.is_multiple_of(d)) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        Ok(FieldSpec::Prime(p))
    }

    /// Brings a rational into canonical form for this field: unchanged over
    /// Q, the representative in `0..p` over F_p.
    pub fn normalize(&self, q: &Rational) -> Result<Rational> {
        match *self {
            FieldSpec::Rational => Ok(q.clone()),
            FieldSpec::Prime(p) => PrimeField::new(p).from_rational(q).map(|e| rat(e as i64)),
        }
    }

    pub fn normalize_matrix(&self, m: &mut RatMatrix) -> Result<()> {
        if let FieldSpec::Prime(_) = self {
            for x in m.data.iter_mut() {
                *x = self.normalize(x)?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "F{p}"),
        }
    }
}

/// Scalar arithmetic of an exact field.
pub trait Field: Clone {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `a` must be nonzero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn from_rational(&self, q: &Rational) -> Result<Self::Elem>;
    fn to_rational(&self, a: &Self::Elem) -> Rational;
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn inv(&self, a: &Rational) -> Rational {
        a.recip()
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn from_rational(&self, q: &Rational) -> Result<Rational> {
        Ok(q.clone())
    }
    fn to_rational(&self, a: &Rational) -> Rational {
        a.clone()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Self {
        PrimeField { p }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    fn pow(&self, base: u32, mut exp: u32) -> u32 {
        let p = self.p as u64;
        let mut acc = 1u64;
        let mut b = base as u64 % p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * b % p;
            }
            b = b * b % p;
            exp >>= 1;
        }
        acc as u32
    }
}

impl Field for PrimeField {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }
    fn neg(&self, a: &u32) -> u32 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: &u32) -> u32 {
        debug_assert!(*a != 0);
        self.pow(*a, self.p - 2)
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn from_rational(&self, q: &Rational) -> Result<u32> {
        let p = BigInt::from(self.p);
        let reduce = |x: &BigInt| x.mod_floor(&p).to_u32().expect("residue fits in u32");
        let d = reduce(q.denom());
        if d == 0 {
            return Err(Error::InvalidArgument(format!("{} has no image in F_{}", format_rational(q), self.p)));
        }
        Ok(self.mul(&reduce(q.numer()), &self.inv(&d)))
    }
    fn to_rational(&self, a: &u32) -> Rational {
        rat(*a as i64)
    }
}

/// Dense row-major matrix of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::ShapeMismatch("ragged matrix rows".into()));
        }
        Ok(RatMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        RatMatrix { rows, cols, data: entries.iter().map(|&x| rat(x)).collect() }
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn mul(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = RatMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &RatMatrix) -> Result<RatMatrix> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &RatMatrix) -> Result<RatMatrix> {
        self.zip(other, |a, b| a - b)
    }

    fn zip(&self, other: &RatMatrix, f: impl Fn(&Rational, &Rational) -> Rational) -> Result<RatMatrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::ShapeMismatch(format!("{}x{} vs {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        Ok(RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    /// Block-diagonal sum.
    pub fn block_diag(blocks: &[&RatMatrix]) -> RatMatrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = RatMatrix::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.get(i, j).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Inverse over the given field, `None` when singular.
    pub fn inverse(&self, field: FieldSpec) -> Option<RatMatrix> {
        if self.rows != self.cols {
            return None;
        }
        match field {
            FieldSpec::Rational => inverse_in(&Rationals, self),
            FieldSpec::Prime(p) => inverse_in(&PrimeField::new(p), self),
        }
    }

    pub fn to_field<F: Field>(&self, field: &F) -> Result<Vec<F::Elem>> {
        self.data.iter().map(|q| field.from_rational(q)).collect()
    }
}

fn inverse_in<F: Field>(field: &F, m: &RatMatrix) -> Option<RatMatrix> {
    let n = m.rows;
    let mut a: Vec<Vec<F::Elem>> = (0..n)
        .map(|i| {
            let mut row: Vec<F::Elem> = m.row(i).iter().map(|q| field.from_rational(q).ok()).collect::<Option<_>>()?;
            row.extend((0..n).map(|j| if i == j { field.one() } else { field.zero() }));
            Some(row)
        })
        .collect::<Option<_>>()?;
    for col in 0..n {
        let piv = (col..n).find(|&r| !field.is_zero(&a[r][col]))?;
        a.swap(col, piv);
        let inv = field.inv(&a[col][col]);
        for x in a[col].iter_mut() {
            *x = field.mul(x, &inv);
        }
        for r in 0..n {
            if r != col && !field.is_zero(&a[r][col]) {
                let f = a[r][col].clone();
                for c in 0..2 * n {
                    let t = field.mul(&f, &a[col][c]);
                    a[r][c] = field.sub(&a[r][c], &t);
                }
            }
        }
    }
    let data = a.into_iter().flat_map(|row| row.into_iter().skip(n)).map(|e| field.to_rational(&e)).collect();
    Some(RatMatrix { rows: n, cols: n, data })
}

/// A subspace of `F^dim` kept in reduced row echelon form, so two equal
/// subspaces have identical `rows`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace<E> {
    dim: usize,
    rows: Vec<Vec<E>>,
    pivots: Vec<usize>,
}

impl<E: Clone + PartialEq + Eq + Hash + fmt::Debug> Subspace<E> {
    pub fn zero(dim: usize) -> Self {
        Subspace { dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<E>] {
        &self.rows
    }

    /// Reduces `v` against the basis; the result is zero iff `v` lies in the span.
    pub fn reduce<F: Field<Elem = E>>(&self, field: &F, v: &[E]) -> Vec<E> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !field.is_zero(&v[p]) {
                let f = v[p].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    if !field.is_zero(r) {
                        *x = field.sub(x, &field.mul(&f, r));
                    }
                }
            }
        }
        v
    }

    pub fn contains<F: Field<Elem = E>>(&self, field: &F, v: &[E]) -> bool {
        self.reduce(field, v).iter().all(|x| field.is_zero(x))
    }

    /// Adds `v` to the span. Returns `true` if the dimension grew.
    pub fn insert<F: Field<Elem = E>>(&mut self, field: &F, v: &[E]) -> bool {
        let mut v = self.reduce(field, v);
        let Some(p) = v.iter().position(|x| !field.is_zero(x)) else {
            return false;
        };
        let inv = field.inv(&v[p]);
        for x in v.iter_mut() {
            *x = field.mul(x, &inv);
        }
        for row in self.rows.iter_mut() {
            if !field.is_zero(&row[p]) {
                let f = row[p].clone();
                for (x, y) in row.iter_mut().zip(&v) {
                    *x = field.sub(x, &field.mul(&f, y));
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v);
        true
    }

    pub fn sum<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        let (mut big, small) = if self.dim() >= other.dim() { (self.clone(), other) } else { (other.clone(), self) };
        for r in &small.rows {
            big.insert(field, r);
        }
        big
    }

    pub fn is_subspace_of<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> bool {
        self.dim() <= other.dim() && self.rows.iter().all(|r| other.contains(field, r))
    }
}

/// Rank of a dense matrix given as rows.
pub fn rank<F: Field>(field: &F, rows: &[Vec<F::Elem>]) -> usize {
    let Some(first) = rows.first() else { return 0 };
    let mut s = Subspace::zero(first.len());
    for r in rows {
        s.insert(field, r);
    }
    s.dim()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("-7").unwrap(), rat(-7));
        assert_eq!(parse_rational(" 6/4 ").unwrap(), ratio(3, 2));
        assert_eq!(format_rational(&ratio(-6, 4)), "-3/2");
        assert_eq!(format_rational(&rat(0)), "0");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn prime_field_reduction() {
        let f = PrimeField::new(3);
        assert_eq!(f.from_rational(&ratio(1, 2)).unwrap(), 2);
        assert_eq!(f.from_rational(&rat(-1)).unwrap(), 2);
        assert!(f.from_rational(&ratio(1, 3)).is_err());
        assert_eq!(f.inv(&2), 2);
        assert!(FieldSpec::prime(4).is_err());
        assert_eq!(FieldSpec::prime(5).unwrap(), FieldSpec::Prime(5));
    }

    #[test]
    fn echelon_is_canonical() {
        let f = PrimeField::new(5);
        let mut a = Subspace::zero(3);
        a.insert(&f, &[1, 2, 0]);
        a.insert(&f, &[0, 1, 1]);
        let mut b = Subspace::zero(3);
        b.insert(&f, &[1, 3, 1]);
        b.insert(&f, &[2, 4, 0]);
        assert_eq!(a, b);
        assert!(!a.insert(&f, &[1, 3, 1]));
        assert_eq!(rank(&Rationals, &[vec![rat(1), rat(2)], vec![rat(2), rat(4)]]), 1);
    }

    #[test]
    fn inverse_over_q_and_fp() {
        let m = RatMatrix::from_i64(2, 2, &[2, 1, 1, 1]);
        let inv = m.inverse(FieldSpec::Rational).unwrap();
        assert_eq!(m.mul(&inv).unwrap(), RatMatrix::identity(2));
        let s = RatMatrix::from_i64(2, 2, &[1, 1, 1, 1]);
        assert!(s.inverse(FieldSpec::Prime(3)).is_none());
        let m3 = RatMatrix::from_i64(2, 2, &[1, 2, 0, 1]);
        let inv3 = m3.inverse(FieldSpec::Prime(3)).unwrap();
        let mut prod = m3.mul(&inv3).unwrap();
        FieldSpec::Prime(3).normalize_matrix(&mut prod).unwrap();
        assert_eq!(prod, RatMatrix::identity(2));
    }
}
