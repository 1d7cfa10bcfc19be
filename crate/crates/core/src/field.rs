//! Exact scalars in Q(i) and dense linear algebra over them.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::Error;

/// Which field a value or matrix is declared to live in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Field {
    Q,
    Qi,
}

impl Field {
    pub fn join(self, other: Field) -> Field {
        if self == Field::Qi || other == Field::Qi {
            Field::Qi
        } else {
            Field::Q
        }
    }
}

/// A Gaussian rational `re + im*i`. Both parts are kept in lowest terms by
/// `BigRational`, so structural equality is numeric equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar {
    pub re: BigRational,
    pub im: BigRational,
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { re: BigRational::zero(), im: BigRational::zero() }
    }
    pub fn one() -> Self {
        Scalar::int(1)
    }
    pub fn i() -> Self {
        Scalar { re: BigRational::zero(), im: BigRational::one() }
    }
    pub fn int(n: i64) -> Self {
        Scalar { re: BigRational::from_integer(BigInt::from(n)), im: BigRational::zero() }
    }
    pub fn frac(n: i64, d: i64) -> Self {
        Scalar { re: rat(n, d), im: BigRational::zero() }
    }
    /// `(a/b) + (c/d) i`
    pub fn complex(a: i64, b: i64, c: i64, d: i64) -> Self {
        Scalar { re: rat(a, b), im: rat(c, d) }
    }
    pub fn from_parts(re: BigRational, im: BigRational) -> Self {
        Scalar { re, im }
    }
    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    pub fn is_one(&self) -> bool {
        self.im.is_zero() && self.re.is_one()
    }
    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }
    pub fn field(&self) -> Field {
        if self.is_real() {
            Field::Q
        } else {
            Field::Qi
        }
    }
    pub fn conj(&self) -> Self {
        Scalar { re: self.re.clone(), im: -self.im.clone() }
    }
    /// `re² + im²`
    pub fn norm(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(Scalar { re: &self.re / &n, im: -(&self.im / &n) })
    }
    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Scalar::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
    /// Real scalar from an integer-valued `BigInt`.
    pub fn from_bigint(n: BigInt) -> Self {
        Scalar { re: BigRational::from_integer(n), im: BigRational::zero() }
    }
    /// Both parts are integers.
    pub fn is_gaussian_integer(&self) -> bool {
        self.re.is_integer() && self.im.is_integer()
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar { re: r, im: BigRational::zero() }
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl<'a, 'b> $tr<&'b Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, o: &'b Scalar) -> Scalar {
                let f: fn(&Scalar, &Scalar) -> Scalar = $body;
                f(self, o)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$m(&o)
            }
        }
        impl<'b> $tr<&'b Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &'b Scalar) -> Scalar {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                self.$m(&o)
            }
        }
    };
}

binop!(Add, add, |a, b| Scalar { re: &a.re + &b.re, im: &a.im + &b.im });
binop!(Sub, sub, |a, b| Scalar { re: &a.re - &b.re, im: &a.im - &b.im });
binop!(Mul, mul, |a, b| {
    if a.im.is_zero() && b.im.is_zero() {
        return Scalar { re: &a.re * &b.re, im: BigRational::zero() };
    }
    Scalar {
        re: &a.re * &b.re - &a.im * &b.im,
        im: &a.re * &b.im + &a.im * &b.re,
    }
});
binop!(Div, div, |a, b| a * &b.inv().expect("division by zero scalar"));

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { re: -self.re, im: -self.im }
    }
}
impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { re: -self.re.clone(), im: -self.im.clone() }
    }
}
impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        self.re += &o.re;
        self.im += &o.im;
    }
}
impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        self.re -= &o.re;
        self.im -= &o.im;
    }
}
impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, o: &Scalar) {
        *self = &*self * o;
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        alloc::format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    /// Wire format: `a/b`, `c/d*i`, `a/b+c/d*i`; a unit imaginary part is
    /// written `i`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let im_part = |im: &BigRational| -> String {
            if im.abs().is_one() {
                "i".to_string()
            } else {
                alloc::format!("{}*i", fmt_rat(&im.abs()))
            }
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => f.write_str(&fmt_rat(&self.re)),
            (true, false) => {
                if self.im.is_negative() {
                    f.write_str("-")?;
                }
                f.write_str(&im_part(&self.im))
            }
            (false, false) => {
                f.write_str(&fmt_rat(&self.re))?;
                f.write_str(if self.im.is_negative() { "-" } else { "+" })?;
                f.write_str(&im_part(&self.im))
            }
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_rat(s: &str) -> Result<BigRational, Error> {
    let bad = || Error::Input(alloc::format!("malformed scalar component `{s}`"));
    if s.is_empty() {
        return Err(bad());
    }
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n).map_err(|_| bad())?;
            let d = BigInt::from_str(d).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Input(alloc::format!("zero denominator in `{s}`")));
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
    }
}

/// Parses an imaginary coefficient term such as `-1/2*i`, `+i`, `3i`.
fn parse_imag(s: &str) -> Result<BigRational, Error> {
    let body = s.strip_suffix('i').unwrap();
    let body = body.strip_suffix('*').unwrap_or(body);
    match body {
        "" | "+" => Ok(BigRational::one()),
        "-" => Ok(-BigRational::one()),
        _ => parse_rat(body.strip_prefix('+').unwrap_or(body)),
    }
}

impl FromStr for Scalar {
    type Err = Error;
    fn from_str(raw: &str) -> Result<Self, Error> {
        let s: String = raw.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Input("empty scalar".into()));
        }
        if !s.ends_with('i') {
            return Ok(Scalar { re: parse_rat(s.strip_prefix('+').unwrap_or(&s))?, im: BigRational::zero() });
        }
        // split at the last sign that is not the leading character
        let split = s
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(k, _)| k)
            .last();
        match split {
            Some(k) => {
                let re = parse_rat(s[..k].strip_prefix('+').unwrap_or(&s[..k]))?;
                Ok(Scalar { re, im: parse_imag(&s[k..])? })
            }
            None => Ok(Scalar { re: BigRational::zero(), im: parse_imag(&s)? }),
        }
    }
}

pub type Vector = Vec<Scalar>;

pub fn zeros(n: usize) -> Vector {
    vec![Scalar::zero(); n]
}

pub fn unit(n: usize, k: usize) -> Vector {
    let mut v = zeros(n);
    v[k] = Scalar::one();
    v
}

pub fn vadd(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vsub(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vscale(c: &Scalar, a: &[Scalar]) -> Vector {
    a.iter().map(|x| c * x).collect()
}

/// `acc += c * a`
pub fn axpy(acc: &mut [Scalar], c: &Scalar, a: &[Scalar]) {
    if c.is_zero() {
        return;
    }
    for (x, y) in acc.iter_mut().zip(a) {
        if !y.is_zero() {
            *x += &(c * y);
        }
    }
}

pub fn is_zero_vec(a: &[Scalar]) -> bool {
    a.iter().all(Scalar::is_zero)
}

pub fn vconj(a: &[Scalar]) -> Vector {
    a.iter().map(Scalar::conj).collect()
}

/// Linear combination `Σ cᵢ vᵢ` of equal-length vectors.
pub fn combine(coeffs: &[Scalar], vs: &[Vector], n: usize) -> Vector {
    let mut out = zeros(n);
    for (c, v) in coeffs.iter().zip(vs) {
        axpy(&mut out, c, v);
    }
    out
}

/// Dense row-major matrix with a declared field. Equality compares entries
/// only.
#[derive(Clone, Debug)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub field: Field,
    data: Vec<Scalar>,
}

impl PartialEq for Matrix {
    fn eq(&self, o: &Matrix) -> bool {
        self.rows == o.rows && self.cols == o.cols && self.data == o.data
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize, field: Field) -> Self {
        Matrix { rows, cols, field, data: vec![Scalar::zero(); rows * cols] }
    }
    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n, Field::Q);
        for k in 0..n {
            m.set(k, k, Scalar::one());
        }
        m
    }
    /// Builds from rows; the field is inferred from the entries.
    pub fn from_rows(cols: usize, rows: &[Vector]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let mut field = Field::Q;
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix row");
            for x in r {
                field = field.join(x.field());
                data.push(x.clone());
            }
        }
        Matrix { rows: rows.len(), cols, field, data }
    }
    /// Builds with an explicit field tag. Non-real entries under `Field::Q`
    /// are rejected.
    pub fn with_field(cols: usize, rows: &[Vector], field: Field) -> Result<Self, Error> {
        let mut m = Matrix::from_rows(cols, rows);
        if field == Field::Q && m.field == Field::Qi {
            return Err(Error::Input("matrix tagged Q has non-real entries".into()));
        }
        m.field = field;
        Ok(m)
    }
    pub fn from_cols(rows: usize, cols: &[Vector]) -> Self {
        Matrix::from_rows(cols.len(), &(0..rows).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect::<Vec<_>>())
    }
    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }
    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        if !v.is_real() {
            self.field = Field::Qi;
        }
        self.data[r * self.cols + c] = v;
    }
    pub fn row(&self, r: usize) -> Vector {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }
    pub fn row_vecs(&self) -> Vec<Vector> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }
    pub fn col(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }
    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows, self.field);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }
    pub fn mul_vec(&self, v: &[Scalar]) -> Vector {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let mut acc = Scalar::zero();
                for c in 0..self.cols {
                    let a = self.get(r, c);
                    if !a.is_zero() && !v[c].is_zero() {
                        acc += &(a * &v[c]);
                    }
                }
                acc
            })
            .collect()
    }
    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows);
        let mut m = Matrix::zeros(self.rows, o.cols, self.field.join(o.field));
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..o.cols {
                    let b = o.get(k, c);
                    if !b.is_zero() {
                        let idx = r * m.cols + c;
                        m.data[idx] += &(a * b);
                    }
                }
            }
        }
        m
    }
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }
    pub fn conj(&self) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, field: self.field, data: self.data.iter().map(Scalar::conj).collect() }
    }

    /// Reduced row-echelon form, rank and pivot columns.
    pub fn rref(&self) -> (Matrix, usize, Vec<usize>) {
        let mut rows = self.row_vecs();
        let pivots = rref_in_place(&mut rows, self.cols);
        let rank = pivots.len();
        let mut out = Matrix::from_rows(self.cols, &rows);
        out.rows = self.rows;
        out.field = self.field;
        (out, rank, pivots)
    }
    pub fn rank(&self) -> usize {
        self.rref().1
    }
    /// `{v : M v = 0}`
    pub fn nullspace(&self) -> Subspace {
        nullspace_rows(&self.row_vecs(), self.cols)
    }
    /// Some solution of `M x = b`, or `None` if inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vector> {
        assert_eq!(b.len(), self.rows);
        let mut aug: Vec<Vector> = (0..self.rows)
            .map(|r| {
                let mut row = self.row(r);
                row.push(b[r].clone());
                row
            })
            .collect();
        let pivots = rref_in_place(&mut aug, self.cols + 1);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = zeros(self.cols);
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = aug[r][self.cols].clone();
        }
        Some(x)
    }
    /// Inverse of a square matrix.
    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug: Vec<Vector> = (0..n)
            .map(|r| {
                let mut row = self.row(r);
                row.extend(unit(n, r));
                row
            })
            .collect();
        let pivots = rref_in_place(&mut aug, 2 * n);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Matrix::from_rows(n, &aug.iter().map(|r| r[n..].to_vec()).collect::<Vec<_>>()))
    }
}

/// Gauss-Jordan on a list of rows in place. Zero rows end up at the bottom.
/// Returns pivot columns.
pub fn rref_in_place(rows: &mut [Vector], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&k| !rows[k][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].inv().unwrap();
        if !inv.is_one() {
            for x in rows[r].iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        let pivot_row = rows[r].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k != r && !row[c].is_zero() {
                let f = -row[c].clone();
                axpy(row, &f, &pivot_row);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Nullspace of the matrix with the given rows.
pub fn nullspace_rows(rows: &[Vector], cols: usize) -> Subspace {
    let mut rs = rows.to_vec();
    let pivots = rref_in_place(&mut rs, cols);
    let mut is_pivot = vec![None; cols];
    for (k, &p) in pivots.iter().enumerate() {
        is_pivot[p] = Some(k);
    }
    let mut basis = Vec::new();
    for f in (0..cols).filter(|&c| is_pivot[c].is_none()) {
        let mut v = zeros(cols);
        v[f] = Scalar::one();
        for (k, &p) in pivots.iter().enumerate() {
            v[p] = -rs[k][f].clone();
        }
        basis.push(v);
    }
    Subspace::span(cols, &basis)
}

/// A linear subspace of `Q(i)^n`, stored as canonical RREF rows.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vector>,
    pivots: Vec<usize>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in {}) {:?}", self.dim(), self.ambient, self.basis)
    }
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new(), pivots: Vec::new() }
    }
    pub fn full(ambient: usize) -> Self {
        Subspace::span(ambient, &(0..ambient).map(|k| unit(ambient, k)).collect::<Vec<_>>())
    }
    pub fn span(ambient: usize, vectors: &[Vector]) -> Self {
        let mut rows = vectors.to_vec();
        for v in &rows {
            assert_eq!(v.len(), ambient, "vector length does not match ambient dimension");
        }
        let pivots = rref_in_place(&mut rows, ambient);
        rows.truncate(pivots.len());
        Subspace { ambient, basis: rows, pivots }
    }
    pub fn ambient(&self) -> usize {
        self.ambient
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }
    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
    /// Canonical representative of `v` modulo this subspace: the pivot
    /// coordinates of the result are zero.
    pub fn reduce(&self, v: &[Scalar]) -> Vector {
        let mut out = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if !out[p].is_zero() {
                let f = -out[p].clone();
                axpy(&mut out, &f, row);
            }
        }
        out
    }
    /// Coordinates of `v` in the canonical basis, if `v` lies in the span.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vector> {
        let c: Vector = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let back = combine(&c, &self.basis, self.ambient);
        (back.as_slice() == v).then_some(c)
    }
    pub fn contains(&self, v: &[Scalar]) -> bool {
        is_zero_vec(&self.reduce(v))
    }
    pub fn contains_space(&self, o: &Subspace) -> bool {
        o.basis.iter().all(|v| self.contains(v))
    }
    fn check(&self, o: &Subspace) -> Result<(), Error> {
        if self.ambient != o.ambient {
            return Err(Error::Input(alloc::format!(
                "ambient dimension mismatch: {} vs {}",
                self.ambient, o.ambient
            )));
        }
        Ok(())
    }
    pub fn sum(&self, o: &Subspace) -> Result<Subspace, Error> {
        self.check(o)?;
        let mut all = self.basis.clone();
        all.extend(o.basis.iter().cloned());
        Ok(Subspace::span(self.ambient, &all))
    }
    pub fn intersection(&self, o: &Subspace) -> Result<Subspace, Error> {
        self.check(o)?;
        // Σ cᵢ aᵢ ∈ o  ⇔  Σ cᵢ reduce_o(aᵢ) = 0
        let reduced: Vec<Vector> = self.basis.iter().map(|a| o.reduce(a)).collect();
        let m = Matrix::from_cols(self.ambient, &reduced);
        let ker = m.nullspace();
        let vecs: Vec<Vector> = ker.basis.iter().map(|c| combine(c, &self.basis, self.ambient)).collect();
        Ok(Subspace::span(self.ambient, &vecs))
    }
    /// `dim(ambient) − dim(self + o)`
    pub fn quotient_dim(&self, o: &Subspace) -> Result<usize, Error> {
        Ok(self.ambient - self.sum(o)?.dim())
    }
    /// Image under a linear map given as a function on vectors.
    pub fn map(&self, ambient: usize, f: impl Fn(&[Scalar]) -> Vector) -> Subspace {
        Subspace::span(ambient, &self.basis.iter().map(|v| f(v)).collect::<Vec<_>>())
    }
    /// Entrywise conjugate span.
    pub fn conj(&self) -> Subspace {
        Subspace::span(self.ambient, &self.basis.iter().map(|v| vconj(v)).collect::<Vec<_>>())
    }
    /// A basis of a complement, chosen among standard unit vectors.
    pub fn complement_units(&self) -> Vec<usize> {
        (0..self.ambient).filter(|c| !self.pivots.contains(c)).collect()
    }
    /// Vectors of `self` completing a basis of `sub` (which must lie in
    /// `self`) to one of `self`; deterministic echelon choice.
    pub fn complement_in(&self, sub: &Subspace) -> Vec<Vector> {
        let mut acc = sub.clone();
        let mut out = Vec::new();
        for v in &self.basis {
            if !acc.contains(v) {
                out.push(v.clone());
                acc = acc.sum(&Subspace::span(self.ambient, &[v.clone()])).unwrap();
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(x: &str) -> Scalar {
        x.parse().unwrap()
    }

    #[test]
    fn scalar_wire_format_round_trips() {
        for (inp, out) in [
            ("1/2", "1/2"),
            ("-1/2*i", "-1/2*i"),
            ("3/4+5/6*i", "3/4+5/6*i"),
            ("-3/4-5/6*i", "-3/4-5/6*i"),
            ("i", "i"),
            ("-i", "-i"),
            ("2*i", "2*i"),
            ("1+i", "1+i"),
            ("4/2", "2"),
            ("0", "0"),
            (" 1 / 3 ", "1/3"),
        ] {
            assert_eq!(s(inp).to_string(), out, "input {inp}");
        }
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("x".parse::<Scalar>().is_err());
        assert!("".parse::<Scalar>().is_err());
    }

    #[test]
    fn arithmetic_is_exact() {
        let a = s("1/2+1/3*i");
        let b = s("-2+i");
        assert_eq!(&(&a * &b) / &b, a);
        assert_eq!(s("i") * s("i"), Scalar::int(-1));
        assert_eq!(a.conj().conj(), a);
        assert_eq!((&a * &a.conj()).im, BigRational::zero());
    }

    #[test]
    fn identity_is_its_own_rref() {
        let id = Matrix::identity(3);
        let (r, rank, piv) = id.rref();
        assert_eq!(r, id);
        assert_eq!(rank, 3);
        assert_eq!(piv, vec![0, 1, 2]);
    }

    #[test]
    fn dependent_complex_rows() {
        let m = Matrix::from_rows(2, &[vec![s("1"), s("i")], vec![s("i"), s("-1")]]);
        let (r, rank, _) = m.rref();
        assert_eq!(rank, 1);
        assert_eq!(r.row(0), vec![s("1"), s("i")]);
        assert!(is_zero_vec(&r.row(1)));
    }

    #[test]
    fn nullspace_examples() {
        assert_eq!(Matrix::zeros(2, 2, Field::Q).nullspace().dim(), 2);
        assert!(Matrix::identity(4).nullspace().is_zero());
        let k = Matrix::from_rows(2, &[vec![s("1"), s("-i")]]).nullspace();
        assert_eq!(k, Subspace::span(2, &[vec![s("i"), s("1")]]));
    }

    #[test]
    fn q_tag_rejects_complex_entries() {
        assert!(Matrix::with_field(1, &[vec![s("i")]], Field::Q).is_err());
        assert!(Matrix::with_field(1, &[vec![s("2")]], Field::Q).is_ok());
    }

    #[test]
    fn coordinate_lines() {
        let a = Subspace::span(2, &[unit(2, 0)]);
        let b = Subspace::span(2, &[unit(2, 1)]);
        assert_eq!(a.sum(&b).unwrap().dim(), 2);
        assert!(a.intersection(&b).unwrap().is_zero());
        assert!(a.sum(&Subspace::zero(3)).is_err());
    }

    #[test]
    fn solve_and_inverse() {
        let m = Matrix::from_rows(2, &[vec![s("1"), s("2")], vec![s("i"), s("1")]]);
        let x = m.solve(&[s("3"), s("1+i")]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![s("3"), s("1+i")]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));
        let sing = Matrix::from_rows(2, &[vec![s("1"), s("2")], vec![s("2"), s("4")]]);
        assert!(sing.inverse().is_none());
        assert!(sing.solve(&[s("1"), s("1")]).is_none());
    }

    fn small() -> impl Strategy<Value = Scalar> {
        (-3i64..=3, -3i64..=3, 1i64..=3).prop_map(|(a, b, d)| Scalar::complex(a, d, b, d))
    }

    fn mat(r: usize, c: usize) -> impl Strategy<Value = Vec<Vector>> {
        proptest::collection::vec(proptest::collection::vec(small(), c), r)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn rref_is_idempotent(rows in mat(4, 5)) {
            let m = Matrix::from_rows(5, &rows);
            let (r, _, _) = m.rref();
            prop_assert_eq!(r.rref().0, r);
        }

        #[test]
        fn nullspace_is_annihilated(rows in mat(3, 5)) {
            let m = Matrix::from_rows(5, &rows);
            let k = m.nullspace();
            prop_assert_eq!(k.dim(), 5 - m.rank());
            for v in k.basis() {
                prop_assert!(is_zero_vec(&m.mul_vec(v)));
            }
        }

        #[test]
        fn span_is_canonical(rows in mat(3, 4), c in proptest::collection::vec(small(), 3)) {
            let a = Subspace::span(4, &rows);
            let mut shuffled: Vec<Vector> = rows.iter().rev().cloned().collect();
            for (v, k) in shuffled.iter_mut().zip(&c) {
                if !k.is_zero() { *v = vscale(k, v); }
            }
            shuffled.push(vadd(&rows[0], &rows[1]));
            prop_assert_eq!(Subspace::span(4, &shuffled), a);
        }

        #[test]
        fn grassmann_identity(a in mat(2, 4), b in mat(3, 4)) {
            let sa = Subspace::span(4, &a);
            let sb = Subspace::span(4, &b);
            let sum = sa.sum(&sb).unwrap();
            let int = sa.intersection(&sb).unwrap();
            prop_assert_eq!(sum.dim() + int.dim(), sa.dim() + sb.dim());
            prop_assert!(sa.contains_space(&int) && sb.contains_space(&int));
        }
    }
}
