//! Finite-dimensional Lie algebras given by structure constants.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::field::{axpy, combine, is_zero_vec, unit, vconj, zeros, Field, Matrix, Scalar, Subspace, Vector};
use crate::{Error, Result};

/// Structure constants on a labelled basis, optionally with a real-form
/// conjugation `σ(v) = S·conj(v)`.
#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebra {
    labels: Vec<String>,
    field: Field,
    table: Vec<Vector>,
    conjugation: Option<Matrix>,
}

/// Outcome of [`LieAlgebra::validate`].
#[derive(Clone, Debug, PartialEq)]
pub struct Validation {
    pub antisymmetric: bool,
    /// First basis triple with nonzero Jacobiator, and the Jacobiator.
    pub jacobi_violation: Option<((usize, usize, usize), Vector)>,
    /// Description of the first failing conjugation axiom.
    pub conjugation_violation: Option<String>,
}

impl Validation {
    pub fn ok(&self) -> bool {
        self.antisymmetric && self.jacobi_violation.is_none() && self.conjugation_violation.is_none()
    }
}

/// Bracket value given as `(label, coefficient)` pairs.
pub type Terms<'a> = &'a [(&'a str, &'a str)];

impl LieAlgebra {
    /// Abelian algebra on the given labels.
    pub fn abelian(labels: &[&str], field: Field) -> Self {
        let n = labels.len();
        LieAlgebra {
            labels: labels.iter().map(|s| s.to_string()).collect(),
            field,
            table: vec![zeros(n); n * n],
            conjugation: None,
        }
    }

    /// Builds from a sparse table `[a, b] = Σ c·label`. Unlisted brackets are
    /// zero; `[b, a]` is filled by antisymmetry.
    pub fn from_table(labels: &[&str], field: Field, brackets: &[(&str, &str, Terms<'_>)]) -> Result<Self> {
        let mut alg = LieAlgebra::abelian(labels, field);
        for (a, b, val) in brackets {
            let i = alg.index(a)?;
            let j = alg.index(b)?;
            let v = alg.vector(val)?;
            alg.set_bracket(i, j, v)?;
        }
        Ok(alg)
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }
    pub fn field(&self) -> Field {
        self.field
    }
    pub fn labels(&self) -> &[String] {
        &self.labels
    }
    pub fn index(&self, name: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == name)
            .ok_or_else(|| Error::Input(alloc::format!("unknown basis label `{name}`")))
    }
    pub fn basis_vector(&self, name: &str) -> Result<Vector> {
        Ok(unit(self.dim(), self.index(name)?))
    }
    /// Vector from `(label, scalar-string)` pairs.
    pub fn vector(&self, terms: Terms<'_>) -> Result<Vector> {
        let mut v = zeros(self.dim());
        for (name, c) in terms {
            let k = self.index(name)?;
            let c: Scalar = c.parse()?;
            v[k] += &c;
        }
        Ok(v)
    }
    pub fn set_bracket(&mut self, i: usize, j: usize, v: Vector) -> Result<()> {
        let n = self.dim();
        if v.len() != n {
            return Err(Error::Input("bracket vector has wrong length".into()));
        }
        if i == j && !is_zero_vec(&v) {
            return Err(Error::Input(alloc::format!("[{0}, {0}] must vanish", self.labels[i])));
        }
        if self.field == Field::Q && v.iter().any(|c| !c.is_real()) {
            return Err(Error::Input("complex structure constant in an algebra over Q".into()));
        }
        self.table[j * n + i] = v.iter().map(|c| -c).collect();
        self.table[i * n + j] = v;
        Ok(())
    }
    /// Sets `σ(e_j) = Σ S_ij e_i` from a map label → vector.
    pub fn set_conjugation(&mut self, s: Matrix) -> Result<()> {
        if s.rows != self.dim() || s.cols != self.dim() {
            return Err(Error::Input("conjugation matrix has wrong size".into()));
        }
        self.conjugation = Some(s);
        Ok(())
    }
    /// Declares `σ` by listing, for each label, the label of its conjugate
    /// (self-conjugate labels may be omitted).
    pub fn set_conjugate_pairs(&mut self, pairs: &[(&str, &str)]) -> Result<()> {
        let n = self.dim();
        let mut s = Matrix::identity(n);
        for (a, b) in pairs {
            let i = self.index(a)?;
            let j = self.index(b)?;
            s.set(i, i, Scalar::zero());
            s.set(j, j, Scalar::zero());
            s.set(j, i, Scalar::one());
            s.set(i, j, Scalar::one());
        }
        self.set_conjugation(s)
    }
    pub fn conjugation(&self) -> Option<&Matrix> {
        self.conjugation.as_ref()
    }
    pub fn structure(&self, i: usize, j: usize) -> &Vector {
        &self.table[i * self.dim() + j]
    }

    pub fn bracket(&self, a: &[Scalar], b: &[Scalar]) -> Vector {
        let n = self.dim();
        let mut out = zeros(n);
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() || i == j {
                    continue;
                }
                let s = &self.table[i * n + j];
                if is_zero_vec(s) {
                    continue;
                }
                axpy(&mut out, &(x * y), s);
            }
        }
        out
    }

    /// `σ(v)`; identity-conjugation when no real form is attached and the
    /// algebra is over Q.
    pub fn sigma(&self, v: &[Scalar]) -> Vector {
        match &self.conjugation {
            Some(s) => s.mul_vec(&vconj(v)),
            None => vconj(v),
        }
    }
    pub fn sigma_space(&self, s: &Subspace) -> Subspace {
        s.map(self.dim(), |v| self.sigma(v))
    }

    /// Matrix of `ad(x)`; column `j` is `[x, e_j]`.
    pub fn ad(&self, x: &[Scalar]) -> Matrix {
        let n = self.dim();
        let cols: Vec<Vector> = (0..n).map(|j| self.bracket(x, &unit(n, j))).collect();
        Matrix::from_cols(n, &cols)
    }

    /// `[a,[b,c]] + [b,[c,a]] + [c,[a,b]]`
    pub fn jacobiator(&self, a: &[Scalar], b: &[Scalar], c: &[Scalar]) -> Vector {
        let t1 = self.bracket(a, &self.bracket(b, c));
        let t2 = self.bracket(b, &self.bracket(c, a));
        let t3 = self.bracket(c, &self.bracket(a, b));
        t1.iter().zip(&t2).zip(&t3).map(|((x, y), z)| x + y + z).collect()
    }

    pub fn validate(&self) -> Validation {
        let n = self.dim();
        let mut antisymmetric = true;
        for i in 0..n {
            for j in 0..n {
                let neg: Vector = self.structure(j, i).iter().map(|c| -c).collect();
                if *self.structure(i, j) != neg {
                    antisymmetric = false;
                }
            }
        }
        let mut jacobi_violation = None;
        'outer: for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let jac = self.jacobiator(&unit(n, i), &unit(n, j), &unit(n, k));
                    if !is_zero_vec(&jac) {
                        jacobi_violation = Some(((i, j, k), jac));
                        break 'outer;
                    }
                }
            }
        }
        let conjugation_violation = self.conjugation.as_ref().and_then(|s| {
            if s.mul(&s.conj()) != Matrix::identity(n) {
                return Some("sigma is not an involution".to_string());
            }
            for i in 0..n {
                for j in i + 1..n {
                    let lhs = self.sigma(self.structure(i, j));
                    let rhs = self.bracket(&self.sigma(&unit(n, i)), &self.sigma(&unit(n, j)));
                    if lhs != rhs {
                        return Some(alloc::format!(
                            "sigma does not preserve [{}, {}]",
                            self.labels[i], self.labels[j]
                        ));
                    }
                }
            }
            None
        });
        Validation { antisymmetric, jacobi_violation, conjugation_violation }
    }

    /// Complexification with `σ` = entrywise conjugation in the real basis.
    pub fn complexify(&self) -> Result<LieAlgebra> {
        if self.field != Field::Q {
            return Err(Error::Input("algebra is already complex".into()));
        }
        let mut out = self.clone();
        out.field = Field::Qi;
        out.conjugation = Some(Matrix::identity(self.dim()));
        Ok(out)
    }

    /// Smallest bracket-closed subspace containing `gens`, and whether the
    /// span of `gens` was already closed.
    pub fn subalgebra_closure(&self, gens: &[Vector]) -> (Subspace, bool) {
        let n = self.dim();
        let start = Subspace::span(n, gens);
        let mut cur = start.clone();
        loop {
            let basis = cur.basis().to_vec();
            let mut all = basis.clone();
            for (a, x) in basis.iter().enumerate() {
                for y in &basis[a + 1..] {
                    all.push(self.bracket(x, y));
                }
            }
            let next = Subspace::span(n, &all);
            if next == cur {
                let closed = cur == start;
                return (cur, closed);
            }
            cur = next;
        }
    }

    pub fn is_subalgebra(&self, s: &Subspace) -> bool {
        let b = s.basis();
        b.iter().enumerate().all(|(a, x)| b[a + 1..].iter().all(|y| s.contains(&self.bracket(x, y))))
    }

    /// `[A, B] = span{[a, b]}`
    pub fn bracket_spaces(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let mut all = Vec::new();
        for x in a.basis() {
            for y in b.basis() {
                all.push(self.bracket(x, y));
            }
        }
        Subspace::span(self.dim(), &all)
    }

    /// The algebra on a new basis `new_basis` (vectors in the old basis),
    /// which must span a subalgebra. Conjugation carries over when the span
    /// is σ-stable.
    pub fn restrict(&self, new_basis: &[Vector], labels: &[&str]) -> Result<LieAlgebra> {
        let n = self.dim();
        let m = new_basis.len();
        if labels.len() != m {
            return Err(Error::Input("label count does not match basis".into()));
        }
        let basis_mat = Matrix::from_cols(n, new_basis);
        if basis_mat.rank() != m {
            return Err(Error::Input("new basis is linearly dependent".into()));
        }
        let coords = |v: &[Scalar]| -> Result<Vector> {
            basis_mat
                .solve(v)
                .ok_or_else(|| Error::Input("span of the new basis is not bracket-closed".into()))
        };
        let field = if new_basis.iter().flatten().all(Scalar::is_real) && self.field == Field::Q {
            Field::Q
        } else {
            Field::Qi
        };
        let mut out = LieAlgebra::abelian(labels, field);
        for i in 0..m {
            for j in i + 1..m {
                let c = coords(&self.bracket(&new_basis[i], &new_basis[j]))?;
                out.set_bracket(i, j, c)?;
            }
        }
        if self.conjugation.is_some() || self.field == Field::Q {
            let cols: Option<Vec<Vector>> = new_basis.iter().map(|b| basis_mat.solve(&self.sigma(b))).collect();
            if let Some(cols) = cols {
                out.conjugation = Some(Matrix::from_cols(m, &cols));
            }
        }
        Ok(out)
    }

    /// Eigen-decomposition of `ad(x)` over Q(i).
    pub fn ad_spectrum(&self, x: &[Scalar]) -> Result<Vec<Eigen>> {
        spectrum(&self.ad(x))
    }
}

/// An eigenvalue with algebraic multiplicity, eigenspace and generalized
/// eigenspace.
#[derive(Clone, Debug, PartialEq)]
pub struct Eigen {
    pub value: Scalar,
    pub multiplicity: usize,
    pub eigenspace: Subspace,
    pub generalized: Subspace,
}

/// Characteristic polynomial `det(λI − A)` by Faddeev–LeVerrier;
/// coefficients listed from λ⁰ up to λⁿ.
pub fn char_poly(a: &Matrix) -> Vec<Scalar> {
    let n = a.rows;
    let mut coeffs = vec![Scalar::zero(); n + 1];
    coeffs[n] = Scalar::one();
    let mut m = Matrix::zeros(n, n, a.field);
    for k in 1..=n {
        // M_k = A M_{k−1} + c_{n−k+1} I
        let mut next = a.mul(&m);
        for d in 0..n {
            let v = next.get(d, d) + &coeffs[n - k + 1];
            next.set(d, d, v);
        }
        let am = a.mul(&next);
        let mut tr = Scalar::zero();
        for d in 0..n {
            tr += am.get(d, d);
        }
        coeffs[n - k] = -(tr / Scalar::int(k as i64));
        m = next;
    }
    coeffs
}

fn eval_poly(c: &[Scalar], x: &Scalar) -> Scalar {
    let mut acc = Scalar::zero();
    for k in (0..c.len()).rev() {
        acc = &(&acc * x) + &c[k];
    }
    acc
}

/// Divides by `(λ − r)`; `r` must be a root.
fn deflate(c: &[Scalar], r: &Scalar) -> Vec<Scalar> {
    let n = c.len() - 1;
    let mut q = vec![Scalar::zero(); n];
    let mut carry = Scalar::zero();
    for k in (1..=n).rev() {
        carry = &c[k] + &(&carry * r);
        q[k - 1] = carry.clone();
    }
    q
}

fn trim(c: &mut Vec<Scalar>) {
    while c.len() > 1 && c.last().unwrap().is_zero() {
        c.pop();
    }
}

/// Remainder of `a` modulo `b` (both low→high, `b` nonzero).
fn poly_rem(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = b[db].inv().expect("nonzero leading coefficient");
    while r.len() > db && !(r.len() == 1 && r[0].is_zero()) {
        let dr = r.len() - 1;
        let f = &r[dr] * &lead_inv;
        for k in 0..=db {
            let v = &r[dr - db + k] - &(&f * &b[k]);
            r[dr - db + k] = v;
        }
        r.pop();
        if r.is_empty() {
            r.push(Scalar::zero());
            break;
        }
        trim(&mut r);
    }
    r
}

/// Exact quotient `a / b`.
fn poly_div(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    let n = r.len() - 1;
    let mut q = vec![Scalar::zero(); n - db + 1];
    let lead_inv = b[db].inv().unwrap();
    for k in (0..=n - db).rev() {
        let f = &r[k + db] * &lead_inv;
        for t in 0..=db {
            let v = &r[k + t] - &(&f * &b[t]);
            r[k + t] = v;
        }
        q[k] = f;
    }
    q
}

fn poly_gcd(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let (mut x, mut y) = (a.to_vec(), b.to_vec());
    trim(&mut x);
    trim(&mut y);
    while !(y.len() == 1 && y[0].is_zero()) {
        let r = poly_rem(&x, &y);
        x = y;
        y = r;
    }
    x
}

#[derive(Clone, Copy)]
struct C64(f64, f64);

impl C64 {
    fn add(self, o: C64) -> C64 {
        C64(self.0 + o.0, self.1 + o.1)
    }
    fn sub(self, o: C64) -> C64 {
        C64(self.0 - o.0, self.1 - o.1)
    }
    fn mul(self, o: C64) -> C64 {
        C64(self.0 * o.0 - self.1 * o.1, self.0 * o.1 + self.1 * o.0)
    }
    fn div(self, o: C64) -> C64 {
        let d = o.0 * o.0 + o.1 * o.1;
        C64((self.0 * o.0 + self.1 * o.1) / d, (self.1 * o.0 - self.0 * o.1) / d)
    }
}

fn round_to_bigint(x: f64) -> Option<BigInt> {
    if !x.is_finite() || x.abs() > 9.0e18 {
        return None;
    }
    let r = if x >= 0.0 { (x + 0.5) as i64 } else { (x - 0.5) as i64 };
    Some(BigInt::from(r))
}

/// Durand–Kerner approximation of the roots of a squarefree monic
/// polynomial (coefficients low→high, last is 1).
fn approx_roots(monic: &[C64]) -> Vec<C64> {
    let n = monic.len() - 1;
    let radius = 1.0 + monic[..n].iter().fold(0.0f64, |m, c| {
        let a = c.0.abs() + c.1.abs();
        if a > m { a } else { m }
    });
    let seed = C64(0.4, 0.9);
    let mut z: Vec<C64> = Vec::with_capacity(n);
    let mut p = C64(radius.min(1.0e6) / 2.0, 0.0);
    for _ in 0..n {
        z.push(p);
        p = p.mul(seed);
    }
    let eval = |x: C64| monic.iter().rev().fold(C64(0.0, 0.0), |acc, c| acc.mul(x).add(*c));
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let mut den = C64(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    den = den.mul(z[i].sub(z[j]));
                }
            }
            let step = eval(z[i]).div(den);
            if step.0.is_finite() && step.1.is_finite() {
                z[i] = z[i].sub(step);
                let s = step.0.abs() + step.1.abs();
                if s > moved {
                    moved = s;
                }
            }
        }
        if moved < 1.0e-14 {
            break;
        }
    }
    z
}

/// All Gaussian-rational roots of a polynomial (coefficients from degree 0),
/// with multiplicity. Returns the unsplit remainder degree too.
///
/// Candidates come from a floating-point pass over the squarefree part;
/// every reported root is verified exactly.
pub fn gaussian_rational_roots(coeffs: &[Scalar]) -> (Vec<Scalar>, usize) {
    let mut c: Vec<Scalar> = coeffs.to_vec();
    trim(&mut c);
    let mut roots = Vec::new();
    while c.len() > 1 && c[0].is_zero() {
        roots.push(Scalar::zero());
        c.remove(0);
    }
    if c.len() <= 1 {
        return (roots, 0);
    }
    let deriv: Vec<Scalar> = (1..c.len()).map(|k| &c[k] * &Scalar::int(k as i64)).collect();
    let g = poly_gcd(&c, &deriv);
    let sqf = if g.len() > 1 { poly_div(&c, &g) } else { c.clone() };
    // Gaussian-integer coefficients; roots times the leading coefficient
    // are Gaussian integers
    let mut den = BigInt::one();
    for x in &sqf {
        den = den.lcm(x.re.denom()).lcm(x.im.denom());
    }
    let den = Scalar::from_bigint(den);
    let ints: Vec<Scalar> = sqf.iter().map(|x| x * &den).collect();
    let lead = ints.last().unwrap().clone();
    let lead_inv = lead.inv().unwrap();
    let monic: Vec<C64> = ints
        .iter()
        .map(|x| {
            let y = x * &lead_inv;
            C64(y.re.to_f64().unwrap_or(f64::NAN), y.im.to_f64().unwrap_or(f64::NAN))
        })
        .collect();
    let lead_f = C64(lead.re.to_f64().unwrap_or(f64::NAN), lead.im.to_f64().unwrap_or(f64::NAN));
    let mut rest = c;
    for z in approx_roots(&monic) {
        let mu = z.mul(lead_f);
        let (Some(a), Some(b)) = (round_to_bigint(mu.0), round_to_bigint(mu.1)) else { continue };
        let cand = &Scalar::from_parts(a.into(), b.into()) / &lead;
        while rest.len() > 1 && eval_poly(&rest, &cand).is_zero() {
            rest = deflate(&rest, &cand);
            roots.push(cand.clone());
        }
    }
    (roots, rest.len() - 1)
}

/// Eigen-decomposition of a square matrix; errors when the characteristic
/// polynomial has roots outside Q(i).
pub fn spectrum(a: &Matrix) -> Result<Vec<Eigen>> {
    let n = a.rows;
    let cp = char_poly(a);
    let (roots, rest) = gaussian_rational_roots(&cp);
    if rest > 0 {
        return Err(Error::NotSplit(alloc::format!("{rest} roots outside Q(i)")));
    }
    let mut mult: BTreeMap<Scalar, usize> = BTreeMap::new();
    for r in roots {
        *mult.entry(r).or_default() += 1;
    }
    let mut out = Vec::new();
    for (value, m) in mult {
        let mut shifted = a.clone();
        for d in 0..n {
            let v = shifted.get(d, d) - &value;
            shifted.set(d, d, v);
        }
        let eigenspace = shifted.nullspace();
        let mut power = shifted.clone();
        for _ in 1..m {
            power = power.mul(&shifted);
        }
        let generalized = power.nullspace();
        out.push(Eigen { value, multiplicity: m, eigenspace, generalized });
    }
    Ok(out)
}

/// Integer degree for each basis vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grading {
    pub degrees: Vec<i32>,
}

impl Grading {
    pub fn new(degrees: Vec<i32>) -> Self {
        Grading { degrees }
    }
    /// First basis pair whose bracket leaves degree `p + q`.
    pub fn violation(&self, alg: &LieAlgebra) -> Option<(usize, usize)> {
        let n = alg.dim();
        for i in 0..n {
            for j in i + 1..n {
                let target = self.degrees[i] + self.degrees[j];
                let s = alg.structure(i, j);
                if s.iter().enumerate().any(|(k, c)| !c.is_zero() && self.degrees[k] != target) {
                    return Some((i, j));
                }
            }
        }
        None
    }
    pub fn indices(&self, p: i32) -> Vec<usize> {
        (0..self.degrees.len()).filter(|&k| self.degrees[k] == p).collect()
    }
    pub fn component(&self, p: i32) -> Subspace {
        let n = self.degrees.len();
        Subspace::span(n, &self.indices(p).into_iter().map(|k| unit(n, k)).collect::<Vec<_>>())
    }
    pub fn min(&self) -> i32 {
        self.degrees.iter().copied().min().unwrap_or(0)
    }
    pub fn max(&self) -> i32 {
        self.degrees.iter().copied().max().unwrap_or(0)
    }
    /// The filtration `g^p = ⊕_{j ≥ p} g_j`.
    pub fn filtration(&self) -> Filtration {
        let n = self.degrees.len();
        let (lo, hi) = (self.min(), self.max());
        let terms = (lo..=hi)
            .map(|p| {
                let v: Vec<Vector> = (0..n).filter(|&k| self.degrees[k] >= p).map(|k| unit(n, k)).collect();
                Subspace::span(n, &v)
            })
            .collect();
        Filtration { p_min: lo, terms }
    }
    /// Degree of a homogeneous vector, `None` if inhomogeneous or zero.
    pub fn degree_of(&self, v: &[Scalar]) -> Option<i32> {
        let mut d = None;
        for (k, c) in v.iter().enumerate() {
            if !c.is_zero() {
                match d {
                    None => d = Some(self.degrees[k]),
                    Some(e) if e != self.degrees[k] => return None,
                    _ => {}
                }
            }
        }
        d
    }
}

/// Decreasing filtration `g^{p_min} = g ⊇ … ⊇ g^{p_max} ⊋ 0`; terms above
/// `p_max` are zero and below `p_min` are the whole space.
#[derive(Clone, Debug, PartialEq)]
pub struct Filtration {
    pub p_min: i32,
    pub terms: Vec<Subspace>,
}

impl Filtration {
    pub fn p_max(&self) -> i32 {
        self.p_min + self.terms.len() as i32 - 1
    }
    pub fn ambient(&self) -> usize {
        self.terms[0].ambient()
    }
    pub fn get(&self, p: i32) -> Subspace {
        if p < self.p_min {
            Subspace::full(self.ambient())
        } else if p > self.p_max() {
            Subspace::zero(self.ambient())
        } else {
            self.terms[(p - self.p_min) as usize].clone()
        }
    }
    pub fn is_decreasing(&self) -> bool {
        self.terms.windows(2).all(|w| w[0].contains_space(&w[1]))
    }
    /// First `(p, q)` with `[g^p, g^q] ⊄ g^{p+q}`.
    pub fn compatibility_violation(&self, alg: &LieAlgebra) -> Option<(i32, i32)> {
        for p in self.p_min..=self.p_max() {
            for q in p..=self.p_max() {
                let br = alg.bracket_spaces(&self.get(p), &self.get(q));
                if !self.get(p + q).contains_space(&br) {
                    return Some((p, q));
                }
            }
        }
        None
    }
    pub fn dims(&self) -> Vec<usize> {
        self.terms.iter().map(Subspace::dim).collect()
    }
}

/// `gr(g)` on echelon complements `g_p ⊕ g^{p+1} = g^p`, labels `g{p}_{i}`.
/// Also returns the chosen lifts in the original basis.
pub fn graded_from_filtration(alg: &LieAlgebra, f: &Filtration) -> Result<(LieAlgebra, Grading, Vec<Vector>)> {
    if !f.is_decreasing() || f.terms[0].dim() != alg.dim() {
        return Err(Error::Filtration("terms must decrease from the whole algebra".into()));
    }
    if let Some((p, q)) = f.compatibility_violation(alg) {
        return Err(Error::Filtration(alloc::format!("[g^{p}, g^{q}] not inside g^{}", p + q)));
    }
    let n = alg.dim();
    let mut lifts = Vec::new();
    let mut degrees = Vec::new();
    let mut labels = Vec::new();
    for p in f.p_min..=f.p_max() {
        let comp = f.get(p).complement_in(&f.get(p + 1));
        for (i, v) in comp.into_iter().enumerate() {
            labels.push(alloc::format!("g{p}_{i}"));
            degrees.push(p);
            lifts.push(v);
        }
    }
    let basis_mat = Matrix::from_cols(n, &lifts);
    let label_refs: Vec<&str> = labels.iter().map(String::as_str).collect();
    let mut gr = LieAlgebra::abelian(&label_refs, alg.field());
    for i in 0..n {
        for j in i + 1..n {
            let target = degrees[i] + degrees[j];
            let c = basis_mat.solve(&alg.bracket(&lifts[i], &lifts[j])).expect("lifts form a basis");
            let c: Vector = c.into_iter().enumerate().map(|(k, x)| if degrees[k] == target { x } else { Scalar::zero() }).collect();
            if gr.field == Field::Q && c.iter().any(|x| !x.is_real()) {
                gr.field = Field::Qi;
            }
            gr.set_bracket(i, j, c)?;
        }
    }
    Ok((gr, Grading::new(degrees), lifts))
}

/// The grading derivation `v ↦ p·v` on `g_p` as a vector of the algebra,
/// when one exists (solves `ad(E) = grading` on the whole algebra).
pub fn find_grading_element(alg: &LieAlgebra, g: &Grading) -> Option<Vector> {
    let n = alg.dim();
    // unknown E = Σ x_k e_k, conditions [E, e_j] = deg(j) e_j
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for j in 0..n {
        for out in 0..n {
            rows.push((0..n).map(|k| alg.structure(k, j)[out].clone()).collect::<Vector>());
            rhs.push(if out == j { Scalar::int(g.degrees[j] as i64) } else { Scalar::zero() });
        }
    }
    Matrix::from_rows(n, &rows).solve(&rhs)
}

/// `Σ cᵢ vᵢ` with vectors named by labels.
pub fn lin(alg: &LieAlgebra, terms: Terms<'_>) -> Vector {
    alg.vector(terms).expect("valid labels")
}

/// Span of a list of vectors in the algebra.
pub fn span(alg: &LieAlgebra, vs: &[Vector]) -> Subspace {
    Subspace::span(alg.dim(), vs)
}

/// Expresses `v` as a string `c·label + …` for reports.
pub fn show(alg: &LieAlgebra, v: &[Scalar]) -> String {
    let parts: Vec<String> = v
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| {
            if c.is_one() {
                alg.labels()[k].clone()
            } else if !c.is_real() && !c.re.is_zero() {
                alloc::format!("({c})*{}", alg.labels()[k])
            } else {
                alloc::format!("{c}*{}", alg.labels()[k])
            }
        })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// Linear combination of basis vectors with given coefficients.
pub fn from_coords(basis: &[Vector], coeffs: &[Scalar], n: usize) -> Vector {
    combine(coeffs, basis, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn heis() -> LieAlgebra {
        LieAlgebra::from_table(&["e", "a", "b"], Field::Q, &[("a", "b", &[("e", "1")])]).unwrap()
    }

    fn sl2() -> LieAlgebra {
        LieAlgebra::from_table(
            &["h", "x", "y"],
            Field::Q,
            &[("h", "x", &[("x", "2")]), ("h", "y", &[("y", "-2")]), ("x", "y", &[("h", "1")])],
        )
        .unwrap()
    }

    #[test]
    fn heisenberg_validates() {
        assert!(heis().validate().ok());
    }

    #[test]
    fn broken_jacobi_is_reported() {
        let bad = LieAlgebra::from_table(
            &["h", "x", "y"],
            Field::Q,
            &[("h", "x", &[("x", "2")]), ("h", "y", &[("y", "-3")]), ("x", "y", &[("h", "1")])],
        )
        .unwrap();
        let v = bad.validate();
        assert!(!v.ok());
        assert!(v.jacobi_violation.is_some());
    }

    #[test]
    fn complexify_rejects_complex_input() {
        let c = heis().complexify().unwrap();
        assert_eq!(c.field(), Field::Qi);
        assert!(c.validate().ok());
        assert!(c.complexify().is_err());
    }

    #[test]
    fn spectrum_of_sl2_h() {
        let g = sl2();
        let sp = g.ad_spectrum(&g.basis_vector("h").unwrap()).unwrap();
        let vals: Vec<String> = sp.iter().map(|e| e.value.to_string()).collect();
        assert_eq!(vals, ["-2", "0", "2"]);
        for e in &sp {
            for v in e.eigenspace.basis() {
                assert_eq!(g.bracket(&g.basis_vector("h").unwrap(), v), crate::field::vscale(&e.value, v));
            }
        }
        let zero = g.ad_spectrum(&zeros(3)).unwrap();
        assert_eq!(zero.len(), 1);
        assert_eq!(zero[0].eigenspace.dim(), 3);
    }

    #[test]
    fn rotation_has_imaginary_spectrum_and_irrational_fails() {
        let rot = Matrix::from_rows(2, &[vec![Scalar::zero(), Scalar::int(-1)], vec![Scalar::int(1), Scalar::zero()]]);
        let sp = spectrum(&rot).unwrap();
        assert_eq!(sp.len(), 2);
        let sqrt2 = Matrix::from_rows(2, &[vec![Scalar::zero(), Scalar::int(2)], vec![Scalar::int(1), Scalar::zero()]]);
        assert!(matches!(spectrum(&sqrt2), Err(Error::NotSplit(_))));
        let half = Matrix::from_rows(1, &[vec![Scalar::frac(3, 7)]]);
        assert_eq!(spectrum(&half).unwrap()[0].value, Scalar::frac(3, 7));
    }

    #[test]
    fn closure_of_x_and_y_is_sl2() {
        let g = sl2();
        let (s, closed) = g.subalgebra_closure(&[g.basis_vector("x").unwrap(), g.basis_vector("y").unwrap()]);
        assert_eq!(s.dim(), 3);
        assert!(!closed);
        let (s, closed) = g.subalgebra_closure(&[g.basis_vector("x").unwrap()]);
        assert_eq!(s.dim(), 1);
        assert!(closed);
    }

    #[test]
    fn gr_of_grading_filtration_is_the_same_algebra() {
        let g = heis();
        let grading = Grading::new(vec![-2, -1, -1]);
        assert!(grading.violation(&g).is_none());
        let (gr, deg, _) = graded_from_filtration(&g, &grading.filtration()).unwrap();
        assert!(gr.validate().ok());
        assert_eq!(deg.degrees, vec![-2, -1, -1]);
        let a = gr.index("g-1_0").unwrap();
        let b = gr.index("g-1_1").unwrap();
        assert!(!is_zero_vec(gr.structure(a, b)));
    }

    #[test]
    fn incompatible_filtration_is_rejected() {
        let g = sl2();
        let n = 3;
        // g ⊇ span{x, y}: [x, y] = h escapes degree 2
        let f = Filtration {
            p_min: 0,
            terms: vec![Subspace::full(n), Subspace::span(n, &[unit(n, 1), unit(n, 2)])],
        };
        assert!(matches!(graded_from_filtration(&g, &f), Err(Error::Filtration(_))));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn closure_is_idempotent_and_sigma_equivariant(a in -2i64..3, b in -2i64..3, c in -2i64..3, d in -2i64..3) {
            let g = sl2().complexify().unwrap();
            let v = vec![Scalar::int(a), Scalar::complex(b, 1, c, 1), Scalar::int(d)];
            let (s, _) = g.subalgebra_closure(&[v.clone()]);
            let (s2, closed) = g.subalgebra_closure(s.basis());
            prop_assert_eq!(&s2, &s);
            prop_assert!(closed);
            let (ss, _) = g.subalgebra_closure(&[g.sigma(&v)]);
            prop_assert_eq!(g.sigma_space(&s), ss);
        }
    }
}
