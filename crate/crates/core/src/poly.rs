//! Sparse multivariate polynomials with Q(i) coefficients.
//!
//! Variables are positional; callers keep their own name lists and pass them
//! to [`Poly::fmt_with`] for display.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use crate::field::Scalar;

pub type Monomial = Vec<u32>;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }
    pub fn constant(nvars: usize, c: Scalar) -> Self {
        let mut p = Poly::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }
    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, Scalar::one())
    }
    pub fn var(nvars: usize, k: usize) -> Self {
        let mut e = vec![0; nvars];
        e[k] = 1;
        Poly::monomial(e, Scalar::one())
    }
    pub fn monomial(exps: Monomial, c: Scalar) -> Self {
        let mut p = Poly::zero(exps.len());
        p.add_term(exps, c);
        p
    }
    pub fn nvars(&self) -> usize {
        self.nvars
    }
    pub fn terms(&self) -> &BTreeMap<Monomial, Scalar> {
        &self.terms
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn len(&self) -> usize {
        self.terms.len()
    }
    pub fn add_term(&mut self, exps: Monomial, c: Scalar) {
        assert_eq!(exps.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(x) => {
                *x += &c;
                if x.is_zero() {
                    self.terms.remove(&exps);
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }
    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect() }
    }
    pub fn conj(&self) -> Poly {
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(e, x)| (e.clone(), x.conj())).collect() }
    }
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&k| k == 0))
    }
    pub fn constant_term(&self) -> Scalar {
        self.terms.get(&vec![0; self.nvars]).cloned().unwrap_or_else(Scalar::zero)
    }
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }
    pub fn degree_in(&self, k: usize) -> u32 {
        self.terms.keys().map(|e| e[k]).max().unwrap_or(0)
    }
    /// Indices of variables that actually occur.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&k| self.degree_in(k) > 0).collect()
    }
    /// Coefficient of `x_k^d` as a polynomial in the remaining variables.
    pub fn coeff_in(&self, k: usize, d: u32) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[k] == d {
                let mut e2 = e.clone();
                e2[k] = 0;
                out.add_term(e2, c.clone());
            }
        }
        out
    }
    pub fn derivative(&self, k: usize) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[k] > 0 {
                let mut e2 = e.clone();
                e2[k] -= 1;
                out.add_term(e2, c * &Scalar::int(e[k] as i64));
            }
        }
        out
    }
    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.nvars);
        let mut acc = Scalar::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t = &t * &x.pow(k);
                }
            }
            acc += &t;
        }
        acc
    }
    /// Replaces every variable `x_k` by `subs[k]`; the result lives in the
    /// ring of the substituted polynomials.
    pub fn compose(&self, subs: &[Poly]) -> Poly {
        assert_eq!(subs.len(), self.nvars);
        let n = subs.first().map(|p| p.nvars).unwrap_or(0);
        let mut powers: Vec<Vec<Poly>> = subs.iter().map(|p| vec![Poly::one(n), p.clone()]).collect();
        let mut out = Poly::zero(n);
        for (e, c) in &self.terms {
            let mut t = Poly::constant(n, c.clone());
            for (k, &d) in e.iter().enumerate() {
                if d == 0 {
                    continue;
                }
                while powers[k].len() <= d as usize {
                    let next = &powers[k][powers[k].len() - 1] * &subs[k];
                    powers[k].push(next);
                }
                t = &t * &powers[k][d as usize];
            }
            out = &out + &t;
        }
        out
    }
    /// Partial evaluation: fixes the variables listed in `fix`.
    pub fn substitute(&self, fix: &[(usize, Scalar)]) -> Poly {
        let subs: Vec<Poly> = (0..self.nvars)
            .map(|k| match fix.iter().find(|(j, _)| *j == k) {
                Some((_, v)) => Poly::constant(self.nvars, v.clone()),
                None => Poly::var(self.nvars, k),
            })
            .collect();
        self.compose(&subs)
    }
    /// Re-embeds into a ring with `nvars` variables; variable `k` goes to
    /// position `map[k]`.
    pub fn remap(&self, nvars: usize, map: &[usize]) -> Poly {
        let mut out = Poly::zero(nvars);
        for (e, c) in &self.terms {
            let mut e2 = vec![0; nvars];
            for (k, &d) in e.iter().enumerate() {
                e2[map[k]] += d;
            }
            out.add_term(e2, c.clone());
        }
        out
    }
    fn leading(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }
    /// Exact quotient `self / d`, or `None` when `d` does not divide.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (dl, dc) = d.leading()?;
        let dl = dl.clone();
        let dinv = dc.inv()?;
        let mut rem = self.clone();
        let mut q = Poly::zero(self.nvars);
        while let Some((rl, rc)) = rem.leading() {
            if rl.iter().zip(&dl).any(|(a, b)| a < b) {
                return None;
            }
            let e: Monomial = rl.iter().zip(&dl).map(|(a, b)| a - b).collect();
            let c = rc * &dinv;
            let t = Poly::monomial(e, c);
            rem = &rem - &(&t * d);
            q = &q + &t;
        }
        Some(q)
    }
    pub fn fmt_with(&self, names: &[&str]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &d)| d > 0)
                .map(|(v, &d)| if d == 1 { names[v].into() } else { alloc::format!("{}^{}", names[v], d) })
                .collect();
            let coeff = alloc::format!("{c}");
            let needs_paren = !c.is_real() && !c.re.is_zero();
            let coeff = if needs_paren { alloc::format!("({coeff})") } else { coeff };
            if k > 0 {
                out.push_str(" + ");
            }
            if mono.is_empty() {
                out.push_str(&coeff);
            } else if c.is_one() {
                out.push_str(&mono.join("*"));
            } else {
                out.push_str(&alloc::format!("{}*{}", coeff, mono.join("*")));
            }
        }
        out
    }
}

impl<'a, 'b> Add<&'b Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, o: &'b Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<'a, 'b> Sub<&'b Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, o: &'b Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl<'a, 'b> Mul<&'b Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, o: &'b Poly) -> Poly {
        assert_eq!(self.nvars, o.nvars);
        let mut out = Poly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Monomial = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&Scalar::int(-1))
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, o: Poly) -> Poly {
        &self + &o
    }
}
impl Sub for Poly {
    type Output = Poly;
    fn sub(self, o: Poly) -> Poly {
        &self - &o
    }
}
impl Mul for Poly {
    type Output = Poly;
    fn mul(self, o: Poly) -> Poly {
        &self * &o
    }
}

/// Outcome of [`eliminate`]: solved variables (in solving order, each
/// expressed through unsolved ones) and the equations left over.
#[derive(Clone, Debug, PartialEq)]
pub struct Elimination {
    pub assignments: Vec<(usize, Poly)>,
    pub residue: Vec<Poly>,
}

impl Elimination {
    /// Applies the assignments to `p`.
    pub fn reduce(&self, p: &Poly) -> Poly {
        let n = p.nvars;
        let mut subs: Vec<Poly> = (0..n).map(|k| Poly::var(n, k)).collect();
        for (v, e) in &self.assignments {
            subs[*v] = e.clone();
        }
        p.compose(&subs)
    }
    /// Whether `p` vanishes on the solution set, as far as can be decided
    /// by substitution followed by exact division by a residue equation.
    pub fn implies(&self, p: &Poly) -> bool {
        let r = self.reduce(p);
        r.is_zero() || self.residue.iter().any(|d| r.div_exact(d).is_some())
    }
}

fn monomial_order(a: &Monomial, b: &Monomial) -> core::cmp::Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    db.cmp(&da).then_with(|| b.cmp(a))
}

/// Row-reduces equations as vectors over their monomials, highest degree
/// first, so low-degree consequences surface.
fn linear_reduce(eqs: &[Poly]) -> Vec<Poly> {
    let nv = match eqs.first() {
        Some(p) => p.nvars,
        None => return Vec::new(),
    };
    let mut monos: Vec<Monomial> = eqs.iter().flat_map(|p| p.terms.keys().cloned()).collect();
    monos.sort_by(monomial_order);
    monos.dedup();
    let mut rows: Vec<Vec<Scalar>> = eqs
        .iter()
        .map(|p| monos.iter().map(|m| p.terms.get(m).cloned().unwrap_or_else(Scalar::zero)).collect())
        .collect();
    let rank = crate::field::rref_in_place(&mut rows, monos.len()).len();
    rows.truncate(rank);
    rows.iter()
        .map(|r| {
            let mut p = Poly::zero(nv);
            for (m, c) in monos.iter().zip(r) {
                p.add_term(m.clone(), c.clone());
            }
            p
        })
        .collect()
}

/// Linear-first elimination. Repeatedly: row-reduce over monomials, solve
/// an equation of the form `c·v + r` (`c` constant, `r` free of `v`), or set
/// `v = 0` when an equation is a single term whose only variable outside
/// `nonzero` is `v`. Stops when neither applies.
pub fn eliminate(eqs: &[Poly], nonzero: &[usize]) -> Elimination {
    let mut cur: Vec<Poly> = eqs.iter().filter(|p| !p.is_zero()).cloned().collect();
    let mut assignments: Vec<(usize, Poly)> = Vec::new();
    loop {
        cur = linear_reduce(&cur);
        let Some(nv) = cur.first().map(Poly::nvars) else { break };
        let mut pick: Option<(usize, Poly)> = None;
        'search: for p in cur.iter().rev() {
            for v in 0..nv {
                if p.degree_in(v) != 1 {
                    continue;
                }
                let c = p.coeff_in(v, 1);
                if c.is_constant() && !c.is_zero() {
                    let rest = p.coeff_in(v, 0);
                    let expr = rest.scale(&-c.constant_term().inv().unwrap());
                    pick = Some((v, expr));
                    break 'search;
                }
            }
        }
        if pick.is_none() {
            for p in cur.iter().rev() {
                if p.len() != 1 {
                    continue;
                }
                let free: Vec<usize> = p.support_vars().into_iter().filter(|v| !nonzero.contains(v)).collect();
                if free.len() == 1 {
                    pick = Some((free[0], Poly::zero(nv)));
                    break;
                }
            }
        }
        let Some((v, expr)) = pick else { break };
        let mut subs: Vec<Poly> = (0..nv).map(|k| Poly::var(nv, k)).collect();
        subs[v] = expr.clone();
        for (_, e) in assignments.iter_mut() {
            *e = e.compose(&subs);
        }
        assignments.push((v, expr));
        cur = cur.iter().map(|p| p.compose(&subs)).filter(|p| !p.is_zero()).collect();
    }
    Elimination { assignments, residue: cur }
}

/// Rank of a polynomial matrix over the field of rational functions, by
/// fraction-free elimination. Rows are consumed.
pub fn symbolic_rank(rows: &[Vec<Poly>]) -> usize {
    let mut m = rows.to_vec();
    let Some(cols) = m.first().map(Vec::len) else { return 0 };
    let nv = m[0].first().map(Poly::nvars).unwrap_or(0);
    let mut prev = Poly::one(nv);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&k| !m[k][c].is_zero()) else { continue };
        m.swap(r, p);
        for k in r + 1..m.len() {
            for j in c + 1..cols {
                let num = &(&m[r][c] * &m[k][j]) - &(&m[k][c] * &m[r][j]);
                m[k][j] = num.div_exact(&prev).expect("Bareiss step must divide exactly");
            }
            m[k][c] = Poly::zero(nv);
        }
        prev = m[r][c].clone();
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn x(k: usize) -> Poly {
        Poly::var(3, k)
    }

    #[test]
    fn elimination_solves_triangular_systems() {
        // y − 2x = 0, z − y² = 0
        let eqs = [&x(1) - &x(0).scale(&Scalar::int(2)), &x(2) - &(&x(1) * &x(1))];
        let el = eliminate(&eqs, &[]);
        assert!(el.residue.is_empty());
        assert!(el.implies(&(&x(2) - &(&x(0) * &x(0)).scale(&Scalar::int(4)))));
        // x·y = 0 with y ≠ 0 forces x = 0; (y − 1)·z stays
        let eqs = [&x(0) * &x(1), &(&x(1) - &Poly::one(3)) * &x(2)];
        let el = eliminate(&eqs, &[1]);
        assert_eq!(el.assignments, [(0, Poly::zero(3))]);
        assert_eq!(el.residue.len(), 1);
        assert!(el.implies(&(&(&x(1) * &x(2)) - &x(2))));
        assert!(!el.implies(&x(2)));
    }

    #[test]
    fn basic_identities() {
        let p = &(&x(0) + &x(1)) * &(&x(0) - &x(1));
        let q = &(&x(0) * &x(0)) - &(&x(1) * &x(1));
        assert_eq!(p, q);
        assert_eq!(p.derivative(0), x(0).scale(&Scalar::int(2)));
        assert_eq!(p.eval(&[Scalar::int(3), Scalar::int(2), Scalar::zero()]), Scalar::int(5));
        assert_eq!(p.div_exact(&(&x(0) + &x(1))).unwrap(), &x(0) - &x(1));
        assert!(x(0).div_exact(&x(1)).is_none());
        assert_eq!(p.fmt_with(&["a", "b", "c"]), "a^2 + -1*b^2");
    }

    #[test]
    fn compose_and_substitute() {
        let p = &x(0) * &x(1);
        let sub = p.substitute(&[(1, Scalar::int(3))]);
        assert_eq!(sub, x(0).scale(&Scalar::int(3)));
        let c = p.compose(&[&x(1) + &x(2), x(2), x(0)]);
        assert_eq!(c, &(&x(1) * &x(2)) + &(&x(2) * &x(2)));
    }

    #[test]
    fn symbolic_rank_sees_generic_rank() {
        // [[x, y], [x^2, xy]] has rank 1; [[x, y], [y, x]] has rank 2
        let a = vec![vec![x(0), x(1)], vec![&x(0) * &x(0), &x(0) * &x(1)]];
        assert_eq!(symbolic_rank(&a), 1);
        let b = vec![vec![x(0), x(1)], vec![x(1), x(0)]];
        assert_eq!(symbolic_rank(&b), 2);
    }

    fn poly() -> impl Strategy<Value = Poly> {
        proptest::collection::vec(((0u32..3, 0u32..3, 0u32..2), -4i64..5), 0..5).prop_map(|ts| {
            let mut p = Poly::zero(3);
            for ((a, b, c), k) in ts {
                p.add_term(vec![a, b, c], Scalar::int(k));
            }
            p
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn ring_axioms(a in poly(), b in poly(), c in poly()) {
            prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn leibniz_rule(a in poly(), b in poly(), k in 0usize..3) {
            let lhs = (&a * &b).derivative(k);
            let rhs = &(&a.derivative(k) * &b) + &(&a * &b.derivative(k));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn exact_division_recovers_factor(a in poly(), b in poly()) {
            prop_assume!(!b.is_zero());
            prop_assert_eq!((&a * &b).div_exact(&b), Some(a));
        }
    }
}
