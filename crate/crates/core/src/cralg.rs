//! CR algebras `(g, q)`: Freeman sequence, higher Levi forms, contact
//! filtration and checks of the structural relations between them.
//!
//! Everything is computed inside the complexification `ĝ`, whose
//! conjugation `σ` stands in for the real form.

use alloc::string::String;
use alloc::vec::Vec;

use crate::field::{Matrix, Scalar, Subspace, Vector};
use crate::liealg::{Filtration, LieAlgebra};
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct CrAlgebra {
    pub ghat: LieAlgebra,
    pub q: Subspace,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CrValidation {
    pub q_closed: bool,
    pub sigma_ok: bool,
    pub stab_sigma_stable: bool,
    pub dim_q: usize,
    pub dim_stab: usize,
    pub dim_q_plus_sigma_q: usize,
    pub codim: usize,
}

impl CrValidation {
    pub fn ok(&self) -> bool {
        self.q_closed && self.sigma_ok && self.stab_sigma_stable && self.codim == 1
    }
}

/// `q = q⁻¹ ⊇ q⁰ ⊇ …`, stopping at the first term equal to `ŝtab`
/// (or at a repeated term if that never happens).
#[derive(Clone, Debug, PartialEq)]
pub struct FreemanSequence {
    pub terms: Vec<Subspace>,
    /// Least `k` with `q^{k−1} = ŝtab`; `None` if the sequence stalls
    /// above the stabilizer (holomorphically degenerate).
    pub order: Option<usize>,
}

impl FreemanSequence {
    pub fn dims(&self) -> Vec<usize> {
        self.terms.iter().map(Subspace::dim).collect()
    }
    /// `q^p` for `p ≥ −1`; past the end the sequence is constant.
    pub fn get(&self, p: i32) -> &Subspace {
        let k = ((p + 1).max(0) as usize).min(self.terms.len() - 1);
        &self.terms[k]
    }
}

/// Contact filtration of `ĝ` together with how the downward recursion
/// ended.
#[derive(Clone, Debug, PartialEq)]
pub struct ContactFiltration {
    pub filtration: Filtration,
    /// The downward recursion reached all of `ĝ`.
    pub exhausts: bool,
    /// The upward recursion reached zero.
    pub vanishes: bool,
}

impl ContactFiltration {
    pub fn get(&self, p: i32) -> Subspace {
        self.filtration.get(p)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub ok: bool,
    pub detail: String,
}

fn check(name: &str, ok: bool, detail: String) -> Check {
    Check { name: name.into(), ok, detail }
}

impl CrAlgebra {
    pub fn new(ghat: LieAlgebra, q: Subspace) -> Result<Self> {
        if q.ambient() != ghat.dim() {
            return Err(Error::Input("q does not live in the algebra".into()));
        }
        Ok(CrAlgebra { ghat, q })
    }
    pub fn from_generators(ghat: LieAlgebra, gens: &[Vector]) -> Result<Self> {
        let q = Subspace::span(ghat.dim(), gens);
        CrAlgebra::new(ghat, q)
    }
    pub fn dim(&self) -> usize {
        self.ghat.dim()
    }
    pub fn sigma(&self, s: &Subspace) -> Subspace {
        self.ghat.sigma_space(s)
    }
    pub fn sigma_q(&self) -> Subspace {
        self.sigma(&self.q)
    }
    /// `ŝtab = q ∩ σq`
    pub fn stab(&self) -> Subspace {
        self.q.intersection(&self.sigma_q()).unwrap()
    }
    fn sum(&self, a: &Subspace, b: &Subspace) -> Subspace {
        a.sum(b).unwrap()
    }

    pub fn validate(&self) -> CrValidation {
        let sq = self.sigma_q();
        let stab = self.stab();
        let sum = self.sum(&self.q, &sq);
        let v = self.ghat.validate();
        CrValidation {
            q_closed: self.ghat.is_subalgebra(&self.q),
            sigma_ok: self.ghat.conjugation().is_some() && v.conjugation_violation.is_none(),
            stab_sigma_stable: self.sigma(&stab) == stab,
            dim_q: self.q.dim(),
            dim_stab: stab.dim(),
            dim_q_plus_sigma_q: sum.dim(),
            codim: self.dim() - sum.dim(),
        }
    }

    /// One Freeman step: `{ξ ∈ prev : [ξ, σq] ⊆ prev + σq}`.
    fn freeman_step(&self, prev: &Subspace, sq: &Subspace) -> Subspace {
        let modulus = self.sum(prev, sq);
        let n = self.dim();
        let basis = prev.basis();
        let mut rows: Vec<Vector> = Vec::new();
        for eta in sq.basis() {
            let images: Vec<Vector> = basis.iter().map(|xi| modulus.reduce(&self.ghat.bracket(xi, eta))).collect();
            let m = Matrix::from_cols(n, &images);
            rows.extend(m.row_vecs());
        }
        let coeffs = crate::field::nullspace_rows(&rows, basis.len());
        Subspace::span(
            n,
            &coeffs.basis().iter().map(|c| crate::field::combine(c, basis, n)).collect::<Vec<_>>(),
        )
    }

    pub fn freeman_sequence(&self) -> FreemanSequence {
        let sq = self.sigma_q();
        let stab = self.stab();
        let mut terms = alloc::vec![self.q.clone()];
        loop {
            let last = terms.last().unwrap();
            if *last == stab {
                let order = terms.len() - 1;
                return FreemanSequence { terms, order: Some(order) };
            }
            let next = self.freeman_step(last, &sq);
            if next == *last {
                return FreemanSequence { terms, order: None };
            }
            terms.push(next);
        }
    }

    /// `−[ξ, η]` reduced modulo `q^{p−1} + σq`, as the canonical
    /// representative.
    pub fn higher_levi(&self, p: i32, xi: &[Scalar], eta: &[Scalar]) -> Result<Vector> {
        let fs = self.freeman_sequence();
        let sq = self.sigma_q();
        let modulus = self.sum(fs.get(p - 1), &sq);
        if !modulus.contains(xi) {
            return Err(Error::Input(alloc::format!("xi is not in q^{} + σq", p - 1)));
        }
        if !sq.contains(eta) {
            return Err(Error::Input("eta is not in σq".into()));
        }
        let br: Vector = self.ghat.bracket(xi, eta).iter().map(|c| -c).collect();
        Ok(modulus.reduce(&br))
    }

    /// Nondegeneracy order recomputed from [`Self::higher_levi`]
    /// kernels: `1 + max{p : q^p ≠ ŝtab}`.
    pub fn order_from_levi_kernels(&self) -> Option<usize> {
        let sq = self.sigma_q();
        let stab = self.stab();
        let n = self.dim();
        let mut prev = self.q.clone();
        let mut p = 0i32;
        if prev == stab {
            return Some(0);
        }
        loop {
            // q^p = {ξ ∈ q^{p−1} : L_{p+1}(ξ, η) = 0 for all η ∈ σq}
            let basis = prev.basis().to_vec();
            let mut rows = Vec::new();
            for eta in sq.basis() {
                let imgs: Vec<Vector> =
                    basis.iter().map(|xi| self.higher_levi(p, xi, eta).expect("membership holds")).collect();
                rows.extend(Matrix::from_cols(n, &imgs).row_vecs());
            }
            let ker = crate::field::nullspace_rows(&rows, basis.len());
            let next = Subspace::span(n, &ker.basis().iter().map(|c| crate::field::combine(c, &basis, n)).collect::<Vec<_>>());
            if next == stab {
                return Some(p as usize + 1);
            }
            if next == prev {
                return None;
            }
            prev = next;
            p += 1;
        }
    }

    pub fn contact_filtration(&self) -> ContactFiltration {
        let n = self.dim();
        let g_m1 = self.sum(&self.q, &self.sigma_q());
        let full = Subspace::full(n);
        // downward: ĝ^q = ĝ^{q+1} + [ĝ^{−1}, ĝ^{q+1}]
        let mut down = alloc::vec![g_m1.clone()];
        loop {
            let last = down.last().unwrap();
            let next = self.sum(last, &self.ghat.bracket_spaces(&g_m1, last));
            if next == *last {
                break;
            }
            down.push(next);
        }
        let exhausts = *down.last().unwrap() == full;
        // upward: ĝ^p = {ξ ∈ ĝ^{p−1} : [ξ, ĝ^{−1}] ⊆ ĝ^{p−1}}
        let mut up: Vec<Subspace> = Vec::new();
        let mut prev = g_m1.clone();
        let vanishes = loop {
            let next = self.upward_step(&prev, &g_m1);
            if next.is_zero() {
                break true;
            }
            if next == prev {
                break false;
            }
            up.push(next.clone());
            prev = next;
        };
        let mut terms: Vec<Subspace> = down.into_iter().rev().collect();
        let p_min = -(terms.len() as i32);
        // make sure the lowest stored term is the whole space
        if !exhausts {
            terms.insert(0, full);
        }
        let p_min = if exhausts { p_min } else { p_min - 1 };
        terms.extend(up);
        ContactFiltration { filtration: Filtration { p_min, terms }, exhausts, vanishes }
    }

    fn upward_step(&self, prev: &Subspace, g_m1: &Subspace) -> Subspace {
        let n = self.dim();
        let basis = prev.basis();
        let mut rows = Vec::new();
        for y in g_m1.basis() {
            let imgs: Vec<Vector> = basis.iter().map(|x| prev.reduce(&self.ghat.bracket(x, y))).collect();
            rows.extend(Matrix::from_cols(n, &imgs).row_vecs());
        }
        let ker = crate::field::nullspace_rows(&rows, basis.len());
        Subspace::span(n, &ker.basis().iter().map(|c| crate::field::combine(c, basis, n)).collect::<Vec<_>>())
    }

    /// Checks of the structural relations between the Freeman sequence and
    /// the contact filtration, on this instance.
    pub fn structure_oracle(&self) -> Vec<Check> {
        let n = self.dim();
        let fs = self.freeman_sequence();
        let cf = self.contact_filtration();
        let stab = self.stab();
        let mut out = Vec::new();
        let g = |p: i32| cf.get(p);
        let qq = |p: i32| {
            let q = fs.get(p).clone();
            self.sum(&q, &self.sigma(&q))
        };
        out.push(check(
            "bracket-compatible",
            cf.filtration.compatibility_violation(&self.ghat).is_none(),
            alloc::format!("dims {:?} from p = {}", cf.filtration.dims(), cf.filtration.p_min),
        ));
        out.push(check("g^-2 = g", g(-2).dim() == n, alloc::format!("dim g^-2 = {} of {n}", g(-2).dim())));
        out.push(check("stab in g^0", g(0).contains_space(&stab), alloc::format!("dim stab = {}", stab.dim())));
        for p in [-1, 0] {
            out.push(check(
                &alloc::format!("g^{p} = q^{p} + σq^{p}"),
                g(p) == qq(p),
                alloc::format!("dims {} vs {}", g(p).dim(), qq(p).dim()),
            ));
        }
        let top = cf.filtration.p_max().max(fs.terms.len() as i32);
        for p in 1..=top {
            let lhs = g(p);
            let rhs = qq(p);
            out.push(check(
                &alloc::format!("g^{p} in q^{p} + σq^{p}"),
                rhs.contains_space(&lhs),
                alloc::format!("dims {} vs {}", lhs.dim(), rhs.dim()),
            ));
        }
        // equality flags are informative, not pass/fail
        for p in 1..=top {
            let lhs = self.sum(&g(p), &stab);
            let rhs = qq(p);
            out.push(check(
                &alloc::format!("g^{p} + stab = q^{p} + σq^{p}"),
                true,
                alloc::format!("{}", if lhs == rhs { "equal" } else { "proper inclusion" }),
            ));
        }
        // g^p = {ξ ∈ g^{-1} : [ξ, g^{-1}] ⊆ g^{p-1}} for p ≥ 0
        let g_m1 = g(-1);
        let mut second_form = true;
        for p in 0..=cf.filtration.p_max() + 1 {
            let alt = self.upward_step_from(&g_m1, &g(p - 1), &g_m1);
            if alt != g(p) {
                second_form = false;
            }
        }
        out.push(check("g^p from g^-1 brackets", second_form, String::new()));
        // q^q ∩ ĝ^{q+1} ⊆ q^{q+1}
        let mut freeman_vs_contact = true;
        for p in 0..fs.terms.len() as i32 {
            let inter = fs.get(p).intersection(&g(p + 1)).unwrap();
            if !fs.get(p + 1).contains_space(&inter) {
                freeman_vs_contact = false;
            }
        }
        out.push(check("q^p ∩ g^(p+1) in q^(p+1)", freeman_vs_contact, String::new()));
        let mut real_closed = true;
        for p in 0..fs.terms.len() as i32 {
            if !self.ghat.is_subalgebra(&qq(p)) {
                real_closed = false;
            }
        }
        out.push(check("Re(q^p + σq^p) closed", real_closed, String::new()));
        out
    }

    /// `{ξ ∈ dom : [ξ, with] ⊆ target}`
    fn upward_step_from(&self, dom: &Subspace, target: &Subspace, with: &Subspace) -> Subspace {
        let n = self.dim();
        let basis = dom.basis();
        let mut rows = Vec::new();
        for y in with.basis() {
            let imgs: Vec<Vector> = basis.iter().map(|x| target.reduce(&self.ghat.bracket(x, y))).collect();
            rows.extend(Matrix::from_cols(n, &imgs).row_vecs());
        }
        let ker = crate::field::nullspace_rows(&rows, basis.len());
        Subspace::span(n, &ker.basis().iter().map(|c| crate::field::combine(c, basis, n)).collect::<Vec<_>>())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    /// heis(3) with q = ⟨½(a − i b)⟩
    fn heis_cr() -> CrAlgebra {
        let g = LieAlgebra::from_table(&["e", "a", "b"], Field::Q, &[("a", "b", &[("e", "1")])])
            .unwrap()
            .complexify()
            .unwrap();
        let z = g.vector(&[("a", "1/2"), ("b", "-1/2*i")]).unwrap();
        CrAlgebra::from_generators(g, &[z]).unwrap()
    }

    #[test]
    fn heisenberg_is_levi_nondegenerate() {
        let c = heis_cr();
        let v = c.validate();
        assert!(v.ok(), "{v:?}");
        assert_eq!(v.dim_stab, 0);
        let fs = c.freeman_sequence();
        assert_eq!(fs.dims(), [1, 0]);
        assert_eq!(fs.order, Some(1));
        assert_eq!(c.order_from_levi_kernels(), Some(1));
    }

    #[test]
    fn heisenberg_contact_filtration() {
        let c = heis_cr();
        let cf = c.contact_filtration();
        assert!(cf.exhausts && cf.vanishes);
        assert_eq!(cf.filtration.p_min, -2);
        assert_eq!(cf.filtration.dims(), [3, 2]);
        assert!(cf.get(0).is_zero());
        assert!(c.structure_oracle().iter().all(|k| k.ok));
    }

    #[test]
    fn levi_form_of_sigma_q_vanishes() {
        let c = heis_cr();
        let zb = c.sigma_q().basis()[0].clone();
        let r = c.higher_levi(0, &zb, &zb).unwrap();
        assert!(crate::field::is_zero_vec(&r));
        let e = c.ghat.basis_vector("e").unwrap();
        assert!(c.higher_levi(0, &e, &zb).is_err());
    }
}
