//! Tanaka prolongation of a negatively graded fundamental symbol, the
//! contact algebra of `heis(3)`, its distinguished elements and the
//! `(p, ℓ)` bigrading by `ad(J)`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::field::{combine, is_zero_vec, unit, vsub, zeros, Field, Matrix, Scalar, Subspace, Vector};
use crate::liealg::{spectrum, Grading, LieAlgebra};
use crate::{Error, Result};
use num_traits::Zero;

/// Truncated prolongation `g₋ ⊕ g₀ ⊕ … ⊕ g_d`. Brackets landing above
/// degree `d` are set to zero, so only triples of total degree `≤ d` satisfy
/// Jacobi.
#[derive(Clone, Debug)]
pub struct Prolongation {
    pub algebra: LieAlgebra,
    pub grading: Grading,
    pub depth: i32,
    pub symbol_dim: usize,
}

impl Prolongation {
    pub fn dim_of(&self, p: i32) -> usize {
        self.grading.indices(p).len()
    }
    /// Dimensions from the lowest symbol degree up to `d`.
    pub fn dims(&self) -> Vec<usize> {
        (self.grading.min()..=self.depth).map(|p| self.dim_of(p)).collect()
    }
    pub fn component(&self, p: i32) -> Subspace {
        self.grading.component(p)
    }
    /// First basis triple with nonzero Jacobiator among those whose
    /// pairwise and total degrees stay within the truncation.
    pub fn jacobi_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.algebra.dim();
        let deg = &self.grading.degrees;
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let (a, b, c) = (deg[i], deg[j], deg[k]);
                    if a + b > self.depth || a + c > self.depth || b + c > self.depth || a + b + c > self.depth {
                        continue;
                    }
                    if !is_zero_vec(&self.algebra.jacobiator(&unit(n, i), &unit(n, j), &unit(n, k))) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }
    /// Basis vectors `v` of degree `≥ 0` with `[v, g₋₁] = 0` (must be none).
    pub fn transitivity_violations(&self) -> Vec<usize> {
        let n = self.algebra.dim();
        let minus_one = self.grading.indices(-1);
        (0..n)
            .filter(|&k| self.grading.degrees[k] >= 0)
            .filter(|&k| minus_one.iter().all(|&x| is_zero_vec(self.algebra.structure(k, x))))
            .collect()
    }
}

/// Prolongs `symbol` (all degrees negative, generated in degree −1) up to
/// degree `d`. Basis labels of `g_p` are `g{p}_{i}`.
pub fn tanaka_prolong(symbol: &LieAlgebra, degrees: &[i32], d: i32) -> Result<Prolongation> {
    let nm = symbol.dim();
    if degrees.len() != nm || degrees.iter().any(|&x| x >= 0) {
        return Err(Error::Input("symbol degrees must be negative, one per basis vector".into()));
    }
    let grading = Grading::new(degrees.to_vec());
    if let Some((i, j)) = grading.violation(symbol) {
        return Err(Error::Input(alloc::format!("symbol bracket [{}, {}] breaks the grading", i, j)));
    }
    let gens: Vec<Vector> = grading.indices(-1).into_iter().map(|k| unit(nm, k)).collect();
    if symbol.subalgebra_closure(&gens).0.dim() != nm {
        return Err(Error::Input("symbol is not generated in degree -1".into()));
    }
    let min_deg = grading.min();

    // Block layout: for degree r < 0 the symbol basis indices of degree r;
    // for r ≥ 0 the basis of g_r, each element stored as its action on the
    // symbol basis, value of x ↦ u(x) in block-local coordinates.
    let sym_block: BTreeMap<i32, Vec<usize>> =
        (min_deg..0).map(|r| (r, grading.indices(r))).collect();
    let mut actions: Vec<Vec<Vec<Vector>>> = Vec::new(); // [p][element][x] -> coords
    let block_dim = |r: i32, actions: &Vec<Vec<Vec<Vector>>>| -> usize {
        if r < 0 {
            sym_block.get(&r).map_or(0, Vec::len)
        } else {
            actions[r as usize].len()
        }
    };

    // [w, x_b] for w ∈ block(r) in local coordinates; result in
    // block(r + deg x_b) local coordinates.
    let act_on = |r: i32, w: &[Scalar], b: usize, actions: &Vec<Vec<Vec<Vector>>>| -> Vector {
        let out_deg = r + degrees[b];
        let out_dim = if out_deg < 0 {
            sym_block.get(&out_deg).map_or(0, Vec::len)
        } else {
            actions[out_deg as usize].len()
        };
        let mut out = zeros(out_dim);
        if r < 0 {
            let idx = &sym_block[&r];
            let tgt = sym_block.get(&out_deg);
            for (c, &gi) in w.iter().zip(idx) {
                if c.is_zero() {
                    continue;
                }
                let br = symbol.structure(gi, b);
                if let Some(tgt) = tgt {
                    for (slot, &ti) in tgt.iter().enumerate() {
                        if !br[ti].is_zero() {
                            out[slot] += &(c * &br[ti]);
                        }
                    }
                }
            }
        } else {
            for (c, elem) in w.iter().zip(&actions[r as usize]) {
                crate::field::axpy(&mut out, c, &elem[b]);
            }
        }
        out
    };

    for p in 0..=d {
        // unknown layout: for each symbol basis x_a, block(p + deg x_a)
        let offsets: Vec<usize> = {
            let mut o = Vec::with_capacity(nm + 1);
            let mut acc = 0;
            for a in 0..nm {
                o.push(acc);
                acc += block_dim(p + degrees[a], &actions);
            }
            o.push(acc);
            o
        };
        let nunk = offsets[nm];
        let split = |v: &[Scalar]| -> Vec<Vector> { (0..nm).map(|a| v[offsets[a]..offsets[a + 1]].to_vec()).collect() };
        // constraint value of a candidate φ, concatenated over pairs a < b
        let constraint = |phi: &[Vector]| -> Vector {
            let mut out = Vec::new();
            for a in 0..nm {
                for b in a + 1..nm {
                    let out_deg = p + degrees[a] + degrees[b];
                    let dim = block_dim(out_deg, &actions);
                    let mut val = zeros(dim);
                    // φ([x_a, x_b])
                    let br = symbol.structure(a, b);
                    for (k, c) in br.iter().enumerate() {
                        if !c.is_zero() {
                            crate::field::axpy(&mut val, c, &phi[k]);
                        }
                    }
                    // − [φ x_a, x_b]
                    let t1 = act_on(p + degrees[a], &phi[a], b, &actions);
                    // − [x_a, φ x_b] = + [φ x_b, x_a]
                    let t2 = act_on(p + degrees[b], &phi[b], a, &actions);
                    for s in 0..dim {
                        val[s] = &(&val[s] - &t1[s]) + &t2[s];
                    }
                    out.extend(val);
                }
            }
            out
        };
        let cols: Vec<Vector> = (0..nunk).map(|u| constraint(&split(&unit(nunk, u)))).collect();
        let nrows = cols.first().map_or(0, Vec::len);
        let ker = if nrows == 0 {
            Subspace::full(nunk)
        } else {
            Matrix::from_cols(nrows, &cols).nullspace()
        };
        actions.push(ker.basis().iter().map(|v| split(v)).collect());
    }

    // global basis: symbol, then g_0 .. g_d
    let mut labels: Vec<String> = symbol.labels().to_vec();
    let mut gdeg: Vec<i32> = degrees.to_vec();
    let mut start: BTreeMap<i32, usize> = BTreeMap::new();
    for p in 0..=d {
        start.insert(p, labels.len());
        for i in 0..actions[p as usize].len() {
            labels.push(alloc::format!("g{p}_{i}"));
            gdeg.push(p);
        }
    }
    let n = labels.len();
    let embed = |r: i32, local: &[Scalar]| -> Vector {
        let mut v = zeros(n);
        if r < 0 {
            for (c, &gi) in local.iter().zip(&sym_block[&r]) {
                v[gi] = c.clone();
            }
        } else if r <= d {
            let s = start[&r];
            for (k, c) in local.iter().enumerate() {
                v[s + k] = c.clone();
            }
        }
        v
    };
    let label_refs: Vec<&str> = labels.iter().map(String::as_str).collect();
    let mut alg = LieAlgebra::abelian(&label_refs, symbol.field());
    for a in 0..nm {
        for b in a + 1..nm {
            let mut v = zeros(n);
            v[..nm].clone_from_slice(symbol.structure(a, b));
            alg.set_bracket(a, b, v)?;
        }
    }
    for p in 0..=d {
        for (i, elem) in actions[p as usize].iter().enumerate() {
            for b in 0..nm {
                alg.set_bracket(start[&p] + i, b, embed(p + degrees[b], &elem[b]))?;
            }
        }
    }
    // nonnegative brackets, in increasing total degree
    for s in 0..=d {
        for p in 0..=s / 2 {
            let q = s - p;
            let target = &actions[s as usize];
            let tdeg_basis: Vec<Vector> = target.iter().map(|e| e.concat()).collect();
            let tmat = Matrix::from_cols(tdeg_basis.first().map_or(0, Vec::len), &tdeg_basis);
            for i in 0..actions[p as usize].len() {
                for j in 0..actions[q as usize].len() {
                    let gi = start[&p] + i;
                    let gj = start[&q] + j;
                    if gi >= gj {
                        continue;
                    }
                    let (u, v) = (unit(n, gi), unit(n, gj));
                    // data of [u, v]: x ↦ [u, [v, x]] − [v, [u, x]], in block(s + deg x)
                    let mut data: Vec<Vector> = Vec::with_capacity(nm);
                    for b in 0..nm {
                        let x = unit(n, b);
                        let lhs = alg.bracket(&u, &alg.bracket(&v, &x));
                        let rhs = alg.bracket(&v, &alg.bracket(&u, &x));
                        let diff = vsub(&lhs, &rhs);
                        let r = s + degrees[b];
                        let idx: Vec<usize> = (0..n).filter(|&k| gdeg[k] == r).collect();
                        data.push(idx.iter().map(|&k| diff[k].clone()).collect());
                    }
                    let flat = data.concat();
                    let coords = if tdeg_basis.is_empty() {
                        if !is_zero_vec(&flat) {
                            return Err(Error::Input("bracket escapes the prolongation".into()));
                        }
                        Vec::new()
                    } else {
                        tmat.solve(&flat).ok_or_else(|| Error::Input("bracket escapes the prolongation".into()))?
                    };
                    alg.set_bracket(gi, gj, embed(s, &coords))?;
                }
            }
        }
    }
    Ok(Prolongation { algebra: alg, grading: Grading::new(gdeg), depth: d, symbol_dim: nm })
}

/// `heis(3)` with basis `e` (degree −2), `a`, `b` (degree −1), `[a, b] = e`.
pub fn heisenberg() -> (LieAlgebra, Vec<i32>) {
    let alg = LieAlgebra::from_table(&["e", "a", "b"], Field::Q, &[("a", "b", &[("e", "1")])]).unwrap();
    (alg, vec![-2, -1, -1])
}

/// Real contact algebra `c = prolongation of heis(3)` up to degree `d`.
pub fn contact_algebra(d: i32) -> Prolongation {
    let (h, deg) = heisenberg();
    tanaka_prolong(&h, &deg, d).expect("heis(3) is fundamental")
}

/// Distinguished elements of `ĉ` in the coordinates of the complexified
/// prolongation.
#[derive(Clone, Debug)]
pub struct CrBasis {
    pub e: Vector,
    pub z: Vector,
    pub zb: Vector,
    pub grading_element: Vector,
    pub j: Vector,
    pub m: Vector,
    pub mb: Vector,
    pub n: Vector,
    pub nb: Vector,
    pub v: Vector,
    pub w: Vector,
    /// Whether V, W needed the extra relation `[W, z] = ½M − ¼iE`.
    pub used_w_fallback: bool,
}

impl CrBasis {
    /// `(name, vector)` pairs in a fixed order.
    pub fn named(&self) -> Vec<(&'static str, &Vector)> {
        vec![
            ("e", &self.e),
            ("z", &self.z),
            ("zb", &self.zb),
            ("E", &self.grading_element),
            ("J", &self.j),
            ("M", &self.m),
            ("Mb", &self.mb),
            ("N", &self.n),
            ("Nb", &self.nb),
            ("V", &self.v),
            ("W", &self.w),
        ]
    }
}

/// Unique `x ∈ span(basis)` with `[x, y] = t` for all `(y, t)`.
fn pin(alg: &LieAlgebra, basis: &[Vector], conds: &[(Vector, Vector)], what: &str) -> Result<Vector> {
    let n = alg.dim();
    let mut rows: Vec<Vector> = Vec::new();
    let mut rhs: Vector = Vec::new();
    for (y, t) in conds {
        let imgs: Vec<Vector> = basis.iter().map(|b| alg.bracket(b, y)).collect();
        let m = Matrix::from_cols(n, &imgs);
        rows.extend(m.row_vecs());
        rhs.extend(t.iter().cloned());
    }
    let m = Matrix::from_rows(basis.len(), &rows);
    let sol = m.solve(&rhs).ok_or_else(|| Error::Calibration(alloc::format!("no solution for {what}")))?;
    if m.rank() != basis.len() {
        return Err(Error::Calibration(alloc::format!("{what} is not uniquely pinned")));
    }
    Ok(combine(&sol, basis, n))
}

fn lin(terms: &[(&str, &Vector)]) -> Vector {
    let n = terms[0].1.len();
    let mut v = zeros(n);
    for (c, x) in terms {
        let c: Scalar = c.parse().unwrap();
        crate::field::axpy(&mut v, &c, x);
    }
    v
}

/// Splits a complex linear system `A r = b` with real unknowns `r` into its
/// real and imaginary parts.
fn realify(rows: &[Vector], rhs: &[Scalar]) -> (Vec<Vector>, Vector) {
    let mut out_rows = Vec::new();
    let mut out_rhs = Vec::new();
    for (r, b) in rows.iter().zip(rhs) {
        out_rows.push(r.iter().map(|c| Scalar::from(c.re.clone())).collect());
        out_rhs.push(Scalar::from(b.re.clone()));
        out_rows.push(r.iter().map(|c| Scalar::from(c.im.clone())).collect());
        out_rhs.push(Scalar::from(b.im.clone()));
    }
    (out_rows, out_rhs)
}

/// Calibrates `e, z, E, J, M, N, V, W` inside `ĉ` (the complexification of
/// `contact_algebra(d)`, `d ≥ 1`).
pub fn calibrate(chat: &LieAlgebra, grading: &Grading) -> Result<CrBasis> {
    let n = chat.dim();
    let e = chat.basis_vector("e")?;
    let a = chat.basis_vector("a")?;
    let b = chat.basis_vector("b")?;
    let c0: Vec<Vector> = grading.indices(0).into_iter().map(|k| unit(n, k)).collect();
    let c1: Vec<Vector> = grading.indices(1).into_iter().map(|k| unit(n, k)).collect();
    if c1.is_empty() {
        return Err(Error::Calibration("depth must be at least 1".into()));
    }
    let neg = |v: &Vector| -> Vector { v.iter().map(|c| -c).collect() };
    // J: complex structure a ↦ −b, b ↦ a on ĉ₋₁
    let j = pin(chat, &c0, &[(a.clone(), neg(&b)), (b.clone(), a.clone())], "J")?;
    // z: +i eigenvector of ad J with coefficient ½ on a
    let z = lin(&[("1/2", &a), ("1/2*i", &b)]);
    if chat.bracket(&j, &z) != crate::field::vscale(&Scalar::i(), &z) {
        return Err(Error::Calibration("z is not an i-eigenvector of ad J".into()));
    }
    let zb = chat.sigma(&z);
    let grading_element = pin(chat, &c0, &[(a.clone(), neg(&a)), (b.clone(), neg(&b))], "E")?;
    let m = pin(
        chat,
        &c0,
        &[(z.clone(), lin(&[("1/2*i", &z)])), (zb.clone(), lin(&[("-i", &z), ("-1/2*i", &zb)]))],
        "M",
    )?;
    let mb = chat.sigma(&m);
    let nn = pin(
        chat,
        &c1,
        &[
            (z.clone(), lin(&[("-1/2*i", &m), ("-3/4", &grading_element)])),
            (zb.clone(), lin(&[("-3/2*i", &m), ("-2*i", &mb), ("3/4", &grading_element)])),
        ],
        "N",
    )?;
    let nb = chat.sigma(&nn);

    // V, W: real elements of the first prolongation of ⟨E, M, M̄⟩ with
    // [M, W] = −(i/2) W and [M, V] = −iN + (i/2)V + (5/2)W.
    let borel = Subspace::span(n, &[grading_element.clone(), m.clone(), mb.clone()]);
    let k = c1.len();
    // unknowns: V coefficients (k), then W coefficients (k), all real
    let build = |with_fallback: bool| -> (Vec<Vector>, Vector) {
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        let mut push_vec_eq = |coefs_v: Vec<Vector>, coefs_w: Vec<Vector>, target: Vector| {
            // Σ r_i coefs_v[i] + Σ s_i coefs_w[i] = target
            for row in 0..n {
                let mut r = Vec::with_capacity(2 * k);
                r.extend(coefs_v.iter().map(|c| c[row].clone()));
                r.extend(coefs_w.iter().map(|c| c[row].clone()));
                rows.push(r);
                rhs.push(target[row].clone());
            }
        };
        let zero = zeros(n);
        let none = vec![zero.clone(); k];
        // membership in the first prolongation: [X, ĉ₋₁] ≡ 0 mod borel
        for y in [&a, &b] {
            let imgs: Vec<Vector> = c1.iter().map(|x| borel.reduce(&chat.bracket(x, y))).collect();
            push_vec_eq(imgs.clone(), none.clone(), zero.clone());
            push_vec_eq(none.clone(), imgs, zero.clone());
        }
        // [M, W] + (i/2) W = 0
        let mw: Vec<Vector> = c1
            .iter()
            .map(|x| crate::field::vadd(&chat.bracket(&m, x), &crate::field::vscale(&Scalar::complex(0, 1, 1, 2), x)))
            .collect();
        push_vec_eq(none.clone(), mw, zero.clone());
        // [M, V] − (i/2) V − (5/2) W = −iN
        let mv: Vec<Vector> = c1
            .iter()
            .map(|x| vsub(&chat.bracket(&m, x), &crate::field::vscale(&Scalar::complex(0, 1, 1, 2), x)))
            .collect();
        let w_part: Vec<Vector> = c1.iter().map(|x| crate::field::vscale(&Scalar::frac(-5, 2), x)).collect();
        push_vec_eq(mv, w_part, lin(&[("-i", &nn)]));
        if with_fallback {
            // [W, z] = ½M − ¼iE
            let wz: Vec<Vector> = c1.iter().map(|x| chat.bracket(x, &z)).collect();
            push_vec_eq(none.clone(), wz, lin(&[("1/2", &m), ("-1/4*i", &grading_element)]));
        }
        realify(&rows, &rhs)
    };
    let solve = |with_fallback: bool| -> Option<(Vector, bool)> {
        let (rows, rhs) = build(with_fallback);
        let mat = Matrix::from_rows(2 * k, &rows);
        let sol = mat.solve(&rhs)?;
        Some((sol, mat.rank() == 2 * k))
    };
    let (sol, used_w_fallback) = match solve(false) {
        Some((s, true)) => (s, false),
        Some((_, false)) => match solve(true) {
            Some((s, true)) => (s, true),
            _ => return Err(Error::Calibration("V, W are not uniquely pinned".into())),
        },
        None => return Err(Error::Calibration("no real V, W satisfy the relations".into())),
    };
    let v = combine(&sol[..k], &c1, n);
    let w = combine(&sol[k..], &c1, n);
    Ok(CrBasis { e, z, zb, grading_element, j, m, mb, n: nn, nb, v, w, used_w_fallback })
}

/// One summand `c^k_{(p,ℓ)}` of the bigrading.
#[derive(Clone, Debug, PartialEq)]
pub struct BigradedPiece {
    pub p: i32,
    pub l: i32,
    pub k: i32,
    pub space: Subspace,
}

/// Decomposition of each `ĉ_p` into joint eigenspaces of `ad(J)`
/// (eigenvalue `iℓ`) and of the Casimir of `k₀ = {v ∈ ĉ₀ : [v, e] = 0}`
/// (isotypic label `k`, read off as eigenspace dimension − 1).
pub fn bigrading(chat: &LieAlgebra, grading: &Grading, basis: &CrBasis) -> Result<Vec<BigradedPiece>> {
    let n = chat.dim();
    let c0: Vec<Vector> = grading.indices(0).into_iter().map(|k| unit(n, k)).collect();
    // k₀
    let imgs: Vec<Vector> = c0.iter().map(|x| chat.bracket(x, &basis.e)).collect();
    let ker = Matrix::from_cols(n, &imgs).nullspace();
    let k0: Vec<Vector> = ker.basis().iter().map(|c| combine(c, &c0, n)).collect();
    // Killing form of k₀ on itself
    let k0_space = Subspace::span(n, &k0);
    let kdim = k0.len();
    let coords = Matrix::from_cols(n, &k0);
    let ad_on_k0 = |x: &Vector| -> Matrix {
        let cols: Vec<Vector> = k0.iter().map(|y| coords.solve(&chat.bracket(x, y)).expect("k0 closed")).collect();
        Matrix::from_cols(kdim, &cols)
    };
    let ads: Vec<Matrix> = k0.iter().map(ad_on_k0).collect();
    let mut kill = Matrix::zeros(kdim, kdim, Field::Qi);
    for i in 0..kdim {
        for j in 0..kdim {
            let prod = ads[i].mul(&ads[j]);
            let mut tr = Scalar::zero();
            for t in 0..kdim {
                tr += prod.get(t, t);
            }
            kill.set(i, j, tr);
        }
    }
    let kinv = kill.inverse().ok_or_else(|| Error::Calibration("k0 is not semisimple".into()))?;
    let _ = k0_space;
    let mut out = Vec::new();
    for p in grading.min()..=grading.max() {
        let idx = grading.indices(p);
        if idx.is_empty() {
            continue;
        }
        let comp: Vec<Vector> = idx.iter().map(|&k| unit(n, k)).collect();
        let cm = Matrix::from_cols(n, &comp);
        let restrict = |x: &Vector| -> Matrix {
            let cols: Vec<Vector> = comp.iter().map(|y| cm.solve(&chat.bracket(x, y)).expect("degree preserved")).collect();
            Matrix::from_cols(comp.len(), &cols)
        };
        let reps: Vec<Matrix> = k0.iter().map(restrict).collect();
        let dim = comp.len();
        let mut cas = Matrix::zeros(dim, dim, Field::Qi);
        for i in 0..kdim {
            for j in 0..kdim {
                let c = kinv.get(i, j);
                if c.is_zero() {
                    continue;
                }
                let prod = reps[i].mul(&reps[j]);
                for r in 0..dim {
                    for s in 0..dim {
                        let v = cas.get(r, s) + &(c * prod.get(r, s));
                        cas.set(r, s, v);
                    }
                }
            }
        }
        let cas_sp = spectrum(&cas)?;
        let jrep = restrict(&basis.j);
        let j_sp = spectrum(&jrep)?;
        for ce in &cas_sp {
            let k = ce.eigenspace.dim() as i32 - 1;
            for je in &j_sp {
                let inter = ce.eigenspace.intersection(&je.eigenspace)?;
                if inter.is_zero() {
                    continue;
                }
                // eigenvalue iℓ
                if !je.value.re.is_zero() || !je.value.im.is_integer() {
                    return Err(Error::Calibration("ad J eigenvalue is not i·integer".into()));
                }
                let l: i32 = je.value.im.to_integer().try_into().map_err(|_| Error::Calibration("eigenvalue too large".into()))?;
                let vecs: Vec<Vector> = inter.basis().iter().map(|c| combine(c, &comp, n)).collect();
                out.push(BigradedPiece { p, l, k, space: Subspace::span(n, &vecs) });
            }
        }
    }
    out.sort_by(|x, y| (x.p, x.l, x.k).cmp(&(y.p, y.l, y.k)));
    Ok(out)
}

/// `u_p`: all `ad(J)` eigenspaces of `ĉ_p` except the one for `−i(p+2)`.
pub fn universal_subspaces(pieces: &[BigradedPiece], n: usize) -> BTreeMap<i32, Subspace> {
    let mut out: BTreeMap<i32, Subspace> = BTreeMap::new();
    for pc in pieces {
        let entry = out.entry(pc.p).or_insert_with(|| Subspace::zero(n));
        if pc.l != -(pc.p + 2) {
            *entry = entry.sum(&pc.space).unwrap();
        }
    }
    out
}

/// `{X ∈ ĉ₁ : [X, ĉ₋₁] ⊆ g0}`
pub fn subalgebra_prolongation(chat: &LieAlgebra, grading: &Grading, g0: &Subspace) -> Subspace {
    let n = chat.dim();
    let c1: Vec<Vector> = grading.indices(1).into_iter().map(|k| unit(n, k)).collect();
    let mut rows = Vec::new();
    for y in grading.indices(-1) {
        let imgs: Vec<Vector> = c1.iter().map(|x| g0.reduce(&chat.bracket(x, &unit(n, y)))).collect();
        rows.extend(Matrix::from_cols(n, &imgs).row_vecs());
    }
    let ker = crate::field::nullspace_rows(&rows, c1.len());
    Subspace::span(n, &ker.basis().iter().map(|c| combine(c, &c1, n)).collect::<Vec<_>>())
}

/// Per-condition outcome of [`is_model`].
#[derive(Clone, Debug, PartialEq)]
pub struct ModelReport {
    pub negative_part_full: bool,
    pub contains_grading_element: bool,
    pub splits_into_u_and_sigma_u: bool,
    /// Degrees `p ≥ 0` whose component projects nontrivially to
    /// `c^{p+2}_{(p,p+2)}`.
    pub top_projection_degrees: Vec<i32>,
    /// `k` when those degrees are exactly `0..=k−2` with `k ≥ 2`.
    pub order: Option<i32>,
}

impl ModelReport {
    pub fn ok(&self) -> bool {
        self.negative_part_full && self.contains_grading_element && self.splits_into_u_and_sigma_u && self.order.is_some()
    }
}

/// Checks whether the graded subalgebra `g ⊆ ĉ` is a nondegenerate model.
pub fn is_model(
    chat: &LieAlgebra,
    grading: &Grading,
    basis: &CrBasis,
    pieces: &[BigradedPiece],
    g: &Subspace,
) -> Result<ModelReport> {
    let n = chat.dim();
    let comps: BTreeMap<i32, Subspace> = (grading.min()..=grading.max())
        .map(|p| (p, g.intersection(&grading.component(p)).unwrap()))
        .collect();
    let total: usize = comps.values().map(Subspace::dim).sum();
    if total != g.dim() {
        return Err(Error::Input("subalgebra is not graded".into()));
    }
    let negative_part_full = (grading.min()..0).all(|p| comps[&p] == grading.component(p));
    let contains_grading_element = g.contains(&basis.grading_element);
    let u = universal_subspaces(pieces, n);
    let mut splits = true;
    for p in 0..=grading.max() {
        let gp = &comps[&p];
        let up = u.get(&p).cloned().unwrap_or_else(|| Subspace::zero(n));
        let sup = chat.sigma_space(&up);
        let lhs = gp.intersection(&up)?.sum(&gp.intersection(&sup)?)?;
        if lhs != *gp {
            splits = false;
        }
    }
    let mut top = Vec::new();
    for p in 0..=grading.max() {
        let Some(target) = pieces.iter().find(|pc| pc.p == p && pc.l == p + 2 && pc.k == p + 2) else { continue };
        // complement of the target inside ĉ_p, made of the other pieces
        let others: Vec<Vector> = pieces
            .iter()
            .filter(|pc| pc.p == p && !(pc.l == p + 2 && pc.k == p + 2))
            .flat_map(|pc| pc.space.basis().to_vec())
            .collect();
        let other = Subspace::span(n, &others);
        if comps[&p].basis().iter().any(|v| !other.contains(v)) {
            top.push(p);
        }
        let _ = &target;
    }
    let order = {
        let k = top.len() as i32 + 1;
        let expected: Vec<i32> = (0..=k - 2).collect();
        (k >= 2 && top == expected).then_some(k)
    };
    Ok(ModelReport {
        negative_part_full,
        contains_grading_element,
        splits_into_u_and_sigma_u: splits,
        top_projection_degrees: top,
        order,
    })
}

/// Calibrated complex contact algebra with its bigrading.
#[derive(Clone, Debug)]
pub struct ContactData {
    pub real: Prolongation,
    pub chat: LieAlgebra,
    pub basis: CrBasis,
    pub pieces: Vec<BigradedPiece>,
}

impl ContactData {
    pub fn new(d: i32) -> Result<Self> {
        let real = contact_algebra(d);
        let chat = real.algebra.complexify()?;
        let basis = calibrate(&chat, &real.grading)?;
        let pieces = bigrading(&chat, &real.grading, &basis)?;
        Ok(ContactData { real, chat, basis, pieces })
    }
    pub fn grading(&self) -> &Grading {
        &self.real.grading
    }
    pub fn universal(&self) -> BTreeMap<i32, Subspace> {
        universal_subspaces(&self.pieces, self.chat.dim())
    }
    /// The calibrated 8-dimensional model `⟨e, z, z̄, E, M, M̄, N, N̄⟩` as
    /// its own algebra with conjugation.
    pub fn model8(&self) -> Result<LieAlgebra> {
        let b = &self.basis;
        self.chat.restrict(
            &[b.e.clone(), b.z.clone(), b.zb.clone(), b.grading_element.clone(), b.m.clone(), b.mb.clone(), b.n.clone(), b.nb.clone()],
            &["e", "z", "zb", "E", "M", "Mb", "N", "Nb"],
        )
    }
    /// `ĉ` on a basis adapted to the bigrading, labels `c(p,l,k,idx)`.
    pub fn bigraded_export(&self) -> Result<LieAlgebra> {
        let mut vecs = Vec::new();
        let mut labels = Vec::new();
        for pc in &self.pieces {
            for (i, v) in pc.space.basis().iter().enumerate() {
                vecs.push(v.clone());
                labels.push(alloc::format!("c({},{},{},{})", pc.p, pc.l, pc.k, i));
            }
        }
        let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
        self.chat.restrict(&vecs, &refs)
    }
    /// Pairs of pieces whose bracket leaves `c^{k₁+k₂} ⊕ c^{k₁+k₂−2}` in
    /// bidegree `(p₁+p₂, ℓ₁+ℓ₂)`; only pairs with `p₁ + p₂ ≤ d` are checked.
    pub fn quasi_grading_violations(&self) -> Vec<((i32, i32, i32), (i32, i32, i32))> {
        let n = self.chat.dim();
        let mut bad = Vec::new();
        for x in &self.pieces {
            for y in &self.pieces {
                if x.p + y.p > self.real.depth {
                    continue;
                }
                let (p, l) = (x.p + y.p, x.l + y.l);
                let allowed: Vec<Vector> = self
                    .pieces
                    .iter()
                    .filter(|pc| pc.p == p && pc.l == l && (pc.k == x.k + y.k || pc.k == x.k + y.k - 2))
                    .flat_map(|pc| pc.space.basis().to_vec())
                    .collect();
                let allowed = Subspace::span(n, &allowed);
                let ok = x.space.basis().iter().all(|a| y.space.basis().iter().all(|b| allowed.contains(&self.chat.bracket(a, b))));
                if !ok {
                    bad.push(((x.p, x.l, x.k), (y.p, y.l, y.k)));
                }
            }
        }
        bad
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn contact_dims() {
        let c = contact_algebra(2);
        assert_eq!(c.dims(), [1, 2, 4, 6, 9]);
        assert!(c.jacobi_violation().is_none());
        assert!(c.transitivity_violations().is_empty());
    }

    #[test]
    fn line_vector_fields() {
        let sym = LieAlgebra::abelian(&["x"], Field::Q);
        let p = tanaka_prolong(&sym, &[-1], 3).unwrap();
        assert_eq!(p.dims(), [1, 1, 1, 1, 1]);
        assert!(p.jacobi_violation().is_none());
    }

    #[test]
    fn non_fundamental_symbol_is_rejected() {
        let sym = LieAlgebra::abelian(&["x", "y"], Field::Q);
        assert!(tanaka_prolong(&sym, &[-1, -2], 1).is_err());
    }

    #[test]
    fn calibration_relations() {
        let cd = ContactData::new(2).unwrap();
        let (g, b) = (&cd.chat, &cd.basis);
        let s = |x: &str| -> Scalar { x.parse().unwrap() };
        let sc = |c: &str, v: &Vector| crate::field::vscale(&s(c), v);
        assert_eq!(g.bracket(&b.z, &b.zb), sc("-1/2*i", &b.e));
        assert_eq!(g.bracket(&b.grading_element, &b.z), sc("-1", &b.z));
        assert_eq!(g.bracket(&b.grading_element, &b.n), b.n);
        assert!(is_zero_vec(&g.bracket(&b.n, &b.nb)));
        assert_eq!(g.bracket(&b.m, &b.n), sc("-1/2*i", &b.n));
        assert_eq!(g.sigma(&b.v), b.v);
        assert_eq!(g.sigma(&b.w), b.w);
    }

    #[test]
    fn universal_subspace_dims() {
        let cd = ContactData::new(2).unwrap();
        let u = cd.universal();
        assert!(u[&-2].is_zero());
        assert_eq!(u[&-1], Subspace::span(cd.chat.dim(), &[cd.basis.z.clone()]));
        assert_eq!(u[&0].dim(), 3);
        assert!(cd.chat.is_subalgebra(&u.values().fold(Subspace::zero(cd.chat.dim()), |a, b| a.sum(b).unwrap()))
            || cd.real.depth < 3);
    }

    #[test]
    fn borel_prolongation() {
        let cd = ContactData::new(1).unwrap();
        let b = &cd.basis;
        let n = cd.chat.dim();
        let borel = Subspace::span(n, &[b.grading_element.clone(), b.m.clone(), b.mb.clone()]);
        let g1 = subalgebra_prolongation(&cd.chat, cd.grading(), &borel);
        assert_eq!(g1, Subspace::span(n, &[b.n.clone(), b.nb.clone(), b.v.clone(), b.w.clone()]));
        assert_eq!(subalgebra_prolongation(&cd.chat, cd.grading(), &cd.real.component(0)).dim(), 6);
        assert!(subalgebra_prolongation(&cd.chat, cd.grading(), &Subspace::zero(n)).is_zero());
    }
}
