//! Concrete algebras and CR algebras: the 8-dimensional model, `sl₂⋉S³ℝ²`,
//! `gl₂⋉S^kℝ²` and its tube CR structures, the one-parameter families of
//! embedded subalgebras, and the symbolic closure systems for ansatz
//! subalgebras.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::cralg::CrAlgebra;
use crate::field::{is_zero_vec, vadd, vscale, zeros, Field, Matrix, Scalar, Subspace, Vector};
use crate::liealg::LieAlgebra;
use crate::poly::{eliminate, Elimination, Poly};
use crate::prolong::ContactData;
use crate::{Error, Result};

fn s(x: &str) -> Scalar {
    x.parse().expect("valid scalar literal")
}

/// `Σ c·label` with scalar coefficients.
pub fn comb(alg: &LieAlgebra, terms: &[(&str, Scalar)]) -> Vector {
    let mut v = zeros(alg.dim());
    for (label, c) in terms {
        let k = alg.index(label).expect("known label");
        v[k] += c;
    }
    v
}

/// The 8-dimensional model `⟨e, z, z̄, E, M, M̄, N, N̄⟩`, graded in degrees
/// −2, −1, −1, 0, 0, 0, 1, 1 with grading element `E`.
pub fn model8() -> LieAlgebra {
    let mut g = LieAlgebra::from_table(
        &["e", "z", "zb", "E", "M", "Mb", "N", "Nb"],
        Field::Qi,
        &[
            ("E", "e", &[("e", "-2")]),
            ("E", "z", &[("z", "-1")]),
            ("E", "zb", &[("zb", "-1")]),
            ("E", "N", &[("N", "1")]),
            ("E", "Nb", &[("Nb", "1")]),
            ("z", "zb", &[("e", "-1/2*i")]),
            ("M", "z", &[("z", "1/2*i")]),
            ("M", "zb", &[("z", "-i"), ("zb", "-1/2*i")]),
            ("Mb", "zb", &[("zb", "-1/2*i")]),
            ("Mb", "z", &[("zb", "i"), ("z", "1/2*i")]),
            ("M", "Mb", &[("M", "-i"), ("Mb", "-i")]),
            ("N", "e", &[("z", "-3*i"), ("zb", "-3*i")]),
            ("Nb", "e", &[("zb", "3*i"), ("z", "3*i")]),
            ("N", "z", &[("M", "-1/2*i"), ("E", "-3/4")]),
            ("Nb", "zb", &[("Mb", "1/2*i"), ("E", "-3/4")]),
            ("N", "zb", &[("M", "-3/2*i"), ("Mb", "-2*i"), ("E", "3/4")]),
            ("Nb", "z", &[("Mb", "3/2*i"), ("M", "2*i"), ("E", "3/4")]),
            ("M", "N", &[("N", "-1/2*i")]),
            ("Mb", "Nb", &[("Nb", "1/2*i")]),
            ("Mb", "N", &[("N", "3/2*i"), ("Nb", "i")]),
            ("M", "Nb", &[("Nb", "-3/2*i"), ("N", "-i")]),
        ],
    )
    .unwrap();
    g.set_conjugate_pairs(&[("z", "zb"), ("M", "Mb"), ("N", "Nb")]).unwrap();
    g
}

pub const MODEL8_DEGREES: [i32; 8] = [-2, -1, -1, 0, 0, 0, 1, 1];

/// `sl₂⋉S³ℝ²` on `⟨e, z, z̄, L, L̄, N, N̄⟩` with `L = 2iM + 3E`.
pub fn sl2_s3() -> LieAlgebra {
    let mut g = LieAlgebra::from_table(
        &["e", "z", "zb", "L", "Lb", "N", "Nb"],
        Field::Qi,
        &[
            ("z", "zb", &[("e", "-1/2*i")]),
            ("L", "z", &[("z", "-4")]),
            ("L", "zb", &[("z", "2"), ("zb", "-2")]),
            ("Lb", "zb", &[("zb", "-4")]),
            ("Lb", "z", &[("zb", "2"), ("z", "-2")]),
            ("L", "e", &[("e", "-6")]),
            ("Lb", "e", &[("e", "-6")]),
            ("L", "Lb", &[("L", "-2"), ("Lb", "2")]),
            ("N", "e", &[("z", "-3*i"), ("zb", "-3*i")]),
            ("Nb", "e", &[("z", "3*i"), ("zb", "3*i")]),
            ("N", "z", &[("L", "-1/4")]),
            ("Nb", "zb", &[("Lb", "-1/4")]),
            ("N", "zb", &[("L", "-3/4"), ("Lb", "1")]),
            ("Nb", "z", &[("Lb", "-3/4"), ("L", "1")]),
            ("L", "N", &[("N", "4")]),
            ("Lb", "Nb", &[("Nb", "4")]),
            ("Lb", "N", &[("N", "6"), ("Nb", "2")]),
            ("L", "Nb", &[("Nb", "6"), ("N", "2")]),
        ],
    )
    .unwrap();
    g.set_conjugate_pairs(&[("z", "zb"), ("L", "Lb"), ("N", "Nb")]).unwrap();
    g
}

/// `(Ẽ, X, Y)` in `sl2_s3` coordinates: `Ẽ = −¼(L + L̄)`, `X = −i(z − z̄)`,
/// `Y = −(i/2)(N − N̄)`. This is the usual triple with `X` scaled by `√2`
/// and `Y` by `1/√2`, which keeps everything rational.
pub fn sl2_triple(g: &LieAlgebra) -> [Vector; 3] {
    let et = comb(g, &[("L", s("-1/4")), ("Lb", s("-1/4"))]);
    let x = comb(g, &[("z", s("-i")), ("zb", s("i"))]);
    let y = comb(g, &[("N", s("-1/2*i")), ("Nb", s("1/2*i"))]);
    [et, x, y]
}

/// Real basis `Ẽ, X, Y, v₀, v₁, v₂, v₃` of `sl₂⋉S³ℝ²` (in `sl2_s3`
/// coordinates), `v₀ = e`, `v₁ = [Y, v₀]/3`, `v₂ = [Y, v₁]/2`, `v₃ = [Y, v₂]`.
pub fn sl2_s3_real_basis(g: &LieAlgebra) -> Vec<Vector> {
    let [et, x, y] = sl2_triple(g);
    let v0 = g.basis_vector("e").unwrap();
    let v1 = vscale(&s("1/3"), &g.bracket(&y, &v0));
    let v2 = vscale(&s("1/2"), &g.bracket(&y, &v1));
    let v3 = g.bracket(&y, &v2);
    vec![et, x, y, v0, v1, v2, v3]
}

pub const SL2_S3_REAL_LABELS: [&str; 7] = ["Et", "X", "Y", "v0", "v1", "v2", "v3"];

/// `sl₂⋉S³ℝ²` as a real algebra on the basis of [`sl2_s3_real_basis`].
pub fn sl2_s3_real() -> LieAlgebra {
    let g = sl2_s3();
    let r = g.restrict(&sl2_s3_real_basis(&g), &SL2_S3_REAL_LABELS).unwrap();
    let mut out = LieAlgebra::abelian(&SL2_S3_REAL_LABELS, Field::Q);
    for i in 0..7 {
        for j in i + 1..7 {
            out.set_bracket(i, j, r.structure(i, j).clone()).expect("real structure constants");
        }
    }
    out
}

/// Contact degrees of the real basis: `v₀` −2; `X`, `v₁` −1; `Ẽ`, `v₂` 0;
/// `Y`, `v₃` 1.
pub const SL2_S3_REAL_DEGREES: [i32; 7] = [0, -1, 1, -2, -1, 0, 1];

/// `gl₂ ⋉ S^kℝ²` on `E11, E12, E21, E22, u0..uk` with `u_j = u₁^{k−j}u₂^j`;
/// `E_ab` acts as the derivation sending `u_b` to `u_a`.
pub fn gl2_sk(k: usize) -> Result<LieAlgebra> {
    if k == 0 {
        return Err(Error::Input("k must be positive".into()));
    }
    let mut labels: Vec<String> = ["E11", "E12", "E21", "E22"].iter().map(|x| x.to_string()).collect();
    for j in 0..=k {
        labels.push(alloc::format!("u{j}"));
    }
    let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
    let mut g = LieAlgebra::abelian(&refs, Field::Q);
    let n = refs.len();
    let e = |a: usize, b: usize| 2 * (a - 1) + (b - 1);
    for a in 1..=2 {
        for b in 1..=2 {
            for c in 1..=2 {
                for d in 1..=2 {
                    let (i, j) = (e(a, b), e(c, d));
                    if i >= j {
                        continue;
                    }
                    // [E_ab, E_cd] = δ_bc E_ad − δ_da E_cb
                    let mut v = zeros(n);
                    if b == c {
                        v[e(a, d)] += &Scalar::one();
                    }
                    if d == a {
                        v[e(c, b)] -= &Scalar::one();
                    }
                    g.set_bracket(i, j, v)?;
                }
            }
        }
    }
    for j in 0..=k {
        let u = 4 + j;
        let (kk, jj) = (k as i64, j as i64);
        let mut set = |idx: usize, target: Option<usize>, c: i64| {
            let mut v = zeros(n);
            if let Some(t) = target {
                v[t] = Scalar::int(c);
            }
            g.set_bracket(idx, u, v).unwrap();
        };
        set(e(1, 1), Some(u), kk - jj);
        set(e(2, 2), Some(u), jj);
        set(e(1, 2), (j > 0).then(|| u - 1), jj);
        set(e(2, 1), (j < k).then(|| u + 1), kk - jj);
    }
    Ok(g)
}

/// Tube CR algebra of `gl₂⋉S^kℝ²` at the base point `a = Σ a_j u_j` (real
/// coefficients): `q = span{ξ − i(ξ·a)}` over the four `gl₂` basis vectors.
pub fn tube_cr_algebra(k: usize, a: &[Scalar]) -> Result<CrAlgebra> {
    if a.len() != k + 1 || a.iter().any(|c| !c.is_real()) {
        return Err(Error::Input("base point needs k+1 real coefficients".into()));
    }
    if a.iter().all(Scalar::is_zero) {
        return Err(Error::Input("base point must be nonzero".into()));
    }
    let g = gl2_sk(k)?;
    let n = g.dim();
    let mut point = zeros(n);
    point[4..].clone_from_slice(a);
    let ghat = g.complexify()?;
    let gens: Vec<Vector> = (0..4)
        .map(|i| {
            let mut xi = zeros(n);
            xi[i] = Scalar::one();
            let act = g.bracket(&xi, &point);
            vadd(&xi, &vscale(&-Scalar::i(), &act))
        })
        .collect();
    let cr = CrAlgebra::from_generators(ghat, &gens)?;
    let v = cr.validate();
    if v.codim != 1 || v.dim_q != 4 {
        return Err(Error::DegenerateBasePoint(alloc::format!(
            "dim q = {}, codim of q + σq = {}",
            v.dim_q, v.codim
        )));
    }
    Ok(cr)
}

/// Base point `u₂⁴ + u₁u₂³ + u₁²u₂²` of the degree-4 tube.
pub fn ex26_point() -> Vec<Scalar> {
    vec![Scalar::zero(), Scalar::zero(), Scalar::one(), Scalar::one(), Scalar::one()]
}

/// The degree-4 tube CR algebra at [`ex26_point`].
pub fn ex26() -> CrAlgebra {
    tube_cr_algebra(4, &ex26_point()).expect("nondegenerate base point")
}

/// The tube generators `A, B, C, D`: the elements of `q` whose `gl₂` parts
/// are `E11, E12, E21, E22`.
pub fn tube_generators(cr: &CrAlgebra) -> Vec<Vector> {
    let n = cr.dim();
    let basis = cr.q.basis();
    let m = Matrix::from_cols(n, basis);
    let head = Matrix::from_rows(basis.len(), &(0..4).map(|r| m.row(r)).collect::<Vec<_>>());
    (0..4)
        .map(|i| {
            let c = head.solve(&crate::field::unit(4, i)).expect("q projects onto gl2");
            crate::field::combine(&c, basis, n)
        })
        .collect()
}

/// Printed `[q, σq]` brackets of the quartic tube, coefficients on
/// `Ā, B̄, C̄, D̄, A, B, C, D`.
const EX26_CONJUGATE_TABLE: [(&str, [&str; 8]); 9] = [
    ("A,Ab", ["11/6", "0", "-2/3", "1/6", "-11/6", "0", "2/3", "-1/6"]),
    ("A,Bb", ["-31/12", "3", "-13/3", "13/12", "31/12", "-2", "13/3", "-13/12"]),
    ("A,Cb", ["1/3", "0", "4/3", "-1/3", "-1/3", "0", "-7/3", "1/3"]),
    ("A,Db", ["13/6", "0", "2/3", "-1/6", "-13/6", "0", "-2/3", "1/6"]),
    ("B,Cb", ["19/6", "0", "2/3", "-1/6", "-13/6", "0", "-2/3", "-5/6"]),
    ("B,Db", ["31/12", "2", "13/3", "-13/12", "-31/12", "-1", "-13/3", "13/12"]),
    ("C,Cb", ["-2/3", "0", "-2/3", "2/3", "2/3", "0", "2/3", "-2/3"]),
    ("C,Db", ["-1/3", "0", "5/3", "1/3", "1/3", "0", "-8/3", "-1/3"]),
    ("D,Db", ["-13/6", "0", "-2/3", "25/6", "13/6", "0", "2/3", "-25/6"]),
];

/// Every printed fact about the quartic tube that is a finite check:
/// generators, brackets, Freeman terms and filtration spans.
pub fn ex26_printed_checks() -> Vec<(String, bool)> {
    let cr = ex26();
    let g = &cr.ghat;
    let n = g.dim();
    let gens = tube_generators(&cr);
    let conj: Vec<Vector> = gens.iter().map(|v| g.sigma(v)).collect();
    let l = |t: &[(&str, &str)]| crate::liealg::lin(g, t);
    let mut out: Vec<(String, bool)> = Vec::new();
    let printed_gens = [
        l(&[("E11", "1"), ("u3", "-i"), ("u2", "-2*i")]),
        l(&[("E12", "1"), ("u3", "-4*i"), ("u2", "-3*i"), ("u1", "-2*i")]),
        l(&[("E21", "1"), ("u4", "-i"), ("u3", "-2*i")]),
        l(&[("E22", "1"), ("u4", "-4*i"), ("u3", "-3*i"), ("u2", "-2*i")]),
    ];
    for (name, (a, b)) in ["A", "B", "C", "D"].iter().zip(gens.iter().zip(&printed_gens)) {
        out.push((alloc::format!("generator {name}"), a == b));
    }
    let idx = |c: char| "ABCD".find(c).unwrap();
    let (a, b, c, d) = (&gens[0], &gens[1], &gens[2], &gens[3]);
    out.push(("[A,B] = B".into(), g.bracket(a, b) == *b));
    out.push(("[A,C] = -C".into(), g.bracket(a, c) == vscale(&s("-1"), c)));
    out.push(("[A,D] = 0".into(), is_zero_vec(&g.bracket(a, d))));
    out.push(("[B,C] = A - D".into(), g.bracket(b, c) == crate::field::vsub(a, d)));
    out.push(("[B,D] = B".into(), g.bracket(b, d) == *b));
    out.push(("[C,D] = -C".into(), g.bracket(c, d) == vscale(&s("-1"), c)));
    let all: Vec<Vector> = conj.iter().chain(gens.iter()).cloned().collect();
    for (pair, coefs) in EX26_CONJUGATE_TABLE {
        let x = pair.chars().next().unwrap();
        let y = pair.chars().nth(2).unwrap();
        let lhs = g.bracket(&gens[idx(x)], &conj[idx(y)]);
        let cs: Vec<Scalar> = coefs.iter().map(|c| s(c)).collect();
        let rhs = crate::field::combine(&cs, &all, n);
        out.push((alloc::format!("[{x},{y}bar]"), lhs == rhs));
    }
    let q_plus = cr.q.sum(&cr.sigma_q()).unwrap();
    out.push(("[B,Bbar] outside q + qbar".into(), !q_plus.contains(&g.bracket(b, &conj[1]))));
    let fs = cr.freeman_sequence();
    let sp = |vs: &[Vector]| Subspace::span(n, vs);
    out.push(("q0 = <A,C,D>".into(), *fs.get(0) == sp(&[a.clone(), c.clone(), d.clone()])));
    let amd = crate::field::vsub(a, d);
    out.push(("q1 = <A-D,C>".into(), *fs.get(1) == sp(&[amd.clone(), c.clone()])));
    out.push(("q2 = <A-D+C>".into(), *fs.get(2) == sp(&[vadd(&amd, c)])));
    out.push(("q3 = 0".into(), fs.get(3).is_zero() && fs.dims() == [4, 3, 2, 1, 0]));
    let m_refl = l(&[("E11", "1"), ("E21", "1"), ("E22", "-1")]);
    let e21 = l(&[("E21", "1")]);
    let u4 = l(&[("u4", "1")]);
    let u3 = l(&[("u3", "1")]);
    let sum_q = |p: i32| fs.get(p).sum(&cr.sigma(fs.get(p))).unwrap();
    out.push(("q1 + q1bar".into(), sum_q(1) == sp(&[m_refl.clone(), e21.clone(), u4.clone(), u3.clone()])));
    out.push(("q2 + q2bar".into(), sum_q(2) == sp(&[m_refl, u4.clone()])));
    let cf = cr.contact_filtration();
    let g0 = sp(&[l(&[("E11", "1")]), e21.clone(), l(&[("E22", "1")]), u4.clone(), u3.clone(), l(&[("u2", "1")])]);
    out.push(("g^0".into(), cf.get(0) == g0));
    out.push(("g^1 = <E21, u2^4, u2^3 u1>".into(), cf.get(1) == sp(&[e21, u4.clone(), u3])));
    out.push(("g^2 = <u2^4>".into(), cf.get(2) == sp(&[u4])));
    out.push(("g^3 = 0".into(), cf.get(3).is_zero()));
    for p in [1, 2] {
        let lhs = cf.get(p).sum(&cr.stab()).unwrap();
        out.push((alloc::format!("proper inclusion at p = {p}"), lhs.dim() < sum_q(p).dim() && sum_q(p).contains_space(&lhs)));
    }
    out
}

/// `heis(3)` complexified, with `q = ⟨½(a − ib)⟩`.
pub fn heis_cr() -> CrAlgebra {
    let (h, _) = crate::prolong::heisenberg();
    let ghat = h.complexify().unwrap();
    let z = comb(&ghat, &[("a", s("1/2")), ("b", s("-1/2*i"))]);
    CrAlgebra::from_generators(ghat, &[z]).unwrap()
}

/// The model CR algebra `(model8, ⟨z, E, M, N⟩)`.
pub fn model8_cr() -> CrAlgebra {
    let g = model8();
    let gens: Vec<Vector> = ["z", "E", "M", "N"].iter().map(|l| g.basis_vector(l).unwrap()).collect();
    CrAlgebra::from_generators(g, &gens).unwrap()
}

/// `(sl2_s3, ⟨z, L, N⟩)`.
pub fn sl2_s3_cr() -> CrAlgebra {
    let g = sl2_s3();
    let gens: Vec<Vector> = ["z", "L", "N"].iter().map(|l| g.basis_vector(l).unwrap()).collect();
    CrAlgebra::from_generators(g, &gens).unwrap()
}

/// Spans exhibiting `model8 ≅ gl₂(ℝ)⋉S³ℝ²`: the radical
/// `⟨e, z+z̄, M+M̄, E−i(M−M̄), N+N̄⟩` and the triple `Ẽ, X, Y`.
#[derive(Clone, Debug, PartialEq)]
pub struct LeviCheck {
    pub radical_is_ideal: bool,
    pub radical_is_solvable: bool,
    pub triple_relations: bool,
    pub spans_everything: bool,
}

impl LeviCheck {
    pub fn ok(&self) -> bool {
        self.radical_is_ideal && self.radical_is_solvable && self.triple_relations && self.spans_everything
    }
}

pub fn model8_levi_check() -> LeviCheck {
    let g = model8();
    let n = g.dim();
    let rad = Subspace::span(
        n,
        &[
            comb(&g, &[("e", s("1"))]),
            comb(&g, &[("z", s("1")), ("zb", s("1"))]),
            comb(&g, &[("M", s("1")), ("Mb", s("1"))]),
            comb(&g, &[("E", s("1")), ("M", s("-i")), ("Mb", s("i"))]),
            comb(&g, &[("N", s("1")), ("Nb", s("1"))]),
        ],
    );
    let et = comb(&g, &[("M", s("-1/2*i")), ("Mb", s("1/2*i")), ("E", s("-3/2"))]);
    let x = comb(&g, &[("z", s("-i")), ("zb", s("i"))]);
    let y = comb(&g, &[("N", s("-1/2*i")), ("Nb", s("1/2*i"))]);
    let radical_is_ideal = rad.contains_space(&g.bracket_spaces(&Subspace::full(n), &rad));
    let mut d = rad.clone();
    for _ in 0..n {
        d = g.bracket_spaces(&d, &d);
    }
    let triple_relations = g.bracket(&et, &x) == vscale(&s("2"), &x)
        && g.bracket(&et, &y) == vscale(&s("-2"), &y)
        && g.bracket(&x, &y) == et;
    let spans_everything = rad.sum(&Subspace::span(n, &[et, x, y])).unwrap().dim() == n;
    LeviCheck { radical_is_ideal, radical_is_solvable: d.is_zero(), triple_relations, spans_everything }
}

/// `e^{ad x}(v)`; errors when `ad x` is not nilpotent.
pub fn exp_ad(alg: &LieAlgebra, x: &[Scalar], v: &[Scalar]) -> Result<Vector> {
    let mut acc = v.to_vec();
    let mut term = v.to_vec();
    for k in 1..=alg.dim() + 1 {
        term = vscale(&Scalar::frac(1, k as i64), &alg.bracket(x, &term));
        if is_zero_vec(&term) {
            return Ok(acc);
        }
        acc = vadd(&acc, &term);
    }
    Err(Error::Input("ad(x) is not nilpotent".into()))
}

/// `e^{ad x}` applied to a subspace.
pub fn exp_ad_space(alg: &LieAlgebra, x: &[Scalar], target: &Subspace) -> Result<Subspace> {
    let imgs = target.basis().iter().map(|b| exp_ad(alg, x, b)).collect::<Result<Vec<_>>>()?;
    Ok(Subspace::span(alg.dim(), &imgs))
}

pub const FAMILY_NAMES: [&str; 3] = ["ex4.2", "ex4.3", "ex4.4"];

/// One member `(s_t, p_t)` of a family together with `p₀` and the
/// conjugating element `X_t` with `e^{ad X_t} p₀ = p_t`.
#[derive(Clone, Debug)]
pub struct FamilyMember {
    pub name: &'static str,
    pub t: Scalar,
    pub cr: CrAlgebra,
    pub base: Subspace,
    pub witness: Vector,
    pub expected_freeman: Vec<usize>,
}

impl FamilyMember {
    pub fn closes(&self) -> bool {
        self.cr.ghat.is_subalgebra(&self.cr.q)
    }
    pub fn witness_ok(&self) -> Result<bool> {
        Ok(exp_ad_space(&self.cr.ghat, &self.witness, &self.base)? == self.cr.q)
    }
    /// Whether the Freeman dimensions are expected to match at this `t`:
    /// the third family degenerates to CR codimension 2 unless `t` is real
    /// and nonzero.
    pub fn freeman_applies(&self) -> bool {
        self.name != "ex4.4" || (self.t.is_real() && !self.t.is_zero())
    }
}

/// `⟨e, z, z̄, E, M, M̄, Ξ = N + N̄⟩ ⊂ model8`.
pub fn ex44_ambient() -> LieAlgebra {
    let g = model8();
    let mut basis: Vec<Vector> = ["e", "z", "zb", "E", "M", "Mb"].iter().map(|l| g.basis_vector(l).unwrap()).collect();
    basis.push(comb(&g, &[("N", s("1")), ("Nb", s("1"))]));
    g.restrict(&basis, &["e", "z", "zb", "E", "M", "Mb", "Xi"]).unwrap()
}

pub fn family(name: &str, t: &Scalar) -> Result<FamilyMember> {
    let tb = t.conj();
    let t2 = t * t;
    let i = Scalar::i();
    let two_thirds_i = &i * &s("2/3");
    match name {
        "ex4.2" => {
            let g = model8();
            let gens = vec![
                comb(&g, &[("z", s("1")), ("Mb", t.clone()), ("Nb", -t2.clone())]),
                comb(&g, &[("M", s("1")), ("Nb", t.clone())]),
                comb(&g, &[("N", s("1"))]),
                comb(&g, &[("E", s("1")), ("N", -(&two_thirds_i * &tb)), ("Nb", &two_thirds_i * t)]),
            ];
            let base = Subspace::span(g.dim(), &["z", "E", "M", "N"].map(|l| g.basis_vector(l).unwrap()));
            let witness = comb(&g, &[("N", &two_thirds_i * &tb), ("Nb", -(&two_thirds_i * t))]);
            Ok(FamilyMember {
                name: "ex4.2",
                t: t.clone(),
                cr: CrAlgebra::from_generators(g, &gens)?,
                base,
                witness,
                expected_freeman: vec![4, 3, 2, 1],
            })
        }
        "ex4.3" => {
            let g = sl2_s3();
            let gens = vec![
                comb(&g, &[("z", s("1")), ("Lb", t.clone()), ("Nb", &s("8") * &t2)]),
                comb(&g, &[("L", s("1")), ("Nb", &s("8") * t)]),
                comb(&g, &[("N", s("1"))]),
            ];
            let base = Subspace::span(g.dim(), &["z", "L", "N"].map(|l| g.basis_vector(l).unwrap()));
            let c = s("-4/3");
            let witness = comb(&g, &[("N", &c * &tb), ("Nb", &c * t)]);
            Ok(FamilyMember {
                name: "ex4.3",
                t: t.clone(),
                cr: CrAlgebra::from_generators(g, &gens)?,
                base,
                witness,
                expected_freeman: vec![3, 2, 1, 0],
            })
        }
        "ex4.4" => {
            let g = ex44_ambient();
            let gens = vec![
                comb(&g, &[("z", s("1")), ("Mb", t.clone()), ("Xi", -t2.clone())]),
                comb(&g, &[("M", s("1")), ("Xi", t.clone())]),
                comb(&g, &[("E", s("1")), ("Xi", &two_thirds_i * t)]),
            ];
            let base = Subspace::span(g.dim(), &["z", "M", "E"].map(|l| g.basis_vector(l).unwrap()));
            let witness = comb(&g, &[("Xi", -(&two_thirds_i * t))]);
            Ok(FamilyMember {
                name: "ex4.4",
                t: t.clone(),
                cr: CrAlgebra::from_generators(g, &gens)?,
                base,
                witness,
                expected_freeman: vec![3, 2, 1, 0],
            })
        }
        _ => Err(Error::Input(alloc::format!("unknown family {name}"))),
    }
}

/// Images of the `ex44_ambient` basis in `model8` under the immersion at
/// parameter `t` (complex-linear extension of the real map). With
/// `flip_e_row` the `t`-coefficient in the image of `e` is negated.
pub fn ex44_immersion(t: &Scalar, flip_e_row: bool) -> Vec<Vector> {
    let g = model8();
    let t2 = t * t;
    let t3 = &t2 * t;
    let c = |x: &str, p: &Scalar| &s(x) * p;
    let e_t = if flip_e_row { c("4", t) } else { c("-4", t) };
    let e_img = comb(
        &g,
        &[
            ("e", s("1")),
            ("z", e_t.clone()),
            ("zb", e_t),
            ("M", c("16/3", &t2)),
            ("Mb", c("16/3", &t2)),
            ("N", c("-64/27", &t3)),
            ("Nb", c("-64/27", &t3)),
        ],
    );
    let zp = comb(
        &g,
        &[
            ("z", s("1")),
            ("zb", s("1")),
            ("M", c("-8/3", t)),
            ("Mb", c("-8/3", t)),
            ("N", c("16/9", &t2)),
            ("Nb", c("16/9", &t2)),
        ],
    );
    let zm = comb(
        &g,
        &[
            ("z", s("1")),
            ("zb", s("-1")),
            ("E", c("2*i", t)),
            ("M", c("-2/3", t)),
            ("Mb", c("2/3", t)),
            ("N", c("-8/9", &t2)),
            ("Nb", c("8/9", &t2)),
        ],
    );
    let e_big = comb(&g, &[("E", s("1")), ("N", c("2/3*i", t)), ("Nb", c("-2/3*i", t))]);
    let mp = comb(&g, &[("M", s("1")), ("Mb", s("1")), ("N", c("-4/3", t)), ("Nb", c("-4/3", t))]);
    let mm = comb(&g, &[("M", s("1")), ("Mb", s("-1")), ("N", c("2/3", t)), ("Nb", c("-2/3", t))]);
    let xi = comb(&g, &[("N", s("1")), ("Nb", s("1"))]);
    let half = s("1/2");
    let z = vscale(&half, &vadd(&zp, &zm));
    let zb = vscale(&half, &crate::field::vsub(&zp, &zm));
    let m = vscale(&half, &vadd(&mp, &mm));
    let mb = vscale(&half, &crate::field::vsub(&mp, &mm));
    vec![e_img, z, zb, e_big, m, mb, xi]
}

/// Outcome of [`check_cr_morphism`].
#[derive(Clone, Debug, PartialEq)]
pub struct MorphismReport {
    /// First basis pair `(i, j)` with `φ[x_i, x_j] ≠ [φx_i, φx_j]`.
    pub failing_pair: Option<(String, String)>,
    pub injective: bool,
    pub sigma_equivariant: bool,
    pub maps_q_into_q: bool,
    pub image_meets_q: usize,
}

impl MorphismReport {
    pub fn is_morphism(&self) -> bool {
        self.failing_pair.is_none()
    }
}

/// Checks a linear map given by the images of the source basis.
pub fn check_cr_morphism(images: &[Vector], source: &CrAlgebra, target: &CrAlgebra) -> Result<MorphismReport> {
    let (n, m) = (source.dim(), target.dim());
    if images.len() != n || images.iter().any(|v| v.len() != m) {
        return Err(Error::Input("map dimensions do not match".into()));
    }
    let phi = |v: &[Scalar]| crate::field::combine(v, images, m);
    let labels = source.ghat.labels();
    let mut failing_pair = None;
    'outer: for i in 0..n {
        for j in i + 1..n {
            let lhs = phi(source.ghat.structure(i, j));
            let rhs = target.ghat.bracket(&images[i], &images[j]);
            if lhs != rhs {
                failing_pair = Some((labels[i].clone(), labels[j].clone()));
                break 'outer;
            }
        }
    }
    let injective = Matrix::from_cols(m, images).rank() == n;
    let sigma_equivariant = (0..n).all(|i| {
        let e = crate::field::unit(n, i);
        phi(&source.ghat.sigma(&e)) == target.ghat.sigma(&images[i])
    });
    let maps_q_into_q = source.q.basis().iter().all(|v| target.q.contains(&phi(v)));
    let image = Subspace::span(m, images);
    let image_meets_q = image.intersection(&target.q)?.dim();
    Ok(MorphismReport { failing_pair, injective, sigma_equivariant, maps_q_into_q, image_meets_q })
}

/// Parametric vector: coordinates are polynomials in the unknowns.
type PVec = Vec<Poly>;

fn pbracket(g: &LieAlgebra, u: &PVec, v: &PVec) -> PVec {
    let n = g.dim();
    let nv = u[0].nvars();
    let mut out = vec![Poly::zero(nv); n];
    for i in 0..n {
        if u[i].is_zero() {
            continue;
        }
        for j in 0..n {
            if v[j].is_zero() || i == j {
                continue;
            }
            let c = &u[i] * &v[j];
            for (k, sc) in g.structure(i, j).iter().enumerate() {
                if !sc.is_zero() {
                    out[k] = &out[k] + &c.scale(sc);
                }
            }
        }
    }
    out
}

/// An ansatz subalgebra with symbolic unknowns, the equations expressing
/// bracket closure, and the solution family it is compared against.
#[derive(Clone, Debug)]
pub struct ClosureSystem {
    pub name: &'static str,
    pub vars: Vec<&'static str>,
    pub equations: Vec<Poly>,
    pub elimination: Elimination,
    /// Relations describing the expected solution set.
    pub stated: Vec<Poly>,
}

impl ClosureSystem {
    /// The expected family satisfies every equation.
    pub fn stated_solves(&self) -> bool {
        let st = eliminate(&self.stated, &[]);
        self.equations.iter().all(|e| st.implies(e))
    }
    /// The solved system implies every expected relation.
    pub fn solution_within_stated(&self) -> bool {
        self.stated.iter().all(|r| self.elimination.implies(r))
    }
    pub fn matches_stated(&self) -> bool {
        self.stated_solves() && self.solution_within_stated()
    }
    /// Whether some equation is a scalar multiple of `p`.
    pub fn contains_equation(&self, p: &Poly) -> bool {
        self.equations.iter().any(|e| {
            let q = e.div_exact(p);
            q.is_some_and(|q| q.is_constant() && !q.is_zero())
        })
    }
    pub fn show(&self, p: &Poly) -> String {
        p.fmt_with(&self.vars)
    }
}

pub const CLOSURE_NAMES: [&str; 4] = ["rank0", "rank1", "rank2", "ex4.3-closure"];

/// Equations for `span(gens)` to be bracket-closed. Each generator has a
/// pivot coordinate where it is 1 and the others vanish; brackets are
/// reduced against the pivots and leftover coordinates become equations.
fn closure_equations(g: &LieAlgebra, gens: &[(usize, PVec)]) -> Vec<Poly> {
    let nv = gens[0].1[0].nvars();
    for (a, (pa, _)) in gens.iter().enumerate() {
        for (b, (_, vb)) in gens.iter().enumerate() {
            let want = if a == b { Poly::one(nv) } else { Poly::zero(nv) };
            assert_eq!(vb[*pa], want, "generators must be in pivot form");
        }
    }
    let mut eqs: Vec<Poly> = Vec::new();
    for a in 0..gens.len() {
        for b in a + 1..gens.len() {
            let w = pbracket(g, &gens[a].1, &gens[b].1);
            let mut r = w.clone();
            for (p, v) in gens {
                let c = w[*p].clone();
                if c.is_zero() {
                    continue;
                }
                for k in 0..r.len() {
                    r[k] = &r[k] - &(&c * &v[k]);
                }
            }
            for e in r {
                if e.is_zero() {
                    continue;
                }
                let lead = e.terms().iter().next_back().map(|(_, c)| c.clone()).unwrap();
                let e = e.scale(&lead.inv().unwrap());
                if !eqs.contains(&e) {
                    eqs.push(e);
                }
            }
        }
    }
    eqs
}

fn pv(g: &LieAlgebra, nv: usize, terms: &[(&str, Poly)]) -> PVec {
    let mut v = vec![Poly::zero(nv); g.dim()];
    for (l, c) in terms {
        let k = g.index(l).unwrap();
        v[k] = &v[k] + c;
    }
    v
}

/// `ĉ_{−2} ⊕ ĉ_{−1} ⊕ ĉ_0` on `e, z, z̄, E, z², zz̄, z̄²` with
/// `zz̄ = J/2`, `z² = M − J/2`, `z̄² = M̄ − J/2`.
pub fn contact_low(cd: &ContactData) -> Result<LieAlgebra> {
    let b = &cd.basis;
    let half_j = vscale(&s("1/2"), &b.j);
    let basis = vec![
        b.e.clone(),
        b.z.clone(),
        b.zb.clone(),
        b.grading_element.clone(),
        crate::field::vsub(&b.m, &half_j),
        half_j.clone(),
        crate::field::vsub(&b.mb, &half_j),
    ];
    cd.chat.restrict(&basis, &["e", "z", "zb", "E", "z2", "zzb", "zb2"])
}

pub fn closure_system(name: &str) -> Result<ClosureSystem> {
    let one = |nv| Poly::one(nv);
    let var = |nv, k| Poly::var(nv, k);
    let cst = |nv, x: &str| Poly::constant(nv, s(x));
    match name {
        "rank0" => {
            // α, β, δ, τ
            let nv = 4;
            let cd = ContactData::new(1)?;
            let g = contact_low(&cd)?;
            let (al, be, de, ta) = (var(nv, 0), var(nv, 1), var(nv, 2), var(nv, 3));
            let eta = pv(&g, nv, &[("z", one(nv)), ("zb2", al.clone()), ("E", be.clone())]);
            let eps = pv(&g, nv, &[("z2", one(nv)), ("E", de.clone())]);
            let xi = pv(&g, nv, &[("zzb", one(nv)), ("E", ta.clone())]);
            let gens = [(g.index("z")?, eta), (g.index("z2")?, eps), (g.index("zzb")?, xi)];
            let equations = closure_equations(&g, &gens);
            let stated = vec![de.clone(), al.clone(), &(&ta - &cst(nv, "1/2*i")) * &be];
            Ok(ClosureSystem {
                name: "rank0",
                vars: vec!["alpha", "beta", "delta", "tau"],
                elimination: eliminate(&equations, &[]),
                equations,
                stated,
            })
        }
        "rank1" | "rank2-family" => {
            // τ, ρ, μ, ν
            let nv = 4;
            let g = model8();
            let (ta, rho, mu, nu) = (var(nv, 0), var(nv, 1), var(nv, 2), var(nv, 3));
            let eps = pv(&g, nv, &[("M", one(nv)), ("N", ta.clone()), ("Nb", ta.clone())]);
            let xi = pv(&g, nv, &[("E", one(nv)), ("N", rho.clone()), ("Nb", rho.clone())]);
            let eta = pv(&g, nv, &[("z", one(nv)), ("Mb", mu.clone()), ("N", nu.clone()), ("Nb", nu.clone())]);
            let gens = [(g.index("z")?, eta), (g.index("M")?, eps), (g.index("E")?, xi)];
            let equations = closure_equations(&g, &gens);
            let stated = vec![
                &ta - &mu,
                &nu + &(&mu * &mu),
                &rho - &(&cst(nv, "2/3*i") * &mu),
            ];
            Ok(ClosureSystem {
                name: "rank1",
                vars: vec!["tau", "rho", "mu", "nu"],
                elimination: eliminate(&equations, &[]),
                equations,
                stated,
            })
        }
        "rank2" => {
            // μ, ν, τ, κ = λ̄₂
            let nv = 4;
            let g = model8();
            let (mu, nu, ta, ka) = (var(nv, 0), var(nv, 1), var(nv, 2), var(nv, 3));
            let eta = pv(&g, nv, &[("z", one(nv)), ("Mb", mu.clone()), ("Nb", nu.clone())]);
            let eps = pv(&g, nv, &[("M", one(nv)), ("Nb", ta.clone())]);
            let xi = pv(&g, nv, &[("N", one(nv))]);
            let eo = pv(&g, nv, &[("E", one(nv)), ("Nb", ka.clone())]);
            let gens = [(g.index("z")?, eta), (g.index("M")?, eps), (g.index("N")?, xi), (g.index("E")?, eo)];
            let equations = closure_equations(&g, &gens);
            let stated = vec![
                &ta + &(&cst(nv, "3/2*i") * &ka),
                &mu - &ta,
                &nu + &(&ta * &ta),
            ];
            Ok(ClosureSystem {
                name: "rank2",
                vars: vec!["mu", "nu", "tau", "kappa"],
                elimination: eliminate(&equations, &[]),
                equations,
                stated,
            })
        }
        "ex4.3-closure" => {
            // τ, ν, μ
            let nv = 3;
            let g = sl2_s3();
            let (ta, nu, mu) = (var(nv, 0), var(nv, 1), var(nv, 2));
            let eta = pv(&g, nv, &[("z", one(nv)), ("Lb", mu.clone()), ("Nb", nu.clone())]);
            let eps = pv(&g, nv, &[("L", one(nv)), ("Nb", ta.clone())]);
            let xi = pv(&g, nv, &[("N", one(nv))]);
            let gens = [(g.index("z")?, eta), (g.index("L")?, eps), (g.index("N")?, xi)];
            let equations = closure_equations(&g, &gens);
            let stated = vec![&ta - &(&cst(nv, "8") * &mu), &nu - &(&cst(nv, "8") * &(&mu * &mu))];
            Ok(ClosureSystem {
                name: "ex4.3-closure",
                vars: vec!["tau", "nu", "mu"],
                elimination: eliminate(&equations, &[]),
                equations,
                stated,
            })
        }
        _ => Err(Error::Input(alloc::format!("unknown closure system {name}"))),
    }
}

/// `[[[ξ, η̄], η̄], η̄] + (τ + i/2) β̄² z̄` for `ξ = zz̄ + τE`, `η̄ = z̄ + β̄E`;
/// returns whether it vanishes identically.
pub fn rank0_triple_bracket_identity() -> Result<bool> {
    let nv = 2; // τ, β̄
    let cd = ContactData::new(1)?;
    let g = contact_low(&cd)?;
    let (ta, bb) = (Poly::var(nv, 0), Poly::var(nv, 1));
    let xi = pv(&g, nv, &[("zzb", Poly::one(nv)), ("E", ta.clone())]);
    let etab = pv(&g, nv, &[("zb", Poly::one(nv)), ("E", bb.clone())]);
    let mut w = pbracket(&g, &xi, &etab);
    w = pbracket(&g, &w, &etab);
    w = pbracket(&g, &w, &etab);
    let coef = &(&ta + &Poly::constant(nv, s("1/2*i"))) * &(&bb * &bb);
    let k = g.index("zb")?;
    w[k] = &w[k] + &coef;
    Ok(w.iter().all(Poly::is_zero))
}

/// The Lie algebra `heis(3)` deformed by `[a, e] = t a`, `[b, e] = −t b`.
pub fn heis_deformed(t: &Scalar) -> LieAlgebra {
    let (mut h, _) = crate::prolong::heisenberg();
    let n = h.dim();
    let (e, a, b) = (0, 1, 2);
    let mut v = zeros(n);
    v[a] = t.clone();
    h.set_bracket(a, e, v).unwrap();
    let mut v = zeros(n);
    v[b] = -t.clone();
    h.set_bracket(b, e, v).unwrap();
    h
}

pub const CATALOG: [&str; 7] = ["model8", "sl2_s3", "sl2_s3_real", "heis", "gl2_sk", "gl2_s3_tube", "ex26"];

/// A named catalog entry: the algebra, its CR structure when it has one,
/// and a short description of where it comes from.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub algebra: LieAlgebra,
    pub cr: Option<CrAlgebra>,
    pub anchor: &'static str,
}

/// Builds a catalog entry; `k` is used by `gl2_sk`.
pub fn build(name: &str, k: Option<usize>) -> Result<CatalogEntry> {
    let (algebra, cr, anchor) = match name {
        "model8" => {
            let cr = model8_cr();
            (cr.ghat.clone(), Some(cr), "8-dim 3-nondegenerate model, q = <z, E, M, N>")
        }
        "sl2_s3" => {
            let cr = sl2_s3_cr();
            (cr.ghat.clone(), Some(cr), "sl2 x| S^3 with L = 2iM + 3E, p = <z, L, N>")
        }
        "sl2_s3_real" => (sl2_s3_real(), None, "real basis Et, X, Y, v0..v3 of sl2 x| S^3"),
        "heis" => {
            let cr = heis_cr();
            (cr.ghat.clone(), Some(cr), "heis(3), q = <(a - ib)/2>")
        }
        "gl2_sk" => (gl2_sk(k.unwrap_or(4))?, None, "gl2 x| S^k, derivation action on u1^(k-j) u2^j"),
        "gl2_s3_tube" => {
            let mut a = vec![Scalar::zero(); 4];
            a[1] = Scalar::one();
            let cr = tube_cr_algebra(3, &a)?;
            (cr.ghat.clone(), Some(cr), "tube over the cubic tangent variety at u1^2 u2")
        }
        "ex26" => {
            let cr = ex26();
            (cr.ghat.clone(), Some(cr), "quartic tube at u2^4 + u1 u2^3 + u1^2 u2^2")
        }
        _ => return Err(Error::Input(alloc::format!("unknown catalog entry {name}"))),
    };
    let v = algebra.validate();
    if !v.ok() {
        return Err(Error::Input(alloc::format!("catalog entry {name} fails validation")));
    }
    if let Some(c) = &cr {
        if !c.validate().ok() {
            return Err(Error::Input(alloc::format!("catalog entry {name} is not a hypersurface CR algebra")));
        }
    }
    Ok(CatalogEntry { name: name.into(), algebra, cr, anchor })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::show;

    #[test]
    fn model8_is_lie_and_matches_freeman() {
        let cr = model8_cr();
        assert!(cr.ghat.validate().ok());
        assert!(cr.validate().ok());
        assert_eq!(cr.freeman_sequence().dims(), [4, 3, 2, 1]);
        assert!(model8_levi_check().ok());
    }

    #[test]
    fn broken_model_fails_jacobi() {
        let mut g = model8();
        let (m, mb) = (g.index("M").unwrap(), g.index("Mb").unwrap());
        let v = comb(&g, &[("M", s("-i")), ("Mb", s("i"))]);
        g.set_bracket(m, mb, v).unwrap();
        assert!(!g.validate().ok());
    }

    #[test]
    fn sl2_s3_inside_model8() {
        let g = model8();
        let l = comb(&g, &[("M", s("2*i")), ("E", s("3"))]);
        let lb = g.sigma(&l);
        let basis: Vec<Vector> = vec![
            g.basis_vector("e").unwrap(),
            g.basis_vector("z").unwrap(),
            g.basis_vector("zb").unwrap(),
            l,
            lb,
            g.basis_vector("N").unwrap(),
            g.basis_vector("Nb").unwrap(),
        ];
        let r = g.restrict(&basis, &["e", "z", "zb", "L", "Lb", "N", "Nb"]).unwrap();
        let t = sl2_s3();
        for i in 0..7 {
            for j in 0..7 {
                assert_eq!(r.structure(i, j), t.structure(i, j), "[{}, {}]", r.labels()[i], r.labels()[j]);
            }
        }
        assert!(t.validate().ok());
    }

    #[test]
    fn real_basis_table() {
        let g = sl2_s3_real();
        assert!(g.validate().ok());
        let v = |l: &str| g.basis_vector(l).unwrap();
        let br = |a: &str, b: &str| g.bracket(&v(a), &v(b));
        assert_eq!(br("Et", "X"), vscale(&s("2"), &v("X")));
        assert_eq!(br("X", "Y"), v("Et"));
        for (k, ev) in ["3", "1", "-1", "-3"].iter().enumerate() {
            let name = alloc::format!("v{k}");
            assert_eq!(br("Et", &name), vscale(&s(ev), &v(&name)));
        }
        assert_eq!(br("X", "v1"), v("v0"));
        assert_eq!(br("X", "v3"), vscale(&s("3"), &v("v2")));
        assert_eq!(br("Y", "v0"), vscale(&s("3"), &v("v1")));
    }

    #[test]
    fn gl2_s1_is_defining_representation() {
        let g = gl2_sk(1).unwrap();
        assert!(g.validate().ok());
        let e21 = g.basis_vector("E21").unwrap();
        assert_eq!(g.bracket(&e21, &g.basis_vector("u0").unwrap()), g.basis_vector("u1").unwrap());
    }

    #[test]
    fn ex26_generators() {
        let cr = ex26();
        let g = &cr.ghat;
        let gens = tube_generators(&cr);
        let b = lin_g(g, &[("E12", "1"), ("u3", "-4*i"), ("u2", "-3*i"), ("u1", "-2*i")]);
        assert_eq!(gens[1], b);
        let [a, b, c, d] = [&gens[0], &gens[1], &gens[2], &gens[3]];
        assert_eq!(g.bracket(a, b), *b);
        assert_eq!(g.bracket(b, c), crate::field::vsub(a, d));
        assert_eq!(cr.freeman_sequence().dims(), [4, 3, 2, 1, 0]);
        assert!(cr.stab().is_zero());
        let _ = show(g, a);
    }

    #[test]
    fn ex26_printed_table() {
        for (name, ok) in ex26_printed_checks() {
            assert!(ok, "{name}");
        }
    }

    fn lin_g(g: &LieAlgebra, t: &[(&str, &str)]) -> Vector {
        crate::liealg::lin(g, t)
    }

    #[test]
    fn cubic_tube_and_cone() {
        let cr = build("gl2_s3_tube", None).unwrap().cr.unwrap();
        assert_eq!(cr.freeman_sequence().dims(), [4, 3, 2, 1]);
        assert_eq!(cr.stab().dim(), 1);
        let cone = [0, 0, 0, 0, 1].map(Scalar::int);
        assert!(matches!(tube_cr_algebra(4, &cone), Err(Error::DegenerateBasePoint(_))));
    }

    #[test]
    fn families_close_and_conjugate() {
        for name in FAMILY_NAMES {
            for t in ["0", "1", "-1", "2", "-2"] {
                let f = family(name, &s(t)).unwrap();
                assert!(f.closes(), "{name} t={t}");
                assert!(f.witness_ok().unwrap(), "{name} t={t}");
                if f.freeman_applies() {
                    assert_eq!(f.cr.freeman_sequence().dims(), f.expected_freeman, "{name} t={t}");
                }
            }
        }
        assert!(family("nope", &s("1")).is_err());
    }

    #[test]
    fn immersion() {
        let target = model8_cr();
        for t in ["1", "-1", "2", "1/3"] {
            let t = s(t);
            let src = family("ex4.4", &t).unwrap().cr;
            let rep = check_cr_morphism(&ex44_immersion(&t, false), &src, &target).unwrap();
            assert!(rep.is_morphism(), "{rep:?}");
            assert!(rep.injective && rep.maps_q_into_q && rep.sigma_equivariant);
            assert_eq!(rep.image_meets_q, 3);
            let bad = check_cr_morphism(&ex44_immersion(&t, true), &src, &target).unwrap();
            assert!(!bad.is_morphism());
        }
    }

    #[test]
    fn closure_systems_match() {
        for name in CLOSURE_NAMES {
            let c = closure_system(name).unwrap();
            assert!(c.stated_solves(), "{name}: {:?}", c.equations.iter().map(|e| c.show(e)).collect::<Vec<_>>());
            assert!(
                c.solution_within_stated(),
                "{name}: {:?} / {:?}",
                c.elimination.assignments.iter().map(|(v, e)| (c.vars[*v], c.show(e))).collect::<Vec<_>>(),
                c.elimination.residue.iter().map(|e| c.show(e)).collect::<Vec<_>>()
            );
        }
        let r0 = closure_system("rank0").unwrap();
        let nv = 4;
        assert!(r0.contains_equation(&Poly::var(nv, 2)));
        assert!(r0.contains_equation(&(&Poly::var(nv, 0) * &Poly::var(nv, 2))));
        assert!(rank0_triple_bracket_identity().unwrap());
    }

    #[test]
    fn deformed_heis_is_lie() {
        assert!(heis_deformed(&s("3")).validate().ok());
    }
}
