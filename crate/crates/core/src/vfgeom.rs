//! Polynomial vector fields, tube hypersurfaces over rational normal cones
//! and their tangent varieties, pointwise Freeman filtrations, bracket
//! generation, Cauchy characteristics and the line-parallelism of the
//! trivial fourth-order ODE.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::{Matrix, Scalar, Subspace, Vector};
use crate::liealg::LieAlgebra;
use crate::poly::Poly;
use crate::{Error, Result};

/// `Σ coeffs[k] ∂_{coords[k]}` with polynomial coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyVectorField {
    coords: Vec<String>,
    coeffs: Vec<Poly>,
}

impl PolyVectorField {
    pub fn new(coords: &[String], coeffs: Vec<Poly>) -> Result<Self> {
        if coeffs.len() != coords.len() || coeffs.iter().any(|p| p.nvars() != coords.len()) {
            return Err(Error::Input("coefficient count or ring does not match the coordinates".into()));
        }
        Ok(PolyVectorField { coords: coords.to_vec(), coeffs })
    }
    pub fn zero(coords: &[String]) -> Self {
        let n = coords.len();
        PolyVectorField { coords: coords.to_vec(), coeffs: vec![Poly::zero(n); n] }
    }
    /// `∂_{coords[k]}`
    pub fn partial(coords: &[String], k: usize) -> Self {
        let mut v = Self::zero(coords);
        v.coeffs[k] = Poly::one(coords.len());
        v
    }
    pub fn coords(&self) -> &[String] {
        &self.coords
    }
    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }
    pub fn dim(&self) -> usize {
        self.coords.len()
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Poly::is_zero)
    }
    pub fn var(&self, k: usize) -> Poly {
        Poly::var(self.dim(), k)
    }
    fn check(&self, o: &Self) -> Result<()> {
        if self.coords != o.coords {
            return Err(Error::Input("vector fields live in different coordinate systems".into()));
        }
        Ok(())
    }
    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(PolyVectorField { coords: self.coords.clone(), coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect() })
    }
    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(PolyVectorField { coords: self.coords.clone(), coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect() })
    }
    /// Multiplication by a function.
    pub fn times(&self, f: &Poly) -> Self {
        PolyVectorField { coords: self.coords.clone(), coeffs: self.coeffs.iter().map(|a| a * f).collect() }
    }
    pub fn scale(&self, c: &Scalar) -> Self {
        PolyVectorField { coords: self.coords.clone(), coeffs: self.coeffs.iter().map(|a| a.scale(c)).collect() }
    }
    /// Complex conjugate (coordinates are real).
    pub fn conj(&self) -> Self {
        PolyVectorField { coords: self.coords.clone(), coeffs: self.coeffs.iter().map(Poly::conj).collect() }
    }
    /// `V(f)`
    pub fn apply(&self, f: &Poly) -> Poly {
        let mut out = Poly::zero(self.dim());
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out = &out + &(c * &f.derivative(k));
            }
        }
        out
    }
    pub fn bracket(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let coeffs = (0..self.dim()).map(|m| &self.apply(&o.coeffs[m]) - &o.apply(&self.coeffs[m])).collect();
        Ok(PolyVectorField { coords: self.coords.clone(), coeffs })
    }
    pub fn eval(&self, point: &[Scalar]) -> Vector {
        self.coeffs.iter().map(|c| c.eval(point)).collect()
    }
    /// Whether some coefficient involves coordinate `k`.
    pub fn depends_on(&self, k: usize) -> bool {
        self.coeffs.iter().any(|c| c.degree_in(k) > 0)
    }
    pub fn show(&self) -> String {
        let names: Vec<&str> = self.coords.iter().map(String::as_str).collect();
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .zip(&self.coords)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, n)| format!("({})*d_{}", c.fmt_with(&names), n))
            .collect();
        if parts.is_empty() { "0".into() } else { parts.join(" + ") }
    }
}

pub fn vf_bracket(v: &PolyVectorField, w: &PolyVectorField) -> Result<PolyVectorField> {
    v.bracket(w)
}

pub fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| String::from(*s)).collect()
}

/// Kernel of a polynomial matrix by fraction-free elimination. Pivots are
/// chosen generically (nonzero polynomials); they are returned so that a
/// caller can confirm the generic rank at a point.
pub fn poly_kernel(rows: &[Vec<Poly>], ncols: usize, nvars: usize) -> (Vec<Vec<Poly>>, Vec<Poly>) {
    let mut m: Vec<Vec<Poly>> = rows.to_vec();
    let mut prev = Poly::one(nvars);
    let mut pivots: Vec<(usize, Poly)> = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let best = (r..m.len()).filter(|&i| !m[i][col].is_zero()).min_by_key(|&i| m[i][col].len());
        let Some(p) = best else { continue };
        m.swap(r, p);
        let piv = m[r][col].clone();
        for i in r + 1..m.len() {
            let f = m[i][col].clone();
            for c in col + 1..ncols {
                let v = &(&piv * &m[i][c]) - &(&f * &m[r][c]);
                m[i][c] = v.div_exact(&prev).expect("fraction-free step divides exactly");
            }
            m[i][col] = Poly::zero(nvars);
        }
        prev = piv.clone();
        pivots.push((col, piv));
        r += 1;
        if r == m.len() {
            break;
        }
    }
    let pivot_cols: Vec<usize> = pivots.iter().map(|(c, _)| *c).collect();
    let prod = pivots.iter().fold(Poly::one(nvars), |acc, (_, p)| &acc * p);
    let mut kernel = Vec::new();
    for f in (0..ncols).filter(|c| !pivot_cols.contains(c)) {
        let mut x = vec![Poly::zero(nvars); ncols];
        x[f] = prod.clone();
        for (i, (c, p)) in pivots.iter().enumerate().rev() {
            let mut s = Poly::zero(nvars);
            for l in c + 1..ncols {
                if !x[l].is_zero() && !m[i][l].is_zero() {
                    s = &s + &(&m[i][l] * &x[l]);
                }
            }
            x[*c] = (-&s).div_exact(p).expect("back substitution divides exactly");
        }
        // strip pivot factors shared by every entry
        for (_, p) in &pivots {
            if p.is_constant() {
                continue;
            }
            while let Some(y) = x.iter().map(|e| e.div_exact(p)).collect::<Option<Vec<_>>>() {
                x = y;
            }
        }
        kernel.push(x);
    }
    (kernel, pivots.into_iter().map(|(_, p)| p).collect())
}

/// Symbolic frames of the Freeman sequence `F^{-1} = 𝒟₁₀ ⊇ F⁰ ⊇ F¹ ⊇ …`,
/// `F^p = {Z ∈ F^{p−1} : [Z, 𝒟₀₁] ⊆ F^{p−1} + 𝒟₀₁}`, valid wherever the
/// recorded pivots do not vanish.
#[derive(Clone, Debug)]
pub struct FreemanFrames {
    pub levels: Vec<Vec<PolyVectorField>>,
    pub pivots: Vec<Poly>,
    /// The sequence stopped at a nonzero term.
    pub stabilized: bool,
}

fn frame_columns(fields: &[&PolyVectorField]) -> Vec<Vec<Poly>> {
    // one row per field (row-major transpose of the frame matrix)
    fields.iter().map(|f| f.coeffs.clone()).collect()
}

pub fn freeman_frames(d10: &[PolyVectorField]) -> Result<FreemanFrames> {
    let first = d10.first().ok_or_else(|| Error::Input("empty distribution".into()))?;
    let n = first.dim();
    for f in d10 {
        first.check(f)?;
    }
    let d01: Vec<PolyVectorField> = d10.iter().map(PolyVectorField::conj).collect();
    let mut levels = vec![d10.to_vec()];
    let mut pivots = Vec::new();
    let mut stabilized = false;
    loop {
        let cur = levels.last().unwrap().clone();
        let w: Vec<&PolyVectorField> = cur.iter().chain(d01.iter()).collect();
        // annihilators q with q·w = 0 for all w
        let (ann, p1) = poly_kernel(&frame_columns(&w), n, n);
        pivots.extend(p1);
        let mut cond = Vec::new();
        for zb in &d01 {
            let brs: Vec<PolyVectorField> = cur.iter().map(|s| s.bracket(zb)).collect::<Result<_>>()?;
            for q in &ann {
                cond.push(
                    brs.iter()
                        .map(|b| q.iter().zip(&b.coeffs).fold(Poly::zero(n), |acc, (a, c)| &acc + &(a * c)))
                        .collect::<Vec<Poly>>(),
                );
            }
        }
        let (ker, p2) = if cond.is_empty() {
            ((0..cur.len()).map(|a| (0..cur.len()).map(|b| if a == b { Poly::one(n) } else { Poly::zero(n) }).collect()).collect(), Vec::new())
        } else {
            poly_kernel(&cond, cur.len(), n)
        };
        pivots.extend(p2);
        if ker.len() == cur.len() {
            stabilized = true;
            break;
        }
        let next: Vec<PolyVectorField> = ker
            .iter()
            .map(|c| cur.iter().zip(c).fold(PolyVectorField::zero(&first.coords), |acc, (s, f)| acc.add(&s.times(f)).unwrap()))
            .collect();
        let empty = next.is_empty();
        levels.push(next);
        if empty {
            break;
        }
    }
    Ok(FreemanFrames { levels, pivots, stabilized })
}

impl FreemanFrames {
    pub fn generic_dims(&self) -> Vec<usize> {
        self.levels.iter().map(Vec::len).collect()
    }
    /// Dimensions at a point, after confirming that the point is generic
    /// for every elimination step.
    pub fn dims_at(&self, point: &[Scalar]) -> Result<Vec<usize>> {
        if self.pivots.iter().any(|p| p.eval(point).is_zero()) {
            return Err(Error::Input("point lies on the degeneracy locus of the frames".into()));
        }
        let mut out = Vec::new();
        for lvl in &self.levels {
            let vals: Vec<Vector> = lvl.iter().map(|f| f.eval(point)).collect();
            let rank = if vals.is_empty() { 0 } else { Subspace::span(point.len(), &vals).dim() };
            if rank != lvl.len() {
                return Err(Error::Input("frame degenerates at the point".into()));
            }
            out.push(rank);
        }
        Ok(out)
    }
}

/// Freeman dimensions `(dim 𝒟₁₀, dim F⁰, …)` at `point`, ending at 0 or
/// when the sequence stabilizes.
pub fn pointwise_freeman(d10: &[PolyVectorField], point: &[Scalar]) -> Result<Vec<usize>> {
    freeman_frames(d10)?.dims_at(point)
}

#[derive(Clone, Debug, PartialEq)]
pub struct HormanderReport {
    /// Bracket length at which the final dimension is first reached.
    pub depth: usize,
    /// Dimension of the span of brackets of length ≤ j, j = 1, 2, ….
    pub dims: Vec<usize>,
    pub bracket_generating: bool,
}

/// Iterated bracket flag of `gens` evaluated at `point`.
pub fn hormander_check(gens: &[PolyVectorField], point: &[Scalar]) -> Result<HormanderReport> {
    let first = gens.first().ok_or_else(|| Error::Input("no generators".into()))?;
    let n = first.dim();
    if point.len() != n {
        return Err(Error::Input("point has the wrong dimension".into()));
    }
    let mut vals: Vec<Vector> = gens.iter().map(|g| g.eval(point)).collect();
    let mut dims = vec![Subspace::span(n, &vals).dim()];
    let mut layer: Vec<PolyVectorField> = gens.to_vec();
    while *dims.last().unwrap() < n && dims.len() < n {
        let mut next: Vec<PolyVectorField> = Vec::new();
        for g in gens {
            for l in &layer {
                let b = g.bracket(l)?;
                if !b.is_zero() && !next.contains(&b) && !next.contains(&b.scale(&-Scalar::one())) {
                    next.push(b);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        vals.extend(next.iter().map(|f| f.eval(point)));
        dims.push(Subspace::span(n, &vals).dim());
        layer = next;
    }
    let fin = *dims.last().unwrap();
    let depth = dims.iter().position(|&d| d == fin).unwrap() + 1;
    Ok(HormanderReport { depth, dims, bracket_generating: fin == n })
}

/// Annihilators (row vectors) of the span of `vals` inside `n`-space.
fn annihilator(n: usize, vals: &[Vector]) -> Vec<Vector> {
    if vals.is_empty() {
        return (0..n).map(|k| crate::field::unit(n, k)).collect();
    }
    Matrix::from_rows(n, vals).nullspace().basis().to_vec()
}

/// `{v ∈ 𝒟 : [v, 𝒟] ⊆ 𝒟}` at `point`, for a frame `gens` of `𝒟`.
pub fn cauchy_characteristic(gens: &[PolyVectorField], point: &[Scalar]) -> Result<Subspace> {
    let first = gens.first().ok_or_else(|| Error::Input("no generators".into()))?;
    let n = first.dim();
    let vals: Vec<Vector> = gens.iter().map(|g| g.eval(point)).collect();
    if Subspace::span(n, &vals).dim() != gens.len() {
        return Err(Error::Input("generators are not a frame at the point".into()));
    }
    let ann = annihilator(n, &vals);
    let mut rows: Vec<Vector> = Vec::new();
    for b in gens {
        let brs: Vec<Vector> = gens.iter().map(|a| a.bracket(b).map(|f| f.eval(point))).collect::<Result<_>>()?;
        for q in &ann {
            rows.push(brs.iter().map(|v| q.iter().zip(v).fold(Scalar::zero(), |acc, (x, y)| &acc + &(x * y))).collect());
        }
    }
    let ker: Vec<Vector> = if rows.is_empty() {
        (0..gens.len()).map(|k| crate::field::unit(gens.len(), k)).collect()
    } else {
        Matrix::from_rows(gens.len(), &rows).nullspace().basis().to_vec()
    };
    let vecs: Vec<Vector> = ker.iter().map(|c| crate::field::combine(c, &vals, n)).collect();
    Ok(Subspace::span(n, &vecs))
}

/// Deterministic rational samples of a parametrized chart.
#[derive(Clone, Debug)]
pub struct SamplePlan {
    pub params: Vec<String>,
    /// One polynomial in the parameters per target coordinate.
    pub parametrization: Vec<Poly>,
    pub count: usize,
    pub seed: u64,
    /// Polynomials in the parameters that must not vanish at a sample.
    pub excluded: Vec<Poly>,
}

impl SamplePlan {
    /// Parameter values `p/q` with `|p| ≤ 6`, `1 ≤ q ≤ 4`, off the
    /// excluded loci.
    pub fn samples(&self) -> Vec<Vec<Scalar>> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let mut out = Vec::with_capacity(self.count);
        while out.len() < self.count {
            let pt: Vec<Scalar> = (0..self.params.len())
                .map(|_| {
                    let p = (rng.next_u32() % 13) as i64 - 6;
                    let q = (rng.next_u32() % 4) as i64 + 1;
                    Scalar::frac(p, q)
                })
                .collect();
            if self.excluded.iter().all(|e| !e.eval(&pt).is_zero()) {
                out.push(pt);
            }
        }
        out
    }
    pub fn point(&self, params: &[Scalar]) -> Vector {
        self.parametrization.iter().map(|p| p.eval(params)).collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum IdentityOutcome {
    /// `lhs = rhs` as polynomial vector fields.
    Exact,
    Verified { samples: usize },
    /// Parameter values where the difference leaves the span.
    Failed { witness: Vec<Scalar> },
}

impl IdentityOutcome {
    pub fn holds(&self) -> bool {
        !matches!(self, IdentityOutcome::Failed { .. })
    }
}

/// Checks `lhs − rhs ∈ span(modulo)` at the samples of `plan` (denominators
/// already cleared by the caller).
pub fn verify_identity(lhs: &PolyVectorField, rhs: &PolyVectorField, modulo: &[PolyVectorField], plan: &SamplePlan) -> Result<IdentityOutcome> {
    let diff = lhs.sub(rhs)?;
    if diff.is_zero() {
        return Ok(IdentityOutcome::Exact);
    }
    let n = diff.dim();
    let samples = plan.samples();
    for s in &samples {
        let p = plan.point(s);
        let span = Subspace::span(n, &modulo.iter().map(|m| m.eval(&p)).collect::<Vec<_>>());
        if !span.contains(&diff.eval(&p)) {
            return Ok(IdentityOutcome::Failed { witness: s.clone() });
        }
    }
    Ok(IdentityOutcome::Verified { samples: samples.len() })
}

/// `v ∉ span(fields)` at every sample.
pub fn outside_span(v: &PolyVectorField, fields: &[PolyVectorField], plan: &SamplePlan) -> bool {
    plan.samples().iter().all(|s| {
        let p = plan.point(s);
        !Subspace::span(v.dim(), &fields.iter().map(|m| m.eval(&p)).collect::<Vec<_>>()).contains(&v.eval(&p))
    })
}

/// Coefficients of `v` pulled back along `subs` (one polynomial per
/// coordinate).
pub fn pullback_coeffs(v: &PolyVectorField, subs: &[Poly]) -> Vec<Poly> {
    v.coeffs.iter().map(|c| c.compose(subs)).collect()
}

// ---- tubes over T^{k−2}R, intrinsic chart -------------------------------

fn falling(m: usize, s: usize) -> i64 {
    (m - s + 1..=m).map(|x| x as i64).product()
}

/// `γ^{(s)}(λ)` for `γ(λ) = (1, λ, …, λ^k)`, coefficients in a ring with
/// `nvars` variables and `λ` at position `lam`.
pub fn gamma_derivative(k: usize, s: usize, nvars: usize, lam: usize) -> Vec<Poly> {
    (0..=k)
        .map(|m| {
            if m < s {
                Poly::zero(nvars)
            } else {
                let mut e = vec![0; nvars];
                e[lam] = (m - s) as u32;
                Poly::monomial(e, Scalar::int(falling(m, s)))
            }
        })
        .collect()
}

/// Tube `Σ × ℝ^{k+1}_y` over `Σ ⊂ T^{k−2}R` in the chart
/// `(λ, t₀, …, t_{k−2}, y₀, …, y_k)` of `ψ = Σ t_j γ^{(j)}(λ)`.
#[derive(Clone, Debug)]
pub struct TubeChart {
    pub k: usize,
    pub coords: Vec<String>,
    /// `Z_s = ½(γ^{(s)}_x − iγ^{(s)}_y)`; the last one is multiplied by
    /// `t_{k−2}` to clear its denominator.
    pub d10: Vec<PolyVectorField>,
    /// `x_m` as polynomials in the chart coordinates.
    pub parametrization: Vec<Poly>,
    pub excluded: Vec<Poly>,
}

pub fn tube_generators(k: usize) -> Result<TubeChart> {
    if k < 2 {
        return Err(Error::Input("k must be at least 2".into()));
    }
    let mut coords = vec![String::from("lam")];
    coords.extend((0..k - 1).map(|j| format!("t{j}")));
    coords.extend((0..=k).map(|m| format!("y{m}")));
    let n = coords.len();
    let t = |j: usize| 1 + j;
    let y = |m: usize| k + m;
    let half = Scalar::frac(1, 2);
    let mut parametrization = vec![Poly::zero(n); k + 1];
    for j in 0..k - 1 {
        for (m, g) in gamma_derivative(k, j, n, 0).iter().enumerate() {
            parametrization[m] = &parametrization[m] + &(g * &Poly::var(n, t(j)));
        }
    }
    let mut d10 = Vec::new();
    for s in 0..k {
        let mut f = PolyVectorField::zero(&coords);
        let g = gamma_derivative(k, s, n, 0);
        let tk = Poly::var(n, t(k - 2));
        let ymul = if s == k - 1 { tk.clone() } else { Poly::one(n) };
        if s < k - 1 {
            f.coeffs[t(s)] = Poly::constant(n, half.clone());
        } else {
            f.coeffs[0] = Poly::constant(n, half.clone());
            for j in 0..k - 2 {
                f.coeffs[t(j + 1)] = Poly::var(n, t(j)).scale(&-half.clone());
            }
        }
        for m in 0..=k {
            f.coeffs[y(m)] = (&g[m] * &ymul).scale(&Scalar::complex(0, 1, -1, 2));
        }
        d10.push(f);
    }
    for f in &d10 {
        if (0..=k).any(|m| f.depends_on(y(m))) {
            return Err(Error::Input("tube generator depends on a y-coordinate".into()));
        }
    }
    Ok(TubeChart { k, coords, d10, parametrization, excluded: vec![Poly::var(n, t(k - 2))] })
}

impl TubeChart {
    pub fn dim(&self) -> usize {
        self.coords.len()
    }
    /// Samples in chart coordinates; `y` is drawn as well, though no
    /// coefficient depends on it.
    pub fn plan(&self, count: usize, seed: u64) -> SamplePlan {
        let n = self.dim();
        SamplePlan {
            params: self.coords.clone(),
            parametrization: (0..n).map(|k| Poly::var(n, k)).collect(),
            count,
            seed,
            excluded: self.excluded.clone(),
        }
    }
    /// `ψ_*` of the chart part of `v` at `point`.
    pub fn pushforward(&self, v: &PolyVectorField, point: &[Scalar]) -> Vector {
        let vals = v.eval(point);
        self.parametrization
            .iter()
            .map(|x| (0..self.k).fold(Scalar::zero(), |acc, c| &acc + &(&vals[c] * &x.derivative(c).eval(point))))
            .collect()
    }
    /// At `point`: the chart part of `2Z_s` pushes forward to `γ^{(s)}`
    /// (times `t_{k−2}` for the last one), the y-part equals `−i` times it,
    /// and the pushforwards span the `k`-dimensional tangent space of `Σ`.
    pub fn consistent_at(&self, point: &[Scalar]) -> bool {
        let k = self.k;
        let n = self.dim();
        let lam = &point[0];
        let tk = &point[k - 1];
        let mut pushed = Vec::new();
        for (s, z) in self.d10.iter().enumerate() {
            let two = z.scale(&Scalar::int(2));
            let push = self.pushforward(&two, point);
            let gamma: Vector = gamma_derivative(k, s, 1, 0).iter().map(|g| g.eval(core::slice::from_ref(lam))).collect();
            let gamma = if s == k - 1 { crate::field::vscale(tk, &gamma) } else { gamma };
            if push != gamma {
                return false;
            }
            let yv: Vector = two.eval(point)[k..].to_vec();
            if yv != crate::field::vscale(&-Scalar::i(), &gamma) {
                return false;
            }
            pushed.push(push);
        }
        let jac: Vec<Vector> = (0..k).map(|c| self.parametrization.iter().map(|x| x.derivative(c).eval(point)).collect()).collect();
        let _ = n;
        let ts = Subspace::span(k + 1, &jac);
        ts.dim() == k && Subspace::span(k + 1, &pushed) == ts
    }
}

/// `(λ, t₀, t₁)` for the point `(r, s, t)` of the `k = 3` chart
/// `x = (r³, r²(s+t), rs(s+2t), s²(s+3t))`.
pub fn rst_to_chart(r: &Scalar, s: &Scalar, t: &Scalar) -> Result<[Scalar; 3]> {
    let rinv = r.inv().ok_or_else(|| Error::Input("r must be nonzero".into()))?;
    Ok([s * &rinv, r.pow(3), &r.pow(2) * t])
}

// ---- k = 3 in ambient coordinates ---------------------------------------

/// The `k = 3` tube in ambient coordinates `x₀…x₃, y₀…y₃`, with the cone
/// equations `d₁, d₂, d₃` and the generators `Z₁, Z₂, Z₃` of `𝒟₁₀`.
#[derive(Clone, Debug)]
pub struct AmbientTube {
    pub coords: Vec<String>,
    pub d: [Poly; 3],
    pub z: [PolyVectorField; 3],
    /// `Z` spanning the second Freeman term, with the signs that agree with
    /// its form `−2r⁶t⁵s(r³, r²s, rs², s³)` on the chart.
    pub zf: PolyVectorField,
    /// `(r, s, t) ↦ (x, y = 0)`.
    pub plan: SamplePlan,
}

/// `∂_{z_k} = ½(∂_{x_k} − i∂_{y_k})` in the 8 ambient coordinates.
pub fn dz(coords: &[String], k: usize) -> PolyVectorField {
    let mut v = PolyVectorField::zero(coords);
    v.coeffs[k] = Poly::constant(8, Scalar::frac(1, 2));
    v.coeffs[4 + k] = Poly::constant(8, Scalar::complex(0, 1, -1, 2));
    v
}

/// `Σ c_k ∂_{z_k}`
pub fn z_field(coords: &[String], cs: [Poly; 4]) -> PolyVectorField {
    let mut v = PolyVectorField::zero(coords);
    for (k, c) in cs.iter().enumerate() {
        v = v.add(&dz(coords, k).times(c)).unwrap();
    }
    v
}

/// `x = (r³, r²(s+t), rs(s+2t), s²(s+3t))` in the ring `ℚ(i)[r, s, t]`.
pub fn tangent_parametrization() -> [Poly; 4] {
    let (r, s, t) = (Poly::var(3, 0), Poly::var(3, 1), Poly::var(3, 2));
    let c = |n: i64| Poly::constant(3, Scalar::int(n));
    [
        &(&r * &r) * &r,
        &(&r * &r) * &(&s + &t),
        &(&r * &s) * &(&s + &(&c(2) * &t)),
        &(&s * &s) * &(&s + &(&c(3) * &t)),
    ]
}

pub fn ambient_tube() -> AmbientTube {
    let coords = names(&["x0", "x1", "x2", "x3", "y0", "y1", "y2", "y3"]);
    let x = |k: usize| Poly::var(8, k);
    let c = |n: i64| Poly::constant(8, Scalar::int(n));
    let zero = || Poly::zero(8);
    let d1 = &(&x(0) * &x(2)) - &(&x(1) * &x(1));
    let d2 = &(&x(0) * &x(3)) - &(&x(1) * &x(2));
    let d3 = &(&x(1) * &x(3)) - &(&x(2) * &x(2));
    let z1 = z_field(&coords, [x(0), x(1), x(2), x(3)]);
    let z2 = z_field(&coords, [zero(), &c(4) * &(&d1 * &d1), &c(4) * &(&d1 * &d2), &c(3) * &(&d2 * &d2)]);
    let z3 = z_field(&coords, [zero(), &c(2) * &d1, d2.clone(), zero()]);
    let a = &(&x(0) * &d3) - &(&x(2) * &d1);
    let b = &(&x(1) * &d3) - &(&x(3) * &d1);
    let zf = z_field(&coords, [&d1 * &a, &d1 * &b, &d3 * &a, &d3 * &b]);
    let [p0, p1, p2, p3] = tangent_parametrization();
    let mut parametrization = vec![p0, p1, p2, p3];
    parametrization.extend((0..4).map(|_| Poly::zero(3)));
    let d2p = d2.compose(&{
        let mut v = parametrization.clone();
        v.truncate(4);
        v.extend((0..4).map(|_| Poly::zero(3)));
        v
    });
    let plan = SamplePlan {
        params: names(&["r", "s", "t"]),
        parametrization,
        count: 10,
        seed: 7,
        excluded: vec![Poly::var(3, 0), Poly::var(3, 1), Poly::var(3, 2), d2p],
    };
    AmbientTube { coords, d: [d1, d2, d3], z: [z1, z2, z3], zf, plan }
}

/// One row `den·[Z̄_a, Z_b] ≡ Σ coef·field (mod 𝒟₀₁)` of the bracket
/// table of the ambient `k = 3` tube.
#[derive(Clone, Debug)]
pub struct BracketRow {
    pub label: String,
    pub lhs: PolyVectorField,
    pub rhs: PolyVectorField,
}

/// The nine rows of the table, denominators cleared by multiplying with
/// `d₂` (or `2d₂`).
pub fn ambient_bracket_table(at: &AmbientTube) -> Vec<BracketRow> {
    let x = |k: usize| Poly::var(8, k);
    let c = |n: i64| Poly::constant(8, Scalar::int(n));
    let h = Poly::constant(8, Scalar::frac(1, 2));
    let [d1, d2, d3] = at.d.clone();
    let [z1, z2, z3] = at.z.clone();
    let br = |a: usize, b: usize| at.z[a].conj().bracket(&at.z[b]).unwrap();
    let e = &(&x(0) * &d3) - &(&x(2) * &d1); // x₀d₃ − x₂d₁
    let f = &(&(&c(2) * &x(2)) * &d1) + &(&x(1) * &d2); // 2x₂d₁ + x₁d₂
    let one = Poly::one(8);
    let rows: Vec<(&str, Poly, usize, usize, PolyVectorField)> = vec![
        ("[Z1b,Z1] = 1/2 Z1", one.clone(), 0, 0, z1.times(&h)),
        ("[Z1b,Z2] = 2 Z2", one.clone(), 0, 1, z2.times(&c(2))),
        ("[Z1b,Z3] = Z3", one.clone(), 0, 2, z3.clone()),
        ("[Z2b,Z1] = 1/2 Z2", one.clone(), 1, 0, z2.times(&h)),
        ("d2 [Z2b,Z2] = 8 d1 (x0 d3 - x2 d1) Z2", d2.clone(), 1, 1, z2.times(&(&(&c(8) * &d1) * &e))),
        (
            "[Z2b,Z3] = 2 (x0 d2 - 2 x1 d1) Z3",
            one.clone(),
            1,
            2,
            z3.times(&(&c(2) * &(&(&x(0) * &d2) - &(&(&c(2) * &x(1)) * &d1)))),
        ),
        ("[Z3b,Z1] = 1/2 Z3", one.clone(), 2, 0, z3.times(&h)),
        (
            "d2 [Z3b,Z2] = -(2 x2 d1 + x1 d2) Z2 + 2 d1 (x0 d3 - x2 d1) Z3",
            d2.clone(),
            2,
            1,
            z2.times(&-&f).add(&z3.times(&(&(&c(2) * &d1) * &e))).unwrap(),
        ),
        (
            "2 d2 [Z3b,Z3] = -(2 x2 d1 + x1 d2) Z3 + 2 d1 (x0 d3 - x2 d1) dz1",
            &c(2) * &d2,
            2,
            2,
            z3.times(&-&f).add(&dz(&at.coords, 1).times(&(&(&c(2) * &d1) * &e))).unwrap(),
        ),
    ];
    rows.into_iter()
        .map(|(label, den, a, b, rhs)| BracketRow { label: label.into(), lhs: br(a, b).times(&den), rhs })
        .collect()
}

/// Whether `lhs` and `rhs` have the same `∂_{z}`-components on the tangent
/// variety, i.e. agree modulo all of `T⁰¹ℂ⁴` rather than modulo `𝒟₀₁`.
pub fn holomorphic_parts_agree(lhs: &PolyVectorField, rhs: &PolyVectorField, at: &AmbientTube) -> bool {
    let Ok(diff) = lhs.sub(rhs) else { return false };
    let c = &diff.coeffs;
    (0..4).all(|m| (&c[m] + &c[4 + m].scale(&Scalar::i())).compose(&at.plan.parametrization).is_zero())
}

/// `4x₀Z − (4d₁(x₀d₃ − x₂d₁)Z₁ − d₂Z₂)`
pub fn freeman_z_difference(at: &AmbientTube) -> PolyVectorField {
    let x0 = Poly::var(8, 0);
    let c4 = Poly::constant(8, Scalar::int(4));
    let [d1, d2, d3] = at.d.clone();
    let e = &(&x0 * &d3) - &(&Poly::var(8, 2) * &d1);
    let lhs = at.zf.times(&(&c4 * &x0));
    let rhs = at.z[0].times(&(&(&c4 * &d1) * &e)).sub(&at.z[1].times(&d2)).unwrap();
    lhs.sub(&rhs).unwrap()
}

/// Whether every coefficient of `v` vanishes after substituting the
/// `(r, s, t)` parametrization.
pub fn vanishes_on_tangent_variety(v: &PolyVectorField, at: &AmbientTube) -> bool {
    let mut subs: Vec<Poly> = at.plan.parametrization.clone();
    subs.truncate(8);
    pullback_coeffs(v, &subs).iter().all(Poly::is_zero)
}

/// `Z ∘ ψ = −2r⁶t⁵s (r³∂_{z₀} + r²s∂_{z₁} + rs²∂_{z₂} + s³∂_{z₃})` and
/// `X₃ ∘ ψ = −2r³t² (r∂_{x₁} + s∂_{x₂})` for `X₃ = 2d₁∂_{x₁} + d₂∂_{x₂}`.
pub fn chart_forms_hold(at: &AmbientTube) -> (bool, bool) {
    let (r, s, t) = (Poly::var(3, 0), Poly::var(3, 1), Poly::var(3, 2));
    let m = |ps: &[&Poly]| ps.iter().fold(Poly::one(3), |a, p| &a * *p);
    let sub = &at.plan.parametrization;
    let pre = m(&[&r, &r, &r, &r, &r, &r, &t, &t, &t, &t, &t, &s]).scale(&Scalar::int(-2));
    let cone = [m(&[&r, &r, &r]), m(&[&r, &r, &s]), m(&[&r, &s, &s]), m(&[&s, &s, &s])];
    // ∂_z coefficient = 2 × (x-coefficient)
    let z_ok = (0..4).all(|k| at.zf.coeffs[k].compose(sub).scale(&Scalar::int(2)) == &pre * &cone[k]);
    let [d1, d2, _] = at.d.clone();
    let pre3 = m(&[&r, &r, &r, &t, &t]).scale(&Scalar::int(-2));
    let x3_ok = (&d1 * &Poly::constant(8, Scalar::int(2))).compose(sub) == &pre3 * &r && d2.compose(sub) == &pre3 * &s;
    (z_ok, x3_ok)
}

/// `x₀²x₃² − 6x₀x₁x₂x₃ + 4x₀x₂³ + 4x₁³x₃ − 3x₁²x₂²` in `ℚ[x₀…x₃]`.
pub fn tangent_quartic() -> Poly {
    let x = |k: usize| Poly::var(4, k);
    let c = |n: i64| Poly::constant(4, Scalar::int(n));
    let m = |ps: &[Poly]| ps.iter().fold(Poly::one(4), |a, p| &a * p);
    let mut q = m(&[x(0), x(0), x(3), x(3)]);
    q = &q - &(&c(6) * &m(&[x(0), x(1), x(2), x(3)]));
    q = &q + &(&c(4) * &m(&[x(0), x(2), x(2), x(2)]));
    q = &q + &(&c(4) * &m(&[x(1), x(1), x(1), x(3)]));
    &q - &(&c(3) * &m(&[x(1), x(1), x(2), x(2)]))
}

pub fn quartic_vanishes_on_parametrization() -> bool {
    tangent_quartic().compose(&tangent_parametrization()).is_zero()
}

/// `x₃d₁ − x₂d₂ + x₁d₃` and `x₂d₁ − x₁d₂ + x₀d₃`, both identically zero.
pub fn cone_syzygies() -> [Poly; 2] {
    let x = |k: usize| Poly::var(4, k);
    let d1 = &(&x(0) * &x(2)) - &(&x(1) * &x(1));
    let d2 = &(&x(0) * &x(3)) - &(&x(1) * &x(2));
    let d3 = &(&x(1) * &x(3)) - &(&x(2) * &x(2));
    [
        &(&(&x(3) * &d1) - &(&x(2) * &d2)) + &(&x(1) * &d3),
        &(&(&x(2) * &d1) - &(&x(1) * &d2)) + &(&x(0) * &d3),
    ]
}

// ---- tube over the rational normal cone ----------------------------------

/// `(R∖0) × ℝ⁴_y` in the chart `(r, s, y₀…y₃)` of `x = (r³, r²s, rs², s³)`;
/// `X₁ = ∂_r`, `X₂ = ∂_s` push forward to the fields with those names.
#[derive(Clone, Debug)]
pub struct ConeTube {
    pub coords: Vec<String>,
    pub x1: PolyVectorField,
    pub x2: PolyVectorField,
    pub y1: PolyVectorField,
    pub y2: PolyVectorField,
    /// `r∂_{y₁} + s∂_{y₂}`
    pub y3: PolyVectorField,
    pub x0: PolyVectorField,
    pub y0: PolyVectorField,
}

pub fn cone_tube() -> ConeTube {
    let coords = names(&["r", "s", "y0", "y1", "y2", "y3"]);
    let r = Poly::var(6, 0);
    let s = Poly::var(6, 1);
    let c = |n: i64| Poly::constant(6, Scalar::int(n));
    let m = |ps: &[&Poly]| ps.iter().fold(Poly::one(6), |a, p| &a * *p);
    let x = [m(&[&r, &r, &r]), m(&[&r, &r, &s]), m(&[&r, &s, &s]), m(&[&s, &s, &s])];
    let ypart = |cs: Vec<Poly>| {
        let mut v = PolyVectorField::zero(&coords);
        for (k, p) in cs.into_iter().enumerate() {
            v.coeffs[2 + k] = p;
        }
        v
    };
    let y1 = ypart(x.iter().map(|p| p.derivative(0)).collect());
    let y2 = ypart(x.iter().map(|p| p.derivative(1)).collect());
    let y3 = ypart(vec![Poly::zero(6), r.clone(), s.clone(), Poly::zero(6)]);
    let third = Scalar::frac(1, 3);
    let x1 = PolyVectorField::partial(&coords, 0);
    let x2 = PolyVectorField::partial(&coords, 1);
    let x0 = x1.times(&r).add(&x2.times(&s)).unwrap().scale(&third);
    let y0 = y1.times(&r).add(&y2.times(&s)).unwrap().scale(&third);
    let _ = c;
    ConeTube { coords, x1, x2, y1, y2, y3, x0, y0 }
}

impl ConeTube {
    pub fn frame(&self) -> Vec<PolyVectorField> {
        vec![self.x1.clone(), self.x2.clone(), self.y1.clone(), self.y2.clone()]
    }
    /// `Z_a = ½(X_a − iY_a)`
    pub fn d10(&self) -> Vec<PolyVectorField> {
        let h = Scalar::frac(1, 2);
        let mi = Scalar::complex(0, 1, -1, 2);
        vec![
            self.x1.scale(&h).add(&self.y1.scale(&mi)).unwrap(),
            self.x2.scale(&h).add(&self.y2.scale(&mi)).unwrap(),
        ]
    }
}

// ---- line-parallelism of y'''' = 0 ---------------------------------------

/// Fields on `(x, y₀, y₁, y₂, y₃, t)`.
#[derive(Clone, Debug)]
pub struct OdeFields {
    pub coords: Vec<String>,
    /// Truncated total derivative.
    pub dx: PolyVectorField,
    /// Algebraic integration.
    pub integral: PolyVectorField,
    pub dy: [PolyVectorField; 4],
}

pub fn ode_fields() -> OdeFields {
    let coords = names(&["x", "y0", "y1", "y2", "y3", "t"]);
    let v = |k: usize| Poly::var(6, k);
    let c = |n: i64| Poly::constant(6, Scalar::int(n));
    let (x, y0, y1, y2, y3) = (v(0), v(1), v(2), v(3), v(4));
    let mut dx = PolyVectorField::zero(&coords);
    dx.coeffs = vec![Poly::one(6), y1.clone(), y2.clone(), y3.clone(), Poly::zero(6), Poly::zero(6)];
    let mut integral = PolyVectorField::zero(&coords);
    integral.coeffs = vec![
        &x * &x,
        &(&c(3) * &x) * &y0,
        &(&c(3) * &y0) + &(&x * &y1),
        &(&c(4) * &y1) - &(&x * &y2),
        &c(3) * &(&y2 - &(&x * &y3)),
        Poly::one(6),
    ];
    let dy = [1, 2, 3, 4].map(|k| PolyVectorField::partial(&coords, k));
    OdeFields { coords, dx, integral, dy }
}

pub const ODE_DISTRIBUTIONS: [&str; 10] =
    ["XI", "XY0", "XY0Y1", "XY0Y1Y2", "XY0Y1Y2Y3", "Y0Y1Y2Y3", "IY3", "IY3Y2", "IY3Y2Y1", "IY3Y2Y1Y0"];

impl OdeFields {
    /// Fields named by a word in `X`, `I`, `Y0`…`Y3`.
    pub fn distribution(&self, word: &str) -> Result<Vec<PolyVectorField>> {
        let mut out = Vec::new();
        let b = word.as_bytes();
        let mut i = 0;
        while i < b.len() {
            match b[i] {
                b'X' => out.push(self.dx.clone()),
                b'I' => out.push(self.integral.clone()),
                b'Y' if i + 1 < b.len() && (b'0'..=b'3').contains(&b[i + 1]) => {
                    out.push(self.dy[(b[i + 1] - b'0') as usize].clone());
                    i += 1;
                }
                _ => return Err(Error::Input(format!("bad distribution word {word}"))),
            }
            i += 1;
        }
        Ok(out)
    }
}

/// Pointwise involutivity at the samples.
pub fn involutive(fields: &[PolyVectorField], plan: &SamplePlan) -> Result<bool> {
    let mut brs = Vec::new();
    for i in 0..fields.len() {
        for j in i + 1..fields.len() {
            brs.push(fields[i].bracket(&fields[j])?);
        }
    }
    for s in plan.samples() {
        let p = plan.point(&s);
        let n = p.len();
        let span = Subspace::span(n, &fields.iter().map(|f| f.eval(&p)).collect::<Vec<_>>());
        if brs.iter().any(|b| !span.contains(&b.eval(&p))) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `[a, v] ∈ span(target ∪ modulo)`, and `[a, v] ∉ span(modulo)` when a
/// target is given, at every sample.
fn moves_to(a: &PolyVectorField, v: &PolyVectorField, target: Option<&PolyVectorField>, modulo: &[&PolyVectorField], plan: &SamplePlan) -> Result<bool> {
    let b = a.bracket(v)?;
    for s in plan.samples() {
        let p = plan.point(&s);
        let n = p.len();
        let base: Vec<Vector> = modulo.iter().map(|f| f.eval(&p)).collect();
        let bv = b.eval(&p);
        let m = Subspace::span(n, &base);
        let ok = match target {
            None => m.contains(&bv),
            Some(t) => {
                let mut with = base.clone();
                with.push(t.eval(&p));
                Subspace::span(n, &with).contains(&bv) && !m.contains(&bv)
            }
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Real span of polynomial vector fields, closed under brackets until
/// `cap` dimensions.
#[derive(Clone, Debug)]
pub struct BracketClosure {
    pub fields: Vec<PolyVectorField>,
    pub closed: bool,
}

fn flatten(fields: &[PolyVectorField]) -> (Vec<Vector>, usize) {
    let mut keys: Vec<(usize, Vec<u32>)> = Vec::new();
    for f in fields {
        for (k, c) in f.coeffs.iter().enumerate() {
            for m in c.terms().keys() {
                if !keys.iter().any(|(a, b)| *a == k && b == m) {
                    keys.push((k, m.clone()));
                }
            }
        }
    }
    let rows = fields
        .iter()
        .map(|f| {
            keys.iter()
                .map(|(k, m)| f.coeffs[*k].terms().get(m).cloned().unwrap_or_else(Scalar::zero))
                .collect()
        })
        .collect();
    (rows, keys.len())
}

fn independent(fields: &[PolyVectorField]) -> bool {
    let (rows, n) = flatten(fields);
    n > 0 && Subspace::span(n, &rows).dim() == fields.len()
}

pub fn bracket_closure(gens: &[PolyVectorField], cap: usize) -> Result<BracketClosure> {
    let mut fields: Vec<PolyVectorField> = Vec::new();
    for g in gens {
        let mut t = fields.clone();
        t.push(g.clone());
        if independent(&t) {
            fields = t;
        }
    }
    let mut i = 0;
    while i < fields.len() {
        for j in 0..i {
            let b = fields[j].bracket(&fields[i])?;
            if b.is_zero() {
                continue;
            }
            let mut t = fields.clone();
            t.push(b);
            if independent(&t) {
                fields = t;
                if fields.len() > cap {
                    return Ok(BracketClosure { fields, closed: false });
                }
            }
        }
        i += 1;
    }
    Ok(BracketClosure { fields, closed: true })
}

/// Structure constants of a closed real span of fields.
pub fn closure_algebra(c: &BracketClosure) -> Result<LieAlgebra> {
    let n = c.fields.len();
    let labels: Vec<String> = (0..n).map(|k| format!("f{k}")).collect();
    let lrefs: Vec<&str> = labels.iter().map(String::as_str).collect();
    let mut alg = LieAlgebra::abelian(&lrefs, crate::field::Field::Q);
    for i in 0..n {
        for j in i + 1..n {
            let b = c.fields[i].bracket(&c.fields[j])?;
            let mut all = c.fields.clone();
            all.push(b);
            let (rows, m) = flatten(&all);
            let target = rows[n].clone();
            let mat = Matrix::from_cols(m, &rows[..n]);
            let coeffs = mat.solve(&target).ok_or_else(|| Error::Input("span is not closed".into()))?;
            alg.set_bracket(i, j, coeffs)?;
        }
    }
    Ok(alg)
}

/// Dimensions of the derived series down to its stable term.
pub fn derived_series_dims(alg: &LieAlgebra) -> Vec<usize> {
    let n = alg.dim();
    let mut s = Subspace::full(n);
    let mut out = vec![n];
    loop {
        let next = alg.bracket_spaces(&s, &s);
        if next.dim() == s.dim() {
            break;
        }
        out.push(next.dim());
        s = next;
        if s.dim() == 0 {
            break;
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct ParallelismReport {
    pub lowering: Vec<(usize, bool)>,
    pub raising: Vec<(usize, bool)>,
    pub involutive: Vec<(&'static str, bool)>,
    /// `None` when the span of brackets grew past the cap.
    pub closure_dim: Option<usize>,
    pub closure_cap: usize,
    /// Derived series of the closure and of `gl₂ ⋉ S³ℝ²`, when closed.
    pub derived_dims: Option<(Vec<usize>, Vec<usize>)>,
}

impl ParallelismReport {
    pub fn closure_matches(&self) -> bool {
        self.closure_dim == Some(8) && self.derived_dims.as_ref().is_some_and(|(a, b)| a == b)
    }
}

/// Raising/lowering relations, the ten integrability statements, and the
/// bracket closure of `D_x, ∫_x, ∂_{y₀}, …, ∂_{y₃}` (capped at `cap`).
pub fn parallelism_check(cap: usize, samples: usize, seed: u64) -> Result<ParallelismReport> {
    let o = ode_fields();
    let plan = SamplePlan {
        params: o.coords.clone(),
        parametrization: (0..6).map(|k| Poly::var(6, k)).collect(),
        count: samples,
        seed,
        excluded: vec![],
    };
    let minus_dx = o.dx.scale(&-Scalar::one());
    let mut lowering = Vec::new();
    let mut raising = Vec::new();
    for k in 0..4 {
        let down = if k > 0 { Some(&o.dy[k - 1]) } else { None };
        lowering.push((k, moves_to(&minus_dx, &o.dy[k], down, &[&o.dx, &o.dy[k]], &plan)?));
        let up = if k < 3 { Some(&o.dy[k + 1]) } else { None };
        raising.push((k, moves_to(&o.integral, &o.dy[k], up, &[&o.integral, &o.dy[k]], &plan)?));
    }
    let mut inv = Vec::new();
    for w in ODE_DISTRIBUTIONS {
        inv.push((w, involutive(&o.distribution(w)?, &plan)?));
    }
    let mut gens = vec![o.dx.clone(), o.integral.clone()];
    gens.extend(o.dy.iter().cloned());
    let c = bracket_closure(&gens, cap)?;
    let (closure_dim, derived_dims) = if c.closed {
        let alg = closure_algebra(&c)?;
        let gl = crate::models::gl2_sk(3)?;
        (Some(c.fields.len()), Some((derived_series_dims(&alg), derived_series_dims(&gl))))
    } else {
        (None, None)
    };
    Ok(ParallelismReport { lowering, raising, involutive: inv, closure_dim, closure_cap: cap, derived_dims })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Scalar {
        Scalar::int(n)
    }

    #[test]
    fn bracket_basics() {
        let c = names(&["x"]);
        let dx = PolyVectorField::partial(&c, 0);
        let xdx = dx.times(&Poly::var(1, 0));
        assert_eq!(dx.bracket(&xdx).unwrap(), dx);
        let other = PolyVectorField::partial(&names(&["u"]), 0);
        assert!(dx.bracket(&other).is_err());
    }

    #[test]
    fn tube_freeman_dims() {
        for k in 2..=5 {
            let ch = tube_generators(k).unwrap();
            let fr = freeman_frames(&ch.d10).unwrap();
            let want: Vec<usize> = (0..=k).rev().collect();
            assert_eq!(fr.generic_dims(), want, "k={k}");
            for s in ch.plan(4, 1).samples() {
                assert_eq!(fr.dims_at(&s).unwrap(), want);
                assert!(ch.consistent_at(&s));
            }
        }
    }

    #[test]
    fn k3_sample_from_rst() {
        let ch = tube_generators(3).unwrap();
        let [l, t0, t1] = rst_to_chart(&q(1), &q(1), &q(1)).unwrap();
        let pt = vec![l, t0, t1, q(0), q(2), q(-1), q(5)];
        assert_eq!(pointwise_freeman(&ch.d10, &pt).unwrap(), [3, 2, 1, 0]);
        let mut bad = pt.clone();
        bad[2] = q(0);
        assert!(pointwise_freeman(&ch.d10, &bad).is_err());
    }

    #[test]
    fn cone_and_quartic_identities() {
        assert!(cone_syzygies().iter().all(Poly::is_zero));
        assert!(quartic_vanishes_on_parametrization());
    }

    #[test]
    fn ambient_table_and_z() {
        let at = ambient_tube();
        let d01: Vec<PolyVectorField> = at.z.iter().map(PolyVectorField::conj).collect();
        let table = ambient_bracket_table(&at);
        for (k, row) in table.iter().enumerate() {
            let out = verify_identity(&row.lhs, &row.rhs, &d01, &at.plan).unwrap();
            // the last row carries a ∂z₁ term that is not tangent to the tube
            assert_eq!(out.holds(), k < 8, "{}", row.label);
            assert!(holomorphic_parts_agree(&row.lhs, &row.rhs, &at), "{}", row.label);
        }
        let z33 = at.z[2].conj().bracket(&at.z[2]).unwrap();
        let mut d = at.z.to_vec();
        d.extend(d01);
        assert!(outside_span(&z33, &d, &at.plan));
        let diff = freeman_z_difference(&at);
        assert!(!diff.is_zero());
        assert!(vanishes_on_tangent_variety(&diff, &at));
        assert_eq!(chart_forms_hold(&at), (true, true));
    }

    #[test]
    fn cone_tube_brackets() {
        let ct = cone_tube();
        let two_y3 = ct.y3.scale(&q(2));
        assert_eq!(ct.x1.bracket(&ct.y2).unwrap(), two_y3);
        assert_eq!(ct.x2.bracket(&ct.y1).unwrap(), two_y3);
        assert_eq!(ct.x1.bracket(&ct.y3).unwrap(), PolyVectorField::partial(&ct.coords, 3));
        assert_eq!(ct.x2.bracket(&ct.y3).unwrap(), PolyVectorField::partial(&ct.coords, 4));
        let pt = [q(1), q(2), q(0), q(0), q(0), q(0)];
        let h = hormander_check(&ct.frame(), &pt).unwrap();
        assert_eq!((h.depth, h.dims.clone(), h.bracket_generating), (3, vec![4, 5, 6], true));
        let one = [q(1), q(1), q(3), q(-1), q(0), q(2)];
        let cc = cauchy_characteristic(&ct.frame(), &one).unwrap();
        assert_eq!(cc.dim(), 2);
        assert!(cc.contains(&ct.x0.eval(&one)) && cc.contains(&ct.y0.eval(&one)));
        assert_eq!(pointwise_freeman(&ct.d10(), &one).unwrap(), [2, 1, 0]);
    }

    #[test]
    fn trivial_distributions() {
        let c = names(&["x", "y", "z"]);
        let dx = PolyVectorField::partial(&c, 0);
        let dy = PolyVectorField::partial(&c, 1);
        let dz = PolyVectorField::partial(&c, 2);
        let contact = dx.add(&dz.times(&Poly::var(3, 1))).unwrap();
        let pt = [q(1), q(2), q(3)];
        let h = hormander_check(&[dx.clone(), dy.clone()], &pt).unwrap();
        assert_eq!((h.dims.last().copied(), h.bracket_generating), (Some(2), false));
        let h = hormander_check(&[contact.clone(), dy.clone()], &pt).unwrap();
        assert_eq!((h.depth, h.bracket_generating), (2, true));
        assert_eq!(cauchy_characteristic(&[contact, dy.clone()], &pt).unwrap().dim(), 0);
        assert_eq!(cauchy_characteristic(&[dx, dy], &pt).unwrap().dim(), 2);
    }

    #[test]
    fn ode_relations() {
        let r = parallelism_check(20, 5, 3).unwrap();
        assert!(r.lowering.iter().all(|x| x.1), "{:?}", r.lowering);
        assert!(r.raising.iter().all(|x| x.1), "{:?}", r.raising);
        assert!(r.involutive.iter().all(|x| x.1), "{:?}", r.involutive);
        // brackets of the printed ∫_x keep producing new fields
        assert_eq!(r.closure_dim, None);
        assert!(!r.closure_matches());
    }
}
