//! Spherical harmonics on `S^{N-1}` with exact rational coefficients, zonal
//! vectors, and the projection constants between nested spheres.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numerics::binomial;
use crate::numerics::exact::{rat, rat_to_f64, RatMatrix};
use crate::numerics::{Poly, QuadratureRule, SphereRule};

/// Largest degree accepted by the sphere model.
pub const DEGREE_CUTOFF: usize = 16;

/// Degree-`d` harmonic polynomials in `N` variables.
#[derive(Debug, Clone)]
pub struct HarmonicSpace {
    pub nvars: usize,
    pub degree: usize,
    pub basis: Vec<Poly>,
}

/// `dim H_d(R^N) = C(N+d-1, d) - C(N+d-3, d-2)`.
pub fn harmonic_dimension(nvars: usize, d: usize) -> u128 {
    let (n, d) = (nvars as u64, d as u64);
    let all = binomial(n + d - 1, d);
    if d < 2 {
        all
    } else {
        all - binomial(n + d - 3, d - 2)
    }
}

/// Monomials of degree `d` in the variables `1..nvars` (variable 0 unused).
fn tail_monomials(nvars: usize, d: usize) -> Vec<Vec<u32>> {
    fn rec(i: usize, nvars: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == nvars - 1 {
            cur[i] = left;
            out.push(cur.clone());
            cur[i] = 0;
            return;
        }
        for k in (0..=left).rev() {
            cur[i] = k;
            rec(i + 1, nvars, left - k, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    if nvars < 2 {
        return out;
    }
    rec(1, nvars, d as u32, &mut vec![0; nvars], &mut out);
    out
}

/// Extends `x_0^k f` (`f` free of `x_0`, `k ∈ {0, 1}`) to the unique harmonic
/// polynomial `sum_j x_0^j f_j` with `f_{j+2} = -Δ' f_j / ((j+1)(j+2))`.
fn harmonic_extension(seed: Poly, k: usize, d: usize) -> Poly {
    let n = seed.nvars;
    let mut out = Poly::zero(n);
    let mut f = seed;
    let mut j = k;
    while !f.is_zero() && j <= d {
        let mut lifted = f.clone();
        for _ in 0..j {
            lifted = lifted.mul_var(0);
        }
        out = out.add(&lifted);
        let lap = f.laplacian(1..n);
        f = lap.scale(&rat(-1, ((j + 1) * (j + 2)) as i64));
        j += 2;
    }
    out
}

pub fn harmonic_basis(nvars: usize, d: usize) -> Result<HarmonicSpace> {
    if nvars < 2 {
        return Err(Error::Invalid(format!("harmonics need at least 2 variables, got {nvars}")));
    }
    if d > DEGREE_CUTOFF {
        return Err(Error::DegreeBeyondCutoff { degree: d, cutoff: DEGREE_CUTOFF });
    }
    let mut basis: Vec<Poly> = tail_monomials(nvars, d)
        .into_iter()
        .map(|e| harmonic_extension(Poly::monomial(e, BigRational::one()), 0, d))
        .collect();
    if d >= 1 {
        basis.extend(
            tail_monomials(nvars, d - 1)
                .into_iter()
                .map(|e| harmonic_extension(Poly::monomial(e, BigRational::one()), 1, d)),
        );
    }
    Ok(HarmonicSpace { nvars, degree: d, basis })
}

fn odd_double_factorial(k: u32) -> BigInt {
    // (k-1)!! for even k
    let mut acc = BigInt::one();
    let mut j = k as i64 - 1;
    while j > 1 {
        acc *= j;
        j -= 2;
    }
    acc
}

/// `∫ x^a dσ` over `S^{N-1}` with total mass one.
pub fn sphere_moment(exps: &[u32]) -> BigRational {
    if exps.iter().any(|e| e % 2 == 1) {
        return BigRational::zero();
    }
    let n = exps.len() as i64;
    let half: u32 = exps.iter().sum::<u32>() / 2;
    let num: BigInt = exps.iter().map(|&e| odd_double_factorial(e)).product();
    let den: BigInt = (0..half as i64).map(|j| BigInt::from(n + 2 * j)).product();
    BigRational::new(num, den)
}

/// `<p, q>` in `L²(S^{N-1})` for the normalized measure (real coefficients).
pub fn sphere_inner(p: &Poly, q: &Poly) -> BigRational {
    let mut acc = BigRational::zero();
    for (ea, ca) in &p.terms {
        for (eb, cb) in &q.terms {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
            let m = sphere_moment(&e);
            if !m.is_zero() {
                acc += ca * cb * m;
            }
        }
    }
    acc
}

impl HarmonicSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Gram matrix of the basis under the normalized sphere measure.
    pub fn gram(&self) -> RatMatrix {
        let n = self.dim();
        let mut g = RatMatrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let v = sphere_inner(&self.basis[i], &self.basis[j]);
                g[(j, i)] = v.clone();
                g[(i, j)] = v;
            }
        }
        g
    }

    pub fn gram_csv(&self) -> String {
        let g = self.gram();
        (0..g.rows)
            .map(|i| (0..g.cols).map(|j| g[(i, j)].to_string()).collect::<Vec<_>>().join(","))
            .collect::<Vec<_>>()
            .join("\n")
    }

    /// Basis of the subspace killed by every rotation generator
    /// `x_i ∂_j - x_j ∂_i` with `i, j != axis`. Harmonic polynomials are
    /// determined by their terms of degree at most one in `x_axis`, so only
    /// those coefficients are constrained.
    pub fn fixed_subspace(&self, axis: usize) -> Result<Vec<Poly>> {
        if axis >= self.nvars {
            return Err(Error::AxisNotFixed);
        }
        let others: Vec<usize> = (0..self.nvars).filter(|&i| i != axis).collect();
        let mut rows: std::collections::BTreeMap<(usize, usize, Vec<u32>), Vec<(usize, BigRational)>> =
            Default::default();
        for (b, h) in self.basis.iter().enumerate() {
            for (a, &i) in others.iter().enumerate() {
                for &j in &others[a + 1..] {
                    let rot = h.derivative(j).mul_var(i).sub(&h.derivative(i).mul_var(j));
                    for (e, c) in rot.terms {
                        if e[axis] <= 1 {
                            rows.entry((i, j, e)).or_default().push((b, c));
                        }
                    }
                }
            }
        }
        let mut m = RatMatrix::zeros(rows.len(), self.dim());
        for (r, entries) in rows.values().enumerate() {
            for (b, c) in entries {
                m[(r, *b)] += c;
            }
        }
        Ok(m.nullspace()
            .into_iter()
            .map(|v| {
                self.basis.iter().zip(&v).fold(Poly::zero(self.nvars), |acc, (h, c)| acc.add(&h.scale(c)))
            })
            .collect())
    }
}

/// A zonal harmonic with its exact squared norm; the unit vector is
/// `poly / sqrt(norm_sq)`, positive at the pole `e_axis`.
#[derive(Debug, Clone)]
pub struct ZonalVector {
    pub poly: Poly,
    pub norm_sq: BigRational,
    pub axis: usize,
}

impl ZonalVector {
    pub fn eval_unit(&self, x: &[f64]) -> f64 {
        self.poly.eval(x) / rat_to_f64(&self.norm_sq).sqrt()
    }

    pub fn value_at_pole(&self) -> f64 {
        let mut e = vec![0.0; self.poly.nvars];
        e[self.axis] = 1.0;
        self.eval_unit(&e)
    }
}

pub fn zonal_vector(space: &HarmonicSpace, axis: usize) -> Result<ZonalVector> {
    let fixed = space.fixed_subspace(axis)?;
    if fixed.len() != 1 {
        return Err(Error::Invalid(format!("isotropy-fixed subspace has dimension {}", fixed.len())));
    }
    let mut poly = fixed.into_iter().next().unwrap();
    let mut pole = vec![0u32; space.nvars];
    pole[axis] = space.degree as u32;
    let lead = poly.terms.get(&pole).cloned().unwrap_or_else(BigRational::zero);
    if lead.is_zero() {
        return Err(Error::Invalid("zonal vector vanishes at the pole".into()));
    }
    poly = poly.scale(&lead.recip());
    let norm_sq = sphere_inner(&poly, &poly);
    Ok(ZonalVector { poly, norm_sq, axis })
}

fn check_levels(m: usize, n: usize, d: usize) -> Result<()> {
    if n < 2 || m < n {
        return Err(Error::Invalid(format!("need m >= n >= 2, got m = {m}, n = {n}")));
    }
    if d > DEGREE_CUTOFF {
        return Err(Error::DegreeBeyondCutoff { degree: d, cutoff: DEGREE_CUTOFF });
    }
    Ok(())
}

/// `c²` for the degree-`d` zonal vectors of `S^n ⊂ S^m`, exact.
pub fn zonal_projection_constant_sq(m: usize, n: usize, d: usize) -> Result<BigRational> {
    check_levels(m, n, d)?;
    let wm = zonal_vector(&harmonic_basis(m + 1, d)?, 0)?;
    let wn = zonal_vector(&harmonic_basis(n + 1, d)?, 0)?;
    let wn_up = wn.poly.extend_vars(m + 1);
    let cross = sphere_inner(&wm.poly, &wn_up);
    let up_sq = sphere_inner(&wn_up, &wn_up);
    Ok(&cross * &cross / (wm.norm_sq * up_sq))
}

/// `c_{m,n,d} = |<ŵ_m, ι ŵ_n>|` with `ι` the renormalized polynomial
/// inclusion of level `n` harmonics into level `m`.
pub fn zonal_projection_constant(m: usize, n: usize, d: usize) -> Result<f64> {
    let sq = zonal_projection_constant_sq(m, n, d)?;
    Ok(rat_to_f64(&sq).sqrt())
}

/// The same constant by product quadrature on `S^m`.
pub fn zonal_constant_quadrature(m: usize, n: usize, d: usize) -> Result<f64> {
    check_levels(m, n, d)?;
    let wm = zonal_vector(&harmonic_basis(m + 1, d)?, 0)?;
    let wn = zonal_vector(&harmonic_basis(n + 1, d)?, 0)?;
    let rule = SphereRule::new(m + 1, d + 1);
    let cross = rule.integrate(|x| wm.eval_unit(x) * wn.eval_unit(&x[..n + 1]));
    let up_sq = rule.integrate(|x| wn.eval_unit(&x[..n + 1]).powi(2));
    Ok(cross.abs() / up_sq.sqrt())
}

/// Gegenbauer polynomial `C_d^α(x)` by the three-term recurrence.
pub fn gegenbauer(d: usize, alpha: f64, x: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, 2.0 * alpha * x);
    if d == 0 {
        return prev;
    }
    for k in 2..=d {
        let kf = k as f64;
        let next = (2.0 * x * (kf + alpha - 1.0) * cur - (kf + 2.0 * alpha - 2.0) * prev) / kf;
        prev = cur;
        cur = next;
    }
    cur
}

/// Unit zonal harmonic of `S^{N-1}` as a function of `t = <x, e_0>`.
fn unit_zonal_profile(nvars: usize, d: usize) -> impl Fn(f64) -> f64 {
    let alpha = (nvars as f64 - 2.0) / 2.0;
    let scale = (harmonic_dimension(nvars, d) as f64).sqrt() / gegenbauer(d, alpha, 1.0);
    move |t| scale * gegenbauer(d, alpha, t)
}

/// The same constant from Gegenbauer profiles: the inner integral over
/// `S^n` is one-dimensional in `t = u_0`, and the radius `r = |x'|` of the
/// first `n + 1` coordinates has `r²` Beta-distributed on `S^m`.
pub fn zonal_constant_gegenbauer(m: usize, n: usize, d: usize) -> Result<f64> {
    check_levels(m, n, d)?;
    if m == n {
        return Ok(1.0);
    }
    let wm = unit_zonal_profile(m + 1, d);
    let wn = unit_zonal_profile(n + 1, d);
    let lam = (n as f64 - 2.0) / 2.0;
    let polar = QuadratureRule::jacobi(d + 1, lam, lam);
    let polar_mass: f64 = polar.weights.iter().sum();
    let inner = |r: f64| polar.integrate(|t| wm(r * t) * wn(t)) / polar_mass;
    // u = r², x = 2u - 1, weight (1-x)^{(m-n-2)/2} (1+x)^{(n-1)/2}
    let radial = QuadratureRule::jacobi(d + 1, (m as f64 - n as f64 - 2.0) / 2.0, (n as f64 - 1.0) / 2.0);
    let radial_mass: f64 = radial.weights.iter().sum();
    let cross = radial.integrate(|x| {
        let r = ((x + 1.0) / 2.0).sqrt();
        r.powi(d as i32) * inner(r)
    }) / radial_mass;
    let up_sq = radial.integrate(|x| ((x + 1.0) / 2.0).powi(d as i32)) / radial_mass;
    Ok(cross.abs() / up_sq.sqrt())
}

/// Squared norm ratio `‖p‖²_{S^m} / ‖p‖²_{S^n}` for homogeneous degree `d`.
pub fn inclusion_norm_ratio(m: usize, n: usize, d: usize) -> BigRational {
    (0..d as i64).fold(BigRational::one(), |acc, j| acc * rat(n as i64 + 1 + 2 * j, m as i64 + 1 + 2 * j))
}

impl ZonalVector {
    pub fn is_positive_at_pole(&self) -> bool {
        let mut pole = vec![0u32; self.poly.nvars];
        pole[self.axis] = self.poly.degree().unwrap_or(0);
        self.poly.terms.get(&pole).is_some_and(|c| c.is_positive())
    }
}
