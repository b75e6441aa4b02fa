//! Truncated Bargmann–Fock model of the Heisenberg representations `π_{n,t}`.
//!
//! The orthonormal basis is `μ_m = |t|^{|m|/2} w^m / sqrt(m!)` for the inner
//! product `(|t|/π)^n ∫ f conj(f') e^{-|t||w|²} dw`. `π_t(z, v)` acts as
//! `e^{itz} D(α)` with `D` the Weyl displacement operator and `α = sqrt|t| v`
//! for `t > 0`, `α = sqrt|t| conj(v)` for `t < 0`.

use std::collections::HashMap;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::exact::RatMatrix;
use crate::numerics::{gamma_moment, matrix_exp, QuadratureRule, Tolerances};

/// `(z, w)` with the center `Im C` stored as the real number `z`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HeisenbergPoint {
    pub z: f64,
    pub w: Vec<Complex64>,
}

impl HeisenbergPoint {
    pub fn identity(n: usize) -> Self {
        HeisenbergPoint { z: 0.0, w: vec![Complex64::zero(); n] }
    }

    pub fn central(n: usize, z: f64) -> Self {
        HeisenbergPoint { z, w: vec![Complex64::zero(); n] }
    }

    pub fn new(z: f64, w: Vec<Complex64>) -> Self {
        HeisenbergPoint { z, w }
    }

    pub fn dim(&self) -> usize {
        self.w.len()
    }

    pub fn norm_w(&self) -> f64 {
        self.w.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
    }
}

/// `<w, w'> = sum w_j conj(w'_j)`.
pub fn hermitian(w: &[Complex64], w2: &[Complex64]) -> Complex64 {
    w.iter().zip(w2).map(|(a, b)| a * b.conj()).sum()
}

/// `(z,w)(z',w') = (z + z' + Im<w,w'>, w + w')`.
pub fn heis_mul(g: &HeisenbergPoint, h: &HeisenbergPoint) -> Result<HeisenbergPoint> {
    if g.dim() != h.dim() {
        return Err(Error::DimensionMismatch(g.dim(), h.dim()));
    }
    Ok(HeisenbergPoint {
        z: g.z + h.z + hermitian(&g.w, &h.w).im,
        w: g.w.iter().zip(&h.w).map(|(a, b)| a + b).collect(),
    })
}

pub fn heis_inv(g: &HeisenbergPoint) -> HeisenbergPoint {
    HeisenbergPoint { z: -g.z, w: g.w.iter().map(|x| -x).collect() }
}

/// `g h g^{-1} h^{-1}`.
pub fn heis_commutator(g: &HeisenbergPoint, h: &HeisenbergPoint) -> Result<HeisenbergPoint> {
    heis_mul(&heis_mul(&heis_mul(g, h)?, &heis_inv(g))?, &heis_inv(h))
}

/// Multi-indices `|m| <= cutoff` in graded lexicographic order: by total
/// degree, then with larger leading exponents first.
#[derive(Debug, Clone, PartialEq)]
pub struct FockBasis {
    pub n: usize,
    pub cutoff: usize,
    pub indices: Vec<Vec<usize>>,
    lookup: HashMap<Vec<usize>, usize>,
}

fn compositions(n: usize, total: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=total).rev() {
        for rest in compositions(n - 1, total - first) {
            let mut v = vec![first];
            v.extend(rest);
            out.push(v);
        }
    }
    out
}

impl FockBasis {
    pub fn new(n: usize, cutoff: usize) -> Self {
        let indices: Vec<Vec<usize>> = (0..=cutoff).flat_map(|d| compositions(n, d)).collect();
        let lookup = indices.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        FockBasis { n, cutoff, indices, lookup }
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn position(&self, m: &[usize]) -> Result<usize> {
        self.lookup
            .get(m)
            .copied()
            .ok_or_else(|| Error::IndexBeyondCutoff { index: m.to_vec(), cutoff: self.cutoff })
    }

    /// Positions of the indices with `|m| <= degree`; a prefix of the order.
    pub fn protected(&self, degree: usize) -> usize {
        self.indices.iter().take_while(|m| m.iter().sum::<usize>() <= degree).count()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FockVector {
    pub n: usize,
    pub cutoff: usize,
    pub coeffs: Vec<Complex64>,
}

impl FockVector {
    pub fn zero(basis: &FockBasis) -> Self {
        FockVector { n: basis.n, cutoff: basis.cutoff, coeffs: vec![Complex64::zero(); basis.len()] }
    }

    pub fn basis_vector(basis: &FockBasis, m: &[usize]) -> Result<Self> {
        let mut v = Self::zero(basis);
        v.coeffs[basis.position(m)?] = Complex64::one();
        Ok(v)
    }

    pub fn norm_sq(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn inner(&self, other: &FockVector) -> Complex64 {
        self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a * b.conj()).sum()
    }

    /// Value of the function `sum c_m μ_m` at `w`, for parameter `t`.
    pub fn eval(&self, basis: &FockBasis, t: f64, w: &[Complex64]) -> Complex64 {
        basis
            .indices
            .iter()
            .zip(&self.coeffs)
            .map(|(m, c)| c * monomial_mu(m, t, w))
            .sum()
    }
}

fn factorial_f64(k: usize) -> f64 {
    (1..=k).map(|j| j as f64).product()
}

/// `μ_m(w) = |t|^{|m|/2} w^m / sqrt(m!)`.
pub fn monomial_mu(m: &[usize], t: f64, w: &[Complex64]) -> Complex64 {
    let mut acc = Complex64::one();
    for (&k, x) in m.iter().zip(w) {
        acc *= (x * t.abs().sqrt()).powu(k as u32) / factorial_f64(k).sqrt();
    }
    acc
}

/// Displacement parameter for `π_t(0, w)`.
pub fn alpha_for(t: f64, w: &[Complex64]) -> Vec<Complex64> {
    let s = t.abs().sqrt();
    w.iter().map(|x| if t > 0.0 { x * s } else { x.conj() * s }).collect()
}

/// `e^{|α|²/2} <l| D(α) |m>` for one mode, from the normal-ordered form
/// `D(α) = e^{-|α|²/2} e^{α a†} e^{-conj(α) a}`.
pub fn displacement_polynomial(l: usize, m: usize, alpha: Complex64) -> Complex64 {
    let lf = factorial_f64(l).sqrt() * factorial_f64(m).sqrt();
    let mut acc = Complex64::zero();
    for k in 0..=l.min(m) {
        let c = lf / (factorial_f64(k) * factorial_f64(l - k) * factorial_f64(m - k));
        acc += c * alpha.powu((l - k) as u32) * (-alpha.conj()).powu((m - k) as u32);
    }
    acc
}

/// Untruncated `<μ_l, D(α) μ_m>` over all modes.
pub fn displacement_element(l: &[usize], m: &[usize], alpha: &[Complex64]) -> Complex64 {
    let mut acc = Complex64::one();
    let mut norm = 0.0;
    for ((&a, &b), &x) in l.iter().zip(m).zip(alpha) {
        acc *= displacement_polynomial(a, b, x);
        norm += x.norm_sqr();
    }
    acc * (-norm / 2.0).exp()
}

#[derive(Debug, Clone)]
pub struct FockOperator {
    pub t: f64,
    pub g: HeisenbergPoint,
    pub basis: FockBasis,
    pub matrix: DMatrix<Complex64>,
    /// Estimated error on the protected range `|m| <= cutoff - buffer`.
    pub truncation_estimate: f64,
}

/// Probability that `D(α)` moves `μ_m` above total degree `cutoff`.
fn escape_mass(m: &[usize], alpha: &[Complex64], cutoff: usize) -> f64 {
    // per-mode distributions over 0..=cutoff, then convolve
    let mut dist = vec![0.0; cutoff + 1];
    dist[0] = 1.0;
    for (&mj, &a) in m.iter().zip(alpha) {
        let row: Vec<f64> = (0..=cutoff)
            .map(|j| (displacement_polynomial(j, mj, a) * (-a.norm_sqr() / 2.0).exp()).norm_sqr())
            .collect();
        let mut next = vec![0.0; cutoff + 1];
        for (s, &p) in dist.iter().enumerate() {
            for (j, &q) in row.iter().enumerate().take(cutoff + 1 - s) {
                next[s + j] += p * q;
            }
        }
        dist = next;
    }
    (1.0 - dist.iter().sum::<f64>()).max(0.0)
}

pub fn default_buffer(cutoff: usize) -> usize {
    cutoff / 2
}

fn check_t(t: f64) -> Result<()> {
    if t == 0.0 || !t.is_finite() {
        return Err(Error::ZeroCentralParameter);
    }
    Ok(())
}

/// Truncation error estimate for the protected block of `π_t(g)` at
/// `cutoff`: the largest probability of leaving the cutoff from the protected
/// range. Errors inside the block need an escape and a return, so they are
/// second order in the escaping amplitude; entries from protected inputs to
/// unprotected outputs are only bounded by the square root of this value.
pub fn truncation_estimate(t: f64, g: &HeisenbergPoint, cutoff: usize, buffer: usize) -> f64 {
    let alpha = alpha_for(t, &g.w);
    let basis = FockBasis::new(g.dim(), cutoff.saturating_sub(buffer));
    basis.indices.iter().map(|m| escape_mass(m, &alpha, cutoff)).fold(0.0, f64::max)
}

/// `π_t(g)` as `e^{itz} exp(A)` with `A = sum α_j a_j† - conj(α_j) a_j`
/// truncated at total degree `cutoff`.
pub fn fock_operator(n: usize, t: f64, g: &HeisenbergPoint, cutoff: usize) -> Result<FockOperator> {
    fock_operator_with(n, t, g, cutoff, default_buffer(cutoff), &Tolerances::default())
}

pub fn fock_operator_with(
    n: usize,
    t: f64,
    g: &HeisenbergPoint,
    cutoff: usize,
    buffer: usize,
    tol: &Tolerances,
) -> Result<FockOperator> {
    check_t(t)?;
    if g.dim() != n {
        return Err(Error::DimensionMismatch(n, g.dim()));
    }
    let estimate = truncation_estimate(t, g, cutoff, buffer);
    if estimate > tol.truncation {
        return Err(Error::CutoffTooSmall { cutoff, estimate });
    }
    let basis = FockBasis::new(n, cutoff);
    let alpha = alpha_for(t, &g.w);
    let dim = basis.len();
    let mut gen = DMatrix::<Complex64>::zeros(dim, dim);
    for (col, m) in basis.indices.iter().enumerate() {
        for j in 0..n {
            let mut up = m.clone();
            up[j] += 1;
            if let Ok(row) = basis.position(&up) {
                gen[(row, col)] += alpha[j] * ((m[j] + 1) as f64).sqrt();
            }
            if m[j] > 0 {
                let mut down = m.clone();
                down[j] -= 1;
                let row = basis.position(&down)?;
                gen[(row, col)] -= alpha[j].conj() * (m[j] as f64).sqrt();
            }
        }
    }
    let phase = Complex64::from_polar(1.0, t * g.z);
    let matrix = if alpha.iter().all(|a| a.is_zero()) {
        DMatrix::identity(dim, dim) * phase
    } else {
        matrix_exp(&gen)?.value * phase
    };
    Ok(FockOperator { t, g: g.clone(), basis, matrix, truncation_estimate: estimate })
}

impl FockOperator {
    pub fn apply(&self, v: &FockVector) -> FockVector {
        let x = nalgebra::DVector::from_column_slice(&v.coeffs);
        FockVector { n: v.n, cutoff: v.cutoff, coeffs: (&self.matrix * x).iter().copied().collect() }
    }

    pub fn entry(&self, l: &[usize], m: &[usize]) -> Result<Complex64> {
        Ok(self.matrix[(self.basis.position(l)?, self.basis.position(m)?)])
    }

    /// `max |(U*U - I)_{ij}|` over the first `protected` basis columns.
    pub fn unitarity_defect(&self, degree: usize) -> f64 {
        let k = self.basis.protected(degree);
        let cols = self.matrix.columns(0, k);
        let gram = cols.adjoint() * cols;
        let mut worst: f64 = 0.0;
        for i in 0..k {
            for j in 0..k {
                let want = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((gram[(i, j)] - want).norm());
            }
        }
        worst
    }

    /// Rows are output indices, columns input indices, both in basis order.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("row,col,re,im\n");
        for (i, l) in self.basis.indices.iter().enumerate() {
            for (j, m) in self.basis.indices.iter().enumerate() {
                let z = self.matrix[(i, j)];
                if z.norm() > 0.0 {
                    out.push_str(&format!("{:?},{:?},{:e},{:e}\n", l, m, z.re, z.im));
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RepresentationDefect {
    /// Frobenius norm of `P(U(g)U(h) - U(gh))P`, `P` the projection onto
    /// degrees `<= degree`.
    pub protected: f64,
    /// Frobenius norm of `(U(g)U(h) - U(gh))P` over all truncated outputs.
    pub full_output: f64,
}

/// Defect of the group law for the truncated operators on inputs of degree
/// `<= degree`.
pub fn representation_defect(
    n: usize,
    t: f64,
    g: &HeisenbergPoint,
    h: &HeisenbergPoint,
    cutoff: usize,
    degree: usize,
) -> Result<RepresentationDefect> {
    let tol = Tolerances { truncation: f64::INFINITY, ..Tolerances::default() };
    let buffer = cutoff - degree.min(cutoff);
    let ug = fock_operator_with(n, t, g, cutoff, buffer, &tol)?;
    let uh = fock_operator_with(n, t, h, cutoff, buffer, &tol)?;
    let ugh = fock_operator_with(n, t, &heis_mul(g, h)?, cutoff, buffer, &tol)?;
    let k = ug.basis.protected(degree);
    let diff = (&ug.matrix * uh.matrix.columns(0, k)) - ugh.matrix.columns(0, k);
    Ok(RepresentationDefect { protected: diff.rows(0, k).norm(), full_output: diff.norm() })
}

/// `f_{l,m}(g) = <μ_l, π_t(g) μ_m>` from the untruncated displacement
/// element; `cutoff` only bounds the admissible indices.
pub fn matrix_coefficient(t: f64, l: &[usize], m: &[usize], g: &HeisenbergPoint, cutoff: usize) -> Result<Complex64> {
    check_t(t)?;
    if l.len() != g.dim() || m.len() != g.dim() {
        return Err(Error::DimensionMismatch(l.len(), g.dim()));
    }
    for idx in [l, m] {
        if idx.iter().sum::<usize>() > cutoff {
            return Err(Error::IndexBeyondCutoff { index: idx.to_vec(), cutoff });
        }
    }
    let alpha = alpha_for(t, &g.w);
    Ok(Complex64::from_polar(1.0, t * g.z) * displacement_element(l, m, &alpha))
}

/// Gram matrix `∫_{C^n} f_a conj(f_b) dw` of the coefficients `f_{l,m}` for
/// all pairs with `|l|, |m| <= cutoff`, by a Gauss–Hermite product rule in
/// `α` of the given order. The Gaussian factor is carried by the rule.
fn coefficient_gram_at(n: usize, t: f64, pairs: &[(Vec<usize>, Vec<usize>)], order: usize) -> DMatrix<Complex64> {
    let rule = QuadratureRule::hermite(order);
    let dims = 2 * n;
    let total = order.pow(dims as u32);
    let k = pairs.len();
    let mut gram = DMatrix::<Complex64>::zeros(k, k);
    let mut idx = vec![0usize; dims];
    let mut alpha = vec![Complex64::zero(); n];
    let mut vals = vec![Complex64::zero(); k];
    for _ in 0..total {
        let mut wt = 1.0;
        for j in 0..n {
            alpha[j] = Complex64::new(rule.nodes[idx[2 * j]], rule.nodes[idx[2 * j + 1]]);
            wt *= rule.weights[idx[2 * j]] * rule.weights[idx[2 * j + 1]];
        }
        for (v, (l, m)) in vals.iter_mut().zip(pairs) {
            *v = l.iter().zip(m).zip(&alpha).map(|((&a, &b), &x)| displacement_polynomial(a, b, x)).product();
        }
        for a in 0..k {
            let va = vals[a] * wt;
            for b in a..k {
                gram[(a, b)] += va * vals[b].conj();
            }
        }
        for d in idx.iter_mut() {
            *d += 1;
            if *d < order {
                break;
            }
            *d = 0;
        }
    }
    // dα = |t|^n dw
    let jac = t.abs().powi(-(n as i32));
    for a in 0..k {
        for b in a..k {
            gram[(a, b)] *= jac;
            gram[(b, a)] = gram[(a, b)].conj();
        }
    }
    gram
}

#[derive(Debug, Clone)]
pub struct CoefficientGram {
    pub pairs: Vec<(Vec<usize>, Vec<usize>)>,
    pub gram: DMatrix<Complex64>,
    pub order: usize,
    /// Largest entry change between the last two orders.
    pub residual: f64,
}

/// Orthogonality-relation Gram matrix over all `(l, m)` with `|l|, |m| <=
/// cutoff`, doubling the Hermite order until successive results agree.
pub fn coefficient_gram(n: usize, t: f64, cutoff: usize, tol: f64) -> Result<CoefficientGram> {
    check_t(t)?;
    if n == 0 || n > 2 {
        return Err(Error::Invalid(format!("coefficient quadrature supports n = 1, 2; got {n}")));
    }
    let basis = FockBasis::new(n, cutoff);
    let pairs: Vec<(Vec<usize>, Vec<usize>)> = basis
        .indices
        .iter()
        .flat_map(|l| basis.indices.iter().map(move |m| (l.clone(), m.clone())))
        .collect();
    // the integrand has degree 4 * cutoff, exact from order 2 * cutoff + 1
    let mut order = cutoff + 1;
    let mut prev = coefficient_gram_at(n, t, &pairs, order);
    loop {
        let next_order = order * 2;
        if next_order > 256 {
            return Err(Error::QuadratureNonconvergence { order, residual: f64::NAN });
        }
        let next = coefficient_gram_at(n, t, &pairs, next_order);
        let scale = next.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let residual = (&next - &prev).iter().map(|z| z.norm()).fold(0.0, f64::max);
        if residual <= tol * scale {
            return Ok(CoefficientGram { pairs, gram: next, order: next_order, residual });
        }
        prev = next;
        order = next_order;
    }
}

/// `∫_{C^n} f_{l,m} conj(f_{l',m'}) dw` for one pair of coefficients.
pub fn coefficient_inner_product(
    t: f64,
    a: (&[usize], &[usize]),
    b: (&[usize], &[usize]),
    tol: f64,
) -> Result<Complex64> {
    check_t(t)?;
    let n = a.0.len();
    if n == 0 || n > 2 {
        return Err(Error::Invalid(format!("coefficient quadrature supports n = 1, 2; got {n}")));
    }
    let degree: usize = a.0.iter().chain(a.1).chain(b.0).chain(b.1).sum();
    let pairs = vec![(a.0.to_vec(), a.1.to_vec()), (b.0.to_vec(), b.1.to_vec())];
    let mut order = degree / 2 + 1;
    let mut prev = coefficient_gram_at(n, t, &pairs, order)[(0, 1)];
    loop {
        order *= 2;
        if order > 256 {
            return Err(Error::QuadratureNonconvergence { order: order / 2, residual: f64::NAN });
        }
        let g = coefficient_gram_at(n, t, &pairs, order);
        let next = g[(0, 1)];
        let scale = g[(0, 0)].norm().max(g[(1, 1)].norm());
        if (next - prev).norm() <= tol * scale {
            return Ok(next);
        }
        prev = next;
    }
}

/// `(k+n)! / 2^{k+n}`, the squared norm of `e^{-|t|} t^k μ_m ⊗ conj(μ_m')`
/// in the direct integral over `|t|^n dt`.
pub fn regular_norm_sq(n: u32, k: u32) -> BigRational {
    let e = n + k;
    BigRational::new(crate::numerics::factorial(e as u64), BigInt::one() << e)
}

/// `∫ e^{-2|t|} |t|^{k+n} dt` by Gauss–Laguerre quadrature.
pub fn regular_norm_sq_quadrature(n: u32, k: u32) -> f64 {
    2.0 * gamma_moment(n + k).quadrature
}

/// One generator `e^{-|t|} p(t) μ_m ⊗ conj(μ_m')` of the regular functions.
#[derive(Debug, Clone, PartialEq)]
pub struct RegularTerm {
    /// Coefficients of `p` in increasing degree.
    pub poly: Vec<BigRational>,
    pub m: Vec<usize>,
    pub m2: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegularFunction {
    pub n: usize,
    pub terms: Vec<RegularTerm>,
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_eval(p: &[BigRational], t: f64) -> f64 {
    p.iter().rev().fold(0.0, |acc, c| acc * t + crate::numerics::exact::rat_to_f64(c))
}

impl RegularFunction {
    pub fn zero(n: usize) -> Self {
        RegularFunction { n, terms: vec![] }
    }

    pub fn single(poly: Vec<BigRational>, m: Vec<usize>, m2: Vec<usize>) -> Self {
        RegularFunction { n: m.len(), terms: vec![RegularTerm { poly, m, m2 }] }
    }

    /// `sum e^{-|t|} p(t) f_{m,m'; t}(g)`.
    pub fn eval(&self, t: f64, g: &HeisenbergPoint) -> Result<Complex64> {
        check_t(t)?;
        let alpha = alpha_for(t, &g.w);
        let phase = Complex64::from_polar(1.0, t * g.z);
        Ok(self
            .terms
            .iter()
            .map(|term| (-t.abs()).exp() * poly_eval(&term.poly, t) * phase * displacement_element(&term.m, &term.m2, &alpha))
            .sum())
    }

    /// Product with indices and polynomials combined term by term.
    pub fn mul(&self, other: &RegularFunction) -> RegularFunction {
        let mut terms = Vec::new();
        for a in &self.terms {
            for b in &other.terms {
                terms.push(RegularTerm {
                    poly: poly_mul(&a.poly, &b.poly),
                    m: a.m.iter().zip(&b.m).map(|(x, y)| x + y).collect(),
                    m2: a.m2.iter().zip(&b.m2).map(|(x, y)| x + y).collect(),
                });
            }
        }
        RegularFunction { n: self.n, terms }
    }
}

/// Exact Gram matrix of generators `e^{-|t|} t^k μ_m ⊗ conj(μ_m')` in the
/// direct integral over `|t|^n dt`.
pub fn regular_gram(n: u32, gens: &[(u32, Vec<usize>, Vec<usize>)]) -> RatMatrix {
    RatMatrix::from_fn(gens.len(), gens.len(), |i, j| {
        let (ka, ma, ma2) = &gens[i];
        let (kb, mb, mb2) = &gens[j];
        if ma != mb || ma2 != mb2 || (ka + kb) % 2 == 1 {
            BigRational::zero()
        } else {
            regular_norm_sq(n, ka + kb)
        }
    })
}

/// The first `count` generators ordered by `k + |m| + |m'|`.
pub fn regular_generators(n: usize, count: usize) -> Vec<(u32, Vec<usize>, Vec<usize>)> {
    let mut out = Vec::new();
    let mut total = 0usize;
    while out.len() < count {
        for k in (0..=total).rev() {
            for a in 0..=(total - k) {
                for m in compositions(n, a) {
                    for m2 in compositions(n, total - k - a) {
                        out.push((k as u32, m.clone(), m2));
                    }
                }
            }
        }
        total += 1;
    }
    out.truncate(count);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::exact::rat;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn group_law() {
        let g = HeisenbergPoint::new(0.3, vec![c(0.1, 0.2), c(-0.4, 0.0)]);
        let h = HeisenbergPoint::new(-1.0, vec![c(0.5, -0.1), c(0.2, 0.3)]);
        let e = HeisenbergPoint::identity(2);
        assert_eq!(heis_mul(&g, &e).unwrap(), g);
        let gi = heis_mul(&g, &heis_inv(&g)).unwrap();
        assert!(gi.z.abs() < 1e-15 && gi.norm_w() == 0.0);
        let comm = heis_commutator(&g, &h).unwrap();
        assert!((comm.z - 2.0 * hermitian(&g.w, &h.w).im).abs() < 1e-15);
        assert!(comm.norm_w() < 1e-15);
        assert!(heis_mul(&g, &HeisenbergPoint::identity(1)).is_err());
    }

    #[test]
    fn basis_order() {
        let b = FockBasis::new(2, 2);
        assert_eq!(b.indices, vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(b.protected(1), 3);
        assert!(b.position(&[3, 0]).is_err());
    }

    #[test]
    fn identity_and_central_elements() {
        let id = fock_operator(1, 1.5, &HeisenbergPoint::identity(1), 10).unwrap();
        assert_eq!(id.matrix, DMatrix::identity(11, 11));
        let z = fock_operator(2, -0.7, &HeisenbergPoint::central(2, 0.9), 6).unwrap();
        let phase = Complex64::from_polar(1.0, -0.7 * 0.9);
        assert_eq!(z.matrix, DMatrix::identity(28, 28) * phase);
        assert!(fock_operator(1, 0.0, &HeisenbergPoint::identity(1), 4).is_err());
    }

    #[test]
    fn vacuum_overlap_is_coherent_state() {
        let v = c(0.3, -0.4);
        let op = fock_operator(1, 1.0, &HeisenbergPoint::new(0.0, vec![v]), 20).unwrap();
        // <0|D(α)|0> = e^{-|α|²/2}
        let want = (-v.norm_sqr() / 2.0).exp();
        assert!((op.entry(&[0], &[0]).unwrap() - want).norm() < 1e-10);
        // <k|D(α)|0> = e^{-|α|²/2} α^k / sqrt(k!)
        let k = 3;
        let want3 = want * v.powu(k as u32) / factorial_f64(k).sqrt();
        assert!((op.entry(&[k], &[0]).unwrap() - want3).norm() < 1e-10);
    }

    #[test]
    fn unitarity_on_protected_range() {
        let g = HeisenbergPoint::new(0.2, vec![c(0.3, 0.2)]);
        for t in [0.5, 1.0, 2.0, -1.0] {
            let op = fock_operator(1, t, &g, 24).unwrap();
            assert!(op.unitarity_defect(12) < 1e-8);
        }
    }

    #[test]
    fn coefficient_symmetry() {
        let g = HeisenbergPoint::new(0.4, vec![c(0.2, -0.3)]);
        for t in [1.0, -2.0] {
            let a = matrix_coefficient(t, &[2], &[1], &heis_inv(&g), 8).unwrap();
            let b = matrix_coefficient(t, &[1], &[2], &g, 8).unwrap();
            assert!((a - b.conj()).norm() < 1e-13);
        }
        assert!(matrix_coefficient(1.0, &[9], &[0], &g, 8).is_err());
    }

    #[test]
    fn orthogonality_small() {
        let t = 1.3;
        let d = coefficient_inner_product(t, (&[1], &[2]), (&[1], &[2]), 1e-10).unwrap();
        assert!((d.re * t - std::f64::consts::PI).abs() < 1e-9);
        let off = coefficient_inner_product(t, (&[1], &[2]), (&[2], &[1]), 1e-10).unwrap();
        assert!(off.norm() < 1e-10);
    }

    #[test]
    fn regular_norms() {
        assert_eq!(regular_norm_sq(1, 0), rat(1, 2));
        assert_eq!(regular_norm_sq(0, 0), rat(1, 1));
        assert_eq!(regular_norm_sq(1, 3), rat(3, 2));
        for e in 0..=12 {
            let q = regular_norm_sq_quadrature(e, 0);
            let x = crate::numerics::exact::rat_to_f64(&regular_norm_sq(e, 0));
            assert!((q - x).abs() <= 1e-10 * x);
        }
    }

    #[test]
    fn regular_function_ring() {
        let g = HeisenbergPoint::identity(1);
        assert_eq!(RegularFunction::zero(1).eval(1.0, &g).unwrap(), Complex64::zero());
        let one = RegularFunction::single(vec![rat(1, 1)], vec![2], vec![2]);
        let t: f64 = -0.8;
        assert!((one.eval(t, &g).unwrap() - (-t.abs()).exp()).norm() < 1e-15);
        let a = RegularFunction::single(vec![rat(1, 1), rat(2, 1)], vec![1], vec![0]);
        let b = RegularFunction::single(vec![rat(0, 1), rat(1, 1)], vec![2], vec![3]);
        let p = a.mul(&b);
        assert_eq!(p.terms[0].m, vec![3]);
        assert_eq!(p.terms[0].m2, vec![3]);
        assert_eq!(p.terms[0].poly, vec![rat(0, 1), rat(1, 1), rat(2, 1)]);
    }

    #[test]
    fn regular_gram_full_rank() {
        let gens = regular_generators(1, 20);
        assert_eq!(regular_gram(1, &gens).rank(), 20);
    }
}
