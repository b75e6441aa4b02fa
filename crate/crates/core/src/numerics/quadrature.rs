use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::ln_gamma;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum QuadratureKind {
    /// Weight `e^{-x^2}` on the real line.
    Hermite,
    /// Weight `x^alpha e^{-x}` on the half-line.
    Laguerre { alpha: f64 },
    /// Weight `1` on `[-1, 1]`.
    Legendre,
    /// Weight `(1-x)^alpha (1+x)^beta` on `[-1, 1]`.
    Jacobi { alpha: f64, beta: f64 },
}

/// Gaussian rule: `sum w_i f(x_i)` integrates `f · weight` exactly for
/// polynomials of degree `<= 2 * order - 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadratureRule {
    pub kind: QuadratureKind,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub order: usize,
}

/// Monic three-term recurrence `p_{k+1} = (x - a_k) p_k - b_k p_{k-1}`
/// together with the total mass of the weight.
struct Recurrence {
    a: Vec<f64>,
    b: Vec<f64>,
    mass: f64,
}

fn recurrence(kind: QuadratureKind, order: usize) -> Recurrence {
    let mut a = vec![0.0; order];
    let mut b = vec![0.0; order];
    let mass;
    match kind {
        QuadratureKind::Hermite => {
            for (k, bk) in b.iter_mut().enumerate() {
                *bk = k as f64 / 2.0;
            }
            mass = std::f64::consts::PI.sqrt();
        }
        QuadratureKind::Laguerre { alpha } => {
            for k in 0..order {
                let kf = k as f64;
                a[k] = 2.0 * kf + alpha + 1.0;
                b[k] = kf * (kf + alpha);
            }
            mass = ln_gamma(alpha + 1.0).exp();
        }
        QuadratureKind::Legendre => {
            for (k, bk) in b.iter_mut().enumerate().skip(1) {
                let kf = k as f64;
                *bk = kf * kf / (4.0 * kf * kf - 1.0);
            }
            mass = 2.0;
        }
        QuadratureKind::Jacobi { alpha, beta } => {
            let ab = alpha + beta;
            for k in 0..order {
                let kf = k as f64;
                let s = 2.0 * kf + ab;
                a[k] = if k == 0 {
                    (beta - alpha) / (ab + 2.0)
                } else {
                    (beta * beta - alpha * alpha) / (s * (s + 2.0))
                };
                if k == 1 {
                    b[k] = 4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab).powi(2) * (3.0 + ab));
                } else if k > 1 {
                    b[k] = 4.0 * kf * (kf + alpha) * (kf + beta) * (kf + ab)
                        / (s * s * (s + 1.0) * (s - 1.0));
                }
            }
            mass = (ab + 1.0) * std::f64::consts::LN_2
                + ln_gamma(alpha + 1.0)
                + ln_gamma(beta + 1.0)
                - ln_gamma(ab + 2.0);
            return Recurrence { a, b, mass: mass.exp() };
        }
    }
    Recurrence { a, b, mass }
}

impl Recurrence {
    /// Monic `p_n(x)` and `p_n'(x)`.
    fn eval_monic(&self, n: usize, x: f64) -> (f64, f64) {
        let (mut p_prev, mut p) = (0.0, 1.0);
        let (mut d_prev, mut d) = (0.0, 0.0);
        for k in 0..n {
            let p_next = (x - self.a[k]) * p - self.b[k] * p_prev;
            let d_next = p + (x - self.a[k]) * d - self.b[k] * d_prev;
            p_prev = p;
            p = p_next;
            d_prev = d;
            d = d_next;
        }
        (p, d)
    }

    /// Christoffel number `1 / sum_k phat_k(x)^2` from the orthonormal recurrence.
    fn christoffel(&self, n: usize, x: f64) -> f64 {
        let mut prev = 0.0;
        let mut cur = 1.0 / self.mass.sqrt();
        let mut sum = cur * cur;
        for k in 0..n - 1 {
            let next = ((x - self.a[k]) * cur - self.b[k].sqrt() * prev) / self.b[k + 1].sqrt();
            prev = cur;
            cur = next;
            sum += cur * cur;
        }
        1.0 / sum
    }
}

impl QuadratureRule {
    /// Builds the rule: eigenvalues of the Jacobi matrix seed a Newton
    /// iteration on the recurrence, weights come from Christoffel numbers.
    pub fn new(kind: QuadratureKind, order: usize) -> Self {
        assert!(order >= 1, "quadrature order must be positive");
        let rec = recurrence(kind, order + 1);
        let jacobi = DMatrix::from_fn(order, order, |i, j| {
            if i == j {
                rec.a[i]
            } else if i + 1 == j {
                rec.b[j].sqrt()
            } else if j + 1 == i {
                rec.b[i].sqrt()
            } else {
                0.0
            }
        });
        let mut nodes: Vec<f64> = SymmetricEigen::new(jacobi).eigenvalues.iter().copied().collect();
        nodes.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for x in nodes.iter_mut() {
            for _ in 0..50 {
                let (p, d) = rec.eval_monic(order, *x);
                if d == 0.0 || !p.is_finite() {
                    break;
                }
                let step = p / d;
                *x -= step;
                if step.abs() <= 1e-15 * x.abs().max(1.0) {
                    break;
                }
            }
        }
        if matches!(kind, QuadratureKind::Hermite | QuadratureKind::Legendre)
            || matches!(kind, QuadratureKind::Jacobi { alpha, beta } if alpha == beta)
        {
            // symmetric weight: enforce exact node symmetry
            for i in 0..order / 2 {
                let m = 0.5 * (nodes[order - 1 - i] - nodes[i]);
                nodes[i] = -m;
                nodes[order - 1 - i] = m;
            }
            if order % 2 == 1 {
                nodes[order / 2] = 0.0;
            }
        }
        let weights = nodes.iter().map(|&x| rec.christoffel(order, x)).collect();
        QuadratureRule { kind, nodes, weights, order }
    }

    pub fn hermite(order: usize) -> Self {
        Self::new(QuadratureKind::Hermite, order)
    }

    pub fn laguerre(order: usize, alpha: f64) -> Self {
        Self::new(QuadratureKind::Laguerre { alpha }, order)
    }

    pub fn legendre(order: usize) -> Self {
        Self::new(QuadratureKind::Legendre, order)
    }

    pub fn jacobi(order: usize, alpha: f64, beta: f64) -> Self {
        Self::new(QuadratureKind::Jacobi { alpha, beta }, order)
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }
}

/// Exact and quadrature values of the half-line moment `∫_0^∞ e^{-2t} t^k dt`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaMoment {
    pub k: u32,
    pub quadrature: f64,
    /// `k! / 2^{k+1}`.
    pub exact_half_line: f64,
    /// `∫_R e^{-2|t|} |t|^k dt = k! / 2^k`.
    pub exact_full_line: f64,
}

pub fn gamma_moment(k: u32) -> GammaMoment {
    // u = 2t turns the integral into 2^{-k-1} ∫ e^{-u} u^k du
    let rule = QuadratureRule::laguerre(24, 0.0);
    let quadrature = rule.integrate(|u| (u / 2.0).powi(k as i32)) / 2.0;
    let fact: f64 = (1..=k).map(|j| j as f64).product();
    GammaMoment {
        k,
        quadrature,
        exact_half_line: fact / 2f64.powi(k as i32 + 1),
        exact_full_line: fact / 2f64.powi(k as i32),
    }
}

const MAX_PLANE_ORDER: usize = 256;

/// `∫_C f(w) e^{-scale |w|^2} dw` (Lebesgue measure on `R^2`) by a product
/// Hermite rule, doubling the order from `start_order` until two successive
/// values agree to `rel_tol`.
pub fn gaussian_plane_integral<F>(f: F, scale: f64, start_order: usize, rel_tol: f64) -> Result<Complex64>
where
    F: Fn(Complex64) -> Complex64,
{
    gaussian_space_integral(1, |w: &[Complex64]| f(w[0]), scale, start_order, rel_tol)
}

/// `∫_{C^n} f(w) e^{-scale |w|^2} dw` by the same doubling protocol.
pub fn gaussian_space_integral<F>(
    n: usize,
    f: F,
    scale: f64,
    start_order: usize,
    rel_tol: f64,
) -> Result<Complex64>
where
    F: Fn(&[Complex64]) -> Complex64,
{
    if scale <= 0.0 {
        return Err(Error::Invalid(format!("Gaussian scale must be positive, got {scale}")));
    }
    let mut order = start_order.max(1);
    let mut prev = product_hermite(n, &f, scale, order);
    loop {
        order *= 2;
        if order > MAX_PLANE_ORDER {
            return Err(Error::QuadratureNonconvergence { order: order / 2, residual: f64::NAN });
        }
        let next = product_hermite(n, &f, scale, order);
        let diff = (next.0 - prev.0).norm();
        let scale_val = next.0.norm().max(prev.0.norm());
        if diff <= rel_tol * scale_val || diff <= 1e-15 * next.1 {
            return Ok(next.0);
        }
        prev = next;
    }
}

/// Returns the rule value and the absolute mass `sum |w f|`.
fn product_hermite<F>(n: usize, f: &F, scale: f64, order: usize) -> (Complex64, f64)
where
    F: Fn(&[Complex64]) -> Complex64,
{
    let rule = QuadratureRule::hermite(order);
    let inv = 1.0 / scale.sqrt();
    let dims = 2 * n;
    let total = order.pow(dims as u32);
    let mut idx = vec![0usize; dims];
    let mut point = vec![Complex64::new(0.0, 0.0); n];
    let mut sum = Complex64::new(0.0, 0.0);
    let mut mass = 0.0;
    for _ in 0..total {
        let mut w = 1.0;
        for j in 0..n {
            let (re, im) = (idx[2 * j], idx[2 * j + 1]);
            point[j] = Complex64::new(rule.nodes[re] * inv, rule.nodes[im] * inv);
            w *= rule.weights[re] * rule.weights[im];
        }
        let val = f(&point) * w;
        sum += val;
        mass += val.norm();
        for d in idx.iter_mut() {
            *d += 1;
            if *d < order {
                break;
            }
            *d = 0;
        }
    }
    let jac = inv.powi(dims as i32);
    (sum * jac, mass * jac)
}

/// Adaptive Gauss–Legendre integration on `[a, b]`: a panel is accepted when
/// its 10- and 20-point values agree to `tol` relative to the running total.
pub fn adaptive_integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<f64> {
    let lo = QuadratureRule::legendre(10);
    let hi = QuadratureRule::legendre(20);
    let panel = |rule: &QuadratureRule, x0: f64, x1: f64| {
        let half = 0.5 * (x1 - x0);
        let mid = 0.5 * (x1 + x0);
        half * rule.integrate(|t| f(mid + half * t))
    };
    let mut stack = vec![(a, b, 0usize)];
    let mut total = 0.0;
    while let Some((x0, x1, depth)) = stack.pop() {
        let coarse = panel(&lo, x0, x1);
        let fine = panel(&hi, x0, x1);
        if (coarse - fine).abs() <= tol * fine.abs().max(1e-300) || (coarse - fine).abs() < 1e-15 {
            total += fine;
        } else if depth >= 40 {
            return Err(Error::QuadratureNonconvergence { order: 20, residual: (coarse - fine).abs() });
        } else {
            let mid = 0.5 * (x0 + x1);
            stack.push((mid, x1, depth + 1));
            stack.push((x0, mid, depth + 1));
        }
    }
    Ok(total)
}

/// Product rule on the unit sphere `S^{dim-1} ⊂ R^dim` with weights summing
/// to one (normalized surface measure).
#[derive(Debug, Clone, PartialEq)]
pub struct SphereRule {
    pub dim: usize,
    pub points: Vec<Vec<f64>>,
    pub weights: Vec<f64>,
}

impl SphereRule {
    /// Exact for polynomials of total degree `<= 2 * order - 1`.
    pub fn new(dim: usize, order: usize) -> Self {
        assert!(dim >= 2, "sphere rule needs ambient dimension >= 2");
        if dim == 2 {
            let m = 2 * order;
            let step = 2.0 * std::f64::consts::PI / m as f64;
            let points = (0..m).map(|j| vec![(j as f64 * step).cos(), (j as f64 * step).sin()]).collect();
            return SphereRule { dim, points, weights: vec![1.0 / m as f64; m] };
        }
        // x_0 has density ∝ (1 - t^2)^{(dim-3)/2}
        let lam = (dim as f64 - 3.0) / 2.0;
        let polar = QuadratureRule::jacobi(order, lam, lam);
        let mass: f64 = polar.weights.iter().sum();
        let inner = SphereRule::new(dim - 1, order);
        let mut points = Vec::with_capacity(polar.order * inner.points.len());
        let mut weights = Vec::with_capacity(points.capacity());
        for (&t, &wt) in polar.nodes.iter().zip(&polar.weights) {
            let r = (1.0 - t * t).max(0.0).sqrt();
            for (p, &wp) in inner.points.iter().zip(&inner.weights) {
                let mut x = Vec::with_capacity(dim);
                x.push(t);
                x.extend(p.iter().map(|y| r * y));
                points.push(x);
                weights.push(wt / mass * wp);
            }
        }
        SphereRule { dim, points, weights }
    }

    pub fn integrate<F: Fn(&[f64]) -> f64>(&self, f: F) -> f64 {
        self.points.iter().zip(&self.weights).map(|(p, &w)| w * f(p)).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rel_diff;

    fn double_factorial(n: i64) -> f64 {
        if n <= 0 {
            1.0
        } else {
            n as f64 * double_factorial(n - 2)
        }
    }

    #[test]
    fn hermite_moments_exact() {
        for order in [1usize, 5, 12, 30] {
            let rule = QuadratureRule::hermite(order);
            for deg in 0..(2 * order) {
                let got = rule.integrate(|x| x.powi(deg as i32));
                let exact = if deg % 2 == 1 {
                    0.0
                } else {
                    double_factorial(deg as i64 - 1) / 2f64.powi(deg as i32 / 2) * std::f64::consts::PI.sqrt()
                };
                let err = if exact == 0.0 { got.abs() / double_factorial(deg as i64).max(1.0) } else { rel_diff(got, exact) };
                assert!(err < 1e-12, "order {order} deg {deg}: {got} vs {exact}");
            }
        }
    }

    #[test]
    fn laguerre_moments_exact() {
        for alpha in [0.0, 0.5, 2.0] {
            let rule = QuadratureRule::laguerre(12, alpha);
            for deg in 0..24 {
                let exact = ln_gamma(alpha + 1.0 + deg as f64).exp();
                let got = rule.integrate(|x| x.powi(deg));
                assert!(rel_diff(got, exact) < 1e-12, "alpha {alpha} deg {deg}");
            }
        }
    }

    #[test]
    fn legendre_and_jacobi_moments_exact() {
        let rule = QuadratureRule::legendre(9);
        for deg in 0..18 {
            let exact = if deg % 2 == 1 { 0.0 } else { 2.0 / (deg as f64 + 1.0) };
            assert!((rule.integrate(|x| x.powi(deg)) - exact).abs() < 1e-13);
        }
        // ∫ (1-x^2)^{1/2} x^2 dx = π/8
        let rule = QuadratureRule::jacobi(6, 0.5, 0.5);
        assert!((rule.integrate(|x| x * x) - std::f64::consts::PI / 8.0).abs() < 1e-13);
        // nonsymmetric: ∫ (1-x) (1+x)^2 dx = 4/3
        let rule = QuadratureRule::jacobi(4, 1.0, 2.0);
        assert!((rule.integrate(|_| 1.0) - 4.0 / 3.0).abs() < 1e-13);
        assert!(rule.integrate(|x| x.powi(5)).is_finite());
    }

    #[test]
    fn gamma_moment_values() {
        let m = gamma_moment(0);
        assert_eq!(m.exact_full_line, 1.0);
        let m = gamma_moment(3);
        assert!((m.exact_full_line - 0.75).abs() < 1e-15);
        for k in 0..=20 {
            let m = gamma_moment(k);
            assert!(rel_diff(m.quadrature, m.exact_half_line) < 1e-10, "k = {k}");
        }
    }

    #[test]
    fn plane_integrals() {
        let one = gaussian_plane_integral(|_| Complex64::new(1.0, 0.0), 1.0, 4, 1e-8).unwrap();
        assert!((one.re - std::f64::consts::PI).abs() < 1e-12);
        for s in [0.5, 1.0, 3.0] {
            let v = gaussian_plane_integral(|w| Complex64::new(w.norm_sqr(), 0.0), s, 4, 1e-8).unwrap();
            assert!(rel_diff(v.re, std::f64::consts::PI / (s * s)) < 1e-12);
        }
        let odd = gaussian_plane_integral(|w| w * w * w.conj(), 1.0, 4, 1e-8).unwrap();
        assert!(odd.norm() < 1e-14);
        assert!(gaussian_plane_integral(|_| Complex64::new(1.0, 0.0), 0.0, 4, 1e-8).is_err());
    }

    #[test]
    fn adaptive_handles_kinks() {
        let v = adaptive_integrate(|x: f64| x.abs(), -1.0, 2.0, 1e-12).unwrap();
        assert!((v - 2.5).abs() < 1e-12);
        let v = adaptive_integrate(|x: f64| (-2.0 * x).exp() * x.powi(3), 0.0, 40.0, 1e-12).unwrap();
        assert!(rel_diff(v, 6.0 / 16.0) < 1e-10);
    }

    #[test]
    fn sphere_rule_integrates_harmonics() {
        for dim in 2..=6 {
            let rule = SphereRule::new(dim, 5);
            assert!((rule.weights.iter().sum::<f64>() - 1.0).abs() < 1e-13);
            // x_0 x_1 and x_0^2 - x_1^2 are harmonic of degree 2
            assert!(rule.integrate(|x| x[0] * x[1]).abs() < 1e-13);
            assert!(rule.integrate(|x| x[0] * x[0] - x[1] * x[1]).abs() < 1e-13);
            assert!(rule.integrate(|x| x[0]).abs() < 1e-13);
            // E[x_0^2] = 1/dim, E[x_0^4] = 3/(dim (dim + 2))
            assert!((rule.integrate(|x| x[0] * x[0]) - 1.0 / dim as f64).abs() < 1e-13);
            let d = dim as f64;
            assert!((rule.integrate(|x| x[dim - 1].powi(4)) - 3.0 / (d * (d + 2.0))).abs() < 1e-13);
        }
    }
}
