//! Scalar algebra of direct systems: degree ladders, the rescaled
//! inclusions ζ, η, ν and their tilde versions, commuting squares, cocycles
//! and limit inner products, on sphere, U(n)-polynomial and Heisenberg
//! backends.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock;
use crate::numerics::exact::rat_to_f64;
use crate::numerics::{binomial, Tolerances};
use crate::symmpair as sphere;

/// A real number that is either an exact rational or a float.
#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    Exact(BigRational),
    Float(f64),
}

impl Scalar {
    pub fn one() -> Self {
        Scalar::Exact(BigRational::one())
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(r) => rat_to_f64(r),
            Scalar::Float(x) => *x,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    pub fn mul(&self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a * b),
            _ => Scalar::Float(self.to_f64() * o.to_f64()),
        }
    }

    pub fn div(&self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a / b),
            _ => Scalar::Float(self.to_f64() / o.to_f64()),
        }
    }

    pub fn add(&self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a + b),
            _ => Scalar::Float(self.to_f64() + o.to_f64()),
        }
    }

    pub fn abs_diff(&self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact((a - b).abs()),
            _ => Scalar::Float((self.to_f64() - o.to_f64()).abs()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_zero(),
            Scalar::Float(x) => *x == 0.0,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(r) => write!(f, "{r}"),
            Scalar::Float(x) => write!(f, "{x:e}"),
        }
    }
}

/// `√sq`, kept as its square so exact products stay exact.
#[derive(Debug, Clone, PartialEq)]
pub struct Root {
    pub sq: Scalar,
}

impl Root {
    pub fn value(&self) -> f64 {
        self.sq.to_f64().sqrt()
    }

    pub fn mul(&self, o: &Root) -> Root {
        Root { sq: self.sq.mul(&o.sq) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Sphere,
    Unitary,
    Heisenberg,
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Backend::Sphere => "sphere",
            Backend::Unitary => "unitary",
            Backend::Heisenberg => "heisenberg",
        };
        write!(f, "{s}")
    }
}

/// Levels with formal degrees and squared projection constants.
/// `c_sq[i][j]` is `c(levels[i], levels[j])²` for `j <= i`.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeLadder {
    pub backend: Backend,
    pub label: String,
    pub levels: Vec<usize>,
    pub deg: Vec<Scalar>,
    pub c_sq: Vec<Vec<Scalar>>,
    /// Dimension of the coefficient space `V_n` at each level.
    pub space_dim: Vec<usize>,
}

impl DegreeLadder {
    fn index(&self, level: usize) -> Result<usize> {
        self.levels.iter().position(|&l| l == level).ok_or(Error::MissingLevel(level))
    }

    fn pair(&self, m: usize, n: usize) -> Result<(usize, usize)> {
        let (i, j) = (self.index(m)?, self.index(n)?);
        if i < j {
            return Err(Error::LevelOrder { from: n, to: m });
        }
        Ok((i, j))
    }

    pub fn base(&self) -> usize {
        self.levels[0]
    }

    pub fn deg_of(&self, level: usize) -> Result<Scalar> {
        Ok(self.deg[self.index(level)?].clone())
    }

    pub fn c_sq_of(&self, m: usize, n: usize) -> Result<Scalar> {
        let (i, j) = self.pair(m, n)?;
        Ok(self.c_sq[i][j].clone())
    }

    pub fn is_exact(&self) -> bool {
        self.deg.iter().all(Scalar::is_exact) && self.c_sq.iter().flatten().all(Scalar::is_exact)
    }

    /// `√(deg m / deg n)`
    pub fn zeta_scale(&self, m: usize, n: usize) -> Result<Root> {
        let (i, j) = self.pair(m, n)?;
        Ok(Root { sq: self.deg[i].div(&self.deg[j]) })
    }

    /// `√deg n`
    pub fn eta_scale(&self, n: usize) -> Result<Root> {
        Ok(Root { sq: self.deg_of(n)? })
    }

    /// `c(m, n) √(deg m / deg n)`
    pub fn tilde_zeta_scale(&self, m: usize, n: usize) -> Result<Root> {
        Ok(Root { sq: self.c_sq_of(m, n)? }.mul(&self.zeta_scale(m, n)?))
    }

    /// `c(n, base) √deg n`
    pub fn tilde_eta_scale(&self, n: usize) -> Result<Root> {
        Ok(Root { sq: self.c_sq_of(n, self.base())? }.mul(&self.eta_scale(n)?))
    }

    /// Largest `|c(m,n) c(n,k) - c(m,k)|` over `k <= n <= m`, compared on
    /// squares; exact ladders give an exact residual.
    pub fn cocycle_residual(&self) -> Scalar {
        let mut worst = Scalar::Exact(BigRational::zero());
        let len = self.levels.len();
        for i in 0..len {
            for j in 0..=i {
                for k in 0..=j {
                    let r = residual(&self.c_sq[i][j].mul(&self.c_sq[j][k]), &self.c_sq[i][k]);
                    worst = match (&worst, &r) {
                        (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a.max(b).clone()),
                        _ => Scalar::Float(worst.to_f64().max(r.to_f64())),
                    };
                }
            }
        }
        worst
    }

    pub fn verify_cocycle(&self, tol: f64) -> bool {
        self.cocycle_residual().to_f64() <= tol
    }

    /// Residuals of `√deg m = ζ_{m,n} √deg n` and of its tilde version.
    pub fn verify_commuting_square(&self, m: usize, n: usize) -> Result<SquareCheck> {
        let lhs = self.eta_scale(m)?;
        let rhs = self.zeta_scale(m, n)?.mul(&self.eta_scale(n)?);
        let tl = self.tilde_eta_scale(m)?;
        let tr = self.tilde_zeta_scale(m, n)?.mul(&self.tilde_eta_scale(n)?);
        Ok(SquareCheck {
            m,
            n,
            plain: root_residual(&lhs, &rhs),
            tilde: root_residual(&tl, &tr),
        })
    }

    pub fn to_json(&self) -> LadderJson {
        LadderJson {
            backend: self.backend,
            levels: self.levels.clone(),
            deg: self.deg.iter().map(Scalar::to_f64).collect(),
            c: self.c_sq.iter().map(|row| row.iter().map(|c| c.to_f64().sqrt()).collect()).collect(),
        }
    }

    pub fn from_json(j: &LadderJson) -> Result<DegreeLadder> {
        let len = j.levels.len();
        if j.deg.len() != len || j.c.len() != len {
            return Err(Error::DimensionMismatch(len, j.deg.len()));
        }
        if j.levels.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Invalid("levels must be increasing".into()));
        }
        let c_sq = j
            .c
            .iter()
            .enumerate()
            .map(|(i, row)| {
                if row.len() != i + 1 {
                    return Err(Error::DimensionMismatch(i + 1, row.len()));
                }
                Ok(row.iter().map(|c| Scalar::Float(c * c)).collect())
            })
            .collect::<Result<_>>()?;
        Ok(DegreeLadder {
            backend: j.backend,
            label: format!("{} (imported)", j.backend),
            levels: j.levels.clone(),
            deg: j.deg.iter().map(|&d| Scalar::Float(d)).collect(),
            c_sq,
            space_dim: vec![0; len],
        })
    }
}

fn residual(a: &Scalar, b: &Scalar) -> Scalar {
    match a.abs_diff(b) {
        Scalar::Exact(r) => Scalar::Exact(r),
        Scalar::Float(x) => Scalar::Float(x / b.to_f64().abs().max(f64::MIN_POSITIVE)),
    }
}

fn root_residual(a: &Root, b: &Root) -> Scalar {
    if a.sq.is_exact() && b.sq.is_exact() {
        a.sq.abs_diff(&b.sq)
    } else {
        Scalar::Float((a.value() - b.value()).abs() / a.value().max(f64::MIN_POSITIVE))
    }
}

/// Exact residuals are differences of squares; float ones are relative.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareCheck {
    pub m: usize,
    pub n: usize,
    pub plain: Scalar,
    pub tilde: Scalar,
}

impl SquareCheck {
    pub fn passes(&self, tol: f64) -> bool {
        let ok = |s: &Scalar| match s {
            Scalar::Exact(r) => r.is_zero(),
            Scalar::Float(x) => *x <= tol,
        };
        ok(&self.plain) && ok(&self.tilde)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LadderJson {
    pub backend: Backend,
    pub levels: Vec<usize>,
    pub deg: Vec<f64>,
    pub c: Vec<Vec<f64>>,
}

/// A function at level `n`: `√scale_sq · Σ a_k f_k` with coefficients keyed
/// by basis index tuples. With `invariant` the keys are `(i)` for
/// `f_{e_i, w_n, n}`; otherwise `(i, j)` for `f_{e_i, e_j, n}`. Backend bases
/// are nested, so inclusion keeps keys. The common factor keeps the
/// coefficients rational under the irrational scalings.
#[derive(Debug, Clone, PartialEq)]
pub struct LadderedFunction {
    pub backend: Backend,
    pub level: usize,
    pub invariant: bool,
    pub scale_sq: Scalar,
    pub coeffs: BTreeMap<Vec<usize>, Scalar>,
}

impl LadderedFunction {
    pub fn new(backend: Backend, level: usize, invariant: bool, coeffs: Vec<(Vec<usize>, Scalar)>) -> Self {
        LadderedFunction { backend, level, invariant, scale_sq: Scalar::one(), coeffs: coeffs.into_iter().collect() }
    }

    /// `scale_sq · Σ |a|²` in the coefficient space.
    pub fn coeff_norm_sq(&self) -> Scalar {
        self.coeffs.values().fold(Scalar::Exact(BigRational::zero()), |acc, a| acc.add(&a.mul(a))).mul(&self.scale_sq)
    }

    /// Multiplies by `√s` and moves to `level`.
    fn scaled(&self, s: &Scalar, level: usize) -> LadderedFunction {
        LadderedFunction {
            backend: self.backend,
            level,
            invariant: self.invariant,
            scale_sq: self.scale_sq.mul(s),
            coeffs: self.coeffs.clone(),
        }
    }
}

fn check_backend(ladder: &DegreeLadder, f: &LadderedFunction) -> Result<()> {
    if ladder.backend != f.backend {
        return Err(Error::BackendMismatch(ladder.backend.to_string(), f.backend.to_string()));
    }
    let dim = ladder.space_dim[ladder.index(f.level)?];
    if dim > 0 {
        if let Some(k) = f.coeffs.keys().find(|k| k.iter().any(|&i| i >= dim)) {
            return Err(Error::IndexBeyondCutoff { index: k.clone(), cutoff: dim });
        }
    }
    Ok(())
}

fn sqrt_scalar(s: &Scalar) -> Scalar {
    if let Scalar::Exact(r) = s {
        if let (Some(a), Some(b)) = (exact_sqrt(r.numer()), exact_sqrt(r.denom())) {
            return Scalar::Exact(BigRational::new(a, b));
        }
    }
    Scalar::Float(s.to_f64().sqrt())
}

fn exact_sqrt(x: &num_bigint::BigInt) -> Option<num_bigint::BigInt> {
    if x.is_negative() {
        return None;
    }
    let r = x.sqrt();
    (&r * &r == *x).then_some(r)
}

/// `L²` norm² of a level-`n` function: `Σ |a|² / deg n` (the Schur
/// orthogonality relations with unit vectors `e_j` or `w_n`).
pub fn l2_norm_sq(ladder: &DegreeLadder, f: &LadderedFunction) -> Result<Scalar> {
    check_backend(ladder, f)?;
    Ok(f.coeff_norm_sq().div(&ladder.deg_of(f.level)?))
}

/// `f_{u,v,n} ↦ √(deg m / deg n) f_{u,v,m}`; an `L²` isometry.
pub fn apply_zeta(ladder: &DegreeLadder, f: &LadderedFunction, m: usize) -> Result<LadderedFunction> {
    check_backend(ladder, f)?;
    let s = ladder.zeta_scale(m, f.level)?;
    Ok(f.scaled(&s.sq, m))
}

/// `f_{u,w_n,n} ↦ c(m,n)^{-1} f_{u,w_m,m}`, the right inverse of
/// restriction, since `P_n w_m = c(m,n) w_n`.
pub fn apply_nu(ladder: &DegreeLadder, f: &LadderedFunction, m: usize) -> Result<LadderedFunction> {
    check_backend(ladder, f)?;
    if !f.invariant {
        return Err(Error::Invalid("ν acts on functions of the K-invariant sub-basis".into()));
    }
    let c_sq = ladder.c_sq_of(m, f.level)?;
    Ok(f.scaled(&Scalar::one().div(&c_sq), m))
}

/// Restriction of a level-`m` invariant function to `G_n`.
pub fn restrict(ladder: &DegreeLadder, f: &LadderedFunction, n: usize) -> Result<LadderedFunction> {
    check_backend(ladder, f)?;
    if !f.invariant {
        return Err(Error::Invalid("restriction is implemented on the K-invariant sub-basis".into()));
    }
    let c_sq = ladder.c_sq_of(f.level, n)?;
    let dim = ladder.space_dim[ladder.index(n)?];
    let mut out = f.scaled(&c_sq, n);
    if dim > 0 {
        out.coeffs.retain(|k, _| k.iter().all(|&i| i < dim));
    }
    Ok(out)
}

/// `<η̃_n f, η̃_n g>` with `η̃_n = c(n, base) √deg n`.
pub fn limit_inner_product(ladder: &DegreeLadder, f: &LadderedFunction, g: &LadderedFunction) -> Result<Scalar> {
    check_backend(ladder, f)?;
    check_backend(ladder, g)?;
    if f.level != g.level || f.invariant != g.invariant {
        return Err(Error::Invalid("limit inner product needs functions at the same level".into()));
    }
    let mut dot = Scalar::Exact(BigRational::zero());
    for (k, a) in &f.coeffs {
        if let Some(b) = g.coeffs.get(k) {
            dot = dot.add(&a.mul(b));
        }
    }
    let scale = ladder.tilde_eta_scale(f.level)?;
    let common = sqrt_scalar(&f.scale_sq.mul(&g.scale_sq));
    Ok(dot.mul(&common).div(&ladder.deg_of(f.level)?).mul(&scale.sq))
}

/// Sphere ladder `S^n ⊂ S^{n+1} ⊂ ...` in harmonic degree `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SphereConstants {
    Exact,
    Quadrature,
    Gegenbauer,
}

pub fn sphere_ladder(levels: &[usize], d: usize, source: SphereConstants) -> Result<DegreeLadder> {
    check_levels(levels)?;
    let deg = levels
        .iter()
        .map(|&n| Scalar::Exact(BigRational::from_integer(sphere::harmonic_dimension(n + 1, d).into())))
        .collect();
    let mut c_sq = Vec::new();
    for (i, &m) in levels.iter().enumerate() {
        let mut row = Vec::new();
        for &n in &levels[..=i] {
            row.push(if m == n {
                Scalar::one()
            } else {
                match source {
                    SphereConstants::Exact => Scalar::Exact(sphere::zonal_projection_constant_sq(m, n, d)?),
                    SphereConstants::Quadrature => Scalar::Float(sphere::zonal_constant_quadrature(m, n, d)?.powi(2)),
                    SphereConstants::Gegenbauer => Scalar::Float(sphere::zonal_constant_gegenbauer(m, n, d)?.powi(2)),
                }
            });
        }
        c_sq.push(row);
    }
    let space_dim = levels.iter().map(|&n| sphere::harmonic_dimension(n + 1, d) as usize).collect();
    Ok(DegreeLadder { backend: Backend::Sphere, label: format!("sphere d={d} {source:?}"), levels: levels.to_vec(), deg, c_sq, space_dim })
}

fn check_levels(levels: &[usize]) -> Result<()> {
    if levels.is_empty() {
        return Err(Error::Invalid("a ladder needs at least one level".into()));
    }
    if levels.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Invalid("levels must be strictly increasing".into()));
    }
    Ok(())
}

/// `q(n) = C(n + d - 1, d)`, the dimension of degree-`d` polynomials on `C^n`.
pub fn un_dimension(n: usize, d: usize) -> u128 {
    if n == 0 {
        return (d == 0) as u128;
    }
    binomial((n + d - 1) as u64, d as u64)
}

/// Degree-`d` monomials in `n` variables, nested: those in `n - 1`
/// variables come first.
pub fn nested_monomials(n: usize, d: usize) -> Vec<Vec<u32>> {
    if n == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out: Vec<Vec<u32>> = nested_monomials(n - 1, d)
        .into_iter()
        .map(|mut m| {
            m.push(0);
            m
        })
        .collect();
    for e in 1..=d {
        for mut m in nested_monomials(n - 1, d - e) {
            m.push(e as u32);
            out.push(m);
        }
    }
    out
}

/// `c(m,n)²` from the projection of the normalized invariant
/// `q(m)^{-1/2} Σ_α x^α ⊗ (x^α)*` onto the level-`n` tensor space.
pub fn un_projection_constant_sq(m: usize, n: usize, d: usize) -> BigRational {
    let basis = nested_monomials(m, d);
    let weight = BigRational::new(1.into(), basis.len().into());
    // coefficient² of every diagonal term is 1/q(m); keep those living on C^n
    let kept = basis.iter().filter(|a| a[n..].iter().all(|&e| e == 0));
    kept.fold(BigRational::zero(), |acc, _| acc + &weight)
}

/// U(n)-polynomial ladder in degree `d`: `deg(n) = q(n)` and
/// `c(m,n)² = q(n) / q(m)`.
pub fn un_polynomial_ladder(levels: &[usize], d: usize) -> Result<DegreeLadder> {
    check_levels(levels)?;
    if levels[0] == 0 {
        return Err(Error::Invalid("U(n) levels start at n = 1".into()));
    }
    let q = |n: usize| BigRational::from_integer(un_dimension(n, d).into());
    let deg = levels.iter().map(|&n| Scalar::Exact(q(n))).collect();
    let c_sq = levels
        .iter()
        .enumerate()
        .map(|(i, &m)| levels[..=i].iter().map(|&n| Scalar::Exact(q(n) / q(m))).collect())
        .collect();
    let space_dim = levels.iter().map(|&n| un_dimension(n, d) as usize).collect();
    Ok(DegreeLadder { backend: Backend::Unitary, label: format!("U(n) polynomials d={d}"), levels: levels.to_vec(), deg, c_sq, space_dim })
}

/// Heisenberg ladder at central parameter `t`. With `measured` the level-1
/// degree is `1 / ‖<π_t(·)1, 1>‖²` by quadrature and `deg(n) = deg(1)^n`
/// (the vacuum coefficient factors over coordinates); otherwise
/// `deg(n) = |t|^n`. The invariant vector is the vacuum, so `c ≡ 1`.
pub fn heisenberg_ladder(levels: &[usize], t: f64, measured: bool, tol: &Tolerances) -> Result<DegreeLadder> {
    check_levels(levels)?;
    if t == 0.0 {
        return Err(Error::ZeroCentralParameter);
    }
    let base = if measured {
        let v = fock::coefficient_inner_product(t, (&[0], &[0]), (&[0], &[0]), tol.orthogonality)?;
        1.0 / v.re
    } else {
        t.abs()
    };
    let deg = levels.iter().map(|&n| Scalar::Float(base.powi(n as i32))).collect();
    let c_sq = levels.iter().enumerate().map(|(i, _)| vec![Scalar::one(); i + 1]).collect();
    Ok(DegreeLadder {
        backend: Backend::Heisenberg,
        label: format!("Heisenberg t={t}{}", if measured { " measured" } else { "" }),
        levels: levels.to_vec(),
        deg,
        c_sq,
        space_dim: vec![0; levels.len()],
    })
}

/// Residual of limit-inner-product invariance under `ν` from `f.level` to
/// `m`, relative for floats.
pub fn promotion_residual(ladder: &DegreeLadder, f: &LadderedFunction, g: &LadderedFunction, m: usize) -> Result<Scalar> {
    let before = limit_inner_product(ladder, f, g)?;
    let after = limit_inner_product(ladder, &apply_nu(ladder, f, m)?, &apply_nu(ladder, g, m)?)?;
    Ok(residual(&after, &before))
}

pub fn scalar_to_string(s: &Scalar) -> String {
    match s {
        Scalar::Exact(r) if r.denom().is_one() => r.numer().to_string(),
        Scalar::Exact(r) => format!("{}/{}", r.numer(), r.denom()),
        Scalar::Float(x) => format!("{x:.12e}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::exact::rat;

    #[test]
    fn un_constants_two_ways() {
        for d in 0..=3 {
            for n in 1..=4 {
                for m in n..=5 {
                    let closed = BigRational::new((un_dimension(n, d) as i64).into(), (un_dimension(m, d) as i64).into());
                    assert_eq!(un_projection_constant_sq(m, n, d), closed);
                }
            }
        }
        assert_eq!(un_projection_constant_sq(3, 2, 2), rat(1, 2));
        assert_eq!(un_projection_constant_sq(5, 2, 1), rat(2, 5));
    }

    #[test]
    fn scales() {
        let l = un_polynomial_ladder(&[1, 2, 3], 2).unwrap();
        assert_eq!(l.zeta_scale(2, 2).unwrap().sq, Scalar::one());
        assert_eq!(l.zeta_scale(3, 1).unwrap().sq, Scalar::Exact(rat(6, 1)));
        assert!(l.tilde_zeta_scale(3, 1).unwrap().value() <= l.zeta_scale(3, 1).unwrap().value());
        assert!(matches!(l.zeta_scale(1, 3), Err(Error::LevelOrder { .. })));
        assert!(matches!(l.eta_scale(7), Err(Error::MissingLevel(7))));
        let h = heisenberg_ladder(&[1, 2, 3], 4.0, false, &Tolerances::default()).unwrap();
        assert!((h.zeta_scale(3, 1).unwrap().value() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn nested_monomials_are_prefixes() {
        for d in 0..=3 {
            for n in 1..=4 {
                let small = nested_monomials(n, d);
                let big = nested_monomials(n + 1, d);
                assert_eq!(small.len() as u128, un_dimension(n, d));
                for (a, b) in small.iter().zip(&big) {
                    assert_eq!(&b[..n], &a[..]);
                    assert_eq!(b[n], 0);
                }
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let l = un_polynomial_ladder(&[1, 2, 4], 1).unwrap();
        let j = serde_json::to_string(&l.to_json()).unwrap();
        let back = DegreeLadder::from_json(&serde_json::from_str(&j).unwrap()).unwrap();
        assert_eq!(back.levels, l.levels);
        assert!(back.verify_cocycle(1e-12));
    }
}
