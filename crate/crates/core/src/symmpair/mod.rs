//! Restricted root data and class-1 weights for the classical compact
//! symmetric pairs, and an exact model of the sphere family built from
//! harmonic polynomials.

mod sphere;

pub use sphere::{
    gegenbauer, harmonic_basis, harmonic_dimension, inclusion_norm_ratio, sphere_inner, sphere_moment, zonal_constant_gegenbauer,
    zonal_constant_quadrature, zonal_projection_constant, zonal_projection_constant_sq, zonal_vector, HarmonicSpace,
    ZonalVector, DEGREE_CUTOFF,
};

use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::exact::{rat, RatMatrix};
use crate::rootsys::{DominantWeight, Family};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RestrictedType {
    A,
    B,
    C,
    D,
    BC,
}

impl fmt::Display for RestrictedType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RestrictedType::A => "A",
            RestrictedType::B => "B",
            RestrictedType::C => "C",
            RestrictedType::D => "D",
            RestrictedType::BC => "BC",
        };
        write!(f, "{s}")
    }
}

/// Parameters of a table row: a single index `n`, or the pair `(p, q)` for
/// the Grassmannian families 5, 8 and 10.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PairParams {
    Single(usize),
    Split { p: usize, q: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RestrictedRoot {
    pub root: Vec<i64>,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RestrictedPairData {
    pub family_id: u8,
    pub params: PairParams,
    pub group: String,
    pub isotropy: String,
    pub rank: usize,
    pub restricted_type: RestrictedType,
    /// Positive restricted roots in ε-coordinates of `a*` (the traceless
    /// hyperplane of `R^{l+1}` for type A).
    pub positive_roots: Vec<RestrictedRoot>,
    pub simple_roots: Vec<Vec<i64>>,
    /// Indices `i` (0-based) with `2ψ_i` a restricted root.
    pub doubled: Vec<usize>,
    pub class_one_weights: Vec<Vec<BigRational>>,
}

/// Multiplicities of `e_i ± e_j`, `e_i` and `2e_i`.
struct Multiplicities {
    pair: usize,
    short: usize,
    long: usize,
}

fn unsupported(family: u8, detail: impl Into<String>) -> Error {
    Error::UnsupportedPair { family, detail: detail.into() }
}

pub fn build_symmetric_pair(family_id: u8, params: PairParams) -> Result<RestrictedPairData> {
    use RestrictedType as T;
    let single = |name: &str| match params {
        PairParams::Single(n) => Ok(n),
        _ => Err(unsupported(family_id, format!("{name} takes a single parameter"))),
    };
    let split = || match params {
        PairParams::Split { p, q } if p >= 1 && q >= 1 => Ok((p.min(q), p.max(q))),
        PairParams::Split { .. } => Err(unsupported(family_id, "p and q must be positive")),
        _ => Err(unsupported(family_id, "expects parameters p, q")),
    };
    let mult = |pair, short, long| Multiplicities { pair, short, long };
    let (group, isotropy, rank, ty, m) = match family_id {
        1 => {
            let n = single("SU(n) x SU(n)")?;
            if n < 1 {
                return Err(unsupported(1, "n >= 1"));
            }
            (format!("SU({n})xSU({n})"), format!("SU({n})"), n - 1, T::A, mult(2, 0, 0))
        }
        2 => {
            let n = single("Spin(2n+1)")?;
            if n < 1 {
                return Err(unsupported(2, "n >= 1"));
            }
            let g = format!("Spin({})", 2 * n + 1);
            (format!("{g}x{g}"), g, n, T::B, mult(2, 2, 0))
        }
        3 => {
            let n = single("Spin(2n)")?;
            if n < 2 {
                return Err(unsupported(3, "n >= 2"));
            }
            let g = format!("Spin({})", 2 * n);
            (format!("{g}x{g}"), g, n, T::D, mult(2, 0, 0))
        }
        4 => {
            let n = single("Sp(n)")?;
            if n < 1 {
                return Err(unsupported(4, "n >= 1"));
            }
            (format!("Sp({n})xSp({n})"), format!("Sp({n})"), n, T::C, mult(2, 0, 2))
        }
        5 => {
            let (p, q) = split()?;
            let (ty, m) = if p == q { (T::C, mult(2, 0, 1)) } else { (T::BC, mult(2, 2 * (q - p), 1)) };
            (format!("SU({})", p + q), format!("S(U({p})xU({q}))"), p, ty, m)
        }
        6 => {
            let n = single("SU(n)/SO(n)")?;
            if n < 2 {
                return Err(unsupported(6, "n >= 2"));
            }
            (format!("SU({n})"), format!("SO({n})"), n - 1, T::A, mult(1, 0, 0))
        }
        7 => {
            let n = single("SU(2n)/Sp(n)")?;
            if n < 1 {
                return Err(unsupported(7, "n >= 1"));
            }
            (format!("SU({})", 2 * n), format!("Sp({n})"), n - 1, T::A, mult(4, 0, 0))
        }
        8 => {
            let (p, q) = split()?;
            if p == q && p < 2 {
                return Err(unsupported(8, "SO(2) is not semisimple"));
            }
            let (ty, m) = if p == q { (T::D, mult(1, 0, 0)) } else { (T::B, mult(1, q - p, 0)) };
            (format!("SO({})", p + q), format!("SO({p})xSO({q})"), p, ty, m)
        }
        9 => {
            let n = single("SO(2n)/U(n)")?;
            if n < 2 {
                return Err(unsupported(9, "n >= 2"));
            }
            let (ty, m) = if n % 2 == 0 { (T::C, mult(4, 0, 1)) } else { (T::BC, mult(4, 4, 1)) };
            (format!("SO({})", 2 * n), format!("U({n})"), n / 2, ty, m)
        }
        10 => {
            let (p, q) = split()?;
            let (ty, m) = if p == q { (T::C, mult(4, 0, 3)) } else { (T::BC, mult(4, 4 * (q - p), 3)) };
            (format!("Sp({})", p + q), format!("Sp({p})xSp({q})"), p, ty, m)
        }
        11 => {
            let n = single("Sp(n)/U(n)")?;
            if n < 1 {
                return Err(unsupported(11, "n >= 1"));
            }
            (format!("Sp({n})"), format!("U({n})"), n, T::C, mult(1, 0, 1))
        }
        f => return Err(unsupported(f, "only rows 1 through 11 are classical")),
    };
    if ty == T::D && rank < 2 {
        return Err(unsupported(family_id, "type D needs rank >= 2"));
    }
    let dim = if ty == T::A { rank + 1 } else { rank };
    let unit = |i: usize, c: i64| {
        let mut v = vec![0; dim];
        v[i] = c;
        v
    };
    let mut positive_roots = Vec::new();
    for i in 0..rank.min(dim) {
        for j in (i + 1)..dim {
            let mut minus = unit(i, 1);
            minus[j] = -1;
            positive_roots.push(RestrictedRoot { root: minus, multiplicity: m.pair });
            if ty != T::A {
                let mut plus = unit(i, 1);
                plus[j] = 1;
                positive_roots.push(RestrictedRoot { root: plus, multiplicity: m.pair });
            }
        }
    }
    for i in 0..rank {
        if m.short > 0 {
            positive_roots.push(RestrictedRoot { root: unit(i, 1), multiplicity: m.short });
        }
        if m.long > 0 {
            positive_roots.push(RestrictedRoot { root: unit(i, 2), multiplicity: m.long });
        }
    }
    let mut simple_roots: Vec<Vec<i64>> = (0..rank.saturating_sub(1))
        .map(|i| {
            let mut v = unit(i, 1);
            v[i + 1] = -1;
            v
        })
        .collect();
    if rank > 0 {
        let l = rank - 1;
        simple_roots.push(match ty {
            T::A => {
                let mut v = unit(l, 1);
                v[l + 1] = -1;
                v
            }
            T::B | T::BC => unit(l, 1),
            T::C => unit(l, 2),
            T::D => {
                let mut v = unit(l, 1);
                v[l - 1] = 1;
                v
            }
        });
    }
    let doubled: Vec<usize> = simple_roots
        .iter()
        .enumerate()
        .filter(|(_, s)| {
            let twice: Vec<i64> = s.iter().map(|x| 2 * x).collect();
            positive_roots.iter().any(|r| r.root == twice)
        })
        .map(|(i, _)| i)
        .collect();
    let mut pair = RestrictedPairData {
        family_id,
        params,
        group,
        isotropy,
        rank,
        restricted_type: ty,
        positive_roots,
        simple_roots,
        doubled,
        class_one_weights: vec![],
    };
    pair.class_one_weights = solve_class_one(&pair)?;
    Ok(pair)
}

fn idot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn rdot(a: &[BigRational], b: &[i64]) -> BigRational {
    a.iter().zip(b).fold(BigRational::zero(), |acc, (x, &y)| acc + x * BigRational::from_integer(y.into()))
}

/// Solves `<ξ_i, ψ_j> / <ψ_j, ψ_j> = δ_ij` (2 on doubled indices) with each
/// `ξ_i` in the span of the simple roots.
fn solve_class_one(pair: &RestrictedPairData) -> Result<Vec<Vec<BigRational>>> {
    let l = pair.rank;
    if l == 0 {
        return Ok(vec![]);
    }
    let s = &pair.simple_roots;
    let gram = RatMatrix::from_fn(l, l, |i, j| rat(idot(&s[i], &s[j]), 1));
    let inv = gram.inverse()?;
    let dim = s[0].len();
    Ok((0..l)
        .map(|i| {
            let factor = if pair.doubled.contains(&i) { 2 } else { 1 };
            let target = rat(factor * idot(&s[i], &s[i]), 1);
            // coefficients a_k = target * (G^{-1})_{i k}
            let mut v = vec![BigRational::zero(); dim];
            for (k, sk) in s.iter().enumerate() {
                let a = &target * &inv[(i, k)];
                for (vj, &x) in v.iter_mut().zip(sk) {
                    *vj += &a * BigRational::from_integer(x.into());
                }
            }
            v
        })
        .collect())
}

impl RestrictedPairData {
    /// `dim M = rank + sum of multiplicities of positive restricted roots`.
    pub fn dimension(&self) -> usize {
        self.rank + self.positive_roots.iter().map(|r| r.multiplicity).sum::<usize>()
    }

    pub fn ambient_dim(&self) -> usize {
        self.simple_roots.first().map_or(0, Vec::len)
    }

    /// `<ξ_i, ψ_j> / <ψ_j, ψ_j>` for every pair of indices.
    pub fn pairing_matrix(&self) -> Vec<Vec<BigRational>> {
        self.class_one_weights
            .iter()
            .map(|xi| {
                self.simple_roots.iter().map(|psi| rdot(xi, psi) / rat(idot(psi, psi), 1)).collect()
            })
            .collect()
    }

    /// The weight `sum k_i ξ_i`.
    pub fn class_one_weight(&self, coeffs: &[i64]) -> Result<Vec<BigRational>> {
        if coeffs.len() != self.rank {
            return Err(Error::RankMismatch { expected: self.rank, actual: coeffs.len() });
        }
        let mut v = vec![BigRational::zero(); self.ambient_dim()];
        for (xi, &k) in self.class_one_weights.iter().zip(coeffs) {
            for (vj, x) in v.iter_mut().zip(xi) {
                *vj += x * BigRational::from_integer(k.into());
            }
        }
        Ok(v)
    }

    /// Coordinates of `λ` in the class-1 fundamental weights, if `λ` lies in
    /// their real span.
    pub fn class_one_coords(&self, lambda: &[BigRational]) -> Option<Vec<BigRational>> {
        if lambda.len() != self.ambient_dim() {
            return None;
        }
        let coords: Vec<BigRational> = self
            .simple_roots
            .iter()
            .enumerate()
            .map(|(j, psi)| {
                let factor = if self.doubled.contains(&j) { 2 } else { 1 };
                rdot(lambda, psi) / rat(factor * idot(psi, psi), 1)
            })
            .collect();
        let back = self.class_one_weights.iter().zip(&coords).fold(
            vec![BigRational::zero(); self.ambient_dim()],
            |mut acc, (xi, c)| {
                for (a, x) in acc.iter_mut().zip(xi) {
                    *a += x * c;
                }
                acc
            },
        );
        (back.as_slice() == lambda).then_some(coords)
    }

    /// Highest weight of `π_λ ⊠ π_λ*` for the group case, read as a weight
    /// of the first factor.
    pub fn group_case_weight(&self, coeffs: &[i64]) -> Result<DominantWeight> {
        let family = match self.family_id {
            1 => Family::A,
            2 => Family::B,
            3 => Family::D,
            4 => Family::C,
            f => return Err(unsupported(f, "not a group case")),
        };
        if coeffs.len() != self.rank {
            return Err(Error::RankMismatch { expected: self.rank, actual: coeffs.len() });
        }
        DominantWeight::new(family, coeffs.to_vec())
    }
}

pub fn class_one_fundamental_weights(pair: &RestrictedPairData) -> Vec<Vec<BigRational>> {
    pair.class_one_weights.clone()
}

/// Cartan–Helgason test for `λ ∈ a*`: `<λ, α> / <α, α>` must be a
/// nonnegative integer for every positive restricted root.
pub fn cartan_helgason_filter(pair: &RestrictedPairData, lambda: &[BigRational]) -> bool {
    if lambda.len() != pair.ambient_dim() {
        return pair.rank == 0 && lambda.iter().all(Zero::is_zero);
    }
    if pair.restricted_type == RestrictedType::A {
        let trace = lambda.iter().fold(BigRational::zero(), |a, x| a + x);
        if !trace.is_zero() {
            return false;
        }
    }
    pair.positive_roots.iter().all(|r| {
        let q = rdot(lambda, &r.root) / rat(idot(&r.root, &r.root), 1);
        q.is_integer() && !q.is_negative()
    })
}
