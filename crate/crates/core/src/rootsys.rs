//! Classical root systems, dominant weights, the Weyl dimension formula and
//! the coefficient-wise stabilization of weights across ranks.

use std::collections::{HashMap, HashSet};
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::exact::rat;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
        }
    }

    pub fn from_letter(c: char) -> Result<Family> {
        match c.to_ascii_uppercase() {
            'A' => Ok(Family::A),
            'B' => Ok(Family::B),
            'C' => Ok(Family::C),
            'D' => Ok(Family::D),
            _ => Err(Error::UnsupportedRootSystem { family: c, rank: 0 }),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

type RatVec = Vec<BigRational>;

/// Root datum of a classical simple Lie algebra in ε-coordinates. For type A
/// the coordinates are the traceless hyperplane of `R^{l+1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct RootSystemData {
    pub family: Family,
    pub rank: usize,
    pub positive_roots: Vec<RatVec>,
    pub simple_roots: Vec<RatVec>,
    pub fundamental_weights: Vec<RatVec>,
    /// Gram matrix of the invariant form on ε-coordinates (the identity).
    pub form: Vec<RatVec>,
    /// Common denominator: `scale * v` is integral for every weight `v`.
    pub scale: i64,
    scaled_positive: Vec<Vec<i64>>,
    scaled_simple: Vec<Vec<i64>>,
    scaled_fundamental: Vec<Vec<i64>>,
    heights: Vec<i64>,
    coroot_heights: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DominantWeight {
    pub family: Family,
    pub rank: usize,
    pub coeffs: Vec<i64>,
}

impl DominantWeight {
    pub fn new(family: Family, coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.iter().any(|&k| k < 0) {
            return Err(Error::NotDominant(coeffs));
        }
        Ok(DominantWeight { family, rank: coeffs.len(), coeffs })
    }

    pub fn zero(family: Family, rank: usize) -> Self {
        DominantWeight { family, rank, coeffs: vec![0; rank] }
    }
}

impl fmt::Display for DominantWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{:?}", self.family, self.rank, self.coeffs)
    }
}

fn unit(dim: usize, i: usize, c: BigRational) -> RatVec {
    let mut v = vec![BigRational::zero(); dim];
    v[i] = c;
    v
}

fn add(a: &RatVec, b: &RatVec) -> RatVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub(a: &RatVec, b: &RatVec) -> RatVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn idot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Prefix sum `ε_1 + … + ε_i` scaled by `c`.
fn prefix(dim: usize, i: usize, c: &BigRational) -> RatVec {
    (0..dim).map(|k| if k < i { c.clone() } else { BigRational::zero() }).collect()
}

pub fn build_root_system(family: Family, rank: usize) -> Result<RootSystemData> {
    let l = rank;
    if l == 0 || (family == Family::D && l < 2) {
        return Err(Error::UnsupportedRootSystem { family: family.letter(), rank });
    }
    let one = BigRational::one();
    let half = rat(1, 2);
    let dim = if family == Family::A { l + 1 } else { l };
    let e = |i: usize| unit(dim, i, one.clone());

    let mut simple: Vec<RatVec> = (0..dim - 1).map(|i| sub(&e(i), &e(i + 1))).collect();
    match family {
        Family::A => {}
        Family::B => simple.push(e(l - 1)),
        Family::C => simple.push(unit(dim, l - 1, rat(2, 1))),
        Family::D => simple.push(add(&e(l - 2), &e(l - 1))),
    }

    let mut positive = Vec::new();
    match family {
        Family::A => {
            for i in 0..dim {
                for j in (i + 1)..dim {
                    positive.push(sub(&e(i), &e(j)));
                }
            }
        }
        _ => {
            for i in 0..l {
                for j in (i + 1)..l {
                    positive.push(sub(&e(i), &e(j)));
                    positive.push(add(&e(i), &e(j)));
                }
                match family {
                    Family::B => positive.push(e(i)),
                    Family::C => positive.push(unit(dim, i, rat(2, 1))),
                    _ => {}
                }
            }
        }
    }

    let fundamental: Vec<RatVec> = (1..=l)
        .map(|i| match family {
            Family::A => {
                let shift = rat(i as i64, dim as i64);
                (0..dim).map(|k| if k < i { &one - &shift } else { -shift.clone() }).collect()
            }
            Family::B if i == l => prefix(dim, l, &half),
            Family::D if i == l => prefix(dim, l, &half),
            Family::D if i == l - 1 => {
                let mut v = prefix(dim, l, &half);
                v[l - 1] = -half.clone();
                v
            }
            _ => prefix(dim, i, &one),
        })
        .collect();

    let scale = if family == Family::A { 2 * dim as i64 } else { 2 };
    let to_int = |v: &RatVec| -> Vec<i64> {
        v.iter()
            .map(|x| {
                let y = x * BigRational::from_integer(scale.into());
                debug_assert!(y.is_integer());
                y.to_integer().to_i64().expect("weight coordinate overflow")
            })
            .collect()
    };
    let form = (0..dim).map(|i| e(i)).collect();
    // ⟨ξ_i, 2ρ∨⟩
    let heights = fundamental
        .iter()
        .map(|w| positive.iter().map(|a| dot(w, &coroot(a))).sum::<BigRational>().to_integer().to_i64().unwrap())
        .collect();
    let rho = fundamental.iter().fold(vec![BigRational::zero(); dim], |acc, w| add(&acc, w));
    let coroot_heights = positive.iter().map(|a| dot(&rho, &coroot(a)).to_integer().to_i64().unwrap()).collect();
    Ok(RootSystemData {
        heights,
        coroot_heights,
        family,
        rank,
        scaled_positive: positive.iter().map(to_int).collect(),
        scaled_simple: simple.iter().map(to_int).collect(),
        scaled_fundamental: fundamental.iter().map(to_int).collect(),
        positive_roots: positive,
        simple_roots: simple,
        fundamental_weights: fundamental,
        form,
        scale,
    })
}

pub fn coroot(alpha: &[BigRational]) -> RatVec {
    let n = dot(alpha, alpha);
    let f = rat(2, 1) / n;
    alpha.iter().map(|x| x * &f).collect()
}

pub fn is_dominant(rs: &RootSystemData, coeffs: &[i64]) -> bool {
    coeffs.len() == rs.rank && coeffs.iter().all(|&k| k >= 0)
}

impl RootSystemData {
    pub fn ambient_dim(&self) -> usize {
        self.form.len()
    }

    pub fn rho(&self) -> RatVec {
        let mut r = vec![BigRational::zero(); self.ambient_dim()];
        for w in &self.fundamental_weights {
            r = add(&r, w);
        }
        r
    }

    /// ε-coordinates of `sum k_i ξ_i`.
    pub fn to_epsilon(&self, coeffs: &[i64]) -> Result<RatVec> {
        if coeffs.len() != self.rank {
            return Err(Error::RankMismatch { expected: self.rank, actual: coeffs.len() });
        }
        let mut v = vec![BigRational::zero(); self.ambient_dim()];
        for (k, w) in coeffs.iter().zip(&self.fundamental_weights) {
            let k = BigRational::from_integer((*k).into());
            v = v.iter().zip(w).map(|(a, b)| a + &k * b).collect();
        }
        Ok(v)
    }

    /// Fundamental-weight coordinates `⟨v, ψ_j∨⟩` of an ε-vector.
    pub fn fundamental_coords(&self, v: &[BigRational]) -> Vec<BigRational> {
        self.simple_roots.iter().map(|s| dot(v, &coroot(s))).collect()
    }

    pub fn check_weight(&self, w: &DominantWeight) -> Result<()> {
        if w.family != self.family {
            return Err(Error::FamilyMismatch(self.family.letter(), w.family.letter()));
        }
        if w.coeffs.len() != self.rank {
            return Err(Error::RankMismatch { expected: self.rank, actual: w.coeffs.len() });
        }
        if !is_dominant(self, &w.coeffs) {
            return Err(Error::NotDominant(w.coeffs.clone()));
        }
        Ok(())
    }

    pub fn scaled_positive_roots(&self) -> &[Vec<i64>] {
        &self.scaled_positive
    }

    pub fn scaled_simple_roots(&self) -> &[Vec<i64>] {
        &self.scaled_simple
    }

    /// `scale * (sum k_i ξ_i)` as an integer vector.
    pub fn scaled_weight(&self, coeffs: &[i64]) -> Vec<i64> {
        let mut v = vec![0i64; self.ambient_dim()];
        for (k, w) in coeffs.iter().zip(&self.scaled_fundamental) {
            for (a, b) in v.iter_mut().zip(w) {
                *a += k * b;
            }
        }
        v
    }

    /// Fundamental coordinates of a scaled integer weight.
    pub fn scaled_to_coeffs(&self, v: &[i64]) -> Vec<i64> {
        self.scaled_simple
            .iter()
            .map(|s| {
                let num = 2 * idot(v, s);
                let den = idot(s, s);
                debug_assert_eq!(num % den, 0, "not an integral weight");
                num / den
            })
            .collect()
    }

    /// Dominant Weyl conjugate of a scaled weight, by simple reflections.
    pub fn dominant_conjugate(&self, v: &[i64]) -> Vec<i64> {
        let mut v = v.to_vec();
        loop {
            let mut changed = false;
            for s in &self.scaled_simple {
                let p = idot(&v, s);
                if p < 0 {
                    let c = 2 * p / idot(s, s);
                    for (a, b) in v.iter_mut().zip(s) {
                        *a -= c * b;
                    }
                    changed = true;
                }
            }
            if !changed {
                return v;
            }
        }
    }

    /// Weyl-group orbit of a scaled weight.
    pub fn orbit(&self, v: &[i64]) -> Vec<Vec<i64>> {
        let start = self.dominant_conjugate(v);
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        seen.insert(start.clone());
        let mut stack = vec![start];
        let mut out = Vec::new();
        while let Some(w) = stack.pop() {
            for s in &self.scaled_simple {
                let p = idot(&w, s);
                if p != 0 {
                    let c = 2 * p / idot(s, s);
                    let r: Vec<i64> = w.iter().zip(s).map(|(a, b)| a - c * b).collect();
                    if seen.insert(r.clone()) {
                        stack.push(r);
                    }
                }
            }
            out.push(w);
        }
        out
    }

    /// Order of the Weyl group, `prod_{α>0} (ht α∨ + 1) / ht α∨`.
    pub fn weyl_group_order(&self) -> u128 {
        self.stabilizer_order(&vec![0; self.ambient_dim()])
    }

    /// Order of the stabilizer of a dominant scaled weight.
    pub fn stabilizer_order(&self, dominant: &[i64]) -> u128 {
        let (mut num, mut den) = (1u128, 1u128);
        for (a, &h) in self.scaled_positive.iter().zip(&self.coroot_heights) {
            if idot(dominant, a) == 0 {
                num *= h as u128 + 1;
                den *= h as u128;
                let g = num_integer::gcd(num, den);
                num /= g;
                den /= g;
            }
        }
        debug_assert_eq!(den, 1);
        num / den
    }

    /// Cartan matrix `A_ij = ⟨ψ_i, ψ_j∨⟩`; row `i` is `ψ_i` in fundamental coordinates.
    pub fn cartan(&self) -> Vec<Vec<i64>> {
        self.scaled_simple.iter().map(|s| self.scaled_to_coeffs(s)).collect()
    }

    /// `⟨ξ_i, 2ρ∨⟩` for each fundamental weight.
    pub fn fundamental_heights(&self) -> &[i64] {
        &self.heights
    }

    /// Dominant conjugate of a weight given in fundamental coordinates.
    pub fn dominant_fundamental(&self, c: &[i64]) -> Vec<i64> {
        let cartan = self.cartan();
        let mut c = c.to_vec();
        while let Some(i) = c.iter().position(|&x| x < 0) {
            let ci = c[i];
            for (x, a) in c.iter_mut().zip(&cartan[i]) {
                *x -= ci * a;
            }
        }
        c
    }

    /// Number of weights in the Weyl orbit of a dominant scaled weight.
    pub fn orbit_size(&self, dominant: &[i64]) -> u128 {
        self.weyl_group_order() / self.stabilizer_order(dominant)
    }

    /// `⟨v, 2ρ∨⟩`, the height used to order weights.
    pub fn height(&self, v: &[i64]) -> i64 {
        self.scaled_to_coeffs(v).iter().zip(&self.heights).map(|(c, h)| c * h).sum()
    }
}

pub fn weyl_dimension(rs: &RootSystemData, lambda: &DominantWeight) -> Result<u128> {
    rs.check_weight(lambda)?;
    let l = rs.to_epsilon(&lambda.coeffs)?;
    let rho = rs.rho();
    let lr = add(&l, &rho);
    let mut acc = BigRational::one();
    for a in &rs.positive_roots {
        acc *= dot(&lr, a) / dot(&rho, a);
    }
    if !acc.is_integer() {
        return Err(Error::Invalid(format!("Weyl dimension {acc} is not integral")));
    }
    acc.to_integer()
        .to_u128()
        .ok_or_else(|| Error::Invalid("Weyl dimension overflows u128".into()))
}

pub fn stabilize_weight(lambda: &DominantWeight, target_rank: usize) -> Result<DominantWeight> {
    if target_rank < lambda.rank {
        return Err(Error::RankDecrease { source_rank: lambda.rank, target: target_rank });
    }
    let mut coeffs = lambda.coeffs.clone();
    coeffs.resize(target_rank, 0);
    DominantWeight::new(lambda.family, coeffs)
}

/// Like [`stabilize_weight`] but checks the family of the target system.
pub fn stabilize_weight_into(lambda: &DominantWeight, target: &RootSystemData) -> Result<DominantWeight> {
    if lambda.family != target.family {
        return Err(Error::FamilyMismatch(lambda.family.letter(), target.family.letter()));
    }
    stabilize_weight(lambda, target.rank)
}

/// Dominant weights of the irreducible module with highest weight `λ` and
/// their multiplicities (Freudenthal), as scaled ε-vectors, highest first.
pub fn freudenthal_dominant(rs: &RootSystemData, lambda: &DominantWeight) -> Result<Vec<(Vec<i64>, u64)>> {
    Ok(freudenthal_fundamental(rs, lambda)?
        .into_iter()
        .map(|(c, m)| (rs.scaled_weight(&c), m))
        .collect())
}

/// Freudenthal recursion carried out in fundamental-weight coordinates.
fn freudenthal_fundamental(rs: &RootSystemData, lambda: &DominantWeight) -> Result<Vec<(Vec<i64>, u64)>> {
    rs.check_weight(lambda)?;
    let l = rs.rank;
    let cartan: Vec<Vec<i64>> = rs.scaled_simple.iter().map(|s| rs.scaled_to_coeffs(s)).collect();
    let roots: Vec<Vec<i64>> = rs.scaled_positive.iter().map(|a| rs.scaled_to_coeffs(a)).collect();
    // ⟨ξ_i, α⟩ and ⟨ξ_i, ξ_j⟩, both times scale^2
    let xi_alpha: Vec<Vec<i64>> = rs
        .scaled_positive
        .iter()
        .map(|a| rs.scaled_fundamental.iter().map(|f| idot(f, a)).collect())
        .collect();
    let gram: Vec<Vec<i64>> = rs
        .scaled_fundamental
        .iter()
        .map(|f| rs.scaled_fundamental.iter().map(|g| idot(f, g)).collect())
        .collect();
    let quad = |c: &[i64]| -> i64 {
        let mut acc = 0;
        for i in 0..l {
            for j in 0..l {
                acc += (c[i] + 1) * gram[i][j] * (c[j] + 1);
            }
        }
        acc
    };
    let to_dominant = |c: &mut Vec<i64>| loop {
        let Some(i) = c.iter().position(|&x| x < 0) else { return };
        let ci = c[i];
        for (x, a) in c.iter_mut().zip(&cartan[i]) {
            *x -= ci * a;
        }
    };

    let top = lambda.coeffs.clone();
    let mut set: HashSet<Vec<i64>> = HashSet::new();
    set.insert(top.clone());
    let mut stack = vec![top.clone()];
    while let Some(mu) = stack.pop() {
        for a in &roots {
            let nu: Vec<i64> = mu.iter().zip(a).map(|(x, y)| x - y).collect();
            if nu.iter().all(|&c| c >= 0) && set.insert(nu.clone()) {
                stack.push(nu);
            }
        }
    }
    let height = |c: &[i64]| -> i64 { c.iter().zip(&rs.heights).map(|(x, h)| x * h).sum() };
    let mut order: Vec<Vec<i64>> = set.into_iter().collect();
    order.sort_by_key(|v| std::cmp::Reverse(height(v)));

    let top_norm = quad(&top);
    let mut mult: HashMap<Vec<i64>, u64> = HashMap::new();
    let mut out = Vec::with_capacity(order.len());
    let mut nu = vec![0i64; l];
    for mu in order {
        let m = if mu == top {
            1
        } else {
            let mut num: i64 = 0;
            for (a, xa) in roots.iter().zip(&xi_alpha) {
                let mut k = 1;
                loop {
                    for i in 0..l {
                        nu[i] = mu[i] + k * a[i];
                    }
                    let pairing: i64 = nu.iter().zip(xa).map(|(x, y)| x * y).sum();
                    let mut d = nu.clone();
                    to_dominant(&mut d);
                    let Some(&mn) = mult.get(&d) else { break };
                    num += mn as i64 * pairing;
                    k += 1;
                }
            }
            let den = top_norm - quad(&mu);
            debug_assert!(den > 0 && (2 * num) % den == 0);
            (2 * num / den) as u64
        };
        mult.insert(mu.clone(), m);
        if m > 0 {
            out.push((mu, m));
        }
    }
    Ok(out)
}

/// Full weight system `{(ν, m(ν))}` with Weyl orbits expanded.
pub fn weight_system(rs: &RootSystemData, lambda: &DominantWeight) -> Result<Vec<(Vec<i64>, u64)>> {
    let mut out = Vec::new();
    for (mu, m) in freudenthal_dominant(rs, lambda)? {
        for w in rs.orbit(&mu) {
            out.push((w, m));
        }
    }
    Ok(out)
}

/// Full weight system in fundamental coordinates `⟨ν, ψ_j∨⟩`.
pub fn weight_system_fundamental(rs: &RootSystemData, lambda: &DominantWeight) -> Result<Vec<(Vec<i64>, u64)>> {
    let cartan = rs.cartan();
    let mut out = Vec::new();
    for (mu, m) in freudenthal_fundamental(rs, lambda)? {
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        seen.insert(mu.clone());
        let mut stack = vec![mu];
        while let Some(w) = stack.pop() {
            for (i, row) in cartan.iter().enumerate() {
                if w[i] != 0 {
                    let r: Vec<i64> = w.iter().zip(row).map(|(x, a)| x - w[i] * a).collect();
                    if seen.insert(r.clone()) {
                        stack.push(r);
                    }
                }
            }
            out.push((w, m));
        }
    }
    Ok(out)
}

/// Dimension as the total weight multiplicity.
pub fn freudenthal_dimension(rs: &RootSystemData, lambda: &DominantWeight) -> Result<u128> {
    Ok(freudenthal_dominant(rs, lambda)?
        .iter()
        .map(|(mu, m)| *m as u128 * rs.orbit_size(mu))
        .sum())
}
