//! 2-step nilpotent Lie algebras `n = z + v`: the forms `b_t`, exact
//! Pfaffians and Pfaffian polynomials, and the Heisenberg quotients.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::numerics::exact::{rat, RatMatrix};
use crate::numerics::Poly;

/// Structure constants `[v_i, v_j] = sum_k c[i][j][k] z_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoStepAlgebra {
    pub name: String,
    pub dim_v: usize,
    pub dim_z: usize,
    pub brackets: Vec<Vec<Vec<BigRational>>>,
    pub v_labels: Vec<String>,
    pub z_labels: Vec<String>,
}

impl fmt::Display for TwoStepAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (dim v = {}, dim z = {})", self.name, self.dim_v, self.dim_z)
    }
}

fn zero_tensor(dim_v: usize, dim_z: usize) -> Vec<Vec<Vec<BigRational>>> {
    vec![vec![vec![BigRational::zero(); dim_z]; dim_v]; dim_v]
}

/// Builds an algebra from `(i, j, k, c)` entries meaning `c_{ij}^k = c`. The
/// entry for `(j, i)` is filled in; conflicting or diagonal entries fail.
pub fn build_two_step(
    name: &str,
    dim_v: usize,
    dim_z: usize,
    entries: &[(usize, usize, usize, BigRational)],
) -> Result<TwoStepAlgebra> {
    let mut c = zero_tensor(dim_v, dim_z);
    let mut seen: HashMap<(usize, usize, usize), BigRational> = HashMap::new();
    for (i, j, k, val) in entries {
        let (i, j, k) = (*i, *j, *k);
        if i >= dim_v || j >= dim_v || k >= dim_z {
            return Err(Error::Invalid(format!("bracket index ({i}, {j}, {k}) out of range")));
        }
        if i == j {
            if !val.is_zero() {
                return Err(Error::NotSkew(i, j));
            }
            continue;
        }
        if let Some(prev) = seen.get(&(j, i, k)) {
            if *prev != -val.clone() {
                return Err(Error::NotSkew(i, j));
            }
        }
        if let Some(prev) = seen.get(&(i, j, k)) {
            if prev != val {
                return Err(Error::NotSkew(i, j));
            }
        }
        seen.insert((i, j, k), val.clone());
        c[i][j][k] = val.clone();
        c[j][i][k] = -val.clone();
    }
    Ok(TwoStepAlgebra {
        name: name.to_string(),
        dim_v,
        dim_z,
        brackets: c,
        v_labels: (1..=dim_v).map(|i| format!("v{i}")).collect(),
        z_labels: (1..=dim_z).map(|k| format!("z{k}")).collect(),
    })
}

/// Builds an algebra from a full tensor, checking skew symmetry.
pub fn from_tensor(name: &str, c: Vec<Vec<Vec<BigRational>>>, dim_z: usize) -> Result<TwoStepAlgebra> {
    let dim_v = c.len();
    for i in 0..dim_v {
        if c[i].len() != dim_v {
            return Err(Error::DimensionMismatch(dim_v, c[i].len()));
        }
        for j in 0..dim_v {
            if c[i][j].len() != dim_z {
                return Err(Error::DimensionMismatch(dim_z, c[i][j].len()));
            }
            for k in 0..dim_z {
                if c[i][j][k] != -c[j][i][k].clone() {
                    return Err(Error::NotSkew(i, j));
                }
            }
        }
    }
    Ok(TwoStepAlgebra {
        name: name.to_string(),
        dim_v,
        dim_z,
        brackets: c,
        v_labels: (1..=dim_v).map(|i| format!("v{i}")).collect(),
        z_labels: (1..=dim_z).map(|k| format!("z{k}")).collect(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DivisionAlgebra {
    Complex,
    Quaternion,
}

/// Quaternion product on basis `1, i, j, k`: returns `(sign, index)`.
fn quat_mul(a: usize, b: usize) -> (i64, usize) {
    const TABLE: [[(i64, usize); 4]; 4] = [
        [(1, 0), (1, 1), (1, 2), (1, 3)],
        [(1, 1), (-1, 0), (1, 3), (-1, 2)],
        [(1, 2), (-1, 3), (-1, 0), (1, 1)],
        [(1, 3), (1, 2), (-1, 1), (-1, 0)],
    ];
    TABLE[a][b]
}

/// `h_{n,F} = Im F + F^n` with `[v, w] = Im sum conj(v_l) w_l`. Basis of
/// `v`: the real units of each coordinate in turn (`x_1, y_1, ...` for C).
pub fn build_heisenberg(n: usize, field: DivisionAlgebra) -> Result<TwoStepAlgebra> {
    if n < 1 {
        return Err(Error::Invalid("Heisenberg algebras need n >= 1".into()));
    }
    let units = match field {
        DivisionAlgebra::Complex => 2,
        DivisionAlgebra::Quaternion => 4,
    };
    let dim_v = units * n;
    let dim_z = units - 1;
    let mut entries = Vec::new();
    for l in 0..n {
        for a in 0..units {
            for b in 0..units {
                // conj(e_a) e_b; C sits inside H as span(1, i)
                let conj_sign = if a == 0 { 1 } else { -1 };
                let (s, idx) = quat_mul(a, b);
                if idx > 0 {
                    entries.push((units * l + a, units * l + b, idx - 1, rat(conj_sign * s, 1)));
                }
            }
        }
    }
    let mut alg = build_two_step(&format!("h_{{{n},{}}}", if units == 2 { "C" } else { "H" }), dim_v, dim_z, &entries)?;
    let names: &[&str] = if units == 2 { &["x", "y"] } else { &["a", "b", "c", "d"] };
    alg.v_labels = (0..n).flat_map(|l| names.iter().map(move |s| format!("{s}{}", l + 1))).collect();
    alg.z_labels = if units == 2 { vec!["z".into()] } else { vec!["zi".into(), "zj".into(), "zk".into()] };
    Ok(alg)
}

/// Free 2-step nilpotent algebra on `R^n`: `[v_i, v_j] = z_{ij}`, `i < j`.
pub fn build_free_two_step(n: usize) -> Result<TwoStepAlgebra> {
    if n < 1 {
        return Err(Error::Invalid("free algebras need n >= 1".into()));
    }
    let mut entries = Vec::new();
    let mut k = 0;
    let mut z_labels = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            entries.push((i, j, k, BigRational::one()));
            z_labels.push(format!("z{}{}", i + 1, j + 1));
            k += 1;
        }
    }
    let mut alg = build_two_step(&format!("f_{n}"), n, n * (n - 1) / 2, &entries)?;
    alg.z_labels = z_labels;
    Ok(alg)
}

/// Orthogonal basis of `u(n)` under `<A, B> = -Re tr(AB)`: the `i E_ll`,
/// then `E_jk - E_kj` and `i(E_jk + E_kj)` for `j < k`. Entries are
/// `(re, im)` pairs of a dense `n × n` matrix.
fn un_basis(n: usize) -> Vec<Vec<(i64, i64)>> {
    let mut out = Vec::new();
    let idx = |r: usize, c: usize| r * n + c;
    for l in 0..n {
        let mut m = vec![(0, 0); n * n];
        m[idx(l, l)] = (0, 1);
        out.push(m);
    }
    for j in 0..n {
        for k in (j + 1)..n {
            let mut m = vec![(0, 0); n * n];
            m[idx(j, k)] = (1, 0);
            m[idx(k, j)] = (-1, 0);
            out.push(m);
            let mut m = vec![(0, 0); n * n];
            m[idx(j, k)] = (0, 1);
            m[idx(k, j)] = (0, 1);
            out.push(m);
        }
    }
    out
}

/// `v = C^n`, `z = u(n)`, with the `A`-coordinate of `[v, w]` equal to
/// `Re <A v, w> / <A, A>` where `<x, y> = sum x_l conj(y_l)`.
pub fn build_un_type(n: usize) -> Result<TwoStepAlgebra> {
    if n < 1 {
        return Err(Error::Invalid("u(n) needs n >= 1".into()));
    }
    let basis = un_basis(n);
    let dim_v = 2 * n;
    let mut c = zero_tensor(dim_v, basis.len());
    // real basis vector e_a of C^n: coordinate a / 2, unit 1 or i
    let vec_of = |a: usize| -> (usize, (i64, i64)) { (a / 2, if a % 2 == 0 { (1, 0) } else { (0, 1) }) };
    for (k, m) in basis.iter().enumerate() {
        let norm_sq = if k < n { 1 } else { 2 };
        for a in 0..dim_v {
            let (ca, ua) = vec_of(a);
            for b in 0..dim_v {
                let (cb, ub) = vec_of(b);
                // (A e_a)_{cb} = A[cb][ca] * ua; pair with conj(ub)
                let (ar, ai) = m[cb * n + ca];
                let prod = (ar * ua.0 - ai * ua.1, ar * ua.1 + ai * ua.0);
                let re = prod.0 * ub.0 + prod.1 * ub.1;
                if re != 0 {
                    c[a][b][k] = rat(re, norm_sq);
                }
            }
        }
    }
    let mut alg = from_tensor(&format!("u_{n}"), c, basis.len())?;
    alg.v_labels = (0..n).flat_map(|l| [format!("x{}", l + 1), format!("y{}", l + 1)]).collect();
    Ok(alg)
}

pub fn direct_sum(a: &TwoStepAlgebra, b: &TwoStepAlgebra) -> TwoStepAlgebra {
    let dim_v = a.dim_v + b.dim_v;
    let dim_z = a.dim_z + b.dim_z;
    let mut c = zero_tensor(dim_v, dim_z);
    for i in 0..a.dim_v {
        for j in 0..a.dim_v {
            for k in 0..a.dim_z {
                c[i][j][k] = a.brackets[i][j][k].clone();
            }
        }
    }
    for i in 0..b.dim_v {
        for j in 0..b.dim_v {
            for k in 0..b.dim_z {
                c[a.dim_v + i][a.dim_v + j][a.dim_z + k] = b.brackets[i][j][k].clone();
            }
        }
    }
    let tag = |s: &String, side: &str| format!("{s}{side}");
    TwoStepAlgebra {
        name: format!("{} + {}", a.name, b.name),
        dim_v,
        dim_z,
        brackets: c,
        v_labels: a.v_labels.iter().map(|s| tag(s, "'")).chain(b.v_labels.iter().map(|s| tag(s, "''"))).collect(),
        z_labels: a.z_labels.iter().map(|s| tag(s, "'")).chain(b.z_labels.iter().map(|s| tag(s, "''"))).collect(),
    }
}

impl TwoStepAlgebra {
    /// True when the brackets span all of `z`.
    pub fn center_is_derived(&self) -> bool {
        let mut rows = Vec::new();
        for i in 0..self.dim_v {
            for j in (i + 1)..self.dim_v {
                rows.push(self.brackets[i][j].clone());
            }
        }
        if rows.is_empty() {
            return self.dim_z == 0;
        }
        RatMatrix::from_fn(rows.len(), self.dim_z, |r, k| rows[r][k].clone()).rank() == self.dim_z
    }

    /// The algebra in the basis `v'_a = sum_i s[i][a] v_i`.
    pub fn change_basis(&self, s: &RatMatrix) -> Result<TwoStepAlgebra> {
        if s.rows != self.dim_v || s.cols != self.dim_v {
            return Err(Error::DimensionMismatch(self.dim_v, s.rows));
        }
        let mut c = zero_tensor(self.dim_v, self.dim_z);
        for k in 0..self.dim_z {
            let b = RatMatrix::from_fn(self.dim_v, self.dim_v, |i, j| self.brackets[i][j][k].clone());
            let bt = s.transpose().mul(&b)?.mul(s)?;
            for a in 0..self.dim_v {
                for bb in 0..self.dim_v {
                    c[a][bb][k] = bt[(a, bb)].clone();
                }
            }
        }
        let mut out = from_tensor(&format!("{}'", self.name), c, self.dim_z)?;
        out.z_labels = self.z_labels.clone();
        Ok(out)
    }

    /// Subalgebra spanned by the first `k` basis vectors of `v` and all of
    /// `z`.
    pub fn truncate_v(&self, k: usize) -> Result<TwoStepAlgebra> {
        if k > self.dim_v {
            return Err(Error::DimensionMismatch(self.dim_v, k));
        }
        let c = (0..k).map(|i| (0..k).map(|j| self.brackets[i][j].clone()).collect()).collect();
        let mut out = from_tensor(&format!("{}|{k}", self.name), c, self.dim_z)?;
        out.v_labels = self.v_labels[..k].to_vec();
        out.z_labels = self.z_labels.clone();
        Ok(out)
    }

    /// Text format: `dim_v dim_z`, then `i j k num/den` per nonzero
    /// `c_{ij}^k` with `i < j` (1-based).
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.dim_v, self.dim_z);
        for i in 0..self.dim_v {
            for j in (i + 1)..self.dim_v {
                for k in 0..self.dim_z {
                    let c = &self.brackets[i][j][k];
                    if !c.is_zero() {
                        out.push_str(&format!("{} {} {} {}/{}\n", i + 1, j + 1, k + 1, c.numer(), c.denom()));
                    }
                }
            }
        }
        out
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad rational `{s}`"));
    match s.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().map_err(|_| bad())?;
            let b: BigInt = b.trim().parse().map_err(|_| bad())?;
            if b.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(a, b))
        }
        None => Ok(BigRational::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

pub fn parse_algebra_text(name: &str, text: &str) -> Result<TwoStepAlgebra> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines.next().ok_or_else(|| Error::Parse("empty algebra file".into()))?;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(|x| x.parse().map_err(|_| Error::Parse(format!("bad header `{header}`"))))
        .collect::<Result<_>>()?;
    if dims.len() != 2 {
        return Err(Error::Parse(format!("header needs `dim_v dim_z`, got `{header}`")));
    }
    let mut entries = Vec::new();
    for line in lines {
        let f: Vec<&str> = line.split_whitespace().collect();
        if f.len() != 4 {
            return Err(Error::Parse(format!("expected `i j k c`, got `{line}`")));
        }
        let idx = |s: &str| -> Result<usize> {
            let v: usize = s.parse().map_err(|_| Error::Parse(format!("bad index `{s}`")))?;
            v.checked_sub(1).ok_or_else(|| Error::Parse("indices are 1-based".into()))
        };
        entries.push((idx(f[0])?, idx(f[1])?, idx(f[2])?, parse_rational(f[3])?));
    }
    build_two_step(name, dims[0], dims[1], &entries)
}

/// Algebra identifiers: `heis:n`, `quat:n`, `free:n`, `un:n`, joined by `+`
/// for direct sums.
pub fn algebra_from_id(id: &str) -> Result<TwoStepAlgebra> {
    let mut parts = id.split('+').map(str::trim);
    let first = parts.next().ok_or_else(|| Error::Parse("empty algebra id".into()))?;
    let mut alg = single_algebra(first)?;
    for p in parts {
        alg = direct_sum(&alg, &single_algebra(p)?);
    }
    Ok(alg)
}

fn single_algebra(id: &str) -> Result<TwoStepAlgebra> {
    let (kind, n) = id.split_once(':').ok_or_else(|| Error::Parse(format!("bad algebra id `{id}`")))?;
    let n: usize = n.trim().parse().map_err(|_| Error::Parse(format!("bad size in `{id}`")))?;
    match kind.trim() {
        "heis" => build_heisenberg(n, DivisionAlgebra::Complex),
        "quat" => build_heisenberg(n, DivisionAlgebra::Quaternion),
        "free" => build_free_two_step(n),
        "un" => build_un_type(n),
        other => Err(Error::Parse(format!("unknown algebra kind `{other}`"))),
    }
}

/// `B(t)_{ij} = sum_k t_k c_{ij}^k`.
pub fn b_form(alg: &TwoStepAlgebra, t: &[BigRational]) -> Result<RatMatrix> {
    if t.len() != alg.dim_z {
        return Err(Error::DimensionMismatch(alg.dim_z, t.len()));
    }
    Ok(RatMatrix::from_fn(alg.dim_v, alg.dim_v, |i, j| {
        alg.brackets[i][j].iter().zip(t).fold(BigRational::zero(), |acc, (c, x)| acc + c * x)
    }))
}

/// `B(t)` with entries linear forms in the coordinates of `t`.
pub fn b_form_symbolic(alg: &TwoStepAlgebra) -> Vec<Vec<Poly>> {
    (0..alg.dim_v)
        .map(|i| (0..alg.dim_v).map(|j| Poly::linear(&alg.brackets[i][j])).collect())
        .collect()
}

/// Exact Pfaffian by skew elimination over the rationals. Odd sizes give 0.
pub fn pfaffian(m: &RatMatrix) -> Result<BigRational> {
    if m.rows != m.cols {
        return Err(Error::DimensionMismatch(m.rows, m.cols));
    }
    if !m.is_skew() {
        for i in 0..m.rows {
            for j in 0..m.cols {
                if m[(i, j)] != -m[(j, i)].clone() {
                    return Err(Error::NotSkew(i, j));
                }
            }
        }
    }
    let n = m.rows;
    if n % 2 == 1 {
        return Ok(BigRational::zero());
    }
    let mut a = m.clone();
    let mut size = n;
    let mut result = BigRational::one();
    // the active block is rows/cols n-size..n
    while size > 0 {
        let o = n - size;
        let Some(p) = ((o + 1)..n).find(|&j| !a[(o, j)].is_zero()) else {
            return Ok(BigRational::zero());
        };
        if p != o + 1 {
            // swap index o+1 with p in rows and columns
            for k in 0..n {
                let tmp = a[(o + 1, k)].clone();
                a[(o + 1, k)] = a[(p, k)].clone();
                a[(p, k)] = tmp;
            }
            for k in 0..n {
                let tmp = a[(k, o + 1)].clone();
                a[(k, o + 1)] = a[(k, p)].clone();
                a[(k, p)] = tmp;
            }
            result = -result;
        }
        let piv = a[(o, o + 1)].clone();
        result *= &piv;
        for i in (o + 2)..n {
            for j in (o + 2)..n {
                let delta = (&a[(o + 1, i)] * &a[(o, j)] - &a[(o, i)] * &a[(o + 1, j)]) / &piv;
                a[(i, j)] += delta;
            }
        }
        size -= 2;
    }
    Ok(result)
}

/// Pfaffian of a skew matrix of polynomials by first-row expansion, memoized
/// on the set of remaining indices.
pub fn pfaffian_symbolic(m: &[Vec<Poly>], nvars: usize) -> Poly {
    let n = m.len();
    if n % 2 == 1 {
        return Poly::zero(nvars);
    }
    let mut memo: HashMap<Vec<usize>, Poly> = HashMap::new();
    fn rec(m: &[Vec<Poly>], idx: &[usize], nvars: usize, memo: &mut HashMap<Vec<usize>, Poly>) -> Poly {
        if idx.is_empty() {
            return Poly::one(nvars);
        }
        if let Some(p) = memo.get(idx) {
            return p.clone();
        }
        let first = idx[0];
        let mut acc = Poly::zero(nvars);
        for (pos, &j) in idx.iter().enumerate().skip(1) {
            if m[first][j].is_zero() {
                continue;
            }
            let rest: Vec<usize> = idx.iter().copied().filter(|&x| x != first && x != j).collect();
            let sub = rec(m, &rest, nvars, memo);
            let term = m[first][j].mul(&sub);
            acc = if pos % 2 == 1 { acc.add(&term) } else { acc.sub(&term) };
        }
        memo.insert(idx.to_vec(), acc.clone());
        acc
    }
    let idx: Vec<usize> = (0..n).collect();
    rec(m, &idx, nvars, &mut memo)
}

#[derive(Debug, Clone, PartialEq)]
pub struct PfaffianPolynomial {
    pub poly: Poly,
}

impl PfaffianPolynomial {
    pub fn eval(&self, t: &[f64]) -> f64 {
        self.poly.eval(t)
    }

    pub fn eval_rat(&self, t: &[BigRational]) -> BigRational {
        self.poly.eval_rat(t)
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }
}

impl fmt::Display for PfaffianPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}

pub fn pfaffian_polynomial(alg: &TwoStepAlgebra) -> PfaffianPolynomial {
    PfaffianPolynomial { poly: pfaffian_symbolic(&b_form_symbolic(alg), alg.dim_z) }
}

pub fn is_generically_square_integrable(alg: &TwoStepAlgebra) -> bool {
    !pfaffian_polynomial(alg).is_zero()
}

/// `|P(t)|`, the Plancherel density up to normalization.
pub fn plancherel_density(alg: &TwoStepAlgebra, t: &[f64]) -> Result<f64> {
    if t.len() != alg.dim_z {
        return Err(Error::DimensionMismatch(alg.dim_z, t.len()));
    }
    Ok(pfaffian_polynomial(alg).eval(t).abs())
}

/// Random rational point of `[-1, 1]^dim` with denominator `2^20`.
pub fn random_rational_point(rng: &mut ChaCha8Rng, dim: usize) -> Vec<BigRational> {
    let den: i64 = 1 << 20;
    (0..dim).map(|_| rat(rng.gen_range(-den..=den), den)).collect()
}

/// Fraction of `count` seeded rational samples with `P(t) = 0` exactly.
pub fn sample_zero_set(alg: &TwoStepAlgebra, count: usize, seed: u64) -> f64 {
    if count == 0 {
        return 0.0;
    }
    let p = pfaffian_polynomial(alg);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let zeros = (0..count)
        .filter(|_| p.eval_rat(&random_rational_point(&mut rng, alg.dim_z)).is_zero())
        .count();
    zeros as f64 / count as f64
}

/// A symplectic basis `e_1, f_1, ..., e_d, f_d` of `(v, b_t)` with
/// `b_t(e_i, f_j) = δ_ij`, as the columns of `basis`.
#[derive(Debug, Clone, PartialEq)]
pub struct HeisenbergQuotient {
    pub level: usize,
    pub basis: RatMatrix,
    /// `t` itself: the quotient's center is `z / ker t`, with coordinate `t(z)`.
    pub central: Vec<BigRational>,
    pub pfaffian: BigRational,
}

fn form_value(b: &RatMatrix, x: &[BigRational], y: &[BigRational]) -> BigRational {
    let mut acc = BigRational::zero();
    for i in 0..b.rows {
        if x[i].is_zero() {
            continue;
        }
        for j in 0..b.cols {
            if !y[j].is_zero() && !b[(i, j)].is_zero() {
                acc += &x[i] * &b[(i, j)] * &y[j];
            }
        }
    }
    acc
}

pub fn quotient_to_heisenberg(alg: &TwoStepAlgebra, t: &[BigRational]) -> Result<HeisenbergQuotient> {
    let b = b_form(alg, t)?;
    let pf = pfaffian(&b)?;
    if pf.is_zero() {
        return Err(Error::DegenerateForm);
    }
    let n = alg.dim_v;
    let mut pool: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
        .collect();
    let mut cols: Vec<Vec<BigRational>> = Vec::new();
    while !pool.is_empty() {
        let e = pool.remove(0);
        let Some(pos) = pool.iter().position(|f| !form_value(&b, &e, f).is_zero()) else {
            return Err(Error::DegenerateForm);
        };
        let mut f = pool.remove(pos);
        let s = form_value(&b, &e, &f);
        f.iter_mut().for_each(|x| *x /= &s);
        // project the rest onto the b-orthogonal complement of span(e, f)
        for g in pool.iter_mut() {
            let ge = form_value(&b, g, &e);
            let gf = form_value(&b, g, &f);
            // g - b(g,f)·e + b(g,e)·f has zero pairing with e and f
            for k in 0..n {
                let delta = &gf * &e[k] - &ge * &f[k];
                g[k] -= delta;
            }
        }
        cols.push(e);
        cols.push(f);
    }
    let basis = RatMatrix::from_fn(n, n, |i, j| cols[j][i].clone());
    Ok(HeisenbergQuotient { level: n / 2, basis, central: t.to_vec(), pfaffian: pf })
}

/// `P_n` divides `P_m` for the nested subalgebras spanned by the first
/// `2n` and `2m` basis vectors.
pub fn nested_divisibility(alg: &TwoStepAlgebra, small: usize, large: usize) -> Result<bool> {
    let pn = pfaffian_polynomial(&alg.truncate_v(small)?);
    let pm = pfaffian_polynomial(&alg.truncate_v(large)?);
    if pn.is_zero() {
        return Ok(pm.is_zero());
    }
    Ok(pm.poly.div_exact(&pn.poly).is_some())
}

/// Degree of `P` and whether it is a scalar multiple of `q^e` for the given
/// polynomial `q`; used to recognize powers of `|t|²`.
pub fn is_scalar_times_power(p: &Poly, q: &Poly) -> Option<(BigRational, u32)> {
    let dp = p.degree()?;
    let dq = q.degree()?;
    if dq == 0 || dp % dq != 0 {
        return None;
    }
    let e = dp / dq;
    let qe = q.pow(e);
    let (lead_e, lead_c) = qe.terms.iter().next_back()?;
    let c = p.terms.get(lead_e)? / lead_c;
    (qe.scale(&c) == *p && !c.is_zero()).then_some((c, e))
}

pub fn sign_of(r: &BigRational) -> i32 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heisenberg_pfaffian_is_power_of_t() {
        for n in 1..=4 {
            let h = build_heisenberg(n, DivisionAlgebra::Complex).unwrap();
            assert_eq!((h.dim_v, h.dim_z), (2 * n, 1));
            let p = pfaffian_polynomial(&h);
            assert_eq!(p.poly, Poly::monomial(vec![n as u32], BigRational::one()));
        }
    }

    #[test]
    fn small_forms() {
        let h = build_heisenberg(1, DivisionAlgebra::Complex).unwrap();
        let b = b_form(&h, &[rat(3, 2)]).unwrap();
        assert_eq!(b, RatMatrix::from_fn(2, 2, |i, j| rat([[0, 3], [-3, 0]][i][j], 2)));
        assert!(b_form(&h, &[rat(0, 1)]).unwrap().max_abs().is_zero());
        assert!(b_form(&h, &[]).is_err());
        let m = RatMatrix::from_i64(2, 2, &[0, 5, -5, 0]);
        assert_eq!(pfaffian(&m).unwrap(), rat(5, 1));
        assert!(pfaffian(&RatMatrix::from_i64(2, 2, &[0, 1, 1, 0])).is_err());
    }

    #[test]
    fn free_algebras() {
        let f2 = build_free_two_step(2).unwrap();
        let h1 = build_heisenberg(1, DivisionAlgebra::Complex).unwrap();
        assert_eq!(f2.brackets, h1.brackets);
        let f3 = build_free_two_step(3).unwrap();
        assert_eq!(f3.dim_z, 3);
        assert!(!is_generically_square_integrable(&f3));
        assert!(f3.center_is_derived());
    }

    #[test]
    fn quaternionic_pfaffian() {
        let q = build_heisenberg(1, DivisionAlgebra::Quaternion).unwrap();
        assert_eq!((q.dim_v, q.dim_z), (4, 3));
        let p = pfaffian_polynomial(&q);
        let norm = Poly::var(3, 0).pow(2).add(&Poly::var(3, 1).pow(2)).add(&Poly::var(3, 2).pow(2));
        let (c, e) = is_scalar_times_power(&p.poly, &norm).expect("power of |t|^2");
        assert_eq!(e, 1);
        assert_eq!(c.abs(), rat(1, 1));
    }

    #[test]
    fn un_type_dimensions() {
        for n in 1..=3 {
            let u = build_un_type(n).unwrap();
            assert_eq!((u.dim_v, u.dim_z), (2 * n, n * n));
            assert!(u.center_is_derived());
            assert!(is_generically_square_integrable(&u));
        }
    }

    #[test]
    fn text_round_trip_and_ids() {
        let a = algebra_from_id("heis:2+quat:1").unwrap();
        assert_eq!((a.dim_v, a.dim_z), (8, 4));
        let back = parse_algebra_text("copy", &a.to_text()).unwrap();
        assert_eq!(back.brackets, a.brackets);
        assert!(parse_algebra_text("x", "2 1\n1 2 1 1/0\n").is_err());
        assert!(algebra_from_id("oct:1").is_err());
        assert!(build_two_step("bad", 2, 1, &[(0, 1, 0, rat(1, 1)), (1, 0, 0, rat(1, 1))]).is_err());
    }

    #[test]
    fn quotient_basis_is_symplectic() {
        let q = build_heisenberg(1, DivisionAlgebra::Quaternion).unwrap();
        let t = vec![rat(1, 3), rat(-2, 5), rat(1, 1)];
        let hq = quotient_to_heisenberg(&q, &t).unwrap();
        assert_eq!(hq.level, 2);
        let b = b_form(&q, &t).unwrap();
        let nb = hq.basis.transpose().mul(&b).unwrap().mul(&hq.basis).unwrap();
        assert_eq!(pfaffian(&nb).unwrap(), rat(1, 1));
        assert_eq!(hq.basis.det().unwrap() * &hq.pfaffian, rat(1, 1));
        assert!(quotient_to_heisenberg(&q, &[rat(0, 1), rat(0, 1), rat(0, 1)]).is_err());
    }
}
