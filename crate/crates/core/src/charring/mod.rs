//! Character-ring computations for compact linear groups: weight systems,
//! tensor and symmetric-power decompositions, multiplicity-freeness of the
//! action on polynomials, and highest-weight sets across ranks.

pub mod tables;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootsys::{
    build_root_system, weight_system_fundamental, weyl_dimension, DominantWeight, Family, RootSystemData,
};

pub use tables::{lookup_row, table_rows, TableRow};

/// One factor of a product group `K = K_1 × … × K_r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Factor {
    /// `SU(n)`, `n >= 2`; weights in fundamental coordinates of `A_{n-1}`.
    Special(usize),
    /// `U(n)`, `n >= 1`; weights in `Z^n` (ε-coordinates of `GL(n)`).
    Unitary(usize),
    /// `SO(n)`, `n >= 2`; `SO(2)` is a circle with weights `±1` on `C^2`.
    Orthogonal(usize),
    /// `Sp(m)`, `m >= 1`, acting on `C^{2m}`.
    Symplectic(usize),
    /// `U(1)` acting by scalars.
    Torus,
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Special(n) => write!(f, "SU({n})"),
            Factor::Unitary(n) => write!(f, "U({n})"),
            Factor::Orthogonal(n) => write!(f, "SO({n})"),
            Factor::Symplectic(m) => write!(f, "Sp({m})"),
            Factor::Torus => write!(f, "U1"),
        }
    }
}

impl Factor {
    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            Factor::Special(n) => n >= 2,
            Factor::Unitary(n) => n >= 1,
            Factor::Orthogonal(n) => n >= 2,
            Factor::Symplectic(m) => m >= 1,
            Factor::Torus => true,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Invalid(format!("factor {self} is not supported")))
        }
    }

    /// Root system of the semisimple part, if any.
    pub fn root_system(&self) -> Result<Option<RootSystemData>> {
        self.validate()?;
        Ok(match *self {
            Factor::Special(n) => Some(build_root_system(Family::A, n - 1)?),
            Factor::Unitary(n) if n >= 2 => Some(build_root_system(Family::A, n - 1)?),
            Factor::Orthogonal(n) if n >= 3 => {
                if n % 2 == 1 {
                    Some(build_root_system(Family::B, n / 2)?)
                } else {
                    Some(build_root_system(Family::D, n / 2)?)
                }
            }
            Factor::Symplectic(m) => Some(build_root_system(Family::C, m)?),
            _ => None,
        })
    }

    /// Dimension of the defining representation.
    pub fn std_dim(&self) -> usize {
        match *self {
            Factor::Special(n) | Factor::Unitary(n) | Factor::Orthogonal(n) => n,
            Factor::Symplectic(m) => 2 * m,
            Factor::Torus => 1,
        }
    }

    pub fn coord_len(&self) -> usize {
        match *self {
            Factor::Special(n) => n - 1,
            Factor::Unitary(n) => n,
            Factor::Orthogonal(n) if n >= 3 => n / 2,
            Factor::Symplectic(m) => m,
            Factor::Orthogonal(_) | Factor::Torus => 1,
        }
    }

    fn is_abelian(&self) -> bool {
        matches!(self, Factor::Torus | Factor::Orthogonal(2))
    }
}

/// A factor together with its cached root system.
#[derive(Debug, Clone)]
struct FactorData {
    kind: Factor,
    rs: Option<RootSystemData>,
}

impl FactorData {
    fn new(kind: Factor) -> Result<Self> {
        Ok(FactorData { kind, rs: kind.root_system()? })
    }

    fn std_weights(&self) -> Result<Vec<Vec<i64>>> {
        Ok(match self.kind {
            Factor::Torus => vec![vec![1]],
            Factor::Orthogonal(2) => vec![vec![1], vec![-1]],
            Factor::Unitary(n) => (0..n)
                .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
                .collect(),
            _ => {
                let rs = self.rs.as_ref().unwrap();
                // highest weight ε_1 (this is 2ξ_1 for SO(3) and ξ_1 + ξ_2 for SO(4))
                let mut e1 = vec![num_rational::BigRational::from_integer(0.into()); rs.ambient_dim()];
                e1[0] = num_rational::BigRational::from_integer(1.into());
                let c: Vec<i64> = rs
                    .fundamental_coords(&e1)
                    .iter()
                    .map(|x| num_traits::ToPrimitive::to_i64(&x.to_integer()).unwrap())
                    .collect();
                let mut out = Vec::new();
                for (w, m) in weight_system_fundamental(rs, &DominantWeight::new(rs.family, c)?)? {
                    for _ in 0..m {
                        out.push(w.clone());
                    }
                }
                out
            }
        })
    }

    fn unitary_diffs(a: &[i64]) -> Vec<i64> {
        a.windows(2).map(|w| w[0] - w[1]).collect()
    }

    fn is_dominant(&self, w: &[i64]) -> bool {
        match self.kind {
            Factor::Torus | Factor::Orthogonal(2) => true,
            Factor::Unitary(_) => w.windows(2).all(|p| p[0] >= p[1]),
            _ => w.iter().all(|&x| x >= 0),
        }
    }

    fn irrep_weights(&self, hw: &[i64]) -> Result<Vec<(Vec<i64>, u64)>> {
        if !self.is_dominant(hw) {
            return Err(Error::NotDominant(hw.to_vec()));
        }
        match self.kind {
            Factor::Torus | Factor::Orthogonal(2) => Ok(vec![(hw.to_vec(), 1)]),
            Factor::Unitary(1) => Ok(vec![(hw.to_vec(), 1)]),
            Factor::Unitary(n) => {
                let rs = self.rs.as_ref().unwrap();
                let total: i64 = hw.iter().sum();
                let lam = DominantWeight::new(Family::A, Self::unitary_diffs(hw))?;
                weight_system_fundamental(rs, &lam)?
                    .into_iter()
                    .map(|(f, m)| {
                        // ν_i - ν_{i+1} = f_i and sum ν = sum a
                        let weighted: i64 = f.iter().enumerate().map(|(j, x)| (j as i64 + 1) * x).sum();
                        let last = (total - weighted) / n as i64;
                        let mut nu = vec![0i64; n];
                        nu[n - 1] = last;
                        for i in (0..n - 1).rev() {
                            nu[i] = nu[i + 1] + f[i];
                        }
                        Ok((nu, m))
                    })
                    .collect()
            }
            _ => {
                let rs = self.rs.as_ref().unwrap();
                weight_system_fundamental(rs, &DominantWeight::new(rs.family, hw.to_vec())?)
            }
        }
    }

    fn height(&self, w: &[i64]) -> i64 {
        match self.kind {
            Factor::Torus | Factor::Orthogonal(2) => 0,
            Factor::Unitary(n) => w.iter().enumerate().map(|(i, x)| (n as i64 - 1 - 2 * i as i64) * x).sum(),
            _ => {
                let h = self.rs.as_ref().unwrap().fundamental_heights();
                w.iter().zip(h).map(|(x, y)| x * y).sum()
            }
        }
    }

    fn dual(&self, hw: &[i64]) -> Vec<i64> {
        match self.kind {
            Factor::Torus | Factor::Orthogonal(2) => hw.iter().map(|x| -x).collect(),
            Factor::Unitary(_) => hw.iter().rev().map(|x| -x).collect(),
            _ => {
                let rs = self.rs.as_ref().unwrap();
                let neg: Vec<i64> = hw.iter().map(|x| -x).collect();
                rs.dominant_fundamental(&neg)
            }
        }
    }

    fn dim(&self, hw: &[i64]) -> Result<u128> {
        match self.kind {
            Factor::Torus | Factor::Orthogonal(2) | Factor::Unitary(1) => Ok(1),
            Factor::Unitary(_) => {
                weyl_dimension(self.rs.as_ref().unwrap(), &DominantWeight::new(Family::A, Self::unitary_diffs(hw))?)
            }
            _ => {
                let rs = self.rs.as_ref().unwrap();
                weyl_dimension(rs, &DominantWeight::new(rs.family, hw.to_vec())?)
            }
        }
    }

    /// Rank-independent label: doubled ε-coordinates (for `SU(n)` normalized
    /// so the last coordinate vanishes), or the character exponent.
    fn stable_label(&self, hw: &[i64]) -> Result<Vec<i64>> {
        use num_traits::ToPrimitive;
        Ok(match self.kind {
            Factor::Torus | Factor::Orthogonal(2) => hw.to_vec(),
            Factor::Unitary(_) => hw.iter().map(|x| 2 * x).collect(),
            Factor::Special(_) => {
                let mut out = vec![0i64; hw.len() + 1];
                for i in (0..hw.len()).rev() {
                    out[i] = out[i + 1] + hw[i];
                }
                out.iter().map(|x| 2 * x).collect()
            }
            _ => {
                let rs = self.rs.as_ref().unwrap();
                rs.to_epsilon(hw)?
                    .iter()
                    .map(|x| (x * num_rational::BigRational::from_integer(2.into())).to_integer().to_i64().unwrap())
                    .collect()
            }
        })
    }
}

/// How the group acts on the base space `𝔳 = C^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Construction {
    /// Outer tensor product of the defining representations (a single
    /// factor gives its standard representation).
    Standard,
    /// `S^2` of the first non-abelian factor.
    Sym2,
    /// `Λ^2` of the first non-abelian factor.
    Alt2,
    /// Two copies of the standard representation, acted on diagonally.
    DirectSum2,
    /// The trivial group on `C`.
    Trivial,
}

/// Which characters count as distinct in the multiplicity-free test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum KeyMode {
    /// Every factor label as is.
    Full,
    /// The first two `U(·)` factors are restricted to `S(U(l) × U(m))`: labels
    /// differing by `(c, …, c; c, …, c)` are identified.
    DeterminantOne,
}

/// A compact group `K` with its linear action on `C^n`.
#[derive(Debug, Clone)]
pub struct GroupDatum {
    pub row: String,
    pub factors: Vec<Factor>,
    pub construction: Construction,
    pub key_mode: KeyMode,
    data: Vec<FactorData>,
    offsets: Vec<usize>,
}

/// One isotypic component: a highest weight per factor and its multiplicity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DecompEntry {
    pub highest: Vec<Vec<i64>>,
    pub mult: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Decomposition {
    pub entries: Vec<DecompEntry>,
}

impl Decomposition {
    pub fn multiplicity(&self, label: &[Vec<i64>]) -> u64 {
        self.entries.iter().filter(|e| e.highest == label).map(|e| e.mult).sum()
    }

    /// Sum of the torus exponents of an entry (zero without torus factors).
    pub fn torus_exponent(group: &GroupDatum, entry: &DecompEntry) -> i64 {
        group
            .factors
            .iter()
            .zip(&entry.highest)
            .filter(|(f, _)| matches!(f, Factor::Torus))
            .map(|(_, w)| w[0])
            .sum()
    }
}

type Character = HashMap<Vec<i64>, i64>;

impl GroupDatum {
    pub fn new(row: &str, factors: Vec<Factor>, construction: Construction, key_mode: KeyMode) -> Result<Self> {
        let data = factors.iter().map(|f| FactorData::new(*f)).collect::<Result<Vec<_>>>()?;
        let mut offsets = vec![0];
        for f in &factors {
            offsets.push(offsets.last().unwrap() + f.coord_len());
        }
        if construction == Construction::Trivial && factors.iter().any(|f| !f.is_abelian()) {
            return Err(Error::UnsupportedConstruction("trivial action needs an abelian group".into()));
        }
        if matches!(construction, Construction::Sym2 | Construction::Alt2)
            && factors.iter().filter(|f| !f.is_abelian()).count() != 1
        {
            return Err(Error::UnsupportedConstruction(format!(
                "{construction:?} needs exactly one non-abelian factor"
            )));
        }
        Ok(GroupDatum { row: row.to_string(), factors, construction, key_mode, data, offsets })
    }

    /// Single-factor group acting by its standard representation.
    pub fn simple(factor: Factor) -> Result<Self> {
        Self::new(&factor.to_string(), vec![factor], Construction::Standard, KeyMode::Full)
    }

    pub fn name(&self) -> String {
        let f: Vec<String> = self.factors.iter().map(|f| f.to_string()).collect();
        format!("{} on {:?}", f.join("×"), self.construction)
    }

    fn split<'a>(&self, w: &'a [i64]) -> Vec<&'a [i64]> {
        (0..self.factors.len()).map(|i| &w[self.offsets[i]..self.offsets[i + 1]]).collect()
    }

    /// Joint weights of the base space `𝔳`, with repetition.
    pub fn space_weights(&self) -> Result<Vec<Vec<i64>>> {
        let per_factor: Vec<Vec<Vec<i64>>> = self.data.iter().map(|d| d.std_weights()).collect::<Result<_>>()?;
        let main = self.factors.iter().position(|f| !f.is_abelian());
        let product = |lists: &[Vec<Vec<i64>>]| -> Vec<Vec<i64>> {
            let mut acc: Vec<Vec<i64>> = vec![vec![]];
            for l in lists {
                acc = acc
                    .iter()
                    .flat_map(|a| l.iter().map(move |w| a.iter().chain(w).copied().collect()))
                    .collect();
            }
            acc
        };
        Ok(match self.construction {
            Construction::Trivial => vec![vec![0; *self.offsets.last().unwrap()]],
            Construction::Standard => product(&per_factor),
            Construction::DirectSum2 => {
                let once = product(&per_factor);
                once.iter().chain(&once).cloned().collect()
            }
            Construction::Sym2 | Construction::Alt2 => {
                let m = main.expect("checked at construction");
                let base = &per_factor[m];
                let mut pairs = Vec::new();
                for i in 0..base.len() {
                    let start = if self.construction == Construction::Sym2 { i } else { i + 1 };
                    for j in start..base.len() {
                        pairs.push(base[i].iter().zip(&base[j]).map(|(a, b)| a + b).collect());
                    }
                }
                let mut lists = per_factor.clone();
                lists[m] = pairs;
                product(&lists)
            }
        })
    }

    pub fn space_dim(&self) -> Result<usize> {
        Ok(self.space_weights()?.len())
    }

    fn height(&self, w: &[i64]) -> i64 {
        self.split(w).iter().zip(&self.data).map(|(p, d)| d.height(p)).sum()
    }

    fn irrep_character(&self, hw: &[i64]) -> Result<Vec<(Vec<i64>, u64)>> {
        let mut acc: Vec<(Vec<i64>, u64)> = vec![(vec![], 1)];
        for (part, d) in self.split(hw).iter().zip(&self.data) {
            let ws = d.irrep_weights(part)?;
            acc = acc
                .iter()
                .flat_map(|(a, ma)| ws.iter().map(move |(w, mw)| (a.iter().chain(w).copied().collect(), ma * mw)))
                .collect();
        }
        Ok(acc)
    }

    pub fn irrep_dim(&self, label: &[Vec<i64>]) -> Result<u128> {
        let mut d = 1;
        for (part, f) in label.iter().zip(&self.data) {
            d *= f.dim(part)?;
        }
        Ok(d)
    }

    pub fn dual_label(&self, label: &[Vec<i64>]) -> Vec<Vec<i64>> {
        label.iter().zip(&self.data).map(|(p, d)| d.dual(p)).collect()
    }

    /// Peels highest weights off a character.
    fn decompose_character(&self, mut chi: Character) -> Result<Decomposition> {
        chi.retain(|_, m| *m != 0);
        let mut entries = Vec::new();
        while !chi.is_empty() {
            let top = chi
                .iter()
                .max_by(|a, b| self.height(a.0).cmp(&self.height(b.0)).then_with(|| a.0.cmp(b.0)))
                .map(|(k, m)| (k.clone(), *m))
                .unwrap();
            let (hw, mult) = top;
            if mult < 0 {
                return Err(Error::Invalid(format!("virtual character at {hw:?}")));
            }
            for (w, m) in self.irrep_character(&hw)? {
                let e = chi.entry(w).or_insert(0);
                *e -= mult * m as i64;
            }
            chi.retain(|_, m| *m != 0);
            entries.push(DecompEntry { highest: self.split(&hw).iter().map(|p| p.to_vec()).collect(), mult: mult as u64 });
        }
        entries.sort();
        Ok(Decomposition { entries })
    }

    /// Key under which two labels count as the same irreducible.
    pub fn distinctness_key(&self, label: &[Vec<i64>]) -> Vec<Vec<i64>> {
        let mut key = label.to_vec();
        if self.key_mode == KeyMode::DeterminantOne {
            let unitary: Vec<usize> =
                (0..self.factors.len()).filter(|&i| matches!(self.factors[i], Factor::Unitary(_))).collect();
            if unitary.len() >= 2 {
                let shift = *key[unitary[1]].last().unwrap();
                for &i in &unitary[..2] {
                    for x in key[i].iter_mut() {
                        *x -= shift;
                    }
                }
            }
        }
        key
    }
}

/// Weight system of the irreducible module `V(λ)` in fundamental coordinates.
pub fn weight_system(rs: &RootSystemData, lambda: &DominantWeight) -> Result<Vec<(Vec<i64>, u64)>> {
    let mut ws = weight_system_fundamental(rs, lambda)?;
    ws.sort();
    Ok(ws)
}

/// `V(λ) ⊗ V(μ)` by the Brauer–Klimyk formula over the weights of `V(μ)`.
pub fn tensor_decompose(rs: &RootSystemData, lambda: &DominantWeight, mu: &DominantWeight) -> Result<Decomposition> {
    for w in [lambda, mu] {
        if w.coeffs.len() != rs.rank {
            return Err(Error::RankMismatch { expected: rs.rank, actual: w.coeffs.len() });
        }
        rs.check_weight(w)?;
    }
    let cartan = rs.cartan();
    let mut acc: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
    for (nu, m) in weight_system_fundamental(rs, mu)? {
        // dot action: reflect λ + ν + ρ into the open dominant chamber
        let mut v: Vec<i64> = lambda.coeffs.iter().zip(&nu).map(|(a, b)| a + b + 1).collect();
        let mut sign = 1i64;
        while let Some(i) = v.iter().position(|&x| x < 0) {
            let vi = v[i];
            for (x, a) in v.iter_mut().zip(&cartan[i]) {
                *x -= vi * a;
            }
            sign = -sign;
        }
        if v.contains(&0) {
            continue;
        }
        let hw: Vec<i64> = v.iter().map(|x| x - 1).collect();
        *acc.entry(hw).or_insert(0) += sign * m as i64;
    }
    let mut entries = Vec::new();
    for (hw, m) in acc {
        if m < 0 {
            return Err(Error::Invalid(format!("negative multiplicity at {hw:?}")));
        }
        if m > 0 {
            entries.push(DecompEntry { highest: vec![hw], mult: m as u64 });
        }
    }
    Ok(Decomposition { entries })
}

/// Character of degree-`d` polynomials on `𝔳`, i.e. of `S^d(𝔳*)`.
fn polynomial_character(k: &GroupDatum, d: usize) -> Result<Character> {
    let weights: Vec<Vec<i64>> = k.space_weights()?.iter().map(|w| w.iter().map(|x| -x).collect()).collect();
    let len = *k.offsets.last().unwrap();
    let mut chi: Character = HashMap::new();
    fn rec(weights: &[Vec<i64>], start: usize, left: usize, cur: &mut Vec<i64>, chi: &mut Character) {
        if left == 0 {
            *chi.entry(cur.clone()).or_insert(0) += 1;
            return;
        }
        for i in start..weights.len() {
            for (c, w) in cur.iter_mut().zip(&weights[i]) {
                *c += w;
            }
            rec(weights, i, left - 1, cur, chi);
            for (c, w) in cur.iter_mut().zip(&weights[i]) {
                *c -= w;
            }
        }
    }
    rec(&weights, 0, d, &mut vec![0; len], &mut chi);
    Ok(chi)
}

/// Decomposition of the degree-`d` polynomials on `𝔳` under `K`.
pub fn sym_power_decompose(k: &GroupDatum, d: usize) -> Result<Decomposition> {
    k.decompose_character(polynomial_character(k, d)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub degree: usize,
    /// Degree of the earlier occurrence, equal to `degree` for a repeat
    /// inside one degree.
    pub first_degree: usize,
    pub highest: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicityFreeReport {
    pub multiplicity_free: bool,
    pub degree_bound: usize,
    pub violation: Option<Violation>,
}

/// Tests the joint decomposition of degrees `0..=degree_bound`.
pub fn is_multiplicity_free_polynomial_action(k: &GroupDatum, degree_bound: usize) -> Result<MultiplicityFreeReport> {
    let mut seen: HashMap<Vec<Vec<i64>>, usize> = HashMap::new();
    for d in 0..=degree_bound {
        for e in sym_power_decompose(k, d)?.entries {
            let key = k.distinctness_key(&e.highest);
            let first = if e.mult > 1 { Some(d) } else { seen.get(&key).copied() };
            if let Some(first_degree) = first {
                return Ok(MultiplicityFreeReport {
                    multiplicity_free: false,
                    degree_bound,
                    violation: Some(Violation { degree: d, first_degree, highest: e.highest }),
                });
            }
            seen.insert(key, d);
        }
    }
    Ok(MultiplicityFreeReport { multiplicity_free: true, degree_bound, violation: None })
}

/// Multiplicity of `κ*` in `ρ`, i.e. `dim (κ ⊗ ρ)^K`.
pub fn invariant_dimension(k: &GroupDatum, kappa: &[Vec<i64>], rho: &Decomposition) -> u64 {
    rho.multiplicity(&k.dual_label(kappa))
}

/// `X_{n,d}`: highest weights `κ` with `κ*` occurring in degree-`d`
/// polynomials, i.e. the highest weights of `S^d(𝔳)`.
pub fn highest_weight_set(k: &GroupDatum, d: usize) -> Result<BTreeSet<Vec<Vec<i64>>>> {
    Ok(sym_power_decompose(k, d)?.entries.iter().map(|e| k.dual_label(&e.highest)).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityReport {
    pub stable: bool,
    pub degree: usize,
    /// Stabilized labels of `X_{n,d}` absent from `X_{m,d}`.
    pub missing: Vec<Vec<Vec<i64>>>,
}

fn row_family(row: &str) -> &str {
    row.split('@').next().unwrap_or(row)
}

/// Checks `X_{n,d} ⊂ X_{m,d}` after stabilizing labels from `K_n` to `K_m`.
pub fn check_stability(kn: &GroupDatum, km: &GroupDatum, d: usize) -> Result<StabilityReport> {
    if row_family(&kn.row) != row_family(&km.row) || kn.factors.len() != km.factors.len() {
        return Err(Error::RowMismatch(kn.row.clone(), km.row.clone()));
    }
    let stable = |k: &GroupDatum, label: &[Vec<i64>], pad: Option<&GroupDatum>| -> Result<Vec<Vec<i64>>> {
        let mut out = Vec::new();
        for (i, (part, fd)) in label.iter().zip(&k.data).enumerate() {
            let mut s = fd.stable_label(part)?;
            if let Some(target) = pad {
                let len = target.data[i].stable_label(&vec![0; target.factors[i].coord_len()])?.len();
                if len < s.len() {
                    return Err(Error::RankDecrease { source_rank: s.len(), target: len });
                }
                s.resize(len, 0);
            }
            out.push(s);
        }
        Ok(out)
    };
    let big: BTreeSet<Vec<Vec<i64>>> =
        highest_weight_set(km, d)?.iter().map(|l| stable(km, l, None)).collect::<Result<_>>()?;
    let mut missing = Vec::new();
    for l in highest_weight_set(kn, d)? {
        let s = stable(kn, &l, Some(km))?;
        if !big.contains(&s) {
            missing.push(l);
        }
    }
    Ok(StabilityReport { stable: missing.is_empty(), degree: d, missing })
}
