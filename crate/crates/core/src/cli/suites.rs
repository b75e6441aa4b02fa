//! Suite registry. Each suite turns a [`Config`] into report cases; errors
//! returned from a runner are configuration errors.

use std::path::Path;
use std::time::Instant;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::report::{Case, VerificationReport, REPORT_VERSION};
use super::Config;
use crate::charring::{self, Construction, Factor, GroupDatum, KeyMode};
use crate::dirlim::{self, Backend, LadderedFunction, Scalar, SphereConstants};
use crate::error::{Error, Result};
use crate::fock::{self, HeisenbergPoint};
use crate::nilpf::{self, TwoStepAlgebra};
use crate::numerics::exact::{rat, rat_to_f64, RatMatrix};
use crate::numerics::{factorial, gamma_moment, Poly, Tolerances};
use crate::rootsys::{self, DominantWeight, Family};
use crate::symmpair;

pub struct Suite {
    pub name: &'static str,
    pub anchor: &'static str,
    runner: fn(&Config, &Tolerances) -> Result<Vec<Case>>,
}

pub const SUITES: &[Suite] = &[
    Suite { name: "gamma", anchor: "gamma identity n!/2^n", runner: gamma },
    Suite { name: "regular", anchor: "regular-function norms (k+n)!/2^(k+n)", runner: regular },
    Suite { name: "orthogonality", anchor: "Fock orthogonality relations, formal degree |t|^n", runner: orthogonality },
    Suite { name: "representation", anchor: "Fock group law and central character", runner: representation },
    Suite { name: "pfaffian", anchor: "Pfaffian of b_t, square integrability", runner: pfaffian },
    Suite { name: "weyl", anchor: "Weyl dimension formula vs Freudenthal multiplicities", runner: weyl },
    Suite { name: "carcano", anchor: "multiplicity-free polynomial actions (kac table)", runner: carcano },
    Suite { name: "stability", anchor: "stability of X_{n,d} (jaw table)", runner: stability },
    Suite { name: "ladder", anchor: "degree ladders: squares, cocycle, limit inner products", runner: ladder },
    Suite { name: "zonal", anchor: "zonal projection constants c_{m,n,d}", runner: zonal },
];

pub fn suite_names() -> Vec<&'static str> {
    SUITES.iter().map(|s| s.name).collect()
}

/// Seed of case `index` derived from the master seed (SplitMix64 step).
pub fn case_seed(master: u64, index: u64) -> u64 {
    let mut z = master.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Runs `config.suite` (or every suite for `all`), one report per suite.
pub fn run_suite(config: &Config) -> Result<Vec<VerificationReport>> {
    let tol = Tolerances::default();
    let selected: Vec<&Suite> = if config.suite == "all" {
        SUITES.iter().collect()
    } else {
        vec![SUITES
            .iter()
            .find(|s| s.name == config.suite)
            .ok_or_else(|| Error::Invalid(format!("unknown suite `{}`; known: {}", config.suite, suite_names().join(", "))))?]
    };
    let mut out = Vec::new();
    for suite in selected {
        let start = Instant::now();
        let mut cases = (suite.runner)(config, &tol)?;
        let elapsed = start.elapsed().as_millis() as u64;
        for c in &mut cases {
            c.anchor = suite.anchor.to_string();
        }
        if config.timings {
            // per-suite wall time, attributed evenly
            let each = elapsed / cases.len().max(1) as u64;
            cases.iter_mut().for_each(|c| c.runtime_ms = Some(each));
        }
        let mut cfg = config.clone();
        cfg.suite = suite.name.to_string();
        out.push(VerificationReport {
            version: REPORT_VERSION,
            suite: suite.name.to_string(),
            anchor: suite.anchor.to_string(),
            cases,
            config: cfg,
            seed: config.seed,
        });
    }
    Ok(out)
}

fn gamma(c: &Config, tol: &Tolerances) -> Result<Vec<Case>> {
    let max_k = c.max_k.unwrap_or(12);
    Ok((0..=max_k)
        .map(|k| {
            let exact = rat_to_f64(&BigRational::new(factorial(k as u64), num_bigint::BigInt::one() << k));
            let q = 2.0 * gamma_moment(k).quadrature;
            Case::close(format!("k={k}"), exact, q, tol.exact_identity)
        })
        .collect())
}

fn regular(c: &Config, tol: &Tolerances) -> Result<Vec<Case>> {
    let max = c.max_k.unwrap_or(12);
    let mut cases = Vec::new();
    for n in 0..=max {
        for k in 0..=(max - n) {
            let exact = rat_to_f64(&fock::regular_norm_sq(n, k));
            let q = fock::regular_norm_sq_quadrature(n, k);
            cases.push(Case::close(format!("n={n},k={k}"), exact, q, tol.exact_identity));
        }
    }
    for (n, k, want) in [(1, 0, rat(1, 2)), (1, 3, rat(3, 2))] {
        let got = fock::regular_norm_sq(n, k);
        cases.push(Case::check(format!("value n={n},k={k}"), got == want, &want, &got, None));
    }
    Ok(cases)
}

fn t_list(c: &Config, default: &[f64]) -> Result<Vec<f64>> {
    let t = c.t.clone().unwrap_or_else(|| default.to_vec());
    if t.iter().any(|&x| x == 0.0 || !x.is_finite()) {
        return Err(Error::Invalid("central parameters must be finite and nonzero".into()));
    }
    Ok(t)
}

fn orthogonality(c: &Config, tol: &Tolerances) -> Result<Vec<Case>> {
    let cutoff = c.cutoff.unwrap_or(16);
    let ts = t_list(c, &[0.5, 1.0, 2.0])?;
    let mut cases = Vec::new();
    let mut products = Vec::new();
    for &t in &ts {
        match fock::coefficient_gram(1, t, cutoff, tol.orthogonality) {
            Ok(g) => {
                let len = g.pairs.len();
                let mut off: f64 = 0.0;
                for i in 0..len {
                    for j in 0..len {
                        if i == j {
                            products.push(g.gram[(i, i)].re * t.abs());
                        } else {
                            off = off.max(g.gram[(i, j)].norm());
                        }
                    }
                }
                cases.push(Case::below(format!("t={t} off-diagonal"), off, tol.orthogonality));
            }
            Err(e) => cases.push(Case::error(format!("t={t} gram"), e)),
        }
    }
    if let Some(&first) = products.first() {
        let spread = products.iter().map(|p| (p - first).abs() / first.abs()).fold(0.0, f64::max);
        cases.push(Case::below("diagonal x |t| constant", spread, tol.formal_degree));
        cases.push(Case::info("diagonal x |t|", format!("{first:.12}")));
    }
    Ok(cases)
}

fn random_point(rng: &mut ChaCha8Rng, radius: f64) -> HeisenbergPoint {
    let r = radius * rng.gen::<f64>().sqrt();
    let th = rng.gen::<f64>() * std::f64::consts::TAU;
    HeisenbergPoint::new(rng.gen_range(-1.0..1.0), vec![Complex64::from_polar(r, th)])
}

fn representation(c: &Config, tol: &Tolerances) -> Result<Vec<Case>> {
    let cutoff = c.cutoff.unwrap_or(20);
    let degree = c.degree.unwrap_or(10);
    if degree > cutoff {
        return Err(Error::DegreeBeyondCutoff { degree, cutoff });
    }
    let ts = t_list(c, &[0.5, 1.0, 2.0])?;
    let mut cases = Vec::new();
    for (i, &t) in ts.iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(case_seed(c.seed, i as u64));
        let mut worst: f64 = 0.0;
        let mut worst_full: f64 = 0.0;
        let mut failed = None;
        for _ in 0..4 {
            let (g, h) = (random_point(&mut rng, 0.5), random_point(&mut rng, 0.5));
            match fock::representation_defect(1, t, &g, &h, cutoff, degree) {
                Ok(d) => {
                    worst = worst.max(d.protected);
                    worst_full = worst_full.max(d.full_output);
                }
                Err(e) => failed = Some(e),
            }
        }
        match failed {
            Some(e) => cases.push(Case::error(format!("t={t} group law"), e)),
            None => {
                cases.push(Case::below(format!("t={t} group law, degree <= {degree}"), worst, tol.truncation));
                cases.push(Case::info(format!("t={t} group law, all truncated outputs"), format!("{worst_full:.3e}")));
            }
        }
        let z = rng.gen_range(-3.0..3.0);
        match fock::fock_operator(1, t, &HeisenbergPoint::central(1, z), cutoff) {
            Ok(op) => {
                let phase = Complex64::from_polar(1.0, t * z);
                let dim = op.basis.len();
                let exact = (0..dim).all(|r| {
                    (0..dim).all(|s| op.matrix[(r, s)] == if r == s { phase } else { Complex64::zero() })
                });
                cases.push(Case::check(format!("t={t} central z={z:.6}"), exact, "e^{itz} I exactly", if exact { "e^{itz} I" } else { "differs" }, Some(0.0)));
            }
            Err(e) => cases.push(Case::error(format!("t={t} central"), e)),
        }
    }
    Ok(cases)
}

fn load_algebra(spec: &str) -> Result<TwoStepAlgebra> {
    let path = Path::new(spec);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{spec}: {e}")))?;
        nilpf::parse_algebra_text(spec, &text)
    } else {
        nilpf::algebra_from_id(spec)
    }
}

/// Square integrability predicted from an algebra id, if it is one.
fn expected_square_integrable(spec: &str) -> Option<bool> {
    spec.split('+')
        .map(|p| {
            let (kind, n) = p.trim().split_once(':')?;
            let n: usize = n.parse().ok()?;
            Some(match kind {
                "free" => n % 2 == 0,
                _ => true,
            })
        })
        .try_fold(true, |acc, x| x.map(|b| acc && b))
}

fn pfaffian(c: &Config, _tol: &Tolerances) -> Result<Vec<Case>> {
    let spec = c.algebra.clone().unwrap_or_else(|| "heis:3".into());
    let alg = load_algebra(&spec)?;
    let p = nilpf::pfaffian_polynomial(&alg);
    let mut cases = vec![Case::info("P(t)", &p)];
    if let Some(n) = spec.strip_prefix("heis:").and_then(|n| n.parse::<u32>().ok()) {
        let want = Poly::monomial(vec![n], BigRational::one());
        cases.push(Case::check("P(t) = t^n", p.poly == want, &want, &p, None));
    }
    if !p.is_zero() {
        let ok = p.poly.is_homogeneous() && p.poly.degree() == Some((alg.dim_v / 2) as u32);
        cases.push(Case::check("P homogeneous of degree dim v / 2", ok, alg.dim_v / 2, p.poly.degree().unwrap_or(0), None));
    }
    let origin = p.eval_rat(&vec![BigRational::zero(); alg.dim_z]);
    if alg.dim_v > 0 {
        cases.push(Case::check("P(0) = 0", origin.is_zero(), 0, &origin, None));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(case_seed(c.seed, 0));
    let mut mismatches = 0;
    for _ in 0..16 {
        let t = nilpf::random_rational_point(&mut rng, alg.dim_z);
        let b = nilpf::b_form(&alg, &t)?;
        let pf = nilpf::pfaffian(&b)?;
        if &pf * &pf != b.det()? || pf != p.eval_rat(&t) {
            mismatches += 1;
        }
    }
    cases.push(Case::check("Pf^2 = det and Pf = P(t) at 16 seeded points", mismatches == 0, 0, mismatches, None));
    let s = RatMatrix::from_fn(alg.dim_v, alg.dim_v, |_, _| rat(rng.gen_range(-3..=3), 1));
    let det_s = s.det()?;
    let changed = nilpf::pfaffian_polynomial(&alg.change_basis(&s)?);
    cases.push(Case::check("Pf(S^T B S) = det(S) Pf(B)", changed.poly == p.poly.scale(&det_s), "exact", if changed.poly == p.poly.scale(&det_s) { "exact" } else { "differs" }, None));
    let si = !p.is_zero();
    match expected_square_integrable(&spec) {
        Some(want) => cases.push(Case::check("square integrable", si == want, want, si, None)),
        None => cases.push(Case::info("square integrable", si)),
    }
    let zeros = nilpf::sample_zero_set(&alg, 1000, case_seed(c.seed, 1));
    cases.push(Case::check("zero fraction of 1000 samples", zeros == if si { 0.0 } else { 1.0 }, if si { 0 } else { 1 }, zeros, None));
    if let Some(ts) = &c.t {
        if ts.len() == alg.dim_z {
            cases.push(Case::info(format!("density at t={ts:?}"), format!("{:.12e}", nilpf::plancherel_density(&alg, ts)?)));
        } else {
            return Err(Error::DimensionMismatch(alg.dim_z, ts.len()));
        }
    }
    Ok(cases)
}

fn weyl(c: &Config, _tol: &Tolerances) -> Result<Vec<Case>> {
    let max_rank = c.rank.unwrap_or(3);
    let max_coeff = c.degree.unwrap_or(2) as i64;
    let mut cases = Vec::new();
    for family in [Family::A, Family::B, Family::C, Family::D] {
        let low = if family == Family::D { 2 } else { 1 };
        for rank in low..=max_rank {
            let rs = rootsys::build_root_system(family, rank)?;
            let mut count = 0;
            let mut bad = Vec::new();
            let total = (max_coeff + 1).pow(rank as u32);
            for code in 0..total {
                let coeffs: Vec<i64> = (0..rank).map(|i| (code / (max_coeff + 1).pow(i as u32)) % (max_coeff + 1)).collect();
                let lambda = DominantWeight::new(family, coeffs.clone())?;
                let w = rootsys::weyl_dimension(&rs, &lambda)?;
                let f = rootsys::freudenthal_dimension(&rs, &lambda)?;
                count += 1;
                if w != f {
                    bad.push(format!("{coeffs:?}: {w} vs {f}"));
                }
            }
            cases.push(Case::check(
                format!("{}{rank}", family.letter()),
                bad.is_empty(),
                format!("{count} weights agree"),
                if bad.is_empty() { format!("{count} weights agree") } else { bad.join("; ") },
                None,
            ));
        }
    }
    Ok(cases)
}

fn row_datum(id: &str, rank: Option<usize>) -> Result<(GroupDatum, i64)> {
    let row = charring::lookup_row(id)?;
    let value = match rank {
        Some(r) => r as i64,
        None => row.smallest_admissible().ok_or_else(|| Error::Invalid(format!("row {id} has no admissible value")))?,
    };
    Ok((row.instantiate(value)?, value))
}

fn carcano(c: &Config, _tol: &Tolerances) -> Result<Vec<Case>> {
    let degree = c.degree.unwrap_or(4);
    let mut cases = Vec::new();
    let rows: Vec<String> = match &c.row {
        Some(r) => vec![r.clone()],
        None => ["kac:1", "kac:2", "kac:3", "kac:5", "kac:6", "kac:8"].iter().map(|s| s.to_string()).collect(),
    };
    for id in &rows {
        let (k, value) = row_datum(id, c.rank)?;
        let rep = charring::is_multiplicity_free_polynomial_action(&k, degree)?;
        let actual = match &rep.violation {
            None => "true".to_string(),
            Some(v) => format!("false ({:?} in degrees {} and {})", v.highest, v.first_degree, v.degree),
        };
        let label = format!("{id} at {value}, degree <= {degree}");
        if id.starts_with("vin:") {
            cases.push(Case::info(label, actual));
        } else {
            cases.push(Case::check(label, rep.multiplicity_free, true, actual, None));
        }
    }
    if c.row.is_none() {
        let diag = GroupDatum::new("su2-diagonal", vec![Factor::Special(2)], Construction::DirectSum2, KeyMode::Full)?;
        let rep = charring::is_multiplicity_free_polynomial_action(&diag, degree)?;
        cases.push(Case::check(format!("SU(2) diagonal on C^2 + C^2, degree <= {degree}"), !rep.multiplicity_free, false, rep.multiplicity_free, None));
        let sp2 = GroupDatum::simple(Factor::Symplectic(2))?;
        for q in 0..=degree {
            let dec = charring::sym_power_decompose(&sp2, q)?;
            let want = vec![vec![q as i64, 0]];
            let ok = dec.entries.len() == 1 && dec.entries[0].mult == 1 && dec.entries[0].highest == want;
            let actual: Vec<String> = dec.entries.iter().map(|e| format!("{}x{:?}", e.mult, e.highest)).collect();
            cases.push(Case::check(format!("Sp(2) degree {q}"), ok, format!("1x{want:?}"), actual.join(" + "), None));
        }
    }
    Ok(cases)
}

fn stability(c: &Config, _tol: &Tolerances) -> Result<Vec<Case>> {
    let degree = c.degree.unwrap_or(4);
    let rows: Vec<(String, Option<usize>)> = match &c.row {
        Some(r) => vec![(r.clone(), c.rank)],
        None => vec![("jaw:2".into(), None), ("jaw:3".into(), None), ("jaw:5a".into(), Some(2))],
    };
    let mut cases = Vec::new();
    for (id, rank) in rows {
        let row = charring::lookup_row(&id)?;
        let (kn, n) = row_datum(&id, rank)?;
        let m = row
            .admissible_values(64)
            .into_iter()
            .find(|&v| v > n)
            .ok_or_else(|| Error::Invalid(format!("row {id} has no rank after {n}")))?;
        let km = row.instantiate(m)?;
        for d in 0..=degree {
            let rep = charring::check_stability(&kn, &km, d)?;
            let actual = if rep.stable { "contained".to_string() } else { format!("missing {:?}", rep.missing) };
            cases.push(Case::check(format!("{id} {n}->{m} d={d}"), rep.stable, "contained", actual, None));
        }
    }
    Ok(cases)
}

fn exact_residual_case(id: String, r: &Scalar) -> Case {
    Case::check(id, r.is_exact() && r.is_zero(), "0 (exact)", dirlim::scalar_to_string(r), Some(0.0))
}

fn ladder(c: &Config, tol: &Tolerances) -> Result<Vec<Case>> {
    let max_d = c.degree.unwrap_or(4);
    let top = c.rank.unwrap_or(5);
    if top < 3 {
        return Err(Error::Invalid("ladder suite needs --rank >= 3".into()));
    }
    let mut cases = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(case_seed(c.seed, 0));
    let levels: Vec<usize> = (1..=top).collect();
    for d in 0..=max_d {
        let l = dirlim::un_polynomial_ladder(&levels, d)?;
        let mut worst = Scalar::Exact(BigRational::zero());
        let mut agree = true;
        for &m in &levels {
            for &n in &levels[..m] {
                let sq = l.verify_commuting_square(m, n)?;
                for r in [sq.plain, sq.tilde] {
                    if !(r.is_exact() && r.is_zero()) {
                        worst = r;
                    }
                }
                agree &= l.c_sq_of(m, n)? == Scalar::Exact(dirlim::un_projection_constant_sq(m, n, d));
            }
        }
        cases.push(exact_residual_case(format!("unitary d={d} commuting squares"), &worst));
        cases.push(Case::check(format!("unitary d={d} c^2 closed form = basis projection"), agree, true, agree, None));
        let f = random_invariant(&mut rng, Backend::Unitary, 1, 1);
        let g = random_invariant(&mut rng, Backend::Unitary, 1, 1);
        let mut worst = Scalar::Exact(BigRational::zero());
        for &m in &levels[1..] {
            let r = dirlim::promotion_residual(&l, &f, &g, m)?;
            if !(r.is_exact() && r.is_zero()) {
                worst = r;
            }
        }
        cases.push(exact_residual_case(format!("unitary d={d} limit inner product promotion"), &worst));
    }
    let sphere_levels: Vec<usize> = (2..=top).collect();
    for d in 0..=max_d {
        let l = dirlim::sphere_ladder(&sphere_levels, d, SphereConstants::Quadrature)?;
        cases.push(Case::below(format!("sphere d={d} cocycle"), l.cocycle_residual().to_f64(), tol.ladder));
        let dim = symmpair::harmonic_dimension(3, d) as usize;
        let f = random_invariant(&mut rng, Backend::Sphere, 2, dim.min(3));
        let g = random_invariant(&mut rng, Backend::Sphere, 2, dim.min(3));
        let worst = sphere_levels[1..]
            .iter()
            .map(|&m| dirlim::promotion_residual(&l, &f, &g, m).map(|r| r.to_f64()))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .fold(0.0, f64::max);
        cases.push(Case::below(format!("sphere d={d} limit inner product promotion"), worst, tol.ladder));
    }
    for t in t_list(c, &[0.5, 1.0, 2.0])? {
        let l = match dirlim::heisenberg_ladder(&[1, 2, 3], t, true, tol) {
            Ok(l) => l,
            Err(e) => {
                cases.push(Case::error(format!("heisenberg t={t}"), e));
                continue;
            }
        };
        let f = random_invariant(&mut rng, Backend::Heisenberg, 1, 4);
        let g = random_invariant(&mut rng, Backend::Heisenberg, 1, 4);
        let worst = [2, 3]
            .iter()
            .map(|&m| dirlim::promotion_residual(&l, &f, &g, m).map(|r| r.to_f64()))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .fold(0.0, f64::max);
        cases.push(Case::below(format!("heisenberg t={t} limit inner product promotion"), worst, tol.ladder));
    }
    Ok(cases)
}

fn random_invariant(rng: &mut ChaCha8Rng, backend: Backend, level: usize, len: usize) -> LadderedFunction {
    let exact = backend == Backend::Unitary;
    let coeffs = (0..len)
        .map(|i| {
            let (a, b) = (rng.gen_range(-9i64..=9), rng.gen_range(1i64..=7));
            let v = if exact { Scalar::Exact(rat(a, b)) } else { Scalar::Float(a as f64 / b as f64) };
            (vec![i], v)
        })
        .collect();
    LadderedFunction::new(backend, level, true, coeffs)
}

fn zonal(c: &Config, tol: &Tolerances) -> Result<Vec<Case>> {
    let top = c.rank.unwrap_or(5);
    let max_d = c.degree.unwrap_or(4);
    if top < 2 {
        return Err(Error::Invalid("zonal suite needs --rank >= 2".into()));
    }
    let mut cases = Vec::new();
    for d in 0..=max_d {
        let mut diag_ok = true;
        let mut bounds_ok = true;
        let mut worst: f64 = 0.0;
        for n in 2..=top {
            for m in n..=top {
                let sq = symmpair::zonal_projection_constant_sq(m, n, d)?;
                if m == n {
                    diag_ok &= sq.is_one();
                }
                bounds_ok &= sq.is_positive() && sq <= BigRational::one();
                let q = symmpair::zonal_constant_quadrature(m, n, d)?;
                let gg = symmpair::zonal_constant_gegenbauer(m, n, d)?;
                worst = worst.max((q - gg).abs());
            }
        }
        cases.push(Case::check(format!("d={d} c(n,n) = 1"), diag_ok, "exactly 1", if diag_ok { "exactly 1" } else { "differs" }, Some(0.0)));
        cases.push(Case::check(format!("d={d} 0 < c <= 1"), bounds_ok, true, bounds_ok, None));
        cases.push(Case::below(format!("d={d} quadrature vs Gegenbauer"), worst, tol.exact_identity));
    }
    Ok(cases)
}
