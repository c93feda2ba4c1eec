//! Floating-point cross-check: solve the conjugate-closed system numerically
//! and count the points with `w = conj z`.
//!
//! A lexicographic Gröbner basis gives an eliminant in the last variable.
//! Its squarefree part is solved with the Aberth–Ehrlich iteration and the
//! remaining coordinates are recovered by back-substitution, then every
//! point is polished with Gauss–Newton on the original generators.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gaussian::GaussianRational;
use crate::groebner::{buchberger_with_order, GroebnerBasis};
use crate::poly::{GenPoly, MonomialOrder};

pub const TOL_SCALE_ENV: &str = "CONJCOUNT_TOL_SCALE";

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct OracleConfig {
    /// Aberth stops when every correction is below `step_tol * (1 + |x|)`.
    pub step_tol: f64,
    pub max_iter: usize,
    /// Accept a point when `max |g(x)| <= residual_tol * (1 + max coeff)`,
    /// measured against the point's magnitude raised to the degree.
    pub residual_tol: f64,
    /// Relative radius for merging numerically equal points.
    pub cluster_tol: f64,
    /// `|w - conj z| <= single_tol * (1 + |z|)` marks a conjugated single.
    pub single_tol: f64,
    /// Distances between `single_tol` and this are ambiguous.
    pub borderline_tol: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            step_tol: 1e-12,
            max_iter: 1000,
            residual_tol: 1e-8,
            cluster_tol: 1e-6,
            single_tol: 1e-6,
            borderline_tol: 1e-4,
        }
    }
}

impl OracleConfig {
    /// Multiply every tolerance by `k`.
    pub fn scaled(k: f64) -> Self {
        let d = Self::default();
        Self {
            step_tol: d.step_tol * k,
            residual_tol: d.residual_tol * k,
            cluster_tol: d.cluster_tol * k,
            single_tol: d.single_tol * k,
            borderline_tol: d.borderline_tol * k,
            ..d
        }
    }

    /// Defaults scaled by `CONJCOUNT_TOL_SCALE` when it holds a positive number.
    pub fn from_env() -> Self {
        std::env::var(TOL_SCALE_ENV)
            .ok()
            .and_then(|s| s.trim().parse::<f64>().ok())
            .filter(|k| k.is_finite() && *k > 0.0)
            .map_or_else(Self::default, Self::scaled)
    }
}

/// Roots of `Σ c_k x^k` (ascending coefficients) by Aberth–Ehrlich.
pub fn aberth_roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    aberth_roots_with(coeffs, &OracleConfig::default())
}

fn horner(c: &[Complex64], x: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::zero();
    let mut dp = Complex64::zero();
    for &a in c.iter().rev() {
        dp = dp * x + p;
        p = p * x + a;
    }
    (p, dp)
}

/// Size of the rounding error of Horner evaluation at `x`.
fn rounding_bound(c: &[Complex64], x: Complex64) -> f64 {
    let r = x.norm();
    let mut acc = 0.0;
    for a in c.iter().rev() {
        acc = acc * r + a.norm();
    }
    4.0 * c.len() as f64 * f64::EPSILON * acc
}

pub fn aberth_roots_with(coeffs: &[Complex64], cfg: &OracleConfig) -> Result<Vec<Complex64>> {
    let mut c: Vec<Complex64> = coeffs.to_vec();
    while c.last().is_some_and(|x| x.norm() == 0.0) {
        c.pop();
    }
    if c.len() < 2 {
        return Err(Error::InvalidInput("root finding needs a polynomial of degree >= 1".into()));
    }
    let lead = *c.last().unwrap();
    let c: Vec<Complex64> = c.iter().map(|x| x / lead).collect();
    let d = c.len() - 1;
    // zero roots split off exactly
    let low = c.iter().position(|x| x.norm() != 0.0).unwrap();
    let c = &c[low..];
    let d_rest = d - low;
    let mut roots = vec![Complex64::zero(); low];
    if d_rest == 0 {
        return Ok(roots);
    }
    if d_rest == 1 {
        roots.push(-c[0]);
        return Ok(roots);
    }
    // Fujiwara bound for the initial circle
    let radius = (1..=d_rest)
        .map(|k| {
            let a = c[d_rest - k].norm();
            if k == d_rest { (a / 2.0).powf(1.0 / k as f64) } else { a.powf(1.0 / k as f64) }
        })
        .fold(0.0, f64::max)
        * 2.0;
    let radius = if radius > 0.0 { radius } else { 1.0 };
    let mut z: Vec<Complex64> = (0..d_rest)
        .map(|k| Complex64::from_polar(radius, 2.0 * std::f64::consts::PI * k as f64 / d_rest as f64 + 0.4))
        .collect();
    let mut converged = false;
    for _ in 0..cfg.max_iter {
        let mut done = true;
        for i in 0..d_rest {
            let (p, dp) = horner(c, z[i]);
            if p.norm() <= rounding_bound(c, z[i]) {
                continue;
            }
            let ratio = p / dp;
            let sum: Complex64 = (0..d_rest).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let step = ratio / (Complex64::one() - ratio * sum);
            if !step.is_finite() {
                continue;
            }
            z[i] -= step;
            if step.norm() > cfg.step_tol * (1.0 + z[i].norm()) {
                done = false;
            }
        }
        if done {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::MaxIterations(cfg.max_iter));
    }
    roots.extend(z);
    Ok(roots)
}

/// One point of the conjugate-closed system, split into its `z` and `w`
/// halves.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NumericSolution {
    #[serde(serialize_with = "ser_complex")]
    pub z: Vec<Complex64>,
    #[serde(serialize_with = "ser_complex")]
    pub w: Vec<Complex64>,
    pub residual: f64,
    pub is_single: bool,
}

fn ser_complex<S: serde::Serializer>(v: &[Complex64], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for c in v {
        seq.serialize_element(&[c.re, c.im])?;
    }
    seq.end()
}

impl NumericSolution {
    /// `max_k |w_k - conj z_k| / (1 + |z_k|)`.
    pub fn conjugation_gap(&self) -> f64 {
        self.z.iter().zip(&self.w).map(|(z, w)| (w - z.conj()).norm() / (1.0 + z.norm())).fold(0.0, f64::max)
    }

    fn point(&self) -> Vec<Complex64> {
        self.z.iter().chain(&self.w).copied().collect()
    }

    /// The partner `(conj w, conj z)` of this point.
    pub fn partner(&self) -> Vec<Complex64> {
        self.w.iter().map(|x| x.conj()).chain(self.z.iter().map(|x| x.conj())).collect()
    }
}

/// Lexicographic basis with `z_1 > … > z_r > w_1 > … > w_r`.
pub fn lex_basis(generators: &[GenPoly]) -> Result<GroebnerBasis> {
    buchberger_with_order(generators, MonomialOrder::Lex)
}

type UniPoly = Vec<GaussianRational>;

fn trim(mut p: UniPoly) -> UniPoly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn uni_rem(a: &[GaussianRational], b: &[GaussianRational]) -> UniPoly {
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    let inv = b[db].inv();
    while r.len() > db {
        let k = r.len() - 1 - db;
        let f = &r[r.len() - 1] * &inv;
        for (j, c) in b.iter().enumerate() {
            r[k + j] -= &(&f * c);
        }
        r = trim(r);
    }
    r
}

fn uni_div(a: &[GaussianRational], b: &[GaussianRational]) -> UniPoly {
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    let inv = b[db].inv();
    let mut q = vec![GaussianRational::zero(); r.len().saturating_sub(db)];
    while r.len() > db {
        let k = r.len() - 1 - db;
        let f = &r[r.len() - 1] * &inv;
        for (j, c) in b.iter().enumerate() {
            r[k + j] -= &(&f * c);
        }
        q[k] = f;
        r = trim(r);
    }
    q
}

fn uni_gcd(a: &[GaussianRational], b: &[GaussianRational]) -> UniPoly {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = uni_rem(&a, &b);
        a = b;
        b = r;
    }
    let inv = a.last().map(GaussianRational::inv).unwrap_or_else(GaussianRational::one);
    a.iter().map(|c| c * &inv).collect()
}

/// `p / gcd(p, p')`, monic.
pub fn squarefree_part(p: &[GaussianRational]) -> Vec<GaussianRational> {
    let p = trim(p.to_vec());
    if p.len() <= 2 {
        return p;
    }
    let dp: UniPoly = p.iter().enumerate().skip(1).map(|(k, c)| c * &GaussianRational::from(k as i64)).collect();
    let g = uni_gcd(&p, &dp);
    let q = uni_div(&p, &g);
    let inv = q.last().unwrap().inv();
    q.iter().map(|c| c * &inv).collect()
}

/// Index of the largest variable occurring in `p` (smallest flat index),
/// which for a lexicographic basis is the variable of the leading term.
fn leading_var(p: &GenPoly) -> Option<usize> {
    p.terms().filter_map(|(m, _)| m.0.iter().position(|&e| e > 0)).min()
}

fn derivative(p: &GenPoly, v: usize) -> GenPoly {
    let terms = p.terms().filter(|(m, _)| m.0[v] > 0).map(|(m, c)| {
        let mut m = m.clone();
        let e = m.0[v];
        m.0[v] -= 1;
        (m, c * &GaussianRational::from(e as i64))
    });
    GenPoly::from_terms(p.num_pairs(), terms)
}

/// Univariate coefficients in `x_v` after substituting `vals[u]` for the
/// variables `u > v`.
fn specialize(p: &GenPoly, v: usize, vals: &[Complex64]) -> Vec<Complex64> {
    let deg = p.terms().map(|(m, _)| m.0[v]).max().unwrap_or(0) as usize;
    let mut out = vec![Complex64::zero(); deg + 1];
    for (m, c) in p.terms() {
        let mut t = c.to_complex64();
        for u in v + 1..m.0.len() {
            if m.0[u] > 0 {
                t *= vals[u].powu(m.0[u]);
            }
        }
        out[m.0[v] as usize] += t;
    }
    out
}

fn trim_relative(mut c: Vec<Complex64>, rel: f64) -> Vec<Complex64> {
    let scale = c.iter().map(|x| x.norm()).fold(0.0, f64::max);
    while c.last().is_some_and(|x| x.norm() <= rel * scale) {
        c.pop();
    }
    c
}

/// `|p(x)|` relative to `Σ |c_k| |x|^k`.
fn relative_value(c: &[Complex64], x: Complex64) -> f64 {
    let (p, _) = horner(c, x);
    let scale: f64 = c.iter().enumerate().map(|(k, a)| a.norm() * x.norm().powi(k as i32)).sum();
    if scale == 0.0 { 0.0 } else { p.norm() / scale }
}

fn max_residual(gens: &[GenPoly], x: &[Complex64]) -> f64 {
    gens.iter().map(|g| g.evaluate(x).norm()).fold(0.0, f64::max)
}

fn residual_scale(gens: &[GenPoly], x: &[Complex64]) -> f64 {
    let coef = gens.iter().map(GenPoly::max_coeff_abs).fold(0.0, f64::max);
    let deg = gens.iter().filter_map(GenPoly::total_degree).max().unwrap_or(0) as i32;
    let mag = x.iter().map(|c| c.norm()).fold(1.0, f64::max);
    (1.0 + coef) * mag.powi(deg)
}

/// Gauss–Newton on the full (possibly overdetermined) system.
fn polish(gens: &[GenPoly], jac: &[Vec<GenPoly>], x: &mut [Complex64]) {
    let n = x.len();
    let mut best = max_residual(gens, x);
    for _ in 0..30 {
        if best == 0.0 {
            return;
        }
        let f = DVector::from_iterator(gens.len(), gens.iter().map(|g| -g.evaluate(x)));
        let j = DMatrix::from_fn(gens.len(), n, |i, k| jac[i][k].evaluate(x));
        let Ok(step) = j.svd(true, true).solve(&f, 1e-14) else {
            return;
        };
        let cand: Vec<Complex64> = x.iter().zip(step.iter()).map(|(a, d)| a + d).collect();
        let res = max_residual(gens, &cand);
        if !(res < best) {
            return;
        }
        x.copy_from_slice(&cand);
        best = res;
    }
}

/// All points of `V(generators)` from a lexicographic basis of the same
/// ideal, each polished and checked against the generators. Points are
/// merged when closer than the cluster radius.
pub fn solve_numeric(generators: &[GenPoly], lex: &GroebnerBasis, cfg: &OracleConfig) -> Result<Vec<NumericSolution>> {
    if lex.order() != MonomialOrder::Lex {
        return Err(Error::InvalidInput("solve_numeric needs a lexicographic basis".into()));
    }
    if lex.is_unit() {
        return Ok(Vec::new());
    }
    let r = lex.num_pairs();
    let nv = 2 * r;
    let mut by_var: Vec<Vec<&GenPoly>> = vec![Vec::new(); nv];
    for p in lex.generators() {
        if let Some(v) = leading_var(p) {
            by_var[v].push(p);
        }
    }
    let last = nv - 1;
    let eliminant = by_var[last]
        .iter()
        .min_by_key(|p| p.total_degree())
        .ok_or(Error::NoEliminant)?;
    let exact: Vec<GaussianRational> = {
        let deg = eliminant.total_degree().unwrap_or(0) as usize;
        let mut c = vec![GaussianRational::zero(); deg + 1];
        for (m, a) in eliminant.terms() {
            c[m.0[last] as usize] = a.clone();
        }
        squarefree_part(&c)
    };
    let start: Vec<Complex64> = exact.iter().map(GaussianRational::to_complex64).collect();
    let mut partial: Vec<Vec<Complex64>> = aberth_roots_with(&start, cfg)?
        .into_iter()
        .map(|x| {
            let mut v = vec![Complex64::zero(); nv];
            v[last] = x;
            v
        })
        .collect();
    let filter_tol = cfg.cluster_tol.max(1e-6);
    for v in (0..last).rev() {
        if by_var[v].is_empty() {
            return Err(Error::NotZeroDimensional);
        }
        let mut next = Vec::new();
        for vals in &partial {
            let specs: Vec<Vec<Complex64>> = by_var[v]
                .iter()
                .map(|p| trim_relative(specialize(p, v, vals), 1e-9))
                .filter(|c| c.len() > 1 || c.first().is_some_and(|x| x.norm() > 0.0))
                .collect();
            let Some(pick) = specs.iter().filter(|c| c.len() >= 2).min_by_key(|c| c.len()) else {
                continue;
            };
            let cands = aberth_roots_with(pick, cfg)?;
            for x in cands {
                if specs.iter().all(|c| relative_value(c, x) <= filter_tol) {
                    let mut nv_vals = vals.clone();
                    nv_vals[v] = x;
                    next.push(nv_vals);
                }
            }
        }
        partial = next;
    }
    let jac: Vec<Vec<GenPoly>> = generators.iter().map(|g| (0..nv).map(|v| derivative(g, v)).collect()).collect();
    let mut out: Vec<NumericSolution> = Vec::new();
    for mut x in partial {
        polish(generators, &jac, &mut x);
        let residual = max_residual(generators, &x);
        if residual > cfg.residual_tol * residual_scale(generators, &x) {
            continue;
        }
        let mag = 1.0 + x.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let dup = out.iter().any(|s| {
            s.point().iter().zip(&x).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max) <= cfg.cluster_tol * mag
        });
        if dup {
            continue;
        }
        let mut sol = NumericSolution { z: x[..r].to_vec(), w: x[r..].to_vec(), residual, is_single: false };
        sol.is_single = sol.conjugation_gap() <= cfg.single_tol;
        out.push(sol);
    }
    out.sort_by(|a, b| {
        let key = |s: &NumericSolution| s.point().iter().flat_map(|c| [c.re, c.im]).collect::<Vec<f64>>();
        key(a).partial_cmp(&key(b)).unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleCount {
    pub singles: usize,
    pub pairs: usize,
    pub total: usize,
}

/// Tally singles and non-single pairs, checking that every non-single
/// point has its partner `(conj w, conj z)` among the solutions.
pub fn tally(solutions: &[NumericSolution], cfg: &OracleConfig) -> Result<OracleCount> {
    for s in solutions {
        let gap = s.conjugation_gap();
        if gap > cfg.single_tol && gap <= cfg.borderline_tol {
            return Err(Error::Ambiguous(format!("conjugation gap {gap:.3e} is between tolerances")));
        }
    }
    let singles = solutions.iter().filter(|s| s.is_single).count();
    for s in solutions.iter().filter(|s| !s.is_single) {
        let partner = s.partner();
        let mag = 1.0 + partner.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let found = solutions.iter().any(|t| {
            t.point().iter().zip(&partner).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
                <= cfg.borderline_tol * mag
        });
        if !found {
            return Err(Error::InconsistentPairing);
        }
    }
    let rest = solutions.len() - singles;
    if rest % 2 != 0 {
        return Err(Error::InconsistentPairing);
    }
    Ok(OracleCount { singles, pairs: rest / 2, total: solutions.len() })
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleReport {
    pub count: OracleCount,
    pub solutions: Vec<NumericSolution>,
}

/// Numerically solve the conjugate-closed generators and count singles.
pub fn oracle_count(generators: &[GenPoly], cfg: &OracleConfig) -> Result<OracleReport> {
    let lex = lex_basis(generators)?;
    let solutions = solve_numeric(generators, &lex, cfg)?;
    let count = tally(&solutions, cfg)?;
    Ok(OracleReport { count, solutions })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Monomial;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn g(re: i64, im: i64) -> GaussianRational {
        GaussianRational::from_ints(re, im)
    }

    fn sorted(mut v: Vec<Complex64>) -> Vec<Complex64> {
        v.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
        v
    }

    #[test]
    fn aberth_simple_cases() {
        let r = sorted(aberth_roots(&[c(2.0, 0.0), c(-3.0, 0.0), c(1.0, 0.0)]).unwrap());
        assert!((r[0] - c(1.0, 0.0)).norm() < 1e-10 && (r[1] - c(2.0, 0.0)).norm() < 1e-10);
        let r = aberth_roots(&[c(-1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        for x in &r {
            assert!((x.powu(3) - 1.0).norm() < 1e-10);
        }
        let r = aberth_roots(&[c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert_eq!(r, vec![c(0.0, 0.0), c(0.0, 0.0)]);
        assert!(aberth_roots(&[c(3.0, 0.0)]).is_err());
    }

    #[test]
    fn squarefree_removes_repeats() {
        // (x - 1)^2 (x + i) = x^3 + (i - 2) x^2 + (1 - 2i) x + i
        let p = vec![g(0, 1), g(1, -2), g(-2, 1), g(1, 0)];
        assert_eq!(squarefree_part(&p), vec![g(0, -1), g(-1, 1), g(1, 0)]);
    }

    fn conj_closed(p: GenPoly) -> Vec<GenPoly> {
        vec![p.clone(), p.star()]
    }

    #[test]
    fn quadratic_example_points() {
        // z^2 + conj(z): 0, -1, e^{±iπ/3}
        let p = &GenPoly::z(1, 0).pow(2) + &GenPoly::w(1, 0);
        let rep = oracle_count(&conj_closed(p), &OracleConfig::default()).unwrap();
        assert_eq!(rep.count, OracleCount { singles: 4, pairs: 0, total: 4 });
        let want = [c(0.0, 0.0), c(-1.0, 0.0), c(0.5, 3f64.sqrt() / 2.0), c(0.5, -(3f64.sqrt()) / 2.0)];
        for x in want {
            assert!(rep.solutions.iter().any(|s| (s.z[0] - x).norm() < 1e-9), "missing {x}");
        }
    }

    #[test]
    fn linear_example_point() {
        let p = GenPoly::from_terms(
            1,
            [(Monomial(vec![1, 0]), g(1, 0)), (Monomial(vec![0, 1]), g(2, 0)), (Monomial(vec![0, 0]), g(1, 0))],
        );
        let rep = oracle_count(&conj_closed(p), &OracleConfig::default()).unwrap();
        assert_eq!(rep.count.singles, 1);
        assert!((rep.solutions[0].z[0] - c(-1.0 / 3.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn non_single_pairs() {
        // {z - 1, w} : the point (1, 0) and its partner (0, 1) are not in
        // the ideal, but {z (z - 1), w (w - 1), z + w - 1} has both.
        let z = GenPoly::z(1, 0);
        let w = GenPoly::w(1, 0);
        let one = GenPoly::one(1);
        let gens = vec![&z * &(&z - &one), &w * &(&w - &one), &(&z + &w) - &one];
        let rep = oracle_count(&gens, &OracleConfig::default()).unwrap();
        assert_eq!(rep.count, OracleCount { singles: 0, pairs: 1, total: 2 });
        // {z, w - 1} alone fails the pairing check
        let lonely = vec![z.clone(), &w - &one];
        assert_eq!(oracle_count(&lonely, &OracleConfig::default()).unwrap_err(), Error::InconsistentPairing);
    }

    #[test]
    fn origin() {
        let rep = oracle_count(&[GenPoly::z(1, 0), GenPoly::w(1, 0)], &OracleConfig::default()).unwrap();
        assert_eq!(rep.count, OracleCount { singles: 1, pairs: 0, total: 1 });
    }

    #[test]
    fn two_pairs_of_variables() {
        // z1 = conj(z2), z2^2 = 2: singles where z1 = conj z2 and z2 = conj z1,
        // so z2 = ±√2 gives two singles
        let r = 2;
        let gens = vec![
            &GenPoly::z(r, 0) - &GenPoly::w(r, 1),
            &GenPoly::w(r, 0) - &GenPoly::z(r, 1),
            &GenPoly::z(r, 1).pow(2) - &GenPoly::constant(r, g(2, 0)),
            &GenPoly::w(r, 1).pow(2) - &GenPoly::constant(r, g(2, 0)),
        ];
        let rep = oracle_count(&gens, &OracleConfig::default()).unwrap();
        assert_eq!(rep.count.singles, 2);
        assert_eq!(rep.count.total, 4);
    }

    #[test]
    fn env_scale() {
        let k = OracleConfig::scaled(10.0);
        assert!((k.single_tol - 1e-5).abs() < 1e-18);
        assert_eq!(k.max_iter, 1000);
    }
}
