//! Sparse polynomials in paired variables `z_1..z_r, w_1..w_r`, where `w_k`
//! stands for the conjugate of `z_k`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::gaussian::GaussianRational;

/// Exponent vector over `2r` variables laid out `(z_1..z_r, w_1..w_r)`.
///
/// The derived `Ord` is lexicographic with `z_1 > … > z_r > w_1 > … > w_r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, idx: usize) -> Self {
        let mut e = vec![0; nvars];
        e[idx] = 1;
        Monomial(e)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        self.divides(other)
            .then(|| Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect()))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Swap the z-block and the w-block.
    pub fn star(&self) -> Monomial {
        let r = self.0.len() / 2;
        let mut e = Vec::with_capacity(self.0.len());
        e.extend_from_slice(&self.0[r..]);
        e.extend_from_slice(&self.0[..r]);
        Monomial(e)
    }

    /// If the monomial is a pure power of one variable, return `(var, exp)`.
    pub fn pure_power(&self) -> Option<(usize, u32)> {
        let mut found = None;
        for (k, &e) in self.0.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some((k, e));
            }
        }
        found
    }
}

/// Monomial orders used by the pipeline. Both use the variable order
/// `z_1 > … > z_r > w_1 > … > w_r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    Lex,
    #[default]
    GrevLex,
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.0.cmp(&b.0),
            MonomialOrder::GrevLex => a.degree().cmp(&b.degree()).then_with(|| {
                for (x, y) in a.0.iter().zip(&b.0).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }),
        }
    }
}

/// A generalized polynomial `Σ a_{α,β} z^α w^β` with Gaussian-rational
/// coefficients. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GenPoly {
    num_pairs: usize,
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl GenPoly {
    pub fn zero(num_pairs: usize) -> Self {
        Self { num_pairs, terms: BTreeMap::new() }
    }

    pub fn constant(num_pairs: usize, c: GaussianRational) -> Self {
        Self::term(num_pairs, Monomial::one(2 * num_pairs), c)
    }

    pub fn one(num_pairs: usize) -> Self {
        Self::constant(num_pairs, GaussianRational::one())
    }

    pub fn term(num_pairs: usize, m: Monomial, c: GaussianRational) -> Self {
        assert_eq!(m.nvars(), 2 * num_pairs, "monomial arity mismatch");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { num_pairs, terms }
    }

    pub fn monomial(num_pairs: usize, m: Monomial) -> Self {
        Self::term(num_pairs, m, GaussianRational::one())
    }

    /// Variable by flat index in `(z_1..z_r, w_1..w_r)`.
    pub fn var(num_pairs: usize, idx: usize) -> Self {
        Self::monomial(num_pairs, Monomial::var(2 * num_pairs, idx))
    }

    pub fn z(num_pairs: usize, k: usize) -> Self {
        Self::var(num_pairs, k)
    }

    pub fn w(num_pairs: usize, k: usize) -> Self {
        Self::var(num_pairs, num_pairs + k)
    }

    pub fn from_terms(
        num_pairs: usize,
        terms: impl IntoIterator<Item = (Monomial, GaussianRational)>,
    ) -> Self {
        let mut p = Self::zero(num_pairs);
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn num_pairs(&self) -> usize {
        self.num_pairs
    }

    pub fn num_vars(&self) -> usize {
        2 * self.num_pairs
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> GaussianRational {
        self.terms.get(m).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn as_constant(&self) -> Option<GaussianRational> {
        match self.terms.len() {
            0 => Some(GaussianRational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(m.nvars(), self.num_vars());
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += c * m * other`.
    pub fn add_scaled_shifted(&mut self, c: &GaussianRational, m: &Monomial, other: &GenPoly) {
        for (om, oc) in &other.terms {
            self.add_term(m.mul(om), &(c * oc));
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> GenPoly {
        if c.is_zero() {
            return GenPoly::zero(self.num_pairs);
        }
        GenPoly {
            num_pairs: self.num_pairs,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> GenPoly {
        GenPoly {
            num_pairs: self.num_pairs,
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> GenPoly {
        let mut acc = GenPoly::one(self.num_pairs);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn leading_term(&self, order: MonomialOrder) -> Option<(&Monomial, &GaussianRational)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    pub fn leading_monomial(&self, order: MonomialOrder) -> Option<&Monomial> {
        self.leading_term(order).map(|(m, _)| m)
    }

    /// Divide by the leading coefficient.
    pub fn monic(&self, order: MonomialOrder) -> GenPoly {
        match self.leading_term(order) {
            Some((_, c)) => self.scale(&c.inv()),
            None => self.clone(),
        }
    }

    /// Terms sorted descending under `order`.
    pub fn sorted_terms(&self, order: MonomialOrder) -> Vec<(&Monomial, &GaussianRational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| order.cmp(b.0, a.0));
        v
    }

    /// The anti-linear involution: conjugate every coefficient and swap
    /// `z_k <-> w_k`.
    pub fn star(&self) -> GenPoly {
        GenPoly {
            num_pairs: self.num_pairs,
            terms: self.terms.iter().map(|(m, c)| (m.star(), c.conj())).collect(),
        }
    }

    pub fn is_star_symmetric(&self) -> bool {
        *self == self.star()
    }

    /// Substitute `z = x + iy`, `w = x - iy` and split into real and
    /// imaginary parts. The result uses the same variable slots, read as
    /// `(x_1..x_r, y_1..y_r)`.
    pub fn to_real_coords(&self) -> RealPolyPair {
        let r = self.num_pairs;
        let x = |k| GenPoly::var(r, k);
        let iy = |k| GenPoly::var(r, r + k).scale(&GaussianRational::i());
        let zk: Vec<GenPoly> = (0..r).map(|k| &x(k) + &iy(k)).collect();
        let wk: Vec<GenPoly> = (0..r).map(|k| &x(k) - &iy(k)).collect();
        let mut cache: BTreeMap<(usize, u32), GenPoly> = BTreeMap::new();
        let mut power = |idx: usize, e: u32| -> GenPoly {
            cache
                .entry((idx, e))
                .or_insert_with(|| if idx < r { zk[idx].pow(e) } else { wk[idx - r].pow(e) })
                .clone()
        };
        let mut out = GenPoly::zero(r);
        for (m, c) in &self.terms {
            let mut t = GenPoly::constant(r, c.clone());
            for (idx, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = &t * &power(idx, e);
                }
            }
            out = &out + &t;
        }
        let re = GenPoly::from_terms(
            r,
            out.terms.iter().map(|(m, c)| (m.clone(), GaussianRational::real(c.re.clone()))),
        );
        let im = GenPoly::from_terms(
            r,
            out.terms.iter().map(|(m, c)| (m.clone(), GaussianRational::real(c.im.clone()))),
        );
        RealPolyPair { re_part: re, im_part: im }
    }

    /// Numeric value at a point given as `(z_1..z_r, w_1..w_r)`.
    pub fn evaluate(&self, point: &[Complex64]) -> Complex64 {
        assert_eq!(point.len(), self.num_vars(), "point length must be 2r");
        self.terms
            .iter()
            .map(|(m, c)| {
                m.0.iter()
                    .zip(point)
                    .fold(c.to_complex64(), |acc, (&e, v)| acc * v.powu(e))
            })
            .sum()
    }

    pub fn max_coeff_abs(&self) -> f64 {
        self.terms.values().map(|c| c.to_complex64().norm()).fold(0.0, f64::max)
    }

    pub fn map_coeffs(&self, f: impl Fn(&GaussianRational) -> GaussianRational) -> GenPoly {
        GenPoly::from_terms(self.num_pairs, self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Render with explicit variable names (length `2r`).
    pub fn display_with(&self, names: &[String]) -> String {
        assert_eq!(names.len(), self.num_vars());
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.sorted_terms(MonomialOrder::GrevLex).into_iter().enumerate() {
            let vars: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { names[i].clone() } else { format!("{}^{}", names[i], e) })
                .collect();
            let negative_real = c.im.is_zero() && c.re < num_rational::BigRational::zero();
            let negative_imag = c.re.is_zero() && c.im < num_rational::BigRational::zero();
            let (sign, mag) = if negative_real || negative_imag { ('-', -c) } else { ('+', c.clone()) };
            if k == 0 {
                if sign == '-' {
                    out.push('-');
                }
            } else {
                out.push(' ');
                out.push(sign);
                out.push(' ');
            }
            let coeff = if !mag.re.is_zero() && !mag.im.is_zero() {
                format!("({mag})")
            } else {
                mag.to_string()
            };
            if vars.is_empty() {
                out.push_str(&coeff);
            } else if mag.is_one() {
                out.push_str(&vars.join("*"));
            } else {
                out.push_str(&coeff);
                out.push('*');
                out.push_str(&vars.join("*"));
            }
        }
        out
    }

    /// Variable names in input syntax: `z`/`conj(z)` for one pair,
    /// `z1`/`conj(z1)`… otherwise.
    pub fn input_var_names(num_pairs: usize) -> Vec<String> {
        let z: Vec<String> = if num_pairs == 1 {
            vec!["z".into()]
        } else {
            (1..=num_pairs).map(|k| format!("z{k}")).collect()
        };
        let w = z.iter().map(|n| format!("conj({n})")).collect::<Vec<_>>();
        z.into_iter().chain(w).collect()
    }

    /// Names `x_k`, `y_k` for polynomials produced by [`GenPoly::to_real_coords`].
    pub fn real_var_names(num_pairs: usize) -> Vec<String> {
        if num_pairs == 1 {
            return vec!["x".into(), "y".into()];
        }
        (1..=num_pairs)
            .map(|k| format!("x{k}"))
            .chain((1..=num_pairs).map(|k| format!("y{k}")))
            .collect()
    }
}

impl fmt::Display for GenPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&GenPoly::input_var_names(self.num_pairs)))
    }
}

impl<'a> Add<&'a GenPoly> for &'a GenPoly {
    type Output = GenPoly;
    fn add(self, rhs: &GenPoly) -> GenPoly {
        assert_eq!(self.num_pairs, rhs.num_pairs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c);
        }
        out
    }
}

impl<'a> Sub<&'a GenPoly> for &'a GenPoly {
    type Output = GenPoly;
    fn sub(self, rhs: &GenPoly) -> GenPoly {
        assert_eq!(self.num_pairs, rhs.num_pairs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), &-c);
        }
        out
    }
}

impl<'a> Mul<&'a GenPoly> for &'a GenPoly {
    type Output = GenPoly;
    fn mul(self, rhs: &GenPoly) -> GenPoly {
        assert_eq!(self.num_pairs, rhs.num_pairs);
        let mut out = GenPoly::zero(self.num_pairs);
        for (m, c) in &self.terms {
            out.add_scaled_shifted(c, m, rhs);
        }
        out
    }
}

impl Neg for &GenPoly {
    type Output = GenPoly;
    fn neg(self) -> GenPoly {
        self.scale(&-GaussianRational::one())
    }
}

/// Real and imaginary parts of a generalized polynomial after the
/// substitution `z = x + iy`, `w = x - iy`. Both parts carry rational
/// coefficients in the variables `(x_1..x_r, y_1..y_r)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealPolyPair {
    pub re_part: GenPoly,
    pub im_part: GenPoly,
}

impl RealPolyPair {
    /// `re_part + i * im_part` as a single complex polynomial in `(x, y)`.
    pub fn recombine(&self) -> GenPoly {
        &self.re_part + &self.im_part.scale(&GaussianRational::i())
    }
}
