//! Buchberger's algorithm, multivariate division and standard monomials.

use std::collections::{BTreeSet, HashSet, VecDeque};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::gaussian::GaussianRational;
use crate::poly::{GenPoly, Monomial, MonomialOrder};

/// A reduced Gröbner basis: monic generators, no term of any generator
/// divisible by another generator's leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    generators: Vec<GenPoly>,
    order: MonomialOrder,
    leading_terms: Vec<Monomial>,
    num_pairs: usize,
}

impl GroebnerBasis {
    pub fn generators(&self) -> &[GenPoly] {
        &self.generators
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn leading_terms(&self) -> &[Monomial] {
        &self.leading_terms
    }

    pub fn num_pairs(&self) -> usize {
        self.num_pairs
    }

    /// The basis is `{1}`, i.e. the variety is empty.
    pub fn is_unit(&self) -> bool {
        self.leading_terms.iter().any(Monomial::is_one)
    }

    fn divisor_of(&self, m: &Monomial) -> Option<usize> {
        self.leading_terms.iter().position(|lt| lt.divides(m))
    }
}

/// Standard monomials of a zero-dimensional ideal, ascending in the basis
/// order. An empty list means the ideal is the whole ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientBasis {
    monomials: Vec<Monomial>,
}

impl QuotientBasis {
    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn dimension(&self) -> usize {
        self.monomials.len()
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.monomials.iter().position(|b| b == m)
    }
}

fn s_polynomial(f: &GenPoly, g: &GenPoly, order: MonomialOrder) -> GenPoly {
    let (fm, fc) = f.leading_term(order).expect("nonzero");
    let (gm, gc) = g.leading_term(order).expect("nonzero");
    let l = fm.lcm(gm);
    let mut s = GenPoly::zero(f.num_pairs());
    s.add_scaled_shifted(&fc.inv(), &fm.quotient_of(&l).unwrap(), f);
    s.add_scaled_shifted(&-gc.inv(), &gm.quotient_of(&l).unwrap(), g);
    s
}

/// Full multivariate division remainder of `p` by monic `divisors`.
fn reduce_by(p: &GenPoly, divisors: &[GenPoly], lts: &[Monomial], order: MonomialOrder) -> GenPoly {
    let mut rest = p.clone();
    let mut rem = GenPoly::zero(p.num_pairs());
    while let Some((m, c)) = rest.leading_term(order).map(|(m, c)| (m.clone(), c.clone())) {
        match lts.iter().position(|lt| lt.divides(&m)) {
            Some(k) => {
                let shift = lts[k].quotient_of(&m).unwrap();
                rest.add_scaled_shifted(&-c, &shift, &divisors[k]);
            }
            None => {
                rest.add_term(m.clone(), &-c.clone());
                rem.add_term(m, &c);
            }
        }
    }
    rem
}

/// Reduced Gröbner basis under graded reverse lex.
pub fn buchberger(generators: &[GenPoly]) -> Result<GroebnerBasis> {
    buchberger_with_order(generators, MonomialOrder::GrevLex)
}

/// Reduced Gröbner basis of the ideal spanned by `generators` under
/// `order`, using the normal selection strategy and Buchberger's coprime
/// and chain criteria.
pub fn buchberger_with_order(generators: &[GenPoly], order: MonomialOrder) -> Result<GroebnerBasis> {
    let num_pairs = generators
        .first()
        .map(GenPoly::num_pairs)
        .ok_or_else(|| Error::InvalidInput("empty generator list".into()))?;
    if generators.iter().any(|g| g.num_pairs() != num_pairs) {
        return Err(Error::Arity("generators have different variable counts".into()));
    }
    let mut basis: Vec<GenPoly> =
        generators.iter().filter(|g| !g.is_zero()).map(|g| g.monic(order)).collect();
    if basis.is_empty() {
        return Err(Error::InvalidInput("all generators are zero".into()));
    }
    let mut lts: Vec<Monomial> = basis.iter().map(|g| g.leading_monomial(order).unwrap().clone()).collect();
    if lts.iter().any(Monomial::is_one) {
        return Ok(unit_basis(num_pairs, order));
    }

    let mut pending: BTreeSet<(usize, usize)> = BTreeSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pending.insert((i, j));
        }
    }

    while let Some(&(i, j)) = pending
        .iter()
        .min_by(|a, b| order.cmp(&lts[a.0].lcm(&lts[a.1]), &lts[b.0].lcm(&lts[b.1])).then(a.cmp(b)))
    {
        pending.remove(&(i, j));
        if lts[i].is_coprime(&lts[j]) {
            continue;
        }
        let l = lts[i].lcm(&lts[j]);
        let key = |a: usize, b: usize| (a.min(b), a.max(b));
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && lts[k].divides(&l)
                && !pending.contains(&key(i, k))
                && !pending.contains(&key(j, k))
        });
        if chain {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j], order);
        let r = reduce_by(&s, &basis, &lts, order);
        if r.is_zero() {
            continue;
        }
        let r = r.monic(order);
        let lm = r.leading_monomial(order).unwrap().clone();
        if lm.is_one() {
            return Ok(unit_basis(num_pairs, order));
        }
        let n = basis.len();
        basis.push(r);
        lts.push(lm);
        for k in 0..n {
            pending.insert((k, n));
        }
    }

    Ok(reduce_basis(basis, lts, order, num_pairs))
}

fn unit_basis(num_pairs: usize, order: MonomialOrder) -> GroebnerBasis {
    GroebnerBasis {
        generators: vec![GenPoly::one(num_pairs)],
        order,
        leading_terms: vec![Monomial::one(2 * num_pairs)],
        num_pairs,
    }
}

fn reduce_basis(basis: Vec<GenPoly>, lts: Vec<Monomial>, order: MonomialOrder, num_pairs: usize) -> GroebnerBasis {
    // minimal: drop generators whose leading monomial is divisible by another's
    let mut keep: Vec<usize> = Vec::new();
    for i in 0..basis.len() {
        let redundant = (0..basis.len()).any(|j| {
            j != i && lts[j].divides(&lts[i]) && (lts[j] != lts[i] || j < i)
        });
        if !redundant {
            keep.push(i);
        }
    }
    let min_basis: Vec<GenPoly> = keep.iter().map(|&i| basis[i].clone()).collect();
    let min_lts: Vec<Monomial> = keep.iter().map(|&i| lts[i].clone()).collect();

    let mut reduced = Vec::with_capacity(min_basis.len());
    for (k, g) in min_basis.iter().enumerate() {
        let others: Vec<GenPoly> = min_basis.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, p)| p.clone()).collect();
        let other_lts: Vec<Monomial> = min_lts.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, m)| m.clone()).collect();
        let lead = GenPoly::monomial(num_pairs, min_lts[k].clone());
        let tail = g - &lead;
        let tail = reduce_by(&tail, &others, &other_lts, order);
        reduced.push((min_lts[k].clone(), &lead + &tail));
    }
    reduced.sort_by(|a, b| order.cmp(&a.0, &b.0));
    GroebnerBasis {
        leading_terms: reduced.iter().map(|(m, _)| m.clone()).collect(),
        generators: reduced.into_iter().map(|(_, g)| g).collect(),
        order,
        num_pairs,
    }
}

/// Remainder of `p` under division by the basis; no remaining term is
/// divisible by a leading monomial of `gb`, and `p - result` lies in the ideal.
pub fn normal_form(p: &GenPoly, gb: &GroebnerBasis) -> GenPoly {
    reduce_by(p, &gb.generators, &gb.leading_terms, gb.order)
}

/// Same remainder as [`normal_form`], but always reduces the smallest
/// reducible term first. Used to check confluence.
pub fn normal_form_bottom_up(p: &GenPoly, gb: &GroebnerBasis) -> GenPoly {
    let order = gb.order;
    let mut cur = p.clone();
    loop {
        let target = cur
            .terms()
            .filter_map(|(m, c)| gb.divisor_of(m).map(|k| (m.clone(), c.clone(), k)))
            .min_by(|a, b| order.cmp(&a.0, &b.0));
        let Some((m, c, k)) = target else { return cur };
        let shift = gb.leading_terms[k].quotient_of(&m).unwrap();
        cur.add_scaled_shifted(&-c, &shift, &gb.generators[k]);
    }
}

pub fn is_zero_dimensional(gb: &GroebnerBasis) -> bool {
    if gb.is_unit() {
        return true;
    }
    let nvars = 2 * gb.num_pairs;
    (0..nvars).all(|v| gb.leading_terms.iter().any(|lt| matches!(lt.pure_power(), Some((k, _)) if k == v)))
}

/// Monomials outside the leading-term ideal, ascending in the basis order.
pub fn standard_monomials(gb: &GroebnerBasis) -> Result<QuotientBasis> {
    if gb.is_unit() {
        return Ok(QuotientBasis { monomials: Vec::new() });
    }
    if !is_zero_dimensional(gb) {
        return Err(Error::NotZeroDimensional);
    }
    let nvars = 2 * gb.num_pairs;
    // the standard set is closed under division, so grow it from 1
    let mut seen: HashSet<Monomial> = HashSet::new();
    let mut queue = VecDeque::from([Monomial::one(nvars)]);
    let mut out = Vec::new();
    while let Some(m) = queue.pop_front() {
        if !seen.insert(m.clone()) || gb.divisor_of(&m).is_some() {
            continue;
        }
        for v in 0..nvars {
            queue.push_back(m.mul(&Monomial::var(nvars, v)));
        }
        out.push(m);
    }
    out.sort_by(|a, b| gb.order.cmp(a, b));
    Ok(QuotientBasis { monomials: out })
}

/// Coordinates of a reduced polynomial in the standard-monomial basis.
pub fn coordinates(reduced: &GenPoly, basis: &QuotientBasis) -> Vec<GaussianRational> {
    let mut v = vec![GaussianRational::zero(); basis.dimension()];
    for (m, c) in reduced.terms() {
        let k = basis.position(m).expect("term outside the standard monomials");
        v[k] = c.clone();
    }
    v
}

/// Ideal membership test.
pub fn contains(gb: &GroebnerBasis, p: &GenPoly) -> bool {
    normal_form(p, gb).is_zero()
}

/// `true` if every generator has leading coefficient one.
pub fn is_monic(gb: &GroebnerBasis) -> bool {
    gb.generators.iter().all(|g| g.leading_term(gb.order).map(|(_, c)| c.is_one()).unwrap_or(false))
}
