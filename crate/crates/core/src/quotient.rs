//! Multiplication matrices and traces on the quotient algebra `C[z,w]/I`.

use std::collections::HashMap;
use std::sync::Mutex;

use num_traits::Zero;

use crate::gaussian::GaussianRational;
use crate::groebner::{coordinates, normal_form, standard_monomials, GroebnerBasis, QuotientBasis};
use crate::error::Result;
use crate::matrix::Matrix;
use crate::poly::{GenPoly, Monomial};

/// Matrix of `[g] -> [f g]` in the standard-monomial basis. Column `j`
/// holds the coordinates of `normal_form(f * basis[j])`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultMatrix {
    pub entries: Matrix,
    pub basis: QuotientBasis,
    pub multiplier: GenPoly,
}

pub fn mult_matrix(f: &GenPoly, basis: &QuotientBasis, gb: &GroebnerBasis) -> MultMatrix {
    let n = basis.dimension();
    let cols: Vec<Vec<GaussianRational>> = basis
        .monomials()
        .iter()
        .map(|b| coordinates(&normal_form(&f.mul_monomial(b), gb), basis))
        .collect();
    MultMatrix {
        entries: Matrix::from_fn(n, |i, j| cols[j][i].clone()),
        basis: basis.clone(),
        multiplier: f.clone(),
    }
}

/// `Tr(M_f)`: reduce `f * b_j` for each basis monomial and read off the
/// coefficient of `b_j`.
pub fn trace_of(f: &GenPoly, basis: &QuotientBasis, gb: &GroebnerBasis) -> GaussianRational {
    let mut t = GaussianRational::zero();
    for b in basis.monomials() {
        t += &normal_form(&f.mul_monomial(b), gb).coeff(b);
    }
    t
}

/// The quotient algebra with cached variable matrices and the trace
/// functional `τ_k = Tr(M_{b_k})`, so `Tr(M_f) = Σ_k coord_k([f]) τ_k`.
#[derive(Debug)]
pub struct QuotientAlgebra {
    gb: GroebnerBasis,
    basis: QuotientBasis,
    var_mats: Vec<Matrix>,
    traces: Vec<GaussianRational>,
    coord_cache: Mutex<HashMap<Monomial, Vec<GaussianRational>>>,
}

impl QuotientAlgebra {
    /// Fails with `NotZeroDimensional` when the quotient is infinite.
    pub fn new(gb: GroebnerBasis) -> Result<Self> {
        let basis = standard_monomials(&gb)?;
        let r = gb.num_pairs();
        let var_mats: Vec<Matrix> =
            (0..2 * r).map(|v| mult_matrix(&GenPoly::var(r, v), &basis, &gb).entries).collect();
        let mut cache = HashMap::new();
        for (k, b) in basis.monomials().iter().enumerate() {
            let mut e = vec![GaussianRational::zero(); basis.dimension()];
            e[k] = GaussianRational::from(1);
            cache.insert(b.clone(), e);
        }
        let mut qa = QuotientAlgebra { gb, basis, var_mats, traces: Vec::new(), coord_cache: Mutex::new(cache) };
        qa.traces = qa
            .basis
            .monomials()
            .iter()
            .map(|b| {
                let mut t = GaussianRational::zero();
                for (j, bj) in qa.basis.monomials().iter().enumerate() {
                    t += &qa.monomial_coords(&b.mul(bj))[j];
                }
                t
            })
            .collect();
        Ok(qa)
    }

    pub fn groebner(&self) -> &GroebnerBasis {
        &self.gb
    }

    pub fn basis(&self) -> &QuotientBasis {
        &self.basis
    }

    pub fn dimension(&self) -> usize {
        self.basis.dimension()
    }

    pub fn num_pairs(&self) -> usize {
        self.gb.num_pairs()
    }

    /// Multiplication matrix of the flat variable index `v`.
    pub fn var_matrix(&self, v: usize) -> &Matrix {
        &self.var_mats[v]
    }

    pub fn trace_functional(&self) -> &[GaussianRational] {
        &self.traces
    }

    /// Coordinates of `[m]`, computed as `M_{x_v} · coords(m / x_v)`.
    pub fn monomial_coords(&self, m: &Monomial) -> Vec<GaussianRational> {
        if let Some(v) = self.coord_cache.lock().unwrap().get(m) {
            return v.clone();
        }
        if m.is_one() {
            // only reachable when the quotient is zero
            return vec![GaussianRational::zero(); self.dimension()];
        }
        let v = m.0.iter().position(|&e| e > 0).unwrap();
        let mut prev = m.clone();
        prev.0[v] -= 1;
        let out = self.var_mats[v].mul_vec(&self.monomial_coords(&prev));
        self.coord_cache.lock().unwrap().insert(m.clone(), out.clone());
        out
    }

    pub fn coords(&self, f: &GenPoly) -> Vec<GaussianRational> {
        let mut acc = vec![GaussianRational::zero(); self.dimension()];
        for (m, c) in f.terms() {
            for (a, x) in acc.iter_mut().zip(self.monomial_coords(m)) {
                if !x.is_zero() {
                    *a += &(c * &x);
                }
            }
        }
        acc
    }

    /// `Tr(M_f)` through the trace functional.
    pub fn trace(&self, f: &GenPoly) -> GaussianRational {
        let mut t = GaussianRational::zero();
        for (c, tau) in self.coords(f).iter().zip(&self.traces) {
            if !c.is_zero() && !tau.is_zero() {
                t += &(c * tau);
            }
        }
        t
    }

    pub fn mult_matrix(&self, f: &GenPoly) -> MultMatrix {
        mult_matrix(f, &self.basis, &self.gb)
    }
}
