//! The real trace form `K_R^ξ(f,g) = Tr(M_{ξfg})` and the Hermitian trace
//! form `K_C^ξ(f,g) = Tr(M_{ξ f g*})`, with exact signatures.
//!
//! Signatures come from the exact characteristic polynomial. A Hermitian
//! matrix has only real eigenvalues, so Descartes' rule of signs counts the
//! positive and negative ones exactly.

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gaussian::GaussianRational;
use crate::groebner::buchberger;
use crate::matrix::Matrix;
use crate::poly::{GenPoly, Monomial};
use crate::quotient::QuotientAlgebra;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermitianMatrix {
    pub entries: Matrix,
    pub basis_labels: Vec<Monomial>,
}

impl HermitianMatrix {
    /// Wraps `entries` after checking `entries[i][j] = conj(entries[j][i])`.
    pub fn new(entries: Matrix, basis_labels: Vec<Monomial>) -> Result<Self> {
        if !entries.is_hermitian() {
            return Err(Error::NotHermitian);
        }
        Ok(Self { entries, basis_labels })
    }

    pub fn dim(&self) -> usize {
        self.entries.dim()
    }
}

/// Real symmetric form matrix; entries are stored as Gaussian rationals with
/// zero imaginary part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricMatrix {
    pub entries: Matrix,
    pub basis_labels: Vec<Monomial>,
}

impl SymmetricMatrix {
    pub fn entry(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[(i, j)].re
    }

    pub fn dim(&self) -> usize {
        self.entries.dim()
    }

    pub fn as_hermitian(&self) -> HermitianMatrix {
        HermitianMatrix { entries: self.entries.clone(), basis_labels: self.basis_labels.clone() }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Signature {
    #[serde(rename = "pos")]
    pub n_pos: usize,
    #[serde(rename = "neg")]
    pub n_neg: usize,
    #[serde(rename = "zero")]
    pub n_zero: usize,
}

impl Signature {
    pub fn rank(&self) -> usize {
        self.n_pos + self.n_neg
    }

    pub fn dim(&self) -> usize {
        self.n_pos + self.n_neg + self.n_zero
    }

    /// `n_pos - n_neg`.
    pub fn value(&self) -> i64 {
        self.n_pos as i64 - self.n_neg as i64
    }
}

fn check_star_symmetric(xi: &GenPoly) -> Result<()> {
    if xi.is_star_symmetric() {
        Ok(())
    } else {
        Err(Error::NotStarSymmetric)
    }
}

/// `K_C^ξ` over the standard-monomial basis of `qa`.
pub fn hermitian_killing_form(qa: &QuotientAlgebra, xi: &GenPoly) -> Result<HermitianMatrix> {
    hermitian_form_on(qa, xi, qa.basis().monomials())
}

/// `K_C^ξ` restricted to the span of `labels` (any monomials, not
/// necessarily standard).
pub fn hermitian_form_on(qa: &QuotientAlgebra, xi: &GenPoly, labels: &[Monomial]) -> Result<HermitianMatrix> {
    check_star_symmetric(xi)?;
    let n = labels.len();
    let mut m = Matrix::zeros(n);
    for i in 0..n {
        for j in i..n {
            let prod = xi.mul_monomial(&labels[i].mul(&labels[j].star()));
            let t = qa.trace(&prod);
            if i == j {
                m[(i, i)] = t;
            } else {
                m[(j, i)] = t.conj();
                m[(i, j)] = t;
            }
        }
    }
    debug_assert!(m.is_hermitian());
    // only the upper triangle is traced; spot-check Tr(M_{f*}) = conj Tr(M_f)
    if n > 1 {
        let mirrored = qa.trace(&xi.mul_monomial(&labels[1].mul(&labels[0].star())));
        if mirrored != m[(1, 0)] {
            return Err(Error::NotHermitian);
        }
    }
    HermitianMatrix::new(m, labels.to_vec())
}

/// `K_R^ξ` for a system with rational coefficients in `(x_1..x_r, y_1..y_r)`.
pub fn real_killing_form(real_generators: &[GenPoly], xi_real: &GenPoly) -> Result<SymmetricMatrix> {
    let real_coeffs = |p: &GenPoly| p.terms().all(|(_, c)| c.is_real());
    if !real_generators.iter().all(real_coeffs) || !real_coeffs(xi_real) {
        return Err(Error::InvalidInput("real trace form needs rational coefficients".into()));
    }
    let qa = QuotientAlgebra::new(buchberger(real_generators)?)?;
    real_form_on(&qa, xi_real, qa.basis().monomials())
}

/// `K_R^ξ` restricted to the span of `labels`.
pub fn real_form_on(qa: &QuotientAlgebra, xi: &GenPoly, labels: &[Monomial]) -> Result<SymmetricMatrix> {
    let n = labels.len();
    let mut m = Matrix::zeros(n);
    for i in 0..n {
        for j in i..n {
            let t = qa.trace(&xi.mul_monomial(&labels[i].mul(&labels[j])));
            m[(i, j)] = t.clone();
            m[(j, i)] = t;
        }
    }
    Ok(SymmetricMatrix { entries: m, basis_labels: labels.to_vec() })
}

/// Coefficients of `det(λI - M)`, ascending.
pub fn char_poly(m: &Matrix) -> Vec<GaussianRational> {
    m.char_poly()
}

fn sign_variations<'a>(coeffs: impl Iterator<Item = &'a BigRational>) -> usize {
    let mut last: Option<bool> = None;
    let mut count = 0;
    for c in coeffs.filter(|c| !c.is_zero()) {
        let pos = c.is_positive();
        if last.is_some_and(|l| l != pos) {
            count += 1;
        }
        last = Some(pos);
    }
    count
}

/// Inertia of a polynomial with only real roots, from its ascending
/// coefficients.
pub fn inertia_from_char_poly(coeffs: &[GaussianRational]) -> Result<Signature> {
    if coeffs.iter().any(|c| !c.is_real()) {
        return Err(Error::NotHermitian);
    }
    let deg = coeffs.len().saturating_sub(1);
    let n_zero = coeffs.iter().position(|c| !c.is_zero()).unwrap_or(deg);
    let tail: Vec<BigRational> = coeffs[n_zero..].iter().map(|c| c.re.clone()).collect();
    let n_pos = sign_variations(tail.iter());
    let flipped: Vec<BigRational> =
        tail.iter().enumerate().map(|(j, c)| if j % 2 == 1 { -c.clone() } else { c.clone() }).collect();
    let n_neg = sign_variations(flipped.iter());
    let sig = Signature { n_pos, n_neg, n_zero };
    debug_assert_eq!(sig.dim(), deg);
    Ok(sig)
}

pub fn signature(h: &HermitianMatrix) -> Result<Signature> {
    if !h.entries.is_hermitian() {
        return Err(Error::NotHermitian);
    }
    inertia_from_char_poly(&h.entries.char_poly())
}

pub fn symmetric_signature(s: &SymmetricMatrix) -> Result<Signature> {
    signature(&s.as_hermitian())
}

/// Leading principal minors of a Hermitian matrix (real numbers).
pub fn leading_principal_minors(h: &HermitianMatrix) -> Vec<BigRational> {
    h.entries.leading_principal_minors().into_iter().map(|c| c.re).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn g(re: i64, im: i64) -> GaussianRational {
        GaussianRational::from_ints(re, im)
    }

    #[test]
    fn diagonal_signatures() {
        let d = Matrix::from_rows(vec![vec![g(1, 0), g(0, 0)], vec![g(0, 0), g(-1, 0)]]);
        let h = HermitianMatrix::new(d, vec![]).unwrap();
        assert_eq!(signature(&h).unwrap(), Signature { n_pos: 1, n_neg: 1, n_zero: 0 });
        let z = HermitianMatrix::new(Matrix::zeros(3), vec![]).unwrap();
        assert_eq!(signature(&z).unwrap(), Signature { n_pos: 0, n_neg: 0, n_zero: 3 });
        let e = HermitianMatrix::new(Matrix::zeros(0), vec![]).unwrap();
        assert_eq!(signature(&e).unwrap(), Signature::default());
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = Matrix::from_rows(vec![vec![g(1, 0), g(1, 1)], vec![g(1, 1), g(2, 0)]]);
        assert_eq!(HermitianMatrix::new(m.clone(), vec![]), Err(Error::NotHermitian));
        let bad = HermitianMatrix { entries: m, basis_labels: vec![] };
        assert_eq!(signature(&bad), Err(Error::NotHermitian));
    }

    #[test]
    fn semidefinite_with_kernel() {
        // [[1, i], [-i, 1]] has eigenvalues 0 and 2
        let m = Matrix::from_rows(vec![vec![g(1, 0), g(0, 1)], vec![g(0, -1), g(1, 0)]]);
        let h = HermitianMatrix::new(m, vec![]).unwrap();
        assert_eq!(signature(&h).unwrap(), Signature { n_pos: 1, n_neg: 0, n_zero: 1 });
    }

    #[test]
    fn origin_only_gives_unit_form() {
        let sys = [GenPoly::z(1, 0), GenPoly::w(1, 0)];
        let qa = QuotientAlgebra::new(buchberger(&sys).unwrap()).unwrap();
        let h = hermitian_killing_form(&qa, &GenPoly::one(1)).unwrap();
        assert_eq!(h.entries, Matrix::identity(1));
        let s = real_killing_form(&[GenPoly::var(1, 0), GenPoly::var(1, 1)], &GenPoly::one(1)).unwrap();
        assert_eq!(s.entries, Matrix::identity(1));
        assert!(s.entry(0, 0).is_one());
    }

    #[test]
    fn weight_must_be_star_symmetric() {
        let sys = [GenPoly::z(1, 0), GenPoly::w(1, 0)];
        let qa = QuotientAlgebra::new(buchberger(&sys).unwrap()).unwrap();
        assert_eq!(hermitian_killing_form(&qa, &GenPoly::z(1, 0)), Err(Error::NotStarSymmetric));
        let zw = &GenPoly::z(1, 0) * &GenPoly::w(1, 0);
        assert!(hermitian_killing_form(&qa, &zw).is_ok());
    }
}
