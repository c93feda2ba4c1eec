//! Dense square matrices over Q(i).

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::gaussian::GaussianRational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    n: usize,
    data: Vec<GaussianRational>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![GaussianRational::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = GaussianRational::one();
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> GaussianRational) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self { n, data }
    }

    /// Build from row vectors; panics if not square.
    pub fn from_rows(rows: Vec<Vec<GaussianRational>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        Self { n, data: rows.into_iter().flatten().collect() }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> Vec<Vec<GaussianRational>> {
        self.data.chunks(self.n.max(1)).take(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<GaussianRational> {
        (0..self.n).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn trace(&self) -> GaussianRational {
        let mut t = GaussianRational::zero();
        for i in 0..self.n {
            t += &self[(i, i)];
        }
        t
    }

    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)].clone())
    }

    pub fn is_hermitian(&self) -> bool {
        (0..self.n).all(|i| (i..self.n).all(|j| self[(i, j)] == self[(j, i)].conj()))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.n, other.n);
        Matrix { n: self.n, data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.n, other.n);
        Matrix { n: self.n, data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, c: &GaussianRational) -> Matrix {
        Matrix { n: self.n, data: self.data.iter().map(|a| a * c).collect() }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[GaussianRational]) -> Vec<GaussianRational> {
        assert_eq!(v.len(), self.n);
        (0..self.n)
            .map(|i| {
                let mut acc = GaussianRational::zero();
                for (j, x) in v.iter().enumerate() {
                    if !x.is_zero() {
                        let a = &self[(i, j)];
                        if !a.is_zero() {
                            acc += &(a * x);
                        }
                    }
                }
                acc
            })
            .collect()
    }

    /// Leading principal `k×k` submatrix.
    pub fn leading(&self, k: usize) -> Matrix {
        Matrix::from_fn(k, |i, j| self[(i, j)].clone())
    }

    pub fn submatrix(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(idx.len(), |i, j| self[(idx[i], idx[j])].clone())
    }

    /// Determinant by Gaussian elimination over the field.
    pub fn det(&self) -> GaussianRational {
        let n = self.n;
        let mut a = self.clone();
        let mut det = GaussianRational::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[(r, col)].is_zero()) else {
                return GaussianRational::zero();
            };
            if p != col {
                a.swap_rows(p, col);
                det = -det;
            }
            let pivot = a[(col, col)].clone();
            det = &det * &pivot;
            let inv = pivot.inv();
            for r in col + 1..n {
                if a[(r, col)].is_zero() {
                    continue;
                }
                let f = &a[(r, col)] * &inv;
                for c in col..n {
                    let t = &f * &a[(col, c)];
                    a[(r, c)] -= &t;
                }
            }
        }
        det
    }

    /// Determinants of the leading principal minors of orders `1..=n`.
    pub fn leading_principal_minors(&self) -> Vec<GaussianRational> {
        (1..=self.n).map(|k| self.leading(k).det()).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.n {
            self.data.swap(a * self.n + j, b * self.n + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for i in 0..self.n {
            self.data.swap(i * self.n + a, i * self.n + b);
        }
    }

    /// Similar upper Hessenberg form via elementary eliminations.
    pub fn hessenberg(&self) -> Matrix {
        let n = self.n;
        let mut h = self.clone();
        for m in 0..n.saturating_sub(2) {
            let Some(p) = (m + 1..n).find(|&r| !h[(r, m)].is_zero()) else {
                continue;
            };
            if p != m + 1 {
                h.swap_rows(p, m + 1);
                h.swap_cols(p, m + 1);
            }
            let inv = h[(m + 1, m)].inv();
            for k in m + 2..n {
                if h[(k, m)].is_zero() {
                    continue;
                }
                let f = &h[(k, m)] * &inv;
                // row_k -= f * row_{m+1}
                for c in 0..n {
                    let t = &f * &h[(m + 1, c)];
                    h[(k, c)] -= &t;
                }
                // col_{m+1} += f * col_k
                for r in 0..n {
                    let t = &f * &h[(r, k)];
                    h[(r, m + 1)] += &t;
                }
            }
        }
        h
    }

    /// Coefficients of `det(λI - M)`, ascending: `c[0] + c[1] λ + … + λ^n`.
    ///
    /// Denominators are cleared first (`D M` has Gaussian-integer entries)
    /// and the Berkowitz recurrence runs without division; then
    /// `c_k(M) = c_k(D M) / D^{n-k}`.
    pub fn char_poly(&self) -> Vec<GaussianRational> {
        let n = self.n;
        let mut d = BigInt::one();
        for c in &self.data {
            d = d.lcm(c.re.denom()).lcm(c.im.denom());
        }
        let a: Vec<Complex<BigInt>> = self
            .data
            .iter()
            .map(|c| {
                let int = |r: &BigRational| r.numer() * (&d / r.denom());
                Complex::new(int(&c.re), int(&c.im))
            })
            .collect();
        let at = |i: usize, j: usize| &a[i * n + j];
        // descending coefficients of the char poly of the leading r×r block
        let mut p: Vec<Complex<BigInt>> = vec![Complex::one()];
        for r in 1..=n {
            let k = r - 1;
            let mut col = Vec::with_capacity(r + 1);
            col.push(Complex::one());
            col.push(-at(k, k).clone());
            let mut v: Vec<Complex<BigInt>> = (0..k).map(|i| at(i, k).clone()).collect();
            for _ in 2..=r {
                let mut dot = Complex::zero();
                for (j, x) in v.iter().enumerate() {
                    dot = dot + at(k, j) * x;
                }
                col.push(-dot);
                v = (0..k)
                    .map(|i| {
                        let mut acc = Complex::zero();
                        for (j, x) in v.iter().enumerate() {
                            acc = acc + at(i, j) * x;
                        }
                        acc
                    })
                    .collect();
            }
            p = (0..=r)
                .map(|i| {
                    let mut acc = Complex::zero();
                    for j in 0..=i.min(r - 1) {
                        acc = acc + &col[i - j] * &p[j];
                    }
                    acc
                })
                .collect();
        }
        let mut scale = BigInt::one();
        let mut out = Vec::with_capacity(n + 1);
        // p[n - k] is the coefficient of λ^k; walk k from n down
        for k in (0..=n).rev() {
            let c = &p[n - k];
            out.push(GaussianRational::new(
                BigRational::new(c.re.clone(), scale.clone()),
                BigRational::new(c.im.clone(), scale.clone()),
            ));
            scale *= &d;
        }
        out.reverse();
        out
    }

    /// Same polynomial as [`Matrix::char_poly`], computed through a similar
    /// Hessenberg form over the field.
    pub fn char_poly_hessenberg(&self) -> Vec<GaussianRational> {
        let n = self.n;
        let h = self.hessenberg();
        // p[k] = char poly of the leading k×k block of h
        let mut p: Vec<Vec<GaussianRational>> = Vec::with_capacity(n + 1);
        p.push(vec![GaussianRational::one()]);
        for k in 1..=n {
            let hkk = &h[(k - 1, k - 1)];
            // (λ - h_kk) p_{k-1}
            let prev = &p[k - 1];
            let mut cur = vec![GaussianRational::zero(); k + 1];
            for (d, c) in prev.iter().enumerate() {
                cur[d + 1] += c;
                cur[d] -= &(hkk * c);
            }
            let mut prod = GaussianRational::one();
            for i in 1..k {
                // prod = h_{k,k-1} h_{k-1,k-2} ... h_{k-i+1,k-i}  (1-indexed)
                prod = &prod * &h[(k - i, k - i - 1)];
                if prod.is_zero() {
                    break;
                }
                let coef = &prod * &h[(k - i - 1, k - 1)];
                if coef.is_zero() {
                    continue;
                }
                for (d, c) in p[k - i - 1].iter().enumerate() {
                    cur[d] -= &(&coef * c);
                }
            }
            p.push(cur);
        }
        p.pop().unwrap()
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = GaussianRational;
    fn index(&self, (i, j): (usize, usize)) -> &GaussianRational {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut GaussianRational {
        &mut self.data[i * self.n + j]
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = self.rows().iter().map(|r| r.iter().map(|c| c.to_string()).collect()).collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        for row in cells {
            let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            writeln!(f, "[ {} ]", line.join("  "))?;
        }
        Ok(())
    }
}

/// Evaluate an ascending coefficient list at `x`.
pub fn eval_poly(coeffs: &[GaussianRational], x: &GaussianRational) -> GaussianRational {
    let mut acc = GaussianRational::zero();
    for c in coeffs.iter().rev() {
        acc = &(&acc * x) + c;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(re: i64, im: i64) -> GaussianRational {
        GaussianRational::from_ints(re, im)
    }

    fn from_ints(rows: &[&[(i64, i64)]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&(a, b)| g(a, b)).collect()).collect())
    }

    #[test]
    fn char_poly_identity_and_zero() {
        assert_eq!(Matrix::identity(2).char_poly(), vec![g(1, 0), g(-2, 0), g(1, 0)]);
        let z = Matrix::zeros(4).char_poly();
        assert_eq!(z, vec![g(0, 0), g(0, 0), g(0, 0), g(0, 0), g(1, 0)]);
        assert_eq!(Matrix::zeros(0).char_poly(), vec![g(1, 0)]);
    }

    #[test]
    fn char_poly_matches_cofactor_expansion() {
        // brute force: det(λI - M) at several λ versus evaluating the polynomial
        let m = from_ints(&[
            &[(1, 0), (2, 1), (0, 0), (3, -1)],
            &[(0, 0), (0, 0), (5, 0), (1, 1)],
            &[(4, 2), (0, 0), (0, 0), (-2, 0)],
            &[(0, 0), (1, -3), (0, 0), (0, 0)],
        ]);
        let cp = m.char_poly();
        for lam in [g(0, 0), g(1, 0), g(-2, 3), g(7, -1), g(0, 5)] {
            let shifted = Matrix::identity(4).scale(&lam).sub(&m);
            assert_eq!(eval_poly(&cp, &lam), shifted.det(), "λ = {lam}");
        }
        assert_eq!(cp, m.char_poly_hessenberg());
        let frac = m.scale(&GaussianRational::from_fracs(2, 3, -1, 5));
        assert_eq!(frac.char_poly(), frac.char_poly_hessenberg());
    }

    #[test]
    fn det_and_minors() {
        let m = from_ints(&[&[(2, 0), (1, 0)], &[(1, 0), (3, 0)]]);
        assert_eq!(m.det(), g(5, 0));
        assert_eq!(m.leading_principal_minors(), vec![g(2, 0), g(5, 0)]);
        let sing = from_ints(&[&[(1, 1), (2, 2)], &[(1, 0), (2, 0)]]);
        assert_eq!(sing.det(), g(0, 0));
    }

    #[test]
    fn hermitian_check() {
        let h = from_ints(&[&[(2, 0), (1, 1)], &[(1, -1), (3, 0)]]);
        assert!(h.is_hermitian());
        assert!(!from_ints(&[&[(2, 0), (1, 1)], &[(1, 1), (3, 0)]]).is_hermitian());
        assert!(h.char_poly().iter().all(GaussianRational::is_real));
    }
}
