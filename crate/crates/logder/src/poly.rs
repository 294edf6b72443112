//! Dense homogeneous polynomials with exact rational coefficients:
//! trivariate forms on the plane and binary forms on a line.

use num::{BigInt, BigRational, One, Zero};
use std::ops::{Add, Mul, Sub};

use crate::monomial::{self, MonomialBasis};

/// A homogeneous element of `k[x,y,z]` of fixed degree, stored as a dense
/// coefficient vector over [`MonomialBasis`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriPoly {
    degree: usize,
    coeffs: Vec<BigRational>,
}

impl TriPoly {
    pub fn zero(degree: usize) -> Self {
        TriPoly {
            degree,
            coeffs: vec![BigRational::zero(); monomial::dimension(degree)],
        }
    }

    pub fn from_coeffs(degree: usize, coeffs: Vec<BigRational>) -> Self {
        assert_eq!(coeffs.len(), monomial::dimension(degree));
        TriPoly { degree, coeffs }
    }

    /// The linear form `a x + b y + c z`.
    pub fn linear(a: i64, b: i64, c: i64) -> Self {
        TriPoly {
            degree: 1,
            coeffs: vec![
                BigRational::from_integer(BigInt::from(a)),
                BigRational::from_integer(BigInt::from(b)),
                BigRational::from_integer(BigInt::from(c)),
            ],
        }
    }

    /// `x`, `y` or `z` for var = 0, 1, 2.
    pub fn variable(var: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); 3];
        coeffs[var] = BigRational::one();
        TriPoly { degree: 1, coeffs }
    }

    pub fn one() -> Self {
        TriPoly {
            degree: 0,
            coeffs: vec![BigRational::one()],
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigRational> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, s: &BigRational) -> TriPoly {
        TriPoly {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// Formal partial derivative with respect to var = 0, 1, 2.
    pub fn partial(&self, var: usize) -> TriPoly {
        assert!(self.degree > 0, "derivative of a constant form");
        let t = self.degree;
        let basis = MonomialBasis::new(t);
        let mut out = TriPoly::zero(t - 1);
        for (idx, &(i, j, k)) in basis.exponents().iter().enumerate() {
            let c = &self.coeffs[idx];
            if c.is_zero() {
                continue;
            }
            let e = [i, j, k];
            if e[var] == 0 {
                continue;
            }
            let mut f = e;
            f[var] -= 1;
            let pos = monomial::index_of(t - 1, f[0], f[1]);
            out.coeffs[pos] += c * BigRational::from_integer(BigInt::from(e[var]));
        }
        out
    }

    /// Evaluate at an integer point (exact).
    pub fn eval(&self, p: [i64; 3]) -> BigRational {
        let basis = MonomialBasis::new(self.degree);
        let mut acc = BigRational::zero();
        for (idx, &(i, j, k)) in basis.exponents().iter().enumerate() {
            let c = &self.coeffs[idx];
            if c.is_zero() {
                continue;
            }
            let m = BigInt::from(p[0]).pow(i as u32)
                * BigInt::from(p[1]).pow(j as u32)
                * BigInt::from(p[2]).pow(k as u32);
            acc += c * BigRational::from_integer(m);
        }
        acc
    }

    /// Substitute the parametrization `(x,y,z) = s*P + u*R`, turning the form
    /// into a binary form on the line spanned by `P` and `R`.
    pub fn restrict(&self, p: [i64; 3], r: [i64; 3]) -> BinPoly {
        let t = self.degree;
        // Power tables for the three substituted linear binary forms.
        let pows: Vec<Vec<BinPoly>> = (0..3)
            .map(|v| {
                let lin = BinPoly::linear(p[v], r[v]);
                let mut table = Vec::with_capacity(t + 1);
                table.push(BinPoly::one());
                for e in 1..=t {
                    let next = &table[e - 1] * &lin;
                    table.push(next);
                }
                table
            })
            .collect();
        let basis = MonomialBasis::new(t);
        let mut out = BinPoly::zero(t);
        for (idx, &(i, j, k)) in basis.exponents().iter().enumerate() {
            let c = &self.coeffs[idx];
            if c.is_zero() {
                continue;
            }
            let m = &(&pows[0][i] * &pows[1][j]) * &pows[2][k];
            out = &out + &m.scale(c);
        }
        out
    }
}

impl Add for &TriPoly {
    type Output = TriPoly;
    fn add(self, rhs: &TriPoly) -> TriPoly {
        assert_eq!(self.degree, rhs.degree);
        TriPoly {
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &TriPoly {
    type Output = TriPoly;
    fn sub(self, rhs: &TriPoly) -> TriPoly {
        assert_eq!(self.degree, rhs.degree);
        TriPoly {
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &TriPoly {
    type Output = TriPoly;
    fn mul(self, rhs: &TriPoly) -> TriPoly {
        let (s, t) = (self.degree, rhs.degree);
        let ba = MonomialBasis::new(s);
        let bb = MonomialBasis::new(t);
        let mut out = TriPoly::zero(s + t);
        for (ia, &(a0, a1, _)) in ba.exponents().iter().enumerate() {
            let ca = &self.coeffs[ia];
            if ca.is_zero() {
                continue;
            }
            for (ib, &(b0, b1, _)) in bb.exponents().iter().enumerate() {
                let cb = &rhs.coeffs[ib];
                if cb.is_zero() {
                    continue;
                }
                let pos = monomial::index_of(s + t, a0 + b0, a1 + b1);
                out.coeffs[pos] += ca * cb;
            }
        }
        out
    }
}

/// A homogeneous element of `k[s,u]` of fixed degree; coefficient `i` belongs
/// to the monomial `s^(t-i) u^i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinPoly {
    degree: usize,
    coeffs: Vec<BigRational>,
}

impl BinPoly {
    pub fn zero(degree: usize) -> Self {
        BinPoly {
            degree,
            coeffs: vec![BigRational::zero(); degree + 1],
        }
    }

    pub fn one() -> Self {
        BinPoly {
            degree: 0,
            coeffs: vec![BigRational::one()],
        }
    }

    /// `a s + b u`.
    pub fn linear(a: i64, b: i64) -> Self {
        BinPoly {
            degree: 1,
            coeffs: vec![
                BigRational::from_integer(BigInt::from(a)),
                BigRational::from_integer(BigInt::from(b)),
            ],
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, s: &BigRational) -> BinPoly {
        BinPoly {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// Multiplication by `s`: same coefficient indices, one degree up.
    pub fn mul_s(&self) -> BinPoly {
        let mut coeffs = self.coeffs.clone();
        coeffs.push(BigRational::zero());
        BinPoly {
            degree: self.degree + 1,
            coeffs,
        }
    }

    /// Multiplication by `u`: coefficients shift one slot.
    pub fn mul_u(&self) -> BinPoly {
        let mut coeffs = vec![BigRational::zero()];
        coeffs.extend(self.coeffs.iter().cloned());
        BinPoly {
            degree: self.degree + 1,
            coeffs,
        }
    }
}

impl Add for &BinPoly {
    type Output = BinPoly;
    fn add(self, rhs: &BinPoly) -> BinPoly {
        assert_eq!(self.degree, rhs.degree);
        BinPoly {
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Mul for &BinPoly {
    type Output = BinPoly;
    fn mul(self, rhs: &BinPoly) -> BinPoly {
        let mut out = BinPoly::zero(self.degree + rhs.degree);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out.coeffs[i + j] += a * b;
            }
        }
        out
    }
}
