use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::{Error, Result};

/// Square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    d: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(d: usize) -> Self {
        ComplexMatrix {
            d,
            data: vec![Complex64::new(0.0, 0.0); d * d],
        }
    }

    pub fn identity(d: usize) -> Self {
        let mut m = ComplexMatrix::zeros(d);
        for i in 0..d {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_entries(d: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != d * d {
            return Err(Error::Dimension {
                expected: d * d,
                found: data.len(),
            });
        }
        if let Some(i) = data.iter().position(|z| !z.is_finite()) {
            return Err(Error::Domain(alloc::format!(
                "non-finite entry at ({}, {})",
                i / d,
                i % d
            )));
        }
        Ok(ComplexMatrix { d, data })
    }

    pub fn from_fn(d: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                data.push(f(i, j));
            }
        }
        ComplexMatrix { d, data }
    }

    /// Rank-one projector v v† onto the span of a unit vector.
    pub fn rank_one(v: &[Complex64]) -> Self {
        ComplexMatrix::from_fn(v.len(), |i, j| v[i] * v[j].conj())
    }

    pub fn order(&self) -> usize {
        self.d
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn mul(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.d, other.d, "order mismatch");
        let d = self.d;
        let mut out = ComplexMatrix::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let a = self.data[i * d + k];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..d {
                    out.data[i * d + j] += a * other.data[k * d + j];
                }
            }
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.d, |i, j| self[(j, i)].conj())
    }

    pub fn add(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.d, other.d, "order mismatch");
        ComplexMatrix {
            d: self.d,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.d, other.d, "order mismatch");
        ComplexMatrix {
            d: self.d,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, s: f64) -> ComplexMatrix {
        ComplexMatrix {
            d: self.d,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn kron(&self, other: &ComplexMatrix) -> ComplexMatrix {
        let m = other.d;
        ComplexMatrix::from_fn(self.d * m, |i, j| self[(i / m, j / m)] * other[(i % m, j % m)])
    }

    /// Largest entry modulus.
    pub fn max_norm(&self) -> f64 {
        self.data.iter().fold(0.0, |m, z| m.max(z.norm()))
    }

    /// ‖A − B‖_max.
    pub fn max_diff(&self, other: &ComplexMatrix) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .fold(0.0, |m, (a, b)| m.max((a - b).norm()))
    }

    /// ‖A·B‖_max without materializing intermediates beyond one product.
    pub fn product_max_norm(&self, other: &ComplexMatrix) -> f64 {
        self.mul(other).max_norm()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|z| *z == Complex64::new(0.0, 0.0))
    }

    /// U A U†.
    pub fn conjugate_by(&self, u: &ComplexMatrix) -> ComplexMatrix {
        u.mul(self).mul(&u.adjoint())
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.d + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.d + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adjoint_and_kron() {
        let a = ComplexMatrix::from_fn(2, |i, j| Complex64::new(i as f64, j as f64));
        assert_eq!(a.adjoint()[(0, 1)], Complex64::new(1.0, -0.0));
        let k = ComplexMatrix::identity(2).kron(&ComplexMatrix::identity(3));
        assert_eq!(k, ComplexMatrix::identity(6));
        let v = [Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8)];
        let p = ComplexMatrix::rank_one(&v);
        assert!(p.mul(&p).max_diff(&p) <= 1e-15);
        assert!(p.adjoint().max_diff(&p) <= 1e-15);
        assert!(ComplexMatrix::from_entries(1, vec![Complex64::new(f64::NAN, 0.0)]).is_err());
    }
}
