//! Arithmetic modulo the Mersenne prime `2^61 − 1` and dense matrix rank.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rand::Rng;

pub const MODULUS: u64 = (1 << 61) - 1;

/// Residue in `[0, MODULUS)`.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fp(u64);

impl Fp {
    pub const ZERO: Fp = Fp(0);
    pub const ONE: Fp = Fp(1);

    pub fn new(x: u64) -> Self {
        Fp(reduce(x as u128))
    }

    pub fn from_i64(x: i64) -> Self {
        if x >= 0 {
            Fp::new(x as u64)
        } else {
            -Fp::new(x.unsigned_abs())
        }
    }

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn pow(self, mut e: u64) -> Fp {
        let (mut base, mut acc) = (self, Fp::ONE);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(self) -> Option<Fp> {
        (!self.is_zero()).then(|| self.pow(MODULUS - 2))
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Fp {
        Fp(rng.gen_range(0..MODULUS))
    }
}

fn reduce(x: u128) -> u64 {
    let lo = (x as u64) & MODULUS;
    let hi = (x >> 61) as u64;
    // hi < 2^67 for products of canonical residues; fold twice
    let s = (lo as u128) + (hi as u128);
    let s = ((s as u64) & MODULUS) as u128 + (s >> 61);
    let s = s as u64;
    if s >= MODULUS {
        s - MODULUS
    } else {
        s
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        let s = self.0 + rhs.0;
        Fp(if s >= MODULUS { s - MODULUS } else { s })
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        Fp(if self.0 >= rhs.0 { self.0 - rhs.0 } else { self.0 + MODULUS - rhs.0 })
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp::ZERO - self
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        Fp(reduce(self.0 as u128 * rhs.0 as u128))
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Dense row-major matrix over `Fp`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Fp>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Fp::ZERO; rows * cols] }
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, r: usize, c: usize) -> Fp {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: Fp) {
        self.data[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> &[Fp] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn scale_row(&mut self, r: usize, by: Fp) {
        for x in &mut self.data[r * self.cols..(r + 1) * self.cols] {
            *x = *x * by;
        }
    }

    /// Rank by Gaussian elimination; the pivot is the first nonzero entry in the column.
    pub fn rank(&self) -> usize {
        let mut m = self.data.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0;
        for c in 0..cols {
            if rank == rows {
                break;
            }
            let Some(p) = (rank..rows).find(|&r| !m[r * cols + c].is_zero()) else {
                continue;
            };
            if p != rank {
                for k in 0..cols {
                    m.swap(p * cols + k, rank * cols + k);
                }
            }
            let inv = m[rank * cols + c].inv().expect("pivot is nonzero");
            for r in (rank + 1)..rows {
                let factor = m[r * cols + c] * inv;
                if factor.is_zero() {
                    continue;
                }
                for k in c..cols {
                    let sub = factor * m[rank * cols + k];
                    m[r * cols + k] = m[r * cols + k] - sub;
                }
            }
            rank += 1;
        }
        rank
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_arithmetic() {
        assert_eq!(Fp::new(MODULUS), Fp::ZERO);
        assert_eq!(Fp::from_i64(-1) + Fp::ONE, Fp::ZERO);
        assert_eq!(Fp::new(3).inv().unwrap() * Fp::new(3), Fp::ONE);
        assert!(Fp::ZERO.inv().is_none());
        assert_eq!(Fp::new(MODULUS - 1) * Fp::new(MODULUS - 1), Fp::ONE);
    }

    #[test]
    fn rank_of_identity_and_dependent_rows() {
        let mut m = Matrix::zeros(3, 3);
        for i in 0..3 {
            m.set(i, i, Fp::ONE);
        }
        assert_eq!(m.rank(), 3);
        let mut d = Matrix::zeros(2, 2);
        d.set(0, 0, Fp::new(2));
        d.set(0, 1, Fp::new(4));
        d.set(1, 0, Fp::new(1));
        d.set(1, 1, Fp::new(2));
        assert_eq!(d.rank(), 1);
        assert_eq!(Matrix::zeros(0, 4).rank(), 0);
    }

    proptest! {
        #[test]
        fn mul_matches_u128(a in 0..MODULUS, b in 0..MODULUS) {
            let want = ((a as u128 * b as u128) % MODULUS as u128) as u64;
            prop_assert_eq!((Fp::new(a) * Fp::new(b)).value(), want);
        }

        #[test]
        fn add_sub_inverse(a in 0..MODULUS, b in 0..MODULUS) {
            let (x, y) = (Fp::new(a), Fp::new(b));
            prop_assert_eq!(x + y - y, x);
        }
    }
}
