//! Dense univariate polynomials over an exact field.
//!
//! Coefficients are stored lowest degree first with no trailing zeros, so the
//! zero polynomial is the empty vector.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt::Debug;

/// Exact field arithmetic used by the polynomial routines.
pub trait Field {
    type E: Clone + PartialEq + Debug;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn is_zero(&self, x: &Self::E) -> bool;
    fn add(&self, x: &Self::E, y: &Self::E) -> Self::E;
    fn sub(&self, x: &Self::E, y: &Self::E) -> Self::E;
    fn mul(&self, x: &Self::E, y: &Self::E) -> Self::E;
    fn neg(&self, x: &Self::E) -> Self::E;
    /// Multiplicative inverse; `x` must be nonzero.
    fn inv(&self, x: &Self::E) -> Self::E;
}

/// The rational numbers.
#[derive(Clone, Copy, Debug)]
pub struct Rationals;

impl Field for Rationals {
    type E = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, x: &BigRational) -> bool {
        x.is_zero()
    }
    fn add(&self, x: &BigRational, y: &BigRational) -> BigRational {
        x + y
    }
    fn sub(&self, x: &BigRational, y: &BigRational) -> BigRational {
        x - y
    }
    fn mul(&self, x: &BigRational, y: &BigRational) -> BigRational {
        x * y
    }
    fn neg(&self, x: &BigRational) -> BigRational {
        -x
    }
    fn inv(&self, x: &BigRational) -> BigRational {
        x.recip()
    }
}

/// The quadratic field Q(w) with w^2 = d, elements `x + y*w`.
#[derive(Clone, Debug)]
pub struct QuadField {
    pub d: BigInt,
}

impl Field for QuadField {
    type E = (BigRational, BigRational);
    fn zero(&self) -> Self::E {
        (BigRational::zero(), BigRational::zero())
    }
    fn one(&self) -> Self::E {
        (BigRational::one(), BigRational::zero())
    }
    fn is_zero(&self, x: &Self::E) -> bool {
        x.0.is_zero() && x.1.is_zero()
    }
    fn add(&self, x: &Self::E, y: &Self::E) -> Self::E {
        (&x.0 + &y.0, &x.1 + &y.1)
    }
    fn sub(&self, x: &Self::E, y: &Self::E) -> Self::E {
        (&x.0 - &y.0, &x.1 - &y.1)
    }
    fn mul(&self, x: &Self::E, y: &Self::E) -> Self::E {
        let d = BigRational::from_integer(self.d.clone());
        (&x.0 * &y.0 + d * &x.1 * &y.1, &x.0 * &y.1 + &x.1 * &y.0)
    }
    fn neg(&self, x: &Self::E) -> Self::E {
        (-&x.0, -&x.1)
    }
    fn inv(&self, x: &Self::E) -> Self::E {
        let d = BigRational::from_integer(self.d.clone());
        let norm = &x.0 * &x.0 - d * &x.1 * &x.1;
        (&x.0 / &norm, -&x.1 / &norm)
    }
}

pub fn trim<F: Field>(f: &F, mut v: Vec<F::E>) -> Vec<F::E> {
    while v.last().is_some_and(|c| f.is_zero(c)) {
        v.pop();
    }
    v
}

pub fn degree<T>(a: &[T]) -> Option<usize> {
    a.len().checked_sub(1)
}

pub fn add<F: Field>(f: &F, a: &[F::E], b: &[F::E]) -> Vec<F::E> {
    let n = a.len().max(b.len());
    let z = f.zero();
    let out = (0..n)
        .map(|i| f.add(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
        .collect();
    trim(f, out)
}

pub fn neg<F: Field>(f: &F, a: &[F::E]) -> Vec<F::E> {
    a.iter().map(|c| f.neg(c)).collect()
}

pub fn sub<F: Field>(f: &F, a: &[F::E], b: &[F::E]) -> Vec<F::E> {
    add(f, a, &neg(f, b))
}

pub fn mul<F: Field>(f: &F, a: &[F::E], b: &[F::E]) -> Vec<F::E> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = f.add(&out[i + j], &f.mul(x, y));
        }
    }
    trim(f, out)
}

pub fn scale<F: Field>(f: &F, a: &[F::E], c: &F::E) -> Vec<F::E> {
    trim(f, a.iter().map(|x| f.mul(x, c)).collect())
}

/// Euclidean division; `b` must be nonzero.
pub fn divrem<F: Field>(f: &F, a: &[F::E], b: &[F::E]) -> (Vec<F::E>, Vec<F::E>) {
    let db = degree(b).expect("division by the zero polynomial");
    let lead_inv = f.inv(&b[db]);
    let mut r = a.to_vec();
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![f.zero(); r.len() - db];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = f.mul(&r[dr], &lead_inv);
        let shift = dr - db;
        for (j, y) in b.iter().enumerate() {
            r[shift + j] = f.sub(&r[shift + j], &f.mul(&c, y));
        }
        q[shift] = c;
        r = trim(f, r);
    }
    (trim(f, q), r)
}

pub fn monic<F: Field>(f: &F, a: &[F::E]) -> Vec<F::E> {
    match a.last() {
        None => Vec::new(),
        Some(lc) => scale(f, a, &f.inv(lc)),
    }
}

/// Monic greatest common divisor (zero when both inputs are zero).
pub fn gcd<F: Field>(f: &F, a: &[F::E], b: &[F::E]) -> Vec<F::E> {
    let (mut x, mut y) = (a.to_vec(), b.to_vec());
    while !y.is_empty() {
        let (_, r) = divrem(f, &x, &y);
        x = y;
        y = r;
    }
    monic(f, &x)
}

type Bezout<E> = (Vec<E>, Vec<E>, Vec<E>);

/// Extended gcd: returns `(g, s, t)` with `s*a + t*b = g` and `g` monic.
pub fn xgcd<F: Field>(f: &F, a: &[F::E], b: &[F::E]) -> Bezout<F::E> {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1) = (vec![f.one()], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![f.one()]);
    while !r1.is_empty() {
        let (q, r) = divrem(f, &r0, &r1);
        let s2 = sub(f, &s0, &mul(f, &q, &s1));
        let t2 = sub(f, &t0, &mul(f, &q, &t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    match r0.last() {
        None => (Vec::new(), Vec::new(), Vec::new()),
        Some(lc) => {
            let inv = f.inv(lc);
            (scale(f, &r0, &inv), scale(f, &s0, &inv), scale(f, &t0, &inv))
        }
    }
}

pub fn eval<F: Field>(f: &F, a: &[F::E], x: &F::E) -> F::E {
    a.iter().rev().fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: &[i64]) -> Vec<BigRational> {
        trim(
            &Rationals,
            v.iter().map(|&x| BigRational::from_integer(x.into())).collect(),
        )
    }

    #[test]
    fn division_identity() {
        let a = q(&[1, 0, -3, 2]);
        let b = q(&[-1, 1]);
        let (qq, r) = divrem(&Rationals, &a, &b);
        assert_eq!(add(&Rationals, &mul(&Rationals, &qq, &b), &r), a);
        assert!(r.len() < b.len());
    }

    #[test]
    fn gcd_of_shared_root() {
        // (T-1)(T+2) and (T-1)(T-5) share T-1.
        let a = mul(&Rationals, &q(&[-1, 1]), &q(&[2, 1]));
        let b = mul(&Rationals, &q(&[-1, 1]), &q(&[-5, 1]));
        assert_eq!(gcd(&Rationals, &a, &b), q(&[-1, 1]));
    }

    #[test]
    fn bezout_holds() {
        let a = q(&[0, 1]);
        let b = q(&[-1, 1]);
        let (g, s, t) = xgcd(&Rationals, &a, &b);
        assert_eq!(g, q(&[1]));
        let lhs = add(&Rationals, &mul(&Rationals, &s, &a), &mul(&Rationals, &t, &b));
        assert_eq!(lhs, g);
    }

    #[test]
    fn quadratic_field_inverse() {
        let k = QuadField { d: BigInt::from(-5) };
        let x = (BigRational::from_integer(1.into()), BigRational::from_integer(1.into()));
        let prod = k.mul(&x, &k.inv(&x));
        assert_eq!(prod, k.one());
    }
}
