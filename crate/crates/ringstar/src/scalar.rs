//! Gaussian rational coefficients.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

pub type Scalar = Complex<BigRational>;

pub fn int(n: i64) -> Scalar {
    real(BigRational::from_integer(BigInt::from(n)))
}

pub fn real(q: BigRational) -> Scalar {
    Complex::new(q, BigRational::zero())
}

pub fn zero() -> Scalar {
    Complex::zero()
}

pub fn one() -> Scalar {
    Complex::one()
}

pub fn i() -> Scalar {
    Complex::new(BigRational::zero(), BigRational::one())
}

pub fn conj(s: &Scalar) -> Scalar {
    s.conj()
}

/// `|s|^2`.
pub fn norm_sq(s: &Scalar) -> BigRational {
    &s.re * &s.re + &s.im * &s.im
}

fn fmt_rat(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// `3/2`, `-i`, `1/2i`, `3/2+1/2i`.
pub fn fmt(s: &Scalar) -> String {
    let imag = |q: &BigRational| -> String {
        if q.is_one() {
            "i".into()
        } else if *q == -BigRational::one() {
            "-i".into()
        } else {
            format!("{}i", fmt_rat(q))
        }
    };
    match (s.re.is_zero(), s.im.is_zero()) {
        (_, true) => fmt_rat(&s.re),
        (true, false) => imag(&s.im),
        (false, false) => {
            let im = imag(&s.im);
            if s.im.is_negative() {
                format!("{}{}", fmt_rat(&s.re), im)
            } else {
                format!("{}+{}", fmt_rat(&s.re), im)
            }
        }
    }
}

/// An exact nonnegative real given by its square.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactNorm {
    pub squared: BigRational,
}

impl ExactNorm {
    pub fn of(s: &Scalar) -> ExactNorm {
        ExactNorm { squared: norm_sq(s) }
    }

    pub fn zero() -> ExactNorm {
        ExactNorm {
            squared: BigRational::zero(),
        }
    }

    /// The value as a rational when the square is a rational square.
    pub fn as_rational(&self) -> Option<BigRational> {
        let n = self.squared.numer().sqrt();
        let d = self.squared.denom().sqrt();
        (&n * &n == *self.squared.numer() && &d * &d == *self.squared.denom()).then(|| BigRational::new(n, d))
    }
}

impl PartialOrd for ExactNorm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExactNorm {
    fn cmp(&self, other: &Self) -> Ordering {
        self.squared.cmp(&other.squared)
    }
}

impl fmt::Display for ExactNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_rational() {
            Some(q) => f.write_str(&fmt_rat(&q)),
            None => write!(f, "sqrt({})", fmt_rat(&self.squared)),
        }
    }
}
