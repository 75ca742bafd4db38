//! Concrete commutative unital rings with exact arithmetic.

use crate::error::{Error, Result};
use crate::lattice::{self, Row};
use crate::poly::{self, QuadField, Rationals};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Which ring to compute in.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingDescriptor {
    Integers,
    /// `Z[w]` with `w^2 = d`.
    QuadraticOrder(i64),
    RationalPoly,
    /// Polynomials in `T` over `Z[w]`, `w^2 = d`.
    OrderPoly(i64),
    /// The group ring `Z[t]/(t^p - 1)`.
    CyclicGroupRing(u32),
    /// `Z[1/p]`.
    LocalizedIntegers(u32),
    Product(Box<RingDescriptor>, Box<RingDescriptor>),
}

/// An exact ring element in canonical form.
///
/// Polynomial coefficient vectors are lowest degree first with no trailing
/// zeros; group ring vectors have length `p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Elem {
    Int(BigInt),
    /// `x + y*w`.
    Quad(BigInt, BigInt),
    QPoly(Vec<BigRational>),
    OPoly(Vec<(BigInt, BigInt)>),
    Cyc(Vec<BigInt>),
    Loc(BigRational),
    Pair(Box<Elem>, Box<Elem>),
}

/// Arithmetic operation selector for [`Ring::arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Neg,
}

/// A validated ring descriptor; all element operations go through it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    desc: RingDescriptor,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2;
    while k * k <= n {
        if n.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

pub fn is_squarefree(d: i64) -> bool {
    let n = d.unsigned_abs();
    let mut k = 2u64;
    while k * k <= n {
        if n.is_multiple_of(k * k) {
            return false;
        }
        k += 1;
    }
    true
}

/// Strip every factor `p` from `n`.
pub fn p_free(n: &BigInt, p: u32) -> BigInt {
    let mut n = n.abs();
    if n.is_zero() {
        return n;
    }
    let p = BigInt::from(p);
    while (&n % &p).is_zero() {
        n /= &p;
    }
    n
}

fn is_power_of(n: &BigInt, p: u32) -> bool {
    p_free(n, p).is_one()
}

fn bi(n: i64) -> BigInt {
    BigInt::from(n)
}

fn rat(n: BigInt) -> BigRational {
    BigRational::from_integer(n)
}

fn trim_vec<T, F: Fn(&T) -> bool>(mut v: Vec<T>, zero: F) -> Vec<T> {
    while v.last().is_some_and(&zero) {
        v.pop();
    }
    v
}

fn quad_zero(c: &(BigInt, BigInt)) -> bool {
    c.0.is_zero() && c.1.is_zero()
}

pub(crate) fn quad_mul(d: &BigInt, a: &(BigInt, BigInt), b: &(BigInt, BigInt)) -> (BigInt, BigInt) {
    (&a.0 * &b.0 + d * &a.1 * &b.1, &a.0 * &b.1 + &a.1 * &b.0)
}

impl Ring {
    /// Validate a descriptor and build the ring handle.
    pub fn new(desc: RingDescriptor) -> Result<Ring> {
        match &desc {
            RingDescriptor::Integers | RingDescriptor::RationalPoly => {}
            RingDescriptor::QuadraticOrder(d) => {
                if *d == 0 || *d == 1 || !is_squarefree(*d) {
                    return Err(Error::InvalidDescriptor(format!(
                        "quadratic order needs squarefree d other than 0 and 1, got {d}"
                    )));
                }
            }
            RingDescriptor::OrderPoly(d) => {
                if *d == 0 || *d == 1 || !is_squarefree(*d) {
                    return Err(Error::InvalidDescriptor(format!(
                        "order polynomial ring needs squarefree d other than 0 and 1, got {d}"
                    )));
                }
                if *d > 0 || d.rem_euclid(4) == 1 {
                    return Err(Error::InvalidDescriptor(format!(
                        "order polynomial ring needs Z[w] to be an imaginary maximal order (d < 0, d = 2,3 mod 4), got {d}"
                    )));
                }
            }
            RingDescriptor::CyclicGroupRing(p) => {
                if !is_prime(*p as u64) || *p > 7 {
                    return Err(Error::InvalidDescriptor(format!(
                        "cyclic group ring needs a prime p <= 7, got {p}"
                    )));
                }
            }
            RingDescriptor::LocalizedIntegers(p) => {
                if !is_prime(*p as u64) {
                    return Err(Error::InvalidDescriptor(format!("localization needs a prime, got {p}")));
                }
            }
            RingDescriptor::Product(a, b) => {
                Ring::new((**a).clone())?;
                Ring::new((**b).clone())?;
            }
        }
        Ok(Ring { desc })
    }

    pub fn integers() -> Ring {
        Ring {
            desc: RingDescriptor::Integers,
        }
    }

    pub fn desc(&self) -> &RingDescriptor {
        &self.desc
    }

    /// Component rings of a product.
    pub fn components(&self) -> Option<(Ring, Ring)> {
        match &self.desc {
            RingDescriptor::Product(a, b) => Some((Ring { desc: (**a).clone() }, Ring { desc: (**b).clone() })),
            _ => None,
        }
    }

    pub(crate) fn quad_d(&self) -> BigInt {
        match self.desc {
            RingDescriptor::QuadraticOrder(d) | RingDescriptor::OrderPoly(d) => bi(d),
            _ => unreachable!("not a quadratic backend"),
        }
    }

    pub(crate) fn loc_p(&self) -> u32 {
        match self.desc {
            RingDescriptor::LocalizedIntegers(p) => p,
            _ => unreachable!("not a localization"),
        }
    }

    /// Short name used in diagnostics and in the command line.
    pub fn name(&self) -> String {
        match &self.desc {
            RingDescriptor::Integers => "z".into(),
            RingDescriptor::QuadraticOrder(d) => format!("quad:{d}"),
            RingDescriptor::RationalPoly => "qpoly".into(),
            RingDescriptor::OrderPoly(d) => format!("opoly:{d}"),
            RingDescriptor::CyclicGroupRing(p) => format!("cyc:{p}"),
            RingDescriptor::LocalizedIntegers(p) => format!("zinv:{p}"),
            RingDescriptor::Product(_, _) => {
                let (a, b) = self.components().unwrap();
                format!("prod:({},{})", a.name(), b.name())
            }
        }
    }

    /// True for the backends without zero-divisors.
    pub fn is_domain(&self) -> bool {
        !matches!(
            self.desc,
            RingDescriptor::CyclicGroupRing(_) | RingDescriptor::Product(_, _)
        )
    }

    /// The image of an integer.
    pub fn from_int(&self, n: BigInt) -> Elem {
        match &self.desc {
            RingDescriptor::Integers => Elem::Int(n),
            RingDescriptor::QuadraticOrder(_) => Elem::Quad(n, BigInt::zero()),
            RingDescriptor::RationalPoly => Elem::QPoly(trim_vec(vec![rat(n)], |c: &BigRational| c.is_zero())),
            RingDescriptor::OrderPoly(_) => Elem::OPoly(trim_vec(vec![(n, BigInt::zero())], quad_zero)),
            RingDescriptor::CyclicGroupRing(p) => {
                let mut v = vec![BigInt::zero(); *p as usize];
                v[0] = n;
                Elem::Cyc(v)
            }
            RingDescriptor::LocalizedIntegers(_) => Elem::Loc(rat(n)),
            RingDescriptor::Product(_, _) => {
                let (a, b) = self.components().unwrap();
                Elem::Pair(Box::new(a.from_int(n.clone())), Box::new(b.from_int(n)))
            }
        }
    }

    pub fn int(&self, n: i64) -> Elem {
        self.from_int(bi(n))
    }

    pub fn zero(&self) -> Elem {
        self.int(0)
    }

    pub fn one(&self) -> Elem {
        self.int(1)
    }

    pub fn is_zero(&self, x: &Elem) -> bool {
        *x == self.zero()
    }

    /// The adjoined generator: `w` for quadratic backends, `T` for polynomial
    /// rings, `t` for the group ring.
    pub fn generator(&self) -> Option<Elem> {
        match &self.desc {
            RingDescriptor::QuadraticOrder(_) => Some(Elem::Quad(BigInt::zero(), BigInt::one())),
            RingDescriptor::RationalPoly => Some(Elem::QPoly(vec![rat(bi(0)), rat(bi(1))])),
            RingDescriptor::CyclicGroupRing(p) => {
                let mut v = vec![BigInt::zero(); *p as usize];
                v[1 % *p as usize] += 1;
                Some(Elem::Cyc(v))
            }
            _ => None,
        }
    }

    /// `w` in the order polynomial ring, as a constant.
    pub fn opoly_w(&self) -> Elem {
        Elem::OPoly(vec![(BigInt::zero(), BigInt::one())])
    }

    /// `T` in the order polynomial ring.
    pub fn opoly_t(&self) -> Elem {
        Elem::OPoly(vec![(BigInt::zero(), BigInt::zero()), (BigInt::one(), BigInt::zero())])
    }

    /// Check that `x` is a canonical element of this ring.
    pub fn check(&self, x: &Elem) -> Result<()> {
        let bad = |detail: &str| {
            Err(Error::BackendMismatch {
                ring: self.name(),
                detail: detail.to_string(),
            })
        };
        match (&self.desc, x) {
            (RingDescriptor::Integers, Elem::Int(_)) => Ok(()),
            (RingDescriptor::QuadraticOrder(_), Elem::Quad(_, _)) => Ok(()),
            (RingDescriptor::RationalPoly, Elem::QPoly(c)) => {
                if c.last().is_some_and(Zero::is_zero) {
                    bad("untrimmed polynomial")
                } else {
                    Ok(())
                }
            }
            (RingDescriptor::OrderPoly(_), Elem::OPoly(c)) => {
                if c.last().is_some_and(quad_zero) {
                    bad("untrimmed polynomial")
                } else {
                    Ok(())
                }
            }
            (RingDescriptor::CyclicGroupRing(p), Elem::Cyc(v)) => {
                if v.len() != *p as usize {
                    bad("group ring vector has the wrong length")
                } else {
                    Ok(())
                }
            }
            (RingDescriptor::LocalizedIntegers(p), Elem::Loc(q)) => {
                if is_power_of(q.denom(), *p) {
                    Ok(())
                } else {
                    bad("denominator is not a power of p")
                }
            }
            (RingDescriptor::Product(_, _), Elem::Pair(a, b)) => {
                let (ra, rb) = self.components().unwrap();
                ra.check(a)?;
                rb.check(b)
            }
            _ => bad("wrong backend"),
        }
    }

    /// Checked arithmetic entry point.
    pub fn arith(&self, op: ArithOp, x: &Elem, y: &Elem) -> Result<Elem> {
        self.check(x)?;
        if op != ArithOp::Neg {
            self.check(y)?;
        }
        Ok(match op {
            ArithOp::Add => self.add(x, y),
            ArithOp::Sub => self.sub(x, y),
            ArithOp::Mul => self.mul(x, y),
            ArithOp::Neg => self.neg(x),
        })
    }

    pub fn add(&self, x: &Elem, y: &Elem) -> Elem {
        match (x, y) {
            (Elem::Int(a), Elem::Int(b)) => Elem::Int(a + b),
            (Elem::Quad(a, b), Elem::Quad(c, d)) => Elem::Quad(a + c, b + d),
            (Elem::QPoly(a), Elem::QPoly(b)) => Elem::QPoly(poly::add(&Rationals, a, b)),
            (Elem::OPoly(a), Elem::OPoly(b)) => {
                let n = a.len().max(b.len());
                let z = (BigInt::zero(), BigInt::zero());
                let v = (0..n)
                    .map(|i| {
                        let p = a.get(i).unwrap_or(&z);
                        let q = b.get(i).unwrap_or(&z);
                        (&p.0 + &q.0, &p.1 + &q.1)
                    })
                    .collect();
                Elem::OPoly(trim_vec(v, quad_zero))
            }
            (Elem::Cyc(a), Elem::Cyc(b)) => Elem::Cyc(a.iter().zip(b).map(|(p, q)| p + q).collect()),
            (Elem::Loc(a), Elem::Loc(b)) => Elem::Loc(a + b),
            (Elem::Pair(a, b), Elem::Pair(c, d)) => {
                let (ra, rb) = self.components().unwrap();
                Elem::Pair(Box::new(ra.add(a, c)), Box::new(rb.add(b, d)))
            }
            _ => panic!("backend mismatch in add"),
        }
    }

    pub fn neg(&self, x: &Elem) -> Elem {
        match x {
            Elem::Int(a) => Elem::Int(-a),
            Elem::Quad(a, b) => Elem::Quad(-a, -b),
            Elem::QPoly(a) => Elem::QPoly(poly::neg(&Rationals, a)),
            Elem::OPoly(a) => Elem::OPoly(a.iter().map(|(x, y)| (-x, -y)).collect()),
            Elem::Cyc(a) => Elem::Cyc(a.iter().map(|x| -x).collect()),
            Elem::Loc(a) => Elem::Loc(-a),
            Elem::Pair(a, b) => {
                let (ra, rb) = self.components().unwrap();
                Elem::Pair(Box::new(ra.neg(a)), Box::new(rb.neg(b)))
            }
        }
    }

    pub fn sub(&self, x: &Elem, y: &Elem) -> Elem {
        self.add(x, &self.neg(y))
    }

    pub fn mul(&self, x: &Elem, y: &Elem) -> Elem {
        match (x, y) {
            (Elem::Int(a), Elem::Int(b)) => Elem::Int(a * b),
            (Elem::Quad(a, b), Elem::Quad(c, d)) => {
                let (x, y) = quad_mul(&self.quad_d(), &(a.clone(), b.clone()), &(c.clone(), d.clone()));
                Elem::Quad(x, y)
            }
            (Elem::QPoly(a), Elem::QPoly(b)) => Elem::QPoly(poly::mul(&Rationals, a, b)),
            (Elem::OPoly(a), Elem::OPoly(b)) => {
                if a.is_empty() || b.is_empty() {
                    return Elem::OPoly(Vec::new());
                }
                let d = self.quad_d();
                let mut out = vec![(BigInt::zero(), BigInt::zero()); a.len() + b.len() - 1];
                for (i, p) in a.iter().enumerate() {
                    for (j, q) in b.iter().enumerate() {
                        let (x, y) = quad_mul(&d, p, q);
                        out[i + j].0 += x;
                        out[i + j].1 += y;
                    }
                }
                Elem::OPoly(trim_vec(out, quad_zero))
            }
            (Elem::Cyc(a), Elem::Cyc(b)) => {
                let p = a.len();
                let mut out = vec![BigInt::zero(); p];
                for (i, x) in a.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (j, y) in b.iter().enumerate() {
                        out[(i + j) % p] += x * y;
                    }
                }
                Elem::Cyc(out)
            }
            (Elem::Loc(a), Elem::Loc(b)) => Elem::Loc(a * b),
            (Elem::Pair(a, b), Elem::Pair(c, d)) => {
                let (ra, rb) = self.components().unwrap();
                Elem::Pair(Box::new(ra.mul(a, c)), Box::new(rb.mul(b, d)))
            }
            _ => panic!("backend mismatch in mul"),
        }
    }

    pub fn pow(&self, x: &Elem, k: u32) -> Elem {
        (0..k).fold(self.one(), |acc, _| self.mul(&acc, x))
    }

    /// Dimension of the additive lattice for the lattice backends.
    pub(crate) fn lattice_dim(&self) -> Option<usize> {
        match self.desc {
            RingDescriptor::QuadraticOrder(_) => Some(2),
            RingDescriptor::CyclicGroupRing(p) => Some(p as usize),
            _ => None,
        }
    }

    /// Lattice coordinates, highest basis element first (`w` before `1`,
    /// `t^(p-1)` before `t^0`), so that echelon forms end with the integer row.
    pub(crate) fn to_coords(&self, x: &Elem) -> Row {
        match x {
            Elem::Quad(a, b) => vec![b.clone(), a.clone()],
            Elem::Cyc(v) => v.iter().rev().cloned().collect(),
            _ => unreachable!("not a lattice backend"),
        }
    }

    pub(crate) fn elem_from_coords(&self, v: &[BigInt]) -> Elem {
        match self.desc {
            RingDescriptor::QuadraticOrder(_) => Elem::Quad(v[1].clone(), v[0].clone()),
            RingDescriptor::CyclicGroupRing(_) => Elem::Cyc(v.iter().rev().cloned().collect()),
            _ => unreachable!("not a lattice backend"),
        }
    }

    /// The Z-basis `1, w` or `1, t, ..., t^(p-1)`.
    pub(crate) fn z_basis(&self) -> Vec<Elem> {
        let n = self.lattice_dim().expect("lattice backend");
        (0..n)
            .map(|i| {
                let v: Row = (0..n)
                    .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                    .collect();
                self.elem_from_coords(&v)
            })
            .collect()
    }

    /// Rows are the coordinates of `e_i * b` for the Z-basis `e_i`.
    pub(crate) fn mul_matrix(&self, b: &Elem) -> Vec<Row> {
        self.z_basis().iter().map(|e| self.to_coords(&self.mul(e, b))).collect()
    }

    /// True iff multiplication by `x` is injective.
    pub fn is_regular(&self, x: &Elem) -> bool {
        match (&self.desc, x) {
            (RingDescriptor::CyclicGroupRing(_), _) => !lattice::det(&self.mul_matrix(x)).is_zero(),
            (RingDescriptor::Product(_, _), Elem::Pair(a, b)) => {
                let (ra, rb) = self.components().unwrap();
                ra.is_regular(a) && rb.is_regular(b)
            }
            _ => !self.is_zero(x),
        }
    }

    /// True iff `x` is invertible.
    pub fn is_unit(&self, x: &Elem) -> bool {
        if !self.is_regular(x) {
            return false;
        }
        matches!(self.divide_exact(&self.one(), x), Ok(Some(_)))
    }

    /// `q` with `q*b = x` if it exists in the ring.
    pub fn divide_exact(&self, x: &Elem, b: &Elem) -> Result<Option<Elem>> {
        if !self.is_regular(b) {
            return Err(Error::NotRegular(self.fmt(b)));
        }
        Ok(self.divide_unchecked(x, b))
    }

    pub(crate) fn divide_unchecked(&self, x: &Elem, b: &Elem) -> Option<Elem> {
        match (x, b) {
            (Elem::Int(a), Elem::Int(b)) => {
                let (q, r) = a.div_rem(b);
                r.is_zero().then_some(Elem::Int(q))
            }
            (Elem::Quad(x0, x1), Elem::Quad(b0, b1)) => {
                let d = self.quad_d();
                let norm = b0 * b0 - &d * b1 * b1;
                let (n0, n1) = quad_mul(&d, &(x0.clone(), x1.clone()), &(b0.clone(), -b1));
                let (q0, r0) = n0.div_rem(&norm);
                let (q1, r1) = n1.div_rem(&norm);
                (r0.is_zero() && r1.is_zero()).then_some(Elem::Quad(q0, q1))
            }
            (Elem::QPoly(a), Elem::QPoly(b)) => {
                let (q, r) = poly::divrem(&Rationals, a, b);
                r.is_empty().then_some(Elem::QPoly(q))
            }
            (Elem::OPoly(a), Elem::OPoly(b)) => {
                let k = QuadField { d: self.quad_d() };
                let (q, r) = poly::divrem(&k, &opoly_to_field(a), &opoly_to_field(b));
                if !r.is_empty() {
                    return None;
                }
                field_to_opoly(&q).map(Elem::OPoly)
            }
            (Elem::Cyc(_), Elem::Cyc(_)) => {
                let m = self.mul_matrix(b);
                let n = m.len();
                lattice::solve(&m, &self.to_coords(x), n).map(|c| self.elem_from_coords(&c))
            }
            (Elem::Loc(a), Elem::Loc(b)) => {
                let q = a / b;
                is_power_of(q.denom(), self.loc_p()).then_some(Elem::Loc(q))
            }
            (Elem::Pair(a, b), Elem::Pair(c, d)) => {
                let (ra, rb) = self.components().unwrap();
                let q1 = ra.divide_unchecked(a, c)?;
                let q2 = rb.divide_unchecked(b, d)?;
                Some(Elem::Pair(Box::new(q1), Box::new(q2)))
            }
            _ => panic!("backend mismatch in divide"),
        }
    }

    /// Polynomial degree for the polynomial backends.
    pub fn degree(&self, x: &Elem) -> Option<usize> {
        match x {
            Elem::QPoly(c) => poly::degree(c),
            Elem::OPoly(c) => poly::degree(c),
            _ => None,
        }
    }

    /// Max absolute coefficient, used to order elements by size.
    pub fn height(&self, x: &Elem) -> BigInt {
        match x {
            Elem::Int(a) => a.abs(),
            Elem::Quad(a, b) => a.abs().max(b.abs()),
            Elem::QPoly(c) => c
                .iter()
                .map(|q| q.numer().abs().max(q.denom().clone()))
                .max()
                .unwrap_or_default(),
            Elem::OPoly(c) => c.iter().map(|(a, b)| a.abs().max(b.abs())).max().unwrap_or_default(),
            Elem::Cyc(v) => v.iter().map(|a| a.abs()).max().unwrap_or_default(),
            Elem::Loc(q) => q.numer().abs().max(q.denom().clone()),
            Elem::Pair(a, b) => {
                let (ra, rb) = self.components().unwrap();
                ra.height(a).max(rb.height(b))
            }
        }
    }

    /// Elements whose height is exactly `h`, in a fixed order.
    ///
    /// Polynomial backends use bounded degree (2 for rational polynomials, 1
    /// for order polynomials); the localization adds the `1/p` multiples.
    pub fn shell(&self, h: u32) -> Vec<Elem> {
        let hh = h as i64;
        let coords = |k: usize| -> Vec<Vec<i64>> {
            spiral_box(k, hh)
                .into_iter()
                .filter(|v| v.iter().map(|x| x.abs()).max().unwrap_or(0) == hh)
                .collect()
        };
        match &self.desc {
            RingDescriptor::Integers => coords(1).into_iter().map(|v| self.int(v[0])).collect(),
            RingDescriptor::QuadraticOrder(_) => {
                coords(2).into_iter().map(|v| Elem::Quad(bi(v[0]), bi(v[1]))).collect()
            }
            RingDescriptor::RationalPoly => coords(3)
                .into_iter()
                .map(|v| {
                    Elem::QPoly(trim_vec(v.iter().map(|&x| rat(bi(x))).collect(), |c: &BigRational| {
                        c.is_zero()
                    }))
                })
                .collect(),
            RingDescriptor::OrderPoly(_) => coords(4)
                .into_iter()
                .map(|v| Elem::OPoly(trim_vec(vec![(bi(v[0]), bi(v[1])), (bi(v[2]), bi(v[3]))], quad_zero)))
                .collect(),
            RingDescriptor::CyclicGroupRing(p) => coords(*p as usize)
                .into_iter()
                .map(|v| Elem::Cyc(v.into_iter().map(bi).collect()))
                .collect(),
            RingDescriptor::LocalizedIntegers(p) => {
                let mut out: Vec<Elem> = coords(1).into_iter().map(|v| self.int(v[0])).collect();
                if h > 0 {
                    for s in [hh, -hh] {
                        let q = BigRational::new(bi(s), bi(*p as i64));
                        if is_power_of(q.denom(), *p) && q.denom() != &BigInt::one() {
                            out.push(Elem::Loc(q));
                        }
                    }
                }
                out
            }
            RingDescriptor::Product(_, _) => {
                let (ra, rb) = self.components().unwrap();
                let mut out = Vec::new();
                for ha in 0..=h {
                    for hb in 0..=h {
                        if ha.max(hb) != h {
                            continue;
                        }
                        for a in ra.shell(ha) {
                            for b in rb.shell(hb) {
                                out.push(Elem::Pair(Box::new(a.clone()), Box::new(b)));
                            }
                        }
                    }
                }
                out
            }
        }
    }

    /// The first `n` elements of the height-ordered enumeration.
    pub fn sample(&self, n: usize) -> Vec<Elem> {
        let mut out = Vec::with_capacity(n);
        let mut h = 0;
        while out.len() < n {
            for x in self.shell(h) {
                if out.len() == n {
                    break;
                }
                out.push(x);
            }
            h += 1;
        }
        out
    }

    /// The first `n` regular elements of the enumeration.
    pub fn sample_regular(&self, n: usize) -> Vec<Elem> {
        let mut out = Vec::with_capacity(n);
        let mut h = 0;
        while out.len() < n {
            for x in self.shell(h) {
                if out.len() == n {
                    break;
                }
                if self.is_regular(&x) {
                    out.push(x);
                }
            }
            h += 1;
        }
        out
    }

    /// Render an element in the command-line literal syntax.
    pub fn fmt(&self, x: &Elem) -> String {
        match x {
            Elem::Int(a) => a.to_string(),
            Elem::Quad(a, b) => fmt_quad(a, b),
            Elem::QPoly(c) => fmt_poly(
                &c.iter()
                    .map(|q| (fmt_rat(q), q.is_negative(), false))
                    .collect::<Vec<_>>(),
                "T",
                " ",
            ),
            Elem::OPoly(c) => fmt_poly(
                &c.iter()
                    .map(|(a, b)| {
                        let s = fmt_quad(a, b);
                        let compound = !a.is_zero() && !b.is_zero();
                        let negative = if a.is_zero() { b.is_negative() } else { a.is_negative() };
                        (s, negative && !compound, compound)
                    })
                    .collect::<Vec<_>>(),
                "T",
                " ",
            ),
            Elem::Cyc(v) => fmt_poly(
                &v.iter()
                    .map(|a| (a.to_string(), a.is_negative(), false))
                    .collect::<Vec<_>>(),
                "t",
                "",
            ),
            Elem::Loc(q) => fmt_rat(q),
            Elem::Pair(a, b) => {
                let (ra, rb) = self.components().unwrap();
                format!("({} | {})", ra.fmt(a), rb.fmt(b))
            }
        }
    }
}

/// Integer vectors in `[-h, h]^k` ordered coordinate-wise by 0, 1, -1, 2, -2, ...
pub(crate) fn spiral_box(k: usize, h: i64) -> Vec<Vec<i64>> {
    let mut vals = vec![0i64];
    for i in 1..=h {
        vals.push(i);
        vals.push(-i);
    }
    let mut out: Vec<Vec<i64>> = vec![Vec::new()];
    for _ in 0..k {
        let mut next = Vec::with_capacity(out.len() * vals.len());
        for prefix in &out {
            for &v in &vals {
                let mut p = prefix.clone();
                p.push(v);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

/// Build a canonical order-polynomial element from raw coefficients.
pub(crate) fn opoly_elem(v: Vec<(BigInt, BigInt)>) -> Elem {
    Elem::OPoly(trim_vec(v, quad_zero))
}

/// Build a canonical rational polynomial from raw coefficients.
pub(crate) fn qpoly_elem(v: Vec<BigRational>) -> Elem {
    Elem::QPoly(trim_vec(v, |c: &BigRational| c.is_zero()))
}

pub(crate) fn opoly_to_field(a: &[(BigInt, BigInt)]) -> Vec<(BigRational, BigRational)> {
    a.iter().map(|(x, y)| (rat(x.clone()), rat(y.clone()))).collect()
}

/// Back to integral coefficients, or `None` if some coefficient is fractional.
pub(crate) fn field_to_opoly(a: &[(BigRational, BigRational)]) -> Option<Vec<(BigInt, BigInt)>> {
    a.iter()
        .map(|(x, y)| (x.is_integer() && y.is_integer()).then(|| (x.to_integer(), y.to_integer())))
        .collect()
}

fn fmt_rat(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn fmt_quad(a: &BigInt, b: &BigInt) -> String {
    let wpart = |b: &BigInt| -> String {
        if b.is_one() {
            "w".into()
        } else if *b == -BigInt::one() {
            "-w".into()
        } else {
            format!("{b}w")
        }
    };
    match (a.is_zero(), b.is_zero()) {
        (_, true) => a.to_string(),
        (true, false) => wpart(b),
        (false, false) => {
            if b.is_negative() {
                format!("{a}{}", wpart(b))
            } else {
                format!("{a}+{}", wpart(b))
            }
        }
    }
}

/// Ascending-degree rendering; each coefficient is `(text, negative, compound)`.
fn fmt_poly(coeffs: &[(String, bool, bool)], var: &str, pad: &str) -> String {
    let mut out = String::new();
    for (k, (text, negative, compound)) in coeffs.iter().enumerate() {
        if text == "0" {
            continue;
        }
        let body = if *negative { &text[1..] } else { text.as_str() };
        let mono = match k {
            0 => body.to_string(),
            _ => {
                let pw = if k == 1 { var.to_string() } else { format!("{var}^{k}") };
                if *compound {
                    format!("({body})*{pw}")
                } else if body == "1" {
                    pw
                } else if var == "t" {
                    format!("{body}{pw}")
                } else {
                    format!("{body}*{pw}")
                }
            }
        };
        if out.is_empty() {
            if *negative {
                out.push('-');
            }
            out.push_str(&mono);
        } else {
            out.push_str(pad);
            out.push(if *negative { '-' } else { '+' });
            out.push_str(pad);
            out.push_str(&mono);
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = Ring { desc: self.clone() };
        f.write_str(&r.name())
    }
}
