//! Finitely generated ideals in canonical form, and index computations.

use crate::error::{Error, Result};
use crate::lattice::{self, Row};
use crate::poly::{self, Field, QuadField, Rationals};
use crate::rings::{field_to_opoly, opoly_elem, opoly_to_field, p_free, qpoly_elem, Elem, Ring, RingDescriptor};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Canonical ideal representation; which variant is used depends on the ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ideal {
    /// `(n)` in the integers, `n >= 0`.
    Int(BigInt),
    /// `(f)` with `f` monic, or empty for the zero ideal.
    QPoly(Vec<BigRational>),
    /// `(m)` in `Z[1/p]` with `m >= 0` and prime to `p`.
    Loc(BigInt),
    /// Hermite normal form rows for the quadratic orders and the group rings.
    Lattice(Vec<Row>),
    /// `c[T]*f`: `c` is an ideal of `Z[w]` in row form, `f` a primitive
    /// polynomial normalized up to units. The zero ideal has `c` empty.
    OPoly {
        c: Vec<Row>,
        f: Vec<(BigInt, BigInt)>,
    },
    Pair(Box<Ideal>, Box<Ideal>),
}

/// Size of a quotient `R/I` or `J/(J meet J2)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum IndexValue {
    One,
    /// Always at least 2.
    Finite(BigInt),
    Infinite,
}

impl IndexValue {
    pub fn from_count(n: BigInt) -> IndexValue {
        if n.is_one() {
            IndexValue::One
        } else {
            IndexValue::Finite(n)
        }
    }

    /// The count as an integer, if finite.
    pub fn count(&self) -> Option<BigInt> {
        match self {
            IndexValue::One => Some(BigInt::one()),
            IndexValue::Finite(n) => Some(n.clone()),
            IndexValue::Infinite => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        !matches!(self, IndexValue::Infinite)
    }

    /// Index of a product ideal from the component indices.
    pub fn combine(&self, other: &IndexValue) -> IndexValue {
        match (self.count(), other.count()) {
            (Some(a), Some(b)) => IndexValue::from_count(a * b),
            _ => IndexValue::Infinite,
        }
    }
}

impl fmt::Display for IndexValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndexValue::One => f.write_str("1"),
            IndexValue::Finite(n) => write!(f, "{n}"),
            IndexValue::Infinite => f.write_str("infinite"),
        }
    }
}

fn bi(n: i64) -> BigInt {
    BigInt::from(n)
}

fn quad_ring(ring: &Ring) -> Ring {
    Ring::new(RingDescriptor::QuadraticOrder(match ring.desc() {
        RingDescriptor::OrderPoly(d) | RingDescriptor::QuadraticOrder(d) => *d,
        _ => unreachable!("no quadratic coefficient ring"),
    }))
    .expect("validated with the parent ring")
}

fn quad_elem(c: &(BigInt, BigInt)) -> Elem {
    Elem::Quad(c.0.clone(), c.1.clone())
}

fn quad_pair(x: &Elem) -> (BigInt, BigInt) {
    match x {
        Elem::Quad(a, b) => (a.clone(), b.clone()),
        _ => unreachable!("not a quadratic element"),
    }
}

fn opoly_coeffs(x: &Elem) -> &[(BigInt, BigInt)] {
    match x {
        Elem::OPoly(c) => c,
        _ => unreachable!("not an order polynomial"),
    }
}

fn qpoly_coeffs(x: &Elem) -> &[BigRational] {
    match x {
        Elem::QPoly(c) => c,
        _ => unreachable!("not a rational polynomial"),
    }
}

fn int_of(x: &Elem) -> &BigInt {
    match x {
        Elem::Int(a) => a,
        _ => unreachable!("not an integer"),
    }
}

fn split_pair(x: &Elem) -> (&Elem, &Elem) {
    match x {
        Elem::Pair(a, b) => (a, b),
        _ => unreachable!("not a pair"),
    }
}

/// Numerator of a localized element with every factor `p` removed.
fn loc_core(x: &Elem, p: u32) -> BigInt {
    match x {
        Elem::Loc(q) => p_free(q.numer(), p),
        _ => unreachable!("not a localized element"),
    }
}

pub fn zero_ideal(ring: &Ring) -> Ideal {
    match ring.desc() {
        RingDescriptor::Integers => Ideal::Int(BigInt::zero()),
        RingDescriptor::RationalPoly => Ideal::QPoly(Vec::new()),
        RingDescriptor::LocalizedIntegers(_) => Ideal::Loc(BigInt::zero()),
        RingDescriptor::QuadraticOrder(_) | RingDescriptor::CyclicGroupRing(_) => Ideal::Lattice(Vec::new()),
        RingDescriptor::OrderPoly(_) => Ideal::OPoly {
            c: Vec::new(),
            f: vec![(BigInt::one(), BigInt::zero())],
        },
        RingDescriptor::Product(_, _) => {
            let (a, b) = ring.components().unwrap();
            Ideal::Pair(Box::new(zero_ideal(&a)), Box::new(zero_ideal(&b)))
        }
    }
}

/// The ideal `R`.
pub fn unit_ideal(ring: &Ring) -> Ideal {
    match ring.desc() {
        RingDescriptor::Integers => Ideal::Int(BigInt::one()),
        RingDescriptor::RationalPoly => Ideal::QPoly(vec![BigRational::one()]),
        RingDescriptor::LocalizedIntegers(_) => Ideal::Loc(BigInt::one()),
        RingDescriptor::QuadraticOrder(_) | RingDescriptor::CyclicGroupRing(_) => {
            let n = ring.lattice_dim().unwrap();
            Ideal::Lattice(identity_rows(n))
        }
        RingDescriptor::OrderPoly(_) => Ideal::OPoly {
            c: identity_rows(2),
            f: vec![(BigInt::one(), BigInt::zero())],
        },
        RingDescriptor::Product(_, _) => {
            let (a, b) = ring.components().unwrap();
            Ideal::Pair(Box::new(unit_ideal(&a)), Box::new(unit_ideal(&b)))
        }
    }
}

fn identity_rows(n: usize) -> Vec<Row> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

pub fn is_zero_ideal(ring: &Ring, i: &Ideal) -> bool {
    *i == zero_ideal(ring)
}

pub fn is_unit_ideal(ring: &Ring, i: &Ideal) -> bool {
    *i == unit_ideal(ring)
}

// ---------------------------------------------------------------------------
// Lattice backends (quadratic orders, group rings, and the coefficient ideals
// of order polynomials).

fn lat_gen(ring: &Ring, gens: &[Elem]) -> Vec<Row> {
    let n = ring.lattice_dim().unwrap();
    let basis = ring.z_basis();
    let mut rows = Vec::new();
    for g in gens {
        for e in &basis {
            rows.push(ring.to_coords(&ring.mul(g, e)));
        }
    }
    lattice::hnf(&rows, n)
}

/// Basis elements in presentation order: the integer row first.
fn lat_elems(ring: &Ring, rows: &[Row]) -> Vec<Elem> {
    rows.iter().rev().map(|r| ring.elem_from_coords(r)).collect()
}

fn lat_product(ring: &Ring, a: &[Row], b: &[Row]) -> Vec<Row> {
    let (ea, eb) = (lat_elems(ring, a), lat_elems(ring, b));
    let mut gens = Vec::new();
    for x in &ea {
        for y in &eb {
            gens.push(ring.mul(x, y));
        }
    }
    lat_gen(ring, &gens)
}

fn lat_colon(ring: &Ring, a: &[Row], b: &Elem) -> Vec<Row> {
    let n = ring.lattice_dim().unwrap();
    let meet = lattice::intersect(a, &lat_gen(ring, std::slice::from_ref(b)), n);
    let rows: Vec<Row> = meet
        .iter()
        .map(|r| {
            let q = ring
                .divide_unchecked(&ring.elem_from_coords(r), b)
                .expect("rows of a meet with (b) are multiples of b");
            ring.to_coords(&q)
        })
        .collect();
    lattice::hnf(&rows, n)
}

fn lat_index(rows: &[Row], n: usize) -> IndexValue {
    if rows.len() < n {
        return IndexValue::Infinite;
    }
    let det: BigInt = rows.iter().map(|r| r[lattice::pivot(r).unwrap()].clone()).product();
    IndexValue::from_count(det)
}

/// A generator of a principal ideal of an imaginary quadratic order, if one exists.
fn principal_generator(q: &Ring, rows: &[Row]) -> Option<Elem> {
    if rows.is_empty() {
        return Some(q.zero());
    }
    let norm = lat_index(rows, 2).count()?;
    let d = -q.quad_d();
    debug_assert!(d.is_positive());
    let ymax = (&norm / &d).sqrt();
    let mut y = BigInt::zero();
    while y <= ymax {
        let rest = &norm - &d * &y * &y;
        let x = rest.sqrt();
        if &x * &x == rest {
            for (sx, sy) in [(1, 1), (-1, 1), (1, -1), (-1, -1)] {
                let cand = Elem::Quad(&x * sx, &y * sy);
                if lat_gen(q, std::slice::from_ref(&cand)) == rows {
                    return Some(cand);
                }
            }
        }
        y += 1;
    }
    None
}

// ---------------------------------------------------------------------------
// Order polynomials.

type KPoly = Vec<(BigRational, BigRational)>;

fn units(q: &Ring) -> Vec<(BigInt, BigInt)> {
    let mut u = vec![(bi(1), bi(0)), (bi(-1), bi(0))];
    if q.quad_d() == bi(-1) {
        u.push((bi(0), bi(1)));
        u.push((bi(0), bi(-1)));
    }
    u
}

/// Pick the unit multiple with the lexicographically largest leading coefficient.
fn unit_normalize(q: &Ring, f: &[(BigInt, BigInt)]) -> Vec<(BigInt, BigInt)> {
    let d = q.quad_d();
    units(q)
        .into_iter()
        .map(|u| f.iter().map(|c| crate::rings::quad_mul(&d, c, &u)).collect::<Vec<_>>())
        .max_by(|a, b| a.last().cmp(&b.last()))
        .unwrap()
}

fn gens_text(ring: &Ring, gens: &[Elem]) -> String {
    gens.iter().map(|g| ring.fmt(g)).collect::<Vec<_>>().join(", ")
}

/// Scale a nonzero `K[T]` polynomial to a primitive polynomial over the order.
fn primitive_normalize(ring: &Ring, g: &KPoly) -> Result<Vec<(BigInt, BigInt)>> {
    let q = quad_ring(ring);
    let den = g
        .iter()
        .flat_map(|(x, y)| [x.denom().clone(), y.denom().clone()])
        .fold(BigInt::one(), |acc, d| acc.lcm(&d));
    let scaled: Vec<(BigInt, BigInt)> = g
        .iter()
        .map(|(x, y)| ((x * &den).to_integer(), (y * &den).to_integer()))
        .collect();
    let coeffs: Vec<Elem> = scaled.iter().map(quad_elem).collect();
    let content = lat_gen(&q, &coeffs);
    let Some(gamma) = principal_generator(&q, &content) else {
        return Err(Error::OrderPolyClass {
            gens: format!("{} (content ideal is not principal)", ring.fmt(&opoly_elem(scaled))),
        });
    };
    let f: Vec<(BigInt, BigInt)> = coeffs
        .iter()
        .map(|c| quad_pair(&q.divide_unchecked(c, &gamma).expect("content divides")))
        .collect();
    Ok(unit_normalize(&q, &f))
}

fn kfield(ring: &Ring) -> QuadField {
    QuadField { d: ring.quad_d() }
}

/// Exact quotient in `O[T]`; `None` if the division leaves `K[T]`-remainder or
/// fractional coefficients.
fn opoly_div(ring: &Ring, a: &[(BigInt, BigInt)], b: &[(BigInt, BigInt)]) -> Option<Vec<(BigInt, BigInt)>> {
    let k = kfield(ring);
    let (qq, r) = poly::divrem(&k, &opoly_to_field(a), &opoly_to_field(b));
    if !r.is_empty() {
        return None;
    }
    field_to_opoly(&qq)
}

fn opoly_mul(ring: &Ring, a: &[(BigInt, BigInt)], b: &[(BigInt, BigInt)]) -> Vec<(BigInt, BigInt)> {
    opoly_coeffs(&ring.mul(&opoly_elem(a.to_vec()), &opoly_elem(b.to_vec()))).to_vec()
}

/// Monic integer polynomial content coefficients as quadratic elements.
fn coeff_elems(f: &[(BigInt, BigInt)]) -> Vec<Elem> {
    f.iter().map(quad_elem).collect()
}

fn opoly_gen(ring: &Ring, gens: &[Elem]) -> Result<Ideal> {
    let nz: Vec<&Elem> = gens.iter().filter(|g| !ring.is_zero(g)).collect();
    if nz.is_empty() {
        return Ok(zero_ideal(ring));
    }
    let k = kfield(ring);
    let q = quad_ring(ring);
    let kpolys: Vec<KPoly> = nz.iter().map(|g| opoly_to_field(opoly_coeffs(g))).collect();
    let g = kpolys[1..]
        .iter()
        .fold(poly::monic(&k, &kpolys[0]), |acc, p| poly::gcd(&k, &acc, p));
    let f = primitive_normalize(ring, &g)?;
    let hs: Vec<Vec<(BigInt, BigInt)>> = nz
        .iter()
        .map(|x| opoly_div(ring, opoly_coeffs(x), &f).expect("quotient by a primitive divisor is integral"))
        .collect();
    let all_coeffs: Vec<Elem> = hs.iter().flat_map(|h| coeff_elems(h)).collect();
    let c_all = lat_gen(&q, &all_coeffs);
    let mut consts: Vec<Elem> = hs.iter().filter(|h| h.len() == 1).map(|h| quad_elem(&h[0])).collect();
    if hs.iter().any(|h| h.len() > 1) {
        // Bezout cofactors over K[T]; clearing their denominators gives an
        // integer constant inside the ideal.
        let hk: Vec<KPoly> = hs.iter().map(|h| opoly_to_field(h)).collect();
        let mut acc = hk[0].clone();
        let mut cof: Vec<KPoly> = vec![vec![k.one()]];
        for h in &hk[1..] {
            let (g2, s, t) = poly::xgcd(&k, &acc, h);
            for c in cof.iter_mut() {
                *c = poly::mul(&k, c, &s);
            }
            cof.push(t);
            acc = g2;
        }
        let den = cof
            .iter()
            .flatten()
            .flat_map(|(x, y)| [x.denom().clone(), y.denom().clone()])
            .fold(BigInt::one(), |a, d| a.lcm(&d));
        consts.push(Elem::Quad(den, BigInt::zero()));
    }
    let c_const = lat_gen(&q, &consts);
    if c_const != c_all {
        return Err(Error::OrderPolyClass {
            gens: gens_text(ring, gens),
        });
    }
    Ok(Ideal::OPoly { c: c_all, f })
}

fn opoly_generators(ring: &Ring, c: &[Row], f: &[(BigInt, BigInt)]) -> Vec<Elem> {
    let q = quad_ring(ring);
    lat_elems(&q, c)
        .iter()
        .map(|g| {
            let gp = quad_pair(g);
            opoly_elem(opoly_mul(ring, &[gp], f))
        })
        .collect()
}

fn opoly_contains(ring: &Ring, c: &[Row], f: &[(BigInt, BigInt)], x: &Elem) -> bool {
    let xs = opoly_coeffs(x);
    if xs.is_empty() {
        return true;
    }
    if c.is_empty() {
        return false;
    }
    match opoly_div(ring, xs, f) {
        None => false,
        Some(qq) => {
            let q = quad_ring(ring);
            qq.iter().all(|co| lattice::contains(c, &q.to_coords(&quad_elem(co))))
        }
    }
}

// ---------------------------------------------------------------------------
// Public operations.

/// Canonical form of the ideal generated by `gens`.
pub fn ideal_gen(ring: &Ring, gens: &[Elem]) -> Result<Ideal> {
    for g in gens {
        ring.check(g)?;
    }
    Ok(match ring.desc() {
        RingDescriptor::Integers => Ideal::Int(gens.iter().fold(BigInt::zero(), |acc, g| acc.gcd(int_of(g)))),
        RingDescriptor::RationalPoly => {
            let g = gens
                .iter()
                .fold(Vec::new(), |acc, g| poly::gcd(&Rationals, &acc, qpoly_coeffs(g)));
            Ideal::QPoly(g)
        }
        RingDescriptor::LocalizedIntegers(p) => {
            Ideal::Loc(gens.iter().fold(BigInt::zero(), |acc, g| acc.gcd(&loc_core(g, *p))))
        }
        RingDescriptor::QuadraticOrder(_) | RingDescriptor::CyclicGroupRing(_) => Ideal::Lattice(lat_gen(ring, gens)),
        RingDescriptor::OrderPoly(_) => opoly_gen(ring, gens)?,
        RingDescriptor::Product(_, _) => {
            let (ra, rb) = ring.components().unwrap();
            let (ga, gb): (Vec<Elem>, Vec<Elem>) = gens
                .iter()
                .map(|g| {
                    let (a, b) = split_pair(g);
                    (a.clone(), b.clone())
                })
                .unzip();
            Ideal::Pair(Box::new(ideal_gen(&ra, &ga)?), Box::new(ideal_gen(&rb, &gb)?))
        }
    })
}

/// The principal ideal `(b)`.
pub fn principal(ring: &Ring, b: &Elem) -> Result<Ideal> {
    ideal_gen(ring, std::slice::from_ref(b))
}

/// A finite generating set of the ideal.
pub fn generators(ring: &Ring, i: &Ideal) -> Vec<Elem> {
    match i {
        Ideal::Int(n) => vec![Elem::Int(n.clone())],
        Ideal::QPoly(f) => vec![qpoly_elem(f.clone())],
        Ideal::Loc(m) => vec![Elem::Loc(BigRational::from_integer(m.clone()))],
        Ideal::Lattice(rows) => {
            if rows.is_empty() {
                vec![ring.zero()]
            } else {
                lat_elems(ring, rows)
            }
        }
        Ideal::OPoly { c, f } => {
            if c.is_empty() {
                vec![ring.zero()]
            } else {
                opoly_generators(ring, c, f)
            }
        }
        Ideal::Pair(a, b) => {
            let (ra, rb) = ring.components().unwrap();
            let mut out = Vec::new();
            for g in generators(&ra, a) {
                out.push(Elem::Pair(Box::new(g), Box::new(rb.zero())));
            }
            for g in generators(&rb, b) {
                out.push(Elem::Pair(Box::new(ra.zero()), Box::new(g)));
            }
            out
        }
    }
}

pub fn ideal_sum(ring: &Ring, i: &Ideal, j: &Ideal) -> Result<Ideal> {
    match (i, j) {
        (Ideal::Lattice(a), Ideal::Lattice(b)) => Ok(Ideal::Lattice(lattice::sum(a, b, ring.lattice_dim().unwrap()))),
        (Ideal::Pair(a, b), Ideal::Pair(c, d)) => {
            let (ra, rb) = ring.components().unwrap();
            Ok(Ideal::Pair(
                Box::new(ideal_sum(&ra, a, c)?),
                Box::new(ideal_sum(&rb, b, d)?),
            ))
        }
        _ => {
            let mut gens = generators(ring, i);
            gens.extend(generators(ring, j));
            ideal_gen(ring, &gens)
        }
    }
}

pub fn ideal_intersect(ring: &Ring, i: &Ideal, j: &Ideal) -> Result<Ideal> {
    Ok(match (i, j) {
        (Ideal::Int(a), Ideal::Int(b)) => Ideal::Int(a.lcm(b)),
        (Ideal::Loc(a), Ideal::Loc(b)) => Ideal::Loc(a.lcm(b)),
        (Ideal::QPoly(a), Ideal::QPoly(b)) => {
            if a.is_empty() || b.is_empty() {
                Ideal::QPoly(Vec::new())
            } else {
                let g = poly::gcd(&Rationals, a, b);
                let (l, _) = poly::divrem(&Rationals, &poly::mul(&Rationals, a, b), &g);
                Ideal::QPoly(poly::monic(&Rationals, &l))
            }
        }
        (Ideal::Lattice(a), Ideal::Lattice(b)) => Ideal::Lattice(lattice::intersect(a, b, ring.lattice_dim().unwrap())),
        (Ideal::OPoly { c: c1, f: f1 }, Ideal::OPoly { c: c2, f: f2 }) => {
            if c1.is_empty() || c2.is_empty() {
                return Ok(zero_ideal(ring));
            }
            let k = kfield(ring);
            let g = poly::gcd(&k, &opoly_to_field(f1), &opoly_to_field(f2));
            let gp = primitive_normalize(ring, &g)?;
            let a1 = opoly_div(ring, f1, &gp).expect("gcd divides");
            let a2 = opoly_div(ring, f2, &gp).expect("gcd divides");
            let q = quad_ring(ring);
            let f = unit_normalize(&q, &opoly_mul(ring, &opoly_mul(ring, &a1, &a2), &gp));
            Ideal::OPoly {
                c: lattice::intersect(c1, c2, 2),
                f,
            }
        }
        (Ideal::Pair(a, b), Ideal::Pair(c, d)) => {
            let (ra, rb) = ring.components().unwrap();
            Ideal::Pair(
                Box::new(ideal_intersect(&ra, a, c)?),
                Box::new(ideal_intersect(&rb, b, d)?),
            )
        }
        _ => panic!("ideal backend mismatch"),
    })
}

pub fn ideal_product(ring: &Ring, i: &Ideal, j: &Ideal) -> Result<Ideal> {
    Ok(match (i, j) {
        (Ideal::Int(a), Ideal::Int(b)) => Ideal::Int(a * b),
        (Ideal::Loc(a), Ideal::Loc(b)) => Ideal::Loc(a * b),
        (Ideal::QPoly(a), Ideal::QPoly(b)) => Ideal::QPoly(poly::mul(&Rationals, a, b)),
        (Ideal::Lattice(a), Ideal::Lattice(b)) => Ideal::Lattice(lat_product(ring, a, b)),
        (Ideal::OPoly { c: c1, f: f1 }, Ideal::OPoly { c: c2, f: f2 }) => {
            if c1.is_empty() || c2.is_empty() {
                return Ok(zero_ideal(ring));
            }
            let q = quad_ring(ring);
            Ideal::OPoly {
                c: lat_product(&q, c1, c2),
                f: unit_normalize(&q, &opoly_mul(ring, f1, f2)),
            }
        }
        (Ideal::Pair(a, b), Ideal::Pair(c, d)) => {
            let (ra, rb) = ring.components().unwrap();
            Ideal::Pair(Box::new(ideal_product(&ra, a, c)?), Box::new(ideal_product(&rb, b, d)?))
        }
        _ => panic!("ideal backend mismatch"),
    })
}

/// `b*I`.
pub fn ideal_scale(ring: &Ring, b: &Elem, i: &Ideal) -> Result<Ideal> {
    ideal_product(ring, &principal(ring, b)?, i)
}

/// `(I : b) = {r : b*r in I}`.
pub fn ideal_colon(ring: &Ring, i: &Ideal, b: &Elem) -> Result<Ideal> {
    ring.check(b)?;
    if !ring.is_regular(b) {
        return Err(Error::NotRegular(ring.fmt(b)));
    }
    Ok(match i {
        Ideal::Int(n) => Ideal::Int(n / n.gcd(int_of(b))),
        Ideal::Loc(m) => {
            let core = loc_core(b, ring.loc_p());
            Ideal::Loc(m / m.gcd(&core))
        }
        Ideal::QPoly(f) => {
            if f.is_empty() {
                Ideal::QPoly(Vec::new())
            } else {
                let g = poly::gcd(&Rationals, f, qpoly_coeffs(b));
                Ideal::QPoly(poly::monic(&Rationals, &poly::divrem(&Rationals, f, &g).0))
            }
        }
        Ideal::Lattice(rows) => Ideal::Lattice(lat_colon(ring, rows, b)),
        Ideal::OPoly { c, f } => {
            if c.is_empty() {
                return Ok(zero_ideal(ring));
            }
            let k = kfield(ring);
            let bc = opoly_coeffs(b);
            let g = poly::gcd(&k, &opoly_to_field(f), &opoly_to_field(bc));
            let h = primitive_normalize(ring, &g)?;
            let f1 = opoly_div(ring, f, &h).expect("gcd divides");
            let b1 = opoly_div(ring, bc, &h).expect("primitive divisor");
            let q = quad_ring(ring);
            let mut cc = identity_rows(2);
            for beta in b1.iter().filter(|x| !(x.0.is_zero() && x.1.is_zero())) {
                cc = lattice::intersect(&cc, &lat_colon(&q, c, &quad_elem(beta)), 2);
            }
            Ideal::OPoly {
                c: cc,
                f: unit_normalize(&q, &f1),
            }
        }
        Ideal::Pair(x, y) => {
            let (ra, rb) = ring.components().unwrap();
            let (ba, bb) = split_pair(b);
            Ideal::Pair(Box::new(ideal_colon(&ra, x, ba)?), Box::new(ideal_colon(&rb, y, bb)?))
        }
    })
}

/// Exact membership test.
pub fn ideal_contains(ring: &Ring, i: &Ideal, x: &Elem) -> bool {
    match i {
        Ideal::Int(n) => {
            let x = int_of(x);
            if n.is_zero() {
                x.is_zero()
            } else {
                (x % n).is_zero()
            }
        }
        Ideal::Loc(m) => {
            let x = loc_core(x, ring.loc_p());
            if m.is_zero() {
                x.is_zero()
            } else {
                (x % m).is_zero()
            }
        }
        Ideal::QPoly(f) => {
            let x = qpoly_coeffs(x);
            if f.is_empty() {
                x.is_empty()
            } else {
                poly::divrem(&Rationals, x, f).1.is_empty()
            }
        }
        Ideal::Lattice(rows) => lattice::contains(rows, &ring.to_coords(x)),
        Ideal::OPoly { c, f } => opoly_contains(ring, c, f, x),
        Ideal::Pair(a, b) => {
            let (ra, rb) = ring.components().unwrap();
            let (xa, xb) = split_pair(x);
            ideal_contains(&ra, a, xa) && ideal_contains(&rb, b, xb)
        }
    }
}

/// `I` is a subset of `J`.
pub fn ideal_le(ring: &Ring, i: &Ideal, j: &Ideal) -> bool {
    generators(ring, i).iter().all(|g| ideal_contains(ring, j, g))
}

/// `|R/I|`.
pub fn absolute_index(ring: &Ring, i: &Ideal) -> IndexValue {
    match i {
        Ideal::Int(n) | Ideal::Loc(n) => {
            if n.is_zero() {
                IndexValue::Infinite
            } else {
                IndexValue::from_count(n.clone())
            }
        }
        Ideal::QPoly(_) | Ideal::OPoly { .. } => {
            if is_unit_ideal(ring, i) {
                IndexValue::One
            } else {
                IndexValue::Infinite
            }
        }
        Ideal::Lattice(rows) => lat_index(rows, ring.lattice_dim().unwrap()),
        Ideal::Pair(a, b) => {
            let (ra, rb) = ring.components().unwrap();
            absolute_index(&ra, a).combine(&absolute_index(&rb, b))
        }
    }
}

/// `|J/(J meet J2)|`.
pub fn relative_index(ring: &Ring, j: &Ideal, j2: &Ideal) -> IndexValue {
    match (j, j2) {
        (Ideal::Int(a), Ideal::Int(b)) | (Ideal::Loc(a), Ideal::Loc(b)) => {
            if a.is_zero() {
                IndexValue::One
            } else {
                let l = a.lcm(b);
                if l.is_zero() {
                    IndexValue::Infinite
                } else {
                    IndexValue::from_count(l / a)
                }
            }
        }
        (Ideal::QPoly(_), Ideal::QPoly(_)) | (Ideal::OPoly { .. }, Ideal::OPoly { .. }) => {
            if ideal_le(ring, j, j2) {
                IndexValue::One
            } else {
                IndexValue::Infinite
            }
        }
        (Ideal::Lattice(a), Ideal::Lattice(b)) => {
            let n = ring.lattice_dim().unwrap();
            let meet = lattice::intersect(a, b, n);
            if meet.len() < a.len() {
                return IndexValue::Infinite;
            }
            let h = lattice::relative_coordinates(a, &meet, n).expect("meet lies in J");
            IndexValue::from_count(h.iter().enumerate().map(|(i, r)| r[i].clone()).product())
        }
        (Ideal::Pair(a, b), Ideal::Pair(c, d)) => {
            let (ra, rb) = ring.components().unwrap();
            relative_index(&ra, a, c).combine(&relative_index(&rb, b, d))
        }
        _ => panic!("ideal backend mismatch"),
    }
}

/// Representatives of `J` modulo `J meet J2`, in a fixed order.
pub fn transversal(ring: &Ring, j: &Ideal, j2: &Ideal) -> Result<Vec<Elem>> {
    let idx = relative_index(ring, j, j2);
    let Some(count) = idx.count() else {
        return Err(Error::InfiniteIndex(format!(
            "{} modulo {}",
            fmt_ideal(ring, j),
            fmt_ideal(ring, j2)
        )));
    };
    if count.is_one() {
        return Ok(vec![ring.zero()]);
    }
    Ok(match (j, j2) {
        (Ideal::Int(a), _) => {
            let mut out = Vec::new();
            let mut k = BigInt::zero();
            while k < count {
                out.push(Elem::Int(&k * a));
                k += 1;
            }
            out
        }
        (Ideal::Loc(a), _) => {
            let mut out = Vec::new();
            let mut k = BigInt::zero();
            while k < count {
                out.push(Elem::Loc(BigRational::from_integer(&k * a)));
                k += 1;
            }
            out
        }
        (Ideal::Lattice(a), Ideal::Lattice(b)) => {
            let n = ring.lattice_dim().unwrap();
            let meet = lattice::intersect(a, b, n);
            let h = lattice::relative_coordinates(a, &meet, n).unwrap();
            let bounds: Vec<BigInt> = h.iter().enumerate().map(|(i, r)| r[i].clone()).collect();
            lattice::box_points(&bounds)
                .into_iter()
                .map(|t| {
                    let mut v = vec![BigInt::zero(); n];
                    for (ti, row) in t.iter().zip(a) {
                        for (vc, rc) in v.iter_mut().zip(row) {
                            *vc += ti * rc;
                        }
                    }
                    ring.elem_from_coords(&v)
                })
                .collect()
        }
        (Ideal::Pair(a, b), Ideal::Pair(c, d)) => {
            let (ra, rb) = ring.components().unwrap();
            let ta = transversal(&ra, a, c)?;
            let tb = transversal(&rb, b, d)?;
            let mut out = Vec::with_capacity(ta.len() * tb.len());
            for x in &ta {
                for y in &tb {
                    out.push(Elem::Pair(Box::new(x.clone()), Box::new(y.clone())));
                }
            }
            out
        }
        _ => unreachable!("polynomial backends only have index one or infinity"),
    })
}

/// True when [`reduce`] returns a canonical residue for this ideal.
pub fn has_reduction(ring: &Ring, i: &Ideal) -> bool {
    match i {
        Ideal::OPoly { c, f } => {
            if c.is_empty() {
                return true;
            }
            let q = quad_ring(ring);
            let lc = quad_elem(f.last().unwrap());
            q.is_unit(&lc)
        }
        Ideal::Pair(a, b) => {
            let (ra, rb) = ring.components().unwrap();
            has_reduction(&ra, a) && has_reduction(&rb, b)
        }
        _ => true,
    }
}

/// Canonical residue of `x` modulo `I` where available, otherwise `x` itself.
pub fn reduce(ring: &Ring, i: &Ideal, x: &Elem) -> Elem {
    match i {
        Ideal::Int(n) => {
            if n.is_zero() {
                x.clone()
            } else {
                Elem::Int(int_of(x).mod_floor(n))
            }
        }
        Ideal::Loc(m) => {
            if m.is_zero() {
                return x.clone();
            }
            let Elem::Loc(q) = x else { unreachable!() };
            // q = n / p^k; find r in [0, m) with r = n * p^(-k) mod m.
            let den = q.denom();
            let inv = den.extended_gcd(m).x.mod_floor(m);
            Elem::Loc(BigRational::from_integer((q.numer() * inv).mod_floor(m)))
        }
        Ideal::QPoly(f) => {
            if f.is_empty() {
                x.clone()
            } else {
                qpoly_elem(poly::divrem(&Rationals, qpoly_coeffs(x), f).1)
            }
        }
        Ideal::Lattice(rows) => ring.elem_from_coords(&lattice::reduce(rows, &ring.to_coords(x))),
        Ideal::OPoly { c, f } => {
            if c.is_empty() || !has_reduction(ring, i) {
                return x.clone();
            }
            let k = kfield(ring);
            let (qq, r) = poly::divrem(&k, &opoly_to_field(opoly_coeffs(x)), &opoly_to_field(f));
            let qq = field_to_opoly(&qq).expect("unit leading coefficient keeps division integral");
            let r = field_to_opoly(&r).expect("unit leading coefficient keeps division integral");
            let q = quad_ring(ring);
            let qr: Vec<(BigInt, BigInt)> = qq
                .iter()
                .map(|co| quad_pair(&q.elem_from_coords(&lattice::reduce(c, &q.to_coords(&quad_elem(co))))))
                .collect();
            ring.add(&opoly_elem(opoly_mul(ring, &qr, f)), &opoly_elem(r))
        }
        Ideal::Pair(a, b) => {
            let (ra, rb) = ring.components().unwrap();
            let (xa, xb) = split_pair(x);
            Elem::Pair(Box::new(reduce(&ra, a, xa)), Box::new(reduce(&rb, b, xb)))
        }
    }
}

/// Integer vector of an order polynomial padded to `len` coefficients.
fn opoly_vector(q: &Ring, x: &[(BigInt, BigInt)], len: usize) -> Row {
    let mut v = Vec::with_capacity(2 * len);
    for k in 0..len {
        match x.get(k) {
            Some(c) => v.extend(q.to_coords(&quad_elem(c))),
            None => v.extend([BigInt::zero(), BigInt::zero()]),
        }
    }
    v
}

/// Solve `v = sum x_i g_i` over the integers for order polynomials.
fn opoly_lattice_solve(ring: &Ring, gens: &[Vec<(BigInt, BigInt)>], v: &[(BigInt, BigInt)]) -> Option<Vec<BigInt>> {
    let q = quad_ring(ring);
    let len = gens.iter().map(Vec::len).chain([v.len()]).max().unwrap_or(0);
    let rows: Vec<Row> = gens.iter().map(|g| opoly_vector(&q, g, len)).collect();
    lattice::solve(&rows, &opoly_vector(&q, v, len), 2 * len)
}

fn shifted(ring: &Ring, x: &[(BigInt, BigInt)], k: usize, scale: &(BigInt, BigInt)) -> Vec<(BigInt, BigInt)> {
    let mut v = vec![(BigInt::zero(), BigInt::zero()); k];
    v.extend(opoly_mul(ring, x, std::slice::from_ref(scale)));
    opoly_coeffs(&opoly_elem(v)).to_vec()
}

fn combine(ring: &Ring, gens: &[Vec<(BigInt, BigInt)>], x: &[BigInt]) -> Elem {
    gens.iter().zip(x).fold(ring.zero(), |acc, (g, t)| {
        let term = opoly_mul(ring, g, &[(t.clone(), BigInt::zero())]);
        ring.add(&acc, &opoly_elem(term))
    })
}

fn int_congruence(e: &BigInt, v: &BigInt, n: &BigInt) -> Option<BigInt> {
    if n.is_zero() {
        if e.is_zero() {
            return None;
        }
        let (q, r) = v.div_rem(e);
        return r.is_zero().then_some(q);
    }
    let g = e.gcd(n);
    if !(v % &g).is_zero() {
        return None;
    }
    let (e1, v1, n1) = (e / &g, v / &g, n / &g);
    let inv = e1.extended_gcd(&n1).x;
    Some((v1 * inv).mod_floor(&n1))
}

/// Some `j` in `I1` with `v - j` in `I2`, or `None` when `v` is outside `I1 + I2`.
pub fn split_sum(ring: &Ring, v: &Elem, i1: &Ideal, i2: &Ideal) -> Result<Option<Elem>> {
    if ideal_contains(ring, i2, v) {
        return Ok(Some(ring.zero()));
    }
    if ideal_contains(ring, i1, v) {
        return Ok(Some(v.clone()));
    }
    Ok(match (i1, i2) {
        (Ideal::Int(a), Ideal::Int(b)) => {
            let eg = a.extended_gcd(b);
            let v = int_of(v);
            if eg.gcd.is_zero() || !(v % &eg.gcd).is_zero() {
                None
            } else {
                let j = a * &eg.x * (v / &eg.gcd);
                Some(Elem::Int(j.mod_floor(&a.lcm(b).max(BigInt::one()))))
            }
        }
        (Ideal::Loc(a), Ideal::Loc(b)) => {
            let eg = a.extended_gcd(b);
            if eg.gcd.is_zero() || !ideal_contains(ring, &Ideal::Loc(eg.gcd.clone()), v) {
                None
            } else {
                let Elem::Loc(vq) = v else { unreachable!() };
                let j = BigRational::from_integer(a * &eg.x) * vq / BigRational::from_integer(eg.gcd);
                Some(Elem::Loc(j))
            }
        }
        (Ideal::QPoly(a), Ideal::QPoly(b)) => {
            if a.is_empty() || b.is_empty() {
                None
            } else {
                let (g, s, _) = poly::xgcd(&Rationals, a, b);
                let (vq, r) = poly::divrem(&Rationals, qpoly_coeffs(v), &g);
                if !r.is_empty() {
                    None
                } else {
                    let j = poly::mul(&Rationals, &poly::mul(&Rationals, a, &s), &vq);
                    let l = poly::divrem(&Rationals, &poly::mul(&Rationals, a, b), &g).0;
                    Some(qpoly_elem(poly::divrem(&Rationals, &j, &l).1))
                }
            }
        }
        (Ideal::Lattice(a), Ideal::Lattice(b)) => {
            let n = ring.lattice_dim().unwrap();
            let gens: Vec<Row> = a.iter().chain(b).cloned().collect();
            lattice::solve(&gens, &ring.to_coords(v), n).map(|x| {
                let mut w = vec![BigInt::zero(); n];
                for (t, row) in x.iter().zip(a) {
                    for (wc, rc) in w.iter_mut().zip(row) {
                        *wc += t * rc;
                    }
                }
                ring.elem_from_coords(&w)
            })
        }
        (Ideal::OPoly { c: c1, f: f1 }, Ideal::OPoly { c: c2, f: f2 }) => {
            if c1.is_empty() || c2.is_empty() {
                return Ok(None);
            }
            let k = kfield(ring);
            let vc = opoly_coeffs(v);
            let g = poly::gcd(&k, &opoly_to_field(f1), &opoly_to_field(f2));
            if !poly::divrem(&k, &opoly_to_field(vc), &g).1.is_empty() {
                return Ok(None);
            }
            let q = quad_ring(ring);
            let bound = vc.len() + f1.len() + f2.len();
            let g1: Vec<Vec<(BigInt, BigInt)>> = (0..bound)
                .flat_map(|t| lat_elems(&q, c1).into_iter().map(move |gm| (t, gm)))
                .map(|(t, gm)| shifted(ring, f1, t, &quad_pair(&gm)))
                .collect();
            let g2: Vec<Vec<(BigInt, BigInt)>> = (0..bound)
                .flat_map(|t| lat_elems(&q, c2).into_iter().map(move |gm| (t, gm)))
                .map(|(t, gm)| shifted(ring, f2, t, &quad_pair(&gm)))
                .collect();
            let all: Vec<_> = g1.iter().chain(&g2).cloned().collect();
            match opoly_lattice_solve(ring, &all, vc) {
                Some(x) => Some(combine(ring, &g1, &x[..g1.len()])),
                None if f1 == f2 => None,
                None => {
                    return Err(Error::Unsupported(format!(
                        "decomposing {} over {} + {}",
                        ring.fmt(v),
                        fmt_ideal(ring, i1),
                        fmt_ideal(ring, i2)
                    )))
                }
            }
        }
        (Ideal::Pair(a, b), Ideal::Pair(c, d)) => {
            let (ra, rb) = ring.components().unwrap();
            let (va, vb) = split_pair(v);
            match (split_sum(&ra, va, a, c)?, split_sum(&rb, vb, b, d)?) {
                (Some(x), Some(y)) => Some(Elem::Pair(Box::new(x), Box::new(y))),
                _ => None,
            }
        }
        _ => panic!("ideal backend mismatch"),
    })
}

/// Some `r` with `e*r - v` in `I`, or `None` when no solution exists.
pub fn solve_congruence(ring: &Ring, e: &Elem, v: &Elem, i: &Ideal) -> Result<Option<Elem>> {
    if ideal_contains(ring, i, v) {
        return Ok(Some(ring.zero()));
    }
    if ring.is_regular(e) {
        if let Some(r) = ring.divide_unchecked(v, e) {
            return Ok(Some(r));
        }
    }
    Ok(match i {
        Ideal::Int(n) => int_congruence(int_of(e), int_of(v), n).map(Elem::Int),
        Ideal::Loc(m) => {
            if m.is_zero() {
                None
            } else {
                let re = int_of(&int_image(ring, i, e)).clone();
                let rv = int_of(&int_image(ring, i, v)).clone();
                int_congruence(&re, &rv, m).map(|r| Elem::Loc(BigRational::from_integer(r)))
            }
        }
        Ideal::QPoly(f) => {
            if f.is_empty() {
                None
            } else {
                let ec = qpoly_coeffs(e);
                let g = poly::gcd(&Rationals, ec, f);
                let (v1, r) = poly::divrem(&Rationals, qpoly_coeffs(v), &g);
                if !r.is_empty() {
                    None
                } else {
                    let e1 = poly::divrem(&Rationals, ec, &g).0;
                    let f1 = poly::divrem(&Rationals, f, &g).0;
                    let (_, s, _) = poly::xgcd(&Rationals, &e1, &f1);
                    let r = poly::mul(&Rationals, &s, &v1);
                    Some(qpoly_elem(poly::divrem(&Rationals, &r, &f1).1))
                }
            }
        }
        Ideal::Lattice(rows) => {
            let n = ring.lattice_dim().unwrap();
            let mut gens = ring.mul_matrix(e);
            gens.extend(rows.iter().cloned());
            lattice::solve(&gens, &ring.to_coords(v), n).map(|x| ring.elem_from_coords(&x[..n]))
        }
        Ideal::OPoly { c, f } => {
            if c.is_empty() {
                return Ok(None);
            }
            let q = quad_ring(ring);
            let (ec, vc) = (opoly_coeffs(e), opoly_coeffs(v));
            let bound = vc.len() + f.len() + ec.len();
            let basis = [(BigInt::one(), BigInt::zero()), (BigInt::zero(), BigInt::one())];
            let gr: Vec<Vec<(BigInt, BigInt)>> = (0..bound)
                .flat_map(|t| basis.iter().map(move |b| shifted(ring, ec, t, b)))
                .collect();
            let units: Vec<Vec<(BigInt, BigInt)>> = (0..bound)
                .flat_map(|t| {
                    basis
                        .iter()
                        .map(move |b| shifted(ring, &[(BigInt::one(), BigInt::zero())], t, b))
                })
                .collect();
            let gi: Vec<Vec<(BigInt, BigInt)>> = (0..bound)
                .flat_map(|t| lat_elems(&q, c).into_iter().map(move |gm| (t, gm)))
                .map(|(t, gm)| shifted(ring, f, t, &quad_pair(&gm)))
                .collect();
            let all: Vec<_> = gr.iter().chain(&gi).cloned().collect();
            match opoly_lattice_solve(ring, &all, vc) {
                Some(x) => Some(combine(ring, &units, &x[..units.len()])),
                None if ec.len() <= 1 && f.len() == 1 => None,
                None => {
                    return Err(Error::Unsupported(format!(
                        "solving {} * r = {} modulo {}",
                        ring.fmt(e),
                        ring.fmt(v),
                        fmt_ideal(ring, i)
                    )))
                }
            }
        }
        Ideal::Pair(a, b) => {
            let (ra, rb) = ring.components().unwrap();
            let (ea, eb) = split_pair(e);
            let (va, vb) = split_pair(v);
            match (solve_congruence(&ra, ea, va, a)?, solve_congruence(&rb, eb, vb, b)?) {
                (Some(x), Some(y)) => Some(Elem::Pair(Box::new(x), Box::new(y))),
                _ => None,
            }
        }
    })
}

/// Residue of a localized element modulo `(m)` as an integer in `[0, m)`.
fn int_image(ring: &Ring, i: &Ideal, x: &Elem) -> Elem {
    match reduce(ring, i, x) {
        Elem::Loc(q) => Elem::Int(q.to_integer()),
        _ => unreachable!(),
    }
}

/// Literal form: `R`, `ideal(0)` or `ideal(g1, g2, ...)`.
pub fn fmt_ideal(ring: &Ring, i: &Ideal) -> String {
    if is_unit_ideal(ring, i) {
        return "R".into();
    }
    format!("ideal({})", gens_text(ring, &generators(ring, i)))
}

/// A base family of ideals and its closure under principal multiples and
/// finite intersections.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IdealFamily {
    pub base: Vec<Ideal>,
}

/// One closure member with the recipe that produced it: the intersection of
/// `b * I` over the listed factors, `I` being `base[k]` or `R` for `None`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureMember {
    pub ideal: Ideal,
    pub derivation: Vec<(Elem, Option<usize>)>,
}

impl IdealFamily {
    pub fn new(base: Vec<Ideal>) -> IdealFamily {
        IdealFamily { base }
    }

    /// Members of the closure built with at most `depth` uses of the
    /// multipliers, deduplicated, in order of discovery.
    pub fn closure(&self, ring: &Ring, multipliers: &[Elem], depth: usize) -> Result<Vec<ClosureMember>> {
        for m in multipliers {
            if !ring.is_regular(m) {
                return Err(Error::NotRegular(ring.fmt(m)));
            }
        }
        // Principal multiples b*I with their cost (number of multiplier factors).
        let mut bases: Vec<(Option<usize>, Ideal)> = vec![(None, unit_ideal(ring))];
        bases.extend(self.base.iter().cloned().enumerate().map(|(k, i)| (Some(k), i)));
        let mut words: Vec<(usize, Elem)> = vec![(0, ring.one())];
        let mut frontier = vec![ring.one()];
        for cost in 1..=depth {
            let mut next = Vec::new();
            for w in &frontier {
                for m in multipliers {
                    let x = ring.mul(w, m);
                    if !words.iter().any(|(_, y)| *y == x) && !next.contains(&x) {
                        next.push(x);
                    }
                }
            }
            words.extend(next.iter().map(|x| (cost, x.clone())));
            frontier = next;
        }
        let mut found: Vec<(usize, ClosureMember)> = Vec::new();
        let push = |found: &mut Vec<(usize, ClosureMember)>, cost: usize, m: ClosureMember| {
            if let Some(pos) = found.iter().position(|(_, x)| x.ideal == m.ideal) {
                if found[pos].0 > cost {
                    found[pos] = (cost, m);
                }
                false
            } else {
                found.push((cost, m));
                true
            }
        };
        for (cost, w) in &words {
            for (k, i) in &bases {
                let ideal = ideal_scale(ring, w, i)?;
                push(
                    &mut found,
                    *cost,
                    ClosureMember {
                        ideal,
                        derivation: vec![(w.clone(), *k)],
                    },
                );
            }
        }
        let mut changed = true;
        while changed {
            changed = false;
            let snapshot = found.clone();
            for (c1, m1) in &snapshot {
                for (c2, m2) in &snapshot {
                    if c1 + c2 > depth {
                        continue;
                    }
                    let ideal = ideal_intersect(ring, &m1.ideal, &m2.ideal)?;
                    let mut derivation = m1.derivation.clone();
                    derivation.extend(m2.derivation.iter().cloned());
                    if push(&mut found, c1 + c2, ClosureMember { ideal, derivation }) {
                        changed = true;
                    }
                }
            }
        }
        let mut out: Vec<(usize, ClosureMember)> = found;
        out.sort_by_key(|(c, _)| *c);
        Ok(out.into_iter().map(|(_, m)| m).collect())
    }
}

/// Recompute a closure member from its derivation.
pub fn rebuild(ring: &Ring, fam: &IdealFamily, derivation: &[(Elem, Option<usize>)]) -> Result<Ideal> {
    let mut acc = unit_ideal(ring);
    for (b, k) in derivation {
        let base = match k {
            Some(k) => fam.base[*k].clone(),
            None => unit_ideal(ring),
        };
        acc = ideal_intersect(ring, &acc, &ideal_scale(ring, b, &base)?)?;
    }
    Ok(acc)
}
