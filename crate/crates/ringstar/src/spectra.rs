//! Finite-level approximations of the spectrum of the diagonal: finite
//! quotients and their characters, the prime-power levels of `Q[T]` with
//! structure maps and order, CRT lifting, and levels of `Z[1/p]`.

use crate::cosets::coset_has;
use crate::error::{Error, Result};
use crate::ideals::{
    absolute_index, fmt_ideal, ideal_contains, ideal_intersect, ideal_le, ideal_sum, is_unit_ideal, principal, reduce,
    split_sum, transversal, unit_ideal, Ideal,
};
use crate::poly::{self, Rationals};
use crate::rings::{qpoly_elem, Elem, Ring, RingDescriptor};
use crate::scalar::{self, Scalar};
use crate::star_algebra::{diagonal_weight, AlgebraElement};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// The quotient `R/I` as a list of points.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteLevel {
    pub modulus: Ideal,
    pub points: Vec<Elem>,
}

pub fn finite_level(ring: &Ring, i: &Ideal) -> Result<FiniteLevel> {
    if !absolute_index(ring, i).is_finite() {
        return Err(Error::InfiniteIndex(format!("R/{} is infinite", fmt_ideal(ring, i))));
    }
    Ok(FiniteLevel {
        modulus: i.clone(),
        points: transversal(ring, &unit_ideal(ring), i)?,
    })
}

/// Value of the diagonal element `x` at the point `z` of the level.
pub fn character_eval(ring: &Ring, level: &FiniteLevel, z: &Elem, x: &AlgebraElement) -> Result<Scalar> {
    let w = diagonal_weight(ring, x)?;
    let mut total = scalar::zero();
    for (k, c) in &w.terms {
        if !ideal_le(ring, &level.modulus, &k.ideal) {
            return Err(Error::NotAboveModulus(fmt_ideal(ring, &k.ideal)));
        }
        if coset_has(ring, k, z) {
            total += c;
        }
    }
    Ok(total)
}

/// Edges `n -> n/q` of the divisor levels of `Z/n`, one per prime `q | d`.
pub fn divisor_graph(n: u64) -> Vec<(u64, u64)> {
    let divisors: Vec<u64> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    let mut edges = Vec::new();
    for &d in divisors.iter().rev() {
        for q in 2..=d {
            if d % q == 0 && crate::rings::is_prime(q) {
                edges.push((d, d / q));
            }
        }
    }
    edges
}

type QPoly = Vec<BigRational>;

fn is_irreducible_small(cs: &[BigInt]) -> bool {
    // Monic integer polynomial of degree at most 3: irreducible iff no integer root
    // (rational roots of monic integer polynomials are integers dividing the constant).
    let deg = cs.len() - 1;
    if deg == 1 {
        return true;
    }
    let c0 = cs[0].abs();
    if c0.is_zero() {
        return false;
    }
    let bound: i64 = c0.clone().try_into().unwrap_or(i64::MAX);
    for r in 1..=bound {
        for root in [r, -r] {
            let x = BigInt::from(root);
            let v = cs.iter().rev().fold(BigInt::zero(), |acc, c| acc * &x + c);
            if v.is_zero() {
                return false;
            }
        }
    }
    true
}

const MAX_PRIME_DEGREE: usize = 3;

/// Monic irreducibles ordered by degree plus height, higher degree first on
/// ties, then by coefficients from the top with `-c` before `c`.
fn prime_batch(weight: usize) -> Vec<Vec<BigInt>> {
    let mut out = Vec::new();
    for deg in (1..=weight.min(MAX_PRIME_DEGREE)).rev() {
        let h = (weight - deg) as i64;
        let mut vecs: Vec<Vec<i64>> = vec![Vec::new()];
        for _ in 0..deg {
            let mut next = Vec::new();
            for v in &vecs {
                let mut vals: Vec<i64> = (-h..=h).collect();
                vals.sort_by_key(|c| (c.abs(), *c));
                for c in vals {
                    let mut w = v.clone();
                    w.push(c);
                    next.push(w);
                }
            }
            vecs = next;
        }
        // vecs hold coefficients from T^(deg-1) down to T^0.
        for v in vecs {
            if v.iter().map(|c| c.abs()).max().unwrap_or(0) != h {
                continue;
            }
            let mut cs: Vec<BigInt> = v.iter().rev().map(|&c| BigInt::from(c)).collect();
            cs.push(BigInt::from(1));
            if is_irreducible_small(&cs) {
                out.push(cs);
            }
        }
    }
    out
}

/// The first `n` primes of `Q[T]`: `T, T-1, T+1, T^2+1, ...`.
pub fn qpoly_primes(n: usize) -> Vec<Elem> {
    let mut out = Vec::new();
    let mut weight = 1;
    while out.len() < n {
        for cs in prime_batch(weight) {
            if out.len() < n {
                out.push(qpoly_elem(cs.into_iter().map(BigRational::from_integer).collect()));
            }
        }
        weight += 1;
    }
    out
}

/// A point of the `n`-th level: a residue modulo `p_1^{i_1} ... p_n^{i_n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyLevelPoint {
    pub exponents: Vec<u32>,
    pub residue: Elem,
}

impl PolyLevelPoint {
    pub fn level(&self) -> usize {
        self.exponents.len()
    }
}

fn qring() -> Ring {
    Ring::new(RingDescriptor::RationalPoly).expect("Q[T] is always valid")
}

fn coeffs(x: &Elem) -> QPoly {
    match x {
        Elem::QPoly(v) => v.clone(),
        _ => panic!("not a rational polynomial"),
    }
}

/// `p_1^{i_1} ... p_n^{i_n}`.
pub fn level_modulus(exponents: &[u32]) -> Elem {
    let q = qring();
    let primes = qpoly_primes(exponents.len());
    exponents
        .iter()
        .zip(&primes)
        .fold(q.one(), |acc, (&i, p)| q.mul(&acc, &q.pow(p, i)))
}

fn reduce_mod(x: &Elem, m: &Elem) -> Elem {
    qpoly_elem(poly::divrem(&Rationals, &coeffs(x), &coeffs(m)).1)
}

pub fn poly_level_point(exponents: Vec<u32>, residue: &Elem) -> Result<PolyLevelPoint> {
    let n = exponents.len() as u32;
    if exponents.iter().any(|&i| i > n) {
        return Err(Error::NotApplicable(format!("exponents must be at most the level {n}")));
    }
    qring().check(residue)?;
    let m = level_modulus(&exponents);
    Ok(PolyLevelPoint {
        residue: reduce_mod(residue, &m),
        exponents,
    })
}

/// The structure map from level `n+1` to level `n`.
pub fn poly_level_project(pt: &PolyLevelPoint) -> Result<PolyLevelPoint> {
    let n = pt.level();
    if n == 0 {
        return Err(Error::NotApplicable("level zero has no coarser level".into()));
    }
    let exps: Vec<u32> = pt.exponents[..n - 1].iter().map(|&i| i.min(n as u32 - 1)).collect();
    poly_level_point(exps, &pt.residue)
}

/// `z <= z2`: `I_z` inside `I_z2` and `z = z2` modulo `I_z2`.
pub fn poly_level_le(z: &PolyLevelPoint, z2: &PolyLevelPoint) -> bool {
    if z.level() != z2.level() || z.exponents.iter().zip(&z2.exponents).any(|(a, b)| b > a) {
        return false;
    }
    let m2 = level_modulus(&z2.exponents);
    reduce_mod(&z.residue, &m2) == z2.residue
}

/// Every exponent tuple of level `n`, lexicographic.
pub fn level_exponents(n: usize) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for v in &out {
            for i in 0..=n as u32 {
                let mut w: Vec<u32> = v.clone();
                w.push(i);
                next.push(w);
            }
        }
        out = next;
    }
    out
}

/// Some `r` with `r = x_j` modulo `I_j` for every target, reduced modulo the
/// intersection of the moduli.
pub fn crt_lift(ring: &Ring, targets: &[(Elem, Ideal)]) -> Result<Elem> {
    for (i, (_, a)) in targets.iter().enumerate() {
        for (_, b) in &targets[i + 1..] {
            if !is_unit_ideal(ring, &ideal_sum(ring, a, b)?) {
                return Err(Error::NotCoprime);
            }
        }
    }
    let Some(((x0, i0), rest)) = targets.split_first() else {
        return Ok(ring.zero());
    };
    let mut x = x0.clone();
    let mut m = i0.clone();
    for (y, j) in rest {
        let jump = split_sum(ring, &ring.sub(y, &x), &m, j)?
            .ok_or_else(|| Error::Verification("coprime moduli did not split".into()))?;
        x = ring.add(&x, &jump);
        m = ideal_intersect(ring, &m, j)?;
    }
    let x = reduce(ring, &m, &x);
    for (y, j) in targets {
        if !ideal_contains(ring, j, &ring.sub(&x, y)) {
            return Err(Error::Verification("lift misses a target".into()));
        }
    }
    Ok(x)
}

/// Hit a point of a `Q[T]` level by a ring element.
pub fn poly_level_lift(pt: &PolyLevelPoint) -> Result<Elem> {
    let q = qring();
    let primes = qpoly_primes(pt.level());
    let targets: Vec<(Elem, Ideal)> = pt
        .exponents
        .iter()
        .zip(&primes)
        .filter(|(&i, _)| i > 0)
        .map(|(&i, p)| Ok((pt.residue.clone(), principal(&q, &q.pow(p, i))?)))
        .collect::<Result<_>>()?;
    crt_lift(&q, &targets)
}

/// `Z[1/p]/(m)`.
pub fn localized_level(p: u32, m: i64) -> Result<FiniteLevel> {
    let ring = Ring::new(RingDescriptor::LocalizedIntegers(p))?;
    if m == 0 {
        return Err(Error::InfiniteIndex("the zero ideal has infinite index".into()));
    }
    if m % p as i64 == 0 {
        return Err(Error::NotApplicable(format!(
            "{p} divides {m}: {p} is invertible in Z[1/{p}]"
        )));
    }
    finite_level(&ring, &principal(&ring, &ring.int(m))?)
}
