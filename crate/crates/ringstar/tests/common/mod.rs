//! Brute-force oracles and deterministic samplers shared by the integration tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};
use ringstar::cosets::Coset;
use ringstar::scalar::{self, Scalar};
use ringstar::star_algebra::{self as alg, AlgebraElement};
use ringstar::{Elem, Ring, RingDescriptor};
use std::collections::BTreeMap;

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn ring(desc: RingDescriptor) -> Ring {
    Ring::new(desc).unwrap()
}

pub fn z() -> Ring {
    Ring::integers()
}

/// `Z[i sqrt 5]`.
pub fn quad5() -> Ring {
    ring(RingDescriptor::QuadraticOrder(-5))
}

pub fn qpoly() -> Ring {
    ring(RingDescriptor::RationalPoly)
}

pub fn opoly5() -> Ring {
    ring(RingDescriptor::OrderPoly(-5))
}

pub fn cyc(p: u32) -> Ring {
    ring(RingDescriptor::CyclicGroupRing(p))
}

pub fn quad(x: i64, y: i64) -> Elem {
    Elem::Quad(BigInt::from(x), BigInt::from(y))
}

/// `sum c_i T^i`, built with ring arithmetic so the result is canonical.
pub fn poly(r: &Ring, coeffs: &[i64]) -> Elem {
    let t = r.generator().expect("polynomial ring");
    coeffs.iter().enumerate().fold(r.zero(), |acc, (i, &c)| {
        r.add(&acc, &r.mul(&r.int(c), &r.pow(&t, i as u32)))
    })
}

pub fn cyc_elem(r: &Ring, coeffs: &[i64]) -> Elem {
    let t = r.generator().expect("group ring");
    coeffs.iter().enumerate().fold(r.zero(), |acc, (i, &c)| {
        r.add(&acc, &r.mul(&r.int(c), &r.pow(&t, i as u32)))
    })
}

pub fn int_value(x: &Elem) -> i64 {
    match x {
        Elem::Int(n) => n.to_i64().unwrap(),
        _ => panic!("not an integer: {x:?}"),
    }
}

pub fn coset(r: &Ring, a: &Elem, m: &Elem) -> Coset {
    Coset::principal(r, a, m).unwrap()
}

pub fn zc(a: i64, m: i64) -> Coset {
    let r = z();
    coset(&r, &r.int(a), &r.int(m))
}

/// A random polynomial of degree at most `deg` with coefficients in `[-h, h]`.
pub fn random_poly(rng: &mut StdRng, r: &Ring, deg: usize, h: i64) -> Elem {
    let cs: Vec<i64> = (0..=deg).map(|_| rng.random_range(-h..=h)).collect();
    poly(r, &cs)
}

pub fn random_nonzero_poly(rng: &mut StdRng, r: &Ring, deg: usize, h: i64) -> Elem {
    loop {
        let p = random_poly(rng, r, deg, h);
        if !r.is_zero(&p) {
            return p;
        }
    }
}

pub fn random_nonzero_int(rng: &mut StdRng, h: i64) -> i64 {
    loop {
        let n = rng.random_range(-h..=h);
        if n != 0 {
            return n;
        }
    }
}

/// Data of the word `s_b* u^c e_{k + (m)} s_b2`.
#[derive(Clone, Debug)]
pub struct Word {
    pub b: Elem,
    pub c: Elem,
    pub k: Elem,
    pub m: Elem,
    pub b2: Elem,
}

impl Word {
    pub fn build(&self, r: &Ring) -> AlgebraElement {
        alg::elem_product(
            r,
            &[
                alg::s_star(r, &self.b).unwrap(),
                alg::u(r, &self.c).unwrap(),
                alg::e(r, &coset(r, &self.k, &self.m)),
                alg::s(r, &self.b2).unwrap(),
            ],
        )
        .unwrap()
    }

    /// The word applied to the basis vector at `x`, computed with ring
    /// arithmetic alone: multiply, test membership, translate, divide.
    pub fn apply(&self, r: &Ring, x: &Elem) -> Option<Elem> {
        let y = r.mul(&self.b2, x);
        divides(r, &self.m, &r.sub(&y, &self.k))?;
        let y = r.add(&y, &self.c);
        r.divide_exact(&y, &self.b).unwrap()
    }
}

/// `Some(q)` with `q*m = x`; the zero modulus only divides zero.
pub fn divides(r: &Ring, m: &Elem, x: &Elem) -> Option<Elem> {
    if r.is_zero(m) {
        return r.is_zero(x).then(|| r.zero());
    }
    r.divide_exact(x, m).unwrap()
}

pub fn random_z_word(rng: &mut StdRng, h: i64) -> Word {
    let r = z();
    Word {
        b: r.int(random_nonzero_int(rng, h)),
        c: r.int(rng.random_range(-h..=h)),
        k: r.int(rng.random_range(-h..=h)),
        m: r.int(rng.random_range(1..=h)),
        b2: r.int(random_nonzero_int(rng, h)),
    }
}

/// Coefficient and degree heights bounded by `h`.
pub fn random_qpoly_word(rng: &mut StdRng, h: i64) -> Word {
    let r = qpoly();
    let small = (h as usize).min(2);
    let degs: [usize; 3] = [
        rng.random_range(0..=1),
        rng.random_range(0..=1),
        rng.random_range(0..=1),
    ];
    Word {
        b: random_nonzero_poly(rng, &r, degs[0], h),
        c: random_poly(rng, &r, small, h),
        k: random_poly(rng, &r, small, h),
        m: random_nonzero_poly(rng, &r, degs[1], h),
        b2: random_nonzero_poly(rng, &r, degs[2], h),
    }
}

/// A self-adjoint element: `sum (lambda w + conj(lambda) w*)` plus a real diagonal part.
pub fn random_self_adjoint(g: &mut StdRng, words: usize) -> AlgebraElement {
    let r = z();
    let mut x = AlgebraElement::zero();
    for _ in 0..words {
        let w = random_z_word(g, 3).build(&r);
        let lambda = rational(g.random_range(-3..=3), 1) + rational(g.random_range(-2..=2), 1) * scalar::i();
        x = alg::elem_add(&r, &x, &alg::elem_scale(&r, &w, &lambda));
        x = alg::elem_add(
            &r,
            &x,
            &alg::elem_scale(&r, &alg::adjoint(&r, &w).unwrap(), &scalar::conj(&lambda)),
        );
    }
    let m = g.random_range(1..=4);
    let k = zc(g.random_range(0..m), m);
    alg::elem_add(
        &r,
        &x,
        &alg::elem_scale(&r, &alg::e(&r, &k), &scalar::int(g.random_range(1..=3))),
    )
}

/// Sparse vector in normal form: merged, zero-free, keyed by basis index.
pub type Vector = BTreeMap<Elem, Scalar>;

pub fn vector(v: &[(Scalar, Elem)]) -> Vector {
    let mut out = Vector::new();
    for (c, x) in v {
        *out.entry(x.clone()).or_insert_with(scalar::zero) += c;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

pub fn apply_words(r: &Ring, words: &[(Scalar, Word)], v: &Vector) -> Vector {
    let mut out = Vector::new();
    for (x, c) in v {
        for (d, w) in words {
            if let Some(y) = w.apply(r, x) {
                *out.entry(y).or_insert_with(scalar::zero) += c * d;
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// The element `sum d_i w_i`.
pub fn build_sum(r: &Ring, words: &[(Scalar, Word)]) -> AlgebraElement {
    words.iter().fold(AlgebraElement::zero(), |acc, (d, w)| {
        alg::elem_add(r, &acc, &alg::elem_scale(r, &w.build(r), d))
    })
}

/// Index of the ideal of `Z[w]`, `w^2 = d`, generated by `gens`: the ideal
/// contains `n = |N(g)|` for a nonzero generator `g`.
pub fn quad_index_brute(d: i64, gens: &[(i64, i64)]) -> u64 {
    let (x, y) = *gens.iter().find(|g| **g != (0, 0)).expect("nonzero ideal");
    let n = (x * x - d * y * y).abs();
    let span: Vec<(i64, i64)> = gens.iter().flat_map(|&(a, b)| [(a, b), (b * d, a)]).collect();
    lattice_index_brute(n, &span)
}

/// Index in `Z^2` of the lattice spanned by `span`, given a positive integer
/// `n` with `n Z^2` inside it: `n^2` over the size of the spanned subgroup of
/// `(Z/n)^2`, found by closure.
pub fn lattice_index_brute(n: i64, span: &[(i64, i64)]) -> u64 {
    assert!(n > 0);
    let md = |v: i64| v.rem_euclid(n);
    let mut seen = vec![false; (n * n) as usize];
    let mut stack = vec![(0i64, 0i64)];
    seen[0] = true;
    while let Some((a, b)) = stack.pop() {
        for &(ga, gb) in span {
            let next = (md(a + ga), md(b + gb));
            let slot = (next.0 * n + next.1) as usize;
            if !seen[slot] {
                seen[slot] = true;
                stack.push(next);
            }
        }
    }
    let size = seen.iter().filter(|s| **s).count() as u64;
    (n * n) as u64 / size
}

/// Is `a + (m)` covered by the `a_j + (m_j)`? Checks every residue modulo the
/// lcm of the moduli; returns the least uncovered point when there is one.
pub fn z_cover_brute(c: (i64, i64), family: &[(i64, i64)]) -> Option<i64> {
    let l = family.iter().fold(c.1, |l, &(_, m)| num_integer::lcm(l, m));
    (0..l / c.1)
        .map(|t| c.0.rem_euclid(c.1) + t * c.1)
        .find(|x| family.iter().all(|&(a, m)| (x - a).rem_euclid(m) != 0))
}

/// Determinant of the circulant matrix of `coeffs` (multiplication by the
/// element on `Z^p`), by fraction-free elimination.
pub fn circulant_det(coeffs: &[i64]) -> i128 {
    let p = coeffs.len();
    let mut m: Vec<Vec<i128>> = (0..p)
        .map(|i| (0..p).map(|j| coeffs[(p + i - j) % p] as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..p {
        if m[k][k] == 0 {
            match (k + 1..p).find(|&i| m[i][k] != 0) {
                Some(i) => {
                    m.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..p {
            for j in k + 1..p {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[p - 1][p - 1]
}

/// Every vector of length `p` with entries in `[-h, h]`.
pub fn coefficient_box(p: usize, h: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..p {
        out = out
            .into_iter()
            .flat_map(|v| {
                (-h..=h).map(move |c| {
                    let mut w = v.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    out
}

pub fn rational(n: i64, d: i64) -> Scalar {
    scalar::real(num_rational::BigRational::new(BigInt::from(n), BigInt::from(d)))
}

pub fn is_zero_scalar(s: &Scalar) -> bool {
    s.is_zero()
}
