//! Cosets `a + I`, their intersections and affine images, covering decisions,
//! and linear combinations of coset indicator functions.

use crate::error::{Error, Result};
use crate::ideals::{
    self, generators, has_reduction, ideal_colon, ideal_contains, ideal_intersect, ideal_le, ideal_scale,
    relative_index, transversal, unit_ideal, Ideal, IndexValue,
};
use crate::rings::{opoly_elem, qpoly_elem, Elem, Ring};
use crate::scalar::{self, Scalar};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

/// Largest family handled by sign-pattern enumeration.
pub const ATOM_CAP: usize = 12;

/// Give up on witness enumeration beyond this level.
const MAX_LEVEL: u32 = 40;

/// The set `rep + ideal`. The representative is reduced whenever the ideal
/// has a canonical residue map.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coset {
    pub rep: Elem,
    pub ideal: Ideal,
}

impl Coset {
    pub fn new(ring: &Ring, rep: Elem, ideal: Ideal) -> Coset {
        let rep = ideals::reduce(ring, &ideal, &rep);
        Coset { rep, ideal }
    }

    /// The whole ring, `0 + R`.
    pub fn whole(ring: &Ring) -> Coset {
        Coset {
            rep: ring.zero(),
            ideal: unit_ideal(ring),
        }
    }

    /// `a + (b)`.
    pub fn principal(ring: &Ring, a: &Elem, b: &Elem) -> Result<Coset> {
        Ok(Coset::new(ring, a.clone(), ideals::principal(ring, b)?))
    }
}

/// `rep mod ideal` in the command-line coset syntax.
pub fn fmt_coset(ring: &Ring, k: &Coset) -> String {
    format!("{} mod {}", ring.fmt(&k.rep), ideals::fmt_ideal(ring, &k.ideal))
}

pub fn coset_has(ring: &Ring, k: &Coset, x: &Elem) -> bool {
    ideal_contains(ring, &k.ideal, &ring.sub(x, &k.rep))
}

/// Set equality.
pub fn coset_eq(ring: &Ring, a: &Coset, b: &Coset) -> bool {
    a.ideal == b.ideal && coset_has(ring, a, &b.rep)
}

/// `inner` is a subset of `outer`.
pub fn coset_contains(ring: &Ring, outer: &Coset, inner: &Coset) -> bool {
    coset_has(ring, outer, &inner.rep) && ideal_le(ring, &inner.ideal, &outer.ideal)
}

/// The common part of two cosets, or `None` when they are disjoint.
pub fn coset_intersect(ring: &Ring, k1: &Coset, k2: &Coset) -> Result<Option<Coset>> {
    let v = ring.sub(&k2.rep, &k1.rep);
    let Some(j) = ideals::split_sum(ring, &v, &k1.ideal, &k2.ideal)? else {
        return Ok(None);
    };
    let ideal = ideal_intersect(ring, &k1.ideal, &k2.ideal)?;
    Ok(Some(Coset::new(ring, ring.add(&k1.rep, &j), ideal)))
}

/// `a + b*K`.
pub fn affine_image(ring: &Ring, a: &Elem, b: &Elem, k: &Coset) -> Result<Coset> {
    if !ring.is_regular(b) {
        return Err(Error::NotRegular(ring.fmt(b)));
    }
    let rep = ring.add(a, &ring.mul(b, &k.rep));
    Ok(Coset::new(ring, rep, ideal_scale(ring, b, &k.ideal)?))
}

/// `{r : c + e*r in K}`, which is empty or a coset of `(I : e)`.
pub fn affine_preimage(ring: &Ring, c: &Elem, e: &Elem, k: &Coset) -> Result<Option<Coset>> {
    let target = ring.sub(&k.rep, c);
    let Some(r) = ideals::solve_congruence(ring, e, &target, &k.ideal)? else {
        return Ok(None);
    };
    Ok(Some(Coset::new(ring, r, ideal_colon(ring, &k.ideal, e)?)))
}

/// Outcome of a covering question.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cover {
    Covered,
    /// A point of the coset outside every family member.
    Witness(Elem),
}

/// Generators whose integer combinations enumerate an ideal; polynomial
/// ideals contribute shifted multiples up to degree `h`.
fn enum_gens(ring: &Ring, i: &Ideal, h: u32) -> Vec<Elem> {
    match i {
        Ideal::QPoly(f) => {
            if f.is_empty() {
                return Vec::new();
            }
            (0..=h as usize)
                .map(|k| {
                    let mut v = vec![BigRational::zero(); k];
                    v.extend(f.iter().cloned());
                    qpoly_elem(v)
                })
                .collect()
        }
        Ideal::OPoly { c, .. } => {
            if c.is_empty() {
                return Vec::new();
            }
            let base = generators(ring, i);
            let mut out = Vec::new();
            for k in 0..=h as usize {
                for g in &base {
                    let Elem::OPoly(co) = g else { unreachable!() };
                    let mut v = vec![(BigInt::zero(), BigInt::zero()); k];
                    v.extend(co.iter().cloned());
                    out.push(opoly_elem(v));
                }
            }
            out
        }
        Ideal::Pair(a, b) => {
            let (ra, rb) = ring.components().unwrap();
            let mut out: Vec<Elem> = enum_gens(&ra, a, h)
                .into_iter()
                .map(|g| Elem::Pair(Box::new(g), Box::new(rb.zero())))
                .collect();
            out.extend(
                enum_gens(&rb, b, h)
                    .into_iter()
                    .map(|g| Elem::Pair(Box::new(ra.zero()), Box::new(g))),
            );
            out
        }
        _ => generators(ring, i).into_iter().filter(|g| !ring.is_zero(g)).collect(),
    }
}

/// Coefficient vectors for enumeration level `h`: support size at most
/// `1 + h/2`, ordered by support size, then support positions, then values
/// in the order 1, -1, 2, -2, ...
pub(crate) fn level_vectors(n: usize, h: u32) -> Vec<Vec<i64>> {
    if h == 0 {
        return vec![vec![0; n]];
    }
    let vals: Vec<i64> = (1..=h as i64).flat_map(|v| [v, -v]).collect();
    let max_support = n.min(1 + h as usize / 2);
    let mut out = Vec::new();
    for s in 1..=max_support {
        for support in combinations(n, s) {
            let mut idx = vec![0usize; s];
            'odometer: loop {
                let mut v = vec![0i64; n];
                for (slot, &pos) in support.iter().enumerate() {
                    v[pos] = vals[idx[slot]];
                }
                out.push(v);
                let mut k = s;
                loop {
                    if k == 0 {
                        break 'odometer;
                    }
                    k -= 1;
                    idx[k] += 1;
                    if idx[k] < vals.len() {
                        break;
                    }
                    idx[k] = 0;
                }
            }
        }
    }
    out
}

fn combinations(n: usize, s: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(s);
    fn rec(start: usize, n: usize, s: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == s {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, s, cur, out);
            cur.pop();
        }
    }
    rec(0, n, s, &mut cur, &mut out);
    out
}

fn in_any(ring: &Ring, family: &[Coset], x: &Elem) -> bool {
    family.iter().any(|k| coset_has(ring, k, x))
}

/// Search `c` level by level for a point outside every member of `family`.
fn search_witness(ring: &Ring, c: &Coset, family: &[Coset]) -> Result<Elem> {
    for h in 0..=MAX_LEVEL {
        let gens = enum_gens(ring, &c.ideal, h);
        if gens.is_empty() {
            return if in_any(ring, family, &c.rep) {
                Err(Error::Verification(format!(
                    "{} is covered although no member has finite index",
                    fmt_coset(ring, c)
                )))
            } else {
                Ok(c.rep.clone())
            };
        }
        for v in level_vectors(gens.len(), h) {
            let mut x = c.rep.clone();
            for (t, g) in v.iter().zip(&gens) {
                if *t != 0 {
                    x = ring.add(&x, &ring.mul(&ring.int(*t), g));
                }
            }
            if !in_any(ring, family, &x) {
                return Ok(x);
            }
        }
    }
    Err(Error::Unsupported(format!(
        "no witness found in {} within the enumeration bound",
        fmt_coset(ring, c)
    )))
}

/// Decide whether `c` lies inside the union of `family`, producing a point of
/// `c` outside the union when it does not.
pub fn cover_decide(ring: &Ring, c: &Coset, family: &[Coset]) -> Result<Cover> {
    let mut live: Vec<Coset> = Vec::with_capacity(family.len());
    let mut split_by: Option<Coset> = None;
    for k in family {
        match relative_index(ring, &c.ideal, &k.ideal) {
            IndexValue::One => {
                if coset_has(ring, k, &c.rep) {
                    return Ok(Cover::Covered);
                }
            }
            IndexValue::Finite(_) => {
                if split_by.is_none() {
                    split_by = Some(k.clone());
                }
                live.push(k.clone());
            }
            IndexValue::Infinite => live.push(k.clone()),
        }
    }
    if let Some(k) = split_by {
        let finer = ideal_intersect(ring, &c.ideal, &k.ideal)?;
        for t in transversal(ring, &c.ideal, &k.ideal)? {
            let part = Coset::new(ring, ring.add(&c.rep, &t), finer.clone());
            if let Cover::Witness(r) = cover_decide(ring, &part, &live)? {
                return Ok(Cover::Witness(r));
            }
        }
        return Ok(Cover::Covered);
    }
    Ok(Cover::Witness(search_witness(ring, c, &live)?))
}

/// A finite linear combination of coset indicator functions.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct IndicatorCombo {
    pub terms: Vec<(Coset, Scalar)>,
}

impl IndicatorCombo {
    pub fn new() -> IndicatorCombo {
        IndicatorCombo::default()
    }

    pub fn single(k: Coset, c: Scalar) -> IndicatorCombo {
        let mut out = IndicatorCombo::new();
        if !c.is_zero() {
            out.terms.push((k, c));
        }
        out
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Add `c * 1_k`, merging with an equal coset already present.
    pub fn push(&mut self, ring: &Ring, k: Coset, c: Scalar) {
        if let Some(pos) = self.terms.iter().position(|(x, _)| coset_eq(ring, x, &k)) {
            self.terms[pos].1 += c;
            if self.terms[pos].1.is_zero() {
                self.terms.remove(pos);
            }
        } else if !c.is_zero() {
            self.terms.push((k, c));
        }
    }

    pub fn add(&self, ring: &Ring, other: &IndicatorCombo) -> IndicatorCombo {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.push(ring, k.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> IndicatorCombo {
        if s.is_zero() {
            return IndicatorCombo::new();
        }
        IndicatorCombo {
            terms: self.terms.iter().map(|(k, c)| (k.clone(), c * s)).collect(),
        }
    }

    pub fn conj(&self) -> IndicatorCombo {
        IndicatorCombo {
            terms: self.terms.iter().map(|(k, c)| (k.clone(), c.conj())).collect(),
        }
    }

    /// Value of the function at `x`.
    pub fn eval(&self, ring: &Ring, x: &Elem) -> Scalar {
        self.terms
            .iter()
            .filter(|(k, _)| coset_has(ring, k, x))
            .fold(scalar::zero(), |acc, (_, c)| acc + c)
    }

    /// Pointwise product, via pairwise coset intersections.
    pub fn mul(&self, ring: &Ring, other: &IndicatorCombo) -> Result<IndicatorCombo> {
        let mut out = IndicatorCombo::new();
        for (k1, c1) in &self.terms {
            for (k2, c2) in &other.terms {
                if let Some(k) = coset_intersect(ring, k1, k2)? {
                    out.push(ring, k, c1 * c2);
                }
            }
        }
        Ok(out)
    }
}

/// A nonempty region cut out by a membership pattern.
#[derive(Clone, Debug, PartialEq)]
pub struct Atom {
    /// Membership in each term, in term order.
    pub pattern: Vec<bool>,
    /// Intersection of the cosets the region lies in (`R` if none).
    pub region: Coset,
    /// A point of the region.
    pub rep: Elem,
    pub value: Scalar,
}

/// All nonempty sign-pattern regions of the combination with their values.
pub fn atoms(ring: &Ring, f: &IndicatorCombo) -> Result<Vec<Atom>> {
    if f.terms.len() > ATOM_CAP {
        return Err(Error::FamilyTooLarge(f.terms.len()));
    }
    let mut out = Vec::new();
    let mut pattern = Vec::with_capacity(f.terms.len());
    atoms_rec(
        ring,
        f,
        &Coset::whole(ring),
        &mut Vec::new(),
        &mut pattern,
        scalar::zero(),
        &mut out,
    )?;
    Ok(out)
}

fn atoms_rec(
    ring: &Ring,
    f: &IndicatorCombo,
    inside: &Coset,
    outside: &mut Vec<Coset>,
    pattern: &mut Vec<bool>,
    value: Scalar,
    out: &mut Vec<Atom>,
) -> Result<()> {
    let idx = pattern.len();
    if idx == f.terms.len() {
        if let Cover::Witness(rep) = cover_decide(ring, inside, outside)? {
            out.push(Atom {
                pattern: pattern.clone(),
                region: inside.clone(),
                rep,
                value,
            });
        }
        return Ok(());
    }
    let (k, c) = &f.terms[idx];
    if let Some(meet) = coset_intersect(ring, inside, k)? {
        if cover_decide(ring, &meet, outside)? != Cover::Covered {
            pattern.push(true);
            atoms_rec(ring, f, &meet, outside, pattern, &value + c, out)?;
            pattern.pop();
        }
    }
    outside.push(k.clone());
    if cover_decide(ring, inside, outside)? != Cover::Covered {
        pattern.push(false);
        atoms_rec(ring, f, inside, outside, pattern, value, out)?;
        pattern.pop();
    }
    outside.pop();
    Ok(())
}

/// Is the combination the zero function?
pub fn indicator_zero_test(ring: &Ring, f: &IndicatorCombo) -> Result<bool> {
    let merged = IndicatorCombo::new().add(ring, f);
    if merged.is_empty() {
        return Ok(true);
    }
    if merged.terms.len() <= ATOM_CAP {
        return Ok(atoms(ring, &merged)?.iter().all(|a| a.value.is_zero()));
    }
    refine_zero_test(ring, &merged)
}

/// Zero test for large families whose ideals all have finite index over their
/// common intersection: compare coefficient sums coset by coset.
fn refine_zero_test(ring: &Ring, f: &IndicatorCombo) -> Result<bool> {
    let mut common = f.terms[0].0.ideal.clone();
    for (k, _) in &f.terms[1..] {
        common = ideal_intersect(ring, &common, &k.ideal)?;
    }
    let finite = f
        .terms
        .iter()
        .all(|(k, _)| relative_index(ring, &k.ideal, &common).is_finite());
    if !finite || !has_reduction(ring, &common) {
        return Err(Error::FamilyTooLarge(f.terms.len()));
    }
    let mut sums: Vec<(Elem, Scalar)> = Vec::new();
    for (k, c) in &f.terms {
        for t in transversal(ring, &k.ideal, &common)? {
            let point = ideals::reduce(ring, &common, &ring.add(&k.rep, &t));
            match sums.iter_mut().find(|(p, _)| *p == point) {
                Some(slot) => slot.1 += c,
                None => sums.push((point, c.clone())),
            }
        }
    }
    Ok(sums.iter().all(|(_, c)| c.is_zero()))
}

/// `true` if `x` is an exact integer combination (all coefficients integers).
pub fn is_integral(f: &IndicatorCombo) -> bool {
    f.terms.iter().all(|(_, c)| c.im.is_zero() && c.re.is_integer())
}

/// The combination `1_K` with coefficient one.
pub fn indicator(k: Coset) -> IndicatorCombo {
    IndicatorCombo::single(k, scalar::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::RingDescriptor;

    fn z() -> Ring {
        Ring::integers()
    }
    fn zc(a: i64, n: i64) -> Coset {
        let r = z();
        Coset::principal(&r, &r.int(a), &r.int(n)).unwrap()
    }

    #[test]
    fn integer_intersections() {
        let r = z();
        assert_eq!(coset_intersect(&r, &zc(1, 2), &zc(2, 3)).unwrap(), Some(zc(5, 6)));
        assert_eq!(coset_intersect(&r, &zc(1, 2), &zc(0, 2)).unwrap(), None);
    }

    #[test]
    fn rational_polynomial_intersection() {
        let r = Ring::new(RingDescriptor::RationalPoly).unwrap();
        let t = r.generator().unwrap();
        let t1 = r.sub(&t, &r.one());
        let k1 = Coset::principal(&r, &r.one(), &t).unwrap();
        let k2 = Coset::principal(&r, &r.zero(), &t1).unwrap();
        let meet = coset_intersect(&r, &k1, &k2).unwrap().unwrap();
        let want = Coset::principal(&r, &r.sub(&r.one(), &t), &r.mul(&t, &t1)).unwrap();
        assert!(coset_eq(&r, &meet, &want));
        assert_eq!(meet.rep, r.sub(&r.one(), &t));
    }

    #[test]
    fn containment_and_images() {
        let r = z();
        assert!(coset_contains(&r, &zc(0, 2), &zc(2, 6)));
        assert!(!coset_contains(&r, &zc(0, 2), &zc(3, 6)));
        assert_eq!(
            affine_image(&r, &r.int(1), &r.int(2), &Coset::whole(&r)).unwrap(),
            zc(1, 2)
        );
        assert_eq!(affine_image(&r, &r.int(1), &r.int(3), &zc(1, 2)).unwrap(), zc(4, 6));
    }

    #[test]
    fn covering_examples() {
        let r = z();
        let whole = Coset::whole(&r);
        assert_eq!(cover_decide(&r, &whole, &[zc(0, 2), zc(1, 2)]).unwrap(), Cover::Covered);
        assert_eq!(
            cover_decide(&r, &whole, &[zc(0, 2), zc(1, 4)]).unwrap(),
            Cover::Witness(r.int(3))
        );
        assert_eq!(
            cover_decide(&r, &zc(0, 3), &[zc(0, 6), zc(3, 12)]).unwrap(),
            Cover::Witness(r.int(9))
        );
    }

    #[test]
    fn zero_tests() {
        let r = z();
        let mut f = indicator(Coset::whole(&r));
        f.push(&r, zc(0, 2), scalar::int(-1));
        f.push(&r, zc(1, 2), scalar::int(-1));
        assert!(indicator_zero_test(&r, &f).unwrap());
        let mut g = indicator(zc(0, 2));
        g.push(&r, zc(0, 3), scalar::int(-1));
        assert!(!indicator_zero_test(&r, &g).unwrap());
        assert!(indicator_zero_test(&r, &IndicatorCombo::new()).unwrap());
    }

    #[test]
    fn atoms_mod_six() {
        let r = z();
        let mut f = IndicatorCombo::single(zc(0, 2), scalar::int(2));
        f.push(&r, zc(0, 3), scalar::int(3));
        let a = atoms(&r, &f).unwrap();
        let values: Vec<Scalar> = a.iter().map(|x| x.value.clone()).collect();
        let reps: Vec<Elem> = a.iter().map(|x| x.rep.clone()).collect();
        assert_eq!(
            values,
            vec![scalar::int(5), scalar::int(2), scalar::int(3), scalar::int(0)]
        );
        assert_eq!(reps, vec![r.int(0), r.int(2), r.int(3), r.int(1)]);
    }

    #[test]
    fn level_vector_order() {
        let v = level_vectors(2, 1);
        assert_eq!(v, vec![vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]]);
        assert_eq!(level_vectors(3, 0), vec![vec![0, 0, 0]]);
        assert!(level_vectors(3, 2).iter().any(|x| x == &vec![2, -1, 0]));
    }
}
