//! The spanning *-algebra generated by `u^a`, `s_b`, `s_b*` and `e_K`.
//!
//! Every spanning word acts on the basis vectors of `l^2(R)` as a partial
//! affine map `r -> (c + e*r)/b` with a weight function on its domain. A term
//! stores the map together with the weight as a combination of coset
//! indicators; an element is a list of terms with pairwise distinct maps.

use crate::cosets::{
    affine_image, affine_preimage, atoms, coset_eq, coset_intersect, fmt_coset, indicator_zero_test, Coset,
    IndicatorCombo,
};
use crate::error::{Error, Result};
use crate::ideals::{self, absolute_index, ideal_colon, transversal, unit_ideal};
use crate::poly::{self, Rationals};
use crate::rings::{p_free, qpoly_elem, Elem, Ring, RingDescriptor};
use crate::scalar::{self, ExactNorm, Scalar};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

/// `r -> (c + e*r) / b` with `b` and `e` regular.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineMap {
    pub b: Elem,
    pub c: Elem,
    pub e: Elem,
}

impl AffineMap {
    pub fn identity(ring: &Ring) -> AffineMap {
        AffineMap {
            b: ring.one(),
            c: ring.zero(),
            e: ring.one(),
        }
    }

    /// Same function on the fraction field.
    pub fn same(&self, ring: &Ring, other: &AffineMap) -> bool {
        ring.mul(&self.c, &other.b) == ring.mul(&other.c, &self.b)
            && ring.mul(&self.e, &other.b) == ring.mul(&other.e, &self.b)
    }

    pub fn is_identity(&self, ring: &Ring) -> bool {
        self.same(ring, &AffineMap::identity(ring))
    }

    /// `self` after `other`.
    pub fn compose(&self, ring: &Ring, other: &AffineMap) -> AffineMap {
        AffineMap {
            b: ring.mul(&self.b, &other.b),
            c: ring.add(&ring.mul(&other.b, &self.c), &ring.mul(&self.e, &other.c)),
            e: ring.mul(&self.e, &other.e),
        }
    }

    pub fn inverse(&self, ring: &Ring) -> AffineMap {
        AffineMap {
            b: self.e.clone(),
            c: ring.neg(&self.c),
            e: self.b.clone(),
        }
    }

    /// Image of `r`, if it lands in `R`.
    pub fn apply(&self, ring: &Ring, r: &Elem) -> Option<Elem> {
        let num = ring.add(&self.c, &ring.mul(&self.e, r));
        ring.divide_unchecked(&num, &self.b)
    }

    /// `{r : b divides c + e*r}`.
    pub fn domain(&self, ring: &Ring) -> Result<Option<Coset>> {
        let target = Coset::principal(ring, &ring.zero(), &self.b)?;
        affine_preimage(ring, &self.c, &self.e, &target)
    }

    /// Image of a coset inside the domain.
    pub fn image(&self, ring: &Ring, k: &Coset) -> Result<Coset> {
        let rep = self
            .apply(ring, &k.rep)
            .ok_or_else(|| Error::Verification("coset outside the map's domain".into()))?;
        let ideal = ideal_colon(ring, &ideals::ideal_scale(ring, &self.e, &k.ideal)?, &self.b)?;
        Ok(Coset::new(ring, rep, ideal))
    }

    /// Cancel common factors where the ring has a gcd, and normalize `b` up to units.
    fn canonical(self, ring: &Ring) -> AffineMap {
        match ring.desc() {
            RingDescriptor::Integers => {
                let (Elem::Int(b), Elem::Int(c), Elem::Int(e)) = (&self.b, &self.c, &self.e) else {
                    unreachable!()
                };
                let mut g = b.gcd(c).gcd(e);
                if b.is_negative() {
                    g = -g;
                }
                AffineMap {
                    b: Elem::Int(b / &g),
                    c: Elem::Int(c / &g),
                    e: Elem::Int(e / &g),
                }
            }
            RingDescriptor::RationalPoly => {
                let co = |x: &Elem| match x {
                    Elem::QPoly(v) => v.clone(),
                    _ => unreachable!(),
                };
                let (b, c, e) = (co(&self.b), co(&self.c), co(&self.e));
                let g = poly::gcd(&Rationals, &poly::gcd(&Rationals, &b, &c), &e);
                let mut g = g;
                let bq = poly::divrem(&Rationals, &b, &g).0;
                let lc = bq.last().unwrap().clone();
                g = poly::scale(&Rationals, &g, &lc);
                let div = |v: &[BigRational]| qpoly_elem(poly::divrem(&Rationals, v, &g).0);
                AffineMap {
                    b: div(&b),
                    c: div(&c),
                    e: div(&e),
                }
            }
            RingDescriptor::LocalizedIntegers(p) => {
                let q = |x: &Elem| match x {
                    Elem::Loc(v) => v.clone(),
                    _ => unreachable!(),
                };
                let (b, c, e) = (q(&self.b), q(&self.c), q(&self.e));
                let core = |v: &BigRational| p_free(v.numer(), *p);
                let g = core(&b).gcd(&core(&c)).gcd(&core(&e));
                // Dividing by b/core(b) (a unit) and by the common core leaves b = core(b)/g.
                let scale = BigRational::from_integer(g) * &b / BigRational::from_integer(core(&b));
                AffineMap {
                    b: Elem::Loc(&b / &scale),
                    c: Elem::Loc(&c / &scale),
                    e: Elem::Loc(&e / &scale),
                }
            }
            _ => {
                if ring.is_unit(&self.b) {
                    let inv = ring.divide_unchecked(&ring.one(), &self.b).unwrap();
                    AffineMap {
                        b: ring.one(),
                        c: ring.mul(&self.c, &inv),
                        e: ring.mul(&self.e, &inv),
                    }
                } else {
                    self
                }
            }
        }
    }
}

/// One affine map with its weight function.
#[derive(Clone, Debug, PartialEq)]
pub struct Term {
    pub map: AffineMap,
    /// Weight as a combination of indicators of cosets inside the map's domain.
    pub weight: IndicatorCombo,
}

/// A finite sum of terms with pairwise distinct maps.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct AlgebraElement {
    pub terms: Vec<Term>,
}

/// The spanning word `s_b* u^c e_K s_b2` behind a term summand.
#[derive(Clone, Debug, PartialEq)]
pub struct Monomial {
    pub b: Elem,
    pub c: Elem,
    pub support: Coset,
    pub b2: Elem,
}

impl AlgebraElement {
    pub fn zero() -> AlgebraElement {
        AlgebraElement::default()
    }

    pub fn is_syntactically_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn push_term(&mut self, ring: &Ring, map: AffineMap, weight: IndicatorCombo) {
        if weight.is_empty() {
            return;
        }
        if let Some(t) = self.terms.iter_mut().find(|t| t.map.same(ring, &map)) {
            t.weight = t.weight.add(ring, &weight);
        } else {
            self.terms.push(Term {
                map: map.canonical(ring),
                weight,
            });
        }
        self.terms.retain(|t| !t.weight.is_empty());
    }

    fn from_term(ring: &Ring, map: AffineMap, weight: IndicatorCombo) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        out.push_term(ring, map, weight);
        out
    }
}

fn check_regular(ring: &Ring, b: &Elem) -> Result<()> {
    ring.check(b)?;
    if ring.is_regular(b) {
        Ok(())
    } else {
        Err(Error::NotRegular(ring.fmt(b)))
    }
}

/// `lambda * 1`.
pub fn scalar_elem(ring: &Ring, lambda: Scalar) -> AlgebraElement {
    AlgebraElement::from_term(
        ring,
        AffineMap::identity(ring),
        IndicatorCombo::single(Coset::whole(ring), lambda),
    )
}

pub fn one(ring: &Ring) -> AlgebraElement {
    scalar_elem(ring, scalar::one())
}

/// The translation unitary `u^a`.
pub fn u(ring: &Ring, a: &Elem) -> Result<AlgebraElement> {
    ring.check(a)?;
    let map = AffineMap {
        b: ring.one(),
        c: a.clone(),
        e: ring.one(),
    };
    Ok(AlgebraElement::from_term(
        ring,
        map,
        IndicatorCombo::single(Coset::whole(ring), scalar::one()),
    ))
}

/// The isometry `s_b`, `b` regular.
pub fn s(ring: &Ring, b: &Elem) -> Result<AlgebraElement> {
    check_regular(ring, b)?;
    let map = AffineMap {
        b: ring.one(),
        c: ring.zero(),
        e: b.clone(),
    };
    Ok(AlgebraElement::from_term(
        ring,
        map,
        IndicatorCombo::single(Coset::whole(ring), scalar::one()),
    ))
}

/// The co-isometry `s_b*`.
pub fn s_star(ring: &Ring, b: &Elem) -> Result<AlgebraElement> {
    check_regular(ring, b)?;
    let map = AffineMap {
        b: b.clone(),
        c: ring.zero(),
        e: ring.one(),
    };
    let dom = Coset::principal(ring, &ring.zero(), b)?;
    Ok(AlgebraElement::from_term(
        ring,
        map,
        IndicatorCombo::single(dom, scalar::one()),
    ))
}

/// The projection `e_K`.
pub fn e(ring: &Ring, k: &Coset) -> AlgebraElement {
    AlgebraElement::from_term(
        ring,
        AffineMap::identity(ring),
        IndicatorCombo::single(k.clone(), scalar::one()),
    )
}

/// The diagonal element with the given weight function.
pub fn diagonal(ring: &Ring, weight: &IndicatorCombo) -> AlgebraElement {
    AlgebraElement::from_term(ring, AffineMap::identity(ring), weight.clone())
}

pub fn elem_add(ring: &Ring, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
    let mut out = x.clone();
    for t in &y.terms {
        out.push_term(ring, t.map.clone(), t.weight.clone());
    }
    out
}

pub fn elem_scale(ring: &Ring, x: &AlgebraElement, lambda: &Scalar) -> AlgebraElement {
    let mut out = AlgebraElement::zero();
    for t in &x.terms {
        out.push_term(ring, t.map.clone(), t.weight.scale(lambda));
    }
    out
}

pub fn elem_neg(ring: &Ring, x: &AlgebraElement) -> AlgebraElement {
    elem_scale(ring, x, &scalar::int(-1))
}

pub fn elem_sub(ring: &Ring, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
    elem_add(ring, x, &elem_neg(ring, y))
}

fn term_mul(ring: &Ring, t1: &Term, t2: &Term, out: &mut AlgebraElement) -> Result<()> {
    let map = t1.map.compose(ring, &t2.map);
    let mut weight = IndicatorCombo::new();
    for (k1, w1) in &t1.weight.terms {
        // {r : (c2 + e2 r)/b2 in K1} = {r : c2 + e2 r in b2*K1}
        let scaled = affine_image(ring, &ring.zero(), &t2.map.b, k1)?;
        let Some(pre) = affine_preimage(ring, &t2.map.c, &t2.map.e, &scaled)? else {
            continue;
        };
        for (k2, w2) in &t2.weight.terms {
            if let Some(d) = coset_intersect(ring, k2, &pre)? {
                weight.push(ring, d, w1 * w2);
            }
        }
    }
    out.push_term(ring, map, weight);
    Ok(())
}

/// Operator product `x*y` (apply `y` first).
pub fn elem_mul(ring: &Ring, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
    let mut out = AlgebraElement::zero();
    for t1 in &x.terms {
        for t2 in &y.terms {
            term_mul(ring, t1, t2, &mut out)?;
        }
    }
    Ok(out)
}

/// Product of a list of factors, left to right.
pub fn elem_product(ring: &Ring, factors: &[AlgebraElement]) -> Result<AlgebraElement> {
    let mut acc = one(ring);
    for f in factors {
        acc = elem_mul(ring, &acc, f)?;
    }
    Ok(acc)
}

pub fn adjoint(ring: &Ring, x: &AlgebraElement) -> Result<AlgebraElement> {
    let mut out = AlgebraElement::zero();
    for t in &x.terms {
        let mut weight = IndicatorCombo::new();
        for (k, w) in &t.weight.terms {
            weight.push(ring, t.map.image(ring, k)?, w.conj());
        }
        out.push_term(ring, t.map.inverse(ring), weight);
    }
    Ok(out)
}

/// `x` applied to the basis vector at `r`: coefficients and target indices.
pub fn evaluate(ring: &Ring, x: &AlgebraElement, r: &Elem) -> Vec<(Scalar, Elem)> {
    let mut out: Vec<(Scalar, Elem)> = Vec::new();
    for t in &x.terms {
        let w = t.weight.eval(ring, r);
        if w.is_zero() {
            continue;
        }
        let target = t
            .map
            .apply(ring, r)
            .expect("weights are supported inside the map's domain");
        match out.iter_mut().find(|(_, s)| *s == target) {
            Some(slot) => slot.0 += w,
            None => out.push((w, target)),
        }
    }
    out.retain(|(c, _)| !c.is_zero());
    out.sort_by(|a, b| a.1.cmp(&b.1));
    out
}

/// Apply `x` to a finite vector.
pub fn evaluate_vector(ring: &Ring, x: &AlgebraElement, v: &[(Scalar, Elem)]) -> Vec<(Scalar, Elem)> {
    let mut out: Vec<(Scalar, Elem)> = Vec::new();
    for (c, r) in v {
        for (d, s) in evaluate(ring, x, r) {
            let w = c * d;
            match out.iter_mut().find(|(_, t)| *t == s) {
                Some(slot) => slot.0 += w,
                None => out.push((w, s)),
            }
        }
    }
    out.retain(|(c, _)| !c.is_zero());
    out.sort_by(|a, b| a.1.cmp(&b.1));
    out
}

/// Operator equality.
pub fn elem_eq(ring: &Ring, x: &AlgebraElement, y: &AlgebraElement) -> Result<bool> {
    elem_is_zero(ring, &elem_sub(ring, x, y))
}

pub fn elem_is_zero(ring: &Ring, x: &AlgebraElement) -> Result<bool> {
    for t in &x.terms {
        if !indicator_zero_test(ring, &t.weight)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Drop terms whose weight is the zero function.
pub fn simplify(ring: &Ring, x: &AlgebraElement) -> Result<AlgebraElement> {
    let mut out = AlgebraElement::zero();
    for t in &x.terms {
        if !indicator_zero_test(ring, &t.weight)? {
            out.terms.push(t.clone());
        }
    }
    Ok(out)
}

/// The conditional expectation onto the diagonal: keep identity-map terms.
pub fn expectation(ring: &Ring, x: &AlgebraElement) -> AlgebraElement {
    AlgebraElement {
        terms: x.terms.iter().filter(|t| t.map.is_identity(ring)).cloned().collect(),
    }
}

pub fn is_diagonal(ring: &Ring, x: &AlgebraElement) -> bool {
    x.terms.iter().all(|t| t.map.is_identity(ring))
}

/// The weight function of a diagonal element.
pub fn diagonal_weight(ring: &Ring, x: &AlgebraElement) -> Result<IndicatorCombo> {
    if !is_diagonal(ring, x) {
        return Err(Error::NotDiagonal);
    }
    Ok(x.terms
        .iter()
        .fold(IndicatorCombo::new(), |acc, t| acc.add(ring, &t.weight)))
}

/// Supremum norm of a diagonal element.
pub fn d_norm(ring: &Ring, x: &AlgebraElement) -> Result<ExactNorm> {
    let w = diagonal_weight(ring, x)?;
    Ok(atoms(ring, &w)?
        .iter()
        .map(|a| ExactNorm::of(&a.value))
        .max()
        .unwrap_or_else(ExactNorm::zero))
}

/// Spanning words of an element, one per domain coset.
pub fn monomials(ring: &Ring, x: &AlgebraElement) -> Result<Vec<(Scalar, Monomial)>> {
    let mut out = Vec::new();
    for t in &x.terms {
        for (k, w) in &t.weight.terms {
            let support = affine_image(ring, &ring.zero(), &t.map.e, k)?;
            out.push((
                w.clone(),
                Monomial {
                    b: t.map.b.clone(),
                    c: t.map.c.clone(),
                    support,
                    b2: t.map.e.clone(),
                },
            ));
        }
    }
    Ok(out)
}

/// `s_b* u^(-a) e_I u^(a2) s_b2`.
pub fn monomial_make(
    ring: &Ring,
    b: &Elem,
    a: &Elem,
    i: &ideals::Ideal,
    a2: &Elem,
    b2: &Elem,
) -> Result<AlgebraElement> {
    let k = Coset::new(ring, ring.zero(), i.clone());
    elem_product(
        ring,
        &[
            s_star(ring, b)?,
            u(ring, &ring.neg(a))?,
            e(ring, &k),
            u(ring, a2)?,
            s(ring, b2)?,
        ],
    )
}

/// `sum over a + (b) in R/(b) of u^a s_b s_b* u^(-a)` equals one.
pub fn relation_ii_check(ring: &Ring, b: &Elem) -> Result<bool> {
    check_regular(ring, b)?;
    let ideal = ideals::principal(ring, b)?;
    if !absolute_index(ring, &ideal).is_finite() {
        return Err(Error::NotApplicable(format!(
            "R/({}) is infinite, so the projections cannot sum to one",
            ring.fmt(b)
        )));
    }
    let mut total = AlgebraElement::zero();
    for a in transversal(ring, &unit_ideal(ring), &ideal)? {
        let word = elem_product(
            ring,
            &[u(ring, &a)?, s(ring, b)?, s_star(ring, b)?, u(ring, &ring.neg(&a))?],
        )?;
        total = elem_add(ring, &total, &word);
    }
    elem_eq(ring, &total, &one(ring))
}

/// `u^a s_b u^c s_d = u^(a+bc) s_(bd)`.
pub fn relation_i_check(ring: &Ring, a: &Elem, b: &Elem, c: &Elem, d: &Elem) -> Result<bool> {
    let lhs = elem_product(ring, &[u(ring, a)?, s(ring, b)?, u(ring, c)?, s(ring, d)?])?;
    let rhs = elem_mul(
        ring,
        &u(ring, &ring.add(a, &ring.mul(b, c)))?,
        &s(ring, &ring.mul(b, d))?,
    )?;
    elem_eq(ring, &lhs, &rhs)
}

fn pair(x: &Elem, y: &Elem) -> Elem {
    Elem::Pair(Box::new(x.clone()), Box::new(y.clone()))
}

/// The element of the product ring acting as `x1` and `x2` on the two factors.
pub fn tensor(ring: &Ring, x1: &AlgebraElement, x2: &AlgebraElement) -> Result<AlgebraElement> {
    if ring.components().is_none() {
        return Err(Error::NotApplicable(format!("{} is not a product ring", ring.name())));
    }
    let mut out = AlgebraElement::zero();
    for t1 in &x1.terms {
        for t2 in &x2.terms {
            let map = AffineMap {
                b: pair(&t1.map.b, &t2.map.b),
                c: pair(&t1.map.c, &t2.map.c),
                e: pair(&t1.map.e, &t2.map.e),
            };
            let mut weight = IndicatorCombo::new();
            for (k1, w1) in &t1.weight.terms {
                for (k2, w2) in &t2.weight.terms {
                    let k = Coset::new(
                        ring,
                        pair(&k1.rep, &k2.rep),
                        ideals::Ideal::Pair(Box::new(k1.ideal.clone()), Box::new(k2.ideal.clone())),
                    );
                    weight.push(ring, k, w1 * w2);
                }
            }
            out.push_term(ring, map, weight);
        }
    }
    Ok(out)
}

/// Evaluating the product-ring element at `(r1, r2)` gives the tensor product
/// of the component evaluations.
pub fn product_eval_factorization(
    ring: &Ring,
    x1: &AlgebraElement,
    x2: &AlgebraElement,
    r1: &Elem,
    r2: &Elem,
) -> Result<bool> {
    let Some((ra, rb)) = ring.components() else {
        return Err(Error::NotApplicable(format!("{} is not a product ring", ring.name())));
    };
    let joint = evaluate(ring, &tensor(ring, x1, x2)?, &pair(r1, r2));
    let mut expected: Vec<(Scalar, Elem)> = Vec::new();
    for (c1, s1) in evaluate(&ra, x1, r1) {
        for (c2, s2) in evaluate(&rb, x2, r2) {
            expected.push((&c1 * &c2, pair(&s1, &s2)));
        }
    }
    expected.sort_by(|a, b| a.1.cmp(&b.1));
    Ok(joint == expected)
}

fn term_order(a: &Term, b: &Term) -> Ordering {
    (&a.map.e, &a.map.b, &a.map.c).cmp(&(&b.map.e, &b.map.b, &b.map.c))
}

/// Terms sorted into the printing order.
pub fn sorted(x: &AlgebraElement) -> AlgebraElement {
    let mut terms = x.terms.clone();
    terms.sort_by(term_order);
    AlgebraElement { terms }
}

fn is_one(ring: &Ring, x: &Elem) -> bool {
    *x == ring.one()
}

fn word(ring: &Ring, map: &AffineMap, k: &Coset, full_domain: bool) -> Result<Vec<String>> {
    let mut parts = Vec::new();
    if !is_one(ring, &map.b) {
        parts.push(format!("Sstar({})", ring.fmt(&map.b)));
    }
    if !ring.is_zero(&map.c) {
        parts.push(format!("U({})", ring.fmt(&map.c)));
    }
    if !full_domain {
        let support = affine_image(ring, &ring.zero(), &map.e, k)?;
        parts.push(format!("E({})", fmt_coset(ring, &support)));
    }
    if !is_one(ring, &map.e) {
        parts.push(format!("S({})", ring.fmt(&map.e)));
    }
    Ok(parts)
}

fn scalar_prefix(c: &Scalar) -> (bool, String) {
    let negative = c.im.is_zero() && c.re.is_negative() || c.re.is_zero() && c.im.is_negative();
    let mag = if negative { -c.clone() } else { c.clone() };
    let text = scalar::fmt(&mag);
    let text = if !mag.re.is_zero() && !mag.im.is_zero() {
        format!("({text})")
    } else {
        text
    };
    (negative, text)
}

/// Expression syntax accepted by the command-line parser.
pub fn fmt_element(ring: &Ring, x: &AlgebraElement) -> Result<String> {
    let mut pieces: Vec<(bool, String)> = Vec::new();
    for t in sorted(x).terms {
        let dom = t.map.domain(ring)?;
        for (k, w) in &t.weight.terms {
            let full = dom.as_ref().is_some_and(|d| coset_eq(ring, d, k));
            let parts = word(ring, &t.map, k, full)?;
            let (neg, coeff) = scalar_prefix(w);
            let unit = w.im.is_zero() && w.re.abs().is_one();
            let body = match (parts.is_empty(), unit) {
                (true, _) => coeff,
                (false, true) => parts.join(" "),
                (false, false) => format!("{coeff} {}", parts.join(" ")),
            };
            pieces.push((neg, body));
        }
    }
    if pieces.is_empty() {
        return Ok("0".into());
    }
    let mut out = String::new();
    for (i, (neg, body)) in pieces.into_iter().enumerate() {
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    Ok(out)
}

/// Integer value of a scalar, when it is one.
pub fn scalar_integer(c: &Scalar) -> Option<BigInt> {
    (c.im.is_zero() && c.re.is_integer()).then(|| c.re.to_integer())
}
