//! Projection machinery for the pure-infiniteness criterion: orthogonalizing
//! diagonal projections, normalizing relative indices, extracting principal
//! coset subprojections, the criterion pipeline itself, and refutation of
//! candidate coset coverings.

use crate::cosets::{atoms, coset_has, cover_decide, indicator_zero_test, Atom, Coset, Cover, IndicatorCombo};
use crate::error::{Error, Result};
use crate::ideals::{
    self, generators, ideal_contains, ideal_intersect, ideal_le, principal, relative_index, transversal, Ideal,
    IndexValue,
};
use crate::rings::{is_prime, Elem, Ring, RingDescriptor};
use crate::scalar::{self, ExactNorm, Scalar};
use crate::star_algebra::{
    adjoint, d_norm, diagonal_weight, e, elem_eq, elem_is_zero, elem_mul, elem_scale, elem_sub, expectation, s, s_star,
    u, AffineMap, AlgebraElement,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Pairwise orthogonal projections with the decomposition of each input.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectionFamily {
    pub atoms: Vec<IndicatorCombo>,
    /// For each input, the indices of the atoms summing to it.
    pub decomposition: Vec<Vec<usize>>,
}

fn whole(ring: &Ring) -> IndicatorCombo {
    IndicatorCombo::single(Coset::whole(ring), scalar::one())
}

fn complement(ring: &Ring, p: &IndicatorCombo) -> IndicatorCombo {
    whole(ring).add(ring, &p.scale(&scalar::int(-1)))
}

/// Is `p` a projection, i.e. does it only take the values 0 and 1?
pub fn is_projection(ring: &Ring, p: &IndicatorCombo) -> Result<bool> {
    let sq = p.mul(ring, p)?;
    indicator_zero_test(ring, &sq.add(ring, &p.scale(&scalar::int(-1))))
}

fn require_projection(ring: &Ring, p: &IndicatorCombo) -> Result<()> {
    if is_projection(ring, p)? {
        Ok(())
    } else {
        Err(Error::NotProjection(format!("{} terms", p.terms.len())))
    }
}

/// Atomize a list of diagonal projections by inclusion-exclusion.
pub fn orthogonalize(ring: &Ring, ps: &[IndicatorCombo]) -> Result<ProjectionFamily> {
    if ps.len() > crate::cosets::ATOM_CAP {
        return Err(Error::FamilyTooLarge(ps.len()));
    }
    for p in ps {
        require_projection(ring, p)?;
    }
    let mut fam = ProjectionFamily {
        atoms: Vec::new(),
        decomposition: vec![Vec::new(); ps.len()],
    };
    let mut pattern = Vec::new();
    orth_rec(ring, ps, whole(ring), &mut pattern, &mut fam)?;
    Ok(fam)
}

fn orth_rec(
    ring: &Ring,
    ps: &[IndicatorCombo],
    acc: IndicatorCombo,
    pattern: &mut Vec<bool>,
    fam: &mut ProjectionFamily,
) -> Result<()> {
    if indicator_zero_test(ring, &acc)? {
        return Ok(());
    }
    let i = pattern.len();
    if i == ps.len() {
        if pattern.iter().any(|&b| b) {
            let idx = fam.atoms.len();
            for (j, &b) in pattern.iter().enumerate() {
                if b {
                    fam.decomposition[j].push(idx);
                }
            }
            fam.atoms.push(acc);
        }
        return Ok(());
    }
    pattern.push(true);
    orth_rec(ring, ps, acc.mul(ring, &ps[i])?, pattern, fam)?;
    pattern.pop();
    pattern.push(false);
    orth_rec(ring, ps, acc.mul(ring, &complement(ring, &ps[i]))?, pattern, fam)?;
    pattern.pop();
    Ok(())
}

/// Rewrite `p` over finer cosets until every pairwise relative index of its
/// ideals is one or infinite.
pub fn normalize_indices(ring: &Ring, p: &IndicatorCombo) -> Result<IndicatorCombo> {
    let mut cur = IndicatorCombo::new().add(ring, p);
    loop {
        let ideals: Vec<Ideal> = distinct_ideals(&cur);
        let split = ideals.iter().find_map(|i| {
            ideals.iter().find_map(|j| match relative_index(ring, i, j) {
                IndexValue::Finite(_) => Some((i.clone(), j.clone())),
                _ => None,
            })
        });
        let Some((i, j)) = split else {
            return Ok(cur);
        };
        let finer = ideal_intersect(ring, &i, &j)?;
        let reps = transversal(ring, &i, &finer)?;
        let mut next = IndicatorCombo::new();
        for (k, c) in &cur.terms {
            if k.ideal == i {
                for t in &reps {
                    next.push(ring, Coset::new(ring, ring.add(&k.rep, t), finer.clone()), c.clone());
                }
            } else {
                next.push(ring, k.clone(), c.clone());
            }
        }
        cur = next;
    }
}

fn distinct_ideals(p: &IndicatorCombo) -> Vec<Ideal> {
    let mut out: Vec<Ideal> = Vec::new();
    for (k, _) in &p.terms {
        if !out.contains(&k.ideal) {
            out.push(k.ideal.clone());
        }
    }
    out
}

/// A regular element of the ideal, searched among small combinations of its
/// generators.
pub fn regular_element(ring: &Ring, i: &Ideal) -> Result<Elem> {
    let gens = generators(ring, i);
    if let Some(g) = gens.iter().find(|g| ring.is_regular(g)) {
        return Ok(g.clone());
    }
    for k in 1..=4 {
        for a in &gens {
            for b in &gens {
                let cand = ring.add(a, &ring.mul(&ring.int(k), b));
                if ring.is_regular(&cand) {
                    return Ok(cand);
                }
            }
        }
    }
    Err(Error::Hypothesis(format!(
        "{} contains no regular element",
        ideals::fmt_ideal(ring, i)
    )))
}

/// A principal coset `a + (b)` inside a nonempty atom of `f`.
fn atom_subcoset(ring: &Ring, f: &IndicatorCombo, atom: &Atom) -> Result<(Elem, Elem)> {
    let mut meet = atom.region.ideal.clone();
    for ((k, _), inside) in f.terms.iter().zip(&atom.pattern) {
        if !inside {
            meet = ideal_intersect(ring, &meet, &k.ideal)?;
        }
    }
    let b = regular_element(ring, &meet)?;
    Ok((atom.rep.clone(), b))
}

/// `(a, b)` with `e_{a+(b)} <= p`.
pub fn subprojection_extract(ring: &Ring, p: &IndicatorCombo) -> Result<(Elem, Elem)> {
    require_projection(ring, p)?;
    let norm = normalize_indices(ring, p)?;
    let found = atoms(ring, &norm)?.into_iter().find(|a| a.value.is_one());
    let Some(atom) = found else {
        return Err(Error::ZeroInput("projection is zero".into()));
    };
    let (a, b) = atom_subcoset(ring, &norm, &atom)?;
    let cell = IndicatorCombo::single(Coset::principal(ring, &a, &b)?, scalar::one());
    let diff = cell.mul(ring, p)?.add(ring, &cell.scale(&scalar::int(-1)));
    if !indicator_zero_test(ring, &diff)? {
        return Err(Error::Verification(
            "extracted coset is not below the projection".into(),
        ));
    }
    Ok((a, b))
}

/// A regular `b` with `v` outside `(b)`, for nonzero `v`.
pub fn separating_modulus(ring: &Ring, v: &Elem) -> Result<Elem> {
    if ring.is_zero(v) {
        return Err(Error::ZeroInput("cannot separate zero".into()));
    }
    let smallest_prime_not_dividing = |cs: &[BigInt]| -> BigInt {
        let mut q = 2u64;
        loop {
            if is_prime(q) {
                let qb = BigInt::from(q);
                if cs.iter().any(|c| !(c % &qb).is_zero()) {
                    return qb;
                }
            }
            q += 1;
        }
    };
    Ok(match (ring.desc(), v) {
        (RingDescriptor::Integers, Elem::Int(n)) => Elem::Int(n.abs() + 1),
        (RingDescriptor::RationalPoly, Elem::QPoly(cs)) => {
            let mut r = 0i64;
            loop {
                let x = BigRational::from_integer(r.into());
                if !crate::poly::eval(&crate::poly::Rationals, cs, &x).is_zero() {
                    break;
                }
                r += 1;
            }
            ring.sub(&ring.generator().unwrap(), &ring.int(r))
        }
        (RingDescriptor::QuadraticOrder(_), Elem::Quad(x, y)) => {
            ring.from_int(smallest_prime_not_dividing(&[x.clone(), y.clone()]))
        }
        (RingDescriptor::OrderPoly(_), Elem::OPoly(cs)) => {
            let (x, y) = cs.iter().find(|(x, y)| !x.is_zero() || !y.is_zero()).unwrap();
            ring.from_int(smallest_prime_not_dividing(&[x.clone(), y.clone()]))
        }
        (RingDescriptor::CyclicGroupRing(_), Elem::Cyc(cs)) => {
            let c = cs.iter().find(|c| !c.is_zero()).unwrap();
            ring.from_int(smallest_prime_not_dividing(std::slice::from_ref(c)))
        }
        (RingDescriptor::LocalizedIntegers(p), Elem::Loc(q)) => {
            let num = q.numer().abs();
            let mut cand = 2u64;
            loop {
                if is_prime(cand) && cand != *p as u64 && !(&num % BigInt::from(cand)).is_zero() {
                    break ring.from_int(cand.into());
                }
                cand += 1;
            }
        }
        (RingDescriptor::Product(_, _), Elem::Pair(x, y)) => {
            let (r1, r2) = ring.components().unwrap();
            if !r1.is_zero(x) {
                Elem::Pair(Box::new(separating_modulus(&r1, x)?), Box::new(r2.one()))
            } else {
                Elem::Pair(Box::new(r1.one()), Box::new(separating_modulus(&r2, y)?))
            }
        }
        _ => {
            return Err(Error::BackendMismatch {
                ring: ring.name(),
                detail: ring.fmt(v),
            })
        }
    })
}

/// One clause of the criterion with its outcome.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Data chosen for one projection `f = e_{a+(b)}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    /// Coset inside the atom.
    pub inner_rep: Elem,
    pub inner_modulus: Elem,
    /// Final coset `a + (b)` of `f`.
    pub rep: Elem,
    pub modulus: Elem,
    pub value: Scalar,
}

/// An off-diagonal term and the value `c + (e-b)a` that must stay nonzero.
#[derive(Clone, Debug, PartialEq)]
pub struct CriticalTerm {
    pub map: AffineMap,
    pub shift: Vec<Elem>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CriterionReport {
    pub theta: AlgebraElement,
    pub d: Elem,
    pub projections: ProjectionFamily,
    pub witnesses: Vec<Witness>,
    pub critical: Vec<CriticalTerm>,
    pub checks: Vec<Check>,
}

impl CriterionReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

const A_SEARCH_SHELLS: u32 = 12;

/// Produce and verify the projections `f_i` for a self-adjoint `x`.
pub fn criterion_pipeline(ring: &Ring, x: &AlgebraElement) -> Result<CriterionReport> {
    if elem_is_zero(ring, x)? {
        return Err(Error::ZeroInput("element is zero".into()));
    }
    if !elem_eq(ring, x, &adjoint(ring, x)?)? {
        return Err(Error::NotSelfAdjoint);
    }
    let theta = expectation(ring, x);
    let weight = diagonal_weight(ring, &theta)?;

    let mut d = ring.one();
    let mut seen: Vec<Elem> = Vec::new();
    for t in &theta.terms {
        if !seen.contains(&t.map.b) {
            d = ring.mul(&d, &t.map.b);
            seen.push(t.map.b.clone());
        }
    }

    let level_sets: Vec<Atom> = atoms(ring, &weight)?
        .into_iter()
        .filter(|a| !a.value.is_zero())
        .collect();
    let mut cells: Vec<(Elem, Elem, Scalar)> = Vec::new();
    let mut atom_projections: Vec<IndicatorCombo> = Vec::new();
    for atom in &level_sets {
        let (a0, b0) = atom_subcoset(ring, &weight, atom)?;
        cells.push((a0, b0, atom.value.clone()));
        atom_projections.push(atom_indicator(ring, &weight, atom));
    }
    if cells.is_empty() {
        // Zero expectation: one projection with value zero suffices.
        cells.push((ring.zero(), ring.one(), scalar::zero()));
        atom_projections.push(whole(ring));
    }
    let projections = orthogonal_family(&atom_projections);

    let off: Vec<&crate::star_algebra::Term> = x.terms.iter().filter(|t| !t.map.is_identity(ring)).collect();
    let mut critical: Vec<CriticalTerm> = off
        .iter()
        .map(|t| CriticalTerm {
            map: t.map.clone(),
            shift: Vec::new(),
        })
        .collect();

    let mut witnesses = Vec::new();
    for (a0, b0, value) in cells {
        let (a, shifts) = avoid_fixed_points(ring, &off, &a0, &b0)?;
        let mut b = b0.clone();
        let mut used: Vec<Elem> = Vec::new();
        for v in &shifts {
            let q = separating_modulus(ring, v)?;
            if !used.contains(&q) {
                b = ring.mul(&b, &q);
                used.push(q);
            }
        }
        for (ct, v) in critical.iter_mut().zip(shifts) {
            ct.shift.push(v);
        }
        witnesses.push(Witness {
            inner_rep: a0,
            inner_modulus: b0,
            rep: a,
            modulus: b,
            value,
        });
    }

    let checks = verify(ring, x, &theta, d.clone(), &witnesses)?;
    Ok(CriterionReport {
        theta,
        d,
        projections,
        witnesses,
        critical,
        checks,
    })
}

fn atom_indicator(ring: &Ring, f: &IndicatorCombo, atom: &Atom) -> IndicatorCombo {
    let mut acc = IndicatorCombo::single(atom.region.clone(), scalar::one());
    for ((k, _), inside) in f.terms.iter().zip(&atom.pattern) {
        if !inside {
            let cut = acc
                .mul(ring, &IndicatorCombo::single(k.clone(), scalar::one()))
                .expect("atom regions intersect cosets");
            acc = acc.add(ring, &cut.scale(&scalar::int(-1)));
        }
    }
    acc
}

fn orthogonal_family(atoms: &[IndicatorCombo]) -> ProjectionFamily {
    ProjectionFamily {
        atoms: atoms.to_vec(),
        decomposition: (0..atoms.len()).map(|i| vec![i]).collect(),
    }
}

/// First `a` in `a0 + (b0)` that is a fixed point of no off-diagonal map.
fn avoid_fixed_points(
    ring: &Ring,
    off: &[&crate::star_algebra::Term],
    a0: &Elem,
    b0: &Elem,
) -> Result<(Elem, Vec<Elem>)> {
    for h in 0..=A_SEARCH_SHELLS {
        for t in ring.shell(h) {
            let a = ring.add(a0, &ring.mul(b0, &t));
            let shifts: Vec<Elem> = off
                .iter()
                .map(|term| {
                    let m = &term.map;
                    ring.add(&m.c, &ring.mul(&ring.sub(&m.e, &m.b), &a))
                })
                .collect();
            if shifts.iter().all(|v| !ring.is_zero(v)) {
                return Ok((a, shifts));
            }
        }
    }
    Err(Error::Hypothesis(format!(
        "no point of {} + ({}) avoids the fixed points of the off-diagonal terms",
        ring.fmt(a0),
        ring.fmt(b0)
    )))
}

fn check(name: &str, passed: bool, detail: String) -> Check {
    Check {
        name: name.into(),
        passed,
        detail,
    }
}

fn verify(ring: &Ring, x: &AlgebraElement, theta: &AlgebraElement, d: Elem, ws: &[Witness]) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let fs: Vec<AlgebraElement> = ws
        .iter()
        .map(|w| Ok(e(ring, &Coset::principal(ring, &w.rep, &w.modulus)?)))
        .collect::<Result<_>>()?;

    let mut orth = true;
    for i in 0..fs.len() {
        for j in 0..fs.len() {
            if i != j && !elem_is_zero(ring, &elem_mul(ring, &fs[i], &fs[j])?)? {
                orth = false;
            }
        }
    }
    checks.push(check("orthogonal", orth, format!("{} projections", fs.len())));

    let mut ranges = true;
    for (w, f) in ws.iter().zip(&fs) {
        let si = elem_mul(ring, &u(ring, &w.rep)?, &s(ring, &w.modulus)?)?;
        let range = elem_mul(ring, &si, &adjoint(ring, &si)?)?;
        ranges &= elem_eq(ring, &range, f)?;
    }
    checks.push(check("range_projection", ranges, "f = s s*".into()));

    let off_part = elem_sub(ring, x, theta);
    let mut compress = true;
    let mut scalar_ok = true;
    let mut compressed = AlgebraElement::zero();
    for (w, f) in ws.iter().zip(&fs) {
        let fo = elem_mul(ring, &elem_mul(ring, f, &off_part)?, f)?;
        compress &= elem_is_zero(ring, &fo)?;
        let ft = elem_mul(ring, &elem_mul(ring, f, theta)?, f)?;
        scalar_ok &= elem_eq(ring, &ft, &elem_scale(ring, f, &w.value))?;
        compressed = crate::star_algebra::elem_add(ring, &compressed, &ft);
    }
    checks.push(check("compression_diagonal", compress, "f (x - E(x)) f = 0".into()));
    checks.push(check("compression_scalar", scalar_ok, "f E(x) f = lambda f".into()));

    let lhs = d_norm(ring, &compressed)?;
    let rhs = d_norm(ring, theta)?;
    let max_value = ws
        .iter()
        .map(|w| ExactNorm::of(&w.value))
        .max()
        .unwrap_or_else(ExactNorm::zero);
    checks.push(check("norm", lhs == rhs && max_value == rhs, format!("{lhs} vs {rhs}")));

    let regular_d = ring.is_regular(&d);
    let rewrite_ok = regular_d && {
        let sd = s(ring, &d)?;
        let inner = elem_mul(ring, &elem_mul(ring, &sd, theta)?, &s_star(ring, &d)?)?;
        let back = elem_mul(ring, &elem_mul(ring, &s_star(ring, &d)?, &inner)?, &sd)?;
        elem_eq(ring, &back, theta)?
    };
    checks.push(check("denominator", rewrite_ok, format!("d = {}", ring.fmt(&d))));
    Ok(checks)
}

/// Which argument certifies an infinite relative index for a candidate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IndexRule {
    /// Constant modulus: the constant ideal is not contained in it.
    ConstantNotContained,
    /// Modulus of positive degree: it meets the nonzero constants trivially.
    DegreeSeparation,
    /// Neither rule applies; the covering decision stands alone.
    None,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Refutation {
    pub result: Cover,
    pub rules: Vec<IndexRule>,
}

fn opoly_degree(x: &Elem) -> usize {
    match x {
        Elem::OPoly(cs) => cs.len().saturating_sub(1),
        _ => 0,
    }
}

/// The constants in an order-polynomial ideal, when it is `c[T]`.
fn constant_part(ring: &Ring, i: &Ideal) -> Option<Vec<Elem>> {
    let gens = generators(ring, i);
    gens.iter().all(|g| opoly_degree(g) == 0).then_some(gens)
}

/// Decide whether `I` is covered by the cosets `a_j + (b_j)`.
pub fn coverage_refute(ring: &Ring, i: &Ideal, candidates: &[(Elem, Elem)]) -> Result<Refutation> {
    let mut family = Vec::with_capacity(candidates.len());
    let mut rules = Vec::with_capacity(candidates.len());
    let constants = match ring.desc() {
        RingDescriptor::OrderPoly(_) => constant_part(ring, i),
        _ => None,
    };
    for (a, b) in candidates {
        ring.check(a)?;
        ring.check(b)?;
        if ring.is_unit(b) {
            return Err(Error::UnitCandidate(ring.fmt(b)));
        }
        if !ring.is_regular(b) {
            return Err(Error::NotRegular(ring.fmt(b)));
        }
        let bi = principal(ring, b)?;
        let rule = match &constants {
            Some(cs) if !cs.is_empty() => {
                if opoly_degree(b) == 0 {
                    if cs.iter().all(|g| ideal_contains(ring, &bi, g)) {
                        IndexRule::None
                    } else {
                        IndexRule::ConstantNotContained
                    }
                } else {
                    IndexRule::DegreeSeparation
                }
            }
            _ => IndexRule::None,
        };
        if rule != IndexRule::None && relative_index(ring, i, &bi) != IndexValue::Infinite {
            return Err(Error::Verification("index rule disagrees with the index".into()));
        }
        rules.push(rule);
        family.push(Coset::new(ring, a.clone(), bi));
    }
    let base = Coset::new(ring, ring.zero(), i.clone());
    let result = cover_decide(ring, &base, &family)?;
    if let Cover::Witness(r) = &result {
        let valid = ideal_contains(ring, i, r) && family.iter().all(|k| !coset_has(ring, k, r));
        if !valid {
            return Err(Error::Verification(format!("witness {} does not refute", ring.fmt(r))));
        }
    }
    Ok(Refutation { result, rules })
}

/// Outcome for one hypothesis.
#[derive(Clone, Debug, PartialEq)]
pub struct Verdict {
    pub holds: bool,
    pub basis: String,
    /// Number of sampled instances checked, zero for closed-form verdicts.
    pub samples: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConditionsReport {
    pub ring: String,
    pub intersection: Verdict,
    pub index: Verdict,
}

fn closed(basis: &str) -> Verdict {
    Verdict {
        holds: true,
        basis: basis.into(),
        samples: 0,
    }
}

/// The two hypotheses: the principal ideals of regular elements meet in zero,
/// and every ideal of zero-divisors has infinite index in every `(b)`.
pub fn theorem_conditions_check(ring: &Ring) -> Result<ConditionsReport> {
    let intersection = closed("closed-form: finitely generated over a noetherian base");
    let index = if ring.is_domain() {
        closed("vacuous: integral domain")
    } else {
        match ring.desc() {
            RingDescriptor::RationalPoly => closed("closed-form: contains an infinite field"),
            _ => sampled_index(ring)?,
        }
    };
    Ok(ConditionsReport {
        ring: ring.name(),
        intersection,
        index,
    })
}

fn zero_divisor_ideals(ring: &Ring) -> Result<Vec<Ideal>> {
    match ring.desc() {
        RingDescriptor::CyclicGroupRing(p) => {
            let t = ring.generator().unwrap();
            let norm = (0..*p).fold(ring.zero(), |acc, k| ring.add(&acc, &ring.pow(&t, k)));
            Ok(vec![
                principal(ring, &ring.sub(&ring.one(), &t))?,
                principal(ring, &norm)?,
            ])
        }
        RingDescriptor::Product(_, _) => {
            let (r1, r2) = ring.components().unwrap();
            let left = Elem::Pair(Box::new(r1.one()), Box::new(r2.zero()));
            let right = Elem::Pair(Box::new(r1.zero()), Box::new(r2.one()));
            Ok(vec![principal(ring, &left)?, principal(ring, &right)?])
        }
        _ => Ok(Vec::new()),
    }
}

const CONDITION_SAMPLES: usize = 12;

fn sampled_index(ring: &Ring) -> Result<Verdict> {
    let zs = zero_divisor_ideals(ring)?;
    let mut count = 0;
    let mut holds = true;
    for b in ring
        .sample_regular(CONDITION_SAMPLES)
        .into_iter()
        .filter(|b| !ring.is_unit(b))
    {
        let bi = principal(ring, &b)?;
        for z in &zs {
            if ideal_le(ring, &bi, z) {
                continue;
            }
            count += 1;
            holds &= relative_index(ring, &bi, z) == IndexValue::Infinite;
        }
    }
    Ok(Verdict {
        holds,
        basis: "sampled".into(),
        samples: count,
    })
}
