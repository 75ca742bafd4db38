//! End-to-end acceptance checks, one PASS/FAIL line each.

mod common;

use common::*;
use num_bigint::BigInt;
use rand::RngExt;
use ringstar::cosets::{self, coset_has, cover_decide, Coset, Cover};
use ringstar::ideals::{self, absolute_index, ideal_colon, ideal_contains, ideal_gen, principal, IndexValue};
use ringstar::scalar;
use ringstar::semigroups::{to_ring_algebra, QuasiLattice, RightIdealSet, Semigroup, SemigroupKind, SgElem};
use ringstar::simplicity::{coverage_refute, criterion_pipeline, IndexRule};
use ringstar::spectra;
use ringstar::star_algebra::{self as alg, AlgebraElement};
use ringstar::{Elem, Ring};
use std::time::{Duration, Instant};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Err(format!($($msg)*));
        }
    };
}

fn ok<T, E: std::fmt::Debug>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| format!("{e:?}"))
}

fn eq(r: &Ring, x: &AlgebraElement, y: &AlgebraElement) -> Result<bool, String> {
    ok(alg::elem_eq(r, x, y))
}

fn relations() -> Outcome {
    let r = z();
    for b in 2..=12 {
        ensure!(
            ok(alg::relation_ii_check(&r, &r.int(b)))?,
            "projections u^a s_{b} s_{b}* u^-a do not sum to one"
        );
    }
    let q = quad5();
    for b in [quad(2, 0), quad(1, 1), quad(3, 0)] {
        let idx = absolute_index(&q, &ok(principal(&q, &b))?);
        ensure!(
            idx.count().is_some_and(|n| n <= BigInt::from(36)),
            "index of ({}) too large",
            q.fmt(&b)
        );
        ensure!(
            ok(alg::relation_ii_check(&q, &b))?,
            "relation fails for ({})",
            q.fmt(&b)
        );
    }
    for gens in [
        vec![quad(3, 0), quad(1, 1)],
        vec![quad(2, 0), quad(1, 1)],
        vec![quad(3, 0), quad(1, -1)],
    ] {
        let j = ok(ideal_gen(&q, &gens))?;
        let total = ok(ideals::transversal(&q, &ideals::unit_ideal(&q), &j))?
            .into_iter()
            .fold(AlgebraElement::zero(), |acc, t| {
                alg::elem_add(&q, &acc, &alg::e(&q, &Coset::new(&q, t, j.clone())))
            });
        ensure!(
            eq(&q, &total, &alg::one(&q))?,
            "cosets of {} do not partition",
            ideals::fmt_ideal(&q, &j)
        );
    }
    let mut g = rng(1);
    for _ in 0..100 {
        let (a, c) = (g.random_range(-9..=9), g.random_range(-9..=9));
        let (b, d) = (random_nonzero_int(&mut g, 9), random_nonzero_int(&mut g, 9));
        ensure!(
            ok(alg::relation_i_check(&r, &r.int(a), &r.int(b), &r.int(c), &r.int(d)))?,
            "u^{a} s_{b} u^{c} s_{d} != u^(a+bc) s_(bd)"
        );
    }
    Ok("11 integer moduli, 3 principal and 3 non-principal quadratic ideals, 100 quadruples".into())
}

fn oracle_equivalence() -> Outcome {
    let mut g = rng(2);
    let mut compared = 0;
    for (r, pairs, word) in [
        (z(), 200, random_z_word as fn(&mut rand::rngs::StdRng, i64) -> Word),
        (qpoly(), 100, random_qpoly_word),
    ] {
        let basis = r.sample(100);
        for _ in 0..pairs {
            let (x, y) = (word(&mut g, 4), word(&mut g, 4));
            let prod = ok(alg::elem_mul(&r, &x.build(&r), &y.build(&r)))?;
            let (xe, ye) = (x.build(&r), y.build(&r));
            for v in &basis {
                let got = vector(&alg::evaluate(&r, &prod, v));
                let start = vector(&[(scalar::one(), v.clone())]);
                let words = |w: &Word| vec![(scalar::one(), w.clone())];
                let oracle = apply_words(&r, &words(&x), &apply_words(&r, &words(&y), &start));
                let composed = vector(&alg::evaluate_vector(&r, &xe, &alg::evaluate(&r, &ye, v)));
                ensure!(
                    got == oracle && got == composed,
                    "mismatch over {} at {}: {x:?} {y:?}",
                    r.name(),
                    r.fmt(v)
                );
                compared += 1;
            }
        }
    }
    Ok(format!("{compared} evaluations, 0 mismatches"))
}

fn covering() -> Outcome {
    let r = z();
    let mut g = rng(3);
    let (mut covered, mut witnesses) = (0, 0);
    for _ in 0..500 {
        let cm = g.random_range(1..=36);
        let c = (g.random_range(0..cm), cm);
        let fam: Vec<(i64, i64)> = (0..g.random_range(1..=3))
            .map(|_| {
                let m = g.random_range(1..=36);
                (g.random_range(0..m), m)
            })
            .collect();
        let family: Vec<Coset> = fam.iter().map(|&(a, m)| zc(a, m)).collect();
        let brute = z_cover_brute(c, &fam);
        match ok(cover_decide(&r, &zc(c.0, c.1), &family))? {
            Cover::Covered => {
                ensure!(
                    brute.is_none(),
                    "claimed covered, brute force finds {brute:?} for {c:?} by {fam:?}"
                );
                covered += 1;
            }
            Cover::Witness(w) => {
                ensure!(
                    brute.is_some(),
                    "witness {} for a covered instance {c:?} by {fam:?}",
                    r.fmt(&w)
                );
                let x = int_value(&w);
                ensure!((x - c.0).rem_euclid(c.1) == 0, "witness outside the coset");
                ensure!(
                    fam.iter().all(|&(a, m)| (x - a).rem_euclid(m) != 0),
                    "witness inside a family member"
                );
                witnesses += 1;
            }
        }
    }
    Ok(format!("{covered} covered, {witnesses} validated witnesses"))
}

fn monomial_element(r: &Ring, m: &alg::Monomial) -> Result<AlgebraElement, String> {
    ok(alg::elem_product(
        r,
        &[
            ok(alg::s_star(r, &m.b))?,
            ok(alg::u(r, &m.c))?,
            alg::e(r, &m.support),
            ok(alg::s(r, &m.b2))?,
        ],
    ))
}

fn expectation() -> Outcome {
    let r = z();
    let mut g = rng(4);
    let mut monomials = 0;
    for _ in 0..100 {
        let words: Vec<(scalar::Scalar, Word)> = (0..3)
            .map(|_| (scalar::int(g.random_range(-3..=3)), random_z_word(&mut g, 4)))
            .collect();
        let x = build_sum(&r, &words);
        let th = alg::expectation(&r, &x);
        ensure!(
            eq(&r, &alg::expectation(&r, &th), &th)?,
            "expectation is not idempotent"
        );
        let m = g.random_range(1..=6);
        let d1 = alg::e(&r, &zc(g.random_range(0..m), m));
        let d2 = alg::elem_scale(&r, &alg::e(&r, &zc(0, 2)), &scalar::int(3));
        let inner = alg::expectation(&r, &ok(alg::elem_product(&r, &[d1.clone(), x.clone(), d2.clone()]))?);
        ensure!(
            eq(&r, &inner, &ok(alg::elem_product(&r, &[d1, th, d2]))?)?,
            "expectation is not a module map"
        );
        let mut total = AlgebraElement::zero();
        for (c, mono) in ok(alg::monomials(&r, &x))? {
            let w = monomial_element(&r, &mono)?;
            let tw = alg::expectation(&r, &w);
            let kept = eq(&r, &tw, &w)?;
            ensure!(
                kept || ok(alg::elem_is_zero(&r, &tw))?,
                "expectation of a monomial is neither itself nor zero"
            );
            let fixes = (-40i64..40).all(|v| {
                alg::evaluate(&r, &w, &r.int(v))
                    .iter()
                    .all(|(_, target)| *target == r.int(v))
            });
            ensure!(kept == fixes, "kept {kept} but fixes every basis vector: {fixes}");
            total = alg::elem_add(&r, &total, &alg::elem_scale(&r, &w, &c));
            monomials += 1;
        }
        ensure!(eq(&r, &total, &x)?, "monomials do not span the element");
    }
    Ok(format!("100 elements, {monomials} spanning monomials"))
}

fn check_report(r: &Ring, x: &AlgebraElement) -> Result<(), String> {
    let rep = ok(criterion_pipeline(r, x))?;
    ensure!(
        rep.passed(),
        "failed clauses {:?}",
        rep.checks.iter().filter(|c| !c.passed).collect::<Vec<_>>()
    );
    let fs: Vec<AlgebraElement> = rep
        .witnesses
        .iter()
        .map(|w| alg::e(r, &coset(r, &w.rep, &w.modulus)))
        .collect();
    let mut top = scalar::ExactNorm::zero();
    for (i, (f, w)) in fs.iter().zip(&rep.witnesses).enumerate() {
        let v = ok(alg::elem_mul(r, &ok(alg::u(r, &w.rep))?, &ok(alg::s(r, &w.modulus))?))?;
        ensure!(
            eq(r, f, &ok(alg::elem_mul(r, &v, &ok(alg::adjoint(r, &v))?))?)?,
            "f is not s s*"
        );
        let off = ok(alg::elem_product(
            r,
            &[f.clone(), alg::elem_sub(r, x, &rep.theta), f.clone()],
        ))?;
        ensure!(ok(alg::elem_is_zero(r, &off))?, "f (x - E(x)) f is nonzero");
        let comp = ok(alg::elem_product(r, &[f.clone(), rep.theta.clone(), f.clone()]))?;
        ensure!(
            eq(r, &comp, &alg::elem_scale(r, f, &w.value))?,
            "f E(x) f is not a multiple of f"
        );
        for f2 in &fs[i + 1..] {
            ensure!(
                ok(alg::elem_is_zero(r, &ok(alg::elem_mul(r, f, f2))?))?,
                "projections not orthogonal"
            );
        }
        let n = scalar::ExactNorm::of(&w.value);
        if n > top {
            top = n;
        }
    }
    ensure!(
        top == ok(alg::d_norm(r, &rep.theta))?,
        "largest value differs from the norm of E(x)"
    );
    Ok(())
}

fn simplicity() -> Outcome {
    let r = z();
    let examples = [
        alg::e(&r, &zc(0, 2)),
        alg::elem_add(
            &r,
            &alg::elem_add(&r, &alg::one(&r), &ok(alg::u(&r, &r.int(1)))?),
            &ok(alg::u(&r, &r.int(-1)))?,
        ),
        alg::elem_add(
            &r,
            &alg::elem_add(&r, &alg::one(&r), &ok(alg::s(&r, &r.int(2)))?),
            &ok(alg::s_star(&r, &r.int(2)))?,
        ),
    ];
    for x in &examples {
        check_report(&r, x)?;
    }
    let mut g = rng(5);
    let mut random = 0;
    while random < 25 {
        let x = random_self_adjoint(&mut g, 2);
        if x.terms.len() > 6 || ok(alg::elem_is_zero(&r, &x))? {
            continue;
        }
        ensure!(
            eq(&r, &ok(alg::adjoint(&r, &x))?, &x)?,
            "sampled element is not self-adjoint"
        );
        check_report(&r, &x)?;
        random += 1;
    }
    Ok(format!("3 worked examples, {random} random self-adjoint elements"))
}

fn counterexample() -> Outcome {
    let q = quad5();
    let colon = ok(ideal_colon(&q, &ok(principal(&q, &quad(1, 1)))?, &q.int(2)))?;
    let expected = ok(ideal_gen(&q, &[quad(3, 0), quad(1, 1)]))?;
    ensure!(colon == expected, "colon is {}", ideals::fmt_ideal(&q, &colon));
    // 2(x + yw) = s(1+w) + t(-5+w) has an integral solution exactly when x = y mod 3.
    for x in -12i64..12 {
        for y in -12i64..12 {
            ensure!(
                ideal_contains(&q, &colon, &quad(x, y)) == ((x - y) % 3 == 0),
                "membership of {x}+{y}w"
            );
        }
    }
    let o = opoly5();
    let w = o.opoly_w();
    let t = o.opoly_t();
    let p3 = ok(ideal_colon(&o, &ok(principal(&o, &o.add(&o.one(), &w)))?, &o.int(2)))?;
    ensure!(
        p3 == ok(ideal_gen(&o, &[o.int(3), o.add(&o.one(), &w)]))?,
        "polynomial colon differs"
    );
    let mut g = rng(6);
    let (mut constant, mut positive) = (0, 0);
    for _ in 0..50 {
        let n = g.random_range(2..=4);
        let mut cands: Vec<(Elem, Elem)> = Vec::new();
        for i in 0..n {
            let a = o.add(
                &o.int(g.random_range(-4..=4)),
                &o.mul(&o.int(g.random_range(-1..=1)), &w),
            );
            let b = if i % 2 == 0 {
                o.int(*[2i64, 4, 5, 7, -2, 6].get(g.random_range(0..6)).unwrap())
            } else {
                let lin = o.add(&t, &o.int(g.random_range(-3..=3)));
                if g.random_bool(0.3) {
                    o.mul(&lin, &t)
                } else {
                    lin
                }
            };
            cands.push((a, b));
        }
        let out = ok(coverage_refute(&o, &p3, &cands))?;
        let Cover::Witness(x) = out.result else {
            return Err("candidate family claimed to cover".into());
        };
        ensure!(ideal_contains(&o, &p3, &x), "witness {} outside the ideal", o.fmt(&x));
        for ((a, b), rule) in cands.iter().zip(&out.rules) {
            ensure!(
                !coset_has(&o, &coset(&o, a, b), &x),
                "witness lies in {} + ({})",
                o.fmt(a),
                o.fmt(b)
            );
            let is_constant = o.degree(b) == Some(0);
            let want = if is_constant {
                IndexRule::ConstantNotContained
            } else {
                IndexRule::DegreeSeparation
            };
            ensure!(*rule == want, "rule {rule:?} for modulus {}", o.fmt(b));
            ensure!(
                ideals::relative_index(&o, &p3, &ok(principal(&o, b))?) == IndexValue::Infinite,
                "finite relative index for {}",
                o.fmt(b)
            );
            if is_constant {
                constant += 1
            } else {
                positive += 1
            }
        }
    }
    Ok(format!(
        "colon verified; 50 families, {constant} constant and {positive} positive-degree moduli"
    ))
}

fn spectra_levels() -> Outcome {
    let z = z();
    let q5 = quad5();
    let c2 = cyc(2);
    let mut checked = 0;
    for n in [1i64, 2, 6, 12, 30, 36, 49] {
        let lvl = ok(spectra::finite_level(&z, &ok(principal(&z, &z.int(n)))?))?;
        ensure!(lvl.points.len() as i64 == n, "Z/{n} has {} points", lvl.points.len());
        checked += 1;
    }
    for gens in [
        vec![(2, 0)],
        vec![(1, 1)],
        vec![(3, 0), (1, 1)],
        vec![(2, 0), (1, 1)],
        vec![(1, 2)],
        vec![(3, 0)],
        vec![(7, 0), (3, 1)],
    ] {
        let i = ok(ideal_gen(
            &q5,
            &gens.iter().map(|&(a, b)| quad(a, b)).collect::<Vec<_>>(),
        ))?;
        let lvl = ok(spectra::finite_level(&q5, &i))?;
        let brute = quad_index_brute(-5, &gens);
        ensure!(
            lvl.points.len() as u64 == brute,
            "{gens:?}: {} points, brute {brute}",
            lvl.points.len()
        );
        checked += 1;
    }
    for gens in [
        vec![(2, 0)],
        vec![(3, 1)],
        vec![(1, 1), (2, 0)],
        vec![(1, -1), (4, 0)],
        vec![(5, 2)],
        vec![(3, 0)],
    ] {
        let n = gens
            .iter()
            .map(|&(a, b): &(i64, i64)| (a * a - b * b).abs())
            .find(|&n| n != 0)
            .unwrap();
        let span: Vec<(i64, i64)> = gens.iter().flat_map(|&(a, b)| [(a, b), (b, a)]).collect();
        let brute = lattice_index_brute(n, &span);
        let i = ok(ideal_gen(
            &c2,
            &gens.iter().map(|&(a, b)| cyc_elem(&c2, &[a, b])).collect::<Vec<_>>(),
        ))?;
        let lvl = ok(spectra::finite_level(&c2, &i))?;
        ensure!(
            lvl.points.len() as u64 == brute,
            "{gens:?}: {} points, brute {brute}",
            lvl.points.len()
        );
        ensure!(
            absolute_index(&c2, &i).count() == Some(BigInt::from(brute)),
            "index disagrees"
        );
        checked += 1;
    }
    let q = qpoly();
    let mut g = rng(7);
    for _ in 0..50 {
        let n = g.random_range(2..=3usize);
        let exps: Vec<u32> = (0..n).map(|_| g.random_range(0..=n as u32)).collect();
        let pt = ok(spectra::poly_level_point(exps, &random_poly(&mut g, &q, 4, 3)))?;
        let two = ok(spectra::poly_level_project(&ok(spectra::poly_level_project(&pt))?))?;
        let direct_exps = pt.exponents[..n - 2].iter().map(|&i| i.min(n as u32 - 2)).collect();
        ensure!(
            two == ok(spectra::poly_level_point(direct_exps, &pt.residue))?,
            "level maps incoherent"
        );
        ensure!(spectra::poly_level_le(&pt, &pt), "order not reflexive");
        let lift = ok(spectra::poly_level_lift(&pt))?;
        let m = ok(principal(&q, &spectra::level_modulus(&pt.exponents)))?;
        ensure!(
            ideal_contains(&q, &m, &q.sub(&lift, &pt.residue)),
            "lift misses its point"
        );
    }
    for p in [2u32, 3, 5, 7] {
        for m in 1..=40i64 {
            let rejected = matches!(spectra::localized_level(p, m), Err(ringstar::Error::NotApplicable(_)));
            ensure!(rejected == (m % p as i64 == 0), "Z[1/{p}]/({m}) rejected: {rejected}");
        }
    }
    Ok(format!(
        "{checked} level sizes, 50 coherent points with lifts, localized levels"
    ))
}

fn group_rings() -> Outcome {
    let mut boxes = 0;
    for p in [2u32, 3] {
        let r = cyc(p);
        let norm = cyc_elem(&r, &vec![1; p as usize]);
        let mut aug = vec![0; p as usize];
        aug[0] = 1;
        aug[1] = -1;
        let norm_ideal = ok(principal(&r, &norm))?;
        let aug_ideal = ok(principal(&r, &cyc_elem(&r, &aug)))?;
        for cs in coefficient_box(p as usize, 3) {
            let x = cyc_elem(&r, &cs);
            let regular = circulant_det(&cs) != 0;
            ensure!(r.is_regular(&x) == regular, "{} regular: {}", r.fmt(&x), !regular);
            let in_norm = ideal_contains(&r, &norm_ideal, &x);
            let in_aug = ideal_contains(&r, &aug_ideal, &x);
            ensure!(
                in_norm == cs.iter().all(|&c| c == cs[0]),
                "(1+..+t^(p-1)) membership of {}",
                r.fmt(&x)
            );
            ensure!(
                in_aug == (cs.iter().sum::<i64>() == 0),
                "(1-t) membership of {}",
                r.fmt(&x)
            );
            ensure!(
                !regular == (in_norm || in_aug),
                "zero-divisor {} outside the two ideals",
                r.fmt(&x)
            );
            boxes += 1;
        }
    }
    Ok(format!("{boxes} elements across p = 2, 3"))
}

fn semigroups() -> Outcome {
    let free = ok(Semigroup::new(SemigroupKind::FreeMonoid(2)))?;
    let mut sizes = Vec::new();
    for depth in 1..=3usize {
        let fam = ok(free.constructible_family(depth))?;
        let unique: std::collections::BTreeSet<&RightIdealSet> = fam.iter().collect();
        ensure!(unique.len() == fam.len(), "duplicate members at depth {depth}");
        let mut expected: std::collections::BTreeSet<RightIdealSet> =
            [RightIdealSet::Empty, RightIdealSet::Full].into();
        let mut layer: Vec<Vec<u8>> = vec![vec![]];
        for _ in 0..depth {
            layer = layer
                .iter()
                .flat_map(|w| [0u8, 1].map(|c| [w.as_slice(), &[c]].concat()))
                .collect();
            expected.extend(layer.iter().map(|w| RightIdealSet::Prefix(w.clone())));
        }
        ensure!(
            unique == expected.iter().collect(),
            "family at depth {depth} differs from prefix sets"
        );
        sizes.push(fam.len());
    }
    ensure!(sizes == [4, 8, 16], "family sizes {sizes:?}");
    ensure!(
        matches!(ok(free.quasi_lattice_check(3))?, QuasiLattice::Holds { .. }),
        "free monoid not quasi-lattice"
    );
    let axb = ok(Semigroup::new(SemigroupKind::AxPlusB))?;
    let r = z();
    let mut g = rng(9);
    for _ in 0..100 {
        let x = SgElem::Affine(g.random_range(-6..=6), g.random_range(1..=5));
        let y = SgElem::Affine(g.random_range(-6..=6), g.random_range(1..=5));
        let lhs = ok(to_ring_algebra(&r, &ok(axb.compose(&x, &y))?))?;
        let rhs = ok(alg::elem_mul(
            &r,
            &ok(to_ring_algebra(&r, &x))?,
            &ok(to_ring_algebra(&r, &y))?,
        ))?;
        ensure!(eq(&r, &lhs, &rhs)?, "translation of {x} {y} is not multiplicative");
    }
    Ok(format!("family sizes {sizes:?}, quasi-lattice, 100 products"))
}

fn qpoly_diagonal_identity() -> Outcome {
    let q = qpoly();
    let mut g = rng(10);
    let mut empty = 0;
    let probes = q.sample(150);
    for _ in 0..50 {
        let (dd, db) = (g.random_range(0..=2), g.random_range(1..=2));
        let d = random_nonzero_poly(&mut g, &q, dd, 3);
        let a = random_poly(&mut g, &q, 2, 4);
        let b = random_nonzero_poly(&mut g, &q, db, 3);
        let lhs = ok(alg::elem_product(
            &q,
            &[
                ok(alg::s_star(&q, &d))?,
                alg::e(&q, &coset(&q, &a, &b)),
                ok(alg::s(&q, &d))?,
            ],
        ))?;
        let multiples = coset(&q, &q.zero(), &d);
        let rhs = match ok(cosets::coset_intersect(&q, &coset(&q, &a, &b), &multiples))? {
            None => {
                empty += 1;
                AlgebraElement::zero()
            }
            Some(k) => {
                let gen = ideals::generators(&q, &k.ideal)
                    .into_iter()
                    .next()
                    .unwrap_or_else(|| q.zero());
                let a2 = ok(q.divide_exact(&k.rep, &d))?.ok_or("representative not divisible")?;
                let b2 = ok(q.divide_exact(&gen, &d))?.ok_or("modulus not divisible")?;
                let cell = coset(&q, &a2, &b2);
                for r in &probes {
                    let inside = divides(&q, &b, &q.sub(&q.mul(&d, r), &a)).is_some();
                    ensure!(coset_has(&q, &cell, r) == inside, "cell membership of {}", q.fmt(r));
                }
                alg::e(&q, &cell)
            }
        };
        ensure!(
            eq(&q, &lhs, &rhs)?,
            "s_d* e s_d differs from a single projection for d = {}",
            q.fmt(&d)
        );
    }
    Ok(format!("50 triples, {empty} with empty support"))
}

fn main() {
    type Check = fn() -> Outcome;
    let checks: [(&str, Check, Option<u64>); 10] = [
        ("relations", relations, Some(10)),
        ("oracle equivalence", oracle_equivalence, None),
        ("covering vs brute force", covering, None),
        ("conditional expectation", expectation, None),
        ("simplicity pipeline", simplicity, Some(60)),
        ("counterexample engine", counterexample, None),
        ("spectra", spectra_levels, None),
        ("group-ring regularity", group_rings, None),
        ("semigroups", semigroups, None),
        ("polynomial diagonal identity", qpoly_diagonal_identity, None),
    ];
    let mut failures = 0;
    for (i, (name, check, limit)) in checks.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let took = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(secs)) if took > Duration::from_secs(*secs) => {
                Err(format!("took {:.2}s, limit {secs}s", took.as_secs_f64()))
            }
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({:.2}s)", i + 1, took.as_secs_f64()),
            Err(why) => {
                failures += 1;
                println!("FAIL {:>2} {name}: {why} ({:.2}s)", i + 1, took.as_secs_f64());
            }
        }
    }
    if failures > 0 {
        std::process::exit(1);
    }
}
