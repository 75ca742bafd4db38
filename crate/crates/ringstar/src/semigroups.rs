//! Left-cancellative semigroups with closed-form right ideals: free monoids,
//! `N^k`, and the `ax+b` semigroup `Z x Z_{>0}` with
//! `(a,b)(c,d) = (a+bc, bd)`.

use crate::cosets::{coset_intersect, Coset};
use crate::error::{Error, Result};
use crate::rings::{Ring, RingDescriptor};
use crate::star_algebra::{e, elem_mul, s, u, AlgebraElement};
use num_integer::Integer;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SemigroupKind {
    /// Words over an alphabet of the given size.
    FreeMonoid(u8),
    /// `N^k` under addition.
    Additive(usize),
    AxPlusB,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SgElem {
    Word(Vec<u8>),
    Vector(Vec<u64>),
    /// `(a, b)` with `b > 0`.
    Affine(i64, i64),
}

impl fmt::Display for SgElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SgElem::Word(w) if w.is_empty() => f.write_str("1"),
            SgElem::Word(w) => {
                for &c in w {
                    write!(f, "{}", (b'a' + c) as char)?;
                }
                Ok(())
            }
            SgElem::Vector(v) => {
                let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                write!(f, "({})", parts.join(","))
            }
            SgElem::Affine(a, b) => write!(f, "({a},{b})"),
        }
    }
}

/// A constructible right ideal in closed form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RightIdealSet {
    Empty,
    Full,
    /// `wP`: words with prefix `w`.
    Prefix(Vec<u8>),
    /// `v + N^k`.
    Orthant(Vec<u64>),
    /// `(a + bZ) x bZ_{>0}`, which is `(a,b)P`; `a` reduced modulo `b`.
    Affine(i64, i64),
}

impl fmt::Display for RightIdealSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RightIdealSet::Empty => f.write_str("empty"),
            RightIdealSet::Full => f.write_str("P"),
            RightIdealSet::Prefix(w) => write!(f, "{}P", SgElem::Word(w.clone())),
            RightIdealSet::Orthant(v) => write!(f, "{}+P", SgElem::Vector(v.clone())),
            RightIdealSet::Affine(a, b) => write!(f, "({a}+{b}Z)x{b}Z>0"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Semigroup {
    pub kind: SemigroupKind,
}

impl Semigroup {
    pub fn new(kind: SemigroupKind) -> Result<Semigroup> {
        match kind {
            SemigroupKind::FreeMonoid(0) | SemigroupKind::Additive(0) => Err(Error::InvalidDescriptor(
                "semigroup needs at least one generator".into(),
            )),
            SemigroupKind::FreeMonoid(k) if k > 26 => {
                Err(Error::InvalidDescriptor("alphabet is limited to 26 letters".into()))
            }
            _ => Ok(Semigroup { kind }),
        }
    }

    fn check(&self, x: &SgElem) -> Result<()> {
        let ok = match (&self.kind, x) {
            (SemigroupKind::FreeMonoid(k), SgElem::Word(w)) => w.iter().all(|c| c < k),
            (SemigroupKind::Additive(k), SgElem::Vector(v)) => v.len() == *k,
            (SemigroupKind::AxPlusB, SgElem::Affine(_, b)) => *b > 0,
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::BackendMismatch {
                ring: format!("{:?}", self.kind),
                detail: x.to_string(),
            })
        }
    }

    pub fn identity(&self) -> SgElem {
        match self.kind {
            SemigroupKind::FreeMonoid(_) => SgElem::Word(Vec::new()),
            SemigroupKind::Additive(k) => SgElem::Vector(vec![0; k]),
            SemigroupKind::AxPlusB => SgElem::Affine(0, 1),
        }
    }

    pub fn compose(&self, x: &SgElem, y: &SgElem) -> Result<SgElem> {
        self.check(x)?;
        self.check(y)?;
        Ok(match (x, y) {
            (SgElem::Word(a), SgElem::Word(b)) => SgElem::Word([a.as_slice(), b].concat()),
            (SgElem::Vector(a), SgElem::Vector(b)) => SgElem::Vector(a.iter().zip(b).map(|(p, q)| p + q).collect()),
            (SgElem::Affine(a, b), SgElem::Affine(c, d)) => SgElem::Affine(a + b * c, b * d),
            _ => unreachable!(),
        })
    }

    /// The default generating set.
    pub fn generators(&self) -> Vec<SgElem> {
        match self.kind {
            SemigroupKind::FreeMonoid(k) => (0..k).map(|c| SgElem::Word(vec![c])).collect(),
            SemigroupKind::Additive(k) => (0..k)
                .map(|i| {
                    let mut v = vec![0; k];
                    v[i] = 1;
                    SgElem::Vector(v)
                })
                .collect(),
            SemigroupKind::AxPlusB => vec![SgElem::Affine(0, 2), SgElem::Affine(1, 2)],
        }
    }

    /// Elements up to the given size, in a fixed order.
    pub fn elements(&self, depth: usize) -> Vec<SgElem> {
        match self.kind {
            SemigroupKind::FreeMonoid(k) => {
                let mut out = vec![Vec::new()];
                let mut layer: Vec<Vec<u8>> = vec![Vec::new()];
                for _ in 0..depth {
                    layer = layer
                        .iter()
                        .flat_map(|w| (0..k).map(move |c| [w.as_slice(), &[c]].concat()))
                        .collect();
                    out.extend(layer.iter().cloned());
                }
                out.into_iter().map(SgElem::Word).collect()
            }
            SemigroupKind::Additive(k) => {
                let mut out: Vec<Vec<u64>> = vec![Vec::new()];
                for _ in 0..k {
                    out = out
                        .iter()
                        .flat_map(|v| (0..=depth as u64).map(move |x| [v.as_slice(), &[x]].concat()))
                        .collect();
                }
                out.into_iter().map(SgElem::Vector).collect()
            }
            SemigroupKind::AxPlusB => {
                let d = depth as i64;
                let mut out = Vec::new();
                for b in 1..=d.max(1) {
                    for a in -d..=d {
                        out.push(SgElem::Affine(a, b));
                    }
                }
                out
            }
        }
    }

    /// `pP`.
    pub fn principal_right_ideal(&self, p: &SgElem) -> Result<RightIdealSet> {
        self.check(p)?;
        Ok(match p {
            SgElem::Word(w) => RightIdealSet::Prefix(w.clone()),
            SgElem::Vector(v) => RightIdealSet::Orthant(v.clone()),
            SgElem::Affine(a, b) => RightIdealSet::Affine(a.mod_floor(b), *b),
        })
    }

    pub fn member(&self, s: &RightIdealSet, x: &SgElem) -> Result<bool> {
        self.check(x)?;
        Ok(match (s, x) {
            (RightIdealSet::Empty, _) => false,
            (RightIdealSet::Full, _) => true,
            (RightIdealSet::Prefix(w), SgElem::Word(v)) => v.starts_with(w),
            (RightIdealSet::Orthant(w), SgElem::Vector(v)) => v.iter().zip(w).all(|(p, q)| p >= q),
            (RightIdealSet::Affine(a, b), SgElem::Affine(x, y)) => (x - a).mod_floor(b) == 0 && y % b == 0,
            _ => {
                return Err(Error::BackendMismatch {
                    ring: format!("{:?}", self.kind),
                    detail: s.to_string(),
                })
            }
        })
    }

    /// `qS`.
    pub fn ideal_translate(&self, q: &SgElem, s: &RightIdealSet) -> Result<RightIdealSet> {
        self.check(q)?;
        Ok(match (s, q) {
            (RightIdealSet::Empty, _) => RightIdealSet::Empty,
            (RightIdealSet::Full, _) => self.principal_right_ideal(q)?,
            (RightIdealSet::Prefix(w), SgElem::Word(v)) => RightIdealSet::Prefix([v.as_slice(), w].concat()),
            (RightIdealSet::Orthant(w), SgElem::Vector(v)) => {
                RightIdealSet::Orthant(v.iter().zip(w).map(|(p, q)| p + q).collect())
            }
            (RightIdealSet::Affine(a, b), SgElem::Affine(c, d)) => {
                let m = b * d;
                RightIdealSet::Affine((c + d * a).mod_floor(&m), m)
            }
            _ => {
                return Err(Error::BackendMismatch {
                    ring: format!("{:?}", self.kind),
                    detail: s.to_string(),
                })
            }
        })
    }

    pub fn ideal_intersect_sg(&self, s1: &RightIdealSet, s2: &RightIdealSet) -> Result<RightIdealSet> {
        use RightIdealSet::*;
        Ok(match (s1, s2) {
            (Empty, _) | (_, Empty) => Empty,
            (Full, x) | (x, Full) => x.clone(),
            (Prefix(a), Prefix(b)) => {
                if a.starts_with(b) {
                    Prefix(a.clone())
                } else if b.starts_with(a) {
                    Prefix(b.clone())
                } else {
                    Empty
                }
            }
            (Orthant(a), Orthant(b)) => Orthant(a.iter().zip(b).map(|(p, q)| *p.max(q)).collect()),
            (Affine(a1, b1), Affine(a2, b2)) => {
                let z = Ring::integers();
                let k1 = Coset::principal(&z, &z.int(*a1), &z.int(*b1))?;
                let k2 = Coset::principal(&z, &z.int(*a2), &z.int(*b2))?;
                match coset_intersect(&z, &k1, &k2)? {
                    None => Empty,
                    Some(k) => {
                        let l = b1.lcm(b2);
                        let rep = match k.rep {
                            crate::rings::Elem::Int(r) => i64::try_from(r).expect("small representative"),
                            _ => unreachable!(),
                        };
                        Affine(rep.mod_floor(&l), l)
                    }
                }
            }
            _ => {
                return Err(Error::BackendMismatch {
                    ring: format!("{:?}", self.kind),
                    detail: s1.to_string(),
                })
            }
        })
    }

    /// Members reachable from `{empty, P}` in `depth` rounds of left
    /// translation by generators and pairwise intersection.
    pub fn constructible_family(&self, depth: usize) -> Result<Vec<RightIdealSet>> {
        let mut fam = vec![RightIdealSet::Empty, RightIdealSet::Full];
        let gens = self.generators();
        for _ in 0..depth {
            let mut fresh = Vec::new();
            for s in &fam {
                for g in &gens {
                    fresh.push(self.ideal_translate(g, s)?);
                }
            }
            for (i, s) in fam.iter().enumerate() {
                for t in &fam[i + 1..] {
                    fresh.push(self.ideal_intersect_sg(s, t)?);
                }
            }
            for s in fresh {
                if !fam.contains(&s) {
                    fam.push(s);
                }
            }
        }
        Ok(fam)
    }

    /// The generator `p` with `pP = s`, for a closed form that is principal.
    pub fn principal_generator(&self, s: &RightIdealSet) -> Option<SgElem> {
        match s {
            RightIdealSet::Empty => None,
            RightIdealSet::Full => Some(self.identity()),
            RightIdealSet::Prefix(w) => Some(SgElem::Word(w.clone())),
            RightIdealSet::Orthant(v) => Some(SgElem::Vector(v.clone())),
            RightIdealSet::Affine(a, b) => Some(SgElem::Affine(*a, *b)),
        }
    }

    /// Check that `pP ∩ qP` is empty or principal for all elements up to
    /// `depth`, validating each closed form by membership on sample points.
    pub fn quasi_lattice_check(&self, depth: usize) -> Result<QuasiLattice> {
        let elems = self.elements(depth);
        let probes = self.elements(depth + 2);
        let mut meets = Vec::new();
        for (i, p) in elems.iter().enumerate() {
            for q in &elems[i..] {
                let pp = self.principal_right_ideal(p)?;
                let qp = self.principal_right_ideal(q)?;
                let meet = self.ideal_intersect_sg(&pp, &qp)?;
                let generator = self.principal_generator(&meet);
                let claimed = match &generator {
                    Some(r) => self.principal_right_ideal(r)?,
                    None => RightIdealSet::Empty,
                };
                for x in &probes {
                    let both = self.member(&pp, x)? && self.member(&qp, x)?;
                    if both != self.member(&claimed, x)? {
                        return Ok(QuasiLattice::Counterexample(p.clone(), q.clone()));
                    }
                }
                meets.push((p.clone(), q.clone(), generator));
            }
        }
        Ok(QuasiLattice::Holds { meets })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum QuasiLattice {
    /// Every checked pair with its meet generator (`None` for an empty meet).
    Holds {
        meets: Vec<(SgElem, SgElem, Option<SgElem>)>,
    },
    Counterexample(SgElem, SgElem),
}

fn require_integers(ring: &Ring) -> Result<()> {
    match ring.desc() {
        RingDescriptor::Integers => Ok(()),
        _ => Err(Error::BackendMismatch {
            ring: ring.name(),
            detail: "the ax+b translation targets the integers".into(),
        }),
    }
}

/// `(a,b) -> u^a s_b`.
pub fn to_ring_algebra(ring: &Ring, x: &SgElem) -> Result<AlgebraElement> {
    require_integers(ring)?;
    match x {
        SgElem::Affine(a, b) if *b > 0 => elem_mul(ring, &u(ring, &ring.int(*a))?, &s(ring, &ring.int(*b))?),
        _ => Err(Error::BackendMismatch {
            ring: ring.name(),
            detail: x.to_string(),
        }),
    }
}

/// The projection onto a constructible set: `(a,b)P -> e_{a+bZ}`.
pub fn set_to_ring_algebra(ring: &Ring, s: &RightIdealSet) -> Result<AlgebraElement> {
    require_integers(ring)?;
    match s {
        RightIdealSet::Empty => Ok(AlgebraElement::zero()),
        RightIdealSet::Full => Ok(e(ring, &Coset::whole(ring))),
        RightIdealSet::Affine(a, b) => Ok(e(ring, &Coset::principal(ring, &ring.int(*a), &ring.int(*b))?)),
        _ => Err(Error::BackendMismatch {
            ring: ring.name(),
            detail: s.to_string(),
        }),
    }
}
