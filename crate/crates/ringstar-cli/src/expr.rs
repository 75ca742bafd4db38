//! Algebra expressions: `U(a)`, `S(b)`, `Sstar(b)` (or `S*(b)`), `E(coset)`,
//! Gaussian rational literals, juxtaposition for products, `+`, `-`, and the
//! postfix adjoint `'`.

use crate::error::{CliError, SyntaxError};
use crate::ring_syntax::{parse_coset, parse_elem};
use num_bigint::BigInt;
use num_rational::BigRational;
use ringstar::cosets::{coset_eq, fmt_coset, Coset};
use ringstar::ideals::{fmt_ideal, Ideal, IdealFamily};
use ringstar::scalar::{self, Scalar};
use ringstar::star_algebra::{self as alg, AlgebraElement};
use ringstar::{Elem, Ring};

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Scalar(Scalar),
    U(Elem),
    S(Elem),
    Sstar(Elem),
    E(Coset),
    Product(Vec<Expr>),
    /// Summands with a flag for subtraction.
    Sum(Vec<(bool, Expr)>),
    Adjoint(Box<Expr>),
}

pub fn parse(ring: &Ring, src: &str) -> Result<Expr, SyntaxError> {
    let mut p = Parser { ring, src, pos: 0 };
    let e = p.sum()?;
    p.skip_ws();
    if p.pos < src.len() {
        return Err(SyntaxError::new(p.pos, "unexpected input after expression"));
    }
    Ok(e)
}

struct Parser<'a> {
    ring: &'a Ring,
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(|c: char| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<Expr, SyntaxError> {
        let mut terms = Vec::new();
        let first_neg = self.eat('-');
        terms.push((first_neg, self.product()?));
        loop {
            if self.eat('+') {
                terms.push((false, self.product()?));
            } else if self.eat('-') {
                terms.push((true, self.product()?));
            } else {
                break;
            }
        }
        Ok(if terms.len() == 1 && !terms[0].0 {
            terms.pop().unwrap().1
        } else {
            Expr::Sum(terms)
        })
    }

    fn starts_factor(&mut self) -> bool {
        matches!(self.peek(), Some(c) if c.is_ascii_digit() || c == '(' || c == 'U' || c == 'S' || c == 'E' || c == 'i')
    }

    fn product(&mut self) -> Result<Expr, SyntaxError> {
        let mut factors = vec![self.postfix()?];
        loop {
            if self.eat('*') || self.starts_factor() {
                factors.push(self.postfix()?);
            } else {
                break;
            }
        }
        Ok(if factors.len() == 1 {
            factors.pop().unwrap()
        } else {
            Expr::Product(factors)
        })
    }

    fn postfix(&mut self) -> Result<Expr, SyntaxError> {
        let mut e = self.atom()?;
        while self.eat('\'') {
            e = Expr::Adjoint(Box::new(e));
        }
        Ok(e)
    }

    fn digits(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while self.src[self.pos..].starts_with(|c: char| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.src[start..self.pos].parse().unwrap())
    }

    /// Text up to the parenthesis matching the one just consumed.
    fn group(&mut self, open_at: usize) -> Result<(usize, &'a str), SyntaxError> {
        let start = self.pos;
        let mut depth = 1;
        for (i, ch) in self.src[start..].char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => {
                    depth -= 1;
                    if depth == 0 {
                        self.pos = start + i + 1;
                        return Ok((start, &self.src[start..start + i]));
                    }
                }
                _ => {}
            }
        }
        Err(SyntaxError::new(open_at, "unclosed parenthesis"))
    }

    fn regular_arg(&mut self, at: usize) -> Result<Elem, SyntaxError> {
        let (off, text) = self.group(at)?;
        let b = parse_elem(self.ring, text, off)?;
        if !self.ring.is_regular(&b) {
            return Err(SyntaxError::with_code(
                off,
                "not_regular",
                format!(
                    "{} is a zero-divisor, so S({}) is not an isometry",
                    self.ring.fmt(&b),
                    self.ring.fmt(&b)
                ),
            ));
        }
        Ok(b)
    }

    fn atom(&mut self) -> Result<Expr, SyntaxError> {
        let at = {
            self.skip_ws();
            self.pos
        };
        let rest = &self.src[at..];
        if rest.starts_with(|c: char| c.is_ascii_digit()) {
            let n = self.digits().unwrap();
            let mut q = BigRational::from_integer(n);
            if self.src[self.pos..].starts_with('/') {
                self.pos += 1;
                match self.digits() {
                    Some(d) if d != BigInt::from(0) => q /= BigRational::from_integer(d),
                    _ => return Err(SyntaxError::new(self.pos, "expected a nonzero denominator")),
                }
            }
            if self.src[self.pos..].starts_with('i')
                && !self.src[self.pos + 1..].starts_with(|c: char| c.is_ascii_alphanumeric())
            {
                self.pos += 1;
                return Ok(Expr::Scalar(scalar::i() * scalar::real(q)));
            }
            return Ok(Expr::Scalar(scalar::real(q)));
        }
        let call = |name: &str| rest.strip_prefix(name).is_some_and(|r| r.trim_start().starts_with('('));
        let open = |p: &mut Parser, name_len: usize| -> Result<usize, SyntaxError> {
            p.pos = at + name_len;
            if p.eat('(') {
                Ok(p.pos - 1)
            } else {
                Err(SyntaxError::new(p.pos, "expected '('"))
            }
        };
        if call("Sstar") {
            let o = open(self, 5)?;
            return Ok(Expr::Sstar(self.regular_arg(o)?));
        }
        if call("S*") {
            let o = open(self, 2)?;
            return Ok(Expr::Sstar(self.regular_arg(o)?));
        }
        if call("S") {
            let o = open(self, 1)?;
            return Ok(Expr::S(self.regular_arg(o)?));
        }
        if call("U") {
            let o = open(self, 1)?;
            let (off, text) = self.group(o)?;
            return Ok(Expr::U(parse_elem(self.ring, text, off)?));
        }
        if call("E") {
            let o = open(self, 1)?;
            let (off, text) = self.group(o)?;
            return Ok(Expr::E(parse_coset(self.ring, text, off)?));
        }
        if rest.starts_with('i') && !rest[1..].starts_with(|c: char| c.is_ascii_alphanumeric()) {
            self.pos = at + 1;
            return Ok(Expr::Scalar(scalar::i()));
        }
        if self.eat('(') {
            let e = self.sum()?;
            if !self.eat(')') {
                return Err(SyntaxError::new(self.pos, "expected ')'"));
            }
            return Ok(e);
        }
        if at >= self.src.len() {
            return Err(SyntaxError::new(at, "unexpected end of expression"));
        }
        Err(SyntaxError::new(
            at,
            "expected U(..), S(..), Sstar(..), E(..), a number or '('",
        ))
    }
}

fn fmt_scalar_factor(s: &Scalar) -> String {
    let text = scalar::fmt(s);
    if text.contains(['+', '-']) {
        format!("({text})")
    } else {
        text
    }
}

fn fmt_coset_arg(ring: &Ring, k: &Coset) -> String {
    if coset_eq(ring, k, &Coset::whole(ring)) {
        "R".into()
    } else {
        fmt_coset(ring, k)
    }
}

/// Canonical text; parsing it gives back the same tree.
pub fn print(ring: &Ring, e: &Expr) -> String {
    match e {
        Expr::Scalar(s) => fmt_scalar_factor(s),
        Expr::U(a) => format!("U({})", ring.fmt(a)),
        Expr::S(b) => format!("S({})", ring.fmt(b)),
        Expr::Sstar(b) => format!("Sstar({})", ring.fmt(b)),
        Expr::E(k) => format!("E({})", fmt_coset_arg(ring, k)),
        Expr::Product(fs) => fs
            .iter()
            .map(|f| match f {
                Expr::Sum(_) | Expr::Product(_) => format!("({})", print(ring, f)),
                _ => print(ring, f),
            })
            .collect::<Vec<_>>()
            .join(" "),
        Expr::Sum(ts) => {
            let mut out = String::new();
            for (i, (neg, t)) in ts.iter().enumerate() {
                let body = match t {
                    Expr::Sum(_) => format!("({})", print(ring, t)),
                    _ => print(ring, t),
                };
                match (i, neg) {
                    (0, true) => out.push('-'),
                    (0, false) => {}
                    (_, true) => out.push_str(" - "),
                    (_, false) => out.push_str(" + "),
                }
                out.push_str(&body);
            }
            out
        }
        Expr::Adjoint(inner) => match **inner {
            Expr::Sum(_) | Expr::Product(_) => format!("({})'", print(ring, inner)),
            _ => format!("{}'", print(ring, inner)),
        },
    }
}

/// Regular elements used as multipliers, in order of appearance.
fn multipliers(e: &Expr, out: &mut Vec<Elem>) {
    match e {
        Expr::S(b) | Expr::Sstar(b) => {
            if !out.contains(b) {
                out.push(b.clone());
            }
        }
        Expr::Product(xs) => xs.iter().for_each(|x| multipliers(x, out)),
        Expr::Sum(ts) => ts.iter().for_each(|(_, x)| multipliers(x, out)),
        Expr::Adjoint(x) => multipliers(x, out),
        _ => {}
    }
}

fn supports<'a>(e: &'a Expr, out: &mut Vec<&'a Coset>) {
    match e {
        Expr::E(k) => out.push(k),
        Expr::Product(xs) => xs.iter().for_each(|x| supports(x, out)),
        Expr::Sum(ts) => ts.iter().for_each(|(_, x)| supports(x, out)),
        Expr::Adjoint(x) => supports(x, out),
        _ => {}
    }
}

const FAMILY_DEPTH: usize = 2;

/// Every `E(..)` ideal must come from the family's closure under the
/// expression's multipliers and intersections.
pub fn check_family(ring: &Ring, e: &Expr, family: &[Ideal]) -> Result<(), CliError> {
    let mut ms = Vec::new();
    multipliers(e, &mut ms);
    let members = IdealFamily::new(family.to_vec()).closure(ring, &ms, FAMILY_DEPTH)?;
    let mut ks = Vec::new();
    supports(e, &mut ks);
    for k in ks {
        if !members.iter().any(|m| m.ideal == k.ideal) {
            return Err(CliError::Usage(format!(
                "{} is not generated by the family",
                fmt_ideal(ring, &k.ideal)
            )));
        }
    }
    Ok(())
}

pub fn build(ring: &Ring, e: &Expr) -> Result<AlgebraElement, CliError> {
    Ok(match e {
        Expr::Scalar(s) => alg::scalar_elem(ring, s.clone()),
        Expr::U(a) => alg::u(ring, a)?,
        Expr::S(b) => alg::s(ring, b)?,
        Expr::Sstar(b) => alg::s_star(ring, b)?,
        Expr::E(k) => alg::e(ring, k),
        Expr::Product(fs) => {
            let parts = fs.iter().map(|f| build(ring, f)).collect::<Result<Vec<_>, _>>()?;
            alg::elem_product(ring, &parts)?
        }
        Expr::Sum(ts) => {
            let mut acc = AlgebraElement::zero();
            for (neg, t) in ts {
                let x = build(ring, t)?;
                acc = if *neg {
                    alg::elem_sub(ring, &acc, &x)
                } else {
                    alg::elem_add(ring, &acc, &x)
                };
            }
            acc
        }
        Expr::Adjoint(x) => alg::adjoint(ring, &build(ring, x)?)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use ringstar::RingDescriptor;

    fn z() -> Ring {
        Ring::integers()
    }

    #[test]
    fn shapes() {
        let r = z();
        assert!(matches!(parse(&r, "U(1) S(2)").unwrap(), Expr::Product(ref v) if v.len() == 2));
        assert!(
            matches!(parse(&r, "E(1 mod ideal(2)) + E(0 mod ideal(2))").unwrap(), Expr::Sum(ref v) if v.len() == 2)
        );
        assert!(matches!(parse(&r, "S*(2)").unwrap(), Expr::Sstar(_)));
        assert!(matches!(parse(&r, "(U(1) S(2))'").unwrap(), Expr::Adjoint(_)));
        let g = Ring::new(RingDescriptor::CyclicGroupRing(2)).unwrap();
        let err = parse(&g, "U(1) S(1+t)").unwrap_err();
        assert_eq!((err.code, err.pos), ("not_regular", 7));
    }

    #[test]
    fn round_trip() {
        let r = z();
        for src in [
            "Sstar(2) U(1) E(R) S(3)",
            "2 E(0 mod ideal(2)) + 3 E(1 mod ideal(2))",
            "3/2+1/2i",
            "-U(1) - (2 S(3))' + i E(7 mod ideal(6))",
            "(1/2i) U(-3) (E(R) + U(2))",
            "S*(4) U(1)'",
        ] {
            let ast = parse(&r, src).unwrap();
            let printed = print(&r, &ast);
            assert_eq!(parse(&r, &printed).unwrap(), ast, "{src} -> {printed}");
            assert_eq!(print(&r, &parse(&r, &printed).unwrap()), printed);
        }
    }

    #[test]
    fn errors_have_positions() {
        let r = z();
        assert_eq!(parse(&r, "U(1) +").unwrap_err().pos, 6);
        assert_eq!(parse(&r, "U(1").unwrap_err().pos, 1);
        assert_eq!(parse(&r, "E(1 mod ideal(w))").unwrap_err().pos, 14);
        assert_eq!(parse(&r, "X(1)").unwrap_err().pos, 0);
    }

    #[test]
    fn building() {
        let r = z();
        let x = build(&r, &parse(&r, "E(0 mod ideal(2)) + E(1 mod ideal(2))").unwrap()).unwrap();
        assert!(alg::elem_eq(&r, &x, &alg::one(&r)).unwrap());
        let fam = vec![ringstar::ideals::principal(&r, &r.int(2)).unwrap()];
        let ok = parse(&r, "Sstar(3) E(1 mod ideal(6)) S(3)").unwrap();
        assert!(check_family(&r, &ok, &fam).is_ok());
        let bad = parse(&r, "E(1 mod ideal(5))").unwrap();
        assert!(check_family(&r, &bad, &fam).is_err());
    }
}
