//! Ring descriptors, element literals, ideals and cosets as they appear on the
//! command line.

use crate::error::{compute_code, SyntaxError};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use ringstar::cosets::Coset;
use ringstar::ideals::{self, Ideal};
use ringstar::{Elem, Ring, RingDescriptor};

fn err(pos: usize, msg: impl Into<String>) -> SyntaxError {
    SyntaxError::new(pos, msg)
}

/// Split at commas not enclosed in parentheses, returning `(offset, piece)`.
pub fn split_top(s: &str, sep: char) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push((start, &s[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push((start, &s[start..]));
    out
}

/// `z`, `quad:D`, `qpoly`, `opoly:D`, `cyc:P`, `zinv:P`, `prod:(A,B)`.
pub fn parse_descriptor(s: &str) -> Result<RingDescriptor, SyntaxError> {
    let s = s.trim();
    let num = |t: &str| -> Result<i64, SyntaxError> {
        t.trim()
            .parse()
            .map_err(|_| err(0, format!("expected an integer in ring descriptor, found '{t}'")))
    };
    let (head, arg) = match s.split_once(':') {
        Some((h, a)) => (h, Some(a)),
        None => (s, None),
    };
    match (head, arg) {
        ("z", None) => Ok(RingDescriptor::Integers),
        ("qpoly", None) => Ok(RingDescriptor::RationalPoly),
        ("quad", Some(d)) => Ok(RingDescriptor::QuadraticOrder(num(d)?)),
        ("opoly", Some(d)) => Ok(RingDescriptor::OrderPoly(num(d)?)),
        ("cyc", Some(p)) => Ok(RingDescriptor::CyclicGroupRing(
            num(p)?.try_into().map_err(|_| err(0, "p out of range"))?,
        )),
        ("zinv", Some(p)) => Ok(RingDescriptor::LocalizedIntegers(
            num(p)?.try_into().map_err(|_| err(0, "p out of range"))?,
        )),
        ("prod", Some(rest)) => {
            let inner = rest
                .trim()
                .strip_prefix('(')
                .and_then(|r| r.strip_suffix(')'))
                .ok_or_else(|| err(0, "product descriptor must look like prod:(A,B)"))?;
            let parts = split_top(inner, ',');
            if parts.len() != 2 {
                return Err(err(0, "product descriptor needs exactly two factors"));
            }
            Ok(RingDescriptor::Product(
                Box::new(parse_descriptor(parts[0].1)?),
                Box::new(parse_descriptor(parts[1].1)?),
            ))
        }
        _ => Err(err(0, format!("unknown ring descriptor '{s}'"))),
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

fn lex(src: &str, base: usize) -> Result<Vec<(usize, Tok)>, SyntaxError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            out.push((base + start, Tok::Num(src[start..i].parse().unwrap())));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_alphabetic() {
                i += 1;
            }
            out.push((base + start, Tok::Ident(src[start..i].to_string())));
        } else if "+-*/^()|".contains(c) {
            out.push((base + i, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(err(base + i, format!("unexpected character '{c}'")));
        }
    }
    Ok(out)
}

/// Ring elements: integer and fraction literals, the generator symbols
/// (`w`, `T`, `t`), `+ - * ^`, parentheses, implicit products such as `2w`,
/// and `(x | y)` pairs in product rings.
pub fn parse_elem(ring: &Ring, src: &str, base: usize) -> Result<Elem, SyntaxError> {
    let toks = lex(src, base)?;
    let mut p = ElemParser {
        ring,
        toks: &toks,
        pos: 0,
        end: base + src.len(),
    };
    let x = p.expr()?;
    if p.pos < toks.len() {
        return Err(err(toks[p.pos].0, "unexpected trailing input in ring element"));
    }
    Ok(x)
}

struct ElemParser<'a> {
    ring: &'a Ring,
    toks: &'a [(usize, Tok)],
    pos: usize,
    end: usize,
}

impl ElemParser<'_> {
    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.0).unwrap_or(self.end)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Elem, SyntaxError> {
        let r = self.ring;
        let mut acc = if self.eat('-') {
            r.neg(&self.term()?)
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = r.add(&acc, &self.term()?);
            } else if self.eat('-') {
                acc = r.sub(&acc, &self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Elem, SyntaxError> {
        let mut acc = self.power()?;
        loop {
            let implicit = matches!(
                self.peek(),
                Some(Tok::Ident(_)) | Some(Tok::Sym('(')) | Some(Tok::Num(_))
            );
            if self.eat('*') || implicit {
                acc = self.ring.mul(&acc, &self.power()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<Elem, SyntaxError> {
        let base = self.primary()?;
        if self.eat('^') {
            let at = self.here();
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let k: u32 = n.try_into().map_err(|_| err(at, "exponent too large"))?;
                    Ok(self.ring.pow(&base, k))
                }
                _ => Err(err(at, "expected a nonnegative integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn primary(&mut self) -> Result<Elem, SyntaxError> {
        let at = self.here();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                if self.eat('/') {
                    let dat = self.here();
                    match self.peek().cloned() {
                        Some(Tok::Num(d)) if !d.is_zero() => {
                            self.pos += 1;
                            rational(self.ring, BigRational::new(n, d), at)
                        }
                        _ => Err(err(dat, "expected a nonzero denominator")),
                    }
                } else {
                    Ok(self.ring.from_int(n))
                }
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                symbol(self.ring, &name)
                    .ok_or_else(|| err(at, format!("'{name}' is not a generator of {}", self.ring.name())))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                if let Some((r1, r2)) = self.ring.components() {
                    let first = ElemParser {
                        ring: &r1,
                        toks: self.toks,
                        pos: self.pos,
                        end: self.end,
                    }
                    .parse_until_bar()?;
                    if let Some((x, next)) = first {
                        self.pos = next;
                        let mut sub = ElemParser {
                            ring: &r2,
                            toks: self.toks,
                            pos: self.pos,
                            end: self.end,
                        };
                        let y = sub.expr()?;
                        self.pos = sub.pos;
                        if !self.eat(')') {
                            return Err(err(self.here(), "expected ')' after pair"));
                        }
                        return Ok(Elem::Pair(Box::new(x), Box::new(y)));
                    }
                }
                let x = self.expr()?;
                if !self.eat(')') {
                    return Err(err(self.here(), "expected ')'"));
                }
                Ok(x)
            }
            Some(_) => Err(err(at, "expected a number, generator or '('")),
            None => Err(err(at, "unexpected end of ring element")),
        }
    }

    /// Parse `x |` in a component ring; `None` if there is no bar.
    fn parse_until_bar(mut self) -> Result<Option<(Elem, usize)>, SyntaxError> {
        let save = self.pos;
        match self.expr() {
            Ok(x) if self.eat('|') => Ok(Some((x, self.pos))),
            _ => {
                self.pos = save;
                Ok(None)
            }
        }
    }
}

fn rational(ring: &Ring, q: BigRational, at: usize) -> Result<Elem, SyntaxError> {
    if q.is_integer() {
        return Ok(ring.from_int(q.to_integer()));
    }
    let x = match ring.desc() {
        RingDescriptor::RationalPoly => Elem::QPoly(vec![q]),
        RingDescriptor::LocalizedIntegers(_) => Elem::Loc(q),
        _ => return Err(err(at, format!("fractions are not elements of {}", ring.name()))),
    };
    ring.check(&x)
        .map_err(|e| SyntaxError::with_code(at, compute_code(&e), e.to_string()))?;
    Ok(x)
}

fn symbol(ring: &Ring, name: &str) -> Option<Elem> {
    match (ring.desc(), name) {
        (RingDescriptor::QuadraticOrder(_), "w") => ring.generator(),
        (RingDescriptor::RationalPoly, "T") => ring.generator(),
        (RingDescriptor::CyclicGroupRing(_), "t") => ring.generator(),
        (RingDescriptor::OrderPoly(_), "w") => Some(ring.opoly_w()),
        (RingDescriptor::OrderPoly(_), "T") => Some(ring.opoly_t()),
        _ => None,
    }
}

fn strip_call<'a>(s: &'a str, name: &str) -> Option<(usize, &'a str)> {
    let rest = s.trim_start().strip_prefix(name)?.trim_start();
    let open = s.len() - rest.len();
    let inner = rest.strip_prefix('(')?.trim_end().strip_suffix(')')?;
    // The closing parenthesis must match the opening one.
    let mut depth = 0;
    for ch in inner.chars() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return None;
                }
            }
            _ => {}
        }
    }
    Some((open + 1, inner))
}

/// `R`, `ideal(g, ...)`, `colon(I, b)`, `meet(I, J)`.
pub fn parse_ideal(ring: &Ring, src: &str, base: usize) -> Result<Ideal, SyntaxError> {
    let trimmed = src.trim();
    let lead = base + (src.len() - src.trim_start().len());
    if trimmed == "R" {
        return Ok(ideals::unit_ideal(ring));
    }
    let lift = |e: ringstar::Error| SyntaxError::with_code(lead, compute_code(&e), e.to_string());
    if let Some((off, inner)) = strip_call(src, "ideal") {
        let gens = if inner.trim().is_empty() {
            Vec::new()
        } else {
            split_top(inner, ',')
                .into_iter()
                .map(|(o, piece)| parse_elem(ring, piece, base + off + o))
                .collect::<Result<Vec<_>, _>>()?
        };
        return ideals::ideal_gen(ring, &gens).map_err(lift);
    }
    for name in ["colon", "meet"] {
        if let Some((off, inner)) = strip_call(src, name) {
            let parts = split_top(inner, ',');
            if parts.len() != 2 {
                return Err(err(base + off, format!("{name} takes two arguments")));
            }
            let i = parse_ideal(ring, parts[0].1, base + off + parts[0].0)?;
            return if name == "colon" {
                let b = parse_elem(ring, parts[1].1, base + off + parts[1].0)?;
                ideals::ideal_colon(ring, &i, &b).map_err(lift)
            } else {
                let j = parse_ideal(ring, parts[1].1, base + off + parts[1].0)?;
                ideals::ideal_intersect(ring, &i, &j).map_err(lift)
            };
        }
    }
    Err(err(lead, "expected R, ideal(...), colon(I, b) or meet(I, J)"))
}

/// `R` or `rep mod IDEAL`.
pub fn parse_coset(ring: &Ring, src: &str, base: usize) -> Result<Coset, SyntaxError> {
    if src.trim() == "R" {
        return Ok(Coset::whole(ring));
    }
    let at = find_mod(src).ok_or_else(|| err(base, "expected 'rep mod ideal' or R"))?;
    let rep = parse_elem(ring, &src[..at], base)?;
    let ideal = parse_ideal(ring, &src[at + 3..], base + at + 3)?;
    Ok(Coset::new(ring, rep, ideal))
}

fn find_mod(s: &str) -> Option<usize> {
    let bytes = s.as_bytes();
    let mut depth = 0;
    for i in 0..bytes.len() {
        match bytes[i] {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'm' if depth == 0 && s[i..].starts_with("mod") => {
                let before = i == 0 || !bytes[i - 1].is_ascii_alphanumeric();
                let after = bytes.get(i + 3).is_none_or(|b| !b.is_ascii_alphanumeric());
                if before && after {
                    return Some(i);
                }
            }
            _ => {}
        }
    }
    None
}

/// `(a,b);(a,b);...` candidate pairs.
pub fn parse_pairs(ring: &Ring, src: &str) -> Result<Vec<(Elem, Elem)>, SyntaxError> {
    let mut out = Vec::new();
    for (off, piece) in split_top(src, ';') {
        if piece.trim().is_empty() {
            continue;
        }
        let inner = piece
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| err(off, "expected (a,b)"))?;
        let start = off + piece.find('(').unwrap() + 1;
        let parts = split_top(inner, ',');
        if parts.len() != 2 {
            return Err(err(start, "expected exactly two entries (a,b)"));
        }
        out.push((
            parse_elem(ring, parts[0].1, start + parts[0].0)?,
            parse_elem(ring, parts[1].1, start + parts[1].0)?,
        ));
    }
    Ok(out)
}
