//! Text formats used on the command line: group specs (`Z6`, `Z2xZ4`,
//! `SD(5,4,2)`), representation specs (`reg(Z3)`, `ind(SD(3,2,2))`),
//! sequence literals, generator lists and integer polynomial relations.
//!
//! Parse errors carry a byte offset into the input.

use std::fmt;

use num_bigint::BigInt;

use crate::cyclotomic::{CyclotomicNumber, Rational};
use crate::error::{Error, Result};
use crate::group::{AbelianGroup, SemidirectGroup};
use crate::invariant::{induced_module, regular_representation, MonomialRep};
use crate::poly::{Monomial, MultiPoly};
use crate::sequence::Sequence;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Abelian(AbelianGroup),
    Semidirect(SemidirectGroup),
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Abelian(g) => write!(f, "{g}"),
            GroupSpec::Semidirect(g) => write!(f, "{g}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RepSpec {
    Regular(AbelianGroup),
    Induced(SemidirectGroup),
}

impl RepSpec {
    pub fn build(&self) -> Result<MonomialRep> {
        match self {
            RepSpec::Regular(g) => regular_representation(g),
            RepSpec::Induced(g) => induced_module(g),
        }
    }
}

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Cursor {
            s: s.as_bytes(),
            pos: 0,
        }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::parse(self.pos, msg)
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn at_end(&self) -> bool {
        self.pos >= self.s.len()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected '{}'", c as char)))
        }
    }

    fn expect_str(&mut self, lit: &str) -> Result<()> {
        if self.s[self.pos..].starts_with(lit.as_bytes()) {
            self.pos += lit.len();
            Ok(())
        } else {
            Err(self.err(format!("expected '{lit}'")))
        }
    }

    fn number(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| Error::parse(start, "number too large"))
    }

    fn ident(&mut self) -> Result<&'a str> {
        let start = self.pos;
        while self
            .peek()
            .is_some_and(|c| c.is_ascii_alphanumeric() || c == b'_')
        {
            self.pos += 1;
        }
        if start == self.pos || self.s[start].is_ascii_digit() {
            self.pos = start;
            return Err(self.err("expected a name"));
        }
        Ok(std::str::from_utf8(&self.s[start..self.pos]).expect("ascii"))
    }

    fn finish(&mut self) -> Result<()> {
        self.skip_ws();
        if self.at_end() {
            Ok(())
        } else {
            Err(self.err("unexpected trailing input"))
        }
    }
}

fn group_in(c: &mut Cursor) -> Result<GroupSpec> {
    if c.s[c.pos..].starts_with(b"SD") {
        let sd = semidirect_in(c)?;
        return Ok(GroupSpec::Semidirect(sd));
    }
    let mut orders = Vec::new();
    loop {
        let at = c.pos;
        c.expect(b'Z')?;
        let n = c.number()?;
        if n == 0 {
            return Err(Error::parse(at, "cyclic factor of order 0"));
        }
        orders.push(n);
        if !c.eat(b'x') {
            break;
        }
    }
    Ok(GroupSpec::Abelian(AbelianGroup::from_cyclic_product(
        &orders,
    )?))
}

fn semidirect_in(c: &mut Cursor) -> Result<SemidirectGroup> {
    c.expect_str("SD(")?;
    let p = c.number()?;
    c.expect(b',')?;
    let d = c.number()?;
    c.expect(b',')?;
    let e = c.number()?;
    c.expect(b')')?;
    SemidirectGroup::new(p, d, e)
}

/// `Z<n>`, `Z<a>xZ<b>x...` (normalized to invariant factors) or `SD(p,d,e)`.
pub fn parse_groupspec(text: &str) -> Result<GroupSpec> {
    let mut c = Cursor::new(text);
    let g = group_in(&mut c)?;
    c.finish()?;
    Ok(g)
}

pub fn parse_abelian(text: &str) -> Result<AbelianGroup> {
    match parse_groupspec(text)? {
        GroupSpec::Abelian(g) => Ok(g),
        GroupSpec::Semidirect(_) => Err(Error::Domain(format!("{text} is not abelian"))),
    }
}

pub fn parse_semidirect(text: &str) -> Result<SemidirectGroup> {
    match parse_groupspec(text)? {
        GroupSpec::Semidirect(g) => Ok(g),
        GroupSpec::Abelian(_) => Err(Error::Domain(format!(
            "{text} is not of the form SD(p,d,e)"
        ))),
    }
}

/// `reg(<abelian groupspec>)` or `ind(SD(p,d,e))`.
pub fn parse_repspec(text: &str) -> Result<RepSpec> {
    let mut c = Cursor::new(text);
    let kind = c.ident()?;
    c.expect(b'(')?;
    let at = c.pos;
    let spec = match (kind, group_in(&mut c)?) {
        ("reg", GroupSpec::Abelian(g)) => RepSpec::Regular(g),
        ("ind", GroupSpec::Semidirect(g)) => RepSpec::Induced(g),
        ("reg", _) => return Err(Error::parse(at, "reg(...) needs an abelian group")),
        ("ind", _) => return Err(Error::parse(at, "ind(...) needs SD(p,d,e)")),
        _ => {
            return Err(Error::parse(
                0,
                "representation must be reg(...) or ind(...)",
            ))
        }
    };
    c.expect(b')')?;
    c.finish()?;
    Ok(spec)
}

/// `[1,1,2]` over a cyclic group, `[(1,0),(0,1)]` over higher rank.
pub fn parse_sequence(group: &AbelianGroup, text: &str) -> Result<Sequence> {
    let mut c = Cursor::new(text);
    c.skip_ws();
    c.expect(b'[')?;
    let mut seq = Sequence::empty(group);
    c.skip_ws();
    if c.eat(b']') {
        c.finish()?;
        return Ok(seq);
    }
    loop {
        c.skip_ws();
        let at = c.pos;
        let coords = if c.eat(b'(') {
            let mut v = Vec::new();
            loop {
                c.skip_ws();
                v.push(c.number()?);
                c.skip_ws();
                if c.eat(b')') {
                    break;
                }
                c.expect(b',')?;
            }
            v
        } else {
            vec![c.number()?]
        };
        // the trivial group has rank 0; its only element is written 0
        let coords = if group.rank() == 0 && coords == [0] {
            vec![]
        } else {
            coords
        };
        let x = group
            .element(&coords)
            .map_err(|e| Error::parse(at, format!("{e}")))?;
        seq.push(&x)?;
        c.skip_ws();
        if c.eat(b']') {
            break;
        }
        c.expect(b',')?;
    }
    c.finish()?;
    Ok(seq)
}

/// Comma-separated non-negative integers, e.g. `1,3`.
pub fn parse_int_list(text: &str) -> Result<Vec<u64>> {
    let mut c = Cursor::new(text);
    let mut out = Vec::new();
    loop {
        c.skip_ws();
        out.push(c.number()?);
        c.skip_ws();
        if c.at_end() {
            return Ok(out);
        }
        c.expect(b',')?;
    }
}

/// `a:1,b:3` into names and positive degrees.
pub fn parse_generators(text: &str) -> Result<(Vec<String>, Vec<u32>)> {
    let mut c = Cursor::new(text);
    let (mut names, mut degs) = (Vec::new(), Vec::new());
    loop {
        c.skip_ws();
        let at = c.pos;
        let name = c.ident()?.to_string();
        if names.contains(&name) {
            return Err(Error::parse(at, format!("generator {name} declared twice")));
        }
        c.skip_ws();
        c.expect(b':')?;
        c.skip_ws();
        let at = c.pos;
        let d = c.number()?;
        if d == 0 || d > u32::MAX as u64 {
            return Err(Error::parse(at, "degree must be a positive integer"));
        }
        names.push(name);
        degs.push(d as u32);
        c.skip_ws();
        if c.at_end() {
            return Ok((names, degs));
        }
        c.expect(b',')?;
    }
}

/// One integer-coefficient polynomial in the named variables, e.g.
/// `a*b^2 - 3*a^7`. Coefficients are rational (conductor 1).
pub fn parse_polynomial(names: &[String], text: &str) -> Result<MultiPoly> {
    let mut c = Cursor::new(text);
    let p = poly_in(&mut c, names)?;
    c.finish()?;
    Ok(p)
}

fn poly_in(c: &mut Cursor, names: &[String]) -> Result<MultiPoly> {
    let n = names.len();
    let mut out = MultiPoly::zero(n, 1);
    let mut first = true;
    loop {
        c.skip_ws();
        let neg = if c.eat(b'-') {
            true
        } else {
            if !c.eat(b'+') && !first {
                return Ok(out);
            }
            false
        };
        first = false;
        c.skip_ws();
        let mut coeff = BigInt::from(if neg { -1 } else { 1 });
        let mut exps = vec![0u32; n];
        loop {
            c.skip_ws();
            if c.peek().is_some_and(|b| b.is_ascii_digit()) {
                coeff *= BigInt::from(c.number()?);
            } else {
                let at = c.pos;
                let name = c.ident()?;
                let i = names
                    .iter()
                    .position(|x| x == name)
                    .ok_or_else(|| Error::parse(at, format!("unknown generator {name}")))?;
                c.skip_ws();
                let e = if c.eat(b'^') {
                    c.skip_ws();
                    c.number()? as u32
                } else {
                    1
                };
                exps[i] += e;
            }
            c.skip_ws();
            if !c.eat(b'*') {
                break;
            }
        }
        let term = MultiPoly::term(
            Monomial::new(exps),
            CyclotomicNumber::from_rational(1, Rational::from_integer(coeff)),
        );
        out = out.add(&term)?;
        c.skip_ws();
        if c.at_end() || c.peek() == Some(b',') {
            return Ok(out);
        }
    }
}

/// Comma-separated list of polynomials.
pub fn parse_relations(names: &[String], text: &str) -> Result<Vec<MultiPoly>> {
    let mut c = Cursor::new(text);
    let mut out = Vec::new();
    c.skip_ws();
    if c.at_end() {
        return Ok(out);
    }
    loop {
        out.push(poly_in(&mut c, names)?);
        c.skip_ws();
        if c.at_end() {
            return Ok(out);
        }
        c.expect(b',')?;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn groupspecs() {
        assert_eq!(parse_abelian("Z6").unwrap().factors(), &[6]);
        assert_eq!(parse_abelian("Z2xZ6").unwrap().factors(), &[2, 6]);
        assert_eq!(parse_abelian("Z6xZ2").unwrap().factors(), &[2, 6]);
        assert_eq!(parse_abelian("Z2xZ3").unwrap().factors(), &[6]);
        assert!(parse_abelian("Z1").unwrap().is_trivial());
        let sd = parse_semidirect("SD(3,2,2)").unwrap();
        assert_eq!(sd.order(), 6);
    }

    #[test]
    fn groupspec_errors() {
        assert!(matches!(
            parse_groupspec("Z"),
            Err(Error::Parse { pos: 1, .. })
        ));
        assert!(matches!(
            parse_groupspec("Z2y"),
            Err(Error::Parse { pos: 2, .. })
        ));
        assert!(matches!(
            parse_groupspec("Z2xQ3"),
            Err(Error::Parse { pos: 3, .. })
        ));
        assert!(matches!(
            parse_groupspec("SD(3,2"),
            Err(Error::Parse { pos: 6, .. })
        ));
        assert!(matches!(
            parse_groupspec("SD(4,2,3)"),
            Err(Error::Validation(_))
        ));
        assert!(matches!(
            parse_groupspec("Z0"),
            Err(Error::Parse { pos: 0, .. })
        ));
    }

    #[test]
    fn repspecs() {
        assert_eq!(
            parse_repspec("reg(Z3)").unwrap(),
            RepSpec::Regular(AbelianGroup::cyclic(3).unwrap())
        );
        assert!(matches!(
            parse_repspec("ind(SD(3,2,2))").unwrap(),
            RepSpec::Induced(_)
        ));
        assert!(parse_repspec("ind(Z3)").is_err());
        assert!(parse_repspec("reg(Z3").is_err());
    }

    #[test]
    fn sequences() {
        let z4 = AbelianGroup::cyclic(4).unwrap();
        assert_eq!(
            parse_sequence(&z4, "[1,1,2]").unwrap().to_string(),
            "[1,1,2]"
        );
        assert!(parse_sequence(&z4, "[]").unwrap().is_empty());
        assert!(matches!(
            parse_sequence(&z4, "[1,5]"),
            Err(Error::Parse { pos: 3, .. })
        ));
        let v = AbelianGroup::new(vec![2, 2]).unwrap();
        assert_eq!(parse_sequence(&v, "[(1,0), (0,1)]").unwrap().len(), 2);
        assert!(parse_sequence(&v, "[1]").is_err());
        assert_eq!(
            parse_sequence(&AbelianGroup::trivial(), "[0,0]")
                .unwrap()
                .len(),
            2
        );
    }

    #[test]
    fn polynomials() {
        let (names, degs) = parse_generators("a:1,b:3").unwrap();
        assert_eq!(degs, vec![1, 3]);
        let rels = parse_relations(&names, "b^3-a^9, a*b^2-a^7").unwrap();
        assert_eq!(rels.len(), 2);
        assert_eq!(rels[0].display_with(&names), "-a^9 + b^3");
        assert_eq!(rels[1].display_with(&names), "-a^7 + a*b^2");
        let p = parse_polynomial(&names, "2*a*a - 3*b^0 + a^2").unwrap();
        assert_eq!(p.display_with(&names), "3*a^2 - 3");
        assert!(matches!(
            parse_polynomial(&names, "a + c"),
            Err(Error::Parse { pos: 4, .. })
        ));
        assert!(parse_generators("a:0").is_err());
        assert!(parse_generators("a:1,a:2").is_err());
    }
}
