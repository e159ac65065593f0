//! Text syntax for descriptions.
//!
//! ```text
//! dsc     := term ('+' term)* | 'empty'
//! term    := [card '*'] chain | 'A^' card | 'Did' | 'Fam(' nat ',' nat ')'
//! chain   := 'C^' nat | ordinal | 'rev(' ordinal ')' | 'eta' ['+' nat]
//!          | 'X(' ident ')' | '(' chain ')'
//! ordinal := wpart ('+' wpart)* ['+' nat]
//! wpart   := 'w' ['^' nat] ['*' nat]
//! card    := nat | 'aleph' nat | 'alephw'
//! ```
//!
//! Inside an ordinal or `eta + n`, a `+` continues the chain only when it is
//! followed by `w` or by a number that is not a multiplicity (`3*…`).
//! `A^k` is `k` singletons and `Fam(0,b)` is `ℵ_0 · C^b`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::cardinal::Cardinal;
use crate::dsc::{normalize, DscDescription, DscError, Term};
use crate::ordertype::{Declarations, OrderType, OrderTypeError, Ordinal};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyntaxError {
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("unknown declared chain `{0}`")]
    UnknownDeclared(String),
    #[error(transparent)]
    Dsc(#[from] DscError),
    #[error(transparent)]
    OrderType(#[from] OrderTypeError),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    decls: &'a Declarations,
}

impl<'a> Parser<'a> {
    fn error<T>(&self, message: impl Into<String>) -> Result<T, SyntaxError> {
        Err(SyntaxError::Parse { position: self.pos, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn looking_at(&mut self, lit: &str) -> bool {
        self.skip_ws();
        self.src[self.pos..].starts_with(lit.as_bytes())
    }

    fn eat(&mut self, lit: &str) -> bool {
        if self.looking_at(lit) {
            self.pos += lit.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, lit: &str) -> Result<(), SyntaxError> {
        if self.eat(lit) {
            Ok(())
        } else {
            self.error(format!("expected `{lit}`"))
        }
    }

    fn nat(&mut self) -> Result<u64, SyntaxError> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.error("expected a number");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        text.parse().or_else(|_| {
            self.pos = start;
            self.error("number out of range")
        })
    }

    /// A number follows that is not the multiplicity of a term.
    fn bare_nat_ahead(&mut self) -> bool {
        let save = self.pos;
        let ahead = self.peek().is_some_and(|b| b.is_ascii_digit()) && self.nat().is_ok() && self.peek() != Some(b'*');
        self.pos = save;
        ahead
    }

    fn card(&mut self) -> Result<Cardinal, SyntaxError> {
        if self.eat("alephw") {
            return Ok(Cardinal::AlephOmega);
        }
        if self.eat("aleph") {
            let k = self.nat()?;
            return u32::try_from(k).map(Cardinal::Aleph).or_else(|_| self.error("aleph index out of range"));
        }
        Ok(Cardinal::Finite(self.nat()?))
    }

    fn wpart(&mut self) -> Result<Ordinal, SyntaxError> {
        self.expect("w")?;
        let exp = if self.eat("^") { self.nat()? } else { 1 };
        let exp = u32::try_from(exp).or_else(|_| self.error("exponent out of range"))?;
        let coef = if self.eat("*") { self.nat()? } else { 1 };
        Ok(Ordinal::new(vec![(exp, coef)], 0)?)
    }

    fn ordinal(&mut self) -> Result<Ordinal, SyntaxError> {
        let mut acc = self.wpart()?;
        loop {
            let save = self.pos;
            if !self.eat("+") {
                break;
            }
            if self.peek() == Some(b'w') {
                acc = acc.plus(&self.wpart()?);
            } else if self.bare_nat_ahead() {
                acc = acc.plus_finite(self.nat()?);
                break;
            } else {
                self.pos = save;
                break;
            }
        }
        Ok(acc)
    }

    fn ident(&mut self) -> Result<String, SyntaxError> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(|b| b.is_ascii_alphanumeric() || *b == b'_') {
            self.pos += 1;
        }
        if start == self.pos {
            return self.error("expected a chain name");
        }
        Ok(String::from_utf8(self.src[start..self.pos].to_vec()).expect("ascii"))
    }

    fn chain(&mut self) -> Result<OrderType, SyntaxError> {
        if self.eat("C^") {
            return Ok(OrderType::fin(self.nat()?)?);
        }
        if self.eat("rev(") {
            let o = self.ordinal()?;
            self.expect(")")?;
            return Ok(OrderType::Rev(o));
        }
        if self.eat("eta") {
            let save = self.pos;
            if self.eat("+") && self.bare_nat_ahead() {
                return Ok(OrderType::EtaTail(self.nat()?));
            }
            self.pos = save;
            return Ok(OrderType::eta());
        }
        if self.eat("X(") {
            let name = self.ident()?;
            self.expect(")")?;
            return self.decls.get(&name).ok_or(SyntaxError::UnknownDeclared(name));
        }
        if self.eat("(") {
            let c = self.chain()?;
            self.expect(")")?;
            return Ok(c);
        }
        if self.peek() == Some(b'w') {
            return Ok(OrderType::Ord(self.ordinal()?));
        }
        self.error("expected a chain")
    }

    fn term(&mut self) -> Result<Option<Term>, SyntaxError> {
        if self.eat("empty") {
            return Ok(None);
        }
        if self.eat("Did") {
            return Ok(Some(Term::Family { step: 1, start: 1 }));
        }
        if self.eat("Fam(") {
            let step = self.nat()?;
            self.expect(",")?;
            let start = self.nat()?;
            self.expect(")")?;
            return Ok(Some(Term::Family { step, start }));
        }
        if self.eat("A^") {
            return Ok(Some(Term::fin(1, self.card()?)));
        }
        let starts_card = self.peek().is_some_and(|b| b.is_ascii_digit()) || self.looking_at("aleph");
        if starts_card {
            let mult = self.card()?;
            self.expect("*")?;
            return Ok(Some(Term::Class(self.chain()?, mult)));
        }
        Ok(Some(Term::Class(self.chain()?, Cardinal::ONE)))
    }
}

/// Parse a description, resolving `X(name)` against `decls`.
pub fn parse_dsc(input: &str, decls: &Declarations) -> Result<DscDescription, SyntaxError> {
    let mut p = Parser { src: input.as_bytes(), pos: 0, decls };
    let mut terms = Vec::new();
    loop {
        terms.extend(p.term()?);
        if !p.eat("+") {
            break;
        }
    }
    if p.peek().is_some() {
        return p.error("unexpected trailing input");
    }
    Ok(normalize(terms)?)
}

/// Parse a single chain type.
pub fn parse_order_type(input: &str, decls: &Declarations) -> Result<OrderType, SyntaxError> {
    let mut p = Parser { src: input.as_bytes(), pos: 0, decls };
    let t = p.chain()?;
    if p.peek().is_some() {
        return p.error("unexpected trailing input");
    }
    Ok(t)
}

impl FromStr for DscDescription {
    type Err = SyntaxError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_dsc(s, &Declarations::empty())
    }
}

impl fmt::Display for DscDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("empty");
        }
        let mut items: Vec<(Option<Cardinal>, String, bool)> = self
            .classes()
            .iter()
            .map(|c| {
                let grouped = match &c.ty {
                    OrderType::Ord(o) => o.tail() > 0 || o.terms().len() > 1,
                    OrderType::EtaTail(n) => *n > 0,
                    _ => false,
                };
                let mult = (c.mult != Cardinal::ONE).then_some(c.mult);
                (mult, c.ty.to_string(), grouped)
            })
            .collect();
        items.extend(self.families().iter().map(|fam| (None, fam.to_string(), false)));
        // a bare ordinal followed by a term starting with `w` would be read as one ordinal
        for i in 0..items.len().saturating_sub(1) {
            let next_starts_w = items[i + 1].0.is_none() && items[i + 1].1.starts_with('w');
            if next_starts_w && items[i].1.starts_with('w') {
                items[i].2 = true;
            }
        }
        for (i, (mult, text, grouped)) in items.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if let Some(m) = mult {
                write!(f, "{m}*")?;
            }
            if *grouped {
                write!(f, "({text})")?;
            } else {
                f.write_str(text)?;
            }
        }
        Ok(())
    }
}
