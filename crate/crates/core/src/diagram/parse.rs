//! Parser for the diagram language.
//!
//! ```text
//! expr      := term (('+'|'-') term)*
//! term      := [coeff '*'] atom+ [orderspec]
//! coeff     := rational | rational? 't' ('^' int)?
//! atom      := NAME '^{' vars '}' '_{' vars '}' | NAME '_{' vars '}'
//!            | NAME '^{' vars '}' | 'id^' var '_' var
//! orderspec := '[' vars ';' vars ']'
//! ```
//!
//! Braces may be dropped around a single variable. An unbraced superscript
//! variable stops at `_`, so `id^x_y` reads as input `x`, output `y`.
//! Factors may be separated by `*` or by spaces, and a term may consist of
//! a coefficient alone (`2`, `t^3`).

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::diagram::molecule::{Atom, AtomKind, Molecule};
use crate::diagram::Signature;
use crate::error::{Error, Result};
use crate::scalar::Rat;

/// One summand of a parsed expression.
#[derive(Clone, Debug, PartialEq)]
pub struct ParsedTerm {
    pub coeff: Rat,
    /// Power of `t` in the coefficient.
    pub t_power: usize,
    pub molecule: Molecule,
    /// Explicit `[inputs; outputs]`, if given.
    pub order: Option<(Vec<String>, Vec<String>)>,
    /// Byte offset of the term in the source.
    pub pos: usize,
}

impl ParsedTerm {
    /// The explicit ordering, or the free variables in lexicographic order.
    pub fn ordering(&self) -> (Vec<String>, Vec<String>) {
        self.order.clone().unwrap_or_else(|| (self.molecule.input_vars(), self.molecule.output_vars()))
    }
}

pub fn parse_expr(src: &str, sig: &Signature) -> Result<Vec<ParsedTerm>> {
    let mut p = Parser { src, pos: 0 };
    let mut terms = Vec::new();
    p.ws();
    if p.eof() {
        return Err(Error::parse(0, "empty expression"));
    }
    let mut negate = false;
    if p.eat('-') {
        negate = true;
    } else {
        p.eat('+');
    }
    loop {
        let mut term = p.term(sig)?;
        if negate {
            term.coeff = -term.coeff;
        }
        terms.push(term);
        p.ws();
        if p.eof() {
            break;
        }
        negate = if p.eat('+') {
            false
        } else if p.eat('-') {
            true
        } else {
            return Err(p.error(format!("unexpected `{}`", p.peek().unwrap())));
        };
    }
    Ok(terms)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn eof(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += self.peek().unwrap().len_utf8();
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`")))
        }
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        Error::parse(self.pos, msg)
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> &str {
        let start = self.pos;
        while self.peek().is_some_and(&f) {
            self.pos += self.peek().unwrap().len_utf8();
        }
        &self.src[start..self.pos]
    }

    fn integer(&mut self) -> Result<BigInt> {
        let digits = self.take_while(|c| c.is_ascii_digit());
        if digits.is_empty() {
            return Err(self.error("expected a number"));
        }
        Ok(digits.parse().unwrap())
    }

    fn term(&mut self, sig: &Signature) -> Result<ParsedTerm> {
        self.ws();
        let start = self.pos;
        let mut coeff = Rat::one();
        let mut t_power = 0;
        let mut atoms = Vec::new();
        let mut atom_pos = Vec::new();
        let mut order = None;
        let mut factors = 0;
        loop {
            self.ws();
            if factors > 0 && self.eat('*') {
                self.ws();
            }
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let num = self.integer()?;
                    let value = if self.eat('/') {
                        let den = self.integer()?;
                        if den.is_zero() {
                            return Err(self.error("zero denominator"));
                        }
                        Rat::new(num, den)
                    } else {
                        Rat::from_integer(num)
                    };
                    coeff *= value;
                }
                Some(c) if c.is_ascii_alphabetic() => {
                    let at = self.pos;
                    let name = self.take_while(|c| c.is_ascii_alphanumeric()).to_string();
                    if name == "t" {
                        t_power += if self.eat('^') { self.small_int()? } else { 1 };
                    } else {
                        atoms.push(self.atom(name, sig).map_err(|e| e.at(at))?);
                        atom_pos.push(at);
                    }
                }
                Some('[') => {
                    order = Some(self.orderspec()?);
                    factors += 1;
                    break;
                }
                _ => break,
            }
            factors += 1;
        }
        if factors == 0 {
            return Err(self.error("expected a term"));
        }
        let molecule = Molecule::new(atoms.clone(), sig).map_err(|e| {
            // point at the first atom involved
            let culprit = atoms.iter().position(|a| atom_mentions(a, &e)).unwrap_or(0);
            e.at(atom_pos.get(culprit).copied().unwrap_or(start))
        })?;
        Ok(ParsedTerm { coeff, t_power, molecule, order, pos: start })
    }

    fn small_int(&mut self) -> Result<usize> {
        let at = self.pos;
        let n = self.integer()?;
        n.try_into().map_err(|_| Error::parse(at, "exponent too large"))
    }

    fn atom(&mut self, name: String, sig: &Signature) -> Result<Atom> {
        if name == "id" {
            self.expect('^')?;
            let x = self.vars(true)?;
            self.expect('_')?;
            let y = self.vars(false)?;
            if x.len() != 1 || y.len() != 1 {
                return Err(Error::Invalid("an identity atom has one input and one output".into()));
            }
            return Ok(Atom { kind: AtomKind::Id, inputs: x, outputs: y });
        }
        sig.arity(&name)?;
        let inputs = if self.eat('^') { self.vars(true)? } else { Vec::new() };
        let outputs = if self.eat('_') { self.vars(false)? } else { Vec::new() };
        let atom = Atom { kind: AtomKind::Gen(name), inputs, outputs };
        atom.check(sig)?;
        Ok(atom)
    }

    /// `{x,y}` or a single bare variable.
    fn vars(&mut self, superscript: bool) -> Result<Vec<String>> {
        if self.eat('{') {
            let mut out = Vec::new();
            self.ws();
            if self.eat('}') {
                return Ok(out);
            }
            loop {
                self.ws();
                out.push(self.var(true)?);
                self.ws();
                if self.eat('}') {
                    return Ok(out);
                }
                self.expect(',')?;
            }
        }
        Ok(vec![self.var(!superscript)?])
    }

    fn var(&mut self, allow_underscore: bool) -> Result<String> {
        if !self.peek().is_some_and(|c| c.is_ascii_alphabetic()) {
            return Err(self.error("expected a variable name"));
        }
        Ok(self.take_while(|c| c.is_ascii_alphanumeric() || (allow_underscore && c == '_')).to_string())
    }

    fn orderspec(&mut self) -> Result<(Vec<String>, Vec<String>)> {
        self.expect('[')?;
        let ins = self.var_list(';')?;
        let outs = self.var_list(']')?;
        Ok((ins, outs))
    }

    fn var_list(&mut self, end: char) -> Result<Vec<String>> {
        let mut out = Vec::new();
        self.ws();
        if self.eat(end) {
            return Ok(out);
        }
        loop {
            self.ws();
            out.push(self.var(true)?);
            self.ws();
            if self.eat(end) {
                return Ok(out);
            }
            self.expect(',')?;
        }
    }
}

fn atom_mentions(a: &Atom, e: &Error) -> bool {
    let v = match e {
        Error::InputUsedTwice(v) => v,
        Error::OutputUsedTwice(v) => v,
        _ => return false,
    };
    a.inputs.contains(v) || a.outputs.contains(v)
}
