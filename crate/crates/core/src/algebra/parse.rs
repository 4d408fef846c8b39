//! Group and element specifications.
//!
//! ```text
//! group   := "Z" n ("x" "Z" n)* | "S" n | "perm:" degree ":" cycles ("," cycles)*
//! cycles  := "(" point (sep point)* ")" ...      sep := whitespace | ","
//! element := integer | "(" a "," b ... ")" | cycles | table name
//! ```
//!
//! Parsed groups are limited to [`MAX_PARSED_ORDER`] elements because the
//! multiplication table is materialized.

use thiserror::Error;

use super::{
    cyclic_group, direct_product, perm_group_named, product_index, symmetric_group, AlgebraError,
    Elem, ElementRepr, FiniteGroup, Perm,
};

pub const MAX_PARSED_ORDER: usize = 5040;
pub const MAX_DEGREE: usize = 1024;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("parse error at {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

impl ParseError {
    fn new(pos: usize, msg: impl Into<String>) -> Self {
        ParseError {
            pos,
            msg: msg.into(),
        }
    }
}

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Cursor {
            src: s.as_bytes(),
            pos: 0,
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected '{}'", c as char)))
        }
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn skip_seps(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace() || c == b',') {
            self.pos += 1;
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn number(&mut self) -> Result<usize, ParseError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii digits")
            .parse::<usize>()
            .map_err(|_| ParseError::new(start, "number too large"))
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError::new(self.pos, msg)
    }
}

fn parse_cycle_list(cur: &mut Cursor<'_>, allow_commas_between: bool) -> Result<Vec<Vec<usize>>, ParseError> {
    let mut cycles = Vec::new();
    cur.skip_ws();
    if cur.peek() != Some(b'(') {
        return Err(cur.err("expected '('"));
    }
    while cur.peek() == Some(b'(') {
        cur.pos += 1;
        let mut cycle = Vec::new();
        cur.skip_seps();
        while cur.peek() != Some(b')') {
            if cur.at_end() {
                return Err(cur.err("unterminated cycle"));
            }
            cycle.push(cur.number()?);
            cur.skip_seps();
        }
        cur.expect(b')')?;
        if !cycle.is_empty() {
            cycles.push(cycle);
        }
        if allow_commas_between {
            cur.skip_seps();
        } else {
            cur.skip_ws();
        }
    }
    Ok(cycles)
}

fn cycles_to_perm(degree: usize, cycles: &[Vec<usize>], pos: usize) -> Result<Perm, ParseError> {
    Perm::from_cycles(degree, cycles).map_err(|e| ParseError::new(pos, e.to_string()))
}

/// Parses one permutation in cycle notation, e.g. `(1)(2,3)(4,5)` or
/// `(2 3)(4 5)`. Commas between cycles are tolerated.
pub fn parse_cycles(degree: usize, text: &str) -> Result<Perm, ParseError> {
    if degree == 0 || degree > MAX_DEGREE {
        return Err(ParseError::new(0, format!("degree must be in 1..={MAX_DEGREE}")));
    }
    let mut cur = Cursor::new(text);
    let cycles = parse_cycle_list(&mut cur, true)?;
    cur.skip_ws();
    if !cur.at_end() {
        return Err(cur.err("trailing input"));
    }
    cycles_to_perm(degree, &cycles, 0)
}

pub fn parse_group(spec: &str) -> Result<FiniteGroup, ParseError> {
    let spec = spec.trim();
    let mut cur = Cursor::new(spec);
    if spec.starts_with("perm:") {
        cur.pos = 5;
        let degree = cur.number()?;
        if degree == 0 || degree > MAX_DEGREE {
            return Err(ParseError::new(5, format!("degree must be in 1..={MAX_DEGREE}")));
        }
        cur.expect(b':')?;
        let mut gens = Vec::new();
        loop {
            let start = cur.pos;
            let cycles = parse_cycle_list(&mut cur, false)?;
            gens.push(cycles_to_perm(degree, &cycles, start)?);
            cur.skip_ws();
            if cur.at_end() {
                break;
            }
            cur.expect(b',')?;
            cur.skip_ws();
        }
        return perm_group_named(spec.to_string(), degree, &gens, MAX_PARSED_ORDER)
            .map_err(|e| ParseError::new(0, e.to_string()));
    }
    match cur.peek() {
        Some(b'S') => {
            cur.pos += 1;
            let n = cur.number()?;
            if !cur.at_end() {
                return Err(cur.err("trailing input"));
            }
            if n == 0 || n > 7 {
                return Err(ParseError::new(1, format!("S{n} is out of range")));
            }
            Ok(symmetric_group(n))
        }
        Some(b'Z') => {
            let mut factors = Vec::new();
            let mut total = 1usize;
            loop {
                cur.expect(b'Z')?;
                let at = cur.pos;
                let n = cur.number()?;
                if n == 0 {
                    return Err(ParseError::new(at, "cyclic order must be positive"));
                }
                total = total.saturating_mul(n);
                if total > MAX_PARSED_ORDER {
                    return Err(ParseError::new(at, format!("group order exceeds {MAX_PARSED_ORDER}")));
                }
                factors.push(n);
                if cur.at_end() {
                    break;
                }
                cur.expect(b'x')?;
            }
            let mut g = cyclic_group(factors[0]);
            for &n in &factors[1..] {
                g = direct_product(&g, &cyclic_group(n));
            }
            Ok(g)
        }
        _ => Err(cur.err("expected 'Z', 'S' or 'perm:'")),
    }
}

/// Parses one element of `group`.
pub fn parse_element(group: &FiniteGroup, text: &str) -> Result<Elem, AlgebraError> {
    let text = text.trim();
    let invalid = || AlgebraError::InvalidElement(format!("{text:?} in {}", group.name()));
    match group.repr() {
        ElementRepr::Cyclic(n) => {
            let mut cur = Cursor::new(text);
            let v = cur.number()?;
            if !cur.at_end() {
                return Err(cur.err("trailing input").into());
            }
            if v >= *n {
                return Err(invalid());
            }
            Ok(v)
        }
        ElementRepr::Product(moduli) => {
            let mut cur = Cursor::new(text);
            cur.expect(b'(')?;
            let mut digits = Vec::new();
            loop {
                cur.skip_ws();
                digits.push(cur.number()?);
                cur.skip_ws();
                if cur.eat(b')') {
                    break;
                }
                cur.expect(b',')?;
            }
            if !cur.at_end() {
                return Err(cur.err("trailing input").into());
            }
            if digits.len() != moduli.len() || digits.iter().zip(moduli).any(|(d, m)| d >= m) {
                return Err(invalid());
            }
            Ok(product_index(moduli, &digits))
        }
        ElementRepr::Perm(table) => {
            let p = parse_cycles(table.degree(), text)?;
            table.index_of(&p).ok_or_else(invalid)
        }
        ElementRepr::Table(names) => {
            if let Some(i) = names.iter().position(|n| n == text) {
                return Ok(i);
            }
            match text.parse::<usize>() {
                Ok(i) if i < names.len() => Ok(i),
                _ => Err(invalid()),
            }
        }
    }
}

/// Parses a comma-separated element list; commas inside parentheses do not split.
pub fn parse_elements(group: &FiniteGroup, text: &str) -> Result<Vec<Elem>, AlgebraError> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(parse_element(group, &text[start..i])?);
                start = i + 1;
            }
            _ => {}
        }
        if depth < 0 {
            return Err(ParseError::new(i, "unbalanced ')'").into());
        }
    }
    if depth != 0 {
        return Err(ParseError::new(text.len(), "unbalanced '('").into());
    }
    out.push(parse_element(group, &text[start..])?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_and_products() {
        assert_eq!(parse_group("Z6").unwrap(), cyclic_group(6));
        let g = parse_group("Z4xZ2").unwrap();
        assert_eq!(g, direct_product(&cyclic_group(4), &cyclic_group(2)));
        assert_eq!(parse_element(&g, "(1,1)").unwrap(), 3);
        assert_eq!(parse_elements(&g, "(1,0),(0,1)").unwrap(), vec![2, 1]);
        assert_eq!(g.format_element(3), "(1,1)");
    }

    #[test]
    fn perm_groups() {
        let g = parse_group("perm:5:(1 2 3 4),(2 3)(4 5)").unwrap();
        assert_eq!(g.order(), 20);
        let x = parse_element(&g, "(1 2 3 4)").unwrap();
        assert_eq!(g.element_order(x), 4);
        assert_eq!(parse_element(&g, "(1)(2,3)(4,5)").unwrap(), parse_element(&g, "(2 3)(4 5)").unwrap());
        assert!(parse_element(&g, "(1 2)").is_err());
        assert_eq!(parse_group("S3").unwrap().order(), 6);
        assert_eq!(parse_group("S1").unwrap().order(), 1);
    }

    #[test]
    fn cycles_with_stray_commas() {
        let p = parse_cycles(16, "(1,12)(3,4)(11,14),(2,9)(6,8)(7,13)(5,10)(15,16)").unwrap();
        assert_eq!(p.apply(14), 11);
        assert_eq!(p.apply(16), 15);
        assert_eq!(parse_cycles(5, "(1 2 3 4)").unwrap().apply(5), 5);
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_group("Z6y").unwrap_err();
        assert_eq!(e.pos, 2);
        assert!(parse_group("").is_err());
        assert!(parse_group("Z0").is_err());
        assert!(parse_group("Z100000").is_err());
        assert!(parse_group("S9").is_err());
        assert!(parse_group("perm:3:(1 4)").is_err());
        assert!(parse_cycles(3, "(1 2").is_err());
        assert!(parse_cycles(3, "(1 2))").is_err());
        assert!(parse_element(&cyclic_group(6), "6").is_err());
        assert!(parse_elements(&cyclic_group(6), "1,(").is_err());
    }
}
