//! Noncommutative polynomial expressions over named generators.
//!
//! Grammar: sums and differences of products; a product is a sequence of factors separated by
//! `*` or whitespace; a factor is a rational literal, `i`, `r2` (the square root of 2), a
//! generator name or a parenthesized expression. Generator names are matched longest first,
//! so `x1*x2*` reads as `x1* x2*` when those are the names.

use nqh_core::exactlin::{parse_rational, Scalar, TensorElement, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError(pub String);

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ParseError {}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    names: Vec<(usize, &'a str)>,
}

impl<'a> Parser<'a> {
    fn err(&self, what: &str) -> ParseError {
        ParseError(format!("{what} at offset {} in {:?}", self.pos, self.src))
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn expr(&mut self) -> Result<TensorElement, ParseError> {
        let mut acc = TensorElement::zero();
        self.skip_ws();
        let mut sign = Scalar::one();
        if let Some(c @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            if c == '-' {
                sign = Scalar::int(-1);
            }
        }
        loop {
            let t = self.product()?;
            acc = acc.add(&t.scale(&sign));
            self.skip_ws();
            match self.peek() {
                Some('+') => sign = Scalar::one(),
                Some('-') => sign = Scalar::int(-1),
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn product(&mut self) -> Result<TensorElement, ParseError> {
        let mut acc = self.factor()?;
        loop {
            let save = self.pos;
            self.skip_ws();
            if self.peek() == Some('*') {
                self.pos += 1;
                self.skip_ws();
            }
            match self.peek() {
                Some(c) if c == '(' || c.is_alphanumeric() => acc = acc.mul(&self.factor()?),
                _ => {
                    self.pos = save;
                    return Ok(acc);
                }
            }
        }
    }

    fn factor(&mut self) -> Result<TensorElement, ParseError> {
        self.skip_ws();
        if self.peek() == Some('(') {
            self.pos += 1;
            let e = self.expr()?;
            self.skip_ws();
            if self.peek() != Some(')') {
                return Err(self.err("expected ')'"));
            }
            self.pos += 1;
            return Ok(e);
        }
        let rest = self.rest();
        if let Some(&(g, name)) = self.names.iter().find(|(_, n)| rest.starts_with(n)) {
            self.pos += name.len();
            return Ok(TensorElement::word(Word::letter(g)));
        }
        if rest.starts_with(|c: char| c.is_ascii_digit()) {
            let len = rest.find(|c: char| !(c.is_ascii_digit() || c == '/')).unwrap_or(rest.len());
            let q = parse_rational(&rest[..len]).map_err(|_| self.err("bad rational literal"))?;
            self.pos += len;
            return Ok(TensorElement::scalar(Scalar::from_rational(q)));
        }
        for (tok, val) in [("r2", Scalar::r2()), ("i", Scalar::i())] {
            if rest.starts_with(tok) && !rest[tok.len()..].starts_with(|c: char| c.is_alphanumeric() || c == '_') {
                self.pos += tok.len();
                return Ok(TensorElement::scalar(val));
            }
        }
        Err(self.err("expected a factor"))
    }
}

/// Parses `src` over the generators `names`.
pub fn parse_element(src: &str, names: &[String]) -> Result<TensorElement, ParseError> {
    let mut sorted: Vec<(usize, &str)> = names.iter().enumerate().map(|(k, n)| (k, n.as_str())).collect();
    sorted.sort_by(|a, b| b.1.len().cmp(&a.1.len()).then(a.0.cmp(&b.0)));
    let mut p = Parser { src, pos: 0, names: sorted };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

/// Splits `(a, b)` at its top-level comma.
pub fn split_pair(src: &str) -> Result<(&str, &str), ParseError> {
    let bad = || ParseError(format!("expected a pair (a, b), found {src:?}"));
    let inner = src.trim().strip_prefix('(').and_then(|s| s.strip_suffix(')')).ok_or_else(bad)?;
    let mut depth = 0i32;
    for (k, c) in inner.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => return Ok((inner[..k].trim(), inner[k + 1..].trim())),
            _ => {}
        }
    }
    Err(bad())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn w(v: &[usize]) -> TensorElement {
        TensorElement::word(Word(v.to_vec()))
    }

    #[test]
    fn starred_names_split_longest_first() {
        let n = names(&["x1*", "x2*"]);
        let e = parse_element("1 - x1*x2*", &n).unwrap();
        assert_eq!(e, TensorElement::scalar(Scalar::one()).sub(&w(&[0, 1])));
    }

    #[test]
    fn star_as_product_separator() {
        let n = names(&["x1", "x2"]);
        assert_eq!(parse_element("x1*x2 + x2 x1", &n).unwrap(), w(&[0, 1]).add(&w(&[1, 0])));
        let h = Scalar::r2().scale(&nqh_core::exactlin::rat(1, 2));
        assert_eq!(parse_element("1/2*r2*x1", &n).unwrap(), w(&[0]).scale(&h));
    }

    #[test]
    fn parentheses_and_units() {
        let n = names(&["x1*", "x2*"]);
        let e = parse_element("i*(1 + x1*x2*) - (x1* + x2*)", &n).unwrap();
        let one = TensorElement::scalar(Scalar::one());
        let expected = one.add(&w(&[0, 1])).scale(&Scalar::i()).sub(&w(&[0]).add(&w(&[1])));
        assert_eq!(e, expected);
    }

    #[test]
    fn rejects_junk() {
        let n = names(&["x1", "x2"]);
        assert!(parse_element("x3", &n).is_err());
        assert!(parse_element("x1 +", &n).is_err());
        assert!(parse_element("(x1", &n).is_err());
        assert!(parse_element("x1 )", &n).is_err());
    }

    #[test]
    fn pairs() {
        assert_eq!(split_pair("(1 - x1*x2*, 0)").unwrap(), ("1 - x1*x2*", "0"));
        assert_eq!(split_pair("((a, b), c)").unwrap(), ("(a, b)", "c"));
        assert!(split_pair("a, b").is_err());
    }
}
