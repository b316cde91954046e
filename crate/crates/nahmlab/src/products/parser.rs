//! Recursive-descent parser for the product expression grammar.
//!
//! ```text
//! Expr   := Term (('+'|'-') Term)*
//! Term   := Factor (('*'|'/') Factor)*
//! Factor := Atom ('^' int)? | '(' Expr ')' | rational
//! Atom   := 'J(' int ')' | 'Jam(' int ',' int ')'
//!         | 'P(' sign rational ';' rational ';' (int|'inf') ')'
//!         | 'eta' | 'geta(' int ';' int ')' | 'weber(' ('f'|'f1'|'f2') ')'
//!         | 'theta2' | 'theta3'
//!         | 'dtheta(' rational ',' rational ')' | 'dg(' rational ',' rational ')'
//!         | 'qpow(' rational ')'
//!         | 'nahm(' matrix '|' rationals '|' rational ')' | 'chi0(' rationals ')'
//! ```
//!
//! Whitespace is insignificant. `#` has no meaning here; suite files strip
//! comments before handing lines to this parser.

use super::{PochLen, PochSign, ProductAtom, ProductExpr, WeberKind};
use crate::coeff::big_rat;
use crate::error::ParseError;
use crate::exponent::{exp, Exponent};
use crate::nahm::MatrixSpec;

pub fn parse(text: &str) -> Result<ProductExpr, ParseError> {
    let mut p = Parser::new(text);
    p.skip_ws();
    let e = p.expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            src: text.as_bytes(),
            pos: 0,
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ') | Some(b'\t') | Some(b'\n') | Some(b'\r')) {
            self.pos += 1;
        }
    }

    fn line_col(&self) -> (usize, usize) {
        let mut line = 1;
        let mut col = 1;
        for &c in &self.src[..self.pos.min(self.src.len())] {
            if c == b'\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
        }
        (line, col)
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        let (line, col) = self.line_col();
        ParseError {
            line,
            col,
            msg: msg.into(),
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected '{}'", c as char)))
        }
    }

    fn expr(&mut self) -> Result<ProductExpr, ParseError> {
        let mut acc = self.term()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = ProductExpr::Add(Box::new(acc), Box::new(self.term()?));
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = ProductExpr::Sub(Box::new(acc), Box::new(self.term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<ProductExpr, ParseError> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = ProductExpr::Mul(Box::new(acc), Box::new(self.factor()?));
                }
                Some(b'/') => {
                    self.pos += 1;
                    acc = ProductExpr::Div(Box::new(acc), Box::new(self.factor()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<ProductExpr, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == b'-' => {
                let r = self.rational()?;
                Ok(ProductExpr::Scalar(big_rat(*r.numer(), *r.denom())))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let atom = self.atom()?;
                self.skip_ws();
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    let n = self.integer()?;
                    Ok(ProductExpr::Pow(Box::new(atom), n))
                } else {
                    Ok(atom)
                }
            }
            _ => Err(self.err("expected a factor")),
        }
    }

    fn integer(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        if self.peek() == Some(b'-') {
            self.pos += 1;
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start || (self.pos == start + 1 && self.src[start] == b'-') {
            return Err(self.err("expected an integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("integer out of range"))
    }

    fn rational(&mut self) -> Result<Exponent, ParseError> {
        let n = self.integer()?;
        if self.peek() == Some(b'/') {
            // only treat '/' as a fraction bar when a digit follows directly
            if matches!(self.src.get(self.pos + 1), Some(c) if c.is_ascii_digit()) {
                self.pos += 1;
                let d = self.integer()?;
                if d == 0 {
                    return Err(self.err("zero denominator"));
                }
                return Ok(exp(n, d));
            }
        }
        Ok(exp(n, 1))
    }

    fn ident(&mut self) -> String {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric()) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .to_string()
    }

    fn atom(&mut self) -> Result<ProductExpr, ParseError> {
        let name = self.ident();
        let validated = |p: &Self, a: ProductAtom| -> Result<ProductExpr, ParseError> {
            a.validate().map_err(|e| p.err(e.to_string()))?;
            Ok(ProductExpr::Atom(a))
        };
        match name.as_str() {
            "J" => {
                self.expect(b'(')?;
                let m = self.integer()?;
                self.expect(b')')?;
                validated(self, ProductAtom::J(m))
            }
            "Jam" => {
                self.expect(b'(')?;
                let a = self.integer()?;
                self.expect(b',')?;
                let m = self.integer()?;
                self.expect(b')')?;
                validated(self, ProductAtom::Jam { a, m })
            }
            "P" => {
                self.expect(b'(')?;
                self.skip_ws();
                let sign = match self.bump() {
                    Some(b'+') => PochSign::Plus,
                    Some(b'-') => PochSign::Minus,
                    _ => return Err(self.err("expected '+' or '-' sign in P(...)")),
                };
                let r = self.rational()?;
                self.expect(b';')?;
                let base = self.rational()?;
                self.expect(b';')?;
                self.skip_ws();
                let len = if self.peek().map(|c| c.is_ascii_alphabetic()) == Some(true) {
                    let w = self.ident();
                    if w != "inf" {
                        return Err(self.err(format!("expected 'inf' or an integer, got '{w}'")));
                    }
                    PochLen::Infinite
                } else {
                    let n = self.integer()?;
                    if n < 0 {
                        return Err(self.err("Pochhammer length must be nonnegative"));
                    }
                    PochLen::Finite(n as u32)
                };
                self.expect(b')')?;
                validated(self, ProductAtom::Poch { sign, r, base, len })
            }
            "eta" => Ok(ProductExpr::Atom(ProductAtom::Eta)),
            "geta" => {
                self.expect(b'(')?;
                let delta = self.integer()?;
                self.expect(b';')?;
                let g = self.integer()?;
                self.expect(b')')?;
                validated(self, ProductAtom::GenEta { delta, g })
            }
            "weber" => {
                self.expect(b'(')?;
                self.skip_ws();
                let w = self.ident();
                let kind = match w.as_str() {
                    "f" => WeberKind::F,
                    "f1" => WeberKind::F1,
                    "f2" => WeberKind::F2,
                    other => return Err(self.err(format!("unknown weber function '{other}'"))),
                };
                self.expect(b')')?;
                Ok(ProductExpr::Atom(ProductAtom::Weber(kind)))
            }
            "theta2" => Ok(ProductExpr::Atom(ProductAtom::Theta2)),
            "theta3" => Ok(ProductExpr::Atom(ProductAtom::Theta3)),
            "dtheta" | "dg" => {
                self.expect(b'(')?;
                let j = self.rational()?;
                self.expect(b',')?;
                let k = self.rational()?;
                self.expect(b')')?;
                let a = if name == "dtheta" {
                    ProductAtom::PartialTheta { j, k }
                } else {
                    ProductAtom::PartialG { j, k }
                };
                validated(self, a)
            }
            "qpow" => {
                self.expect(b'(')?;
                let r = self.rational()?;
                self.expect(b')')?;
                Ok(ProductExpr::Atom(ProductAtom::QPow(r)))
            }
            "chi0" => {
                self.expect(b'(')?;
                let shifts = self.rational_list(b')')?;
                Ok(ProductExpr::Chi0(shifts))
            }
            "nahm" => {
                self.expect(b'(')?;
                let mstart = self.pos;
                while !matches!(self.peek(), Some(b'|') | None) {
                    self.pos += 1;
                }
                let mtext = std::str::from_utf8(&self.src[mstart..self.pos]).unwrap();
                let matrix: MatrixSpec = mtext.trim().parse().map_err(|e: String| self.err(e))?;
                self.expect(b'|')?;
                let b = self.rational_list(b'|')?;
                let c = self.rational()?;
                self.expect(b')')?;
                Ok(ProductExpr::Nahm { matrix, b, c })
            }
            "" => Err(self.err("expected an atom")),
            other => Err(self.err(format!("unknown atom '{other}'"))),
        }
    }

    /// Comma-separated rationals up to (and consuming) the closing byte.
    fn rational_list(&mut self, close: u8) -> Result<Vec<Exponent>, ParseError> {
        let mut out = vec![self.rational()?];
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b',') => {
                    self.pos += 1;
                    out.push(self.rational()?);
                }
                Some(c) if c == close => {
                    self.pos += 1;
                    return Ok(out);
                }
                _ => return Err(self.err(format!("expected ',' or '{}'", close as char))),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::products::expand_to_depth;
    use crate::exponent::exp_int;

    #[test]
    fn parses_quotient_of_products() {
        let e = parse("J(4)^5*J(40)/(J(1)*J(2)^2*J(8)^2*Jam(8,40))").unwrap();
        assert_eq!(e.atom_count(), 6);
    }

    #[test]
    fn rejects_bad_parameters_with_position() {
        let err = parse("J(0)").unwrap_err();
        assert!(err.msg.contains("m >= 1"), "{err}");
        let err = parse("J(1").unwrap_err();
        // one past the end of the 3-byte input
        assert_eq!((err.line, err.col), (1, 4));
        assert!(err.to_string().starts_with("syntax error at line 1, column 4"));
        let err = parse("Jam(5,5)").unwrap_err();
        assert!(err.msg.contains("0 < a < m"), "{err}");
    }

    #[test]
    fn self_quotient_is_one() {
        let e = parse("J(1)/J(1)").unwrap();
        let s = expand_to_depth(&e, exp_int(10)).unwrap();
        assert!(s
            .compare(&crate::series::FracSeries::one(exp_int(10)), exp_int(10))
            .unwrap()
            .is_equal());
    }

    #[test]
    fn parses_signed_scalars_and_powers() {
        let e = parse("2*qpow(-1)*J(2) - theta2^2/4").unwrap();
        assert_eq!(e.atom_count(), 3);
        let e = parse("P(-1/2;1;inf)*P(+1;2;3)").unwrap();
        assert_eq!(e.atom_count(), 2);
    }

    #[test]
    fn parses_escapes() {
        let e = parse("chi0(0,0,1/2)").unwrap();
        assert_eq!(e, ProductExpr::Chi0(vec![exp_int(0), exp_int(0), exp(1, 2)]));
        let e = parse("nahm(tadpole:3 | 0,0,1/2 | -7/80)").unwrap();
        match e {
            ProductExpr::Nahm { matrix, b, c } => {
                assert_eq!(matrix, MatrixSpec::Tadpole(3));
                assert_eq!(b.len(), 3);
                assert_eq!(c, exp(-7, 80));
            }
            _ => panic!("expected nahm escape"),
        }
        let e = parse("nahm(2,-1;-1,2 | 1/2,1 | 0)").unwrap();
        assert_eq!(e.atom_count(), 1);
    }
}
