//! Text format for multiplication tables.
//!
//! ```text
//! document := header line*
//! header   := "algebra" NAME "dim" INT ["mod" INT]
//! line     := "e" INT "*" "e" INT "=" term ("+" term)*
//! term     := [SIGN] [RATIONAL] "e" INT
//! RATIONAL := INT | INT "/" INT
//! ```
//!
//! Whitespace between tokens is ignored, `#` starts a comment, unlisted
//! products are zero. The optional `mod` clause declares a finite-field
//! table whose coefficients are residues. Serialization is canonical
//! (products sorted by index pair, coefficients in lowest terms), and
//! parsing a serialized document reproduces the algebra exactly.

use crate::algebra::Algebra;
use crate::field::{Field, Q, Scalar};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// A parse failure with 1-based line and column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.col, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(line: usize, col: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        col,
        message: message.into(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Word(String),
    Basis(usize),
    Int(BigInt),
    Star,
    Eq,
    Plus,
    Minus,
    Slash,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    col: usize,
}

fn tokenize_line(text: &str, line_no: usize) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c == '#' {
            break; // comment to end of line
        }
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        match c {
            '*' => out.push(Spanned { tok: Tok::Star, col }),
            '=' => out.push(Spanned { tok: Tok::Eq, col }),
            '+' => out.push(Spanned { tok: Tok::Plus, col }),
            '-' => out.push(Spanned { tok: Tok::Minus, col }),
            '/' => out.push(Spanned { tok: Tok::Slash, col }),
            d if d.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push(Spanned {
                    tok: Tok::Int(s.parse().expect("digits")),
                    col,
                });
                continue;
            }
            a if a.is_alphanumeric() || a == '_' || a == '(' => {
                // a word: basis vector `e<digits>` or a bare name token
                let start = i;
                while i < chars.len()
                    && !chars[i].is_whitespace()
                    && !"*=+-/#".contains(chars[i])
                {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                let tok = if let Some(rest) = s.strip_prefix('e') {
                    if !rest.is_empty() && rest.chars().all(|c| c.is_ascii_digit()) {
                        Tok::Basis(rest.parse().expect("digits"))
                    } else {
                        Tok::Word(s)
                    }
                } else {
                    Tok::Word(s)
                };
                out.push(Spanned { tok, col });
                continue;
            }
            other => return err(line_no, col, format!("unexpected character '{other}'")),
        }
        i += 1;
    }
    Ok(out)
}

struct LineParser {
    toks: Vec<Spanned>,
    pos: usize,
    line: usize,
}

impl LineParser {
    fn new(toks: Vec<Spanned>, line: usize) -> Self {
        LineParser { toks, pos: 0, line }
    }

    fn peek(&self) -> Option<&Spanned> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Spanned> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn end_col(&self) -> usize {
        self.toks.last().map_or(1, |t| t.col + 1)
    }

    fn expect_basis(&mut self, what: &str) -> Result<(usize, usize), ParseError> {
        match self.next() {
            Some(Spanned { tok: Tok::Basis(i), col, .. }) => Ok((i, col)),
            Some(sp) => err(self.line, sp.col, format!("expected {what}, found {:?}", sp.tok)),
            None => err(self.line, self.end_col(), format!("expected {what}")),
        }
    }

    fn expect_tok(&mut self, want: Tok, what: &str) -> Result<(), ParseError> {
        match self.next() {
            Some(sp) if sp.tok == want => Ok(()),
            Some(sp) => err(self.line, sp.col, format!("expected {what}, found {:?}", sp.tok)),
            None => err(self.line, self.end_col(), format!("expected {what}")),
        }
    }

    /// term := [SIGN] [RATIONAL] "e" INT
    fn parse_term(&mut self) -> Result<(usize, Q, usize), ParseError> {
        let mut negative = false;
        if let Some(sp) = self.peek() {
            match sp.tok {
                Tok::Minus => {
                    negative = true;
                    self.pos += 1;
                }
                Tok::Plus => {
                    self.pos += 1;
                }
                _ => {}
            }
        }
        let mut coeff = Q::one();
        if let Some(Spanned { tok: Tok::Int(_), .. }) = self.peek() {
            let Some(Spanned { tok: Tok::Int(num), .. }) = self.next() else {
                unreachable!()
            };
            let mut den = BigInt::one();
            if let Some(Spanned { tok: Tok::Slash, .. }) = self.peek() {
                self.pos += 1;
                match self.next() {
                    Some(Spanned { tok: Tok::Int(d), col: dcol, .. }) => {
                        if d.is_zero() {
                            return err(self.line, dcol, "zero denominator");
                        }
                        den = d;
                    }
                    Some(sp) => {
                        return err(self.line, sp.col, "expected denominator after '/'")
                    }
                    None => return err(self.line, self.end_col(), "expected denominator"),
                }
            }
            coeff = Q::new(num, den);
        }
        if negative {
            coeff = -coeff;
        }
        let (k, col) = self.expect_basis("basis vector")?;
        Ok((k, coeff, col))
    }
}

/// Whitespace-delimited fields of a line with their 1-based start columns,
/// comments stripped. Used for the header, whose NAME field is a free-form
/// token (it may contain parentheses, signs, slashes from instantiated
/// parameter values).
fn header_fields(raw: &str) -> Vec<(usize, String)> {
    let mut out = Vec::new();
    let mut current = String::new();
    let mut start = 0usize;
    for (idx, c) in raw.chars().enumerate() {
        if c == '#' {
            break;
        }
        if c.is_whitespace() {
            if !current.is_empty() {
                out.push((start + 1, std::mem::take(&mut current)));
            }
        } else {
            if current.is_empty() {
                start = idx;
            }
            current.push(c);
        }
    }
    if !current.is_empty() {
        out.push((start + 1, current));
    }
    out
}

/// Parse a document into an algebra.
pub fn parse_algebra(text: &str) -> Result<Algebra, ParseError> {
    let mut header: Option<(usize, Vec<(usize, String)>)> = None;
    let mut lines = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        if header.is_none() {
            let fields = header_fields(raw);
            if !fields.is_empty() {
                header = Some((idx + 1, fields));
            }
            continue;
        }
        let toks = tokenize_line(raw, idx + 1)?;
        if !toks.is_empty() {
            lines.push((idx + 1, toks));
        }
    }
    let Some((hline, fields)) = header else {
        return err(1, 1, "empty document: expected an 'algebra' header");
    };
    let hline = &hline;
    let field_at = |i: usize| fields.get(i);
    match field_at(0) {
        Some((_, w)) if w == "algebra" => {}
        Some((col, _)) => return err(*hline, *col, "expected keyword 'algebra'"),
        None => return err(*hline, 1, "expected keyword 'algebra'"),
    }
    let name = match field_at(1) {
        Some((_, w)) => w.clone(),
        None => return err(*hline, 1, "expected algebra name"),
    };
    match field_at(2) {
        Some((_, w)) if w == "dim" => {}
        Some((col, _)) => return err(*hline, *col, "expected keyword 'dim'"),
        None => return err(*hline, 1, "expected keyword 'dim'"),
    }
    let dim = match field_at(3) {
        Some((col, w)) => match w.parse::<usize>() {
            Ok(d) if (1..=16).contains(&d) => d,
            _ => return err(*hline, *col, "dimension must be between 1 and 16"),
        },
        None => return err(*hline, 1, "expected dimension"),
    };
    let mut modulus: Option<u64> = None;
    match field_at(4) {
        None => {}
        Some((col, w)) if w == "mod" => match field_at(5) {
            Some((pcol, p)) => match p.parse::<u64>() {
                Ok(p) if p >= 2 => modulus = Some(p),
                _ => return err(*hline, *pcol, "modulus must be a prime >= 2"),
            },
            None => return err(*hline, *col, "expected modulus after 'mod'"),
        },
        Some((col, _)) => return err(*hline, *col, "unexpected token after dimension"),
    }
    if modulus.is_some() && fields.len() > 6 || modulus.is_none() && fields.len() > 4 {
        return err(*hline, 1, "unexpected trailing tokens in header");
    }

    let field = modulus.map_or(Field::Rational, Field::Fp);
    let mut algebra = Algebra::zero_algebra(dim, field).with_name(name);
    let mut seen: Vec<(usize, usize)> = Vec::new();

    for (line_no, toks) in lines.iter() {
        let mut lp = LineParser::new(toks.clone(), *line_no);
        let (i, icol) = lp.expect_basis("a product line 'e<i> * e<j> = ...'")?;
        if i == 0 || i > dim {
            return err(*line_no, icol, format!("basis index e{i} out of range 1..={dim}"));
        }
        lp.expect_tok(Tok::Star, "'*'")?;
        let (j, jcol) = lp.expect_basis("basis vector")?;
        if j == 0 || j > dim {
            return err(*line_no, jcol, format!("basis index e{j} out of range 1..={dim}"));
        }
        lp.expect_tok(Tok::Eq, "'='")?;
        if seen.contains(&(i, j)) {
            return err(*line_no, icol, format!("duplicate product line for e{i}*e{j}"));
        }
        seen.push((i, j));
        loop {
            let (k, coeff, kcol) = lp.parse_term()?;
            if k == 0 || k > dim {
                return err(*line_no, kcol, format!("basis index e{k} out of range 1..={dim}"));
            }
            let scalar = match field {
                Field::Rational => Scalar::Rational(coeff),
                Field::Fp(p) => {
                    let s = Scalar::Rational(coeff);
                    match s.reduce_mod_p(p) {
                        Some(v) => v,
                        None => {
                            return err(*line_no, kcol, format!("coefficient not reducible mod {p}"))
                        }
                    }
                }
            };
            let cur = algebra.c(i - 1, j - 1, k - 1).add(&scalar);
            *algebra.c_mut(i - 1, j - 1, k - 1) = cur;
            match lp.peek() {
                None => break,
                Some(Spanned { tok: Tok::Plus, .. }) => {
                    lp.pos += 1;
                    // allow "+ -2 e5": parse_term handles the sign itself,
                    // so nothing else to do here
                }
                Some(Spanned { tok: Tok::Minus, .. }) => {
                    // "... - 2 e5": leave the sign for parse_term
                }
                Some(sp) => {
                    return err(*line_no, sp.col, "expected '+' or end of line after a term")
                }
            }
        }
    }
    Ok(algebra.with_generator(0))
}

/// Render `|coefficient| e_k`, with the unit coefficient left implicit.
fn render_term_body(s: &Scalar, k: usize) -> String {
    match s {
        Scalar::Rational(v) => {
            let a = v.abs();
            if a.is_one() {
                format!("e{}", k + 1)
            } else {
                format!("{a} e{}", k + 1)
            }
        }
        Scalar::Fp { value, .. } => {
            if *value == 1 {
                format!("e{}", k + 1)
            } else {
                format!("{value} e{}", k + 1)
            }
        }
    }
}

fn scalar_is_negative(s: &Scalar) -> bool {
    match s {
        Scalar::Rational(v) => v.is_negative(),
        Scalar::Fp { .. } => false,
    }
}

/// Canonical serialization: header, then one line per nonzero product in
/// row-major order, negative coefficients rendered with `-`.
pub fn serialize_algebra(a: &Algebra) -> String {
    let mut out = String::new();
    let name = a.name().unwrap_or("A");
    match a.field() {
        Field::Rational => out.push_str(&format!("algebra {name} dim {}\n", a.dim())),
        Field::Fp(p) => out.push_str(&format!("algebra {name} dim {} mod {p}\n", a.dim())),
    }
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            let prod = a.basis_product(i, j);
            if prod.iter().all(Scalar::is_zero) {
                continue;
            }
            let mut rhs = String::new();
            for (k, c) in prod.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let body = render_term_body(c, k);
                if rhs.is_empty() {
                    if scalar_is_negative(c) {
                        rhs.push('-');
                    }
                    rhs.push_str(&body);
                } else if scalar_is_negative(c) {
                    rhs.push_str(&format!(" - {body}"));
                } else {
                    rhs.push_str(&format!(" + {body}"));
                }
            }
            out.push_str(&format!("e{}*e{} = {rhs}\n", i + 1, j + 1));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{q, qr};

    #[test]
    fn parse_minimal_table() {
        let a = parse_algebra("algebra X dim 2\ne1*e1 = e2").unwrap();
        assert_eq!(a.dim(), 2);
        assert_eq!(a.name(), Some("X"));
        assert_eq!(a.c(0, 0, 1), &Scalar::Rational(q(1)));
        assert!(a.c(0, 0, 0).is_zero());
    }

    #[test]
    fn header_only_is_the_zero_algebra() {
        let a = parse_algebra("algebra Z dim 3").unwrap();
        assert_eq!(a.dim(), 3);
        for i in 0..3 {
            for j in 0..3 {
                assert!(a.basis_product(i, j).iter().all(Scalar::is_zero));
            }
        }
    }

    #[test]
    fn coefficients_signs_and_fractions() {
        let a = parse_algebra("algebra Y dim 6\ne1*e3 = -2 e5 + 1/2 e6").unwrap();
        assert_eq!(a.c(0, 2, 4), &Scalar::Rational(q(-2)));
        assert_eq!(a.c(0, 2, 5), &Scalar::Rational(qr(1, 2)));
        // minus as a separator also works
        let b = parse_algebra("algebra Y dim 6\ne1*e3 = e5 - 2 e6").unwrap();
        assert_eq!(b.c(0, 2, 4), &Scalar::Rational(q(1)));
        assert_eq!(b.c(0, 2, 5), &Scalar::Rational(q(-2)));
        // whitespace insensitivity
        let c = parse_algebra("algebra Y dim 6\ne1 * e3=-2e5+1/2 e6").unwrap();
        assert_eq!(c.c(0, 2, 4), &Scalar::Rational(q(-2)));
        assert_eq!(c.c(0, 2, 5), &Scalar::Rational(qr(1, 2)));
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "algebra C dim 2  # header comment\n\n# full comment line\ne1*e1 = e2 # trailing\n";
        let a = parse_algebra(text).unwrap();
        assert_eq!(a.c(0, 0, 1), &Scalar::Rational(q(1)));
    }

    #[test]
    fn error_positions() {
        // bad keyword
        let e = parse_algebra("algbra X dim 2").unwrap_err();
        assert_eq!((e.line, e.col), (1, 1));
        // missing '='
        let e = parse_algebra("algebra X dim 2\ne1*e1 e2").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.message.contains("'='"));
        // index out of range
        let e = parse_algebra("algebra X dim 2\ne1*e1 = e3").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.message.contains("out of range"));
        // duplicate product line
        let e = parse_algebra("algebra X dim 2\ne1*e1 = e2\ne1*e1 = e2").unwrap_err();
        assert_eq!(e.line, 3);
        assert!(e.message.contains("duplicate"));
        // non-rational coefficient
        let e = parse_algebra("algebra X dim 2\ne1*e1 = 0.5 e2").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.message.contains("unexpected character"));
        // zero denominator
        let e = parse_algebra("algebra X dim 2\ne1*e1 = 1/0 e2").unwrap_err();
        assert!(e.message.contains("zero denominator"));
    }

    #[test]
    fn finite_field_header() {
        let a = parse_algebra("algebra M dim 2 mod 5\ne1*e1 = 7 e2").unwrap();
        assert_eq!(a.field(), Field::Fp(5));
        assert_eq!(a.c(0, 0, 1), &Scalar::Fp { value: 2, p: 5 });
        let text = serialize_algebra(&a);
        assert!(text.starts_with("algebra M dim 2 mod 5"));
        let b = parse_algebra(&text).unwrap();
        assert_eq!(a.c(0, 0, 1), b.c(0, 0, 1));
    }

    #[test]
    fn serialize_then_parse_is_identity() {
        let text = "algebra T dim 4\ne1*e1 = e2\ne1*e2 = 3/2 e3 + -1 e4\ne2*e1 = -e3\n";
        let a = parse_algebra(text).unwrap();
        let canon = serialize_algebra(&a);
        let b = parse_algebra(&canon).unwrap();
        assert_eq!(serialize_algebra(&b), canon);
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(a.basis_product(i, j), b.basis_product(i, j));
            }
        }
        // canonical rendering uses "-" for negatives and keeps fractions exact
        assert!(canon.contains("e1*e2 = 3/2 e3 - e4"));
        assert!(canon.contains("e2*e1 = -e3"));
    }
}
