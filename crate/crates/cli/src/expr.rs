//! Parser for Leavitt path algebra expressions.
//!
//! ```text
//! expr    := [+|-] term { (+|-) term }
//! term    := factor { factor }            juxtaposition multiplies
//! factor  := primary { * }                * is the involution
//! primary := number | name | ( expr )
//! number  := digits [ / digits ]
//! ```
//!
//! Names are vertex or edge identifiers made of letters, digits, `_`, `.`
//! and `'`, not starting with a digit. `e*` is the ghost edge of `e`.

use gradecheck_core::graph::Graph;
use gradecheck_core::lpa::{multiply, LpaElement, Monomial};
use gradecheck_core::ring::{parse_rational, Ring, Q};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Num(String),
    Name(String),
    Plus,
    Minus,
    Star,
    Open,
    Close,
}

fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '.' || c == '\''
}

fn tokenize(s: &str) -> Result<Vec<(usize, Token)>, String> {
    let chars: Vec<(usize, char)> = s.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '+' => {
                out.push((pos, Token::Plus));
                i += 1;
            }
            '-' => {
                out.push((pos, Token::Minus));
                i += 1;
            }
            '*' => {
                out.push((pos, Token::Star));
                i += 1;
            }
            '(' => {
                out.push((pos, Token::Open));
                i += 1;
            }
            ')' => {
                out.push((pos, Token::Close));
                i += 1;
            }
            c if c.is_ascii_digit() => {
                let mut j = i;
                while j < chars.len() && (chars[j].1.is_ascii_digit() || chars[j].1 == '/') {
                    j += 1;
                }
                let text: String = chars[i..j].iter().map(|p| p.1).collect();
                if j < chars.len() && is_name_char(chars[j].1) {
                    return Err(format!("column {}: names cannot start with a digit", pos + 1));
                }
                out.push((pos, Token::Num(text)));
                i = j;
            }
            c if is_name_char(c) => {
                let mut j = i;
                while j < chars.len() && is_name_char(chars[j].1) {
                    j += 1;
                }
                out.push((pos, Token::Name(chars[i..j].iter().map(|p| p.1).collect())));
                i = j;
            }
            c => return Err(format!("column {}: unexpected character `{c}`", pos + 1)),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    g: &'a Graph,
    tokens: Vec<(usize, Token)>,
    at: usize,
    len: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.at).map(|t| &t.1)
    }

    fn column(&self) -> usize {
        self.tokens.get(self.at).map_or(self.len, |t| t.0) + 1
    }

    fn err<T>(&self, msg: &str) -> Result<T, String> {
        Err(format!("column {}: {msg}", self.column()))
    }

    fn expr(&mut self) -> Result<LpaElement<Q>, String> {
        let mut acc = LpaElement::zero(self.g);
        let mut sign = match self.peek() {
            Some(Token::Minus) => {
                self.at += 1;
                -1
            }
            Some(Token::Plus) => {
                self.at += 1;
                1
            }
            _ => 1,
        };
        loop {
            let t = self.term()?;
            let t = if sign < 0 { t.neg() } else { t };
            acc = acc.add(&t).map_err(|e| e.to_string())?;
            sign = match self.peek() {
                Some(Token::Plus) => 1,
                Some(Token::Minus) => -1,
                _ => return Ok(acc),
            };
            self.at += 1;
        }
    }

    fn term(&mut self) -> Result<LpaElement<Q>, String> {
        let mut acc = self.factor()?;
        while matches!(self.peek(), Some(Token::Num(_) | Token::Name(_) | Token::Open)) {
            let f = self.factor()?;
            acc = multiply(self.g, &acc, &f).map_err(|e| e.to_string())?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<LpaElement<Q>, String> {
        let mut p = self.primary()?;
        while self.peek() == Some(&Token::Star) {
            self.at += 1;
            p = p.star();
        }
        Ok(p)
    }

    fn primary(&mut self) -> Result<LpaElement<Q>, String> {
        let g = self.g;
        match self.peek().cloned() {
            Some(Token::Num(n)) => {
                let Some(c) = parse_rational(&n) else { return self.err(&format!("bad number `{n}`")) };
                self.at += 1;
                // a scalar is c times the sum of all vertices
                let mut s = LpaElement::zero(g);
                for v in g.vertices() {
                    s = s.add(&LpaElement::term(g, c.clone(), Monomial::vertex(v))).map_err(|e| e.to_string())?;
                }
                Ok(s)
            }
            Some(Token::Name(name)) => {
                let v = g.vertex_index(&name);
                let e = g.edge_index(&name);
                let m = match (v, e) {
                    (Some(_), Some(_)) => return self.err(&format!("`{name}` names both a vertex and an edge")),
                    (Some(v), None) => Monomial::vertex(v),
                    (None, Some(e)) => Monomial::edge(g, e),
                    (None, None) => return self.err(&format!("unknown vertex or edge `{name}`")),
                };
                self.at += 1;
                Ok(LpaElement::term(g, Q::one(), m))
            }
            Some(Token::Open) => {
                self.at += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Token::Close) {
                    return self.err("expected `)`");
                }
                self.at += 1;
                Ok(inner)
            }
            _ => self.err("expected a number, a name or `(`"),
        }
    }
}

/// Parses and multiplies out `s` over ℚ. The result is in (CK1) normal form
/// but not reduced by (CK2).
pub fn parse_expression(g: &Graph, s: &str) -> Result<LpaElement<Q>, String> {
    let tokens = tokenize(s)?;
    if tokens.is_empty() {
        return Err(String::from("column 1: empty expression"));
    }
    let mut p = Parser { g, tokens, at: 0, len: s.len() };
    let v = p.expr()?;
    if p.at != p.tokens.len() {
        return p.err("unexpected input");
    }
    Ok(v)
}
