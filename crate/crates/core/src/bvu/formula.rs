//! Bounded-quantifier formulas and their parser.
//!
//! ```text
//! formula := quant | impl
//! quant   := ("forall" | "exists") IDENT "in" term ":" formula
//! impl    := disj ("->" disj)*          right-associative
//! disj    := conj ("|" conj)*
//! conj    := neg ("&" neg)*
//! neg     := "!" neg | atom
//! atom    := term ("=" | "in") term | "(" formula ")"
//! term    := IDENT
//! ```

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Eq(String, String),
    Mem(String, String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    /// Not produced by the parser; available to programmatic callers.
    Iff(Box<Formula>, Box<Formula>),
    Forall {
        var: String,
        bound: String,
        body: Box<Formula>,
    },
    Exists {
        var: String,
        bound: String,
        body: Box<Formula>,
    },
}

impl Formula {
    pub fn eq(a: &str, b: &str) -> Self {
        Formula::Eq(a.into(), b.into())
    }

    pub fn mem(a: &str, b: &str) -> Self {
        Formula::Mem(a.into(), b.into())
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Self {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    pub fn forall(var: &str, bound: &str, body: Formula) -> Self {
        Formula::Forall {
            var: var.into(),
            bound: bound.into(),
            body: Box::new(body),
        }
    }

    pub fn exists(var: &str, bound: &str, body: Formula) -> Self {
        Formula::Exists {
            var: var.into(),
            bound: bound.into(),
            body: Box::new(body),
        }
    }

    /// Names used but not bound by an enclosing quantifier, in first-use
    /// order.
    pub fn free_names(&self) -> Vec<String> {
        fn go(f: &Formula, bound: &mut Vec<String>, out: &mut Vec<String>) {
            let mut use_name = |n: &String, bound: &Vec<String>| {
                if !bound.contains(n) && !out.contains(n) {
                    out.push(n.clone());
                }
            };
            match f {
                Formula::Eq(a, b) | Formula::Mem(a, b) => {
                    use_name(a, bound);
                    use_name(b, bound);
                }
                Formula::Not(g) => go(g, bound, out),
                Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                    go(a, bound, out);
                    go(b, bound, out);
                }
                Formula::Forall { var, bound: t, body } | Formula::Exists { var, bound: t, body } => {
                    use_name(t, bound);
                    bound.push(var.clone());
                    go(body, bound, out);
                    bound.pop();
                }
            }
        }
        let mut out = Vec::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }
}

/// Prints in the parser's concrete syntax; binary connectives are always
/// parenthesized so the output re-parses to the same tree.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Eq(a, b) => write!(f, "{a} = {b}"),
            Formula::Mem(a, b) => write!(f, "{a} in {b}"),
            Formula::Not(g) => match **g {
                Formula::Eq(..) | Formula::Mem(..) | Formula::Not(_) => write!(f, "!{g}"),
                _ => write!(f, "!({g})"),
            },
            Formula::And(a, b) => write!(f, "({a}) & ({b})"),
            Formula::Or(a, b) => write!(f, "({a}) | ({b})"),
            Formula::Implies(a, b) => write!(f, "({a}) -> ({b})"),
            Formula::Iff(a, b) => write!(f, "(({a}) -> ({b})) & (({b}) -> ({a}))"),
            Formula::Forall { var, bound, body } => write!(f, "forall {var} in {bound} : {body}"),
            Formula::Exists { var, bound, body } => write!(f, "exists {var} in {bound} : {body}"),
        }
    }
}

impl std::ops::Not for Formula {
    type Output = Formula;

    fn not(self) -> Formula {
        Formula::Not(Box::new(self))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Forall,
    Exists,
    In,
    Colon,
    Eq,
    Arrow,
    Bar,
    Amp,
    Bang,
    LParen,
    RParen,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "identifier {s:?}"),
            Tok::Forall => f.write_str("\"forall\""),
            Tok::Exists => f.write_str("\"exists\""),
            Tok::In => f.write_str("\"in\""),
            Tok::Colon => f.write_str("\":\""),
            Tok::Eq => f.write_str("\"=\""),
            Tok::Arrow => f.write_str("\"->\""),
            Tok::Bar => f.write_str("\"|\""),
            Tok::Amp => f.write_str("\"&\""),
            Tok::Bang => f.write_str("\"!\""),
            Tok::LParen => f.write_str("\"(\""),
            Tok::RParen => f.write_str("\")\""),
            Tok::End => f.write_str("end of input"),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b':' => Tok::Colon,
            b'=' => Tok::Eq,
            b'|' => Tok::Bar,
            b'&' => Tok::Amp,
            b'!' => Tok::Bang,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 1;
                Tok::Arrow
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i + 1 < bytes.len() && (bytes[i + 1].is_ascii_alphanumeric() || bytes[i + 1] == b'_') {
                    i += 1;
                }
                match &src[start..=i] {
                    "forall" => Tok::Forall,
                    "exists" => Tok::Exists,
                    "in" => Tok::In,
                    word => Tok::Ident(word.to_string()),
                }
            }
            _ => {
                let ch = src[start..].chars().next().unwrap_or('?');
                return Err(ParseError {
                    position: start,
                    message: format!("unexpected character {ch:?}"),
                });
            }
        };
        i += 1;
        out.push((tok, start));
    }
    out.push((Tok::End, src.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &str) -> ParseError {
        ParseError {
            position: self.offset(),
            message: format!("expected {expected}, found {}", self.peek()),
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(what))
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            _ => Err(self.error("identifier")),
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Tok::Forall | Tok::Exists => {
                let universal = self.bump() == Tok::Forall;
                let var = self.ident()?;
                self.expect(Tok::In, "\"in\"")?;
                let bound = self.ident()?;
                self.expect(Tok::Colon, "\":\"")?;
                let body = Box::new(self.formula()?);
                Ok(if universal {
                    Formula::Forall { var, bound, body }
                } else {
                    Formula::Exists { var, bound, body }
                })
            }
            _ => self.implication(),
        }
    }

    fn implication(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disjunction()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.implication()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.conjunction()?;
        while *self.peek() == Tok::Bar {
            self.bump();
            f = Formula::or(f, self.conjunction()?);
        }
        Ok(f)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.negation()?;
        while *self.peek() == Tok::Amp {
            self.bump();
            f = Formula::and(f, self.negation()?);
        }
        Ok(f)
    }

    fn negation(&mut self) -> Result<Formula, ParseError> {
        if *self.peek() == Tok::Bang {
            self.bump();
            return Ok(!self.negation()?);
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen, "\")\"")?;
                Ok(f)
            }
            Tok::Ident(_) => {
                let lhs = self.ident()?;
                match self.peek() {
                    Tok::Eq => {
                        self.bump();
                        Ok(Formula::Eq(lhs, self.ident()?))
                    }
                    Tok::In => {
                        self.bump();
                        Ok(Formula::Mem(lhs, self.ident()?))
                    }
                    _ => Err(self.error("\"=\" or \"in\"")),
                }
            }
            _ => Err(self.error("a term or \"(\"")),
        }
    }
}

pub fn parse_formula(src: &str) -> Result<Formula, ParseError> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
    };
    let f = p.formula()?;
    if *p.peek() != Tok::End {
        return Err(p.error("end of input"));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_quantifiers_and_atoms() {
        let f = parse_formula("forall t in one : t = empty").unwrap();
        assert_eq!(f, Formula::forall("t", "one", Formula::eq("t", "empty")));
        let g = parse_formula("!(zero = one)").unwrap();
        assert_eq!(g, !Formula::eq("zero", "one"));
    }

    #[test]
    fn precedence_and_associativity() {
        let f = parse_formula("a in b & b in c | !a = c -> x = y -> y = z").unwrap();
        let lhs = Formula::or(
            Formula::and(Formula::mem("a", "b"), Formula::mem("b", "c")),
            !Formula::eq("a", "c"),
        );
        let rhs = Formula::implies(Formula::eq("x", "y"), Formula::eq("y", "z"));
        assert_eq!(f, Formula::implies(lhs, rhs));
    }

    #[test]
    fn quantifier_body_extends_to_the_right() {
        let f = parse_formula("exists x in s : x in t & t = t").unwrap();
        assert_eq!(
            f,
            Formula::exists("x", "s", Formula::and(Formula::mem("x", "t"), Formula::eq("t", "t")))
        );
        // a quantifier must be parenthesized inside a connective
        assert!(parse_formula("a = a & forall x in s : x = x").is_err());
        assert!(parse_formula("a = a & (forall x in s : x = x)").is_ok());
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_formula("forall x one : x = x").unwrap_err();
        assert_eq!(e.position, 9);
        let e = parse_formula("a = ").unwrap_err();
        assert_eq!(e.position, 4);
        let e = parse_formula("a = b)").unwrap_err();
        assert_eq!(e.position, 5);
        let e = parse_formula("a # b").unwrap_err();
        assert_eq!(e.position, 2);
        let e = parse_formula("in = b").unwrap_err();
        assert_eq!(e.position, 0);
    }

    #[test]
    fn free_names_skip_bound_variables() {
        let f = parse_formula("forall t in two : exists s in t : s in one").unwrap();
        assert_eq!(f.free_names(), vec!["two".to_string(), "one".to_string()]);
    }

    fn arb_name() -> impl Strategy<Value = String> {
        prop::sample::select(vec!["a", "b", "x", "one", "t_1"]).prop_map(String::from)
    }

    fn arb_formula() -> impl Strategy<Value = Formula> {
        let leaf = prop_oneof![
            (arb_name(), arb_name()).prop_map(|(a, b)| Formula::Eq(a, b)),
            (arb_name(), arb_name()).prop_map(|(a, b)| Formula::Mem(a, b)),
        ];
        leaf.prop_recursive(4, 24, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(|f| !f),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
                (arb_name(), arb_name(), inner.clone()).prop_map(|(v, t, b)| Formula::forall(&v, &t, b)),
                (arb_name(), arb_name(), inner).prop_map(|(v, t, b)| Formula::exists(&v, &t, b)),
            ]
        })
    }

    proptest! {
        #[test]
        fn display_reparses_to_same_tree(f in arb_formula()) {
            prop_assert_eq!(parse_formula(&f.to_string()).unwrap(), f);
        }
    }
}
