//! Parsing of π-terms and statement files.
//!
//! Term grammar (`^pi` binds tighter than juxtaposition):
//!
//! ```text
//! term   := factor factor*          juxtaposition = designated product
//! factor := atom ("^pi")*
//! atom   := "1" | name | name "(" term ("," term)* ")" | "(" term ")"
//! ```
//!
//! Statement files carry one statement per line, preceded by a variable
//! declaration that stays in force until the next one:
//!
//! ```text
//! monad: word              # optional, default `word`
//! vars: x y                # free variables (`x:sort` for sorted ones)
//! eq: x^pi = 1
//! ineq: x <= 1
//! impl: x^pi = 1 => x = 1
//! varalg: path/to/x.alg    # switch to an algebra of variables
//! bound: 3                 # size bound directive for class files
//! ```

use super::{EquationLike, PiTerm, RelKind, StatementBody, VariableObject};
use crate::algebra::{FiniteAlgebra, Signature};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Name(String),
    One,
    LParen,
    RParen,
    Comma,
    Pi,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let bytes: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            ' ' | '\t' => i += 1,
            '(' => {
                out.push((i, Tok::LParen));
                i += 1;
            }
            ')' => {
                out.push((i, Tok::RParen));
                i += 1;
            }
            ',' => {
                out.push((i, Tok::Comma));
                i += 1;
            }
            '^' => {
                if bytes[i + 1..].starts_with(&['p', 'i']) {
                    out.push((i, Tok::Pi));
                    i += 3;
                } else {
                    return Err(Error::parse(1, i + 1, "expected `^pi`"));
                }
            }
            '1' => {
                out.push((i, Tok::One));
                i += 1;
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_alphanumeric() || bytes[i] == '_' || bytes[i] == '\'')
                {
                    i += 1;
                }
                out.push((start, Tok::Name(bytes[start..i].iter().collect())));
            }
            other => {
                return Err(Error::parse(1, i + 1, format!("unexpected character `{other}`")))
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn peek_start(&self) -> Option<usize> {
        self.toks.get(self.pos).map(|(c, _)| *c)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(0, |(c, _)| *c) + 1
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn term(&mut self) -> Result<PiTerm> {
        let mut factors = vec![self.factor()?];
        while matches!(self.peek(), Some(Tok::Name(_) | Tok::One | Tok::LParen)) {
            factors.push(self.factor()?);
        }
        Ok(PiTerm::concat(factors))
    }

    fn factor(&mut self) -> Result<PiTerm> {
        let mut t = self.atom()?;
        while matches!(self.peek(), Some(Tok::Pi)) {
            self.bump();
            t = t.pi();
        }
        Ok(t)
    }

    fn atom(&mut self) -> Result<PiTerm> {
        let col = self.col();
        let start = self.peek_start().unwrap_or(0);
        match self.bump() {
            Some(Tok::One) => Ok(PiTerm::Unit),
            Some(Tok::LParen) => {
                let t = self.term()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(t),
                    _ => Err(Error::parse(1, self.col().max(1), "expected `)`")),
                }
            }
            Some(Tok::Name(name)) => {
                // application only when `(` hugs the name: `pow(x)` applies,
                // `x (y x)` is a product
                let applies = matches!(self.peek(), Some(Tok::LParen))
                    && self.peek_start() == Some(start + name.chars().count());
                if applies {
                    self.bump();
                    let mut args = Vec::new();
                    if !matches!(self.peek(), Some(Tok::RParen)) {
                        args.push(self.term()?);
                        while matches!(self.peek(), Some(Tok::Comma)) {
                            self.bump();
                            args.push(self.term()?);
                        }
                    }
                    match self.bump() {
                        Some(Tok::RParen) => Ok(PiTerm::Apply(name, args)),
                        _ => Err(Error::parse(1, self.col().max(1), "expected `)`")),
                    }
                } else {
                    Ok(PiTerm::Var(name))
                }
            }
            _ => Err(Error::parse(1, col.max(1), "expected a term")),
        }
    }
}

pub fn parse_term(text: &str) -> Result<PiTerm> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(Error::parse(1, 1, "empty term"));
    }
    let mut p = Parser { toks, pos: 0 };
    let t = p.term()?;
    if p.pos != p.toks.len() {
        return Err(Error::parse(1, p.col(), "trailing input after term"));
    }
    Ok(t)
}

/// Parsed statement file.
#[derive(Debug, Clone)]
pub struct Statements {
    pub monad: Option<String>,
    pub bound: Option<usize>,
    pub statements: Vec<EquationLike>,
}

/// Scan for a `key: value` directive without parsing the whole file; used
/// to pick the monad before statements can be resolved against it.
pub fn scan_directive(text: &str, key: &str) -> Option<String> {
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if let Some(rest) = line.strip_prefix(key) {
            if let Some(v) = rest.strip_prefix(':') {
                return Some(v.trim().to_string());
            }
        }
    }
    None
}

fn parse_rel(text: &str, ln: usize) -> Result<(PiTerm, PiTerm, RelKind)> {
    let (l, r, k) = match text.split_once("<=") {
        Some((l, r)) => (l, r, RelKind::Le),
        None => match text.split_once('=') {
            Some((l, r)) => (l, r, RelKind::Eq),
            None => return Err(Error::parse(ln, 1, "expected `=` or `<=`")),
        },
    };
    let reline = |e: Error| match e {
        Error::Parse { col, msg, .. } => Error::Parse { line: ln, col, msg },
        other => other,
    };
    Ok((parse_term(l.trim()).map_err(reline)?, parse_term(r.trim()).map_err(reline)?, k))
}

/// Parse a statement file against a signature. `default_sort` is used for
/// unsorted `vars:` entries; `load` resolves `varalg:` paths to parsed
/// algebras.
pub fn parse_statements(
    text: &str,
    sig: &Signature,
    default_sort: usize,
    load: &dyn Fn(&str) -> Result<FiniteAlgebra>,
) -> Result<Statements> {
    let mut monad = None;
    let mut bound = None;
    let mut vars: Option<VariableObject> = None;
    let mut statements = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("monad:") {
            monad = Some(rest.trim().to_string());
        } else if let Some(rest) = line.strip_prefix("bound:") {
            bound = Some(
                rest.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::parse(ln, 1, "expected a number after `bound:`"))?,
            );
        } else if let Some(rest) = line.strip_prefix("vars:") {
            let mut vs = Vec::new();
            for tok in rest.split_whitespace() {
                let (name, sort) = match tok.split_once(':') {
                    Some((n, s)) => (n.to_string(), sig.sort_index(s).map_err(|e| {
                        Error::parse(ln, 1, e.to_string())
                    })?),
                    None => (tok.to_string(), default_sort),
                };
                vs.push((name, sort));
            }
            if vs.is_empty() {
                return Err(Error::parse(ln, 1, "empty variable declaration"));
            }
            vs.sort();
            vars = Some(VariableObject::FreeVars(vs));
        } else if let Some(rest) = line.strip_prefix("varalg:") {
            let alg = load(rest.trim())?;
            vars = Some(VariableObject::AlgebraVars(alg));
        } else if let Some(rest) = line.strip_prefix("eq:") {
            let (l, r, k) = parse_rel(rest, ln)?;
            if k != RelKind::Eq {
                return Err(Error::parse(ln, 1, "`eq:` takes `=`"));
            }
            let vars = vars
                .clone()
                .ok_or_else(|| Error::parse(ln, 1, "no variables declared"))?;
            statements.push(EquationLike { vars, body: StatementBody::Equation(l, r) });
        } else if let Some(rest) = line.strip_prefix("ineq:") {
            let (l, r, k) = parse_rel(rest, ln)?;
            if k != RelKind::Le {
                return Err(Error::parse(ln, 1, "`ineq:` takes `<=`"));
            }
            let vars = vars
                .clone()
                .ok_or_else(|| Error::parse(ln, 1, "no variables declared"))?;
            statements.push(EquationLike { vars, body: StatementBody::Inequation(l, r) });
        } else if let Some(rest) = line.strip_prefix("impl:") {
            let (pre, conc) = rest
                .split_once("=>")
                .ok_or_else(|| Error::parse(ln, 1, "expected `premises => conclusion`"))?;
            let mut premises = Vec::new();
            for p in pre.split(',') {
                if p.trim().is_empty() {
                    continue;
                }
                premises.push(parse_rel(p, ln)?);
            }
            let conclusion = parse_rel(conc, ln)?;
            let vars = vars
                .clone()
                .ok_or_else(|| Error::parse(ln, 1, "no variables declared"))?;
            statements.push(EquationLike {
                vars,
                body: StatementBody::Implication { premises, conclusion },
            });
        } else {
            return Err(Error::parse(ln, 1, format!("unrecognized line `{line}`")));
        }
    }
    Ok(Statements { monad, bound, statements })
}

/// Render a statement (with its variable declaration) back into file syntax.
pub fn print_statement(e: &EquationLike) -> String {
    let vars = match &e.vars {
        VariableObject::FreeVars(vs) => {
            let names: Vec<&str> = vs.iter().map(|(n, _)| n.as_str()).collect();
            format!("vars: {}", names.join(" "))
        }
        VariableObject::AlgebraVars(_) => "varalg: <inline>".to_string(),
    };
    format!("{vars}\n{e}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar_cases() {
        // x (y x)^pi: π-power over a parenthesized product
        let t = parse_term("x (y x)^pi").unwrap();
        assert_eq!(
            t,
            PiTerm::Concat(vec![
                PiTerm::var("x"),
                PiTerm::Concat(vec![PiTerm::var("y"), PiTerm::var("x")]).pi(),
            ])
        );
        assert_eq!(parse_term("1").unwrap(), PiTerm::Unit);
        assert_eq!(
            parse_term("pow(x)").unwrap(),
            PiTerm::Apply("pow".into(), vec![PiTerm::var("x")])
        );
    }

    #[test]
    fn pi_binds_tighter_than_juxtaposition() {
        assert_eq!(
            parse_term("x y^pi").unwrap(),
            PiTerm::Concat(vec![PiTerm::var("x"), PiTerm::var("y").pi()])
        );
    }

    #[test]
    fn print_then_parse_is_identity() {
        for src in [
            "x (y x)^pi",
            "x^pi x",
            "pow(x y)",
            "mix(s, pow(t s))",
            "1",
            "x^pi^pi",
            "1^pi x",
        ] {
            let t = parse_term(src).unwrap();
            let printed = t.to_string();
            assert_eq!(parse_term(&printed).unwrap(), t, "through {printed}");
        }
    }

    #[test]
    fn errors_carry_positions() {
        match parse_term("x &") {
            Err(Error::Parse { col, .. }) => assert_eq!(col, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(parse_term("").is_err());
        assert!(parse_term("x^2").is_err());
    }
}
