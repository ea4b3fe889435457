//! Reader for `.dgb` problem files and single polynomials.
//!
//! ```text
//! ring { shifts: 3; symbols: u,v,p; parameters: H;
//!        order: block(shifts=degrevlex[s1>s2>s3], symbols=lex[u>v>p]); }
//! ideal { u(1,0,0)+v(0,1,0)-u(0,0,0)-v(0,0,0); }
//! symmetric { perm: (1 2 3 4); gens { x(0)*x(2)-x(1)^2; } }
//! ```
//! `#` starts a comment that runs to the end of the line.

use num_bigint::BigInt;

use crate::coeff::FieldElement;
use crate::error::{Error, Result};
use crate::ordering::{OrderKind, OrderingSpec, VectorOrder};
use crate::quotient::PermutationAction;
use crate::ring::{Monomial, Poly, Ring, RingSignature, Var};
use crate::shift::Shift;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Punct(char),
    Eof,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l, col) = (line, column);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
            c
        };
        if c.is_whitespace() {
            bump(&mut chars);
        } else if c == '#' {
            while chars.peek().is_some_and(|&c| c != '\n') {
                bump(&mut chars);
            }
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while chars.peek().is_some_and(char::is_ascii_digit) {
                s.push(bump(&mut chars).unwrap());
            }
            out.push(Token {
                tok: Tok::Int(s.parse().expect("digits")),
                line: l,
                column: col,
            });
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while chars.peek().is_some_and(|&c| c.is_ascii_alphanumeric() || c == '_') {
                s.push(bump(&mut chars).unwrap());
            }
            out.push(Token {
                tok: Tok::Ident(s),
                line: l,
                column: col,
            });
        } else if "{}()[];:,=>+-*/^".contains(c) {
            bump(&mut chars);
            out.push(Token {
                tok: Tok::Punct(c),
                line: l,
                column: col,
            });
        } else {
            return Err(Error::Parse {
                line: l,
                column: col,
                message: format!("unexpected character `{c}`"),
            });
        }
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        column,
    });
    Ok(out)
}

/// A parsed problem file.
#[derive(Clone, Debug)]
pub struct ProblemFile {
    pub ring: Ring,
    pub ideal: Vec<Poly>,
    pub symmetric: Option<SymmetricBlock>,
}

#[derive(Clone, Debug)]
pub struct SymmetricBlock {
    pub action: PermutationAction,
    pub generators: Vec<Poly>,
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self> {
        Ok(Parser { toks: lex(text)?, pos: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn next(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err_at(&self, pos: usize, message: impl Into<String>) -> Error {
        let t = &self.toks[pos];
        Error::Parse {
            line: t.line,
            column: t.column,
            message: message.into(),
        }
    }

    fn err(&self, message: impl Into<String>) -> Error {
        self.err_at(self.pos, message)
    }

    fn describe(t: &Tok) -> String {
        match t {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(n) => format!("`{n}`"),
            Tok::Punct(c) => format!("`{c}`"),
            Tok::Eof => "end of input".into(),
        }
    }

    fn is_punct(&self, c: char) -> bool {
        *self.peek() == Tok::Punct(c)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.is_punct(c) {
            self.next();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected `{c}`, found {}", Self::describe(self.peek()))))
        }
    }

    fn ident(&mut self) -> Result<String> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.next();
                Ok(s)
            }
            t => Err(self.err(format!("expected a name, found {}", Self::describe(&t)))),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<()> {
        match self.peek() {
            Tok::Ident(s) if s == kw => {
                self.next();
                Ok(())
            }
            t => Err(self.err(format!("expected `{kw}`, found {}", Self::describe(t)))),
        }
    }

    fn small_int(&mut self, what: &str) -> Result<u32> {
        if self.is_punct('-') {
            return Err(self.err(format!("negative {what}")));
        }
        match self.peek().clone() {
            Tok::Int(n) => {
                let v = u32::try_from(&n).map_err(|_| self.err(format!("{what} {n} is too large")))?;
                self.next();
                Ok(v)
            }
            t => Err(self.err(format!("expected {what}, found {}", Self::describe(&t)))),
        }
    }

    fn name_list(&mut self) -> Result<Vec<String>> {
        let mut out = Vec::new();
        if self.is_punct(';') {
            return Ok(out);
        }
        out.push(self.ident()?);
        while self.eat(',') {
            out.push(self.ident()?);
        }
        Ok(out)
    }

    // ring { ... }

    fn ring_block(&mut self) -> Result<Ring> {
        let start = self.pos;
        self.keyword("ring")?;
        self.expect('{')?;
        let mut shifts: Option<usize> = None;
        let mut symbols: Option<Vec<String>> = None;
        let mut params: Option<Vec<String>> = None;
        let mut order: Option<(usize, OrderSpecText)> = None;
        while !self.eat('}') {
            let at = self.pos;
            let field = self.ident()?;
            self.expect(':')?;
            let dup = |p: &Self| p.err_at(at, format!("`{field}` is declared twice"));
            match field.as_str() {
                "shifts" => {
                    if shifts.is_some() {
                        return Err(dup(self));
                    }
                    shifts = Some(self.small_int("shift rank")? as usize);
                }
                "symbols" => {
                    if symbols.is_some() {
                        return Err(dup(self));
                    }
                    symbols = Some(self.name_list()?);
                }
                "parameters" => {
                    if params.is_some() {
                        return Err(dup(self));
                    }
                    params = Some(self.name_list()?);
                }
                "order" => {
                    if order.is_some() {
                        return Err(dup(self));
                    }
                    order = Some((at, self.order_spec()?));
                }
                other => return Err(self.err_at(at, format!("unknown ring field `{other}`"))),
            }
            self.expect(';')?;
        }
        let shifts = shifts.ok_or_else(|| self.err_at(start, "ring block lacks `shifts`"))?;
        let symbols = symbols.ok_or_else(|| self.err_at(start, "ring block lacks `symbols`"))?;
        let sig = RingSignature::new(shifts, symbols, params.unwrap_or_default())
            .map_err(|e| self.err_at(start, e.to_string()))?;
        let order = match order {
            None => default_ordering(&sig),
            Some((at, text)) => text.resolve(&sig).map_err(|e| self.err_at(at, e.to_string()))?,
        };
        Ring::new(sig, order).map_err(|e| self.err_at(start, e.to_string()))
    }

    fn order_spec(&mut self) -> Result<OrderSpecText> {
        self.keyword("block")?;
        self.expect('(')?;
        self.keyword("shifts")?;
        self.expect('=')?;
        let shifts = self.vector_order()?;
        self.expect(',')?;
        self.keyword("symbols")?;
        self.expect('=')?;
        let symbols = self.vector_order()?;
        self.expect(')')?;
        Ok(OrderSpecText { shifts, symbols })
    }

    fn vector_order(&mut self) -> Result<(OrderKind, Option<Vec<String>>)> {
        let at = self.pos;
        let name = self.ident()?;
        let kind = OrderKind::from_name(&name).ok_or_else(|| self.err_at(at, format!("unknown ordering `{name}`")))?;
        if !self.eat('[') {
            return Ok((kind, None));
        }
        let mut chain = vec![self.ident()?];
        while self.eat('>') {
            chain.push(self.ident()?);
        }
        self.expect(']')?;
        Ok((kind, Some(chain)))
    }

    // polynomials

    fn expr(&mut self, ring: &Ring) -> Result<Poly> {
        let mut acc = if self.eat('-') {
            self.term(ring)?.neg()
        } else {
            self.eat('+');
            self.term(ring)?
        };
        loop {
            if self.eat('+') {
                acc = ring.add(&acc, &self.term(ring)?);
            } else if self.eat('-') {
                acc = ring.sub(&acc, &self.term(ring)?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self, ring: &Ring) -> Result<Poly> {
        let mut acc = self.factor(ring)?;
        loop {
            if self.eat('*') {
                acc = ring.mul(&acc, &self.factor(ring)?);
            } else if self.is_punct('/') {
                let at = self.pos;
                self.next();
                let d = self.factor(ring)?;
                let c = match d.terms() {
                    [t] if t.mono.is_one() => t.coeff.clone(),
                    [] => return Err(self.err_at(at, "division by zero")),
                    _ => return Err(self.err_at(at, "only division by a coefficient is allowed")),
                };
                acc = acc.scale(&c.inv().map_err(|e| self.err_at(at, e.to_string()))?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self, ring: &Ring) -> Result<Poly> {
        let base = self.atom(ring)?;
        if self.eat('^') {
            let e = self.small_int("exponent")?;
            return Ok(ring.pow(&base, e));
        }
        Ok(base)
    }

    fn atom(&mut self, ring: &Ring) -> Result<Poly> {
        let at = self.pos;
        match self.next() {
            Tok::Int(n) => Ok(Poly::constant(FieldElement::from(num_rational::BigRational::from_integer(n)))),
            Tok::Punct('(') => {
                let e = self.expr(ring)?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Ident(name) => {
                let sig = ring.signature();
                if let Some(i) = sig.symbol_index(&name) {
                    self.expect('(')?;
                    let s = self.shift(sig.shift_rank())?;
                    self.expect(')')?;
                    Ok(Poly::monomial(FieldElement::one(), Monomial::var(Var::new(i, s))))
                } else if let Some(j) = sig.parameter_index(&name) {
                    Ok(Poly::constant(FieldElement::param(j)))
                } else {
                    Err(self.err_at(at, format!("unknown symbol `{name}`")))
                }
            }
            t => Err(self.err_at(at, format!("unexpected {}", Self::describe(&t)))),
        }
    }

    /// `(a1,…,ar)` entries, a product of `s_j^a`, or `1` when `r > 1`.
    fn shift(&mut self, rank: usize) -> Result<Shift> {
        let at = self.pos;
        if matches!(self.peek(), Tok::Ident(_)) {
            let mut e = vec![0u32; rank];
            loop {
                let gat = self.pos;
                let g = self.ident()?;
                let j = g
                    .strip_prefix('s')
                    .and_then(|d| d.parse::<usize>().ok())
                    .filter(|&j| (1..=rank).contains(&j))
                    .ok_or_else(|| self.err_at(gat, format!("`{g}` is not a shift generator s1..s{rank}")))?;
                let a = if self.eat('^') { self.small_int("shift exponent")? } else { 1 };
                e[j - 1] = e[j - 1].checked_add(a).ok_or_else(|| self.err_at(gat, "shift exponent overflow"))?;
                if !self.eat('*') {
                    return Ok(Shift::new(e));
                }
            }
        }
        let mut e = vec![self.small_int("shift entry")?];
        while self.eat(',') {
            e.push(self.small_int("shift entry")?);
        }
        if !self.is_punct(')') {
            return Err(self.err(format!("expected `)`, found {}", Self::describe(self.peek()))));
        }
        if rank > 1 && e == [1] {
            return Ok(Shift::identity(rank));
        }
        if e.len() != rank {
            return Err(self.err_at(
                at,
                format!("shift has {} entries, the ring has rank {rank}", e.len()),
            ));
        }
        Ok(Shift::new(e))
    }

    fn poly_list(&mut self, ring: &Ring) -> Result<Vec<Poly>> {
        self.expect('{')?;
        let mut out = Vec::new();
        while !self.eat('}') {
            out.push(self.expr(ring)?);
            if !self.eat(';') && !self.is_punct('}') {
                return Err(self.err(format!("expected `;`, found {}", Self::describe(self.peek()))));
            }
        }
        Ok(out)
    }

    // symmetric { perm: (..)(..); gens { ... } }

    fn symmetric_block(&mut self, params: &[String]) -> Result<(Ring, SymmetricBlock)> {
        self.keyword("symmetric")?;
        self.expect('{')?;
        let at = self.pos;
        self.keyword("perm")?;
        self.expect(':')?;
        let mut cycles = Vec::new();
        while self.eat('(') {
            let mut c = Vec::new();
            while !self.eat(')') {
                c.push(self.small_int("point")? as usize);
                self.eat(',');
            }
            cycles.push(c);
        }
        let points = cycles.iter().flatten().copied().max().unwrap_or(0);
        let action = PermutationAction::from_cycles(points, cycles).map_err(|e| self.err_at(at, e.to_string()))?;
        self.expect(';')?;
        let ring = action.ring(params).map_err(|e| self.err_at(at, e.to_string()))?;
        self.keyword("gens")?;
        let generators = self.poly_list(&ring)?;
        self.eat(';');
        self.expect('}')?;
        Ok((ring, SymmetricBlock { action, generators }))
    }

    fn problem(&mut self, default_ring: Option<&Ring>) -> Result<ProblemFile> {
        let mut ring: Option<Ring> = None;
        let mut ideal: Option<Vec<Poly>> = None;
        let mut symmetric = None;
        loop {
            let at = self.pos;
            match self.peek().clone() {
                Tok::Eof => break,
                Tok::Ident(kw) if kw == "ring" => {
                    if ring.is_some() {
                        return Err(self.err_at(at, "`ring` is declared twice"));
                    }
                    ring = Some(self.ring_block()?);
                }
                Tok::Ident(kw) if kw == "ideal" => {
                    if ideal.is_some() {
                        return Err(self.err_at(at, "`ideal` is declared twice"));
                    }
                    self.next();
                    let r = ring
                        .as_ref()
                        .or(default_ring)
                        .ok_or_else(|| self.err_at(at, "`ideal` needs a preceding `ring` block"))?;
                    ideal = Some(self.poly_list(r)?);
                }
                Tok::Ident(kw) if kw == "symmetric" => {
                    if symmetric.is_some() || ring.is_some() || ideal.is_some() {
                        return Err(self.err_at(at, "`symmetric` must be the only block"));
                    }
                    let (r, block) = self.symmetric_block(&[])?;
                    ring = Some(r);
                    symmetric = Some(block);
                }
                t => return Err(self.err(format!("expected `ring`, `ideal` or `symmetric`, found {}", Self::describe(&t)))),
            }
            if symmetric.is_some() && !matches!(self.peek(), Tok::Eof) {
                return Err(self.err("`symmetric` must be the only block"));
            }
        }
        let ring = ring
            .or_else(|| default_ring.cloned())
            .ok_or_else(|| self.err("missing `ring` block"))?;
        Ok(ProblemFile {
            ring,
            ideal: ideal.unwrap_or_default(),
            symmetric,
        })
    }
}

struct OrderSpecText {
    shifts: (OrderKind, Option<Vec<String>>),
    symbols: (OrderKind, Option<Vec<String>>),
}

fn resolve_chain(kind: OrderKind, chain: &Option<Vec<String>>, names: &[String]) -> Result<VectorOrder> {
    let Some(chain) = chain else {
        return Ok(VectorOrder::new(kind, names.len()));
    };
    let mut priority = Vec::new();
    for n in chain {
        let i = names
            .iter()
            .position(|m| m == n)
            .ok_or_else(|| Error::InvalidOrdering(format!("`{n}` is not declared")))?;
        if priority.contains(&i) {
            return Err(Error::InvalidOrdering(format!("`{n}` is named twice")));
        }
        priority.push(i);
    }
    if priority.len() != names.len() {
        return Err(Error::InvalidOrdering(format!(
            "chain names {} of {} entries",
            priority.len(),
            names.len()
        )));
    }
    VectorOrder::with_priority(kind, priority)
}

impl OrderSpecText {
    fn resolve(&self, sig: &RingSignature) -> Result<OrderingSpec> {
        let shift_names: Vec<String> = (1..=sig.shift_rank()).map(|i| format!("s{i}")).collect();
        Ok(OrderingSpec::block(
            resolve_chain(self.shifts.0, &self.shifts.1, &shift_names)?,
            resolve_chain(self.symbols.0, &self.symbols.1, sig.symbols())?,
        ))
    }
}

/// Degree-reverse-lexicographic shifts, symbols lexicographic in
/// declaration order.
pub fn default_ordering(sig: &RingSignature) -> OrderingSpec {
    OrderingSpec::block(
        VectorOrder::new(OrderKind::DegRevLex, sig.shift_rank()),
        VectorOrder::new(OrderKind::Lex, sig.symbols().len()),
    )
}

pub fn parse_problem(text: &str) -> Result<ProblemFile> {
    Parser::new(text)?.problem(None)
}

/// As [`parse_problem`], but `ideal` blocks may use `ring` when the file
/// declares none.
pub fn parse_problem_in(text: &str, ring: &Ring) -> Result<ProblemFile> {
    Parser::new(text)?.problem(Some(ring))
}

pub fn parse_poly(ring: &Ring, text: &str) -> Result<Poly> {
    let mut p = Parser::new(text)?;
    let f = p.expr(ring)?;
    match p.peek() {
        Tok::Eof => Ok(f),
        t => Err(p.err(format!("unexpected {} after the polynomial", Parser::describe(t)))),
    }
}

/// A single variable such as `x(2,1)`.
pub fn parse_var(ring: &Ring, text: &str) -> Result<Var> {
    let f = parse_poly(ring, text)?;
    match f.terms() {
        [t] if t.coeff.is_one() => match t.mono.factors() {
            [(v, 1)] => Ok(v.clone()),
            _ => Err(Error::Parse {
                line: 1,
                column: 1,
                message: format!("`{text}` is not a variable"),
            }),
        },
        _ => Err(Error::Parse {
            line: 1,
            column: 1,
            message: format!("`{text}` is not a variable"),
        }),
    }
}

/// A permutation in cycle notation, with line/column diagnostics.
pub fn parse_permutation(text: &str) -> Result<PermutationAction> {
    PermutationAction::parse(text, None)
}

#[cfg(test)]
mod tests {
    use super::*;

    const NAVIER_RING: &str = "ring { shifts: 3; symbols: u,v,p; parameters: H;\n\
        order: block(shifts=degrevlex[s1>s2>s3], symbols=lex[u>v>p]); }\n";

    fn ns_ring() -> Ring {
        parse_problem(NAVIER_RING).unwrap().ring
    }

    fn pos(e: Error) -> (usize, usize) {
        match e {
            Error::Parse { line, column, .. } => (line, column),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn ring_and_ideal() {
        let text = format!("{NAVIER_RING}ideal {{ u(1,0,0)+v(0,1,0)-u(0,0,0)-v(0,0,0); }}");
        let p = parse_problem(&text).unwrap();
        assert_eq!(p.ideal.len(), 1);
        assert_eq!(p.ring.signature().parameters(), ["H"]);
        assert_eq!(p.ring.fmt_poly(&p.ideal[0]), "u(1,0,0)+v(0,1,0)-u(0,0,0)-v(0,0,0)");
        assert_eq!(
            p.ring.ordering().fmt_with(p.ring.signature()),
            "block(shifts=degrevlex[s1>s2>s3], symbols=lex[u>v>p])"
        );
    }

    #[test]
    fn shift_notations_agree() {
        let r = ns_ring();
        let a = parse_poly(&r, "u(s1^2*s3)").unwrap();
        let b = parse_poly(&r, "u(2,0,1)").unwrap();
        assert_eq!(a, b);
        assert_eq!(parse_poly(&r, "u(1)").unwrap(), parse_poly(&r, "u(0,0,0)").unwrap());
    }

    #[test]
    fn coefficients() {
        let r = ns_ring();
        let f = parse_poly(&r, "(2*H-1)/H*p(1,0,0) - 1/2*H^2").unwrap();
        let s = r.fmt_poly(&f);
        assert_eq!(parse_poly(&r, &s).unwrap(), f);
        let g = parse_poly(&r, "2*u(0,0,0)-2").unwrap().monic().unwrap();
        assert_eq!(r.fmt_poly(&g), "u(0,0,0)-1");
        assert_eq!(r.fmt_poly(&parse_poly(&r, "u(1,0,0)-u(1,0,0)").unwrap()), "0");
    }

    #[test]
    fn diagnostics() {
        let r = ns_ring();
        assert_eq!(pos(parse_poly(&r, "u(1,0").unwrap_err()), (1, 6));
        assert!(parse_poly(&r, "u(1,0)").unwrap_err().to_string().contains("rank 3"));
        assert!(parse_poly(&r, "u(-1,0,0)").unwrap_err().to_string().contains("negative"));
        assert!(parse_poly(&r, "w(0,0,0)").unwrap_err().to_string().contains("unknown symbol"));
        assert!(parse_poly(&r, "u(0,0,0)/u(1,0,0)").is_err());
        assert!(parse_poly(&r, "u(0,0,0)/0").is_err());
        let e = parse_problem("ring { shifts: 1; symbols: x; symbols: y; }").unwrap_err();
        assert_eq!(pos(e), (1, 31));
        let e = parse_problem("ring { shifts: 1;\n symbols: x, x; }").unwrap_err();
        assert!(e.to_string().contains("twice"));
        let e = parse_problem("ring { shifts: 2; symbols: x; order: block(shifts=lex[s1>s1], symbols=lex); }");
        assert!(e.is_err());
        assert!(parse_problem("ideal { x(0); }").is_err());
        assert_eq!(pos(parse_problem("ring { shifts: 1; symbols: x; }\n ideal { x(0) $ }").unwrap_err()), (2, 15));
    }

    #[test]
    fn symmetric_file() {
        let p = parse_problem("symmetric { perm: (1 2 3 4); gens { x(0)*x(2)-x(1)^2; } }").unwrap();
        let s = p.symmetric.unwrap();
        assert_eq!(s.action.cycles(), &[vec![1, 2, 3, 4]]);
        assert_eq!(s.generators.len(), 1);
        assert!(parse_problem("ring { shifts: 1; symbols: x; } symmetric { perm: (1 2); gens { } }").is_err());
    }

    #[test]
    fn default_ring_for_bare_ideal() {
        let g = PermutationAction::parse("(1 2 3)", None).unwrap();
        let ring = g.ring(&[]).unwrap();
        let p = parse_problem_in("ideal { x(0)+x(1)+x(2); }", &ring).unwrap();
        assert_eq!(p.ideal.len(), 1);
        assert_eq!(parse_var(&ring, "x(2)").unwrap(), Var::new(0, Shift::new([2])));
        assert!(parse_var(&ring, "2*x(2)").is_err());
    }
}
