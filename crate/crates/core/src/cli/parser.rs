//! Line-oriented parser for `.cpf` problem files.
//!
//! ```text
//! ring Z | ring GF(p)[x] | ring Q[x1,...,xn] monomial | ring GF(p)[x1,...,xn] monomial
//! module M = coker [[a,b],[c,d]]        # columns are relations
//! module M = cyclic (m1, m2, ...)
//! module M = dsum ((...);(...);N)       # N names an earlier module
//! module M = cofinite free [d1,...] primes (p,...) >= B except (q,...)
//! order = (g,...), (g,...), ...
//! param key = value
//! ```

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::lexer::{tokenize, Tok};
use super::problem::{ModuleDecl, ProblemFile, Summand};
use super::{Located, ParseError};
use crate::monomial::{Monomial, MonomialIdeal};
use crate::numeric::{is_irreducible_gf, is_prime, is_prime_u64, UniPoly};
use crate::omega::{CofiniteZModule, PrimeSupport, Tail};
use crate::ring::{CoefficientField, PidElem, PrimeIdealRef, RingSpec};

/// Largest exponent accepted in expressions.
const MAX_EXPONENT: u32 = 64;

struct Cursor<'a> {
    toks: &'a [Located<Tok>],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> &'a Located<Tok> {
        &self.toks[self.pos.min(self.toks.len() - 1)]
    }

    fn next(&mut self) -> &'a Located<Tok> {
        let t = self.peek();
        if self.pos < self.toks.len() - 1 {
            self.pos += 1;
        }
        t
    }

    fn at(&self, tok: &Tok) -> bool {
        &self.peek().value == tok
    }

    fn at_ident(&self, word: &str) -> bool {
        matches!(&self.peek().value, Tok::Ident(s) if s == word)
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.at(tok) {
            self.next();
            true
        } else {
            false
        }
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        let t = self.peek();
        ParseError::syntax(t.line, t.column, format!("expected {wanted}, found {}", t.value.describe()))
    }

    fn expect(&mut self, tok: Tok) -> Result<&'a Located<Tok>, ParseError> {
        if self.at(&tok) {
            Ok(self.next())
        } else {
            Err(self.unexpected(&tok.describe()))
        }
    }

    fn ident(&mut self) -> Result<(String, usize, usize), ParseError> {
        let t = self.peek();
        match &t.value {
            Tok::Ident(s) => {
                self.next();
                Ok((s.clone(), t.line, t.column))
            }
            _ => Err(self.unexpected("a name")),
        }
    }

    fn keyword(&mut self, word: &str) -> Result<(), ParseError> {
        if self.at_ident(word) {
            self.next();
            Ok(())
        } else {
            Err(self.unexpected(&format!("`{word}`")))
        }
    }

    fn number(&mut self) -> Result<(BigInt, usize, usize), ParseError> {
        let t = self.peek();
        match &t.value {
            Tok::Number(n) => {
                self.next();
                Ok((n.clone(), t.line, t.column))
            }
            _ => Err(self.unexpected("a number")),
        }
    }

    fn small(&mut self) -> Result<(u64, usize, usize), ParseError> {
        let (n, l, c) = self.number()?;
        let v = n
            .to_u64()
            .ok_or_else(|| ParseError::semantic(l, c, format!("{n} is too large")))?;
        Ok((v, l, c))
    }

    fn end(&mut self) -> Result<(), ParseError> {
        if self.at(&Tok::Newline) {
            Ok(())
        } else {
            Err(self.unexpected("end of line"))
        }
    }
}

#[derive(Clone, Debug)]
enum Expr {
    Num(BigInt),
    Var(String, usize, usize),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
}

fn parse_expr(c: &mut Cursor) -> Result<(Expr, usize, usize), ParseError> {
    let start = c.peek();
    let mut lhs = parse_term(c)?;
    loop {
        if c.eat(&Tok::Plus) {
            lhs = Expr::Add(Box::new(lhs), Box::new(parse_term(c)?));
        } else if c.eat(&Tok::Minus) {
            lhs = Expr::Sub(Box::new(lhs), Box::new(parse_term(c)?));
        } else {
            return Ok((lhs, start.line, start.column));
        }
    }
}

fn parse_term(c: &mut Cursor) -> Result<Expr, ParseError> {
    let mut lhs = parse_factor(c)?;
    while c.eat(&Tok::Star) {
        lhs = Expr::Mul(Box::new(lhs), Box::new(parse_factor(c)?));
    }
    Ok(lhs)
}

fn parse_factor(c: &mut Cursor) -> Result<Expr, ParseError> {
    if c.eat(&Tok::Minus) {
        return Ok(Expr::Neg(Box::new(parse_factor(c)?)));
    }
    let t = c.peek();
    let atom = match &t.value {
        Tok::Number(n) => {
            c.next();
            Expr::Num(n.clone())
        }
        Tok::Ident(s) => {
            c.next();
            Expr::Var(s.clone(), t.line, t.column)
        }
        Tok::LParen => {
            c.next();
            let (e, _, _) = parse_expr(c)?;
            c.expect(Tok::RParen)?;
            e
        }
        _ => return Err(c.unexpected("an expression")),
    };
    if c.eat(&Tok::Caret) {
        let (n, l, col) = c.number()?;
        let e = n
            .to_u32()
            .filter(|e| *e <= MAX_EXPONENT)
            .ok_or_else(|| ParseError::semantic(l, col, format!("exponent {n} exceeds {MAX_EXPONENT}")))?;
        return Ok(Expr::Pow(Box::new(atom), e));
    }
    Ok(atom)
}

fn unknown_var(name: &str, l: usize, c: usize, ring: &RingSpec) -> ParseError {
    ParseError::semantic(l, c, format!("unknown variable `{name}` in ring {ring}"))
}

fn eval_int(e: &Expr, ring: &RingSpec) -> Result<BigInt, ParseError> {
    Ok(match e {
        Expr::Num(n) => n.clone(),
        Expr::Var(s, l, c) => return Err(unknown_var(s, *l, *c, ring)),
        Expr::Add(a, b) => eval_int(a, ring)? + eval_int(b, ring)?,
        Expr::Sub(a, b) => eval_int(a, ring)? - eval_int(b, ring)?,
        Expr::Mul(a, b) => eval_int(a, ring)? * eval_int(b, ring)?,
        Expr::Neg(a) => -eval_int(a, ring)?,
        Expr::Pow(a, k) => num_traits::pow(eval_int(a, ring)?, *k as usize),
    })
}

fn eval_poly(e: &Expr, ring: &RingSpec, p: u64, var: &str) -> Result<UniPoly, ParseError> {
    Ok(match e {
        Expr::Num(n) => {
            let r = n.mod_floor(&BigInt::from(p)).to_u64().expect("reduced");
            UniPoly::constant(p, r)
        }
        Expr::Var(s, _, _) if s == var => UniPoly::x(p),
        Expr::Var(s, l, c) => return Err(unknown_var(s, *l, *c, ring)),
        Expr::Add(a, b) => eval_poly(a, ring, p, var)?.add(&eval_poly(b, ring, p, var)?),
        Expr::Sub(a, b) => eval_poly(a, ring, p, var)?.sub(&eval_poly(b, ring, p, var)?),
        Expr::Mul(a, b) => eval_poly(a, ring, p, var)?.mul(&eval_poly(b, ring, p, var)?),
        Expr::Neg(a) => eval_poly(a, ring, p, var)?.neg(),
        Expr::Pow(a, k) => eval_poly(a, ring, p, var)?.pow(u64::from(*k)),
    })
}

/// A term `c * x^a`; `None` when the expression is not a single term.
fn eval_term(e: &Expr, vars: &[String]) -> Result<Option<(BigInt, Vec<u32>)>, (String, usize, usize)> {
    let n = vars.len();
    Ok(match e {
        Expr::Num(k) => Some((k.clone(), vec![0; n])),
        Expr::Var(s, l, c) => match vars.iter().position(|v| v == s) {
            Some(i) => {
                let mut exps = vec![0; n];
                exps[i] = 1;
                Some((BigInt::one(), exps))
            }
            None => return Err((s.clone(), *l, *c)),
        },
        Expr::Mul(a, b) => match (eval_term(a, vars)?, eval_term(b, vars)?) {
            (Some((ca, ea)), Some((cb, eb))) => Some((ca * cb, ea.iter().zip(&eb).map(|(x, y)| x + y).collect())),
            _ => None,
        },
        Expr::Neg(a) => eval_term(a, vars)?.map(|(c, e)| (-c, e)),
        Expr::Pow(a, k) => eval_term(a, vars)?.map(|(c, e)| (num_traits::pow(c, *k as usize), e.iter().map(|x| x * k).collect())),
        Expr::Add(..) | Expr::Sub(..) => None,
    })
}

struct Parser {
    ring: Option<RingSpec>,
    modules: Vec<(String, ModuleDecl)>,
    order: Option<Vec<PrimeIdealRef>>,
    params: BTreeMap<String, String>,
}

pub fn parse_problem(text: &str) -> Result<ProblemFile, ParseError> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        ring: None,
        modules: Vec::new(),
        order: None,
        params: BTreeMap::new(),
    };
    for line in toks.split_inclusive(|t| t.value == Tok::Newline) {
        if line.len() == 1 {
            continue;
        }
        let mut c = Cursor { toks: line, pos: 0 };
        p.line(&mut c)?;
    }
    let Some(ring) = p.ring else {
        return Err(ParseError::semantic(1, 1, "missing `ring` declaration"));
    };
    if p.modules.is_empty() {
        let last = toks.last().map_or(1, |t| t.line);
        return Err(ParseError::semantic(last, 1, "no module declared"));
    }
    Ok(ProblemFile {
        ring,
        modules: p.modules,
        order: p.order,
        params: p.params,
    })
}

/// Parses `--order` text such as `(2),(3)` for a declared ring.
pub fn parse_order_text(text: &str, ring: &RingSpec) -> Result<Vec<PrimeIdealRef>, ParseError> {
    let toks = tokenize(text)?;
    let line = toks.split_inclusive(|t| t.value == Tok::Newline).next().unwrap_or(&toks[..]);
    let mut c = Cursor { toks: line, pos: 0 };
    let o = order_list(&mut c, ring)?;
    c.end()?;
    Ok(o)
}

impl Parser {
    fn ring(&self, c: &Cursor) -> Result<&RingSpec, ParseError> {
        self.ring.as_ref().ok_or_else(|| {
            let t = c.peek();
            ParseError::semantic(t.line, t.column, "`ring` must be declared first")
        })
    }

    fn line(&mut self, c: &mut Cursor) -> Result<(), ParseError> {
        let (word, l, col) = c.ident()?;
        match word.as_str() {
            "ring" => {
                if self.ring.is_some() {
                    return Err(ParseError::semantic(l, col, "ring declared twice"));
                }
                self.ring = Some(ring_decl(c)?);
            }
            "module" => {
                let ring = self.ring(c)?.clone();
                let (name, nl, nc) = c.ident()?;
                if self.modules.iter().any(|(n, _)| *n == name) {
                    return Err(ParseError::semantic(nl, nc, format!("module `{name}` declared twice")));
                }
                c.expect(Tok::Eq)?;
                let decl = self.module_decl(c, &ring)?;
                self.modules.push((name, decl));
            }
            "order" => {
                let ring = self.ring(c)?.clone();
                if self.order.is_some() {
                    return Err(ParseError::semantic(l, col, "order declared twice"));
                }
                c.expect(Tok::Eq)?;
                self.order = Some(order_list(c, &ring)?);
            }
            "param" => {
                let (key, kl, kc) = c.ident()?;
                c.expect(Tok::Eq)?;
                let t = c.next();
                let value = match &t.value {
                    Tok::Ident(s) => s.clone(),
                    Tok::Number(n) => n.to_string(),
                    _ => return Err(ParseError::syntax(t.line, t.column, "expected a parameter value")),
                };
                if self.params.insert(key.clone(), value).is_some() {
                    return Err(ParseError::semantic(kl, kc, format!("parameter `{key}` set twice")));
                }
            }
            other => {
                return Err(ParseError::syntax(
                    l,
                    col,
                    format!("expected `ring`, `module`, `order` or `param`, found `{other}`"),
                ))
            }
        }
        c.end()
    }

    fn module_decl(&self, c: &mut Cursor, ring: &RingSpec) -> Result<ModuleDecl, ParseError> {
        let (kind, l, col) = c.ident()?;
        match kind.as_str() {
            "coker" => {
                if !ring.is_pid() {
                    return Err(ParseError::semantic(l, col, "`coker` needs a principal ideal domain"));
                }
                c.expect(Tok::LBracket)?;
                let mut rows = Vec::new();
                loop {
                    let open = c.expect(Tok::LBracket)?;
                    let mut row = Vec::new();
                    if !c.at(&Tok::RBracket) {
                        loop {
                            row.push(pid_element(c, ring)?);
                            if !c.eat(&Tok::Comma) {
                                break;
                            }
                        }
                    }
                    c.expect(Tok::RBracket)?;
                    if let Some(first) = rows.first() {
                        let first: &Vec<PidElem> = first;
                        if first.len() != row.len() {
                            return Err(ParseError::semantic(
                                open.line,
                                open.column,
                                format!("row has {} entries, expected {}", row.len(), first.len()),
                            ));
                        }
                    }
                    rows.push(row);
                    if !c.eat(&Tok::Comma) {
                        break;
                    }
                }
                c.expect(Tok::RBracket)?;
                Ok(ModuleDecl::Coker(rows))
            }
            "cyclic" => Ok(ModuleDecl::Cyclic(generator_summand(c, ring)?)),
            "dsum" => {
                c.expect(Tok::LParen)?;
                let mut items = Vec::new();
                loop {
                    if c.at(&Tok::LParen) {
                        items.push(generator_summand(c, ring)?);
                    } else {
                        let (name, nl, nc) = c.ident()?;
                        match self.modules.iter().find(|(n, _)| *n == name) {
                            None => return Err(ParseError::semantic(nl, nc, format!("unknown module `{name}`"))),
                            Some((_, ModuleDecl::Cofinite(_))) => {
                                return Err(ParseError::semantic(nl, nc, "cofinite modules cannot be summands"))
                            }
                            Some(_) => items.push(Summand::Named(name)),
                        }
                    }
                    if !c.eat(&Tok::Semi) {
                        break;
                    }
                }
                c.expect(Tok::RParen)?;
                Ok(ModuleDecl::Dsum(items))
            }
            "cofinite" => {
                if *ring != RingSpec::Integers {
                    return Err(ParseError::semantic(l, col, "`cofinite` modules live over ring Z"));
                }
                cofinite(c).map(ModuleDecl::Cofinite)
            }
            other => Err(ParseError::syntax(
                l,
                col,
                format!("expected `coker`, `cyclic`, `dsum` or `cofinite`, found `{other}`"),
            )),
        }
    }
}

fn ring_decl(c: &mut Cursor) -> Result<RingSpec, ParseError> {
    let (head, l, col) = c.ident()?;
    let field = match head.as_str() {
        "Z" => return Ok(RingSpec::Integers),
        "Q" => CoefficientField::Rationals,
        "GF" => {
            c.expect(Tok::LParen)?;
            let (p, pl, pc) = c.number()?;
            c.expect(Tok::RParen)?;
            if !is_prime(&p) {
                return Err(ParseError::semantic(pl, pc, format!("{p} is not prime")));
            }
            let p = p
                .to_u64()
                .filter(|p| *p < (1 << 31))
                .ok_or_else(|| ParseError::semantic(pl, pc, format!("modulus {p} is too large")))?;
            CoefficientField::Prime(p)
        }
        other => return Err(ParseError::syntax(l, col, format!("expected `Z`, `Q` or `GF`, found `{other}`"))),
    };
    let open = c.expect(Tok::LBracket)?;
    let mut vars: Vec<String> = Vec::new();
    loop {
        let (v, vl, vc) = c.ident()?;
        if vars.contains(&v) {
            return Err(ParseError::semantic(vl, vc, format!("variable `{v}` repeated")));
        }
        vars.push(v);
        if !c.eat(&Tok::Comma) {
            break;
        }
    }
    c.expect(Tok::RBracket)?;
    let monomial = c.at_ident("monomial");
    if monomial {
        c.next();
        return Ok(RingSpec::Monomial { field, vars });
    }
    match field {
        CoefficientField::Prime(p) if vars.len() == 1 => Ok(RingSpec::UnivariateGf {
            modulus: p,
            var: vars.pop().unwrap(),
        }),
        CoefficientField::Prime(_) => Err(ParseError::semantic(
            open.line,
            open.column,
            "multivariate rings must be declared `monomial`",
        )),
        CoefficientField::Rationals => Err(ParseError::semantic(
            open.line,
            open.column,
            "polynomial rings over Q must be declared `monomial`",
        )),
    }
}

fn pid_element(c: &mut Cursor, ring: &RingSpec) -> Result<PidElem, ParseError> {
    let (e, _, _) = parse_expr(c)?;
    match ring {
        RingSpec::Integers => Ok(PidElem::Int(eval_int(&e, ring)?)),
        RingSpec::UnivariateGf { modulus, var } => Ok(PidElem::Poly(eval_poly(&e, ring, *modulus, var)?)),
        RingSpec::Monomial { .. } => unreachable!("only called for PID rings"),
    }
}

fn monomial_generator(c: &mut Cursor, ring: &RingSpec) -> Result<Option<Monomial>, ParseError> {
    let (e, l, col) = parse_expr(c)?;
    let vars = ring.var_names();
    match eval_term(&e, vars) {
        Err((name, vl, vc)) => Err(unknown_var(&name, vl, vc, ring)),
        Ok(None) => Err(ParseError::semantic(l, col, "non-monomial generator")),
        Ok(Some((coeff, exps))) => {
            let zero = match ring {
                RingSpec::Monomial {
                    field: CoefficientField::Prime(p),
                    ..
                } => (&coeff % BigInt::from(*p)).is_zero(),
                _ => coeff.is_zero(),
            };
            Ok((!zero).then(|| Monomial::new(exps)))
        }
    }
}

/// `(g1, ..., gk)`: one element over a PID, an ideal over a monomial ring.
fn generator_summand(c: &mut Cursor, ring: &RingSpec) -> Result<Summand, ParseError> {
    let open = c.expect(Tok::LParen)?;
    if ring.is_pid() {
        let e = pid_element(c, ring)?;
        if c.at(&Tok::Comma) {
            return Err(ParseError::semantic(
                open.line,
                open.column,
                "a cyclic module over a principal ideal domain takes one generator",
            ));
        }
        c.expect(Tok::RParen)?;
        return Ok(Summand::Element(normalize_elem(e)));
    }
    let mut gens = Vec::new();
    loop {
        if let Some(m) = monomial_generator(c, ring)? {
            gens.push(m);
        }
        if !c.eat(&Tok::Comma) {
            break;
        }
    }
    c.expect(Tok::RParen)?;
    Ok(Summand::Ideal(MonomialIdeal::new(ring.var_names().len(), gens)))
}

/// Associates generate the same cyclic module; keep the canonical one.
fn normalize_elem(e: PidElem) -> PidElem {
    match e {
        PidElem::Int(n) => PidElem::Int(n.abs()),
        PidElem::Poly(f) if f.is_zero() => PidElem::Poly(f),
        PidElem::Poly(f) => PidElem::Poly(f.monic().0),
    }
}

fn prime(c: &mut Cursor, ring: &RingSpec) -> Result<PrimeIdealRef, ParseError> {
    let open = c.expect(Tok::LParen)?;
    let (line, col) = (open.line, open.column);
    let p = match ring {
        RingSpec::Monomial { .. } => {
            let mut vars = BTreeSet::new();
            let mut zero = false;
            loop {
                let t = c.peek();
                match monomial_generator(c, ring)? {
                    None => zero = true,
                    Some(m) => match m.as_variable() {
                        Some(i) => {
                            vars.insert(i);
                        }
                        None => {
                            return Err(ParseError::semantic(
                                t.line,
                                t.column,
                                "monomial primes are generated by variables",
                            ))
                        }
                    },
                }
                if !c.eat(&Tok::Comma) {
                    break;
                }
            }
            if vars.is_empty() && zero {
                PrimeIdealRef::Zero
            } else if zero {
                return Err(ParseError::semantic(line, col, "`0` mixed with variables"));
            } else {
                PrimeIdealRef::Variables(vars.into_iter().collect())
            }
        }
        _ => {
            let e = normalize_elem(pid_element(c, ring)?);
            match e {
                PidElem::Int(n) if n.is_zero() => PrimeIdealRef::Zero,
                PidElem::Int(n) if is_prime(&n) => PrimeIdealRef::Integer(n),
                PidElem::Int(n) => return Err(ParseError::semantic(line, col, format!("({n}) is not a prime ideal"))),
                PidElem::Poly(f) if f.is_zero() => PrimeIdealRef::Zero,
                PidElem::Poly(f) if is_irreducible_gf(&f) => PrimeIdealRef::Irreducible(f),
                PidElem::Poly(f) => {
                    return Err(ParseError::semantic(
                        line,
                        col,
                        format!("({}) is not a prime ideal", ring.format_elem(&PidElem::Poly(f))),
                    ))
                }
            }
        }
    };
    c.expect(Tok::RParen)?;
    Ok(p)
}

fn order_list(c: &mut Cursor, ring: &RingSpec) -> Result<Vec<PrimeIdealRef>, ParseError> {
    let mut out = Vec::new();
    loop {
        out.push(prime(c, ring)?);
        if !c.eat(&Tok::Comma) {
            break;
        }
    }
    Ok(out)
}

fn prime_list(c: &mut Cursor) -> Result<BTreeSet<u64>, ParseError> {
    c.expect(Tok::LParen)?;
    let mut out = BTreeSet::new();
    loop {
        let (p, l, col) = c.small()?;
        if !is_prime_u64(p) {
            return Err(ParseError::semantic(l, col, format!("{p} is not prime")));
        }
        out.insert(p);
        if !c.eat(&Tok::Comma) {
            break;
        }
    }
    c.expect(Tok::RParen)?;
    Ok(out)
}

fn cofinite(c: &mut Cursor) -> Result<CofiniteZModule, ParseError> {
    c.keyword("free")?;
    c.expect(Tok::LBracket)?;
    let mut scales = Vec::new();
    if !c.at(&Tok::RBracket) {
        loop {
            let (d, _, _) = c.number()?;
            scales.push(d);
            if !c.eat(&Tok::Comma) {
                break;
            }
        }
    }
    c.expect(Tok::RBracket)?;
    let mut support = PrimeSupport::empty();
    if c.at_ident("primes") {
        let t = c.next();
        if c.at(&Tok::LParen) {
            support.listed = prime_list(c)?;
        }
        if c.eat(&Tok::Ge) {
            let (from, _, _) = c.small()?;
            let excluded = if c.at_ident("except") {
                c.next();
                prime_list(c)?
            } else {
                BTreeSet::new()
            };
            support.tail = Some(Tail { from, excluded });
        }
        if support.is_empty() {
            return Err(ParseError::syntax(t.line, t.column, "`primes` needs a list or a bound"));
        }
        support
            .validate()
            .map_err(|e| ParseError::semantic(t.line, t.column, e.to_string()))?;
    }
    Ok(CofiniteZModule {
        free_scales: scales,
        support,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::ErrorClass;

    #[test]
    fn z12() {
        let p = parse_problem("ring Z\nmodule M = coker [[12]]").unwrap();
        assert_eq!(p.ring, RingSpec::Integers);
        assert_eq!(p.modules[0].1, ModuleDecl::Coker(vec![vec![PidElem::Int(BigInt::from(12))]]));
    }

    #[test]
    fn monomial_cyclic() {
        let p = parse_problem("ring Q[x,y] monomial\nmodule M = cyclic (x*y)\norder = (x),(y)").unwrap();
        let ModuleDecl::Cyclic(Summand::Ideal(i)) = &p.modules[0].1 else {
            panic!()
        };
        assert_eq!(i.format_with(p.ring.var_names()), "(x*y)");
        assert_eq!(p.order.as_ref().unwrap().len(), 2);
    }

    #[test]
    fn error_classes() {
        let e = parse_problem("ring GF(4)[x]\nmodule M = cyclic (x)").unwrap_err();
        assert_eq!((e.class, e.line, e.column), (ErrorClass::Semantic, 1, 9));
        let e = parse_problem("ring Z\nmodule M = coker [[12]").unwrap_err();
        assert_eq!(e.class, ErrorClass::Syntax);
        let e = parse_problem("ring Q[x,y] monomial\nmodule M = cyclic (x+y)").unwrap_err();
        assert_eq!((e.class, e.line, e.column), (ErrorClass::Semantic, 2, 20));
        let e = parse_problem("ring Q[x,y] monomial\nmodule M = cyclic (z)").unwrap_err();
        assert!(e.message.contains("unknown variable"));
        let e = parse_problem("ring Z\nmodule M = coker [[1]] @").unwrap_err();
        assert_eq!(e.class, ErrorClass::Lexical);
    }

    #[test]
    fn polynomial_entries() {
        let p = parse_problem("ring GF(5)[x]\nmodule M = coker [[x*(x+4)]]").unwrap();
        let ModuleDecl::Coker(rows) = &p.modules[0].1 else { panic!() };
        assert_eq!(p.ring.format_elem(&rows[0][0]), "x^2+4*x");
    }

    #[test]
    fn round_trip() {
        let src = "ring Z\nmodule A = cyclic (-4)\nmodule M = dsum (A;(6))\nmodule O = cofinite free [1,1] primes (2) >= 5 except (7)\norder = (2),(3)\nparam seed = 3\n";
        let p = parse_problem(src).unwrap();
        let again = parse_problem(&p.to_text()).unwrap();
        assert_eq!(p, again);
        assert_eq!(p.to_text(), again.to_text());
    }
}
