//! Text front end for presentations and expressions.
//!
//! A presentation file is a sequence of `key: value` lines and indented
//! section bodies:
//!
//! ```text
//! name: su2
//! generators: alpha beta gamma delta
//! order: alpha beta gamma delta
//! weights: alpha=1 delta=1
//! relations:
//!   beta*alpha = q^-1*alpha*beta
//!   alpha*delta = 1 + q*beta*gamma
//! star:
//!   alpha = delta
//! hopf:
//!   delta alpha = alpha @ alpha + beta @ gamma
//!   epsilon alpha = 1
//!   antipode alpha = delta
//! ```
//!
//! Generators may carry a degree as `name:degree`.  Expressions are sums of
//! products; juxtaposition and `*` both multiply, `^` takes integer
//! powers (negative only for invertible scalars), numbers may be written
//! `n/d`, and `q s t p` are the scalar parameters.  In a tensor `@`
//! separates the slots and binds looser than multiplication.  `#` starts
//! a comment.

use std::fmt;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use super::{AlgebraError, Ambiguity, Element, Generator, Presentation, Word};
use crate::ring::Ring;
use crate::scalars::{Laurent, Param};
use crate::tensoralg::{HopfStructure, Tensor};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

fn err(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        column,
        message: message.into(),
    }
}

/// A parsed presentation together with the outcome of its confluence
/// check.  Non-confluent systems are still returned.
#[derive(Debug, Clone)]
pub struct ParsedPresentation {
    pub presentation: Presentation<Laurent>,
    pub ambiguities: Vec<Ambiguity<Laurent>>,
}

impl ParsedPresentation {
    pub fn is_confluent(&self) -> bool {
        self.ambiguities.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
    end_col: usize,
}

impl Lexer {
    fn new(text: &str, line: usize, col0: usize) -> Result<Self, ParseError> {
        let chars: Vec<char> = text.chars().collect();
        let mut toks = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let col = col0 + i;
            if c.is_whitespace() {
                i += 1;
            } else if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                toks.push((Tok::Num(s.parse().unwrap()), col));
            } else if c.is_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                toks.push((Tok::Ident(chars[start..i].iter().collect()), col));
            } else if "+-*/^()@".contains(c) {
                toks.push((Tok::Sym(c), col));
                i += 1;
            } else {
                return Err(err(line, col, format!("unexpected character `{c}`")));
            }
        }
        Ok(Lexer {
            toks,
            pos: 0,
            line,
            end_col: col0 + chars.len(),
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map(|&(_, c)| c).unwrap_or(self.end_col)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        err(self.line, self.col(), message)
    }
}

struct ExprParser<'a> {
    lex: Lexer,
    names: &'a [String],
}

impl ExprParser<'_> {
    fn sum(&mut self) -> Result<Element<Laurent>, ParseError> {
        let mut acc = Element::zero();
        let mut sign = if self.lex.eat('-') {
            -1
        } else {
            self.lex.eat('+');
            1
        };
        loop {
            let t = self.product()?;
            acc = if sign < 0 { acc - t } else { acc + t };
            if self.lex.eat('+') {
                sign = 1;
            } else if self.lex.eat('-') {
                sign = -1;
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(
            self.lex.peek(),
            Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::Sym('('))
        )
    }

    fn product(&mut self) -> Result<Element<Laurent>, ParseError> {
        let mut acc = self.power()?;
        loop {
            if self.lex.eat('*') {
                let f = self.power()?;
                acc = acc.free_mul(&f);
            } else if self.starts_factor() {
                let f = self.power()?;
                acc = acc.free_mul(&f);
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<Element<Laurent>, ParseError> {
        let base = self.atom()?;
        if !self.lex.eat('^') {
            return Ok(base);
        }
        let neg = self.lex.eat('-');
        let col = self.lex.col();
        let n = match self.lex.next() {
            Some(Tok::Num(n)) => n,
            _ => return Err(err(self.lex.line, col, "expected an integer exponent")),
        };
        let n: i64 = n
            .try_into()
            .map_err(|_| err(self.lex.line, col, "exponent too large"))?;
        if neg {
            let scalar = base
                .words()
                .all(|w| w.is_empty())
                .then(|| base.constant_term())
                .and_then(|c| c.pow_i(-n));
            return match scalar {
                Some(c) => Ok(Element::scalar(c)),
                None => Err(err(self.lex.line, col, "negative power of a non-invertible factor")),
            };
        }
        let mut acc = Element::one();
        for _ in 0..n {
            acc = acc.free_mul(&base);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Element<Laurent>, ParseError> {
        let col = self.lex.col();
        match self.lex.next() {
            Some(Tok::Num(n)) => {
                let mut r = BigRational::from_integer(n);
                if self.lex.eat('/') {
                    let dcol = self.lex.col();
                    match self.lex.next() {
                        Some(Tok::Num(d)) if d != BigInt::from(0) => {
                            r /= BigRational::from_integer(d);
                        }
                        _ => return Err(err(self.lex.line, dcol, "expected a nonzero denominator")),
                    }
                }
                Ok(Element::scalar(Laurent::constant(r)))
            }
            Some(Tok::Ident(name)) => {
                if let Some(g) = self.names.iter().position(|n| *n == name) {
                    Ok(Element::word(Word::single(g as u16)))
                } else if let Some(p) = Param::from_name(&name) {
                    Ok(Element::scalar(Laurent::param(p)))
                } else {
                    Err(err(self.lex.line, col, format!("unknown symbol `{name}`")))
                }
            }
            Some(Tok::Sym('(')) => {
                let e = self.sum()?;
                if !self.lex.eat(')') {
                    return Err(self.lex.error("expected `)`"));
                }
                Ok(e)
            }
            Some(t) => Err(err(self.lex.line, col, format!("unexpected `{}`", tok_text(&t)))),
            None => Err(err(self.lex.line, col, "unexpected end of expression")),
        }
    }

    fn tensor_sum(&mut self, rank: usize) -> Result<Tensor<Laurent>, ParseError> {
        let mut acc = Tensor::zero(rank);
        let mut negate = if self.lex.eat('-') {
            true
        } else {
            self.lex.eat('+');
            false
        };
        loop {
            let col = self.lex.col();
            let mut slots = vec![self.product()?];
            while self.lex.eat('@') {
                slots.push(self.product()?);
            }
            if slots.len() != rank {
                return Err(err(
                    self.lex.line,
                    col,
                    format!("expected {rank} tensor slots, found {}", slots.len()),
                ));
            }
            let refs: Vec<&Element<Laurent>> = slots.iter().collect();
            let t = Tensor::pure(&refs);
            acc = if negate { acc - t } else { acc + t };
            if self.lex.eat('+') {
                negate = false;
            } else if self.lex.eat('-') {
                negate = true;
            } else {
                return Ok(acc);
            }
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.lex.peek() {
            None => Ok(()),
            Some(t) => Err(self.lex.error(format!("unexpected `{}`", tok_text(t)))),
        }
    }
}

fn tok_text(t: &Tok) -> String {
    match t {
        Tok::Num(n) => n.to_string(),
        Tok::Ident(s) => s.clone(),
        Tok::Sym(c) => c.to_string(),
    }
}

fn parse_expr_at(text: &str, names: &[String], line: usize, col: usize) -> Result<Element<Laurent>, ParseError> {
    let mut p = ExprParser {
        lex: Lexer::new(text, line, col)?,
        names,
    };
    if p.lex.peek().is_none() {
        return Err(p.lex.error("empty expression"));
    }
    let e = p.sum()?;
    p.finish()?;
    Ok(e)
}

fn parse_tensor_at(
    text: &str,
    names: &[String],
    rank: usize,
    line: usize,
    col: usize,
) -> Result<Tensor<Laurent>, ParseError> {
    let mut p = ExprParser {
        lex: Lexer::new(text, line, col)?,
        names,
    };
    if p.lex.peek().is_none() {
        return Err(p.lex.error("empty expression"));
    }
    let t = p.tensor_sum(rank)?;
    p.finish()?;
    Ok(t)
}

fn names_of<R>(pres: &Presentation<R>) -> Vec<String>
where
    R: Ring,
{
    pres.generators().iter().map(|g| g.name.clone()).collect()
}

/// Parses an expression over `pres`'s generators and reduces it to normal
/// form.
pub fn parse_element(pres: &Presentation<Laurent>, text: &str) -> Result<Element<Laurent>, ParseError> {
    let raw = parse_expr_at(text, &names_of(pres), 1, 1)?;
    Ok(pres.normal_form(&raw))
}

/// Parses a tensor expression whose slots live in the given presentations
/// (one per slot), reducing each slot to normal form.
pub fn parse_tensor(pres: &[&Presentation<Laurent>], text: &str) -> Result<Tensor<Laurent>, ParseError> {
    let mut names: Vec<String> = Vec::new();
    for p in pres {
        for n in names_of(p) {
            if !names.contains(&n) {
                names.push(n);
            }
        }
    }
    let raw = parse_tensor_at(text, &names, pres.len(), 1, 1)?;
    let mut out = raw;
    for (slot, p) in pres.iter().enumerate() {
        let local = names_of(p);
        let mut bad = None;
        out = out.map_slot(slot, |w| {
            let mapped: Option<Vec<u16>> = w
                .letters()
                .iter()
                .map(|&g| local.iter().position(|n| *n == names[g as usize]).map(|i| i as u16))
                .collect();
            match mapped {
                Some(m) => p.normal_form_word(&Word::from_gens(m)),
                None => {
                    bad = Some(names[w.letters()[0] as usize].clone());
                    Element::zero()
                }
            }
        });
        if let Some(name) = bad {
            return Err(err(1, 1, format!("symbol `{name}` does not belong to slot {}", slot + 1)));
        }
    }
    Ok(out)
}

struct Line<'a> {
    number: usize,
    indent: usize,
    text: &'a str,
}

fn strip_comment(s: &str) -> &str {
    match s.find('#') {
        Some(i) => &s[..i],
        None => s,
    }
}

/// Parses a presentation file, orients its relations and runs the
/// confluence check.
pub fn parse_presentation(text: &str) -> Result<ParsedPresentation, ParseError> {
    let lines: Vec<Line> = text
        .lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let body = strip_comment(raw);
            let trimmed = body.trim_end();
            let content = trimmed.trim_start();
            if content.is_empty() {
                None
            } else {
                Some(Line {
                    number: i + 1,
                    indent: trimmed.len() - content.len(),
                    text: content,
                })
            }
        })
        .collect();

    let mut name: Option<String> = None;
    let mut gens: Option<(usize, Vec<Generator>)> = None;
    let mut order: Option<(usize, usize, Vec<String>)> = None;
    let mut weights: Vec<(usize, usize, String, i32)> = Vec::new();
    let mut relations: Vec<&Line> = Vec::new();
    let mut star: Vec<&Line> = Vec::new();
    let mut hopf: Vec<&Line> = Vec::new();
    let mut section: Option<&str> = None;

    for line in &lines {
        if line.indent > 0 {
            match section {
                Some("relations") => relations.push(line),
                Some("star") => star.push(line),
                Some("hopf") => hopf.push(line),
                _ => return Err(err(line.number, line.indent + 1, "indented line outside a section")),
            }
            continue;
        }
        let Some(colon) = line.text.find(':') else {
            return Err(err(line.number, 1, "expected `key:`"));
        };
        let key = line.text[..colon].trim();
        let value = line.text[colon + 1..].trim();
        let vcol = line.text.len() - line.text[colon + 1..].trim_start().len() + 1;
        section = None;
        match key {
            "name" => name = Some(value.to_string()),
            "generators" => {
                let mut list = Vec::new();
                let mut search = colon + 1;
                for item in value.split_whitespace() {
                    let off = line.text[search..].find(item).map(|i| i + search).unwrap_or(search);
                    let col = off + 1;
                    search = off + item.len();
                    let (gname, degree) = match item.split_once(':') {
                        Some((n, d)) => {
                            let d: u32 = d
                                .parse()
                                .map_err(|_| err(line.number, col, format!("bad degree in `{item}`")))?;
                            (n, d)
                        }
                        None => (item, 1),
                    };
                    if !is_ident(gname) {
                        return Err(err(line.number, col, format!("bad generator name `{gname}`")));
                    }
                    if Param::from_name(gname).is_some() {
                        return Err(err(
                            line.number,
                            col,
                            format!("generator `{gname}` clashes with a scalar parameter"),
                        ));
                    }
                    let mut g = Generator::new(gname);
                    g.degree = degree;
                    list.push(g);
                }
                if list.is_empty() {
                    return Err(err(line.number, vcol, "empty generator list"));
                }
                gens = Some((line.number, list));
            }
            "order" => order = Some((line.number, vcol, value.split_whitespace().map(String::from).collect())),
            "weights" => {
                for item in value.split_whitespace() {
                    let col = line.text.find(item).map(|i| i + 1).unwrap_or(vcol);
                    let Some((g, w)) = item.split_once('=') else {
                        return Err(err(line.number, col, format!("expected `name=weight`, found `{item}`")));
                    };
                    let w: i32 = w
                        .parse()
                        .map_err(|_| err(line.number, col, format!("bad weight in `{item}`")))?;
                    weights.push((line.number, col, g.to_string(), w));
                }
            }
            "relations" | "star" | "hopf" => {
                if !value.is_empty() {
                    return Err(err(line.number, vcol, format!("`{key}:` takes an indented body")));
                }
                section = Some(match key {
                    "relations" => "relations",
                    "star" => "star",
                    _ => "hopf",
                });
            }
            other => return Err(err(line.number, 1, format!("unknown key `{other}`"))),
        }
    }

    let Some((gline, mut generators)) = gens else {
        let at = lines.last().map(|l| l.number).unwrap_or(1);
        return Err(err(at, 1, "missing `generators:` line"));
    };
    if let Some((oline, ocol, list)) = order {
        let mut sorted = Vec::with_capacity(generators.len());
        for n in &list {
            match generators.iter().position(|g| &g.name == n) {
                Some(i) => sorted.push(generators[i].clone()),
                None => return Err(err(oline, ocol, format!("unknown symbol `{n}` in order"))),
            }
        }
        if sorted.len() != generators.len()
            || (0..sorted.len()).any(|i| sorted[..i].iter().any(|g| g.name == sorted[i].name))
        {
            return Err(err(oline, ocol, "order must list every generator exactly once"));
        }
        generators = sorted;
    }
    for (l, c, g, w) in weights {
        match generators.iter_mut().find(|x| x.name == g) {
            Some(x) => x.weight = w,
            None => return Err(err(l, c, format!("unknown symbol `{g}` in weights"))),
        }
    }
    let names: Vec<String> = generators.iter().map(|g| g.name.clone()).collect();

    let mut rels = Vec::new();
    for line in &relations {
        let (lhs, rhs, rcol) = split_eq(line)?;
        let l = parse_expr_at(lhs, &names, line.number, line.indent + 1)?;
        let r = parse_expr_at(rhs, &names, line.number, rcol)?;
        rels.push((line.number, l - r));
    }
    let name = name.unwrap_or_else(|| "unnamed".into());
    let mut pres = Presentation::new(name, generators.clone(), rels.iter().map(|(_, e)| e.clone()).collect())
        .map_err(|e| algebra_err(e, gline, &rels))?;

    if !star.is_empty() {
        let mut images: Vec<Option<Element<Laurent>>> = vec![None; names.len()];
        for line in &star {
            let (lhs, rhs, rcol) = split_eq(line)?;
            let g = gen_index(&names, lhs.trim(), line.number, line.indent + 1)?;
            if images[g].is_some() {
                return Err(err(line.number, line.indent + 1, format!("duplicate star image for `{}`", names[g])));
            }
            images[g] = Some(parse_expr_at(rhs, &names, line.number, rcol)?);
        }
        let images = collect_all(images, &names, star[0].number, "star image")?;
        pres = pres.with_star(images).map_err(|e| err(star[0].number, 1, e.to_string()))?;
    }

    if !hopf.is_empty() {
        let n = names.len();
        let mut delta: Vec<Option<Tensor<Laurent>>> = vec![None; n];
        let mut eps: Vec<Option<Laurent>> = vec![None; n];
        let mut anti: Vec<Option<Element<Laurent>>> = vec![None; n];
        for line in &hopf {
            let (lhs, rhs, rcol) = split_eq(line)?;
            let mut parts = lhs.split_whitespace();
            let kind = parts.next().unwrap_or("");
            let gname = parts.next().unwrap_or("");
            if parts.next().is_some() {
                return Err(err(line.number, line.indent + 1, "expected `<map> <generator> = ...`"));
            }
            let gcol = line.indent + 1 + lhs.find(gname).unwrap_or(0);
            let g = gen_index(&names, gname, line.number, gcol)?;
            let dup = || err(line.number, line.indent + 1, format!("duplicate `{kind}` for `{gname}`"));
            match kind {
                "delta" => {
                    if delta[g].is_some() {
                        return Err(dup());
                    }
                    delta[g] = Some(parse_tensor_at(rhs, &names, 2, line.number, rcol)?);
                }
                "epsilon" => {
                    if eps[g].is_some() {
                        return Err(dup());
                    }
                    let e = parse_expr_at(rhs, &names, line.number, rcol)?;
                    if e.words().any(|w| !w.is_empty()) {
                        return Err(err(line.number, rcol, "counit value must be a scalar"));
                    }
                    eps[g] = Some(e.constant_term());
                }
                "antipode" => {
                    if anti[g].is_some() {
                        return Err(dup());
                    }
                    anti[g] = Some(parse_expr_at(rhs, &names, line.number, rcol)?);
                }
                other => {
                    return Err(err(
                        line.number,
                        line.indent + 1,
                        format!("unknown Hopf map `{other}` (expected delta, epsilon or antipode)"),
                    ))
                }
            }
        }
        let first = hopf[0].number;
        let structure = HopfStructure {
            coproduct: collect_all(delta, &names, first, "delta")?,
            counit: collect_all(eps, &names, first, "epsilon")?,
            antipode: collect_all(anti, &names, first, "antipode")?,
        };
        pres = pres.with_hopf(structure).map_err(|e| err(first, 1, e.to_string()))?;
    }

    let ambiguities = pres.check_confluence();
    Ok(ParsedPresentation {
        presentation: pres,
        ambiguities,
    })
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_')
}

fn split_eq<'a>(line: &Line<'a>) -> Result<(&'a str, &'a str, usize), ParseError> {
    let Some(i) = line.text.find('=') else {
        return Err(err(line.number, line.indent + 1, "expected `=`"));
    };
    Ok((&line.text[..i], &line.text[i + 1..], line.indent + i + 2))
}

fn gen_index(names: &[String], name: &str, line: usize, col: usize) -> Result<usize, ParseError> {
    names
        .iter()
        .position(|n| n == name)
        .ok_or_else(|| err(line, col, format!("unknown symbol `{name}`")))
}

fn collect_all<T>(items: Vec<Option<T>>, names: &[String], line: usize, what: &str) -> Result<Vec<T>, ParseError> {
    items
        .into_iter()
        .enumerate()
        .map(|(i, x)| x.ok_or_else(|| err(line, 1, format!("missing {what} for `{}`", names[i]))))
        .collect()
}

fn algebra_err(e: AlgebraError, gline: usize, rels: &[(usize, Element<Laurent>)]) -> ParseError {
    let line = match &e {
        AlgebraError::TrivialRelation(i)
        | AlgebraError::ConstantRelation(i)
        | AlgebraError::NonInvertibleLead { index: i, .. } => rels[*i].0,
        AlgebraError::DuplicateLead { second, .. } => rels[*second].0,
        _ => gline,
    };
    err(line, 1, e.to_string())
}

/// Renders a presentation in the file format; parsing the result gives
/// back an equal presentation.
pub fn render_presentation<R: Ring>(pres: &Presentation<R>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "name: {}", pres.name());
    let gens: Vec<String> = pres
        .generators()
        .iter()
        .map(|g| {
            if g.degree == 1 {
                g.name.clone()
            } else {
                format!("{}:{}", g.name, g.degree)
            }
        })
        .collect();
    let _ = writeln!(out, "generators: {}", gens.join(" "));
    let names: Vec<&str> = pres.generators().iter().map(|g| g.name.as_str()).collect();
    let _ = writeln!(out, "order: {}", names.join(" "));
    let weighted: Vec<String> = pres
        .generators()
        .iter()
        .filter(|g| g.weight != 0)
        .map(|g| format!("{}={}", g.name, g.weight))
        .collect();
    if !weighted.is_empty() {
        let _ = writeln!(out, "weights: {}", weighted.join(" "));
    }
    if !pres.rules().is_empty() {
        out.push_str("relations:\n");
        for r in pres.rules() {
            let _ = writeln!(out, "  {} = {}", pres.render_word(&r.lhs), pres.render(&r.rhs));
        }
    }
    if let Some(images) = pres.star_images() {
        out.push_str("star:\n");
        for (g, img) in pres.generators().iter().zip(images) {
            let _ = writeln!(out, "  {} = {}", g.name, pres.render(img));
        }
    }
    if let Some(h) = pres.hopf() {
        out.push_str("hopf:\n");
        for (i, g) in pres.generators().iter().enumerate() {
            let _ = writeln!(out, "  delta {} = {}", g.name, pres.render_tensor(&h.coproduct[i]));
        }
        for (i, g) in pres.generators().iter().enumerate() {
            let _ = writeln!(out, "  epsilon {} = {}", g.name, h.counit[i]);
        }
        for (i, g) in pres.generators().iter().enumerate() {
            let _ = writeln!(out, "  antipode {} = {}", g.name, pres.render(&h.antipode[i]));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = "\
name: xq
generators: zm zp
relations:
  zp*zm = q^2*zm*zp + 1 - q^2
star:
  zp = zm
  zm = zp
";

    #[test]
    fn parses_and_round_trips() {
        let p = parse_presentation(SMALL).unwrap();
        assert!(p.is_confluent());
        let text = render_presentation(&p.presentation);
        let again = parse_presentation(&text).unwrap();
        assert_eq!(again.presentation, p.presentation);
        assert_eq!(render_presentation(&again.presentation), text);
    }

    #[test]
    fn empty_generator_list_is_an_error() {
        let e = parse_presentation("name: x\ngenerators:\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.message.contains("empty generator list"));
    }

    #[test]
    fn unknown_symbol_is_named_with_position() {
        let e = parse_presentation("generators: a b\nrelations:\n  b*a = w*a*b\n").unwrap_err();
        assert_eq!((e.line, e.column), (3, 9));
        assert!(e.message.contains("unknown symbol `w`"), "{e}");
    }

    #[test]
    fn non_invertible_leading_coefficient_is_rejected() {
        let e = parse_presentation("generators: a b\nrelations:\n  (1 + q)*b*a = a*b\n").unwrap_err();
        assert_eq!(e.line, 3);
        assert!(e.message.contains("not invertible"));
    }

    #[test]
    fn expression_syntax() {
        let p = parse_presentation(SMALL).unwrap().presentation;
        let a = parse_element(&p, "2/3 q^-1 zm zp - (zm)^2").unwrap();
        let b = parse_element(&p, "-zm*zm + (2/3)*q^-1*zm*zp").unwrap();
        assert_eq!(a, b);
        let rendered = p.render(&a);
        assert_eq!(parse_element(&p, &rendered).unwrap(), a);
        assert!(parse_element(&p, "zm^-1").is_err());
        assert!(parse_element(&p, "zm +").is_err());
    }

    #[test]
    fn tensors_parse_slotwise() {
        let p = parse_presentation(SMALL).unwrap().presentation;
        let t = parse_tensor(&[&p, &p], "zp@1 + q*zm @ zp zm").unwrap();
        assert_eq!(t.rank(), 2);
        assert_eq!(t.len(), 3);
        assert!(parse_tensor(&[&p, &p], "zp").is_err());
    }
}
