//! Line-oriented text format for quivers, differentials, relations and potentials.
//!
//! ```text
//! # comment
//! vertex <id> [label]
//! arrow <name> <src> -> <tgt> [deg <int>] [weight <int>]
//! homogeneous
//! d <arrow> = <element>
//! relation [<name>:] <element>
//! potential <element>
//! lambda <vertex> = <rational>
//! ```
//!
//! Elements are sums of terms `[rational] path`, where a path is a list of
//! arrow names in juxtaposition order (`alpha beta` applies `beta` first) or a
//! trivial path `e<vertex>`. The zero element is written `0`.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use num_traits::{One, Signed};

use crate::constructions::{AlgebraPresentation, DeformationParameter, Relation};
use crate::dg::DgQuiverAlgebra;
use crate::element::{PathElement, Potential};
use crate::error::{Error, Result};
use crate::quiver::{ArrowId, GradedQuiver, Path, Quiver, VertexId};
use crate::scalar::{format_rational, parse_rational, Scalar};

/// Everything a text file can declare.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Document {
    pub quiver: GradedQuiver,
    pub differential: BTreeMap<ArrowId, PathElement>,
    pub relations: Vec<Relation>,
    pub potential: Option<PathElement>,
    pub lambda: BTreeMap<VertexId, Scalar>,
    /// The differential is declared weight-homogeneous.
    pub homogeneous: bool,
}

impl Document {
    pub fn new(quiver: GradedQuiver) -> Document {
        Document {
            quiver,
            differential: BTreeMap::new(),
            relations: Vec::new(),
            potential: None,
            lambda: BTreeMap::new(),
            homogeneous: false,
        }
    }

    pub fn from_dg(algebra: &DgQuiverAlgebra) -> Document {
        let mut doc = Document::new(algebra.graded_quiver().clone());
        for a in algebra.quiver().arrow_ids() {
            let d = algebra.d(a);
            if !d.is_zero() {
                doc.differential.insert(a, d.clone());
            }
        }
        doc.homogeneous = algebra.is_declared_homogeneous();
        doc
    }

    pub fn from_presentation(p: &AlgebraPresentation) -> Document {
        let mut doc = Document::new(GradedQuiver::ungraded(p.quiver().clone()));
        doc.relations = p.relations().to_vec();
        doc
    }

    pub fn dg_algebra(&self) -> DgQuiverAlgebra {
        let mut d = vec![PathElement::zero(); self.quiver.quiver().num_arrows()];
        for (a, x) in &self.differential {
            d[a.0] = x.clone();
        }
        DgQuiverAlgebra::new(self.quiver.clone(), d, self.homogeneous)
    }

    pub fn presentation(&self) -> Result<AlgebraPresentation> {
        if let Some((a, _)) = self.quiver.degrees().iter().enumerate().find(|(_, &d)| d != 0) {
            return Err(Error::Unsupported(format!(
                "presentations need degree-zero arrows, `{}` has degree {}",
                self.quiver.quiver().arrow_name(ArrowId(a)),
                self.quiver.degrees()[a]
            )));
        }
        AlgebraPresentation::new(self.quiver.quiver().clone(), self.relations.clone())
    }

    pub fn potential(&self) -> Result<Potential> {
        match &self.potential {
            Some(w) => Potential::new(&self.quiver, w.clone()),
            None => Ok(Potential::zero()),
        }
    }

    pub fn deformation(&self) -> DeformationParameter {
        DeformationParameter::from_map(self.quiver.quiver(), &self.lambda)
    }

    /// Serializes to the text format; `parse(&doc.to_text())` reproduces `doc`.
    pub fn to_text(&self) -> String {
        let q = self.quiver.quiver();
        let mut out = String::new();
        for v in q.vertices() {
            match &v.label {
                Some(label) => writeln!(out, "vertex {} {}", v.name, label),
                None => writeln!(out, "vertex {}", v.name),
            }
            .unwrap();
        }
        for a in q.arrow_ids() {
            let arrow = q.arrow(a);
            write!(out, "arrow {} {} -> {}", arrow.name, q.vertex_name(arrow.source), q.vertex_name(arrow.target))
                .unwrap();
            let deg = self.quiver.degree(a);
            if deg != 0 {
                write!(out, " deg {deg}").unwrap();
            }
            if let Some(w) = self.quiver.weight(a) {
                write!(out, " weight {w}").unwrap();
            }
            out.push('\n');
        }
        if self.homogeneous {
            out.push_str("homogeneous\n");
        }
        for (a, x) in &self.differential {
            writeln!(out, "d {} = {}", q.arrow_name(*a), x.display(q)).unwrap();
        }
        for r in &self.relations {
            match &r.name {
                Some(name) => writeln!(out, "relation {}: {}", name, r.element.display(q)),
                None => writeln!(out, "relation {}", r.element.display(q)),
            }
            .unwrap();
        }
        if let Some(w) = &self.potential {
            writeln!(out, "potential {}", w.display(q)).unwrap();
        }
        for (v, c) in &self.lambda {
            writeln!(out, "lambda {} = {}", q.vertex_name(*v), format_rational(c)).unwrap();
        }
        out
    }
}

/// Parses only the quiver declarations of a document.
pub fn parse_quiver(text: &str) -> Result<GradedQuiver> {
    Ok(parse(text)?.quiver)
}

struct Line<'a> {
    number: usize,
    /// Byte offset of each token start plus the token.
    tokens: Vec<(usize, &'a str)>,
    text: &'a str,
}

impl Line<'_> {
    fn err(&self, column_byte: usize, message: impl Into<String>) -> Error {
        Error::Syntax {
            line: self.number,
            column: self.text[..column_byte.min(self.text.len())].chars().count() + 1,
            message: message.into(),
        }
    }

    fn end(&self) -> usize {
        self.text.len()
    }

    fn token(&self, i: usize, what: &str) -> Result<(usize, &str)> {
        self.tokens.get(i).copied().ok_or_else(|| self.err(self.end(), format!("expected {what}")))
    }
}

fn split_line(number: usize, raw: &str) -> Line<'_> {
    let text = match raw.find('#') {
        Some(i) => &raw[..i],
        None => raw,
    };
    let mut tokens = Vec::new();
    let mut start = None;
    for (i, ch) in text.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                tokens.push((s, &text[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        tokens.push((s, &text[s..]));
    }
    Line { number, tokens, text }
}

fn is_vertex_name(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '_' | '\'' | '*' | '.')
}

fn is_arrow_name(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(is_ident_start) && chars.all(is_ident_char)
}

/// Parses a full document.
pub fn parse(text: &str) -> Result<Document> {
    let lines: Vec<Line> = text.lines().enumerate().map(|(i, l)| split_line(i + 1, l)).collect();

    // Declarations first so that later statements may refer to anything in the file.
    let mut builder = Quiver::builder();
    let mut degrees = Vec::new();
    let mut weights: Vec<Option<i64>> = Vec::new();
    for line in &lines {
        let Some(&(_, keyword)) = line.tokens.first() else { continue };
        match keyword {
            "vertex" => {
                let (col, id) = line.token(1, "vertex id")?;
                if !is_vertex_name(id) {
                    return Err(line.err(col, format!("invalid vertex id `{id}`")));
                }
                let label = line.tokens.get(2).map(|&(c, _)| line.text[c..].trim().to_string());
                builder.vertex(id, label).map_err(|e| line.err(col, e.to_string()))?;
            }
            "arrow" => {
                let (col, name) = line.token(1, "arrow name")?;
                if !is_arrow_name(name) {
                    return Err(line.err(col, format!("invalid arrow name `{name}`")));
                }
                let (_, src) = line.token(2, "source vertex")?;
                let (acol, arrow_tok) = line.token(3, "`->`")?;
                if arrow_tok != "->" {
                    return Err(line.err(acol, format!("expected `->`, found `{arrow_tok}`")));
                }
                let (_, tgt) = line.token(4, "target vertex")?;
                let mut deg = None;
                let mut weight = None;
                let mut i = 5;
                while i < line.tokens.len() {
                    let (kcol, key) = line.tokens[i];
                    let (vcol, value) = line.token(i + 1, "integer")?;
                    let n: i64 = value.parse().map_err(|_| line.err(vcol, format!("expected integer, found `{value}`")))?;
                    let slot = match key {
                        "deg" => &mut deg,
                        "weight" => &mut weight,
                        _ => return Err(line.err(kcol, format!("expected `deg` or `weight`, found `{key}`"))),
                    };
                    if slot.replace(n).is_some() {
                        return Err(line.err(kcol, format!("`{key}` given twice")));
                    }
                    i += 2;
                }
                builder.arrow_named(name, src, tgt).map_err(|e| match e {
                    Error::DanglingEndpoint { .. } | Error::DuplicateArrow(_) => e,
                    other => line.err(col, other.to_string()),
                })?;
                degrees.push(deg.unwrap_or(0));
                weights.push(weight);
            }
            "d" | "relation" | "potential" | "lambda" | "homogeneous" => {}
            other => {
                return Err(line.err(line.tokens[0].0, format!("unknown statement `{other}`")));
            }
        }
    }
    let quiver = builder.build();
    if quiver.num_vertices() == 0 {
        return Err(Error::NoVertices);
    }
    for a in quiver.arrow_ids() {
        let name = quiver.arrow_name(a);
        if let Some(rest) = name.strip_prefix('e') {
            if quiver.vertex_by_name(rest).is_ok() {
                return Err(Error::DuplicateArrow(format!("{name} (collides with the trivial path `{name}`)")));
            }
        }
    }
    let weights = if weights.iter().all(Option::is_some) && !weights.is_empty() {
        Some(weights.into_iter().map(Option::unwrap).collect())
    } else if weights.iter().all(Option::is_none) {
        None
    } else {
        return Err(Error::Unsupported("weights must be given for all arrows or for none".into()));
    };
    let graded = GradedQuiver::new(quiver, degrees, weights)?;
    let mut doc = Document::new(graded);

    for line in &lines {
        let Some(&(kcol, keyword)) = line.tokens.first() else { continue };
        let q = doc.quiver.quiver();
        match keyword {
            "homogeneous" => {
                if line.tokens.len() > 1 {
                    return Err(line.err(line.tokens[1].0, "unexpected token"));
                }
                doc.homogeneous = true;
            }
            "d" => {
                let (col, name) = line.token(1, "arrow name")?;
                let a = q.arrow_by_name(name).map_err(|e| line.err(col, e.to_string()))?;
                let (ecol, eq) = line.token(2, "`=`")?;
                if eq != "=" {
                    return Err(line.err(ecol, "expected `=`"));
                }
                let (start, _) = line.token(3, "element")?;
                let x = parse_element_at(q, line, start)?;
                if doc.differential.contains_key(&a) {
                    return Err(line.err(col, format!("differential of `{name}` given twice")));
                }
                if !x.is_zero() {
                    doc.differential.insert(a, x);
                }
            }
            "relation" => {
                let (start, _) = line.token(1, "element")?;
                let body = &line.text[start..];
                let (name, elem_start) = match body.find(':') {
                    Some(i) => {
                        let name = body[..i].trim();
                        if !is_arrow_name(name) {
                            return Err(line.err(start, format!("invalid relation name `{name}`")));
                        }
                        (Some(name.to_string()), start + i + 1)
                    }
                    None => (None, start),
                };
                let element = parse_element_at(q, line, elem_start)?;
                doc.relations.push(Relation { name, element });
            }
            "potential" => {
                let (start, _) = line.token(1, "element")?;
                let w = parse_element_at(q, line, start)?;
                if doc.potential.is_some() {
                    return Err(line.err(kcol, "potential given twice"));
                }
                Potential::new(&doc.quiver, w.clone()).map_err(|e| line.err(start, e.to_string()))?;
                doc.potential = Some(w);
            }
            "lambda" => {
                let (col, name) = line.token(1, "vertex id")?;
                let v = q.vertex_by_name(name).map_err(|e| line.err(col, e.to_string()))?;
                let (ecol, eq) = line.token(2, "`=`")?;
                if eq != "=" {
                    return Err(line.err(ecol, "expected `=`"));
                }
                let (rcol, value) = line.token(3, "rational")?;
                let c = parse_rational(value).ok_or_else(|| line.err(rcol, format!("invalid rational `{value}`")))?;
                if line.tokens.len() > 4 {
                    return Err(line.err(line.tokens[4].0, "unexpected token"));
                }
                if doc.lambda.insert(v, c).is_some() {
                    return Err(line.err(col, format!("lambda for vertex `{name}` given twice")));
                }
            }
            _ => {}
        }
    }
    Ok(doc)
}

#[derive(Debug, Clone, PartialEq)]
enum Tok<'a> {
    Plus,
    Minus,
    Number(&'a str),
    Ident(&'a str),
}

fn lex_element<'a>(text: &'a str, base: usize, line: &Line) -> Result<Vec<(usize, Tok<'a>)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
        } else if c == '+' {
            out.push((base + i, Tok::Plus));
            i += 1;
        } else if c == '-' {
            out.push((base + i, Tok::Minus));
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'/') {
                i += 1;
            }
            out.push((base + start, Tok::Number(&text[start..i])));
        } else if is_ident_start(c) {
            let start = i;
            while i < bytes.len() && is_ident_char(bytes[i] as char) {
                i += 1;
            }
            out.push((base + start, Tok::Ident(&text[start..i])));
        } else {
            return Err(line.err(base + i, format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

fn resolve_path_token(quiver: &Quiver, tok: &str) -> Option<Path> {
    if let Ok(a) = quiver.arrow_by_name(tok) {
        return Some(Path::arrow(quiver, a));
    }
    let v = quiver.vertex_by_name(tok.strip_prefix('e')?).ok()?;
    Some(Path::trivial(v))
}

fn parse_element_at(quiver: &Quiver, line: &Line, start: usize) -> Result<PathElement> {
    let toks = lex_element(&line.text[start..], start, line)?;
    parse_tokens(quiver, &toks, line)
}

fn parse_tokens(quiver: &Quiver, toks: &[(usize, Tok)], line: &Line) -> Result<PathElement> {
    if toks.is_empty() {
        return Err(line.err(line.end(), "expected element"));
    }
    if let [(col, Tok::Number(n))] = toks {
        return match parse_rational(n) {
            Some(c) if num_traits::Zero::is_zero(&c) => Ok(PathElement::zero()),
            _ => Err(line.err(*col, "a bare number is only allowed as `0`")),
        };
    }
    let mut out = PathElement::zero();
    let mut i = 0;
    let mut first = true;
    while i < toks.len() {
        let mut sign = Scalar::one();
        match &toks[i].1 {
            Tok::Plus if !first => i += 1,
            Tok::Minus => {
                sign = -sign;
                i += 1;
            }
            _ if first => {}
            _ => return Err(line.err(toks[i].0, "expected `+` or `-`")),
        }
        first = false;
        let mut coeff = sign;
        if let Some((col, Tok::Number(n))) = toks.get(i) {
            let c = parse_rational(n).ok_or_else(|| line.err(*col, format!("invalid rational `{n}`")))?;
            coeff *= c;
            i += 1;
        }
        let mut path: Option<Path> = None;
        while let Some((col, Tok::Ident(name))) = toks.get(i) {
            let p = resolve_path_token(quiver, name)
                .ok_or_else(|| line.err(*col, format!("unknown arrow `{name}`")))?;
            path = Some(match path {
                None => p,
                Some(prev) => prev
                    .compose(&p)
                    .ok_or_else(|| line.err(*col, format!("`{name}` does not compose with the preceding path")))?,
            });
            i += 1;
        }
        let Some(path) = path else {
            let col = toks.get(i).map(|t| t.0).unwrap_or(line.end());
            return Err(line.err(col, "expected path"));
        };
        out.add_term(path, coeff);
    }
    Ok(out)
}

/// Parses a standalone element such as `alpha beta - 2 e1`.
pub fn parse_element(quiver: &Quiver, text: &str) -> Result<PathElement> {
    let line = split_line(1, text);
    if line.text.trim().is_empty() {
        return Err(line.err(0, "expected element"));
    }
    parse_element_at(quiver, &line, 0)
}

pub struct ElementDisplay<'a> {
    element: &'a PathElement,
    quiver: &'a Quiver,
}

impl<'a> ElementDisplay<'a> {
    pub(crate) fn new(element: &'a PathElement, quiver: &'a Quiver) -> Self {
        ElementDisplay { element, quiver }
    }
}

impl fmt::Display for ElementDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.element.is_zero() {
            return f.write_str("0");
        }
        for (i, (p, c)) in self.element.terms().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let magnitude = c.abs();
            if !magnitude.is_one() {
                write!(f, "{} ", format_rational(&magnitude))?;
            }
            write!(f, "{}", p.display(self.quiver))?;
        }
        Ok(())
    }
}
