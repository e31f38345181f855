//! Line-oriented quiver language (`.qa` files).
//!
//! ```text
//! # comments start with '#'
//! vertices: 1 2 3
//! arrow a1: 2 -> 1
//! arrow b1: 3 -> 2
//! relations:
//! a1*b1
//! a1*b2 - a2*b1
//! -1/2 a1*b3 + a3*b1
//! ```
//!
//! `a*b` means "first `b`, then `a`": it is a path from `source(b)` to
//! `target(a)`. The optional header `convention: before` flips this so
//! that `a*b` means "first `a`, then `b`".

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Quiver, RelationPoly};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Slash,
    Star,
    Plus,
    Minus,
}

fn lex(line: &str, line_no: usize) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = line.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            ' ' | '\t' | '\r' => i += 1,
            '*' | '/' | '+' | '-' => {
                out.push((
                    match c {
                        '*' => Tok::Star,
                        '/' => Tok::Slash,
                        '+' => Tok::Plus,
                        _ => Tok::Minus,
                    },
                    col,
                ));
                i += 1;
            }
            d if d.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push((Tok::Num(s.parse().expect("digits")), col));
            }
            a if a.is_alphabetic() || a == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                    i += 1;
                }
                out.push((Tok::Ident(chars[start..i].iter().collect()), col));
            }
            other => {
                return Err(Error::Syntax { line: line_no, column: col, message: format!("unexpected character `{other}`") })
            }
        }
    }
    Ok(out)
}

/// One parsed term: coefficient and a path given by arrow indices in
/// composition order (outermost first), or an idempotent.
#[derive(Clone, Debug)]
pub(crate) enum PathRef {
    Idempotent(usize),
    Arrows(Vec<usize>),
}

pub(crate) struct LinearCombination {
    pub terms: Vec<(BigRational, PathRef)>,
}

/// Parses `[+-] [coef [*]] path (+|- [coef [*]] path)*`.
pub(crate) fn parse_combination(
    quiver: &Quiver,
    text: &str,
    line_no: usize,
    after: bool,
    allow_idempotents: bool,
) -> Result<LinearCombination> {
    let toks = lex(text, line_no)?;
    let end_col = text.chars().count() + 1;
    let mut pos = 0;
    let mut terms = Vec::new();
    let syntax = |col: usize, message: &str| Error::Syntax { line: line_no, column: col, message: message.to_string() };
    if toks.is_empty() {
        return Err(syntax(1, "empty expression"));
    }
    let mut first = true;
    while pos < toks.len() {
        let mut sign = BigRational::one();
        match &toks[pos].0 {
            Tok::Plus => pos += 1,
            Tok::Minus => {
                sign = -sign;
                pos += 1;
            }
            _ if first => {}
            _ => return Err(syntax(toks[pos].1, "expected `+` or `-`")),
        }
        first = false;
        let mut coef = BigRational::one();
        if let Some((Tok::Num(n), col)) = toks.get(pos) {
            let col = *col;
            pos += 1;
            let mut den = BigInt::one();
            if let Some((Tok::Slash, _)) = toks.get(pos) {
                pos += 1;
                match toks.get(pos) {
                    Some((Tok::Num(d), _)) => {
                        den = d.clone();
                        pos += 1;
                    }
                    Some((_, c)) => return Err(syntax(*c, "expected a denominator")),
                    None => return Err(syntax(end_col, "expected a denominator")),
                }
            }
            if den.is_zero() {
                return Err(syntax(col, "zero denominator"));
            }
            coef = BigRational::new(n.clone(), den);
            if let Some((Tok::Star, _)) = toks.get(pos) {
                pos += 1;
            }
        }
        let mut names = Vec::new();
        loop {
            match toks.get(pos) {
                Some((Tok::Ident(name), col)) => {
                    names.push((name.clone(), *col));
                    pos += 1;
                }
                Some((_, col)) => return Err(syntax(*col, "expected an arrow name")),
                None => return Err(syntax(end_col, "expected an arrow name")),
            }
            if let Some((Tok::Star, _)) = toks.get(pos) {
                pos += 1;
            } else {
                break;
            }
        }
        let path = resolve_path(quiver, &names, line_no, after, allow_idempotents)?;
        terms.push((sign * coef, path));
    }
    Ok(LinearCombination { terms })
}

fn resolve_path(
    quiver: &Quiver,
    names: &[(String, usize)],
    line_no: usize,
    after: bool,
    allow_idempotents: bool,
) -> Result<PathRef> {
    if allow_idempotents && names.len() == 1 && quiver.arrow_index(&names[0].0).is_none() {
        if let Some(label) = names[0].0.strip_prefix('e') {
            if let Some(v) = quiver.vertex_index(label) {
                return Ok(PathRef::Idempotent(v));
            }
        }
    }
    let mut word = Vec::with_capacity(names.len());
    for (name, _) in names {
        let idx = quiver
            .arrow_index(name)
            .ok_or_else(|| Error::UnknownArrow { line: line_no, name: name.clone() })?;
        word.push(idx);
    }
    if !after {
        word.reverse();
    }
    // word[0] is applied last: source(word[k]) must equal target(word[k+1])
    for w in word.windows(2) {
        if quiver.arrows[w[0]].source != quiver.arrows[w[1]].target {
            let path = names.iter().map(|(n, _)| n.as_str()).collect::<Vec<_>>().join("*");
            return Err(Error::NonComposable { line: line_no, path });
        }
    }
    Ok(PathRef::Arrows(word))
}

/// Parses a `.qa` source into a quiver and its relations.
pub fn parse_quiver_file(text: &str) -> Result<(Quiver, Vec<RelationPoly>)> {
    let mut vertices: Option<Vec<String>> = None;
    let mut quiver = Quiver::default();
    let mut after = true;
    let mut in_relations = false;
    let mut pending: Vec<(usize, String)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let trimmed = line.trim_start();
        let indent = line.len() - trimmed.len();
        if let Some(rest) = trimmed.strip_prefix("vertices:") {
            if vertices.is_some() {
                return Err(Error::Syntax { line: line_no, column: indent + 1, message: "duplicate vertices line".into() });
            }
            let labels: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
            for (i, l) in labels.iter().enumerate() {
                if labels[..i].contains(l) {
                    return Err(Error::Quiver(format!("duplicate vertex `{l}`")));
                }
            }
            quiver.vertices = labels.clone();
            vertices = Some(labels);
            in_relations = false;
        } else if let Some(rest) = trimmed.strip_prefix("convention:") {
            after = match rest.trim() {
                "after" => true,
                "before" => false,
                other => {
                    return Err(Error::Syntax {
                        line: line_no,
                        column: indent + 12,
                        message: format!("unknown convention `{other}` (expected `after` or `before`)"),
                    })
                }
            };
        } else if let Some(rest) = trimmed.strip_prefix("arrow ") {
            in_relations = false;
            let err = |message: &str| Error::Syntax { line: line_no, column: indent + 1, message: message.into() };
            let (name, ends) = rest.split_once(':').ok_or_else(|| err("expected `arrow NAME: SOURCE -> TARGET`"))?;
            let (src, tgt) = ends.split_once("->").ok_or_else(|| err("expected `SOURCE -> TARGET`"))?;
            let name = name.trim();
            if name.is_empty()
                || name.starts_with(|c: char| c.is_ascii_digit())
                || !name.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
            {
                return Err(err("invalid arrow name"));
            }
            if quiver.arrow_index(name).is_some() {
                return Err(Error::Quiver(format!("duplicate arrow `{name}`")));
            }
            if vertices.is_none() {
                return Err(err("arrows must follow the vertices line"));
            }
            let s = quiver
                .vertex_index(src.trim())
                .ok_or_else(|| Error::Quiver(format!("line {line_no}: undeclared vertex `{}`", src.trim())))?;
            let t = quiver
                .vertex_index(tgt.trim())
                .ok_or_else(|| Error::Quiver(format!("line {line_no}: undeclared vertex `{}`", tgt.trim())))?;
            quiver.arrows.push(super::ArrowSpec { name: name.to_string(), source: s, target: t });
        } else if let Some(rest) = trimmed.strip_prefix("relations:") {
            in_relations = true;
            if !rest.trim().is_empty() {
                pending.push((line_no, rest.to_string()));
            }
        } else if in_relations {
            pending.push((line_no, line.to_string()));
        } else {
            return Err(Error::Syntax { line: line_no, column: indent + 1, message: "unrecognized line".into() });
        }
    }
    if vertices.is_none() {
        return Err(Error::Syntax { line: 1, column: 1, message: "missing `vertices:` line".into() });
    }

    let mut relations = Vec::new();
    for (line_no, text) in pending {
        let combo = parse_combination(&quiver, &text, line_no, after, false)?;
        let mut terms = Vec::new();
        for (c, p) in combo.terms {
            let PathRef::Arrows(word) = p else { unreachable!("idempotents disabled") };
            terms.push((c, word));
        }
        let rel = RelationPoly { terms };
        rel.validate(&quiver, line_no)?;
        relations.push(rel);
    }
    Ok((quiver, relations))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn alg_a_counts() {
        let (q, rels) = parse_quiver_file(fixtures::ALG_A).unwrap();
        assert_eq!(q.vertices.len(), 3);
        assert_eq!(q.arrows.len(), 6);
        assert_eq!(rels.len(), 6);
    }

    #[test]
    fn hereditary_has_no_relations() {
        let (q, rels) = parse_quiver_file(fixtures::ALG_B0).unwrap();
        assert_eq!(q.arrows.len(), 2);
        assert!(rels.is_empty());
    }

    #[test]
    fn non_parallel_rejected() {
        let src = "vertices: 1 2 3\narrow a1: 2 -> 1\narrow b1: 3 -> 2\narrow c: 3 -> 2\nrelations:\na1*b1 + c\n";
        assert!(matches!(parse_quiver_file(src), Err(Error::NonParallel { line: 6 })));
    }

    #[test]
    fn errors_carry_positions() {
        let src = "vertices: 1 2\narrow a: 1 -> 2\nrelations:\na * ?\n";
        match parse_quiver_file(src) {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (4, 5)),
            other => panic!("unexpected {other:?}"),
        }
        let src = "vertices: 1 2\narrow a: 1 -> 2\nrelations:\na*zz\n";
        assert!(matches!(parse_quiver_file(src), Err(Error::UnknownArrow { line: 4, .. })));
        let src = "vertices: 1 2\narrow a: 1 -> 2\nrelations:\na*a\n";
        assert!(matches!(parse_quiver_file(src), Err(Error::NonComposable { line: 4, .. })));
    }

    #[test]
    fn coefficients_and_convention() {
        let src = "vertices: 1 2 3\narrow a: 2 -> 1\narrow b: 3 -> 2\narrow c: 3 -> 1\nrelations:\n-1/2 a*b + 3*a*b\n";
        let (_, rels) = parse_quiver_file(src).unwrap();
        assert_eq!(rels[0].terms.len(), 2);
        assert_eq!(rels[0].terms[0].0, BigRational::new((-1).into(), 2.into()));
        let src = "convention: before\nvertices: 1 2 3\narrow a: 2 -> 1\narrow b: 3 -> 2\nrelations:\nb*a\n";
        let (_, rels) = parse_quiver_file(src).unwrap();
        assert_eq!(rels[0].terms[0].1, vec![0, 1]);
    }
}
