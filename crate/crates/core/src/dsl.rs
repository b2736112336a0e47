//! Text format for quivers.
//!
//! ```text
//! # comment
//! quiver Q {
//!     vertices: v, w;
//!     a: v -> w;
//!     b: w -> v [weight = 3/2];
//! }
//! ```

use std::collections::HashSet;
use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::Zero;

use crate::field::{format_rational, parse_rational};
use crate::quiver::{ArrowSpec, Quiver, QuiverError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DslError {
    #[error("{line}:{col}: syntax error: {message}")]
    Syntax {
        line: usize,
        col: usize,
        message: String,
    },
    #[error("{line}:{col}: {error}")]
    Invalid {
        line: usize,
        col: usize,
        error: QuiverError,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(String),
    Punct(&'static str),
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Int(s) => format!("number `{s}`"),
            Tok::Punct(p) => format!("`{p}`"),
            Tok::Eof => "end of input".to_string(),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(src: &str) -> Result<Vec<Spanned>, DslError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        let mut advance = |k: usize, i: &mut usize| {
            *i += k;
            col += k;
        };
        match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => advance(1, &mut i),
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            '{' | '}' | ':' | ';' | ',' | '[' | ']' | '=' | '/' => {
                let p = match c {
                    '{' => "{",
                    '}' => "}",
                    ':' => ":",
                    ';' => ";",
                    ',' => ",",
                    '[' => "[",
                    ']' => "]",
                    '=' => "=",
                    _ => "/",
                };
                out.push(Spanned { tok: Tok::Punct(p), line: tl, col: tc });
                advance(1, &mut i);
            }
            '-' if chars.get(i + 1) == Some(&'>') => {
                out.push(Spanned { tok: Tok::Punct("->"), line: tl, col: tc });
                advance(2, &mut i);
            }
            '-' | '0'..='9' => {
                let start = i;
                let mut j = i + 1;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                let text: String = chars[start..j].iter().collect();
                if text == "-" {
                    return Err(DslError::Syntax {
                        line: tl,
                        col: tc,
                        message: "expected digits after `-`".into(),
                    });
                }
                out.push(Spanned { tok: Tok::Int(text), line: tl, col: tc });
                advance(j - start, &mut i);
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                let mut j = i + 1;
                while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                    j += 1;
                }
                out.push(Spanned {
                    tok: Tok::Ident(chars[start..j].iter().collect()),
                    line: tl,
                    col: tc,
                });
                advance(j - start, &mut i);
            }
            other => {
                return Err(DslError::Syntax {
                    line: tl,
                    col: tc,
                    message: format!("unexpected character `{other}`"),
                })
            }
        }
    }
    out.push(Spanned { tok: Tok::Eof, line, col });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, at: &Spanned, expected: &str) -> Result<T, DslError> {
        Err(DslError::Syntax {
            line: at.line,
            col: at.col,
            message: format!("expected {expected}, found {}", at.tok.describe()),
        })
    }

    fn punct(&mut self, p: &'static str) -> Result<Spanned, DslError> {
        let t = self.bump();
        if t.tok == Tok::Punct(p) {
            Ok(t)
        } else {
            self.error(&t, &format!("`{p}`"))
        }
    }

    fn ident(&mut self) -> Result<(String, Spanned), DslError> {
        let t = self.bump();
        match &t.tok {
            Tok::Ident(s) => Ok((s.clone(), t.clone())),
            _ => self.error(&t, "identifier"),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), DslError> {
        let t = self.bump();
        match &t.tok {
            Tok::Ident(s) if s == kw => Ok(()),
            _ => self.error(&t, &format!("`{kw}`")),
        }
    }

    fn int(&mut self, positive: bool) -> Result<String, DslError> {
        let t = self.bump();
        match &t.tok {
            Tok::Int(s) if !positive || !s.starts_with('-') => Ok(s.clone()),
            _ => self.error(&t, if positive { "positive integer" } else { "integer" }),
        }
    }

    fn rational(&mut self) -> Result<(BigRational, Spanned), DslError> {
        let at = self.peek().clone();
        let mut text = self.int(false)?;
        if self.peek().tok == Tok::Punct("/") {
            self.bump();
            let den_at = self.peek().clone();
            let den = self.int(true)?;
            if den.trim_start_matches('0').is_empty() {
                return self.error(&den_at, "positive integer");
            }
            text = format!("{text}/{den}");
        }
        let q = parse_rational(&text).expect("lexer only yields well-formed integers");
        Ok((q, at))
    }
}

/// Parses a quiver from its text form. Vertex order is declaration order.
pub fn parse_quiver(src: &str) -> Result<Quiver, DslError> {
    let mut p = Parser { toks: lex(src)?, pos: 0 };
    p.keyword("quiver")?;
    let (name, _) = p.ident()?;
    p.punct("{")?;
    p.keyword("vertices")?;
    p.punct(":")?;

    let invalid = |at: &Spanned, error: QuiverError| DslError::Invalid {
        line: at.line,
        col: at.col,
        error,
    };
    let mut seen = HashSet::new();
    let mut vertices = Vec::new();
    loop {
        let (v, at) = p.ident()?;
        if !seen.insert(v.clone()) {
            return Err(invalid(&at, QuiverError::DuplicateIdentifier(v)));
        }
        vertices.push(v);
        let t = p.bump();
        match t.tok {
            Tok::Punct(",") => continue,
            Tok::Punct(";") => break,
            _ => return p.error(&t, "`,` or `;`"),
        }
    }
    let declared: HashSet<String> = vertices.iter().cloned().collect();

    let mut arrows = Vec::new();
    loop {
        if p.peek().tok == Tok::Punct("}") {
            p.bump();
            break;
        }
        let (arrow, arrow_at) = p.ident()?;
        if !seen.insert(arrow.clone()) {
            return Err(invalid(&arrow_at, QuiverError::DuplicateIdentifier(arrow)));
        }
        p.punct(":")?;
        let mut ends = Vec::new();
        for i in 0..2 {
            let (v, at) = p.ident()?;
            if !declared.contains(&v) {
                return Err(invalid(
                    &at,
                    QuiverError::UndeclaredVertex {
                        arrow: arrow.clone(),
                        vertex: v,
                    },
                ));
            }
            ends.push(v);
            if i == 0 {
                p.punct("->")?;
            }
        }
        let mut weight = None;
        if p.peek().tok == Tok::Punct("[") {
            p.bump();
            p.keyword("weight")?;
            p.punct("=")?;
            let (w, at) = p.rational()?;
            if w.is_zero() {
                return Err(invalid(&at, QuiverError::ZeroWeight(arrow)));
            }
            weight = Some(w);
            p.punct("]")?;
        }
        p.punct(";")?;
        let target = ends.pop().expect("two endpoints");
        let source = ends.pop().expect("two endpoints");
        arrows.push(ArrowSpec {
            name: arrow,
            source,
            target,
            weight,
        });
    }
    let end = p.peek().clone();
    if end.tok != Tok::Eof {
        return p.error(&end, "end of input");
    }
    Quiver::new(name, vertices, arrows).map_err(|error| DslError::Invalid { line: 1, col: 1, error })
}

/// Canonical text form; `parse_quiver(&emit_dsl(q)) == q`.
pub fn emit_dsl(q: &Quiver) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "quiver {} {{", q.name());
    let _ = writeln!(s, "    vertices: {};", q.vertex_names().join(", "));
    for a in q.arrows() {
        let _ = write!(
            s,
            "    {}: {} -> {}",
            a.name,
            q.vertex_name(a.source),
            q.vertex_name(a.target)
        );
        if let Some(w) = &a.weight {
            let _ = write!(s, " [weight = {}]", format_rational(w));
        }
        s.push_str(";\n");
    }
    s.push_str("}\n");
    s
}

/// Graph-description output: one node per vertex, one labelled edge per arrow.
pub fn to_dot(q: &Quiver) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "digraph {} {{", q.name());
    for v in q.vertex_names() {
        let _ = writeln!(s, "    {v};");
    }
    for a in q.arrows() {
        let _ = writeln!(
            s,
            "    {} -> {} [label=\"{}\"];",
            q.vertex_name(a.source),
            q.vertex_name(a.target),
            a.name
        );
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_quiver() {
        let q = parse_quiver("quiver Q { vertices: v, w; a: v -> w; }").unwrap();
        assert_eq!(q.vertex_count(), 2);
        assert_eq!(q.arrow_count(), 1);
        assert_eq!(q.name(), "Q");
    }

    #[test]
    fn undeclared_vertex_is_reported_with_position() {
        let err = parse_quiver("quiver Q { vertices: v; a: v -> u; }").unwrap_err();
        assert_eq!(
            err,
            DslError::Invalid {
                line: 1,
                col: 33,
                error: QuiverError::UndeclaredVertex {
                    arrow: "a".into(),
                    vertex: "u".into()
                }
            }
        );
    }

    #[test]
    fn validation_errors() {
        let dup = parse_quiver("quiver Q { vertices: v, v; }").unwrap_err();
        assert!(matches!(dup, DslError::Invalid { error: QuiverError::DuplicateIdentifier(_), .. }));
        let dup_arrow = parse_quiver("quiver Q { vertices: v; a: v -> v; a: v -> v; }").unwrap_err();
        assert!(matches!(dup_arrow, DslError::Invalid { error: QuiverError::DuplicateIdentifier(_), .. }));
        let zero = parse_quiver("quiver Q { vertices: v;\n a: v -> v [weight = 0/3]; }").unwrap_err();
        assert!(matches!(zero, DslError::Invalid { line: 2, error: QuiverError::ZeroWeight(_), .. }));
    }

    #[test]
    fn syntax_errors_carry_line_and_column() {
        let err = parse_quiver("quiver Q {\n  vertices: v\n  a: v -> v; }").unwrap_err();
        assert!(matches!(err, DslError::Syntax { line: 3, col: 3, .. }), "{err}");
        assert!(matches!(parse_quiver("quiver Q { vertices: v; } extra"), Err(DslError::Syntax { .. })));
        assert!(matches!(parse_quiver("quiver Q { vertices: ; }"), Err(DslError::Syntax { .. })));
        assert!(matches!(parse_quiver("quiver Q { vertices: v; a: v -> v [weight = 1/0]; }"), Err(DslError::Syntax { .. })));
        assert!(matches!(parse_quiver("quiver Q { vertices: v; a: v -> v [weight = 1/-2]; }"), Err(DslError::Syntax { .. })));
        assert!(matches!(parse_quiver("quiver Q { vertices: v$; }"), Err(DslError::Syntax { .. })));
    }

    #[test]
    fn comments_weights_and_canonical_form() {
        let src = "# header\nquiver W { # trailing\n vertices: a1, b_2;\n x: a1 -> b_2 [weight = -3/6];\n y: b_2->a1; }";
        let q = parse_quiver(src).unwrap();
        assert_eq!(q.arrows()[0].weight, Some(BigRational::new((-1).into(), 2.into())));
        let text = emit_dsl(&q);
        assert!(text.contains("x: a1 -> b_2 [weight = -1/2];"));
        assert_eq!(parse_quiver(&text).unwrap(), q);
    }

    #[test]
    fn dot_output() {
        let q = parse_quiver("quiver P { vertices: v; }").unwrap();
        assert_eq!(to_dot(&q), "digraph P {\n    v;\n}\n");
        let q = parse_quiver("quiver K { vertices: v, w; a: v -> w; b: v -> w; }").unwrap();
        let dot = to_dot(&q);
        assert_eq!(dot.matches("->").count(), 2);
        assert!(dot.contains("v -> w [label=\"b\"];"));
    }
}
