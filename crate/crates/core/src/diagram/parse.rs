//! The line-oriented diagram language.
//!
//! ```text
//! # a circle
//! n 3
//! arc x1 x2
//! glue x2 x1
//! ```

use crate::error::DiagramError;

use super::model::{Diagram, Param, PieceKind, Pos};

struct Token<'a> {
    text: &'a str,
    col: usize,
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    let line = match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    };
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push(Token {
                    text: &line[s..i],
                    col: line[..s].chars().count() + 1,
                });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(Token {
            text: &line[s..],
            col: line[..s].chars().count() + 1,
        });
    }
    out
}

fn syntax(line: usize, col: usize, msg: impl Into<String>) -> DiagramError {
    DiagramError::SyntaxError {
        line,
        col,
        msg: msg.into(),
    }
}

fn param(tok: &Token<'_>, line: usize) -> Result<Param, DiagramError> {
    tok.text.parse().map_err(|_| {
        syntax(
            line,
            tok.col,
            format!("expected a parameter like x1 or d2, found `{}`", tok.text),
        )
    })
}

/// Parses diagram text. Statements are validated as they are read, so
/// errors point at the offending line and column.
pub fn parse_diagram(text: &str) -> Result<Diagram, DiagramError> {
    let mut diagram: Option<Diagram> = None;
    let mut last_line = 0;
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        last_line = line;
        let toks = tokens(raw);
        let Some(head) = toks.first() else {
            continue;
        };
        let pos = Pos {
            line,
            col: head.col,
        };
        let args = &toks[1..];
        if head.text == "n" {
            if diagram.is_some() {
                return Err(syntax(line, head.col, "`n` may only be given once"));
            }
            let [arg] = args else {
                return Err(syntax(line, head.col, "`n` takes one integer"));
            };
            let n: u32 = arg
                .text
                .parse()
                .map_err(|_| syntax(line, arg.col, format!("bad integer `{}`", arg.text)))?;
            diagram = Some(Diagram::new(n).map_err(|e| match e {
                DiagramError::UnsupportedN { n, min } => DiagramError::ValidationError {
                    line,
                    col: arg.col,
                    msg: format!("n = {n} is not supported (need n >= {min})"),
                },
                e => e,
            })?);
            continue;
        }
        let Some(d) = diagram.as_mut() else {
            return Err(syntax(line, head.col, "the first statement must be `n <int>`"));
        };
        if head.text == "glue" {
            let [p, q] = args else {
                return Err(syntax(line, head.col, "`glue` takes two parameters"));
            };
            let (pp, qq) = (param(p, line)?, param(q, line)?);
            d.add_glue_at(pp, qq, pos)?;
            continue;
        }
        let Some(kind) = PieceKind::from_keyword(head.text) else {
            return Err(syntax(
                line,
                head.col,
                format!("unknown statement `{}`", head.text),
            ));
        };
        let params = args
            .iter()
            .map(|t| param(t, line))
            .collect::<Result<Vec<_>, _>>()?;
        d.add_piece_at(kind, &params, pos).map_err(|e| match e {
            DiagramError::ArityMismatch {
                kind,
                expected,
                found,
            } => syntax(
                line,
                head.col,
                format!("`{kind}` takes {expected} parameters, found {found}"),
            ),
            DiagramError::UnsupportedN { n, min } => DiagramError::ValidationError {
                line,
                col: head.col,
                msg: format!("`{}` needs n >= {min}, diagram has n = {n}", kind.keyword()),
            },
            e => e,
        })?;
    }
    diagram.ok_or_else(|| syntax(last_line.max(1), 1, "missing `n <int>` statement"))
}
