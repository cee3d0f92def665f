//! Text DSL for Coxeter-Wythoff diagrams.
//!
//! Statements are separated by `;` or newlines; `#` starts a comment.
//!
//! ```text
//! stmt := "nodes" INT | EDGE | RING
//! EDGE := INT "-" INT [":" (INT >= 3 | "inf" | "d=" FLOAT)]
//! RING := "ring" INT+
//! ```
//!
//! An unlabeled edge means mark 3; an absent edge statement means a right
//! angle (mark 2).

use crate::diagram::{CoxeterDiagram, EdgeMark};
use crate::error::{CoxError, Result};

struct Stmt<'a> {
    text: &'a str,
    line: usize,
    col: usize,
}

fn err(stmt: &Stmt, msg: impl Into<String>) -> CoxError {
    CoxError::Parse { line: stmt.line, col: stmt.col, msg: msg.into() }
}

fn split_statements(text: &str) -> Vec<Stmt<'_>> {
    let mut out = Vec::new();
    for (lineno, raw_line) in text.lines().enumerate() {
        let line = match raw_line.find('#') {
            Some(pos) => &raw_line[..pos],
            None => raw_line,
        };
        let mut col = 0;
        for piece in line.split(';') {
            let trimmed = piece.trim_start();
            let lead = piece.len() - trimmed.len();
            let trimmed = trimmed.trim_end();
            if !trimmed.is_empty() {
                out.push(Stmt { text: trimmed, line: lineno + 1, col: col + lead + 1 });
            }
            col += piece.len() + 1;
        }
    }
    out
}

fn parse_index(stmt: &Stmt, token: &str) -> Result<usize> {
    token
        .parse::<usize>()
        .map_err(|_| err(stmt, format!("expected a node index, got {token:?}")))
}

/// Parse the diagram DSL.
pub fn parse_diagram(text: &str) -> Result<CoxeterDiagram> {
    let stmts = split_statements(text);
    let mut iter = stmts.iter();

    let first = iter
        .next()
        .ok_or_else(|| CoxError::Parse { line: 1, col: 1, msg: "empty input".into() })?;
    let mut d = match first.text.strip_prefix("nodes") {
        Some(rest) => {
            let count = rest
                .trim()
                .parse::<usize>()
                .map_err(|_| err(first, format!("expected a node count, got {:?}", rest.trim())))?;
            if count == 0 {
                return Err(err(first, "node count must be at least 1"));
            }
            CoxeterDiagram::new(count)?
        }
        None => return Err(err(first, "the first statement must be `nodes <k>`")),
    };

    for stmt in iter {
        if let Some(rest) = stmt.text.strip_prefix("ring") {
            let indices: Vec<&str> = rest.split_whitespace().collect();
            if indices.is_empty() {
                return Err(err(stmt, "`ring` needs at least one node index"));
            }
            for tok in indices {
                let i = parse_index(stmt, tok)?;
                d.ring(i).map_err(|e| err(stmt, e.to_string()))?;
            }
            continue;
        }
        if stmt.text.starts_with("nodes") {
            return Err(err(stmt, "`nodes` may appear only once, first"));
        }

        // EDGE: i-j[:mark]
        let (pair, mark_text) = match stmt.text.find(':') {
            Some(pos) => (&stmt.text[..pos], Some(stmt.text[pos + 1..].trim())),
            None => (stmt.text, None),
        };
        let mut ends = pair.splitn(2, '-');
        let i = parse_index(stmt, ends.next().unwrap_or("").trim())?;
        let j = parse_index(
            stmt,
            ends.next().ok_or_else(|| err(stmt, "expected `i-j` edge syntax"))?.trim(),
        )?;
        let mark = match mark_text {
            None => EdgeMark::Finite(3),
            Some("inf") => EdgeMark::Parallel,
            Some(m) => {
                if let Some(dist) = m.strip_prefix("d=") {
                    let dval: f64 = dist
                        .parse()
                        .map_err(|_| err(stmt, format!("bad ultraparallel distance {dist:?}")))?;
                    EdgeMark::Ultraparallel(dval)
                } else {
                    let mval: u32 =
                        m.parse().map_err(|_| err(stmt, format!("bad edge mark {m:?}")))?;
                    EdgeMark::Finite(mval)
                }
            }
        };
        d.add_edge(i, j, mark).map_err(|e| match e {
            CoxError::Parse { .. } => e,
            other => err(stmt, other.to_string()),
        })?;
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_grammar() {
        let d = parse_diagram("nodes 3; 1-2:5; 2-3").unwrap();
        assert_eq!(d.node_count(), 3);
        assert_eq!(d.edge_between(1, 2), Some(EdgeMark::Finite(5)));
        assert_eq!(d.edge_between(2, 3), Some(EdgeMark::Finite(3)));
        assert_eq!(d.edge_between(1, 3), None);

        let p = parse_diagram("nodes 2; 1-2:inf").unwrap();
        assert_eq!(p.edge_between(1, 2), Some(EdgeMark::Parallel));

        let u = parse_diagram("nodes 2; 1-2:d=0.5; ring 1").unwrap();
        assert_eq!(u.edge_between(1, 2), Some(EdgeMark::Ultraparallel(0.5)));
        assert!(u.rings().contains(&1));
    }

    #[test]
    fn newlines_and_comments() {
        let d = parse_diagram("nodes 4 # a square\n1-2:4\n2-3\n3-4:4\nring 1 3").unwrap();
        assert_eq!(d.node_count(), 4);
        assert_eq!(d.edge_between(3, 4), Some(EdgeMark::Finite(4)));
        assert_eq!(d.rings().len(), 2);
    }

    #[test]
    fn errors_carry_position() {
        match parse_diagram("nodes 2\n1-5") {
            Err(CoxError::Parse { line, col, .. }) => {
                assert_eq!(line, 2);
                assert_eq!(col, 1);
            }
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(parse_diagram("nodes 2; 1-2:2").is_err());
        assert!(parse_diagram("nodes 2; 1-2:d=0").is_err());
        assert!(parse_diagram("nodes 2; 1-2; 1-2:4").is_err());
        assert!(parse_diagram("1-2; nodes 2").is_err());
        assert!(parse_diagram("nodes 2; 1-1").is_err());
    }

    #[test]
    fn render_round_trip() {
        let texts = [
            "nodes 3; 1-2:5; 2-3",
            "nodes 2; 1-2:inf",
            "nodes 2; 1-2:d=0.5; ring 1",
            "nodes 5; 1-3; 2-3; 3-4; 4-5:4; ring 1 4",
            "nodes 1; ring 1",
        ];
        for t in texts {
            let d = parse_diagram(t).unwrap();
            let again = parse_diagram(&d.render()).unwrap();
            assert_eq!(d, again, "round trip failed for {t:?}");
        }
    }
}
