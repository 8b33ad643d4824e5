//! Edge-list text: a header line `n m`, then `m` lines `u v` with 0-based
//! endpoints. `#` starts a comment; a leading `# label: NAME` comment names
//! the graph.

use std::fmt::Write;

use chromvec_core::Graph;

use crate::ToolError;

const LABEL_PREFIX: &str = "# label:";

fn parse_err(line: usize, message: impl Into<String>) -> ToolError {
    ToolError::Parse {
        line,
        message: message.into(),
    }
}

fn numbers(line_no: usize, text: &str) -> Result<Vec<usize>, ToolError> {
    text.split_whitespace()
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| parse_err(line_no, format!("expected a nonnegative integer, found {t:?}")))
        })
        .collect()
}

pub fn parse_edge_list(text: &str) -> Result<Graph, ToolError> {
    let mut label = None;
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        last_line = line_no;
        if header.is_none() && label.is_none() {
            if let Some(rest) = raw.trim_start().strip_prefix(LABEL_PREFIX) {
                label = Some(rest.trim().to_string());
                continue;
            }
        }
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields = numbers(line_no, content)?;
        if fields.len() != 2 {
            return Err(parse_err(
                line_no,
                format!("expected two integers, found {}", fields.len()),
            ));
        }
        let (a, b) = (fields[0], fields[1]);
        let Some((n, m)) = header else {
            header = Some((a, b));
            continue;
        };
        if edges.len() == m {
            return Err(parse_err(
                line_no,
                format!("more than the {m} edges declared in the header"),
            ));
        }
        if a == b {
            return Err(parse_err(line_no, format!("self-loop at vertex {a}")));
        }
        if a >= n || b >= n {
            return Err(parse_err(line_no, format!("endpoint {} out of range 0..{n}", a.max(b))));
        }
        edges.push((a, b));
    }
    let Some((n, m)) = header else {
        return Err(parse_err(last_line.max(1), "missing \"n m\" header"));
    };
    if edges.len() != m {
        return Err(parse_err(
            last_line,
            format!("header declares {m} edges, found {}", edges.len()),
        ));
    }
    let g = Graph::from_edges(n, &edges)?;
    Ok(match label {
        Some(l) => g.with_label(l),
        None => g,
    })
}

/// Header with the number of distinct edges, then edges `u < v` in
/// lexicographic order.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    if let Some(label) = g.label() {
        writeln!(out, "{LABEL_PREFIX} {label}").unwrap();
    }
    writeln!(out, "{} {}", g.order(), g.edge_count()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(
            parse_edge_list("2 1\n0 1").unwrap(),
            Graph::from_edges(2, &[(0, 1)]).unwrap()
        );
        let k3 = parse_edge_list("3 3\n0 1\n1 2\n0 2").unwrap();
        assert!(k3.is_complete() && k3.order() == 3);
        match parse_edge_list("2 1\n0 0") {
            Err(ToolError::Parse { line: 2, message }) => assert!(message.contains("self-loop")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn comments_duplicates_and_errors() {
        let g = parse_edge_list("# a triangle\n3 4 # header\n0 1\n1 0\n1 2\n\n2 0\n").unwrap();
        assert_eq!(g.edge_count(), 3);
        assert!(matches!(
            parse_edge_list("3 1\n0 3"),
            Err(ToolError::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_edge_list("3 1\n0 x"),
            Err(ToolError::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_edge_list("3 2\n0 1"),
            Err(ToolError::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_edge_list("3 1\n0 1\n1 2"),
            Err(ToolError::Parse { line: 3, .. })
        ));
        assert!(matches!(
            parse_edge_list("# nothing\n"),
            Err(ToolError::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_edge_list("3 1 2\n"),
            Err(ToolError::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn writer_sorts_and_keeps_label() {
        let g = Graph::from_edges(4, &[(3, 2), (0, 3), (1, 0)])
            .unwrap()
            .with_label("demo");
        let text = write_edge_list(&g);
        assert_eq!(text, "# label: demo\n4 3\n0 1\n0 3\n2 3\n");
        assert_eq!(parse_edge_list(&text).unwrap(), g);
    }
}
