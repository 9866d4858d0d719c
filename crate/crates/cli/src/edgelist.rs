//! Edge-list files: the first line holds the vertex count `n`, each further
//! non-empty line an edge `u v` with `0 <= u < v < n`. `#` starts a comment.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;

use corona_walk_core::graph::{Graph, GraphSpec};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum EdgeListError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("edge list has no vertex count")]
    Missing,
    #[error(transparent)]
    Graph(#[from] corona_walk_core::Error),
}

fn syntax<T>(line: usize, message: impl Into<String>) -> Result<T, EdgeListError> {
    Err(EdgeListError::Syntax {
        line,
        message: message.into(),
    })
}

pub fn parse_edge_list(text: &str) -> Result<Graph, EdgeListError> {
    let mut n: Option<usize> = None;
    let mut seen = BTreeSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let Some(order) = n else {
            if fields.len() != 1 {
                return syntax(line_no, "expected the vertex count on its own line");
            }
            match fields[0].parse::<usize>() {
                Ok(v) if v >= 1 => n = Some(v),
                _ => return syntax(line_no, format!("invalid vertex count `{}`", fields[0])),
            }
            continue;
        };
        let [u, v] = fields[..] else {
            return syntax(line_no, "expected two vertices `u v`");
        };
        let (Ok(u), Ok(v)) = (u.parse::<usize>(), v.parse::<usize>()) else {
            return syntax(line_no, format!("invalid edge `{line}`"));
        };
        if u >= v {
            return syntax(line_no, format!("edge `{u} {v}` must satisfy u < v"));
        }
        if v >= order {
            return syntax(line_no, format!("vertex {v} out of range for {order} vertices"));
        }
        if !seen.insert((u, v)) {
            return syntax(line_no, format!("duplicate edge `{u} {v}`"));
        }
    }
    let n = n.ok_or(EdgeListError::Missing)?;
    Ok(Graph::from_edges(n, seen)?)
}

pub fn read_edge_list(path: &Path) -> Result<Graph, EdgeListError> {
    let text = std::fs::read_to_string(path).map_err(|source| EdgeListError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_edge_list(&text)
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{}\n", g.order());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

/// Builds a spec, reading `file:` leaves from disk.
pub fn build_spec(spec: &GraphSpec) -> Result<Graph, EdgeListError> {
    let mut failure = None;
    let built = spec.build_with(&mut |path: &str| match read_edge_list(Path::new(path)) {
        Ok(g) => Ok(g),
        Err(e) => {
            failure = Some(e);
            Err(corona_walk_core::Error::NeedsLoader(path.into()))
        }
    });
    match (built, failure) {
        (Ok(g), _) => Ok(g),
        (Err(_), Some(e)) => Err(e),
        (Err(e), None) => Err(e.into()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_with_comments() {
        let g = parse_edge_list("# a triangle\n3\n0 1\n1 2 # closing\n\n0 2\n").unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(g.edges(), &[(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn rejects_bad_lines() {
        let line = |r: Result<Graph, EdgeListError>| match r {
            Err(EdgeListError::Syntax { line, .. }) => line,
            other => panic!("{other:?}"),
        };
        assert_eq!(line(parse_edge_list("3\n0 1\n0 1\n")), 3);
        assert_eq!(line(parse_edge_list("3\n1 0\n")), 2);
        assert_eq!(line(parse_edge_list("3\n0 3\n")), 2);
        assert_eq!(line(parse_edge_list("3\n0 1 2\n")), 2);
        assert_eq!(line(parse_edge_list("x\n")), 1);
        assert!(matches!(parse_edge_list("# nothing\n"), Err(EdgeListError::Missing)));
    }

    #[test]
    fn write_then_parse() {
        let g = GraphSpec::Cocktail(3).build().unwrap();
        assert_eq!(parse_edge_list(&write_edge_list(&g)).unwrap(), g);
    }
}
