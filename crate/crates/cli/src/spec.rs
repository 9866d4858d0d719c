//! Text grammar for graph specs:
//! `path:N | cycle:N | complete:N | cocktail:N | empty:N | star:N | file:PATH | corona(SPEC,SPEC)`.

use corona_walk_core::graph::GraphSpec;
use corona_walk_core::linalg::MAX_DIMENSION;
use thiserror::Error;

/// A parse failure at a 0-based character offset.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("graph spec error at position {position}: {message}")]
pub struct SpecError {
    pub position: usize,
    pub message: String,
}

const FAMILIES: [(&str, usize); 6] = [
    ("path", 1),
    ("cycle", 3),
    ("complete", 1),
    ("cocktail", 1),
    ("empty", 1),
    ("star", 1),
];

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn err<T>(&self, position: usize, message: impl Into<String>) -> Result<T, SpecError> {
        Err(SpecError {
            position,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, want: char) -> Result<(), SpecError> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c == want => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => self.err(self.pos, format!("expected `{want}`, found `{c}`")),
            None => self.err(self.pos, format!("expected `{want}`, found end of input")),
        }
    }

    fn word(&mut self) -> String {
        let start = self.pos;
        while self
            .peek()
            .is_some_and(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
        {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn spec(&mut self, depth: usize) -> Result<GraphSpec, SpecError> {
        self.skip_ws();
        let start = self.pos;
        let name = self.word().to_ascii_lowercase();
        if name.is_empty() {
            return match self.peek() {
                Some(c) => self.err(start, format!("expected a graph family, found `{c}`")),
                None => self.err(start, "expected a graph family, found end of input"),
            };
        }
        if name == "corona" {
            self.expect('(')?;
            let g = self.spec(depth + 1)?;
            self.expect(',')?;
            let h = self.spec(depth + 1)?;
            self.expect(')')?;
            return Ok(GraphSpec::corona(g, h));
        }
        self.expect(':')?;
        if name == "file" {
            return self.path(depth);
        }
        let Some(&(family, min)) = FAMILIES.iter().find(|(f, _)| *f == name) else {
            return self.err(start, format!("unknown graph family `{name}`"));
        };
        self.skip_ws();
        let num_start = self.pos;
        let digits = {
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            self.chars[num_start..self.pos].iter().collect::<String>()
        };
        if digits.is_empty() {
            return self.err(num_start, format!("expected a size after `{family}:`"));
        }
        let n: usize = match digits.parse() {
            Ok(n) => n,
            Err(_) => return self.err(num_start, format!("size `{digits}` is too large")),
        };
        if n < min || n > MAX_DIMENSION {
            return self.err(
                num_start,
                format!("{family} size must be in {min}..={MAX_DIMENSION}, got {n}"),
            );
        }
        Ok(match family {
            "path" => GraphSpec::Path(n),
            "cycle" => GraphSpec::Cycle(n),
            "complete" => GraphSpec::Complete(n),
            "cocktail" => GraphSpec::Cocktail(n),
            "empty" => GraphSpec::Empty(n),
            _ => GraphSpec::Star(n),
        })
    }

    /// Inside a corona a path ends at the next `,` or `)`; at top level it
    /// runs to the end of input.
    fn path(&mut self, depth: usize) -> Result<GraphSpec, SpecError> {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.peek() {
            if depth > 0 && (c == ',' || c == ')') {
                break;
            }
            self.pos += 1;
        }
        let path: String = self.chars[start..self.pos].iter().collect();
        let path = path.trim_end();
        if path.is_empty() {
            return self.err(start, "expected a path after `file:`");
        }
        Ok(GraphSpec::File(path.to_string()))
    }
}

pub fn parse_graph_spec(text: &str) -> Result<GraphSpec, SpecError> {
    let mut p = Parser {
        chars: text.chars().collect(),
        pos: 0,
        src: text,
    };
    let spec = p.spec(0)?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return p.err(
            p.pos,
            format!("unexpected trailing input `{}`", &p.src[byte_offset(p.src, p.pos)..]),
        );
    }
    Ok(spec)
}

fn byte_offset(s: &str, char_pos: usize) -> usize {
    s.char_indices().nth(char_pos).map_or(s.len(), |(i, _)| i)
}

/// Canonical text form; `parse_graph_spec(&format_graph_spec(s)) == s`.
pub fn format_graph_spec(spec: &GraphSpec) -> String {
    match spec {
        GraphSpec::Path(n) => format!("path:{n}"),
        GraphSpec::Cycle(n) => format!("cycle:{n}"),
        GraphSpec::Complete(n) => format!("complete:{n}"),
        GraphSpec::Cocktail(n) => format!("cocktail:{n}"),
        GraphSpec::Empty(n) => format!("empty:{n}"),
        GraphSpec::Star(n) => format!("star:{n}"),
        GraphSpec::File(p) => format!("file:{p}"),
        GraphSpec::Corona(g, h) => format!("corona({},{})", format_graph_spec(g), format_graph_spec(h)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(
            parse_graph_spec("corona(path:2, cycle:3)").unwrap(),
            GraphSpec::corona(GraphSpec::Path(2), GraphSpec::Cycle(3))
        );
        assert_eq!(parse_graph_spec("cocktail:3").unwrap(), GraphSpec::Cocktail(3));
        assert_eq!(
            parse_graph_spec("corona(corona(path:2,empty:2),cycle:3)").unwrap(),
            GraphSpec::corona(
                GraphSpec::corona(GraphSpec::Path(2), GraphSpec::Empty(2)),
                GraphSpec::Cycle(3)
            )
        );
    }

    #[test]
    fn whitespace_is_ignored() {
        let a = parse_graph_spec("  corona ( star : 3 ,\tcomplete:4 )  ").unwrap();
        assert_eq!(a, GraphSpec::corona(GraphSpec::Star(3), GraphSpec::Complete(4)));
    }

    #[test]
    fn file_paths() {
        assert_eq!(
            parse_graph_spec("file:/tmp/g.txt").unwrap(),
            GraphSpec::File("/tmp/g.txt".into())
        );
        assert_eq!(
            parse_graph_spec("corona(file: a b.txt ,path:2)").unwrap(),
            GraphSpec::corona(GraphSpec::File("a b.txt".into()), GraphSpec::Path(2))
        );
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_graph_spec("corona(path:2 cycle:3)").unwrap_err();
        assert_eq!(e.position, 14);
        let e = parse_graph_spec("cycle:2").unwrap_err();
        assert_eq!(e.position, 6);
        assert!(e.message.contains("3..="));
        let e = parse_graph_spec("wheel:5").unwrap_err();
        assert_eq!(e.position, 0);
        let e = parse_graph_spec("path:3)").unwrap_err();
        assert_eq!(e.position, 6);
        assert!(parse_graph_spec("").is_err());
        assert!(parse_graph_spec("path:").is_err());
        assert!(parse_graph_spec("path:99999999999999999999999").is_err());
        assert!(parse_graph_spec("corona(path:2,").is_err());
    }

    #[test]
    fn canonical_form_round_trips() {
        for s in [
            "path:4",
            "corona(corona(path:2,empty:2),cycle:3)",
            "corona(file:x.txt,star:2)",
        ] {
            let spec = parse_graph_spec(s).unwrap();
            assert_eq!(format_graph_spec(&spec), s);
            assert_eq!(parse_graph_spec(&format_graph_spec(&spec)).unwrap(), spec);
        }
    }
}
