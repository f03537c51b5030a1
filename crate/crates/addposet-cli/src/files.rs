//! Text formats for posets, graphs, and chain complexes.
//!
//! Every emitted file starts with a version header comment. Parsers skip
//! `#` comment lines and blank lines and report errors with line (and
//! column for bad characters) positions.
//!
//! Poset files:
//! ```text
//! poset <dim>
//! functionals        | relations
//! <bit string>       | <a> <b>      (one relation a <= b per line)
//! ```
//! Graph files: `graph <V> <E>` then one `u v` line per edge (0-based,
//! `u v` with `u = v` a loop). Complex files: `complex <n>` then for each
//! degree `k = 1..n` a block `boundary <k> <rows> <cols>` followed by
//! `rows` lines of 0/1 of width `cols`.

use std::fmt;

use addposet::gf2::BitMatrix;
use addposet::{AdditivePoset, BitVec, ChainComplex, Graph};

/// A file-format error with its position.
#[derive(Debug, Clone)]
pub struct ParseError {
    pub line: usize,
    pub column: Option<usize>,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.column {
            Some(col) => write!(f, "line {}, column {}: {}", self.line, col, self.message),
            None => write!(f, "line {}: {}", self.line, self.message),
        }
    }
}

impl std::error::Error for ParseError {}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        column: None,
        message: message.into(),
    })
}

/// Numbered content lines with comments and blanks skipped.
fn content_lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect()
}

fn parse_bits(line_no: usize, token: &str, expected_len: usize) -> Result<BitVec, ParseError> {
    if token.len() != expected_len {
        return err(
            line_no,
            format!("expected a bit string of length {expected_len}, got \"{token}\""),
        );
    }
    for (i, c) in token.chars().enumerate() {
        if c != '0' && c != '1' {
            return Err(ParseError {
                line: line_no,
                column: Some(i + 1),
                message: format!("invalid character '{c}' in bit string"),
            });
        }
    }
    Ok(token.parse().expect("validated bit string"))
}

fn parse_number(line_no: usize, token: &str, what: &str) -> Result<usize, ParseError> {
    token.parse().map_err(|_| ParseError {
        line: line_no,
        column: None,
        message: format!("expected {what}, got \"{token}\""),
    })
}

/// Outcome of loading a poset file: the poset plus whether the relation
/// table still needs axiom verification (explicit relation files).
pub fn parse_poset(text: &str) -> Result<AdditivePoset, ParseError> {
    let lines = content_lines(text);
    let Some(&(header_line, header)) = lines.first() else {
        return err(1, "empty poset file");
    };
    let tokens: Vec<&str> = header.split_whitespace().collect();
    if tokens.len() != 2 || tokens[0] != "poset" {
        return err(header_line, "expected header \"poset <dim>\"");
    }
    let dim = parse_number(header_line, tokens[1], "a dimension")?;
    let Some(&(mode_line, mode)) = lines.get(1) else {
        return err(
            header_line,
            "expected a \"functionals\" or \"relations\" section",
        );
    };
    match mode {
        "functionals" => {
            let mut functionals = Vec::new();
            for &(line_no, line) in &lines[2..] {
                functionals.push(parse_bits(line_no, line, dim)?);
            }
            AdditivePoset::from_functionals(dim, &functionals).map_err(|e| ParseError {
                line: mode_line,
                column: None,
                message: e.to_string(),
            })
        }
        "relations" => {
            let mut pairs = Vec::new();
            for &(line_no, line) in &lines[2..] {
                let tokens: Vec<&str> = line.split_whitespace().collect();
                if tokens.len() != 2 {
                    return err(line_no, "expected \"<a> <b>\" with two bit strings");
                }
                let a = parse_bits(line_no, tokens[0], dim)?;
                let b = parse_bits(line_no, tokens[1], dim)?;
                pairs.push((a, b));
            }
            Ok(AdditivePoset::from_relations(dim, &pairs))
        }
        other => err(
            mode_line,
            format!("expected \"functionals\" or \"relations\", got \"{other}\""),
        ),
    }
}

pub fn serialize_poset(poset: &AdditivePoset) -> String {
    let mut out = String::from("# addposet poset v1\n");
    out.push_str(&format!("poset {}\n", poset.dim()));
    if let Some(functionals) = poset.functionals() {
        out.push_str("functionals\n");
        for f in functionals {
            out.push_str(&format!("{f}\n"));
        }
    } else {
        out.push_str("relations\n");
        let table = poset.table().expect("explicit posets have a table");
        for a in 0..table.n_elements() {
            for b in table.up(a).ones() {
                // Reflexive and zero-least pairs are implied by the closure.
                if a != b && a != 0 {
                    out.push_str(&format!(
                        "{} {}\n",
                        BitVec::from_index(poset.dim(), a),
                        BitVec::from_index(poset.dim(), b)
                    ));
                }
            }
        }
    }
    out
}

pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let lines = content_lines(text);
    let Some(&(header_line, header)) = lines.first() else {
        return err(1, "empty graph file");
    };
    let tokens: Vec<&str> = header.split_whitespace().collect();
    if tokens.len() != 3 || tokens[0] != "graph" {
        return err(header_line, "expected header \"graph <vertices> <edges>\"");
    }
    let vertices = parse_number(header_line, tokens[1], "a vertex count")?;
    let edge_count = parse_number(header_line, tokens[2], "an edge count")?;
    if lines.len() - 1 != edge_count {
        return err(
            header_line,
            format!("declared {edge_count} edges but found {}", lines.len() - 1),
        );
    }
    let mut edges = Vec::with_capacity(edge_count);
    for &(line_no, line) in &lines[1..] {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != 2 {
            return err(line_no, "expected \"<u> <v>\"");
        }
        let u = parse_number(line_no, tokens[0], "a vertex index")?;
        let v = parse_number(line_no, tokens[1], "a vertex index")?;
        if u >= vertices || v >= vertices {
            return err(
                line_no,
                format!("endpoint out of range (vertices = {vertices})"),
            );
        }
        edges.push((u, v));
    }
    Ok(Graph::new(vertices, edges).expect("endpoints validated"))
}

pub fn serialize_graph(graph: &Graph) -> String {
    let mut out = String::from("# addposet graph v1\n");
    out.push_str(&format!(
        "graph {} {}\n",
        graph.vertex_count(),
        graph.edge_count()
    ));
    for &(u, v) in graph.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

pub fn parse_complex(text: &str) -> Result<ChainComplex, ParseError> {
    let lines = content_lines(text);
    let Some(&(header_line, header)) = lines.first() else {
        return err(1, "empty complex file");
    };
    let tokens: Vec<&str> = header.split_whitespace().collect();
    if tokens.len() != 2 || tokens[0] != "complex" {
        return err(header_line, "expected header \"complex <top degree>\"");
    }
    let top = parse_number(header_line, tokens[1], "a top degree")?;
    if top == 0 {
        return err(header_line, "complex files need top degree at least 1");
    }
    let mut counts = vec![0usize; top + 1];
    let mut boundaries: Vec<BitMatrix> = Vec::with_capacity(top);
    let mut cursor = 1;
    for degree in 1..=top {
        let Some(&(line_no, line)) = lines.get(cursor) else {
            return err(
                header_line,
                format!("missing \"boundary {degree} <rows> <cols>\" block"),
            );
        };
        cursor += 1;
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != 4 || tokens[0] != "boundary" {
            return err(line_no, "expected \"boundary <degree> <rows> <cols>\"");
        }
        let got_degree = parse_number(line_no, tokens[1], "a degree")?;
        if got_degree != degree {
            return err(
                line_no,
                format!("expected boundary block for degree {degree}, got {got_degree}"),
            );
        }
        let rows = parse_number(line_no, tokens[2], "a row count")?;
        let cols = parse_number(line_no, tokens[3], "a column count")?;
        let mut matrix_rows = Vec::with_capacity(rows);
        if cols == 0 {
            // Width-zero rows carry no content and are not written out.
            matrix_rows.resize(rows, BitVec::zeros(0));
        }
        for _ in 0..rows * usize::from(cols > 0) {
            let Some(&(row_line, row)) = lines.get(cursor) else {
                return err(
                    line_no,
                    format!("boundary {degree} declares {rows} rows but the file ends early"),
                );
            };
            cursor += 1;
            matrix_rows.push(parse_bits(row_line, row, cols)?);
        }
        if degree == 1 {
            counts[0] = rows;
        } else if counts[degree - 1] != rows {
            return err(
                line_no,
                format!(
                    "boundary {degree} has {rows} rows but degree {} has {} cells",
                    degree - 1,
                    counts[degree - 1]
                ),
            );
        }
        counts[degree] = cols;
        boundaries.push(BitMatrix::from_rows(matrix_rows, cols));
    }
    if cursor != lines.len() {
        return err(lines[cursor].0, "unexpected trailing content");
    }
    ChainComplex::new(counts, boundaries).map_err(|e| ParseError {
        line: header_line,
        column: None,
        message: e.to_string(),
    })
}

pub fn serialize_complex(complex: &ChainComplex) -> String {
    let mut out = String::from("# addposet complex v1\n");
    out.push_str(&format!("complex {}\n", complex.top_degree()));
    for degree in 1..=complex.top_degree() {
        let boundary = complex.boundary(degree);
        out.push_str(&format!(
            "boundary {degree} {} {}\n",
            boundary.n_rows(),
            boundary.n_cols()
        ));
        if boundary.n_cols() > 0 {
            for row in boundary.rows() {
                out.push_str(&format!("{row}\n"));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poset_functional_round_trip() {
        let text = "poset 3\nfunctionals\n100\n010\n001\n";
        let poset = parse_poset(text).unwrap();
        assert!(poset.order_eq(&AdditivePoset::powerset(3)).unwrap());
        let again = parse_poset(&serialize_poset(&poset)).unwrap();
        assert_eq!(again.functionals(), poset.functionals());
    }

    #[test]
    fn poset_relations_round_trip() {
        let poset = AdditivePoset::even_powerset(4);
        let text = serialize_poset(&poset);
        let again = parse_poset(&text).unwrap();
        assert!(again.order_eq(&poset).unwrap());
        assert_eq!(serialize_poset(&again), text);
    }

    #[test]
    fn poset_parse_errors_have_positions() {
        let bad_char = parse_poset("poset 2\nfunctionals\n1x\n").unwrap_err();
        assert_eq!((bad_char.line, bad_char.column), (3, Some(2)));
        let bad_len = parse_poset("poset 2\nfunctionals\n101\n").unwrap_err();
        assert_eq!(bad_len.line, 3);
        let bad_header = parse_poset("pset 2\n").unwrap_err();
        assert_eq!(bad_header.line, 1);
        // Functionals with a common kernel are a load error naming a witness.
        let kernel = parse_poset("poset 2\nfunctionals\n10\n").unwrap_err();
        assert!(kernel.message.contains("kernel"));
    }

    #[test]
    fn graph_round_trip_and_errors() {
        let text = "# comment\ngraph 2 3\n0 1\n0 1\n0 1\n";
        let graph = parse_graph(text).unwrap();
        assert_eq!(graph.edge_count(), 3);
        let again = parse_graph(&serialize_graph(&graph)).unwrap();
        assert_eq!(again, graph);

        let loopy = parse_graph("graph 1 1\n0 0\n").unwrap();
        assert!(loopy.is_loop(0));

        assert_eq!(parse_graph("graph 2 2\n0 1\n").unwrap_err().line, 1);
        assert_eq!(parse_graph("graph 2 1\n0 5\n").unwrap_err().line, 2);
    }

    #[test]
    fn complex_round_trip_and_errors() {
        let complex = addposet::homology::glued_balls(3, 2);
        let text = serialize_complex(&complex);
        let again = parse_complex(&text).unwrap();
        assert_eq!(again, complex);

        // Complexes with empty middle degrees have width-zero boundary
        // matrices; those blocks carry no row lines.
        for complex in [
            addposet::homology::wedge_of_spheres(2, 3),
            addposet::homology::glued_balls(2, 4),
            addposet::homology::wedge_of_spheres(1, 5),
        ] {
            let text = serialize_complex(&complex);
            assert_eq!(
                parse_complex(&text).unwrap(),
                complex,
                "round trip of:\n{text}"
            );
        }

        // Boundary square must vanish.
        let bad = "complex 2\nboundary 1 1 1\n1\nboundary 2 1 1\n1\n";
        assert!(parse_complex(bad).unwrap_err().message.contains("boundary"));
        // Shape mismatches are caught.
        let mismatch = "complex 2\nboundary 1 1 1\n0\nboundary 2 2 1\n0\n0\n";
        assert!(parse_complex(mismatch).is_err());
    }
}
