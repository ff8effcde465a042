//! Text formats: edge lists, graph6, colouring files and forest files.
//!
//! Edge list: a header line `n m`, then `m` lines `u v` with `0 <= u < v < n`.
//! graph6: the standard 6-bit packing of the upper triangle (column-major,
//! `x(0,1) x(0,2) x(1,2) x(0,3) ...`), each byte offset by 63.

use thiserror::Error;

use crate::coloring::{ColoringError, ProperColoring};
use crate::graph::{Graph, GraphError};
use crate::structures::{ForestError, ForestSpec};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("graph6: {0}")]
    Graph6(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error(transparent)]
    Forest(#[from] ForestError),
}

fn syntax(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        msg: msg.into(),
    }
}

fn numbered_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn parse_pair(line: usize, s: &str) -> Result<(usize, usize), FormatError> {
    let mut it = s.split_whitespace();
    let a = it
        .next()
        .ok_or_else(|| syntax(line, "expected two integers"))?;
    let b = it
        .next()
        .ok_or_else(|| syntax(line, "expected two integers"))?;
    if it.next().is_some() {
        return Err(syntax(line, "trailing tokens"));
    }
    let a = a
        .parse()
        .map_err(|_| syntax(line, format!("not an integer: {a}")))?;
    let b = b
        .parse()
        .map_err(|_| syntax(line, format!("not an integer: {b}")))?;
    Ok((a, b))
}

fn parse_edge_lines<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
) -> Result<Graph, FormatError> {
    let (hline, header) = lines.next().ok_or_else(|| syntax(1, "missing header"))?;
    let (n, m) = parse_pair(hline, header)?;
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let (line, s) = lines.next().ok_or_else(|| {
            syntax(
                hline,
                format!("header promises {m} edges, found {}", edges.len()),
            )
        })?;
        let (u, v) = parse_pair(line, s)?;
        if u >= v {
            return Err(syntax(line, format!("edge {u} {v} must satisfy u < v")));
        }
        if v >= n {
            return Err(syntax(line, format!("vertex {v} outside 0..{n}")));
        }
        edges.push((u, v));
    }
    if let Some((line, _)) = lines.next() {
        return Err(syntax(line, "more edges than the header declares"));
    }
    Ok(Graph::new(n, edges)?)
}

pub fn parse_edge_list(text: &str) -> Result<Graph, FormatError> {
    parse_edge_lines(&mut numbered_lines(text))
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// graph6 encoding without the trailing newline.
pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut bits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.adjacent(i, j) as u8;
            bits += 1;
            if bits == 6 {
                out.push(acc + 63);
                acc = 0;
                bits = 0;
            }
        }
    }
    if bits > 0 {
        out.push((acc << (6 - bits)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

pub fn parse_graph6(text: &str) -> Result<Graph, FormatError> {
    let s = text.trim();
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
    let bytes = s.as_bytes();
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(FormatError::Graph6(format!("invalid byte {b}")));
    }
    let digits = |bs: &[u8]| {
        bs.iter()
            .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize)
    };
    let (n, body) = match bytes {
        [] => return Err(FormatError::Graph6("empty input".into())),
        [126, 126, rest @ ..] if rest.len() >= 6 => (digits(&rest[..6]), &rest[6..]),
        [126, rest @ ..] if rest.len() >= 3 => (digits(&rest[..3]), &rest[3..]),
        [126, ..] => return Err(FormatError::Graph6("truncated size field".into())),
        [b, rest @ ..] => ((*b - 63) as usize, rest),
    };
    let total_bits = n * n.saturating_sub(1) / 2;
    let expected = total_bits.div_ceil(6);
    if body.len() != expected {
        return Err(FormatError::Graph6(format!(
            "expected {expected} data bytes for n={n}, found {}",
            body.len()
        )));
    }
    let bit = |k: usize| (body[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    if (total_bits..expected * 6).any(bit) {
        return Err(FormatError::Graph6("non-zero padding bits".into()));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Ok(Graph::new(n, edges)?)
}

/// Reads either format: edge lists start with a two-integer header line.
pub fn parse_graph_auto(text: &str) -> Result<Graph, FormatError> {
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty())
        .unwrap_or("");
    let looks_like_edges = {
        let toks: Vec<&str> = first.split_whitespace().collect();
        toks.len() == 2 && toks.iter().all(|t| t.parse::<usize>().is_ok())
    };
    if looks_like_edges {
        parse_edge_list(text)
    } else {
        parse_graph6(first)
    }
}

pub fn parse_coloring(text: &str, g: &Graph) -> Result<ProperColoring, FormatError> {
    let mut colors = Vec::with_capacity(g.n());
    for (line, s) in numbered_lines(text) {
        let c: u32 = s
            .parse()
            .map_err(|_| syntax(line, format!("not a colour: {s}")))?;
        colors.push(c);
    }
    Ok(ProperColoring::new(g, colors)?)
}

pub fn write_coloring(c: &ProperColoring) -> String {
    c.colors().iter().map(|x| format!("{x}\n")).collect()
}

/// A `roots u1 u2 ...` line followed by an edge list.
pub fn parse_forest(text: &str) -> Result<ForestSpec, FormatError> {
    let mut lines = numbered_lines(text);
    let (line, first) = lines
        .next()
        .ok_or_else(|| syntax(1, "missing roots line"))?;
    let rest = first
        .strip_prefix("roots")
        .ok_or_else(|| syntax(line, "expected `roots u1 u2 ...`"))?;
    let roots = rest
        .split_whitespace()
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| syntax(line, format!("bad root {t}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let g = parse_edge_lines(&mut lines)?;
    Ok(ForestSpec::new(g.n(), g.edges().collect(), roots)?)
}

pub fn write_forest(spec: &ForestSpec) -> String {
    let roots: Vec<String> = spec.roots().iter().map(usize::to_string).collect();
    let mut out = format!(
        "roots {}\n{} {}\n",
        roots.join(" "),
        spec.n(),
        spec.edges().len()
    );
    for &(u, v) in spec.edges() {
        out.push_str(&format!("{} {}\n", u.min(v), u.max(v)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{named, NamedGraph};
    use proptest::prelude::*;

    #[test]
    fn graph6_known_strings() {
        // reference strings produced by nauty's geng/showg conventions
        assert_eq!(to_graph6(&named(&NamedGraph::Complete(4)).unwrap()), "C~");
        assert_eq!(to_graph6(&named(&NamedGraph::Cycle(5)).unwrap()), "Dhc");
        assert_eq!(
            to_graph6(&named(&NamedGraph::Petersen).unwrap()),
            "IheA@GUAo"
        );
        assert_eq!(to_graph6(&Graph::empty(0)), "?");
        let g = Graph::new(5, [(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(to_graph6(&g), "DQc");
    }

    #[test]
    fn graph6_large_header() {
        let g = named(&NamedGraph::Cycle(100)).unwrap();
        let s = to_graph6(&g);
        assert!(s.starts_with('~'));
        assert_eq!(parse_graph6(&s).unwrap(), g);
    }

    #[test]
    fn graph6_rejects_garbage() {
        assert!(parse_graph6("D").is_err());
        assert!(parse_graph6("C~~").is_err());
        assert!(parse_graph6("D\x10c").is_err());
        // C~ with a padding bit set: n=4 has 6 bits exactly, use n=3 (3 bits)
        assert!(parse_graph6("Bw").is_ok());
        assert!(parse_graph6("B\x7e").is_err());
    }

    #[test]
    fn edge_list_round_trip_and_errors() {
        let g = named(&NamedGraph::Petersen).unwrap();
        let text = write_edge_list(&g);
        assert_eq!(parse_edge_list(&text).unwrap(), g);
        assert_eq!(parse_graph_auto(&text).unwrap(), g);
        assert!(parse_edge_list("3 1\n1 0\n").is_err());
        assert!(parse_edge_list("3 1\n0 3\n").is_err());
        assert!(parse_edge_list("3 2\n0 1\n").is_err());
        assert!(parse_edge_list("3 1\n0 1\n1 2\n").is_err());
        assert!(parse_edge_list("3 2\n0 1\n0 1\n").is_err());
    }

    #[test]
    fn coloring_file() {
        let g = named(&NamedGraph::Cycle(5)).unwrap();
        let c = parse_coloring("1\n2\n1\n2\n3\n", &g).unwrap();
        assert_eq!(write_coloring(&c), "1\n2\n1\n2\n3\n");
        assert!(parse_coloring("1\n2\n1\n2\n1\n", &g).is_err());
        assert!(parse_coloring("1\nx\n", &g).is_err());
    }

    #[test]
    fn forest_file() {
        let spec = parse_forest("roots 0 3\n4 2\n0 1\n1 2\n").unwrap();
        assert_eq!(spec.roots(), &[0, 3]);
        assert_eq!(parse_forest(&write_forest(&spec)).unwrap(), spec);
        assert!(parse_forest("roots 0\n3 3\n0 1\n1 2\n0 2\n").is_err());
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (0usize..70).prop_flat_map(|n| {
            let pairs = n * n.saturating_sub(1) / 2;
            proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
                let mut edges = Vec::new();
                let mut k = 0;
                for u in 0..n {
                    for v in u + 1..n {
                        if bits[k] {
                            edges.push((u, v));
                        }
                        k += 1;
                    }
                }
                Graph::new(n, edges).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn graph6_round_trip_is_byte_identical(g in arb_graph()) {
            let s = to_graph6(&g);
            let back = parse_graph6(&s).unwrap();
            prop_assert_eq!(&back, &g);
            prop_assert_eq!(to_graph6(&back), s);
        }
    }
}
