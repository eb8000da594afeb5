//! Graph files: the node count on the first line, then one 1-based `i j` edge per line.

use std::fmt::Write as _;

use cloudqc_core::graph::graph_to_stabilizers;
use cloudqc_core::GraphAdjacency;

use super::ParseError;

pub fn parse_graph(text: &str) -> Result<GraphAdjacency, ParseError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim())).filter(|(_, l)| !l.is_empty());
    let (first, head) = lines.next().ok_or_else(|| ParseError::new(1, "empty graph file"))?;
    let n: usize = head.parse().map_err(|_| ParseError::new(first, format!("expected a node count, found `{head}`")))?;
    let mut edges = Vec::new();
    for (line, l) in lines {
        let nums: Vec<usize> = l
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| ParseError::new(line, format!("bad node `{t}`"))))
            .collect::<Result<_, _>>()?;
        let &[i, j] = nums.as_slice() else {
            return Err(ParseError::new(line, "expected two node labels"));
        };
        if !(1..=n).contains(&i) || !(1..=n).contains(&j) {
            return Err(ParseError::new(line, format!("edge {i} {j} is outside 1..={n}")));
        }
        if i == j {
            return Err(ParseError::new(line, "self-loop"));
        }
        edges.push((i, j));
    }
    GraphAdjacency::from_edges(n, &edges).map_err(|e| ParseError::new(first, e.to_string()))
}

pub fn write_graph(g: &GraphAdjacency) -> String {
    let mut out = format!("{}\n", g.node_count());
    for (i, j) in g.edges() {
        let _ = writeln!(out, "{i} {j}");
    }
    out
}

/// One stabilizer per line, e.g. `+XZIII`.
pub fn stabilizer_table(g: &GraphAdjacency) -> String {
    graph_to_stabilizers(g).iter().map(|s| format!("{s}\n")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_file() {
        let g = parse_graph("5\n1 3\n2 3\n3 4\n3 5\n").unwrap();
        assert_eq!(g, GraphAdjacency::star(5, 3).unwrap());
        assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
        assert_eq!(stabilizer_table(&g).lines().next(), Some("+XIZII"));
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(parse_graph("3\n1 2\n1 4\n").unwrap_err().line, 3);
        assert_eq!(parse_graph("3\n2 2\n").unwrap_err().line, 2);
        assert_eq!(parse_graph("x\n").unwrap_err().line, 1);
    }
}
