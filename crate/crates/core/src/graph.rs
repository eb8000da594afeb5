//! Graphs, their graph states, and local complementation.

use alloc::vec;
use alloc::vec::Vec;

use crate::circuit::{Circuit, Gate, QubitId};
use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliString, Phase};

/// Largest graph this module accepts; rows are stored as bit masks.
pub const MAX_GRAPH_NODES: usize = 16;

/// Simple undirected graph on nodes `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GraphAdjacency {
    rows: Vec<u16>,
}

impl GraphAdjacency {
    pub fn edgeless(n: usize) -> Result<Self> {
        if n > MAX_GRAPH_NODES {
            return Err(Error::TooManyQubits { qubit_count: n, limit: MAX_GRAPH_NODES });
        }
        Ok(GraphAdjacency { rows: vec![0; n] })
    }

    /// Build from 1-based edge pairs; duplicates are ignored, self-loops rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::edgeless(n)?;
        for &(i, j) in edges {
            if i == j {
                return Err(Error::InvalidGraph);
            }
            for q in [i, j] {
                if q == 0 || q > n {
                    return Err(Error::QubitOutOfRange { qubit: q, qubit_count: n });
                }
            }
            g.set_edge(i, j, true);
        }
        Ok(g)
    }

    /// Build from a 0/1 matrix, which must be symmetric with a zero diagonal.
    pub fn from_matrix(matrix: &[Vec<u8>]) -> Result<Self> {
        let n = matrix.len();
        let mut g = Self::edgeless(n)?;
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != n {
                return Err(Error::LengthMismatch { expected: n, found: row.len() });
            }
            for (j, &e) in row.iter().enumerate() {
                if e > 1 || e != matrix[j][i] || (i == j && e != 0) {
                    return Err(Error::InvalidGraph);
                }
                if e == 1 {
                    g.rows[i] |= 1 << j;
                }
            }
        }
        Ok(g)
    }

    pub fn star(n: usize, center: usize) -> Result<Self> {
        let edges: Vec<_> = (1..=n).filter(|&v| v != center).map(|v| (center, v)).collect();
        Self::from_edges(n, &edges)
    }

    /// Cycle `1-2-...-n-1`.
    pub fn ring(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..=n).map(|v| (v, v % n + 1)).collect();
        Self::from_edges(n, &edges)
    }

    pub fn complete(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();
        Self::from_edges(n, &edges)
    }

    pub fn node_count(&self) -> usize {
        self.rows.len()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.rows[i - 1] & (1 << (j - 1)) != 0
    }

    fn set_edge(&mut self, i: usize, j: usize, on: bool) {
        let (a, b) = (i - 1, j - 1);
        if on {
            self.rows[a] |= 1 << b;
            self.rows[b] |= 1 << a;
        } else {
            self.rows[a] &= !(1 << b);
            self.rows[b] &= !(1 << a);
        }
    }

    pub fn toggle_edge(&mut self, i: usize, j: usize) {
        let on = !self.has_edge(i, j);
        self.set_edge(i, j, on);
    }

    pub fn neighbors(&self, node: QubitId) -> Vec<QubitId> {
        let row = self.rows[node.offset()];
        (0..self.node_count()).filter(|j| row & (1 << j) != 0).map(|j| QubitId::new(j + 1)).collect()
    }

    pub fn degree(&self, node: QubitId) -> usize {
        self.rows[node.offset()].count_ones() as usize
    }

    /// Edges `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.node_count();
        (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).filter(|&(i, j)| self.has_edge(i, j)).collect()
    }

    /// Row-major 0/1 matrix.
    pub fn matrix(&self) -> Vec<Vec<u8>> {
        let n = self.node_count();
        (1..=n).map(|i| (1..=n).map(|j| self.has_edge(i, j) as u8).collect()).collect()
    }

    fn check(&self, node: QubitId) -> Result<()> {
        if node.label() > self.node_count() {
            return Err(Error::QubitOutOfRange { qubit: node.label(), qubit_count: self.node_count() });
        }
        Ok(())
    }
}

/// Row `i` of the adjacency matrix read as `X` on the diagonal and `Z` for each 1.
pub fn graph_to_stabilizers(g: &GraphAdjacency) -> Vec<PauliString> {
    let n = g.node_count();
    (1..=n)
        .map(|i| {
            let letters = (1..=n)
                .map(|j| {
                    if i == j {
                        Pauli::X
                    } else if g.has_edge(i, j) {
                        Pauli::Z
                    } else {
                        Pauli::I
                    }
                })
                .collect();
            PauliString::new(Phase::PLUS_ONE, letters)
        })
        .collect()
}

/// Toggle every edge between distinct neighbours of `node`.
pub fn local_complement(g: &GraphAdjacency, node: QubitId) -> Result<GraphAdjacency> {
    g.check(node)?;
    let nbrs = g.neighbors(node);
    let mut out = g.clone();
    for (k, u) in nbrs.iter().enumerate() {
        for v in &nbrs[k + 1..] {
            out.toggle_edge(u.label(), v.label());
        }
    }
    Ok(out)
}

/// `H S H` on `node` and `S` on each of its neighbours.
///
/// Maps the graph state of `g` to that of `local_complement(g, node)` up to
/// `Z` corrections on the neighbours, which show up as flipped stabilizer signs.
pub fn lc_unitary(g: &GraphAdjacency, node: QubitId) -> Result<Circuit> {
    g.check(node)?;
    let v = node.label();
    let mut gates = vec![Gate::h(v), Gate::s(v), Gate::h(v)];
    gates.extend(g.neighbors(node).into_iter().map(|u| Gate::s(u.label())));
    Circuit::from_gates(g.node_count(), gates)
}

/// `H` on every qubit, then `CZ(i, j) = H(j) CNOT(i, j) H(j)` for each edge in lexicographic order.
pub fn graph_state_prep(g: &GraphAdjacency) -> Circuit {
    let n = g.node_count();
    let mut gates: Vec<Gate> = (1..=n).map(Gate::h).collect();
    for (i, j) in g.edges() {
        gates.extend([Gate::h(j), Gate::cnot(i, j), Gate::h(j)]);
    }
    Circuit::from_gates(n, gates).expect("edges are in range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::pauli_expectation;
    use crate::statevector::run_ideal;
    use alloc::string::{String, ToString};

    fn table(g: &GraphAdjacency) -> Vec<String> {
        graph_to_stabilizers(g).iter().map(|p| p.to_string()).collect()
    }

    #[test]
    fn star_stabilizers() {
        let g = GraphAdjacency::star(5, 3).unwrap();
        assert_eq!(table(&g), ["+XIZII", "+IXZII", "+ZZXZZ", "+IIZXI", "+IIZIX"]);
    }

    #[test]
    fn edgeless_and_ring() {
        assert_eq!(table(&GraphAdjacency::edgeless(2).unwrap()), ["+XI", "+IX"]);
        let ring = table(&GraphAdjacency::ring(5).unwrap());
        assert_eq!(ring, ["+XZIIZ", "+ZXZII", "+IZXZI", "+IIZXZ", "+ZIIZX"]);
    }

    #[test]
    fn star_complements_to_complete_and_back_to_new_star() {
        let star = GraphAdjacency::star(5, 3).unwrap();
        let k5 = local_complement(&star, QubitId::new(3)).unwrap();
        assert_eq!(k5, GraphAdjacency::complete(5).unwrap());
        assert_eq!(local_complement(&k5, QubitId::new(1)).unwrap(), GraphAdjacency::star(5, 1).unwrap());
        assert_eq!(local_complement(&k5, QubitId::new(3)).unwrap(), star);
    }

    #[test]
    fn lc_unitary_examples() {
        let star = GraphAdjacency::star(5, 3).unwrap();
        let c = lc_unitary(&star, QubitId::new(3)).unwrap();
        let expect = [Gate::h(3), Gate::s(3), Gate::h(3), Gate::s(1), Gate::s(2), Gate::s(4), Gate::s(5)];
        assert_eq!(c.gates(), expect);
        let c = lc_unitary(&GraphAdjacency::edgeless(3).unwrap(), QubitId::new(2)).unwrap();
        assert_eq!(c.gates(), [Gate::h(2), Gate::s(2), Gate::h(2)]);
        let c = lc_unitary(&GraphAdjacency::ring(5).unwrap(), QubitId::new(5)).unwrap();
        assert_eq!(c.gates(), [Gate::h(5), Gate::s(5), Gate::h(5), Gate::s(1), Gate::s(4)]);
        assert!(lc_unitary(&star, QubitId::new(6)).is_err());
    }

    #[test]
    fn prep_is_stabilized() {
        for g in [GraphAdjacency::star(5, 3).unwrap(), GraphAdjacency::ring(5).unwrap()] {
            let s = run_ideal(&graph_state_prep(&g)).unwrap();
            for k in graph_to_stabilizers(&g) {
                assert!((pauli_expectation(&s, &k).unwrap() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn cz_order_does_not_matter() {
        let g = GraphAdjacency::ring(5).unwrap();
        let forward = run_ideal(&graph_state_prep(&g)).unwrap();
        let mut rev = Circuit::from_gates(5, (1..=5).map(Gate::h)).unwrap();
        for (i, j) in g.edges().into_iter().rev() {
            rev.extend([Gate::h(i), Gate::cnot(j, i), Gate::h(i)]).unwrap();
        }
        let backward = run_ideal(&rev).unwrap();
        assert!((forward.fidelity(&backward) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(GraphAdjacency::from_edges(3, &[(1, 1)]), Err(Error::InvalidGraph));
        assert!(GraphAdjacency::from_edges(3, &[(1, 4)]).is_err());
        assert_eq!(GraphAdjacency::from_matrix(&[vec![0, 1], vec![0, 0]]), Err(Error::InvalidGraph));
        assert_eq!(GraphAdjacency::from_matrix(&[vec![1]]), Err(Error::InvalidGraph));
        let g = GraphAdjacency::from_matrix(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(g.edges(), [(1, 2)]);
        assert_eq!(g.matrix(), [vec![0, 1], vec![1, 0]]);
    }
}
