//! Seeded random instances for property tests and the verification suite.

use rand::Rng;

use crate::circuit::{CliffordCircuit, Gate};
use crate::diagram::{GraphLikeDiagram, Phase};
use crate::encoder::GraphCode;
use crate::gf2::{BitVec, Gf2Matrix};
use crate::local_clifford::LocalClifford;

/// A uniform random Clifford circuit over the seven-gate set.
pub fn random_circuit(rng: &mut impl Rng, qubits: usize, gates: usize) -> CliffordCircuit {
    assert!(qubits >= 1);
    let mut c = CliffordCircuit::new(qubits);
    for _ in 0..gates {
        let q = rng.gen_range(0..qubits);
        let gate = match rng.gen_range(0..7) {
            0 => Gate::H(q),
            1 => Gate::S(q),
            2 => Gate::Sdg(q),
            3 => Gate::Z(q),
            4 => Gate::X(q),
            kind => {
                if qubits == 1 {
                    Gate::H(q)
                } else {
                    let mut r = rng.gen_range(0..qubits - 1);
                    if r >= q {
                        r += 1;
                    }
                    if kind == 5 {
                        Gate::CZ(q, r)
                    } else {
                        Gate::CX(q, r)
                    }
                }
            }
        };
        c.push(gate).unwrap();
    }
    c
}

/// A random symmetric zero-diagonal adjacency matrix.
pub fn random_graph(rng: &mut impl Rng, n: usize, edge_prob: f64) -> Gf2Matrix {
    let mut g = Gf2Matrix::zeros(n, n);
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.gen_bool(edge_prob) {
                g.set(i, j, true);
                g.set(j, i, true);
            }
        }
    }
    g
}

/// A random graph code with full-rank codeword matrix.
pub fn random_graph_code(rng: &mut impl Rng, n: usize, k: usize) -> GraphCode {
    assert!(n > k);
    let g = random_graph(rng, n, 0.5);
    loop {
        let mut gamma = Gf2Matrix::zeros(k, n);
        for r in 0..k {
            for c in 0..n {
                gamma.set(r, c, rng.gen_bool(0.5));
            }
        }
        if gamma.rank() == k {
            if let Ok(code) = GraphCode::new(g.clone(), gamma) {
                return code;
            }
        }
    }
}

/// A random valid graph-like diagram: spiders with random phases, random
/// Hadamard edges, and disjoint boundary attachments.
pub fn random_graph_like(
    rng: &mut impl Rng,
    vertices: usize,
    inputs: usize,
    outputs: usize,
) -> GraphLikeDiagram {
    assert!(vertices >= inputs + outputs);
    let mut d = GraphLikeDiagram::new();
    let ids: Vec<_> = (0..vertices)
        .map(|_| d.add_vertex(Phase::new(rng.gen_range(0..4))))
        .collect();
    for i in 0..vertices {
        for j in (i + 1)..vertices {
            if rng.gen_bool(0.4) {
                d.add_edge_smart(ids[i], ids[j]);
            }
        }
    }
    let words = ["", "H", "S", "HS", "SH", "Z", "X", "HSH"];
    for w in 0..inputs {
        let c = LocalClifford::from_word(words[rng.gen_range(0..words.len())]).unwrap();
        d.attach_input(ids[w], c);
    }
    for w in 0..outputs {
        let c = LocalClifford::from_word(words[rng.gen_range(0..words.len())]).unwrap();
        d.attach_output(ids[inputs + w], c);
    }
    debug_assert!(d.validate().is_ok());
    d
}

/// A random full-rank bit matrix.
pub fn random_full_rank(rng: &mut impl Rng, rows: usize, cols: usize) -> Gf2Matrix {
    assert!(rows <= cols);
    loop {
        let mut m = Gf2Matrix::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, rng.gen_bool(0.5));
            }
        }
        if m.rank() == rows {
            return m;
        }
    }
}

/// A random nonzero bit vector.
pub fn random_bits(rng: &mut impl Rng, len: usize) -> BitVec {
    let mut v = BitVec::zeros(len);
    for i in 0..len {
        v.set(i, rng.gen_bool(0.5));
    }
    v
}
