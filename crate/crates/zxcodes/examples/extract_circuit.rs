//! Circuit extraction: column-reduce the bi-adjacency, spread the classical
//! code with CX gates, lay the graph's CZ network, and append the boundary
//! Cliffords. The round trip through circuit ingestion reproduces the
//! encoder up to a scalar.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use zxcodes::dense::proportional;
use zxcodes::diagram::{GraphLikeDiagram, PlugState};
use zxcodes::random;
use zxcodes::rewrite::{self, Strategy};
use zxcodes::EncoderDiagram;

fn main() -> zxcodes::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(314);
    let gc = random::random_graph_code(&mut rng, 5, 2);
    let encoder = EncoderDiagram::from_graph_code(&gc)?;
    println!("random [[5,2]] graph-code encoder");
    println!("gamma:\n{:?}", encoder.gamma());

    let ext = encoder.extract_circuit()?;
    println!(
        "extracted circuit (data on qubits {:?}, {} ancillas in |+>):",
        ext.data_qubits, ext.ancilla_count
    );
    print!("{}", ext.circuit.to_text());

    // round trip: ingest the circuit, plug the ancilla inputs, simplify
    let mut d = GraphLikeDiagram::from_circuit(&ext.circuit);
    let mut ancillas: Vec<usize> = (0..ext.circuit.qubits())
        .filter(|q| !ext.data_qubits.contains(q))
        .collect();
    ancillas.reverse();
    for q in ancillas {
        d.plug_input(q, PlugState::Plus)?;
    }
    rewrite::simplify(&mut d, &Strategy::auto())?;
    let ok = proportional(
        &d.evaluate_dense()?,
        &encoder.diagram().evaluate_dense()?,
        1e-9,
    );
    println!("round trip proportional to the encoder: {ok}");
    assert!(ok);
    Ok(())
}
