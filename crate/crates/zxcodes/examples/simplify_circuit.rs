//! Ingest a random Clifford circuit, reduce it to a graph-like diagram with
//! no interior spiders, and confirm against the dense oracle that every
//! rewrite preserved the unitary.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use zxcodes::dense::proportional;
use zxcodes::diagram::GraphLikeDiagram;
use zxcodes::random;
use zxcodes::rewrite::{self, Strategy};

fn main() -> zxcodes::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let circuit = random::random_circuit(&mut rng, 4, 24);
    println!("random circuit:\n{}", circuit.to_text());

    let mut diagram = GraphLikeDiagram::from_circuit(&circuit);
    println!(
        "ingested: {} spiders ({} interior), {} edges",
        diagram.num_vertices(),
        diagram.num_interior(),
        diagram.num_edges()
    );

    let stats = rewrite::simplify(&mut diagram, &Strategy::auto())?;
    println!(
        "simplified in {} steps: {} local complementations, {} pivots, {} boundary pivots",
        stats.steps, stats.local_complements, stats.pivots, stats.boundary_pivots
    );
    println!(
        "result: {} spiders ({} interior), {} edges",
        diagram.num_vertices(),
        diagram.num_interior(),
        diagram.num_edges()
    );
    rewrite::reduced_postconditions(&diagram)?;

    let sound = proportional(&diagram.evaluate_dense()?, &circuit.unitary()?, 1e-9);
    println!("dense oracle agrees up to a scalar: {sound}");
    assert!(sound);
    Ok(())
}
