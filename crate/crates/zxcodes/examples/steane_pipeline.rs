//! The full pipeline on the seven-qubit code: ingest the encoding circuit,
//! reduce to the graph-like encoder, and extract the check matrix, logical
//! operators, and distance.

use zxcodes::compose;

fn main() -> zxcodes::Result<()> {
    let (circuit, data) = compose::steane_circuit();
    println!("encoding circuit ({} gates, data on qubit {}):", circuit.len(), data[0]);
    print!("{}", circuit.to_text());

    let encoder = zxcodes::EncoderDiagram::from_circuit(&circuit, &data)?;
    println!(
        "\nreduced encoder: k={}, n={}, {} spiders, {} Hadamard edges, valid={}",
        encoder.k(),
        encoder.n(),
        encoder.diagram().num_vertices(),
        encoder.diagram().num_edges(),
        encoder.validate()
    );
    println!("bi-adjacency gamma:\n{:?}", encoder.gamma());
    println!("output graph:\n{:?}", encoder.output_graph());

    let code = encoder.extract_code()?;
    println!("stabilizer generators:");
    for g in code.stabilizers() {
        println!("  {g:?}");
    }
    println!("logical X: {:?}", code.logical_x()[0]);
    println!("logical Z: {:?}", code.logical_z()[0]);
    println!("distance: {}", code.min_distance(None)?);
    Ok(())
}
