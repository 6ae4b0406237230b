//! The holographic twelve-qubit block: four six-leg perfect tensors
//! contracted into an encoder of four bulk qubits, with stabilizers,
//! logical operators, distance, and an encoding circuit read off the
//! reduced diagram.

use zxcodes::compose;

fn main() -> zxcodes::Result<()> {
    let e = compose::happy_block()?;
    println!(
        "holographic block: k={}, n={}, valid={}",
        e.k(),
        e.n(),
        e.validate()
    );
    println!(
        "diagram: {} spiders, {} Hadamard edges, {} interior",
        e.diagram().num_vertices(),
        e.diagram().num_edges(),
        e.diagram().num_interior()
    );

    let code = e.extract_code()?;
    println!("\nstabilizer generators:");
    for g in code.stabilizers() {
        println!("  {g:?}");
    }
    println!("logical X operators:");
    for l in code.logical_x() {
        println!("  {l:?}");
    }
    println!("logical Z operators:");
    for l in code.logical_z() {
        println!("  {l:?}");
    }
    println!("\ndistance: {}", code.min_distance(None)?);

    let ext = e.extract_circuit()?;
    println!(
        "encoding circuit: {} gates on 12 qubits, data on {:?}, {} ancillas in |+>",
        ext.circuit.len(),
        ext.data_qubits,
        ext.ancilla_count
    );
    Ok(())
}
