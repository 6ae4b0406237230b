//! From a check matrix to an encoder diagram: realize the encoder state as
//! a graph state with local Cliffords, bend the logical legs back into
//! inputs, and confirm the bent-state stabilizers.

use zxcodes::compose;
use zxcodes::pauli::PauliOperator;
use zxcodes::EncoderDiagram;

fn main() -> zxcodes::Result<()> {
    let code = compose::repetition_code(3);
    println!("input code: [[{},{}]] with stabilizers", code.n(), code.k());
    for g in code.stabilizers() {
        println!("  {g:?}");
    }
    let e = EncoderDiagram::from_stabilizer(&code)?;
    println!(
        "\nencoder: k={}, n={}, {} spiders, valid={}",
        e.k(),
        e.n(),
        e.diagram().num_vertices(),
        e.validate()
    );

    // the standard-form view exposes the graph-code picture
    let std_form = e.standard_form()?;
    println!("gamma:\n{:?}", std_form.gamma());
    println!("output graph:\n{:?}", std_form.output_graph());

    // the bent state of the standard form is a graph state; its check
    // matrix comes straight off the picture
    let m = std_form.encoder_state_stabilizers()?;
    println!("bent-state check matrix rows:");
    for r in 0..m.rows() {
        println!("  {:?}", PauliOperator::from_symplectic_vec(m.row(r), 0));
    }
    Ok(())
}
