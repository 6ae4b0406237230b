//! Code concatenation: the seven-qubit code into itself (a [[49,1]] code
//! with a weight-9 logical), and the three-qubit repetition code into
//! itself under a Hadamard basis change (the nine-qubit code).

use zxcodes::compose::{self, ConcatenationPlan};
use zxcodes::EncoderDiagram;

fn main() -> zxcodes::Result<()> {
    // [[7,1,3]] into itself
    let (gc7, _) = compose::steane_encoder()?.to_graph_code()?;
    let seven = EncoderDiagram::from_graph_code(&gc7)?;
    let plan = ConcatenationPlan {
        outer: seven.clone(),
        inners: vec![seven; 7],
        basis_changes: vec![compose::hadamard_basis_change(1); 7],
    };
    let big = compose::concatenate(&plan)?;
    println!(
        "self-concatenated seven-qubit code: k={}, n={}, valid={}",
        big.k(),
        big.n(),
        big.validate()
    );
    let code = big.extract_code()?;
    println!(
        "  {} independent stabilizer generators, rank {}",
        code.stabilizers().len(),
        code.check_matrix().rank()
    );

    // repetition into repetition with a Hadamard between the levels
    let rep = compose::repetition_code(3);
    let inner = EncoderDiagram::from_stabilizer(&rep)?;
    let plan = ConcatenationPlan {
        outer: inner.clone(),
        inners: vec![inner.clone(), inner.clone(), inner],
        basis_changes: vec![compose::hadamard_basis_change(1); 3],
    };
    let nine = compose::concatenate(&plan)?;
    let code = nine.extract_code()?;
    println!(
        "repetition ∘ H ∘ repetition: [[{},{},{}]]",
        code.n(),
        code.k(),
        code.min_distance(None)?
    );
    Ok(())
}
