//! Encoder contraction: joining output legs projects them onto the
//! unnormalized Bell state. Two five-qubit encoders fuse into a [[8,2]]
//! encoder; the six-leg bent state is the building block.

use zxcodes::compose;
use zxcodes::EncoderDiagram;

fn main() -> zxcodes::Result<()> {
    let gc = compose::five_one_three();
    let a = EncoderDiagram::from_graph_code(&gc)?;
    let b = EncoderDiagram::from_graph_code(&gc)?;
    println!("two [[5,1,3]] encoders, contracting output leg 0 with output leg 0");
    let joined = compose::contract(&a, 0, &b, 0)?;
    println!(
        "contracted encoder: k={}, n={}, valid={}",
        joined.k(),
        joined.n(),
        joined.validate()
    );
    let code = joined.extract_code()?;
    println!(
        "extracted [[{},{},{}]] code",
        code.n(),
        code.k(),
        code.min_distance(None)?
    );

    // the same object as a state: bending the five-qubit encoder gives the
    // six-qubit absolutely maximally entangled state
    let ame = a.bend();
    println!(
        "\nbent encoder: {} output legs, {} spiders (a perfect tensor)",
        ame.num_outputs(),
        ame.num_vertices()
    );
    Ok(())
}
