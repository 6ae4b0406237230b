//! Render an encoder diagram as GraphViz DOT: spiders as labeled circles,
//! Hadamard edges dashed, boundary wires solid.

use zxcodes::compose::{self, CatalogEntry};

fn main() -> zxcodes::Result<()> {
    let CatalogEntry::Encoder(e) = compose::catalog("steane")? else {
        unreachable!()
    };
    print!("{}", e.diagram().to_dot());
    eprintln!("pipe into `dot -Tsvg` to render");
    Ok(())
}
