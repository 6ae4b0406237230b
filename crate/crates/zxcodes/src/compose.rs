//! Building larger codes from smaller ones: concatenation, the generalized
//! local complementation fast path, encoder-leg contraction, and a catalog
//! of ready-made codes including the holographic twelve-qubit block.

use crate::circuit::{CliffordCircuit, Gate};
use crate::code::StabilizerCode;
use crate::diagram::GraphLikeDiagram;
use crate::encoder::{EncoderDiagram, GraphCode};
use crate::error::{Error, Result};
use crate::gf2::Gf2Matrix;
use crate::pauli::PauliOperator;
use crate::rewrite::{self, Strategy};

/// A concatenation: the outer encoder's outputs feed the inner encoders'
/// inputs, one basis-change circuit per inner block.
pub struct ConcatenationPlan {
    pub outer: EncoderDiagram,
    pub inners: Vec<EncoderDiagram>,
    pub basis_changes: Vec<CliffordCircuit>,
}

/// The circuit H^{⊗k}, the usual inner-code basis change.
pub fn hadamard_basis_change(k: usize) -> CliffordCircuit {
    let mut c = CliffordCircuit::new(k);
    for q in 0..k {
        c.push(Gate::H(q)).unwrap();
    }
    c
}

/// Concatenate: wire the outer code's outputs into the (basis-changed)
/// inner blocks' inputs, simplify, and validate the result.
pub fn concatenate(plan: &ConcatenationPlan) -> Result<EncoderDiagram> {
    let n = plan.outer.n();
    let consumed: usize = plan.inners.iter().map(|e| e.k()).sum();
    if consumed != n {
        return Err(Error::ArityMismatch(format!(
            "outer code has {n} outputs but inner blocks take {consumed} inputs"
        )));
    }
    if plan.basis_changes.len() != plan.inners.len() {
        return Err(Error::ArityMismatch(format!(
            "{} inner blocks but {} basis changes",
            plan.inners.len(),
            plan.basis_changes.len()
        )));
    }
    let k = plan.outer.k();
    let mut d = plan.outer.diagram().clone();
    for (inner, bc) in plan.inners.iter().zip(&plan.basis_changes) {
        let changed = inner.apply_basis_change(bc)?;
        d = d.tensor(changed.diagram());
    }
    for _ in 0..n {
        // outer outputs sit at the front; the next unconsumed block input
        // always lands at index k
        d.join_output_to_input(0, k)?;
    }
    rewrite::simplify(&mut d, &Strategy::auto())?;
    let e = EncoderDiagram::new(d)?;
    if !e.validate() {
        return Err(Error::InvalidEncoder(
            "concatenation produced a rank-deficient encoder".into(),
        ));
    }
    Ok(e)
}

/// The generalized-local-complementation fast path for concatenating graph
/// codes under the Hadamard basis change. Each outer output pairs with an
/// inner input through a Hadamard edge; pivoting on the pair complements
/// the bipartite interface between their remaining neighbourhoods and
/// deletes both. Requires the inner code's input rows of Γ to have pairwise
/// disjoint support; otherwise the generic [`concatenate`] path applies
/// (it adds π phases on the overlaps).
pub fn glc_concatenate(outer: &GraphCode, inner: &GraphCode) -> Result<EncoderDiagram> {
    let n = outer.n();
    let kp = inner.k();
    if kp == 0 || !n.is_multiple_of(kp) {
        return Err(Error::ArityMismatch(format!(
            "outer has {n} outputs; inner blocks take {kp} inputs each"
        )));
    }
    for a in 0..kp {
        for b in (a + 1)..kp {
            if (0..inner.n()).any(|c| inner.gamma().get(a, c) && inner.gamma().get(b, c)) {
                return Err(Error::RewritePrecondition(format!(
                    "inner inputs {a} and {b} share neighbours; use the generic path"
                )));
            }
        }
    }
    // stack: the outer encoder, then one bare inner block per group of
    // outer outputs, joined by Hadamard edges (the H^{⊗k'} basis change
    // turns each composition wire into a Hadamard edge)
    let mut d = outer_to_diagram(outer);
    let outer_outputs: Vec<_> = d.outputs().iter().map(|w| w.vertex).collect();
    let mut pairs = Vec::new();
    let mut out_wires = Vec::new();
    for chunk in outer_outputs.chunks(kp) {
        let in_verts: Vec<_> = (0..kp)
            .map(|_| d.add_vertex(crate::diagram::Phase::ZERO))
            .collect();
        let out_verts: Vec<_> = (0..inner.n())
            .map(|_| d.add_vertex(crate::diagram::Phase::ZERO))
            .collect();
        for (a, &iv) in in_verts.iter().enumerate() {
            for (c, &ov) in out_verts.iter().enumerate() {
                if inner.gamma().get(a, c) {
                    d.add_edge_smart(iv, ov);
                }
            }
        }
        for (a, &ov) in out_verts.iter().enumerate() {
            for b in (a + 1)..inner.n() {
                if inner.graph().get(a, b) {
                    d.add_edge_smart(ov, out_verts[b]);
                }
            }
        }
        for (&o, &iv) in chunk.iter().zip(&in_verts) {
            d.add_edge_smart(o, iv);
            pairs.push((o, iv));
        }
        out_wires.extend(out_verts);
    }
    // the outer output wires come off (those vertices turn interior) and
    // the inner blocks' outputs take over
    while d.num_outputs() > 0 {
        d.remove_output_wire(d.num_outputs() - 1);
    }
    for v in out_wires {
        d.attach_output(v, crate::local_clifford::LocalClifford::identity());
    }
    // the GLC step for each concatenated pair
    for (o, i) in pairs {
        rewrite::pivot(&mut d, o, i)?;
    }
    d.drop_scalar_components();
    let e = EncoderDiagram::new(d)?;
    if !e.validate() {
        return Err(Error::InvalidEncoder(
            "concatenation produced a rank-deficient encoder".into(),
        ));
    }
    Ok(e)
}

fn outer_to_diagram(outer: &GraphCode) -> GraphLikeDiagram {
    EncoderDiagram::from_graph_code(outer)
        .expect("graph code invariants checked")
        .into_diagram()
}

/// Contract output leg `i` of `a` with output leg `j` of `b`: tensor the
/// diagrams, join the legs with a cup (a Bell projection), and simplify.
/// The result is not validated; contraction can destroy encoder validity,
/// so callers check [`EncoderDiagram::validate`] themselves.
pub fn contract(
    a: &EncoderDiagram,
    i: usize,
    b: &EncoderDiagram,
    j: usize,
) -> Result<EncoderDiagram> {
    if i >= a.n() {
        return Err(Error::WireOutOfRange { index: i, len: a.n() });
    }
    if j >= b.n() {
        return Err(Error::WireOutOfRange { index: j, len: b.n() });
    }
    let mut d = a.diagram().tensor(b.diagram());
    d.join_outputs(i, a.n() + j)?;
    rewrite::simplify(&mut d, &Strategy::auto())?;
    EncoderDiagram::new(d)
}

/// Contract two output legs of the same encoder.
pub fn self_contract(a: &EncoderDiagram, i: usize, j: usize) -> Result<EncoderDiagram> {
    if i == j {
        return Err(Error::ArityMismatch("cannot contract a leg with itself".into()));
    }
    let mut d = a.diagram().clone();
    d.join_outputs(i, j)?;
    rewrite::simplify(&mut d, &Strategy::auto())?;
    EncoderDiagram::new(d)
}

/// The pentagon graph code: the five-qubit `[[5,1,3]]` code as a graph code
/// on the 5-cycle with the all-ones codeword.
pub fn five_one_three() -> GraphCode {
    let mut g = Gf2Matrix::zeros(5, 5);
    for i in 0..5 {
        let j = (i + 1) % 5;
        g.set(i, j, true);
        g.set(j, i, true);
    }
    GraphCode::new(g, Gf2Matrix::from_entries(1, 5, &[1, 1, 1, 1, 1])).unwrap()
}

/// The phase-flip repetition code `[[n,1,1]]`: X-type neighbour checks with
/// logical X on the first qubit and logical Z across all of them.
pub fn repetition_code(n: usize) -> StabilizerCode {
    assert!(n >= 2);
    let mut stabs = Vec::new();
    for i in 0..n - 1 {
        let mut s = vec!['I'; n];
        s[i] = 'X';
        s[i + 1] = 'X';
        stabs.push(PauliOperator::parse(&s.iter().collect::<String>()).unwrap());
    }
    let mut x = vec!['I'; n];
    x[0] = 'X';
    StabilizerCode::new(
        n,
        1,
        stabs,
        vec![PauliOperator::parse(&x.iter().collect::<String>()).unwrap()],
        vec![PauliOperator::parse(&"Z".repeat(n)).unwrap()],
    )
    .unwrap()
}

/// A standard encoding circuit for the seven-qubit CSS code: the data
/// fans out along a weight-3 logical X, then each X-type generator spreads
/// from its pivot behind a Hadamard.
pub fn steane_circuit() -> (CliffordCircuit, Vec<usize>) {
    let mut c = CliffordCircuit::new(7);
    let gates = [
        Gate::CX(2, 4),
        Gate::CX(2, 5),
        Gate::H(0),
        Gate::CX(0, 2),
        Gate::CX(0, 4),
        Gate::CX(0, 6),
        Gate::H(1),
        Gate::CX(1, 2),
        Gate::CX(1, 5),
        Gate::CX(1, 6),
        Gate::H(3),
        Gate::CX(3, 4),
        Gate::CX(3, 5),
        Gate::CX(3, 6),
    ];
    c.extend(gates).unwrap();
    (c, vec![2])
}

/// The standard check matrix (and weight-7 logical frame) of the Steane
/// code, the target for row-space comparisons.
pub fn steane_code() -> StabilizerCode {
    let parse = |rows: &[&str]| -> Vec<PauliOperator> {
        rows.iter()
            .map(|s| PauliOperator::parse(s).unwrap())
            .collect()
    };
    StabilizerCode::new(
        7,
        1,
        parse(&[
            "IIIXXXX", "IXXIIXX", "XIXIXIX", "IIIZZZZ", "IZZIIZZ", "ZIZIZIZ",
        ]),
        parse(&["XXXXXXX"]),
        parse(&["ZZZZZZZ"]),
    )
    .unwrap()
}

/// The Steane encoder built from its encoding circuit and simplified.
pub fn steane_encoder() -> Result<EncoderDiagram> {
    let (circuit, data) = steane_circuit();
    EncoderDiagram::from_circuit(&circuit, &data)
}

/// The holographic block: four six-leg perfect tensors (bent five-qubit
/// encoders) contracted pairwise, encoding the four bulk qubits A, B, C, D
/// into twelve boundary qubits.
pub fn happy_block() -> Result<EncoderDiagram> {
    let tensor = || -> Result<EncoderDiagram> {
        let e = EncoderDiagram::from_graph_code(&five_one_three())?;
        // the bent encoder is the six-leg state; legs: [logical, p0..p4]
        EncoderDiagram::new(e.bend())
    };
    let s1 = tensor()?; // legs [A, 1, 2, 3, α, β]
    let s2 = tensor()?; // legs [B, α', 4, 5, 6, γ']
    let s3 = tensor()?; // legs [C, γ, 7, 8, 9, δ']
    let s4 = tensor()?; // legs [D, δ, β', 10, 11, 12]
    // contract α with α': s1 leg 4, s2 leg 1
    let c1 = contract(&s1, 4, &s2, 1)?;
    // legs now [A,1,2,3,β, B,4,5,6,γ']
    let c2 = contract(&c1, 9, &s3, 1)?;
    // legs now [A,1,2,3,β, B,4,5,6, C,7,8,9,δ']
    let c3 = contract(&c2, 13, &s4, 1)?;
    // legs now [A,1,2,3,β, B,4,5,6, C,7,8,9, D,β',10,11,12]
    let c4 = self_contract(&c3, 4, 14)?;
    // legs now [A,1,2,3, B,4,5,6, C,7,8,9, D,10,11,12]
    let mut d = c4.into_diagram();
    d.permute_outputs(&[0, 4, 8, 12, 1, 2, 3, 5, 6, 7, 9, 10, 11, 13, 14, 15])?;
    let bulk_first = d.bend_to_map(4)?;
    let e = EncoderDiagram::new(bulk_first)?;
    if !e.validate() {
        return Err(Error::InvalidEncoder(
            "holographic block failed validation".into(),
        ));
    }
    Ok(e)
}

/// A named object from the catalog of paper-scale codes.
#[derive(Clone, Debug)]
pub enum CatalogEntry {
    GraphCode(GraphCode),
    Encoder(EncoderDiagram),
    Code(StabilizerCode),
}

/// Look up a fixture by name: `five_one_three`, `steane`, `repetition(n)`,
/// `shor`, `ame6`, or `happy`.
pub fn catalog(name: &str) -> Result<CatalogEntry> {
    let name = name.trim();
    if let Some(rest) = name
        .strip_prefix("repetition(")
        .and_then(|r| r.strip_suffix(')'))
    {
        let n: usize = rest
            .parse()
            .map_err(|_| Error::UnknownCatalog(name.to_string()))?;
        if n < 2 {
            return Err(Error::UnknownCatalog(name.to_string()));
        }
        return Ok(CatalogEntry::Code(repetition_code(n)));
    }
    match name {
        "five_one_three" => Ok(CatalogEntry::GraphCode(five_one_three())),
        "steane" => Ok(CatalogEntry::Encoder(steane_encoder()?)),
        "shor" => {
            let rep = repetition_code(3);
            let inner = EncoderDiagram::from_stabilizer(&rep)?;
            let plan = ConcatenationPlan {
                outer: inner.clone(),
                inners: vec![inner.clone(), inner.clone(), inner],
                basis_changes: vec![hadamard_basis_change(1); 3],
            };
            Ok(CatalogEntry::Encoder(concatenate(&plan)?))
        }
        "ame6" => {
            let e = EncoderDiagram::from_graph_code(&five_one_three())?;
            Ok(CatalogEntry::Encoder(EncoderDiagram::new(e.bend())?))
        }
        "happy" => Ok(CatalogEntry::Encoder(happy_block()?)),
        other => Err(Error::UnknownCatalog(other.to_string())),
    }
}
