//! Graph-like Clifford ZX-diagrams.
//!
//! A diagram holds Z spiders with quarter-turn phases, Hadamard edges, and
//! boundary wires. The graph-like conditions are:
//!
//! 1. all spiders are Z spiders;
//! 2. spiders connect only through Hadamard edges;
//! 3. no parallel edges and no self-loops;
//! 4. each boundary wire attaches to exactly one spider, and each spider
//!    carries at most one boundary attachment.
//!
//! Condition 1 and 2 hold by construction (there is only one vertex and edge
//! kind); 3 holds because edge insertion toggles (parallel Hadamard edges
//! cancel) and self-edges turn into a π phase; 4 is checked by
//! [`GraphLikeDiagram::validate`]. Single-qubit unitaries on the boundary
//! live as [`LocalClifford`] decorations on the wires, not as extra spiders.
//!
//! Semantics: a spider with phase α and m legs is the rank-m tensor with
//! entry 1 at the all-zero index and e^{iα} at the all-one index; each edge
//! carries a Hadamard; an output decoration U applies after the bare
//! diagram, an input decoration V applies before it. All scalars are
//! dropped: diagrams denote maps up to a nonzero factor and are compared
//! with [`crate::dense::proportional`].

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::circuit::{CliffordCircuit, Gate};
use crate::dense::{self, FactorNet, Matrix, C64};
use crate::error::{Error, Result};
use crate::local_clifford::{EdgeKind, LocalClifford};

pub type VertexId = u32;

/// A spider phase, in quarter turns mod 4.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Phase(u8);

impl Phase {
    pub const ZERO: Phase = Phase(0);
    pub const QUARTER: Phase = Phase(1);
    pub const HALF: Phase = Phase(2);
    pub const THREE_QUARTERS: Phase = Phase(3);

    pub fn new(quarter_turns: u8) -> Phase {
        Phase(quarter_turns % 4)
    }

    pub fn quarter_turns(&self) -> u8 {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0 == 0
    }

    /// Phase 0 or π.
    pub fn is_pauli(&self) -> bool {
        self.0.is_multiple_of(2)
    }

    /// Phase ±π/2.
    pub fn is_proper_clifford(&self) -> bool {
        self.0 % 2 == 1
    }

}

impl std::ops::Add for Phase {
    type Output = Phase;
    fn add(self, other: Phase) -> Phase {
        Phase((self.0 + other.0) % 4)
    }
}

impl std::ops::Neg for Phase {
    type Output = Phase;
    fn neg(self) -> Phase {
        Phase((4 - self.0) % 4)
    }
}

impl std::fmt::Debug for Phase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", ["0", "π/2", "π", "3π/2"][self.0 as usize])
    }
}

/// Which boundary a wire belongs to.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    Input,
    Output,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BoundaryWire {
    pub vertex: VertexId,
    pub clifford: LocalClifford,
}

/// The six single-qubit stabilizer states, used to plug open input wires.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PlugState {
    Zero,
    One,
    Plus,
    Minus,
    PlusI,
    MinusI,
}

#[derive(Clone, PartialEq, Eq)]
pub struct GraphLikeDiagram {
    phases: BTreeMap<VertexId, Phase>,
    adj: BTreeMap<VertexId, BTreeSet<VertexId>>,
    inputs: Vec<BoundaryWire>,
    outputs: Vec<BoundaryWire>,
    next_id: VertexId,
}

impl Default for GraphLikeDiagram {
    fn default() -> Self {
        Self::new()
    }
}

impl GraphLikeDiagram {
    pub fn new() -> Self {
        GraphLikeDiagram {
            phases: BTreeMap::new(),
            adj: BTreeMap::new(),
            inputs: Vec::new(),
            outputs: Vec::new(),
            next_id: 0,
        }
    }

    // ---- vertices and edges ----------------------------------------------

    /// Ids are never reused within a diagram's lifetime, so rewrite traces
    /// stay reproducible.
    pub fn add_vertex(&mut self, phase: Phase) -> VertexId {
        let id = self.next_id;
        self.next_id += 1;
        self.phases.insert(id, phase);
        self.adj.insert(id, BTreeSet::new());
        id
    }

    pub fn remove_vertex(&mut self, v: VertexId) {
        debug_assert!(
            self.boundary_of(v).is_none(),
            "removing a boundary-attached vertex"
        );
        let nbrs: Vec<VertexId> = self.neighbors(v).collect();
        for w in nbrs {
            self.adj.get_mut(&w).unwrap().remove(&v);
        }
        self.adj.remove(&v);
        self.phases.remove(&v);
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.phases.contains_key(&v)
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.phases.keys().copied()
    }

    pub fn num_vertices(&self) -> usize {
        self.phases.len()
    }

    pub fn phase(&self, v: VertexId) -> Phase {
        self.phases[&v]
    }

    pub fn set_phase(&mut self, v: VertexId, p: Phase) {
        *self.phases.get_mut(&v).unwrap() = p;
    }

    pub fn add_to_phase(&mut self, v: VertexId, p: Phase) {
        let cur = self.phases[&v];
        self.set_phase(v, cur + p);
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.adj[&v].iter().copied()
    }

    pub fn neighbor_set(&self, v: VertexId) -> &BTreeSet<VertexId> {
        &self.adj[&v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[&v].len()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adj.get(&u).is_some_and(|s| s.contains(&v))
    }

    /// Toggle the Hadamard edge u–v: parallel Hadamard edges cancel in
    /// pairs, and a self-edge folds into a π phase on the spider.
    pub fn add_edge_smart(&mut self, u: VertexId, v: VertexId) {
        if u == v {
            self.add_to_phase(u, Phase::HALF);
            return;
        }
        if self.has_edge(u, v) {
            self.adj.get_mut(&u).unwrap().remove(&v);
            self.adj.get_mut(&v).unwrap().remove(&u);
        } else {
            self.adj.get_mut(&u).unwrap().insert(v);
            self.adj.get_mut(&v).unwrap().insert(u);
        }
    }

    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.adj
            .iter()
            .flat_map(|(&u, s)| s.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn num_edges(&self) -> usize {
        self.edges().count()
    }

    // ---- boundary ---------------------------------------------------------

    pub fn inputs(&self) -> &[BoundaryWire] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[BoundaryWire] {
        &self.outputs
    }

    pub fn num_inputs(&self) -> usize {
        self.inputs.len()
    }

    pub fn num_outputs(&self) -> usize {
        self.outputs.len()
    }

    pub fn attach_input(&mut self, v: VertexId, clifford: LocalClifford) -> usize {
        assert!(self.contains_vertex(v));
        self.inputs.push(BoundaryWire {
            vertex: v,
            clifford,
        });
        self.inputs.len() - 1
    }

    pub fn attach_output(&mut self, v: VertexId, clifford: LocalClifford) -> usize {
        assert!(self.contains_vertex(v));
        self.outputs.push(BoundaryWire {
            vertex: v,
            clifford,
        });
        self.outputs.len() - 1
    }

    pub fn wire(&self, side: Side, index: usize) -> &BoundaryWire {
        match side {
            Side::Input => &self.inputs[index],
            Side::Output => &self.outputs[index],
        }
    }

    /// Drop an output wire, leaving the spider in place (it becomes
    /// interior unless it holds another attachment).
    pub fn remove_output_wire(&mut self, index: usize) -> BoundaryWire {
        self.outputs.remove(index)
    }

    pub fn set_wire_clifford(&mut self, side: Side, index: usize, clifford: LocalClifford) {
        self.wire_mut(side, index).clifford = clifford;
    }

    /// Reorder the output wires: new wire i is old wire `perm[i]`.
    pub fn permute_outputs(&mut self, perm: &[usize]) -> Result<()> {
        if perm.len() != self.outputs.len() {
            return Err(Error::ArityMismatch(format!(
                "permutation of length {} on {} outputs",
                perm.len(),
                self.outputs.len()
            )));
        }
        let mut seen = vec![false; perm.len()];
        for &p in perm {
            if p >= perm.len() || seen[p] {
                return Err(Error::ArityMismatch("not a permutation".into()));
            }
            seen[p] = true;
        }
        self.outputs = perm.iter().map(|&p| self.outputs[p].clone()).collect();
        Ok(())
    }

    fn wire_mut(&mut self, side: Side, index: usize) -> &mut BoundaryWire {
        match side {
            Side::Input => &mut self.inputs[index],
            Side::Output => &mut self.outputs[index],
        }
    }

    /// The boundary attachment of a vertex, if any.
    pub fn boundary_of(&self, v: VertexId) -> Option<(Side, usize)> {
        if let Some(i) = self.inputs.iter().position(|w| w.vertex == v) {
            return Some((Side::Input, i));
        }
        self.outputs
            .iter()
            .position(|w| w.vertex == v)
            .map(|i| (Side::Output, i))
    }

    pub fn is_boundary(&self, v: VertexId) -> bool {
        self.boundary_of(v).is_some()
    }

    pub fn is_interior(&self, v: VertexId) -> bool {
        !self.is_boundary(v)
    }

    pub fn interior_vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        let attached: BTreeSet<VertexId> = self
            .inputs
            .iter()
            .chain(&self.outputs)
            .map(|w| w.vertex)
            .collect();
        self.vertices().filter(move |v| !attached.contains(v))
    }

    pub fn num_interior(&self) -> usize {
        self.interior_vertices().count()
    }

    /// Check the graph-like conditions that mutation does not maintain by
    /// itself: every wire attaches to an existing spider and no spider
    /// carries two boundary attachments.
    pub fn validate(&self) -> Result<()> {
        let mut seen = BTreeSet::new();
        for (side, wires) in [(Side::Input, &self.inputs), (Side::Output, &self.outputs)] {
            for (i, w) in wires.iter().enumerate() {
                if !self.contains_vertex(w.vertex) {
                    return Err(Error::GraphLike(format!(
                        "{side:?} wire {i} attaches to missing vertex {}",
                        w.vertex
                    )));
                }
                if !seen.insert(w.vertex) {
                    return Err(Error::GraphLike(format!(
                        "vertex {} carries more than one boundary attachment",
                        w.vertex
                    )));
                }
            }
        }
        for (&u, s) in &self.adj {
            if s.contains(&u) {
                return Err(Error::GraphLike(format!("self-loop at {u}")));
            }
            for &v in s {
                if !self.adj.get(&v).is_some_and(|t| t.contains(&u)) {
                    return Err(Error::GraphLike(format!("asymmetric edge {u}-{v}")));
                }
            }
        }
        Ok(())
    }

    /// Drop connected components with no boundary wire (pure scalars).
    /// Returns how many vertices were removed.
    pub fn drop_scalar_components(&mut self) -> usize {
        let mut keep: BTreeSet<VertexId> = BTreeSet::new();
        let mut stack: Vec<VertexId> = self
            .inputs
            .iter()
            .chain(&self.outputs)
            .map(|w| w.vertex)
            .collect();
        while let Some(v) = stack.pop() {
            if keep.insert(v) {
                stack.extend(self.neighbors(v));
            }
        }
        let drop: Vec<VertexId> = self.vertices().filter(|v| !keep.contains(v)).collect();
        for v in &drop {
            self.remove_vertex(*v);
        }
        drop.len()
    }

    /// Apply an injective relabeling of vertex ids; connectivity is all that
    /// matters semantically, so this leaves the denoted map unchanged.
    pub fn relabeled(&self, f: impl Fn(VertexId) -> VertexId) -> GraphLikeDiagram {
        let mut d = GraphLikeDiagram::new();
        let mut max = 0;
        for v in self.vertices() {
            let nv = f(v);
            max = max.max(nv + 1);
            d.phases.insert(nv, self.phase(v));
            d.adj.insert(nv, BTreeSet::new());
        }
        assert_eq!(d.phases.len(), self.phases.len(), "relabeling not injective");
        for (u, v) in self.edges() {
            let (nu, nv) = (f(u), f(v));
            d.adj.get_mut(&nu).unwrap().insert(nv);
            d.adj.get_mut(&nv).unwrap().insert(nu);
        }
        d.inputs = self
            .inputs
            .iter()
            .map(|w| BoundaryWire {
                vertex: f(w.vertex),
                clifford: w.clifford,
            })
            .collect();
        d.outputs = self
            .outputs
            .iter()
            .map(|w| BoundaryWire {
                vertex: f(w.vertex),
                clifford: w.clifford,
            })
            .collect();
        d.next_id = max;
        d
    }

    // ---- structure-preserving surgery -------------------------------------

    /// Move a boundary wire onto a fresh phase-0 spider joined to the old
    /// attachment by a Hadamard edge, compensating with an H on the wire
    /// decoration. Semantics are unchanged; the old vertex becomes interior
    /// (unless it holds another wire). Returns the fresh vertex.
    pub fn insert_dummy_on_wire(&mut self, side: Side, index: usize) -> VertexId {
        let old = self.wire(side, index).clone();
        let t = self.add_vertex(Phase::ZERO);
        self.add_edge_smart(old.vertex, t);
        let h = LocalClifford::h();
        let clifford = match side {
            // out: old_vertex -H-> t -dec'-> boundary, dec'·H = dec
            Side::Output => old.clifford.compose_after(&h),
            // in: boundary -dec'-> t -H-> old_vertex, H·dec' = dec
            Side::Input => h.compose_after(&old.clifford),
        };
        *self.wire_mut(side, index) = BoundaryWire {
            vertex: t,
            clifford,
        };
        t
    }

    /// Fold a boundary spider's phase into its wire decoration as a phase
    /// gate, leaving the spider Pauli-free (phase 0).
    pub fn unfuse_phase_to_wire(&mut self, v: VertexId) -> Result<()> {
        let Some((side, index)) = self.boundary_of(v) else {
            return Err(Error::RewritePrecondition(format!(
                "vertex {v} has no boundary wire to absorb its phase"
            )));
        };
        let a = self.phase(v).quarter_turns();
        if a == 0 {
            return Ok(());
        }
        let s = LocalClifford::s_pow(a);
        let w = self.wire_mut(side, index);
        w.clifford = match side {
            // the spider phase acts on the leg next to the spider
            Side::Output => w.clifford.compose_after(&s),
            Side::Input => s.compose_after(&w.clifford),
        };
        self.set_phase(v, Phase::ZERO);
        Ok(())
    }

    /// Fuse `v` into `u` along an implicit plain wire: phases add, edges
    /// merge with parallel-Hadamard cancellation, and a direct Hadamard edge
    /// between the two becomes a self-loop, i.e. a π phase.
    fn fuse(&mut self, u: VertexId, v: VertexId) {
        debug_assert_ne!(u, v);
        if self.has_edge(u, v) {
            self.add_edge_smart(u, v); // remove
            self.add_to_phase(u, Phase::HALF);
        }
        self.add_to_phase(u, self.phase(v));
        let nbrs: Vec<VertexId> = self.neighbors(v).collect();
        for w in nbrs {
            self.adj.get_mut(&w).unwrap().remove(&v);
            self.adj.get_mut(&v).unwrap().remove(&w);
            self.add_edge_smart(u, w);
        }
        // any boundary wires of v move to u
        for w in self.inputs.iter_mut().chain(self.outputs.iter_mut()) {
            if w.vertex == v {
                w.vertex = u;
            }
        }
        self.remove_vertex(v);
    }

    /// Connect two spiders through a wire carrying the single-qubit Clifford
    /// `w`, read as the function (x_u, x_v) ↦ w[x_u, x_v], and absorb it:
    /// diagonal parts become spider phases, a Hadamard becomes an edge
    /// toggle, and an X becomes a π spider between two Hadamard edges.
    fn join_with(&mut self, u: VertexId, v: VertexId, w: LocalClifford) {
        debug_assert_ne!(u, v);
        match w.edge_kind() {
            EdgeKind::Diagonal { s } => {
                self.add_to_phase(u, Phase::new(s));
                self.fuse(u, v);
            }
            EdgeKind::AntiDiagonal { s } => {
                self.add_to_phase(u, Phase::new(s));
                let m = self.add_vertex(Phase::HALF);
                self.add_edge_smart(u, m);
                self.add_edge_smart(m, v);
            }
            EdgeKind::Hadamard { s_row, s_col } => {
                self.add_to_phase(u, Phase::new(s_row));
                self.add_to_phase(v, Phase::new(s_col));
                self.add_edge_smart(u, v);
            }
        }
    }

    fn take_wire(&mut self, side: Side, index: usize) -> BoundaryWire {
        match side {
            Side::Input => self.inputs.remove(index),
            Side::Output => self.outputs.remove(index),
        }
    }

    /// Join two output wires with a cup (projection onto the unnormalized
    /// Bell state). Decorations on both wires are absorbed into the joined
    /// edge. Wire indices refer to the current output list.
    pub fn join_outputs(&mut self, i: usize, j: usize) -> Result<()> {
        if i == j || i >= self.outputs.len() || j >= self.outputs.len() {
            return Err(Error::WireOutOfRange {
                index: i.max(j),
                len: self.outputs.len(),
            });
        }
        if self.outputs[i].vertex == self.outputs[j].vertex {
            self.insert_dummy_on_wire(Side::Output, j);
        }
        let (first, second) = if i < j { (j, i) } else { (i, j) };
        let wj = self.take_wire(Side::Output, first);
        let wi = self.take_wire(Side::Output, second);
        // cup on legs (a, b): sum_z U[z,x_a] V[z,x_b] = (Uᵀ V)[x_a, x_b]
        let (a, b, u, v) = if i < j {
            (wi.vertex, wj.vertex, wi.clifford, wj.clifford)
        } else {
            (wj.vertex, wi.vertex, wj.clifford, wi.clifford)
        };
        self.join_with(a, b, u.transpose().compose_after(&v));
        Ok(())
    }

    /// Feed output wire `i` into input wire `j` (plain composition).
    pub fn join_output_to_input(&mut self, i: usize, j: usize) -> Result<()> {
        if i >= self.outputs.len() {
            return Err(Error::WireOutOfRange {
                index: i,
                len: self.outputs.len(),
            });
        }
        if j >= self.inputs.len() {
            return Err(Error::WireOutOfRange {
                index: j,
                len: self.inputs.len(),
            });
        }
        if self.outputs[i].vertex == self.inputs[j].vertex {
            self.insert_dummy_on_wire(Side::Input, j);
        }
        let wo = self.take_wire(Side::Output, i);
        let wi = self.take_wire(Side::Input, j);
        // flow a -U-> -V-> b: f(x_a, x_b) = (V·U)[x_b, x_a] = (Uᵀ Vᵀ)[x_a, x_b]
        let w = wo
            .clifford
            .transpose()
            .compose_after(&wi.clifford.transpose());
        self.join_with(wo.vertex, wi.vertex, w);
        Ok(())
    }

    /// Disjoint union; the other diagram's wires are appended after this
    /// one's, and its vertices are renumbered to stay distinct.
    pub fn tensor(&self, other: &GraphLikeDiagram) -> GraphLikeDiagram {
        let offset = self.next_id;
        let mut d = self.clone();
        for v in other.vertices() {
            d.phases.insert(v + offset, other.phase(v));
            d.adj.insert(v + offset, BTreeSet::new());
        }
        for (u, v) in other.edges() {
            d.adj.get_mut(&(u + offset)).unwrap().insert(v + offset);
            d.adj.get_mut(&(v + offset)).unwrap().insert(u + offset);
        }
        for w in &other.inputs {
            d.inputs.push(BoundaryWire {
                vertex: w.vertex + offset,
                clifford: w.clifford,
            });
        }
        for w in &other.outputs {
            d.outputs.push(BoundaryWire {
                vertex: w.vertex + offset,
                clifford: w.clifford,
            });
        }
        d.next_id = offset + other.next_id;
        d
    }

    /// Plug a stabilizer state into an input wire, removing the wire. The
    /// wire decoration is pushed into the state first, so this is exact.
    pub fn plug_input(&mut self, index: usize, state: PlugState) -> Result<()> {
        if index >= self.inputs.len() {
            return Err(Error::WireOutOfRange {
                index,
                len: self.inputs.len(),
            });
        }
        let wire = self.take_wire(Side::Input, index);
        // |s> is the +1 eigenstate of a Pauli P; V|s> is fixed by V P V†.
        let mut p = crate::pauli::PauliOperator::parse(match state {
            PlugState::Zero | PlugState::One => "Z",
            PlugState::Plus | PlugState::Minus => "X",
            PlugState::PlusI | PlugState::MinusI => "Y",
        })
        .unwrap();
        if matches!(state, PlugState::One | PlugState::Minus | PlugState::MinusI) {
            p = p
                .multiply(&crate::pauli::PauliOperator::new(
                    crate::gf2::BitVec::zeros(1),
                    crate::gf2::BitVec::zeros(1),
                    2,
                )
                .unwrap())
                .unwrap();
        }
        wire.clifford.conjugate_pauli(&mut p, 0);
        let v = wire.vertex;
        // classify ±X, ±Y, ±Z; the Y phase exponent is odd by Hermiticity
        let minus = match (p.x_bit(0), p.z_bit(0)) {
            (true, true) => p.phase() == 3, // i^3·XZ = -Y, i·XZ = Y
            _ => p.phase() == 2,
        };
        match (p.x_bit(0), p.z_bit(0), minus) {
            (true, false, false) => {}                                  // |+>: fuses away
            (true, false, true) => self.add_to_phase(v, Phase::HALF),   // |->
            (true, true, false) => self.add_to_phase(v, Phase::QUARTER), // |+i>
            (true, true, true) => self.add_to_phase(v, Phase::THREE_QUARTERS), // |-i>
            (false, true, minus) => {
                // |0> or |1>: a fresh spider behind a Hadamard edge
                let t = self.add_vertex(if minus { Phase::HALF } else { Phase::ZERO });
                self.add_edge_smart(t, v);
            }
            (false, false, _) => unreachable!("plug state has identity stabilizer"),
        }
        Ok(())
    }

    // ---- map-state duality -------------------------------------------------

    /// Bend every input wire into an output (partial transpose on the
    /// computational basis). Former inputs come first in the new output
    /// order; their decorations transpose.
    pub fn bend_to_state(&self) -> GraphLikeDiagram {
        let mut d = self.clone();
        let bent: Vec<BoundaryWire> = d
            .inputs
            .drain(..)
            .map(|w| BoundaryWire {
                vertex: w.vertex,
                clifford: w.clifford.transpose(),
            })
            .collect();
        let old = std::mem::take(&mut d.outputs);
        d.outputs = bent.into_iter().chain(old).collect();
        d
    }

    /// Bend the first `k` output wires of a state (a diagram with no inputs)
    /// back into inputs; inverse of [`Self::bend_to_state`].
    pub fn bend_to_map(&self, k: usize) -> Result<GraphLikeDiagram> {
        if !self.inputs.is_empty() {
            return Err(Error::ArityMismatch(
                "bend_to_map expects a state (no input wires)".into(),
            ));
        }
        if k > self.outputs.len() {
            return Err(Error::WireOutOfRange {
                index: k,
                len: self.outputs.len(),
            });
        }
        let mut d = self.clone();
        let rest = d.outputs.split_off(k);
        d.inputs = d
            .outputs
            .drain(..)
            .map(|w| BoundaryWire {
                vertex: w.vertex,
                clifford: w.clifford.transpose(),
            })
            .collect();
        d.outputs = rest;
        Ok(d)
    }

    // ---- dense semantics ---------------------------------------------------

    /// Contract the diagram to a 2^outputs x 2^inputs matrix. Wire 0 is the
    /// most significant bit on each side. Guarded by an overall boundary
    /// budget of 16 wires and an intermediate-tensor cap; interior spiders
    /// beyond the guaranteed budget are fine as long as the contraction
    /// stays small.
    pub fn evaluate_dense(&self) -> Result<Matrix> {
        let ni = self.inputs.len();
        let no = self.outputs.len();
        if ni + no > 16 {
            return Err(Error::BudgetExceeded(format!(
                "{} boundary wires (cap 16)",
                ni + no
            )));
        }
        let mut net = FactorNet::new(1 << 22);
        let one = C64::new(1.0, 0.0);
        for v in self.vertices() {
            net.add_factor(vec![v], vec![one, dense::i_pow(self.phase(v).quarter_turns())]);
        }
        for (u, v) in self.edges() {
            net.add_factor(vec![u, v], vec![one, one, one, -one]);
        }
        // boundary wires may share vertices in not-yet-graph-like diagrams;
        // contract over distinct vertices, then fan out per wire
        let wires: Vec<&BoundaryWire> = self.outputs.iter().chain(&self.inputs).collect();
        let mut vars: Vec<u32> = wires.iter().map(|w| w.vertex).collect();
        let mut uniq = vars.clone();
        uniq.sort_unstable();
        uniq.dedup();
        let t = net.contract(&uniq)?;
        let pos: std::collections::HashMap<u32, usize> =
            uniq.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let total = wires.len();
        let mut full = vec![C64::new(0.0, 0.0); 1 << total];
        for (idx, slot) in full.iter_mut().enumerate() {
            let mut src = 0usize;
            let mut consistent = true;
            let mut seen: std::collections::HashMap<u32, usize> = Default::default();
            for (w, var) in vars.iter().enumerate() {
                let bit = idx >> (total - 1 - w) & 1;
                match seen.entry(*var) {
                    std::collections::hash_map::Entry::Occupied(e) => {
                        if *e.get() != bit {
                            consistent = false;
                            break;
                        }
                    }
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(bit);
                        src |= bit << (uniq.len() - 1 - pos[var]);
                    }
                }
            }
            if consistent {
                *slot = t[src];
            }
        }
        vars.clear();
        // decorations: U after the diagram on outputs, V before it on inputs
        for (w, wire) in wires.iter().enumerate() {
            let g = if w < no {
                wire.clifford.to_matrix()
            } else {
                wire.clifford.to_matrix().transpose()
            };
            dense::apply_1q(&mut full, total, w, &g);
        }
        Ok(Matrix {
            rows: 1 << no,
            cols: 1 << ni,
            data: full,
        })
    }

    /// The bent state as a dense vector over former-inputs-then-outputs.
    pub fn bent_state_vector(&self) -> Result<Vec<C64>> {
        let m = self.bend_to_state().evaluate_dense()?;
        Ok(m.data)
    }

    // ---- circuit ingestion -------------------------------------------------

    /// Turn a Clifford circuit into an equivalent graph-like diagram. Spider
    /// fusion absorbs diagonal gates into wire frontiers, Hadamards toggle a
    /// pending flag that materializes as Hadamard edges, CZ toggles an edge
    /// between frontiers, CX is H-conjugated CZ, and dummy spiders keep the
    /// boundary conditions intact.
    pub fn from_circuit(c: &CliffordCircuit) -> GraphLikeDiagram {
        let n = c.qubits();
        let mut d = GraphLikeDiagram::new();
        // frontier: open wire of qubit q leaves `spider`, with an optional
        // not-yet-materialized Hadamard on it
        struct Frontier {
            spider: VertexId,
            pending_h: bool,
        }
        let mut front: Vec<Frontier> = (0..n)
            .map(|q| {
                let s = d.add_vertex(Phase::ZERO);
                let w = d.attach_input(s, LocalClifford::identity());
                debug_assert_eq!(w, q);
                Frontier {
                    spider: s,
                    pending_h: false,
                }
            })
            .collect();
        fn materialize(d: &mut GraphLikeDiagram, f: &mut Frontier) {
            if f.pending_h {
                let t = d.add_vertex(Phase::ZERO);
                d.add_edge_smart(f.spider, t);
                f.spider = t;
                f.pending_h = false;
            }
        }
        // a diagonal gate commutes onto the frontier spider's phase
        fn diagonal(d: &mut GraphLikeDiagram, f: &mut Frontier, quarter_turns: u8) {
            materialize(d, f);
            d.add_to_phase(f.spider, Phase::new(quarter_turns));
        }
        for g in c.gates() {
            match *g {
                Gate::H(q) => front[q].pending_h = !front[q].pending_h,
                Gate::S(q) => diagonal(&mut d, &mut front[q], 1),
                Gate::Sdg(q) => diagonal(&mut d, &mut front[q], 3),
                Gate::Z(q) => diagonal(&mut d, &mut front[q], 2),
                Gate::X(q) => {
                    // X·H = H·Z pushes through a pending Hadamard for free
                    if front[q].pending_h {
                        d.add_to_phase(front[q].spider, Phase::HALF);
                    } else {
                        front[q].pending_h = true;
                        diagonal(&mut d, &mut front[q], 2);
                        front[q].pending_h = true;
                    }
                }
                Gate::CZ(a, b) => {
                    let (fa, fb) = (a.min(b), a.max(b));
                    let (left, right) = front.split_at_mut(fb);
                    materialize(&mut d, &mut left[fa]);
                    materialize(&mut d, &mut right[0]);
                    d.add_edge_smart(left[fa].spider, right[0].spider);
                }
                Gate::CX(c_, t) => {
                    // CX = (I⊗H)·CZ·(I⊗H) on the target
                    front[t].pending_h = !front[t].pending_h;
                    let (fa, fb) = (c_.min(t), c_.max(t));
                    let (left, right) = front.split_at_mut(fb);
                    materialize(&mut d, &mut left[fa]);
                    materialize(&mut d, &mut right[0]);
                    d.add_edge_smart(left[fa].spider, right[0].spider);
                    front[t].pending_h = !front[t].pending_h;
                }
            }
        }
        for f in front.iter_mut() {
            materialize(&mut d, f);
            if d.is_boundary(f.spider) {
                // the input spider cannot also take the output wire
                let t = d.add_vertex(Phase::ZERO);
                d.add_edge_smart(f.spider, t);
                d.attach_output(t, LocalClifford::h());
            } else {
                d.attach_output(f.spider, LocalClifford::identity());
            }
        }
        debug_assert!(d.validate().is_ok());
        d
    }

    // ---- export ------------------------------------------------------------

    /// GraphViz DOT text: spiders as circles labeled with their phase,
    /// Hadamard edges dashed, boundary wires solid with decoration labels.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph zx {\n  rankdir=LR;\n");
        for v in self.vertices() {
            let label = match self.phase(v).quarter_turns() {
                0 => String::new(),
                1 => "π/2".into(),
                2 => "π".into(),
                3 => "3π/2".into(),
                _ => unreachable!(),
            };
            s.push_str(&format!(
                "  v{v} [shape=circle, style=filled, fillcolor=\"#d8f8d8\", label=\"{label}\"];\n"
            ));
        }
        for (u, v) in self.edges() {
            s.push_str(&format!("  v{u} -- v{v} [style=dashed, color=blue];\n"));
        }
        for (i, w) in self.inputs.iter().enumerate() {
            let label = if w.clifford.is_identity() {
                String::new()
            } else {
                format!(" [label=\"{}\"]", w.clifford.word())
            };
            s.push_str(&format!("  in{i} [shape=point];\n"));
            s.push_str(&format!("  in{i} -- v{}{};\n", w.vertex, label));
        }
        for (i, w) in self.outputs.iter().enumerate() {
            let label = if w.clifford.is_identity() {
                String::new()
            } else {
                format!(" [label=\"{}\"]", w.clifford.word())
            };
            s.push_str(&format!("  out{i} [shape=point];\n"));
            s.push_str(&format!("  v{} -- out{i}{};\n", w.vertex, label));
        }
        s.push_str("}\n");
        s
    }
}

impl std::fmt::Debug for GraphLikeDiagram {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "GraphLikeDiagram(v={}, e={}, in={}, out={})",
            self.num_vertices(),
            self.num_edges(),
            self.inputs.len(),
            self.outputs.len()
        )
    }
}

// ---- serialization ---------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct VertexJson {
    id: VertexId,
    phase: u8,
}

#[derive(Serialize, Deserialize)]
struct WireJson {
    wire: usize,
    vertex: VertexId,
    clifford: String,
}

#[derive(Serialize, Deserialize)]
struct DiagramJson {
    version: u32,
    vertices: Vec<VertexJson>,
    edges: Vec<(VertexId, VertexId)>,
    inputs: Vec<WireJson>,
    outputs: Vec<WireJson>,
}

impl Serialize for GraphLikeDiagram {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let wire_json = |wires: &[BoundaryWire]| {
            wires
                .iter()
                .enumerate()
                .map(|(i, w)| WireJson {
                    wire: i,
                    vertex: w.vertex,
                    clifford: w.clifford.word().to_string(),
                })
                .collect()
        };
        DiagramJson {
            version: 1,
            vertices: self
                .vertices()
                .map(|v| VertexJson {
                    id: v,
                    phase: self.phase(v).quarter_turns(),
                })
                .collect(),
            edges: self.edges().collect(),
            inputs: wire_json(&self.inputs),
            outputs: wire_json(&self.outputs),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GraphLikeDiagram {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = DiagramJson::deserialize(d)?;
        if raw.version != 1 {
            return Err(D::Error::custom(format!(
                "unsupported diagram version {}",
                raw.version
            )));
        }
        let mut g = GraphLikeDiagram::new();
        for v in &raw.vertices {
            if v.phase > 3 {
                return Err(D::Error::custom("phase must be 0..=3 quarter turns"));
            }
            if g.phases.insert(v.id, Phase::new(v.phase)).is_some() {
                return Err(D::Error::custom(format!("duplicate vertex id {}", v.id)));
            }
            g.adj.insert(v.id, BTreeSet::new());
            g.next_id = g.next_id.max(v.id + 1);
        }
        for &(u, v) in &raw.edges {
            if u == v || !g.contains_vertex(u) || !g.contains_vertex(v) || g.has_edge(u, v) {
                return Err(D::Error::custom(format!("bad edge ({u},{v})")));
            }
            g.add_edge_smart(u, v);
        }
        let read_wires = |list: &[WireJson]| -> std::result::Result<Vec<BoundaryWire>, D::Error> {
            let mut sorted = list.to_vec();
            sorted.sort_by_key(|w| w.wire);
            sorted
                .iter()
                .enumerate()
                .map(|(i, w)| {
                    if w.wire != i {
                        return Err(D::Error::custom("wire indices must be 0..n"));
                    }
                    Ok(BoundaryWire {
                        vertex: w.vertex,
                        clifford: LocalClifford::from_word(&w.clifford)
                            .map_err(D::Error::custom)?,
                    })
                })
                .collect()
        };
        g.inputs = read_wires(&raw.inputs)?;
        g.outputs = read_wires(&raw.outputs)?;
        g.validate().map_err(D::Error::custom)?;
        Ok(g)
    }
}

impl Clone for WireJson {
    fn clone(&self) -> Self {
        WireJson {
            wire: self.wire,
            vertex: self.vertex,
            clifford: self.clifford.clone(),
        }
    }
}
