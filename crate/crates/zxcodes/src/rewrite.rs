//! Sound rewrite rules on graph-like diagrams and the terminating
//! simplification procedure.
//!
//! Three rules remove interior spiders while preserving the denoted map up
//! to a scalar:
//!
//! * [`local_complement`] removes an interior spider with phase ±π/2,
//!   complementing the edges among its neighbours; each neighbour's phase
//!   drops by the removed spider's phase.
//! * [`pivot`] removes an adjacent pair of interior Pauli spiders u, v,
//!   complementing edges pairwise between the exclusive neighbourhoods of u
//!   and v and their common neighbourhood; exclusive neighbours of u gain
//!   v's phase, exclusive neighbours of v gain u's phase, and common
//!   neighbours gain both phases plus π.
//! * [`boundary_pivot`] removes an interior Pauli spider next to a
//!   boundary spider by unfusing the boundary spider's phase and wire onto
//!   a fresh dummy (leaving single-qubit gates on the wire decoration) and
//!   then pivoting on the pair.
//!
//! Exhausting the three rules in that order, lowest vertex ids first,
//! deletes every interior spider of a Clifford diagram. Each accepted step
//! strictly decreases the interior spider count, which bounds the procedure
//! by the initial spider count.

use std::collections::BTreeSet;

use crate::diagram::{GraphLikeDiagram, Phase, VertexId};
use crate::error::{Error, Result};

/// One rewrite instruction in a strategy script.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Directive {
    Lc(VertexId),
    Pv(VertexId, VertexId),
    Pv2(VertexId, VertexId),
    /// Run the default procedure to its fixpoint.
    Auto,
}

/// An ordered list of rewrite instructions. `Strategy::auto()` is the
/// default terminating procedure; explicit scripts let callers steer which
/// pivots fire, which shapes the final encoder.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Strategy(pub Vec<Directive>);

impl Strategy {
    pub fn auto() -> Strategy {
        Strategy(vec![Directive::Auto])
    }

    /// Line-oriented format: `lc 7`, `pv 3 12`, `pv2 4 9`, `auto`; blank
    /// lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Strategy> {
        let mut steps = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut parts = line.split_whitespace();
            let op = parts.next().unwrap().to_ascii_lowercase();
            let mut arg = || -> Result<VertexId> {
                parts
                    .next()
                    .ok_or_else(|| Error::InvalidStrategy(format!("line {}: missing vertex", lineno + 1)))?
                    .parse()
                    .map_err(|_| Error::InvalidStrategy(format!("line {}: bad vertex", lineno + 1)))
            };
            let step = match op.as_str() {
                "lc" => Directive::Lc(arg()?),
                "pv" => Directive::Pv(arg()?, arg()?),
                "pv2" => Directive::Pv2(arg()?, arg()?),
                "auto" | "default" => Directive::Auto,
                other => {
                    return Err(Error::InvalidStrategy(format!(
                        "line {}: unknown rule {other:?}",
                        lineno + 1
                    )))
                }
            };
            steps.push(step);
        }
        if steps.is_empty() {
            steps.push(Directive::Auto);
        }
        Ok(Strategy(steps))
    }
}

/// Counters reported by [`simplify`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SimplifyStats {
    pub steps: usize,
    pub local_complements: usize,
    pub pivots: usize,
    pub boundary_pivots: usize,
}

pub fn check_local_complement(d: &GraphLikeDiagram, v: VertexId) -> Result<()> {
    if !d.contains_vertex(v) {
        return Err(Error::RewritePrecondition(format!("no vertex {v}")));
    }
    if d.is_boundary(v) {
        return Err(Error::RewritePrecondition(format!(
            "vertex {v} is boundary-attached"
        )));
    }
    if !d.phase(v).is_proper_clifford() {
        return Err(Error::RewritePrecondition(format!(
            "vertex {v} has phase {:?}, expected ±π/2",
            d.phase(v)
        )));
    }
    Ok(())
}

/// Remove an interior ±π/2 spider: complement its neighbourhood and
/// subtract its phase from every neighbour.
pub fn local_complement(d: &mut GraphLikeDiagram, v: VertexId) -> Result<()> {
    check_local_complement(d, v)?;
    let p = d.phase(v);
    let ns: Vec<VertexId> = d.neighbors(v).collect();
    for (i, &a) in ns.iter().enumerate() {
        d.add_to_phase(a, -p);
        for &b in &ns[i + 1..] {
            d.add_edge_smart(a, b);
        }
    }
    d.remove_vertex(v);
    Ok(())
}

pub fn check_pivot(d: &GraphLikeDiagram, u: VertexId, v: VertexId) -> Result<()> {
    for w in [u, v] {
        if !d.contains_vertex(w) {
            return Err(Error::RewritePrecondition(format!("no vertex {w}")));
        }
        if d.is_boundary(w) {
            return Err(Error::RewritePrecondition(format!(
                "vertex {w} is boundary-attached"
            )));
        }
        if !d.phase(w).is_pauli() {
            return Err(Error::RewritePrecondition(format!(
                "vertex {w} has phase {:?}, expected 0 or π",
                d.phase(w)
            )));
        }
    }
    if u == v || !d.has_edge(u, v) {
        return Err(Error::RewritePrecondition(format!(
            "vertices {u}, {v} are not adjacent"
        )));
    }
    Ok(())
}

/// Remove an adjacent pair of interior Pauli spiders by pivoting along
/// their edge.
pub fn pivot(d: &mut GraphLikeDiagram, u: VertexId, v: VertexId) -> Result<()> {
    check_pivot(d, u, v)?;
    let pu = d.phase(u);
    let pv = d.phase(v);
    let nu: BTreeSet<VertexId> = d.neighbors(u).filter(|&w| w != v).collect();
    let nv: BTreeSet<VertexId> = d.neighbors(v).filter(|&w| w != u).collect();
    let common: Vec<VertexId> = nu.intersection(&nv).copied().collect();
    let u_only: Vec<VertexId> = nu.difference(&nv).copied().collect();
    let v_only: Vec<VertexId> = nv.difference(&nu).copied().collect();
    // complement the three bipartite interfaces
    for &a in &u_only {
        for &b in &v_only {
            d.add_edge_smart(a, b);
        }
    }
    for &a in &u_only {
        for &c in &common {
            d.add_edge_smart(a, c);
        }
    }
    for &b in &v_only {
        for &c in &common {
            d.add_edge_smart(b, c);
        }
    }
    // exclusive neighbours inherit the phase of the opposite spider; common
    // neighbours gain both phases plus π
    for &a in &u_only {
        d.add_to_phase(a, pv);
    }
    for &b in &v_only {
        d.add_to_phase(b, pu);
    }
    for &c in &common {
        d.add_to_phase(c, pu + pv + Phase::HALF);
    }
    d.remove_vertex(u);
    d.remove_vertex(v);
    Ok(())
}

pub fn check_boundary_pivot(d: &GraphLikeDiagram, u: VertexId, v: VertexId) -> Result<()> {
    if !d.contains_vertex(u) || !d.contains_vertex(v) {
        return Err(Error::RewritePrecondition(format!(
            "missing vertex {u} or {v}"
        )));
    }
    if d.is_boundary(u) {
        return Err(Error::RewritePrecondition(format!(
            "vertex {u} must be interior"
        )));
    }
    if !d.phase(u).is_pauli() {
        return Err(Error::RewritePrecondition(format!(
            "vertex {u} has phase {:?}, expected 0 or π",
            d.phase(u)
        )));
    }
    if !d.has_edge(u, v) {
        return Err(Error::RewritePrecondition(format!(
            "vertices {u}, {v} are not adjacent"
        )));
    }
    if !d.is_boundary(v) {
        return Err(Error::RewritePrecondition(format!(
            "vertex {v} must be boundary-attached"
        )));
    }
    Ok(())
}

/// Remove an interior Pauli spider `u` adjacent to a boundary spider `v`.
/// The boundary spider's phase moves onto its wire as a phase gate, a dummy
/// spider takes over the wire behind a Hadamard (also recorded on the
/// wire), and the now-interior pair (u, v) pivots away.
pub fn boundary_pivot(d: &mut GraphLikeDiagram, u: VertexId, v: VertexId) -> Result<()> {
    check_boundary_pivot(d, u, v)?;
    d.unfuse_phase_to_wire(v)?;
    let (side, index) = d.boundary_of(v).expect("checked boundary");
    d.insert_dummy_on_wire(side, index);
    pivot(d, u, v)
}

/// Generalized local complementation between two disjoint vertex clusters:
/// every cross edge toggles, both induced subgraphs and all phases stay
/// put. A pure graph operation; it is an involution.
pub fn glc(
    d: &mut GraphLikeDiagram,
    n1: &BTreeSet<VertexId>,
    n2: &BTreeSet<VertexId>,
) -> Result<()> {
    if !n1.is_disjoint(n2) {
        return Err(Error::RewritePrecondition(
            "overlapping vertex clusters".into(),
        ));
    }
    for &v in n1.iter().chain(n2) {
        if !d.contains_vertex(v) {
            return Err(Error::RewritePrecondition(format!("no vertex {v}")));
        }
    }
    for &a in n1 {
        for &b in n2 {
            d.add_edge_smart(a, b);
        }
    }
    Ok(())
}

fn first_proper_clifford(d: &GraphLikeDiagram) -> Option<VertexId> {
    d.interior_vertices()
        .find(|&v| d.phase(v).is_proper_clifford())
}

fn first_interior_pauli_pair(d: &GraphLikeDiagram) -> Option<(VertexId, VertexId)> {
    let interior: BTreeSet<VertexId> = d.interior_vertices().collect();
    for &u in &interior {
        if !d.phase(u).is_pauli() {
            continue;
        }
        for v in d.neighbors(u) {
            if v > u && interior.contains(&v) && d.phase(v).is_pauli() {
                return Some((u, v));
            }
        }
    }
    None
}

fn first_boundary_pauli(d: &GraphLikeDiagram) -> Option<(VertexId, VertexId)> {
    let interior: BTreeSet<VertexId> = d.interior_vertices().collect();
    for &u in &interior {
        if !d.phase(u).is_pauli() {
            continue;
        }
        if let Some(v) = d.neighbors(u).find(|&v| !interior.contains(&v)) {
            return Some((u, v));
        }
    }
    None
}

/// Run the default procedure to its fixpoint: exhaust local complementation
/// (lowest id first), then interior pivots (lexicographically smallest
/// pair), then boundary pivots; scalars drop as they appear. Interior count
/// strictly decreases per step, which enforces termination.
fn simplify_auto(d: &mut GraphLikeDiagram, stats: &mut SimplifyStats) -> Result<()> {
    let budget = 10 * d.num_vertices() + 10;
    loop {
        d.drop_scalar_components();
        let before = (d.num_interior(), d.num_edges());
        if let Some(v) = first_proper_clifford(d) {
            local_complement(d, v)?;
            stats.local_complements += 1;
        } else if let Some((u, v)) = first_interior_pauli_pair(d) {
            pivot(d, u, v)?;
            stats.pivots += 1;
        } else if let Some((u, v)) = first_boundary_pauli(d) {
            boundary_pivot(d, u, v)?;
            stats.boundary_pivots += 1;
        } else {
            break;
        }
        stats.steps += 1;
        let after = (d.num_interior(), d.num_edges());
        debug_assert!(after < before, "rewrite step did not make progress");
        if stats.steps > budget {
            return Err(Error::RewritePrecondition(format!(
                "simplification exceeded its step budget of {budget}"
            )));
        }
    }
    d.drop_scalar_components();
    Ok(())
}

/// Apply a strategy. Explicit steps are checked and fail loudly; `auto`
/// runs the default procedure.
pub fn simplify(d: &mut GraphLikeDiagram, strategy: &Strategy) -> Result<SimplifyStats> {
    let mut stats = SimplifyStats::default();
    for step in &strategy.0 {
        match *step {
            Directive::Lc(v) => {
                local_complement(d, v)?;
                stats.local_complements += 1;
                stats.steps += 1;
            }
            Directive::Pv(u, v) => {
                pivot(d, u, v)?;
                stats.pivots += 1;
                stats.steps += 1;
            }
            Directive::Pv2(u, v) => {
                boundary_pivot(d, u, v)?;
                stats.boundary_pivots += 1;
                stats.steps += 1;
            }
            Directive::Auto => simplify_auto(d, &mut stats)?,
        }
        d.drop_scalar_components();
    }
    Ok(stats)
}

/// The postconditions of the terminating procedure: no interior ±π/2
/// spider, no adjacent interior Pauli pair, no interior Pauli spider next
/// to a boundary spider. Clifford diagrams satisfying these have no
/// interior spiders at all.
pub fn reduced_postconditions(d: &GraphLikeDiagram) -> Result<()> {
    if let Some(v) = first_proper_clifford(d) {
        return Err(Error::GraphLike(format!(
            "interior proper Clifford spider {v} remains"
        )));
    }
    if let Some((u, v)) = first_interior_pauli_pair(d) {
        return Err(Error::GraphLike(format!(
            "adjacent interior Pauli pair ({u},{v}) remains"
        )));
    }
    if let Some((u, v)) = first_boundary_pauli(d) {
        return Err(Error::GraphLike(format!(
            "interior Pauli {u} still adjacent to boundary spider {v}"
        )));
    }
    Ok(())
}
