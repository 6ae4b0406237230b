//! Stabilizer codes: check matrices, logical operators, and the brute-force
//! distance oracle.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{BitVec, Gf2Matrix};
use crate::pauli::PauliOperator;

/// An [[n, k, d]] stabilizer code given by n-k stabilizer generators and a
/// logical X/Z frame. Construction checks the group-theoretic invariants:
/// independence, commutation, and the logical anticommutation pattern.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CodeJson", into = "CodeJson")]
pub struct StabilizerCode {
    n: usize,
    k: usize,
    stabilizers: Vec<PauliOperator>,
    logical_x: Vec<PauliOperator>,
    logical_z: Vec<PauliOperator>,
}

#[derive(Serialize, Deserialize, Clone)]
struct CodeJson {
    n: usize,
    k: usize,
    stabilizers: Vec<PauliOperator>,
    logical_x: Vec<PauliOperator>,
    logical_z: Vec<PauliOperator>,
}

impl From<StabilizerCode> for CodeJson {
    fn from(c: StabilizerCode) -> CodeJson {
        CodeJson {
            n: c.n,
            k: c.k,
            stabilizers: c.stabilizers,
            logical_x: c.logical_x,
            logical_z: c.logical_z,
        }
    }
}

impl TryFrom<CodeJson> for StabilizerCode {
    type Error = Error;
    fn try_from(j: CodeJson) -> Result<StabilizerCode> {
        StabilizerCode::new(j.n, j.k, j.stabilizers, j.logical_x, j.logical_z)
    }
}

impl StabilizerCode {
    pub fn new(
        n: usize,
        k: usize,
        stabilizers: Vec<PauliOperator>,
        logical_x: Vec<PauliOperator>,
        logical_z: Vec<PauliOperator>,
    ) -> Result<Self> {
        if k > n || stabilizers.len() != n - k || logical_x.len() != k || logical_z.len() != k {
            return Err(Error::InvalidCode(format!(
                "expected {} stabilizers and {} logical pairs, got {}/{}/{}",
                n.saturating_sub(k),
                k,
                stabilizers.len(),
                logical_x.len(),
                logical_z.len()
            )));
        }
        for p in stabilizers
            .iter()
            .chain(logical_x.iter())
            .chain(logical_z.iter())
        {
            if p.len() != n {
                return Err(Error::LengthMismatch(p.len(), n));
            }
        }
        let code = StabilizerCode {
            n,
            k,
            stabilizers,
            logical_x,
            logical_z,
        };
        code.check_invariants()?;
        Ok(code)
    }

    fn check_invariants(&self) -> Result<()> {
        let m = self.check_matrix();
        if m.rank() != self.n - self.k {
            return Err(Error::InvalidCode(
                "stabilizer rows are linearly dependent".into(),
            ));
        }
        for (i, a) in self.stabilizers.iter().enumerate() {
            for b in &self.stabilizers[i + 1..] {
                if a.symplectic_product(b)? {
                    return Err(Error::InvalidCode(format!(
                        "stabilizers anticommute: {a:?} vs {b:?}"
                    )));
                }
            }
        }
        for s in &self.stabilizers {
            for l in self.logical_x.iter().chain(&self.logical_z) {
                if s.symplectic_product(l)? {
                    return Err(Error::InvalidCode(format!(
                        "logical {l:?} anticommutes with stabilizer {s:?}"
                    )));
                }
            }
        }
        for (i, x) in self.logical_x.iter().enumerate() {
            for (j, z) in self.logical_z.iter().enumerate() {
                let anti = x.symplectic_product(z)?;
                if anti != (i == j) {
                    return Err(Error::InvalidCode(format!(
                        "logical pair ({i},{j}) has wrong commutation"
                    )));
                }
            }
            for (j, x2) in self.logical_x.iter().enumerate() {
                if i < j && x.symplectic_product(x2)? {
                    return Err(Error::InvalidCode("logical X operators anticommute".into()));
                }
            }
        }
        for (i, z) in self.logical_z.iter().enumerate() {
            for (j, z2) in self.logical_z.iter().enumerate() {
                if i < j && z.symplectic_product(z2)? {
                    return Err(Error::InvalidCode("logical Z operators anticommute".into()));
                }
            }
        }
        for l in self.logical_x.iter().chain(&self.logical_z) {
            if m.row_space_contains(&l.symplectic_vec()) {
                return Err(Error::InvalidCode(format!(
                    "logical {l:?} lies in the stabilizer row space"
                )));
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn stabilizers(&self) -> &[PauliOperator] {
        &self.stabilizers
    }

    pub fn logical_x(&self) -> &[PauliOperator] {
        &self.logical_x
    }

    pub fn logical_z(&self) -> &[PauliOperator] {
        &self.logical_z
    }

    /// The (n-k) x 2n binary check matrix [A | B].
    pub fn check_matrix(&self) -> Gf2Matrix {
        Gf2Matrix::from_rows(self.stabilizers.iter().map(|p| p.symplectic_vec()).collect())
    }

    /// Relabel qubits; qubit q of the result is qubit `perm[q]` of self.
    pub fn permuted(&self, perm: &[usize]) -> StabilizerCode {
        StabilizerCode {
            n: self.n,
            k: self.k,
            stabilizers: self.stabilizers.iter().map(|p| p.permuted(perm)).collect(),
            logical_x: self.logical_x.iter().map(|p| p.permuted(perm)).collect(),
            logical_z: self.logical_z.iter().map(|p| p.permuted(perm)).collect(),
        }
    }

    /// Minimum weight over normalizer elements outside the stabilizer group,
    /// found by enumerating the GF(2) solution space of the commutation
    /// constraints. The kernel has dimension n+k, so the enumeration costs
    /// 2^(n+k) group elements; `budget` caps that dimension (default 24).
    pub fn min_distance(&self, budget: Option<u32>) -> Result<usize> {
        let dim_budget = budget.unwrap_or(24);
        let n = self.n;
        // Commutation constraints: rows are the stabilizers' [b | a] with the
        // blocks swapped, so row · [a'|b'] is the symplectic product.
        let constraints = Gf2Matrix::from_rows(
            self.stabilizers
                .iter()
                .map(|p| p.z().concat(p.x()))
                .collect(),
        );
        let kernel = constraints.kernel_basis();
        let dim = kernel.rows();
        if dim as u32 > dim_budget {
            return Err(Error::BudgetExceeded(format!(
                "normalizer enumeration needs 2^{dim} elements (budget 2^{dim_budget})"
            )));
        }
        let stab_rows = self.check_matrix();
        let (stab_rref, stab_pivots, _) = stab_rows.rref();

        let weight = |v: &BitVec| -> usize { (0..n).filter(|&q| v.get(q) || v.get(n + q)).count() };
        let in_stabilizer = |v: &BitVec| -> bool {
            let mut rem = v.clone();
            for (i, &p) in stab_pivots.iter().enumerate() {
                if rem.get(p) {
                    rem.xor_assign(stab_rref.row(i));
                }
            }
            rem.is_zero()
        };

        // Gray-code walk, parallel over high-bit chunks: one basis-row flip
        // per step inside a chunk.
        let low_bits = dim.min(12);
        let chunk_bits = dim - low_bits;
        let best = (0..1usize << chunk_bits)
            .into_par_iter()
            .map(|chunk| {
                let mut v = BitVec::zeros(2 * n);
                for b in 0..chunk_bits {
                    if chunk >> b & 1 == 1 {
                        v.xor_assign(kernel.row(low_bits + b));
                    }
                }
                let mut local = usize::MAX;
                for step in 0..1usize << low_bits {
                    if step > 0 {
                        let flip = step.trailing_zeros() as usize;
                        v.xor_assign(kernel.row(flip));
                    }
                    if v.is_zero() {
                        continue;
                    }
                    let w = weight(&v);
                    if w < local && !in_stabilizer(&v) {
                        local = w;
                    }
                }
                local
            })
            .min()
            .unwrap_or(usize::MAX);
        if best == usize::MAX {
            return Err(Error::InvalidCode(
                "no normalizer element outside the stabilizer group".into(),
            ));
        }
        Ok(best)
    }
}
