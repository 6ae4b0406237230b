//! Dense complex linear algebra used as the semantic oracle.
//!
//! Everything here works with explicit state vectors and matrices, so it is
//! exponential in qubit count and guarded by budgets. Qubit 0 is the most
//! significant bit of a basis index, i.e. `index = b_0 b_1 ... b_{n-1}` read
//! as binary, matching the Kronecker order `A_0 ⊗ A_1 ⊗ ...`.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// A dense complex matrix in row-major order.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<C64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![C64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_rows(rows: &[&[C64]]) -> Self {
        let r = rows.len();
        let c = rows[0].len();
        let mut m = Matrix::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c);
            m.data[i * c..(i + 1) * c].copy_from_slice(row);
        }
        m
    }

    pub fn column(&self, c: usize) -> Vec<C64> {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn kron(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self[(i, j)];
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out[(i * other.rows + k, j * other.cols + l)] = a * other[(k, l)];
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    pub fn scale(&self, s: C64) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| x * s).collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = C64;
    fn index(&self, (r, c): (usize, usize)) -> &C64 {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut C64 {
        &mut self.data[r * self.cols + c]
    }
}

/// `true` iff `a = λ·b` for some nonzero scalar λ, entrywise within `tol`
/// after normalising both operands to unit max magnitude.
pub fn proportional(a: &Matrix, b: &Matrix, tol: f64) -> bool {
    if a.rows != b.rows || a.cols != b.cols {
        return false;
    }
    let na = a.max_abs();
    let nb = b.max_abs();
    if na <= tol && nb <= tol {
        return true; // both effectively zero
    }
    if na <= tol || nb <= tol {
        return false;
    }
    // fit λ on b's largest entry, then check entrywise
    let idx = (0..b.data.len())
        .max_by(|&i, &j| b.data[i].norm().total_cmp(&b.data[j].norm()))
        .unwrap();
    let lambda = (a.data[idx] / na) / (b.data[idx] / nb);
    a.data
        .iter()
        .zip(&b.data)
        .all(|(&x, &y)| (x / na - lambda * y / nb).norm() <= tol)
}

const Z0: C64 = C64::new(0.0, 0.0);
const P1: C64 = C64::new(1.0, 0.0);
const M1: C64 = C64::new(-1.0, 0.0);
const PI_: C64 = C64::new(0.0, 1.0);
const MI: C64 = C64::new(0.0, -1.0);

pub fn mat_i() -> Matrix {
    Matrix::identity(2)
}
pub fn mat_x() -> Matrix {
    Matrix::from_rows(&[&[Z0, P1], &[P1, Z0]])
}
pub fn mat_y() -> Matrix {
    Matrix::from_rows(&[&[Z0, MI], &[PI_, Z0]])
}
pub fn mat_z() -> Matrix {
    Matrix::from_rows(&[&[P1, Z0], &[Z0, M1]])
}
pub fn mat_h() -> Matrix {
    let s = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    Matrix::from_rows(&[&[s, s], &[s, -s]])
}
pub fn mat_s() -> Matrix {
    Matrix::from_rows(&[&[P1, Z0], &[Z0, PI_]])
}
pub fn mat_sdg() -> Matrix {
    Matrix::from_rows(&[&[P1, Z0], &[Z0, MI]])
}

/// i^k as a complex number.
pub fn i_pow(k: u8) -> C64 {
    match k % 4 {
        0 => P1,
        1 => PI_,
        2 => M1,
        _ => MI,
    }
}

/// Apply a one-qubit gate on qubit `q` of an `n`-qubit state vector.
pub fn apply_1q(state: &mut [C64], n: usize, q: usize, g: &Matrix) {
    debug_assert_eq!(state.len(), 1 << n);
    let shift = n - 1 - q;
    let bit = 1usize << shift;
    for idx in 0..state.len() {
        if idx & bit == 0 {
            let a = state[idx];
            let b = state[idx | bit];
            state[idx] = g[(0, 0)] * a + g[(0, 1)] * b;
            state[idx | bit] = g[(1, 0)] * a + g[(1, 1)] * b;
        }
    }
}

/// Apply CZ between qubits `a` and `b`.
pub fn apply_cz(state: &mut [C64], n: usize, a: usize, b: usize) {
    let ba = 1usize << (n - 1 - a);
    let bb = 1usize << (n - 1 - b);
    for (idx, amp) in state.iter_mut().enumerate() {
        if idx & ba != 0 && idx & bb != 0 {
            *amp = -*amp;
        }
    }
}

/// Apply CX with control `c` and target `t`.
pub fn apply_cx(state: &mut [C64], n: usize, c: usize, t: usize) {
    let bc = 1usize << (n - 1 - c);
    let bt = 1usize << (n - 1 - t);
    for idx in 0..state.len() {
        if idx & bc != 0 && idx & bt == 0 {
            state.swap(idx, idx | bt);
        }
    }
}

/// Tensor network contraction over binary variables.
///
/// Each factor carries a sorted variable scope and a dense table indexed with
/// the first scope variable as the most significant bit. Interior variables
/// are eliminated greedily (smallest merged scope first); the named boundary
/// variables survive into the final table, ordered as given.
pub struct FactorNet {
    factors: Vec<Factor>,
    max_entries: usize,
}

#[derive(Clone)]
struct Factor {
    vars: Vec<u32>,
    data: Vec<C64>,
}

impl Factor {
    fn value(&self, assign: &dyn Fn(u32) -> usize) -> C64 {
        let mut idx = 0usize;
        for &v in &self.vars {
            idx = idx << 1 | assign(v);
        }
        self.data[idx]
    }
}

impl FactorNet {
    pub fn new(max_entries: usize) -> Self {
        FactorNet {
            factors: Vec::new(),
            max_entries,
        }
    }

    pub fn add_factor(&mut self, vars: Vec<u32>, data: Vec<C64>) {
        debug_assert_eq!(data.len(), 1 << vars.len());
        debug_assert!(vars.windows(2).all(|w| w[0] < w[1]));
        self.factors.push(Factor { vars, data });
    }

    fn merge_scope(factors: &[&Factor], drop: Option<u32>) -> Vec<u32> {
        let mut scope: Vec<u32> = factors.iter().flat_map(|f| f.vars.iter().copied()).collect();
        scope.sort_unstable();
        scope.dedup();
        if let Some(d) = drop {
            scope.retain(|&v| v != d);
        }
        scope
    }

    fn combine(factors: Vec<Factor>, sum_over: Option<u32>, cap: usize) -> Result<Factor> {
        let refs: Vec<&Factor> = factors.iter().collect();
        let scope = Self::merge_scope(&refs, sum_over);
        if scope.len() > 60 || (1usize << scope.len()) > cap {
            return Err(Error::BudgetExceeded(format!(
                "intermediate tensor over {} variables",
                scope.len()
            )));
        }
        let mut data = vec![Z0; 1 << scope.len()];
        let pos: std::collections::HashMap<u32, usize> =
            scope.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let w = scope.len();
        for (idx, slot) in data.iter_mut().enumerate() {
            let assign = |v: u32| -> usize {
                match pos.get(&v) {
                    Some(&p) => idx >> (w - 1 - p) & 1,
                    None => usize::MAX, // the summed variable; handled below
                }
            };
            let mut acc = Z0;
            for s in 0..=usize::from(sum_over.is_some()) {
                if s == 1 && sum_over.is_none() {
                    break;
                }
                let assign2 = |v: u32| -> usize {
                    if Some(v) == sum_over {
                        s
                    } else {
                        assign(v)
                    }
                };
                let mut prod = P1;
                for f in &factors {
                    prod *= f.value(&assign2);
                }
                acc += prod;
                if sum_over.is_none() {
                    break;
                }
            }
            *slot = acc;
        }
        Ok(Factor { vars: scope, data })
    }

    /// Eliminate every variable not in `boundary`, then return the combined
    /// table over the boundary variables in the given order.
    pub fn contract(mut self, boundary: &[u32]) -> Result<Vec<C64>> {
        let bset: std::collections::HashSet<u32> = boundary.iter().copied().collect();
        loop {
            let mut interior: Vec<u32> = self
                .factors
                .iter()
                .flat_map(|f| f.vars.iter().copied())
                .filter(|v| !bset.contains(v))
                .collect();
            interior.sort_unstable();
            interior.dedup();
            let Some(&var) = interior.iter().min_by_key(|&&v| {
                let touching: Vec<&Factor> =
                    self.factors.iter().filter(|f| f.vars.contains(&v)).collect();
                Self::merge_scope(&touching, Some(v)).len()
            }) else {
                break;
            };
            let (touching, rest): (Vec<Factor>, Vec<Factor>) = self
                .factors
                .drain(..)
                .partition(|f| f.vars.contains(&var));
            let merged = Self::combine(touching, Some(var), self.max_entries)?;
            self.factors = rest;
            self.factors.push(merged);
        }
        // combine what is left into a single table over all boundary vars
        let mut all = Factor {
            vars: boundary.to_vec(),
            data: {
                let mut v = boundary.to_vec();
                v.sort_unstable();
                v.dedup();
                assert_eq!(v.len(), boundary.len(), "duplicate boundary variables");
                vec![P1; 1 << boundary.len()]
            },
        };
        all.vars.sort_unstable();
        let mut factors = std::mem::take(&mut self.factors);
        factors.push(all);
        let combined = Self::combine(factors, None, self.max_entries.max(1 << boundary.len()))?;
        // reorder from sorted scope into the requested boundary order
        let pos: std::collections::HashMap<u32, usize> = combined
            .vars
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i))
            .collect();
        let w = combined.vars.len();
        let mut out = vec![Z0; 1 << boundary.len()];
        for (idx, slot) in out.iter_mut().enumerate() {
            let mut src = 0usize;
            for (i, &v) in boundary.iter().enumerate() {
                let bit = idx >> (boundary.len() - 1 - i) & 1;
                src |= bit << (w - 1 - pos[&v]);
            }
            *slot = combined.data[src];
        }
        Ok(out)
    }
}
