//! Clifford circuits over {H, S, S†, Z, X, CZ, CX} with a line-oriented text
//! format ("CX 0 3", one gate per line, '#' comments) and a dense unitary for
//! oracle checks.

use crate::dense::{self, Matrix, C64};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gate {
    H(usize),
    S(usize),
    Sdg(usize),
    Z(usize),
    X(usize),
    CZ(usize, usize),
    CX(usize, usize),
}

impl Gate {
    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Gate::H(q) | Gate::S(q) | Gate::Sdg(q) | Gate::Z(q) | Gate::X(q) => vec![q],
            Gate::CZ(a, b) | Gate::CX(a, b) => vec![a, b],
        }
    }
}

impl std::fmt::Display for Gate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            Gate::H(q) => write!(f, "H {q}"),
            Gate::S(q) => write!(f, "S {q}"),
            Gate::Sdg(q) => write!(f, "SDG {q}"),
            Gate::Z(q) => write!(f, "Z {q}"),
            Gate::X(q) => write!(f, "X {q}"),
            Gate::CZ(a, b) => write!(f, "CZ {a} {b}"),
            Gate::CX(a, b) => write!(f, "CX {a} {b}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CliffordCircuit {
    qubits: usize,
    gates: Vec<Gate>,
}

impl CliffordCircuit {
    pub fn new(qubits: usize) -> Self {
        CliffordCircuit {
            qubits,
            gates: Vec::new(),
        }
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, g: Gate) -> Result<()> {
        let qs = g.qubits();
        for &q in &qs {
            if q >= self.qubits {
                return Err(Error::QubitOutOfRange {
                    index: q,
                    len: self.qubits,
                });
            }
        }
        if qs.len() == 2 && qs[0] == qs[1] {
            return Err(Error::Parse(format!("two-qubit gate on one qubit: {g}")));
        }
        self.gates.push(g);
        Ok(())
    }

    pub fn extend(&mut self, gates: impl IntoIterator<Item = Gate>) -> Result<()> {
        for g in gates {
            self.push(g)?;
        }
        Ok(())
    }

    /// Parse the text format: one gate per line, blank lines and '#' comments
    /// skipped. The qubit count is one past the highest index mentioned,
    /// unless a larger count is forced with a leading "qubits N" line.
    pub fn parse(text: &str) -> Result<Self> {
        let mut gates = Vec::new();
        let mut qubits = 0usize;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut parts = line.split_whitespace();
            let op = parts.next().unwrap().to_ascii_uppercase();
            let mut arg = |what: &str| -> Result<usize> {
                parts
                    .next()
                    .ok_or_else(|| {
                        Error::Parse(format!("line {}: missing {what}", lineno + 1))
                    })?
                    .parse()
                    .map_err(|_| Error::Parse(format!("line {}: bad {what}", lineno + 1)))
            };
            if op == "QUBITS" {
                qubits = qubits.max(arg("count")?);
                continue;
            }
            let gate = match op.as_str() {
                "H" => Gate::H(arg("qubit")?),
                "S" => Gate::S(arg("qubit")?),
                "SDG" => Gate::Sdg(arg("qubit")?),
                "Z" => Gate::Z(arg("qubit")?),
                "X" => Gate::X(arg("qubit")?),
                "CZ" => Gate::CZ(arg("qubit")?, arg("qubit")?),
                "CX" => Gate::CX(arg("control")?, arg("target")?),
                other => {
                    return Err(Error::Parse(format!(
                        "line {}: unknown gate {other:?}",
                        lineno + 1
                    )))
                }
            };
            if parts.next().is_some() {
                return Err(Error::Parse(format!(
                    "line {}: trailing arguments",
                    lineno + 1
                )));
            }
            qubits = qubits.max(gate.qubits().into_iter().max().unwrap() + 1);
            gates.push(gate);
        }
        let mut c = CliffordCircuit::new(qubits);
        c.extend(gates)?;
        Ok(c)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("qubits {}\n", self.qubits);
        for g in &self.gates {
            out.push_str(&g.to_string());
            out.push('\n');
        }
        out
    }

    /// Dense 2^n x 2^n unitary, gates applied in list order. This is the
    /// gate-by-gate oracle route, independent of the diagram contraction.
    pub fn unitary(&self) -> Result<Matrix> {
        if self.qubits > 12 {
            return Err(Error::BudgetExceeded(format!(
                "dense unitary on {} qubits",
                self.qubits
            )));
        }
        let dim = 1usize << self.qubits;
        let mut cols: Vec<Vec<C64>> = (0..dim)
            .map(|c| {
                let mut v = vec![C64::new(0.0, 0.0); dim];
                v[c] = C64::new(1.0, 0.0);
                v
            })
            .collect();
        for col in cols.iter_mut() {
            self.apply_to_state(col)?;
        }
        let mut m = Matrix::zeros(dim, dim);
        for (c, col) in cols.iter().enumerate() {
            for (r, &amp) in col.iter().enumerate() {
                m[(r, c)] = amp;
            }
        }
        Ok(m)
    }

    /// Apply the circuit to a state vector of 2^n amplitudes.
    pub fn apply_to_state(&self, state: &mut [C64]) -> Result<()> {
        let n = self.qubits;
        if state.len() != 1 << n {
            return Err(Error::LengthMismatch(state.len(), 1 << n));
        }
        for g in &self.gates {
            match *g {
                Gate::H(q) => dense::apply_1q(state, n, q, &dense::mat_h()),
                Gate::S(q) => dense::apply_1q(state, n, q, &dense::mat_s()),
                Gate::Sdg(q) => dense::apply_1q(state, n, q, &dense::mat_sdg()),
                Gate::Z(q) => dense::apply_1q(state, n, q, &dense::mat_z()),
                Gate::X(q) => dense::apply_1q(state, n, q, &dense::mat_x()),
                Gate::CZ(a, b) => dense::apply_cz(state, n, a, b),
                Gate::CX(c, t) => dense::apply_cx(state, n, c, t),
            }
        }
        Ok(())
    }
}
