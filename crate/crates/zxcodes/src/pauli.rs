//! Pauli operators in binary symplectic form with exact phase tracking.
//!
//! A `PauliOperator` represents `i^phase · X^x Z^z` with the X factors written
//! before the Z factors on each qubit. The binary vectors drop all phase
//! information, so the phase exponent is carried separately and every rule
//! that touches it is validated against dense 2x2 matrix products in the
//! tests.

use serde::{Deserialize, Serialize};

use crate::dense::{self, Matrix};
use crate::error::{Error, Result};
use crate::gf2::BitVec;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    x: BitVec,
    z: BitVec,
    phase: u8,
}

impl PauliOperator {
    pub fn identity(n: usize) -> Self {
        PauliOperator {
            x: BitVec::zeros(n),
            z: BitVec::zeros(n),
            phase: 0,
        }
    }

    pub fn new(x: BitVec, z: BitVec, phase: u8) -> Result<Self> {
        if x.len() != z.len() {
            return Err(Error::LengthMismatch(x.len(), z.len()));
        }
        Ok(PauliOperator {
            x,
            z,
            phase: phase % 4,
        })
    }

    /// Parse letters over I/X/Y/Z, qubit-index ascending; Y contributes a
    /// factor i so that the operator stays Hermitian.
    pub fn parse(s: &str) -> Result<Self> {
        let n = s.len();
        let mut x = BitVec::zeros(n);
        let mut z = BitVec::zeros(n);
        let mut phase = 0u8;
        for (q, c) in s.chars().enumerate() {
            match c.to_ascii_uppercase() {
                'I' => {}
                'X' => x.set(q, true),
                'Z' => z.set(q, true),
                'Y' => {
                    x.set(q, true);
                    z.set(q, true);
                    phase = (phase + 1) % 4;
                }
                _ => return Err(Error::Parse(format!("invalid Pauli letter {c:?}"))),
            }
        }
        Ok(PauliOperator { x, z, phase })
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn x(&self) -> &BitVec {
        &self.x
    }

    pub fn z(&self) -> &BitVec {
        &self.z
    }

    pub fn phase(&self) -> u8 {
        self.phase
    }

    pub fn x_bit(&self, q: usize) -> bool {
        self.x.get(q)
    }

    pub fn z_bit(&self, q: usize) -> bool {
        self.z.get(q)
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero() && self.phase == 0
    }

    /// Number of qubits acted on nontrivially.
    pub fn weight(&self) -> usize {
        (0..self.len())
            .filter(|&q| self.x.get(q) || self.z.get(q))
            .count()
    }

    /// The length-2n symplectic vector [x | z].
    pub fn symplectic_vec(&self) -> BitVec {
        self.x.concat(&self.z)
    }

    pub fn from_symplectic_vec(v: &BitVec, phase: u8) -> Self {
        let n = v.len() / 2;
        assert_eq!(v.len(), 2 * n);
        PauliOperator {
            x: v.slice(0..n),
            z: v.slice(n..2 * n),
            phase: phase % 4,
        }
    }

    /// Symplectic inner product `x·z' + x'·z` mod 2; zero iff the operators
    /// commute.
    pub fn symplectic_product(&self, other: &PauliOperator) -> Result<bool> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch(self.len(), other.len()));
        }
        Ok(self.x.dot(&other.z) ^ other.x.dot(&self.z))
    }

    pub fn commutes_with(&self, other: &PauliOperator) -> Result<bool> {
        Ok(!self.symplectic_product(other)?)
    }

    /// Group product with exact sign: moving `other`'s X block through
    /// `self`'s Z block costs (-1)^{z·x'}.
    pub fn multiply(&self, other: &PauliOperator) -> Result<PauliOperator> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch(self.len(), other.len()));
        }
        let mut x = self.x.clone();
        x.xor_assign(&other.x);
        let mut z = self.z.clone();
        z.xor_assign(&other.z);
        let cross = self.z.dot(&other.x) as u8;
        Ok(PauliOperator {
            x,
            z,
            phase: (self.phase + other.phase + 2 * cross) % 4,
        })
    }

    /// Conjugate by H on qubit q: X <-> Z, Y -> -Y.
    pub fn conj_h(&mut self, q: usize) {
        let (a, b) = (self.x.get(q), self.z.get(q));
        if a && b {
            self.phase = (self.phase + 2) % 4;
        }
        self.x.set(q, b);
        self.z.set(q, a);
    }

    /// Conjugate by S on qubit q: X -> Y, Y -> -X, Z -> Z.
    pub fn conj_s(&mut self, q: usize) {
        let (a, b) = (self.x.get(q), self.z.get(q));
        if a {
            // S X S† = i·XZ, so X^1 Z^b picks up i and flips the Z bit
            self.phase = (self.phase + 1) % 4;
            self.z.set(q, !b);
        }
    }

    /// Conjugate by Z on qubit q: X -> -X, Y -> -Y.
    pub fn conj_z(&mut self, q: usize) {
        if self.x.get(q) {
            self.phase = (self.phase + 2) % 4;
        }
    }

    /// Conjugate by X on qubit q: Z -> -Z, Y -> -Y.
    pub fn conj_x(&mut self, q: usize) {
        if self.z.get(q) {
            self.phase = (self.phase + 2) % 4;
        }
    }

    /// Conjugate by CX with control c and target t: X_c -> X_c X_t and
    /// Z_t -> Z_c Z_t, phase untouched.
    pub fn conj_cx(&mut self, c: usize, t: usize) {
        if self.x.get(c) {
            self.x.set(t, !self.x.get(t));
        }
        if self.z.get(t) {
            self.z.set(c, !self.z.get(c));
        }
    }

    /// Relabel qubits: qubit q of the result is qubit `perm[q]` of self.
    pub fn permuted(&self, perm: &[usize]) -> PauliOperator {
        let n = self.len();
        assert_eq!(perm.len(), n);
        let mut x = BitVec::zeros(n);
        let mut z = BitVec::zeros(n);
        for q in 0..n {
            x.set(q, self.x.get(perm[q]));
            z.set(q, self.z.get(perm[q]));
        }
        PauliOperator {
            x,
            z,
            phase: self.phase,
        }
    }

    /// Embed into a larger register with this operator's qubit q at
    /// `offset + q`.
    pub fn embed(&self, total: usize, offset: usize) -> PauliOperator {
        assert!(offset + self.len() <= total);
        let mut x = BitVec::zeros(total);
        let mut z = BitVec::zeros(total);
        for q in self.x.ones() {
            x.set(offset + q, true);
        }
        for q in self.z.ones() {
            z.set(offset + q, true);
        }
        PauliOperator {
            x,
            z,
            phase: self.phase,
        }
    }

    /// Dense 2^n x 2^n matrix; oracle-side only, n must stay small.
    pub fn to_matrix(&self) -> Matrix {
        let mut m = Matrix::identity(1);
        for q in 0..self.len() {
            let f = match (self.x.get(q), self.z.get(q)) {
                (false, false) => dense::mat_i(),
                (true, false) => dense::mat_x(),
                (false, true) => dense::mat_z(),
                (true, true) => dense::mat_x().mul(&dense::mat_z()),
            };
            m = m.kron(&f);
        }
        m.scale(dense::i_pow(self.phase))
    }

    /// Apply to a state vector of 2^n amplitudes in place.
    pub fn apply_to_state(&self, state: &mut Vec<dense::C64>) {
        let n = self.len();
        assert_eq!(state.len(), 1 << n);
        let mut xmask = 0usize;
        let mut zmask = 0usize;
        for q in 0..n {
            if self.x.get(q) {
                xmask |= 1 << (n - 1 - q);
            }
            if self.z.get(q) {
                zmask |= 1 << (n - 1 - q);
            }
        }
        let ph = dense::i_pow(self.phase);
        let mut out = vec![dense::C64::new(0.0, 0.0); state.len()];
        for (j, &amp) in state.iter().enumerate() {
            let sign = if (j & zmask).count_ones() % 2 == 1 {
                -1.0
            } else {
                1.0
            };
            out[j ^ xmask] = ph * amp * sign;
        }
        *state = out;
    }

    /// Render as I/X/Y/Z letters, plus the residual phase prefix when it is
    /// not absorbed by the Y factors.
    pub fn to_letters(&self) -> String {
        let mut residual = self.phase;
        let mut body = String::new();
        for q in 0..self.len() {
            body.push(match (self.x.get(q), self.z.get(q)) {
                (false, false) => 'I',
                (true, false) => 'X',
                (false, true) => 'Z',
                (true, true) => {
                    residual = (residual + 3) % 4;
                    'Y'
                }
            });
        }
        let prefix = match residual {
            0 => "",
            1 => "i",
            2 => "-",
            _ => "-i",
        };
        format!("{prefix}{body}")
    }
}

impl std::fmt::Debug for PauliOperator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_letters())
    }
}

/// Serialized form: bitstrings are qubit-index ascending.
#[derive(Serialize, Deserialize)]
struct PauliJson {
    x: String,
    z: String,
    phase: u8,
}

impl Serialize for PauliOperator {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PauliJson {
            x: self.x.to_bitstring(),
            z: self.z.to_bitstring(),
            phase: self.phase,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PauliOperator {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = PauliJson::deserialize(d)?;
        let x = BitVec::parse(&raw.x).map_err(serde::de::Error::custom)?;
        let z = BitVec::parse(&raw.z).map_err(serde::de::Error::custom)?;
        PauliOperator::new(x, z, raw.phase).map_err(serde::de::Error::custom)
    }
}
