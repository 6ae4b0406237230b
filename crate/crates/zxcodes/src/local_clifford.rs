//! The single-qubit Clifford group modulo global phase.
//!
//! There are 24 classes. Each is stored as a canonical 2x2 matrix over the
//! Gaussian integers (scaled so that entries stay integral and the leading
//! nonzero entry is 1), which makes equality, composition, transposition and
//! Pauli conjugation exact. Boundary wires of graph-like diagrams carry one
//! of these classes as their decoration.

use std::collections::HashMap;
use std::sync::OnceLock;

use crate::dense::{Matrix, C64};
use crate::error::{Error, Result};
use crate::pauli::PauliOperator;

/// Gaussian integer a + bi.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
struct Gi(i64, i64);

impl Gi {
    const ZERO: Gi = Gi(0, 0);

    fn mul(self, o: Gi) -> Gi {
        Gi(self.0 * o.0 - self.1 * o.1, self.0 * o.1 + self.1 * o.0)
    }

    fn add(self, o: Gi) -> Gi {
        Gi(self.0 + o.0, self.1 + o.1)
    }

    fn conj(self) -> Gi {
        Gi(self.0, -self.1)
    }

    fn is_zero(self) -> bool {
        self == Gi::ZERO
    }

    fn is_unit(self) -> bool {
        self.0 * self.0 + self.1 * self.1 == 1
    }

    /// i^k
    fn i_pow(k: u8) -> Gi {
        match k % 4 {
            0 => Gi(1, 0),
            1 => Gi(0, 1),
            2 => Gi(-1, 0),
            _ => Gi(0, -1),
        }
    }

    /// Divide by (1+i) when every component parity allows it.
    fn half_divisible(self) -> bool {
        (self.0 + self.1) % 2 == 0
    }

    fn div_one_plus_i(self) -> Gi {
        Gi((self.0 + self.1) / 2, (self.1 - self.0) / 2)
    }
}

/// Row-major 2x2 Gaussian-integer matrix.
type Gm = [Gi; 4];

fn gm_mul(a: &Gm, b: &Gm) -> Gm {
    [
        a[0].mul(b[0]).add(a[1].mul(b[2])),
        a[0].mul(b[1]).add(a[1].mul(b[3])),
        a[2].mul(b[0]).add(a[3].mul(b[2])),
        a[2].mul(b[1]).add(a[3].mul(b[3])),
    ]
}

/// Reduce modulo positive real scalars and units: strip powers of (1+i),
/// then rotate so the first nonzero entry is 1. Distinct Clifford classes
/// always land on distinct canonical matrices.
fn gm_canonical(mut m: Gm) -> Gm {
    assert!(m.iter().any(|g| !g.is_zero()), "zero matrix");
    loop {
        if m.iter().all(|g| g.half_divisible()) {
            m = [
                m[0].div_one_plus_i(),
                m[1].div_one_plus_i(),
                m[2].div_one_plus_i(),
                m[3].div_one_plus_i(),
            ];
        } else {
            break;
        }
    }
    let lead = m.iter().find(|g| !g.is_zero()).copied().unwrap();
    debug_assert!(lead.is_unit(), "non-unit leading entry {lead:?}");
    // multiply by the inverse unit: inverse of i^k is i^{-k}
    let inv = lead.conj(); // for units, conjugate = inverse
    [
        m[0].mul(inv),
        m[1].mul(inv),
        m[2].mul(inv),
        m[3].mul(inv),
    ]
}

const GM_ID: Gm = [Gi(1, 0), Gi(0, 0), Gi(0, 0), Gi(1, 0)];
const GM_H: Gm = [Gi(1, 0), Gi(1, 0), Gi(1, 0), Gi(-1, 0)];
const GM_S: Gm = [Gi(1, 0), Gi(0, 0), Gi(0, 0), Gi(0, 1)];
const GM_Z: Gm = [Gi(1, 0), Gi(0, 0), Gi(0, 0), Gi(-1, 0)];
const GM_X: Gm = [Gi(0, 0), Gi(1, 0), Gi(1, 0), Gi(0, 0)];

struct ClassData {
    canon: Gm,
    word: String,
    /// image of X under conjugation, as (x, z, phase exponent)
    x_image: (bool, bool, u8),
    /// image of Z under conjugation
    z_image: (bool, bool, u8),
    transpose: u8,
    adjoint: u8,
}

struct Table {
    classes: Vec<ClassData>,
    index: HashMap<Gm, u8>,
}

static TABLE: OnceLock<Table> = OnceLock::new();

fn conj_image(u: &Gm, p: &Gm) -> (bool, bool, u8) {
    // u p u^dagger, up to positive real scale; match against i^k X^a Z^b
    let udg = [u[0].conj(), u[2].conj(), u[1].conj(), u[3].conj()];
    let m = gm_mul(&gm_mul(u, p), &udg);
    for a in [false, true] {
        for b in [false, true] {
            let base = gm_mul(
                if a { &GM_X } else { &GM_ID },
                if b { &GM_Z } else { &GM_ID },
            );
            for k in 0..4u8 {
                let cand: Gm = base.map(|g| g.mul(Gi::i_pow(k)));
                // m == c * cand for positive integer c?
                let mut scale: Option<i64> = None;
                let mut ok = true;
                for (x, y) in m.iter().zip(cand.iter()) {
                    if y.is_zero() {
                        if !x.is_zero() {
                            ok = false;
                            break;
                        }
                        continue;
                    }
                    // x = c*y with c positive real integer
                    let c = if y.0 != 0 { x.0 / y.0 } else { x.1 / y.1 };
                    if c <= 0 || Gi(c, 0).mul(*y) != *x {
                        ok = false;
                        break;
                    }
                    match scale {
                        None => scale = Some(c),
                        Some(s) if s == c => {}
                        _ => {
                            ok = false;
                            break;
                        }
                    }
                }
                if ok && scale.is_some() {
                    return (a, b, k);
                }
            }
        }
    }
    unreachable!("conjugation left the Pauli group");
}

fn build_table() -> Table {
    // Closure under the generators, breadth-first so the stored word is a
    // shortest one; ties resolve in H, S, Z, X order.
    let gens: [(char, Gm); 4] = [('H', GM_H), ('S', GM_S), ('Z', GM_Z), ('X', GM_X)];
    let mut index: HashMap<Gm, u8> = HashMap::new();
    let mut mats: Vec<Gm> = Vec::new();
    let mut words: Vec<String> = Vec::new();
    let id = gm_canonical(GM_ID);
    index.insert(id, 0);
    mats.push(id);
    words.push(String::new());
    let mut frontier = vec![0usize];
    while let Some(&_) = frontier.first() {
        let mut next = Vec::new();
        for &i in &frontier {
            for (letter, g) in &gens {
                // prepend the generator: new = g * old, so the stored word
                // reads as an operator product (rightmost letter acts first)
                let m = gm_canonical(gm_mul(g, &mats[i]));
                if let std::collections::hash_map::Entry::Vacant(e) = index.entry(m) {
                    let idx = mats.len() as u8;
                    e.insert(idx);
                    mats.push(m);
                    words.push(format!("{letter}{}", words[i]));
                    next.push(idx as usize);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    assert_eq!(mats.len(), 24, "single-qubit Clifford group has 24 classes");

    let classes = mats
        .iter()
        .enumerate()
        .map(|(i, m)| {
            let t = gm_canonical([m[0], m[2], m[1], m[3]]);
            let adj = gm_canonical([m[0].conj(), m[2].conj(), m[1].conj(), m[3].conj()]);
            ClassData {
                canon: *m,
                word: words[i].clone(),
                x_image: conj_image(m, &GM_X),
                z_image: conj_image(m, &GM_Z),
                transpose: index[&t],
                adjoint: index[&adj],
            }
        })
        .collect();
    Table { classes, index }
}

fn table() -> &'static Table {
    TABLE.get_or_init(build_table)
}

/// One of the 24 single-qubit Cliffords modulo global phase.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct LocalClifford(u8);

impl Default for LocalClifford {
    fn default() -> Self {
        LocalClifford::identity()
    }
}

impl LocalClifford {
    pub fn identity() -> Self {
        LocalClifford(0)
    }

    pub fn h() -> Self {
        Self::from_gm(GM_H)
    }

    pub fn s() -> Self {
        Self::from_gm(GM_S)
    }

    pub fn sdg() -> Self {
        Self::s().then(&Self::s()).then(&Self::s())
    }

    pub fn z() -> Self {
        Self::from_gm(GM_Z)
    }

    pub fn x() -> Self {
        Self::from_gm(GM_X)
    }

    /// S^a, the phase gate with a quarter turns.
    pub fn s_pow(a: u8) -> Self {
        let mut c = Self::identity();
        for _ in 0..a % 4 {
            c = Self::s().compose_after(&c);
        }
        c
    }

    fn from_gm(m: Gm) -> Self {
        LocalClifford(table().index[&gm_canonical(m)])
    }

    pub fn is_identity(&self) -> bool {
        self.0 == 0
    }

    /// Parse letters over H, S, Z, X; the word reads as an operator product,
    /// so the rightmost letter acts first.
    pub fn from_word(word: &str) -> Result<Self> {
        let mut m = GM_ID;
        for c in word.chars() {
            let g = match c.to_ascii_uppercase() {
                'H' => GM_H,
                'S' => GM_S,
                'Z' => GM_Z,
                'X' => GM_X,
                _ => return Err(Error::Parse(format!("invalid Clifford letter {c:?}"))),
            };
            m = gm_mul(&m, &g);
        }
        Ok(Self::from_gm(m))
    }

    /// Canonical shortest word; empty for the identity.
    pub fn word(&self) -> &'static str {
        &table().classes[self.0 as usize].word
    }

    /// Operator product `self · other` (other acts first).
    pub fn compose_after(&self, other: &LocalClifford) -> LocalClifford {
        let t = table();
        let m = gm_mul(
            &t.classes[self.0 as usize].canon,
            &t.classes[other.0 as usize].canon,
        );
        Self::from_gm(m)
    }

    /// Circuit-order composition: apply `self` first, then `next`.
    pub fn then(&self, next: &LocalClifford) -> LocalClifford {
        next.compose_after(self)
    }

    pub fn transpose(&self) -> LocalClifford {
        LocalClifford(table().classes[self.0 as usize].transpose)
    }

    pub fn adjoint(&self) -> LocalClifford {
        LocalClifford(table().classes[self.0 as usize].adjoint)
    }

    /// Dense matrix of the canonical representative (unnormalised; fixed
    /// only up to a scalar, which is all diagram semantics requires).
    pub fn to_matrix(&self) -> Matrix {
        let m = table().classes[self.0 as usize].canon;
        Matrix {
            rows: 2,
            cols: 2,
            data: m
                .iter()
                .map(|g| C64::new(g.0 as f64, g.1 as f64))
                .collect(),
        }
    }

    /// Conjugate qubit `q` of a Pauli operator by this Clifford, tracking the
    /// phase exactly. The operator factors per qubit, so only the factor at
    /// `q` changes: X^a Z^b ↦ (UXU†)^a (UZU†)^b.
    pub fn conjugate_pauli(&self, p: &mut PauliOperator, q: usize) {
        let data = &table().classes[self.0 as usize];
        let (a, b) = (p.x_bit(q), p.z_bit(q));
        let mut img = (false, false, 0u8);
        if a {
            img = mul_1q(img, data.x_image);
        }
        if b {
            img = mul_1q(img, data.z_image);
        }
        let mut x = p.x().clone();
        let mut z = p.z().clone();
        x.set(q, img.0);
        z.set(q, img.1);
        *p = PauliOperator::new(x, z, (p.phase() + img.2) % 4).unwrap();
    }
}

/// Multiply single-qubit Paulis (x1,z1,p1)·(x2,z2,p2) with exact phase.
fn mul_1q(a: (bool, bool, u8), b: (bool, bool, u8)) -> (bool, bool, u8) {
    let cross = (a.1 && b.0) as u8;
    (a.0 ^ b.0, a.1 ^ b.1, (a.2 + b.2 + 2 * cross) % 4)
}

/// How a Clifford decomposes when it sits on a wire between two Z spiders,
/// read as the edge function (row, col) ↦ M[row, col] up to a scalar.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeKind {
    /// M ∝ diag(1, i^s): a plain wire with a phase gate on the row side.
    Diagonal { s: u8 },
    /// M ∝ diag(1, i^s)·X: an X wire with a phase gate on the row side.
    AntiDiagonal { s: u8 },
    /// M ∝ diag(1, i^s_row)·H·diag(1, i^s_col): a Hadamard edge with phase
    /// gates on both sides.
    Hadamard { s_row: u8, s_col: u8 },
}

impl LocalClifford {
    pub fn edge_kind(&self) -> EdgeKind {
        let m = table().classes[self.0 as usize].canon;
        let as_pow = |g: Gi| -> u8 {
            for k in 0..4u8 {
                if g == Gi::i_pow(k) {
                    return k;
                }
            }
            unreachable!("non-unit entry {g:?} in canonical Clifford")
        };
        if m[1].is_zero() && m[2].is_zero() {
            // canonical form has m[0] = 1
            EdgeKind::Diagonal { s: as_pow(m[3]) }
        } else if m[0].is_zero() && m[3].is_zero() {
            // canonical form has m[1] = 1, so the column-side phase is absorbed
            EdgeKind::AntiDiagonal { s: as_pow(m[2]) }
        } else {
            // S^a H S^b = [[1, i^b], [i^a, -i^{a+b}]] in canonical form
            let s_col = as_pow(m[1]);
            let s_row = as_pow(m[2]);
            debug_assert_eq!(
                m[3],
                Gi::i_pow((s_row + s_col + 2) % 4),
                "unexpected dense Clifford {m:?}"
            );
            EdgeKind::Hadamard { s_row, s_col }
        }
    }
}

impl std::fmt::Debug for LocalClifford {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_identity() {
            write!(f, "LocalClifford(I)")
        } else {
            write!(f, "LocalClifford({})", self.word())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense::{mat_h, mat_s, mat_x, mat_z, proportional};

    fn word_matrix(word: &str) -> Matrix {
        let mut m = Matrix::identity(2);
        for c in word.chars() {
            let g = match c {
                'H' => mat_h(),
                'S' => mat_s(),
                'Z' => mat_z(),
                'X' => mat_x(),
                _ => panic!(),
            };
            m = m.mul(&g);
        }
        m
    }

    #[test]
    fn group_has_24_classes_pairwise_nonproportional() {
        let t = table();
        assert_eq!(t.classes.len(), 24);
        for i in 0..24 {
            for j in (i + 1)..24 {
                let a = LocalClifford(i as u8).to_matrix();
                let b = LocalClifford(j as u8).to_matrix();
                assert!(!proportional(&a, &b, 1e-9), "classes {i} and {j} collide");
            }
        }
    }

    #[test]
    fn all_short_words_reduce_and_match_dense() {
        // every word up to length 4 lands on a class whose matrix is
        // proportional to the literal product
        let letters = ['H', 'S', 'Z', 'X'];
        let mut words = vec![String::new()];
        for _ in 0..4 {
            let mut next = Vec::new();
            for w in &words {
                for l in letters {
                    next.push(format!("{w}{l}"));
                }
            }
            words = next;
            for w in &words {
                let c = LocalClifford::from_word(w).unwrap();
                assert!(proportional(&c.to_matrix(), &word_matrix(w), 1e-9), "{w}");
            }
        }
    }

    #[test]
    fn canonical_word_round_trips() {
        for i in 0..24u8 {
            let c = LocalClifford(i);
            assert_eq!(LocalClifford::from_word(c.word()).unwrap(), c);
        }
        assert_eq!(LocalClifford::identity().word(), "");
    }

    #[test]
    fn composition_matches_dense() {
        for i in 0..24u8 {
            for j in 0..24u8 {
                let a = LocalClifford(i);
                let b = LocalClifford(j);
                let c = a.compose_after(&b);
                let dense = a.to_matrix().mul(&b.to_matrix());
                assert!(proportional(&c.to_matrix(), &dense, 1e-9));
            }
        }
    }

    #[test]
    fn transpose_and_adjoint_match_dense() {
        for i in 0..24u8 {
            let c = LocalClifford(i);
            let m = c.to_matrix();
            assert!(proportional(&c.transpose().to_matrix(), &m.transpose(), 1e-9));
            let adj = Matrix {
                rows: 2,
                cols: 2,
                data: m.transpose().data.iter().map(|x| x.conj()).collect(),
            };
            assert!(proportional(&c.adjoint().to_matrix(), &adj, 1e-9));
            assert!(c
                .compose_after(&c.adjoint())
                .is_identity());
        }
    }

    #[test]
    fn pauli_conjugation_matches_dense_with_exact_sign() {
        use crate::dense::Matrix;
        for i in 0..24u8 {
            let c = LocalClifford(i);
            let u = c.to_matrix();
            let udg = Matrix {
                rows: 2,
                cols: 2,
                data: u.transpose().data.iter().map(|x| x.conj()).collect(),
            };
            for letters in ["X", "Z", "Y", "I"] {
                let mut p = PauliOperator::parse(letters).unwrap();
                let before = p.to_matrix();
                c.conjugate_pauli(&mut p, 0);
                // u is unnormalised, so u P u† = s · (U P U†) with s > 0 real;
                // requiring a positive real ratio pins the phase exactly.
                let expect = u.mul(&before).mul(&udg);
                let got = p.to_matrix();
                let idx = (0..4)
                    .max_by(|&a, &b| got.data[a].norm().total_cmp(&got.data[b].norm()))
                    .unwrap();
                let ratio = expect.data[idx] / got.data[idx];
                assert!(
                    ratio.im.abs() < 1e-9 && ratio.re > 0.0,
                    "class {i} on {letters}: ratio {ratio}"
                );
                for (e, g) in expect.data.iter().zip(&got.data) {
                    assert!((e - g * ratio).norm() < 1e-9, "class {i} on {letters}");
                }
            }
        }
    }

    #[test]
    fn conjugation_on_multiqubit_operator_leaves_other_qubits() {
        let mut p = PauliOperator::parse("XZY").unwrap();
        LocalClifford::h().conjugate_pauli(&mut p, 1);
        // H swaps X and Z on qubit 1 only
        assert!(p.x_bit(1) && !p.z_bit(1));
        assert!(p.x_bit(0) && !p.z_bit(0));
        assert!(p.x_bit(2) && p.z_bit(2));
    }
}
