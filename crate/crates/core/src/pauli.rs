//! Pauli strings and their binary symplectic representation.
//!
//! A Pauli string on `n` qubits maps to a vector `(x | z)` in `F_2^{2n}`:
//! qubit `j` carries `X` when only the x-bit is set, `Z` when only the z-bit
//! is set and `Y` when both are. Scalar prefactors are dropped, so the
//! commutator of two strings becomes `ad_a(b) = <a, b> (a + b)`, where
//! `<a, b>` is the symplectic form. The zero vector stands for "the pair
//! commuted" and never represents a Pauli string.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bits;
use crate::error::{invalid, Error, Result};

/// Largest qubit count representable with single-word masks.
pub const MAX_QUBITS: usize = 32;

/// A point of `F_2^{2n}`; bit `j` of each mask refers to qubit `j + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "PauliVectorJson", into = "PauliVectorJson")]
pub struct PauliVector {
    n: usize,
    x: u32,
    z: u32,
}

#[derive(Serialize, Deserialize)]
struct PauliVectorJson {
    n: usize,
    x: Vec<usize>,
    z: Vec<usize>,
}

impl TryFrom<PauliVectorJson> for PauliVector {
    type Error = Error;

    fn try_from(raw: PauliVectorJson) -> Result<Self> {
        check_n(raw.n)?;
        let x = bits::mask_from_labels(&raw.x, raw.n).map_err(Error::InvalidInput)?;
        let z = bits::mask_from_labels(&raw.z, raw.n).map_err(Error::InvalidInput)?;
        PauliVector::new(raw.n, x, z)
    }
}

impl From<PauliVector> for PauliVectorJson {
    fn from(v: PauliVector) -> Self {
        PauliVectorJson {
            n: v.n,
            x: v.x_support(),
            z: v.z_support(),
        }
    }
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_QUBITS {
        return invalid(format!("qubit count {n} outside 1..={MAX_QUBITS}"));
    }
    Ok(())
}

fn check_same_n(a: &PauliVector, b: &PauliVector) -> Result<()> {
    if a.n != b.n {
        return invalid(format!("qubit count mismatch: {} vs {}", a.n, b.n));
    }
    Ok(())
}

impl PauliVector {
    /// Builds a vector from raw masks (bit `j` = qubit `j + 1`).
    pub fn new(n: usize, x: u32, z: u32) -> Result<Self> {
        check_n(n)?;
        let full = bits::full_mask(n);
        if x & !full != 0 || z & !full != 0 {
            return invalid(format!("mask bits outside qubits 1..={n}"));
        }
        Ok(Self { n, x, z })
    }

    pub fn zero(n: usize) -> Result<Self> {
        Self::new(n, 0, 0)
    }

    /// `x_q` for a one-based qubit label.
    pub fn x_basis(n: usize, q: usize) -> Result<Self> {
        Self::new(n, single(n, q)?, 0)
    }

    /// `z_q` for a one-based qubit label.
    pub fn z_basis(n: usize, q: usize) -> Result<Self> {
        Self::new(n, 0, single(n, q)?)
    }

    /// `z^S`: the Z-type string supported on the qubits of `mask`.
    pub fn z_set(n: usize, mask: u32) -> Result<Self> {
        Self::new(n, 0, mask)
    }

    /// `x^S`.
    pub fn x_set(n: usize, mask: u32) -> Result<Self> {
        Self::new(n, mask, 0)
    }

    /// Inverse of [`PauliVector::index`].
    pub fn from_index(n: usize, index: usize) -> Result<Self> {
        check_n(n)?;
        let full = bits::full_mask(n) as usize;
        if n < usize::BITS as usize / 2 && index >> (2 * n) != 0 {
            return invalid(format!("index {index} out of range for n = {n}"));
        }
        Self::new(n, (index & full) as u32, ((index >> n) & full) as u32)
    }

    /// Dense index `x | z << n`, used for flat presence tables.
    pub fn index(&self) -> usize {
        self.x as usize | (self.z as usize) << self.n
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn x_mask(&self) -> u32 {
        self.x
    }

    pub fn z_mask(&self) -> u32 {
        self.z
    }

    /// Union of the x- and z-supports as a mask.
    pub fn support_mask(&self) -> u32 {
        self.x | self.z
    }

    pub fn is_zero(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    /// One-based labels of qubits with an X component.
    pub fn x_support(&self) -> Vec<usize> {
        bits::labels(self.x)
    }

    /// One-based labels of qubits with a Z component.
    pub fn z_support(&self) -> Vec<usize> {
        bits::labels(self.z)
    }

    /// Number of non-identity tensor factors.
    pub fn weight(&self) -> usize {
        self.support_mask().count_ones() as usize
    }

    /// Symplectic form; `true` iff the underlying strings anticommute.
    pub fn symplectic_product(&self, other: &Self) -> Result<bool> {
        check_same_n(self, other)?;
        Ok(self.anticommutes(other))
    }

    #[inline]
    pub(crate) fn anticommutes(&self, other: &Self) -> bool {
        ((self.x & other.z) ^ (self.z & other.x)).count_ones() & 1 == 1
    }

    /// Elementwise sum over `F_2`.
    pub fn add(&self, other: &Self) -> Result<Self> {
        check_same_n(self, other)?;
        Ok(self.add_unchecked(other))
    }

    #[inline]
    pub(crate) fn add_unchecked(&self, other: &Self) -> Self {
        Self {
            n: self.n,
            x: self.x ^ other.x,
            z: self.z ^ other.z,
        }
    }

    /// `ad_self(other)`: zero when the pair commutes, otherwise `self + other`.
    pub fn adjoint(&self, other: &Self) -> Result<Self> {
        check_same_n(self, other)?;
        Ok(self.adjoint_unchecked(other))
    }

    #[inline]
    pub(crate) fn adjoint_unchecked(&self, other: &Self) -> Self {
        if self.anticommutes(other) {
            self.add_unchecked(other)
        } else {
            Self {
                n: self.n,
                x: 0,
                z: 0,
            }
        }
    }

    pub fn from_pauli_string(s: &PauliString) -> Result<Self> {
        let n = s.len();
        check_n(n)?;
        let (mut x, mut z) = (0u32, 0u32);
        for (j, letter) in s.letters().iter().enumerate() {
            let (xb, zb) = letter.bits();
            x |= (xb as u32) << j;
            z |= (zb as u32) << j;
        }
        Ok(Self { n, x, z })
    }

    /// Letter form with phase `i^0`.
    pub fn to_pauli_string(&self) -> PauliString {
        let letters = (0..self.n)
            .map(|j| Pauli::from_bits(self.x >> j & 1 == 1, self.z >> j & 1 == 1))
            .collect();
        PauliString {
            letters,
            phase_quarter: 0,
        }
    }
}

fn single(n: usize, q: usize) -> Result<u32> {
    check_n(n)?;
    if q == 0 || q > n {
        return invalid(format!("qubit label {q} outside 1..={n}"));
    }
    Ok(1 << (q - 1))
}

impl fmt::Display for PauliVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_pauli_string())
    }
}

impl FromStr for PauliVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PauliVector::from_pauli_string(&s.parse()?)
    }
}

/// Right fold of the adjoint map: `ad_{u_1} ... ad_{u_{r-1}}(u_r)`.
///
/// Returns the zero vector as soon as an intermediate result vanishes.
pub fn evaluate_sequence(seq: &[PauliVector]) -> Result<PauliVector> {
    let (seed, rest) = seq
        .split_last()
        .ok_or_else(|| Error::InvalidInput("empty adjoint sequence".into()))?;
    let mut acc = *seed;
    for u in rest.iter().rev() {
        check_same_n(u, &acc)?;
        acc = u.adjoint_unchecked(&acc);
        if acc.is_zero() {
            return PauliVector::zero(seed.n);
        }
    }
    Ok(acc)
}

/// Single-qubit Pauli letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    /// `self * other = i^k * result`.
    pub fn mul(self, other: Pauli) -> (u8, Pauli) {
        use Pauli::*;
        match (self, other) {
            (I, p) | (p, I) => (0, p),
            (a, b) if a == b => (0, I),
            (X, Y) => (1, Z),
            (Y, Z) => (1, X),
            (Z, X) => (1, Y),
            (Y, X) => (3, Z),
            (Z, Y) => (3, X),
            (X, Z) => (3, Y),
            _ => unreachable!(),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// A Pauli string with an explicit phase `i^phase_quarter`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PauliString {
    letters: Vec<Pauli>,
    phase_quarter: u8,
}

impl PauliString {
    pub fn new(letters: Vec<Pauli>, phase_quarter: u8) -> Result<Self> {
        check_n(letters.len())?;
        Ok(Self {
            letters,
            phase_quarter: phase_quarter % 4,
        })
    }

    /// Leftmost letter is qubit 1.
    pub fn letters(&self) -> &[Pauli] {
        &self.letters
    }

    pub fn phase_quarter(&self) -> u8 {
        self.phase_quarter
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Same letters, phase multiplied by `i^k`.
    pub fn with_extra_phase(mut self, k: u8) -> Self {
        self.phase_quarter = (self.phase_quarter + k) % 4;
        self
    }

    /// Operator product `self * other` with exact phase.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.len() != other.len() {
            return invalid(format!(
                "qubit count mismatch: {} vs {}",
                self.len(),
                other.len()
            ));
        }
        let mut phase = self.phase_quarter + other.phase_quarter;
        let letters = self
            .letters
            .iter()
            .zip(&other.letters)
            .map(|(&a, &b)| {
                let (k, p) = a.mul(b);
                phase += k;
                p
            })
            .collect();
        Ok(Self {
            letters,
            phase_quarter: phase % 4,
        })
    }

    /// True iff the two strings commute as operators.
    pub fn commutes_with(&self, other: &Self) -> Result<bool> {
        let a = PauliVector::from_pauli_string(self)?;
        let b = PauliVector::from_pauli_string(other)?;
        Ok(!a.symplectic_product(&b)?)
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = ["", "i", "-", "-i"][self.phase_quarter as usize];
        f.write_str(prefix)?;
        for p in &self.letters {
            write!(f, "{}", p.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    /// Parses uppercase `I/X/Y/Z` letters; phase is `i^0`.
    fn from_str(s: &str) -> Result<Self> {
        let letters = s
            .trim()
            .chars()
            .map(|c| match c {
                'I' => Ok(Pauli::I),
                'X' => Ok(Pauli::X),
                'Y' => Ok(Pauli::Y),
                'Z' => Ok(Pauli::Z),
                other => invalid(format!("unexpected Pauli letter {other:?}")),
            })
            .collect::<Result<Vec<_>>>()?;
        if letters.is_empty() {
            return invalid("empty Pauli string");
        }
        PauliString::new(letters, 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pv(s: &str) -> PauliVector {
        s.parse().unwrap()
    }

    fn all_vectors(n: usize) -> impl Iterator<Item = PauliVector> {
        (0..1usize << (2 * n)).map(move |i| PauliVector::from_index(n, i).unwrap())
    }

    #[test]
    fn from_string_sets_bits() {
        let v = pv("XYZI");
        assert_eq!(v.x_support(), vec![1, 2]);
        assert_eq!(v.z_support(), vec![2, 3]);
        assert!(pv("IIII").is_zero());
        let zz = pv("ZZ");
        assert_eq!(zz.x_support(), Vec::<usize>::new());
        assert_eq!(zz.z_support(), vec![1, 2]);
    }

    #[test]
    fn empty_string_is_rejected() {
        assert!(matches!(
            "".parse::<PauliVector>(),
            Err(Error::InvalidInput(_))
        ));
        assert!("XQ".parse::<PauliVector>().is_err());
    }

    #[test]
    fn to_string_inverts() {
        let v = PauliVector::new(4, 0b0011, 0b0110).unwrap();
        assert_eq!(v.to_string(), "XYZI");
        assert_eq!(PauliVector::zero(3).unwrap().to_string(), "III");
        assert_eq!(PauliVector::z_set(5, 0b11111).unwrap().to_string(), "ZZZZZ");
        assert_eq!(v.to_pauli_string().phase_quarter(), 0);
    }

    #[test]
    fn symplectic_basis_relations() {
        let n = 3;
        for i in 1..=n {
            for j in 1..=n {
                let xi = PauliVector::x_basis(n, i).unwrap();
                let xj = PauliVector::x_basis(n, j).unwrap();
                let zi = PauliVector::z_basis(n, i).unwrap();
                let zj = PauliVector::z_basis(n, j).unwrap();
                assert_eq!(xi.symplectic_product(&zj).unwrap(), i == j);
                assert!(!xi.symplectic_product(&xj).unwrap());
                assert!(!zi.symplectic_product(&zj).unwrap());
            }
        }
    }

    #[test]
    fn mismatched_lengths_error() {
        let a = pv("XX");
        let b = pv("XXX");
        assert!(a.symplectic_product(&b).is_err());
        assert!(a.adjoint(&b).is_err());
        assert!(evaluate_sequence(&[a, b]).is_err());
    }

    #[test]
    fn adjoint_examples() {
        let x1 = PauliVector::x_basis(2, 1).unwrap();
        let z1 = PauliVector::z_basis(2, 1).unwrap();
        let x2 = PauliVector::x_basis(2, 2).unwrap();
        assert_eq!(x1.adjoint(&z1).unwrap(), pv("YI"));
        assert!(x1.adjoint(&x2).unwrap().is_zero());
        assert!(x1.adjoint(&x1).unwrap().is_zero());
    }

    #[test]
    fn evaluate_sequence_examples() {
        let x1 = PauliVector::x_basis(3, 1).unwrap();
        let z1 = PauliVector::z_basis(3, 1).unwrap();
        assert!(evaluate_sequence(&[x1, x1]).unwrap().is_zero());
        assert_eq!(evaluate_sequence(&[x1, z1]).unwrap(), pv("YII"));
        assert_eq!(evaluate_sequence(&[z1]).unwrap(), z1);
        assert!(evaluate_sequence(&[]).is_err());
    }

    #[test]
    fn evaluation_stops_at_zero() {
        // x1 commutes with x2, so the fold vanishes even though z1 would
        // anticommute with a nonzero intermediate.
        let n = 2;
        let x1 = PauliVector::x_basis(n, 1).unwrap();
        let x2 = PauliVector::x_basis(n, 2).unwrap();
        let z1 = PauliVector::z_basis(n, 1).unwrap();
        assert!(evaluate_sequence(&[z1, x1, x2]).unwrap().is_zero());
    }

    #[test]
    fn weight_and_supports() {
        let v = pv("XYZI");
        assert_eq!(v.weight(), 3);
        assert_eq!(PauliVector::zero(4).unwrap().weight(), 0);
        assert_eq!(PauliVector::new(6, 0b111111, 0b111111).unwrap().weight(), 6);
    }

    #[test]
    fn string_product_phases() {
        let x: PauliString = "X".parse().unwrap();
        let z: PauliString = "Z".parse().unwrap();
        let xz = x.mul(&z).unwrap();
        assert_eq!(xz.to_string(), "-iY");
        let zx = z.mul(&x).unwrap();
        assert_eq!(zx.to_string(), "iY");
        let xx: PauliString = "XX".parse().unwrap();
        assert_eq!(xx.mul(&xx).unwrap().to_string(), "II");
    }

    #[test]
    fn json_form_uses_one_based_labels() {
        let v = pv("XYZI");
        let json = serde_json::to_string(&v).unwrap();
        assert_eq!(json, r#"{"n":4,"x":[1,2],"z":[2,3]}"#);
        let back: PauliVector = serde_json::from_str(&json).unwrap();
        assert_eq!(back, v);
        assert!(serde_json::from_str::<PauliVector>(r#"{"n":2,"x":[3],"z":[]}"#).is_err());
    }

    /// For full-weight `v` and any `u` with `ad_v(u) != 0`,
    /// `wt(ad_v(u)) - (n - wt(u))` is odd and lies in `1..=n`.
    #[test]
    fn full_weight_adjoint_identity_small_n() {
        for n in 1..=4 {
            for v in all_vectors(n).filter(|v| v.weight() == n) {
                for u in all_vectors(n) {
                    let w = v.adjoint(&u).unwrap();
                    if w.is_zero() {
                        continue;
                    }
                    let sigma = w.weight() as i64 - (n as i64 - u.weight() as i64);
                    assert!(sigma % 2 == 1 && (1..=n as i64).contains(&sigma));
                }
            }
        }
    }

    fn arb_vector(n: usize) -> impl Strategy<Value = PauliVector> {
        (0..1usize << (2 * n)).prop_map(move |i| PauliVector::from_index(n, i).unwrap())
    }

    fn arb_string() -> impl Strategy<Value = String> {
        proptest::collection::vec(prop_oneof!["I", "X", "Y", "Z"], 1..=12).prop_map(|v| v.concat())
    }

    proptest! {
        #[test]
        fn adjoint_is_symmetric(a in arb_vector(6), b in arb_vector(6)) {
            prop_assert_eq!(a.adjoint(&b).unwrap(), b.adjoint(&a).unwrap());
            prop_assert!(a.adjoint(&a).unwrap().is_zero());
        }

        #[test]
        fn string_roundtrip(s in arb_string()) {
            let v: PauliVector = s.parse().unwrap();
            prop_assert_eq!(v.to_string(), s);
        }

        #[test]
        fn index_roundtrip(v in arb_vector(5)) {
            prop_assert_eq!(PauliVector::from_index(5, v.index()).unwrap(), v);
        }
    }
}
