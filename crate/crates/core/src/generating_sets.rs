//! Parity sets, parity generating sets and the sufficient universality
//! conditions on chains of parity sets.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bits;
use crate::error::{invalid, Error, Result};
use crate::pauli::{PauliVector, MAX_QUBITS};

/// Ordered list of nonempty subsets of `{1..n}`; each subset labels one
/// parity qubit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ParitySetJson", into = "ParitySetJson")]
pub struct ParitySet {
    n: usize,
    sets: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct ParitySetJson {
    n: usize,
    sets: Vec<Vec<usize>>,
}

impl TryFrom<ParitySetJson> for ParitySet {
    type Error = Error;

    fn try_from(raw: ParitySetJson) -> Result<Self> {
        ParitySet::from_labels(raw.n, &raw.sets)
    }
}

impl From<ParitySet> for ParitySetJson {
    fn from(p: ParitySet) -> Self {
        ParitySetJson {
            n: p.n,
            sets: p.sets.iter().map(|&s| bits::labels(s)).collect(),
        }
    }
}

impl ParitySet {
    /// Builds a parity set from masks (bit `j` = qubit `j + 1`).
    pub fn new(n: usize, sets: Vec<u32>) -> Result<Self> {
        if n == 0 || n > MAX_QUBITS {
            return invalid(format!("qubit count {n} outside 1..={MAX_QUBITS}"));
        }
        let full = bits::full_mask(n);
        for (i, &s) in sets.iter().enumerate() {
            if s == 0 {
                return invalid(format!("parity set {} is empty", i + 1));
            }
            if s & !full != 0 {
                return invalid(format!("parity set {} has labels outside 1..={n}", i + 1));
            }
        }
        Ok(Self { n, sets })
    }

    /// Builds a parity set from one-based labels.
    pub fn from_labels(n: usize, sets: &[Vec<usize>]) -> Result<Self> {
        if n == 0 || n > MAX_QUBITS {
            return invalid(format!("qubit count {n} outside 1..={MAX_QUBITS}"));
        }
        let masks = sets
            .iter()
            .map(|s| bits::mask_from_labels(s, n).map_err(Error::InvalidInput))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, masks)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// Masks in order.
    pub fn masks(&self) -> &[u32] {
        &self.sets
    }

    /// One-based labels of set `i` (zero-based index).
    pub fn labels(&self, i: usize) -> Vec<usize> {
        bits::labels(self.sets[i])
    }

    /// Position of the first set equal to `mask`.
    pub fn position(&self, mask: u32) -> Option<usize> {
        self.sets.iter().position(|&s| s == mask)
    }

    /// Copy with set `i` (zero-based) removed.
    pub fn without(&self, i: usize) -> Self {
        let mut sets = self.sets.clone();
        sets.remove(i);
        Self { n: self.n, sets }
    }

    fn sub_list(&self, indices: &[usize]) -> Self {
        Self {
            n: self.n,
            sets: indices.iter().map(|&i| self.sets[i]).collect(),
        }
    }
}

impl fmt::Display for ParitySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} [", self.n)?;
        for (i, &s) in self.sets.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            let labels: Vec<String> = bits::labels(s).iter().map(|q| q.to_string()).collect();
            write!(f, "{{{}}}", labels.join(","))?;
        }
        f.write_str("]")
    }
}

/// One failed clause of the chain conditions. Set indices are one-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "violation", rename_all = "kebab-case")]
pub enum Violation {
    /// Condition 1: every set has even size.
    OddSize { set: usize, size: usize },
    /// Condition 2: the sets cover `{1..n}`.
    IncompleteCover { missing: Vec<usize> },
    /// Condition 3a: sets more than one apart are disjoint.
    NonAdjacentOverlap {
        first: usize,
        second: usize,
        shared: Vec<usize>,
    },
    /// Condition 3b: consecutive sets share exactly one qubit.
    AdjacentOverlap { first: usize, shared: Vec<usize> },
    /// Condition 3b: the shared qubits of consecutive pairs are distinct.
    RepeatedLink {
        first: usize,
        second: usize,
        qubit: usize,
    },
    /// The same set appears twice.
    Duplicate { first: usize, second: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

/// Checks the sufficient universality conditions and reports every failed
/// clause.
pub fn theorem1_check(p: &ParitySet) -> CheckReport {
    let mut violations = Vec::new();
    let sets = p.masks();
    let k = sets.len();

    for (i, &s) in sets.iter().enumerate() {
        let size = s.count_ones() as usize;
        if size % 2 == 1 {
            violations.push(Violation::OddSize { set: i + 1, size });
        }
    }

    let cover = sets.iter().fold(0u32, |acc, &s| acc | s);
    let missing = bits::full_mask(p.n()) & !cover;
    if missing != 0 {
        violations.push(Violation::IncompleteCover {
            missing: bits::labels(missing),
        });
    }

    for i in 0..k {
        for j in i + 1..k {
            if sets[i] == sets[j] {
                violations.push(Violation::Duplicate {
                    first: i + 1,
                    second: j + 1,
                });
            }
        }
    }

    if k >= 2 {
        for i in 0..k {
            for j in i + 2..k {
                let shared = sets[i] & sets[j];
                if shared != 0 {
                    violations.push(Violation::NonAdjacentOverlap {
                        first: i + 1,
                        second: j + 1,
                        shared: bits::labels(shared),
                    });
                }
            }
        }
        let mut links: Vec<(usize, u32)> = Vec::new();
        for i in 0..k - 1 {
            let shared = sets[i] & sets[i + 1];
            if shared.count_ones() != 1 {
                violations.push(Violation::AdjacentOverlap {
                    first: i + 1,
                    shared: bits::labels(shared),
                });
                continue;
            }
            if let Some(&(prev, _)) = links.iter().find(|&&(_, q)| q == shared) {
                violations.push(Violation::RepeatedLink {
                    first: prev + 1,
                    second: i + 1,
                    qubit: shared.trailing_zeros() as usize + 1,
                });
            }
            links.push((i, shared));
        }
    }

    CheckReport {
        ok: violations.is_empty(),
        violations,
    }
}

/// Smallest universal parity set: `[{1..n}]` for even `n`, and
/// `[{1..j}, {j..n}]` for odd `n` with an even split point `j`
/// (default `n - 1`).
pub fn minimal_parity(n: usize, split: Option<usize>) -> Result<ParitySet> {
    if n < 2 {
        return invalid(format!("minimal parity set needs n >= 2, got {n}"));
    }
    if n.is_multiple_of(2) {
        if split.is_some() {
            return invalid("a split point only applies to odd n");
        }
        return ParitySet::new(n, vec![bits::full_mask(n)]);
    }
    let j = split.unwrap_or(n - 1);
    if j % 2 == 1 || j < 2 || j > n - 1 {
        return invalid(format!(
            "split point must be even with 2 <= j <= {}, got {j}",
            n - 1
        ));
    }
    let first = bits::full_mask(j);
    let second = bits::full_mask(n) & !bits::full_mask(j - 1);
    ParitySet::new(n, vec![first, second])
}

/// `[{1..m}, {m..n}]` with `m = (n + 1) / 2` for odd `n`, `[{1..n}]` for
/// even `n`. For `n = 1 (mod 4)` the halves have odd size and the chain
/// conditions fail; use the closure module to probe such sets.
pub fn balanced_parity(n: usize) -> Result<ParitySet> {
    if n < 2 {
        return invalid(format!("balanced parity set needs n >= 2, got {n}"));
    }
    if n.is_multiple_of(2) {
        return ParitySet::new(n, vec![bits::full_mask(n)]);
    }
    let m = n.div_ceil(2);
    let first = bits::full_mask(m);
    let second = bits::full_mask(n) & !bits::full_mask(m - 1);
    ParitySet::new(n, vec![first, second])
}

/// All pairs `{i, j}` with `i < j`, lexicographic.
pub fn pairs_parity(n: usize) -> Result<ParitySet> {
    if n < 2 {
        return invalid(format!("pairs parity set needs n >= 2, got {n}"));
    }
    let mut sets = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            sets.push(1 << i | 1 << j);
        }
    }
    ParitySet::new(n, sets)
}

/// Nearest-neighbour chain `{i, i+1}` for `i = 1..n-1`.
pub fn chain_parity(n: usize) -> Result<ParitySet> {
    if n < 2 {
        return invalid(format!("chain parity set needs n >= 2, got {n}"));
    }
    ParitySet::new(n, (0..n - 1).map(|i| 0b11u32 << i).collect())
}

/// Returns a sub-list of `p` passing [`theorem1_check`] among two simple
/// candidates: `p` itself and the `{i, i+1}` chain. Not a complete search.
pub fn chain_subset(p: &ParitySet) -> Option<ParitySet> {
    if theorem1_check(p).ok {
        return Some(p.clone());
    }
    let n = p.n();
    if n < 2 {
        return None;
    }
    let indices: Option<Vec<usize>> = (0..n - 1).map(|i| p.position(0b11u32 << i)).collect();
    let candidate = p.sub_list(&indices?);
    theorem1_check(&candidate).ok.then_some(candidate)
}

/// Ten-qubit layouts for nearest-neighbour encoders on a triangular lattice.
pub fn triangular_layouts() -> Vec<(&'static str, ParitySet)> {
    let pairs = chain_parity(10).expect("valid");
    let quads =
        ParitySet::from_labels(10, &[vec![1, 2, 9, 10], vec![2, 3, 7, 8], vec![4, 5, 6, 7]])
            .expect("valid");
    let mixed =
        ParitySet::from_labels(10, &[vec![1, 2, 3, 8, 9, 10], vec![3, 4, 5, 6], vec![6, 7]])
            .expect("valid");
    vec![("pairs", pairs), ("quads", quads), ("mixed", mixed)]
}

/// One element of a parity generating set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    /// `x_q`, one-based qubit.
    X(usize),
    /// `z_q`, one-based qubit.
    Z(usize),
    /// `z^S` for the parity set at zero-based `index`.
    Parity { index: usize, mask: u32 },
}

impl Generator {
    pub fn vector(&self, n: usize) -> Result<PauliVector> {
        match *self {
            Generator::X(q) => PauliVector::x_basis(n, q),
            Generator::Z(q) => PauliVector::z_basis(n, q),
            Generator::Parity { mask, .. } => PauliVector::z_set(n, mask),
        }
    }

    pub fn is_parity(&self) -> bool {
        matches!(self, Generator::Parity { .. })
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::X(q) => write!(f, "x{q}"),
            Generator::Z(q) => write!(f, "z{q}"),
            Generator::Parity { index, .. } => write!(f, "p{}", index + 1),
        }
    }
}

impl Serialize for Generator {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// `G_sq ∪ G_P`: the `2n` single-qubit generators plus one `z^S` per
/// parity set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratingSet {
    parity: ParitySet,
}

impl GeneratingSet {
    pub fn n(&self) -> usize {
        self.parity.n()
    }

    pub fn parity_set(&self) -> &ParitySet {
        &self.parity
    }

    /// Order: `x_1..x_n, z_1..z_n`, then parity sets in order.
    pub fn generators(&self) -> Vec<Generator> {
        let n = self.n();
        (1..=n)
            .map(Generator::X)
            .chain((1..=n).map(Generator::Z))
            .chain(
                self.parity
                    .masks()
                    .iter()
                    .enumerate()
                    .map(|(index, &mask)| Generator::Parity { index, mask }),
            )
            .collect()
    }

    pub fn single_qubit(&self) -> Vec<PauliVector> {
        let n = self.n();
        (1..=n)
            .map(|q| PauliVector::x_basis(n, q).expect("valid"))
            .chain((1..=n).map(|q| PauliVector::z_basis(n, q).expect("valid")))
            .collect()
    }

    pub fn parity_vectors(&self) -> Vec<PauliVector> {
        let n = self.n();
        self.parity
            .masks()
            .iter()
            .map(|&m| PauliVector::z_set(n, m).expect("valid"))
            .collect()
    }

    /// All generator vectors in [`GeneratingSet::generators`] order.
    pub fn vectors(&self) -> Vec<PauliVector> {
        let mut all = self.single_qubit();
        all.extend(self.parity_vectors());
        all
    }

    pub fn len(&self) -> usize {
        2 * self.n() + self.parity.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

pub fn build_generating_set(p: &ParitySet) -> GeneratingSet {
    GeneratingSet { parity: p.clone() }
}
