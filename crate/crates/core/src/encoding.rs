//! Parity encoder circuits and in-place parity rotations.
//!
//! Wires `1..n` are base qubits; parity wires `n+1..n+k` follow in parity
//! set order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bits;
use crate::circuit::{Circuit, Gate};
use crate::error::{invalid, Error, Result};
use crate::generating_sets::ParitySet;
use crate::pauli::{Pauli, PauliString};
use crate::simulator::{apply_circuit, is_stabilized, StateVector, MAX_SIM_QUBITS};

/// CNOTs from each base qubit of `S_j` (ascending) onto parity wire `n + j`.
pub fn build_encoder(p: &ParitySet) -> Circuit {
    let n = p.n();
    let mut c = Circuit::new(n + p.len());
    for (j, &s) in p.masks().iter().enumerate() {
        for i in bits::labels(s) {
            c.push(Gate::Cnot {
                control: i,
                target: n + j + 1,
            })
            .expect("wires in range");
        }
    }
    c
}

/// `Z` on parity wire `n + j + 1` and on every base qubit of `S_j`
/// (zero-based `j`).
pub fn lhz_stabilizer(p: &ParitySet, j: usize) -> Result<PauliString> {
    let n = p.n();
    if j >= p.len() {
        return invalid(format!("parity set index {} out of range", j + 1));
    }
    let mut letters = vec![Pauli::I; n + p.len()];
    for i in bits::ones(p.masks()[j]) {
        letters[i] = Pauli::Z;
    }
    letters[n + j] = Pauli::Z;
    PauliString::new(letters, 0)
}

/// Encodes `trials` random base states and checks every stabilizer of the
/// encoded state phase-exactly.
pub fn check_lhz_stabilizers(p: &ParitySet, trials: usize, seed: u64) -> Result<bool> {
    let stabilizers = (0..p.len())
        .map(|j| lhz_stabilizer(p, j))
        .collect::<Result<Vec<_>>>()?;
    check_encoded_stabilizers(p, &stabilizers, trials, seed)
}

/// Like [`check_lhz_stabilizers`] but with caller-supplied operators on the
/// `n + k` wires.
pub fn check_encoded_stabilizers(
    p: &ParitySet,
    operators: &[PauliString],
    trials: usize,
    seed: u64,
) -> Result<bool> {
    let total = p.n() + p.len();
    if total > MAX_SIM_QUBITS {
        return Err(Error::ResourceLimit(format!(
            "n + k = {total} exceeds the simulator cap of {MAX_SIM_QUBITS}"
        )));
    }
    let encoder = build_encoder(p);
    let ancillas = StateVector::zero(p.len().max(1))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let psi = StateVector::random_with(p.n(), &mut rng)?;
        let input = if p.is_empty() {
            psi
        } else {
            psi.tensor(&ancillas)?
        };
        let encoded = apply_circuit(&input, &encoder)?;
        if !operators.iter().all(|op| is_stabilized(&encoded, op)) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn subset_mask(s: &[usize], n: usize) -> Result<u32> {
    if s.is_empty() {
        return invalid("parity rotation needs a nonempty set");
    }
    bits::mask_from_labels(s, n).map_err(Error::InvalidInput)
}

/// `exp(-i theta Z_S)` in place: CNOT fan-in onto `pivot`, `RZ(pivot,
/// theta)`, mirrored fan-out.
pub fn flow_rotation(s: &[usize], pivot: usize, theta: f64, n: usize) -> Result<Circuit> {
    let mask = subset_mask(s, n)?;
    if pivot == 0 || pivot > n || mask >> (pivot - 1) & 1 == 0 {
        return invalid(format!("pivot {pivot} is not in S"));
    }
    let others = bits::labels(mask & !(1 << (pivot - 1)));
    let mut c = Circuit::new(n);
    for &i in &others {
        c.push(Gate::Cnot {
            control: i,
            target: pivot,
        })?;
    }
    c.push(Gate::Rz {
        qubit: pivot,
        theta,
    })?;
    for &i in others.iter().rev() {
        c.push(Gate::Cnot {
            control: i,
            target: pivot,
        })?;
    }
    Ok(c)
}

/// `exp(-i theta Z_S)` via an ancilla on wire `n + 1`: encode the parity of
/// `S`, rotate the ancilla, decode.
pub fn parity_rotation_via_ancilla(s: &[usize], theta: f64, n: usize) -> Result<Circuit> {
    let mask = subset_mask(s, n)?;
    let p = ParitySet::new(n, vec![mask])?;
    let encode = build_encoder(&p);
    let mut c = encode.clone();
    c.push(Gate::Rz {
        qubit: n + 1,
        theta,
    })?;
    c.extend(&encode.inverse())?;
    Ok(c)
}
