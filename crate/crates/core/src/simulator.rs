//! Dense statevector simulator used as a verification oracle.
//!
//! Qubit `q` (one-based) is bit `q - 1` of the basis index.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::circuit::{Circuit, Gate};
use crate::error::{invalid, Error, Result};
use crate::pauli::{Pauli, PauliString};

pub const MAX_SIM_QUBITS: usize = 12;

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    m: usize,
    amps: Vec<Complex64>,
}

fn check_m(m: usize) -> Result<()> {
    if m == 0 || m > MAX_SIM_QUBITS {
        return Err(Error::ResourceLimit(format!(
            "simulator supports 1..={MAX_SIM_QUBITS} qubits, got {m}"
        )));
    }
    Ok(())
}

impl StateVector {
    /// `|0...0>`.
    pub fn zero(m: usize) -> Result<Self> {
        Self::basis(m, 0)
    }

    pub fn basis(m: usize, index: usize) -> Result<Self> {
        check_m(m)?;
        if index >= 1 << m {
            return invalid(format!("basis index {index} out of range"));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << m];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(Self { m, amps })
    }

    /// `|+...+>`.
    pub fn plus(m: usize) -> Result<Self> {
        check_m(m)?;
        let a = Complex64::new((1.0 / (1u64 << m) as f64).sqrt(), 0.0);
        Ok(Self {
            m,
            amps: vec![a; 1 << m],
        })
    }

    /// Normalizes the given amplitudes.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let m = amps.len().trailing_zeros() as usize;
        if amps.len() != 1 << m {
            return invalid("amplitude count must be a power of two");
        }
        check_m(m)?;
        let mut s = Self { m, amps };
        let norm = s.norm();
        if norm == 0.0 {
            return invalid("zero vector is not a state");
        }
        s.scale(1.0 / norm);
        Ok(s)
    }

    /// Normalized complex Gaussian vector, reproducible from `seed`.
    pub fn random(m: usize, seed: u64) -> Result<Self> {
        Self::random_with(m, &mut ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn random_with<R: Rng>(m: usize, rng: &mut R) -> Result<Self> {
        check_m(m)?;
        let amps = (0..1 << m)
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        Self::from_amplitudes(amps)
    }

    pub fn num_qubits(&self) -> usize {
        self.m
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    fn scale(&mut self, k: f64) {
        self.amps.iter_mut().for_each(|a| *a *= k);
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        if self.m != other.m {
            return invalid("state dimension mismatch");
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Tensor product `self ⊗ other`, with `self` on the low wires.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        check_m(self.m + other.m)?;
        let mut amps = Vec::with_capacity(1 << (self.m + other.m));
        for b in &other.amps {
            for a in &self.amps {
                amps.push(a * b);
            }
        }
        Ok(Self {
            m: self.m + other.m,
            amps,
        })
    }

    fn wire(&self, q: usize) -> Result<usize> {
        if q == 0 || q > self.m {
            return invalid(format!("wire {q} outside 1..={}", self.m));
        }
        Ok(q - 1)
    }

    /// Applies a 2x2 matrix `[[a, b], [c, d]]` to wire `q`.
    pub fn apply_1q(&mut self, q: usize, u: [[Complex64; 2]; 2]) -> Result<()> {
        let bit = 1 << self.wire(q)?;
        for i in 0..self.amps.len() {
            if i & bit == 0 {
                let (a0, a1) = (self.amps[i], self.amps[i | bit]);
                self.amps[i] = u[0][0] * a0 + u[0][1] * a1;
                self.amps[i | bit] = u[1][0] * a0 + u[1][1] * a1;
            }
        }
        Ok(())
    }

    pub fn apply_cnot(&mut self, control: usize, target: usize) -> Result<()> {
        let (c, t) = (1 << self.wire(control)?, 1 << self.wire(target)?);
        if c == t {
            return invalid("CNOT control equals target");
        }
        for i in 0..self.amps.len() {
            if i & c != 0 && i & t == 0 {
                self.amps.swap(i, i | t);
            }
        }
        Ok(())
    }

    pub fn apply_cz(&mut self, a: usize, b: usize) -> Result<()> {
        let (a, b) = (1 << self.wire(a)?, 1 << self.wire(b)?);
        if a == b {
            return invalid("CZ needs two distinct wires");
        }
        for (i, amp) in self.amps.iter_mut().enumerate() {
            if i & a != 0 && i & b != 0 {
                *amp = -*amp;
            }
        }
        Ok(())
    }

    /// `exp(-i theta Z_S)`: amplitude `i` gets `exp(-i theta (-1)^{parity})`.
    pub fn apply_parity_phase(&mut self, qubits: &[usize], theta: f64) -> Result<()> {
        let mut mask = 0usize;
        for &q in qubits {
            mask |= 1 << self.wire(q)?;
        }
        let even = Complex64::from_polar(1.0, -theta);
        let odd = Complex64::from_polar(1.0, theta);
        for (i, amp) in self.amps.iter_mut().enumerate() {
            *amp *= if (i & mask).count_ones().is_multiple_of(2) {
                even
            } else {
                odd
            };
        }
        Ok(())
    }

    pub fn apply_gate(&mut self, g: &Gate) -> Result<()> {
        let zero = Complex64::new(0.0, 0.0);
        match g {
            Gate::Cnot { control, target } => self.apply_cnot(*control, *target),
            Gate::Rx { qubit, theta } => {
                let (c, s) = (Complex64::new(theta.cos(), 0.0), -I * theta.sin());
                self.apply_1q(*qubit, [[c, s], [s, c]])
            }
            Gate::Rz { qubit, theta } => self.apply_1q(
                *qubit,
                [
                    [Complex64::from_polar(1.0, -theta), zero],
                    [zero, Complex64::from_polar(1.0, *theta)],
                ],
            ),
            Gate::H { qubit } => {
                let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
                self.apply_1q(*qubit, [[h, h], [h, -h]])
            }
            Gate::ParityPhase { qubits, theta } => self.apply_parity_phase(qubits, *theta),
        }
    }

    /// `P|psi>` with exact phase, including the string's own `i^k` prefix.
    pub fn apply_pauli(&self, p: &PauliString) -> Result<Self> {
        if p.len() != self.m {
            return invalid(format!(
                "Pauli string has {} letters, state has {} qubits",
                p.len(),
                self.m
            ));
        }
        let (mut xm, mut zm, mut ys) = (0usize, 0usize, 0u32);
        for (j, letter) in p.letters().iter().enumerate() {
            match letter {
                Pauli::I => {}
                Pauli::X => xm |= 1 << j,
                Pauli::Z => zm |= 1 << j,
                Pauli::Y => {
                    xm |= 1 << j;
                    zm |= 1 << j;
                    ys += 1;
                }
            }
        }
        // Y = i X Z, so P = i^{#Y} X^x Z^z and X^x Z^z|b> = (-1)^{b·z}|b ^ x>.
        let global = I.powu((ys + p.phase_quarter() as u32) % 4);
        let mut out = vec![Complex64::new(0.0, 0.0); self.amps.len()];
        for (b, &amp) in self.amps.iter().enumerate() {
            let sign = if (b & zm).count_ones() % 2 == 0 {
                1.0
            } else {
                -1.0
            };
            out[b ^ xm] = global * amp * sign;
        }
        Ok(Self {
            m: self.m,
            amps: out,
        })
    }

    /// Projects wire `q` onto `<bra|` and removes it. The result is left
    /// unnormalized so that branch probabilities stay visible.
    pub fn project_out(&self, q: usize, bra: [Complex64; 2]) -> Result<Self> {
        let j = self.wire(q)?;
        if self.m == 1 {
            return invalid("cannot remove the last qubit");
        }
        let low = (1usize << j) - 1;
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << (self.m - 1)];
        for (i, &amp) in self.amps.iter().enumerate() {
            let bit = (i >> j) & 1;
            let rest = (i & low) | ((i >> (j + 1)) << j);
            amps[rest] += bra[bit] * amp;
        }
        Ok(Self {
            m: self.m - 1,
            amps,
        })
    }

    /// Rescales to unit norm.
    pub fn normalized(mut self) -> Result<Self> {
        let n = self.norm();
        if n < 1e-300 {
            return invalid("cannot normalize a zero vector");
        }
        self.scale(1.0 / n);
        Ok(self)
    }
}

pub fn apply_circuit(state: &StateVector, c: &Circuit) -> Result<StateVector> {
    if c.num_qubits() != state.m {
        return invalid(format!(
            "circuit has {} wires, state has {} qubits",
            c.num_qubits(),
            state.m
        ));
    }
    let mut s = state.clone();
    for g in c.gates() {
        s.apply_gate(g)?;
    }
    Ok(s)
}

/// `cos(theta)|psi> + i sin(theta) P|psi>`, i.e. `exp(i theta P)|psi>` for a
/// Hermitian string `P`.
pub fn exact_pauli_rotation(
    state: &StateVector,
    p: &PauliString,
    theta: f64,
) -> Result<StateVector> {
    if p.phase_quarter() % 2 == 1 {
        return invalid("rotation axis must be Hermitian (phase ±1)");
    }
    let pp = state.apply_pauli(p)?;
    let (c, s) = (theta.cos(), I * theta.sin());
    let amps = state
        .amps
        .iter()
        .zip(&pp.amps)
        .map(|(a, b)| c * a + s * b)
        .collect();
    Ok(StateVector { m: state.m, amps })
}

/// `|<a|b>| >= 1 - tol`.
pub fn equal_up_to_global_phase(a: &StateVector, b: &StateVector, tol: f64) -> bool {
    a.inner(b).map(|z| z.norm() >= 1.0 - tol).unwrap_or(false)
}

/// `|<a|b>|`, or `None` on dimension mismatch.
pub fn overlap(a: &StateVector, b: &StateVector) -> Option<f64> {
    a.inner(b).ok().map(|z| z.norm())
}

/// `P|psi> = |psi>` amplitude-wise within `1e-9`, no phase allowance.
pub fn is_stabilized(state: &StateVector, p: &PauliString) -> bool {
    match state.apply_pauli(p) {
        Ok(pp) => pp
            .amps
            .iter()
            .zip(&state.amps)
            .all(|(a, b)| (a - b).norm() <= 1e-9),
        Err(_) => false,
    }
}

/// Largest amplitude-wise distance.
pub fn max_distance(a: &StateVector, b: &StateVector) -> f64 {
    a.amps
        .iter()
        .zip(&b.amps)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn ps(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    #[test]
    fn hadamard_twice_is_identity() {
        let c: Circuit = "H 1\nH 1".parse().unwrap();
        let out = apply_circuit(&StateVector::zero(1).unwrap(), &c).unwrap();
        assert!(max_distance(&out, &StateVector::zero(1).unwrap()) < 1e-12);
    }

    #[test]
    fn cnot_flips_target() {
        let c: Circuit = "CNOT 1 2".parse().unwrap();
        // |10>: qubit 1 set, which is bit 0.
        let out = apply_circuit(&StateVector::basis(2, 0b01).unwrap(), &c).unwrap();
        assert!(max_distance(&out, &StateVector::basis(2, 0b11).unwrap()) < 1e-12);
    }

    #[test]
    fn parity_phase_matches_cnot_construction() {
        let plus = StateVector::plus(2).unwrap();
        let a: Circuit = "PPHASE 1,2 0.37".parse().unwrap();
        let b: Circuit = "CNOT 1 2\nRZ 2 0.37\nCNOT 1 2".parse().unwrap();
        let sa = apply_circuit(&plus, &a).unwrap();
        let sb = apply_circuit(&plus, &b).unwrap();
        assert!(max_distance(&sa, &sb) < 1e-12);
    }

    #[test]
    fn rotation_examples() {
        let psi = StateVector::random(3, 7).unwrap();
        let same = exact_pauli_rotation(&psi, &ps("XYZ"), 0.0).unwrap();
        assert!(max_distance(&same, &psi) < 1e-15);
        let zero = StateVector::zero(1).unwrap();
        let out = exact_pauli_rotation(&zero, &ps("Z"), PI / 2.0).unwrap();
        assert!((out.amplitudes()[0] - I).norm() < 1e-12);
        assert!(equal_up_to_global_phase(&out, &zero, 1e-12));
    }

    #[test]
    fn rotation_composes() {
        let psi = StateVector::random(4, 3).unwrap();
        let p = ps("XZYI");
        let once = exact_pauli_rotation(&psi, &p, 0.9).unwrap();
        let twice =
            exact_pauli_rotation(&exact_pauli_rotation(&psi, &p, 0.4).unwrap(), &p, 0.5).unwrap();
        assert!(max_distance(&once, &twice) < 1e-10);
    }

    #[test]
    fn global_phase_comparison() {
        let psi = StateVector::random(2, 11).unwrap();
        let mut rotated = psi.clone();
        rotated
            .amps
            .iter_mut()
            .for_each(|a| *a *= Complex64::from_polar(1.0, 1.234));
        assert!(equal_up_to_global_phase(&psi, &rotated, 1e-12));
        assert!(!equal_up_to_global_phase(
            &StateVector::basis(1, 0).unwrap(),
            &StateVector::basis(1, 1).unwrap(),
            1e-9
        ));
    }

    #[test]
    fn stabilizer_checks_are_phase_exact() {
        let zero = StateVector::zero(1).unwrap();
        assert!(is_stabilized(&zero, &ps("Z")));
        assert!(!is_stabilized(&zero, &ps("X")));
        let one = StateVector::basis(1, 1).unwrap();
        assert!(!is_stabilized(&one, &ps("Z")));
        assert!(is_stabilized(&one, &ps("Z").with_extra_phase(2)));
    }

    #[test]
    fn y_has_the_right_phase() {
        // Y|0> = i|1>.
        let out = StateVector::zero(1).unwrap().apply_pauli(&ps("Y")).unwrap();
        assert!((out.amplitudes()[1] - I).norm() < 1e-15);
    }

    #[test]
    fn parity_phase_equals_z_rotation() {
        let psi = StateVector::random(4, 5).unwrap();
        let mut a = psi.clone();
        a.apply_parity_phase(&[1, 3, 4], 0.8).unwrap();
        let b = exact_pauli_rotation(&psi, &ps("ZIZZ"), -0.8).unwrap();
        assert!(max_distance(&a, &b) < 1e-12);
    }

    #[test]
    fn gates_preserve_norm() {
        use rand::Rng;
        let m = 10;
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let mut s = StateVector::random_with(m, &mut rng).unwrap();
        for _ in 0..10_000 {
            let q = rng.random_range(1..=m);
            let theta: f64 = rng.random_range(-PI..PI);
            let g = match rng.random_range(0..5) {
                0 => Gate::H { qubit: q },
                1 => Gate::Rx { qubit: q, theta },
                2 => Gate::Rz { qubit: q, theta },
                3 => {
                    let t = 1 + (q % m);
                    Gate::Cnot {
                        control: q,
                        target: t,
                    }
                }
                _ => Gate::ParityPhase {
                    qubits: vec![1, q.max(2)],
                    theta,
                },
            };
            s.apply_gate(&g).unwrap();
        }
        assert!((s.norm() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn dimension_errors() {
        let c: Circuit = "H 3".parse().unwrap();
        assert!(apply_circuit(&StateVector::zero(2).unwrap(), &c).is_err());
        assert!(StateVector::zero(13).is_err());
        assert!(exact_pauli_rotation(&StateVector::zero(2).unwrap(), &ps("X"), 0.1).is_err());
    }

    #[test]
    fn projection_removes_wire() {
        // |1>_1 ⊗ |0>_2 projected on <1| for wire 1 leaves |0>.
        let s = StateVector::basis(2, 0b01).unwrap();
        let one = [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];
        let out = s.project_out(1, one).unwrap();
        assert!(max_distance(&out, &StateVector::zero(1).unwrap()) < 1e-15);
        let zero = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
        assert!(s.project_out(1, zero).unwrap().norm() < 1e-15);
    }
}
