//! Constructive nested-commutator sequences over parity generating sets,
//! and their conversion into circuits.
//!
//! A sequence `u_1, ..., u_r` means `ad_{u_1} ... ad_{u_{r-1}}(u_r)`; the
//! rightmost element is the seed of the fold.

use std::f64::consts::FRAC_PI_4;

use serde::Serialize;

use crate::bits;
use crate::circuit::{Circuit, Gate};
use crate::error::{invalid, Error, Result};
use crate::generating_sets::{minimal_parity, theorem1_check, Generator, ParitySet};
use crate::pauli::{evaluate_sequence, PauliString, PauliVector};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdjointSequence {
    n: usize,
    elements: Vec<Generator>,
}

impl AdjointSequence {
    pub fn new(n: usize, elements: Vec<Generator>) -> Result<Self> {
        if n == 0 || n > crate::pauli::MAX_QUBITS {
            return invalid(format!("qubit count {n} out of range"));
        }
        for g in &elements {
            g.vector(n)?;
        }
        Ok(Self { n, elements })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> &[Generator] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn vectors(&self) -> Vec<PauliVector> {
        self.elements
            .iter()
            .map(|g| g.vector(self.n).expect("validated on construction"))
            .collect()
    }

    pub fn evaluate(&self) -> Result<PauliVector> {
        evaluate_sequence(&self.vectors())
    }

    pub fn parity_uses(&self) -> usize {
        self.elements.iter().filter(|g| g.is_parity()).count()
    }

    /// Every suffix folds to a nonzero vector.
    pub fn never_vanishes(&self) -> bool {
        let vs = self.vectors();
        let Some((&seed, rest)) = vs.split_last() else {
            return false;
        };
        let mut acc = seed;
        for u in rest.iter().rev() {
            acc = u.adjoint_unchecked(&acc);
            if acc.is_zero() {
                return false;
            }
        }
        !seed.is_zero()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CompiledRotation {
    pub target: PauliVector,
    pub angle: f64,
    pub sequence: AdjointSequence,
    pub parity_uses: usize,
}

impl CompiledRotation {
    fn new(target: PauliVector, angle: f64, elements: Vec<Generator>) -> Result<Self> {
        let sequence = AdjointSequence::new(target.n(), elements)?;
        let got = sequence.evaluate()?;
        if got != target {
            return Err(Error::Internal(format!(
                "sequence evaluates to {got}, expected {target}"
            )));
        }
        let parity_uses = sequence.parity_uses();
        Ok(Self {
            target,
            angle,
            sequence,
            parity_uses,
        })
    }
}

pub fn seq_depth_counter(c: &CompiledRotation) -> usize {
    c.sequence.parity_uses()
}

fn xs(mask: u32) -> impl Iterator<Item = Generator> {
    bits::ones(mask).map(|j| Generator::X(j + 1))
}

fn zs(mask: u32) -> impl Iterator<Item = Generator> {
    bits::ones(mask).map(|j| Generator::Z(j + 1))
}

/// Element of a four-case sequence before the seed `z^C` is known.
#[derive(Clone, Copy)]
enum Step {
    Gen(Generator),
    SeedC,
}

/// Full four-case sequence for `z^{A ∪ (C \ (B∩C))}`; the last entry is the
/// seed (`z^B` when `C` is empty, otherwise the `z^C` placeholder).
fn four_case(a: u32, b: u32, c: u32, zb: Generator) -> Vec<Step> {
    let bc = b & c;
    let odd = a.count_ones() % 2 == 1;
    let meets_c = a & c != 0;
    let mut out: Vec<Generator> = Vec::new();
    if odd {
        out.extend(xs(a));
        if meets_c {
            out.extend(zs(a & !bc));
            out.push(zb);
            out.extend(xs(a & !bc));
        } else {
            out.extend(zs(a));
            out.push(zb);
            out.extend(xs(a | bc));
            out.extend(zs(bc));
        }
    } else {
        let dist = bits::lowest(a & !(a & c));
        let a_bar = b & !a;
        let a_tilde = a_bar | dist;
        out.extend(xs(dist));
        out.push(zb);
        out.extend(xs(a_bar));
        if meets_c {
            out.extend(zs(a_bar));
            out.push(zb);
            out.extend(xs(a_tilde | bc));
            out.extend(zs(bc));
        } else {
            out.extend(zs(a_bar & !bc));
            out.push(zb);
            out.extend(xs(a_tilde & !bc));
        }
    }
    let mut steps: Vec<Step> = out.into_iter().map(Step::Gen).collect();
    steps.push(Step::Gen(zb));
    if c != 0 {
        steps.extend(xs(bc).map(Step::Gen));
        steps.push(Step::SeedC);
    }
    steps
}

/// Everything but the seed.
fn four_case_body(a: u32, b: u32, c: u32, zb: Generator) -> Vec<Generator> {
    let mut steps = four_case(a, b, c, zb);
    steps.pop();
    steps
        .into_iter()
        .map(|s| match s {
            Step::Gen(g) => g,
            Step::SeedC => unreachable!("seed is always last"),
        })
        .collect()
}

fn parity_generator(p: &ParitySet, mask: u32, what: &str) -> Result<Generator> {
    match p.position(mask) {
        Some(index) => Ok(Generator::Parity { index, mask }),
        None => invalid(format!(
            "{what} = {:?} is not a parity set of the given list",
            bits::labels(mask)
        )),
    }
}

fn set_mask(set: &[usize], n: usize) -> Result<u32> {
    bits::mask_from_labels(set, n).map_err(Error::InvalidInput)
}

/// Four-case sequence evaluating to `z^{A ∪ (C \ (B∩C))}`. Sets are
/// one-based labels. `z^B` must be a parity generator of `p`, and so must
/// `z^C` unless `C` is empty or a single qubit.
pub fn lemma2_sequence(
    a: &[usize],
    b: &[usize],
    c: &[usize],
    p: &ParitySet,
) -> Result<AdjointSequence> {
    let n = p.n();
    let (a, b, c) = (set_mask(a, n)?, set_mask(b, n)?, set_mask(c, n)?);
    if a == 0 {
        return invalid("A must be nonempty");
    }
    if b == 0 {
        return invalid("B must be nonempty");
    }
    if a & !b != 0 {
        return invalid("A must be a subset of B");
    }
    if b.count_ones() % 2 == 1 {
        return invalid("|B| must be even");
    }
    if c != 0 && (b & c).count_ones() != 1 {
        return invalid("|B ∩ C| must be 1 when C is nonempty");
    }
    let zb = parity_generator(p, b, "B")?;
    let zc = match c.count_ones() {
        0 => None,
        1 => Some(Generator::Z(c.trailing_zeros() as usize + 1)),
        _ => Some(parity_generator(p, c, "C")?),
    };
    let elements = four_case(a, b, c, zb)
        .into_iter()
        .map(|s| match s {
            Step::Gen(g) => g,
            Step::SeedC => zc.expect("C nonempty"),
        })
        .collect();
    AdjointSequence::new(n, elements)
}

fn check_full_support(t: u32, w: &PauliVector) -> Result<()> {
    if w.support_mask() & !t != 0 {
        return invalid("w has support outside T");
    }
    if t & !w.z_mask() & !w.x_mask() != 0 {
        return invalid("w must act nontrivially on every qubit of T");
    }
    Ok(())
}

/// Prefix `z_{T \ Z(w)}, x_{X(w)}` turning any sequence for `z^T` into one
/// for `w`.
pub fn lemma1_lift(t: &[usize], w: &PauliVector) -> Result<Vec<Generator>> {
    let t = set_mask(t, w.n())?;
    check_full_support(t, w)?;
    Ok(lift_from_z(t, w))
}

fn lift_from_z(t: u32, w: &PauliVector) -> Vec<Generator> {
    zs(t & !w.z_mask()).chain(xs(w.x_mask())).collect()
}

/// Single-qubit prefix mapping `source` to `target`; both must have the
/// same support.
pub fn local_lift(source: &PauliVector, target: &PauliVector) -> Result<Vec<Generator>> {
    if source.n() != target.n() {
        return invalid("qubit count mismatch");
    }
    if source.support_mask() != target.support_mask() {
        return invalid("local lift needs equal supports");
    }
    let mut out = Vec::new();
    for j in bits::ones(source.support_mask()) {
        let q = j + 1;
        let letter = |v: &PauliVector| (v.x_mask() >> j & 1, v.z_mask() >> j & 1);
        // (x, z) bits: X = (1,0), Y = (1,1), Z = (0,1).
        match (letter(source), letter(target)) {
            (s, t) if s == t => {}
            ((1, 0), (1, 1)) | ((1, 1), (1, 0)) => out.push(Generator::Z(q)),
            ((1, 1), (0, 1)) | ((0, 1), (1, 1)) => out.push(Generator::X(q)),
            ((1, 0), (0, 1)) => out.extend([Generator::X(q), Generator::Z(q)]),
            ((0, 1), (1, 0)) => out.extend([Generator::Z(q), Generator::X(q)]),
            _ => unreachable!("supports agree"),
        }
    }
    Ok(out)
}

/// Generator whose vector equals `target`, if any.
fn as_generator(p: &ParitySet, target: &PauliVector) -> Option<Generator> {
    let (x, z) = (target.x_mask(), target.z_mask());
    if z == 0 && x.count_ones() == 1 {
        return Some(Generator::X(x.trailing_zeros() as usize + 1));
    }
    if x == 0 && z.count_ones() == 1 {
        return Some(Generator::Z(z.trailing_zeros() as usize + 1));
    }
    if x == 0 {
        return p
            .position(z)
            .map(|index| Generator::Parity { index, mask: z });
    }
    None
}

fn check_target(p: &ParitySet, target: &PauliVector) -> Result<()> {
    if target.n() != p.n() {
        return invalid(format!(
            "target has n = {}, parity set has n = {}",
            target.n(),
            p.n()
        ));
    }
    if target.is_zero() {
        return invalid("target must be nonzero");
    }
    Ok(())
}

/// Sequence for `z^A` with `A ⊆ B`, seeded by the parity generator `z^B`.
fn base_sequence(a: u32, b: u32, zb: Generator) -> Vec<Generator> {
    if a == b {
        return vec![zb];
    }
    let mut seq = four_case_body(a, b, 0, zb);
    seq.push(zb);
    seq
}

/// Sequence evaluating to `z^T` by induction along the chain of parity sets.
fn chain_z_sequence(p: &ParitySet, t: u32) -> Vec<Generator> {
    let sets = p.masks();
    let k = sets.len();
    let gen = |j: usize| Generator::Parity {
        index: j,
        mask: sets[j],
    };
    let link = |j: usize| sets[j] & sets[j + 1];

    // `u` evaluates to z^{T_{1:j}} (None when that set is empty), `w` to
    // z^{T_{1:j} ∪ {s_j}}.
    let t1 = t & sets[0];
    let mut u = (t1 != 0).then(|| base_sequence(t1, sets[0], gen(0)));
    let mut w = (k > 1).then(|| base_sequence(t1 | link(0), sets[0], gen(0)));
    let mut covered = t1;

    for j in 1..k {
        let tj = t & sets[j];
        let last = j + 1 == k;
        let prev_w = w.take().expect("built for every non-final set");
        if covered == 0 {
            u = (tj != 0).then(|| base_sequence(tj, sets[j], gen(j)));
            if !last {
                w = Some(base_sequence(tj | link(j), sets[j], gen(j)));
            }
        } else {
            let c = covered | link(j - 1);
            if tj != 0 {
                let mut seq = four_case_body(tj, sets[j], c, gen(j));
                seq.extend_from_slice(&prev_w);
                u = Some(seq);
            }
            if !last {
                let mut seq = four_case_body(tj | link(j), sets[j], c, gen(j));
                seq.extend_from_slice(&prev_w);
                w = Some(seq);
            }
        }
        covered |= tj;
    }
    u.expect("target support is covered by the parity sets")
}

/// Compiles `exp(i angle P)` for the Pauli string of `target` over a parity
/// set satisfying the chain conditions.
pub fn theorem1_compile(
    p: &ParitySet,
    target: &PauliVector,
    angle: f64,
) -> Result<CompiledRotation> {
    check_target(p, target)?;
    let report = theorem1_check(p);
    if !report.ok {
        return invalid(format!(
            "parity set fails the chain conditions: {:?}",
            report.violations
        ));
    }
    if let Some(g) = as_generator(p, target) {
        return CompiledRotation::new(*target, angle, vec![g]);
    }
    let t = target.support_mask();
    let mut seq = lift_from_z(t, target);
    seq.extend(chain_z_sequence(p, t));
    CompiledRotation::new(*target, angle, seq)
}

/// Constant parity-depth compilation over `minimal_parity(n)`: at most 3
/// parity generators for even `n` and 6 for odd `n`.
pub fn prop1_compile(n: usize, target: &PauliVector, angle: f64) -> Result<CompiledRotation> {
    let p = minimal_parity(n, None)?;
    check_target(&p, target)?;
    if let Some(g) = as_generator(&p, target) {
        return CompiledRotation::new(*target, angle, vec![g]);
    }
    let compiled = if n % 2 == 1 {
        theorem1_compile(&p, target, angle)?
    } else {
        let zz = Generator::Parity {
            index: 0,
            mask: p.masks()[0],
        };
        let j = target.support_mask();
        let k = bits::full_mask(n) & !j;
        let (core, core_value) = if j.count_ones() % 2 == 1 {
            let mut core = vec![zz];
            core.extend(xs(j));
            core.push(zz);
            (core, PauliVector::x_set(n, j)?)
        } else if k == 0 {
            (vec![zz], PauliVector::z_set(n, j)?)
        } else {
            let j1 = Generator::X(j.trailing_zeros() as usize + 1);
            let mut core = vec![j1, zz];
            core.extend(xs(k));
            core.extend(zs(k));
            core.push(zz);
            core.push(j1);
            core.extend(xs(k));
            core.push(zz);
            (core, PauliVector::z_set(n, j)?)
        };
        let mut seq = local_lift(&core_value, target)?;
        seq.extend(core);
        CompiledRotation::new(*target, angle, seq)?
    };
    let bound = if n.is_multiple_of(2) { 3 } else { 6 };
    if compiled.parity_uses > bound {
        return Err(Error::Internal(format!(
            "{} parity generators used for {target}, bound is {bound}",
            compiled.parity_uses
        )));
    }
    Ok(compiled)
}

fn rotation_gate(g: &Generator, theta: f64) -> Gate {
    match *g {
        Generator::X(q) => Gate::Rx { qubit: q, theta },
        Generator::Z(q) => Gate::Rz { qubit: q, theta },
        Generator::Parity { mask, .. } => Gate::ParityPhase {
            qubits: bits::labels(mask),
            theta,
        },
    }
}

/// Conjugation circuit `e^{π/4 G_1} ... e^{θ' G_R} ... e^{-π/4 G_1}` with
/// `G_r = i P_r`, listed in time order. The inner angle `θ'` is `±θ`,
/// chosen from the exact phase of `P_1 ... P_R` so that the circuit equals
/// `exp(i θ T)` for the target string `T`.
pub fn emit_circuit(c: &CompiledRotation) -> Result<Circuit> {
    let n = c.sequence.n();
    let elements = c.sequence.elements();
    let vectors = c.sequence.vectors();
    let (last, conj) = elements
        .split_last()
        .ok_or_else(|| Error::InvalidInput("empty sequence".into()))?;
    if !c.sequence.never_vanishes() || c.sequence.evaluate()? != c.target {
        return invalid("sequence does not evaluate to its target");
    }

    let mut product: PauliString = vectors[0].to_pauli_string();
    for v in &vectors[1..] {
        product = product.mul(&v.to_pauli_string())?;
    }
    // G_1 ... G_R = i^R P_1 ... P_R = i * (i^{R-1} P_1 ... P_R).
    let phase = (product.phase_quarter() as usize + vectors.len() - 1) % 4;
    let sign = match phase {
        0 => 1.0,
        2 => -1.0,
        _ => {
            return Err(Error::Internal(
                "non-Hermitian product in conjugation".into(),
            ))
        }
    };

    let mut circuit = Circuit::new(n);
    // e^{±π/4 · iP} = gate(P, ∓π/4) under the exp(-i t P) gate convention.
    for g in conj {
        circuit.push(rotation_gate(g, FRAC_PI_4))?;
    }
    circuit.push(rotation_gate(last, -sign * c.angle))?;
    for g in conj.iter().rev() {
        circuit.push(rotation_gate(g, -FRAC_PI_4))?;
    }
    Ok(circuit)
}
