//! Brute-force closure of a generator list under the adjoint map.

use std::collections::VecDeque;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::generating_sets::{build_generating_set, ParitySet};
use crate::pauli::PauliVector;

/// Largest qubit count for table-based searches (a `4^n` presence table).
pub const MAX_CLOSURE_QUBITS: usize = 10;

const UNSEEN: u32 = u32::MAX;

/// How a reachable vector was first discovered.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Origin {
    /// Input generator at this position of the input list.
    Generator(usize),
    /// `ad_{gens[generator]}` applied to the vector at discovery position `pred`.
    Adjoint { generator: usize, pred: usize },
}

#[derive(Clone, Debug)]
pub struct ClosureResult {
    n: usize,
    generators: Vec<PauliVector>,
    /// Reachable vectors in discovery order.
    reachable: Vec<PauliVector>,
    origins: Vec<Origin>,
    /// Vector index -> discovery position, or `UNSEEN`.
    slot: Vec<u32>,
}

impl ClosureResult {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[PauliVector] {
        &self.generators
    }

    /// Reachable vectors in discovery order.
    pub fn reachable(&self) -> &[PauliVector] {
        &self.reachable
    }

    pub fn len(&self) -> usize {
        self.reachable.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reachable.is_empty()
    }

    pub fn contains(&self, v: &PauliVector) -> bool {
        v.n() == self.n && self.slot[v.index()] != UNSEEN
    }

    pub fn universal(&self) -> bool {
        self.reachable.len() == (1usize << (2 * self.n)) - 1
    }

    /// `(generator, predecessor)` pair that first produced `v`; `None` for
    /// input generators and unreachable vectors.
    pub fn parent(&self, v: &PauliVector) -> Option<(PauliVector, PauliVector)> {
        if !self.contains(v) {
            return None;
        }
        match self.origins[self.slot[v.index()] as usize] {
            Origin::Generator(_) => None,
            Origin::Adjoint { generator, pred } => {
                Some((self.generators[generator], self.reachable[pred]))
            }
        }
    }

    pub fn origin(&self, v: &PauliVector) -> Option<Origin> {
        self.contains(v)
            .then(|| self.origins[self.slot[v.index()] as usize])
    }

    /// Indices into [`ClosureResult::generators`] of a sequence evaluating
    /// to `target`.
    pub fn witness_indices(&self, target: &PauliVector) -> Result<Vec<usize>> {
        if target.n() != self.n {
            return invalid(format!(
                "target has n = {}, closure has n = {}",
                target.n(),
                self.n
            ));
        }
        if !self.contains(target) {
            return Err(Error::NotFound(format!("{target} is not reachable")));
        }
        let mut out = Vec::new();
        let mut pos = self.slot[target.index()] as usize;
        loop {
            match self.origins[pos] {
                Origin::Generator(g) => {
                    out.push(g);
                    return Ok(out);
                }
                Origin::Adjoint { generator, pred } => {
                    out.push(generator);
                    pos = pred;
                }
            }
        }
    }
}

fn check_gens(gens: &[PauliVector]) -> Result<usize> {
    let n = match gens.first() {
        Some(g) => g.n(),
        None => return invalid("closure needs at least one generator"),
    };
    if let Some(g) = gens.iter().find(|g| g.n() != n) {
        return invalid(format!("qubit count mismatch: {} vs {n}", g.n()));
    }
    if n > MAX_CLOSURE_QUBITS {
        return Err(Error::ResourceLimit(format!(
            "closure supports n <= {MAX_CLOSURE_QUBITS}, got {n}"
        )));
    }
    Ok(n)
}

/// Breadth-first fixed point of `v -> ad_g(v)` over all generators `g`,
/// seeded with the nonzero generators. Parents follow the first discovery
/// in generator order, then discovery order.
pub fn closure(gens: &[PauliVector]) -> Result<ClosureResult> {
    let n = check_gens(gens)?;
    let mut slot = vec![UNSEEN; 1usize << (2 * n)];
    let mut reachable = Vec::new();
    let mut origins = Vec::new();

    for (i, g) in gens.iter().enumerate() {
        if !g.is_zero() && slot[g.index()] == UNSEEN {
            slot[g.index()] = reachable.len() as u32;
            reachable.push(*g);
            origins.push(Origin::Generator(i));
        }
    }
    let mut head = 0;
    while head < reachable.len() {
        let v = reachable[head];
        for (i, g) in gens.iter().enumerate() {
            let w = g.adjoint_unchecked(&v);
            if !w.is_zero() && slot[w.index()] == UNSEEN {
                slot[w.index()] = reachable.len() as u32;
                reachable.push(w);
                origins.push(Origin::Adjoint {
                    generator: i,
                    pred: head,
                });
            }
        }
        head += 1;
    }

    Ok(ClosureResult {
        n,
        generators: gens.to_vec(),
        reachable,
        origins,
        slot,
    })
}

/// Size of the closure only, reusing `seen` as scratch. Stops early once
/// the size reaches `stop_at`.
fn closure_size(
    gens: &[PauliVector],
    seen: &mut [bool],
    queue: &mut Vec<PauliVector>,
    stop_at: usize,
) -> usize {
    seen.iter_mut().for_each(|s| *s = false);
    queue.clear();
    for g in gens {
        if !g.is_zero() && !seen[g.index()] {
            seen[g.index()] = true;
            queue.push(*g);
        }
    }
    let mut head = 0;
    while head < queue.len() && queue.len() < stop_at {
        let v = queue[head];
        for g in gens {
            let w = g.adjoint_unchecked(&v);
            if !w.is_zero() && !seen[w.index()] {
                seen[w.index()] = true;
                queue.push(w);
            }
        }
        head += 1;
    }
    queue.len()
}

/// Whether the generating set of `p` reaches every nonzero vector.
pub fn is_universal(p: &ParitySet) -> Result<bool> {
    Ok(closure(&build_generating_set(p).vectors())?.universal())
}

/// Sequence of generators whose nested adjoint evaluates to `target`.
pub fn witness_sequence(result: &ClosureResult, target: &PauliVector) -> Result<Vec<PauliVector>> {
    Ok(result
        .witness_indices(target)?
        .into_iter()
        .map(|i| result.generators[i])
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Theorem2Report {
    pub n: usize,
    pub candidates: usize,
    pub all_fail: bool,
    pub max_closure: usize,
}

/// Closes the single-qubit generators plus each nonzero candidate `P` in
/// turn and reports whether every extension falls short of universality.
pub fn theorem2_scan(n: usize) -> Result<Theorem2Report> {
    if n.is_multiple_of(2) {
        return invalid(format!("scan is defined for odd n, got {n}"));
    }
    if !(3..=7).contains(&n) {
        return Err(Error::ResourceLimit(format!(
            "scan supports 3 <= n <= 7, got {n}"
        )));
    }
    let full = (1usize << (2 * n)) - 1;
    let base = build_generating_set(&ParitySet::new(n, vec![])?).single_qubit();
    let max_closure = (1..=full)
        .into_par_iter()
        .map_init(
            || {
                let mut gens = base.clone();
                gens.push(PauliVector::zero(n).expect("valid"));
                (gens, vec![false; full + 1], Vec::with_capacity(full))
            },
            |(gens, seen, queue), idx| {
                *gens.last_mut().expect("nonempty") =
                    PauliVector::from_index(n, idx).expect("in range");
                closure_size(gens, seen, queue, full)
            },
        )
        .max()
        .unwrap_or(0);
    Ok(Theorem2Report {
        n,
        candidates: full,
        all_fail: max_closure < full,
        max_closure,
    })
}

/// Fewest parity-generator occurrences over all sequences evaluating to
/// `target`. A 0-1 breadth-first search where single-qubit steps are free.
/// Returns `None` if `target` is unreachable.
pub fn min_parity_uses(p: &ParitySet, target: &PauliVector) -> Result<Option<usize>> {
    let gs = build_generating_set(p);
    let gens = gs.vectors();
    let n = check_gens(&gens)?;
    if target.n() != n {
        return invalid(format!(
            "target has n = {}, parity set has n = {n}",
            target.n()
        ));
    }
    let single = gs.single_qubit().len();
    let cost = |i: usize| usize::from(i >= single);
    let mut dist = vec![usize::MAX; 1usize << (2 * n)];
    let mut deque = VecDeque::new();
    for (i, g) in gens.iter().enumerate() {
        if cost(i) < dist[g.index()] {
            dist[g.index()] = cost(i);
            deque.push_back(*g);
        }
    }
    // Zero-cost seeds first, so the deque stays sorted by distance.
    deque.make_contiguous().sort_by_key(|v| dist[v.index()]);
    while let Some(v) = deque.pop_front() {
        let d = dist[v.index()];
        for (i, g) in gens.iter().enumerate() {
            let w = g.adjoint_unchecked(&v);
            if w.is_zero() {
                continue;
            }
            let nd = d + cost(i);
            if nd < dist[w.index()] {
                dist[w.index()] = nd;
                if cost(i) == 0 {
                    deque.push_front(w);
                } else {
                    deque.push_back(w);
                }
            }
        }
    }
    let d = dist[target.index()];
    Ok((d != usize::MAX && !target.is_zero()).then_some(d))
}
