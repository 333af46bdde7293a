//! Universality facts checked by exhaustive closure.

use parity_forge::closure::{closure, is_universal, theorem2_scan};
use parity_forge::generating_sets::{
    balanced_parity, build_generating_set, chain_subset, minimal_parity, pairs_parity,
    theorem1_check, ParitySet,
};
use parity_forge::pauli::PauliVector;

fn single_qubit(n: usize) -> Vec<PauliVector> {
    build_generating_set(&ParitySet::new(n, vec![]).unwrap()).single_qubit()
}

/// Every chain of even-size sets satisfying the sufficient conditions, built
/// directly from the conditions rather than by filtering.
fn valid_chains(n: usize) -> Vec<ParitySet> {
    fn extend(n: usize, chain: &mut Vec<u32>, links: u32, out: &mut Vec<ParitySet>) {
        let full = (1u32 << n) - 1;
        let cover = chain.iter().fold(0, |a, s| a | s);
        if cover == full {
            out.push(ParitySet::new(n, chain.clone()).unwrap());
            return;
        }
        let last = *chain.last().unwrap();
        let earlier = cover & !last;
        for s in 1..=full {
            let shared = s & last;
            if s.count_ones() % 2 == 1
                || shared.count_ones() != 1
                || shared & links != 0
                || s & earlier != 0
            {
                continue;
            }
            chain.push(s);
            extend(n, chain, links | shared, out);
            chain.pop();
        }
    }
    let mut out = Vec::new();
    for first in 1..=(1u32 << n) - 1 {
        if first.count_ones() % 2 == 0 {
            extend(n, &mut vec![first], 0, &mut out);
        }
    }
    out
}

#[test]
fn generated_chains_are_exactly_the_passing_lists() {
    // Cross-check the generator against brute-force filtering for n = 4.
    let n = 4;
    let evens: Vec<u32> = (1..16u32).filter(|s| s.count_ones() % 2 == 0).collect();
    let mut passing = Vec::new();
    for &a in &evens {
        let single = ParitySet::new(n, vec![a]).unwrap();
        if theorem1_check(&single).ok {
            passing.push(single);
        }
        for &b in &evens {
            let two = ParitySet::new(n, vec![a, b]).unwrap();
            if theorem1_check(&two).ok {
                passing.push(two);
            }
            for &c in &evens {
                let three = ParitySet::new(n, vec![a, b, c]).unwrap();
                if theorem1_check(&three).ok {
                    passing.push(three);
                }
            }
        }
    }
    let mut generated = valid_chains(n);
    let key = |p: &ParitySet| p.masks().to_vec();
    generated.sort_by_key(key);
    passing.sort_by_key(key);
    assert_eq!(generated, passing);
}

#[test]
fn every_passing_chain_is_universal() {
    for n in 2..=6 {
        let chains = valid_chains(n);
        assert!(!chains.is_empty());
        for p in chains {
            assert!(theorem1_check(&p).ok);
            assert!(is_universal(&p).unwrap(), "{p}");
        }
    }
}

#[test]
fn single_full_parity_is_universal_for_even_n() {
    for n in [2, 4, 6] {
        let mut gens = single_qubit(n);
        gens.push(PauliVector::z_set(n, (1 << n) - 1).unwrap());
        assert_eq!(closure(&gens).unwrap().len(), (1 << (2 * n)) - 1);
    }
}

#[test]
fn removing_a_parity_set_breaks_universality() {
    for n in 2..=5 {
        let p = minimal_parity(n, None).unwrap();
        for i in 0..p.len() {
            assert!(!is_universal(&p.without(i)).unwrap(), "n={n} drop {i}");
        }
    }
    let p = minimal_parity(5, Some(2)).unwrap();
    assert!(is_universal(&p).unwrap());
    for i in 0..p.len() {
        assert!(!is_universal(&p.without(i)).unwrap());
    }
}

#[test]
fn chain_inside_pairs_is_universal() {
    for n in 2..=6 {
        let chain = chain_subset(&pairs_parity(n).unwrap()).unwrap();
        assert!(is_universal(&chain).unwrap());
    }
}

#[test]
fn balanced_split_for_five_qubits_still_reaches_everything() {
    // The midpoint split breaks the sufficient conditions at n = 5 but the
    // search decides the actual question.
    let p = balanced_parity(5).unwrap();
    assert!(!theorem1_check(&p).ok);
    let universal = is_universal(&p).unwrap();
    let r = closure(&build_generating_set(&p).vectors()).unwrap();
    assert_eq!(universal, r.len() == 1023);
}

/// For odd `n`: full-weight extensions only reach odd weights, and for a
/// lighter extension a specific weight-two element stays out of reach.
#[test]
fn single_extension_obstructions() {
    for n in [3, 5] {
        let base = single_qubit(n);
        for idx in 1..1usize << (2 * n) {
            let v = PauliVector::from_index(n, idx).unwrap();
            let mut gens = base.clone();
            gens.push(v);
            let r = closure(&gens).unwrap();
            assert!(!r.universal());
            if v.weight() == n {
                assert!(r.reachable().iter().all(|u| u.weight() % 2 == 1));
            } else {
                let j = (1..=n)
                    .find(|q| !v.x_support().contains(q) && !v.z_support().contains(q))
                    .unwrap();
                let xj = PauliVector::x_basis(n, j).unwrap();
                let partner = match v.x_support().first() {
                    Some(&i) => PauliVector::x_basis(n, i).unwrap(),
                    None => PauliVector::z_basis(n, v.z_support()[0]).unwrap(),
                };
                let w = partner.add(&xj).unwrap();
                assert!(!r.contains(&w), "{v}: {w} reachable");
            }
        }
    }
}

#[test]
fn scan_for_five_qubits() {
    let r = theorem2_scan(5).unwrap();
    assert!(r.all_fail);
    assert_eq!(r.candidates, 1023);
}
