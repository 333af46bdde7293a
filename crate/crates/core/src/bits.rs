//! Small helpers for qubit masks. Bit `j` of a mask stands for qubit `j + 1`.

/// Mask with the low `n` bits set.
pub fn full_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// Iterates the zero-based indices of set bits, ascending.
pub fn ones(mut mask: u32) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let j = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(j)
        }
    })
}

/// One-based labels of the set bits, ascending.
pub fn labels(mask: u32) -> Vec<usize> {
    ones(mask).map(|j| j + 1).collect()
}

/// Builds a mask from one-based labels, rejecting anything outside `1..=n`.
pub fn mask_from_labels(labels: &[usize], n: usize) -> Result<u32, String> {
    let mut mask = 0u32;
    for &q in labels {
        if q == 0 || q > n {
            return Err(format!("qubit label {q} outside 1..={n}"));
        }
        mask |= 1 << (q - 1);
    }
    Ok(mask)
}

/// Lowest set bit as a single-bit mask.
pub fn lowest(mask: u32) -> u32 {
    mask & mask.wrapping_neg()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ones_ascending() {
        assert_eq!(ones(0b1011_0000).collect::<Vec<_>>(), vec![4, 5, 7]);
        assert_eq!(labels(0b101), vec![1, 3]);
        assert_eq!(full_mask(32), u32::MAX);
        assert_eq!(full_mask(3), 0b111);
    }

    #[test]
    fn labels_are_range_checked() {
        assert_eq!(mask_from_labels(&[1, 3], 3), Ok(0b101));
        assert!(mask_from_labels(&[0], 3).is_err());
        assert!(mask_from_labels(&[4], 3).is_err());
    }
}
