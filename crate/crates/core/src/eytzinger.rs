//! Implicit-heap (Eytzinger) array layout with a branchless predecessor
//! search. Node `i`'s children live at `2i` and `2i + 1`, 1-based, so a
//! search touches one contiguous cache line per level near the root.

use crate::Label;

/// Reorders a sorted slice into 1-based Eytzinger order. Slot 0 is a
/// placeholder so the index arithmetic stays branch-free.
pub(crate) fn layout(sorted: &[Label]) -> Vec<Label> {
    let mut out = vec![0 as Label; sorted.len() + 1];
    fill(sorted, &mut out, &mut 0, 1);
    out
}

fn fill(sorted: &[Label], out: &mut [Label], next: &mut usize, k: usize) {
    if k <= sorted.len() {
        fill(sorted, out, next, 2 * k);
        out[k] = sorted[*next];
        *next += 1;
        fill(sorted, out, next, 2 * k + 1);
    }
}

/// Largest element `<= key` in an Eytzinger-ordered array, with the number
/// of label comparisons made. The descent appends one path bit per level;
/// stripping the trailing zeros afterwards lands on the last node where the
/// search went right, which is exactly the predecessor.
pub(crate) fn predecessor_counted(eytz: &[Label], key: Label) -> (Option<Label>, u32) {
    let n = eytz.len() - 1;
    let mut i = 1usize;
    let mut comparisons = 0u32;
    while i <= n {
        comparisons += 1;
        i = 2 * i + usize::from(eytz[i] <= key);
    }
    i >>= i.trailing_zeros() + 1;
    if i == 0 {
        (None, comparisons)
    } else {
        (Some(eytz[i]), comparisons)
    }
}
