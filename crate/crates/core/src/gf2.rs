//! Linear algebra over the two-element field on bit columns.

use fixedbitset::FixedBitSet;

/// Largest set index, the "low" entry of a boundary column.
#[inline]
pub fn low(col: &FixedBitSet) -> Option<usize> {
    col.ones().next_back()
}

/// Rank of the span of `columns`.
pub fn rank(columns: impl IntoIterator<Item = FixedBitSet>) -> usize {
    // pivot[i] holds a reduced column whose low entry is i
    let mut pivot: Vec<Option<FixedBitSet>> = Vec::new();
    let mut r = 0;
    for mut col in columns {
        while let Some(l) = low(&col) {
            if pivot.len() <= l {
                pivot.resize(l + 1, None);
            }
            match &pivot[l] {
                Some(p) => col.symmetric_difference_with(p),
                None => {
                    pivot[l] = Some(col);
                    r += 1;
                    break;
                }
            }
        }
    }
    r
}
