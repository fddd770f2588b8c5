use crate::basis::Basis;
use crate::scalar::Scalar;

/// Modified Floyd-Warshall over `order`.
///
/// Each pass reads the previous matrix and writes a fresh one. With `fixed`,
/// a cell update is skipped when `i`, `j` and `k` are all fixed. Returns
/// `None` as soon as a cell becomes bottom.
pub(crate) fn close_cells<B: Basis>(
    basis: &B,
    n: usize,
    mut cells: Vec<B::Elem>,
    order: &[usize],
    fixed: Option<&[bool]>,
) -> Option<Vec<B::Elem>> {
    if cells.iter().any(|c| basis.is_bottom(c)) {
        return None;
    }
    let zero = basis.singleton(&Scalar::zero());
    let is_fixed = |v: usize| fixed.is_some_and(|f| f[v]);
    for &k in order {
        let mut next = cells.clone();
        for i in 0..n {
            for j in i..n {
                if is_fixed(i) && is_fixed(j) && is_fixed(k) {
                    continue;
                }
                let path = basis.add(&cells[i * n + k], &cells[k * n + j]);
                let v = if i == j {
                    basis.meet(&zero, &path)
                } else {
                    basis.meet(&cells[i * n + j], &path)
                };
                if basis.is_bottom(&v) {
                    return None;
                }
                if i != j {
                    next[j * n + i] = basis.neg(&v);
                }
                next[i * n + j] = v;
            }
        }
        cells = next;
    }
    Some(cells)
}
