use super::window::Window;
use crate::basis::Basis;
use crate::scalar::Scalar;
use crate::weakrel::{ConstraintMatrix, WeakRel};

/// For each difference of two window numerators, whether it is in `γ(e)`.
pub struct DiffTable {
    offset: i64,
    allowed: Vec<bool>,
}

impl DiffTable {
    pub fn new<B: Basis>(b: &B, e: &B::Elem, w: &Window) -> Self {
        let (lo, hi) = w.numer_range();
        let span = hi - lo;
        DiffTable {
            offset: span,
            allowed: (-span..=span).map(|d| b.member(e, &w.scalar(d))).collect(),
        }
    }

    pub fn get(&self, d: i64) -> bool {
        self.allowed[(d + self.offset) as usize]
    }
}

/// Points of `Γ(m)` inside the window as numerators, by direct evaluation
/// of the definition (no closure).
pub fn gamma_numers<B: Basis>(
    d: &WeakRel<B>,
    m: &ConstraintMatrix<B::Elem>,
    w: &Window,
) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    if m.is_empty_state() {
        return out;
    }
    let n = d.n();
    let tables: Vec<Vec<DiffTable>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| DiffTable::new(d.basis(), &d.cell(m, i, j), w))
                .collect()
        })
        .collect();
    if !(0..n).all(|i| tables[i][i].get(0)) {
        return out;
    }
    let (lo, hi) = w.numer_range();
    let mut point = vec![0i64];
    extend(&tables, n, lo, hi, &mut point, &mut out);
    out
}

fn extend(
    tables: &[Vec<DiffTable>],
    n: usize,
    lo: i64,
    hi: i64,
    point: &mut Vec<i64>,
    out: &mut Vec<Vec<i64>>,
) {
    let k = point.len();
    if k == n {
        out.push(point.clone());
        return;
    }
    for v in lo..=hi {
        if (0..k).all(|i| tables[i][k].get(v - point[i]) && tables[k][i].get(point[i] - v)) {
            point.push(v);
            extend(tables, n, lo, hi, point, out);
            point.pop();
        }
    }
}

/// Points of `Γ(m)` inside the window.
pub fn gamma_enum<B: Basis>(
    d: &WeakRel<B>,
    m: &ConstraintMatrix<B::Elem>,
    w: &Window,
) -> Vec<Vec<Scalar>> {
    gamma_numers(d, m, w).iter().map(|p| w.point(p)).collect()
}

/// Reference closure: each cell is the meet, over all simple paths from `i`
/// to `j`, of the sum of the cells along the path. `None` when some cell is
/// bottom.
pub fn closure_by_paths<B: Basis>(
    d: &WeakRel<B>,
    m: &ConstraintMatrix<B::Elem>,
) -> Option<Vec<Vec<B::Elem>>> {
    let n = d.n();
    assert!(n <= 5, "path enumeration is exponential");
    if m.is_empty_state() {
        return None;
    }
    let b = d.basis();
    let mut out = vec![vec![b.bottom(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut acc = d.cell(m, i, j);
            let others: Vec<usize> = (0..n).filter(|&k| k != i && k != j).collect();
            let mut path = vec![i];
            paths(d, m, &others, &mut path, j, &mut acc);
            if b.is_bottom(&acc) {
                return None;
            }
            out[i][j] = acc;
        }
    }
    Some(out)
}

fn paths<B: Basis>(
    d: &WeakRel<B>,
    m: &ConstraintMatrix<B::Elem>,
    free: &[usize],
    path: &mut Vec<usize>,
    target: usize,
    acc: &mut B::Elem,
) {
    let b = d.basis();
    for (idx, &k) in free.iter().enumerate() {
        path.push(k);
        let mut full = path.clone();
        full.push(target);
        let sum = full
            .windows(2)
            .map(|e| d.cell(m, e[0], e[1]))
            .reduce(|x, y| b.add(&x, &y))
            .expect("a path has an edge");
        *acc = b.meet(acc, &sum);
        let rest: Vec<usize> = free
            .iter()
            .enumerate()
            .filter(|(t, _)| *t != idx)
            .map(|(_, &v)| v)
            .collect();
        paths(d, m, &rest, path, target, acc);
        path.pop();
    }
}
