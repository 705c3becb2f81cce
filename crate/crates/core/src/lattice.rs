//! Smith normal form over the integers, used to present quotient groups.

/// Column-tracked Smith reduction of `rows` (each of length `cols`).
///
/// Returns the diagonal entries (absolute values, one per column, with
/// zero for columns beyond the rank) and the unimodular column transform
/// `v` such that `rows * v` has the same row span as the diagonal matrix.
pub fn smith_columns(mut a: Vec<Vec<i128>>, cols: usize) -> (Vec<i128>, Vec<Vec<i128>>) {
    let rows = a.len();
    let mut v: Vec<Vec<i128>> = (0..cols)
        .map(|i| (0..cols).map(|j| i128::from(i == j)).collect())
        .collect();
    let mut diag = vec![0i128; cols];
    for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for (i, row) in a.iter().enumerate().skip(t) {
                for (j, &x) in row.iter().enumerate().skip(t) {
                    if x != 0 && best.is_none_or(|(bi, bj)| x.abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return (diag, v);
            };
            a.swap(t, bi);
            if bj != t {
                for row in a.iter_mut() {
                    row.swap(t, bj);
                }
                for row in v.iter_mut() {
                    row.swap(t, bj);
                }
            }
            let pivot = a[t][t];
            let mut clean = true;
            for i in t + 1..rows {
                let q = a[i][t] / pivot;
                if q != 0 {
                    for j in t..cols {
                        a[i][j] -= q * a[t][j];
                    }
                }
                clean &= a[i][t] == 0;
            }
            for j in t + 1..cols {
                let q = a[t][j] / pivot;
                if q != 0 {
                    for row in a.iter_mut() {
                        row[j] -= q * row[t];
                    }
                    for row in v.iter_mut() {
                        row[j] -= q * row[t];
                    }
                }
                clean &= a[t][j] == 0;
            }
            if !clean {
                continue;
            }
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % pivot != 0));
            match offender {
                Some(i) => {
                    for j in t..cols {
                        a[t][j] += a[i][j];
                    }
                }
                None => break,
            }
        }
        diag[t] = a[t][t].abs();
    }
    (diag, v)
}
