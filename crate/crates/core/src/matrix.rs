//! Small dense matrices over A: determinants and minors.

use std::collections::HashMap;

use crate::algebra::PresentedAlgebra;
use crate::poly::Polynomial;

/// Row-major matrix of polynomials.
pub type Matrix = Vec<Vec<Polynomial>>;

/// An ℓ×ℓ minor with its row and column indices (ascending).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Minor {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub value: Polynomial,
}

/// All k-subsets of 0..n in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// Determinant of the submatrix on `rows` × `cols`, reduced in A.
///
/// Laplace expansion along rows with memoisation on the set of used columns,
/// so the cost is O(2^k · k) products.
pub fn minor_det(alg: &PresentedAlgebra, m: &Matrix, rows: &[usize], cols: &[usize]) -> Polynomial {
    assert_eq!(rows.len(), cols.len());
    let k = rows.len();
    if k == 0 {
        return alg.one();
    }
    // memo over bitmasks of remaining columns; depth = number of used columns
    let mut memo: HashMap<u64, Polynomial> = HashMap::new();
    fn go(
        alg: &PresentedAlgebra,
        m: &Matrix,
        rows: &[usize],
        cols: &[usize],
        used: u64,
        memo: &mut HashMap<u64, Polynomial>,
    ) -> Polynomial {
        let depth = used.count_ones() as usize;
        if depth == rows.len() {
            return alg.one();
        }
        if let Some(v) = memo.get(&used) {
            return v.clone();
        }
        let r = rows[depth];
        let mut acc = alg.zero();
        let mut sign_pos = true;
        for (ci, &c) in cols.iter().enumerate() {
            if used & (1 << ci) != 0 {
                continue;
            }
            let entry = &m[r][c];
            if !entry.is_zero() {
                let sub = go(alg, m, rows, cols, used | (1 << ci), memo);
                if !sub.is_zero() {
                    let prod = entry * &sub;
                    acc = if sign_pos { &acc + &prod } else { &acc - &prod };
                }
            }
            sign_pos = !sign_pos;
        }
        let acc = alg.reduce(&acc);
        memo.insert(used, acc.clone());
        acc
    }
    go(alg, m, rows, cols, 0, &mut memo)
}

/// Determinant of a square matrix in A.
pub fn det(alg: &PresentedAlgebra, m: &Matrix) -> Polynomial {
    let idx: Vec<usize> = (0..m.len()).collect();
    minor_det(alg, m, &idx, &idx)
}

/// All ℓ-minors (including zero ones), rows-major lexicographic.
pub fn all_minors(alg: &PresentedAlgebra, m: &Matrix, ell: usize) -> Vec<Minor> {
    let nrows = m.len();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut out = Vec::new();
    for rows in subsets(nrows, ell) {
        for cols in subsets(ncols, ell) {
            let value = minor_det(alg, m, &rows, &cols);
            out.push(Minor {
                rows: rows.clone(),
                cols,
                value,
            });
        }
    }
    out
}

/// M·v reduced in A.
pub fn mat_vec(alg: &PresentedAlgebra, m: &Matrix, v: &[Polynomial]) -> Vec<Polynomial> {
    m.iter()
        .map(|row| {
            let mut acc = alg.zero();
            for (a, b) in row.iter().zip(v) {
                if !a.is_zero() && !b.is_zero() {
                    acc = &acc + &(a * b);
                }
            }
            alg.reduce(&acc)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subset_counts() {
        assert_eq!(subsets(4, 2).len(), 6);
        assert_eq!(subsets(3, 0), vec![Vec::<usize>::new()]);
        assert!(subsets(2, 3).is_empty());
    }

    #[test]
    fn determinants() {
        let a = PresentedAlgebra::parse(0, &["x", "y"], &[]).unwrap();
        let p = |s: &str| a.parse_element(s).unwrap();
        let m = vec![vec![p("x"), p("1")], vec![p("y"), p("x")]];
        assert_eq!(det(&a, &m), p("x^2 - y"));
        let m3 = vec![
            vec![p("2"), p("0"), p("1")],
            vec![p("1"), p("3"), p("2")],
            vec![p("1"), p("1"), p("1")],
        ];
        // 2(3-2) - 0 + 1(1-3) = 0
        assert!(det(&a, &m3).is_zero());
    }

    #[test]
    fn determinant_reduces_in_quotient() {
        let a = PresentedAlgebra::parse(3, &["x"], &["x^2"]).unwrap();
        let p = |s: &str| a.parse_element(s).unwrap();
        let m = vec![vec![p("x"), p("1")], vec![p("1"), p("x")]];
        assert_eq!(det(&a, &m), p("-1"));
    }
}
