//! Dense linear algebra over the coefficient field.

use crate::field::{Coeff, Field};

pub type Vector = Vec<Coeff>;

/// Solution set of a linear system: `particular + span(kernel)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineSolution {
    pub particular: Vector,
    pub kernel: Vec<Vector>,
}

/// Reduced row echelon form in place; returns pivot columns.
fn rref(field: Field, rows: &mut Vec<Vector>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !field.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, p);
        let inv = field.inv(&rows[r][c]);
        for e in rows[r].iter_mut() {
            *e = field.mul(e, &inv);
        }
        for i in 0..rows.len() {
            if i != r && !field.is_zero(&rows[i][c]) {
                let f = rows[i][c].clone();
                for k in 0..rows[i].len() {
                    let s = field.mul(&f, &rows[r][k]);
                    rows[i][k] = field.sub(&rows[i][k], &s);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Solves `a · v = b` where `a` has rows of length `ncols`.
pub fn solve(field: Field, a: &[Vector], b: &[Coeff], ncols: usize) -> Option<AffineSolution> {
    assert_eq!(a.len(), b.len());
    let mut rows: Vec<Vector> = a
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut row = r.clone();
            row.push(bi.clone());
            row
        })
        .collect();
    let pivots = rref(field, &mut rows, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut particular = vec![field.zero(); ncols];
    for (row, &p) in rows.iter().zip(&pivots) {
        particular[p] = row[ncols].clone();
    }
    Some(AffineSolution {
        particular,
        kernel: kernel_from_rref(field, &rows, &pivots, ncols),
    })
}

fn kernel_from_rref(field: Field, rows: &[Vector], pivots: &[usize], ncols: usize) -> Vec<Vector> {
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![field.zero(); ncols];
        v[free] = field.one();
        for (row, &p) in rows.iter().zip(pivots) {
            v[p] = field.neg(&row[free]);
        }
        out.push(v);
    }
    out
}

/// Kernel basis of `a` (rows of length `ncols`).
pub fn kernel(field: Field, a: &[Vector], ncols: usize) -> Vec<Vector> {
    let mut rows = a.to_vec();
    let pivots = rref(field, &mut rows, ncols);
    kernel_from_rref(field, &rows, &pivots, ncols)
}

/// A subspace of F^n kept in reduced echelon form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Subspace {
        Subspace {
            field,
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn spanned_by(field: Field, ambient: usize, vectors: &[Vector]) -> Subspace {
        let mut s = Subspace::zero(field, ambient);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn full(field: Field, ambient: usize) -> Subspace {
        let basis: Vec<Vector> = (0..ambient)
            .map(|i| {
                let mut v = vec![field.zero(); ambient];
                v[i] = field.one();
                v
            })
            .collect();
        Subspace::spanned_by(field, ambient, &basis)
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vector] {
        &self.rows
    }

    /// Remainder of `v` after eliminating the pivot coordinates.
    pub fn reduce(&self, v: &[Coeff]) -> Vector {
        let f = self.field;
        let mut out = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !f.is_zero(&out[p]) {
                let c = out[p].clone();
                for k in 0..out.len() {
                    let s = f.mul(&c, &row[k]);
                    out[k] = f.sub(&out[k], &s);
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Coeff]) -> bool {
        self.reduce(v).iter().all(|c| self.field.is_zero(c))
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[Coeff]) -> bool {
        let r = self.reduce(v);
        if r.iter().all(|c| self.field.is_zero(c)) {
            return false;
        }
        let mut rows = std::mem::take(&mut self.rows);
        rows.push(r);
        self.pivots = rref(self.field, &mut rows, self.ambient);
        self.rows = rows;
        true
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|v| self.contains(v))
    }

    /// Basis vectors of `within` that are independent modulo `self`, so that
    /// together with `self` they span `self + within`. Deterministic.
    pub fn complement_in(&self, within: &Subspace) -> Vec<Vector> {
        let mut acc = self.clone();
        let mut out = Vec::new();
        for v in &within.rows {
            if acc.insert(v) {
                out.push(v.clone());
            }
        }
        out
    }
}

/// Σ c_i v_i.
pub fn combine(field: Field, ambient: usize, coeffs: &[Coeff], vectors: &[Vector]) -> Vector {
    let mut out = vec![field.zero(); ambient];
    for (c, v) in coeffs.iter().zip(vectors) {
        if field.is_zero(c) {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            *o = field.add(o, &field.mul(c, x));
        }
    }
    out
}

pub fn add(field: Field, a: &[Coeff], b: &[Coeff]) -> Vector {
    a.iter().zip(b).map(|(x, y)| field.add(x, y)).collect()
}

/// All coefficient tuples in F_p^k, in lexicographic order. Panics over Q.
pub fn all_tuples(field: Field, k: usize) -> Vec<Vec<Coeff>> {
    tuples(field, k).collect()
}

/// Lazy odometer over F_p^k, in the same order as [`all_tuples`].
pub fn tuples(field: Field, k: usize) -> Tuples {
    let elems = field.elements().expect("enumeration needs a finite field");
    Tuples {
        elems,
        digits: vec![0; k],
        done: false,
    }
}

#[derive(Debug, Clone)]
pub struct Tuples {
    elems: Vec<Coeff>,
    digits: Vec<usize>,
    done: bool,
}

impl Iterator for Tuples {
    type Item = Vec<Coeff>;

    fn next(&mut self) -> Option<Vec<Coeff>> {
        if self.done {
            return None;
        }
        let out = self.digits.iter().map(|&d| self.elems[d].clone()).collect();
        // the last coordinate varies fastest
        self.done = true;
        for d in self.digits.iter_mut().rev() {
            *d += 1;
            if *d < self.elems.len() {
                self.done = false;
                break;
            }
            *d = 0;
        }
        Some(out)
    }
}

/// Nonzero tuples in F_p^k whose first nonzero entry is 1 (one per line).
pub fn projective_tuples(field: Field, k: usize) -> impl Iterator<Item = Vec<Coeff>> {
    tuples(field, k).filter(move |t| match t.iter().find(|c| !field.is_zero(c)) {
        Some(c) => field.is_one(c),
        None => false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(f: Field, xs: &[i64]) -> Vector {
        xs.iter().map(|&x| f.from_i64(x)).collect()
    }

    #[test]
    fn solve_and_kernel() {
        let f = Field::prime(5).unwrap();
        let a = vec![v(f, &[1, 2, 0]), v(f, &[0, 0, 1])];
        let sol = solve(f, &a, &v(f, &[3, 4]), 3).unwrap();
        assert_eq!(sol.particular, v(f, &[3, 0, 4]));
        assert_eq!(sol.kernel, vec![v(f, &[-2, 1, 0])]);
        let inconsistent = vec![v(f, &[0, 0, 0])];
        assert!(solve(f, &inconsistent, &v(f, &[1]), 3).is_none());
    }

    #[test]
    fn subspace_ops() {
        let f = Field::prime(2).unwrap();
        let mut s = Subspace::zero(f, 3);
        assert!(s.insert(&v(f, &[1, 1, 0])));
        assert!(!s.insert(&v(f, &[1, 1, 0])));
        assert!(s.insert(&v(f, &[0, 1, 1])));
        assert!(s.contains(&v(f, &[1, 0, 1])));
        assert!(!s.contains(&v(f, &[1, 0, 0])));
        let full = Subspace::full(f, 3);
        assert_eq!(s.complement_in(&full).len(), 1);
    }

    #[test]
    fn tuple_counts() {
        let f = Field::prime(3).unwrap();
        assert_eq!(all_tuples(f, 2).len(), 9);
        assert_eq!(projective_tuples(f, 2).count(), 4);
    }
}
