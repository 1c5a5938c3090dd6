//! Finite-dimensional algebras as F-vector spaces over the staircase basis.

use std::collections::HashMap;
use std::sync::Arc;

use crate::algebra::PresentedAlgebra;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::geometry::{jacobian, reduce_matrix};
use crate::linalg::{kernel, Subspace, Vector};
use crate::matrix::Matrix;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Polynomial;

#[derive(Debug, Clone)]
pub struct ArtinianModel {
    algebra: Arc<PresentedAlgebra>,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl ArtinianModel {
    /// Fails with `NotArtinian` unless every variable has a pure power among
    /// the leading monomials.
    pub fn new(algebra: &Arc<PresentedAlgebra>) -> Result<ArtinianModel> {
        let n = algebra.nvars();
        let lms = algebra.basis().leading_monomials();
        if !algebra.is_zero_ring() {
            for i in 0..n {
                let pure = lms.iter().any(|m| {
                    m.exponent(i) > 0 && (0..n).all(|j| j == i || m.exponent(j) == 0)
                });
                if !pure {
                    return Err(Error::NotArtinian);
                }
            }
        }
        let standard = |m: &Monomial| !lms.iter().any(|l| l.divides(m));
        let mut basis = Vec::new();
        if !algebra.is_zero_ring() {
            let mut frontier = vec![Monomial::one(n)];
            let mut seen = std::collections::HashSet::new();
            seen.insert(Monomial::one(n));
            while let Some(m) = frontier.pop() {
                basis.push(m.clone());
                for i in 0..n {
                    let next = m.mul(&Monomial::var(n, i));
                    if standard(&next) && seen.insert(next.clone()) {
                        frontier.push(next);
                    }
                }
            }
        }
        let order = algebra.order();
        basis.sort_by(|a, b| order.cmp(b, a));
        let index = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        Ok(ArtinianModel {
            algebra: algebra.clone(),
            basis,
            index,
        })
    }

    pub fn algebra(&self) -> &Arc<PresentedAlgebra> {
        &self.algebra
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn nvars(&self) -> usize {
        self.algebra.nvars()
    }

    /// Standard monomials, descending in the algebra's order.
    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn order(&self) -> MonomialOrder {
        self.algebra.order()
    }

    /// Coordinates of the class of `f`.
    pub fn coords(&self, f: &Polynomial) -> Vector {
        let nf = self.algebra.reduce(f);
        let field = self.field();
        let mut v = vec![field.zero(); self.dim()];
        for (m, c) in nf.terms() {
            v[self.index[m]] = c.clone();
        }
        v
    }

    pub fn element(&self, v: &[crate::field::Coeff]) -> Polynomial {
        let ring = self.algebra.ring();
        Polynomial::from_terms(
            ring,
            self.basis
                .iter()
                .zip(v)
                .filter(|(_, c)| !self.field().is_zero(c))
                .map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    /// Coordinates of a vector in A^k (blocks of `dim`).
    pub fn vec_coords(&self, xs: &[Polynomial]) -> Vector {
        xs.iter().flat_map(|x| self.coords(x)).collect()
    }

    pub fn vec_element(&self, v: &[crate::field::Coeff]) -> Vec<Polynomial> {
        if self.dim() == 0 {
            return vec![self.algebra.zero(); self.nvars()];
        }
        v.chunks(self.dim()).map(|c| self.element(c)).collect()
    }

    /// The F-linear map A^n → A^s given by the matrix `m` over A, as rows of
    /// an (s·d) × (n·d) matrix.
    pub fn linearize(&self, m: &Matrix) -> Vec<Vector> {
        let d = self.dim();
        let s = m.len();
        let n = m.first().map_or(0, |r| r.len());
        let field = self.field();
        let mut rows = vec![vec![field.zero(); n * d]; s * d];
        for (a, row) in m.iter().enumerate() {
            for (j, entry) in row.iter().enumerate() {
                for (k, b) in self.basis.iter().enumerate() {
                    let img = self.coords(&entry.mul_term(b, &field.one()));
                    for (l, c) in img.into_iter().enumerate() {
                        rows[a * d + l][j * d + k] = c;
                    }
                }
            }
        }
        rows
    }

    /// Multiplication by `a` on A^n, as an F-linear map on coordinates.
    pub fn scale_vector(&self, a: &Polynomial, v: &[crate::field::Coeff]) -> Vector {
        let xs = self.vec_element(v);
        let scaled: Vec<Polynomial> = xs.iter().map(|x| self.algebra.mul(a, x)).collect();
        self.vec_coords(&scaled)
    }

    /// All variables nilpotent, so A is local with maximal ideal ⟨x⟩ and
    /// residue field F.
    pub fn is_local_at_origin(&self) -> bool {
        if self.dim() == 0 {
            return false;
        }
        let d = self.dim() as u32;
        (0..self.nvars()).all(|i| self.algebra.is_zero(&Polynomial::var(self.algebra.ring(), i).pow(d)))
    }

    /// Der_k(A) as an F-subspace of A^n.
    pub fn derivation_space(&self) -> Result<Subspace> {
        let ambient = self.nvars() * self.dim();
        let field = self.field();
        if self.algebra.generators().is_empty() {
            return Ok(Subspace::full(field, ambient));
        }
        let jac = reduce_matrix(&self.algebra, &jacobian(self.algebra.generators())?);
        let lin = self.linearize(&jac);
        Ok(Subspace::spanned_by(field, ambient, &kernel(field, &lin, ambient)))
    }
}

/// An F-basis of Der_k(A), as vectors (D(x_1), …, D(x_n)).
pub fn derivation_basis(model: &ArtinianModel) -> Result<Vec<Vec<Polynomial>>> {
    Ok(model
        .derivation_space()?
        .basis()
        .iter()
        .map(|v| model.vec_element(v))
        .collect())
}
