//! The extension step as an affine system over the base field, for
//! finite-dimensional A.

use super::{obstruction_coefficients, StepContext};
use crate::artinian::ArtinianModel;
use crate::error::Result;
use crate::geometry::{jacobian, reduce_matrix};
use crate::hs::HsDerivation;
use crate::linalg::{kernel, solve, AffineSolution, Vector};
use crate::poly::Polynomial;

/// J ξ over F, with J the Jacobian of a fixed list of generators.
#[derive(Debug, Clone)]
pub struct LinearizedSystem {
    model: ArtinianModel,
    generators: Vec<Polynomial>,
    rows: Vec<Vector>,
    kernel: Vec<Vector>,
}

impl LinearizedSystem {
    pub fn new(model: &ArtinianModel, generators: &[Polynomial]) -> Result<LinearizedSystem> {
        let ncols = model.nvars() * model.dim();
        let rows = if generators.is_empty() {
            Vec::new()
        } else {
            model.linearize(&reduce_matrix(model.algebra(), &jacobian(generators)?))
        };
        let kernel = kernel(model.field(), &rows, ncols);
        Ok(LinearizedSystem {
            model: model.clone(),
            generators: generators.to_vec(),
            rows,
            kernel,
        })
    }

    pub fn model(&self) -> &ArtinianModel {
        &self.model
    }

    pub fn ncols(&self) -> usize {
        self.model.nvars() * self.model.dim()
    }

    /// Basis of {ξ : J ξ = 0}; Der_k(A) when the generators generate I.
    pub fn kernel(&self) -> &[Vector] {
        &self.kernel
    }

    /// Coordinates of some ξ with J ξ = −F, if any.
    pub fn particular(&self, obstruction: &[Polynomial]) -> Option<Vector> {
        let field = self.model.field();
        let rhs: Vector = self
            .model
            .vec_coords(obstruction)
            .iter()
            .map(|c| field.neg(c))
            .collect();
        solve(field, &self.rows, &rhs, self.ncols()).map(|s| s.particular)
    }

    /// All next rows extending `partial`, as an affine space of coordinate
    /// vectors.
    pub fn extensions(&self, partial: &HsDerivation) -> Result<Option<AffineSolution>> {
        let f = obstruction_coefficients(partial, &self.generators)?;
        Ok(self.particular(&f).map(|particular| AffineSolution {
            particular,
            kernel: self.kernel.clone(),
        }))
    }
}

/// Solutions of the extension step as elements of A^n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionSpace {
    pub particular: Vec<Polynomial>,
    pub kernel: Vec<Vec<Polynomial>>,
}

/// `None` when no extension exists. The constraint ideal of `ctx` is not
/// imposed. Fails with `NotArtinian` on infinite-dimensional A.
pub fn linear_extension_space(ctx: &StepContext) -> Result<Option<ExtensionSpace>> {
    let model = ArtinianModel::new(ctx.algebra())?;
    let sys = LinearizedSystem::new(&model, ctx.generators())?;
    Ok(sys.extensions(ctx.partial())?.map(|s| ExtensionSpace {
        particular: model.vec_element(&s.particular),
        kernel: s.kernel.iter().map(|v| model.vec_element(v)).collect(),
    }))
}
