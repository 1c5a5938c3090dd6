//! Truncated Hasse–Schmidt derivations, stored by the images of the
//! variables: ξ_{μ,i} = D_μ(x_i) for μ = 1..m.

use std::fmt;
use std::sync::Arc;

use crate::algebra::{PresentedAlgebra, QuotientIdeal};
use crate::error::{Error, Result};
use crate::geometry::jacobian;
use crate::poly::Polynomial;
use crate::series::{truncated_substitution, TruncatedSeries};

#[derive(Debug, Clone)]
pub struct HsDerivation {
    algebra: Arc<PresentedAlgebra>,
    /// `xi[μ-1][i]`
    xi: Vec<Vec<Polynomial>>,
}

/// Result of [`HsDerivation::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Validation {
    Valid,
    /// φ_D(f_generator) has a nonzero coefficient at t^order.
    Invalid { generator: usize, order: usize },
}

impl Validation {
    pub fn is_valid(&self) -> bool {
        matches!(self, Validation::Valid)
    }
}

impl PartialEq for HsDerivation {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.algebra, &other.algebra) && self.xi == other.xi
    }
}

impl HsDerivation {
    /// Builds a table (not yet validated). Entries are reduced mod I.
    pub fn new(algebra: &Arc<PresentedAlgebra>, xi: Vec<Vec<Polynomial>>) -> Result<HsDerivation> {
        let n = algebra.nvars();
        if xi.is_empty() {
            return Err(Error::InvalidInput("HS-derivation of length 0".into()));
        }
        let mut rows = Vec::with_capacity(xi.len());
        for row in xi {
            if row.len() != n {
                return Err(Error::InvalidInput(format!("row has {} entries, expected {n}", row.len())));
            }
            let mut out = Vec::with_capacity(n);
            for e in row {
                algebra.check_ring(&e)?;
                out.push(algebra.reduce(&e));
            }
            rows.push(out);
        }
        Ok(HsDerivation {
            algebra: algebra.clone(),
            xi: rows,
        })
    }

    /// Parses rows of polynomial strings.
    pub fn parse(algebra: &Arc<PresentedAlgebra>, rows: &[&[&str]]) -> Result<HsDerivation> {
        let xi = rows
            .iter()
            .map(|r| r.iter().map(|s| algebra.parse_element(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(algebra, xi)
    }

    /// The identity 𝕀 of length m (all ξ = 0).
    pub fn identity(algebra: &Arc<PresentedAlgebra>, m: usize) -> HsDerivation {
        HsDerivation {
            algebra: algebra.clone(),
            xi: vec![vec![algebra.zero(); algebra.nvars()]; m.max(1)],
        }
    }

    pub fn algebra(&self) -> &Arc<PresentedAlgebra> {
        &self.algebra
    }

    pub fn length(&self) -> usize {
        self.xi.len()
    }

    /// D_μ(x_i) for all i; μ in 1..=m.
    pub fn row(&self, mu: usize) -> &[Polynomial] {
        &self.xi[mu - 1]
    }

    pub fn table(&self) -> &[Vec<Polynomial>] {
        &self.xi
    }

    pub fn is_identity(&self) -> bool {
        self.xi.iter().flatten().all(|e| e.is_zero())
    }

    /// x_i + Σ t^μ ξ_{μ,i}.
    pub fn series(&self, i: usize) -> TruncatedSeries {
        let mut c = vec![self.algebra.var(i)];
        c.extend(self.xi.iter().map(|row| row[i].clone()));
        TruncatedSeries::new(&self.algebra, c, self.length())
    }

    pub fn series_all(&self) -> Vec<TruncatedSeries> {
        (0..self.algebra.nvars()).map(|i| self.series(i)).collect()
    }

    /// φ_D(f) = Σ t^α D_α(f) for f in the ambient ring.
    pub fn apply(&self, f: &Polynomial) -> Result<TruncatedSeries> {
        truncated_substitution(&self.algebra, f, &self.series_all(), self.length())
    }

    /// φ_D is well defined on A iff it kills every generator of I.
    pub fn validate(&self) -> Result<Validation> {
        let images = self.series_all();
        for (a, f) in self.algebra.generators().iter().enumerate() {
            let s = truncated_substitution(&self.algebra, f, &images, self.length())?;
            if let Some(k) = s.coeffs().iter().position(|c| !c.is_zero()) {
                return Ok(Validation::Invalid { generator: a, order: k });
            }
        }
        Ok(Validation::Valid)
    }

    fn check_compatible(&self, other: &HsDerivation) -> Result<()> {
        if !Arc::ptr_eq(&self.algebra, &other.algebra) {
            return Err(Error::InvalidInput("HS-derivations over different algebras".into()));
        }
        if self.length() != other.length() {
            return Err(Error::InvalidInput("HS-derivations of different lengths".into()));
        }
        Ok(())
    }

    /// D ∘ E, with (D∘E)_α = Σ_{i+j=α} D_i ∘ E_j.
    pub fn compose(&self, other: &HsDerivation) -> Result<HsDerivation> {
        self.check_compatible(other)?;
        let m = self.length();
        let n = self.algebra.nvars();
        let images = self.series_all();
        let mut xi = vec![vec![self.algebra.zero(); n]; m];
        for i in 0..n {
            // E_j(x_i) for j = 0..m, then φ_D of each
            let e_series = other.series(i);
            for j in 0..=m {
                let phi = truncated_substitution(&self.algebra, e_series.coeff(j), &images, m)?;
                for alpha in j.max(1)..=m {
                    let c = phi.coeff(alpha - j);
                    if !c.is_zero() {
                        xi[alpha - 1][i] = &xi[alpha - 1][i] + c;
                    }
                }
            }
        }
        HsDerivation::new(&self.algebra, xi)
    }

    /// The E with D ∘ E = 𝕀, solved order by order:
    /// E_α(x) = −Σ_{j<α} D_{α−j}(E_j(x)).
    pub fn inverse(&self) -> Result<HsDerivation> {
        let m = self.length();
        let n = self.algebra.nvars();
        let images = self.series_all();
        let mut xi: Vec<Vec<Polynomial>> = Vec::with_capacity(m);
        // phis[i][j] = φ_D(E_j(x_i))
        let mut phis: Vec<Vec<TruncatedSeries>> = (0..n)
            .map(|i| Ok(vec![truncated_substitution(&self.algebra, &self.algebra.var(i), &images, m)?]))
            .collect::<Result<Vec<_>>>()?;
        for alpha in 1..=m {
            let mut row = Vec::with_capacity(n);
            for i in 0..n {
                let mut acc = self.algebra.zero();
                for j in 0..alpha {
                    acc = &acc - phis[i][j].coeff(alpha - j);
                }
                row.push(self.algebra.reduce(&acc));
            }
            for i in 0..n {
                let phi = truncated_substitution(&self.algebra, &row[i], &images, m)?;
                phis[i].push(phi);
            }
            xi.push(row);
        }
        HsDerivation::new(&self.algebra, xi)
    }

    /// Keep rows 1..=n.
    pub fn truncate(&self, n: usize) -> Result<HsDerivation> {
        if n == 0 || n > self.length() {
            return Err(Error::InvalidInput(format!(
                "cannot truncate length {} to {n}",
                self.length()
            )));
        }
        Ok(HsDerivation {
            algebra: self.algebra.clone(),
            xi: self.xi[..n].to_vec(),
        })
    }

    /// Append one row (used by the integrators).
    pub fn extended(&self, row: Vec<Polynomial>) -> Result<HsDerivation> {
        let mut xi = self.xi.clone();
        xi.push(row);
        HsDerivation::new(&self.algebra, xi)
    }

    /// D_α(J) ⊆ J for all α: every coefficient of φ_D(g), g a generator of J,
    /// lies in J.
    pub fn is_logarithmic(&self, j: &QuotientIdeal) -> Result<bool> {
        let images = self.series_all();
        for g in j.generators() {
            let s = truncated_substitution(&self.algebra, g, &images, self.length())?;
            if s.coeffs().iter().any(|c| !j.contains(c)) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// D_1 as a vector (D_1(x_1), …, D_1(x_n)).
    pub fn first_component(&self) -> Vec<Polynomial> {
        self.xi[0].clone()
    }

    /// Every entry lies in the ideal `ma`.
    pub fn entries_in(&self, ma: &QuotientIdeal) -> bool {
        self.xi.iter().flatten().all(|e| ma.contains(e))
    }
}

/// Σ_j ∂_j(f_α) ξ_j ≡ 0 mod I for every generator f_α.
pub fn derivation_check(alg: &PresentedAlgebra, xi: &[Polynomial]) -> Result<bool> {
    if xi.len() != alg.nvars() {
        return Err(Error::InvalidInput("derivation vector has wrong length".into()));
    }
    if alg.generators().is_empty() {
        return Ok(true);
    }
    let jac = jacobian(alg.generators())?;
    for row in &jac {
        let mut acc = alg.zero();
        for (d, x) in row.iter().zip(xi) {
            acc = &acc + &(d * x);
        }
        if !alg.is_zero(&acc) {
            return Ok(false);
        }
    }
    Ok(true)
}

impl fmt::Display for HsDerivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.algebra.ring().var_names();
        for (mu, row) in self.xi.iter().enumerate() {
            let parts: Vec<String> = names.iter().zip(row).map(|(v, e)| format!("{v} -> {e}")).collect();
            writeln!(f, "D{}: {}", mu + 1, parts.join(", "))?;
        }
        Ok(())
    }
}
