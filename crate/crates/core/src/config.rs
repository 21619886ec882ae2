use crate::{Error, Result};

/// Tolerances, cutoffs and budgets shared by every approximate operation.
#[derive(Debug, Clone, PartialEq)]
pub struct NumericsConfig {
    /// Absolute tolerance for special functions and series tails.
    pub abs_tol: f64,
    /// Distance from the boundary of absolute convergence required by direct sums
    /// (`Re(s) > 1 + margin` and similar).
    pub series_cutoff_margin: f64,
    /// Maximum number of refinement doublings for two-dimensional quadrature.
    pub quadrature_depth: u32,
    /// Gauss-Legendre order per axis and panel.
    pub quadrature_order: usize,
    /// Refinement tolerance for two-dimensional quadrature.
    pub quadrature_tol: f64,
    /// Evaluators refuse arguments closer than this to a pole.
    pub pole_guard_radius: f64,
    /// Upper bound on the number of lattice vectors an enumeration may visit.
    pub vector_budget: usize,
    /// Default coset height for the `SL3` coset sum.
    pub sl3_height: u32,
    /// Upper bound on the number of stored flags in the `SL3` coset sum.
    pub flag_budget: usize,
    /// Gauss-Legendre nodes per axis for unipotent averages.
    pub unipotent_nodes: usize,
}

impl Default for NumericsConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-12,
            series_cutoff_margin: 0.1,
            quadrature_depth: 3,
            quadrature_order: 64,
            quadrature_tol: 1e-10,
            pole_guard_radius: 1e-8,
            vector_budget: 4_000_000,
            sl3_height: 40,
            flag_budget: 100_000_000,
            unipotent_nodes: 8,
        }
    }
}

impl NumericsConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::Domain(alloc::format!("{name} must be positive, got {v}")))
            }
        };
        positive("abs_tol", self.abs_tol)?;
        positive("pole_guard_radius", self.pole_guard_radius)?;
        positive("quadrature_tol", self.quadrature_tol)?;
        if !(self.series_cutoff_margin >= 0.0) {
            return Err(Error::Domain("series_cutoff_margin must be nonnegative".into()));
        }
        if self.quadrature_order < 2 {
            return Err(Error::Domain("quadrature_order must be at least 2".into()));
        }
        if self.unipotent_nodes < 8 {
            return Err(Error::Domain("unipotent_nodes must be at least 8".into()));
        }
        if self.vector_budget == 0 || self.flag_budget == 0 || self.sl3_height == 0 {
            return Err(Error::Domain("budgets must be positive".into()));
        }
        Ok(())
    }
}
