/// Numerical tolerances shared by the floating-point modules.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// Allowed drift of `|q|^2` from one before renormalising.
    pub normalization: f64,
    /// Target accuracy of the angle bisection.
    pub bisection: f64,
    /// Orthogonality / homomorphism checks on adjoint matrices.
    pub matrix: f64,
    /// Margin for strict interval membership (irreducibility).
    pub strict_margin: f64,
    /// Relator residual required of synthesized witnesses.
    pub witness_residual: f64,
    /// Relator residual below which a representation is accepted.
    pub representation: f64,
    /// Singular values below `rank_cutoff * sigma_max` count as zero.
    pub rank_cutoff: f64,
    /// Trace-coordinate tolerance when clustering conjugacy classes.
    pub cluster: f64,
    /// Tolerance for decimal Chern-Simons values mod 1.
    pub chern_simons: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            normalization: 1e-12,
            bisection: 1e-10,
            matrix: 1e-9,
            strict_margin: 1e-9,
            witness_residual: 1e-9,
            representation: 1e-8,
            rank_cutoff: 1e-8,
            cluster: 1e-6,
            chern_simons: 1e-9,
        }
    }
}
