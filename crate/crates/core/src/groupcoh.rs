//! Group cohomology with adjoint coefficients via Fox calculus.
//!
//! For `π = ⟨a₁,…,a_g | w₁,…,w_r⟩` and `ρ: π → SU(2)` the cochain complex
//!
//! ```text
//! 0 → 𝔤 --ψ--> 𝔤^g --φ--> 𝔤^r
//! ```
//!
//! has `ψ(X)ᵢ = X − Ad(ρ(aᵢ))X` and `φ` the Fox Jacobian evaluated through
//! `Ad ∘ ρ`: an occurrence of `a` in `w = u·a·v` contributes `Ad(ρ(u))`, an
//! occurrence of `a⁻¹` in `w = u·a⁻¹·v` contributes `−Ad(ρ(u·a⁻¹))`. Then
//! `H⁰ = ker ψ` and `H¹ = ker φ / im ψ`.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::group::{evaluate, GroupPresentation, Representation, Word};
use crate::su2::{adjoint, UnitQuaternion};
use crate::{Real, Result, Tolerances};

/// The differentials and the dimensions read off from them.
#[derive(Clone, Debug)]
pub struct CochainData<T: Real> {
    /// `3g × 3`.
    pub psi: DMatrix<T>,
    /// `3r × 3g`.
    pub phi: DMatrix<T>,
    pub rank_psi: usize,
    pub rank_phi: usize,
    pub h0: usize,
    pub h1: usize,
}

impl<T: Real> CochainData<T> {
    /// `3g − rank φ`.
    pub fn omega(&self) -> usize {
        self.phi.ncols() - self.rank_phi
    }

    /// Frobenius norm of `φ·ψ`, zero for an honest representation.
    pub fn complex_defect(&self) -> T {
        (&self.phi * &self.psi).norm()
    }
}

fn ad_block<T: Real>(q: UnitQuaternion<T>) -> DMatrix<T> {
    let m = adjoint(q).0;
    DMatrix::from_fn(3, 3, |i, j| m[i][j])
}

/// The `3 × 3g` block row of `φ` for a single word.
pub fn fox_row<T: Real>(word: &Word, images: &[UnitQuaternion<T>]) -> DMatrix<T> {
    let g = images.len();
    let mut row = DMatrix::zeros(3, 3 * g);
    let mut prefix = UnitQuaternion::identity();
    for l in word.letters() {
        let q = images[l.gen];
        let mut block = row.view_mut((0, 3 * l.gen), (3, 3));
        if l.inverse {
            prefix = prefix * q.inverse();
            block -= ad_block(prefix);
        } else {
            block += ad_block(prefix);
            prefix = prefix * q;
        }
    }
    row
}

/// `ψ` as a `3g × 3` matrix.
pub fn psi_matrix<T: Real>(images: &[UnitQuaternion<T>]) -> DMatrix<T> {
    let g = images.len();
    let mut psi = DMatrix::zeros(3 * g, 3);
    for (i, &q) in images.iter().enumerate() {
        let block = DMatrix::<T>::identity(3, 3) - ad_block(q);
        psi.view_mut((3 * i, 0), (3, 3)).copy_from(&block);
    }
    psi
}

/// `φ` as a `3r × 3g` matrix.
pub fn phi_matrix<T: Real>(p: &GroupPresentation, images: &[UnitQuaternion<T>]) -> DMatrix<T> {
    let g = images.len();
    let mut phi = DMatrix::zeros(3 * p.num_relators(), 3 * g);
    for (b, w) in p.relators().iter().enumerate() {
        phi.view_mut((3 * b, 0), (3, 3 * g))
            .copy_from(&fox_row(w, images));
    }
    phi
}

/// Numerical rank: singular values above `cutoff · σ_max`.
pub fn numerical_rank<T: Real>(m: &DMatrix<T>, cutoff: f64) -> usize {
    if m.is_empty() {
        return 0;
    }
    let sv = m.clone().singular_values();
    let max = sv.iter().copied().fold(T::zero(), |a, b| if b > a { b } else { a });
    if max == T::zero() {
        return 0;
    }
    let thresh = max * T::lit(cutoff);
    sv.iter().filter(|&&s| s > thresh).count()
}

pub fn fox_matrix<T: Real>(p: &GroupPresentation, rho: &Representation<T>) -> Result<CochainData<T>> {
    fox_matrix_with(p, rho, &Tolerances::default())
}

pub fn fox_matrix_with<T: Real>(
    p: &GroupPresentation,
    rho: &Representation<T>,
    tol: &Tolerances,
) -> Result<CochainData<T>> {
    rho.validate(tol.representation)?;
    Ok(cochain_data(p, rho.images(), tol.rank_cutoff))
}

/// As [`fox_matrix`] without validating the representation.
pub fn cochain_data<T: Real>(
    p: &GroupPresentation,
    images: &[UnitQuaternion<T>],
    cutoff: f64,
) -> CochainData<T> {
    let psi = psi_matrix(images);
    let phi = phi_matrix(p, images);
    let rank_psi = numerical_rank(&psi, cutoff);
    let rank_phi = numerical_rank(&phi, cutoff);
    let kernel = 3 * images.len() - rank_phi;
    CochainData {
        h0: 3 - rank_psi,
        h1: kernel.saturating_sub(rank_psi),
        psi,
        phi,
        rank_psi,
        rank_phi,
    }
}

pub fn h0_dimension<T: Real>(p: &GroupPresentation, rho: &Representation<T>) -> Result<usize> {
    Ok(fox_matrix(p, rho)?.h0)
}

pub fn h1_dimension<T: Real>(p: &GroupPresentation, rho: &Representation<T>) -> Result<usize> {
    Ok(fox_matrix(p, rho)?.h1)
}

/// `dim ker φ`.
pub fn omega<T: Real>(p: &GroupPresentation, rho: &Representation<T>) -> Result<usize> {
    Ok(fox_matrix(p, rho)?.omega())
}

/// Value of a word under a list of generator images.
pub fn evaluate_word<T: Real>(word: &Word, images: &[UnitQuaternion<T>]) -> UnitQuaternion<T> {
    evaluate(images, word)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChainStatus {
    /// Equal `H⁰` and `h1(Y−) ≤ h1(W) ≤ h1(Y+)`.
    Consistent,
    /// `H⁰` dimensions differ; no inequality is predicted.
    HypothesisFails,
    /// Equal `H⁰` but the inequality fails. For data coming from an actual
    /// ribbon cobordism this signals an internal error.
    Inconsistent,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZariskiReport {
    pub hypothesis_holds: bool,
    pub inequality_holds: bool,
    pub status: ChainStatus,
}

/// Checks `(h0, h1)` triples for `Y−`, `W`, `Y+`.
pub fn zariski_chain_check(
    minus: (usize, usize),
    cobordism: (usize, usize),
    plus: (usize, usize),
) -> ZariskiReport {
    let hypothesis_holds = minus.0 == plus.0;
    let inequality_holds = minus.1 <= cobordism.1 && cobordism.1 <= plus.1;
    let status = match (hypothesis_holds, inequality_holds) {
        (false, _) => ChainStatus::HypothesisFails,
        (true, true) => ChainStatus::Consistent,
        (true, false) => ChainStatus::Inconsistent,
    };
    ZariskiReport {
        hypothesis_holds,
        inequality_holds,
        status,
    }
}
