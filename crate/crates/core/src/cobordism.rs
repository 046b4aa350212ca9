//! Ribbon handle data: `m` 1-handles and `m` 2-handles on `Y−`.
//!
//! `π₁(W) = (π₁(Y−) ∗ ⟨b₁,…,b_m⟩) / ⟨⟨v₁,…,v_m⟩⟩`. The exponent matrix
//! `B_ij` counts `b_j` in `v_i` with sign; `W` is a rational homology
//! cobordism iff `det B ≠ 0`, and then `|H₁(W, Y−)| = |det B|`. In that case
//! every representation of `π₁(Y−)` extends over `π₁(W)`; the extension is
//! found numerically by damped Newton iteration.

use nalgebra::{DMatrix, DVector};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::Value;

use crate::abelian::IntMatrix;
use crate::group::{string_list, GroupPresentation, Word};
use crate::groupcoh::fox_row;
use crate::su2::{arg, random_unit_quaternion};
use crate::{Error, Quaternion, Representation, Result, Tolerances};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RibbonHandleData {
    pub base: GroupPresentation,
    pub new_generators: Vec<String>,
    /// Words over the base generators followed by the new ones.
    pub attaching_words: Vec<Word>,
}

impl RibbonHandleData {
    pub fn new(
        base: GroupPresentation,
        new_generators: Vec<String>,
        attaching_words: Vec<Word>,
    ) -> Result<Self> {
        if new_generators.len() != attaching_words.len() {
            return Err(Error::Parse(format!(
                "{} new generators but {} attaching words",
                new_generators.len(),
                attaching_words.len()
            )));
        }
        let data = Self {
            base,
            new_generators,
            attaching_words: attaching_words.iter().map(Word::reduced).collect(),
        };
        // Validates names and letters.
        data.cobordism_presentation()?;
        Ok(data)
    }

    pub fn handle_count(&self) -> usize {
        self.new_generators.len()
    }

    fn all_names(&self) -> Vec<String> {
        self.base
            .generators()
            .iter()
            .chain(&self.new_generators)
            .cloned()
            .collect()
    }

    /// Presentation of `π₁(W)`: base generators, then `b₁…b_m`.
    pub fn cobordism_presentation(&self) -> Result<GroupPresentation> {
        let relators = self
            .base
            .relators()
            .iter()
            .chain(&self.attaching_words)
            .cloned()
            .collect();
        GroupPresentation::new(self.all_names(), relators)
    }

    /// The presentation JSON plus `"new_generators"` and `"attaching_words"`.
    pub fn from_json(v: &Value) -> Result<Self> {
        let base = GroupPresentation::from_json(v)?;
        let new_generators = string_list(v.get("new_generators"), "new_generators")?;
        let mut names = base.generators().to_vec();
        names.extend(new_generators.iter().cloned());
        let words = v
            .get("attaching_words")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("attaching_words must be an array".into()))?
            .iter()
            .map(|w| Word::from_names(&string_list(Some(w), "attaching word")?, &names))
            .collect::<Result<Vec<_>>>()?;
        Self::new(base, new_generators, words)
    }

    pub fn to_json(&self) -> Value {
        let mut v = self.base.to_json();
        let names = self.all_names();
        v["new_generators"] = serde_json::json!(self.new_generators);
        v["attaching_words"] = serde_json::json!(self
            .attaching_words
            .iter()
            .map(|w| w.to_names(&names))
            .collect::<Vec<_>>());
        v
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentMatrix {
    pub b: IntMatrix,
    pub det: BigInt,
}

pub fn exponent_matrix(h: &RibbonHandleData) -> ExponentMatrix {
    let g = h.base.num_generators();
    let m = h.handle_count();
    let mut b = IntMatrix::zeros(m, m);
    for (i, w) in h.attaching_words.iter().enumerate() {
        for j in 0..m {
            b[(i, j)] = BigInt::from(w.exponent_sum(g + j));
        }
    }
    let det = b.determinant();
    ExponentMatrix { b, det }
}

/// `Some(|H₁(W, Y−)|)` when `det B ≠ 0`, `None` otherwise.
pub fn is_rational_homology_cobordism(h: &RibbonHandleData) -> Option<BigInt> {
    let det = exponent_matrix(h).det;
    (!det.is_zero()).then(|| det.abs())
}

/// Extends `rho_minus` over `π₁(W)`.
///
/// Restart 0 starts from `bⱼ = 1`; restart `k > 0` from Haar-random values
/// drawn from ChaCha8 with the given seed on stream `k`. Restarts run in
/// parallel and the lowest successful index wins.
pub fn extend_representation(
    h: &RibbonHandleData,
    rho_minus: &Representation,
    restarts: usize,
    seed: u64,
) -> Result<Representation> {
    extend_representation_with(h, rho_minus, restarts, seed, &Tolerances::default())
}

pub fn extend_representation_with(
    h: &RibbonHandleData,
    rho_minus: &Representation,
    restarts: usize,
    seed: u64,
    tol: &Tolerances,
) -> Result<Representation> {
    if exponent_matrix(h).det.is_zero() {
        return Err(Error::PreconditionViolated(
            "det B = 0: not a rational homology cobordism".into(),
        ));
    }
    if rho_minus.images().len() != h.base.num_generators() {
        return Err(Error::PreconditionViolated(
            "representation does not match the base presentation".into(),
        ));
    }
    if !rho_minus.is_valid(tol.representation) {
        return Err(Error::PreconditionViolated(format!(
            "base representation has residual {:e}",
            rho_minus.residual()
        )));
    }
    let presentation = h.cobordism_presentation()?;
    let m = h.handle_count();
    if m == 0 {
        return Representation::new(&presentation, rho_minus.images().to_vec());
    }

    let attempt = |k: usize| -> (f64, Option<Vec<Quaternion>>) {
        let start = if k == 0 {
            vec![Quaternion::identity(); m]
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k as u64);
            (0..m).map(|_| random_unit_quaternion(&mut rng)).collect()
        };
        let (b, res) = newton(h, rho_minus.images(), start);
        (res, (res < tol.witness_residual).then_some(b))
    };

    let found = (0..restarts.max(1))
        .into_par_iter()
        .map(attempt)
        .find_map_first(|(_, b)| b);
    match found {
        Some(b) => {
            let mut images = rho_minus.images().to_vec();
            images.extend(b);
            Representation::new(&presentation, images)
        }
        None => {
            let best = (0..restarts.max(1))
                .map(|k| attempt(k).0)
                .fold(f64::INFINITY, f64::min);
            Err(Error::SolverExhausted {
                restarts: restarts.max(1),
                best,
            })
        }
    }
}

fn handle_residual(words: &[Word], images: &[Quaternion]) -> (DVector<f64>, f64) {
    let mut r = DVector::zeros(3 * words.len());
    let mut worst = 0.0f64;
    for (i, w) in words.iter().enumerate() {
        let q = crate::group::evaluate(images, w).normalized();
        let l = q.log();
        r[3 * i] = l[0];
        r[3 * i + 1] = l[1];
        r[3 * i + 2] = l[2];
        worst = worst.max(arg(q));
    }
    (r, worst)
}

/// Damped Newton in exponential coordinates, left perturbation
/// `bⱼ → exp(δⱼ) bⱼ`, with the Fox Jacobian in the `b` columns.
fn newton(h: &RibbonHandleData, base: &[Quaternion], start: Vec<Quaternion>) -> (Vec<Quaternion>, f64) {
    let g = base.len();
    let m = start.len();
    let words = &h.attaching_words;
    let mut images: Vec<Quaternion> = base.iter().copied().chain(start).collect();
    let (mut r, mut worst) = handle_residual(words, &images);
    for _ in 0..100 {
        if worst < 1e-13 {
            break;
        }
        let mut jac = DMatrix::zeros(3 * m, 3 * m);
        for (i, w) in words.iter().enumerate() {
            let row = fox_row(w, &images);
            jac.view_mut((3 * i, 0), (3, 3 * m))
                .copy_from(&row.view((0, 3 * g), (3, 3 * m)));
        }
        let Ok(step) = jac.svd(true, true).solve(&(-&r), 1e-12) else {
            break;
        };
        let norm0 = r.norm();
        let mut t = 1.0;
        let mut improved = false;
        for _ in 0..30 {
            let mut trial = images.clone();
            for j in 0..m {
                let d = [t * step[3 * j], t * step[3 * j + 1], t * step[3 * j + 2]];
                trial[g + j] = (Quaternion::exp(d) * images[g + j]).normalized();
            }
            let (rt, wt) = handle_residual(words, &trial);
            if rt.norm() < norm0 {
                images = trial;
                r = rt;
                worst = wt;
                improved = true;
                break;
            }
            t *= 0.5;
        }
        if !improved {
            break;
        }
    }
    (images.split_off(g), worst)
}

/// Composes `rho_w` with a map sending each generator of `top` to a word in
/// the generators of `π₁(W)`.
pub fn pullback_to_top(
    h: &RibbonHandleData,
    top: &GroupPresentation,
    images: &[Word],
    rho_w: &Representation,
) -> Result<Representation> {
    pullback_to_top_with(h, top, images, rho_w, &Tolerances::default())
}

pub fn pullback_to_top_with(
    h: &RibbonHandleData,
    top: &GroupPresentation,
    images: &[Word],
    rho_w: &Representation,
    tol: &Tolerances,
) -> Result<Representation> {
    if images.len() != top.num_generators() {
        return Err(Error::PreconditionViolated(format!(
            "{} image words for {} generators",
            images.len(),
            top.num_generators()
        )));
    }
    let total = h.base.num_generators() + h.handle_count();
    if rho_w.images().len() != total
        || images.iter().any(|w| w.max_generator().is_some_and(|g| g >= total))
    {
        return Err(Error::PreconditionViolated(
            "image words or representation do not match the cobordism".into(),
        ));
    }
    let rho = Representation::new(top, images.iter().map(|w| rho_w.evaluate(w)).collect())?;
    rho.validate(tol.representation)?;
    Ok(rho)
}
