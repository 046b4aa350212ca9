//! Seifert fibered spaces over `S²` and Montesinos knots.
//!
//! A presentation `(b; (a₁,b₁),…,(aₙ,bₙ))` has fundamental group
//!
//! ```text
//! ⟨x₁,…,xₙ,h | h central, xᵢ^{aᵢ} h^{bᵢ}, x₁⋯xₙ h^b⟩
//! ```
//!
//! and Euler number `e = −b + Σ bᵢ/aᵢ`. The `bᵢ` are not required to lie in
//! `(0, aᵢ)`; [`SeifertPresentation::canonical`] provides the normal form.
//! A presentation is a homology sphere exactly when `|a₁⋯aₙ · e| = 1`; both
//! signs of `e` are accepted, the sign recording the orientation.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::abelian::{cokernel, in_column_lattice, FgAbelianGroup};
use crate::geometry::GeometryClass;
use crate::group::{GroupPresentation, Representation, Word};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SeifertPresentation {
    pub b: i64,
    pub pairs: Vec<(i64, i64)>,
    /// `-1` for the orientation-reversed manifold.
    pub orientation: i8,
}

/// Exact Euler number.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EulerNumber(pub BigRational);

impl EulerNumber {
    pub fn value(&self) -> &BigRational {
        &self.0
    }
}

impl fmt::Display for EulerNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl SeifertPresentation {
    pub fn new(b: i64, pairs: Vec<(i64, i64)>) -> Result<Self> {
        Self::with_orientation(b, pairs, 1)
    }

    pub fn with_orientation(b: i64, pairs: Vec<(i64, i64)>, orientation: i8) -> Result<Self> {
        for &(a, bi) in &pairs {
            if a < 1 {
                return Err(Error::Parse(format!("fiber order {a} must be at least 1")));
            }
            if a.gcd(&bi) != 1 {
                return Err(Error::Parse(format!("pair ({a}, {bi}) is not coprime")));
            }
        }
        if orientation != 1 && orientation != -1 {
            return Err(Error::Parse("orientation must be 1 or -1".into()));
        }
        Ok(Self {
            b,
            pairs,
            orientation,
        })
    }

    /// The presentation of `Σ(a₁,…,aₙ)` with `e = 1/(a₁⋯aₙ)` and
    /// `bᵢ = (A/aᵢ)⁻¹ mod aᵢ`, `A = a₁⋯aₙ`.
    pub fn brieskorn(orders: &[i64]) -> Result<Self> {
        check_pairwise_coprime(orders)?;
        let big_a: BigInt = orders.iter().map(|&a| BigInt::from(a)).product();
        let mut pairs = Vec::with_capacity(orders.len());
        let mut sum = BigInt::zero();
        for &a in orders {
            let ai = BigInt::from(a);
            let cofactor = &big_a / &ai;
            let bi = mod_inverse(&cofactor, &ai);
            sum += &bi * &cofactor;
            pairs.push((a, to_i64(&bi)?));
        }
        let b = (sum - BigInt::one()) / &big_a;
        Self::new(to_i64(&b)?, pairs)
    }

    /// Orders `aᵢ ≥ 2`, in presentation order.
    pub fn exceptional_orders(&self) -> Vec<i64> {
        self.pairs.iter().map(|p| p.0).filter(|&a| a >= 2).collect()
    }

    pub fn exceptional_fiber_count(&self) -> usize {
        self.exceptional_orders().len()
    }

    /// `−b + Σ bᵢ/aᵢ` for the presentation as written.
    pub fn euler_number(&self) -> EulerNumber {
        let mut e = BigRational::from_integer(BigInt::from(-self.b));
        for &(a, bi) in &self.pairs {
            e += BigRational::new(BigInt::from(bi), BigInt::from(a));
        }
        EulerNumber(e)
    }

    /// Euler number including the orientation flag.
    pub fn oriented_euler_number(&self) -> EulerNumber {
        let e = self.euler_number().0;
        EulerNumber(if self.orientation < 0 { -e } else { e })
    }

    fn order_product(&self) -> BigInt {
        self.pairs.iter().map(|p| BigInt::from(p.0)).product()
    }

    /// `|a₁⋯aₙ · e|`, the order of `H₁` when nonzero.
    pub fn homology_order(&self) -> BigInt {
        (self.euler_number().0 * BigRational::from_integer(self.order_product()))
            .abs()
            .to_integer()
    }

    pub fn is_homology_sphere(&self) -> bool {
        let e = self.euler_number().0 * BigRational::from_integer(self.order_product());
        e.abs().is_one() && check_pairwise_coprime(&self.exceptional_orders()).is_ok()
    }

    pub fn require_homology_sphere(&self) -> Result<()> {
        if self.is_homology_sphere() {
            Ok(())
        } else {
            Err(Error::NotHomologySphere(format!(
                "{self} has e = {}",
                self.euler_number()
            )))
        }
    }

    /// `bᵢ ∈ [0, aᵢ)` (moving multiples of `aᵢ` into `b`), unexceptional
    /// fibers absorbed into `b`, pairs sorted.
    pub fn canonical(&self) -> Self {
        let mut b = self.b;
        let mut pairs = Vec::new();
        for &(a, bi) in &self.pairs {
            let (q, r) = bi.div_mod_floor(&a);
            b -= q;
            if a >= 2 {
                pairs.push((a, r));
            }
        }
        pairs.sort_unstable();
        Self {
            b,
            pairs,
            orientation: self.orientation,
        }
    }

    /// Generators `x1..xn, h`.
    pub fn fundamental_group(&self) -> GroupPresentation {
        let n = self.pairs.len();
        let h = n;
        let mut names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
        names.push("h".into());
        let mut relators = Vec::new();
        for i in 0..n {
            relators.push(Word::from_powers(&[(i, 1), (h, 1), (i, -1), (h, -1)]));
        }
        for (i, &(a, bi)) in self.pairs.iter().enumerate() {
            relators.push(Word::from_powers(&[(i, a), (h, bi)]));
        }
        let mut prod: Vec<(usize, i64)> = (0..n).map(|i| (i, 1)).collect();
        prod.push((h, self.b));
        relators.push(Word::from_powers(&prod));
        GroupPresentation::new(names, relators).expect("well-formed Seifert presentation")
    }

    pub fn first_homology(&self) -> FgAbelianGroup {
        cokernel(&self.fundamental_group().abelianization_matrix())
    }

    /// Geometry class, for homology spheres only.
    pub fn geometry_class(&self) -> Result<GeometryClass> {
        self.require_homology_sphere()?;
        let mut orders = self.exceptional_orders();
        orders.sort_unstable();
        let n = orders.len();
        if n <= 2 {
            return Ok(GeometryClass::S3);
        }
        // Σ 1/aᵢ against n − 2: above is spherical, below is the last row.
        let s: BigRational = orders
            .iter()
            .map(|&a| BigRational::new(BigInt::one(), BigInt::from(a)))
            .sum();
        let n2 = BigRational::from_integer(BigInt::from(n as i64 - 2));
        if s > n2 {
            // Among pairwise coprime triples only (2,3,5) qualifies.
            Ok(GeometryClass::SphericalTypeI)
        } else if s < n2 {
            Ok(GeometryClass::BigClass)
        } else {
            Err(Error::NotHomologySphere(
                "Euclidean base orbifold cannot occur for a homology sphere".into(),
            ))
        }
    }

    /// `{"kind":"seifert","b":..,"pairs":[[a,b],..],"orientation":±1}`.
    pub fn to_json(&self) -> Value {
        json!({
            "kind": "seifert",
            "b": self.b,
            "pairs": self.pairs.iter().map(|&(a, b)| [a, b]).collect::<Vec<_>>(),
            "orientation": self.orientation,
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Parse("Seifert description must be an object".into()))?;
        if let Some(k) = obj.get("kind") {
            if k != "seifert" {
                return Err(Error::Parse(format!("expected kind \"seifert\", got {k}")));
            }
        }
        let b = obj
            .get("b")
            .and_then(Value::as_i64)
            .ok_or_else(|| Error::Parse("missing integer field \"b\"".into()))?;
        let pairs: Vec<(i64, i64)> = match obj.get("pairs") {
            None => Vec::new(),
            Some(p) => serde_json::from_value(p.clone())?,
        };
        let orientation = match obj.get("orientation") {
            None => 1,
            Some(o) => match o.as_i64() {
                Some(1) => 1,
                Some(-1) => -1,
                _ => return Err(Error::Parse("orientation must be 1 or -1".into())),
            },
        };
        Self::with_orientation(b, pairs, orientation)
    }
}

impl fmt::Display for SeifertPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.orientation < 0 {
            write!(f, "-")?;
        }
        let pairs: Vec<String> = self
            .pairs
            .iter()
            .map(|(a, b)| format!("({a},{b})"))
            .collect();
        write!(f, "({};{})", self.b, pairs.join(","))
    }
}

fn check_pairwise_coprime(orders: &[i64]) -> Result<()> {
    for (i, &a) in orders.iter().enumerate() {
        if a < 2 {
            return Err(Error::NotHomologySphere(format!(
                "fiber order {a} is not at least 2"
            )));
        }
        for &c in &orders[..i] {
            if a.gcd(&c) != 1 {
                return Err(Error::NotHomologySphere(format!(
                    "fiber orders {c} and {a} are not coprime"
                )));
            }
        }
    }
    Ok(())
}

/// Inverse of `x` modulo `m ≥ 1`, in `[0, m)`.
pub(crate) fn mod_inverse(x: &BigInt, m: &BigInt) -> BigInt {
    let g = x.extended_gcd(m);
    debug_assert!(g.gcd.is_one(), "not invertible");
    g.x.mod_floor(m)
}

fn to_i64(x: &BigInt) -> Result<i64> {
    x.to_i64()
        .ok_or_else(|| Error::PreconditionViolated(format!("{x} exceeds 64-bit range")))
}

/// A homomorphism between Seifert fundamental groups, given by the image
/// word of each source generator in the target generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomomorphismData {
    pub source: SeifertPresentation,
    pub target: SeifertPresentation,
    pub images: Vec<Word>,
}

impl HomomorphismData {
    /// Source relators pushed through the map, as target words.
    pub fn pushed_relators(&self) -> Vec<Word> {
        self.source
            .fundamental_group()
            .relators()
            .iter()
            .map(|r| r.substitute(&self.images))
            .collect()
    }

    /// Every pushed relator vanishes in the target's abelianization.
    pub fn preserves_relators_abelian(&self) -> bool {
        let target = self.target.fundamental_group();
        let m = target.abelianization_matrix();
        self.pushed_relators().iter().all(|w| {
            let v: Vec<BigInt> = (0..target.num_generators())
                .map(|g| BigInt::from(w.exponent_sum(g)))
                .collect();
            in_column_lattice(&m, &v)
        })
    }

    /// `φ*ρ`: composes a target representation with the map.
    pub fn pull_back(&self, rho: &Representation<f64>) -> Result<Representation<f64>> {
        let images = self.images.iter().map(|w| rho.evaluate(w)).collect();
        Representation::new(&self.source.fundamental_group(), images)
    }
}

/// The map `π₁Σ(a₁,…,k·aᵢ,…,aₙ) → π₁Σ(a₁,…,aₙ)` induced by the `k`-fold
/// cover branched over the `i`-th (zero-based) fiber.
///
/// With source presentation `(b; (a_j, b_j), (k aᵢ, bᵢ))` the target is
/// written as `(kb; (a_j, k b_j), (aᵢ, bᵢ))` and the map is `h ↦ h^k`,
/// `x_j ↦ y_j`.
pub fn cover_homomorphism(s: &SeifertPresentation, i: usize, k: i64) -> Result<HomomorphismData> {
    s.require_homology_sphere()?;
    let orders: Vec<i64> = s.pairs.iter().map(|p| p.0).collect();
    if i >= orders.len() {
        return Err(Error::PreconditionViolated(format!(
            "fiber index {i} out of range for {} fibers",
            orders.len()
        )));
    }
    if k < 1 {
        return Err(Error::PreconditionViolated(format!("multiplier {k} must be positive")));
    }
    for (j, &a) in orders.iter().enumerate() {
        if j != i && k.gcd(&a) != 1 {
            return Err(Error::CoprimalityViolation { k, a });
        }
    }
    let mut multiplied = orders.clone();
    multiplied[i] = orders[i]
        .checked_mul(k)
        .ok_or_else(|| Error::PreconditionViolated("fiber order overflow".into()))?;
    let source = SeifertPresentation::brieskorn(&multiplied)?;
    let target_pairs = source
        .pairs
        .iter()
        .enumerate()
        .map(|(j, &(_, bj))| if j == i { (orders[j], bj) } else { (orders[j], k * bj) })
        .collect();
    let target = SeifertPresentation::new(k * source.b, target_pairs)?;
    let n = orders.len();
    let mut images: Vec<Word> = (0..n).map(|j| Word::power(j, 1)).collect();
    images.push(Word::power(n, k));
    Ok(HomomorphismData {
        source,
        target,
        images,
    })
}

/// The pinch map `π₁Σ(a₁,…,aₙ) → π₁Σ(a₁, a₂, p)`, `p = a₃⋯aₙ`.
///
/// The target is `(b; (a₁,b₁), (a₂,b₂), (p,q))` with `q = Σ_{i≥3} p bᵢ/aᵢ`,
/// and `xᵢ ↦ z^{αᵢ} h^{βᵢ}` for `i ≥ 3` where `ηᵢ` is the least positive
/// solution of `ηᵢ p/aᵢ ≡ 1 (mod aᵢ)`, `αᵢ = ηᵢ p/aᵢ`, `βᵢ = (ηᵢ q − bᵢ)/aᵢ`.
pub fn pinch_homomorphism(s: &SeifertPresentation) -> Result<HomomorphismData> {
    let n = s.pairs.len();
    if s.exceptional_fiber_count() < 4 {
        return Err(Error::TooFewFibers(s.exceptional_fiber_count()));
    }
    s.require_homology_sphere()?;
    if n != s.exceptional_fiber_count() {
        return Err(Error::PreconditionViolated(
            "remove unexceptional fibers (see canonical) before pinching".into(),
        ));
    }
    let p: BigInt = s.pairs[2..].iter().map(|x| BigInt::from(x.0)).product();
    let q: BigInt = s.pairs[2..]
        .iter()
        .map(|&(a, bi)| &p / BigInt::from(a) * BigInt::from(bi))
        .sum();
    let target = SeifertPresentation::new(
        s.b,
        vec![s.pairs[0], s.pairs[1], (to_i64(&p)?, to_i64(&q)?)],
    )?;
    // Target generators: y1 = 0, y2 = 1, z = 2, h = 3.
    let mut images = vec![Word::power(0, 1), Word::power(1, 1)];
    for &(a, bi) in &s.pairs[2..] {
        let a_big = BigInt::from(a);
        let cofactor = &p / &a_big;
        let mut eta = mod_inverse(&cofactor.mod_floor(&a_big), &a_big);
        if eta.is_zero() {
            eta = a_big.clone();
        }
        let alpha = &eta * &cofactor;
        let beta_num = &eta * &q - BigInt::from(bi);
        debug_assert!(beta_num.is_multiple_of(&a_big));
        let beta = beta_num / &a_big;
        images.push(Word::from_powers(&[(2, to_i64(&alpha)?), (3, to_i64(&beta)?)]));
    }
    images.push(Word::power(3, 1));
    Ok(HomomorphismData {
        source: s.clone(),
        target,
        images,
    })
}

/// Montesinos knot `M(e; β₁/α₁, …, βₙ/αₙ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MontesinosKnot {
    pub e: i64,
    /// Reduced `(β, α)` with `α ≥ 1`.
    pub tangles: Vec<(i64, i64)>,
    pub mirror: bool,
}

impl MontesinosKnot {
    pub fn new(e: i64, tangles: Vec<(i64, i64)>, mirror: bool) -> Result<Self> {
        let tangles = tangles
            .into_iter()
            .map(|(beta, alpha)| {
                if alpha == 0 {
                    return Err(Error::Parse("tangle denominator is zero".into()));
                }
                let g = beta.gcd(&alpha);
                let s = alpha.signum();
                Ok((s * beta / g, s * alpha / g))
            })
            .collect::<Result<_>>()?;
        Ok(Self { e, tangles, mirror })
    }

    /// `{"kind":"montesinos","e":0,"tangles":["-1/2","1/3","1/7"]}`, with
    /// an optional `"mirror": true`.
    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Parse("Montesinos description must be an object".into()))?;
        if let Some(k) = obj.get("kind") {
            if k != "montesinos" {
                return Err(Error::Parse(format!("expected kind \"montesinos\", got {k}")));
            }
        }
        let e = obj.get("e").map_or(Some(0), Value::as_i64).ok_or_else(|| {
            Error::Parse("field \"e\" must be an integer".into())
        })?;
        let tangles = obj
            .get("tangles")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("missing array field \"tangles\"".into()))?
            .iter()
            .map(parse_fraction)
            .collect::<Result<Vec<_>>>()?;
        let mirror = obj.get("mirror").and_then(Value::as_bool).unwrap_or(false);
        Self::new(e, tangles, mirror)
    }

    pub fn to_json(&self) -> Value {
        let tangles: Vec<String> = self
            .tangles
            .iter()
            .map(|&(b, a)| if a == 1 { b.to_string() } else { format!("{b}/{a}") })
            .collect();
        json!({"kind": "montesinos", "e": self.e, "tangles": tangles, "mirror": self.mirror})
    }
}

/// `"p/q"`, `"p"`, or a JSON integer.
fn parse_fraction(v: &Value) -> Result<(i64, i64)> {
    if let Some(n) = v.as_i64() {
        return Ok((n, 1));
    }
    let s = v
        .as_str()
        .ok_or_else(|| Error::Parse(format!("tangle {v} must be a fraction string")))?;
    let bad = || Error::Parse(format!("bad fraction {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => Ok((
            p.trim().parse().map_err(|_| bad())?,
            q.trim().parse().map_err(|_| bad())?,
        )),
        None => Ok((s.trim().parse().map_err(|_| bad())?, 1)),
    }
}

/// Double branched cover `(−e; (α₁,β₁),…,(αₙ,βₙ))`, orientation `−1` for
/// a mirrored knot.
pub fn montesinos_double_cover(k: &MontesinosKnot) -> SeifertPresentation {
    SeifertPresentation {
        b: -k.e,
        pairs: k.tangles.iter().map(|&(b, a)| (a, b)).collect(),
        orientation: if k.mirror { -1 } else { 1 },
    }
}
