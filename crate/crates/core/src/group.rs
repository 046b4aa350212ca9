//! Finitely presented groups, words, and SU(2) representations.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Float, FloatConst};
use serde_json::{json, Map, Value};

use crate::abelian::{cokernel, FgAbelianGroup, IntMatrix};
use crate::su2::{arg, UnitQuaternion};
use crate::{Error, Result};

/// A generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: usize, inverse: bool) -> Self {
        Self { gen, inverse }
    }

    pub fn inv(self) -> Self {
        Self {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }

    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

/// A word in the generators. Not necessarily reduced.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    /// `g^k`, empty for `k = 0`.
    pub fn power(gen: usize, k: i64) -> Self {
        let l = Letter::new(gen, k < 0);
        Self(vec![l; k.unsigned_abs() as usize])
    }

    /// Concatenation of `g₁^{k₁} g₂^{k₂} ⋯`.
    pub fn from_powers(powers: &[(usize, i64)]) -> Self {
        powers
            .iter()
            .fold(Self::empty(), |w, &(g, k)| w * Self::power(g, k))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Free reduction.
    pub fn reduced(&self) -> Self {
        let mut out: Vec<Letter> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Self(out)
    }

    pub fn inverse(&self) -> Self {
        Self(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    /// Signed number of occurrences of `gen`.
    pub fn exponent_sum(&self, gen: usize) -> i64 {
        self.0.iter().filter(|l| l.gen == gen).map(|l| l.sign()).sum()
    }

    /// Image under the homomorphism sending generator `i` to `images[i]`.
    pub fn substitute(&self, images: &[Word]) -> Word {
        let mut out = Vec::new();
        for l in &self.0 {
            let img = &images[l.gen];
            if l.inverse {
                out.extend(img.inverse().0);
            } else {
                out.extend_from_slice(&img.0);
            }
        }
        Word(out).reduced()
    }

    /// Renumbers every generator `g` as `g + offset`.
    pub fn shifted(&self, offset: usize) -> Word {
        Word(
            self.0
                .iter()
                .map(|l| Letter::new(l.gen + offset, l.inverse))
                .collect(),
        )
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|l| l.gen).max()
    }

    /// Letters as strings, `"x"` or `"x^-1"`.
    pub fn to_names(&self, names: &[String]) -> Vec<String> {
        self.0
            .iter()
            .map(|l| {
                if l.inverse {
                    format!("{}^-1", names[l.gen])
                } else {
                    names[l.gen].clone()
                }
            })
            .collect()
    }

    /// Parses letters `"x"`, `"x^-1"` and, more generally, `"x^k"`.
    pub fn from_names<S: AsRef<str>>(letters: &[S], names: &[String]) -> Result<Word> {
        let mut out = Vec::new();
        for s in letters {
            let s = s.as_ref().trim();
            let (name, k) = match s.split_once('^') {
                Some((n, e)) => {
                    let k: i64 = e
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent in letter {s:?}")))?;
                    (n.trim(), k)
                }
                None => (s, 1),
            };
            let gen = names
                .iter()
                .position(|g| g == name)
                .ok_or_else(|| Error::Parse(format!("unknown generator {name:?}")))?;
            out.extend(Word::power(gen, k).0);
        }
        Ok(Word(out))
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        WordDisplay { word: self, names }
    }
}

impl std::ops::Mul for Word {
    type Output = Word;
    fn mul(mut self, rhs: Word) -> Word {
        self.0.extend(rhs.0);
        self
    }
}

struct WordDisplay<'a> {
    word: &'a Word,
    names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "1");
        }
        write!(f, "{}", self.word.to_names(self.names).join(" "))
    }
}

/// `⟨generators | relators⟩`, relators stored freely reduced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

impl GroupPresentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        for (i, g) in generators.iter().enumerate() {
            if g.is_empty() || g.contains('^') || g.contains(char::is_whitespace) {
                return Err(Error::Parse(format!("invalid generator name {g:?}")));
            }
            if generators[..i].contains(g) {
                return Err(Error::Parse(format!("duplicate generator {g:?}")));
            }
        }
        for w in &relators {
            if w.max_generator().is_some_and(|m| m >= generators.len()) {
                return Err(Error::Parse("relator references unknown generator".into()));
            }
        }
        Ok(Self {
            generators,
            relators: relators.iter().map(Word::reduced).collect(),
        })
    }

    /// Free group on the given names.
    pub fn free<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        Self::new(names.into_iter().map(Into::into).collect(), Vec::new())
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn num_relators(&self) -> usize {
        self.relators.len()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    pub fn parse_word<S: AsRef<str>>(&self, letters: &[S]) -> Result<Word> {
        Word::from_names(letters, &self.generators)
    }

    /// Exponent-sum matrix: rows are generators, columns are relators.
    pub fn abelianization_matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.num_generators(), self.num_relators());
        for (j, w) in self.relators.iter().enumerate() {
            for l in w.letters() {
                m[(l.gen, j)] += BigInt::from(l.sign());
            }
        }
        m
    }

    /// `H₁` of the presented group.
    pub fn abelianization(&self) -> FgAbelianGroup {
        cokernel(&self.abelianization_matrix())
    }

    /// Free product; generators of `other` follow those of `self`.
    ///
    /// Clashing names from `other` get primes appended.
    pub fn free_product(&self, other: &GroupPresentation) -> GroupPresentation {
        let mut generators = self.generators.clone();
        for g in &other.generators {
            let mut name = g.clone();
            while generators.contains(&name) {
                name.push('\'');
            }
            generators.push(name);
        }
        let offset = self.num_generators();
        let relators = self
            .relators
            .iter()
            .cloned()
            .chain(other.relators.iter().map(|w| w.shifted(offset)))
            .collect();
        GroupPresentation {
            generators,
            relators,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "generators": self.generators,
            "relators": self
                .relators
                .iter()
                .map(|w| w.to_names(&self.generators))
                .collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Parse("presentation must be an object".into()))?;
        let generators = string_list(obj.get("generators"), "generators")?;
        let relators = match obj.get("relators") {
            None => Vec::new(),
            Some(Value::Array(rs)) => rs
                .iter()
                .map(|r| {
                    let letters = string_list(Some(r), "relator")?;
                    Word::from_names(&letters, &generators)
                })
                .collect::<Result<_>>()?,
            Some(_) => return Err(Error::Parse("relators must be an array".into())),
        };
        Self::new(generators, relators)
    }
}

pub(crate) fn string_list(v: Option<&Value>, what: &str) -> Result<Vec<String>> {
    let arr = v
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse(format!("{what} must be an array of strings")))?;
    arr.iter()
        .map(|x| {
            x.as_str()
                .map(str::to_owned)
                .ok_or_else(|| Error::Parse(format!("{what} must be an array of strings")))
        })
        .collect()
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "< {} | ", self.generators.join(", "))?;
        let rels: Vec<String> = self
            .relators
            .iter()
            .map(|w| w.display(&self.generators).to_string())
            .collect();
        write!(f, "{} >", rels.join(", "))
    }
}

/// An assignment of unit quaternions to the generators of a presentation.
///
/// The residual is the largest `arg` of an evaluated relator, i.e. the
/// angular distance of the relator images from the identity.
#[derive(Clone, Debug, PartialEq)]
pub struct Representation<T> {
    images: Vec<UnitQuaternion<T>>,
    residual: T,
}

impl<T: Float + FloatConst> Representation<T> {
    pub fn new(presentation: &GroupPresentation, images: Vec<UnitQuaternion<T>>) -> Result<Self> {
        if images.len() != presentation.num_generators() {
            return Err(Error::PreconditionViolated(format!(
                "{} images for {} generators",
                images.len(),
                presentation.num_generators()
            )));
        }
        let residual = residual_of(presentation, &images);
        Ok(Self { images, residual })
    }

    pub fn trivial(presentation: &GroupPresentation) -> Self {
        Self {
            images: vec![UnitQuaternion::identity(); presentation.num_generators()],
            residual: T::zero(),
        }
    }

    pub fn images(&self) -> &[UnitQuaternion<T>] {
        &self.images
    }

    pub fn image(&self, gen: usize) -> UnitQuaternion<T> {
        self.images[gen]
    }

    pub fn residual(&self) -> T {
        self.residual
    }

    pub fn is_valid(&self, tolerance: f64) -> bool {
        self.residual.to_f64().is_some_and(|r| r < tolerance)
    }

    pub fn validate(&self, tolerance: f64) -> Result<()> {
        if self.is_valid(tolerance) {
            Ok(())
        } else {
            Err(Error::InvalidRepresentation {
                residual: self.residual.to_f64().unwrap_or(f64::NAN),
                tolerance,
            })
        }
    }

    pub fn evaluate(&self, word: &Word) -> UnitQuaternion<T> {
        evaluate(&self.images, word)
    }

    /// `g ρ g⁻¹`.
    pub fn conjugate(&self, g: UnitQuaternion<T>) -> Self {
        Self {
            images: self.images.iter().map(|q| q.conjugate_by(g)).collect(),
            residual: self.residual,
        }
    }

    /// `ρ ∗ η` on [`GroupPresentation::free_product`].
    pub fn free_product(&self, other: &Self) -> Self {
        Self {
            images: self.images.iter().chain(&other.images).copied().collect(),
            residual: self.residual.max(other.residual),
        }
    }

    /// `{"images": {"x1": [w, x, y, z], ...}, "residual": r}`.
    pub fn to_json(&self, presentation: &GroupPresentation) -> Value {
        let mut images = Map::new();
        for (name, q) in presentation.generators().iter().zip(&self.images) {
            let c: [T; 4] = (*q).into();
            images.insert(
                name.clone(),
                json!(c.map(|x| x.to_f64().unwrap_or(f64::NAN))),
            );
        }
        json!({
            "images": images,
            "residual": self.residual.to_f64().unwrap_or(f64::NAN),
        })
    }

    /// Accepts `{"images": {...}}` keyed by generator name, or a bare
    /// array of quadruples in generator order. The residual is recomputed.
    pub fn from_json(presentation: &GroupPresentation, v: &Value) -> Result<Self> {
        let quad = |x: &Value| -> Result<UnitQuaternion<T>> {
            let a: [f64; 4] = serde_json::from_value(x.clone())?;
            let c = |y: f64| T::from(y).ok_or_else(|| Error::Parse("bad float".into()));
            let q = UnitQuaternion {
                w: c(a[0])?,
                x: c(a[1])?,
                y: c(a[2])?,
                z: c(a[3])?,
            };
            if q.norm_squared() == T::zero() {
                return Err(Error::Parse("zero quaternion".into()));
            }
            Ok(q.normalized())
        };
        let images_v = match v {
            Value::Object(o) if o.contains_key("images") => &o["images"],
            _ => v,
        };
        let images = match images_v {
            Value::Array(a) => a.iter().map(quad).collect::<Result<Vec<_>>>()?,
            Value::Object(o) => presentation
                .generators()
                .iter()
                .map(|g| {
                    o.get(g)
                        .ok_or_else(|| Error::Parse(format!("no image for generator {g:?}")))
                        .and_then(quad)
                })
                .collect::<Result<Vec<_>>>()?,
            _ => return Err(Error::Parse("images must be an object or array".into())),
        };
        Self::new(presentation, images)
    }
}

pub(crate) fn evaluate<T: Float + FloatConst>(
    images: &[UnitQuaternion<T>],
    word: &Word,
) -> UnitQuaternion<T> {
    word.letters()
        .iter()
        .fold(UnitQuaternion::identity(), |acc, l| {
            let q = images[l.gen];
            acc * if l.inverse { q.inverse() } else { q }
        })
}

pub(crate) fn residual_of<T: Float + FloatConst>(
    presentation: &GroupPresentation,
    images: &[UnitQuaternion<T>],
) -> T {
    presentation
        .relators()
        .iter()
        .map(|w| arg(evaluate(images, w).normalized()))
        .fold(T::zero(), T::max)
}
