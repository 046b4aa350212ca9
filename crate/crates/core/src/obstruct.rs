//! Verdict engine for ribbon rational-homology cobordisms `Y− → Y+`.
//!
//! Every criterion either fires with evidence, passes, or is skipped with the
//! missing data named. A criterion never guesses. `NotObstructed` only means
//! nothing fired.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::abelian::{
    embeds_into, is_perfect_square, order, FgAbelianGroup, GroupOrder, IntMatrix,
};
use crate::geometry::{hierarchy_reachable, lspace_from_geometry, GeometryClass};
use crate::repvar::casson_via_count;
use crate::seifert::{montesinos_double_cover, MontesinosKnot, SeifertPresentation};
use crate::{Error, Result, Tolerances};

/// A Chern–Simons value mod 1.
#[derive(Clone, Debug, PartialEq)]
pub enum CsValue {
    Exact(BigRational),
    Approx(f64),
}

impl CsValue {
    /// `"p/q"`, an integer, or a decimal (string or number).
    pub fn parse(v: &Value) -> Result<Self> {
        let bad = || Error::Parse(format!("bad Chern-Simons value {v}"));
        match v {
            Value::Number(n) => match n.as_i64() {
                Some(k) => Ok(CsValue::Exact(BigRational::from_integer(k.into()))),
                None => n.as_f64().map(CsValue::Approx).ok_or_else(bad),
            },
            Value::String(s) => {
                let s = s.trim();
                if let Some((p, q)) = s.split_once('/') {
                    let p: BigInt = p.trim().parse().map_err(|_| bad())?;
                    let q: BigInt = q.trim().parse().map_err(|_| bad())?;
                    if q.is_zero() {
                        return Err(bad());
                    }
                    Ok(CsValue::Exact(BigRational::new(p, q)))
                } else if let Ok(k) = s.parse::<BigInt>() {
                    Ok(CsValue::Exact(BigRational::from_integer(k)))
                } else {
                    s.parse::<f64>()
                        .ok()
                        .filter(|x| x.is_finite())
                        .map(CsValue::Approx)
                        .ok_or_else(bad)
                }
            }
            _ => Err(bad()),
        }
    }

    /// Representative in `[0, 1)`.
    pub fn reduced(&self) -> CsValue {
        match self {
            CsValue::Exact(r) => CsValue::Exact(r - r.floor()),
            CsValue::Approx(x) => CsValue::Approx(x.rem_euclid(1.0)),
        }
    }

    fn as_f64(&self) -> f64 {
        match self {
            CsValue::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            CsValue::Approx(x) => *x,
        }
    }

    /// Equality mod 1: exact for two rationals, within `tol` otherwise.
    pub fn same_mod_one(&self, other: &CsValue, tol: f64) -> bool {
        match (self.reduced(), other.reduced()) {
            (CsValue::Exact(a), CsValue::Exact(b)) => a == b,
            (a, b) => {
                let d = (a.as_f64() - b.as_f64()).rem_euclid(1.0);
                d.min(1.0 - d) <= tol
            }
        }
    }

    fn to_json(&self) -> Value {
        match self {
            CsValue::Exact(r) if r.denom().is_one() => json!(r.numer().to_string()),
            CsValue::Exact(r) => json!(format!("{}/{}", r.numer(), r.denom())),
            CsValue::Approx(x) => json!(x),
        }
    }
}

impl fmt::Display for CsValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CsValue::Exact(r) => write!(f, "{r}"),
            CsValue::Approx(x) => write!(f, "{x}"),
        }
    }
}

/// Optional data attached to any description.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ManifoldData {
    pub h1: Option<FgAbelianGroup>,
    pub lspace: Option<bool>,
    /// Signed Casson invariant; only `|λ|` is used.
    pub casson: Option<BigRational>,
    pub cs_values: Option<Vec<CsValue>>,
    pub n_fibers: Option<usize>,
    /// `−1` negative-definite, `+1` positive-definite plumbing.
    pub definiteness_sign: Option<i8>,
    pub geometry: Option<GeometryClass>,
    /// Declared a Seifert fibered space.
    pub seifert: Option<bool>,
    /// Declared a connected sum of two rational homology spheres, neither an
    /// L-space.
    pub composite_non_lspace: Option<bool>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ManifoldKind {
    Seifert(SeifertPresentation),
    /// Stands for the double branched cover.
    Montesinos(MontesinosKnot),
    Geometry(GeometryClass),
    Data,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ManifoldDescription {
    pub kind: ManifoldKind,
    pub data: ManifoldData,
}

impl ManifoldDescription {
    pub fn seifert(s: SeifertPresentation) -> Self {
        Self {
            kind: ManifoldKind::Seifert(s),
            data: ManifoldData::default(),
        }
    }

    pub fn geometry(g: GeometryClass) -> Self {
        Self {
            kind: ManifoldKind::Geometry(g),
            data: ManifoldData::default(),
        }
    }

    pub fn montesinos(k: MontesinosKnot) -> Self {
        Self {
            kind: ManifoldKind::Montesinos(k),
            data: ManifoldData::default(),
        }
    }

    pub fn data(data: ManifoldData) -> Self {
        Self {
            kind: ManifoldKind::Data,
            data,
        }
    }

    /// Tagged by `"kind"`: `seifert`, `montesinos`, `geometry` (with
    /// `"class"`), or `data`. Data fields may accompany any kind.
    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Parse("manifold description must be an object".into()))?;
        let kind = obj
            .get("kind")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Parse("missing string field \"kind\"".into()))?;
        let kind = match kind {
            "seifert" => ManifoldKind::Seifert(SeifertPresentation::from_json(v)?),
            "montesinos" => ManifoldKind::Montesinos(MontesinosKnot::from_json(v)?),
            "geometry" => {
                let c = obj
                    .get("class")
                    .and_then(Value::as_str)
                    .ok_or_else(|| Error::Parse("missing string field \"class\"".into()))?;
                ManifoldKind::Geometry(c.parse()?)
            }
            "data" => ManifoldKind::Data,
            other => return Err(Error::Parse(format!("unknown kind {other:?}"))),
        };
        let data = parse_data(obj)?;
        if kind == ManifoldKind::Data && data == ManifoldData::default() {
            return Err(Error::Parse("data description has no fields".into()));
        }
        Ok(Self { kind, data })
    }

    pub fn to_json(&self) -> Value {
        let mut v = match &self.kind {
            ManifoldKind::Seifert(s) => s.to_json(),
            ManifoldKind::Montesinos(k) => k.to_json(),
            ManifoldKind::Geometry(g) => json!({"kind": "geometry", "class": g.name()}),
            ManifoldKind::Data => json!({"kind": "data"}),
        };
        let d = &self.data;
        let obj = v.as_object_mut().expect("object");
        let mut put = |k: &str, x: Option<Value>| {
            if let Some(x) = x {
                obj.insert(k.into(), x);
            }
        };
        put("h1", d.h1.as_ref().map(|g| serde_json::to_value(g).expect("group")));
        put("lspace", d.lspace.map(Value::from));
        put("casson", d.casson.as_ref().map(|r| CsValue::Exact(r.clone()).to_json()));
        put(
            "cs_values",
            d.cs_values
                .as_ref()
                .map(|xs| Value::Array(xs.iter().map(CsValue::to_json).collect())),
        );
        put("n_fibers", d.n_fibers.map(Value::from));
        put("definiteness_sign", d.definiteness_sign.map(Value::from));
        put("geometry", d.geometry.map(|g| Value::from(g.name())));
        put("seifert", d.seifert.map(Value::from));
        put("composite_non_lspace", d.composite_non_lspace.map(Value::from));
        v
    }
}

fn parse_data(obj: &Map<String, Value>) -> Result<ManifoldData> {
    let field = |k: &str| obj.get(k).filter(|v| !v.is_null());
    let boolean = |k: &str| -> Result<Option<bool>> {
        field(k)
            .map(|v| {
                v.as_bool()
                    .ok_or_else(|| Error::Parse(format!("field {k:?} must be a boolean")))
            })
            .transpose()
    };
    let h1 = field("h1")
        .map(|v| {
            serde_json::from_value::<FgAbelianGroup>(v.clone())
                .map_err(|e| Error::Parse(format!("h1: {e}")))
        })
        .transpose()?;
    let casson = field("casson")
        .map(|v| match CsValue::parse(v)? {
            CsValue::Exact(r) => Ok(r),
            CsValue::Approx(_) => Err(Error::Parse("casson must be rational".into())),
        })
        .transpose()?;
    let cs_values = field("cs_values")
        .map(|v| {
            v.as_array()
                .ok_or_else(|| Error::Parse("cs_values must be an array".into()))?
                .iter()
                .map(CsValue::parse)
                .collect::<Result<Vec<_>>>()
        })
        .transpose()?;
    let n_fibers = field("n_fibers")
        .map(|v| {
            v.as_u64()
                .map(|n| n as usize)
                .ok_or_else(|| Error::Parse("n_fibers must be a non-negative integer".into()))
        })
        .transpose()?;
    let definiteness_sign = field("definiteness_sign")
        .map(|v| match v.as_i64() {
            Some(1) => Ok(1),
            Some(-1) => Ok(-1),
            _ => Err(Error::Parse("definiteness_sign must be 1 or -1".into())),
        })
        .transpose()?;
    let geometry = field("geometry")
        .map(|v| {
            v.as_str()
                .ok_or_else(|| Error::Parse("geometry must be a class name".into()))?
                .parse::<GeometryClass>()
        })
        .transpose()?;
    Ok(ManifoldData {
        h1,
        lspace: boolean("lspace")?,
        casson,
        cs_values,
        n_fibers,
        definiteness_sign,
        geometry,
        seifert: boolean("seifert")?,
        composite_non_lspace: boolean("composite_non_lspace")?,
    })
}

#[derive(Clone, Debug, Default)]
pub struct EvaluateOptions {
    pub tolerances: Tolerances,
    /// Read a definiteness sign off Seifert homology spheres: the standard
    /// orientation (`Σ` as a link of singularity, positive Euler number
    /// here) bounds a negative-definite plumbing, the mirror a positive one.
    pub seifert_definiteness: bool,
}

/// Everything known about one side after derivation.
#[derive(Clone, Debug, Default)]
struct Facts {
    h1: Option<FgAbelianGroup>,
    lspace: Option<bool>,
    abs_casson: Option<BigRational>,
    cs_values: Option<Vec<CsValue>>,
    n_fibers: Option<usize>,
    definiteness_sign: Option<i8>,
    geometry: Option<GeometryClass>,
    seifert: bool,
    composite_non_lspace: bool,
}

fn resolve(d: &ManifoldDescription, opts: &EvaluateOptions) -> Facts {
    let data = &d.data;
    let mut f = Facts {
        h1: data.h1.clone(),
        lspace: data.lspace,
        abs_casson: data.casson.as_ref().map(BigRational::abs),
        cs_values: data.cs_values.clone(),
        n_fibers: data.n_fibers,
        definiteness_sign: data.definiteness_sign,
        geometry: data.geometry,
        seifert: data.seifert.unwrap_or(false),
        composite_non_lspace: data.composite_non_lspace.unwrap_or(false),
    };
    let seifert = match &d.kind {
        ManifoldKind::Seifert(s) => Some(s.clone()),
        ManifoldKind::Montesinos(k) => Some(montesinos_double_cover(k)),
        ManifoldKind::Geometry(g) => {
            f.geometry = Some(*g);
            None
        }
        ManifoldKind::Data => None,
    };
    if let Some(s) = seifert {
        f.seifert = true;
        f.h1 = Some(s.first_homology());
        if s.is_homology_sphere() {
            let n = s.exceptional_fiber_count();
            f.n_fibers = Some(n);
            f.geometry = s.geometry_class().ok().or(f.geometry);
            if n <= 3 {
                if let Ok((_, l)) = casson_via_count(&s) {
                    f.abs_casson = Some(l);
                }
            }
            if opts.seifert_definiteness && n >= 3 {
                let e = s.oriented_euler_number();
                f.definiteness_sign = Some(if e.value().is_positive() { -1 } else { 1 });
            }
        }
    }
    if f.lspace.is_none() {
        f.lspace = f.geometry.and_then(lspace_from_geometry);
    }
    f
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Obstructed,
    NotObstructed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiredCriterion {
    pub id: String,
    pub evidence: String,
    pub cite: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkippedCriterion {
    pub id: String,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionReport {
    pub verdict: Verdict,
    pub fired: Vec<FiredCriterion>,
    pub passed: Vec<String>,
    pub skipped: Vec<SkippedCriterion>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

const INCONCLUSIVE: &str =
    "inconclusive: no criterion fired, which does not show that a cobordism exists";

impl ObstructionReport {
    pub fn is_obstructed(&self) -> bool {
        self.verdict == Verdict::Obstructed
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        Ok(serde_json::from_value(v.clone())?)
    }
}

impl fmt::Display for ObstructionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.verdict {
            Verdict::Obstructed => writeln!(f, "verdict: obstructed")?,
            Verdict::NotObstructed => writeln!(f, "verdict: not obstructed")?,
        }
        for c in &self.fired {
            writeln!(f, "  fired   {:<21} {} [{}]", c.id, c.evidence, c.cite)?;
        }
        for id in &self.passed {
            writeln!(f, "  passed  {id}")?;
        }
        for c in &self.skipped {
            writeln!(f, "  skipped {:<21} {}", c.id, c.reason)?;
        }
        if let Some(n) = &self.note {
            writeln!(f, "{n}")?;
        }
        Ok(())
    }
}

enum Outcome {
    Fired(String),
    Passed,
    Skipped(String),
}

use Outcome::{Fired, Passed, Skipped};

struct Criterion {
    id: &'static str,
    cite: &'static str,
    run: fn(&Facts, &Facts, &EvaluateOptions) -> Outcome,
}

/// Sorted by id.
const CRITERIA: [Criterion; 10] = [
    Criterion {
        id: "casson",
        cite: "Casson invariant inequality for Seifert homology spheres",
        run: casson,
    },
    Criterion {
        id: "chern_simons",
        cite: "Chern-Simons invariants of the incoming end form a subset",
        run: chern_simons,
    },
    Criterion {
        id: "composite_to_seifert",
        cite: "no ribbon Z/2-homology cobordism from a sum of non-L-spaces to a Seifert space",
        run: composite_to_seifert,
    },
    Criterion {
        id: "definiteness",
        cite: "both ends bound plumbings of the same definiteness",
        run: definiteness,
    },
    Criterion {
        id: "fiber_count",
        cite: "exceptional fiber count n <= m for Seifert homology spheres",
        run: fiber_count,
    },
    Criterion {
        id: "geometry_hierarchy",
        cite: "geometry hierarchy of ribbon cobordisms",
        run: geometry_hierarchy,
    },
    Criterion {
        id: "h1_embedding",
        cite: "H1 injects into the cobordism, which is a quotient of H1 of the outgoing end",
        run: h1_embedding,
    },
    Criterion {
        id: "h1_rank",
        cite: "rational homology cobordisms preserve b1",
        run: h1_rank,
    },
    Criterion {
        id: "lspace",
        cite: "no ribbon Z/2-homology cobordism from a non-L-space to an L-space",
        run: lspace,
    },
    Criterion {
        id: "square_order",
        cite: "|H1(Y-)| * |H1(Y+)| is a perfect square",
        run: square_order,
    },
];

pub fn criterion_ids() -> Vec<&'static str> {
    CRITERIA.iter().map(|c| c.id).collect()
}

pub fn evaluate(ym: &ManifoldDescription, yp: &ManifoldDescription) -> ObstructionReport {
    evaluate_with(ym, yp, &EvaluateOptions::default())
}

pub fn evaluate_with(
    ym: &ManifoldDescription,
    yp: &ManifoldDescription,
    opts: &EvaluateOptions,
) -> ObstructionReport {
    let (fm, fp) = rayon::join(|| resolve(ym, opts), || resolve(yp, opts));
    let mut fired = Vec::new();
    let mut passed = Vec::new();
    let mut skipped = Vec::new();
    for c in &CRITERIA {
        match (c.run)(&fm, &fp, opts) {
            Fired(evidence) => fired.push(FiredCriterion {
                id: c.id.into(),
                evidence,
                cite: c.cite.into(),
            }),
            Passed => passed.push(c.id.to_string()),
            Skipped(reason) => skipped.push(SkippedCriterion {
                id: c.id.into(),
                reason,
            }),
        }
    }
    let verdict = if fired.is_empty() {
        Verdict::NotObstructed
    } else {
        Verdict::Obstructed
    };
    ObstructionReport {
        verdict,
        note: fired.is_empty().then(|| INCONCLUSIVE.to_string()),
        fired,
        passed,
        skipped,
    }
}

fn both<'a, T>(
    a: &'a Option<T>,
    b: &'a Option<T>,
    what: &str,
) -> std::result::Result<(&'a T, &'a T), Outcome> {
    match (a, b) {
        (Some(x), Some(y)) => Ok((x, y)),
        (None, None) => Err(Skipped(format!("{what} unknown for Y- and Y+"))),
        (None, _) => Err(Skipped(format!("{what} unknown for Y-"))),
        (_, None) => Err(Skipped(format!("{what} unknown for Y+"))),
    }
}

macro_rules! need {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(o) => return o,
        }
    };
}

fn finite_order(g: &FgAbelianGroup) -> Option<BigInt> {
    match order(g) {
        GroupOrder::Finite(n) => Some(n),
        GroupOrder::Infinite => None,
    }
}

/// A ribbon Q-homology cobordism between these ends is automatically a
/// Z/2-homology cobordism.
fn z2_certified(m: &Facts, p: &Facts) -> std::result::Result<String, Outcome> {
    let (hm, hp) = both(&m.h1, &p.h1, "H1")?;
    if hm == hp {
        return Ok(format!("H1(Y-) = H1(Y+) = {hm}"));
    }
    match (finite_order(hm), finite_order(hp)) {
        (Some(_), Some(b)) if b.is_odd() => Ok(format!("|H1(Y+)| = {b} is odd")),
        (Some(_), Some(b)) => Err(Skipped(format!(
            "cannot certify a Z/2-homology cobordism: H1 differ and |H1(Y+)| = {b} is even"
        ))),
        _ => Err(Skipped("not both rational homology spheres".into())),
    }
}

fn h1_rank(m: &Facts, p: &Facts, _: &EvaluateOptions) -> Outcome {
    let (hm, hp) = need!(both(&m.h1, &p.h1, "H1"));
    if hm.free_rank() == hp.free_rank() {
        Passed
    } else {
        Fired(format!("b1(Y-) = {} != b1(Y+) = {}", hm.free_rank(), hp.free_rank()))
    }
}

fn h1_embedding(m: &Facts, p: &Facts, _: &EvaluateOptions) -> Outcome {
    let (hm, hp) = need!(both(&m.h1, &p.h1, "H1"));
    if hm.free_rank() != hp.free_rank() {
        return Skipped("b1 differ; see h1_rank".into());
    }
    let (tm, tp) = (hm.torsion_subgroup(), hp.torsion_subgroup());
    if embeds_into(&tm, &tp) {
        Passed
    } else {
        Fired(format!("torsion {tm} of H1(Y-) does not embed in torsion {tp} of H1(Y+)"))
    }
}

fn square_order(m: &Facts, p: &Facts, _: &EvaluateOptions) -> Outcome {
    let (hm, hp) = need!(both(&m.h1, &p.h1, "H1"));
    let (Some(a), Some(b)) = (finite_order(hm), finite_order(hp)) else {
        return Skipped("H1 infinite".into());
    };
    let prod = &a * &b;
    if is_perfect_square(&prod) {
        Passed
    } else {
        Fired(format!("|H1(Y-)| * |H1(Y+)| = {a} * {b} = {prod} is not a perfect square"))
    }
}

fn geometry_hierarchy(m: &Facts, p: &Facts, _: &EvaluateOptions) -> Outcome {
    let (&gm, &gp) = need!(both(&m.geometry, &p.geometry, "geometry class"));
    match hierarchy_reachable(gm, gp) {
        Ok(true) => Passed,
        Ok(false) => Fired(format!("no arrow path from {gm} to {gp}")),
        Err(e) => Skipped(e.to_string()),
    }
}

fn casson(m: &Facts, p: &Facts, _: &EvaluateOptions) -> Outcome {
    let (lm, lp) = need!(both(&m.abs_casson, &p.abs_casson, "|lambda|"));
    if lm <= lp {
        Passed
    } else {
        Fired(format!("|lambda(Y-)| = {lm} > |lambda(Y+)| = {lp}"))
    }
}

fn definiteness(m: &Facts, p: &Facts, _: &EvaluateOptions) -> Outcome {
    let (&sm, &sp) = need!(both(&m.definiteness_sign, &p.definiteness_sign, "definiteness sign"));
    let word = |s: i8| if s < 0 { "negative" } else { "positive" };
    if sm == sp {
        Passed
    } else {
        Fired(format!(
            "Y- bounds a {}-definite plumbing, Y+ a {}-definite one",
            word(sm),
            word(sp)
        ))
    }
}

fn fiber_count(m: &Facts, p: &Facts, _: &EvaluateOptions) -> Outcome {
    let (&n, &k) = need!(both(&m.n_fibers, &p.n_fibers, "exceptional fiber count"));
    if n <= k {
        Passed
    } else {
        Fired(format!("n={n} > m={k}"))
    }
}

fn lspace(m: &Facts, p: &Facts, _: &EvaluateOptions) -> Outcome {
    let (&lm, &lp) = need!(both(&m.lspace, &p.lspace, "L-space status"));
    if lm || !lp {
        return Passed;
    }
    let why = need!(z2_certified(m, p));
    Fired(format!("Y+ is an L-space and Y- is not; {why}"))
}

fn composite_to_seifert(m: &Facts, p: &Facts, _: &EvaluateOptions) -> Outcome {
    if !m.composite_non_lspace {
        return Skipped("Y- not declared a sum of two non-L-spaces".into());
    }
    if !p.seifert {
        return Skipped("Y+ not known to be Seifert fibered".into());
    }
    let why = need!(z2_certified(m, p));
    Fired(format!(
        "Y- is a sum of two non-L-spaces and Y+ is Seifert fibered; {why}"
    ))
}

fn chern_simons(m: &Facts, p: &Facts, opts: &EvaluateOptions) -> Outcome {
    let (cm, cp) = need!(both(&m.cs_values, &p.cs_values, "Chern-Simons values"));
    let tol = opts.tolerances.chern_simons;
    let missing: Vec<String> = cm
        .iter()
        .filter(|x| !cp.iter().any(|y| x.same_mod_one(y, tol)))
        .map(|x| x.reduced().to_string())
        .collect();
    if missing.is_empty() {
        Passed
    } else {
        Fired(format!(
            "values {{{}}} of Y- are not Chern-Simons values of Y+",
            missing.join(", ")
        ))
    }
}

/// Surgery on a link `L` can only yield the target sum when the linking
/// matrix vanishes.
pub fn linking_matrix_precheck(l: &IntMatrix) -> bool {
    l.is_zero()
}
