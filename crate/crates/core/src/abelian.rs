//! Finitely generated abelian groups over arbitrary-precision integers.
//!
//! Groups are presented by integer matrices whose rows are generators and
//! whose columns are relations. [`smith_normal_form`] diagonalises such a
//! matrix with unimodular transforms, from which [`cokernel`] reads off the
//! canonical invariant factors.
//!
//! For finite abelian groups, `H` is a quotient of `G` exactly when `H` is
//! isomorphic to a subgroup of `G` (Pontryagin duality: quotients of `G`
//! are dual to subgroups of the dual group, and a finite abelian group is
//! isomorphic to its dual). The H₁-level obstruction "H₁(Y₋) embeds in a
//! quotient of H₁(Y₊)" therefore reduces to [`embeds_into`].

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

/// Dense row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows; all rows must have the same length.
    ///
    /// An empty `rows` gives a `0 × cols` matrix, so the column count is
    /// passed explicitly.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>], cols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged row {i}");
            for (j, x) in row.iter().enumerate() {
                m[(i, j)] = x.clone().into();
            }
        }
        m
    }

    /// Convenience constructor for small literal matrices.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let owned: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
        Self::from_rows(&owned, cols)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        out
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.to_rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(i) => {
                        m.swap(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = v / &prev;
                }
            }
            prev = m[k][k].clone();
        }
        sign * &m[n - 1][n - 1]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += c * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, c: &BigInt) {
        for j in 0..self.cols {
            let v = c * &self[(src, j)];
            self[(dst, j)] += v;
        }
    }

    /// col[dst] += c * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, c: &BigInt) {
        for i in 0..self.rows {
            let v = c * &self[(i, src)];
            self[(i, dst)] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Integers that fit in `i64` are written as JSON numbers, larger ones as
/// decimal strings.
pub(crate) fn bigint_to_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(x.to_string()),
    }
}

pub(crate) fn bigint_from_json(v: &Value) -> Result<BigInt, String> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .or_else(|| n.as_u64().map(BigInt::from))
            .ok_or_else(|| format!("not an integer: {n}")),
        Value::String(s) => s
            .trim()
            .parse::<BigInt>()
            .map_err(|e| format!("bad integer {s:?}: {e}")),
        other => Err(format!("expected integer, got {other}")),
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let entries: Vec<Value> = (0..self.rows)
            .map(|i| Value::Array(self.row(i).iter().map(bigint_to_json).collect()))
            .collect();
        serde_json::json!({
            "rows": self.rows,
            "cols": self.cols,
            "entries": entries,
        })
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        IntMatrix::from_json_value(&v).map_err(D::Error::custom)
    }
}

impl IntMatrix {
    /// Accepts the object form `{"rows","cols","entries"}` or a bare array
    /// of rows.
    pub fn from_json_value(v: &Value) -> Result<Self, String> {
        let (rows_v, declared) = match v {
            Value::Array(rows) => (rows.clone(), None),
            Value::Object(obj) => {
                let r = obj
                    .get("rows")
                    .and_then(Value::as_u64)
                    .ok_or("missing \"rows\"")? as usize;
                let c = obj
                    .get("cols")
                    .and_then(Value::as_u64)
                    .ok_or("missing \"cols\"")? as usize;
                let e = obj
                    .get("entries")
                    .and_then(Value::as_array)
                    .ok_or("missing \"entries\"")?;
                (e.clone(), Some((r, c)))
            }
            _ => return Err("expected matrix object or array".into()),
        };
        let mut parsed = Vec::with_capacity(rows_v.len());
        for row in &rows_v {
            let row = row.as_array().ok_or("matrix row is not an array")?;
            parsed.push(
                row.iter()
                    .map(bigint_from_json)
                    .collect::<Result<Vec<_>, _>>()?,
            );
        }
        let (rows, cols) = match declared {
            Some((r, c)) => {
                // A 0-column matrix may be written with empty rows or none.
                if c == 0 && parsed.is_empty() {
                    parsed = vec![Vec::new(); r];
                }
                (r, c)
            }
            None => (parsed.len(), parsed.first().map_or(0, Vec::len)),
        };
        if parsed.len() != rows || parsed.iter().any(|r| r.len() != cols) {
            return Err(format!("entries do not form a {rows}x{cols} matrix"));
        }
        Ok(IntMatrix::from_rows(&parsed, cols))
    }
}

/// `U · A · V = S` with `U`, `V` unimodular and `S` diagonal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SnfDecomposition {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
}

impl SnfDecomposition {
    /// Diagonal entries of `S`, `min(rows, cols)` of them.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows.min(self.s.cols))
            .map(|i| self.s[(i, i)].clone())
            .collect()
    }
}

/// Smith normal form with deterministic pivoting.
///
/// The pivot is always the nonzero entry of least absolute value in the
/// remaining block, ties broken by row-major position. Diagonal entries
/// are non-negative, satisfy `d_i | d_{i+1}`, and zeros come last.
pub fn smith_normal_form(a: &IntMatrix) -> SnfDecomposition {
    let (m, n) = (a.rows, a.cols);
    let mut s = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);

    for k in 0..m.min(n) {
        loop {
            let Some((pi, pj)) = smallest_pivot(&s, k) else {
                return finish(u, s, v);
            };
            s.swap_rows(k, pi);
            u.swap_rows(k, pi);
            s.swap_cols(k, pj);
            v.swap_cols(k, pj);

            let mut dirty = false;
            for i in k + 1..m {
                if s[(i, k)].is_zero() {
                    continue;
                }
                let q = -(&s[(i, k)] / &s[(k, k)]);
                s.add_row_multiple(i, k, &q);
                u.add_row_multiple(i, k, &q);
                dirty |= !s[(i, k)].is_zero();
            }
            for j in k + 1..n {
                if s[(k, j)].is_zero() {
                    continue;
                }
                let q = -(&s[(k, j)] / &s[(k, k)]);
                s.add_col_multiple(j, k, &q);
                v.add_col_multiple(j, k, &q);
                dirty |= !s[(k, j)].is_zero();
            }
            if dirty {
                continue;
            }

            // Block is now diag(p, rest); enforce p | rest.
            let p = s[(k, k)].clone();
            let offender = (k + 1..m)
                .flat_map(|i| (k + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !s[(i, j)].is_multiple_of(&p));
            match offender {
                Some((i, _)) => {
                    s.add_row_multiple(k, i, &BigInt::one());
                    u.add_row_multiple(k, i, &BigInt::one());
                }
                None => break,
            }
        }
    }
    finish(u, s, v)
}

fn smallest_pivot(s: &IntMatrix, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for i in k..s.rows {
        for j in k..s.cols {
            let x = &s[(i, j)];
            if x.is_zero() {
                continue;
            }
            let ax = x.abs();
            if best.as_ref().is_none_or(|(_, b)| ax < *b) {
                best = Some(((i, j), ax));
            }
        }
    }
    best.map(|(pos, _)| pos)
}

fn finish(mut u: IntMatrix, mut s: IntMatrix, v: IntMatrix) -> SnfDecomposition {
    for k in 0..s.rows.min(s.cols) {
        if s[(k, k)].is_negative() {
            s.negate_row(k);
            u.negate_row(k);
        }
    }
    SnfDecomposition { u, s, v }
}

/// Order of a finitely generated abelian group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupOrder {
    Finite(BigInt),
    Infinite,
}

impl fmt::Display for GroupOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupOrder::Finite(n) => write!(f, "{n}"),
            GroupOrder::Infinite => write!(f, "infinite"),
        }
    }
}

/// `Z^free_rank ⊕ Z/d₁ ⊕ … ⊕ Z/d_k` with `d₁ | d₂ | … | d_k`, all `d_i ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FgAbelianGroup {
    free_rank: usize,
    torsion: Vec<BigInt>,
}

impl FgAbelianGroup {
    pub fn trivial() -> Self {
        Self {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        Self {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn cyclic(n: impl Into<BigInt>) -> Self {
        Self::from_cyclic_factors(0, [n.into()])
    }

    /// Canonical form of `Z^free_rank ⊕ ⊕ Z/n_i` for arbitrary orders
    /// `n_i` (zeros count as free factors, units are dropped).
    pub fn from_cyclic_factors<I>(free_rank: usize, orders: I) -> Self
    where
        I: IntoIterator,
        I::Item: Into<BigInt>,
    {
        let mut free_rank = free_rank;
        let mut primary: BTreeMap<BigInt, Vec<u32>> = BTreeMap::new();
        for n in orders {
            let n = n.into().abs();
            if n.is_zero() {
                free_rank += 1;
                continue;
            }
            for (p, e) in factorize(&n) {
                primary.entry(p).or_default().push(e);
            }
        }
        Self {
            free_rank,
            torsion: invariant_factors(primary),
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Torsion subgroup as a group in its own right.
    pub fn torsion_subgroup(&self) -> Self {
        Self {
            free_rank: 0,
            torsion: self.torsion.clone(),
        }
    }

    /// prime → p-exponents of the cyclic primary factors, sorted descending.
    fn primary_parts(&self) -> BTreeMap<BigInt, Vec<u32>> {
        let mut parts: BTreeMap<BigInt, Vec<u32>> = BTreeMap::new();
        for d in &self.torsion {
            for (p, e) in factorize(d) {
                parts.entry(p).or_default().push(e);
            }
        }
        for exps in parts.values_mut() {
            exps.sort_unstable_by(|a, b| b.cmp(a));
        }
        parts
    }
}

impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        write!(f, "{}", parts.join(" + "))
    }
}

impl Serialize for FgAbelianGroup {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let torsion: Vec<Value> = self.torsion.iter().map(bigint_to_json).collect();
        serde_json::json!({ "free_rank": self.free_rank, "torsion": torsion }).serialize(s)
    }
}

impl<'de> Deserialize<'de> for FgAbelianGroup {
    /// Non-canonical torsion lists such as `[2, 3]` are canonicalised.
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        let obj = v
            .as_object()
            .ok_or_else(|| D::Error::custom("expected abelian group object"))?;
        let free_rank = obj.get("free_rank").map_or(Ok(0), |r| {
            r.as_u64()
                .map(|r| r as usize)
                .ok_or_else(|| D::Error::custom("free_rank must be a non-negative integer"))
        })?;
        let torsion = match obj.get("torsion") {
            None => Vec::new(),
            Some(Value::Array(xs)) => xs
                .iter()
                .map(bigint_from_json)
                .collect::<Result<Vec<_>, _>>()
                .map_err(D::Error::custom)?,
            Some(_) => return Err(D::Error::custom("torsion must be an array")),
        };
        if let Some(bad) = torsion.iter().find(|d| d.is_zero()) {
            return Err(D::Error::custom(format!("torsion entry {bad} is not positive")));
        }
        Ok(FgAbelianGroup::from_cyclic_factors(free_rank, torsion))
    }
}

/// Group presented by rows-as-generators and columns-as-relations.
pub fn cokernel(a: &IntMatrix) -> FgAbelianGroup {
    let snf = smith_normal_form(a);
    let diag = snf.diagonal();
    let nonzero = diag.iter().filter(|d| !d.is_zero()).count();
    let free_rank = a.rows - nonzero;
    FgAbelianGroup::from_cyclic_factors(free_rank, diag.into_iter().filter(|d| !d.is_zero()))
}

/// Whether `v` lies in the lattice spanned by the columns of `a`, i.e.
/// represents zero in [`cokernel`]`(a)`.
pub fn in_column_lattice(a: &IntMatrix, v: &[BigInt]) -> bool {
    assert_eq!(v.len(), a.rows, "vector length must match row count");
    let snf = smith_normal_form(a);
    let diag = snf.diagonal();
    (0..a.rows).all(|i| {
        let uv: BigInt = (0..a.rows).map(|k| &snf.u[(i, k)] * &v[k]).sum();
        match diag.get(i) {
            Some(d) if !d.is_zero() => uv.is_multiple_of(d),
            _ => uv.is_zero(),
        }
    })
}

pub fn order(g: &FgAbelianGroup) -> GroupOrder {
    if g.free_rank > 0 {
        GroupOrder::Infinite
    } else {
        GroupOrder::Finite(g.torsion.iter().product())
    }
}

/// Whether `h` is isomorphic to a subgroup of `g`.
///
/// Free ranks must satisfy `rank h ≤ rank g`; for each prime the sorted
/// p-exponents of `h` must be dominated componentwise by those of `g`.
pub fn embeds_into(h: &FgAbelianGroup, g: &FgAbelianGroup) -> bool {
    if h.free_rank > g.free_rank {
        return false;
    }
    let gp = g.primary_parts();
    h.primary_parts().iter().all(|(p, he)| match gp.get(p) {
        None => false,
        Some(ge) => he.len() <= ge.len() && he.iter().zip(ge).all(|(a, b)| a <= b),
    })
}

/// True ("obstructed") iff `|Gm| · |Gp|` is not a perfect square.
pub fn square_order_obstruction(
    gm: &FgAbelianGroup,
    gp: &FgAbelianGroup,
) -> crate::Result<bool> {
    match (order(gm), order(gp)) {
        (GroupOrder::Finite(a), GroupOrder::Finite(b)) => Ok(!is_perfect_square(&(a * b))),
        _ => Err(crate::Error::InfiniteOrder),
    }
}

/// Isomorphic first homology upgrades a ribbon Q-homology cobordism to a
/// Z-homology cobordism.
pub fn zhc_upgrade(gm: &FgAbelianGroup, gp: &FgAbelianGroup) -> bool {
    gm == gp
}

pub fn is_perfect_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &(&r * &r) == n
}

/// Prime factorisation by trial division, primes ascending.
pub(crate) fn factorize(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut n = n.abs();
    let mut out = Vec::new();
    if n <= BigInt::one() {
        return out;
    }
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        let mut e = 0;
        while n.is_multiple_of(&p) {
            n /= &p;
            e += 1;
        }
        if e > 0 {
            out.push((p.clone(), e));
        }
        p += if p == BigInt::from(2) { 1 } else { 2 };
    }
    if n > BigInt::one() {
        out.push((n, 1));
    }
    out
}

/// Rebuild `d₁ | … | d_k` from prime-power exponents.
fn invariant_factors(mut primary: BTreeMap<BigInt, Vec<u32>>) -> Vec<BigInt> {
    for exps in primary.values_mut() {
        exps.sort_unstable_by(|a, b| b.cmp(a));
    }
    let len = primary.values().map(Vec::len).max().unwrap_or(0);
    // Largest invariant factor collects the largest power of each prime.
    let mut factors: Vec<BigInt> = (0..len)
        .map(|i| {
            primary
                .iter()
                .filter_map(|(p, exps)| exps.get(i).map(|&e| num_traits::pow(p.clone(), e as usize)))
                .product()
        })
        .collect();
    factors.reverse();
    factors
}
