//! The geometry hierarchy of ribbon rational-homology cobordisms.
//!
//! Closed manifolds and manifolds with toroidal boundary are sorted into
//! classes; an arrow `A → B` means no group-theoretic obstruction is known
//! to a ribbon cobordism from a member of `A` to a member of `B`. A pair of
//! distinct classes with no directed path between them is obstructed.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GeometryClass {
    S3,
    Lens,
    RP3RP3,
    S1S2,
    SphericalSolvable,
    SphericalTypeI,
    Euclidean,
    Nil,
    Sol,
    BigClass,
    S1D2,
    K2I,
    T2I,
    BigClassBoundary,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Figure {
    Closed,
    Boundary,
}

use GeometryClass::*;

/// Closed classes in matrix order.
pub const CLOSED_CLASSES: [GeometryClass; 10] = [
    S3,
    Lens,
    RP3RP3,
    S1S2,
    SphericalSolvable,
    SphericalTypeI,
    Euclidean,
    Nil,
    Sol,
    BigClass,
];

pub const BOUNDARY_CLASSES: [GeometryClass; 4] = [S1D2, K2I, T2I, BigClassBoundary];

const EDGES: [(GeometryClass, GeometryClass); 14] = [
    (S3, Lens),
    (S3, RP3RP3),
    (Lens, SphericalSolvable),
    (SphericalSolvable, Euclidean),
    (SphericalSolvable, SphericalTypeI),
    (SphericalTypeI, BigClass),
    (RP3RP3, Euclidean),
    (S1S2, Euclidean),
    (Euclidean, Nil),
    (Nil, Sol),
    (Sol, BigClass),
    (S1D2, K2I),
    (K2I, BigClassBoundary),
    (T2I, BigClassBoundary),
];

/// Arrows known to be realized by an actual ribbon cobordism.
const REALIZED: [(GeometryClass, GeometryClass); 1] = [(S1D2, K2I)];

impl GeometryClass {
    pub fn figure(self) -> Figure {
        match self {
            S1D2 | K2I | T2I | BigClassBoundary => Figure::Boundary,
            _ => Figure::Closed,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            S3 => "S3",
            Lens => "Lens",
            RP3RP3 => "RP3RP3",
            S1S2 => "S1S2",
            SphericalSolvable => "SphericalSolvable",
            SphericalTypeI => "SphericalTypeI",
            Euclidean => "Euclidean",
            Nil => "Nil",
            Sol => "Sol",
            BigClass => "BigClass",
            S1D2 => "S1D2",
            K2I => "K2I",
            T2I => "T2I",
            BigClassBoundary => "BigClassBoundary",
        }
    }

    /// Direct successors in the hierarchy.
    pub fn successors(self) -> impl Iterator<Item = GeometryClass> {
        EDGES
            .iter()
            .filter(move |(a, _)| *a == self)
            .map(|&(_, b)| b)
    }
}

impl fmt::Display for GeometryClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GeometryClass {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        CLOSED_CLASSES
            .iter()
            .chain(&BOUNDARY_CLASSES)
            .copied()
            .find(|g| g.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown geometry class {s:?}")))
    }
}

/// Whether a directed path (possibly empty) leads from `from` to `to`.
pub fn hierarchy_reachable(from: GeometryClass, to: GeometryClass) -> Result<bool> {
    if from.figure() != to.figure() {
        return Err(Error::MixedFigure(from.to_string(), to.to_string()));
    }
    let mut stack = vec![from];
    let mut seen = vec![from];
    while let Some(g) = stack.pop() {
        if g == to {
            return Ok(true);
        }
        for s in g.successors() {
            if !seen.contains(&s) {
                seen.push(s);
                stack.push(s);
            }
        }
    }
    Ok(false)
}

/// Reachability among [`CLOSED_CLASSES`], row = source.
pub fn closed_reachability_matrix() -> [[bool; 10]; 10] {
    let mut m = [[false; 10]; 10];
    for (i, &a) in CLOSED_CLASSES.iter().enumerate() {
        for (j, &b) in CLOSED_CLASSES.iter().enumerate() {
            m[i][j] = hierarchy_reachable(a, b).expect("same figure");
        }
    }
    m
}

/// One line per source class: the label padded to a fixed width, then the
/// row of `0`/`1` entries.
pub fn render_reachability_matrix() -> String {
    let width = CLOSED_CLASSES.iter().map(|g| g.name().len()).max().unwrap_or(0);
    let mut out = String::new();
    for (g, row) in CLOSED_CLASSES.iter().zip(closed_reachability_matrix()) {
        let bits: Vec<&str> = row.iter().map(|&b| if b { "1" } else { "0" }).collect();
        out.push_str(&format!("{:<width$} {}\n", g.name(), bits.join(" ")));
    }
    out
}

/// L-space status implied by the class alone, for closed classes.
///
/// Every class except the last row consists of L-spaces (among rational
/// homology spheres); the last row carries no information.
pub fn lspace_from_geometry(g: GeometryClass) -> Option<bool> {
    match g {
        BigClass | S1D2 | K2I | T2I | BigClassBoundary => None,
        _ => Some(true),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeStatus {
    /// No directed path: no ribbon rational-homology cobordism exists.
    Obstructed,
    /// An actual ribbon cobordism is known.
    Realizable,
    /// A path exists, so this criterion is silent; nothing is claimed.
    Open,
}

pub fn edge_status(from: GeometryClass, to: GeometryClass) -> Result<EdgeStatus> {
    if REALIZED.contains(&(from, to)) {
        Ok(EdgeStatus::Realizable)
    } else if hierarchy_reachable(from, to)? {
        Ok(EdgeStatus::Open)
    } else {
        Ok(EdgeStatus::Obstructed)
    }
}

/// Every hierarchy arrow with its status.
pub fn remark_witnesses() -> Vec<(GeometryClass, GeometryClass, EdgeStatus)> {
    EDGES
        .iter()
        .map(|&(a, b)| (a, b, edge_status(a, b).expect("edge within one figure")))
        .collect()
}
