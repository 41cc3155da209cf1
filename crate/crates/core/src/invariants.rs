//! Exact distance- and eccentricity-based invariants.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use thiserror::Error;

use crate::graph::{distance_matrix, eccentricity_profile, Tree};
use crate::rational::ExactRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("{kind} is undefined on a single vertex (eccentricity 0)")]
    SingleVertexUndefined { kind: InvariantKind },
    #[error("unknown invariant kind {0:?}")]
    UnknownKind(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum InvariantKind {
    /// Sum over edges `uv` of `1/ecc(u) + 1/ecc(v)`.
    ReeEdge,
    /// Sum over vertices of `deg(v)/ecc(v)`.
    ReeVertex,
    /// Sum over edges `uv` of `ecc(u) + ecc(v)`.
    EccConnectivityEdge,
    /// Sum over vertices of `deg(v)·ecc(v)`.
    EccConnectivityVertex,
    Wiener,
    Harary,
    AvgEccentricity,
    /// Sum over unordered pairs of `(ecc(u) + ecc(v))·d(u, v)`.
    EccDistanceSum,
}

impl InvariantKind {
    pub const ALL: [InvariantKind; 8] = [
        InvariantKind::ReeEdge,
        InvariantKind::ReeVertex,
        InvariantKind::EccConnectivityEdge,
        InvariantKind::EccConnectivityVertex,
        InvariantKind::Wiener,
        InvariantKind::Harary,
        InvariantKind::AvgEccentricity,
        InvariantKind::EccDistanceSum,
    ];

    pub fn name(self) -> &'static str {
        match self {
            InvariantKind::ReeEdge => "REE_EDGE",
            InvariantKind::ReeVertex => "REE_VERTEX",
            InvariantKind::EccConnectivityEdge => "ECC_CONNECTIVITY_EDGE",
            InvariantKind::EccConnectivityVertex => "ECC_CONNECTIVITY_VERTEX",
            InvariantKind::Wiener => "WIENER",
            InvariantKind::Harary => "HARARY",
            InvariantKind::AvgEccentricity => "AVG_ECCENTRICITY",
            InvariantKind::EccDistanceSum => "ECC_DISTANCE_SUM",
        }
    }

    /// Kinds that divide by an eccentricity or a vertex count and so need
    /// `n >= 2`.
    pub fn needs_two_vertices(self) -> bool {
        matches!(
            self,
            InvariantKind::ReeEdge | InvariantKind::ReeVertex | InvariantKind::Harary | InvariantKind::AvgEccentricity
        )
    }

    fn needs_distances(self) -> bool {
        matches!(self, InvariantKind::Wiener | InvariantKind::Harary | InvariantKind::EccDistanceSum)
    }
}

impl fmt::Display for InvariantKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for InvariantKind {
    type Err = InvariantError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        InvariantKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| InvariantError::UnknownKind(s.to_string()))
    }
}

fn int(x: usize) -> BigInt {
    BigInt::from(x)
}

fn frac(p: usize, q: usize) -> ExactRational {
    ExactRational::new(int(p), int(q))
}

/// Sum of `deg(v)/ecc(v)` grouped by eccentricity: one division per distinct
/// eccentricity value.
fn ree_vertex_form(t: &Tree, ecc: &[usize]) -> ExactRational {
    let mut by_ecc: BTreeMap<usize, usize> = BTreeMap::new();
    for v in t.vertices() {
        *by_ecc.entry(ecc[v]).or_default() += t.degree(v);
    }
    by_ecc.into_iter().map(|(e, d)| frac(d, e)).sum()
}

fn ree_edge_form(t: &Tree, ecc: &[usize]) -> ExactRational {
    t.edges().into_iter().map(|(u, v)| frac(1, ecc[u]) + frac(1, ecc[v])).sum()
}

/// Total reciprocal edge-eccentricity, vertex form. Panics on `n = 1`; use
/// [`compute_invariant`] for a checked call.
pub fn ree(t: &Tree) -> ExactRational {
    assert!(t.order() >= 2, "REE is undefined on a single vertex");
    let profile = eccentricity_profile(t);
    ree_vertex_form(t, &profile.ecc)
}

struct Shared<'a> {
    t: &'a Tree,
    ecc: Vec<usize>,
    dist: Option<Vec<Vec<usize>>>,
}

impl Shared<'_> {
    fn eval(&self, kind: InvariantKind) -> ExactRational {
        let t = self.t;
        let ecc = &self.ecc;
        let pairs = || {
            let dist = self.dist.as_ref().expect("distances computed for pairwise kinds");
            t.vertices().flat_map(move |u| ((u + 1)..t.order()).map(move |v| (u, v, dist[u][v])))
        };
        match kind {
            InvariantKind::ReeEdge => ree_edge_form(t, ecc),
            InvariantKind::ReeVertex => ree_vertex_form(t, ecc),
            InvariantKind::EccConnectivityEdge => {
                ExactRational::from_integer(t.edges().into_iter().map(|(u, v)| int(ecc[u] + ecc[v])).sum())
            }
            InvariantKind::EccConnectivityVertex => {
                ExactRational::from_integer(t.vertices().map(|v| int(t.degree(v) * ecc[v])).sum())
            }
            InvariantKind::Wiener => ExactRational::from_integer(pairs().map(|(_, _, d)| int(d)).sum()),
            InvariantKind::Harary => pairs().map(|(_, _, d)| frac(1, d)).sum(),
            InvariantKind::AvgEccentricity => frac(ecc.iter().sum(), t.order()),
            InvariantKind::EccDistanceSum => {
                ExactRational::from_integer(pairs().map(|(u, v, d)| int((ecc[u] + ecc[v]) * d)).sum())
            }
        }
    }
}

pub fn compute_invariant(t: &Tree, kind: InvariantKind) -> Result<ExactRational, InvariantError> {
    if t.order() < 2 && kind.needs_two_vertices() {
        return Err(InvariantError::SingleVertexUndefined { kind });
    }
    let shared =
        Shared { t, ecc: eccentricity_profile(t).ecc, dist: kind.needs_distances().then(|| distance_matrix(t)) };
    Ok(shared.eval(kind))
}

/// Every kind, sharing one eccentricity and one distance computation.
pub fn all_invariants(t: &Tree) -> Result<BTreeMap<InvariantKind, ExactRational>, InvariantError> {
    if t.order() < 2 {
        return Err(InvariantError::SingleVertexUndefined { kind: InvariantKind::ReeEdge });
    }
    let shared = Shared { t, ecc: eccentricity_profile(t).ecc, dist: Some(distance_matrix(t)) };
    Ok(InvariantKind::ALL.into_iter().map(|k| (k, shared.eval(k))).collect())
}
