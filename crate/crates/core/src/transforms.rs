//! Edge-grafting rewrites.
//!
//! Each rewrite is applied whenever it is structurally legal. Whether the
//! extra eccentricity condition behind the matching inequality held is
//! returned alongside the new tree, so callers can look at both populations.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::{diametral_path, eccentricity_profile, GraphError, Tree, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GraftKind {
    Rho,
    Alpha,
    Theta,
    DiametralShift,
    PendantRegraft,
}

impl GraftKind {
    pub const ALL: [GraftKind; 5] =
        [GraftKind::Rho, GraftKind::Alpha, GraftKind::Theta, GraftKind::DiametralShift, GraftKind::PendantRegraft];

    pub fn name(self) -> &'static str {
        match self {
            GraftKind::Rho => "rho",
            GraftKind::Alpha => "alpha",
            GraftKind::Theta => "theta",
            GraftKind::DiametralShift => "shift",
            GraftKind::PendantRegraft => "regraft",
        }
    }
}

impl fmt::Display for GraftKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GraftKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "rho" => Ok(GraftKind::Rho),
            "alpha" => Ok(GraftKind::Alpha),
            "theta" => Ok(GraftKind::Theta),
            "shift" | "diametral_shift" => Ok(GraftKind::DiametralShift),
            "regraft" | "pendant_regraft" => Ok(GraftKind::PendantRegraft),
            other => Err(format!("unknown transform kind `{other}`")),
        }
    }
}

/// What moved where: branches rooted at `moved` went from `from` to `to`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraftMove {
    pub kind: GraftKind,
    pub from: Vertex,
    pub to: Vertex,
    pub moved: Vec<Vertex>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraftOutcome {
    pub tree: Tree,
    pub graft: GraftMove,
    pub precondition_held: bool,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("vertex {vertex} is not adjacent to {from}")]
    NotAdjacent { from: Vertex, vertex: Vertex },
    #[error("target {to} lies inside the branch rooted at {root}")]
    WouldDisconnect { to: Vertex, root: Vertex },
    #[error("source and target are both {0}")]
    SelfMove(Vertex),
    #[error("no branches to move")]
    NothingToMove,
    #[error("({w}, {v}) is not an edge")]
    MissingCutEdge { w: Vertex, v: Vertex },
    #[error("path from {v1} to {vl} passes through {blocker}, which has degree other than 2")]
    NoCleanInternalPath { v1: Vertex, vl: Vertex, blocker: Vertex },
    #[error("neighbor {vertex} is not a pendant vertex")]
    NonPendantNeighbor { vertex: Vertex },
    #[error("vertex {vertex} has degree {degree}, at least 2 required")]
    DegreeTooSmall { vertex: Vertex, degree: usize },
    #[error("({u}, {v}) is not an edge")]
    MissingEdge { u: Vertex, v: Vertex },
    #[error("every pendant vertex hangs on the diametral path")]
    NoOffPathPendant,
}

fn check(t: &Tree, v: Vertex) -> Result<(), TransformError> {
    t.check_vertex(v).map_err(TransformError::from)
}

/// Detaches each branch rooted at a vertex of `roots` from `from` and hangs it
/// on `to`.
pub fn relocate_branches(t: &Tree, from: Vertex, to: Vertex, roots: &[Vertex]) -> Result<Tree, TransformError> {
    check(t, from)?;
    check(t, to)?;
    if from == to {
        return Err(TransformError::SelfMove(from));
    }
    if roots.is_empty() {
        return Err(TransformError::NothingToMove);
    }
    for &r in roots {
        check(t, r)?;
        if !t.has_edge(from, r) {
            return Err(TransformError::NotAdjacent { from, vertex: r });
        }
        if t.branch(from, r).binary_search(&to).is_ok() {
            return Err(TransformError::WouldDisconnect { to, root: r });
        }
    }
    let remove: Vec<_> = roots.iter().map(|&r| (from, r)).collect();
    let add: Vec<_> = roots.iter().map(|&r| (to, r)).collect();
    Ok(t.rewired(&remove, &add)?)
}

fn sorted(roots: &[Vertex]) -> Vec<Vertex> {
    let mut out = roots.to_vec();
    out.sort_unstable();
    out.dedup();
    out
}

/// Length of the branch at `root` (seen from `from`) if it is a bare path.
fn path_branch_length(t: &Tree, from: Vertex, root: Vertex) -> Option<usize> {
    let (mut prev, mut cur, mut len) = (from, root, 1);
    loop {
        let mut next = t.neighbors(cur).iter().filter(|&&x| x != prev);
        match (next.next(), next.next()) {
            (None, _) => return Some(len),
            (Some(&x), None) => {
                prev = cur;
                cur = x;
                len += 1;
            }
            _ => return None,
        }
    }
}

/// Moves the branches at `branch_roots` from `v` to its neighbor `w`.
///
/// The condition checked: the component of `t - wv` holding `w` has at least
/// two vertices and `w` has eccentricity `k` in it, and whatever stays at `v`
/// besides `w` is a single bare path of length `l` with `k >= l + 1`.
pub fn rho_transform(t: &Tree, w: Vertex, v: Vertex, branch_roots: &[Vertex]) -> Result<GraftOutcome, TransformError> {
    check(t, w)?;
    check(t, v)?;
    if !t.has_edge(w, v) {
        return Err(TransformError::MissingCutEdge { w, v });
    }
    let roots = sorted(branch_roots);
    if roots.contains(&w) {
        return Err(TransformError::WouldDisconnect { to: w, root: w });
    }
    let tree = relocate_branches(t, v, w, &roots)?;
    let k = t.height_avoiding(w, &[v]);
    let retained: Vec<Vertex> = t.neighbors(v).iter().copied().filter(|x| *x != w && !roots.contains(x)).collect();
    let (held, note) = match retained.as_slice() {
        [] => (k >= 1, Some("no path retained at v; condition read as k >= 1".to_string())),
        [r] => match path_branch_length(t, v, *r) {
            Some(l) => (k >= 1 && k > l, None),
            None => (false, Some("retained branch at v is not a bare path".to_string())),
        },
        _ => (false, Some("more than one branch retained at v".to_string())),
    };
    Ok(GraftOutcome {
        tree,
        graft: GraftMove { kind: GraftKind::Rho, from: v, to: w, moved: roots },
        precondition_held: held,
        note,
    })
}

/// Moves branches at `branch_roots` from `vl` back along a bare path to `v1`.
///
/// Held when both ends carry something off the path, every off-path branch at
/// `vl` moves, and the eccentricity of `v1` on its own side is at least that
/// of `vl` on its side.
pub fn alpha_transform(
    t: &Tree,
    v1: Vertex,
    vl: Vertex,
    branch_roots: &[Vertex],
) -> Result<GraftOutcome, TransformError> {
    check(t, v1)?;
    check(t, vl)?;
    if v1 == vl {
        return Err(TransformError::SelfMove(v1));
    }
    let path = t.path_between(v1, vl);
    if let Some(&blocker) = path[1..path.len() - 1].iter().find(|&&x| t.degree(x) != 2) {
        return Err(TransformError::NoCleanInternalPath { v1, vl, blocker });
    }
    let roots = sorted(branch_roots);
    let before_vl = path[path.len() - 2];
    if roots.contains(&before_vl) {
        return Err(TransformError::WouldDisconnect { to: v1, root: before_vl });
    }
    let tree = relocate_branches(t, vl, v1, &roots)?;
    let off_path: Vec<Vertex> = t.neighbors(vl).iter().copied().filter(|&x| x != before_vl).collect();
    let q = t.height_avoiding(v1, &[path[1]]);
    let p = t.height_avoiding(vl, &[before_vl]);
    let held = q >= 1 && p >= 1 && off_path == roots && q >= p;
    let note = (off_path != roots).then(|| "only part of the branches at vl moved".to_string());
    Ok(GraftOutcome {
        tree,
        graft: GraftMove { kind: GraftKind::Alpha, from: vl, to: v1, moved: roots },
        precondition_held: held,
        note,
    })
}

/// Moves all pendant neighbors of `v` (other than `u`) to `w`, where `v-u-w`
/// is a path.
pub fn theta_transform(t: &Tree, v: Vertex, u: Vertex, w: Vertex) -> Result<GraftOutcome, TransformError> {
    for x in [v, u, w] {
        check(t, x)?;
    }
    for (a, b) in [(v, u), (u, w)] {
        if !t.has_edge(a, b) {
            return Err(TransformError::MissingEdge { u: a, v: b });
        }
    }
    if v == w {
        return Err(TransformError::SelfMove(v));
    }
    let moved: Vec<Vertex> = t.neighbors(v).iter().copied().filter(|&z| z != u).collect();
    if let Some(&z) = moved.iter().find(|&&z| t.degree(z) != 1) {
        return Err(TransformError::NonPendantNeighbor { vertex: z });
    }
    if t.degree(w) < 2 {
        return Err(TransformError::DegreeTooSmall { vertex: w, degree: t.degree(w) });
    }
    let tree = relocate_branches(t, v, w, &moved)?;
    let d1 = t.height_avoiding(u, &[v, w]);
    let d2 = t.height_avoiding(w, &[u]);
    Ok(GraftOutcome {
        tree,
        graft: GraftMove { kind: GraftKind::Theta, from: v, to: w, moved },
        precondition_held: d2 >= d1,
        note: None,
    })
}

/// Smallest-id pendant whose support is off the diametral path, with that
/// support and the path.
fn off_path_pendant(t: &Tree) -> Result<(Vertex, Vertex, Vec<Vertex>), TransformError> {
    let path = diametral_path(t);
    let mut on_path = vec![false; t.order()];
    for &x in &path {
        on_path[x] = true;
    }
    t.vertices()
        .filter(|&x| t.degree(x) == 1)
        .map(|x| (x, t.neighbors(x)[0]))
        .find(|&(_, w)| !on_path[w])
        .map(|(x, w)| (x, w, path))
        .ok_or(TransformError::NoOffPathPendant)
}

/// Moves the smallest-id off-path pendant to the vertex just before the
/// middle of the diametral path. The flag is true exactly when the value is
/// expected to change, i.e. when the support and the target have different
/// eccentricities.
pub fn diametral_pendant_shift(t: &Tree) -> Result<(GraftOutcome, bool), TransformError> {
    let (leaf, w, path) = off_path_pendant(t)?;
    let d = path.len() - 1;
    let target = path[if d % 2 == 0 { d / 2 - 1 } else { (d - 1) / 2 - 1 }];
    let tree = relocate_branches(t, w, target, &[leaf])?;
    let ecc = eccentricity_profile(t).ecc;
    let strict = ecc[w] != ecc[target];
    Ok((
        GraftOutcome {
            tree,
            graft: GraftMove { kind: GraftKind::DiametralShift, from: w, to: target, moved: vec![leaf] },
            precondition_held: true,
            note: None,
        },
        strict,
    ))
}

/// Moves every pendant neighbor of the off-path support vertex to `v_1`.
pub fn pendant_regraft(t: &Tree) -> Result<GraftOutcome, TransformError> {
    let (_, w, path) = off_path_pendant(t)?;
    let moved: Vec<Vertex> = t.neighbors(w).iter().copied().filter(|&x| t.degree(x) == 1).collect();
    let tree = relocate_branches(t, w, path[1], &moved)?;
    Ok(GraftOutcome {
        tree,
        graft: GraftMove { kind: GraftKind::PendantRegraft, from: w, to: path[1], moved },
        precondition_held: true,
        note: None,
    })
}

/// Every structurally legal `(w, v, roots)` for [`rho_transform`], in
/// ascending order.
pub fn rho_sites(t: &Tree) -> Vec<(Vertex, Vertex, Vec<Vertex>)> {
    let mut out = Vec::new();
    for (a, b) in t.edges() {
        for (w, v) in [(a, b), (b, a)] {
            let others: Vec<Vertex> = t.neighbors(v).iter().copied().filter(|&x| x != w).collect();
            if others.is_empty() {
                continue;
            }
            out.push((w, v, others.clone()));
            for &r in &others {
                if others.len() > 1 && path_branch_length(t, v, r).is_some() {
                    out.push((w, v, others.iter().copied().filter(|&x| x != r).collect()));
                }
            }
        }
    }
    out
}

/// Every `(v1, vl)` joined by a bare path where `vl` has something to move.
pub fn alpha_sites(t: &Tree) -> Vec<(Vertex, Vertex)> {
    let mut out = Vec::new();
    for v1 in t.vertices() {
        let parent = t.parents_from(v1);
        for vl in t.vertices() {
            if vl == v1 || t.degree(vl) < 2 {
                continue;
            }
            let mut x = parent[vl];
            let mut clean = true;
            while x != v1 {
                if t.degree(x) != 2 {
                    clean = false;
                    break;
                }
                x = parent[x];
            }
            if clean {
                out.push((v1, vl));
            }
        }
    }
    out
}

/// Every `(v, u, w)` accepted by [`theta_transform`].
pub fn theta_sites(t: &Tree) -> Vec<(Vertex, Vertex, Vertex)> {
    let mut out = Vec::new();
    for u in t.vertices() {
        for &v in t.neighbors(u) {
            let w_side: Vec<Vertex> = t.neighbors(v).iter().copied().filter(|&z| z != u).collect();
            if w_side.is_empty() || w_side.iter().any(|&z| t.degree(z) != 1) {
                continue;
            }
            for &w in t.neighbors(u) {
                if w != v && t.degree(w) >= 2 {
                    out.push((v, u, w));
                }
            }
        }
    }
    out
}

/// Applies `alpha_transform` moving every off-path branch at `vl`.
pub fn alpha_full(t: &Tree, v1: Vertex, vl: Vertex) -> Result<GraftOutcome, TransformError> {
    check(t, v1)?;
    check(t, vl)?;
    if v1 == vl {
        return Err(TransformError::SelfMove(v1));
    }
    let path = t.path_between(v1, vl);
    let before = path[path.len() - 2];
    let roots: Vec<Vertex> = t.neighbors(vl).iter().copied().filter(|&x| x != before).collect();
    alpha_transform(t, v1, vl, &roots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::ree;
    use crate::rational::ratio;

    fn tree(n: usize, edges: &[(usize, usize)]) -> Tree {
        Tree::from_edges(n, edges).unwrap()
    }

    fn p(n: usize) -> Tree {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        tree(n, &edges)
    }

    #[test]
    fn relocation() {
        let star = relocate_branches(&p(4), 1, 2, &[0]).unwrap();
        assert_eq!(star.edges(), vec![(0, 2), (1, 2), (2, 3)]);
        let s4 = tree(4, &[(0, 1), (0, 2), (0, 3)]);
        let moved = relocate_branches(&s4, 0, 1, &[2, 3]).unwrap();
        assert_eq!(moved.degree(1), 3);
        let t = relocate_branches(&p(4), 1, 0, &[2]).unwrap();
        assert_eq!(t.edges(), vec![(0, 1), (0, 2), (2, 3)]);
        assert_eq!(relocate_branches(&p(4), 1, 3, &[2]), Err(TransformError::WouldDisconnect { to: 3, root: 2 }));
        assert_eq!(relocate_branches(&p(4), 1, 1, &[2]), Err(TransformError::SelfMove(1)));
        assert_eq!(relocate_branches(&p(4), 0, 2, &[3]), Err(TransformError::NotAdjacent { from: 0, vertex: 3 }));
    }

    #[test]
    fn rho_moves_pendant_to_center() {
        let g = tree(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (1, 5)]);
        let out = rho_transform(&g, 2, 1, &[5]).unwrap();
        assert!(out.precondition_held);
        assert_eq!(ree(&g), ratio(41, 12));
        assert_eq!(ree(&out.tree), ratio(11, 3));
        assert_eq!(out.tree.degree(2), 3);
        assert_eq!(rho_transform(&g, 0, 3, &[4]).unwrap_err(), TransformError::MissingCutEdge { w: 0, v: 3 });
    }

    #[test]
    fn rho_without_retained_path() {
        let g = tree(5, &[(0, 1), (1, 2), (2, 3), (2, 4)]);
        let out = rho_transform(&g, 1, 2, &[3, 4]).unwrap();
        assert!(out.precondition_held);
        assert!(out.note.unwrap().contains("k >= 1"));
    }

    #[test]
    fn alpha_on_p5() {
        let out = alpha_transform(&p(5), 1, 3, &[4]).unwrap();
        assert!(out.precondition_held);
        assert_eq!(out.tree.edges(), vec![(0, 1), (1, 2), (1, 4), (2, 3)]);
        assert_eq!(ree(&p(5)), ratio(17, 6));
        assert_eq!(ree(&out.tree), ratio(7, 2));
        let branched = tree(5, &[(0, 1), (1, 2), (1, 3), (3, 4)]);
        assert!(matches!(
            alpha_transform(&branched, 0, 3, &[4]),
            Err(TransformError::NoCleanInternalPath { blocker: 1, .. })
        ));
    }

    #[test]
    fn alpha_joins_two_stars() {
        let g = tree(7, &[(0, 1), (0, 2), (0, 3), (3, 4), (3, 5), (3, 6)]);
        let out = alpha_full(&g, 0, 3).unwrap();
        assert!(out.precondition_held);
        assert!(ree(&out.tree) > ree(&g));
    }

    #[test]
    fn theta_example() {
        let g = tree(6, &[(0, 1), (0, 2), (0, 3), (3, 4), (4, 5)]);
        let out = theta_transform(&g, 0, 3, 4).unwrap();
        assert_eq!(out.tree.edges(), vec![(0, 3), (1, 4), (2, 4), (3, 4), (4, 5)]);
        assert!(out.precondition_held);
        assert_eq!(ree(&g), ratio(41, 12));
        assert_eq!(ree(&out.tree), ratio(13, 3));
        let short = tree(5, &[(0, 1), (0, 2), (0, 3), (3, 4)]);
        assert_eq!(
            theta_transform(&short, 0, 3, 4).unwrap_err(),
            TransformError::DegreeTooSmall { vertex: 4, degree: 1 }
        );
        assert_eq!(theta_transform(&g, 3, 4, 5).unwrap_err(), TransformError::NonPendantNeighbor { vertex: 0 });
        assert_eq!(theta_transform(&g, 0, 4, 5).unwrap_err(), TransformError::MissingEdge { u: 0, v: 4 });
    }

    #[test]
    fn shift_equal_case() {
        let g = tree(7, &[(0, 1), (1, 2), (2, 3), (3, 4), (2, 5), (5, 6)]);
        let (out, strict) = diametral_pendant_shift(&g).unwrap();
        assert!(!strict);
        assert_eq!(out.graft.to, 1);
        assert_eq!(ree(&out.tree), ree(&g));
    }

    #[test]
    fn shift_strict_case() {
        let g = tree(9, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7), (7, 8)]);
        let (out, strict) = diametral_pendant_shift(&g).unwrap();
        assert!(strict);
        assert_eq!(out.graft.to, 2);
        assert!(ree(&out.tree) > ree(&g));
        let s5 = tree(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]);
        assert_eq!(diametral_pendant_shift(&s5).unwrap_err(), TransformError::NoOffPathPendant);
    }

    #[test]
    fn regraft_moves_all_pendants() {
        let g = tree(8, &[(0, 1), (1, 2), (2, 3), (3, 4), (2, 5), (5, 6), (5, 7)]);
        let out = pendant_regraft(&g).unwrap();
        assert_eq!(out.graft.to, 1);
        assert_eq!(out.graft.moved, vec![6, 7]);
        assert!(ree(&out.tree) <= ree(&g));
        assert_eq!(pendant_regraft(&p(4)).unwrap_err(), TransformError::NoOffPathPendant);
    }

    #[test]
    fn sites_are_accepted() {
        let g = tree(9, &[(0, 1), (1, 2), (2, 3), (3, 4), (2, 5), (5, 6), (5, 7), (4, 8)]);
        for (w, v, roots) in rho_sites(&g) {
            assert!(rho_transform(&g, w, v, &roots).is_ok());
        }
        for (v1, vl) in alpha_sites(&g) {
            assert!(alpha_full(&g, v1, vl).is_ok());
        }
        for (v, u, w) in theta_sites(&g) {
            assert!(theta_transform(&g, v, u, w).is_ok());
        }
        assert!(!theta_sites(&g).is_empty());
    }
}
