//! Structural parameters that define the extremal classes: pendant count,
//! matching number, domination number, diameter and bipartition sizes.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::{eccentricity_profile, GraphError, Tree, Vertex};

pub fn pendant_count(t: &Tree) -> usize {
    t.vertices().filter(|&v| t.is_leaf(v)).count()
}

/// Maximum matching size of `t - removed` by matching leaves to their
/// parents bottom-up, which is optimal on forests.
fn greedy_matching(t: &Tree, removed: Option<Vertex>) -> usize {
    let root = 0;
    let parent = t.parents_from(root);
    let order = t.bfs_order(root);
    let mut matched = vec![false; t.order()];
    if let Some(x) = removed {
        matched[x] = true;
    }
    let mut size = 0;
    for &v in order.iter().rev() {
        if v == root || matched[v] {
            continue;
        }
        let p = parent[v];
        if !matched[p] {
            matched[v] = true;
            matched[p] = true;
            size += 1;
        }
    }
    size
}

pub fn matching_number(t: &Tree) -> usize {
    greedy_matching(t, None)
}

/// Whether `v` is covered by every maximum matching, i.e. deleting it drops
/// the matching number by one.
pub fn is_perfectly_matched(t: &Tree, v: Vertex) -> Result<bool, GraphError> {
    t.check_vertex(v)?;
    Ok(greedy_matching(t, Some(v)) + 1 == matching_number(t))
}

/// Minimum dominating set size by the three-state tree DP.
pub fn domination_number(t: &Tree) -> usize {
    const INF: usize = usize::MAX / 4;
    let n = t.order();
    if n == 1 {
        return 1;
    }
    let root = 0;
    let parent = t.parents_from(root);
    let order = t.bfs_order(root);
    // in_set: v in D. covered: v not in D, dominated by a child.
    // open: v not in D, not dominated yet (its parent must take it).
    let mut in_set = vec![0usize; n];
    let mut covered = vec![0usize; n];
    let mut open = vec![0usize; n];
    for &v in order.iter().rev() {
        let mut take = 1;
        let mut leave_open = 0;
        let mut base = 0;
        let mut best_switch = INF;
        let mut has_child = false;
        for &c in t.neighbors(v) {
            if c == parent[v] && v != root {
                continue;
            }
            has_child = true;
            take += in_set[c].min(covered[c]).min(open[c]);
            leave_open = (leave_open + covered[c]).min(INF);
            let m = in_set[c].min(covered[c]);
            base += m;
            best_switch = best_switch.min(in_set[c] - m);
        }
        in_set[v] = take;
        open[v] = leave_open;
        covered[v] = if has_child { base + best_switch } else { INF };
    }
    in_set[root].min(covered[root])
}

/// Sizes of the two colour classes, smaller first.
pub fn bipartition_sizes(t: &Tree) -> (usize, usize) {
    let parent = t.parents_from(0);
    let order = t.bfs_order(0);
    let mut color = vec![false; t.order()];
    for &v in order.iter().skip(1) {
        color[v] = !color[parent[v]];
    }
    let q = color.iter().filter(|&&c| c).count();
    let p = t.order() - q;
    (p.min(q), p.max(q))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("bad class spec {spec:?}: {reason}")]
pub struct ParamClassError {
    pub spec: String,
    pub reason: String,
}

/// A tree class selector. String form: `pendants=K`, `matching=B`,
/// `domination=G`, `diameter=D`, `bipartition=P,Q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ParamClass {
    Pendants(usize),
    Matching(usize),
    Domination(usize),
    Diameter(usize),
    /// Unordered: stored with `p <= q`.
    Bipartition(usize, usize),
}

impl ParamClass {
    pub fn bipartition(p: usize, q: usize) -> ParamClass {
        ParamClass::Bipartition(p.min(q), p.max(q))
    }

    pub fn contains(&self, t: &Tree) -> bool {
        match *self {
            ParamClass::Pendants(k) => t.order() >= 2 && pendant_count(t) == k,
            ParamClass::Matching(b) => matching_number(t) == b,
            ParamClass::Domination(g) => domination_number(t) == g,
            ParamClass::Diameter(d) => eccentricity_profile(t).diameter == d,
            ParamClass::Bipartition(p, q) => bipartition_sizes(t) == (p, q),
        }
    }
}

impl fmt::Display for ParamClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamClass::Pendants(k) => write!(f, "pendants={k}"),
            ParamClass::Matching(b) => write!(f, "matching={b}"),
            ParamClass::Domination(g) => write!(f, "domination={g}"),
            ParamClass::Diameter(d) => write!(f, "diameter={d}"),
            ParamClass::Bipartition(p, q) => write!(f, "bipartition={p},{q}"),
        }
    }
}

impl FromStr for ParamClass {
    type Err = ParamClassError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| ParamClassError { spec: s.to_string(), reason: reason.to_string() };
        let (name, args) = s.trim().split_once('=').ok_or_else(|| err("expected NAME=VALUE"))?;
        let nums = args
            .split(',')
            .map(|a| a.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| err("arguments must be non-negative integers"))?;
        let one = || match nums.as_slice() {
            [x] => Ok(*x),
            _ => Err(err("expected exactly one argument")),
        };
        match name.trim().to_ascii_lowercase().as_str() {
            "pendants" => Ok(ParamClass::Pendants(one()?)),
            "matching" => Ok(ParamClass::Matching(one()?)),
            "domination" => Ok(ParamClass::Domination(one()?)),
            "diameter" => Ok(ParamClass::Diameter(one()?)),
            "bipartition" => match nums.as_slice() {
                [p, q] => Ok(ParamClass::bipartition(*p, *q)),
                _ => Err(err("bipartition takes P,Q")),
            },
            _ => Err(err("unknown selector")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tree(n: usize, edges: &[(usize, usize)]) -> Tree {
        Tree::from_edges(n, edges).unwrap()
    }

    fn path(n: usize) -> Tree {
        let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        tree(n, &e)
    }

    fn star(n: usize) -> Tree {
        let e: Vec<_> = (1..n).map(|i| (0, i)).collect();
        tree(n, &e)
    }

    fn t73() -> Tree {
        tree(7, &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 5), (2, 6)])
    }

    #[test]
    fn pendants() {
        assert_eq!(pendant_count(&path(5)), 2);
        assert_eq!(pendant_count(&star(6)), 5);
        assert_eq!(pendant_count(&t73()), 4);
    }

    #[test]
    fn matchings() {
        for n in 2..9 {
            assert_eq!(matching_number(&star(n)), 1);
        }
        assert_eq!(matching_number(&path(5)), 2);
        assert_eq!(matching_number(&t73()), 3);
        assert_eq!(matching_number(&Tree::single_vertex()), 0);
    }

    #[test]
    fn perfectly_matched() {
        assert!(is_perfectly_matched(&path(2), 0).unwrap());
        let s4 = star(4);
        assert!(is_perfectly_matched(&s4, 0).unwrap());
        for leaf in 1..4 {
            assert!(!is_perfectly_matched(&s4, leaf).unwrap());
        }
        assert!(is_perfectly_matched(&s4, 7).is_err());
        // P_5: the two ends and the middle can each be left uncovered.
        let p5 = path(5);
        let got: Vec<bool> = (0..5).map(|v| is_perfectly_matched(&p5, v).unwrap()).collect();
        assert_eq!(got, vec![false, true, false, true, false]);
    }

    #[test]
    fn domination() {
        for n in 2..9 {
            assert_eq!(domination_number(&star(n)), 1);
        }
        assert_eq!(domination_number(&path(6)), 2);
        assert_eq!(domination_number(&path(7)), 3);
        assert_eq!(domination_number(&Tree::single_vertex()), 1);
        assert_eq!(domination_number(&path(2)), 1);
    }

    #[test]
    fn bipartitions() {
        assert_eq!(bipartition_sizes(&path(4)), (2, 2));
        assert_eq!(bipartition_sizes(&star(6)), (1, 5));
        // P_2(2,2): edge 0-1, leaves 2,3 at 0 and 4,5 at 1.
        let ds = tree(6, &[(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)]);
        assert_eq!(bipartition_sizes(&ds), (3, 3));
    }

    #[test]
    fn class_strings() {
        for s in ["pendants=3", "matching=2", "domination=4", "diameter=5", "bipartition=3,4"] {
            assert_eq!(s.parse::<ParamClass>().unwrap().to_string(), s);
        }
        assert_eq!("bipartition=5,2".parse::<ParamClass>().unwrap(), ParamClass::Bipartition(2, 5));
        assert!("pendants".parse::<ParamClass>().is_err());
        assert!("pendants=1,2".parse::<ParamClass>().is_err());
        assert!("girth=3".parse::<ParamClass>().is_err());
        assert!("bipartition=3".parse::<ParamClass>().is_err());
    }

    #[test]
    fn class_membership() {
        assert!(ParamClass::Matching(1).contains(&star(6)));
        assert!(ParamClass::Diameter(4).contains(&path(5)));
        assert!(ParamClass::bipartition(3, 3).contains(&path(6)));
        assert!(!ParamClass::Pendants(3).contains(&path(6)));
    }
}
