//! Canonical codes, isomorphism testing and isomorph-free generation of
//! free trees.
//!
//! Generation walks canonical level sequences in the order of Wright,
//! Richmond, Odlyzko and McKay: each step is a constant-amortized successor
//! on the previous sequence, so a stream needs O(n) memory and can be
//! restarted from any sequence it has produced.

use std::fmt;

use thiserror::Error;

use crate::graph::{eccentricity_profile, Tree, Vertex};
use crate::parameters::ParamClass;

/// Default largest order the generator accepts.
pub const DEFAULT_MAX_N: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumError {
    #[error("n = {n} exceeds the configured maximum {max}")]
    NTooLarge { n: usize, max: usize },
    #[error("n must be at least 1")]
    NTooSmall,
    #[error("level sequence {0:?} is not a canonical free-tree sequence")]
    BadLevelSequence(Vec<usize>),
    #[error("Prüfer sequence for n = {n} must have length {expected}, found {found}")]
    BadPrufer { n: usize, expected: usize, found: usize },
}

/// Labeling-invariant encoding of a tree's isomorphism class.
///
/// A rooted subtree encodes as `1, children..., 0` with child encodings sorted;
/// the tree is rooted at its centre. Bicentral trees encode both halves
/// (split at the central edge) in sorted order behind a distinct tag byte.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode(Vec<u8>);

const UNICENTRAL: u8 = 2;
const BICENTRAL: u8 = 3;

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        hex::encode(&self.0)
    }

    pub fn from_hex(s: &str) -> Option<CanonicalCode> {
        hex::decode(s).ok().map(CanonicalCode)
    }
}

impl fmt::Debug for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalCode({})", self.to_hex())
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

fn rooted_code(t: &Tree, root: Vertex, blocked: Vertex) -> Vec<u8> {
    // Iterative post-order to stay clear of deep recursion on long paths.
    let n = t.order();
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut stack = vec![root];
    parent[root] = blocked;
    while let Some(u) = stack.pop() {
        order.push(u);
        for &v in t.neighbors(u) {
            if v != parent[u] && v != blocked {
                parent[v] = u;
                stack.push(v);
            }
        }
    }
    let mut codes: Vec<Vec<u8>> = vec![Vec::new(); n];
    let mut children: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    for &u in order.iter().skip(1) {
        children[parent[u]].push(u);
    }
    for &u in order.iter().rev() {
        let mut kids: Vec<Vec<u8>> = children[u].iter().map(|&c| std::mem::take(&mut codes[c])).collect();
        kids.sort_unstable();
        let mut code = Vec::with_capacity(2 + kids.iter().map(Vec::len).sum::<usize>());
        code.push(1);
        for k in kids {
            code.extend(k);
        }
        code.push(0);
        codes[u] = code;
    }
    std::mem::take(&mut codes[root])
}

pub fn canonical_code(t: &Tree) -> CanonicalCode {
    let centers = eccentricity_profile(t).centers;
    match centers.as_slice() {
        [c] => {
            let mut out = vec![UNICENTRAL];
            out.extend(rooted_code(t, *c, usize::MAX));
            CanonicalCode(out)
        }
        [a, b] => {
            let mut halves = [rooted_code(t, *a, *b), rooted_code(t, *b, *a)];
            halves.sort_unstable();
            let mut out = vec![BICENTRAL];
            out.extend(halves.concat());
            CanonicalCode(out)
        }
        _ => unreachable!("a tree has one or two centres"),
    }
}

pub fn is_isomorphic(a: &Tree, b: &Tree) -> bool {
    a.order() == b.order() && canonical_code(a) == canonical_code(b)
}

/// Tree from a level sequence (depths in preorder, root at depth 0).
pub fn tree_from_level_sequence(levels: &[usize]) -> Tree {
    let n = levels.len();
    let mut adjacency = vec![Vec::new(); n];
    let mut last_at_level: Vec<Vertex> = Vec::with_capacity(n);
    for (v, &lvl) in levels.iter().enumerate() {
        last_at_level.truncate(lvl);
        if let Some(&p) = last_at_level.last() {
            adjacency[p].push(v);
            adjacency[v].push(p);
        }
        last_at_level.push(v);
    }
    Tree::from_adjacency(adjacency).expect("a valid level sequence describes a tree")
}

/// Decodes a Prüfer sequence over `0..n` (length `n - 2`, `n >= 2`).
pub fn tree_from_prufer(n: usize, seq: &[Vertex]) -> Result<Tree, EnumError> {
    if n < 2 || seq.len() != n - 2 {
        return Err(EnumError::BadPrufer { n, expected: n.saturating_sub(2), found: seq.len() });
    }
    if seq.iter().any(|&x| x >= n) {
        return Err(EnumError::BadPrufer { n, expected: n - 2, found: seq.len() });
    }
    let mut degree = vec![1usize; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    // Linear-time decoding: `ptr` scans for the next smallest leaf.
    let mut ptr = (0..n).find(|&v| degree[v] == 1).expect("a leaf exists");
    let mut leaf = ptr;
    for &x in seq {
        edges.push((leaf, x));
        degree[x] -= 1;
        if degree[x] == 1 && x < ptr {
            leaf = x;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    edges.push((leaf, n - 1));
    Ok(Tree::from_edges(n, &edges).expect("Prüfer decoding yields a tree"))
}

fn next_rooted(pred: &[usize], p: Option<usize>) -> Option<Vec<usize>> {
    let p = match p {
        Some(p) => p,
        None => {
            let mut p = pred.len() - 1;
            while pred[p] == 1 {
                p -= 1;
            }
            p
        }
    };
    if p == 0 {
        return None;
    }
    let mut q = p - 1;
    while pred[q] + 1 != pred[p] {
        q -= 1;
    }
    let mut out = pred.to_vec();
    for i in p..out.len() {
        out[i] = out[i - p + q];
    }
    Some(out)
}

/// Splits at the second child of the root: (first subtree shifted up one
/// level, rest of the tree).
fn split(layout: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let m = layout.iter().enumerate().skip(1).filter(|&(_, &l)| l == 1).nth(1).map(|(i, _)| i).unwrap_or(layout.len());
    let left = layout[1..m].iter().map(|l| l - 1).collect();
    let mut rest = vec![0];
    rest.extend_from_slice(&layout[m..]);
    (left, rest)
}

fn next_free(candidate: Vec<usize>) -> Option<Vec<usize>> {
    let (left, rest) = split(&candidate);
    let lh = left.iter().copied().max().unwrap_or(0);
    let rh = rest.iter().copied().max().unwrap_or(0);
    let mut valid = rh >= lh;
    if valid && rh == lh && (left.len() > rest.len() || (left.len() == rest.len() && left > rest)) {
        valid = false;
    }
    if valid {
        return Some(candidate);
    }
    let p = left.len();
    let mut next = next_rooted(&candidate, Some(p))?;
    if candidate[p] > 2 {
        let (new_left, _) = split(&next);
        let h = new_left.iter().copied().max().unwrap_or(0);
        let len = next.len();
        for (i, slot) in next[len - (h + 1)..].iter_mut().enumerate() {
            *slot = i + 1;
        }
    }
    Some(next)
}

/// True when every vertex lists its child subtrees in non-increasing
/// lexicographic order, the form the generator produces.
fn siblings_ordered(levels: &[usize]) -> bool {
    let subtree_end = |i: usize| (i + 1..levels.len()).find(|&j| levels[j] <= levels[i]).unwrap_or(levels.len());
    (0..levels.len()).all(|v| {
        let end = subtree_end(v);
        let mut prev: Option<&[usize]> = None;
        let mut c = v + 1;
        while c < end {
            let e = subtree_end(c);
            let seg = &levels[c..e];
            if prev.is_some_and(|p| p < seg) {
                return false;
            }
            prev = Some(seg);
            c = e;
        }
        true
    })
}

/// Stream of one representative per isomorphism class of trees on `n`
/// vertices. Deterministic; restartable from any yielded level sequence.
#[derive(Debug, Clone)]
pub struct FreeTrees {
    n: usize,
    pending: Option<Vec<usize>>,
    single: bool,
}

impl FreeTrees {
    fn first(n: usize) -> FreeTrees {
        if n <= 2 {
            return FreeTrees { n, pending: None, single: true };
        }
        let mut layout: Vec<usize> = (0..=n / 2).collect();
        layout.extend(1..n.div_ceil(2));
        FreeTrees { n, pending: next_free(layout), single: false }
    }

    /// Resumes so that the next item is the tree with this level sequence.
    pub fn resume_from(levels: Vec<usize>) -> Result<FreeTrees, EnumError> {
        let n = levels.len();
        if n <= 2 || levels[0] != 0 || levels.windows(2).any(|w| w[1] == 0 || w[1] > w[0] + 1) {
            return Err(EnumError::BadLevelSequence(levels));
        }
        if !siblings_ordered(&levels) {
            return Err(EnumError::BadLevelSequence(levels));
        }
        match next_free(levels.clone()) {
            Some(l) if l == levels => Ok(FreeTrees { n, pending: Some(levels), single: false }),
            _ => Err(EnumError::BadLevelSequence(levels)),
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Level sequence of the next tree, if any.
    pub fn peek_levels(&self) -> Option<&[usize]> {
        self.pending.as_deref()
    }

    /// Every `parts`-th tree starting at `index`; the `parts` sub-streams
    /// together cover the stream exactly once.
    pub fn partition(self, parts: usize, index: usize) -> impl Iterator<Item = Tree> {
        assert!(parts >= 1 && index < parts, "partition index out of range");
        self.skip(index).step_by(parts)
    }
}

impl Iterator for FreeTrees {
    type Item = Tree;

    fn next(&mut self) -> Option<Tree> {
        if self.single {
            self.single = false;
            return Some(match self.n {
                1 => Tree::single_vertex(),
                _ => Tree::from_edges(2, &[(0, 1)]).expect("P_2"),
            });
        }
        let current = self.pending.take()?;
        let tree = tree_from_level_sequence(&current);
        self.pending = next_rooted(&current, None).and_then(next_free);
        Some(tree)
    }
}

pub fn free_trees(n: usize) -> Result<FreeTrees, EnumError> {
    free_trees_capped(n, DEFAULT_MAX_N)
}

pub fn free_trees_capped(n: usize, max_n: usize) -> Result<FreeTrees, EnumError> {
    if n == 0 {
        return Err(EnumError::NTooSmall);
    }
    if n > max_n {
        return Err(EnumError::NTooLarge { n, max: max_n });
    }
    Ok(FreeTrees::first(n))
}

pub fn filter_class<I>(stream: I, class: ParamClass) -> impl Iterator<Item = Tree>
where
    I: IntoIterator<Item = Tree>,
{
    stream.into_iter().filter(move |t| class.contains(t))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tree(n: usize, edges: &[(usize, usize)]) -> Tree {
        Tree::from_edges(n, edges).unwrap()
    }

    #[test]
    fn path_relabeling_keeps_code() {
        let a = tree(4, &[(0, 1), (1, 2), (2, 3)]);
        let b = tree(4, &[(2, 0), (0, 3), (3, 1)]);
        assert_eq!(canonical_code(&a), canonical_code(&b));
        let star = tree(4, &[(0, 1), (0, 2), (0, 3)]);
        assert_ne!(canonical_code(&a), canonical_code(&star));
        assert!(!is_isomorphic(&a, &star));
    }

    #[test]
    fn hex_round_trip() {
        let c = canonical_code(&tree(5, &[(0, 1), (1, 2), (1, 3), (3, 4)]));
        assert_eq!(CanonicalCode::from_hex(&c.to_hex()), Some(c));
        assert_eq!(CanonicalCode::from_hex("abc"), None);
        assert_eq!(CanonicalCode::from_hex("zz"), None);
    }

    #[test]
    fn small_counts() {
        let counts: Vec<usize> = (1..=10).map(|n| free_trees(n).unwrap().count()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 3, 6, 11, 23, 47, 106]);
    }

    #[test]
    fn cap_and_bounds() {
        assert_eq!(free_trees(0).unwrap_err(), EnumError::NTooSmall);
        assert_eq!(free_trees(21).unwrap_err(), EnumError::NTooLarge { n: 21, max: 20 });
        assert!(free_trees_capped(21, 22).is_ok());
    }

    #[test]
    fn prufer_decoding() {
        // [3,3,3] on 5 vertices is the star centred at 3 plus vertex 4 at 3.
        let t = tree_from_prufer(5, &[3, 3, 3]).unwrap();
        assert_eq!(t.degree(3), 4);
        let p = tree_from_prufer(4, &[1, 2]).unwrap();
        assert_eq!(p.edges(), vec![(0, 1), (1, 2), (2, 3)]);
        assert_eq!(tree_from_prufer(2, &[]).unwrap().edges(), vec![(0, 1)]);
        assert!(tree_from_prufer(4, &[1]).is_err());
        assert!(tree_from_prufer(4, &[1, 9]).is_err());
    }

    #[test]
    fn resume_and_partition() {
        let mut all = free_trees(9).unwrap();
        for _ in 0..10 {
            all.next();
        }
        let levels = all.peek_levels().unwrap().to_vec();
        let tail: Vec<Tree> = all.collect();
        let resumed: Vec<Tree> = FreeTrees::resume_from(levels).unwrap().collect();
        assert_eq!(tail, resumed);
        assert!(FreeTrees::resume_from(vec![0, 1, 1, 2]).is_err());
        assert!(FreeTrees::resume_from(vec![0, 1, 1, 1]).is_ok());
        assert!(FreeTrees::resume_from(vec![0, 2, 1]).is_err());

        let whole: Vec<Tree> = free_trees(9).unwrap().collect();
        let mut parts: Vec<Tree> = (0..4).flat_map(|i| free_trees(9).unwrap().partition(4, i)).collect();
        assert_eq!(parts.len(), whole.len());
        let key = |t: &Tree| canonical_code(t);
        parts.sort_by_key(key);
        let mut w = whole.clone();
        w.sort_by_key(key);
        assert_eq!(parts, w);
    }

    #[test]
    fn class_filter() {
        let stars: Vec<Tree> = filter_class(free_trees(6).unwrap(), ParamClass::Matching(1)).collect();
        assert_eq!(stars.len(), 1);
        assert_eq!(stars[0].degrees().into_iter().max(), Some(5));
        let paths: Vec<Tree> = filter_class(free_trees(5).unwrap(), ParamClass::Diameter(4)).collect();
        assert_eq!(paths.len(), 1);
    }
}
