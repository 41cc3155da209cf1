#![allow(dead_code)]

use std::collections::BTreeMap;

use ecctree_core::enumeration::tree_from_prufer;
use ecctree_core::rational::{integer, ratio, ExactRational};
use ecctree_core::Tree;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn tree(n: usize, edges: &[(usize, usize)]) -> Tree {
    Tree::from_edges(n, edges).unwrap()
}

/// Isomorphism key of a small tree given as adjacency rows: centre by leaf
/// peeling, then a bit-packed parenthesis encoding with sorted children.
/// Written separately from the library's canonical code on purpose.
pub fn oracle_key(adj: &[Vec<usize>]) -> (u64, u32) {
    let n = adj.len();
    assert!(n <= 31);
    let mut deg: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut alive = n;
    let mut removed = vec![false; n];
    let mut layer: Vec<usize> = (0..n).filter(|&v| deg[v] <= 1).collect();
    while alive > 2 {
        let mut next = Vec::new();
        for &v in &layer {
            removed[v] = true;
            alive -= 1;
            for &u in &adj[v] {
                if !removed[u] {
                    deg[u] -= 1;
                    if deg[u] == 1 {
                        next.push(u);
                    }
                }
            }
        }
        layer = next;
    }
    let centres: Vec<usize> = (0..n).filter(|&v| !removed[v]).collect();
    fn enc(adj: &[Vec<usize>], v: usize, parent: usize) -> (u64, u32) {
        let mut kids: Vec<(u64, u32)> = adj[v].iter().filter(|&&c| c != parent).map(|&c| enc(adj, c, v)).collect();
        kids.sort_by_key(|&(bits, len)| (bits << (64 - len), len));
        let (mut bits, mut len) = (1u64, 1u32);
        for (b, l) in kids {
            bits = (bits << l) | b;
            len += l;
        }
        (bits << 1, len + 1)
    }
    match centres.as_slice() {
        [c] => enc(adj, *c, usize::MAX),
        [a, b] => {
            let mut halves = [enc(adj, *a, *b), enc(adj, *b, *a)];
            halves.sort_by_key(|&(bits, len)| (bits << (64 - len), len));
            ((halves[0].0 << halves[1].1) | halves[1].0, halves[0].1 + halves[1].1)
        }
        _ => unreachable!(),
    }
}

/// Every labeled tree on `n` vertices via its Prüfer sequence, one kept per
/// isomorphism class (keyed by [`oracle_key`]).
pub fn prufer_dedup(n: usize) -> BTreeMap<(u64, u32), Tree> {
    let mut out = BTreeMap::new();
    if n == 1 {
        out.insert(oracle_key(&[vec![]]), Tree::single_vertex());
        return out;
    }
    let len = n - 2;
    let mut seq = vec![0usize; len];
    let mut adj = vec![Vec::with_capacity(n); n];
    let mut deg = vec![0usize; n];
    loop {
        for row in adj.iter_mut() {
            row.clear();
        }
        deg.iter_mut().for_each(|d| *d = 1);
        for &x in &seq {
            deg[x] += 1;
        }
        for &x in &seq {
            let leaf = (0..n).find(|&v| deg[v] == 1).unwrap();
            adj[leaf].push(x);
            adj[x].push(leaf);
            deg[leaf] = 0;
            deg[x] -= 1;
        }
        let mut last = (0..n).filter(|&v| deg[v] == 1);
        let (a, b) = (last.next().unwrap(), last.next().unwrap());
        adj[a].push(b);
        adj[b].push(a);
        let key = oracle_key(&adj);
        out.entry(key).or_insert_with(|| {
            let edges: Vec<(usize, usize)> =
                (0..n).flat_map(|u| adj[u].iter().filter(move |&&v| u < v).map(move |&v| (u, v))).collect();
            tree(n, &edges)
        });
        let mut i = 0;
        while i < len && seq[i] == n - 1 {
            seq[i] = 0;
            i += 1;
        }
        if i == len {
            break;
        }
        seq[i] += 1;
    }
    out
}

pub fn key_of(t: &Tree) -> (u64, u32) {
    let adj: Vec<Vec<usize>> = t.vertices().map(|v| t.neighbors(v).to_vec()).collect();
    oracle_key(&adj)
}

/// Trees on `m + 1` vertices obtained by hanging a leaf anywhere on a tree of
/// `trees`, deduplicated.
pub fn leaf_extension(trees: &BTreeMap<(u64, u32), Tree>) -> BTreeMap<(u64, u32), Tree> {
    let mut out = BTreeMap::new();
    for t in trees.values() {
        let n = t.order();
        for v in 0..n {
            let mut edges = t.edges();
            edges.push((v, n));
            let grown = tree(n + 1, &edges);
            out.entry(key_of(&grown)).or_insert(grown);
        }
    }
    out
}

/// Free-tree counts from the rooted-tree recurrence and the dissimilarity
/// characteristic.
pub fn otter_counts(max_n: usize) -> Vec<u128> {
    let mut r = vec![0u128; max_n + 1];
    r[1] = 1;
    for m in 1..max_n {
        let mut acc = 0u128;
        for k in 1..=m {
            let s: u128 = (1..=k).filter(|d| k % d == 0).map(|d| d as u128 * r[d]).sum();
            acc += s * r[m - k + 1];
        }
        r[m + 1] = acc / m as u128;
    }
    (0..=max_n)
        .map(|n| {
            if n == 0 {
                return 0;
            }
            let pairs: u128 = (1..n).map(|i| r[i] * r[n - i]).sum();
            let half = if n % 2 == 0 { r[n / 2] } else { 0 };
            r[n] - (pairs - half) / 2
        })
        .collect()
}

pub fn random_tree(rng: &mut ChaCha8Rng, n: usize) -> Tree {
    if n == 1 {
        return Tree::single_vertex();
    }
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    tree_from_prufer(n, &seq).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// All-pairs distances by Floyd-Warshall over the edge list.
pub fn brute_distances(t: &Tree) -> Vec<Vec<usize>> {
    let n = t.order();
    let inf = usize::MAX / 4;
    let mut d = vec![vec![inf; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0;
    }
    for (u, v) in t.edges() {
        d[u][v] = 1;
        d[v][u] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

pub fn brute_ecc(t: &Tree) -> Vec<usize> {
    brute_distances(t).iter().map(|row| *row.iter().max().unwrap()).collect()
}

pub struct BruteInvariants {
    pub ree_edge: ExactRational,
    pub ree_vertex: ExactRational,
    pub ecc_conn: ExactRational,
    pub wiener: ExactRational,
    pub harary: ExactRational,
    pub avg_ecc: ExactRational,
    pub ecc_dist: ExactRational,
}

pub fn brute_invariants(t: &Tree) -> BruteInvariants {
    brute_invariants_from(t, &brute_distances(t))
}

pub fn brute_invariants_from(t: &Tree, d: &[Vec<usize>]) -> BruteInvariants {
    let n = t.order();
    let ecc: Vec<usize> = d.iter().map(|row| *row.iter().max().unwrap()).collect();
    let deg: Vec<usize> = (0..n).map(|v| t.edges().iter().filter(|&&(a, b)| a == v || b == v).count()).collect();
    let q = |a: usize, b: usize| ratio(a as i64, b as i64);
    let mut out = BruteInvariants {
        ree_edge: integer(0),
        ree_vertex: integer(0),
        ecc_conn: integer(0),
        wiener: integer(0),
        harary: integer(0),
        avg_ecc: integer(0),
        ecc_dist: integer(0),
    };
    for (u, v) in t.edges() {
        out.ree_edge += q(1, ecc[u]) + q(1, ecc[v]);
    }
    for v in 0..n {
        out.ree_vertex += q(deg[v], ecc[v]);
        out.ecc_conn += integer((deg[v] * ecc[v]) as i64);
        out.avg_ecc += q(ecc[v], n);
    }
    for u in 0..n {
        for v in u + 1..n {
            out.wiener += integer(d[u][v] as i64);
            out.harary += q(1, d[u][v]);
            out.ecc_dist += integer(((ecc[u] + ecc[v]) * d[u][v]) as i64);
        }
    }
    out
}

/// Largest matching by trying every edge subset.
pub fn brute_matching(t: &Tree) -> usize {
    let edges = t.edges();
    let m = edges.len();
    let mut best = 0;
    for mask in 0u32..(1u32 << m) {
        let k = mask.count_ones() as usize;
        if k <= best {
            continue;
        }
        let mut used = vec![false; t.order()];
        let ok = (0..m).filter(|i| mask >> i & 1 == 1).all(|i| {
            let (u, v) = edges[i];
            let fresh = !used[u] && !used[v];
            used[u] = true;
            used[v] = true;
            fresh
        });
        if ok {
            best = k;
        }
    }
    best
}

/// Smallest dominating set by trying every vertex subset.
pub fn brute_domination(t: &Tree) -> usize {
    let n = t.order();
    let edges = t.edges();
    (0u32..(1u32 << n))
        .filter(|mask| {
            (0..n).all(|v| {
                mask >> v & 1 == 1
                    || edges.iter().any(|&(a, b)| (a == v && mask >> b & 1 == 1) || (b == v && mask >> a & 1 == 1))
            })
        })
        .map(|mask| mask.count_ones() as usize)
        .min()
        .unwrap()
}

/// Whether `v` lies in every maximum matching, by listing them all.
pub fn brute_perfectly_matched(t: &Tree, v: usize) -> bool {
    let edges = t.edges();
    let m = edges.len();
    let beta = brute_matching(t);
    (0u32..(1u32 << m))
        .filter(|mask| mask.count_ones() as usize == beta)
        .filter(|mask| {
            let mut used = vec![false; t.order()];
            (0..m).filter(|i| mask >> i & 1 == 1).all(|i| {
                let (a, b) = edges[i];
                let fresh = !used[a] && !used[b];
                used[a] = true;
                used[b] = true;
                fresh
            })
        })
        .all(|mask| (0..m).any(|i| mask >> i & 1 == 1 && (edges[i].0 == v || edges[i].1 == v)))
}

/// Isomorphism by trying every bijection.
pub fn brute_isomorphic(a: &Tree, b: &Tree) -> bool {
    if a.order() != b.order() {
        return false;
    }
    let n = a.order();
    let target: std::collections::BTreeSet<(usize, usize)> = b.edges().into_iter().collect();
    let mut perm: Vec<usize> = (0..n).collect();
    permute(&mut perm, 0, &mut |p| {
        a.edges().into_iter().all(|(u, v)| {
            let (x, y) = (p[u].min(p[v]), p[u].max(p[v]));
            target.contains(&(x, y))
        })
    })
}

fn permute(p: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    if k == p.len() {
        return f(p);
    }
    for i in k..p.len() {
        p.swap(k, i);
        if permute(p, k + 1, f) {
            p.swap(k, i);
            return true;
        }
        p.swap(k, i);
    }
    false
}

pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    permute(&mut p, 0, &mut |q| {
        out.push(q.to_vec());
        false
    });
    out
}
