//! Constructors for the named extremal tree families and the closed-form
//! values attached to them.
//!
//! Labels are canonical per constructor: hub or path first, then legs or
//! pendants in declaration order.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::enumeration::{canonical_code, CanonicalCode};
use crate::graph::{Tree, Vertex};
use crate::invariants::ree;
use crate::rational::{ratio, to_fraction_string, ExactRational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("a spider needs at least one leg")]
    EmptyLegs,
    #[error("leg {index} has length 0")]
    NonPositiveLeg { index: usize },
    #[error("each side of a double spider needs at least two legs")]
    TooFewLegs,
    #[error("hub eccentricities differ: {left} vs {right}")]
    HubEccentricityMismatch { left: usize, right: usize },
    #[error("expected {expected} pendant counts, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("infeasible parameters: {0}")]
    InfeasibleParams(String),
    #[error("unknown theorem `{0}`")]
    UnknownTheorem(String),
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("candidate {edges:?} has value {found}, closed form gives {expected}")]
    CandidateValueMismatch { edges: Vec<(Vertex, Vertex)>, found: String, expected: String },
}

fn infeasible(msg: impl Into<String>) -> FamilyError {
    FamilyError::InfeasibleParams(msg.into())
}

/// Incremental edge-list builder shared by the constructors.
struct Builder {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
}

impl Builder {
    fn new(n: usize) -> Builder {
        Builder { n, edges: Vec::new() }
    }

    fn vertex(&mut self) -> Vertex {
        self.n += 1;
        self.n - 1
    }

    fn leaf(&mut self, at: Vertex) -> Vertex {
        let v = self.vertex();
        self.edges.push((at, v));
        v
    }

    fn leg(&mut self, at: Vertex, len: usize) {
        let mut prev = at;
        for _ in 0..len {
            prev = self.leaf(prev);
        }
    }

    fn path(len: usize) -> Builder {
        Builder { n: len, edges: (1..len).map(|i| (i - 1, i)).collect() }
    }

    fn build(self) -> Tree {
        Tree::from_edges(self.n, &self.edges).expect("family constructors produce trees")
    }
}

pub fn path(n: usize) -> Result<Tree, FamilyError> {
    if n == 0 {
        return Err(infeasible("a path needs at least one vertex"));
    }
    Ok(Builder::path(n).build())
}

/// Star on `n` vertices centred at 0.
pub fn star(n: usize) -> Result<Tree, FamilyError> {
    if n == 0 {
        return Err(infeasible("a star needs at least one vertex"));
    }
    let mut b = Builder::new(1);
    for _ in 1..n {
        b.leaf(0);
    }
    Ok(b.build())
}

pub fn spider(legs: &[usize]) -> Result<Tree, FamilyError> {
    if legs.is_empty() {
        return Err(FamilyError::EmptyLegs);
    }
    if let Some(index) = legs.iter().position(|&l| l == 0) {
        return Err(FamilyError::NonPositiveLeg { index });
    }
    let mut b = Builder::new(1);
    for &len in legs {
        b.leg(0, len);
    }
    Ok(b.build())
}

/// Leg lengths of the balanced spider: `k - r` short legs, then `r` long ones.
pub fn balanced_legs(n: usize, k: usize) -> Result<Vec<usize>, FamilyError> {
    if n < 3 || k < 2 || k > n - 1 {
        return Err(infeasible(format!("balanced spider needs 2 <= k <= n - 1, got n = {n}, k = {k}")));
    }
    let (q, r) = ((n - 1) / k, (n - 1) % k);
    Ok([vec![q; k - r], vec![q + 1; r]].concat())
}

pub fn balanced_spider(n: usize, k: usize) -> Result<Tree, FamilyError> {
    spider(&balanced_legs(n, k)?)
}

/// Two spiders whose hubs (0 and `1 + sum(left)`) are joined by an edge.
pub fn double_spider(left: &[usize], right: &[usize]) -> Result<Tree, FamilyError> {
    if left.len() < 2 || right.len() < 2 {
        return Err(FamilyError::TooFewLegs);
    }
    if let Some(index) = left.iter().chain(right).position(|&l| l == 0) {
        return Err(FamilyError::NonPositiveLeg { index });
    }
    let (lmax, rmax) = (left.iter().max().unwrap(), right.iter().max().unwrap());
    if lmax != rmax {
        return Err(FamilyError::HubEccentricityMismatch {
            left: *lmax.max(&(rmax + 1)),
            right: *rmax.max(&(lmax + 1)),
        });
    }
    let mut b = Builder::new(1);
    for &len in left {
        b.leg(0, len);
    }
    let hub = b.leaf(0);
    for &len in right {
        b.leg(hub, len);
    }
    Ok(b.build())
}

/// Double spiders on `n` vertices with `k` legs all of length `(n - 2) / k`,
/// one per isomorphism class. Empty unless `k >= 4` and `n = 2 (mod k)`.
pub fn s_nk_set(n: usize, k: usize) -> Vec<Tree> {
    if k < 4 || n < k + 2 || !(n - 2).is_multiple_of(k) {
        return Vec::new();
    }
    let a = (n - 2) / k;
    let trees = (2..=k - 2).map(|s| double_spider(&vec![a; s], &vec![a; k - s]).expect("equal legs"));
    dedup(trees)
}

/// Star `S_{n-beta+1}` centred at 0 whose leaves `1..beta` each get one more
/// pendant.
pub fn t_n_beta(n: usize, beta: usize) -> Result<Tree, FamilyError> {
    if beta == 0 || n < 2 * beta {
        return Err(infeasible(format!("T(n, beta) needs beta >= 1 and n >= 2 beta, got n = {n}, beta = {beta}")));
    }
    let mut b = Builder::new(1);
    for _ in 0..n - beta {
        b.leaf(0);
    }
    for v in 1..beta {
        b.leaf(v);
    }
    Ok(b.build())
}

/// Path `0..t` with `a` leaves on vertex 0 and `b` leaves on vertex `t - 1`.
pub fn p_t_ab(t: usize, a: usize, b: usize) -> Result<Tree, FamilyError> {
    if t < 2 {
        return Err(infeasible(format!("P_t(a, b) needs t >= 2, got {t}")));
    }
    let mut bl = Builder::path(t);
    for _ in 0..a {
        bl.leaf(0);
    }
    for _ in 0..b {
        bl.leaf(t - 1);
    }
    Ok(bl.build())
}

/// Path `v_0..v_d` (ids `0..=d`) with `counts[i - 1]` pendants at `v_i`.
pub fn caterpillar(d: usize, counts: &[usize]) -> Result<Tree, FamilyError> {
    Ok(caterpillar_builder(d, counts)?.build())
}

fn caterpillar_builder(d: usize, counts: &[usize]) -> Result<Builder, FamilyError> {
    if d < 2 {
        return Err(infeasible(format!("caterpillar needs d >= 2, got {d}")));
    }
    if counts.len() != d - 1 {
        return Err(FamilyError::LengthMismatch { expected: d - 1, found: counts.len() });
    }
    let mut b = Builder::path(d + 1);
    for (i, &c) in counts.iter().enumerate() {
        for _ in 0..c {
            b.leaf(i + 1);
        }
    }
    Ok(b)
}

/// Caterpillar plus one extra vertex hung on `v_at` carrying `j` leaves.
fn broom(d: usize, counts: &[usize], at: usize, j: usize) -> Tree {
    let mut b = caterpillar_builder(d, counts).expect("valid caterpillar");
    let x = b.leaf(at);
    for _ in 0..j {
        b.leaf(x);
    }
    b.build()
}

fn check_nd(n: usize, d: usize) -> Result<(), FamilyError> {
    if d < 2 || d > n.saturating_sub(1) {
        return Err(infeasible(format!("need 2 <= d <= n - 1, got n = {n}, d = {d}")));
    }
    Ok(())
}

fn central_counts(n: usize, d: usize, first: usize) -> Vec<usize> {
    let k = n - d - 1;
    let mut counts = vec![0; d - 1];
    if d.is_multiple_of(2) {
        counts[d / 2 - 1] = k;
    } else {
        counts[(d - 1) / 2 - 1] = first;
        counts[d.div_ceil(2) - 1] = k - first;
    }
    counts
}

/// All pendants on the central vertex (even `d`) or split as evenly as
/// possible over the central pair (odd `d`, larger half on `v_{(d-1)/2}`).
pub fn c_n_d(n: usize, d: usize) -> Result<Tree, FamilyError> {
    check_nd(n, d)?;
    caterpillar(d, &central_counts(n, d, (n - d - 1).div_ceil(2)))
}

/// Every caterpillar with all pendants on the central vertex or pair, one
/// per split.
pub fn c_n_d_family(n: usize, d: usize) -> Result<Vec<Tree>, FamilyError> {
    check_nd(n, d)?;
    let splits = if d.is_multiple_of(2) { 0..=0 } else { 0..=n - d - 1 };
    Ok(dedup(splits.map(|a| caterpillar(d, &central_counts(n, d, a)).expect("valid counts"))))
}

/// Caterpillars with `p` pendants at `v_1` and `q` at `v_{d-1}`, `p + q = n - d - 1`.
pub fn tndpq_family(n: usize, d: usize) -> Result<Vec<Tree>, FamilyError> {
    check_nd(n, d)?;
    let k = n - d - 1;
    Ok(dedup((0..=k).map(|p| {
        let mut counts = vec![0; d - 1];
        counts[0] += p;
        counts[d - 2] += k - p;
        caterpillar(d, &counts).expect("valid counts")
    })))
}

fn dedup(trees: impl IntoIterator<Item = Tree>) -> Vec<Tree> {
    let mut seen = BTreeSet::new();
    trees.into_iter().filter(|t| seen.insert(canonical_code(t))).collect()
}

pub fn codes(trees: &[Tree]) -> BTreeSet<CanonicalCode> {
    trees.iter().map(canonical_code).collect()
}

fn check_candidates(n: usize, d: usize) -> Result<(), FamilyError> {
    if d < 4 || n < d + 3 {
        return Err(infeasible(format!("need d >= 4 and n >= d + 3, got n = {n}, d = {d}")));
    }
    Ok(())
}

fn verified(trees: Vec<Tree>, expected: ExactRational) -> Result<Vec<Tree>, FamilyError> {
    for t in &trees {
        let found = ree(t);
        if found != expected {
            return Err(FamilyError::CandidateValueMismatch {
                edges: t.edges(),
                found: to_fraction_string(&found),
                expected: to_fraction_string(&expected),
            });
        }
    }
    Ok(trees)
}

/// Trees of diameter `d` expected to take the second-largest value once the
/// central caterpillars are set aside.
///
/// Even `d` (`h = d/2`): one pendant at `v_{h-1}` or `v_{h+1}` with the rest
/// at `v_h`, or a 2-path at `v_h` with the rest at `v_h`. Odd `d` (`a`, `a+1`
/// the central pair): one pendant just outside the pair with the rest split
/// over the pair in every way, or a 2-path on either central vertex with the
/// rest split in every way.
pub fn fig7_candidates(n: usize, d: usize) -> Result<Vec<Tree>, FamilyError> {
    check_candidates(n, d)?;
    let mut out = Vec::new();
    if d.is_multiple_of(2) {
        let h = d / 2;
        let mut c = vec![0; d - 1];
        c[h - 1] = n - d - 2;
        for side in [h - 2, h] {
            let mut c1 = c.clone();
            c1[side] += 1;
            out.push(caterpillar(d, &c1)?);
        }
        c[h - 1] -= 1;
        out.push(broom(d, &c, h, 1));
    } else {
        let a = (d - 1) / 2;
        let b = a + 1;
        for p in 0..=n - d - 2 {
            for side in [a - 2, b] {
                let mut c = vec![0; d - 1];
                c[a - 1] += p;
                c[b - 1] += n - d - 2 - p;
                c[side] += 1;
                out.push(caterpillar(d, &c)?);
            }
        }
        for s in 0..=n - d - 3 {
            let mut c = vec![0; d - 1];
            c[a - 1] += s;
            c[b - 1] += n - d - 3 - s;
            out.push(broom(d, &c, a, 1));
            out.push(broom(d, &c, b, 1));
        }
    }
    verified(dedup(out), closed_form(Formula::T47, &[n, d])?)
}

/// Trees of diameter `d` expected to take the smallest value outside the
/// `v_1`/`v_{d-1}` caterpillars: a vertex on `v_2` carrying `j` leaves, with
/// the remaining pendants split over `v_1` and `v_{d-1}` in every way.
pub fn fig8_candidates(n: usize, d: usize) -> Result<Vec<Tree>, FamilyError> {
    check_candidates(n, d)?;
    let mut out = Vec::new();
    for j in 0..=n - d - 2 {
        let r = n - d - 2 - j;
        for p in 0..=r {
            let mut c = vec![0; d - 1];
            c[0] += p;
            c[d - 2] += r - p;
            out.push(broom(d, &c, 2, j));
        }
    }
    verified(dedup(out), closed_form(Formula::T48, &[n, d])?)
}

/// Closed-form extremal values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    /// `(3n - 3) / 2`, args `[n]`.
    T42I,
    /// `(5n - 4) / 6`, args `[n]`.
    T42II,
    /// `(10n - 3 beta - 7) / 12`, args `[n, beta]`.
    T42III,
    /// `(10n - 3 gamma - 7) / 12`, args `[n, gamma]`.
    T45III,
    /// `(5n - 4) / 6`, args `[n]`.
    T46,
    /// Second-largest value over diameter `d`, args `[n, d]`.
    T47,
    /// Smallest value over diameter `d` off the end caterpillars, args `[n, d]`.
    T48,
    /// `(7n - 1) / 12`, args `[n]`.
    P3AB,
}

impl Formula {
    pub const ALL: [Formula; 8] = [
        Formula::T42I,
        Formula::T42II,
        Formula::T42III,
        Formula::T45III,
        Formula::T46,
        Formula::T47,
        Formula::T48,
        Formula::P3AB,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Formula::T42I => "T42I",
            Formula::T42II => "T42II",
            Formula::T42III => "T42III",
            Formula::T45III => "T45III",
            Formula::T46 => "T46",
            Formula::T47 => "T47",
            Formula::T48 => "T48",
            Formula::P3AB => "P3AB",
        }
    }

    fn arity(self) -> usize {
        match self {
            Formula::T42III | Formula::T45III | Formula::T47 | Formula::T48 => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Formula {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Formula::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| FamilyError::UnknownTheorem(s.to_string()))
    }
}

fn harmonic_tail(d: i64, from: i64, to_exclusive: i64) -> ExactRational {
    (from..to_exclusive).map(|i| ratio(4, d - i)).sum()
}

pub fn closed_form(formula: Formula, args: &[usize]) -> Result<ExactRational, FamilyError> {
    if args.len() != formula.arity() {
        return Err(infeasible(format!("{formula} takes {} argument(s), got {}", formula.arity(), args.len())));
    }
    let n = args[0] as i64;
    if n < 2 {
        return Err(infeasible(format!("n must be at least 2, got {n}")));
    }
    Ok(match formula {
        Formula::T42I => ratio(3 * n - 3, 2),
        Formula::T42II | Formula::T46 => ratio(5 * n - 4, 6),
        Formula::P3AB => ratio(7 * n - 1, 12),
        Formula::T42III | Formula::T45III => {
            let b = args[1] as i64;
            if b < 1 || n < 2 * b {
                return Err(infeasible(format!("need 1 <= {} and n >= 2 * {b}", args[1])));
            }
            ratio(10 * n - 3 * b - 7, 12)
        }
        Formula::T47 | Formula::T48 => {
            let d = args[1] as i64;
            check_candidates(args[0], args[1])?;
            match (formula, d % 2 == 0) {
                (Formula::T47, true) => {
                    harmonic_tail(d, 0, d / 2 - 1)
                        + ratio(2 * n - 2 * d - 2, d)
                        + ratio(2 * n - 2 * d + 6, d + 2)
                        + ratio(2, d + 4)
                }
                (Formula::T47, false) => {
                    harmonic_tail(d, 0, (d - 1) / 2 - 1) - ratio(2, d)
                        + ratio(2 * n - 2 * d + 4, d + 1)
                        + ratio(2 * n - 2 * d + 6, d + 3)
                        + ratio(2, d + 5)
                }
                (_, true) => {
                    harmonic_tail(d, 1, d / 2) + ratio(n - d + 4, d) + ratio(n - d - 1, d - 1) + ratio(1, d - 2)
                }
                (_, false) => {
                    harmonic_tail(d, 1, (d - 1) / 2 + 1) + ratio(n - d, d) + ratio(n - d - 1, d - 1) + ratio(1, d - 2)
                }
            }
        }
    })
}

/// Named family selector for the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyName {
    Path,
    Star,
    Spider,
    BalancedSpider,
    DoubleSpider,
    SnkSet,
    TNBeta,
    PTAb,
    Caterpillar,
    CNd,
    Fig7,
    Fig8,
}

impl FamilyName {
    const TABLE: [(FamilyName, &'static str, &'static str); 12] = [
        (FamilyName::Path, "path", "n"),
        (FamilyName::Star, "star", "n"),
        (FamilyName::Spider, "spider", "leg lengths"),
        (FamilyName::BalancedSpider, "bspider", "n,k"),
        (FamilyName::DoubleSpider, "dspider", "s,left legs (s of them),right legs"),
        (FamilyName::SnkSet, "snk", "n,k"),
        (FamilyName::TNBeta, "tnb", "n,beta"),
        (FamilyName::PTAb, "ptab", "t,a,b"),
        (FamilyName::Caterpillar, "cat", "d,a_1,...,a_(d-1)"),
        (FamilyName::CNd, "cnd", "n,d"),
        (FamilyName::Fig7, "fig7", "n,d"),
        (FamilyName::Fig8, "fig8", "n,d"),
    ];

    pub fn name(self) -> &'static str {
        Self::TABLE.iter().find(|e| e.0 == self).unwrap().1
    }

    pub fn usage(self) -> &'static str {
        Self::TABLE.iter().find(|e| e.0 == self).unwrap().2
    }

    pub fn all() -> impl Iterator<Item = FamilyName> {
        Self::TABLE.iter().map(|e| e.0)
    }
}

impl FromStr for FamilyName {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.trim().to_ascii_lowercase().replace('-', "_");
        let alias = match key.as_str() {
            "balanced_spider" => "bspider",
            "double_spider" => "dspider",
            "s_nk_set" => "snk",
            "t_n_beta" => "tnb",
            "p_t_ab" => "ptab",
            "caterpillar" => "cat",
            "c_nd" | "c_n_d" => "cnd",
            other => other,
        };
        Self::TABLE.iter().find(|e| e.1 == alias).map(|e| e.0).ok_or_else(|| FamilyError::UnknownFamily(s.to_string()))
    }
}

/// A family name with integer parameters, written `name:p1,p2,...`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FamilySpec {
    pub name: FamilyName,
    pub params: Vec<usize>,
}

impl FamilySpec {
    pub fn new(name: FamilyName, params: Vec<usize>) -> FamilySpec {
        FamilySpec { name, params }
    }

    fn want(&self, k: usize) -> Result<&[usize], FamilyError> {
        if self.params.len() != k {
            return Err(infeasible(format!(
                "{} takes {} parameter(s) ({}), got {}",
                self.name.name(),
                k,
                self.name.usage(),
                self.params.len()
            )));
        }
        Ok(&self.params)
    }

    /// Builds every tree named by this family string; single-tree families yield one.
    pub fn build(&self) -> Result<Vec<Tree>, FamilyError> {
        let one = |t: Tree| Ok(vec![t]);
        match self.name {
            FamilyName::Path => one(path(self.want(1)?[0])?),
            FamilyName::Star => one(star(self.want(1)?[0])?),
            FamilyName::Spider => one(spider(&self.params)?),
            FamilyName::BalancedSpider => {
                let p = self.want(2)?;
                one(balanced_spider(p[0], p[1])?)
            }
            FamilyName::DoubleSpider => {
                let (s, legs) = self.params.split_first().ok_or(FamilyError::TooFewLegs)?;
                if *s > legs.len() {
                    return Err(infeasible(format!("left side wants {s} legs, only {} given", legs.len())));
                }
                let (left, right) = legs.split_at(*s);
                one(double_spider(left, right)?)
            }
            FamilyName::SnkSet => {
                let p = self.want(2)?;
                Ok(s_nk_set(p[0], p[1]))
            }
            FamilyName::TNBeta => {
                let p = self.want(2)?;
                one(t_n_beta(p[0], p[1])?)
            }
            FamilyName::PTAb => {
                let p = self.want(3)?;
                one(p_t_ab(p[0], p[1], p[2])?)
            }
            FamilyName::Caterpillar => {
                let (d, counts) = self.params.split_first().ok_or_else(|| infeasible("caterpillar needs d"))?;
                one(caterpillar(*d, counts)?)
            }
            FamilyName::CNd => {
                let p = self.want(2)?;
                one(c_n_d(p[0], p[1])?)
            }
            FamilyName::Fig7 => {
                let p = self.want(2)?;
                fig7_candidates(p[0], p[1])
            }
            FamilyName::Fig8 => {
                let p = self.want(2)?;
                fig8_candidates(p[0], p[1])
            }
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self.params.iter().map(usize::to_string).collect();
        write!(f, "{}:{}", self.name.name(), params.join(","))
    }
}

impl FromStr for FamilySpec {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (name, rest) = s.split_once(':').unwrap_or((s, ""));
        let name: FamilyName = name.parse()?;
        let params = rest
            .split(',')
            .map(str::trim)
            .filter(|p| !p.is_empty())
            .map(|p| p.parse::<usize>().map_err(|_| infeasible(format!("bad parameter `{p}`"))))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(FamilySpec { name, params })
    }
}
