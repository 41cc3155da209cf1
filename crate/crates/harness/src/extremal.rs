//! Exact optimum of REE over a class of free trees, with every witness.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::thread;

use ecctree_core::enumeration::{canonical_code, free_trees_capped, CanonicalCode, EnumError};
use ecctree_core::families::{c_n_d_family, codes, tndpq_family, FamilyError};
use ecctree_core::invariants::ree;
use ecctree_core::parameters::ParamClass;
use ecctree_core::{ExactRational, Tree};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Objective {
    Max,
    Min,
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Objective::Max => "max",
            Objective::Min => "min",
        })
    }
}

impl FromStr for Objective {
    type Err = SearchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "max" => Ok(Objective::Max),
            "min" => Ok(Objective::Min),
            other => Err(SearchError::BadObjective(other.to_string())),
        }
    }
}

/// Named families that can be set aside before optimizing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Exclusion {
    /// Caterpillars with every pendant on the central vertex or pair.
    Cnd,
    /// Caterpillars with pendants only on `v_1` and `v_{d-1}`.
    Tndpq,
}

impl Exclusion {
    pub fn name(self) -> &'static str {
        match self {
            Exclusion::Cnd => "cnd",
            Exclusion::Tndpq => "tndpq",
        }
    }

    /// Codes of the excluded trees; both families live in a diameter class.
    pub fn codes(self, n: usize, class: ParamClass) -> Result<BTreeSet<CanonicalCode>, SearchError> {
        let ParamClass::Diameter(d) = class else {
            return Err(SearchError::ExclusionNeedsDiameter(self.name()));
        };
        if d < 2 || d >= n {
            return Ok(BTreeSet::new());
        }
        let trees = match self {
            Exclusion::Cnd => c_n_d_family(n, d)?,
            Exclusion::Tndpq => tndpq_family(n, d)?,
        };
        Ok(codes(&trees))
    }
}

impl FromStr for Exclusion {
    type Err = SearchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "cnd" => Ok(Exclusion::Cnd),
            "tndpq" => Ok(Exclusion::Tndpq),
            other => Err(SearchError::UnknownExclusion(other.to_string())),
        }
    }
}

#[derive(Debug, Error)]
pub enum SearchError {
    #[error(transparent)]
    Enumeration(#[from] EnumError),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error("exclusion `{0}` only applies to diameter classes")]
    ExclusionNeedsDiameter(&'static str),
    #[error("unknown exclusion `{0}` (expected cnd or tndpq)")]
    UnknownExclusion(String),
    #[error("unknown objective `{0}` (expected max or min)")]
    BadObjective(String),
}

#[derive(Debug, Clone, Copy)]
pub struct SearchConfig {
    pub workers: usize,
    pub max_n: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { workers: crate::default_workers(), max_n: ecctree_core::enumeration::DEFAULT_MAX_N }
    }
}

#[derive(Debug, Clone)]
pub struct ExtremalResult {
    pub n: usize,
    pub class: ParamClass,
    pub objective: Objective,
    /// `None` when the filtered class is empty.
    pub value: Option<ExactRational>,
    pub witnesses: BTreeMap<CanonicalCode, Tree>,
    pub class_size: usize,
    pub excluded: Option<String>,
}

impl ExtremalResult {
    pub fn witness_codes(&self) -> BTreeSet<CanonicalCode> {
        self.witnesses.keys().cloned().collect()
    }
}

/// Partial result of one worker; merging is commutative and associative.
#[derive(Debug, Default)]
struct Best {
    value: Option<ExactRational>,
    witnesses: BTreeMap<CanonicalCode, Tree>,
    size: usize,
}

impl Best {
    fn offer(&mut self, objective: Objective, value: ExactRational, code: CanonicalCode, t: Tree) {
        let better = match &self.value {
            None => true,
            Some(v) => match objective {
                Objective::Max => value > *v,
                Objective::Min => value < *v,
            },
        };
        if better {
            self.value = Some(value);
            self.witnesses.clear();
            self.witnesses.insert(code, t);
        } else if self.value.as_ref() == Some(&value) {
            self.witnesses.insert(code, t);
        }
    }

    fn merge(mut self, other: Best, objective: Objective) -> Best {
        self.size += other.size;
        if let Some(v) = other.value {
            for (code, t) in other.witnesses {
                self.offer(objective, v.clone(), code, t);
            }
        }
        self
    }
}

/// Optimizes REE over trees on `n` vertices in `class` whose code is not in
/// `exclude`. All ties are kept.
pub fn extremal_search(
    n: usize,
    class: ParamClass,
    objective: Objective,
    exclude: &BTreeSet<CanonicalCode>,
    config: SearchConfig,
) -> Result<ExtremalResult, SearchError> {
    free_trees_capped(n, config.max_n)?;
    let workers = config.workers.max(1);
    let best = thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|i| {
                s.spawn(move || {
                    let mut best = Best::default();
                    let stream = free_trees_capped(n, config.max_n).expect("checked above").partition(workers, i);
                    for t in stream.filter(|t| class.contains(t)) {
                        if n < 2 {
                            continue;
                        }
                        let code = canonical_code(&t);
                        if exclude.contains(&code) {
                            continue;
                        }
                        best.size += 1;
                        best.offer(objective, ree(&t), code, t);
                    }
                    best
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("search worker panicked"))
            .fold(Best::default(), |acc, b| acc.merge(b, objective))
    });
    Ok(ExtremalResult {
        n,
        class,
        objective,
        value: best.value,
        witnesses: best.witnesses,
        class_size: best.size,
        excluded: None,
    })
}

/// [`extremal_search`] with a named exclusion.
pub fn extremal_search_excluding(
    n: usize,
    class: ParamClass,
    objective: Objective,
    exclusion: Option<Exclusion>,
    config: SearchConfig,
) -> Result<ExtremalResult, SearchError> {
    let codes = match exclusion {
        Some(e) => e.codes(n, class)?,
        None => BTreeSet::new(),
    };
    let mut result = extremal_search(n, class, objective, &codes, config)?;
    result.excluded = exclusion.map(|e| e.name().to_string());
    Ok(result)
}
