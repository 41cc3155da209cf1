//! Seeded fuzzing of the grafting rewrites against their inequalities.
//!
//! Trial `i` of seed `s` draws from its own ChaCha stream, so any single
//! trial can be replayed with [`replay`] without running the ones before it.

use std::cmp::Ordering;

use ecctree_core::enumeration::tree_from_prufer;
use ecctree_core::invariants::ree;
use ecctree_core::transforms::{
    alpha_full, alpha_sites, diametral_pendant_shift, pendant_regraft, rho_sites, rho_transform, theta_sites,
    theta_transform, GraftKind, GraftOutcome,
};
use ecctree_core::{ExactRational, Tree};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Order range of the random trees.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FuzzConfig {
    pub min_n: usize,
    pub max_n: usize,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig { min_n: 4, max_n: 16 }
    }
}

#[derive(Debug, Clone)]
pub struct Trial {
    pub index: u64,
    pub before: Tree,
    pub outcome: GraftOutcome,
    /// Only meaningful for the diametral shift.
    pub strict_flag: bool,
    pub value_before: ExactRational,
    pub value_after: ExactRational,
}

impl Trial {
    pub fn direction(&self) -> Ordering {
        self.value_after.cmp(&self.value_before)
    }

    /// Whether this trial contradicts the inequality attached to `kind`.
    pub fn violates(&self, kind: GraftKind) -> bool {
        let dir = self.direction();
        match kind {
            GraftKind::Rho | GraftKind::Alpha | GraftKind::Theta => {
                self.outcome.precondition_held && dir != Ordering::Greater
            }
            GraftKind::DiametralShift => dir == Ordering::Less || (dir == Ordering::Equal) == self.strict_flag,
            GraftKind::PendantRegraft => dir == Ordering::Greater,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuzzSummary {
    pub kind: GraftKind,
    pub seed: u64,
    pub trials: u64,
    pub applied: u64,
    pub precondition_held: u64,
    /// The three comparison counts cover the applications whose
    /// precondition held.
    pub strict_increase: u64,
    pub equal: u64,
    pub decrease: u64,
    /// Shift applications whose equality disagreed with the strict flag.
    pub flag_mismatch: u64,
    pub violations: u64,
    /// Edge lists and trial indices of the first few violations.
    pub examples: Vec<String>,
}

const MAX_EXAMPLES: usize = 5;

impl FuzzSummary {
    fn new(kind: GraftKind, seed: u64) -> FuzzSummary {
        FuzzSummary {
            kind,
            seed,
            trials: 0,
            applied: 0,
            precondition_held: 0,
            strict_increase: 0,
            equal: 0,
            decrease: 0,
            flag_mismatch: 0,
            violations: 0,
            examples: Vec::new(),
        }
    }

    fn record(&mut self, trial: Option<Trial>) {
        self.trials += 1;
        let Some(trial) = trial else { return };
        self.applied += 1;
        if trial.outcome.precondition_held {
            self.precondition_held += 1;
            match trial.direction() {
                Ordering::Greater => self.strict_increase += 1,
                Ordering::Equal => self.equal += 1,
                Ordering::Less => self.decrease += 1,
            }
        }
        if self.kind == GraftKind::DiametralShift && (trial.direction() == Ordering::Equal) == trial.strict_flag {
            self.flag_mismatch += 1;
        }
        if trial.violates(self.kind) {
            self.violations += 1;
            if self.examples.len() < MAX_EXAMPLES {
                self.examples.push(format!(
                    "trial {}: edges {:?}, move {:?}, {} -> {}",
                    trial.index,
                    trial.before.edges(),
                    trial.outcome.graft,
                    trial.value_before,
                    trial.value_after
                ));
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

pub fn random_tree(rng: &mut ChaCha8Rng, n: usize) -> Tree {
    if n < 2 {
        return Tree::single_vertex();
    }
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    tree_from_prufer(n, &seq).expect("Prüfer sequences decode to trees")
}

fn pick<T: Clone>(rng: &mut ChaCha8Rng, items: &[T]) -> Option<T> {
    (!items.is_empty()).then(|| items[rng.gen_range(0..items.len())].clone())
}

/// Re-runs trial `index` of `seed`; `None` when the random tree had no site.
pub fn replay(kind: GraftKind, seed: u64, index: u64, config: FuzzConfig) -> Option<Trial> {
    let mut rng = trial_rng(seed, index);
    let n = rng.gen_range(config.min_n..=config.max_n);
    let t = random_tree(&mut rng, n);
    let mut strict_flag = false;
    let outcome = match kind {
        GraftKind::Rho => {
            let (w, v, roots) = pick(&mut rng, &rho_sites(&t))?;
            rho_transform(&t, w, v, &roots).ok()?
        }
        GraftKind::Alpha => {
            let (v1, vl) = pick(&mut rng, &alpha_sites(&t))?;
            alpha_full(&t, v1, vl).ok()?
        }
        GraftKind::Theta => {
            let (v, u, w) = pick(&mut rng, &theta_sites(&t))?;
            theta_transform(&t, v, u, w).ok()?
        }
        GraftKind::DiametralShift => {
            let (o, strict) = diametral_pendant_shift(&t).ok()?;
            strict_flag = strict;
            o
        }
        GraftKind::PendantRegraft => pendant_regraft(&t).ok()?,
    };
    Some(Trial { index, value_before: ree(&t), value_after: ree(&outcome.tree), before: t, outcome, strict_flag })
}

/// Runs `trials` seeded trials of `kind` on trees with 4 to 16 vertices.
pub fn fuzz_transforms(kind: GraftKind, trials: u64, seed: u64) -> FuzzSummary {
    fuzz_with(kind, trials, seed, FuzzConfig::default())
}

pub fn fuzz_with(kind: GraftKind, trials: u64, seed: u64, config: FuzzConfig) -> FuzzSummary {
    let mut summary = FuzzSummary::new(kind, seed);
    for index in 0..trials {
        summary.record(replay(kind, seed, index, config));
    }
    summary
}

/// Keeps drawing trials until `held_target` applications had their
/// precondition hold, or `max_trials` trials ran.
pub fn fuzz_until(kind: GraftKind, held_target: u64, seed: u64, max_trials: u64) -> FuzzSummary {
    let config = FuzzConfig::default();
    let mut summary = FuzzSummary::new(kind, seed);
    let mut index = 0;
    while summary.precondition_held < held_target && index < max_trials {
        summary.record(replay(kind, seed, index, config));
        index += 1;
    }
    summary
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_per_seed() {
        for kind in GraftKind::ALL {
            assert_eq!(fuzz_transforms(kind, 200, 7), fuzz_transforms(kind, 200, 7));
        }
    }

    #[test]
    fn replay_matches_sequential_run() {
        let config = FuzzConfig::default();
        let a = replay(GraftKind::Theta, 3, 57, config).map(|t| t.outcome);
        let b = replay(GraftKind::Theta, 3, 57, config).map(|t| t.outcome);
        assert_eq!(a, b);
    }

    #[test]
    fn no_site_means_not_applied() {
        let stars = FuzzConfig { min_n: 4, max_n: 4 };
        let s = fuzz_with(GraftKind::DiametralShift, 20, 1, stars);
        assert_eq!(s.applied, 0);
        assert_eq!(s.trials, 20);
    }

    #[test]
    fn small_runs_hold() {
        for kind in GraftKind::ALL {
            let s = fuzz_transforms(kind, 500, 42);
            assert!(s.passed(), "{s:?}");
            assert!(s.applied > 0);
        }
    }

    #[test]
    fn until_stops_at_target() {
        let s = fuzz_until(GraftKind::Rho, 50, 5, 10_000);
        assert_eq!(s.precondition_held, 50);
        let capped = fuzz_until(GraftKind::Rho, 1_000_000, 5, 30);
        assert_eq!(capped.trials, 30);
    }
}
