//! Extremal search over enumerated tree classes, theorem verification,
//! transformation fuzzing and report rendering.

pub mod extremal;
pub mod fuzz;
pub mod report;
pub mod verify;

/// Worker count used when none is configured.
pub fn default_workers() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}
