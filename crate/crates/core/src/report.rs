//! Named law checks with first counterexamples.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Outcome of sweeping one identity over a finite family of instances.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawCheck {
    pub law: String,
    /// Instances examined before stopping (all of them when the law holds).
    pub checked: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl LawCheck {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }

    pub fn holds(law: impl Into<String>, checked: u64) -> Self {
        Self {
            law: law.into(),
            checked,
            counterexample: None,
        }
    }

    pub fn fails(law: impl Into<String>, counterexample: impl Into<String>) -> Self {
        Self {
            law: law.into(),
            checked: 1,
            counterexample: Some(counterexample.into()),
        }
    }
}

/// Sweeps `items`, stopping at the first one for which `violation` returns a
/// description.
pub fn sweep<T>(
    law: impl Into<String>,
    items: impl IntoIterator<Item = T>,
    mut violation: impl FnMut(T) -> Option<String>,
) -> LawCheck {
    let mut checked = 0;
    for item in items {
        checked += 1;
        if let Some(witness) = violation(item) {
            return LawCheck {
                law: law.into(),
                checked,
                counterexample: Some(witness),
            };
        }
    }
    LawCheck::holds(law, checked)
}

/// [`sweep`] over a slice on the rayon pool. The reported witness is the
/// first violation in slice order, so output is deterministic.
pub fn par_sweep<T: Sync>(
    law: impl Into<String>,
    items: &[T],
    violation: impl Fn(&T) -> Option<String> + Sync,
) -> LawCheck {
    let found = items
        .par_iter()
        .enumerate()
        .find_map_first(|(i, t)| violation(t).map(|w| (i, w)));
    match found {
        None => LawCheck::holds(law, items.len() as u64),
        Some((i, w)) => LawCheck {
            law: law.into(),
            checked: i as u64 + 1,
            counterexample: Some(w),
        },
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawReport {
    pub checks: Vec<LawCheck>,
}

impl LawReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, check: LawCheck) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: LawReport) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(LawCheck::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &LawCheck> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn get(&self, law: &str) -> Option<&LawCheck> {
        self.checks.iter().find(|c| c.law == law)
    }

    pub fn law_passed(&self, law: &str) -> Option<bool> {
        self.get(law).map(LawCheck::passed)
    }
}

impl std::fmt::Display for LawReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for c in &self.checks {
            match &c.counterexample {
                None => writeln!(f, "ok    {} ({} checked)", c.law, c.checked)?,
                Some(w) => writeln!(f, "FAIL  {}: {}", c.law, w)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_stops_at_first_violation() {
        let c = sweep("even", 0..10, |x| (x == 3).then(|| format!("x={x}")));
        assert_eq!(c.checked, 4);
        assert_eq!(c.counterexample.as_deref(), Some("x=3"));
        assert!(sweep("small", 0..10, |x| (x > 20).then(String::new)).passed());
    }

    #[test]
    fn par_sweep_reports_first_in_order() {
        let items: Vec<u32> = (0..10_000).collect();
        let c = par_sweep("small", &items, |&x| (x % 1000 == 999).then(|| x.to_string()));
        assert_eq!(c.counterexample.as_deref(), Some("999"));
        assert_eq!(c.checked, 1000);
        assert_eq!(par_sweep("all", &items, |_| None).checked, 10_000);
    }
}
