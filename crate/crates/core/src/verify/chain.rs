//! Replays a closed extension as a chain of two-clause resolutions, last entry first.

use super::VerifyError;
use crate::kernel::ExtensionState;
use crate::logic::{Clause, Literal};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearChain {
    /// Resolvents in production order; the last one is `result`.
    pub steps: Vec<Clause>,
    pub result: Clause,
}

/// Resolve `instances[k-1]` successively against `instances[i]` on `main[i]`, for `i` from
/// `k-2` down to `0`.
pub fn linear_chain(instances: &[Clause], main: &[Literal]) -> Result<LinearChain, VerifyError> {
    let Some((last, rest)) = instances.split_last() else {
        return Err(VerifyError::BrokenChain { step: 0, reason: "no instances".into() });
    };
    if rest.len() != main.len() {
        return Err(VerifyError::BrokenChain {
            step: 0,
            reason: format!("{} instances need {} resolved literals, got {}", instances.len(), rest.len(), main.len()),
        });
    }
    let mut resolvent = last.clone();
    let mut steps = Vec::with_capacity(rest.len());
    for (i, (inst, x)) in rest.iter().zip(main).enumerate().rev() {
        let broken = |reason: String| VerifyError::BrokenChain { step: i + 1, reason };
        if !inst.contains(x) {
            return Err(broken(format!("{x} is not in {inst}")));
        }
        let negated = x.complement();
        if !resolvent.contains(&negated) {
            return Err(broken(format!("{negated} is not in the current resolvent {resolvent}")));
        }
        resolvent = resolvent.without(&negated).into_iter().chain(inst.without(x)).collect();
        steps.push(resolvent.clone());
    }
    Ok(LinearChain { steps, result: resolvent })
}

/// The chain of a state whose last entry has no main-boundary literal yet.
pub fn linear_chain_of(state: &ExtensionState) -> Result<LinearChain, VerifyError> {
    let instances: Vec<Clause> = (0..state.len()).map(|i| state.instance(i)).collect();
    linear_chain(&instances, &state.main_boundary())
}
