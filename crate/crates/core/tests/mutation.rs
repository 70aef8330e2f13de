//! A corrupted stencil must be caught by the chain-equivalence criterion.

use sojourn::harness::verify::{run_criterion, VerifyOptions};
use sojourn::lattice::ReducedStencil;

fn run(stencil: ReducedStencil) -> bool {
    let opts = VerifyOptions {
        stencil,
        ..VerifyOptions::default()
    };
    run_criterion("chain_equivalence", &opts).unwrap().iter().all(|c| c.pass)
}

#[test]
fn exact_stencil_passes() {
    assert!(run(ReducedStencil::EXACT));
}

#[test]
fn mutated_stencils_fail() {
    let mut swapped = ReducedStencil::EXACT;
    swapped.interface = [0.5, 0.25, 0.25];
    let mut leaky = ReducedStencil::EXACT;
    leaky.right = [0.5, 0.49];
    let mut lazy = ReducedStencil::EXACT;
    lazy.left = [0.2, 0.6, 0.2];
    for s in [swapped, leaky, lazy] {
        assert!(!run(s), "{s:?} passed");
    }
}

#[test]
fn unknown_criterion_is_an_error() {
    assert!(run_criterion("no_such_check", &VerifyOptions::default()).is_err());
}
