//! Every realization produced over the bounded atlas is backed by a full
//! certificate, and the certificate's two abelian oracles agree.

use num_traits::{One, Zero};
use orbiseif::enumerate::signatures;
use orbiseif::realize::realize;
use orbiseif::verify::{check_torsion_free, h1_report};
use orbiseif::{theorem1_admissible, CosetOutcome};
use rayon::prelude::*;

#[test]
fn realizations_over_orders_up_to_30_are_certified() {
    let sigs: Vec<_> = signatures(None, 30, 4).collect();
    let failures: Vec<String> = sigs
        .par_iter()
        .filter_map(|sig| {
            let r = realize(sig).ok()?;
            let h1 = h1_report(&r.data);
            let c = &r.certificate;
            let ok = check_torsion_free(&r.data)
                && h1.e0.is_zero()
                && h1.e1.is_one()
                && c.coset_result == CosetOutcome::Completed(1)
                && c.oracles_agree()
                && theorem1_admissible(sig).is_accepted();
            (!ok).then(|| format!("{sig}: {}", r.data))
        })
        .collect();
    assert!(failures.is_empty(), "{failures:#?}");
}
