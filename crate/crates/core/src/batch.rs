//! Data-parallel evaluation over independent instances.
//!
//! With the `parallel` feature (on by default) [`map`] fans out over rayon's
//! global pool; without it, it is the plain sequential loop.

use crate::error::Result;
use crate::scalar::Scalar;
use crate::theorems::{verify, Case, TheoremId, VerificationReport};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

pub const PARALLEL: bool = cfg!(feature = "parallel");

pub fn map<I, O, F>(items: &[I], f: F) -> Vec<O>
where
    I: Sync,
    O: Send,
    F: Fn(&I) -> O + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        map_sequential(items, f)
    }
}

pub fn map_sequential<I, O, F>(items: &[I], f: F) -> Vec<O>
where
    F: Fn(&I) -> O,
{
    items.iter().map(f).collect()
}

/// Report-mode verification of one theorem over many cases, in input order.
pub fn verify_all<T: Scalar>(id: TheoremId, cases: &[Case<T>]) -> Vec<Result<VerificationReport>> {
    map(cases, |case| verify(id, case))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generator::{gen_instance, ConditionTag, GenSpec};

    #[test]
    fn parallel_and_sequential_agree() {
        let items: Vec<u64> = (0..200).collect();
        let sq = |x: &u64| x * x;
        assert_eq!(map(&items, sq), map_sequential(&items, sq));
    }

    #[test]
    fn batch_verification_keeps_order() {
        let cases: Vec<_> = (0..6)
            .map(|seed| {
                let spec = GenSpec::new(ConditionTag::Ac0Db0, 3, 2, 1, 2, seed);
                Case::exact(&gen_instance(&spec).unwrap()).unwrap()
            })
            .collect();
        let reports = verify_all(TheoremId::Cor43a, &cases);
        let one_by_one: Vec<_> = cases.iter().map(|c| verify(TheoremId::Cor43a, c).unwrap()).collect();
        for (r, s) in reports.into_iter().zip(one_by_one) {
            let r = r.unwrap();
            assert!(r.matched);
            assert_eq!(r, s);
        }
    }
}
