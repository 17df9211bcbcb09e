use crate::canon::DEFAULT_CANON_BOUND;
use crate::enumerate::{enumerate_unlabeled_with_bound, extremal_scan, EnumerationReport, ExtremalScan};
use crate::error::EnumerateError;
use crate::indices::{IndexFamily, IndexParams};
use crate::scalar::Scalar;

use super::FixedPointClass;

/// One bound checked over a census: where the minimum and maximum fall and
/// whether that matches the expected extremal graphs.
#[derive(Clone, Debug, PartialEq)]
pub struct TheoremCheck<F> {
    pub scan: ExtremalScan<F>,
    pub expected_min: FixedPointClass,
    pub expected_max: FixedPointClass,
    /// The expected classes attain the minimum and the maximum.
    pub holds: bool,
    /// No other class ties with them.
    pub unique: bool,
}

impl<F: Scalar> TheoremCheck<F> {
    fn new(scan: ExtremalScan<F>, expected_min: FixedPointClass, expected_max: FixedPointClass) -> Self {
        let class = |c: FixedPointClass| match c {
            FixedPointClass::Star => scan.star_class,
            FixedPointClass::Path => scan.path_class,
            FixedPointClass::Other => None,
        };
        let at = |want: FixedPointClass, set: &[usize]| class(want).is_some_and(|i| set.contains(&i));
        let holds = at(expected_min, &scan.argmin) && at(expected_max, &scan.argmax);
        let unique = scan.min_unique() && scan.max_unique();
        TheoremCheck { scan, expected_min, expected_max, holds, unique }
    }

    pub fn family(&self) -> IndexFamily {
        self.scan.params.family
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport<F> {
    pub k: usize,
    pub n: usize,
    pub census: EnumerationReport,
    /// `n <= k + 2`: the k-star and the k-path are the same graph.
    pub degenerate: bool,
    /// One `Π1,c` check per requested `c`, then the `Π2` check.
    pub checks: Vec<TheoremCheck<F>>,
}

impl<F: Scalar> VerificationReport<F> {
    /// A bound fails, or (outside the degenerate range) an extremal graph is
    /// not unique.
    pub fn falsified(&self) -> bool {
        self.checks.iter().any(|c| !c.holds || (!self.degenerate && !c.unique))
    }
}

pub fn verify_extremal_theorems<F: Scalar>(
    k: usize,
    n: usize,
    cs: &[F],
) -> Result<VerificationReport<F>, EnumerateError> {
    verify_extremal_theorems_with_bound(k, n, cs, DEFAULT_CANON_BOUND)
}

/// Over every isomorphism class of k-trees on `n` vertices: `Π1,c` is least
/// at the k-star and greatest at the k-path for each `c`, and `Π2` the other
/// way round, each uniquely. Failures are reported, not raised.
pub fn verify_extremal_theorems_with_bound<F: Scalar>(
    k: usize,
    n: usize,
    cs: &[F],
    canon_bound: usize,
) -> Result<VerificationReport<F>, EnumerateError> {
    let census = enumerate_unlabeled_with_bound(k, n, canon_bound)?;
    let mut checks = Vec::with_capacity(cs.len() + 1);
    for &c in cs {
        let params = IndexParams::pi1c(c)?;
        checks.push(TheoremCheck::new(
            extremal_scan(&census, params)?,
            FixedPointClass::Star,
            FixedPointClass::Path,
        ));
    }
    checks.push(TheoremCheck::new(
        extremal_scan(&census, IndexParams::pi2())?,
        FixedPointClass::Path,
        FixedPointClass::Star,
    ));
    Ok(VerificationReport {
        k,
        n,
        census,
        degenerate: n <= k + 2,
        checks,
    })
}
