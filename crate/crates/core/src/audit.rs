//! Side-by-side evaluation of the literal published closed forms for the
//! k-star and the k-path against direct computation on the generated graphs.
//!
//! Nothing else in the crate uses these literal forms; the rest of the code
//! relies on the construction-checked versions in [`crate::indices`].

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::IndexError;
use crate::graph::DegreeSequence;
use crate::indices::{compare_values, index_value, IndexMode, IndexParams, IndexValue};
use crate::ktree::{gen_kpath, gen_kstar};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub enum AuditQuantity<F> {
    Degrees(DegreeSequence),
    Value(IndexValue<F>),
}

impl<F: Scalar> fmt::Display for AuditQuantity<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AuditQuantity::Degrees(d) => write!(f, "{d}"),
            AuditQuantity::Value(v) => write!(f, "{v}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AuditEntry<F> {
    /// Short identifier, e.g. `star-pi1c`.
    pub item: &'static str,
    /// The literal formula as published.
    pub formula: &'static str,
    pub literal: AuditQuantity<F>,
    pub direct: AuditQuantity<F>,
    pub agrees: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AuditReport<F> {
    pub k: usize,
    pub n: usize,
    pub c: F,
    pub entries: Vec<AuditEntry<F>>,
}

impl<F: Scalar> AuditReport<F> {
    pub fn discrepancies(&self) -> impl Iterator<Item = &AuditEntry<F>> {
        self.entries.iter().filter(|e| !e.agrees)
    }

    pub fn entry(&self, item: &str) -> Option<&AuditEntry<F>> {
        self.entries.iter().find(|e| e.item == item)
    }
}

/// `Π base^(c·mult)` in both exact (integer `c`) and log form.
fn power_blocks<F: Scalar>(blocks: &[(usize, usize)], c: F) -> IndexValue<F> {
    let exact = c.as_exact_exponent().map(|e| {
        blocks
            .iter()
            .fold(BigUint::one(), |acc, &(b, m)| acc * BigUint::from(b).pow(e * m as u32))
    });
    let zero_base = blocks.iter().any(|&(b, m)| b == 0 && m > 0);
    let logval = (!zero_base).then(|| {
        blocks.iter().fold(F::zero(), |acc, &(b, m)| {
            if m == 0 {
                acc
            } else {
                acc + c * F::from_usize_lossy(m) * F::from_usize_lossy(b).ln()
            }
        })
    });
    IndexValue { exact, logval }
}

fn value_entry<F: Scalar>(
    item: &'static str,
    formula: &'static str,
    literal: IndexValue<F>,
    direct: IndexValue<F>,
) -> AuditEntry<F> {
    let agrees = compare_values(&literal, &direct) == Ordering::Equal;
    AuditEntry {
        item,
        formula,
        literal: AuditQuantity::Value(literal),
        direct: AuditQuantity::Value(direct),
        agrees,
    }
}

fn degree_entry<F>(
    item: &'static str,
    formula: &'static str,
    literal: DegreeSequence,
    direct: DegreeSequence,
) -> AuditEntry<F> {
    let agrees = literal == direct;
    AuditEntry {
        item,
        formula,
        literal: AuditQuantity::Degrees(literal),
        direct: AuditQuantity::Degrees(direct),
        agrees,
    }
}

/// Literal path degrees: the short case (`n <= 2k`) and long case
/// (`n >= 2k + 1`) as stated, 1-based positions.
fn literal_path_degrees(k: usize, n: usize) -> DegreeSequence {
    let d = (1..=n)
        .map(|i| {
            if n <= 2 * k {
                if i + k < n {
                    k + i - 1
                } else if i <= k + 1 {
                    n - 1
                } else {
                    k + n - i
                }
            } else if i <= k {
                k + i - 1
            } else if i <= n - k {
                2 * k
            } else {
                k + n - i
            }
        })
        .collect();
    DegreeSequence(d)
}

/// Evaluates the literal published formulas at `(k, n, c)` and compares each
/// with direct computation on the generated k-star and k-path. Needs
/// `n >= k + 1`.
pub fn audit_literal_formulas<F: Scalar>(k: usize, n: usize, c: F) -> Result<AuditReport<F>, IndexError> {
    if k == 0 || n < k + 1 {
        return Err(IndexError::Domain { k, n });
    }
    let pi1 = IndexParams::pi1c(c)?;
    let pi2 = IndexParams::<F>::pi2();
    let star = gen_kstar(k, n).expect("n >= k");
    let path = gen_kpath(k, n).expect("n >= k");
    let direct = |g: &crate::graph::Graph, p: IndexParams<F>| index_value(g, p, IndexMode::Both);
    let one = F::one();
    let mut entries = Vec::new();

    let mut star_lit = vec![n - k; k];
    star_lit.extend(std::iter::repeat_n(k, n - k));
    entries.push(degree_entry(
        "star-degrees",
        "d(v_i) = n-k for i in [1,k]; d(v_i) = k for i in [k+1,n]",
        DegreeSequence(star_lit),
        star.graph().degree_sequence(),
    ));
    entries.push(value_entry(
        "star-pi1c",
        "(n-k)^(ck) * k^(c(n-k))",
        power_blocks(&[(n - k, k), (k, n - k)], c),
        direct(star.graph(), pi1)?,
    ));
    entries.push(value_entry(
        "star-pi2",
        "(n-k)^(k(n-k)) * k^(k(n-k))",
        power_blocks(&[(n - k, k * (n - k)), (k, k * (n - k))], one),
        direct(star.graph(), pi2)?,
    ));

    entries.push(degree_entry(
        "path-degrees",
        "d(v_i) = k+i-1 / n-1 or 2k / k+n-i by position",
        literal_path_degrees(k, n),
        path.graph().degree_sequence(),
    ));
    if n <= 2 * k {
        let mut b1 = vec![(n - 1, 1)];
        b1.extend((k..n - 1).map(|i| (i, 2)));
        entries.push(value_entry(
            "path-pi1c-short",
            "(n-1)^c * prod_{i=k}^{n-2} i^(2c)",
            power_blocks(&b1, c),
            direct(path.graph(), pi1)?,
        ));
        let mut b2 = vec![(n - 1, n - 1)];
        b2.extend((k..n - 1).map(|i| (i, 2 * i)));
        entries.push(value_entry(
            "path-pi2-short",
            "(n-1)^(n-1) * prod_{i=k}^{n-2} i^(2i)",
            power_blocks(&b2, one),
            direct(path.graph(), pi2)?,
        ));
    } else {
        let mut b1 = vec![(2 * k, n - 2 * k)];
        b1.extend((k..2 * k).map(|i| (i, 2)));
        entries.push(value_entry(
            "path-pi1c-long",
            "(2k)^(c(n-2k)) * prod_{i=k}^{2k-1} i^(2c)",
            power_blocks(&b1, c),
            direct(path.graph(), pi1)?,
        ));
        let mut b2 = vec![(2 * k, 2 * k * (n - 2 * k))];
        b2.extend((k..2 * k).map(|i| (i, 2 * i)));
        entries.push(value_entry(
            "path-pi2-long",
            "(2k)^(2k(n-2k)) * prod_{i=k}^{2k-1} i^(2i)",
            power_blocks(&b2, one),
            direct(path.graph(), pi2)?,
        ));
    }
    Ok(AuditReport { k, n, c, entries })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exact_str(q: &AuditQuantity<f64>) -> String {
        match q {
            AuditQuantity::Value(v) => v.exact.as_ref().unwrap().to_string(),
            AuditQuantity::Degrees(d) => d.to_string(),
        }
    }

    #[test]
    fn trees_have_no_discrepancies() {
        for n in 2..12 {
            let r = audit_literal_formulas(1, n, 1.0).unwrap();
            assert_eq!(r.discrepancies().count(), 0, "n = {n}: {r:?}");
        }
    }

    #[test]
    fn star_discrepancies_at_2_5() {
        let r = audit_literal_formulas(2, 5, 1.0).unwrap();
        let e = r.entry("star-pi1c").unwrap();
        assert!(!e.agrees);
        assert_eq!(exact_str(&e.literal), "72");
        assert_eq!(exact_str(&e.direct), "128");
        let e = r.entry("star-pi2").unwrap();
        assert_eq!(exact_str(&e.literal), "46656");
        assert_eq!(exact_str(&e.direct), "4194304");
        assert!(!r.entry("star-degrees").unwrap().agrees);
        // long path forms hold
        assert!(r.entry("path-pi1c-long").unwrap().agrees);
        assert!(r.entry("path-pi2-long").unwrap().agrees);
    }

    #[test]
    fn short_path_discrepancies_at_2_4() {
        let r = audit_literal_formulas(2, 4, 1.0).unwrap();
        let e = r.entry("path-pi1c-short").unwrap();
        assert_eq!((exact_str(&e.literal).as_str(), exact_str(&e.direct).as_str()), ("12", "36"));
        let e = r.entry("path-pi2-short").unwrap();
        assert_eq!((exact_str(&e.literal).as_str(), exact_str(&e.direct).as_str()), ("432", "11664"));
        assert!(r.entry("path-degrees").unwrap().agrees);
    }

    #[test]
    fn non_integer_c_compares_in_log_domain() {
        let r = audit_literal_formulas(1, 6, 0.5).unwrap();
        assert_eq!(r.discrepancies().count(), 0);
        let r = audit_literal_formulas(3, 9, 0.5).unwrap();
        assert!(!r.entry("star-pi1c").unwrap().agrees);
    }

    #[test]
    fn domain_errors() {
        assert!(audit_literal_formulas(3, 3, 1.0).is_err());
        assert!(audit_literal_formulas(2, 5, 0.0).is_err());
    }
}
