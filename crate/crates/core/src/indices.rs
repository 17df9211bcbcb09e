//! Multiplicative Zagreb indices and the Narumi–Katayama product.
//!
//! Every index here is a product of degree powers, so it is evaluated two ways:
//! exactly with arbitrary-precision integers (integer exponents only) and as a
//! sum of logarithms. [`compare_values`] picks the exact route when it can.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::IndexError;
use crate::graph::{DegreeSequence, Graph};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum IndexFamily {
    /// Product of `d(v)^c` over vertices.
    #[serde(rename = "PI1C")]
    Pi1c,
    /// Product of `d(u) d(v)` over edges.
    #[serde(rename = "PI2")]
    Pi2,
    /// Product of degrees.
    #[serde(rename = "NK")]
    Nk,
}

impl IndexFamily {
    pub fn name(self) -> &'static str {
        match self {
            IndexFamily::Pi1c => "PI1C",
            IndexFamily::Pi2 => "PI2",
            IndexFamily::Nk => "NK",
        }
    }
}

impl fmt::Display for IndexFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for IndexFamily {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_uppercase().as_str() {
            "PI1C" | "PI1" => Ok(IndexFamily::Pi1c),
            "PI2" => Ok(IndexFamily::Pi2),
            "NK" => Ok(IndexFamily::Nk),
            other => Err(format!("unknown index family {other:?} (expected PI1C, PI2 or NK)")),
        }
    }
}

/// Family plus exponent. `c` is ignored by `Pi2` and forced to 1 by `Nk`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IndexParams<F> {
    pub family: IndexFamily,
    pub c: F,
}

impl<F: Scalar> IndexParams<F> {
    pub fn new(family: IndexFamily, c: F) -> Result<Self, IndexError> {
        check_exponent(c)?;
        Ok(IndexParams { family, c })
    }

    pub fn pi1c(c: F) -> Result<Self, IndexError> {
        Self::new(IndexFamily::Pi1c, c)
    }

    pub fn pi2() -> Self {
        IndexParams {
            family: IndexFamily::Pi2,
            c: F::one(),
        }
    }

    pub fn nk() -> Self {
        IndexParams {
            family: IndexFamily::Nk,
            c: F::one(),
        }
    }

    /// Exponent actually applied to each `ln d(v)` term (Pi2 uses `d(v)`).
    pub fn effective_c(&self) -> F {
        match self.family {
            IndexFamily::Nk => F::one(),
            _ => self.c,
        }
    }
}

/// Which representations to compute.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IndexMode {
    Exact,
    Log,
    /// Log always; exact whenever the exponent is an integer.
    Both,
}

/// An index value in exact and/or log-domain form.
#[derive(Clone, Debug, PartialEq)]
pub struct IndexValue<F> {
    pub exact: Option<BigUint>,
    /// Natural logarithm of the value.
    pub logval: Option<F>,
}

impl<F: Scalar> IndexValue<F> {
    pub fn from_exact(x: BigUint) -> Self {
        IndexValue {
            exact: Some(x),
            logval: None,
        }
    }

    pub fn from_log(l: F) -> Self {
        IndexValue {
            exact: None,
            logval: Some(l),
        }
    }

    pub fn mode(&self) -> Option<IndexMode> {
        match (&self.exact, &self.logval) {
            (Some(_), Some(_)) => Some(IndexMode::Both),
            (Some(_), None) => Some(IndexMode::Exact),
            (None, Some(_)) => Some(IndexMode::Log),
            (None, None) => None,
        }
    }

    /// Natural log, from `logval` or else derived from the exact value.
    pub fn ln(&self) -> Option<F> {
        self.logval.or_else(|| self.exact.as_ref().and_then(ln_biguint))
    }

    pub fn log10(&self) -> Option<F> {
        self.ln().map(|l| l / F::from_f64_lossy(std::f64::consts::LN_10))
    }

    /// True when both forms are present and agree to a relative `1e-9`
    /// (scaled by `max(1, |logval|)`).
    pub fn is_consistent(&self) -> bool {
        match (&self.exact, self.logval) {
            (Some(x), Some(l)) => match ln_biguint::<F>(x) {
                Some(lx) => {
                    (lx - l).abs() <= F::compare_tolerance() * F::one().max(l.abs())
                }
                None => false,
            },
            _ => true,
        }
    }
}

impl<F: Scalar> fmt::Display for IndexValue<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.exact, self.log10()) {
            (Some(x), _) => write!(f, "{x}"),
            (None, Some(l)) => write!(f, "10^{l:.9}"),
            (None, None) => f.write_str("undefined"),
        }
    }
}

/// `ln x` for an arbitrary-precision integer; `None` for zero.
pub fn ln_biguint<F: Scalar>(x: &BigUint) -> Option<F> {
    if x.is_zero() {
        return None;
    }
    let bits = x.bits();
    // keep 64 significant bits, account for the rest as a power of two
    let shift = bits.saturating_sub(64);
    let top = (x >> shift).iter_u64_digits().next().unwrap_or(0);
    let l = (top as f64).ln() + (shift as f64) * std::f64::consts::LN_2;
    Some(F::from_f64_lossy(l))
}

fn check_exponent<F: Scalar>(c: F) -> Result<(), IndexError> {
    if c > F::zero() && c.is_finite() {
        Ok(())
    } else {
        Err(IndexError::NonPositiveExponent(format!("{c}")))
    }
}

fn first_zero_degree(degrees: &[usize]) -> Option<usize> {
    degrees.iter().position(|&d| d == 0)
}

/// Product of `d^(c·w)` where each term carries its own integer weight `w`.
fn exact_weighted_product(terms: &[(usize, u32)]) -> BigUint {
    terms.iter().fold(BigUint::one(), |acc, &(d, w)| {
        acc * BigUint::from(d).pow(w)
    })
}

/// Π d(v)^c over a degree list.
pub fn pi1c_from_degrees<F: Scalar>(
    degrees: &[usize],
    c: F,
    mode: IndexMode,
) -> Result<IndexValue<F>, IndexError> {
    check_exponent(c)?;
    let ce = c.as_exact_exponent();
    let exact = match (mode, ce) {
        (IndexMode::Log, _) => None,
        (IndexMode::Exact, None) => return Err(IndexError::NonIntegerExact(format!("{c}"))),
        (_, Some(e)) => Some(exact_weighted_product(
            &degrees.iter().map(|&d| (d, e)).collect::<Vec<_>>(),
        )),
        (IndexMode::Both, None) => None,
    };
    let logval = match mode {
        IndexMode::Exact => None,
        _ => {
            if let Some(v) = first_zero_degree(degrees) {
                return Err(IndexError::ZeroDegree(v));
            }
            Some(c * degrees.iter().map(|&d| F::from_usize_lossy(d).ln()).fold(F::zero(), |a, b| a + b))
        }
    };
    Ok(IndexValue { exact, logval })
}

/// Π d(v)^d(v) over a degree list.
pub fn pi2_from_degrees<F: Scalar>(
    degrees: &[usize],
    mode: IndexMode,
) -> Result<IndexValue<F>, IndexError> {
    let exact = match mode {
        IndexMode::Log => None,
        _ => Some(exact_weighted_product(
            &degrees.iter().map(|&d| (d, d as u32)).collect::<Vec<_>>(),
        )),
    };
    let logval = match mode {
        IndexMode::Exact => None,
        _ => {
            if let Some(v) = first_zero_degree(degrees) {
                return Err(IndexError::ZeroDegree(v));
            }
            Some(degrees.iter().fold(F::zero(), |a, &d| {
                let x = F::from_usize_lossy(d);
                a + x * x.ln()
            }))
        }
    };
    Ok(IndexValue { exact, logval })
}

/// Generalized first multiplicative Zagreb index `Π d(v)^c`.
pub fn index_pi1c<F: Scalar>(g: &Graph, c: F, mode: IndexMode) -> Result<IndexValue<F>, IndexError> {
    pi1c_from_degrees(&g.degree_sequence(), c, mode)
}

/// Second multiplicative Zagreb index. The exact value is formed both as the
/// edge product `Π d(u) d(v)` and as the vertex product `Π d(v)^d(v)`; the two
/// must coincide.
pub fn index_pi2<F: Scalar>(g: &Graph, mode: IndexMode) -> Result<IndexValue<F>, IndexError> {
    let degrees = g.degree_sequence();
    let value = pi2_from_degrees(&degrees, mode)?;
    if let Some(vertex_form) = &value.exact {
        let edge_form = g.edges().iter().fold(BigUint::one(), |acc, &(u, v)| {
            acc * BigUint::from(degrees[u] * degrees[v])
        });
        assert_eq!(&edge_form, vertex_form, "edge and vertex forms of PI2 disagree");
    }
    Ok(value)
}

/// Narumi–Katayama index `Π d(v)`.
pub fn index_nk<F: Scalar>(g: &Graph, mode: IndexMode) -> Result<IndexValue<F>, IndexError> {
    index_pi1c(g, F::one(), mode)
}

/// Dispatch on [`IndexParams`].
pub fn index_value<F: Scalar>(
    g: &Graph,
    params: IndexParams<F>,
    mode: IndexMode,
) -> Result<IndexValue<F>, IndexError> {
    degrees_value(&g.degree_sequence(), params, mode)
}

pub fn degrees_value<F: Scalar>(
    degrees: &[usize],
    params: IndexParams<F>,
    mode: IndexMode,
) -> Result<IndexValue<F>, IndexError> {
    match params.family {
        IndexFamily::Pi1c => pi1c_from_degrees(degrees, params.c, mode),
        IndexFamily::Nk => pi1c_from_degrees(degrees, F::one(), mode),
        IndexFamily::Pi2 => pi2_from_degrees(degrees, mode),
    }
}

/// Log-domain value only; the fast path for search and scans.
pub fn log_index<F: Scalar>(degrees: &[usize], params: IndexParams<F>) -> Result<F, IndexError> {
    let v = degrees_value(degrees, params, IndexMode::Log)?;
    Ok(v.logval.expect("log mode yields logval"))
}

/// Degrees of the k-star on `n >= k + 1` vertices: the base clique has degree
/// `n - 1`, every other vertex degree `k`.
pub fn star_degrees(k: usize, n: usize) -> Result<DegreeSequence, IndexError> {
    if k == 0 || n <= k {
        return Err(IndexError::Domain { k, n });
    }
    let mut d = vec![n - 1; k];
    d.extend(std::iter::repeat_n(k, n - k));
    Ok(DegreeSequence(d))
}

/// Degrees of the k-path on `n >= k` vertices, in generator order.
pub fn path_degrees(k: usize, n: usize) -> Result<DegreeSequence, IndexError> {
    if k == 0 || n < k {
        return Err(IndexError::Domain { k, n });
    }
    if n == k {
        return Ok(DegreeSequence(vec![k - 1; k]));
    }
    // 1-based vertex positions
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
    Ok(DegreeSequence(d))
}

/// Closed form over a list of `(base, multiplicity)` blocks: each block
/// contributes `base^mult` vertices of degree `base`.
fn closed_from_blocks<F: Scalar>(
    blocks: &[(usize, usize)],
    params: IndexParams<F>,
) -> IndexValue<F> {
    let c = params.effective_c();
    let ce = c.as_exact_exponent();
    let exact = match params.family {
        IndexFamily::Pi2 => Some(blocks.iter().fold(BigUint::one(), |acc, &(b, m)| {
            acc * BigUint::from(b).pow((b * m) as u32)
        })),
        _ => ce.map(|e| {
            blocks.iter().fold(BigUint::one(), |acc, &(b, m)| {
                acc * BigUint::from(b).pow(e * m as u32)
            })
        }),
    };
    let logval = blocks.iter().fold(F::zero(), |acc, &(b, m)| {
        let x = F::from_usize_lossy(b);
        let mf = F::from_usize_lossy(m);
        match params.family {
            IndexFamily::Pi2 => acc + mf * x * x.ln(),
            _ => acc + c * mf * x.ln(),
        }
    });
    IndexValue {
        exact,
        logval: Some(logval),
    }
}

/// Closed-form index of the k-star, `n >= k + 1`:
/// `Π1,c = (n-1)^{ck} k^{c(n-k)}` and `Π2 = (n-1)^{k(n-1)} k^{k(n-k)}`.
pub fn closed_form_star<F: Scalar>(
    k: usize,
    n: usize,
    params: IndexParams<F>,
) -> Result<IndexValue<F>, IndexError> {
    if k == 0 || n < k + 1 {
        return Err(IndexError::Domain { k, n });
    }
    Ok(closed_from_blocks(&[(n - 1, k), (k, n - k)], params))
}

/// Closed-form index of the k-path, `n >= k + 1`.
///
/// For `n >= 2k + 1` the degrees are `k..2k-1` twice plus `n - 2k` copies of
/// `2k`. For `k + 1 <= n <= 2k` they are `k..n-2` twice plus `2k + 2 - n`
/// copies of `n - 1`.
pub fn closed_form_path<F: Scalar>(
    k: usize,
    n: usize,
    params: IndexParams<F>,
) -> Result<IndexValue<F>, IndexError> {
    if k == 0 || n < k + 1 {
        return Err(IndexError::Domain { k, n });
    }
    let mut blocks = Vec::new();
    if n > 2 * k {
        blocks.push((2 * k, n - 2 * k));
        blocks.extend((k..2 * k).map(|i| (i, 2)));
    } else {
        blocks.push((n - 1, 2 * k + 2 - n));
        blocks.extend((k..n - 1).map(|i| (i, 2)));
    }
    Ok(closed_from_blocks(&blocks, params))
}

/// Exact comparison when both sides are exact, otherwise log-domain comparison
/// with the scalar's absolute tolerance.
pub fn compare_values<F: Scalar>(a: &IndexValue<F>, b: &IndexValue<F>) -> Ordering {
    if let (Some(x), Some(y)) = (&a.exact, &b.exact) {
        return x.cmp(y);
    }
    match (a.ln(), b.ln()) {
        (Some(x), Some(y)) => {
            if (x - y).abs() <= F::compare_tolerance() {
                Ordering::Equal
            } else if x < y {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        }
        // a zero exact value has no logarithm and is the smallest possible
        (None, Some(_)) => Ordering::Less,
        (Some(_), None) => Ordering::Greater,
        (None, None) => Ordering::Equal,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type V = IndexValue<f64>;

    fn p5_2() -> Graph {
        Graph::from_edges(5, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (2, 4), (3, 4)]).unwrap()
    }

    fn s23() -> Graph {
        Graph::from_edges(5, &[(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (0, 4), (1, 4)]).unwrap()
    }

    fn star5() -> Graph {
        Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap()
    }

    // independent oracle: repeated u128 multiplication
    fn oracle_pow_product(degrees: &[usize], exp: impl Fn(usize) -> u32) -> u128 {
        let mut acc: u128 = 1;
        for &d in degrees {
            for _ in 0..exp(d) {
                acc *= d as u128;
            }
        }
        acc
    }

    fn exact(v: &V) -> u128 {
        v.exact.as_ref().unwrap().to_string().parse().unwrap()
    }

    #[test]
    fn pi1c_examples() {
        let k3 = Graph::complete(3);
        assert_eq!(exact(&index_pi1c(&k3, 1.0, IndexMode::Both).unwrap()), 8);
        let p = index_pi1c(&p5_2(), 1.0, IndexMode::Both).unwrap();
        assert_eq!(exact(&p), oracle_pow_product(&[2, 3, 4, 3, 2], |_| 1));
        assert_eq!(exact(&p), 144);
        let s = index_pi1c(&s23(), 2.0, IndexMode::Both).unwrap();
        assert_eq!(exact(&s), 16384);
        assert_eq!(exact(&s), exact(&index_nk(&s23(), IndexMode::Both).unwrap()).pow(2));
    }

    #[test]
    fn pi2_examples() {
        let f = |d: usize| d as u32;
        assert_eq!(exact(&index_pi2(&Graph::complete(3), IndexMode::Both).unwrap()), 64);
        let p = exact(&index_pi2(&p5_2(), IndexMode::Both).unwrap());
        assert_eq!(p, oracle_pow_product(&[2, 3, 4, 3, 2], f));
        assert_eq!(p, 2_985_984);
        let s = exact(&index_pi2(&s23(), IndexMode::Both).unwrap());
        assert_eq!(s, oracle_pow_product(&[4, 4, 2, 2, 2], f));
        assert_eq!(s, 4_194_304);
    }

    #[test]
    fn nk_examples() {
        assert_eq!(exact(&index_nk(&p5_2(), IndexMode::Both).unwrap()), 144);
        assert_eq!(exact(&index_nk(&star5(), IndexMode::Both).unwrap()), 4);
        for k in 2..6usize {
            let v = index_nk::<f64>(&Graph::complete(k), IndexMode::Both).unwrap();
            assert_eq!(exact(&v), ((k - 1) as u128).pow(k as u32));
        }
    }

    #[test]
    fn exponent_and_degree_errors() {
        let g = p5_2();
        assert!(matches!(
            index_pi1c(&g, 0.0, IndexMode::Both),
            Err(IndexError::NonPositiveExponent(_))
        ));
        assert!(matches!(
            index_pi1c(&g, -1.0, IndexMode::Log),
            Err(IndexError::NonPositiveExponent(_))
        ));
        assert!(matches!(
            index_pi1c(&g, 0.5, IndexMode::Exact),
            Err(IndexError::NonIntegerExact(_))
        ));
        let lonely = Graph::empty(1);
        assert_eq!(
            index_pi1c(&lonely, 1.0, IndexMode::Log),
            Err(IndexError::ZeroDegree(0))
        );
        let zero = index_pi1c::<f64>(&lonely, 1.0, IndexMode::Exact).unwrap();
        assert!(zero.exact.unwrap().is_zero());
        let half = index_pi1c(&g, 0.5, IndexMode::Both).unwrap();
        assert!(half.exact.is_none());
        assert!((half.logval.unwrap() - 0.5 * 144f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn degree_formulas() {
        assert_eq!(star_degrees(1, 5).unwrap().0, vec![4, 1, 1, 1, 1]);
        assert_eq!(star_degrees(2, 5).unwrap().0, vec![4, 4, 2, 2, 2]);
        assert_eq!(star_degrees(3, 4).unwrap().0, vec![3, 3, 3, 3]);
        assert!(star_degrees(3, 3).is_err());
        assert_eq!(path_degrees(2, 6).unwrap().0, vec![2, 3, 4, 4, 3, 2]);
        assert_eq!(path_degrees(2, 4).unwrap().0, vec![2, 3, 3, 2]);
        assert_eq!(path_degrees(4, 5).unwrap().0, vec![4, 4, 4, 4, 4]);
        assert_eq!(path_degrees(3, 3).unwrap().0, vec![2, 2, 2]);
    }

    #[test]
    fn closed_form_examples() {
        let pi1 = |c: f64| IndexParams::pi1c(c).unwrap();
        let pi2 = IndexParams::<f64>::pi2();
        assert_eq!(exact(&closed_form_star(1, 5, pi1(2.0)).unwrap()), 16);
        assert_eq!(exact(&closed_form_star(2, 5, pi1(1.0)).unwrap()), 128);
        assert_eq!(exact(&closed_form_star(2, 5, pi2).unwrap()), 4_194_304);
        assert_eq!(
            exact(&closed_form_star(2, 5, pi2).unwrap()),
            oracle_pow_product(&[4, 4, 2, 2, 2], |d| d as u32)
        );
        assert_eq!(exact(&closed_form_path(2, 6, pi1(1.0)).unwrap()), 576);
        assert_eq!(exact(&closed_form_path(2, 6, pi2).unwrap()), 764_411_904);
        assert_eq!(exact(&closed_form_path(2, 4, pi1(1.0)).unwrap()), 36);
        assert!(closed_form_path(2, 2, pi2).is_err());
    }

    #[test]
    fn comparisons() {
        let a = V::from_exact(BigUint::from(128u32));
        let b = V::from_exact(BigUint::from(144u32));
        assert_eq!(compare_values(&a, &b), Ordering::Less);
        assert_eq!(compare_values(&b, &a), Ordering::Greater);
        assert_eq!(compare_values(&a, &a.clone()), Ordering::Equal);
        let x = V::from_log(10.0);
        let y = V::from_log(10.0 + 1e-12);
        assert_eq!(compare_values(&x, &y), Ordering::Equal);
        let z = V::from_log(10.0 + 1e-6);
        assert_eq!(compare_values(&x, &z), Ordering::Less);
    }

    #[test]
    fn big_logs_are_consistent() {
        let big = BigUint::from(12u32).pow(400);
        let l: f64 = ln_biguint(&big).unwrap();
        assert!((l - 400.0 * 12f64.ln()).abs() < 1e-9 * l);
        let v = IndexValue {
            exact: Some(big),
            logval: Some(400.0 * 12f64.ln()),
        };
        assert!(v.is_consistent());
    }

    #[test]
    fn generic_over_f32() {
        let v: IndexValue<f32> = index_pi1c(&p5_2(), 1.0f32, IndexMode::Both).unwrap();
        assert!(v.is_consistent());
        assert_eq!(v.exact.unwrap(), BigUint::from(144u32));
    }
}
