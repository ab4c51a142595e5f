//! Exact polynomials in q with arbitrary-precision integer coefficients.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::packed::PackedShape;
use crate::shapes::SkewShape;
use crate::tableau::{for_each_ssyt, Tableau};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse polynomial {input:?}: {reason}")]
pub struct PolyParseError {
    pub input: String,
    pub reason: String,
}

/// Sparse polynomial Σ cₑ qᵉ. Zero coefficients are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct QPolynomial {
    coeffs: BTreeMap<u64, BigInt>,
}

/// Which principal specialization a tableau statistic realises.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Convention {
    /// Σⱼ (j−1)·wⱼ(T), i.e. xⱼ = q^{j−1}.
    ZeroBased,
    /// Σⱼ j·wⱼ(T), i.e. xⱼ = qʲ.
    OneBased,
}

impl Convention {
    pub fn as_str(self) -> &'static str {
        match self {
            Convention::ZeroBased => "zero-based",
            Convention::OneBased => "one-based",
        }
    }

    /// Exponent contributed by the weight vector `w`.
    pub fn statistic(self, w: &[u32]) -> u64 {
        let base = match self {
            Convention::ZeroBased => 0,
            Convention::OneBased => 1,
        };
        w.iter()
            .enumerate()
            .map(|(j, &a)| (j as u64 + base) * u64::from(a))
            .sum()
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Convention {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "zero-based" => Ok(Convention::ZeroBased),
            "one-based" => Ok(Convention::OneBased),
            other => Err(format!("unknown convention {other:?}")),
        }
    }
}

impl QPolynomial {
    pub fn zero() -> Self {
        QPolynomial::default()
    }

    pub fn one() -> Self {
        QPolynomial::monomial(0, 1)
    }

    pub fn monomial(exponent: u64, coeff: impl Into<BigInt>) -> Self {
        let mut p = QPolynomial::zero();
        p.add_term(exponent, coeff.into());
        p
    }

    /// From ascending coefficients c₀, c₁, ….
    pub fn from_dense<T: Into<BigInt>>(coeffs: impl IntoIterator<Item = T>) -> Self {
        let mut p = QPolynomial::zero();
        for (e, c) in coeffs.into_iter().enumerate() {
            p.add_term(e as u64, c.into());
        }
        p
    }

    /// From a histogram of exponents: each occurrence contributes +1.
    pub fn from_counts(counts: &BTreeMap<u64, u64>) -> Self {
        let mut p = QPolynomial::zero();
        for (&e, &c) in counts {
            p.add_term(e, BigInt::from(c));
        }
        p
    }

    pub fn add_term(&mut self, exponent: u64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(exponent).or_insert_with(BigInt::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.coeffs.remove(&exponent);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exponent: u64) -> BigInt {
        self.coeffs.get(&exponent).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, &BigInt)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn degree(&self) -> Option<u64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn min_degree(&self) -> Option<u64> {
        self.coeffs.keys().next().copied()
    }

    /// Ascending coefficients c₀ … c_deg; empty for the zero polynomial.
    pub fn dense(&self) -> Vec<BigInt> {
        self.dense_len(self.degree().map_or(0, |d| d as usize + 1))
    }

    /// Ascending coefficients padded (or truncated) to `len` entries.
    pub fn dense_len(&self, len: usize) -> Vec<BigInt> {
        (0..len as u64).map(|e| self.coeff(e)).collect()
    }

    /// f(1), the sum of the coefficients.
    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    /// f(−1).
    pub fn eval_at_minus_one(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(|(e, c)| if e % 2 == 0 { c.clone() } else { -c })
            .sum()
    }

    pub fn scale(&self, factor: &BigInt) -> Self {
        if factor.is_zero() {
            return QPolynomial::zero();
        }
        QPolynomial {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&e, c)| (e, c * factor))
                .collect(),
        }
    }

    /// qᵏ·f.
    pub fn shift_up(&self, k: u64) -> Self {
        QPolynomial {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// q⁻ᵏ·f, or `None` when that has a negative exponent.
    pub fn shift_down(&self, k: u64) -> Option<Self> {
        if self.min_degree().is_some_and(|m| m < k) {
            return None;
        }
        Some(QPolynomial {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e - k, c.clone())).collect(),
        })
    }

    /// Ascending dense text `"c0 c1 c2 …"`; the zero polynomial is `"0"`.
    pub fn to_dense_string(&self) -> String {
        let d = self.dense();
        if d.is_empty() {
            return "0".to_string();
        }
        d.iter().map(BigInt::to_string).collect::<Vec<_>>().join(" ")
    }

    /// Sparse text `"e:c,e:c"`; the zero polynomial is the empty string.
    pub fn to_sparse_string(&self) -> String {
        self.coeffs
            .iter()
            .map(|(e, c)| format!("{e}:{c}"))
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Parses either text form. A `:` selects the sparse form.
    pub fn parse(input: &str) -> Result<Self, PolyParseError> {
        let err = |reason: String| PolyParseError {
            input: input.to_string(),
            reason,
        };
        let s = input.trim();
        let mut p = QPolynomial::zero();
        if s.contains(':') {
            for term in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
                let (e, c) = term
                    .split_once(':')
                    .ok_or_else(|| err(format!("term {term:?} lacks ':'")))?;
                let e: u64 = e.trim().parse().map_err(|x| err(format!("{e:?}: {x}")))?;
                let c: BigInt = c.trim().parse().map_err(|x| err(format!("{c:?}: {x}")))?;
                p.add_term(e, c);
            }
        } else {
            for (e, c) in s.split_whitespace().enumerate() {
                let c: BigInt = c.parse().map_err(|x| err(format!("{c:?}: {x}")))?;
                p.add_term(e as u64, c);
            }
        }
        Ok(p)
    }
}

impl Add for &QPolynomial {
    type Output = QPolynomial;

    fn add(self, rhs: &QPolynomial) -> QPolynomial {
        let mut out = self.clone();
        for (&e, c) in &rhs.coeffs {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Neg for &QPolynomial {
    type Output = QPolynomial;

    fn neg(self) -> QPolynomial {
        QPolynomial {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }
}

impl Sub for &QPolynomial {
    type Output = QPolynomial;

    fn sub(self, rhs: &QPolynomial) -> QPolynomial {
        self + &(-rhs)
    }
}

impl Mul for &QPolynomial {
    type Output = QPolynomial;

    fn mul(self, rhs: &QPolynomial) -> QPolynomial {
        let mut out = QPolynomial::zero();
        for (&a, x) in &self.coeffs {
            for (&b, y) in &rhs.coeffs {
                out.add_term(a + b, x * y);
            }
        }
        out
    }
}

impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (k, (&e, c)) in self.coeffs.iter().enumerate() {
            let mag = c.abs();
            if k == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let show_coeff = e == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match e {
                0 => {}
                1 => write!(f, "q")?,
                _ => write!(f, "q^{e}")?,
            }
        }
        Ok(())
    }
}

/// Σ_T q^{stat(T)} over `tableaux`.
pub fn statistic_gf(tableaux: &[Tableau], convention: Convention) -> QPolynomial {
    let mut counts = BTreeMap::new();
    for t in tableaux {
        *counts
            .entry(convention.statistic(t.weight().entries()))
            .or_insert(0u64) += 1;
    }
    QPolynomial::from_counts(&counts)
}

/// s_{λ/μ}(1, q, …, q^{n−1}) (zero-based) or s_{λ/μ}(q, …, qⁿ) (one-based), by enumeration.
pub fn principal_specialization(
    shape: &SkewShape,
    n: usize,
    convention: Convention,
) -> QPolynomial {
    let mut counts = BTreeMap::new();
    if let Some(ps) = PackedShape::new(shape, n) {
        // The one-based statistic is the entry sum; the zero-based one is m less.
        let offset = match convention {
            Convention::OneBased => 0,
            Convention::ZeroBased => shape.size() as u64,
        };
        let mut sums = vec![0u64; shape.size() * n + 1];
        ps.for_each(|w| sums[ps.entry_sum(w) as usize] += 1);
        for (s, &c) in sums.iter().enumerate().filter(|(_, &c)| c > 0) {
            counts.insert(s as u64 - offset, c);
        }
        return QPolynomial::from_counts(&counts);
    }
    let mut w = vec![0u32; n];
    for_each_ssyt(shape, n, |entries| {
        w.iter_mut().for_each(|x| *x = 0);
        for &v in entries {
            w[v as usize - 1] += 1;
        }
        *counts.entry(convention.statistic(&w)).or_insert(0u64) += 1;
    });
    QPolynomial::from_counts(&counts)
}

/// [n]_q = 1 + q + ⋯ + q^{n−1}.
pub fn q_integer(n: u64) -> QPolynomial {
    QPolynomial::from_dense((0..n).map(|_| 1))
}

/// Canonical representative of f modulo qⁿ − 1 (all exponents below n).
pub fn reduce_mod_cyclic(f: &QPolynomial, n: u64) -> QPolynomial {
    let mut out = QPolynomial::zero();
    for (e, c) in f.terms() {
        out.add_term(e % n, c.clone());
    }
    out
}

/// Some(c) when f ≡ c·[n]_q (mod qⁿ − 1) for an integer c ≥ 0.
pub fn multiple_of_q_integer(f: &QPolynomial, n: u64) -> Option<BigInt> {
    let reduced = reduce_mod_cyclic(f, n);
    let c = reduced.coeff(0);
    if c.is_negative() {
        return None;
    }
    (0..n).all(|e| reduced.coeff(e) == c).then_some(c)
}

/// Remainder of f modulo a monic polynomial `m`.
pub(crate) fn rem_monic(f: &QPolynomial, m: &QPolynomial) -> QPolynomial {
    let dm = m.degree().expect("nonzero modulus");
    debug_assert!(m.coeff(dm).is_one());
    let mut r = f.clone();
    while let Some(dr) = r.degree() {
        if dr < dm {
            break;
        }
        let lead = r.coeff(dr);
        r = &r - &m.shift_up(dr - dm).scale(&lead);
    }
    r
}

/// The cyclotomic polynomial Φ_d, by dividing qᵈ − 1 by Φ_e for the proper divisors e of d.
pub(crate) fn cyclotomic(d: u64) -> QPolynomial {
    thread_local! {
        static CACHE: RefCell<HashMap<u64, QPolynomial>> = RefCell::new(HashMap::new());
    }
    if let Some(p) = CACHE.with(|c| c.borrow().get(&d).cloned()) {
        return p;
    }
    let mut p = &QPolynomial::monomial(d, 1) - &QPolynomial::one();
    for e in (1..d).filter(|e| d.is_multiple_of(*e)) {
        p = div_exact_monic(&p, &cyclotomic(e));
    }
    CACHE.with(|c| c.borrow_mut().insert(d, p.clone()));
    p
}

fn div_exact_monic(f: &QPolynomial, m: &QPolynomial) -> QPolynomial {
    let dm = m.degree().expect("nonzero modulus");
    let mut r = f.clone();
    let mut quot = QPolynomial::zero();
    while let Some(dr) = r.degree() {
        if dr < dm {
            break;
        }
        let lead = r.coeff(dr);
        quot.add_term(dr - dm, lead.clone());
        r = &r - &m.shift_up(dr - dm).scale(&lead);
    }
    debug_assert!(r.is_zero());
    quot
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(coeffs: &[i64]) -> QPolynomial {
        QPolynomial::from_dense(coeffs.iter().copied())
    }

    #[test]
    fn no_zero_coefficients_stored() {
        let mut f = p(&[1, 0, 2]);
        assert_eq!(f.terms().count(), 2);
        f.add_term(2, BigInt::from(-2));
        assert_eq!(f, QPolynomial::one());
        assert_eq!(&f - &f, QPolynomial::zero());
    }

    #[test]
    fn statistic_gf_examples() {
        let ts: Vec<Tableau> = ["1,1", "2,2", "3,3"]
            .iter()
            .map(|s| Tableau::parse(s, 3).unwrap())
            .collect();
        assert_eq!(
            statistic_gf(&ts, Convention::OneBased),
            p(&[0, 0, 1, 0, 1, 0, 1])
        );
        assert!(statistic_gf(&[], Convention::OneBased).is_zero());
        let superstandard = Tableau::parse("1,1,1;2", 2).unwrap();
        assert_eq!(
            statistic_gf(&[superstandard], Convention::ZeroBased),
            QPolynomial::monomial(1, 1)
        );
    }

    #[test]
    fn principal_specialization_examples() {
        let s21 = SkewShape::parse("2,1", "").unwrap();
        assert_eq!(
            principal_specialization(&s21, 3, Convention::ZeroBased),
            p(&[0, 1, 2, 2, 2, 1])
        );
        let s1 = SkewShape::parse("1", "").unwrap();
        assert_eq!(
            principal_specialization(&s1, 2, Convention::ZeroBased),
            p(&[1, 1])
        );
        let skew = SkewShape::parse("3,2,2", "1").unwrap();
        assert_eq!(
            principal_specialization(&skew, 4, Convention::OneBased),
            principal_specialization(&skew, 4, Convention::ZeroBased).shift_up(6)
        );
    }

    #[test]
    fn q_integer_examples() {
        assert_eq!(q_integer(3), p(&[1, 1, 1]));
        assert_eq!(q_integer(1), QPolynomial::one());
        assert_eq!(q_integer(7).eval_at_one(), BigInt::from(7));
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(reduce_mod_cyclic(&p(&[0, 0, 1, 0, 1, 0, 1]), 3), p(&[1, 1, 1]));
        assert_eq!(reduce_mod_cyclic(&p(&[7]), 5), p(&[7]));
        assert_eq!(
            reduce_mod_cyclic(&QPolynomial::monomial(4, 1), 4),
            QPolynomial::one()
        );
    }

    #[test]
    fn multiple_examples() {
        assert_eq!(
            multiple_of_q_integer(&p(&[0, 0, 1, 0, 1, 0, 1]), 3),
            Some(BigInt::from(1))
        );
        for n in 1..6 {
            assert_eq!(
                multiple_of_q_integer(&q_integer(n).scale(&BigInt::from(5)), n),
                Some(BigInt::from(5))
            );
        }
        assert_eq!(multiple_of_q_integer(&p(&[1, 1]), 3), None);
        assert_eq!(multiple_of_q_integer(&p(&[-1, -1]), 2), None);
        assert_eq!(multiple_of_q_integer(&QPolynomial::zero(), 2), Some(BigInt::zero()));
    }

    #[test]
    fn text_forms() {
        let f = p(&[0, 1, 2, 2, 2, 1]);
        assert_eq!(f.to_dense_string(), "0 1 2 2 2 1");
        assert_eq!(f.to_sparse_string(), "1:1,2:2,3:2,4:2,5:1");
        assert_eq!(QPolynomial::parse("0 1 2 2 2 1").unwrap(), f);
        assert_eq!(QPolynomial::parse("1:1,2:2,3:2,4:2,5:1").unwrap(), f);
        assert_eq!(f.to_string(), "q + 2q^2 + 2q^3 + 2q^4 + q^5");
        assert_eq!(p(&[-3, 0, -1]).to_string(), "-3 - q^2");
        assert!(QPolynomial::parse("1:x").is_err());
        assert!(QPolynomial::parse("1 2 z").is_err());
        let big = QPolynomial::parse("0:123456789012345678901234567890").unwrap();
        assert_eq!(big.to_sparse_string(), "0:123456789012345678901234567890");
    }

    #[test]
    fn shifts() {
        let f = p(&[0, 0, 1, 3]);
        assert_eq!(f.shift_down(2), Some(p(&[1, 3])));
        assert_eq!(f.shift_down(3), None);
        assert_eq!(f.shift_down(2).unwrap().shift_up(2), f);
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic(1), p(&[-1, 1]));
        assert_eq!(cyclotomic(2), p(&[1, 1]));
        assert_eq!(cyclotomic(4), p(&[1, 0, 1]));
        assert_eq!(cyclotomic(6), p(&[1, -1, 1]));
        assert_eq!(rem_monic(&p(&[1, 2, 3]), &cyclotomic(3)), p(&[-2, -1]));
    }

    #[test]
    fn multiplication() {
        assert_eq!(&p(&[1, 1]) * &p(&[1, 1]), p(&[1, 2, 1]));
        assert_eq!(&q_integer(2) * &p(&[1, 0, 1]), q_integer(4));
    }

    #[test]
    fn packed_specialization_matches_statistic_sum() {
        for m in 0..=5 {
            for shape in SkewShape::all_of_size(m) {
                for n in 1..=4 {
                    let set = crate::tableau::enumerate(&shape, n);
                    for conv in [Convention::ZeroBased, Convention::OneBased] {
                        assert_eq!(principal_specialization(&shape, n, conv), statistic_gf(&set, conv));
                    }
                }
            }
        }
    }
}
