//! Cyclic sieving checks for the cₙ action.
//!
//! A triple (X, ⟨cₙ⟩, f) is a CSP triple iff
//! f ≡ Σ_orbits Σ_{i<d} q^{i·n/d} (mod qⁿ − 1), where d runs over orbit sizes.
//! Both sides have degree < n after reduction and agree at every n-th root of unity
//! exactly when the fixed-point counts match, so no complex arithmetic is needed.
//! As an independent second route, each value f(ξᵏ) is also computed exactly as the
//! remainder of f modulo the cyclotomic polynomial of the order of ξᵏ and compared with
//! the fixed-point count of cₙᵏ.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::crystal::{c_action, CrystalError};
use crate::qpoly::{
    cyclotomic, multiple_of_q_integer, principal_specialization, q_integer, reduce_mod_cyclic,
    rem_monic, statistic_gf, Convention, QPolynomial,
};
use crate::packed::{CycleError, Packed, PackedShape, MAX_LETTERS};
use crate::shapes::{gcd, SkewShape, WeakComposition};
use crate::tableau::{enumerate, enumerate_content, kostka, Tableau};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CspError {
    #[error(transparent)]
    Crystal(#[from] CrystalError),
    #[error("gcd(|shape|, n) = gcd({size}, {n}) = {gcd} is not 1")]
    Gcd { size: usize, n: usize, gcd: u64 },
    #[error("orbit size {size} does not divide n = {n}")]
    OrbitSize { size: usize, n: usize },
    #[error("c_n maps {tableau} outside the set")]
    NotClosed { tableau: String },
    #[error("set contains a tableau of another shape or alphabet: {tableau}")]
    ForeignElement { tableau: String },
    #[error("f(1) = {f_at_one} but the set has {set_size} elements")]
    CardinalityMismatch { f_at_one: BigInt, set_size: usize },
    #[error("content {content} has length {len}, expected n = {n}")]
    ContentLength {
        content: WeakComposition,
        len: usize,
        n: usize,
    },
    #[error("{tableau} has content in two different cyclic shifts")]
    NotDisjoint { tableau: String },
    #[error("orbit of size {size} in a union where every orbit should have size {n}")]
    OrbitNotFree { size: usize, n: usize },
    #[error("orbit sum reduces to {reduced} mod q^n - 1, expected {kostka}·[n]_q")]
    CorollaryViolation { reduced: String, kostka: u64 },
    #[error("minimal exponent of the specialization is {found:?}, expected n(λ) = {expected}")]
    MinExponent { expected: u64, found: Option<u64> },
    #[error("congruence test and root-of-unity evaluation disagree at k = {k}")]
    Inconsistent { k: usize },
}

/// The cyclotomic-field value of f(ξᵏ): the remainder of f modulo Φ_order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootValue {
    pub order: u64,
    pub residue: QPolynomial,
}

impl RootValue {
    /// The value as an integer, when it is one.
    pub fn as_integer(&self) -> Option<BigInt> {
        match self.residue.degree() {
            None => Some(BigInt::zero()),
            Some(0) => Some(self.residue.coeff(0)),
            Some(_) => None,
        }
    }

    fn to_json(&self) -> Value {
        match self.as_integer() {
            Some(v) => big_json(&v),
            None => Value::String(format!(
                "{} with q a primitive {}th root of unity",
                self.residue, self.order
            )),
        }
    }
}

/// f(ξᵏ) for ξ a primitive n-th root of unity, computed exactly.
pub fn eval_at_root(f: &QPolynomial, n: usize, k: usize) -> RootValue {
    reduced_at_root(&reduce_mod_cyclic(f, n as u64), n, k)
}

/// [`eval_at_root`] for f already reduced modulo qⁿ − 1.
fn reduced_at_root(reduced: &QPolynomial, n: usize, k: usize) -> RootValue {
    let order = (n / k.gcd(&n)) as u64;
    RootValue {
        order,
        residue: rem_monic(reduced, &cyclotomic(order)),
    }
}

/// Which set the triple is built on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    FullSet,
    RefinedUnion,
}

impl Scope {
    pub fn as_str(self) -> &'static str {
        match self {
            Scope::FullSet => "full-set",
            Scope::RefinedUnion => "refined-union",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    /// The power of cₙ where the triple fails, 1 ≤ k ≤ n.
    pub k: usize,
    /// f(ξᵏ).
    pub expected: RootValue,
    /// Number of elements fixed by cₙᵏ.
    pub actual: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails(Witness),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CspReport {
    pub shape: SkewShape,
    pub n: usize,
    pub scope: Scope,
    pub content: Option<WeakComposition>,
    pub statistic_convention: Convention,
    /// Ascending.
    pub orbit_sizes: Vec<usize>,
    pub candidate_poly: QPolynomial,
    pub reduced_poly: QPolynomial,
    pub orbit_gf: QPolynomial,
    /// Elements fixed by cₙᵏ for k = 1..=n.
    pub fixed_points: Vec<u64>,
    pub verdict: Verdict,
}

fn big_json(v: &BigInt) -> Value {
    Value::Number(v.to_string().parse().expect("integers are valid JSON numbers"))
}

fn dense_json(coeffs: &[BigInt]) -> Value {
    Value::Array(coeffs.iter().map(big_json).collect())
}

impl CspReport {
    pub fn set_size(&self) -> usize {
        self.orbit_sizes.iter().sum()
    }

    /// The report document; field names and order are fixed.
    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("shape_outer".into(), json!(self.shape.outer().parts()));
        m.insert("shape_inner".into(), json!(self.shape.inner().parts()));
        m.insert("n".into(), json!(self.n));
        m.insert("scope".into(), json!(self.scope.as_str()));
        if let Some(a) = &self.content {
            m.insert("content".into(), json!(a.entries()));
        }
        m.insert(
            "statistic_convention".into(),
            json!(self.statistic_convention.as_str()),
        );
        m.insert("orbit_sizes".into(), json!(self.orbit_sizes));
        m.insert(
            "f_coefficients".into(),
            dense_json(&self.candidate_poly.dense()),
        );
        m.insert(
            "f_reduced".into(),
            dense_json(&self.reduced_poly.dense_len(self.n)),
        );
        m.insert("orbit_gf".into(), dense_json(&self.orbit_gf.dense_len(self.n)));
        match &self.verdict {
            Verdict::Holds => {
                m.insert("verdict".into(), json!("holds"));
            }
            Verdict::Fails(w) => {
                m.insert("verdict".into(), json!("fails"));
                m.insert(
                    "witness".into(),
                    json!({"k": w.k, "expected": w.expected.to_json(), "actual": w.actual}),
                );
            }
        }
        Value::Object(m)
    }
}

/// Σ over orbits of size d of Σ_{i<d} q^{i·n/d}.
pub fn orbit_generating_function(orbit_sizes: &[usize], n: usize) -> Result<QPolynomial, CspError> {
    let mut multiplicity: BTreeMap<usize, u64> = BTreeMap::new();
    for &d in orbit_sizes {
        if d == 0 || !n.is_multiple_of(d) {
            return Err(CspError::OrbitSize { size: d, n });
        }
        *multiplicity.entry(d).or_insert(0) += 1;
    }
    let mut out = QPolynomial::zero();
    for (&d, &count) in &multiplicity {
        let step = (n / d) as u64;
        for i in 0..d as u64 {
            out.add_term(i * step, BigInt::from(count));
        }
    }
    Ok(out)
}

fn membership(set: &[Tableau], n: usize) -> Result<HashSet<&[u32]>, CspError> {
    let shape = set.first().map(Tableau::shape);
    let mut members = HashSet::with_capacity(set.len());
    for t in set {
        if t.bound() != n || Some(t.shape()) != shape {
            return Err(CspError::ForeignElement {
                tableau: t.to_string(),
            });
        }
        members.insert(t.entries());
    }
    Ok(members)
}

/// |{t ∈ X : cₙᵏ(t) = t}| for k = 1..=n, by applying cₙ up to n times to every element.
pub fn fixed_point_counts(set: &[Tableau], n: usize) -> Result<Vec<u64>, CspError> {
    let members = membership(set, n)?;
    let mut counts = vec![0u64; n];
    for t in set {
        let mut cur = t.clone();
        for count in counts.iter_mut() {
            cur = c_action(&cur)?;
            if !members.contains(cur.entries()) {
                return Err(CspError::NotClosed {
                    tableau: t.to_string(),
                });
            }
            if cur == *t {
                *count += 1;
            }
        }
    }
    Ok(counts)
}

/// Orbit sizes of cₙ on `set` (ascending), checking closure.
pub fn orbit_sizes(set: &[Tableau], n: usize) -> Result<Vec<usize>, CspError> {
    let members = membership(set, n)?;
    let mut seen: HashSet<Vec<u32>> = HashSet::with_capacity(set.len());
    let mut sizes = Vec::new();
    for t in set {
        if seen.contains(t.entries()) {
            continue;
        }
        let mut size = 0usize;
        let mut cur = t.clone();
        loop {
            seen.insert(cur.entries().to_vec());
            size += 1;
            let next = c_action(&cur)?;
            if !members.contains(next.entries()) {
                return Err(CspError::NotClosed {
                    tableau: cur.to_string(),
                });
            }
            if next == *t {
                break;
            }
            if size > set.len() {
                return Err(CrystalError::NonPeriodic {
                    tableau: t.to_string(),
                    bound: set.len(),
                }
                .into());
            }
            cur = next;
        }
        sizes.push(size);
    }
    sizes.sort_unstable();
    Ok(sizes)
}

/// Decides whether (X, ⟨cₙ⟩, f) exhibits the cyclic sieving phenomenon.
///
/// The report comes back with scope `FullSet`, no content and the zero-based convention;
/// callers building other triples overwrite those descriptive fields.
pub fn verify_csp(
    shape: &SkewShape,
    n: usize,
    set: &[Tableau],
    f: &QPolynomial,
) -> Result<CspReport, CspError> {
    check_cardinality(f, set.len())?;
    if let Some(t) = set.iter().find(|t| t.shape() != shape) {
        return Err(CspError::ForeignElement {
            tableau: t.to_string(),
        });
    }
    let sizes = orbit_sizes(set, n)?;
    report_from_sizes(shape, n, f, sizes)
}

/// [`verify_csp`] on an ascending set of packed tableaux.
pub fn verify_csp_packed(
    ps: &PackedShape,
    set: &[Packed],
    f: &QPolynomial,
) -> Result<CspReport, CspError> {
    check_cardinality(f, set.len())?;
    let mut sizes = ps
        .cycle_sizes(set, |w| ps.c_action(w))
        .map_err(|e| cycle_error(ps, e))?;
    sizes.sort_unstable();
    report_from_sizes(ps.shape(), ps.n(), f, sizes)
}

fn cycle_error(ps: &PackedShape, e: CycleError) -> CspError {
    match e {
        CycleError::NotClosed(w) => CspError::NotClosed {
            tableau: ps.unpack(w).to_string(),
        },
        CycleError::NotPermutation(w) => CrystalError::NonPeriodic {
            tableau: ps.unpack(w).to_string(),
            bound: 0,
        }
        .into(),
    }
}

fn check_cardinality(f: &QPolynomial, set_size: usize) -> Result<(), CspError> {
    let f_at_one = f.eval_at_one();
    if f_at_one != BigInt::from(set_size) {
        return Err(CspError::CardinalityMismatch { f_at_one, set_size });
    }
    Ok(())
}

fn report_from_sizes(
    shape: &SkewShape,
    n: usize,
    f: &QPolynomial,
    sizes: Vec<usize>,
) -> Result<CspReport, CspError> {
    let orbit_gf = orbit_generating_function(&sizes, n)?;
    let reduced = reduce_mod_cyclic(f, n as u64);
    let congruent = reduced == orbit_gf;

    // cₙᵏ fixes exactly the orbits whose size divides k.
    let fixed_points: Vec<u64> = (1..=n)
        .map(|k| {
            sizes
                .iter()
                .filter(|&&d| k % d == 0)
                .map(|&d| d as u64)
                .sum()
        })
        .collect();
    let mut witness = None;
    for k in 1..=n {
        let value = reduced_at_root(&reduced, n, k);
        if value.as_integer() != Some(BigInt::from(fixed_points[k - 1])) {
            witness = Some(Witness {
                k,
                expected: value,
                actual: fixed_points[k - 1],
            });
            break;
        }
    }
    if congruent != witness.is_none() {
        return Err(CspError::Inconsistent {
            k: witness.map_or(0, |w| w.k),
        });
    }
    Ok(CspReport {
        shape: shape.clone(),
        n,
        scope: Scope::FullSet,
        content: None,
        statistic_convention: Convention::ZeroBased,
        orbit_sizes: sizes,
        candidate_poly: f.clone(),
        reduced_poly: reduced,
        orbit_gf,
        fixed_points,
        verdict: witness.map_or(Verdict::Holds, Verdict::Fails),
    })
}

fn require_coprime(shape: &SkewShape, n: usize) -> Result<(), CspError> {
    let g = gcd(shape.size() as u64, n as u64);
    if g != 1 {
        return Err(CspError::Gcd {
            size: shape.size(),
            n,
            gcd: g,
        });
    }
    Ok(())
}

fn require_length(a: &WeakComposition, n: usize) -> Result<(), CspError> {
    if a.len() != n {
        return Err(CspError::ContentLength {
            content: a.clone(),
            len: a.len(),
            n,
        });
    }
    Ok(())
}

/// ⋃_{r=1}^{n} SSYT(shape, cyc_r(a)), each distinct tableau once, in canonical order.
pub fn refined_union(shape: &SkewShape, a: &WeakComposition) -> Vec<Tableau> {
    let mut all: Vec<Tableau> = (1..=a.len() as i64)
        .flat_map(|r| enumerate_content(shape, &a.cyclic_shift(r)))
        .collect();
    all.sort_by(|x, y| x.entries().cmp(y.entries()));
    all.dedup();
    all
}

fn disjoint_union(shape: &SkewShape, a: &WeakComposition) -> Result<Vec<Tableau>, CspError> {
    let mut all: Vec<Tableau> = (1..=a.len() as i64)
        .flat_map(|r| enumerate_content(shape, &a.cyclic_shift(r)))
        .collect();
    all.sort_by(|x, y| x.entries().cmp(y.entries()));
    if let Some(w) = all.windows(2).find(|w| w[0] == w[1]) {
        return Err(CspError::NotDisjoint {
            tableau: w[0].to_string(),
        });
    }
    Ok(all)
}

fn disjoint_union_packed(ps: &PackedShape, a: &WeakComposition) -> Result<Vec<Packed>, CspError> {
    let mut all: Vec<Packed> = (1..=a.len() as i64)
        .flat_map(|r| ps.enumerate_content(&a.cyclic_shift(r)))
        .collect();
    all.sort_unstable();
    if let Some(w) = all.windows(2).find(|w| w[0] == w[1]) {
        return Err(CspError::NotDisjoint {
            tableau: ps.unpack(w[0]).to_string(),
        });
    }
    Ok(all)
}

/// Σ_T q^{stat(T)} over packed tableaux.
pub fn statistic_gf_packed(ps: &PackedShape, set: &[Packed], convention: Convention) -> QPolynomial {
    let n = ps.n();
    let mut counts = BTreeMap::new();
    for &w in set {
        let weight = ps.weight(w).map(u32::from);
        *counts
            .entry(convention.statistic(&weight[..n]))
            .or_insert(0u64) += 1;
    }
    QPolynomial::from_counts(&counts)
}

/// The refined triple (⋃_r SSYT(shape, cyc_r(a)), ⟨cₙ⟩, Σ_T q^{stat(T)}) under gcd(|shape|, n) = 1.
///
/// Fails with `OrbitNotFree` if some orbit is smaller than n.
pub fn check_refined_theorem(
    shape: &SkewShape,
    a: &WeakComposition,
    n: usize,
    convention: Convention,
) -> Result<CspReport, CspError> {
    require_length(a, n)?;
    require_coprime(shape, n)?;
    let mut report = match PackedShape::new(shape, n) {
        Some(ps) => {
            let set = disjoint_union_packed(&ps, a)?;
            let f = statistic_gf_packed(&ps, &set, convention);
            verify_csp_packed(&ps, &set, &f)?
        }
        None => {
            let set = disjoint_union(shape, a)?;
            let f = statistic_gf(&set, convention);
            verify_csp(shape, n, &set, &f)?
        }
    };
    if let Some(&size) = report.orbit_sizes.iter().find(|&&d| d != n) {
        return Err(CspError::OrbitNotFree { size, n });
    }
    report.scope = Scope::RefinedUnion;
    report.content = Some(a.clone());
    report.statistic_convention = convention;
    Ok(report)
}

/// Result of [`check_main_corollary`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MainCorollaryReport {
    pub report: CspReport,
    /// For straight shapes: the triple with q^{−n(λ)}·s_λ(1, q, …, q^{n−1}).
    pub shifted: Option<CspReport>,
}

impl MainCorollaryReport {
    pub fn holds(&self) -> bool {
        self.report.verdict.holds() && self.shifted.as_ref().is_none_or(|r| r.verdict.holds())
    }
}

/// (SSYT(shape, n), ⟨cₙ⟩, principal specialization) under gcd(|shape|, n) = 1.
pub fn check_main_corollary(
    shape: &SkewShape,
    n: usize,
    convention: Convention,
) -> Result<MainCorollaryReport, CspError> {
    require_coprime(shape, n)?;
    let f = principal_specialization(shape, n, convention);
    // Orbit sizes do not depend on f, so the second triple reuses them.
    let (mut report, sizes, empty) = match PackedShape::new(shape, n) {
        Some(ps) => {
            let set = ps.enumerate();
            let r = verify_csp_packed(&ps, &set, &f)?;
            let sizes = r.orbit_sizes.clone();
            (r, sizes, set.is_empty())
        }
        None => {
            let set = enumerate(shape, n);
            let r = verify_csp(shape, n, &set, &f)?;
            let sizes = r.orbit_sizes.clone();
            (r, sizes, set.is_empty())
        }
    };
    report.statistic_convention = convention;

    let shifted = if shape.is_straight() && !empty {
        let nstat = shape.outer().nstat();
        let zero_based = match convention {
            Convention::ZeroBased => f.clone(),
            Convention::OneBased => principal_specialization(shape, n, Convention::ZeroBased),
        };
        if zero_based.min_degree() != Some(nstat) {
            return Err(CspError::MinExponent {
                expected: nstat,
                found: zero_based.min_degree(),
            });
        }
        let g = zero_based
            .shift_down(nstat)
            .expect("minimal exponent equals n(λ)");
        Some(report_from_sizes(shape, n, &g, sizes)?)
    } else {
        None
    };
    Ok(MainCorollaryReport { report, shifted })
}

/// The [n]_q-multiple of Σ_r Σ_{T ∈ SSYT(shape, cyc_r(a))} q^{Σ j·wⱼ(T)}; must equal K_{shape,a}.
pub fn check_orbit_sum_corollary(
    shape: &SkewShape,
    a: &WeakComposition,
    n: usize,
) -> Result<BigInt, CspError> {
    require_length(a, n)?;
    require_coprime(shape, n)?;
    let f = match PackedShape::new(shape, n) {
        Some(ps) => {
            let set = disjoint_union_packed(&ps, a)?;
            statistic_gf_packed(&ps, &set, Convention::OneBased)
        }
        None => statistic_gf(&disjoint_union(shape, a)?, Convention::OneBased),
    };
    let k = kostka(shape, a);
    match multiple_of_q_integer(&f, n as u64) {
        Some(c) if c == BigInt::from(k) => Ok(c),
        _ => Err(CspError::CorollaryViolation {
            reduced: reduce_mod_cyclic(&f, n as u64).to_string(),
            kostka: k,
        }),
    }
}

/// One content class of a refined check: its representative weight and outcome.
pub type ClassReport = (WeakComposition, Result<CspReport, CspError>);

/// [`check_refined_theorem`] followed by [`check_orbit_sum_corollary`] for every shift class
/// of WCOMP(|shape|, n), in the order of [`WeakComposition::shift_classes`].
///
/// When the shape packs, SSYT(shape, n) is enumerated once and split by the shift class of
/// each weight, instead of enumerating every content separately.
pub fn check_refined_classes(
    shape: &SkewShape,
    n: usize,
    convention: Convention,
) -> Result<Vec<ClassReport>, CspError> {
    require_coprime(shape, n)?;
    let classes = WeakComposition::shift_classes(shape.size() as u32, n);
    let Some(ps) = PackedShape::new(shape, n) else {
        return Ok(classes
            .into_iter()
            .map(|a| {
                let r = check_refined_theorem(shape, &a, n, convention)
                    .and_then(|r| check_orbit_sum_corollary(shape, &a, n).map(|_| r));
                (a, r)
            })
            .collect());
    };
    // cₙ shifts weights cyclically, so each class is a union of whole orbits and one walk
    // over SSYT(shape, n) serves every class.
    let set = ps.enumerate();
    let cycles = ps
        .cycles(&set, |w| ps.c_action(w))
        .map_err(|e| cycle_error(&ps, e))?;
    let mut counts: HashMap<[u8; MAX_LETTERS], u64> = HashMap::new();
    for &w in &set {
        *counts.entry(ps.weight(w)).or_insert(0) += 1;
    }
    let mut class_of: HashMap<[u8; MAX_LETTERS], WeakComposition> = HashMap::new();
    let mut weights: BTreeMap<WeakComposition, Vec<(Vec<u32>, u64)>> = BTreeMap::new();
    for (weight, &c) in &counts {
        let entries: Vec<u32> = weight[..n].iter().map(|&x| u32::from(x)).collect();
        let class = WeakComposition::new(entries.clone()).min_rotation();
        class_of.insert(*weight, class.clone());
        weights.entry(class).or_default().push((entries, c));
    }
    let mut sizes: BTreeMap<&WeakComposition, Vec<usize>> = BTreeMap::new();
    for &(w, d) in &cycles {
        sizes.entry(&class_of[&ps.weight(w)]).or_default().push(d);
    }
    let gf = |members: &[(Vec<u32>, u64)], conv: Convention| {
        let mut by_exponent = BTreeMap::new();
        for (weight, c) in members {
            *by_exponent.entry(conv.statistic(weight)).or_insert(0u64) += c;
        }
        QPolynomial::from_counts(&by_exponent)
    };
    let check = |a: &WeakComposition| -> Result<CspReport, CspError> {
        let members = weights.get(a).map_or(&[][..], Vec::as_slice);
        let mut orbit_sizes = sizes.get(a).cloned().unwrap_or_default();
        orbit_sizes.sort_unstable();
        let f = gf(members, convention);
        check_cardinality(&f, orbit_sizes.iter().sum())?;
        let mut report = report_from_sizes(shape, n, &f, orbit_sizes)?;
        if let Some(&size) = report.orbit_sizes.iter().find(|&&d| d != n) {
            return Err(CspError::OrbitNotFree { size, n });
        }
        let one_based = gf(members, Convention::OneBased);
        let k = members
            .iter()
            .find(|(w, _)| w.as_slice() == a.entries())
            .map_or(0, |&(_, c)| c);
        if multiple_of_q_integer(&one_based, n as u64) != Some(BigInt::from(k)) {
            return Err(CspError::CorollaryViolation {
                reduced: reduce_mod_cyclic(&one_based, n as u64).to_string(),
                kostka: k,
            });
        }
        report.scope = Scope::RefinedUnion;
        report.content = Some(a.clone());
        report.statistic_convention = convention;
        Ok(report)
    };
    Ok(classes
        .into_iter()
        .map(|a| {
            let r = check(&a);
            (a, r)
        })
        .collect())
}

/// s(q, …, qⁿ) = q^{|shape|}·s(1, q, …, q^{n−1}), coefficient by coefficient.
pub fn specialization_identity_holds(shape: &SkewShape, n: usize) -> bool {
    let zero = principal_specialization(shape, n, Convention::ZeroBased);
    let one = principal_specialization(shape, n, Convention::OneBased);
    one == zero.shift_up(shape.size() as u64)
}

/// Σ over contents a of K_{shape,a}·q^{stat(a)}: the monomial expansion of the specialization.
pub fn specialization_from_kostka(shape: &SkewShape, n: usize, convention: Convention) -> QPolynomial {
    let mut counts = BTreeMap::new();
    for a in WeakComposition::all(shape.size() as u32, n) {
        let k = kostka(shape, &a);
        if k > 0 {
            *counts.entry(convention.statistic(a.entries())).or_insert(0u64) += k;
        }
    }
    QPolynomial::from_counts(&counts)
}

/// [n]_q scaled by |X|/n: what a refined union must reduce to.
pub fn free_orbit_target(set_size: usize, n: usize) -> QPolynomial {
    q_integer(n as u64).scale(&BigInt::from(set_size / n.max(1)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(o: &str, i: &str) -> SkewShape {
        SkewShape::parse(o, i).unwrap()
    }

    fn comp(s: &str) -> WeakComposition {
        s.parse().unwrap()
    }

    fn t(text: &str, n: usize) -> Tableau {
        Tableau::parse(text, n).unwrap()
    }

    #[test]
    fn orbit_gf_examples() {
        assert_eq!(orbit_generating_function(&[5], 5).unwrap(), q_integer(5));
        assert_eq!(orbit_generating_function(&[1], 4).unwrap(), QPolynomial::one());
        assert_eq!(
            orbit_generating_function(&[2, 4], 4).unwrap(),
            QPolynomial::from_dense([2, 1, 2, 1])
        );
        assert_eq!(
            orbit_generating_function(&[3], 4),
            Err(CspError::OrbitSize { size: 3, n: 4 })
        );
    }

    #[test]
    fn fixed_point_examples() {
        let x = enumerate(&shape("2", ""), 3);
        assert_eq!(x.len(), 6);
        assert_eq!(fixed_point_counts(&x, 3).unwrap(), vec![0, 0, 6]);

        let example: Vec<Tableau> = [
            ".,1,3;1,3;2,4",
            ".,2,4;1,3;2,4",
            ".,1,4;1,3;2,4",
            ".,1,3;1,2;2,4",
            ".,2,3;1,3;2,4",
            ".,2,4;1,3;3,4",
        ]
        .iter()
        .map(|s| t(s, 4))
        .collect();
        assert_eq!(fixed_point_counts(&example, 4).unwrap(), vec![0, 2, 0, 6]);
    }

    #[test]
    fn fixed_points_detect_open_sets() {
        let x = vec![t("1,1", 3)];
        assert!(matches!(
            fixed_point_counts(&x, 3),
            Err(CspError::NotClosed { .. })
        ));
        assert!(matches!(orbit_sizes(&x, 3), Err(CspError::NotClosed { .. })));
    }

    #[test]
    fn verify_examples() {
        let s1 = shape("1", "");
        let r = verify_csp(&s1, 2, &enumerate(&s1, 2), &QPolynomial::from_dense([1, 1])).unwrap();
        assert!(r.verdict.holds());

        let s2 = shape("2", "");
        let x = enumerate(&s2, 3);
        let f = QPolynomial::from_dense([1, 1, 2, 1, 1]);
        let r = verify_csp(&s2, 3, &x, &f).unwrap();
        assert!(r.verdict.holds());
        assert_eq!(r.reduced_poly, q_integer(3).scale(&BigInt::from(2)));
        assert_eq!(r.orbit_sizes, vec![3, 3]);

        let bad = QPolynomial::from_dense([1, 2, 3]);
        let r = verify_csp(&s2, 3, &x, &bad).unwrap();
        match &r.verdict {
            Verdict::Fails(w) => {
                assert_eq!(w.k, 1);
                assert_eq!(w.actual, 0);
                // 1 + 2ξ + 3ξ² = −2 − ξ for ξ a primitive cube root of unity.
                assert_eq!(w.expected.residue, QPolynomial::from_dense([-2, -1]));
                assert_eq!(w.expected.as_integer(), None);
            }
            Verdict::Holds => panic!("1 + 2q + 3q^2 is not a CSP polynomial here"),
        }
        let doc = r.to_json();
        assert_eq!(doc["verdict"], "fails");
        assert_eq!(doc["witness"]["k"], 1);

        assert!(matches!(
            verify_csp(&s2, 3, &x, &QPolynomial::from_dense([1])),
            Err(CspError::CardinalityMismatch { .. })
        ));
    }

    #[test]
    fn integer_witness() {
        // Two fixed points, f = 2 + 0 q: f(ξ) = 2 for all k, but c_2 swaps them.
        let s1 = shape("1", "");
        let r = verify_csp(&s1, 2, &enumerate(&s1, 2), &QPolynomial::from_dense([2])).unwrap();
        assert_eq!(
            r.verdict,
            Verdict::Fails(Witness {
                k: 1,
                expected: RootValue {
                    order: 2,
                    residue: QPolynomial::from_dense([2])
                },
                actual: 0
            })
        );
        assert_eq!(r.to_json()["witness"]["expected"], 2);
    }

    #[test]
    fn refined_examples() {
        let r = check_refined_theorem(&shape("2", ""), &comp("2,0,0"), 3, Convention::OneBased)
            .unwrap();
        assert!(r.verdict.holds());
        assert_eq!(r.orbit_sizes, vec![3]);
        assert_eq!(reduce_mod_cyclic(&r.candidate_poly, 3), q_integer(3));

        let r = check_refined_theorem(
            &shape("2,1", ""),
            &comp("1,1,1,0"),
            4,
            Convention::OneBased,
        )
        .unwrap();
        assert!(r.verdict.holds());
        assert!(r.orbit_sizes.iter().all(|&d| d == 4));

        assert_eq!(
            check_refined_theorem(
                &shape("3,2,2", "1"),
                &comp("2,1,2,1"),
                4,
                Convention::OneBased
            ),
            Err(CspError::Gcd {
                size: 6,
                n: 4,
                gcd: 2
            })
        );
        assert!(matches!(
            check_refined_theorem(&shape("2", ""), &comp("2,0"), 3, Convention::OneBased),
            Err(CspError::ContentLength { .. })
        ));
    }

    #[test]
    fn main_corollary_examples() {
        let r = check_main_corollary(&shape("2", ""), 3, Convention::ZeroBased).unwrap();
        assert!(r.holds());
        let r = check_main_corollary(&shape("3,2", ""), 4, Convention::ZeroBased).unwrap();
        assert!(r.holds());
        assert!(r.shifted.is_some());
        assert!(matches!(
            check_main_corollary(&shape("3,1", "1"), 3, Convention::ZeroBased),
            Err(CspError::Gcd { gcd: 3, .. })
        ));
    }

    #[test]
    fn orbit_sum_examples() {
        let one = BigInt::from(1);
        assert_eq!(
            check_orbit_sum_corollary(&shape("2", ""), &comp("2,0,0"), 3).unwrap(),
            one
        );
        assert_eq!(
            check_orbit_sum_corollary(&shape("2,1", ""), &comp("1,1,1,0"), 4).unwrap(),
            BigInt::from(2)
        );
        assert_eq!(
            check_orbit_sum_corollary(&shape("2", ""), &comp("1,1,0"), 3).unwrap(),
            one
        );
    }

    #[test]
    fn report_json_fields() {
        let r = check_refined_theorem(&shape("2", ""), &comp("2,0,0"), 3, Convention::OneBased)
            .unwrap();
        let doc = r.to_json();
        let keys: Vec<&str> = doc.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(
            keys,
            vec![
                "shape_outer",
                "shape_inner",
                "n",
                "scope",
                "content",
                "statistic_convention",
                "orbit_sizes",
                "f_coefficients",
                "f_reduced",
                "orbit_gf",
                "verdict"
            ]
        );
        assert_eq!(doc["f_coefficients"], json!([0, 0, 1, 0, 1, 0, 1]));
        assert_eq!(doc["f_reduced"], json!([1, 1, 1]));
        assert_eq!(doc["orbit_gf"], json!([1, 1, 1]));
        assert_eq!(doc["scope"], "refined-union");
    }

    #[test]
    fn batched_classes_match_per_class_checks() {
        for m in 1..=5 {
            for sh in SkewShape::all_of_size(m) {
                for n in 1..=4usize {
                    if gcd(u64::from(m), n as u64) != 1 {
                        assert!(matches!(
                            check_refined_classes(&sh, n, Convention::OneBased),
                            Err(CspError::Gcd { .. })
                        ));
                        continue;
                    }
                    for conv in [Convention::ZeroBased, Convention::OneBased] {
                        for (a, batched) in check_refined_classes(&sh, n, conv).unwrap() {
                            let single = check_refined_theorem(&sh, &a, n, conv).unwrap();
                            assert_eq!(batched.unwrap(), single);
                            check_orbit_sum_corollary(&sh, &a, n).unwrap();
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn packed_and_generic_verification_agree() {
        for m in 1..=4 {
            for sh in SkewShape::all_of_size(m) {
                for n in 1..=4usize {
                    let ps = PackedShape::new(&sh, n).unwrap();
                    let set = enumerate(&sh, n);
                    let f = principal_specialization(&sh, n, Convention::ZeroBased);
                    let generic = verify_csp(&sh, n, &set, &f).unwrap();
                    let packed = verify_csp_packed(&ps, &ps.enumerate(), &f).unwrap();
                    assert_eq!(generic, packed);
                    assert_eq!(fixed_point_counts(&set, n).unwrap(), generic.fixed_points);
                }
            }
        }
    }
}
