//! Exhaustive sweeps over small shapes and alphabets.

use std::fmt::Write as _;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::crystal::CrystalError;
use crate::csp::{
    check_main_corollary, check_refined_classes, refined_union,
    verify_csp, verify_csp_packed, CspError, CspReport, Scope,
};
use crate::packed::PackedShape;
use crate::qpoly::{principal_specialization, statistic_gf, Convention};
use crate::shapes::{gcd, Partition, SkewShape, WeakComposition};
use crate::tableau::enumerate;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepConfig {
    /// Largest |λ/μ|.
    pub max_size: u32,
    pub max_n: usize,
    /// Include shapes with a nonempty inner partition.
    pub skew: bool,
    /// Skip instances with gcd(|λ/μ|, n) ≠ 1. When false they are run as exploration rows.
    pub coprime_only: bool,
    /// Convention for the full-set rows (refined rows always use the one-based statistic).
    pub convention: Convention,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            max_size: 8,
            max_n: 6,
            skew: true,
            coprime_only: true,
            convention: Convention::ZeroBased,
        }
    }
}

impl SweepConfig {
    /// Shapes of size 1..=max_size, ordered by size then shape.
    pub fn shapes(&self) -> Vec<SkewShape> {
        (1..=self.max_size)
            .flat_map(|m| {
                if self.skew {
                    SkewShape::all_of_size(m)
                } else {
                    let mut v: Vec<SkewShape> = Partition::all_of_size(m)
                        .into_iter()
                        .map(SkewShape::straight)
                        .collect();
                    v.sort();
                    v
                }
            })
            .collect()
    }

    /// Every (shape, n) pair in sweep order.
    pub fn instances(&self) -> Vec<(SkewShape, usize)> {
        self.shapes()
            .into_iter()
            .flat_map(|s| (1..=self.max_n).map(move |n| (s.clone(), n)))
            .filter(|(s, n)| !self.coprime_only || gcd(s.size() as u64, *n as u64) == 1)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Holds,
    Fails(String),
    /// A non-coprime instance, verified empirically with no expectation attached.
    Explored { holds: bool },
}

impl Outcome {
    pub fn label(&self) -> String {
        match self {
            Outcome::Holds => "holds".into(),
            Outcome::Fails(why) => format!("fails: {why}"),
            Outcome::Explored { holds: true } => "explore:holds".into(),
            Outcome::Explored { holds: false } => "explore:fails".into(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SweepRow {
    pub shape: SkewShape,
    pub n: usize,
    pub content: Option<WeakComposition>,
    pub scope: Scope,
    pub orbit_sizes: Vec<usize>,
    pub outcome: Outcome,
    pub report: Option<CspReport>,
}

impl SweepRow {
    pub const TSV_HEADER: &'static str = "outer\tinner\tn\tcontent\tscope\torbit_sizes\tverdict";

    pub fn tsv(&self) -> String {
        let sizes: Vec<String> = self.orbit_sizes.iter().map(usize::to_string).collect();
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}",
            self.shape.outer(),
            self.shape.inner(),
            self.n,
            self.content.as_ref().map_or("-".to_string(), |a| a.to_string()),
            self.scope.as_str(),
            sizes.join(","),
            self.outcome.label()
        )
    }

    /// A short description for failure listings.
    pub fn describe(&self) -> String {
        let mut s = format!("{} n={} {}", self.shape, self.n, self.scope.as_str());
        if let Some(a) = &self.content {
            let _ = write!(s, " content={a}");
        }
        let _ = write!(s, ": {}", self.outcome.label());
        s
    }
}

fn row(
    shape: &SkewShape,
    n: usize,
    content: Option<&WeakComposition>,
    scope: Scope,
    result: Result<CspReport, CspError>,
    explore: bool,
) -> SweepRow {
    let (orbit_sizes, outcome, report) = match result {
        Ok(r) => {
            let holds = r.verdict.holds();
            let outcome = match (explore, holds) {
                (true, h) => Outcome::Explored { holds: h },
                (false, true) => Outcome::Holds,
                (false, false) => Outcome::Fails(format!("{:?}", r.verdict)),
            };
            (r.orbit_sizes.clone(), outcome, Some(r))
        }
        Err(e) => (Vec::new(), Outcome::Fails(e.to_string()), None),
    };
    SweepRow {
        shape: shape.clone(),
        n,
        content: content.cloned(),
        scope,
        orbit_sizes,
        outcome,
        report,
    }
}

/// The full-set triple without the coprimality check.
pub fn explore_full(shape: &SkewShape, n: usize, convention: Convention) -> Result<CspReport, CspError> {
    let f = principal_specialization(shape, n, convention);
    let mut r = match PackedShape::new(shape, n) {
        Some(ps) => verify_csp_packed(&ps, &ps.enumerate(), &f)?,
        None => verify_csp(shape, n, &enumerate(shape, n), &f)?,
    };
    r.statistic_convention = convention;
    Ok(r)
}

/// The refined-union triple without the coprimality check.
pub fn explore_refined(
    shape: &SkewShape,
    a: &WeakComposition,
    convention: Convention,
) -> Result<CspReport, CspError> {
    let set = refined_union(shape, a);
    let f = statistic_gf(&set, convention);
    let mut r = verify_csp(shape, a.len(), &set, &f)?;
    r.scope = Scope::RefinedUnion;
    r.content = Some(a.clone());
    r.statistic_convention = convention;
    Ok(r)
}

/// All rows for one (shape, n): the full-set triple, then one refined triple per shift class.
pub fn instance_rows(shape: &SkewShape, n: usize, convention: Convention) -> Vec<SweepRow> {
    let m = shape.size() as u32;
    let coprime = gcd(u64::from(m), n as u64) == 1;
    let mut rows = Vec::new();
    let mut shifted_ok = true;
    if coprime {
        let mut r = row(
            shape,
            n,
            None,
            Scope::FullSet,
            check_main_corollary(shape, n, convention).map(|mc| {
                shifted_ok = mc.shifted.as_ref().is_none_or(|s| s.verdict.holds());
                mc.report
            }),
            false,
        );
        if !shifted_ok {
            r.outcome = Outcome::Fails("q^{-n(λ)}-shifted specialization is not a CSP polynomial".into());
        }
        rows.push(r);
    } else {
        let full = explore_full(shape, n, convention);
        rows.push(row(shape, n, None, Scope::FullSet, full, true));
    }
    if coprime {
        match check_refined_classes(shape, n, Convention::OneBased) {
            Ok(classes) => {
                for (a, refined) in classes {
                    rows.push(row(shape, n, Some(&a), Scope::RefinedUnion, refined, false));
                }
            }
            Err(e) => rows.push(row(shape, n, None, Scope::RefinedUnion, Err(e), false)),
        }
    } else {
        for a in WeakComposition::shift_classes(m, n) {
            let refined = explore_refined(shape, &a, Convention::OneBased);
            rows.push(row(shape, n, Some(&a), Scope::RefinedUnion, refined, true));
        }
    }
    rows
}

#[derive(Debug, Clone, Default)]
pub struct SweepSummary {
    pub instances: usize,
    pub rows: usize,
    pub explored: usize,
    pub failures: Vec<String>,
}

impl SweepSummary {
    pub fn all_hold(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn final_line(&self) -> String {
        if self.all_hold() {
            "ALL HOLD".to_string()
        } else {
            format!("FAILURES ({}): {}", self.failures.len(), self.failures.join("; "))
        }
    }
}

#[cfg(feature = "parallel")]
fn each<T: Sync>(items: &[T]) -> rayon::slice::Iter<'_, T> {
    items.par_iter()
}

#[cfg(not(feature = "parallel"))]
fn each<T>(items: &[T]) -> std::slice::Iter<'_, T> {
    items.iter()
}

/// Runs every instance of `config`, handing rows to `sink` in sweep order.
///
/// Instances are verified in parallel in batches; rows are emitted in deterministic order.
pub fn run_sweep(config: &SweepConfig, mut sink: impl FnMut(&SweepRow)) -> SweepSummary {
    let instances = config.instances();
    let mut summary = SweepSummary {
        instances: instances.len(),
        ..SweepSummary::default()
    };
    for batch in instances.chunks(64) {
        let rows: Vec<Vec<SweepRow>> = each(batch)
            .map(|(s, n)| instance_rows(s, *n, config.convention))
            .collect();
        for r in rows.iter().flatten() {
            summary.rows += 1;
            match &r.outcome {
                Outcome::Fails(_) => summary.failures.push(r.describe()),
                Outcome::Explored { .. } => summary.explored += 1,
                Outcome::Holds => {}
            }
            sink(r);
        }
    }
    summary
}

/// Orders of ⟨cₙ⟩ and of promotion on SSYT(shape, n).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderComparison {
    pub shape: SkewShape,
    pub n: usize,
    pub set_size: usize,
    pub c_order: u64,
    pub promotion_order: u64,
}

impl OrderComparison {
    /// The contrast the crystal action is designed to avoid: promotion's order is not n.
    pub fn differs(&self) -> bool {
        self.c_order == self.n as u64 && self.promotion_order != self.n as u64
    }
}

pub fn compare_orders(shape: &SkewShape, n: usize) -> Result<OrderComparison, CrystalError> {
    let (set_size, c_order, promotion_order) = match PackedShape::new(shape, n) {
        Some(ps) => {
            let set = ps.enumerate();
            let lcm = |sizes: Vec<usize>| {
                sizes
                    .into_iter()
                    .fold(1u64, |acc, d| num_integer::lcm(acc, d as u64))
            };
            let not_perm = |_| CrystalError::NonPeriodic {
                tableau: shape.to_string(),
                bound: set.len(),
            };
            let c = lcm(ps.cycle_sizes(&set, |w| ps.c_action(w)).map_err(not_perm)?);
            let p = lcm(ps.cycle_sizes(&set, |w| ps.promotion(w)).map_err(not_perm)?);
            (set.len(), c, p)
        }
        None => (
            enumerate(shape, n).len(),
            crate::crystal::action_order(shape, n)?,
            crate::crystal::promotion_order(shape, n)?,
        ),
    };
    Ok(OrderComparison {
        shape: shape.clone(),
        n,
        set_size,
        c_order,
        promotion_order,
    })
}

/// Every instance of `config` (coprimality ignored) where promotion's order differs from n.
pub fn promotion_contrasts(config: &SweepConfig) -> Result<Vec<OrderComparison>, CrystalError> {
    let all = SweepConfig {
        coprime_only: false,
        ..config.clone()
    };
    let instances = all.instances();
    let found: Result<Vec<_>, _> = each(&instances)
        .map(|(s, n)| compare_orders(s, *n))
        .collect();
    Ok(found?.into_iter().filter(OrderComparison::differs).collect())
}
