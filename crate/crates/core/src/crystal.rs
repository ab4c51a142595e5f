//! Type A crystal operators on skew tableaux.
//!
//! Conventions used throughout:
//! - the reading word lists rows bottom to top, each left to right;
//! - for the pair (i, i+1), a letter i+1 opens a bracket and a later letter i closes it;
//! - `fᵢ` turns the rightmost unmatched i into i+1, `eᵢ` the leftmost unmatched i+1 into i;
//! - `cₙ = σ₁ σ₂ ⋯ σₙ₋₁` applies σ₁ first, so it sends weight (a₁,…,aₙ) to (a₂,…,aₙ,a₁).

use std::collections::{HashMap, HashSet};

use num_integer::Integer;
use thiserror::Error;

use crate::shapes::SkewShape;
use crate::tableau::Tableau;

/// Default cap on iterations when following an orbit.
pub const ORBIT_SAFETY_BOUND: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CrystalError {
    #[error("operator index {index} outside 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("crystal operator {op}_{index} undefined while reflecting {tableau} (step {step} of {steps})")]
    CrystalTheoryViolation {
        op: char,
        index: usize,
        tableau: String,
        step: usize,
        steps: usize,
    },
    #[error("orbit of {tableau} did not close within {bound} steps")]
    NonPeriodic { tableau: String, bound: usize },
}

fn check_index(i: usize, n: usize) -> Result<(), CrystalError> {
    if i == 0 || i >= n {
        return Err(CrystalError::IndexOutOfRange {
            index: i,
            max: n.saturating_sub(1),
        });
    }
    Ok(())
}

/// Positions (flat indices) of the unmatched letters i and i+1, each in reading order.
/// All unmatched i precede all unmatched i+1 in the reading word.
fn unmatched(shape: &SkewShape, entries: &[u32], i: u32) -> (Vec<usize>, Vec<usize>) {
    let mut lows = Vec::new();
    let mut open = Vec::new();
    for pos in shape.reading_order() {
        let v = entries[pos];
        if v == i + 1 {
            open.push(pos);
        } else if v == i && open.pop().is_none() {
            lows.push(pos);
        }
    }
    (lows, open)
}

fn lower_in_place(shape: &SkewShape, entries: &mut [u32], i: u32) -> bool {
    match unmatched(shape, entries, i).0.last() {
        Some(&pos) => {
            entries[pos] = i + 1;
            true
        }
        None => false,
    }
}

fn raise_in_place(shape: &SkewShape, entries: &mut [u32], i: u32) -> bool {
    match unmatched(shape, entries, i).1.first() {
        Some(&pos) => {
            entries[pos] = i;
            true
        }
        None => false,
    }
}

fn reflect_in_place(
    shape: &SkewShape,
    entries: &mut [u32],
    i: usize,
    show: impl Fn(&[u32]) -> String,
) -> Result<(), CrystalError> {
    let (lo, hi) = (i as u32, i as u32 + 1);
    let count = |v| entries.iter().filter(|&&e| e == v).count() as i64;
    let k = count(lo) - count(hi);
    let (op, steps): (char, usize) = if k >= 0 { ('f', k as usize) } else { ('e', (-k) as usize) };
    for step in 0..steps {
        let applied = if op == 'f' {
            lower_in_place(shape, entries, lo)
        } else {
            raise_in_place(shape, entries, lo)
        };
        if !applied {
            return Err(CrystalError::CrystalTheoryViolation {
                op,
                index: i,
                tableau: show(entries),
                step: step + 1,
                steps,
            });
        }
    }
    Ok(())
}

/// The lowering operator fᵢ, or `None` when no letter i is unmatched.
pub fn lower(t: &Tableau, i: usize) -> Result<Option<Tableau>, CrystalError> {
    check_index(i, t.bound())?;
    let mut entries = t.entries().to_vec();
    Ok(lower_in_place(t.shape(), &mut entries, i as u32)
        .then(|| Tableau::from_raw(t.shared_shape().clone(), t.bound(), entries)))
}

/// The raising operator eᵢ, or `None` when no letter i+1 is unmatched.
pub fn raise(t: &Tableau, i: usize) -> Result<Option<Tableau>, CrystalError> {
    check_index(i, t.bound())?;
    let mut entries = t.entries().to_vec();
    Ok(raise_in_place(t.shape(), &mut entries, i as u32)
        .then(|| Tableau::from_raw(t.shared_shape().clone(), t.bound(), entries)))
}

/// The crystal reflection σᵢ: fᵢᵏ if k = wᵢ − wᵢ₊₁ > 0, eᵢ^|k| if k < 0.
pub fn reflect(t: &Tableau, i: usize) -> Result<Tableau, CrystalError> {
    check_index(i, t.bound())?;
    let mut entries = t.entries().to_vec();
    let shape = t.shared_shape();
    reflect_in_place(shape, &mut entries, i, |e| raw_text(t, e))?;
    Ok(Tableau::from_raw(shape.clone(), t.bound(), entries))
}

fn raw_text(t: &Tableau, entries: &[u32]) -> String {
    Tableau::from_raw(t.shared_shape().clone(), t.bound(), entries.to_vec()).to_string()
}

/// cₙ = σ₁ σ₂ ⋯ σₙ₋₁ with σ₁ applied first; n is the tableau's alphabet size.
pub fn c_action(t: &Tableau) -> Result<Tableau, CrystalError> {
    let mut entries = t.entries().to_vec();
    let shape = t.shared_shape();
    for i in 1..t.bound() {
        reflect_in_place(shape, &mut entries, i, |e| raw_text(t, e))?;
    }
    Ok(Tableau::from_raw(shape.clone(), t.bound(), entries))
}

/// The classical Bender–Knuth involution tᵢ.
pub fn bk_involution(t: &Tableau, i: usize) -> Result<Tableau, CrystalError> {
    check_index(i, t.bound())?;
    let mut entries = t.entries().to_vec();
    bk_in_place(t.shape(), &mut entries, i as u32);
    Ok(Tableau::from_raw(t.shared_shape().clone(), t.bound(), entries))
}

fn bk_in_place(shape: &SkewShape, entries: &mut [u32], i: u32) {
    let original = entries.to_vec();
    for r in 0..shape.num_rows() {
        let offset = shape.row_offset(r);
        let mut free = Vec::new();
        let mut lows = 0usize;
        for (k, idx) in shape.row_cells(r).enumerate() {
            let col = offset + k as u32;
            let v = original[idx];
            if v == i {
                let below = shape.cell_index(r + 1, col).map(|b| original[b]);
                if below != Some(i + 1) {
                    free.push(idx);
                    lows += 1;
                }
            } else if v == i + 1 {
                let above = r
                    .checked_sub(1)
                    .and_then(|a| shape.cell_index(a, col))
                    .map(|a| original[a]);
                if above != Some(i) {
                    free.push(idx);
                }
            }
        }
        // Free letters form a contiguous block i^a (i+1)^b; rewrite it as i^b (i+1)^a.
        let highs = free.len() - lows;
        for (k, &idx) in free.iter().enumerate() {
            entries[idx] = if k < highs { i } else { i + 1 };
        }
    }
}

/// Promotion as the product of Bender–Knuth involutions, t₁ applied first.
pub fn promotion(t: &Tableau) -> Tableau {
    let mut entries = t.entries().to_vec();
    for i in 1..t.bound() as u32 {
        bk_in_place(t.shape(), &mut entries, i);
    }
    Tableau::from_raw(t.shared_shape().clone(), t.bound(), entries)
}

/// A cₙ-orbit, listed from its least element in iteration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    pub representative: Tableau,
    pub elements: Vec<Tableau>,
}

impl Orbit {
    pub fn size(&self) -> usize {
        self.elements.len()
    }
}

/// Follows `step` from `start` until it returns, failing after `bound` iterations.
pub fn cycle_of<E>(
    start: &Tableau,
    bound: usize,
    mut step: impl FnMut(&Tableau) -> Result<Tableau, E>,
) -> Result<Vec<Tableau>, E>
where
    E: From<CrystalError>,
{
    let mut elements = vec![start.clone()];
    loop {
        let next = step(elements.last().expect("nonempty"))?;
        if next == *start {
            return Ok(elements);
        }
        if elements.len() >= bound {
            return Err(CrystalError::NonPeriodic {
                tableau: start.to_string(),
                bound,
            }
            .into());
        }
        elements.push(next);
    }
}

/// The cₙ-orbit of `t`.
pub fn orbit(t: &Tableau) -> Result<Orbit, CrystalError> {
    orbit_with_bound(t, ORBIT_SAFETY_BOUND)
}

pub fn orbit_with_bound(t: &Tableau, bound: usize) -> Result<Orbit, CrystalError> {
    let cycle = cycle_of(t, bound, c_action)?;
    let start = cycle
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.entries().cmp(b.1.entries()))
        .map(|(k, _)| k)
        .expect("nonempty");
    let mut elements = cycle[start..].to_vec();
    elements.extend_from_slice(&cycle[..start]);
    Ok(Orbit {
        representative: elements[0].clone(),
        elements,
    })
}

/// Sizes of the cycles of `step` on `set`, one per cycle, in order of first appearance.
///
/// `step` must map `set` into itself; it is not checked here.
pub fn cycle_sizes(
    set: &[Tableau],
    mut step: impl FnMut(&Tableau) -> Result<Tableau, CrystalError>,
) -> Result<Vec<usize>, CrystalError> {
    let mut seen: HashSet<Vec<u32>> = HashSet::with_capacity(set.len());
    let mut sizes = Vec::new();
    let bound = set.len().max(1);
    for t in set {
        if seen.contains(t.entries()) {
            continue;
        }
        let cycle = cycle_of(t, bound, &mut step)?;
        sizes.push(cycle.len());
        seen.extend(cycle.into_iter().map(|c| c.entries().to_vec()));
    }
    Ok(sizes)
}

fn lcm_of(sizes: &[usize]) -> u64 {
    sizes.iter().fold(1u64, |acc, &d| acc.lcm(&(d as u64)))
}

/// Order of ⟨cₙ⟩ acting on SSYT(shape, n): the lcm of its orbit sizes.
pub fn action_order(shape: &SkewShape, n: usize) -> Result<u64, CrystalError> {
    let set = crate::tableau::enumerate(shape, n);
    Ok(lcm_of(&cycle_sizes(&set, c_action)?))
}

/// Order of promotion acting on SSYT(shape, n).
pub fn promotion_order(shape: &SkewShape, n: usize) -> Result<u64, CrystalError> {
    let set = crate::tableau::enumerate(shape, n);
    Ok(lcm_of(&cycle_sizes(&set, |t| Ok(promotion(t)))?))
}

/// Braid relations σᵢσᵢ₊₁σᵢ = σᵢ₊₁σᵢσᵢ₊₁ and σᵢσⱼ = σⱼσᵢ (|i−j| > 1) on every element of `set`.
///
/// Reported for information only; nothing else relies on it.
pub fn braid_relations_hold(set: &[Tableau]) -> Result<bool, CrystalError> {
    let Some(first) = set.first() else {
        return Ok(true);
    };
    let n = first.bound();
    let word = |t: &Tableau, w: &[usize]| -> Result<Tableau, CrystalError> {
        w.iter().try_fold(t.clone(), |acc, &i| reflect(&acc, i))
    };
    for t in set {
        for i in 1..n {
            for j in i + 1..n {
                let holds = if j == i + 1 {
                    word(t, &[i, j, i])? == word(t, &[j, i, j])?
                } else {
                    word(t, &[i, j])? == word(t, &[j, i])?
                };
                if !holds {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Groups `set` into cₙ-orbits keyed by their least element.
pub fn orbits(set: &[Tableau]) -> Result<Vec<Orbit>, CrystalError> {
    let mut seen: HashMap<Vec<u32>, ()> = HashMap::with_capacity(set.len());
    let mut out = Vec::new();
    for t in set {
        if seen.contains_key(t.entries()) {
            continue;
        }
        let o = orbit_with_bound(t, set.len().max(1))?;
        for e in &o.elements {
            seen.insert(e.entries().to_vec(), ());
        }
        out.push(o);
    }
    out.sort_by(|a, b| a.representative.entries().cmp(b.representative.entries()));
    Ok(out)
}
