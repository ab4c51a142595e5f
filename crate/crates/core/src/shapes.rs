//! Partitions, skew shapes and weak compositions.
//!
//! Formulas in the docs below are 1-indexed (rows, composition positions);
//! storage is 0-indexed throughout. Cyclic indices reduce to `0..n`.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShapeError {
    #[error("parts must be weakly decreasing, but part {index} ({value}) exceeds the previous part")]
    NotDecreasing { index: usize, value: u32 },
    #[error("inner shape does not fit inside the outer shape at row {row}")]
    NotContained { row: usize },
    #[error("cannot parse {input:?} at byte {position}: {reason}")]
    Parse {
        input: String,
        position: usize,
        reason: String,
    },
}

fn parse_list(input: &str) -> Result<Vec<u32>, ShapeError> {
    let trimmed = input.trim();
    if trimmed.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut position = input.len() - input.trim_start().len();
    for token in trimmed.split(',') {
        let value = token.trim().parse::<u32>().map_err(|e| ShapeError::Parse {
            input: input.to_string(),
            position,
            reason: format!("{token:?}: {e}"),
        })?;
        out.push(value);
        position += token.len() + 1;
    }
    Ok(out)
}

/// An integer partition, stored without trailing zeros.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Builds a partition from weakly decreasing parts. Trailing zeros are dropped.
    pub fn new(mut parts: Vec<u32>) -> Result<Self, ShapeError> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        for (index, w) in parts.windows(2).enumerate() {
            if w[1] > w[0] {
                return Err(ShapeError::NotDecreasing {
                    index: index + 1,
                    value: w[1],
                });
            }
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of nonzero parts, ℓ(λ).
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn size(&self) -> u64 {
        self.parts.iter().map(|&p| u64::from(p)).sum()
    }

    /// Part in row `row` (0-indexed), zero beyond the length.
    pub fn part(&self, row: usize) -> u32 {
        self.parts.get(row).copied().unwrap_or(0)
    }

    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && (0..other.len()).all(|r| other.part(r) <= self.part(r))
    }

    /// The statistic n(λ) = Σⱼ (j−1)·λⱼ.
    pub fn nstat(&self) -> u64 {
        self.parts
            .iter()
            .enumerate()
            .map(|(j, &p)| j as u64 * u64::from(p))
            .sum()
    }

    /// All partitions of `m`, in reverse lexicographic order.
    pub fn all_of_size(m: u32) -> Vec<Partition> {
        fn go(rest: u32, max: u32, acc: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition { parts: acc.clone() });
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                acc.push(p);
                go(rest - p, p, acc, out);
                acc.pop();
            }
        }
        let mut out = Vec::new();
        go(m, m, &mut Vec::new(), &mut out);
        out
    }
}

impl FromStr for Partition {
    type Err = ShapeError;

    /// Parses `"3,2,2"`; the empty partition is `""` or `"0"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Partition::new(parse_list(s)?)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// A skew shape λ/μ. Cells of row `r` occupy columns `inner[r]..outer[r]` (0-indexed).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SkewShape {
    outer: Partition,
    inner: Partition,
    // row_start[r] is the flat row-major index of the first cell in row r.
    row_start: Vec<usize>,
}

impl SkewShape {
    pub fn new(outer: Partition, inner: Partition) -> Result<Self, ShapeError> {
        if inner.len() > outer.len() {
            return Err(ShapeError::NotContained { row: outer.len() });
        }
        if let Some(row) = (0..inner.len()).find(|&r| inner.part(r) > outer.part(r)) {
            return Err(ShapeError::NotContained { row });
        }
        let mut row_start = Vec::with_capacity(outer.len() + 1);
        let mut acc = 0usize;
        row_start.push(0);
        for r in 0..outer.len() {
            acc += (outer.part(r) - inner.part(r)) as usize;
            row_start.push(acc);
        }
        Ok(SkewShape {
            outer,
            inner,
            row_start,
        })
    }

    pub fn straight(outer: Partition) -> Self {
        SkewShape::new(outer, Partition::empty()).expect("empty inner shape always fits")
    }

    /// Parses outer and inner partitions in the comma syntax.
    pub fn parse(outer: &str, inner: &str) -> Result<Self, ShapeError> {
        SkewShape::new(outer.parse()?, inner.parse()?)
    }

    pub fn outer(&self) -> &Partition {
        &self.outer
    }

    pub fn inner(&self) -> &Partition {
        &self.inner
    }

    pub fn is_straight(&self) -> bool {
        self.inner.is_empty()
    }

    /// |λ/μ|, the number of cells.
    pub fn size(&self) -> usize {
        *self.row_start.last().unwrap_or(&0)
    }

    pub fn num_rows(&self) -> usize {
        self.outer.len()
    }

    /// Flat index range of the cells in `row`.
    pub fn row_cells(&self, row: usize) -> std::ops::Range<usize> {
        self.row_start[row]..self.row_start[row + 1]
    }

    /// First occupied column of `row` (0-indexed).
    pub fn row_offset(&self, row: usize) -> u32 {
        self.inner.part(row)
    }

    /// Flat index of the cell at `(row, col)`, if that cell belongs to the shape.
    pub fn cell_index(&self, row: usize, col: u32) -> Option<usize> {
        if row >= self.num_rows() {
            return None;
        }
        let lo = self.inner.part(row);
        if col < lo || col >= self.outer.part(row) {
            return None;
        }
        Some(self.row_start[row] + (col - lo) as usize)
    }

    /// `(row, col)` coordinates of every cell, row-major.
    pub fn cells(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        (0..self.num_rows())
            .flat_map(move |r| (self.inner.part(r)..self.outer.part(r)).map(move |c| (r, c)))
    }

    /// Flat indices in reading order: rows bottom to top, each left to right.
    pub fn reading_order(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.num_rows()).rev().flat_map(move |r| self.row_cells(r))
    }

    /// Every skew shape of size `m` without empty rows or empty columns.
    ///
    /// Empty rows and columns never constrain a filling, so this family covers every skew
    /// shape of size `m` up to deleting them. Rows are built bottom-up; the bottom row
    /// starts in column 0 and each row above starts no later than the end of the row below.
    pub fn all_of_size(m: u32) -> Vec<SkewShape> {
        fn go(
            mu_below: u32,
            la_below: u32,
            rest: u32,
            rows: &mut Vec<(u32, u32)>,
            out: &mut Vec<SkewShape>,
        ) {
            if rest == 0 {
                let outer = Partition::new(rows.iter().rev().map(|r| r.1).collect())
                    .expect("outer rows grow upward");
                let inner = Partition::new(rows.iter().rev().map(|r| r.0).collect())
                    .expect("inner rows grow upward");
                out.push(SkewShape::new(outer, inner).expect("rows are nonempty"));
                return;
            }
            for mu in mu_below..=la_below {
                for la in la_below.max(mu + 1)..=mu + rest {
                    rows.push((mu, la));
                    go(mu, la, rest - (la - mu), rows, out);
                    rows.pop();
                }
            }
        }
        let mut out = Vec::new();
        if m == 0 {
            out.push(SkewShape::straight(Partition::empty()));
            return out;
        }
        let mut rows = Vec::new();
        for la in 1..=m {
            rows.push((0, la));
            go(0, la, m - la, &mut rows, &mut out);
            rows.pop();
        }
        out.sort();
        out
    }
}

impl fmt::Display for SkewShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inner.is_empty() {
            write!(f, "{}", self.outer)
        } else {
            write!(f, "{}/{}", self.outer, self.inner)
        }
    }
}

/// A weak composition (a₁, …, aₙ) of weight m = Σ aᵢ.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeakComposition {
    entries: Vec<u32>,
}

impl WeakComposition {
    pub fn new(entries: Vec<u32>) -> Self {
        WeakComposition { entries }
    }

    pub fn zero(n: usize) -> Self {
        WeakComposition {
            entries: vec![0; n],
        }
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn weight(&self) -> u64 {
        self.entries.iter().map(|&a| u64::from(a)).sum()
    }

    /// cyc_r(a) = (a_{1+r}, …, a_{n+r}) with indices mod n. Any integer `r` is accepted.
    pub fn cyclic_shift(&self, r: i64) -> WeakComposition {
        let n = self.entries.len();
        if n == 0 {
            return self.clone();
        }
        let r = r.rem_euclid(n as i64) as usize;
        let mut entries = Vec::with_capacity(n);
        entries.extend_from_slice(&self.entries[r..]);
        entries.extend_from_slice(&self.entries[..r]);
        WeakComposition { entries }
    }

    /// The simple transposition sᵢ (1-indexed `i`): swaps positions i and i+1.
    pub fn swap(&self, i: usize) -> WeakComposition {
        let mut entries = self.entries.clone();
        entries.swap(i - 1, i);
        WeakComposition { entries }
    }

    /// Whether cyc_1(a), …, cyc_n(a) are pairwise distinct.
    pub fn all_shifts_distinct(&self) -> bool {
        // The shifts are distinct iff no proper shift fixes a.
        (1..self.len() as i64).all(|r| self.cyclic_shift(r) != *self)
    }

    /// (z₁, …, zₙ) with z_r = Σ_{j=1}^{n} j·a_{j+r}.
    pub fn shifted_residues(&self) -> Vec<u64> {
        let n = self.len();
        (1..=n)
            .map(|r| {
                (1..=n)
                    .map(|j| j as u64 * u64::from(self.entries[(j + r - 1) % n]))
                    .sum()
            })
            .collect()
    }

    /// The lexicographically least cyclic shift, used as the representative of a shift class.
    pub fn min_rotation(&self) -> WeakComposition {
        (0..self.len().max(1) as i64)
            .map(|r| self.cyclic_shift(r))
            .min()
            .unwrap_or_default()
    }

    /// All of WCOMP(m, n), in lexicographic order.
    pub fn all(m: u32, n: usize) -> Vec<WeakComposition> {
        fn go(rest: u32, slots: usize, acc: &mut Vec<u32>, out: &mut Vec<WeakComposition>) {
            if slots == 1 {
                acc.push(rest);
                out.push(WeakComposition::new(acc.clone()));
                acc.pop();
                return;
            }
            for a in 0..=rest {
                acc.push(a);
                go(rest - a, slots - 1, acc, out);
                acc.pop();
            }
        }
        let mut out = Vec::new();
        if n == 0 {
            if m == 0 {
                out.push(WeakComposition::default());
            }
            return out;
        }
        go(m, n, &mut Vec::with_capacity(n), &mut out);
        out
    }

    /// One representative (the least rotation) of every cyclic shift class of WCOMP(m, n).
    pub fn shift_classes(m: u32, n: usize) -> Vec<WeakComposition> {
        Self::all(m, n)
            .into_iter()
            .filter(|a| a.min_rotation() == *a)
            .collect()
    }
}

impl FromStr for WeakComposition {
    type Err = ShapeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(WeakComposition::new(parse_list(s)?))
    }
}

impl fmt::Display for WeakComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(u32::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn comp(v: &[u32]) -> WeakComposition {
        WeakComposition::new(v.to_vec())
    }

    #[test]
    fn nstat_values() {
        assert_eq!("3,2,2".parse::<Partition>().unwrap().nstat(), 6);
        assert_eq!(Partition::empty().nstat(), 0);
        assert_eq!("5".parse::<Partition>().unwrap().nstat(), 0);
    }

    #[test]
    fn partition_parsing() {
        assert_eq!("0".parse::<Partition>().unwrap(), Partition::empty());
        assert_eq!("".parse::<Partition>().unwrap(), Partition::empty());
        assert_eq!("3,1,0".parse::<Partition>().unwrap().parts(), &[3, 1]);
        assert!(matches!(
            "1,2".parse::<Partition>(),
            Err(ShapeError::NotDecreasing { index: 1, value: 2 })
        ));
        assert!(matches!(
            "3,x".parse::<Partition>(),
            Err(ShapeError::Parse { position: 2, .. })
        ));
    }

    #[test]
    fn skew_containment() {
        assert!(SkewShape::parse("3,2,2", "1").is_ok());
        assert!(matches!(
            SkewShape::parse("2", "1,1"),
            Err(ShapeError::NotContained { .. })
        ));
        assert!(matches!(
            SkewShape::parse("2,1", "1,2"),
            Err(ShapeError::NotDecreasing { .. })
        ));
        assert!(matches!(
            SkewShape::parse("2,1", "3"),
            Err(ShapeError::NotContained { row: 0 })
        ));
        let s = SkewShape::parse("3,2,2", "1").unwrap();
        assert_eq!(s.size(), 6);
        assert_eq!(
            s.cells().collect::<Vec<_>>(),
            vec![(0, 1), (0, 2), (1, 0), (1, 1), (2, 0), (2, 1)]
        );
        assert_eq!(s.reading_order().collect::<Vec<_>>(), vec![4, 5, 2, 3, 0, 1]);
        assert_eq!(s.cell_index(0, 0), None);
        assert_eq!(s.cell_index(1, 1), Some(3));
        assert_eq!(s.to_string(), "3,2,2/1");
    }

    #[test]
    fn cyclic_shift_examples() {
        assert_eq!(comp(&[2, 1, 2, 1]).cyclic_shift(1), comp(&[1, 2, 1, 2]));
        assert_eq!(comp(&[2, 1, 2, 1]).cyclic_shift(4), comp(&[2, 1, 2, 1]));
        assert_eq!(comp(&[2, 0, 0]).cyclic_shift(2), comp(&[0, 2, 0]));
        assert_eq!(comp(&[2, 0, 0]).cyclic_shift(-1), comp(&[0, 2, 0]));
    }

    #[test]
    fn shifts_distinct_examples() {
        assert!(comp(&[2, 1, 2]).all_shifts_distinct());
        assert!(!comp(&[1, 0, 1, 0]).all_shifts_distinct());
        assert!(comp(&[7]).all_shifts_distinct());
    }

    #[test]
    fn shifted_residue_examples() {
        let z = comp(&[2, 1, 2]).shifted_residues();
        assert_eq!(z, vec![11, 9, 10]);
        assert_eq!(z.iter().map(|v| v % 3).collect::<Vec<_>>(), vec![2, 0, 1]);
        let z = comp(&[1, 0, 1, 0]).shifted_residues();
        assert_eq!(z.iter().map(|v| v % 4).collect::<Vec<_>>(), vec![2, 0, 2, 0]);
        assert_eq!(comp(&[0, 0, 0, 0, 0]).shifted_residues(), vec![0; 5]);
    }

    #[test]
    fn compositions_and_classes() {
        assert_eq!(WeakComposition::all(2, 3).len(), 6);
        assert_eq!(WeakComposition::all(0, 0).len(), 1);
        assert!(WeakComposition::all(1, 0).is_empty());
        // WCOMP(3,3) has 10 elements: (1,1,1) alone and three free classes.
        assert_eq!(WeakComposition::shift_classes(3, 3).len(), 4);
    }

    #[test]
    fn skew_family_counts() {
        // size 1: a single box; size 2: row, column, two disconnected boxes.
        assert_eq!(SkewShape::all_of_size(1).len(), 1);
        assert_eq!(SkewShape::all_of_size(2).len(), 3);
        for m in 1..=6 {
            for s in SkewShape::all_of_size(m) {
                assert_eq!(s.size(), m as usize);
            }
        }
    }

    #[test]
    fn partitions_of_size() {
        let counts: Vec<usize> = (0..=8).map(|m| Partition::all_of_size(m).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22]);
    }
}
