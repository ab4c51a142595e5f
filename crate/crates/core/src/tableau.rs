//! Skew semistandard Young tableaux.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::shapes::{Partition, ShapeError, SkewShape, WeakComposition};

/// Cells are reported 1-indexed as `(row, column)` of the outer diagram.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableauError {
    #[error("row {row} has {found} entries but the shape has {expected} cells there")]
    ShapeMismatch {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("row not weakly increasing at cell ({row}, {col})")]
    RowViolation { row: usize, col: u32 },
    #[error("column not strictly increasing at cell ({row}, {col})")]
    ColumnViolation { row: usize, col: u32 },
    #[error("entry {value} at cell ({row}, {col}) is outside 1..={bound}")]
    EntryOutOfRange {
        row: usize,
        col: u32,
        value: u32,
        bound: usize,
    },
    #[error(transparent)]
    Shape(#[from] ShapeError),
    #[error("cannot parse tableau {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

/// A semistandard filling of a skew shape with entries in `1..=bound`.
///
/// Entries are stored flat in row-major order (top row first, left to right); the cells of
/// the inner shape are absent, not zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tableau {
    shape: Arc<SkewShape>,
    bound: usize,
    entries: Vec<u32>,
}

impl Tableau {
    /// Checks a filling given row by row.
    pub fn validate(
        shape: &SkewShape,
        rows: &[Vec<u32>],
        bound: usize,
    ) -> Result<Tableau, TableauError> {
        Self::validate_shared(Arc::new(shape.clone()), rows, bound)
    }

    pub fn validate_shared(
        shape: Arc<SkewShape>,
        rows: &[Vec<u32>],
        bound: usize,
    ) -> Result<Tableau, TableauError> {
        if rows.len() != shape.num_rows() {
            let row = rows.len().min(shape.num_rows()) + 1;
            let expected = if rows.len() < shape.num_rows() {
                shape.row_cells(row - 1).len()
            } else {
                0
            };
            let found = rows.get(row - 1).map_or(0, Vec::len);
            return Err(TableauError::ShapeMismatch {
                row,
                expected,
                found,
            });
        }
        for (r, row) in rows.iter().enumerate() {
            let expected = shape.row_cells(r).len();
            if row.len() != expected {
                return Err(TableauError::ShapeMismatch {
                    row: r + 1,
                    expected,
                    found: row.len(),
                });
            }
        }
        let entries: Vec<u32> = rows.iter().flatten().copied().collect();
        let t = Tableau {
            shape,
            bound,
            entries,
        };
        t.check()?;
        Ok(t)
    }

    fn check(&self) -> Result<(), TableauError> {
        let shape = &*self.shape;
        for (idx, (r, c)) in shape.cells().enumerate() {
            let v = self.entries[idx];
            let (row, col) = (r + 1, c + 1);
            if v == 0 || v as usize > self.bound {
                return Err(TableauError::EntryOutOfRange {
                    row,
                    col,
                    value: v,
                    bound: self.bound,
                });
            }
            if c > shape.row_offset(r) && self.entries[idx - 1] > v {
                return Err(TableauError::RowViolation { row, col });
            }
            if r > 0 {
                if let Some(above) = shape.cell_index(r - 1, c) {
                    if self.entries[above] >= v {
                        return Err(TableauError::ColumnViolation { row, col });
                    }
                }
            }
        }
        Ok(())
    }

    /// Builds a tableau from trusted row-major entries. Callers guarantee validity.
    pub(crate) fn from_raw(shape: Arc<SkewShape>, bound: usize, entries: Vec<u32>) -> Tableau {
        debug_assert_eq!(entries.len(), shape.size());
        Tableau {
            shape,
            bound,
            entries,
        }
    }

    /// Parses the text format, e.g. `".,1,3;1,3;2,4"`; the shape is read off the text.
    pub fn parse(text: &str, bound: usize) -> Result<Tableau, TableauError> {
        let (inner, rows) = split_text(text)?;
        let outer: Vec<u32> = inner
            .iter()
            .zip(&rows)
            .map(|(&i, row)| i + row.len() as u32)
            .collect();
        let shape = SkewShape::new(Partition::new(outer)?, Partition::new(inner)?)?;
        Tableau::validate(&shape, &rows, bound)
    }

    /// Parses the text format against a known shape.
    pub fn parse_with_shape(
        shape: &SkewShape,
        text: &str,
        bound: usize,
    ) -> Result<Tableau, TableauError> {
        let (inner, rows) = split_text(text)?;
        let inner_given = Partition::new(inner)?;
        if inner_given != *shape.inner() {
            return Err(TableauError::Parse {
                input: text.to_string(),
                reason: format!(
                    "absent cells describe inner shape {inner_given}, expected {}",
                    shape.inner()
                ),
            });
        }
        Tableau::validate(shape, &rows, bound)
    }

    pub fn shape(&self) -> &SkewShape {
        &self.shape
    }

    pub fn shared_shape(&self) -> &Arc<SkewShape> {
        &self.shape
    }

    /// The alphabet size n; entries lie in `1..=n`.
    pub fn bound(&self) -> usize {
        self.bound
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<&[u32]> {
        (0..self.shape.num_rows())
            .map(|r| &self.entries[self.shape.row_cells(r)])
            .collect()
    }

    /// (w₁(T), …, wₙ(T)).
    pub fn weight(&self) -> WeakComposition {
        WeakComposition::new(weight_of(&self.entries, self.bound))
    }

    /// Rows from bottom to top, each read left to right.
    pub fn reading_word(&self) -> Vec<u32> {
        self.shape.reading_order().map(|i| self.entries[i]).collect()
    }

    /// Same shape, different alphabet size. Fails if an entry exceeds the new bound.
    pub fn with_bound(&self, bound: usize) -> Result<Tableau, TableauError> {
        let t = Tableau {
            shape: self.shape.clone(),
            bound,
            entries: self.entries.clone(),
        };
        t.check()?;
        Ok(t)
    }
}

pub(crate) fn weight_of(entries: &[u32], bound: usize) -> Vec<u32> {
    let mut w = vec![0u32; bound];
    for &v in entries {
        w[v as usize - 1] += 1;
    }
    w
}

fn split_text(text: &str) -> Result<(Vec<u32>, Vec<Vec<u32>>), TableauError> {
    let bad = |reason: String| TableauError::Parse {
        input: text.to_string(),
        reason,
    };
    let mut inner = Vec::new();
    let mut rows = Vec::new();
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Ok((inner, rows));
    }
    for (r, row_text) in trimmed.split(';').enumerate() {
        let mut dots = 0u32;
        let mut row = Vec::new();
        for token in row_text.split(',').map(str::trim) {
            if token == "." {
                if !row.is_empty() {
                    return Err(bad(format!("absent cell after an entry in row {}", r + 1)));
                }
                dots += 1;
            } else {
                let v = token
                    .parse::<u32>()
                    .map_err(|e| bad(format!("row {}: {token:?}: {e}", r + 1)))?;
                row.push(v);
            }
        }
        if row.is_empty() && dots == 0 {
            return Err(bad(format!("row {} is empty", r + 1)));
        }
        inner.push(dots);
        rows.push(row);
    }
    Ok((inner, rows))
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows()
            .iter()
            .enumerate()
            .map(|(r, row)| {
                let dots = (0..self.shape.row_offset(r)).map(|_| ".".to_string());
                dots.chain(row.iter().map(u32::to_string))
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        write!(f, "{}", rows.join(";"))
    }
}

/// Backtracking state shared by [`enumerate`], [`enumerate_content`] and [`kostka`].
struct Filler<'a> {
    bound: u32,
    left: Vec<Option<usize>>,
    above: Vec<Option<usize>>,
    remaining: Option<&'a mut [u32]>,
    entries: Vec<u32>,
}

impl Filler<'_> {
    fn new<'a>(shape: &SkewShape, bound: usize, remaining: Option<&'a mut [u32]>) -> Filler<'a> {
        let mut left = Vec::with_capacity(shape.size());
        let mut above = Vec::with_capacity(shape.size());
        for (r, c) in shape.cells() {
            left.push(if c > shape.row_offset(r) {
                Some(left.len() - 1)
            } else {
                None
            });
            above.push(if r > 0 { shape.cell_index(r - 1, c) } else { None });
        }
        Filler {
            bound: bound as u32,
            left,
            above,
            remaining,
            entries: vec![0; shape.size()],
        }
    }

    fn run(&mut self, cell: usize, visit: &mut dyn FnMut(&[u32])) {
        if cell == self.entries.len() {
            visit(&self.entries);
            return;
        }
        let mut lo = 1;
        if let Some(l) = self.left[cell] {
            lo = lo.max(self.entries[l]);
        }
        if let Some(a) = self.above[cell] {
            lo = lo.max(self.entries[a] + 1);
        }
        for v in lo..=self.bound {
            if let Some(rem) = self.remaining.as_deref_mut() {
                let slot = &mut rem[v as usize - 1];
                if *slot == 0 {
                    continue;
                }
                *slot -= 1;
            }
            self.entries[cell] = v;
            self.run(cell + 1, visit);
            if let Some(rem) = self.remaining.as_deref_mut() {
                rem[v as usize - 1] += 1;
            }
        }
    }
}

/// Calls `visit` on the row-major entries of every element of SSYT(shape, n), in
/// lexicographic order of those entries.
pub fn for_each_ssyt(shape: &SkewShape, n: usize, mut visit: impl FnMut(&[u32])) {
    Filler::new(shape, n, None).run(0, &mut visit);
}

/// As [`for_each_ssyt`], restricted to SSYT(shape, a).
pub fn for_each_ssyt_with_content(
    shape: &SkewShape,
    content: &WeakComposition,
    mut visit: impl FnMut(&[u32]),
) {
    if content.weight() != shape.size() as u64 {
        return;
    }
    let mut remaining = content.entries().to_vec();
    Filler::new(shape, content.len(), Some(&mut remaining)).run(0, &mut visit);
}

/// SSYT(shape, n) in canonical order (lexicographic on row-major entries).
pub fn enumerate(shape: &SkewShape, n: usize) -> Vec<Tableau> {
    let shared = Arc::new(shape.clone());
    let mut out = Vec::new();
    for_each_ssyt(shape, n, |e| {
        out.push(Tableau::from_raw(shared.clone(), n, e.to_vec()))
    });
    out
}

/// SSYT(shape, a), with alphabet size `a.len()`, in canonical order.
pub fn enumerate_content(shape: &SkewShape, content: &WeakComposition) -> Vec<Tableau> {
    let shared = Arc::new(shape.clone());
    let n = content.len();
    let mut out = Vec::new();
    for_each_ssyt_with_content(shape, content, |e| {
        out.push(Tableau::from_raw(shared.clone(), n, e.to_vec()))
    });
    out
}

/// The skew Kostka number |SSYT(shape, a)|.
pub fn kostka(shape: &SkewShape, content: &WeakComposition) -> u64 {
    let mut count = 0u64;
    for_each_ssyt_with_content(shape, content, |_| count += 1);
    count
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(outer: &str, inner: &str) -> SkewShape {
        SkewShape::parse(outer, inner).unwrap()
    }

    fn example_tableau() -> Tableau {
        Tableau::validate(
            &shape("3,2,2", "1"),
            &[vec![1, 3], vec![1, 3], vec![2, 4]],
            4,
        )
        .unwrap()
    }

    #[test]
    fn validate_accepts_example() {
        let t = example_tableau();
        assert_eq!(t.to_string(), ".,1,3;1,3;2,4");
    }

    #[test]
    fn validate_errors_name_cells() {
        assert_eq!(
            Tableau::validate(&shape("2", ""), &[vec![2, 1]], 2),
            Err(TableauError::RowViolation { row: 1, col: 2 })
        );
        assert_eq!(
            Tableau::validate(&shape("1,1", ""), &[vec![1], vec![1]], 2),
            Err(TableauError::ColumnViolation { row: 2, col: 1 })
        );
        assert_eq!(
            Tableau::validate(&shape("2", ""), &[vec![1, 3]], 2),
            Err(TableauError::EntryOutOfRange {
                row: 1,
                col: 2,
                value: 3,
                bound: 2
            })
        );
        assert_eq!(
            Tableau::validate(&shape("2", ""), &[vec![0, 1]], 2),
            Err(TableauError::EntryOutOfRange {
                row: 1,
                col: 1,
                value: 0,
                bound: 2
            })
        );
        assert_eq!(
            Tableau::validate(&shape("2,1", ""), &[vec![1, 1], vec![2, 2]], 2),
            Err(TableauError::ShapeMismatch {
                row: 2,
                expected: 1,
                found: 2
            })
        );
        assert!(matches!(
            Tableau::validate(&shape("2,1", ""), &[vec![1, 1]], 2),
            Err(TableauError::ShapeMismatch { row: 2, .. })
        ));
    }

    #[test]
    fn skew_columns_only_compare_present_cells() {
        // The cell (2,1) has no cell above it in 2,2/1.
        assert!(Tableau::validate(&shape("2,2", "1"), &[vec![2], vec![1, 3]], 3).is_ok());
        assert_eq!(
            Tableau::validate(&shape("2,2", "1"), &[vec![2], vec![1, 2]], 3),
            Err(TableauError::ColumnViolation { row: 2, col: 2 })
        );
    }

    #[test]
    fn weight_examples() {
        assert_eq!(example_tableau().weight().entries(), &[2, 1, 2, 1]);
        let empty = Tableau::validate(&shape("", ""), &[], 3).unwrap();
        assert_eq!(empty.weight().entries(), &[0, 0, 0]);
        let row = Tableau::validate(&shape("3", ""), &[vec![1, 1, 2]], 3).unwrap();
        assert_eq!(row.weight().entries(), &[2, 1, 0]);
    }

    #[test]
    fn reading_word_examples() {
        assert_eq!(example_tableau().reading_word(), vec![2, 4, 1, 3, 1, 3]);
        let single = Tableau::validate(&shape("1", ""), &[vec![5]], 5).unwrap();
        assert_eq!(single.reading_word(), vec![5]);
        let column = Tableau::validate(&shape("1,1", ""), &[vec![1], vec![2]], 2).unwrap();
        assert_eq!(column.reading_word(), vec![2, 1]);
    }

    #[test]
    fn text_format() {
        let t = Tableau::parse(".,1,3;1,3;2,4", 4).unwrap();
        assert_eq!(t, example_tableau());
        let s = shape("3,2,2", "1");
        assert_eq!(
            Tableau::parse_with_shape(&s, ".,1,3;1,3;2,4", 4).unwrap(),
            example_tableau()
        );
        assert!(Tableau::parse_with_shape(&s, "1,1,3;1,3;2,4", 4).is_err());
        assert!(Tableau::parse("1,.,3", 4).is_err());
        assert!(Tableau::parse("1,x", 4).is_err());
        assert!(Tableau::parse("1;;2", 4).is_err());
        let covered = Tableau::parse(".,2;.", 4).unwrap();
        assert_eq!(covered.shape(), &shape("2,1", "1,1"));
        assert_eq!(covered.to_string(), ".,2;.");
        let empty = Tableau::parse("", 2).unwrap();
        assert_eq!(empty.to_string(), "");
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(enumerate(&shape("2,1", ""), 3).len(), 8);
        assert!(enumerate(&shape("1,1,1", ""), 2).is_empty());
        assert_eq!(enumerate(&shape("", ""), 0).len(), 1);
        assert!(enumerate(&shape("1", ""), 0).is_empty());
        let all = enumerate(&shape("3,2,2", "1"), 4);
        for text in [
            ".,1,3;1,3;2,4",
            ".,2,4;1,3;2,4",
            ".,1,4;1,3;2,4",
            ".,1,3;1,2;2,4",
            ".,2,3;1,3;2,4",
            ".,2,4;1,3;3,4",
        ] {
            assert!(all.contains(&Tableau::parse(text, 4).unwrap()), "{text}");
        }
        assert!(all.windows(2).all(|w| w[0].entries() < w[1].entries()));
    }

    #[test]
    fn enumerate_content_examples() {
        let s = shape("3,2,2", "1");
        let ts = enumerate_content(&s, &"2,1,2,1".parse().unwrap());
        let texts: Vec<String> = ts.iter().map(Tableau::to_string).collect();
        assert_eq!(
            texts,
            vec![
                ".,1,1;2,3;3,4",
                ".,1,2;1,3;3,4",
                ".,1,3;1,2;3,4",
                ".,1,3;1,3;2,4",
                ".,1,4;1,2;3,3",
            ]
        );

        let ts = enumerate_content(&shape("3,1", ""), &"3,1".parse().unwrap());
        assert_eq!(ts.len(), 1);
        assert_eq!(ts[0].to_string(), "1,1,1;2");

        assert_eq!(kostka(&shape("2,1", ""), &"1,1,1".parse().unwrap()), 2);
        assert_eq!(kostka(&shape("2,1", ""), &"1,1".parse().unwrap()), 0);
        assert_eq!(kostka(&shape("2,1", ""), &"2,1,1".parse().unwrap()), 0);
    }
}
