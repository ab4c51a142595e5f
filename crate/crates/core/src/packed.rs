//! Tableaux packed into a `u64`, for exhaustive sweeps.
//!
//! Cell k (row-major) occupies bits `4·(m−1−k) .. 4·(m−k)`, so numeric order of packed
//! words is lexicographic order of the row-major entries, the canonical tableau order.
//! Shapes with at most [`MAX_CELLS`] cells and alphabets up to [`MAX_LETTERS`] fit.
//!
//! Here σᵢ is computed in one bracket pass (unmatched iᵃ(i+1)ᵇ becomes iᵇ(i+1)ᵃ) rather
//! than by iterating eᵢ/fᵢ as [`crate::crystal::reflect`] does; tests compare the two.

use std::sync::Arc;

use crate::shapes::{SkewShape, WeakComposition};
use crate::tableau::Tableau;

pub const MAX_CELLS: usize = 16;
pub const MAX_LETTERS: usize = 15;

pub type Packed = u64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CycleError {
    /// The step map left the set at this element.
    NotClosed(Packed),
    /// The step map is not a permutation of the set.
    NotPermutation(Packed),
}

#[derive(Debug, Clone)]
pub struct PackedShape {
    shape: Arc<SkewShape>,
    n: u32,
    m: usize,
    left: Vec<Option<u8>>,
    above: Vec<Option<u8>>,
    below: Vec<Option<u8>>,
    rows: Vec<(u8, u8)>,
    /// Row moves between row-major and reading order: (row-major shift, mask, reading shift).
    moves: Vec<(u32, u64, u32)>,
    /// 0x…111 over the m used nibbles.
    ones: u64,
}

impl PackedShape {
    pub fn fits(shape: &SkewShape, n: usize) -> bool {
        shape.size() <= MAX_CELLS && n <= MAX_LETTERS
    }

    pub fn new(shape: &SkewShape, n: usize) -> Option<PackedShape> {
        if !Self::fits(shape, n) {
            return None;
        }
        let mut left = Vec::new();
        let mut above = Vec::new();
        let mut below = Vec::new();
        for (r, c) in shape.cells() {
            left.push((c > shape.row_offset(r)).then(|| left.len() as u8 - 1));
            above.push(
                r.checked_sub(1)
                    .and_then(|a| shape.cell_index(a, c))
                    .map(|k| k as u8),
            );
            below.push(shape.cell_index(r + 1, c).map(|k| k as u8));
        }
        let rows = (0..shape.num_rows())
            .map(|r| {
                let cells = shape.row_cells(r);
                (cells.start as u8, cells.end as u8)
            })
            .collect();
        let m = shape.size();
        let mut moves = Vec::new();
        let mut read = 0;
        for r in (0..shape.num_rows()).rev() {
            let cells = shape.row_cells(r);
            let len = cells.len();
            if len == 0 {
                continue;
            }
            let mask = if len == 16 { u64::MAX } else { (1 << (4 * len)) - 1 };
            moves.push((
                4 * (m - cells.end) as u32,
                mask,
                4 * (m - read - len) as u32,
            ));
            read += len;
        }
        let ones = (0..m).fold(0u64, |acc, k| acc | (1 << (4 * k)));
        Some(PackedShape {
            moves,
            ones,
            shape: Arc::new(shape.clone()),
            n: n as u32,
            m: shape.size(),
            left,
            above,
            below,
            rows,
        })
    }

    pub fn shape(&self) -> &SkewShape {
        &self.shape
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    #[inline]
    fn shift(&self, cell: usize) -> u32 {
        4 * (self.m - 1 - cell) as u32
    }

    #[inline]
    pub fn get(&self, w: Packed, cell: usize) -> u32 {
        ((w >> self.shift(cell)) & 0xF) as u32
    }

    #[inline]
    fn set(&self, w: Packed, cell: usize, v: u32) -> Packed {
        let s = self.shift(cell);
        (w & !(0xF << s)) | (u64::from(v) << s)
    }

    pub fn pack(&self, t: &Tableau) -> Packed {
        t.entries()
            .iter()
            .enumerate()
            .fold(0, |w, (k, &v)| self.set(w, k, v))
    }

    pub fn unpack(&self, w: Packed) -> Tableau {
        let entries = (0..self.m).map(|k| self.get(w, k)).collect();
        Tableau::from_raw(self.shape.clone(), self.n as usize, entries)
    }

    /// Letter counts; index `v−1` holds wᵥ.
    pub fn weight(&self, w: Packed) -> [u8; MAX_LETTERS] {
        let mut out = [0u8; MAX_LETTERS];
        for k in 0..self.m {
            out[self.get(w, k) as usize - 1] += 1;
        }
        out
    }

    /// Sum of all entries, which is Σⱼ j·wⱼ.
    #[inline]
    pub fn entry_sum(&self, w: Packed) -> u64 {
        let bytes = (w & 0x0F0F_0F0F_0F0F_0F0F) + ((w >> 4) & 0x0F0F_0F0F_0F0F_0F0F);
        bytes.wrapping_mul(0x0101_0101_0101_0101) >> 56
    }

    /// Visits SSYT(shape, n) in ascending order without collecting.
    pub fn for_each(&self, mut visit: impl FnMut(Packed)) {
        self.fill(0, 0, None, &mut visit);
    }

    /// SSYT(shape, n), ascending.
    pub fn enumerate(&self) -> Vec<Packed> {
        let mut out = Vec::new();
        self.fill(0, 0, None, &mut |w| out.push(w));
        out
    }

    /// SSYT(shape, a), ascending. `a` must have length n.
    pub fn enumerate_content(&self, content: &WeakComposition) -> Vec<Packed> {
        let mut out = Vec::new();
        if content.weight() != self.m as u64 || content.len() != self.n as usize {
            return out;
        }
        let mut rem = [0u32; MAX_LETTERS];
        rem[..content.len()].copy_from_slice(content.entries());
        self.fill(0, 0, Some(&mut rem), &mut |w| out.push(w));
        out
    }

    fn fill(
        &self,
        cell: usize,
        w: Packed,
        mut rem: Option<&mut [u32; MAX_LETTERS]>,
        out: &mut dyn FnMut(Packed),
    ) {
        if cell == self.m {
            out(w);
            return;
        }
        let mut lo = 1;
        if let Some(l) = self.left[cell] {
            lo = lo.max(self.get(w, l as usize));
        }
        if let Some(a) = self.above[cell] {
            lo = lo.max(self.get(w, a as usize) + 1);
        }
        for v in lo..=self.n {
            if let Some(r) = rem.as_deref_mut() {
                if r[v as usize - 1] == 0 {
                    continue;
                }
                r[v as usize - 1] -= 1;
            }
            self.fill(cell + 1, self.set(w, cell, v), rem.as_deref_mut(), out);
            if let Some(r) = rem.as_deref_mut() {
                r[v as usize - 1] += 1;
            }
        }
    }

    /// fᵢ: the rightmost unmatched i becomes i+1.
    pub fn lower(&self, w: Packed, i: u32) -> Option<Packed> {
        let r = self.to_reading(w);
        let (free_lows, _) = self.brackets(r, u64::from(i));
        (free_lows != 0).then(|| {
            let pos = free_lows.trailing_zeros();
            self.reading_to_rows(r ^ ((u64::from(i) ^ u64::from(i + 1)) << pos))
        })
    }

    /// eᵢ: the leftmost unmatched i+1 becomes i.
    pub fn raise(&self, w: Packed, i: u32) -> Option<Packed> {
        let r = self.to_reading(w);
        let (_, open) = self.brackets(r, u64::from(i));
        (open != 0).then(|| {
            let pos = 63 - open.leading_zeros();
            self.reading_to_rows(r ^ ((u64::from(i) ^ u64::from(i + 1)) << pos))
        })
    }

    pub fn reflect(&self, w: Packed, i: u32) -> Packed {
        self.reading_to_rows(self.reflect_reading(self.to_reading(w), u64::from(i)))
    }

    /// σ₁ first, σₙ₋₁ last, on the reading word rearranged once.
    pub fn c_action(&self, w: Packed) -> Packed {
        let mut r = self.to_reading(w);
        for i in 1..self.n as u64 {
            r = self.reflect_reading(r, i);
        }
        self.reading_to_rows(r)
    }

    /// The same nibbles in reading order, first letter most significant.
    #[inline]
    fn to_reading(&self, w: Packed) -> Packed {
        self.moves
            .iter()
            .fold(0, |acc, &(from, mask, to)| acc | (((w >> from) & mask) << to))
    }

    #[inline]
    fn reading_to_rows(&self, r: Packed) -> Packed {
        self.moves
            .iter()
            .fold(0, |acc, &(from, mask, to)| acc | (((r >> to) & mask) << from))
    }

    /// σᵢ on a reading-order word: the unmatched block iᵃ(i+1)ᵇ becomes iᵇ(i+1)ᵃ.
    ///
    /// Each letter is marked by bit 0 of its nibble. Earlier letters sit at higher bits, so
    /// the bracket pass walks marks from the top and the most recent open bracket is the
    /// lowest mark in `open`.
    #[inline]
    fn reflect_reading(&self, r: Packed, i: u64) -> Packed {
        let (mut free_lows, mut open) = self.brackets(r, i);
        let (a, b) = (free_lows.count_ones(), open.count_ones());
        let flip = i ^ (i + 1);
        let mut out = r;
        // Either the leftmost b − a unmatched i+1 become i, or the rightmost a − b
        // unmatched i become i+1.
        for _ in 0..b.saturating_sub(a) {
            let pos = 63 - open.leading_zeros();
            open ^= 1 << pos;
            out ^= flip << pos;
        }
        for _ in 0..a.saturating_sub(b) {
            let pos = free_lows.trailing_zeros();
            free_lows &= free_lows - 1;
            out ^= flip << pos;
        }
        out
    }

    /// Marks of the unmatched i and the unmatched i+1 in a reading-order word.
    #[inline]
    fn brackets(&self, r: Packed, i: u64) -> (u64, u64) {
        let highs = self.nibble_eq(r, i + 1);
        let lows = self.nibble_eq(r, i);
        let mut pending = highs | lows;
        let mut open = 0u64;
        let mut free_lows = 0u64;
        while pending != 0 {
            let bit = 1u64 << (63 - pending.leading_zeros());
            pending ^= bit;
            if highs & bit != 0 {
                open |= bit;
            } else if open != 0 {
                open &= open - 1;
            } else {
                free_lows |= bit;
            }
        }
        (free_lows, open)
    }

    /// Bit 0 of each nibble that equals `v`, over the m used nibbles.
    #[inline]
    fn nibble_eq(&self, r: Packed, v: u64) -> u64 {
        let x = r ^ (v * self.ones);
        let t = x | (x >> 1) | (x >> 2) | (x >> 3);
        !t & self.ones
    }

    pub fn bk_involution(&self, w: Packed, i: u32) -> Packed {
        let mut out = w;
        for &(start, end) in &self.rows {
            let mut free = [0u8; MAX_CELLS];
            let mut nf = 0;
            let mut lows = 0;
            for k in start..end {
                let v = self.get(w, k as usize);
                if v == i {
                    if self.below[k as usize].map(|b| self.get(w, b as usize)) != Some(i + 1) {
                        free[nf] = k;
                        nf += 1;
                        lows += 1;
                    }
                } else if v == i + 1
                    && self.above[k as usize].map(|a| self.get(w, a as usize)) != Some(i)
                {
                    free[nf] = k;
                    nf += 1;
                }
            }
            let highs = nf - lows;
            for (j, &k) in free[..nf].iter().enumerate() {
                out = self.set(out, k as usize, if j < highs { i } else { i + 1 });
            }
        }
        out
    }

    pub fn promotion(&self, w: Packed) -> Packed {
        (1..self.n).fold(w, |acc, i| self.bk_involution(acc, i))
    }

    /// Cycle sizes of `step` on an ascending `set`, in order of each cycle's least element.
    pub fn cycle_sizes(
        &self,
        set: &[Packed],
        step: impl Fn(Packed) -> Packed,
    ) -> Result<Vec<usize>, CycleError> {
        Ok(self.cycles(set, step)?.into_iter().map(|(_, d)| d).collect())
    }

    /// Each cycle of `step` on an ascending `set` as (least element, size), ascending.
    pub fn cycles(
        &self,
        set: &[Packed],
        step: impl Fn(Packed) -> Packed,
    ) -> Result<Vec<(Packed, usize)>, CycleError> {
        let mut visited = vec![false; set.len()];
        let mut out = Vec::new();
        for start in 0..set.len() {
            if visited[start] {
                continue;
            }
            visited[start] = true;
            let mut size = 1;
            let mut cur = set[start];
            loop {
                let next = step(cur);
                if next == set[start] {
                    break;
                }
                let j = set
                    .binary_search(&next)
                    .map_err(|_| CycleError::NotClosed(cur))?;
                if visited[j] {
                    return Err(CycleError::NotPermutation(cur));
                }
                visited[j] = true;
                size += 1;
                cur = next;
            }
            out.push((set[start], size));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crystal;
    use crate::tableau::enumerate;

    #[test]
    fn packed_matches_generic_on_small_shapes() {
        for m in 0..=5 {
            for shape in SkewShape::all_of_size(m) {
                for n in 1..=4 {
                    let ps = PackedShape::new(&shape, n).unwrap();
                    let generic = enumerate(&shape, n);
                    let packed = ps.enumerate();
                    assert_eq!(generic.len(), packed.len());
                    for (t, &w) in generic.iter().zip(&packed) {
                        assert_eq!(ps.pack(t), w);
                        assert_eq!(ps.unpack(w), *t);
                        for i in 1..n {
                            let iu = i as u32;
                            assert_eq!(ps.pack(&crystal::reflect(t, i).unwrap()), ps.reflect(w, iu));
                            assert_eq!(
                                crystal::lower(t, i).unwrap().map(|x| ps.pack(&x)),
                                ps.lower(w, iu)
                            );
                            assert_eq!(
                                crystal::raise(t, i).unwrap().map(|x| ps.pack(&x)),
                                ps.raise(w, iu)
                            );
                            assert_eq!(
                                ps.pack(&crystal::bk_involution(t, i).unwrap()),
                                ps.bk_involution(w, iu)
                            );
                        }
                        assert_eq!(ps.pack(&crystal::c_action(t).unwrap()), ps.c_action(w));
                        assert_eq!(ps.entry_sum(w), t.entries().iter().map(|&v| u64::from(v)).sum::<u64>());
                        assert_eq!(ps.pack(&crystal::promotion(t)), ps.promotion(w));
                    }
                }
            }
        }
    }

    #[test]
    fn packed_content_enumeration() {
        let shape = SkewShape::parse("3,2,2", "1").unwrap();
        let ps = PackedShape::new(&shape, 4).unwrap();
        let a: WeakComposition = "2,1,2,1".parse().unwrap();
        assert_eq!(ps.enumerate_content(&a).len(), 5);
        assert!(ps.enumerate_content(&"2,1,2".parse().unwrap()).is_empty());
    }

    #[test]
    fn cycle_errors() {
        let shape = SkewShape::parse("1", "").unwrap();
        let ps = PackedShape::new(&shape, 3).unwrap();
        let set = ps.enumerate();
        assert_eq!(ps.cycle_sizes(&set, |w| ps.c_action(w)).unwrap(), vec![3]);
        assert_eq!(
            ps.cycle_sizes(&set[..2], |w| ps.c_action(w)),
            Err(CycleError::NotClosed(1))
        );
        assert!(matches!(
            ps.cycle_sizes(&set, |_| 2),
            Err(CycleError::NotPermutation(_))
        ));
    }

    #[test]
    fn fits_limits() {
        let big = SkewShape::parse("17", "").unwrap();
        assert!(PackedShape::new(&big, 3).is_none());
        let small = SkewShape::parse("2", "").unwrap();
        assert!(PackedShape::new(&small, 16).is_none());
        assert!(PackedShape::new(&small, 15).is_some());
    }
}
