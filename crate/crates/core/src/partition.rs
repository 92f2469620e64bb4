//! Integer partitions and the corner calculus of their Ferrers diagrams.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{invalid, Error, Result};

/// A partition of `n` in canonical form: weakly decreasing positive parts.
///
/// Ordering is reverse-lexicographic, so for a fixed `n` the smallest
/// partition is `(n)` and the largest is `(1^n)`. This is the canonical
/// vertex order used throughout the crate.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<u32>,
    n: u32,
}

/// A cell of a Ferrers diagram, 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub struct Cell {
    pub row: u32,
    pub col: u32,
}

impl Cell {
    pub fn new(row: u32, col: u32) -> Self {
        debug_assert!(row >= 1 && col >= 1);
        Cell { row, col }
    }

    /// Reflection across the main diagonal.
    pub fn transpose(self) -> Self {
        Cell {
            row: self.col,
            col: self.row,
        }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

/// Removable and addable corners, each sorted by ascending row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CornerSets {
    pub removable: Vec<Cell>,
    pub addable: Vec<Cell>,
}

impl Partition {
    /// Builds a partition from parts that are already weakly decreasing and positive.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() {
            return Err(invalid("a partition needs at least one part"));
        }
        if parts.contains(&0) {
            return Err(invalid(format!("zero part in {parts:?}")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(invalid(format!(
                "parts {parts:?} are not weakly decreasing"
            )));
        }
        let n = parts.iter().sum();
        Ok(Partition { parts, n })
    }

    /// Canonicalizes an arbitrary multiset of part sizes (zeros are dropped).
    pub fn from_multiset(mut parts: Vec<u32>) -> Result<Self> {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(parts)
    }

    pub(crate) fn from_canonical(parts: Vec<u32>) -> Self {
        debug_assert!(!parts.is_empty() && parts.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(parts.last().is_some_and(|&p| p > 0));
        let n = parts.iter().sum();
        Partition { parts, n }
    }

    /// The one-row partition `(n)`.
    pub fn row(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(invalid("n must be positive"));
        }
        Ok(Partition::from_canonical(vec![n]))
    }

    /// The one-column partition `(1^n)`.
    pub fn column(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(invalid("n must be positive"));
        }
        Ok(Partition::from_canonical(vec![1; n as usize]))
    }

    /// The hook `(n-k, 1^k)`.
    pub fn hook(n: u32, k: u32) -> Result<Self> {
        if n == 0 || k >= n {
            return Err(invalid(format!("no hook (n-k,1^k) for n={n}, k={k}")));
        }
        let mut parts = vec![n - k];
        parts.extend(std::iter::repeat_n(1, k as usize));
        Ok(Partition::from_canonical(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// The integer being partitioned.
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Number of rows.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Row length, 1-based; 0 past the last row.
    pub fn row_len(&self, row: u32) -> u32 {
        if row == 0 {
            return u32::MAX;
        }
        self.parts.get(row as usize - 1).copied().unwrap_or(0)
    }

    pub fn contains_cell(&self, cell: Cell) -> bool {
        cell.row >= 1 && cell.col >= 1 && cell.col <= self.row_len(cell.row)
    }

    /// Transpose of the Ferrers diagram.
    pub fn conjugate(&self) -> Partition {
        let width = self.parts[0] as usize;
        let mut cols = vec![0u32; width];
        for &p in &self.parts {
            for c in cols.iter_mut().take(p as usize) {
                *c += 1;
            }
        }
        Partition::from_canonical(cols)
    }

    pub fn is_self_conjugate(&self) -> bool {
        self.conjugate() == *self
    }

    pub fn corners(&self) -> CornerSets {
        let k = self.parts.len() as u32;
        let removable = (1..=k)
            .filter(|&i| self.row_len(i) > self.row_len(i + 1))
            .map(|i| Cell::new(i, self.row_len(i)))
            .collect();
        let addable = (1..=k + 1)
            .filter(|&i| i == 1 || self.row_len(i - 1) > self.row_len(i))
            .map(|i| Cell::new(i, self.row_len(i) + 1))
            .collect();
        CornerSets { removable, addable }
    }

    /// The diagram `λ(c→a)`: remove `c`, then add `a`.
    ///
    /// Returns `Ok(None)` when the transfer is inadmissible, i.e. the cell set
    /// is not a Ferrers diagram or coincides with `self`.
    pub fn transfer(&self, c: Cell, a: Cell) -> Result<Option<Partition>> {
        let corners = self.corners();
        if !corners.removable.contains(&c) {
            return Err(invalid(format!("{c} is not a removable corner of {self}")));
        }
        if !corners.addable.contains(&a) {
            return Err(invalid(format!("{a} is not an addable corner of {self}")));
        }
        Ok(self.transfer_unchecked(c, a))
    }

    /// As [`Partition::transfer`], for cells already known to be corners.
    pub(crate) fn transfer_unchecked(&self, c: Cell, a: Cell) -> Option<Partition> {
        let mut rows = self.parts.clone();
        rows.push(0);
        let ci = c.row as usize - 1;
        debug_assert_eq!(rows[ci], c.col);
        rows[ci] -= 1;
        let ai = a.row as usize - 1;
        // The added cell must extend its row without a gap.
        if ai >= rows.len() || rows[ai] + 1 != a.col {
            return None;
        }
        rows[ai] += 1;
        while rows.last() == Some(&0) {
            rows.pop();
        }
        if rows.is_empty() || rows.windows(2).any(|w| w[0] < w[1]) {
            return None;
        }
        if rows == self.parts {
            return None;
        }
        Some(Partition::from_canonical(rows))
    }

    /// All partitions of `n + 1` obtained by adding one cell at an addable corner.
    pub fn one_cell_extensions(&self) -> Vec<Partition> {
        self.corners()
            .addable
            .into_iter()
            .map(|a| {
                let mut rows = self.parts.clone();
                if a.row as usize > rows.len() {
                    rows.push(1);
                } else {
                    rows[a.row as usize - 1] += 1;
                }
                Partition::from_canonical(rows)
            })
            .collect()
    }
}

/// The staircase `(r, r-1, ..., 1)`.
pub fn staircase(r: u32) -> Result<Partition> {
    if r == 0 {
        return Err(invalid("staircase of order 0 is the empty partition"));
    }
    Ok(Partition::from_canonical((1..=r).rev().collect()))
}

/// Every partition of `n`, in reverse-lexicographic order from `(n)` to `(1^n)`.
pub fn enumerate_partitions(n: u32) -> Result<Vec<Partition>> {
    if n == 0 {
        return Err(invalid("n must be positive"));
    }
    Ok(PartitionIter::new(n).collect())
}

/// Reverse-lexicographic partition generator.
#[derive(Debug, Clone)]
pub struct PartitionIter {
    next: Option<Vec<u32>>,
}

impl PartitionIter {
    pub fn new(n: u32) -> Self {
        PartitionIter {
            next: (n > 0).then(|| vec![n]),
        }
    }
}

impl Iterator for PartitionIter {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let current = self.next.take()?;
        let mut parts = current.clone();
        let mut spill = 0u32;
        while parts.last() == Some(&1) {
            parts.pop();
            spill += 1;
        }
        if let Some(last) = parts.last_mut() {
            *last -= 1;
            let fill = *last;
            spill += 1;
            while spill >= fill {
                parts.push(fill);
                spill -= fill;
            }
            if spill > 0 {
                parts.push(spill);
            }
            self.next = Some(parts);
        }
        Some(Partition::from_canonical(current))
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        other.parts.cmp(&self.parts)
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("expected [a,b,...], got {s:?}")))?;
        let parts = body
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|e| Error::Parse(format!("bad part {t:?} in {s:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<u32>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl TryFrom<&[u32]> for Partition {
    type Error = Error;

    fn try_from(parts: &[u32]) -> Result<Self> {
        Partition::new(parts.to_vec())
    }
}

impl serde::Serialize for Partition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Partition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
pub(crate) fn p(parts: &[u32]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}
