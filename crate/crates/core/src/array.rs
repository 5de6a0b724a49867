use crate::error::{Error, Location, Result};
use crate::support::{collect_support, SupportSet};

/// Adds `x` to positive entries and `-x` to negative ones.
///
/// For a shiftable input every row and column sum is preserved.
pub trait Shift: Sized {
    fn shifted(&self, x: u64) -> Self;
}

#[inline]
pub(crate) fn shift_entry(e: i64, x: u64) -> i64 {
    let x = x as i64;
    if e > 0 {
        e + x
    } else {
        e - x
    }
}

/// An `m x n` partially filled array. Indices are 1-based at the API boundary.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PFArray {
    rows: usize,
    cols: usize,
    cells: Vec<Option<i64>>,
}

impl PFArray {
    pub fn new(rows: usize, cols: usize) -> Self {
        PFArray {
            rows,
            cols,
            cells: vec![None; rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    fn idx(&self, row: usize, col: usize) -> usize {
        (row - 1) * self.cols + (col - 1)
    }

    /// Reduces an arbitrary row index into `[1, m]`.
    pub fn wrap_row(&self, row: i64) -> usize {
        (row - 1).rem_euclid(self.rows as i64) as usize + 1
    }

    /// Reduces an arbitrary column index into `[1, n]`.
    pub fn wrap_col(&self, col: i64) -> usize {
        (col - 1).rem_euclid(self.cols as i64) as usize + 1
    }

    /// Entry at `(row, col)`, or `None` for an empty or out-of-range cell.
    pub fn get(&self, row: usize, col: usize) -> Option<i64> {
        if row == 0 || col == 0 || row > self.rows || col > self.cols {
            return None;
        }
        self.cells[self.idx(row, col)]
    }

    /// Writes `value` with toroidal wrap. Refuses zero and occupied cells.
    pub fn place(&mut self, row: i64, col: i64, value: i64) -> Result<()> {
        let (r, c) = (self.wrap_row(row), self.wrap_col(col));
        if value == 0 {
            return Err(Error::ZeroEntry { row: r, col: c });
        }
        let i = self.idx(r, c);
        if let Some(existing) = self.cells[i] {
            return Err(Error::CellCollision {
                row: r,
                col: c,
                existing,
                incoming: value,
            });
        }
        self.cells[i] = Some(value);
        Ok(())
    }

    /// Overwrites or clears a cell without checks. `row`/`col` must be in range.
    pub fn set(&mut self, row: usize, col: usize, value: Option<i64>) {
        let i = self.idx(row, col);
        self.cells[i] = value;
    }

    /// Filled cells in row-major order as `(row, col, value)`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        let n = self.cols;
        self.cells
            .iter()
            .enumerate()
            .filter_map(move |(i, v)| v.map(|v| (i / n + 1, i % n + 1, v)))
    }

    pub fn filled(&self) -> usize {
        self.cells.iter().filter(|c| c.is_some()).count()
    }

    pub fn row(&self, row: usize) -> &[Option<i64>] {
        let start = (row - 1) * self.cols;
        &self.cells[start..start + self.cols]
    }

    pub fn row_sums(&self) -> Vec<i64> {
        (1..=self.rows)
            .map(|r| self.row(r).iter().flatten().sum())
            .collect()
    }

    pub fn col_sums(&self) -> Vec<i64> {
        let mut sums = vec![0; self.cols];
        for (_, c, v) in self.entries() {
            sums[c - 1] += v;
        }
        sums
    }

    pub fn transpose(&self) -> PFArray {
        let mut out = PFArray::new(self.cols, self.rows);
        for (r, c, v) in self.entries() {
            out.set(c, r, Some(v));
        }
        out
    }

    pub fn support(&self) -> Result<SupportSet> {
        collect_support(self.entries().map(|(row, col, v)| {
            (
                Location {
                    block: None,
                    row,
                    col,
                },
                v,
            )
        }))
    }

    /// Stacks `other` below `self`; both must have the same width.
    pub fn stack(&self, other: &PFArray) -> Result<PFArray> {
        if self.cols != other.cols {
            return Err(Error::ShapeViolation(format!(
                "cannot stack widths {} and {}",
                self.cols, other.cols
            )));
        }
        let mut cells = self.cells.clone();
        cells.extend_from_slice(&other.cells);
        Ok(PFArray {
            rows: self.rows + other.rows,
            cols: self.cols,
            cells,
        })
    }
}

impl Shift for PFArray {
    fn shifted(&self, x: u64) -> Self {
        PFArray {
            rows: self.rows,
            cols: self.cols,
            cells: self
                .cells
                .iter()
                .map(|c| c.map(|e| shift_entry(e, x)))
                .collect(),
        }
    }
}

impl std::fmt::Display for PFArray {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let width = self
            .entries()
            .map(|(_, _, v)| v.to_string().len())
            .max()
            .unwrap_or(1);
        for r in 1..=self.rows {
            let line: Vec<String> = self
                .row(r)
                .iter()
                .map(|c| match c {
                    Some(v) => format!("{v:>width$}"),
                    None => format!("{:>width$}", "."),
                })
                .collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// A small rectangular array used as a building unit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Block {
    name: String,
    height: usize,
    width: usize,
    cells: Vec<Option<i64>>,
}

impl Block {
    /// Builds a block from its rows. Rows must share a length; zero entries are rejected.
    pub fn from_rows(name: impl Into<String>, rows: Vec<Vec<Option<i64>>>) -> Result<Block> {
        let name = name.into();
        let height = rows.len();
        let width = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != width) {
            return Err(Error::MalformedBlock {
                name,
                reason: "rows of unequal length".into(),
            });
        }
        let cells: Vec<Option<i64>> = rows.into_iter().flatten().collect();
        if cells.contains(&Some(0)) {
            return Err(Error::MalformedBlock {
                name,
                reason: "zero entry".into(),
            });
        }
        Ok(Block {
            name,
            height,
            width,
            cells,
        })
    }

    /// Fully filled block from dense rows.
    pub fn dense(name: impl Into<String>, rows: &[&[i64]]) -> Result<Block> {
        Block::from_rows(
            name,
            rows.iter()
                .map(|r| r.iter().map(|&v| Some(v)).collect())
                .collect(),
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Block {
        self.name = name.into();
        self
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Entry at 1-based `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> Option<i64> {
        if row == 0 || col == 0 || row > self.height || col > self.width {
            return None;
        }
        self.cells[(row - 1) * self.width + col - 1]
    }

    pub fn row(&self, row: usize) -> &[Option<i64>] {
        let start = (row - 1) * self.width;
        &self.cells[start..start + self.width]
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        let w = self.width;
        self.cells
            .iter()
            .enumerate()
            .filter_map(move |(i, v)| v.map(|v| (i / w + 1, i % w + 1, v)))
    }

    pub fn row_sums(&self) -> Vec<i64> {
        (1..=self.height)
            .map(|r| self.row(r).iter().flatten().sum())
            .collect()
    }

    pub fn col_sums(&self) -> Vec<i64> {
        let mut sums = vec![0; self.width];
        for (_, c, v) in self.entries() {
            sums[c - 1] += v;
        }
        sums
    }

    /// True when every row and column has as many positive as negative entries.
    pub fn is_shiftable(&self) -> bool {
        let mut rows = vec![0i64; self.height];
        let mut cols = vec![0i64; self.width];
        for (r, c, v) in self.entries() {
            let s = v.signum();
            rows[r - 1] += s;
            cols[c - 1] += s;
        }
        rows.iter().chain(&cols).all(|&b| b == 0)
    }

    pub fn support(&self) -> Result<SupportSet> {
        self.support_in(None)
    }

    pub(crate) fn support_in(&self, block: Option<usize>) -> Result<SupportSet> {
        collect_support(
            self.entries()
                .map(|(row, col, v)| (Location { block, row, col }, v)),
        )
    }

    /// Columns `first..=last` (1-based) as a new block.
    pub fn columns(&self, first: usize, last: usize) -> Block {
        let rows = (1..=self.height)
            .map(|r| self.row(r)[first - 1..last].to_vec())
            .collect();
        Block::from_rows(format!("{}[{first}..{last}]", self.name), rows)
            .expect("slice of a valid block")
    }
}

impl Shift for Block {
    fn shifted(&self, x: u64) -> Self {
        let name = if x == 0 {
            self.name.clone()
        } else {
            format!("{}+{x}", self.name)
        };
        Block {
            name,
            height: self.height,
            width: self.width,
            cells: self
                .cells
                .iter()
                .map(|c| c.map(|e| shift_entry(e, x)))
                .collect(),
        }
    }
}

/// Horizontal concatenation.
pub fn juxtapose(blocks: &[Block]) -> Result<Block> {
    let Some(first) = blocks.first() else {
        return Block::from_rows("", Vec::new());
    };
    let height = first.height;
    for b in blocks {
        if b.height != height {
            return Err(Error::HeightMismatch {
                left: height,
                right: b.height,
            });
        }
    }
    if blocks.len() == 1 {
        return Ok(first.clone());
    }
    let rows = (1..=height)
        .map(|r| blocks.iter().flat_map(|b| b.row(r).iter().copied()).collect())
        .collect();
    let name = blocks
        .iter()
        .map(Block::name)
        .collect::<Vec<_>>()
        .join("|");
    Block::from_rows(name, rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bab(a: i64, b: i64) -> Block {
        Block::from_rows(
            "B",
            vec![
                vec![Some(1), Some(-(a + 1))],
                vec![None, None],
                vec![Some(-(b + 1)), Some(a + b + 1)],
            ],
        )
        .unwrap()
    }

    #[test]
    fn shift_bab() {
        let b = bab(2, 5).shifted(10);
        assert_eq!(b.row(1), &[Some(11), Some(-13)]);
        assert_eq!(b.row(3), &[Some(-16), Some(18)]);
        assert_eq!(bab(2, 5).shifted(0), bab(2, 5));
    }

    #[test]
    fn bab_sums() {
        let b = bab(2, 5);
        assert_eq!(b.row_sums(), vec![-2, 0, 2]);
        assert_eq!(b.col_sums(), vec![-5, 5]);
        assert!(b.is_shiftable());
    }

    #[test]
    fn place_wraps_and_detects_collisions() {
        let mut a = PFArray::new(3, 4);
        a.place(4, 0, 7).unwrap();
        assert_eq!(a.get(1, 4), Some(7));
        assert!(matches!(
            a.place(1, 8, 2),
            Err(Error::CellCollision { row: 1, col: 4, existing: 7, incoming: 2 })
        ));
        assert!(matches!(a.place(2, 2, 0), Err(Error::ZeroEntry { .. })));
    }

    #[test]
    fn transpose_swaps_sums() {
        let mut a = PFArray::new(2, 3);
        a.place(1, 1, 1).unwrap();
        a.place(1, 3, -4).unwrap();
        a.place(2, 2, 5).unwrap();
        let t = a.transpose();
        assert_eq!(t.row_sums(), a.col_sums());
        assert_eq!(t.col_sums(), a.row_sums());
        assert_eq!(t.transpose(), a);
    }

    #[test]
    fn juxtapose_checks_height() {
        let a = Block::dense("a", &[&[1, -2], &[-3, 4]]).unwrap();
        let b = bab(1, 2);
        assert!(matches!(
            juxtapose(&[a.clone(), b]),
            Err(Error::HeightMismatch { left: 2, right: 3 })
        ));
        assert_eq!(juxtapose(std::slice::from_ref(&a)).unwrap(), a);
        let j = juxtapose(&[a.clone(), a.shifted(4)]).unwrap();
        assert_eq!(j.row(1), &[Some(1), Some(-2), Some(5), Some(-6)]);
    }

    #[test]
    fn empty_support() {
        assert!(PFArray::new(3, 3).support().unwrap().is_empty());
    }
}
