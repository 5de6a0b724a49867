//! Ground truth that shares no code with the constructions: a backtracking
//! search for tiny arrays and a brute-force recheck of block-sequence supports.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::array::{Block, PFArray};
use crate::build::Claim;
use crate::params::Parameters;

/// Limits and symmetry-breaking switches for [`search_small`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_nodes: u64,
    pub max_time: Duration,
    /// The largest magnitude is placed with a positive sign.
    pub fix_sign: bool,
    /// The largest magnitude is placed at `(1, 1)`.
    pub fix_position: bool,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_nodes: 50_000_000,
            max_time: Duration::from_secs(60),
            fix_sign: true,
            fix_position: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(PFArray),
    Exhausted,
    BudgetExceeded,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub elapsed: Duration,
}

struct Search<'a> {
    m: usize,
    n: usize,
    s: usize,
    k: usize,
    /// Magnitudes, largest first.
    values: &'a [i64],
    used: Vec<bool>,
    index_of: BTreeMap<i64, usize>,
    cells: Vec<Option<i64>>,
    row_fill: Vec<usize>,
    col_fill: Vec<usize>,
    row_sum: Vec<i64>,
    col_sum: Vec<i64>,
    nodes: u64,
    budget: SearchBudget,
    start: Instant,
    out_of_budget: bool,
}

impl Search<'_> {
    fn largest_unused(&self) -> i64 {
        self.used
            .iter()
            .position(|u| !u)
            .map_or(0, |i| self.values[i])
    }

    /// Can `sum` still reach zero with `left` more entries of magnitude at most `cap`?
    fn reachable(sum: i64, left: usize, cap: i64) -> bool {
        if left == 0 {
            sum == 0
        } else {
            sum.abs() <= left as i64 * cap
        }
    }

    fn fits(&self, r: usize, c: usize, v: i64) -> bool {
        if self.budget.fix_sign && v == -self.values[0] {
            return false;
        }
        let cap = self.largest_unused();
        let rl = self.s - self.row_fill[r] - 1;
        let cl = self.k - self.col_fill[c] - 1;
        Self::reachable(self.row_sum[r] + v, rl, cap) && Self::reachable(self.col_sum[c] + v, cl, cap)
    }

    fn put(&mut self, pos: usize, v: i64) {
        let (r, c) = (pos / self.n, pos % self.n);
        self.cells[pos] = Some(v);
        self.used[self.index_of[&v.abs()]] = true;
        self.row_fill[r] += 1;
        self.col_fill[c] += 1;
        self.row_sum[r] += v;
        self.col_sum[c] += v;
    }

    fn take(&mut self, pos: usize) {
        let (r, c) = (pos / self.n, pos % self.n);
        let v = self.cells[pos].take().expect("filled cell");
        self.used[self.index_of[&v.abs()]] = false;
        self.row_fill[r] -= 1;
        self.col_fill[c] -= 1;
        self.row_sum[r] -= v;
        self.col_sum[c] -= v;
    }

    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget.max_nodes
            || (self.nodes % 4096 == 0 && self.start.elapsed() > self.budget.max_time)
        {
            self.out_of_budget = true;
        }
        !self.out_of_budget
    }

    /// Cells are visited in row-major order; each is either left empty or filled.
    fn go(&mut self, pos: usize) -> bool {
        if pos == self.m * self.n {
            return self.row_fill.iter().all(|&f| f == self.s);
        }
        if !self.tick() {
            return false;
        }
        let (r, c) = (pos / self.n, pos % self.n);
        if self.cells[pos].is_some() {
            return self.after_cell(pos);
        }
        let row_left = self.n - c;
        let col_left = self.m - r;
        let row_need = self.s - self.row_fill[r];
        let col_need = self.k - self.col_fill[c];
        if row_need > row_left || col_need > col_left {
            return false;
        }
        let can_fill = row_need > 0 && col_need > 0;
        let must_fill = row_need == row_left || col_need == col_left;

        if can_fill {
            let last_in_row = row_need == 1;
            let last_in_col = col_need == 1;
            if last_in_row || last_in_col {
                let v = if last_in_row { -self.row_sum[r] } else { -self.col_sum[c] };
                let consistent = !(last_in_row && last_in_col) || self.col_sum[c] == self.row_sum[r];
                if consistent && self.admissible(v) && self.fits(r, c, v) {
                    self.put(pos, v);
                    if self.after_cell(pos) {
                        return true;
                    }
                    self.take(pos);
                }
            } else {
                for i in 0..self.values.len() {
                    if self.used[i] {
                        continue;
                    }
                    let mag = self.values[i];
                    for v in [mag, -mag] {
                        if self.fits(r, c, v) {
                            self.put(pos, v);
                            if self.after_cell(pos) {
                                return true;
                            }
                            self.take(pos);
                        }
                        if self.out_of_budget {
                            return false;
                        }
                    }
                }
            }
        }
        if !must_fill {
            return self.after_cell(pos);
        }
        false
    }

    fn admissible(&self, v: i64) -> bool {
        v != 0 && self.index_of.get(&v.abs()).is_some_and(|&i| !self.used[i])
    }

    fn after_cell(&mut self, pos: usize) -> bool {
        let (r, c) = (pos / self.n, pos % self.n);
        if c == self.n - 1 && (self.row_fill[r] != self.s || self.row_sum[r] != 0) {
            return false;
        }
        if r == self.m - 1 && (self.col_fill[c] != self.k || self.col_sum[c] != 0) {
            return false;
        }
        self.go(pos + 1)
    }
}

/// Backtracking search for an integer `H_t(m, n; s, k)`, intended for `ms <= 24`.
///
/// Cells are visited in row-major order. Magnitudes are tried largest first,
/// positive before negative; the last entry of a row or column is forced.
pub fn search_small(p: &Parameters, budget: SearchBudget) -> (SearchOutcome, SearchStats) {
    let start = Instant::now();
    let (m, n) = (p.m() as usize, p.n() as usize);
    let half = p.t() / 2;
    let ell = p.ell();
    let mut values: Vec<i64> = (1..=p.ms() + half)
        .filter(|x| !(x % ell == 0 && x / ell <= half))
        .map(|x| x as i64)
        .collect();
    values.reverse();
    let index_of = values.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut search = Search {
        m,
        n,
        s: p.s() as usize,
        k: p.k() as usize,
        values: &values,
        used: vec![false; values.len()],
        index_of,
        cells: vec![None; m * n],
        row_fill: vec![0; m],
        col_fill: vec![0; n],
        row_sum: vec![0; m],
        col_sum: vec![0; n],
        nodes: 0,
        budget,
        start,
        out_of_budget: false,
    };

    let top = values[0];
    let found = if budget.fix_position {
        let signs: &[i64] = if budget.fix_sign { &[1] } else { &[1, -1] };
        signs.iter().any(|&sg| {
            search.put(0, sg * top);
            let ok = search.go(0);
            if !ok {
                search.take(0);
            }
            ok
        })
    } else {
        search.go(0)
    };
    let stats = SearchStats {
        nodes: search.nodes,
        elapsed: start.elapsed(),
    };
    let outcome = if found {
        let mut a = PFArray::new(m, n);
        for (i, v) in search.cells.iter().enumerate() {
            a.set(i / n + 1, i % n + 1, *v);
        }
        SearchOutcome::Found(a)
    } else if search.out_of_budget {
        SearchOutcome::BudgetExceeded
    } else {
        SearchOutcome::Exhausted
    };
    (outcome, stats)
}

/// Result of comparing a sequence's entries with a closed-form support.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Recheck {
    pub passed: bool,
    pub missing: Vec<u64>,
    pub extra: Vec<u64>,
    pub duplicates: Vec<u64>,
    pub detail: String,
}

fn interval_minus_multiples(lo: u64, hi: u64, ell: u64, j_lo: u64, j_hi: u64) -> BTreeSet<u64> {
    (lo..=hi)
        .filter(|x| !(x % ell == 0 && (j_lo..=j_hi).contains(&(x / ell))))
        .collect()
}

/// The support a builder run must produce, from its closed form.
pub fn expected_support(claim: &Claim) -> BTreeSet<u64> {
    match *claim {
        Claim::FRho { h, rho, .. } => {
            let e = 12 * h / (rho - 1);
            interval_minus_multiples(1, 12 * h + e, rho, 1, e)
        }
        Claim::Tail { m, q, ell, width, t, .. } => {
            let eta = 6 * m * q / (ell - 1);
            let s = 6 * q + width;
            interval_minus_multiples(6 * m * q + eta + 1, m * s + t / 2, ell, eta + 1, t / 2)
        }
        Claim::Wide8p { m, s, t, .. } | Claim::WideNon8p { m, s, t, .. } | Claim::SeqB { m, s, t, .. } => {
            interval_minus_multiples(1, m * s + t / 2, 2 * m * s / t + 1, 1, t / 2)
        }
    }
}

/// Compares the absolute values of every entry of `blocks` with `expected`.
pub fn compare_support(blocks: &[Block], expected: &BTreeSet<u64>) -> Recheck {
    let mut seen = BTreeSet::new();
    let mut duplicates = Vec::new();
    for b in blocks {
        for (_, _, v) in b.entries() {
            if !seen.insert(v.unsigned_abs()) {
                duplicates.push(v.unsigned_abs());
            }
        }
    }
    let missing: Vec<u64> = expected.difference(&seen).copied().collect();
    let extra: Vec<u64> = seen.difference(expected).copied().collect();
    Recheck {
        passed: missing.is_empty() && extra.is_empty() && duplicates.is_empty(),
        missing,
        extra,
        duplicates,
        detail: String::new(),
    }
}

/// Runs the builder named by `claim` and checks its support and block count.
pub fn recheck_sequence_support(claim: &Claim) -> Recheck {
    let seq = match claim.build() {
        Ok(seq) => seq,
        Err(e) => {
            return Recheck {
                passed: false,
                missing: Vec::new(),
                extra: Vec::new(),
                duplicates: Vec::new(),
                detail: format!("builder failed: {e}"),
            }
        }
    };
    let (count, width) = match *claim {
        Claim::FRho { h, .. } => (h, 6),
        Claim::Tail { m, width, .. } => (m / 2, width),
        Claim::Wide8p { m, s, .. } | Claim::WideNon8p { m, s, .. } | Claim::SeqB { m, s, .. } => (m / 2, s),
    };
    let mut r = compare_support(seq.blocks(), &expected_support(claim));
    let shape_ok = seq.len() as u64 == count
        && seq.blocks().iter().all(|b| b.height() == 2 && b.width() as u64 == width);
    if !shape_ok {
        r.passed = false;
        r.detail = format!("expected {count} blocks of size 2 x {width}, got {}", seq.len());
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build::Flavor;
    use crate::verify::{verify_full, Mode};

    #[test]
    fn finds_small_array() {
        let p = Parameters::derive(4, 4, 4, 4, 8).unwrap();
        let (out, _) = search_small(&p, SearchBudget::default());
        let SearchOutcome::Found(a) = out else { panic!("{out:?}") };
        assert!(verify_full(&a, &p, Mode::Integer).overall);
        assert_eq!(a.get(1, 1), Some(19));

        let p = Parameters::derive(4, 4, 4, 4, 1).unwrap();
        let (out, _) = search_small(&p, SearchBudget::default());
        let SearchOutcome::Found(a) = out else { panic!("{out:?}") };
        assert!(verify_full(&a, &p, Mode::Integer).overall);
    }

    #[test]
    fn symmetry_breaking_agrees() {
        let p = Parameters::derive(4, 4, 4, 4, 8).unwrap();
        for (fix_sign, fix_position) in [(false, false), (true, false), (false, true)] {
            let budget = SearchBudget { fix_sign, fix_position, ..SearchBudget::default() };
            assert!(matches!(search_small(&p, budget).0, SearchOutcome::Found(_)));
        }
    }

    #[test]
    fn tiny_budget_is_reported() {
        let p = Parameters::derive(4, 4, 4, 4, 1).unwrap();
        let budget = SearchBudget { max_nodes: 10, ..SearchBudget::default() };
        assert_eq!(search_small(&p, budget).0, SearchOutcome::BudgetExceeded);
    }

    #[test]
    fn closed_forms() {
        let f = Claim::FRho { flavor: Flavor::Paired, h: 4, rho: 7 };
        let expect: BTreeSet<u64> = (1..=56).filter(|x| x % 7 != 0).collect();
        assert_eq!(expected_support(&f), expect);
        assert!(recheck_sequence_support(&f).passed);
        let f = Claim::FRho { flavor: Flavor::Paired, h: 5, rho: 15 };
        assert!(recheck_sequence_support(&f).passed);
    }

    #[test]
    fn corrupted_sequence_is_caught() {
        let f = Claim::FRho { flavor: Flavor::Paired, h: 2, rho: 9 };
        let mut blocks = f.build().unwrap().into_blocks();
        let b = &blocks[1];
        let mut rows: Vec<Vec<Option<i64>>> = (1..=2).map(|r| b.row(r).to_vec()).collect();
        rows[0][0] = rows[0][0].map(|v| v + 1);
        blocks[1] = Block::from_rows("bad", rows).unwrap();
        let r = compare_support(&blocks, &expected_support(&f));
        assert!(!r.passed);
        assert!(r.missing.len() + r.duplicates.len() + r.extra.len() >= 1);
    }
}
