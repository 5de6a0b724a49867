//! Checks a partially filled array against the definition directly.
//!
//! Nothing here depends on how arrays are built; the only shared pieces are
//! [`PFArray`] and [`Parameters`].

use std::collections::HashMap;

use serde::Serialize;

use crate::array::PFArray;
use crate::params::Parameters;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Mode {
    /// Row and column sums vanish over the integers; support is exact.
    Integer,
    /// Row and column sums vanish modulo `v`.
    Simple,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum WitnessKind {
    Shape,
    Row,
    Column,
    Cell,
    Value,
}

/// Where a condition failed. `row`/`col` are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub kind: WitnessKind,
    pub row: Option<usize>,
    pub col: Option<usize>,
    pub value: Option<i64>,
    pub detail: String,
}

impl Witness {
    fn row(row: usize, detail: String) -> Self {
        Witness {
            kind: WitnessKind::Row,
            row: Some(row),
            col: None,
            value: None,
            detail,
        }
    }

    fn col(col: usize, detail: String) -> Self {
        Witness {
            kind: WitnessKind::Column,
            row: None,
            col: Some(col),
            value: None,
            detail,
        }
    }

    fn cell(row: usize, col: usize, value: i64, detail: String) -> Self {
        Witness {
            kind: WitnessKind::Cell,
            row: Some(row),
            col: Some(col),
            value: Some(value),
            detail,
        }
    }

    fn value(value: i64, detail: String) -> Self {
        Witness {
            kind: WitnessKind::Value,
            row: None,
            col: None,
            value: Some(value),
            detail,
        }
    }

    fn shape(detail: String) -> Self {
        Witness {
            kind: WitnessKind::Shape,
            row: None,
            col: None,
            value: None,
            detail,
        }
    }
}

impl std::fmt::Display for Witness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match (self.kind, self.row, self.col) {
            (WitnessKind::Row, Some(r), _) => write!(f, "row {r}: {}", self.detail),
            (WitnessKind::Column, _, Some(c)) => write!(f, "column {c}: {}", self.detail),
            (WitnessKind::Cell, Some(r), Some(c)) => write!(f, "cell ({r}, {c}): {}", self.detail),
            _ => f.write_str(&self.detail),
        }
    }
}

/// Outcome of one condition. Witnesses are nonempty iff `passed` is false.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub passed: bool,
    pub witnesses: Vec<Witness>,
}

impl Check {
    fn from_witnesses(witnesses: Vec<Witness>) -> Self {
        Check {
            passed: witnesses.is_empty(),
            witnesses,
        }
    }

    fn skipped() -> Self {
        Check {
            passed: true,
            witnesses: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub mode: Mode,
    pub fill_counts: Check,
    pub row_sums_z: Check,
    pub col_sums_z: Check,
    pub row_sums_mod_v: Check,
    pub col_sums_mod_v: Check,
    pub support_match: Check,
    pub representative: Check,
    pub range: Check,
    /// Reported for information; not part of `overall`.
    pub shiftable: Check,
    pub overall: bool,
}

impl VerificationReport {
    /// Named conditions in a fixed order.
    pub fn checks(&self) -> [(&'static str, &Check); 9] {
        [
            ("fill_counts", &self.fill_counts),
            ("row_sums_z", &self.row_sums_z),
            ("col_sums_z", &self.col_sums_z),
            ("row_sums_mod_v", &self.row_sums_mod_v),
            ("col_sums_mod_v", &self.col_sums_mod_v),
            ("support_match", &self.support_match),
            ("representative", &self.representative),
            ("range", &self.range),
            ("shiftable", &self.shiftable),
        ]
    }

    /// Every witness of every failed condition that counts towards `overall`.
    pub fn failures(&self) -> impl Iterator<Item = (&'static str, &Witness)> + '_ {
        self.checks()
            .into_iter()
            .filter(|(name, _)| *name != "shiftable")
            .flat_map(|(name, c)| c.witnesses.iter().map(move |w| (name, w)))
    }
}

impl std::fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "mode: {:?}", self.mode)?;
        for (name, c) in self.checks() {
            writeln!(f, "{name}: {}", if c.passed { "pass" } else { "FAIL" })?;
            for w in c.witnesses.iter().take(20) {
                writeln!(f, "  {w}")?;
            }
            if c.witnesses.len() > 20 {
                writeln!(f, "  ... {} more", c.witnesses.len() - 20)?;
            }
        }
        write!(f, "overall: {}", if self.overall { "pass" } else { "FAIL" })
    }
}

fn fill_counts(a: &PFArray, p: &Parameters) -> Check {
    let (m, n) = (p.m() as usize, p.n() as usize);
    if a.rows() != m || a.cols() != n {
        return Check::from_witnesses(vec![Witness::shape(format!(
            "array is {}x{}, expected {m}x{n}",
            a.rows(),
            a.cols()
        ))]);
    }
    let mut rows = vec![0u64; m];
    let mut cols = vec![0u64; n];
    for (r, c, _) in a.entries() {
        rows[r - 1] += 1;
        cols[c - 1] += 1;
    }
    let mut w = Vec::new();
    for (i, &cnt) in rows.iter().enumerate() {
        if cnt != p.s() {
            w.push(Witness::row(i + 1, format!("{cnt} filled cells, expected {}", p.s())));
        }
    }
    for (j, &cnt) in cols.iter().enumerate() {
        if cnt != p.k() {
            w.push(Witness::col(j + 1, format!("{cnt} filled cells, expected {}", p.k())));
        }
    }
    Check::from_witnesses(w)
}

fn line_sums(a: &PFArray) -> (Vec<i128>, Vec<i128>) {
    let mut rows = vec![0i128; a.rows()];
    let mut cols = vec![0i128; a.cols()];
    for (r, c, v) in a.entries() {
        rows[r - 1] += v as i128;
        cols[c - 1] += v as i128;
    }
    (rows, cols)
}

fn sum_check(sums: &[i128], modulus: Option<i128>, row: bool) -> Check {
    let w = sums
        .iter()
        .enumerate()
        .filter(|(_, &s)| match modulus {
            None => s != 0,
            Some(v) => s.rem_euclid(v) != 0,
        })
        .map(|(i, &s)| {
            let detail = match modulus {
                None => format!("sum is {s}"),
                Some(v) => format!("sum is {s} = {} (mod {v})", s.rem_euclid(v)),
            };
            if row {
                Witness::row(i + 1, detail)
            } else {
                Witness::col(i + 1, detail)
            }
        })
        .collect();
    Check::from_witnesses(w)
}

/// Integer support must be `[1, ms + floor(t/2)]` minus the first `floor(t/2)`
/// multiples of `ell`, with no repeated absolute value.
fn support_match(a: &PFArray, p: &Parameters) -> Check {
    let ell = p.ell();
    let top = p.ms() + p.t() / 2;
    let in_target = |x: u64| x >= 1 && x <= top && !(x % ell == 0 && x / ell <= p.t() / 2);
    let mut seen: HashMap<u64, Vec<(usize, usize, i64)>> = HashMap::new();
    for (r, c, v) in a.entries() {
        seen.entry(v.unsigned_abs()).or_default().push((r, c, v));
    }
    let mut w = Vec::new();
    let mut dups: Vec<_> = seen.iter().filter(|(_, l)| l.len() > 1).collect();
    dups.sort();
    for (x, locs) in dups {
        for &(r, c, v) in locs {
            w.push(Witness::cell(r, c, v, format!("absolute value {x} occurs {} times", locs.len())));
        }
    }
    let mut extra: Vec<_> = seen
        .iter()
        .filter(|(x, _)| !in_target(**x))
        .flat_map(|(_, l)| l.iter().copied())
        .collect();
    extra.sort();
    for (r, c, v) in extra {
        w.push(Witness::cell(r, c, v, format!("|{v}| is outside the target support")));
    }
    for x in (1..=top).filter(|&x| in_target(x) && !seen.contains_key(&x)) {
        w.push(Witness::value(x as i64, format!("{x} is missing from the support")));
    }
    Check::from_witnesses(w)
}

/// Each class `{x, -x}` of `Z_v` outside `J = <ell>` is hit exactly once and
/// no entry lies in `J`.
fn representative(a: &PFArray, p: &Parameters) -> Check {
    let v = p.v() as i128;
    let ell = p.ell() as i128;
    let class = |e: i64| {
        let r = (e as i128).rem_euclid(v);
        r.min(v - r)
    };
    let mut hits: HashMap<i128, Vec<(usize, usize, i64)>> = HashMap::new();
    let mut w = Vec::new();
    for (r, c, e) in a.entries() {
        let cl = class(e);
        if cl % ell == 0 {
            w.push(Witness::cell(r, c, e, format!("{e} lies in the subgroup of order {}", p.t())));
        } else {
            hits.entry(cl).or_default().push((r, c, e));
        }
    }
    let mut multi: Vec<_> = hits.iter().filter(|(_, l)| l.len() > 1).collect();
    multi.sort();
    for (cl, locs) in multi {
        for &(r, c, e) in locs {
            w.push(Witness::cell(r, c, e, format!("class ±{cl} (mod {v}) is hit {} times", locs.len())));
        }
    }
    for cl in (1..=v / 2).filter(|x| x % ell != 0 && !hits.contains_key(x)) {
        w.push(Witness::value(cl as i64, format!("no entry represents ±{cl} (mod {v})")));
    }
    Check::from_witnesses(w)
}

fn range(a: &PFArray, p: &Parameters) -> Check {
    let bound = p.v() / 2;
    let w = a
        .entries()
        .filter(|(_, _, e)| e.unsigned_abs() > bound)
        .map(|(r, c, e)| Witness::cell(r, c, e, format!("|{e}| exceeds {bound}")))
        .collect();
    Check::from_witnesses(w)
}

/// Every row and every column holds as many positive as negative entries.
pub fn is_shiftable(a: &PFArray) -> Check {
    let mut rows = vec![0i64; a.rows()];
    let mut cols = vec![0i64; a.cols()];
    for (r, c, e) in a.entries() {
        rows[r - 1] += e.signum();
        cols[c - 1] += e.signum();
    }
    let mut w = Vec::new();
    for (i, &b) in rows.iter().enumerate().filter(|(_, b)| **b != 0) {
        w.push(Witness::row(i + 1, format!("positive minus negative count is {b}")));
    }
    for (j, &b) in cols.iter().enumerate().filter(|(_, b)| **b != 0) {
        w.push(Witness::col(j + 1, format!("positive minus negative count is {b}")));
    }
    Check::from_witnesses(w)
}

/// Runs every condition. Failures are reported, never raised.
pub fn verify_full(a: &PFArray, p: &Parameters, mode: Mode) -> VerificationReport {
    let fill = fill_counts(a, p);
    let shape_ok = a.rows() == p.m() as usize && a.cols() == p.n() as usize;
    let (rs, cs) = line_sums(a);
    let v = p.v() as i128;
    let (row_z, col_z, support, rng) = match mode {
        Mode::Integer => (
            sum_check(&rs, None, true),
            sum_check(&cs, None, false),
            support_match(a, p),
            range(a, p),
        ),
        Mode::Simple => (Check::skipped(), Check::skipped(), Check::skipped(), Check::skipped()),
    };
    let row_mod = sum_check(&rs, Some(v), true);
    let col_mod = sum_check(&cs, Some(v), false);
    let repr = representative(a, p);
    let shift = is_shiftable(a);
    let overall = shape_ok
        && fill.passed
        && row_z.passed
        && col_z.passed
        && row_mod.passed
        && col_mod.passed
        && support.passed
        && repr.passed
        && rng.passed;
    VerificationReport {
        mode,
        fill_counts: fill,
        row_sums_z: row_z,
        col_sums_z: col_z,
        row_sums_mod_v: row_mod,
        col_sums_mod_v: col_mod,
        support_match: support,
        representative: repr,
        range: rng,
        shiftable: shift,
        overall,
    }
}

/// Which necessary condition decided the outcome.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum NecessaryRule {
    /// `t | ms`: need `ms = 0 (mod 4)` or `ms = -t = ±1 (mod 4)`.
    TDividesMs,
    /// `t = 2ms`: need `s` and `k` both even.
    TEqualsTwoMs,
    /// Otherwise: need `t + 2ms = 0 (mod 8)`.
    General,
    /// Shown not to exist by exhaustion even though the congruences hold:
    /// `H_8(4,4;3,3)` and `H_3n(n,n;3,3)`.
    KnownNonexistence,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Necessary {
    Satisfied(NecessaryRule),
    Violated(NecessaryRule),
}

impl Necessary {
    pub fn is_satisfied(self) -> bool {
        matches!(self, Necessary::Satisfied(_))
    }
}

/// Congruence conditions an integer array must meet, plus the known
/// sporadic nonexistence results for `s = k = 3`.
pub fn check_necessary(p: &Parameters) -> Necessary {
    let (ms, t) = (p.ms(), p.t());
    let (rule, ok) = if ms % t == 0 {
        let ok = ms % 4 == 0 || (ms % 2 == 1 && (ms + t) % 4 == 0);
        (NecessaryRule::TDividesMs, ok)
    } else if t == 2 * ms {
        (NecessaryRule::TEqualsTwoMs, p.s() % 2 == 0 && p.k() % 2 == 0)
    } else {
        (NecessaryRule::General, (t + 2 * ms) % 8 == 0)
    };
    if !ok {
        return Necessary::Violated(rule);
    }
    let square3 = p.m() == p.n() && p.s() == 3 && p.k() == 3;
    if square3 && (t == 3 * p.n() || (p.n() == 4 && t == 8)) {
        return Necessary::Violated(NecessaryRule::KnownNonexistence);
    }
    Necessary::Satisfied(rule)
}
