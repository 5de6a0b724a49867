//! Fixed and parametric 2-row blocks, loaded from `data/catalog.tsv`.
//!
//! Every entry declares its column sums and support; [`self_test_catalog`]
//! recomputes both from the transcribed entries.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use crate::array::Block;
use crate::error::{Error, Result};
use crate::sequence::Contract;
use crate::support::SupportSet;

const CATALOG_TSV: &str = include_str!("../data/catalog.tsv");

/// Which symbols an entry's expressions may mention.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamKind {
    None,
    /// Affine in `l`.
    Ell,
    /// Affine in `y` and `p*y`.
    PY,
}

/// Values substituted into symbolic entries.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BlockParams {
    pub ell: Option<i64>,
    pub p: Option<i64>,
    pub y: Option<i64>,
}

impl BlockParams {
    pub fn ell(ell: i64) -> Self {
        BlockParams {
            ell: Some(ell),
            ..Default::default()
        }
    }

    pub fn py(p: i64, y: i64) -> Self {
        BlockParams {
            p: Some(p),
            y: Some(y),
            ..Default::default()
        }
    }
}

/// `c + cl*l + cy*y + cpy*p*y`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Affine {
    c: i64,
    cl: i64,
    cy: i64,
    cpy: i64,
}

impl Affine {
    fn eval(&self, l: i64, p: i64, y: i64) -> i64 {
        self.c + self.cl * l + self.cy * y + self.cpy * p * y
    }

    fn uses(&self) -> (bool, bool) {
        (self.cl != 0, self.cy != 0 || self.cpy != 0)
    }

    fn parse(s: &str) -> std::result::Result<Affine, String> {
        let mut out = Affine::default();
        let bytes = s.as_bytes();
        let mut i = 0;
        if bytes.is_empty() {
            return Err("empty expression".into());
        }
        while i < bytes.len() {
            let sign = match bytes[i] {
                b'-' => {
                    i += 1;
                    -1
                }
                b'+' => {
                    i += 1;
                    1
                }
                _ if i == 0 => 1,
                c => return Err(format!("unexpected {:?} in {s:?}", c as char)),
            };
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let coef: Option<i64> = if i > start {
                Some(s[start..i].parse().map_err(|e| format!("{s:?}: {e}"))?)
            } else {
                None
            };
            let rest = &s[i..];
            let (slot, len) = if rest.starts_with("py") {
                (&mut out.cpy, 2)
            } else if rest.starts_with('l') {
                (&mut out.cl, 1)
            } else if rest.starts_with('y') {
                (&mut out.cy, 1)
            } else {
                match coef {
                    Some(c) => {
                        out.c += sign * c;
                        continue;
                    }
                    None => return Err(format!("dangling sign in {s:?}")),
                }
            };
            *slot += sign * coef.unwrap_or(1);
            i += len;
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum SupportExpr {
    Range {
        lo: Affine,
        hi: Affine,
        minus: Vec<Affine>,
    },
    Progression {
        start: Affine,
        step: Affine,
        count: usize,
    },
    Set(Vec<Affine>),
}

impl SupportExpr {
    fn parse(s: &str) -> std::result::Result<SupportExpr, String> {
        let toks: Vec<&str> = s.split_whitespace().collect();
        let affs = |xs: &[&str]| xs.iter().map(|x| Affine::parse(x)).collect::<std::result::Result<Vec<_>, _>>();
        match toks.as_slice() {
            ["range", lo, hi, rest @ ..] => {
                let minus = match rest {
                    [] => Vec::new(),
                    ["minus", vals @ ..] => affs(vals)?,
                    _ => return Err(format!("bad range tail in {s:?}")),
                };
                Ok(SupportExpr::Range {
                    lo: Affine::parse(lo)?,
                    hi: Affine::parse(hi)?,
                    minus,
                })
            }
            ["ap", start, step, count] => Ok(SupportExpr::Progression {
                start: Affine::parse(start)?,
                step: Affine::parse(step)?,
                count: count.parse().map_err(|e| format!("{s:?}: {e}"))?,
            }),
            ["set", vals @ ..] => Ok(SupportExpr::Set(affs(vals)?)),
            _ => Err(format!("unrecognised support expression {s:?}")),
        }
    }

    fn eval(&self, l: i64, p: i64, y: i64) -> std::result::Result<SupportSet, String> {
        let to_u = |v: i64| u64::try_from(v).map_err(|_| format!("non-positive support value {v}"));
        let values: Vec<u64> = match self {
            SupportExpr::Range { lo, hi, minus } => {
                let drop: Vec<i64> = minus.iter().map(|a| a.eval(l, p, y)).collect();
                (lo.eval(l, p, y)..=hi.eval(l, p, y))
                    .filter(|v| !drop.contains(v))
                    .map(to_u)
                    .collect::<std::result::Result<_, _>>()?
            }
            SupportExpr::Progression { start, step, count } => {
                let (a, d) = (start.eval(l, p, y), step.eval(l, p, y));
                (0..*count as i64)
                    .map(|j| to_u(a + j * d))
                    .collect::<std::result::Result<_, _>>()?
            }
            SupportExpr::Set(vals) => vals
                .iter()
                .map(|a| to_u(a.eval(l, p, y)))
                .collect::<std::result::Result<_, _>>()?,
        };
        SupportSet::from_values(values).map_err(|e| format!("declared support: {e}"))
    }
}

/// One row of the catalog table.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    name: String,
    family: String,
    contract: Contract,
    params: ParamKind,
    rows: [Vec<Affine>; 2],
    col_sums: Vec<Affine>,
    support: SupportExpr,
}

impl CatalogEntry {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn family(&self) -> &str {
        &self.family
    }

    pub fn contract(&self) -> Contract {
        self.contract
    }

    pub fn params(&self) -> ParamKind {
        self.params
    }

    pub fn width(&self) -> usize {
        self.rows[0].len()
    }

    fn resolve(&self, bp: BlockParams) -> Result<(i64, i64, i64)> {
        let invalid = |reason: &str| Error::InvalidBlockParams {
            name: self.name.clone(),
            reason: reason.into(),
        };
        match self.params {
            ParamKind::None => Ok((0, 0, 0)),
            ParamKind::Ell => {
                let l = bp.ell.ok_or_else(|| invalid("requires ell"))?;
                if l < 2 {
                    return Err(invalid("ell must be at least 2"));
                }
                Ok((l, 0, 0))
            }
            ParamKind::PY => {
                let (p, y) = match (bp.p, bp.y) {
                    (Some(p), Some(y)) => (p, y),
                    _ => return Err(invalid("requires p and y")),
                };
                if p < 3 || p % 2 == 0 || y < 1 {
                    return Err(invalid("p must be odd and at least 3, y at least 1"));
                }
                Ok((0, p, y))
            }
        }
    }

    /// Instantiates the entry.
    pub fn instantiate(&self, bp: BlockParams) -> Result<Block> {
        let (l, p, y) = self.resolve(bp)?;
        let rows: Vec<Vec<i64>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|a| a.eval(l, p, y)).collect())
            .collect();
        let rows: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
        Block::dense(self.name.clone(), &rows)
    }

    pub fn declared_col_sums(&self, bp: BlockParams) -> Result<Vec<i64>> {
        let (l, p, y) = self.resolve(bp)?;
        Ok(self.col_sums.iter().map(|a| a.eval(l, p, y)).collect())
    }

    pub fn declared_support(&self, bp: BlockParams) -> Result<SupportSet> {
        let (l, p, y) = self.resolve(bp)?;
        self.support.eval(l, p, y).map_err(|reason| Error::MalformedBlock {
            name: self.name.clone(),
            reason,
        })
    }
}

fn parse_contract(s: &str) -> std::result::Result<Contract, String> {
    match s {
        "shiftable-paired" => Ok(Contract::ShiftablePaired),
        "shiftable-parity" => Ok(Contract::ShiftableParity),
        "paired-columns" => Ok(Contract::PairedColumns),
        _ => Err(format!("unknown contract {s:?}")),
    }
}

fn parse_line(line: &str) -> std::result::Result<CatalogEntry, String> {
    let cols: Vec<&str> = line.split('\t').collect();
    let [name, family, contract, params, row1, row2, col_sums, support] = cols.as_slice() else {
        return Err(format!("expected 8 tab-separated columns, got {}", cols.len()));
    };
    let exprs = |s: &str| {
        s.split_whitespace()
            .map(Affine::parse)
            .collect::<std::result::Result<Vec<_>, _>>()
    };
    let params = match *params {
        "none" => ParamKind::None,
        "ell" => ParamKind::Ell,
        "py" => ParamKind::PY,
        other => return Err(format!("unknown params kind {other:?}")),
    };
    let rows = [exprs(row1)?, exprs(row2)?];
    let col_sums = exprs(col_sums)?;
    if rows[0].len() != rows[1].len() || rows[0].len() != col_sums.len() {
        return Err(format!("{name}: row and column-sum lengths differ"));
    }
    for a in rows.iter().flatten().chain(&col_sums) {
        let (uses_l, uses_py) = a.uses();
        let ok = match params {
            ParamKind::None => !uses_l && !uses_py,
            ParamKind::Ell => !uses_py,
            ParamKind::PY => !uses_l,
        };
        if !ok {
            return Err(format!("{name}: expression uses a symbol not allowed by {params:?}"));
        }
    }
    Ok(CatalogEntry {
        name: name.to_string(),
        family: family.to_string(),
        contract: parse_contract(contract)?,
        params,
        rows,
        col_sums,
        support: SupportExpr::parse(support)?,
    })
}

/// Parses a catalog table. Blank lines and `#` comments are skipped.
pub fn parse_catalog(text: &str) -> Result<Vec<CatalogEntry>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim_end();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        out.push(parse_line(line).map_err(|e| Error::Parse(format!("catalog line {}: {e}", i + 1)))?);
    }
    Ok(out)
}

struct Catalog {
    entries: Vec<CatalogEntry>,
    by_name: BTreeMap<String, usize>,
}

fn catalog() -> &'static Catalog {
    static CATALOG: OnceLock<Catalog> = OnceLock::new();
    CATALOG.get_or_init(|| {
        let entries = parse_catalog(CATALOG_TSV).expect("bundled catalog parses");
        let by_name = entries
            .iter()
            .enumerate()
            .map(|(i, e)| (e.name.clone(), i))
            .collect();
        Catalog { entries, by_name }
    })
}

/// All bundled entries in file order.
pub fn entries() -> &'static [CatalogEntry] {
    &catalog().entries
}

pub fn entry(name: &str) -> Result<&'static CatalogEntry> {
    let c = catalog();
    c.by_name
        .get(name)
        .map(|&i| &c.entries[i])
        .ok_or_else(|| Error::UnknownBlock(name.to_string()))
}

/// Instantiates a catalog block by name.
pub fn lookup(name: &str, params: BlockParams) -> Result<Block> {
    entry(name)?.instantiate(params)
}

/// Fixed block lookup; panics if the bundled catalog lacks `name`.
pub(crate) fn fixed(name: &str) -> Block {
    lookup(name, BlockParams::default()).unwrap_or_else(|e| panic!("catalog: {e}"))
}

/// The `3 x 2` block with corners `(1, -(a+1) / -(b+1), a+b+1)` and an empty middle row.
/// Its rows sum to `(-a, a)` and its columns to `(-b, b)`.
pub fn make_bab(a: u64, b: u64) -> Block {
    let (a, b) = (a as i64, b as i64);
    Block::from_rows(
        format!("B({a},{b})"),
        vec![
            vec![Some(1), Some(-(a + 1))],
            vec![None, None],
            vec![Some(-(b + 1)), Some(a + b + 1)],
        ],
    )
    .expect("valid corner block")
}

/// A mismatch between an entry and its declared identities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogDefect {
    pub name: String,
    /// Parameter point, empty for fixed entries.
    pub point: String,
    pub detail: String,
}

impl std::fmt::Display for CatalogDefect {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.point.is_empty() {
            write!(f, "{}: {}", self.name, self.detail)
        } else {
            write!(f, "{} at {}: {}", self.name, self.point, self.detail)
        }
    }
}

/// Parameter points at which symbolic entries are checked.
pub fn sample_points(kind: ParamKind) -> Vec<BlockParams> {
    match kind {
        ParamKind::None => vec![BlockParams::default()],
        ParamKind::Ell => [2, 4, 6, 8, 10].into_iter().map(BlockParams::ell).collect(),
        ParamKind::PY => [(3, 2), (5, 3), (7, 4), (5, 8)]
            .into_iter()
            .map(|(p, y)| BlockParams::py(p, y))
            .collect(),
    }
}

fn point_label(kind: ParamKind, bp: BlockParams) -> String {
    match kind {
        ParamKind::None => String::new(),
        ParamKind::Ell => format!("ell={}", bp.ell.unwrap_or(0)),
        ParamKind::PY => format!("p={},y={}", bp.p.unwrap_or(0), bp.y.unwrap_or(0)),
    }
}

/// Checks one entry at one parameter point.
pub fn check_entry(e: &CatalogEntry, bp: BlockParams) -> Vec<CatalogDefect> {
    let defect = |detail: String| CatalogDefect {
        name: e.name.clone(),
        point: point_label(e.params, bp),
        detail,
    };
    let block = match e.instantiate(bp) {
        Ok(b) => b,
        Err(err) => return vec![defect(err.to_string())],
    };
    let mut out = Vec::new();
    if let Err(reason) = e.contract.profile_of(&block) {
        out.push(defect(format!("{} contract: {reason}", e.contract.name())));
    }
    match e.declared_col_sums(bp) {
        Ok(declared) if declared != block.col_sums() => out.push(defect(format!(
            "column sums {:?}, declared {declared:?}",
            block.col_sums()
        ))),
        Err(err) => out.push(defect(err.to_string())),
        _ => {}
    }
    match (block.support(), e.declared_support(bp)) {
        (Ok(actual), Ok(declared)) => {
            let (missing, extra) = actual.difference_with(&declared);
            if !missing.is_empty() || !extra.is_empty() {
                out.push(defect(format!("support missing {missing:?}, extra {extra:?}")));
            }
        }
        (Err(err), _) | (_, Err(err)) => out.push(defect(err.to_string())),
    }
    out
}

/// Validates every bundled entry (symbolic ones at each of [`sample_points`]).
pub fn self_test_catalog() -> Vec<CatalogDefect> {
    entries()
        .iter()
        .flat_map(|e| {
            sample_points(e.params)
                .into_iter()
                .flat_map(move |bp| check_entry(e, bp))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn affine_parsing() {
        let a = Affine::parse("-3py-2y-4").unwrap();
        assert_eq!(a.eval(0, 5, 3), -45 - 6 - 4);
        assert_eq!(Affine::parse("5l+1").unwrap().eval(5, 0, 0), 26);
        assert_eq!(Affine::parse("-l").unwrap().eval(7, 0, 0), -7);
        assert_eq!(Affine::parse("12").unwrap().eval(0, 0, 0), 12);
        assert!(Affine::parse("3x").is_err());
        assert!(Affine::parse("-").is_err());
    }

    #[test]
    fn bundled_catalog_is_clean() {
        let defects = self_test_catalog();
        assert!(defects.is_empty(), "{defects:#?}");
    }

    #[test]
    fn bab_examples() {
        assert_eq!(make_bab(2, 5).row(1), &[Some(1), Some(-3)]);
        assert_eq!(make_bab(2, 5).row(3), &[Some(-6), Some(8)]);
        assert_eq!(make_bab(1, 2).row(3), &[Some(-3), Some(4)]);
        assert_eq!(make_bab(5, 10).row(1), &[Some(1), Some(-6)]);
        assert_eq!(make_bab(5, 10).row(3), &[Some(-11), Some(16)]);
    }

    #[test]
    fn lookup_examples() {
        let w4 = lookup("W4-blW2", BlockParams::py(5, 3)).unwrap();
        assert_eq!(w4.row(1), &[Some(4), Some(-20), Some(-36), Some(52)]);
        let f5 = lookup("F5-6", BlockParams::default()).unwrap();
        assert_eq!(f5.col_sums(), vec![-2, 2, -2, 2, 1, -1]);
        let w6 = lookup("W6-blW1", BlockParams::ell(5)).unwrap();
        let expect: Vec<u64> = (0..12).map(|j| 5 * j + 1).collect();
        assert_eq!(w6.support().unwrap().as_slice(), &expect[..]);
        assert!(matches!(
            lookup("W6-blW1", BlockParams::ell(1)),
            Err(Error::InvalidBlockParams { .. })
        ));
        assert!(matches!(lookup("nope", BlockParams::default()), Err(Error::UnknownBlock(_))));
        assert!(matches!(
            lookup("W4-blW2", BlockParams::ell(4)),
            Err(Error::InvalidBlockParams { .. })
        ));
    }

    #[test]
    fn corrupted_entry_is_reported() {
        let line = "X\tt\tshiftable-paired\tnone\t1 -2 5 -6 -9 11\t-3 4 -7 8 10 -13\t-2 2 -2 2 1 -1\trange 1 13 minus 13";
        let e = parse_line(line).unwrap();
        let d = check_entry(&e, BlockParams::default());
        assert!(!d.is_empty());
        assert!(d.iter().any(|d| d.detail.contains("support")));
    }
}
