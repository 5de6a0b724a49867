//! Placement of blocks into full arrays, and the top-level dispatcher.

use crate::array::{Block, PFArray, Shift};
use crate::build::{self, Claim, Flavor, XSet, XVariant};
use crate::catalog::make_bab;
use crate::error::{Error, Result};
use crate::params::Parameters;
use crate::sequence::{BlockSequence, Contract};
use crate::verify::{check_necessary, verify_full, Mode, VerificationReport};

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Writes `block` with its top-left cell at `(row, col)`, wrapping toroidally.
fn place_block(a: &mut PFArray, block: &Block, row: i64, col: i64) -> Result<()> {
    for (r, c, v) in block.entries() {
        a.place(row + r as i64 - 1, col + c as i64 - 1, v)?;
    }
    Ok(())
}

/// Places `B(a, b) ± x_j` so that `1 + x_j` lands on `(j+1, 4q_j + j + 1)`, where
/// `q_j = floor(j / lcm(m, n))`. Requires `s, k = 0 (mod 4)` and `|X| = ms/4`.
pub fn assemble_diagonal(p: &Parameters, a: u64, b: u64, x: &XSet) -> Result<PFArray> {
    if p.s() % 4 != 0 || p.k() % 4 != 0 {
        return Err(Error::PreconditionViolated(format!(
            "{p}: s and k must be multiples of 4"
        )));
    }
    if x.len() as u64 != p.ms() / 4 {
        return Err(Error::CountMismatch(format!(
            "{} shifts supplied, {} needed",
            x.len(),
            p.ms() / 4
        )));
    }
    let (m, n) = (p.m(), p.n());
    let lcm = m / gcd(m, n) * n;
    let base = make_bab(a, b);
    let mut out = PFArray::new(m as usize, n as usize);
    for (j, &xj) in x.values().iter().enumerate() {
        let j = j as u64;
        let q = j / lcm;
        place_block(&mut out, &base.shifted(xj), (j + 1) as i64, (4 * q + j + 1) as i64)?;
    }
    Ok(out)
}

/// The `2d x d` arrangement of `d` blocks of size `2 x w`: row 1 of block `i` starts
/// at `(i, i)`, row 2 at `(d + i, i)`, with columns taken modulo `d`.
pub fn assemble_p(seq: &BlockSequence) -> Result<PFArray> {
    let d = seq.len();
    let w = seq.width();
    if w > d {
        return Err(Error::ShapeViolation(format!(
            "blocks of width {w} do not fit {d} columns"
        )));
    }
    let mut out = PFArray::new(2 * d, d);
    for (i, b) in seq.blocks().iter().enumerate() {
        if b.height() != 2 {
            return Err(Error::ShapeViolation(format!("block {} has height {}", i + 1, b.height())));
        }
        for (r, c, v) in b.entries() {
            let row = if r == 1 { i + 1 } else { d + i + 1 };
            out.place(row as i64, (i + c) as i64, v)?;
        }
    }
    Ok(out)
}

/// Tiles `rows/2` blocks of width `s` into a `rows x n` array of `P` arrangements.
/// Grid cell `(i, j)` holds `P` of the `j`-th width-`a` column slices of blocks
/// `(i-1)d+1 ..= id`, with `d = gcd(rows/2, n)` and `a = sd/n`.
fn grid(rows: u64, n: u64, s: u64, blocks: &[Block]) -> Result<PFArray> {
    let d = gcd(rows / 2, n);
    if rows % 2 != 0 || (s * d) % n != 0 || (s * d / n) % 2 != 0 {
        return Err(Error::PreconditionViolated(format!(
            "cannot slice width {s} into {n}/{d} even parts for {rows} rows"
        )));
    }
    let a = (s * d / n) as usize;
    let (d, mbar, nbar) = (d as usize, (rows / 2 / d) as usize, (n / d) as usize);
    if blocks.len() != mbar * d {
        return Err(Error::CountMismatch(format!(
            "{} blocks supplied, {} needed",
            blocks.len(),
            mbar * d
        )));
    }
    let mut out = PFArray::new(rows as usize, n as usize);
    for i in 0..mbar {
        for j in 0..nbar {
            let slices = blocks[i * d..(i + 1) * d]
                .iter()
                .map(|b| b.columns(a * j + 1, a * (j + 1)))
                .collect();
            let seq = BlockSequence::new(slices, Contract::PairedColumns, Vec::new())?;
            let p = assemble_p(&seq)?;
            for (r, c, v) in p.entries() {
                out.place((i * 2 * d + r) as i64, (j * d + c) as i64, v)?;
            }
        }
    }
    Ok(out)
}

fn require(cond: bool, p: &Parameters, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::PreconditionViolated(format!("{p}: {what}")))
    }
}

/// `s = 2 (mod 4)`, `k = 0 (mod 4)`: the `P` grid over one block sequence.
pub fn assemble_s2(p: &Parameters) -> Result<PFArray> {
    assemble_s2_traced(p).map(|(a, _)| a)
}

fn assemble_s2_traced(p: &Parameters) -> Result<(PFArray, Vec<String>)> {
    require(p.s() % 4 == 2 && p.k() % 4 == 0, p, "need s = 2 and k = 0 (mod 4)")?;
    require(4 <= p.s() && p.s() <= p.n() && 4 <= p.k() && p.k() <= p.m(), p, "need 4 <= s <= n, 4 <= k <= m")?;
    if p.m() % 2 != 0 {
        return Err(Error::NonExistent(format!("{p}: m must be even when s = 2 (mod 4)")));
    }
    let seq = build::build_seq_b(p.m(), p.s(), p.t())?;
    let a = grid(p.m(), p.n(), p.s(), seq.blocks())?;
    let mut trace = seq.trace().to_vec();
    trace.push("grid.s2k0".into());
    Ok((a, trace))
}

/// `s = 0 (mod 4)`, `k = 2 (mod 4)`: the transpose of the `(n, m; k, s)` case.
pub fn assemble_s2_transposed(p: &Parameters) -> Result<PFArray> {
    assemble_s2_transposed_traced(p).map(|(a, _)| a)
}

fn assemble_s2_transposed_traced(p: &Parameters) -> Result<(PFArray, Vec<String>)> {
    require(p.s() % 4 == 0 && p.k() % 4 == 2, p, "need s = 0 and k = 2 (mod 4)")?;
    if p.n() % 2 != 0 {
        return Err(Error::NonExistent(format!("{p}: n must be even when k = 2 (mod 4)")));
    }
    let (a, mut trace) = assemble_s2_traced(&p.transposed())?;
    if let Some(last) = trace.last_mut() {
        *last = "grid.s0k2".into();
    }
    Ok((a.transpose(), trace))
}

/// `s, k = 2 (mod 4)` with `m, n` even: a square of parity-profile blocks on the
/// diagonal, stacked over a `P` grid when `m > n`. For `m < n` the transposed
/// case is built and transposed back.
pub fn assemble_sk2(p: &Parameters) -> Result<PFArray> {
    assemble_sk2_traced(p).map(|(a, _)| a)
}

fn assemble_sk2_traced(p: &Parameters) -> Result<(PFArray, Vec<String>)> {
    require(p.s() % 4 == 2 && p.k() % 4 == 2, p, "need s, k = 2 (mod 4)")?;
    require(6 <= p.s() && p.s() <= p.n() && 6 <= p.k() && p.k() <= p.m(), p, "need 6 <= s <= n, 6 <= k <= m")?;
    if p.m() % 2 != 0 && p.n() % 2 != 0 {
        return Err(Error::OpenCase { m: p.m(), n: p.n() });
    }
    require(p.m() % 2 == 0 && p.n() % 2 == 0, p, "m and n must both be even")?;
    if p.m() < p.n() {
        let (a, mut trace) = assemble_sk2_traced(&p.transposed())?;
        trace.push("square.sk2.transposed".into());
        return Ok((a.transpose(), trace));
    }
    let (m, n, s, t) = (p.m(), p.n(), p.s(), p.t());
    let old = build::build_seq_b_old(m, s, t)?;
    let mut trace = old.trace().to_vec();
    let half = (n / 2) as usize;
    let mut a1 = PFArray::new(n as usize, n as usize);
    for (r, b) in old.blocks()[..half].iter().enumerate() {
        place_block(&mut a1, b, (2 * r + 1) as i64, (2 * r + 1) as i64)?;
    }
    trace.push("square.sk2".into());
    if m == n {
        return Ok((a1, trace));
    }
    let seq = build::build_seq_b(m, s, t)?;
    trace.extend_from_slice(seq.trace());
    let a2 = grid(m - n, n, s, &seq.blocks()[half..])?;
    trace.push("square.sk2.stack".into());
    Ok((a1.stack(&a2)?, trace))
}

/// A verified array together with how it was built.
#[derive(Debug, Clone)]
pub struct Construction {
    pub array: PFArray,
    /// Branch identifiers in the order they were taken.
    pub trace: Vec<String>,
    /// Block-sequence builds whose supports can be rechecked independently.
    pub claims: Vec<Claim>,
    pub report: VerificationReport,
}

/// Shift parameters `(a, b)` and shift set for the corner-block construction.
pub fn diagonal_recipe(p: &Parameters) -> Result<(u64, u64, XSet)> {
    let (t, ell) = (p.t(), p.ell());
    if t % 8 == 0 {
        Ok((ell, 2 * ell, build::xset_k4(p, XVariant::Mod8)?))
    } else if t % 4 == 0 {
        Ok((1, ell, build::xset_k4(p, XVariant::Mod4)?))
    } else {
        Ok((1, 2, build::xset_k4(p, XVariant::Half)?))
    }
}

/// Builds an integer `H_t(m, n; s, k)` and verifies it before returning.
pub fn construct(p: &Parameters) -> Result<Construction> {
    let (m, n, s, k) = (p.m(), p.n(), p.s(), p.k());
    if s % 2 != 0 || k % 2 != 0 {
        return Err(Error::PreconditionViolated(format!("{p}: s and k must be even")));
    }
    require(4 <= s && s <= n && 4 <= k && k <= m, p, "need 4 <= s <= n and 4 <= k <= m")?;
    if !check_necessary(p).is_satisfied() {
        return Err(Error::NonExistent(format!("{p}: necessary conditions fail")));
    }
    let (array, trace, claims) = match (s % 4, k % 4) {
        (0, 0) => {
            let (a, b, x) = diagonal_recipe(p)?;
            let array = assemble_diagonal(p, a, b, &x)?;
            (array, vec![x.provenance().to_string()], Vec::new())
        }
        (2, 0) => {
            let (array, trace) = assemble_s2_traced(p)?;
            let claim = Claim::SeqB { flavor: Flavor::Paired, m, s, t: p.t() };
            (array, trace, vec![claim])
        }
        (0, 2) => {
            let (array, trace) = assemble_s2_transposed_traced(p)?;
            let claim = Claim::SeqB { flavor: Flavor::Paired, m: n, s: k, t: p.t() };
            (array, trace, vec![claim])
        }
        _ => {
            let (array, trace) = assemble_sk2_traced(p)?;
            let (mm, ss) = if m >= n { (m, s) } else { (n, k) };
            let mut claims = vec![Claim::SeqB { flavor: Flavor::Parity, m: mm, s: ss, t: p.t() }];
            if m != n {
                claims.push(Claim::SeqB { flavor: Flavor::Paired, m: mm, s: ss, t: p.t() });
            }
            (array, trace, claims)
        }
    };
    let report = verify_full(&array, p, Mode::Integer);
    if !report.overall {
        return Err(Error::VerificationFailed(Box::new(report)));
    }
    Ok(Construction { array, trace, claims, report })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(m: u64, n: u64, s: u64, k: u64, t: u64) -> Parameters {
        Parameters::derive(m, n, s, k, t).unwrap()
    }

    #[test]
    fn corner_block_example() {
        let p = params(6, 12, 8, 4, 24);
        let x = XSet::new(vec![0, 1, 10, 11, 20, 21, 30, 31, 40, 41, 50, 51], "example");
        let a = assemble_diagonal(&p, 2, 5, &x).unwrap();
        assert_eq!(a.get(1, 1), Some(1));
        assert_eq!(a.get(1, 2), Some(-3));
        assert_eq!(a.get(3, 1), Some(-6));
        assert_eq!(a.get(3, 2), Some(8));
        assert!(verify_full(&a, &p, Mode::Integer).overall);
    }

    #[test]
    fn p_arrangement_sums() {
        let b = |x: i64| {
            Block::dense("b", &[&[1 + x, -(2 + x)], &[-(3 + x), 4 + x]]).unwrap()
        };
        let seq = BlockSequence::new(vec![b(0), b(4), b(8)], Contract::PairedColumns, vec![])
            .unwrap();
        let p = assemble_p(&seq).unwrap();
        assert_eq!((p.rows(), p.cols()), (6, 3));
        assert_eq!(p.col_sums(), vec![0, 0, 0]);
        assert_eq!(p.get(3, 1), Some(-10));
        assert_eq!(p.get(6, 1), Some(12));
    }

    #[test]
    fn dispatch_examples() {
        for (m, n, s, k, t) in [
            (9, 9, 8, 8, 12),
            (5, 10, 8, 4, 10),
            (4, 4, 4, 4, 8),
            (20, 15, 6, 8, 12),
            (6, 15, 10, 4, 5),
            (15, 20, 8, 6, 12),
            (16, 16, 14, 14, 32),
            (20, 12, 6, 10, 15),
            (12, 20, 10, 6, 15),
        ] {
            let c = construct(&params(m, n, s, k, t))
                .unwrap_or_else(|e| panic!("({m},{n},{s},{k},{t}): {e}"));
            assert!(c.report.overall);
            assert!(!c.trace.is_empty());
        }
    }

    #[test]
    fn parity_obstructions() {
        assert!(matches!(construct(&params(7, 7, 6, 6, 14)), Err(Error::NonExistent(_))));
        assert!(matches!(construct(&params(7, 7, 6, 6, 12)), Err(Error::OpenCase { .. })));
        assert!(matches!(construct(&params(9, 6, 6, 9, 1)), Err(Error::PreconditionViolated(_))));
        assert!(matches!(construct(&params(5, 10, 6, 3, 1)), Err(Error::PreconditionViolated(_))));
    }
}
