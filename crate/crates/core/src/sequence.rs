use serde::{Deserialize, Serialize};

use crate::array::{Block, Shift};
use crate::error::{Error, Result};
use crate::support::{collect_support, SupportSet};
use crate::Location;

/// Column-sum profile a sequence of `2 x 2b` blocks must share.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Contract {
    /// Adjacent columns sum to `(sigma_i, -sigma_i)`, same profile in every block.
    PairedColumns,
    /// `PairedColumns`, plus shiftable with both row sums zero.
    ShiftablePaired,
    /// Column sums equal a shared profile whose odd-indexed and even-indexed
    /// entries each total zero; shiftable with both row sums zero.
    ShiftableParity,
}

impl Contract {
    pub fn name(self) -> &'static str {
        match self {
            Contract::PairedColumns => "paired-columns",
            Contract::ShiftablePaired => "shiftable-paired",
            Contract::ShiftableParity => "shiftable-parity",
        }
    }

    /// Checks one block in isolation, returning the column-sum profile it declares.
    /// For paired contracts the profile is `sigma_1..sigma_b`, otherwise all `2b` sums.
    pub fn profile_of(self, b: &Block) -> std::result::Result<Vec<i64>, String> {
        if b.height() != 2 || b.width() % 2 != 0 {
            return Err(format!("shape {}x{} is not 2 x 2b", b.height(), b.width()));
        }
        if b.entries().count() != 2 * b.width() {
            return Err("block is not fully filled".into());
        }
        let cols = b.col_sums();
        if self != Contract::PairedColumns {
            if !b.is_shiftable() {
                return Err("block is not shiftable".into());
            }
            let rows = b.row_sums();
            if rows != [0, 0] {
                return Err(format!("row sums {rows:?} are not zero"));
            }
        }
        match self {
            Contract::PairedColumns | Contract::ShiftablePaired => {
                let mut sigma = Vec::with_capacity(cols.len() / 2);
                for (i, pair) in cols.chunks(2).enumerate() {
                    if pair[0] != -pair[1] {
                        return Err(format!(
                            "columns {} and {} sum to {} and {}",
                            2 * i + 1,
                            2 * i + 2,
                            pair[0],
                            pair[1]
                        ));
                    }
                    sigma.push(pair[0]);
                }
                Ok(sigma)
            }
            Contract::ShiftableParity => {
                let odd: i64 = cols.iter().step_by(2).sum();
                let even: i64 = cols.iter().skip(1).step_by(2).sum();
                if odd != 0 || even != 0 {
                    return Err(format!(
                        "odd-column total {odd} and even-column total {even} must both vanish"
                    ));
                }
                Ok(cols)
            }
        }
    }
}

/// An ordered list of equally shaped blocks satisfying a common [`Contract`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockSequence {
    blocks: Vec<Block>,
    contract: Contract,
    sigma: Vec<i64>,
    trace: Vec<String>,
}

impl BlockSequence {
    /// Validates every block against `contract` and a shared profile.
    pub fn new(blocks: Vec<Block>, contract: Contract, trace: Vec<String>) -> Result<Self> {
        let mut sigma: Option<Vec<i64>> = None;
        for (i, b) in blocks.iter().enumerate() {
            let violation = |reason: String| Error::ContractViolation {
                index: i + 1,
                contract: contract.name(),
                reason,
            };
            if let Some(first) = blocks.first() {
                if (b.height(), b.width()) != (first.height(), first.width()) {
                    return Err(violation(format!(
                        "shape {}x{} differs from {}x{}",
                        b.height(),
                        b.width(),
                        first.height(),
                        first.width()
                    )));
                }
            }
            let prof = contract.profile_of(b).map_err(violation)?;
            match &sigma {
                None => sigma = Some(prof),
                Some(s) if *s != prof => {
                    return Err(violation(format!(
                        "column profile {prof:?} differs from {s:?}"
                    )))
                }
                _ => {}
            }
        }
        Ok(BlockSequence {
            blocks,
            contract,
            sigma: sigma.unwrap_or_default(),
            trace,
        })
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn contract(&self) -> Contract {
        self.contract
    }

    pub fn sigma(&self) -> &[i64] {
        &self.sigma
    }

    /// Branch identifiers recorded by the builder that produced this sequence.
    pub fn trace(&self) -> &[String] {
        &self.trace
    }

    pub fn width(&self) -> usize {
        self.blocks.first().map_or(0, Block::width)
    }

    pub fn support(&self) -> Result<SupportSet> {
        collect_support(self.blocks.iter().enumerate().flat_map(|(i, b)| {
            b.entries().map(move |(row, col, v)| {
                (
                    Location {
                        block: Some(i + 1),
                        row,
                        col,
                    },
                    v,
                )
            })
        }))
    }

    pub fn into_blocks(self) -> Vec<Block> {
        self.blocks
    }
}

impl Shift for BlockSequence {
    fn shifted(&self, x: u64) -> Self {
        BlockSequence {
            blocks: self.blocks.iter().map(|b| b.shifted(x)).collect(),
            contract: self.contract,
            sigma: self.sigma.clone(),
            trace: self.trace.clone(),
        }
    }
}
