use std::ops::Range;
use std::sync::Arc;

use crate::code::StabilizerCode;
use crate::error::{Error, Result};
use crate::f2linalg::BitVector;

#[derive(Clone, Debug)]
pub struct Block {
    pub code: Arc<StabilizerCode>,
    pub qubits: Range<usize>,
}

/// Assignment of physical qubits to codeblocks.
///
/// Blocks are stored in ascending qubit order, their ranges are disjoint and
/// together cover `0..n_total`. Logical qubits are numbered block by block,
/// so block 0 carries the most significant logical bits.
#[derive(Clone, Debug)]
pub struct CodeblockLayout {
    blocks: Vec<Block>,
    n_total: usize,
}

impl CodeblockLayout {
    pub fn new(blocks: Vec<(Arc<StabilizerCode>, Range<usize>)>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::Invalid("layout has no codeblocks".into()));
        }
        let mut blocks: Vec<Block> = blocks
            .into_iter()
            .map(|(code, qubits)| Block { code, qubits })
            .collect();
        blocks.sort_by_key(|b| b.qubits.start);
        let mut next = 0;
        for b in &blocks {
            if b.qubits.start != next {
                return Err(Error::Invalid(format!(
                    "codeblock ranges must tile the qubits; expected a block starting at {next}, found {:?}",
                    b.qubits
                )));
            }
            if b.qubits.len() != b.code.n() {
                return Err(Error::DimensionMismatch {
                    expected: b.code.n(),
                    found: b.qubits.len(),
                });
            }
            next = b.qubits.end;
        }
        Ok(Self { blocks, n_total: next })
    }

    /// `c` consecutive copies of one code.
    pub fn repeated(code: Arc<StabilizerCode>, c: usize) -> Result<Self> {
        let n = code.n();
        Self::new((0..c).map(|m| (code.clone(), m * n..(m + 1) * n)).collect())
    }

    pub fn single(code: StabilizerCode) -> Self {
        Self::repeated(Arc::new(code), 1).expect("one block always tiles")
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// Number of codeblocks `c`.
    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn n_total(&self) -> usize {
        self.n_total
    }

    pub fn k_total(&self) -> usize {
        self.blocks.iter().map(|b| b.code.k()).sum()
    }

    /// Aggregate distance: the minimum over blocks.
    pub fn distance(&self) -> usize {
        self.blocks.iter().map(|b| b.code.d()).min().unwrap_or(0)
    }

    pub fn block_of(&self, qubit: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.qubits.contains(&qubit))
    }

    /// Block index and local index of global logical qubit `j`.
    pub fn locate_logical(&self, j: usize) -> Result<(usize, usize)> {
        let mut offset = 0;
        for (m, b) in self.blocks.iter().enumerate() {
            if j < offset + b.code.k() {
                return Ok((m, j - offset));
            }
            offset += b.code.k();
        }
        Err(Error::IndexOutOfRange {
            index: j,
            bound: self.k_total(),
        })
    }

    /// Physical qubit whose Z implements logical Z on global logical qubit `j`.
    pub fn logical_z_qubit(&self, j: usize) -> Result<usize> {
        let (m, local) = self.locate_logical(j)?;
        let b = &self.blocks[m];
        Ok(b.qubits.start + b.code.perm()[local])
    }

    /// Computational-basis index of the physical codeword for every global
    /// logical basis state.
    pub fn codeword_indices(&self) -> Result<Vec<u64>> {
        if self.n_total > 63 {
            return Err(Error::TooLarge {
                what: "layout qubits for codeword indexing",
                value: self.n_total,
                limit: 63,
            });
        }
        let per_block = self
            .blocks
            .iter()
            .map(|b| b.code.codeword_indices())
            .collect::<Result<Vec<_>>>()?;
        let mut out = vec![0u64];
        for (b, cws) in self.blocks.iter().zip(&per_block) {
            let shift = self.n_total - b.qubits.end;
            out = out
                .iter()
                .flat_map(|&prefix| cws.iter().map(move |&cw| prefix | (cw << shift)))
                .collect();
        }
        Ok(out)
    }

    /// Physical codeword bits for a global logical word.
    pub fn codeword(&self, eps: &BitVector) -> Result<BitVector> {
        if eps.len() != self.k_total() {
            return Err(Error::DimensionMismatch {
                expected: self.k_total(),
                found: eps.len(),
            });
        }
        let mut out = BitVector::zeros(self.n_total);
        let mut offset = 0;
        for b in &self.blocks {
            let k = b.code.k();
            let local: Vec<bool> = (offset..offset + k).map(|j| eps.get(j)).collect();
            let word = b.code.codeword(&BitVector::from_bools(&local))?;
            for i in word.ones() {
                out.set(b.qubits.start + i, true);
            }
            offset += k;
        }
        Ok(out)
    }
}
