//! Gap/run encoding of finite sets of positive integers.
//!
//! A nonempty set is split into maximal runs of consecutive integers. Run `i`
//! is preceded by a gap of `gap` missing integers (measured from the end of the
//! previous run, or from 0 for the first run).

use std::fmt;

use crate::error::{Error, Result};
use crate::set::ElementSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Block {
    pub gap: u32,
    pub len: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BlockEncoding {
    blocks: Vec<Block>,
}

impl BlockEncoding {
    /// Checks `len >= 1` everywhere and `gap >= 1` past the first block.
    pub fn new(blocks: Vec<Block>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::MalformedEncoding("no blocks".into()));
        }
        for (i, b) in blocks.iter().enumerate() {
            if b.len == 0 {
                return Err(Error::MalformedEncoding(format!(
                    "block {} has length 0",
                    i + 1
                )));
            }
            if i > 0 && b.gap == 0 {
                return Err(Error::MalformedEncoding(format!(
                    "block {} has gap 0",
                    i + 1
                )));
            }
        }
        Ok(BlockEncoding { blocks })
    }

    /// From the flat sequence `g_1, b_1, ..., g_j, b_j`.
    pub fn from_flat(seq: &[u32]) -> Result<Self> {
        if !seq.len().is_multiple_of(2) {
            return Err(Error::MalformedEncoding("odd-length sequence".into()));
        }
        Self::new(
            seq.chunks(2)
                .map(|c| Block {
                    gap: c[0],
                    len: c[1],
                })
                .collect(),
        )
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn last(&self) -> Block {
        *self.blocks.last().expect("encodings are nonempty")
    }

    pub fn to_flat(&self) -> Vec<u32> {
        self.blocks.iter().flat_map(|b| [b.gap, b.len]).collect()
    }

    /// The encoding with the last block dropped, `None` for a single block.
    pub fn without_last(&self) -> Option<BlockEncoding> {
        (self.blocks.len() > 1).then(|| BlockEncoding {
            blocks: self.blocks[..self.blocks.len() - 1].to_vec(),
        })
    }
}

impl fmt::Display for BlockEncoding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let flat: Vec<String> = self.to_flat().iter().map(u32::to_string).collect();
        write!(f, "({})", flat.join(","))
    }
}

pub fn encode_blocks(a: ElementSet) -> Result<BlockEncoding> {
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut blocks: Vec<Block> = Vec::new();
    let mut prev_end = 0u32;
    let mut current: Option<(u32, u32)> = None;
    for e in a.iter() {
        match current {
            Some((start, end)) if e == end + 1 => current = Some((start, e)),
            Some((start, end)) => {
                blocks.push(Block {
                    gap: start - prev_end - 1,
                    len: end - start + 1,
                });
                prev_end = end;
                current = Some((e, e));
            }
            None => current = Some((e, e)),
        }
    }
    let (start, end) = current.expect("nonempty");
    blocks.push(Block {
        gap: start - prev_end - 1,
        len: end - start + 1,
    });
    Ok(BlockEncoding { blocks })
}

pub fn decode_blocks(e: &BlockEncoding) -> Result<ElementSet> {
    // Re-validate: the fields are private but `decode` is also the public check.
    let e = BlockEncoding::new(e.blocks.clone())?;
    let mut set = ElementSet::EMPTY;
    let mut pos = 0u32;
    for b in &e.blocks {
        let start = pos + b.gap + 1;
        let end = start + b.len - 1;
        if end > crate::set::MAX_ELEMENT {
            return Err(Error::MalformedEncoding(format!(
                "element {end} exceeds 63"
            )));
        }
        set = set | ElementSet::interval(start, end);
        pos = end;
    }
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[u32]) -> ElementSet {
        ElementSet::from_elements(v.iter().copied())
    }

    #[test]
    fn encode_examples() {
        assert_eq!(
            encode_blocks(s(&[2, 3, 6])).unwrap().to_flat(),
            vec![1, 2, 2, 1]
        );
        assert_eq!(encode_blocks(s(&[1, 2, 3])).unwrap().to_flat(), vec![0, 3]);
        assert_eq!(encode_blocks(s(&[2, 3])).unwrap().to_flat(), vec![1, 2]);
        assert_eq!(encode_blocks(ElementSet::EMPTY), Err(Error::EmptySet));
    }

    #[test]
    fn decode_examples() {
        let dec = |v: &[u32]| decode_blocks(&BlockEncoding::from_flat(v).unwrap()).unwrap();
        assert_eq!(dec(&[1, 2]), s(&[2, 3]));
        assert_eq!(dec(&[0, 1]), s(&[1]));
        assert_eq!(dec(&[1, 2, 2, 1]), s(&[2, 3, 6]));
    }

    #[test]
    fn malformed_encodings_rejected() {
        assert!(matches!(
            BlockEncoding::from_flat(&[1, 0]),
            Err(Error::MalformedEncoding(_))
        ));
        assert!(matches!(
            BlockEncoding::from_flat(&[1, 2, 0, 1]),
            Err(Error::MalformedEncoding(_))
        ));
        assert!(matches!(
            BlockEncoding::from_flat(&[]),
            Err(Error::MalformedEncoding(_))
        ));
    }

    #[test]
    fn round_trip_exhaustive_up_to_16() {
        for bits in 1u64..1 << 16 {
            let a = ElementSet::from_bits(bits);
            let enc = encode_blocks(a).unwrap();
            assert!(enc.blocks().iter().all(|b| b.len >= 1));
            assert!(enc.blocks().iter().skip(1).all(|b| b.gap >= 1));
            assert_eq!(decode_blocks(&enc).unwrap(), a);
        }
    }
}
