//! One entry point per encoding: encode a matrix, rebuild a query structure
//! from the payload alone.

use std::fmt;
use std::str::FromStr;

use bitvec::prelude::*;

use crate::bitkit::Bits;
use crate::cartesian::{decode_offsets, decode_types, encode_offsets, encode_types, CartesianTree};
use crate::ds::{encode_2xn, encode_grid, GridStructure, TwoRowIndex, TwoRowVariant};
use crate::error::{Error, Result};
use crate::merge::{encode_3rows, encode_stacked, StackedIndex, ThreeRowIndex};
use crate::model::{answer_signature, enumerate_queries, Pos, QueryRect, RankMatrix, Sidedness};
use crate::random2d::{
    encode_1sided, encode_2sided, encode_3sided, encode_4sided_regions, OneSidedIndex, Region3Index, Region4Index,
    TwoSidedIndex,
};

/// Anything rebuilt from a payload that answers queries.
pub trait RmqIndex: Send + Sync {
    fn query(&self, q: &QueryRect) -> Result<Pos>;
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Scheme {
    Offsets,
    Types,
    Stacked,
    ThreeRow,
    OneSided,
    TwoSided,
    Region4,
    Region3,
    Grid,
    TwoXn7,
    TwoXn5,
}

impl Scheme {
    pub const ALL: [Scheme; 11] = [
        Scheme::Offsets,
        Scheme::Types,
        Scheme::Stacked,
        Scheme::ThreeRow,
        Scheme::OneSided,
        Scheme::TwoSided,
        Scheme::Region4,
        Scheme::Region3,
        Scheme::Grid,
        Scheme::TwoXn7,
        Scheme::TwoXn5,
    ];

    /// Container id.
    pub fn id(self) -> u8 {
        Scheme::ALL.iter().position(|&s| s == self).expect("listed") as u8 + 1
    }

    pub fn from_id(id: u8) -> Result<Self> {
        Scheme::ALL
            .get((id as usize).wrapping_sub(1))
            .copied()
            .ok_or_else(|| Error::Format(format!("unknown scheme id {id}")))
    }

    pub fn name(self) -> &'static str {
        match self {
            Scheme::Offsets => "OFFSETS",
            Scheme::Types => "TYPES",
            Scheme::Stacked => "STACKED",
            Scheme::ThreeRow => "THREEROW",
            Scheme::OneSided => "ONESIDED",
            Scheme::TwoSided => "TWOSIDED",
            Scheme::Region4 => "REGION4",
            Scheme::Region3 => "REGION3",
            Scheme::Grid => "GRID",
            Scheme::TwoXn7 => "TWOXN7",
            Scheme::TwoXn5 => "TWOXN5",
        }
    }

    /// The widest query class the scheme answers.
    pub fn sidedness(self) -> Sidedness {
        match self {
            Scheme::OneSided => Sidedness::One,
            Scheme::TwoSided => Sidedness::Two,
            Scheme::Region3 => Sidedness::Three,
            _ => Sidedness::Four,
        }
    }

    /// Row count the scheme is restricted to, if any.
    pub fn fixed_rows(self) -> Option<usize> {
        match self {
            Scheme::Offsets | Scheme::Types => Some(1),
            Scheme::TwoXn7 | Scheme::TwoXn5 => Some(2),
            Scheme::ThreeRow => Some(3),
            _ => None,
        }
    }

    pub fn supports(self, m: usize, n: usize) -> bool {
        self.check_dims(m, n).is_ok()
    }

    pub fn check_dims(self, m: usize, n: usize) -> Result<()> {
        if m == 0 || n == 0 || m.checked_mul(n).is_none_or(|c| c > u32::MAX as usize) {
            return Err(Error::Size(format!("{m}x{n}")));
        }
        match self.fixed_rows() {
            Some(rows) if rows != m => Err(Error::Domain(format!("{self} needs m = {rows}, got {m}"))),
            _ => Ok(()),
        }
    }

    pub fn encode(self, a: &RankMatrix) -> Result<Bits> {
        self.check_dims(a.rows(), a.cols())?;
        let line = || CartesianTree::from_values(a.row(0));
        Ok(match self {
            Scheme::Offsets => encode_offsets(&line()?),
            Scheme::Types => encode_types(&line()?),
            Scheme::Stacked => encode_stacked(a),
            Scheme::ThreeRow => encode_3rows(a)?,
            Scheme::OneSided => encode_1sided(a),
            Scheme::TwoSided => encode_2sided(a),
            Scheme::Region4 => encode_4sided_regions(a),
            Scheme::Region3 => encode_3sided(a),
            Scheme::Grid => encode_grid(a),
            Scheme::TwoXn7 => encode_2xn(a, TwoRowVariant::Seven)?,
            Scheme::TwoXn5 => encode_2xn(a, TwoRowVariant::Five)?,
        })
    }

    pub fn decode(self, bits: &BitSlice<u64, Lsb0>, m: usize, n: usize) -> Result<Box<dyn RmqIndex>> {
        self.check_dims(m, n)?;
        Ok(match self {
            Scheme::Offsets => Box::new(Line(decode_offsets(bits, n)?)),
            Scheme::Types => Box::new(Line(decode_types(bits, n)?)),
            Scheme::Stacked => Box::new(StackedIndex::decode(bits, m, n)?),
            Scheme::ThreeRow => Box::new(ThreeRowIndex::decode(bits, n)?),
            Scheme::OneSided => Box::new(OneSidedIndex::decode(bits, m, n)?),
            Scheme::TwoSided => Box::new(TwoSidedIndex::decode(bits, m, n)?),
            Scheme::Region4 => Box::new(Region4Index::decode(bits, m, n)?),
            Scheme::Region3 => Box::new(Region3Index::decode(bits, m, n)?),
            Scheme::Grid => Box::new(GridStructure::decode(bits, m, n)?),
            Scheme::TwoXn7 => Box::new(TwoRowIndex::decode(bits, n, TwoRowVariant::Seven)?),
            Scheme::TwoXn5 => Box::new(TwoRowIndex::decode(bits, n, TwoRowVariant::Five)?),
        })
    }
}

/// A query where a decoded structure disagrees with the oracle.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Mismatch {
    pub query: QueryRect,
    pub got: Pos,
    pub want: Pos,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "query {} answered ({}), oracle says ({})", self.query, self.got, self.want)
    }
}

impl Scheme {
    /// Encodes `a`, decodes the payload and replays every query of the
    /// scheme's class against the oracle.
    pub fn first_mismatch(self, a: &RankMatrix) -> Result<Option<Mismatch>> {
        let (m, n) = (a.rows(), a.cols());
        let idx = self.decode(&self.encode(a)?, m, n)?;
        let s = self.sidedness();
        for (query, want) in enumerate_queries(m, n, s).into_iter().zip(answer_signature(a, s)) {
            let got = idx.query(&query)?;
            if got != want {
                return Ok(Some(Mismatch { query, got, want }));
            }
        }
        Ok(None)
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Scheme::ALL
            .into_iter()
            .find(|x| x.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Domain(format!("unknown scheme {s:?}")))
    }
}

/// A `1 × n` array answered by its Cartesian tree.
struct Line(CartesianTree);

impl RmqIndex for Line {
    fn query(&self, q: &QueryRect) -> Result<Pos> {
        q.validate(1, self.0.len())?;
        Ok(Pos::new(1, self.0.rmq(q.j1 - 1, q.j2 - 1)? + 1))
    }
}

macro_rules! forward_query {
    ($($t:ty),*) => {$(
        impl RmqIndex for $t {
            fn query(&self, q: &QueryRect) -> Result<Pos> {
                <$t>::query(self, q)
            }
        }
    )*};
}

forward_query!(
    StackedIndex,
    ThreeRowIndex,
    OneSidedIndex,
    TwoSidedIndex,
    Region4Index,
    Region3Index,
    GridStructure,
    TwoRowIndex
);
