//! DNA alphabet primitives.
//!
//! Bases use the fixed ordinal convention A=0, C=1, G=2, T=3. Probe
//! identifiers in reports are derived from it, so it must never change.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(u8)]
pub enum Base {
    A = 0,
    C = 1,
    G = 2,
    T = 3,
}

impl Base {
    pub const ALL: [Base; 4] = [Base::A, Base::C, Base::G, Base::T];

    /// Decodes the two low bits of `code`.
    #[inline]
    pub fn from_code(code: u8) -> Base {
        Base::ALL[(code & 3) as usize]
    }

    #[inline]
    pub fn code(self) -> u8 {
        self as u8
    }

    /// Watson-Crick partner. With the ordinal convention this is `3 - code`.
    #[inline]
    pub fn complement(self) -> Base {
        Base::from_code(3 - self.code())
    }

    /// 2-4 rule weight: 1 for A/T, 2 for C/G.
    #[inline]
    pub fn weight(self) -> u32 {
        match self {
            Base::A | Base::T => 1,
            Base::C | Base::G => 2,
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Base::A => 'A',
            Base::C => 'C',
            Base::G => 'G',
            Base::T => 'T',
        }
    }

    /// Case-insensitive parse. IUPAC ambiguity codes are reported as
    /// degenerate, anything else as invalid.
    pub fn from_char(c: char) -> Result<Base> {
        match c.to_ascii_uppercase() {
            'A' => Ok(Base::A),
            'C' => Ok(Base::C),
            'G' => Ok(Base::G),
            'T' => Ok(Base::T),
            u if is_iupac(u) => Err(Error::DegenerateBase(u)),
            _ => Err(Error::InvalidBase(c)),
        }
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

pub fn complement(b: Base) -> Base {
    b.complement()
}

/// True iff `c` is not one of A, C, G, T (case-insensitive).
pub fn is_degenerate(c: char) -> bool {
    !matches!(c.to_ascii_uppercase(), 'A' | 'C' | 'G' | 'T')
}

/// True for the IUPAC nucleotide codes, concrete or ambiguous.
pub fn is_iupac(c: char) -> bool {
    matches!(
        c.to_ascii_uppercase(),
        'A' | 'C' | 'G' | 'T' | 'U' | 'R' | 'Y' | 'S' | 'W' | 'K' | 'M' | 'B' | 'D' | 'H' | 'V' | 'N'
    )
}

/// A non-degenerate DNA string.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DnaString(Vec<Base>);

impl DnaString {
    pub fn new() -> Self {
        DnaString(Vec::new())
    }

    pub fn from_bases(bases: Vec<Base>) -> Self {
        DnaString(bases)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bases(&self) -> &[Base] {
        &self.0
    }

    pub fn push(&mut self, b: Base) {
        self.0.push(b);
    }

    pub fn concat(&self, other: &DnaString) -> DnaString {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        DnaString(v)
    }

    pub fn reverse_complement(&self) -> DnaString {
        DnaString(reverse_complement(&self.0))
    }

    pub fn weight(&self) -> u32 {
        weight(&self.0)
    }
}

impl FromStr for DnaString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars().map(Base::from_char).collect::<Result<Vec<_>>>().map(DnaString)
    }
}

impl fmt::Display for DnaString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{}", b.to_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for DnaString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DnaString({self})")
    }
}

impl From<&[Base]> for DnaString {
    fn from(bases: &[Base]) -> Self {
        DnaString(bases.to_vec())
    }
}

pub fn reverse_complement(s: &[Base]) -> Vec<Base> {
    s.iter().rev().map(|b| b.complement()).collect()
}

pub fn weight(s: &[Base]) -> u32 {
    s.iter().map(|b| b.weight()).sum()
}

/// A subset of {A, C, G, T}, stored as a 4-bit mask indexed by base ordinal.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BaseSet(u8);

impl BaseSet {
    pub const EMPTY: BaseSet = BaseSet(0);
    pub const ALL: BaseSet = BaseSet(0b1111);

    pub fn from_bases(bases: impl IntoIterator<Item = Base>) -> Self {
        BaseSet(bases.into_iter().fold(0, |m, b| m | (1 << b.code())))
    }

    pub fn contains(self, b: Base) -> bool {
        self.0 & (1 << b.code()) != 0
    }

    pub fn insert(&mut self, b: Base) {
        self.0 |= 1 << b.code();
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Members in ordinal order.
    pub fn iter(self) -> impl Iterator<Item = Base> {
        Base::ALL.into_iter().filter(move |&b| self.contains(b))
    }

    /// Base-wise complement of every member.
    pub fn complement(self) -> BaseSet {
        BaseSet::from_bases(self.iter().map(Base::complement))
    }
}

impl FromStr for BaseSet {
    type Err = Error;

    /// Parses a string over ACGT such as `"TC"`. Order and repeats are ignored.
    fn from_str(s: &str) -> Result<Self> {
        s.chars().map(Base::from_char).collect::<Result<Vec<_>>>().map(BaseSet::from_bases)
    }
}

impl fmt::Display for BaseSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BaseSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BaseSet({self})")
    }
}
