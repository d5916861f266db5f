//! Digit strings over `Σ_k`, canonical base-k representations and borders.
//!
//! Words are always most-significant-digit first.

use std::fmt;

use crate::error::{Error, Result};

/// A digit string over `{0, …, k-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    digits: Vec<u8>,
    base: u32,
}

impl Word {
    pub fn new(digits: Vec<u8>, base: u32) -> Result<Self> {
        check_base(base)?;
        if let Some(&d) = digits.iter().find(|&&d| u32::from(d) >= base) {
            return Err(Error::InvalidDigit { digit: d.into(), base });
        }
        Ok(Word { digits, base })
    }

    /// Parses a string of decimal digits such as `"0110"`.
    pub fn parse(s: &str, base: u32) -> Result<Self> {
        check_base(base)?;
        if base > 10 {
            return Err(Error::InvalidBase(base));
        }
        let digits = s
            .chars()
            .map(|c| match c.to_digit(10) {
                Some(d) if d < base => Ok(d as u8),
                Some(d) => Err(Error::InvalidDigit { digit: d, base }),
                None => Err(Error::Parse(format!("not a digit: {c:?} in {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Word { digits, base })
    }

    pub fn empty(base: u32) -> Result<Self> {
        Word::new(Vec::new(), base)
    }

    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// No leading zero (the empty word is canonical).
    pub fn is_canonical(&self) -> bool {
        self.digits.first() != Some(&0)
    }

    pub fn into_digits(self) -> Vec<u8> {
        self.digits
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.digits {
            if self.base <= 10 {
                write!(f, "{d}")?;
            } else {
                write!(f, "[{d}]")?;
            }
        }
        Ok(())
    }
}

fn check_base(k: u32) -> Result<()> {
    if (2..=256).contains(&k) {
        Ok(())
    } else {
        Err(Error::InvalidBase(k))
    }
}

/// Canonical base-k representation of `n`; zero maps to the empty word.
pub fn to_base(n: u64, k: u32) -> Result<Word> {
    check_base(k)?;
    let k = u64::from(k);
    let mut digits = Vec::new();
    let mut m = n;
    while m > 0 {
        digits.push((m % k) as u8);
        m /= k;
    }
    digits.reverse();
    Ok(Word { digits, base: k as u32 })
}

/// Value of a word read in base `w.base()`. Leading zeros are ignored.
///
/// Panics if the value does not fit in a `u64`.
pub fn from_base(w: &Word) -> u64 {
    let k = u64::from(w.base);
    w.digits.iter().fold(0u64, |acc, &d| {
        acc.checked_mul(k)
            .and_then(|x| x.checked_add(u64::from(d)))
            .expect("word value overflows u64")
    })
}

/// A word over `Σ_k × Σ_k` encoding a pair of integers in parallel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairWord {
    pairs: Vec<(u8, u8)>,
    base: u32,
}

impl PairWord {
    pub fn pairs(&self) -> &[(u8, u8)] {
        &self.pairs
    }

    pub fn first(&self) -> Word {
        Word { digits: self.pairs.iter().map(|p| p.0).collect(), base: self.base }
    }

    pub fn second(&self) -> Word {
        Word { digits: self.pairs.iter().map(|p| p.1).collect(), base: self.base }
    }
}

impl fmt::Display for PairWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (a, b) in &self.pairs {
            write!(f, "[{a},{b}]")?;
        }
        Ok(())
    }
}

/// `(m, n)_k`: the shorter representation is left-padded with zeros.
pub fn pair_encode(m: u64, n: u64, k: u32) -> Result<PairWord> {
    let a = to_base(m, k)?.digits;
    let b = to_base(n, k)?.digits;
    let len = a.len().max(b.len());
    let pad = |v: Vec<u8>| {
        let mut out = vec![0u8; len - v.len()];
        out.extend(v);
        out
    };
    let pairs = pad(a).into_iter().zip(pad(b)).collect();
    Ok(PairWord { pairs, base: k })
}

/// Failure function: entry `i` is the length of the longest proper border of `w[..=i]`.
pub fn border_array<T: PartialEq>(w: &[T]) -> Vec<usize> {
    let mut arr = vec![0usize; w.len()];
    for i in 1..w.len() {
        let mut b = arr[i - 1];
        while b > 0 && w[i] != w[b] {
            b = arr[b - 1];
        }
        if w[i] == w[b] {
            b += 1;
        }
        arr[i] = b;
    }
    arr
}

/// True iff no nonempty proper prefix of `w` is also a suffix.
pub fn is_unbordered<T: PartialEq>(w: &[T]) -> Result<bool> {
    match border_array(w).last() {
        None => Err(Error::EmptyWord),
        Some(&b) => Ok(b == 0),
    }
}
