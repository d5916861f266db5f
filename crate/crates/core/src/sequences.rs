//! Generators for automatic sequences: DFAOs, morphism fixed points and
//! closed-form arithmetic definitions.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::words::to_base;

/// Deterministic finite automaton with output, reading base-k digits msd-first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "DfaoFile", into = "DfaoFile")]
pub struct Dfao {
    base: u32,
    initial: usize,
    transitions: Vec<Vec<usize>>,
    output: Vec<u8>,
}

#[derive(Serialize, Deserialize)]
struct DfaoFile {
    k: u32,
    states: usize,
    initial: usize,
    transitions: Vec<Vec<usize>>,
    output: Vec<u8>,
}

impl TryFrom<DfaoFile> for Dfao {
    type Error = Error;

    fn try_from(f: DfaoFile) -> Result<Self> {
        if f.transitions.len() != f.states {
            return Err(Error::InvalidDfao(format!(
                "{} transition rows for {} states",
                f.transitions.len(),
                f.states
            )));
        }
        Dfao::new(f.k, f.initial, f.transitions, f.output)
    }
}

impl From<Dfao> for DfaoFile {
    fn from(d: Dfao) -> Self {
        DfaoFile {
            k: d.base,
            states: d.transitions.len(),
            initial: d.initial,
            transitions: d.transitions,
            output: d.output,
        }
    }
}

impl Dfao {
    pub fn new(
        base: u32,
        initial: usize,
        transitions: Vec<Vec<usize>>,
        output: Vec<u8>,
    ) -> Result<Self> {
        if !(2..=256).contains(&base) {
            return Err(Error::InvalidBase(base));
        }
        let states = transitions.len();
        if states == 0 {
            return Err(Error::InvalidDfao("no states".into()));
        }
        if output.len() != states {
            return Err(Error::InvalidDfao(format!(
                "{} outputs for {states} states",
                output.len()
            )));
        }
        if initial >= states {
            return Err(Error::InvalidDfao(format!("initial state {initial} out of range")));
        }
        for (q, row) in transitions.iter().enumerate() {
            if row.len() != base as usize {
                return Err(Error::InvalidDfao(format!(
                    "state {q} has {} transitions, expected {base}",
                    row.len()
                )));
            }
            if let Some(&t) = row.iter().find(|&&t| t >= states) {
                return Err(Error::InvalidDfao(format!("state {q} targets missing state {t}")));
            }
        }
        if transitions[initial][0] != initial {
            return Err(Error::InvalidDfao(
                "initial state must loop on digit 0 (leading zeros would change the output)"
                    .into(),
            ));
        }
        Ok(Dfao { base, initial, transitions, output })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|source| Error::Io { path: path.to_owned(), source })?;
        Ok(serde_json::from_str(&text)?)
    }

    /// The two-state Thue-Morse automaton.
    pub fn thue_morse() -> Self {
        serde_json::from_str(include_str!("../fixtures/thue_morse.dfao.json"))
            .expect("bundled fixture is valid")
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn state_count(&self) -> usize {
        self.transitions.len()
    }

    /// Runs the automaton over an arbitrary digit string from the initial state.
    pub fn run(&self, digits: &[u8]) -> Result<u8> {
        let mut q = self.initial;
        for &d in digits {
            q = *self.transitions[q]
                .get(d as usize)
                .ok_or(Error::InvalidDigit { digit: d.into(), base: self.base })?;
        }
        Ok(self.output[q])
    }

    pub fn eval(&self, n: u64) -> u8 {
        let w = to_base(n, self.base).expect("base validated at construction");
        self.run(w.digits()).expect("canonical digits are valid")
    }
}

/// Thue-Morse: parity of the number of ones in the binary expansion.
pub fn thue_morse(n: u64) -> u8 {
    (n.count_ones() & 1) as u8
}

/// Rudin-Shapiro: parity of the (overlapping) occurrences of `11` in binary.
pub fn rudin_shapiro(n: u64) -> u8 {
    ((n & (n >> 1)).count_ones() & 1) as u8
}

/// Largest `e` with `k^e | x`.
pub fn nu(k: u64, x: u64) -> Result<u32> {
    if k < 2 {
        return Err(Error::InvalidBase(k.min(u64::from(u32::MAX)) as u32));
    }
    if x == 0 {
        return Err(Error::ZeroValuation);
    }
    let mut e = 0;
    let mut x = x;
    while x % k == 0 {
        x /= k;
        e += 1;
    }
    Ok(e)
}

/// Generalized period-doubling sequence `ν_k(n+1) mod 2`.
pub fn period_doubling(k: u32, n: u64) -> u8 {
    (nu(k.into(), n + 1).expect("n + 1 > 0 and k >= 2") & 1) as u8
}

/// A letter-to-word substitution on the alphabet `{0, …, images.len()-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    images: Vec<Vec<u8>>,
    seed: u8,
}

impl Morphism {
    pub fn new(images: Vec<Vec<u8>>, seed: u8) -> Result<Self> {
        let size = images.len();
        if size == 0 || size > 256 {
            return Err(Error::InvalidMorphism(format!("alphabet of size {size}")));
        }
        for (a, img) in images.iter().enumerate() {
            if img.is_empty() {
                return Err(Error::InvalidMorphism(format!("image of {a} is empty")));
            }
            if let Some(&b) = img.iter().find(|&&b| b as usize >= size) {
                return Err(Error::InvalidMorphism(format!("letter {b} not in alphabet")));
            }
        }
        let Some(seed_image) = images.get(seed as usize) else {
            return Err(Error::InvalidMorphism(format!("seed {seed} not in alphabet")));
        };
        if seed_image.len() < 2 || seed_image[0] != seed {
            return Err(Error::InvalidMorphism(format!(
                "not prolongable on {seed}: image must start with it and have length >= 2"
            )));
        }
        Ok(Morphism { images, seed })
    }

    pub fn image(&self, letter: u8) -> &[u8] {
        &self.images[letter as usize]
    }

    pub fn seed(&self) -> u8 {
        self.seed
    }

    /// Applies the morphism letter by letter.
    pub fn apply(&self, w: &[u8]) -> Vec<u8> {
        w.iter().flat_map(|&a| self.images[a as usize].iter().copied()).collect()
    }

    /// The first `length` letters of the fixed point starting with the seed.
    pub fn prefix(&self, length: usize) -> Vec<u8> {
        let mut w = vec![self.seed];
        // Each round the known prefix strictly grows, since the seed image has length >= 2.
        while w.len() < length {
            let mut next = Vec::with_capacity(length.min(w.len() * 4) + 8);
            for &a in &w {
                next.extend_from_slice(&self.images[a as usize]);
                if next.len() >= length {
                    break;
                }
            }
            w = next;
        }
        w.truncate(length);
        w
    }
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (a, img) in self.images.iter().enumerate() {
            if a > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}->")?;
            for b in img {
                write!(f, "{b}")?;
            }
        }
        Ok(())
    }
}

/// `0 -> 0^{k-1} 1`, `1 -> 0^k`.
pub fn phi_k(k: u32) -> Result<Morphism> {
    if !(2..=256).contains(&k) {
        return Err(Error::InvalidBase(k));
    }
    let k = k as usize;
    let mut zero = vec![0u8; k - 1];
    zero.push(1);
    Morphism::new(vec![zero, vec![0u8; k]], 0)
}

/// `0 -> 01`, `1 -> 10`.
pub fn thue_morse_morphism() -> Morphism {
    Morphism::new(vec![vec![0, 1], vec![1, 0]], 0).expect("prolongable")
}

pub fn morphism_prefix(m: &Morphism, length: usize) -> Vec<u8> {
    m.prefix(length)
}

/// Names a sequence for the factor oracle and CLI.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SequenceSpec {
    ThueMorse,
    RudinShapiro,
    PeriodDoubling(u32),
    Dfao(Dfao),
    Morphism(Morphism),
    /// `inner` with the symbol at `position` replaced by `1 - symbol` (binary
    /// sequences) or `symbol ^ 1`. Used to inject faults into checks.
    Flipped { inner: Box<SequenceSpec>, position: usize },
}

impl SequenceSpec {
    pub fn prefix(&self, length: usize) -> Vec<u8> {
        match self {
            SequenceSpec::ThueMorse => (0..length as u64).map(thue_morse).collect(),
            SequenceSpec::RudinShapiro => (0..length as u64).map(rudin_shapiro).collect(),
            SequenceSpec::PeriodDoubling(k) => {
                (0..length as u64).map(|n| period_doubling(*k, n)).collect()
            }
            SequenceSpec::Dfao(d) => (0..length as u64).map(|n| d.eval(n)).collect(),
            SequenceSpec::Morphism(m) => m.prefix(length),
            SequenceSpec::Flipped { inner, position } => {
                let mut p = inner.prefix(length);
                if let Some(x) = p.get_mut(*position) {
                    *x ^= 1;
                }
                p
            }
        }
    }

    pub fn flipped(self, position: usize) -> Self {
        SequenceSpec::Flipped { inner: Box::new(self), position }
    }
}

impl FromStr for SequenceSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "thue-morse" => Ok(SequenceSpec::ThueMorse),
            "rudin-shapiro" => Ok(SequenceSpec::RudinShapiro),
            "period-doubling" => Ok(SequenceSpec::PeriodDoubling(2)),
            _ => {
                if let Some(k) = s.strip_prefix("period-doubling:") {
                    let k: u32 = k.parse().map_err(|_| Error::UnknownSequence(s.into()))?;
                    if !(2..=256).contains(&k) {
                        return Err(Error::InvalidBase(k));
                    }
                    Ok(SequenceSpec::PeriodDoubling(k))
                } else if let Some(path) = s.strip_prefix("dfao:") {
                    Ok(SequenceSpec::Dfao(Dfao::load(path)?))
                } else {
                    Err(Error::UnknownSequence(s.into()))
                }
            }
        }
    }
}

impl fmt::Display for SequenceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SequenceSpec::ThueMorse => write!(f, "thue-morse"),
            SequenceSpec::RudinShapiro => write!(f, "rudin-shapiro"),
            SequenceSpec::PeriodDoubling(k) => write!(f, "period-doubling:{k}"),
            SequenceSpec::Dfao(d) => write!(f, "dfao({} states)", d.state_count()),
            SequenceSpec::Morphism(m) => write!(f, "morphism({m})"),
            SequenceSpec::Flipped { inner, position } => write!(f, "{inner}[flip@{position}]"),
        }
    }
}

/// Prefix of a named sequence (`thue-morse`, `rudin-shapiro`, `period-doubling:k`).
pub fn sequence_prefix(name: &str, length: usize) -> Result<Vec<u8>> {
    Ok(name.parse::<SequenceSpec>()?.prefix(length))
}
