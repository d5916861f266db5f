//! Linear representations `(v, M_0, …, M_{k-1}, w)` of k-regular sequences
//! over exact rationals.

pub mod linalg;

use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::words::to_base;
use linalg::{dot, row_times, times_col, Span};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"`, `"-7"` or `"7"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// JSON form of a rational: an integer or a `"p/q"` string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RatRepr {
    Int(i64),
    Str(String),
}

impl RatRepr {
    pub fn to_rational(&self) -> Result<Rational> {
        match self {
            RatRepr::Int(n) => Ok(rat(*n)),
            RatRepr::Str(s) => parse_rational(s),
        }
    }
}

impl From<&Rational> for RatRepr {
    fn from(x: &Rational) -> Self {
        match (x.is_integer(), x.numer().to_i64()) {
            (true, Some(n)) => RatRepr::Int(n),
            _ => RatRepr::Str(x.to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinRep {
    k: u32,
    v: Vec<Rational>,
    matrices: Vec<Vec<Vec<Rational>>>,
    w: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
struct LinRepFile {
    k: u32,
    dim: usize,
    v: Vec<RatRepr>,
    w: Vec<RatRepr>,
    matrices: Vec<Vec<Vec<RatRepr>>>,
}

impl LinRep {
    pub fn new(
        k: u32,
        v: Vec<Rational>,
        matrices: Vec<Vec<Vec<Rational>>>,
        w: Vec<Rational>,
    ) -> Result<Self> {
        if !(2..=256).contains(&k) {
            return Err(Error::InvalidBase(k));
        }
        let d = v.len();
        if w.len() != d {
            return Err(Error::Dimension(format!("v has {d} entries but w has {}", w.len())));
        }
        if matrices.len() != k as usize {
            return Err(Error::Dimension(format!(
                "{} matrices for base {k}",
                matrices.len()
            )));
        }
        for (a, m) in matrices.iter().enumerate() {
            if m.len() != d || m.iter().any(|row| row.len() != d) {
                return Err(Error::Dimension(format!("M_{a} is not {d}x{d}")));
            }
        }
        Ok(LinRep { k, v, matrices, w })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let f: LinRepFile = serde_json::from_str(text)?;
        let vec = |xs: &[RatRepr]| xs.iter().map(RatRepr::to_rational).collect::<Result<Vec<_>>>();
        let v = vec(&f.v)?;
        if v.len() != f.dim {
            return Err(Error::Dimension(format!("dim is {} but v has {} entries", f.dim, v.len())));
        }
        let matrices = f
            .matrices
            .iter()
            .map(|m| m.iter().map(|row| vec(row)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        LinRep::new(f.k, v, matrices, vec(&f.w)?)
    }

    pub fn to_json(&self) -> String {
        let vec = |xs: &[Rational]| xs.iter().map(RatRepr::from).collect::<Vec<_>>();
        let f = LinRepFile {
            k: self.k,
            dim: self.dim(),
            v: vec(&self.v),
            w: vec(&self.w),
            matrices: self
                .matrices
                .iter()
                .map(|m| m.iter().map(|row| vec(row)).collect())
                .collect(),
        };
        serde_json::to_string_pretty(&f).expect("serializable")
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|source| Error::Io { path: path.to_owned(), source })?;
        LinRep::from_json(&text)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_json() + "\n")
            .map_err(|source| Error::Io { path: path.to_owned(), source })
    }

    pub fn base(&self) -> u32 {
        self.k
    }

    pub fn dim(&self) -> usize {
        self.v.len()
    }

    pub fn v(&self) -> &[Rational] {
        &self.v
    }

    pub fn w(&self) -> &[Rational] {
        &self.w
    }

    pub fn matrix(&self, digit: u8) -> &[Vec<Rational>] {
        &self.matrices[digit as usize]
    }

    pub fn matrices(&self) -> &[Vec<Vec<Rational>>] {
        &self.matrices
    }

    /// Copy with one matrix entry replaced.
    pub fn with_entry(&self, digit: u8, row: usize, col: usize, value: Rational) -> Self {
        let mut out = self.clone();
        out.matrices[digit as usize][row][col] = value;
        out
    }

    /// `v · M_y` for a literal digit string.
    pub fn row_vector(&self, digits: &[u8]) -> Vec<Rational> {
        digits
            .iter()
            .fold(self.v.clone(), |acc, &d| row_times(&acc, self.matrix(d)))
    }

    /// `M_y · w` for a literal digit string.
    pub fn column_vector(&self, digits: &[u8]) -> Vec<Rational> {
        digits
            .iter()
            .rev()
            .fold(self.w.clone(), |acc, &d| times_col(self.matrix(d), &acc))
    }

    /// `v · M_y · w` over the literal digits (no canonicalization).
    pub fn eval_word(&self, digits: &[u8]) -> Result<Rational> {
        if let Some(&d) = digits.iter().find(|&&d| u32::from(d) >= self.k) {
            return Err(Error::InvalidDigit { digit: d.into(), base: self.k });
        }
        Ok(dot(&self.row_vector(digits), &self.w))
    }

    /// The sequence value at `n ≥ 1`.
    pub fn eval(&self, n: u64) -> Result<Rational> {
        if n == 0 {
            return Err(Error::OutOfDomain);
        }
        self.eval_word(to_base(n, self.k)?.digits())
    }

    /// Boolean reachability bound on the support of `v · M_x` over canonical `x ≠ ε`.
    pub fn zero_pattern(&self) -> ZeroPattern {
        let d = self.dim();
        let k = self.k as usize;
        let edge = |i: usize, j: usize, from: usize| {
            (from..k).any(|a| !self.matrices[a][i][j].is_zero())
        };
        let mut support = vec![false; d];
        for i in (0..d).filter(|&i| !self.v[i].is_zero()) {
            for (j, s) in support.iter_mut().enumerate() {
                if !*s && edge(i, j, 1) {
                    *s = true;
                }
            }
        }
        let mut stack: Vec<usize> = (0..d).filter(|&i| support[i]).collect();
        while let Some(i) = stack.pop() {
            for j in 0..d {
                if !support[j] && edge(i, j, 0) {
                    support[j] = true;
                    stack.push(j);
                }
            }
        }
        ZeroPattern { support }
    }

    /// Span of `{v · M_x : x canonical, |x| ≥ depth}`, closed under every `M_a`.
    pub fn reachable_subspace(&self, depth: usize) -> ReachableSubspace {
        assert!(depth >= 1, "depth must be at least 1");
        let d = self.dim();
        let mut level = Span::new(d);
        for a in 1..self.k as u8 {
            level.insert(&row_times(&self.v, self.matrix(a)));
        }
        for _ in 1..depth {
            let mut next = Span::new(d);
            for b in level.basis() {
                for a in 0..self.k as u8 {
                    next.insert(&row_times(b, self.matrix(a)));
                }
            }
            level = next;
        }
        let mut span = level;
        let mut i = 0;
        while i < span.rank() {
            let b = span.basis()[i].clone();
            for a in 0..self.k as u8 {
                span.insert(&row_times(&b, self.matrix(a)));
            }
            i += 1;
        }
        ReachableSubspace { depth, span }
    }
}

/// Coordinates that can be nonzero in `v · M_x` for canonical nonempty `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroPattern {
    pub support: Vec<bool>,
}

impl ZeroPattern {
    pub fn count(&self) -> usize {
        self.support.iter().filter(|&&s| s).count()
    }
}

#[derive(Debug, Clone)]
pub struct ReachableSubspace {
    depth: usize,
    span: Span,
}

impl ReachableSubspace {
    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        self.span.basis()
    }

    pub fn rank(&self) -> usize {
        self.span.rank()
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.span.contains(v)
    }

    /// Values `b · col` for every basis row `b`.
    pub fn project(&self, col: &[Rational]) -> Vec<Rational> {
        self.basis().iter().map(|b| dot(b, col)).collect()
    }
}

/// The 23-dimensional representation counting unbordered factors of Thue-Morse.
pub fn tm_fixture() -> LinRep {
    LinRep::from_json(include_str!("../../fixtures/tm23.json")).expect("bundled fixture is valid")
}

/// Two-dimensional worked example: `v = [6, 1]`, `w = [2, 4]ᵀ`.
pub fn example_fixture() -> LinRep {
    LinRep::from_json(include_str!("../../fixtures/example2x2.json"))
        .expect("bundled fixture is valid")
}

/// Representation where every digit matrix is the identity.
pub fn identity_rep(k: u32, v: Vec<Rational>, w: Vec<Rational>) -> Result<LinRep> {
    let d = v.len();
    let id: Vec<Vec<Rational>> = (0..d)
        .map(|i| (0..d).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
        .collect();
    LinRep::new(k, v, vec![id; k as usize], w)
}
