//! Brute-force enumeration of distinct factors and unbordered factors.
//!
//! The scanned prefix starts at `max(64, 8n)` symbols and doubles until a
//! doubling contributes no new factor. If that does not happen before the
//! configured cap the query fails with [`Error::Inconclusive`] instead of
//! returning a possibly-low count.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::sequences::SequenceSpec;
use crate::words::is_unbordered;

pub const DEFAULT_MAX_PREFIX: usize = 1 << 24;

/// Environment variable overriding [`DEFAULT_MAX_PREFIX`].
pub const MAX_PREFIX_ENV: &str = "REGSEQ_MAX_PREFIX";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanConfig {
    pub max_prefix: usize,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig { max_prefix: DEFAULT_MAX_PREFIX }
    }
}

impl ScanConfig {
    /// Default config, with the cap taken from `REGSEQ_MAX_PREFIX` when set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(MAX_PREFIX_ENV) {
            Ok(v) => {
                let max_prefix = v
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("{MAX_PREFIX_ENV}={v:?} is not a size")))?;
                Ok(ScanConfig { max_prefix })
            }
            Err(_) => Ok(ScanConfig::default()),
        }
    }
}

/// Distinct factors of one length, each recorded at its first occurrence.
#[derive(Debug, Clone)]
pub struct FactorIndex {
    length: usize,
    prefix: Vec<u8>,
    positions: Vec<usize>,
    saturated: bool,
}

impl FactorIndex {
    pub fn length(&self) -> usize {
        self.length
    }

    /// First-occurrence positions, increasing.
    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn prefix_length_used(&self) -> usize {
        self.prefix.len()
    }

    pub fn saturated(&self) -> bool {
        self.saturated
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn factor_at(&self, pos: usize) -> &[u8] {
        &self.prefix[pos..pos + self.length]
    }

    /// Factors in order of first occurrence.
    pub fn factors(&self) -> impl Iterator<Item = &[u8]> + '_ {
        self.positions.iter().map(move |&p| self.factor_at(p))
    }

    pub fn to_set(&self) -> HashSet<Vec<u8>> {
        self.factors().map(<[u8]>::to_vec).collect()
    }

    /// `(position, factor)` pairs whose factor is unbordered.
    pub fn unbordered(&self) -> impl Iterator<Item = (usize, &[u8])> + '_ {
        self.positions
            .iter()
            .map(move |&p| (p, self.factor_at(p)))
            .filter(|(_, w)| is_unbordered(w).expect("length >= 1"))
    }
}

const MOD: u64 = (1 << 61) - 1;
const RADIX: u64 = 1_000_003;

fn mul_mod(a: u64, b: u64) -> u64 {
    let p = u128::from(a) * u128::from(b);
    let r = ((p >> 61) as u64) + ((p as u64) & MOD);
    if r >= MOD {
        r - MOD
    } else {
        r
    }
}

/// Incremental set of length-`n` windows keyed by a polynomial hash mod 2^61-1.
/// Hash hits are confirmed by comparing the windows themselves.
struct WindowSet {
    n: usize,
    top: u64,
    buckets: HashMap<u64, Vec<usize>>,
    positions: Vec<usize>,
}

impl WindowSet {
    fn new(n: usize) -> Self {
        let top = (1..n).fold(1u64, |acc, _| mul_mod(acc, RADIX));
        WindowSet { n, top, buckets: HashMap::new(), positions: Vec::new() }
    }

    /// Scans windows starting in `start..=text.len()-n`; returns how many were new.
    fn scan(&mut self, text: &[u8], start: usize) -> usize {
        let n = self.n;
        if text.len() < n || start + n > text.len() {
            return 0;
        }
        let sym = |i: usize| u64::from(text[i]) + 1;
        let mut h = (start..start + n).fold(0u64, |acc, i| (mul_mod(acc, RADIX) + sym(i)) % MOD);
        let mut added = 0;
        let mut pos = start;
        loop {
            let window = &text[pos..pos + n];
            let bucket = self.buckets.entry(h).or_default();
            if !bucket.iter().any(|&p| &text[p..p + n] == window) {
                bucket.push(pos);
                self.positions.push(pos);
                added += 1;
            }
            if pos + n == text.len() {
                break;
            }
            let drop = mul_mod(sym(pos), self.top);
            h = (h + MOD - drop) % MOD;
            h = (mul_mod(h, RADIX) + sym(pos + n)) % MOD;
            pos += 1;
        }
        added
    }
}

/// All distinct length-`n` factors, found in a prefix grown until saturation.
pub fn distinct_factors(seq: &SequenceSpec, n: usize, cfg: ScanConfig) -> Result<FactorIndex> {
    if n == 0 {
        return Err(Error::ZeroLength);
    }
    let mut len = 64usize.max(8 * n);
    if len > cfg.max_prefix {
        return Err(Error::Inconclusive { length: n, cap: cfg.max_prefix });
    }
    let mut set = WindowSet::new(n);
    let mut prefix = seq.prefix(len);
    set.scan(&prefix, 0);
    loop {
        let next = len * 2;
        if next > cfg.max_prefix {
            return Err(Error::Inconclusive { length: n, cap: cfg.max_prefix });
        }
        prefix = seq.prefix(next);
        // Windows starting after len - n are the ones not fully inside the old prefix.
        let added = set.scan(&prefix, len + 1 - n);
        len = next;
        if added == 0 {
            break;
        }
    }
    Ok(FactorIndex { length: n, prefix, positions: set.positions, saturated: true })
}

pub fn count_unbordered(seq: &SequenceSpec, n: usize, cfg: ScanConfig) -> Result<usize> {
    Ok(distinct_factors(seq, n, cfg)?.unbordered().count())
}

/// Positions `i` where an unbordered factor of length `n` occurs for the first time.
pub fn novel_unbordered_positions(
    seq: &SequenceSpec,
    n: usize,
    cfg: ScanConfig,
) -> Result<Vec<usize>> {
    Ok(distinct_factors(seq, n, cfg)?.unbordered().map(|(p, _)| p).collect())
}

/// The unbordered factors of length `n`, in order of first occurrence.
pub fn unbordered_factors(seq: &SequenceSpec, n: usize, cfg: ScanConfig) -> Result<Vec<Vec<u8>>> {
    Ok(distinct_factors(seq, n, cfg)?.unbordered().map(|(_, w)| w.to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn words(list: &[&str]) -> BTreeSet<Vec<u8>> {
        list.iter().map(|s| s.bytes().map(|b| b - b'0').collect()).collect()
    }

    fn cfg() -> ScanConfig {
        ScanConfig::default()
    }

    /// Distinct windows of a long fixed prefix, no hashing.
    fn naive_factors(seq: &SequenceSpec, n: usize, len: usize) -> BTreeSet<Vec<u8>> {
        seq.prefix(len).windows(n).map(<[u8]>::to_vec).collect()
    }

    #[test]
    fn distinct_factor_examples() {
        let tm = SequenceSpec::ThueMorse;
        let got: BTreeSet<_> = distinct_factors(&tm, 2, cfg()).unwrap().to_set().into_iter().collect();
        assert_eq!(got, words(&["00", "01", "10", "11"]));
        let got: BTreeSet<_> = distinct_factors(&tm, 1, cfg()).unwrap().to_set().into_iter().collect();
        assert_eq!(got, words(&["0", "1"]));
        let pd = SequenceSpec::PeriodDoubling(2);
        let got: BTreeSet<_> = distinct_factors(&pd, 2, cfg()).unwrap().to_set().into_iter().collect();
        assert_eq!(got, words(&["00", "01", "10"]));
    }

    #[test]
    fn zero_length_rejected() {
        assert!(matches!(
            distinct_factors(&SequenceSpec::ThueMorse, 0, cfg()),
            Err(Error::ZeroLength)
        ));
    }

    #[test]
    fn cap_reports_inconclusive() {
        let small = ScanConfig { max_prefix: 100 };
        assert!(matches!(
            distinct_factors(&SequenceSpec::ThueMorse, 20, small),
            Err(Error::Inconclusive { length: 20, cap: 100 })
        ));
        assert!(matches!(
            count_unbordered(&SequenceSpec::ThueMorse, 5, small),
            Err(Error::Inconclusive { .. })
        ));
    }

    #[test]
    fn first_occurrences_are_first() {
        for seq in [SequenceSpec::ThueMorse, SequenceSpec::RudinShapiro, SequenceSpec::PeriodDoubling(3)] {
            for n in [1, 3, 7, 12] {
                let idx = distinct_factors(&seq, n, cfg()).unwrap();
                assert!(idx.saturated());
                assert!(idx.positions().windows(2).all(|p| p[0] < p[1]));
                let text = seq.prefix(idx.prefix_length_used());
                for &p in idx.positions() {
                    let w = &text[p..p + n];
                    let first = text.windows(n).position(|x| x == w).unwrap();
                    assert_eq!(first, p);
                }
            }
        }
    }

    #[test]
    fn matches_naive_scan_of_long_prefix() {
        for seq in [SequenceSpec::ThueMorse, SequenceSpec::RudinShapiro, SequenceSpec::PeriodDoubling(2)] {
            for n in 1..=40 {
                let got: BTreeSet<_> =
                    distinct_factors(&seq, n, cfg()).unwrap().to_set().into_iter().collect();
                assert_eq!(got, naive_factors(&seq, n, 1 << 16), "{seq} n={n}");
            }
        }
    }

    #[test]
    fn unbordered_examples() {
        let tm = SequenceSpec::ThueMorse;
        assert_eq!(count_unbordered(&tm, 6, cfg()).unwrap(), 6);
        assert_eq!(count_unbordered(&tm, 7, cfg()).unwrap(), 0);
        assert_eq!(count_unbordered(&tm, 24, cfg()).unwrap(), 24);
        assert_eq!(novel_unbordered_positions(&tm, 1, cfg()).unwrap(), vec![0, 1]);
        assert!(novel_unbordered_positions(&tm, 7, cfg()).unwrap().is_empty());
        assert_eq!(novel_unbordered_positions(&tm, 3, cfg()).unwrap().len(), 4);
        assert_eq!(unbordered_factors(&tm, 4, cfg()).unwrap().len(), 2);

        let pd = SequenceSpec::PeriodDoubling(2);
        let got: BTreeSet<_> = unbordered_factors(&pd, 3, cfg()).unwrap().into_iter().collect();
        assert_eq!(got, words(&["100", "001"]));
        let got: BTreeSet<_> = unbordered_factors(&pd, 1, cfg()).unwrap().into_iter().collect();
        assert_eq!(got, words(&["0", "1"]));
    }

    #[test]
    fn query_sizes_agree() {
        for seq in [SequenceSpec::ThueMorse, SequenceSpec::RudinShapiro] {
            for n in 1..=30 {
                let c = count_unbordered(&seq, n, cfg()).unwrap();
                assert_eq!(novel_unbordered_positions(&seq, n, cfg()).unwrap().len(), c);
                assert_eq!(unbordered_factors(&seq, n, cfg()).unwrap().len(), c);
            }
        }
    }

    #[test]
    fn period_doubling_factors_closed_under_reversal() {
        for k in [2, 3] {
            let seq = SequenceSpec::PeriodDoubling(k);
            for n in 1..=40 {
                let set = distinct_factors(&seq, n, cfg()).unwrap().to_set();
                for w in &set {
                    let r: Vec<u8> = w.iter().rev().copied().collect();
                    assert!(set.contains(&r), "k={k} {w:?}");
                }
            }
        }
    }

    #[test]
    fn period_doubling_prefix_reversal_identity() {
        for k in [2u64, 3, 4] {
            let seq = SequenceSpec::PeriodDoubling(k as u32);
            for i in 1..=6u32 {
                let ki = k.pow(i) as usize;
                let p = seq.prefix(2 * ki);
                let mut head = p[..ki].to_vec();
                head.reverse();
                assert_eq!(head, p[ki - 1..=2 * ki - 2], "k={k} i={i}");
            }
        }
    }

    #[test]
    fn saturation_is_stable_at_four_times_the_prefix() {
        for (seq, n) in [
            (SequenceSpec::ThueMorse, 10),
            (SequenceSpec::ThueMorse, 37),
            (SequenceSpec::RudinShapiro, 25),
            (SequenceSpec::PeriodDoubling(5), 18),
        ] {
            let idx = distinct_factors(&seq, n, cfg()).unwrap();
            let again = naive_factors(&seq, n, 2 * idx.prefix_length_used());
            let got: BTreeSet<_> = idx.to_set().into_iter().collect();
            assert_eq!(got, again, "{seq} n={n}");
        }
    }
}
