//! Linear relations among kernel subsequences `n ↦ g(kᵗ·n + r)`.
//!
//! A kernel term is identified with the column vector `M_y · w`, where `y` is
//! the t-digit representation of `r`: for `n ≥ 1`,
//! `g(kᵗ·n + r) = (v · M_(n)) · (M_y · w)`. An identity therefore holds for
//! every `n ≥ 1` as soon as its defect vector is annihilated by every
//! reachable row vector `v · M_(n)`; the remaining small `n` are checked
//! numerically.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::path::Path;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linrep::linalg::{dot, Span};
use crate::linrep::{parse_rational, LinRep, RatRepr, Rational, ReachableSubspace, ZeroPattern};
use crate::words::Word;

/// The subsequence `n ↦ g(k^|y|·n + value(y))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KernelTerm {
    // Field order gives length-lexicographic `Ord`.
    len: usize,
    digits: Vec<u8>,
    base: u32,
}

impl KernelTerm {
    pub fn new(word: Word) -> Self {
        let base = word.base();
        let digits = word.into_digits();
        KernelTerm { len: digits.len(), digits, base }
    }

    pub fn parse(s: &str, k: u32) -> Result<Self> {
        Ok(KernelTerm::new(Word::parse(s, k)?))
    }

    pub fn empty(k: u32) -> Self {
        KernelTerm { len: 0, digits: Vec::new(), base: k }
    }

    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// `kᵗ`.
    pub fn modulus(&self) -> u64 {
        u64::from(self.base).pow(self.len as u32)
    }

    /// `r`.
    pub fn residue(&self) -> u64 {
        self.digits.iter().fold(0, |acc, &d| acc * u64::from(self.base) + u64::from(d))
    }

    /// `kᵗ·n + r`.
    pub fn arg(&self, n: u64) -> u64 {
        self.modulus() * n + self.residue()
    }

    /// Prepends a digit: one more low-order digit of refinement.
    pub fn refine(&self, digit: u8) -> Self {
        let mut digits = Vec::with_capacity(self.len + 1);
        digits.push(digit);
        digits.extend_from_slice(&self.digits);
        KernelTerm { len: self.len + 1, digits, base: self.base }
    }

    /// The `m` with `arg(m) = n`, if `n` lies in this residue class.
    pub fn matches(&self, n: u64) -> Option<u64> {
        let q = self.modulus();
        (n % q == self.residue()).then(|| n / q)
    }

    pub fn word_string(&self) -> String {
        self.digits.iter().map(|d| d.to_string()).collect()
    }
}

impl fmt::Display for KernelTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.len, self.residue()) {
            (0, _) => write!(f, "n"),
            (_, 0) => write!(f, "{}n", self.modulus()),
            (_, r) => write!(f, "{}n+{r}", self.modulus()),
        }
    }
}

/// `g(target) = Σ cᵢ·g(termᵢ)` claimed for all `n ≥ min_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Identity {
    pub target: KernelTerm,
    pub terms: Vec<(Rational, KernelTerm)>,
    pub min_n: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct IdentityFile {
    target: String,
    terms: Vec<TermFile>,
    min_n: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct TermFile {
    coeff: RatRepr,
    word: String,
}

impl Identity {
    pub fn new(target: KernelTerm, terms: Vec<(Rational, KernelTerm)>, min_n: u64) -> Result<Self> {
        if terms.iter().any(|(_, t)| *t == target) {
            return Err(Error::Parse(format!("target {target} appears on the right-hand side")));
        }
        if terms.iter().any(|(_, t)| t.base != target.base) {
            return Err(Error::Parse("terms use different bases".into()));
        }
        Ok(Identity { target, terms, min_n })
    }

    /// Builds an identity from `(coefficient, word)` pairs, e.g. `("0000", [(-2, "00"), (3, "000")])`.
    pub fn from_words(k: u32, target: &str, terms: &[(i64, &str)], min_n: u64) -> Result<Self> {
        let terms = terms
            .iter()
            .map(|&(c, w)| Ok((crate::linrep::rat(c), KernelTerm::parse(w, k)?)))
            .collect::<Result<Vec<_>>>()?;
        Identity::new(KernelTerm::parse(target, k)?, terms, min_n)
    }

    pub fn base(&self) -> u32 {
        self.target.base
    }

    fn from_file(f: IdentityFile, k: u32) -> Result<Self> {
        let terms = f
            .terms
            .iter()
            .map(|t| Ok((t.coeff.to_rational()?, KernelTerm::parse(&t.word, k)?)))
            .collect::<Result<Vec<_>>>()?;
        Identity::new(KernelTerm::parse(&f.target, k)?, terms, f.min_n)
    }

    fn to_file(&self) -> IdentityFile {
        IdentityFile {
            target: self.target.word_string(),
            terms: self
                .terms
                .iter()
                .map(|(c, t)| TermFile { coeff: RatRepr::Str(c.to_string()), word: t.word_string() })
                .collect(),
            min_n: self.min_n,
        }
    }

    pub fn from_json(text: &str, k: u32) -> Result<Self> {
        Identity::from_file(serde_json::from_str(text)?, k)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("serializable")
    }

    pub fn load(path: impl AsRef<Path>, k: u32) -> Result<Self> {
        Identity::from_json(&read(path.as_ref())?, k)
    }

    /// Human-readable form, e.g. `f(16n) = -2 f(4n) + 3 f(8n)  [n >= 0]`.
    pub fn render(&self, name: &str) -> String {
        let mut rhs = String::new();
        for (i, (c, t)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            match (i, c.is_negative()) {
                (0, false) => {}
                (0, true) => rhs.push('-'),
                _ => rhs.push_str(&format!(" {sign} ")),
            }
            if !mag.is_one() {
                rhs.push_str(&format!("{mag} "));
            }
            rhs.push_str(&format!("{name}({t})"));
        }
        if rhs.is_empty() {
            rhs.push('0');
        }
        format!("{name}({}) = {rhs}  [n >= {}]", self.target, self.min_n)
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_owned(), source })
}

/// Declared values of the sequence at specific arguments.
pub type BaseValues = BTreeMap<u64, Rational>;

/// Column vector `M_y · w` representing the kernel term.
pub fn functional(r: &LinRep, y: &KernelTerm) -> Vec<Rational> {
    r.column_vector(y.digits())
}

/// `functional(target) - Σ cᵢ·functional(termᵢ)`.
pub fn defect(r: &LinRep, id: &Identity) -> Vec<Rational> {
    let mut d = functional(r, &id.target);
    for (c, t) in &id.terms {
        for (x, y) in d.iter_mut().zip(functional(r, t)) {
            *x -= c * y;
        }
    }
    d
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    FullVector,
    ZeroPattern,
    Subspace(usize),
    Numeric,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::FullVector => write!(f, "full-vector"),
            Mode::ZeroPattern => write!(f, "zero-pattern"),
            Mode::Subspace(l) => write!(f, "subspace({l})"),
            Mode::Numeric => write!(f, "numeric"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Verified,
    /// A numeric counterexample exists at or above `min_n`.
    Refuted,
    /// No symbolic mode succeeded and no counterexample was found.
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub n: u64,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub identity: String,
    pub mode: Mode,
    pub verdict: Verdict,
    /// Threshold from which the symbolic argument applies.
    pub valid_from: u64,
    /// Half-open range of `n` checked by direct evaluation.
    pub numeric_checked: (u64, u64),
    pub counterexample: Option<Counterexample>,
    pub note: Option<String>,
}

impl VerificationReport {
    pub fn is_verified(&self) -> bool {
        self.verdict == Verdict::Verified
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    /// Values `n ≥ n₀` additionally checked by direct evaluation.
    pub numeric_extent: u64,
    /// Largest subspace depth tried before giving up.
    pub max_depth: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { numeric_extent: 64, max_depth: 8 }
    }
}

/// Checks identities against one representation, caching the zero pattern
/// and reachable subspaces.
pub struct Verifier<'a> {
    rep: &'a LinRep,
    base: BaseValues,
    zero_pattern: Option<ZeroPattern>,
    subspaces: HashMap<usize, ReachableSubspace>,
}

impl<'a> Verifier<'a> {
    pub fn new(rep: &'a LinRep, base: BaseValues) -> Self {
        Verifier { rep, base, zero_pattern: None, subspaces: HashMap::new() }
    }

    pub fn rep(&self) -> &LinRep {
        self.rep
    }

    /// `g(m)`: a declared base value if present, else matrix evaluation.
    pub fn value(&self, m: u64) -> Result<Rational> {
        match self.base.get(&m) {
            Some(x) => Ok(x.clone()),
            None => self.rep.eval(m),
        }
    }

    fn subspace(&mut self, depth: usize) -> &ReachableSubspace {
        let rep = self.rep;
        self.subspaces.entry(depth).or_insert_with(|| rep.reachable_subspace(depth))
    }

    /// Whether the defect vanishes under `mode`, and the resulting threshold.
    fn symbolic_holds(&mut self, id: &Identity, mode: Mode) -> Option<u64> {
        let d = defect(self.rep, id);
        let k = u64::from(self.rep.base());
        match mode {
            Mode::FullVector => d.iter().all(Zero::is_zero).then_some(1),
            Mode::ZeroPattern => {
                let rep = self.rep;
                let zp = self.zero_pattern.get_or_insert_with(|| rep.zero_pattern());
                d.iter().zip(&zp.support).all(|(x, &s)| !s || x.is_zero()).then_some(1)
            }
            Mode::Subspace(l) => {
                let l = l.max(1);
                let sub = self.subspace(l);
                sub.basis().iter().all(|b| dot(b, &d).is_zero()).then(|| k.pow(l as u32 - 1))
            }
            Mode::Numeric => None,
        }
    }

    /// Compares both sides at `n`; `Ok(None)` when they agree.
    pub fn check_at(&self, id: &Identity, n: u64) -> Result<Option<Counterexample>> {
        let lhs = self.value(id.target.arg(n))?;
        let mut rhs = Rational::zero();
        for (c, t) in &id.terms {
            rhs += c * self.value(t.arg(n))?;
        }
        Ok((lhs != rhs).then(|| Counterexample { n, lhs: lhs.to_string(), rhs: rhs.to_string() }))
    }

    fn first_failure(&self, id: &Identity, from: u64, to: u64) -> Result<Option<Counterexample>> {
        for n in from..to {
            if let Some(c) = self.check_at(id, n)? {
                return Ok(Some(c));
            }
        }
        Ok(None)
    }

    /// Symbolic check in one mode plus direct checks of `min_n ≤ n < n₀`.
    pub fn verify_symbolic(&mut self, id: &Identity, mode: Mode) -> VerificationReport {
        let mut report = VerificationReport {
            identity: id.render("f"),
            mode,
            verdict: Verdict::Inconclusive,
            valid_from: 0,
            numeric_checked: (id.min_n, id.min_n),
            counterexample: None,
            note: None,
        };
        let Some(n0) = self.symbolic_holds(id, mode) else {
            report.note = Some(format!("defect does not vanish in {mode} mode"));
            return report;
        };
        report.valid_from = n0;
        let hi = n0.max(id.min_n);
        report.numeric_checked = (id.min_n, hi);
        match self.first_failure(id, id.min_n, hi) {
            Ok(None) => report.verdict = Verdict::Verified,
            Ok(Some(c)) => {
                report.verdict = Verdict::Refuted;
                report.counterexample = Some(c);
            }
            Err(e) => report.note = Some(e.to_string()),
        }
        report
    }

    /// Tries full-vector, zero-pattern, then subspace depths `1..=max_depth`,
    /// completing the first symbolic success numerically and spot-checking
    /// `numeric_extent` further values.
    pub fn verify(&mut self, id: &Identity, opts: VerifyOptions) -> VerificationReport {
        let modes = [Mode::FullVector, Mode::ZeroPattern]
            .into_iter()
            .chain((1..=opts.max_depth).map(Mode::Subspace));
        for mode in modes {
            let mut report = self.verify_symbolic(id, mode);
            if report.valid_from == 0 {
                continue;
            }
            if report.is_verified() {
                let lo = report.numeric_checked.1;
                let hi = lo + opts.numeric_extent;
                match self.first_failure(id, lo, hi) {
                    Ok(None) => report.numeric_checked.1 = hi,
                    Ok(Some(c)) => {
                        // Unreachable for a sound representation.
                        report.verdict = Verdict::Refuted;
                        report.note = Some("symbolic check contradicted by evaluation".into());
                        report.counterexample = Some(c);
                    }
                    Err(e) => {
                        report.verdict = Verdict::Inconclusive;
                        report.note = Some(e.to_string());
                    }
                }
            }
            return report;
        }
        let hi = id.min_n + opts.numeric_extent.max(1);
        let mut report = VerificationReport {
            identity: id.render("f"),
            mode: Mode::Numeric,
            verdict: Verdict::Inconclusive,
            valid_from: 0,
            numeric_checked: (id.min_n, hi),
            counterexample: None,
            note: Some(format!("no symbolic mode up to subspace({}) succeeded", opts.max_depth)),
        };
        match self.first_failure(id, id.min_n, hi) {
            Ok(Some(c)) => {
                report.verdict = Verdict::Refuted;
                report.counterexample = Some(c);
            }
            Ok(None) => {}
            Err(e) => report.note = Some(e.to_string()),
        }
        report
    }
}

/// Convenience wrapper around [`Verifier::verify`].
pub fn verify(
    r: &LinRep,
    id: &Identity,
    base: &BaseValues,
    opts: VerifyOptions,
) -> VerificationReport {
    Verifier::new(r, base.clone()).verify(id, opts)
}

pub fn verify_symbolic(r: &LinRep, id: &Identity, mode: Mode, base: &BaseValues) -> VerificationReport {
    Verifier::new(r, base.clone()).verify_symbolic(id, mode)
}

/// A closed system of identities plus base values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecurrenceSystem {
    pub base: u32,
    pub basis: Vec<KernelTerm>,
    pub identities: Vec<Identity>,
    pub base_values: BaseValues,
    /// False when discovery stopped at its length limit before closing.
    pub closed: bool,
}

#[derive(Serialize, Deserialize)]
struct SystemFile {
    #[serde(default = "default_k")]
    k: u32,
    #[serde(default)]
    basis: Vec<String>,
    identities: Vec<IdentityFile>,
    base_values: BTreeMap<String, RatRepr>,
}

fn default_k() -> u32 {
    2
}

impl RecurrenceSystem {
    pub fn from_json(text: &str) -> Result<Self> {
        let f: SystemFile = serde_json::from_str(text)?;
        let basis = f.basis.iter().map(|w| KernelTerm::parse(w, f.k)).collect::<Result<_>>()?;
        let identities = f
            .identities
            .into_iter()
            .map(|i| Identity::from_file(i, f.k))
            .collect::<Result<_>>()?;
        let base_values = f
            .base_values
            .iter()
            .map(|(n, x)| {
                let n = n.parse().map_err(|_| Error::Parse(format!("bad base index {n:?}")))?;
                Ok((n, x.to_rational()?))
            })
            .collect::<Result<_>>()?;
        Ok(RecurrenceSystem { base: f.k, basis, identities, base_values, closed: true })
    }

    pub fn to_json(&self) -> String {
        let f = SystemFile {
            k: self.base,
            basis: self.basis.iter().map(KernelTerm::word_string).collect(),
            identities: self.identities.iter().map(Identity::to_file).collect(),
            base_values: self
                .base_values
                .iter()
                .map(|(n, x)| (n.to_string(), RatRepr::Str(x.to_string())))
                .collect(),
        };
        serde_json::to_string_pretty(&f).expect("serializable")
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        RecurrenceSystem::from_json(&read(path.as_ref())?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_json() + "\n")
            .map_err(|source| Error::Io { path: path.to_owned(), source })
    }

    /// The identity used at `n`: the first whose residue class contains `n` above its threshold.
    fn rule_for(&self, n: u64) -> Option<(&Identity, u64)> {
        self.identities.iter().find_map(|id| {
            id.target.matches(n).filter(|&m| m >= id.min_n).map(|m| (id, m))
        })
    }

    pub fn render(&self, name: &str) -> String {
        let mut out = String::new();
        for id in &self.identities {
            out.push_str(&id.render(name));
            out.push('\n');
        }
        for (n, x) in &self.base_values {
            out.push_str(&format!("{name}({n}) = {x}\n"));
        }
        out
    }
}

/// Evaluates `g(n)` from base values and identities, memoized top-down.
pub fn evaluate_by_recurrences(s: &RecurrenceSystem, n: u64) -> Result<Rational> {
    let mut memo = HashMap::new();
    let mut active = HashSet::new();
    eval_rec(s, n, &mut memo, &mut active)
}

fn eval_rec(
    s: &RecurrenceSystem,
    n: u64,
    memo: &mut HashMap<u64, Rational>,
    active: &mut HashSet<u64>,
) -> Result<Rational> {
    if let Some(x) = s.base_values.get(&n).or_else(|| memo.get(&n)) {
        return Ok(x.clone());
    }
    let (id, m) = s.rule_for(n).ok_or(Error::Incomplete(n))?;
    if !active.insert(n) {
        return Err(Error::Incomplete(n));
    }
    let mut total = Rational::zero();
    for (c, t) in &id.terms {
        total += c * eval_rec(s, t.arg(m), memo, active)?;
    }
    active.remove(&n);
    memo.insert(n, total.clone());
    Ok(total)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompletenessReport {
    pub modulus: u64,
    /// Residues modulo `modulus` matched by no identity target.
    pub uncovered_residues: Vec<u64>,
    /// Arguments below some identity's threshold with neither a base value nor another rule.
    pub threshold_gaps: Vec<u64>,
    /// Identities whose right-hand side is not strictly smaller than the target.
    pub non_decreasing: Vec<String>,
}

impl CompletenessReport {
    pub fn is_complete(&self) -> bool {
        self.uncovered_residues.is_empty()
            && self.threshold_gaps.is_empty()
            && self.non_decreasing.is_empty()
    }
}

pub fn check_completeness(s: &RecurrenceSystem) -> CompletenessReport {
    let k = u64::from(s.base);
    let t_max = s.identities.iter().map(|id| id.target.len()).max().unwrap_or(0);
    let modulus = k.pow(t_max as u32);
    let uncovered_residues = (0..modulus)
        .filter(|&rho| !s.identities.iter().any(|id| id.target.matches(rho).is_some()))
        .collect();

    let mut threshold_gaps = Vec::new();
    for id in &s.identities {
        for m in 0..id.min_n {
            let n = id.target.arg(m);
            if !s.base_values.contains_key(&n) && s.rule_for(n).is_none() {
                threshold_gaps.push(n);
            }
        }
    }
    threshold_gaps.sort_unstable();
    threshold_gaps.dedup();

    let mut non_decreasing = Vec::new();
    for id in &s.identities {
        let mut m0 = id.min_n;
        while s.base_values.contains_key(&id.target.arg(m0)) {
            m0 += 1;
        }
        let (t, r) = (id.target.len(), id.target.residue());
        let ok = id.terms.iter().all(|(_, term)| {
            let (t2, r2) = (term.len(), term.residue());
            match t2.cmp(&t) {
                std::cmp::Ordering::Greater => false,
                std::cmp::Ordering::Equal => r2 < r,
                // the gap widens with m, so checking m0 suffices
                std::cmp::Ordering::Less => term.arg(m0) < id.target.arg(m0),
            }
        });
        if !ok {
            non_decreasing.push(id.render("f"));
        }
    }
    CompletenessReport { modulus, uncovered_residues, threshold_gaps, non_decreasing }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiscoverMode {
    FullVector,
    Subspace(usize),
}

impl DiscoverMode {
    /// Smallest `n` for which discovered identities hold.
    pub fn threshold(self, k: u32) -> u64 {
        match self {
            DiscoverMode::FullVector => 1,
            DiscoverMode::Subspace(l) => u64::from(k).pow(l.max(1) as u32 - 1),
        }
    }
}

/// Breadth-first search over kernel terms in length-lexicographic order.
///
/// Independent terms join the basis and are refined by prepending each digit;
/// dependent terms yield an identity over the basis and are not refined.
pub fn discover(r: &LinRep, mode: DiscoverMode, max_len: usize) -> RecurrenceSystem {
    let k = r.base();
    let subspace = match mode {
        DiscoverMode::Subspace(l) => Some(r.reachable_subspace(l.max(1))),
        DiscoverMode::FullVector => None,
    };
    let project = |y: &KernelTerm| {
        let f = functional(r, y);
        match &subspace {
            Some(s) => s.project(&f),
            None => f,
        }
    };
    let dim = subspace.as_ref().map_or(r.dim(), ReachableSubspace::rank);
    let threshold = mode.threshold(k);

    let mut span = Span::new(dim);
    let mut basis: Vec<KernelTerm> = Vec::new();
    let mut identities = Vec::new();
    let mut level = vec![KernelTerm::empty(k)];
    let mut closed = true;
    while !level.is_empty() {
        level.sort();
        if level[0].len() > max_len {
            closed = false;
            break;
        }
        let mut next = Vec::new();
        for y in level {
            let p = project(&y);
            match span.express(&p) {
                Some(coeffs) => {
                    let terms = coeffs
                        .into_iter()
                        .zip(&basis)
                        .filter(|(c, _)| !c.is_zero())
                        .map(|(c, t)| (c, t.clone()))
                        .collect();
                    identities.push(Identity { target: y, terms, min_n: threshold });
                }
                None => {
                    span.insert(&p);
                    next.extend((0..k as u8).map(|b| y.refine(b)));
                    basis.push(y);
                }
            }
        }
        level = next;
    }

    let t_max = identities.iter().map(|id| id.target.len()).max().unwrap_or(0);
    let bound = u64::from(k).pow(t_max as u32) * threshold;
    let mut base_values = BaseValues::new();
    base_values.insert(0, crate::linrep::linalg::dot(r.v(), r.w()));
    for n in 1..bound {
        base_values.insert(n, r.eval(n).expect("n >= 1"));
    }
    RecurrenceSystem { base: k, basis, identities, base_values, closed }
}

/// The nine-identity system for unbordered factors of Thue-Morse, with
/// `f(0) = 1, f(1) = 2, f(2) = 2`.
pub fn tm_conjecture_system() -> RecurrenceSystem {
    RecurrenceSystem::from_json(include_str!("../fixtures/tm_conjecture.json"))
        .expect("bundled fixture is valid")
}

/// Identities used for the growth bound on the Thue-Morse count, with their thresholds.
pub fn tm_growth_identities() -> Vec<Identity> {
    tm_growth_system().identities
}

fn tm_growth_system() -> RecurrenceSystem {
    RecurrenceSystem::from_json(include_str!("../fixtures/tm_growth.json"))
        .expect("bundled fixture is valid")
}

/// Parses `n=value` pairs.
pub fn parse_base_values<'a>(items: impl IntoIterator<Item = &'a str>) -> Result<BaseValues> {
    items
        .into_iter()
        .map(|s| {
            let (n, x) = s
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected n=value, got {s:?}")))?;
            let n = n.trim().parse().map_err(|_| Error::Parse(format!("bad index in {s:?}")))?;
            Ok((n, parse_rational(x)?))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linrep::{example_fixture, identity_rep, rat, tm_fixture};

    fn q(p: i64, d: i64) -> Rational {
        Rational::new(p.into(), d.into())
    }

    fn tm_base() -> BaseValues {
        [(0, rat(1)), (1, rat(2)), (2, rat(2))].into_iter().collect()
    }

    #[test]
    fn kernel_term_arithmetic() {
        let t = KernelTerm::parse("0111", 2).unwrap();
        assert_eq!((t.modulus(), t.residue(), t.arg(1)), (16, 7, 23));
        assert_eq!(t.to_string(), "16n+7");
        assert_eq!(KernelTerm::parse("", 2).unwrap().to_string(), "n");
        assert_eq!(KernelTerm::parse("000", 2).unwrap().to_string(), "8n");
        assert_eq!(t.matches(39), Some(2));
        assert_eq!(t.matches(8), None);
        assert_eq!(KernelTerm::parse("1", 2).unwrap().refine(0).word_string(), "01");
        let mut terms: Vec<_> = ["10", "1", "00", ""].iter().map(|w| KernelTerm::parse(w, 2).unwrap()).collect();
        terms.sort();
        let sorted: Vec<_> = terms.iter().map(KernelTerm::word_string).collect();
        assert_eq!(sorted, ["", "1", "00", "10"]);
    }

    #[test]
    fn functional_examples() {
        let ex = example_fixture();
        let term = |w: &str| KernelTerm::parse(w, 2).unwrap();
        assert_eq!(functional(&ex, &term("0")), vec![rat(-2), rat(18)]);
        assert_eq!(functional(&ex, &term("")), vec![rat(2), rat(4)]);
        // The printed worked example has -8a - 2b here; exact arithmetic gives 8a - 2b.
        assert_eq!(functional(&ex, &term("1")), vec![rat(8), rat(-2)]);
        assert_eq!(functional(&ex, &term("00")), vec![rat(24), rat(70)]);
        assert_eq!(functional(&ex, &term("10")), vec![rat(36), rat(24)]);
    }

    #[test]
    fn identity_rejects_target_on_rhs() {
        assert!(Identity::from_words(2, "00", &[(1, "00")], 0).is_err());
    }

    #[test]
    fn identity_json_round_trip() {
        let text = r#"{ "target": "0000", "terms": [ {"coeff": "-2", "word": "00"}, {"coeff": "3", "word": "000"} ], "min_n": 0 }"#;
        let id = Identity::from_json(text, 2).unwrap();
        assert_eq!(id, Identity::from_words(2, "0000", &[(-2, "00"), (3, "000")], 0).unwrap());
        assert_eq!(Identity::from_json(&id.to_json(), 2).unwrap(), id);
        assert_eq!(id.render("f"), "f(16n) = -2 f(4n) + 3 f(8n)  [n >= 0]");
    }

    #[test]
    fn rendering_signs_and_fractions() {
        let id = Identity::new(
            KernelTerm::parse("1", 2).unwrap(),
            vec![(q(35, 11), KernelTerm::parse("", 2).unwrap()), (q(-9, 11), KernelTerm::parse("0", 2).unwrap())],
            1,
        )
        .unwrap();
        assert_eq!(id.render("g"), "g(2n+1) = 35/11 g(n) - 9/11 g(2n)  [n >= 1]");
        let id = Identity::from_words(2, "011", &[(2, "0"), (-1, "1")], 0).unwrap();
        assert_eq!(id.render("f"), "f(8n+3) = 2 f(2n) - f(2n+1)  [n >= 0]");
        let id = Identity::from_words(2, "011", &[(-1, "1")], 0).unwrap();
        assert_eq!(id.render("f"), "f(8n+3) = -f(2n+1)  [n >= 0]");
    }

    #[test]
    fn full_vector_example_identity() {
        let ex = example_fixture();
        let id = Identity::from_words(2, "00", &[(13, ""), (1, "0")], 1).unwrap();
        let rep = verify_symbolic(&ex, &id, Mode::FullVector, &BaseValues::new());
        assert!(rep.is_verified(), "{rep:?}");
        assert_eq!(rep.valid_from, 1);
    }

    #[test]
    fn sixteen_n_identity_verifies_on_fixture() {
        let tm = tm_fixture();
        let id = Identity::from_words(2, "0000", &[(-2, "00"), (3, "000")], 0).unwrap();
        let mut v = Verifier::new(&tm, tm_base());
        let zp = v.verify_symbolic(&id, Mode::ZeroPattern);
        let sub = v.verify_symbolic(&id, Mode::Subspace(1));
        assert!(zp.is_verified() || sub.is_verified(), "{zp:?} {sub:?}");
    }

    #[test]
    fn threshold_identity_needs_depth_two() {
        let tm = tm_fixture();
        let id = Identity::from_words(2, "00", &[(2, "0")], 2).unwrap();
        let mut v = Verifier::new(&tm, tm_base());
        assert!(!v.verify_symbolic(&id, Mode::Subspace(1)).is_verified());
        let rep = v.verify(&id, VerifyOptions::default());
        assert!(rep.is_verified(), "{rep:?}");
        assert_eq!(rep.mode, Mode::Subspace(2));
        assert_eq!(rep.valid_from, 2);
        // f(4) = 2 but 2 f(2) = 4
        let at1 = Identity { min_n: 1, ..id };
        let rep = v.verify(&at1, VerifyOptions::default());
        assert_eq!(rep.verdict, Verdict::Refuted);
        let c = rep.counterexample.unwrap();
        assert_eq!((c.n, c.lhs.as_str(), c.rhs.as_str()), (1, "2", "4"));
    }

    #[test]
    fn false_identity_refuted_with_counterexample() {
        let tm = tm_fixture();
        let id = Identity::from_words(2, "0", &[(1, "")], 0).unwrap();
        let rep = verify(&tm, &id, &tm_base(), VerifyOptions::default());
        assert_eq!(rep.verdict, Verdict::Refuted);
        let c = rep.counterexample.unwrap();
        assert_eq!((c.n, c.lhs.as_str(), c.rhs.as_str()), (3, "6", "4"));
    }

    #[test]
    fn missing_base_value_is_not_verified() {
        let tm = tm_fixture();
        let id = Identity::from_words(2, "0000", &[(-2, "00"), (3, "000")], 0).unwrap();
        let rep = verify(&tm, &id, &BaseValues::new(), VerifyOptions::default());
        assert_eq!(rep.verdict, Verdict::Inconclusive);
        assert!(rep.note.unwrap().contains("outside the domain"));
    }

    #[test]
    fn discovers_worked_example() {
        let ex = example_fixture();
        let sys = discover(&ex, DiscoverMode::FullVector, 10);
        assert!(sys.closed);
        let words: Vec<_> = sys.basis.iter().map(KernelTerm::word_string).collect();
        assert_eq!(words, ["", "0"]);
        let rendered: Vec<_> = sys.identities.iter().map(|i| i.render("g")).collect();
        assert_eq!(
            rendered,
            [
                "g(2n+1) = 35/11 g(n) - 9/11 g(2n)  [n >= 1]",
                "g(4n) = 13 g(n) + g(2n)  [n >= 1]",
                "g(4n+2) = 174/11 g(n) - 24/11 g(2n)  [n >= 1]",
            ]
        );
        assert_eq!(sys.base_values[&0], rat(16));
        assert_eq!(sys.base_values[&1], rat(46));
        assert!(check_completeness(&sys).is_complete());
        for n in 1..=1024 {
            assert_eq!(evaluate_by_recurrences(&sys, n).unwrap(), ex.eval(n).unwrap());
        }
    }

    #[test]
    fn discovery_on_identity_matrices() {
        let rep = identity_rep(3, vec![rat(1), rat(2)], vec![rat(5), rat(-1)]).unwrap();
        let sys = discover(&rep, DiscoverMode::FullVector, 5);
        assert_eq!(sys.basis, vec![KernelTerm::empty(3)]);
        let rendered: Vec<_> = sys.identities.iter().map(|i| i.render("g")).collect();
        assert_eq!(rendered, ["g(3n) = g(n)  [n >= 1]", "g(3n+1) = g(n)  [n >= 1]", "g(3n+2) = g(n)  [n >= 1]"]);
    }

    #[test]
    fn discovery_respects_length_limit() {
        let sys = discover(&tm_fixture(), DiscoverMode::FullVector, 1);
        assert!(!sys.closed);
    }

    #[test]
    fn discovered_identities_verify_and_basis_is_ordered() {
        for (rep, mode) in [
            (example_fixture(), DiscoverMode::FullVector),
            (tm_fixture(), DiscoverMode::Subspace(1)),
            (tm_fixture(), DiscoverMode::FullVector),
        ] {
            let sys = discover(&rep, mode, 30);
            assert!(sys.closed);
            assert!(sys.basis.windows(2).all(|p| p[0] < p[1]));
            let symbolic = match mode {
                DiscoverMode::FullVector => Mode::FullVector,
                DiscoverMode::Subspace(l) => Mode::Subspace(l),
            };
            let mut v = Verifier::new(&rep, sys.base_values.clone());
            for id in &sys.identities {
                assert!(v.verify_symbolic(id, symbolic).is_verified(), "{}", id.render("g"));
                // no target extends a dependent (unrefined) term
                for other in &sys.identities {
                    if other.target != id.target {
                        assert!(!id.target.digits().ends_with(other.target.digits()));
                    }
                }
            }
        }
    }

    #[test]
    fn discovered_tm_system_matches_matrices() {
        let tm = tm_fixture();
        let sys = discover(&tm, DiscoverMode::Subspace(1), 30);
        assert!(check_completeness(&sys).is_complete());
        for n in 1..=2048 {
            assert_eq!(evaluate_by_recurrences(&sys, n).unwrap(), tm.eval(n).unwrap(), "n={n}");
        }
    }

    #[test]
    fn conjecture_system_evaluates() {
        let sys = tm_conjecture_system();
        assert_eq!(sys.identities.len(), 9);
        assert_eq!(evaluate_by_recurrences(&sys, 0).unwrap(), rat(1));
        assert_eq!(evaluate_by_recurrences(&sys, 10).unwrap(), rat(4));
        assert_eq!(evaluate_by_recurrences(&sys, 24).unwrap(), rat(24));
        let report = check_completeness(&sys);
        assert!(report.is_complete(), "{report:?}");
        assert_eq!(report.modulus, 16);
    }

    #[test]
    fn incomplete_systems_are_reported() {
        let mut sys = tm_conjecture_system();
        sys.identities = vec![Identity::from_words(2, "0", &[(1, "")], 1).unwrap()];
        let rep = check_completeness(&sys);
        assert_eq!(rep.uncovered_residues, vec![1]);
        assert!(matches!(evaluate_by_recurrences(&sys, 5), Err(Error::Incomplete(5))));

        let empty = RecurrenceSystem {
            base: 2,
            basis: vec![],
            identities: vec![],
            base_values: (0..4).map(|n| (n, rat(1))).collect(),
            closed: true,
        };
        assert!(!check_completeness(&empty).is_complete());
        assert!(evaluate_by_recurrences(&empty, 3).is_ok());
        assert!(matches!(evaluate_by_recurrences(&empty, 4), Err(Error::Incomplete(4))));
    }

    #[test]
    fn self_referential_rule_detected() {
        let sys = RecurrenceSystem {
            base: 2,
            basis: vec![],
            identities: vec![
                Identity::from_words(2, "0", &[(1, "1")], 0).unwrap(),
                Identity::from_words(2, "1", &[(1, "0")], 0).unwrap(),
            ],
            base_values: BaseValues::new(),
            closed: true,
        };
        assert!(!check_completeness(&sys).non_decreasing.is_empty());
        assert!(evaluate_by_recurrences(&sys, 6).is_err());
    }

    #[test]
    fn system_json_round_trip() {
        let sys = discover(&example_fixture(), DiscoverMode::FullVector, 10);
        let back = RecurrenceSystem::from_json(&sys.to_json()).unwrap();
        assert_eq!(back, sys);
    }

    #[test]
    fn base_value_parsing() {
        let b = parse_base_values(["0=1", "1=2", "5=35/11"]).unwrap();
        assert_eq!(b[&5], q(35, 11));
        assert!(parse_base_values(["x"]).is_err());
    }
}
