//! Euler pairs of order `r`.
//!
//! An Euler pair is determined by `r` and the set `S1`; the primitive set
//! `S2 = S1 \ rS1` is always derived, never stored. Closed-form `S2`
//! descriptions from the catalog are kept only as cross-checks.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A set of positive integers given by a membership predicate.
pub trait IntegerSet: Send + Sync + fmt::Debug {
    fn contains(&self, m: u64) -> bool;

    /// Sorted members `<= bound`. Must agree with [`IntegerSet::contains`].
    fn elements_up_to(&self, bound: u64) -> Vec<u64> {
        (1..=bound).filter(|&m| self.contains(m)).collect()
    }

    fn describe(&self) -> String;
}

/// All positive integers.
#[derive(Debug, Clone, Copy)]
pub struct Naturals;

impl IntegerSet for Naturals {
    fn contains(&self, m: u64) -> bool {
        m > 0
    }

    fn elements_up_to(&self, bound: u64) -> Vec<u64> {
        (1..=bound).collect()
    }

    fn describe(&self) -> String {
        "N".into()
    }
}

/// `{ m : m mod modulus ∈ residues }`, or its complement in the positive
/// integers when built with [`ResidueClasses::excluding`].
#[derive(Debug, Clone)]
pub struct ResidueClasses {
    modulus: u64,
    residues: Vec<u64>,
    complement: bool,
}

impl ResidueClasses {
    pub fn new(modulus: u64, residues: impl IntoIterator<Item = u64>) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidParams {
                family: "residue classes".into(),
                reason: "modulus must be positive".into(),
            });
        }
        let mut residues: Vec<u64> = residues.into_iter().map(|r| r % modulus).collect();
        residues.sort_unstable();
        residues.dedup();
        Ok(Self {
            modulus,
            residues,
            complement: false,
        })
    }

    /// `{ m : m mod modulus ∉ residues }`.
    pub fn excluding(modulus: u64, residues: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut set = Self::new(modulus, residues)?;
        set.complement = true;
        Ok(set)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn residues(&self) -> &[u64] {
        &self.residues
    }
}

impl IntegerSet for ResidueClasses {
    fn contains(&self, m: u64) -> bool {
        m > 0 && (self.residues.binary_search(&(m % self.modulus)).is_ok() != self.complement)
    }

    fn describe(&self) -> String {
        let rs: Vec<String> = self.residues.iter().map(u64::to_string).collect();
        let rel = if self.complement { "≢" } else { "≡" };
        format!("m {rel} {} (mod {})", rs.join(","), self.modulus)
    }
}

/// An explicit finite set.
#[derive(Debug, Clone)]
pub struct FiniteSet(BTreeSet<u64>);

impl FiniteSet {
    pub fn new(values: impl IntoIterator<Item = u64>) -> Self {
        Self(values.into_iter().filter(|&v| v > 0).collect())
    }
}

impl IntegerSet for FiniteSet {
    fn contains(&self, m: u64) -> bool {
        self.0.contains(&m)
    }

    fn elements_up_to(&self, bound: u64) -> Vec<u64> {
        self.0.range(..=bound).copied().collect()
    }

    fn describe(&self) -> String {
        let vs: Vec<String> = self.0.iter().map(u64::to_string).collect();
        format!("{{{}}}", vs.join(","))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum QuadraticForm {
    /// x² + 2y²
    X2Plus2Y2,
    /// x² + xy + y²
    X2PlusXyPlusY2,
}

impl QuadraticForm {
    /// Exact test whether `m` is represented by the form over the integers.
    pub fn represents(self, m: u64) -> bool {
        match self {
            QuadraticForm::X2Plus2Y2 => {
                let mut y: u64 = 0;
                while 2 * y * y <= m {
                    if is_square(m - 2 * y * y) {
                        return true;
                    }
                    y += 1;
                }
                false
            }
            QuadraticForm::X2PlusXyPlusY2 => {
                // x = (-y ± sqrt(4m - 3y²)) / 2; parity works out whenever the
                // discriminant is a square.
                let m = m as i128;
                let bound = ((4 * m / 3) as u64).isqrt() as i128 + 1;
                (0..=bound).any(|y| {
                    let disc = 4 * m - 3 * y * y;
                    disc >= 0 && is_square(disc as u64)
                })
            }
        }
    }
}

fn is_square(v: u64) -> bool {
    let s = v.isqrt();
    s * s == v
}

/// Positive integers represented by a binary quadratic form; memoized.
#[derive(Debug)]
pub struct QuadraticFormSet {
    form: QuadraticForm,
    memo: Mutex<HashMap<u64, bool>>,
}

impl QuadraticFormSet {
    pub fn new(form: QuadraticForm) -> Self {
        Self {
            form,
            memo: Mutex::new(HashMap::new()),
        }
    }
}

impl IntegerSet for QuadraticFormSet {
    fn contains(&self, m: u64) -> bool {
        if m == 0 {
            return false;
        }
        if let Some(&hit) = self.memo.lock().expect("memo lock").get(&m) {
            return hit;
        }
        let hit = self.form.represents(m);
        self.memo.lock().expect("memo lock").insert(m, hit);
        hit
    }

    fn describe(&self) -> String {
        match self.form {
            QuadraticForm::X2Plus2Y2 => "m = x²+2y²".into(),
            QuadraticForm::X2PlusXyPlusY2 => "m = x²+xy+y²".into(),
        }
    }
}

/// Positive integers that are nonzero quadratic residues modulo a prime `p`.
#[derive(Debug, Clone, Copy)]
pub struct QuadraticResidues {
    p: u64,
}

impl QuadraticResidues {
    /// `p` must be prime; that is the caller's responsibility.
    pub fn new(p: u64) -> Self {
        Self { p }
    }

    /// Euler's criterion: `m^((p-1)/2) ≡ 1 (mod p)`.
    pub fn is_residue(&self, m: u64) -> bool {
        let m = m % self.p;
        m != 0 && pow_mod(m, (self.p - 1) / 2, self.p) == 1 % self.p
    }
}

fn pow_mod(base: u64, mut exp: u64, modulus: u64) -> u64 {
    let m = modulus as u128;
    let mut acc: u128 = 1 % m;
    let mut b = base as u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

impl IntegerSet for QuadraticResidues {
    fn contains(&self, m: u64) -> bool {
        m > 0 && self.is_residue(m)
    }

    fn describe(&self) -> String {
        format!("m a nonzero quadratic residue mod {}", self.p)
    }
}

/// Members of every constituent set.
#[derive(Debug, Clone)]
pub struct Intersection(pub Vec<Arc<dyn IntegerSet>>);

impl IntegerSet for Intersection {
    fn contains(&self, m: u64) -> bool {
        self.0.iter().all(|s| s.contains(m))
    }

    fn describe(&self) -> String {
        let parts: Vec<String> = self.0.iter().map(|s| s.describe()).collect();
        parts.join(" and ")
    }
}

/// Extension point for sets given by an arbitrary predicate.
pub struct PredicateSet {
    label: String,
    predicate: Arc<dyn Fn(u64) -> bool + Send + Sync>,
}

impl PredicateSet {
    pub fn new(label: impl Into<String>, predicate: impl Fn(u64) -> bool + Send + Sync + 'static) -> Self {
        Self {
            label: label.into(),
            predicate: Arc::new(predicate),
        }
    }
}

impl fmt::Debug for PredicateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PredicateSet({})", self.label)
    }
}

impl IntegerSet for PredicateSet {
    fn contains(&self, m: u64) -> bool {
        m > 0 && (self.predicate)(m)
    }

    fn describe(&self) -> String {
        self.label.clone()
    }
}

/// Result of checking `rS1 ⊆ S1` up to a bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub r: u64,
    pub bound: u64,
    /// Least `m ∈ S1` with `rm <= bound` and `rm ∉ S1`.
    pub counterexample: Option<u64>,
}

/// Check closure of `s1` under multiplication by `r` for all `m <= bound / r`.
pub fn validate(s1: &dyn IntegerSet, r: u64, bound: u64) -> ValidationReport {
    let counterexample = bound.checked_div(r).and_then(|top| {
        s1.elements_up_to(top)
            .into_iter()
            .find(|&m| !s1.contains(m * r))
    });
    ValidationReport {
        ok: counterexample.is_none(),
        r,
        bound,
        counterexample,
    }
}

/// `part = r^exponent · core` with `core ∈ S2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PartDecomposition {
    pub core: u64,
    pub exponent: u32,
}

/// An Euler pair of order `r`, given by `S1`.
#[derive(Clone)]
pub struct EulerPair {
    r: u64,
    label: String,
    s1: Arc<dyn IntegerSet>,
    s2_closed_form: Option<Arc<dyn IntegerSet>>,
}

impl EulerPair {
    /// No closure check happens here; see [`EulerPair::validate`].
    pub fn new(r: u64, s1: Arc<dyn IntegerSet>, label: impl Into<String>) -> Result<Self> {
        if r < 2 {
            return Err(Error::InvalidPair(format!("order r must be at least 2, got {r}")));
        }
        Ok(Self {
            r,
            label: label.into(),
            s1,
            s2_closed_form: None,
        })
    }

    /// Attach an independent description of `S2` used only for cross-checks.
    pub fn with_s2_closed_form(mut self, s2: Arc<dyn IntegerSet>) -> Self {
        self.s2_closed_form = Some(s2);
        self
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn s1(&self) -> &dyn IntegerSet {
        self.s1.as_ref()
    }

    pub fn s2_closed_form(&self) -> Option<&dyn IntegerSet> {
        self.s2_closed_form.as_deref()
    }

    pub fn in_s1(&self, m: u64) -> bool {
        self.s1.contains(m)
    }

    /// `m ∈ rS1`.
    pub fn in_r_s1(&self, m: u64) -> bool {
        m > 0 && m.is_multiple_of(self.r) && self.s1.contains(m / self.r)
    }

    /// Primitive: `m ∈ S2 = S1 \ rS1`.
    pub fn in_s2(&self, m: u64) -> bool {
        self.s1.contains(m) && !self.in_r_s1(m)
    }

    /// `m ∈ S1 ∩ rS1`.
    pub fn is_non_primitive(&self, m: u64) -> bool {
        self.s1.contains(m) && self.in_r_s1(m)
    }

    pub fn s1_up_to(&self, bound: u64) -> Vec<u64> {
        self.s1.elements_up_to(bound)
    }

    pub fn s2_up_to(&self, bound: u64) -> Vec<u64> {
        self.s1
            .elements_up_to(bound)
            .into_iter()
            .filter(|&m| !self.in_r_s1(m))
            .collect()
    }

    pub fn validate(&self, bound: u64) -> ValidationReport {
        validate(self.s1.as_ref(), self.r, bound)
    }

    /// Error unless the pair is closed up to `bound`.
    pub fn ensure_valid(&self, bound: u64) -> Result<()> {
        let report = self.validate(bound.max(self.r));
        match report.counterexample {
            None => Ok(()),
            Some(m) => Err(Error::InvalidPair(format!(
                "{}: {m} ∈ S1 but {} ∉ S1",
                self.label,
                m * self.r
            ))),
        }
    }

    pub fn r_pow(&self, k: u32) -> Result<u64> {
        self.r.checked_pow(k).ok_or(Error::Overflow("power of r"))
    }

    /// `r^exponent · core`, checked.
    pub fn compose(&self, core: u64, exponent: u32) -> Result<u64> {
        self.r_pow(exponent)?
            .checked_mul(core)
            .ok_or(Error::Overflow("part value"))
    }

    /// Factor `part ∈ S1` as `r^k · core` with `core ∈ S2`.
    pub fn decompose(&self, part: u64) -> Result<PartDecomposition> {
        if !self.in_s1(part) {
            return Err(Error::NotInS1(part));
        }
        let mut core = part;
        let mut exponent = 0;
        while self.in_r_s1(core) {
            core /= self.r;
            exponent += 1;
        }
        Ok(PartDecomposition { core, exponent })
    }

    /// Elements `<= bound` where the derived `S2` and the closed form
    /// disagree. `None` when no closed form is attached.
    pub fn s2_discrepancies(&self, bound: u64) -> Option<Vec<u64>> {
        let closed = self.s2_closed_form.as_ref()?;
        Some(
            (1..=bound)
                .filter(|&m| self.in_s2(m) != closed.contains(m))
                .collect(),
        )
    }
}

impl fmt::Debug for EulerPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("EulerPair")
            .field("label", &self.label)
            .field("r", &self.r)
            .field("s1", &self.s1.describe())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn odd_pair() -> EulerPair {
        EulerPair::new(3, Arc::new(ResidueClasses::new(2, [1]).unwrap()), "odd").unwrap()
    }

    #[test]
    fn validate_examples() {
        let odd = ResidueClasses::new(2, [1]).unwrap();
        assert!(validate(&odd, 3, 1000).ok);

        let not5 = ResidueClasses::new(5, [1, 2, 3, 4]).unwrap();
        assert!(validate(&not5, 4, 1000).ok);

        // 1 -> 2 is fine, 2 -> 4 is not.
        let finite = FiniteSet::new([1, 2]);
        let report = validate(&finite, 2, 10);
        assert!(!report.ok);
        assert_eq!(report.counterexample, Some(2));
    }

    #[test]
    fn derived_s2_for_odd_numbers() {
        let pair = odd_pair();
        let s2 = pair.s2_up_to(40);
        let expected: Vec<u64> = (1..=40).filter(|m| m % 6 == 1 || m % 6 == 5).collect();
        assert_eq!(s2, expected);
        assert!(pair.is_non_primitive(9));
        assert!(!pair.in_s1(6));
    }

    #[test]
    fn decompose_examples() {
        let pair = odd_pair();
        assert_eq!(
            pair.decompose(135).unwrap(),
            PartDecomposition { core: 5, exponent: 3 }
        );
        assert_eq!(
            pair.decompose(45).unwrap(),
            PartDecomposition { core: 5, exponent: 2 }
        );
        assert_eq!(
            pair.decompose(25).unwrap(),
            PartDecomposition { core: 25, exponent: 0 }
        );
        assert_eq!(pair.decompose(10), Err(Error::NotInS1(10)));
    }

    #[test]
    fn decompose_round_trips() {
        let pair = odd_pair();
        for m in pair.s1_up_to(5000) {
            let d = pair.decompose(m).unwrap();
            assert!(pair.in_s2(d.core));
            assert_eq!(pair.compose(d.core, d.exponent).unwrap(), m);
            assert_eq!(d.exponent == 0, pair.in_s2(m));
        }
    }

    #[test]
    fn quadratic_forms() {
        let f = QuadraticForm::X2Plus2Y2;
        let reps: Vec<u64> = (1..=20).filter(|&m| f.represents(m)).collect();
        assert_eq!(reps, [1, 2, 3, 4, 6, 8, 9, 11, 12, 16, 17, 18, 19]);
        let g = QuadraticForm::X2PlusXyPlusY2;
        let reps: Vec<u64> = (1..=30).filter(|&m| g.represents(m)).collect();
        assert_eq!(reps, [1, 3, 4, 7, 9, 12, 13, 16, 19, 21, 25, 27, 28]);
    }

    #[test]
    fn quadratic_forms_match_brute_force() {
        for m in 1..=400u64 {
            let b = m.isqrt() as i64 + 1;
            let mut a = false;
            let mut c = false;
            for x in -b..=b {
                for y in -b..=b {
                    a |= (x * x + 2 * y * y) as u64 == m;
                    c |= x * x + x * y + y * y == m as i64;
                }
            }
            assert_eq!(QuadraticForm::X2Plus2Y2.represents(m), a, "m={m}");
            assert_eq!(QuadraticForm::X2PlusXyPlusY2.represents(m), c, "m={m}");
        }
    }

    #[test]
    fn elements_agree_with_contains() {
        let sets: Vec<Arc<dyn IntegerSet>> = vec![
            Arc::new(Naturals),
            Arc::new(ResidueClasses::new(6, [2, 4, 5]).unwrap()),
            Arc::new(FiniteSet::new([3, 9, 27])),
            Arc::new(QuadraticResidues::new(7)),
            Arc::new(QuadraticFormSet::new(QuadraticForm::X2Plus2Y2)),
        ];
        for s in sets {
            let listed = s.elements_up_to(100);
            let filtered: Vec<u64> = (1..=100).filter(|&m| s.contains(m)).collect();
            assert_eq!(listed, filtered, "{}", s.describe());
        }
    }

    #[test]
    fn order_below_two_rejected() {
        assert!(EulerPair::new(1, Arc::new(Naturals), "bad").is_err());
    }
}
