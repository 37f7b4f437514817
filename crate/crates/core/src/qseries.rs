//! Exact power series truncated at a fixed degree, and the generating
//! functions of the partition counts and Beck statistics.
//!
//! Every generating function is assembled from products over set elements up
//! to the truncation degree, so coefficient `n` is exact for `n ≤ N`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Number, Value};

use crate::error::{parse_err, Error, Result};
use crate::euler_pair::EulerPair;

/// `c_0 + c_1 q + … + c_N q^N + O(q^{N+1})` with exact integer coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    pub fn zero(degree: usize) -> Self {
        Self {
            coeffs: vec![BigInt::zero(); degree + 1],
        }
    }

    pub fn one(degree: usize) -> Self {
        Self::monomial(degree, 0, 1)
    }

    /// `c·q^k`, which is zero when `k` exceeds the degree.
    pub fn monomial(degree: usize, k: usize, c: impl Into<BigInt>) -> Self {
        let mut s = Self::zero(degree);
        if k <= degree {
            s.coeffs[k] = c.into();
        }
        s
    }

    /// Series from its first coefficients; missing ones are zero and extra
    /// ones are dropped.
    pub fn from_coeffs<T: Into<BigInt>>(degree: usize, coeffs: impl IntoIterator<Item = T>) -> Self {
        let mut s = Self::zero(degree);
        for (slot, c) in s.coeffs.iter_mut().zip(coeffs) {
            *slot = c.into();
        }
        s
    }

    /// `1/(1 − q^step)`, or `∑_{j≥1} q^{j·step}` when `skip_constant` is set.
    pub fn geometric(degree: usize, step: usize, skip_constant: bool) -> Self {
        let mut s = Self::zero(degree);
        if step == 0 {
            return s;
        }
        let start = if skip_constant { step } else { 0 };
        for i in (start..=degree).step_by(step) {
            s.coeffs[i] = BigInt::one();
        }
        s
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &BigInt {
        &self.coeffs[n]
    }

    /// Same series with fewer retained terms.
    pub fn truncate(&self, degree: usize) -> Self {
        Self {
            coeffs: self.coeffs[..=degree.min(self.degree())].to_vec(),
        }
    }

    fn common(&self, other: &Self) -> usize {
        self.degree().min(other.degree())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.common(other);
        Self {
            coeffs: (0..=n).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.common(other);
        Self {
            coeffs: (0..=n).map(|i| &self.coeffs[i] - &other.coeffs[i]).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Cauchy product; only the nonzero terms of the sparser factor are
    /// visited.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.common(other);
        let nnz = |s: &Self| s.coeffs[..=n].iter().filter(|c| !c.is_zero()).count();
        let (sparse, dense) = if nnz(self) <= nnz(other) {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = Self::zero(n);
        for (i, a) in sparse.coeffs[..=n].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in dense.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        out
    }

    /// Multiply in place by `1 − q^k`.
    pub fn mul_one_minus_q_pow(&mut self, k: usize) {
        if k == 0 {
            self.coeffs.iter_mut().for_each(|c| c.set_zero());
            return;
        }
        for i in (k..self.coeffs.len()).rev() {
            let prev = self.coeffs[i - k].clone();
            self.coeffs[i] -= prev;
        }
    }

    /// Multiply in place by `1/(1 − q^k)`, `k ≥ 1`.
    pub fn div_one_minus_q_pow(&mut self, k: usize) {
        assert!(k > 0, "1 - q^0 is not invertible");
        for i in k..self.coeffs.len() {
            let prev = self.coeffs[i - k].clone();
            self.coeffs[i] += prev;
        }
    }

    fn unit_constant(&self) -> Result<i32> {
        let c0 = &self.coeffs[0];
        if c0.is_one() {
            Ok(1)
        } else if c0.is_negative() && c0.abs().is_one() {
            Ok(-1)
        } else {
            Err(Error::NonUnitConstant(c0.to_string()))
        }
    }

    /// `self / divisor` for a divisor with constant term `±1`.
    pub fn div_unit(&self, divisor: &Self) -> Result<Self> {
        let sign = divisor.unit_constant()?;
        let n = self.common(divisor);
        let terms: Vec<(usize, &BigInt)> = divisor.coeffs[1..=n]
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i + 1, c))
            .collect();
        let mut out = Self::zero(n);
        for m in 0..=n {
            let mut acc = self.coeffs[m].clone();
            for &(i, d) in terms.iter().take_while(|&&(i, _)| i <= m) {
                acc -= d * &out.coeffs[m - i];
            }
            out.coeffs[m] = if sign < 0 { -acc } else { acc };
        }
        Ok(out)
    }

    /// Multiplicative inverse; requires constant term `±1`.
    pub fn invert_unit(&self) -> Result<Self> {
        Self::one(self.degree()).div_unit(self)
    }

    /// First degree where the two series differ, up to the smaller degree.
    pub fn first_mismatch(&self, other: &Self) -> Option<Mismatch> {
        let n = self.common(other);
        (0..=n).find(|&i| self.coeffs[i] != other.coeffs[i]).map(|i| Mismatch {
            degree: i,
            lhs: self.coeffs[i].clone(),
            rhs: other.coeffs[i].clone(),
        })
    }

    /// `{"degree": N, "coefficients": [...]}` with exact integer literals.
    pub fn to_json_value(&self) -> Value {
        let coeffs: Vec<Value> = self
            .coeffs
            .iter()
            .map(|c| Value::Number(Number::from_str(&c.to_string()).expect("integer literal")))
            .collect();
        json!({ "degree": self.degree(), "coefficients": coeffs })
    }

    pub fn from_json_value(v: &Value) -> Result<Self> {
        let bad = |d: &str| parse_err("series", d.to_string());
        let degree = v
            .get("degree")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("missing degree"))? as usize;
        let list = v
            .get("coefficients")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing coefficients"))?;
        if list.len() != degree + 1 {
            return Err(bad("coefficient count does not match degree"));
        }
        let coeffs = list
            .iter()
            .map(|c| match c {
                Value::Number(n) => BigInt::from_str(&n.to_string()).map_err(|e| bad(&e.to_string())),
                _ => Err(bad("coefficients must be integers")),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { coeffs })
    }
}

impl Serialize for TruncatedSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json_value().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TruncatedSeries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let v = Value::deserialize(deserializer)?;
        Self::from_json_value(&v).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => f.write_str("q")?,
                (1, false) => write!(f, "{mag}q")?,
                (_, true) => write!(f, "q^{i}")?,
                (_, false) => write!(f, "{mag}q^{i}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(q^{})", self.degree() + 1)
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncatedSeries({self})")
    }
}

/// The first coefficient at which two series disagree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub degree: usize,
    #[serde(serialize_with = "big_as_number")]
    pub lhs: BigInt,
    #[serde(serialize_with = "big_as_number")]
    pub rhs: BigInt,
}

fn big_as_number<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    Number::from_str(&v.to_string())
        .expect("integer literal")
        .serialize(s)
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "degree {}: lhs {} != rhs {}", self.degree, self.lhs, self.rhs)
    }
}

fn to_usize(v: u64) -> usize {
    usize::try_from(v).unwrap_or(usize::MAX)
}

/// Elements of `S1` whose image under the given map still fits in degree `N`.
fn s1_within(pair: &EulerPair, degree: usize) -> Vec<usize> {
    pair.s1_up_to(degree as u64).into_iter().map(to_usize).collect()
}

/// `1 + q^a + … + q^{(r−1)a}`.
fn factor(degree: usize, a: usize, r: usize) -> TruncatedSeries {
    let mut s = TruncatedSeries::zero(degree);
    for j in 0..r {
        match j.checked_mul(a) {
            Some(e) if e <= degree => s.coeffs[e] = BigInt::one(),
            _ => break,
        }
    }
    s
}

/// `∏_{a ∈ S1} (1 − q^{ra})/(1 − q^a)`: counts `D_r(n)`.
pub fn gf_d(pair: &EulerPair, degree: usize) -> Result<TruncatedSeries> {
    pair.ensure_valid(degree as u64)?;
    let r = to_usize(pair.r());
    let mut s = TruncatedSeries::one(degree);
    for a in s1_within(pair, degree) {
        s.div_one_minus_q_pow(a);
        if let Some(ra) = a.checked_mul(r).filter(|&x| x <= degree) {
            s.mul_one_minus_q_pow(ra);
        }
    }
    Ok(s)
}

/// `∏_{b ∈ S2} 1/(1 − q^b)`: counts `O_r(n)`.
pub fn gf_o(pair: &EulerPair, degree: usize) -> Result<TruncatedSeries> {
    pair.ensure_valid(degree as u64)?;
    let mut s = TruncatedSeries::one(degree);
    for b in pair.s2_up_to(degree as u64) {
        s.div_one_minus_q_pow(to_usize(b));
    }
    Ok(s)
}

/// `(gf_D, gf_O)`.
pub fn gf_counts(pair: &EulerPair, degree: usize) -> Result<(TruncatedSeries, TruncatedSeries)> {
    Ok((gf_d(pair, degree)?, gf_o(pair, degree)?))
}

/// `∑_{a ∈ S1} q^{ra}/(1 − q^{ra})`, i.e. one non-primitive value `v ∈ rS1`
/// taken with any positive multiplicity.
fn nonprimitive_runs(pair: &EulerPair, degree: usize) -> TruncatedSeries {
    let r = to_usize(pair.r());
    let mut s = TruncatedSeries::zero(degree);
    for a in s1_within(pair, degree) {
        match a.checked_mul(r) {
            Some(ra) if ra <= degree => s = s.add(&TruncatedSeries::geometric(degree, ra, true)),
            _ => break,
        }
    }
    s
}

/// Generating function of `b_r(n) = ℓ(O_r(n)) − ℓ(D_r(n))`:
/// `∏_{b∈S2} 1/(1−q^b) · (r−1) ∑_{a∈S1} q^{ra}/(1−q^{ra})`.
pub fn gf_b(pair: &EulerPair, degree: usize) -> Result<TruncatedSeries> {
    let o = gf_o(pair, degree)?;
    Ok(o.mul(&nonprimitive_runs(pair, degree)).scale(&BigInt::from(pair.r() - 1)))
}

/// Generating function of `a_r(n) = |O_1r(n)|`: a primitive partition
/// together with one run of a single non-primitive value.
pub fn gf_a(pair: &EulerPair, degree: usize) -> Result<TruncatedSeries> {
    let o = gf_o(pair, degree)?;
    Ok(o.mul(&nonprimitive_runs(pair, degree)))
}

/// `∑_a term_a / (1 + q^a + … + q^{(r−1)a})` where `term_a` covers the
/// multiplicities `lo..=hi` (`hi = None` for unbounded) of the value `a`.
fn replaced_factor_sum(
    pair: &EulerPair,
    degree: usize,
    lo: usize,
    hi: Option<usize>,
) -> Result<TruncatedSeries> {
    let r = to_usize(pair.r());
    let mut sum = TruncatedSeries::zero(degree);
    for a in s1_within(pair, degree) {
        let start = match lo.checked_mul(a) {
            Some(e) if e <= degree => e,
            _ => break,
        };
        let mut term = TruncatedSeries::zero(degree);
        let top = hi.and_then(|h| h.checked_mul(a)).unwrap_or(degree).min(degree);
        for e in (start..=top).step_by(a) {
            term.coeffs[e] = BigInt::one();
        }
        sum = sum.add(&term.div_unit(&factor(degree, a, r))?);
    }
    Ok(sum)
}

/// Generating function of `c_r(n) = |D_1r(n)|`: one value repeated at least
/// `r` times, `q^{ra}/(1−q^a)`, in place of its factor in the `D_r` product.
pub fn gf_c(pair: &EulerPair, degree: usize) -> Result<TruncatedSeries> {
    let d = gf_d(pair, degree)?;
    Ok(d.mul(&replaced_factor_sum(pair, degree, to_usize(pair.r()), None)?))
}

/// Generating function of `b'_r(n) = ∑ distinct(D_r(n)) − ∑ distinct(O_r(n))`:
/// `∏ (1−q^{ra})/(1−q^a) · ∑_a (q^{(r+1)a} − q^{2ra})/(1 − q^{ra})`.
pub fn gf_b_prime(pair: &EulerPair, degree: usize) -> Result<TruncatedSeries> {
    let r = to_usize(pair.r());
    let d = gf_d(pair, degree)?;
    let mut sum = TruncatedSeries::zero(degree);
    for a in s1_within(pair, degree) {
        let (Some(lo), Some(hi), Some(ra)) =
            ((r + 1).checked_mul(a), (2 * r).checked_mul(a), r.checked_mul(a))
        else {
            break;
        };
        if lo > degree {
            break;
        }
        let mut term = TruncatedSeries::monomial(degree, lo, 1).sub(&TruncatedSeries::monomial(degree, hi, 1));
        term.div_one_minus_q_pow(ra);
        sum = sum.add(&term);
    }
    Ok(d.mul(&sum))
}

/// Generating function of `c'_r(n) = |T_r(n)|`: one value with
/// multiplicity strictly between `r` and `2r`, in place of its factor.
pub fn gf_c_prime(pair: &EulerPair, degree: usize) -> Result<TruncatedSeries> {
    let r = to_usize(pair.r());
    let d = gf_d(pair, degree)?;
    Ok(d.mul(&replaced_factor_sum(pair, degree, r + 1, Some(2 * r - 1))?))
}

/// All generating functions for one pair.
#[derive(Debug, Clone)]
pub struct GfBundle {
    pub d: TruncatedSeries,
    pub o: TruncatedSeries,
    pub a: TruncatedSeries,
    pub b: TruncatedSeries,
    pub c: TruncatedSeries,
    pub b_prime: TruncatedSeries,
    pub c_prime: TruncatedSeries,
}

impl GfBundle {
    pub fn build(pair: &EulerPair, degree: usize) -> Result<Self> {
        Ok(Self {
            d: gf_d(pair, degree)?,
            o: gf_o(pair, degree)?,
            a: gf_a(pair, degree)?,
            b: gf_b(pair, degree)?,
            c: gf_c(pair, degree)?,
            b_prime: gf_b_prime(pair, degree)?,
            c_prime: gf_c_prime(pair, degree)?,
        })
    }

    /// The coefficient identities: `D = O`, `(r−1)a = b`, `(r−1)c = b`,
    /// `b' = c'`. Each entry is `(name, first mismatch)`.
    pub fn identities(&self, r: u64) -> Vec<(&'static str, Option<Mismatch>)> {
        let k = BigInt::from(r - 1);
        vec![
            ("gf_D = gf_O", self.d.first_mismatch(&self.o)),
            ("(r-1) gf_a = gf_b", self.a.scale(&k).first_mismatch(&self.b)),
            ("(r-1) gf_c = gf_b", self.c.scale(&k).first_mismatch(&self.b)),
            ("gf_b' = gf_c'", self.b_prime.first_mismatch(&self.c_prime)),
        ]
    }

    pub fn named(&self) -> [(&'static str, &TruncatedSeries); 7] {
        [
            ("D", &self.d),
            ("O", &self.o),
            ("a", &self.a),
            ("b", &self.b),
            ("c", &self.c),
            ("b_prime", &self.b_prime),
            ("c_prime", &self.c_prime),
        ]
    }
}

/// Outcome of comparing `∑_{b∈S2} q^b/(1−q^b)` with
/// `∑_{a∈S1} ∑_{k≥1, r∤k} q^{ka}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SetsIdentityCheck {
    pub degree: usize,
    pub holds: bool,
    pub first_mismatch: Option<Mismatch>,
}

/// Check the set identity behind the first Beck identity. The pair is not
/// validated first, so invalid pairs can be used as negative controls.
pub fn check_sets_identity(pair: &EulerPair, degree: usize) -> SetsIdentityCheck {
    let r = to_usize(pair.r());
    let mut lhs = TruncatedSeries::zero(degree);
    for b in pair.s2_up_to(degree as u64) {
        lhs = lhs.add(&TruncatedSeries::geometric(degree, to_usize(b), true));
    }
    let mut rhs = TruncatedSeries::zero(degree);
    for a in s1_within(pair, degree) {
        for k in (1..).take_while(|k| k * a <= degree) {
            if k % r != 0 {
                rhs.coeffs[k * a] += 1;
            }
        }
    }
    let first_mismatch = lhs.first_mismatch(&rhs);
    SetsIdentityCheck {
        degree,
        holds: first_mismatch.is_none(),
        first_mismatch,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::PairSpec;
    use crate::euler_pair::FiniteSet;
    use crate::stats::beck_statistics;
    use std::sync::Arc;

    fn pair(id: &str) -> EulerPair {
        id.parse::<PairSpec>().unwrap().build().unwrap()
    }

    fn ints(s: &TruncatedSeries) -> Vec<i64> {
        s.coeffs().iter().map(|c| i64::try_from(c).unwrap()).collect()
    }

    #[test]
    fn geometric_inverse() {
        let s = TruncatedSeries::from_coeffs(4, [1, -1]);
        assert_eq!(ints(&s.invert_unit().unwrap()), [1, 1, 1, 1, 1]);
        let neg = TruncatedSeries::from_coeffs(3, [-1, 1]);
        assert_eq!(ints(&neg.invert_unit().unwrap()), [-1, -1, -1, -1]);
        assert!(TruncatedSeries::from_coeffs(3, [2, 1]).invert_unit().is_err());
    }

    #[test]
    fn quotient_of_binomials() {
        // (1 - q^6)/(1 - q^2) = 1 + q^2 + q^4
        let num = TruncatedSeries::one(10).sub(&TruncatedSeries::monomial(10, 6, 1));
        let den = TruncatedSeries::one(10).sub(&TruncatedSeries::monomial(10, 2, 1));
        assert_eq!(ints(&num.div_unit(&den).unwrap()), [1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0]);
        assert_eq!(num.div_unit(&den).unwrap(), factor(10, 2, 3));
    }

    #[test]
    fn mismatched_degrees_truncate() {
        let a = TruncatedSeries::from_coeffs(5, [1, 2, 3]);
        let b = TruncatedSeries::from_coeffs(2, [1, 1, 1]);
        assert_eq!(a.add(&b).degree(), 2);
        assert_eq!(a.mul(&b).degree(), 2);
        assert_eq!(ints(&a.mul(&b)), [1, 3, 6]);
    }

    #[test]
    fn json_round_trip_with_big_coefficients() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let s = TruncatedSeries::from_coeffs(2, [BigInt::one(), big.clone(), -big]);
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(
            text,
            r#"{"coefficients":[1,123456789012345678901234567890,-123456789012345678901234567890],"degree":2}"#
        );
        assert_eq!(serde_json::from_str::<TruncatedSeries>(&text).unwrap(), s);
    }

    #[test]
    fn display() {
        let s = TruncatedSeries::from_coeffs(3, [1, -1, 0, 2]);
        assert_eq!(s.to_string(), "1 - q + 2q^3 + O(q^4)");
        assert_eq!(TruncatedSeries::zero(1).to_string(), "0 + O(q^2)");
    }

    #[test]
    fn example_pair_coefficients() {
        let p = pair("example-odd-mod6");
        let (d, o) = gf_counts(&p, 12).unwrap();
        assert_eq!(d.coeff(7), &BigInt::from(3));
        assert_eq!(o.coeff(7), &BigInt::from(3));
        assert_eq!(d.coeff(0), &BigInt::one());
        let b = gf_b(&p, 12).unwrap();
        assert_eq!(b.coeff(7), &BigInt::from(4));
        assert_eq!(b.coeff(11), &BigInt::from(14));
        assert!(ints(&b)[..3].iter().all(|&x| x == 0));
        assert_eq!(gf_a(&p, 12).unwrap().coeff(7), &BigInt::from(2));
        assert_eq!(gf_c(&p, 12).unwrap().coeff(7), &BigInt::from(2));
        assert_eq!(gf_b_prime(&p, 12).unwrap().coeff(7), &BigInt::one());
        assert_eq!(gf_c_prime(&p, 12).unwrap().coeff(7), &BigInt::one());
    }

    #[test]
    fn family_vii_order_four() {
        let p = pair("family-vii(r=4)");
        assert_eq!(gf_a(&p, 10).unwrap().coeff(7), &BigInt::from(3));
        assert_eq!(gf_c(&p, 10).unwrap().coeff(7), &BigInt::from(3));
        assert_eq!(gf_b_prime(&p, 10).unwrap().coeff(7), &BigInt::from(2));
        assert_eq!(gf_c_prime(&p, 10).unwrap().coeff(7), &BigInt::from(2));
    }

    #[test]
    fn series_match_enumeration() {
        for id in ["example-odd-mod6", "classical(r=2)", "family-vii(r=4)", "gollnitz"] {
            let p = pair(id);
            let g = GfBundle::build(&p, 24).unwrap();
            for n in 0..=24u64 {
                let rep = beck_statistics(&p, n).unwrap();
                let at = |s: &TruncatedSeries| i64::try_from(s.coeff(n as usize)).unwrap();
                assert_eq!(at(&g.d), rep.d_count as i64, "{id} D({n})");
                assert_eq!(at(&g.o), rep.o_count as i64, "{id} O({n})");
                assert_eq!(at(&g.a), rep.a as i64, "{id} a({n})");
                assert_eq!(at(&g.b), rep.b, "{id} b({n})");
                assert_eq!(at(&g.c), rep.c as i64, "{id} c({n})");
                assert_eq!(at(&g.b_prime), rep.b_prime, "{id} b'({n})");
                assert_eq!(at(&g.c_prime), rep.c_prime as i64, "{id} c'({n})");
            }
            assert!(g.identities(p.r()).iter().all(|(_, m)| m.is_none()));
        }
    }

    #[test]
    fn sets_identity() {
        assert!(check_sets_identity(&pair("example-odd-mod6"), 60).holds);
        assert!(check_sets_identity(&pair("classical(r=2)"), 60).holds);
        let broken = EulerPair::new(2, Arc::new(FiniteSet::new([1, 2])), "broken").unwrap();
        let check = check_sets_identity(&broken, 60);
        assert!(!check.holds);
        let m = check.first_mismatch.unwrap();
        assert_eq!((m.degree, m.lhs, m.rhs), (4, BigInt::one(), BigInt::zero()));
    }
}
