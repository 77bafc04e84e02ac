//! Parameter arithmetic for edge-regular graphs with regular cliques.
//!
//! All checks use exact integer arithmetic. Reports list every failed
//! condition rather than stopping at the first one.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;

use crate::error::ParamsError;

/// `(v, k, lambda; e, s)`: vertex count, degree, common neighbours of adjacent
/// vertices, clique regularity and clique size.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParameterSet {
    pub v: u32,
    pub k: u32,
    pub lambda: u32,
    pub e: u32,
    pub s: u32,
}

impl ParameterSet {
    pub const fn new(v: u32, k: u32, lambda: u32, e: u32, s: u32) -> Self {
        ParameterSet { v, k, lambda, e, s }
    }

    fn wide(&self) -> (i64, i64, i64, i64, i64) {
        (
            self.v as i64,
            self.k as i64,
            self.lambda as i64,
            self.e as i64,
            self.s as i64,
        )
    }

    /// Failures of the basic bounds `v > k >= 1`, `s >= 2`,
    /// `1 <= e <= s - 1`, `s - 2 <= lambda < k`.
    pub fn basic_bound_failures(&self) -> Vec<String> {
        let (v, k, l, e, s) = self.wide();
        let mut out = Vec::new();
        if !(v > k && k >= 1) {
            out.push(format!("need v > k >= 1, got v={v}, k={k}"));
        }
        if s < 2 {
            out.push(format!("need s >= 2, got s={s}"));
        }
        if !(1 <= e && e < s) {
            out.push(format!("need 1 <= e <= s-1, got e={e}, s={s}"));
        }
        if !(s - 2 <= l && l < k) {
            out.push(format!(
                "need s-2 <= lambda < k, got lambda={l}, s={s}, k={k}"
            ));
        }
        out
    }

    pub fn satisfies_basic_bounds(&self) -> bool {
        self.basic_bound_failures().is_empty()
    }

    fn require_basic(&self) -> Result<(), ParamsError> {
        let failures = self.basic_bound_failures();
        if failures.is_empty() {
            Ok(())
        } else {
            Err(ParamsError::Domain(failures.join("; ")))
        }
    }
}

impl fmt::Display for ParameterSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{},{};{},{})",
            self.v, self.k, self.lambda, self.e, self.s
        )
    }
}

impl FromStr for ParameterSet {
    type Err = ParamsError;

    /// Parses `v,k,lambda,e,s`; `;` is accepted in place of any comma.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = text
            .trim()
            .trim_start_matches('(')
            .trim_end_matches(')')
            .split([',', ';'])
            .map(str::trim)
            .collect();
        if parts.len() != 5 {
            return Err(ParamsError::Domain(format!(
                "expected five integers v,k,lambda,e,s, got {text:?}"
            )));
        }
        let mut vals = [0u32; 5];
        for (slot, part) in vals.iter_mut().zip(&parts) {
            *slot = part.parse().map_err(|_| {
                ParamsError::Domain(format!("not a non-negative integer: {part:?}"))
            })?;
        }
        Ok(ParameterSet::new(
            vals[0], vals[1], vals[2], vals[3], vals[4],
        ))
    }
}

/// Identifier of a single admissibility condition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConditionId {
    Basic,
    /// `v - 2k + lambda >= 0`
    ErgI,
    /// `lambda k` even
    ErgII,
    /// `v k lambda` divisible by 6
    ErgIII,
    /// `(v-k-1)(v-k-2) - k(v-2k+lambda) >= 0`
    ErgIV,
    /// `k - s + e - lambda - 1 >= 0`
    NeuI,
    /// `s(k-s+1) = (v-s)e`
    NeuII,
    /// `s(s-1)(lambda-s+2) = (v-s)e(e-1)`
    NeuIII,
    /// `s >= 4`
    StrictI,
    /// `e <= k - 2`
    StrictII,
    /// `v` not in `{2k - lambda, 2k - lambda + 1}`
    StrictIII,
    /// `k - s + e - lambda - 1 >= 1`
    StrictIV,
    /// `(v-k-1)(v-k-2) - k(v-2k+lambda) > 0`
    StrictV,
    /// not of the form `(6l+3, 4l+2, 3l; l+1, 2l+1)` with `l >= 3`
    StrictVI,
}

impl ConditionId {
    pub fn as_str(self) -> &'static str {
        match self {
            ConditionId::Basic => "basic",
            ConditionId::ErgI => "erg-i",
            ConditionId::ErgII => "erg-ii",
            ConditionId::ErgIII => "erg-iii",
            ConditionId::ErgIV => "erg-iv",
            ConditionId::NeuI => "neumaier-i",
            ConditionId::NeuII => "neumaier-ii",
            ConditionId::NeuIII => "neumaier-iii",
            ConditionId::StrictI => "strict-i",
            ConditionId::StrictII => "strict-ii",
            ConditionId::StrictIII => "strict-iii",
            ConditionId::StrictIV => "strict-iv",
            ConditionId::StrictV => "strict-v",
            ConditionId::StrictVI => "strict-vi",
        }
    }
}

impl fmt::Display for ConditionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConditionReport {
    pub passed: bool,
    pub failures: Vec<(ConditionId, String)>,
}

impl ConditionReport {
    fn from_checks(checks: Vec<(ConditionId, bool, String)>) -> Self {
        let failures: Vec<_> = checks
            .into_iter()
            .filter(|(_, ok, _)| !ok)
            .map(|(id, _, msg)| (id, msg))
            .collect();
        ConditionReport {
            passed: failures.is_empty(),
            failures,
        }
    }

    pub fn merge(mut self, other: ConditionReport) -> Self {
        self.failures.extend(other.failures);
        self.passed = self.failures.is_empty();
        self
    }

    pub fn failed(&self, id: ConditionId) -> bool {
        self.failures.iter().any(|(f, _)| *f == id)
    }
}

/// Necessary conditions for an edge-regular graph with parameters `(v, k, lambda)`.
pub fn check_erg_conditions(v: u32, k: u32, lambda: u32) -> Result<ConditionReport, ParamsError> {
    if !(v > k && k >= 1 && lambda < k) {
        return Err(ParamsError::Domain(format!(
            "need v > k >= 1 and 0 <= lambda < k, got ({v},{k},{lambda})"
        )));
    }
    let (v, k, l) = (v as i64, k as i64, lambda as i64);
    let mu = v - 2 * k + l;
    let quad = (v - k - 1) * (v - k - 2) - k * mu;
    Ok(ConditionReport::from_checks(vec![
        (
            ConditionId::ErgI,
            mu >= 0,
            format!("v-2k+lambda = {mu} < 0"),
        ),
        (
            ConditionId::ErgII,
            (l * k) % 2 == 0,
            format!("lambda*k = {} is odd", l * k),
        ),
        (
            ConditionId::ErgIII,
            (v * k * l) % 6 == 0,
            format!("v*k*lambda = {} is not divisible by 6", v * k * l),
        ),
        (
            ConditionId::ErgIV,
            quad >= 0,
            format!("(v-k-1)(v-k-2) - k(v-2k+lambda) = {quad} < 0"),
        ),
    ]))
}

/// Necessary conditions for a Neumaier graph with parameters `p`.
pub fn check_neumaier_conditions(p: &ParameterSet) -> Result<ConditionReport, ParamsError> {
    p.require_basic()?;
    let (v, k, l, e, s) = p.wide();
    let slack = k - s + e - l - 1;
    let lhs2 = s * (k - s + 1);
    let rhs2 = (v - s) * e;
    let lhs3 = s * (s - 1) * (l - s + 2);
    let rhs3 = (v - s) * e * (e - 1);
    Ok(ConditionReport::from_checks(vec![
        (
            ConditionId::NeuI,
            slack >= 0,
            format!("k-s+e-lambda-1 = {slack} < 0"),
        ),
        (
            ConditionId::NeuII,
            lhs2 == rhs2,
            format!("s(k-s+1) = {lhs2} but (v-s)e = {rhs2}"),
        ),
        (
            ConditionId::NeuIII,
            lhs3 == rhs3,
            format!("s(s-1)(lambda-s+2) = {lhs3} but (v-s)e(e-1) = {rhs3}"),
        ),
    ]))
}

/// Additional necessary conditions for a strictly Neumaier graph.
pub fn check_strict_conditions(p: &ParameterSet) -> Result<ConditionReport, ParamsError> {
    p.require_basic()?;
    let (v, k, l, e, s) = p.wide();
    let slack = k - s + e - l - 1;
    let quad = (v - k - 1) * (v - k - 2) - k * (v - 2 * k + l);
    let family = {
        // (6l+3, 4l+2, 3l; l+1, 2l+1) is determined by l = lambda / 3
        let t = l / 3;
        l % 3 == 0 && t >= 3 && v == 6 * t + 3 && k == 4 * t + 2 && e == t + 1 && s == 2 * t + 1
    };
    Ok(ConditionReport::from_checks(vec![
        (ConditionId::StrictI, s >= 4, format!("s = {s} < 4")),
        (
            ConditionId::StrictII,
            e <= k - 2,
            format!("e = {e} > k-2 = {}", k - 2),
        ),
        (
            ConditionId::StrictIII,
            v != 2 * k - l && v != 2 * k - l + 1,
            format!(
                "v = {v} lies in {{2k-lambda, 2k-lambda+1}} = {{{}, {}}}",
                2 * k - l,
                2 * k - l + 1
            ),
        ),
        (
            ConditionId::StrictIV,
            slack >= 1,
            format!("k-s+e-lambda-1 = {slack} < 1"),
        ),
        (
            ConditionId::StrictV,
            quad > 0,
            format!("(v-k-1)(v-k-2) - k(v-2k+lambda) = {quad} <= 0"),
        ),
        (
            ConditionId::StrictVI,
            !family,
            format!("belongs to the excluded family with l = {}", l / 3),
        ),
    ]))
}

/// Basic bounds plus every edge-regular, Neumaier and strict condition, with
/// the basic-bound failures reported instead of raised.
pub fn full_report(p: &ParameterSet) -> ConditionReport {
    let basic = p.basic_bound_failures();
    if !basic.is_empty() {
        return ConditionReport {
            passed: false,
            failures: basic.into_iter().map(|m| (ConditionId::Basic, m)).collect(),
        };
    }
    let erg = check_erg_conditions(p.v, p.k, p.lambda).expect("basic bounds imply the erg domain");
    let neu = check_neumaier_conditions(p).expect("basic bounds checked");
    let strict = check_strict_conditions(p).expect("basic bounds checked");
    erg.merge(neu).merge(strict)
}

pub fn is_admissible(p: &ParameterSet) -> bool {
    full_report(p).passed
}

/// Every admissible parameter set with `v <= v_max`, sorted by `(v, k, lambda, e, s)`.
pub fn enumerate_admissible(v_max: u32) -> Result<Vec<ParameterSet>, ParamsError> {
    if !(4..=64).contains(&v_max) {
        return Err(ParamsError::Domain(format!(
            "v_max must lie in 4..=64, got {v_max}"
        )));
    }
    let mut out = Vec::new();
    for v in 4..=v_max {
        for k in 1..v {
            for lambda in 0..k {
                for s in 2..=(lambda + 2).min(v - 1) {
                    // s(k-s+1) = (v-s)e fixes e
                    let num = s as i64 * (k as i64 - s as i64 + 1);
                    let den = (v - s) as i64;
                    if num <= 0 || num % den != 0 {
                        continue;
                    }
                    let e = (num / den) as u32;
                    let p = ParameterSet::new(v, k, lambda, e, s);
                    if is_admissible(&p) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Parameters of the complement of a graph with parameters `(v,k,lambda;e,s)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ComplementParameters {
    pub v: u32,
    /// `v - k - 1`
    pub k: u32,
    /// `v - 2k + lambda`
    pub mu: u32,
    /// `s - e`
    pub e: u32,
    /// Size of the regular coclique.
    pub s: u32,
    /// `v - 2 - 2k + k(k - lambda - 1)/(v - k - 1)`, the only value for which the
    /// complement could be edge-regular.
    pub lambda: Ratio<i64>,
}

impl ComplementParameters {
    pub fn lambda_is_integral(&self) -> bool {
        self.lambda.is_integer()
    }

    pub fn integral_lambda(&self) -> Option<i64> {
        self.lambda_is_integral().then(|| self.lambda.to_integer())
    }
}

impl fmt::Display for ComplementParameters {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "v={} k'={} mu'={} e'={} s={} lambda'={}",
            self.v, self.k, self.mu, self.e, self.s, self.lambda
        )
    }
}

pub fn complement_parameters(p: &ParameterSet) -> Result<ComplementParameters, ParamsError> {
    p.require_basic()?;
    let (v, k, l, e, s) = p.wide();
    let kc = v - k - 1;
    let mu = v - 2 * k + l;
    if kc <= 0 || mu < 0 {
        return Err(ParamsError::Domain(format!(
            "complement of {p} has k' = {kc} and mu' = {mu}"
        )));
    }
    let lambda = Ratio::from_integer(v - 2 - 2 * k) + Ratio::new(k * (k - l - 1), kc);
    Ok(ComplementParameters {
        v: p.v,
        k: kc as u32,
        mu: mu as u32,
        e: (s - e) as u32,
        s: p.s,
        lambda,
    })
}
