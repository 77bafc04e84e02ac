//! The feasibility program for the complement of a strictly Neumaier graph:
//! a `k'`-regular, `mu'`-co-edge-regular graph with an `e'`-regular coclique
//! on the first `s` vertices that is not `lambda'`-edge-regular.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;

use neumaier_core::ComplementParameters;

use crate::error::IlpError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BranchSense {
    MoreThanLambda,
    FewerThanLambda,
}

impl BranchSense {
    pub fn as_str(self) -> &'static str {
        match self {
            BranchSense::MoreThanLambda => "more",
            BranchSense::FewerThanLambda => "fewer",
        }
    }
}

impl fmt::Display for BranchSense {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// An adjacent pair whose common-neighbour count is pushed off `lambda'`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Branch {
    pub pair: (usize, usize),
    pub sense: BranchSense,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IlpModel {
    pub v: usize,
    pub k: usize,
    pub lambda: Ratio<i64>,
    pub mu: usize,
    pub e: usize,
    pub s: usize,
    /// 0-based pairs `(u, w)` with `u < w`, sorted.
    pub fixed_edges: Vec<(usize, usize)>,
    pub branch: Option<Branch>,
}

/// Constraint families; the number is the one used in the printed program.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Degree,
    YLower,
    YUpperFirst,
    YUpperSecond,
    CoEdgeLower,
    CoEdgeUpper,
    CocliqueEmpty,
    CocliqueCount,
    FixedEdge,
    BranchEdge,
    BranchWindow,
}

impl Family {
    pub const ALL: [Family; 11] = [
        Family::Degree,
        Family::YLower,
        Family::YUpperFirst,
        Family::YUpperSecond,
        Family::CoEdgeLower,
        Family::CoEdgeUpper,
        Family::CocliqueEmpty,
        Family::CocliqueCount,
        Family::FixedEdge,
        Family::BranchEdge,
        Family::BranchWindow,
    ];

    /// Row-name prefix in exports.
    pub fn prefix(self) -> &'static str {
        match self {
            Family::Degree => "deg",
            Family::YLower => "ylo",
            Family::YUpperFirst => "yupa",
            Family::YUpperSecond => "yupb",
            Family::CoEdgeLower => "cerlo",
            Family::CoEdgeUpper => "cerhi",
            Family::CocliqueEmpty => "cocz",
            Family::CocliqueCount => "cocn",
            Family::FixedEdge => "fix",
            Family::BranchEdge => "brx",
            Family::BranchWindow => "brw",
        }
    }

    pub fn from_prefix(prefix: &str) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.prefix() == prefix)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    /// Edge indicator for `u < w`.
    X(usize, usize),
    /// `t` is a common neighbour of `u < w`.
    Y(usize, usize, usize),
}

impl Var {
    pub fn x(a: usize, b: usize) -> Var {
        Var::X(a.min(b), a.max(b))
    }

    /// 1-based name, `x_u_w` or `y_t_u_w`.
    pub fn name(self) -> String {
        match self {
            Var::X(u, w) => format!("x_{}_{}", u + 1, w + 1),
            Var::Y(t, u, w) => format!("y_{}_{}_{}", t + 1, u + 1, w + 1),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sense {
    Le,
    Ge,
    Eq,
}

impl Sense {
    pub fn symbol(self) -> &'static str {
        match self {
            Sense::Le => "<=",
            Sense::Ge => ">=",
            Sense::Eq => "=",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub family: Family,
    pub name: String,
    pub terms: Vec<(Var, i64)>,
    pub sense: Sense,
    pub rhs: i64,
}

fn validate_pair(v: usize, (a, b): (usize, usize)) -> Result<(usize, usize), IlpError> {
    if a == b || a >= v || b >= v {
        return Err(IlpError::InconsistentFixedEdges(format!(
            "pair ({}, {}) is not a pair of distinct vertices in 1..={v}",
            a + 1,
            b + 1
        )));
    }
    Ok((a.min(b), a.max(b)))
}

/// Builds the program. With `include_er_branch`, `branch` names the pair
/// and direction that rule out `lambda'`-edge-regularity.
pub fn build_model(
    cp: &ComplementParameters,
    fixed_edges: &[(usize, usize)],
    branch: Option<Branch>,
    include_er_branch: bool,
) -> Result<IlpModel, IlpError> {
    let (v, k, mu, e, s) = (
        cp.v as usize,
        cp.k as usize,
        cp.mu as usize,
        cp.e as usize,
        cp.s as usize,
    );
    if v > 64 || s > v {
        return Err(IlpError::Domain(format!("unsupported size v={v}, s={s}")));
    }
    let mut fixed = Vec::with_capacity(fixed_edges.len());
    for &p in fixed_edges {
        let (a, b) = validate_pair(v, p)?;
        if b < s {
            return Err(IlpError::InconsistentFixedEdges(format!(
                "edge ({}, {}) lies inside the coclique",
                a + 1,
                b + 1
            )));
        }
        fixed.push((a, b));
    }
    fixed.sort_unstable();
    fixed.dedup();
    let mut degree = vec![0usize; v];
    let mut into_coclique = vec![0usize; v];
    for &(a, b) in &fixed {
        degree[a] += 1;
        degree[b] += 1;
        if a < s {
            into_coclique[b] += 1;
        }
    }
    if let Some(u) = (0..v).find(|&u| degree[u] > k) {
        return Err(IlpError::InconsistentFixedEdges(format!(
            "vertex {} has {} fixed edges but degree {k}",
            u + 1,
            degree[u]
        )));
    }
    if let Some(u) = (s..v).find(|&u| into_coclique[u] > e) {
        return Err(IlpError::InconsistentFixedEdges(format!(
            "vertex {} has {} fixed edges into the coclique, expected {e}",
            u + 1,
            into_coclique[u]
        )));
    }
    let branch = match (include_er_branch, branch) {
        (false, None) => None,
        (false, Some(_)) => {
            return Err(IlpError::Domain(
                "branch given while the edge-regularity branch is off".into(),
            ))
        }
        (true, None) => {
            return Err(IlpError::Domain(
                "edge-regularity branch needs a pair and a sense".into(),
            ))
        }
        (true, Some(b)) => {
            if !cp.lambda_is_integral() {
                return Err(IlpError::NonIntegralLambdaBranch(cp.lambda.to_string()));
            }
            let pair = validate_pair(v, b.pair)?;
            if pair.1 < s {
                return Err(IlpError::InconsistentFixedEdges(
                    "branch pair lies inside the coclique".into(),
                ));
            }
            Some(Branch {
                pair,
                sense: b.sense,
            })
        }
    };
    Ok(IlpModel {
        v,
        k,
        lambda: cp.lambda,
        mu,
        e,
        s,
        fixed_edges: fixed,
        branch,
    })
}

impl IlpModel {
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.v).flat_map(move |u| (u + 1..self.v).map(move |w| (u, w)))
    }

    /// Every variable: the `x` in pair order, then the `y` by pair and third vertex.
    pub fn variables(&self) -> Vec<Var> {
        let mut out: Vec<Var> = self.pairs().map(|(u, w)| Var::X(u, w)).collect();
        for (u, w) in self.pairs() {
            for t in (0..self.v).filter(|&t| t != u && t != w) {
                out.push(Var::Y(t, u, w));
            }
        }
        out
    }

    /// The branch window bound: `lambda' + 1` or `lambda' - 1`.
    pub fn branch_bound(&self) -> Option<(Sense, i64)> {
        let l = self.lambda.to_integer();
        self.branch.map(|b| match b.sense {
            BranchSense::MoreThanLambda => (Sense::Ge, l + 1),
            BranchSense::FewerThanLambda => (Sense::Le, l - 1),
        })
    }

    pub fn constraints(&self) -> Vec<Constraint> {
        let (v, s) = (self.v, self.s);
        let n1 = |u: usize| u + 1;
        let mut out = Vec::new();
        for u in 0..v {
            out.push(Constraint {
                family: Family::Degree,
                name: format!("deg_{}", n1(u)),
                terms: (0..v)
                    .filter(|&w| w != u)
                    .map(|w| (Var::x(u, w), 1))
                    .collect(),
                sense: Sense::Eq,
                rhs: self.k as i64,
            });
        }
        for (u, w) in self.pairs() {
            for t in (0..v).filter(|&t| t != u && t != w) {
                let y = Var::Y(t, u, w);
                let tag = format!("{}_{}_{}", n1(t), n1(u), n1(w));
                out.push(Constraint {
                    family: Family::YLower,
                    name: format!("ylo_{tag}"),
                    terms: vec![(y, 1), (Var::x(t, u), -1), (Var::x(t, w), -1)],
                    sense: Sense::Ge,
                    rhs: -1,
                });
                out.push(Constraint {
                    family: Family::YUpperFirst,
                    name: format!("yupa_{tag}"),
                    terms: vec![(y, 1), (Var::x(t, u), -1)],
                    sense: Sense::Le,
                    rhs: 0,
                });
                out.push(Constraint {
                    family: Family::YUpperSecond,
                    name: format!("yupb_{tag}"),
                    terms: vec![(y, 1), (Var::x(t, w), -1)],
                    sense: Sense::Le,
                    rhs: 0,
                });
            }
        }
        for (u, w) in self.pairs() {
            let ys: Vec<(Var, i64)> = (0..v)
                .filter(|&t| t != u && t != w)
                .map(|t| (Var::Y(t, u, w), 1))
                .collect();
            let tag = format!("{}_{}", n1(u), n1(w));
            let mut lo = ys.clone();
            lo.push((Var::X(u, w), self.mu as i64));
            out.push(Constraint {
                family: Family::CoEdgeLower,
                name: format!("cerlo_{tag}"),
                terms: lo,
                sense: Sense::Ge,
                rhs: self.mu as i64,
            });
            let mut hi = ys;
            hi.push((Var::X(u, w), -((v - self.mu) as i64)));
            out.push(Constraint {
                family: Family::CoEdgeUpper,
                name: format!("cerhi_{tag}"),
                terms: hi,
                sense: Sense::Le,
                rhs: self.mu as i64,
            });
        }
        for u in 0..s {
            for w in u + 1..s {
                out.push(Constraint {
                    family: Family::CocliqueEmpty,
                    name: format!("cocz_{}_{}", n1(u), n1(w)),
                    terms: vec![(Var::X(u, w), 1)],
                    sense: Sense::Eq,
                    rhs: 0,
                });
            }
        }
        for u in s..v {
            out.push(Constraint {
                family: Family::CocliqueCount,
                name: format!("cocn_{}", n1(u)),
                terms: (0..s).map(|w| (Var::x(u, w), 1)).collect(),
                sense: Sense::Eq,
                rhs: self.e as i64,
            });
        }
        for &(u, w) in &self.fixed_edges {
            out.push(Constraint {
                family: Family::FixedEdge,
                name: format!("fix_{}_{}", n1(u), n1(w)),
                terms: vec![(Var::X(u, w), 1)],
                sense: Sense::Eq,
                rhs: 1,
            });
        }
        if let (Some(b), Some((sense, rhs))) = (self.branch, self.branch_bound()) {
            let (p, q) = b.pair;
            out.push(Constraint {
                family: Family::BranchEdge,
                name: format!("brx_{}_{}", n1(p), n1(q)),
                terms: vec![(Var::X(p, q), 1)],
                sense: Sense::Eq,
                rhs: 1,
            });
            out.push(Constraint {
                family: Family::BranchWindow,
                name: format!("brw_{}_{}", n1(p), n1(q)),
                terms: (0..v)
                    .filter(|&t| t != p && t != q)
                    .map(|t| (Var::Y(t, p, q), 1))
                    .collect(),
                sense,
                rhs,
            });
        }
        out
    }

    /// Constraint counts per family from the closed-form sizes.
    pub fn expected_family_counts(&self) -> BTreeMap<Family, usize> {
        let (v, s) = (self.v, self.s);
        let pairs = v * (v - 1) / 2;
        let triples = pairs * v.saturating_sub(2);
        let b = usize::from(self.branch.is_some());
        BTreeMap::from([
            (Family::Degree, v),
            (Family::YLower, triples),
            (Family::YUpperFirst, triples),
            (Family::YUpperSecond, triples),
            (Family::CoEdgeLower, pairs),
            (Family::CoEdgeUpper, pairs),
            (Family::CocliqueEmpty, s * s.saturating_sub(1) / 2),
            (Family::CocliqueCount, v - s),
            (Family::FixedEdge, self.fixed_edges.len()),
            (Family::BranchEdge, b),
            (Family::BranchWindow, b),
        ])
    }

    pub fn x_count(&self) -> usize {
        self.v * (self.v - 1) / 2
    }

    pub fn y_count(&self) -> usize {
        self.x_count() * self.v.saturating_sub(2)
    }
}

/// Counts constraints per family.
pub fn family_counts(constraints: &[Constraint]) -> BTreeMap<Family, usize> {
    let mut m: BTreeMap<Family, usize> = Family::ALL.iter().map(|&f| (f, 0)).collect();
    for c in constraints {
        *m.entry(c.family).or_default() += 1;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use neumaier_core::{complement_parameters, ParameterSet};

    fn cp(p: ParameterSet) -> ComplementParameters {
        complement_parameters(&p).unwrap()
    }

    #[test]
    fn sizes_for_25_vertices() {
        let c = cp(ParameterSet::new(25, 16, 9, 3, 5));
        assert_eq!((c.k, c.mu, c.e), (8, 2, 2));
        let m = build_model(&c, &[], None, false).unwrap();
        assert_eq!(m.x_count(), 300);
        assert_eq!(m.y_count(), 6900);
        let cons = m.constraints();
        assert_eq!(family_counts(&cons), m.expected_family_counts());
        assert_eq!(family_counts(&cons)[&Family::Degree], 25);
    }

    #[test]
    fn branch_requires_integral_lambda() {
        let c = cp(ParameterSet::new(35, 22, 12, 3, 5));
        assert!(!c.lambda_is_integral());
        let b = Branch {
            pair: (7, 8),
            sense: BranchSense::MoreThanLambda,
        };
        assert!(matches!(
            build_model(&c, &[], Some(b), true),
            Err(IlpError::NonIntegralLambdaBranch(_))
        ));
        let m = build_model(&c, &[], None, false).unwrap();
        let counts = family_counts(&m.constraints());
        assert_eq!(counts[&Family::BranchEdge], 0);
        assert_eq!(counts[&Family::BranchWindow], 0);
    }

    #[test]
    fn branch_adds_two_rows() {
        let c = cp(ParameterSet::new(25, 16, 9, 3, 5));
        let b = Branch {
            pair: (5, 6),
            sense: BranchSense::FewerThanLambda,
        };
        let m = build_model(&c, &[], Some(b), true).unwrap();
        assert_eq!(m.branch_bound(), Some((Sense::Le, 2)));
        let counts = family_counts(&m.constraints());
        assert_eq!(counts, m.expected_family_counts());
        assert_eq!(counts[&Family::BranchWindow], 1);
    }

    #[test]
    fn rejects_edges_inside_coclique() {
        let c = cp(ParameterSet::new(25, 16, 9, 3, 5));
        assert!(matches!(
            build_model(&c, &[(0, 1)], None, false),
            Err(IlpError::InconsistentFixedEdges(_))
        ));
        assert!(matches!(
            build_model(&c, &[(5, 5)], None, false),
            Err(IlpError::InconsistentFixedEdges(_))
        ));
    }
}
