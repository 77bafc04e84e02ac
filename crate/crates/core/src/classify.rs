//! Regularity profiles and the Neumaier classification of a graph.

use std::collections::BTreeMap;
use std::fmt;

use crate::cliques::{enumerate_maximal_cliques, find_regular_cliques, CliqueCertificate};
use crate::error::ClassifyError;
use crate::graph::{bits, low_bits, Graph};
use crate::params::ParameterSet;

/// Degree and common-neighbour statistics over all vertex pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularityProfile {
    pub regular_degree: Option<usize>,
    pub edge_regular_lambda: Option<usize>,
    pub co_edge_regular_mu: Option<usize>,
    /// Common-neighbour count -> number of adjacent pairs with that count.
    pub lambda_values: BTreeMap<usize, usize>,
    /// Common-neighbour count -> number of non-adjacent pairs with that count.
    pub mu_values: BTreeMap<usize, usize>,
}

impl RegularityProfile {
    pub fn is_strongly_regular(&self) -> bool {
        self.edge_regular_lambda.is_some() && self.co_edge_regular_mu.is_some()
    }
}

fn single_value(m: &BTreeMap<usize, usize>) -> Option<usize> {
    if m.len() == 1 {
        m.keys().next().copied()
    } else {
        None
    }
}

pub fn regularity_profile(g: &Graph) -> RegularityProfile {
    let n = g.n();
    let degrees = g.degrees();
    let regular_degree = if degrees.iter().all(|&d| d == degrees[0]) {
        Some(degrees[0])
    } else {
        None
    };
    let mut lambda_values = BTreeMap::new();
    let mut mu_values = BTreeMap::new();
    for u in 0..n {
        for w in u + 1..n {
            let c = g.common_neighbors(u, w);
            let target = if g.has_edge(u, w) {
                &mut lambda_values
            } else {
                &mut mu_values
            };
            *target.entry(c).or_insert(0) += 1;
        }
    }
    let edge_regular_lambda = regular_degree.and(single_value(&lambda_values));
    let co_edge_regular_mu = regular_degree.and(single_value(&mu_values));
    RegularityProfile {
        regular_degree,
        edge_regular_lambda,
        co_edge_regular_mu,
        lambda_values,
        mu_values,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NeumaierTag {
    NotEdgeRegular,
    EdgeRegularNoRegularClique,
    NeumaierStronglyRegular,
    StrictlyNeumaier,
}

impl fmt::Display for NeumaierTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NeumaierTag::NotEdgeRegular => "NotEdgeRegular",
            NeumaierTag::EdgeRegularNoRegularClique => "EdgeRegularNoRegularClique",
            NeumaierTag::NeumaierStronglyRegular => "NeumaierStronglyRegular",
            NeumaierTag::StrictlyNeumaier => "StrictlyNeumaier",
        })
    }
}

/// Evidence attached to a negative verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// Two vertices of different degree.
    Degree {
        u: usize,
        w: usize,
        degree_u: usize,
        degree_w: usize,
    },
    /// An adjacent pair whose common-neighbour count differs from that of
    /// the lexicographically first edge.
    Lambda {
        u: usize,
        w: usize,
        common: usize,
        expected: usize,
    },
    /// The graph has no edges.
    NoEdges,
    /// For a largest clique: two outside vertices with different numbers of
    /// neighbours in it (`count_w` may also be zero with `u == w`).
    Clique {
        clique: Vec<usize>,
        u: usize,
        count_u: usize,
        w: usize,
        count_w: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NeumaierVerdict {
    pub tag: NeumaierTag,
    pub profile: RegularityProfile,
    pub regular_cliques: Vec<CliqueCertificate>,
    pub witness: Option<Witness>,
    n: usize,
}

impl NeumaierVerdict {
    /// `(v, k, lambda; e, s)` for Neumaier verdicts.
    pub fn parameters(&self) -> Option<ParameterSet> {
        match self.tag {
            NeumaierTag::NeumaierStronglyRegular | NeumaierTag::StrictlyNeumaier => {
                let c = &self.regular_cliques[0];
                Some(ParameterSet::new(
                    self.n as u32,
                    self.profile.regular_degree? as u32,
                    self.profile.edge_regular_lambda? as u32,
                    c.e? as u32,
                    c.size() as u32,
                ))
            }
            _ => None,
        }
    }

    pub fn is_strictly_neumaier_with(&self, p: &ParameterSet) -> bool {
        self.tag == NeumaierTag::StrictlyNeumaier && self.parameters().as_ref() == Some(p)
    }
}

impl fmt::Display for NeumaierVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tag)?;
        match self.parameters() {
            Some(p) => write!(f, " {} {} {} {} {}", p.v, p.k, p.lambda, p.e, p.s),
            None => Ok(()),
        }
    }
}

pub fn classify(g: &Graph) -> Result<NeumaierVerdict, ClassifyError> {
    let n = g.n();
    if n < 4 {
        return Err(ClassifyError::TooSmall(n));
    }
    if g.is_complete() {
        return Err(ClassifyError::CompleteGraph);
    }
    let profile = regularity_profile(g);
    let verdict = |tag, regular_cliques, witness| NeumaierVerdict {
        tag,
        profile: profile.clone(),
        regular_cliques,
        witness,
        n,
    };

    if profile.edge_regular_lambda.is_none() {
        return Ok(verdict(
            NeumaierTag::NotEdgeRegular,
            Vec::new(),
            Some(edge_regularity_witness(g)),
        ));
    }

    let regular_cliques = find_regular_cliques(g);
    if regular_cliques.is_empty() {
        return Ok(verdict(
            NeumaierTag::EdgeRegularNoRegularClique,
            regular_cliques,
            Some(clique_witness(g)),
        ));
    }
    check_clique_consistency(g, &regular_cliques);

    let tag = if profile.co_edge_regular_mu.is_some() {
        NeumaierTag::NeumaierStronglyRegular
    } else {
        NeumaierTag::StrictlyNeumaier
    };
    Ok(verdict(tag, regular_cliques, None))
}

// In an edge-regular graph with a regular clique all regular cliques share one
// size s and one value e, and s is the clique number.
fn check_clique_consistency(g: &Graph, certs: &[CliqueCertificate]) {
    if cfg!(debug_assertions) {
        let s = certs[0].size();
        let e = certs[0].e;
        assert!(
            certs.iter().all(|c| c.size() == s && c.e == e),
            "regular cliques disagree on size or regularity"
        );
        let max = enumerate_maximal_cliques(g).iter().map(|c| c.len()).max();
        assert_eq!(max, Some(s), "regular clique size is not the clique number");
        for c in certs {
            let e = c.e.expect("certificate carries e");
            for v in bits(g.vertex_mask() & !c.vertices.0) {
                assert_eq!((g.neighbors(v) & c.vertices.0).count_ones() as usize, e);
            }
        }
    }
}

fn edge_regularity_witness(g: &Graph) -> Witness {
    let degrees = g.degrees();
    if let Some(w) = (1..g.n()).find(|&w| degrees[w] != degrees[0]) {
        return Witness::Degree {
            u: 0,
            w,
            degree_u: degrees[0],
            degree_w: degrees[w],
        };
    }
    let mut edges = g.edges();
    let Some((u0, w0)) = edges.next() else {
        return Witness::NoEdges;
    };
    let expected = g.common_neighbors(u0, w0);
    edges
        .find_map(|(u, w)| {
            let common = g.common_neighbors(u, w);
            (common != expected).then_some(Witness::Lambda {
                u,
                w,
                common,
                expected,
            })
        })
        .expect("regular graph without constant lambda has a mismatching edge")
}

fn clique_witness(g: &Graph) -> Witness {
    let cliques = enumerate_maximal_cliques(g);
    let largest = cliques
        .iter()
        .max_by_key(|c| c.len())
        .copied()
        .expect("non-empty graph has a clique");
    let outside: Vec<usize> = bits(g.vertex_mask() & !largest.0 & low_bits(g.n())).collect();
    let count = |v: usize| (g.neighbors(v) & largest.0).count_ones() as usize;
    let u = outside[0];
    let w = outside
        .iter()
        .copied()
        .find(|&w| count(w) != count(u))
        .unwrap_or(u);
    Witness::Clique {
        clique: largest.to_vec(),
        u,
        count_u: count(u),
        w,
        count_w: count(w),
    }
}
