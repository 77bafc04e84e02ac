//! Core machinery for studying strictly Neumaier graphs: bitset graphs, the
//! graph6 codec, clique and regularity checks, parameter sieving,
//! constructions and canonical labeling.

pub mod canon;
pub mod classify;
pub mod cliques;
pub mod constructions;
pub mod error;
pub mod graph;
pub mod graph6;
pub mod params;

pub use canon::{
    are_isomorphic, automorphism_group, canonical_form, pair_orbits, AutGroup, CanonicalCertificate,
};
pub use classify::{
    classify, regularity_profile, NeumaierTag, NeumaierVerdict, RegularityProfile, Witness,
};
pub use cliques::{
    clique_number, clique_regularity, enumerate_maximal_cliques, find_regular_cliques,
    CliqueCertificate,
};
pub use error::{ClassifyError, ConstructionError, Graph6Error, GraphError, ParamsError};
pub use graph::{Graph, VertexSet};
pub use graph6::{decode_graph6, encode_graph6};
pub use params::{
    check_erg_conditions, check_neumaier_conditions, check_strict_conditions,
    complement_parameters, enumerate_admissible, ComplementParameters, ConditionId,
    ConditionReport, ParameterSet,
};
