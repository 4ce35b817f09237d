//! Orchestration: case enumeration, per-case certificates, desk-scale
//! brute-force oracles, and the full verification sweep.

mod certificate;
mod pipeline;
mod search;

pub use certificate::{
    CaseCertificate, ClassRecord, HitRecord, HitTag, ReductionRecord, SearchRecord, StepRecord,
    Verdict, CERTIFICATE_SCHEMA, CSV_HEADER,
};
pub use pipeline::{
    certify_single_case, family_classes, family_triple, prove_all, prove_family, Family,
    FamilySummary, RunConfig, RunReport,
};
pub use search::{brute_quadruple_search, exceptional_pairs_check, ExceptionalReport};
