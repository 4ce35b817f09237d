//! Machine-readable per-case certificates.
//!
//! Integers are serialized as decimal strings so consumers never truncate
//! them; field order is fixed by struct declaration, making serialized
//! output byte-deterministic for identical runs.

use serde::Serialize;

pub const CERTIFICATE_SCHEMA: &str = "d4quad-case-certificate/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "REGULAR-ONLY")]
    RegularOnly,
    #[serde(rename = "FAIL")]
    Fail,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum HitTag {
    /// d = 0: no extension.
    Trivial,
    /// d equals d_+ of the triple.
    RegularPlus,
    /// d equals d_- of the triple.
    RegularMinus,
    /// A genuine extension that is neither: a conjecture counterexample.
    Irregular,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassRecord {
    pub id: String,
    pub z0: String,
    pub x0: String,
    pub z1: String,
    pub y1: String,
    pub y2: String,
    pub x2: String,
    pub type_tag: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct HitRecord {
    /// Index in the governing (bounded) sequence.
    pub main_index: u32,
    /// Index in the value-scanned sequence.
    pub other_index: u32,
    pub value: String,
    pub d: String,
    pub tag: HitTag,
}

#[derive(Debug, Clone, Serialize)]
pub struct StepRecord {
    pub q: String,
    pub eta_lo: String,
    pub eta_hi: String,
    pub new_bound: String,
    pub convergents_rejected: u32,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReductionRecord {
    pub initial_bound: String,
    pub convergent_floor: String,
    pub steps: Vec<StepRecord>,
    pub final_bound: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchRecord {
    /// The governing index was searched exhaustively up to this value.
    pub main_index_max: u32,
    pub hits: Vec<HitRecord>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CaseCertificate {
    pub schema: String,
    pub k: u32,
    pub p: u32,
    pub a: String,
    pub b: String,
    pub c: String,
    pub family: String,
    pub class: ClassRecord,
    /// Name of the governing index ("m" for the inner family and the
    /// z-system, "l" for the outer families).
    pub index_variable: String,
    /// Lower bound on the governing index from the congruence lemmas
    /// (context for the window; the search itself starts at zero).
    pub congruence_lower_bound: String,
    pub window_nonempty: bool,
    pub reduction: ReductionRecord,
    pub search: SearchRecord,
    pub verdict: Verdict,
    pub precision_base_digits: u32,
    pub toolkit_version: String,
}

impl CaseCertificate {
    pub fn file_name(&self) -> String {
        format!("{}_{}_{}_{}.json", self.k, self.family, self.p, self.class.id)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serialization")
    }

    pub fn csv_row(&self) -> String {
        let regular = self
            .search
            .hits
            .iter()
            .filter(|h| matches!(h.tag, HitTag::RegularPlus | HitTag::RegularMinus))
            .count();
        format!(
            "{},{},{},{},{:?},{},{},{}",
            self.k,
            self.family,
            self.p,
            self.class.id,
            self.verdict,
            self.reduction.final_bound,
            self.search.hits.len(),
            regular
        )
    }
}

pub const CSV_HEADER: &str = "k,family,p,class,verdict,final_bound,hits,regular_hits";
