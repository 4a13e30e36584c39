//! JSON shapes emitted by the CLI. Every number is a decimal string.

use serde::{Deserialize, Serialize};

use cosmo_core::polynomial::PolynomialJson;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HstarJson {
    pub method: String,
    pub hstar: PolynomialJson,
    pub volume: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TutteTerm {
    pub x: usize,
    pub y: usize,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TutteJson {
    pub terms: Vec<TutteTerm>,
    pub acyclic_subsets: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VolumeJson {
    pub volume: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EhrhartRow {
    pub j: usize,
    pub from_hstar: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub from_halfopen: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub brute: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EhrhartJson {
    pub dimension: usize,
    pub hstar: PolynomialJson,
    pub counts: Vec<EhrhartRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyJson {
    pub family: String,
    pub parameters: Vec<usize>,
    pub hstar: PolynomialJson,
    pub volume: String,
    pub matches_acyclic: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckJson {
    pub name: String,
    pub status: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyJson {
    pub passed: bool,
    pub checks: Vec<CheckJson>,
}
