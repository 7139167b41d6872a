use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use thiserror::Error;

use super::{generate, FamilyError, FamilyId};
use crate::graph::Graph;

/// An induced copy of a forbidden graph: `witness[i]` is the host vertex
/// playing generated vertex `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub family: FamilyId,
    pub witness: Vec<usize>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertificateError {
    #[error("witness vertex {vertex} is outside the host graph (order {order})")]
    OutOfRange { vertex: usize, order: usize },
    #[error("witness has {found} vertices but {family} has {expected}")]
    WrongSize { family: FamilyId, expected: usize, found: usize },
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error("witness names do not match the generated graph: {0}")]
    Names(String),
}

/// Wire form: `{family: "F11", parameter: 8, witness: {name: host id}}`,
/// witness entries in generator order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub family: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parameter: Option<usize>,
    pub witness: Map<String, Value>,
}

impl Certificate {
    pub fn to_json(&self) -> CertificateJson {
        let f = generate(self.family);
        let witness = self.witness.iter().enumerate().map(|(i, &h)| (f.name(i), Value::from(h))).collect();
        CertificateJson { family: self.family.name(), parameter: self.family.parameter(), witness }
    }

    pub fn from_json(json: &CertificateJson) -> Result<Certificate, CertificateError> {
        let index = json
            .family
            .strip_prefix('F')
            .and_then(|i| i.parse::<u8>().ok())
            .ok_or_else(|| FamilyError::Unknown(json.family.clone()))?;
        let family = FamilyId::new(index, json.parameter)?;
        let f = generate(family);
        if json.witness.len() != f.order() {
            return Err(CertificateError::WrongSize { family, expected: f.order(), found: json.witness.len() });
        }
        let witness = (0..f.order())
            .map(|i| {
                let name = f.name(i);
                json.witness
                    .get(&name)
                    .and_then(Value::as_u64)
                    .map(|h| h as usize)
                    .ok_or_else(|| CertificateError::Names(format!("missing or non-integer entry for {name:?}")))
            })
            .collect::<Result<_, _>>()?;
        Ok(Certificate { family, witness })
    }

    /// Host vertices of the witness, sorted.
    pub fn vertex_list(&self) -> Vec<usize> {
        let mut v = self.witness.clone();
        v.sort_unstable();
        v
    }
}

/// Injective and edge/non-edge preserving from the generated graph into `G`.
pub fn validate_certificate(g: &Graph, cert: &Certificate) -> Result<bool, CertificateError> {
    let f = generate(cert.family);
    if cert.witness.len() != f.order() {
        return Err(CertificateError::WrongSize {
            family: cert.family,
            expected: f.order(),
            found: cert.witness.len(),
        });
    }
    if let Some(&vertex) = cert.witness.iter().find(|&&h| h >= g.order()) {
        return Err(CertificateError::OutOfRange { vertex, order: g.order() });
    }
    let w = &cert.witness;
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            if w[i] == w[j] || f.has_edge(i, j) != g.has_edge(w[i], w[j]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_certificates() {
        let c5 = Graph::cycle(5);
        let good = Certificate { family: FamilyId::of(0, Some(5)), witness: vec![0, 1, 2, 3, 4] };
        assert_eq!(validate_certificate(&c5, &good), Ok(true));
        let bad = Certificate { family: FamilyId::of(0, Some(4)), witness: vec![0, 1, 2, 3] };
        assert_eq!(validate_certificate(&c5, &bad), Ok(false));
        let out = Certificate { family: FamilyId::of(0, Some(4)), witness: vec![0, 1, 2, 9] };
        assert!(matches!(validate_certificate(&c5, &out), Err(CertificateError::OutOfRange { vertex: 9, .. })));
    }

    #[test]
    fn self_certificate() {
        let fam = FamilyId::of(11, Some(8));
        let g = generate(fam);
        let cert = Certificate { family: fam, witness: (0..8).collect() };
        assert_eq!(validate_certificate(&g, &cert), Ok(true));
    }

    #[test]
    fn json_round_trip_keeps_generator_order() {
        let cert = Certificate { family: FamilyId::of(11, Some(8)), witness: vec![7, 6, 5, 4, 3, 2, 1, 0] };
        let json = cert.to_json();
        let text = serde_json::to_string(&json).unwrap();
        assert!(text.starts_with(r#"{"family":"F11","parameter":8,"witness":{"u1":7,"u2":6"#), "{text}");
        let back: CertificateJson = serde_json::from_str(&text).unwrap();
        assert_eq!(Certificate::from_json(&back), Ok(cert));
        let f6 = Certificate { family: FamilyId::of(6, None), witness: (0..8).collect() };
        let text = serde_json::to_string(&f6.to_json()).unwrap();
        assert!(!text.contains("parameter"));
    }
}
