//! JSON shapes shared by the command line: field descriptions and element
//! strings for vectors, matrices, queries and responses.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::Result;
use crate::gf::{Elem, Field};
use crate::linalg::Matrix;
use crate::pir::{QuerySet, ResponseVector};

/// `{ "q": 2, "m": 3, "modulus": [1, 1, 0, 1] }`; the modulus (coefficients,
/// constant first) defaults to the built-in table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub q: u32,
    pub m: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
}

impl FieldSpec {
    pub fn build(&self) -> Result<Field> {
        match &self.modulus {
            Some(modulus) => Field::new(self.q, self.m, modulus.clone()),
            None => Field::with_default_modulus(self.q, self.m),
        }
    }

    pub fn of(field: &Field) -> FieldSpec {
        FieldSpec {
            q: field.characteristic(),
            m: field.degree(),
            modulus: Some(field.modulus().to_vec()),
        }
    }
}

pub fn vector_strings(field: &Field, v: &[Elem]) -> Vec<String> {
    v.iter().map(|&e| field.format(e)).collect()
}

pub fn parse_vector(field: &Field, v: &[String]) -> Result<Vec<Elem>> {
    v.iter().map(|s| field.parse(s)).collect()
}

pub fn matrix_strings(m: &Matrix) -> Vec<Vec<String>> {
    m.row_iter().map(|r| vector_strings(m.field(), r)).collect()
}

/// `{ "iteration": u, "queries": [[...], ...] }`, one array per server. The
/// requested file index is deliberately absent.
pub fn queries_json(qs: &QuerySet) -> Value {
    let queries: Vec<Vec<String>> = qs
        .queries()
        .iter()
        .map(|q| vector_strings(qs.alphabet(), q))
        .collect();
    json!({ "iteration": qs.iteration(), "queries": queries })
}

pub fn responses_json(field: &Field, r: &ResponseVector) -> Value {
    json!(vector_strings(field, &r.values))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pir::{generate_queries, query_rng, Scheme, Variant};
    use crate::presets::EXAMPLE_2;

    #[test]
    fn field_spec_round_trip() {
        let spec: FieldSpec = serde_json::from_str(r#"{"q":2,"m":3}"#).unwrap();
        let f = spec.build().unwrap();
        assert_eq!(f, Field::with_default_modulus(2, 3).unwrap());
        let explicit = FieldSpec::of(&f);
        assert_eq!(explicit.modulus.as_deref(), Some(&[1, 1, 0, 1][..]));
        assert_eq!(explicit.build().unwrap(), f);
        assert!(serde_json::from_str::<FieldSpec>(r#"{"q":2,"m":3,"x":1}"#).is_err());
    }

    #[test]
    fn vectors_round_trip() {
        let f = Field::with_default_modulus(3, 2).unwrap();
        let v: Vec<Elem> = f.elements().collect();
        assert_eq!(parse_vector(&f, &vector_strings(&f, &v)).unwrap(), v);
    }

    #[test]
    fn serialized_queries_omit_the_file_index() {
        let s =
            Scheme::derive(EXAMPLE_2.config(3, Variant::SubfieldSubcode, 7, 0).unwrap()).unwrap();
        let qs = generate_queries(&s, 5, 2, &mut query_rng(0, 2)).unwrap();
        let v = queries_json(&qs);
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(keys, ["iteration", "queries"]);
        assert_eq!(v["queries"].as_array().unwrap().len(), 8);
        assert!(v["queries"][0]
            .as_array()
            .unwrap()
            .iter()
            .all(|e| e == "0" || e == "1"));
    }
}
