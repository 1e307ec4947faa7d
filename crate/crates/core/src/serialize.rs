use num_bigint::BigInt;
use serde::{Serialize, Serializer};

/// Serializes a big integer as a raw JSON number, exact at any magnitude.
/// Relies on serde_json's arbitrary-precision number representation; if the
/// decimal string somehow fails to parse as a JSON number it falls back to a
/// plain string, which cannot happen for BigInt output.
pub fn bigint_as_number<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    let dec = x.to_string();
    match dec.parse::<serde_json::Number>() {
        Ok(n) => n.serialize(s),
        Err(_) => s.serialize_str(&dec),
    }
}
