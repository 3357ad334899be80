//! JSON helpers shared by reports and certificates.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::Value;

use crate::root_system::Weight;

/// A big integer as a JSON number when it fits in `i64`, otherwise a string.
pub fn big_json(m: &BigInt) -> Value {
    match m.to_i64() {
        Some(x) => Value::from(x),
        None => Value::String(m.to_string()),
    }
}

/// `[coords…, value]` rows in the given order.
pub fn weighted_list(items: &[(Weight, BigInt)]) -> Value {
    Value::Array(
        items
            .iter()
            .map(|(w, m)| Value::Array(crate::character::entry_row(w, m)))
            .collect(),
    )
}
