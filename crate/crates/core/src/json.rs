//! Helpers for exact JSON numbers.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{Number, Value};

/// A big integer as an exact JSON number.
pub fn big_int(c: &BigInt) -> Value {
    Value::Number(c.to_string().parse::<Number>().expect("integer literal"))
}

/// A rational as an integer JSON number when integral, else the string `"p/q"`.
pub fn rational(r: &BigRational) -> Value {
    if r.is_integer() {
        big_int(r.numer())
    } else {
        Value::String(format!("{}/{}", r.numer(), r.denom()))
    }
}
