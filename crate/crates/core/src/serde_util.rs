//! Serialization helpers for exact numbers.

use std::fmt::Display;

use serde::Serializer;

/// Serialize any displayable value (big integers, rationals) as a string.
pub fn display<T: Display, S: Serializer>(value: &T, serializer: S) -> Result<S::Ok, S::Error> {
    serializer.collect_str(value)
}
