//! Serde helpers writing integers and rationals as decimal strings.

use std::fmt::Display;
use std::str::FromStr;

use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

pub fn display<T: Display, S: Serializer>(value: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(value)
}

pub fn display_vec<T: Display, S: Serializer>(values: &[T], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(values.iter().map(|v| v.to_string()))
}

pub fn display_opt_vec<T: Display, S: Serializer>(values: &Option<Vec<T>>, s: S) -> Result<S::Ok, S::Error> {
    match values {
        Some(v) => display_vec(v, s),
        None => s.serialize_none(),
    }
}

pub fn display_matrix<T: Display, S: Serializer>(rows: &[Vec<T>], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(rows.iter().map(|r| r.iter().map(|v| v.to_string()).collect::<Vec<_>>()))
}

pub fn parse<'de, T, D>(d: D) -> Result<T, D::Error>
where
    T: FromStr,
    T::Err: Display,
    D: Deserializer<'de>,
{
    let s = String::deserialize(d)?;
    s.parse().map_err(D::Error::custom)
}

pub fn parse_vec<'de, T, D>(d: D) -> Result<Vec<T>, D::Error>
where
    T: FromStr,
    T::Err: Display,
    D: Deserializer<'de>,
{
    let v = Vec::<String>::deserialize(d)?;
    v.iter().map(|s| s.parse().map_err(D::Error::custom)).collect()
}

pub fn parse_matrix<'de, T, D>(d: D) -> Result<Vec<Vec<T>>, D::Error>
where
    T: FromStr,
    T::Err: Display,
    D: Deserializer<'de>,
{
    let m = Vec::<Vec<String>>::deserialize(d)?;
    m.iter()
        .map(|r| r.iter().map(|s| s.parse().map_err(D::Error::custom)).collect())
        .collect()
}
