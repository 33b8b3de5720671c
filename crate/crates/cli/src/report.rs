//! Report values and their two renderings.
//!
//! Reports are `serde_json::Value` trees. Objects are `BTreeMap`-backed, so
//! keys come out sorted; every rational is a `"p/q"` string and every
//! integer outside the `i64` range is a string too.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde_json::{json, Map, Value};

use chowfut_core::exactalg::{format_rat, parse_rat};
use chowfut_core::{PolyK, RatFnK, Rat};

/// Digits after the point in `--approx` output.
pub const APPROX_DIGITS: u32 = 12;

pub fn rat(r: &Rat) -> Value {
    Value::String(format_rat(r))
}

pub fn rats(rs: &[Rat]) -> Value {
    Value::Array(rs.iter().map(rat).collect())
}

/// Coefficients in increasing degree.
pub fn poly(p: &PolyK) -> Value {
    rats(p.coeffs())
}

pub fn ratfn(f: &RatFnK) -> Value {
    json!({ "numerator": poly(f.numer()), "denominator": poly(f.denom()) })
}

/// `F_1 .. F_n` as top-level `"F_l"` entries of `obj`.
pub fn insert_futaki(obj: &mut Map<String, Value>, f: &[Rat]) {
    for (i, v) in f.iter().enumerate() {
        obj.insert(format!("F_{}", i + 1), rat(v));
    }
}

/// Exact decimal expansion of `r`, rounded half away from zero.
pub fn decimal(r: &Rat, digits: u32) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits as usize);
    let scaled = r.abs() * Rat::from_integer(scale.clone());
    let rounded = (scaled + Rat::new(1.into(), 2.into())).floor().to_integer();
    let (whole, frac) = rounded.div_rem(&scale);
    let sign = if r.is_negative() && !rounded.is_zero() { "-" } else { "" };
    if digits == 0 {
        return format!("{sign}{whole}");
    }
    format!("{sign}{whole}.{frac:0>width$}", width = digits as usize)
}

/// Mirror of `v` keeping only rational leaves, each replaced by its
/// decimal approximation. Returns `None` when nothing numeric remains.
pub fn approximate(v: &Value) -> Option<Value> {
    match v {
        Value::String(s) => parse_rat(s).ok().map(|r| Value::String(decimal(&r, APPROX_DIGITS))),
        Value::Array(xs) => {
            let out: Vec<Value> = xs.iter().map(|x| approximate(x).unwrap_or(Value::Null)).collect();
            out.iter().any(|x| !x.is_null()).then_some(Value::Array(out))
        }
        Value::Object(m) => {
            let out: Map<String, Value> = m
                .iter()
                .filter_map(|(k, x)| approximate(x).map(|a| (k.clone(), a)))
                .collect();
            (!out.is_empty()).then_some(Value::Object(out))
        }
        _ => None,
    }
}

/// Adds a clearly labeled `approx` section next to the exact values.
pub fn attach_approx(report: &mut Value) {
    let Some(approx) = approximate(report) else { return };
    if let Value::Object(m) = report {
        m.insert(
            "approx".into(),
            json!({
                "note": format!(
                    "decimal approximations of the exact fields, {APPROX_DIGITS} digits, rounded half away from zero"
                ),
                "values": approx,
            }),
        );
    }
}

pub fn to_json(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("report values serialize")
}

/// `path: value` lines, one per leaf, in key order.
pub fn to_table(v: &Value) -> String {
    let mut lines = Vec::new();
    flatten(v, String::new(), &mut lines);
    let width = lines.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    lines
        .into_iter()
        .map(|(k, v)| format!("{k:<width$}  {v}\n"))
        .collect()
}

fn flatten(v: &Value, prefix: String, out: &mut Vec<(String, String)>) {
    let join = |key: &str| {
        if prefix.is_empty() {
            key.to_string()
        } else {
            format!("{prefix}.{key}")
        }
    };
    match v {
        Value::Object(m) if !m.is_empty() => {
            for (k, x) in m {
                flatten(x, join(k), out);
            }
        }
        Value::Array(xs) if xs.iter().any(|x| x.is_object() || x.is_array()) => {
            for (i, x) in xs.iter().enumerate() {
                flatten(x, format!("{prefix}[{i}]"), out);
            }
        }
        Value::Array(xs) => {
            let items: Vec<String> = xs.iter().map(scalar_text).collect();
            out.push((prefix, format!("[{}]", items.join(", "))));
        }
        x => out.push((prefix, scalar_text(x))),
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        x => x.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use chowfut_core::exactalg::rat as q;

    #[test]
    fn decimals_round_half_away_from_zero() {
        assert_eq!(decimal(&q(4, 27), 6), "0.148148");
        assert_eq!(decimal(&q(2, 3), 3), "0.667");
        assert_eq!(decimal(&q(-2, 3), 3), "-0.667");
        assert_eq!(decimal(&q(1, 2), 0), "1");
        assert_eq!(decimal(&q(-1, 2000), 3), "-0.001");
        assert_eq!(decimal(&q(-1, 3000), 3), "0.000");
        assert_eq!(decimal(&q(123, 1), 2), "123.00");
    }

    #[test]
    fn approx_keeps_only_numbers() {
        let v = json!({ "a": "1/4", "b": "polystable", "c": ["1/2", "x"], "d": true });
        assert_eq!(
            approximate(&v).unwrap(),
            json!({ "a": "0.250000000000", "c": ["0.500000000000", null] })
        );
    }

    #[test]
    fn table_flattens_paths() {
        let v = json!({ "b": { "x": "1/2" }, "a": [1, 2], "c": [{ "m": 3 }] });
        assert_eq!(to_table(&v), "a       [1, 2]\nb.x     1/2\nc[0].m  3\n");
    }
}
