//! JSON configs for the `projbundle` and `blowup` subcommands.
//!
//! Rational fields accept either a `"p/q"` string or a JSON integer. Floats
//! are rejected so that no value is silently rounded on the way in.

use std::fmt;
use std::path::Path;

use anyhow::{Context, Result};
use serde::de::{self, Deserializer, Visitor};
use serde::Deserialize;

use chowfut_core::blowup::{BaseSummary, BlownPoint, BlowupSpec};
use chowfut_core::exactalg::parse_rat;
use chowfut_core::projbundle::{CurveBundleSpec, Summand};
use chowfut_core::Rat;

/// Wrapper deserializing `"p/q"` strings and integers into a rational.
#[derive(Debug, Clone, PartialEq)]
pub struct RatField(pub Rat);

impl<'de> Deserialize<'de> for RatField {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = RatField;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a rational as a \"p/q\" string or an integer")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<RatField, E> {
                Ok(RatField(Rat::from_integer(v.into())))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<RatField, E> {
                Ok(RatField(Rat::from_integer(v.into())))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<RatField, E> {
                parse_rat(v).map(RatField).map_err(E::custom)
            }
        }
        d.deserialize_any(V)
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SummandConfig {
    pub rank: u32,
    pub degree: i64,
    pub weight: i64,
    pub stable: bool,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LineBundleConfig {
    pub degree: i64,
    pub weight: i64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProjbundleConfig {
    pub genus: i64,
    pub summands: Vec<SummandConfig>,
    #[serde(rename = "B")]
    pub b: LineBundleConfig,
    pub r: u32,
}

impl ProjbundleConfig {
    pub fn to_spec(&self) -> chowfut_core::Result<CurveBundleSpec> {
        let summands = self
            .summands
            .iter()
            .map(|s| Summand::new(s.rank, s.degree, s.weight, s.stable))
            .collect();
        CurveBundleSpec::new(self.genus, summands, self.b.degree, self.b.weight, self.r)
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BaseConfig {
    pub n: usize,
    pub a: Vec<RatField>,
    pub polystable: bool,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointConfig {
    pub alpha: u64,
    pub phi: RatField,
    pub lambda: i64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlowupConfig {
    pub base: BaseConfig,
    pub m: u64,
    pub points: Vec<PointConfig>,
}

impl BlowupConfig {
    pub fn to_spec(&self) -> chowfut_core::Result<BlowupSpec> {
        let a = self.base.a.iter().map(|x| x.0.clone()).collect();
        let base = BaseSummary::new(self.base.n, a, self.base.polystable)?;
        let points = self
            .points
            .iter()
            .map(|p| BlownPoint::new(p.alpha, p.phi.0.clone(), p.lambda))
            .collect();
        BlowupSpec::new(base, points, self.m)
    }
}

/// Parses `text`; errors name the offending field path and the position.
pub fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    let mut de = serde_json::Deserializer::from_str(text);
    let value: T = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        anyhow::anyhow!(
            "invalid config at line {} column {}, field `{}`: {}",
            inner.line(),
            inner.column(),
            path,
            strip_position(&inner.to_string())
        )
    })?;
    de.end()
        .map_err(|e| anyhow::anyhow!("trailing data at line {} column {}", e.line(), e.column()))?;
    Ok(value)
}

// serde_json appends " at line L column C"; the position is reported separately.
fn strip_position(msg: &str) -> &str {
    msg.rfind(" at line ").map_or(msg, |i| &msg[..i])
}

pub fn load<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read config {}", path.display()))?;
    parse(&text).with_context(|| format!("in {}", path.display()))
}
