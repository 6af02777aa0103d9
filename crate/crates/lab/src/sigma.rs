//! Text grammar for pole configurations.
//!
//! ```text
//! explicit   := point (';' point)*        point := re [',' im]
//! one-point  := "one-point:n=<k>,r=<x>"
//! random     := "random:n=<k>,r=<x>[,count=<m>][,seed=<s>]"
//! ```
//!
//! Random configurations are drawn uniformly from the disc of radius `r` with
//! a ChaCha8 stream seeded by `seed` (default: the `--seed` flag).

use std::collections::BTreeMap;

use modelspace_core::{Complex64, PoleConfiguration};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{usage, LabError};

#[derive(Debug, Clone, PartialEq)]
pub enum SigmaSpec {
    Explicit(Vec<Complex64>),
    OnePoint { n: usize, r: f64 },
    Random { n: usize, r: f64, count: usize, seed: u64 },
}

/// A configuration with its stable text key.
#[derive(Debug, Clone)]
pub struct KeyedSigma {
    pub key: String,
    pub sigma: PoleConfiguration,
}

fn parse_params(body: &str, allowed: &[&str]) -> Result<BTreeMap<String, String>, LabError> {
    let mut out = BTreeMap::new();
    for part in body.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| usage(format!("expected key=value, found `{part}`")))?;
        let k = k.trim();
        if !allowed.contains(&k) {
            return Err(usage(format!("unknown parameter `{k}`")));
        }
        if out.insert(k.to_string(), v.trim().to_string()).is_some() {
            return Err(usage(format!("parameter `{k}` given twice")));
        }
    }
    Ok(out)
}

fn required<T: std::str::FromStr>(map: &BTreeMap<String, String>, key: &str) -> Result<T, LabError> {
    let raw = map
        .get(key)
        .ok_or_else(|| usage(format!("missing parameter `{key}`")))?;
    raw.parse()
        .map_err(|_| usage(format!("bad value `{raw}` for `{key}`")))
}

fn optional<T: std::str::FromStr>(map: &BTreeMap<String, String>, key: &str) -> Result<Option<T>, LabError> {
    map.get(key)
        .map(|raw| raw.parse().map_err(|_| usage(format!("bad value `{raw}` for `{key}`"))))
        .transpose()
}

fn check_count(n: usize) -> Result<usize, LabError> {
    if n == 0 {
        Err(usage("n must be at least 1"))
    } else {
        Ok(n)
    }
}

fn check_radius(r: f64) -> Result<f64, LabError> {
    if r.is_finite() && r.abs() < 1.0 {
        Ok(r)
    } else {
        Err(usage(format!("radius {r} is not inside the unit disc")))
    }
}

fn parse_number(s: &str) -> Result<f64, LabError> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| usage(format!("bad number `{}`", s.trim())))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(usage(format!("non-finite number `{}`", s.trim())))
    }
}

impl SigmaSpec {
    /// Parses the grammar above. `default_seed` fills a missing `seed`.
    pub fn parse(text: &str, default_seed: u64) -> Result<Self, LabError> {
        let text = text.trim().replace('\u{2212}', "-");
        if let Some(body) = text.strip_prefix("one-point:") {
            let p = parse_params(body, &["n", "r"])?;
            return Ok(SigmaSpec::OnePoint {
                n: check_count(required(&p, "n")?)?,
                r: check_radius(required(&p, "r")?)?,
            });
        }
        if let Some(body) = text.strip_prefix("random:") {
            let p = parse_params(body, &["n", "r", "count", "seed"])?;
            let count = optional(&p, "count")?.unwrap_or(1);
            if count == 0 {
                return Err(usage("count must be at least 1"));
            }
            let r: f64 = required(&p, "r")?;
            if !(0.0..1.0).contains(&r) {
                return Err(usage(format!("radius {r} must lie in [0, 1)")));
            }
            return Ok(SigmaSpec::Random {
                n: check_count(required(&p, "n")?)?,
                r,
                count,
                seed: optional(&p, "seed")?.unwrap_or(default_seed),
            });
        }
        if text.is_empty() {
            return Err(usage("empty sigma"));
        }
        let mut points = Vec::new();
        for item in text.split(';') {
            let mut parts = item.split(',');
            let re = parse_number(parts.next().unwrap_or(""))?;
            let im = match parts.next() {
                Some(s) => parse_number(s)?,
                None => 0.0,
            };
            if parts.next().is_some() {
                return Err(usage(format!("point `{item}` has more than two components")));
            }
            let z = Complex64::new(re, im);
            if !(z.norm() < 1.0) {
                return Err(usage(format!("point `{}` is not inside the unit disc", item.trim())));
            }
            points.push(z);
        }
        Ok(SigmaSpec::Explicit(points))
    }

    /// Configurations described by the spec, in a fixed order.
    pub fn configurations(&self) -> Result<Vec<KeyedSigma>, LabError> {
        match self {
            SigmaSpec::Explicit(points) => Ok(vec![KeyedSigma {
                key: explicit_key(points),
                sigma: PoleConfiguration::new(points.clone())?,
            }]),
            SigmaSpec::OnePoint { n, r } => Ok(vec![KeyedSigma {
                key: format!("one-point:n={n},r={r}"),
                sigma: PoleConfiguration::one_point(*n, Complex64::new(*r, 0.0))?,
            }]),
            SigmaSpec::Random { n, r, count, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                (0..*count)
                    .map(|i| {
                        let pts = (0..*n)
                            .map(|_| {
                                let u: f64 = rng.random();
                                let t: f64 = rng.random();
                                Complex64::from_polar(r * u.sqrt(), std::f64::consts::TAU * t)
                            })
                            .collect();
                        Ok(KeyedSigma {
                            key: format!("random:n={n},r={r},seed={seed}#{i}"),
                            sigma: PoleConfiguration::new(pts)?,
                        })
                    })
                    .collect()
            }
        }
    }

    /// Number of points per configuration.
    pub fn n(&self) -> usize {
        match self {
            SigmaSpec::Explicit(p) => p.len(),
            SigmaSpec::OnePoint { n, .. } | SigmaSpec::Random { n, .. } => *n,
        }
    }
}

/// `re,im;re,im;…` with shortest round-trip formatting.
pub fn explicit_key(points: &[Complex64]) -> String {
    points
        .iter()
        .map(|p| format!("{},{}", p.re, p.im))
        .collect::<Vec<_>>()
        .join(";")
}
