//! Exact rational vertex weights and the balance parameter `c`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

pub type Q = BigRational;

pub fn q(num: i64, den: i64) -> Q {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Parse `"a/b"` or `"a"`.
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n = BigInt::from_str(n).map_err(|_| Error::BadRatio(s.to_string()))?;
    let d = BigInt::from_str(d).map_err(|_| Error::BadRatio(s.to_string()))?;
    if d.is_zero() {
        return Err(Error::BadRatio(s.to_string()));
    }
    Ok(BigRational::new(n, d))
}

/// Always `num/den`, including integers, so values round-trip unchanged.
pub fn format_q(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub(crate) mod q_serde {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_q(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Q, D::Error> {
        let s = String::deserialize(d)?;
        parse_q(&s).map_err(serde::de::Error::custom)
    }
}

/// Balance constant in `[1/2, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Balance(Q);

impl Balance {
    pub fn new(c: Q) -> Result<Balance> {
        if c < q(1, 2) || c >= Q::one() {
            return Err(Error::BadRatio(format!("c = {} is outside [1/2, 1)", format_q(&c))));
        }
        Ok(Balance(c))
    }

    pub fn half() -> Balance {
        Balance(q(1, 2))
    }

    pub fn value(&self) -> &Q {
        &self.0
    }
}

impl FromStr for Balance {
    type Err = Error;
    fn from_str(s: &str) -> Result<Balance> {
        Balance::new(parse_q(s)?)
    }
}

impl fmt::Display for Balance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_q(&self.0))
    }
}

impl Serialize for Balance {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_q(&self.0))
    }
}

impl<'de> Deserialize<'de> for Balance {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Balance, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Non-negative rational weight per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightFunction {
    w: Vec<Q>,
    total: Q,
}

impl WeightFunction {
    pub fn new(w: Vec<Q>) -> Result<WeightFunction> {
        if let Some(i) = w.iter().position(|x| x.is_negative()) {
            return Err(Error::Invalid(format!("vertex {i} has negative weight")));
        }
        let total = w.iter().fold(Q::zero(), |a, b| a + b);
        Ok(WeightFunction { w, total })
    }

    pub fn from_integers(w: &[u64]) -> Result<WeightFunction> {
        let sum: u64 = w.iter().sum();
        if sum == 0 {
            return Err(Error::NotNormal("all weights are zero".into()));
        }
        WeightFunction::new(w.iter().map(|&x| q(x as i64, sum as i64)).collect())
    }

    /// 1/|Y| on Y and 0 elsewhere.
    pub fn uniform_on(n: usize, y: &VertexSet) -> Result<WeightFunction> {
        if y.is_empty() {
            return Err(Error::NotNormal("uniform weight on an empty set".into()));
        }
        let share = q(1, y.len() as i64);
        WeightFunction::new(
            (0..n)
                .map(|v| if y.contains(v) { share.clone() } else { Q::zero() })
                .collect(),
        )
    }

    pub fn uniform(n: usize) -> Result<WeightFunction> {
        WeightFunction::uniform_on(n, &VertexSet::range(n))
    }

    pub fn len(&self) -> usize {
        self.w.len()
    }

    pub fn is_empty(&self) -> bool {
        self.w.is_empty()
    }

    pub fn get(&self, v: usize) -> &Q {
        &self.w[v]
    }

    pub fn values(&self) -> &[Q] {
        &self.w
    }

    pub fn total(&self) -> &Q {
        &self.total
    }

    pub fn is_normal(&self) -> bool {
        self.total.is_one()
    }

    pub fn require_normal(&self) -> Result<()> {
        if self.is_normal() {
            Ok(())
        } else {
            Err(Error::NotNormal(format!("total weight is {}", format_q(&self.total))))
        }
    }

    /// Check the weight vector matches the graph's vertex count.
    pub fn require_fits(&self, g: &Graph) -> Result<()> {
        if self.w.len() != g.n() {
            return Err(Error::Invalid(format!(
                "weight function has {} entries for a graph on {} vertices",
                self.w.len(),
                g.n()
            )));
        }
        Ok(())
    }

    pub fn max(&self) -> Q {
        self.w.iter().max().cloned().unwrap_or_else(Q::zero)
    }

    pub fn of(&self, s: &VertexSet) -> Q {
        s.iter().fold(Q::zero(), |a, v| a + &self.w[v])
    }

    /// Restriction to the vertices of `s`, indexed by local id.
    pub fn restrict(&self, s: &VertexSet) -> WeightFunction {
        WeightFunction::new(s.iter().map(|v| self.w[v].clone()).collect())
            .expect("restriction keeps weights non-negative")
    }

    pub fn to_map(&self) -> BTreeMap<String, String> {
        self.w
            .iter()
            .enumerate()
            .map(|(v, x)| (v.to_string(), format_q(x)))
            .collect()
    }

    /// JSON object `{"vertex": "num/den"}`; missing vertices weigh 0.
    pub fn from_map(n: usize, map: &BTreeMap<String, String>) -> Result<WeightFunction> {
        let mut w = vec![Q::zero(); n];
        for (k, v) in map {
            let vertex: usize = k
                .parse()
                .map_err(|_| Error::Invalid(format!("bad vertex key {k:?}")))?;
            if vertex >= n {
                return Err(Error::VertexOutOfRange { vertex, n });
            }
            w[vertex] = parse_q(v)?;
        }
        WeightFunction::new(w)
    }

    pub fn from_json(n: usize, text: &str) -> Result<WeightFunction> {
        let map: BTreeMap<String, String> = serde_json::from_str(text)?;
        WeightFunction::from_map(n, &map)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_map()).expect("string map serializes")
    }
}

/// Serialized as a list of `num/den` strings indexed by vertex.
impl Serialize for WeightFunction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let strs: Vec<String> = self.w.iter().map(format_q).collect();
        strs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for WeightFunction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<WeightFunction, D::Error> {
        let strs = Vec::<String>::deserialize(d)?;
        let w = strs
            .iter()
            .map(|x| parse_q(x))
            .collect::<Result<Vec<Q>>>()
            .map_err(serde::de::Error::custom)?;
        WeightFunction::new(w).map_err(serde::de::Error::custom)
    }
}
