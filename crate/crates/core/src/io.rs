// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! JSON wire formats for images, maps and PL functions.
//!
//! ```text
//! image: { "dim": n, "points": [[ints]...], "adjacency": "c1" | ... | {"edges": [[i,j]...]} }
//! map:   { "domain": <image>, "codomain": <image>, "table": [codomain index per domain index] }
//! pl:    { "circular": bool, "breakpoints": [["p/q","r/s"], ...], "units": "turns" }
//! ```

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::digital::{AdjacencySpec, DigitalImage, LatticePoint};
use crate::error::{Result, ShyError};
use crate::maps::{DigitalMap, ShyVerdict};
use crate::pl::{AngleMap, PLFunction, PlShyVerdict};
use crate::rational::{parse_rational, IntervalUnion, Rational, RationalInterval};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AdjacencyJson {
    Named(String),
    Edges { edges: Vec<[usize; 2]> },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ImageJson {
    pub dim: usize,
    pub points: Vec<Vec<i64>>,
    pub adjacency: AdjacencyJson,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapJson {
    pub domain: ImageJson,
    pub codomain: ImageJson,
    pub table: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalJson {
    Text(String),
    Integer(i64),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlJson {
    #[serde(default)]
    pub circular: bool,
    pub breakpoints: Vec<[RationalJson; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub units: Option<String>,
}

fn parse_err(e: serde_json::Error) -> ShyError {
    ShyError::Parse(e.to_string())
}

impl TryFrom<&ImageJson> for DigitalImage {
    type Error = ShyError;

    fn try_from(j: &ImageJson) -> Result<Self> {
        let adjacency = match &j.adjacency {
            AdjacencyJson::Named(name) => {
                let u = name
                    .strip_prefix('c')
                    .and_then(|u| u.parse::<u32>().ok())
                    .ok_or_else(|| ShyError::Parse(format!("unknown adjacency `{name}`")))?;
                AdjacencySpec::Cu(u)
            }
            AdjacencyJson::Edges { edges } => AdjacencySpec::edges(edges.iter().map(|e| (e[0], e[1]))),
        };
        let points = j.points.iter().cloned().map(LatticePoint).collect();
        DigitalImage::new(j.dim, points, adjacency)
    }
}

impl From<&DigitalImage> for ImageJson {
    fn from(img: &DigitalImage) -> Self {
        let adjacency = match img.adjacency() {
            AdjacencySpec::Cu(u) => AdjacencyJson::Named(format!("c{u}")),
            AdjacencySpec::ExplicitEdges(_) => AdjacencyJson::Edges {
                edges: img.edges().map(|(a, b)| [a, b]).collect(),
            },
        };
        ImageJson {
            dim: img.dim(),
            points: img.points().iter().map(|p| p.coords().to_vec()).collect(),
            adjacency,
        }
    }
}

pub fn image_from_json(text: &str) -> Result<DigitalImage> {
    let j: ImageJson = serde_json::from_str(text).map_err(parse_err)?;
    DigitalImage::try_from(&j)
}

pub fn image_to_value(img: &DigitalImage) -> Value {
    serde_json::to_value(ImageJson::from(img)).expect("image serializes")
}

pub fn map_from_value(v: &Value) -> Result<DigitalMap> {
    let j: MapJson = serde_json::from_value(v.clone()).map_err(parse_err)?;
    let domain = Arc::new(DigitalImage::try_from(&j.domain)?);
    let codomain = Arc::new(DigitalImage::try_from(&j.codomain)?);
    DigitalMap::new(domain, codomain, j.table)
}

pub fn map_from_json(text: &str) -> Result<DigitalMap> {
    let v: Value = serde_json::from_str(text).map_err(parse_err)?;
    map_from_value(&v)
}

pub fn map_to_value(f: &DigitalMap) -> Value {
    let j = MapJson {
        domain: ImageJson::from(f.domain().as_ref()),
        codomain: ImageJson::from(f.codomain().as_ref()),
        table: f.table().to_vec(),
    };
    serde_json::to_value(j).expect("map serializes")
}

fn rational_from_json(r: &RationalJson) -> Result<Rational> {
    match r {
        RationalJson::Text(t) => parse_rational(t),
        RationalJson::Integer(n) => Ok(Rational::from_integer((*n).into())),
    }
}

pub fn pl_from_value(v: &Value) -> Result<PLFunction> {
    let j: PlJson = serde_json::from_value(v.clone()).map_err(parse_err)?;
    if let Some(u) = &j.units {
        if u != "turns" {
            return Err(ShyError::Parse(format!("unknown units `{u}`, expected \"turns\"")));
        }
    }
    let pts = j
        .breakpoints
        .iter()
        .map(|[x, y]| Ok((rational_from_json(x)?, rational_from_json(y)?)))
        .collect::<Result<Vec<_>>>()?;
    PLFunction::new(pts, j.circular)
}

pub fn pl_from_json(text: &str) -> Result<PLFunction> {
    let v: Value = serde_json::from_str(text).map_err(parse_err)?;
    pl_from_value(&v)
}

pub fn angle_map_from_json(text: &str) -> Result<AngleMap> {
    AngleMap::new(pl_from_json(text)?)
}

pub fn pl_to_value(f: &PLFunction) -> Value {
    json!({
        "circular": f.is_circular(),
        "breakpoints": f
            .breakpoints()
            .iter()
            .map(|(x, y)| [x.to_string(), y.to_string()])
            .collect::<Vec<_>>(),
    })
}

pub fn interval_to_value(i: &RationalInterval) -> Value {
    json!({
        "lo": i.lo().to_string(),
        "hi": i.hi().to_string(),
        "lo_closed": i.lo_closed(),
        "hi_closed": i.hi_closed(),
    })
}

pub fn union_to_value(u: &IntervalUnion) -> Value {
    Value::Array(u.parts().iter().map(interval_to_value).collect())
}

pub fn shy_verdict_to_value(f: &DigitalMap, v: &ShyVerdict) -> Value {
    let witness = v.witness.as_ref().map(|w| {
        json!({
            "subset": w.subset_points(f).iter().map(|p| p.coords()).collect::<Vec<_>>(),
            "preimage": w.preimage_points(f).iter().map(|p| p.coords()).collect::<Vec<_>>(),
        })
    });
    json!({"shy": v.shy, "witness": witness})
}

pub fn pl_verdict_to_value(v: &PlShyVerdict) -> Value {
    let witness = v.witness.as_ref().map(|w| {
        json!({
            "interval": interval_to_value(&w.interval),
            "preimage": union_to_value(&w.preimage),
        })
    });
    json!({"shy": v.shy, "witness": witness})
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn image_formats() {
        let img = image_from_json(r#"{"dim": 2, "points": [[0,0],[1,1]], "adjacency": "c2"}"#).unwrap();
        assert!(img.adjacent_idx(0, 1));
        let img = image_from_json(r#"{"dim": 1, "points": [[0],[5],[9]], "adjacency": {"edges": [[0,2]]}}"#)
            .unwrap();
        assert!(img.adjacent_idx(0, 2));
        assert!(!img.adjacent_idx(0, 1));
        assert!(image_from_json(r#"{"dim": 1, "points": [[0]], "adjacency": "k4"}"#).is_err());
        assert!(image_from_json(r#"{"dim": 1, "points": [[0]], "adjacency": {"edges": [[0,3]]}}"#).is_err());
        assert!(image_from_json("not json").is_err());
    }

    #[test]
    fn map_round_trip() {
        let c = Arc::new(DigitalImage::cycle(5));
        let f = DigitalMap::new(c.clone(), c, vec![1, 2, 3, 4, 0]).unwrap();
        let back = map_from_value(&map_to_value(&f)).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn pl_format() {
        let f = pl_from_json(r#"{"circular": false, "breakpoints": [["0","1/2"],["3/4", 2]]}"#).unwrap();
        assert_eq!(f.breakpoints()[0].1, rat(1, 2));
        assert_eq!(f.breakpoints()[1], (rat(3, 4), int(2)));
        assert_eq!(pl_from_value(&pl_to_value(&f)).unwrap(), f);
        let m = angle_map_from_json(r#"{"breakpoints": [["0","0"],["1/2","1/2"]], "units": "turns"}"#).unwrap();
        assert_eq!(m.total_variation(), &rat(1, 2));
        assert!(pl_from_json(r#"{"breakpoints": [["0","0"],["1","1"]], "units": "degrees"}"#).is_err());
    }
}
