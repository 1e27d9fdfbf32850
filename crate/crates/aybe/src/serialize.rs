//! JSON and CSV wire formats.
//!
//! Tensors serialize as flat row-major entry lists over their index tuple,
//! each complex number as an `[re, im]` pair; every JSON document carries
//! `schema: 1`. JSON floats round-trip bit-exactly (shortest-representation
//! printing), which the CLI round-trip contract relies on.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, C64};
use crate::laurent::LaurentExpansion;
use crate::tensor::{ThreeTensor, TwoTensor};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TwoTensorDoc {
    pub schema: u32,
    pub kind: String,
    pub n: usize,
    /// Row-major over `[a, b, c, d]`: coefficient of `E_ab (x) E_cd`.
    pub entries: Vec<[f64; 2]>,
}

impl TwoTensorDoc {
    pub fn from_tensor(t: &TwoTensor) -> Self {
        TwoTensorDoc {
            schema: SCHEMA_VERSION,
            kind: "two_tensor".to_string(),
            n: t.n(),
            entries: t.entries().iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    pub fn to_tensor(&self) -> Result<TwoTensor> {
        if self.schema != SCHEMA_VERSION {
            return Err(Error::parameter(format!(
                "unsupported schema {}",
                self.schema
            )));
        }
        let entries = self.entries.iter().map(|p| C64::new(p[0], p[1])).collect();
        TwoTensor::from_entries(self.n, entries)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ThreeTensorDoc {
    pub schema: u32,
    pub kind: String,
    pub n: usize,
    /// Row-major over `[a, b, c, d, e, f]`.
    pub entries: Vec<[f64; 2]>,
}

impl ThreeTensorDoc {
    pub fn from_tensor(t: &ThreeTensor) -> Self {
        ThreeTensorDoc {
            schema: SCHEMA_VERSION,
            kind: "three_tensor".to_string(),
            n: t.n(),
            entries: t.entries().iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LaurentDoc {
    pub schema: u32,
    pub kind: String,
    pub n: usize,
    pub x1: [f64; 2],
    pub x2: [f64; 2],
    pub circle_radius: f64,
    pub sample_count: usize,
    pub est_error: f64,
    /// Map from order ("-1", "0", "1", "2") to the flat entry list.
    pub coefficients: BTreeMap<String, Vec<[f64; 2]>>,
}

impl LaurentDoc {
    pub fn from_expansion(n: usize, e: &LaurentExpansion) -> Self {
        LaurentDoc {
            schema: SCHEMA_VERSION,
            kind: "laurent_expansion".to_string(),
            n,
            x1: [e.x1.re, e.x1.im],
            x2: [e.x2.re, e.x2.im],
            circle_radius: e.circle_radius,
            sample_count: e.sample_count,
            est_error: e.est_error,
            coefficients: e
                .coefficients
                .iter()
                .map(|(k, t)| {
                    (
                        k.to_string(),
                        t.entries().iter().map(|z| [z.re, z.im]).collect(),
                    )
                })
                .collect(),
        }
    }
}

/// CSV rows `a,b,c,d,re,im` for a two-tensor, with a header line.
pub fn two_tensor_csv(t: &TwoTensor) -> String {
    let n = t.n();
    let mut out = String::from("a,b,c,d,re,im\n");
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let z = t.get(a, b, c, d);
                    out.push_str(&format!("{a},{b},{c},{d},{},{}\n", z.re, z.im));
                }
            }
        }
    }
    out
}

/// CSV rows `order,a,b,c,d,re,im` for an expansion.
pub fn laurent_csv(e: &LaurentExpansion) -> String {
    let mut out = String::from("order,a,b,c,d,re,im\n");
    for (&order, t) in &e.coefficients {
        let n = t.n();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let z = t.get(a, b, c, d);
                        out.push_str(&format!("{order},{a},{b},{c},{d},{},{}\n", z.re, z.im));
                    }
                }
            }
        }
    }
    out
}
