//! Binary and JSON file formats for TT-tensors.
//!
//! Binary layout, all integers and floats little-endian:
//!
//! | bytes            | content                                         |
//! |------------------|-------------------------------------------------|
//! | 4                | magic `TTV1`                                    |
//! | 4                | `d` as `u32`                                    |
//! | 8 d              | mode sizes `N_1 .. N_d` as `u64`                |
//! | 8 (d + 1)        | ranks `R_0 .. R_d` as `u64`, `R_0 = R_d = 1`    |
//! | 8 sum R N R      | cores in order, each row-major `f64`            |
//!
//! The JSON sidecar carries the same fields with each core as a flat array.

use std::fs;
use std::path::Path;

use ndarray::Array3;
use serde::{Deserialize, Serialize};

use crate::error::{Result, TtError};
use crate::tensor::{TtCore, TtTensor};

pub const MAGIC: &[u8; 4] = b"TTV1";

pub fn to_bytes(t: &TtTensor) -> Vec<u8> {
    let payload: usize = t.cores().iter().map(|c| c.data().len()).sum();
    let mut out = Vec::with_capacity(8 + 16 * (t.ndim() + 1) + 8 * payload);
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&(t.ndim() as u32).to_le_bytes());
    for n in t.shape() {
        out.extend_from_slice(&(n as u64).to_le_bytes());
    }
    for r in t.ranks() {
        out.extend_from_slice(&(r as u64).to_le_bytes());
    }
    for core in t.cores() {
        for v in core.data().iter() {
            out.extend_from_slice(&v.to_le_bytes());
        }
    }
    out
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize, what: &str) -> Result<&'a [u8]> {
        let end = self
            .pos
            .checked_add(n)
            .filter(|&e| e <= self.bytes.len())
            .ok_or_else(|| TtError::Parse(format!("truncated while reading {what} at byte {}", self.pos)))?;
        let chunk = &self.bytes[self.pos..end];
        self.pos = end;
        Ok(chunk)
    }

    fn u32(&mut self, what: &str) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4, what)?.try_into().expect("4 bytes")))
    }

    fn u64(&mut self, what: &str) -> Result<usize> {
        let v = u64::from_le_bytes(self.take(8, what)?.try_into().expect("8 bytes"));
        usize::try_from(v).map_err(|_| TtError::Parse(format!("{what} {v} does not fit in memory")))
    }
}

pub fn from_bytes(bytes: &[u8]) -> Result<TtTensor> {
    if bytes.is_empty() {
        return Err(TtError::Parse("empty input".into()));
    }
    let mut rd = Reader { bytes, pos: 0 };
    if rd.take(4, "magic")? != MAGIC {
        return Err(TtError::Parse("bad magic, expected TTV1".into()));
    }
    let d = rd.u32("dimension")? as usize;
    if d == 0 {
        return Err(TtError::Parse("dimension is 0".into()));
    }
    let shape = (0..d).map(|_| rd.u64("mode size")).collect::<Result<Vec<_>>>()?;
    let ranks = (0..=d).map(|_| rd.u64("rank")).collect::<Result<Vec<_>>>()?;
    check_header(&shape, &ranks)?;

    let mut arrays = Vec::with_capacity(d);
    for i in 0..d {
        let dim = (ranks[i], shape[i], ranks[i + 1]);
        let count = dim
            .0
            .checked_mul(dim.1)
            .and_then(|x| x.checked_mul(dim.2))
            .ok_or_else(|| TtError::Parse(format!("core {} is too large", i + 1)))?;
        let raw = rd.take(count.saturating_mul(8), "core data")?;
        let values = raw.chunks_exact(8).map(|c| f64::from_le_bytes(c.try_into().expect("8 bytes"))).collect();
        arrays.push(Array3::from_shape_vec(dim, values).expect("sized"));
    }
    if rd.pos != bytes.len() {
        return Err(TtError::Parse(format!("{} trailing bytes", bytes.len() - rd.pos)));
    }
    TtTensor::from_arrays(arrays)
}

fn check_header(shape: &[usize], ranks: &[usize]) -> Result<()> {
    let d = shape.len();
    if let Some(i) = shape.iter().position(|&n| n == 0) {
        return Err(TtError::InvalidCore { core: i + 1, reason: "mode size 0".into() });
    }
    if ranks[0] != 1 {
        return Err(TtError::InvalidCore { core: 1, reason: format!("R_0 = {}, expected 1", ranks[0]) });
    }
    if ranks[d] != 1 {
        return Err(TtError::InvalidCore { core: d, reason: format!("R_{d} = {}, expected 1", ranks[d]) });
    }
    if let Some(i) = ranks.iter().position(|&r| r == 0) {
        return Err(TtError::InvalidCore { core: i, reason: format!("R_{i} = 0") });
    }
    Ok(())
}

pub fn write_file(t: &TtTensor, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, to_bytes(t))?;
    Ok(())
}

pub fn read_file(path: impl AsRef<Path>) -> Result<TtTensor> {
    from_bytes(&fs::read(path)?)
}

/// JSON mirror of the binary format, for debugging.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TtJson {
    pub format: String,
    pub shape: Vec<usize>,
    pub ranks: Vec<usize>,
    pub cores: Vec<Vec<f64>>,
}

pub fn to_json(t: &TtTensor) -> Result<String> {
    let doc = TtJson {
        format: "TTV1".into(),
        shape: t.shape(),
        ranks: t.ranks(),
        cores: t.cores().iter().map(|c| c.data().iter().copied().collect()).collect(),
    };
    Ok(serde_json::to_string_pretty(&doc)?)
}

pub fn from_json(text: &str) -> Result<TtTensor> {
    let doc: TtJson = serde_json::from_str(text)?;
    let d = doc.shape.len();
    if d == 0 || doc.ranks.len() != d + 1 || doc.cores.len() != d {
        return Err(TtError::Parse(format!(
            "inconsistent field lengths: {} modes, {} ranks, {} cores",
            d,
            doc.ranks.len(),
            doc.cores.len()
        )));
    }
    check_header(&doc.shape, &doc.ranks)?;
    let cores = doc
        .cores
        .into_iter()
        .enumerate()
        .map(|(i, values)| {
            let dim = (doc.ranks[i], doc.shape[i], doc.ranks[i + 1]);
            let data = Array3::from_shape_vec(dim, values).map_err(|_| TtError::InvalidCore {
                core: i + 1,
                reason: format!("expected {} values", dim.0 * dim.1 * dim.2),
            })?;
            TtCore::new(data).map_err(|e| match e {
                TtError::InvalidCore { reason, .. } => TtError::InvalidCore { core: i + 1, reason },
                other => other,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    TtTensor::new(cores)
}
