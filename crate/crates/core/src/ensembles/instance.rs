use crate::error::{invalid, Error, Result};
use crate::f2::{BitMatrix, BitVec};
use crate::rng::Stream;
use num_rational::Ratio;
use rand::Rng;
use serde::{Deserialize, Serialize};

/// Which sampler produced a matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Ensemble {
    Gallager,
    Bernoulli,
    RightRegular,
    /// Hand-built matrices such as fixed designs.
    Custom,
}

/// One MAX-k-XOR-SAT problem: maximize the number of `i` with `(Bz)_i = v_i`.
///
/// `k` is the largest row weight of `B`. `d` is the common column weight, or 0
/// when columns differ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XorSatInstance {
    b: BitMatrix,
    v: BitVec,
    k: usize,
    d: usize,
    seed: u64,
    ensemble: Ensemble,
}

impl XorSatInstance {
    pub fn new(b: BitMatrix, v: BitVec) -> Result<Self> {
        if v.len() != b.rows() {
            return Err(Error::DimensionMismatch {
                context: "parity vector",
                expected: b.rows(),
                got: v.len(),
            });
        }
        let k = b.row_weights().into_iter().max().unwrap_or(0);
        let cols = b.col_weights();
        let d = match cols.first() {
            Some(&first) if cols.iter().all(|&c| c == first) => first,
            _ => 0,
        };
        Ok(Self {
            b,
            v,
            k,
            d,
            seed: 0,
            ensemble: Ensemble::Custom,
        })
    }

    /// Records provenance for serialization.
    pub fn with_meta(mut self, seed: u64, ensemble: Ensemble) -> Self {
        self.seed = seed;
        self.ensemble = ensemble;
        self
    }

    /// Same matrix, different parities.
    pub fn with_parity(&self, v: BitVec) -> Result<Self> {
        if v.len() != self.m() {
            return Err(Error::DimensionMismatch {
                context: "parity vector",
                expected: self.m(),
                got: v.len(),
            });
        }
        let mut out = self.clone();
        out.v = v;
        Ok(out)
    }

    pub fn b(&self) -> &BitMatrix {
        &self.b
    }

    pub fn v(&self) -> &BitVec {
        &self.v
    }

    pub fn m(&self) -> usize {
        self.b.rows()
    }

    pub fn n(&self) -> usize {
        self.b.cols()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn ensemble(&self) -> Ensemble {
        self.ensemble
    }

    /// Clause density `m/n`. Panics when `n = 0`.
    pub fn lambda(&self) -> Ratio<usize> {
        Ratio::new(self.m(), self.n())
    }

    /// Whether every row has weight exactly `k` and every column exactly `d`.
    pub fn is_regular(&self) -> bool {
        self.d > 0 && self.b.row_weights().iter().all(|&w| w == self.k)
    }

    pub fn to_record(&self) -> InstanceRecord {
        InstanceRecord {
            m: self.m(),
            n: self.n(),
            k: self.k,
            d: self.d,
            b_rows: self.b.row_supports(),
            v: self.v.to_bitstring(),
            seed: self.seed,
            ensemble: self.ensemble,
        }
    }

    pub fn from_record(rec: &InstanceRecord) -> Result<Self> {
        if rec.b_rows.len() != rec.m || rec.v.len() != rec.m {
            return Err(invalid(format!(
                "record declares m = {} but has {} rows and {} parities",
                rec.m,
                rec.b_rows.len(),
                rec.v.len()
            )));
        }
        if rec
            .b_rows
            .iter()
            .any(|r| r.windows(2).any(|w| w[0] >= w[1]))
        {
            return Err(invalid("row supports must be strictly increasing"));
        }
        let b = BitMatrix::from_supports(rec.n, &rec.b_rows)?;
        let v = BitVec::from_bitstring(&rec.v)?;
        let inst = Self::new(b, v)?.with_meta(rec.seed, rec.ensemble);
        if inst.k != rec.k || inst.d != rec.d {
            return Err(invalid(format!(
                "record declares (k, d) = ({}, {}) but the matrix has ({}, {})",
                rec.k, rec.d, inst.k, inst.d
            )));
        }
        Ok(inst)
    }

    /// Compact JSON with the fixed key order.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_record()).expect("record serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let rec: InstanceRecord =
            serde_json::from_str(s).map_err(|e| invalid(format!("instance JSON: {e}")))?;
        Self::from_record(&rec)
    }
}

/// Serialized instance. Field order is part of the file format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceRecord {
    pub m: usize,
    pub n: usize,
    pub k: usize,
    pub d: usize,
    #[serde(rename = "B_rows")]
    pub b_rows: Vec<Vec<usize>>,
    pub v: String,
    pub seed: u64,
    pub ensemble: Ensemble,
}

/// Instance with `B = hᵀ` and uniform parities.
pub fn sample_instance(h: &BitMatrix, rng: &mut Stream) -> XorSatInstance {
    let b = h.transpose();
    let v = uniform_bitvec(b.rows(), rng);
    XorSatInstance::new(b, v).expect("dimensions agree by construction")
}

pub(crate) fn uniform_bitvec(len: usize, rng: &mut Stream) -> BitVec {
    let mut v = BitVec::zeros(len);
    for i in 0..len {
        if rng.gen::<bool>() {
            v.set(i, true);
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensembles::sample_gallager;
    use crate::rng::stream;

    #[test]
    fn instance_from_gallager_transpose() {
        let h = sample_gallager(6, 3, 3, &mut stream(4)).unwrap();
        let inst = sample_instance(&h, &mut stream(5));
        assert_eq!((inst.m(), inst.n(), inst.k(), inst.d()), (6, 6, 3, 3));
        assert!(inst.is_regular());
        assert_eq!(inst, sample_instance(&h, &mut stream(5)));
    }

    #[test]
    fn json_round_trip_is_byte_identical() {
        let h = sample_gallager(12, 3, 6, &mut stream(8)).unwrap();
        let inst = sample_instance(&h, &mut stream(9)).with_meta(9, Ensemble::Gallager);
        let s = inst.to_json();
        assert!(s.starts_with(r#"{"m":12,"n":6,"k":3,"d":6,"B_rows":[["#));
        assert!(s.ends_with(r#","seed":9,"ensemble":"gallager"}"#));
        let back = XorSatInstance::from_json(&s).unwrap();
        assert_eq!(back, inst);
        assert_eq!(back.to_json(), s);
    }

    #[test]
    fn inconsistent_records_are_rejected() {
        let h = sample_gallager(6, 3, 3, &mut stream(1)).unwrap();
        let mut rec = sample_instance(&h, &mut stream(1)).to_record();
        rec.k = 4;
        assert!(XorSatInstance::from_record(&rec).is_err());
    }
}
