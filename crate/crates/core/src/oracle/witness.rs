use serde::Serialize;

use crate::error::Result;
use crate::stabilizer::{
    min_weight_element, DistanceLimits, DistanceMode, PauliVector, StabilizerCode,
};

/// A minimum-weight `v` split as `v = v1 + v2`, where `v2` keeps the first
/// `t + 1` qubits of the support. Both halves share a syndrome, so a decoder
/// can return at most one of them correctly.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    #[serde(serialize_with = "sparse")]
    pub v: PauliVector,
    #[serde(serialize_with = "sparse")]
    pub v1: PauliVector,
    #[serde(serialize_with = "sparse")]
    pub v2: PauliVector,
    /// `Wt(v)`.
    pub distance: usize,
    /// `(distance - 1) / 2`.
    pub t: usize,
}

fn sparse<S: serde::Serializer>(v: &PauliVector, ser: S) -> std::result::Result<S::Ok, S::Error> {
    ser.serialize_str(&v.to_sparse_string())
}

fn split(v: PauliVector) -> Witness {
    let distance = v.weight();
    let t = (distance - 1) / 2;
    let support = v.support();
    let v2 = v.restrict(&support[..t + 1]);
    let v1 = v.add(&v2);
    Witness {
        v,
        v1,
        v2,
        distance,
        t,
    }
}

/// Split of a minimum-weight nonzero element of `N`.
pub fn failing_witness_nd(code: &StabilizerCode, limits: &DistanceLimits) -> Result<Witness> {
    Ok(split(min_weight_element(code, DistanceMode::DN, limits)?))
}

/// Split of a minimum-weight element of `N \ B`.
pub fn failing_witness_d(code: &StabilizerCode, limits: &DistanceLimits) -> Result<Witness> {
    Ok(split(min_weight_element(code, DistanceMode::D, limits)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stabilizer::build_toric;

    #[test]
    fn toric3_split() {
        let code = build_toric(3).unwrap();
        let w = failing_witness_d(&code, &DistanceLimits::default()).unwrap();
        assert_eq!((w.distance, w.t), (3, 1));
        assert_eq!(w.v2.weight(), 2);
        assert_eq!(w.v1.weight(), 1);
        assert_eq!(w.v1.add(&w.v2), w.v);
        assert!(code.in_normalizer(&w.v).unwrap());
        assert!(!code.in_stabilizer(&w.v).unwrap());
    }
}
