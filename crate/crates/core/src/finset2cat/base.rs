//! Finite sets, maps between them, and sheaves of vector spaces on them.
//!
//! A sheaf on a finite set is just a choice of vector space per point, and
//! its sections over a subset are the product of the stalks.  Everything in
//! this module is therefore determined by stalk dimensions.

use serde::{Deserialize, Serialize};

use crate::error::SheafError;

/// A finite set with elements `0..n-1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct FinSet {
    pub size: usize,
}

impl FinSet {
    pub fn new(size: usize) -> Self {
        FinSet { size }
    }

    pub fn elems(&self) -> std::ops::Range<usize> {
        0..self.size
    }
}

/// A map of finite sets, stored as its value table.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FinMap {
    source: FinSet,
    target: FinSet,
    table: Vec<usize>,
}

impl FinMap {
    pub fn new(source: FinSet, target: FinSet, table: Vec<usize>) -> Result<Self, SheafError> {
        if table.len() != source.size {
            return Err(SheafError::BaseMismatch {
                expected: source.size,
                found: table.len(),
            });
        }
        if let Some(&v) = table.iter().find(|&&v| v >= target.size) {
            return Err(SheafError::MapOutOfRange {
                value: v,
                size: target.size,
            });
        }
        Ok(FinMap {
            source,
            target,
            table,
        })
    }

    pub fn identity(s: FinSet) -> Self {
        FinMap {
            source: s,
            target: s,
            table: s.elems().collect(),
        }
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &FinMap) -> Result<FinMap, SheafError> {
        if other.target != self.source {
            return Err(SheafError::BaseMismatch {
                expected: self.source.size,
                found: other.target.size,
            });
        }
        Ok(FinMap {
            source: other.source,
            target: self.target,
            table: other.table.iter().map(|&v| self.table[v]).collect(),
        })
    }

    pub fn source(&self) -> FinSet {
        self.source
    }

    pub fn target(&self) -> FinSet {
        self.target
    }

    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    /// The preimage of a point, in increasing order.
    pub fn fiber(&self, y: usize) -> Vec<usize> {
        self.table
            .iter()
            .enumerate()
            .filter(|&(_, &v)| v == y)
            .map(|(i, _)| i)
            .collect()
    }

    /// All maps from `source` to `target`, in lexicographic table order.
    pub fn enumerate(source: FinSet, target: FinSet) -> Vec<FinMap> {
        if source.size == 0 {
            return vec![FinMap {
                source,
                target,
                table: vec![],
            }];
        }
        if target.size == 0 {
            return vec![];
        }
        let mut out = Vec::new();
        let mut table = vec![0usize; source.size];
        loop {
            out.push(FinMap {
                source,
                target,
                table: table.clone(),
            });
            let mut i = source.size;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                table[i] += 1;
                if table[i] < target.size {
                    break;
                }
                table[i] = 0;
            }
        }
    }
}

impl Serialize for FinMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("FinMap", 3)?;
        st.serialize_field("source", &self.source.size)?;
        st.serialize_field("target", &self.target.size)?;
        st.serialize_field("table", &self.table)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for FinMap {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            source: usize,
            target: usize,
            table: Vec<usize>,
        }
        let raw = Raw::deserialize(d)?;
        FinMap::new(FinSet::new(raw.source), FinSet::new(raw.target), raw.table)
            .map_err(serde::de::Error::custom)
    }
}

/// A sheaf of vector spaces on a finite set, given by stalk dimensions.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SheafObj {
    pub base: FinSet,
    pub dims: Vec<usize>,
}

impl SheafObj {
    pub fn new(base: FinSet, dims: Vec<usize>) -> Result<Self, SheafError> {
        if dims.len() != base.size {
            return Err(SheafError::BaseMismatch {
                expected: base.size,
                found: dims.len(),
            });
        }
        Ok(SheafObj { base, dims })
    }

    /// The skyscraper with a 1-dimensional stalk at `point`.
    pub fn skyscraper(base: FinSet, point: usize) -> Self {
        let mut dims = vec![0; base.size];
        dims[point] = 1;
        SheafObj { base, dims }
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }
}

/// The inverse image: stalk at `a` is the stalk of `w` at `φ(a)`.
pub fn pullback(phi: &FinMap, w: &SheafObj) -> Result<SheafObj, SheafError> {
    if w.base != phi.target() {
        return Err(SheafError::BaseMismatch {
            expected: phi.target().size,
            found: w.base.size,
        });
    }
    Ok(SheafObj {
        base: phi.source(),
        dims: phi.table.iter().map(|&t| w.dims[t]).collect(),
    })
}

/// The direct image: stalk at `b` is the sections over the fiber of `b`.
pub fn pushforward(phi: &FinMap, v: &SheafObj) -> Result<SheafObj, SheafError> {
    if v.base != phi.source() {
        return Err(SheafError::BaseMismatch {
            expected: phi.source().size,
            found: v.base.size,
        });
    }
    let mut dims = vec![0; phi.target().size];
    for (a, &d) in v.dims.iter().enumerate() {
        dims[phi.apply(a)] += d;
    }
    Ok(SheafObj {
        base: phi.target(),
        dims,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_validation() {
        let s2 = FinSet::new(2);
        let s1 = FinSet::new(1);
        assert!(FinMap::new(s2, s1, vec![0, 0]).is_ok());
        assert!(matches!(
            FinMap::new(s2, s1, vec![0, 1]),
            Err(SheafError::MapOutOfRange { value: 1, size: 1 })
        ));
        assert!(FinMap::new(s2, s1, vec![0]).is_err());
    }

    #[test]
    fn map_json_round_trip() {
        let m: FinMap = serde_json::from_str(r#"{"source":2,"target":1,"table":[0,0]}"#).unwrap();
        assert_eq!(m, FinMap::new(FinSet::new(2), FinSet::new(1), vec![0, 0]).unwrap());
        let text = serde_json::to_string(&m).unwrap();
        let back: FinMap = serde_json::from_str(&text).unwrap();
        assert_eq!(back, m);
        assert!(serde_json::from_str::<FinMap>(r#"{"source":1,"target":1,"table":[2]}"#).is_err());
    }

    #[test]
    fn identity_push_pull() {
        let s = FinSet::new(3);
        let id = FinMap::identity(s);
        let v = SheafObj::new(s, vec![1, 2, 0]).unwrap();
        assert_eq!(pullback(&id, &v).unwrap(), v);
        assert_eq!(pushforward(&id, &v).unwrap(), v);
    }

    #[test]
    fn constant_map_examples() {
        let phi = FinMap::new(FinSet::new(2), FinSet::new(1), vec![0, 0]).unwrap();
        let v = SheafObj::new(FinSet::new(2), vec![1, 1]).unwrap();
        assert_eq!(pushforward(&phi, &v).unwrap().dims, vec![2]);
        let w = SheafObj::new(FinSet::new(1), vec![3]).unwrap();
        assert_eq!(pullback(&phi, &w).unwrap().dims, vec![3, 3]);
        assert!(pullback(&phi, &v).is_err());
        assert!(pushforward(&phi, &w).is_err());
    }

    #[test]
    fn enumerate_counts() {
        let maps = FinMap::enumerate(FinSet::new(2), FinSet::new(3));
        assert_eq!(maps.len(), 9);
        assert_eq!(FinMap::enumerate(FinSet::new(0), FinSet::new(3)).len(), 1);
        assert_eq!(FinMap::enumerate(FinSet::new(2), FinSet::new(0)).len(), 0);
    }
}
