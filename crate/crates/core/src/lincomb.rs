//! Finitely supported linear combinations with exact coefficients.

use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::Scalar;

/// A finitely supported map from basis keys to scalar coefficients.
///
/// Zero coefficients are never stored.  Keys are kept in their `Ord` order,
/// which makes iteration and serialization deterministic.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinComb<K: Ord, T: Scalar> {
    terms: BTreeMap<K, T>,
}

impl<K: Ord, T: Scalar> LinComb<K, T> {
    pub fn zero() -> Self {
        LinComb {
            terms: BTreeMap::new(),
        }
    }

    pub fn single(key: K, coeff: T) -> Self {
        let mut l = Self::zero();
        l.add_term(key, coeff);
        l
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, key: &K) -> T {
        self.terms.get(key).cloned().unwrap_or_else(T::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &T)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn add_term(&mut self, key: K, coeff: T) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(key);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self
    where
        K: Clone,
    {
        let mut out = self.clone();
        for (k, c) in other.iter() {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self
    where
        K: Clone,
    {
        let mut out = self.clone();
        for (k, c) in other.iter() {
            out.add_term(k.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, s: &T) -> Self
    where
        K: Clone,
    {
        let mut out = Self::zero();
        for (k, c) in self.iter() {
            out.add_term(k.clone(), c.clone() * s.clone());
        }
        out
    }

    pub fn neg(&self) -> Self
    where
        K: Clone,
    {
        let mut out = Self::zero();
        for (k, c) in self.iter() {
            out.add_term(k.clone(), -c.clone());
        }
        out
    }

    /// Applies a key-linear map term by term.
    pub fn map_terms<K2: Ord + Clone>(
        &self,
        mut f: impl FnMut(&K, &T) -> LinComb<K2, T>,
    ) -> LinComb<K2, T> {
        let mut out = LinComb::zero();
        for (k, c) in self.iter() {
            for (k2, c2) in f(k, c).iter() {
                out.add_term(k2.clone(), c2.clone());
            }
        }
        out
    }

    pub fn into_terms(self) -> BTreeMap<K, T> {
        self.terms
    }
}

impl<K: Ord + Clone, T: Scalar> FromIterator<(K, T)> for LinComb<K, T> {
    fn from_iter<I: IntoIterator<Item = (K, T)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (k, c) in iter {
            out.add_term(k, c);
        }
        out
    }
}

impl<K: Ord + fmt::Display, T: Scalar> fmt::Display for LinComb<K, T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let one = T::one();
        let minus_one = -T::one();
        for (i, (k, c)) in self.iter().enumerate() {
            if i == 0 {
                if *c == one {
                    write!(f, "{}", k)?;
                } else if *c == minus_one {
                    write!(f, "-{}", k)?;
                } else {
                    write!(f, "{}*{}", c, k)?;
                }
            } else if c.is_positive() {
                if *c == one {
                    write!(f, " + {}", k)?;
                } else {
                    write!(f, " + {}*{}", c, k)?;
                }
            } else {
                let a = c.abs();
                if a == one {
                    write!(f, " - {}", k)?;
                } else {
                    write!(f, " - {}*{}", a, k)?;
                }
            }
        }
        Ok(())
    }
}

impl<K: Ord + fmt::Display, T: Scalar> fmt::Debug for LinComb<K, T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
