use std::collections::btree_map::{self, BTreeMap};

use crate::field::PrimeField;

/// A finite F_p-linear combination of basis keys. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chain<K: Ord> {
    terms: BTreeMap<K, u32>,
}

impl<K: Ord> Default for Chain<K> {
    fn default() -> Self {
        Chain {
            terms: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone> Chain<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_key(k: K) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(k, 1);
        Chain { terms }
    }

    pub fn term(f: PrimeField, k: K, c: u32) -> Self {
        let mut out = Self::zero();
        out.add_term(f, k, c);
        out
    }

    pub fn from_terms(f: PrimeField, it: impl IntoIterator<Item = (K, u32)>) -> Self {
        let mut out = Self::zero();
        for (k, c) in it {
            out.add_term(f, k, c);
        }
        out
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

    pub fn coefficient(&self, k: &K) -> u32 {
        self.terms.get(k).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> btree_map::Iter<'_, K, u32> {
        self.terms.iter()
    }

    pub fn keys(&self) -> btree_map::Keys<'_, K, u32> {
        self.terms.keys()
    }

    pub fn add_term(&mut self, f: PrimeField, k: K, c: u32) {
        let c = c % f.p();
        if c == 0 {
            return;
        }
        match self.terms.entry(k) {
            btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            btree_map::Entry::Occupied(mut e) => {
                let s = f.add(*e.get(), c);
                if s == 0 {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, f: PrimeField, other: &Chain<K>, c: u32) {
        if c % f.p() == 0 {
            return;
        }
        for (k, v) in other.iter() {
            self.add_term(f, k.clone(), f.mul(*v, c));
        }
    }

    pub fn add(&self, f: PrimeField, other: &Chain<K>) -> Chain<K> {
        let mut out = self.clone();
        out.add_scaled(f, other, 1);
        out
    }

    pub fn sub(&self, f: PrimeField, other: &Chain<K>) -> Chain<K> {
        let mut out = self.clone();
        out.add_scaled(f, other, f.p() - 1);
        out
    }

    pub fn scale(&self, f: PrimeField, c: u32) -> Chain<K> {
        let mut out = Chain::zero();
        out.add_scaled(f, self, c);
        out
    }

    /// Extend a map on basis keys linearly.
    pub fn map_linear<K2: Ord + Clone, E>(
        &self,
        f: PrimeField,
        mut g: impl FnMut(&K) -> Result<Chain<K2>, E>,
    ) -> Result<Chain<K2>, E> {
        let mut out = Chain::zero();
        for (k, c) in self.iter() {
            out.add_scaled(f, &g(k)?, *c);
        }
        Ok(out)
    }

    pub fn retain(&mut self, mut keep: impl FnMut(&K) -> bool) {
        self.terms.retain(|k, _| keep(k));
    }

    pub fn into_terms(self) -> impl Iterator<Item = (K, u32)> {
        self.terms.into_iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancellation_removes_terms() {
        let f = PrimeField::new(3).unwrap();
        let mut c = Chain::term(f, "a", 1);
        c.add_term(f, "a", 2);
        assert!(c.is_zero());
        c.add_term(f, "b", 4);
        assert_eq!(c.coefficient(&"b"), 1);
    }
}
