//! The normalized Hochschild complex 𝔠A of a connected DGA.
//!
//! A word `a0[a1|...|ak]` has degree `|a0| + Σ (|ai| - 1)`; its letters lie in positive
//! degrees. The differential is `d1 + d2` with the signs
//! `ε_i = |a0| + Σ_{j<i} (|aj| - 1)`:
//!
//! ```text
//! d1 = d(a0)[...] - Σ_i (-1)^{ε_i} a0[...|d ai|...]
//! d2 = (-1)^{|a0|} a0 a1[a2|...] + Σ_{i>=2} (-1)^{ε_i} a0[...|a_{i-1} a_i|...]
//!      - (-1)^{(|ak| - 1) ε_k} ak a0[a1|...|a_{k-1}]
//! ```

use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::algebra::{GradedAlgebra, PiAlgebra};
use crate::chain::Chain;
use crate::complex::{homology_at, ChainComplex, IndexedBasis, PiComplex};
use crate::error::Result;
use crate::field::PrimeField;
use crate::linalg::HomologySpace;

mod phi;
mod shuffle;

pub use phi::{phi, phi_on_chain};
pub use shuffle::{iterated_shuffle, shuffle_explicit, shuffle_pair, shuffle_product, wrap_tensor};

/// A basis element `a0[a1|...|ak]` of the normalized Hochschild complex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HWord<E> {
    pub a0: E,
    pub letters: Vec<E>,
}

impl<E: Ord> PartialOrd for HWord<E> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<E: Ord> Ord for HWord<E> {
    /// Shorter bar length first, then `a0`, then the letters.
    fn cmp(&self, other: &Self) -> Ordering {
        self.letters
            .len()
            .cmp(&other.letters.len())
            .then_with(|| self.a0.cmp(&other.a0))
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl<E> HWord<E> {
    pub fn new(a0: E, letters: Vec<E>) -> Self {
        HWord { a0, letters }
    }
}

/// 𝔠A, optionally restricted to one weight.
pub struct HochschildComplex<A: GradedAlgebra> {
    alg: Arc<A>,
    weight: Option<u32>,
    cache: Mutex<HashMap<i32, Arc<IndexedBasis<HWord<A::Elem>>>>>,
}

impl<A: GradedAlgebra> HochschildComplex<A> {
    pub fn new(alg: Arc<A>) -> Self {
        HochschildComplex {
            alg,
            weight: None,
            cache: Mutex::new(HashMap::new()),
        }
    }

    /// The summand of one weight; a subcomplex when the algebra's weights are respected by
    /// product and differential.
    pub fn with_weight(alg: Arc<A>, weight: u32) -> Self {
        HochschildComplex {
            alg,
            weight: Some(weight),
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn algebra(&self) -> &Arc<A> {
        &self.alg
    }

    pub fn weight_filter(&self) -> Option<u32> {
        self.weight
    }

    pub fn word_weight(&self, w: &HWord<A::Elem>) -> u32 {
        self.alg.weight(&w.a0) + w.letters.iter().map(|a| self.alg.weight(a)).sum::<u32>()
    }

    fn epsilons(&self, w: &HWord<A::Elem>) -> Vec<i64> {
        // eps[i-1] = ε_i
        let mut out = Vec::with_capacity(w.letters.len());
        let mut e = self.alg.degree(&w.a0) as i64;
        for a in &w.letters {
            out.push(e);
            e += self.alg.degree(a) as i64 - 1;
        }
        out
    }

    /// Expand `a0[a1|...|ak]` multilinearly from chains, dropping unit components of letters.
    pub fn from_chains(
        &self,
        a0: &Chain<A::Elem>,
        letters: &[Chain<A::Elem>],
    ) -> Chain<HWord<A::Elem>> {
        let f = self.alg.field();
        let mut acc: Chain<Vec<A::Elem>> = Chain::from_key(Vec::new());
        for l in letters {
            let mut next = Chain::zero();
            for (prefix, c) in acc.iter() {
                for (e, k) in l.iter() {
                    if self.alg.is_unit(e) || self.alg.degree(e) <= 0 {
                        continue;
                    }
                    let mut v = prefix.clone();
                    v.push(e.clone());
                    next.add_term(f, v, f.mul(*c, *k));
                }
            }
            acc = next;
            if acc.is_zero() {
                return Chain::zero();
            }
        }
        let mut out = Chain::zero();
        for (e, k) in a0.iter() {
            for (ls, c) in acc.iter() {
                out.add_term(f, HWord::new(e.clone(), ls.clone()), f.mul(*k, *c));
            }
        }
        out
    }

    pub fn d1(&self, w: &HWord<A::Elem>) -> Result<Chain<HWord<A::Elem>>> {
        let f = self.alg.field();
        let alg = &*self.alg;
        let mut out = Chain::zero();
        let letters: Vec<Chain<A::Elem>> = w
            .letters
            .iter()
            .map(|a| Chain::from_key(a.clone()))
            .collect();
        let da0 = alg.differential_basis(&w.a0)?;
        out.add_scaled(f, &self.from_chains(&da0, &letters), 1);
        let eps = self.epsilons(w);
        let a0 = Chain::from_key(w.a0.clone());
        for i in 0..w.letters.len() {
            let mut ls = letters.clone();
            ls[i] = alg.differential_basis(&w.letters[i])?;
            out.add_scaled(f, &self.from_chains(&a0, &ls), f.neg(f.sign(eps[i])));
        }
        Ok(out)
    }

    pub fn d2(&self, w: &HWord<A::Elem>) -> Result<Chain<HWord<A::Elem>>> {
        let f = self.alg.field();
        let alg = &*self.alg;
        let k = w.letters.len();
        let mut out = Chain::zero();
        if k == 0 {
            return Ok(out);
        }
        let eps = self.epsilons(w);
        let letters: Vec<Chain<A::Elem>> = w
            .letters
            .iter()
            .map(|a| Chain::from_key(a.clone()))
            .collect();
        let a0 = Chain::from_key(w.a0.clone());
        let first = alg.multiply_basis(&w.a0, &w.letters[0])?;
        out.add_scaled(
            f,
            &self.from_chains(&first, &letters[1..]),
            f.sign(alg.degree(&w.a0) as i64),
        );
        for i in 1..k {
            let mut ls: Vec<Chain<A::Elem>> = letters[..i - 1].to_vec();
            ls.push(alg.multiply_basis(&w.letters[i - 1], &w.letters[i])?);
            ls.extend_from_slice(&letters[i + 1..]);
            out.add_scaled(f, &self.from_chains(&a0, &ls), f.sign(eps[i]));
        }
        let last = &w.letters[k - 1];
        let wrap = alg.multiply_basis(last, &w.a0)?;
        let sign = f.sign((alg.degree(last) as i64 - 1) * eps[k - 1]);
        out.add_scaled(f, &self.from_chains(&wrap, &letters[..k - 1]), f.neg(sign));
        Ok(out)
    }

    pub fn label(&self, w: &HWord<A::Elem>) -> String {
        let letters: Vec<String> = w.letters.iter().map(|a| self.alg.label(a)).collect();
        format!("{}[{}]", self.alg.label(&w.a0), letters.join("|"))
    }

    pub fn label_chain(&self, x: &Chain<HWord<A::Elem>>) -> String {
        crate::algebra::label_terms(self.alg.field(), x.iter().map(|(w, c)| (self.label(w), *c)))
    }

    fn enumerate(&self, n: i32) -> Result<Vec<HWord<A::Elem>>> {
        let alg = &*self.alg;
        let mut out = Vec::new();
        let target = self.weight;
        for d0 in 0..=n {
            for a0 in alg.basis(d0)? {
                let w0 = alg.weight(&a0);
                if target.is_some_and(|t| w0 > t) {
                    continue;
                }
                let mut stack = Vec::new();
                self.letters_rec(n - d0, w0, &mut stack, &mut |ls| {
                    out.push(HWord::new(a0.clone(), ls.to_vec()));
                })?;
            }
        }
        out.sort();
        Ok(out)
    }

    fn letters_rec(
        &self,
        remaining: i32,
        weight: u32,
        stack: &mut Vec<A::Elem>,
        emit: &mut dyn FnMut(&[A::Elem]),
    ) -> Result<()> {
        if remaining == 0 {
            if self.weight.is_none_or(|t| t == weight) {
                emit(stack);
            }
            return Ok(());
        }
        for c in 1..=remaining {
            for a in self.alg.basis(c + 1)? {
                let wa = weight + self.alg.weight(&a);
                if self.weight.is_some_and(|t| wa > t) {
                    continue;
                }
                stack.push(a);
                self.letters_rec(remaining - c, wa, stack, emit)?;
                stack.pop();
            }
        }
        Ok(())
    }

    pub fn homology(&self, n: i32) -> Result<HochschildHomology<A::Elem>> {
        let space = homology_at(self, n)?;
        let basis = self.indexed_basis(n)?;
        Ok(HochschildHomology {
            field: self.alg.field(),
            degree: n,
            basis,
            space,
        })
    }
}

impl<A: GradedAlgebra> ChainComplex for HochschildComplex<A> {
    type Elem = HWord<A::Elem>;

    fn field(&self) -> PrimeField {
        self.alg.field()
    }

    fn degree(&self, w: &HWord<A::Elem>) -> i32 {
        self.alg.degree(&w.a0)
            + w.letters
                .iter()
                .map(|a| self.alg.degree(a) - 1)
                .sum::<i32>()
    }

    fn indexed_basis(&self, degree: i32) -> Result<Arc<IndexedBasis<HWord<A::Elem>>>> {
        if let Some(b) = self.cache.lock().expect("cache").get(&degree) {
            return Ok(b.clone());
        }
        let b = Arc::new(IndexedBasis::new(if degree < 0 {
            Vec::new()
        } else {
            self.enumerate(degree)?
        }));
        self.cache.lock().expect("cache").insert(degree, b.clone());
        Ok(b)
    }

    fn differential_basis(&self, w: &HWord<A::Elem>) -> Result<Chain<HWord<A::Elem>>> {
        let mut out = self.d1(w)?;
        out.add_scaled(self.alg.field(), &self.d2(w)?, 1);
        Ok(out)
    }
}

impl<A: PiAlgebra> PiComplex for HochschildComplex<A> {
    /// Letterwise action.
    fn tau_basis(&self, w: &HWord<A::Elem>) -> Result<Chain<HWord<A::Elem>>> {
        let a0 = self.alg.tau_basis(&w.a0)?;
        let letters: Vec<Chain<A::Elem>> = w
            .letters
            .iter()
            .map(|a| self.alg.tau_basis(a))
            .collect::<Result<_>>()?;
        Ok(self.from_chains(&a0, &letters))
    }
}

/// Homology of 𝔠A in one degree with its representative basis.
#[derive(Debug, Clone)]
pub struct HochschildHomology<E> {
    field: PrimeField,
    pub degree: i32,
    pub basis: Arc<IndexedBasis<HWord<E>>>,
    pub space: HomologySpace,
}

impl<E: Clone + Eq + Ord + std::hash::Hash + std::fmt::Debug> HochschildHomology<E> {
    pub fn dimension(&self) -> usize {
        self.space.dimension()
    }

    pub fn representative(&self, j: usize) -> Chain<HWord<E>> {
        self.basis
            .from_sparse(self.field, &self.space.representatives()[j])
    }

    /// Coordinates of the class of a cycle.
    pub fn project(&self, z: &Chain<HWord<E>>) -> Result<Vec<u32>> {
        self.space.project(&self.basis.to_sparse(z)?)
    }
}
