use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use super::kappa::StructuralMap;
use super::lift::{chain_degree, lift_cycle};
use crate::algebra::{FreeAlgebra, GradedAlgebra, TensorPower, VhatModel, Word};
use crate::chain::Chain;
use crate::complex::ChainComplex;
use crate::error::{Error, Result};
use crate::hochschild::{phi, shuffle_pair, wrap_tensor, HWord, HochschildComplex};
use crate::resolution::{HomAlgebra, HomElement, WQuotient};

pub type SquareComplex = HochschildComplex<TensorPower<FreeAlgebra>>;
pub type HatComplex = HochschildComplex<VhatModel>;
pub type SquareQuotient = WQuotient<SquareComplex>;
pub type HatQuotient = WQuotient<HatComplex>;

/// Chains of `W ⊗_π 𝔠(TV ⊗ TV)` and `W ⊗_π 𝔠(T V̂)`.
pub type SquareChain = Chain<(usize, HWord<Vec<Word>>)>;
pub type HatChain = Chain<(usize, HWord<Word>)>;

/// `Sq^i(cl z) = cl θ(S (e_{n-i} ⊗ sh(z ⊗ z)))` on 𝔠TV, where `S` lifts through
/// `id ⊗ 𝔠q` and `θ(e_j ⊗ w) = φ(𝔠κ̃(w))(e_j)`.
///
/// Everything is graded by weight, so the lift runs separately on each weight summand.
pub struct HhPipeline {
    kappa: Arc<StructuralMap>,
    hh: Arc<HochschildComplex<FreeAlgebra>>,
    square: Arc<TensorPower<FreeAlgebra>>,
    square_hh: SquareComplex,
    by_weight: Mutex<HashMap<u32, (Arc<SquareComplex>, Arc<HatComplex>)>>,
    quotients: Mutex<HashMap<(u32, usize), (Arc<SquareQuotient>, Arc<HatQuotient>)>>,
}

impl HhPipeline {
    pub fn new(kappa: Arc<StructuralMap>, hh: Arc<HochschildComplex<FreeAlgebra>>) -> Result<Self> {
        if !Arc::ptr_eq(hh.algebra(), kappa.base()) {
            return Err(Error::Invalid(
                "the structural map and the Hochschild complex use different algebras".into(),
            ));
        }
        let square = Arc::new(TensorPower::new(kappa.base().clone(), 2));
        Ok(HhPipeline {
            kappa,
            hh,
            square_hh: HochschildComplex::new(square.clone()),
            square,
            by_weight: Mutex::new(HashMap::new()),
            quotients: Mutex::new(HashMap::new()),
        })
    }

    pub fn hochschild(&self) -> &Arc<HochschildComplex<FreeAlgebra>> {
        &self.hh
    }

    pub fn kappa(&self) -> &Arc<StructuralMap> {
        &self.kappa
    }

    /// Largest class degree the lift can handle: the truncations must reach
    /// `2n + maxdeg(V) + 1`.
    pub fn max_class_degree(&self) -> i32 {
        let tv = self.kappa.base();
        let top = tv.truncation().min(self.kappa.vhat().bound());
        let maxdeg = tv
            .generators()
            .iter()
            .map(|g| g.degree)
            .filter(|&d| d <= top)
            .max()
            .unwrap_or(0);
        (top - maxdeg - 1).div_euclid(2)
    }

    fn weight_complexes(&self, weight: u32) -> (Arc<SquareComplex>, Arc<HatComplex>) {
        self.by_weight
            .lock()
            .expect("weight cache")
            .entry(weight)
            .or_insert_with(|| {
                (
                    Arc::new(HochschildComplex::with_weight(self.square.clone(), weight)),
                    Arc::new(HochschildComplex::with_weight(
                        self.kappa.vhat().clone(),
                        weight,
                    )),
                )
            })
            .clone()
    }

    /// The quotient complexes `W ⊗_π 𝔠(TV ⊗ TV)` and `W ⊗_π 𝔠(T V̂)` of one weight, cut at `window`.
    pub fn quotients(&self, weight: u32, window: usize) -> (Arc<SquareQuotient>, Arc<HatQuotient>) {
        if let Some(q) = self
            .quotients
            .lock()
            .expect("quotient cache")
            .get(&(weight, window))
        {
            return q.clone();
        }
        let (sq, hat) = self.weight_complexes(weight);
        let q = (
            Arc::new(WQuotient::new(sq, window)),
            Arc::new(WQuotient::new(hat, window)),
        );
        self.quotients
            .lock()
            .expect("quotient cache")
            .insert((weight, window), q.clone());
        q
    }

    /// `id ⊗ 𝔠q` on a basis element.
    pub fn q_map(&self, e: &(usize, HWord<Word>)) -> Result<SquareChain> {
        let vhat = self.kappa.vhat();
        let f = vhat.field();
        let (j, w) = e;
        let a0 = vhat.q_basis(&w.a0)?;
        let letters: Vec<Chain<Vec<Word>>> = w
            .letters
            .iter()
            .map(|a| vhat.q_basis(a))
            .collect::<Result<_>>()?;
        Ok(Chain::from_terms(
            f,
            self.square_hh
                .from_chains(&a0, &letters)
                .into_terms()
                .map(|(x, c)| ((*j, x), c)),
        ))
    }

    /// `e_j ⊗ sh(z ⊗ z)`, split by weight.
    pub fn shuffled(&self, z: &Chain<HWord<Word>>, j: usize) -> BTreeMap<u32, SquareChain> {
        let f = self.hh.field();
        let tv = &**self.kappa.base();
        let mut out: BTreeMap<u32, SquareChain> = BTreeMap::new();
        for (x, a) in z.iter() {
            for (y, b) in z.iter() {
                let ab = f.mul(*a, *b);
                for (w, c) in shuffle_pair(tv, &wrap_tensor(x), &wrap_tensor(y)).iter() {
                    let weight = self.square.weight(&w.a0)
                        + w.letters.iter().map(|l| self.square.weight(l)).sum::<u32>();
                    out.entry(weight)
                        .or_default()
                        .add_term(f, (j, w.clone()), f.mul(ab, *c));
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// A cycle of `W ⊗_π 𝔠(T V̂)` over a cycle of `W ⊗_π 𝔠(TV ⊗ TV)` of one weight.
    pub fn lift(&self, weight: u32, window: usize, c: &SquareChain) -> Result<HatChain> {
        let (target, source) = self.quotients(weight, window);
        lift_cycle(&*source, &*target, &|e| self.q_map(e), c)
    }

    /// `θ(e_j ⊗ a0[a1|...|ak]) = φ(κ̃(a0)[κ̃(a1)|...|κ̃(ak)])(e_j)`.
    pub fn theta(&self, x: &HatChain) -> Result<Chain<HWord<Word>>> {
        let f = self.hh.field();
        let mut out = Chain::zero();
        for ((j, w), c) in x.iter() {
            out.add_scaled(f, &self.theta_at((*j, 0), w)?, *c);
        }
        Ok(out)
    }

    /// `φ(𝔠κ̃(w))` on the cell `e_j τ^s`.
    pub fn theta_at(&self, cell: (usize, u32), w: &HWord<Word>) -> Result<Chain<HWord<Word>>> {
        let tv = &**self.kappa.base();
        let hom = HomAlgebra::new(tv);
        let mut cochains: Vec<Arc<HomElement<Word>>> = Vec::with_capacity(w.letters.len() + 1);
        cochains.push(self.kappa.on_word(&w.a0)?);
        for a in &w.letters {
            cochains.push(self.kappa.on_word(a)?);
        }
        let refs: Vec<&HomElement<Word>> = cochains.iter().map(|h| &**h).collect();
        phi(&hom, &self.hh, &refs, cell)
    }

    /// A cycle of 𝔠TV representing `Sq^i` of the class of the cycle `z`.
    pub fn sq(&self, z: &Chain<HWord<Word>>, i: i32) -> Result<Chain<HWord<Word>>> {
        let Some(n) = chain_degree(&*self.hh, z)? else {
            return Ok(Chain::zero());
        };
        if i < 0 || i > n {
            return Ok(Chain::zero());
        }
        if n > self.max_class_degree() {
            return Err(Error::KernelNotAcyclicHere(2 * n + 1));
        }
        if !self.hh.differential(z)?.is_zero() {
            return Err(Error::NotACycle(self.hh.label_chain(z)));
        }
        let window = (n - i) as usize;
        let f = self.hh.field();
        let mut out = Chain::zero();
        for (weight, c) in self.shuffled(z, window) {
            let lifted = self.lift(weight, window, &c)?;
            out.add_scaled(f, &self.theta(&lifted)?, 1);
        }
        if !self.hh.differential(&out)?.is_zero() {
            return Err(Error::ChainMapViolation(format!(
                "θ S sh is not a cycle on {} for i = {i}",
                self.hh.label_chain(z)
            )));
        }
        Ok(out)
    }
}
