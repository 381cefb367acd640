use std::collections::HashMap;
use std::sync::Arc;

use super::{FreeAlgebra, Generator, GradedAlgebra, PiAlgebra, TensorPower, Word};
use crate::chain::Chain;
use crate::error::{Error, Result};
use crate::field::PrimeField;

/// Kind of a generator of the doubled model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HatGenerator {
    /// `v'`, mapping to `v ⊗ 1`.
    Prime(usize),
    /// `v''`, mapping to `1 ⊗ v`.
    Second(usize),
    /// `v'#w''`, mapping to zero.
    Sharp(usize, usize),
}

/// The free model T(V-hat) of T(V) ⊗ T(V) together with the quasi-isomorphism q onto the
/// tensor square and the swap involution.
#[derive(Debug)]
pub struct VhatModel {
    base: Arc<FreeAlgebra>,
    hat: FreeAlgebra,
    kinds: Vec<HatGenerator>,
    tau_gen: Vec<u16>,
    square: TensorPower<FreeAlgebra>,
    sharp_index: HashMap<(usize, usize), u16>,
    bound: i32,
}

/// Build T(V-hat) with `v'`, `v''` for every generator and `v'#w''` for every ordered pair
/// with `|v| + |w| - 1 <= bound`. The `#` differential is only defined when `d v = d w = 0`.
pub fn build_vhat(base: Arc<FreeAlgebra>, bound: i32) -> Result<VhatModel> {
    let f = base.field();
    if f.p() != 2 {
        return Err(Error::UnsupportedPrime(
            f.p(),
            "the doubled model is implemented for p = 2".into(),
        ));
    }
    if !base.is_minimal() {
        return Err(Error::UnsupportedDifferential(
            "the input algebra is not minimal".into(),
        ));
    }
    let gens = base.generators();
    let n = gens.len();
    let mut generators = Vec::new();
    let mut kinds = Vec::new();
    let mut differentials = Vec::new();
    let relabel = |w: &Word, offset: usize| -> Word {
        w.iter().map(|&i| (i as usize + offset) as u16).collect()
    };
    for (offset, prime) in [(0usize, "'"), (n, "''")] {
        for (i, g) in gens.iter().enumerate() {
            generators.push(Generator {
                name: format!("{}{}", g.name, prime),
                degree: g.degree,
                weight: g.weight,
            });
            kinds.push(if offset == 0 {
                HatGenerator::Prime(i)
            } else {
                HatGenerator::Second(i)
            });
            let d = base.generator_differential(i);
            let mut dd = Chain::zero();
            for (w, c) in d.iter() {
                dd.add_term(f, relabel(w, offset), *c);
            }
            differentials.push(dd);
        }
    }
    let mut sharp_index = HashMap::new();
    for v in 0..n {
        for w in 0..n {
            let degree = gens[v].degree + gens[w].degree - 1;
            if degree > bound {
                continue;
            }
            for x in [v, w] {
                if !base.generator_differential(x).is_zero() {
                    return Err(Error::UnsupportedDifferential(format!(
                        "{}'#{}'' needs d({}) = 0",
                        gens[v].name, gens[w].name, gens[x].name
                    )));
                }
            }
            sharp_index.insert((v, w), generators.len() as u16);
            generators.push(Generator {
                name: format!("{}'#{}''", gens[v].name, gens[w].name),
                degree,
                weight: gens[v].weight + gens[w].weight,
            });
            kinds.push(HatGenerator::Sharp(v, w));
            let mut d = Chain::zero();
            d.add_term(f, vec![v as u16, (n + w) as u16], 1);
            d.add_term(
                f,
                vec![(n + w) as u16, v as u16],
                f.neg(f.sign((gens[v].degree * gens[w].degree) as i64)),
            );
            differentials.push(d);
        }
    }
    let tau_gen = kinds
        .iter()
        .map(|k| match *k {
            HatGenerator::Prime(i) => (n + i) as u16,
            HatGenerator::Second(i) => i as u16,
            HatGenerator::Sharp(v, w) => sharp_index[&(w, v)],
        })
        .collect();
    let hat = FreeAlgebra::new(f, generators, differentials, bound)?;
    let square = TensorPower::new(base.clone(), 2);
    Ok(VhatModel {
        base,
        hat,
        kinds,
        tau_gen,
        square,
        sharp_index,
        bound,
    })
}

impl VhatModel {
    pub fn base(&self) -> &Arc<FreeAlgebra> {
        &self.base
    }

    pub fn free(&self) -> &FreeAlgebra {
        &self.hat
    }

    pub fn square(&self) -> &TensorPower<FreeAlgebra> {
        &self.square
    }

    pub fn bound(&self) -> i32 {
        self.bound
    }

    pub fn kind(&self, g: u16) -> HatGenerator {
        self.kinds[g as usize]
    }

    pub fn kinds(&self) -> &[HatGenerator] {
        &self.kinds
    }

    pub fn prime(&self, v: usize) -> u16 {
        v as u16
    }

    pub fn second(&self, v: usize) -> u16 {
        (self.base.generators().len() + v) as u16
    }

    pub fn sharp(&self, v: usize, w: usize) -> Option<u16> {
        self.sharp_index.get(&(v, w)).copied()
    }

    /// `q` on a basis word: the product of `q` on its letters, zero if any `#` occurs.
    pub fn q_basis(&self, w: &Word) -> Result<Chain<Vec<Word>>> {
        let mut acc = Chain::from_key(self.square.unit());
        for &g in w {
            let image = match self.kinds[g as usize] {
                HatGenerator::Prime(v) => self.square.inject(0, &vec![v as u16]),
                HatGenerator::Second(v) => self.square.inject(1, &vec![v as u16]),
                HatGenerator::Sharp(..) => return Ok(Chain::zero()),
            };
            acc = self.square.multiply(&acc, &Chain::from_key(image))?;
        }
        Ok(acc)
    }

    /// A canonical preimage under `q` of a basis element `a ⊗ b`: the word `a' b''`.
    pub fn canonical_preimage(&self, e: &[Word]) -> Word {
        let mut w: Word = e[0].iter().map(|&v| self.prime(v as usize)).collect();
        w.extend(e[1].iter().map(|&v| self.second(v as usize)));
        w
    }
}

impl GradedAlgebra for VhatModel {
    type Elem = Word;

    fn field(&self) -> PrimeField {
        self.hat.field()
    }

    fn degree(&self, e: &Word) -> i32 {
        self.hat.degree(e)
    }

    fn weight(&self, e: &Word) -> u32 {
        self.hat.weight(e)
    }

    fn unit(&self) -> Word {
        Vec::new()
    }

    fn basis(&self, degree: i32) -> Result<Vec<Word>> {
        self.hat.basis(degree)
    }

    fn multiply_basis(&self, a: &Word, b: &Word) -> Result<Chain<Word>> {
        self.hat.multiply_basis(a, b)
    }

    fn differential_basis(&self, a: &Word) -> Result<Chain<Word>> {
        self.hat.differential_basis(a)
    }

    fn label(&self, e: &Word) -> String {
        self.hat.label(e)
    }
}

impl PiAlgebra for VhatModel {
    /// Swap primes on each letter; at p = 2 no signs arise.
    fn tau_basis(&self, e: &Word) -> Result<Chain<Word>> {
        Ok(Chain::from_key(
            e.iter().map(|&g| self.tau_gen[g as usize]).collect(),
        ))
    }
}
