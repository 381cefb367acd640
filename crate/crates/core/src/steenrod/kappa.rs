use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use crate::algebra::{FreeAlgebra, GradedAlgebra, HatGenerator, PiAlgebra, VhatModel, Word};
use crate::chain::Chain;
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::resolution::{HomAlgebra, HomElement};

/// Values of a cochain on the cells `e_i`, keyed by `i`.
pub type CellValues = BTreeMap<usize, Chain<Word>>;

/// The structural map κ̃ : T(V̂) → Hom(W, TV), recorded on orbit representatives of the
/// generators and extended multiplicatively by cup products.
///
/// Values on `e_i τ^s` come from equivariance: `κ̃(g)(e_i τ^s) = κ̃(τ^s g)(e_i)`.
pub struct StructuralMap {
    vhat: Arc<VhatModel>,
    generators: Vec<HomElement<Word>>,
    cache: Mutex<HashMap<Word, Arc<HomElement<Word>>>>,
}

impl StructuralMap {
    /// `linear` overrides the default `κ̃(v')(e_0) = v`, keyed by the index of `v`; `sharp`
    /// gives `κ̃(v'#w'')` keyed by `(v, w)`. Pairs without data map to zero, as do pairs above
    /// the bound of `vhat`.
    pub fn new(
        vhat: Arc<VhatModel>,
        linear: &BTreeMap<usize, CellValues>,
        sharp: &BTreeMap<(usize, usize), CellValues>,
    ) -> Result<Self> {
        let kinds = vhat.kinds().to_vec();
        let mut at_e: Vec<CellValues> = vec![BTreeMap::new(); kinds.len()];
        for (g, kind) in kinds.iter().enumerate() {
            match *kind {
                HatGenerator::Prime(v) | HatGenerator::Second(v) => {
                    at_e[g] = match linear.get(&v) {
                        Some(vals) => vals.clone(),
                        None => BTreeMap::from([(0, Chain::from_key(vec![v as u16]))]),
                    };
                }
                HatGenerator::Sharp(v, w) => {
                    if let Some(vals) = sharp.get(&(v, w)) {
                        at_e[g] = vals.clone();
                    }
                }
            }
        }
        let f = vhat.field();
        let mut generators = Vec::with_capacity(kinds.len());
        for g in 0..kinds.len() {
            let degree = vhat.free().generators()[g].degree;
            let mut h = HomElement::zero(degree);
            let mut orbit: Chain<Word> = Chain::from_key(vec![g as u16]);
            for s in 0..f.p() {
                for (x, c) in orbit.iter() {
                    let [y] = x.as_slice() else {
                        unreachable!("τ permutes generators")
                    };
                    for (&i, v) in at_e[*y as usize].iter() {
                        let mut cur = h.value((i, s));
                        cur.add_scaled(f, v, *c);
                        h.set((i, s), cur);
                    }
                }
                orbit = orbit.map_linear(f, |x| vhat.tau_basis(x))?;
            }
            HomAlgebra::new(&**vhat.base())
                .check_degrees(&h)
                .map_err(|e| match e {
                    Error::DegreeMismatch(m) => Error::DegreeMismatch(format!(
                        "κ̃({}): {m}",
                        vhat.free().generators()[g].name
                    )),
                    e => e,
                })?;
            generators.push(h);
        }
        Ok(StructuralMap {
            vhat,
            generators,
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn vhat(&self) -> &Arc<VhatModel> {
        &self.vhat
    }

    pub fn base(&self) -> &Arc<FreeAlgebra> {
        self.vhat.base()
    }

    pub fn field(&self) -> PrimeField {
        self.vhat.field()
    }

    pub fn generator(&self, g: u16) -> &HomElement<Word> {
        &self.generators[g as usize]
    }

    /// κ̃ on a word of T(V̂): the cup product of the generator cochains, `ρ(1)` on the unit.
    pub fn on_word(&self, w: &Word) -> Result<Arc<HomElement<Word>>> {
        if let Some(h) = self.cache.lock().expect("kappa cache").get(w) {
            return Ok(h.clone());
        }
        let hom = HomAlgebra::new(&**self.vhat.base());
        let out = match w.split_last() {
            None => hom.unit(),
            Some((&last, [])) => self.generators[last as usize].clone(),
            Some((&last, init)) => hom.cup(
                &*self.on_word(&init.to_vec())?,
                &self.generators[last as usize],
            )?,
        };
        let out = Arc::new(out);
        self.cache
            .lock()
            .expect("kappa cache")
            .insert(w.clone(), out.clone());
        Ok(out)
    }

    pub fn on_chain(&self, x: &Chain<Word>, degree: i32) -> Result<HomElement<Word>> {
        let f = self.field();
        let mut out = HomElement::zero(degree);
        for (w, c) in x.iter() {
            out.add_scaled(f, &*self.on_word(w)?, *c);
        }
        Ok(out)
    }

    /// Checks the linear part and `D κ̃(g) = κ̃(d g)` on every generator whose coboundary
    /// stays within the truncations of TV and V̂.
    pub fn validate(&self) -> Result<()> {
        let tv = self.vhat.base();
        let hom = HomAlgebra::new(&**tv);
        let hat = self.vhat.free();
        for (g, gen) in hat.generators().iter().enumerate() {
            if let HatGenerator::Prime(v) | HatGenerator::Second(v) = self.vhat.kind(g as u16) {
                let at0 = self.generators[g].value((0, 0));
                if at0 != Chain::from_key(vec![v as u16]) {
                    return Err(Error::Invalid(format!(
                        "linear part: κ̃({})(e_0) = {} instead of {}",
                        gen.name,
                        tv.label_chain(&at0),
                        tv.generators()[v].name
                    )));
                }
            }
            if gen.degree + 1 > tv.truncation().min(self.vhat.bound()) {
                continue;
            }
            let lhs = hom.differential(&self.generators[g])?;
            let rhs = self.on_chain(&hat.differential_basis(&vec![g as u16])?, gen.degree + 1)?;
            if lhs != rhs {
                let cell = lhs
                    .cells()
                    .chain(rhs.cells())
                    .map(|(c, _)| *c)
                    .find(|c| lhs.value(*c) != rhs.value(*c))
                    .unwrap_or((0, 0));
                return Err(Error::ChainMapViolation(format!(
                    "at {} on e_{} τ^{}: D κ̃ = {}, κ̃ d = {}",
                    gen.name,
                    cell.0,
                    cell.1,
                    tv.label_chain(&lhs.value(cell)),
                    tv.label_chain(&rhs.value(cell))
                )));
            }
        }
        Ok(())
    }
}

/// Sq^i on the class of a cycle generator `v` of TV, as a cycle of TV: `κ̃(v'#v'')(e_{n-i-1})`
/// for `i < n` and `v²` for `i = n`.
pub fn sq_on_ha(kappa: &StructuralMap, v: usize, i: i32) -> Result<Chain<Word>> {
    let tv = kappa.base();
    let n = tv.generators()[v].degree;
    if !tv.generator_differential(v).is_zero() {
        return Err(Error::NotACycle(tv.generators()[v].name.clone()));
    }
    if i < 0 || i > n {
        return Ok(Chain::zero());
    }
    if i == n {
        let x = Chain::from_key(vec![v as u16]);
        return tv.multiply(&x, &x);
    }
    let g = kappa.vhat.sharp(v, v).ok_or(Error::TruncationExceeded {
        degree: 2 * n - 1,
        bound: kappa.vhat.bound(),
    })?;
    Ok(kappa.generators[g as usize].value(((n - i - 1) as usize, 0)))
}
