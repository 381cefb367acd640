use std::collections::BTreeMap;
use std::sync::Arc;

use super::pipeline::{HatChain, HatComplex, SquareComplex};
use crate::algebra::{GradedAlgebra, TensorPower, VhatModel, Word};
use crate::chain::Chain;
use crate::complex::{ChainComplex, PiComplex};
use crate::error::{Error, Result};
use crate::hochschild::{HWord, HochschildComplex};
use crate::linalg::{normal_form, Solver, SparseMatrix, SparseVec};

type Square = HWord<Vec<Word>>;
type Hat = HWord<Word>;

/// A section `S` of `id ⊗ 𝔠q : W ⊗_π 𝔠(T V̂) → W ⊗_π 𝔠(TV ⊗ TV)` on one weight, of the form
/// `S(e_i ⊗ x) = Σ_j e_{i-j} ⊗ σ_j(x)` with `e_{-1} = 0`.
///
/// `S` is a chain map with `𝔠q σ_0 = id` and `𝔠q σ_j = 0` for `j > 0`, which amounts to
/// `σ_j(dx) = d σ_j(x) + τ σ_{j-1}(x) + σ_{j-1}(τ x)`. Among all solutions on words of degree at
/// most `max_degree`, the one in normal form is kept: words mapping to `#`-free, longer bar words
/// absorb the freedom first, so corrections land on `#` terms only when forced.
pub struct Section {
    square: Arc<SquareComplex>,
    hat: Arc<HatComplex>,
    max_degree: i32,
    sigma: BTreeMap<(Square, usize), Chain<Hat>>,
}

impl Section {
    pub fn build(vhat: Arc<VhatModel>, weight: u32, max_degree: i32) -> Result<Self> {
        let f = vhat.field();
        if f.p() != 2 {
            return Err(Error::UnsupportedPrime(
                f.p(),
                "the section is built at p = 2".into(),
            ));
        }
        let tensor = Arc::new(TensorPower::new(vhat.base().clone(), 2));
        let square = Arc::new(HochschildComplex::with_weight(tensor, weight));
        let hat = Arc::new(HochschildComplex::with_weight(vhat.clone(), weight));

        // Unknown coordinates: (x, j, h) for h a basis word of degree |x| - j.
        let mut xs: Vec<(i32, usize, Square)> = Vec::new();
        for n in 0..=max_degree {
            for (k, x) in square.indexed_basis(n)?.elements.iter().enumerate() {
                xs.push((n, k, x.clone()));
            }
        }
        let mut unknowns: Vec<(Square, usize, Hat)> = Vec::new();
        for (n, _, x) in &xs {
            for j in 0..=*n as usize {
                for h in &hat.indexed_basis(n - j as i32)?.elements {
                    unknowns.push((x.clone(), j, h.clone()));
                }
            }
        }
        let preference = |(x, j, h): &(Square, usize, Hat)| {
            let sharp = has_sharp(&vhat, h);
            let position = xs.iter().position(|(_, _, y)| y == x).unwrap_or(0);
            (
                std::cmp::Reverse(position),
                *j,
                sharp,
                std::cmp::Reverse(h.letters.len()),
                std::cmp::Reverse(h.clone()),
            )
        };
        unknowns.sort_by_key(|u| preference(u));
        let column: BTreeMap<(Square, usize, Hat), usize> = unknowns
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, u)| (u, i))
            .collect();
        let col = |x: &Square, j: usize, h: &Hat| column.get(&(x.clone(), j, h.clone())).copied();

        let mut rows = 0usize;
        let mut entries: Vec<(usize, usize, u32)> = Vec::new();
        let mut rhs: SparseVec = Vec::new();
        for (n, _, x) in &xs {
            for j in 0..=*n as usize {
                // 𝔠q σ_j(x) = δ_{j0} x
                let target = square.indexed_basis(n - j as i32)?;
                for h in &hat.indexed_basis(n - j as i32)?.elements {
                    let image = target.to_sparse(&q_hword(&vhat, &square, h)?)?;
                    let c = col(x, j, h).expect("unknown");
                    entries.extend(image.iter().map(|&(r, v)| (rows + r, c, v)));
                }
                if j == 0 {
                    rhs.push((rows + target.index[x], 1));
                }
                rows += target.len();
            }
            if *n + 1 > max_degree {
                continue;
            }
            let dx = square.differential_basis(x)?;
            let tx = square.tau_basis(x)?;
            for j in 0..=(*n + 1) as usize {
                let target = hat.indexed_basis(n + 1 - j as i32)?;
                if target.is_empty() {
                    continue;
                }
                for (y, c) in dx.iter() {
                    for h in &hat.indexed_basis(n + 1 - j as i32)?.elements {
                        if let Some(k) = col(y, j, h) {
                            let v = target.to_sparse(&Chain::term(f, h.clone(), *c))?;
                            entries.extend(v.iter().map(|&(r, e)| (rows + r, k, e)));
                        }
                    }
                }
                if j as i32 <= *n {
                    for h in &hat.indexed_basis(n - j as i32)?.elements {
                        let k = col(x, j, h).expect("unknown");
                        let v = target.to_sparse(&hat.differential_basis(h)?)?;
                        entries.extend(v.iter().map(|&(r, e)| (rows + r, k, e)));
                    }
                }
                if j >= 1 {
                    for h in &hat.indexed_basis(n + 1 - j as i32)?.elements {
                        let k = col(x, j - 1, h).expect("unknown");
                        let v = target.to_sparse(&hat.tau_basis(h)?)?;
                        entries.extend(v.iter().map(|&(r, e)| (rows + r, k, e)));
                        for (y, c) in tx.iter() {
                            let k = col(y, j - 1, h).expect("unknown");
                            let v = target.to_sparse(&Chain::term(f, h.clone(), *c))?;
                            entries.extend(v.iter().map(|&(r, e)| (rows + r, k, e)));
                        }
                    }
                }
                rows += target.len();
            }
        }
        let matrix = SparseMatrix::from_entries(f, rows, unknowns.len(), entries)?;
        let solver = Solver::new(f, &matrix);
        rhs.sort_by_key(|t| t.0);
        let y = solver
            .solve(&rhs)
            .map_err(|_| Error::NotSurjectiveHere(max_degree))?;
        let y = normal_form(f, solver.kernel(), &y);
        let mut sigma: BTreeMap<(Square, usize), Chain<Hat>> = BTreeMap::new();
        for (k, c) in y {
            let (x, j, h) = &unknowns[k];
            sigma
                .entry((x.clone(), *j))
                .or_default()
                .add_term(f, h.clone(), c);
        }
        Ok(Section {
            square,
            hat,
            max_degree,
            sigma,
        })
    }

    pub fn square(&self) -> &Arc<SquareComplex> {
        &self.square
    }

    pub fn hat(&self) -> &Arc<HatComplex> {
        &self.hat
    }

    pub fn sigma(&self, x: &Square, j: usize) -> Chain<Hat> {
        self.sigma.get(&(x.clone(), j)).cloned().unwrap_or_default()
    }

    /// `S(e_i ⊗ x)`.
    pub fn apply(&self, i: usize, x: &Square) -> Result<HatChain> {
        let n = self.square.degree(x);
        if n > self.max_degree {
            return Err(Error::TruncationExceeded {
                degree: n,
                bound: self.max_degree,
            });
        }
        let f = self.square.field();
        let mut out = Chain::zero();
        for j in 0..=i.min(n.max(0) as usize) {
            for (h, c) in self.sigma(x, j).iter() {
                out.add_term(f, (i - j, h.clone()), *c);
            }
        }
        Ok(out)
    }
}

fn has_sharp(vhat: &VhatModel, h: &Hat) -> bool {
    let sharp = |w: &Word| {
        w.iter()
            .any(|&g| matches!(vhat.kind(g), crate::algebra::HatGenerator::Sharp(..)))
    };
    sharp(&h.a0) || h.letters.iter().any(sharp)
}

/// `𝔠q` on a basis word.
pub(crate) fn q_hword(vhat: &VhatModel, square: &SquareComplex, h: &Hat) -> Result<Chain<Square>> {
    let a0 = vhat.q_basis(&h.a0)?;
    let letters: Vec<Chain<Vec<Word>>> = h
        .letters
        .iter()
        .map(|a| vhat.q_basis(a))
        .collect::<Result<_>>()?;
    Ok(square.from_chains(&a0, &letters))
}
