use std::collections::HashMap;

use super::{HWord, HochschildComplex};
use crate::algebra::GradedAlgebra;
use crate::chain::Chain;
use crate::error::{Error, Result};
use crate::resolution::{Cell, HomAlgebra, HomElement};

/// `φ(F0[F1|...|Fk])` evaluated on a cell: the sum over `ψ^{(k)}(w) = Σ w0 ⊗ ... ⊗ wk` of
/// `F0(w0)[F1(w1)|...|Fk(wk)]`, with degree-zero parts of letters projected out.
///
/// Only p = 2 is supported, where the diagonal is coassociative and no signs arise.
pub fn phi<A: GradedAlgebra>(
    hom: &HomAlgebra<'_, A>,
    complex: &HochschildComplex<A>,
    fs: &[&HomElement<A::Elem>],
    cell: Cell,
) -> Result<Chain<HWord<A::Elem>>> {
    let f = hom.alg.field();
    if f.p() != 2 {
        return Err(Error::UnsupportedPrime(
            f.p(),
            "φ needs a coassociative diagonal".into(),
        ));
    }
    let Some((first, rest)) = fs.split_first() else {
        return Err(Error::Invalid(
            "φ needs at least the coefficient cochain".into(),
        ));
    };
    if rest.is_empty() {
        return Ok(complex.from_chains(&first.value(cell), &[]));
    }
    let mut memo = HashMap::new();
    let mut out = Chain::zero();
    for ((a, b), k) in hom.w.diagonal(cell).iter() {
        let Some(v0) = first.value_ref(a) else {
            continue;
        };
        let tails = letters(hom, complex, rest, *b, &mut memo);
        for (ls, c) in tails.iter() {
            let letters: Vec<Chain<A::Elem>> =
                ls.iter().map(|e| Chain::from_key(e.clone())).collect();
            out.add_scaled(f, &complex.from_chains(v0, &letters), f.mul(*k, *c));
        }
    }
    Ok(out)
}

fn letters<A: GradedAlgebra>(
    hom: &HomAlgebra<'_, A>,
    complex: &HochschildComplex<A>,
    fs: &[&HomElement<A::Elem>],
    cell: Cell,
    memo: &mut HashMap<(usize, Cell), Chain<Vec<A::Elem>>>,
) -> Chain<Vec<A::Elem>> {
    let key = (fs.len(), cell);
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let f = hom.alg.field();
    let alg = &**complex.algebra();
    let positive = |x: &Chain<A::Elem>| {
        let mut x = x.clone();
        x.retain(|e| alg.degree(e) > 0);
        x
    };
    let mut out = Chain::zero();
    if fs.len() == 1 {
        for (e, c) in positive(&fs[0].value(cell)).iter() {
            out.add_term(f, vec![e.clone()], *c);
        }
    } else {
        for ((a, b), k) in hom.w.diagonal(cell).iter() {
            let head = positive(&fs[0].value(*a));
            if head.is_zero() {
                continue;
            }
            let tails = letters(hom, complex, &fs[1..], *b, memo);
            for (e, c) in head.iter() {
                for (t, d) in tails.iter() {
                    let mut v = Vec::with_capacity(t.len() + 1);
                    v.push(e.clone());
                    v.extend(t.iter().cloned());
                    out.add_term(f, v, f.mul(*k, f.mul(*c, *d)));
                }
            }
        }
    }
    memo.insert(key, out.clone());
    out
}

/// `φ` on a linear combination of words in Hom(W, A).
pub fn phi_on_chain<A: GradedAlgebra>(
    hom: &HomAlgebra<'_, A>,
    complex: &HochschildComplex<A>,
    words: &[(u32, Vec<HomElement<A::Elem>>)],
    cell: Cell,
) -> Result<Chain<HWord<A::Elem>>> {
    let f = hom.alg.field();
    let mut out = Chain::zero();
    for (c, w) in words {
        let refs: Vec<&HomElement<A::Elem>> = w.iter().collect();
        out.add_scaled(f, &phi(hom, complex, &refs, cell)?, *c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::algebra::{FreeAlgebra, Generator, Word};
    use crate::complex::ChainComplex;
    use crate::field::PrimeField;

    fn algebra() -> Arc<FreeAlgebra> {
        let f = PrimeField::F2;
        Arc::new(
            FreeAlgebra::new(
                f,
                vec![Generator::new("x", 2), Generator::new("z", 3)],
                vec![Chain::zero(), Chain::from_key(vec![0, 0])],
                12,
            )
            .unwrap(),
        )
    }

    fn random_cochain(a: &FreeAlgebra, degree: i32, rng: &mut ChaCha8Rng) -> HomElement<Word> {
        let f = a.field();
        let mut h = HomElement::zero(degree);
        for i in 0..=degree.max(0) as usize {
            for s in 0..2 {
                let mut v = Chain::zero();
                for e in a.basis(degree - i as i32).unwrap() {
                    if rng.random_bool(0.5) {
                        v.add_term(f, e, 1);
                    }
                }
                h.set((i, s), v);
            }
        }
        h
    }

    /// The Hochschild differential on a word of cochains at p = 2, without the wrap-around term.
    fn d_word_open(
        hom: &HomAlgebra<'_, FreeAlgebra>,
        w: &[HomElement<Word>],
    ) -> Vec<Vec<HomElement<Word>>> {
        let mut out = Vec::new();
        for i in 0..w.len() {
            let mut v = w.to_vec();
            v[i] = hom.differential(&w[i]).unwrap();
            out.push(v);
        }
        for i in 0..w.len().saturating_sub(1) {
            let mut v = w[..i].to_vec();
            v.push(hom.cup(&w[i], &w[i + 1]).unwrap());
            v.extend(w[i + 2..].iter().cloned());
            out.push(v);
        }
        out
    }

    /// `ak a0[a1|...|a(k-1)]` on every word `a0[a1|...|ak]`, k > 0.
    fn wrap(c: &HochschildComplex<FreeAlgebra>, x: &Chain<HWord<Word>>) -> Chain<HWord<Word>> {
        let a = c.algebra();
        let f = a.field();
        let mut out = Chain::zero();
        for (w, k) in x.iter() {
            let Some((last, init)) = w.letters.split_last() else {
                continue;
            };
            let a0 = a.multiply_basis(last, &w.a0).unwrap();
            let letters: Vec<Chain<Word>> =
                init.iter().map(|l| Chain::from_key(l.clone())).collect();
            out.add_scaled(f, &c.from_chains(&a0, &letters), *k);
        }
        out
    }

    fn random_word(a: &FreeAlgebra, k: usize, rng: &mut ChaCha8Rng) -> Vec<HomElement<Word>> {
        let mut word = vec![random_cochain(a, rng.random_range(0..3), rng)];
        for _ in 0..k {
            // letters without a scalar part, so that the normalized complex drops nothing
            let mut h = random_cochain(a, rng.random_range(2..4), rng);
            h.set((h.degree as usize, 0), Chain::zero());
            h.set((h.degree as usize, 1), Chain::zero());
            word.push(h);
        }
        word
    }

    struct Sides {
        /// `(D φ(x))(e) = d φ(x)(e) + φ(x)(∂ e)`
        lhs: Chain<HWord<Word>>,
        /// the wrap-around part of `d` applied to `φ(x)(e)`
        wrapped: Chain<HWord<Word>>,
        /// `φ(d x)(e)` without the term `(fk ∪ f0)[f1|...]`
        open: Chain<HWord<Word>>,
        /// `φ((fk ∪ f0)[f1|...])(e)`
        cyclic: Chain<HWord<Word>>,
    }

    fn sides(
        hom: &HomAlgebra<'_, FreeAlgebra>,
        c: &HochschildComplex<FreeAlgebra>,
        word: &[HomElement<Word>],
        cell: Cell,
    ) -> Sides {
        let f = hom.alg.field();
        let refs: Vec<&HomElement<Word>> = word.iter().collect();
        let value = phi(hom, c, &refs, cell).unwrap();
        let mut lhs = c.differential(&value).unwrap();
        for (b, kb) in hom.w.boundary(cell).iter() {
            lhs.add_scaled(f, &phi(hom, c, &refs, *b).unwrap(), *kb);
        }
        let mut open = Chain::zero();
        for v in d_word_open(hom, word) {
            let refs: Vec<&HomElement<Word>> = v.iter().collect();
            open.add_scaled(f, &phi(hom, c, &refs, cell).unwrap(), 1);
        }
        let mut cyclic = Chain::zero();
        if word.len() > 1 {
            let mut v = vec![hom.cup(&word[word.len() - 1], &word[0]).unwrap()];
            v.extend(word[1..word.len() - 1].iter().cloned());
            let refs: Vec<&HomElement<Word>> = v.iter().collect();
            cyclic = phi(hom, c, &refs, cell).unwrap();
        }
        Sides {
            lhs,
            wrapped: wrap(c, &value),
            open,
            cyclic,
        }
    }

    fn cells(word: &[HomElement<Word>]) -> impl Iterator<Item = Cell> {
        let total: i32 = word[0].degree + word[1..].iter().map(|h| h.degree - 1).sum::<i32>();
        (0..=(total + 1).max(0) as usize).flat_map(|i| [(i, 0), (i, 1)])
    }

    #[test]
    fn phi_commutes_with_d_up_to_the_wrap_around_term() {
        let a = algebra();
        let hom = HomAlgebra::new(&*a);
        let c = HochschildComplex::new(a.clone());
        let f = a.field();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for trial in 0..24 {
            let word = random_word(&a, trial % 4, &mut rng);
            for cell in cells(&word) {
                let s = sides(&hom, &c, &word, cell);
                let mut rest = s.lhs.clone();
                rest.add_scaled(f, &s.wrapped, 1);
                assert_eq!(rest, s.open, "trial {trial}, cell {cell:?}");
                if word.len() == 1 {
                    assert_eq!(s.lhs, s.open);
                }
            }
        }
    }

    #[test]
    fn wrap_around_term_needs_a_cocommutative_diagonal() {
        // ψ is not cocommutative, so the wrap-around term of d on φ(x) differs from φ of the
        // wrap-around term of d on x, and φ is not a chain map on all of 𝔠 Hom(W, A).
        let a = algebra();
        let hom = HomAlgebra::new(&*a);
        let c = HochschildComplex::new(a.clone());
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut broken = 0;
        for trial in 0..24 {
            let word = random_word(&a, 1 + trial % 3, &mut rng);
            for cell in cells(&word) {
                let s = sides(&hom, &c, &word, cell);
                if s.wrapped != s.cyclic {
                    broken += 1;
                }
            }
        }
        assert!(broken > 0);
    }

    #[test]
    fn phi_is_pi_linear_and_restricts_to_ev0() {
        let a = algebra();
        let hom = HomAlgebra::new(&*a);
        let c = HochschildComplex::new(a.clone());
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for trial in 0..12 {
            let word: Vec<HomElement<Word>> = (0..1 + trial % 3)
                .map(|j| random_cochain(&a, if j == 0 { 1 } else { 3 }, &mut rng))
                .collect();
            let refs: Vec<&HomElement<Word>> = word.iter().collect();
            let acted: Vec<HomElement<Word>> = word.iter().map(|h| h.act(&hom.w, 1)).collect();
            let acted_refs: Vec<&HomElement<Word>> = acted.iter().collect();
            for i in 0..6 {
                // (τ φ(x))(e_i) = φ(x)(e_i τ) = φ(τ x)(e_i)
                assert_eq!(
                    phi(&hom, &c, &refs, (i, 1)).unwrap(),
                    phi(&hom, &c, &acted_refs, (i, 0)).unwrap()
                );
            }
            let values: Vec<Chain<Word>> = word.iter().map(|h| h.value((0, 0))).collect();
            let ev0 = c.from_chains(&values[0], &values[1..]);
            assert_eq!(phi(&hom, &c, &refs, (0, 0)).unwrap(), ev0);
        }
    }

    #[test]
    fn phi_on_low_cells() {
        let a = algebra();
        let hom = HomAlgebra::new(&*a);
        let c = HochschildComplex::new(a.clone());
        let x = Chain::from_key(vec![0u16]);
        let xx = Chain::from_key(vec![0u16, 0]);
        let mut f0 = HomElement::zero(3);
        f0.set((1, 0), x.clone());
        f0.set((1, 1), x.clone());
        let mut g = HomElement::zero(4);
        g.set((0, 0), xx.clone());
        // φ(f0[g])(e_1) = f0(e_0)[g(e_1)] + f0(e_1)[g(e_0 τ)] = x[x^2] via ψ(e_1) = e_0⊗e_1 + e_1⊗e_0τ
        let mut g2 = g.clone();
        g2.set((0, 1), xx.clone());
        let got = phi(&hom, &c, &[&f0, &g2], (1, 0)).unwrap();
        assert_eq!(got, c.from_chains(&x, &[xx.clone()]));
    }
}
