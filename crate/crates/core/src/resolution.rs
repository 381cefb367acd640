//! The minimal free resolution W of F_p over the cyclic group of order p, its diagonal,
//! the cochain algebra Hom(W, A) and the quotient complexes W ⊗_π M.
//!
//! Conventions: `W_i` is free on `e_i`, a cell `(i, s)` stands for `e_i τ^s`, and
//! `∂ e_{2k+1} = e_{2k}(τ - 1)`, `∂ e_{2k} = e_{2k-1} N` with `N = 1 + τ + ... + τ^{p-1}`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use crate::algebra::GradedAlgebra;
use crate::chain::Chain;
use crate::complex::{ChainComplex, IndexedBasis, PiComplex};
use crate::error::{Error, Result};
use crate::field::PrimeField;

/// The cell `e_i τ^s`.
pub type Cell = (usize, u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WResolution {
    field: PrimeField,
}

impl WResolution {
    pub fn new(field: PrimeField) -> Self {
        WResolution { field }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    pub fn diagonal_name(&self) -> &'static str {
        "standard cyclic diagonal"
    }

    /// Group ring element `x` with `∂ e_i = e_{i-1} x`, as `(exponent, coefficient)` pairs.
    pub fn boundary_operator(&self, i: usize) -> Vec<(u32, u32)> {
        let p = self.p();
        if i == 0 {
            Vec::new()
        } else if i % 2 == 1 {
            if p == 2 {
                vec![(0, 1), (1, 1)]
            } else {
                vec![(0, p - 1), (1, 1)]
            }
        } else {
            (0..p).map(|s| (s, 1)).collect()
        }
    }

    pub fn shift(&self, c: Cell, t: u32) -> Cell {
        (c.0, (c.1 + t) % self.p())
    }

    pub fn boundary(&self, c: Cell) -> Chain<Cell> {
        let f = self.field;
        let mut out = Chain::zero();
        if c.0 > 0 {
            for (t, k) in self.boundary_operator(c.0) {
                out.add_term(f, (c.0 - 1, (c.1 + t) % self.p()), k);
            }
        }
        out
    }

    pub fn boundary_chain(&self, x: &Chain<Cell>) -> Chain<Cell> {
        x.map_linear::<_, ()>(self.field, |c| Ok(self.boundary(*c)))
            .expect("infallible")
    }

    pub fn augmentation(&self, x: &Chain<Cell>) -> u32 {
        x.iter()
            .filter(|(c, _)| c.0 == 0)
            .fold(0, |a, (_, k)| self.field.add(a, *k))
    }

    /// The diagonal on a generator `e_i` (then extended equivariantly).
    fn diagonal_generator(&self, n: usize) -> Chain<(Cell, Cell)> {
        let f = self.field;
        let p = self.p();
        let mut out = Chain::zero();
        if n % 2 == 1 {
            let l = (n - 1) / 2;
            for j in 0..=l {
                let k = l - j;
                out.add_term(f, ((2 * j, 0), (2 * k + 1, 0)), 1);
                out.add_term(f, ((2 * j + 1, 0), (2 * k, 1 % p)), 1);
            }
        } else {
            let l = n / 2;
            for j in 0..=l {
                out.add_term(f, ((2 * j, 0), (2 * (l - j), 0)), 1);
            }
            if l >= 1 {
                for j in 0..l {
                    let k = l - 1 - j;
                    for s in 0..p {
                        for r in 0..s {
                            out.add_term(f, ((2 * j + 1, r), (2 * k + 1, s)), 1);
                        }
                    }
                }
            }
        }
        out
    }

    /// `ψ(e_i τ^s) = ψ(e_i)(τ^s ⊗ τ^s)`.
    pub fn diagonal(&self, c: Cell) -> Chain<(Cell, Cell)> {
        let f = self.field;
        let mut out = Chain::zero();
        for ((a, b), k) in self.diagonal_generator(c.0).iter() {
            out.add_term(f, (self.shift(*a, c.1), self.shift(*b, c.1)), *k);
        }
        out
    }

    /// `ψ^{(k)}`, with `k + 1` tensor factors, built as `(id^{⊗(k-1)} ⊗ ψ) ∘ ψ^{(k-1)}`.
    pub fn iterated_diagonal(&self, k: usize, c: Cell) -> Chain<Vec<Cell>> {
        let f = self.field;
        let mut acc: Chain<Vec<Cell>> = Chain::from_key(vec![c]);
        for _ in 0..k {
            let mut next = Chain::zero();
            for (v, coef) in acc.iter() {
                let (last, init) = v.split_last().expect("nonempty");
                for ((a, b), k2) in self.diagonal(*last).iter() {
                    let mut w = init.to_vec();
                    w.push(*a);
                    w.push(*b);
                    next.add_term(f, w, f.mul(*coef, *k2));
                }
            }
            acc = next;
        }
        acc
    }

    /// `(∂ ⊗ 1 + (-1)^{|a|} 1 ⊗ ∂)` on a tensor of two cells.
    pub fn boundary_tensor(&self, x: &Chain<(Cell, Cell)>) -> Chain<(Cell, Cell)> {
        let f = self.field;
        let mut out = Chain::zero();
        for ((a, b), k) in x.iter() {
            for (da, k2) in self.boundary(*a).iter() {
                out.add_term(f, (*da, *b), f.mul(*k, *k2));
            }
            let sign = f.sign(a.0 as i64);
            for (db, k2) in self.boundary(*b).iter() {
                out.add_term(f, (*a, *db), f.mul(f.mul(*k, *k2), sign));
            }
        }
        out
    }
}

/// An element of Hom(W, A) of a fixed total degree, given by its values on the cells
/// `e_i τ^s`; the value at `e_i τ^s` lies in `A^{degree - i}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HomElement<E: Ord> {
    pub degree: i32,
    values: BTreeMap<Cell, Chain<E>>,
}

impl<E: Ord + Clone> HomElement<E> {
    pub fn zero(degree: i32) -> Self {
        HomElement {
            degree,
            values: BTreeMap::new(),
        }
    }

    pub fn value(&self, c: Cell) -> Chain<E> {
        self.values.get(&c).cloned().unwrap_or_default()
    }

    pub fn value_ref(&self, c: &Cell) -> Option<&Chain<E>> {
        self.values.get(c)
    }

    pub fn set(&mut self, c: Cell, v: Chain<E>) {
        if v.is_zero() {
            self.values.remove(&c);
        } else {
            self.values.insert(c, v);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn cells(&self) -> impl Iterator<Item = (&Cell, &Chain<E>)> {
        self.values.iter()
    }

    pub fn add_scaled(&mut self, f: PrimeField, other: &HomElement<E>, c: u32) {
        for (cell, v) in other.values.iter() {
            let mut cur = self.value(*cell);
            cur.add_scaled(f, v, c);
            self.set(*cell, cur);
        }
    }

    /// `(σ f)(w) = f(w σ)` for `σ = τ^t`.
    pub fn act(&self, w: &WResolution, t: u32) -> Self {
        let p = w.p();
        let mut out = HomElement::zero(self.degree);
        for (&(i, s), v) in self.values.iter() {
            out.values.insert((i, (s + p - t % p) % p), v.clone());
        }
        out
    }

    /// Evaluate on a chain of cells.
    pub fn eval(&self, f: PrimeField, x: &Chain<Cell>) -> Chain<E> {
        let mut out = Chain::zero();
        for (c, k) in x.iter() {
            if let Some(v) = self.values.get(c) {
                out.add_scaled(f, v, *k);
            }
        }
        out
    }
}

fn cells_up_to(w: &WResolution, max_i: i32) -> impl Iterator<Item = Cell> {
    let p = w.p();
    (0..=max_i.max(-1)).flat_map(move |i| (0..p).map(move |s| (i as usize, s)))
}

/// Operations on Hom(W, A) for a fixed algebra.
pub struct HomAlgebra<'a, A: GradedAlgebra> {
    pub w: WResolution,
    pub alg: &'a A,
}

impl<'a, A: GradedAlgebra> HomAlgebra<'a, A> {
    pub fn new(alg: &'a A) -> Self {
        HomAlgebra {
            w: WResolution::new(alg.field()),
            alg,
        }
    }

    /// The unit `ρ(1)`: value `1` on every `e_0 τ^s`.
    pub fn unit(&self) -> HomElement<A::Elem> {
        let mut out = HomElement::zero(0);
        for s in 0..self.w.p() {
            out.set((0, s), Chain::from_key(self.alg.unit()));
        }
        out
    }

    /// `ρ(a)`: the constant cochain concentrated on `e_0`.
    pub fn constant(&self, a: &Chain<A::Elem>, degree: i32) -> HomElement<A::Elem> {
        let mut out = HomElement::zero(degree);
        for s in 0..self.w.p() {
            out.set((0, s), a.clone());
        }
        out
    }

    /// `(Df)(w) = d(f(w)) - (-1)^k f(∂ w)`.
    pub fn differential(&self, x: &HomElement<A::Elem>) -> Result<HomElement<A::Elem>> {
        let f = self.alg.field();
        let k = x.degree;
        let mut out = HomElement::zero(k + 1);
        for c in cells_up_to(&self.w, k + 1) {
            let mut v = self.alg.differential(&x.value(c))?;
            v.add_scaled(f, &x.eval(f, &self.w.boundary(c)), f.neg(f.sign(k as i64)));
            out.set(c, v);
        }
        Ok(out)
    }

    /// `(f ∪ g)(w) = Σ (-1)^{|g||w'|} f(w') g(w'')` over `ψ(w) = Σ w' ⊗ w''`.
    pub fn cup(
        &self,
        x: &HomElement<A::Elem>,
        y: &HomElement<A::Elem>,
    ) -> Result<HomElement<A::Elem>> {
        let f = self.alg.field();
        let degree = x.degree + y.degree;
        let mut out = HomElement::zero(degree);
        for c in cells_up_to(&self.w, degree) {
            let mut v = Chain::zero();
            for ((a, b), k) in self.w.diagonal(c).iter() {
                let (Some(fa), Some(gb)) = (x.value_ref(a), y.value_ref(b)) else {
                    continue;
                };
                let sign = f.sign(y.degree as i64 * a.0 as i64);
                v.add_scaled(f, &self.alg.multiply(fa, gb)?, f.mul(*k, sign));
            }
            out.set(c, v);
        }
        Ok(out)
    }

    /// Checks that every value has the expected degree.
    pub fn check_degrees(&self, x: &HomElement<A::Elem>) -> Result<()> {
        for ((i, s), v) in x.cells() {
            for e in v.keys() {
                if self.alg.degree(e) != x.degree - *i as i32 {
                    return Err(Error::DegreeMismatch(format!(
                        "value at e_{i} τ^{s} has an element of degree {} in a cochain of degree {}",
                        self.alg.degree(e),
                        x.degree
                    )));
                }
            }
        }
        Ok(())
    }
}

/// `W ⊗_π M` restricted to `e_i ⊗ M` with `i <= window`. This is a subcomplex because the
/// differential never raises the W-index.
pub struct WQuotient<M: PiComplex> {
    pub module: Arc<M>,
    pub window: usize,
    w: WResolution,
    cache: Mutex<HashMap<i32, Arc<IndexedBasis<(usize, M::Elem)>>>>,
}

impl<M: PiComplex> WQuotient<M> {
    pub fn new(module: Arc<M>, window: usize) -> Self {
        let w = WResolution::new(module.field());
        WQuotient {
            module,
            window,
            w,
            cache: Mutex::new(HashMap::new()),
        }
    }

    /// `e_i ⊗ x` for a chain `x` of the module.
    pub fn embed(&self, i: usize, x: &Chain<M::Elem>) -> Chain<(usize, M::Elem)> {
        Chain::from_terms(self.field(), x.iter().map(|(e, c)| ((i, e.clone()), *c)))
    }
}

impl<M: PiComplex> ChainComplex for WQuotient<M> {
    type Elem = (usize, M::Elem);

    fn field(&self) -> PrimeField {
        self.module.field()
    }

    fn degree(&self, e: &Self::Elem) -> i32 {
        self.module.degree(&e.1) - e.0 as i32
    }

    fn indexed_basis(&self, degree: i32) -> Result<Arc<IndexedBasis<Self::Elem>>> {
        if let Some(b) = self.cache.lock().expect("cache").get(&degree) {
            return Ok(b.clone());
        }
        let mut elements = Vec::new();
        for i in 0..=self.window {
            for m in self
                .module
                .indexed_basis(degree + i as i32)?
                .elements
                .iter()
            {
                elements.push((i, m.clone()));
            }
        }
        let b = Arc::new(IndexedBasis::new(elements));
        self.cache.lock().expect("cache").insert(degree, b.clone());
        Ok(b)
    }

    fn differential_basis(&self, e: &Self::Elem) -> Result<Chain<Self::Elem>> {
        let f = self.field();
        let (i, m) = e;
        let mut out = Chain::zero();
        if *i > 0 {
            for (t, k) in self.w.boundary_operator(*i) {
                let mut x = Chain::from_key(m.clone());
                for _ in 0..t {
                    x = self.module.tau(&x)?;
                }
                for (y, c) in x.iter() {
                    out.add_term(f, (i - 1, y.clone()), f.mul(*c, k));
                }
            }
        }
        let sign = f.sign(*i as i64);
        for (y, c) in self.module.differential_basis(m)?.iter() {
            out.add_term(f, (*i, y.clone()), f.mul(*c, sign));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{FreeAlgebra, Generator};
    use crate::complex::homology_at;

    fn fields() -> Vec<PrimeField> {
        [2, 3, 5]
            .iter()
            .map(|&p| PrimeField::new(p).unwrap())
            .collect()
    }

    #[test]
    fn boundary_squares_to_zero() {
        for f in fields() {
            let w = WResolution::new(f);
            for i in 0..14 {
                for s in 0..f.p() {
                    assert!(w.boundary_chain(&w.boundary((i, s))).is_zero());
                }
            }
        }
    }

    #[test]
    fn diagonal_low_cases() {
        let w = WResolution::new(PrimeField::F2);
        let d1: Vec<_> = w.diagonal((1, 0)).keys().cloned().collect();
        assert_eq!(d1, vec![((0, 0), (1, 0)), ((1, 0), (0, 1))]);
        let d2: Vec<_> = w.diagonal((2, 0)).keys().cloned().collect();
        assert_eq!(
            d2,
            vec![((0, 0), (2, 0)), ((1, 0), (1, 1)), ((2, 0), (0, 0))]
        );
    }

    #[test]
    fn diagonal_is_a_chain_map() {
        for f in fields() {
            let w = WResolution::new(f);
            for i in 0..12 {
                let lhs = w.boundary_tensor(&w.diagonal((i, 0)));
                let mut rhs = Chain::zero();
                for (c, k) in w.boundary((i, 0)).iter() {
                    rhs.add_scaled(f, &w.diagonal(*c), *k);
                }
                assert_eq!(lhs, rhs, "p = {}, i = {i}", f.p());
            }
        }
    }

    #[test]
    fn diagonal_is_counital() {
        for f in fields() {
            let w = WResolution::new(f);
            for i in 0..10 {
                let mut left = Chain::zero();
                let mut right = Chain::zero();
                for ((a, b), k) in w.diagonal((i, 0)).iter() {
                    if a.0 == 0 {
                        left.add_term(f, *b, *k);
                    }
                    if b.0 == 0 {
                        right.add_term(f, *a, *k);
                    }
                }
                assert_eq!(left, Chain::from_key((i, 0)));
                assert_eq!(right, Chain::from_key((i, 0)));
            }
        }
    }

    #[test]
    fn diagonal_is_coassociative_at_two() {
        let f = PrimeField::F2;
        let w = WResolution::new(f);
        for i in 0..12 {
            let right = w.iterated_diagonal(2, (i, 0));
            let mut left = Chain::zero();
            for ((a, b), k) in w.diagonal((i, 0)).iter() {
                for ((a1, a2), k2) in w.diagonal(*a).iter() {
                    left.add_term(f, vec![*a1, *a2, *b], f.mul(*k, *k2));
                }
            }
            assert_eq!(left, right);
        }
    }

    #[test]
    fn iterated_diagonal_closed_form_at_two() {
        let f = PrimeField::F2;
        let w = WResolution::new(f);
        let x = w.iterated_diagonal(2, (3, 0));
        let mut expected = Chain::zero();
        for a in 0..=3usize {
            for b in 0..=3 - a {
                let c = 3 - a - b;
                expected.add_term(
                    f,
                    vec![(a, 0), (b, (a % 2) as u32), (c, ((a + b) % 2) as u32)],
                    1,
                );
            }
        }
        assert_eq!(x, expected);
    }

    fn t_u() -> FreeAlgebra {
        FreeAlgebra::new(
            PrimeField::F2,
            vec![Generator::new("u", 2)],
            vec![Chain::zero()],
            20,
        )
        .unwrap()
    }

    #[test]
    fn unit_and_differential_of_unit() {
        let a = t_u();
        let h = HomAlgebra::new(&a);
        let one = h.unit();
        assert!(h.differential(&one).unwrap().is_zero());
        let mut x = HomElement::zero(3);
        x.set((1, 0), Chain::from_key(vec![0]));
        x.set((1, 1), Chain::from_key(vec![0]));
        assert_eq!(h.cup(&one, &x).unwrap(), x);
        assert_eq!(h.cup(&x, &one).unwrap(), x);
    }

    /// M = F_p in degree 0 with trivial action.
    struct Trivial(PrimeField);

    impl ChainComplex for Trivial {
        type Elem = u8;
        fn field(&self) -> PrimeField {
            self.0
        }
        fn degree(&self, _e: &u8) -> i32 {
            0
        }
        fn indexed_basis(&self, degree: i32) -> Result<Arc<IndexedBasis<u8>>> {
            Ok(Arc::new(IndexedBasis::new(if degree == 0 {
                vec![0]
            } else {
                vec![]
            })))
        }
        fn differential_basis(&self, _e: &u8) -> Result<Chain<u8>> {
            Ok(Chain::zero())
        }
    }

    impl PiComplex for Trivial {
        fn tau_basis(&self, e: &u8) -> Result<Chain<u8>> {
            Ok(Chain::from_key(*e))
        }
    }

    #[test]
    fn group_cohomology_of_trivial_module() {
        for f in fields() {
            let q = WQuotient::new(Arc::new(Trivial(f)), 10);
            for n in -9..=0 {
                assert_eq!(
                    homology_at(&q, n).unwrap().dimension(),
                    1,
                    "p = {}, degree {n}",
                    f.p()
                );
            }
        }
    }
}
