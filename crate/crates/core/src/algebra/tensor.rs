use std::sync::Arc;

use super::{GradedAlgebra, PiAlgebra};
use crate::chain::Chain;
use crate::error::Result;
use crate::field::PrimeField;

/// The n-fold tensor power of an algebra with Koszul signs. When `n = p` the cyclic group
/// acts by `tau(a_1 ⊗ ... ⊗ a_n) = ± a_n ⊗ a_1 ⊗ ... ⊗ a_{n-1}`.
#[derive(Debug)]
pub struct TensorPower<A> {
    base: Arc<A>,
    n: usize,
}

impl<A: GradedAlgebra> TensorPower<A> {
    pub fn new(base: Arc<A>, n: usize) -> Self {
        assert!(n >= 1, "tensor power needs at least one factor");
        TensorPower { base, n }
    }

    pub fn base(&self) -> &Arc<A> {
        &self.base
    }

    pub fn factors(&self) -> usize {
        self.n
    }

    /// The element with `a` in slot `i` and units elsewhere.
    pub fn inject(&self, i: usize, a: &A::Elem) -> Vec<A::Elem> {
        let mut v = vec![self.base.unit(); self.n];
        v[i] = a.clone();
        v
    }

    /// Tensor product of chains in the factors, without signs.
    pub fn tensor(&self, parts: &[Chain<A::Elem>]) -> Chain<Vec<A::Elem>> {
        let f = self.base.field();
        let mut acc: Chain<Vec<A::Elem>> = Chain::from_key(Vec::new());
        for p in parts {
            let mut next = Chain::zero();
            for (prefix, c) in acc.iter() {
                for (e, d) in p.iter() {
                    let mut k = prefix.clone();
                    k.push(e.clone());
                    next.add_term(f, k, f.mul(*c, *d));
                }
            }
            acc = next;
        }
        acc
    }

    /// Apply a permutation of the factors: the result has `x[perm[i]]` in slot `i`.
    pub fn permute(&self, x: &[A::Elem], perm: &[usize]) -> Chain<Vec<A::Elem>> {
        let f = self.base.field();
        let degs: Vec<i64> = x.iter().map(|e| self.base.degree(e) as i64).collect();
        let mut sign = 0i64;
        for i in 0..perm.len() {
            for j in i + 1..perm.len() {
                if perm[i] > perm[j] {
                    sign += degs[perm[i]] * degs[perm[j]];
                }
            }
        }
        let v: Vec<A::Elem> = perm.iter().map(|&i| x[i].clone()).collect();
        Chain::term(f, v, f.sign(sign))
    }

    fn basis_rec(
        &self,
        slots: usize,
        degree: i32,
        out: &mut Vec<Vec<A::Elem>>,
        prefix: &mut Vec<A::Elem>,
    ) -> Result<()> {
        if slots == 1 {
            for e in self.base.basis(degree)? {
                let mut v = prefix.clone();
                v.push(e);
                out.push(v);
            }
            return Ok(());
        }
        for d in 0..=degree {
            for e in self.base.basis(d)? {
                prefix.push(e);
                self.basis_rec(slots - 1, degree - d, out, prefix)?;
                prefix.pop();
            }
        }
        Ok(())
    }
}

impl<A: GradedAlgebra> GradedAlgebra for TensorPower<A> {
    type Elem = Vec<A::Elem>;

    fn field(&self) -> PrimeField {
        self.base.field()
    }

    fn degree(&self, e: &Self::Elem) -> i32 {
        e.iter().map(|x| self.base.degree(x)).sum()
    }

    fn weight(&self, e: &Self::Elem) -> u32 {
        e.iter().map(|x| self.base.weight(x)).sum()
    }

    fn unit(&self) -> Self::Elem {
        vec![self.base.unit(); self.n]
    }

    fn basis(&self, degree: i32) -> Result<Vec<Self::Elem>> {
        let mut out = Vec::new();
        if degree >= 0 {
            self.basis_rec(self.n, degree, &mut out, &mut Vec::new())?;
        }
        out.sort();
        Ok(out)
    }

    fn multiply_basis(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Chain<Self::Elem>> {
        let f = self.field();
        let mut sign = 0i64;
        for i in 0..self.n {
            for j in 0..i {
                sign += self.base.degree(&a[i]) as i64 * self.base.degree(&b[j]) as i64;
            }
        }
        let parts: Vec<Chain<A::Elem>> = a
            .iter()
            .zip(b)
            .map(|(x, y)| self.base.multiply_basis(x, y))
            .collect::<Result<_>>()?;
        Ok(self.tensor(&parts).scale(f, f.sign(sign)))
    }

    fn differential_basis(&self, a: &Self::Elem) -> Result<Chain<Self::Elem>> {
        let f = self.field();
        let mut out = Chain::zero();
        let mut prefix = 0i64;
        for i in 0..self.n {
            let da = self.base.differential_basis(&a[i])?;
            for (e, c) in da.iter() {
                let mut v = a.clone();
                v[i] = e.clone();
                out.add_term(f, v, f.mul(*c, f.sign(prefix)));
            }
            prefix += self.base.degree(&a[i]) as i64;
        }
        Ok(out)
    }

    fn label(&self, e: &Self::Elem) -> String {
        let parts: Vec<String> = e
            .iter()
            .map(|x| {
                let l = self.base.label(x);
                if l.contains(' ') {
                    format!("({l})")
                } else {
                    l
                }
            })
            .collect();
        parts.join("⊗")
    }
}

impl<A: GradedAlgebra> PiAlgebra for TensorPower<A> {
    fn tau_basis(&self, e: &Self::Elem) -> Result<Chain<Self::Elem>> {
        let n = self.n;
        let perm: Vec<usize> = (0..n).map(|i| (i + n - 1) % n).collect();
        Ok(self.permute(e, &perm))
    }
}
