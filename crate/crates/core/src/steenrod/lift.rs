use crate::chain::Chain;
use crate::complex::{differential_matrix, ChainComplex};
use crate::error::{Error, Result};
use crate::linalg::{Solver, SparseMatrix, SparseVec};

/// Matrix of a degree preserving map between two complexes in degree `n`.
pub fn map_matrix<S, T, F>(source: &S, target: &T, f: &F, n: i32) -> Result<SparseMatrix>
where
    S: ChainComplex + ?Sized,
    T: ChainComplex + ?Sized,
    F: Fn(&S::Elem) -> Result<Chain<T::Elem>>,
{
    let src = source.indexed_basis(n)?;
    let tgt = target.indexed_basis(n)?;
    let mut columns = Vec::with_capacity(src.len());
    for e in &src.elements {
        columns.push(tgt.to_sparse(&f(e)?)?);
    }
    SparseMatrix::from_columns(target.field(), tgt.len(), columns)
}

/// Degree of a nonzero homogeneous chain.
pub fn chain_degree<C: ChainComplex + ?Sized>(c: &C, z: &Chain<C::Elem>) -> Result<Option<i32>> {
    let mut degrees = z.keys().map(|e| c.degree(e));
    let Some(n) = degrees.next() else {
        return Ok(None);
    };
    if degrees.any(|m| m != n) {
        return Err(Error::DegreeMismatch("inhomogeneous chain".into()));
    }
    Ok(Some(n))
}

/// A cycle `z'` of `source` with `f(z') = z`, for a cycle `z` of `target` and a chain map `f`
/// that is surjective with acyclic kernel in the degrees involved.
///
/// Take the preimage `y` of `z` supported on the earliest basis elements, then correct it by
/// `k ∈ ker f` with `d k = d y`.
pub fn lift_cycle<S, T, F>(
    source: &S,
    target: &T,
    f: &F,
    z: &Chain<T::Elem>,
) -> Result<Chain<S::Elem>>
where
    S: ChainComplex + ?Sized,
    T: ChainComplex + ?Sized,
    F: Fn(&S::Elem) -> Result<Chain<T::Elem>>,
{
    let field = source.field();
    let Some(n) = chain_degree(target, z)? else {
        return Ok(Chain::zero());
    };
    if !target.differential(z)?.is_zero() {
        return Err(Error::NotACycle(format!("{} terms in degree {n}", z.len())));
    }
    let src = source.indexed_basis(n)?;
    let fm = map_matrix(source, target, f, n)?;
    let solver = Solver::new(field, &fm);
    let b = target.indexed_basis(n)?.to_sparse(z)?;
    let y = solver.solve(&b).map_err(|_| Error::NotSurjectiveHere(n))?;

    let dm = differential_matrix(source, n)?;
    let dy = dm.mul_vec(field, &y);
    if dy.is_empty() {
        return Ok(src.from_sparse(field, &y));
    }
    let kernel = solver.kernel();
    let columns: Vec<SparseVec> = kernel.iter().map(|k| dm.mul_vec(field, k)).collect();
    let dk = SparseMatrix::from_columns(field, dm.rows(), columns)?;
    let c = Solver::new(field, &dk)
        .solve(&dy)
        .map_err(|_| Error::KernelNotAcyclicHere(n + 1))?;
    let mut out = y;
    for &(j, cj) in &c {
        crate::linalg::axpy(field, &mut out, &kernel[j], field.neg(cj));
    }
    let lifted = src.from_sparse(field, &out);
    debug_assert!(source.differential(&lifted)?.is_zero());
    Ok(lifted)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::{AlgebraComplex, FreeAlgebra, Generator, Word};
    use crate::field::PrimeField;

    #[test]
    fn identity_lift() {
        let a = Arc::new(
            FreeAlgebra::new(
                PrimeField::F2,
                vec![Generator::new("x", 2), Generator::new("y", 3)],
                vec![Chain::zero(), Chain::zero()],
                10,
            )
            .unwrap(),
        );
        let c = AlgebraComplex::new(a);
        let id = |e: &Word| Ok(Chain::from_key(e.clone()));
        let z = Chain::from_terms(PrimeField::F2, [(vec![0u16, 1], 1), (vec![1, 0], 1)]);
        assert_eq!(lift_cycle(&c, &c, &id, &z).unwrap(), z);
    }

    #[test]
    fn non_cycles_and_missing_preimages() {
        let f = PrimeField::F2;
        let a = Arc::new(
            FreeAlgebra::new(
                f,
                vec![Generator::new("x", 2), Generator::new("z", 3)],
                vec![Chain::zero(), Chain::from_key(vec![0, 0])],
                8,
            )
            .unwrap(),
        );
        let c = AlgebraComplex::new(a);
        let id = |e: &Word| Ok(Chain::from_key(e.clone()));
        let zero = |_: &Word| Ok(Chain::zero());
        let z = Chain::from_key(vec![1u16]);
        assert!(matches!(
            lift_cycle(&c, &c, &id, &z),
            Err(Error::NotACycle(_))
        ));
        let x = Chain::from_key(vec![0u16]);
        assert!(matches!(
            lift_cycle(&c, &c, &zero, &x),
            Err(Error::NotSurjectiveHere(2))
        ));
    }
}
