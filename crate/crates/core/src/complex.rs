//! Cochain complexes with finite homogeneous bases in each degree.

use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;
use std::sync::Arc;

use crate::chain::Chain;
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::linalg::{homology_decomposition, HomologySpace, SparseMatrix, SparseVec};

/// Basis of one degree together with its reverse index.
#[derive(Debug)]
pub struct IndexedBasis<E> {
    pub elements: Vec<E>,
    pub index: HashMap<E, usize>,
}

impl<E: Clone + Eq + Hash + Ord> IndexedBasis<E> {
    pub fn new(elements: Vec<E>) -> Self {
        let index = elements
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, e)| (e, i))
            .collect();
        IndexedBasis { elements, index }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn to_sparse(&self, x: &Chain<E>) -> Result<SparseVec>
    where
        E: Debug,
    {
        let mut out: SparseVec = Vec::with_capacity(x.len());
        for (e, c) in x.iter() {
            let i = self.index.get(e).ok_or_else(|| {
                Error::DegreeMismatch(format!("{e:?} is not in the expected basis"))
            })?;
            out.push((*i, *c));
        }
        out.sort_by_key(|t| t.0);
        Ok(out)
    }

    pub fn from_sparse(&self, f: PrimeField, v: &[(usize, u32)]) -> Chain<E> {
        Chain::from_terms(f, v.iter().map(|&(i, c)| (self.elements[i].clone(), c)))
    }
}

/// A cochain complex over F_p, graded so that `d` raises degree by one.
pub trait ChainComplex: Send + Sync {
    type Elem: Clone + Eq + Ord + Hash + Debug + Send + Sync;

    fn field(&self) -> PrimeField;
    fn degree(&self, e: &Self::Elem) -> i32;
    fn indexed_basis(&self, degree: i32) -> Result<Arc<IndexedBasis<Self::Elem>>>;
    fn differential_basis(&self, e: &Self::Elem) -> Result<Chain<Self::Elem>>;

    fn differential(&self, x: &Chain<Self::Elem>) -> Result<Chain<Self::Elem>> {
        x.map_linear(self.field(), |e| self.differential_basis(e))
    }
}

/// A complex with an action of the cyclic group of order p by chain maps.
pub trait PiComplex: ChainComplex {
    fn tau_basis(&self, e: &Self::Elem) -> Result<Chain<Self::Elem>>;

    fn tau(&self, x: &Chain<Self::Elem>) -> Result<Chain<Self::Elem>> {
        x.map_linear(self.field(), |e| self.tau_basis(e))
    }
}

/// The matrix of `d` from degree `n` to degree `n + 1`.
pub fn differential_matrix<C: ChainComplex + ?Sized>(c: &C, n: i32) -> Result<SparseMatrix> {
    let src = c.indexed_basis(n)?;
    let tgt = c.indexed_basis(n + 1)?;
    let mut columns = Vec::with_capacity(src.len());
    for e in &src.elements {
        columns.push(tgt.to_sparse(&c.differential_basis(e)?)?);
    }
    SparseMatrix::from_columns(c.field(), tgt.len(), columns)
}

/// Homology in degree `n`, with representatives expressed in the basis of degree `n`.
pub fn homology_at<C: ChainComplex + ?Sized>(c: &C, n: i32) -> Result<HomologySpace> {
    let d_in = differential_matrix(c, n - 1)?;
    let d_out = differential_matrix(c, n)?;
    homology_decomposition(c.field(), &d_in, &d_out)
}
