//! Exact linear algebra over F_p: rank, kernels, consistent solves and homology.
//!
//! All routines process matrix columns in index order and pivot on the smallest row index
//! of each reduced column, so kernel bases and particular solutions are deterministic.
//! Narrow matrices go through a dense path; the two paths produce identical output.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::PrimeField;

/// Sparse vector: strictly increasing indices with nonzero coefficients.
pub type SparseVec = Vec<(usize, u32)>;

const DENSE_COLUMN_LIMIT: usize = 64;
const DENSE_ENTRY_LIMIT: usize = 1 << 18;

/// `y += c * x`.
pub fn axpy(f: PrimeField, y: &mut SparseVec, x: &[(usize, u32)], c: u32) {
    let c = c % f.p();
    if c == 0 || x.is_empty() {
        return;
    }
    let mut out = Vec::with_capacity(y.len() + x.len());
    let (mut i, mut j) = (0, 0);
    while i < y.len() || j < x.len() {
        if j == x.len() || (i < y.len() && y[i].0 < x[j].0) {
            out.push(y[i]);
            i += 1;
        } else if i == y.len() || x[j].0 < y[i].0 {
            out.push((x[j].0, f.mul(x[j].1, c)));
            j += 1;
        } else {
            let v = f.add(y[i].1, f.mul(x[j].1, c));
            if v != 0 {
                out.push((y[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    *y = out;
}

pub fn sparse_from_dense(f: PrimeField, v: &[u32]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter_map(|(i, &c)| {
            let c = c % f.p();
            (c != 0).then_some((i, c))
        })
        .collect()
}

pub fn sparse_to_dense(v: &[(usize, u32)], len: usize) -> Vec<u32> {
    let mut out = vec![0; len];
    for &(i, c) in v {
        out[i] = c;
    }
    out
}

fn sparse_from_unsorted(f: PrimeField, mut v: Vec<(usize, u32)>) -> SparseVec {
    v.sort_by_key(|e| e.0);
    let mut out: SparseVec = Vec::with_capacity(v.len());
    for (i, c) in v {
        let c = c % f.p();
        match out.last_mut() {
            Some(last) if last.0 == i => last.1 = f.add(last.1, c),
            _ => out.push((i, c)),
        }
    }
    out.retain(|e| e.1 != 0);
    out
}

/// Column-major sparse matrix over F_p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            columns: vec![Vec::new(); cols],
        }
    }

    /// Build from `(row, col, value)` triples; repeated positions are summed.
    pub fn from_entries(
        f: PrimeField,
        rows: usize,
        cols: usize,
        entries: impl IntoIterator<Item = (usize, usize, u32)>,
    ) -> Result<Self> {
        let mut buckets: Vec<Vec<(usize, u32)>> = vec![Vec::new(); cols];
        for (r, c, v) in entries {
            if r >= rows || c >= cols {
                return Err(Error::Invalid(format!(
                    "entry ({r}, {c}) outside {rows}x{cols}"
                )));
            }
            buckets[c].push((r, v));
        }
        let columns = buckets
            .into_iter()
            .map(|b| sparse_from_unsorted(f, b))
            .collect();
        Ok(SparseMatrix {
            rows,
            cols,
            columns,
        })
    }

    pub fn from_columns(f: PrimeField, rows: usize, columns: Vec<SparseVec>) -> Result<Self> {
        let cols = columns.len();
        let columns: Vec<SparseVec> = columns
            .into_iter()
            .map(|c| sparse_from_unsorted(f, c))
            .collect();
        if columns
            .iter()
            .any(|c| c.last().is_some_and(|e| e.0 >= rows))
        {
            return Err(Error::Invalid("column entry outside the row range".into()));
        }
        Ok(SparseMatrix {
            rows,
            cols,
            columns,
        })
    }

    /// Build from dense rows.
    pub fn from_dense(f: PrimeField, data: &[Vec<u32>]) -> Result<Self> {
        let rows = data.len();
        let cols = data.first().map_or(0, |r| r.len());
        if data.iter().any(|r| r.len() != cols) {
            return Err(Error::Invalid("ragged dense matrix".into()));
        }
        let entries = data
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().enumerate().map(move |(j, &v)| (i, j, v)));
        Self::from_entries(f, rows, cols, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> &[(usize, u32)] {
        &self.columns[j]
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(j, c)| c.iter().map(move |&(i, v)| (i, j, v)))
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn to_dense(&self) -> Vec<Vec<u32>> {
        let mut out = vec![vec![0; self.cols]; self.rows];
        for (i, j, v) in self.entries() {
            out[i][j] = v;
        }
        out
    }

    pub fn mul_vec(&self, f: PrimeField, x: &[(usize, u32)]) -> SparseVec {
        let mut out = Vec::new();
        for &(j, c) in x {
            axpy(f, &mut out, &self.columns[j], c);
        }
        out
    }

    /// `self * other`.
    pub fn compose(&self, f: PrimeField, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.cols != other.rows {
            return Err(Error::Invalid(format!(
                "cannot compose {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let columns = other.columns.iter().map(|c| self.mul_vec(f, c)).collect();
        Ok(SparseMatrix {
            rows: self.rows,
            cols: other.cols,
            columns,
        })
    }
}

/// Incremental semi-echelon basis. Every stored vector has a distinct leading index and
/// carries a history vector tracking how it was formed.
#[derive(Debug, Clone)]
pub struct Reducer {
    f: PrimeField,
    pivot_of: HashMap<usize, usize>,
    vectors: Vec<SparseVec>,
    history: Vec<SparseVec>,
}

impl Reducer {
    pub fn new(f: PrimeField) -> Self {
        Reducer {
            f,
            pivot_of: HashMap::new(),
            vectors: Vec::new(),
            history: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.vectors.len()
    }

    /// Reduce by leading terms. Maintains `v - M h` where `M` maps histories to vectors.
    pub fn reduce(&self, v: &mut SparseVec, h: &mut SparseVec) {
        while let Some(&(lead, c)) = v.first() {
            let Some(&k) = self.pivot_of.get(&lead) else {
                break;
            };
            let neg = self.f.neg(c);
            axpy(self.f, v, &self.vectors[k], neg);
            axpy(self.f, h, &self.history[k], neg);
        }
    }

    /// Reduce every entry sitting at a pivot position.
    pub fn reduce_fully(&self, v: &mut SparseVec, h: &mut SparseVec) {
        let mut i = 0;
        while i < v.len() {
            let (pos, c) = v[i];
            match self.pivot_of.get(&pos) {
                Some(&k) => {
                    let neg = self.f.neg(c);
                    axpy(self.f, v, &self.vectors[k], neg);
                    axpy(self.f, h, &self.history[k], neg);
                }
                None => i += 1,
            }
        }
    }

    /// Insert a vector; returns `Err(h)` with the dependency history when it reduces to zero.
    pub fn insert(
        &mut self,
        mut v: SparseVec,
        mut h: SparseVec,
    ) -> std::result::Result<usize, SparseVec> {
        self.reduce(&mut v, &mut h);
        match v.first() {
            None => Err(h),
            Some(&(lead, c)) => {
                let inv = self.f.inv(c);
                let scale =
                    |x: &mut SparseVec| x.iter_mut().for_each(|e| e.1 = self.f.mul(e.1, inv));
                scale(&mut v);
                scale(&mut h);
                self.pivot_of.insert(lead, self.vectors.len());
                self.vectors.push(v);
                self.history.push(h);
                Ok(lead)
            }
        }
    }

    pub fn contains(&self, v: &[(usize, u32)]) -> bool {
        let mut v = v.to_vec();
        let mut h = Vec::new();
        self.reduce(&mut v, &mut h);
        v.is_empty()
    }
}

struct ColumnElimination {
    rank: usize,
    kernel: Vec<SparseVec>,
    reducer: Option<Reducer>,
    dense: Option<DenseElimination>,
}

fn use_dense(m: &SparseMatrix) -> bool {
    m.cols < DENSE_COLUMN_LIMIT && m.rows.saturating_mul(m.cols.max(1)) <= DENSE_ENTRY_LIMIT
}

fn eliminate(f: PrimeField, m: &SparseMatrix, force: Option<bool>) -> ColumnElimination {
    if force.unwrap_or_else(|| use_dense(m)) {
        let d = DenseElimination::run(f, m);
        ColumnElimination {
            rank: d.pivot_rows.len(),
            kernel: d.kernel.clone(),
            reducer: None,
            dense: Some(d),
        }
    } else {
        let mut r = Reducer::new(f);
        let mut kernel = Vec::new();
        for j in 0..m.cols {
            if let Err(h) = r.insert(m.columns[j].clone(), vec![(j, 1)]) {
                kernel.push(h);
            }
        }
        ColumnElimination {
            rank: r.rank(),
            kernel,
            reducer: Some(r),
            dense: None,
        }
    }
}

impl ColumnElimination {
    fn solve(&self, f: PrimeField, b: &[(usize, u32)]) -> Result<SparseVec> {
        if let Some(d) = &self.dense {
            return d.solve(f, b);
        }
        let r = self.reducer.as_ref().expect("sparse elimination");
        let mut v = b.to_vec();
        let mut h = Vec::new();
        r.reduce(&mut v, &mut h);
        if !v.is_empty() {
            return Err(Error::NoSolution);
        }
        h.iter_mut().for_each(|e| e.1 = f.neg(e.1));
        Ok(h)
    }
}

/// Dense variant of the same column-by-column elimination.
struct DenseElimination {
    rows: usize,
    cols: usize,
    // stored reduced columns (dense) with their pivot row and history
    stored: Vec<(usize, Vec<u32>, Vec<u32>)>,
    pivot_rows: HashMap<usize, usize>,
    kernel: Vec<SparseVec>,
}

impl DenseElimination {
    fn reduce(&self, f: PrimeField, v: &mut [u32], h: &mut [u32]) {
        loop {
            let Some(lead) = v.iter().position(|&c| c != 0) else {
                return;
            };
            let Some(&k) = self.pivot_rows.get(&lead) else {
                return;
            };
            let c = f.neg(v[lead]);
            let (_, sv, sh) = &self.stored[k];
            for (a, b) in v.iter_mut().zip(sv) {
                *a = f.add(*a, f.mul(*b, c));
            }
            for (a, b) in h.iter_mut().zip(sh) {
                *a = f.add(*a, f.mul(*b, c));
            }
        }
    }

    fn run(f: PrimeField, m: &SparseMatrix) -> Self {
        let mut d = DenseElimination {
            rows: m.rows,
            cols: m.cols,
            stored: Vec::new(),
            pivot_rows: HashMap::new(),
            kernel: Vec::new(),
        };
        for j in 0..m.cols {
            let mut v = sparse_to_dense(&m.columns[j], m.rows);
            let mut h = vec![0; m.cols];
            h[j] = 1;
            d.reduce(f, &mut v, &mut h);
            match v.iter().position(|&c| c != 0) {
                None => d.kernel.push(sparse_from_dense(f, &h)),
                Some(lead) => {
                    let inv = f.inv(v[lead]);
                    v.iter_mut().for_each(|c| *c = f.mul(*c, inv));
                    h.iter_mut().for_each(|c| *c = f.mul(*c, inv));
                    d.pivot_rows.insert(lead, d.stored.len());
                    d.stored.push((lead, v, h));
                }
            }
        }
        d
    }

    fn solve(&self, f: PrimeField, b: &[(usize, u32)]) -> Result<SparseVec> {
        if b.last().is_some_and(|e| e.0 >= self.rows) {
            return Err(Error::Invalid(
                "right-hand side longer than the column space".into(),
            ));
        }
        let mut v = sparse_to_dense(b, self.rows);
        let mut h = vec![0; self.cols];
        self.reduce(f, &mut v, &mut h);
        if v.iter().any(|&c| c != 0) {
            return Err(Error::NoSolution);
        }
        h.iter_mut().for_each(|c| *c = f.neg(*c));
        Ok(sparse_from_dense(f, &h))
    }
}

pub fn rank(f: PrimeField, m: &SparseMatrix) -> usize {
    eliminate(f, m, None).rank
}

/// Kernel basis; the `k`-th vector has a unit coefficient at its largest index, and these
/// indices increase with `k`.
pub fn kernel_basis(f: PrimeField, m: &SparseMatrix) -> Vec<SparseVec> {
    eliminate(f, m, None).kernel
}

/// Some `x` with `m x = b`, or `NoSolution`.
pub fn solve_consistent(f: PrimeField, m: &SparseMatrix, b: &[(usize, u32)]) -> Result<SparseVec> {
    eliminate(f, m, None).solve(f, b)
}

/// Forces one elimination path; used to cross-check the dense and sparse routes.
pub fn rank_kernel_with(f: PrimeField, m: &SparseMatrix, dense: bool) -> (usize, Vec<SparseVec>) {
    let e = eliminate(f, m, Some(dense));
    (e.rank, e.kernel)
}

pub fn solve_with(
    f: PrimeField,
    m: &SparseMatrix,
    b: &[(usize, u32)],
    dense: bool,
) -> Result<SparseVec> {
    eliminate(f, m, Some(dense)).solve(f, b)
}

/// A reusable factorisation for repeated solves against one matrix.
pub struct Solver {
    f: PrimeField,
    inner: ColumnElimination,
}

impl Solver {
    pub fn new(f: PrimeField, m: &SparseMatrix) -> Self {
        Solver {
            f,
            inner: eliminate(f, m, None),
        }
    }

    pub fn rank(&self) -> usize {
        self.inner.rank
    }

    pub fn kernel(&self) -> &[SparseVec] {
        &self.inner.kernel
    }

    pub fn solve(&self, b: &[(usize, u32)]) -> Result<SparseVec> {
        self.inner.solve(self.f, b)
    }
}

/// The unique representative of `v + span(basis)` with zero coefficient at every pivot of
/// the span, pivots being chosen at smallest indices.
pub fn normal_form(f: PrimeField, basis: &[SparseVec], v: &[(usize, u32)]) -> SparseVec {
    let mut r = Reducer::new(f);
    for b in basis {
        let _ = r.insert(b.clone(), Vec::new());
    }
    let mut v = v.to_vec();
    let mut h = Vec::new();
    r.reduce_fully(&mut v, &mut h);
    v
}

/// Homology of `C_- --d_in--> C --d_out--> C_+` at the middle term.
#[derive(Debug, Clone)]
pub struct HomologySpace {
    f: PrimeField,
    dim_chains: usize,
    representatives: Vec<SparseVec>,
    reducer: Reducer,
    d_out: SparseMatrix,
}

impl HomologySpace {
    pub fn dimension(&self) -> usize {
        self.representatives.len()
    }

    pub fn chain_dimension(&self) -> usize {
        self.dim_chains
    }

    pub fn representatives(&self) -> &[SparseVec] {
        &self.representatives
    }

    pub fn is_cycle(&self, z: &[(usize, u32)]) -> bool {
        self.d_out.mul_vec(self.f, z).is_empty()
    }

    /// Coordinates of the class of the cycle `z` in the representative basis.
    pub fn project(&self, z: &[(usize, u32)]) -> Result<Vec<u32>> {
        if !self.is_cycle(z) {
            return Err(Error::NotACycle("projection of a non-cycle".into()));
        }
        let mut v = z.to_vec();
        let mut h = Vec::new();
        self.reducer.reduce(&mut v, &mut h);
        if !v.is_empty() {
            return Err(Error::NotACycle("cycle outside the computed kernel".into()));
        }
        let mut out = vec![0; self.dimension()];
        for (i, c) in h {
            out[i] = self.f.neg(c);
        }
        Ok(out)
    }

    pub fn is_boundary(&self, z: &[(usize, u32)]) -> Result<bool> {
        Ok(self.project(z)?.iter().all(|&c| c == 0))
    }
}

pub fn homology_decomposition(
    f: PrimeField,
    d_in: &SparseMatrix,
    d_out: &SparseMatrix,
) -> Result<HomologySpace> {
    if d_in.rows != d_out.cols {
        return Err(Error::Invalid(format!(
            "incompatible differentials: {} rows into {} columns",
            d_in.rows, d_out.cols
        )));
    }
    if !d_out.compose(f, d_in)?.is_zero() {
        return Err(Error::CompositionNotZero);
    }
    let mut reducer = Reducer::new(f);
    for j in 0..d_in.cols {
        let _ = reducer.insert(d_in.columns[j].clone(), Vec::new());
    }
    let mut representatives = Vec::new();
    for k in kernel_basis(f, d_out) {
        let tag = vec![(representatives.len(), 1)];
        if reducer.insert(k.clone(), tag).is_ok() {
            representatives.push(k);
        }
    }
    Ok(HomologySpace {
        f,
        dim_chains: d_out.cols,
        representatives,
        reducer,
        d_out: d_out.clone(),
    })
}
