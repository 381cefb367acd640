//! Graded differential algebras over F_p with cohomological grading.

use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;
use std::sync::{Arc, Mutex};

use crate::chain::Chain;
use crate::complex::{ChainComplex, IndexedBasis};
use crate::error::Result;
use crate::field::PrimeField;

mod free;
mod table;
mod tensor;
mod vhat;

pub use free::{FreeAlgebra, Generator, Word};
pub use table::{TableAlgebra, TableEntry};
pub use tensor::TensorPower;
pub use vhat::{build_vhat, HatGenerator, VhatModel};

/// A connected differential graded algebra with a homogeneous basis, finite in each degree.
pub trait GradedAlgebra: Send + Sync {
    type Elem: Clone + Eq + Ord + Hash + Debug + Send + Sync;

    fn field(&self) -> PrimeField;
    fn degree(&self, e: &Self::Elem) -> i32;
    /// Auxiliary grading preserved by product and differential; zero when absent.
    fn weight(&self, _e: &Self::Elem) -> u32 {
        0
    }
    fn unit(&self) -> Self::Elem;
    /// Basis of the given degree in a fixed deterministic order.
    fn basis(&self, degree: i32) -> Result<Vec<Self::Elem>>;
    fn multiply_basis(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Chain<Self::Elem>>;
    fn differential_basis(&self, a: &Self::Elem) -> Result<Chain<Self::Elem>>;
    fn label(&self, e: &Self::Elem) -> String;

    fn is_unit(&self, e: &Self::Elem) -> bool {
        *e == self.unit()
    }

    fn multiply(&self, x: &Chain<Self::Elem>, y: &Chain<Self::Elem>) -> Result<Chain<Self::Elem>> {
        let f = self.field();
        let mut out = Chain::zero();
        for (a, ca) in x.iter() {
            for (b, cb) in y.iter() {
                out.add_scaled(f, &self.multiply_basis(a, b)?, f.mul(*ca, *cb));
            }
        }
        Ok(out)
    }

    fn differential(&self, x: &Chain<Self::Elem>) -> Result<Chain<Self::Elem>> {
        x.map_linear(self.field(), |a| self.differential_basis(a))
    }

    fn label_chain(&self, x: &Chain<Self::Elem>) -> String {
        label_terms(self.field(), x.iter().map(|(e, c)| (self.label(e), *c)))
    }
}

/// An algebra with an action of the cyclic group of order p by algebra automorphisms.
pub trait PiAlgebra: GradedAlgebra {
    /// The action of the chosen generator tau.
    fn tau_basis(&self, e: &Self::Elem) -> Result<Chain<Self::Elem>>;
}

/// Render a linear combination as `a + 2 b - c`, or `0`.
pub fn label_terms(f: PrimeField, terms: impl Iterator<Item = (String, u32)>) -> String {
    let mut out = String::new();
    for (label, c) in terms {
        let s = f.signed(c);
        if out.is_empty() {
            if s < 0 {
                out.push('-');
            }
        } else {
            out.push_str(if s < 0 { " - " } else { " + " });
        }
        if s.abs() != 1 {
            out.push_str(&format!("{} ", s.abs()));
        }
        out.push_str(&label);
    }
    if out.is_empty() {
        "0".to_string()
    } else {
        out
    }
}

/// Checks `d^2 = 0`, the Leibniz rule and associativity on all basis elements up to `max_degree`.
pub fn check_dga_axioms<A: GradedAlgebra>(alg: &A, max_degree: i32) -> Result<()> {
    use crate::error::Error;
    let f = alg.field();
    for n in 0..=max_degree {
        for a in alg.basis(n)? {
            if n + 2 <= max_degree {
                let dd = alg.differential(&alg.differential_basis(&a)?)?;
                if !dd.is_zero() {
                    return Err(Error::ChainMapViolation(format!(
                        "d^2 {} != 0",
                        alg.label(&a)
                    )));
                }
            }
            for m in 0..=max_degree - n {
                for b in alg.basis(m)? {
                    let ab = alg.multiply_basis(&a, &b)?;
                    if n + m < max_degree {
                        let lhs = alg.differential(&ab)?;
                        let mut rhs = alg
                            .multiply(&alg.differential_basis(&a)?, &Chain::from_key(b.clone()))?;
                        rhs.add_scaled(
                            f,
                            &alg.multiply(
                                &Chain::from_key(a.clone()),
                                &alg.differential_basis(&b)?,
                            )?,
                            f.sign(n as i64),
                        );
                        if lhs != rhs {
                            return Err(Error::ChainMapViolation(format!(
                                "Leibniz fails on {} * {}",
                                alg.label(&a),
                                alg.label(&b)
                            )));
                        }
                    }
                    for k in 0..=max_degree - n - m {
                        for c in alg.basis(k)? {
                            let left = alg.multiply(&ab, &Chain::from_key(c.clone()))?;
                            let right = alg.multiply(
                                &Chain::from_key(a.clone()),
                                &alg.multiply_basis(&b, &c)?,
                            )?;
                            if left != right {
                                return Err(Error::ChainMapViolation(format!(
                                    "associativity fails on {}, {}, {}",
                                    alg.label(&a),
                                    alg.label(&b),
                                    alg.label(&c)
                                )));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// Graded commutativity on basis elements up to `max_degree`.
pub fn is_graded_commutative<A: GradedAlgebra>(alg: &A, max_degree: i32) -> Result<bool> {
    let f = alg.field();
    for n in 0..=max_degree {
        for m in 0..=max_degree - n {
            for a in alg.basis(n)? {
                for b in alg.basis(m)? {
                    let ab = alg.multiply_basis(&a, &b)?;
                    let ba = alg.multiply_basis(&b, &a)?.scale(f, f.sign((n * m) as i64));
                    if ab != ba {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// The underlying cochain complex of an algebra.
pub struct AlgebraComplex<A: GradedAlgebra> {
    alg: Arc<A>,
    cache: Mutex<HashMap<i32, Arc<IndexedBasis<A::Elem>>>>,
}

impl<A: GradedAlgebra> AlgebraComplex<A> {
    pub fn new(alg: Arc<A>) -> Self {
        AlgebraComplex {
            alg,
            cache: Default::default(),
        }
    }

    pub fn algebra(&self) -> &Arc<A> {
        &self.alg
    }
}

impl<A: GradedAlgebra> ChainComplex for AlgebraComplex<A> {
    type Elem = A::Elem;

    fn field(&self) -> PrimeField {
        self.alg.field()
    }

    fn degree(&self, e: &A::Elem) -> i32 {
        self.alg.degree(e)
    }

    fn indexed_basis(&self, degree: i32) -> Result<Arc<IndexedBasis<A::Elem>>> {
        if let Some(b) = self.cache.lock().expect("cache").get(&degree) {
            return Ok(b.clone());
        }
        let elements = if degree < 0 {
            Vec::new()
        } else {
            self.alg.basis(degree)?
        };
        let b = Arc::new(IndexedBasis::new(elements));
        self.cache.lock().expect("cache").insert(degree, b.clone());
        Ok(b)
    }

    fn differential_basis(&self, e: &A::Elem) -> Result<Chain<A::Elem>> {
        self.alg.differential_basis(e)
    }
}
