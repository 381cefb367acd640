use std::collections::HashMap;

use super::{check_dga_axioms, GradedAlgebra};
use crate::chain::Chain;
use crate::error::{Error, Result};
use crate::field::PrimeField;

/// A finite-dimensional algebra given by structure tables. Index 0 is the unit `1`.
#[derive(Debug, Clone)]
pub struct TableAlgebra {
    field: PrimeField,
    names: Vec<String>,
    degrees: Vec<i32>,
    products: HashMap<(usize, usize), Chain<usize>>,
    differentials: Vec<Chain<usize>>,
    top: i32,
}

/// One basis element of a table algebra besides the unit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableEntry {
    pub name: String,
    pub degree: i32,
}

impl TableAlgebra {
    /// `products` lists the nonzero products of non-unit basis elements by index (the unit is
    /// index 0, entries are indexed from 1). Axioms are checked on the whole table.
    pub fn new(
        field: PrimeField,
        entries: Vec<TableEntry>,
        products: HashMap<(usize, usize), Chain<usize>>,
        differentials: HashMap<usize, Chain<usize>>,
    ) -> Result<Self> {
        let mut names = vec!["1".to_string()];
        let mut degrees = vec![0];
        for e in entries {
            if e.degree < 2 {
                return Err(Error::DegreeMismatch(format!(
                    "{} has degree {}; only 1-connected algebras are supported",
                    e.name, e.degree
                )));
            }
            if names.contains(&e.name) {
                return Err(Error::Invalid(format!(
                    "duplicate basis element {}",
                    e.name
                )));
            }
            names.push(e.name);
            degrees.push(e.degree);
        }
        let n = names.len();
        let top = degrees.iter().copied().max().unwrap_or(0);
        let mut ds = vec![Chain::zero(); n];
        for (i, d) in differentials {
            if i == 0 || i >= n {
                return Err(Error::Invalid(format!(
                    "differential given for invalid index {i}"
                )));
            }
            ds[i] = d;
        }
        for ((a, b), c) in &products {
            if *a == 0 || *b == 0 || *a >= n || *b >= n {
                return Err(Error::Invalid(
                    "product table must use non-unit indices".into(),
                ));
            }
            if c.keys()
                .any(|&k| k >= n || degrees[k] != degrees[*a] + degrees[*b])
            {
                return Err(Error::DegreeMismatch(format!(
                    "{} * {}",
                    names[*a], names[*b]
                )));
            }
        }
        for (i, d) in ds.iter().enumerate() {
            if d.keys().any(|&k| k >= n || degrees[k] != degrees[i] + 1) {
                return Err(Error::DegreeMismatch(format!("d({})", names[i])));
            }
        }
        let alg = TableAlgebra {
            field,
            names,
            degrees,
            products,
            differentials: ds,
            top,
        };
        check_dga_axioms(&alg, top)?;
        Ok(alg)
    }

    /// F_p[u]/(u^k) with |u| = 2 and zero differential.
    pub fn truncated_polynomial(field: PrimeField, k: usize) -> Result<Self> {
        if k < 1 {
            return Err(Error::Invalid("truncated polynomial needs k >= 1".into()));
        }
        let entries = (1..k)
            .map(|i| TableEntry {
                name: if i == 1 { "u".into() } else { format!("u^{i}") },
                degree: 2 * i as i32,
            })
            .collect();
        let mut products = HashMap::new();
        for i in 1..k {
            for j in 1..k {
                if i + j < k {
                    products.insert((i, j), Chain::from_key(i + j));
                }
            }
        }
        Self::new(field, entries, products, HashMap::new())
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

impl GradedAlgebra for TableAlgebra {
    type Elem = usize;

    fn field(&self) -> PrimeField {
        self.field
    }

    fn degree(&self, e: &usize) -> i32 {
        self.degrees[*e]
    }

    fn unit(&self) -> usize {
        0
    }

    fn basis(&self, degree: i32) -> Result<Vec<usize>> {
        Ok((0..self.names.len())
            .filter(|&i| self.degrees[i] == degree)
            .collect())
    }

    fn multiply_basis(&self, a: &usize, b: &usize) -> Result<Chain<usize>> {
        if *a == 0 {
            return Ok(Chain::from_key(*b));
        }
        if *b == 0 {
            return Ok(Chain::from_key(*a));
        }
        Ok(self.products.get(&(*a, *b)).cloned().unwrap_or_default())
    }

    fn differential_basis(&self, a: &usize) -> Result<Chain<usize>> {
        Ok(self.differentials[*a].clone())
    }

    fn label(&self, e: &usize) -> String {
        self.names[*e].clone()
    }
}

impl TableAlgebra {
    pub fn top_degree(&self) -> i32 {
        self.top
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truncated_polynomial_products() {
        let a = TableAlgebra::truncated_polynomial(PrimeField::F2, 3).unwrap();
        assert_eq!(a.basis(4).unwrap(), vec![2]);
        assert_eq!(a.multiply_basis(&1, &1).unwrap(), Chain::from_key(2));
        assert!(a.multiply_basis(&1, &2).unwrap().is_zero());
    }

    #[test]
    fn non_associative_table_is_rejected() {
        let f = PrimeField::F2;
        let entries = vec![
            TableEntry {
                name: "a".into(),
                degree: 2,
            },
            TableEntry {
                name: "b".into(),
                degree: 4,
            },
            TableEntry {
                name: "c".into(),
                degree: 6,
            },
        ];
        let mut products = HashMap::new();
        products.insert((1, 1), Chain::from_key(2));
        products.insert((1, 2), Chain::from_key(3));
        assert!(TableAlgebra::new(f, entries, products, HashMap::new()).is_err());
    }
}
