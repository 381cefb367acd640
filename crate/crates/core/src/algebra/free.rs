use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use super::GradedAlgebra;
use crate::chain::Chain;
use crate::error::{Error, Result};
use crate::field::PrimeField;

/// A word in the generators, by generator index. The empty word is the unit.
pub type Word = Vec<u16>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub degree: i32,
    #[serde(default = "one")]
    pub weight: u32,
}

fn one() -> u32 {
    1
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: i32) -> Self {
        Generator {
            name: name.into(),
            degree,
            weight: 1,
        }
    }

    pub fn with_weight(mut self, weight: u32) -> Self {
        self.weight = weight;
        self
    }
}

/// The free graded algebra T(V) with a differential given on generators, truncated at a
/// degree bound beyond which requests fail with `TruncationExceeded`.
#[derive(Debug)]
pub struct FreeAlgebra {
    field: PrimeField,
    generators: Vec<Generator>,
    differentials: Vec<Chain<Word>>,
    truncation: i32,
    basis_cache: Mutex<HashMap<i32, Arc<Vec<Word>>>>,
}

impl FreeAlgebra {
    /// Generators must have degree at least 2 and `d` must raise degree by one and square to
    /// zero. Weights are kept only if every `d(v)` is weight homogeneous; otherwise they are
    /// reset to zero.
    pub fn new(
        field: PrimeField,
        mut generators: Vec<Generator>,
        differentials: Vec<Chain<Word>>,
        truncation: i32,
    ) -> Result<Self> {
        if generators.len() != differentials.len() {
            return Err(Error::Invalid(
                "one differential per generator is required".into(),
            ));
        }
        if generators.len() > u16::MAX as usize {
            return Err(Error::Invalid("too many generators".into()));
        }
        for (i, g) in generators.iter().enumerate() {
            if g.degree < 2 {
                return Err(Error::DegreeMismatch(format!(
                    "generator {} has degree {}; only 1-connected algebras are supported",
                    g.name, g.degree
                )));
            }
            if generators[..i].iter().any(|h| h.name == g.name) {
                return Err(Error::Invalid(format!("duplicate generator {}", g.name)));
            }
        }
        let word_degree = |w: &Word| {
            w.iter()
                .map(|&i| generators[i as usize].degree)
                .sum::<i32>()
        };
        for (g, d) in generators.iter().zip(&differentials) {
            for w in d.keys() {
                if w.iter().any(|&i| i as usize >= generators.len()) {
                    return Err(Error::Invalid(format!(
                        "d({}) uses an unknown generator",
                        g.name
                    )));
                }
                if word_degree(w) != g.degree + 1 {
                    return Err(Error::DegreeMismatch(format!(
                        "d({}) is not of degree {}",
                        g.name,
                        g.degree + 1
                    )));
                }
            }
        }
        let word_weight =
            |gens: &[Generator], w: &Word| w.iter().map(|&i| gens[i as usize].weight).sum::<u32>();
        let homogeneous = generators
            .iter()
            .zip(&differentials)
            .all(|(g, d)| d.keys().all(|w| word_weight(&generators, w) == g.weight));
        if !homogeneous {
            generators.iter_mut().for_each(|g| g.weight = 0);
        }
        let alg = FreeAlgebra {
            field,
            generators,
            differentials,
            truncation,
            basis_cache: Mutex::new(HashMap::new()),
        };
        for i in 0..alg.generators.len() {
            if alg.generators[i].degree + 2 > truncation {
                continue;
            }
            let dd = alg.differential(&alg.differentials[i])?;
            if !dd.is_zero() {
                return Err(Error::UnsupportedDifferential(format!(
                    "d^2({}) != 0",
                    alg.generators[i].name
                )));
            }
        }
        Ok(alg)
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn truncation(&self) -> i32 {
        self.truncation
    }

    pub fn generator_differential(&self, i: usize) -> &Chain<Word> {
        &self.differentials[i]
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    /// True when all weights are positive, i.e. the weight grading was kept.
    pub fn has_weights(&self) -> bool {
        self.generators.iter().all(|g| g.weight > 0)
    }

    /// No generator has a linear term in its differential.
    pub fn is_minimal(&self) -> bool {
        self.differentials
            .iter()
            .all(|d| d.keys().all(|w| w.len() != 1))
    }

    pub fn word_degree(&self, w: &[u16]) -> i32 {
        w.iter().map(|&i| self.generators[i as usize].degree).sum()
    }

    /// Parse a whitespace separated list of generator names; `1` is the unit.
    pub fn parse_word(&self, s: &str) -> Result<Word> {
        let mut out = Vec::new();
        for tok in s.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let (name, power) = match tok.split_once('^') {
                Some((n, p)) => (
                    n,
                    p.parse::<usize>()
                        .map_err(|_| Error::ParseError(format!("bad power in {tok}")))?,
                ),
                None => (tok, 1),
            };
            let i = self
                .generator_index(name)
                .ok_or_else(|| Error::ParseError(format!("unknown generator {name}")))?;
            out.extend(std::iter::repeat_n(i as u16, power));
        }
        Ok(out)
    }

    /// Parse `"0"`, a word, or a sum of words joined by `+`.
    pub fn parse_chain(&self, s: &str) -> Result<Chain<Word>> {
        let s = s.trim();
        let mut out = Chain::zero();
        if s == "0" || s.is_empty() {
            return Ok(out);
        }
        for part in s.split('+') {
            out.add_term(self.field, self.parse_word(part)?, 1);
        }
        Ok(out)
    }

    fn check(&self, degree: i32) -> Result<()> {
        if degree > self.truncation {
            Err(Error::TruncationExceeded {
                degree,
                bound: self.truncation,
            })
        } else {
            Ok(())
        }
    }

    fn compute_basis(&self, n: i32) -> Result<Arc<Vec<Word>>> {
        if let Some(b) = self.basis_cache.lock().expect("basis cache").get(&n) {
            return Ok(b.clone());
        }
        let mut out = Vec::new();
        if n == 0 {
            out.push(Vec::new());
        } else if n > 0 {
            for (i, g) in self.generators.iter().enumerate() {
                if g.degree <= n {
                    for tail in self.compute_basis(n - g.degree)?.iter() {
                        let mut w = Vec::with_capacity(tail.len() + 1);
                        w.push(i as u16);
                        w.extend_from_slice(tail);
                        out.push(w);
                    }
                }
            }
        }
        out.sort();
        let out = Arc::new(out);
        self.basis_cache
            .lock()
            .expect("basis cache")
            .insert(n, out.clone());
        Ok(out)
    }
}

impl GradedAlgebra for FreeAlgebra {
    type Elem = Word;

    fn field(&self) -> PrimeField {
        self.field
    }

    fn degree(&self, e: &Word) -> i32 {
        self.word_degree(e)
    }

    fn weight(&self, e: &Word) -> u32 {
        e.iter().map(|&i| self.generators[i as usize].weight).sum()
    }

    fn unit(&self) -> Word {
        Vec::new()
    }

    fn basis(&self, degree: i32) -> Result<Vec<Word>> {
        self.check(degree)?;
        Ok(self.compute_basis(degree)?.as_ref().clone())
    }

    fn multiply_basis(&self, a: &Word, b: &Word) -> Result<Chain<Word>> {
        self.check(self.word_degree(a) + self.word_degree(b))?;
        let mut w = a.clone();
        w.extend_from_slice(b);
        Ok(Chain::from_key(w))
    }

    fn differential_basis(&self, a: &Word) -> Result<Chain<Word>> {
        let f = self.field;
        self.check(self.word_degree(a) + 1)?;
        let mut out = Chain::zero();
        let mut prefix_degree = 0;
        for (pos, &g) in a.iter().enumerate() {
            let sign = f.sign(prefix_degree as i64);
            for (dw, c) in self.differentials[g as usize].iter() {
                let mut w = Vec::with_capacity(a.len() + dw.len());
                w.extend_from_slice(&a[..pos]);
                w.extend_from_slice(dw);
                w.extend_from_slice(&a[pos + 1..]);
                out.add_term(f, w, f.mul(sign, *c));
            }
            prefix_degree += self.generators[g as usize].degree;
        }
        Ok(out)
    }

    fn label(&self, e: &Word) -> String {
        if e.is_empty() {
            return "1".into();
        }
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < e.len() {
            let mut j = i;
            while j < e.len() && e[j] == e[i] {
                j += 1;
            }
            let name = &self.generators[e[i] as usize].name;
            parts.push(if j - i == 1 {
                name.clone()
            } else {
                format!("{name}^{}", j - i)
            });
            i = j;
        }
        parts.join(" ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::check_dga_axioms;

    fn t35() -> FreeAlgebra {
        FreeAlgebra::new(
            PrimeField::F2,
            vec![Generator::new("x3", 3), Generator::new("x5", 5)],
            vec![Chain::zero(), Chain::zero()],
            20,
        )
        .unwrap()
    }

    #[test]
    fn degree_eight_basis() {
        let a = t35();
        let b = a.basis(8).unwrap();
        assert_eq!(b, vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(a.label(&b[0]), "x3 x5");
    }

    #[test]
    fn truncation_is_enforced() {
        let a = t35();
        assert!(matches!(a.basis(21), Err(Error::TruncationExceeded { .. })));
        let w = a.parse_word("x5 x5").unwrap();
        assert_eq!(
            a.multiply_basis(&w, &w).unwrap(),
            Chain::from_key(vec![1, 1, 1, 1])
        );
        let big = a.parse_word("x5^4").unwrap();
        assert!(matches!(
            a.multiply_basis(&big, &vec![0]),
            Err(Error::TruncationExceeded { .. })
        ));
    }

    #[test]
    fn leibniz_with_odd_generators() {
        let f = PrimeField::new(3).unwrap();
        // d(z) = x y + y x with |x| = |y| = 3
        let mut dz = Chain::zero();
        dz.add_term(f, vec![0, 1], 1);
        dz.add_term(f, vec![1, 0], 1);
        let a = FreeAlgebra::new(
            f,
            vec![
                Generator::new("x", 3),
                Generator::new("y", 3),
                Generator::new("z", 5),
            ],
            vec![Chain::zero(), Chain::zero(), dz],
            14,
        )
        .unwrap();
        check_dga_axioms(&a, 11).unwrap();
    }

    #[test]
    fn inhomogeneous_weights_are_dropped() {
        let f = PrimeField::F2;
        let a = FreeAlgebra::new(
            f,
            vec![Generator::new("a", 4), Generator::new("b", 7)],
            vec![Chain::zero(), Chain::from_key(vec![0, 0])],
            12,
        )
        .unwrap();
        assert!(!a.has_weights());
    }
}
