use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use serde::Serialize;

use super::kappa::{sq_on_ha, StructuralMap};
use super::pipeline::HhPipeline;
use crate::algebra::{is_graded_commutative, AlgebraComplex, FreeAlgebra, GradedAlgebra, Word};
use crate::chain::Chain;
use crate::complex::{homology_at, ChainComplex};
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::hochschild::{shuffle_product, HWord, HochschildComplex, HochschildHomology};
use crate::linalg::{HomologySpace, Solver, SparseMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Provenance {
    #[serde(rename = "HA-pipeline")]
    HaPipeline,
    #[serde(rename = "HH-pipeline")]
    HhPipeline,
    #[serde(rename = "Cartan-closure")]
    CartanClosure,
}

impl Provenance {
    pub fn as_str(&self) -> &'static str {
        match self {
            Provenance::HaPipeline => "HA-pipeline",
            Provenance::HhPipeline => "HH-pipeline",
            Provenance::CartanClosure => "Cartan-closure",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub degree: i32,
    pub class: String,
    pub i: i32,
    pub value: String,
    pub provenance: Provenance,
    /// Coordinates of the value in the class basis of degree `degree + i`.
    #[serde(skip)]
    pub coordinates: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CartanMismatch {
    pub degree: i32,
    pub class: String,
    pub i: i32,
    pub direct: String,
    pub cartan: String,
}

impl CartanMismatch {
    pub fn to_error(&self) -> Error {
        Error::CartanMismatch(format!(
            "Sq^{}({}) is {} directly but {} by the Cartan formula",
            self.i, self.class, self.direct, self.cartan
        ))
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct SteenrodTable {
    pub rows: Vec<TableRow>,
    pub mismatches: Vec<CartanMismatch>,
    /// Classes above the direct bound that are not products of lower classes, with the reason.
    pub missing: Vec<(String, String)>,
}

impl SteenrodTable {
    pub fn get(&self, class: &str, i: i32) -> Option<&TableRow> {
        self.rows.iter().find(|r| r.class == class && r.i == i)
    }
}

/// Named homology classes of 𝔠TV with cached homology and shuffle products.
pub struct HhClasses {
    hh: Arc<HochschildComplex<FreeAlgebra>>,
    overrides: BTreeMap<String, String>,
    homology: Mutex<HashMap<i32, Arc<HochschildHomology<Word>>>>,
}

impl HhClasses {
    /// `overrides` renames classes whose representative is a single word, keyed by its label.
    pub fn new(
        hh: Arc<HochschildComplex<FreeAlgebra>>,
        overrides: BTreeMap<String, String>,
    ) -> Self {
        HhClasses {
            hh,
            overrides,
            homology: Mutex::new(HashMap::new()),
        }
    }

    pub fn complex(&self) -> &Arc<HochschildComplex<FreeAlgebra>> {
        &self.hh
    }

    pub fn homology(&self, n: i32) -> Result<Arc<HochschildHomology<Word>>> {
        if let Some(h) = self.homology.lock().expect("homology cache").get(&n) {
            return Ok(h.clone());
        }
        let h = Arc::new(self.hh.homology(n)?);
        self.homology
            .lock()
            .expect("homology cache")
            .insert(n, h.clone());
        Ok(h)
    }

    pub fn dimension(&self, n: i32) -> Result<usize> {
        Ok(self.homology(n)?.dimension())
    }

    pub fn name(&self, n: i32, k: usize) -> Result<String> {
        let rep = self.homology(n)?.representative(k);
        Ok(
            single_word_name(&rep, |w| self.hh.label(w), &self.overrides)
                .unwrap_or_else(|| format!("h{n}_{k}")),
        )
    }

    /// The class with the given name, as `(degree, index)`.
    pub fn find(&self, name: &str, max_degree: i32) -> Result<Option<(i32, usize)>> {
        for n in 0..=max_degree {
            for k in 0..self.dimension(n)? {
                if self.name(n, k)? == name {
                    return Ok(Some((n, k)));
                }
            }
        }
        Ok(None)
    }

    pub fn label(&self, n: i32, coordinates: &[u32]) -> Result<String> {
        let f = self.hh.field();
        let mut terms = Vec::new();
        for (k, &c) in coordinates.iter().enumerate() {
            if c != 0 {
                terms.push((self.name(n, k)?, c));
            }
        }
        Ok(crate::algebra::label_terms(f, terms.into_iter()))
    }

    pub fn representative(&self, n: i32, coordinates: &[u32]) -> Result<Chain<HWord<Word>>> {
        let f = self.hh.field();
        let h = self.homology(n)?;
        let mut out = Chain::zero();
        for (k, &c) in coordinates.iter().enumerate() {
            if c != 0 {
                out.add_scaled(f, &h.representative(k), c);
            }
        }
        Ok(out)
    }

    pub fn project(&self, n: i32, z: &Chain<HWord<Word>>) -> Result<Vec<u32>> {
        self.homology(n)?.project(z)
    }

    /// Shuffle product of two classes; the algebra must be commutative.
    pub fn product(&self, a: (i32, &[u32]), b: (i32, &[u32])) -> Result<Vec<u32>> {
        let x = self.representative(a.0, a.1)?;
        let y = self.representative(b.0, b.1)?;
        let xy = shuffle_product(&self.hh, &x, &y, -1)?;
        self.project(a.0 + b.0, &xy)
    }
}

fn single_word_name<E: Ord + Clone>(
    rep: &Chain<E>,
    label: impl Fn(&E) -> String,
    overrides: &BTreeMap<String, String>,
) -> Option<String> {
    let mut it = rep.iter();
    let (w, c) = it.next()?;
    if it.next().is_some() || *c != 1 {
        return None;
    }
    let l = label(w);
    Some(overrides.get(&l).cloned().unwrap_or(l))
}

fn unit_vector(len: usize, k: usize) -> Vec<u32> {
    let mut v = vec![0; len];
    v[k] = 1;
    v
}

fn add_into(f: PrimeField, acc: &mut [u32], v: &[u32], c: u32) {
    for (a, b) in acc.iter_mut().zip(v) {
        *a = f.add(*a, f.mul(*b, c));
    }
}

/// The Steenrod table of HH(TV) in degrees up to `max_degree`: `Sq^i(x)` for every basis class
/// `x` of degree `n` and `0 <= i <= max_degree - n`.
///
/// Classes of degree at most `direct_bound` go through the HH pipeline; above it the Cartan
/// formula on products of lower classes is used. Direct values of decomposable classes are
/// cross-checked against the Cartan formula and disagreements are listed.
pub fn steenrod_table(
    pipeline: &HhPipeline,
    classes: &HhClasses,
    max_degree: i32,
    direct_bound: i32,
) -> Result<SteenrodTable> {
    let hh = pipeline.hochschild();
    let commutative = is_graded_commutative(&**hh.algebra(), max_degree)?;
    let mut table = SteenrodTable::default();
    // values[(n, k)][i] = coordinates of Sq^i in degree n + i
    let mut values: BTreeMap<(i32, usize), Vec<Vec<u32>>> = BTreeMap::new();
    for n in 0..=max_degree {
        let dim = classes.dimension(n)?;
        for k in 0..dim {
            let name = classes.name(n, k)?;
            let rep = classes.homology(n)?.representative(k);
            let cartan = if commutative {
                cartan_values(classes, &values, n, k, max_degree)?
            } else {
                None
            };
            let (row_values, provenance) = if n <= direct_bound {
                let mut out = Vec::new();
                for i in 0..=max_degree - n {
                    out.push(classes.project(n + i, &pipeline.sq(&rep, i)?)?);
                }
                (out, Provenance::HhPipeline)
            } else if let Some(c) = &cartan {
                (c.clone(), Provenance::CartanClosure)
            } else {
                let reason = if commutative {
                    "not a product of lower classes"
                } else {
                    "algebra is not commutative"
                };
                table.missing.push((name.clone(), reason.into()));
                continue;
            };
            if provenance == Provenance::HhPipeline {
                if let Some(c) = &cartan {
                    for (i, (direct, by_cartan)) in row_values.iter().zip(c).enumerate() {
                        if direct != by_cartan {
                            table.mismatches.push(CartanMismatch {
                                degree: n,
                                class: name.clone(),
                                i: i as i32,
                                direct: classes.label(n + i as i32, direct)?,
                                cartan: classes.label(n + i as i32, by_cartan)?,
                            });
                        }
                    }
                }
            }
            for (i, v) in row_values.iter().enumerate() {
                let i = i as i32;
                table.rows.push(TableRow {
                    degree: n,
                    class: name.clone(),
                    i,
                    value: classes.label(n + i, v)?,
                    provenance,
                    coordinates: v.clone(),
                });
            }
            values.insert((n, k), row_values);
        }
    }
    Ok(table)
}

/// `Sq^i(x)` for `0 <= i <= max_degree - n` by the Cartan formula, writing the class `(n, k)` as
/// a sum of products of classes of positive degree already in `values`; `None` if it is not one.
fn cartan_values(
    classes: &HhClasses,
    values: &BTreeMap<(i32, usize), Vec<Vec<u32>>>,
    n: i32,
    k: usize,
    max_degree: i32,
) -> Result<Option<Vec<Vec<u32>>>> {
    let f = classes.complex().field();
    let dim = classes.dimension(n)?;
    let mut pairs = Vec::new();
    let mut columns = Vec::new();
    for a in 1..=n / 2 {
        let b = n - a;
        for ka in 0..classes.dimension(a)? {
            for kb in 0..classes.dimension(b)? {
                if a == b && kb < ka {
                    continue;
                }
                if !values.contains_key(&(a, ka)) || !values.contains_key(&(b, kb)) {
                    continue;
                }
                let da = unit_vector(classes.dimension(a)?, ka);
                let db = unit_vector(classes.dimension(b)?, kb);
                let p = classes.product((a, &da), (b, &db))?;
                columns.push(
                    p.iter()
                        .enumerate()
                        .filter(|(_, c)| **c != 0)
                        .map(|(r, c)| (r, *c))
                        .collect(),
                );
                pairs.push(((a, ka), (b, kb)));
            }
        }
    }
    if pairs.is_empty() {
        return Ok(None);
    }
    let m = SparseMatrix::from_columns(f, dim, columns)?;
    let Ok(coefficients) = Solver::new(f, &m).solve(&[(k, 1)]) else {
        return Ok(None);
    };
    let mut out = Vec::new();
    for i in 0..=max_degree - n {
        let mut acc = vec![0; classes.dimension(n + i)?];
        for &(col, c) in &coefficients {
            let ((a, ka), (b, kb)) = pairs[col];
            for j in 0..=i {
                let (Some(x), Some(y)) = (
                    values[&(a, ka)].get(j as usize),
                    values[&(b, kb)].get((i - j) as usize),
                ) else {
                    continue;
                };
                if x.iter().all(|c| *c == 0) || y.iter().all(|c| *c == 0) {
                    continue;
                }
                add_into(
                    f,
                    &mut acc,
                    &classes.product((a + j, x), (b + i - j, y))?,
                    c,
                );
            }
        }
        out.push(acc);
    }
    Ok(Some(out))
}

/// Named cohomology classes of TV.
pub struct HaClasses {
    complex: AlgebraComplex<FreeAlgebra>,
    overrides: BTreeMap<String, String>,
    spaces: Mutex<HashMap<i32, Arc<HomologySpace>>>,
}

impl HaClasses {
    pub fn new(tv: Arc<FreeAlgebra>, overrides: BTreeMap<String, String>) -> Self {
        HaClasses {
            complex: AlgebraComplex::new(tv),
            overrides,
            spaces: Mutex::new(HashMap::new()),
        }
    }

    fn space(&self, n: i32) -> Result<Arc<HomologySpace>> {
        if let Some(s) = self.spaces.lock().expect("homology cache").get(&n) {
            return Ok(s.clone());
        }
        let s = Arc::new(homology_at(&self.complex, n)?);
        self.spaces
            .lock()
            .expect("homology cache")
            .insert(n, s.clone());
        Ok(s)
    }

    pub fn project(&self, n: i32, z: &Chain<Word>) -> Result<Vec<u32>> {
        self.space(n)?
            .project(&self.complex.indexed_basis(n)?.to_sparse(z)?)
    }

    pub fn name(&self, n: i32, k: usize) -> Result<String> {
        let f = self.complex.field();
        let rep = self
            .complex
            .indexed_basis(n)?
            .from_sparse(f, &self.space(n)?.representatives()[k]);
        let tv = self.complex.algebra();
        Ok(single_word_name(&rep, |w| tv.label(w), &self.overrides)
            .unwrap_or_else(|| format!("x{n}_{k}")))
    }

    pub fn label(&self, n: i32, coordinates: &[u32]) -> Result<String> {
        let mut terms = Vec::new();
        for (k, &c) in coordinates.iter().enumerate() {
            if c != 0 {
                terms.push((self.name(n, k)?, c));
            }
        }
        Ok(crate::algebra::label_terms(
            self.complex.field(),
            terms.into_iter(),
        ))
    }
}

/// `Sq^i(v)` for every cycle generator `v` of TV and `0 <= i <= |v|` with `|v| + i <= max_degree`.
/// Generators whose `v'#v''` lies above the bound of V̂ are listed as missing.
pub fn ha_table(
    kappa: &StructuralMap,
    classes: &HaClasses,
    max_degree: i32,
) -> Result<SteenrodTable> {
    let tv = kappa.base();
    let mut table = SteenrodTable::default();
    for (v, g) in tv.generators().iter().enumerate() {
        if !tv.generator_differential(v).is_zero() {
            continue;
        }
        let n = g.degree;
        if n > max_degree {
            continue;
        }
        let own = classes.project(n, &Chain::from_key(vec![v as u16]))?;
        let class = classes.label(n, &own)?;
        if n > 0 && kappa.vhat().sharp(v, v).is_none() {
            let reason = format!(
                "κ̃({0}'#{0}'') has degree {1}, above the bound {2}",
                g.name,
                2 * n - 1,
                kappa.vhat().bound()
            );
            table.missing.push((class, reason));
            continue;
        }
        for i in 0..=n.min(max_degree.min(tv.truncation()) - n) {
            let z = sq_on_ha(kappa, v, i)?;
            let coordinates = classes.project(n + i, &z)?;
            table.rows.push(TableRow {
                degree: n,
                class: class.clone(),
                i,
                value: classes.label(n + i, &coordinates)?,
                provenance: Provenance::HaPipeline,
                coordinates,
            });
        }
    }
    Ok(table)
}

/// `ν(n) = (-1)^j ((p-1)/2)!^ε` for `n = 2j + ε`, the normalizing unit of the odd primary operations.
pub fn nu(f: PrimeField, n: i32) -> u32 {
    let j = n.div_euclid(2);
    let eps = n.rem_euclid(2);
    let mut factorial = 1;
    if eps == 1 {
        for m in 1..=(f.p() - 1) / 2 {
            factorial = f.mul(factorial, m % f.p());
        }
    }
    f.mul(f.sign(j as i64), factorial)
}

/// Cells carrying `P^i` and `β P^i` on a class of degree `n` at an odd prime:
/// `e_{(n-2i)(p-1)}` and `e_{(n-2i)(p-1)-1}`.
pub fn odd_prime_cells(p: u32, n: i32, i: i32) -> (i32, i32) {
    let c = (n - 2 * i) * (p as i32 - 1);
    (c, c - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_vhat, Generator};

    fn t_u(truncation: i32) -> (HhPipeline, HhClasses) {
        let tv = Arc::new(
            FreeAlgebra::new(
                PrimeField::F2,
                vec![Generator::new("u", 2)],
                vec![Chain::zero()],
                truncation,
            )
            .unwrap(),
        );
        let vhat = Arc::new(build_vhat(tv.clone(), truncation).unwrap());
        let sharp = BTreeMap::from([((0, 0), BTreeMap::from([(1, Chain::from_key(vec![0u16]))]))]);
        let kappa = Arc::new(StructuralMap::new(vhat, &BTreeMap::new(), &sharp).unwrap());
        let hh = Arc::new(HochschildComplex::new(tv));
        let overrides = BTreeMap::from([
            ("u[]".to_string(), "u".to_string()),
            ("1[u]".to_string(), "su".to_string()),
        ]);
        (
            HhPipeline::new(kappa, hh.clone()).unwrap(),
            HhClasses::new(hh, overrides),
        )
    }

    #[test]
    fn small_table_of_hh_t_u() {
        let (p, classes) = t_u(9);
        let table = steenrod_table(&p, &classes, 6, 3).unwrap();
        let value = |c: &str, i: i32| table.get(c, i).unwrap().value.clone();
        assert_eq!(value("1[]", 0), "1[]");
        assert_eq!(value("1[]", 3), "0");
        assert_eq!(value("u", 0), "u");
        assert_eq!(value("u", 1), "0");
        assert_eq!(value("u", 2), "u^2[]");
        assert_eq!(value("u", 3), "0");
        assert_eq!(value("su", 0), "su");
        assert_eq!(value("su", 1), "0");
        let u2 = table.get("u^2[]", 0).unwrap();
        assert_eq!(u2.provenance, Provenance::CartanClosure);
        assert_eq!(value("u^2[]", 0), "u^2[]");
        assert_eq!(value("u^2[]", 1), "0");
        assert_eq!(value("u^2[]", 2), "0");
        assert_eq!(
            table.get("u[u]", 0).unwrap().provenance,
            Provenance::HhPipeline
        );
        assert!(table.missing.is_empty());
    }

    #[test]
    fn direct_sq1_on_u_su_disagrees_with_cartan() {
        let (p, classes) = t_u(9);
        let table = steenrod_table(&p, &classes, 6, 3).unwrap();
        assert_eq!(
            table.mismatches,
            vec![CartanMismatch {
                degree: 3,
                class: "u[u]".into(),
                i: 1,
                direct: "u^2[]".into(),
                cartan: "0".into()
            }]
        );
    }

    #[test]
    fn nu_values() {
        let f3 = PrimeField::new(3).unwrap();
        let f5 = PrimeField::new(5).unwrap();
        assert_eq!(nu(f3, 0), 1);
        assert_eq!(nu(f3, 1), 1);
        assert_eq!(nu(f3, 2), 2);
        // ((5-1)/2)! = 2, and n = 3 gives j = 1
        assert_eq!(nu(f5, 3), 3);
        assert_eq!(odd_prime_cells(3, 4, 1), (4, 3));
    }
}
