use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use super::config::{parse_cell, AlgebraSpec, CellSpec, GeneratorSpec, SessionConfig};
use super::fixtures::{default_max_degree, fixture, Goldens};
use super::report::HhDegree;
use crate::algebra::{build_vhat, FreeAlgebra, Generator, TableAlgebra, TableEntry};
use crate::chain::Chain;
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::hochschild::HochschildComplex;
use crate::steenrod::{
    ha_table, steenrod_table, CellValues, HaClasses, HhClasses, HhPipeline, SteenrodTable,
    StructuralMap,
};

pub enum Model {
    Free(Arc<FreeAlgebra>),
    Table(Arc<TableAlgebra>),
}

/// A resolved configuration: the algebra is built, fixture data and goldens are attached.
pub struct Session {
    pub config: SessionConfig,
    pub goldens: Option<Goldens>,
    pub model: Model,
}

/// Error from building a session, tagged with whether it is a parse or a validation failure.
#[derive(Debug)]
pub enum SetupError {
    Parse(Error),
    Invalid(Error),
}

impl SetupError {
    pub fn error(&self) -> &Error {
        match self {
            SetupError::Parse(e) | SetupError::Invalid(e) => e,
        }
    }
}

fn classify(e: Error) -> SetupError {
    match e {
        Error::ParseError(_) => SetupError::Parse(e),
        e => SetupError::Invalid(e),
    }
}

impl Session {
    pub fn new(mut config: SessionConfig) -> std::result::Result<Session, SetupError> {
        if let (None, Some(name)) = (config.max_degree, config.fixture.as_deref()) {
            config.max_degree = default_max_degree(name);
        }
        config.check().map_err(SetupError::Parse)?;
        let mut goldens = None;
        if let Some(name) = config.fixture.clone() {
            let fx = fixture(&name, config.max_degree()).map_err(SetupError::Parse)?;
            let mut names = fx.config.names;
            names.extend(std::mem::take(&mut config.names));
            config.names = names;
            config.algebra = fx.config.algebra;
            config.kappa = fx.config.kappa;
            config.fixture = fx.config.fixture;
            goldens = fx.goldens;
        }
        let field = PrimeField::new(config.prime).map_err(SetupError::Parse)?;
        let model = match config.algebra.as_ref() {
            Some(AlgebraSpec::Free {
                generators,
                differential,
            }) => {
                let t = internal_truncation(&config, generators);
                Model::Free(Arc::new(
                    free_algebra(field, generators, differential, t).map_err(classify)?,
                ))
            }
            Some(AlgebraSpec::Table {
                generators,
                products,
                differential,
            }) => Model::Table(Arc::new(
                table_algebra(field, generators, products, differential).map_err(classify)?,
            )),
            None => {
                return Err(SetupError::Parse(Error::ParseError(
                    "no algebra given".into(),
                )))
            }
        };
        Ok(Session {
            config,
            goldens,
            model,
        })
    }

    pub fn max_degree(&self) -> i32 {
        self.config.max_degree()
    }

    pub fn free(&self) -> Result<&Arc<FreeAlgebra>> {
        match &self.model {
            Model::Free(tv) => Ok(tv),
            Model::Table(_) => Err(Error::Invalid(
                "Steenrod operations need a free model (kind \"free\"); table algebras support `hh` only".into(),
            )),
        }
    }

    /// κ̃ on the doubled model cut at `bound`, validated.
    pub fn structural_map(&self, bound: i32) -> Result<Arc<StructuralMap>> {
        let tv = self.free()?;
        let spec = self
            .config
            .kappa
            .as_ref()
            .ok_or_else(|| Error::Invalid("no kappa spec given".into()))?;
        let index = |name: &str| {
            tv.generator_index(name)
                .ok_or_else(|| Error::ParseError(format!("kappa: unknown generator {name}")))
        };
        let mut linear = BTreeMap::new();
        for (v, cells) in &spec.linear {
            linear.insert(index(v)?, cell_values(tv, cells)?);
        }
        if !spec.linear_default {
            for v in 0..tv.generators().len() {
                linear.entry(v).or_insert_with(BTreeMap::new);
            }
        }
        let mut sharp = BTreeMap::new();
        for (key, cells) in &spec.sharp {
            let (v, w) = key.split_once('#').ok_or_else(|| {
                Error::ParseError(format!("kappa: sharp keys look like v#w, got {key:?}"))
            })?;
            sharp.insert(
                (index(v.trim())?, index(w.trim())?),
                cell_values(tv, cells)?,
            );
        }
        let vhat = Arc::new(build_vhat(tv.clone(), bound)?);
        let kappa = StructuralMap::new(vhat, &linear, &sharp)?;
        kappa.validate()?;
        Ok(Arc::new(kappa))
    }

    pub fn hh_pipeline(&self) -> Result<(HhPipeline, HhClasses)> {
        let tv = self.free()?;
        let kappa = self.structural_map(tv.truncation())?;
        let hh = Arc::new(HochschildComplex::new(tv.clone()));
        Ok((
            HhPipeline::new(kappa, hh.clone())?,
            HhClasses::new(hh, self.config.names.clone()),
        ))
    }

    pub fn steenrod(&self) -> Result<SteenrodTable> {
        let (pipeline, classes) = self.hh_pipeline()?;
        steenrod_table(
            &pipeline,
            &classes,
            self.max_degree(),
            self.config.direct_bound(),
        )
    }

    pub fn sq_ha(&self) -> Result<SteenrodTable> {
        let tv = self.free()?;
        let kappa = self.structural_map(self.max_degree())?;
        ha_table(
            &kappa,
            &HaClasses::new(tv.clone(), self.config.names.clone()),
            self.max_degree(),
        )
    }

    pub fn hh(&self) -> Result<Vec<HhDegree>> {
        let mut out = Vec::new();
        match &self.model {
            Model::Free(tv) => {
                let classes = HhClasses::new(
                    Arc::new(HochschildComplex::new(tv.clone())),
                    self.config.names.clone(),
                );
                for n in 0..=self.max_degree() {
                    let dimension = classes.dimension(n)?;
                    let generators = (0..dimension)
                        .map(|k| classes.name(n, k))
                        .collect::<Result<_>>()?;
                    out.push(HhDegree {
                        degree: n,
                        dimension,
                        generators,
                    });
                }
            }
            Model::Table(a) => {
                let hh = HochschildComplex::new(a.clone());
                for n in 0..=self.max_degree() {
                    let h = hh.homology(n)?;
                    let generators = (0..h.dimension())
                        .map(|k| hh.label_chain(&h.representative(k)))
                        .collect();
                    out.push(HhDegree {
                        degree: n,
                        dimension: h.dimension(),
                        generators,
                    });
                }
            }
        }
        Ok(out)
    }
}

/// Truncation of TV used internally: the lift of a class of degree `D₀` needs the model up to
/// `2 D₀ + maxdeg(V) + 1`, and products in the table need `N + 2`.
pub fn internal_truncation(config: &SessionConfig, generators: &[GeneratorSpec]) -> i32 {
    let n = config.max_degree();
    let maxdeg = generators
        .iter()
        .map(|g| g.degree)
        .filter(|&d| d <= n)
        .max()
        .unwrap_or(2);
    (n + 2).max(2 * config.direct_bound() + maxdeg + 1)
}

fn free_algebra(
    field: PrimeField,
    generators: &[GeneratorSpec],
    differential: &BTreeMap<String, Vec<String>>,
    truncation: i32,
) -> Result<FreeAlgebra> {
    let gens: Vec<Generator> = generators
        .iter()
        .map(|g| Generator::new(g.name.clone(), g.degree).with_weight(g.weight.unwrap_or(1)))
        .collect();
    // parse words against the bare generators first
    let bare = FreeAlgebra::new(
        field,
        gens.clone(),
        vec![Chain::zero(); gens.len()],
        truncation,
    )?;
    let mut ds = vec![Chain::zero(); gens.len()];
    for (name, words) in differential {
        let i = bare
            .generator_index(name)
            .ok_or_else(|| Error::ParseError(format!("differential: unknown generator {name}")))?;
        ds[i] = bare.parse_chain(&words.join(" + "))?;
    }
    FreeAlgebra::new(field, gens, ds, truncation)
}

fn table_algebra(
    field: PrimeField,
    generators: &[GeneratorSpec],
    products: &BTreeMap<String, Vec<String>>,
    differential: &BTreeMap<String, Vec<String>>,
) -> Result<TableAlgebra> {
    let entries: Vec<TableEntry> = generators
        .iter()
        .map(|g| TableEntry {
            name: g.name.clone(),
            degree: g.degree,
        })
        .collect();
    let index = |name: &str| {
        entries
            .iter()
            .position(|e| e.name == name)
            .map(|i| i + 1)
            .ok_or_else(|| Error::ParseError(format!("table: unknown basis element {name}")))
    };
    let sum = |names: &[String]| -> Result<Chain<usize>> {
        let mut c = Chain::zero();
        for n in names.iter().filter(|n| n.as_str() != "0") {
            c.add_term(field, index(n)?, 1);
        }
        Ok(c)
    };
    let mut table = HashMap::new();
    for (key, value) in products {
        let (a, b) = match key.split_whitespace().collect::<Vec<_>>()[..] {
            [a, b] => (a, b),
            _ => {
                return Err(Error::ParseError(format!(
                    "product keys look like \"a b\", got {key:?}"
                )))
            }
        };
        table.insert((index(a)?, index(b)?), sum(value)?);
    }
    let mut ds = HashMap::new();
    for (name, value) in differential {
        ds.insert(index(name)?, sum(value)?);
    }
    TableAlgebra::new(field, entries, table, ds)
}

fn cell_values(tv: &FreeAlgebra, cells: &CellSpec) -> Result<CellValues> {
    cells
        .iter()
        .map(|(k, v)| Ok((parse_cell(k)?, tv.parse_chain(v)?)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn session(doc: &str) -> Session {
        Session::new(super::super::config::parse_config(doc).unwrap()).unwrap()
    }

    #[test]
    fn t_u_truncation_has_the_lift_margin() {
        let s = session(r#"{"fixture": "t_u"}"#);
        assert_eq!(s.free().unwrap().truncation(), 13);
        let (p, _) = s.hh_pipeline().unwrap();
        assert_eq!(p.max_class_degree(), 5);
    }

    #[test]
    fn sq_ha_discriminates_the_two_cell_fixtures() {
        for (name, value) in [("sigma_cp2", "a6"), ("s4_wedge_s6", "0")] {
            let s = session(&format!(r#"{{"fixture": "{name}", "max_degree": 8}}"#));
            let t = s.sq_ha().unwrap();
            assert_eq!(t.get("a4", 2).unwrap().value, value, "{name}");
            assert_eq!(t.get("a4", 0).unwrap().value, "a4");
        }
    }

    #[test]
    fn truncated_poly_hh() {
        let s = session(r#"{"fixture": "truncated_poly 2", "max_degree": 4}"#);
        let dims: Vec<usize> = s.hh().unwrap().iter().map(|d| d.dimension).collect();
        assert_eq!(dims[0], 1);
        assert!(s.steenrod().is_err());
    }

    #[test]
    fn bad_kappa_is_a_validation_error() {
        let doc = r#"{
            "max_degree": 6,
            "algebra": {"kind": "free", "generators": [{"name": "u", "degree": 2}]},
            "kappa": {"sharp": {"u#u": {"e_1": "u", "e_0": "u^2"}}}
        }"#;
        let s = session(doc);
        assert!(s.structural_map(6).is_err());
        let doc = r#"{"algebra": {"kind": "free", "generators": [{"name": "u", "degree": 2}],
            "differential": {"u": ["v"]}}}"#;
        let e = Session::new(super::super::config::parse_config(doc).unwrap())
            .err()
            .unwrap();
        assert!(matches!(e, SetupError::Parse(_)));
    }
}
