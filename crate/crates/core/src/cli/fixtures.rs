use std::collections::BTreeMap;

use super::config::{AlgebraSpec, GeneratorSpec, KappaSpec, SessionConfig};
use crate::error::{Error, Result};

/// Expected values on a fixture, each `(class, i, value)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Goldens {
    pub hh: Vec<(String, i32, String)>,
    pub ha: Vec<(String, i32, String)>,
    /// `(degree, dim HH)`.
    pub hh_dimensions: Vec<(i32, usize)>,
}

pub struct Fixture {
    pub name: String,
    pub description: &'static str,
    pub config: SessionConfig,
    pub goldens: Option<Goldens>,
}

pub const FIXTURE_NAMES: [(&str, &str); 4] = [
    (
        "t_u",
        "T(u), |u| = 2, with κ̃(u'#u'')(e_1) = u; HH(T(u)) = T(u) ⊗ Λ(su)",
    ),
    (
        "sigma_cp2",
        "cobar model of H*(Σ²CP²) (classes in degrees 4, 6) with κ̃(a4#a4)(e_1) = a6",
    ),
    (
        "s4_wedge_s6",
        "cobar model of H*(S⁴ ∨ S⁶) with κ̃(a4#a4)(e_1) = 0",
    ),
    (
        "truncated_poly K",
        "F_2[u]/(u^K), |u| = 2, as a table algebra; report only",
    ),
];

/// Fixtures whose models stop being usable before the global default degree.
pub fn default_max_degree(name: &str) -> Option<i32> {
    // V̂ needs d = 0 on the generators paired by #, and a_33 (degree 7) is not a cycle
    matches!(name, "sigma_cp2" | "s4_wedge_s6").then_some(8)
}

pub fn fixture(name: &str, max_degree: i32) -> Result<Fixture> {
    let base = SessionConfig {
        max_degree: Some(max_degree),
        fixture: Some(name.to_string()),
        ..Default::default()
    };
    match name {
        "t_u" => Ok(t_u(base)),
        "sigma_cp2" => Ok(two_cell(base, true)),
        "s4_wedge_s6" => Ok(two_cell(base, false)),
        _ => match truncated_poly_k(name) {
            Some(k) => truncated_poly(base, k),
            None => Err(Error::ParseError(format!(
                "unknown fixture {name:?}; known: t_u, sigma_cp2, s4_wedge_s6, truncated_poly K"
            ))),
        },
    }
}

fn truncated_poly_k(name: &str) -> Option<usize> {
    let rest = name.strip_prefix("truncated_poly")?;
    rest.trim_start_matches([' ', ':', '_', '=']).parse().ok()
}

fn t_u(mut config: SessionConfig) -> Fixture {
    let n = config.max_degree();
    config.algebra = Some(AlgebraSpec::Free {
        generators: vec![GeneratorSpec {
            name: "u".into(),
            degree: 2,
            weight: None,
        }],
        differential: BTreeMap::new(),
    });
    config.kappa = Some(KappaSpec {
        linear_default: true,
        linear: BTreeMap::new(),
        sharp: BTreeMap::from([("u#u".into(), BTreeMap::from([("e_1".into(), "u".into())]))]),
    });
    config.names = BTreeMap::from([("u[]".into(), "u".into()), ("1[u]".into(), "su".into())]);
    let mut goldens = Goldens::default();
    for i in 0..=n - 2 {
        let v = match i {
            0 => "u",
            2 => "u^2[]",
            _ => "0",
        };
        goldens.hh.push(("u".into(), i, v.into()));
    }
    for i in 0..=n - 1 {
        goldens
            .hh
            .push(("su".into(), i, if i == 0 { "su" } else { "0" }.into()));
    }
    for (i, v) in [(0, "u"), (1, "0"), (2, "u^2")] {
        if 2 + i <= n {
            goldens.ha.push(("u".into(), i, v.into()));
        }
    }
    goldens.hh_dimensions = (0..=n).map(|d| (d, 1)).collect();
    Fixture {
        name: "t_u".into(),
        description: FIXTURE_NAMES[0].1,
        config,
        goldens: Some(goldens),
    }
}

/// Generator name of `a_w` for a word `w` in the letters 3 and 5.
fn cell_name(w: &[i32]) -> String {
    match w {
        [x] => format!("a{}", x + 1),
        _ => format!("a_{}", w.iter().map(|x| x.to_string()).collect::<String>()),
    }
}

/// The cobar model of a coalgebra with two primitive classes of degrees 4 and 6: generators `a_w`
/// of degree `Σw + 1` for words `w` in 3 and 5, with `d a_w = Σ_{w = uv} a_u a_v`.
fn two_cell(mut config: SessionConfig, cp2: bool) -> Fixture {
    let bound = 2 * config.max_degree() + 2;
    let mut words: Vec<Vec<i32>> = Vec::new();
    let mut frontier: Vec<Vec<i32>> = vec![vec![]];
    while let Some(w) = frontier.pop() {
        for x in [3, 5] {
            let mut v = w.clone();
            v.push(x);
            if v.iter().sum::<i32>() + 1 <= bound {
                frontier.push(v.clone());
                words.push(v);
            }
        }
    }
    words.sort_by_key(|w| (w.iter().sum::<i32>(), w.len(), w.clone()));
    let generators = words
        .iter()
        .map(|w| GeneratorSpec {
            name: cell_name(w),
            degree: w.iter().sum::<i32>() + 1,
            weight: Some(w.len() as u32),
        })
        .collect();
    let mut differential = BTreeMap::new();
    for w in words.iter().filter(|w| w.len() > 1) {
        let terms = (1..w.len())
            .map(|k| format!("{} {}", cell_name(&w[..k]), cell_name(&w[k..])))
            .collect();
        differential.insert(cell_name(w), terms);
    }
    config.algebra = Some(AlgebraSpec::Free {
        generators,
        differential,
    });
    let mut cells = BTreeMap::from([("e_3".to_string(), "a4".to_string())]);
    if cp2 {
        cells.insert("e_1".into(), "a6".into());
    }
    config.kappa = Some(KappaSpec {
        linear_default: true,
        linear: BTreeMap::new(),
        sharp: BTreeMap::from([("a4#a4".into(), cells)]),
    });
    let mut goldens = Goldens::default();
    if config.max_degree() >= 6 {
        goldens
            .ha
            .push(("a4".into(), 2, if cp2 { "a6" } else { "0" }.into()));
    }
    let (name, description) = if cp2 {
        FIXTURE_NAMES[1]
    } else {
        FIXTURE_NAMES[2]
    };
    Fixture {
        name: name.into(),
        description,
        config,
        goldens: Some(goldens),
    }
}

fn truncated_poly(mut config: SessionConfig, k: usize) -> Result<Fixture> {
    if k < 2 {
        return Err(Error::ParseError("truncated_poly needs K >= 2".into()));
    }
    let name = |i: usize| {
        if i == 1 {
            "u".to_string()
        } else {
            format!("u^{i}")
        }
    };
    let generators = (1..k)
        .map(|i| GeneratorSpec {
            name: name(i),
            degree: 2 * i as i32,
            weight: None,
        })
        .collect();
    let mut products = BTreeMap::new();
    for i in 1..k {
        for j in 1..k {
            if i + j < k {
                products.insert(format!("{} {}", name(i), name(j)), vec![name(i + j)]);
            }
        }
    }
    config.fixture = Some(format!("truncated_poly {k}"));
    config.algebra = Some(AlgebraSpec::Table {
        generators,
        products,
        differential: BTreeMap::new(),
    });
    Ok(Fixture {
        name: format!("truncated_poly {k}"),
        description: FIXTURE_NAMES[3].1,
        config,
        goldens: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_names_resolve() {
        for name in [
            "t_u",
            "sigma_cp2",
            "s4_wedge_s6",
            "truncated_poly 3",
            "truncated_poly:4",
        ] {
            fixture(name, 8).unwrap();
        }
        assert!(matches!(fixture("cp3", 8), Err(Error::ParseError(_))));
        assert!(fixture("truncated_poly 3", 8).unwrap().goldens.is_none());
    }

    #[test]
    fn two_cell_words() {
        let f = fixture("sigma_cp2", 4).unwrap();
        let Some(AlgebraSpec::Free {
            generators,
            differential,
        }) = f.config.algebra
        else {
            panic!()
        };
        let names: Vec<(String, i32)> =
            generators.into_iter().map(|g| (g.name, g.degree)).collect();
        assert_eq!(
            names,
            [
                ("a4", 4),
                ("a6", 6),
                ("a_33", 7),
                ("a_35", 9),
                ("a_53", 9),
                ("a_333", 10)
            ]
            .map(|(n, d)| (n.to_string(), d))
        );
        assert_eq!(differential["a_333"], ["a4 a_33", "a_33 a4"]);
    }
}
