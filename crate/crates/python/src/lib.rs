use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use hochschild_steenrod::cli;
use hochschild_steenrod::cli::config::{parse_config, Command, Format, SessionConfig};
use hochschild_steenrod::cli::session::{Session, SetupError};
use hochschild_steenrod::steenrod::SteenrodTable;

type Row = (i32, String, i32, String, String);

fn config(
    fixture: Option<String>,
    document: Option<&str>,
    max_degree: Option<i32>,
) -> PyResult<SessionConfig> {
    let mut c = match document {
        Some(doc) => parse_config(doc).map_err(|e| PyValueError::new_err(e.to_string()))?,
        None => SessionConfig::default(),
    };
    if fixture.is_some() {
        c.fixture = fixture;
        c.algebra = None;
        c.kappa = None;
    }
    if max_degree.is_some() {
        c.max_degree = max_degree;
    }
    Ok(c)
}

fn session(c: SessionConfig) -> PyResult<Session> {
    Session::new(c).map_err(|e| match e {
        SetupError::Parse(e) => PyValueError::new_err(e.to_string()),
        SetupError::Invalid(e) => PyRuntimeError::new_err(e.to_string()),
    })
}

fn rows(t: SteenrodTable) -> Vec<Row> {
    t.rows
        .into_iter()
        .map(|r| {
            (
                r.degree,
                r.class,
                r.i,
                r.value,
                r.provenance.as_str().to_string(),
            )
        })
        .collect()
}

/// Run a command as the `hhsq` binary would; returns `(exit code, stdout, stderr)`.
#[pyfunction]
#[pyo3(signature = (command, fixture=None, document=None, max_degree=None, json=true))]
fn run(
    command: &str,
    fixture: Option<String>,
    document: Option<&str>,
    max_degree: Option<i32>,
    json: bool,
) -> PyResult<(i32, String, String)> {
    let mut c = config(fixture, document, max_degree)?;
    c.command = Some(match command {
        "hh" => Command::Hh,
        "steenrod" => Command::Steenrod,
        "verify" => Command::Verify,
        "fixtures" => Command::Fixtures,
        "sq-ha" => Command::SqHa,
        _ => {
            return Err(PyValueError::new_err(format!(
                "unknown command {command:?}"
            )))
        }
    });
    c.format = if json { Format::Json } else { Format::Table };
    let out = cli::run(c);
    Ok((out.code, out.stdout, out.stderr))
}

/// `dim HH_n` for n = 0..=N.
#[pyfunction]
#[pyo3(signature = (fixture=None, document=None, max_degree=None))]
fn hh_dimensions(
    fixture: Option<String>,
    document: Option<&str>,
    max_degree: Option<i32>,
) -> PyResult<Vec<usize>> {
    let s = session(config(fixture, document, max_degree)?)?;
    let hh = s.hh().map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    Ok(hh.into_iter().map(|d| d.dimension).collect())
}

/// Rows `(degree, class, i, value, provenance)` of the HH Steenrod table.
#[pyfunction]
#[pyo3(signature = (fixture=None, document=None, max_degree=None))]
fn steenrod_table(
    fixture: Option<String>,
    document: Option<&str>,
    max_degree: Option<i32>,
) -> PyResult<Vec<Row>> {
    let s = session(config(fixture, document, max_degree)?)?;
    s.steenrod()
        .map(rows)
        .map_err(|e| PyRuntimeError::new_err(e.to_string()))
}

/// Rows of the Steenrod table on H(A).
#[pyfunction]
#[pyo3(signature = (fixture=None, document=None, max_degree=None))]
fn sq_ha(
    fixture: Option<String>,
    document: Option<&str>,
    max_degree: Option<i32>,
) -> PyResult<Vec<Row>> {
    let s = session(config(fixture, document, max_degree)?)?;
    s.sq_ha()
        .map(rows)
        .map_err(|e| PyRuntimeError::new_err(e.to_string()))
}

#[pymodule]
fn hhsteenrod(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(run, m)?)?;
    m.add_function(wrap_pyfunction!(hh_dimensions, m)?)?;
    m.add_function(wrap_pyfunction!(steenrod_table, m)?)?;
    m.add_function(wrap_pyfunction!(sq_ha, m)?)?;
    Ok(())
}
