use std::time::Duration;

use pyo3::exceptions::{PyKeyError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use nu_core::coset_enum::{enumerate, EnumLimits};
use nu_core::tensor::tensor_square;
use nu_core::verify::{
    corpus_entries, run_checks, run_corpus, CheckKind, CorpusReport, Include, OrderSummary, RunOptions, VerifyConfig,
    BUILTIN_CORPUS,
};
use nu_core::{parse_presentation, to_regular_engine, CayleyEngine, NuContext, NuOptions, NuStrategy};

fn limits(max_cosets: usize, max_time: f64) -> PyResult<EnumLimits> {
    if !(max_time.is_finite() && max_time > 0.0) {
        return Err(PyValueError::new_err("max_time must be positive"));
    }
    EnumLimits::new(max_cosets, Duration::from_secs_f64(max_time)).map_err(|e| PyValueError::new_err(e.to_string()))
}

fn runtime(e: impl std::fmt::Display) -> PyErr {
    PyRuntimeError::new_err(e.to_string())
}

/// A finite presentation.
#[pyclass(name = "Presentation", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyPresentation {
    inner: nu_core::Presentation,
}

#[pymethods]
impl PyPresentation {
    #[getter]
    fn name(&self) -> &str {
        &self.inner.name
    }

    #[getter]
    fn generators(&self) -> Vec<String> {
        self.inner.generators.clone()
    }

    #[getter]
    fn relators(&self) -> Vec<String> {
        let names = &self.inner.generators;
        self.inner.relators.iter().map(|r| r.display(names).to_string()).collect()
    }

    /// Order of the presented group, by coset enumeration.
    #[pyo3(signature = (max_cosets = 2_000_000, max_time = 600.0))]
    fn order(&self, py: Python<'_>, max_cosets: usize, max_time: f64) -> PyResult<usize> {
        let limits = limits(max_cosets, max_time)?;
        py.detach(|| enumerate(&self.inner, limits))
            .map(|t| t.num_cosets())
            .map_err(runtime)
    }

    /// Order of the non-abelian tensor square.
    #[pyo3(signature = (max_cosets = 2_000_000, max_time = 600.0))]
    fn tensor_order(&self, py: Python<'_>, max_cosets: usize, max_time: f64) -> PyResult<usize> {
        let limits = limits(max_cosets, max_time)?;
        py.detach(|| {
            let table = enumerate(&self.inner, limits).map_err(runtime)?;
            let base: CayleyEngine = to_regular_engine(table, &self.inner);
            tensor_square(&base, limits).map(|t| t.engine.order()).map_err(runtime)
        })
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Presentation({:?})", self.inner.to_string())
    }
}

/// `nu(G)` with its distinguished subgroups.
#[pyclass(name = "Nu", frozen)]
struct PyNu {
    ctx: NuContext,
}

#[pymethods]
impl PyNu {
    #[getter]
    fn order(&self) -> usize {
        self.ctx.nu().order()
    }

    #[getter]
    fn base_order(&self) -> usize {
        self.ctx.base().order()
    }

    #[getter]
    fn strategy(&self) -> String {
        self.ctx.strategy().to_string()
    }

    /// Orders of the distinguished subgroups, keyed by name.
    fn orders<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let o = OrderSummary::of(&self.ctx);
        let d = PyDict::new(py);
        for (k, v) in [
            ("nu", o.nu),
            ("theta", o.theta),
            ("upsilon1", o.upsilon1),
            ("upsilon2", o.upsilon2),
            ("upsilon3", o.upsilon3),
            ("mu", o.mu),
            ("delta", o.delta),
            ("derived", o.derived),
        ] {
            d.set_item(k, v)?;
        }
        Ok(d)
    }

    /// Runs the named checks and returns `{name: status}`.
    #[pyo3(signature = (checks = "all", seed = 0))]
    fn check<'py>(&self, py: Python<'py>, checks: &str, seed: u64) -> PyResult<Bound<'py, PyDict>> {
        let kinds = CheckKind::parse_list(checks).map_err(|e| PyValueError::new_err(e.to_string()))?;
        let cfg = VerifyConfig {
            seed,
            ..VerifyConfig::default()
        };
        let results = py.detach(|| run_checks(&self.ctx, &kinds, &cfg));
        let d = PyDict::new(py);
        for r in results {
            d.set_item(r.name, r.status.to_string())?;
        }
        Ok(d)
    }
}

#[pyfunction]
fn parse(text: &str) -> PyResult<Vec<PyPresentation>> {
    parse_presentation(text)
        .map(|ps| ps.into_iter().map(|inner| PyPresentation { inner }).collect())
        .map_err(|e| PyValueError::new_err(e.to_string()))
}

/// A group of the built-in corpus.
#[pyfunction]
fn builtin(name: &str) -> PyResult<PyPresentation> {
    corpus_entries(None)
        .into_iter()
        .find(|e| e.name == name)
        .map(|e| PyPresentation { inner: e.presentation })
        .ok_or_else(|| PyKeyError::new_err(name.to_string()))
}

#[pyfunction]
fn builtin_names() -> Vec<String> {
    corpus_entries(None).into_iter().map(|e| e.name).collect()
}

#[pyfunction]
#[pyo3(signature = (presentation, strategy = "gens", max_cosets = 2_000_000, max_time = 600.0))]
fn build_nu(
    py: Python<'_>,
    presentation: &PyPresentation,
    strategy: &str,
    max_cosets: usize,
    max_time: f64,
) -> PyResult<PyNu> {
    let opts = NuOptions {
        strategy: strategy.parse::<NuStrategy>().map_err(PyValueError::new_err)?,
        limits: limits(max_cosets, max_time)?,
        ..NuOptions::default()
    };
    py.detach(|| nu_core::build_nu(&presentation.inner, opts))
        .map(|ctx| PyNu { ctx })
        .map_err(runtime)
}

/// Runs the corpus and returns the JSON report.
#[pyfunction]
#[pyo3(signature = (include = "all", heavy = false, checks = "all", seed = 0))]
fn corpus_report(py: Python<'_>, include: &str, heavy: bool, checks: &str, seed: u64) -> PyResult<String> {
    let entries = Include::parse(include)
        .select(corpus_entries(None), heavy)
        .map_err(PyValueError::new_err)?;
    let opts = RunOptions {
        checks: CheckKind::parse_list(checks).map_err(|e| PyValueError::new_err(e.to_string()))?,
        verify: VerifyConfig {
            seed,
            ..VerifyConfig::default()
        },
        ..RunOptions::all_checks()
    };
    let report = py.detach(|| CorpusReport {
        seed,
        entries: run_corpus(&entries, &opts),
    });
    Ok(report.to_json())
}

#[pymodule]
fn nu_engine(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPresentation>()?;
    m.add_class::<PyNu>()?;
    m.add_function(wrap_pyfunction!(parse, m)?)?;
    m.add_function(wrap_pyfunction!(builtin, m)?)?;
    m.add_function(wrap_pyfunction!(builtin_names, m)?)?;
    m.add_function(wrap_pyfunction!(build_nu, m)?)?;
    m.add_function(wrap_pyfunction!(corpus_report, m)?)?;
    m.add("BUILTIN_CORPUS", BUILTIN_CORPUS)?;
    Ok(())
}
