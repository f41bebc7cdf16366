//! Python bindings for the ghcode library.
//!
//! Representations and codewords cross the boundary as '0'/'1' strings in
//! transmission order (index 0 leftmost), matching the CLI rendering;
//! containers are `bytes`. Library errors surface as `ValueError`.

use std::collections::BTreeMap;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use ghcode::{CanonicalPolicy, CodecConfig, Codeword, RotationSchedule, SequenceDef as CoreDef};

fn err(e: ghcode::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn policy_from_str(policy: &str) -> PyResult<CanonicalPolicy> {
    match policy {
        "shortest" => Ok(CanonicalPolicy::ShortestThenLex),
        "greedy" => Ok(CanonicalPolicy::GreedyStandard),
        other => Err(PyValueError::new_err(format!(
            "policy must be \"shortest\" or \"greedy\", got {other:?}"
        ))),
    }
}

/// A Gopala-Hemachandra sequence given by its first two terms.
#[pyclass(frozen, name = "SequenceDef", from_py_object)]
#[derive(Clone, Copy)]
struct PySequenceDef {
    inner: CoreDef,
}

#[pymethods]
impl PySequenceDef {
    #[new]
    fn new(a: i64, b: i64) -> Self {
        PySequenceDef {
            inner: CoreDef::new(a, b),
        }
    }

    /// The standard Fibonacci sequence (1, 2).
    #[staticmethod]
    fn standard() -> Self {
        PySequenceDef {
            inner: CoreDef::STANDARD,
        }
    }

    /// The variant pair (a, 1 - a).
    #[staticmethod]
    fn variant(a: i64) -> PyResult<Self> {
        if 1i64.checked_sub(a).is_none() {
            return Err(PyValueError::new_err("variant parameter out of range"));
        }
        Ok(PySequenceDef {
            inner: CoreDef::variant(a),
        })
    }

    #[getter]
    fn a(&self) -> i64 {
        self.inner.a()
    }

    #[getter]
    fn b(&self) -> i64 {
        self.inner.b()
    }

    fn is_standard(&self) -> bool {
        self.inner.is_standard()
    }

    /// The k-th term of the recurrence.
    fn term(&self, k: usize) -> PyResult<i64> {
        self.inner.term(k).map_err(err)
    }

    /// Terms 0..count as a list.
    fn prefix(&self, count: usize) -> PyResult<Vec<i64>> {
        self.inner.prefix(count).map_err(err)
    }

    /// Exclusive upper bound on top indices of representations of n.
    fn search_bound(&self, n: i64) -> PyResult<usize> {
        self.inner.search_bound(n).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("SequenceDef(a={}, b={})", self.inner.a(), self.inner.b())
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }
}

/// Zeckendorf representation of n under the standard sequence, as a bit
/// string with index 0 leftmost.
#[pyfunction]
fn zeckendorf_greedy(n: i64) -> PyResult<String> {
    Ok(ghcode::zeckendorf_greedy(n).map_err(err)?.to_string())
}

/// All representations of n under the sequence, shortest first, as bit
/// strings.
#[pyfunction]
#[pyo3(signature = (n, seq, limit = None))]
fn enumerate_representations(
    n: i64,
    seq: &PySequenceDef,
    limit: Option<usize>,
) -> PyResult<Vec<String>> {
    Ok(ghcode::enumerate_representations(n, &seq.inner, limit)
        .map_err(err)?
        .iter()
        .map(|r| r.to_string())
        .collect())
}

/// Number of distinct representations of n under the sequence.
#[pyfunction]
fn representation_count(n: i64, seq: &PySequenceDef) -> PyResult<usize> {
    ghcode::representation_count(n, &seq.inner).map_err(err)
}

/// Integers in 1..=max the sequence cannot encode.
#[pyfunction]
fn feasibility_scan(seq: &PySequenceDef, max: i64) -> PyResult<Vec<i64>> {
    ghcode::feasibility_scan(&seq.inner, max).map_err(err)
}

/// Histogram over 1..=max mapping representation count to occurrences.
#[pyfunction]
fn uniqueness_profile(seq: &PySequenceDef, max: i64) -> PyResult<BTreeMap<usize, u64>> {
    ghcode::uniqueness_profile(&seq.inner, max).map_err(err)
}

/// Canonical codeword of n as a bit string. Policy "shortest" picks the
/// shortest representation (ties lexicographic), "greedy" the Zeckendorf
/// one (standard sequence only).
#[pyfunction]
#[pyo3(signature = (n, seq, policy = "shortest"))]
fn encode_integer(n: i64, seq: &PySequenceDef, policy: &str) -> PyResult<String> {
    let policy = policy_from_str(policy)?;
    Ok(ghcode::encode_integer(n, &seq.inner, policy)
        .map_err(err)?
        .to_string())
}

/// Decode the codeword at the front of a bit string; returns
/// (value, bits_consumed).
#[pyfunction]
fn decode_codeword(bits: &str, seq: &PySequenceDef) -> PyResult<(i64, usize)> {
    let bits = ghcode::parse_bits(bits).map_err(err)?;
    ghcode::decode_codeword(&bits, &seq.inner).map_err(err)
}

/// Canonical codeword length for n = 1..=max; None marks unencodable
/// integers.
#[pyfunction]
#[pyo3(signature = (seq, max, policy = "shortest"))]
fn codeword_lengths(seq: &PySequenceDef, max: i64, policy: &str) -> PyResult<Vec<Option<usize>>> {
    let policy = policy_from_str(policy)?;
    Ok(ghcode::codeword_lengths(&seq.inner, max, policy)
        .map_err(err)?
        .into_iter()
        .map(|(_, len)| len)
        .collect())
}

/// Concatenate canonical codewords of values under a fixed sequence;
/// returns (packed_bytes, bit_length).
#[pyfunction]
fn encode_stream(values: Vec<i64>, seq: &PySequenceDef) -> PyResult<(Vec<u8>, usize)> {
    let buf = ghcode::encode_stream(&values, &CodecConfig::fixed(seq.inner)).map_err(err)?;
    let bits = buf.bit_len();
    Ok((buf.into_bytes(), bits))
}

/// Decode count codewords from packed bytes under a fixed sequence.
#[pyfunction]
fn decode_stream(
    data: Vec<u8>,
    bit_length: usize,
    count: usize,
    seq: &PySequenceDef,
) -> PyResult<Vec<i64>> {
    let buf = ghcode::BitBuffer::from_bytes(data, bit_length).map_err(err)?;
    ghcode::decode_stream(&buf, count, &CodecConfig::fixed(seq.inner)).map_err(err)
}

/// Parameter-set slot used by the given rotation block; the same keyed
/// splitmix64 schedule the rotating compressor follows.
#[pyfunction]
fn schedule_index(seed: u64, block_index: u64, set_len: usize) -> PyResult<usize> {
    let defs = vec![CoreDef::STANDARD; set_len.max(1)];
    let schedule = RotationSchedule::new(seed, defs, 1).map_err(err)?;
    Ok(schedule.def_index_for_block(block_index))
}

fn build_config(
    seq: Option<PySequenceDef>,
    rotate_seed: Option<u64>,
    rotate_set: Option<Vec<PySequenceDef>>,
    block_size: u32,
) -> PyResult<CodecConfig> {
    match rotate_set {
        Some(defs) => {
            let defs: Vec<CoreDef> = defs.into_iter().map(|d| d.inner).collect();
            let schedule = RotationSchedule::new(rotate_seed.unwrap_or(0), defs, block_size)
                .map_err(err)?;
            Ok(CodecConfig::rotating(schedule))
        }
        None => Ok(CodecConfig::fixed(
            seq.map(|d| d.inner).unwrap_or(CoreDef::STANDARD),
        )),
    }
}

/// Compress bytes into a GHC1 container. Fixed mode uses `seq` (standard
/// by default); passing `rotate_set` switches to rotating mode.
#[pyfunction]
#[pyo3(signature = (data, seq = None, rotate_seed = None, rotate_set = None, block_size = 16))]
fn compress(
    data: Vec<u8>,
    seq: Option<PySequenceDef>,
    rotate_seed: Option<u64>,
    rotate_set: Option<Vec<PySequenceDef>>,
    block_size: u32,
) -> PyResult<Vec<u8>> {
    let config = build_config(seq, rotate_seed, rotate_set, block_size)?;
    ghcode::compress(&data, &config).map_err(err)
}

/// Expand a GHC1 container back to the original bytes.
#[pyfunction]
fn decompress(data: Vec<u8>) -> PyResult<Vec<u8>> {
    ghcode::decompress(&data).map_err(err)
}

/// Render a representation bit string as its codeword (appends the
/// terminating 1 after validation).
#[pyfunction]
fn representation_to_codeword(bits: &str) -> PyResult<String> {
    let bits = ghcode::parse_bits(bits).map_err(err)?;
    let rep = ghcode::Representation::new(bits).map_err(err)?;
    Ok(Codeword::from_representation(&rep).to_string())
}

#[pymodule]
fn ghcode_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<PySequenceDef>()?;
    m.add_function(wrap_pyfunction!(zeckendorf_greedy, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_representations, m)?)?;
    m.add_function(wrap_pyfunction!(representation_count, m)?)?;
    m.add_function(wrap_pyfunction!(feasibility_scan, m)?)?;
    m.add_function(wrap_pyfunction!(uniqueness_profile, m)?)?;
    m.add_function(wrap_pyfunction!(encode_integer, m)?)?;
    m.add_function(wrap_pyfunction!(decode_codeword, m)?)?;
    m.add_function(wrap_pyfunction!(codeword_lengths, m)?)?;
    m.add_function(wrap_pyfunction!(encode_stream, m)?)?;
    m.add_function(wrap_pyfunction!(decode_stream, m)?)?;
    m.add_function(wrap_pyfunction!(schedule_index, m)?)?;
    m.add_function(wrap_pyfunction!(compress, m)?)?;
    m.add_function(wrap_pyfunction!(decompress, m)?)?;
    m.add_function(wrap_pyfunction!(representation_to_codeword, m)?)?;
    Ok(())
}
