//! Random instance generators and brute-force helpers shared by the
//! integration tests.

#![allow(dead_code)]

use std::collections::HashSet;

use cwsmod_core::zmod::enumerate_row_module;
use cwsmod_core::{
    CwsCode, GeneratorSet, Modulus, PauliOperator, SymplecticVector, ZdMatrix, ZdVector,
};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn md(d: u64) -> Modulus {
    Modulus::new(d).unwrap()
}

pub fn op(s: &str, d: u64) -> PauliOperator {
    PauliOperator::parse(s, md(d)).unwrap()
}

pub fn gens(d: u64, ops: &[&str]) -> GeneratorSet {
    GeneratorSet::new(ops.iter().map(|s| op(s, d)).collect()).unwrap()
}

pub fn example_stabilizer() -> GeneratorSet {
    gens(3, &["X1.Z1.I", "Z1.X1.Z1", "I.Z1.X1"])
}

/// The ((3,3,2))_3 example with codewords I, (XZ)⊗Z⊗Z², (XZ²)⊗Z⊗Z.
pub fn example_code() -> CwsCode {
    CwsCode::new(
        example_stabilizer(),
        vec![op("I.I.I", 3), op("X1Z1.Z1.Z2", 3), op("X1Z2.Z1.Z1", 3)],
    )
    .unwrap()
}

pub fn random_pauli(rng: &mut ChaCha8Rng, m: Modulus, n: usize, with_phase: bool) -> PauliOperator {
    let d = m.value() as i64;
    let phase = if with_phase { rng.gen_range(0..d) } else { 0 };
    let z: Vec<i64> = (0..n).map(|_| rng.gen_range(0..d)).collect();
    let x: Vec<i64> = (0..n).map(|_| rng.gen_range(0..d)).collect();
    PauliOperator::new(m, phase, &z, &x).unwrap()
}

/// A random abelian group without nontrivial identity multiples, built by
/// greedily accepting random commuting operators.
pub fn random_valid_group(rng: &mut ChaCha8Rng, m: Modulus, n: usize) -> GeneratorSet {
    loop {
        let wanted = rng.gen_range(1..=2 * n);
        let mut accepted: Vec<PauliOperator> = Vec::new();
        for _ in 0..60 {
            if accepted.len() == wanted {
                break;
            }
            let p = random_pauli(rng, m, n, true);
            if p.is_identity_multiple() || !accepted.iter().all(|g| g.commutes(&p).unwrap()) {
                continue;
            }
            let mut candidate = accepted.clone();
            candidate.push(p);
            let set = GeneratorSet::new(candidate.clone()).unwrap();
            if set.validate().unwrap().is_valid() {
                accepted = candidate;
            }
        }
        if !accepted.is_empty() {
            return GeneratorSet::new(accepted).unwrap();
        }
    }
}

pub fn random_maximal_group(rng: &mut ChaCha8Rng, m: Modulus, n: usize) -> GeneratorSet {
    random_valid_group(rng, m, n).extend_to_maximal().unwrap()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InstanceKind {
    /// Random codewords with distinct classical words.
    Random,
    /// `{R(w_i)}` is an additive group.
    AdditiveCodewords,
    /// `Cl_S(W)` is an additive group but `R(W)` generally is not.
    ClassicalGroup,
}

fn random_vector(rng: &mut ChaCha8Rng, m: Modulus, len: usize) -> ZdVector {
    let entries: Vec<i64> = (0..len)
        .map(|_| rng.gen_range(0..m.value() as i64))
        .collect();
    ZdVector::new(m, &entries)
}

fn operator_for(v: &ZdVector, phase: u64) -> PauliOperator {
    PauliOperator::from_symplectic(&SymplecticVector::new(v.clone()).unwrap(), phase)
}

/// Span of up to `generators` random vectors, zero first, if it has at most
/// `max_k` elements.
fn random_span(rng: &mut ChaCha8Rng, m: Modulus, n: usize, max_k: usize) -> Option<Vec<ZdVector>> {
    let count = rng.gen_range(1..=2);
    let rows: Vec<ZdVector> = (0..count).map(|_| random_vector(rng, m, 2 * n)).collect();
    let mat = ZdMatrix::from_vectors(m, 2 * n, &rows).unwrap();
    let span = enumerate_row_module(&mat, max_k).ok()?;
    (span.len() > 1).then(|| span.into_iter().collect())
}

/// A random CWS code of the requested kind with `K <= max_k`, or `None` when
/// the random draw did not produce a valid code.
pub fn random_cws(
    rng: &mut ChaCha8Rng,
    m: Modulus,
    n: usize,
    max_k: usize,
    kind: InstanceKind,
) -> Option<CwsCode> {
    let stabilizer = random_maximal_group(rng, m, n);
    let d = m.value();
    let identity = PauliOperator::identity(m, n);
    let codewords = match kind {
        InstanceKind::Random => {
            let k = rng.gen_range(1..=max_k);
            let mut words = vec![identity];
            for _ in 1..k {
                words.push(random_pauli(rng, m, n, true));
            }
            words
        }
        InstanceKind::AdditiveCodewords => {
            let span = random_span(rng, m, n, max_k)?;
            let mut words = vec![identity];
            words.extend(
                span[1..]
                    .iter()
                    .map(|v| operator_for(v, rng.gen_range(0..d))),
            );
            words
        }
        InstanceKind::ClassicalGroup => {
            let span = random_span(rng, m, n, max_k)?;
            let parity = stabilizer.parity_matrix();
            let mut words = vec![identity];
            for v in &span[1..] {
                let coeffs = random_vector(rng, m, parity.rows());
                let shift = parity.left_apply(&coeffs).unwrap();
                words.push(operator_for(&v.add(&shift).unwrap(), rng.gen_range(0..d)));
            }
            words
        }
    };
    CwsCode::new(stabilizer, codewords).ok()
}

/// Draws until a valid instance appears.
pub fn random_cws_retry(
    rng: &mut ChaCha8Rng,
    m: Modulus,
    n: usize,
    max_k: usize,
    kind: InstanceKind,
) -> CwsCode {
    loop {
        if let Some(code) = random_cws(rng, m, n, max_k, kind) {
            return code;
        }
    }
}

/// Row module of `rows` (each of length `len`, entries mod `d`) by closure,
/// with vectors encoded in base `d`.
pub fn brute_span(d: u64, len: usize, rows: &[Vec<u64>]) -> HashSet<u64> {
    let encode = |v: &[u64]| v.iter().fold(0u64, |acc, &e| acc * d + e);
    let mut elements: Vec<Vec<u64>> = vec![vec![0; len]];
    let mut seen: HashSet<u64> = HashSet::from([0]);
    for g in rows {
        let mut frontier = elements.clone();
        // Add g until no new element appears.
        loop {
            let mut fresh = Vec::new();
            for e in &frontier {
                let s: Vec<u64> = e.iter().zip(g).map(|(a, b)| (a + b) % d).collect();
                if seen.insert(encode(&s)) {
                    fresh.push(s);
                }
            }
            if fresh.is_empty() {
                break;
            }
            elements.extend(fresh.iter().cloned());
            frontier = fresh;
        }
    }
    seen
}

pub fn matrix_rows(t: &ZdMatrix) -> Vec<Vec<u64>> {
    t.row_vectors()
        .into_iter()
        .map(ZdVector::into_entries)
        .collect()
}
