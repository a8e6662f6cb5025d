//! Dense state-vector ground truth for small systems.
//!
//! Operators are built directly from the qudit representation
//! `Z|k> = q^k |k>`, `X|k> = |k+1 mod d>` with Kronecker products, qudit 1
//! being the most significant digit of the basis index. Nothing here goes
//! through the module-cardinality machinery, so agreement between the two is
//! meaningful evidence.

use std::f64::consts::TAU;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::cws::CwsCode;
use crate::error::{Error, Result};
use crate::pauli::{PauliOperator, SymplecticVector};
use crate::stabilizer::GeneratorSet;
use crate::zmod::{Modulus, ZdVector, DEFAULT_ENUMERATION_LIMIT};

pub type DenseOperator = DMatrix<Complex64>;
pub type StateVector = DVector<Complex64>;

/// Tolerance for boolean verdicts (membership, Knill-Laflamme, residuals).
pub const VERDICT_TOL: f64 = 1e-9;
/// Tolerance for traces that should equal integers.
pub const TRACE_TOL: f64 = 1e-6;
/// Tolerance for algebraic identities between exactly generated matrices.
pub const IDENTITY_TOL: f64 = 1e-12;

/// `q^k = exp(2πik/d)`.
pub fn root_of_unity(modulus: Modulus, k: u64) -> Complex64 {
    let d = modulus.value();
    Complex64::from_polar(1.0, TAU * (k % d) as f64 / d as f64)
}

/// Largest entrywise modulus of `a - b`.
pub fn max_abs_diff(a: &DenseOperator, b: &DenseOperator) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

fn vector_diff(a: &StateVector, b: &StateVector) -> f64 {
    (a - b).norm()
}

fn is_identity(m: &DenseOperator, tol: f64) -> bool {
    max_abs_diff(m, &DenseOperator::identity(m.nrows(), m.ncols())) < tol
}

/// Result of [`Oracle::verify_sta1`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimensionCheck {
    pub trace: f64,
    pub expected: u64,
    pub holds: bool,
}

/// Result of [`Oracle::oracle_is_stabilizer`].
#[derive(Debug, Clone, PartialEq)]
pub struct StabilizerVerdict {
    /// `|C_S(W)|`, counted with dense commutation tests.
    pub centralizer_order: u64,
    /// Trace of the projector onto the joint +1 eigenspace of `C_S(W)`.
    pub centralizer_trace: f64,
    /// Largest `|Π b_i - b_i|` over the code basis.
    pub basis_residual: f64,
    pub is_stabilizer: bool,
}

/// Knill-Laflamme data for one error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectionCheck {
    /// `<b_1|E|b_1>`.
    pub constant: Complex64,
    /// `max |<b_i|E|b_j> - c δ_ij|`.
    pub deviation: f64,
    pub detected: bool,
}

/// The group of all Pauli operators fixing a subspace pointwise.
#[derive(Debug, Clone, PartialEq)]
pub struct SpanStabilizer {
    pub elements: Vec<PauliOperator>,
    /// Dimension of the joint +1 eigenspace of `elements`.
    pub trace: f64,
}

/// Dense oracle bounded by a maximum Hilbert-space dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Oracle {
    pub max_dimension: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Self {
            max_dimension: 1024,
        }
    }
}

impl Oracle {
    pub fn new(max_dimension: usize) -> Self {
        Self { max_dimension }
    }

    /// `d^n`, or an error above the configured limit.
    pub fn dimension(&self, modulus: Modulus, n: usize) -> Result<usize> {
        let dim = u32::try_from(n)
            .ok()
            .and_then(|n| modulus.value().checked_pow(n))
            .and_then(|v| usize::try_from(v).ok())
            .unwrap_or(usize::MAX);
        if dim > self.max_dimension {
            return Err(Error::DimensionLimit {
                dimension: dim,
                limit: self.max_dimension,
            });
        }
        Ok(dim)
    }

    /// Single-qudit `Z = diag(1, q, ..., q^(d-1))`.
    pub fn clock(modulus: Modulus) -> DenseOperator {
        let d = modulus.value() as usize;
        DenseOperator::from_fn(d, d, |r, c| {
            if r == c {
                root_of_unity(modulus, r as u64)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    /// Single-qudit `X|k> = |k+1 mod d>`.
    pub fn shift(modulus: Modulus) -> DenseOperator {
        let d = modulus.value() as usize;
        DenseOperator::from_fn(d, d, |r, c| {
            if r == (c + 1) % d {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    fn matrix_power(m: &DenseOperator, k: u64) -> DenseOperator {
        let mut acc = DenseOperator::identity(m.nrows(), m.ncols());
        for _ in 0..k {
            acc = &acc * m;
        }
        acc
    }

    /// `q^phase ⊗_j Z^(z_j) X^(x_j)`.
    pub fn pauli_matrix(&self, p: &PauliOperator) -> Result<DenseOperator> {
        let m = p.modulus();
        self.dimension(m, p.n())?;
        let (clock, shift) = (Self::clock(m), Self::shift(m));
        let mut acc = DenseOperator::from_element(1, 1, root_of_unity(m, p.phase()));
        for (&z, &x) in p.z().iter().zip(p.x()) {
            let factor = Self::matrix_power(&clock, z) * Self::matrix_power(&shift, x);
            acc = acc.kronecker(&factor);
        }
        Ok(acc)
    }

    /// `P|v>` without forming the matrix:
    /// `P|k> = q^(phase + Σ_j z_j (k_j + x_j)) |k + x>`.
    pub fn apply_pauli(&self, p: &PauliOperator, v: &StateVector) -> Result<StateVector> {
        let m = p.modulus();
        let dim = self.dimension(m, p.n())?;
        if v.len() != dim {
            return Err(Error::DimensionMismatch(format!(
                "state of length {} for dimension {dim}",
                v.len()
            )));
        }
        let d = m.value();
        let mut out = StateVector::zeros(dim);
        for (k, amp) in v.iter().enumerate() {
            if amp.norm() == 0.0 {
                continue;
            }
            let digits = ZdVector::from_index(m, p.n(), k as u64);
            let mut target = 0u64;
            let mut exponent = p.phase();
            for ((&kj, &zj), &xj) in digits.entries().iter().zip(p.z()).zip(p.x()) {
                let shifted = (kj + xj) % d;
                exponent = (exponent + zj * shifted) % d;
                target = target * d + shifted;
            }
            out[target as usize] += amp * root_of_unity(m, exponent);
        }
        Ok(out)
    }

    /// Least `t` in `1..=d` with `M^t = I`, if any.
    fn unit_order(m: &DenseOperator, d: u64) -> Option<u64> {
        let mut acc = m.clone();
        for t in 1..=d {
            if is_identity(&acc, VERDICT_TOL) {
                return Some(t);
            }
            acc = &acc * m;
        }
        None
    }

    /// Projector onto the joint eigenspace where generator `s_i` has
    /// eigenvalue `q^(α_i)`: `Π_i (1/o_i) Σ_{t<o_i} (q^(-α_i) s_i)^t`.
    pub fn joint_projector(
        &self,
        g: &GeneratorSet,
        eigen_exponents: &ZdVector,
    ) -> Result<DenseOperator> {
        let m = g.modulus();
        if eigen_exponents.len() != g.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} eigenvalue exponents for {} generators",
                eigen_exponents.len(),
                g.len()
            )));
        }
        let dim = self.dimension(m, g.n())?;
        let mut projector = DenseOperator::identity(dim, dim);
        for (s, &alpha) in g.generators().iter().zip(eigen_exponents.entries()) {
            let matrix = self.pauli_matrix(s)?;
            let order = Self::unit_order(&matrix, m.value())
                .ok_or_else(|| Error::InvalidGroup(format!("no power of {s} is the identity")))?;
            let factor = if m.mul(alpha, order % m.value()) != 0 {
                // q^α is not an eigenvalue of an operator with s^o = I.
                DenseOperator::zeros(dim, dim)
            } else {
                let scaled = matrix * root_of_unity(m, m.neg(alpha));
                let mut sum = DenseOperator::zeros(dim, dim);
                let mut term = DenseOperator::identity(dim, dim);
                for _ in 0..order {
                    sum += &term;
                    term = &term * &scaled;
                }
                sum / Complex64::new(order as f64, 0.0)
            };
            projector *= factor;
        }
        Ok(projector)
    }

    /// Checks `tr Π_S = d^n / |S|`.
    pub fn verify_sta1(&self, g: &GeneratorSet) -> Result<DimensionCheck> {
        let zeros = ZdVector::zeros(g.modulus(), g.len());
        let trace = self.joint_projector(g, &zeros)?.trace().re;
        let expected = g.stabilized_dimension()?;
        Ok(DimensionCheck {
            trace,
            expected,
            holds: (trace - expected as f64).abs() < TRACE_TOL,
        })
    }

    /// The unique state fixed by a maximal group, normalized, with its first
    /// nonzero amplitude real and positive.
    pub fn stabilized_state(&self, g: &GeneratorSet) -> Result<StateVector> {
        let zeros = ZdVector::zeros(g.modulus(), g.len());
        let projector = self.joint_projector(g, &zeros)?;
        let trace = projector.trace().re;
        if (trace - 1.0).abs() > TRACE_TOL {
            return Err(Error::InvalidGroup(format!(
                "projector has rank {trace:.6}, expected 1"
            )));
        }
        let pivot = (0..projector.ncols())
            .max_by(|&a, &b| {
                projector
                    .column(a)
                    .norm()
                    .total_cmp(&projector.column(b).norm())
            })
            .expect("nonempty projector");
        let column: StateVector = projector.column(pivot).into_owned();
        Ok(canonical_phase(column.normalize()))
    }

    /// `{w_i |ψ>}`; fails unless the Gram matrix has rank `K`.
    pub fn code_basis(&self, code: &CwsCode) -> Result<Vec<StateVector>> {
        let psi = self.stabilized_state(code.stabilizer())?;
        let basis = code
            .codewords()
            .iter()
            .map(|w| Ok(self.pauli_matrix(w)? * &psi))
            .collect::<Result<Vec<_>>>()?;
        let k = basis.len();
        let gram = DenseOperator::from_fn(k, k, |i, j| basis[i].dotc(&basis[j]));
        let rank = gram.rank(VERDICT_TOL);
        if rank < k {
            return Err(Error::InvalidCode(format!(
                "code basis has rank {rank} < K = {k}"
            )));
        }
        Ok(basis)
    }

    /// Decides whether the CWS code is a stabilizer code by building
    /// `C_S(W)` with dense commutation tests and checking that its joint +1
    /// eigenspace has dimension `K` and contains every basis vector.
    pub fn oracle_is_stabilizer(&self, code: &CwsCode) -> Result<StabilizerVerdict> {
        let dim = self.dimension(code.modulus(), code.n())?;
        let basis = self.code_basis(code)?;
        let words = code
            .codewords()
            .iter()
            .map(|w| self.pauli_matrix(w))
            .collect::<Result<Vec<_>>>()?;
        let group = code
            .stabilizer()
            .enumerate_group(DEFAULT_ENUMERATION_LIMIT)?;
        let mut sum = DenseOperator::zeros(dim, dim);
        let mut centralizer_order = 0u64;
        for g in &group.elements {
            let gm = self.pauli_matrix(g)?;
            let commutes = words
                .iter()
                .all(|w| max_abs_diff(&(&gm * w), &(w * &gm)) < VERDICT_TOL);
            if commutes {
                sum += gm;
                centralizer_order += 1;
            }
        }
        let projector = sum / Complex64::new(centralizer_order as f64, 0.0);
        let centralizer_trace = projector.trace().re;
        let basis_residual = basis
            .iter()
            .map(|b| vector_diff(&(&projector * b), b))
            .fold(0.0, f64::max);
        let is_stabilizer =
            (centralizer_trace - code.k() as f64).abs() < TRACE_TOL && basis_residual < VERDICT_TOL;
        Ok(StabilizerVerdict {
            centralizer_order,
            centralizer_trace,
            basis_residual,
            is_stabilizer,
        })
    }

    /// Every Pauli operator (with phase) fixing each of `basis` pointwise,
    /// found by scanning all `d^(2n)` phase-free operators. The span is a
    /// stabilizer code exactly when `trace` equals its dimension.
    pub fn span_stabilizer(
        &self,
        modulus: Modulus,
        n: usize,
        basis: &[StateVector],
    ) -> Result<SpanStabilizer> {
        let dim = self.dimension(modulus, n)?;
        let mut elements = Vec::new();
        let mut sum = DenseOperator::zeros(dim, dim);
        for index in 0..modulus.pow(2 * n) {
            let v = SymplecticVector::new(ZdVector::from_index(modulus, 2 * n, index))?;
            let bare = PauliOperator::from_symplectic(&v, 0);
            // bare b = q^-k b for every basis vector means q^k bare fixes them.
            let Some(first) = basis.first() else { break };
            let image = self.apply_pauli(&bare, first)?;
            let lambda = first.dotc(&image) / first.dotc(first);
            if vector_diff(&image, &(first * lambda)) > VERDICT_TOL {
                continue;
            }
            let fixes_all = basis[1..].iter().all(|b| {
                self.apply_pauli(&bare, b)
                    .map(|img| vector_diff(&img, &(b * lambda)) < VERDICT_TOL)
                    .unwrap_or(false)
            });
            if !fixes_all {
                continue;
            }
            let Some(k) = (0..modulus.value())
                .find(|&k| (root_of_unity(modulus, k) * lambda - 1.0).norm() < VERDICT_TOL)
            else {
                continue;
            };
            let op = bare.with_phase(k);
            sum += self.pauli_matrix(&op)?;
            elements.push(op);
        }
        let trace = if elements.is_empty() {
            0.0
        } else {
            (sum / Complex64::new(elements.len() as f64, 0.0))
                .trace()
                .re
        };
        Ok(SpanStabilizer { elements, trace })
    }

    /// Knill-Laflamme test `<b_i|E|b_j> = c_E δ_ij` on the code basis.
    pub fn oracle_detects(
        &self,
        code: &CwsCode,
        errors: &[PauliOperator],
    ) -> Result<Vec<DetectionCheck>> {
        let basis = self.code_basis(code)?;
        errors
            .iter()
            .map(|e| {
                let images = basis
                    .iter()
                    .map(|b| self.apply_pauli(e, b))
                    .collect::<Result<Vec<_>>>()?;
                let constant = basis[0].dotc(&images[0]);
                let mut deviation: f64 = 0.0;
                for (i, bi) in basis.iter().enumerate() {
                    for (j, img) in images.iter().enumerate() {
                        let expected = if i == j {
                            constant
                        } else {
                            Complex64::new(0.0, 0.0)
                        };
                        deviation = deviation.max((bi.dotc(img) - expected).norm());
                    }
                }
                Ok(DetectionCheck {
                    constant,
                    deviation,
                    detected: deviation < VERDICT_TOL,
                })
            })
            .collect()
    }
}

/// Multiplies `v` by a unit phase so its first nonzero amplitude is real and
/// positive.
pub fn canonical_phase(v: StateVector) -> StateVector {
    match v.iter().find(|a| a.norm() > VERDICT_TOL) {
        Some(&a) => {
            let phase = a.conj() / a.norm();
            v * phase
        }
        None => v,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cws::CwsCode;

    fn md(d: u64) -> Modulus {
        Modulus::new(d).unwrap()
    }

    fn p(s: &str, d: u64) -> PauliOperator {
        PauliOperator::parse(s, md(d)).unwrap()
    }

    fn gens(d: u64, ops: &[&str]) -> GeneratorSet {
        GeneratorSet::new(ops.iter().map(|s| p(s, d)).collect()).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn example_code() -> CwsCode {
        CwsCode::new(
            gens(3, &["X1.Z1.I", "Z1.X1.Z1", "I.Z1.X1"]),
            vec![p("I.I.I", 3), p("X1Z1.Z1.Z2", 3), p("X1Z2.Z1.Z1", 3)],
        )
        .unwrap()
    }

    #[test]
    fn pauli_matrix_examples() {
        let o = Oracle::default();
        let z = o.pauli_matrix(&p("Z1", 2)).unwrap();
        let expected = DenseOperator::from_row_slice(
            2,
            2,
            &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)],
        );
        assert!(max_abs_diff(&z, &expected) < IDENTITY_TOL);

        let x = o.pauli_matrix(&p("X1", 3)).unwrap();
        for k in 0..3 {
            let mut e = StateVector::zeros(3);
            e[k] = c(1.0, 0.0);
            let img = &x * e;
            assert!((img[(k + 1) % 3] - c(1.0, 0.0)).norm() < IDENTITY_TOL);
        }

        let xm = o.pauli_matrix(&p("X1", 2)).unwrap();
        let zm = o.pauli_matrix(&p("Z1", 2)).unwrap();
        let prod = o
            .pauli_matrix(&p("X1", 2).multiply(&p("Z1", 2)).unwrap())
            .unwrap();
        assert!(max_abs_diff(&prod, &(xm * zm)) < IDENTITY_TOL);
    }

    #[test]
    fn pauli_matrices_are_unitary() {
        let o = Oracle::default();
        let m = o.pauli_matrix(&p("w1:Z2X1.X3.Z1", 4)).unwrap();
        assert!(is_identity(&(m.adjoint() * &m), 1e-12));
    }

    #[test]
    fn apply_matches_matrix() {
        let o = Oracle::default();
        let op = p("w2:Z1X2.X1.Z2", 3);
        let v = StateVector::from_fn(27, |i, _| c(i as f64 * 0.1, 1.0 - i as f64 * 0.03));
        let a = o.apply_pauli(&op, &v).unwrap();
        let b = o.pauli_matrix(&op).unwrap() * v;
        assert!(vector_diff(&a, &b) < IDENTITY_TOL);
    }

    #[test]
    fn dimension_limit_is_enforced() {
        let o = Oracle::new(8);
        assert!(matches!(
            o.pauli_matrix(&p("Z1.Z1", 3)),
            Err(Error::DimensionLimit {
                dimension: 9,
                limit: 8
            })
        ));
    }

    #[test]
    fn joint_projector_examples() {
        let o = Oracle::default();
        let proj = o
            .joint_projector(&gens(2, &["Z1"]), &ZdVector::zeros(md(2), 1))
            .unwrap();
        let expected = DenseOperator::from_row_slice(
            2,
            2,
            &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
        );
        assert!(max_abs_diff(&proj, &expected) < VERDICT_TOL);

        let example = gens(3, &["X1.Z1.I", "Z1.X1.Z1", "I.Z1.X1"]);
        let proj = o
            .joint_projector(&example, &ZdVector::zeros(md(3), 3))
            .unwrap();
        assert!((proj.trace().re - 1.0).abs() < TRACE_TOL);
        assert!(max_abs_diff(&(&proj * &proj), &proj) < VERDICT_TOL);
        assert!(max_abs_diff(&proj.adjoint(), &proj) < VERDICT_TOL);

        let zz = o
            .joint_projector(&gens(2, &["Z1.Z1"]), &ZdVector::zeros(md(2), 1))
            .unwrap();
        assert!((zz.trace().re - 2.0).abs() < TRACE_TOL);
    }

    #[test]
    fn joint_projector_uses_generator_order() {
        // Z^2 has order 2 for d = 4; eigenvalues are ±1 only.
        let o = Oracle::default();
        let g = gens(4, &["Z2"]);
        let plus = o.joint_projector(&g, &ZdVector::new(md(4), &[0])).unwrap();
        let minus = o.joint_projector(&g, &ZdVector::new(md(4), &[2])).unwrap();
        let imaginary = o.joint_projector(&g, &ZdVector::new(md(4), &[1])).unwrap();
        assert!((plus.trace().re - 2.0).abs() < TRACE_TOL);
        assert!((minus.trace().re - 2.0).abs() < TRACE_TOL);
        assert!(imaginary.norm() < VERDICT_TOL);
    }

    #[test]
    fn sta1_examples() {
        let o = Oracle::default();
        for g in [
            gens(2, &["Z1"]),
            gens(2, &["Z1.Z1"]),
            gens(3, &["X1.Z1.I", "Z1.X1.Z1", "I.Z1.X1"]),
            gens(4, &["Z2.I", "X2.I"]),
        ] {
            assert!(o.verify_sta1(&g).unwrap().holds);
        }
    }

    #[test]
    fn stabilized_state_examples() {
        let o = Oracle::default();
        let psi = o.stabilized_state(&gens(2, &["Z1"])).unwrap();
        assert!((psi[0] - c(1.0, 0.0)).norm() < VERDICT_TOL);
        assert!(psi[1].norm() < VERDICT_TOL);

        let example = gens(3, &["X1.Z1.I", "Z1.X1.Z1", "I.Z1.X1"]);
        let psi = o.stabilized_state(&example).unwrap();
        assert!((psi.norm() - 1.0).abs() < VERDICT_TOL);
        for s in example.generators() {
            let img = o.pauli_matrix(s).unwrap() * &psi;
            assert!(vector_diff(&img, &psi) < VERDICT_TOL);
        }
        assert!(o.stabilized_state(&gens(2, &["Z1.Z1"])).is_err());
    }

    #[test]
    fn code_basis_has_full_rank() {
        let basis = Oracle::default().code_basis(&example_code()).unwrap();
        assert_eq!(basis.len(), 3);
        for (i, a) in basis.iter().enumerate() {
            for (j, b) in basis.iter().enumerate() {
                let expected = if i == j { 1.0 } else { 0.0 };
                assert!((a.dotc(b) - c(expected, 0.0)).norm() < VERDICT_TOL);
            }
        }
    }

    #[test]
    fn oracle_stabilizer_examples() {
        let o = Oracle::default();
        let v = o.oracle_is_stabilizer(&example_code()).unwrap();
        assert!(v.is_stabilizer);
        assert_eq!(v.centralizer_order, 9);

        let trivial = CwsCode::new(
            gens(3, &["X1.Z1.I", "Z1.X1.Z1", "I.Z1.X1"]),
            vec![p("I.I.I", 3)],
        )
        .unwrap();
        assert!(o.oracle_is_stabilizer(&trivial).unwrap().is_stabilizer);

        // Cl words {00, 10, 01} are not additively closed and R(W) rows are
        // independent: not a stabilizer code.
        let s = gens(2, &["Z1.I", "I.Z1"]);
        let code = CwsCode::new(s, vec![p("I.I", 2), p("X1.I", 2), p("I.X1", 2)]).unwrap();
        assert!(!code.is_stabilizer_code().is_stabilizer);
        assert!(!o.oracle_is_stabilizer(&code).unwrap().is_stabilizer);
    }

    #[test]
    fn span_stabilizer_of_example_code() {
        let o = Oracle::default();
        let code = example_code();
        let basis = o.code_basis(&code).unwrap();
        let stab = o.span_stabilizer(code.modulus(), code.n(), &basis).unwrap();
        assert_eq!(stab.elements.len(), 9);
        assert!((stab.trace - 3.0).abs() < TRACE_TOL);
    }

    #[test]
    fn detection_examples() {
        let o = Oracle::default();
        let code = example_code();
        let weight_one = PauliOperator::all_up_to_weight(code.modulus(), 3, 1);
        assert_eq!(weight_one.len(), 24);
        assert!(o
            .oracle_detects(&code, &weight_one)
            .unwrap()
            .iter()
            .all(|c| c.detected));

        let id = PauliOperator::identity(code.modulus(), 3);
        let check = o.oracle_detects(&code, &[id]).unwrap()[0];
        assert!(check.detected);
        assert!((check.constant - c(1.0, 0.0)).norm() < VERDICT_TOL);

        let w2 = code.codewords()[1].clone();
        let check = o.oracle_detects(&code, &[w2]).unwrap()[0];
        assert!(!check.detected);
        assert!((check.deviation - 1.0).abs() < VERDICT_TOL);
    }
}
