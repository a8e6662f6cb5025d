//! Codeword stabilized codes.
//!
//! A CWS code is described by a maximal stabilizer group `S` (order `d^n`,
//! stabilizing a single state `|ψ>`) and codeword operators
//! `W = {w_1 = I, ..., w_K}`; the code is spanned by `w_i |ψ>`. Each operator
//! `P` has a classical word `Cl_S(P) = R(𝕊) Λ R(P)^T` recording its
//! commutation phases with the generators.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::pauli::{PauliOperator, SymplecticVector};
use crate::stabilizer::GeneratorSet;
use crate::zmod::{
    enumerate_row_module, intersection_cardinality, row_module_cardinality, solve_row, stack,
    Modulus, ZdMatrix, ZdVector, DEFAULT_ENUMERATION_LIMIT,
};

/// Classical word of an operator: one residue per stabilizer generator.
pub type ClassicalWord = ZdVector;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CwsCode {
    stabilizer: GeneratorSet,
    codewords: Vec<PauliOperator>,
}

/// Evidence for the stabilizer-code decision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StabilizerCertificate {
    /// `#<R(W)>`.
    pub card_rw: u64,
    /// `#(<R(W)> ∩ <R(𝕊)>)`.
    pub card_intersection: u64,
    /// `card_rw / card_intersection`, always an integer (Lagrange).
    pub ratio: u64,
    pub k: u64,
    pub is_stabilizer: bool,
    /// `#C_S(W) = d^(2n) / #<[R(𝕊); R(W)]>`.
    pub centralizer_order: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ErrorVerdict {
    pub error: PauliOperator,
    pub classical: ClassicalWord,
    pub detected: bool,
    /// Zero-based `(i, j)` with `Cl(w_i) + Cl(E) = Cl(w_j)` when `Cl(E) != 0`,
    /// or `(i, i)` when `Cl(E) = 0` and `E` does not commute with `w_i`.
    pub witnesses: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DetectionReport {
    pub verdicts: Vec<ErrorVerdict>,
    pub warnings: Vec<String>,
}

impl DetectionReport {
    pub fn all_detected(&self) -> bool {
        self.verdicts.iter().all(|v| v.detected)
    }
}

impl CwsCode {
    /// Checks that the stabilizer is valid with order `d^n`, `w_1 = I`, and
    /// the classical words are pairwise distinct.
    pub fn new(stabilizer: GeneratorSet, codewords: Vec<PauliOperator>) -> Result<Self> {
        let first = codewords
            .first()
            .ok_or_else(|| Error::InvalidCode("K = 0: at least one codeword is required".into()))?;
        let probe = &stabilizer.generators()[0];
        for w in &codewords {
            probe.check_compatible(w)?;
        }
        if !first.is_identity() {
            return Err(Error::InvalidCode(format!(
                "w_1 must be the identity, got {first}"
            )));
        }
        let order = stabilizer.group_order()?;
        let full = stabilizer.modulus().pow(stabilizer.n());
        if order != full {
            return Err(Error::InvalidCode(format!(
                "stabilizer order {order} is not d^n = {full}"
            )));
        }
        let code = Self {
            stabilizer,
            codewords,
        };
        code.classical_code()?;
        Ok(code)
    }

    #[inline]
    pub fn modulus(&self) -> Modulus {
        self.stabilizer.modulus()
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.stabilizer.n()
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.codewords.len()
    }

    #[inline]
    pub fn stabilizer(&self) -> &GeneratorSet {
        &self.stabilizer
    }

    #[inline]
    pub fn codewords(&self) -> &[PauliOperator] {
        &self.codewords
    }

    /// `R(W)`: row `i` is `R(w_i)`.
    pub fn codeword_matrix(&self) -> ZdMatrix {
        let rows: Vec<ZdVector> = self
            .codewords
            .iter()
            .map(|w| w.r_map().into_vector())
            .collect();
        ZdMatrix::from_vectors(self.modulus(), 2 * self.n(), &rows).expect("codewords share (d, n)")
    }

    pub fn cl_s(&self, p: &PauliOperator) -> Result<ClassicalWord> {
        let entries = self
            .stabilizer
            .generators()
            .iter()
            .map(|s| s.symplectic_product(p))
            .collect::<Result<Vec<_>>>()?;
        Ok(ZdVector::from_residues(self.modulus(), entries))
    }

    /// `Cl_S(w_i)` in codeword order; duplicate words make the code invalid.
    pub fn classical_code(&self) -> Result<Vec<ClassicalWord>> {
        let words = self
            .codewords
            .iter()
            .map(|w| self.cl_s(w))
            .collect::<Result<Vec<_>>>()?;
        let mut seen = BTreeSet::new();
        for (i, word) in words.iter().enumerate() {
            if !seen.insert(word) {
                let j = words.iter().position(|w| w == word).expect("seen before");
                return Err(Error::InvalidCode(format!(
                    "codewords {} and {} share the classical word ({word})",
                    j + 1,
                    i + 1
                )));
            }
        }
        Ok(words)
    }

    /// Detection check per error. With `c = Cl_S(E)`: if `c != 0`, no
    /// `c_i + c` may equal any `c_j`; if `c = 0`, `E` must commute with every
    /// codeword.
    pub fn detects_errors(&self, errors: &[PauliOperator]) -> Result<DetectionReport> {
        let words = self.classical_code()?;
        let word_set: BTreeSet<&ZdVector> = words.iter().collect();
        let mut report = DetectionReport::default();
        if errors.is_empty() {
            report.warnings.push("empty error set".into());
        }
        for e in errors {
            let classical = self.cl_s(e)?;
            let mut witnesses = Vec::new();
            if classical.is_zero() {
                if e.is_identity_multiple() {
                    report.warnings.push(format!(
                        "{e} is a multiple of the identity, detected vacuously"
                    ));
                }
                for (i, w) in self.codewords.iter().enumerate() {
                    if !e.commutes(w)? {
                        witnesses.push((i, i));
                    }
                }
            } else {
                for (i, ci) in words.iter().enumerate() {
                    let shifted = ci.add(&classical)?;
                    if word_set.contains(&shifted) {
                        let j = words.iter().position(|w| *w == shifted).expect("member");
                        witnesses.push((i, j));
                    }
                }
            }
            witnesses.sort_unstable();
            report.verdicts.push(ErrorVerdict {
                error: e.clone(),
                classical,
                detected: witnesses.is_empty(),
                witnesses,
            });
        }
        Ok(report)
    }

    /// The code is a stabilizer code iff `#<R(W)> / #(<R(W)> ∩ <R(𝕊)>) = K`.
    pub fn is_stabilizer_code(&self) -> StabilizerCertificate {
        let rs = self.stabilizer.parity_matrix();
        let rw = self.codeword_matrix();
        let card_rw = row_module_cardinality(&rw);
        let card_intersection =
            intersection_cardinality(&rw, &rs).expect("matrices share shape and modulus");
        debug_assert_eq!(card_rw % card_intersection, 0);
        let ratio = card_rw / card_intersection;
        let k = self.k() as u64;
        let stacked = stack(&rs, &rw).expect("matrices share shape and modulus");
        let centralizer_order = self.modulus().pow(2 * self.n()) / row_module_cardinality(&stacked);
        StabilizerCertificate {
            card_rw,
            card_intersection,
            ratio,
            k,
            is_stabilizer: ratio == k,
            centralizer_order,
        }
    }

    /// `{R(w_i)}` is closed under addition mod `d` (phases ignored).
    pub fn w_is_group(&self) -> bool {
        let set: BTreeSet<SymplecticVector> = self.codewords.iter().map(|w| w.r_map()).collect();
        is_additively_closed(set.iter().map(SymplecticVector::as_vector))
    }

    /// `Cl_S(W)` is closed under addition mod `d`.
    pub fn cls_w_is_group(&self) -> Result<bool> {
        let words = self.classical_code()?;
        Ok(is_additively_closed(words.iter()))
    }

    /// `W` is closed under operator multiplication including phases.
    pub fn w_is_operator_group(&self) -> bool {
        let set: BTreeSet<&PauliOperator> = self.codewords.iter().collect();
        self.codewords.iter().all(|a| {
            self.codewords
                .iter()
                .all(|b| set.contains(&a.multiply(b).expect("same (d, n)")))
        })
    }

    /// Elements of `<R(W)>` that also lie in `<R(𝕊)>`, by enumeration.
    pub fn enumerate_intersection(&self, limit: usize) -> Result<BTreeSet<ZdVector>> {
        let rw = enumerate_row_module(&self.codeword_matrix(), limit)?;
        let rs = enumerate_row_module(&self.stabilizer.parity_matrix(), limit)?;
        Ok(rw.intersection(&rs).cloned().collect())
    }
}

fn is_additively_closed<'a>(vectors: impl Iterator<Item = &'a ZdVector> + Clone) -> bool {
    let set: BTreeSet<&ZdVector> = vectors.clone().collect();
    vectors.clone().all(|a| {
        vectors
            .clone()
            .all(|b| a.add(b).is_ok_and(|s| set.contains(&s)))
    })
}

/// Turns a stabilizer code into an equivalent CWS code.
///
/// The generators are extended to a maximal group `S`; the classical targets
/// are the elements of `Im(R(𝕊) Λ)` that vanish on the original generators'
/// coordinates, in lexicographic order (so zero comes first and `w_1 = I`).
/// Each target `x` is realised by a phase-free `P_x` with `Cl_S(P_x) = x`.
pub fn stabilizer_to_cws(gens: &GeneratorSet) -> Result<CwsCode> {
    let original = gens.len();
    let dimension = gens.stabilized_dimension()?;
    let maximal = gens.extend_to_maximal()?;
    let m = gens.modulus();
    let n = gens.n();
    let cl_matrix = maximal
        .parity_matrix()
        .mul(&ZdMatrix::symplectic_form(m, n))?;
    // Cl_S(P) = (R(𝕊)Λ) R(P)^T, so targets are the row module of the transpose.
    let transposed = cl_matrix.transpose();
    let image = enumerate_row_module(&transposed, DEFAULT_ENUMERATION_LIMIT)?;
    let targets: Vec<&ZdVector> = image
        .iter()
        .filter(|x| x.entries()[..original].iter().all(|&e| e == 0))
        .collect();
    if targets.len() as u64 != dimension {
        return Err(Error::Internal(format!(
            "{} classical targets for a code of dimension {dimension}",
            targets.len()
        )));
    }
    let mut codewords = Vec::with_capacity(targets.len());
    for x in targets {
        let v = solve_row(&transposed, x)?.ok_or_else(|| {
            Error::Internal(format!("classical target ({x}) has no Pauli preimage"))
        })?;
        let p = PauliOperator::from_symplectic(&SymplecticVector::new(v)?, 0);
        codewords.push(if x.is_zero() {
            PauliOperator::identity(m, n)
        } else {
            p
        });
    }
    CwsCode::new(maximal, codewords)
}
