//! Stabilizer groups: validation, enumeration, order through the parity
//! check matrix, stabilized dimension, and extension to a maximal group.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::pauli::{PauliOperator, SymplecticVector};
use crate::zmod::{
    row_module_cardinality, solve_row, Modulus, ZdMatrix, ZdVector, DEFAULT_ENUMERATION_LIMIT,
};

/// An ordered, nonempty list of generators sharing `(d, n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSet {
    modulus: Modulus,
    n: usize,
    generators: Vec<PauliOperator>,
}

/// The closure of a generator set under multiplication.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumeratedGroup {
    pub elements: BTreeSet<PauliOperator>,
}

impl EnumeratedGroup {
    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    /// Phases `k != 0` with `q^k I` in the group, ascending.
    pub fn nontrivial_identity_phases(&self) -> Vec<u64> {
        self.elements
            .iter()
            .filter(|e| e.is_identity_multiple() && e.phase() != 0)
            .map(PauliOperator::phase)
            .collect()
    }

    pub fn contains(&self, p: &PauliOperator) -> bool {
        self.elements.contains(p)
    }
}

/// Findings of [`GeneratorSet::validate`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub abelian: bool,
    /// Index pairs `(i, j)`, `i < j`, of generators that do not commute.
    pub noncommuting_pairs: Vec<(usize, usize)>,
    pub identity_multiples_trivial: bool,
    /// Phases `k != 0` such that `q^k I` lies in the group.
    pub identity_multiple_phases: Vec<u64>,
    /// Order of the enumerated group.
    pub order: u64,
    /// `#<R(S)>`.
    pub module_order: u64,
    /// Advisory `n <= r <= 2n`.
    pub r_in_bounds: bool,
    pub warnings: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.abelian && self.identity_multiples_trivial
    }
}

impl GeneratorSet {
    pub fn new(generators: Vec<PauliOperator>) -> Result<Self> {
        let first = generators.first().ok_or_else(|| {
            Error::InvalidArgument("a generator set needs at least one generator".into())
        })?;
        for g in &generators[1..] {
            first.check_compatible(g)?;
        }
        Ok(Self {
            modulus: first.modulus(),
            n: first.n(),
            generators,
        })
    }

    #[inline]
    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn generators(&self) -> &[PauliOperator] {
        &self.generators
    }

    /// Number of generators `r`.
    #[inline]
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Closure under multiplication, breadth first from the identity.
    pub fn enumerate_group(&self, limit: usize) -> Result<EnumeratedGroup> {
        let identity = PauliOperator::identity(self.modulus, self.n);
        let mut elements = BTreeSet::from([identity.clone()]);
        let mut frontier = vec![identity];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for e in &frontier {
                for g in &self.generators {
                    let p = e.multiply(g)?;
                    if !elements.contains(&p) {
                        if elements.len() >= limit {
                            return Err(Error::ResourceLimit { limit });
                        }
                        elements.insert(p.clone());
                        next.push(p);
                    }
                }
            }
            frontier = next;
        }
        Ok(EnumeratedGroup { elements })
    }

    pub fn validate(&self) -> Result<ValidationReport> {
        self.validate_with_limit(DEFAULT_ENUMERATION_LIMIT)
    }

    pub fn validate_with_limit(&self, limit: usize) -> Result<ValidationReport> {
        let mut noncommuting_pairs = Vec::new();
        for (i, a) in self.generators.iter().enumerate() {
            for (j, b) in self.generators.iter().enumerate().skip(i + 1) {
                if !a.commutes(b)? {
                    noncommuting_pairs.push((i, j));
                }
            }
        }
        let group = self.enumerate_group(limit)?;
        let identity_multiple_phases = group.nontrivial_identity_phases();
        let module_order = row_module_cardinality(&self.parity_matrix());
        let r = self.len();
        let r_in_bounds = self.n <= r && r <= 2 * self.n;

        let mut warnings = Vec::new();
        if !r_in_bounds {
            warnings.push(format!(
                "generator count r = {r} lies outside n <= r <= 2n for n = {}",
                self.n
            ));
        }
        let report = ValidationReport {
            abelian: noncommuting_pairs.is_empty(),
            noncommuting_pairs,
            identity_multiples_trivial: identity_multiple_phases.is_empty(),
            identity_multiple_phases,
            order: group.order(),
            module_order,
            r_in_bounds,
            warnings,
        };
        if report.is_valid() && report.order != report.module_order {
            return Err(Error::Internal(format!(
                "enumerated order {} differs from module order {}",
                report.order, report.module_order
            )));
        }
        Ok(report)
    }

    /// `R(𝕊)`: row `i` is `R(s_i)`.
    pub fn parity_matrix(&self) -> ZdMatrix {
        let rows: Vec<ZdVector> = self
            .generators
            .iter()
            .map(|g| g.r_map().into_vector())
            .collect();
        ZdMatrix::from_vectors(self.modulus, 2 * self.n, &rows).expect("generators share (d, n)")
    }

    fn require_valid(&self) -> Result<ValidationReport> {
        let report = self.validate()?;
        if !report.abelian {
            let (i, j) = report.noncommuting_pairs[0];
            return Err(Error::InvalidGroup(format!(
                "generators {i} and {j} do not commute"
            )));
        }
        if !report.identity_multiples_trivial {
            return Err(Error::InvalidGroup(format!(
                "group contains q^{} I",
                report.identity_multiple_phases[0]
            )));
        }
        Ok(report)
    }

    /// `|S| = #<R(𝕊)>`; requires an abelian group without nontrivial
    /// identity multiples.
    pub fn group_order(&self) -> Result<u64> {
        self.require_valid()?;
        Ok(row_module_cardinality(&self.parity_matrix()))
    }

    /// Dimension `d^n / |S|` of the joint +1 eigenspace.
    pub fn stabilized_dimension(&self) -> Result<u64> {
        let order = self.group_order()?;
        let total = self.modulus.pow(self.n);
        if !total.is_multiple_of(order) {
            return Err(Error::Internal(format!(
                "|S| = {order} does not divide d^n = {total}"
            )));
        }
        Ok(total / order)
    }

    /// Adds generators until `|S| = d^n`.
    ///
    /// Candidates `v` are scanned lexicographically over `Z_d^(2n)`; `v` must
    /// commute with every generator and lie outside `<R(𝕊)>`. For the least
    /// `k >= 1` with `k v ∈ <R(𝕊)>`, the phase `p` of the new generator is the
    /// first one in `0..d` for which `(q^p P)^k` equals the element of `S` with
    /// symplectic vector `k v`; this keeps identity multiples trivial. A
    /// candidate without such a phase is skipped.
    pub fn extend_to_maximal(&self) -> Result<GeneratorSet> {
        let mut order = self.group_order()?;
        let target = self.modulus.pow(self.n);
        let mut current = self.clone();
        while order < target {
            let added = current.next_extension()?;
            current.generators.push(added);
            order = row_module_cardinality(&current.parity_matrix());
        }
        Ok(current)
    }

    fn next_extension(&self) -> Result<PauliOperator> {
        let m = self.modulus;
        let len = 2 * self.n;
        let parity = self.parity_matrix();
        let mut saw_candidate = false;
        for index in 1..m.pow(len) {
            let v = SymplecticVector::new(ZdVector::from_index(m, len, index))?;
            let bare = PauliOperator::from_symplectic(&v, 0);
            if !self
                .generators
                .iter()
                .all(|g| g.commutes(&bare).unwrap_or(false))
            {
                continue;
            }
            if solve_row(&parity, v.as_vector())?.is_some() {
                continue;
            }
            saw_candidate = true;
            if let Some(p) = self.phase_for(&parity, &bare)? {
                return Ok(p);
            }
        }
        if saw_candidate {
            Err(Error::PhaseUnrealizable)
        } else {
            Err(Error::Internal(
                "no commuting operator outside the group".into(),
            ))
        }
    }

    fn phase_for(&self, parity: &ZdMatrix, bare: &PauliOperator) -> Result<Option<PauliOperator>> {
        let m = self.modulus;
        let v = bare.r_map().into_vector();
        let (k, coefficients) = (1..=m.value())
            .find_map(|k| {
                solve_row(parity, &v.scale(k))
                    .transpose()
                    .map(|sol| sol.map(|x| (k, x)))
            })
            .expect("d * v = 0 lies in every module")?;
        let mut element = PauliOperator::identity(m, self.n);
        for (g, &c) in self.generators.iter().zip(coefficients.entries()) {
            element = element.multiply(&g.power(c))?;
        }
        let bare_power = bare.power(k);
        debug_assert_eq!(bare_power.r_map(), element.r_map());
        for p in 0..m.value() {
            // (q^p P)^k = q^(kp) P^k
            if m.add(m.mul(k % m.value(), p), bare_power.phase()) == element.phase() {
                return Ok(Some(bare.with_phase(p)));
            }
        }
        Ok(None)
    }
}
