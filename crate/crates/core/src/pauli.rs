//! Qudit Pauli operators `q^k Z^z X^x` with exact phase tracking.
//!
//! Operators are kept in normal order: on every qudit the `Z` power stands to
//! the left of the `X` power, and the global phase is a power of
//! `q = exp(2πi/d)`. Reordering uses `X^a Z^b = q^(-ab) Z^b X^a`.

use std::fmt;

use crate::error::{Error, Result};
use crate::zmod::{dot, Modulus, ZdVector};

/// A vector `(z | x)` in `Z_d^(2n)`, the image of a Pauli operator under `R`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymplecticVector(ZdVector);

impl SymplecticVector {
    pub fn new(v: ZdVector) -> Result<Self> {
        if !v.len().is_multiple_of(2) {
            return Err(Error::DimensionMismatch(format!(
                "symplectic vectors have even length, got {}",
                v.len()
            )));
        }
        Ok(Self(v))
    }

    pub fn n(&self) -> usize {
        self.0.len() / 2
    }

    pub fn z_part(&self) -> &[u64] {
        &self.0.entries()[..self.n()]
    }

    pub fn x_part(&self) -> &[u64] {
        &self.0.entries()[self.n()..]
    }

    pub fn as_vector(&self) -> &ZdVector {
        &self.0
    }

    pub fn into_vector(self) -> ZdVector {
        self.0
    }
}

impl fmt::Display for SymplecticVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |s: &[u64]| s.iter().map(u64::to_string).collect::<Vec<_>>().join(" ");
        write!(f, "{} | {}", join(self.z_part()), join(self.x_part()))
    }
}

/// `u Λ v^T = <z_u, x_v> - <x_u, z_v> (mod d)`.
///
/// For Pauli operators `P`, `Q`: `PQ = q^(R(P) Λ R(Q)^T) QP`.
pub fn symplectic_product(u: &SymplecticVector, v: &SymplecticVector) -> Result<u64> {
    let m = u.0.modulus();
    if m != v.0.modulus() {
        return Err(Error::ModulusMismatch {
            left: m.value(),
            right: v.0.modulus().value(),
        });
    }
    if u.n() != v.n() {
        return Err(Error::DimensionMismatch(format!(
            "symplectic vectors for {} and {} qudits",
            u.n(),
            v.n()
        )));
    }
    Ok(m.sub(
        dot(m, u.z_part(), v.x_part()),
        dot(m, u.x_part(), v.z_part()),
    ))
}

/// Result of [`PauliOperator::order`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PauliOrder {
    /// Least `o >= 1` with `P^o` a multiple of the identity.
    pub order: u64,
    /// `P^o = q^residual_phase I`.
    pub residual_phase: u64,
}

/// How exponents outside `[0, d-1]` are treated when parsing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ParseMode {
    /// Exponents `>= d` are syntax errors.
    #[default]
    Strict,
    /// Exponents are reduced mod `d`.
    Reduce,
}

/// `q^phase · ⊗_j Z^(z_j) X^(x_j)` on `n` qudits of dimension `d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliOperator {
    modulus: Modulus,
    phase: u64,
    z: Vec<u64>,
    x: Vec<u64>,
}

impl PauliOperator {
    pub fn new(modulus: Modulus, phase: i64, z: &[i64], x: &[i64]) -> Result<Self> {
        if z.len() != x.len() {
            return Err(Error::DimensionMismatch(format!(
                "z has {} entries but x has {}",
                z.len(),
                x.len()
            )));
        }
        if z.is_empty() {
            return Err(Error::InvalidArgument(
                "a Pauli operator acts on at least one qudit".into(),
            ));
        }
        Ok(Self {
            modulus,
            phase: modulus.reduce(phase),
            z: z.iter().map(|&e| modulus.reduce(e)).collect(),
            x: x.iter().map(|&e| modulus.reduce(e)).collect(),
        })
    }

    pub fn identity(modulus: Modulus, n: usize) -> Self {
        assert!(n >= 1, "a Pauli operator acts on at least one qudit");
        Self {
            modulus,
            phase: 0,
            z: vec![0; n],
            x: vec![0; n],
        }
    }

    /// The phase-free operator with `R(P) = v`.
    pub fn from_symplectic(v: &SymplecticVector, phase: u64) -> Self {
        let modulus = v.0.modulus();
        Self {
            modulus,
            phase: phase % modulus.value(),
            z: v.z_part().to_vec(),
            x: v.x_part().to_vec(),
        }
    }

    #[inline]
    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.z.len()
    }

    #[inline]
    pub fn phase(&self) -> u64 {
        self.phase
    }

    #[inline]
    pub fn z(&self) -> &[u64] {
        &self.z
    }

    #[inline]
    pub fn x(&self) -> &[u64] {
        &self.x
    }

    pub fn with_phase(&self, phase: u64) -> Self {
        Self {
            phase: phase % self.modulus.value(),
            ..self.clone()
        }
    }

    pub fn is_identity(&self) -> bool {
        self.phase == 0 && self.is_identity_multiple()
    }

    /// True for every `q^k I`, including the identity itself.
    pub fn is_identity_multiple(&self) -> bool {
        self.z.iter().chain(&self.x).all(|&e| e == 0)
    }

    /// Number of qudits acted on nontrivially.
    pub fn weight(&self) -> usize {
        self.z
            .iter()
            .zip(&self.x)
            .filter(|&(&a, &b)| a != 0 || b != 0)
            .count()
    }

    pub fn check_compatible(&self, other: &PauliOperator) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch {
                left: self.modulus.value(),
                right: other.modulus.value(),
            });
        }
        if self.n() != other.n() {
            return Err(Error::DimensionMismatch(format!(
                "operators on {} and {} qudits",
                self.n(),
                other.n()
            )));
        }
        Ok(())
    }

    /// The product `self * other`, normal ordered.
    pub fn multiply(&self, other: &PauliOperator) -> Result<PauliOperator> {
        self.check_compatible(other)?;
        Ok(self.multiply_unchecked(other))
    }

    fn multiply_unchecked(&self, other: &PauliOperator) -> PauliOperator {
        let m = self.modulus;
        // X^x_P Z^z_Q = q^(-<x_P, z_Q>) Z^z_Q X^x_P
        let swap = dot(m, &self.x, &other.z);
        let phase = m.sub(m.add(self.phase, other.phase), swap);
        let add = |a: &[u64], b: &[u64]| -> Vec<u64> {
            a.iter().zip(b).map(|(&p, &q)| m.add(p, q)).collect()
        };
        PauliOperator {
            modulus: m,
            phase,
            z: add(&self.z, &other.z),
            x: add(&self.x, &other.x),
        }
    }

    /// `P†`, with `R(P†) = -R(P)`.
    pub fn adjoint(&self) -> PauliOperator {
        let m = self.modulus;
        // (q^k Z^z X^x)† = q^-k X^-x Z^-z = q^(-k - <x,z>) Z^-z X^-x
        let phase = m.sub(m.neg(self.phase), dot(m, &self.x, &self.z));
        PauliOperator {
            modulus: m,
            phase,
            z: self.z.iter().map(|&e| m.neg(e)).collect(),
            x: self.x.iter().map(|&e| m.neg(e)).collect(),
        }
    }

    /// `R(P) = (z | x)`; the phase is discarded.
    pub fn r_map(&self) -> SymplecticVector {
        let mut entries = self.z.clone();
        entries.extend_from_slice(&self.x);
        SymplecticVector(ZdVector::from_residues(self.modulus, entries))
    }

    pub fn symplectic_product(&self, other: &PauliOperator) -> Result<u64> {
        self.check_compatible(other)?;
        symplectic_product(&self.r_map(), &other.r_map())
    }

    pub fn commutes(&self, other: &PauliOperator) -> Result<bool> {
        Ok(self.symplectic_product(other)? == 0)
    }

    /// `P^k` by square-and-multiply.
    pub fn power(&self, mut k: u64) -> PauliOperator {
        let mut acc = PauliOperator::identity(self.modulus, self.n());
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.multiply_unchecked(&base);
            }
            base = base.multiply_unchecked(&base);
            k >>= 1;
        }
        acc
    }

    /// Least `o >= 1` with `P^o = α I`, together with the exponent of `α`.
    pub fn order(&self) -> PauliOrder {
        let order = self.r_map().into_vector().additive_order();
        PauliOrder {
            order,
            residual_phase: self.power(order).phase,
        }
    }

    /// Parses the text form, rejecting exponents `>= d`.
    pub fn parse(text: &str, modulus: Modulus) -> Result<PauliOperator> {
        Self::parse_with(text, modulus, ParseMode::Strict)
    }

    /// Parses `[ "w" digits ":" ] token ( "." token )*` where a token is `I`,
    /// `Z<k>`, `X<k>`, `Z<k>X<k>` or `X<k>Z<k>` (omitted exponents are 1).
    ///
    /// An `X`-before-`Z` token denotes the product in that order and is
    /// normal ordered, picking up the phase `q^(-ab)`.
    pub fn parse_with(text: &str, modulus: Modulus, mode: ParseMode) -> Result<PauliOperator> {
        Parser {
            bytes: text.as_bytes(),
            pos: 0,
            modulus,
            mode,
        }
        .operator()
    }

    /// All phase-free operators of weight `1..=max_weight`, ordered by weight
    /// and then lexicographically by `(z | x)`.
    pub fn all_up_to_weight(modulus: Modulus, n: usize, max_weight: usize) -> Vec<PauliOperator> {
        let total = modulus.pow(2 * n);
        let mut out: Vec<PauliOperator> = (1..total)
            .map(|i| {
                let v = ZdVector::from_index(modulus, 2 * n, i);
                PauliOperator::from_symplectic(&SymplecticVector(v), 0)
            })
            .filter(|p| p.weight() <= max_weight)
            .collect();
        out.sort_by_key(|p| (p.weight(), p.r_map()));
        out
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.phase != 0 {
            write!(f, "w{}:", self.phase)?;
        }
        for (j, (&z, &x)) in self.z.iter().zip(&self.x).enumerate() {
            if j > 0 {
                f.write_str(".")?;
            }
            match (z, x) {
                (0, 0) => f.write_str("I")?,
                (z, 0) => write!(f, "Z{z}")?,
                (0, x) => write!(f, "X{x}")?,
                (z, x) => write!(f, "Z{z}X{x}")?,
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    modulus: Modulus,
    mode: ParseMode,
}

impl Parser<'_> {
    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            position: self.pos,
            message: message.into(),
        })
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    /// Decimal digits, or `None` when there are none.
    fn number(&mut self) -> Result<Option<u64>> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Ok(None);
        }
        let digits = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        let value: u64 = match digits.parse() {
            Ok(v) => v,
            Err(_) => {
                self.pos = start;
                return self.error("exponent out of range");
            }
        };
        let d = self.modulus.value();
        if value >= d {
            if self.mode == ParseMode::Strict {
                self.pos = start;
                return self.error(format!("exponent {value} is not below d = {d}"));
            }
            return Ok(Some(value % d));
        }
        Ok(Some(value))
    }

    fn exponent(&mut self) -> Result<u64> {
        Ok(self.number()?.unwrap_or(1 % self.modulus.value()))
    }

    fn operator(mut self) -> Result<PauliOperator> {
        let m = self.modulus;
        let mut phase = 0;
        if self.eat(b'w') {
            phase = match self.number()? {
                Some(p) => p,
                None => return self.error("expected phase digits after 'w'"),
            };
            if !self.eat(b':') {
                return self.error("expected ':' after the phase");
            }
        }
        let (mut z, mut x) = (Vec::new(), Vec::new());
        loop {
            let (tz, tx, tphase) = self.token()?;
            z.push(tz);
            x.push(tx);
            phase = m.add(phase, tphase);
            match self.peek() {
                None => break,
                Some(b'.') => self.pos += 1,
                Some(c) => return self.error(format!("unexpected character '{}'", c as char)),
            }
        }
        Ok(PauliOperator {
            modulus: m,
            phase,
            z,
            x,
        })
    }

    /// One tensor factor as `(z, x, phase)`.
    fn token(&mut self) -> Result<(u64, u64, u64)> {
        let m = self.modulus;
        match self.peek() {
            Some(b'I') => {
                self.pos += 1;
                Ok((0, 0, 0))
            }
            Some(b'Z') => {
                self.pos += 1;
                let z = self.exponent()?;
                let x = if self.eat(b'X') { self.exponent()? } else { 0 };
                Ok((z, x, 0))
            }
            Some(b'X') => {
                self.pos += 1;
                let x = self.exponent()?;
                let z = if self.eat(b'Z') { self.exponent()? } else { 0 };
                Ok((z, x, m.neg(m.mul(x, z))))
            }
            Some(c) => self.error(format!("expected I, Z or X, found '{}'", c as char)),
            None => self.error("expected I, Z or X, found end of input"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn md(d: u64) -> Modulus {
        Modulus::new(d).unwrap()
    }

    fn p(s: &str, d: u64) -> PauliOperator {
        PauliOperator::parse(s, md(d)).unwrap()
    }

    #[test]
    fn multiply_examples() {
        let xz = p("X1", 2).multiply(&p("Z1", 2)).unwrap();
        assert_eq!((xz.phase(), xz.z(), xz.x()), (1, &[1][..], &[1][..]));

        let zx = p("Z1", 3).multiply(&p("X1", 3)).unwrap();
        assert_eq!((zx.phase(), zx.z(), zx.x()), (0, &[1][..], &[1][..]));

        let prod = p("Z1.X1", 3).multiply(&p("X1.Z1", 3)).unwrap();
        assert_eq!(
            (prod.phase(), prod.z(), prod.x()),
            (2, &[1, 1][..], &[1, 1][..])
        );
    }

    #[test]
    fn multiply_rejects_mismatch() {
        assert!(matches!(
            p("Z1", 3).multiply(&p("Z1.I", 3)),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(matches!(
            p("Z1", 3).multiply(&p("Z1", 5)),
            Err(Error::ModulusMismatch { .. })
        ));
    }

    #[test]
    fn adjoint_examples() {
        let id = PauliOperator::identity(md(4), 3);
        assert_eq!(id.adjoint(), id);
        let a = p("Z1X1", 2).adjoint();
        assert_eq!((a.phase(), a.z(), a.x()), (1, &[1][..], &[1][..]));
        let q = p("w1:Z2X3.X1", 5);
        assert_eq!(
            q.adjoint().r_map().into_vector(),
            q.r_map().into_vector().neg()
        );
    }

    #[test]
    fn r_map_examples() {
        let v = p("w2:Z1X2", 3).r_map();
        assert_eq!(v.as_vector().entries(), &[1, 2]);
        let s2 = p("Z1.X1.Z1", 3).r_map();
        assert_eq!(s2.as_vector().entries(), &[1, 0, 1, 0, 1, 0]);
        assert!(PauliOperator::identity(md(3), 2)
            .r_map()
            .as_vector()
            .is_zero());
    }

    #[test]
    fn symplectic_product_examples() {
        let z = p("Z1", 3).r_map();
        let x = p("X1", 3).r_map();
        assert_eq!(symplectic_product(&z, &x).unwrap(), 1);
        assert_eq!(symplectic_product(&z, &z).unwrap(), 0);
        let w2 = SymplecticVector::new(ZdVector::new(md(3), &[1, 1, 2, 1, 0, 0])).unwrap();
        let s2 = SymplecticVector::new(ZdVector::new(md(3), &[1, 0, 1, 0, 1, 0])).unwrap();
        assert_eq!(symplectic_product(&w2, &s2).unwrap(), 0);
        assert!(symplectic_product(&z, &s2).is_err());
        assert!(SymplecticVector::new(ZdVector::zeros(md(3), 3)).is_err());
    }

    #[test]
    fn commutes_examples() {
        for d in 2..=6 {
            assert!(p("Z1.I", d).commutes(&p("I.X1", d)).unwrap());
            assert!(!p("Z1", d).commutes(&p("X1", d)).unwrap());
        }
        let gens = [p("X1.Z1.I", 3), p("Z1.X1.Z1", 3), p("I.Z1.X1", 3)];
        for a in &gens {
            for b in &gens {
                assert!(a.commutes(b).unwrap());
            }
        }
    }

    #[test]
    fn order_examples() {
        assert_eq!(
            p("X1", 4).order(),
            PauliOrder {
                order: 4,
                residual_phase: 0
            }
        );
        assert_eq!(p("Z2", 4).order().order, 2);
        assert_eq!(
            p("Z1X1", 2).order(),
            PauliOrder {
                order: 2,
                residual_phase: 1
            }
        );
        assert_eq!(
            p("Z1X1", 2).power(2),
            PauliOperator::identity(md(2), 1).with_phase(1)
        );
        assert_eq!(PauliOperator::identity(md(3), 2).order().order, 1);
    }

    #[test]
    fn parse_examples() {
        let a = p("X1Z1.Z1.I", 3);
        assert_eq!((a.z(), a.x()), (&[1, 1, 0][..], &[1, 0, 0][..]));
        // XZ = q^-1 ZX
        assert_eq!(a.phase(), 2);
        assert_eq!(a.to_string(), "w2:Z1X1.Z1.I");

        let b = p("w2:Z1.I", 3);
        assert_eq!((b.phase(), b.z(), b.x()), (2, &[1, 0][..], &[0, 0][..]));

        let c = p("I.I", 7);
        assert!(c.is_identity());
        assert_eq!(c.n(), 2);

        assert_eq!(p("ZX.X.Z", 5).to_string(), "Z1X1.X1.Z1");
    }

    #[test]
    fn parse_errors_carry_positions() {
        let m = md(3);
        let err = |s: &str| match PauliOperator::parse(s, m) {
            Err(Error::Syntax { position, .. }) => position,
            other => panic!("expected syntax error for {s:?}, got {other:?}"),
        };
        assert_eq!(err("Z1.Y1"), 3);
        assert_eq!(err("Z3"), 1);
        assert_eq!(err("w:Z"), 1);
        assert_eq!(err("w1Z"), 2);
        assert_eq!(err("Z1."), 3);
        assert_eq!(err(""), 0);
        assert_eq!(err("Z1 X1"), 2);
        let reduced = PauliOperator::parse_with("w4:Z3X5", m, ParseMode::Reduce).unwrap();
        assert_eq!(reduced.to_string(), "w1:X2");
    }

    #[test]
    fn all_up_to_weight_counts() {
        let ops = PauliOperator::all_up_to_weight(md(3), 3, 1);
        assert_eq!(ops.len(), 24);
        assert!(ops.iter().all(|o| o.weight() == 1 && o.phase() == 0));
        assert_eq!(PauliOperator::all_up_to_weight(md(3), 3, 3).len(), 728);
    }

    fn arb_pauli(d: u64, n: usize) -> impl Strategy<Value = PauliOperator> {
        (
            0..d,
            proptest::collection::vec(0..d, n),
            proptest::collection::vec(0..d, n),
        )
            .prop_map(move |(phase, z, x)| PauliOperator {
                modulus: Modulus::new(d).unwrap(),
                phase,
                z,
                x,
            })
    }

    fn arb_triple() -> impl Strategy<Value = (PauliOperator, PauliOperator, PauliOperator)> {
        (2u64..=7, 1usize..=4)
            .prop_flat_map(|(d, n)| (arb_pauli(d, n), arb_pauli(d, n), arb_pauli(d, n)))
    }

    proptest! {
        #[test]
        fn r_map_is_a_homomorphism((a, b, _) in arb_triple()) {
            let lhs = a.multiply(&b).unwrap().r_map().into_vector();
            let rhs = a.r_map().into_vector().add(b.r_map().as_vector()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn multiply_is_associative((a, b, c) in arb_triple()) {
            let left = a.multiply(&b).unwrap().multiply(&c).unwrap();
            let right = a.multiply(&b.multiply(&c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn symplectic_product_is_antisymmetric((a, b, _) in arb_triple()) {
            let m = a.modulus();
            prop_assert_eq!(a.symplectic_product(&b).unwrap(), m.neg(b.symplectic_product(&a).unwrap()));
        }

        #[test]
        fn commutation_phase_is_symplectic((a, b, _) in arb_triple()) {
            let ab = a.multiply(&b).unwrap();
            let ba = b.multiply(&a).unwrap();
            let c = a.symplectic_product(&b).unwrap();
            prop_assert_eq!(ab.r_map(), ba.r_map());
            prop_assert_eq!(ab.phase(), a.modulus().add(ba.phase(), c));
            prop_assert_eq!(a.commutes(&b).unwrap(), ab == ba);
        }

        #[test]
        fn adjoint_is_an_inverse_involution((a, _, _) in arb_triple()) {
            prop_assert_eq!(a.adjoint().adjoint(), a.clone());
            prop_assert!(a.multiply(&a.adjoint()).unwrap().is_identity());
            prop_assert!(a.adjoint().multiply(&a).unwrap().is_identity());
        }

        #[test]
        fn format_parse_round_trip((a, _, _) in arb_triple()) {
            let text = a.to_string();
            prop_assert_eq!(PauliOperator::parse(&text, a.modulus()).unwrap(), a);
        }

        #[test]
        fn order_is_minimal((a, _, _) in arb_triple()) {
            let o = a.order();
            prop_assert!(a.power(o.order).is_identity_multiple());
            for k in 1..o.order {
                prop_assert!(!a.power(k).is_identity_multiple());
            }
            prop_assert_eq!(a.power(o.order).phase(), o.residual_phase);
        }
    }
}
