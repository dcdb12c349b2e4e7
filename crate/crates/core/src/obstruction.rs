//! Satellite obstruction calculus for the genus-two example.
//!
//! The base knot `K` here is the genus-two knot whose Seifert form admits
//! metabolizers represented by slice knots, yet whose double branched cover
//! obstructions stay nonzero for every linking-form metabolizer.  A satellite
//! `K*` is built from `K` by tying companion knots into a fixed family of
//! five curves on the Seifert surface.  For a character `chi` of prime order
//! on the cover homology, the obstruction splits as
//!
//! ```text
//!     sigma(K*, chi) = sigma(K, chi) + correction(chi)
//! ```
//!
//! where the correction is a finite sum of Tristram-Levine signatures of the
//! companions, evaluated at angles read off from `chi`.  The base term
//! `sigma(K, chi)` is never evaluated numerically; it is carried as an opaque
//! symbol bounded in absolute value by a constant `C` depending only on `K`.
//! The punchline is arithmetic: for every metabolizer of the linking form
//! there is a vanishing character whose correction is a positive multiple of
//! `2 * sigma_{1/3}(J)`, so choosing the companion `J` with large enough
//! signature beats the bound `C` and obstructs sliceness.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::corpus;
use crate::cover::{
    cover_homology, linking_form, metabolizers, vanishing_characters, Character,
};
use crate::error::{Error, Result};
use crate::linalg::{IntMatrix, ModPSubspace};
use crate::seifert::SeifertMatrix;
use crate::signature::{signature_correction, tristram_levine, RationalAngle};

/// Indicator of a nonzero residue: 1 if `x != 0 (mod p)`, else 0.
pub fn bar(x: u64, p: u64) -> u64 {
    assert!(p >= 2, "modulus must be at least 2");
    u64::from(x % p != 0)
}

/// Superadditivity of the indicator: `bar(b) + bar(c) >= bar(b + c)` for all
/// residue pairs mod `p`.  The inequality is what lets per-curve signature
/// contributions be grouped without cancellation.
pub fn lemma_bar_superadditive(p: u64) -> bool {
    assert!(p >= 2, "modulus must be at least 2");
    (0..p).all(|b| (0..p).all(|c| bar(b, p) + bar(c, p) >= bar(b + c, p)))
}

/// The multiplier of a rank-four order-three character `chi = (a, b, c, d)`:
///
/// ```text
///     m(chi) = bar(a) + bar(b) + bar(c) + bar(d) - bar(b + c)
/// ```
///
/// This is the coefficient of `2 * sigma_{1/3}(J)` in the correction term of
/// the genus-two satellite family.  It is nonnegative by
/// [`lemma_bar_superadditive`], and zero exactly when `a = d = 0` and the
/// `b`, `c` contributions cancel against the fifth curve.
pub fn multiplier(chi: &Character) -> Result<i64> {
    if chi.p() != 3 || chi.len() != 4 {
        return Err(Error::DimensionMismatch(format!(
            "multiplier is defined for rank-4 characters of order 3, got rank {} of order {}",
            chi.len(),
            chi.p()
        )));
    }
    let b = |i: usize| bar(chi.value(i), 3) as i64;
    let fifth = bar(chi.value(1) + chi.value(2), 3) as i64;
    Ok(b(0) + b(1) + b(2) + b(3) - fifth)
}

/// One satellite curve: a label, a linear functional on characters (the
/// winding data of the curve in the cover), and the companion knot tied in
/// along it.
#[derive(Debug, Clone)]
pub struct SatelliteCurve {
    label: String,
    functional: Vec<u64>,
    companion: SeifertMatrix,
}

impl SatelliteCurve {
    pub fn new(
        label: impl Into<String>,
        functional: Vec<u64>,
        companion: SeifertMatrix,
    ) -> SatelliteCurve {
        SatelliteCurve {
            label: label.into(),
            functional,
            companion,
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn functional(&self) -> &[u64] {
        &self.functional
    }

    pub fn companion(&self) -> &SeifertMatrix {
        &self.companion
    }

    /// Evaluates the winding functional on a character: `sum_i f_i chi_i mod p`.
    pub fn evaluate(&self, chi: &Character) -> u64 {
        let p = chi.p();
        self.functional
            .iter()
            .zip(chi.values())
            .map(|(f, v)| (f % p) * v % p)
            .sum::<u64>()
            % p
    }
}

/// A satellite construction: a base knot, the character order `p`, and the
/// curves with their companions.
#[derive(Debug, Clone)]
pub struct SatelliteSpec {
    base: SeifertMatrix,
    p: u64,
    curves: Vec<SatelliteCurve>,
}

impl SatelliteSpec {
    /// Validates label uniqueness, functional lengths, and residue ranges.
    pub fn new(base: SeifertMatrix, p: u64, curves: Vec<SatelliteCurve>) -> Result<SatelliteSpec> {
        if p < 2 {
            return Err(Error::InvalidSatellite(format!(
                "character order must be at least 2, got {p}"
            )));
        }
        if curves.is_empty() {
            return Err(Error::InvalidSatellite(
                "satellite needs at least one curve".into(),
            ));
        }
        let rank = curves[0].functional.len();
        for (i, curve) in curves.iter().enumerate() {
            if curve.functional.len() != rank {
                return Err(Error::InvalidSatellite(format!(
                    "curve {} has functional length {}, expected {rank}",
                    curve.label,
                    curve.functional.len()
                )));
            }
            if let Some(v) = curve.functional.iter().find(|v| **v >= p) {
                return Err(Error::InvalidSatellite(format!(
                    "curve {} has functional entry {v} outside 0..{p}",
                    curve.label
                )));
            }
            if curves[..i].iter().any(|prev| prev.label == curve.label) {
                return Err(Error::InvalidSatellite(format!(
                    "duplicate curve label {}",
                    curve.label
                )));
            }
        }
        Ok(SatelliteSpec { base, p, curves })
    }

    /// The genus-two example: five curves on the standard base, four reading
    /// off the coordinates `a, b, c, d` of the character with companion `J`,
    /// and a fifth reading `b + c` with companion the mirror of `J`.
    pub fn genus_two_example(j: &SeifertMatrix) -> SatelliteSpec {
        let curves = vec![
            SatelliteCurve::new("L1", vec![1, 0, 0, 0], j.clone()),
            SatelliteCurve::new("L2", vec![0, 1, 0, 0], j.clone()),
            SatelliteCurve::new("L3", vec![0, 0, 1, 0], j.clone()),
            SatelliteCurve::new("L4", vec![0, 0, 0, 1], j.clone()),
            SatelliteCurve::new("L5", vec![0, 1, 1, 0], j.mirror()),
        ];
        SatelliteSpec::new(corpus::genus_two_base(), 3, curves)
            .expect("the fixed five-curve family is well formed")
    }

    pub fn base(&self) -> &SeifertMatrix {
        &self.base
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn curves(&self) -> &[SatelliteCurve] {
        &self.curves
    }

    /// Length of the character value vectors this spec consumes.
    pub fn character_rank(&self) -> usize {
        self.curves[0].functional.len()
    }
}

/// The obstruction of a satellite at one character, split into an opaque
/// base symbol and an exactly computed correction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicObstruction {
    /// Symbolic base term, e.g. `sigma(K, (0,1,1,0))`.  Only the bound
    /// `|base_term| <= C` is ever used; no numeric value is attached.
    pub base_term: String,
    /// Exact integer correction: twice the sum of companion signatures at
    /// the angles the character induces on each curve.
    pub correction: i64,
    /// Which angle numerator each curve contributed: `(label, k)` with the
    /// companion evaluated at `k / p` (skipped when `k = 0`).
    pub witness_angle_values: Vec<(String, u64)>,
}

/// Computes the obstruction of `spec` at `chi` with the base term symbolic
/// and the correction exact.
///
/// The correction is `2 * sum_i sigma_{k_i / p}(J_i)` where
/// `k_i = functional_i(chi)`; curves with `k_i = 0` contribute nothing.
pub fn satellite_obstruction(
    spec: &SatelliteSpec,
    chi: &Character,
) -> Result<SymbolicObstruction> {
    if chi.p() != spec.p || chi.len() != spec.character_rank() {
        return Err(Error::InvalidCharacter(format!(
            "expected a rank-{} character of order {}, got rank {} of order {}",
            spec.character_rank(),
            spec.p,
            chi.len(),
            chi.p()
        )));
    }
    let mut companions = Vec::with_capacity(spec.curves.len());
    let mut witness_angle_values = Vec::with_capacity(spec.curves.len());
    for curve in &spec.curves {
        let k = curve.evaluate(chi);
        witness_angle_values.push((curve.label.clone(), k));
        companions.push((curve.companion.clone(), k));
    }
    let correction = signature_correction(&companions, spec.p)?;
    let base_label = spec.base.label().unwrap_or("K");
    Ok(SymbolicObstruction {
        base_term: format!("sigma({base_label}, {chi})"),
        correction,
        witness_angle_values,
    })
}

/// Every character of order `p` and the given rank, in ascending
/// lexicographic order of value vectors.
fn all_characters(p: u64, rank: usize) -> Vec<Character> {
    let count = (p as usize).checked_pow(rank as u32).expect("small rank");
    let mut out = Vec::with_capacity(count);
    let mut values = vec![0u64; rank];
    loop {
        out.push(Character::new(p, values.clone()).expect("values reduced"));
        let mut i = rank;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            values[i] += 1;
            if values[i] < p {
                break;
            }
            values[i] = 0;
        }
    }
}

/// Checks the closed form of the correction for the genus-two family: for
/// every one of the 81 characters,
///
/// ```text
///     correction(chi) = 2 * m(chi) * sigma_{1/3}(J)
/// ```
///
/// with `m` the [`multiplier`].  This is what reduces the whole verification
/// to a single signature of the companion.
pub fn reduction_identity_check(j: &SeifertMatrix) -> Result<bool> {
    let spec = SatelliteSpec::genus_two_example(j);
    let angle = RationalAngle::new(1, 3).expect("1/3 is a valid angle");
    let sigma = tristram_levine(j, &angle)?.value;
    for chi in all_characters(3, 4) {
        let obstruction = satellite_obstruction(&spec, &chi)?;
        let m = multiplier(&chi)?;
        if obstruction.correction != 2 * m * sigma {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Checks that the three computed invariants split over a connected sum:
/// the signature adds, the cover homology is the direct sum (equality of
/// invariant factors after re-normalizing the merged factor multiset), and
/// the linking form is the orthogonal block sum.
pub fn additivity_check(
    s1: &SeifertMatrix,
    s2: &SeifertMatrix,
    angle: &RationalAngle,
) -> Result<bool> {
    let sum = s1.connected_sum(s2);

    let sig_sum = tristram_levine(&sum, angle)?.value;
    let sig_parts = tristram_levine(s1, angle)?.value + tristram_levine(s2, angle)?.value;
    if sig_sum != sig_parts {
        return Ok(false);
    }

    let h1 = cover_homology(s1);
    let h2 = cover_homology(s2);
    let h = cover_homology(&sum);
    if h.order() != &(h1.order() * h2.order()) {
        return Ok(false);
    }
    // Invariant factors of a direct sum are the Smith factors of the stacked
    // diagonal, not the concatenation, so re-normalize before comparing.
    let merged: Vec<BigInt> = h1
        .invariant_factors()
        .iter()
        .chain(h2.invariant_factors())
        .cloned()
        .collect();
    let mut diag = IntMatrix::zero(merged.len(), merged.len());
    for (i, f) in merged.iter().enumerate() {
        diag.set(i, i, f.clone());
    }
    let renormalized: Vec<BigInt> = crate::linalg::smith_normal_form(&diag)
        .invariant_factors
        .into_iter()
        .filter(|f| !f.is_one())
        .collect();
    if h.invariant_factors() != renormalized.as_slice() {
        return Ok(false);
    }

    let l1 = linking_form(s1);
    let l2 = linking_form(s2);
    let l = linking_form(&sum);
    let (n1, n) = (l1.gram().rows(), l.gram().rows());
    if n != n1 + l2.gram().rows() {
        return Ok(false);
    }
    for i in 0..n {
        for j in 0..n {
            let expected = if i < n1 && j < n1 {
                l1.gram().get(i, j).clone()
            } else if i >= n1 && j >= n1 {
                l2.gram().get(i - n1, j - n1).clone()
            } else {
                BigRational::zero()
            };
            if l.gram().get(i, j) != &expected {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The verdict for one metabolizer: its basis, the selected witness
/// character, and the inequality the witness certifies.
#[derive(Debug, Clone)]
pub struct MetabolizerWitness {
    /// Row-echelon basis of the metabolizer inside `(Z/3)^4`.
    pub basis: Vec<Vec<u64>>,
    /// Vanishing character with the largest multiplier; ties are broken by
    /// lexicographically least value vector.
    pub witness: Character,
    /// Multiplier of the witness; at least 1 for every metabolizer.
    pub multiplier: i64,
    /// True when every vanishing character of this metabolizer has
    /// `a = d = 0`, i.e. the annihilator is spanned by the middle
    /// coordinates and the cancellation-threatened characters live here.
    pub annihilator_case: bool,
    /// Symbolic inequality the witness certifies once `sigma_{1/3}(J) > C/2`.
    pub inequality: String,
}

/// Outcome of the full genus-two verification for a fixed companion `J`.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    /// Invariant factors of the cover homology of the base, e.g. `[3, 3, 3, 3]`.
    pub cover_factors: Vec<u64>,
    /// Order of the cover homology.
    pub cover_order: u64,
    /// `sigma_{1/3}(J)` for the companion this report was built with.
    pub sigma: i64,
    /// One witness per linking-form metabolizer.
    pub witnesses: Vec<MetabolizerWitness>,
}

impl VerificationReport {
    /// Exact rational check that every witness inequality
    /// `2 * m * sigma_{1/3}(J) - C > 0` holds at the sample bound `C`.
    pub fn check_sample_bound(&self, c: &BigRational) -> bool {
        let sigma = BigRational::from(BigInt::from(self.sigma));
        self.witnesses.iter().all(|w| {
            let lhs = BigRational::from(BigInt::from(2 * w.multiplier)) * &sigma - c;
            lhs.is_positive()
        })
    }

    /// Whether the companion satisfies the hypothesis `sigma_{1/3}(J) > C / 2`.
    pub fn hypothesis_met(&self, c: &BigRational) -> bool {
        let two_sigma = BigRational::from(BigInt::from(2 * self.sigma));
        two_sigma > *c
    }
}

/// Runs the whole genus-two argument for companion `J` and reports:
///
/// 1. the cover homology factors of the base (`[3, 3, 3, 3]`),
/// 2. every metabolizer of the linking form,
/// 3. for each metabolizer a vanishing character with multiplier at least 1,
/// 4. for the metabolizer whose vanishing characters all have `a = d = 0`,
///    the annihilator argument: the annihilator is exactly
///    `span{(0,1,0,0), (0,0,1,0)}` and contains `(0,1,1,0)` with multiplier
///    exactly 1,
/// 5. the symbolic conclusion `2 m sigma_{1/3}(J) - C > 0` per metabolizer.
///
/// Errors with `VerificationFailed` if any metabolizer lacks a witness or
/// the annihilator argument does not confirm.
pub fn verify_genus_two_example(j: &SeifertMatrix) -> Result<VerificationReport> {
    let angle = RationalAngle::new(1, 3).expect("1/3 is a valid angle");
    let sigma = tristram_levine(j, &angle)?.value;

    let base = corpus::genus_two_base();
    let cover = cover_homology(&base);
    let cover_factors: Vec<u64> = cover
        .invariant_factors()
        .iter()
        .map(|f| f.to_u64().expect("small factors"))
        .collect();
    let cover_order = cover.order().to_u64().expect("small order");

    let form = linking_form(&base);
    let mets = metabolizers(&form)?;
    if mets.is_empty() {
        return Err(Error::VerificationFailed(
            "the base linking form has no metabolizers to obstruct".into(),
        ));
    }

    let mut witnesses = Vec::with_capacity(mets.len());
    let mut saw_annihilator_case = false;
    for h in &mets {
        let vanishing = vanishing_characters(h);
        // |H| * |annihilator chars| = |cover homology| for a metabolizer.
        assert_eq!(
            vanishing.len() * 3usize.pow(h.dim() as u32),
            cover_order as usize,
            "annihilator size must complement the metabolizer"
        );

        let mut best: Option<(i64, &Character)> = None;
        for chi in &vanishing {
            let m = multiplier(chi)?;
            // vanishing_characters is lexicographically sorted, so keeping
            // strict maxima selects the lex-least among ties.
            if best.map_or(true, |(bm, _)| m > bm) {
                best = Some((m, chi));
            }
        }
        let (m, chi) = best.expect("a metabolizer always has vanishing characters");
        if m < 1 {
            return Err(Error::VerificationFailed(format!(
                "metabolizer with basis {:?} has no vanishing character of positive multiplier",
                h.basis()
            )));
        }

        let annihilator_case = vanishing
            .iter()
            .all(|c| c.value(0) == 0 && c.value(3) == 0);
        if annihilator_case {
            saw_annihilator_case = true;
            confirm_annihilator_argument(h)?;
        }

        witnesses.push(MetabolizerWitness {
            basis: h.basis().to_vec(),
            witness: chi.clone(),
            multiplier: m,
            annihilator_case,
            inequality: format!(
                "sigma(K*, {chi}) >= 2*{m}*sigma_1/3(J) - C > 0 once sigma_1/3(J) > C/2"
            ),
        });
    }
    if !saw_annihilator_case {
        return Err(Error::VerificationFailed(
            "expected a metabolizer whose vanishing characters all have a = d = 0".into(),
        ));
    }

    Ok(VerificationReport {
        cover_factors,
        cover_order,
        sigma,
        witnesses,
    })
}

/// The annihilator argument for the metabolizer spanned by the outer
/// coordinates: its annihilator must be exactly the span of `(0,1,0,0)` and
/// `(0,0,1,0)`, which contains `(0,1,1,0)`, and that character has
/// multiplier exactly 1 even though its four coordinates suggest 2.
fn confirm_annihilator_argument(h: &ModPSubspace) -> Result<()> {
    let expected = ModPSubspace::from_vectors(3, 4, &[vec![0, 1, 0, 0], vec![0, 0, 1, 0]])
        .expect("valid span");
    if h.annihilator() != expected {
        return Err(Error::VerificationFailed(format!(
            "annihilator of the a = d = 0 metabolizer is {:?}, expected span{{(0,1,0,0), (0,0,1,0)}}",
            h.annihilator().basis()
        )));
    }
    let special = Character::new(3, vec![0, 1, 1, 0]).expect("valid character");
    if !expected.contains(special.values()) {
        return Err(Error::VerificationFailed(
            "character (0,1,1,0) missing from the annihilator".into(),
        ));
    }
    if multiplier(&special)? != 1 {
        return Err(Error::VerificationFailed(format!(
            "character (0,1,1,0) has multiplier {}, expected exactly 1",
            multiplier(&special)?
        )));
    }
    Ok(())
}

/// Builds a companion whose signature clears a sample bound: the connected
/// sum of `n = ceil(C/4) + 1` left-handed trefoils, so that
/// `sigma_{1/3}(J) = 2n > C/2` with room to spare.
pub fn suggest_companion(c: &BigRational) -> Result<SeifertMatrix> {
    if c.is_negative() {
        return Err(Error::InvalidArgument(format!(
            "sample bound must be nonnegative, got {c}"
        )));
    }
    let n_big: BigInt = (c / BigRational::from(BigInt::from(4))).ceil().to_integer() + 1;
    // Each summand adds two rows; keep the quadratic-size signature
    // computation comfortably in memory.
    const MAX_SUMMANDS: u64 = 400;
    let n = n_big.to_u64().filter(|n| *n <= MAX_SUMMANDS).ok_or_else(|| {
        Error::InvalidArgument(format!(
            "sample bound {c} needs {n_big} summands, supported up to {MAX_SUMMANDS}"
        ))
    })?;
    Ok(corpus::left_trefoil()
        .repeated_connected_sum(n as usize)
        .labeled(format!("connected sum of {n} left-handed trefoils")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn chi(values: [u64; 4]) -> Character {
        Character::new(3, values.to_vec()).expect("valid character")
    }

    #[test]
    fn bar_is_the_nonzero_indicator() {
        assert_eq!(bar(0, 3), 0);
        assert_eq!(bar(1, 3), 1);
        assert_eq!(bar(2, 3), 1);
        assert_eq!(bar(3, 3), 0);
        assert_eq!(bar(4, 3), 1);
        assert_eq!(bar(10, 5), 0);
        assert_eq!(bar(7, 5), 1);
    }

    #[test]
    fn bar_superadditivity_holds_for_small_moduli() {
        for p in [2, 3, 5, 7, 9] {
            assert!(lemma_bar_superadditive(p), "failed at p = {p}");
        }
    }

    #[test]
    fn multiplier_frozen_values() {
        assert_eq!(multiplier(&chi([0, 0, 0, 0])).unwrap(), 0);
        assert_eq!(multiplier(&chi([0, 1, 0, 0])).unwrap(), 0);
        assert_eq!(multiplier(&chi([0, 0, 2, 0])).unwrap(), 0);
        assert_eq!(multiplier(&chi([1, 0, 0, 0])).unwrap(), 1);
        assert_eq!(multiplier(&chi([0, 0, 0, 2])).unwrap(), 1);
        assert_eq!(multiplier(&chi([0, 1, 1, 0])).unwrap(), 1);
        assert_eq!(multiplier(&chi([0, 2, 2, 0])).unwrap(), 1);
        assert_eq!(multiplier(&chi([0, 1, 2, 0])).unwrap(), 2);
        assert_eq!(multiplier(&chi([0, 2, 1, 0])).unwrap(), 2);
        assert_eq!(multiplier(&chi([1, 1, 1, 1])).unwrap(), 3);
        assert_eq!(multiplier(&chi([2, 2, 2, 2])).unwrap(), 3);
        assert_eq!(multiplier(&chi([1, 1, 2, 1])).unwrap(), 4);
    }

    #[test]
    fn multiplier_rejects_wrong_shape() {
        let wrong_rank = Character::new(3, vec![1, 0, 0]).unwrap();
        assert!(matches!(
            multiplier(&wrong_rank),
            Err(Error::DimensionMismatch(_))
        ));
        let wrong_order = Character::new(5, vec![1, 0, 0, 0]).unwrap();
        assert!(matches!(
            multiplier(&wrong_order),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn multiplier_is_symmetric_and_nonnegative() {
        for chi in all_characters(3, 4) {
            let m = multiplier(&chi).unwrap();
            assert!(m >= 0, "negative multiplier at {chi}");
            assert_eq!(
                m,
                multiplier(&chi.negated()).unwrap(),
                "multiplier must be invariant under negation at {chi}"
            );
            // Zero multiplier exactly when a = d = 0 and the b, c terms
            // cancel against the fifth curve.
            let cancels = chi.value(0) == 0
                && chi.value(3) == 0
                && bar(chi.value(1), 3) + bar(chi.value(2), 3)
                    == bar(chi.value(1) + chi.value(2), 3);
            assert_eq!(m == 0, cancels, "zero-multiplier criterion at {chi}");
        }
    }

    #[test]
    fn satellite_spec_validation() {
        let j = corpus::right_trefoil();
        let dup = SatelliteSpec::new(
            corpus::genus_two_base(),
            3,
            vec![
                SatelliteCurve::new("L1", vec![1, 0, 0, 0], j.clone()),
                SatelliteCurve::new("L1", vec![0, 1, 0, 0], j.clone()),
            ],
        );
        assert!(matches!(dup, Err(Error::InvalidSatellite(_))));

        let ragged = SatelliteSpec::new(
            corpus::genus_two_base(),
            3,
            vec![
                SatelliteCurve::new("L1", vec![1, 0, 0, 0], j.clone()),
                SatelliteCurve::new("L2", vec![0, 1], j.clone()),
            ],
        );
        assert!(matches!(ragged, Err(Error::InvalidSatellite(_))));

        let out_of_range = SatelliteSpec::new(
            corpus::genus_two_base(),
            3,
            vec![SatelliteCurve::new("L1", vec![3, 0, 0, 0], j.clone())],
        );
        assert!(matches!(out_of_range, Err(Error::InvalidSatellite(_))));

        let empty = SatelliteSpec::new(corpus::genus_two_base(), 3, vec![]);
        assert!(matches!(empty, Err(Error::InvalidSatellite(_))));

        let spec = SatelliteSpec::genus_two_example(&j);
        assert_eq!(spec.p(), 3);
        assert_eq!(spec.curves().len(), 5);
        assert_eq!(spec.character_rank(), 4);
        assert_eq!(spec.curves()[4].functional(), &[0, 1, 1, 0]);
        // The fifth companion is the mirror.
        assert_eq!(
            spec.curves()[4].companion().matrix(),
            j.mirror().matrix()
        );
    }

    #[test]
    fn functional_evaluation() {
        let j = corpus::right_trefoil();
        let spec = SatelliteSpec::genus_two_example(&j);
        let x = chi([0, 1, 2, 0]);
        let values: Vec<u64> = spec.curves().iter().map(|c| c.evaluate(&x)).collect();
        assert_eq!(values, vec![0, 1, 2, 0, 0]);
        let y = chi([2, 1, 1, 2]);
        let values: Vec<u64> = spec.curves().iter().map(|c| c.evaluate(&y)).collect();
        assert_eq!(values, vec![2, 1, 1, 2, 2]);
    }

    #[test]
    fn satellite_obstruction_frozen_values() {
        // Right trefoil: sigma_{1/3} = sigma_{2/3} = -2, mirror flips signs.
        let spec = SatelliteSpec::genus_two_example(&corpus::right_trefoil());

        let zero = satellite_obstruction(&spec, &chi([0, 0, 0, 0])).unwrap();
        assert_eq!(zero.correction, 0);
        assert_eq!(
            zero.witness_angle_values,
            vec![
                ("L1".into(), 0),
                ("L2".into(), 0),
                ("L3".into(), 0),
                ("L4".into(), 0),
                ("L5".into(), 0)
            ]
        );

        // (0,1,1,0): curves contribute sigma_{1/3}(J) + sigma_{1/3}(J) on L2
        // and L3, and sigma_{2/3}(mirror J) = +2 on L5; total 2(-2-2+2) = -4.
        let mixed = satellite_obstruction(&spec, &chi([0, 1, 1, 0])).unwrap();
        assert_eq!(mixed.correction, -4);
        assert_eq!(
            mixed.witness_angle_values,
            vec![
                ("L1".into(), 0),
                ("L2".into(), 1),
                ("L3".into(), 1),
                ("L4".into(), 0),
                ("L5".into(), 2)
            ]
        );

        // A single coordinate gives exactly 2 * sigma_{1/3}(J).
        let single = satellite_obstruction(&spec, &chi([1, 0, 0, 0])).unwrap();
        assert_eq!(single.correction, -4);

        // Base term is symbolic only.
        assert!(mixed.base_term.contains("(0,1,1,0)"));

        let wrong = Character::new(5, vec![1, 0, 0, 0]).unwrap();
        assert!(matches!(
            satellite_obstruction(&spec, &wrong),
            Err(Error::InvalidCharacter(_))
        ));
    }

    #[test]
    fn reduction_identity_for_small_companions() {
        for j in [
            corpus::unknot(),
            corpus::right_trefoil(),
            corpus::left_trefoil(),
            corpus::figure_eight(),
            corpus::right_trefoil().connected_sum(&corpus::right_trefoil()),
        ] {
            assert!(
                reduction_identity_check(&j).unwrap(),
                "reduction identity failed for {:?}",
                j.label()
            );
        }
    }

    #[test]
    fn additivity_splits_all_three_invariants() {
        let angle = RationalAngle::new(1, 3).unwrap();
        let t = corpus::right_trefoil();
        assert!(additivity_check(&t, &t, &angle).unwrap());
        assert!(additivity_check(&t, &corpus::left_trefoil(), &angle).unwrap());
        assert!(additivity_check(&t, &corpus::unknot(), &angle).unwrap());
        assert!(additivity_check(&corpus::figure_eight(), &t, &angle).unwrap());
        let five = RationalAngle::new(2, 5).unwrap();
        assert!(additivity_check(&corpus::figure_eight(), &t, &five).unwrap());
    }

    #[test]
    fn verification_report_for_left_trefoil() {
        let report = verify_genus_two_example(&corpus::left_trefoil()).unwrap();
        assert_eq!(report.cover_factors, vec![3, 3, 3, 3]);
        assert_eq!(report.cover_order, 81);
        assert_eq!(report.sigma, 2);
        assert_eq!(report.witnesses.len(), 8);
        for w in &report.witnesses {
            assert!(w.multiplier >= 1);
            assert!(!w.witness.is_zero());
        }
        // Exactly one metabolizer triggers the annihilator argument: the one
        // spanned by the outer coordinates.
        let annihilator_cases: Vec<&MetabolizerWitness> = report
            .witnesses
            .iter()
            .filter(|w| w.annihilator_case)
            .collect();
        assert_eq!(annihilator_cases.len(), 1);
        let special = annihilator_cases[0];
        assert_eq!(special.basis, vec![vec![1, 0, 0, 0], vec![0, 0, 0, 1]]);
        // Its witness is the lex-least of the two multiplier-2 characters.
        assert_eq!(special.witness.values(), &[0, 1, 2, 0]);
        assert_eq!(special.multiplier, 2);

        // Exact bound checks: every witness has m >= 1, so 4m - C > 0 holds
        // at C = 0 and C = 1 but not at C = 10 for this small companion.
        let rat = |n: i64| BigRational::from(BigInt::from(n));
        assert!(report.check_sample_bound(&rat(0)));
        assert!(report.check_sample_bound(&rat(1)));
        assert!(!report.check_sample_bound(&rat(10)));
        assert!(report.hypothesis_met(&rat(3)));
        assert!(!report.hypothesis_met(&rat(4)));
    }

    #[test]
    fn verification_is_companion_independent() {
        // The witness structure depends only on the base; sigma changes.
        let unknot = verify_genus_two_example(&corpus::unknot()).unwrap();
        assert_eq!(unknot.sigma, 0);
        assert_eq!(unknot.witnesses.len(), 8);
        let right = verify_genus_two_example(&corpus::right_trefoil()).unwrap();
        assert_eq!(right.sigma, -2);
        let left = verify_genus_two_example(&corpus::left_trefoil()).unwrap();
        for (a, b) in left.witnesses.iter().zip(right.witnesses.iter()) {
            assert_eq!(a.basis, b.basis);
            assert_eq!(a.witness, b.witness);
            assert_eq!(a.multiplier, b.multiplier);
        }
        // A wrong-signed companion never clears a positive bound.
        assert!(!right.check_sample_bound(&BigRational::from(BigInt::from(0))));
    }

    #[test]
    fn suggested_companions_clear_their_bounds() {
        let rat = |s: &str| s.parse::<BigRational>().unwrap();
        let angle = RationalAngle::new(1, 3).unwrap();

        for (c, expected_genus, expected_sigma) in
            [("0", 1, 2), ("1", 2, 4), ("10", 4, 8), ("7/2", 2, 4)]
        {
            let c = rat(c);
            let j = suggest_companion(&c).unwrap();
            assert_eq!(j.genus(), expected_genus, "genus at C = {c}");
            let sigma = tristram_levine(&j, &angle).unwrap().value;
            assert_eq!(sigma, expected_sigma, "sigma at C = {c}");
            // The defining inequality, in exact arithmetic.
            let two_sigma = BigRational::from(BigInt::from(2 * sigma));
            assert!(two_sigma > c, "2 sigma > C must hold at C = {c}");
        }

        assert!(matches!(
            suggest_companion(&rat("-1")),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            suggest_companion(&rat("100000")),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn suggested_companion_verifies_end_to_end() {
        let c = BigRational::from(BigInt::from(10));
        let j = suggest_companion(&c).unwrap();
        let report = verify_genus_two_example(&j).unwrap();
        assert_eq!(report.sigma, 8);
        assert!(report.hypothesis_met(&c));
        assert!(report.check_sample_bound(&c));
    }
}
