//! Joint distributions, expectation values and the CHSH statistic.
//!
//! The statistic is always combined as
//! `S = E(A'B') + E(A'B) + E(AB') - E(AB)`.

use alloc::format;

use crate::counts::{CoincidenceCounts, CoincidenceSet};
use crate::error::{Error, Result};

const PROB_TOL: f64 = 1e-9;
const EXPECTATION_TOL: f64 = 1e-12;

/// Largest `|S|` reachable by a quantum state.
pub const TSIRELSON_BOUND: f64 = 2.0 * core::f64::consts::SQRT_2;

/// `P(A_i, B_j)` for the four outcome pairs of one coincidence experiment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointDistribution {
    p11: f64,
    p12: f64,
    p21: f64,
    p22: f64,
}

impl JointDistribution {
    pub fn new(p11: f64, p12: f64, p21: f64, p22: f64) -> Result<Self> {
        let cells = [p11, p12, p21, p22];
        if cells.iter().any(|p| !(0.0..=1.0).contains(p)) {
            return Err(Error::data(format!(
                "joint probabilities must lie in [0, 1], got {cells:?}"
            )));
        }
        let sum: f64 = cells.iter().sum();
        if (sum - 1.0).abs() > PROB_TOL {
            return Err(Error::data(format!(
                "joint probabilities sum to {sum}, expected 1"
            )));
        }
        Ok(Self { p11, p12, p21, p22 })
    }

    /// Each page (or answer) is drawn with equal probability: `p_ij = n_ij / total`.
    pub fn from_counts(c: &CoincidenceCounts) -> Result<Self> {
        let total = c.total();
        if total == 0 {
            return Err(Error::degenerate("coincidence counts sum to zero"));
        }
        let t = total as f64;
        Ok(Self {
            p11: c.n11 as f64 / t,
            p12: c.n12 as f64 / t,
            p21: c.n21 as f64 / t,
            p22: c.n22 as f64 / t,
        })
    }

    /// Separated sources: `p_ij = a_i * b_j`.
    pub fn product(a: &MarginalPair, b: &MarginalPair) -> Self {
        Self {
            p11: a.p1 * b.p1,
            p12: a.p1 * b.p2,
            p21: a.p2 * b.p1,
            p22: a.p2 * b.p2,
        }
    }

    pub fn p11(&self) -> f64 {
        self.p11
    }

    pub fn p12(&self) -> f64 {
        self.p12
    }

    pub fn p21(&self) -> f64 {
        self.p21
    }

    pub fn p22(&self) -> f64 {
        self.p22
    }

    /// `E = P11 + P22 - P21 - P12`, clamped to `[-1, 1]` against rounding.
    pub fn expectation(&self) -> f64 {
        (self.p11 + self.p22 - self.p21 - self.p12).clamp(-1.0, 1.0)
    }
}

/// Probabilities of the two outcomes of a single experiment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MarginalPair {
    p1: f64,
    p2: f64,
}

impl MarginalPair {
    pub fn new(p1: f64, p2: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p1) || !(0.0..=1.0).contains(&p2) {
            return Err(Error::data(format!(
                "marginal probabilities must lie in [0, 1], got ({p1}, {p2})"
            )));
        }
        if (p1 + p2 - 1.0).abs() > PROB_TOL {
            return Err(Error::data(format!(
                "marginal probabilities sum to {}, expected 1",
                p1 + p2
            )));
        }
        Ok(Self { p1, p2 })
    }

    /// From page counts of the two outcomes, e.g. pages with `cat` and with `cow`.
    pub fn from_counts(n1: u64, n2: u64) -> Result<Self> {
        let total = u128::from(n1) + u128::from(n2);
        if total == 0 {
            return Err(Error::degenerate("marginal counts sum to zero"));
        }
        let t = total as f64;
        Ok(Self {
            p1: n1 as f64 / t,
            p2: n2 as f64 / t,
        })
    }

    pub fn p1(&self) -> f64 {
        self.p1
    }

    pub fn p2(&self) -> f64 {
        self.p2
    }

    /// `p1 - p2`, the single-experiment expectation.
    pub fn expectation(&self) -> f64 {
        self.p1 - self.p2
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    /// `|S| <= 2`.
    Satisfies,
    /// `2 < |S| <= 2√2`.
    QuantumViolation,
    /// `|S| > 2√2`.
    Superquantum,
}

impl Classification {
    pub fn of(s: f64) -> Self {
        let a = s.abs();
        if a <= 2.0 {
            Classification::Satisfies
        } else if a <= TSIRELSON_BOUND {
            Classification::QuantumViolation
        } else {
            Classification::Superquantum
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Classification::Satisfies => "satisfies",
            Classification::QuantumViolation => "quantum_violation",
            Classification::Superquantum => "superquantum",
        }
    }
}

impl core::fmt::Display for Classification {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChshResult {
    pub e_ab: f64,
    pub e_apb: f64,
    pub e_abp: f64,
    pub e_apbp: f64,
    pub s: f64,
    pub classification: Classification,
}

/// Combines four expectation values into the CHSH statistic.
pub fn chsh(e_ab: f64, e_apb: f64, e_abp: f64, e_apbp: f64) -> Result<ChshResult> {
    for (name, e) in [
        ("E(AB)", e_ab),
        ("E(A'B)", e_apb),
        ("E(AB')", e_abp),
        ("E(A'B')", e_apbp),
    ] {
        if !(e.abs() <= 1.0 + EXPECTATION_TOL) {
            return Err(Error::data(format!("{name} = {e} lies outside [-1, 1]")));
        }
    }
    let s = e_apbp + e_apb + e_abp - e_ab;
    Ok(ChshResult {
        e_ab,
        e_apb,
        e_abp,
        e_apbp,
        s,
        classification: Classification::of(s),
    })
}

/// Counts → joint distributions → expectations → CHSH.
pub fn chsh_from_set(set: &CoincidenceSet) -> Result<ChshResult> {
    let e = |c: &CoincidenceCounts| JointDistribution::from_counts(c).map(|j| j.expectation());
    chsh(e(&set.ab)?, e(&set.apb)?, e(&set.abp)?, e(&set.apbp)?)
}

/// Marginals of the four single experiments of a separated-sources model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProductModel {
    pub a: MarginalPair,
    pub a_prime: MarginalPair,
    pub b: MarginalPair,
    pub b_prime: MarginalPair,
}

impl ProductModel {
    /// CHSH over the product joints. Always satisfies `|S| <= 2`.
    pub fn chsh(&self) -> ChshResult {
        let e = |x: &MarginalPair, y: &MarginalPair| JointDistribution::product(x, y).expectation();
        // expectations of product joints are within [-1, 1] by construction
        chsh(
            e(&self.a, &self.b),
            e(&self.a_prime, &self.b),
            e(&self.a, &self.b_prime),
            e(&self.a_prime, &self.b_prime),
        )
        .expect("product expectations are bounded")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn joint_from_phrase_counts() {
        let j =
            JointDistribution::from_counts(&CoincidenceCounts::new(1550, 457, 4240, 125).unwrap())
                .unwrap();
        assert!(close(j.p11(), 0.2433, 5e-5));
        assert!(close(j.p12(), 0.0717, 5e-5));
        assert!(close(j.p21(), 0.6654, 5e-5));
        assert!(close(j.p22(), 0.0196, 5e-5));
        assert!(close(j.expectation(), -0.4743, 1e-4));
    }

    #[test]
    fn joint_trivial_cases() {
        let j =
            JointDistribution::from_counts(&CoincidenceCounts::new(1, 0, 0, 0).unwrap()).unwrap();
        assert_eq!((j.p11(), j.p12(), j.p21(), j.p22()), (1.0, 0.0, 0.0, 0.0));
        let j =
            JointDistribution::from_counts(&CoincidenceCounts::new(1, 1, 1, 1).unwrap()).unwrap();
        assert_eq!(
            (j.p11(), j.p12(), j.p21(), j.p22()),
            (0.25, 0.25, 0.25, 0.25)
        );
        let zero = CoincidenceCounts {
            n11: 0,
            n12: 0,
            n21: 0,
            n22: 0,
        };
        assert!(matches!(
            JointDistribution::from_counts(&zero),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn expectation_examples() {
        let j = JointDistribution::new(0.2433, 0.0717, 0.6654, 0.0196).unwrap();
        assert!(close(j.expectation(), -0.4743, 1e-4));
        let j = JointDistribution::new(0.5, 0.0, 0.0, 0.5).unwrap();
        assert_eq!(j.expectation(), 1.0);
        // the published rounded cells sum to 0.9999, so go through the counts
        let j = JointDistribution::from_counts(&CoincidenceCounts::new(768, 6, 0, 36).unwrap())
            .unwrap();
        assert!(close(j.p11(), 0.9481, 5e-5) && close(j.p22(), 0.0444, 5e-5));
        assert!(close(j.expectation(), 0.9852, 1e-4));
        assert!(JointDistribution::new(0.9481, 0.0074, 0.0, 0.0444).is_err());
    }

    #[test]
    fn joint_rejects_bad_probabilities() {
        assert!(JointDistribution::new(0.5, 0.5, 0.5, 0.0).is_err());
        assert!(JointDistribution::new(-0.1, 0.6, 0.5, 0.0).is_err());
    }

    #[test]
    fn chsh_examples() {
        let r = chsh(-0.4743, 0.9852, 0.4523, 0.9497).unwrap();
        assert!(close(r.s, 2.8615, 2e-4));
        assert_ne!(r.classification, Classification::Satisfies);

        let r = chsh(-1.0, 1.0, 1.0, 1.0).unwrap();
        assert_eq!(r.s, 4.0);
        assert_eq!(r.classification, Classification::Superquantum);

        let r = chsh(-0.8269, 0.4516, 0.5095, 0.2803).unwrap();
        assert!(close(r.s, 2.0683, 2e-4));
        assert_eq!(r.classification, Classification::QuantumViolation);

        let r = chsh(0.0, 0.0, 0.0, 0.0).unwrap();
        assert_eq!(r.s, 0.0);
        assert_eq!(r.classification, Classification::Satisfies);
    }

    #[test]
    fn chsh_rejects_out_of_range() {
        assert!(matches!(chsh(1.5, 0.0, 0.0, 0.0), Err(Error::Data(_))));
        assert!(chsh(f64::NAN, 0.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn classification_bands_are_closed_below() {
        assert_eq!(Classification::of(2.0), Classification::Satisfies);
        assert_eq!(Classification::of(-2.0), Classification::Satisfies);
        assert_eq!(
            Classification::of(TSIRELSON_BOUND),
            Classification::QuantumViolation
        );
        assert_eq!(
            Classification::of(-TSIRELSON_BOUND),
            Classification::QuantumViolation
        );
        assert_eq!(Classification::of(2.83), Classification::Superquantum);
    }

    #[test]
    fn product_joint_examples() {
        let a = MarginalPair::new(0.5897, 0.4103).unwrap();
        let b = MarginalPair::new(0.4393, 0.5607).unwrap();
        assert!(close(
            JointDistribution::product(&a, &b).p11(),
            0.2591,
            1e-4
        ));

        let a = MarginalPair::new(1.0, 0.0).unwrap();
        let b = MarginalPair::new(0.0, 1.0).unwrap();
        let j = JointDistribution::product(&a, &b);
        assert_eq!((j.p11(), j.p12(), j.p21(), j.p22()), (0.0, 1.0, 0.0, 0.0));
    }

    #[test]
    fn separated_sources_pipeline() {
        let m = ProductModel {
            a: MarginalPair::from_counts(98_000_000, 68_200_000).unwrap(),
            a_prime: MarginalPair::from_counts(227_000_000, 28_200_000).unwrap(),
            b: MarginalPair::from_counts(90_900_000, 116_000_000).unwrap(),
            b_prime: MarginalPair::from_counts(291_000_000, 60_500_000).unwrap(),
        };
        let r = m.chsh();
        assert!(close(r.s, 0.5557, 1e-3));
        assert_eq!(r.classification, Classification::Satisfies);
    }

    #[test]
    fn set_boundary_case() {
        let c = CoincidenceCounts::new(1, 0, 0, 1).unwrap();
        let set = CoincidenceSet {
            ab: c,
            apb: c,
            abp: c,
            apbp: c,
        };
        let r = chsh_from_set(&set).unwrap();
        assert_eq!(r.s, 2.0);
        assert_eq!(r.classification, Classification::Satisfies);
    }

    fn marginal() -> impl Strategy<Value = MarginalPair> {
        (0.0f64..=1.0).prop_map(|p| MarginalPair::new(p, 1.0 - p).unwrap())
    }

    proptest! {
        #[test]
        fn product_expectation_factorizes(a in marginal(), b in marginal()) {
            let e = JointDistribution::product(&a, &b).expectation();
            prop_assert!((e - a.expectation() * b.expectation()).abs() < 1e-12);
        }

        #[test]
        fn product_models_never_violate(a in marginal(), ap in marginal(), b in marginal(), bp in marginal()) {
            let r = ProductModel { a, a_prime: ap, b, b_prime: bp }.chsh();
            prop_assert!(r.s.abs() <= 2.0 + 1e-12);
        }

        #[test]
        fn relabeling_left_outcome_flips_sign(
            cells in prop::array::uniform4(0u64..10_000)
        ) {
            prop_assume!(cells.iter().any(|&c| c > 0));
            let [a, b, c, d] = cells;
            let j = JointDistribution::from_counts(&CoincidenceCounts::new(a, b, c, d).unwrap()).unwrap();
            let swapped = JointDistribution::from_counts(&CoincidenceCounts::new(b, a, d, c).unwrap()).unwrap();
            prop_assert!((j.expectation() + swapped.expectation()).abs() < 1e-12);
        }

        #[test]
        fn chsh_is_bounded_by_four(e in prop::array::uniform4(-1.0f64..=1.0)) {
            let r = chsh(e[0], e[1], e[2], e[3]).unwrap();
            prop_assert!(r.s.abs() <= 4.0);
            prop_assert!((r.s - (e[3] + e[1] + e[2] - e[0])).abs() <= 1e-12);
        }
    }
}
