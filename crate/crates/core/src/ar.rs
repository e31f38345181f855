//! Auslander–Reiten translate, E-invariants, τ-rigidity and τ-regularity,
//! the module hierarchy and reduction to quotient algebras.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::present::{generic_rank, min_presentation, Certificate, TwoComplex};
use crate::quiver::{annihilator, quotient_algebra, Algebra, Ideal};
use crate::rep::{
    act, ext1_dim, hom_dim, is_faithful, kernel, proj_dim, stable_hom_dim_inj, syzygy, Morphism, ProjDim, Representation,
};

/// `ν(f): ν P_1 -> ν P_0`. The entry matrix of `f` gives the map of
/// opposite-algebra projectives `Hom_A(f, A)`; dualizing lands in
/// injectives, `ν P(i) = I(i)`.
pub fn nakayama_complex<F: Scalar>(alg: &Algebra<F>, c: &TwoComplex<F>) -> Morphism<F> {
    let entries = c.entries(alg);
    let (n1, n0) = (c.p1.summands().len(), c.p0.summands().len());
    let transposed: Vec<Vec<_>> = (0..n0).map(|l| (0..n1).map(|k| entries[k][l].clone()).collect()).collect();
    let op = TwoComplex::from_entries(alg.op(), c.p0.clone(), c.p1.clone(), &transposed);
    op.map.dual()
}

/// `τ M = ker ν(f)` for the minimal presentation `f` of `M`.
pub fn tau<F: Scalar>(alg: &Algebra<F>, m: &Representation<F>) -> Representation<F> {
    let c = min_presentation(alg, m);
    let (t, _) = kernel(alg, &nakayama_complex(alg, &c));
    assert_eq!(t.is_zero(), c.p1.is_zero(), "τM = 0 must coincide with M projective");
    t
}

/// `τ⁻ M = D τ_{A^op} D M`.
pub fn tau_minus<F: Scalar>(alg: &Algebra<F>, m: &Representation<F>) -> Representation<F> {
    tau(alg.op(), &m.dual()).dual()
}

/// `E(M, N) = dim Hom(N, τM)`.
pub fn e_invariant<F: Scalar>(alg: &Algebra<F>, m: &Representation<F>, n: &Representation<F>) -> usize {
    hom_dim(alg, n, &tau(alg, m))
}

/// `E(M) = dim Hom(M, τM)`.
pub fn e_invariant_self<F: Scalar>(alg: &Algebra<F>, m: &Representation<F>) -> usize {
    e_invariant(alg, m, m)
}

/// `e(M) = dim Ext^1(M, M)`.
pub fn self_extension<F: Scalar>(alg: &Algebra<F>, m: &Representation<F>) -> usize {
    ext1_dim(alg, m, m)
}

pub fn is_tau_rigid<F: Scalar>(alg: &Algebra<F>, m: &Representation<F>) -> bool {
    e_invariant_self(alg, m) == 0
}

/// Both sides of `Ext^1(M, N) ≅ D Hom̄(N, τM)`.
pub fn ar_formula_sides<F: Scalar>(alg: &Algebra<F>, m: &Representation<F>, n: &Representation<F>) -> (usize, usize) {
    (ext1_dim(alg, m, n), stable_hom_dim_inj(alg, n, &tau(alg, m)))
}

pub fn ar_formula_check<F: Scalar>(alg: &Algebra<F>, m: &Representation<F>, n: &Representation<F>) -> bool {
    let (l, r) = ar_formula_sides(alg, m, n);
    l == r
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    CertifiedYes,
    CertifiedNo,
    ProbableYes,
}

impl std::fmt::Display for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Outcome::CertifiedYes => "certified-yes",
            Outcome::CertifiedNo => "certified-no",
            Outcome::ProbableYes => "probable-yes",
        })
    }
}

/// A τ-regularity decision. `certified-no` always comes with a witness of
/// rank `witness_rank` exceeding `presentation_rank`.
#[derive(Clone, Debug, Serialize)]
#[serde(bound = "")]
pub struct Verdict<F> {
    pub outcome: Outcome,
    pub witness_rank: usize,
    pub generic_rank: usize,
    pub certified: bool,
    pub presentation_rank: usize,
    pub certificates: Vec<Option<Certificate>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip)]
    pub witness: Option<TwoComplex<F>>,
}

impl<F> Verdict<F> {
    pub fn is_yes(&self) -> bool {
        self.outcome != Outcome::CertifiedNo
    }
}

/// Compares the rank of the minimal presentation with `r(P_1, P_0)`; the
/// presentation itself is always among the samples.
pub fn is_tau_regular<F: Scalar>(alg: &Algebra<F>, m: &Representation<F>, trials: usize, seed: u64) -> Verdict<F> {
    let c = min_presentation(alg, m);
    let rank = c.rank();
    let g = generic_rank(alg, &c.p1, &c.p0, trials, seed, std::slice::from_ref(&c.map));
    let (outcome, note) = if rank < g.value {
        (Outcome::CertifiedNo, None)
    } else if g.certified {
        (Outcome::CertifiedYes, None)
    } else {
        let note = format!(
            "no certificate: {} random draws over {} parameters found no larger rank",
            trials, g.params
        );
        (Outcome::ProbableYes, Some(note))
    };
    let witness = (outcome == Outcome::CertifiedNo).then(|| g.witness.clone());
    Verdict {
        outcome,
        witness_rank: g.value,
        generic_rank: g.value,
        certified: g.certified || outcome == Outcome::CertifiedNo,
        presentation_rank: rank,
        certificates: g.certificates,
        note,
        witness,
    }
}

/// Membership flags for the classes of the hierarchy.
#[derive(Clone, Debug, Serialize)]
#[serde(bound = "")]
pub struct HierarchyReport<F> {
    pub projective: bool,
    pub pd_at_most_one: bool,
    pub rigid: bool,
    pub tau_rigid: bool,
    pub partial_tilting: bool,
    pub tau_regular: Verdict<F>,
}

impl<F> HierarchyReport<F> {
    /// Implication edges that fail.
    pub fn violated_edges(&self) -> Vec<&'static str> {
        let reg = self.tau_regular.is_yes();
        let mut out = Vec::new();
        if self.projective && !self.partial_tilting {
            out.push("projective => partial tilting");
        }
        if self.partial_tilting && !(self.pd_at_most_one && self.tau_rigid) {
            out.push("partial tilting => pd <= 1 and tau-rigid");
        }
        if self.pd_at_most_one && !reg {
            out.push("pd <= 1 => tau-regular");
        }
        if self.tau_rigid && !(reg && self.rigid) {
            out.push("tau-rigid => tau-regular and rigid");
        }
        out
    }
}

pub fn hierarchy_report<F: Scalar>(
    alg: &Algebra<F>,
    m: &Representation<F>,
    trials: usize,
    seed: u64,
) -> Result<HierarchyReport<F>> {
    let (omega, _) = syzygy(alg, m);
    let projective = omega.is_zero();
    let pd_at_most_one = syzygy(alg, &omega).0.is_zero();
    let rigid = self_extension(alg, m) == 0;
    let report = HierarchyReport {
        projective,
        pd_at_most_one,
        rigid,
        tau_rigid: is_tau_rigid(alg, m),
        partial_tilting: rigid && pd_at_most_one,
        tau_regular: is_tau_regular(alg, m, trials, seed),
    };
    let bad = report.violated_edges();
    if !bad.is_empty() {
        return Err(Error::Internal(format!("hierarchy edges violated: {}", bad.join(", "))));
    }
    Ok(report)
}

/// Which ideal to reduce by.
#[derive(Clone, Debug)]
pub enum ReductionMode<F> {
    Annihilator,
    Ideal(Ideal<F>),
}

/// Invariants of `M` over `A` and over `B = A/I`.
#[derive(Clone, Debug, Serialize)]
#[serde(bound = "")]
pub struct ReductionReport<F> {
    pub ideal_dim: usize,
    pub quotient_dim: usize,
    pub quotient_vertices: Vec<String>,
    pub quotient_arrows: Vec<String>,
    pub faithful_over_quotient: bool,
    pub pd_a: ProjDim,
    pub pd_b: ProjDim,
    pub e_a: usize,
    pub e_b: usize,
    pub big_e_a: usize,
    pub big_e_b: usize,
    pub tau_rigid_a: bool,
    pub tau_rigid_b: bool,
    pub tau_regular_a: Verdict<F>,
    pub tau_regular_b: Verdict<F>,
    /// `e_B <= e_A` and `E_B <= E_A`.
    pub inequalities_hold: bool,
    #[serde(skip)]
    pub quotient: Algebra<F>,
    #[serde(skip)]
    pub module_b: Representation<F>,
}

/// `M` as a module over `A/I`.
pub fn transport<F: Scalar>(
    alg: &Algebra<F>,
    m: &Representation<F>,
    ideal: &Ideal<F>,
) -> Result<(Algebra<F>, Representation<F>)> {
    for x in ideal.basis() {
        if !act(alg, &x, m).is_zero() {
            return Err(Error::NotAnnihilating);
        }
    }
    let (b, q) = quotient_algebra(alg, ideal)?;
    let mut dims = vec![0; b.num_vertices()];
    for (v, image) in q.vertex_map.iter().enumerate() {
        match image {
            Some(w) => dims[*w] = m.dim(v),
            None if m.dim(v) > 0 => return Err(Error::NotAnnihilating),
            None => {}
        }
    }
    let mut maps = vec![None; b.arrows().len()];
    for (a, image) in q.arrow_map.iter().enumerate() {
        if let Some(k) = image {
            maps[*k] = Some(m.map(a).clone());
        }
    }
    let maps = maps.into_iter().map(|x| x.ok_or_else(|| Error::Internal("quotient arrow without origin".into()))).collect::<Result<_>>()?;
    let mb = Representation::new(&b, dims, maps)?;
    Ok((b, mb))
}

pub fn reduce_and_compare<F: Scalar>(
    alg: &Algebra<F>,
    m: &Representation<F>,
    mode: &ReductionMode<F>,
    trials: usize,
    seed: u64,
    cap: usize,
) -> Result<ReductionReport<F>> {
    let ideal = match mode {
        ReductionMode::Annihilator => annihilator(alg, m),
        ReductionMode::Ideal(i) => i.clone(),
    };
    let (b, mb) = transport(alg, m, &ideal)?;
    let (e_a, e_b) = (self_extension(alg, m), self_extension(&b, &mb));
    let (big_e_a, big_e_b) = (e_invariant_self(alg, m), e_invariant_self(&b, &mb));
    Ok(ReductionReport {
        ideal_dim: ideal.dim(),
        quotient_dim: b.dim(),
        quotient_vertices: b.vertex_labels().to_vec(),
        quotient_arrows: b.arrows().iter().map(|a| a.name.clone()).collect(),
        faithful_over_quotient: is_faithful(&b, &mb),
        pd_a: proj_dim(alg, m, cap),
        pd_b: proj_dim(&b, &mb, cap),
        e_a,
        e_b,
        big_e_a,
        big_e_b,
        tau_rigid_a: big_e_a == 0,
        tau_rigid_b: big_e_b == 0,
        tau_regular_a: is_tau_regular(alg, m, trials, seed),
        tau_regular_b: is_tau_regular(&b, &mb, trials, seed),
        inequalities_hold: e_b <= e_a && big_e_b <= big_e_a,
        quotient: b,
        module_b: mb,
    })
}
