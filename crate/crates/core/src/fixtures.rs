//! Built-in algebras and modules used by the test suites and the
//! `paper-examples` command.

use crate::error::Result;
use crate::field::{Matrix, Scalar};
use crate::quiver::{build_algebra, parse_quiver_file, Algebra, Quiver, DEFAULT_MAX_LEN};
use crate::rep::{self, from_projective, Morphism, Representation};

/// Three vertices, three arrows `2 -> 1` and three arrows `3 -> 2`, with
/// `a_i b_i = 0` and three signed commutativity relations.
pub const ALG_A: &str = "\
# counterexample to additivity: r(P(2)^2, P(3)^2) = 8 > 2 r(P(2), P(3))
vertices: 1 2 3
arrow a1: 2 -> 1
arrow a2: 2 -> 1
arrow a3: 2 -> 1
arrow b1: 3 -> 2
arrow b2: 3 -> 2
arrow b3: 3 -> 2
relations:
a1*b1
a2*b2
a3*b3
a1*b2 - a2*b1
a1*b3 + a3*b1
a2*b3 - a3*b2
";

/// `1 <-a- 2 <-b- 3` with `ab = 0`.
pub const ALG_B: &str = "\
vertices: 1 2 3
arrow a: 2 -> 1
arrow b: 3 -> 2
relations:
a*b
";

/// The hereditary path algebra of `1 <-a- 2 <-b- 3`.
pub const ALG_B0: &str = "\
vertices: 1 2 3
arrow a: 2 -> 1
arrow b: 3 -> 2
";

/// `a: 1 -> 2` and two arrows `2 -> 1`, radical square zero.
pub const ALG_C: &str = "\
vertices: 1 2
arrow a: 1 -> 2
arrow c1: 2 -> 1
arrow c2: 2 -> 1
relations:
c1*a
c2*a
a*c1
a*c2
";

/// The Kronecker quiver, two arrows `2 -> 1`.
pub const ALG_K: &str = "\
vertices: 1 2
arrow x1: 2 -> 1
arrow x2: 2 -> 1
";

pub const ALL_SOURCES: [&str; 5] = [ALG_A, ALG_B, ALG_B0, ALG_C, ALG_K];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Fixture {
    AlgA,
    AlgB,
    AlgB0,
    AlgC,
    AlgK,
}

impl Fixture {
    pub const ALL: [Fixture; 5] = [Fixture::AlgA, Fixture::AlgB, Fixture::AlgB0, Fixture::AlgC, Fixture::AlgK];

    pub fn name(self) -> &'static str {
        match self {
            Fixture::AlgA => "ALG-A",
            Fixture::AlgB => "ALG-B",
            Fixture::AlgB0 => "ALG-B0",
            Fixture::AlgC => "ALG-C",
            Fixture::AlgK => "ALG-K",
        }
    }

    /// Looks a fixture up by name, ignoring case (`alg-a`, `ALG-B0`, ...).
    pub fn from_name(name: &str) -> Option<Fixture> {
        Fixture::ALL.into_iter().find(|f| f.name().eq_ignore_ascii_case(name))
    }

    pub fn source(self) -> &'static str {
        match self {
            Fixture::AlgA => ALG_A,
            Fixture::AlgB => ALG_B,
            Fixture::AlgB0 => ALG_B0,
            Fixture::AlgC => ALG_C,
            Fixture::AlgK => ALG_K,
        }
    }

    pub fn quiver(self) -> Quiver {
        parse_quiver_file(self.source()).expect("embedded fixture parses").0
    }

    pub fn algebra<F: Scalar>(self) -> Result<Algebra<F>> {
        let (q, r) = parse_quiver_file(self.source())?;
        build_algebra(&q, &r, DEFAULT_MAX_LEN)
    }

    /// The semisimple algebra on `n` vertices.
    pub fn semisimple<F: Scalar>(n: usize) -> Algebra<F> {
        let labels: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let src = format!("vertices: {}\n", labels.join(" "));
        let (q, r) = parse_quiver_file(&src).expect("semisimple source");
        build_algebra(&q, &r, DEFAULT_MAX_LEN).expect("semisimple algebra")
    }
}

/// Over ALG-A: `f^(λ): P(2) -> P(3)` with `e_2 ↦ λ1 b1 + λ2 b2 + λ3 b3`.
pub fn alg_a_f<F: Scalar>(alg: &Algebra<F>, lambda: [i64; 3]) -> Morphism<F> {
    let p3 = rep::projective(alg, 2);
    let slots = alg.basis_between(2, 1);
    let mut gen = vec![F::zero(); slots.len()];
    for (k, name) in ["b1", "b2", "b3"].iter().enumerate() {
        let arrow = alg.arrow_index(name).expect("ALG-A arrow");
        let pos = slots.iter().position(|&i| alg.basis()[i].word == [arrow]).expect("b_k in P(3)");
        gen[pos] = F::from_i64(lambda[k]);
    }
    from_projective(alg, 1, &p3, &gen)
}

/// Over ALG-A: `M = Cok f^(1,0,0)`.
pub fn alg_a_module<F: Scalar>(alg: &Algebra<F>) -> Representation<F> {
    rep::cokernel(alg, &alg_a_f(alg, [1, 0, 0])).0
}

/// Over ALG-A: the morphism `P(2)^2 -> P(3)^2` with blocks
/// `[[f^(1,0,0), f^(0,1,0)], [f^(0,1,0), f^(0,0,1)]]`.
pub fn alg_a_g<F: Scalar>(alg: &Algebra<F>) -> Morphism<F> {
    let f = |l| alg_a_f(alg, l);
    let blocks = [[f([1, 0, 0]), f([0, 1, 0])], [f([0, 1, 0]), f([0, 0, 1])]];
    let p2 = rep::projective(alg, 1);
    let p3 = rep::projective(alg, 2);
    let source = rep::power(alg, &p2, 2);
    let target = rep::power(alg, &p3, 2);
    let maps = (0..alg.num_vertices())
        .map(|v| {
            let (r, c) = (p3.dim(v), p2.dim(v));
            let mut m = Matrix::zeros(2 * r, 2 * c);
            for (i, row) in blocks.iter().enumerate() {
                for (j, b) in row.iter().enumerate() {
                    // block (i, j) maps source copy j to target copy i
                    m.set_block(i * r, j * c, b.map(v));
                }
            }
            m
        })
        .collect();
    Morphism::from_parts(source, target, maps)
}

/// Over ALG-B or ALG-B0: `S(2) ⊕ S(3)`.
pub fn s2_s3<F: Scalar>(alg: &Algebra<F>) -> Representation<F> {
    rep::direct_sum(alg, &[rep::simple(alg, 1), rep::simple(alg, 2)])
}

/// Over ALG-B0: `P(2) ⊕ I(2) ⊕ S(3)`.
pub fn b0_module<F: Scalar>(alg: &Algebra<F>) -> Representation<F> {
    rep::direct_sum(alg, &[rep::projective(alg, 1), rep::injective(alg, 1), rep::simple(alg, 2)])
}

/// Over ALG-C: `S(1) ⊕ S(2)`.
pub fn c_module<F: Scalar>(alg: &Algebra<F>) -> Representation<F> {
    rep::direct_sum(alg, &[rep::simple(alg, 0), rep::simple(alg, 1)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Q;

    #[test]
    fn alg_a_family() {
        let a = Fixture::AlgA.algebra::<Q>().unwrap();
        let f = alg_a_f(&a, [1, 0, 0]);
        assert!(f.intertwines(&a));
        assert_eq!(f.rank(), 3);
        assert_eq!(alg_a_module(&a).dims(), &[1, 2, 1]);
        let g = alg_a_g(&a);
        assert!(g.intertwines(&a));
        assert_eq!(g.rank(), 8);
    }
}
