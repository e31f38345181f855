//! Quivers with relations and the finite-dimensional algebras they present.

mod algebra;
mod dsl;
mod ideal;

pub use algebra::{build_algebra, Algebra, Arrow, BasisElement, Element, DEFAULT_MAX_LEN};
pub use dsl::parse_quiver_file;
pub use ideal::{annihilator, parse_ideal, quotient_algebra, Ideal, QuotientMap};

use num_rational::BigRational;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowSpec {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A quiver with vertices in declaration order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowSpec>,
}

impl Quiver {
    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }
}

/// A linear combination of parallel paths. Each path is a list of arrow
/// indices, outermost first: `[a, b]` is `a*b`, "first b, then a".
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationPoly {
    pub terms: Vec<(BigRational, Vec<usize>)>,
}

impl RelationPoly {
    pub(crate) fn validate(&self, quiver: &Quiver, line: usize) -> Result<()> {
        let Some((_, first)) = self.terms.first() else {
            return Err(Error::BadRelation { line, message: "empty relation".into() });
        };
        let ends = |w: &[usize]| (quiver.arrows[w[w.len() - 1]].source, quiver.arrows[w[0]].target);
        let e0 = ends(first);
        for (_, w) in &self.terms {
            if ends(w) != e0 {
                return Err(Error::NonParallel { line });
            }
        }
        for (_, w) in &self.terms {
            if w.len() < 2 {
                return Err(Error::BadRelation { line, message: "relation paths must have length at least 2".into() });
            }
        }
        if self.terms.iter().any(|(_, w)| w.len() != first.len()) {
            return Err(Error::BadRelation { line, message: "relation mixes paths of different lengths".into() });
        }
        Ok(())
    }

    pub fn source(&self, quiver: &Quiver) -> usize {
        let w = &self.terms[0].1;
        quiver.arrows[w[w.len() - 1]].source
    }

    pub fn target(&self, quiver: &Quiver) -> usize {
        quiver.arrows[self.terms[0].1[0]].target
    }

    pub fn len(&self) -> usize {
        self.terms[0].1.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}
