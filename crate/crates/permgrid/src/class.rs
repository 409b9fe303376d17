//! The expression algebra of permutation classes: avoidance classes, merges,
//! grid classes, finite downsets, sum/skew closures, and intersections.
//!
//! Every expression denotes a downward-closed set of permutations. The
//! canonical printed form (via `Display`) doubles as the identity used for
//! membership caching, so two structurally equal expressions share cache
//! entries.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::grid::GridMatrix;
use crate::perm::Permutation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassError {
    #[error("basis is not an antichain: {0} is contained in {1}")]
    NotAntichain(Permutation, Permutation),
    #[error("intersection requires at least one operand")]
    EmptyIntersection,
    #[error("grid matrix must have at least one row and one column")]
    DegenerateGrid,
    #[error("grid rows must all have the same length")]
    RaggedGrid,
}

/// A permutation-class expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassExpr {
    /// Permutations avoiding every basis element. The basis is stored as a
    /// sorted antichain; `Avoid([])` is the class of all permutations.
    Avoid(Vec<Permutation>),
    /// Permutations splittable into a red part in the left class and a blue
    /// part in the right class.
    Merge(Box<ClassExpr>, Box<ClassExpr>),
    /// Permutations admitting a gridding by the matrix.
    Grid(GridMatrix),
    /// A finite downset, stored downward closed. The empty set denotes the
    /// empty class (which does not even contain ε).
    FiniteSet(BTreeSet<Permutation>),
    /// All sums of members of the inner class.
    SumClosure(Box<ClassExpr>),
    /// All skew sums of members of the inner class.
    SkewClosure(Box<ClassExpr>),
    Intersection(Vec<ClassExpr>),
}

impl ClassExpr {
    /// Avoidance class `Av(basis)`. Duplicates are dropped; two comparable
    /// basis elements are rejected.
    pub fn avoid(basis: Vec<Permutation>) -> Result<ClassExpr, ClassError> {
        let mut basis = basis;
        sort_perms(&mut basis);
        basis.dedup();
        for i in 0..basis.len() {
            for j in 0..basis.len() {
                if i != j && basis[j].contains(&basis[i]) {
                    return Err(ClassError::NotAntichain(basis[i].clone(), basis[j].clone()));
                }
            }
        }
        Ok(ClassExpr::Avoid(basis))
    }

    /// The finite class generated by `members`: the downward closure under
    /// one-point deletions is taken here, so `finite_set([1])` stores {ε, 1}.
    /// An empty member list gives the empty class.
    pub fn finite_set<I: IntoIterator<Item = Permutation>>(members: I) -> ClassExpr {
        let mut closed: BTreeSet<Permutation> = BTreeSet::new();
        let mut frontier: Vec<Permutation> = members.into_iter().collect();
        while let Some(p) = frontier.pop() {
            if closed.insert(p.clone()) {
                frontier.extend(p.one_point_deletions());
            }
        }
        ClassExpr::FiniteSet(closed)
    }

    pub fn merge(left: ClassExpr, right: ClassExpr) -> ClassExpr {
        ClassExpr::Merge(Box::new(left), Box::new(right))
    }

    pub fn grid(matrix: GridMatrix) -> ClassExpr {
        ClassExpr::Grid(matrix)
    }

    pub fn sum_closure(inner: ClassExpr) -> ClassExpr {
        ClassExpr::SumClosure(Box::new(inner))
    }

    pub fn skew_closure(inner: ClassExpr) -> ClassExpr {
        ClassExpr::SkewClosure(Box::new(inner))
    }

    pub fn intersection(parts: Vec<ClassExpr>) -> Result<ClassExpr, ClassError> {
        if parts.is_empty() {
            return Err(ClassError::EmptyIntersection);
        }
        Ok(ClassExpr::Intersection(parts))
    }

    /// Shorthand for `Av(b)` with a single basis element given in textual
    /// form. Panics on invalid text; intended for tests and examples.
    pub fn av1(basis: &str) -> ClassExpr {
        ClassExpr::Avoid(vec![basis.parse().expect("valid permutation literal")])
    }

    /// The canonical printed form, used as the class identity.
    pub fn canonical(&self) -> String {
        self.to_string()
    }
}

/// Sort by length, then lexicographically by values: the deterministic order
/// used everywhere permutations of mixed lengths are listed.
pub fn sort_perms(perms: &mut [Permutation]) {
    perms.sort_by(|a, b| (a.len(), a.values()).cmp(&(b.len(), b.values())));
}

impl fmt::Display for ClassExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassExpr::Avoid(basis) => {
                write!(f, "Av(")?;
                write_permlist(f, basis)?;
                write!(f, ")")
            }
            ClassExpr::Merge(l, r) => write!(f, "merge({l},{r})"),
            ClassExpr::Grid(m) => write!(f, "{m}"),
            ClassExpr::FiniteSet(members) => {
                // ε is implied whenever any longer member is present; print it
                // only for the one-member class {ε}.
                let mut listed: Vec<Permutation> =
                    members.iter().filter(|p| !p.is_empty()).cloned().collect();
                sort_perms(&mut listed);
                if listed.is_empty() && !members.is_empty() {
                    return write!(f, "set(e)");
                }
                write!(f, "set(")?;
                write_permlist(f, &listed)?;
                write!(f, ")")
            }
            ClassExpr::SumClosure(inner) => write!(f, "sumclose({inner})"),
            ClassExpr::SkewClosure(inner) => write!(f, "skewclose({inner})"),
            ClassExpr::Intersection(parts) => {
                write!(f, "inter(")?;
                for (i, part) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{part}")?;
                }
                write!(f, ")")
            }
        }
    }
}

fn write_permlist(f: &mut fmt::Formatter<'_>, perms: &[Permutation]) -> fmt::Result {
    for (i, p) in perms.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{p}")?;
    }
    Ok(())
}
