use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::arrow::ConstKind;
use super::object::Functor;

/// The thirteen freely generated categories handled by the library.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Theory {
    /// Left strong monad.
    LLS,
    /// Right strong monad.
    LRS,
    /// Monoidal monad with both one-sided strengths primitive.
    LS,
    /// Symmetric monoidal monad.
    LcS,
    /// Cartesian monoidal monad.
    CS,
    /// Cocartesian monoidal monad.
    DS,
    /// Left strong comonad.
    LLSco,
    /// Monoidal comonad.
    MSco,
    /// Symmetric monoidal comonad.
    McSco,
    /// Cartesian monoidal comonad.
    CSco,
    /// Cocartesian monoidal comonad.
    DSco,
    /// Symmetric monoidal category with a family of locally linear endofunctors.
    Lc,
    /// `Lc` extended with a multiplication for every functor of the family.
    Lcmu,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MeasureMode {
    FunctorsOnly,
    FunctorsAndLetters,
}

/// Graph categories: finite ordinals with order-preserving maps, their
/// converses, arbitrary maps, and arbitrary relations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GraphCategory {
    Delta,
    DeltaOp,
    Fun,
    Rel,
}

impl fmt::Display for GraphCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GraphCategory::Delta => "Delta",
            GraphCategory::DeltaOp => "DeltaOp",
            GraphCategory::Fun => "Fun",
            GraphCategory::Rel => "Rel",
        })
    }
}

const BASE: &[ConstKind] = &[
    ConstKind::Id,
    ConstKind::Assoc,
    ConstKind::AssocInv,
    ConstKind::LeftUnit,
    ConstKind::LeftUnitInv,
    ConstKind::RightUnit,
    ConstKind::RightUnitInv,
];

impl Theory {
    pub const ALL: [Theory; 13] = [
        Theory::LLS,
        Theory::LRS,
        Theory::LS,
        Theory::LcS,
        Theory::CS,
        Theory::DS,
        Theory::LLSco,
        Theory::MSco,
        Theory::McSco,
        Theory::CSco,
        Theory::DSco,
        Theory::Lc,
        Theory::Lcmu,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Theory::LLS => "LLS",
            Theory::LRS => "LRS",
            Theory::LS => "LS",
            Theory::LcS => "LcS",
            Theory::CS => "CS",
            Theory::DS => "DS",
            Theory::LLSco => "LLSco",
            Theory::MSco => "MSco",
            Theory::McSco => "McSco",
            Theory::CSco => "CSco",
            Theory::DSco => "DSco",
            Theory::Lc => "Lc",
            Theory::Lcmu => "Lcmu",
        }
    }

    pub fn is_monad(&self) -> bool {
        matches!(
            self,
            Theory::LLS | Theory::LRS | Theory::LS | Theory::LcS | Theory::CS | Theory::DS
        )
    }

    pub fn is_comonad(&self) -> bool {
        matches!(
            self,
            Theory::LLSco | Theory::MSco | Theory::McSco | Theory::CSco | Theory::DSco
        )
    }

    /// Theories over the indexed family `E1, E2, ...`.
    pub fn is_family(&self) -> bool {
        matches!(self, Theory::Lc | Theory::Lcmu)
    }

    pub fn is_symmetric(&self) -> bool {
        !matches!(
            self,
            Theory::LLS | Theory::LRS | Theory::LS | Theory::LLSco | Theory::MSco
        )
    }

    pub fn is_cartesian(&self) -> bool {
        matches!(self, Theory::CS | Theory::CSco)
    }

    pub fn is_cocartesian(&self) -> bool {
        matches!(self, Theory::DS | Theory::DSco)
    }

    /// The functor written when a constant carries no explicit annotation.
    pub fn default_functor(&self) -> Functor {
        if self.is_comonad() {
            Functor::L
        } else if self.is_family() {
            Functor::E(1)
        } else {
            Functor::T
        }
    }

    pub fn admits_functor(&self, f: Functor) -> bool {
        match f {
            Functor::E(i) => self.is_family() && i >= 1,
            other => !self.is_family() && other == self.default_functor(),
        }
    }

    pub fn measure_mode(&self) -> MeasureMode {
        match self {
            Theory::LLS | Theory::LRS | Theory::LS | Theory::LLSco | Theory::MSco => {
                MeasureMode::FunctorsOnly
            }
            _ => MeasureMode::FunctorsAndLetters,
        }
    }

    pub fn target_category(&self) -> GraphCategory {
        match self {
            Theory::LLS => GraphCategory::Delta,
            Theory::LLSco => GraphCategory::DeltaOp,
            Theory::LRS | Theory::LS | Theory::LcS | Theory::DS | Theory::Lc | Theory::Lcmu => {
                GraphCategory::Fun
            }
            Theory::CS | Theory::MSco | Theory::McSco | Theory::CSco | Theory::DSco => {
                GraphCategory::Rel
            }
        }
    }

    /// Constants that are primitive in this theory.
    pub fn primitives(&self) -> Vec<ConstKind> {
        use ConstKind::*;
        let mut out = BASE.to_vec();
        if self.is_symmetric() {
            out.push(Sym);
        }
        let extra: &[ConstKind] = match self {
            Theory::LLS => &[PsiL, Eta, Mu],
            Theory::LRS => &[PsiR, Eta, Mu],
            Theory::LS | Theory::LcS => &[PsiL, PsiR, Eta, Mu],
            Theory::CS => &[PsiL, PsiR, Eta, Mu, Diag, Bang],
            Theory::DS => &[PsiL, PsiR, Eta, Mu, Codiag, Cobang],
            Theory::LLSco => &[PsiL, Eps, Delta],
            Theory::MSco | Theory::McSco => &[Psi, Psi0, Eps, Delta],
            Theory::CSco => &[Psi, Psi0, Eps, Delta, Diag, Bang],
            Theory::DSco => &[Psi, Psi0, Eps, Delta, Codiag, Cobang],
            Theory::Lc => &[PsiL, PsiR],
            Theory::Lcmu => &[PsiL, PsiR, Mu],
        };
        out.extend_from_slice(extra);
        out
    }

    pub fn is_primitive(&self, k: ConstKind) -> bool {
        self.primitives().contains(&k)
    }

    /// Constants accepted in input and rewritten away by `expand_derived`.
    pub fn derived(&self) -> Vec<ConstKind> {
        use ConstKind::*;
        match self {
            Theory::LS | Theory::LcS | Theory::CS | Theory::DS => vec![Psi, Psi0],
            Theory::LLS | Theory::LRS => vec![Psi0],
            Theory::Lcmu => vec![Psi],
            _ => vec![],
        }
    }

    pub fn is_legal(&self, k: ConstKind) -> bool {
        self.is_primitive(k) || self.derived().contains(&k)
    }
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown theory `{0}`")]
pub struct UnknownTheory(pub String);

impl FromStr for Theory {
    type Err = UnknownTheory;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Theory::ALL
            .iter()
            .copied()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| UnknownTheory(s.to_string()))
    }
}
