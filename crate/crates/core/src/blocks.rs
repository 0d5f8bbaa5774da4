//! Type I / type II classification of spectral characters, block
//! identifiers, and the linkage predicate for irreducibles of positive
//! level.

use std::fmt;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::rootdata::{gamma_group, FiniteWeight, LieType};
use crate::spectral::{chi, g_pi, is_isomorphic, wt, PiFunction, XiCharacter, XiValue};
use crate::torus::{canonical_orbit, orbit_match, orbit_matches, TorusPoint};
use crate::weights::realizations;
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CharacterType {
    /// Some value has at least two dominant realizations; the first such
    /// point is recorded.
    TypeI {
        point: TorusPoint,
        value: XiValue,
        realizations: Vec<FiniteWeight>,
    },
    TypeII,
}

impl CharacterType {
    pub fn label(&self) -> &'static str {
        match self {
            CharacterType::TypeI { .. } => "I",
            CharacterType::TypeII => "II",
        }
    }

    pub fn is_type_one(&self) -> bool {
        matches!(self, CharacterType::TypeI { .. })
    }
}

/// Advisory notes attached to a classification. They never change the
/// result.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Diagnostic {
    /// Type II for a type that is not simply laced or has trivial `Gamma`,
    /// where every character is often stated to be type I.
    TypeTwoUnexpected(LieType),
    /// The support has scaling symmetries besides the identity.
    NontrivialStabilizer { order: usize },
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::TypeTwoUnexpected(ty) => write!(
                f,
                "type II for {ty}: every value has a unique dominant realization, although \
                 characters of non-simply-laced types and of types with trivial Gamma are \
                 usually claimed to be type I; the answer follows the realization count"
            ),
            Diagnostic::NontrivialStabilizer { order } => write!(
                f,
                "the support has {order} scaling symmetries; distinct pointwise realizations \
                 may be identified by them"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub character_type: CharacterType,
    pub diagnostics: Vec<Diagnostic>,
}

fn check_positive_levels(xi: &XiCharacter) -> Result<()> {
    for (p, v) in xi.entries() {
        if v.level < 1 {
            return Err(Error::Precondition(format!(
                "value at {p} has level {} < 1",
                v.level
            )));
        }
    }
    Ok(())
}

/// Type II exactly when every value has a single dominant realization.
pub fn classify_type(xi: &XiCharacter) -> Result<Classification> {
    check_positive_levels(xi)?;
    let ty = xi.lie_type();
    let mut character_type = CharacterType::TypeII;
    for (p, v) in xi.entries() {
        let reals = realizations(ty, v.level, v.class)?;
        if reals.len() >= 2 {
            character_type = CharacterType::TypeI {
                point: p.clone(),
                value: *v,
                realizations: reals,
            };
            break;
        }
    }
    let mut diagnostics = Vec::new();
    if character_type == CharacterType::TypeII
        && !xi.is_empty()
        && (!ty.is_simply_laced() || gamma_group(ty).order() == 1)
    {
        diagnostics.push(Diagnostic::TypeTwoUnexpected(ty));
    }
    let order = orbit_matches(xi.entries(), xi.entries(), |a, b| a == b)?.len();
    if order > 1 {
        diagnostics.push(Diagnostic::NontrivialStabilizer { order });
    }
    Ok(Classification {
        character_type,
        diagnostics,
    })
}

/// Canonical name of the block containing an irreducible.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BlockId {
    /// The whole orbit of the spectral character.
    TypeI { xi: XiCharacter },
    /// An isomorphism class: the orbit of π up to delta shifts, and the
    /// canonical representative of `g + G_π`.
    TypeII { pi: PiFunction, coset: Vec<i64> },
}

impl BlockId {
    pub fn kind(&self) -> &'static str {
        match self {
            BlockId::TypeI { .. } => "I",
            BlockId::TypeII { .. } => "II",
        }
    }
}

/// Orbit representative of a character under scaling.
pub fn canonical_xi(xi: &XiCharacter) -> Result<XiCharacter> {
    XiCharacter::new(xi.lie_type(), xi.k(), canonical_orbit(xi.entries())?)
}

/// Orbit representative of π with every delta coefficient set to zero.
pub fn canonical_pi(pi: &PiFunction) -> Result<PiFunction> {
    let flat: Vec<_> = pi
        .entries()
        .iter()
        .map(|(p, w)| (p.clone(), w.with_delta(Rational::from_integer(0.into()))))
        .collect();
    PiFunction::new(pi.lie_type(), pi.k(), canonical_orbit(&flat)?)
}

fn check_g(pi: &PiFunction, g: &[i64]) -> Result<()> {
    if g.len() != pi.k() - 1 {
        return Err(Error::Dimension {
            expected: pi.k() - 1,
            got: g.len(),
        });
    }
    Ok(())
}

fn check_level(pi: &PiFunction) -> Result<()> {
    if wt(pi).level() < 1 {
        return Err(Error::Precondition(
            "level 0 belongs to the level-zero regime; use level_zero_block".into(),
        ));
    }
    Ok(())
}

pub fn block_id(pi: &PiFunction, g: &[i64]) -> Result<BlockId> {
    check_g(pi, g)?;
    check_level(pi)?;
    let xi = chi(pi);
    match classify_type(&xi)?.character_type {
        CharacterType::TypeI { .. } => Ok(BlockId::TypeI {
            xi: canonical_xi(&xi)?,
        }),
        CharacterType::TypeII => {
            let lattice = g_pi(pi)?.lattice;
            let g: Vec<_> = g.iter().map(|&x| crate::Int::from(x)).collect();
            let coset = lattice
                .reduce(&g)?
                .iter()
                .map(|x| x.to_i64().ok_or_else(|| Error::TooLarge(x.to_string())))
                .collect::<Result<_>>()?;
            Ok(BlockId::TypeII {
                pi: canonical_pi(pi)?,
                coset,
            })
        }
    }
}

/// Whether `(pi1, g1)` and `(pi2, g2)` index irreducibles in the same
/// block. Different total levels give `false`.
pub fn same_block(pi1: &PiFunction, g1: &[i64], pi2: &PiFunction, g2: &[i64]) -> Result<bool> {
    if pi1.lie_type() != pi2.lie_type() {
        return Err(Error::TypeMismatch(
            pi1.lie_type().to_string(),
            pi2.lie_type().to_string(),
        ));
    }
    if pi1.k() != pi2.k() {
        return Err(Error::Dimension {
            expected: pi1.k(),
            got: pi2.k(),
        });
    }
    check_g(pi1, g1)?;
    check_g(pi2, g2)?;
    check_level(pi1)?;
    check_level(pi2)?;
    if wt(pi1).level() != wt(pi2).level() {
        return Ok(false);
    }
    let (xi1, xi2) = (chi(pi1), chi(pi2));
    if orbit_match(xi1.entries(), xi2.entries(), |a, b| a == b)?.is_none() {
        return Ok(false);
    }
    match classify_type(&xi1)?.character_type {
        CharacterType::TypeI { .. } => Ok(true),
        CharacterType::TypeII => is_isomorphic(pi1, g1, pi2, g2),
    }
}

/// Orbit representative of a level-zero character; equal representatives
/// name the same block of the level-zero category.
pub fn level_zero_block(xi0: &XiCharacter) -> Result<XiCharacter> {
    for (p, v) in xi0.entries() {
        if v.level != 0 {
            return Err(Error::Precondition(format!(
                "value at {p} has level {} != 0",
                v.level
            )));
        }
    }
    canonical_xi(xi0)
}
