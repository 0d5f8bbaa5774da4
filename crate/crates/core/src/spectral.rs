//! The monoid of π-functions, the group of spectral characters, the map
//! χ between them, and the exact computation of `G_π`.

use std::fmt;

use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rootdata::{GammaClass, LieType};
use crate::torus::{self, orbit_matches, ScalingElement, TorusPoint};
use crate::weights::AffineWeight;
use crate::{Int, Lattice, Quotient, Rational};

fn check_points<V>(dim: usize, entries: &[(TorusPoint, V)]) -> Result<()> {
    for (p, _) in entries {
        if p.dim() != dim {
            return Err(Error::Dimension {
                expected: dim,
                got: p.dim(),
            });
        }
    }
    for w in entries.windows(2) {
        if w[0].0 == w[1].0 {
            return Err(Error::DuplicatePoint(w[0].0.to_string()));
        }
    }
    Ok(())
}

fn check_k(k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::Precondition("k must be at least 1".into()));
    }
    Ok(())
}

/// A finitely supported function from torus points to dominant affine
/// weights of positive level.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PiFunction {
    ty: LieType,
    k: usize,
    entries: Vec<(TorusPoint, AffineWeight)>,
}

impl PiFunction {
    pub fn new(
        ty: LieType,
        k: usize,
        mut entries: Vec<(TorusPoint, AffineWeight)>,
    ) -> Result<Self> {
        check_k(k)?;
        entries.sort();
        check_points(k - 1, &entries)?;
        for (p, w) in &entries {
            if w.lie_type() != ty {
                return Err(Error::TypeMismatch(
                    ty.to_string(),
                    w.lie_type().to_string(),
                ));
            }
            if !w.is_dominant() {
                return Err(Error::Precondition(format!(
                    "weight at {p} is not dominant"
                )));
            }
            if w.level() < 1 {
                return Err(Error::Precondition(format!(
                    "weight at {p} has level {} < 1",
                    w.level()
                )));
            }
        }
        Ok(PiFunction { ty, k, entries })
    }

    pub fn empty(ty: LieType, k: usize) -> Result<Self> {
        PiFunction::new(ty, k, Vec::new())
    }

    pub fn lie_type(&self) -> LieType {
        self.ty
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn entries(&self) -> &[(TorusPoint, AffineWeight)] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn support(&self) -> Vec<TorusPoint> {
        self.entries.iter().map(|(p, _)| p.clone()).collect()
    }

    pub fn get(&self, p: &TorusPoint) -> Option<&AffineWeight> {
        self.entries
            .binary_search_by(|(q, _)| q.cmp(p))
            .ok()
            .map(|i| &self.entries[i].1)
    }

    fn check_compatible(&self, other: &PiFunction) -> Result<()> {
        if self.ty != other.ty {
            return Err(Error::TypeMismatch(
                self.ty.to_string(),
                other.ty.to_string(),
            ));
        }
        if self.k != other.k {
            return Err(Error::Dimension {
                expected: self.k,
                got: other.k,
            });
        }
        Ok(())
    }

    /// Pointwise sum.
    pub fn add(&self, other: &PiFunction) -> Result<PiFunction> {
        self.check_compatible(other)?;
        let mut entries = self.entries.clone();
        for (p, w) in &other.entries {
            match entries.binary_search_by(|(q, _)| q.cmp(p)) {
                Ok(i) => entries[i].1 = entries[i].1.add(w)?,
                Err(i) => entries.insert(i, (p.clone(), w.clone())),
            }
        }
        Ok(PiFunction {
            entries,
            ..self.clone()
        })
    }
}

/// A value `(level, class)` of a spectral character.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct XiValue {
    pub level: i64,
    pub class: GammaClass,
}

impl XiValue {
    pub fn is_zero(&self) -> bool {
        self.level == 0 && self.class.is_zero()
    }

    pub fn add(&self, other: &XiValue) -> Result<XiValue> {
        Ok(XiValue {
            level: self.level + other.level,
            class: self.class.add(&other.class)?,
        })
    }

    pub fn neg(&self) -> XiValue {
        XiValue {
            level: -self.level,
            class: self.class.neg(),
        }
    }
}

impl fmt::Display for XiValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.level, self.class)
    }
}

/// A finitely supported function from torus points to `Z x Gamma`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct XiCharacter {
    ty: LieType,
    k: usize,
    entries: Vec<(TorusPoint, XiValue)>,
}

impl XiCharacter {
    /// Entries equal to `(0, 0)` are rejected.
    pub fn new(ty: LieType, k: usize, mut entries: Vec<(TorusPoint, XiValue)>) -> Result<Self> {
        check_k(k)?;
        entries.sort();
        check_points(k - 1, &entries)?;
        for (p, v) in &entries {
            if v.class.lie_type() != ty {
                return Err(Error::TypeMismatch(
                    ty.to_string(),
                    v.class.lie_type().to_string(),
                ));
            }
            if v.is_zero() {
                return Err(Error::Precondition(format!("zero value at {p}")));
            }
        }
        Ok(XiCharacter { ty, k, entries })
    }

    pub fn empty(ty: LieType, k: usize) -> Result<Self> {
        XiCharacter::new(ty, k, Vec::new())
    }

    pub fn lie_type(&self) -> LieType {
        self.ty
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn entries(&self) -> &[(TorusPoint, XiValue)] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn check_compatible(&self, other: &XiCharacter) -> Result<()> {
        if self.ty != other.ty {
            return Err(Error::TypeMismatch(
                self.ty.to_string(),
                other.ty.to_string(),
            ));
        }
        if self.k != other.k {
            return Err(Error::Dimension {
                expected: self.k,
                got: other.k,
            });
        }
        Ok(())
    }
}

/// Coordinatewise sum of all values.
pub fn wt(pi: &PiFunction) -> AffineWeight {
    pi.entries
        .iter()
        .fold(AffineWeight::zero(pi.ty), |acc, (_, w)| {
            acc.add(w).expect("weights share the type of pi")
        })
}

/// `M -> (level of pi(M), class of its finite part)`.
pub fn chi(pi: &PiFunction) -> XiCharacter {
    XiCharacter {
        ty: pi.ty,
        k: pi.k,
        entries: pi
            .entries
            .iter()
            .map(|(p, w)| {
                let v = XiValue {
                    level: w.level(),
                    class: w.fin().gamma_class(),
                };
                (p.clone(), v)
            })
            .collect(),
    }
}

/// `M -> pi(M)(alpha_{n+1}^vee)`, the literal first component of the
/// character formula, kept for comparison with the level convention of
/// [`chi`].
pub fn alpha_n1_values(pi: &PiFunction) -> Vec<(TorusPoint, i64)> {
    pi.entries
        .iter()
        .map(|(p, w)| (p.clone(), w.alpha0_value()))
        .collect()
}

pub fn xi_add(a: &XiCharacter, b: &XiCharacter) -> Result<XiCharacter> {
    a.check_compatible(b)?;
    let mut entries = a.entries.clone();
    for (p, v) in &b.entries {
        match entries.binary_search_by(|(q, _)| q.cmp(p)) {
            Ok(i) => entries[i].1 = entries[i].1.add(v)?,
            Err(i) => entries.insert(i, (p.clone(), *v)),
        }
    }
    entries.retain(|(_, v)| !v.is_zero());
    Ok(XiCharacter {
        entries,
        ..a.clone()
    })
}

pub fn xi_neg(a: &XiCharacter) -> XiCharacter {
    XiCharacter {
        entries: a
            .entries
            .iter()
            .map(|(p, v)| (p.clone(), v.neg()))
            .collect(),
        ..a.clone()
    }
}

fn relabel<V: Clone + Ord>(
    b: &ScalingElement,
    entries: &[(TorusPoint, V)],
    dim: usize,
) -> Result<Vec<(TorusPoint, V)>> {
    if b.coords().len() != dim {
        return Err(Error::Dimension {
            expected: dim,
            got: b.coords().len(),
        });
    }
    let inv = b.inverse();
    let mut out = entries
        .iter()
        .map(|(p, v)| Ok((torus::scale(&inv, p)?, v.clone())))
        .collect::<Result<Vec<_>>>()?;
    out.sort();
    Ok(out)
}

/// `(b.xi)(S) = xi(b.S)`.
pub fn xi_scale_action(b: &ScalingElement, xi: &XiCharacter) -> Result<XiCharacter> {
    Ok(XiCharacter {
        entries: relabel(b, &xi.entries, xi.k - 1)?,
        ..xi.clone()
    })
}

/// `(b.pi)(M) = pi(b.M)`.
pub fn pi_scale_action(b: &ScalingElement, pi: &PiFunction) -> Result<PiFunction> {
    Ok(PiFunction {
        entries: relabel(b, &pi.entries, pi.k - 1)?,
        ..pi.clone()
    })
}

fn weighted_sum<'a>(
    terms: impl Iterator<Item = (Rational, &'a [Rational])>,
    len: usize,
) -> Vec<Rational> {
    let mut acc = vec![Rational::zero(); len];
    for (c, v) in terms {
        for (a, x) in acc.iter_mut().zip(v) {
            *a += &c * x;
        }
    }
    acc
}

/// Whether every `h ⊗ t^m` kills the highest-weight vector, i.e.
/// `sum_i M_i^m vec(pi(M_i)) = 0`.
pub fn vanishing_test(pi: &PiFunction, m: &[i64]) -> Result<bool> {
    if m.len() != pi.k - 1 {
        return Err(Error::Dimension {
            expected: pi.k - 1,
            got: m.len(),
        });
    }
    let vecs: Vec<Vec<Rational>> = pi.entries.iter().map(|(_, w)| w.as_vector()).collect();
    let coeffs = pi
        .entries
        .iter()
        .map(|(p, _)| p.evaluate(m))
        .collect::<Result<Vec<_>>>()?;
    let sum = weighted_sum(
        coeffs.into_iter().zip(vecs.iter().map(|v| v.as_slice())),
        pi.ty.rank() + 2,
    );
    Ok(sum.iter().all(|x| x.is_zero()))
}

/// `G_π` with its quotient and the coset witnesses used to build it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GPiResult {
    pub lattice: Lattice,
    pub quotient: Quotient,
    pub generators_log: Vec<Vec<i64>>,
}

fn to_i64_vec(v: &[Int]) -> Result<Vec<i64>> {
    v.iter()
        .map(|x| x.to_i64().ok_or_else(|| Error::TooLarge(x.to_string())))
        .collect()
}

fn to_int_vec(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| Int::from(x)).collect()
}

/// `P_0 = {m : M_i^m > 0 for all i}`.
fn sign_kernel(pi: &PiFunction) -> Lattice {
    let d = pi.k - 1;
    let n = pi.entries.len();
    let rows: Vec<Vec<Int>> = pi
        .entries
        .iter()
        .enumerate()
        .map(|(i, (p, _))| {
            let mut r: Vec<Int> = p
                .factored()
                .iter()
                .map(|f| Int::from(u8::from(f.negative)))
                .collect();
            r.extend((0..n).map(|j| Int::from(if i == j { -2 } else { 0 })));
            r
        })
        .collect();
    let ker = crate::zlattice::kernel(&rows, d + n).expect("rows have length d + n");
    let projected: Vec<Vec<Int>> = ker.basis().iter().map(|r| r[..d].to_vec()).collect();
    Lattice::hnf(&projected, d).expect("projected rows have length d")
}

/// The first point of `c + P_0` where `pi` does not vanish, scanning
/// `c + sum t_j b_j` with `t` in `{0..side-1}^r` in lexicographic order.
fn coset_witness(pi: &PiFunction, c: &[i64], basis: &[Vec<i64>], side: i64) -> Result<Vec<i64>> {
    let r = basis.len();
    let mut t = vec![0i64; r];
    loop {
        let mut m = c.to_vec();
        for (tj, bj) in t.iter().zip(basis) {
            for (x, y) in m.iter_mut().zip(bj) {
                *x += tj * y;
            }
        }
        if !vanishing_test(pi, &m)? {
            return Ok(m);
        }
        let mut pos = r;
        loop {
            if pos == 0 {
                return Err(Error::Internal(format!(
                    "no non-vanishing point in the witness box of coset {c:?}"
                )));
            }
            pos -= 1;
            t[pos] += 1;
            if t[pos] < side {
                break;
            }
            t[pos] = 0;
        }
    }
}

/// Groups support indices by their character on `P_0`.
fn character_classes(pi: &PiFunction, p0: &Lattice) -> Result<Vec<Vec<usize>>> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    'points: for (i, (pt, _)) in pi.entries.iter().enumerate() {
        for class in classes.iter_mut() {
            let rel = torus::relation_lattice(&pt.ratio(&pi.entries[class[0]].0)?);
            if rel.contains(p0)? {
                class.push(i);
                continue 'points;
            }
        }
        classes.push(vec![i]);
    }
    Ok(classes)
}

/// The lattice generated by all `m` with `vanishing_test(pi, m) = false`.
pub fn g_pi(pi: &PiFunction) -> Result<GPiResult> {
    if pi.is_empty() {
        return Err(Error::Precondition("G_pi needs a nonempty pi".into()));
    }
    let d = pi.k - 1;
    let p0 = sign_kernel(pi);
    let p0_basis = p0
        .basis()
        .iter()
        .map(|r| to_i64_vec(r))
        .collect::<Result<Vec<_>>>()?;
    let classes = character_classes(pi, &p0)?;
    let vecs: Vec<Vec<Rational>> = pi.entries.iter().map(|(_, w)| w.as_vector()).collect();
    let len = pi.ty.rank() + 2;
    let reps = p0.quotient().coset_reps()?.to_vec();

    let mut witnesses: Vec<Vec<i64>> = reps
        .par_iter()
        .filter(|c| c.iter().any(|x| !x.is_zero()))
        .map(|c| -> Result<Option<Vec<i64>>> {
            let c = to_i64_vec(c)?;
            let mut live = false;
            for class in &classes {
                let terms = class
                    .iter()
                    .map(|&i| Ok((pi.entries[i].0.evaluate(&c)?, vecs[i].as_slice())))
                    .collect::<Result<Vec<_>>>()?;
                if weighted_sum(terms.into_iter(), len)
                    .iter()
                    .any(|x| !x.is_zero())
                {
                    live = true;
                    break;
                }
            }
            if !live {
                return Ok(None);
            }
            coset_witness(pi, &c, &p0_basis, classes.len() as i64).map(Some)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    witnesses.sort();

    let mut gens: Vec<Vec<Int>> = p0.basis().to_vec();
    gens.extend(witnesses.iter().map(|w| to_int_vec(w)));
    let lattice = Lattice::hnf(&gens, d)?;
    let quotient = lattice.quotient();
    Ok(GPiResult {
        lattice,
        quotient,
        generators_log: witnesses,
    })
}

/// Whether the irreducibles indexed by `(pi1, g1)` and `(pi2, g2)` are
/// isomorphic: some scaling carries one support onto the other with the
/// same weights up to a delta shift, and `g1 - g2` lies in `G_π1`.
/// Unequal total levels give `false`.
pub fn is_isomorphic(pi1: &PiFunction, g1: &[i64], pi2: &PiFunction, g2: &[i64]) -> Result<bool> {
    pi1.check_compatible(pi2)?;
    let d = pi1.k - 1;
    for g in [g1, g2] {
        if g.len() != d {
            return Err(Error::Dimension {
                expected: d,
                got: g.len(),
            });
        }
    }
    if wt(pi1).level() != wt(pi2).level() {
        return Ok(false);
    }
    let found = orbit_matches(&pi1.entries, &pi2.entries, |a, b| a.eq_up_to_delta(b))?;
    if found.is_empty() {
        return Ok(false);
    }
    let g = g_pi(pi1)?;
    let diff: Vec<Int> = g1.iter().zip(g2).map(|(a, b)| Int::from(a - b)).collect();
    g.lattice.member(&diff)
}
