//! Rational points of the torus `(Q*)^{k-1}`, standing for maximal ideals of
//! the Laurent polynomial ring in `t_2, .., t_k`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::{Int, Lattice, Rational};

/// Sign and prime exponents of a nonzero rational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factored {
    pub negative: bool,
    pub exponents: BTreeMap<u64, i64>,
}

impl Factored {
    fn of(q: &Rational) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::ZeroCoordinate);
        }
        let mut exponents = BTreeMap::new();
        for (part, sign) in [(q.numer(), 1i64), (q.denom(), -1i64)] {
            let v = part
                .abs()
                .to_u64()
                .ok_or_else(|| Error::TooLarge(q.to_string()))?;
            for (p, e) in num_prime::nt_funcs::factorize64(v) {
                *exponents.entry(p).or_insert(0) += sign * e as i64;
            }
        }
        Ok(Factored {
            negative: q.is_negative(),
            exponents,
        })
    }

    fn mul(&self, other: &Factored) -> Factored {
        let mut exponents = self.exponents.clone();
        for (&p, &e) in &other.exponents {
            let slot = exponents.entry(p).or_insert(0);
            *slot += e;
            if *slot == 0 {
                exponents.remove(&p);
            }
        }
        Factored {
            negative: self.negative != other.negative,
            exponents,
        }
    }
}

/// A point with nonzero rational coordinates, factored once at
/// construction. Equality and order only look at the coordinates.
#[derive(Debug, Clone)]
pub struct TorusPoint {
    coords: Vec<Rational>,
    factored: Vec<Factored>,
}

impl PartialEq for TorusPoint {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords
    }
}

impl Eq for TorusPoint {}

impl PartialOrd for TorusPoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for TorusPoint {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coords.cmp(&other.coords)
    }
}

impl Hash for TorusPoint {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coords.hash(state)
    }
}

impl fmt::Display for TorusPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

fn pow(q: &Rational, e: i64) -> Rational {
    let mag = e.unsigned_abs();
    let exp = u32::try_from(mag).expect("exponent fits in u32");
    let n = num_traits::pow(q.numer().clone(), exp as usize);
    let d = num_traits::pow(q.denom().clone(), exp as usize);
    if e >= 0 {
        Rational::new(n, d)
    } else {
        Rational::new(d, n)
    }
}

impl TorusPoint {
    pub fn new(coords: Vec<Rational>) -> Result<Self> {
        let factored = coords.iter().map(Factored::of).collect::<Result<_>>()?;
        Ok(TorusPoint { coords, factored })
    }

    pub fn from_integers(coords: &[i64]) -> Result<Self> {
        TorusPoint::new(
            coords
                .iter()
                .map(|&c| Rational::from_integer(c.into()))
                .collect(),
        )
    }

    /// `(1, .., 1)`.
    pub fn one(dim: usize) -> Self {
        TorusPoint {
            coords: vec![Rational::one(); dim],
            factored: vec![
                Factored {
                    negative: false,
                    exponents: BTreeMap::new()
                };
                dim
            ],
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn factored(&self) -> &[Factored] {
        &self.factored
    }

    pub fn is_one(&self) -> bool {
        self.coords.iter().all(|c| c.is_one())
    }

    fn check_dim(&self, got: usize) -> Result<()> {
        if got != self.dim() {
            return Err(Error::Dimension {
                expected: self.dim(),
                got,
            });
        }
        Ok(())
    }

    /// The value of the Laurent monomial `t^m` at this point.
    pub fn evaluate(&self, m: &[i64]) -> Result<Rational> {
        self.check_dim(m.len())?;
        Ok(self
            .coords
            .iter()
            .zip(m)
            .fold(Rational::one(), |acc, (c, &e)| acc * pow(c, e)))
    }

    /// Sign of `t^m` at this point, from the factored form alone.
    pub fn sign_at(&self, m: &[i64]) -> Result<bool> {
        self.check_dim(m.len())?;
        Ok(self
            .factored
            .iter()
            .zip(m)
            .filter(|(f, &e)| f.negative && e.rem_euclid(2) == 1)
            .count()
            % 2
            == 1)
    }

    pub fn mul(&self, other: &TorusPoint) -> Result<TorusPoint> {
        self.check_dim(other.dim())?;
        Ok(TorusPoint {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a * b)
                .collect(),
            factored: self
                .factored
                .iter()
                .zip(&other.factored)
                .map(|(a, b)| a.mul(b))
                .collect(),
        })
    }

    pub fn inverse(&self) -> TorusPoint {
        TorusPoint {
            coords: self.coords.iter().map(|c| c.recip()).collect(),
            factored: self
                .factored
                .iter()
                .map(|f| Factored {
                    negative: f.negative,
                    exponents: f.exponents.iter().map(|(&p, &e)| (p, -e)).collect(),
                })
                .collect(),
        }
    }

    /// Componentwise `self / other`.
    pub fn ratio(&self, other: &TorusPoint) -> Result<TorusPoint> {
        self.mul(&other.inverse())
    }
}

/// Element `b` of `(Q*)^{k-1}` acting by `t_i -> b_i t_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ScalingElement(TorusPoint);

impl ScalingElement {
    pub fn new(coords: Vec<Rational>) -> Result<Self> {
        Ok(ScalingElement(TorusPoint::new(coords)?))
    }

    pub fn identity(dim: usize) -> Self {
        ScalingElement(TorusPoint::one(dim))
    }

    pub fn as_point(&self) -> &TorusPoint {
        &self.0
    }

    pub fn coords(&self) -> &[Rational] {
        self.0.coords()
    }

    pub fn inverse(&self) -> Self {
        ScalingElement(self.0.inverse())
    }
}

impl From<TorusPoint> for ScalingElement {
    fn from(p: TorusPoint) -> Self {
        ScalingElement(p)
    }
}

/// `b.p`, the componentwise product.
pub fn scale(b: &ScalingElement, p: &TorusPoint) -> Result<TorusPoint> {
    b.0.mul(p)
}

/// `{m : prod_j q_j^{m_j} = 1}`.
///
/// One row per prime carries the exponent vector; the sign condition
/// `sum_j s_j m_j = 2y` is solved with an auxiliary variable `y` that is
/// projected away.
pub fn relation_lattice(q: &TorusPoint) -> Lattice {
    let d = q.dim();
    let mut primes: Vec<u64> = q
        .factored
        .iter()
        .flat_map(|f| f.exponents.keys().copied())
        .collect();
    primes.sort_unstable();
    primes.dedup();
    let mut rows: Vec<Vec<Int>> = primes
        .iter()
        .map(|p| {
            let mut r: Vec<Int> = q
                .factored
                .iter()
                .map(|f| Int::from(f.exponents.get(p).copied().unwrap_or(0)))
                .collect();
            r.push(Int::zero());
            r
        })
        .collect();
    let mut sign: Vec<Int> = q
        .factored
        .iter()
        .map(|f| Int::from(u8::from(f.negative)))
        .collect();
    sign.push(Int::from(-2));
    rows.push(sign);
    let ker = crate::zlattice::kernel(&rows, d + 1).expect("rows have length d + 1");
    let projected: Vec<Vec<Int>> = ker.basis().iter().map(|r| r[..d].to_vec()).collect();
    Lattice::hnf(&projected, d).expect("projected rows have length d")
}

/// Relation lattice of a raw coordinate vector.
pub fn relation_lattice_of(q: &[Rational]) -> Result<Lattice> {
    Ok(relation_lattice(&TorusPoint::new(q.to_vec())?))
}

fn check_distinct<L>(list: &[(TorusPoint, L)]) -> Result<()> {
    let mut pts: Vec<&TorusPoint> = list.iter().map(|(p, _)| p).collect();
    pts.sort();
    for w in pts.windows(2) {
        if w[0] == w[1] {
            return Err(Error::DuplicatePoint(w[0].to_string()));
        }
    }
    Ok(())
}

/// Every `b` (from the candidate set) such that `p -> b.p` maps `a` onto
/// `b_list` with equivalent labels, in sorted candidate order.
pub fn orbit_matches<L, F>(
    a: &[(TorusPoint, L)],
    b_list: &[(TorusPoint, L)],
    equiv: F,
) -> Result<Vec<ScalingElement>>
where
    F: Fn(&L, &L) -> bool,
{
    check_distinct(a)?;
    check_distinct(b_list)?;
    if a.len() != b_list.len() {
        return Ok(Vec::new());
    }
    let Some(anchor) = a.iter().map(|(p, _)| p).min() else {
        return Ok(Vec::new());
    };
    for (p, _) in a.iter().chain(b_list) {
        anchor.check_dim(p.dim())?;
    }
    let mut targets: Vec<&TorusPoint> = b_list.iter().map(|(p, _)| p).collect();
    targets.sort();
    let mut found = Vec::new();
    'cand: for t in targets {
        let b = ScalingElement(t.ratio(anchor)?);
        for (p, la) in a {
            let img = scale(&b, p)?;
            match b_list.iter().find(|(q, _)| *q == img) {
                Some((_, lb)) if equiv(la, lb) => {}
                _ => continue 'cand,
            }
        }
        found.push(b);
    }
    Ok(found)
}

/// Some `b` carrying `a` bijectively onto `b_list` with equivalent labels.
/// Two empty lists match with `b = 1`.
pub fn orbit_match<L, F>(
    a: &[(TorusPoint, L)],
    b_list: &[(TorusPoint, L)],
    equiv: F,
) -> Result<Option<ScalingElement>>
where
    F: Fn(&L, &L) -> bool,
{
    if a.is_empty() && b_list.is_empty() {
        return Ok(Some(ScalingElement::identity(0)));
    }
    Ok(orbit_matches(a, b_list, equiv)?.into_iter().next())
}

/// Anchor canonicalisation shared by the orbit representatives: for every
/// support point, divide all points by it, sort, and keep the least result.
pub fn canonical_orbit<V: Clone + Ord>(
    entries: &[(TorusPoint, V)],
) -> Result<Vec<(TorusPoint, V)>> {
    let mut best: Option<Vec<(TorusPoint, V)>> = None;
    for (anchor, _) in entries {
        let mut moved = entries
            .iter()
            .map(|(p, v)| Ok((p.ratio(anchor)?, v.clone())))
            .collect::<Result<Vec<_>>>()?;
        moved.sort();
        if best.as_ref().is_none_or(|b| moved < *b) {
            best = Some(moved);
        }
    }
    Ok(best.unwrap_or_default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn pt(c: &[(i64, i64)]) -> TorusPoint {
        TorusPoint::new(c.iter().map(|&(n, d)| r(n, d)).collect()).unwrap()
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(pt(&[(-2, 1), (3, 1)]).evaluate(&[2, -1]).unwrap(), r(4, 3));
        assert_eq!(pt(&[(-2, 1), (3, 7)]).evaluate(&[0, 0]).unwrap(), r(1, 1));
        assert_eq!(TorusPoint::one(3).evaluate(&[5, -2, 9]).unwrap(), r(1, 1));
        assert!(pt(&[(2, 1)]).evaluate(&[1, 1]).is_err());
    }

    #[test]
    fn construction_errors() {
        assert_eq!(TorusPoint::new(vec![r(0, 1)]), Err(Error::ZeroCoordinate));
        let huge = Rational::from_integer(Int::from(u64::MAX) * 3);
        assert!(matches!(
            TorusPoint::new(vec![huge]),
            Err(Error::TooLarge(_))
        ));
    }

    #[test]
    fn factored_form_reconstructs() {
        let p = pt(&[(-12, 35), (1, 1), (49, 8)]);
        for (f, c) in p.factored().iter().zip(p.coords()) {
            let mut v = r(if f.negative { -1 } else { 1 }, 1);
            for (&prime, &e) in &f.exponents {
                v *= pow(&Rational::from_integer(prime.into()), e);
            }
            assert_eq!(&v, c);
        }
    }

    #[test]
    fn relation_lattice_examples() {
        assert_eq!(relation_lattice(&pt(&[(4, 1)])), Lattice::zero(1));
        assert_eq!(relation_lattice(&pt(&[(1, 1), (1, 1)])), Lattice::full(2));
        let l = relation_lattice(&pt(&[(2, 1), (1, 2)]));
        assert_eq!(l, Lattice::hnf(&[vec![1.into(), 1.into()]], 2).unwrap());
        assert_eq!(
            relation_lattice(&pt(&[(-1, 1)])),
            Lattice::hnf(&[vec![2.into()]], 1).unwrap()
        );
        assert!(relation_lattice_of(&[r(0, 1)]).is_err());
    }

    #[test]
    fn scale_examples() {
        let b = ScalingElement::new(vec![r(2, 1), r(2, 1)]).unwrap();
        assert_eq!(
            scale(&b, &pt(&[(2, 1), (3, 1)])).unwrap(),
            pt(&[(4, 1), (6, 1)])
        );
        let p = pt(&[(5, 3)]);
        assert_eq!(scale(&ScalingElement::identity(1), &p).unwrap(), p);
        let neg = ScalingElement::new(vec![r(-1, 1)]).unwrap();
        let s = scale(&neg, &pt(&[(-1, 1)])).unwrap();
        assert_eq!(s, pt(&[(1, 1)]));
        assert!(s.factored()[0].exponents.is_empty() && !s.factored()[0].negative);
        assert!(scale(&neg, &pt(&[(1, 1), (1, 1)])).is_err());
    }

    #[test]
    fn orbit_match_examples() {
        let a = vec![(pt(&[(2, 1), (3, 1)]), 'x')];
        let b = vec![(pt(&[(4, 1), (6, 1)]), 'x')];
        let m = orbit_match(&a, &b, |x, y| x == y).unwrap().unwrap();
        assert_eq!(m.coords(), &[r(2, 1), r(2, 1)]);

        let a = vec![(pt(&[(1, 1)]), 'x'), (pt(&[(-1, 1)]), 'y')];
        let b = vec![(pt(&[(1, 1)]), 'y'), (pt(&[(-1, 1)]), 'x')];
        let m = orbit_match(&a, &b, |x, y| x == y).unwrap().unwrap();
        assert_eq!(m.coords(), &[r(-1, 1)]);

        let a = vec![(pt(&[(2, 1)]), 'x')];
        let b = vec![(pt(&[(2, 1)]), 'y')];
        assert_eq!(orbit_match(&a, &b, |x, y| x == y).unwrap(), None);

        let dup = vec![(pt(&[(2, 1)]), 'x'), (pt(&[(2, 1)]), 'y')];
        assert!(matches!(
            orbit_match(&dup, &dup, |x, y| x == y),
            Err(Error::DuplicatePoint(_))
        ));
    }

    fn coord() -> impl Strategy<Value = Rational> {
        prop::sample::select(vec![
            r(1, 1),
            r(-1, 1),
            r(2, 1),
            r(-2, 1),
            r(3, 1),
            r(-3, 1),
            r(1, 2),
            r(-1, 2),
            r(2, 3),
            r(-2, 3),
        ])
    }

    fn point(d: usize) -> impl Strategy<Value = TorusPoint> {
        prop::collection::vec(coord(), d).prop_map(|c| TorusPoint::new(c).unwrap())
    }

    proptest! {
        #[test]
        fn evaluate_is_a_homomorphism(p in point(3), m in prop::collection::vec(-5i64..=5, 3), n in prop::collection::vec(-5i64..=5, 3)) {
            let sum: Vec<i64> = m.iter().zip(&n).map(|(a, b)| a + b).collect();
            prop_assert_eq!(p.evaluate(&sum).unwrap(), p.evaluate(&m).unwrap() * p.evaluate(&n).unwrap());
            prop_assert_eq!(p.sign_at(&m).unwrap(), p.evaluate(&m).unwrap().is_negative());
        }

        #[test]
        fn relation_lattice_matches_box_evaluation(p in point(2)) {
            let l = relation_lattice(&p);
            for a in -5i64..=5 {
                for b in -5i64..=5 {
                    let is_one = p.evaluate(&[a, b]).unwrap().is_one();
                    prop_assert_eq!(l.member(&[a.into(), b.into()]).unwrap(), is_one);
                }
            }
        }

        #[test]
        fn orbit_match_is_reflexive_and_symmetric(pts in prop::collection::btree_set(point(2), 1..4), b in point(2)) {
            let a: Vec<(TorusPoint, usize)> = pts.iter().cloned().enumerate().map(|(i, p)| (p, i % 2)).collect();
            let ids = orbit_matches(&a, &a, |x, y| x == y).unwrap();
            prop_assert!(ids.iter().any(|s| s.as_point().is_one()));
            let b = ScalingElement::from(b);
            let moved: Vec<(TorusPoint, usize)> = a.iter().map(|(p, l)| (scale(&b, p).unwrap(), *l)).collect();
            let fwd = orbit_match(&a, &moved, |x, y| x == y).unwrap();
            prop_assert!(fwd.is_some());
            prop_assert!(orbit_match(&moved, &a, |x, y| x == y).unwrap().is_some());
        }
    }
}
