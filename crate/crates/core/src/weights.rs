//! Affine and toroidal weights.
//!
//! An affine weight is stored as `(level, finite part, delta)` where the
//! level is the value on the canonical central element `K_1` and `delta` is
//! the coefficient of `delta_1`. A toroidal weight carries one central value
//! and one delta coefficient per loop variable.

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rootdata::{build_root_system, FiniteWeight, GammaClass, LieType};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineWeight {
    ty: LieType,
    level: i64,
    fin: FiniteWeight,
    delta: Rational,
}

impl AffineWeight {
    pub fn new(level: i64, fin: FiniteWeight, delta: Rational) -> Self {
        AffineWeight {
            ty: fin.lie_type(),
            level,
            fin,
            delta,
        }
    }

    pub fn zero(ty: LieType) -> Self {
        AffineWeight::new(0, FiniteWeight::zero(ty), Rational::zero())
    }

    /// The affine fundamental weight `Lambda_i` (`i = 1..=n`), or
    /// `Lambda_{n+1}` for `i = n + 1`.
    pub fn fundamental(ty: LieType, i: usize) -> Result<Self> {
        let n = ty.rank();
        if i == n + 1 {
            return Ok(AffineWeight::new(
                1,
                FiniteWeight::zero(ty),
                Rational::zero(),
            ));
        }
        let fin = FiniteWeight::fundamental(ty, i)?;
        let level = build_root_system(ty).comarks[i - 1];
        Ok(AffineWeight::new(level, fin, Rational::zero()))
    }

    pub fn lie_type(&self) -> LieType {
        self.ty
    }

    pub fn level(&self) -> i64 {
        self.level
    }

    pub fn fin(&self) -> &FiniteWeight {
        &self.fin
    }

    pub fn delta(&self) -> &Rational {
        &self.delta
    }

    /// Value on `alpha_{n+1}^vee = K_1 - theta^vee`.
    pub fn alpha0_value(&self) -> i64 {
        self.level - self.fin.theta_pairing()
    }

    pub fn is_dominant(&self) -> bool {
        self.fin.is_dominant() && self.alpha0_value() >= 0
    }

    /// Same weight with the delta coefficient set to `d`.
    pub fn with_delta(&self, d: Rational) -> Self {
        AffineWeight {
            delta: d,
            ..self.clone()
        }
    }

    /// Equality modulo `C delta_1`, i.e. up to a one-dimensional twist.
    pub fn eq_up_to_delta(&self, other: &AffineWeight) -> bool {
        self.ty == other.ty && self.level == other.level && self.fin == other.fin
    }

    pub fn add(&self, other: &AffineWeight) -> Result<AffineWeight> {
        Ok(AffineWeight {
            ty: self.ty,
            level: self.level + other.level,
            fin: self.fin.add(&other.fin)?,
            delta: &self.delta + &other.delta,
        })
    }

    /// `(level, finite coordinates.., delta)`: the values of the weight on
    /// `K_1`, the fundamental coweights and `d_1`.
    pub fn as_vector(&self) -> Vec<Rational> {
        let mut v = Vec::with_capacity(self.ty.rank() + 2);
        v.push(Rational::from_integer(self.level.into()));
        v.extend(
            self.fin
                .coeffs()
                .iter()
                .map(|&c| Rational::from_integer(c.into())),
        );
        v.push(self.delta.clone());
        v
    }
}

/// `lambda ⪰ mu`: the difference is a nonnegative integer combination of
/// the affine simple roots `alpha_1, .., alpha_n, alpha_{n+1} = delta_1 - theta`.
pub fn affine_geq(lambda: &AffineWeight, mu: &AffineWeight) -> Result<bool> {
    if lambda.ty != mu.ty {
        return Err(Error::TypeMismatch(
            lambda.ty.to_string(),
            mu.ty.to_string(),
        ));
    }
    if lambda.level != mu.level {
        return Ok(false);
    }
    // the delta difference is the alpha_{n+1} multiplicity
    let d = &lambda.delta - &mu.delta;
    if !d.is_integer() || d.is_negative() {
        return Ok(false);
    }
    let k0 = d.to_integer();
    let rs = build_root_system(lambda.ty);
    let diff = lambda.fin.sub(&mu.fin)?;
    let theta_w = rs.root_to_weight(&rs.theta)?;
    let k0: i64 = i64::try_from(&k0).map_err(|_| Error::Precondition("delta too large".into()))?;
    let rest: Vec<i64> = diff
        .coeffs()
        .iter()
        .zip(&theta_w)
        .map(|(a, t)| a + k0 * t)
        .collect();
    Ok(rs
        .alpha_coords(&rest)
        .iter()
        .all(|c| c.is_integer() && !c.is_negative()))
}

/// The unique minimal dominant weight congruent to `lambda.fin` modulo the
/// root lattice: `0` or a minuscule `omega_i`, `i` in J_0.
pub fn min_coset_rep(lambda: &AffineWeight) -> Result<FiniteWeight> {
    if !lambda.is_dominant() {
        return Err(Error::Precondition(
            "min_coset_rep needs a dominant weight".into(),
        ));
    }
    Ok(lambda.fin.gamma_class().representative())
}

/// All dominant finite parts `w` with `<w, theta^vee> <= level` in class
/// `gamma`, sorted lexicographically. These are exactly the level-`level`
/// dominant affine weights with finite part in `gamma`, up to delta shifts.
pub fn realizations(ty: LieType, level: i64, gamma: GammaClass) -> Result<Vec<FiniteWeight>> {
    if level <= 0 {
        return Err(Error::Precondition(format!(
            "realizations need level >= 1, got {level}"
        )));
    }
    if gamma.lie_type() != ty {
        return Err(Error::TypeMismatch(
            ty.to_string(),
            gamma.lie_type().to_string(),
        ));
    }
    let comarks = &build_root_system(ty).comarks;
    let mut out = Vec::new();
    let mut coeffs = vec![0i64; ty.rank()];
    fn go(
        i: usize,
        budget: i64,
        comarks: &[i64],
        coeffs: &mut Vec<i64>,
        ty: LieType,
        gamma: GammaClass,
        out: &mut Vec<FiniteWeight>,
    ) {
        if i == coeffs.len() {
            let w = FiniteWeight::new(ty, coeffs.clone()).expect("rank-sized");
            if w.gamma_class() == gamma {
                out.push(w);
            }
            return;
        }
        for c in 0..=budget / comarks[i] {
            coeffs[i] = c;
            go(
                i + 1,
                budget - c * comarks[i],
                comarks,
                coeffs,
                ty,
                gamma,
                out,
            );
        }
        coeffs[i] = 0;
    }
    go(0, level, comarks, &mut coeffs, ty, gamma, &mut out);
    out.sort();
    Ok(out)
}

// ---------------------------------------------------------------- toroidal

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ToroidalWeight {
    ty: LieType,
    central: Vec<i64>,
    fin: FiniteWeight,
    deltas: Vec<Rational>,
}

impl ToroidalWeight {
    pub fn new(central: Vec<i64>, fin: FiniteWeight, deltas: Vec<Rational>) -> Result<Self> {
        if central.is_empty() {
            return Err(Error::Precondition("toroidal weights need k >= 1".into()));
        }
        if deltas.len() != central.len() {
            return Err(Error::Dimension {
                expected: central.len(),
                got: deltas.len(),
            });
        }
        Ok(ToroidalWeight {
            ty: fin.lie_type(),
            central,
            fin,
            deltas,
        })
    }

    pub fn lie_type(&self) -> LieType {
        self.ty
    }

    pub fn k(&self) -> usize {
        self.central.len()
    }

    pub fn central(&self) -> &[i64] {
        &self.central
    }

    pub fn fin(&self) -> &FiniteWeight {
        &self.fin
    }

    pub fn deltas(&self) -> &[Rational] {
        &self.deltas
    }
}

/// `r_alpha r_beta (lambda)` for `beta = alpha + sum_i shifts[i] delta_i`.
///
/// With `c = 2/(alpha|alpha)` and `kappa = sum_i shifts[i] <lambda, K_i>`
/// the result is `lambda + c kappa alpha - (<lambda, alpha^vee> + c kappa) sum_i shifts[i] delta_i`.
pub fn translate_by_root(
    lambda: &ToroidalWeight,
    root: &[i64],
    shifts: &[i64],
) -> Result<ToroidalWeight> {
    let rs = build_root_system(lambda.ty);
    if root.len() != rs.rank() || !rs.is_positive_root(root) {
        return Err(Error::NotARoot(root.to_vec()));
    }
    if shifts.len() != lambda.k() {
        return Err(Error::Dimension {
            expected: lambda.k(),
            got: shifts.len(),
        });
    }
    let c = rs.coroot_scale(root);
    let kappa: i64 = shifts.iter().zip(&lambda.central).map(|(m, z)| m * z).sum();
    let pairing = rs.pairing(lambda.fin.coeffs(), root);
    let root_w = FiniteWeight::from_root(lambda.ty, root)?;
    let fin = lambda.fin.add(&root_w.scale(c * kappa))?;
    let coef = pairing + c * kappa;
    let deltas = lambda
        .deltas
        .iter()
        .zip(shifts)
        .map(|(d, &m)| d - Rational::from_integer((coef * m).into()))
        .collect();
    Ok(ToroidalWeight {
        ty: lambda.ty,
        central: lambda.central.clone(),
        fin,
        deltas,
    })
}

/// `r_alpha r_beta (lambda)` for `beta = alpha + m_i delta_i` (1-based `i`).
pub fn weyl_translate(
    lambda: &ToroidalWeight,
    root: &[i64],
    i: usize,
    m_i: i64,
) -> Result<ToroidalWeight> {
    if i == 0 || i > lambda.k() {
        return Err(Error::IndexOutOfRange {
            index: i,
            max: lambda.k(),
        });
    }
    let mut shifts = vec![0; lambda.k()];
    shifts[i - 1] = m_i;
    translate_by_root(lambda, root, &shifts)
}

/// Brings `deltas[j]`, `j >= 2`, into `[0, m)` by translations, leaving the
/// finite part and `deltas[1]` untouched.
///
/// Needs central values `(m, 0, .., 0)` and integral `deltas[2..]`.
pub fn normalize_deltas(lambda: &ToroidalWeight, m: i64) -> Result<ToroidalWeight> {
    if m <= 0 {
        return Err(Error::Precondition(format!(
            "level must be positive, got {m}"
        )));
    }
    if lambda.central[0] != m || lambda.central[1..].iter().any(|&z| z != 0) {
        return Err(Error::Precondition(format!(
            "central values must be ({m}, 0, ..), got {:?}",
            lambda.central
        )));
    }
    if lambda.deltas[1..].iter().any(|d| !d.is_integer()) {
        return Err(Error::Precondition("deltas[2..] must be integers".into()));
    }
    let theta = build_root_system(lambda.ty).theta.clone();
    let k = lambda.k();
    let mut cur = lambda.clone();
    for j in 1..k {
        let d = cur.deltas[j].to_integer();
        let q = d.div_floor(&m.into());
        let q: i64 =
            i64::try_from(&q).map_err(|_| Error::Precondition("delta too large".into()))?;
        if q == 0 {
            continue;
        }
        // beta = theta + delta_1 + q delta_j shifts delta_j by -(a + m) q,
        // the inverse delta_1 translation restores the finite part and
        // delta_1, and a pure delta_j translation adds back a q.
        let mut shifts = vec![0; k];
        shifts[0] = 1;
        shifts[j] = q;
        cur = translate_by_root(&cur, &theta, &shifts)?;
        cur = weyl_translate(&cur, &theta, 1, -1)?;
        cur = weyl_translate(&cur, &theta, j + 1, -q)?;
    }
    debug_assert_eq!(cur.fin, lambda.fin);
    debug_assert_eq!(cur.deltas[0], lambda.deltas[0]);
    Ok(cur)
}

/// `(gcd, (gcd, 0, .., 0))`; the gcd of the zero vector is 0.
pub fn gcd_normal_form(central: &[i64]) -> (i64, Vec<i64>) {
    let m = central.iter().fold(0i64, |g, &x| g.gcd(&x));
    let mut normal = vec![0; central.len()];
    if let Some(first) = normal.first_mut() {
        *first = m;
    }
    (m, normal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ty(s: &str) -> LieType {
        s.parse().unwrap()
    }

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn aff(t: &str, level: i64, fin: &[i64], d: i64) -> AffineWeight {
        AffineWeight::new(level, FiniteWeight::new(ty(t), fin.to_vec()).unwrap(), q(d))
    }

    #[test]
    fn dominance_examples() {
        assert!(aff("A2", 1, &[1, 0], 7).is_dominant());
        // omega_1 + theta = 2 omega_1 + omega_2
        assert!(!aff("A2", 1, &[2, 1], 0).is_dominant());
        assert!(aff("A2", 3, &[2, 1], 0).is_dominant());
        assert_eq!(aff("A2", 1, &[2, 1], 0).alpha0_value(), -2);
    }

    #[test]
    fn fundamental_affine_weights() {
        let l1 = AffineWeight::fundamental(ty("D4"), 2).unwrap();
        assert_eq!(l1.level(), 2);
        assert_eq!(l1.alpha0_value(), 0);
        let l0 = AffineWeight::fundamental(ty("D4"), 5).unwrap();
        assert_eq!(l0.alpha0_value(), 1);
    }

    #[test]
    fn geq_examples() {
        let t = aff("A2", 4, &[1, 1], 3);
        let z = aff("A2", 4, &[0, 0], 3);
        assert!(affine_geq(&t, &t).unwrap());
        assert!(affine_geq(&t, &z).unwrap());
        assert!(!affine_geq(&z, &t).unwrap());
        // alpha_{n+1} = delta - theta
        let shifted = aff("A2", 4, &[0, 0], 4);
        assert!(affine_geq(&shifted, &t).unwrap());
        assert!(affine_geq(&t, &aff("A2", 4, &[0, 0], 3)).unwrap());
        assert!(affine_geq(&t, &aff("B3", 4, &[0, 0, 0], 3)).is_err());
    }

    #[test]
    fn min_coset_rep_examples() {
        assert_eq!(
            min_coset_rep(&aff("A2", 2, &[2, 0], 0)).unwrap().coeffs(),
            &[0, 1]
        );
        assert_eq!(
            min_coset_rep(&aff("A2", 1, &[1, 0], 0)).unwrap().coeffs(),
            &[1, 0]
        );
        let rs = build_root_system(ty("E8"));
        let theta = rs.root_to_weight(&rs.theta).unwrap();
        let lam = AffineWeight::new(5, FiniteWeight::new(ty("E8"), theta).unwrap(), q(0));
        assert!(min_coset_rep(&lam).unwrap().is_zero());
        assert!(min_coset_rep(&aff("A2", 1, &[2, 1], 0)).is_err());
    }

    fn class(t: &str, i: usize) -> GammaClass {
        if i == 0 {
            GammaClass::zero(ty(t))
        } else {
            GammaClass::minuscule(ty(t), i).unwrap()
        }
    }

    fn coeffs(ws: &[FiniteWeight]) -> Vec<Vec<i64>> {
        ws.iter().map(|w| w.coeffs().to_vec()).collect()
    }

    #[test]
    fn realization_examples() {
        assert_eq!(
            coeffs(&realizations(ty("A2"), 1, class("A2", 1)).unwrap()),
            vec![vec![1, 0]]
        );
        assert_eq!(
            coeffs(&realizations(ty("A2"), 3, class("A2", 1)).unwrap()),
            vec![vec![0, 2], vec![1, 0], vec![2, 1]]
        );
        assert_eq!(
            coeffs(&realizations(ty("C2"), 1, class("C2", 0)).unwrap()),
            vec![vec![0, 0], vec![0, 1]]
        );
        assert!(realizations(ty("A2"), 0, class("A2", 1)).is_err());
    }

    /// Enumeration oracle: scan the whole box `[0, level]^n`.
    fn realizations_by_box(t: LieType, level: i64, gamma: GammaClass) -> Vec<Vec<i64>> {
        let n = t.rank();
        let mut out = Vec::new();
        let mut c = vec![0i64; n];
        loop {
            let w = FiniteWeight::new(t, c.clone()).unwrap();
            if AffineWeight::new(level, w.clone(), q(0)).is_dominant() && w.gamma_class() == gamma {
                out.push(c.clone());
            }
            let mut i = n;
            loop {
                if i == 0 {
                    out.sort();
                    return out;
                }
                i -= 1;
                c[i] += 1;
                if c[i] <= level {
                    break;
                }
                c[i] = 0;
            }
        }
    }

    #[test]
    fn realizations_match_box_scan() {
        for t in ["A1", "A3", "B3", "C3", "D4", "G2", "F4"] {
            let t = ty(t);
            for gamma in crate::rootdata::gamma_group(t).classes {
                for level in 1..=3 {
                    assert_eq!(
                        coeffs(&realizations(t, level, gamma).unwrap()),
                        realizations_by_box(t, level, gamma),
                        "{t} {gamma} {level}"
                    );
                }
            }
        }
    }

    #[test]
    fn level_one_realizations_unique_in_simply_laced_types() {
        for t in LieType::all_up_to(8)
            .into_iter()
            .filter(|t| t.is_simply_laced())
        {
            for gamma in crate::rootdata::gamma_group(t).classes {
                assert_eq!(realizations(t, 1, gamma).unwrap().len(), 1, "{t} {gamma}");
            }
        }
    }

    fn tor(t: &str, central: &[i64], fin: &[i64], deltas: &[i64]) -> ToroidalWeight {
        ToroidalWeight::new(
            central.to_vec(),
            FiniteWeight::new(ty(t), fin.to_vec()).unwrap(),
            deltas.iter().map(|&d| q(d)).collect(),
        )
        .unwrap()
    }

    /// Oracle: compose the two reflections `r_gamma(l) = l - <l, gamma^vee> gamma`
    /// on the explicit coordinates `(central, fin, deltas)`.
    fn reflect_pair(l: &ToroidalWeight, root: &[i64], shifts: &[i64]) -> ToroidalWeight {
        let rs = build_root_system(l.lie_type());
        let c = rs.coroot_scale(root);
        let root_w = rs.root_to_weight(root).unwrap();
        let reflect = |x: &ToroidalWeight, sh: &[i64]| -> ToroidalWeight {
            let p = rs.pairing(x.fin().coeffs(), root)
                + c * sh.iter().zip(x.central()).map(|(m, z)| m * z).sum::<i64>();
            let fin: Vec<i64> = x
                .fin()
                .coeffs()
                .iter()
                .zip(&root_w)
                .map(|(f, r)| f - p * r)
                .collect();
            let deltas = x
                .deltas()
                .iter()
                .zip(sh)
                .map(|(d, &m)| d - q(p * m))
                .collect();
            ToroidalWeight::new(
                x.central().to_vec(),
                FiniteWeight::new(x.lie_type(), fin).unwrap(),
                deltas,
            )
            .unwrap()
        };
        let zero = vec![0; l.k()];
        reflect(&reflect(l, shifts), &zero)
    }

    #[test]
    fn translate_examples() {
        let l = tor("A1", &[2, 0], &[1], &[0, 0]);
        let t = weyl_translate(&l, &[1], 1, 1).unwrap();
        assert_eq!(t.fin().coeffs(), &[5]);
        assert_eq!(t.deltas(), &[q(-3), q(0)]);
        assert_eq!(t, reflect_pair(&l, &[1], &[1, 0]));

        // zero shift: beta = alpha, r_alpha r_alpha = 1
        let l = tor("A2", &[3, 0, 0], &[2, 1], &[1, 2, 3]);
        assert_eq!(weyl_translate(&l, &[1, 1], 2, 0).unwrap(), l);

        // no central charge in direction i: only delta_i moves, by <l, alpha^vee> m_i
        let t = weyl_translate(&l, &[1, 1], 2, 1).unwrap();
        assert_eq!(t.fin(), l.fin());
        assert_eq!(t.deltas(), &[q(1), q(2 - 3), q(3)]);

        assert!(matches!(
            weyl_translate(&l, &[1, -1], 1, 1),
            Err(Error::NotARoot(_))
        ));
        assert!(matches!(
            weyl_translate(&l, &[1, 1], 4, 1),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn normalize_examples() {
        let l = tor("A2", &[2, 0, 0], &[1, 0], &[0, 1, 1]);
        assert_eq!(normalize_deltas(&l, 2).unwrap(), l);
        let l = tor("A1", &[2, 0, 0], &[1], &[7, 5, 0]);
        let n = normalize_deltas(&l, 2).unwrap();
        assert_eq!(n.deltas(), &[q(7), q(1), q(0)]);
        let l = tor("G2", &[3, 0], &[0, 1], &[0, -1]);
        assert_eq!(normalize_deltas(&l, 3).unwrap().deltas()[1], q(2));
        // level zero vacuum of A1, where single-direction steps alone cannot reach the box
        let l = tor("A1", &[1, 0], &[0], &[0, 1]);
        assert_eq!(normalize_deltas(&l, 1).unwrap().deltas()[1], q(0));
        assert!(normalize_deltas(&tor("A1", &[2, 1], &[0], &[0, 0]), 2).is_err());
        assert!(normalize_deltas(&l, 0).is_err());
    }

    #[test]
    fn gcd_forms() {
        assert_eq!(gcd_normal_form(&[4, 6, 0]), (2, vec![2, 0, 0]));
        assert_eq!(gcd_normal_form(&[0, 0]), (0, vec![0, 0]));
        assert_eq!(gcd_normal_form(&[5]), (5, vec![5]));
        assert_eq!(gcd_normal_form(&[-4, 6]), (2, vec![2, 0]));
    }

    fn small_type() -> impl Strategy<Value = LieType> {
        prop::sample::select(vec![
            ty("A1"),
            ty("A2"),
            ty("B3"),
            ty("C2"),
            ty("D4"),
            ty("G2"),
        ])
    }

    proptest! {
        #[test]
        fn translation_matches_reflection_oracle(
            t in small_type(),
            fin in prop::collection::vec(-4i64..=4, 4),
            central in prop::collection::vec(-3i64..=3, 3),
            shifts in prop::collection::vec(-3i64..=3, 3),
            root_ix in 0usize..64,
        ) {
            let rs = build_root_system(t);
            let root = rs.positive_roots()[root_ix % rs.positive_count].clone();
            let l = ToroidalWeight::new(
                central.clone(),
                FiniteWeight::new(t, fin[..t.rank()].to_vec()).unwrap(),
                vec![q(1), q(0), Rational::new(1.into(), 2.into())],
            ).unwrap();
            let got = translate_by_root(&l, &root, &shifts).unwrap();
            prop_assert_eq!(&got, &reflect_pair(&l, &root, &shifts));
            prop_assert_eq!(got.central(), l.central());
            prop_assert_eq!(got.fin().gamma_class(), l.fin().gamma_class());
        }

        #[test]
        fn normalize_lands_in_box_and_is_idempotent(
            t in small_type(),
            m in 1i64..=5,
            fin in prop::collection::vec(0i64..=3, 4),
            deltas in prop::collection::vec(-20i64..=20, 3),
        ) {
            let l = ToroidalWeight::new(
                vec![m, 0, 0],
                FiniteWeight::new(t, fin[..t.rank()].to_vec()).unwrap(),
                deltas.iter().map(|&d| q(d)).collect(),
            ).unwrap();
            let n = normalize_deltas(&l, m).unwrap();
            for d in &n.deltas()[1..] {
                prop_assert!(*d >= q(0) && *d < q(m));
            }
            prop_assert_eq!(normalize_deltas(&n, m).unwrap(), n.clone());
            prop_assert_eq!(n.fin(), l.fin());
        }
    }
}
