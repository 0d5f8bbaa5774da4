//! Root data of the finite simple types: Cartan matrices, roots, highest
//! roots, comarks and the group `P/Q` of weights modulo roots.
//!
//! Conventions: Bourbaki node numbering, `cartan[i][j] = <alpha_i^vee, alpha_j>`,
//! weights are integer vectors in the fundamental-weight basis, roots are
//! integer vectors in the simple-root basis, long roots have squared length 2.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::{OnceLock, RwLock};

use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::zlattice::{smith, ZLattice};

type Q = Ratio<i64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }
}

/// A finite simple type such as `A2` or `E8`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LieType {
    family: Family,
    rank: usize,
}

impl LieType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B => rank >= 3,
            Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if !ok {
            return Err(Error::InvalidType(format!("{}{}", family.letter(), rank)));
        }
        Ok(LieType { family, rank })
    }

    pub fn family(self) -> Family {
        self.family
    }

    pub fn rank(self) -> usize {
        self.rank
    }

    pub fn is_simply_laced(self) -> bool {
        matches!(self.family, Family::A | Family::D | Family::E)
    }

    /// Every admissible type with rank at most `max_rank`.
    pub fn all_up_to(max_rank: usize) -> Vec<LieType> {
        use Family::*;
        let mut out = Vec::new();
        for family in [A, B, C, D, E, F, G] {
            for rank in 1..=max_rank {
                if let Ok(t) = LieType::new(family, rank) {
                    out.push(t);
                }
            }
        }
        out
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for LieType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidType(s.to_string());
        let mut chars = s.chars();
        let family = match chars.next().ok_or_else(bad)?.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return Err(bad()),
        };
        let rest = chars.as_str();
        if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let rank = rest.parse().map_err(|_| bad())?;
        LieType::new(family, rank)
    }
}

// ---------------------------------------------------------------- tables

/// Squared lengths of the simple roots.
fn simple_norms(t: LieType) -> Vec<Q> {
    let n = t.rank;
    let two = Q::from_integer(2);
    let one = Q::one();
    (1..=n)
        .map(|i| match t.family {
            Family::B if i == n => one,
            Family::C if i < n => one,
            Family::F if i >= 3 => one,
            Family::G if i == 1 => Q::new(2, 3),
            _ => two,
        })
        .collect()
}

/// Dynkin diagram edges, 1-based.
fn edges(t: LieType) -> Vec<(usize, usize)> {
    let n = t.rank;
    let chain = |k: usize| (1..k).map(|i| (i, i + 1)).collect::<Vec<_>>();
    match t.family {
        Family::A | Family::B | Family::C | Family::F | Family::G => chain(n),
        Family::D => {
            let mut e = chain(n - 1);
            e.push((n - 2, n));
            e
        }
        Family::E => {
            let mut e = vec![(1, 3), (2, 4)];
            e.extend((3..n).map(|i| (i, i + 1)));
            e
        }
    }
}

fn j0_table(t: LieType) -> Vec<usize> {
    let n = t.rank;
    match t.family {
        Family::A => (1..=n).collect(),
        Family::B => vec![n],
        Family::C => vec![1],
        Family::D => vec![1, n - 1, n],
        Family::E if n == 6 => vec![1, 6],
        Family::E if n == 7 => vec![7],
        Family::E | Family::F | Family::G => vec![],
    }
}

/// Expected comarks `<omega_i, theta^vee>`, used to cross-check root
/// generation.
fn expected_comarks(t: LieType) -> Vec<i64> {
    let n = t.rank;
    match (t.family, n) {
        (Family::A, _) | (Family::C, _) => vec![1; n],
        (Family::B, _) => (1..=n)
            .map(|i| if i == 1 || i == n { 1 } else { 2 })
            .collect(),
        (Family::D, _) => (1..=n)
            .map(|i| if i == 1 || i >= n - 1 { 1 } else { 2 })
            .collect(),
        (Family::E, 6) => vec![1, 2, 2, 3, 2, 1],
        (Family::E, 7) => vec![2, 2, 3, 4, 3, 2, 1],
        (Family::E, _) => vec![2, 3, 4, 6, 5, 4, 3, 2],
        (Family::F, _) => vec![2, 3, 2, 1],
        (Family::G, _) => vec![1, 2],
    }
}

// ---------------------------------------------------------------- weights

/// Integral weight in the fundamental-weight basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteWeight {
    ty: LieType,
    coeffs: Vec<i64>,
}

impl FiniteWeight {
    pub fn new(ty: LieType, coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.len() != ty.rank {
            return Err(Error::Dimension {
                expected: ty.rank,
                got: coeffs.len(),
            });
        }
        Ok(FiniteWeight { ty, coeffs })
    }

    pub fn zero(ty: LieType) -> Self {
        FiniteWeight {
            ty,
            coeffs: vec![0; ty.rank],
        }
    }

    /// The fundamental weight `omega_i`, 1-based.
    pub fn fundamental(ty: LieType, i: usize) -> Result<Self> {
        if i == 0 || i > ty.rank {
            return Err(Error::IndexOutOfRange {
                index: i,
                max: ty.rank,
            });
        }
        let mut coeffs = vec![0; ty.rank];
        coeffs[i - 1] = 1;
        Ok(FiniteWeight { ty, coeffs })
    }

    /// A root given in simple-root coordinates, as a weight.
    pub fn from_root(ty: LieType, root: &[i64]) -> Result<Self> {
        let rs = build_root_system(ty);
        FiniteWeight::new(ty, rs.root_to_weight(root)?)
    }

    pub fn lie_type(&self) -> LieType {
        self.ty
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_dominant(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    fn same_type(&self, other: &FiniteWeight) -> Result<()> {
        if self.ty != other.ty {
            return Err(Error::TypeMismatch(
                self.ty.to_string(),
                other.ty.to_string(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &FiniteWeight) -> Result<FiniteWeight> {
        self.same_type(other)?;
        Ok(FiniteWeight {
            ty: self.ty,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &FiniteWeight) -> Result<FiniteWeight> {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, k: i64) -> FiniteWeight {
        FiniteWeight {
            ty: self.ty,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// `<self, theta^vee>`, i.e. the comark-weighted coordinate sum.
    pub fn theta_pairing(&self) -> i64 {
        let rs = build_root_system(self.ty);
        self.coeffs
            .iter()
            .zip(&rs.comarks)
            .map(|(c, a)| c * a)
            .sum()
    }

    /// Coordinates in the simple-root basis.
    pub fn alpha_coords(&self) -> Vec<Ratio<i64>> {
        build_root_system(self.ty).alpha_coords(&self.coeffs)
    }

    pub fn in_root_lattice(&self) -> bool {
        self.alpha_coords().iter().all(|c| c.is_integer())
    }

    pub fn gamma_class(&self) -> GammaClass {
        gamma_class(self)
    }
}

// ---------------------------------------------------------------- Gamma

/// Element of `P/Q`, identified by its minuscule representative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GammaClass {
    ty: LieType,
    rep: Option<usize>,
}

impl GammaClass {
    pub fn zero(ty: LieType) -> Self {
        GammaClass { ty, rep: None }
    }

    /// Class of `omega_i` for `i` in J_0.
    pub fn minuscule(ty: LieType, i: usize) -> Result<Self> {
        if !j0_set(ty).contains(&i) {
            return Err(Error::Precondition(format!("{i} is not in J_0 of {ty}")));
        }
        Ok(GammaClass { ty, rep: Some(i) })
    }

    pub fn lie_type(&self) -> LieType {
        self.ty
    }

    /// `None` for the zero class, `Some(i)` for the class of `omega_i`.
    pub fn rep_index(&self) -> Option<usize> {
        self.rep
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_none()
    }

    pub fn representative(&self) -> FiniteWeight {
        match self.rep {
            None => FiniteWeight::zero(self.ty),
            Some(i) => FiniteWeight::fundamental(self.ty, i).expect("J_0 index in range"),
        }
    }

    pub fn add(&self, other: &GammaClass) -> Result<GammaClass> {
        let sum = self.representative().add(&other.representative())?;
        Ok(gamma_class(&sum))
    }

    pub fn neg(&self) -> GammaClass {
        gamma_class(&self.representative().scale(-1))
    }

    /// `"0"` or `"w<i>"`.
    pub fn label(&self) -> String {
        match self.rep {
            None => "0".to_string(),
            Some(i) => format!("w{i}"),
        }
    }

    pub fn parse_label(ty: LieType, s: &str) -> Result<Self> {
        if s == "0" {
            return Ok(GammaClass::zero(ty));
        }
        let i: usize = s
            .strip_prefix('w')
            .and_then(|d| d.parse().ok())
            .ok_or_else(|| Error::Document(format!("bad class label {s:?}")))?;
        GammaClass::minuscule(ty, i)
    }
}

impl fmt::Display for GammaClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

// ---------------------------------------------------------------- root system

#[derive(Debug, Clone)]
pub struct RootSystemData {
    pub ty: LieType,
    pub cartan: Vec<Vec<i64>>,
    /// Inverse Cartan matrix: maps weight coordinates to root coordinates.
    pub cartan_inverse: Vec<Vec<Q>>,
    /// Squared lengths of the simple roots.
    pub norms: Vec<Q>,
    /// All roots (positive first, by height), in simple-root coordinates.
    pub roots: Vec<Vec<i64>>,
    pub positive_count: usize,
    pub theta: Vec<i64>,
    pub theta_s: Vec<i64>,
    pub comarks: Vec<i64>,
    pub j0: Vec<usize>,
}

impl RootSystemData {
    pub fn rank(&self) -> usize {
        self.ty.rank
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.roots[..self.positive_count]
    }

    pub fn is_root(&self, r: &[i64]) -> bool {
        self.roots.iter().any(|x| x == r)
    }

    pub fn is_positive_root(&self, r: &[i64]) -> bool {
        self.positive_roots().iter().any(|x| x == r)
    }

    fn gram(&self, i: usize, j: usize) -> Q {
        Q::from_integer(self.cartan[i][j]) * self.norms[i] / Q::from_integer(2)
    }

    /// `(r|r)` for a vector in simple-root coordinates.
    pub fn norm(&self, r: &[i64]) -> Q {
        let n = self.rank();
        let mut s = Q::zero();
        for i in 0..n {
            for j in 0..n {
                s += Q::from_integer(r[i] * r[j]) * self.gram(i, j);
            }
        }
        s
    }

    /// `2 / (r|r)` for a root `r`; 1 for long roots, 2 or 3 for short ones.
    pub fn coroot_scale(&self, r: &[i64]) -> i64 {
        let c = Q::from_integer(2) / self.norm(r);
        debug_assert!(c.is_integer());
        c.to_integer()
    }

    /// Coordinates of `r^vee` in the simple-coroot basis.
    pub fn coroot(&self, r: &[i64]) -> Vec<i64> {
        let nr = self.norm(r);
        r.iter()
            .zip(&self.norms)
            .map(|(&c, ni)| {
                let x = Q::from_integer(c) * ni / nr;
                debug_assert!(x.is_integer());
                x.to_integer()
            })
            .collect()
    }

    /// `<w, r^vee>` for a weight `w` in fundamental-weight coordinates.
    pub fn pairing(&self, w: &[i64], r: &[i64]) -> i64 {
        w.iter().zip(self.coroot(r)).map(|(a, b)| a * b).sum()
    }

    /// Fundamental-weight coordinates of a vector given in root coordinates.
    pub fn root_to_weight(&self, r: &[i64]) -> Result<Vec<i64>> {
        if r.len() != self.rank() {
            return Err(Error::Dimension {
                expected: self.rank(),
                got: r.len(),
            });
        }
        Ok(self
            .cartan
            .iter()
            .map(|row| row.iter().zip(r).map(|(a, c)| a * c).sum())
            .collect())
    }

    pub fn alpha_coords(&self, w: &[i64]) -> Vec<Q> {
        self.cartan_inverse
            .iter()
            .map(|row| {
                row.iter()
                    .zip(w)
                    .fold(Q::zero(), |acc, (a, &x)| acc + a * Q::from_integer(x))
            })
            .collect()
    }

    fn height(r: &[i64]) -> i64 {
        r.iter().sum()
    }
}

fn invert(m: &[Vec<i64>]) -> Vec<Vec<Q>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Q> = row.iter().map(|&x| Q::from_integer(x)).collect();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n)
            .find(|&i| !a[i][col].is_zero())
            .expect("Cartan matrices are invertible");
        a.swap(col, p);
        let piv = a[col][col];
        for x in a[col].iter_mut() {
            *x /= piv;
        }
        for i in 0..n {
            if i != col && !a[i][col].is_zero() {
                let f = a[i][col];
                let src = a[col].clone();
                for (x, s) in a[i].iter_mut().zip(src) {
                    *x -= f * s;
                }
            }
        }
    }
    a.into_iter().map(|r| r[n..].to_vec()).collect()
}

fn generate(t: LieType) -> Result<RootSystemData> {
    let n = t.rank;
    let norms = simple_norms(t);
    let mut cartan = vec![vec![0i64; n]; n];
    for (i, row) in cartan.iter_mut().enumerate() {
        row[i] = 2;
    }
    for (i, j) in edges(t) {
        let (i, j) = (i - 1, j - 1);
        let ip = -(norms[i].max(norms[j])) / Q::from_integer(2);
        cartan[i][j] = (Q::from_integer(2) * ip / norms[i]).to_integer();
        cartan[j][i] = (Q::from_integer(2) * ip / norms[j]).to_integer();
    }

    // positive roots by height; alpha_i-string through beta gives p - q = -<beta, alpha_i^vee>
    let mut positive: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    let mut known: HashSet<Vec<i64>> = positive.iter().cloned().collect();
    let mut frontier = positive.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for beta in &frontier {
            for i in 0..n {
                let mut q = 0;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if known.contains(&down) {
                        q += 1;
                    } else {
                        break;
                    }
                }
                let pair: i64 = (0..n).map(|j| cartan[i][j] * beta[j]).sum();
                let p = q - pair;
                if p > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if known.insert(up.clone()) {
                        next.push(up);
                    }
                }
            }
        }
        positive.extend(next.iter().cloned());
        frontier = next;
    }
    positive.sort_by(|a, b| {
        RootSystemData::height(a)
            .cmp(&RootSystemData::height(b))
            .then_with(|| a.cmp(b))
    });
    let positive_count = positive.len();
    let mut roots = positive.clone();
    roots.extend(
        positive
            .iter()
            .map(|r| r.iter().map(|x| -x).collect::<Vec<_>>()),
    );

    let cartan_inverse = invert(&cartan);
    let mut data = RootSystemData {
        ty: t,
        cartan,
        cartan_inverse,
        norms,
        roots,
        positive_count,
        theta: Vec::new(),
        theta_s: Vec::new(),
        comarks: Vec::new(),
        j0: j0_table(t),
    };
    let theta = positive.last().cloned().expect("nonempty root system");
    let long = data.norm(&theta);
    let theta_s = positive
        .iter()
        .rev()
        .find(|r| data.norm(r) < long)
        .cloned()
        .unwrap_or_else(|| theta.clone());
    data.comarks = data.coroot(&theta);
    data.theta = theta;
    data.theta_s = theta_s;

    if data.comarks != expected_comarks(t) {
        return Err(Error::Internal(format!(
            "comarks of {t} computed as {:?}, table says {:?}",
            data.comarks,
            expected_comarks(t)
        )));
    }
    Ok(data)
}

static CACHE: OnceLock<RwLock<HashMap<LieType, &'static RootSystemData>>> = OnceLock::new();

/// Root data of `t`, generated once and cached for the life of the process.
pub fn build_root_system(t: LieType) -> &'static RootSystemData {
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(d) = cache.read().expect("cache lock").get(&t) {
        return d;
    }
    let data = generate(t).unwrap_or_else(|e| panic!("{e}"));
    let mut w = cache.write().expect("cache lock");
    w.entry(t).or_insert_with(|| Box::leak(Box::new(data)))
}

/// J_0: indices of the minuscule fundamental weights representing the
/// nonzero classes of `P/Q`.
pub fn j0_set(t: LieType) -> Vec<usize> {
    j0_table(t)
}

/// `P/Q` for type `t`.
#[derive(Debug, Clone)]
pub struct GammaGroup {
    pub ty: LieType,
    /// Smith invariant factors of the Cartan matrix, 1s omitted.
    pub invariant_factors: Vec<i64>,
    pub classes: Vec<GammaClass>,
}

impl GammaGroup {
    pub fn order(&self) -> usize {
        self.classes.len()
    }

    pub fn project(&self, w: &FiniteWeight) -> GammaClass {
        gamma_class(w)
    }
}

pub fn gamma_group(t: LieType) -> GammaGroup {
    let rs = build_root_system(t);
    let snf = smith(&rs.cartan, t.rank);
    let invariant_factors = snf.diagonal.into_iter().filter(|&d| d != 1).collect();
    let mut classes = vec![GammaClass::zero(t)];
    classes.extend(rs.j0.iter().map(|&i| GammaClass {
        ty: t,
        rep: Some(i),
    }));
    GammaGroup {
        ty: t,
        invariant_factors,
        classes,
    }
}

/// Class of `w` modulo the root lattice.
pub fn gamma_class(w: &FiniteWeight) -> GammaClass {
    let rs = build_root_system(w.ty);
    let coords = rs.alpha_coords(&w.coeffs);
    if coords.iter().all(|c| c.is_integer()) {
        return GammaClass::zero(w.ty);
    }
    for &i in &rs.j0 {
        let shifted = coords
            .iter()
            .zip(&rs.cartan_inverse)
            .all(|(c, row)| (c - row[i - 1]).is_integer());
        if shifted {
            return GammaClass {
                ty: w.ty,
                rep: Some(i),
            };
        }
    }
    unreachable!("every weight of {} is congruent to 0 or a J_0 weight", w.ty)
}

/// The root lattice of `t` in fundamental-weight coordinates.
pub fn root_lattice(t: LieType) -> ZLattice<i64> {
    let rs = build_root_system(t);
    // rows of the Cartan matrix transpose are the simple roots in weight coordinates
    let rows: Vec<Vec<i64>> = (0..t.rank)
        .map(|j| (0..t.rank).map(|i| rs.cartan[i][j]).collect())
        .collect();
    ZLattice::hnf(&rows, t.rank).expect("square matrix")
}
