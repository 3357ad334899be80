//! Cartan data, positive roots, the dominance order and Weyl group actions.
//!
//! Weights are always stored in the basis of fundamental dominant weights,
//! so `(a, b)` for G₂ means `a·ϖ₁ + b·ϖ₂` with α₁ short and α₂ long
//! (Bourbaki ordering). Root-lattice coordinates are a derived view used for
//! dominance tests.
//!
//! Pairings use the invariant form normalized so that short roots have
//! squared length 2. With that normalization a Cartan matrix row
//! `cartan[i]` is the simple root αᵢ written in fundamental coordinates,
//! i.e. `cartan[i][j] = ⟨αᵢ, αⱼ∨⟩`.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weight in fundamental-weight coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(Vec<i64>);

impl Weight {
    pub fn new(coords: Vec<i64>) -> Self {
        Weight(coords)
    }

    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|&c| c * k).collect())
    }

    /// True when every coordinate is divisible by `q`.
    pub fn divisible_by(&self, q: i64) -> bool {
        self.0.iter().all(|&c| c % q == 0)
    }
}

impl From<Vec<i64>> for Weight {
    fn from(v: Vec<i64>) -> Self {
        Weight(v)
    }
}

impl<const N: usize> From<[i64; N]> for Weight {
    fn from(v: [i64; N]) -> Self {
        Weight(v.to_vec())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        debug_assert_eq!(self.rank(), rhs.rank());
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        debug_assert_eq!(self.rank(), rhs.rank());
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|c| -c).collect())
    }
}

impl Mul<&Weight> for i64 {
    type Output = Weight;
    fn mul(self, rhs: &Weight) -> Weight {
        rhs.scale(self)
    }
}

/// An element of the root lattice in simple-root coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RootVector(Vec<i64>);

impl RootVector {
    pub fn new(coords: Vec<i64>) -> Self {
        RootVector(coords)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }
}

impl<const N: usize> From<[i64; N]> for RootVector {
    fn from(v: [i64; N]) -> Self {
        RootVector(v.to_vec())
    }
}

impl fmt::Display for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| {
                if c == 1 {
                    format!("a{}", i + 1)
                } else {
                    format!("{c}a{}", i + 1)
                }
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join("+"))
        }
    }
}

/// Series of a classical or exceptional root system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Series {
    A,
    B,
    C,
    D,
    G,
    /// Built from a user-supplied Cartan matrix.
    Custom,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TypeLabel {
    pub series: Series,
    pub rank: usize,
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.series {
            Series::A => "A",
            Series::B => "B",
            Series::C => "C",
            Series::D => "D",
            Series::G => "G",
            Series::Custom => "Custom",
        };
        write!(f, "{s}{}", self.rank)
    }
}

impl FromStr for TypeLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let unsupported = || Error::UnsupportedType(s.to_string());
        let mut chars = t.chars();
        let series = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Series::A,
            Some('B') => Series::B,
            Some('C') => Series::C,
            Some('D') => Series::D,
            Some('G') => Series::G,
            _ => return Err(unsupported()),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| unsupported())?;
        let ok = match series {
            Series::A => rank >= 1,
            Series::B | Series::C => rank >= 2,
            Series::D => rank >= 3,
            Series::G => rank == 2,
            Series::Custom => false,
        };
        if !ok || rank > 8 {
            return Err(unsupported());
        }
        Ok(TypeLabel { series, rank })
    }
}

fn cartan_for(label: TypeLabel) -> Vec<Vec<i64>> {
    let n = label.rank;
    let mut m = vec![vec![0i64; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 2;
    }
    match label.series {
        Series::G => {
            // ⟨α₁, α₂∨⟩ = −1, ⟨α₂, α₁∨⟩ = −3
            m[0][1] = -1;
            m[1][0] = -3;
        }
        Series::A | Series::B | Series::C => {
            for i in 0..n - 1 {
                m[i][i + 1] = -1;
                m[i + 1][i] = -1;
            }
            match label.series {
                // αₙ short
                Series::B => m[n - 2][n - 1] = -2,
                // αₙ long
                Series::C => m[n - 1][n - 2] = -2,
                _ => {}
            }
        }
        Series::D => {
            for i in 0..n - 2 {
                m[i][i + 1] = -1;
                m[i + 1][i] = -1;
            }
            m[n - 3][n - 1] = -1;
            m[n - 1][n - 3] = -1;
        }
        Series::Custom => unreachable!("custom types carry their own matrix"),
    }
    m
}

type Rational = Ratio<i64>;

/// Cartan data together with the derived root-system invariants.
#[derive(Serialize)]
pub struct RootSystem {
    type_label: TypeLabel,
    cartan_matrix: Vec<Vec<i64>>,
    positive_roots: Vec<RootVector>,
    /// Squared length of each positive root, short roots normalized to 2.
    root_lengths: Vec<i64>,
    rho: Weight,
    highest_short_root: RootVector,
    weyl_group_order: u64,
    #[serde(skip)]
    half_norms: Vec<i64>,
    #[serde(skip)]
    inverse_cartan: Vec<Vec<Rational>>,
    #[serde(skip)]
    gram_scale: i64,
    #[serde(skip)]
    gram: Vec<Vec<i64>>,
    #[serde(skip)]
    longest_word: Vec<usize>,
    #[serde(skip)]
    pub(crate) weyl_cache: Mutex<HashMap<Weight, Arc<crate::character::Terms>>>,
}

impl fmt::Debug for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RootSystem")
            .field("type_label", &self.type_label)
            .field("cartan_matrix", &self.cartan_matrix)
            .finish()
    }
}

impl PartialEq for RootSystem {
    fn eq(&self, other: &Self) -> bool {
        self.cartan_matrix == other.cartan_matrix
    }
}

impl Eq for RootSystem {}

/// Builds the root system for a type label such as `"G2"` or `"A1"`.
pub fn build_root_system(type_label: &str) -> Result<Arc<RootSystem>> {
    let label: TypeLabel = type_label.parse()?;
    RootSystem::from_cartan_labeled(label, cartan_for(label)).map(Arc::new)
}

impl RootSystem {
    /// Builds a root system from an arbitrary (symmetrizable, finite type)
    /// Cartan matrix in the `cartan[i][j] = ⟨αᵢ, αⱼ∨⟩` convention.
    pub fn from_cartan(cartan: Vec<Vec<i64>>) -> Result<Arc<RootSystem>> {
        let label = TypeLabel {
            series: Series::Custom,
            rank: cartan.len(),
        };
        Self::from_cartan_labeled(label, cartan).map(Arc::new)
    }

    fn from_cartan_labeled(type_label: TypeLabel, cartan: Vec<Vec<i64>>) -> Result<RootSystem> {
        let n = cartan.len();
        if n == 0 || cartan.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidCartan("matrix must be square and nonempty".into()));
        }
        for i in 0..n {
            if cartan[i][i] != 2 {
                return Err(Error::InvalidCartan(format!("diagonal entry {i} is not 2")));
            }
            for j in 0..n {
                if i != j && (cartan[i][j] > 0 || (cartan[i][j] == 0) != (cartan[j][i] == 0)) {
                    return Err(Error::InvalidCartan(format!("bad off-diagonal entry ({i},{j})")));
                }
            }
        }
        let half_norms = symmetrizer(&cartan)?;
        let inverse_cartan = invert(&cartan)
            .ok_or_else(|| Error::InvalidCartan("matrix is singular".into()))?;

        // (ϖᵢ, ϖⱼ) = (C⁻¹)ᵢⱼ·dⱼ, scaled to integers.
        let mut gram_r = vec![vec![Rational::zero(); n]; n];
        let mut denom_lcm = 1i64;
        for i in 0..n {
            for j in 0..n {
                gram_r[i][j] = inverse_cartan[i][j] * Rational::from_integer(half_norms[j]);
                denom_lcm = denom_lcm.lcm(gram_r[i][j].denom());
            }
        }
        let gram: Vec<Vec<i64>> = gram_r
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| (x * Rational::from_integer(denom_lcm)).to_integer())
                    .collect()
            })
            .collect();

        let mut rs = RootSystem {
            type_label,
            cartan_matrix: cartan,
            positive_roots: Vec::new(),
            root_lengths: Vec::new(),
            rho: Weight(vec![1; n]),
            highest_short_root: RootVector(vec![0; n]),
            weyl_group_order: 0,
            half_norms,
            inverse_cartan,
            gram_scale: denom_lcm,
            gram,
            longest_word: Vec::new(),
            weyl_cache: Mutex::new(HashMap::new()),
        };
        rs.positive_roots = rs.close_positive_roots()?;
        rs.root_lengths = rs.positive_roots.iter().map(|r| rs.root_norm(r)).collect();
        let min_len = *rs.root_lengths.iter().min().expect("at least one root");
        rs.highest_short_root = rs
            .positive_roots
            .iter()
            .zip(&rs.root_lengths)
            .filter(|(_, &l)| l == min_len)
            .map(|(r, _)| r.clone())
            .max_by_key(|r| (r.height(), r.clone()))
            .expect("short roots exist");
        rs.weyl_group_order = rs.weyl_orbit(&rs.rho).len() as u64;
        rs.longest_word = rs.compute_longest_word();
        Ok(rs)
    }

    pub fn type_label(&self) -> TypeLabel {
        self.type_label
    }

    pub fn rank(&self) -> usize {
        self.cartan_matrix.len()
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan_matrix
    }

    pub fn positive_roots(&self) -> &[RootVector] {
        &self.positive_roots
    }

    pub fn root_lengths(&self) -> &[i64] {
        &self.root_lengths
    }

    pub fn rho(&self) -> &Weight {
        &self.rho
    }

    pub fn highest_short_root(&self) -> &RootVector {
        &self.highest_short_root
    }

    pub fn weyl_group_order(&self) -> u64 {
        self.weyl_group_order
    }

    pub fn check_rank(&self, w: &Weight) -> Result<()> {
        if w.rank() != self.rank() {
            return Err(Error::RankMismatch {
                weight: w.clone(),
                expected: self.rank(),
                found: w.rank(),
            });
        }
        Ok(())
    }

    /// The simple root αᵢ in fundamental coordinates.
    pub fn simple_root_weight(&self, i: usize) -> Weight {
        Weight(self.cartan_matrix[i].clone())
    }

    /// A root-lattice vector converted to fundamental coordinates.
    pub fn root_to_weight(&self, v: &RootVector) -> Weight {
        let n = self.rank();
        let mut out = vec![0i64; n];
        for (i, &c) in v.0.iter().enumerate() {
            for (j, o) in out.iter_mut().enumerate() {
                *o += c * self.cartan_matrix[i][j];
            }
        }
        Weight(out)
    }

    /// Squared length of a root-lattice vector under the normalized form.
    fn root_norm(&self, v: &RootVector) -> i64 {
        let n = self.rank();
        let mut s = 0;
        for i in 0..n {
            for j in 0..n {
                s += v.0[i] * v.0[j] * self.cartan_matrix[i][j] * self.half_norms[j];
            }
        }
        s
    }

    /// ⟨β, αᵢ∨⟩ for β in root coordinates.
    fn root_simple_pairing(&self, beta: &RootVector, i: usize) -> i64 {
        beta.0
            .iter()
            .enumerate()
            .map(|(j, &c)| c * self.cartan_matrix[j][i])
            .sum()
    }

    fn close_positive_roots(&self) -> Result<Vec<RootVector>> {
        let n = self.rank();
        let mut all: HashSet<RootVector> = HashSet::new();
        let mut layer: Vec<RootVector> = (0..n)
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = 1;
                RootVector(v)
            })
            .collect();
        all.extend(layer.iter().cloned());
        // Finite type roots number at most n(n+1) for classical ranks here;
        // the guard only trips on non-finite-type input.
        let limit = 64 * n * n + 64;
        while !layer.is_empty() {
            let mut next = Vec::new();
            for beta in &layer {
                for i in 0..n {
                    // Length of the αᵢ-string below β.
                    let mut down = 0;
                    let mut probe = beta.clone();
                    loop {
                        probe.0[i] -= 1;
                        if probe.0[i] < 0 || !all.contains(&probe) {
                            break;
                        }
                        down += 1;
                    }
                    let up = down - self.root_simple_pairing(beta, i);
                    if up > 0 {
                        let mut gamma = beta.clone();
                        gamma.0[i] += 1;
                        if all.insert(gamma.clone()) {
                            next.push(gamma);
                        }
                    }
                }
            }
            if all.len() > limit {
                return Err(Error::InvalidCartan("root closure does not terminate".into()));
            }
            layer = next;
        }
        let mut roots: Vec<RootVector> = all.into_iter().collect();
        roots.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| b.cmp(a)));
        Ok(roots)
    }

    /// Root coordinates of a weight, or `NotInRootLattice`.
    pub fn weight_to_root_coords(&self, w: &Weight) -> Result<RootVector> {
        self.check_rank(w)?;
        let rc = self.rational_root_coords(w);
        if rc.iter().all(|x| x.is_integer()) {
            Ok(RootVector(rc.iter().map(|x| x.to_integer()).collect()))
        } else {
            Err(Error::NotInRootLattice(w.clone()))
        }
    }

    pub(crate) fn rational_root_coords(&self, w: &Weight) -> Vec<Rational> {
        let n = self.rank();
        let mut out = vec![Rational::zero(); n];
        for (i, &c) in w.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let c = Rational::from_integer(c);
            for (j, o) in out.iter_mut().enumerate() {
                *o += c * self.inverse_cartan[i][j];
            }
        }
        out
    }

    /// `mu ≤ lam` in the dominance order: `lam − mu` is a non-negative
    /// integer combination of simple roots.
    pub fn dominance_leq(&self, mu: &Weight, lam: &Weight) -> bool {
        let diff = lam - mu;
        self.rational_root_coords(&diff)
            .iter()
            .all(|x| x.is_integer() && !x.is_negative())
    }

    pub fn dominance_lt(&self, mu: &Weight, lam: &Weight) -> bool {
        mu != lam && self.dominance_leq(mu, lam)
    }

    /// ⟨lam, β∨⟩ for a root β (positive or negative).
    pub fn coroot_pairing(&self, lam: &Weight, root: &RootVector) -> Result<i64> {
        self.check_rank(lam)?;
        let neg = RootVector(root.0.iter().map(|c| -c).collect());
        if !(self.positive_roots.contains(root) || self.positive_roots.contains(&neg)) {
            return Err(Error::NotARoot(root.to_string()));
        }
        Ok(self.pairing_unchecked(lam, root))
    }

    fn pairing_unchecked(&self, lam: &Weight, root: &RootVector) -> i64 {
        // (λ, αᵢ) = λᵢ·dᵢ
        let num: i64 = root
            .0
            .iter()
            .zip(&lam.0)
            .zip(&self.half_norms)
            .map(|((c, l), d)| c * l * d)
            .sum::<i64>()
            * 2;
        let den = self.root_norm(root);
        debug_assert_eq!(num % den, 0, "coroot pairing must be integral");
        num / den
    }

    /// Scaled invariant form: `N·(λ, μ)` for the fixed scale `N` returned by
    /// [`RootSystem::form_scale`].
    pub fn form(&self, lam: &Weight, mu: &Weight) -> i64 {
        let n = self.rank();
        let mut s = 0;
        for i in 0..n {
            if lam.0[i] == 0 {
                continue;
            }
            for j in 0..n {
                s += lam.0[i] * mu.0[j] * self.gram[i][j];
            }
        }
        s
    }

    pub fn form_scale(&self) -> i64 {
        self.gram_scale
    }

    pub fn simple_reflection(&self, w: &Weight, i: usize) -> Weight {
        let c = w.0[i];
        if c == 0 {
            return w.clone();
        }
        Weight(
            w.0.iter()
                .zip(&self.cartan_matrix[i])
                .map(|(x, a)| x - c * a)
                .collect(),
        )
    }

    /// The unique dominant weight in the Weyl orbit of `w`.
    pub fn dominant_representative(&self, w: &Weight) -> Weight {
        let mut cur = w.clone();
        while let Some(i) = cur.0.iter().position(|&c| c < 0) {
            cur = self.simple_reflection(&cur, i);
        }
        cur
    }

    pub fn weyl_orbit(&self, lam: &Weight) -> BTreeSet<Weight> {
        let mut seen: HashSet<Weight> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(lam.clone());
        queue.push_back(lam.clone());
        while let Some(w) = queue.pop_front() {
            for i in 0..self.rank() {
                let r = self.simple_reflection(&w, i);
                if seen.insert(r.clone()) {
                    queue.push_back(r);
                }
            }
        }
        seen.into_iter().collect()
    }

    fn compute_longest_word(&self) -> Vec<usize> {
        // Walk ρ down to the antidominant chamber; the word used is w₀.
        let mut cur = self.rho.clone();
        let mut word = Vec::new();
        while let Some(i) = cur.0.iter().position(|&c| c > 0) {
            cur = self.simple_reflection(&cur, i);
            word.push(i);
        }
        word
    }

    pub fn longest_element_action(&self, lam: &Weight) -> Weight {
        self.longest_word
            .iter()
            .fold(lam.clone(), |w, &i| self.simple_reflection(&w, i))
    }

    /// Dominant weights with every coordinate below `p^r`, lexicographic.
    pub fn restricted_weights(&self, p: u64, r: u32) -> Vec<Weight> {
        let q = p.pow(r) as i64;
        let n = self.rank();
        let mut out = Vec::new();
        let mut cur = vec![0i64; n];
        loop {
            out.push(Weight(cur.clone()));
            let mut k = n;
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                cur[k] += 1;
                if cur[k] < q {
                    break;
                }
                cur[k] = 0;
            }
        }
    }

    pub fn is_restricted(&self, lam: &Weight, p: u64, r: u32) -> bool {
        let q = p.pow(r) as i64;
        lam.0.iter().all(|&c| (0..q).contains(&c))
    }

    /// `2(p^r − 1)ρ + w₀·lam` for a restricted weight.
    pub fn hat_weight(&self, lam: &Weight, p: u64, r: u32) -> Result<Weight> {
        self.check_rank(lam)?;
        if !self.is_restricted(lam, p, r) {
            return Err(Error::NotRestricted(lam.clone()));
        }
        let q = p.pow(r) as i64;
        Ok(&self.rho.scale(2 * (q - 1)) + &self.longest_element_action(lam))
    }

    /// All dominant `mu ≤ lam`, each with its root-coordinate depth
    /// `lam − mu` (as integers; only meaningful when `lam` is dominant).
    pub(crate) fn dominant_weights_below(&self, lam: &Weight) -> Vec<(Weight, Vec<i64>)> {
        let n = self.rank();
        let top = self.rational_root_coords(lam);
        let bounds: Vec<i64> = top.iter().map(|x| x.floor().to_integer().max(0)).collect();
        let mut out = Vec::new();
        let mut depth = vec![0i64; n];
        loop {
            let mut w = lam.clone();
            for (i, &k) in depth.iter().enumerate() {
                if k != 0 {
                    for j in 0..n {
                        w.0[j] -= k * self.cartan_matrix[i][j];
                    }
                }
            }
            if w.is_dominant() {
                out.push((w, depth.clone()));
            }
            let mut k = n;
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                depth[k] += 1;
                if depth[k] <= bounds[k] {
                    break;
                }
                depth[k] = 0;
            }
        }
    }

    /// Upper bound on fundamental coordinate `j` of any dominant `mu` with
    /// `scale·mu ≤ nu`.
    pub(crate) fn dominated_box_bound(&self, nu: &Weight, scale: i64, j: usize) -> i64 {
        let top = self.rational_root_coords(nu);
        let diag = self.inverse_cartan[j][j] * Rational::from_integer(scale);
        (top[j] / diag).floor().to_integer().max(0)
    }

    /// Product formula for the dimension of the irreducible characteristic-zero
    /// module of highest weight `lam`.
    pub(crate) fn weyl_dimension_product(&self, lam: &Weight) -> BigInt {
        let shifted = lam + &self.rho;
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for beta in &self.positive_roots {
            num *= BigInt::from(self.pairing_unchecked(&shifted, beta));
            den *= BigInt::from(self.pairing_unchecked(&self.rho, beta));
        }
        let (q, r) = num.div_rem(&den);
        assert!(r.is_zero(), "Weyl dimension quotient must be exact");
        q
    }
}

/// Diagonal `d` with `cartan[i][j]·d[j]` symmetric, each connected component
/// scaled so its shortest simple root has `d = 1`.
fn symmetrizer(cartan: &[Vec<i64>]) -> Result<Vec<i64>> {
    let n = cartan.len();
    let mut d: Vec<Option<Rational>> = vec![None; n];
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        let mut component = vec![start];
        d[start] = Some(Rational::one());
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if i == j || cartan[i][j] == 0 {
                    continue;
                }
                let di = d[i].expect("visited");
                let dj = di * Rational::new(cartan[j][i], cartan[i][j]);
                match d[j] {
                    None => {
                        d[j] = Some(dj);
                        component.push(j);
                        stack.push(j);
                    }
                    Some(existing) if existing != dj => {
                        return Err(Error::InvalidCartan("matrix is not symmetrizable".into()));
                    }
                    Some(_) => {}
                }
            }
        }
        let min = component
            .iter()
            .map(|&i| d[i].expect("visited"))
            .min()
            .expect("nonempty component");
        for &i in &component {
            d[i] = Some(d[i].expect("visited") / min);
        }
    }
    d.into_iter()
        .map(|x| {
            let x = x.expect("all visited");
            if x.is_integer() {
                Ok(x.to_integer())
            } else {
                Err(Error::InvalidCartan("non-integral root length ratio".into()))
            }
        })
        .collect()
}

fn invert(m: &[Vec<i64>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Rational> = row.iter().map(|&x| Rational::from_integer(x)).collect();
            r.extend((0..n).map(|j| {
                if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let pv = a[col][col];
        for x in a[col].iter_mut() {
            *x /= pv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                let pivot_row = a[col].clone();
                for (x, p) in a[r].iter_mut().zip(pivot_row) {
                    *x -= f * p;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g2() -> Arc<RootSystem> {
        build_root_system("G2").unwrap()
    }

    fn w(a: i64, b: i64) -> Weight {
        Weight::from([a, b])
    }

    #[test]
    fn g2_cartan_and_roots() {
        let rs = g2();
        assert_eq!(rs.cartan_matrix()[1][0], -3);
        assert_eq!(rs.cartan_matrix()[0][1], -1);
        assert_eq!(rs.positive_roots().len(), 6);
        assert_eq!(rs.weyl_group_order(), 12);
        assert_eq!(rs.rho(), &w(1, 1));
        assert_eq!(rs.highest_short_root(), &RootVector::from([2, 1]));
        let mut lens = rs.root_lengths().to_vec();
        lens.sort();
        assert_eq!(lens, vec![2, 2, 2, 6, 6, 6]);
    }

    /// Independent enumeration: every nonnegative integer vector with small
    /// coordinates whose squared length is a root length and which is a
    /// nonnegative combination is checked against the reflection closure of
    /// the simple roots under the full Weyl group.
    #[test]
    fn g2_positive_roots_match_weyl_images_of_simple_roots() {
        let rs = g2();
        let mut from_orbits = BTreeSet::new();
        for i in 0..2 {
            for img in rs.weyl_orbit(&rs.simple_root_weight(i)) {
                let rc = rs.weight_to_root_coords(&img).unwrap();
                if rc.coords().iter().all(|&c| c >= 0) {
                    from_orbits.insert(rc);
                }
            }
        }
        let closed: BTreeSet<_> = rs.positive_roots().iter().cloned().collect();
        assert_eq!(from_orbits, closed);
    }

    #[test]
    fn a1_basics() {
        let rs = build_root_system("A1").unwrap();
        assert_eq!(rs.cartan_matrix(), &[vec![2]]);
        assert_eq!(rs.positive_roots().len(), 1);
        assert_eq!(rs.weyl_group_order(), 2);
        assert_eq!(rs.longest_element_action(&Weight::from([1])), Weight::from([-1]));
        assert_eq!(
            rs.restricted_weights(3, 1),
            vec![Weight::from([0]), Weight::from([1]), Weight::from([2])]
        );
    }

    #[test]
    fn classical_root_counts() {
        for (label, roots, order) in [
            ("A2", 3, 6),
            ("A3", 6, 24),
            ("B2", 4, 8),
            ("B3", 9, 48),
            ("C3", 9, 48),
            ("D4", 12, 192),
        ] {
            let rs = build_root_system(label).unwrap();
            assert_eq!(rs.positive_roots().len(), roots, "{label}");
            assert_eq!(rs.weyl_group_order(), order, "{label}");
        }
    }

    #[test]
    fn unsupported_labels() {
        for bad in ["G3", "E8", "A0", "", "Z2", "B1"] {
            assert!(matches!(build_root_system(bad), Err(Error::UnsupportedType(_))), "{bad}");
        }
    }

    #[test]
    fn root_coordinates() {
        let rs = g2();
        assert_eq!(rs.weight_to_root_coords(&w(2, 1)).unwrap(), RootVector::from([7, 4]));
        assert_eq!(rs.weight_to_root_coords(&w(0, 0)).unwrap(), RootVector::from([0, 0]));
        assert_eq!(rs.weight_to_root_coords(&w(1, 0)).unwrap(), RootVector::from([2, 1]));
        // multiply back
        for a in -3..4 {
            for b in -3..4 {
                let rc = rs.weight_to_root_coords(&w(a, b)).unwrap();
                assert_eq!(rs.root_to_weight(&rc), w(a, b));
            }
        }
        let a2 = build_root_system("A2").unwrap();
        assert!(matches!(
            a2.weight_to_root_coords(&Weight::from([1, 0])),
            Err(Error::NotInRootLattice(_))
        ));
    }

    #[test]
    fn dominance_examples() {
        let rs = g2();
        assert!(rs.dominance_leq(&w(0, 0), &w(2, 1)));
        assert!(!rs.dominance_leq(&w(1, 1), &w(2, 0)));
        assert!(rs.dominance_leq(&w(2, 1), &w(2, 1)));
    }

    #[test]
    fn coroot_pairings() {
        let rs = g2();
        let a0 = rs.highest_short_root().clone();
        assert_eq!(rs.coroot_pairing(&w(2, 1), &a0).unwrap(), 7);
        assert_eq!(rs.coroot_pairing(&w(1, 0), &RootVector::from([1, 0])).unwrap(), 1);
        assert_eq!(rs.coroot_pairing(&w(0, 1), &a0).unwrap(), 3);
        assert!(rs.coroot_pairing(&w(1, 0), &RootVector::from([1, 1]).clone()).is_ok());
        assert!(matches!(
            rs.coroot_pairing(&w(1, 0), &RootVector::from([2, 2])),
            Err(Error::NotARoot(_))
        ));
        for (beta, len) in rs.positive_roots().iter().zip(rs.root_lengths()) {
            let bw = rs.root_to_weight(beta);
            assert_eq!(rs.coroot_pairing(&bw, beta).unwrap(), 2);
            // brute force via the scaled form
            let ratio = 2 * rs.form(&w(2, 1), &bw) / rs.form(&bw, &bw);
            assert_eq!(ratio, rs.coroot_pairing(&w(2, 1), beta).unwrap());
            assert!(*len == 2 || *len == 6);
        }
    }

    #[test]
    fn orbits() {
        let rs = g2();
        assert_eq!(rs.weyl_orbit(&w(0, 0)).len(), 1);
        let short: BTreeSet<Weight> = rs
            .positive_roots()
            .iter()
            .zip(rs.root_lengths())
            .filter(|(_, &l)| l == 2)
            .flat_map(|(r, _)| {
                let x = rs.root_to_weight(r);
                [-&x, x]
            })
            .collect();
        assert_eq!(rs.weyl_orbit(&w(1, 0)), short);
        assert_eq!(rs.weyl_orbit(&w(1, 1)).len(), 12);
    }

    #[test]
    fn longest_element_and_hat() {
        let rs = g2();
        assert_eq!(rs.longest_element_action(&w(1, 0)), w(-1, 0));
        assert_eq!(rs.longest_element_action(&w(0, 0)), w(0, 0));
        assert_eq!(rs.hat_weight(&w(0, 1), 2, 1).unwrap(), w(2, 1));
        assert_eq!(rs.hat_weight(&w(1, 1), 2, 1).unwrap(), w(1, 1));
        assert_eq!(rs.hat_weight(&w(0, 0), 2, 1).unwrap(), w(2, 2));
        assert!(matches!(rs.hat_weight(&w(2, 0), 2, 1), Err(Error::NotRestricted(_))));
        for lam in rs.restricted_weights(2, 1) {
            assert_eq!(rs.hat_weight(&lam, 2, 1).unwrap(), &w(2, 2) - &lam);
        }
    }

    #[test]
    fn restricted_sets() {
        let rs = g2();
        assert_eq!(
            rs.restricted_weights(2, 1),
            vec![w(0, 0), w(0, 1), w(1, 0), w(1, 1)]
        );
        assert_eq!(rs.restricted_weights(2, 2).len(), 16);
    }

    #[test]
    fn dominance_is_a_partial_order_on_box() {
        let rs = g2();
        let pts: Vec<Weight> = (0..=4).flat_map(|a| (0..=4).map(move |b| w(a, b))).collect();
        for x in &pts {
            assert!(rs.dominance_leq(x, x));
            for y in &pts {
                if rs.dominance_leq(x, y) && rs.dominance_leq(y, x) {
                    assert_eq!(x, y);
                }
                for z in &pts {
                    if rs.dominance_leq(x, y) && rs.dominance_leq(y, z) {
                        assert!(rs.dominance_leq(x, z));
                    }
                }
            }
        }
    }

    #[test]
    fn orbit_structure() {
        let rs = g2();
        for a in -3..=3 {
            for b in -3..=3 {
                let orbit = rs.weyl_orbit(&w(a, b));
                assert_eq!(rs.weyl_group_order() % orbit.len() as u64, 0);
                assert_eq!(orbit.iter().filter(|x| x.is_dominant()).count(), 1);
                let lam = w(a, b);
                let img = rs.longest_element_action(&lam);
                assert_eq!(rs.longest_element_action(&img), lam);
                if lam.is_dominant() && !lam.is_zero() {
                    assert!(img.coords().iter().all(|&c| c <= 0));
                }
            }
        }
    }

    #[test]
    fn weyl_dimension_product_values() {
        let rs = g2();
        for (lam, d) in [((1, 1), 64), ((0, 0), 1), ((2, 1), 189), ((0, 2), 77), ((2, 2), 729), ((3, 1), 448)] {
            assert_eq!(rs.weyl_dimension_product(&w(lam.0, lam.1)), BigInt::from(d));
        }
    }
}
