//! Multivector arithmetic in the conformal algebra G(4,1).
//!
//! Basis vectors are ordered `e1, e2, e3, e, ē` and a basis blade is stored
//! as a 5-bit mask over that order (bit 0 = e1, ..., bit 4 = ē). The metric
//! is `(+, +, +, +, −)`. Coefficients are indexed directly by blade mask, so
//! the 8 masks below 8 form the Euclidean subalgebra G(3).

use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub, SubAssign};

/// Number of basis blades of G(4,1).
pub const DIM: usize = 32;

/// Default "is zero" threshold applied to coefficients.
pub const DEFAULT_EPS: f64 = 1e-9;

pub const E1: u8 = 0b00001;
pub const E2: u8 = 0b00010;
pub const E3: u8 = 0b00100;
/// Positive extra basis vector `e` (squares to +1).
pub const EP: u8 = 0b01000;
/// Negative extra basis vector `ē` (squares to −1).
pub const EM: u8 = 0b10000;
pub const E12: u8 = E1 | E2;
pub const E13: u8 = E1 | E3;
pub const E23: u8 = E2 | E3;
pub const E123: u8 = E1 | E2 | E3;
pub const PSEUDO: u8 = 0b11111;

const fn reorder_sign(a: u8, b: u8) -> i8 {
    let mut a = a >> 1;
    let mut swaps = 0u32;
    while a != 0 {
        swaps += (a & b).count_ones();
        a >>= 1;
    }
    if swaps & 1 == 1 {
        -1
    } else {
        1
    }
}

const fn blade_sign(a: u8, b: u8) -> i8 {
    let s = reorder_sign(a, b);
    // ē·ē = −1 is the only negative square in the metric.
    if a & b & EM != 0 {
        -s
    } else {
        s
    }
}

const fn build_sign_table() -> [[i8; DIM]; DIM] {
    let mut t = [[0i8; DIM]; DIM];
    let mut i = 0;
    while i < DIM {
        let mut j = 0;
        while j < DIM {
            t[i][j] = blade_sign(i as u8, j as u8);
            j += 1;
        }
        i += 1;
    }
    t
}

/// `SIGN[a][b]` is the scalar factor of `e_a e_b = SIGN[a][b] · e_{a^b}`.
static SIGN: [[i8; DIM]; DIM] = build_sign_table();

/// Grade of a basis blade.
#[inline]
pub const fn grade_of(mask: u8) -> u32 {
    mask.count_ones()
}

/// A signed basis blade.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Blade {
    pub mask: u8,
    pub sign: i8,
}

impl Blade {
    pub const fn new(mask: u8) -> Self {
        Self { mask, sign: 1 }
    }

    pub const fn grade(self) -> u32 {
        grade_of(self.mask)
    }

    /// Geometric product of two blades; the sign already folds in the metric.
    /// A zero sign never occurs because the metric is non-degenerate.
    pub fn product(self, other: Blade) -> Blade {
        Blade {
            mask: self.mask ^ other.mask,
            sign: self.sign * other.sign * SIGN[self.mask as usize][other.mask as usize],
        }
    }
}

/// A general element of G(4,1).
#[derive(Clone, Copy, PartialEq)]
pub struct Multivector {
    coeffs: [f64; DIM],
}

impl Default for Multivector {
    fn default() -> Self {
        Self::zero()
    }
}

impl fmt::Debug for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        write!(f, "Multivector(")?;
        for (mask, c) in self.coeffs.iter().enumerate() {
            if *c == 0.0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}{}", blade_name(mask as u8))?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, ")")
    }
}

/// Human readable name of a basis blade, e.g. `e12`, `e∞`-free form `e1e2ep`.
pub fn blade_name(mask: u8) -> String {
    if mask == 0 {
        return String::new();
    }
    let names = ["1", "2", "3", "p", "m"];
    let mut s = String::from("e");
    for (bit, n) in names.iter().enumerate() {
        if mask & (1 << bit) != 0 {
            s.push_str(n);
        }
    }
    s
}

impl Multivector {
    pub const fn zero() -> Self {
        Self { coeffs: [0.0; DIM] }
    }

    pub const fn from_coeffs(coeffs: [f64; DIM]) -> Self {
        Self { coeffs }
    }

    pub fn scalar(s: f64) -> Self {
        let mut m = Self::zero();
        m.coeffs[0] = s;
        m
    }

    /// Unit basis blade `e_mask`.
    pub fn basis(mask: u8) -> Self {
        let mut m = Self::zero();
        m.coeffs[mask as usize] = 1.0;
        m
    }

    pub fn blade(b: Blade) -> Self {
        let mut m = Self::zero();
        m.coeffs[b.mask as usize] = b.sign as f64;
        m
    }

    /// Euclidean vector `x e1 + y e2 + z e3`.
    pub fn vector(v: [f64; 3]) -> Self {
        let mut m = Self::zero();
        m.coeffs[E1 as usize] = v[0];
        m.coeffs[E2 as usize] = v[1];
        m.coeffs[E3 as usize] = v[2];
        m
    }

    /// Euclidean bivector `b12 e12 + b13 e13 + b23 e23`.
    pub fn bivector3(b12: f64, b13: f64, b23: f64) -> Self {
        let mut m = Self::zero();
        m.coeffs[E12 as usize] = b12;
        m.coeffs[E13 as usize] = b13;
        m.coeffs[E23 as usize] = b23;
        m
    }

    /// Pseudoscalar `I5 = e1 e2 e3 e ē`.
    pub fn pseudoscalar() -> Self {
        Self::basis(PSEUDO)
    }

    /// Euclidean pseudoscalar `I3 = e123`.
    pub fn pseudoscalar3() -> Self {
        Self::basis(E123)
    }

    /// Null vector `e0 = ½(ē + e)` representing the origin.
    pub fn e0() -> Self {
        let mut m = Self::zero();
        m.coeffs[EP as usize] = 0.5;
        m.coeffs[EM as usize] = 0.5;
        m
    }

    /// Null vector `e∞ = ē − e` representing the point at infinity.
    pub fn einf() -> Self {
        let mut m = Self::zero();
        m.coeffs[EP as usize] = -1.0;
        m.coeffs[EM as usize] = 1.0;
        m
    }

    pub fn coeffs(&self) -> &[f64; DIM] {
        &self.coeffs
    }

    pub fn get(&self, mask: u8) -> f64 {
        self.coeffs[mask as usize]
    }

    pub fn scalar_part(&self) -> f64 {
        self.coeffs[0]
    }

    /// Euclidean part of a vector.
    pub fn euclidean(&self) -> [f64; 3] {
        [
            self.coeffs[E1 as usize],
            self.coeffs[E2 as usize],
            self.coeffs[E3 as usize],
        ]
    }

    /// Coefficients on the null basis `(e0, e∞)` of the vector part.
    pub fn null_coords(&self) -> (f64, f64) {
        let ep = self.coeffs[EP as usize];
        let em = self.coeffs[EM as usize];
        (ep + em, 0.5 * (em - ep))
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_finite())
    }

    /// Largest absolute coefficient.
    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn is_zero(&self, eps: f64) -> bool {
        self.max_abs() <= eps
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut m = *self;
        m.coeffs.iter_mut().for_each(|c| *c *= s);
        m
    }

    /// Geometric product.
    pub fn gp(&self, rhs: &Self) -> Self {
        let mut nz = [0u8; DIM];
        let mut n = 0;
        for (j, c) in rhs.coeffs.iter().enumerate() {
            if *c != 0.0 {
                nz[n] = j as u8;
                n += 1;
            }
        }
        let mut out = [0.0; DIM];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == 0.0 {
                continue;
            }
            let row = &SIGN[i];
            for &j in &nz[..n] {
                let j = j as usize;
                out[i ^ j] += (row[j] as f64) * a * rhs.coeffs[j];
            }
        }
        Self { coeffs: out }
    }

    fn filtered_product(&self, rhs: &Self, keep: impl Fn(usize, usize) -> bool) -> Self {
        let mut out = [0.0; DIM];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == 0.0 {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if *b == 0.0 || !keep(i, j) {
                    continue;
                }
                out[i ^ j] += (SIGN[i][j] as f64) * a * b;
            }
        }
        Self { coeffs: out }
    }

    /// Outer (wedge) product.
    pub fn wedge(&self, rhs: &Self) -> Self {
        self.filtered_product(rhs, |i, j| i & j == 0)
    }

    /// Inner product, implemented as the left contraction `self ⌋ rhs`.
    ///
    /// A blade pair contributes only when the left blade's factors all occur
    /// in the right blade, which is the grade condition `s − r`.
    pub fn inner(&self, rhs: &Self) -> Self {
        self.filtered_product(rhs, |i, j| i & j == i)
    }

    /// Scalar product `⟨A B⟩₀`.
    pub fn scalar_product(&self, rhs: &Self) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, a)| **a != 0.0)
            .map(|(i, a)| (SIGN[i][i] as f64) * a * rhs.coeffs[i])
            .sum()
    }

    /// Reverse: reverses the order of vector factors in every blade.
    pub fn reverse(&self) -> Self {
        let mut m = *self;
        for (mask, c) in m.coeffs.iter_mut().enumerate() {
            if matches!(grade_of(mask as u8) % 4, 2 | 3) {
                *c = -*c;
            }
        }
        m
    }

    /// Grade involution: negates odd grades.
    pub fn involute(&self) -> Self {
        let mut m = *self;
        for (mask, c) in m.coeffs.iter_mut().enumerate() {
            if grade_of(mask as u8) % 2 == 1 {
                *c = -*c;
            }
        }
        m
    }

    pub fn grade(&self, k: u32) -> Self {
        let mut m = Self::zero();
        for (mask, c) in self.coeffs.iter().enumerate() {
            if grade_of(mask as u8) == k {
                m.coeffs[mask] = *c;
            }
        }
        m
    }

    /// Even part (grades 0, 2, 4).
    pub fn even(&self) -> Self {
        let mut m = Self::zero();
        for (mask, c) in self.coeffs.iter().enumerate() {
            if grade_of(mask as u8).is_multiple_of(2) {
                m.coeffs[mask] = *c;
            }
        }
        m
    }

    /// Projection onto the Euclidean subalgebra G(3).
    pub fn g3_part(&self) -> Self {
        let mut m = Self::zero();
        m.coeffs[..8].copy_from_slice(&self.coeffs[..8]);
        m
    }

    /// True when no coefficient outside G(3) exceeds `eps`.
    pub fn is_in_g3(&self, eps: f64) -> bool {
        self.coeffs[8..].iter().all(|c| c.abs() <= eps)
    }

    /// Grades with a coefficient above `eps`, as a bit set.
    pub fn grades_present(&self, eps: f64) -> u32 {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| c.abs() > eps)
            .fold(0, |acc, (mask, _)| acc | 1 << grade_of(mask as u8))
    }

    /// `‖A‖² = ⟨A Ã⟩₀`, which may be negative in the conformal metric.
    pub fn norm_squared(&self) -> f64 {
        self.scalar_product(&self.reverse())
    }

    /// `‖A‖ = √⟨A Ã⟩₀`.
    pub fn norm(&self) -> Result<f64, crate::Error> {
        let n2 = self.norm_squared();
        if n2 < 0.0 {
            return Err(crate::Error::NegativeNormSquare(n2));
        }
        Ok(n2.sqrt())
    }

    /// Dual `A* = I5 A`.
    ///
    /// `I5` is central in G(4,1) and squares to −1, so `dual(dual(A)) = −A`
    /// and [`Multivector::undual`] is the exact inverse.
    pub fn dual(&self) -> Self {
        let mut out = [0.0; DIM];
        let p = PSEUDO as usize;
        for (i, c) in self.coeffs.iter().enumerate() {
            if *c != 0.0 {
                out[p ^ i] += (SIGN[p][i] as f64) * c;
            }
        }
        Self { coeffs: out }
    }

    /// Inverse of [`Multivector::dual`]: `A = −I5 A*`.
    pub fn undual(&self) -> Self {
        -self.dual()
    }

    /// Inverse of a versor-like element `A⁻¹ = Ã / (A Ã)` when `A Ã` is scalar.
    pub fn versor_inverse(&self) -> Option<Self> {
        let rev = self.reverse();
        let prod = self.gp(&rev);
        let s = prod.scalar_part();
        if s.abs() < f64::EPSILON || (prod - Self::scalar(s)).max_abs() > 1e-9 * s.abs().max(1.0) {
            return None;
        }
        Some(rev.scale(1.0 / s))
    }
}

impl Index<u8> for Multivector {
    type Output = f64;
    fn index(&self, mask: u8) -> &f64 {
        &self.coeffs[mask as usize]
    }
}

impl IndexMut<u8> for Multivector {
    fn index_mut(&mut self, mask: u8) -> &mut f64 {
        &mut self.coeffs[mask as usize]
    }
}

impl Add for Multivector {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self += rhs;
        self
    }
}

impl AddAssign for Multivector {
    fn add_assign(&mut self, rhs: Self) {
        self.coeffs
            .iter_mut()
            .zip(rhs.coeffs.iter())
            .for_each(|(a, b)| *a += b);
    }
}

impl Sub for Multivector {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        self -= rhs;
        self
    }
}

impl SubAssign for Multivector {
    fn sub_assign(&mut self, rhs: Self) {
        self.coeffs
            .iter_mut()
            .zip(rhs.coeffs.iter())
            .for_each(|(a, b)| *a -= b);
    }
}

impl Neg for Multivector {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-1.0)
    }
}

impl Mul for Multivector {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.gp(&rhs)
    }
}

impl Mul<&Multivector> for &Multivector {
    type Output = Multivector;
    fn mul(self, rhs: &Multivector) -> Multivector {
        self.gp(rhs)
    }
}

impl Mul<f64> for Multivector {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        self.scale(rhs)
    }
}

impl Mul<Multivector> for f64 {
    type Output = Multivector;
    fn mul(self, rhs: Multivector) -> Multivector {
        rhs.scale(self)
    }
}
