//! Scalar backends for the planar kernel.
//!
//! Every geometric type is generic over [`Scalar`]. Two backends exist:
//! plain `f64`, and [`Rat`], an arbitrary-precision rational. Polynomial
//! predicates evaluate exactly on the rational backend; square roots are
//! only available there when the radicand is a perfect square.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Scale-aware comparison policy shared by all predicates.
///
/// The effective tolerance is `max(abs_eps, rel_eps * scale)` on the float
/// backend and exactly zero on the rational backend. `scale` is the diameter
/// of the bounding box of a scene's inputs; callers that compare bare
/// coordinates can leave it at 1.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ToleranceContext {
    /// Absolute epsilon, in length units.
    pub abs_eps: f64,
    /// Relative epsilon, dimensionless.
    pub rel_eps: f64,
    /// Scene scale, in length units.
    pub scale: f64,
}

impl ToleranceContext {
    pub const DEFAULT_ABS_EPS: f64 = 1e-9;
    pub const DEFAULT_REL_EPS: f64 = 1e-9;

    pub fn new(abs_eps: f64, rel_eps: f64, scale: f64) -> Self {
        assert!(abs_eps > 0.0 && rel_eps >= 0.0 && scale > 0.0);
        Self { abs_eps, rel_eps, scale }
    }

    /// Default epsilons with an explicit scene scale.
    pub fn with_scale(scale: f64) -> Self {
        Self::new(Self::DEFAULT_ABS_EPS, Self::DEFAULT_REL_EPS, scale)
    }

    /// Effective float tolerance, in length units.
    pub fn effective(&self) -> f64 {
        self.abs_eps.max(self.rel_eps * self.scale)
    }
}

impl Default for ToleranceContext {
    fn default() -> Self {
        Self::with_scale(1.0)
    }
}

/// Field of coordinates for the kernel.
///
/// Implementations must be exact (`EXACT = true`) or IEEE floats. The line
/// and direction normalizers encode each backend's canonical form so that
/// equality of normalized objects is a plain coefficient comparison.
pub trait Scalar:
    Clone
    + PartialEq
    + PartialOrd
    + fmt::Debug
    + fmt::Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Sized
{
    /// True when arithmetic is exact (rational backend).
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(n: i64) -> Self;
    /// Exact embedding of a finite double (dyadic rational on the exact backend).
    fn from_f64(x: f64) -> Self;
    fn to_f64(&self) -> f64;
    fn abs(&self) -> Self;
    /// Square root. `None` for negative values and, on the rational backend,
    /// for radicands that are not perfect squares.
    fn sqrt(&self) -> Option<Self>;
    /// Effective tolerance as a scalar: zero on the exact backend.
    fn eps(ctx: &ToleranceContext) -> Self;
    /// Canonical form of line coefficients `(a, b, c)`.
    fn normalize_line(a: Self, b: Self, c: Self) -> (Self, Self, Self);
    /// Canonical form of a direction vector.
    fn normalize_dir(x: Self, y: Self) -> (Self, Self);
    /// Exact textual representation (`p/q`), if the backend has one.
    fn exact_repr(&self) -> Option<String> {
        None
    }

    fn is_zero_exact(&self) -> bool {
        *self == Self::zero()
    }

    fn two() -> Self {
        Self::from_int(2)
    }

    fn half(self) -> Self {
        self / Self::from_int(2)
    }

    fn sq(self) -> Self {
        self.clone() * self
    }
}

fn f64_sign_fix(a: f64, b: f64) -> bool {
    // Flip so the first coefficient that is clearly nonzero is positive.
    if a < -1e-12 {
        true
    } else {
        a.abs() <= 1e-12 && b < 0.0
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_int(n: i64) -> Self {
        n as f64
    }
    fn from_f64(x: f64) -> Self {
        x
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn sqrt(&self) -> Option<Self> {
        if *self < 0.0 {
            None
        } else {
            Some(f64::sqrt(*self))
        }
    }
    fn eps(ctx: &ToleranceContext) -> Self {
        ctx.effective()
    }

    fn normalize_line(a: Self, b: Self, c: Self) -> (Self, Self, Self) {
        let n = a.hypot(b);
        let (a, b, c) = (a / n, b / n, c / n);
        if f64_sign_fix(a, b) {
            (-a, -b, -c)
        } else {
            (a, b, c)
        }
    }

    fn normalize_dir(x: Self, y: Self) -> (Self, Self) {
        let n = x.hypot(y);
        let (x, y) = (x / n, y / n);
        if f64_sign_fix(x, y) {
            (-x, -y)
        } else {
            (x, y)
        }
    }
}

/// Arbitrary-precision rational scalar, kept in lowest terms with positive
/// denominator by `num_rational`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Rat(pub BigRational);

impl Rat {
    pub fn new(num: i64, den: i64) -> Self {
        Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_big(r: BigRational) -> Self {
        Rat(r)
    }

    /// `p/q` form used by exact scene serialization.
    pub fn to_fraction_string(&self) -> String {
        format!("{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Add for Rat {
    type Output = Rat;
    fn add(self, rhs: Rat) -> Rat {
        Rat(self.0 + rhs.0)
    }
}
impl Sub for Rat {
    type Output = Rat;
    fn sub(self, rhs: Rat) -> Rat {
        Rat(self.0 - rhs.0)
    }
}
impl Mul for Rat {
    type Output = Rat;
    fn mul(self, rhs: Rat) -> Rat {
        Rat(self.0 * rhs.0)
    }
}
impl Div for Rat {
    type Output = Rat;
    fn div(self, rhs: Rat) -> Rat {
        Rat(self.0 / rhs.0)
    }
}
impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

fn exact_sqrt_bigint(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &r.clone() * &r == *n {
        Some(r)
    } else {
        None
    }
}

impl Scalar for Rat {
    const EXACT: bool = true;

    fn zero() -> Self {
        Rat(BigRational::zero())
    }
    fn one() -> Self {
        Rat(BigRational::one())
    }
    fn from_int(n: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }

    fn from_f64(x: f64) -> Self {
        Rat(BigRational::from_float(x).expect("finite float"))
    }

    fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    fn abs(&self) -> Self {
        Rat(self.0.abs())
    }

    fn sqrt(&self) -> Option<Self> {
        let num = exact_sqrt_bigint(self.0.numer())?;
        let den = exact_sqrt_bigint(self.0.denom())?;
        Some(Rat(BigRational::new(num, den)))
    }

    fn eps(_ctx: &ToleranceContext) -> Self {
        Self::zero()
    }

    fn exact_repr(&self) -> Option<String> {
        Some(self.to_fraction_string())
    }

    fn normalize_line(a: Self, b: Self, c: Self) -> (Self, Self, Self) {
        // Clear denominators, reduce by the integer gcd, then fix the sign of
        // the first nonzero coefficient among (a, b).
        let lcm = self::lcm3(a.0.denom(), b.0.denom(), c.0.denom());
        let na = (&a.0 * &lcm).to_integer();
        let nb = (&b.0 * &lcm).to_integer();
        let nc = (&c.0 * &lcm).to_integer();
        let g = na.gcd(&nb).gcd(&nc);
        let (mut na, mut nb, mut nc) = if g.is_zero() {
            (na, nb, nc)
        } else {
            (&na / &g, &nb / &g, &nc / &g)
        };
        let flip = if !na.is_zero() { na.is_negative() } else { nb.is_negative() };
        if flip {
            na = -na;
            nb = -nb;
            nc = -nc;
        }
        (
            Rat(BigRational::from_integer(na)),
            Rat(BigRational::from_integer(nb)),
            Rat(BigRational::from_integer(nc)),
        )
    }

    fn normalize_dir(x: Self, y: Self) -> (Self, Self) {
        let lcm = x.0.denom().lcm(y.0.denom());
        let nx = (&x.0 * BigRational::from_integer(lcm.clone())).to_integer();
        let ny = (&y.0 * BigRational::from_integer(lcm)).to_integer();
        let g = nx.gcd(&ny);
        let (mut nx, mut ny) = if g.is_zero() { (nx, ny) } else { (&nx / &g, &ny / &g) };
        let flip = if !nx.is_zero() { nx.is_negative() } else { ny.is_negative() };
        if flip {
            nx = -nx;
            ny = -ny;
        }
        (
            Rat(BigRational::from_integer(nx)),
            Rat(BigRational::from_integer(ny)),
        )
    }
}

fn lcm3(a: &BigInt, b: &BigInt, c: &BigInt) -> BigRational {
    BigRational::from_integer(a.lcm(b).lcm(c))
}
