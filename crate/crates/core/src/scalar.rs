//! Scalar backends and the validated unit-interval [`Degree`].
//!
//! Everything in this crate only ever combines degrees with `min`, `max` and
//! `1 - x`, so any ordered field-like type works as a backend. The default is
//! an exact rational; `f64`/`f32` are supported for callers that already live
//! in floating point.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Sub;

use num_rational::Ratio;
use num_traits::{One, Zero};
use thiserror::Error;

/// Scalar type a [`Degree`] can be built on.
pub trait Grade:
    Copy + PartialOrd + fmt::Debug + Zero + One + Sub<Output = Self> + Send + Sync + 'static
{
    /// `num / den`, or `None` when `den == 0`.
    fn from_ratio(num: u64, den: u64) -> Option<Self>;

    /// Canonical textual form used by every emitter.
    fn render(&self) -> String;

    fn to_f64(&self) -> f64;

    /// Whether the value is a usable number (rules out NaN).
    fn is_finite_grade(&self) -> bool {
        true
    }
}

impl Grade for Ratio<i64> {
    fn from_ratio(num: u64, den: u64) -> Option<Self> {
        if den == 0 {
            return None;
        }
        Some(Ratio::new(i64::try_from(num).ok()?, i64::try_from(den).ok()?))
    }

    fn render(&self) -> String {
        render_ratio(*self.numer(), *self.denom())
    }

    fn to_f64(&self) -> f64 {
        *self.numer() as f64 / *self.denom() as f64
    }
}

/// Decimal if the denominator only has factors 2 and 5, `p/q` otherwise.
fn render_ratio(num: i64, den: i64) -> String {
    let (mut twos, mut fives, mut rest) = (0u32, 0u32, den);
    while rest % 2 == 0 {
        rest /= 2;
        twos += 1;
    }
    while rest % 5 == 0 {
        rest /= 5;
        fives += 1;
    }
    if rest != 1 {
        return format!("{num}/{den}");
    }
    let digits = twos.max(fives);
    if digits == 0 {
        return num.to_string();
    }
    let scale = 10i128.pow(digits);
    let scaled = num as i128 * scale / den as i128;
    let (int, frac) = (scaled / scale, (scaled % scale).abs());
    let frac = format!("{frac:0width$}", width = digits as usize);
    format!("{int}.{}", frac.trim_end_matches('0'))
}

macro_rules! float_grade {
    ($t:ty) => {
        impl Grade for $t {
            fn from_ratio(num: u64, den: u64) -> Option<Self> {
                (den != 0).then(|| num as $t / den as $t)
            }

            fn render(&self) -> String {
                format!("{}", self)
            }

            fn to_f64(&self) -> f64 {
                *self as f64
            }

            fn is_finite_grade(&self) -> bool {
                self.is_finite()
            }
        }
    };
}

float_grade!(f64);
float_grade!(f32);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DegreeError {
    #[error("degree {0} is outside [0, 1]")]
    OutOfRange(String),
    #[error("cannot parse degree `{0}`")]
    Syntax(String),
}

/// A value of the unit scale `[0, 1]`.
///
/// The constructor rejects anything outside the interval (and NaN), which is
/// what makes the total order below sound for float backends.
#[derive(Clone, Copy, PartialEq)]
pub struct Degree<T: Grade = Ratio<i64>>(T);

impl<T: Grade> Degree<T> {
    pub fn new(value: T) -> Result<Self, DegreeError> {
        if value.is_finite_grade() && value >= T::zero() && value <= T::one() {
            Ok(Degree(value))
        } else {
            Err(DegreeError::OutOfRange(format!("{value:?}")))
        }
    }

    /// `num / den`; errors when the quotient leaves the unit interval.
    pub fn ratio(num: u64, den: u64) -> Result<Self, DegreeError> {
        let value = T::from_ratio(num, den)
            .ok_or_else(|| DegreeError::Syntax(format!("{num}/{den}")))?;
        Self::new(value)
    }

    pub fn zero() -> Self {
        Degree(T::zero())
    }

    pub fn one() -> Self {
        Degree(T::one())
    }

    pub fn value(self) -> T {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == T::zero()
    }

    pub fn is_one(self) -> bool {
        self.0 == T::one()
    }

    /// Order-reversing involution `1 - x`.
    pub fn complement(self) -> Self {
        Degree(T::one() - self.0)
    }

    /// Maps the value through an order-preserving transform. The caller
    /// guarantees the image stays in `[0, 1]`; this is re-checked.
    pub fn map(self, f: impl FnOnce(T) -> T) -> Result<Self, DegreeError> {
        Self::new(f(self.0))
    }

    pub fn render(self) -> String {
        self.0.render()
    }

    /// Parses `1`, `0.45`, `.45` or `9/20`.
    pub fn parse(text: &str) -> Result<Self, DegreeError> {
        let (num, den) = parse_fraction(text.trim())
            .ok_or_else(|| DegreeError::Syntax(text.trim().to_string()))?;
        let value = T::from_ratio(num, den).ok_or_else(|| DegreeError::Syntax(text.to_string()))?;
        Self::new(value).map_err(|_| DegreeError::OutOfRange(text.trim().to_string()))
    }
}

fn parse_fraction(text: &str) -> Option<(u64, u64)> {
    if let Some((num, den)) = text.split_once('/') {
        return Some((num.trim().parse().ok()?, den.trim().parse().ok()?));
    }
    let (int, frac) = text.split_once('.').unwrap_or((text, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) || frac.len() > 18 {
        return None;
    }
    let den = 10u64.checked_pow(frac.len() as u32)?;
    let int: u64 = if int.is_empty() { 0 } else { int.parse().ok()? };
    let frac: u64 = if frac.is_empty() { 0 } else { frac.parse().ok()? };
    Some((int.checked_mul(den)?.checked_add(frac)?, den))
}

impl<T: Grade> Eq for Degree<T> {}

impl<T: Grade> PartialOrd for Degree<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: Grade> Ord for Degree<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .partial_cmp(&other.0)
            .expect("degrees are never NaN")
    }
}

impl<T: Grade> fmt::Debug for Degree<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl<T: Grade> fmt::Display for Degree<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl<T: Grade> std::str::FromStr for Degree<T> {
    type Err = DegreeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

/// Max of an iterator, `0` when empty.
pub fn sup<T: Grade>(values: impl IntoIterator<Item = Degree<T>>) -> Degree<T> {
    values.into_iter().max().unwrap_or_else(Degree::zero)
}

/// Min of an iterator, `1` when empty.
pub fn inf<T: Grade>(values: impl IntoIterator<Item = Degree<T>>) -> Degree<T> {
    values.into_iter().min().unwrap_or_else(Degree::one)
}

#[cfg(test)]
mod tests {
    use super::*;

    type D = Degree<Ratio<i64>>;

    #[test]
    fn parses_decimals_and_fractions() {
        assert_eq!(D::parse(".45").unwrap(), D::ratio(9, 20).unwrap());
        assert_eq!(D::parse("0.5").unwrap(), D::ratio(1, 2).unwrap());
        assert_eq!(D::parse("1").unwrap(), D::one());
        assert_eq!(D::parse("2/3").unwrap().value(), Ratio::new(2, 3));
        assert!(matches!(D::parse("1.2"), Err(DegreeError::OutOfRange(_))));
        assert!(matches!(D::parse("-0.2"), Err(DegreeError::Syntax(_))));
        assert!(matches!(D::parse("."), Err(DegreeError::Syntax(_))));
        assert!(matches!(D::parse("1/0"), Err(DegreeError::Syntax(_))));
    }

    #[test]
    fn renders_exact_decimals_or_fractions() {
        assert_eq!(D::ratio(9, 20).unwrap().render(), "0.45");
        assert_eq!(D::ratio(1, 2).unwrap().render(), "0.5");
        assert_eq!(D::ratio(1, 3).unwrap().render(), "1/3");
        assert_eq!(D::one().render(), "1");
        assert_eq!(D::zero().render(), "0");
        assert_eq!(D::ratio(1, 8).unwrap().render(), "0.125");
    }

    #[test]
    fn complement_is_involutive() {
        let d = D::ratio(3, 10).unwrap();
        assert_eq!(d.complement().render(), "0.7");
        assert_eq!(d.complement().complement(), d);
    }

    #[test]
    fn float_backend_rejects_nan() {
        assert!(Degree::<f64>::new(f64::NAN).is_err());
        assert!(Degree::<f64>::new(1.5).is_err());
        assert_eq!(Degree::<f64>::parse(".5").unwrap().value(), 0.5);
        assert_eq!(Degree::<f32>::parse("1/4").unwrap().value(), 0.25);
    }

    #[test]
    fn empty_sup_and_inf_conventions() {
        assert_eq!(sup::<Ratio<i64>>([]), D::zero());
        assert_eq!(inf::<Ratio<i64>>([]), D::one());
    }
}
