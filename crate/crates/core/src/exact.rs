//! Exact arithmetic: rationals, points, and sums of square roots.
//!
//! Every incidence decision (does a crossing exist, in which order do
//! crossings appear along an edge, which face is on which side) is made with
//! [`Rational`]. Metric quantities that involve square roots, such as tunnel
//! lengths `w / sin(alpha)`, are carried as [`RootSum`] values whose
//! comparisons are exact as well.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Huge numerator/denominator: scale both down via their bit lengths.
        let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(1000) as usize;
        let n = (r.numer() >> shift).to_f64().unwrap_or(f64::NAN);
        let d = (r.denom() >> shift).to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid number {0:?}: expected a decimal like -1.25 or a fraction like 3/7")]
pub struct ParseNumberError(pub String);

/// Parses `"-12.5"`, `"3"`, `"1e-3"` or `"7/3"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational, ParseNumberError> {
    let err = || ParseNumberError(s.to_string());
    let t = s.trim();
    if t.is_empty() {
        return Err(err());
    }
    if let Some((n, d)) = t.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| err())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(Rational::new(n, d));
    }
    let (mantissa, exp) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i32>().map_err(|_| err())?),
        None => (t, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(err());
    }
    let all = format!("{int_part}{frac_part}");
    let mut n = BigInt::from_str(if all.is_empty() { "0" } else { &all }).map_err(|_| err())?;
    if neg {
        n = -n;
    }
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    Ok(if scale >= 0 {
        Rational::from_integer(n * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(n, num_traits::pow(ten, (-scale) as usize))
    })
}

/// Formats a rational losslessly: a plain decimal when the denominator
/// divides a power of ten, otherwise `p/q`.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        return r.numer().to_string();
    }
    let mut d = r.denom().clone();
    let (two, five) = (BigInt::from(2), BigInt::from(5));
    let (mut twos, mut fives) = (0usize, 0usize);
    while d.is_even() {
        d /= &two;
        twos += 1;
    }
    while (&d % &five).is_zero() {
        d /= &five;
        fives += 1;
    }
    if !d.is_one() {
        return format!("{}/{}", r.numer(), r.denom());
    }
    let places = twos.max(fives);
    let scaled = r * Rational::from_integer(num_traits::pow(BigInt::from(10), places));
    let digits = scaled.numer().abs().to_string();
    let digits = format!("{digits:0>width$}", width = places + 1);
    let (ip, fp) = digits.split_at(digits.len() - places);
    let sign = if r.is_negative() { "-" } else { "" };
    format!("{sign}{ip}.{}", fp.trim_end_matches('0'))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::new(int(x), int(y))
    }

    pub fn sub(&self, o: &Point) -> Point {
        Point::new(&self.x - &o.x, &self.y - &o.y)
    }

    pub fn add(&self, o: &Point) -> Point {
        Point::new(&self.x + &o.x, &self.y + &o.y)
    }

    pub fn scale(&self, s: &Rational) -> Point {
        Point::new(&self.x * s, &self.y * s)
    }

    /// `self + t * (other - self)`
    pub fn lerp(&self, other: &Point, t: &Rational) -> Point {
        self.add(&other.sub(self).scale(t))
    }

    pub fn cross(&self, o: &Point) -> Rational {
        &self.x * &o.y - &self.y * &o.x
    }

    pub fn dot(&self, o: &Point) -> Rational {
        &self.x * &o.x + &self.y * &o.y
    }

    pub fn norm_sq(&self) -> Rational {
        self.dot(self)
    }

    pub fn dist_sq(&self, o: &Point) -> Rational {
        self.sub(o).norm_sq()
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (to_f64(&self.x), to_f64(&self.y))
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", format_rational(&self.x), format_rational(&self.y))
    }
}

/// Sign of the turn `a -> b -> c`: positive for counter-clockwise.
pub fn orient(a: &Point, b: &Point, c: &Point) -> Ordering {
    b.sub(a).cross(&c.sub(a)).cmp(&Rational::zero())
}

/// Compares direction vectors by polar angle in `[0, 2pi)`, exactly.
pub fn cmp_angle(u: &Point, v: &Point) -> Ordering {
    fn half(p: &Point) -> u8 {
        // 0: angle in [0, pi), 1: angle in [pi, 2pi)
        if p.y.is_positive() || (p.y.is_zero() && p.x.is_positive()) {
            0
        } else {
            1
        }
    }
    half(u)
        .cmp(&half(v))
        .then_with(|| Rational::zero().cmp(&u.cross(v)))
}

fn isqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Exact square root of a non-negative rational, if it is rational.
pub fn sqrt_exact(r: &Rational) -> Option<Rational> {
    Some(Rational::new(isqrt_exact(r.numer())?, isqrt_exact(r.denom())?))
}

const SMALL_PRIMES: [u32; 25] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

/// Writes `coeff * sqrt(radicand)` as `c * sqrt(n)` with `n` a positive
/// integer stripped of small square factors.
fn normalize_term(coeff: Rational, radicand: &Rational) -> (Rational, BigInt) {
    let d = radicand.denom();
    let mut n = radicand.numer() * d;
    let mut c = coeff / Rational::from_integer(d.clone());
    if let Some(s) = isqrt_exact(&n) {
        return (c * Rational::from_integer(s), BigInt::one());
    }
    for &p in &SMALL_PRIMES {
        let sq = BigInt::from(p * p);
        while (&n % &sq).is_zero() {
            n /= &sq;
            c *= Rational::from_integer(BigInt::from(p));
        }
    }
    (c, n)
}

/// A finite sum `sum_i c_i * sqrt(n_i)` with rational `c_i` and positive
/// integer `n_i`.
///
/// Ordering is exact. Square roots of integers whose pairwise ratios are not
/// rational squares are linearly independent over the rationals, so after
/// merging such classes a sum is zero exactly when all coefficients vanish;
/// otherwise interval refinement at growing precision decides the sign.
#[derive(Debug, Clone, Default)]
pub struct RootSum {
    terms: Vec<(Rational, BigInt)>,
    approx: f64,
    magnitude: f64,
}

impl RootSum {
    pub fn zero() -> Self {
        RootSum::default()
    }

    pub fn from_rational(r: Rational) -> Self {
        let mut s = RootSum::zero();
        s.add_term(r, &Rational::one());
        s
    }

    /// `coeff * sqrt(radicand)`; `radicand` must be non-negative.
    pub fn sqrt_of(coeff: Rational, radicand: &Rational) -> Self {
        let mut s = RootSum::zero();
        s.add_term(coeff, radicand);
        s
    }

    pub fn add_term(&mut self, coeff: Rational, radicand: &Rational) {
        assert!(!radicand.is_negative(), "negative radicand");
        if coeff.is_zero() || radicand.is_zero() {
            return;
        }
        let (c, n) = normalize_term(coeff, radicand);
        let v = to_f64(&c) * to_f64(&Rational::from_integer(n.clone())).sqrt();
        self.approx += v;
        self.magnitude += v.abs();
        self.terms.push((c, n));
    }

    pub fn add(&mut self, other: &RootSum) {
        self.terms.extend(other.terms.iter().cloned());
        self.approx += other.approx;
        self.magnitude += other.magnitude;
    }

    pub fn neg(&self) -> RootSum {
        RootSum {
            terms: self.terms.iter().map(|(c, n)| (-c, n.clone())).collect(),
            approx: -self.approx,
            magnitude: self.magnitude,
        }
    }

    pub fn sub(&self, other: &RootSum) -> RootSum {
        let mut s = self.clone();
        s.add(&other.neg());
        s
    }

    pub fn to_f64(&self) -> f64 {
        self.approx
    }

    /// Rigorous bound on `|to_f64() - exact value|`.
    fn error_bound(&self) -> f64 {
        (self.terms.len() as f64 + 4.0) * 8.0 * f64::EPSILON * self.magnitude + f64::MIN_POSITIVE
    }

    /// Merges terms over the same square class.
    fn canonical(&self) -> Vec<(Rational, BigInt)> {
        let mut by_radicand: HashMap<BigInt, Rational> = HashMap::new();
        let mut order = Vec::new();
        for (c, n) in &self.terms {
            by_radicand
                .entry(n.clone())
                .and_modify(|acc| *acc += c)
                .or_insert_with(|| {
                    order.push(n.clone());
                    c.clone()
                });
        }
        let mut classes: Vec<(Rational, BigInt)> = Vec::new();
        for n in order {
            let c = by_radicand.remove(&n).unwrap();
            let mut merged = false;
            for (cc, rep) in classes.iter_mut() {
                // sqrt(n) = sqrt(n / rep) * sqrt(rep) when n * rep is a square.
                if let Some(root) = isqrt_exact(&(&n * &*rep)) {
                    *cc += &c * Rational::new(root, rep.clone());
                    merged = true;
                    break;
                }
            }
            if !merged {
                classes.push((c, n));
            }
        }
        classes.retain(|(c, _)| !c.is_zero());
        classes.sort_by(|a, b| a.1.cmp(&b.1));
        classes
    }

    /// Exact value if the sum is rational.
    pub fn as_rational(&self) -> Option<Rational> {
        let classes = self.canonical();
        match classes.as_slice() {
            [] => Some(Rational::zero()),
            [(c, n)] if n.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn signum(&self) -> Ordering {
        let eb = self.error_bound();
        if self.approx > eb {
            return Ordering::Greater;
        }
        if self.approx < -eb {
            return Ordering::Less;
        }
        let classes = self.canonical();
        if classes.is_empty() {
            return Ordering::Equal;
        }
        // Nonzero by linear independence; refine until the interval excludes 0.
        let mut bits = 64usize;
        loop {
            let scale = BigInt::one() << (2 * bits);
            let denom = Rational::from_integer(BigInt::one() << bits);
            let (mut lo, mut hi) = (Rational::zero(), Rational::zero());
            for (c, n) in &classes {
                let s = (n * &scale).sqrt();
                let a = Rational::from_integer(s.clone()) / &denom;
                let b = Rational::from_integer(s + 1) / &denom;
                if c.is_positive() {
                    lo += c * a;
                    hi += c * b;
                } else {
                    lo += c * b;
                    hi += c * a;
                }
            }
            if lo.is_positive() {
                return Ordering::Greater;
            }
            if hi.is_negative() {
                return Ordering::Less;
            }
            bits *= 2;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.signum() == Ordering::Equal
    }
}

impl PartialEq for RootSum {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for RootSum {}

impl PartialOrd for RootSum {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RootSum {
    fn cmp(&self, other: &Self) -> Ordering {
        let diff = self.approx - other.approx;
        let eb = self.error_bound() + other.error_bound();
        if diff > eb {
            Ordering::Greater
        } else if diff < -eb {
            Ordering::Less
        } else {
            self.sub(other).signum()
        }
    }
}

impl fmt::Display for RootSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let classes = self.canonical();
        if classes.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = classes
            .iter()
            .map(|(c, n)| {
                if n.is_one() {
                    format_rational(c)
                } else {
                    format!("{}*sqrt({})", format_rational(c), n)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Integer sign helper used by callers that want `BigInt` signs directly.
pub fn sign_of(r: &Rational) -> Sign {
    r.numer().sign()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_parsing_is_exact() {
        assert_eq!(parse_rational("0.1").unwrap(), rat(1, 10));
        assert_eq!(parse_rational("-2.50").unwrap(), rat(-5, 2));
        assert_eq!(parse_rational("1e-3").unwrap(), rat(1, 1000));
        assert_eq!(parse_rational("12").unwrap(), int(12));
        assert_eq!(parse_rational(".5").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("3/9").unwrap(), rat(1, 3));
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("-").is_err());
    }

    #[test]
    fn formatting_round_trips() {
        for s in ["0", "-3", "0.1", "-0.025", "12.5", "1/3", "-7/6"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(format_rational(&r), s);
            assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
        }
    }

    #[test]
    fn angle_order() {
        let dirs = [(1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1)];
        for (i, a) in dirs.iter().enumerate() {
            for (j, b) in dirs.iter().enumerate() {
                let got = cmp_angle(&Point::from_ints(a.0, a.1), &Point::from_ints(b.0, b.1));
                assert_eq!(got, i.cmp(&j), "{a:?} vs {b:?}");
            }
        }
    }

    #[test]
    fn root_sums_compare_exactly() {
        // sqrt(2) + sqrt(8) == 3 sqrt(2) == sqrt(18)
        let mut a = RootSum::sqrt_of(int(1), &int(2));
        a.add_term(int(1), &int(8));
        let b = RootSum::sqrt_of(int(1), &int(18));
        assert_eq!(a, b);
        // sqrt(2) + sqrt(3) vs sqrt(10): 3.146 > 3.162? no, smaller.
        let mut c = RootSum::sqrt_of(int(1), &int(2));
        c.add_term(int(1), &int(3));
        assert!(c < RootSum::sqrt_of(int(1), &int(10)));
        // sqrt(1/4) is rational.
        assert_eq!(RootSum::sqrt_of(int(3), &rat(1, 4)).as_rational(), Some(rat(3, 2)));
        // A tiny but nonzero difference still resolves.
        let x = RootSum::sqrt_of(int(1), &int(1_000_001));
        let y = RootSum::from_rational(int(1000));
        assert!(x > y);
        assert_eq!(RootSum::sqrt_of(int(2), &rat(9, 8)).as_rational(), None);
        assert!(RootSum::sqrt_of(int(1), &rat(1, 2)).sub(&RootSum::sqrt_of(rat(1, 2), &int(2))).is_zero());
    }
}
