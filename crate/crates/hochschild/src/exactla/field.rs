use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::Error;

/// A field of coefficients together with its arithmetic.
///
/// The field value is a context: element types stay small (prime field
/// elements are bare `u32`) and every operation goes through the context.
pub trait Field: Clone + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Send + Sync + 'static;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn from_rational(&self, r: &BigRational) -> Result<Self::Elem, Error>;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn render(&self, a: &Self::Elem) -> String;
    fn name(&self) -> String;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b))
    }

    fn pow(&self, a: &Self::Elem, mut e: u32) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// `a - c * b`
    fn sub_mul(&self, a: &Self::Elem, c: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.sub(a, &self.mul(c, b))
    }
}

/// Exact rational number with an inline fast path.
///
/// `Small(n, d)` is always reduced with `d > 0`; `Big` is used only when the
/// reduced value does not fit in `i64`, so structural equality is value equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Rational {
    Small(i64, i64),
    Big(Box<BigRational>),
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rational::Small(n, 1) => write!(f, "{}", n),
            Rational::Small(n, d) => write!(f, "{}/{}", n, d),
            Rational::Big(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

fn gcd_i128(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Rational {
    pub fn zero() -> Self {
        Rational::Small(0, 1)
    }

    pub fn one() -> Self {
        Rational::Small(1, 1)
    }

    pub fn from_i64(v: i64) -> Self {
        Rational::Small(v, 1)
    }

    fn from_i128(n: i128, d: i128) -> Self {
        debug_assert!(d != 0);
        let g = gcd_i128(n, d);
        let (mut n, mut d) = if g > 1 { (n / g, d / g) } else { (n, d) };
        if d < 0 {
            n = -n;
            d = -d;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Rational::Small(n, d),
            _ => Rational::Big(Box::new(BigRational::new_raw(BigInt::from(n), BigInt::from(d)))),
        }
    }

    pub fn from_big(r: BigRational) -> Self {
        // BigRational::new normalizes; callers may pass raw values
        let r = BigRational::new(r.numer().clone(), r.denom().clone());
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) => Rational::Small(n, d),
            _ => Rational::Big(Box::new(r)),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Rational::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Rational::Big(r) => (**r).clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Rational::Small(0, _))
    }

    pub fn add(&self, o: &Self) -> Self {
        match (self, o) {
            (Rational::Small(a, b), Rational::Small(c, d)) => {
                if *b == 1 && *d == 1 {
                    return match a.checked_add(*c) {
                        Some(s) => Rational::Small(s, 1),
                        None => Self::from_i128(*a as i128 + *c as i128, 1),
                    };
                }
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                Self::from_i128(a * d + c * b, b * d)
            }
            _ => Self::from_big(self.to_big() + o.to_big()),
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            Rational::Small(a, b) => match a.checked_neg() {
                Some(n) => Rational::Small(n, *b),
                None => Self::from_i128(-(*a as i128), *b as i128),
            },
            Rational::Big(r) => Self::from_big(-(**r).clone()),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        match (self, o) {
            (Rational::Small(a, b), Rational::Small(c, d)) => {
                if *a == 0 || *c == 0 {
                    return Rational::zero();
                }
                if *b == 1 && *d == 1 {
                    return match a.checked_mul(*c) {
                        Some(p) => Rational::Small(p, 1),
                        None => Self::from_i128(*a as i128 * *c as i128, 1),
                    };
                }
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                let g1 = gcd_i128(a, d);
                let g2 = gcd_i128(c, b);
                Self::from_i128((a / g1) * (c / g2), (b / g2) * (d / g1))
            }
            _ => Self::from_big(self.to_big() * o.to_big()),
        }
    }

    pub fn inv(&self) -> Self {
        match self {
            Rational::Small(0, _) => panic!("inverse of zero"),
            Rational::Small(a, b) => {
                if *a < 0 {
                    Self::from_i128(-(*b as i128), -(*a as i128))
                } else {
                    Rational::Small(*b, *a)
                }
            }
            Rational::Big(r) => Self::from_big(r.recip()),
        }
    }

    /// Parses `n`, `-n`, `n/d`.
    pub fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().ok()?;
        let d: BigInt = d.parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(Self::from_big(BigRational::new(n, d)))
    }
}

/// The rational numbers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn from_i64(&self, v: i64) -> Rational {
        Rational::from_i64(v)
    }
    fn from_rational(&self, r: &BigRational) -> Result<Rational, Error> {
        Ok(Rational::from_big(r.clone()))
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a.add(b)
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a.sub(b)
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a.mul(b)
    }
    fn neg(&self, a: &Rational) -> Rational {
        a.neg()
    }
    fn inv(&self, a: &Rational) -> Rational {
        a.inv()
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &Rational) -> bool {
        matches!(a, Rational::Small(1, 1))
    }
    fn render(&self, a: &Rational) -> String {
        a.to_string()
    }
    fn name(&self) -> String {
        "rationals".to_string()
    }
}

/// The prime field F_p for a prime p < 2^31.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self, Error> {
        if p >= (1 << 31) || !is_prime(p as u64) {
            return Err(Error::Input(format!("{} is not a prime below 2^31", p)));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    fn reduce_big(&self, n: &BigInt) -> u32 {
        let p = BigInt::from(self.p);
        let r = n.mod_floor(&p);
        r.to_u32().unwrap()
    }
}

impl Field for PrimeField {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }
    fn from_rational(&self, r: &BigRational) -> Result<u32, Error> {
        let d = self.reduce_big(r.denom());
        if d == 0 {
            return Err(Error::Input(format!(
                "denominator of {} vanishes modulo {}",
                r, self.p
            )));
        }
        let n = self.reduce_big(r.numer());
        Ok(self.mul(&n, &self.inv(&d)))
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + *b as u64;
        (if s >= self.p as u64 { s - self.p as u64 } else { s }) as u32
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        if a >= b {
            a - b
        } else {
            (*a as u64 + self.p as u64 - *b as u64) as u32
        }
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u32) -> u32 {
        assert!(*a != 0, "inverse of zero");
        let (mut t, mut nt) = (0i64, 1i64);
        let (mut r, mut nr) = (self.p as i64, *a as i64);
        while nr != 0 {
            let q = r / nr;
            (t, nt) = (nt, t - q * nt);
            (r, nr) = (nr, r - q * nr);
        }
        t.rem_euclid(self.p as i64) as u32
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn is_one(&self, a: &u32) -> bool {
        *a == 1
    }
    fn render(&self, a: &u32) -> String {
        a.to_string()
    }
    fn name(&self) -> String {
        format!("fp:{}", self.p)
    }
}

/// Runtime description of the ground field, as chosen on the command line or
/// in a problem file.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldSpec {
    Rationals,
    PrimeField(u32),
}

impl FieldSpec {
    pub fn parse(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if s == "rationals" || s == "Q" {
            return Ok(FieldSpec::Rationals);
        }
        if let Some(p) = s.strip_prefix("fp:") {
            let p: u32 = p
                .parse()
                .map_err(|_| Error::Input(format!("bad prime in field spec '{}'", s)))?;
            PrimeField::new(p)?;
            return Ok(FieldSpec::PrimeField(p));
        }
        Err(Error::Input(format!("unknown field '{}' (expected rationals or fp:P)", s)))
    }

    pub fn render(&self) -> String {
        match self {
            FieldSpec::Rationals => "rationals".into(),
            FieldSpec::PrimeField(p) => format!("fp:{}", p),
        }
    }
}
