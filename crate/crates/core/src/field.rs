//! Exact arithmetic in GF(p) and GF(p²) for odd primes p.
//!
//! A [`Field`] is a small `Copy` descriptor; every [`Scalar`] carries its field
//! so that matrices and forms never need a separate context argument.
//! GF(p²) is realised as GF(p)[t]/(t² + m1·t + m0) with the lexicographically
//! least irreducible monic quadratic, and carries the Frobenius involution
//! `x ↦ x^p` whose fixed field is GF(p).

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};

/// Descriptor of GF(p) (degree 1) or GF(p²) (degree 2).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Field {
    p: u32,
    degree: u8,
    // modulus t² + m1·t + m0 (both zero when degree = 1)
    m0: u32,
    m1: u32,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Builds GF(p) or GF(p²).
pub fn make_field(p: u64, degree: u32) -> Result<Field> {
    Field::new(p, degree)
}

impl Field {
    pub fn new(p: u64, degree: u32) -> Result<Field> {
        if p == 2 {
            return Err(Error::CharacteristicTwo);
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        // keeps products of two residues inside u64
        if p >= 1 << 16 {
            return Err(Error::InvalidInput(format!("characteristic {p} too large")));
        }
        let p = p as u32;
        match degree {
            1 => Ok(Field { p, degree: 1, m0: 0, m1: 0 }),
            2 => {
                // coefficient order (1, m1, m0), lexicographically least irreducible
                for m1 in 0..p {
                    for m0 in 0..p {
                        let has_root = (0..p as u64).any(|x| {
                            (x * x + m1 as u64 * x + m0 as u64).is_multiple_of(p as u64)
                        });
                        if !has_root {
                            return Ok(Field { p, degree: 2, m0, m1 });
                        }
                    }
                }
                unreachable!("every odd prime admits an irreducible quadratic")
            }
            d => Err(Error::UnsupportedDegree(d)),
        }
    }

    /// Parses a field given either by its order `q` ("3", "9") or as "p,deg".
    pub fn parse(spec: &str) -> Result<Field> {
        let spec = spec.trim();
        if let Some((p, d)) = spec.split_once(',') {
            let p = p.trim().parse::<u64>().map_err(|_| Error::Parse(format!("bad field '{spec}'")))?;
            let d = d.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad field '{spec}'")))?;
            return Field::new(p, d);
        }
        let q = spec.parse::<u64>().map_err(|_| Error::Parse(format!("bad field '{spec}'")))?;
        if q == 2 || q == 4 {
            return Err(Error::CharacteristicTwo);
        }
        if is_prime(q) {
            return Field::new(q, 1);
        }
        let r = (q as f64).sqrt().round() as u64;
        if r * r == q && is_prime(r) {
            return Field::new(r, 2);
        }
        Err(Error::InvalidInput(format!("{q} is neither a prime nor the square of a prime")))
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.degree as u32
    }

    /// Number of elements q = p^degree.
    pub fn order(&self) -> u64 {
        (self.p as u64).pow(self.degree as u32)
    }

    /// The fixed field of the involution (the field itself when degree = 1).
    pub fn base(&self) -> Field {
        Field { p: self.p, degree: 1, m0: 0, m1: 0 }
    }

    pub fn is_extension(&self) -> bool {
        self.degree == 2
    }

    /// Modulus coefficients `[m0, m1, 1]`, present only for degree 2.
    pub fn modulus(&self) -> Option<[u32; 3]> {
        self.is_extension().then_some([self.m0, self.m1, 1])
    }

    pub fn zero(&self) -> Scalar {
        Scalar { c0: 0, c1: 0, field: *self }
    }

    pub fn one(&self) -> Scalar {
        Scalar { c0: 1, c1: 0, field: *self }
    }

    /// The class of `t`; `None` over a prime field.
    pub fn generator(&self) -> Option<Scalar> {
        self.is_extension().then_some(Scalar { c0: 0, c1: 1, field: *self })
    }

    pub fn from_int(&self, v: i64) -> Scalar {
        Scalar { c0: v.rem_euclid(self.p as i64) as u32, c1: 0, field: *self }
    }

    pub fn from_coeffs(&self, c0: i64, c1: i64) -> Result<Scalar> {
        let c1 = c1.rem_euclid(self.p as i64) as u32;
        if c1 != 0 && !self.is_extension() {
            return Err(Error::InvalidInput("t-coefficient over a prime field".into()));
        }
        Ok(Scalar { c0: c0.rem_euclid(self.p as i64) as u32, c1, field: *self })
    }

    /// Element number `index` in the canonical enumeration order (c0 varies fastest).
    pub fn element(&self, index: u64) -> Scalar {
        debug_assert!(index < self.order());
        let p = self.p as u64;
        Scalar { c0: (index % p) as u32, c1: (index / p) as u32, field: *self }
    }

    pub fn elements(self) -> impl Iterator<Item = Scalar> {
        (0..self.order()).map(move |i| self.element(i))
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        self.element(rng.random_range(0..self.order()))
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        self.element(rng.random_range(1..self.order()))
    }

    pub fn parse_scalar(&self, text: &str) -> Result<Scalar> {
        parse_scalar(*self, text)
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_extension() {
            write!(f, "GF({}) = GF({})[t]/(t^2", self.order(), self.p)?;
            if self.m1 != 0 {
                write!(f, "+{}*t", self.m1)?;
            }
            if self.m0 != 0 {
                write!(f, "+{}", self.m0)?;
            }
            write!(f, ")")
        } else {
            write!(f, "GF({})", self.p)
        }
    }
}

/// An element of a [`Field`], stored as `c0 + c1·t` with reduced residues.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar {
    c0: u32,
    c1: u32,
    field: Field,
}

impl Scalar {
    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> (u32, u32) {
        (self.c0, self.c1)
    }

    pub fn is_zero(&self) -> bool {
        self.c0 == 0 && self.c1 == 0
    }

    pub fn is_one(&self) -> bool {
        self.c0 == 1 && self.c1 == 0
    }

    /// True when the scalar lies in the fixed field GF(p).
    pub fn in_base(&self) -> bool {
        self.c1 == 0
    }

    /// Index of this element in [`Field::element`] order.
    pub fn index(&self) -> u64 {
        self.c0 as u64 + self.c1 as u64 * self.field.p as u64
    }

    pub fn pow(self, mut e: u64) -> Scalar {
        let mut acc = self.field.one();
        let mut base = self;
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    pub fn inv(self) -> Option<Scalar> {
        if self.is_zero() {
            None
        } else {
            Some(self.pow(self.field.order() - 2))
        }
    }

    /// The involution `x ↦ x^p`: the non-trivial automorphism of GF(p²), identity on GF(p).
    pub fn conj(self) -> Scalar {
        if !self.field.is_extension() {
            return self;
        }
        // t^p is the other root of the modulus: -m1 - t
        let p = self.field.p as u64;
        let c0 = (self.c0 as u64 + (p - self.c1 as u64) * self.field.m1 as u64) % p;
        Scalar { c0: c0 as u32, c1: ((p - self.c1 as u64) % p) as u32, field: self.field }
    }

    /// Relative trace `x + x*` onto the fixed field.
    pub fn tr_rel(self) -> Result<Scalar> {
        if !self.field.is_extension() {
            return Err(Error::KindMismatch("relative trace needs a quadratic extension".into()));
        }
        Ok(self + self.conj())
    }

    /// Component on `1` and `t`, each as an element of the base field.
    pub fn base_coords(&self) -> [Scalar; 2] {
        let b = self.field.base();
        [Scalar { c0: self.c0, c1: 0, field: b }, Scalar { c0: self.c1, c1: 0, field: b }]
    }

    /// Reinterprets a base-field scalar inside `field` (same characteristic).
    pub fn embed(self, field: Field) -> Scalar {
        debug_assert_eq!(self.field.p, field.p);
        Scalar { c0: self.c0, c1: if field.is_extension() { self.c1 } else { 0 }, field }
    }
}

/// Free function form of [`Scalar::conj`].
pub fn involution(x: Scalar) -> Scalar {
    x.conj()
}

/// Free function form of [`Scalar::tr_rel`].
pub fn tr_rel(x: Scalar) -> Result<Scalar> {
    x.tr_rel()
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        debug_assert_eq!(self.field, rhs.field);
        let p = self.field.p;
        Scalar { c0: (self.c0 + rhs.c0) % p, c1: (self.c1 + rhs.c1) % p, field: self.field }
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        self + (-rhs)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        let p = self.field.p;
        Scalar { c0: (p - self.c0) % p, c1: (p - self.c1) % p, field: self.field }
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        debug_assert_eq!(self.field, rhs.field);
        let p = self.field.p as u64;
        let (a0, a1, b0, b1) = (self.c0 as u64, self.c1 as u64, rhs.c0 as u64, rhs.c1 as u64);
        if self.field.degree == 1 {
            return Scalar { c0: (a0 * b0 % p) as u32, c1: 0, field: self.field };
        }
        // t² = -m1·t - m0
        let hi = a1 * b1 % p;
        let c0 = (a0 * b0 + (p - hi) * self.field.m0 as u64) % p;
        let c1 = (a0 * b1 + a1 * b0 + (p - hi) * self.field.m1 as u64) % p;
        Scalar { c0: c0 as u32, c1: c1 as u32, field: self.field }
    }
}

impl AddAssign for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        *self = *self + rhs;
    }
}

impl SubAssign for Scalar {
    fn sub_assign(&mut self, rhs: Scalar) {
        *self = *self - rhs;
    }
}

impl MulAssign for Scalar {
    fn mul_assign(&mut self, rhs: Scalar) {
        *self = *self * rhs;
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.is_extension() {
            write!(f, "{}+{}*t", self.c0, self.c1)
        } else {
            write!(f, "{}", self.c0)
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn parse_scalar(field: Field, text: &str) -> Result<Scalar> {
    let bad = || Error::Parse(format!("bad scalar '{text}'"));
    let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if cleaned.is_empty() {
        return Err(bad());
    }
    // split into signed terms
    let mut terms = Vec::new();
    let mut start = 0;
    for (i, ch) in cleaned.char_indices() {
        if (ch == '+' || ch == '-') && i > start {
            terms.push(&cleaned[start..i]);
            start = i;
        }
    }
    terms.push(&cleaned[start..]);
    let mut acc = field.zero();
    for term in terms {
        let (neg, body) = match term.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, term.strip_prefix('+').unwrap_or(term)),
        };
        let value = if let Some(coef) = body.strip_suffix("*t") {
            let c = coef.parse::<i64>().map_err(|_| bad())?;
            field.generator().ok_or_else(bad)? * field.from_int(c)
        } else if body == "t" {
            field.generator().ok_or_else(bad)?
        } else {
            field.from_int(body.parse::<i64>().map_err(|_| bad())?)
        };
        acc += if neg { -value } else { value };
    }
    Ok(acc)
}

impl FromStr for Field {
    type Err = Error;
    fn from_str(s: &str) -> Result<Field> {
        Field::parse(s)
    }
}

/// Minimal commutative-ring interface shared by [`Scalar`] and [`DualScalar`].
pub trait Ring:
    Clone + PartialEq + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
}

impl Ring for Scalar {}

/// `value + slope·s` in F[s]/(s²).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct DualScalar {
    pub value: Scalar,
    pub slope: Scalar,
}

impl DualScalar {
    pub fn new(value: Scalar, slope: Scalar) -> Self {
        DualScalar { value, slope }
    }

    pub fn constant(value: Scalar) -> Self {
        DualScalar { value, slope: value.field().zero() }
    }
}

impl Add for DualScalar {
    type Output = DualScalar;
    fn add(self, rhs: DualScalar) -> DualScalar {
        DualScalar { value: self.value + rhs.value, slope: self.slope + rhs.slope }
    }
}

impl Sub for DualScalar {
    type Output = DualScalar;
    fn sub(self, rhs: DualScalar) -> DualScalar {
        DualScalar { value: self.value - rhs.value, slope: self.slope - rhs.slope }
    }
}

impl Neg for DualScalar {
    type Output = DualScalar;
    fn neg(self) -> DualScalar {
        DualScalar { value: -self.value, slope: -self.slope }
    }
}

impl Mul for DualScalar {
    type Output = DualScalar;
    fn mul(self, rhs: DualScalar) -> DualScalar {
        DualScalar {
            value: self.value * rhs.value,
            slope: self.value * rhs.slope + self.slope * rhs.value,
        }
    }
}

impl Ring for DualScalar {}

#[cfg(test)]
mod tests {
    use super::*;

    fn fields() -> Vec<Field> {
        vec![
            Field::new(3, 1).unwrap(),
            Field::new(5, 1).unwrap(),
            Field::new(7, 1).unwrap(),
            Field::new(3, 2).unwrap(),
            Field::new(5, 2).unwrap(),
            Field::new(7, 2).unwrap(),
        ]
    }

    #[test]
    fn gf9_modulus_is_t2_plus_1() {
        // enumerate monic quadratics over GF(3) in (m1, m0) order, first one without roots
        let mut first = None;
        'outer: for m1 in 0..3u64 {
            for m0 in 0..3u64 {
                if (0..3u64).all(|x| (x * x + m1 * x + m0) % 3 != 0) {
                    first = Some([m0 as u32, m1 as u32, 1]);
                    break 'outer;
                }
            }
        }
        let f = make_field(3, 2).unwrap();
        assert_eq!(f.modulus(), first);
        assert_eq!(f.modulus(), Some([1, 0, 1]));
        assert_eq!(f.order(), 9);
    }

    #[test]
    fn rejects_char_two_and_composites() {
        assert!(matches!(make_field(2, 1), Err(Error::CharacteristicTwo)));
        assert!(matches!(make_field(9, 1), Err(Error::NotPrime(9))));
        assert!(matches!(make_field(3, 3), Err(Error::UnsupportedDegree(3))));
        assert!(matches!(Field::parse("4"), Err(Error::CharacteristicTwo)));
        assert_eq!(Field::parse("9").unwrap(), make_field(3, 2).unwrap());
        assert_eq!(Field::parse("5,2").unwrap().order(), 25);
    }

    #[test]
    fn field_axioms_exhaustive() {
        for f in fields() {
            let els: Vec<_> = f.elements().collect();
            assert_eq!(els.len() as u64, f.order());
            for &a in &els {
                assert_eq!(a + f.zero(), a);
                assert_eq!(a * f.one(), a);
                assert_eq!(a + (-a), f.zero());
                if !a.is_zero() {
                    assert_eq!(a * a.inv().unwrap(), f.one(), "{f} {a}");
                }
                for &b in &els {
                    assert_eq!(a + b, b + a);
                    assert_eq!(a * b, b * a);
                    if !a.is_zero() && !b.is_zero() {
                        assert!(!(a * b).is_zero(), "zero divisor in {f}");
                    }
                }
            }
            // associativity and distributivity on a coarser grid
            for &a in els.iter().step_by(2) {
                for &b in els.iter().step_by(3) {
                    for &c in &els {
                        assert_eq!((a * b) * c, a * (b * c));
                        assert_eq!(a * (b + c), a * b + a * c);
                        assert_eq!((a + b) + c, a + (b + c));
                    }
                }
            }
        }
    }

    #[test]
    fn involution_is_frobenius_of_order_two() {
        for f in fields() {
            let p = f.characteristic() as u64;
            for a in f.elements() {
                assert_eq!(a.conj(), a.pow(p));
                assert_eq!(a.conj().conj(), a);
                assert_eq!(a.conj() == a, a.in_base());
                for b in f.elements() {
                    assert_eq!((a * b).conj(), a.conj() * b.conj());
                    assert_eq!((a + b).conj(), a.conj() + b.conj());
                }
            }
            if f.is_extension() {
                assert!(f.elements().any(|a| a.conj() != a));
            }
        }
    }

    #[test]
    fn gf9_involution_examples() {
        let f = make_field(3, 2).unwrap();
        let i = f.generator().unwrap();
        assert_eq!(i * i, -f.one());
        assert_eq!(involution(i), -i);
        assert_eq!(involution(f.one()), f.one());
        for a in 0..3 {
            for b in 0..3 {
                let x = f.from_coeffs(a, b).unwrap();
                assert_eq!(involution(x), f.from_coeffs(a, -b).unwrap());
            }
        }
    }

    #[test]
    fn relative_trace() {
        let f = make_field(3, 2).unwrap();
        assert_eq!(tr_rel(f.one()).unwrap(), f.from_int(2));
        assert_eq!(tr_rel(f.generator().unwrap()).unwrap(), f.zero());
        let mut image: Vec<u64> = f.elements().map(|x| tr_rel(x).unwrap().index()).collect();
        image.sort();
        image.dedup();
        assert_eq!(image, vec![0, 1, 2]);
        assert!(f.elements().all(|x| tr_rel(x).unwrap().in_base()));
        assert!(tr_rel(make_field(3, 1).unwrap().one()).is_err());
    }

    #[test]
    fn scalar_text_round_trip() {
        for f in fields() {
            for a in f.elements() {
                assert_eq!(f.parse_scalar(&a.to_string()).unwrap(), a);
            }
        }
        let f = make_field(3, 2).unwrap();
        assert_eq!(f.parse_scalar("-t").unwrap(), -f.generator().unwrap());
        assert_eq!(f.parse_scalar("1 - 2*t").unwrap(), f.from_coeffs(1, 1).unwrap());
        assert!(make_field(3, 1).unwrap().parse_scalar("t").is_err());
        assert!(f.parse_scalar("x").is_err());
    }

    #[test]
    fn dual_numbers_multiply_with_s_squared_zero() {
        let f = make_field(7, 1).unwrap();
        for x in f.elements() {
            for y in f.elements().step_by(2) {
                let u = f.from_int(3);
                let v = f.from_int(5);
                let a = DualScalar::new(x, y);
                let b = DualScalar::new(u, v);
                let prod = a * b;
                assert_eq!(prod, DualScalar::new(x * u, x * v + y * u));
                // projection to the value part is a ring morphism
                assert_eq!((a + b).value, x + u);
                assert_eq!(prod.value, x * u);
                assert_eq!((-a).value, -x);
            }
        }
    }
}
