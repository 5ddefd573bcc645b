//! Exact arithmetic in the field of rational functions in `q` with integer
//! coefficients.
//!
//! A [`QScalar`] is stored as `num / den` where `num` is a Laurent polynomial
//! and `den` is an ordinary polynomial with non-zero constant term and a
//! positive constant coefficient. Powers of `q` are units, so they always live
//! in the numerator. Numerator and denominator are coprime over `Z[q]`, which
//! makes structural equality coincide with field equality.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Integer Laurent polynomial `sum_k c_k q^k`, stored densely from its
/// lowest exponent. Invariant: either empty (zero) or both ends non-zero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    low: i32,
    coeffs: Vec<BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `c * q^e`.
    pub fn monomial(c: i64, e: i32) -> Self {
        Self::from_parts(e, vec![BigInt::from(c)])
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms<I: IntoIterator<Item = (i32, i64)>>(terms: I) -> Self {
        let mut acc = Self::zero();
        for (e, c) in terms {
            acc = &acc + &Self::monomial(c, e);
        }
        acc
    }

    fn from_parts(low: i32, coeffs: Vec<BigInt>) -> Self {
        let mut p = LaurentPoly { low, coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead_zeros = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros == self.coeffs.len() {
            self.coeffs.clear();
            self.low = 0;
            return;
        }
        if lead_zeros > 0 {
            self.coeffs.drain(..lead_zeros);
            self.low += lead_zeros as i32;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Lowest exponent with a non-zero coefficient (0 for the zero polynomial).
    pub fn low_degree(&self) -> i32 {
        self.low
    }

    /// Highest exponent with a non-zero coefficient (0 for the zero polynomial).
    pub fn high_degree(&self) -> i32 {
        if self.is_zero() {
            0
        } else {
            self.low + self.coeffs.len() as i32 - 1
        }
    }

    /// Coefficient of `q^e`.
    pub fn coeff(&self, e: i32) -> BigInt {
        let k = e - self.low;
        if k < 0 || k as usize >= self.coeffs.len() {
            BigInt::zero()
        } else {
            self.coeffs[k as usize].clone()
        }
    }

    /// Non-zero `(exponent, coefficient)` pairs in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, &BigInt)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (self.low + k as i32, c))
    }

    /// True when the polynomial is `±q^k`.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].abs().is_one()
    }

    pub fn shift(&self, by: i32) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly { low: self.low + by, coeffs: self.coeffs.clone() }
    }

    /// Image under `q -> q^{-1}`.
    pub fn invert_variable(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        LaurentPoly { low: -self.high_degree(), coeffs }
    }

    pub fn scale_int(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly { low: self.low, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    fn div_int_exact(&self, c: &BigInt) -> Self {
        LaurentPoly { low: self.low, coeffs: self.coeffs.iter().map(|x| x / c).collect() }
    }

    /// Evaluates at a rational point. Fails with a pole error when a negative
    /// power is evaluated at zero.
    pub fn eval(&self, q0: &BigRational) -> Result<BigRational> {
        if self.is_zero() {
            return Ok(BigRational::zero());
        }
        if q0.is_zero() && self.low < 0 {
            return Err(Error::Pole(String::from("negative power of q at q = 0")));
        }
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * q0 + BigRational::from_integer(c.clone());
        }
        Ok(acc * pow_rational(q0, self.low))
    }

    fn pos_part(&self) -> (Vec<BigInt>, i32) {
        (self.coeffs.clone(), self.low)
    }
}

fn pow_rational(x: &BigRational, e: i32) -> BigRational {
    let mut r = BigRational::one();
    for _ in 0..e.unsigned_abs() {
        r *= x;
    }
    if e < 0 {
        r.recip()
    } else {
        r
    }
}

impl core::ops::Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let low = self.low.min(rhs.low);
        let high = self.high_degree().max(rhs.high_degree());
        let mut coeffs = vec![BigInt::zero(); (high - low + 1) as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.low - low) as usize + k] += c;
        }
        for (k, c) in rhs.coeffs.iter().enumerate() {
            coeffs[(rhs.low - low) as usize + k] += c;
        }
        LaurentPoly::from_parts(low, coeffs)
    }
}

impl core::ops::Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { low: self.low, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl core::ops::Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl core::ops::Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        LaurentPoly::from_parts(self.low + rhs.low, coeffs)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        let terms: Vec<_> = self.terms().collect();
        for (e, c) in terms.into_iter().rev() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else if neg {
                f.write_str("-")?;
            } else {
                f.write_str("+")?;
            }
            first = false;
            let unit = abs.is_one();
            match (e, unit) {
                (0, _) => write!(f, "{abs}")?,
                (_, true) => {}
                (_, false) => write!(f, "{abs}*")?,
            }
            match e {
                0 => {}
                1 => f.write_str("q")?,
                _ => write!(f, "q^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

// ---------------------------------------------------------------------------
// Dense integer polynomials (ascending coefficients) used for gcd work.

fn poly_trim(p: &mut Vec<BigInt>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn poly_content(p: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in p {
        g = g.gcd(c);
    }
    g
}

fn poly_primitive(p: &[BigInt]) -> Vec<BigInt> {
    let c = poly_content(p);
    if c.is_zero() {
        return Vec::new();
    }
    let mut out: Vec<BigInt> = p.iter().map(|x| x / &c).collect();
    if out.last().is_some_and(|l| l.is_negative()) {
        for x in out.iter_mut() {
            *x = -&*x;
        }
    }
    out
}

/// Pseudo-remainder of `a` by `b` (deg b >= 0, b non-zero).
fn poly_prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = b[db].clone();
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for x in r.iter_mut() {
            *x *= &lb;
        }
        for (k, bc) in b.iter().enumerate() {
            r[shift + k] -= &lr * bc;
        }
        poly_trim(&mut r);
    }
    r
}

/// Gcd over `Z[q]`, normalised to be primitive with positive leading coefficient,
/// times the gcd of the contents.
fn poly_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() {
        return b.to_vec();
    }
    if b.is_empty() {
        return a.to_vec();
    }
    let c = poly_content(a).gcd(&poly_content(b));
    let (mut x, mut y) = (poly_primitive(a), poly_primitive(b));
    if x.len() < y.len() {
        core::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        if y.len() == 1 {
            x = vec![BigInt::one()];
            break;
        }
        let r = poly_prem(&x, &y);
        x = y;
        y = poly_primitive(&r);
    }
    let mut g = poly_primitive(&x);
    for v in g.iter_mut() {
        *v *= &c;
    }
    g
}

/// Exact division `a / b` over `Z[q]`; `None` if not divisible.
fn poly_div_exact(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() < b.len() {
        return None;
    }
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    let mut quot = vec![BigInt::zero(); a.len() - db];
    for s in (0..quot.len()).rev() {
        let lr = &r[s + db];
        if lr.is_zero() {
            continue;
        }
        let (qc, rem) = lr.div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        for (k, bc) in b.iter().enumerate() {
            r[s + k] -= &qc * bc;
        }
        quot[s] = qc;
    }
    if r.iter().any(|x| !x.is_zero()) {
        return None;
    }
    poly_trim(&mut quot);
    Some(quot)
}

// ---------------------------------------------------------------------------

/// An element of `Q(q)` in canonical reduced form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QScalar {
    num: LaurentPoly,
    /// Polynomial with `low == 0`, positive constant term.
    den: LaurentPoly,
}

impl Default for QScalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl QScalar {
    pub fn zero() -> Self {
        QScalar { num: LaurentPoly::zero(), den: LaurentPoly::one() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(c: i64) -> Self {
        QScalar { num: LaurentPoly::monomial(c, 0), den: LaurentPoly::one() }
    }

    /// The generator `q`.
    pub fn q() -> Self {
        Self::q_pow(1)
    }

    /// `q^e`.
    pub fn q_pow(e: i32) -> Self {
        QScalar { num: LaurentPoly::monomial(1, e), den: LaurentPoly::one() }
    }

    /// `(-q)^e`.
    pub fn neg_q_pow(e: i32) -> Self {
        let s = if e.rem_euclid(2) == 0 { 1 } else { -1 };
        QScalar { num: LaurentPoly::monomial(s, e), den: LaurentPoly::one() }
    }

    pub fn from_laurent(p: LaurentPoly) -> Self {
        QScalar { num: p, den: LaurentPoly::one() }
    }

    /// Builds `num / den` and reduces to canonical form.
    pub fn from_fraction(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Domain(String::from("zero denominator")));
        }
        Ok(Self::canonical(num, den))
    }

    fn canonical(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        // move powers of q into the numerator
        let num = num.shift(-den.low);
        let den = den.shift(-den.low);
        if den.coeffs.len() == 1 {
            let d = &den.coeffs[0];
            let g = num.content().gcd(d);
            let mut n = num.div_int_exact(&g);
            let mut dd = d / &g;
            if dd.is_negative() {
                n = -&n;
                dd = -dd;
            }
            return QScalar { num: n, den: LaurentPoly { low: 0, coeffs: vec![dd] } };
        }
        let (np, nlow) = num.pos_part();
        let g = poly_gcd(&np, &den.coeffs);
        let (n, d) = if g.len() == 1 && g[0].is_one() {
            (np, den.coeffs)
        } else {
            let n = poly_div_exact(&np, &g).expect("gcd divides numerator");
            let d = poly_div_exact(&den.coeffs, &g).expect("gcd divides denominator");
            (n, d)
        };
        let mut n = LaurentPoly::from_parts(nlow, n);
        let mut d = LaurentPoly::from_parts(0, d);
        // d may have lost its constant term? No: g | d and d(0) != 0 imply g(0) != 0.
        let shift = d.low;
        if shift != 0 {
            n = n.shift(-shift);
            d = d.shift(-shift);
        }
        if d.coeffs[0].is_negative() {
            n = -&n;
            d = -&d;
        }
        QScalar { num: n, den: d }
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    /// True when the value lies in `Z[q, q^{-1}]`.
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    /// Returns the Laurent polynomial when the denominator is trivial.
    pub fn as_laurent(&self) -> Option<&LaurentPoly> {
        self.is_laurent().then_some(&self.num)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Domain(String::from("inversion of zero")));
        }
        Ok(Self::canonical(self.den.clone(), self.num.clone()))
    }

    pub fn pow(&self, e: i32) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Image under `q -> q^{-1}`.
    pub fn bar(&self) -> Self {
        Self::canonical(self.num.invert_variable(), self.den.invert_variable())
    }

    pub fn checked_div(&self, rhs: &QScalar) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    /// Exact value at `q = q0 > 0`.
    pub fn specialize(&self, q0: &BigRational) -> Result<BigRational> {
        if !q0.is_positive() {
            return Err(Error::Domain(String::from("specialization point must be positive")));
        }
        let d = self.den.eval(q0)?;
        if d.is_zero() {
            return Err(Error::Pole(alloc::format!("denominator of {self} vanishes at q = {q0}")));
        }
        Ok(self.num.eval(q0)? / d)
    }

    /// Sign of the value at `q0`, used for positivity checks.
    pub fn sign_at(&self, q0: &BigRational) -> Result<Ordering> {
        let v = self.specialize(q0)?;
        Ok(v.cmp(&BigRational::zero()))
    }
}

impl core::ops::Add for &QScalar {
    type Output = QScalar;
    fn add(self, rhs: &QScalar) -> QScalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return QScalar { num: &self.num + &rhs.num, den: LaurentPoly::one() };
        }
        if self.den == rhs.den {
            return QScalar::canonical(&self.num + &rhs.num, self.den.clone());
        }
        let n = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        QScalar::canonical(n, &self.den * &rhs.den)
    }
}

impl core::ops::Sub for &QScalar {
    type Output = QScalar;
    fn sub(self, rhs: &QScalar) -> QScalar {
        self + &(-rhs)
    }
}

impl core::ops::Neg for &QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        QScalar { num: -&self.num, den: self.den.clone() }
    }
}

impl core::ops::Neg for QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        -&self
    }
}

impl core::ops::Mul for &QScalar {
    type Output = QScalar;
    fn mul(self, rhs: &QScalar) -> QScalar {
        if self.is_zero() || rhs.is_zero() {
            return QScalar::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return QScalar { num: &self.num * &rhs.num, den: LaurentPoly::one() };
        }
        QScalar::canonical(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl core::ops::$tr for QScalar {
            type Output = QScalar;
            fn $m(self, rhs: QScalar) -> QScalar {
                (&self).$m(&rhs)
            }
        }
        impl core::ops::$tr<&QScalar> for QScalar {
            type Output = QScalar;
            fn $m(self, rhs: &QScalar) -> QScalar {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl core::ops::AddAssign<&QScalar> for QScalar {
    fn add_assign(&mut self, rhs: &QScalar) {
        *self = &*self + rhs;
    }
}

impl From<i64> for QScalar {
    fn from(c: i64) -> Self {
        QScalar::from_int(c)
    }
}

impl fmt::Display for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let low = self.num.low_degree();
        if self.den.is_one() && low >= 0 {
            return write!(f, "{}", self.num);
        }
        // present with non-negative exponents: multiply through by q^{-low}
        let shift = if low < 0 { -low } else { 0 };
        let n = self.num.shift(shift);
        let d = self.den.shift(shift);
        write!(f, "({n})/({d})")
    }
}

impl fmt::Debug for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `[n]_q = (q^n - q^{-n}) / (q - q^{-1})`.
pub fn q_int(n: i64) -> Result<QScalar> {
    if n <= 0 {
        return Err(Error::Domain(alloc::format!("q-integer needs n >= 1, got {n}")));
    }
    let n = n as i32;
    let terms = (0..n).map(|k| (n - 1 - 2 * k, 1));
    Ok(QScalar::from_laurent(LaurentPoly::from_terms(terms)))
}

/// `[n]_q!`, with `[0]_q! = 1`.
pub fn q_factorial(n: i64) -> Result<QScalar> {
    if n < 0 {
        return Err(Error::Domain(alloc::format!("q-factorial needs n >= 0, got {n}")));
    }
    let mut acc = QScalar::one();
    for k in 1..=n {
        acc = &acc * &q_int(k)?;
    }
    Ok(acc)
}

/// Gaussian binomial `[n choose k]_q` in the balanced normalisation.
pub fn q_binom(n: i64, k: i64) -> Result<QScalar> {
    if k < 0 || n < 0 || k > n {
        return Err(Error::Domain(alloc::format!("q-binomial out of range: ({n}, {k})")));
    }
    let r = q_factorial(n)?.checked_div(&(&q_factorial(k)? * &q_factorial(n - k)?))?;
    if !r.is_laurent() {
        return Err(Error::Internal(alloc::format!("q-binomial ({n},{k}) is not a Laurent polynomial")));
    }
    Ok(r)
}

/// Exact value of `a` at `q = q0`.
pub fn specialize(a: &QScalar, q0: &BigRational) -> Result<BigRational> {
    a.specialize(q0)
}

// ---------------------------------------------------------------------------
// Parsing: `expr := factor ('/' factor)?`, `factor := '(' poly ')' | poly`,
// `poly := term (('+'|'-') term)*`, `term := [int ['*']] ['q' ['^' int]]`.

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && (self.s[self.pos] as char).is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(alloc::format!("{msg} at byte {}", self.pos))
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if self.pos < self.s.len() && (self.s[self.pos] == b'-' || self.s[self.pos] == b'+') {
            self.pos += 1;
        }
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let txt = core::str::from_utf8(&self.s[start..self.pos]).map_err(|_| self.err("utf8"))?;
        txt.parse::<i64>().map_err(|_| self.err("expected integer"))
    }

    fn term(&mut self) -> Result<LaurentPoly> {
        let mut coeff = 1i64;
        let mut saw_coeff = false;
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            coeff = self.int()?;
            saw_coeff = true;
            if self.peek() == Some(b'*') {
                self.pos += 1;
            }
        }
        let mut exp = 0i32;
        if self.peek() == Some(b'q') {
            self.pos += 1;
            exp = 1;
            if self.peek() == Some(b'^') {
                self.pos += 1;
                let open = self.peek() == Some(b'{') || self.peek() == Some(b'(');
                if open {
                    self.pos += 1;
                }
                exp = self.int()? as i32;
                if open {
                    self.pos += 1;
                }
            }
        } else if !saw_coeff {
            return Err(self.err("expected term"));
        }
        Ok(LaurentPoly::monomial(coeff, exp))
    }

    fn poly(&mut self) -> Result<LaurentPoly> {
        let mut neg = false;
        if self.peek() == Some(b'-') {
            self.pos += 1;
            neg = true;
        } else if self.peek() == Some(b'+') {
            self.pos += 1;
        }
        let mut t = self.term()?;
        if neg {
            t = -&t;
        }
        let mut acc = t;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<LaurentPoly> {
        if self.peek() == Some(b'(') {
            self.pos += 1;
            let p = self.poly()?;
            if self.peek() != Some(b')') {
                return Err(self.err("expected ')'"));
            }
            self.pos += 1;
            Ok(p)
        } else {
            self.poly()
        }
    }
}

impl FromStr for QScalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser { s: s.as_bytes(), pos: 0 };
        let num = p.factor()?;
        let den = if p.peek() == Some(b'/') {
            p.pos += 1;
            p.factor()?
        } else {
            LaurentPoly::one()
        };
        if p.peek().is_some() {
            return Err(p.err("trailing input"));
        }
        QScalar::from_fraction(num, den)
    }
}

/// Parses a positive rational like `1/2` or `3`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| Error::Parse(alloc::format!("bad rational '{s}'")))?;
    let d: BigInt = d.parse().map_err(|_| Error::Parse(alloc::format!("bad rational '{s}'")))?;
    if d.is_zero() {
        return Err(Error::Parse(alloc::format!("zero denominator in '{s}'")));
    }
    Ok(BigRational::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn qs(s: &str) -> QScalar {
        s.parse().unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn add_q_and_inverse() {
        let r = &QScalar::q() + &QScalar::q_pow(-1);
        assert_eq!(r, qs("(q^2+1)/(q)"));
        assert_eq!(r.to_string(), "(q^2+1)/(q)");
    }

    #[test]
    fn field_inverses() {
        let a = qs("q - q^-1");
        assert!((&a * &a.inv().unwrap()).is_one());
        let b = qs("q^2+1");
        assert!((&b.inv().unwrap() * &b).is_one());
        assert!(matches!(QScalar::zero().inv(), Err(Error::Domain(_))));
    }

    #[test]
    fn q_integers() {
        assert!(q_int(1).unwrap().is_one());
        assert_eq!(q_int(2).unwrap(), qs("q + q^-1"));
        // (q^3 - q^-3)/(q - q^-1) at q = 2: (8 - 1/8)/(2 - 1/2) = 21/4
        assert_eq!(q_int(3).unwrap().specialize(&rat(2, 1)).unwrap(), rat(21, 4));
        assert_eq!(q_int(2).unwrap().specialize(&rat(1, 1)).unwrap(), rat(2, 1));
        assert_eq!(q_int(3).unwrap().specialize(&rat(1, 1)).unwrap(), rat(3, 1));
        assert!(q_int(0).is_err());
        let frac = (&QScalar::q_pow(3) - &QScalar::q_pow(-3))
            .checked_div(&(&QScalar::q() - &QScalar::q_pow(-1)))
            .unwrap();
        assert_eq!(frac, q_int(3).unwrap());
    }

    #[test]
    fn q_binomials() {
        assert!(q_binom(5, 0).unwrap().is_one());
        assert_eq!(q_binom(2, 1).unwrap(), qs("q+q^-1"));
        let b42 = q_binom(4, 2).unwrap();
        assert_eq!(b42.bar(), b42);
        // [4 choose 2] = q^4 + q^2 + 2 + q^-2 + q^-4
        assert_eq!(b42, qs("q^4+q^2+2+q^-2+q^-4"));
        assert!(q_binom(2, 3).is_err());
        for n in 0..=6 {
            for k in 0..=n {
                let b = q_binom(n, k).unwrap();
                assert!(b.is_laurent());
                assert_eq!(b, q_binom(n, n - k).unwrap());
            }
        }
    }

    #[test]
    fn specialize_generator_and_pole() {
        assert_eq!(QScalar::q().specialize(&rat(1, 2)).unwrap(), rat(1, 2));
        let pole = QScalar::one().checked_div(&qs("q - 1")).unwrap();
        assert!(matches!(pole.specialize(&rat(1, 1)), Err(Error::Pole(_))));
        // cancellation happens before evaluation
        let ok = qs("q^2 - 1").checked_div(&qs("q - 1")).unwrap();
        assert_eq!(ok.specialize(&rat(1, 1)).unwrap(), rat(2, 1));
    }

    #[test]
    fn canonical_form_sign_and_gcd() {
        let a = QScalar::from_fraction(LaurentPoly::from_terms([(2, 2), (0, -2)]), LaurentPoly::from_terms([(1, -4), (0, -4)]))
            .unwrap();
        // (2q^2-2)/(-4q-4) = (1-q)/2
        assert_eq!(a, qs("(1-q)/(2)"));
        assert!(a.denominator().coeff(0) > BigInt::zero());
    }

    #[test]
    fn parse_display_roundtrip() {
        for s in ["0", "1", "-q", "q^2+1", "(q^2+1)/(q)", "(3*q^3-q+2)/(q^2+q+1)", "-2*q^-3"] {
            let a = qs(s);
            assert_eq!(qs(&a.to_string()), a, "{s}");
        }
    }
}
