//! Exact arithmetic building blocks: big rationals, univariate polynomials
//! over Q, rational functions, and `u64` modular arithmetic.

use num::bigint::Sign;
use num::{BigInt, BigRational, Integer, One, Signed, Zero};

pub type Int = BigInt;
pub type Rat = BigRational;

/// Integer as a rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `n/d` as a rational; panics on `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Rational from big integer.
pub fn rat_int(n: Int) -> Rat {
    Rat::from_integer(n)
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd_u64(a, b) * b
    }
}

/// Least common multiple of the denominators of a set of rationals.
pub fn denominator_lcm<'a>(xs: impl Iterator<Item = &'a Rat>) -> Int {
    let mut l = BigInt::one();
    for x in xs {
        l = l.lcm(x.denom());
    }
    l
}

/// Deterministic Miller–Rabin primality test, exact for all `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn powmod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, m);
        }
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo prime `p`.
pub fn invmod(a: u64, p: u64) -> u64 {
    powmod(a % p, p - 2, p)
}

/// Smallest primitive root modulo an odd prime `q`.
pub fn primitive_root(q: u64) -> u64 {
    if q == 2 {
        return 1;
    }
    let mut factors = Vec::new();
    let mut m = q - 1;
    let mut f = 2u64;
    while f * f <= m {
        if m % f == 0 {
            factors.push(f);
            while m % f == 0 {
                m /= f;
            }
        }
        f += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    'cand: for g in 2..q {
        for &f in &factors {
            if powmod(g, (q - 1) / f, q) == 1 {
                continue 'cand;
            }
        }
        return g;
    }
    unreachable!("every prime has a primitive root")
}

/// Reduce a rational modulo prime `q`; `None` when the denominator (or the
/// value itself) is not a unit story compatible with `q`.
pub fn rat_mod(x: &Rat, q: u64) -> Option<u64> {
    let qi = BigInt::from(q);
    let den = x.denom().mod_floor(&qi);
    if den.is_zero() {
        return None;
    }
    let num = x.numer().mod_floor(&qi);
    let num = big_to_u64(&num);
    let den = big_to_u64(&den);
    Some(mulmod(num, invmod(den, q), q))
}

fn big_to_u64(x: &BigInt) -> u64 {
    let (sign, digits) = x.to_u64_digits();
    match (sign, digits.len()) {
        (Sign::NoSign, _) => 0,
        (Sign::Plus, 1) => digits[0],
        _ => panic!("value out of u64 range after reduction"),
    }
}

/// Dense univariate polynomial over Q, used for polynomials in `s`, in `T`
/// and in `L`. Coefficient of degree `i` sits at index `i`; the zero
/// polynomial is the empty vector.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct QPoly(pub Vec<Rat>);

impl QPoly {
    pub fn zero() -> Self {
        QPoly(Vec::new())
    }

    pub fn constant(c: Rat) -> Self {
        if c.is_zero() {
            QPoly::zero()
        } else {
            QPoly(vec![c])
        }
    }

    pub fn one() -> Self {
        QPoly::constant(Rat::one())
    }

    /// The monomial `c * x^k`.
    pub fn monomial(c: Rat, k: usize) -> Self {
        if c.is_zero() {
            return QPoly::zero();
        }
        let mut v = vec![Rat::zero(); k + 1];
        v[k] = c;
        QPoly(v)
    }

    /// `a + b*x` as a polynomial.
    pub fn linear(a: Rat, b: Rat) -> Self {
        QPoly(vec![a, b]).trimmed()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.0.len() - 1)
        }
    }

    pub fn trimmed(mut self) -> Self {
        while matches!(self.0.last(), Some(c) if c.is_zero()) {
            self.0.pop();
        }
        self
    }

    pub fn add(&self, other: &QPoly) -> QPoly {
        let n = self.0.len().max(other.0.len());
        let mut v = vec![Rat::zero(); n];
        for (i, c) in self.0.iter().enumerate() {
            v[i] += c;
        }
        for (i, c) in other.0.iter().enumerate() {
            v[i] += c;
        }
        QPoly(v).trimmed()
    }

    pub fn sub(&self, other: &QPoly) -> QPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> QPoly {
        QPoly(self.0.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, other: &QPoly) -> QPoly {
        if self.is_zero() || other.is_zero() {
            return QPoly::zero();
        }
        let mut v = vec![Rat::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                if !b.is_zero() {
                    v[i + j] += a * b;
                }
            }
        }
        QPoly(v).trimmed()
    }

    pub fn scale(&self, c: &Rat) -> QPoly {
        if c.is_zero() {
            return QPoly::zero();
        }
        QPoly(self.0.iter().map(|x| x * c).collect())
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Euclidean division; panics if `d` is zero.
    pub fn div_rem(&self, d: &QPoly) -> (QPoly, QPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut r = self.clone();
        let mut q = QPoly::zero();
        let dd = d.degree().unwrap();
        let lead = d.0[dd].clone();
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let c = &r.0[rd] / &lead;
            let t = QPoly::monomial(c, rd - dd);
            q = q.add(&t);
            r = r.sub(&t.mul(d));
        }
        (q, r)
    }

    /// Monic gcd over Q.
    pub fn gcd(&self, other: &QPoly) -> QPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        if let Some(d) = a.degree() {
            let lead = a.0[d].clone();
            a = a.scale(&(Rat::one() / lead));
        }
        a
    }

    /// Scales so all coefficients are integers with gcd 1 and positive
    /// leading coefficient; returns the scaled polynomial.
    pub fn integer_normalized(&self) -> QPoly {
        if self.is_zero() {
            return QPoly::zero();
        }
        let l = denominator_lcm(self.0.iter());
        let ints: Vec<Int> = self
            .0
            .iter()
            .map(|c| (c * rat_int(l.clone())).to_integer())
            .collect();
        let mut g = BigInt::zero();
        for c in &ints {
            g = g.gcd(c);
        }
        let mut v: Vec<Rat> = ints.iter().map(|c| rat_int(c / &g)).collect();
        if v.last().unwrap().is_negative() {
            for c in v.iter_mut() {
                *c = -c.clone();
            }
        }
        QPoly(v)
    }

    /// Pretty print in the given variable, highest degree first.
    pub fn pretty(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let abs = c.abs();
            let coef = if abs.is_one() && i > 0 {
                String::new()
            } else if abs.is_integer() {
                abs.numer().to_string()
            } else {
                format!("{}/{}", abs.numer(), abs.denom())
            };
            let body = match i {
                0 => {
                    if coef.is_empty() {
                        "1".into()
                    } else {
                        coef
                    }
                }
                1 => {
                    if coef.is_empty() {
                        var.to_string()
                    } else {
                        format!("{}*{}", coef, var)
                    }
                }
                _ => {
                    if coef.is_empty() {
                        format!("{}^{}", var, i)
                    } else {
                        format!("{}*{}^{}", coef, var, i)
                    }
                }
            };
            if out.is_empty() {
                if sign == "-" {
                    out.push('-');
                }
                out.push_str(&body);
            } else {
                out.push_str(&format!(" {} {}", sign, body));
            }
        }
        out
    }
}

/// Reduced rational function `num/den` in one variable over Q.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatFn {
    pub num: QPoly,
    pub den: QPoly,
}

impl RatFn {
    pub fn new(num: QPoly, den: QPoly) -> RatFn {
        assert!(!den.is_zero(), "zero denominator");
        RatFn { num, den }.reduced()
    }

    pub fn zero() -> RatFn {
        RatFn {
            num: QPoly::zero(),
            den: QPoly::one(),
        }
    }

    pub fn one() -> RatFn {
        RatFn {
            num: QPoly::one(),
            den: QPoly::one(),
        }
    }

    pub fn from_poly(p: QPoly) -> RatFn {
        RatFn {
            num: p,
            den: QPoly::one(),
        }
    }

    fn reduced(self) -> RatFn {
        if self.num.is_zero() {
            return RatFn::zero();
        }
        let g = self.num.gcd(&self.den);
        let (num, _) = self.num.div_rem(&g);
        let (den, _) = self.den.div_rem(&g);
        // Normalize the denominator to have leading coefficient 1.
        let lead = den.0[den.degree().unwrap()].clone();
        RatFn {
            num: num.scale(&(Rat::one() / &lead)),
            den: den.scale(&(Rat::one() / &lead)),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, other: &RatFn) -> RatFn {
        RatFn::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &RatFn) -> RatFn {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RatFn {
        RatFn {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &RatFn) -> RatFn {
        RatFn::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn div(&self, other: &RatFn) -> RatFn {
        assert!(!other.is_zero(), "division by zero rational function");
        RatFn::new(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    /// Power-series coefficients at the origin up to and including `order`;
    /// requires a nonzero constant term in the denominator.
    pub fn series(&self, order: usize) -> Option<Vec<Rat>> {
        let d0 = self.den.0.first()?.clone();
        if d0.is_zero() {
            return None;
        }
        let mut out = Vec::with_capacity(order + 1);
        for k in 0..=order {
            let mut c = if k < self.num.0.len() {
                self.num.0[k].clone()
            } else {
                Rat::zero()
            };
            for j in 1..=k {
                let dj = if j < self.den.0.len() {
                    self.den.0[j].clone()
                } else {
                    Rat::zero()
                };
                c -= dj * &out[k - j];
            }
            out.push(c / &d0);
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_and_roots() {
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(7919));
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64(561)); // Carmichael
        let q = 13;
        let g = primitive_root(q);
        let mut seen = std::collections::HashSet::new();
        let mut x = 1u64;
        for _ in 0..q - 1 {
            x = mulmod(x, g, q);
            seen.insert(x);
        }
        assert_eq!(seen.len(), (q - 1) as usize);
    }

    #[test]
    fn poly_division_and_gcd() {
        // (x^2 - 1) / (x - 1) = x + 1
        let p = QPoly(vec![rat(-1), rat(0), rat(1)]);
        let d = QPoly(vec![rat(-1), rat(1)]);
        let (q, r) = p.div_rem(&d);
        assert!(r.is_zero());
        assert_eq!(q, QPoly(vec![rat(1), rat(1)]));
        let g = p.gcd(&d);
        assert_eq!(g, QPoly(vec![rat(-1), rat(1)]));
    }

    #[test]
    fn ratfn_series() {
        // 1/(1 - x) = 1 + x + x^2 + ...
        let f = RatFn::new(QPoly::one(), QPoly(vec![rat(1), rat(-1)]));
        let s = f.series(3).unwrap();
        assert_eq!(s, vec![rat(1), rat(1), rat(1), rat(1)]);
    }

    #[test]
    fn pretty_poly() {
        let p = QPoly(vec![rat(5), rat(4)]);
        assert_eq!(p.pretty("s"), "4*s + 5");
    }
}
