use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Embedding, Field, FieldError, Poly};

/// Exclusive upper bound on the characteristic.
pub const MAX_PRIME: u64 = 1 << 31;
/// Largest supported field order is `2^MAX_ORDER_BITS`.
const MAX_ORDER_BITS: u32 = 62;
/// Up to this field order, in-field roots are isolated by evaluating at every element.
const EXHAUSTIVE_ROOT_LIMIT: u64 = 1 << 16;

/// The finite field GF(p^k).
///
/// Elements are packed as integers in `[0, p^k)`: base-`p` digit `i` is the
/// coefficient of `g^i`, where `g` is the residue class of `x` modulo the
/// defining polynomial. Prime-field elements are therefore the same integers
/// in every extension.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Gf {
    p: u64,
    k: u32,
    order: u64,
    /// Coefficients of the monic modulus, lowest first, including the leading 1.
    /// Empty for prime fields.
    modulus: Vec<u64>,
    /// Modulus as a bit mask, only used when `p = 2`.
    modulus_bits: u128,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Builds GF(p^k) with the lexicographically smallest monic irreducible
/// modulus of degree `k` (coefficients compared constant term first).
pub fn make_field(p: u64, k: u32) -> Result<Gf, FieldError> {
    if !is_prime(p) {
        return Err(FieldError::NonPrimeCharacteristic(p));
    }
    let unsupported = FieldError::DegreeUnsupported { p, degree: k as u64 };
    if p >= MAX_PRIME || k == 0 {
        return Err(unsupported);
    }
    let mut order: u64 = 1;
    for _ in 0..k {
        order = order.checked_mul(p).ok_or(unsupported.clone())?;
        if order > 1 << MAX_ORDER_BITS {
            return Err(unsupported);
        }
    }
    let prime = Gf::prime(p);
    if k == 1 {
        return Ok(prime);
    }
    let modulus = smallest_irreducible(&prime, k as usize);
    let modulus_bits = if p == 2 {
        modulus
            .iter()
            .enumerate()
            .fold(0u128, |acc, (i, &c)| acc | ((c as u128) << i))
    } else {
        0
    };
    Ok(Gf {
        p,
        k,
        order,
        modulus,
        modulus_bits,
    })
}

fn smallest_irreducible(prime: &Gf, k: usize) -> Vec<u64> {
    let p = prime.p;
    let count = p.pow(k as u32);
    for index in 0..count {
        // constant term is the most significant digit of `index`
        let mut coeffs = vec![0u64; k + 1];
        let mut rest = index;
        for j in (0..k).rev() {
            coeffs[j] = rest % p;
            rest /= p;
        }
        coeffs[k] = 1;
        let f = Poly::new(prime, coeffs.clone());
        if has_prime_field_root(prime, &f) {
            continue;
        }
        if is_irreducible(prime, &f) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn has_prime_field_root(prime: &Gf, f: &Poly<Gf>) -> bool {
    prime.p <= 256 && (0..prime.p).any(|r| f.eval(prime, &r) == 0)
}

/// Rabin's test for a monic polynomial over a prime field.
pub(crate) fn is_irreducible(prime: &Gf, f: &Poly<Gf>) -> bool {
    let k = match f.degree() {
        None | Some(0) => return false,
        Some(1) => return true,
        Some(k) => k,
    };
    let x = Poly::x(prime);
    let mut frob = Vec::with_capacity(k + 1);
    let mut h = x.clone();
    frob.push(h.clone());
    for _ in 0..k {
        h = h.pow_mod(prime, prime.p, f).expect("nonzero modulus");
        frob.push(h.clone());
    }
    if frob[k] != x {
        return false;
    }
    prime_factors(k as u64).into_iter().all(|r| {
        let g = frob[k / r as usize].sub(prime, &x).gcd(prime, f);
        g.degree() == Some(0)
    })
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl Gf {
    fn prime(p: u64) -> Gf {
        Gf {
            p,
            k: 1,
            order: p,
            modulus: Vec::new(),
            modulus_bits: 0,
        }
    }

    /// The prime subfield GF(p).
    pub fn prime_subfield(&self) -> Gf {
        Gf::prime(self.p)
    }

    /// Defining polynomial over the prime field (`None` for prime fields).
    pub fn modulus(&self) -> Option<Poly<Gf>> {
        (self.k > 1).then(|| Poly::new(&self.prime_subfield(), self.modulus.clone()))
    }

    /// The residue class of `x`; only meaningful when `k > 1`.
    pub fn generator(&self) -> u64 {
        if self.k > 1 {
            self.p
        } else {
            0
        }
    }

    fn unpack(&self, mut a: u64, out: &mut [u64]) {
        for d in out.iter_mut().take(self.k as usize) {
            *d = a % self.p;
            a /= self.p;
        }
    }

    fn pack(&self, digits: &[u64]) -> u64 {
        digits
            .iter()
            .take(self.k as usize)
            .rev()
            .fold(0, |acc, &d| acc * self.p + d)
    }

    fn digits(&self, a: u64) -> Vec<u64> {
        let mut out = vec![0; self.k as usize];
        self.unpack(a, &mut out);
        out
    }

    fn mul_general(&self, a: u64, b: u64) -> u64 {
        let k = self.k as usize;
        let p = self.p;
        let mut da = [0u64; 64];
        let mut db = [0u64; 64];
        self.unpack(a, &mut da);
        self.unpack(b, &mut db);
        let mut prod = [0u64; 128];
        for i in 0..k {
            if da[i] == 0 {
                continue;
            }
            for j in 0..k {
                prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
            }
        }
        for i in (k..2 * k - 1).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            for j in 0..k {
                let sub = c * self.modulus[j] % p;
                prod[i - k + j] = (prod[i - k + j] + p - sub) % p;
            }
            prod[i] = 0;
        }
        self.pack(&prod[..k])
    }

    fn mul_binary(&self, a: u64, b: u64) -> u64 {
        let k = self.k as usize;
        let mut r: u128 = 0;
        let mut x = a as u128;
        let mut y = b;
        while y != 0 {
            if y & 1 == 1 {
                r ^= x;
            }
            x <<= 1;
            y >>= 1;
        }
        for i in (k..2 * k - 1).rev() {
            if (r >> i) & 1 == 1 {
                r ^= self.modulus_bits << (i - k);
            }
        }
        r as u64
    }

    fn inv_prime(&self, a: u64) -> u64 {
        let (mut t, mut new_t) = (0i64, 1i64);
        let (mut r, mut new_r) = (self.p as i64, a as i64);
        while new_r != 0 {
            let q = r / new_r;
            (t, new_t) = (new_t, t - q * new_t);
            (r, new_r) = (new_r, r - q * new_r);
        }
        t.rem_euclid(self.p as i64) as u64
    }

    /// Distinct roots of a monic squarefree polynomial that splits into
    /// linear factors, by equal-degree splitting.
    fn split_linear(&self, g: &Poly<Gf>, rng: &mut ChaCha8Rng, out: &mut Vec<u64>) {
        match g.degree() {
            None | Some(0) => return,
            Some(1) => {
                out.push(self.neg(&g.coeffs()[0]));
                return;
            }
            Some(_) => {}
        }
        let n = g.degree().unwrap();
        loop {
            let a = Poly::new(self, (0..n).map(|_| self.random(rng)).collect());
            if a.degree().unwrap_or(0) == 0 {
                continue;
            }
            let b = if self.p == 2 {
                let mut acc = a.clone();
                let mut t = a.clone();
                for _ in 1..self.k {
                    t = t.mul(self, &t).rem(self, g).unwrap();
                    acc = acc.add(self, &t);
                }
                acc
            } else {
                a.pow_mod(self, (self.order - 1) / 2, g)
                    .unwrap()
                    .sub(self, &Poly::constant(self, 1))
            };
            let d = b.gcd(self, g);
            let dd = d.degree().unwrap_or(0);
            if dd > 0 && dd < n {
                let (rest, _) = g.div_rem(self, &d).unwrap();
                self.split_linear(&d, rng, out);
                self.split_linear(&rest.monic(self).unwrap(), rng, out);
                return;
            }
        }
    }
}

impl fmt::Display for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 1 {
            write!(f, "GF({})", self.p)
        } else {
            write!(f, "GF({}^{})", self.p, self.k)
        }
    }
}

impl Field for Gf {
    type Elem = u64;

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn degree(&self) -> u32 {
        self.k
    }

    fn order(&self) -> Option<u64> {
        Some(self.order)
    }

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        if self.p == 2 {
            return a ^ b;
        }
        if self.k == 1 {
            return (a + b) % self.p;
        }
        let (mut x, mut y) = (*a, *b);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.k {
            out += (x % self.p + y % self.p) % self.p * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        out
    }

    fn neg(&self, a: &u64) -> u64 {
        if self.p == 2 {
            return *a;
        }
        if self.k == 1 {
            return (self.p - a) % self.p;
        }
        let mut x = *a;
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.k {
            out += (self.p - x % self.p) % self.p * place;
            x /= self.p;
            place *= self.p;
        }
        out
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        if *a == 0 || *b == 0 {
            return 0;
        }
        if self.k == 1 {
            a * b % self.p
        } else if self.p == 2 {
            self.mul_binary(*a, *b)
        } else {
            self.mul_general(*a, *b)
        }
    }

    fn inv(&self, a: &u64) -> Result<u64, FieldError> {
        if *a == 0 {
            return Err(FieldError::DivisionByZero);
        }
        Ok(if self.k == 1 {
            self.inv_prime(*a)
        } else {
            self.pow(a, self.order - 2)
        })
    }

    fn from_i64(&self, n: i64) -> u64 {
        (n as i128).rem_euclid(self.p as i128) as u64
    }

    fn element(&self, index: u64) -> Option<u64> {
        (index < self.order).then_some(index)
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.random_range(0..self.order)
    }

    fn parse_scalar(&self, text: &str) -> Result<u64, FieldError> {
        let err = |reason| FieldError::ScalarSyntax {
            text: String::from(text),
            reason,
        };
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err("empty"));
        }
        let mut digits = vec![0u64; self.k as usize];
        let bytes = compact.as_bytes();
        let mut start = 0;
        while start < bytes.len() {
            let mut negative = false;
            let mut i = start;
            if bytes[i] == b'+' || bytes[i] == b'-' {
                negative = bytes[i] == b'-';
                i += 1;
            }
            let mut end = i;
            while end < bytes.len() && bytes[end] != b'+' && bytes[end] != b'-' {
                end += 1;
            }
            let term = &compact[i..end];
            if term.is_empty() {
                return Err(err("empty term"));
            }
            let (coef_text, exponent) = match term.find('g') {
                None => (term, 0usize),
                Some(pos) => {
                    let after = &term[pos + 1..];
                    let e = if after.is_empty() {
                        1
                    } else {
                        after
                            .strip_prefix('^')
                            .ok_or(err("expected '^' after 'g'"))?
                            .parse::<usize>()
                            .map_err(|_| err("bad exponent"))?
                    };
                    (term[..pos].trim_end_matches('*'), e)
                }
            };
            if exponent >= self.k as usize {
                return Err(err("exponent must be below the field degree"));
            }
            let coef = if coef_text.is_empty() {
                1
            } else {
                let c = coef_text
                    .parse::<i128>()
                    .map_err(|_| err("bad coefficient"))?;
                c.rem_euclid(self.p as i128) as u64
            };
            let coef = if negative { (self.p - coef) % self.p } else { coef };
            digits[exponent] = (digits[exponent] + coef) % self.p;
            start = end;
        }
        Ok(self.pack(&digits))
    }

    fn format_scalar(&self, a: &u64) -> String {
        if self.k == 1 {
            return format!("{a}");
        }
        if *a == 0 {
            return String::from("0");
        }
        let digits = self.digits(*a);
        let mut terms = Vec::new();
        for (e, &c) in digits.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            terms.push(match (e, c) {
                (0, c) => format!("{c}"),
                (1, 1) => String::from("g"),
                (1, c) => format!("{c}g"),
                (e, 1) => format!("g^{e}"),
                (e, c) => format!("{c}g^{e}"),
            });
        }
        terms.join("+")
    }

    fn extend(&self, m: u32) -> Result<Embedding<Self>, FieldError> {
        if m == 0 {
            return Err(FieldError::DegreeUnsupported {
                p: self.p,
                degree: 0,
            });
        }
        if m == 1 {
            return Ok(Embedding::identity(self));
        }
        let total = self
            .k
            .checked_mul(m)
            .ok_or(FieldError::DegreeUnsupported {
                p: self.p,
                degree: self.k as u64 * m as u64,
            })?;
        let target = make_field(self.p, total)?;
        let generator_image = if self.k == 1 {
            0
        } else {
            // modulus coefficients are prime-field elements, valid in `target` unchanged
            let f = Poly::new(&target, self.modulus.clone());
            target.roots(&f)?[0].0
        };
        Ok(Embedding {
            source: self.clone(),
            target,
            degree: m,
            generator_image,
        })
    }

    fn embed(&self, emb: &Embedding<Self>, a: &u64) -> u64 {
        if self.k == 1 {
            return *a;
        }
        let t = &emb.target;
        self.digits(*a)
            .iter()
            .rev()
            .fold(0, |acc, d| t.add(&t.mul(&acc, &emb.generator_image), d))
    }

    fn roots(&self, f: &Poly<Self>) -> Result<Vec<(u64, usize)>, FieldError> {
        let f = f.monic(self)?;
        let zero_mult = f.coeffs().iter().take_while(|c| **c == 0).count();
        let rest = Poly::new(self, f.coeffs()[zero_mult..].to_vec());
        let mut out = Vec::new();
        if zero_mult > 0 {
            out.push((0, zero_mult));
        }
        if rest.degree().unwrap_or(0) == 0 {
            return Ok(out);
        }
        let x = Poly::x(self);
        let frob = x.pow_mod(self, self.order, &rest)?;
        let g = frob.sub(self, &x.rem(self, &rest)?).gcd(self, &rest);
        let g = if g.is_zero() { rest.clone() } else { g };
        let mut distinct = Vec::new();
        if g.degree().unwrap_or(0) > 0 {
            if self.order <= EXHAUSTIVE_ROOT_LIMIT {
                distinct.extend((1..self.order).filter(|r| g.eval(self, r) == 0));
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
                self.split_linear(&g, &mut rng, &mut distinct);
            }
        }
        distinct.sort_unstable();
        for r in distinct {
            out.push((r, rest.root_multiplicity(self, &r)));
        }
        out.sort_unstable();
        Ok(out)
    }

    fn splitting_degree(&self, f: &Poly<Self>) -> Result<u32, FieldError> {
        let f = f.monic(self)?;
        let n = f.degree().unwrap();
        if n <= 1 {
            return Ok(1);
        }
        // f splits over GF(q^m) iff f divides (x^(q^m) - x)^deg f
        let x = Poly::x(self);
        let x_mod = x.rem(self, &f)?;
        let mut frob = x_mod.clone();
        for m in 1..=4096u32 {
            frob = frob.pow_mod(self, self.order, &f)?;
            let test = frob.sub(self, &x_mod).pow_mod(self, n as u64, &f)?;
            if test.is_zero() {
                return Ok(m);
            }
        }
        Err(FieldError::DegreeUnsupported {
            p: self.p,
            degree: u64::from(self.k) * 4096,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn poly(field: &Gf, coeffs: &[u64]) -> Poly<Gf> {
        Poly::new(field, coeffs.to_vec())
    }

    #[test]
    fn prime_field_has_no_modulus() {
        let f = make_field(2, 1).unwrap();
        assert_eq!(f.order(), Some(2));
        assert!(f.modulus().is_none());
        assert_eq!(f.to_string(), "GF(2)");
    }

    #[test]
    fn gf4_modulus_is_x2_x_1() {
        let f = make_field(2, 2).unwrap();
        assert_eq!(f.modulus().unwrap().coeffs(), &[1, 1, 1]);
        assert_eq!(f.to_string(), "GF(2^2)");
    }

    #[test]
    fn gf9_modulus_is_x2_plus_1() {
        let f = make_field(3, 2).unwrap();
        assert_eq!(f.modulus().unwrap().coeffs(), &[1, 0, 1]);
    }

    #[test]
    fn gf8_modulus_is_x3_x2_1() {
        let f = make_field(2, 3).unwrap();
        assert_eq!(f.modulus().unwrap().coeffs(), &[1, 0, 1, 1]);
    }

    #[test]
    fn rejects_bad_characteristic() {
        assert_eq!(make_field(6, 1), Err(FieldError::NonPrimeCharacteristic(6)));
        assert_eq!(make_field(1, 1), Err(FieldError::NonPrimeCharacteristic(1)));
        assert!(matches!(
            make_field(2, 0),
            Err(FieldError::DegreeUnsupported { .. })
        ));
        assert!(matches!(
            make_field(2, 63),
            Err(FieldError::DegreeUnsupported { .. })
        ));
    }

    #[test]
    fn inverse_of_zero_is_an_error() {
        let f = make_field(5, 1).unwrap();
        assert_eq!(f.inv(&0), Err(FieldError::DivisionByZero));
        let g = make_field(3, 3).unwrap();
        assert_eq!(g.inv(&0), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn generator_satisfies_modulus() {
        for (p, k) in [(2, 2), (2, 5), (3, 2), (3, 3), (5, 2), (7, 3)] {
            let f = make_field(p, k).unwrap();
            let g = f.generator();
            let m = f.modulus().unwrap();
            assert_eq!(m.eval(&f, &g), 0, "GF({p}^{k})");
        }
    }

    #[test]
    fn scalar_text_round_trips() {
        let f = make_field(3, 3).unwrap();
        for a in 0..27 {
            let s = f.format_scalar(&a);
            assert_eq!(f.parse_scalar(&s).unwrap(), a, "{s}");
        }
        assert_eq!(f.format_scalar(&f.parse_scalar("g^2+2g").unwrap()), "g^2+2g");
        assert_eq!(f.parse_scalar("-g").unwrap(), f.parse_scalar("2g").unwrap());
        assert!(f.parse_scalar("g^3").is_err());
        assert!(f.parse_scalar("h").is_err());
        assert!(f.parse_scalar("").is_err());
        let p = make_field(7, 1).unwrap();
        assert_eq!(p.parse_scalar("-1").unwrap(), 6);
        assert!(p.parse_scalar("g").is_err());
    }

    #[test]
    fn roots_examples() {
        let f2 = make_field(2, 1).unwrap();
        assert_eq!(f2.roots(&poly(&f2, &[0, 1, 1])).unwrap(), vec![(0, 1), (1, 1)]);
        assert!(f2.roots(&poly(&f2, &[1, 1, 1])).unwrap().is_empty());
        let f4 = make_field(2, 2).unwrap();
        let g = f4.generator();
        let roots = f4.roots(&poly(&f4, &[1, 1, 1])).unwrap();
        assert_eq!(roots, vec![(g, 1), (f4.add(&g, &1), 1)]);
        assert_eq!(f2.roots(&Poly::zero()), Err(FieldError::ZeroPolynomial));
    }

    #[test]
    fn large_field_roots_use_equal_degree_splitting() {
        for (p, k) in [(2, 20), (3, 11), (65537, 1)] {
            let f = make_field(p, k).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(7);
            let rs: Vec<u64> = (0..4).map(|_| f.random(&mut rng)).collect();
            let mut all = rs.clone();
            all.push(rs[1]);
            let poly = Poly::from_roots(&f, &all)
                .mul(&f, &Poly::new(&f, vec![1, 0, 1, 1]).monic(&f).unwrap());
            let found = f.roots(&poly).unwrap();
            for r in &rs {
                assert!(found.iter().any(|(x, _)| x == r));
            }
            for (r, m) in found {
                assert_eq!(poly.eval(&f, &r), 0);
                assert_eq!(poly.root_multiplicity(&f, &r), m);
            }
        }
    }

    #[test]
    fn splitting_degree_examples() {
        let f2 = make_field(2, 1).unwrap();
        assert_eq!(f2.splitting_degree(&poly(&f2, &[0, 1, 1])).unwrap(), 1);
        assert_eq!(f2.splitting_degree(&poly(&f2, &[1, 1, 1])).unwrap(), 2);
        let prod = poly(&f2, &[1, 1, 1]).mul(&f2, &poly(&f2, &[1, 1, 0, 1]));
        assert_eq!(f2.splitting_degree(&prod).unwrap(), 6);
        // repeated irreducible factor
        let sq = poly(&f2, &[1, 1, 1]).mul(&f2, &poly(&f2, &[1, 1, 1]));
        assert_eq!(f2.splitting_degree(&sq).unwrap(), 2);
    }

    #[test]
    fn extension_embeddings() {
        let f2 = make_field(2, 1).unwrap();
        let e = f2.extend(2).unwrap();
        assert_eq!(e.target(), &make_field(2, 2).unwrap());
        assert_eq!(e.apply(&0), 0);
        assert_eq!(e.apply(&1), 1);
        let f4 = make_field(2, 2).unwrap();
        let id = f4.extend(1).unwrap();
        for a in 0..4 {
            assert_eq!(id.apply(&a), a);
        }
        let f3 = make_field(3, 1).unwrap();
        assert_eq!(
            f3.extend(2).unwrap().target().modulus().unwrap().coeffs(),
            &[1, 0, 1]
        );
    }
}
