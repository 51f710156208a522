//! Threshold functions of the extraction theorems as exact big integers.
//!
//! Ramsey numbers appear inside several of them and are not known in
//! general. They are replaced by an explicit upper-bound stub, selected by
//! [`RamseyStub`], and every report names the stub in use.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{CheckedSub, One, ToPrimitive, Zero};

/// Results wider than this many bits are not materialized.
pub const MAX_BITS: u64 = 1 << 22;

/// Binomials `C(n, k)` are evaluated only for `min(k, n - k)` up to this.
const MAX_BINOMIAL_TERMS: u64 = 20_000;

/// An evaluated bound, or a marker that it exceeds the evaluation cap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bound {
    Exact(BigUint),
    TooLarge,
}

impl Bound {
    pub fn exact(&self) -> Option<&BigUint> {
        match self {
            Bound::Exact(n) => Some(n),
            Bound::TooLarge => None,
        }
    }

    /// The value as a `usize` when it fits.
    pub fn to_usize(&self) -> Option<usize> {
        self.exact().and_then(ToPrimitive::to_usize)
    }

    fn map(self, f: impl FnOnce(BigUint) -> Bound) -> Bound {
        match self {
            Bound::Exact(n) => f(n),
            Bound::TooLarge => Bound::TooLarge,
        }
    }

    fn capped(n: BigUint) -> Bound {
        if n.bits() > MAX_BITS {
            Bound::TooLarge
        } else {
            Bound::Exact(n)
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Exact(n) => write!(f, "{n}"),
            Bound::TooLarge => write!(f, "not evaluated (exceeds {MAX_BITS} bits)"),
        }
    }
}

/// Upper bounds used in place of Ramsey numbers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum RamseyStub {
    /// `R(a, b) <= C(a+b-2, a-1)`; `R(n; q) <= (q(n-1))! / ((n-1)!)^q`,
    /// the product of binomials `C(j(n-1), n-1)` for `j = 1..q`.
    #[default]
    Binomial,
    /// `R(a, b) <= 2^(a+b)`; `R(n; q) <= q^(qn)`.
    Exponential,
}

impl RamseyStub {
    pub fn describe(self) -> &'static str {
        match self {
            RamseyStub::Binomial => {
                "Ramsey numbers replaced by upper bounds: R(a,b) <= C(a+b-2, a-1), \
                 R(n;q) <= (q(n-1))!/((n-1)!)^q, R(n;1) = n"
            }
            RamseyStub::Exponential => {
                "Ramsey numbers replaced by upper bounds: R(a,b) <= 2^(a+b), \
                 R(n;q) <= q^(qn), R(n;1) = n"
            }
        }
    }

    /// Stub for `R(a, b)`.
    pub fn two(self, a: &BigUint, b: &BigUint) -> Bound {
        if a.is_zero() || b.is_zero() {
            return Bound::Exact(BigUint::zero());
        }
        if a.is_one() {
            return Bound::Exact(BigUint::one());
        }
        if b.is_one() {
            return Bound::Exact(BigUint::one());
        }
        match self {
            RamseyStub::Binomial => binomial(&(a + b - 2u32), &(a - 1u32)),
            RamseyStub::Exponential => pow2(&(a + b)),
        }
    }

    /// Stub for `R(n; q)`, `q` colours.
    pub fn many(self, n: &BigUint, q: u64) -> Bound {
        if q <= 1 || n.is_zero() || n.is_one() {
            return Bound::Exact(if q == 0 { BigUint::zero() } else { n.clone() });
        }
        match self {
            RamseyStub::Binomial => {
                let k = n - 1u32;
                let mut acc = BigUint::one();
                for j in 1..=q {
                    match binomial(&(&k * j), &k) {
                        Bound::Exact(b) => acc *= b,
                        Bound::TooLarge => return Bound::TooLarge,
                    }
                    if acc.bits() > MAX_BITS {
                        return Bound::TooLarge;
                    }
                }
                Bound::Exact(acc)
            }
            RamseyStub::Exponential => {
                let exponent = n * q;
                let bits_per = 64 - q.leading_zeros() as u64;
                match exponent.to_u64() {
                    Some(e) if e.saturating_mul(bits_per) <= MAX_BITS => {
                        Bound::Exact(BigUint::from(q).pow(e as u32))
                    }
                    _ => Bound::TooLarge,
                }
            }
        }
    }
}

fn pow2(exponent: &BigUint) -> Bound {
    match exponent.to_u64() {
        Some(e) if e <= MAX_BITS => Bound::Exact(BigUint::one() << e),
        _ => Bound::TooLarge,
    }
}

/// `C(n, k)` when it can be evaluated within the caps.
pub fn binomial(n: &BigUint, k: &BigUint) -> Bound {
    if k > n {
        return Bound::Exact(BigUint::zero());
    }
    let other = n - k;
    let k = if &other < k { other } else { k.clone() };
    let terms = match k.to_u64() {
        Some(t) if t <= MAX_BINOMIAL_TERMS => t,
        _ => return Bound::TooLarge,
    };
    let mut acc = BigUint::one();
    for i in 0..terms {
        acc = acc * (n - i) / (i + 1);
        if acc.bits() > MAX_BITS {
            return Bound::TooLarge;
        }
    }
    Bound::Exact(acc)
}

fn choose2(n: &BigUint) -> BigUint {
    if n.is_zero() {
        return BigUint::zero();
    }
    n * (n - 1u32) / 2u32
}

/// `g_ω(t) = (ω+2) 2^(t(ω+1)+1)`, the arboricity that forces a long cycle
/// with value in `A` when `|Γ \ A| <= ω`.
pub fn g_omega(omega: u64, t: u64) -> Bound {
    let exponent = BigUint::from(t) * (omega + 1) + 1u32;
    pow2(&exponent).map(|p| Bound::capped(p * (omega + 2)))
}

/// `r_{ω+1}(t) = t + C(t,2)(ω² + ω - 1)`.
pub fn r_top(omega: u64, t: u64) -> BigUint {
    let t = BigUint::from(t);
    let w = BigUint::from(omega);
    let factor = (&w * &w + &w).checked_sub(&BigUint::one()).unwrap_or_default();
    &t + choose2(&t) * factor
}

/// `r_0(t), ..., r_{ω+1}(t)` from `r_{i-1} = R(t, R(r_i; ω))`.
pub fn r_sequence(omega: u64, t: u64, stub: RamseyStub) -> Vec<Bound> {
    let len = omega as usize + 2;
    let mut out = vec![Bound::TooLarge; len];
    out[len - 1] = Bound::Exact(r_top(omega, t));
    let t_big = BigUint::from(t);
    for i in (1..len).rev() {
        out[i - 1] = out[i]
            .clone()
            .map(|r| stub.many(&r, omega))
            .map(|inner| stub.two(&t_big, &inner));
    }
    out
}

/// `c_i(t) = Σ_{j<i} C(r_j(t), 2)` for `i = 1..=ω+1`, given `r_0..r_ω`.
pub fn c_sequence(r: &[Bound]) -> Vec<Bound> {
    let mut out = Vec::with_capacity(r.len().saturating_sub(1));
    let mut acc = Bound::Exact(BigUint::zero());
    for rj in r.iter().take(r.len().saturating_sub(1)) {
        acc = match (acc, rj) {
            (Bound::Exact(s), Bound::Exact(r)) => Bound::capped(s + choose2(r)),
            _ => Bound::TooLarge,
        };
        out.push(acc.clone());
    }
    out
}

/// `f_ω(t, d) = (r_0 + 2 c_{ω+1}) 2^(2(d+1) c_{ω+1})`.
pub fn f_omega(omega: u64, t: u64, d: u64, stub: RamseyStub) -> Bound {
    let r = r_sequence(omega, t, stub);
    let c = c_sequence(&r);
    f_from(&r[0], c.last().unwrap(), d)
}

fn f_from(r0: &Bound, c_top: &Bound, d: u64) -> Bound {
    match (r0, c_top) {
        (Bound::Exact(r0), Bound::Exact(c)) => {
            let exponent = c * (2 * (d + 1));
            pow2(&exponent).map(|p| Bound::capped((r0 + c * 2u32) * p))
        }
        _ => Bound::TooLarge,
    }
}

/// `μ = max((ω+2)², 2ω+6)`.
pub fn mu(omega: u64) -> u64 {
    ((omega + 2) * (omega + 2)).max(2 * omega + 6)
}

/// `β = R(μ; p)`.
pub fn beta(omega: u64, p: u64, stub: RamseyStub) -> Bound {
    stub.many(&BigUint::from(mu(omega)), p)
}

/// `r = R(β; ω³)`.
pub fn r_inner(omega: u64, p: u64, stub: RamseyStub) -> Bound {
    beta(omega, p, stub).map(|b| stub.many(&b, omega.pow(3)))
}

/// `f_{(ω,p)}(k) = (r + k)(ω + 2)`: how many branch vertices an
/// `(A,1)`-subdivision needs to contain an `(A,k)`-cycle.
pub fn f_omega_p(omega: u64, p: u64, k: u64, stub: RamseyStub) -> Bound {
    r_inner(omega, p, stub).map(|r| Bound::capped((r + k) * (omega + 2)))
}

/// Every threshold for one `(ω, t, d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundsReport {
    pub omega: u64,
    pub t: u64,
    pub d: u64,
    pub stub: RamseyStub,
    pub g_t: Bound,
    pub g_d: Bound,
    /// `r_0, ..., r_{ω+1}`.
    pub r: Vec<Bound>,
    /// `c_1, ..., c_{ω+1}`.
    pub c: Vec<Bound>,
    pub f: Bound,
}

impl BoundsReport {
    pub fn new(omega: u64, t: u64, d: u64, stub: RamseyStub) -> Self {
        let r = r_sequence(omega, t, stub);
        let c = c_sequence(&r);
        let f = f_from(&r[0], c.last().unwrap(), d);
        BoundsReport {
            omega,
            t,
            d,
            stub,
            g_t: g_omega(omega, t),
            g_d: g_omega(omega, d),
            r,
            c,
            f,
        }
    }
}

impl fmt::Display for BoundsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (w, t, d) = (self.omega, self.t, self.d);
        writeln!(f, "g_{w}({t}) = {}", self.g_t)?;
        if d != t {
            writeln!(f, "g_{w}({d}) = {}", self.g_d)?;
        }
        for (i, r) in self.r.iter().enumerate() {
            writeln!(f, "r_{i}({t}) = {r}")?;
        }
        for (i, c) in self.c.iter().enumerate() {
            writeln!(f, "c_{}({t}) = {c}", i + 1)?;
        }
        writeln!(f, "f_{w}({t},{d}) = {}", self.f)?;
        writeln!(f, "stub: {}", self.stub.describe())
    }
}
