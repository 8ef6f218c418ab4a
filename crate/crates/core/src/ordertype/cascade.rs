//! The parameter cascade `alpha_i, delta_i, Delta_i, beta_i, eta_i,
//! gamma_i, Gamma_i` in exact log space.
//!
//! Every quantity is a monomial `2^a 3^b X^e` over one of two atoms,
//! `E = eps/8` or `F = Delta/12`, with arbitrary-precision exponents. The
//! irrational `t = 2 sqrt(k log_{1/p} n)` is bracketed by consecutive
//! integers and every inequality is decided over the whole bracket.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exponents beyond this many bits are reported as overflow.
pub const MAX_EXPONENT_BITS: u64 = 1 << 20;

/// `log2 3` lies in `[LOG2_3_LO, LOG2_3_HI] / 2^20`.
const LOG2_3_LO: i64 = 1_661_953;
const LOG2_3_HI: i64 = 1_661_954;
const LOG2_3_DEN: i64 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Atom {
    /// `eps / 8`
    E,
    /// `Delta / 12`
    F,
}

/// `2^two * 3^three * atom^exp`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub two: BigInt,
    pub three: BigInt,
    pub atom: Atom,
    pub exp: BigInt,
}

impl Monomial {
    pub fn new(two: i64, three: i64, atom: Atom, exp: impl Into<BigInt>) -> Self {
        Monomial { two: two.into(), three: three.into(), atom, exp: exp.into() }
    }

    pub fn one(atom: Atom) -> Self {
        Self::new(0, 0, atom, 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.atom, other.atom, "monomials over different atoms");
        Monomial {
            two: &self.two + &other.two,
            three: &self.three + &other.three,
            atom: self.atom,
            exp: &self.exp + &other.exp,
        }
    }

    pub fn pow(&self, e: &BigInt) -> Monomial {
        Monomial { two: &self.two * e, three: &self.three * e, atom: self.atom, exp: &self.exp * e }
    }

    /// Rewrites a monomial over `F` in terms of `E`, given `Delta = E^d`.
    pub fn in_e(&self, delta_exp: &BigInt) -> Monomial {
        match self.atom {
            Atom::E => self.clone(),
            Atom::F => Monomial {
                two: &self.two - 2 * &self.exp,
                three: &self.three - &self.exp,
                atom: Atom::E,
                exp: delta_exp * &self.exp,
            },
        }
    }

    /// The rational coefficient `2^two 3^three`, if its exponents are small.
    pub fn coefficient(&self) -> Option<BigRational> {
        let (a, b) = (self.two.to_i32()?, self.three.to_i32()?);
        if a.unsigned_abs() > 4096 || b.unsigned_abs() > 4096 {
            return None;
        }
        let pow = |base: u32, e: i32| {
            let v = BigRational::from_integer(BigInt::from(base).pow(e.unsigned_abs()));
            if e < 0 { v.recip() } else { v }
        };
        Some(pow(2, a) * pow(3, b))
    }

    fn log2_coefficient(&self) -> Log2 {
        let l3 = Log2 {
            lo: BigRational::new(LOG2_3_LO.into(), LOG2_3_DEN.into()),
            hi: BigRational::new(LOG2_3_HI.into(), LOG2_3_DEN.into()),
        };
        Log2::exact(BigRational::from_integer(self.two.clone())).add(&l3.scale(&self.three))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let atom = match self.atom {
            Atom::E => "(eps/8)",
            Atom::F => "(Delta/12)",
        };
        match self.coefficient() {
            Some(c) if c.is_one() => {}
            Some(c) => write!(f, "{c} * ")?,
            None => write!(f, "2^{} 3^{} * ", self.two, self.three)?,
        }
        write!(f, "{atom}^{}", self.exp)
    }
}

/// A closed rational bracket `[lo, hi]` around a base-2 logarithm.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Log2 {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Log2 {
    fn exact(v: BigRational) -> Self {
        Log2 { lo: v.clone(), hi: v }
    }

    fn add(&self, o: &Log2) -> Log2 {
        Log2 { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }

    fn neg(&self) -> Log2 {
        Log2 { lo: -&self.hi, hi: -&self.lo }
    }

    fn scale(&self, e: &BigInt) -> Log2 {
        let e = BigRational::from_integer(e.clone());
        if e.is_negative() {
            Log2 { lo: &self.hi * &e, hi: &self.lo * &e }
        } else {
            Log2 { lo: &self.lo * &e, hi: &self.hi * &e }
        }
    }

    fn verdict(&self) -> Verdict {
        if !self.lo.is_negative() {
            Verdict::Holds
        } else if self.hi.is_negative() {
            Verdict::Fails
        } else {
            Verdict::Undecided
        }
    }

    /// `log2 m` to within `2^-12`.
    fn of_u64(m: u64) -> Log2 {
        const SHIFT: u32 = 12;
        if m.is_power_of_two() {
            return Log2::exact(BigRational::from_integer(BigInt::from(m.trailing_zeros())));
        }
        let bits = BigUint::from(m).pow(1 << SHIFT).bits() as i64;
        let den = BigInt::from(1i64 << SHIFT);
        Log2 {
            lo: BigRational::new(BigInt::from(bits - 1), den.clone()),
            hi: BigRational::new(BigInt::from(bits), den),
        }
    }

    fn of_biguint(n: &BigUint) -> Log2 {
        let shift = n.bits().saturating_sub(64);
        let top = (n >> shift).to_u64().expect("64 bits");
        let mut l = Log2::of_u64(top);
        if shift > 0 {
            l.hi = Log2::of_u64(top + 1).hi;
        }
        let s = BigRational::from_integer(BigInt::from(shift));
        Log2 { lo: l.lo + &s, hi: l.hi + s }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
    /// The bracket on `t` (or a log bound) is too coarse to decide.
    Undecided,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Identity {
    pub name: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Link {
    pub name: String,
    pub verdict: Verdict,
    /// Bracket on `log2(lhs / rhs)`.
    pub margin: Log2,
}

#[derive(Debug, Clone)]
pub struct CascadeParams {
    pub k: u64,
    pub q: u64,
    pub n: BigUint,
    pub p: Ratio<u64>,
    /// `floor(t) <= t <= ceil(t)`, equal when `t` is an integer.
    pub t_floor: u64,
    pub t_ceil: u64,
    /// `eps = p^t / 2` lies in `[eps_lo, eps_hi]`.
    pub eps_lo: BigRational,
    pub eps_hi: BigRational,
    /// Per-level families, entry `i - 1` holds level `i` for `1 <= i <= q`.
    pub alpha: Vec<Monomial>,
    pub delta: Vec<Monomial>,
    pub lambda: Vec<Monomial>,
    pub beta: Vec<Monomial>,
    pub eta: Vec<Monomial>,
    pub gamma: Vec<Monomial>,
    /// `kappa_i = kappa_factor_i * d_{I_{i-1}}(S_{i-1})^2 * r_i`.
    pub kappa_factor: Vec<Monomial>,
    /// `Delta_0 ..= Delta_q` over `E`.
    pub big_delta: Vec<Monomial>,
    /// `Gamma_0 ..= Gamma_q` over `F`.
    pub big_gamma: Vec<Monomial>,
    pub identities: Vec<Identity>,
    pub links: Vec<Link>,
    log2_e: Log2,
}

fn big(v: u64) -> BigInt {
    BigInt::from(v)
}

fn pow(b: u64, e: u64) -> BigInt {
    big(b).pow(e as u32)
}

/// `(eps alpha / 4)^{2h}` with `eps = 8E`.
fn lambda_of(alpha: &Monomial, h: u64) -> Monomial {
    let eps = Monomial::new(3, 0, Atom::E, 1);
    eps.mul(alpha).mul(&Monomial::new(-2, 0, Atom::E, 0)).pow(&big(2 * h))
}

/// Decides `den^{m^2} >= n^{4k} num^{m^2}`, i.e. `t <= m`, or the reverse
/// inequality when `at_least` is set (`t >= m`).
fn compare_t(n4k: &BigUint, p: Ratio<u64>, m: u64, at_least: bool) -> Result<bool> {
    let m2 = m.checked_mul(m).filter(|&v| v <= u32::MAX as u64).ok_or_else(|| Error::Overflow(format!("t bracket near {m} is too large")))?;
    let (num, den) = (BigUint::from(*p.numer()), BigUint::from(*p.denom()));
    let bits = (64 - p.denom().leading_zeros()) as u64 * m2;
    if bits > 1 << 28 {
        return Err(Error::Overflow(format!("p^(m^2) at m = {m} needs {bits} bits")));
    }
    let lhs = den.pow(m2 as u32);
    let rhs = n4k * num.pow(m2 as u32);
    Ok(if at_least { lhs <= rhs } else { lhs >= rhs })
}

fn t_bracket(k: u64, n: &BigUint, p: Ratio<u64>) -> Result<(u64, u64)> {
    if n.bits().saturating_mul(4 * k) > 1 << 28 {
        return Err(Error::Overflow("n^(4k) needs more than 2^28 bits".into()));
    }
    let n4k = n.pow((4 * k) as u32);
    let ln_n = Log2::of_biguint(n);
    let est = {
        let lp = Log2::of_u64(*p.denom()).add(&Log2::of_u64(*p.numer()).neg());
        let mid = |l: &Log2| (l.lo.to_f64().unwrap_or(0.0) + l.hi.to_f64().unwrap_or(0.0)) / 2.0;
        let t = 2.0 * libm::sqrt(k as f64 * mid(&ln_n) / mid(&lp));
        if t.is_finite() { t as u64 } else { 0 }
    };
    let mut m = est;
    while !compare_t(&n4k, p, m, false)? {
        m += 1;
    }
    while m > 0 && compare_t(&n4k, p, m - 1, false)? {
        m -= 1;
    }
    let floor = if compare_t(&n4k, p, m, true)? { m } else { m - 1 };
    Ok((floor, m))
}

fn eps_at(p: Ratio<u64>, m: u64) -> BigRational {
    let num = BigInt::from(*p.numer()).pow(m as u32);
    let den = BigInt::from(*p.denom()).pow(m as u32) * 2;
    BigRational::new(num, den)
}

impl CascadeParams {
    /// Level-`i` entry of a per-level family.
    pub fn level<'a>(&self, family: &'a [Monomial], i: u64) -> &'a Monomial {
        &family[(i - 1) as usize]
    }

    /// Exponent of `Delta = E^d`.
    pub fn delta_exponent(&self) -> &BigInt {
        &self.big_delta[self.q as usize].exp
    }

    /// The lemma-form `lambda_i = (eps alpha_i / 4)^{2h}` for clique size `h`.
    pub fn lambda_for(&self, h: u64) -> Vec<Monomial> {
        self.alpha.iter().map(|a| lambda_of(a, h)).collect()
    }

    /// Whether the lemma-form `lambda` for size `h` differs from the
    /// instantiation with exponent `2k`.
    pub fn lambda_differs(&self, h: u64) -> bool {
        self.lambda_for(h) != self.lambda
    }

    pub fn all_identities_hold(&self) -> bool {
        self.identities.iter().all(|i| i.holds)
    }

    pub fn link(&self, name: &str) -> Option<&Link> {
        self.links.iter().find(|l| l.name == name)
    }

    /// Bracket on `log2(a / b)` for monomials over either atom.
    pub fn log2_ratio(&self, a: &Monomial, b: &Monomial) -> Log2 {
        let d = self.delta_exponent();
        let q = a.in_e(d).mul(&b.in_e(d).pow(&BigInt::from(-1)));
        let c = q.log2_coefficient();
        if q.exp.is_zero() {
            return c;
        }
        c.add(&self.log2_e.scale(&q.exp))
    }

    fn push_link(&mut self, name: String, margin: Log2) {
        self.links.push(Link { name, verdict: margin.verdict(), margin });
    }
}

/// Evaluates the recurrences, compares each family with its closed form,
/// and checks the inequality chain over the bracket on `t`.
pub fn cascade_params(k: u64, q: u64, n: &BigUint, p: Ratio<u64>) -> Result<CascadeParams> {
    if k < 2 || q < 2 {
        return Err(Error::domain(format!("need k, q >= 2, got k = {k}, q = {q}")));
    }
    if *p.numer() == 0 || p >= Ratio::from_integer(1) {
        return Err(Error::domain(format!("p = {p} must lie in (0, 1)")));
    }
    if n.is_zero() {
        return Err(Error::domain("n must be positive"));
    }
    // The largest exponent used is k^{18q}.
    if 18 * q * (64 - k.leading_zeros() as u64) > MAX_EXPONENT_BITS || q > 1 << 16 {
        return Err(Error::Overflow(format!("k^(18q) exceeds {MAX_EXPONENT_BITS} bits at k = {k}, q = {q}")));
    }
    let (t_floor, t_ceil) = t_bracket(k, n, p)?;
    let (eps_lo, eps_hi) = (eps_at(p, t_ceil), eps_at(p, t_floor));
    let log2_p = Log2::of_u64(*p.numer()).add(&Log2::of_u64(*p.denom()).neg());
    let four = BigRational::from_integer(big(4));
    let log2_e = Log2 {
        lo: &log2_p.lo * BigRational::from_integer(big(t_ceil)) - &four,
        hi: &log2_p.hi * BigRational::from_integer(big(t_floor)) - &four,
    };
    let (qi, kk) = (q as usize, big(k));

    let mut alpha = alloc::vec![Monomial::one(Atom::E); qi];
    let mut delta = alpha.clone();
    alpha[qi - 1] = Monomial::new(-1, 0, Atom::E, 0);
    for i in (1..=qi).rev() {
        delta[i - 1] = lambda_of(&alpha[i - 1], k);
        if i > 1 {
            alpha[i - 2] = delta[i - 1].mul(&alpha[i - 1]);
        }
    }
    let lambda: Vec<Monomial> = alpha.iter().map(|a| lambda_of(a, k)).collect();
    let mut big_delta = alloc::vec![Monomial::one(Atom::E)];
    for i in 1..=qi {
        let next = delta[i - 1].mul(&big_delta[i - 1].pow(&big(2)));
        big_delta.push(next);
    }

    let delta_f = Monomial::new(2, 1, Atom::F, 1);
    let mut beta = alloc::vec![Monomial::one(Atom::F); qi];
    let mut eta = beta.clone();
    let mut gamma = beta.clone();
    beta[qi - 1] = Monomial::new(-2, -1, Atom::F, 0);
    for i in (1..=qi).rev() {
        eta[i - 1] = beta[i - 1].mul(&delta_f);
        gamma[i - 1] = eta[i - 1].pow(&big(k + 1));
        if i > 1 {
            beta[i - 2] = gamma[i - 1].mul(&beta[i - 1]);
        }
    }
    let mut big_gamma = alloc::vec![Monomial::one(Atom::F)];
    for i in 1..=qi {
        let next = gamma[i - 1].mul(&big_gamma[i - 1]);
        big_gamma.push(next);
    }
    let d_exp = big_delta[qi].exp.clone();
    let kappa_factor = (0..qi)
        .map(|i| lambda[i].mul(&beta[i].in_e(&d_exp)).mul(&eta[i].in_e(&d_exp).pow(&kk)))
        .collect();

    let mut identities = Vec::new();
    let mut id = |name: String, holds: bool| identities.push(Identity { name, holds });
    for i in 0..q {
        let lvl = (q - i - 1) as usize;
        let (b2, b3) = (pow(2 * k + 1, i), pow(k + 2, i));
        id(format!("delta_{{q-{i}}} = (eps/8)^(2k(2k+1)^{i})"), delta[lvl] == Monomial::new(0, 0, Atom::E, 2 * &kk * &b2));
        id(format!("alpha_{{q-{i}}} = 1/2 (eps/8)^((2k+1)^{i}-1)"), alpha[lvl] == Monomial::new(-1, 0, Atom::E, &b2 - 1));
        id(format!("beta_{{q-{i}}} = 1/12 (Delta/12)^((k+2)^{i}-1)"), beta[lvl] == Monomial::new(-2, -1, Atom::F, &b3 - 1));
        id(format!("eta_{{q-{i}}} = (Delta/12)^((k+2)^{i})"), eta[lvl] == Monomial::new(0, 0, Atom::F, b3.clone()));
        id(format!("gamma_{{q-{i}}} = (Delta/12)^((k+1)(k+2)^{i})"), gamma[lvl] == Monomial::new(0, 0, Atom::F, (&kk + 1) * &b3));
        id(format!("lambda_{{q-{i}}} = delta_{{q-{i}}}"), lambda[lvl] == delta[lvl]);
    }
    let prod: BigInt = (0..q).map(|i| 2 * &kk * pow(4 * k + 2, i)).sum();
    id("Delta = prod_i (eps/8)^(2k(4k+2)^i)".into(), big_delta[qi] == Monomial::new(0, 0, Atom::E, prod));
    id("Gamma = (Delta/12)^((k+2)^q-1)".into(), big_gamma[qi] == Monomial::new(0, 0, Atom::F, pow(k + 2, q) - 1));
    id("Delta_0 = 1".into(), big_delta[0] == Monomial::one(Atom::E));
    id("Gamma_0 = 1".into(), big_gamma[0] == Monomial::one(Atom::F));

    let mut c = CascadeParams {
        k,
        q,
        n: n.clone(),
        p,
        t_floor,
        t_ceil,
        eps_lo,
        eps_hi,
        alpha,
        delta,
        lambda,
        beta,
        eta,
        gamma,
        kappa_factor,
        big_delta,
        big_gamma,
        identities,
        links: Vec::new(),
        log2_e,
    };

    let e_pow = |x: BigInt| Monomial::new(0, 0, Atom::E, x);
    let x2 = pow(k + 2, 2 * q);
    let kq = pow(k + 2, q);
    let bound = Monomial::new(-2, -1, Atom::E, &x2 - 2).pow(&(&kq - 1));
    let big_d = c.big_delta[qi].clone();
    let big_g = c.big_gamma[qi].clone();
    let checks = [
        ("Delta >= (eps/8)^((4k+2)^q)", big_d.clone(), e_pow(pow(4 * k + 2, q))),
        ("(eps/8)^((4k+2)^q) >= (eps/8)^((k+2)^(2q)-2)", e_pow(pow(4 * k + 2, q)), e_pow(&x2 - 2)),
        ("Gamma >= (1/12 (eps/8)^((k+2)^(2q)-2))^((k+2)^q-1)", big_g.clone(), bound.clone()),
        ("(1/12 (eps/8)^((k+2)^(2q)-2))^((k+2)^q-1) >= (eps/8)^((k+2)^(3q))", bound, e_pow(pow(k + 2, 3 * q))),
        ("(eps/8)^((k+2)^(3q)) >= (eps/8)^(k^(6q))", e_pow(pow(k + 2, 3 * q)), e_pow(pow(k, 6 * q))),
        ("Gamma >= (eps/8)^(k^(6q))", big_g.clone(), e_pow(pow(k, 6 * q))),
    ];
    for (name, a, b) in checks {
        let m = c.log2_ratio(&a, &b);
        c.push_link(name.into(), m);
    }
    for i in 1..=qi {
        // eta_i <= beta_i lambda_i Delta_{i-1}^2
        let rhs = c.beta[i - 1].in_e(&d_exp).mul(&c.lambda[i - 1]).mul(&c.big_delta[i - 1].pow(&big(2)));
        let m = c.log2_ratio(&rhs, &c.eta[i - 1]);
        c.push_link(format!("eta_{i} <= beta_{i} lambda_{i} Delta_{}^2", i - 1), m);
    }
    let log2_n = Log2::of_biguint(n);
    let log2_k = Log2::of_u64(k);
    let k12 = BigRational::from_integer(pow(k, 12 * q));
    let k18 = BigRational::from_integer(pow(k, 18 * q));
    let m = Log2 { lo: &c.log2_e.lo + &k12, hi: &c.log2_e.hi + &k12 };
    c.push_link("eps/8 >= 2^(-k^(12q))".into(), m);
    let m = log2_n.add(&log2_k.neg());
    let m = Log2 { lo: &m.lo - &k18, hi: &m.hi - &k18 };
    c.push_link("n 2^(-k^(18q)) >= k".into(), m);
    let g = big_g.in_e(&d_exp);
    let m = g.log2_coefficient().add(&c.log2_e.scale(&g.exp)).add(&log2_n).add(&log2_k.neg());
    c.push_link("Gamma n >= k".into(), m);
    Ok(c)
}

/// Parses a decimal integer, optionally in `AeB` form (`1e9`).
pub fn parse_big(s: &str) -> Result<BigUint> {
    let bad = || Error::domain(format!("not a nonnegative integer: {s:?}"));
    match s.split_once(['e', 'E']) {
        Some((m, e)) => {
            let m: BigUint = m.parse().map_err(|_| bad())?;
            let e: u32 = e.parse().map_err(|_| bad())?;
            if e > 1 << 20 {
                return Err(Error::Overflow(format!("exponent {e} is too large")));
            }
            Ok(m * BigUint::from(10u32).pow(e))
        }
        None => s.parse().map_err(|_| bad()),
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::Undecided => "undecided",
        })
    }
}

/// `ceil(log2 x)` for a positive rational, used for display.
pub fn log2_ceil(x: &BigRational) -> i64 {
    let (n, d) = (x.numer().magnitude(), x.denom().magnitude());
    let mut e = n.bits() as i64 - d.bits() as i64;
    let ge = |e: i64| {
        if e >= 0 { *n <= d << e as u64 } else { n << (-e) as u64 <= *d }
    };
    while !ge(e) {
        e += 1;
    }
    while ge(e - 1) {
        e -= 1;
    }
    e
}
