//! Noncommutative polynomials in the symbols Z_i^h, their H-comodule
//! structure, comodule algebra maps into a cleft extension, polynomial
//! H-identities and truncated identity fingerprints.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde_json::{json, Value};

use crate::algebra::{Algebra, Element};
use crate::cleft::{CleftAlgebra, CleftElement};
use crate::error::{Error, Result};
use crate::linalg;
use crate::ring::{Elem, FiniteRing};
use crate::taft::TaftAlgebra;

/// The symbol Z_copy^{g^m x^n}. Ordered by (copy, n, m), so E < G < X.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ZSymbol {
    pub copy: u32,
    pub m: u8,
    pub n: u8,
}

impl Ord for ZSymbol {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.copy, self.n, self.m).cmp(&(other.copy, other.n, other.m))
    }
}

impl PartialOrd for ZSymbol {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl ZSymbol {
    pub fn new(copy: u32, m: u8, n: u8) -> Self {
        ZSymbol { copy, m, n }
    }
    pub fn e(copy: u32) -> Self {
        Self::new(copy, 0, 0)
    }
    pub fn g(copy: u32) -> Self {
        Self::new(copy, 1, 0)
    }
    pub fn x(copy: u32) -> Self {
        Self::new(copy, 0, 1)
    }

    /// E, G or X.
    pub fn is_supported(&self) -> bool {
        matches!((self.m, self.n), (0, 0) | (1, 0) | (0, 1))
    }

    /// Index of the label g^m x^n in the basis of H.
    pub fn label_index(&self, order: usize) -> usize {
        self.m as usize * order + self.n as usize
    }
}

impl fmt::Display for ZSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.m, self.n) {
            (0, 0) => write!(f, "E{}", self.copy),
            (1, 0) => write!(f, "G{}", self.copy),
            (0, 1) => write!(f, "X{}", self.copy),
            (m, n) => write!(f, "Z{}_{}_{}", self.copy, m, n),
        }
    }
}

/// A word in the symbols, ordered by length and then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<ZSymbol>);

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.0.len(), &self.0).cmp(&(other.0.len(), &other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Word {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut i = 0;
        while i < self.0.len() {
            let s = self.0[i];
            let run = self.0[i..].iter().take_while(|&&t| t == s).count();
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if run == 1 {
                write!(f, "{s}")?;
            } else {
                write!(f, "{s}^{run}")?;
            }
            i += run;
        }
        Ok(())
    }
}

/// A finite R-linear combination of words; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ZPolynomial {
    terms: BTreeMap<Word, Elem>,
}

impl ZPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(ring: &FiniteRing, c: Elem) -> Self {
        Self::monomial(ring, Word::default(), c)
    }

    pub fn symbol(ring: &FiniteRing, s: ZSymbol) -> Self {
        Self::monomial(ring, Word(vec![s]), ring.one())
    }

    pub fn monomial(ring: &FiniteRing, w: Word, c: Elem) -> Self {
        let mut p = Self::zero();
        p.add_term(ring, w, c);
        p
    }

    pub fn add_term(&mut self, ring: &FiniteRing, w: Word, c: Elem) {
        let entry = self.terms.entry(w).or_insert(ring.zero());
        *entry = ring.add(*entry, c);
        if *entry == ring.zero() {
            self.terms.retain(|_, c| *c != ring.zero());
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, Elem)> {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    pub fn coeff(&self, ring: &FiniteRing, w: &Word) -> Elem {
        self.terms.get(w).copied().unwrap_or(ring.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    pub fn symbols(&self) -> BTreeSet<ZSymbol> {
        self.terms
            .keys()
            .flat_map(|w| w.0.iter().copied())
            .collect()
    }

    pub fn add(&self, ring: &FiniteRing, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_term(ring, w.clone(), c);
        }
        out
    }

    pub fn sub(&self, ring: &FiniteRing, other: &Self) -> Self {
        self.add(ring, &other.scale(ring, ring.neg(ring.one())))
    }

    pub fn scale(&self, ring: &FiniteRing, c: Elem) -> Self {
        let mut out = Self::zero();
        for (w, d) in self.terms() {
            out.add_term(ring, w.clone(), ring.mul(c, d));
        }
        out
    }

    pub fn mul(&self, ring: &FiniteRing, other: &Self) -> Self {
        let mut out = Self::zero();
        for (w1, c1) in self.terms() {
            for (w2, c2) in other.terms() {
                out.add_term(ring, w1.concat(w2), ring.mul(c1, c2));
            }
        }
        out
    }

    pub fn pow(&self, ring: &FiniteRing, e: usize) -> Self {
        let mut acc = Self::constant(ring, ring.one());
        for _ in 0..e {
            acc = acc.mul(ring, self);
        }
        acc
    }

    /// ASCII form, e.g. `4*G1^2*X1^2 + X1*G1`; terms in canonical order.
    pub fn format(&self, ring: &FiniteRing) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        self.terms()
            .map(|(w, c)| {
                if w.is_empty() {
                    ring.format(c)
                } else if c == ring.one() {
                    w.to_string()
                } else {
                    format!("{}*{w}", ring.format(c))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    pub fn parse(ring: &FiniteRing, input: &str) -> Result<Self> {
        let tokens = lex(input)?;
        let mut p = Parser {
            ring,
            input,
            tokens,
            pos: 0,
        };
        let out = p.expr()?;
        if p.pos != p.tokens.len() {
            return Err(p.fail("trailing input"));
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(i64),
    Lit(String),
    Sym(ZSymbol),
    Plus,
    Minus,
    Star,
    Caret,
    Open,
    Close,
}

fn lex(input: &str) -> Result<Vec<Token>> {
    let fail = |reason: &str| Error::MalformedPolynomial {
        input: input.to_string(),
        reason: reason.to_string(),
    };
    let chars: Vec<char> = input.chars().collect();
    let digits = |i: &mut usize| -> Option<u64> {
        let start = *i;
        while *i < chars.len() && chars[*i].is_ascii_digit() {
            *i += 1;
        }
        chars[start..*i].iter().collect::<String>().parse().ok()
    };
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let ch = chars[i];
        match ch {
            c if c.is_whitespace() => i += 1,
            '+' => {
                out.push(Token::Plus);
                i += 1
            }
            '-' => {
                out.push(Token::Minus);
                i += 1
            }
            '*' => {
                out.push(Token::Star);
                i += 1
            }
            '^' => {
                out.push(Token::Caret);
                i += 1
            }
            '(' => {
                out.push(Token::Open);
                i += 1
            }
            ')' => {
                out.push(Token::Close);
                i += 1
            }
            '[' => {
                let end = chars[i..]
                    .iter()
                    .position(|&c| c == ']')
                    .ok_or_else(|| fail("unclosed ["))?;
                out.push(Token::Lit(chars[i..=i + end].iter().collect()));
                i += end + 1;
            }
            '0'..='9' => {
                let v = digits(&mut i).ok_or_else(|| fail("number too large"))?;
                out.push(Token::Num(
                    i64::try_from(v).map_err(|_| fail("number too large"))?,
                ));
            }
            'E' | 'G' | 'X' => {
                i += 1;
                let copy = digits(&mut i).unwrap_or(1);
                let (m, n) = match ch {
                    'E' => (0, 0),
                    'G' => (1, 0),
                    _ => (0, 1),
                };
                out.push(Token::Sym(
                    symbol(copy, m, n).ok_or_else(|| fail("bad copy index"))?,
                ));
            }
            'Z' => {
                i += 1;
                let copy = digits(&mut i).ok_or_else(|| fail("expected copy index after Z"))?;
                let mut label = [0u64; 2];
                for l in &mut label {
                    if chars.get(i) != Some(&'_') {
                        return Err(fail("expected Z<copy>_<m>_<n>"));
                    }
                    i += 1;
                    *l = digits(&mut i).ok_or_else(|| fail("expected label exponent"))?;
                }
                out.push(Token::Sym(
                    symbol(copy, label[0], label[1]).ok_or_else(|| fail("bad symbol"))?,
                ));
            }
            _ => return Err(fail(&format!("unexpected character `{ch}`"))),
        }
    }
    Ok(out)
}

fn symbol(copy: u64, m: u64, n: u64) -> Option<ZSymbol> {
    if copy == 0 {
        return None;
    }
    Some(ZSymbol::new(
        u32::try_from(copy).ok()?,
        u8::try_from(m).ok()?,
        u8::try_from(n).ok()?,
    ))
}

struct Parser<'a> {
    ring: &'a FiniteRing,
    input: &'a str,
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser<'_> {
    fn fail(&self, reason: &str) -> Error {
        Error::MalformedPolynomial {
            input: self.input.to_string(),
            reason: format!("{reason} at token {}", self.pos),
        }
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn expr(&mut self) -> Result<ZPolynomial> {
        let ring = self.ring;
        let mut negate = false;
        match self.peek() {
            Some(Token::Minus) => {
                negate = true;
                self.pos += 1;
            }
            Some(Token::Plus) => self.pos += 1,
            _ => {}
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.scale(ring, ring.neg(ring.one()));
        }
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    acc = acc.add(ring, &self.term()?);
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    acc = acc.sub(ring, &self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<ZPolynomial> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.pos += 1;
                    acc = acc.mul(self.ring, &self.factor()?);
                }
                Some(Token::Num(_) | Token::Lit(_) | Token::Sym(_) | Token::Open) => {
                    acc = acc.mul(self.ring, &self.factor()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<ZPolynomial> {
        let base = self.atom()?;
        if self.peek() == Some(&Token::Caret) {
            self.pos += 1;
            match self.peek() {
                Some(&Token::Num(e)) if e <= 4096 => {
                    self.pos += 1;
                    return Ok(base.pow(self.ring, e as usize));
                }
                _ => return Err(self.fail("expected exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<ZPolynomial> {
        let ring = self.ring;
        let tok = self
            .peek()
            .cloned()
            .ok_or_else(|| self.fail("unexpected end"))?;
        self.pos += 1;
        match tok {
            Token::Num(v) => Ok(ZPolynomial::constant(ring, ring.from_int(v))),
            Token::Lit(s) => Ok(ZPolynomial::constant(ring, ring.parse_elem(&s)?)),
            Token::Sym(s) => Ok(ZPolynomial::symbol(ring, s)),
            Token::Open => {
                let inner = self.expr()?;
                if self.peek() != Some(&Token::Close) {
                    return Err(self.fail("expected )"));
                }
                self.pos += 1;
                Ok(inner)
            }
            _ => {
                self.pos -= 1;
                Err(self.fail("expected a coefficient, symbol or ("))
            }
        }
    }
}

/// An element of T (x) H: word and basis index of H mapped to a coefficient.
pub type TTensor = BTreeMap<(Word, usize), Elem>;

/// delta(Z^h) = sum Z^{h_1} (x) h_2, extended multiplicatively.
pub fn delta_t(h: &TaftAlgebra, p: &ZPolynomial) -> TTensor {
    let ring = h.ring();
    let order = h.order();
    let mut out = TTensor::new();
    for (w, c) in p.terms() {
        let mut acc: TTensor = TTensor::new();
        acc.insert((Word::default(), 0), c);
        for s in &w.0 {
            let mut factor = TTensor::new();
            for (i, j, d) in h.delta_basis(s.label_index(order)).terms(ring) {
                let sym = ZSymbol::new(s.copy, (i / order) as u8, (i % order) as u8);
                factor.insert((Word(vec![sym]), j), d);
            }
            acc = ttensor_mul(h, &acc, &factor);
        }
        for (k, v) in acc {
            add_into(ring, &mut out, k, v);
        }
    }
    out
}

fn add_into(ring: &FiniteRing, t: &mut TTensor, k: (Word, usize), c: Elem) {
    let e = t.entry(k.clone()).or_insert(ring.zero());
    *e = ring.add(*e, c);
    if *e == ring.zero() {
        t.remove(&k);
    }
}

/// Product in T (x) H.
pub fn ttensor_mul(h: &TaftAlgebra, a: &TTensor, b: &TTensor) -> TTensor {
    let ring = h.ring();
    let mut out = TTensor::new();
    for ((w1, h1), &c1) in a {
        for ((w2, h2), &c2) in b {
            let c = ring.mul(c1, c2);
            for &(k, ck) in h.basis_product(*h1, *h2) {
                add_into(ring, &mut out, (w1.concat(w2), k), ring.mul(c, ck));
            }
        }
    }
    out
}

/// A comodule algebra map T -> B on the symbols E_i, G_i, X_i, stored as
/// (lambda_i, mu_i, xi_i): E_i -> lambda_i, G_i -> mu_i v_g,
/// X_i -> lambda_i v_x + xi_i v_g.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ComoduleMap {
    pub params: Vec<[Elem; 3]>,
}

impl ComoduleMap {
    pub fn new(params: Vec<[Elem; 3]>) -> Self {
        ComoduleMap { params }
    }

    /// The map induced by the section: (1, 1, 0) on every copy.
    pub fn gamma(ring: &FiniteRing, width: usize) -> Self {
        ComoduleMap::new(vec![[ring.one(), ring.one(), ring.zero()]; width])
    }

    pub fn width(&self) -> usize {
        self.params.len()
    }

    pub fn image(&self, b: &CleftAlgebra, s: ZSymbol) -> Result<CleftElement> {
        if !s.is_supported() {
            return Err(Error::UnsupportedSymbol(s.to_string()));
        }
        let [lambda, mu, xi] = *self
            .params
            .get(s.copy as usize - 1)
            .ok_or_else(|| Error::UnassignedSymbol(s.to_string()))?;
        let ring = b.ring();
        Ok(match (s.m, s.n) {
            (0, 0) => b.scalar(lambda),
            (1, 0) => b.v_g().scale(ring, mu),
            _ => b
                .v_x()
                .scale(ring, lambda)
                .add(ring, &b.v_g().scale(ring, xi)),
        })
    }

    pub fn to_json(&self, ring: &FiniteRing) -> Value {
        Value::Array(
            self.params
                .iter()
                .map(|p| json!({"lambda": ring.to_json(p[0]), "mu": ring.to_json(p[1]), "xi": ring.to_json(p[2])}))
                .collect(),
        )
    }

    pub fn format(&self, ring: &FiniteRing) -> String {
        self.params
            .iter()
            .map(|p| {
                format!(
                    "({}, {}, {})",
                    ring.format(p[0]),
                    ring.format(p[1]),
                    ring.format(p[2])
                )
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Largest number of comodule maps that will be materialized.
pub const MAP_BUDGET: u64 = 1 << 22;

/// Every comodule algebra map on E_i, G_i, X_i for i <= width, in
/// lexicographic order of the parameters.
pub fn enumerate_comodule_maps(b: &CleftAlgebra, width: usize) -> Result<Vec<ComoduleMap>> {
    let ring = b.ring();
    let size = ring.size() as u64;
    let count = size.checked_pow(3 * width as u32).unwrap_or(u64::MAX);
    if count > MAP_BUDGET {
        return Err(Error::BudgetExceeded {
            size: count,
            budget: MAP_BUDGET,
        });
    }
    let elems: Vec<Elem> = ring.elements().collect();
    let mut out = Vec::with_capacity(count as usize);
    let slots = 3 * width;
    for idx in 0..count {
        let mut rest = idx;
        let mut flat = vec![ring.zero(); slots];
        for slot in (0..slots).rev() {
            flat[slot] = elems[(rest % size) as usize];
            rest /= size;
        }
        out.push(ComoduleMap::new(
            flat.chunks(3).map(|c| [c[0], c[1], c[2]]).collect(),
        ));
    }
    Ok(out)
}

/// All v in B with rho(v) = sum f(Z^{h_1}) (x) h_2 for the symbol with
/// label (m, n), where f(Z^{h_1}) = v when h_1 = h and is read from
/// `known` otherwise. Solved as a linear system over R.
pub fn brute_force_comodule_solutions(
    b: &CleftAlgebra,
    label: (usize, usize),
    known: &BTreeMap<(usize, usize), CleftElement>,
) -> Result<Vec<CleftElement>> {
    let ring = b.ring().clone();
    let h = b.taft();
    let order = b.order();
    let (dim, hdim) = (b.dim(), h.dim());
    let target = label.0 * order + label.1;
    let mut rows = vec![vec![ring.zero(); dim]; dim * hdim];
    let mut rhs = vec![ring.zero(); dim * hdim];
    for k in 0..dim {
        for (i, j, c) in b.coaction_basis(k).terms(&ring) {
            rows[i * hdim + j][k] = ring.add(rows[i * hdim + j][k], c);
        }
    }
    for (h1, h2, c) in h.delta_basis(target).terms(&ring) {
        if h1 == target {
            for k in 0..dim {
                let e = &mut rows[k * hdim + h2][k];
                *e = ring.sub(*e, c);
            }
        } else {
            let lbl = (h1 / order, h1 % order);
            let img = known
                .get(&lbl)
                .ok_or_else(|| Error::UnassignedSymbol(format!("label g^{} x^{}", lbl.0, lbl.1)))?;
            for (i, &x) in img.coeffs().iter().enumerate() {
                let e = &mut rhs[i * hdim + h2];
                *e = ring.add(*e, ring.mul(c, x));
            }
        }
    }
    match linalg::solve_affine(&ring, &rows, &rhs, dim) {
        None => Ok(Vec::new()),
        Some((particular, kernel)) => {
            let mut out: Vec<CleftElement> = kernel
                .elements(&ring, MAP_BUDGET as u128)?
                .into_iter()
                .map(|v| {
                    let s: Vec<Elem> = v
                        .iter()
                        .zip(&particular)
                        .map(|(&x, &y)| ring.add(x, y))
                        .collect();
                    Element::from_coeffs(order, s)
                })
                .collect();
            out.sort_by(|a, b| a.coeffs().cmp(b.coeffs()));
            out.dedup();
            Ok(out)
        }
    }
}

/// f(P) in B.
pub fn evaluate(b: &CleftAlgebra, p: &ZPolynomial, f: &ComoduleMap) -> Result<CleftElement> {
    let ring = b.ring();
    let mut images: HashMap<ZSymbol, CleftElement> = HashMap::new();
    for s in p.symbols() {
        images.insert(s, f.image(b, s)?);
    }
    let mut out = b.zero();
    for (w, c) in p.terms() {
        let mut acc = b.scalar(c);
        for s in &w.0 {
            acc = b.mul(&acc, &images[s]);
        }
        out = out.add(ring, &acc);
    }
    Ok(out)
}

/// (XG - qGX)^N - (1-q)^N G^N X^N + (1-q)^N a E^N G^N.
pub fn build_pa(ring: &FiniteRing, n: usize, q: Elem, a: Elem) -> ZPolynomial {
    let e = ZPolynomial::symbol(ring, ZSymbol::e(1));
    let g = ZPolynomial::symbol(ring, ZSymbol::g(1));
    let x = ZPolynomial::symbol(ring, ZSymbol::x(1));
    let c = ring.pow(ring.sub(ring.one(), q), n as u64);
    let commutator = x.mul(ring, &g).sub(ring, &g.mul(ring, &x).scale(ring, q));
    commutator
        .pow(ring, n)
        .sub(
            ring,
            &g.pow(ring, n).mul(ring, &x.pow(ring, n)).scale(ring, c),
        )
        .add(
            ring,
            &e.pow(ring, n)
                .mul(ring, &g.pow(ring, n))
                .scale(ring, ring.mul(c, a)),
        )
}

/// u^k G^beta - G^(alpha+beta) with k = alpha / N.
pub fn build_qu(
    ring: &FiniteRing,
    n: usize,
    u: Elem,
    alpha: u64,
    beta: u64,
) -> Result<ZPolynomial> {
    if !alpha.is_multiple_of(n as u64) {
        return Err(Error::NotDivisible { alpha, n });
    }
    Ok(qu_from_power(
        ring,
        ring.pow(u, alpha / n as u64),
        alpha,
        beta,
    ))
}

/// c G^beta - G^(alpha+beta); Q_u depends on u only through c = u^k.
pub fn qu_from_power(ring: &FiniteRing, c: Elem, alpha: u64, beta: u64) -> ZPolynomial {
    let g = ZSymbol::g(1);
    let power = |e: u64| Word(vec![g; e as usize]);
    let mut p = ZPolynomial::monomial(ring, power(beta), c);
    p.add_term(ring, power(alpha + beta), ring.neg(ring.one()));
    p
}

fn width_of(p: &ZPolynomial) -> usize {
    p.symbols()
        .iter()
        .map(|s| s.copy as usize)
        .max()
        .unwrap_or(1)
}

/// The first enumerated map under which P does not vanish.
pub fn find_nonvanishing(b: &CleftAlgebra, p: &ZPolynomial) -> Result<Option<ComoduleMap>> {
    for f in enumerate_comodule_maps(b, width_of(p))? {
        if !evaluate(b, p, &f)?.is_zero(b.ring()) {
            return Ok(Some(f));
        }
    }
    Ok(None)
}

/// True iff f(P) = 0 for every comodule algebra map f.
pub fn is_identity(b: &CleftAlgebra, p: &ZPolynomial) -> Result<bool> {
    Ok(find_nonvanishing(b, p)?.is_none())
}

/// Largest coordinate space a fingerprint will build.
pub const WORD_BUDGET: usize = 50_000;

/// The coordinate space of a fingerprint: all words of degree at most
/// `full_degree` in E_i, G_i, X_i (i <= width), together with the powers
/// G1^j for j <= degree.
#[derive(Clone, Debug)]
pub struct WordSpace {
    degree: usize,
    full_degree: usize,
    width: usize,
    words: Vec<Word>,
    index: HashMap<Word, usize>,
}

impl WordSpace {
    /// Full words up to degree min(degree, 2N).
    pub fn new(n: usize, degree: usize, width: usize) -> Result<Self> {
        Self::with_full_degree(degree, degree.min(2 * n), width)
    }

    pub fn with_full_degree(degree: usize, full_degree: usize, width: usize) -> Result<Self> {
        let full_degree = full_degree.min(degree);
        let nsym = 3 * width;
        let count: usize = (0..=full_degree)
            .map(|k| nsym.checked_pow(k as u32).unwrap_or(usize::MAX))
            .fold(0usize, |a, b| a.saturating_add(b))
            .saturating_add(degree - full_degree);
        if count > WORD_BUDGET {
            return Err(Error::BudgetExceeded {
                size: count as u64,
                budget: WORD_BUDGET as u64,
            });
        }
        let mut symbols: Vec<ZSymbol> = (1..=width as u32)
            .flat_map(|i| [ZSymbol::e(i), ZSymbol::g(i), ZSymbol::x(i)])
            .collect();
        symbols.sort();
        let mut words = vec![Word::default()];
        let mut level = vec![Word::default()];
        for _ in 0..full_degree {
            let next: Vec<Word> = level
                .iter()
                .flat_map(|w| symbols.iter().map(move |&s| w.concat(&Word(vec![s]))))
                .collect();
            words.extend(next.iter().cloned());
            level = next;
        }
        for j in full_degree + 1..=degree {
            words.push(Word(vec![ZSymbol::g(1); j]));
        }
        words.sort();
        let index = words
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, w)| (w, i))
            .collect();
        Ok(WordSpace {
            degree,
            full_degree,
            width,
            words,
            index,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn full_degree(&self) -> usize {
        self.full_degree
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn position(&self, w: &Word) -> Option<usize> {
        self.index.get(w).copied()
    }
}

/// f(w) as a polynomial in the parameters of f: exponent vector
/// (lambda_1, mu_1, xi_1, lambda_2, ...) mapped to a coefficient in B.
type Generic = BTreeMap<Vec<u8>, CleftElement>;

fn symbol_generic(b: &CleftAlgebra, s: ZSymbol, width: usize) -> Generic {
    let var = |offset: usize| {
        let mut e = vec![0u8; 3 * width];
        e[3 * (s.copy as usize - 1) + offset] = 1;
        e
    };
    let mut out = Generic::new();
    match (s.m, s.n) {
        (0, 0) => {
            out.insert(var(0), b.one());
        }
        (1, 0) => {
            out.insert(var(1), b.v_g());
        }
        _ => {
            out.insert(var(0), b.v_x());
            out.insert(var(2), b.v_g());
        }
    }
    out
}

fn generic_mul(b: &CleftAlgebra, x: &Generic, y: &Generic) -> Generic {
    let ring = b.ring();
    let mut out = Generic::new();
    for (ex, bx) in x {
        for (ey, by) in y {
            let e: Vec<u8> = ex.iter().zip(ey).map(|(p, q)| p + q).collect();
            let prod = b.mul(bx, by);
            let entry = out.entry(e).or_insert_with(|| b.zero());
            *entry = entry.add(ring, &prod);
        }
    }
    out.retain(|_, v| !v.is_zero(ring));
    out
}

fn union_find_root(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

/// Canonical generating set of the truncated identity ideal
/// {P in span(words) : f(P) = 0 for all f}, as rows over the lifted
/// coordinates (word index * dim R + coordinate).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fingerprint {
    pub degree: usize,
    pub full_degree: usize,
    pub width: usize,
    pub words: usize,
    pub modulus: u64,
    pub rows: Vec<Vec<(usize, u64)>>,
}

impl Fingerprint {
    /// Membership of P; false when P leaves the coordinate space.
    pub fn contains(&self, ring: &FiniteRing, space: &WordSpace, p: &ZPolynomial) -> bool {
        let d = ring.dim();
        let mut v = vec![0u64; self.words * d];
        for (w, c) in p.terms() {
            let Some(i) = space.position(w) else {
                return false;
            };
            v[i * d..(i + 1) * d].copy_from_slice(&ring.coords(c));
        }
        let dense: Vec<Vec<u64>> = self
            .rows
            .iter()
            .map(|r| {
                let mut row = vec![0u64; self.words * d];
                for &(j, x) in r {
                    row[j] = x;
                }
                row
            })
            .collect();
        let form = linalg::HowellForm::from_rows(self.modulus, self.words * d, dense);
        form.contains(&v)
    }

    /// The generating rows as polynomials.
    pub fn generators(&self, ring: &FiniteRing, space: &WordSpace) -> Vec<ZPolynomial> {
        let d = ring.dim();
        self.rows
            .iter()
            .map(|r| {
                let mut coords: BTreeMap<usize, Vec<u64>> = BTreeMap::new();
                for &(j, x) in r {
                    coords.entry(j / d).or_insert_with(|| vec![0; d])[j % d] = x;
                }
                let mut p = ZPolynomial::zero();
                for (w, c) in coords {
                    let reduced: Vec<u64> =
                        c.iter().zip(ring.moduli()).map(|(&x, &m)| x % m).collect();
                    p.add_term(ring, space.words()[w].clone(), ring.from_coords(&reduced));
                }
                p
            })
            .collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "degree": self.degree,
            "full_degree": self.full_degree,
            "width": self.width,
            "words": self.words,
            "modulus": self.modulus,
            "rows": self.rows.iter().map(|r| r.iter().map(|&(j, x)| json!([j, x])).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }
}

/// The identity fingerprint of B over the given word space.
///
/// f(P) = sum_e C_e(P) t^e is a polynomial in the parameters t of f with
/// coefficients in B, and it vanishes for every f iff each coordinate of
/// sum_e C_e(P) h_1[e_1] ... h_r[e_r] vanishes for every choice of rows
/// h_i from a generating set of the additive group spanned by the vectors
/// (1, r, r^2, ..., r^D), r in R. Words whose exponents never meet are
/// solved separately.
pub fn fingerprint(b: &CleftAlgebra, space: &WordSpace) -> Result<Fingerprint> {
    let ring = b.ring().clone();
    let width = space.width;
    let nvars = 3 * width;
    let dmax = space.degree;

    let mut generic: Vec<Generic> = Vec::with_capacity(space.words.len());
    let mut memo: HashMap<Word, usize> = HashMap::new();
    let sym_gen: HashMap<ZSymbol, Generic> = (1..=width as u32)
        .flat_map(|i| [ZSymbol::e(i), ZSymbol::g(i), ZSymbol::x(i)])
        .map(|s| (s, symbol_generic(b, s, width)))
        .collect();
    for w in &space.words {
        let g = if w.is_empty() {
            let mut g = Generic::new();
            g.insert(vec![0u8; nvars], b.one());
            g
        } else {
            let prefix = Word(w.0[..w.len() - 1].to_vec());
            let base = match memo.get(&prefix) {
                Some(&i) => generic[i].clone(),
                None => {
                    // prefixes of G-powers outside the full range
                    let mut acc = Generic::new();
                    acc.insert(vec![0u8; nvars], b.one());
                    for s in &prefix.0 {
                        acc = generic_mul(b, &acc, &sym_gen[s]);
                    }
                    acc
                }
            };
            generic_mul(b, &base, &sym_gen[&w.0[w.len() - 1]])
        };
        memo.insert(w.clone(), generic.len());
        generic.push(g);
    }

    // additive generators of the power vectors and the exponent classes they link
    let power_rows: Vec<Vec<Elem>> = ring
        .elements()
        .map(|r| (0..=dmax as u64).map(|e| ring.pow(r, e)).collect())
        .collect();
    let h1 = linalg::additive_span(&ring, &power_rows, dmax + 1);
    let mut parent: Vec<usize> = (0..=dmax).collect();
    for row in &h1 {
        let support: Vec<usize> = (0..=dmax).filter(|&e| row[e] != ring.zero()).collect();
        for w in support.windows(2) {
            let (a, c) = (
                union_find_root(&mut parent, w[0]),
                union_find_root(&mut parent, w[1]),
            );
            parent[a] = c;
        }
    }
    let class: Vec<usize> = (0..=dmax)
        .map(|e| union_find_root(&mut parent.clone(), e))
        .collect();
    let mut rows_in_class: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (idx, row) in h1.iter().enumerate() {
        if let Some(e) = (0..=dmax).find(|&e| row[e] != ring.zero()) {
            rows_in_class.entry(class[e]).or_default().push(idx);
        }
    }

    // words sharing a class vector are coupled
    let nwords = space.words.len();
    let mut wparent: Vec<usize> = (0..nwords).collect();
    let mut owner: HashMap<Vec<usize>, usize> = HashMap::new();
    for (wi, g) in generic.iter().enumerate() {
        for e in g.keys() {
            let cv: Vec<usize> = e.iter().map(|&x| class[x as usize]).collect();
            match owner.get(&cv) {
                Some(&o) => {
                    let (a, c) = (
                        union_find_root(&mut wparent, wi),
                        union_find_root(&mut wparent, o),
                    );
                    wparent[a] = c;
                }
                None => {
                    owner.insert(cv, wi);
                }
            }
        }
    }
    let mut components: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for wi in 0..nwords {
        let r = union_find_root(&mut wparent, wi);
        components.entry(r).or_default().push(wi);
    }

    let d = ring.dim();
    let dim = b.dim();
    let mut all_rows: Vec<Vec<(usize, u64)>> = Vec::new();
    for comp in components.values() {
        let mut class_vectors: BTreeSet<Vec<usize>> = BTreeSet::new();
        for &wi in comp {
            for e in generic[wi].keys() {
                class_vectors.insert(e.iter().map(|&x| class[x as usize]).collect());
            }
        }
        let mut conditions: Vec<Vec<Elem>> = Vec::new();
        for cv in &class_vectors {
            let choices: Vec<&Vec<usize>> = cv
                .iter()
                .map(|c| rows_in_class.get(c).expect("every class holds a row"))
                .collect();
            let mut tuple = vec![0usize; nvars];
            loop {
                let mut block = vec![vec![ring.zero(); comp.len()]; dim];
                for (col, &wi) in comp.iter().enumerate() {
                    for (e, coeff) in &generic[wi] {
                        if e.iter().zip(cv).any(|(&x, &c)| class[x as usize] != c) {
                            continue;
                        }
                        let mut weight = ring.one();
                        for (v, &x) in e.iter().enumerate() {
                            weight = ring.mul(weight, h1[choices[v][tuple[v]]][x as usize]);
                        }
                        if weight == ring.zero() {
                            continue;
                        }
                        for (l, &y) in coeff.coeffs().iter().enumerate() {
                            block[l][col] = ring.add(block[l][col], ring.mul(weight, y));
                        }
                    }
                }
                conditions.extend(
                    block
                        .into_iter()
                        .filter(|r| r.iter().any(|&x| x != ring.zero())),
                );
                // next tuple
                let mut v = 0;
                while v < nvars {
                    tuple[v] += 1;
                    if tuple[v] < choices[v].len() {
                        break;
                    }
                    tuple[v] = 0;
                    v += 1;
                }
                if v == nvars {
                    break;
                }
            }
        }
        let kernel = linalg::kernel(&ring, &conditions, comp.len());
        for row in kernel.form().rows() {
            all_rows.push(
                row.iter()
                    .enumerate()
                    .filter(|(_, &x)| x != 0)
                    .map(|(j, &x)| (comp[j / d] * d + j % d, x))
                    .collect(),
            );
        }
    }
    all_rows.sort();
    Ok(Fingerprint {
        degree: space.degree,
        full_degree: space.full_degree,
        width,
        words: nwords,
        modulus: ring.characteristic(),
        rows: all_rows,
    })
}
