use std::fmt;
use std::sync::{Arc, OnceLock};

use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::poly::Poly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Kind {
    /// `G_0 = 0`, `G_1 = 1`.
    FibonacciType,
    /// `2 p1 = p0 d` with `|p0|` in {1, 2}.
    LucasType,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::FibonacciType => "fibonacci-type",
            Kind::LucasType => "lucas-type",
        })
    }
}

/// One generalized Fibonacci polynomial family:
/// `G_0 = p0`, `G_1 = p1`, `G_n = d G_{n-1} + g G_{n-2}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilySpec {
    pub name: String,
    pub symbol: String,
    pub kind: Kind,
    pub p0: Poly,
    pub p1: Poly,
    pub d: Poly,
    pub g: Poly,
    /// Lucas normalization constant shared by an equivalent pair.
    pub alpha: u32,
    /// `d^2 + 4g`.
    pub delta: Arc<Poly>,
    pub partner: Option<String>,
}

impl FamilySpec {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        name: &str,
        symbol: &str,
        kind: Kind,
        p0: Poly,
        p1: Poly,
        d: Poly,
        g: Poly,
        alpha: u32,
        partner: Option<&str>,
    ) -> Self {
        let delta = Arc::new(discriminant(&d, &g));
        FamilySpec {
            name: name.to_owned(),
            symbol: symbol.to_owned(),
            kind,
            p0,
            p1,
            d,
            g,
            alpha,
            delta,
            partner: partner.map(str::to_owned),
        }
    }

    pub fn alpha_rational(&self) -> BigRational {
        BigRational::from_integer(self.alpha.into())
    }

    /// The Fibonacci-type family with the same `d`, `g` and `alpha`.
    pub fn fibonacci_companion(&self) -> FamilySpec {
        if self.kind == Kind::FibonacciType {
            return self.clone();
        }
        let mut f = self.clone();
        f.kind = Kind::FibonacciType;
        f.p0 = Poly::zero();
        f.p1 = Poly::one();
        f.name = format!("{}~fibonacci", self.name);
        f.partner = None;
        f
    }

    /// The Lucas-type family `(a^n + b^n) / alpha` with the same `d`, `g`.
    pub fn lucas_companion(&self) -> FamilySpec {
        if self.kind == Kind::LucasType {
            return self.clone();
        }
        let inv = self.alpha_rational().recip();
        let mut f = self.clone();
        f.kind = Kind::LucasType;
        f.p0 = Poly::constant(&inv + &inv);
        f.p1 = self.d.scale(&inv);
        f.name = format!("{}~lucas", self.name);
        f.partner = None;
        f
    }

    /// Violations of the structural invariants of a single family.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (label, poly) in [("p1", &self.p1), ("d", &self.d), ("g", &self.g)] {
            if poly.is_zero() {
                out.push(format!("{label} must be nonzero"));
            }
        }
        if self.p0.degree().unwrap_or(0) > 0 {
            out.push("p0 must be a constant".into());
        }
        match self.d.gcd(&self.g) {
            Ok(h) if h.is_one() => {}
            Ok(h) => out.push(format!("gcd(d, g) = {h}, expected a unit")),
            Err(e) => out.push(format!("gcd(d, g): {e}")),
        }
        if *self.delta != discriminant(&self.d, &self.g) {
            out.push(format!(
                "delta = {} but d^2 + 4g = {}",
                self.delta,
                discriminant(&self.d, &self.g)
            ));
        }
        if !matches!(self.alpha, 1 | 2) {
            out.push(format!("alpha = {} is not 1 or 2", self.alpha));
        }
        match self.kind {
            Kind::FibonacciType => {
                if !self.p0.is_zero() || !self.p1.is_one() {
                    out.push(format!(
                        "fibonacci type requires p0 = 0 and p1 = 1, got p0 = {}, p1 = {}",
                        self.p0, self.p1
                    ));
                }
            }
            Kind::LucasType => {
                let two = Poly::from_int(2);
                if &two * &self.p1 != &self.p0 * &self.d {
                    out.push(format!(
                        "lucas type requires 2 p1 = p0 d, got p0 = {}, p1 = {}",
                        self.p0, self.p1
                    ));
                }
                let abs_p0 = self.p0.as_constant().map(|c| num_traits::Signed::abs(&c));
                let one = BigRational::one();
                let two = &one + &one;
                if !matches!(&abs_p0, Some(c) if *c == one || *c == two) {
                    out.push(format!(
                        "lucas type requires |p0| in {{1, 2}}, got {}",
                        self.p0
                    ));
                }
                // (a^0 + b^0) / alpha must reproduce p0
                if self.p0.as_constant().map(|c| c * self.alpha_rational()) != Some(two) {
                    out.push(format!(
                        "alpha = {} does not normalize p0 = {}",
                        self.alpha, self.p0
                    ));
                }
            }
        }
        out
    }
}

pub fn discriminant(d: &Poly, g: &Poly) -> Poly {
    &(d * d) + &g.scale(&BigRational::from_integer(4.into()))
}

/// A Fibonacci-type family with its Lucas-type equivalent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyPair {
    pub fib: FamilySpec,
    pub lucas: FamilySpec,
}

impl FamilyPair {
    pub fn name(&self) -> String {
        format!("{}/{}", self.fib.name, self.lucas.name)
    }

    pub fn alpha(&self) -> u32 {
        self.lucas.alpha
    }

    pub fn d(&self) -> &Poly {
        &self.fib.d
    }

    pub fn g(&self) -> &Poly {
        &self.fib.g
    }

    pub fn delta(&self) -> &Arc<Poly> {
        &self.fib.delta
    }

    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.fib.kind != Kind::FibonacciType || self.lucas.kind != Kind::LucasType {
            out.push("pair must join a fibonacci-type and a lucas-type family".into());
        }
        if self.fib.d != self.lucas.d || self.fib.g != self.lucas.g {
            out.push("paired families must share d and g".into());
        }
        if self.fib.alpha != self.lucas.alpha {
            out.push("paired families must share alpha".into());
        }
        out
    }
}

fn x_poly(s: &str) -> Poly {
    s.parse().expect("registry literal")
}

/// name, symbol, kind, p0, p1, d, g, alpha, partner
type Row = (
    &'static str,
    &'static str,
    Kind,
    &'static str,
    &'static str,
    &'static str,
    &'static str,
    u32,
    Option<&'static str>,
);

fn build_registry() -> Vec<FamilySpec> {
    use Kind::{FibonacciType as Fib, LucasType as Luc};
    #[rustfmt::skip]
    let rows: [Row; 13] = [
        ("fibonacci", "F", Fib, "0", "1", "x", "1", 1, Some("lucas")),
        ("lucas", "D", Luc, "2", "x", "x", "1", 1, Some("fibonacci")),
        ("pell", "P", Fib, "0", "1", "2x", "1", 2, Some("pell-lucas-prime")),
        ("pell-lucas", "Q", Luc, "2", "2x", "2x", "1", 1, None),
        ("pell-lucas-prime", "Q'", Luc, "1", "x", "2x", "1", 2, Some("pell")),
        ("fermat", "Phi", Fib, "0", "1", "3x", "-2", 1, Some("fermat-lucas")),
        ("fermat-lucas", "theta", Luc, "2", "3x", "3x", "-2", 1, Some("fermat")),
        ("chebyshev-second", "U", Fib, "0", "1", "2x", "-1", 2, Some("chebyshev-first")),
        ("chebyshev-first", "T", Luc, "1", "x", "2x", "-1", 2, Some("chebyshev-second")),
        ("jacobsthal", "J", Fib, "0", "1", "1", "2x", 1, Some("jacobsthal-lucas")),
        ("jacobsthal-lucas", "j", Luc, "2", "1", "1", "2x", 1, Some("jacobsthal")),
        ("morgan-voyce-b", "B", Fib, "0", "1", "x + 2", "-1", 1, Some("morgan-voyce-c")),
        ("morgan-voyce-c", "C", Luc, "2", "x + 2", "x + 2", "-1", 1, Some("morgan-voyce-b")),
    ];
    rows.iter()
        .map(|&(name, symbol, kind, p0, p1, d, g, alpha, partner)| {
            FamilySpec::new(
                name,
                symbol,
                kind,
                x_poly(p0),
                x_poly(p1),
                x_poly(d),
                x_poly(g),
                alpha,
                partner,
            )
        })
        .collect()
}

/// The thirteen shipped families, in table order.
pub fn registry() -> &'static [FamilySpec] {
    static REGISTRY: OnceLock<Vec<FamilySpec>> = OnceLock::new();
    REGISTRY.get_or_init(build_registry)
}

pub fn family(name: &str) -> Option<&'static FamilySpec> {
    registry().iter().find(|f| f.name == name)
}

/// The six equivalent pairs, ordered as the Lucas/Fibonacci pairing table.
pub fn pairs() -> &'static [FamilyPair] {
    static PAIRS: OnceLock<Vec<FamilyPair>> = OnceLock::new();
    PAIRS.get_or_init(|| {
        [
            "fibonacci",
            "pell",
            "fermat",
            "chebyshev-second",
            "jacobsthal",
            "morgan-voyce-b",
        ]
        .iter()
        .map(|&fib| {
            let fib = family(fib).expect("registered").clone();
            let lucas = family(fib.partner.as_deref().expect("partnered"))
                .expect("registered")
                .clone();
            FamilyPair { fib, lucas }
        })
        .collect()
    })
}

/// Resolves a pair by its full name (`fibonacci/lucas`) or either member.
pub fn pair(selector: &str) -> Option<&'static FamilyPair> {
    pairs()
        .iter()
        .find(|p| p.name() == selector || p.fib.name == selector || p.lucas.name == selector)
}

/// All violations across a set of families, including partner consistency.
pub fn registry_violations(families: &[FamilySpec]) -> Vec<String> {
    let mut out = Vec::new();
    for f in families {
        out.extend(
            f.violations()
                .into_iter()
                .map(|v| format!("{}: {v}", f.name)),
        );
        let Some(partner_name) = &f.partner else {
            continue;
        };
        match families.iter().find(|p| &p.name == partner_name) {
            None => out.push(format!(
                "{}: partner {partner_name} is not registered",
                f.name
            )),
            Some(p) => {
                if p.partner.as_deref() != Some(f.name.as_str()) {
                    out.push(format!(
                        "{}: partner {partner_name} does not point back",
                        f.name
                    ));
                }
                if p.kind == f.kind {
                    out.push(format!(
                        "{}: partner {partner_name} has the same kind",
                        f.name
                    ));
                }
                if p.d != f.d || p.g != f.g || p.alpha != f.alpha {
                    out.push(format!(
                        "{}: partner {partner_name} differs in d, g or alpha",
                        f.name
                    ));
                }
            }
        }
    }
    out
}
