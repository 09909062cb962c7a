use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The four currencies, totally ordered $ < € < £ < ¥.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Currency {
    Usd,
    Eur,
    Gbp,
    Jpy,
}

impl Currency {
    pub const ALL: [Currency; 4] = [Currency::Usd, Currency::Eur, Currency::Gbp, Currency::Jpy];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Result<Self> {
        Self::ALL
            .get(i)
            .copied()
            .ok_or_else(|| Error::OutOfRange(format!("currency index {i}")))
    }

    pub fn symbol(self) -> char {
        match self {
            Currency::Usd => '$',
            Currency::Eur => '€',
            Currency::Gbp => '£',
            Currency::Jpy => '¥',
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "$" | "USD" => Ok(Currency::Usd),
            "€" | "EUR" => Ok(Currency::Eur),
            "£" | "GBP" => Ok(Currency::Gbp),
            "¥" | "JPY" => Ok(Currency::Jpy),
            other => Err(Error::Parse(format!("unknown currency {other:?}"))),
        }
    }
}

impl fmt::Display for Currency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// One of the six principal pairs, stored 0-based ($€, $£, $¥, €£, €¥, £¥).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrincipalPair(usize);

const PAIRS: [(Currency, Currency); 6] = [
    (Currency::Usd, Currency::Eur),
    (Currency::Usd, Currency::Gbp),
    (Currency::Usd, Currency::Jpy),
    (Currency::Eur, Currency::Gbp),
    (Currency::Eur, Currency::Jpy),
    (Currency::Gbp, Currency::Jpy),
];

impl PrincipalPair {
    pub const ALL: [PrincipalPair; 6] = [
        PrincipalPair(0),
        PrincipalPair(1),
        PrincipalPair(2),
        PrincipalPair(3),
        PrincipalPair(4),
        PrincipalPair(5),
    ];

    /// 1-based index as used in tables (1 = $€ … 6 = £¥).
    pub fn from_number(n: usize) -> Result<Self> {
        if (1..=6).contains(&n) {
            Ok(PrincipalPair(n - 1))
        } else {
            Err(Error::OutOfRange(format!("principal pair {n}")))
        }
    }

    pub fn slot(self) -> usize {
        self.0
    }

    pub fn number(self) -> usize {
        self.0 + 1
    }

    pub fn currencies(self) -> (Currency, Currency) {
        PAIRS[self.0]
    }

    /// Locate an ordered pair: `Ok((pair, +1))` if principal, `(pair, -1)` if
    /// it is the reciprocal orientation.
    pub fn locate(from: Currency, to: Currency) -> Result<(Self, i8)> {
        if from == to {
            return Err(Error::InvalidPair(format!("{from}{to}")));
        }
        let (lo, hi, sign) = if from < to { (from, to, 1) } else { (to, from, -1) };
        let slot = PAIRS.iter().position(|&p| p == (lo, hi)).expect("all ordered pairs listed");
        Ok((PrincipalPair(slot), sign))
    }

    /// Log-rate of (from → to) as a signed unit vector over l₁..l₆.
    pub fn unit(from: Currency, to: Currency) -> Result<[i8; 6]> {
        let (p, s) = Self::locate(from, to)?;
        let mut v = [0i8; 6];
        v[p.0] = s;
        Ok(v)
    }
}

impl fmt::Display for PrincipalPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.currencies();
        write!(f, "{a}{b}")
    }
}
