//! Tables of `c_g^{-1} Λ^g_{n,1}` next to published reference rows.

use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::partition::ZeroPaddedPartition;
use crate::rational::{format_rational, Rational};
use crate::symfunc::{format_m_symbol, to_m_basis, trimmed, MExpansion};

use super::Engine;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableKind {
    /// `24 Λ^1_{n,1}` for `n = 1..6`.
    G1,
    /// `c_g^{-1} Λ^g_{n,1}` for `g = 2..5`.
    Higher,
}

impl std::str::FromStr for TableKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "g1" => Ok(TableKind::G1),
            "higher" => Ok(TableKind::Higher),
            _ => Err(Error::Parse(format!("unknown table {s:?}; expected g1 or higher"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReferenceRow {
    pub g: u32,
    pub n: usize,
    pub text: &'static str,
}

const G1_ROWS: &[ReferenceRow] = &[
    ReferenceRow { g: 1, n: 1, text: "-m_2" },
    ReferenceRow { g: 1, n: 2, text: "m_{3 1}+m_{2^2}" },
    ReferenceRow { g: 1, n: 3, text: "-m_{4 1^2}-2m_{3 2 1}-2m_{2^2}" },
    ReferenceRow {
        g: 1,
        n: 4,
        text: "-2m_{5 1^3}+3m_{4 2 1^2}+4m_{3^2 1^2}+6m_{3 2^2 1}+6m_{2^4}",
    },
    ReferenceRow {
        g: 1,
        n: 5,
        text: "34m_{6 1^4}+8m_{5 2 1^3}-12m_{4 2^2 1^2}-16m_{3^2 2 1^2}-24m_{3 2^3 1}-24m_{2^5}",
    },
    ReferenceRow {
        g: 1,
        n: 6,
        text: "-324m_{7 1^5}-170m_{6 2 1^4}-112m_{5 3 1^4}-40m_{5 2^2 1^3}-96m_{4^2 1^4}\
               +60m_{4 2^3 1^2}+24m_{3^3 1^3}+80m_{3^2 2^2 1^2}+120m_{3 2^4 1}+120m_{2^6}",
    },
];

const HIGHER_ROWS: &[ReferenceRow] = &[
    ReferenceRow { g: 2, n: 1, text: "37m_4" },
    ReferenceRow { g: 2, n: 2, text: "-106m_{5 1}-111m_{4 2}-116m_{3^2}" },
    ReferenceRow {
        g: 2,
        n: 3,
        text: "362m_{6 1^2}+424m_{5 2 1}+444m_{4 3 2}+444m_{4 2^2}+464m_{3^2 2}",
    },
    ReferenceRow { g: 3, n: 1, text: "-3426m_6" },
    ReferenceRow {
        g: 3,
        n: 2,
        text: "16836m_{7 1}+17130m_{6 2}+17424m_{5 3}+17424m_{4^2}",
    },
    ReferenceRow { g: 4, n: 1, text: "61164m_8" },
    ReferenceRow {
        g: 4,
        n: 2,
        text: "-4249232m_{9 1}-4278148m_{8 2}-4307064m_{7 3}-4311180m_{6 4}-4315296m_{5^2}",
    },
    ReferenceRow { g: 5, n: 1, text: "-180519696m_{10}" },
    ReferenceRow {
        g: 5,
        n: 2,
        text: "1619765280m_{11 1}+1624677264m_{10 2}+1629589248m_{9 3}+1630276704m_{8 4}\
               +1630964160m_{7 5}+1630964160m_{6^2}",
    },
];

pub fn reference_rows(kind: TableKind) -> &'static [ReferenceRow] {
    match kind {
        TableKind::G1 => G1_ROWS,
        TableKind::Higher => HIGHER_ROWS,
    }
}

/// Parses `"-2m_{5 1^3}+3m_4"` into `(parts, coefficient)` pairs.
pub fn parse_m_expression(text: &str) -> Result<Vec<(Vec<u32>, Rational)>> {
    let bad = |why: &str| Error::Parse(format!("{why} in {text:?}"));
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    while i < chars.len() {
        while i < chars.len() && chars[i] == ' ' {
            i += 1;
        }
        if i >= chars.len() {
            break;
        }
        let mut negative = false;
        if chars[i] == '+' || chars[i] == '-' {
            negative = chars[i] == '-';
            i += 1;
        }
        let start = i;
        while i < chars.len() && chars[i].is_ascii_digit() {
            i += 1;
        }
        let coeff: String = chars[start..i].iter().collect();
        let mut c = if coeff.is_empty() {
            Rational::from_integer(1.into())
        } else {
            Rational::from_integer(coeff.parse().map_err(|_| bad("bad coefficient"))?)
        };
        if negative {
            c = -c;
        }
        if chars.get(i) != Some(&'m') || chars.get(i + 1) != Some(&'_') {
            return Err(bad("expected m_"));
        }
        i += 2;
        let inner: String = if chars.get(i) == Some(&'{') {
            let close = chars[i..]
                .iter()
                .position(|&ch| ch == '}')
                .ok_or_else(|| bad("unclosed brace"))?;
            let inner = chars[i + 1..i + close].iter().collect();
            i += close + 1;
            inner
        } else {
            let ch = chars.get(i).ok_or_else(|| bad("missing index"))?;
            i += 1;
            ch.to_string()
        };
        let mut parts = Vec::new();
        for tok in inner.split_whitespace() {
            let (v, k) = match tok.split_once('^') {
                Some((v, k)) => (v, k.parse::<usize>().map_err(|_| bad("bad exponent"))?),
                None => (tok, 1),
            };
            let v: u32 = v.parse().map_err(|_| bad("bad part"))?;
            parts.extend(std::iter::repeat_n(v, k));
        }
        out.push((parts, c));
    }
    Ok(out)
}

/// One term of a report row: `{"m":[3,1],"c":"1"}`.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ReportTerm {
    pub m: Vec<u32>,
    pub c: String,
}

/// A reference term that only matched after resolution.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Resolution {
    pub reference: Vec<u32>,
    pub computed: Vec<u32>,
    pub c: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowReport {
    pub g: u32,
    pub n: usize,
    pub k: u32,
    /// `c_g^{-1}`.
    pub scale: Rational,
    pub computed: MExpansion,
    pub reference: &'static str,
    pub matches: bool,
    pub resolved: Vec<Resolution>,
    /// Set when the row does not match as scaled but does after multiplying
    /// by `2^{2g−1} − 1`.
    pub matches_times: Option<Rational>,
}

/// `{"g":1,"n":2,"k":1,"scale":"24","terms":[...],"match":true}`.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct RowJson {
    pub g: u32,
    pub n: usize,
    pub k: u32,
    pub scale: String,
    pub terms: Vec<ReportTerm>,
    #[serde(rename = "match")]
    pub matches: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub resolved: Vec<Resolution>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub match_times: Option<String>,
}

impl RowReport {
    pub fn to_json(&self) -> RowJson {
        let terms = self
            .computed
            .terms()
            .map(|(b, c)| ReportTerm {
                m: trimmed(b),
                c: format_rational(c),
            })
            .collect();
        RowJson {
            g: self.g,
            n: self.n,
            k: self.k,
            scale: format_rational(&self.scale),
            terms,
            matches: self.matches,
            resolved: self.resolved.clone(),
            match_times: self.matches_times.as_ref().map(format_rational),
        }
    }

    pub fn to_text(&self) -> String {
        let verdict = if self.matches { "match" } else { "MISMATCH" };
        let mut out = format!(
            "g={} n={} scale={}\n  computed:  {}\n  reference: {}\n  {verdict}",
            self.g,
            self.n,
            format_rational(&self.scale),
            self.computed,
            self.reference
        );
        for r in &self.resolved {
            out.push_str(&format!(
                " (reference {} read as {})",
                format_m_symbol(&ZeroPaddedPartition::new(r.reference.clone())),
                format_m_symbol(&ZeroPaddedPartition::new(r.computed.clone()))
            ));
        }
        if let Some(f) = &self.matches_times {
            out.push_str(&format!(" (matches after multiplying by {})", format_rational(f)));
        }
        out
    }
}

fn padded(parts: &[u32], n: usize) -> ZeroPaddedPartition {
    let mut v = parts.to_vec();
    v.resize(v.len().max(n), 0);
    ZeroPaddedPartition::new(v)
}

/// Compares a computed row with a reference row. Reference terms of the
/// wrong degree or length are matched to the single leftover computed term
/// with the same coefficient, and reported.
pub(crate) fn compare_row(computed: &MExpansion, reference: &str, n: usize, degree: u32) -> Result<(bool, Vec<Resolution>)> {
    let terms = parse_m_expression(reference)?;
    let mut ok = true;
    let mut leftover: Vec<(ZeroPaddedPartition, Rational)> = computed
        .terms()
        .map(|(b, c)| (b.clone(), c.clone()))
        .collect();
    let mut odd = Vec::new();
    for (parts, c) in terms {
        let consistent = parts.len() == n && parts.iter().sum::<u32>() == degree;
        if !consistent {
            odd.push((parts, c));
            continue;
        }
        let key = padded(&parts, n);
        match leftover.iter().position(|(b, _)| *b == key) {
            Some(i) if leftover[i].1 == c => {
                leftover.remove(i);
            }
            _ => ok = false,
        }
    }
    let mut resolved = Vec::new();
    for (parts, c) in odd {
        let candidates: Vec<usize> = (0..leftover.len()).filter(|&i| leftover[i].1 == c).collect();
        if candidates.len() == 1 {
            let (b, _) = leftover.remove(candidates[0]);
            resolved.push(Resolution {
                reference: parts,
                computed: trimmed(&b),
                c: format_rational(&c),
            });
        } else {
            ok = false;
        }
    }
    Ok((ok && leftover.is_empty(), resolved))
}

/// Reports rows `first..=last` (1-based) of a table.
pub fn table_report(engine: &mut Engine, kind: TableKind, first: usize, last: usize) -> Result<Vec<RowReport>> {
    let rows = reference_rows(kind);
    if first == 0 || last > rows.len() || first > last {
        return Err(Error::Parse(format!(
            "rows {first}..{last} outside 1..{}",
            rows.len()
        )));
    }
    let mut out = Vec::new();
    for row in &rows[first - 1..last] {
        let c = engine.c_g(row.g)?;
        let scale = c.recip();
        let lambda = engine.lambda(row.g, row.n, 1)?;
        let computed = to_m_basis(&lambda.scale(&scale))?;
        let degree = 2 * row.g + 2 * row.n as u32 - 2;
        let (matches, resolved) = compare_row(&computed, row.text, row.n, degree)?;
        let factor = Rational::from_integer((num_bigint::BigInt::from(1) << (2 * row.g - 1)) - 1);
        let matches_times = if !matches && !factor.is_one() {
            let rescaled = computed.scale(&factor);
            compare_row(&rescaled, row.text, row.n, degree)?.0.then_some(factor)
        } else {
            None
        };
        out.push(RowReport {
            g: row.g,
            n: row.n,
            k: 1,
            scale,
            computed,
            reference: row.text,
            matches,
            resolved,
            matches_times,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn reference_rows_parse() {
        for kind in [TableKind::G1, TableKind::Higher] {
            for row in reference_rows(kind) {
                let terms = parse_m_expression(row.text).unwrap();
                assert!(!terms.is_empty());
            }
        }
        let t = parse_m_expression("-2m_{5 1^3}+m_4").unwrap();
        assert_eq!(t, vec![(vec![5, 1, 1, 1], int(-2)), (vec![4], int(1))]);
        assert!(parse_m_expression("2x_4").is_err());
    }

    #[test]
    fn resolution_rule() {
        let mut computed = MExpansion::new(3);
        computed.insert(padded(&[4, 1, 1], 3), int(-1));
        computed.insert(padded(&[3, 2, 1], 3), int(-2));
        computed.insert(padded(&[2, 2, 2], 3), int(-2));
        let (ok, resolved) = compare_row(&computed, G1_ROWS[2].text, 3, 6).unwrap();
        assert!(ok);
        assert_eq!(resolved.len(), 1);
        assert_eq!(resolved[0].computed, vec![2, 2, 2]);
        // a wrong coefficient is not rescued
        computed.insert(padded(&[2, 2, 2], 3), int(-3));
        assert!(!compare_row(&computed, G1_ROWS[2].text, 3, 6).unwrap().0);
    }

    #[test]
    fn small_rows() {
        let mut engine = Engine::default();
        let rows = table_report(&mut engine, TableKind::G1, 1, 2).unwrap();
        assert!(rows.iter().all(|r| r.matches));
        let json = serde_json::to_string(&rows[1].to_json()).unwrap();
        assert_eq!(
            json,
            r#"{"g":1,"n":2,"k":1,"scale":"24","terms":[{"m":[3,1],"c":"1"},{"m":[2,2],"c":"1"}],"match":true}"#
        );
        // the printed higher-genus rows carry an extra factor 2^{2g-1} - 1
        let rows = table_report(&mut engine, TableKind::Higher, 1, 1).unwrap();
        assert_eq!(rows[0].computed.to_string(), "(37/7)m_4");
        assert!(!rows[0].matches);
        assert_eq!(rows[0].matches_times, Some(int(7)));
        let json = serde_json::to_string(&rows[0].to_json()).unwrap();
        assert!(json.ends_with(r#""match":false,"match_times":"7"}"#));
    }
}
