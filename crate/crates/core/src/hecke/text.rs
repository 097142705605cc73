use serde::{Deserialize, Serialize};

use super::context::AlgebraContext;
use super::elt::{BasisKey, HeckeElt};
use crate::chars::CharacterPoint;
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::rootsys::WeylElement;

/// One term of the JSON form of an element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub k: u32,
    pub word: Vec<usize>,
    pub lambda: Vec<String>,
    pub poly: String,
}

impl AlgebraContext {
    pub fn render_key(&self, key: &BasisKey) -> String {
        let prefix = if key.k == 0 { String::new() } else { format!("D^{} ", key.k) };
        format!("{prefix}T[{}] 1[{}]", self.group().render_word(key.w), self.chars().point(key.lambda))
    }

    /// Text form such as `T[s1 s2] 1[(1/3,0)] * (v - v^-1) + T[] 1[(0,0)]`.
    pub fn render(&self, h: &HeckeElt) -> String {
        if h.is_zero() {
            return "0".to_string();
        }
        h.terms()
            .map(|(k, c)| {
                if c.is_one() {
                    self.render_key(k)
                } else {
                    format!("{} * ({c})", self.render_key(k))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    pub fn parse(&self, s: &str) -> Result<HeckeElt> {
        let s = s.trim();
        let mut h = self.zero();
        if s == "0" {
            return Ok(h);
        }
        for term in split_top_level(s) {
            let (key, c) = self.parse_term(term.trim())?;
            h.add_term(key, &c);
        }
        Ok(h)
    }

    fn parse_term(&self, t: &str) -> Result<(BasisKey, LaurentPoly)> {
        let bad = |msg: &str| Error::Parse(format!("{msg} in term {t:?}"));
        let mut rest = t;
        let mut k = 0u32;
        if let Some(r) = rest.strip_prefix("D^") {
            let end = r.find(|c: char| !c.is_ascii_digit() && c != '-').unwrap_or(r.len());
            let p: i64 = r[..end].parse().map_err(|_| bad("bad twist exponent"))?;
            k = p.rem_euclid(self.d() as i64) as u32;
            rest = r[end..].trim_start();
        }
        let rest2 = rest.strip_prefix("T[").ok_or_else(|| bad("expected T["))?;
        let close = rest2.find(']').ok_or_else(|| bad("unclosed T["))?;
        let word = &rest2[..close];
        let w = self.group().parse_word(word)?;
        let letters = word.split(|c: char| c.is_whitespace() || c == 's' || c == ',').filter(|x| !x.is_empty()).count();
        if self.group().length(w) as usize != letters {
            return Err(bad("word is not reduced"));
        }
        let rest3 = rest2[close + 1..].trim_start().strip_prefix("1[").ok_or_else(|| bad("expected 1["))?;
        let close = rest3.find(']').ok_or_else(|| bad("unclosed 1["))?;
        let lambda = self.chars().parse(&rest3[..close])?;
        let tail = rest3[close + 1..].trim();
        let c = if tail.is_empty() {
            LaurentPoly::one()
        } else {
            let p = tail.strip_prefix('*').ok_or_else(|| bad("expected '*'"))?.trim();
            let p = p.strip_prefix('(').and_then(|p| p.strip_suffix(')')).unwrap_or(p);
            p.parse().map_err(|e| Error::Parse(format!("{e}")))?
        };
        Ok((BasisKey::twisted(k, w, lambda), c))
    }

    pub fn to_records(&self, h: &HeckeElt) -> Vec<TermRecord> {
        h.terms()
            .map(|(k, c)| TermRecord {
                k: k.k,
                word: self.group().word_one_based(k.w),
                lambda: self.chars().point(k.lambda).entries(),
                poly: c.to_string(),
            })
            .collect()
    }

    pub fn from_records(&self, records: &[TermRecord]) -> Result<HeckeElt> {
        let mut h = self.zero();
        for r in records {
            let letters: Vec<usize> = r
                .word
                .iter()
                .map(|&i| i.checked_sub(1).ok_or_else(|| Error::Parse("generators are one-based".into())))
                .collect::<Result<_>>()?;
            let w: WeylElement = self.group().from_word(&letters)?;
            if self.group().length(w) as usize != letters.len() {
                return Err(Error::Parse("word is not reduced".into()));
            }
            let lambda = self.chars().lookup(&CharacterPoint::from_entries(&r.lambda, self.n())?)?;
            let c: LaurentPoly = r.poly.parse().map_err(|e| Error::Parse(format!("{e}")))?;
            h.add_term(BasisKey::twisted(r.k % self.d(), w, lambda), &c);
        }
        Ok(h)
    }
}

fn split_top_level(s: &str) -> Vec<&str> {
    let mut depth = 0i32;
    let mut out = Vec::new();
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            '+' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}
