//! Presentations and their line-oriented text format.
//!
//! ```text
//! # comment
//! gen a
//! gen d[1,2]
//! opaque z3
//! rel R1: a d[1,2]^-2 a^-1
//! flagged R2: a^4
//! ```

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::OnceLock;

use regex::Regex;

use super::expr::Expr;
use super::word::{GenId, Letter, Word};
use super::FpError;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GenKind {
    /// Ordinary generator.
    Free,
    /// Symbol standing for an element that is not expressed in the other
    /// generators; it is never a column of the abelianization and has no
    /// representation image.
    Opaque,
}

#[derive(Clone, Debug)]
pub struct Generator {
    pub name: String,
    pub kind: GenKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RelatorStatus {
    Active,
    /// Kept for the record but excluded from checks and the abelianization.
    Flagged(String),
}

#[derive(Clone, Debug)]
pub struct Relator {
    pub label: String,
    pub expr: Expr,
    pub status: RelatorStatus,
}

impl Relator {
    pub fn is_active(&self) -> bool {
        self.status == RelatorStatus::Active
    }
}

#[derive(Clone, Debug, Default)]
pub struct Presentation {
    pub name: String,
    pub gens: Vec<Generator>,
    pub relators: Vec<Relator>,
}

impl Presentation {
    pub fn new(name: impl Into<String>) -> Self {
        Presentation { name: name.into(), gens: Vec::new(), relators: Vec::new() }
    }

    pub fn from_words(name: &str, gens: &[&str], relators: &[(&str, Word)]) -> Self {
        let mut p = Presentation::new(name);
        for g in gens {
            p.add_gen(g, GenKind::Free);
        }
        for (label, w) in relators {
            p.add_relator(label, Expr::from_word(w));
        }
        p
    }

    pub fn add_gen(&mut self, name: &str, kind: GenKind) -> GenId {
        self.gens.push(Generator { name: name.to_string(), kind });
        self.gens.len() - 1
    }

    pub fn add_relator(&mut self, label: &str, expr: Expr) {
        self.relators.push(Relator { label: label.to_string(), expr, status: RelatorStatus::Active });
    }

    pub fn add_flagged(&mut self, label: &str, expr: Expr, reason: &str) {
        self.relators.push(Relator {
            label: label.to_string(),
            expr,
            status: RelatorStatus::Flagged(reason.to_string()),
        });
    }

    pub fn gen_index(&self, name: &str) -> Option<GenId> {
        self.gens.iter().position(|g| g.name == name)
    }

    pub fn gen_names(&self) -> Vec<String> {
        self.gens.iter().map(|g| g.name.clone()).collect()
    }

    pub fn active(&self) -> impl Iterator<Item = &Relator> {
        self.relators.iter().filter(|r| r.is_active())
    }

    /// Every relator letter indexes a declared generator.
    pub fn validate(&self) -> Result<(), FpError> {
        for r in &self.relators {
            if let Some(&g) = r.expr.generators().iter().find(|&&g| g >= self.gens.len()) {
                return Err(FpError::NoImage(g));
            }
        }
        Ok(())
    }

    /// Relators flattened to freely reduced words.
    pub fn relator_words(&self, max_len: u128) -> Result<Vec<Word>, FpError> {
        self.relators.iter().map(|r| r.expr.to_reduced_word(max_len)).collect()
    }

    pub fn format_word(&self, w: &Word) -> String {
        format_word(&self.gen_names(), w)
    }

    /// Serializes with relators flattened, freely reduced and run-length encoded.
    pub fn to_text(&self, max_len: u128) -> Result<String, FpError> {
        let mut s = String::new();
        let names = self.gen_names();
        let _ = writeln!(s, "# {}", self.name);
        for g in &self.gens {
            let kw = match g.kind {
                GenKind::Free => "gen",
                GenKind::Opaque => "opaque",
            };
            let _ = writeln!(s, "{kw} {}", g.name);
        }
        for r in &self.relators {
            let w = r.expr.to_reduced_word(max_len)?;
            let kw = match &r.status {
                RelatorStatus::Active => "rel",
                RelatorStatus::Flagged(reason) => {
                    let _ = writeln!(s, "# flagged: {reason}");
                    "flagged"
                }
            };
            let _ = writeln!(s, "{kw} {}: {}", r.label, format_word(&names, &w));
        }
        Ok(s)
    }

    pub fn parse(text: &str) -> Result<Presentation, FpError> {
        let mut p = Presentation::new("file");
        let mut index: HashMap<String, GenId> = HashMap::new();
        let mut pending: Vec<(usize, String, String, bool)> = Vec::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (kw, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            let rest = rest.trim();
            match kw {
                "gen" | "opaque" => {
                    if !name_re().is_match(rest) {
                        return Err(parse_err(no, format!("bad generator name `{rest}`")));
                    }
                    if index.contains_key(rest) {
                        return Err(parse_err(no, format!("duplicate generator `{rest}`")));
                    }
                    let kind = if kw == "gen" { GenKind::Free } else { GenKind::Opaque };
                    index.insert(rest.to_string(), p.add_gen(rest, kind));
                }
                "rel" | "flagged" => {
                    let (label, word) =
                        rest.split_once(':').ok_or_else(|| parse_err(no, "missing `:` after label".into()))?;
                    pending.push((no, label.trim().to_string(), word.trim().to_string(), kw == "flagged"));
                }
                _ => return Err(parse_err(no, format!("unknown keyword `{kw}`"))),
            }
        }
        for (no, label, word, flagged) in pending {
            let w = parse_word(&word, &index).map_err(|m| parse_err(no, m))?;
            if flagged {
                p.add_flagged(&label, Expr::from_word(&w), "flagged in file");
            } else {
                p.add_relator(&label, Expr::from_word(&w));
            }
        }
        Ok(p)
    }
}

fn parse_err(line: usize, msg: String) -> FpError {
    FpError::Parse { line: line + 1, msg }
}

fn name_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| {
        Regex::new(r"^[A-Za-z][A-Za-z0-9_]*(\[-?[0-9]+(,-?[0-9]+)*\])?$").unwrap_or_else(|e| panic!("{e}"))
    })
}

fn token_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| {
        Regex::new(r"^([A-Za-z][A-Za-z0-9_]*(?:\[-?[0-9]+(?:,-?[0-9]+)*\])?)(?:\^(-?[0-9]+))?$")
            .unwrap_or_else(|e| panic!("{e}"))
    })
}

/// Parses whitespace-separated `name` / `name^k` tokens; `1` is the empty word.
pub fn parse_word(s: &str, index: &HashMap<String, GenId>) -> Result<Word, String> {
    let mut out = Vec::new();
    for tok in s.split_whitespace() {
        if tok == "1" {
            continue;
        }
        let caps = token_re().captures(tok).ok_or_else(|| format!("bad token `{tok}`"))?;
        let name = &caps[1];
        let g = *index.get(name).ok_or_else(|| format!("undeclared generator `{name}`"))?;
        let e: i64 = match caps.get(2) {
            Some(m) => m.as_str().parse().map_err(|_| format!("bad exponent in `{tok}`"))?,
            None => 1,
        };
        let l = if e < 0 { Letter::neg(g) } else { Letter::pos(g) };
        out.extend(std::iter::repeat_n(l, e.unsigned_abs() as usize));
    }
    Ok(Word(out))
}

pub fn format_word(names: &[String], w: &Word) -> String {
    if w.is_empty() {
        return "1".to_string();
    }
    w.syllables()
        .iter()
        .map(|(g, e)| if *e == 1 { names[*g].clone() } else { format!("{}^{}", names[*g], e) })
        .collect::<Vec<_>>()
        .join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        let text = "gen a\ngen d[1,2]\nopaque z\nrel R1: a d[1,2]^-2 a^-1\nflagged R2: a^4 z\n";
        let p = Presentation::parse(text).unwrap();
        assert_eq!(p.gens.len(), 3);
        assert_eq!(p.gens[2].kind, GenKind::Opaque);
        assert!(!p.relators[1].is_active());
        let back = Presentation::parse(&p.to_text(1000).unwrap()).unwrap();
        assert_eq!(back.relator_words(1000).unwrap(), p.relator_words(1000).unwrap());
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(Presentation::parse("gen a\nrel x: b\n"), Err(FpError::Parse { line: 2, .. })));
        assert!(Presentation::parse("gen 1a\n").is_err());
        assert!(Presentation::parse("frob a\n").is_err());
        assert!(Presentation::parse("gen a\ngen a\n").is_err());
    }

    #[test]
    fn identity_token() {
        let p = Presentation::parse("gen a\nrel triv: 1\n").unwrap();
        assert!(p.relator_words(10).unwrap()[0].is_empty());
    }
}
