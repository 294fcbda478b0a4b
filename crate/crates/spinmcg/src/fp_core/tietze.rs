//! Tietze transformations with syntactic certificates.

use super::expr::Expr;
use super::presentation::{GenKind, Presentation, Relator};
use super::word::{free_reduce, GenId, Word};
use super::FpError;

/// One factor `c r^{±1} c^-1` of a consequence certificate.
#[derive(Clone, Debug)]
pub struct CertFactor {
    pub conjugator: Word,
    pub relator: usize,
    pub inverse: bool,
}

#[derive(Clone, Debug)]
pub enum TietzeMove {
    /// New generator `name` with relator `name definition^-1`.
    AddGenerator { name: String, definition: Word },
    /// Removes `gen` using relator `relator`, which must read `gen w^-1` or
    /// `w gen^-1` up to cyclic rotation with `gen` occurring once.
    RemoveGenerator { gen: GenId, relator: usize },
    /// Adds `word`, which must freely equal the product of the certificate factors.
    AddRelator { label: String, word: Word, certificate: Vec<CertFactor> },
    /// Removes relator `index`, proved from the remaining ones.
    RemoveRelator { index: usize, certificate: Vec<CertFactor> },
}

/// Maximum flattened relator length accepted by Tietze moves.
pub const TIETZE_MAX_LEN: u128 = 1 << 22;

fn certificate_product(words: &[Word], cert: &[CertFactor]) -> Result<Word, FpError> {
    let mut acc = Word::empty();
    for f in cert {
        let r = words.get(f.relator).ok_or(FpError::InvalidCertificate("relator index out of range".into()))?;
        let r = if f.inverse { r.inverse() } else { r.clone() };
        acc = acc.concat(&Word::conj(&f.conjugator, &r));
    }
    Ok(free_reduce(&acc))
}

pub fn tietze_move(p: &Presentation, mv: &TietzeMove) -> Result<Presentation, FpError> {
    let mut out = p.clone();
    match mv {
        TietzeMove::AddGenerator { name, definition } => {
            if definition.letters().iter().any(|l| l.gen >= p.gens.len()) {
                return Err(FpError::InvalidCertificate("definition uses an undeclared generator".into()));
            }
            let g = out.add_gen(name, GenKind::Free);
            let w = Word::gen(g).concat(&definition.inverse());
            out.add_relator(&format!("def {name}"), Expr::from_word(&w));
        }
        TietzeMove::RemoveGenerator { gen, relator } => {
            let words = p.relator_words(TIETZE_MAX_LEN)?;
            let r = words.get(*relator).ok_or(FpError::NotDefining(*gen))?;
            let definition = solve_for(r, *gen).ok_or(FpError::NotDefining(*gen))?;
            let mut rels = Vec::new();
            for (i, (rel, w)) in p.relators.iter().zip(&words).enumerate() {
                if i == *relator {
                    continue;
                }
                let nw = free_reduce(&w.substitute(*gen, &definition));
                rels.push((rel.label.clone(), nw, rel.status.clone()));
            }
            out.gens.remove(*gen);
            let shift = |g: GenId| if g > *gen { g - 1 } else { g };
            out.relators = rels
                .into_iter()
                .map(|(label, w, status)| {
                    if w.mentions(*gen) {
                        return Err(FpError::StillReferenced(p.gens[*gen].name.clone()));
                    }
                    Ok(Relator { label, expr: Expr::from_word(&w.reindex(shift)), status })
                })
                .collect::<Result<_, _>>()?;
        }
        TietzeMove::AddRelator { label, word, certificate } => {
            let words = p.relator_words(TIETZE_MAX_LEN)?;
            let prod = certificate_product(&words, certificate)?;
            if prod != free_reduce(word) {
                return Err(FpError::InvalidCertificate(format!("product does not reduce to {label}")));
            }
            out.add_relator(label, Expr::from_word(word));
        }
        TietzeMove::RemoveRelator { index, certificate } => {
            if *index >= p.relators.len() {
                return Err(FpError::InvalidCertificate("relator index out of range".into()));
            }
            if certificate.iter().any(|f| f.relator == *index) {
                return Err(FpError::InvalidCertificate("certificate uses the removed relator".into()));
            }
            let words = p.relator_words(TIETZE_MAX_LEN)?;
            if certificate_product(&words, certificate)? != words[*index] {
                return Err(FpError::InvalidCertificate("product does not reduce to the relator".into()));
            }
            out.relators.remove(*index);
        }
    }
    Ok(out)
}

/// From a relator containing `gen` exactly once, returns `w` with `gen = w`.
fn solve_for(r: &Word, gen: GenId) -> Option<Word> {
    let pos: Vec<usize> = (0..r.len()).filter(|&i| r.0[i].gen == gen).collect();
    if pos.len() != 1 {
        return None;
    }
    let i = pos[0];
    // r = u x^e v, so x^e = u^-1 v^-1
    let u = Word(r.0[..i].to_vec());
    let v = Word(r.0[i + 1..].to_vec());
    let rhs = u.inverse().concat(&v.inverse());
    Some(free_reduce(&if r.0[i].inv { rhs.inverse() } else { rhs }))
}

pub fn apply_moves(p: &Presentation, moves: &[TietzeMove]) -> Result<Presentation, FpError> {
    moves.iter().try_fold(p.clone(), |acc, m| tietze_move(&acc, m))
}
