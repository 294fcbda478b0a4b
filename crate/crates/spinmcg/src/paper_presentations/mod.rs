//! The presentation corpus and the shorthand expander.

pub mod checks;
pub mod expander;
pub mod fake_chain;
pub mod presets;

use crate::fp_core::{Evaluator, Expr, FpError, Presentation, Word};
use crate::gf2_spin::Gf2SympMap;
use crate::sp_rep::{twist_generator_classes, transvection_vec, ClassicalModel, Gf2Rep, GeneratorTable, SpMatrix};

pub use expander::{lantern_count, Expander, Mode};
pub use fake_chain::{fake_3chain_relator, FakeChain};
pub use presets::{boundary, closed, genus1, genus2, genus3, handlebody, stabilizer};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PresError {
    #[error("unknown presentation label `{0}`")]
    UnknownLabel(String),
    #[error("genus {g} is outside the valid range for {what}")]
    GenusOutOfRange { what: String, g: usize },
    #[error("index out of range for genus {g}: {what}")]
    IndexOutOfRange { g: usize, what: String },
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error(transparent)]
    Fp(#[from] FpError),
    #[error("check failed: {0}")]
    Check(String),
}

/// Known preset families.
pub const PRESET_FAMILIES: &[&str] = &["g1", "g2", "g3", "boundary-g", "closed-g", "handlebody-g", "stabilizer-g"];

/// Splits a label into family and genus.
pub fn parse_label(label: &str) -> Result<(String, usize), PresError> {
    let bad = || PresError::UnknownLabel(label.to_string());
    match label {
        "g1" => return Ok(("g1".into(), 1)),
        "g2" => return Ok(("g2".into(), 2)),
        "g3" => return Ok(("g3".into(), 3)),
        _ => {}
    }
    let (family, g) = label.rsplit_once("-g").ok_or_else(bad)?;
    let g: usize = g.parse().map_err(|_| bad())?;
    if !["boundary", "closed", "handlebody", "stabilizer"].contains(&family) {
        return Err(bad());
    }
    Ok((family.to_string(), g))
}

pub fn presentation(label: &str) -> Result<Presentation, PresError> {
    let (family, g) = parse_label(label)?;
    if g > 8 {
        return Err(PresError::GenusOutOfRange { what: family, g });
    }
    match family.as_str() {
        "g1" => Ok(genus1()),
        "g2" => genus2(),
        "g3" => genus3(),
        "boundary" => boundary(g),
        "closed" => closed(g),
        "handlebody" => handlebody(g),
        _ => stabilizer(g),
    }
}

/// Symplectic image of a generator name at genus `g`, `None` for opaque or unknown names.
pub fn generator_image(name: &str, g: usize) -> Option<SpMatrix> {
    let m = ClassicalModel::new(g);
    if let Some((head, args)) = name.strip_suffix(']').and_then(|s| s.split_once('[')) {
        let nums: Vec<i64> = args.split(',').map(|a| a.parse().ok()).collect::<Option<_>>()?;
        let ok = |k: i64| k != 0 && k.unsigned_abs() as usize <= g;
        return match (head, nums.as_slice()) {
            ("d", &[i, j]) if ok(i) && ok(j) && i < j => Some(m.dbar(i, j)),
            ("r", &[i, j]) if ok(i) && j >= 1 && j as usize <= g && i < j => Some(m.rbar(i, j as usize)),
            _ => None,
        };
    }
    if name == "s" {
        return Some(m.s());
    }
    let split = name.find(|c: char| c.is_ascii_digit())?;
    let (head, num) = name.split_at(split);
    let k: usize = num.parse().ok()?;
    match head {
        "A" if (1..=g).contains(&k) => Some(m.a2(k)),
        "t" if k >= 1 && k < g => Some(m.t(k)),
        _ => twist_generator_classes(g).into_iter().find(|(n, _)| n == name).map(|(_, v)| transvection_vec(&v)),
    }
}

/// Images of all generators of `p` that have one.
pub fn generator_table(p: &Presentation, g: usize) -> GeneratorTable {
    let mut t = GeneratorTable::new(g);
    for n in p.gen_names() {
        if let Some(m) = generator_image(&n, g) {
            t.insert(&n, m);
        }
    }
    t
}

/// Named elements over the generators of `base`.
#[derive(Clone, Debug)]
pub struct GeneratingSet {
    pub genus: usize,
    pub base: Presentation,
    pub elements: Vec<(String, Expr)>,
}

impl GeneratingSet {
    /// Mod-2 images of the elements.
    pub fn mod2_images(&self) -> Result<Vec<Gf2SympMap>, PresError> {
        let table = generator_table(&self.base, self.genus);
        let rep = Gf2Rep::from_table(&self.base.gen_names(), &table);
        let mut ev = Evaluator::new(&rep);
        self.elements.iter().map(|(_, e)| Ok(ev.eval(e)?)).collect()
    }

    pub fn words(&self, max_len: u128) -> Result<Vec<(String, Word)>, PresError> {
        self.elements.iter().map(|(n, e)| Ok((n.clone(), e.to_word(max_len)?))).collect()
    }
}

fn surface_expander(g: usize) -> Result<Expander, PresError> {
    match g {
        2 => Expander::new(Mode::Genus2, 2),
        _ => Expander::new(Mode::Twist, g),
    }
}

/// Generators of the preset for genus `g` (`g1`, `g2`, `g3` or `closed-g`).
pub fn full_generating_set(g: usize) -> Result<GeneratingSet, PresError> {
    let base = match g {
        0 => return Err(PresError::GenusOutOfRange { what: "generating set".into(), g }),
        1 => genus1(),
        _ => surface_expander(g)?.skeleton(),
    };
    let elements = base.gen_names().into_iter().enumerate().map(|(k, n)| (n, Expr::gen(k))).collect();
    Ok(GeneratingSet { genus: g, base, elements })
}

/// `{a1^2, b1, t1, d̄_{1,2}, u}` with `u = t_1 ... t_{g-1}`; genus one falls back to `{a^2, b}`.
pub fn small_generating_set(g: usize) -> Result<GeneratingSet, PresError> {
    if g == 1 {
        return full_generating_set(1);
    }
    let mut x = surface_expander(g)?;
    let elements = vec![
        ("a1^2".to_string(), x.a2(1)?),
        ("b1".to_string(), x.b(1)?),
        ("t1".to_string(), x.t(1)?),
        ("d[1,2]".to_string(), x.d12()?),
        ("u".to_string(), x.u()?),
    ];
    Ok(GeneratingSet { genus: g, base: x.skeleton(), elements })
}

/// `{a1^2, s, r̄_{1,2}, t1, u}` for the handlebody group; `{a1^2, s a1^2}` in genus one.
pub fn handlebody_small_generating_set(g: usize) -> Result<GeneratingSet, PresError> {
    let mut x = Expander::new(Mode::Stabilizer { handlebody: true }, g)?;
    let a1 = x.a2(1)?;
    let s = x.gen("s")?;
    let elements = if g == 1 {
        vec![("a1^2".to_string(), a1.clone()), ("s a1^2".to_string(), s.mul(&a1))]
    } else {
        vec![
            ("a1^2".to_string(), a1),
            ("s".to_string(), s),
            ("r[1,2]".to_string(), x.rbar(1, 2)?),
            ("t1".to_string(), x.t(1)?),
            ("u".to_string(), x.u()?),
        ]
    };
    Ok(GeneratingSet { genus: g, base: x.skeleton(), elements })
}

/// Expander suited to genus `g`: genus-2 generators for `g = 2`, twist generators above.
pub fn expander_for(g: usize) -> Result<Expander, PresError> {
    surface_expander(g)
}

/// Expands `symbol` at genus `g` to a word over the expander's generators.
pub fn expand(symbol: &str, g: usize, max_len: u128) -> Result<(Vec<String>, Word), PresError> {
    let mut x = expander_for(g)?;
    let e = x.symbol(symbol)?;
    Ok((x.gen_names(), e.to_word(max_len)?))
}
