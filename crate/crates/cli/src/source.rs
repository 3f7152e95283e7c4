//! Building cyclic words from command line family arguments.

use cycgroups::cycpres::{
    family_catalog, family_hnk, family_ln, family_sv, CatalogEntry, CyclicWord, Form, HnkParams,
    LnParams, SvParams,
};
use cycgroups::parse::parse_word;
use cycgroups::Error;

use crate::commands::CliError;
use crate::FamilyArgs;

fn need<T: Copy>(v: Option<T>, flag: &str, family: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::usage(format!("--family {family} needs --{flag}")))
}

fn notice(what: &str, given: i64, now: i64) {
    if given != now {
        eprintln!("notice: {what} = {given} normalized to {now}");
    }
}

/// `v mod n` in `1..=n`.
fn one_based(v: i64, n: usize, what: &str) -> usize {
    let r = match v.rem_euclid(n as i64) {
        0 => n as i64,
        r => r,
    };
    notice(what, v, r);
    r as usize
}

fn zero_based(v: i64, n: usize, what: &str) -> i64 {
    let r = v.rem_euclid(n as i64);
    notice(what, v, r);
    r
}

pub fn hnk_params(n: usize, m: i64, k: i64) -> Result<HnkParams, CliError> {
    if n < 2 {
        return Err(CliError::usage("n must be at least 2"));
    }
    Ok(HnkParams::new(n, one_based(m, n, "m"), one_based(k, n, "k"))?)
}

pub fn sv_params(a: &FamilyArgs) -> Result<SvParams, CliError> {
    let n = need(a.n, "n", "sv")?;
    if n == 0 {
        return Err(CliError::usage("n must be positive"));
    }
    let k = zero_based(need(a.k, "k", "sv")?, n, "k");
    let q = a.q.iter().map(|&q| zero_based(q, n, "q")).collect();
    Ok(SvParams::new(n, k, q, a.eps.clone())?)
}

pub fn ln_params(a: &FamilyArgs) -> Result<LnParams, CliError> {
    let n = need(a.n, "n", "ln")?;
    if n == 0 {
        return Err(CliError::usage("n must be positive"));
    }
    let p = a.p.iter().map(|&p| zero_based(p, n, "p")).collect();
    Ok(LnParams::new(n, p)?)
}

pub fn cyclic_word(a: &FamilyArgs) -> Result<CyclicWord, CliError> {
    let family = a.family.as_deref().unwrap_or(if a.word.is_some() { "word" } else { "hnk" });
    match family {
        "hnk" | "h" => {
            let p = hnk_params(
                need(a.n, "n", family)?,
                need(a.m, "m", family)?,
                need(a.k, "k", family)?,
            )?;
            Ok(family_hnk(p))
        }
        "sv" => Ok(family_sv(&sv_params(a)?)),
        "ln" | "l" => Ok(family_ln(&ln_params(a)?)),
        "catalog" => {
            let name = a
                .name
                .as_deref()
                .ok_or_else(|| CliError::usage("--family catalog needs --name"))?;
            let entry = CatalogEntry::from_name(name, need(a.n, "n", family)?, a.param)?;
            let form = match a.form.to_ascii_lowercase().as_str() {
                "a" | "1" => Form::A,
                "b" | "2" => Form::B,
                other => return Err(CliError::usage(format!("unknown form `{other}` (use a or b)"))),
            };
            Ok(family_catalog(entry, form)?)
        }
        "word" => {
            let n = need(a.n, "n", family)?;
            let text = a
                .word
                .as_deref()
                .ok_or_else(|| CliError::usage("--family word needs --word"))?;
            let w = parse_word(text, n)?;
            if w.is_empty() {
                return Err(Error::EmptyWord.into());
            }
            Ok(CyclicWord::new(w))
        }
        other => Err(CliError::usage(format!(
            "unknown family `{other}` (use hnk, sv, ln, catalog or word)"
        ))),
    }
}
