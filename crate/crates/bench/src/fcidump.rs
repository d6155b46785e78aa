//! FCIDUMP reader.
//!
//! The header is a Fortran namelist (`&FCI NORB=.., NELEC=.., MS2=.., ... &END`
//! or `/`), possibly spread over several lines. Each following line is
//! `value i j k l` with 1-based orbital indices:
//!
//! | indices       | meaning                     |
//! |---------------|-----------------------------|
//! | `0 0 0 0`     | core (nuclear) energy       |
//! | `i j 0 0`     | one-electron integral h_ij  |
//! | `i j k l`     | two-electron integral (ij\|kl) |
//! | `i 0 0 0`     | orbital energy, ignored     |
//!
//! Every line sets its whole symmetry orbit, so writers that list redundant
//! permutations produce the same result as those that list only one.

use std::path::Path;

use vqe_core::hamiltonian::IntegralData;

#[derive(Debug, thiserror::Error)]
pub enum FcidumpError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("header is missing `{0}`")]
    MissingKey(&'static str),
    #[error("line {line}: orbital index {index} exceeds NORB = {norb}")]
    IndexOutOfRange { line: usize, index: usize, norb: usize },
    #[error("integrals rejected: {0}")]
    Invalid(#[from] vqe_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

struct Header {
    norb: usize,
    nelec: usize,
    ms2: i32,
}

fn syntax(line: usize, message: impl Into<String>) -> FcidumpError {
    FcidumpError::Syntax {
        line,
        message: message.into(),
    }
}

/// Parses the namelist text (without the `&FCI` marker and terminator).
fn parse_header(text: &str, line: usize) -> Result<Header, FcidumpError> {
    let mut norb = None;
    let mut nelec = None;
    let mut ms2 = None;
    let mut key: Option<String> = None;
    for token in text.split([',', ' ', '\t', '\n', '\r']).filter(|t| !t.is_empty()) {
        let value = match token.split_once('=') {
            Some((k, v)) => {
                key = Some(k.trim().to_ascii_uppercase());
                v.trim()
            }
            None => token,
        };
        if value.is_empty() {
            continue;
        }
        let int = |v: &str| {
            v.parse::<i64>()
                .map_err(|_| syntax(line, format!("bad header value `{v}`")))
        };
        match key.as_deref() {
            Some("NORB") => norb = Some(int(value)?),
            Some("NELEC") => nelec = Some(int(value)?),
            Some("MS2") => ms2 = Some(int(value)?),
            Some(_) => {}
            None => return Err(syntax(line, format!("stray header token `{token}`"))),
        }
    }
    let norb = norb.ok_or(FcidumpError::MissingKey("NORB"))?;
    let nelec = nelec.ok_or(FcidumpError::MissingKey("NELEC"))?;
    let ms2 = ms2.ok_or(FcidumpError::MissingKey("MS2"))?;
    if norb < 0 || nelec < 0 {
        return Err(syntax(line, "NORB and NELEC must be non-negative"));
    }
    Ok(Header {
        norb: norb as usize,
        nelec: nelec as usize,
        ms2: ms2 as i32,
    })
}

fn parse_value(token: &str, line: usize) -> Result<f64, FcidumpError> {
    // Fortran writers may use D exponents
    let t = token.replace(['D', 'd'], "E");
    t.parse::<f64>()
        .map_err(|_| syntax(line, format!("non-numeric value `{token}`")))
}

pub fn parse_fcidump(text: &str) -> Result<IntegralData, FcidumpError> {
    let mut lines = text.lines().enumerate();
    let mut header_text = String::new();
    let mut started = false;
    let mut header_line = 1;
    for (n, raw) in lines.by_ref() {
        let mut l = raw.trim();
        if !started {
            if l.is_empty() {
                continue;
            }
            let Some(rest) = l.strip_prefix('&').and_then(|r| {
                r.get(..3)
                    .filter(|p| p.eq_ignore_ascii_case("FCI"))
                    .map(|_| &r[3..])
            }) else {
                return Err(syntax(n + 1, "expected `&FCI` header"));
            };
            started = true;
            header_line = n + 1;
            l = rest;
        }
        let upper = l.to_ascii_uppercase();
        if let Some(pos) = upper.find("&END").or_else(|| upper.find('/')) {
            header_text.push_str(&l[..pos]);
            header_text.push(',');
            let header = parse_header(&header_text, header_line)?;
            return parse_body(header, lines);
        }
        header_text.push_str(l);
        header_text.push(',');
    }
    if started {
        Err(syntax(header_line, "unterminated header namelist"))
    } else {
        Err(syntax(1, "empty input"))
    }
}

fn parse_body<'a>(
    header: Header,
    lines: impl Iterator<Item = (usize, &'a str)>,
) -> Result<IntegralData, FcidumpError> {
    let n = header.norb;
    let mut d = IntegralData::zeros(n, header.nelec);
    d.ms2 = header.ms2;
    for (k, raw) in lines {
        let line = k + 1;
        let fields: Vec<&str> = raw.split_whitespace().collect();
        if fields.is_empty() {
            continue;
        }
        if fields.len() != 5 {
            return Err(syntax(line, format!("expected `value i j k l`, got {} fields", fields.len())));
        }
        let v = parse_value(fields[0], line)?;
        let mut idx = [0usize; 4];
        for (slot, f) in idx.iter_mut().zip(&fields[1..]) {
            *slot = f
                .parse()
                .map_err(|_| syntax(line, format!("bad orbital index `{f}`")))?;
            if *slot > n {
                return Err(FcidumpError::IndexOutOfRange {
                    line,
                    index: *slot,
                    norb: n,
                });
            }
        }
        match idx {
            [0, 0, 0, 0] => d.core_energy = v,
            [_, 0, 0, 0] => {}
            [i, j, 0, 0] if i > 0 && j > 0 => d.set_h1(i - 1, j - 1, v),
            [i, j, k, l] if i > 0 && j > 0 && k > 0 && l > 0 => {
                d.set_g2(i - 1, j - 1, k - 1, l - 1, v)
            }
            _ => return Err(syntax(line, format!("unsupported index pattern {idx:?}"))),
        }
    }
    d.validate()?;
    Ok(d)
}

pub fn load_fcidump(path: &Path) -> Result<IntegralData, FcidumpError> {
    let text = std::fs::read_to_string(path).map_err(|source| FcidumpError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_fcidump(&text)
}
