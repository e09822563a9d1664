//! Run configuration for the verification harness.

use mircan_core::charforms::Family;
use num::complex::Complex64;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum FamilyArg {
    /// dim = 8k + 4
    #[value(name = "8k4")]
    EightKPlusFour,
    /// dim = 8k
    #[value(name = "8k")]
    EightK,
}

impl FamilyArg {
    pub fn to_family(self) -> Family {
        match self {
            FamilyArg::EightKPlusFour => Family::EightKPlusFour,
            FamilyArg::EightK => Family::EightK,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Ring,
    Theta,
    Charforms,
    Cancel,
    Lambda,
    Localize,
}

impl Suite {
    pub fn all() -> Vec<Suite> {
        vec![
            Suite::Ring,
            Suite::Theta,
            Suite::Charforms,
            Suite::Cancel,
            Suite::Lambda,
            Suite::Localize,
        ]
    }
}

/// Echoed into every report; defaults match the dim-12 headline case.
#[derive(Debug, Clone, Serialize)]
pub struct Config {
    pub k: u32,
    pub family: FamilyArg,
    pub l: u32,
    /// q-series order in q^{1/2} units.
    pub q_order: u32,
    pub taylor_order: u32,
    pub tolerance: f64,
    pub tau_samples: Vec<String>,
    pub seed: u64,
    pub suites: Vec<Suite>,
    pub golden_dir: Option<String>,
    pub emit_golden: bool,
    pub out_path: Option<String>,
}

impl Config {
    pub fn dim(&self) -> u32 {
        match self.family {
            FamilyArg::EightKPlusFour => 8 * self.k + 4,
            FamilyArg::EightK => 8 * self.k,
        }
    }

    pub fn taus(&self) -> Result<Vec<Complex64>, String> {
        self.tau_samples.iter().map(|s| parse_complex(s)).collect()
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.family == FamilyArg::EightK && self.k == 0 {
            return Err("the 8k family needs k >= 1".into());
        }
        if self.q_order < self.k + 2 {
            return Err("q-order must be at least k + 2 for the closure checks".into());
        }
        if self.tau_samples.is_empty() {
            return Err("at least one tau sample is required".into());
        }
        for t in self.taus()? {
            if t.im <= 0.0 {
                return Err(format!("tau sample {t} is not in the upper half plane"));
            }
        }
        Ok(())
    }
}

/// Parse "a+bi" / "a-bi" / "bi" / "a" into a complex number.
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let t = s.trim().replace(' ', "");
    let bad = |m: &str| format!("cannot parse complex number `{s}`: {m}");
    if t.is_empty() {
        return Err(bad("empty"));
    }
    let Some(body) = t.strip_suffix('i') else {
        return t
            .parse::<f64>()
            .map(|re| Complex64::new(re, 0.0))
            .map_err(|_| bad("bad real part"));
    };
    // split at the last +/- that is neither leading nor part of an exponent
    let chars: Vec<char> = body.chars().collect();
    let split = (1..chars.len()).rev().find(|&i| {
        (chars[i] == '+' || chars[i] == '-') && chars[i - 1] != 'e' && chars[i - 1] != 'E'
    });
    let (re_str, im_str) = match split {
        Some(i) => (&body[..i], &body[i..]),
        None => ("", body),
    };
    let re: f64 = if re_str.is_empty() {
        0.0
    } else {
        re_str.parse().map_err(|_| bad("bad real part"))?
    };
    let im: f64 = match im_str {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => other.parse().map_err(|_| bad("bad imaginary part"))?,
    };
    Ok(Complex64::new(re, im))
}
