//! Enumeration caps.
//!
//! Every exhaustive construction in the kernel walks a powerset somewhere.
//! The caps below fail fast instead of letting a desk-scale tool hang on a
//! 2^40 loop. They are process-wide and may be raised up to [`HARD`].

use std::sync::atomic::{AtomicUsize, Ordering};

use crate::error::{Error, Result};

/// Largest carrier a [`crate::Subset`] can live on (mask width).
pub const MAX_CARRIER: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest carrier whose powerset may be enumerated.
    pub powerset: usize,
    /// Largest base of a `Fin(S)` carrier.
    pub fin_base: usize,
    /// Largest carrier for which a cover table is saturated.
    pub cover: usize,
}

pub const DEFAULT: Limits = Limits {
    powerset: 24,
    fin_base: 5,
    cover: 10,
};

pub const HARD: Limits = Limits {
    powerset: 26,
    fin_base: 6,
    cover: 12,
};

static POWERSET: AtomicUsize = AtomicUsize::new(DEFAULT.powerset);
static FIN_BASE: AtomicUsize = AtomicUsize::new(DEFAULT.fin_base);
static COVER: AtomicUsize = AtomicUsize::new(DEFAULT.cover);

pub fn limits() -> Limits {
    Limits {
        powerset: POWERSET.load(Ordering::Relaxed),
        fin_base: FIN_BASE.load(Ordering::Relaxed),
        cover: COVER.load(Ordering::Relaxed),
    }
}

/// Installs new caps, clamped to [`HARD`]. Returns what was installed.
pub fn set_limits(requested: Limits) -> Limits {
    let l = Limits {
        powerset: requested.powerset.min(HARD.powerset),
        fin_base: requested.fin_base.min(HARD.fin_base),
        cover: requested.cover.min(HARD.cover),
    };
    POWERSET.store(l.powerset, Ordering::Relaxed);
    FIN_BASE.store(l.fin_base, Ordering::Relaxed);
    COVER.store(l.cover, Ordering::Relaxed);
    l
}

impl Limits {
    /// Parses an override such as `20` (powerset cap only) or
    /// `powerset=20,fin=4,cover=8`. Unmentioned fields keep `self`'s values.
    pub fn parse_override(&self, text: &str) -> Option<Limits> {
        let text = text.trim();
        if let Ok(n) = text.parse::<usize>() {
            return Some(Limits {
                powerset: n,
                ..*self
            });
        }
        let mut out = *self;
        for part in text.split(',') {
            let (key, value) = part.split_once('=')?;
            let value: usize = value.trim().parse().ok()?;
            match key.trim() {
                "powerset" => out.powerset = value,
                "fin" | "fin_base" => out.fin_base = value,
                "cover" => out.cover = value,
                _ => return None,
            }
        }
        Some(out)
    }
}

pub(crate) fn check_powerset(what: &'static str, size: usize) -> Result<()> {
    let limit = limits().powerset;
    if size > limit {
        return Err(Error::LimitExceeded { what, size, limit });
    }
    Ok(())
}

pub(crate) fn check_fin_base(what: &'static str, size: usize) -> Result<()> {
    let limit = limits().fin_base;
    if size > limit {
        return Err(Error::LimitExceeded { what, size, limit });
    }
    Ok(())
}

pub(crate) fn check_cover(what: &'static str, size: usize) -> Result<()> {
    let limit = limits().cover;
    if size > limit {
        return Err(Error::LimitExceeded { what, size, limit });
    }
    Ok(())
}
