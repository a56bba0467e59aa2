//! Bit budgets and mappings for spatial modulation (SM) and generalized
//! index modulation (GIM).
//!
//! Bit fields are little-endian: the first bit of a field is its least
//! significant bit. GIM index sets map through the combinatorial number
//! system (ascending element lists).

use super::{bits_to_u64, u64_to_bits, Constellation};
use crate::error::{Error, Result};
use crate::Complex64;
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

/// Exact binomial coefficient `C(n, k)` (zero when `k > n`).
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::ZERO;
    }
    let k = k.min(n - k);
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `floor(log2 C(n, k))`; an error when the coefficient is zero.
pub fn floor_log2_binomial(n: u64, k: u64) -> Result<u32> {
    let c = binomial(n, k);
    if c == BigUint::ZERO {
        return Err(Error::invalid(format!("C({n}, {k}) is zero")));
    }
    Ok((c.bits() - 1) as u32)
}

/// The `rank`-th `k`-subset of `0..n` in colexicographic order.
pub fn unrank_combination(n: u64, k: u64, rank: &BigUint) -> Result<Vec<u64>> {
    if rank >= &binomial(n, k) {
        return Err(Error::invalid(format!("rank {rank} out of range for C({n}, {k})")));
    }
    let mut rest = rank.clone();
    let mut out = Vec::with_capacity(k as usize);
    let mut upper = n;
    for i in (1..=k).rev() {
        // largest c < upper with C(c, i) <= rest
        let mut c = upper - 1;
        loop {
            let b = binomial(c, i);
            if b <= rest {
                rest -= b;
                break;
            }
            c -= 1;
        }
        out.push(c);
        upper = c;
    }
    out.reverse();
    Ok(out)
}

/// Inverse of [`unrank_combination`]; `set` must be strictly ascending.
pub fn rank_combination(n: u64, set: &[u64]) -> Result<BigUint> {
    if set.windows(2).any(|w| w[0] >= w[1]) || set.last().is_some_and(|&c| c >= n) {
        return Err(Error::invalid("index set must be strictly ascending and below n"));
    }
    Ok(set
        .iter()
        .enumerate()
        .map(|(i, &c)| binomial(c, i as u64 + 1))
        .sum())
}

fn log2_exact(v: usize, what: &str) -> Result<u32> {
    if v == 0 || !v.is_power_of_two() {
        return Err(Error::invalid(format!("{what} must be a power of two, got {v}")));
    }
    Ok(v.trailing_zeros())
}

/// Spatial modulation: one SA and one of its elements are activated and
/// carry one constellation symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SmConfig {
    /// Transmit SAs (`Mt * Nt`).
    pub num_sas: usize,
    pub q: usize,
    pub constellation_order: usize,
}

/// `log2(Mt Nt) + log2(q^2) + log2 |X|`.
pub fn sm_bit_count(cfg: &SmConfig) -> Result<u32> {
    Ok(log2_exact(cfg.num_sas, "SA count")?
        + log2_exact(cfg.q * cfg.q, "elements per SA")?
        + log2_exact(cfg.constellation_order, "constellation order")?)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmSymbol {
    pub sa_index: usize,
    pub ae_index: usize,
    pub label: usize,
    pub point: Complex64,
}

fn split(bits: &[bool], sizes: &[u32]) -> Vec<u64> {
    let mut at = 0;
    sizes
        .iter()
        .map(|&n| {
            let v = bits_to_u64(&bits[at..at + n as usize]);
            at += n as usize;
            v
        })
        .collect()
}

/// Maps SA bits, element bits and symbol bits, in that order.
pub fn sm_map(cfg: &SmConfig, bits: &[bool]) -> Result<SmSymbol> {
    let total = sm_bit_count(cfg)?;
    if bits.len() != total as usize {
        return Err(Error::invalid(format!("SM needs {total} bits, got {}", bits.len())));
    }
    let sizes = [
        cfg.num_sas.trailing_zeros(),
        (cfg.q * cfg.q).trailing_zeros(),
        cfg.constellation_order.trailing_zeros(),
    ];
    let f = split(bits, &sizes);
    let c = Constellation::qam(cfg.constellation_order)?;
    let label = f[2] as usize;
    Ok(SmSymbol {
        sa_index: f[0] as usize,
        ae_index: f[1] as usize,
        label,
        point: c.points()[label],
    })
}

pub fn sm_demap(cfg: &SmConfig, sym: &SmSymbol) -> Result<Vec<bool>> {
    sm_bit_count(cfg)?;
    if sym.sa_index >= cfg.num_sas || sym.ae_index >= cfg.q * cfg.q || sym.label >= cfg.constellation_order {
        return Err(Error::invalid("SM symbol indices out of range"));
    }
    let mut bits = u64_to_bits(sym.sa_index as u64, cfg.num_sas.trailing_zeros() as usize);
    bits.extend(u64_to_bits(sym.ae_index as u64, (cfg.q * cfg.q).trailing_zeros() as usize));
    bits.extend(u64_to_bits(sym.label as u64, cfg.constellation_order.trailing_zeros() as usize));
    Ok(bits)
}

/// Which way round the antenna binomial is read. `Standard` is
/// `C(total, active)`; `AsPrinted` is `C(active, total)`, which is only
/// nonzero when every antenna is active.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BinomialReading {
    #[default]
    Standard,
    AsPrinted,
}

/// Generalized index modulation over frequency bands and antennas.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GimConfig {
    pub total_bands: u64,
    pub active_bands: u64,
    pub total_antennas: u64,
    pub active_antennas: u64,
    pub constellation_order: usize,
    #[serde(default)]
    pub antenna_reading: BinomialReading,
}

impl GimConfig {
    fn antenna_binomial_args(&self) -> (u64, u64) {
        match self.antenna_reading {
            BinomialReading::Standard => (self.total_antennas, self.active_antennas),
            BinomialReading::AsPrinted => (self.active_antennas, self.total_antennas),
        }
    }

    fn field_sizes(&self) -> Result<[u32; 3]> {
        let (n, k) = self.antenna_binomial_args();
        Ok([
            floor_log2_binomial(self.total_bands, self.active_bands)?,
            floor_log2_binomial(n, k)?,
            log2_exact(self.constellation_order, "constellation order")?,
        ])
    }
}

/// `floor(log2 C(F, F_active)) + floor(log2 C(antenna term)) + log2 |X|`.
pub fn gim_bit_count(cfg: &GimConfig) -> Result<u32> {
    Ok(cfg.field_sizes()?.iter().sum())
}

#[derive(Debug, Clone, PartialEq)]
pub struct GimSymbol {
    pub bands: Vec<u64>,
    pub antennas: Vec<u64>,
    pub label: usize,
    pub point: Complex64,
}

fn bits_to_big(bits: &[bool]) -> BigUint {
    let mut v = BigUint::ZERO;
    for (i, &b) in bits.iter().enumerate() {
        if b {
            v.set_bit(i as u64, true);
        }
    }
    v
}

fn big_to_bits(v: &BigUint, n: u32) -> Vec<bool> {
    (0..n as u64).map(|i| v.bit(i)).collect()
}

/// Maps band-index bits, antenna-index bits and symbol bits, in that order.
pub fn gim_map(cfg: &GimConfig, bits: &[bool]) -> Result<GimSymbol> {
    let sizes = cfg.field_sizes()?;
    let total: u32 = sizes.iter().sum();
    if bits.len() != total as usize {
        return Err(Error::invalid(format!("GIM needs {total} bits, got {}", bits.len())));
    }
    let (a, rest) = bits.split_at(sizes[0] as usize);
    let (b, c) = rest.split_at(sizes[1] as usize);
    let (n, k) = cfg.antenna_binomial_args();
    let label = bits_to_u64(c) as usize;
    let x = Constellation::qam(cfg.constellation_order)?;
    Ok(GimSymbol {
        bands: unrank_combination(cfg.total_bands, cfg.active_bands, &bits_to_big(a))?,
        antennas: unrank_combination(n, k, &bits_to_big(b))?,
        label,
        point: x.points()[label],
    })
}

pub fn gim_demap(cfg: &GimConfig, sym: &GimSymbol) -> Result<Vec<bool>> {
    let sizes = cfg.field_sizes()?;
    let (n, _) = cfg.antenna_binomial_args();
    let rb = rank_combination(cfg.total_bands, &sym.bands)?;
    let ra = rank_combination(n, &sym.antennas)?;
    if rb.bits() > sizes[0] as u64 || ra.bits() > sizes[1] as u64 || sym.label >= cfg.constellation_order {
        return Err(Error::invalid("GIM symbol outside the mapped index range"));
    }
    let mut bits = big_to_bits(&rb, sizes[0]);
    bits.extend(big_to_bits(&ra, sizes[1]));
    bits.extend(u64_to_bits(sym.label as u64, sizes[2] as usize));
    Ok(bits)
}
