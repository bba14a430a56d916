//! Runtime configuration for the counting oracle and probabilistic checks.

/// Budgets and prime-selection knobs shared by the counting oracle,
/// the interpolation layer and the probabilistic certificates.
#[derive(Debug, Clone)]
pub struct Config {
    /// Hard cap on the number of finite-field points enumerated by a single
    /// counting call (grid size times number of group twists).
    pub max_enum: u128,
    /// Optional explicit list of primes to use instead of the automatic
    /// congruence-driven search.
    pub primes_override: Option<Vec<u64>>,
    /// Primes used by probabilistic isolatedness / non-degeneracy checks.
    pub probe_primes: Vec<u64>,
    /// Largest accepted common denominator of the fractional exponents
    /// appearing in a zeta function; inputs needing a finer grid are rejected.
    pub max_r: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            max_enum: 100_000_000,
            primes_override: None,
            probe_primes: vec![5, 7, 11],
            max_r: 1_000_000,
        }
    }
}

impl Config {
    /// Reads `QZETA_MAX_ENUM` and `QZETA_PRIMES` from the environment,
    /// falling back to defaults for anything unset or unparsable.
    pub fn from_env() -> Self {
        let mut cfg = Config::default();
        if let Ok(v) = std::env::var("QZETA_MAX_ENUM") {
            if let Ok(n) = v.trim().parse::<u128>() {
                cfg.max_enum = n;
            }
        }
        if let Ok(v) = std::env::var("QZETA_PRIMES") {
            let primes: Vec<u64> = v
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .filter_map(|s| s.parse().ok())
                .collect();
            if !primes.is_empty() {
                cfg.primes_override = Some(primes);
            }
        }
        cfg
    }
}
