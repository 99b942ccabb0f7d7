//! Enumeration caps. `DERIVEDLAB_ENUM_CAP` overrides every cap at once.

pub const DEFAULT_ENUM_CAP: u128 = 1 << 20;
pub const DEFAULT_IDEAL_CAP: u128 = 1 << 16;

fn from_env() -> Option<u128> {
    std::env::var("DERIVEDLAB_ENUM_CAP").ok()?.trim().parse().ok()
}

/// Cap on candidates for exhaustive Hom searches.
pub fn enum_cap() -> u128 {
    from_env().unwrap_or(DEFAULT_ENUM_CAP)
}

/// Cap on the algebra size for ideal enumeration and the element-wise radical.
pub fn ideal_cap() -> u128 {
    from_env().unwrap_or(DEFAULT_IDEAL_CAP)
}
