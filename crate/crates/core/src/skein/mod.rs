//! Planar diagram evaluation in the cabled Temperley-Lieb category.

pub mod pairing;
pub mod cabled;
pub mod oracle;
pub mod poly;
pub mod scalar;
pub mod sweep;
pub mod tlmor;
