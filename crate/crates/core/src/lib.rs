pub mod analyzer;
pub mod bases;
pub mod basis;
pub mod nonrel;
pub mod scalar;
pub mod weakrel;

#[cfg(feature = "oracle")]
pub mod oracle;
