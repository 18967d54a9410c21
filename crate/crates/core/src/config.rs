use std::path::PathBuf;

/// Resource caps and output options shared by the library and the CLI.
///
/// Caps are configuration, not constants, so large runs can be scaled to
/// the machine. All caps count either points (degrees) or elements.
#[derive(Debug, Clone)]
pub struct Config {
    pub cache_dir: Option<PathBuf>,
    /// Largest symmetric-group degree a construction may introduce.
    pub degree_cap: usize,
    /// Largest group that may be fully enumerated element by element.
    pub enumeration_cap: usize,
    /// Largest point set a permutational product may act on.
    pub neumann_cap: usize,
    /// Largest order for which a dense multiplication table is stored.
    pub table_cap: usize,
    pub workers: usize,
    pub output: OutputMode,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputMode {
    Json,
    Human,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            cache_dir: None,
            degree_cap: 10_000,
            enumeration_cap: 100_000,
            neumann_cap: 100_000,
            table_cap: 4_096,
            workers: 1,
            output: OutputMode::Human,
        }
    }
}
