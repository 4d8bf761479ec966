use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] kspack::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Input(String),
    #[error("config: {0}")]
    Config(#[from] toml::de::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("no benchmark row succeeded")]
    AllRowsFailed { resource_limited: bool },
}

impl CliError {
    /// 3 for resource caps, 2 for everything else.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_resource_limit() => 3,
            CliError::AllRowsFailed {
                resource_limited: true,
            } => 3,
            _ => 2,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub fn read(path: &std::path::Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

pub fn write(path: &std::path::Path, contents: &str) -> CliResult<()> {
    std::fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}
