use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Input(String),
    #[error("{}", core_message(.0))]
    Core(#[from] edgecsp::Error),
}

impl CliError {
    /// 3 for refusals to run exponential search, 2 for everything else.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(edgecsp::Error::Intractable | edgecsp::Error::OpenListRegime) => 3,
            _ => 2,
        }
    }
}

/// Refusals name the flag that lifts them.
fn core_message(e: &edgecsp::Error) -> String {
    match e {
        edgecsp::Error::Intractable => "template NP-complete; pass --oracle".into(),
        edgecsp::Error::OpenListRegime => {
            "lists fall outside the known polynomial cases for this template; pass --oracle".into()
        }
        other => other.to_string(),
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
