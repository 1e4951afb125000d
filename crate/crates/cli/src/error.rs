use std::fmt;

use fockop_core::Error;

/// A failure with its exit status: 2 for bad input, 1 for internal errors.
#[derive(Debug)]
pub struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError {
            code: 2,
            message: format!("error: {}", message.into()),
        }
    }

    pub fn internal(message: impl Into<String>) -> Self {
        CliError {
            code: 1,
            message: format!("internal error: {}", message.into()),
        }
    }

    pub fn code(&self) -> u8 {
        self.code
    }

    /// Core error raised while reading `text` (given as `label`); parse
    /// errors get the offending text with a caret under the position.
    pub fn in_text(err: Error, label: &str, text: &str) -> Self {
        match err {
            Error::Parse { position, message } => {
                let column = text.get(..position).map_or(position, |p| p.chars().count());
                CliError::input(format!(
                    "{label}: parse error at position {position}: {message}\n  {text}\n  {}^",
                    " ".repeat(column)
                ))
            }
            other => CliError::from(other).prefixed(label),
        }
    }

    fn prefixed(mut self, label: &str) -> Self {
        if let Some(rest) = self.message.strip_prefix("error: ") {
            self.message = format!("error: {label}: {rest}");
        }
        self
    }
}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        if err.is_input_error() {
            CliError::input(err.to_string())
        } else {
            CliError::internal(err.to_string())
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}
