//! Parameter parsing and the error type that decides the exit status.

use std::str::FromStr;

use thiserror::Error;

/// Failures of a run, each mapped to an exit status.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid value for --{key}: {message}")]
    Config { key: String, message: String },
    #[error("{context}: {source}")]
    Domain {
        context: String,
        #[source]
        source: ssot_core::Error,
    },
}

impl CliError {
    pub fn config(key: &str, message: impl Into<String>) -> Self {
        Self::Config {
            key: key.to_string(),
            message: message.into(),
        }
    }

    pub fn domain(context: impl Into<String>, source: ssot_core::Error) -> Self {
        Self::Domain {
            context: context.into(),
            source,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Config { .. } => 2,
            Self::Domain { .. } => 3,
        }
    }
}

/// Inclusive, evenly spaced values `start:stop:count`, or a single number.
#[derive(Debug, Clone, PartialEq)]
pub struct Range {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl Range {
    pub fn single(x: f64) -> Self {
        Self {
            start: x,
            stop: x,
            count: 1,
        }
    }

    pub fn values(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.start];
        }
        let step = (self.stop - self.start) / (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                if i == self.count - 1 {
                    self.stop
                } else {
                    self.start + step * i as f64
                }
            })
            .collect()
    }

    pub fn is_single(&self) -> bool {
        self.count == 1
    }
}

impl FromStr for Range {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |p: &str| -> Result<f64, String> {
            let x: f64 = p
                .trim()
                .parse()
                .map_err(|_| format!("'{p}' is not a number"))?;
            if x.is_finite() {
                Ok(x)
            } else {
                Err(format!("'{p}' is not finite"))
            }
        };
        match parts.as_slice() {
            [x] => Ok(Self::single(num(x)?)),
            [a, b, n] => {
                let count: usize = n
                    .trim()
                    .parse()
                    .map_err(|_| format!("count '{n}' is not a nonnegative integer"))?;
                if count == 0 {
                    return Err("count must be at least 1".into());
                }
                Ok(Self {
                    start: num(a)?,
                    stop: num(b)?,
                    count,
                })
            }
            _ => Err(format!("expected a number or start:stop:count, got '{s}'")),
        }
    }
}

/// Rejects a sweep for a parameter that only takes one value.
pub fn single_value(key: &str, range: &Range) -> Result<f64, CliError> {
    if range.is_single() {
        Ok(range.start)
    } else {
        Err(CliError::config(
            key,
            "expected a single value, not a range",
        ))
    }
}

/// Reads the optional `SSOT_THREADS` cap.
pub fn thread_cap(raw: Option<String>) -> Result<Option<usize>, CliError> {
    match raw {
        None => Ok(None),
        Some(s) => match s.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(Some(n)),
            _ => Err(CliError::config(
                "SSOT_THREADS",
                format!("expected a positive integer, got '{s}'"),
            )),
        },
    }
}
