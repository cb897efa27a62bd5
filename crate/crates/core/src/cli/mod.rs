//! Problem files, command dispatch and report rendering for the `coprime`
//! binary.

pub mod execute;
pub mod lexer;
pub mod parser;
pub mod problem;
pub mod render;

use std::fmt;

use serde_json::{json, Value};

pub use execute::{execute_command, Command, CommandOptions, Outcome};
pub use parser::parse_problem;
pub use problem::ProblemFile;

/// Version of the JSON report layout; bumped on incompatible changes.
pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 1;
pub const EXIT_UNSUPPORTED: i32 = 2;
pub const EXIT_VERIFICATION: i32 = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Located<T> {
    pub value: T,
    pub line: usize,
    pub column: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorClass {
    Lexical,
    Syntax,
    Semantic,
}

impl ErrorClass {
    pub fn as_str(self) -> &'static str {
        match self {
            ErrorClass::Lexical => "lexical",
            ErrorClass::Syntax => "syntax",
            ErrorClass::Semantic => "semantic",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub class: ErrorClass,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn lexical(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            class: ErrorClass::Lexical,
            line,
            column,
            message: message.into(),
        }
    }

    pub fn syntax(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            class: ErrorClass::Syntax,
            line,
            column,
            message: message.into(),
        }
    }

    pub fn semantic(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            class: ErrorClass::Semantic,
            line,
            column,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} error at {}:{}: {}", self.class.as_str(), self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

/// A failed invocation, with the exit code it maps to.
#[derive(Clone, Debug, PartialEq)]
pub struct CliError {
    pub exit_code: i32,
    pub kind: &'static str,
    pub message: String,
    pub location: Option<(usize, usize)>,
    pub details: Option<Value>,
}

impl CliError {
    pub fn unsupported(message: impl Into<String>) -> Self {
        CliError {
            exit_code: EXIT_UNSUPPORTED,
            kind: "unsupported",
            message: message.into(),
            location: None,
            details: None,
        }
    }

    pub fn verification(message: impl Into<String>, details: Option<Value>) -> Self {
        CliError {
            exit_code: EXIT_VERIFICATION,
            kind: "verification",
            message: message.into(),
            location: None,
            details,
        }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        CliError {
            exit_code: EXIT_PARSE,
            kind: "usage",
            message: message.into(),
            location: None,
            details: None,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "error": {
                "kind": self.kind,
                "message": self.message,
                "line": self.location.map(|l| l.0),
                "column": self.location.map(|l| l.1),
                "details": self.details,
            },
            "exit_code": self.exit_code,
            "schema_version": SCHEMA_VERSION,
        })
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError {
            exit_code: EXIT_PARSE,
            kind: e.class.as_str(),
            message: e.message,
            location: Some((e.line, e.column)),
            details: None,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.location {
            Some((l, c)) => write!(f, "{} error at {l}:{c}: {}", self.kind, self.message),
            None => write!(f, "{} error: {}", self.kind, self.message),
        }
    }
}
