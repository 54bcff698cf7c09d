use std::io;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("self-loop on vertex {vertex}{}", line_suffix(*.line))]
    SelfLoop { vertex: usize, line: Option<usize> },

    #[error("vertex id {id} out of range for {vertex_count} vertices{}", line_suffix(*.line))]
    VertexOutOfRange {
        id: usize,
        vertex_count: usize,
        line: Option<usize>,
    },

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("undefined for input: {0}")]
    Undefined(String),

    #[error("query set is empty")]
    EmptyQuery,

    #[error("query vertex {0} is not contained in the seed set")]
    QueryNotInSeed(usize),

    #[error("search space of {size} free vertices exceeds the cap of {cap}")]
    CapExceeded { size: usize, cap: usize },

    #[error("infeasible query parameters: {0}")]
    Infeasible(String),

    #[error("clause {clause} repeats variable {variable}")]
    RepeatedVariable { clause: usize, variable: usize },

    #[error("clause {0} is not satisfied by the assignment")]
    UnsatisfiedClause(usize),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

fn line_suffix(line: Option<usize>) -> String {
    match line {
        Some(l) => format!(" (line {l})"),
        None => String::new(),
    }
}
