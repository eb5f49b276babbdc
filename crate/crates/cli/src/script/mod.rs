//! The script language: lexer, syntax tree and parser.

pub mod ast;
pub mod lexer;
pub mod parser;

#[cfg(test)]
mod tests;

pub use ast::*;
pub use lexer::{ParseError, Pos};
pub use parser::parse;
