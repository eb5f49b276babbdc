use std::fmt;

/// 1-based line and column (in characters) of a point in a script.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.col)
    }
}

impl Pos {
    /// Position reached after reading `text` from here.
    pub fn advance(self, text: &str) -> Pos {
        let mut p = self;
        for c in text.chars() {
            if c == '\n' {
                p.line += 1;
                p.col = 1;
            } else {
                p.col += 1;
            }
        }
        p
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub pos: Pos,
    pub msg: String,
}

impl ParseError {
    pub fn new(pos: Pos, msg: impl Into<String>) -> Self {
        ParseError { pos, msg: msg.into() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.pos, self.msg)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(u64),
    Str(String),
    Punct(&'static str),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Str(s) => write!(f, "{s:?}"),
            Tok::Punct(p) => write!(f, "`{p}`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub pos: Pos,
    /// Byte range in the source.
    pub start: usize,
    pub end: usize,
    /// Whitespace or a comment precedes the token.
    pub spaced: bool,
}

const PUNCTS: [&str; 17] = ["..", "(", ")", "[", "]", "{", "}", ",", ";", "=", "/", "*", "+", "-", "^", ":", "."];

/// Splits a script into tokens. Comments run from `#` or `//` to the end of
/// the line.
pub fn lex(src: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let mut pos = Pos { line: 1, col: 1 };
    let mut i = 0;
    let mut spaced = true;
    let bytes = src.as_bytes();
    while i < src.len() {
        let rest = &src[i..];
        let c = rest.chars().next().unwrap();
        if c.is_whitespace() {
            pos = pos.advance(&rest[..c.len_utf8()]);
            i += c.len_utf8();
            spaced = true;
            continue;
        }
        if c == '#' || rest.starts_with("//") {
            let n = rest.find('\n').unwrap_or(rest.len());
            pos = pos.advance(&rest[..n]);
            i += n;
            spaced = true;
            continue;
        }
        let start = i;
        let tok = if c.is_ascii_alphabetic() || c == '_' {
            let n = rest
                .find(|ch: char| !(ch.is_ascii_alphanumeric() || ch == '_' || ch == '\''))
                .unwrap_or(rest.len());
            Tok::Ident(rest[..n].to_string())
        } else if c.is_ascii_digit() {
            let n = rest.find(|ch: char| !ch.is_ascii_digit()).unwrap_or(rest.len());
            let v = rest[..n].parse().map_err(|_| ParseError::new(pos, "integer literal too large"))?;
            Tok::Int(v)
        } else if c == '"' {
            let mut j = 1;
            let mut s = String::new();
            loop {
                match rest[j..].chars().next() {
                    None | Some('\n') => return Err(ParseError::new(pos, "unterminated string")),
                    Some('"') => {
                        j += 1;
                        break;
                    }
                    Some('\\') if bytes.get(i + j + 1) == Some(&b'"') || bytes.get(i + j + 1) == Some(&b'\\') => {
                        s.push(bytes[i + j + 1] as char);
                        j += 2;
                    }
                    Some(ch) => {
                        s.push(ch);
                        j += ch.len_utf8();
                    }
                }
            }
            let token = Token { tok: Tok::Str(s), pos, start, end: i + j, spaced };
            pos = pos.advance(&rest[..j]);
            i += j;
            out.push(token);
            spaced = false;
            continue;
        } else if let Some(p) = PUNCTS.iter().find(|p| rest.starts_with(**p)) {
            Tok::Punct(p)
        } else {
            return Err(ParseError::new(pos, format!("unexpected character `{c}`")));
        };
        let len = match &tok {
            Tok::Ident(s) => s.len(),
            Tok::Punct(p) => p.len(),
            _ => rest.find(|ch: char| !ch.is_ascii_digit()).unwrap_or(rest.len()),
        };
        out.push(Token { tok, pos, start, end: i + len, spaced });
        pos = pos.advance(&rest[..len]);
        i += len;
        spaced = false;
    }
    out.push(Token { tok: Tok::Eof, pos, start: src.len(), end: src.len(), spaced });
    Ok(out)
}
