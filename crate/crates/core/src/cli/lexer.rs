//! Tokens of the problem-file language. Newlines are significant.

use num_bigint::BigInt;

use super::{Located, ParseError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Number(BigInt),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Eq,
    Ge,
    Star,
    Caret,
    Plus,
    Minus,
    Newline,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Number(n) => format!("number {n}"),
            Tok::Newline => "end of line".to_string(),
            other => format!("`{}`", other.symbol()),
        }
    }

    fn symbol(&self) -> &'static str {
        match self {
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBracket => "[",
            Tok::RBracket => "]",
            Tok::Comma => ",",
            Tok::Semi => ";",
            Tok::Eq => "=",
            Tok::Ge => ">=",
            Tok::Star => "*",
            Tok::Caret => "^",
            Tok::Plus => "+",
            Tok::Minus => "-",
            _ => "",
        }
    }
}

pub fn tokenize(text: &str) -> Result<Vec<Located<Tok>>, ParseError> {
    let mut out = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let line_no = ln + 1;
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let col = i + 1;
            let at = |tok| Located { value: tok, line: line_no, column: col };
            match c {
                '#' => break,
                c if c.is_whitespace() => i += 1,
                c if c.is_ascii_digit() => {
                    let start = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    let s: String = chars[start..i].iter().collect();
                    out.push(at(Tok::Number(s.parse().expect("digits"))));
                }
                c if c.is_ascii_alphabetic() || c == '_' => {
                    let start = i;
                    while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                        i += 1;
                    }
                    out.push(at(Tok::Ident(chars[start..i].iter().collect())));
                }
                '>' if chars.get(i + 1) == Some(&'=') => {
                    out.push(at(Tok::Ge));
                    i += 2;
                }
                _ => {
                    let tok = match c {
                        '(' => Tok::LParen,
                        ')' => Tok::RParen,
                        '[' => Tok::LBracket,
                        ']' => Tok::RBracket,
                        ',' => Tok::Comma,
                        ';' => Tok::Semi,
                        '=' => Tok::Eq,
                        '*' => Tok::Star,
                        '^' => Tok::Caret,
                        '+' => Tok::Plus,
                        '-' => Tok::Minus,
                        other => {
                            return Err(ParseError::lexical(line_no, col, format!("unexpected character `{other}`")))
                        }
                    };
                    out.push(at(tok));
                    i += 1;
                }
            }
        }
        out.push(Located {
            value: Tok::Newline,
            line: line_no,
            column: chars.len() + 1,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokens_and_positions() {
        let t = tokenize("ring Z # comment\nmodule M = coker [[12]]").unwrap();
        assert_eq!(t[0].value, Tok::Ident("ring".into()));
        assert_eq!(t[2].value, Tok::Newline);
        assert_eq!((t[7].line, t[7].column), (2, 18));
        assert_eq!(t[7].value, Tok::LBracket);
    }

    #[test]
    fn bad_character() {
        let e = tokenize("ring Z\nmodule M = $").unwrap_err();
        assert_eq!((e.line, e.column), (2, 12));
    }
}
