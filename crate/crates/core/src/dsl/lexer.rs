use super::{ParseError, ParseErrorKind};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    LBracket,
    RBracket,
    Semi,
    Equals,
    W,
    WStar,
    Hole,
    Name(String),
    Newline,
    Eof,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::LBracket => "'['".into(),
            Tok::RBracket => "']'".into(),
            Tok::Semi => "';'".into(),
            Tok::Equals => "'='".into(),
            Tok::W => "'w'".into(),
            Tok::WStar => "'w*'".into(),
            Tok::Hole => "'_'".into(),
            Tok::Name(n) => format!("name '{n}'"),
            Tok::Newline => "end of line".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

/// Splits source text into tokens. Newlines inside brackets are plain
/// whitespace; at bracket depth zero they terminate items.
pub(crate) fn tokenize(src: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let mut chars = src.chars().peekable();
    let (mut line, mut col) = (1usize, 1usize);
    let mut depth = 0usize;

    while let Some(&c) = chars.peek() {
        let (tl, tc) = (line, col);
        let push = |out: &mut Vec<Token>, tok| {
            out.push(Token {
                tok,
                line: tl,
                col: tc,
            })
        };
        match c {
            '\n' => {
                chars.next();
                if depth == 0 {
                    push(&mut out, Tok::Newline);
                }
                line += 1;
                col = 1;
                continue;
            }
            '#' => {
                while chars.peek().is_some_and(|&c| c != '\n') {
                    chars.next();
                    col += 1;
                }
                continue;
            }
            c if c.is_whitespace() => {
                chars.next();
                col += 1;
                continue;
            }
            '[' => {
                depth += 1;
                push(&mut out, Tok::LBracket);
            }
            ']' => {
                depth = depth.saturating_sub(1);
                push(&mut out, Tok::RBracket);
            }
            ';' => push(&mut out, Tok::Semi),
            '=' => push(&mut out, Tok::Equals),
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut word = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        word.push(c);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                let tok = match word.as_str() {
                    "w" if chars.peek() == Some(&'*') => {
                        chars.next();
                        col += 1;
                        Tok::WStar
                    }
                    "w" => Tok::W,
                    "_" => Tok::Hole,
                    _ if word.starts_with('_') => {
                        return Err(ParseError::new(tl, tc, ParseErrorKind::InvalidName(word)))
                    }
                    _ => Tok::Name(word),
                };
                push(&mut out, tok);
                continue;
            }
            other => {
                return Err(ParseError::new(
                    tl,
                    tc,
                    ParseErrorKind::UnexpectedChar(other),
                ))
            }
        }
        chars.next();
        col += 1;
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        col,
    });
    Ok(out)
}
