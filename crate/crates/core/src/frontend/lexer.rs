//! Java tokenizer.
//!
//! `>` is always emitted as a single token carrying a `joined` flag when the
//! next character follows without whitespace; the expression parser glues
//! `>>`, `>>>`, `>=`, `>>=` and `>>>=` back together so that nested generic
//! closers never need re-lexing.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenKind {
    Ident,
    Keyword,
    IntLiteral,
    FloatLiteral,
    CharLiteral,
    StringLiteral,
    TextBlock,
    Op,
    Eof,
}

#[derive(Debug, Clone)]
pub struct Token {
    pub kind: TokenKind,
    pub text: String,
    pub line: usize,
    /// True when the following token starts immediately after this one.
    pub joined: bool,
}

impl Token {
    pub fn is(&self, text: &str) -> bool {
        matches!(self.kind, TokenKind::Op | TokenKind::Keyword) && self.text == text
    }
}

const KEYWORDS: &[&str] = &[
    "abstract", "assert", "boolean", "break", "byte", "case", "catch", "char", "class", "const",
    "continue", "default", "do", "double", "else", "enum", "extends", "final", "finally", "float",
    "for", "goto", "if", "implements", "import", "instanceof", "int", "interface", "long",
    "native", "new", "package", "private", "protected", "public", "return", "short", "static",
    "strictfp", "super", "switch", "synchronized", "this", "throw", "throws", "transient", "try",
    "void", "volatile", "while", "true", "false", "null",
];

// Longest first within each leading character.
const OPERATORS: &[&str] = &[
    "<<=", "...", "->", "::", "++", "--", "&&", "||", "==", "!=", "<=", "+=", "-=", "*=", "/=",
    "&=", "|=", "^=", "%=", "<<", "(", ")", "{", "}", "[", "]", ";", ",", ".", "@", "=", "<",
    "!", "~", "?", ":", "+", "-", "*", "/", "&", "|", "^", "%",
];

pub fn tokenize(source: &str, path: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = source.chars().collect();
    let mut tokens: Vec<Token> = Vec::new();
    let mut i = 0;
    let mut line = 1;

    let err = |line: usize, message: String| Error::Parse {
        path: path.to_string(),
        line,
        message,
    };

    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            line += 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() || c == '\u{feff}' {
            i += 1;
            continue;
        }
        // Comments are normally stripped beforehand; skip any that remain.
        if c == '/' && chars.get(i + 1) == Some(&'/') {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        if c == '/' && chars.get(i + 1) == Some(&'*') {
            let start = line;
            i += 2;
            loop {
                if i + 1 >= chars.len() {
                    return Err(err(start, "unterminated block comment".into()));
                }
                if chars[i] == '*' && chars[i + 1] == '/' {
                    i += 2;
                    break;
                }
                if chars[i] == '\n' {
                    line += 1;
                }
                i += 1;
            }
            continue;
        }

        let start = i;
        let start_line = line;
        let kind;
        if c.is_alphabetic() || c == '_' || c == '$' {
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '$')
            {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            kind = if KEYWORDS.contains(&word.as_str()) {
                TokenKind::Keyword
            } else {
                TokenKind::Ident
            };
        } else if c.is_ascii_digit() || (c == '.' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit())) {
            kind = lex_number(&chars, &mut i);
        } else if c == '"' && chars.get(i + 1) == Some(&'"') && chars.get(i + 2) == Some(&'"') {
            i += 3;
            loop {
                if i >= chars.len() {
                    return Err(err(start_line, "unterminated text block".into()));
                }
                if chars[i] == '\\' {
                    i += 2;
                    continue;
                }
                if chars[i] == '\n' {
                    line += 1;
                }
                if chars[i] == '"' && chars.get(i + 1) == Some(&'"') && chars.get(i + 2) == Some(&'"') {
                    i += 3;
                    break;
                }
                i += 1;
            }
            kind = TokenKind::TextBlock;
        } else if c == '"' || c == '\'' {
            i += 1;
            loop {
                match chars.get(i) {
                    None | Some('\n') => {
                        return Err(err(start_line, "unterminated literal".into()));
                    }
                    Some('\\') => i += 2,
                    Some(&q) if q == c => {
                        i += 1;
                        break;
                    }
                    _ => i += 1,
                }
            }
            kind = if c == '"' {
                TokenKind::StringLiteral
            } else {
                TokenKind::CharLiteral
            };
        } else if c == '>' {
            i += 1;
            kind = TokenKind::Op;
        } else {
            let rest = &chars[i..];
            let op = OPERATORS
                .iter()
                .find(|op| rest.len() >= op.len() && rest[..op.len()].iter().copied().eq(op.chars()))
                .ok_or_else(|| err(line, format!("unexpected character `{c}`")))?;
            i += op.len();
            kind = TokenKind::Op;
        }

        tokens.push(Token {
            kind,
            text: chars[start..i].iter().collect(),
            line: start_line,
            joined: chars.get(i).is_some_and(|n| !n.is_whitespace()),
        });
    }
    tokens.push(Token {
        kind: TokenKind::Eof,
        text: String::new(),
        line,
        joined: false,
    });
    Ok(tokens)
}

fn lex_number(chars: &[char], i: &mut usize) -> TokenKind {
    let at = |k: usize| chars.get(k).copied().unwrap_or('\0');
    let mut float = false;
    if at(*i) == '0' && matches!(at(*i + 1), 'x' | 'X') {
        *i += 2;
        while at(*i).is_ascii_hexdigit() || at(*i) == '_' {
            *i += 1;
        }
        if at(*i) == '.' {
            float = true;
            *i += 1;
            while at(*i).is_ascii_hexdigit() || at(*i) == '_' {
                *i += 1;
            }
        }
        if matches!(at(*i), 'p' | 'P') {
            float = true;
            *i += 1;
            if matches!(at(*i), '+' | '-') {
                *i += 1;
            }
            while at(*i).is_ascii_digit() {
                *i += 1;
            }
        }
    } else if at(*i) == '0' && matches!(at(*i + 1), 'b' | 'B') {
        *i += 2;
        while matches!(at(*i), '0' | '1' | '_') {
            *i += 1;
        }
    } else {
        while at(*i).is_ascii_digit() || at(*i) == '_' {
            *i += 1;
        }
        if at(*i) == '.' && !at(*i + 1).is_alphabetic() && at(*i + 1) != '.' {
            float = true;
            *i += 1;
            while at(*i).is_ascii_digit() || at(*i) == '_' {
                *i += 1;
            }
        }
        if matches!(at(*i), 'e' | 'E') {
            float = true;
            *i += 1;
            if matches!(at(*i), '+' | '-') {
                *i += 1;
            }
            while at(*i).is_ascii_digit() {
                *i += 1;
            }
        }
    }
    match at(*i) {
        'l' | 'L' => *i += 1,
        'f' | 'F' | 'd' | 'D' => {
            float = true;
            *i += 1;
        }
        _ => {}
    }
    if float {
        TokenKind::FloatLiteral
    } else {
        TokenKind::IntLiteral
    }
}
