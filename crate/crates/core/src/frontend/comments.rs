use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq)]
enum State {
    Code,
    LineComment,
    BlockComment,
    Str,
    TextBlock,
    Char,
}

/// Blank out `//` and `/* */` comments.
///
/// Every comment character becomes a space except newlines, which are kept,
/// so each remaining token stays on its original line and column. String,
/// text-block and character literals pass through untouched.
pub fn strip_comments(source: &str) -> Result<String> {
    let chars: Vec<char> = source.chars().collect();
    let mut out = String::with_capacity(source.len());
    let mut state = State::Code;
    let mut line = 1usize;
    let mut comment_line = 0usize;
    let mut i = 0;

    while i < chars.len() {
        let c = chars[i];
        let next = chars.get(i + 1).copied();
        match state {
            State::Code => match (c, next) {
                ('/', Some('/')) => {
                    state = State::LineComment;
                    out.push_str("  ");
                    i += 2;
                    continue;
                }
                ('/', Some('*')) => {
                    state = State::BlockComment;
                    comment_line = line;
                    out.push_str("  ");
                    i += 2;
                    continue;
                }
                ('"', _) if next == Some('"') && chars.get(i + 2) == Some(&'"') => {
                    state = State::TextBlock;
                    out.push_str("\"\"\"");
                    i += 3;
                    continue;
                }
                ('"', _) => state = State::Str,
                ('\'', _) => state = State::Char,
                _ => {}
            },
            State::LineComment => {
                if c == '\n' {
                    state = State::Code;
                } else {
                    out.push(if c == '\r' { '\r' } else { ' ' });
                    i += 1;
                    continue;
                }
            }
            State::BlockComment => {
                if c == '*' && next == Some('/') {
                    state = State::Code;
                    out.push_str("  ");
                    i += 2;
                    continue;
                }
                if c != '\n' && c != '\r' {
                    out.push(' ');
                    i += 1;
                    continue;
                }
            }
            State::Str | State::Char => {
                let quote = if state == State::Str { '"' } else { '\'' };
                if c == '\\' {
                    out.push(c);
                    if let Some(n) = next {
                        out.push(n);
                        if n == '\n' {
                            line += 1;
                        }
                    }
                    i += 2;
                    continue;
                }
                // An unterminated literal ends at the line break; the parser
                // reports it.
                if c == quote || c == '\n' {
                    state = State::Code;
                }
            }
            State::TextBlock => {
                if c == '\\' {
                    out.push(c);
                    if let Some(n) = next {
                        out.push(n);
                        if n == '\n' {
                            line += 1;
                        }
                    }
                    i += 2;
                    continue;
                }
                if c == '"' && next == Some('"') && chars.get(i + 2) == Some(&'"') {
                    state = State::Code;
                    out.push_str("\"\"\"");
                    i += 3;
                    continue;
                }
            }
        }
        if c == '\n' {
            line += 1;
        }
        out.push(c);
        i += 1;
    }

    if state == State::BlockComment {
        return Err(Error::Parse {
            path: String::new(),
            line: comment_line,
            message: "unterminated block comment".into(),
        });
    }
    Ok(out)
}
