//! Token stream for the declaration parser. Comments and whitespace are
//! dropped; string, char and numeric literals collapse into one opaque token.

use alloc::vec::Vec;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Tok<'a> {
    Ident(&'a str),
    Punct(char),
    Literal,
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Token<'a> {
    pub tok: Tok<'a>,
    pub line: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct LexError {
    pub line: u32,
    pub message: &'static str,
}

fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_' || c == '$'
}

fn is_ident_part(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '$'
}

pub(crate) fn tokenize(src: &str) -> Result<Vec<Token<'_>>, LexError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut line = 1u32;
    let mut i = 0usize;

    while i < src.len() {
        let c = src[i..].chars().next().unwrap();
        let len = c.len_utf8();
        match c {
            '\n' => {
                line += 1;
                i += 1;
            }
            c if c.is_whitespace() => i += len,
            '/' if bytes.get(i + 1) == Some(&b'/') => {
                while i < src.len() && bytes[i] != b'\n' {
                    i += 1;
                }
            }
            '/' if bytes.get(i + 1) == Some(&b'*') => {
                let start = line;
                i += 2;
                loop {
                    if i + 1 >= src.len() {
                        return Err(LexError {
                            line: start,
                            message: "unterminated block comment",
                        });
                    }
                    if bytes[i] == b'*' && bytes[i + 1] == b'/' {
                        i += 2;
                        break;
                    }
                    if bytes[i] == b'\n' {
                        line += 1;
                    }
                    i += 1;
                }
            }
            '"' if src[i..].starts_with("\"\"\"") => {
                let start = line;
                i += 3;
                loop {
                    if i >= src.len() {
                        return Err(LexError {
                            line: start,
                            message: "unterminated text block",
                        });
                    }
                    match bytes[i] {
                        b'\\' => i += 2,
                        b'"' if src[i..].starts_with("\"\"\"") => {
                            i += 3;
                            break;
                        }
                        b'\n' => {
                            line += 1;
                            i += 1;
                        }
                        _ => i += 1,
                    }
                }
                out.push(Token {
                    tok: Tok::Literal,
                    line: start,
                });
            }
            '"' | '\'' => {
                let quote = c as u8;
                let start = line;
                i += 1;
                loop {
                    match bytes.get(i) {
                        None | Some(b'\n') => {
                            return Err(LexError {
                                line: start,
                                message: "unterminated literal",
                            })
                        }
                        Some(b'\\') => i += 2,
                        Some(&b) if b == quote => {
                            i += 1;
                            break;
                        }
                        Some(_) => i += 1,
                    }
                }
                out.push(Token {
                    tok: Tok::Literal,
                    line: start,
                });
            }
            c if c.is_ascii_digit() => {
                // Digits, hex, exponents, suffixes and underscores; a `.`
                // followed by a digit continues a decimal literal.
                let hex = src[i..].starts_with("0x") || src[i..].starts_with("0X");
                while i < src.len() {
                    let b = bytes[i];
                    let exp_sign = (b == b'+' || b == b'-')
                        && if hex {
                            matches!(bytes[i - 1], b'p' | b'P')
                        } else {
                            matches!(bytes[i - 1], b'e' | b'E')
                        };
                    // a lone `.` covers `1.` and `1.f`; `..` ends the literal
                    let dot = b == b'.' && bytes.get(i + 1) != Some(&b'.');
                    if b.is_ascii_alphanumeric() || b == b'_' || exp_sign || dot {
                        i += 1;
                    } else {
                        break;
                    }
                }
                out.push(Token {
                    tok: Tok::Literal,
                    line,
                });
            }
            c if is_ident_start(c) => {
                let start = i;
                while let Some(n) = src[i..].chars().next() {
                    if !is_ident_part(n) {
                        break;
                    }
                    i += n.len_utf8();
                }
                out.push(Token {
                    tok: Tok::Ident(&src[start..i]),
                    line,
                });
            }
            _ => {
                out.push(Token {
                    tok: Tok::Punct(c),
                    line,
                });
                i += len;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(src: &str) -> Vec<Tok<'_>> {
        tokenize(src).unwrap().into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn comments_and_literals() {
        let t = toks("a /* x { */ b // }\n \"}\" '{' 1.5e-3 c");
        assert_eq!(
            t,
            [
                Tok::Ident("a"),
                Tok::Ident("b"),
                Tok::Literal,
                Tok::Literal,
                Tok::Literal,
                Tok::Ident("c")
            ]
        );
    }

    #[test]
    fn line_numbers() {
        let t = tokenize("a\n/*\n\n*/b\n\"\"\"\nx\n\"\"\" c").unwrap();
        let lines: Vec<u32> = t.iter().map(|t| t.line).collect();
        assert_eq!(lines, [1, 4, 5, 7]);
    }

    #[test]
    fn varargs_is_three_dots() {
        assert_eq!(
            toks("String... a"),
            [
                Tok::Ident("String"),
                Tok::Punct('.'),
                Tok::Punct('.'),
                Tok::Punct('.'),
                Tok::Ident("a")
            ]
        );
    }

    #[test]
    fn unterminated() {
        assert!(tokenize("/* open").is_err());
        assert!(tokenize("\"abc\nx").is_err());
    }
}
