use super::ParseError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Top,
    Bot,
    And,
    Or,
    Impl,
    Excl,
    Turnstile,
    Bang,
    Tilde,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Colon,
    Gt,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Top => "`T`".into(),
            Tok::Bot => "`F`".into(),
            Tok::And => "`&`".into(),
            Tok::Or => "`|`".into(),
            Tok::Impl => "`->`".into(),
            Tok::Excl => "`-<`".into(),
            Tok::Turnstile => "`|-`".into(),
            Tok::Bang => "`!`".into(),
            Tok::Tilde => "`~`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Gt => "`>`".into(),
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Spanned {
    pub tok: Tok,
    pub pos: usize,
}

pub(crate) fn tokenize(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let pos = i;
        let single = |tok| Spanned { tok, pos };
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'a'..=b'z' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push(Spanned {
                    tok: Tok::Ident(text[start..i].to_string()),
                    pos,
                });
                continue;
            }
            b'T' | b'F' => {
                if bytes
                    .get(i + 1)
                    .is_some_and(|b| b.is_ascii_alphanumeric() || *b == b'_')
                {
                    return Err(ParseError::InvalidChar { pos, ch: c as char });
                }
                out.push(single(if c == b'T' { Tok::Top } else { Tok::Bot }));
            }
            b'&' => out.push(single(Tok::And)),
            b'|' => {
                if bytes.get(i + 1) == Some(&b'-') {
                    out.push(single(Tok::Turnstile));
                    i += 1;
                } else {
                    out.push(single(Tok::Or));
                }
            }
            b'-' => match bytes.get(i + 1) {
                Some(b'>') => {
                    out.push(single(Tok::Impl));
                    i += 1;
                }
                Some(b'<') => {
                    out.push(single(Tok::Excl));
                    i += 1;
                }
                _ => return Err(ParseError::InvalidChar { pos, ch: '-' }),
            },
            b'!' => out.push(single(Tok::Bang)),
            b'~' => out.push(single(Tok::Tilde)),
            b'(' => out.push(single(Tok::LParen)),
            b')' => out.push(single(Tok::RParen)),
            b'[' => out.push(single(Tok::LBracket)),
            b']' => out.push(single(Tok::RBracket)),
            b',' => out.push(single(Tok::Comma)),
            b':' => out.push(single(Tok::Colon)),
            b'>' => out.push(single(Tok::Gt)),
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(ParseError::InvalidChar { pos, ch });
            }
        }
        i += 1;
    }
    Ok(out)
}
