use super::lexer::{tokenize, Spanned, Tok};
use super::{Formula, ParseError};

/// Cursor over a token vector, shared by every text parser in the crate.
pub(crate) struct TokenStream {
    toks: Vec<Spanned>,
    idx: usize,
    end: usize,
}

impl TokenStream {
    pub(crate) fn new(text: &str) -> Result<Self, ParseError> {
        Ok(TokenStream {
            toks: tokenize(text)?,
            idx: 0,
            end: text.len(),
        })
    }

    pub(crate) fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.idx).map(|s| &s.tok)
    }

    pub(crate) fn pos(&self) -> usize {
        self.toks.get(self.idx).map_or(self.end, |s| s.pos)
    }

    pub(crate) fn bump(&mut self) -> Option<Spanned> {
        let t = self.toks.get(self.idx).cloned();
        if t.is_some() {
            self.idx += 1;
        }
        t
    }

    pub(crate) fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.idx += 1;
            true
        } else {
            false
        }
    }

    pub(crate) fn at_end(&self) -> bool {
        self.idx >= self.toks.len()
    }

    pub(crate) fn unexpected(&self, expected: &'static str) -> ParseError {
        match self.toks.get(self.idx) {
            Some(Spanned { tok: Tok::RParen, pos }) => ParseError::Unbalanced { pos: *pos },
            Some(s) => ParseError::Unexpected {
                pos: s.pos,
                found: s.tok.describe(),
                expected,
            },
            None => ParseError::UnexpectedEnd {
                pos: self.end,
                expected,
            },
        }
    }

    pub(crate) fn expect(&mut self, tok: &Tok, expected: &'static str) -> Result<usize, ParseError> {
        let pos = self.pos();
        if self.eat(tok) {
            Ok(pos)
        } else {
            Err(self.unexpected(expected))
        }
    }

    pub(crate) fn finish(&self) -> Result<(), ParseError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.unexpected("end of input"))
        }
    }

    pub(crate) fn ident(&mut self, expected: &'static str) -> Result<String, ParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.idx += 1;
                Ok(s)
            }
            _ => Err(self.unexpected(expected)),
        }
    }

    /// Whether the next token can begin a formula.
    pub(crate) fn starts_formula(&self) -> bool {
        matches!(
            self.peek(),
            Some(Tok::Ident(_) | Tok::Top | Tok::Bot | Tok::Bang | Tok::Tilde | Tok::LParen)
        )
    }

    // impl   := excl ('->' impl)?
    // excl   := or ('-<' or)*
    // or     := and ('|' and)*
    // and    := unary ('&' unary)*
    pub(crate) fn formula(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.excl()?;
        if self.peek() == Some(&Tok::Impl) {
            let op = self.bump().expect("peeked");
            self.operand_follows("->", op.pos)?;
            let rhs = self.formula()?;
            return Ok(Formula::imp(lhs, rhs));
        }
        Ok(lhs)
    }

    fn excl(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.or()?;
        while self.peek() == Some(&Tok::Excl) {
            let op = self.bump().expect("peeked");
            self.operand_follows("-<", op.pos)?;
            lhs = Formula::excl(lhs, self.or()?);
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.and()?;
        while self.peek() == Some(&Tok::Or) {
            let op = self.bump().expect("peeked");
            self.operand_follows("|", op.pos)?;
            lhs = Formula::or(lhs, self.and()?);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while self.peek() == Some(&Tok::And) {
            let op = self.bump().expect("peeked");
            self.operand_follows("&", op.pos)?;
            lhs = Formula::and(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn operand_follows(&self, op: &'static str, pos: usize) -> Result<(), ParseError> {
        if self.starts_formula() {
            Ok(())
        } else {
            Err(ParseError::MissingOperand { pos, op })
        }
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Ident(name)) => {
                self.idx += 1;
                Ok(Formula::Atom(name))
            }
            Some(Tok::Top) => {
                self.idx += 1;
                Ok(Formula::Top)
            }
            Some(Tok::Bot) => {
                self.idx += 1;
                Ok(Formula::Bot)
            }
            Some(Tok::Bang) => {
                self.idx += 1;
                self.operand_follows("!", pos)?;
                Ok(Formula::negation(self.unary()?))
            }
            Some(Tok::Tilde) => {
                self.idx += 1;
                self.operand_follows("~", pos)?;
                Ok(Formula::weak_neg(self.unary()?))
            }
            Some(Tok::LParen) => {
                self.idx += 1;
                let inner = self.formula()?;
                if !self.eat(&Tok::RParen) {
                    return match self.peek() {
                        None => Err(ParseError::Unbalanced { pos }),
                        Some(_) => Err(self.unexpected("`)`")),
                    };
                }
                Ok(inner)
            }
            Some(Tok::And | Tok::Or | Tok::Impl | Tok::Excl) => {
                let op = match self.peek() {
                    Some(Tok::And) => "&",
                    Some(Tok::Or) => "|",
                    Some(Tok::Impl) => "->",
                    _ => "-<",
                };
                Err(ParseError::MissingOperand { pos, op })
            }
            _ => Err(self.unexpected("a formula")),
        }
    }

    /// Comma-separated list of items, possibly empty; stops before `stop`
    /// tokens, which are not consumed.
    pub(crate) fn comma_list<T>(
        &mut self,
        stops: &[Tok],
        mut item: impl FnMut(&mut Self) -> Result<T, ParseError>,
    ) -> Result<Vec<T>, ParseError> {
        let mut out = Vec::new();
        if self.peek().is_none_or(|t| stops.contains(t)) {
            return Ok(out);
        }
        loop {
            out.push(item(self)?);
            if !self.eat(&Tok::Comma) {
                break;
            }
        }
        Ok(out)
    }
}
