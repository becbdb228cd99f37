//! Recursive-descent parser for the cascade grammar. Whitespace is
//! insignificant; errors carry line/column positions. The parser also enforces
//! the semantic side conditions (cycle lengths and family values >= 1).

use super::expr::{CascadeExpr, ParamFamily, PieceSeq};
use super::PresentationError;

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

/// Parse a cascade expression; the canonical printer round-trips through this.
pub fn parse_cascade(input: &str) -> Result<CascadeExpr, PresentationError> {
    let mut p = Parser { src: input, bytes: input.as_bytes(), pos: 0 };
    p.skip_ws();
    let expr = p.expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(expr)
}

/// Either a genuine sub-expression or a tail family; `cycle(<nat>)` is
/// ambiguous between the two until its position in the piece list is known.
enum PieceItem {
    Expr(CascadeExpr),
    Family(ParamFamily),
    AmbiguousCycle(u64),
}

impl<'a> Parser<'a> {
    fn err(&self, message: impl Into<String>) -> PresentationError {
        let (line, col) = location(self.src, self.pos);
        PresentationError::Syntax { line, col, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn expect(&mut self, ch: u8) -> Result<(), PresentationError> {
        self.skip_ws();
        if self.peek() == Some(ch) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected `{}`", ch as char)))
        }
    }

    fn word(&mut self) -> Result<&'a str, PresentationError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_lowercase() {
            self.pos += 1;
        }
        // allow trailing digits inside a keyword (shift2)
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a keyword"));
        }
        Ok(&self.src[start..self.pos])
    }

    fn nat(&mut self) -> Result<u64, PresentationError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        self.src[start..self.pos]
            .parse::<u64>()
            .map_err(|_| self.err("number out of range"))
    }

    fn expr(&mut self) -> Result<CascadeExpr, PresentationError> {
        match self.piece_item()? {
            PieceItem::Expr(e) => Ok(e),
            PieceItem::AmbiguousCycle(k) => Ok(CascadeExpr::Cycle(k)),
            PieceItem::Family(_) => Err(self.err("parameterized cycle family is only valid as the last piece of a tower")),
        }
    }

    fn piece_item(&mut self) -> Result<PieceItem, PresentationError> {
        self.skip_ws();
        let word_pos = self.pos;
        let word = self.word()?;
        match word {
            "cycle" => {
                self.expect(b'(')?;
                let item = self.cycle_body()?;
                self.expect(b')')?;
                Ok(item)
            }
            "tower" => {
                self.expect(b'(')?;
                let mut items = vec![self.piece_item()?];
                loop {
                    self.skip_ws();
                    if self.peek() == Some(b',') {
                        self.pos += 1;
                        items.push(self.piece_item()?);
                    } else {
                        break;
                    }
                }
                self.expect(b')')?;
                let tail = match items.pop().unwrap() {
                    PieceItem::Family(fam) => fam,
                    PieceItem::AmbiguousCycle(k) => ParamFamily::Const(k),
                    PieceItem::Expr(_) => {
                        return Err(self.err("the last piece of a tower must be a cycle family"));
                    }
                };
                let mut head = Vec::with_capacity(items.len());
                for item in items {
                    head.push(match item {
                        PieceItem::Expr(e) => e,
                        PieceItem::AmbiguousCycle(k) => CascadeExpr::Cycle(k),
                        PieceItem::Family(_) => {
                            return Err(self.err("parameterized cycle family is only valid as the last piece of a tower"));
                        }
                    });
                }
                let start = head.len() as u64;
                self.check_family(&tail, start)?;
                Ok(PieceItem::Expr(CascadeExpr::Tower(PieceSeq { head, tail })))
            }
            "sum" => {
                self.expect(b'(')?;
                let a = self.expr()?;
                self.expect(b',')?;
                let b = self.expr()?;
                self.expect(b')')?;
                Ok(PieceItem::Expr(CascadeExpr::sum(a, b)))
            }
            "cycleof" => {
                self.expect(b'(')?;
                let base = self.expr()?;
                self.expect(b',')?;
                let m = self.nat()?;
                if m == 0 {
                    return Err(self.err("cyclic product must have at least 1 copy"));
                }
                self.expect(b')')?;
                Ok(PieceItem::Expr(CascadeExpr::cycle_of(base, m)))
            }
            "shift2" => Ok(PieceItem::Expr(CascadeExpr::Shift2)),
            "ishift" => Ok(PieceItem::Expr(CascadeExpr::IShift)),
            other => {
                self.pos = word_pos;
                Err(self.err(format!("unknown generator `{other}`")))
            }
        }
    }

    /// The inside of `cycle(...)`: a plain length, or a family formula
    /// `a*n+b` / `r^n` / `a*r^n`.
    fn cycle_body(&mut self) -> Result<PieceItem, PresentationError> {
        let first = self.nat()?;
        self.skip_ws();
        match self.peek() {
            Some(b'^') => {
                self.pos += 1;
                self.expect_n()?;
                if first == 0 {
                    return Err(self.err("geometric ratio must be at least 1"));
                }
                Ok(PieceItem::Family(ParamFamily::Geometric(1, first)))
            }
            Some(b'*') => {
                self.pos += 1;
                self.skip_ws();
                if self.peek() == Some(b'n') {
                    self.pos += 1;
                    self.expect(b'+')?;
                    let b = self.nat()?;
                    Ok(PieceItem::Family(ParamFamily::Linear(first, b)))
                } else {
                    let r = self.nat()?;
                    self.expect(b'^')?;
                    self.expect_n()?;
                    if first == 0 || r == 0 {
                        return Err(self.err("geometric family parameters must be at least 1"));
                    }
                    Ok(PieceItem::Family(ParamFamily::Geometric(first, r)))
                }
            }
            _ => {
                if first == 0 {
                    return Err(self.err("cycle length must be at least 1"));
                }
                Ok(PieceItem::AmbiguousCycle(first))
            }
        }
    }

    fn expect_n(&mut self) -> Result<(), PresentationError> {
        self.skip_ws();
        if self.peek() == Some(b'n') {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err("expected `n`"))
        }
    }

    /// Every tail piece must be a nonempty cycle: g(n) >= 1 for all n >= start.
    fn check_family(&self, fam: &ParamFamily, start: u64) -> Result<(), PresentationError> {
        let ok = match *fam {
            ParamFamily::Const(k) => k >= 1,
            // linear and geometric families are monotone nondecreasing in n
            // once their parameters are nonnegative, so the first index decides
            ParamFamily::Linear(a, b) => a.checked_mul(start).and_then(|an| an.checked_add(b)).is_some_and(|v| v >= 1),
            ParamFamily::Geometric(a, r) => a >= 1 && r >= 1,
        };
        if ok {
            Ok(())
        } else {
            Err(self.err("cycle family must produce lengths >= 1 for every piece"))
        }
    }
}

fn location(src: &str, byte_pos: usize) -> (usize, usize) {
    let mut line = 1;
    let mut col = 1;
    for (i, ch) in src.char_indices() {
        if i >= byte_pos {
            break;
        }
        if ch == '\n' {
            line += 1;
            col = 1;
        } else {
            col += 1;
        }
    }
    (line, col)
}
