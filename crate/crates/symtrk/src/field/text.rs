//! Canonical element text: bracketed coordinate vectors written
//! high-coefficient-first, nested per tower level, digits at the prime level.
//! Parsing additionally accepts "0", "1", bare integers (embedded via n*1),
//! and "g^k" powers of the first full-degree generating element.

use super::{Elt, Field, FieldError, Repr, Tower};

impl Field {
    /// Canonical coordinate form, e.g. "[1,0]" or "[[0,1],[1,1]]".
    pub fn format_elt(&self, a: &Elt) -> String {
        assert_eq!(a.level, self.top, "element belongs to a different level");
        fn go(t: &Tower, lvl: usize, r: &Repr, out: &mut String) {
            match r {
                Repr::Prime(v) => out.push_str(&v.to_string()),
                Repr::Ext(coords) => {
                    out.push('[');
                    for (n, c) in coords.iter().rev().enumerate() {
                        if n > 0 {
                            out.push(',');
                        }
                        go(t, lvl - 1, c, out);
                    }
                    out.push(']');
                }
            }
        }
        let mut s = String::new();
        go(&self.inner, self.top, &a.repr, &mut s);
        if self.top == 0 {
            format!("[{s}]")
        } else {
            s
        }
    }

    /// Parses the formats documented on the module: canonical coordinates,
    /// "0", "1", a bare integer, or "g^k".
    pub fn parse_elt(&self, s: &str) -> Result<Elt, FieldError> {
        let s = s.trim();
        if s.is_empty() {
            return Err(FieldError::Parse("empty element".into()));
        }
        if let Some(exp) = s.strip_prefix("g^") {
            let k: u128 = exp
                .trim()
                .parse()
                .map_err(|_| FieldError::Parse(format!("bad exponent in {s:?}")))?;
            let g = self.find_generator();
            return Ok(self.pow(&g, k));
        }
        if s == "g" {
            return Ok(self.find_generator());
        }
        if !s.starts_with('[') {
            let n: u64 = s
                .parse()
                .map_err(|_| FieldError::Parse(format!("unrecognized element {s:?}")))?;
            return Ok(self.from_u64(n));
        }
        let mut chars = s.char_indices().peekable();
        let repr = parse_nested(self, self.top, s, &mut chars)?;
        if chars.next().is_some() {
            return Err(FieldError::Parse(format!("trailing input in {s:?}")));
        }
        Ok(Elt {
            level: self.top,
            repr,
        })
    }
}

type Cur<'a> = std::iter::Peekable<std::str::CharIndices<'a>>;

fn parse_nested(f: &Field, lvl: usize, src: &str, cur: &mut Cur) -> Result<Repr, FieldError> {
    skip_ws(cur);
    match cur.peek() {
        Some((_, '[')) => {
            cur.next();
            let mut parts: Vec<Repr> = Vec::new();
            loop {
                skip_ws(cur);
                match cur.peek() {
                    Some((_, ']')) => {
                        cur.next();
                        break;
                    }
                    Some(_) => {
                        if lvl == 0 {
                            // a prime-level singleton like "[3]"
                            parts.push(parse_nested(f, 0, src, cur)?);
                        } else {
                            parts.push(parse_nested(f, lvl - 1, src, cur)?);
                        }
                        skip_ws(cur);
                        if let Some((_, ',')) = cur.peek() {
                            cur.next();
                        }
                    }
                    None => return Err(FieldError::Parse(format!("unterminated list in {src:?}"))),
                }
            }
            if lvl == 0 {
                if parts.len() != 1 {
                    return Err(FieldError::Parse(format!(
                        "expected a single coordinate at the prime level in {src:?}"
                    )));
                }
                return Ok(parts.pop().unwrap());
            }
            let d = f.inner.deg_at(lvl);
            if parts.len() != d {
                return Err(FieldError::Parse(format!(
                    "expected {d} coordinates, found {} in {src:?}",
                    parts.len()
                )));
            }
            parts.reverse(); // text is high-first, storage low-first
            Ok(Repr::Ext(parts))
        }
        Some((_, c)) if c.is_ascii_digit() => {
            let start = cur.peek().unwrap().0;
            let mut end = start;
            while let Some(&(i, c)) = cur.peek() {
                if c.is_ascii_digit() {
                    end = i + c.len_utf8();
                    cur.next();
                } else {
                    break;
                }
            }
            let n: u64 = src[start..end]
                .parse()
                .map_err(|_| FieldError::Parse(format!("bad number in {src:?}")))?;
            if lvl == 0 {
                Ok(Repr::Prime(n % f.inner.p))
            } else {
                // a bare integer inside a list embeds as n * 1
                Ok(f.inner.from_u64_r(lvl, n))
            }
        }
        Some((_, c)) => Err(FieldError::Parse(format!("unexpected {c:?} in {src:?}"))),
        None => Err(FieldError::Parse(format!("truncated element in {src:?}"))),
    }
}

fn skip_ws(cur: &mut Cur) {
    while let Some(&(_, c)) = cur.peek() {
        if c.is_whitespace() {
            cur.next();
        } else {
            break;
        }
    }
}
