//! Parser for connection-set specs:
//!
//! ```text
//! spec  := "n=" INT ";" "S=" body
//! body  := "classes(" token ("," token)* ")"
//!        | "raw(" token ("," token)* ")"
//!        | "family(" NAME ("," key "=" value)* ")"
//! token := ("r" | "f") INT
//! ```
//!
//! Whitespace is allowed between tokens. Family values are integers, except
//! `delta`, which takes a bracketed token list such as `delta=[r1,r7]`.
//! `pi` defaults to 1 for the families that take it.

use dihedrant_core::{ConnectionSet, DihedralElement, DihedralGroup, Family};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at byte {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

/// A parsed spec: the group, the connection set, and the family it came from.
#[derive(Debug, Clone)]
pub struct Spec {
    pub group: DihedralGroup,
    pub set: ConnectionSet,
    pub family: Option<Family>,
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(|c: char| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            position: self.pos,
            message: message.into(),
        }
    }

    fn expect(&mut self, lit: &str) -> Result<(), ParseError> {
        self.skip_ws();
        if self.src[self.pos..].starts_with(lit) {
            self.pos += lit.len();
            Ok(())
        } else {
            Err(self.error(format!("expected `{lit}`")))
        }
    }

    fn eat(&mut self, lit: &str) -> bool {
        self.skip_ws();
        let hit = self.src[self.pos..].starts_with(lit);
        if hit {
            self.pos += lit.len();
        }
        hit
    }

    fn word(&mut self) -> Result<(usize, &'a str), ParseError> {
        self.skip_ws();
        let start = self.pos;
        let len = self.src[start..]
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(self.src.len() - start);
        if len == 0 {
            return Err(self.error("expected a name, number or element"));
        }
        self.pos += len;
        Ok((start, &self.src[start..start + len]))
    }

    fn int(&mut self) -> Result<usize, ParseError> {
        let (start, w) = self.word()?;
        w.parse().map_err(|_| ParseError {
            position: start,
            message: format!("expected an integer, found `{w}`"),
        })
    }

    fn token(&mut self, group: DihedralGroup) -> Result<DihedralElement, ParseError> {
        let (start, w) = self.word()?;
        group.parse(w).map_err(|e| ParseError {
            position: start,
            message: e.to_string(),
        })
    }

    fn token_list(&mut self, group: DihedralGroup, close: &str) -> Result<Vec<DihedralElement>, ParseError> {
        let mut out = vec![self.token(group)?];
        while self.eat(",") {
            out.push(self.token(group)?);
        }
        self.expect(close)?;
        Ok(out)
    }
}

pub fn parse_spec(src: &str) -> Result<Spec, ParseError> {
    let mut cur = Cursor { src, pos: 0 };
    cur.expect("n")?;
    cur.expect("=")?;
    let n_pos = cur.pos;
    let n = cur.int()?;
    let group = DihedralGroup::new(n).map_err(|e| ParseError {
        position: n_pos,
        message: e.to_string(),
    })?;
    cur.expect(";")?;
    cur.expect("S")?;
    cur.expect("=")?;
    let (body_pos, kind) = cur.word()?;
    cur.expect("(")?;
    let at_body = |e: dihedrant_core::Error| ParseError {
        position: body_pos,
        message: e.to_string(),
    };
    let (set, family) = match kind {
        "classes" => {
            let reps = cur.token_list(group, ")")?;
            (ConnectionSet::from_class_reps(group, &reps).map_err(at_body)?, None)
        }
        "raw" => {
            let elements = cur.token_list(group, ")")?;
            (ConnectionSet::raw(group, &elements).map_err(at_body)?, None)
        }
        "family" => {
            let family = parse_family(&mut cur, group)?;
            (family.build(group).map_err(at_body)?, Some(family))
        }
        other => {
            return Err(ParseError {
                position: body_pos,
                message: format!("unknown body `{other}`; expected classes, raw or family"),
            })
        }
    };
    cur.skip_ws();
    if cur.pos != src.len() {
        return Err(cur.error("trailing input"));
    }
    Ok(Spec { group, set, family })
}

fn parse_family(cur: &mut Cursor<'_>, group: DihedralGroup) -> Result<Family, ParseError> {
    let (name_pos, name) = cur.word()?;
    let mut p = None;
    let mut pi = None;
    let mut t = None;
    let mut delta = None;
    while cur.eat(",") {
        let (key_pos, key) = cur.word()?;
        cur.expect("=")?;
        match key {
            "p" => p = Some(cur.int()?),
            "pi" => {
                let v = cur.int()?;
                pi = Some(u8::try_from(v).map_err(|_| cur.error("pi must be 0 or 1"))?);
            }
            "t" => t = Some(cur.int()?),
            "delta" => {
                delta = Some(if cur.eat("[") {
                    cur.token_list(group, "]")?
                } else {
                    vec![cur.token(group)?]
                })
            }
            other => {
                return Err(ParseError {
                    position: key_pos,
                    message: format!("unknown family parameter `{other}`"),
                })
            }
        }
    }
    cur.expect(")")?;
    let missing = |what: &str| ParseError {
        position: name_pos,
        message: format!("family {name} needs `{what}`"),
    };
    let pi = pi.unwrap_or(1);
    Ok(match name {
        "knn_v1" => Family::KnnV1,
        "knn_v2" => Family::KnnV2,
        "knn_v3" => Family::KnnV3,
        "knn_minus_matching_v1" => Family::KnnMinusMatchingV1,
        "knn_minus_matching_v2" => Family::KnnMinusMatchingV2,
        "complete" => Family::Complete,
        "multipartite" => Family::Multipartite { t: t.ok_or_else(|| missing("t"))? },
        "thm14" => Family::UnitRotations { p: p.ok_or_else(|| missing("p"))?, pi },
        "ex44_S" => Family::D60Orders6And30 { pi },
        "ex44_R" => Family::D60Orders10And30 { pi },
        "ex45_S" => Family::D84Orders6And42 { pi },
        "ex45_R" => Family::D84Orders14And42 { pi },
        "caseV" => Family::CaseV {
            pi,
            delta: delta.ok_or_else(|| missing("delta"))?,
        },
        other => {
            return Err(ParseError {
                position: name_pos,
                message: format!("unknown family `{other}`"),
            })
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_bodies() {
        let s = parse_spec("n=12; S=family(thm14, p=3, pi=1)").unwrap();
        assert_eq!(s.set.len(), 10);
        assert_eq!(parse_spec("n=5;S=classes(f1)").unwrap().set.len(), 5);
        assert_eq!(parse_spec(" n = 6 ; S = raw( r1 ) ").unwrap().set.len(), 2);
        let v = parse_spec("n=8; S=family(caseV, pi=1, delta=[r1,r7])").unwrap();
        assert_eq!(v.set.len(), 6);
        assert_eq!(parse_spec("n=6; S=family(multipartite, t=2)").unwrap().set.len(), 10);
    }

    #[test]
    fn reports_positions() {
        let e = parse_spec("n=6; S=raw(x1)").unwrap_err();
        assert_eq!(e.position, 11);
        let e = parse_spec("n=6; S=family(nope)").unwrap_err();
        assert_eq!(e.position, 14);
        assert!(parse_spec("n=6; S=raw(r1) extra").is_err());
        assert!(parse_spec("n=6 S=raw(r1)").is_err());
        assert!(parse_spec("n=6; S=family(thm14, pi=1)").is_err());
        assert!(parse_spec("n=6; S=classes(r0)").is_err());
    }
}
