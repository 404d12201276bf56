//! Permutations and the generator file format.
//!
//! Permutations act on the points `0..degree` internally; cycle notation in
//! files and display output is 1-based, matching the usual convention.

use std::fmt;

use crate::group::GroupError;

/// A permutation of the points `0..degree`, stored as its image table.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Permutation {
    images: Vec<u16>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree).map(|i| i as u16).collect(),
        }
    }

    /// Builds a permutation from a 0-based image table, checking that it is
    /// a bijection.
    pub fn from_images(images: &[usize]) -> Result<Self, GroupError> {
        let degree = images.len();
        let mut seen = vec![false; degree];
        let mut table = Vec::with_capacity(degree);
        for (point, &image) in images.iter().enumerate() {
            if image >= degree {
                return Err(GroupError::InvalidPermutation {
                    message: format!("image {image} of point {point} is out of range"),
                });
            }
            if seen[image] {
                return Err(GroupError::InvalidPermutation {
                    message: format!("image {image} occurs twice"),
                });
            }
            seen[image] = true;
            table.push(image as u16);
        }
        Ok(Permutation { images: table })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    /// Composition `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Self) -> Self {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: other
                .images
                .iter()
                .map(|&mid| self.images[mid as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0u16; self.images.len()];
        for (point, &image) in self.images.iter().enumerate() {
            images[image as usize] = point as u16;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &m)| i == m as usize)
    }

    /// Parses 1-based disjoint cycle notation such as `(1 2 3)(4 5)`.
    /// Fixed points may be omitted; `()` denotes the identity.
    pub fn parse_cycles(degree: usize, text: &str) -> Result<Self, GroupError> {
        let fail = |message: String| GroupError::InvalidPermutation { message };
        let mut images: Vec<u16> = (0..degree).map(|i| i as u16).collect();
        let mut moved = vec![false; degree];
        let mut chars = text.char_indices().peekable();
        let mut any_cycle = false;

        while let Some(&(pos, ch)) = chars.peek() {
            if ch.is_whitespace() {
                chars.next();
                continue;
            }
            if ch != '(' {
                return Err(fail(format!("expected '(' at offset {pos}, found '{ch}'")));
            }
            chars.next();
            any_cycle = true;

            let mut cycle: Vec<usize> = Vec::new();
            let mut digits = String::new();
            loop {
                let Some((pos, ch)) = chars.next() else {
                    return Err(fail("unclosed cycle".into()));
                };
                if ch.is_ascii_digit() {
                    digits.push(ch);
                    continue;
                }
                if !digits.is_empty() {
                    let point: usize = digits
                        .parse()
                        .map_err(|_| fail(format!("bad point '{digits}'")))?;
                    digits.clear();
                    if point == 0 || point > degree {
                        return Err(fail(format!(
                            "point {point} is outside 1..={degree}"
                        )));
                    }
                    if moved[point - 1] {
                        return Err(fail(format!("point {point} appears twice")));
                    }
                    moved[point - 1] = true;
                    cycle.push(point - 1);
                }
                match ch {
                    ')' => break,
                    c if c.is_whitespace() || c == ',' => {}
                    c => {
                        return Err(fail(format!(
                            "unexpected '{c}' at offset {pos} inside cycle"
                        )))
                    }
                }
            }
            for (i, &point) in cycle.iter().enumerate() {
                images[point] = cycle[(i + 1) % cycle.len()] as u16;
            }
        }

        if !any_cycle {
            return Err(fail("empty permutation expression".into()));
        }
        Ok(Permutation { images })
    }
}

impl fmt::Display for Permutation {
    /// 1-based disjoint cycle notation; the identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.degree()];
        let mut wrote = false;
        for start in 0..self.degree() {
            if seen[start] || self.image(start) == start {
                continue;
            }
            write!(f, "(")?;
            let mut point = start;
            let mut first = true;
            loop {
                seen[point] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{}", point + 1)?;
                first = false;
                point = self.image(point);
                if point == start {
                    break;
                }
            }
            write!(f, ")")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// Parses the generator file format: a `degree: <d>` header line followed by
/// one permutation per non-comment line, in 1-based cycle notation. `#`
/// starts a comment; blank lines are skipped.
pub fn parse_generator_file(text: &str) -> Result<(usize, Vec<Permutation>), GroupError> {
    let mut degree: Option<usize> = None;
    let mut generators = Vec::new();

    for (number, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(at) => &raw[..at],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let fail = |message: String| GroupError::GeneratorFile {
            line: number + 1,
            message,
        };

        match degree {
            None => {
                let Some(rest) = line.strip_prefix("degree:") else {
                    return Err(fail("expected 'degree: <d>' header".into()));
                };
                let parsed: usize = rest
                    .trim()
                    .parse()
                    .map_err(|_| fail(format!("bad degree '{}'", rest.trim())))?;
                degree = Some(parsed);
            }
            Some(d) => {
                let perm = Permutation::parse_cycles(d, line).map_err(|e| match e {
                    GroupError::InvalidPermutation { message } => fail(message),
                    other => other,
                })?;
                generators.push(perm);
            }
        }
    }

    match degree {
        Some(d) => Ok((d, generators)),
        None => Err(GroupError::GeneratorFile {
            line: 0,
            message: "missing 'degree: <d>' header".into(),
        }),
    }
}
