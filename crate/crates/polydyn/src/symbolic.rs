//! Symbol sequences: Df s-sequences, 3D jump sequences, Tangent-map corner
//! and step sequences, winding numbers and the Chua-Lin admissibility rules.

use std::io::Write;

use crate::conjugacy::{plane_gap, rect_coordinate};
use crate::exact::AlgebraicReal;
use crate::geometry::{ConvexPolygon, Coord, Point};
use crate::maps::{d3f_step, df_step, df_step_exact, s_classify, s_classify_exact, tangent_step_with_corner};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Alphabet {
    /// Overflow symbols {-1, 0, 1} of the second-order filter.
    Df3,
    /// Jump symbols {0, +-1, +-2, +-3} of the third-order filter.
    D3f7,
    /// Corner indices {1..N} of the Tangent map.
    Corner(u32),
}

impl Alphabet {
    fn contains(&self, s: i64) -> bool {
        match self {
            Alphabet::Df3 => (-1..=1).contains(&s),
            Alphabet::D3f7 => (-3..=3).contains(&s),
            Alphabet::Corner(n) => s >= 1 && s <= *n as i64,
        }
    }

    fn name(&self) -> String {
        match self {
            Alphabet::Df3 => "df3".into(),
            Alphabet::D3f7 => "d3f7".into(),
            Alphabet::Corner(n) => format!("corner({n})"),
        }
    }
}

/// A symbol sequence with its alphabet and provenance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolSequence {
    pub symbols: Vec<i64>,
    pub alphabet: Alphabet,
    /// map id plus initial point, for dump headers.
    pub source: String,
}

impl SymbolSequence {
    pub fn new(symbols: Vec<i64>, alphabet: Alphabet, source: impl Into<String>) -> Result<Self> {
        if let Some(bad) = symbols.iter().find(|s| !alphabet.contains(**s)) {
            return Err(Error::Domain(format!(
                "symbol {bad} outside alphabet {}",
                alphabet.name()
            )));
        }
        Ok(SymbolSequence {
            symbols,
            alphabet,
            source: source.into(),
        })
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }
}

/// s-sequence of the Df orbit of p0 (classifier applied along the orbit).
pub fn s_sequence(p0: Point<f64>, a: f64, len: usize) -> Result<SymbolSequence> {
    let mut p = p0.clone();
    let mut symbols = Vec::with_capacity(len);
    for _ in 0..len {
        symbols.push(s_classify(&p, a) as i64);
        p = df_step(p, a);
    }
    SymbolSequence::new(
        symbols,
        Alphabet::Df3,
        format!("df seed=({},{})", p0.x, p0.y),
    )
}

/// Exact-mode s-sequence; boundary branches resolved by exact signs.
pub fn s_sequence_exact(
    p0: &Point<AlgebraicReal>,
    a: &AlgebraicReal,
    len: usize,
) -> Result<SymbolSequence> {
    let mut p = p0.clone();
    let mut symbols = Vec::with_capacity(len);
    for _ in 0..len {
        symbols.push(s_classify_exact(&p, a)? as i64);
        p = df_step_exact(&p, a)?;
    }
    SymbolSequence::new(symbols, Alphabet::Df3, "df exact".to_string())
}

/// 3D jump sequence: rectified first coordinates, first differences divided by
/// the plane gap 2/sqrt(2+a^2), rounded to integers.
pub fn s_sequence_3d(p0: [f64; 3], a: f64, len: usize) -> Result<SymbolSequence> {
    if len < 2 {
        return Err(Error::Domain("3D s-sequence needs len >= 2".into()));
    }
    let gap = plane_gap(a);
    let mut p = p0;
    let mut prev_u = rect_coordinate(p, a);
    let mut symbols = Vec::with_capacity(len - 1);
    for _ in 1..len {
        p = d3f_step(p, a);
        let u = rect_coordinate(p, a);
        symbols.push(((u - prev_u) / gap).round() as i64);
        prev_u = u;
    }
    SymbolSequence::new(
        symbols,
        Alphabet::D3f7,
        format!("d3f seed=({},{},{})", p0[0], p0[1], p0[2]),
    )
}

/// Corner indices (1-based) visited by the Tangent map.
pub fn corner_sequence<T: Coord>(
    p0: &Point<T>,
    polygon: &ConvexPolygon<T>,
    len: usize,
) -> Result<SymbolSequence> {
    let mut p = p0.clone();
    let mut symbols = Vec::with_capacity(len);
    for i in 0..len {
        let (q, corner) = tangent_step_with_corner(&p, polygon).map_err(|e| Error::AtIteration {
            index: i as u64,
            source: Box::new(e),
        })?;
        symbols.push(corner as i64);
        p = q;
    }
    SymbolSequence::new(
        symbols,
        Alphabet::Corner(polygon.len() as u32),
        "tangent".to_string(),
    )
}

/// Step sequence: successive corner differences mod N, reported in 1..N
/// (a repeat corner counts as a full turn N).
pub fn step_sequence(corners: &SymbolSequence) -> Result<SymbolSequence> {
    let n = match corners.alphabet {
        Alphabet::Corner(n) => n as i64,
        _ => return Err(Error::Alphabet { expected: "corner(N)" }),
    };
    let steps = corners
        .symbols
        .windows(2)
        .map(|w| {
            let d = (w[1] - w[0]).rem_euclid(n);
            if d == 0 {
                n
            } else {
                d
            }
        })
        .collect();
    SymbolSequence::new(steps, corners.alphabet.clone(), corners.source.clone())
}

/// Winding number: mean step divided by N, on a 0..1 scale.
pub fn winding_number(steps: &SymbolSequence, n: u32) -> Result<f64> {
    if steps.is_empty() {
        return Err(Error::Domain("winding number of an empty sequence".into()));
    }
    let sum: i64 = steps.symbols.iter().sum();
    Ok(sum as f64 / steps.len() as f64 / n as f64)
}

/// Chua-Lin admissibility for Df s-sequences: no {1,1}, {-1,-1}, {1,0,1} or
/// {-1,0,-1} factor. Returns the index of the first violation, if any.
pub fn chua_lin_admissible(seq: &SymbolSequence) -> Result<(bool, Option<usize>)> {
    if seq.alphabet != Alphabet::Df3 {
        return Err(Error::Alphabet { expected: "df3" });
    }
    let s = &seq.symbols;
    for i in 0..s.len() {
        if i + 1 < s.len() && s[i] != 0 && s[i + 1] == s[i] {
            return Ok((false, Some(i)));
        }
        if i + 2 < s.len() && s[i] != 0 && s[i + 1] == 0 && s[i + 2] == s[i] {
            return Ok((false, Some(i)));
        }
    }
    Ok((true, None))
}

/// Occurrence counts per symbol, sorted by symbol.
pub fn tally(seq: &SymbolSequence) -> Vec<(i64, usize)> {
    let mut counts = std::collections::BTreeMap::new();
    for &s in &seq.symbols {
        *counts.entry(s).or_insert(0usize) += 1;
    }
    counts.into_iter().collect()
}

/// Dump format: a `# map=... theta=... seed=...` header line, then the
/// symbols whitespace-separated.
pub fn write_sequence<W: Write>(
    out: &mut W,
    seq: &SymbolSequence,
    map: &str,
    theta: &str,
    seed: &str,
) -> Result<()> {
    writeln!(out, "# map={map} theta={theta} seed={seed}")?;
    let line: Vec<String> = seq.symbols.iter().map(|s| s.to_string()).collect();
    writeln!(out, "{}", line.join(" "))?;
    Ok(())
}
