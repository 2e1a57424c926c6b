//! Web generation by scan lines: every seed on a segment is iterated to a
//! fixed depth and the points are concatenated in seed order, so output is
//! deterministic regardless of parallelism.

use rayon::prelude::*;

use crate::maps::FloatMap;
use crate::{Error, Result};

/// A scan segment: seeds at parameter steps of `step` along start..end,
/// endpoints included when the step divides the length.
#[derive(Debug, Clone)]
pub struct Segment {
    pub start: [f64; 2],
    pub end: [f64; 2],
    pub step: f64,
}

impl Segment {
    pub fn seeds(&self) -> Result<Vec<[f64; 2]>> {
        if !(self.step > 0.0) {
            return Err(Error::Domain("segment step must be positive".into()));
        }
        let dx = self.end[0] - self.start[0];
        let dy = self.end[1] - self.start[1];
        let len = dx.hypot(dy);
        if len == 0.0 {
            return Ok(vec![self.start]);
        }
        let count = (len / self.step + 1e-9).floor() as usize;
        let (ux, uy) = (dx / len, dy / len);
        Ok((0..=count)
            .map(|i| {
                let t = i as f64 * self.step;
                [self.start[0] + t * ux, self.start[1] + t * uy]
            })
            .collect())
    }
}

/// A flattened web point cloud.
#[derive(Debug, Clone)]
pub struct WebCloud {
    pub map_id: String,
    pub dim: usize,
    /// (seed_index, iter, point) triplets flattened in seed-major order.
    pub points: Vec<f64>,
    pub seed_index: Vec<u32>,
    pub iter_index: Vec<u32>,
    pub seeds: usize,
    pub depth: u64,
    /// Seeds whose orbit hit an undefined configuration; their prefix points
    /// are kept.
    pub skipped: usize,
}

impl WebCloud {
    pub fn len(&self) -> usize {
        self.seed_index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seed_index.is_empty()
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.points[i * self.dim..(i + 1) * self.dim]
    }
}

/// Worker-thread count: POLYDYN_THREADS when set, otherwise rayon's default.
pub fn thread_count() -> usize {
    std::env::var("POLYDYN_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n >= 1)
        .unwrap_or(0)
}

/// Depth-long orbit of every seed on the segment, concatenated in seed order
/// then iteration order. Seeds whose orbit becomes undefined keep their
/// prefix and are counted in `skipped`.
pub fn web_scan(map: &FloatMap, segment: &Segment, depth: u64) -> Result<WebCloud> {
    if map.dim() != 2 {
        return Err(Error::Domain(format!(
            "web scans are two-dimensional; map '{}' is not",
            map.id()
        )));
    }
    let seeds = segment.seeds()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(thread_count())
        .build()
        .map_err(|e| Error::Domain(format!("thread pool: {e}")))?;

    // Per-seed orbits, computed in parallel, merged in seed order.
    let per_seed: Vec<(Vec<f64>, bool)> = pool.install(|| {
        seeds
            .par_iter()
            .map(|seed| {
                let mut pts = Vec::with_capacity(((depth + 1) * 2) as usize);
                pts.extend_from_slice(seed);
                let mut p = seed.to_vec();
                for _ in 0..depth {
                    match map.step(&p) {
                        Ok(q) => {
                            pts.extend_from_slice(&q);
                            p = q;
                        }
                        Err(_) => return (pts, true),
                    }
                }
                (pts, false)
            })
            .collect()
    });

    let mut cloud = WebCloud {
        map_id: map.id().to_string(),
        dim: 2,
        points: Vec::new(),
        seed_index: Vec::new(),
        iter_index: Vec::new(),
        seeds: seeds.len(),
        depth,
        skipped: 0,
    };
    for (si, (pts, skipped)) in per_seed.into_iter().enumerate() {
        if skipped {
            cloud.skipped += 1;
        }
        for (it, chunk) in pts.chunks(2).enumerate() {
            cloud.points.extend_from_slice(chunk);
            cloud.seed_index.push(si as u32);
            cloud.iter_index.push(it as u32);
        }
    }
    Ok(cloud)
}
