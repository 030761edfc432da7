//! Wall-clock timings of this crate's own kernels, written as CSV.

use std::io::Write;
use std::time::Instant;

use anyhow::Result;
use pauli_nd::FermionMapping;
use serde::Serialize;

use crate::{commutators, pool, random_integrals};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub operation: String,
    pub size: usize,
    pub mean_seconds: f64,
    pub std_seconds: f64,
}

fn time<T>(repeat: usize, mut f: impl FnMut() -> Result<T>) -> Result<(f64, f64)> {
    let mut samples = Vec::with_capacity(repeat);
    for _ in 0..repeat.max(1) {
        let start = Instant::now();
        std::hint::black_box(f()?);
        samples.push(start.elapsed().as_secs_f64());
    }
    let mean = samples.iter().sum::<f64>() / samples.len() as f64;
    let var = samples.iter().map(|s| (s - mean).powi(2)).sum::<f64>() / samples.len() as f64;
    Ok((mean, var.sqrt()))
}

/// Times `map_sparse`, `map_dense` and excitation-pool commutators for
/// every size, on random Hermitian integrals seeded by `seed`.
pub fn run(sizes: &[usize], repeat: usize, seed: u64, mapping: &str) -> Result<Vec<BenchRow>> {
    let mut rows = Vec::new();
    let mut push = |operation: &str, size, (mean, std)| {
        rows.push(BenchRow {
            operation: operation.to_string(),
            size,
            mean_seconds: mean,
            std_seconds: std,
        })
    };
    for &n in sizes {
        let integrals = random_integrals(n, seed.wrapping_add(n as u64));
        let (h, g) = integrals.to_coo()?;
        let m = FermionMapping::by_name(mapping, n)?;
        push("map_sparse", n, time(repeat, || Ok(m.map_sparse(&h, &g)?))?);
        let (hd, gd) = (h.to_dense(n)?, g.to_dense(n)?);
        push("map_dense", n, time(repeat, || Ok(m.map_dense(&hd, &gd)?))?);
        let ham = m.map_sparse(&h, &g)?;
        let excitations = pool(mapping, n, None)?;
        push("commutators", n, time(repeat, || commutators(&ham, &excitations, 1e-12))?);
    }
    Ok(rows)
}

pub fn write_csv<W: Write>(rows: &[BenchRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}
