//! Shared scalar statistics used by the characterization and analysis
//! harnesses.

/// Pearson correlation coefficient over byte sequences, in double precision.
/// Returns `None` for mismatched/short inputs or when either side is
/// constant (zero variance).
pub(crate) fn pearson(x: &[u8], y: &[u8]) -> Option<f64> {
    if x.len() != y.len() || x.len() < 2 {
        return None;
    }
    let n = x.len() as f64;
    let (mut sx, mut sy) = (0.0f64, 0.0f64);
    for (&a, &b) in x.iter().zip(y) {
        sx += a as f64;
        sy += b as f64;
    }
    let (mx, my) = (sx / n, sy / n);
    let (mut cov, mut vx, mut vy) = (0.0f64, 0.0, 0.0);
    for (&a, &b) in x.iter().zip(y) {
        let dx = a as f64 - mx;
        let dy = b as f64 - my;
        cov += dx * dy;
        vx += dx * dx;
        vy += dy * dy;
    }
    if vx == 0.0 || vy == 0.0 {
        return None;
    }
    Some(cov / (vx.sqrt() * vy.sqrt()))
}

/// Cosine similarity over raw byte values, no mean centering. Returns `None`
/// for mismatched/empty inputs or when either vector is all zeros.
pub(crate) fn cosine(x: &[u8], y: &[u8]) -> Option<f64> {
    if x.len() != y.len() || x.is_empty() {
        return None;
    }
    let (mut dot, mut nx, mut ny) = (0.0f64, 0.0, 0.0);
    for (&a, &b) in x.iter().zip(y) {
        let (a, b) = (a as f64, b as f64);
        dot += a * b;
        nx += a * a;
        ny += b * b;
    }
    if nx == 0.0 || ny == 0.0 {
        return None;
    }
    Some(dot / (nx.sqrt() * ny.sqrt()))
}
