use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use crate::geom2d::{Point2, UnconditionalPolygon};

/// The generator for sample `index` of a run seeded with `seed`.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// A normalized chain through `D = (-1, 0)` and `B = (0, 1)` with `n - 2` further points drawn
/// uniformly from the open triangle `ABD`, convexified. Points that end up inside the hull are
/// discarded, so the chain can be shorter than `n`.
pub fn sample_polygon<R: Rng + ?Sized>(rng: &mut R, n: usize) -> UnconditionalPolygon {
    let mut pts = vec![Point2::new(-1.0, 0.0), Point2::new(0.0, 1.0)];
    while pts.len() < n.max(2) {
        let x = -rng.random::<f64>();
        let y = rng.random::<f64>();
        if y > x + 1.0 && x < 0.0 && y < 1.0 {
            pts.push(Point2::new(x, y));
        }
    }
    // The hull of points in the closed square containing D and B is a valid normalized chain.
    UnconditionalPolygon::hull(pts).expect("hull of D, B and triangle points is valid")
}

/// First 8 bytes of SHA-256 over the little-endian bit patterns of the chain coordinates, as
/// 16 hex digits.
pub fn chain_digest<'a>(chains: impl IntoIterator<Item = &'a [Point2]>) -> String {
    let mut h = Sha256::new();
    for (i, chain) in chains.into_iter().enumerate() {
        if i > 0 {
            h.update(b"|");
        }
        for p in chain {
            h.update(p.x.to_bits().to_le_bytes());
            h.update(p.y.to_bits().to_le_bytes());
        }
    }
    let d = h.finalize();
    d[..8].iter().map(|b| format!("{b:02x}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_points_give_the_diamond() {
        let mut rng = sample_rng(1, 0);
        assert_eq!(sample_polygon(&mut rng, 2), UnconditionalPolygon::diamond());
    }

    #[test]
    fn streams_are_independent_of_order() {
        let a = sample_polygon(&mut sample_rng(9, 3), 7);
        let _ = sample_polygon(&mut sample_rng(9, 2), 7);
        let b = sample_polygon(&mut sample_rng(9, 3), 7);
        assert_eq!(a, b);
    }

    #[test]
    fn digest_is_stable() {
        let d = chain_digest([UnconditionalPolygon::square().chain()]);
        assert_eq!(d.len(), 16);
        assert_eq!(d, chain_digest([UnconditionalPolygon::square().chain()]));
        assert_ne!(d, chain_digest([UnconditionalPolygon::diamond().chain()]));
    }
}
