use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::TriangleFrame;

/// Pass thresholds of the checks. Every value is a bound on the residual the
/// corresponding check reports.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// Normalized conic residual of circumcenters and corner-case points.
    pub membership: f64,
    /// Contact-point residuals and tangent/side coefficient differences.
    pub tangency: f64,
    /// Coefficient difference between the members of span `t` and `-t`.
    pub symmetry: f64,
    /// Orthogonality and Apollonian-center comparisons.
    pub chord: f64,
    /// `1 - cos` between fitted and closed-form coefficients.
    pub fit_cosine: f64,
    /// Residual of a sixth circumcenter on the fitted conic.
    pub fit_residual: f64,
    /// Absolute error of recovered spans.
    pub span: f64,
    /// Singular-value ratio under which a constructed member counts as
    /// degenerate.
    pub degeneracy: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            membership: 1e-9,
            tangency: 1e-9,
            symmetry: 1e-12,
            chord: 1e-9,
            fit_cosine: 1e-8,
            fit_residual: 1e-8,
            span: 1e-7,
            degeneracy: crate::tol::RANK,
        }
    }
}

/// Sampling plan shared by all checks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SampleConfig {
    pub seed: u64,
    pub n_frames: usize,
    /// Samples per frame and family in the per-frame checks.
    pub n_samples: usize,
    /// Interval for the exponents `k` and spans `t`.
    pub exponent_range: [f64; 2],
    /// Minimum `|b - c|` of a sampled frame.
    pub isosceles_margin: f64,
    pub span_samples: usize,
    /// Points per region label in the intersection-count table.
    pub region_quota: usize,
    pub decision_pairs: usize,
    pub classification_samples: usize,
    pub tolerances: Tolerances,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig {
            seed: 42,
            n_frames: 100,
            n_samples: 20,
            exponent_range: [-6.0, 6.0],
            isosceles_margin: 1e-3,
            span_samples: 1000,
            region_quota: 200,
            decision_pairs: 10_000,
            classification_samples: 1000,
            tolerances: Tolerances::default(),
        }
    }
}

// Random streams; each check draws from its own.
pub(crate) const STREAM_FRAME: u64 = 1;
pub(crate) const STREAM_EXPONENTS: u64 = 2;
pub(crate) const STREAM_REPRESENTABILITY: u64 = 3;
pub(crate) const STREAM_SPAN: u64 = 4;
pub(crate) const STREAM_REGION: u64 = 5;
pub(crate) const STREAM_FIT: u64 = 6;
pub(crate) const STREAM_DECISION: u64 = 7;
pub(crate) const STREAM_CLASSIFY: u64 = 8;
pub(crate) const STREAM_CORNER: u64 = 9;

impl SampleConfig {
    pub fn validate(&self) -> Result<()> {
        let counts = [
            ("n_frames", self.n_frames),
            ("n_samples", self.n_samples),
            ("span_samples", self.span_samples),
            ("region_quota", self.region_quota),
            ("decision_pairs", self.decision_pairs),
            ("classification_samples", self.classification_samples),
        ];
        for (name, n) in counts {
            if n == 0 {
                return Err(Error::InvalidConfig(format!("{name} must be at least 1")));
            }
        }
        let [lo, hi] = self.exponent_range;
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::InvalidConfig("exponent_range must be a bounded interval lo < hi".into()));
        }
        if !(self.isosceles_margin.is_finite() && self.isosceles_margin > 0.0) {
            return Err(Error::InvalidConfig("isosceles_margin must be positive".into()));
        }
        let t = &self.tolerances;
        let all = [t.membership, t.tangency, t.symmetry, t.chord, t.fit_cosine, t.fit_residual, t.span, t.degeneracy];
        if all.iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
            return Err(Error::InvalidConfig("tolerances must be finite and nonnegative".into()));
        }
        Ok(())
    }

    /// Generator for one trial. Depends only on the seed, the stream and the
    /// index, so trials can be replayed or run in any order.
    pub fn rng(&self, stream: u64, index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream((stream << 48) ^ index);
        rng
    }

    /// The `i`-th sampled frame: apex in `[-0.5, 1.5] x [0.25, 1.5]`, at
    /// least `isosceles_margin` away from isosceles.
    pub fn frame(&self, i: usize) -> TriangleFrame {
        let mut rng = self.rng(STREAM_FRAME, i as u64);
        loop {
            let x = rng.random_range(-0.5..=1.5);
            let y = rng.random_range(0.25..=1.5);
            if let Ok(f) = TriangleFrame::from_apex(x, y) {
                if (f.b_len() - f.c_len()).abs() >= self.isosceles_margin {
                    return f;
                }
            }
        }
    }

    pub fn exponent(&self, rng: &mut impl Rng) -> f64 {
        let [lo, hi] = self.exponent_range;
        rng.random_range(lo..=hi)
    }

    /// `(k, t)` of sample `j` on frame `i`; shared by the checks that speak
    /// about the same members.
    pub fn exponent_pair(&self, i: usize, j: usize) -> (f64, f64) {
        let mut rng = self.rng(STREAM_EXPONENTS, (i * self.n_samples + j) as u64);
        (self.exponent(&mut rng), self.exponent(&mut rng))
    }
}
