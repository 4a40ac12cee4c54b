/// Resource caps for the enumeration kernels and the Groebner engine.
///
/// All in-scope computations are small; a blown budget almost always means a
/// mistyped input, so we fail loudly instead of truncating.
#[derive(Debug, Clone, Copy)]
pub struct Budget {
    /// Line enumeration allowed for fields with q up to this cardinality.
    pub max_line_field: u64,
    /// Curve point counts allowed while the extension field has q^m at most this.
    pub max_curve_field: u64,
    /// Threefold counts allowed while |P^4(GF(q^m))| is at most this.
    pub max_projective_points: u64,
    /// Hard cap on the total degree of any polynomial produced during Buchberger.
    pub groebner_degree_cap: u32,
    /// Hard cap on the number of S-pairs ever enqueued.
    pub groebner_pair_cap: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_line_field: 16,
            max_curve_field: 4096,
            max_projective_points: 1_000_000_000,
            groebner_degree_cap: 40,
            groebner_pair_cap: 200_000,
        }
    }
}

impl Budget {
    /// Replace every enumeration cap by `n`, keeping the Groebner caps.
    /// This is what the CLI `--budget` flag does.
    pub fn with_enumeration_cap(mut self, n: u64) -> Self {
        self.max_line_field = n;
        self.max_curve_field = n;
        self.max_projective_points = n;
        self
    }
}
