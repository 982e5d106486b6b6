//! Published reference values for cyclic group codes.
//!
//! Rows are `(M, bound, optimum, heuristic)` rounded to three decimals.

/// `n = 4` (`k = 2`).
pub const N4_RESULTS: [(u64, f64, f64, f64); 15] = [
    (10, 1.474, 1.224, 1.224),
    (20, 1.054, 0.959, 0.917),
    (30, 0.864, 0.831, 0.769),
    (40, 0.750, 0.714, 0.707),
    (50, 0.672, 0.628, 0.609),
    (100, 0.476, 0.468, 0.433),
    (200, 0.337, 0.330, 0.317),
    (300, 0.275, 0.273, 0.259),
    (400, 0.238, 0.237, 0.221),
    (500, 0.213, 0.211, 0.200),
    (600, 0.194, 0.193, 0.180),
    (700, 0.180, 0.180, 0.167),
    (800, 0.168, 0.168, 0.162),
    (900, 0.159, 0.158, 0.148),
    (1000, 0.150, 0.149, 0.146),
];

/// `n = 6` (`k = 3`).
pub const N6_RESULTS: [(u64, f64, f64, f64); 15] = [
    (10, 1.820, 1.414, 1.345),
    (20, 1.465, 1.240, 1.190),
    (30, 1.287, 1.133, 1.056),
    (40, 1.173, 1.044, 1.007),
    (50, 1.091, 0.976, 0.946),
    (100, 0.870, 0.804, 0.786),
    (200, 0.692, 0.673, 0.633),
    (300, 0.605, 0.585, 0.568),
    (400, 0.550, 0.540, 0.525),
    (500, 0.511, 0.504, 0.479),
    (600, 0.481, 0.472, 0.458),
    (700, 0.457, 0.445, 0.439),
    (800, 0.437, 0.427, 0.415),
    (900, 0.420, 0.413, 0.403),
    (1000, 0.406, 0.397, 0.394),
];

/// Heuristic distances for `n = 48`, `M = 2^6..2^19`, at `Q = 512, 1024, 1536, 2048`.
pub const N48_HEURISTIC: [(u64, [f64; 4]); 14] = [
    (64, [1.27269, 1.28386, 1.2859, 1.29514]),
    (128, [1.21733, 1.21962, 1.23481, 1.23481]),
    (256, [1.15941, 1.16528, 1.16905, 1.23721]),
    (512, [1.13819, 1.19334, 1.19334, 1.19334]),
    (1024, [1.11273, 1.12457, 1.12457, 1.12457]),
    (2048, [1.09191, 1.09191, 1.09191, 1.09191]),
    (4096, [1.06506, 1.06506, 1.07339, 1.07339]),
    (8192, [0.99974, 1.02577, 1.02577, 1.03603]),
    (16384, [1.02518, 1.03103, 1.03103, 1.03103]),
    (32768, [0.98699, 1.01643, 1.01643, 1.01643]),
    (65536, [0.99445, 0.99445, 0.99445, 0.99445]),
    (131072, [0.94748, 0.94748, 0.96942, 0.96942]),
    (262144, [0.95448, 0.95448, 0.95565, 0.95966]),
    (524288, [0.91805, 0.95606, 0.95606, 0.95606]),
];

/// Candidate counts matching the columns of [`N48_HEURISTIC`].
pub const N48_CANDIDATES: [usize; 4] = [512, 1024, 1536, 2048];
