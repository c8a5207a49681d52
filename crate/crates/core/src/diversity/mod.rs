//! Test-content diversity: distance metrics, the compressor contract, greedy
//! orderings, the distance cache, and history-based diversity.

pub mod cache;
pub mod compressor;
pub mod greedy;
pub mod hbd;
pub mod lz4;
pub mod metric;

pub use cache::{CachedPair, CacheStats, DistanceCache};
pub use compressor::{compressor_by_name, CompressionStream, Compressor, Identity, Lz4};
pub use greedy::{greedy_multiset, greedy_pairwise, join_contents, multiset_score, SEPARATOR};
pub use hbd::order_hbd;
pub use metric::{all_distances, manhattan, ncd, ncd_from_lengths, DiversityContext, Metric};
