//! Gelfand-Tsetlin patterns, maximal-area patterns, partition-overlaid
//! patterns (POPs) and the stable bijection between colored partitions and
//! POPs. All arithmetic is exact: entries are `i64`, derived sums use `i128`,
//! and overflow is an error, never a wrap.

pub mod cli;
pub mod error;
pub mod maxarea;
pub mod partition;
pub mod pattern;
pub mod pop;
pub mod seqcore;
pub mod stability;
pub mod verify;

pub use error::{Error, Result};
pub use partition::{Bound, BoxBound, ColoredPartition, Partition, Rectangle};
pub use pattern::GtPattern;
pub use pop::Pop;
pub use seqcore::NonIncSeq;
