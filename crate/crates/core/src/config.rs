/// Tunables shared by the counting, search and factoring routines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Config {
    /// Worker threads for partitioned loops. `1` runs everything inline.
    pub workers: usize,
    /// Seed for the equal-degree splitter in factorization.
    pub seed: u64,
    /// Largest field size for which quadratic-character tables are built.
    pub table_threshold: u64,
    /// Largest field size `count_points` will enumerate.
    pub point_cap: u64,
    /// Iteration cap for the continued-fraction unit search.
    pub cf_step_cap: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            workers: 1,
            seed: 0x5eed_cafe,
            table_threshold: 1 << 24,
            point_cap: 1 << 28,
            cf_step_cap: 10_000,
        }
    }
}

impl Config {
    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }

    /// Runs `f` on a dedicated pool sized to `workers`, or inline when single-threaded.
    pub(crate) fn install<R: Send>(&self, f: impl FnOnce() -> R + Send) -> R {
        if self.workers <= 1 {
            return f();
        }
        match rayon::ThreadPoolBuilder::new()
            .num_threads(self.workers)
            .build()
        {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        }
    }
}
