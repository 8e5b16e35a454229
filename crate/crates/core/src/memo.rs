use std::sync::{Arc, RwLock};

use crate::exact_arith::ExactInt;

pub(crate) type Row = Arc<[ExactInt]>;

/// Rows of a triangular table where level `n` is computed from level `n - 1`.
///
/// Rows are appended under the write lock only once fully built, so readers
/// never see a partial row.
pub(crate) struct LevelCache {
    rows: RwLock<Vec<Row>>,
    build: fn(usize, Option<&[ExactInt]>) -> Vec<ExactInt>,
}

impl LevelCache {
    pub(crate) const fn new(build: fn(usize, Option<&[ExactInt]>) -> Vec<ExactInt>) -> Self {
        Self {
            rows: RwLock::new(Vec::new()),
            build,
        }
    }

    pub(crate) fn row(&self, level: usize) -> Row {
        if let Some(row) = self.rows.read().unwrap().get(level) {
            return Arc::clone(row);
        }
        let mut rows = self.rows.write().unwrap();
        while rows.len() <= level {
            let next = (self.build)(rows.len(), rows.last().map(|r| &r[..]));
            rows.push(next.into());
        }
        Arc::clone(&rows[level])
    }
}
