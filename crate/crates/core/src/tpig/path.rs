/// The vertex set `[a, b]` of a tree path, named by its endpoints, or the
/// empty set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct PathHandle(Option<(usize, usize)>);

impl PathHandle {
    pub const EMPTY: PathHandle = PathHandle(None);

    pub const fn new(a: usize, b: usize) -> Self {
        PathHandle(Some((a, b)))
    }

    pub fn endpoints(&self) -> Option<(usize, usize)> {
        self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_none()
    }

    /// Same path regardless of endpoint order.
    pub fn same_set(&self, other: &PathHandle) -> bool {
        match (self.0, other.0) {
            (None, None) => true,
            (Some((a, b)), Some((c, d))) => (a, b) == (c, d) || (a, b) == (d, c),
            _ => false,
        }
    }
}

impl From<(usize, usize)> for PathHandle {
    fn from((a, b): (usize, usize)) -> Self {
        PathHandle::new(a, b)
    }
}
