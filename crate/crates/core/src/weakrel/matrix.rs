use std::collections::BTreeSet;
use std::fmt;

/// What is known about a matrix's closed form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    Unknown,
    Closed,
    /// Closed before the rows and columns of these indices were modified.
    Dirty(BTreeSet<usize>),
}

impl Status {
    pub(crate) fn touch(&self, idx: &[usize]) -> Status {
        match self {
            Status::Unknown => Status::Unknown,
            Status::Closed => Status::Dirty(idx.iter().copied().collect()),
            Status::Dirty(s) => {
                let mut s = s.clone();
                s.extend(idx.iter().copied());
                Status::Dirty(s)
            }
        }
    }
}

#[derive(Clone)]
pub(crate) enum Body<E> {
    Empty,
    Cells { cells: Vec<E>, status: Status },
}

/// A coherent `n × n` matrix of basis elements; cell `(i, j)` bounds
/// `v_j - v_i`. The empty matrix is a separate canonical value.
#[derive(Clone)]
pub struct ConstraintMatrix<E> {
    pub(crate) n: usize,
    pub(crate) body: Body<E>,
}

impl<E> ConstraintMatrix<E> {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_empty_state(&self) -> bool {
        matches!(self.body, Body::Empty)
    }

    pub fn status(&self) -> Option<&Status> {
        match &self.body {
            Body::Empty => None,
            Body::Cells { status, .. } => Some(status),
        }
    }

    pub fn is_closed(&self) -> bool {
        matches!(
            self.body,
            Body::Empty
                | Body::Cells {
                    status: Status::Closed,
                    ..
                }
        )
    }

    /// `None` for the empty matrix.
    pub fn cell(&self, i: usize, j: usize) -> Option<&E> {
        match &self.body {
            Body::Empty => None,
            Body::Cells { cells, .. } => Some(&cells[i * self.n + j]),
        }
    }

    pub(crate) fn empty(n: usize) -> Self {
        ConstraintMatrix {
            n,
            body: Body::Empty,
        }
    }
}

/// Representation equality; the closure cache is ignored.
impl<E: PartialEq> PartialEq for ConstraintMatrix<E> {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && match (&self.body, &other.body) {
                (Body::Empty, Body::Empty) => true,
                (Body::Cells { cells: a, .. }, Body::Cells { cells: b, .. }) => a == b,
                _ => false,
            }
    }
}

impl<E: Eq> Eq for ConstraintMatrix<E> {}

impl<E: fmt::Display> fmt::Debug for ConstraintMatrix<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.body {
            Body::Empty => write!(f, "Empty({})", self.n),
            Body::Cells { cells, status } => {
                writeln!(f, "{status:?}")?;
                for row in cells.chunks(self.n) {
                    let row: Vec<String> = row.iter().map(|e| e.to_string()).collect();
                    writeln!(f, "  {}", row.join(" "))?;
                }
                Ok(())
            }
        }
    }
}
