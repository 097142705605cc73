use super::LaurentPoly;

/// Incremental fraction-free (Bareiss) row echelon form over `Z[v, v^-1]`.
///
/// Rows are inserted one at a time. A stored row is exactly the row the
/// classical one-shot Bareiss algorithm would have produced at that stage, so
/// every entry is a minor of the input and all divisions are exact.
#[derive(Debug, Clone)]
pub struct Echelon {
    dim: usize,
    rows: Vec<Vec<LaurentPoly>>,
    pivot_cols: Vec<usize>,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Self { dim, rows: Vec::new(), pivot_cols: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// The last pivot: a nonzero maximal minor of the inserted rows. Any vector
    /// in the span is a combination of the inputs with coefficients in
    /// `Z[v, v^-1]` divided by this element.
    pub fn certificate_denominator(&self) -> LaurentPoly {
        self.rows
            .last()
            .map(|r| r[*self.pivot_cols.last().unwrap()].clone())
            .unwrap_or_else(LaurentPoly::one)
    }

    /// Runs `t` through every stored row. The result is zero iff `t` lies in
    /// the span over the fraction field.
    pub fn reduce(&self, t: &[LaurentPoly]) -> Vec<LaurentPoly> {
        assert_eq!(t.len(), self.dim, "vector dimension mismatch");
        let mut t = t.to_vec();
        let mut prev = LaurentPoly::one();
        for (row, &c) in self.rows.iter().zip(&self.pivot_cols) {
            let p = &row[c];
            let f = std::mem::take(&mut t[c]);
            for j in 0..self.dim {
                if j == c {
                    continue;
                }
                let mut x = p * &t[j];
                if !f.is_zero() && !row[j].is_zero() {
                    x -= &f * &row[j];
                }
                t[j] = if prev.is_one() {
                    x
                } else {
                    x.exact_div(&prev).expect("Bareiss step must divide exactly")
                };
            }
            prev = p.clone();
        }
        t
    }

    /// Inserts `t`; returns true when the rank grew.
    pub fn insert(&mut self, t: &[LaurentPoly]) -> bool {
        let r = self.reduce(t);
        match r.iter().position(|x| !x.is_zero()) {
            Some(c) => {
                self.rows.push(r);
                self.pivot_cols.push(c);
                true
            }
            None => false,
        }
    }

    pub fn contains(&self, t: &[LaurentPoly]) -> bool {
        if self.rank() == self.dim {
            assert_eq!(t.len(), self.dim, "vector dimension mismatch");
            return true;
        }
        self.reduce(t).iter().all(LaurentPoly::is_zero)
    }
}

/// Rank over the fraction field of `Z[v]`.
pub fn rank(vectors: &[Vec<LaurentPoly>]) -> usize {
    let Some(first) = vectors.first() else { return 0 };
    let mut e = Echelon::new(first.len());
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

/// Whether `target` lies in the span of `vectors` over the fraction field.
///
/// Panics when dimensions disagree.
pub fn membership(vectors: &[Vec<LaurentPoly>], target: &[LaurentPoly]) -> bool {
    let mut e = Echelon::new(target.len());
    for v in vectors {
        assert_eq!(v.len(), target.len(), "vector dimension mismatch");
        e.insert(v);
    }
    e.contains(target)
}
