use serde::Serialize;

use crate::rootsys::{GenSet, WeylElement, WeylGroup};

type Matrix = Vec<Vec<i64>>;

/// An element `w eps^k` of the extended group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Extended {
    pub w: WeylElement,
    pub k: usize,
}

/// The facets of the root hyperplane arrangement on the span of the coroots.
/// Facets of type `J` are the cosets `w W_J`, with `w F_J` spanning the image
/// under `w` of the span of the fundamental coweights outside `J`.
///
/// Linear maps are written in fundamental-coweight coordinates.
#[derive(Debug)]
pub struct FacetComplex<'a> {
    group: &'a WeylGroup,
    simple: Vec<Matrix>,
    eps: Matrix,
    types: Vec<(GenSet, Vec<WeylElement>)>,
}

impl<'a> FacetComplex<'a> {
    pub fn new(group: &'a WeylGroup) -> Self {
        let r = group.rank();
        let a = group.datum().cartan();
        let simple = (0..r)
            .map(|i| {
                let mut m = identity(r);
                for j in 0..r {
                    m[j][i] -= a[i][j];
                }
                m
            })
            .collect();
        let mut eps = vec![vec![0; r]; r];
        for (i, &e) in group.datum().eps().iter().enumerate() {
            eps[e][i] = 1;
        }
        let types = GenSet::all_subsets(r).map(|j| (j, group.min_parabolic_reps(j))).collect();
        Self { group, simple, eps, types }
    }

    pub fn group(&self) -> &WeylGroup {
        self.group
    }

    /// All `w eps^k` with `0 <= k < order(eps)`.
    pub fn elements(&self) -> Vec<Extended> {
        (0..self.group.eps_order())
            .flat_map(|k| self.group.elements().map(move |w| Extended { w, k }))
            .collect()
    }

    /// Number of facets of type `J`.
    pub fn count(&self, j: GenSet) -> usize {
        self.types[j.0 as usize].1.len()
    }

    pub fn weyl_matrix(&self, w: WeylElement) -> Matrix {
        self.group.word(w).iter().fold(identity(self.group.rank()), |m, &i| mat_mul(&m, &self.simple[i as usize]))
    }

    pub fn matrix(&self, g: Extended) -> Matrix {
        let mut m = self.weyl_matrix(g.w);
        for _ in 0..g.k {
            m = mat_mul(&m, &self.eps);
        }
        m
    }

    /// `w eps^k (x)` for a facet `x W_J`, as the representative of the image
    /// coset and its type.
    fn act_on_facet(&self, g: Extended, x: WeylElement, j: GenSet) -> (WeylElement, GenSet) {
        let grp = self.group;
        let ex = grp.mul(g.w, grp.eps_pow(x, g.k));
        let mut jk = j;
        for _ in 0..g.k {
            jk = jk.image(grp.datum().eps());
        }
        (grp.parabolic_decompose(ex, jk).0, jk)
    }

    /// Trace of `g` on the sum of top exterior powers of the spans of the
    /// facets of type `J`: a sum over fixed facets of determinants.
    pub fn trace(&self, g: Extended, j: GenSet) -> i64 {
        let grp = self.group;
        let rest: Vec<usize> = (0..grp.rank()).filter(|&i| !j.contains(i)).collect();
        let m = self.matrix(g);
        let mut total = 0;
        for &x in &self.types[j.0 as usize].1 {
            let (y, jk) = self.act_on_facet(g, x, j);
            if jk != j || y != x {
                continue;
            }
            let conj = mat_mul(&mat_mul(&self.weyl_matrix(grp.inverse(x)), &m), &self.weyl_matrix(x));
            let sub: Matrix = rest.iter().map(|&a| rest.iter().map(|&b| conj[a][b]).collect()).collect();
            total += det(sub);
        }
        total
    }

    /// `det(g)` on the whole span and both sides of the identity.
    pub fn sides(&self, g: Extended) -> (i64, i64) {
        let r = self.group.rank();
        let mut lhs = det(self.matrix(g));
        let mut rhs = 0;
        for (j, _) in &self.types {
            let t = self.trace(g, *j);
            if (r - j.len()) % 2 == r % 2 {
                rhs += t;
            } else {
                lhs += t;
            }
        }
        (lhs, rhs)
    }

    pub fn render(&self, g: Extended) -> String {
        let word = self.group.render_word(g.w);
        let twist = match g.k {
            0 => String::new(),
            1 => "eps".to_string(),
            k => format!("eps^{k}"),
        };
        match (word.is_empty(), twist.is_empty()) {
            (true, true) => "1".to_string(),
            (true, false) => twist,
            (false, true) => word,
            (false, false) => format!("{word} {twist}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FacetRow {
    pub element: String,
    pub lhs_trace: i64,
    pub rhs_trace: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FacetReport {
    pub rows: Vec<FacetRow>,
    pub pass: bool,
}

/// Compares the traces of both sides of the facet identity on every element
/// of the extended group.
pub fn facet_identity_check(group: &WeylGroup) -> FacetReport {
    let fc = FacetComplex::new(group);
    let rows: Vec<FacetRow> = fc
        .elements()
        .into_iter()
        .map(|g| {
            let (lhs, rhs) = fc.sides(g);
            FacetRow { element: fc.render(g), lhs_trace: lhs, rhs_trace: rhs }
        })
        .collect();
    FacetReport { pass: rows.iter().all(|r| r.lhs_trace == r.rhs_trace), rows }
}

fn identity(r: usize) -> Matrix {
    (0..r).map(|i| (0..r).map(|j| i64::from(i == j)).collect()).collect()
}

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    (0..n)
        .map(|i| (0..m).map(|j| (0..b.len()).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

/// Fraction-free determinant.
fn det(mut m: Matrix) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut sign = 1;
    let mut prev = 1;
    for k in 0..n {
        if m[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| m[i][k] != 0) else { return 0 };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}
