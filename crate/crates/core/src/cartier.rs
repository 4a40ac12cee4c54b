//! Cartier-Manin matrix of a smooth plane quintic in characteristic 2, and
//! the p-rank / a-number read off it.
//!
//! On an affine chart where the curve is F(x,y) = 0 with F_y != 0, the six
//! differentials x^{k-1} y^{l-1} dx / F_y (k,l >= 1, k+l <= 4) form a basis
//! of the regular 1-forms, and the Cartier operator acts through square
//! roots of the coefficients of F: the matrix entry at row (i,j), column
//! (k,l) is F_{2i-k, 2j-l}^{1/2}, with out-of-range indices contributing 0.

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::linalg::Matrix;
use crate::poly::{projective_is_empty, Form, Ideal};

/// Row/column index order of the 6x6 Cartier-Manin matrix: the pairs (k,l)
/// with k,l >= 1 and k+l <= 4, listed lexicographically.
pub const BASIS_INDICES: [(u16, u16); 6] = [(1, 1), (1, 2), (1, 3), (2, 1), (2, 2), (3, 1)];

/// A smooth plane quintic with a chosen affine chart.
///
/// The chart sets one coordinate to 1 and names the other two (x, y); it is
/// valid when F_y != 0, which in characteristic 2 means some monomial of F
/// has odd y-degree. The default chart is (x, y, 1) with fallback through
/// the other five charts in a fixed order.
#[derive(Debug, Clone)]
pub struct PlaneQuintic {
    field: Field,
    form: Form,
    chart: Chart,
    /// coefficient table of the dehomogenized F: coeffs[a][b] is the
    /// coefficient of x^a y^b
    table: [[FieldElement; 6]; 6],
}

/// (x variable, y variable, variable set to 1)
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Chart {
    pub x: usize,
    pub y: usize,
    pub at_one: usize,
}

const CHART_ORDER: [Chart; 6] = [
    Chart { x: 0, y: 1, at_one: 2 },
    Chart { x: 1, y: 0, at_one: 2 },
    Chart { x: 0, y: 2, at_one: 1 },
    Chart { x: 2, y: 0, at_one: 1 },
    Chart { x: 1, y: 2, at_one: 0 },
    Chart { x: 2, y: 1, at_one: 0 },
];

impl PlaneQuintic {
    /// Validate smoothness and pick the first valid chart.
    pub fn new(form: Form, budget: &Budget) -> Result<PlaneQuintic> {
        let field = form.field();
        if field.characteristic() != 2 {
            return Err(Error::WrongCharacteristic { expected: 2, got: field.characteristic() });
        }
        if form.nvars() != 3 {
            return Err(Error::DimensionMismatch { expected: 3, got: form.nvars() });
        }
        form.expect_homogeneous_of_degree(5)?;
        if !projective_is_empty(&Ideal::jacobian(&form), budget)? {
            return Err(Error::NotSmooth { what: "plane quintic".into() });
        }
        let chart = *CHART_ORDER
            .iter()
            .find(|c| chart_is_valid(&form, c))
            .ok_or(Error::ChartInvalid)?;
        let table = dehomogenized_table(&form, &chart);
        Ok(PlaneQuintic { field, form, chart, table })
    }

    /// Same quintic, forced onto a specific chart (used to check chart
    /// independence of the invariants).
    pub fn with_chart(form: Form, chart: Chart, budget: &Budget) -> Result<PlaneQuintic> {
        let base = PlaneQuintic::new(form.clone(), budget)?;
        if !chart_is_valid(&form, &chart) {
            return Err(Error::ChartInvalid);
        }
        let table = dehomogenized_table(&form, &chart);
        Ok(PlaneQuintic { chart, table, ..base })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn form(&self) -> &Form {
        &self.form
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    /// Coefficient of x^a y^b in the dehomogenized equation.
    pub fn coefficient(&self, a: usize, b: usize) -> FieldElement {
        self.table[a][b]
    }

    pub fn cartier_matrix(&self) -> Result<CartierMatrix> {
        let m = cartier_matrix_from_table(self.field, &self.table)?;
        Ok(m)
    }
}

fn chart_is_valid(form: &Form, chart: &Chart) -> bool {
    // F_y != 0 iff some monomial has odd y-degree (characteristic 2)
    form.terms().iter().any(|(m, _)| m.0[chart.y] % 2 == 1)
}

fn dehomogenized_table(form: &Form, chart: &Chart) -> [[FieldElement; 6]; 6] {
    let f = form.field();
    let mut table = [[f.zero(); 6]; 6];
    for (m, c) in form.terms() {
        let a = m.0[chart.x] as usize;
        let b = m.0[chart.y] as usize;
        table[a][b] = f.add(table[a][b], *c);
    }
    table
}

/// The 6x6 matrix of the Cartier operator in the monomial-differential
/// basis, over the quintic's base field.
#[derive(Debug, Clone, PartialEq)]
pub struct CartierMatrix {
    matrix: Matrix,
}

/// Entry rule: M[(i,j), (k,l)] = F_{2i-k, 2j-l}^{1/2}. Exposed at the table
/// level so the rule itself is testable in isolation.
pub fn cartier_matrix_from_table(field: Field, table: &[[FieldElement; 6]; 6]) -> Result<CartierMatrix> {
    if field.characteristic() != 2 {
        return Err(Error::WrongCharacteristic { expected: 2, got: field.characteristic() });
    }
    let mut m = Matrix::zero(field, 6, 6);
    for (row, &(i, j)) in BASIS_INDICES.iter().enumerate() {
        for (col, &(k, l)) in BASIS_INDICES.iter().enumerate() {
            let a = 2 * i as i32 - k as i32;
            let b = 2 * j as i32 - l as i32;
            if (0..6).contains(&a) && (0..6).contains(&b) {
                m[(row, col)] = field.sqrt_char2(table[a as usize][b as usize])?;
            }
        }
    }
    Ok(CartierMatrix { matrix: m })
}

impl CartierMatrix {
    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn field(&self) -> Field {
        self.matrix.field()
    }

    /// Entries as element strings, row-major.
    pub fn rows_display(&self) -> Vec<Vec<String>> {
        (0..6)
            .map(|i| (0..6).map(|j| self.matrix[(i, j)].to_string()).collect())
            .collect()
    }

    /// (p_rank, a_number): the a-number is 6 - rank(M); the p-rank is the
    /// rank of the 6-fold semilinear composite, computed as the product
    /// M^(sigma^5) ... M^(sigma) M with sigma the entrywise p-power
    /// Frobenius. Over the prime field this is just M^6.
    pub fn ranks(&self) -> (u32, u32) {
        let g = 6u32;
        let a_number = g - self.matrix.rank() as u32;
        let mut product = self.matrix.clone();
        let mut twisted = self.matrix.clone();
        for _ in 1..g {
            twisted = frobenius_entrywise(&twisted);
            product = twisted.mul(&product);
        }
        let p_rank = product.rank() as u32;
        (p_rank, a_number)
    }
}

fn frobenius_entrywise(m: &Matrix) -> Matrix {
    let f = m.field();
    let mut out = Matrix::zero(f, m.nrows(), m.ncols());
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            out[(i, j)] = f.frobenius(m[(i, j)]);
        }
    }
    out
}
