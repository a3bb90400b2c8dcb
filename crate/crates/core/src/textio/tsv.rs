use crate::graphnum::{CountMatrix, LogInterval, LogValue};

/// A named table of string cells.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Self { header: header.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn push<S: Into<String>>(&mut self, row: impl IntoIterator<Item = S>) {
        self.rows.push(row.into_iter().map(Into::into).collect());
    }

    pub fn to_tsv(&self) -> String {
        let mut out = self.header.join("\t");
        out.push('\n');
        for row in &self.rows {
            out += &row.join("\t");
            out.push('\n');
        }
        out
    }
}

/// Tables separated by one blank line.
pub fn emit_tsv(tables: &[Table]) -> String {
    tables.iter().map(Table::to_tsv).collect::<Vec<_>>().join("\n")
}

/// `exact=...` and `decimal=...` as two tab-separated fields.
pub fn log_fields(v: &LogValue) -> String {
    format!("exact={}\tdecimal={}", v.exact_string(), v.decimal_string())
}

/// `lo=...` and `hi=...` as two tab-separated fields.
pub fn interval_fields(v: &LogInterval) -> String {
    format!("lo={:.12}\thi={:.12}", v.lo, v.hi)
}

/// A matrix as a table whose first column holds the row labels.
pub fn matrix_table(corner: &str, m: &CountMatrix) -> Table {
    let mut t = Table::new(std::iter::once(corner.to_string()).chain(m.labels().iter().cloned()));
    for i in 0..m.order() {
        t.push(std::iter::once(m.labels()[i].clone()).chain((0..m.order()).map(|j| m.get(i, j).to_string())));
    }
    t
}
