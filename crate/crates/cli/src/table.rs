//! Plain aligned text tables.

pub struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table { header: header.iter().map(|h| h.to_string()).collect(), rows: Vec::new() }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        self.rows.push(cells);
    }

    /// First column left-aligned, the rest right-aligned.
    pub fn render(&self) -> String {
        let ncols = self.header.len();
        let mut width = vec![0; ncols];
        for r in std::iter::once(&self.header).chain(&self.rows) {
            for (w, c) in width.iter_mut().zip(r) {
                *w = (*w).max(c.chars().count());
            }
        }
        let line = |r: &[String]| {
            let cells: Vec<String> = r
                .iter()
                .enumerate()
                .map(|(i, c)| if i == 0 { format!("{c:<w$}", w = width[i]) } else { format!("{c:>w$}", w = width[i]) })
                .collect();
            let mut s = cells.join("  ").trim_end().to_string();
            s.push('\n');
            s
        };
        let mut out = line(&self.header);
        let total = width.iter().sum::<usize>() + 2 * ncols.saturating_sub(1);
        out.push_str(&"-".repeat(total));
        out.push('\n');
        for r in &self.rows {
            out.push_str(&line(r));
        }
        out
    }
}

/// An integer matrix with labelled rows and columns.
pub fn matrix_table(row_prefix: &str, col_prefix: &str, m: &[Vec<usize>]) -> String {
    let cols = m.first().map_or(0, Vec::len);
    let mut header = vec![String::new()];
    header.extend((0..cols).map(|j| format!("{col_prefix}{j}")));
    let mut t = Table { header, rows: Vec::new() };
    for (i, r) in m.iter().enumerate() {
        let mut cells = vec![format!("{row_prefix}{i}")];
        cells.extend(r.iter().map(usize::to_string));
        t.row(cells);
    }
    t.render()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn columns_align() {
        let mut t = Table::new(&["simple", "dim"]);
        t.row(vec!["S0".into(), "1".into()]);
        t.row(vec!["S10".into(), "12".into()]);
        assert_eq!(t.render(), "simple  dim\n-----------\nS0        1\nS10      12\n");
    }

    #[test]
    fn matrix_labels() {
        let s = matrix_table("S", "T", &[vec![2, 1], vec![1, 2]]);
        assert_eq!(s, "    T0  T1\n----------\nS0   2   1\nS1   1   2\n");
    }
}
