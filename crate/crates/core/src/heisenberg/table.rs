use super::DescriptorFrame;
use crate::pauli::{qubit_label, Coefficient, PauliSum};
use serde::{Deserialize, Serialize};

fn cell<C: Coefficient>(x: &PauliSum<C>, z: &PauliSum<C>) -> String {
    format!("{{{x}, {z}}}")
}

/// Renders frames as a descriptor table, one row per time slice and one
/// `{x-descriptor, z-descriptor}` cell per qubit, columns separated by `|`.
pub fn render_table<C: Coefficient>(frames: &[DescriptorFrame<C>]) -> String {
    let Some(first) = frames.first() else {
        return String::new();
    };
    let n = first.n();
    let mut rows: Vec<Vec<String>> = Vec::with_capacity(frames.len() + 1);
    let mut header = vec!["t".to_string()];
    header.extend((0..n).map(|q| format!("Qubit {}", qubit_label(q))));
    rows.push(header);
    for f in frames {
        let mut row = vec![format!("t_{}", f.time_index())];
        row.extend(f.descriptors().iter().map(|d| cell(&d.x, &d.z)));
        rows.push(row);
    }
    let widths: Vec<usize> = (0..=n)
        .map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in &rows {
        let line: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(s, &w)| format!("{s:<w$}"))
            .collect();
        out.push_str(line.join(" | ").trim_end());
        out.push('\n');
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermDump<C> {
    pub coefficient: C,
    pub letters: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QubitDump<C> {
    pub qubit: String,
    pub x: Vec<TermDump<C>>,
    pub z: Vec<TermDump<C>>,
}

/// Structured form of one frame: per qubit, `(coefficient, letters)` pairs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrameDump<C> {
    pub time_index: usize,
    pub qubits: Vec<QubitDump<C>>,
}

impl<C: Coefficient> FrameDump<C> {
    pub fn from_frame(frame: &DescriptorFrame<C>) -> Self {
        let terms = |s: &PauliSum<C>| {
            s.terms()
                .map(|(w, c)| TermDump {
                    coefficient: c.clone(),
                    letters: w.compact(),
                })
                .collect()
        };
        FrameDump {
            time_index: frame.time_index(),
            qubits: frame
                .descriptors()
                .iter()
                .enumerate()
                .map(|(q, d)| QubitDump {
                    qubit: qubit_label(q),
                    x: terms(&d.x),
                    z: terms(&d.z),
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn single_frame_table_has_header_and_one_row() {
        let f = DescriptorFrame::<Complex64>::init(2);
        let t = render_table(&[f]);
        let lines: Vec<_> = t.lines().collect();
        assert_eq!(lines.len(), 2);
        assert!(lines[0].starts_with("t "));
        assert_eq!(
            lines[1].split_whitespace().collect::<Vec<_>>().join(" "),
            "t_0 | {q_xA, q_zA} | {q_xB, q_zB}"
        );
    }

    #[test]
    fn dump_lists_letters() {
        let f = DescriptorFrame::<Complex64>::init(2);
        let d = FrameDump::from_frame(&f);
        assert_eq!(d.qubits[1].z[0].letters, "IZ");
        assert_eq!(d.qubits[0].x[0].coefficient, Complex64::new(1.0, 0.0));
    }
}
