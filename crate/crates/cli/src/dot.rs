use std::fmt::Write;

fn quote(label: &str) -> String {
    format!("\"{}\"", label.replace('\\', "\\\\").replace('"', "\\\""))
}

/// A digraph with one node per point and an edge `x -> g(x)` for every
/// point; fixed points get self-loops.
pub fn endofunction_dot(name: &str, labels: &[String], g: &[usize]) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {name} {{").unwrap();
    for l in labels {
        writeln!(out, "    {};", quote(l)).unwrap();
    }
    for (x, &y) in g.iter().enumerate() {
        writeln!(out, "    {} -> {};", quote(&labels[x]), quote(&labels[y])).unwrap();
    }
    writeln!(out, "}}").unwrap();
    out
}
