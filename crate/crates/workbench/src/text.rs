//! Plain-text rendering of a result document.

use std::fmt::Write;

use crate::doc::*;

/// Left-aligned columns separated by two spaces.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut width: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, c) in width.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cells: Vec<&str>| {
        let mut s = String::from("    ");
        for (i, (c, w)) in cells.iter().zip(&width).enumerate() {
            if i + 1 == cells.len() {
                s.push_str(c);
            } else {
                let _ = write!(s, "{c:<w$}  ");
            }
        }
        out.push_str(s.trim_end());
        out.push('\n');
    };
    line(header.to_vec());
    for r in rows {
        line(r.iter().map(String::as_str).collect());
    }
    out
}

fn list(v: &[String]) -> String {
    format!("({})", v.join(", "))
}

fn verdict_line(v: &VerdictDoc) -> String {
    let mut s = format!("{} via {}", v.status, v.route);
    if let Some(c) = &v.certificate {
        let _ = write!(s, ", certificate {c}");
    }
    if let Some([a, b]) = v.e_range {
        let _ = write!(s, " for e={a}..{b}");
    }
    if let Some(e) = v.stabilized_at {
        let _ = write!(s, ", chain stable at e={e}");
    }
    for r in &v.refutations {
        match r.failing_e {
            Some(e) => {
                let _ = write!(s, "; ({})^{} fails at e={e}", r.candidate, r.power);
            }
            None => {
                let _ = write!(s, "; ({})^{} not refuted", r.candidate, r.power);
            }
        }
    }
    s
}

fn entry_rows(es: &[ColonEntryDoc]) -> Vec<Vec<String>> {
    es.iter().map(|e| vec![e.generator.clone(), verdict_line(&e.verdict)]).collect()
}

fn fraction_line(f: &FractionDoc) -> String {
    format!("{} (degree {})", f.fraction, f.degree)
}

fn flag(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn payload(p: &Payload) -> String {
    let mut o = String::new();
    match p {
        Payload::Hull(h) => {
            let gens: Vec<String> = h.generators.iter().map(|g| g.generator.clone()).collect();
            let _ = writeln!(o, "  hull {} (bound {}, sweeps {}{})", list(&gens), h.bound, h.sweeps, if h.fixed_point { "" } else { ", no fixed point" });
            let rows: Vec<Vec<String>> = h
                .generators
                .iter()
                .filter_map(|g| g.verdict.as_ref().map(|v| vec![g.generator.clone(), verdict_line(v)]))
                .collect();
            if !rows.is_empty() {
                o.push_str(&table(&["added", "verdict"], &rows));
            }
        }
        Payload::Verdict(v) => {
            let _ = writeln!(o, "  {}: {}", v.element, verdict_line(v));
            if !v.chain.is_empty() {
                let rows = v.chain.iter().map(|c| vec![c.e.to_string(), format!("{:?}", c.dims)]).collect::<Vec<_>>();
                o.push_str(&table(&["e", "kernel dims by degree"], &rows));
            }
        }
        Payload::Certificate(c) => certificate(&mut o, c),
        Payload::Persistence(pd) => {
            let _ = writeln!(o, "  before");
            certificate(&mut o, &pd.source);
            let _ = writeln!(o, "  after quotient by {}", list(&pd.quotient_by));
            certificate(&mut o, &pd.target);
            let _ = writeln!(o, "  preserved: {}", flag(pd.preserved));
        }
        Payload::PlusWitness(w) => {
            let _ = writeln!(o, "  witness {}; {}", if w.holds { "holds" } else { "fails" }, verdict_line(&w.verdict));
        }
        Payload::Bracket(b) => {
            let _ = writeln!(o, "  I^[{}] = {}", b.q, list(&b.generators));
            let _ = writeln!(o, "  groebner basis {}", list(&b.groebner_basis));
        }
        Payload::Jacobian(c) => {
            let _ = writeln!(o, "  test element candidates {}", list(c));
        }
        Payload::Parameters(pd) => {
            let _ = writeln!(o, "  {} in dimension {}", list(&pd.elements), pd.dimension);
            let _ = writeln!(o, "  system of parameters: {}  full: {}", flag(pd.parameter_system), flag(pd.full));
            if !pd.regular_sequence.is_empty() {
                let r: Vec<&str> = pd.regular_sequence.iter().map(|&b| flag(b)).collect();
                let _ = writeln!(o, "  regular steps: {}  cohen-macaulay: {}", r.join(" "), flag(pd.cohen_macaulay));
            }
        }
        Payload::ColonCapture(rs) => {
            for r in rs {
                let _ = writeln!(o, "  i={} colon {} captured: {}", r.index, list(&r.colon), flag(r.captured));
                if !r.outside.is_empty() {
                    o.push_str(&table(&["outside", "verdict"], &entry_rows(&r.outside)));
                }
            }
        }
        Payload::MonomialColon(m) => {
            let _ = writeln!(o, "  t={} colon {}", m.t, list(&m.colon));
            let _ = writeln!(o, "  target {}{}", list(&m.target), if m.heuristic { " (heuristic)" } else { "" });
            if !m.entries.is_empty() {
                o.push_str(&table(&["element", "verdict"], &entry_rows(&m.entries)));
            }
        }
        Payload::IntegralClosure(c) => {
            let _ = writeln!(o, "  closure {}{}", list(&c.generators), if c.ambient { " (ambient ring)" } else { "" });
            for f in &c.facets {
                let _ = writeln!(o, "    {f}");
            }
        }
        Payload::BrianconSkoda(b) => {
            let _ = writeln!(o, "  mu={} closure of I^mu {}", b.mu, list(&b.closure));
            let _ = writeln!(o, "  holds: {}", flag(b.holds));
            if !b.violators.is_empty() {
                let _ = writeln!(o, "  violators {}", list(&b.violators));
            }
        }
        Payload::Mather(m) => {
            let _ = writeln!(o, "  f^{} in {}: {}", m.power, list(&m.jacobian), flag(m.holds));
            let _ = writeln!(o, "  reduction steps {}  good prime: {}", m.trace_steps, flag(m.good_prime));
        }
        Payload::Probe(pr) => {
            let _ = writeln!(o, "  {} (bound {})", pr.headline, pr.bound);
            let rows: Vec<Vec<String>> = pr
                .entries
                .iter()
                .map(|e| {
                    let extras: Vec<String> = e.extras.iter().map(|x| x.generator.clone()).collect();
                    vec![list(&e.ideal), flag(e.closed).into(), list(&extras)]
                })
                .collect();
            o.push_str(&table(&["ideal", "closed", "extras"], &rows));
        }
        Payload::Hk(h) => {
            let rows: Vec<Vec<String>> = h
                .rows
                .iter()
                .map(|r| vec![r.e.to_string(), r.q.to_string(), r.length.to_string(), r.normalized.exact.clone(), r.normalized.decimal.clone()])
                .collect();
            o.push_str(&table(&["e", "q", "length", "length/q^d", "decimal"], &rows));
            let _ = writeln!(o, "  trend {}", h.trend);
            if let Some([lo, hi]) = &h.multiplicity_interval {
                let _ = writeln!(o, "  multiplicity in [{}, {}]", lo.decimal, hi.decimal);
            }
        }
        Payload::Hs(h) => {
            let rows: Vec<Vec<String>> = h
                .rows
                .iter()
                .map(|r| vec![r.n.to_string(), r.length.to_string(), r.normalized.exact.clone(), r.normalized.decimal.clone()])
                .collect();
            o.push_str(&table(&["n", "length", "length*d!/n^d", "decimal"], &rows));
        }
        Payload::HkCompare(c) => {
            let rows: Vec<Vec<String>> = c
                .rows
                .iter()
                .map(|r| vec![r.e.to_string(), r.q.to_string(), r.smaller.to_string(), r.bigger.to_string(), flag(r.equal).into()])
                .collect();
            o.push_str(&table(&["e", "q", "smaller", "bigger", "equal"], &rows));
        }
        Payload::LcZero(l) => {
            let mut s = format!("  {}: {} by {}", fraction_line(&l.fraction), l.status, l.method);
            if let Some(k) = l.s {
                let _ = write!(s, " (s={k})");
            }
            if let Some(b) = l.bound {
                let _ = write!(s, " (checked s<={b})");
            }
            o.push_str(&s);
            o.push('\n');
        }
        Payload::LcFrobenius(f) => {
            let _ = writeln!(o, "  F^{}: {} -> {}", f.e, fraction_line(&f.source), fraction_line(&f.image));
        }
        Payload::ZeroStar(z) => {
            let _ = writeln!(o, "  {}: {}", fraction_line(&z.fraction), verdict_line(&z.verdict));
        }
        Payload::AInvariant(a) => {
            let _ = writeln!(o, "  a = {a}");
        }
        Payload::Fujita(f) => {
            let _ = writeln!(o, "  degree {} classes, t={}, multiplier degree {}", f.degree, f.t, f.multiplier_degree);
            let rows: Vec<Vec<String>> = f
                .classes
                .iter()
                .map(|c| {
                    vec![
                        c.class.clone(),
                        c.multiplier.clone().unwrap_or_else(|| "-".into()),
                        c.zero_star.as_ref().map(|v| v.status.to_string()).unwrap_or_else(|| "-".into()),
                    ]
                })
                .collect();
            o.push_str(&table(&["class", "multiplier", "zero*"], &rows));
            let _ = writeln!(o, "  all have multiple: {}  consistent: {}", flag(f.all_have_multiple), flag(f.consistent));
        }
        Payload::Kodaira(k) => {
            let _ = writeln!(o, "  a={} floor={} holds: {}{}", k.a_invariant, k.floor, flag(k.holds), if k.heuristic { " (heuristic)" } else { "" });
            let rows: Vec<Vec<String>> = k
                .slices
                .iter()
                .map(|s| vec![s.degree.to_string(), s.right_codim.to_string(), s.joint_codim.to_string(), flag(s.contained).into()])
                .collect();
            o.push_str(&table(&["degree", "right codim", "joint codim", "contained"], &rows));
        }
        Payload::Models(m) => {
            let rows: Vec<Vec<String>> = m
                .fibers
                .iter()
                .map(|f| vec![f.p.to_string(), f.summary.clone(), f.flags.join(",")])
                .collect();
            o.push_str(&table(&["p", "result", "flags"], &rows));
            for s in &m.skipped {
                match s.relation {
                    Some(r) => {
                        let _ = writeln!(o, "  skipped p={}: {} (relation {r})", s.p, s.reason);
                    }
                    None => {
                        let _ = writeln!(o, "  skipped p={}: {}", s.p, s.reason);
                    }
                }
            }
            match &m.consensus {
                Some(c) => {
                    let _ = writeln!(o, "  {}: {c}", m.agreement);
                }
                None => {
                    let _ = writeln!(o, "  {}", m.agreement);
                }
            }
        }
    }
    o
}

fn certificate(o: &mut String, c: &CertificateDoc) {
    let _ = writeln!(o, "  {} * ({})^q in {}^[q]", c.certificate, c.element, list(&c.ideal));
    let rows: Vec<Vec<String>> = c.rows.iter().map(|r| vec![r.e.to_string(), flag(r.holds).into()]).collect();
    o.push_str(&table(&["e", "holds"], &rows));
}

pub fn task(t: &TaskResult) -> String {
    let mut o = format!("[{}] line {}: {}\n", t.index, t.line, t.echo);
    if let Some(p) = &t.result {
        o.push_str(&payload(p));
    }
    if let Some(e) = &t.error {
        let _ = writeln!(o, "  error {}: {}", e.code, e.message);
    }
    if !t.notes.is_empty() {
        let _ = writeln!(o, "  notes: {}", t.notes.join(", "));
    }
    if let Some(ms) = t.timing_ms {
        let _ = writeln!(o, "  time {ms} ms");
    }
    o
}

pub fn document(d: &ResultDocument) -> String {
    d.tasks.iter().map(task).collect::<Vec<_>>().join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn columns_align() {
        let t = table(&["e", "length"], &[vec!["1".into(), "9".into()], vec!["10".into(), "81".into()]]);
        assert_eq!(t, "    e   length\n    1   9\n    10  81\n");
    }
}
