//! Canonical text for scripts; `parse_script(render_script(s))` gives back
//! the same declarations.

use std::fmt::Write;

use tightclosure_core::models::IntPoly;

use crate::script::{Characteristic, Decl, TaskDecl, WorkbenchScript};

/// Integer polynomial in the style of the core renderer: `x^3+y^3-z^3`,
/// `2*x*y`, `0`.
pub fn render_int_poly(terms: &IntPoly, vars: &[String]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, (e, c)) in terms.iter().enumerate() {
        if *c < 0 {
            s.push('-');
        } else if i > 0 {
            s.push('+');
        }
        let mag = c.unsigned_abs();
        let factors: Vec<String> = e
            .iter()
            .zip(vars)
            .filter(|(&k, _)| k > 0)
            .map(|(&k, v)| if k == 1 { v.clone() } else { format!("{v}^{k}") })
            .collect();
        if factors.is_empty() {
            write!(s, "{mag}").unwrap();
        } else {
            if mag != 1 {
                write!(s, "{mag}*").unwrap();
            }
            s.push_str(&factors.join("*"));
        }
    }
    s
}

fn join_polys(ps: &[IntPoly], vars: &[String]) -> String {
    ps.iter().map(|p| render_int_poly(p, vars)).collect::<Vec<_>>().join(", ")
}

pub fn render_task(t: &TaskDecl) -> String {
    let mut s = String::from("task ");
    if t.models {
        write!(s, "models {} {}", t.ring, t.kind).unwrap();
    } else {
        write!(s, "{} {}", t.kind, t.ring).unwrap();
    }
    for a in &t.args {
        write!(s, " {a}").unwrap();
    }
    for o in &t.options {
        let v: Vec<String> = o.values.iter().map(|v| v.to_string()).collect();
        write!(s, " {} {}", o.key, v.join(", ")).unwrap();
    }
    s.push(';');
    s
}

pub fn render_decl(d: &Decl, script: &WorkbenchScript) -> String {
    let vars_of = |ring: &str| script.ring(ring).map(|r| r.vars.clone()).unwrap_or_default();
    match d {
        Decl::Ring(r) => {
            let mut s = format!("ring {} = char ", r.name);
            match r.characteristic {
                Characteristic::Prime(p) => write!(s, "{p}").unwrap(),
                Characteristic::Integers => s.push('Z'),
            }
            write!(s, " vars {}", r.vars.join(", ")).unwrap();
            if let Some(w) = &r.weights {
                let w: Vec<String> = w.iter().map(|x| x.to_string()).collect();
                write!(s, " weights {}", w.join(", ")).unwrap();
            }
            if !r.relations.is_empty() {
                write!(s, " relations {}", join_polys(&r.relations, &r.vars)).unwrap();
            }
            if r.domain {
                s.push_str(" domain");
            }
            s.push(';');
            s
        }
        Decl::Ideal(i) => format!("ideal {} = {};", i.name, join_polys(&i.generators, &vars_of(&i.ring))),
        Decl::Element(e) => format!("element {} = {};", e.name, render_int_poly(&e.value, &vars_of(&e.ring))),
        Decl::Task(t) => render_task(t),
    }
}

pub fn render_script(script: &WorkbenchScript) -> String {
    let mut s = String::new();
    for d in &script.decls {
        s.push_str(&render_decl(d, script));
        s.push('\n');
    }
    s
}
