//! Plain-text formats: degree files and CSV exports.
//!
//! Every writer takes a list of comment lines which are emitted first as
//! `# <line>`; readers skip lines starting with `#`.

use std::io::{BufRead, Write};

use crate::components::ComponentSummary;
use crate::config_model::MultiGraph;
use crate::degrees::DegreeSequence;
use crate::error::{Error, Result};
use crate::exploration::ExplorationWalk;
use crate::levy::{ExcursionSet, LevyPath, ThetaSpec};

#[derive(Clone, Debug, Default, PartialEq)]
pub struct DegreeHeader {
    pub n: usize,
    pub tau: f64,
    pub lambda: f64,
    pub seed: u64,
}

fn comments<W: Write>(w: &mut W, lines: &[String]) -> Result<()> {
    for l in lines {
        writeln!(w, "# {l}")?;
    }
    Ok(())
}

pub fn write_degrees<W: Write>(w: &mut W, d: &DegreeSequence, h: &DegreeHeader, extra: &[String]) -> Result<()> {
    writeln!(w, "# n={} tau={} lambda={} seed={}", h.n, h.tau, h.lambda, h.seed)?;
    comments(w, extra)?;
    for &k in d.degrees() {
        writeln!(w, "{k}")?;
    }
    Ok(())
}

fn parse_header(line: &str) -> Option<DegreeHeader> {
    let mut h = DegreeHeader::default();
    let mut seen = 0;
    for tok in line.trim_start_matches('#').split_whitespace() {
        let (k, v) = tok.split_once('=')?;
        match k {
            "n" => h.n = v.parse().ok()?,
            "tau" => h.tau = v.parse().ok()?,
            "lambda" => h.lambda = v.parse().ok()?,
            "seed" => h.seed = v.parse().ok()?,
            _ => continue,
        }
        seen += 1;
    }
    (seen == 4).then_some(h)
}

/// Reads a degree file. The sequence must already be sorted non-increasing.
pub fn read_degrees<R: BufRead>(r: R) -> Result<(DegreeSequence, Option<DegreeHeader>)> {
    let mut header = None;
    let mut degrees = Vec::new();
    for (no, line) in r.lines().enumerate() {
        let line = line?;
        let t = line.trim();
        if t.is_empty() {
            continue;
        }
        if t.starts_with('#') {
            if header.is_none() {
                header = parse_header(t);
            }
            continue;
        }
        let k: u32 = t.parse().map_err(|_| Error::Parse(format!("line {}: not a degree: {t:?}", no + 1)))?;
        degrees.push(k);
    }
    if let Some(h) = &header {
        if h.n != degrees.len() {
            return Err(Error::LengthMismatch { expected: h.n, got: degrees.len() });
        }
    }
    Ok((DegreeSequence::new(degrees)?, header))
}

pub fn write_edges<W: Write>(w: &mut W, g: &MultiGraph, extra: &[String]) -> Result<()> {
    comments(w, extra)?;
    writeln!(w, "u,v")?;
    for &(u, v) in &g.edges {
        writeln!(w, "{},{}", u as u64 + 1, v as u64 + 1)?;
    }
    Ok(())
}

pub fn write_walk<W: Write>(w: &mut W, walk: &ExplorationWalk, extra: &[String]) -> Result<()> {
    comments(w, extra)?;
    writeln!(w, "l,S_n,J_l,is_surplus")?;
    for l in 1..walk.steps.len() {
        writeln!(
            w,
            "{},{},{},{}",
            l,
            walk.steps[l],
            u8::from(walk.new_vertex_flags[l - 1]),
            u8::from(walk.is_surplus(l))
        )?;
    }
    Ok(())
}

/// Components ranked by vertex count, ties by surplus then edges.
pub fn write_components<W: Write>(w: &mut W, comps: &[ComponentSummary], extra: &[String]) -> Result<()> {
    comments(w, extra)?;
    let mut sorted: Vec<&ComponentSummary> = comps.iter().collect();
    sorted.sort_by(|a, b| b.vertices.cmp(&a.vertices).then(b.surplus.cmp(&a.surplus)).then(b.edges.cmp(&a.edges)));
    writeln!(w, "rank,vertices,edges,surplus,total_degree")?;
    for (i, c) in sorted.iter().enumerate() {
        writeln!(w, "{},{},{},{},{}", i + 1, c.vertices, c.edges, c.surplus, c.total_degree)?;
    }
    Ok(())
}

pub fn write_path<W: Write>(w: &mut W, path: &LevyPath, spec: &ThetaSpec, extra: &[String]) -> Result<()> {
    comments(w, extra)?;
    writeln!(w, "jump_time,index,theta")?;
    for (&t, &i) in path.jump_times.iter().zip(&path.jump_index) {
        writeln!(w, "{},{},{}", t, i as u64 + 1, spec.thetas[i as usize])?;
    }
    Ok(())
}

pub fn write_excursions<W: Write>(w: &mut W, e: &ExcursionSet, marks: Option<&[u64]>, extra: &[String]) -> Result<()> {
    comments(w, extra)?;
    writeln!(w, "rank,l,r,length,area,marks,truncated")?;
    for (i, ex) in e.excursions.iter().enumerate() {
        let m = marks.map(|m| m[i].to_string()).unwrap_or_default();
        writeln!(w, "{},{},{},{},{},{},{}", i + 1, ex.l, ex.r, ex.length, ex.area, m, u8::from(ex.truncated))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_round_trip() {
        let d = DegreeSequence::new(vec![5, 3, 2, 1, 1]).unwrap();
        let h = DegreeHeader { n: 5, tau: 3.5, lambda: -0.5, seed: 7 };
        let mut buf = Vec::new();
        write_degrees(&mut buf, &d, &h, &["manifest=abc".into()]).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("# n=5 tau=3.5 lambda=-0.5 seed=7\n# manifest=abc\n5\n"));
        let (back, hb) = read_degrees(&buf[..]).unwrap();
        assert_eq!(back, d);
        assert_eq!(hb, Some(h));
    }

    #[test]
    fn rejects_unsorted_and_garbage() {
        assert!(read_degrees("1\n2\n".as_bytes()).is_err());
        assert!(read_degrees("2\nx\n".as_bytes()).is_err());
        assert!(read_degrees("# n=3 tau=3.5 lambda=0 seed=1\n1\n1\n".as_bytes()).is_err());
    }

    #[test]
    fn edges_are_one_based() {
        let g = MultiGraph { n: 2, edges: vec![(0, 1), (1, 1)], degrees: vec![1, 3] };
        let mut buf = Vec::new();
        write_edges(&mut buf, &g, &[]).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "u,v\n1,2\n2,2\n");
    }
}
