//! Tree files: a header `n source`, then one line per vertex holding its
//! parent index or `-`.

use std::io::{BufRead, Write};

use anyhow::{bail, ensure, Context, Result};
use fbpaths::{ShortestPathTree, VertexId};

pub fn write_tree(tree: &ShortestPathTree, w: &mut dyn Write) -> Result<()> {
    writeln!(w, "{} {}", tree.n(), tree.source.index())?;
    for p in &tree.parent {
        match p {
            Some(p) => writeln!(w, "{}", p.index())?,
            None => writeln!(w, "-")?,
        }
    }
    Ok(())
}

/// Parent pointers and source; distances are left at zero for the verifier
/// to recompute.
pub fn read_tree(r: impl BufRead) -> Result<ShortestPathTree> {
    let mut lines = r.lines().enumerate();
    let (_, header) = lines.next().context("empty tree file")?;
    let header = header?;
    let mut it = header.split_whitespace();
    let (Some(n), Some(source), None) = (it.next(), it.next(), it.next()) else {
        bail!("tree header must be `n source`");
    };
    let n: usize = n.parse().context("tree header n")?;
    let source: usize = source.parse().context("tree header source")?;
    ensure!(source < n, "source {source} out of range for n = {n}");
    let mut parent = Vec::with_capacity(n);
    for (i, line) in lines {
        let line = line?;
        let t = line.trim();
        if t.is_empty() {
            continue;
        }
        parent.push(match t {
            "-" => None,
            p => {
                let p: usize = p.parse().with_context(|| format!("line {}: bad parent `{p}`", i + 1))?;
                ensure!(p < n, "line {}: parent {p} out of range", i + 1);
                Some(VertexId::new(p))
            }
        });
    }
    ensure!(parent.len() == n, "expected {n} parent lines, found {}", parent.len());
    Ok(ShortestPathTree { source: VertexId::new(source), parent, dist: vec![0.0; n] })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let t = ShortestPathTree {
            source: VertexId::new(1),
            parent: vec![Some(VertexId::new(1)), None, Some(VertexId::new(0))],
            dist: vec![0.0; 3],
        };
        let mut buf = Vec::new();
        write_tree(&t, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf.clone()).unwrap(), "3 1\n1\n-\n0\n");
        assert_eq!(read_tree(&buf[..]).unwrap(), t);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(read_tree(&b""[..]).is_err());
        assert!(read_tree(&b"2 0\n-\n"[..]).is_err());
        assert!(read_tree(&b"2 0\n-\n7\n"[..]).is_err());
        assert!(read_tree(&b"2 5\n-\n0\n"[..]).is_err());
        assert!(read_tree(&b"2\n-\n0\n"[..]).is_err());
    }
}
