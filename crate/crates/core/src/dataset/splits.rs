use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_RATIOS: [f64; 3] = [0.70, 0.15, 0.15];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Split {
    Train,
    Val,
    Test,
}

impl Split {
    pub const ALL: [Split; 3] = [Split::Train, Split::Val, Split::Test];

    pub fn name(self) -> &'static str {
        match self {
            Split::Train => "train",
            Split::Val => "val",
            Split::Test => "test",
        }
    }
}

impl fmt::Display for Split {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Split {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Split::ALL.iter().copied().find(|x| x.name() == s).ok_or_else(|| Error::UnknownName {
            kind: "split",
            name: s.to_string(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SplitAssignment {
    pub graph_id: String,
    pub split: Split,
    pub project: String,
}

/// Floor-then-remainder sizes: train and val are floored, test takes the rest.
pub fn split_sizes(n: usize, ratios: [f64; 3]) -> [usize; 3] {
    let floor = |r: f64| ((r * n as f64) + 1e-9).floor() as usize;
    let train = floor(ratios[0]).min(n);
    let val = floor(ratios[1]).min(n - train);
    [train, val, n - train - val]
}

fn check_ratios(ratios: [f64; 3]) -> Result<()> {
    let ok = ratios.iter().all(|r| r.is_finite() && *r >= 0.0) && (ratios.iter().sum::<f64>() - 1.0).abs() < 1e-9;
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidRatios(ratios))
    }
}

fn fnv1a(s: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in s.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}

/// Assign each `(graph_id, project)` to train, val or test.
///
/// Each project is split on its own, so a project's splits are subsets of
/// the dataset's splits. Per-project train and val sizes stay within one
/// graph of their exact share and test within two, and the quotas are
/// balanced so that the dataset totals equal [`split_sizes`] of the whole
/// corpus. Membership is
/// drawn by shuffling each project's sorted ids with a generator seeded from
/// `seed` and the project name. Output is sorted by graph id.
///
/// ```
/// use javagraph::dataset::{make_splits, Split, DEFAULT_RATIOS};
///
/// let items: Vec<_> = (0..20).map(|i| (format!("g{i:02}"), "p".to_string())).collect();
/// let a = make_splits(&items, DEFAULT_RATIOS, 7).unwrap();
/// let count = |s| a.iter().filter(|x| x.split == s).count();
/// assert_eq!((count(Split::Train), count(Split::Val), count(Split::Test)), (14, 3, 3));
/// ```
pub fn make_splits(items: &[(String, String)], ratios: [f64; 3], seed: u64) -> Result<Vec<SplitAssignment>> {
    check_ratios(ratios)?;
    let mut projects: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    for (id, project) in items {
        projects.entry(project).or_default().push(id);
    }
    for (name, ids) in &projects {
        if ids.len() < 3 {
            return Err(Error::ProjectTooSmall {
                project: name.to_string(),
                count: ids.len(),
            });
        }
    }

    let sizes: Vec<usize> = projects.values().map(Vec::len).collect();
    let quotas = project_quotas(&sizes, ratios);

    let mut out = Vec::with_capacity(items.len());
    for ((name, ids), quota) in projects.into_iter().zip(quotas) {
        let mut ids = ids;
        ids.sort_unstable();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ fnv1a(name));
        ids.shuffle(&mut rng);
        let mut it = ids.into_iter();
        for (split, q) in Split::ALL.into_iter().zip(quota) {
            for id in it.by_ref().take(q) {
                out.push(SplitAssignment {
                    graph_id: id.to_string(),
                    split,
                    project: name.to_string(),
                });
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Per-project split sizes whose column sums hit the dataset totals.
///
/// Every project starts at the floor of its ideal share per split; the
/// leftover graphs are routed by max-flow. Routing first allows one extra
/// graph per (project, split), then two extra on test, which takes the
/// remainder of two floors, and finally any number. The last routing always
/// exists because leftovers and deficits have the same total.
fn project_quotas(sizes: &[usize], ratios: [f64; 3]) -> Vec<[usize; 3]> {
    let total: usize = sizes.iter().sum();
    let targets = split_sizes(total, ratios);
    let floors: Vec<[usize; 3]> = sizes
        .iter()
        .map(|&n| {
            let f = |r: f64| ((r * n as f64) + 1e-9).floor() as usize;
            [f(ratios[0]), f(ratios[1]), f(ratios[2])]
        })
        .collect();
    let spare: Vec<usize> = sizes.iter().zip(&floors).map(|(n, f)| n - f.iter().sum::<usize>()).collect();
    let mut deficit = [0usize; 3];
    for s in 0..3 {
        let used: usize = floors.iter().map(|f| f[s]).sum();
        match targets[s].checked_sub(used) {
            Some(d) => deficit[s] = d,
            None => return sizes.iter().map(|&n| split_sizes(n, ratios)).collect(),
        }
    }

    for limits in [[1, 1, 1], [1, 1, 2], [total; 3]] {
        if let Some(extra) = route(&spare, deficit, limits) {
            return floors
                .into_iter()
                .zip(extra)
                .map(|(f, e)| [f[0] + e[0], f[1] + e[1], f[2] + e[2]])
                .collect();
        }
    }
    unreachable!("unbounded routing always succeeds")
}

/// Extra graphs per (project, split), or `None` if the leftovers cannot all
/// be placed within `limits`.
fn route(spare: &[usize], deficit: [usize; 3], limits: [usize; 3]) -> Option<Vec<[usize; 3]>> {
    // Nodes: 0 source, 1..=P projects, P+1..=P+3 splits, P+4 sink.
    let p = spare.len();
    let (src, sink) = (0, p + 4);
    let mut cap = vec![vec![0usize; p + 5]; p + 5];
    for i in 0..p {
        cap[src][1 + i] = spare[i];
        for s in 0..3 {
            cap[1 + i][p + 1 + s] = limits[s];
        }
    }
    for s in 0..3 {
        cap[p + 1 + s][sink] = deficit[s];
    }
    if max_flow(&mut cap, src, sink) != spare.iter().sum::<usize>() {
        return None;
    }
    // Flow on a project-to-split edge is what its capacity lost.
    Some((0..p).map(|i| [0, 1, 2].map(|s| limits[s] - cap[1 + i][p + 1 + s])).collect())
}

/// Edmonds-Karp on a dense residual matrix, updated in place.
fn max_flow(cap: &mut [Vec<usize>], src: usize, sink: usize) -> usize {
    let n = cap.len();
    let mut total = 0;
    loop {
        let mut prev = vec![usize::MAX; n];
        prev[src] = src;
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            for v in 0..n {
                if prev[v] == usize::MAX && cap[u][v] > 0 {
                    prev[v] = u;
                    queue.push_back(v);
                }
            }
        }
        if prev[sink] == usize::MAX {
            return total;
        }
        let mut bottleneck = usize::MAX;
        let mut v = sink;
        while v != src {
            bottleneck = bottleneck.min(cap[prev[v]][v]);
            v = prev[v];
        }
        let mut v = sink;
        while v != src {
            let u = prev[v];
            cap[u][v] -= bottleneck;
            cap[v][u] += bottleneck;
            v = u;
        }
        total += bottleneck;
    }
}

/// `graph_id,project,split` with a header row.
pub fn write_splits_csv<W: std::io::Write>(assignments: &[SplitAssignment], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["graph_id", "project", "split"])?;
    for a in assignments {
        w.write_record([a.graph_id.as_str(), a.project.as_str(), a.split.name()])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_splits_csv<R: std::io::Read>(input: R) -> Result<Vec<SplitAssignment>> {
    let mut r = csv::Reader::from_reader(input);
    let mut out = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        let field = |i: usize| rec.get(i).unwrap_or_default().to_string();
        out.push(SplitAssignment {
            graph_id: field(0),
            project: field(1),
            split: field(2).parse()?,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes_for_922() {
        assert_eq!(split_sizes(922, DEFAULT_RATIOS), [645, 138, 139]);
        assert_eq!(split_sizes(20, DEFAULT_RATIOS), [14, 3, 3]);
    }

    #[test]
    fn quotas_balance_to_totals() {
        let sizes = [7, 11, 3, 50, 4];
        let q = project_quotas(&sizes, DEFAULT_RATIOS);
        let total: usize = sizes.iter().sum();
        let want = split_sizes(total, DEFAULT_RATIOS);
        for s in 0..3 {
            assert_eq!(q.iter().map(|r| r[s]).sum::<usize>(), want[s]);
        }
        for (row, &n) in q.iter().zip(&sizes) {
            assert_eq!(row.iter().sum::<usize>(), n);
        }
    }

    #[test]
    fn tiny_project_rejected() {
        let items = vec![("a".to_string(), "p".to_string()), ("b".into(), "p".into())];
        assert!(matches!(make_splits(&items, DEFAULT_RATIOS, 0), Err(Error::ProjectTooSmall { count: 2, .. })));
    }

    #[test]
    fn bad_ratios_rejected() {
        assert!(matches!(make_splits(&[], [0.5, 0.5, 0.5], 0), Err(Error::InvalidRatios(_))));
    }

    #[test]
    fn csv_round_trip() {
        let items: Vec<_> = (0..10).map(|i| (format!("g{i}"), "p".to_string())).collect();
        let a = make_splits(&items, DEFAULT_RATIOS, 3).unwrap();
        let mut buf = Vec::new();
        write_splits_csv(&a, &mut buf).unwrap();
        assert_eq!(read_splits_csv(buf.as_slice()).unwrap(), a);
    }
}
