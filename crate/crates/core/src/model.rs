//! Value types shared across the crate, with their text and JSON formats.
//!
//! Text formats:
//!
//! * tree file: first line `n`, then `n - 1` lines `u v` (1-based vertices);
//! * set partition: blocks separated by `/`, elements by `,`, e.g. `8/5,6,9/3,7/2,4`;
//! * integer partition and code word: `,`-separated integers.
//!
//! Every type is validated on construction, so holding a value means holding a
//! well-formed object. JSON goes through the same constructors.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An undirected tree on the vertex set `[n] = {1, ..., n}`.
///
/// Edges are stored as pairs `(u, v)` with `u < v`, sorted, so two trees with
/// the same edge set compare equal. The orientation `u -> v` and the rooting at
/// vertex 1 are derived on demand and never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "TreeJson", into = "TreeJson")]
pub struct LabelledTree {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl LabelledTree {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidTree("n must be at least 1".into()));
        }
        let mut canon = Vec::with_capacity(n - 1);
        for (u, v) in edges {
            for w in [u, v] {
                if w == 0 || w > n {
                    return Err(Error::InvalidTree(format!("vertex {w} out of range [1,{n}]")));
                }
            }
            if u == v {
                return Err(Error::InvalidTree(format!("self-loop at vertex {u}")));
            }
            canon.push((u.min(v), u.max(v)));
        }
        if canon.len() != n - 1 {
            return Err(Error::InvalidTree(format!(
                "expected {} edges for n = {n}, found {}",
                n - 1,
                canon.len()
            )));
        }
        canon.sort_unstable();
        if let Some(w) = canon.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidTree(format!("duplicate edge {} {}", w[0].0, w[0].1)));
        }
        let tree = LabelledTree { n, edges: canon };
        if let Some(v) = tree.first_unreachable() {
            return Err(Error::InvalidTree(format!(
                "edge set is not connected: vertex {v} is unreachable from 1"
            )));
        }
        Ok(tree)
    }

    /// The single-vertex tree.
    pub fn trivial() -> Self {
        LabelledTree { n: 1, edges: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Canonical edges `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.binary_search(&(u.min(v), u.max(v))).is_ok()
    }

    /// Adjacency lists indexed by vertex; index 0 is unused.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n + 1];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    /// Parent of every vertex when the tree hangs from vertex 1.
    /// `parents[1]` and `parents[0]` are 0.
    pub fn parents(&self) -> Vec<usize> {
        let adj = self.adjacency();
        let mut parent = vec![0; self.n + 1];
        let mut seen = vec![false; self.n + 1];
        let mut queue = VecDeque::from([1]);
        seen[1] = true;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    parent[v] = u;
                    queue.push_back(v);
                }
            }
        }
        parent
    }

    fn first_unreachable(&self) -> Option<usize> {
        let adj = self.adjacency();
        let mut seen = vec![false; self.n + 1];
        let mut stack = vec![1];
        seen[1] = true;
        while let Some(u) = stack.pop() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        (1..=self.n).find(|&v| !seen[v])
    }

    /// Renders the tree file format (trailing newline included).
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for (u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

impl fmt::Display for LabelledTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Parses the tree file format. Blank lines are ignored; errors carry the
/// 1-based line number of the offending line.
pub fn parse_tree(text: &str) -> Result<LabelledTree> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (first, header) = lines.next().ok_or(Error::Parse {
        line: 0,
        message: "empty input, expected vertex count".into(),
    })?;
    let n: usize = header.parse().map_err(|_| Error::Parse {
        line: first,
        message: format!("expected vertex count, found {header:?}"),
    })?;
    if n == 0 {
        return Err(Error::Parse { line: first, message: "vertex count must be at least 1".into() });
    }

    let mut edges = Vec::new();
    let mut last_line = first;
    for (line, content) in lines {
        last_line = line;
        let fields: Vec<&str> = content.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(Error::Parse {
                line,
                message: format!("expected \"u v\", found {content:?}"),
            });
        }
        let mut ends = [0usize; 2];
        for (slot, field) in ends.iter_mut().zip(&fields) {
            let w: usize = field.parse().map_err(|_| Error::Parse {
                line,
                message: format!("not a vertex: {field:?}"),
            })?;
            if w == 0 || w > n {
                return Err(Error::Parse {
                    line,
                    message: format!("vertex {w} out of range [1,{n}]"),
                });
            }
            *slot = w;
        }
        if ends[0] == ends[1] {
            return Err(Error::Parse { line, message: format!("self-loop at vertex {}", ends[0]) });
        }
        edges.push((ends[0], ends[1]));
        if edges.len() > n - 1 {
            return Err(Error::Parse {
                line,
                message: format!("too many edges: a tree on {n} vertices has {}", n - 1),
            });
        }
    }
    if edges.len() != n - 1 {
        return Err(Error::Parse {
            line: last_line,
            message: format!("expected {} edges, found {}", n - 1, edges.len()),
        });
    }
    LabelledTree::new(n, edges).map_err(|e| match e {
        Error::InvalidTree(message) => Error::Parse { line: last_line, message },
        other => other,
    })
}

/// A set partition of `[2, n]`.
///
/// Canonical form: each block ascending, blocks ordered by descending minimum,
/// so the first block is the one holding the largest minimum. This reproduces
/// displays such as `8/5,6,9/3,7/2,4`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "PartitionJson", into = "PartitionJson")]
pub struct SetPartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    pub fn new(n: usize, blocks: impl IntoIterator<Item = Vec<usize>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidPartition("n must be at least 1".into()));
        }
        let mut seen = vec![false; n + 1];
        let mut canon = Vec::new();
        for mut block in blocks {
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            for &x in &block {
                if x < 2 || x > n {
                    return Err(Error::InvalidPartition(format!(
                        "element {x} outside [2,{n}]"
                    )));
                }
                if seen[x] {
                    return Err(Error::InvalidPartition(format!("duplicate element {x}")));
                }
                seen[x] = true;
            }
            block.sort_unstable();
            canon.push(block);
        }
        if let Some(x) = (2..=n).find(|&x| !seen[x]) {
            return Err(Error::InvalidPartition(format!("missing element {x}")));
        }
        Ok(Self::from_canonical_parts(n, canon))
    }

    /// Sorts blocks into canonical order. Blocks must already be sorted,
    /// nonempty, disjoint and cover `[2, n]`.
    pub(crate) fn from_canonical_parts(n: usize, mut blocks: Vec<Vec<usize>>) -> Self {
        blocks.sort_unstable_by(|a, b| b[0].cmp(&a[0]));
        SetPartition { n, blocks }
    }

    /// Builds a partition from a block label per element of `[2, n]`
    /// (`labels[x - 2]` is the label of `x`).
    pub(crate) fn from_labels(n: usize, labels: &[usize]) -> Self {
        let count = labels.iter().map(|&l| l + 1).max().unwrap_or(0);
        let mut blocks = vec![Vec::new(); count];
        for (offset, &l) in labels.iter().enumerate() {
            blocks[l].push(offset + 2);
        }
        blocks.retain(|b| !b.is_empty());
        Self::from_canonical_parts(n, blocks)
    }

    /// All singletons: the bottom element of the lattice.
    pub fn finest(n: usize) -> Self {
        Self::from_canonical_parts(n.max(1), (2..=n).map(|x| vec![x]).collect())
    }

    /// One block `[2, n]` (empty for `n = 1`): the top element.
    pub fn coarsest(n: usize) -> Self {
        let blocks = if n >= 2 { vec![(2..=n).collect()] } else { Vec::new() };
        SetPartition { n: n.max(1), blocks }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Number of blocks, `|pi|`.
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Block index (into [`Self::blocks`]) of every element; entries 0 and 1
    /// are `usize::MAX`.
    pub fn block_index(&self) -> Vec<usize> {
        let mut index = vec![usize::MAX; self.n + 1];
        for (b, block) in self.blocks.iter().enumerate() {
            for &x in block {
                index[x] = b;
            }
        }
        index
    }

    pub fn same_block(&self, x: usize, y: usize) -> bool {
        self.blocks.iter().any(|b| b.contains(&x) && b.contains(&y))
    }

    /// Merges blocks `a` and `b` (indices into [`Self::blocks`]).
    pub fn merge(&self, a: usize, b: usize) -> Self {
        assert!(a != b && a < self.len() && b < self.len());
        let mut blocks: Vec<Vec<usize>> = Vec::with_capacity(self.len() - 1);
        let mut merged = Vec::new();
        for (idx, block) in self.blocks.iter().enumerate() {
            if idx == a || idx == b {
                merged.extend_from_slice(block);
            } else {
                blocks.push(block.clone());
            }
        }
        merged.sort_unstable();
        blocks.push(merged);
        Self::from_canonical_parts(self.n, blocks)
    }

    /// Applies the transposition `(i, i+1)` to the elements.
    pub fn swap_adjacent(&self, i: usize) -> Self {
        let blocks = self
            .blocks
            .iter()
            .map(|block| {
                let mut b: Vec<usize> = block
                    .iter()
                    .map(|&x| if x == i { i + 1 } else if x == i + 1 { i } else { x })
                    .collect();
                b.sort_unstable();
                b
            })
            .collect();
        Self::from_canonical_parts(self.n, blocks)
    }

    /// The type of the partition: block sizes, weakly decreasing.
    pub fn partition_type(&self) -> IntegerPartition {
        IntegerPartition::from_parts_unchecked(self.blocks.iter().map(Vec::len).collect())
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, block) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str("/")?;
            }
            for (j, x) in block.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
        }
        Ok(())
    }
}

/// Parses `/`-separated blocks of `,`-separated elements of `[2, n]`.
/// For `n = 1` the only valid input is the empty string.
pub fn parse_partition(text: &str, n: usize) -> Result<SetPartition> {
    let text = text.trim();
    if text.is_empty() {
        return SetPartition::new(n, Vec::new());
    }
    let mut blocks = Vec::new();
    for chunk in text.split('/') {
        let chunk = chunk.trim();
        if chunk.is_empty() {
            return Err(Error::InvalidPartition("empty block".into()));
        }
        let block = chunk
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidPartition(format!("not an element: {:?}", s.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        blocks.push(block);
    }
    SetPartition::new(n, blocks)
}

/// Block sizes of `pi`, weakly decreasing.
pub fn partition_type(pi: &SetPartition) -> IntegerPartition {
    pi.partition_type()
}

/// An integer partition `lambda_1 >= lambda_2 >= ... >= lambda_k >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct IntegerPartition {
    parts: Vec<usize>,
}

impl IntegerPartition {
    /// Sorts `parts` decreasingly; rejects zero parts.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition("integer partition parts must be positive".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(IntegerPartition { parts })
    }

    pub(crate) fn from_parts_unchecked(mut parts: Vec<usize>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        IntegerPartition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of parts `k`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Sum of the parts.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `m[i]` = number of parts equal to `i`; `m[0]` is always 0.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0; self.parts.first().copied().unwrap_or(0) + 1];
        for &p in &self.parts {
            m[p] += 1;
        }
        m
    }

    /// Every partition of `total`, in reverse lexicographic order.
    pub fn all(total: usize) -> Vec<IntegerPartition> {
        fn rec(rest: usize, cap: usize, cur: &mut Vec<usize>, out: &mut Vec<IntegerPartition>) {
            if rest == 0 {
                out.push(IntegerPartition { parts: cur.clone() });
                return;
            }
            for p in (1..=rest.min(cap)).rev() {
                cur.push(p);
                rec(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(total, total, &mut Vec::new(), &mut out);
        out
    }
}

impl TryFrom<Vec<usize>> for IntegerPartition {
    type Error = Error;
    fn try_from(parts: Vec<usize>) -> Result<Self> {
        IntegerPartition::new(parts)
    }
}

impl From<IntegerPartition> for Vec<usize> {
    fn from(p: IntegerPartition) -> Self {
        p.parts
    }
}

impl fmt::Display for IntegerPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_csv(f, &self.parts)
    }
}

pub fn parse_integer_partition(text: &str) -> Result<IntegerPartition> {
    IntegerPartition::new(parse_csv(text).map_err(Error::InvalidPartition)?)
}

/// A word over the alphabet `[n]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "CodeWordJson", into = "CodeWordJson")]
pub struct CodeWord {
    n: usize,
    symbols: Vec<usize>,
}

impl CodeWord {
    pub fn new(n: usize, symbols: Vec<usize>) -> Result<Self> {
        if let Some(&s) = symbols.iter().find(|&&s| s == 0 || s > n) {
            return Err(Error::InvalidCodeWord(format!("symbol {s} outside [1,{n}]")));
        }
        Ok(CodeWord { n, symbols })
    }

    pub fn empty(n: usize) -> Self {
        CodeWord { n, symbols: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn symbols(&self) -> &[usize] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }
}

impl fmt::Display for CodeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_csv(f, &self.symbols)
    }
}

pub fn parse_code_word(text: &str, n: usize) -> Result<CodeWord> {
    CodeWord::new(n, parse_csv(text).map_err(Error::InvalidCodeWord)?)
}

fn write_csv(f: &mut fmt::Formatter<'_>, xs: &[usize]) -> fmt::Result {
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

fn parse_csv(text: &str) -> Result<Vec<usize>, String> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|s| s.trim().parse::<usize>().map_err(|_| format!("not an integer: {:?}", s.trim())))
        .collect()
}

#[derive(Serialize, Deserialize)]
struct TreeJson {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl TryFrom<TreeJson> for LabelledTree {
    type Error = Error;
    fn try_from(raw: TreeJson) -> Result<Self> {
        LabelledTree::new(raw.n, raw.edges.into_iter().map(|[u, v]| (u, v)))
    }
}

impl From<LabelledTree> for TreeJson {
    fn from(t: LabelledTree) -> Self {
        TreeJson { n: t.n, edges: t.edges.into_iter().map(|(u, v)| [u, v]).collect() }
    }
}

#[derive(Serialize, Deserialize)]
struct PartitionJson {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl TryFrom<PartitionJson> for SetPartition {
    type Error = Error;
    fn try_from(raw: PartitionJson) -> Result<Self> {
        SetPartition::new(raw.n, raw.blocks)
    }
}

impl From<SetPartition> for PartitionJson {
    fn from(p: SetPartition) -> Self {
        PartitionJson { n: p.n, blocks: p.blocks }
    }
}

#[derive(Serialize, Deserialize)]
struct CodeWordJson {
    n: usize,
    symbols: Vec<usize>,
}

impl TryFrom<CodeWordJson> for CodeWord {
    type Error = Error;
    fn try_from(raw: CodeWordJson) -> Result<Self> {
        CodeWord::new(raw.n, raw.symbols)
    }
}

impl From<CodeWord> for CodeWordJson {
    fn from(w: CodeWord) -> Self {
        CodeWordJson { n: w.n, symbols: w.symbols }
    }
}
