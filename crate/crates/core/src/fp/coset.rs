//! Todd–Coxeter coset enumeration.
//!
//! Two independent definition strategies share the table, coincidence and
//! scanning machinery:
//!
//! * [`Strategy::Hlt`] walks cosets in definition order and traces every
//!   relator from each, defining cosets as needed. When the live count reaches
//!   a threshold (doubling each time, capped by the budget) it runs a
//!   deduction-only lookahead pass over the whole table.
//! * [`Strategy::Felsch`] always fills the first undefined table entry and
//!   then closes the table under all consequences of every new entry before
//!   defining again.
//!
//! Completed tables are standardized: cosets are renumbered in the order in
//! which a row-by-row, column-by-column scan from the subgroup coset first
//! meets them. Equal presentations therefore give byte-identical tables no
//! matter which strategy ran.

use std::fmt;
use std::rc::Rc;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

use thiserror::Error;

use super::presentation::FpPresentation;
use super::word::{Letter, Word};

/// Default maximum number of simultaneously live cosets. An engineering
/// guess: nothing bounds tensor-product orders a priori.
pub const DEFAULT_BUDGET: usize = 2_000_000;
/// Default cap on coset-table memory, in bytes.
pub const DEFAULT_TABLE_BYTES: usize = 2 << 30;

const POLL_INTERVAL: u64 = 10_000;
const FIRST_LOOKAHEAD: usize = 1 << 12;
const NONE: u32 = 0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Strategy {
    #[default]
    Hlt,
    Felsch,
}

impl Strategy {
    pub fn name(self) -> &'static str {
        match self {
            Strategy::Hlt => "hlt",
            Strategy::Felsch => "felsch",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "hlt" => Ok(Strategy::Hlt),
            "felsch" => Ok(Strategy::Felsch),
            other => Err(format!("unknown strategy {other:?} (expected hlt or felsch)")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct EnumOptions {
    pub strategy: Strategy,
    /// Maximum number of live cosets. Must be at least 1.
    pub budget: usize,
    /// Cap on table memory. Lowers the effective live-coset budget for
    /// presentations with many generators.
    pub max_table_bytes: usize,
    /// Polled at least every 10^4 coset definitions.
    pub cancel: Option<Arc<AtomicBool>>,
}

impl Default for EnumOptions {
    fn default() -> Self {
        Self {
            strategy: Strategy::Hlt,
            budget: DEFAULT_BUDGET,
            max_table_bytes: DEFAULT_TABLE_BYTES,
            cancel: None,
        }
    }
}

impl EnumOptions {
    pub fn with_strategy(strategy: Strategy) -> Self {
        Self {
            strategy,
            ..Self::default()
        }
    }

    pub fn budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumError {
    /// The table did not close within the budget. This never implies that
    /// the index is infinite.
    #[error("coset enumeration exceeded the budget of {budget} live cosets")]
    BudgetExceeded { budget: usize },
    /// The live-coset budget was lowered to fit the table-memory cap, and
    /// the lowered budget was exhausted.
    #[error("coset table for {columns} columns would exceed {max_bytes} bytes after {cosets} live cosets")]
    TableTooLarge { cosets: usize, columns: usize, max_bytes: usize },
    #[error("coset enumeration was cancelled")]
    Cancelled,
}

/// Bookkeeping from one enumeration run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumStats {
    pub strategy: Strategy,
    pub max_live: usize,
    pub total_defined: u64,
}

/// Complete, standardized coset table. Cosets are numbered from 0; coset 0 is
/// the subgroup itself.
#[derive(Clone, Debug)]
pub struct CosetTable {
    num_gens: usize,
    index: usize,
    table: Vec<u32>,
    stats: EnumStats,
}

impl PartialEq for CosetTable {
    fn eq(&self, other: &Self) -> bool {
        self.num_gens == other.num_gens && self.index == other.index && self.table == other.table
    }
}

impl Eq for CosetTable {}

impl CosetTable {
    /// Number of cosets, i.e. the subgroup index.
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn num_gens(&self) -> usize {
        self.num_gens
    }

    pub fn stats(&self) -> &EnumStats {
        &self.stats
    }

    pub fn image(&self, coset: usize, l: Letter) -> usize {
        self.table[coset * 2 * self.num_gens + l.column()] as usize
    }

    pub fn image_col(&self, coset: usize, col: usize) -> usize {
        self.table[coset * 2 * self.num_gens + col] as usize
    }

    pub fn trace(&self, coset: usize, w: &Word) -> usize {
        w.letters().iter().fold(coset, |c, &l| self.image(c, l))
    }

    /// The permutation of cosets induced by a generator.
    pub fn permutation(&self, gen: usize) -> Vec<usize> {
        (0..self.index).map(|c| self.image(c, Letter::pos(gen))).collect()
    }

    /// True when the word acts trivially on every coset.
    pub fn satisfies(&self, w: &Word) -> bool {
        (0..self.index).all(|c| self.trace(c, w) == c)
    }

    /// Columns are mutually inverse and every generator acts as a permutation.
    pub fn is_consistent(&self) -> bool {
        (0..self.index).all(|c| {
            (0..2 * self.num_gens).all(|col| {
                let d = self.image_col(c, col);
                d < self.index && self.image_col(d, col ^ 1) == c
            })
        })
    }
}

pub fn coset_enumerate(
    p: &FpPresentation,
    subgroup_gens: &[Word],
    opts: &EnumOptions,
) -> Result<CosetTable, EnumError> {
    assert!(opts.budget >= 1, "budget must be at least 1");
    let relators: Vec<Vec<u32>> = p
        .deduplicated()
        .relators()
        .iter()
        .map(|r| r.letters().iter().map(|l| l.column() as u32).collect())
        .collect();
    let subgroup: Vec<Vec<u32>> = subgroup_gens
        .iter()
        .map(super::word::reduce)
        .filter(|w| !w.is_empty())
        .map(|w| w.letters().iter().map(|l| l.column() as u32).collect())
        .collect();
    let mut engine = Engine::new(p.num_gens(), relators, subgroup, opts);
    match opts.strategy {
        Strategy::Hlt => engine.run_hlt()?,
        Strategy::Felsch => engine.run_felsch()?,
    }
    Ok(engine.standardize())
}

/// Signals that a lookahead ran in the middle of a scan, so the caller must
/// restart from a safe point.
enum Flow {
    Done,
    Restart,
}

struct Engine<'a> {
    ncols: usize,
    table: Vec<u32>,
    forward: Vec<u32>,
    n: u32,
    live: usize,
    max_live: usize,
    total_defined: u64,
    /// Bumped on every deduction and coincidence.
    changes: u64,
    budget: usize,
    /// Set when the table-memory cap is tighter than the requested budget.
    memory_capped: Option<usize>,
    next_lookahead: usize,
    relators: Rc<Vec<Vec<u32>>>,
    subgroup: Rc<Vec<Vec<u32>>>,
    /// Relators and their inverses, each registered under every column it
    /// contains as `(word, offset)`; used for Felsch deduction processing.
    cyclic: Rc<Vec<Vec<u32>>>,
    by_col: Rc<Vec<Vec<(u32, u32)>>>,
    record: bool,
    deductions: Vec<(u32, u32)>,
    queue: Vec<u32>,
    cancel: Option<&'a AtomicBool>,
    strategy: Strategy,
}

impl<'a> Engine<'a> {
    fn new(num_gens: usize, mut relators: Vec<Vec<u32>>, subgroup: Vec<Vec<u32>>, opts: &'a EnumOptions) -> Self {
        let ncols = 2 * num_gens;
        // short relators first: they close the table cheaply
        relators.sort_by_key(Vec::len);
        let record = opts.strategy == Strategy::Felsch;
        // dead rows can make up half the table between compactions
        let row_bytes = 2 * 4 * ncols.max(1);
        let budget = opts.budget.min((opts.max_table_bytes / row_bytes).max(1));
        let mut cyclic = Vec::new();
        let mut by_col = vec![Vec::new(); ncols];
        if record {
            for r in &relators {
                let inv: Vec<u32> = r.iter().rev().map(|c| c ^ 1).collect();
                for w in [r.clone(), inv] {
                    let wi = cyclic.len() as u32;
                    for (off, &c) in w.iter().enumerate() {
                        by_col[c as usize].push((wi, off as u32));
                    }
                    cyclic.push(w);
                }
            }
        }
        Self {
            ncols,
            table: vec![NONE; 2 * ncols],
            forward: vec![0, 1],
            n: 1,
            live: 1,
            max_live: 1,
            total_defined: 1,
            changes: 0,
            budget,
            memory_capped: (budget < opts.budget).then_some(opts.max_table_bytes),
            next_lookahead: FIRST_LOOKAHEAD.min(budget),
            relators: Rc::new(relators),
            subgroup: Rc::new(subgroup),
            cyclic: Rc::new(cyclic),
            by_col: Rc::new(by_col),
            record,
            deductions: Vec::new(),
            queue: Vec::new(),
            cancel: opts.cancel.as_deref(),
            strategy: opts.strategy,
        }
    }

    #[inline]
    fn get(&self, c: u32, col: u32) -> u32 {
        self.table[c as usize * self.ncols + col as usize]
    }

    #[inline]
    fn set(&mut self, c: u32, col: u32, d: u32) {
        self.table[c as usize * self.ncols + col as usize] = d;
    }

    #[inline]
    fn alive(&self, c: u32) -> bool {
        self.forward[c as usize] == c
    }

    fn row_complete(&self, c: u32) -> bool {
        (0..self.ncols as u32).all(|col| self.get(c, col) != NONE)
    }

    fn check_cancel(&self) -> Result<(), EnumError> {
        if self.cancel.is_some_and(|f| f.load(Ordering::Relaxed)) {
            Err(EnumError::Cancelled)
        } else {
            Ok(())
        }
    }

    /// Makes room for one more coset. Under HLT this may run a lookahead, in
    /// which case the caller's scan state is stale and it must restart.
    fn reserve(&mut self) -> Result<Flow, EnumError> {
        if self.strategy == Strategy::Hlt && self.live >= self.next_lookahead {
            let at_budget = self.live >= self.budget;
            self.lookahead();
            // Near-useless lookahead at the cap means the table is really full.
            if at_budget && self.live > self.budget - (self.budget / 64).max(1) {
                return Err(self.exceeded());
            }
            self.next_lookahead = (2 * self.live).max(self.next_lookahead).min(self.budget);
            return Ok(Flow::Restart);
        }
        if self.live >= self.budget {
            return Err(self.exceeded());
        }
        Ok(Flow::Done)
    }

    fn exceeded(&self) -> EnumError {
        match self.memory_capped {
            Some(max_bytes) => EnumError::TableTooLarge {
                cosets: self.budget,
                columns: self.ncols,
                max_bytes,
            },
            None => EnumError::BudgetExceeded { budget: self.budget },
        }
    }

    /// Defines `c^col` as a fresh coset. The caller has reserved room.
    fn define(&mut self, c: u32, col: u32) -> Result<u32, EnumError> {
        debug_assert!(self.live < self.budget);
        self.total_defined += 1;
        if self.total_defined % POLL_INTERVAL == 0 {
            self.check_cancel()?;
        }
        self.n += 1;
        let d = self.n;
        self.table.extend(std::iter::repeat(NONE).take(self.ncols));
        self.forward.push(d);
        self.live += 1;
        self.max_live = self.max_live.max(self.live);
        self.set(c, col, d);
        self.set(d, col ^ 1, c);
        if self.record {
            self.deductions.push((c, col));
        }
        Ok(d)
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.forward[r as usize] != r {
            r = self.forward[r as usize];
        }
        let mut x = c;
        while self.forward[x as usize] != r {
            let next = self.forward[x as usize];
            self.forward[x as usize] = r;
            x = next;
        }
        r
    }

    fn merge(&mut self, a: u32, b: u32) {
        let a = self.rep(a);
        let b = self.rep(b);
        if a != b {
            let (keep, kill) = if a < b { (a, b) } else { (b, a) };
            self.forward[kill as usize] = keep;
            self.live -= 1;
            self.queue.push(kill);
        }
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.changes += 1;
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let g = self.queue[i];
            i += 1;
            for col in 0..self.ncols as u32 {
                let d = self.get(g, col);
                if d == NONE {
                    continue;
                }
                let inv = col ^ 1;
                self.set(d, inv, NONE);
                let mu = self.rep(g);
                let nu = self.rep(d);
                let mu_img = self.get(mu, col);
                if mu_img != NONE {
                    self.merge(nu, mu_img);
                } else {
                    let nu_img = self.get(nu, inv);
                    if nu_img != NONE {
                        self.merge(mu, nu_img);
                    } else {
                        self.set(mu, col, nu);
                        self.set(nu, inv, mu);
                        if self.record {
                            self.deductions.push((mu, col));
                        }
                    }
                }
            }
        }
    }

    /// Traces the rotation of `w` starting at `offset` from `c` in both
    /// directions, filling a single gap and processing coincidences, but
    /// never defining cosets.
    fn scan_and_deduce(&mut self, c: u32, w: &[u32], offset: usize) {
        let len = w.len();
        let at = |k: usize| w[(offset + k) % len];
        let mut f = c;
        let mut i = 0;
        let mut b = c;
        let mut j = len;
        while i < j {
            let next = self.get(f, at(i));
            if next == NONE {
                break;
            }
            f = next;
            i += 1;
        }
        if i == j {
            if f != b {
                self.coincidence(f, b);
            }
            return;
        }
        while j > i {
            let next = self.get(b, at(j - 1) ^ 1);
            if next == NONE {
                break;
            }
            b = next;
            j -= 1;
        }
        if j == i {
            if f != b {
                self.coincidence(f, b);
            }
        } else if j == i + 1 {
            let col = at(i);
            self.changes += 1;
            self.set(f, col, b);
            self.set(b, col ^ 1, f);
            if self.record {
                self.deductions.push((f, col));
            }
        }
    }

    /// Traces `w` from `c`, defining cosets until it closes.
    fn scan_and_fill(&mut self, c: u32, w: &[u32]) -> Result<Flow, EnumError> {
        let len = w.len();
        let mut f = c;
        let mut i = 0;
        let mut b = c;
        let mut j = len;
        loop {
            while i < j {
                let next = self.get(f, w[i]);
                if next == NONE {
                    break;
                }
                f = next;
                i += 1;
            }
            if i == j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(Flow::Done);
            }
            while j > i {
                let next = self.get(b, w[j - 1] ^ 1);
                if next == NONE {
                    break;
                }
                b = next;
                j -= 1;
            }
            if j == i {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(Flow::Done);
            }
            if j == i + 1 {
                self.changes += 1;
                self.set(f, w[i], b);
                self.set(b, w[i] ^ 1, f);
                if self.record {
                    self.deductions.push((f, w[i]));
                }
                return Ok(Flow::Done);
            }
            if let Flow::Restart = self.reserve()? {
                return Ok(Flow::Restart);
            }
            self.define(f, w[i])?;
        }
    }

    fn lookahead(&mut self) {
        let relators = Rc::clone(&self.relators);
        for c in 1..=self.n {
            for r in relators.iter() {
                if !self.alive(c) {
                    break;
                }
                self.scan_and_deduce(c, r, 0);
            }
        }
    }

    /// Drops dead rows, renumbering live cosets in their existing order.
    /// Returns the new number of the first live coset at or after `cursor`.
    fn compact(&mut self, cursor: u32) -> u32 {
        let mut map = vec![NONE; self.n as usize + 1];
        let mut next = 0;
        for c in 1..=self.n {
            if self.alive(c) {
                next += 1;
                map[c as usize] = next;
            }
        }
        let mut table = vec![NONE; (next as usize + 1) * self.ncols];
        for c in 1..=self.n {
            let nc = map[c as usize];
            if nc == NONE {
                continue;
            }
            for col in 0..self.ncols {
                let d = self.table[c as usize * self.ncols + col];
                table[nc as usize * self.ncols + col] = if d == NONE { NONE } else { map[d as usize] };
            }
        }
        let new_cursor = (cursor..=self.n)
            .find(|&c| map[c as usize] != NONE)
            .map_or(next + 1, |c| map[c as usize]);
        for d in &mut self.deductions {
            d.0 = map[d.0 as usize];
        }
        self.deductions.retain(|d| d.0 != NONE);
        self.table = table;
        self.forward = (0..=next).collect();
        self.n = next;
        new_cursor
    }

    fn maybe_compact(&mut self, cursor: u32) -> u32 {
        if self.n as usize > 2 * self.live && self.n > 10_000 {
            self.compact(cursor)
        } else {
            cursor
        }
    }

    fn run_hlt(&mut self) -> Result<(), EnumError> {
        let subgroup = Rc::clone(&self.subgroup);
        let relators = Rc::clone(&self.relators);
        'subgroup: loop {
            for w in subgroup.iter() {
                if let Flow::Restart = self.scan_and_fill(1, w)? {
                    continue 'subgroup;
                }
            }
            break;
        }
        let mut c: u32 = 1;
        'cosets: while c <= self.n {
            if self.alive(c) {
                for r in relators.iter() {
                    if let Flow::Restart = self.scan_and_fill(c, r)? {
                        continue 'cosets;
                    }
                    if !self.alive(c) {
                        break;
                    }
                }
                if self.alive(c) {
                    for col in 0..self.ncols as u32 {
                        if self.get(c, col) == NONE {
                            if let Flow::Restart = self.reserve()? {
                                continue 'cosets;
                            }
                            self.define(c, col)?;
                        }
                    }
                }
            }
            c = self.maybe_compact(c + 1);
        }
        Ok(())
    }

    fn process_deductions(&mut self) {
        let subgroup = Rc::clone(&self.subgroup);
        let cyclic = Rc::clone(&self.cyclic);
        let by_col = Rc::clone(&self.by_col);
        while let Some((c, col)) = self.deductions.pop() {
            if !self.alive(c) {
                continue;
            }
            for &(wi, off) in &by_col[col as usize] {
                if !self.alive(c) {
                    break;
                }
                self.scan_and_deduce(c, &cyclic[wi as usize], off as usize);
            }
            if self.alive(c) {
                let d = self.get(c, col);
                if d != NONE {
                    for &(wi, off) in &by_col[(col ^ 1) as usize] {
                        if !self.alive(d) {
                            break;
                        }
                        self.scan_and_deduce(d, &cyclic[wi as usize], off as usize);
                    }
                }
            }
            for w in subgroup.iter() {
                self.scan_and_deduce(1, w, 0);
            }
        }
    }

    fn run_felsch(&mut self) -> Result<(), EnumError> {
        let subgroup = Rc::clone(&self.subgroup);
        for w in subgroup.iter() {
            let _ = self.scan_and_fill(1, w)?;
            self.process_deductions();
        }
        // Seed coset 1 so that relators through undefined entries of the
        // first row, such as length-one relators, get scanned.
        for col in (0..self.ncols as u32).rev() {
            self.deductions.push((1, col));
        }
        self.process_deductions();
        let mut c: u32 = 1;
        loop {
            while c <= self.n && (!self.alive(c) || self.row_complete(c)) {
                c += 1;
            }
            if c > self.n {
                if self.verify_closed() {
                    return Ok(());
                }
                c = 1;
                continue;
            }
            let col = (0..self.ncols as u32)
                .find(|&col| self.get(c, col) == NONE)
                .expect("row has a gap");
            self.reserve()?;
            self.define(c, col)?;
            self.process_deductions();
            c = self.maybe_compact(c);
        }
    }

    /// Full scan of every relator at every live coset. True if nothing
    /// changed and every live row is complete.
    fn verify_closed(&mut self) -> bool {
        let before = self.changes;
        self.lookahead();
        let subgroup = Rc::clone(&self.subgroup);
        for w in subgroup.iter() {
            self.scan_and_deduce(1, w, 0);
        }
        self.process_deductions();
        let complete = (1..=self.n).filter(|&c| self.alive(c)).all(|c| self.row_complete(c));
        before == self.changes && complete
    }

    fn standardize(&self) -> CosetTable {
        let mut order = vec![1u32];
        let mut number = vec![u32::MAX; self.n as usize + 1];
        number[1] = 0;
        let mut k = 0;
        while k < order.len() {
            let c = order[k];
            for col in 0..self.ncols as u32 {
                let d = self.get(c, col);
                debug_assert!(d != NONE && self.alive(d));
                if number[d as usize] == u32::MAX {
                    number[d as usize] = order.len() as u32;
                    order.push(d);
                }
            }
            k += 1;
        }
        let index = order.len();
        let mut table = Vec::with_capacity(index * self.ncols);
        for &c in &order {
            for col in 0..self.ncols as u32 {
                table.push(number[self.get(c, col) as usize]);
            }
        }
        CosetTable {
            num_gens: self.ncols / 2,
            index,
            table,
            stats: EnumStats {
                strategy: self.strategy,
                max_live: self.max_live,
                total_defined: self.total_defined,
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres(s: &str) -> FpPresentation {
        s.parse().unwrap()
    }

    fn both(p: &FpPresentation, h: &[Word]) -> usize {
        let a = coset_enumerate(p, h, &EnumOptions::with_strategy(Strategy::Hlt)).unwrap();
        let b = coset_enumerate(p, h, &EnumOptions::with_strategy(Strategy::Felsch)).unwrap();
        assert_eq!(a, b, "standardized tables differ between strategies");
        assert!(a.is_consistent());
        for r in p.relators() {
            assert!(a.satisfies(r));
        }
        a.index()
    }

    #[test]
    fn cyclic_group() {
        assert_eq!(both(&pres("< a | a^6 >"), &[]), 6);
    }

    #[test]
    fn symmetric_group_s3() {
        assert_eq!(both(&pres("< a, b | a^2, b^2, (a b)^3 >"), &[]), 6);
    }

    #[test]
    fn pure_braid_index_in_b3() {
        let b3 = pres("< s1, s2 | s1 s2 s1 = s2 s1 s2 >");
        let h: Vec<Word> = ["s1^2", "s2^2", "s2 s1^2 s2^-1"]
            .iter()
            .map(|w| b3.parse_word(w).unwrap())
            .collect();
        assert_eq!(both(&b3, &h), 6);
    }

    #[test]
    fn infinite_group_exceeds_budget() {
        let b3 = pres("< s1, s2 | s1 s2 s1 = s2 s1 s2 >");
        for s in [Strategy::Hlt, Strategy::Felsch] {
            let err = coset_enumerate(&b3, &[], &EnumOptions::with_strategy(s).budget(5_000)).unwrap_err();
            assert_eq!(err, EnumError::BudgetExceeded { budget: 5_000 });
        }
    }

    #[test]
    fn trivial_group_and_whole_subgroup() {
        assert_eq!(both(&pres("< a, b | a, b >"), &[]), 1);
        let s3 = pres("< a, b | a^2, b^2, (a b)^3 >");
        assert_eq!(both(&s3, &[Word::gen(0), Word::gen(1)]), 1);
        assert_eq!(both(&s3, &[Word::gen(0)]), 3);
    }

    #[test]
    fn larger_groups() {
        assert_eq!(both(&pres("< a, b | a^2, b^3, (a b)^5 >"), &[]), 60);
        assert_eq!(both(&pres("< a, b | a^2, b^3, (a b)^4 >"), &[]), 24);
        // Coxeter presentation with some redundancy
        assert_eq!(both(&pres("< a, b, c | a^2, b^2, c^2, (a b)^3, (b c)^3, (a c)^2 >"), &[]), 24);
    }

    #[test]
    fn cancellation_is_honoured() {
        let flag = Arc::new(AtomicBool::new(true));
        let opts = EnumOptions {
            cancel: Some(flag),
            ..EnumOptions::default()
        };
        let free = pres("< a, b | >");
        assert_eq!(coset_enumerate(&free, &[], &opts).unwrap_err(), EnumError::Cancelled);
    }

    #[test]
    fn tiny_budget() {
        let z6 = pres("< a | a^6 >");
        let err = coset_enumerate(&z6, &[], &EnumOptions::default().budget(3)).unwrap_err();
        assert!(matches!(err, EnumError::BudgetExceeded { .. }));
        assert_eq!(coset_enumerate(&pres("< a | a >"), &[], &EnumOptions::default().budget(1)).unwrap().index(), 1);
    }

    #[test]
    fn memory_cap_lowers_the_budget() {
        let b3 = pres("< s1, s2 | s1 s2 s1 = s2 s1 s2 >");
        let opts = EnumOptions {
            max_table_bytes: 4 * 2 * 4 * 1000,
            ..EnumOptions::default()
        };
        let err = coset_enumerate(&b3, &[], &opts).unwrap_err();
        assert!(matches!(err, EnumError::TableTooLarge { cosets: 1000, columns: 4, .. }), "{err}");
        assert_eq!(coset_enumerate(&pres("< a, b | a^2, b^2, (a b)^3 >"), &[], &opts).unwrap().index(), 6);
    }
}
