//! LZ4 block-format encoder (fast mode, acceleration 1, 4096-entry hash table).
//!
//! Besides plain compression this encoder can suspend itself after a prefix
//! and later finish the job for `prefix ‖ suffix` without rescanning the
//! prefix. The multiset scorer compresses the growing prioritized set
//! concatenated with every candidate, so the prefix is shared by all
//! candidates of one iteration.
//!
//! A suspended state is taken at the top of a match-search iteration. Every
//! decision made before that point only read bytes of the prefix and only
//! passed end-of-input checks that stay false for longer inputs, so resuming
//! on `prefix ‖ suffix` reproduces the full encoding exactly.

const MIN_MATCH: usize = 4;
const LAST_LITERALS: usize = 5;
const MF_LIMIT: usize = 12;
const MIN_LENGTH: usize = MF_LIMIT + 1;
const HASH_LOG: u32 = 12;
const TABLE_SIZE: usize = 1 << HASH_LOG;
const MAX_DISTANCE: usize = 65_535;
const SKIP_TRIGGER: u32 = 6;
const RUN_MASK: usize = 15;
const ML_MASK: usize = 15;

type Table = [u32; TABLE_SIZE];

#[inline]
fn hash(sequence: u32) -> usize {
    (sequence.wrapping_mul(2_654_435_761) >> (32 - HASH_LOG)) as usize
}

#[inline]
fn common_prefix(a: &[u8], b: &[u8]) -> usize {
    let n = a.len().min(b.len());
    let mut i = 0;
    while i + 8 <= n {
        let x = u64::from_le_bytes(a[i..i + 8].try_into().unwrap());
        let y = u64::from_le_bytes(b[i..i + 8].try_into().unwrap());
        let diff = x ^ y;
        if diff != 0 {
            return i + (diff.trailing_zeros() / 8) as usize;
        }
        i += 8;
    }
    while i < n && a[i] == b[i] {
        i += 1;
    }
    i
}

/// Random access over the bytes being compressed.
trait Input {
    fn len(&self) -> usize;
    /// Contiguous bytes starting at `i`, up to the end of the backing part.
    fn slice_at(&self, i: usize) -> &[u8];
    fn byte(&self, i: usize) -> u8;
    fn read32(&self, i: usize) -> u32;

    /// Length of the common run at `p` and `q`, stopping before `limit` on the `p` side.
    fn match_len(&self, mut p: usize, mut q: usize, limit: usize) -> usize {
        let mut total = 0;
        while p < limit {
            let a = self.slice_at(p);
            let a = &a[..a.len().min(limit - p)];
            let b = self.slice_at(q);
            let n = a.len().min(b.len());
            let k = common_prefix(&a[..n], &b[..n]);
            total += k;
            p += k;
            q += k;
            if k < n {
                break;
            }
        }
        total
    }
}

impl Input for [u8] {
    fn len(&self) -> usize {
        <[u8]>::len(self)
    }

    fn slice_at(&self, i: usize) -> &[u8] {
        &self[i..]
    }

    #[inline]
    fn byte(&self, i: usize) -> u8 {
        self[i]
    }

    #[inline]
    fn read32(&self, i: usize) -> u32 {
        u32::from_le_bytes(self[i..i + 4].try_into().unwrap())
    }
}

/// `head ‖ tail` without copying `head`.
struct Joined<'a> {
    head: &'a [u8],
    tail: &'a [u8],
}

impl Input for Joined<'_> {
    fn len(&self) -> usize {
        self.head.len() + self.tail.len()
    }

    fn slice_at(&self, i: usize) -> &[u8] {
        if i < self.head.len() {
            &self.head[i..]
        } else {
            &self.tail[i - self.head.len()..]
        }
    }

    #[inline]
    fn byte(&self, i: usize) -> u8 {
        if i < self.head.len() {
            self.head[i]
        } else {
            self.tail[i - self.head.len()]
        }
    }

    #[inline]
    fn read32(&self, i: usize) -> u32 {
        let h = self.head.len();
        if i + 4 <= h {
            u32::from_le_bytes(self.head[i..i + 4].try_into().unwrap())
        } else if i >= h {
            let j = i - h;
            u32::from_le_bytes(self.tail[j..j + 4].try_into().unwrap())
        } else {
            u32::from_le_bytes([self.byte(i), self.byte(i + 1), self.byte(i + 2), self.byte(i + 3)])
        }
    }
}

trait Sink {
    fn sequence<I: Input + ?Sized>(&mut self, input: &I, anchor: usize, literals: usize, offset: usize, match_len: usize);
    fn last_literals<I: Input + ?Sized>(&mut self, input: &I, anchor: usize, literals: usize);
    fn emitted(&self) -> usize;
}

#[inline]
fn length_bytes(n: usize) -> usize {
    if n >= RUN_MASK {
        (n - RUN_MASK) / 255 + 1
    } else {
        0
    }
}

struct Counter(usize);

impl Sink for Counter {
    #[inline]
    fn sequence<I: Input + ?Sized>(&mut self, _: &I, _: usize, literals: usize, _: usize, match_len: usize) {
        self.0 += 1 + length_bytes(literals) + literals + 2 + length_bytes(match_len - MIN_MATCH);
    }

    #[inline]
    fn last_literals<I: Input + ?Sized>(&mut self, _: &I, _: usize, literals: usize) {
        self.0 += 1 + length_bytes(literals) + literals;
    }

    fn emitted(&self) -> usize {
        self.0
    }
}

struct Writer(Vec<u8>);

impl Writer {
    fn length(&mut self, n: usize) {
        if n >= RUN_MASK {
            let mut rest = n - RUN_MASK;
            while rest >= 255 {
                self.0.push(255);
                rest -= 255;
            }
            self.0.push(rest as u8);
        }
    }

    fn literals<I: Input + ?Sized>(&mut self, input: &I, from: usize, n: usize) {
        self.0.extend((from..from + n).map(|i| input.byte(i)));
    }
}

impl Sink for Writer {
    fn sequence<I: Input + ?Sized>(&mut self, input: &I, anchor: usize, literals: usize, offset: usize, match_len: usize) {
        let code = match_len - MIN_MATCH;
        self.0
            .push(((literals.min(RUN_MASK) as u8) << 4) | code.min(ML_MASK) as u8);
        self.length(literals);
        self.literals(input, anchor, literals);
        self.0.extend_from_slice(&(offset as u16).to_le_bytes());
        self.length(code);
    }

    fn last_literals<I: Input + ?Sized>(&mut self, input: &I, anchor: usize, literals: usize) {
        self.0.push((literals.min(RUN_MASK) as u8) << 4);
        self.length(literals);
        self.literals(input, anchor, literals);
    }

    fn emitted(&self) -> usize {
        self.0.len()
    }
}

/// Scalar state of the match search.
#[derive(Debug, Clone, Copy)]
struct Search {
    anchor: usize,
    forward: usize,
    step: usize,
    attempts: usize,
    forward_hash: usize,
}

impl Search {
    fn at(anchor: usize, pos: usize, forward_hash: usize) -> Self {
        Search {
            anchor,
            forward: pos,
            step: 1,
            attempts: 1 << SKIP_TRIGGER,
            forward_hash,
        }
    }
}

/// Records the most recent suspend point and undoes table writes made after it.
#[derive(Default)]
struct Tracker {
    saved: Option<(Search, usize)>,
    undo: Vec<(usize, u32)>,
}

fn encode<I, S, const TRACK: bool>(
    input: &I,
    table: &mut Table,
    mut s: Search,
    sink: &mut S,
    tracker: &mut Tracker,
) where
    I: Input + ?Sized,
    S: Sink,
{
    let len = input.len();
    debug_assert!(len >= MIN_LENGTH);
    let mflimit_plus_one = len - MF_LIMIT + 1;
    let match_limit = len - LAST_LITERALS;
    let put = |table: &mut Table, h: usize, pos: usize, tracker: &mut Tracker| {
        if TRACK {
            tracker.undo.push((h, table[h]));
        }
        table[h] = pos as u32;
    };

    'main: loop {
        let mut ip;
        let mut m;
        loop {
            if TRACK {
                tracker.saved = Some((s, sink.emitted()));
                tracker.undo.clear();
            }
            let h = s.forward_hash;
            ip = s.forward;
            s.forward += s.step;
            s.step = s.attempts >> SKIP_TRIGGER;
            s.attempts += 1;
            if s.forward > mflimit_plus_one {
                break 'main;
            }
            m = table[h] as usize;
            s.forward_hash = hash(input.read32(s.forward));
            put(table, h, ip, tracker);
            if m + MAX_DISTANCE >= ip && input.read32(m) == input.read32(ip) {
                break;
            }
        }

        while ip > s.anchor && m > 0 && input.byte(ip - 1) == input.byte(m - 1) {
            ip -= 1;
            m -= 1;
        }

        loop {
            let literals = ip - s.anchor;
            let match_len =
                MIN_MATCH + input.match_len(ip + MIN_MATCH, m + MIN_MATCH, match_limit);
            sink.sequence(input, s.anchor, literals, ip - m, match_len);
            ip += match_len;
            s.anchor = ip;
            if ip >= mflimit_plus_one {
                break 'main;
            }
            put(table, hash(input.read32(ip - 2)), ip - 2, tracker);
            let h = hash(input.read32(ip));
            m = table[h] as usize;
            put(table, h, ip, tracker);
            if !(m + MAX_DISTANCE >= ip && input.read32(m) == input.read32(ip)) {
                break;
            }
        }

        ip += 1;
        s = Search::at(s.anchor, ip, hash(input.read32(ip)));
    }
    sink.last_literals(input, s.anchor, len - s.anchor);
}

fn fresh_start<I: Input + ?Sized>(input: &I, table: &mut Table) -> Search {
    table[hash(input.read32(0))] = 0;
    Search::at(0, 1, hash(input.read32(1)))
}

fn run<I: Input + ?Sized, S: Sink>(input: &I, sink: &mut S) {
    if input.len() < MIN_LENGTH {
        sink.last_literals(input, 0, input.len());
        return;
    }
    let mut table: Box<Table> = Box::new([0; TABLE_SIZE]);
    let start = fresh_start(input, &mut table);
    encode::<_, _, false>(input, &mut table, start, sink, &mut Tracker::default());
}

/// Size of the LZ4 block encoding of `data`.
pub fn compressed_len(data: &[u8]) -> usize {
    let mut c = Counter(0);
    run(data, &mut c);
    c.0
}

/// LZ4 block encoding of `data` (no frame, no size prefix).
pub fn compress(data: &[u8]) -> Vec<u8> {
    let mut w = Writer(Vec::with_capacity(data.len() / 2 + 16));
    run(data, &mut w);
    w.0
}

#[derive(Clone)]
struct Suspended {
    table: Box<Table>,
    search: Search,
    emitted: usize,
}

/// Growing byte buffer that answers `compressed_len(buffer ‖ suffix)` by
/// resuming from a state saved near the end of the buffer.
#[derive(Clone, Default)]
pub struct Lz4Stream {
    data: Vec<u8>,
    suspended: Option<Suspended>,
}

impl Lz4Stream {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn bytes(&self) -> &[u8] {
        &self.data
    }

    pub fn append(&mut self, bytes: &[u8]) {
        self.data.extend_from_slice(bytes);
        if self.data.len() < MIN_LENGTH {
            return;
        }
        let mut state = match self.suspended.take() {
            Some(s) => s,
            None => {
                let mut table: Box<Table> = Box::new([0; TABLE_SIZE]);
                let search = fresh_start(self.data.as_slice(), &mut table);
                Suspended {
                    table,
                    search,
                    emitted: 0,
                }
            }
        };
        let mut sink = Counter(state.emitted);
        let mut tracker = Tracker::default();
        encode::<_, _, true>(
            self.data.as_slice(),
            &mut state.table,
            state.search,
            &mut sink,
            &mut tracker,
        );
        for &(h, old) in tracker.undo.iter().rev() {
            state.table[h] = old;
        }
        let (search, emitted) = tracker.saved.expect("at least one search step");
        state.search = search;
        state.emitted = emitted;
        self.suspended = Some(state);
    }

    /// Equals `compressed_len(self.bytes() ‖ suffix)`.
    pub fn compressed_len_with(&self, suffix: &[u8]) -> usize {
        match &self.suspended {
            None => {
                let mut joined = Vec::with_capacity(self.data.len() + suffix.len());
                joined.extend_from_slice(&self.data);
                joined.extend_from_slice(suffix);
                compressed_len(&joined)
            }
            Some(state) => {
                let input = Joined {
                    head: &self.data,
                    tail: suffix,
                };
                let mut table = state.table.clone();
                let mut sink = Counter(state.emitted);
                encode::<_, _, false>(
                    &input,
                    &mut table,
                    state.search,
                    &mut sink,
                    &mut Tracker::default(),
                );
                sink.0
            }
        }
    }
}
