//! Binary index snapshot.
//!
//! Layout (all integers little-endian):
//!
//! ```text
//! magic   "TGINDEX\0"
//! version u32
//! section* : tag [u8; 4] | payload length u64 | payload
//!   "PAPR": count u32, then per paper: id length u32, id bytes, days since CE i32
//!   "GRPH": count u32, then per paper: k u32, k cited paper positions u32
//!   "POST": count u32, then per term: length u32, phrase bytes, k u32, k paper positions u32
//! ```
//!
//! Paper positions refer to the `PAPR` order, which is the corpus date order.

use std::fs;
use std::path::Path;

use chrono::{Datelike, NaiveDate};

use super::{CitationGraph, Index, IndexError, PaperMeta, TermPostings};
use crate::corpus::PaperIdx;
use crate::textnorm::PhraseKey;

const MAGIC: &[u8; 8] = b"TGINDEX\0";
pub const VERSION: u32 = 1;

fn put_u32(buf: &mut Vec<u8>, v: u32) {
    buf.extend_from_slice(&v.to_le_bytes());
}

fn put_str(buf: &mut Vec<u8>, s: &str) {
    put_u32(buf, s.len() as u32);
    buf.extend_from_slice(s.as_bytes());
}

fn section(out: &mut Vec<u8>, tag: &[u8; 4], payload: Vec<u8>) {
    out.extend_from_slice(tag);
    out.extend_from_slice(&(payload.len() as u64).to_le_bytes());
    out.extend_from_slice(&payload);
}

pub fn encode(index: &Index) -> Vec<u8> {
    let mut out = Vec::new();
    out.extend_from_slice(MAGIC);
    put_u32(&mut out, VERSION);

    let mut papers = Vec::new();
    put_u32(&mut papers, index.paper_count() as u32);
    for p in index.papers() {
        put_str(&mut papers, &p.id);
        papers.extend_from_slice(&p.date.num_days_from_ce().to_le_bytes());
    }
    section(&mut out, b"PAPR", papers);

    let mut graph = Vec::new();
    put_u32(&mut graph, index.paper_count() as u32);
    for i in 0..index.paper_count() {
        let cites = index.graph().cites(PaperIdx(i as u32));
        put_u32(&mut graph, cites.len() as u32);
        for c in cites {
            put_u32(&mut graph, c.0);
        }
    }
    section(&mut out, b"GRPH", graph);

    let mut postings = Vec::new();
    put_u32(&mut postings, index.postings().len() as u32);
    for (_, term, list) in index.postings().iter() {
        put_str(&mut postings, term.as_str());
        put_u32(&mut postings, list.len() as u32);
        for p in list {
            put_u32(&mut postings, p.0);
        }
    }
    section(&mut out, b"POST", postings);
    out
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

fn bad(msg: impl Into<String>) -> IndexError {
    IndexError::Snapshot(msg.into())
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8], IndexError> {
        let end = self.pos.checked_add(n).filter(|&e| e <= self.bytes.len());
        let end = end.ok_or_else(|| bad("truncated"))?;
        let slice = &self.bytes[self.pos..end];
        self.pos = end;
        Ok(slice)
    }

    fn u32(&mut self) -> Result<u32, IndexError> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn i32(&mut self) -> Result<i32, IndexError> {
        Ok(i32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn u64(&mut self) -> Result<u64, IndexError> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    fn string(&mut self) -> Result<String, IndexError> {
        let n = self.u32()? as usize;
        String::from_utf8(self.take(n)?.to_vec()).map_err(|_| bad("invalid UTF-8"))
    }

    fn done(&self) -> bool {
        self.pos == self.bytes.len()
    }

    fn section(&mut self, tag: &[u8; 4]) -> Result<Reader<'a>, IndexError> {
        let got = self.take(4)?;
        if got != tag {
            return Err(bad(format!(
                "expected section {}, found {}",
                String::from_utf8_lossy(tag),
                String::from_utf8_lossy(got)
            )));
        }
        let len = usize::try_from(self.u64()?).map_err(|_| bad("section too large"))?;
        Ok(Reader {
            bytes: self.take(len)?,
            pos: 0,
        })
    }
}

fn positions(r: &mut Reader<'_>, n: usize) -> Result<Vec<PaperIdx>, IndexError> {
    let k = r.u32()? as usize;
    let mut out = Vec::with_capacity(k.min(n));
    for _ in 0..k {
        let p = r.u32()?;
        if p as usize >= n {
            return Err(bad(format!("paper position {p} out of range")));
        }
        out.push(PaperIdx(p));
    }
    Ok(out)
}

pub fn decode(bytes: &[u8]) -> Result<Index, IndexError> {
    let mut r = Reader { bytes, pos: 0 };
    if r.take(MAGIC.len())? != MAGIC {
        return Err(bad("not an index snapshot"));
    }
    let version = r.u32()?;
    if version != VERSION {
        return Err(bad(format!("unsupported version {version}")));
    }

    let mut s = r.section(b"PAPR")?;
    let n = s.u32()? as usize;
    let mut papers = Vec::with_capacity(n);
    for _ in 0..n {
        let id = s.string()?;
        let date = NaiveDate::from_num_days_from_ce_opt(s.i32()?).ok_or_else(|| bad("invalid date"))?;
        papers.push(PaperMeta { id, date });
    }
    if !s.done() || papers.windows(2).any(|w| (w[0].date, &w[0].id) >= (w[1].date, &w[1].id)) {
        return Err(bad("paper table is not in strict date order"));
    }

    let mut s = r.section(b"GRPH")?;
    if s.u32()? as usize != n {
        return Err(bad("graph size does not match paper table"));
    }
    let cites = (0..n).map(|_| positions(&mut s, n)).collect::<Result<Vec<_>, _>>()?;
    if !s.done() {
        return Err(bad("trailing bytes in graph section"));
    }
    let graph = CitationGraph::from_adjacency(cites);

    let mut s = r.section(b"POST")?;
    let count = s.u32()? as usize;
    let mut terms = Vec::with_capacity(count);
    let mut lists = Vec::with_capacity(count);
    for _ in 0..count {
        let text = s.string()?;
        let term = PhraseKey::parse(&text).map_err(|e| bad(format!("term {text:?}: {e}")))?;
        if term.as_str() != text {
            return Err(bad(format!("term {text:?} is not canonical")));
        }
        let list = positions(&mut s, n)?;
        if list.windows(2).any(|w| w[0] >= w[1]) {
            return Err(bad(format!("postings for {text:?} are not strictly increasing")));
        }
        terms.push(term);
        lists.push(list);
    }
    if !s.done() || !r.done() {
        return Err(bad("trailing bytes"));
    }
    if terms.windows(2).any(|w| w[0] >= w[1]) {
        return Err(bad("terms are not sorted and unique"));
    }
    Ok(Index::from_parts(papers, graph, TermPostings::from_parts(terms, lists)))
}

pub fn save(index: &Index, path: impl AsRef<Path>) -> Result<(), IndexError> {
    fs::write(path, encode(index))?;
    Ok(())
}

pub fn load(path: impl AsRef<Path>) -> Result<Index, IndexError> {
    decode(&fs::read(path)?)
}
