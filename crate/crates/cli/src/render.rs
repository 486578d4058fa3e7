use std::fmt::Write;

use cdawg_maw::text::SentinelCodes;

/// How symbols are shown on output.
#[derive(Clone, Copy, Debug)]
pub struct Style {
    pub codes: SentinelCodes,
    pub has_start: bool,
    pub has_end: bool,
    pub pretty: bool,
}

impl Style {
    pub fn push(&self, out: &mut String, c: u8) {
        if self.pretty {
            if self.has_start && c == self.codes.start {
                out.push('♯');
                return;
            }
            if self.has_end && c == self.codes.end {
                out.push('$');
                return;
            }
        }
        match c {
            b'\\' => out.push_str("\\\\"),
            b'\n' => out.push_str("\\n"),
            b'\t' => out.push_str("\\t"),
            b'\r' => out.push_str("\\r"),
            0x20..=0x7e => out.push(c as char),
            _ => {
                let _ = write!(out, "\\x{c:02x}");
            }
        }
    }

    pub fn word(&self, w: &[u8]) -> String {
        let mut s = String::with_capacity(w.len());
        for &c in w {
            self.push(&mut s, c);
        }
        s
    }

    /// Like [`Style::word`], keeping at most `max` symbols.
    pub fn clipped(&self, w: &[u8], max: usize) -> String {
        if w.len() <= max {
            return self.word(w);
        }
        let mut s = self.word(&w[..max]);
        s.push('…');
        s
    }
}
