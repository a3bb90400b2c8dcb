use crate::error::{Error, Result};
use crate::model::ControlWord;

/// Mixed-radix encoding of words in `U^n` as integers. Numeric order of codes
/// equals lexicographic order of words.
#[derive(Clone, Copy, Debug)]
pub struct WordCodec {
    radix: u64,
    len: usize,
}

impl WordCodec {
    pub fn new(inputs: usize, len: usize) -> Result<Self> {
        let radix = inputs as u64;
        let fits = u32::try_from(len)
            .ok()
            .and_then(|l| radix.checked_pow(l))
            .is_some();
        if !fits || inputs == 0 {
            return Err(Error::WordSpaceTooLarge { inputs, len });
        }
        Ok(Self { radix, len })
    }

    /// Word length.
    pub fn word_len(&self) -> usize {
        self.len
    }

    pub fn radix(&self) -> u64 {
        self.radix
    }

    /// `radix^h`.
    pub fn place(&self, h: usize) -> u64 {
        self.radix.pow(h as u32)
    }

    /// Number of words of the full length.
    pub fn space(&self) -> u64 {
        self.place(self.len)
    }

    pub fn encode(&self, word: &[usize]) -> u64 {
        word.iter().fold(0, |acc, &u| acc * self.radix + u as u64)
    }

    pub fn decode(&self, mut code: u64) -> ControlWord {
        let mut out = vec![0; self.len];
        for slot in out.iter_mut().rev() {
            *slot = (code % self.radix) as usize;
            code /= self.radix;
        }
        ControlWord(out)
    }

    /// Symbol at position `i` of a full-length code.
    pub fn symbol(&self, code: u64, i: usize) -> usize {
        ((code / self.place(self.len - 1 - i)) % self.radix) as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn codes_preserve_lexicographic_order() {
        let c = WordCodec::new(3, 3).unwrap();
        let mut words = Vec::new();
        for code in 0..c.space() {
            let w = c.decode(code);
            assert_eq!(c.encode(w.symbols()), code);
            for i in 0..3 {
                assert_eq!(c.symbol(code, i), w.symbols()[i]);
            }
            words.push(w);
        }
        let mut sorted = words.clone();
        sorted.sort();
        assert_eq!(words, sorted);
        assert!(WordCodec::new(2, 64).is_err());
        assert!(WordCodec::new(2, 63).is_ok());
    }
}
