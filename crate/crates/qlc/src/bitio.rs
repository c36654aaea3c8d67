//! MSB-first bit packing. The first bit written lands in bit 7 of
//! byte 0, matching the left-to-right notation of the code tables.

/// Accumulates codewords into a byte buffer, MSB-first.
pub struct BitWriter {
    buf: Vec<u8>,
    acc: u64,
    nbits: u32,
}

impl BitWriter {
    pub fn new() -> Self {
        BitWriter {
            buf: Vec::new(),
            acc: 0,
            nbits: 0,
        }
    }

    /// Append the low `len` bits of `value`, most significant first.
    #[inline]
    pub fn write_bits(&mut self, value: u32, len: u8) {
        debug_assert!(len <= 32);
        self.acc = (self.acc << len) | (value as u64 & ((1u64 << len) - 1));
        self.nbits += len as u32;
        while self.nbits >= 8 {
            self.nbits -= 8;
            self.buf.push((self.acc >> self.nbits) as u8);
        }
    }

    pub fn bits_written(&self) -> u64 {
        self.buf.len() as u64 * 8 + self.nbits as u64
    }

    /// Zero-pad to a byte boundary and return the buffer.
    pub fn finish(mut self) -> Vec<u8> {
        if self.nbits > 0 {
            let pad = 8 - self.nbits;
            self.buf.push((self.acc << pad) as u8);
            self.nbits = 0;
        }
        self.buf
    }
}

impl Default for BitWriter {
    fn default() -> Self {
        Self::new()
    }
}

/// Buffered MSB-first reader; refills a 64-bit accumulator bytewise and
/// serves multi-bit reads straight from it.
pub struct BitReader<'a> {
    data: &'a [u8],
    pos: usize,
    acc: u64,
    nbits: u32,
}

impl<'a> BitReader<'a> {
    pub fn new(data: &'a [u8]) -> Self {
        BitReader {
            data,
            pos: 0,
            acc: 0,
            nbits: 0,
        }
    }

    #[inline]
    fn refill(&mut self) {
        while self.nbits <= 56 && self.pos < self.data.len() {
            self.acc = (self.acc << 8) | self.data[self.pos] as u64;
            self.pos += 1;
            self.nbits += 8;
        }
    }

    /// Read `len` bits as an unsigned integer, or None if the stream is
    /// exhausted.
    #[inline]
    pub fn read_bits(&mut self, len: u8) -> Option<u32> {
        if (self.nbits as u8) < len {
            self.refill();
            if (self.nbits as u8) < len {
                return None;
            }
        }
        self.nbits -= len as u32;
        Some(((self.acc >> self.nbits) & ((1u64 << len) - 1)) as u32)
    }

    /// Bits left unread, counting stream padding.
    pub fn bits_remaining(&self) -> u64 {
        self.nbits as u64 + (self.data.len() - self.pos) as u64 * 8
    }
}
