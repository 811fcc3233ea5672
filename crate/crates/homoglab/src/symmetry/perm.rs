//! Permutations of `0..n-1` in image-table form.

use std::fmt;

/// A bijection on `0..n-1`; `images[v]` is the image of `v`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm {
            images: (0..degree).collect(),
        }
    }

    /// Builds from an image table, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &img in &images {
            if img >= n || seen[img] {
                return None;
            }
            seen[img] = true;
        }
        Some(Perm { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, v: usize) -> usize {
        self.images[v]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &img)| i == img)
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.images.len()];
        for (v, &img) in self.images.iter().enumerate() {
            images[img] = v;
        }
        Perm { images }
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: other.images.iter().map(|&v| self.images[v]).collect(),
        }
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Smallest point moved, or None for the identity.
    pub fn first_moved(&self) -> Option<usize> {
        self.images.iter().enumerate().find(|(i, &img)| *i != img).map(|(i, _)| i)
    }

    /// Image of a vertex subset given as a ≤64-bit mask.
    pub fn apply_mask(&self, mask: u64) -> u64 {
        let mut out = 0u64;
        let mut bits = mask;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            out |= 1u64 << self.images[v];
        }
        out
    }

    /// Cycle notation, fixed points omitted; `()` for the identity.
    pub fn cycle_string(&self) -> String {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = String::new();
        for start in 0..n {
            if seen[start] || self.images[start] == start {
                continue;
            }
            out.push('(');
            let mut v = start;
            loop {
                seen[v] = true;
                out.push_str(&v.to_string());
                v = self.images[v];
                if v == start {
                    break;
                }
                out.push(' ');
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{}", self.cycle_string())
    }
}

/// Per-byte lookup tables for applying one permutation to many ≤64-bit
/// subset masks; three table hits replace a bit loop in hot sweeps.
pub struct MaskTables {
    tables: Vec<[u64; 256]>,
}

impl MaskTables {
    pub fn new(p: &Perm) -> Self {
        let n = p.degree();
        assert!(n <= 64);
        let chunks = n.div_ceil(8).max(1);
        let mut tables = vec![[0u64; 256]; chunks];
        for (c, table) in tables.iter_mut().enumerate() {
            for byte in 0..256usize {
                let mut out = 0u64;
                for bit in 0..8 {
                    let v = c * 8 + bit;
                    if v < n && byte >> bit & 1 == 1 {
                        out |= 1u64 << p.apply(v);
                    }
                }
                table[byte] = out;
            }
        }
        MaskTables { tables }
    }

    #[inline]
    pub fn apply(&self, mask: u64) -> u64 {
        let mut out = 0u64;
        for (c, table) in self.tables.iter().enumerate() {
            out |= table[(mask >> (8 * c) & 0xff) as usize];
        }
        out
    }
}
