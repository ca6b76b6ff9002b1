use num_traits::Signed;
use rayon::prelude::*;

use super::{ExactError, ExactMatrix};

/// Largest order accepted by [`is_p0`] unless the caller raises it.
pub const DEFAULT_P0_CAP: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct P0Verdict {
    pub is_p0: bool,
    /// Lexicographically least subset (sorted, zero-based) whose principal
    /// minor is negative.
    pub witness: Option<Vec<usize>>,
    pub minors_checked: u64,
}

/// All nonempty subsets of `0..n` as bitmasks, in lexicographic order of
/// their sorted index lists: {0}, {0,1}, {0,1,2}, ..., {0,2}, ..., {1}, ...
fn lex_subsets(n: usize) -> Vec<u32> {
    fn walk(start: usize, n: usize, mask: u32, out: &mut Vec<u32>) {
        for i in start..n {
            let m = mask | (1 << i);
            out.push(m);
            walk(i + 1, n, m, out);
        }
    }
    let mut out = Vec::with_capacity((1usize << n) - 1);
    walk(0, n, 0, &mut out);
    out
}

fn mask_to_subset(mask: u32, n: usize) -> Vec<usize> {
    (0..n).filter(|i| mask >> i & 1 == 1).collect()
}

/// Checks every principal minor for nonnegativity. The empty minor is 1 and
/// is not enumerated.
pub fn is_p0(m: &ExactMatrix, cap: usize) -> Result<P0Verdict, ExactError> {
    let n = m.order();
    if n > cap || n > 31 {
        return Err(ExactError::CapExceeded { order: n, cap });
    }
    let subsets = lex_subsets(n);
    let negative = |&mask: &u32| {
        let s = mask_to_subset(mask, n);
        m.principal_minor(&s).expect("subset in range").is_negative()
    };
    let violation = if n >= 8 {
        subsets.par_iter().position_first(negative)
    } else {
        subsets.iter().position(negative)
    };
    Ok(match violation {
        Some(pos) => P0Verdict {
            is_p0: false,
            witness: Some(mask_to_subset(subsets[pos], n)),
            minors_checked: pos as u64 + 1,
        },
        None => P0Verdict {
            is_p0: true,
            witness: None,
            minors_checked: subsets.len() as u64,
        },
    })
}
