use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::caps::Caps;
use crate::construction::{build_ab, derive, ConstructionParams};
use crate::exact::{int, pow_int, to_decimal, Scalar};
use crate::lattice::certify;

use super::{nth_root_interval, RootInterval};

/// Root digits kept for scan points; comparisons between points are exact.
const SCAN_DIGITS: u32 = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ScanLimits {
    pub n_max: u32,
    pub k_max: u64,
    pub b_max: u64,
    pub s_max: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyTag {
    /// `s = 0, b = 2, r = 1`
    Purple,
    /// `s = 1, b = 2, r = 1`
    Green,
    /// `b = r = s = 1`
    Blue,
    /// `s = 0`
    Yellow,
}

impl FamilyTag {
    pub fn of(params: &ConstructionParams) -> Vec<FamilyTag> {
        let (b, r, s) = (params.b, params.r, params.s);
        let mut tags = Vec::new();
        if s == 0 && b == 2 && r == 1 {
            tags.push(FamilyTag::Purple);
        }
        if s == 1 && b == 2 && r == 1 {
            tags.push(FamilyTag::Green);
        }
        if b == 1 && r == 1 && s == 1 {
            tags.push(FamilyTag::Blue);
        }
        if s == 0 {
            tags.push(FamilyTag::Yellow);
        }
        tags
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyTag::Purple => "purple",
            FamilyTag::Green => "green",
            FamilyTag::Blue => "blue",
            FamilyTag::Yellow => "yellow",
        })
    }
}

/// A certified point `(p/q, p^{1/n})`.
#[derive(Debug, Clone)]
pub struct ScanPoint {
    pub params: ConstructionParams,
    pub a: BigInt,
    pub p: BigInt,
    pub q: BigInt,
    pub ratio: Scalar,
    pub root: RootInterval,
    pub tags: Vec<FamilyTag>,
    /// Largest root within its `10^{-3}` ratio bucket.
    pub pareto: bool,
}

impl ScanPoint {
    /// Exact comparison of `p^{1/n}` between two points.
    pub fn cmp_root(&self, other: &ScanPoint) -> Ordering {
        pow_int(&self.p, other.params.n).cmp(&pow_int(&other.p, self.params.n))
    }

    fn bucket(&self) -> BigInt {
        (&self.ratio * int(1000)).floor().to_integer()
    }
}

fn params_grid(limits: &ScanLimits) -> Vec<ConstructionParams> {
    let mut out = Vec::new();
    for n in 1..=limits.n_max {
        for k in 1..=limits.k_max {
            for b in 1..=limits.b_max {
                for r in 0..=b {
                    for s in 0..=limits.s_max {
                        out.push(ConstructionParams { n, k, b, r, s });
                    }
                }
            }
        }
    }
    out
}

fn point(params: ConstructionParams) -> Option<ScanPoint> {
    let t = derive(&params).ok()?;
    Some(ScanPoint {
        ratio: Scalar::new(t.p.clone(), t.q.clone()),
        root: nth_root_interval(&t.p, params.n, SCAN_DIGITS),
        tags: FamilyTag::of(&params),
        params,
        a: t.a,
        p: t.p,
        q: t.q,
        pareto: false,
    })
}

/// Every valid parameter tuple within `limits` whose ratio `p/q` lies in
/// `[lo, hi]`, sorted by ratio, then root descending, then parameters.
pub fn scan(limits: &ScanLimits, lo: &Scalar, hi: &Scalar) -> Vec<ScanPoint> {
    let mut points: Vec<ScanPoint> = params_grid(limits)
        .into_par_iter()
        .filter_map(|params| point(params).filter(|pt| &pt.ratio >= lo && &pt.ratio <= hi))
        .collect();
    points.sort_by(|x, y| {
        x.ratio
            .cmp(&y.ratio)
            .then_with(|| y.cmp_root(x))
            .then_with(|| key(&x.params).cmp(&key(&y.params)))
    });

    let mut best: HashMap<BigInt, usize> = HashMap::new();
    for (i, pt) in points.iter().enumerate() {
        best.entry(pt.bucket())
            .and_modify(|j| {
                if pt.cmp_root(&points[*j]) == Ordering::Greater {
                    *j = i;
                }
            })
            .or_insert(i);
    }
    let winners: Vec<usize> = best.into_values().collect();
    for i in 0..points.len() {
        let bucket = points[i].bucket();
        points[i].pareto = winners
            .iter()
            .any(|&j| points[j].bucket() == bucket && points[i].cmp_root(&points[j]) == Ordering::Equal);
    }
    points
}

fn key(p: &ConstructionParams) -> (u32, u64, u64, u64, u64) {
    (p.n, p.k, p.b, p.r, p.s)
}

pub fn scan_csv(points: &[ScanPoint]) -> String {
    let mut out = String::from("ratio_num,ratio_den,n,k,b,r,s,a,p,q,bound_root,family_tags,pareto,upper_ref\n");
    for pt in points {
        let tags: Vec<String> = pt.tags.iter().map(ToString::to_string).collect();
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
            pt.ratio.numer(),
            pt.ratio.denom(),
            pt.params.n,
            pt.params.k,
            pt.params.b,
            pt.params.r,
            pt.params.s,
            pt.a,
            pt.p,
            pt.q,
            to_decimal(&pt.root.lower, 12),
            tags.join(";"),
            pt.pareto,
            crate::exact::scalar_to_string(&pt.ratio),
        ));
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct SpotCheckReport {
    pub seed: u64,
    pub sampled: usize,
    pub valid: usize,
    pub failures: Vec<ConstructionParams>,
}

impl SpotCheckReport {
    pub fn all_valid(&self) -> bool {
        self.failures.is_empty() && self.valid == self.sampled
    }
}

/// Certifies a seeded random sample of `⌈fraction·len⌉` points (at least one
/// when `points` is nonempty). `fraction = 1` checks everything.
pub fn spot_check(points: &[ScanPoint], fraction: f64, seed: u64, caps: &Caps) -> SpotCheckReport {
    let len = points.len();
    let amount = if len == 0 {
        0
    } else {
        ((fraction.clamp(0.0, 1.0) * len as f64).ceil() as usize).clamp(1, len)
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut chosen = sample(&mut rng, len, amount).into_vec();
    chosen.sort_unstable();
    let failures: Vec<ConstructionParams> = chosen
        .par_iter()
        .filter_map(|&i| {
            let pt = &points[i];
            let ok = build_ab(&pt.params)
                .map(|(a, b)| certify(&a, &b, &pt.p, &pt.q, caps).is_valid())
                .unwrap_or(false);
            (!ok).then_some(pt.params)
        })
        .collect();
    SpotCheckReport {
        seed,
        sampled: amount,
        valid: amount - failures.len(),
        failures,
    }
}

/// `a/b − p^{1/n}` for a point, as an enclosure `(lower, upper)`.
pub fn point_gap(pt: &ScanPoint) -> (Scalar, Scalar) {
    let ab = Scalar::new(pt.a.clone(), BigInt::from(pt.params.b));
    (&ab - &pt.root.upper, ab - &pt.root.lower)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;
    use crate::limits::delta;
    use proptest::prelude::*;

    fn small() -> ScanLimits {
        ScanLimits { n_max: 4, k_max: 4, b_max: 3, s_max: 4 }
    }

    #[test]
    fn contains_known_points() {
        let pts = scan(&small(), &int(2), &int(7));
        let c5 = pts
            .iter()
            .find(|p| p.params == ConstructionParams::new(2, 1, 2, 1, 0).unwrap())
            .unwrap();
        assert_eq!(c5.ratio, ratio(5, 2));
        assert_eq!(to_decimal(&c5.root.lower, 12), "2.236067977499");
        assert_eq!(c5.tags, vec![FamilyTag::Purple, FamilyTag::Yellow]);
        let ten = pts
            .iter()
            .find(|p| p.params == ConstructionParams::new(2, 1, 2, 1, 1).unwrap())
            .unwrap();
        assert_eq!(ten.ratio, ratio(10, 3));
        assert_eq!(ten.tags, vec![FamilyTag::Green]);
        assert!(pts.iter().all(|p| p.ratio >= int(2) && p.ratio <= int(7)));
        assert!(pts.iter().any(|p| p.tags.contains(&FamilyTag::Blue)));
    }

    #[test]
    fn sorted_and_pareto_per_bucket() {
        let pts = scan(&small(), &int(2), &int(7));
        for w in pts.windows(2) {
            assert!(w[0].ratio <= w[1].ratio);
        }
        let mut by_bucket: HashMap<BigInt, Vec<&ScanPoint>> = HashMap::new();
        for p in &pts {
            by_bucket.entry(p.bucket()).or_default().push(p);
        }
        for group in by_bucket.values() {
            assert!(group.iter().any(|p| p.pareto));
            for p in group {
                let dominated = group.iter().any(|o| o.cmp_root(p) == Ordering::Greater);
                assert_eq!(p.pareto, !dominated);
            }
        }
    }

    #[test]
    fn ratio_never_exceeds_a_over_b() {
        for p in scan(&small(), &int(0), &int(1000)) {
            assert!(p.ratio <= Scalar::new(p.a.clone(), BigInt::from(p.params.b)));
            let (lo, hi) = point_gap(&p);
            assert!(lo <= hi);
        }
    }

    #[test]
    fn empty_limits() {
        let none = ScanLimits { n_max: 0, k_max: 0, b_max: 0, s_max: 0 };
        assert!(scan(&none, &int(2), &int(7)).is_empty());
        assert_eq!(scan_csv(&[]).lines().count(), 1);
        assert_eq!(spot_check(&[], 0.05, 1, &Caps::default()).sampled, 0);
    }

    #[test]
    fn spot_check_certifies_sample() {
        let pts = scan(&ScanLimits { n_max: 3, k_max: 2, b_max: 2, s_max: 2 }, &int(2), &int(7));
        let r = spot_check(&pts, 1.0, 3, &Caps::default());
        assert_eq!(r.sampled, pts.len());
        assert!(r.all_valid(), "{:?}", r.failures);
        let csv = scan_csv(&pts);
        assert!(csv.contains(",purple;yellow,"));
    }

    proptest! {
        #[test]
        fn point_gap_matches_delta(n in 1u32..6, k in 1u64..8, b in 1u64..5, r_frac in 0.0f64..=1.0, s in 0u64..10) {
            let r = (r_frac * b as f64).floor() as u64;
            let params = ConstructionParams::new(n, k, b, r, s).unwrap();
            let pt = point(params).unwrap();
            let (lo, hi) = point_gap(&pt);
            let d = delta(&params).unwrap();
            // both enclosures contain the same real number
            prop_assert!(lo <= d.delta_upper && d.delta_lower <= hi);
            prop_assert!(&hi - &lo <= ratio(1, 1_000_000_000));
            prop_assert!(pt.ratio <= Scalar::new(pt.a.clone(), BigInt::from(b)));
        }
    }
}
