//! Inclusive integer ranges `a..b` (or single values) for parameter flags.

use std::str::FromStr;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Range {
    pub lo: i64,
    pub hi: i64,
}

impl Range {
    pub fn values(&self) -> Vec<i64> {
        (self.lo..=self.hi).collect()
    }
}

impl FromStr for Range {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |t: &str| {
            t.parse::<i64>().map_err(|_| format!("invalid integer '{t}' in range '{s}'"))
        };
        match s.split_once("..") {
            Some((lo, hi)) => {
                let (lo, hi) = (parse(lo)?, parse(hi)?);
                if lo > hi {
                    return Err(format!("empty range '{s}' (lower bound exceeds upper)"));
                }
                Ok(Range { lo, hi })
            }
            None => {
                let v = parse(s)?;
                Ok(Range { lo: v, hi: v })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!("3".parse::<Range>().unwrap(), Range { lo: 3, hi: 3 });
        assert_eq!("-2..4".parse::<Range>().unwrap(), Range { lo: -2, hi: 4 });
        assert_eq!("0..0".parse::<Range>().unwrap(), Range { lo: 0, hi: 0 });
        assert!("5..1".parse::<Range>().is_err());
        assert!("x..2".parse::<Range>().is_err());
    }
}
