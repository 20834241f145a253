use geoverlap::geom::{rat, Point};
use geoverlap_cli::formats::{parse_point, parse_rational, point, rational};
use proptest::prelude::*;

proptest! {
    #[test]
    fn rationals_round_trip(n in any::<i64>(), d in 1i64..i64::MAX) {
        let r = rat(n, d);
        let text = rational(&r);
        prop_assert_eq!(parse_rational(text.as_str().unwrap()), Some(r));
    }

    #[test]
    fn points_round_trip(x in any::<i32>(), y in any::<i32>(), d in 1i32..1 << 20) {
        let p = Point::xy(rat(x.into(), d.into()), rat(y.into(), d.into()));
        let v = point(&p);
        let text: Vec<&str> = v.as_array().unwrap().iter().map(|c| c.as_str().unwrap()).collect();
        prop_assert_eq!(parse_point(&text.join(",")), Some(p));
    }
}
