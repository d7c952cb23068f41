//! Closed-form eliminants for low-order cycles, kept as independent
//! reference polynomials for the enumeration code.

use crate::exactalg::ParamPoly;

fn parse(s: &str) -> ParamPoly {
    s.parse().expect("built-in polynomial parses")
}

/// Model 1 two-cycle polynomial in `(e, f, x)`.
pub fn model1_two_cycle_poly() -> ParamPoly {
    parse("f^3*x^6 - 3*f^2*x^4 - 2*e*f^3*x^3 + 3*f*x^2 + 3*e*f^2*x + e^2*f^3 - 2")
}

/// Model 1 two-cycle magnitude polynomial in `(e, f, d)`.
pub fn model1_two_cycle_magnitude() -> ParamPoly {
    parse("f^3*d^3 - 12*f^2*d^2 - 60*f*d + 216*e^2*f^3 - 64")
}

/// The two magnitude relations for standard Model 2 two-cycles, in `(K, d)`.
pub fn model2_two_cycle_magnitudes() -> [ParamPoly; 2] {
    [parse("K*d - 24*K - 80"), parse("K*d - 6*K + 10")]
}

/// Quartic in `d` satisfied by the magnitude of every standard Model 2
/// three-cycle.
pub fn model2_three_cycle_magnitude() -> ParamPoly {
    parse(
        "K^4*d^4 + (-54*K^4 - 90*K^3)*d^3 + (972*K^4 + 2700*K^3 + 1800*K^2)*d^2 \
         + (-6696*K^4 - 19440*K^3 - 5400*K^2 + 27000*K)*d \
         + 15552*K^4 + 38880*K^3 - 32400*K^2 - 162000*K + 270000",
    )
}

/// The four relations, one of which holds for the magnitude of every
/// standard Model 2 four-cycle.
pub fn model2_four_cycle_magnitude() -> [ParamPoly; 4] {
    [
        parse("K*d - 12*K + 20"),
        parse("K*d - 48*K - 160"),
        parse("K^2*d^2 + (-36*K^2 - 60*K)*d + 288*K^2 + 960*K + 1600"),
        parse(C4),
    ]
}

/// Squarefree border polynomial of the standard Model 2 three-cycle system,
/// a polynomial in `K`; its positive roots are the three-cycle thresholds.
pub fn model2_three_cycle_sp() -> ParamPoly {
    parse(
        "(972*K^8 + 19440*K^7 + 127575*K^6 + 162000*K^5 - 1552500*K^4 - 6412500*K^3 \
          - 5062500*K^2 + 23437500*K + 67187500) \
         * (8503056*K^12 + 191318760*K^11 + 1523464200*K^10 + 3754532250*K^9 \
          - 14134854375*K^8 - 101982543750*K^7 - 146939062500*K^6 + 399469218750*K^5 \
          + 1522072265625*K^4 + 261457031250*K^3 - 4576816406250*K^2 - 1938867187500*K \
          + 13981445312500)",
    )
}

const C4: &str = "K^8*d^8 + (-126*K^8 - 210*K^7)*d^7 + (6660*K^8 + 21300*K^7 + 17800*K^6)*d^6 \
    + (-192024*K^8 - 874800*K^7 - 1382400*K^6 - 731000*K^5)*d^5 \
    + (3285360*K^8 + 18688320*K^7 + 41115600*K^6 + 39438000*K^5 + 13350000*K^4)*d^4 \
    + (-33957792*K^8 - 221940000*K^7 - 588016800*K^6 - 728172000*K^5 - 379740000*K^4 - 45500000*K^3)*d^3 \
    + (206172864*K^8 + 1453101120*K^7 + 4191652800*K^6 + 5433912000*K^5 + 2183760000*K^4 \
       - 1105200000*K^3 - 478000000*K^2)*d^2 \
    + (-672686208*K^8 - 4870886400*K^7 - 14246409600*K^6 - 16185744000*K^5 + 2054160000*K^4 \
       + 13262400000*K^3 - 7632000000*K^2 - 11520000000*K)*d \
    + 906992640*K^8 + 6500113920*K^7 + 18223833600*K^6 + 13351392000*K^5 - 25284960000*K^4 \
    - 27302400000*K^3 + 65376000000*K^2 + 30720000000*K - 102400000000";
