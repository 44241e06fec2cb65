//! Families for characteristic other than 2.

use super::rank::SUPPORT_ORDER;
use super::support_row;

const C3: &str = "a4=0;a6=1;a9=0;b9=0;";
const R7A: &str = "a4=0;a6=1;a9=0;b9=0;a3=2*b8;a7=0;a8=-1;b7=0;";
const R13: &str = "a4=0;a6=1;a9=0;b9=0;a3=0;a7=0;a8=-1;b7=0;b8=0;b3=0;b1=0;";
const C4: &str = "a6=0;a9=0;b9=0;a7=1+a3-b8;b4=0;";
const C4M: &str = "a6=0;a9=0;b9=0;b8=-1;a7=2+a3;b4=0;";
const C4Z: &str = "a6=0;a9=0;b9=0;a3=-2;a7=0;a8=0;b8=-1;b4=0;";
const C5: &str = "a3=1;a6=0;a9=0;b9=0;b8=1-a7;b2=-a1;";
const C6: &str = "a3=0;a6=0;a9=0;b9=0;b3=1;a7=-b8;";

const N1: &str = "α₉ ≠ 0: scale α₉ to 1 (c = 1/√α₉), then a, b clear α₇, α₈. The sign of c is left; \
                  the smaller of the two parameter tuples is kept.";
const N2: &str = "α₉ = 0, β₉ ≠ 0: as for α₉ with β₉, β₇, β₈.";
const N3: &str = "α₆ ≠ 0: c = 1/α₆ and a clears α₄; b is then spent on the first entry it moves \
                  among α₅, β₅, β₄, α₁, β₁ (or the gamma row when none moves).";
const N4: &str = "β₆ ≠ 0: c = 1/β₆, a clears β₄, b clears the first of β₅, α₅, α₄, β₂, α₂, γ₈ it moves.";
const N5: &str = "α₃ ≠ 0: c = 1/α₃, a clears γ₃ (needs 1/2), b clears α₅, α₄ or β₅.";
const N6: &str = "β₃ ≠ 0: c = 1/β₃, b clears γ₃, a clears α₂ or α₁.";
const N7: &str = "Only α₇, α₈, β₇, β₈ survive in the first two rows: scale the first nonzero of \
                  α₈, α₇, β₇ to 1 and spend a, b on two entries it moves.";
const N8: &str = "First two rows reduce to α₁, α₂, α₄, α₅, β₁, β₂, β₄, β₅: the gamma entries move \
                  by a linear system in (a, b); the first support set reachable is kept and its \
                  first entry scaled to 1.";

/// Families whose form or side condition was recomputed from the action
/// rather than taken over as stated.
pub(super) const RECONSTRUCTED: &[(u16, &str)] = &[
    (8, "α₂ cannot be cleared on this branch (rows 1 and 2 are invariant); α₂ stays free and the first moving γ entry is cleared."),
    (10, "γ₂ moves by (α₁ + 2β₂)t, so the condition is α₁ + 2β₂ ≠ 0 rather than β₂ ≠ 0."),
    (11, "β₂ = −α₁/2 instead of β₂ = 0 (the value left once γ₂ cannot move); likewise for 12 to 15."),
    (16, "γ keeps residual freedom along the line; its first moving entry is cleared."),
    (20, "β₂ moves by (β₃ + β₇)t, so the condition is β₃ + β₇ ≠ 0 rather than β₇(β₃ − 1) ≠ 0."),
    (21, "Reached when β₃ = −β₇ with β₇ ≠ 0 (instead of β₃ = 1); α₂ always moves there."),
    (22, "Reached when β₃ = β₇ = 0."),
    (28, "γ₃ = 0 is kept; a clears β₁ when it moves, otherwise the first moving γ entry."),
    (45, "Rank row 2 is (2α₂ + β₅, α₁ + 2β₂); the pins follow from it."),
    (46, "Pins from the corrected rank rows: α₁ = 1/4, α₄ = 1/2 + α₂, β₂ = −1/8, β₄ = 3/8, β₅ = −2α₂; exists in characteristic 5."),
    (47, "The point α₁ = 1/4, α₂ = −1/8, α₄ = 3/8, β₂ = −1/8, β₄ = 3/8, β₅ = 1/4 from the corrected rank rows; exists in characteristic 5."),
];

pub(super) fn table() -> Vec<(String, String, &'static str)> {
    let mut t: Vec<(String, String, &'static str)> = Vec::new();
    let mut row = |fixed: String, guards: &str, note: &'static str| t.push((fixed, guards.to_string(), note));
    row("a7=0;a8=0;a9=1".into(), "flip", N1);
    row("a9=0;b7=0;b8=0;b9=1".into(), "flip", N2);
    // Case 3
    row(format!("{C3}a5=0"), "a8 + 1 != 0", N3);
    row(format!("{C3}a8=-1;b5=0"), "a7 + 2*b8 - a3 != 0", N3);
    row(format!("{C3}a7=a3-2*b8;a8=-1;b4=0"), "b7 - (2*b8 - a3)*b8 != 0", N3);
    row(format!("{C3}a1=0;a7=a3-2*b8;a8=-1;b7=(2*b8-a3)*b8"), "(a3 - 2*b8)*(a3 - b8) != 0", N3);
    row(format!("{C3}a7=-a3;a8=-1;b1=0;b7=a3^2;b8=a3"), "a3 != 0; a3^2 + b3 != 0", N3);
    row(format!("{C3}a7=-a3;a8=-1;b3=-a3^2;b7=a3^2;b8=a3"), "a3 != 0; a3 - 1 != 0; kill(a3, 1): g1, g2, g4, g5", N3);
    row(format!("{R7A}b2=-a1"), "b3 != 0", N3);
    row(format!("{R7A}b3=0;g2=0"), "a1 + 2*b2 != 0", N3);
    row(format!("{R7A}b3=0;b2=-a1/2;g1=0"), "b1 != 0", N3);
    row(format!("{R7A}b3=0;b1=0;b2=-a1/2;b5=-a2"), "b8 != 0", N3);
    row(format!("{R13}b2=-a1/2;g5=0"), "1 - a2 - 3*b5 != 0", N3);
    row(format!("{R13}b2=-a1/2;a2=1-3*b5;g4=0"), "a1 - 1 + 2*b4 != 0", N3);
    row(format!("{R13}a1=1-2*b4;b2=-a1/2;a2=1-3*b5"), "", N3);
    row(format!("{C3}a3=1;a7=-1;a8=-1;b3=-1;b7=1;b8=1"), "kill(1, 1): g1, g2, g4, g5", N3);
    // Case 4
    row(format!("{C4}b5=0"), "b8 + 1 != 0", N4);
    row(format!("{C4M}a5=0"), "a8 != 0", N4);
    row(format!("{C4M}a8=0;a4=0"), "a3 + 2 != 0", N4);
    row(format!("{C4Z}b2=0"), "b3 + b7 != 0", N4);
    row(format!("{C4Z}b3=-b7;a2=0"), "b7 != 0", N4);
    row(format!("{C4Z}b3=0;b7=0;b5=-a2"), "", N4);
    // Case 5
    row(format!("{C5}a5=0"), "a8 != 0", N5);
    row(format!("{C5}a8=0;a4=0"), "a7 != 0", N5);
    row("a3=1;a6=0;a9=0;b9=0;a7=0;a8=0;b8=1;b2=-a1;b5=0".into(), "", N5);
    // Case 6
    row(format!("{C6}b2=-a1;a2=0"), "a8 != 0", N6);
    row(format!("{C6}a8=0;a1=0;b2=0"), "b8 != 0", N6);
    row("a3=0;a6=0;a9=0;b9=0;b3=1;a7=0;a8=0;b8=0;b2=0".into(), "kill(1, 0): b1, g1, g2, g4, g5", N6);
    // Case 7
    row("a2=0;a3=0;a5=0;a6=0;a8=1;a9=0;b3=0;b8=-a7;b9=0".into(), "", N7);
    row("a1=0;a3=0;a4=0;a6=0;a7=1;a8=0;a9=0;b3=0;b8=-1;b9=0".into(), "", N7);
    row("a3=0;a6=0;a7=0;a8=0;a9=0;b1=0;b3=0;b4=0;b7=1;b8=0;b9=0".into(), "", N7);
    // Cases 8 and 9
    for set in SUPPORT_ORDER {
        let pins = match set {
            // rows 1 and 2 vanish
            [1, 2, 5] => "b1=0;b2=-a1/2;b4=1-5/2*a1;b5=-2*a2;g1=1;g4=0",
            // rows 1, 2 and 3 vanish
            [1, 2, 4] => "a1=1/4;a4=1/2+a2;b1=0;b2=-1/8;b4=3/8;b5=-2*a2;g1=1;g5=0",
            // all rows vanish
            [1, 2, 4, 5] => "a1=1/4;a2=-1/8;a4=3/8;a5=0;b1=0;b2=-1/8;b4=3/8;b5=1/4;g1=1",
            _ => "",
        };
        let (fixed, guard) = support_row(set, pins);
        row(fixed, &guard, N8);
    }
    t
}
