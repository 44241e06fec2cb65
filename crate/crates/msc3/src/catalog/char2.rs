//! Families for characteristic 2. Signs are irrelevant, the involution
//! `c = -1` is trivial, and square roots are unique, so several odd branches
//! split further on quadratic equations.

use super::rank::SUPPORT_ORDER;
use super::support_row;

const C3: &str = "a4=0;a6=1;a9=0;b9=0;";
const X0: &str = "a4=0;a6=1;a9=0;b9=0;a3=0;a7=0;a8=1;b7=0;";
const X1E: &str = "a4=0;a6=1;a9=0;b9=0;a3=1;a7=1;a8=1;b8=1;b3=1;b7=1;";
const X1N: &str = "a4=0;a6=1;a9=0;b9=0;a3=1;a7=1;a8=1;b3=b8;b7=b8;";
const C4: &str = "a6=0;a9=0;b9=0;a7=1+a3+b8;b4=0;";
const C4E: &str = "a6=0;a9=0;b9=0;b8=1;a7=a3;b4=0;";
const C4Z: &str = "a6=0;a9=0;b9=0;b8=1;a3=0;a7=0;a8=0;b4=0;";
const C5: &str = "a3=1;a6=0;a9=0;b9=0;b8=1+a7;b5=1+a4;";
const C5E: &str = "a3=1;a6=0;a9=0;b9=0;a7=1;b8=0;b5=1+a4;";
const C6: &str = "a3=0;a6=0;a9=0;b9=0;b3=1;a7=b8;";

const N1: &str = "α₉ ≠ 0: c = 1/√α₉ (unique in characteristic 2), a and b clear α₇, α₈.";
const N2: &str = "α₉ = 0, β₉ ≠ 0: as for α₉ with β₉, β₇, β₈.";
const N3: &str = "α₆ ≠ 0: c = 1/α₆, a clears α₄; b clears the first of α₅, β₅, β₄, β₁ it moves, \
                  otherwise the gamma row is reduced, by a root of a quadratic when α₃ = 1.";
const N4: &str = "β₆ ≠ 0: c = 1/β₆, a clears β₄; b clears β₅, α₅, α₄, β₂ or β₁, otherwise the \
                  gamma row is reduced.";
const N5: &str = "α₃ ≠ 0: c = 1/α₃, b clears γ₆; a clears α₁, β₁, α₂ or γ₈.";
const N6: &str = "β₃ ≠ 0: c = 1/β₃, b clears γ₃, a clears α₂ or α₁.";
const N7: &str = "Only α₇, α₈, β₇, β₈ survive in the first two rows: scale the first nonzero of \
                  α₈, α₇, β₇ to 1 and spend a, b on two entries it moves.";
const N8: &str = "First two rows reduce to α₁, α₂, α₄, α₅, β₁, β₂, β₄, β₅: the gamma entries move \
                  by a linear system in (a, b); the first support set reachable is kept and its \
                  first entry scaled to 1.";

/// Families whose form or side condition was recomputed from the action
/// rather than taken over as stated.
pub(super) const RECONSTRUCTED: &[(u16, &str)] = &[
    (7, "α₂ cannot be cleared on this branch; the combination γ₁ + α₃γ₂ (or γ₁ + α₃γ₄) is cleared instead."),
    (9, "γ₂ moves by α₁t + β₃t², so it is cleared only when α₁β₂ ≠ 0."),
    (12, "Condition β₈ ≠ 0 or 1 + α₂ + β₅ ≠ 0 (α₄ = 0 here), from the clearing step."),
    (16, "γ₁ = γ₄ gauge: γ₄ is cleared when 1 + β₄ + β₅ = 0."),
    (20, "Pair γ₁ = γ₄ (not γ₁): the quadratic motions of γ₁ and γ₄ agree when β₄ + β₅ + 1 = 0."),
    (26, "β₂ moves by (β₃ + β₇)t; condition β₃ + β₇ ≠ 0, with β₃ = 1, β₇ ∉ {0, 1} split off to 31."),
    (33, "γ₄ = γ₁/β₃ (not γ₁), the gauge in which the pair moves together."),
    (37, "Union of sub-branches: the first of β₁, α₂, γ₁ that moves along (1, 0) is cleared."),
    (39, "Union of sub-branches: α₂ is cleared if it moves, otherwise γ₁."),
    (60, "Pins from the corrected rank rows: α₁ = 0, β₁ = 0, β₄ = 1 + β₂, β₅ = 0."),
    (61, "Empty: rank rows 2 and 3 differ by (1, 1) in characteristic 2, so they never vanish together."),
    (62, "Empty, for the same reason as 61."),
];

pub(super) fn table() -> Vec<(String, String, &'static str)> {
    let mut t: Vec<(String, String, &'static str)> = Vec::new();
    let mut row = |fixed: String, guards: &str, note: &'static str| t.push((fixed, guards.to_string(), note));
    row("a7=0;a8=0;a9=1".into(), "", N1);
    row("a9=0;b7=0;b8=0;b9=1".into(), "", N2);
    // Case 3
    row(format!("{C3}a5=0"), "a8 + 1 != 0", N3);
    row(format!("{C3}a8=1;b5=0"), "a3 + a7 != 0", N3);
    row(format!("{C3}a8=1;a7=a3;b4=0"), "b7 + a3*b8 != 0", N3);
    row(format!("{C3}a8=1;a7=a3;b7=a3*b8;b1=0"), "a3*(b3 + a3*b8) != 0", N3);
    row(
        format!("{C3}a8=1;a7=a3;b7=a3*b8;b3=a3*b8"),
        "a3 != 0; a3 + 1 != 0; kill(a3, 1): g1 + a3*g2, g1 + a3*g4",
        N3,
    );
    row(format!("{X0}b2=a1"), "b3 != 0", N3);
    row(format!("{X0}b3=0;g2=0"), "b2 != 0; a1 != 0", N3);
    row(format!("{X0}b3=0;g1=0"), "a1*b2 = 0; b1 != 0", N3);
    row(format!("{X0}b3=0;b1=0;g4=0"), "a1*b2 = 0; a1 + 1 != 0", N3);
    row(format!("{X0}b3=0;b1=0;a1=1;b2=0;g5=0"), "b8 != 0 | a2 + b5 + 1 != 0; kill(0, 1): g5", N3);
    row(format!("{X0}b3=0;b1=0;a1=1;b2=0;b8=0;b5=1+a2;g2=0"), "", N3);
    row(format!("{X1E}g1=0"), "a1 + b1 + b2 + b4 + 1 != 0", N3);
    row(format!("{X1E}b4=1+a1+b1+b2;g2=0"), "1 + b4 + b5 != 0; a1 + b5 != 0", N3);
    row(format!("{X1E}b4=1+a1+b1+b2;b5=a1+b1+b2;g4=0"), "a1 + b5 != 0", N3);
    row(format!("{X1E}b4=1+a1+b1+b2;b5=a1;g5=0"), "a2 + a5 + b5 + 1 != 0", N3);
    row(format!("{X1E}b4=1+a1+b1+b2;b5=a1;a5=1+a1+a2"), "", N3);
    row(format!("{X1N}g2=g1"), "b8 + 1 != 0; b1 + b2 + b4 + b5 + 1 != 0; b4 + b5 + 1 != 0", N3);
    row(format!("{X1N}b5=1+b4;g4=g1"), "b8 + 1 != 0; b1 + b2 != 0", N3);
    row(format!("{X1N}b5=1+b1+b2+b4;g5=g1"), "b8 + 1 != 0; a1 + a2 + a5 + 1 != 0", N3);
    row(format!("{X1N}b5=1+b1+b2+b4;a5=1+a1+a2;g1=0"), "b8 + 1 != 0; kill(1, 1): g1", N3);
    // Case 4
    row(format!("{C4}b5=0"), "b8 + 1 != 0", N4);
    row(format!("{C4E}a5=0"), "a8 != 0", N4);
    row(format!("{C4E}a8=0;a4=0"), "a3 != 0", N4);
    row(format!("{C4Z}b2=0"), "b3 + b7 != 0; b7 = 0 | b3 + 1 != 0", N4);
    row(format!("{C4Z}b3=0;b7=0;g1=0"), "b1 != 0", N4);
    row(format!("{C4Z}b3=0;b7=0;b1=0;g2=0"), "b2 != 0; a1 != 0", N4);
    row(format!("{C4Z}b3=0;b7=0;b1=0;g4=0"), "a1*b2 = 0; a1 + 1 != 0", N4);
    row(format!("{C4Z}b3=0;b7=0;b1=0;a1=1;b2=0;g5=0"), "kill(0, 1): g5", N4);
    row(format!("{C4Z}b3=1;b1=0"), "b7 != 0; b7 + 1 != 0", N4);
    row(format!("{C4Z}b7=b3;g2=g1/b3"), "b3 != 0; b1 + b2*b3 + b3 + b5*b3^2 != 0", N4);
    row(format!("{C4Z}b7=b3;b1=b2*b3+b3+b5*b3^2;g4=g1/b3"), "b3 != 0; b3 + 1 != 0", N4);
    row(format!("{C4Z}b3=1;b7=1;b1=b2+1+b5;g5=g1"), "a1 + a2 + a4 + a5 + 1 != 0", N4);
    row(format!("{C4Z}b3=1;b7=1;b1=b2+1+b5;a5=1+a1+a2+a4;g1=0"), "kill(1, 1): g1", N4);
    // Case 5
    row(format!("{C5}a1=0"), "a7 + 1 != 0", N5);
    row(C5E.into(), "b3 != 0; kill(1, 0): b1, a2, g1", N5);
    row(format!("{C5E}b3=0;b1=0"), "b7 != 0", N5);
    row(format!("{C5E}b3=0;b7=0"), "a8 + 1 != 0; kill(1, 0): a2, g1", N5);
    row(format!("{C5E}b3=0;b7=0;a8=1;a2=1+a4"), "", N5);
    // Case 6
    row(format!("{C6}b2=a1;a2=0"), "a8 != 0", N6);
    row(format!("{C6}a8=0;a1=0;b2=0"), "b8 != 0", N6);
    row("a3=0;a6=0;a9=0;b9=0;b3=1;a7=0;a8=0;b8=0;b2=0".into(), "kill(1, 0): b1, g1, g2, g4", N6);
    // Case 7
    row("a2=0;a3=0;a5=0;a6=0;a8=1;a9=0;b3=0;b8=a7;b9=0".into(), "", N7);
    row("a1=0;a3=0;a4=0;a6=0;a7=1;a8=0;a9=0;b3=0;b8=1;b9=0".into(), "", N7);
    row("a3=0;a6=0;a7=0;a8=0;a9=0;b1=0;b3=0;b4=0;b7=1;b8=0;b9=0".into(), "", N7);
    // Cases 8 and 9
    for set in SUPPORT_ORDER {
        let pins = match set {
            // rows 1 and 2 vanish
            [1, 2, 5] => "a1=0;b1=0;b4=1+b2;b5=0;g1=1;g4=0",
            // rows 2 and 3 cannot vanish together (b5 = 0 and b5 = 1): these two
            // families are empty and their support condition never holds
            [1, 2, 4] => "a1=0;b1=0;b4=1+b2;b5=0;g1=1;g5=0",
            [1, 2, 4, 5] => "a1=0;b1=0;b4=1+b2;b5=0;g1=1",
            _ => "",
        };
        let (fixed, guard) = support_row(set, pins);
        row(fixed, &guard, N8);
    }
    t
}
