//! Shared fixtures for the integration suites.

/// Expression corpus exercising every DSL construct, used for round-trip and
/// truncation-consistency checks.
pub const EXPR_CORPUS: [&str; 50] = [
    "q",
    "1",
    "-7",
    "1 + q",
    "1 - q + q^2",
    "q^3",
    "q^(-2)",
    "(1 + q)^4",
    "1 - q*q + q^2*q",
    "poch(1,1)",
    "poch(1,1)^3",
    "poch(2,2)*poch(1,2)^2",
    "inv(poch(1,1)^3)",
    "theta6",
    "inv(theta6)",
    "theta6 * inv(theta6)",
    "R14",
    "R23",
    "F5",
    "R14*F5",
    "inv(R14*F5)",
    "inv(R23*F5)",
    "A(0)",
    "A(1)",
    "A(2)*C(1)",
    "C(3)",
    "B(2, 1)",
    "B(0, 0)",
    "D(1, 2)",
    "D(2, 0)",
    "Agen(1, 3, 2)",
    "Agen(2, 5, 1)",
    "shift(A(1), -1)",
    "shift(q, 5)",
    "shift(shift(A(2), -3), 3)",
    "inv(q)",
    "inv(1 - q)",
    "0 - theta6",
    "2*A(1) + 3*C(1)",
    "(A(1) + C(1))^2",
    "inv(poch(1,5)*poch(4,5))",
    "poch(5,5)*inv(poch(1,1)^6)",
    "1 + 2*q + 3*q^2 + 4*q^3",
    "(1 - q)*(1 + q)",
    "((q))",
    "inv(shift(poch(1,1), -2))",
    "B(1, 2)*D(2, 1)",
    "shift(poch(1,1), -2)^3",
    "A(3) - shift(C(2), 1)",
    "inv(theta6)*theta6 - 1",
];
