"""Reference values transcribed verbatim from the published tables.

Misprints are kept as printed; ``KNOWN_MISPRINTS`` lists the cells that the
independent checks in this package disprove.

Jack rows are sympy-parsable strings in ``a`` (alpha) and ``k``; columns are
power-sum monomials written as partitions, rows in the printed order.
Coefficient tables are exact rational functions of k (and alpha).
"""
from fractions import Fraction as F


JACK_COLUMNS = {
    1: [(1,)],
    2: [(1, 1), (2,)],
    3: [(1, 1, 1), (2, 1), (3,)],
    4: [(1, 1, 1, 1), (2, 1, 1), (2, 2), (3, 1), (4,)],
    5: [(1,) * 5, (2, 1, 1, 1), (2, 2, 1), (3, 1, 1), (3, 2), (4, 1), (5,)],
    6: [(1,) * 6, (2, 1, 1, 1, 1), (2, 2, 1, 1), (2, 2, 2), (3, 1, 1, 1),
        (3, 2, 1), (3, 3), (4, 1, 1), (4, 2), (5, 1), (6,)],
}

# (partition, power-sum coefficients in COLUMNS order, chi, Z(I))
JACK_ROWS = {
    1: [((1,), ["1"], "1", "k")],
    2: [
        ((2,), ["1", "a"], "1", "k*(k+a)"),
        ((1, 1), ["1", "-1"], "a", "k*(k-1)"),
    ],
    3: [
        ((3,), ["1", "3*a", "2*a**2"], "1", "k*(k+a)*(k+2*a)"),
        ((2, 1), ["1", "a-1", "-a"], "6*a*(1+a)/(2+a)", "k*(k+a)*(k-1)"),
        ((1, 1, 1), ["1", "-3", "2"], "a**2*(1+2*a)/(2+a)", "k*(k-1)*(k-2)"),
    ],
    4: [
        ((4,), ["1", "6*a", "3*a**2", "8*a**2", "6*a**3"], "1",
         "k*(k+a)*(k+2*a)*(k+3*a)"),
        ((3, 1), ["1", "3*a-1", "-a", "2*a**2-2*a", "-2*a**2"],
         "6*a*(1+2*a)/(1+a)", "k*(k+a)*(k+2*a)*(k-1)"),
        ((2, 2), ["1", "2*a-2", "a**2+a+1", "-4*a", "a-a**2"],
         "6*a**2*(1+3*a)/((1+a)*(2+a))", "k*(k+a)*(k+a-1)*(k-1)"),
        ((2, 1, 1), ["1", "a-3", "-a", "2-2*a", "2*a"],
         "6*a**2*(1+2*a)*(1+3*a)/((1+a)*(3+a))", "k*(k+a)*(k-1)*(k-2)"),
        ((1, 1, 1, 1), ["1", "-6", "3", "8", "-6"],
         "a**3*(1+2*a)*(1+3*a)/((2+a)*(3+a))", "k*(k-1)*(k-2)*(k-3)"),
    ],
    5: [
        ((5,), ["1", "10*a", "15*a**2", "20*a**2", "20*a**3", "30*a**3", "24*a**4"],
         "1", "k*(k+a)*(k+2*a)*(k+3*a)*(k+4*a)"),
        ((4, 1), ["1", "6*a-1", "3*a*(a-1)", "a*(8*a-3)", "-5*a**2",
                  "6*a**2*(a-1)", "-6*a**3"],
         "20*a*(1+3*a)/(2+3*a)", "k*(k+a)*(k+2*a)*(k+3*a)*(k-1)"),
        ((3, 2), ["1", "2*(2*a-1)", "3*a**2-a+1", "2*a*(a-3)", "2*a*(a**2+1)",
                  "-a*(7*a-1)", "-2*a**2*(a-1)"],
         "30*a**2*(1+4*a)/((1+a)*(2+a))", "k*(k+a)*(k+2*a)*(k-1)*(k+a-1)"),
        ((3, 1, 1), ["1", "3*(a-1)", "-5*a", "2*(a-1)**2", "-2*a*(a-1)",
                     "-4*a*(a-1)", "4*a**2"],
         "30*a**2*(1+2*a)*(1+3*a)*(1+4*a)/((1+a)*(3+2*a)*(2+3*a))",
         "k*(k+a)*(k+2*a)*(k-1)*(k-2)"),
        ((2, 2, 1), ["1", "2*(a-2)", "a**2-a+3", "-2*(3*a-1)", "-2*(a**2+1)",
                     "-a*(a-7)", "2*a*(a-1)"],
         "30*a**2*(1+3*a)*(1+3*a)*(1+4*a)/((1+a)*(2+a)*(3+a))",
         "k*(k+a)*(k-1)*(k+a-1)*(k-2)"),
        ((2, 1, 1, 1), ["1", "a-6", "-3*(a-1)", "-(3*a-8)", "5*a", "6*(a-1)", "-6*a"],
         "20*a**3*(1+2*a)*(1+3*a)*(1+4*a)/((2+a)*(4+a)*(3+2*a))",
         "k*(k+a)*(k-1)*(k-2)*(k-3)"),
        ((1,) * 5, ["1", "-10", "15", "20", "-20", "-30", "24"],
         "a**4*(1+2*a)*(1+3*a)*(1+4*a)/((2+a)*(3+a)*(4+a))",
         "k*(k-1)*(k-2)*(k-3)*(k-4)"),
    ],
    6: [
        ((6,), ["1", "15*a", "45*a**2", "15*a**3", "40*a**2", "120*a**3",
                "40*a**4", "90*a**3", "90*a**4", "144*a**4", "120*a**5"],
         "1", "k*(k+a)*(k+2*a)*(k+3*a)*(k+4*a)*(k+5*a)"),
        ((5, 1), ["1", "10*a-1", "3*a*(5*a-2)", "-3*a**2", "4*a*(5*a-1)",
                  "20*a**2*(a-1)", "-8*a**3", "6*a**2*(5*a-2)", "-18*a**3",
                  "24*a**3*(a-1)", "-24*a**4"],
         "15*a*(1+4*a)/(1+2*a)", "k*(k+a)*(k+2*a)*(k+3*a)*(k+4*a)*(k-1)"),
        ((4, 2), ["1", "7*a-2", "9*a**2-5*a+1", "a*(3*a**2+a+1)", "8*a*(a-1)",
                  "4*a*(2*a-1)*(a-1)", "-2*a**2*(a-1)", "a*(6*a**2-17*a+1)",
                  "a**2*(6*a**2-a+5)", "-4*a**2*(5*a-1)", "-6*a**3*(a-1)"],
         "90*a**2*(1+2*a)*(1+5*a)/((1+a)**2*(2+3*a))",
         "k*(k+a)*(k+2*a)*(k+3*a)*(k-1)*(k+a-1)"),
        ((3, 3), ["1", "3*(2*a-1)", "3*(3*a**2-a+1)", "-(5*a**2+3*a+1)",
                  "4*a*(a-3)", "12*a*(a**2+1)", "2*a**2*(2*a**2+3*a+3)",
                  "-3*a*(7*a-1)", "-3*a*(4*a**2+a+1)", "-12*a**2*(a-1)",
                  "-2*a**2*(a-1)*(2*a-1)"],
         "30*a**3*(1+4*a)*(1+5*a)/((1+a)**2*(2+a)*(1+2*a))",
         "k*(k+a)*(k+2*a)*(k-1)*(k+a-1)*(k+2*a-1)"),
        ((4, 1, 1), ["1", "6*a-3", "3*a*(a-4)", "-3*a**2", "2*(4*a**2-3*a+1)",
                     "-6*a*(3*a-1)", "4*a**2", "6*a*(a-1)**2", "-6*a**2*(a-1)",
                     "-12*a**2*(a-1)", "12*a**3"],
         "10*a**2*(1+3*a)*(1+4*a)*(1+5*a)/((1+a)**2*(1+2*a))",
         "k*(k+a)*(k+2*a)*(k+3*a)*(k-1)*(k-2)"),
        ((3, 2, 1), ["1", "4*(a-1)", "3*(a-1)**2", "-a*(a-1)", "2*a**2-9*a+2",
                     "(a-1)*(a-2)*(2*a-1)", "-a*(2*a**2+a+2)", "-9*a*(a-1)",
                     "-2*a*(a-1)**2", "-a*(2*a**2-13*a+2)", "4*a**2*(a-1)"],
         "720*a**3*(1+a)*(1+3*a)*(1+4*a)*(1+5*a)/((2+a)**2*(1+2*a)*(3+2*a)*(2+3*a))",
         "k*(k+a)*(k+2*a)*(k-1)*(k+a-1)*(k-2)"),
        ((3, 1, 1, 1), ["1", "3*a-6", "-3*(4*a-1)", "3*a", "2*(a**2-3*a+4)",
                        "-6*a*(a-3)", "4*a**2", "-6*(a-1)**2", "6*a*(a-1)",
                        "12*a*(a-1)", "-12*a**2"],
         "10*a**3*(1+2*a)*(1+3*a)*(1+4*a)*(1+5*a)/((1+a)**2*(2+a)**2)",
         "k*(k+a)*(k+2*a)*(k-1)*(k-2)*(k-3)"),
        ((2, 2, 2), ["1", "3*(a-2)", "3*(a**2-a+3)", "a*(a**2+3*a+5)",
                     "-4*(3*a-1)", "-12*(a**2+1)", "2*(3*a**2+3*a+2)",
                     "-3*a*(a-7)", "-3*a*(a**2+a+4)", "12*a*(a-1)",
                     "2*a*(a-2)*(a-1)"],
         "30*a**4*(1+3*a)*(1+4*a)*(1+5*a)/((1+a)**2*(2+a)**2*(3+a))",
         "k*(k+a)*(k-1)*(k+a-1)*(k-2)*(k+a-2)"),
        ((2, 2, 1, 1), ["1", "2*a-7", "a**2-5*a+9", "-(a**2+a+3)", "-8*(a-1)",
                        "-4*(a-1)*(a-2)", "2*a*(a-1)", "-(a**2-17*a+6)",
                        "5*a**2-a+6", "4*a*(a-5)", "-6*a*(a-1)"],
         "90*a**4*(1+2*a)*(1+3*a)*(1+4*a)*(1+5*a)/((1+a)**2*(3+a)*(4+a)*(3+2*a))",
         "k*(k+a)*(k-1)*(k+a-1)*(k-2)*(k-3)"),
        ((2, 1, 1, 1, 1), ["1", "a-10", "-3*(2*a-5)", "3*a", "-4*(a-5)",
                           "20*(a-1)", "-8*a", "6*(2*a-5)", "-18*a",
                           "-24*(a-1)", "24*a"],
         "15*a**4*(1+2*a)*(1+3*a)*(1+4*a)*(1+5*a)/((2+a)**2*(3+a)*(5+a))",
         "k*(k+a)*(k-1)*(k-2)*(k-3)*(k-4)"),
        ((1,) * 6, ["1", "-15", "45", "-15", "40", "-120", "40", "-90", "90",
                    "144", "-120"],
         "a**5*(1+2*a)*(1+3*a)*(1+4*a)*(1+5*a)/((2+a)*(3+a)*(4+a)*(5+a))",
         "k*(k-1)*(k-2)*(k-3)*(k-4)*(k-5)"),
    ],
}




def P(k, a, n):
    out = F(1)
    for m in range(n):
        out *= k + m * a
    return out


# beta = 4, functions of k
BETA4_TABLE = {
    "I": lambda k: F(-1, k),
    "Λ": lambda k: F(1, k * (k - 1)),
    "I,I": lambda k: F(k - 2, k * (k - 1) ** 2),
    "△": lambda k: F(-1, k * (k - 1) ** 2),
    "N": lambda k: F(-1, k * (k - 1) ** 2),
    "Y": lambda k: F(-1, k * (k - 1) * (k - 2)),
    "Λ,I": lambda k: F(-(k - 3), k * (k - 1) ** 2 * (k - 2)),
    "I,I,I": lambda k: F(-(k * k - 6 * k + 10), k * (k - 1) ** 2 * (k - 2) ** 2),
    "□": lambda k: F(1, k * (k - 1) ** 2 * (k - 2)),
    "⊵": lambda k: F(1, k * (k - 1) ** 2 * (k - 2)),
    "∠∠": lambda k: F(1, k * (k - 1) ** 2 * (k - 2)),
    "M": lambda k: F(k - 3, k * (k - 1) ** 2 * (k - 2) ** 2),
    "X": lambda k: F(1, k * (k - 1) * (k - 2) * (k - 3)),
    "△,I": lambda k: F((k - 3) ** 2, k * (k - 1) ** 2 * (k - 2) ** 3),
    "N,I": lambda k: F((k - 3) ** 2, k * (k - 1) ** 2 * (k - 2) ** 3),
    "Y,I": lambda k: F(k - 4, k * (k - 1) ** 2 * (k - 2) * (k - 3)),
    "Λ,Λ": lambda k: F(k - 4, k * (k - 1) ** 2 * (k - 2) ** 2),
    "Λ,I,I": lambda k: F(k ** 3 - 10 * k ** 2 + 34 * k - 38, k * (k - 1) ** 2 * (k - 2) ** 3 * (k - 3)),
    "I,I,I,I": lambda k: F(k ** 4 - 14 * k ** 3 + 76 * k ** 2 - 188 * k + 174,
                           k * (k - 1) ** 2 * (k - 2) ** 3 * (k - 3) ** 2),
}


def _alpha_table(k, a):
    k, a = F(k), F(a)
    p2, p3, p4 = 1 / P(k, a, 2), 1 / P(k, a, 3), 1 / P(k, a, 4)
    h1 = (1 + a) / 2
    h2 = (1 + a) * (1 + 2 * a) / 6
    u = k + a - 1
    return {
        "I": -1 / k,
        "Λ": p2,
        "I,I": p2 * (1 + a / (k - 1)),
        "II": h1 * p2,
        "Y": -p3,
        "Λ,I": -p3 * (1 + 2 * a / (k - 1)),
        "III": -h2 * p3,
        "∠̲": -h1 * p3,
        "I,I,I": -p3 * (1 + 3 * a / (k - 1) + 2 * a * a / ((k - 1) * (k - 2))),
        "II,I": -h1 * p3 * (1 + 2 * a / (k - 1)),
        "N": -p3 * (1 + a / (k - 1)),
        "△": -p3 * (1 - a * a / (k - 1)),
        "X": p4,
        "Y,I": p4 * (1 + 3 * a / (k - 1)),
        "Λ,Λ": p4 * (1 + a / u) * (1 + 3 * a / (k - 1)),
        "Λ,I,I": p4 * (1 - 2 * a / u + 7 * a / (k - 1) + 6 * a * a / ((k - 1) * (k - 2))
                       - 2 * a * a / ((k - 2) * u)),
        "I,I,I,I": p4 * (1 + 6 * a / u + 9 * a * a / ((k - 1) * u) + 8 * a * a / ((k - 2) * u)
                         + 25 * a ** 3 / ((k - 1) * (k - 3) * u) - 8 * a ** 3 / (u * (k - 2) * (k - 3))
                         + 6 * a ** 4 / ((k - 1) * (k - 2) * (k - 3) * u)),
        "⊒": h1 * p4 * (1 + 2 * a / (k - 1)),
        "≪": (1 + a) ** 2 / 4 * p4,
        "⊨": h1 * p4,
        "∠̲̲": h2 * p4,
        "IIII": (1 + a) * (1 + 2 * a) * (1 + 3 * a) / 24 * p4,
        "∐̲": h1 * p4 * (1 + a / (k - 1)),
        "△̲": h1 * p4 * (1 - 2 * a * a / (k - 1)),
        "∠∠": p4 * (1 + 2 * a / (k - 1)),
        "⊵": p4 * (1 - a * (a - 1) / (k - 1)),
        "∠̲,I": h1 * p4 * (1 + 3 * a / (k - 1)),
        "Λ,II": h1 * p4 * (1 + a / u) * (1 + 3 * a / (k - 1)),
        "II,I,I": h1 * p4 * (1 - 2 * a / u + 7 * a / (k - 1) + 6 * a * a / ((k - 1) * (k - 2))
                             - 2 * a * a / ((k - 2) * u)),
        # printed with a removable 1/(1+alpha); expanded here so alpha = -1 is defined
        "II,II": (1 + a) ** 2 / 4 * p4 * (1 + 4 * a / (k - 1)) + (1 + a) * a * a * (2 + a) / (2 * (k - 1) * u) * p4,
        "III,I": h2 * p4 * (1 + 3 * a / (k - 1)),
        "□": p4 * (1 + 2 * a / (k - 1)),
        "M": p4 * (1 + a / u) * (1 + 2 * a / (k - 1)),
        "N,I": p4 * (1 + 8 * a / (k - 1) - 4 * a / (k - 2) - a * a / (u * (k - 2))
                     + a * (1 + a) * (4 * k + 3 * a - 4) / ((k - 1) * (k - 2) * u)),
        "△,I": p4 * (1 - a * (a - 3) / u - a * a * (4 * a - 3) / ((k - 2) * u)
                     - a * a * (3 * a * a - 2 * a + 3) / ((k - 1) * (k - 2) * u)),
    }


def alpha_table(k, alpha):
    """{graph name: printed value} at one (k, alpha)."""
    return _alpha_table(k, alpha)


# beta = 1 values quoted alongside the tables
BETA1_ORDER4 = {
    "II,II": lambda k: F(9, 4) / (k * (k + 2) * (k + 4) * (k + 6)) * (1 + F(8, k - 1) + F(32, 3 * (k - 1) * (k + 1))),
    "III,I": lambda k: F(5, 2) / (k * (k + 2) * (k + 4) * (k + 6)) * (1 + F(6, k - 1)),
    "IIII": lambda k: F(35, 8) / (k * (k + 2) * (k + 4) * (k + 6)),
}

# closed form at k = 3, beta = 4
K3_BETA4 = {"I": F(-1, 3), "Λ": F(1, 6), "△": F(-1, 12)}


# beta = 4 phi series: {(mu, nu): coefficient(k)} of s_mu(x~) s_nu(lambda~)
def _phi_order6(k):
    k = F(k)
    out = {
        ((2,), (2,)): -1 / (2 * (k - 1) ** 2),
        ((3,), (3,)): k / (3 * (k - 1) ** 2 * (k - 2) ** 2),
    }
    p4 = 1 / (8 * k * (k - 1) ** 2 * (k - 2) ** 3 * (k - 3) ** 2)
    out[((4,), (4,))] = -2 * k * k * (k * k - 2 * k - 1) * p4
    out[((4,), (2, 2))] = out[((2, 2), (4,))] = 2 * k * (2 * k * k - 6 * k + 3) * p4
    out[((2, 2), (2, 2))] = (k ** 4 - 10 * k ** 3 + 30 * k ** 2 - 36 * k + 18) * p4
    if k in (4,):
        return out
    p5 = 1 / ((k - 1) ** 2 * (k - 2) ** 3 * (k - 3) ** 2 * (k - 4) ** 2)
    out[((5,), (5,))] = k * k * (k * k - 2 * k - 5) / 5 * p5
    out[((3, 2), (5,))] = out[((5,), (3, 2))] = -k * (k * k - 4 * k + 2) * p5
    out[((3, 2), (3, 2))] = (k ** 4 - 14 * k ** 3 + 48 * k ** 2 - 48 * k + 24) / 6 * p5
    if k == 5:
        return out
    p6 = 1 / ((k - 5) ** 2 * (k - 4) ** 2 * (k - 3) ** 4 * (k - 2) ** 3 * (k - 1) ** 2)

    def poly(*cs):
        return sum(c * k ** i for i, c in enumerate(cs))

    out[((6,), (6,))] = -k / 6 * poly(8, -44, -135, 76, 6, -8, 1) * p6
    out[((4, 2), (6,))] = out[((6,), (4, 2))] = poly(-20, 70, -61, -29, 38, -11, 1) * p6
    out[((4, 2), (4, 2))] = poly(-2400, 3600, -1740, -240, 1099, -708, 196, -24, 1) / (8 * k) * p6
    out[((3, 3), (6,))] = out[((6,), (3, 3))] = poly(80, -200, 251, -284, 154, -36, 3) / 6 * p6
    out[((3, 3), (4, 2))] = out[((4, 2), (3, 3))] = -poly(-400, 200, 525, -690, 322, -66, 5) / (2 * k) * p6
    out[((3, 3), (3, 3))] = poly(-2400, -1200, 7890, -8310, 4461, -1416, 264, -26, 1) / (18 * k) * p6
    out[((2, 2, 2), (6,))] = out[((6,), (2, 2, 2))] = poly(240, -769, 882, -424, 90, -7) / 6 * p6
    # printed as the same term twice; read as the symmetric pair
    out[((2, 2, 2), (4, 2))] = out[((4, 2), (2, 2, 2))] = (
        poly(4800, -11180, 11480, -6775, 2384, -481, 50, -2) / (8 * k) * p6)
    # printed with s_3 where the degree requires s_3^2
    out[((2, 2, 2), (3, 3))] = out[((3, 3), (2, 2, 2))] = poly(-1200, 2270, -1725, 640, -115, 8) / (3 * k) * p6
    out[((2, 2, 2), (2, 2, 2))] = poly(-25200, 60960, -64030, 38192, -13976, 3170, -431, 32, -1) / (48 * k) * p6
    return out


def phi_beta4(k, order: int = 6):
    """Reference phi coefficients through ``order`` at integer k (k > order - 1 keeps all poles away)."""
    return {key: v for key, v in _phi_order6(k).items() if sum(key[0]) <= order}


KNOWN_MISPRINTS = {
    "jack": [((2, 2, 1), "chi")],
    "alpha_table": ["II,II", "□"],
    "phi": [((3, 2), (3, 2))],
}
