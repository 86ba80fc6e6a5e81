"""Reference polynomials and operators for the tests, as sympy-parsable strings."""
from __future__ import annotations

# rational limits m_1 .. m_5
M_PRINTED = {
    1: "z1",
    2: "z1**3 - 3*z3",
    3: "z1**6 - 15*z1**3*z3 + 45*z1*z5 - 45*z3**2",
    4: "z1**10 - 45*z1**7*z3 + 315*z1**5*z5 - 1575*z1**3*z7 + 4725*z1**2*z3*z5"
       " - 4725*z1*z3**3 + 4725*z3*z7 - 4725*z5**2",
    5: "z1**15 - 105*z1**12*z3 + 1260*z1**10*z5 + 1575*z1**9*z3**2 - 14175*z1**8*z7"
       " + 14175*z1**7*z3*z5 - 33075*z1**6*z3**3 + 99225*z1**6*z9 - 297675*z1**5*z3*z7"
       " - 297675*z1**5*z5**2 + 1488375*z1**4*z3**2*z5 - 992250*z1**3*z3**4"
       " - 1488375*z1**3*z3*z9 + 1488375*z1**3*z5*z7 + 4465125*z1**2*z3**2*z7"
       " - 4465125*z1**2*z3*z5**2 - 1488375*z1*z3**3*z5 + 4465125*z1*z5*z9"
       " - 4465125*z1*z7**2 + 1488375*z3**5 - 4465125*z3**2*z9 + 8930250*z3*z5*z7"
       " - 4465125*z5**3",
}

# H_0, H_2, H_4 for genus 1..4
H_TABLES = {
    1: ["z1*d1 - 1",
        "d1**2/2 - l4*z1**2/6"],
    2: ["z1*d1 + 3*z3*d3 - 3",
        "d1**2/2 - 4*l4*z3*d1/5 + z1*d3 - 3*l4*z1**2/10 + (3*l8/2 - 2*l4**2/5)*z3**2",
        "d1*d3 - 6*l6*z3*d1/5 + l4*z3*d3 - l6*z1**2/5 + l8*z1*z3"
        " + (3*l10 - 3*l4*l6/5)*z3**2 - l4"],
    3: ["z1*d1 + 3*z3*d3 + 5*z5*d5 - 6",
        "d1**2/2 - 8*l4*z3*d1/7 + (z1 - 4*l4*z5/7)*d3 + 3*z3*d5 - 5*l4*z1**2/14"
        " + (3*l8/2 - 4*l4**2/7)*z3**2 + (5*l12/2 - 2*l4*l8/7)*z5**2",
        "d1*d3 - 12*l6*z3*d1/7 + (l4*z3 - 6*l6*z5/7)*d3 + (z1 + 3*l4*z5)*d5 - 2*l6*z1**2/7"
        " + l8*z1*z3 + (3*l10 - 6*l4*l6/7)*z3**2 + 3*l12*z3*z5 + (5*l14 - 3*l6*l8/7)*z5**2"
        " - 3*l4"],
    4: ["z1*d1 + 3*z3*d3 + 5*z5*d5 + 7*z7*d7 - 10",
        "d1**2/2 + z1*d3 + 3*z3*d5 + 5*z5*d7 - 4*l4*(3*z3*d1 + 2*z5*d3 + z7*d5)/9"
        " - 7*l4*z1**2/18 + (3*l8/2 - 2*l4**2/3)*z3**2 + (5*l12/2 - 4*l4*l8/9)*z5**2"
        " + (7*l16/2 - 2*l4*l12/9)*z7**2",
        "d1*d3 + z1*d5 + 3*z3*d7 + l4*(z3*d3 + 3*z5*d5 + 5*z7*d7)"
        " - 2*l6*(3*z3*d1 + 2*z5*d3 + z7*d5)/3 - l6*z1**2/3 + l8*z1*z3"
        " + (3*l10 - l4*l6)*z3**2 + 3*l12*z3*z5 + (5*l14 - 2*l6*l8/3)*z5**2"
        " + 5*l16*z5*z7 + (7*l18 - l6*l12/3)*z7**2 - 6*l4"],
}

# genus 2 sigma series through lambda-weight 6
SIGMA_GENUS2 = ("z1**3 - 3*z3 + l4*z1**7/420 + l4*z1**4*z3/4 - l6*z1**9/1890"
                " + l6*z1**6*z3/30 + l6*z1**3*z3**2/2 - l6*z3**3/2")

SHW = {2: "(p1**3 - p3)/3", 3: "(p1**6 - 5*p1**3*p3 + 9*p1*p5 - 5*p3**2)/45"}
