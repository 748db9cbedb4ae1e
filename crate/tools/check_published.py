#!/usr/bin/env python3
# Verifies the published affine systems coefficient-for-coefficient against
# the generated tables, checks that the displayed systems cut the solution
# sets to exactly the published tuples, and checks that the published tuples
# survive the full constraint set (all tables, all l).  Emits:
#   data/paper_characters.json            (--characters paper selection)
#   crates/core/tests/fixtures/paper_systems.json (regression fixture)

import json
import os
import sys
from fractions import Fraction
from math import gcd

sys.path.insert(0, os.path.dirname(__file__))
from gen_tables import (Cyc, R, M23_CLASSES, M23_IRR, M23_POWER, build_bct,
                        trace_q, divisors, euler_phi)

OUT = os.path.join(os.path.dirname(__file__), "..")

ORDER_OF = {c[0]: c[1] for c in M23_CLASSES}
M23_NAMES = [c[0] for c in M23_CLASSES]

BCT = {p: build_bct(p) for p in (2, 3, 5, 7, 11, 23)}


def table_rows(key):
    if key == "*":
        return M23_NAMES, M23_IRR
    return BCT[key]


def p_part(n, p):
    r = 1
    while n % p == 0:
        r *= p
        n //= p
    return r


def allowed_classes(k):
    out = []
    for name, order, _ in M23_CLASSES[1:]:
        if all(p_part(order, p) <= p_part(k, p) for p in (2, 3, 5, 7, 11, 23)):
            out.append(name)
    return out


def chi_power(row_by_class, profile, k, d):
    # value of the row at u^d (order m = k/d), as Cyc
    m = k // d
    if m == 1:
        return row_by_class["1a"]
    tup = profile[m]
    s = R(0)
    for cname, nu in tup.items():
        s = s + row_by_class[cname].scale(nu)
    return s


def build_mu(k, l, row_by_class, profile):
    # returns (coeffs dict over allowed classes, constant), exact integers
    coeffs = {}
    for c in allowed_classes(k):
        t = trace_q(row_by_class[c] * Cyc.root(k, -l), k)
        assert t.denominator == 1
        coeffs[c] = int(t)
    const = Fraction(0)
    for d in divisors(k):
        if d == 1:
            continue
        m = k // d
        val = chi_power(row_by_class, profile, k, d)
        term = val * (Cyc.root(m, -l) if m > 1 else R(1))
        const += trace_q(term, m)
    assert const.denominator == 1
    return coeffs, int(const)


def rbc(key, chi):
    names, rows = table_rows(key)
    return dict(zip(names, rows[int(chi.split("_")[1]) - 1]))


# ---------- solution sets from the paper ----------

SOL4 = [(0, 1), (-2, 3), (2, -1)]
SOL6 = [(0, 0, 1), (4, -6, 3), (-6, 6, 1), (-6, 9, -2), (-6, 12, -5),
        (-4, 3, 2), (-4, 6, -1), (-4, 9, -4), (-2, 0, 3), (-2, 3, 0),
        (-2, 6, -3), (0, -3, 4), (0, 3, -2), (2, -6, 5), (2, -3, 2),
        (2, 0, -1), (4, -9, 6), (4, -3, 0), (6, -12, 7), (6, -9, 4),
        (6, -6, 1)]
SOL7 = [(0, 1), (2, -1), (1, 0), (-1, 2)]
SOL8 = [(-2, 4, -1), (0, 4, -3), (2, 0, -1), (0, 0, 1), (0, 2, -1),
        (2, -2, 1), (-2, 2, 1), (0, -2, 3), (-2, 6, -3), (2, -4, 3)]
SOL11 = [(a, 1 - a) for a in range(-9, 11)]
SOL15 = [(-3, 5, -1, 0), (-3, 5, 0, -1), (0, 0, 0, 1), (0, 0, 1, 0),
         (3, -5, 1, 2), (3, -5, 2, 1)]
SOL23 = [(1, 0), (0, 1)]

D2 = {2: {"2a": 1}}
D3 = {3: {"3a": 1}}
D5 = {5: {"5a": 1}}


def prof7(t):
    return {7: {"7a": t[0], "7b": t[1]}}


def prof11(t):
    return {11: {"11a": t[0], "11b": t[1]}}


def prof23(t):
    return {23: {"23a": t[0], "23b": t[1]}}


def prof4(t):
    return {4: {"2a": t[0], "4a": t[1]}, **D2}


# profiles per displayed order; each entry is a full profile map
PROFILES = {
    4: [D2],
    6: [{**D2, **D3}],
    7: [{}],
    8: [{**prof4(t)} for t in SOL4],
    10: [{**D2, **D5}],
    11: [{}],
    15: [{**D3, **D5}],
    21: [{**D3, **prof7(t)} for t in SOL7],
    22: [{**D2, **prof11(t)} for t in SOL11],
    23: [{}],
    33: [{**D3, **prof11(t)} for t in SOL11],
    35: [{**D5, **prof7(t)} for t in SOL7],
    46: [{**D2, **prof23(t)} for t in SOL23],
    55: [{**D5, **prof11(t)} for t in SOL11],
    69: [{**D3, **prof23(t)} for t in SOL23],
    77: [{**prof7(s), **prof11(t)} for s in SOL7 for t in SOL11],
    115: [{**D5, **prof23(t)} for t in SOL23],
    161: [{**prof7(s), **prof23(t)} for s in SOL7 for t in SOL23],
    253: [{**prof11(s), **prof23(t)} for s in SOL11 for t in SOL23],
}

# ---------- the displayed systems ----------
# (order, table, chi, l, coeffs, constant) ; constant=None -> per-case below

DISPLAYED = [
    (4, 23, "chi_10", 0, {"2a": -16}, 272),
    (4, 23, "chi_10", 2, {"2a": 16}, 272),
    (4, 23, "chi_2", 0, {"2a": 10, "4a": 2}, 26),
    (4, 23, "chi_2", 2, {"2a": -10, "4a": -2}, 26),
    (4, 23, "chi_3", 0, {"2a": -6, "4a": 2}, 42),
    (4, 23, "chi_3", 2, {"2a": 6, "4a": -2}, 42),

    (6, "*", "chi_3", 0, {"2a": -6}, 42),
    (6, "*", "chi_3", 3, {"2a": 6}, 48),
    (6, "*", "chi_12", 0, {"3a": -8}, 888),
    (6, "*", "chi_12", 3, {"3a": 8}, 888),
    (6, "*", "chi_2", 1, {"2a": 6, "3a": 4}, 12),
    (6, "*", "chi_2", 2, {"2a": -6, "3a": -4}, 24),
    (6, "*", "chi_5", 1, {"2a": 22, "3a": 5, "6a": 1}, 203),
    (6, 7, "chi_4", 0, {"2a": 32, "3a": 2, "6a": 2}, 226),
    (6, 23, "chi_2", 3, {"2a": -10, "3a": -6, "6a": 2}, 22),

    (7, "*", "chi_3", 1, {"7a": 4, "7b": -3}, 45),
    (7, "*", "chi_3", 3, {"7a": -3, "7b": 4}, 45),
    (7, 2, "chi_2", 1, {"7a": -4, "7b": 3}, 11),
    (7, 2, "chi_2", 3, {"7a": 3, "7b": -4}, 11),

    # order 8: constants depend on the order-4 case, listed per case below
    (8, 7, "chi_4", 0, {"2a": 64}, [224, 160, 288]),
    (8, 7, "chi_4", 4, {"2a": -64}, [224, 160, 288]),
    (8, "*", "chi_2", 0, {"2a": 24, "4a": 8}, [32, 16, 48]),
    (8, "*", "chi_2", 4, {"2a": -24, "4a": -8}, [32, 16, 48]),
    (8, "*", "chi_3", 0, {"2a": -12, "4a": 4, "8a": -4}, [44, 60, 28]),
    (8, "*", "chi_3", 4, {"2a": 12, "4a": -4, "8a": 4}, [44, 60, 28]),
    (8, 23, "chi_2", 0, {"2a": 20, "4a": 4, "8a": -4}, [28, 12, 44]),
    (8, 23, "chi_2", 4, {"2a": -20, "4a": -4, "8a": 4}, [28, 12, 44]),

    (10, "*", "chi_5", 0, {"2a": 88}, 252),
    (10, "*", "chi_5", 5, {"2a": -88}, 208),
    (10, 3, "chi_5", 1, {"2a": 8, "5a": -1}, 97),

    (11, 3, "chi_5", 1, {"11a": 6, "11b": -5}, 104),
    (11, 3, "chi_5", 2, {"11a": -5, "11b": 6}, 104),

    (15, 2, "chi_7", 0, {"3a": -40}, 210),
    (15, 2, "chi_7", 5, {"3a": 20}, 225),
    (15, 2, "chi_9", 0, {"5a": -24}, 240),
    (15, 2, "chi_9", 5, {"5a": 12}, 240),
    (15, "*", "chi_5", 0, {"3a": 40}, 240),
    (15, "*", "chi_2", 0, {"3a": 32, "5a": 16, "15a": -8, "15b": -8}, 38),
    (15, "*", "chi_2", 3, {"3a": -8, "5a": -4, "15a": 2, "15b": 2}, 28),
    (15, "*", "chi_2", 5, {"3a": -16, "5a": -8, "15a": 4, "15b": 4}, 26),
    (15, "*", "chi_7", 1, {"3a": -3, "5a": 1, "15a": 7, "15b": -8}, 233),
    (15, "*", "chi_7", 7, {"3a": -3, "5a": 1, "15a": -8, "15b": 7}, 233),
    (15, 2, "chi_2", 1, {"3a": 2, "5a": 1, "15a": 7, "15b": -8}, 8),
    (15, 2, "chi_2", 7, {"3a": 2, "5a": 1, "15a": -8, "15b": 7}, 8),
    (15, 7, "chi_4", 0, {"3a": 8, "5a": -16, "15a": 8, "15b": 8}, 202),
    (15, 23, "chi_10", 1, {"3a": 1, "15a": 6, "15b": -9}, 279),
    (15, 23, "chi_12", 1, {"3a": -1, "15a": -6, "15b": 9}, 666),

    (21, 23, "chi_2", 0, {"3a": 36}, 27),
    (21, 23, "chi_2", 7, {"3a": -18}, 18),
    (21, 23, "chi_10", 1, {"3a": 1}, 279),

    (22, "*", "chi_2", 0, {"2a": 60}, 28),
    (22, "*", "chi_2", 11, {"2a": -60}, 16),

    (23, 2, "chi_2", 1, {"23a": 12, "23b": -11}, 11),
    (23, 2, "chi_2", 5, {"23a": -11, "23b": 12}, 11),

    (33, "*", "chi_2", 0, {"3a": 80}, 30),
    (33, "*", "chi_2", 11, {"3a": -40}, 18),

    (35, 23, "chi_2", 0, {"5a": 24}, 25),
    (35, 23, "chi_2", 7, {"5a": -6}, 20),

    (46, "*", "chi_9", 0, {"2a": 286}, 266),
    (46, "*", "chi_9", 23, {"2a": -286}, 240),

    (55, 2, "chi_2", 0, {"5a": 40}, 15),
    (55, 2, "chi_2", 5, {"5a": -4}, 15),

    (69, "*", "chi_3", 0, {"23a": -44, "23b": -44}, 23),
    (69, "*", "chi_3", 23, {"23a": 22, "23b": 22}, 23),

    (77, 2, "chi_2", 0, {"7a": 30, "7b": 30}, 14),
    (77, 2, "chi_4", 0, {"7a": -90, "7b": -90}, 35),

    (115, "*", "chi_3", 0, {"23a": -88, "23b": -88}, 23),
    (115, "*", "chi_3", 23, {"23a": 22, "23b": 22}, 23),

    (161, "*", "chi_5", 0, {"7a": -132, "7b": -132}, 224),
    (161, "*", "chi_9", 0, {"7a": 132, "7b": 132}, 259),

    (253, "*", "chi_2", 0, {"23a": -220, "23b": -220}, 0),
    (253, "*", "chi_2", 23, {"23a": 22, "23b": 22}, 0),
    (253, "*", "chi_6", 11, {"23a": -10, "23b": -10}, 230),
]


def check_displayed():
    print("checking the displayed affine systems...")
    n = 0
    for (k, key, chi, l, want_coeffs, want_const) in DISPLAYED:
        rows = rbc(key, chi)
        consts = []
        for prof in PROFILES[k]:
            coeffs, const = build_mu(k, l, rows, prof)
            nz = {c: v for c, v in coeffs.items() if v != 0}
            assert nz == want_coeffs, (k, key, chi, l, nz, want_coeffs)
            consts.append(const)
        if isinstance(want_const, list):
            assert consts == want_const, (k, key, chi, l, consts, want_const)
        else:
            assert all(c == want_const for c in consts), \
                (k, key, chi, l, consts, want_const)
        n += 1
    print(f"  all {n} displayed forms match (coefficients and constants)")


# ---------- solve the displayed systems and compare to the theorem ----------

def solve_displayed(k, extra_cong):
    vars_ = allowed_classes(k)
    sols = set()
    for prof in PROFILES[k]:
        forms = []
        for (kk, key, chi, l, _, _) in DISPLAYED:
            if kk != k:
                continue
            coeffs, const = build_mu(k, l, rbc(key, chi), prof)
            forms.append((coeffs, const))
        # brute force over a generous box with the augmentation substituted
        lo, hi = -60, 60
        m = len(vars_)

        def rec(i, acc, left):
            if i == m - 1:
                cand = acc + [left]
                ok = True
                for coeffs, const in forms:
                    v = const + sum(coeffs[c] * x for c, x in zip(vars_, cand))
                    if v < 0 or v % k != 0:
                        ok = False
                        break
                if ok and extra_cong is not None:
                    ok = extra_cong(dict(zip(vars_, cand)))
                if ok:
                    sols.add(tuple(cand))
                return
            for x in range(lo, hi + 1):
                rec(i + 1, acc + [x], left - x)

        rec(0, [], 1)
    return vars_, sols


def check_solution_sets():
    print("solving the displayed systems...")
    cong4 = lambda nu: nu["2a"] % 2 == 0
    cong8 = lambda nu: nu["2a"] % 2 == 0 and nu["4a"] % 2 == 0
    checks = [
        (4, SOL4, cong4), (7, SOL7, None), (8, SOL8, cong8),
        (11, SOL11, None), (23, SOL23, None),
        (10, [], None), (21, [], None), (22, [], None), (33, [], None),
        (35, [], None), (46, [], None), (55, [], None), (69, [], None),
        (77, [], None), (115, [], None), (161, [], None), (253, [], None),
    ]
    for k, want, cong in checks:
        vars_, sols = solve_displayed(k, cong)
        assert sols == set(want), (k, sorted(sols), want)
        print(f"  order {k}: {len(sols)} solutions == theorem")
    # order 6 and 15 have wider boxes; do them with tighter bounds
    for k, want in ((6, SOL6), (15, SOL15)):
        vars_, sols = solve_displayed(k, None)
        assert sols == set(want), (k, sorted(sols), sorted(want))
        print(f"  order {k}: {len(sols)} solutions == theorem")


# ---------- theorem tuples survive the full constraint set ----------

def full_tables_for(k):
    out = [("*", M23_NAMES, M23_IRR)]
    for p in (2, 3, 5, 7, 11, 23):
        if gcd(p, k) == 1:
            sub, rows = BCT[p]
            out.append((p, sub, rows))
    return out


def survives_full(k, vars_, tup, prof):
    nu = dict(zip(vars_, tup))
    for key, names, rows in full_tables_for(k):
        for row in rows:
            rc = dict(zip(names, row))
            for l in range(k):
                coeffs, const = build_mu(k, l, rc, prof)
                v = const + sum(coeffs[c] * nu[c] for c in vars_)
                if v < 0 or v % k != 0:
                    return False, (key, l, v)
    return True, None


def check_full_survival():
    print("checking theorem tuples against the full constraint set...")
    jobs = [
        (4, SOL4, lambda t: [D2]),
        (6, SOL6, lambda t: [{**D2, **D3}]),
        (7, SOL7, lambda t: [{}]),
        (8, SOL8, lambda t: [prof4(s) for s in SOL4]),
        (11, SOL11, lambda t: [{}]),
        (15, SOL15, lambda t: [{**D3, **D5}]),
        (23, SOL23, lambda t: [{}]),
    ]
    for k, sols, profs in jobs:
        vars_ = allowed_classes(k)
        for tup in sols:
            ok = False
            why = None
            for prof in profs(tup):
                good, why = survives_full(k, vars_, tup, prof)
                if good:
                    ok = True
                    break
            assert ok, (k, tup, why)
        print(f"  order {k}: all {len(sols)} tuples survive every table")


def emit():
    sel = {}
    fixture = []
    for (k, key, chi, l, coeffs, const) in DISPLAYED:
        e = sel.setdefault(str(k), [])
        tk = "*" if key == "*" else str(key)
        for item in e:
            if item["table"] == tk and item["chi"] == chi:
                if l not in item["l"]:
                    item["l"].append(l)
                break
        else:
            e.append({"table": tk, "chi": chi, "l": [l]})
        fixture.append({
            "order": k, "table": tk, "chi": chi, "l": l,
            "coeffs": coeffs,
            "constants": const if isinstance(const, list) else [const],
        })
    with open(os.path.join(OUT, "data", "paper_characters.json"), "w") as f:
        json.dump(sel, f, indent=1, sort_keys=True)
        f.write("\n")
    fixdir = os.path.join(OUT, "crates", "core", "tests", "fixtures")
    os.makedirs(fixdir, exist_ok=True)
    # profiles for the order-8 cases are ordered as SOL4
    doc = {
        "note": "published affine systems; constants listed per power-case "
                "in the order of case_profiles when more than one",
        "case_profiles": {"8": [{"4": dict(zip(("2a", "4a"), t)), "2": {"2a": 1}}
                                for t in SOL4]},
        "forms": fixture,
    }
    with open(os.path.join(fixdir, "paper_systems.json"), "w") as f:
        json.dump(doc, f, indent=1, sort_keys=True)
        f.write("\n")
    print("wrote data/paper_characters.json and "
          "crates/core/tests/fixtures/paper_systems.json")


def main():
    check_displayed()
    check_solution_sets()
    check_full_survival()
    emit()
    print("paper regression data fully verified")


if __name__ == "__main__":
    sys.exit(main())
