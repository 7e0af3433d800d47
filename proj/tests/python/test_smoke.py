import math

import pytest

import bfree


def recheck(cert, elements):
    """Re-derive a certificate's claims from its JSON alone."""
    fam = cert["family"]
    k, rho = fam["k"], fam["rho"]
    tables = []
    for h in fam["tables"]:
        raw = bytes.fromhex(h)
        tables.append([raw[i // 8] >> (i % 8) & 1 for i in range(1 << (2 * rho + 1))])
    support = set(cert["pattern"]["support"])
    lo, hi = cert["pattern"]["window"]
    if hi < lo:
        lo, hi = 0, 0
    image = set()
    for j in range(lo - rho, hi + rho + 1):
        idx = sum((j + d in support) << (rho - d) for d in range(-rho, rho + 1))
        if tables[j % k][idx]:
            image.add(j)
    c = cert["modulus"]
    admissible = all(len({s % b for s in support}) < b for b in elements)
    covered = len({x % c for x in image}) == c
    audit = all((a["point"] - r) % m == 0
                for a in cert["congruence_audit"] for r, m in a["congruences"])
    return c in elements and admissible and covered and audit


def test_bspec_and_errors():
    B = bfree.validate_bspec([4, 9, 25, 49])
    assert B.elements == [4, 9, 25, 49]
    assert 9 in B and 2 not in B
    with pytest.raises(bfree.BFreeError) as err:
        bfree.validate_bspec([4, 6])
    assert err.value.code == "NotCoprime"
    assert len(bfree.prime_powers(2, 100)) == 25


def test_arithmetic():
    assert bfree.crt_solve([(2, 3), (3, 5)]) == (8, 15)
    assert bfree.crt_solve([(1, 4), (2, 9), (3, 25)]) == (353, 900)
    B = bfree.validate_bspec([4, 9, 25, 49])
    assert bfree.find_coprime_element(B, 6) == 25


def test_admissibility_and_counts():
    B = bfree.validate_bspec([4, 9, 25, 49])
    assert bfree.is_admissible(B, [0, 1, 2, 3]) == (False, 4)
    assert bfree.is_admissible(B, [1, 2, 3, 5]) == (True, None)
    sq = bfree.bspec_from_argument("primes-sq")
    assert bfree.bfree_window(sq, 1, 20) == [1, 2, 3, 5, 6, 7, 10, 11, 13, 14, 15, 17, 19]
    assert bfree.count_admissible_words(B, 4) == 15
    assert bfree.count_admissible_words(B, 5) == 29
    assert bfree.count_admissible_words(B, 16, threads=4) == bfree.count_admissible_words(B, 16)
    d = bfree.density_estimate(sq, 100000)
    assert abs(d["observed"] - 6 / math.pi**2) < 0.01


def test_entropy():
    p2 = bfree.prime_powers(2, 10000)
    p4 = bfree.prime_powers(4, 10000)
    assert abs(bfree.entropy_ratio(p2, p4) - math.pi**2 / 15) < 1e-3
    rep = bfree.entropy_report(bfree.validate_bspec([4, 9, 25, 49]), 8)
    assert rep["nonincreasing"] and rep["above_closed_form"]
    assert [r["count"] for r in rep["rows"]][:5] == [2, 4, 8, 15, 29]


def test_block_codes():
    F = bfree.shift_family(1, 1, 1)
    assert bfree.apply_to_pattern(F, [5]) == [4]
    H = bfree.parity_family(0, 2, 2)
    assert bfree.apply_to_pattern(H, [1, 3], (0, 6)) == [3, 5]
    assert bfree.apply_to_pattern(H, [0, 4], (0, 6)) == [0, 4]
    assert bfree.family_from_json(F.to_json()) == F
    B = bfree.validate_bspec([4, 9, 25, 49])
    assert bfree.injective_on_language(F, B, 10)


def test_search_and_independent_recheck():
    B = bfree.validate_bspec([4, 9, 25, 49])
    report, certs = bfree.search(B, 2, 2, 12)
    assert [s["name"] for s in report["survivors"]] == ["S^-2", "S^-1", "S^0", "S^1", "S^2"]
    assert report["unresolved"] == []
    assert certs
    for cert in certs:
        assert bfree.verify_certificate(B, cert) == ""
        assert recheck(cert, B.elements)


def test_degenerate_search():
    B = bfree.validate_bspec([2, 9, 25, 49])
    report, certs = bfree.search(B, 2, 2, 12, threads=2)
    assert report["survivor_count"] == 13
    assert all(recheck(c, B.elements) for c in certs)


def test_tampered_certificate_fails():
    B = bfree.validate_bspec([4, 9, 25, 49])
    _, certs = bfree.search(B, 1, 1, 10)
    cert = next(c for c in certs if c["points"])
    cert["points"][0] += 1
    cert["pattern"]["support"] = sorted(cert["core"] + cert["points"])
    assert bfree.verify_certificate(B, cert) != ""
