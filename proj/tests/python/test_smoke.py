import pytest

import vassiliev_workbench as vw


def test_serialization_and_bigrading():
    s = "2;chords=1-2;bottom=;top=0,0"
    assert vw.normalize(s) == s
    assert vw.bigrading(s) == (1, 2)
    assert vw.validate(s, "T") == []
    assert vw.is_admissible(s)
    with pytest.raises(ValueError):
        vw.normalize("not a diagram")


def test_upper_diagonal_groups():
    assert vw.homology("T", "odd", 1, 2) == {"free_rank": 1, "torsion": []}
    assert vw.homology("T", "even", 2, 3) == {"free_rank": 0, "torsion": [2]}
    assert vw.group_str(vw.homology("T", "odd", 4, 5)) == "Z/2"
    for parity in ("even", "odd"):
        for i in range(2, 5):
            assert vw.group_str(vw.homology("T0", parity, i, i + 1)) == "0"


def test_homology_table_rows():
    rows = vw.homology_table("T", "odd", 4)
    entry = next(r for r in rows if (r["i"], r["j"]) == (4, 5))
    assert entry["torsion"] == [2]
    assert entry["zhat_nonzero"] and entry["zhat_generates"]
    assert list(entry)[:7] == ["complex", "parity", "i", "j", "ring", "free_rank", "torsion"]


def test_differential_squares_to_zero():
    for b in vw.basis("Tss", "odd", 3, 5):
        assert vw.d(vw.d(b, "Tss", "odd"), "Tss", "odd") == {}


def test_named_family_identities():
    for parity, sign in (("odd", -1), ("even", 1)):
        lhs = vw.d(vw.Z(3, parity), "Tss", parity)
        rhs = vw.vdash(vw.Z(2, parity), vw.star(), parity)
        assert lhs == {k: sign * v for k, v in rhs.items()}
    # Z_1 |= Z_1 = (1 + q) Z_2 with q = (-1)^d
    assert vw.vdash(vw.Z(1, "even"), vw.Z(1, "even"), "even") == {k: 2 * v for k, v in vw.Z(2, "even").items()}
    assert vw.vdash(vw.Z(1, "odd"), vw.Z(1, "odd"), "odd") == {}


def test_iso_I_round_trip():
    for b in vw.basis("Tss", "even", 2, 3):
        assert vw.iso_I_inv(vw.iso_I(b, "even"), "even") == b


def test_chord_oracle_and_dual_homology():
    assert vw.chord_space_dims(4, "4T") == [1, 1, 2, 3, 6]
    assert vw.chord_space_dims(4, "4T+1T") == [1, 0, 1, 1, 3]
    assert vw.dual_homology("T", "odd", 3, 6)["free_rank"] == 3
    with pytest.raises(ValueError):
        vw.chord_space_dims(3, "4T", "Z")


def test_matrix_and_verify():
    m = vw.differential_matrix("T", "odd", 2, 4)
    assert m["rows"] == vw.dimension("T", "odd", 2, 3)
    assert all(isinstance(v, int) for _, _, v in m["entries"])
    report = vw.verify("families")
    assert report["passed"], report
    assert "d-squared" in vw.suite_names()
