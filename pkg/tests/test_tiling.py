"""
铺砌文件解析、不变量校验与内置目录
"""
import pytest

from database import builtin_tiling, list_builtins, parse_tiling
from models.tiling import DimVector, TilingError, TilingParseError, potential_terms, ringel_form, validate_tiling

C3_TEXT = """\
# comment line
vertices 1
arrow x 0 0 1 0
arrow y 0 0 0 1
arrow z 0 0 -1 -1   # trailing comment
face + x y z
face - x z y
"""


def test_parse_c3():
    t = parse_tiling(C3_TEXT, name="c3")
    assert t.vertex_count == 1
    assert t.arrow_names == ('x', 'y', 'z')
    assert t.arrow('z').shift == (-1, -1)
    assert [f.sign for f in t.faces] == [1, -1]
    assert validate_tiling(t).ok


@pytest.mark.parametrize("text, line, fragment", [
    ("vertices 1\nbogus 1\n", 2, "unknown keyword"),
    ("arrow x 0 0 1 0\n", 1, "out of order"),
    ("face + x\nvertices 1\n", 1, "out of order"),
    ("vertices 1\narrow x 0 0 1 0\nface + x\narrow y 0 0 0 1\n", 4, "out of order"),
    ("vertices 1\narrow x 0 0 1 0\narrow x 0 0 0 1\n", 3, "duplicate arrow name"),
    ("vertices 1\narrow x 0 3 1 0\n", 2, "out of range"),
    ("vertices 1\narrow x 0 0 a 0\n", 2, "must be an integer"),
    ("vertices 1\narrow x 0 0 1 0\nface + x y\n", 3, "unknown arrow"),
    ("vertices 1\narrow x 0 0 1 0\nface * x\n", 3, "face sign"),
    ("vertices 1\narrow x-y 0 0 1 0\n", 2, "invalid arrow name"),
])
def test_parse_errors_carry_line_numbers(text, line, fragment):
    with pytest.raises(TilingParseError) as info:
        parse_tiling(text)
    assert info.value.line == line
    assert fragment in str(info.value)
    assert f"line {line}" in str(info.value)


def test_parse_missing_sections():
    with pytest.raises(TilingParseError, match="vertices"):
        parse_tiling("# empty\n")
    with pytest.raises(TilingParseError, match="no faces"):
        parse_tiling("vertices 1\narrow x 0 0 1 0\n")


def test_validation_reports_nonzero_face_shift():
    t = parse_tiling(C3_TEXT.replace("arrow z 0 0 -1 -1", "arrow z 0 0 -1 0"))
    report = validate_tiling(t)
    assert not report.ok
    invariants = {v.invariant for v in report.violations}
    assert "face cycle contractible" in invariants
    assert report.lines()[0] == "ok: false"


def test_validation_reports_face_incidence():
    text = "vertices 1\narrow x 0 0 1 0\narrow y 0 0 0 1\narrow z 0 0 -1 -1\nface + x y z\nface + x z y\n"
    report = validate_tiling(parse_tiling(text))
    assert not report.ok
    assert any(v.invariant == "face incidence" for v in report.violations)


def test_validation_reports_euler_characteristic():
    text = ("vertices 2\narrow x 0 0 1 0\narrow y 0 0 0 1\narrow z 0 0 -1 -1\n"
            "arrow w 1 1 1 0\nface + x y z\nface - x z y\nface + w\nface - w\n")
    report = validate_tiling(parse_tiling(text))
    assert not report.ok


def test_potential_terms_use_canonical_rotation(c3, spp):
    terms = potential_terms(c3)
    assert [(p.sign, p.necklace) for p in terms] == [(1, ('x', 'y', 'z')), (-1, ('x', 'z', 'y'))]
    # 每个面一项
    assert len(potential_terms(spp)) == len(spp.faces)
    assert all(term.necklace[0] == min(term.necklace) for term in potential_terms(spp))


def test_ringel_form(c3, conifold):
    one = DimVector((1,))
    assert ringel_form(c3, one, one) == -2
    e0, e1 = DimVector.unit(2, 0), DimVector.unit(2, 1)
    assert ringel_form(conifold, e0, e0) == 1
    assert ringel_form(conifold, e0, e1) == -2
    with pytest.raises(ValueError):
        ringel_form(conifold, one, one)


@pytest.mark.parametrize("name, vertices, arrows, faces", [
    ('c3', 1, 3, 2),
    ('conifold', 2, 4, 2),
    ('spp', 3, 7, 4),
    ('dp3', 6, 12, 6),
])
def test_builtins_are_valid(name, vertices, arrows, faces):
    t = builtin_tiling(name)
    assert (t.vertex_count, len(t.arrows), len(t.faces)) == (vertices, arrows, faces)
    assert validate_tiling(t).ok


def test_c3_zn_family():
    t = builtin_tiling('c3-zn', 3)
    assert t.vertex_count == 3
    assert len(t.arrows) == 9
    assert validate_tiling(t).ok
    with pytest.raises(TilingError, match="n >= 2"):
        builtin_tiling('c3-zn', 1)
    with pytest.raises(TilingError, match="requires a parameter"):
        builtin_tiling('c3-zn')


def test_catalog_rejects_unknown_and_extra_parameter():
    with pytest.raises(TilingError, match="unknown builtin"):
        builtin_tiling('nope')
    with pytest.raises(TilingError, match="takes no parameter"):
        builtin_tiling('c3', 2)
    assert [info.name for info in list_builtins()] == ['c3', 'conifold', 'c3-zn', 'spp', 'dp3']


def test_to_text_parses_back(dp3):
    again = parse_tiling(dp3.to_text(), name=dp3.name)
    assert again.arrows == dp3.arrows
    assert again.faces == dp3.faces


@pytest.mark.parametrize("name", ['conifold', 'spp', 'dp3'])
def test_corrupted_face_is_rejected(name):
    t = builtin_tiling(name)
    face = t.faces[0]
    broken = face.cycle[1:2] + face.cycle[:1] + face.cycle[2:]
    text = t.to_text().replace(' '.join(face.cycle), ' '.join(broken), 1)
    report = validate_tiling(parse_tiling(text, name=name))
    assert not report.ok
    assert "face cycle composes" in {v.invariant for v in report.violations}
