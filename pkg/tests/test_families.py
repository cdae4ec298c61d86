import pytest

from rccg.errors import FileParseError, OrderTooLarge, UnknownFamily
from rccg.families import DEFAULT_SUITE, builtin_specs, parse_group_spec, parse_range
from rccg.groups import center, save_cayley, make_dihedral


@pytest.mark.parametrize(
    "spec,order,center_size",
    [
        ("dihedral:5", 10, 1),
        ("semidihedral:3", 24, 4),
        ("quaternion:4", 16, 2),
        ("alternating:4", 12, 1),
        ("symmetric:4", 24, 1),
        ("cyclic:6", 6, 6),
        ("product:dihedral:3:cyclic:2", 12, 2),
        ("product:product:cyclic:2:cyclic:2:cyclic:3", 12, 12),
    ],
)
def test_parse_specs(spec, order, center_size):
    g = parse_group_spec(spec)
    assert g.order == order and len(center(g)) == center_size


@pytest.mark.parametrize("spec", ["bogus:3", "dihedral", "dihedral:x", "dihedral:3:4", "product:cyclic:2"])
def test_bad_specs(spec):
    with pytest.raises(UnknownFamily):
        parse_group_spec(spec)


def test_cayley_paths(tmp_path):
    path = tmp_path / "d8.json"
    save_cayley(make_dihedral(4), path)
    assert parse_group_spec(str(path)).order == 8
    with pytest.raises(FileParseError):
        parse_group_spec(str(tmp_path / "missing.json"))


def test_order_cap_in_specs():
    with pytest.raises(OrderTooLarge):
        parse_group_spec("product:symmetric:5:symmetric:5")


def test_builtin_roster():
    specs = builtin_specs(64)
    assert len(specs) == len(set(specs))
    assert "dihedral:32" in specs and "dihedral:33" not in specs
    assert all(parse_group_spec(s).order <= 64 for s in specs)
    assert len(builtin_specs(16)) < len(specs)


def test_ranges():
    assert parse_range("dihedral:3-5") == ["dihedral:3", "dihedral:4", "dihedral:5"]
    assert parse_range("quaternion:4") == ["quaternion:4"]
    with pytest.raises(UnknownFamily):
        parse_range("dihedral:a-b")
    assert len(DEFAULT_SUITE) == 25
