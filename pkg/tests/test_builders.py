import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zeromodes.builders import (
    LatticeParseError,
    TorusWrapping,
    WrappingError,
    build_goldberg_fullerene,
    build_honeycomb_torus,
    build_octahedral_graphenoid,
    format_lattice,
    hermite_rows,
    load_lattice,
    parse_lattice,
    save_lattice,
)
from zeromodes.fixtures import TORUS_WRAPPINGS, load_fixture
from zeromodes.lattice import (
    Bipartition,
    InvalidLatticeError,
    bipartition,
    defect_census,
    euler_characteristic,
    genus_of,
    validate,
)
from zeromodes.spectral import assemble_hamiltonian, full_spectrum

GOLDBERG_UP_TO_T25 = [(m, n) for m in range(1, 6) for n in range(0, m + 1) if m * m + m * n + n * n <= 25]


class TestGoldberg:
    @pytest.mark.parametrize("m, n, V, census", [
        (1, 0, 20, {5: 12}),
        (1, 1, 60, {5: 12, 6: 20}),
        (2, 0, 80, {5: 12, 6: 30}),
    ])
    def test_small(self, m, n, V, census):
        lat = build_goldberg_fullerene(m, n)
        assert lat.V == V
        assert defect_census(lat) == census

    @pytest.mark.parametrize("m, n", GOLDBERG_UP_TO_T25)
    def test_counts(self, m, n):
        t = m * m + m * n + n * n
        lat = build_goldberg_fullerene(m, n)
        assert validate(lat).ok
        assert (lat.V, lat.E, lat.F) == (20 * t, 30 * t, 10 * t + 2)
        assert euler_characteristic(lat) == 2
        census = defect_census(lat)
        assert census[5] == 12
        assert census[6] == 10 * (t - 1)

    def test_chiral_pair_have_same_spectrum(self):
        # GP(2,1) and GP(1,2) are mirror images
        a = full_spectrum(assemble_hamiltonian(build_goldberg_fullerene(2, 1))).eigenvalues
        b = full_spectrum(assemble_hamiltonian(build_goldberg_fullerene(1, 2))).eigenvalues
        np.testing.assert_allclose(a, b, atol=1e-10)

    def test_rejects_zero(self):
        with pytest.raises(ValueError, match="invalid Goldberg parameters"):
            build_goldberg_fullerene(0, 0)


class TestTorus:
    def test_4x4(self):
        lat = build_honeycomb_torus(TorusWrapping((4, 0), (0, 4)))
        assert (lat.V, lat.E, lat.F) == (32, 48, 16)
        assert euler_characteristic(lat) == 0

    def test_3x3_bipartite(self):
        bp = bipartition(build_honeycomb_torus(((3, 0), (0, 3))))
        assert len(bp.part_a) == len(bp.part_b) == 9
        assert bp.part_a == frozenset(range(0, 18, 2))

    def test_1x1_rejected(self):
        with pytest.raises(WrappingError, match="repeated bonds"):
            build_honeycomb_torus(((1, 0), (0, 1)))

    def test_zero_determinant(self):
        with pytest.raises(WrappingError, match="zero determinant"):
            TorusWrapping((2, 1), (4, 2))

    @settings(max_examples=60, deadline=None)
    @given(st.integers(-6, 6), st.integers(-6, 6), st.integers(-6, 6), st.integers(-6, 6))
    def test_any_wrapping(self, ax, ay, bx, by):
        det = ax * by - ay * bx
        if det == 0:
            with pytest.raises(WrappingError):
                TorusWrapping((ax, ay), (bx, by))
            return
        w = TorusWrapping((ax, ay), (bx, by))
        try:
            lat = build_honeycomb_torus(w)
        except WrappingError:
            return
        assert validate(lat).ok
        assert lat.V == 2 * abs(det) and lat.F == abs(det)
        assert set(defect_census(lat)) == {6}
        assert genus_of(lat) == 1

    @settings(max_examples=100)
    @given(st.integers(-9, 9), st.integers(-9, 9), st.integers(-9, 9), st.integers(-9, 9),
           st.integers(-30, 30), st.integers(-30, 30))
    def test_hermite_reduction(self, ax, ay, bx, by, x, y):
        if ax * by - ay * bx == 0:
            return
        w = TorusWrapping((ax, ay), (bx, by))
        reduce, p, s = w.reducer()
        assert p * s == w.cells
        # shifting by a period never changes the cell
        assert reduce(x, y) == reduce(x + ax, y + ay) == reduce(x - bx, y - by)
        assert 0 <= reduce(x, y) < w.cells

    def test_hermite_rows_example(self):
        assert hermite_rows((4, 1), (-1, 3)) == (1, 10, 13)

    def test_fixture_wrappings_valid(self):
        for w in TORUS_WRAPPINGS.values():
            assert validate(build_honeycomb_torus(w)).ok


class TestOctahedral:
    def test_cube(self):
        lat = build_octahedral_graphenoid(1)
        assert lat.V == 8
        assert defect_census(lat) == {4: 6}

    def test_f2(self):
        lat = build_octahedral_graphenoid(2)
        assert lat.V == 32
        # 3V = 2E and V - E + F = 2 force F = 18: six squares and twelve hexagons
        assert defect_census(lat) == {4: 6, 6: 12}

    @pytest.mark.parametrize("f", [1, 2, 3, 4, 5])
    def test_family(self, f):
        lat = build_octahedral_graphenoid(f)
        assert validate(lat).ok
        assert lat.V == 8 * f * f
        assert defect_census(lat)[4] == 6
        assert set(defect_census(lat)) <= {4, 6}
        bp = bipartition(lat)
        assert isinstance(bp, Bipartition)
        assert len(bp.part_a) == len(bp.part_b)


class TestFileFormat:
    def test_round_trip_c60(self, tmp_path):
        lat = build_goldberg_fullerene(1, 1)
        path = tmp_path / "c60.lat"
        save_lattice(lat, path)
        back = load_lattice(path)
        assert back.is_equivalent(lat)
        assert defect_census(back) == defect_census(lat)
        assert euler_characteristic(back) == euler_characteristic(lat)
        np.testing.assert_array_equal(full_spectrum(assemble_hamiltonian(back)).eigenvalues,
                                      full_spectrum(assemble_hamiltonian(lat)).eigenvalues)
        assert back.labels["name"] == "goldberg(1,1)"

    def test_format_layout(self):
        text = format_lattice(build_octahedral_graphenoid(1))
        lines = text.splitlines()
        assert text.endswith("\n")
        assert "lattice v1 8" in lines
        assert sum(1 for ln in lines if ln.startswith("f ")) == 6

    def test_out_of_range(self):
        with pytest.raises(LatticeParseError, match="vertex index out of range") as exc:
            parse_lattice("lattice v1 3\nf 0 1 3\n")
        assert exc.value.line == 2

    def test_bad_header(self):
        with pytest.raises(LatticeParseError) as exc:
            parse_lattice("# comment\nlatice v1 3\n")
        assert exc.value.line == 2

    def test_trailing_newline_required(self):
        with pytest.raises(LatticeParseError, match="trailing newline"):
            parse_lattice("lattice v1 0")

    def test_multiple_spaces(self):
        lat = parse_lattice("lattice   v1  8\n" + "".join(
            "f  " + "   ".join(map(str, f)) + "\n" for f in build_octahedral_graphenoid(1).faces))
        assert lat.V == 8

    def test_semantic_violation_carries_report(self):
        with pytest.raises(InvalidLatticeError) as exc:
            parse_lattice("lattice v1 3\nf 0 1 2\n")
        assert "edge-faces" in exc.value.report.rules()

    def test_unchecked_load(self, tmp_path):
        p = tmp_path / "broken.lat"
        p.write_text("lattice v1 3\nf 0 1 2\n")
        lat = load_lattice(p, check=False)
        assert not lat.is_valid
        assert lat.name == "broken"

    def test_no_partial_file_on_error(self, tmp_path):
        from zeromodes.lattice import Lattice

        with pytest.raises(InvalidLatticeError):
            save_lattice(Lattice(3, [(0, 1, 2)]), tmp_path / "x.lat")
        assert list(tmp_path.iterdir()) == []


class TestHighGenusFixtures:
    @pytest.mark.parametrize("name, g", [("genus2", 2), ("genus3", 3)])
    def test_fixture(self, name, g):
        lat = load_fixture(name)
        assert validate(lat).ok
        assert genus_of(lat) == g
        assert euler_characteristic(lat) == 2 - 2 * g
        census = defect_census(lat)
        assert set(census) == {6, 7}
        assert census[7] - census[5] == 12 * (g - 1)
