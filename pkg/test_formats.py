import json

import pytest

import config
from bipoly import ZERO, X, Y, BiPoly
from structures import GroundSetTooLargeError, Multigraph, uniform_matroid
from utils.formats import (
    InputFormatError,
    bipoly_from_json,
    bipoly_to_json,
    format_graph,
    format_latex,
    format_rank_table,
    format_terms_text,
    load_input,
    parse_graph,
    parse_rank_table,
)

K3 = X ** 2 + X + Y


class TestGraphText:
    def test_parse(self):
        g = parse_graph("# triangle\np 3 3\n0 1\n1 2\n\n2 0\n")
        assert g == Multigraph(3, ((0, 1), (1, 2), (2, 0)))

    def test_isolated_vertex(self):
        assert parse_graph("p 1 0") == Multigraph(1)

    def test_format_then_parse(self):
        g = Multigraph(2, ((0, 1), (0, 1), (1, 1)))
        assert format_graph(g) == "p 2 3\n0 1\n0 1\n1 1\n"
        assert parse_graph(format_graph(g)) == g

    @pytest.mark.parametrize('text, fragment', [
        ("0 1\n", "line 1: expected header"),
        ("p 2 1\n0 x\n", "line 2: endpoints must be integers"),
        ("p 2 1\n0 2\n", "line 2: endpoint out of range"),
        ("p 2 1\n0 1 1\n", "line 2: expected 'u v'"),
        ("p 2 2\n0 1\n", "announces 2 edges but 1"),
        ("", "missing header"),
    ])
    def test_errors_carry_location(self, text, fragment):
        with pytest.raises(InputFormatError, match=fragment):
            parse_graph(text)


class TestRankTable:
    def test_parse(self):
        rs = parse_rank_table({'m': 2, 'r': 1, 'ranks': {'0': 0, '1': 1, '2': 1, '3': 1}})
        assert rs == uniform_matroid(1, 2)

    def test_format(self):
        assert format_rank_table(uniform_matroid(1, 1)) == {'m': 1, 'r': 1, 'ranks': {'0': 0, '1': 1}}

    def test_missing_subset(self):
        with pytest.raises(InputFormatError, match='missing subset 2'):
            parse_rank_table({'m': 2, 'r': 1, 'ranks': {'0': 0, '1': 1, '3': 1}})

    def test_unexpected_key(self):
        with pytest.raises(InputFormatError, match='unexpected subset keys'):
            parse_rank_table({'m': 1, 'r': 1, 'ranks': {'0': 0, '1': 1, '5': 1}})

    def test_missing_fields(self):
        with pytest.raises(InputFormatError):
            parse_rank_table({'m': 1})

    def test_oversized_table_refused_before_reading_ranks(self, monkeypatch):
        with pytest.raises(GroundSetTooLargeError, match='30 > 24'):
            parse_rank_table({'m': 30, 'r': 1, 'ranks': {}})
        monkeypatch.setattr(config, 'SUBSET_TABLE_LIMIT', 1)
        with pytest.raises(GroundSetTooLargeError):
            parse_rank_table({'m': 2, 'r': 1, 'ranks': {'0': 0, '1': 1, '2': 1, '3': 1}})


class TestPolynomialJson:
    def test_terms_are_sorted_strings(self):
        data = bipoly_to_json(K3, 3, 2)
        assert data == {
            'terms': [{'i': 0, 'j': 1, 'c': '1'}, {'i': 1, 'j': 0, 'c': '1'}, {'i': 2, 'j': 0, 'c': '1'}],
            'm': 3,
            'r': 2,
        }

    def test_big_coefficients_survive(self):
        p = BiPoly.constant(3 ** 80)
        assert bipoly_from_json(json.loads(json.dumps(bipoly_to_json(p)))) == p

    def test_duplicate_terms_rejected(self):
        with pytest.raises(InputFormatError, match='duplicate term'):
            bipoly_from_json({'terms': [{'i': 0, 'j': 1, 'c': '1'}, {'i': 0, 'j': 1, 'c': '2'}]})

    def test_malformed_terms_rejected(self):
        with pytest.raises(InputFormatError):
            bipoly_from_json({'terms': [{'i': 0, 'c': '1'}]})
        with pytest.raises(InputFormatError):
            bipoly_from_json({'terms': [{'i': -1, 'j': 0, 'c': '1'}]})


class TestRendering:
    def test_terms_text(self):
        assert format_terms_text(K3) == 't[0][1]=1, t[1][0]=1, t[2][0]=1'
        assert format_terms_text(ZERO) == '0'

    def test_latex(self):
        assert format_latex(K3) == 'x^{2} + x + y'
        assert format_latex(BiPoly({(1, 1): -2, (0, 0): 3})) == '-2 x y + 3'
        assert format_latex(ZERO) == '0'


class TestLoadInput:
    def test_graph(self, tmp_path):
        path = tmp_path / 'k2.txt'
        path.write_text("p 2 1\n0 1\n")
        kind, value, meta = load_input(path)
        assert kind == 'graph'
        assert value == Multigraph(2, ((0, 1),))
        assert meta == {}

    def test_rank_table(self, tmp_path):
        path = tmp_path / 'u12.json'
        path.write_text(json.dumps(format_rank_table(uniform_matroid(1, 2))))
        kind, value, _ = load_input(path)
        assert kind == 'ranked'
        assert value == uniform_matroid(1, 2)

    def test_polynomial(self, tmp_path):
        path = tmp_path / 'k3.json'
        path.write_text(json.dumps(bipoly_to_json(K3, 3, 2)))
        kind, value, meta = load_input(path)
        assert kind == 'poly'
        assert value == K3
        assert meta == {'m': 3, 'r': 2}

    def test_polynomial_needs_m_and_r(self, tmp_path):
        path = tmp_path / 'bare.json'
        path.write_text(json.dumps(bipoly_to_json(K3)))
        with pytest.raises(InputFormatError, match="'m' and 'r'"):
            load_input(path)

    def test_invalid_json(self, tmp_path):
        path = tmp_path / 'broken.json'
        path.write_text('{"m": 1,\n "r": }')
        with pytest.raises(InputFormatError, match='line 2: invalid JSON'):
            load_input(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(InputFormatError, match='cannot read'):
            load_input(tmp_path / 'nope.txt')
