import json
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from bipoly import BiPoly
from structures import Multigraph, RankedSet, require_table_size

Loaded = Union[Multigraph, RankedSet, BiPoly]


class InputFormatError(ValueError):
    """Malformed graph, rank-table or polynomial input; the message carries the location."""
    pass


# --- Graph text format ---

def parse_graph(text: str) -> Multigraph:
    """
    Parse the graph text format.

    Examples:
    - "p 3 3\\n0 1\\n1 2\\n2 0" -> triangle
    - "p 1 1\\n0 0" -> one loop
    - "# comment\\np 1 0" -> single isolated vertex
    """
    header: Optional[Tuple[int, int]] = None
    edges: List[Tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith('#'):
            continue
        parts = line.split()
        if header is None:
            if len(parts) != 3 or parts[0] != 'p':
                raise InputFormatError(f"line {lineno}: expected header 'p N M', got '{line}'")
            try:
                header = (int(parts[1]), int(parts[2]))
            except ValueError:
                raise InputFormatError(f"line {lineno}: header counts must be integers, got '{line}'")
            if header[0] < 0 or header[1] < 0:
                raise InputFormatError(f"line {lineno}: header counts must be nonnegative")
            continue
        if len(parts) != 2:
            raise InputFormatError(f"line {lineno}: expected 'u v', got '{line}'")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise InputFormatError(f"line {lineno}: endpoints must be integers, got '{line}'")
        if not (0 <= u < header[0] and 0 <= v < header[0]):
            raise InputFormatError(f"line {lineno}: endpoint out of range 0..{header[0] - 1} in '{line}'")
        edges.append((u, v))
    if header is None:
        raise InputFormatError("line 1: missing header 'p N M'")
    if len(edges) != header[1]:
        raise InputFormatError(f"header announces {header[1]} edges but {len(edges)} were given")
    return Multigraph(header[0], tuple(edges))


def format_graph(g: Multigraph) -> str:
    lines = [f"p {g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return '\n'.join(lines) + '\n'


# --- Rank-table JSON ---

def parse_rank_table(data: Dict[str, Any]) -> RankedSet:
    """Build a RankedSet from {"m", "r", "ranks"}; every one of the 2^m keys must be present."""
    try:
        m, r, ranks = int(data['m']), int(data['r']), data['ranks']
    except (KeyError, TypeError, ValueError) as e:
        raise InputFormatError(f"rank table needs integer 'm', 'r' and a 'ranks' object: {e}")
    if m < 0:
        raise InputFormatError(f"rank table: m = {m} is negative")
    require_table_size(m)
    if not isinstance(ranks, dict):
        raise InputFormatError("rank table: 'ranks' must be an object keyed by subset bitmask")
    table = []
    for mask in range(1 << m):
        if str(mask) not in ranks:
            raise InputFormatError(f"rank table: missing subset {mask}")
        try:
            table.append(int(ranks[str(mask)]))
        except (TypeError, ValueError):
            raise InputFormatError(f"rank table: subset {mask} has non-integer rank {ranks[str(mask)]!r}")
    if len(ranks) != 1 << m:
        extra = sorted(set(ranks) - {str(mask) for mask in range(1 << m)})
        raise InputFormatError(f"rank table: unexpected subset keys {extra[:5]}")
    return RankedSet(m, r, tuple(table))


def format_rank_table(rs: RankedSet) -> Dict[str, Any]:
    return {'m': rs.m, 'r': rs.r_total, 'ranks': {str(mask): rank for mask, rank in enumerate(rs.ranks)}}


# --- Polynomial JSON ---

def bipoly_to_json(p: BiPoly, m: Optional[int] = None, r: Optional[int] = None) -> Dict[str, Any]:
    data: Dict[str, Any] = {'terms': [{'i': i, 'j': j, 'c': str(c)} for (i, j), c in p.items()]}
    if m is not None:
        data['m'] = m
    if r is not None:
        data['r'] = r
    return data


def bipoly_from_json(data: Dict[str, Any]) -> BiPoly:
    terms: Dict[Tuple[int, int], int] = {}
    try:
        for position, term in enumerate(data['terms']):
            key = (int(term['i']), int(term['j']))
            if key in terms:
                raise InputFormatError(f"polynomial: duplicate term t[{key[0]}][{key[1]}] at position {position}")
            terms[key] = int(str(term['c']))
    except (KeyError, TypeError, ValueError) as e:
        if isinstance(e, InputFormatError):
            raise
        raise InputFormatError(f"polynomial: malformed term list: {e}")
    try:
        return BiPoly(terms)
    except ValueError as e:
        raise InputFormatError(f"polynomial: {e}")


def format_terms_text(p: BiPoly) -> str:
    """"t[0][1]=1, t[1][0]=1, t[2][0]=1" for x^2 + x + y; "0" for the zero polynomial."""
    if p.is_zero():
        return '0'
    return ', '.join(f"t[{i}][{j}]={c}" for (i, j), c in p.items())


def _latex_monomial(i: int, j: int) -> str:
    parts = []
    for var, exp in (('x', i), ('y', j)):
        if exp == 1:
            parts.append(var)
        elif exp > 1:
            parts.append(f"{var}^{{{exp}}}")
    return ' '.join(parts)


def format_latex(p: BiPoly) -> str:
    """Sum of monomials, highest (i, j) first: x^{2} + x + y."""
    if p.is_zero():
        return '0'
    pieces = []
    for (i, j), c in sorted(p.items(), reverse=True):
        monomial = _latex_monomial(i, j)
        magnitude = abs(c)
        body = monomial if magnitude == 1 and monomial else f"{magnitude} {monomial}".strip()
        if not pieces:
            pieces.append(f"-{body}" if c < 0 else body)
        else:
            pieces.append(f"- {body}" if c < 0 else f"+ {body}")
    return ' '.join(pieces)


# --- Files ---

def load_input(path: Union[str, Path]) -> Tuple[str, Loaded, Dict[str, Any]]:
    """
    Read an input file and detect its kind.

    Returns:
        (kind, value, meta) with kind in {"graph", "ranked", "poly"}; meta holds
        m and r for polynomial files.
    """
    try:
        text = Path(path).read_text(encoding='utf-8')
    except OSError as e:
        raise InputFormatError(f"cannot read {path}: {e}")
    stripped = text.lstrip()
    if stripped.startswith('{'):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise InputFormatError(f"line {e.lineno}: invalid JSON: {e.msg}")
        if 'terms' in data:
            try:
                meta = {'m': int(data['m']), 'r': int(data['r'])}
            except (KeyError, TypeError, ValueError):
                raise InputFormatError("polynomial file needs integer 'm' and 'r' next to 'terms'")
            return 'poly', bipoly_from_json(data), meta
        if 'ranks' in data:
            return 'ranked', parse_rank_table(data), {}
        raise InputFormatError("JSON input is neither a rank table nor a polynomial")
    return 'graph', parse_graph(text), {}


def dumps(data: Dict[str, Any]) -> str:
    return json.dumps(data, indent=2)
