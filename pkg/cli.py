#!/usr/bin/env python3
"""
Tutte polynomial command line.

    python cli.py tutte <file> [--engine E] [--format F]
    python cli.py verify <file> [--hmax H] [--engine E] [--format F]
    python cli.py gen <family> [key=value ...] [--seed S] [-o file]

Exit codes: 0 all checks pass, 1 a verified identity fails, 2 input error,
3 unexpected internal error.
"""

import argparse
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import config
from bipoly import BiPoly, evaluate
from engines import ENGINES, spanning_tree_count, tutte_polynomial
from identities import IdentityReport, VerificationSummary, verify_all
from structures import (
    complete_graph,
    cycle_graph,
    graphic_rank,
    random_multigraph,
    random_ranked_set,
    require_valid,
    theta_graph,
    uniform_matroid,
)
from utils.formats import (
    Loaded,
    bipoly_to_json,
    dumps,
    format_graph,
    format_latex,
    format_rank_table,
    format_terms_text,
    load_input,
)
from utils.logger import logger, set_level

EXIT_OK = 0
EXIT_IDENTITY_FAILURE = 1
EXIT_INPUT_ERROR = 2
EXIT_INTERNAL_ERROR = 3

OUTPUT_FORMATS = ('json', 'text', 'latex')


@dataclass
class RunConfig:
    subcommand: str
    input_path: Optional[str] = None
    engine: Optional[str] = None
    output_format: str = 'json'
    h_max: Optional[int] = None
    seed: int = 0
    family: Optional[str] = None
    params: Dict[str, str] = field(default_factory=dict)
    output_path: Optional[str] = None


def _failure(exit_code: int, error: str, output: str = '') -> Dict[str, Any]:
    return {'success': False, 'exit_code': exit_code, 'output': output, 'error': error}


def _success(output: str) -> Dict[str, Any]:
    return {'success': True, 'exit_code': EXIT_OK, 'output': output, 'error': None}


def _too_large(path: Optional[str], e: BaseException) -> Dict[str, Any]:
    logger.error(f"Input {path} exceeds engine limits: {type(e).__name__}")
    return _failure(EXIT_INPUT_ERROR, f"input exceeds engine limits ({type(e).__name__})")


def _compute(kind: str, value: Loaded, meta: Dict[str, Any],
             engine: Optional[str]) -> Tuple[BiPoly, int, int]:
    """Tutte polynomial with its (m, r) for any supported input kind."""
    if kind == 'poly':
        m, r = meta['m'], meta['r']
        if r < 0 or r > m:
            raise ValueError(f"polynomial file: need 0 <= r <= m, got m={m}, r={r}")
        return value, m, r
    if kind == 'ranked':
        if engine not in (None, 'subset'):
            raise ValueError(f"engine '{engine}' requires a graph input")
        rs = require_valid(value)
        return tutte_polynomial(rs, 'subset'), rs.m, rs.r_total
    return tutte_polynomial(value, engine), value.m, graphic_rank(value)


def _render_poly(poly: BiPoly, m: int, r: int, output_format: str) -> str:
    if output_format == 'text':
        return format_terms_text(poly)
    if output_format == 'latex':
        return format_latex(poly)
    return dumps(bipoly_to_json(poly, m, r))


def cmd_tutte(run: RunConfig) -> Dict[str, Any]:
    """Compute and print the Tutte polynomial of a graph, rank table or polynomial file."""
    logger.info(f"🔄 tutte {run.input_path} (engine={run.engine or 'default'})")
    try:
        kind, value, meta = load_input(run.input_path)
        poly, m, r = _compute(kind, value, meta, run.engine)
    except ValueError as e:
        logger.error(f"Input error for {run.input_path}: {e}")
        return _failure(EXIT_INPUT_ERROR, str(e))
    except (RecursionError, MemoryError) as e:
        return _too_large(run.input_path, e)
    return _success(_render_poly(poly, m, r, run.output_format))


def _report_json(report: IdentityReport) -> Dict[str, Any]:
    return {
        'overall': report.overall,
        'entries': [
            {report.index_name: e.index, 'lhs': str(e.lhs), 'rhs': str(e.rhs), 'pass': e.passed}
            for e in report.entries
        ],
    }


def _summary_json(summary: VerificationSummary, overall: bool,
                  forests: Optional[Dict[str, Any]]) -> Dict[str, Any]:
    data = {'overall': overall, 'm': summary.m, 'r': summary.r}
    data['entries'] = _report_json(summary.brylawski)['entries']
    data['hyperbola'] = summary.hyperbola
    data['coefficient_identity'] = _report_json(summary.coefficients)
    data['proof_chain'] = _report_json(summary.proof_chain)
    data['rewriting'] = _report_json(summary.rewriting)
    data['weight_collapse'] = summary.weight_collapse
    data['classical'] = summary.classical
    if forests is not None:
        data['spanning_forests'] = forests
    return data


def _summary_text(summary: VerificationSummary, overall: bool, witness: Optional[str]) -> str:
    lines = [f"m={summary.m} r={summary.r}"]
    for e in summary.brylawski.entries:
        lines.append(f"h={e.index} lhs={e.lhs} rhs={e.rhs} {'ok' if e.passed else 'FAIL'}")
    lines.append(f"hyperbola {'ok' if summary.hyperbola else 'FAIL'}")
    lines.append(f"coefficient identity {'ok' if summary.coefficients.overall else 'FAIL'}")
    lines.append(f"proof chain {'ok' if summary.proof_chain.overall and summary.rewriting.overall else 'FAIL'}")
    for name, holds in summary.classical.items():
        lines.append(f"{name} {'ok' if holds else 'FAIL'}")
    lines.append('PASS' if overall else f"FAIL: {witness}")
    return '\n'.join(lines)


def cmd_verify(run: RunConfig) -> Dict[str, Any]:
    """Verify every identity on one input; exit 1 on the first failing witness."""
    logger.info(f"🔄 verify {run.input_path} (hmax={run.h_max})")
    try:
        kind, value, meta = load_input(run.input_path)
        poly, m, r = _compute(kind, value, meta, run.engine)
        if run.h_max is not None and run.h_max < 0:
            raise ValueError(f"--hmax must be nonnegative, got {run.h_max}")
    except ValueError as e:
        logger.error(f"Input error for {run.input_path}: {e}")
        return _failure(EXIT_INPUT_ERROR, str(e))
    except (RecursionError, MemoryError) as e:
        return _too_large(run.input_path, e)

    summary = verify_all(poly, m, r, run.h_max)
    overall = summary.overall
    witness = summary.first_failure()

    forests = None
    if kind == 'graph':
        expected = spanning_tree_count(value)
        observed = evaluate(poly, 1, 1)
        forests = {'tutte_at_1_1': str(observed), 'matrix_tree': str(expected), 'pass': observed == expected}
        if observed != expected:
            overall = False
            witness = witness or f"T(1,1) = {observed} but the matrix-tree count is {expected}"

    if run.output_format == 'text':
        output = _summary_text(summary, overall, witness)
    else:
        output = dumps(_summary_json(summary, overall, forests))

    if not overall:
        logger.error(f"Identity failure in {run.input_path}: {witness}")
        return _failure(EXIT_IDENTITY_FAILURE, witness, output)
    logger.info(f"✅ All identities verified for {run.input_path}")
    return _success(output)


# --- Generators ---

def _int_params(family: str, given: Dict[str, str]) -> Dict[str, int]:
    families = config.load_families()
    declared = families[family]['params']
    unknown = sorted(set(given) - set(declared))
    if unknown:
        raise ValueError(f"family '{family}' has no parameter(s) {unknown}; expected {sorted(declared)}")
    params = {}
    for name, default in declared.items():
        if name in given:
            try:
                params[name] = int(given[name])
            except ValueError:
                raise ValueError(f"parameter {name} must be an integer, got '{given[name]}'")
        elif default is None:
            raise ValueError(f"family '{family}' needs parameter {name}")
        else:
            params[name] = int(default)
    return params


def generate(family: str, params: Dict[str, str], seed: int = 0) -> str:
    """File contents (rank-table JSON or graph text) for one generator family."""
    families = config.load_families()
    if family not in families:
        raise ValueError(f"unknown family '{family}', expected one of {sorted(families)}")
    p = _int_params(family, params)
    if family == 'uniform':
        return dumps(format_rank_table(uniform_matroid(p['r'], p['m'])))
    if family == 'random-ranked':
        return dumps(format_rank_table(random_ranked_set(p['m'], p['r'], seed)))
    if family == 'complete-graph':
        if p['n'] < 0:
            raise ValueError(f"complete graph needs n >= 0, got {p['n']}")
        return format_graph(complete_graph(p['n']))
    if family == 'cycle':
        return format_graph(cycle_graph(p['n']))
    if family == 'theta':
        return format_graph(theta_graph(p['a'], p['b'], p['c']))
    if family == 'random-multigraph':
        return format_graph(random_multigraph(p['n'], p['m'], seed, loops=bool(p['loops'])))
    raise ValueError(f"family '{family}' is registered but has no generator")


def cmd_gen(run: RunConfig) -> Dict[str, Any]:
    logger.info(f"🔄 gen {run.family} {run.params} seed={run.seed}")
    try:
        content = generate(run.family, run.params, run.seed)
    except ValueError as e:
        logger.error(f"Invalid generator request: {e}")
        return _failure(EXIT_INPUT_ERROR, str(e))
    if run.output_path:
        Path(run.output_path).write_text(content if content.endswith('\n') else content + '\n', encoding='utf-8')
        logger.info(f"✅ Wrote {run.family} to {run.output_path}")
        return _success('')
    return _success(content.rstrip('\n'))


# --- Entry point ---

def _parse_params(tokens: List[str]) -> Dict[str, str]:
    params = {}
    for token in tokens:
        key, sep, value = token.partition('=')
        if not sep or not key:
            raise ValueError(f"expected key=value, got '{token}'")
        params[key] = value
    return params


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='tutte', description='Tutte polynomials and generalized Brylawski identities')
    parser.add_argument('--log-level', default=None, help='override the configured log level')
    sub = parser.add_subparsers(dest='subcommand', required=True)

    tutte = sub.add_parser('tutte', help='compute a Tutte polynomial')
    tutte.add_argument('file')
    tutte.add_argument('--engine', choices=ENGINES)
    tutte.add_argument('--format', dest='output_format', choices=OUTPUT_FORMATS, default='json')

    verify = sub.add_parser('verify', help='verify the identities on one input')
    verify.add_argument('file')
    verify.add_argument('--hmax', dest='h_max', type=int)
    verify.add_argument('--engine', choices=ENGINES)
    verify.add_argument('--format', dest='output_format', choices=('json', 'text'), default='json')

    gen = sub.add_parser('gen', help='generate a test family')
    gen.add_argument('family')
    gen.add_argument('params', nargs='*', help='key=value parameters')
    gen.add_argument('--seed', type=int, default=0)
    gen.add_argument('-o', dest='output_path')
    return parser


def _dispatch(args: argparse.Namespace) -> Dict[str, Any]:
    if args.subcommand == 'gen':
        try:
            params = _parse_params(args.params)
        except ValueError as e:
            return _failure(EXIT_INPUT_ERROR, str(e))
        run = RunConfig('gen', seed=args.seed, family=args.family, params=params, output_path=args.output_path)
        return cmd_gen(run)
    run = RunConfig(args.subcommand, input_path=args.file, engine=args.engine,
                    output_format=args.output_format, h_max=getattr(args, 'h_max', None))
    return cmd_tutte(run) if args.subcommand == 'tutte' else cmd_verify(run)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits with 2 on usage errors, matching the input-error code
        return int(e.code or 0)
    if args.log_level:
        try:
            set_level(args.log_level)
        except ValueError as e:
            print(f"invalid --log-level: {e}", file=sys.stderr)
            return EXIT_INPUT_ERROR

    try:
        result = _dispatch(args)
    except Exception as e:
        logger.error(f"❌ Unexpected error in {args.subcommand}: {type(e).__name__}: {e}")
        print(f"internal error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INTERNAL_ERROR

    if result['output']:
        print(result['output'])
    if result['error']:
        print(result['error'], file=sys.stderr)
    return result['exit_code']


if __name__ == "__main__":
    sys.exit(main())
