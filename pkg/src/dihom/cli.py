"""命令行入口：解析形状 / 范畴 / 模型输入，运行校验套件并输出 JSON 报告。

使用说明：
- 报告写到 stdout，或以 `--json-out FILE` 写入文件；日志只写 stderr；
- 退出码：0 判定通过，1 判定失败，2 输入或领域错误（`DihomError`）；
- MODEL 参数为 StratSet JSON 文件路径或 `builtin:NAME`
  （point、s1、figure-eight、nerve-chain1、nerve-bz2、s2）。
"""

import sys
from typing import Callable

import click

from dihom.checks.disks import DisksCheck
from dihom.checks.dold_thom import DoldThomCheck, SymmetricPowerCheck
from dihom.checks.hom import HomCheck, NerveCheck
from dihom.checks.hurewicz import Ho1Check, HurewiczCheck
from dihom.checks.linear import LinearModelCheck
from dihom.checks.sphere import SphereCheck
from dihom.checks.wedge import WedgeCheck
from dihom.common.base_check import BaseCheck
from dihom.common.errors import DihomError
from dihom.common.utils import get_logger
from dihom.core.monoid import parse_coefficients
from dihom.core.omegacat import category_from_json
from dihom.core.pasting import PastingTree
from dihom.core.strat import load_model

logger = get_logger(__name__)

EXIT_PASS, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


def _report_options(fn: Callable) -> Callable:
    fn = click.option("--json-out", type=click.Path(dir_okay=False), default=None,
                      help="Write the report to FILE instead of stdout.")(fn)
    fn = click.option("--summary", is_flag=True, help="Print a case table to stderr.")(fn)
    return fn


def _bound_options(fn: Callable) -> Callable:
    fn = click.option("--max-dim", default=2, show_default=True, type=click.IntRange(min=0),
                      help="Largest shape height in the catalog.")(fn)
    fn = click.option("--max-edges", default=4, show_default=True, type=click.IntRange(min=0),
                      help="Largest edge count in the catalog.")(fn)
    return fn


def _run(build: Callable[[], BaseCheck], json_out: str | None, summary: bool) -> None:
    try:
        check = build()
        report = check.execute()
    except (DihomError, ValueError) as e:
        logger.error(f"Check aborted: {e}")
        click.echo(f"Error: {e}", err=True)
        sys.exit(EXIT_ERROR)
    text = check.format_report(report)
    if json_out:
        with open(json_out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
        click.echo(f"{report.check}: {report.verdict} ({len(report.cases)} cases) -> {json_out}")
    else:
        click.echo(text)
    if summary:
        click.echo(report.to_frame().to_string(index=False), err=True)
    sys.exit(EXIT_PASS if report.passed else EXIT_FAIL)


@click.group()
def cli():
    """Exact combinatorics of categorified homology."""


@cli.command()
@click.argument("tree")
@click.argument("category")
@_report_options
def hom(tree, category, json_out, summary):
    """Enumerate functors TREE -> CATEGORY (tree text like '[[],[]]', category JSON)."""
    _run(lambda: HomCheck(PastingTree.from_text(tree), category_from_json(category)), json_out, summary)


@cli.command()
@click.argument("category")
@_bound_options
@_report_options
def nerve(category, max_dim, max_edges, json_out, summary):
    """Sizes of the nerve of CATEGORY on the bounded shape catalog."""
    _run(lambda: NerveCheck(category_from_json(category), max_dim, max_edges), json_out, summary)


@cli.command("check-wedge")
@click.argument("k", type=click.IntRange(min=1))
@click.argument("n", type=click.IntRange(min=1))
@_bound_options
@_report_options
def check_wedge(k, n, max_dim, max_edges, json_out, summary):
    """Wedge of K-disks (N copies) against orbits of N-tuples of cells."""
    _run(lambda: WedgeCheck(k, n, max_dim, max_edges), json_out, summary)


@cli.command("check-disks")
@click.argument("k", type=click.IntRange(min=1))
@click.argument("n_max", type=click.IntRange(min=0))
@_bound_options
@_report_options
def check_disks(k, n_max, max_dim, max_edges, json_out, summary):
    """Symmetric powers of the nerve of D^K up to N_MAX against wedges."""
    _run(lambda: DisksCheck(k, n_max, max_dim, max_edges), json_out, summary)


@cli.command("check-dold-thom")
@click.argument("model")
@click.argument("m", type=click.IntRange(min=0))
@click.argument("n", type=click.IntRange(min=1))
@_report_options
def check_dold_thom(model, m, n, json_out, summary):
    """SP tower of MODEL at degree M, stages up to N, against the reduced N-linear model."""
    _run(lambda: DoldThomCheck(load_model(model), m, n), json_out, summary)


@cli.command("check-sphere")
@click.option("--coeff", default="N", show_default=True, help="N | Zm | trivial | table:FILE | freeC:g | freeA:g")
@click.option("--n", "n", default=1, show_default=True, type=click.IntRange(min=1), help="Sphere dimension.")
@click.option("--bound", default=6, show_default=True, type=click.IntRange(min=1))
@_report_options
def check_sphere(coeff, n, bound, json_out, summary):
    """Categorical M-homology of the N-sphere against B^N(M)."""
    _run(lambda: SphereCheck(parse_coefficients(coeff), n, bound), json_out, summary)


@cli.command("check-hurewicz")
@click.argument("g", type=click.IntRange(min=1))
@click.option("--coeff", default="N", show_default=True, help="N | Zm")
@click.option("--bound", default=4, show_default=True, type=click.IntRange(min=1))
@_report_options
def check_hurewicz(g, coeff, bound, json_out, summary):
    """Abelianization of the free monoid on G letters against ho1 of a wedge of G circles."""
    _run(lambda: HurewiczCheck(g, parse_coefficients(coeff), bound), json_out, summary)


@cli.command()
@click.argument("model")
@click.option("--degree", default=1, show_default=True, type=click.IntRange(min=0))
@click.option("--stage", default=3, show_default=True, type=click.IntRange(min=0))
@_report_options
def sp(model, degree, stage, json_out, summary):
    """Strict symmetric powers of MODEL in one degree."""
    _run(lambda: SymmetricPowerCheck(load_model(model), degree, stage), json_out, summary)


@cli.command()
@click.argument("model")
@click.option("--coeff", default="N", show_default=True)
@click.option("--degree", default=1, show_default=True, type=click.IntRange(min=0))
@click.option("--bound", default=3, show_default=True, type=click.IntRange(min=1))
@click.option("--reduced", is_flag=True, help="Drop the basepoint column.")
@_report_options
def nmod(model, coeff, degree, bound, reduced, json_out, summary):
    """Carrier of the M-linear model of MODEL in one degree."""
    _run(lambda: LinearModelCheck(load_model(model), parse_coefficients(coeff), degree, bound, reduced),
         json_out, summary)


@cli.command("ho1")
@click.argument("model")
@click.option("--coeff", default="N", show_default=True)
@click.option("--bound", default=6, show_default=True, type=click.IntRange(min=1))
@click.option("--word-bound", default=6, show_default=True, type=click.IntRange(min=1))
@_report_options
def ho1_command(model, coeff, bound, word_bound, json_out, summary):
    """Endomorphism table of ho1 of the reduced M-linear model of MODEL."""
    _run(lambda: Ho1Check(load_model(model), parse_coefficients(coeff), bound, word_bound), json_out, summary)
