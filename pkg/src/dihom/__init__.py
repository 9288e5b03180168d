"""dihom：范畴化同调的精确组合学校验库与命令行工具。"""

from dihom.cli import cli


def main():
    cli()
