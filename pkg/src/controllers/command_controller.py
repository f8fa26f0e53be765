"""コマンドライン操作を管理するコントローラー"""
import argparse
import io
import logging
import sys
from typing import Callable, Dict, List, Optional, Sequence

from src.models.immersion import HalfIntegralImmersion, Immersion, Thorns
from src.models.multigraph import Multigraph
from src.models.results import CoverResult
from src.models.tangle_family import EdgeTangleFamily, TangleFamily
from src.models.tree_decomposition import TreeDecomposition
from src.models.verdict import Verdict
from src.services.decomposition_service import DecompositionService
from src.services.decomposition_validator import DecompositionValidator
from src.services.experiment_runner import ExperimentRunner
from src.services.graph_generator import GraphGenerator
from src.services.graph_serializer import GraphSerializer
from src.services.graph_transformer import GraphTransformer
from src.services.immersion_search import ImmersionSearch
from src.services.immersion_verifier import ImmersionVerifier
from src.services.linkage_solver import LinkageSolver
from src.services.minor_search import MinorSearch
from src.services.packing_solver import PackingSolver
from src.services.settings_service import SettingsService
from src.services.tangle_axioms import TangleAxiomChecker
from src.utils.constants import DEFAULT_K_MAX
from src.utils.enums import CertificateKind, ExitCode
from src.utils.errors import CapacityError, GraphInputError, ImmersionLabError

logger = logging.getLogger(__name__)

LOG_FORMAT = "[%(name)s] %(message)s"


def _int_list(text: str) -> List[int]:
    try:
        return [int(t) for t in text.split(',') if t.strip()]
    except ValueError:
        raise GraphInputError(f"expected comma-separated integers, got {text!r}") from None


def _sizes(text: str) -> List[int]:
    """`3..6`（両端を含む）または `3,4,5`"""
    if '..' in text:
        low, _, high = text.partition('..')
        try:
            return list(range(int(low), int(high) + 1))
        except ValueError:
            raise GraphInputError(f"bad size range {text!r}") from None
    return _int_list(text)


class CommandController:
    """サブコマンドの解析と各サービスへの振り分け"""

    def __init__(self):
        self._parser = self._build_parser()
        self._output: Optional[str] = None
        self._handlers: Dict[str, Callable[[argparse.Namespace], int]] = {
            'gen': self._gen,
            'linegraph': self._linegraph,
            'expand': self._expand,
            'double': self._double,
            'find-immersion': self._find_immersion,
            'verify': self._verify,
            'pack': self._pack,
            'cover': self._cover,
            'pack-half': self._pack_half,
            'cover-half': self._cover_half,
            'decompose': self._decompose,
            'experiment': self._experiment,
            'thorns': self._thorns,
            'link': self._link,
            'config': self._config,
        }

    # パーサー構築
    def _build_parser(self) -> argparse.ArgumentParser:
        parser = argparse.ArgumentParser(prog='immersion-lab', description="graph immersion and edge-tangle toolkit")
        parser.add_argument('-v', '--verbose', action='count', default=0, help="-v for INFO, -vv for DEBUG")
        parser.add_argument('-o', '--output', help="write the result to FILE instead of standard output")
        sub = parser.add_subparsers(dest='command', required=True)

        gen = sub.add_parser('gen', help="generate a named graph")
        gen.add_argument('family', choices=['wall', 'grid', 'theta', 'doubled-cycle', 'cycle', 'complete',
                                            'square-wall'])
        gen.add_argument('-m', type=int, help="rows (wall, grid)")
        gen.add_argument('-n', type=int, help="row length or size")
        gen.add_argument('-r', type=int, help="parallel edges (theta) or wall size (square-wall)")

        for name, text in (('linegraph', "line graph"), ('expand', "immersion expansion"),
                           ('double', "duplicate every edge")):
            p = sub.add_parser(name, help=text)
            p.add_argument('graph', nargs='?', default='-')
            if name == 'double':
                p.add_argument('-k', type=int, default=2)

        find = sub.add_parser('find-immersion', help="search for an H-immersion")
        self._add_pattern(find)
        find.add_argument('--fixed', default='', help="partial branch map h:g,h:g")
        find.add_argument('--forbid', default='', help="forbidden host edge ids a,b,c")

        verify = sub.add_parser('verify', help="verify a certificate")
        verify.add_argument('kind', choices=[k.value for k in CertificateKind])
        verify.add_argument('certificate')
        verify.add_argument('graph', nargs='?', default='-')
        verify.add_argument('-H', '--pattern', help="pattern for cover certificates")

        for name in ('pack', 'pack-half'):
            p = sub.add_parser(name, help="maximum edge-disjoint packing")
            self._add_pattern(p)
            p.add_argument('--k-max', type=int, default=DEFAULT_K_MAX)
        for name in ('cover', 'cover-half'):
            self._add_pattern(sub.add_parser(name, help="minimum edge cover"))

        decompose = sub.add_parser('decompose', help="edge-connectivity tree decomposition")
        decompose.add_argument('kind', choices=['2ec', 'near4ec'])
        decompose.add_argument('graph', nargs='?', default='-')

        experiment = sub.add_parser('experiment', help="packing versus covering over a graph family")
        experiment.add_argument('--family', required=True, choices=sorted(ExperimentRunner.FAMILIES))
        experiment.add_argument('--sizes', required=True, help="3..6 or 3,4,5")
        experiment.add_argument('-H', '--pattern', required=True)
        experiment.add_argument('--jobs', type=int, default=1)
        experiment.add_argument('--omit-timing', action='store_true')
        experiment.add_argument('--k-max', type=int, default=DEFAULT_K_MAX)

        self._add_pattern(sub.add_parser('thorns', help="search for H-thorns"))

        link = sub.add_parser('link', help="edge-disjoint trees through prescribed edge sets")
        link.add_argument('--parts', required=True, help="edge id groups such as 0,1;4")
        link.add_argument('graph', nargs='?', default='-')

        config = sub.add_parser('config', help="show or store search budgets")
        config.add_argument('key', nargs='?', help="setting such as packing_capacity")
        config.add_argument('value', nargs='?')
        return parser

    @staticmethod
    def _add_pattern(parser: argparse.ArgumentParser):
        parser.add_argument('-H', '--pattern', required=True, help="alias (k3, theta2, c4, ...) or graph file")
        parser.add_argument('graph', nargs='?', default='-')

    # 実行
    def run(self, argv: Optional[Sequence[str]] = None) -> int:
        args = self._parser.parse_args(argv)
        level = logging.WARNING if args.verbose == 0 else logging.INFO if args.verbose == 1 else logging.DEBUG
        logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr, force=True)
        self._output = args.output
        try:
            return int(self._handlers[args.command](args))
        except GraphInputError as e:
            print(f"input error: {e}", file=sys.stderr)
            return int(ExitCode.INPUT_ERROR)
        except CapacityError as e:
            print(f"capacity exceeded ({e.budget}): {e}", file=sys.stderr)
            return int(ExitCode.CAPACITY_ERROR)
        except ImmersionLabError as e:
            print(f"error: {e}", file=sys.stderr)
            return int(ExitCode.VIOLATION)

    # 入出力ヘルパー
    @staticmethod
    def _read(path: str) -> Multigraph:
        return GraphSerializer.read_graph(path, stream=sys.stdin)

    @staticmethod
    def _pattern(spec: str) -> Multigraph:
        if GraphGenerator.is_pattern_alias(spec):
            return GraphGenerator.pattern(spec)
        return GraphSerializer.read_graph(spec)

    def _write(self, text: str):
        """結果を標準出力、または -o のファイルへ書き出す"""
        if self._output is None:
            sys.stdout.write(text)
        elif not GraphSerializer.save_to_file(text, self._output):
            raise GraphInputError(f"cannot write {self._output}")

    def _emit_graph(self, g: Multigraph) -> int:
        self._write(GraphSerializer.serialize(g))
        return int(ExitCode.OK)

    def _emit_json(self, data: dict, ok: bool = True) -> int:
        self._write(GraphSerializer.dumps(data) + "\n")
        return int(ExitCode.OK if ok else ExitCode.VIOLATION)

    # グラフ生成・変換
    def _gen(self, args) -> int:
        def need(name: str) -> int:
            value = getattr(args, name)
            if value is None:
                raise GraphInputError(f"gen {args.family} needs -{name}")
            return value

        family = args.family
        if family == 'wall':
            g = GraphGenerator.wall(need('m'), need('n'))
        elif family == 'grid':
            g = GraphGenerator.grid(need('m'), need('n'))
        elif family == 'theta':
            g = GraphGenerator.theta_graph(need('r'))
        elif family == 'square-wall':
            g = GraphGenerator.square_wall(need('r'))
        elif family == 'doubled-cycle':
            g = GraphGenerator.doubled_cycle(need('n'))
        elif family == 'cycle':
            g = GraphGenerator.cycle(need('n'))
        else:
            g = GraphGenerator.complete(need('n'))
        return self._emit_graph(g)

    def _linegraph(self, args) -> int:
        return self._emit_graph(GraphTransformer.line_graph(self._read(args.graph))[0])

    def _expand(self, args) -> int:
        return self._emit_graph(GraphTransformer.immersion_expansion(self._read(args.graph))[0])

    def _double(self, args) -> int:
        return self._emit_graph(GraphTransformer.duplicate_edges(self._read(args.graph), args.k)[0])

    # イマージョン
    def _find_immersion(self, args) -> int:
        g, h = self._read(args.graph), self._pattern(args.pattern)
        fixed = {}
        for item in filter(None, (t.strip() for t in args.fixed.split(','))):
            try:
                left, right = item.split(':')
                fixed[int(left)] = int(right)
            except ValueError:
                raise GraphInputError(f"bad branch assignment {item!r}") from None
        imm = ImmersionSearch.find_immersion(g, h, fixed_branch=fixed, forbidden_edges=_int_list(args.forbid))
        if imm is None:
            return self._emit_json({'found': False}, ok=False)
        return self._emit_json(GraphSerializer.certificate(CertificateKind.IMMERSION.value, imm.to_dict()))

    def _thorns(self, args) -> int:
        th = MinorSearch.find_thorns(self._read(args.graph), self._pattern(args.pattern))
        if th is None:
            return self._emit_json({'found': False}, ok=False)
        return self._emit_json(GraphSerializer.certificate(CertificateKind.THORNS.value, th.to_dict()))

    # 検証
    def _verify(self, args) -> int:
        kind = CertificateKind(args.kind)
        data = GraphSerializer.load_json(args.certificate)
        verdict = self._verdict_for(kind, data, args)
        return self._emit_json(verdict.to_dict(), ok=verdict.ok)

    def _verdict_for(self, kind: CertificateKind, data: dict, args) -> Verdict:
        if kind == CertificateKind.IMMERSION:
            return ImmersionVerifier.verify_immersion(Immersion.from_dict(data))
        if kind == CertificateKind.HALF_INTEGRAL:
            return ImmersionVerifier.verify_half_integral(Immersion.from_dict(data))
        if kind == CertificateKind.SUBDIVISION:
            return ImmersionVerifier.verify_subdivision(Immersion.from_dict(data))
        if kind == CertificateKind.THORNS:
            return ImmersionVerifier.verify_thorns(Thorns.from_dict(data))
        if kind == CertificateKind.PACKING:
            try:
                witnesses = [Immersion.from_dict(w) for w in data['witnesses']]
            except (KeyError, TypeError) as e:
                raise GraphInputError(f"malformed packing certificate: {e}") from None
            return ImmersionVerifier.verify_packing(witnesses, half_integral=bool(data.get('halfIntegral')))

        host = self._read(args.graph)
        if kind == CertificateKind.TANGLE:
            return TangleAxiomChecker.check_tangle_axioms(TangleFamily.from_dict(host, data))
        if kind == CertificateKind.EDGE_TANGLE:
            return TangleAxiomChecker.check_edge_tangle_axioms(EdgeTangleFamily.from_dict(host, data))
        if kind == CertificateKind.DECOMPOSITION:
            return DecompositionValidator.validate(TreeDecomposition.from_dict(host, data))
        if args.pattern is None:
            raise GraphInputError("verify cover needs -H")
        try:
            cover = CoverResult(edges=frozenset(int(e) for e in data['edges']))
        except (KeyError, TypeError, ValueError) as e:
            raise GraphInputError(f"malformed cover certificate: {e}") from None
        return ImmersionVerifier.verify_cover(host, self._pattern(args.pattern), cover)

    # ソルバー
    def _pack(self, args) -> int:
        result = PackingSolver.max_packing(self._read(args.graph), self._pattern(args.pattern), args.k_max)
        return self._emit_json(GraphSerializer.certificate(CertificateKind.PACKING.value, result.to_dict()))

    def _pack_half(self, args) -> int:
        result = PackingSolver.half_integral_packing(self._read(args.graph), self._pattern(args.pattern), args.k_max)
        payload = result.to_dict()
        payload['halfIntegral'] = True
        return self._emit_json(GraphSerializer.certificate(CertificateKind.PACKING.value, payload))

    def _cover(self, args) -> int:
        result = PackingSolver.min_cover(self._read(args.graph), self._pattern(args.pattern))
        return self._emit_json(result.to_dict())

    def _cover_half(self, args) -> int:
        result = PackingSolver.half_integral_cover(self._read(args.graph), self._pattern(args.pattern))
        return self._emit_json(result.to_dict())

    def _decompose(self, args) -> int:
        g = self._read(args.graph)
        if args.kind == '2ec':
            td = DecompositionService.bridge_block_tree(g)
        else:
            td = DecompositionService.decompose_nearly_4ec(g)
        return self._emit_json(td.to_dict())

    def _experiment(self, args) -> int:
        h = self._pattern(args.pattern)

        def report(current: int, total: int, message: str):
            logger.info("[%d/%d] %s", current, total, message)

        rows = ExperimentRunner.ep_experiment(
            args.family, h, _sizes(args.sizes), pattern_name=args.pattern, jobs=args.jobs,
            omit_timing=args.omit_timing, k_max=args.k_max, progress=report,
        )
        stream = io.StringIO()
        ExperimentRunner.write_csv(rows, stream)
        self._write(stream.getvalue())
        return int(ExitCode.OK)

    def _link(self, args) -> int:
        g = self._read(args.graph)
        parts = [_int_list(group) for group in args.parts.split(';') if group.strip()]
        x = [eid for part in parts for eid in part]
        trees = LinkageSolver.tree_linkage(g, x, parts)
        if trees is None:
            return self._emit_json({'found': False}, ok=False)
        return self._emit_json({'found': True, 'trees': [sorted(t) for t in trees]})

    # 設定
    def _config(self, args) -> int:
        settings = SettingsService.get_instance()
        if args.key is not None:
            if args.value is None:
                raise GraphInputError(f"config {args.key} needs a value")
            settings.set(args.key, args.value)
            if not settings.save_settings():
                raise GraphInputError(f"cannot write {settings.settings_file}")
            logger.info("stored %s=%s in %s", args.key, settings.get(args.key), settings.settings_file)
        return self._emit_json(settings.to_dict())


def main(argv: Optional[Sequence[str]] = None) -> int:
    return CommandController().run(argv)
