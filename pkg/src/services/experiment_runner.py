"""パッキング数 ν と被覆数 τ を比較する実験ハーネス"""
import csv
import logging
import time
from typing import Callable, Dict, Iterable, List, Optional, TextIO

from src.models.multigraph import Multigraph
from src.models.results import ExperimentRow
from src.services.graph_generator import GraphGenerator
from src.services.packing_solver import PackingSolver
from src.utils.constants import CSV_COLUMNS, DEFAULT_K_MAX
from src.utils.errors import GraphInputError, ImmersionLabError
from src.workers.experiment_worker import ExperimentWorker, ProgressCallback

logger = logging.getLogger(__name__)


class ExperimentRunner:
    """グラフ族の各サイズについて ν と τ を求め、τ ≥ ν を確認する"""

    # 族名 → サイズから1つのグラフを作る関数
    FAMILIES: Dict[str, Callable[[int], Multigraph]] = {
        'doubled-cycle': GraphGenerator.doubled_cycle,
        'cycle': GraphGenerator.cycle,
        'complete': GraphGenerator.complete,
        'doubled-complete': GraphGenerator.doubled_complete,
        'wall': GraphGenerator.square_wall,
        'grid': lambda n: GraphGenerator.grid(n, n),
        'theta': GraphGenerator.theta_graph,
        'path': GraphGenerator.path,
        'star': GraphGenerator.star,
    }

    @staticmethod
    def build(family: str, size: int) -> Multigraph:
        if family not in ExperimentRunner.FAMILIES:
            raise GraphInputError(f"unknown graph family {family!r}")
        return ExperimentRunner.FAMILIES[family](size)

    @staticmethod
    def run_instance(graph_id: str, g: Multigraph, h: Multigraph, pattern_name: str,
                     k_max: int = DEFAULT_K_MAX, omit_timing: bool = False) -> ExperimentRow:
        started = time.perf_counter()
        packing = PackingSolver.max_packing(g, h, k_max)
        cover = PackingSolver.min_cover(g, h)
        elapsed = int((time.perf_counter() - started) * 1000)
        if cover.size < packing.count:
            raise ImmersionLabError(f"{graph_id}: cover of size {cover.size} below packing {packing.count}")
        return ExperimentRow(
            graph_id=graph_id, n_vertices=g.n_vertices, n_edges=g.n_edges, pattern=pattern_name,
            nu=packing.count, nu_exact=packing.exact, tau=cover.size, tau_exact=cover.exact,
            runtime_ms=0 if omit_timing else elapsed,
        )

    @staticmethod
    def ep_experiment(family: str, h: Multigraph, sizes: Iterable[int], pattern_name: str = 'H',
                      jobs: int = 1, omit_timing: bool = False, k_max: int = DEFAULT_K_MAX,
                      progress: Optional[ProgressCallback] = None) -> List[ExperimentRow]:
        arguments = [
            (f"{family}-{n}", ExperimentRunner.build(family, n), h, pattern_name, k_max, omit_timing)
            for n in sizes
        ]
        logger.info("experiment %s x %s over %d sizes", family, pattern_name, len(arguments))
        worker = ExperimentWorker(ExperimentRunner.run_instance, arguments, jobs=jobs, progress=progress)
        return worker.run()

    @staticmethod
    def write_csv(rows: Iterable[ExperimentRow], stream: TextIO):
        writer = csv.writer(stream, lineterminator='\n')
        writer.writerow(CSV_COLUMNS)
        for row in rows:
            writer.writerow(row.to_csv_row())
