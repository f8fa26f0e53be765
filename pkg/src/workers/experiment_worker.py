"""実験行の並列実行ワーカー"""
import logging
from concurrent.futures import ProcessPoolExecutor, as_completed
from typing import Callable, List, Optional, Sequence, Tuple

from src.models.results import ExperimentRow

logger = logging.getLogger(__name__)

ProgressCallback = Callable[[int, int, str], None]  # (current, total, message)


class ExperimentWorker:
    """各インスタンスを1タスクとして実行し、投入順に結果を返す

    jobs ≤ 1 なら同一プロセスで順に実行する。
    """

    def __init__(self, task: Callable[..., ExperimentRow], arguments: Sequence[Tuple],
                 jobs: int = 1, progress: Optional[ProgressCallback] = None):
        self._task = task
        self._arguments = list(arguments)
        self._jobs = max(1, jobs)
        self._progress = progress
        self._cancelled = False

    def cancel(self):
        """未着手のタスクを取り消す"""
        self._cancelled = True

    def _emit(self, current: int, message: str):
        if self._progress is not None:
            self._progress(current, len(self._arguments), message)

    def run(self) -> List[ExperimentRow]:
        total = len(self._arguments)
        if self._jobs == 1 or total <= 1:
            rows = []
            for i, args in enumerate(self._arguments):
                if self._cancelled:
                    break
                rows.append(self._task(*args))
                self._emit(i + 1, f"{rows[-1].graph_id} done")
            return rows

        results: List[Optional[ExperimentRow]] = [None] * total
        with ProcessPoolExecutor(max_workers=self._jobs) as pool:
            futures = {pool.submit(self._task, *args): i for i, args in enumerate(self._arguments)}
            done = 0
            for future in as_completed(futures):
                index = futures[future]
                results[index] = future.result()
                done += 1
                self._emit(done, f"{results[index].graph_id} done")
                if self._cancelled:
                    for pending in futures:
                        pending.cancel()
                    break
        logger.info("experiment finished %d of %d rows with %d workers",
                    sum(r is not None for r in results), total, self._jobs)
        return [r for r in results if r is not None]
