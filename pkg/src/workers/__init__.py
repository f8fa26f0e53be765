"""実験ワーカーモジュール"""
from src.workers.experiment_worker import ExperimentWorker

__all__ = ['ExperimentWorker']
