from state.benchmark_state import BenchmarkState
from state.run_config import RunConfig

__all__ = ['BenchmarkState', 'RunConfig']
