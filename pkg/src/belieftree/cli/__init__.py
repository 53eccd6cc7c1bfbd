from .main import main, build_parser
from .bench import BenchSettings, run_bench, bench_to_csv, read_bench_csv, leaf_nodes
