# 列挙上限設定
CUT_SWEEP_MAX_VERTICES = 25   # 二分割スイープで扱える最大頂点数
SEPARATION_LIMIT = 1 << 20    # 分離列挙で生成してよい最大個数
CROSSING_SET_LIMIT = 1 << 20  # 交差辺集合列挙の候補数上限
SHELL_MAX_VERTICES = 10

# 探索予算（ノード展開数）
DEFAULT_SEARCH_CAPACITY = 2_000_000
DEFAULT_MINOR_CAPACITY = 2_000_000
DEFAULT_PACKING_CAPACITY = 2_000_000
DEFAULT_COVER_CAPACITY = 2_000_000
DEFAULT_LINKAGE_CAPACITY = 1_000_000
DEFAULT_TANGLE_SEARCH_CAPACITY = 1_000_000

# 環境設定
CAPACITY_ENV_VAR = "IMMERSION_LAB_CAPACITY"
HOME_ENV_VAR = "IMMERSION_LAB_HOME"
SETTINGS_DIR_NAME = ".immersion_lab"
SETTINGS_FILE_NAME = "settings.json"

# テキスト形式
TEXT_COMMENT_PREFIX = "#"
TEXT_VERTEX_TAG = "v"
TEXT_EDGE_TAG = "e"

# 実験CSV
CSV_COLUMNS = [
    "graph_id", "n_vertices", "n_edges", "pattern",
    "nu", "nu_exact", "tau", "tau_exact", "runtime_ms",
]
DEFAULT_K_MAX = 16

# パターン別名
CYCLE_ALIAS_RANGE = range(3, 9)   # c3..c8
THETA_ALIASES = (2, 3, 4)
COMPLETE_ALIASES = (2, 3, 4)

# 証明書
CERTIFICATE_VERSION = "1.0"
