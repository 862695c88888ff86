from .streams import get_rng, spawn_streams, row_blocks, run_blocks, map_streams, DEFAULT_SEED
from .io import (
    parse_csv_rows,
    read_matrix_csv,
    read_sample_csv,
    format_csv,
    format_json,
    to_jsonable,
    read_json,
    write_text,
)
