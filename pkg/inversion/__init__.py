from inversion.result import InversionResult, Solution, solutions_to_jsonl
from inversion.verifier import verify_path
from inversion.dfs import invert_dfs, reach_box
from inversion.mitm import invert_mitm
from inversion.random_search import invert_random

__all__ = [
    'InversionResult', 'Solution', 'solutions_to_jsonl', 'verify_path',
    'invert_dfs', 'reach_box', 'invert_mitm', 'invert_random',
]
