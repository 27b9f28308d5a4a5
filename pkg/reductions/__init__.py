from reductions.graph import Dag, TransitionSystem, parse_dag, random_dag, random_transition_system
from reductions.oracles import dag_path_count_oracle, reachability_oracle, shortest_distance
from reductions.embedding import (
    CrossTalk, DagEncoding, EmbeddingReport, ReachabilityAnswer, TransitionEncoding, VertexEmbedding,
    decide_reachability, embed_dag, embed_transition_system, report_to_json, verify_dag_embedding,
)

__all__ = [
    'Dag', 'TransitionSystem', 'parse_dag', 'random_dag', 'random_transition_system',
    'dag_path_count_oracle', 'reachability_oracle', 'shortest_distance',
    'CrossTalk', 'DagEncoding', 'EmbeddingReport', 'ReachabilityAnswer', 'TransitionEncoding',
    'VertexEmbedding', 'decide_reachability', 'embed_dag', 'embed_transition_system',
    'report_to_json', 'verify_dag_embedding',
]
