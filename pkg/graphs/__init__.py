"""
图模块 - 图表示、笛卡尔积实例、生成器与文本格式
"""
from .graph import (
    DegeneracyOrder,
    Graph,
    cartesian_product,
    complete_graph,
    cycle_graph,
    degeneracy_order,
    hypercube_graph,
    path_graph,
)
from .product import EdgeMode, ProductInstance, induced_edges, realize
from .generators import (
    gen_dense_monotone,
    gen_family,
    gen_grid,
    gen_hamming,
    gen_hypercube,
    gen_random_factor,
    gen_random_induced,
    gen_random_sub,
    gen_star,
)
from .io import read_graph, read_instance, write_graph, write_instance

__all__ = [
    'DegeneracyOrder',
    'Graph',
    'cartesian_product',
    'complete_graph',
    'cycle_graph',
    'degeneracy_order',
    'hypercube_graph',
    'path_graph',
    'EdgeMode',
    'ProductInstance',
    'induced_edges',
    'realize',
    'gen_dense_monotone',
    'gen_family',
    'gen_grid',
    'gen_hamming',
    'gen_hypercube',
    'gen_random_factor',
    'gen_random_induced',
    'gen_random_sub',
    'gen_star',
    'read_graph',
    'read_instance',
    'write_graph',
    'write_instance',
]
