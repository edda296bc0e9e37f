"""
Entradas Lévy: Poisson composto com jobs de cauda pesada e movimento alfa-estável.
"""

from .rng import RngStream
from .samplers import (
    ArrivalStream,
    pareto_inverse_cdf,
    sample_pareto,
    sample_jobs,
    cp_arrivals,
    standard_stable,
    sample_stable_increment,
    marginal_sample,
)
from .tails import (
    c_alpha,
    mean_rate,
    tail_index,
    tail_coefficient,
    marginal_tail,
    summarize_inputs,
)

__all__ = [
    'RngStream',
    'ArrivalStream',
    'pareto_inverse_cdf',
    'sample_pareto',
    'sample_jobs',
    'cp_arrivals',
    'standard_stable',
    'sample_stable_increment',
    'marginal_sample',
    'c_alpha',
    'mean_rate',
    'tail_index',
    'tail_coefficient',
    'marginal_tail',
    'summarize_inputs'
]
