"""Categorical data clustering by likelihood-ratio statistic minimization.

The package clusters categorical datasets by minimizing the simplified
ratio statistic (SRS), a likelihood-ratio test statistic comparing a
K-cluster multinomial model against a single population. On top of the
search it provides empirical p-values against count-preserving null models
and cluster-number estimation via a modified Gap statistic, BIC and BKPlot.
"""

from .baselines import entropy_search_run, kmodes_run
from .dataset import Dataset, discretize_numeric, load_csv, load_labels
from .metrics import acc, nmi
from .model_selection import (EstimationReport, bic_select, bkplot_select,
                              estimate_clusters, gap_profile,
                              gap_star_select)
from .objective import (ClusterCounts, expected_entropy,
                        expected_entropy_bounds, srs_full, srs_prime)
from .randomize import (RandomizedGroup, generate_group, randperm_dataset,
                        swap_dataset)
from .search import (Partition, SearchConfig, SearchState, ksigcat_run,
                     ksigcat_run_many, local_search_step)
from .significance import PValueResult, empirical_pvalue

__version__ = "0.1.0"

__all__ = [
    "Dataset", "load_csv", "load_labels", "discretize_numeric",
    "ClusterCounts", "srs_full", "srs_prime", "expected_entropy",
    "expected_entropy_bounds",
    "Partition", "SearchConfig", "SearchState", "ksigcat_run",
    "ksigcat_run_many", "local_search_step",
    "RandomizedGroup", "swap_dataset", "randperm_dataset", "generate_group",
    "PValueResult", "empirical_pvalue",
    "EstimationReport", "gap_profile", "gap_star_select", "bic_select",
    "bkplot_select", "estimate_clusters",
    "acc", "nmi",
    "kmodes_run", "entropy_search_run",
]
