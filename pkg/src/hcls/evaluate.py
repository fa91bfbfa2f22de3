"""Graph-reconstruction scoring and model comparison summaries."""

from collections import defaultdict

import numpy as np
from scipy.stats import rankdata

from .graphs import Graph


def _upper(mat, n=None):
    mat = np.asarray(mat, dtype=np.float64)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError("expected a square matrix")
    if n is not None and mat.shape[0] != n:
        raise ValueError(f"matrix size {mat.shape[0]} != graph size {n}")
    i, j = np.triu_indices(mat.shape[0], k=1)
    return mat[i, j]


def auc(scores, truth: Graph) -> float:
    """Rank-based (Mann-Whitney) AUC of pairwise scores against edges.

    Ties receive midranks, so a constant score gives exactly 0.5. Raises
    if the truth has no edges or no non-edges (the curve is undefined).
    """
    s = _upper(scores, truth.n)
    y = _upper(truth.adjacency().astype(np.float64), truth.n) > 0.5
    n_pos = int(y.sum())
    n_neg = y.size - n_pos
    if n_pos == 0 or n_neg == 0:
        raise ValueError("AUC undefined: truth needs at least one edge and one non-edge")
    ranks = rankdata(s)
    return float((ranks[y].sum() - n_pos * (n_pos + 1) / 2.0) / (n_pos * n_neg))


def accuracy(scores, truth: Graph, threshold=0.5) -> float:
    """Fraction of unordered pairs where 1[score >= threshold] matches."""
    s = _upper(scores, truth.n)
    y = _upper(truth.adjacency().astype(np.float64), truth.n) > 0.5
    return float(np.mean((s >= threshold) == y))


def _pearson(a, b):
    a = a - a.mean()
    b = b - b.mean()
    denom = np.sqrt((a * a).sum() * (b * b).sum())
    if denom == 0:
        return 0.0
    return float((a * b).sum() / denom)


def distance_correlations(true_d, inferred_d):
    """(Pearson r, Spearman rho) over the strict upper triangles."""
    a = _upper(true_d)
    b = _upper(inferred_d)
    if a.shape != b.shape:
        raise ValueError("distance matrices must have equal size")
    return _pearson(a, b), _pearson(rankdata(a), rankdata(b))


def paired_comparison(rows, group_keys=("n", "r"), metrics=("auc", "accuracy")):
    """Aggregate per-replicate results into mean / max / proportion-best.

    `rows` are dicts carrying the group keys, "model", "replicate" and the
    metric values. Proportion-best is computed per replicate within each
    group; ties award every tied model. Returns one summary dict per
    (group, model).
    """
    groups = defaultdict(lambda: defaultdict(dict))
    for row in rows:
        g = tuple(row[k] for k in group_keys)
        groups[g][row["replicate"]][row["model"]] = row

    out = []
    for g in sorted(groups):
        reps = groups[g]
        models = sorted({m for rep in reps.values() for m in rep})
        stats = {m: {metric: [] for metric in metrics} for m in models}
        best_counts = {m: {metric: 0 for metric in metrics} for m in models}
        for rep in sorted(reps):
            present = reps[rep]
            for metric in metrics:
                vals = {m: present[m][metric] for m in present}
                top = max(vals.values())
                for m, v in vals.items():
                    stats[m][metric].append(v)
                    if v >= top - 1e-12:
                        best_counts[m][metric] += 1
        n_reps = len(reps)
        for m in models:
            row = dict(zip(group_keys, g))
            row["model"] = m
            for metric in metrics:
                vals = stats[m][metric]
                row[f"{metric}_mean"] = float(np.mean(vals))
                row[f"{metric}_max"] = float(np.max(vals))
                row[f"{metric}_prop_best"] = best_counts[m][metric] / n_reps
            out.append(row)
    return out
