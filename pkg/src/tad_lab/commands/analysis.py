import csv
import logging
import os
from typing import List

import numpy as np

from tad_lab.config import ExperimentConfig
from tad_lab.metrics import GapReport, TheoremReport, factorization_gap, total_correlation, validate_theorem1
from tad_lab.models import DistributionTable
from tad_lab.tasks import MarkovSource, enumerate_joint
from tad_lab.utils import stream

from .common import Artifacts, write_json, write_manifest

__all__ = ["cmd_gap", "cmd_validate"]

_logger = logging.getLogger(__name__)


def cmd_gap(config: ExperimentConfig) -> List[GapReport]:
    transition = config.analysis.gap_transition
    alphabet = len(transition)
    source = MarkovSource(
        alphabet_size=alphabet, initial=[1.0 / alphabet] * alphabet, transition=transition
    )
    os.makedirs(config.out_dir, exist_ok=True)
    path = Artifacts(config.out_dir).path("gap.csv")
    reports = []
    rows = []
    for K in config.analysis.gap_ks:
        joint = enumerate_joint(source, K)
        report = factorization_gap(joint)
        dual = total_correlation(joint)
        reports.append(report)
        rows.append([K, repr(report.gap), repr(dual), repr(abs(report.gap - dual))])
        _logger.info("K=%d factorization gap %.6f nats", K, report.gap)
    with open(path, mode="w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(["K", "gap", "total_correlation", "difference"])
        writer.writerows(rows)
    write_manifest(config, "gap", {"table": path})
    return reports


def cmd_validate(config: ExperimentConfig) -> List[TheoremReport]:
    art = Artifacts(config.out_dir)
    os.makedirs(config.out_dir, exist_ok=True)
    rng = stream(config.seed, "analysis")
    a, k = config.analysis.theorem_alphabet, config.analysis.theorem_k
    reports = []
    for _ in range(config.analysis.theorem_instances):
        teacher = DistributionTable.random_chain(a, k, rng)
        student = [rng.dirichlet(np.ones(a)) for _ in range(k)]
        reports.append(validate_theorem1(teacher, student))
    table_path = art.path("theorem.csv")
    with open(table_path, mode="w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(["instance", "lhs", "rhs", "residual"])
        for i, r in enumerate(reports):
            writer.writerow([i, repr(r.lhs), repr(r.rhs), repr(r.residual)])
    summary_path = art.path("theorem.json")
    max_residual = max(r.residual for r in reports)
    write_json({"instances": len(reports), "alphabet": a, "K": k, "max_residual": max_residual}, summary_path)
    _logger.info("Max residual over %d instances: %.3e", len(reports), max_residual)
    write_manifest(config, "validate-theorem", {"table": table_path, "summary": summary_path})
    return reports
