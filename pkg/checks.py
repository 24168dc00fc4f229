"""
Informativity Checks
Runs all four informativity tests on one data set and aggregates the verdicts.
"""

from tpds.config import RunConfig
from tpds.informativity import (
    CONTROLLABILITY,
    STABILITY,
    STABILIZABILITY,
    SYSID,
    TEST_NAMES,
    TESTS,
    informative_controllability,
    informative_stability,
    informative_stabilizability,
    informative_sysid,
)


def run_check(test, x0, x1=None, u0=None, cfg=None):
    """
    Run one informativity test.

    Args:
        test (str): 'sysid', 'stability', 'controllability' or 'stabilizability'
        x0 (Tensor3): state data X0
        x1 (Tensor3, optional): shifted state data X1 (all tests but sysid)
        u0 (Tensor3, optional): input data U0
        cfg (RunConfig, optional): method, tolerances, seed, threads

    Returns:
        InformativityReport
    """
    cfg = cfg or RunConfig()
    if test != SYSID and x1 is None:
        raise ValueError(f"the {test} test needs x1")

    if test == SYSID:
        return informative_sysid(x0, method=cfg.method, tolerances=cfg.tolerances, threads=cfg.threads)
    if test == STABILITY:
        return informative_stability(x0, x1, method=cfg.method, tolerances=cfg.tolerances,
                                     threads=cfg.threads)
    if test == CONTROLLABILITY:
        return informative_controllability(u0, x0, x1, method=cfg.method, tolerances=cfg.tolerances,
                                           seed=cfg.seed, threads=cfg.threads)
    if test == STABILIZABILITY:
        return informative_stabilizability(u0, x0, x1, method=cfg.method, tolerances=cfg.tolerances,
                                           seed=cfg.seed, threads=cfg.threads)
    raise ValueError(f"unknown test {test!r}; expected one of {TESTS}")


def run_all_checks(x0, x1, u0=None, cfg=None):
    """
    Run all four tests and aggregate the results.

    Args:
        x0, x1 (Tensor3): state data
        u0 (Tensor3, optional): input data
        cfg (RunConfig, optional): shared settings

    Returns:
        dict: {
            'informative_count': int,
            'overall': bool (all four informative),
            'summary': str,
            'reports': dict test -> InformativityReport,
            'breakdown': list of dicts with test, verdict, explanation
        }
    """
    reports = {test: run_check(test, x0, x1, u0, cfg) for test in TESTS}

    breakdown = [
        {
            'test': test,
            'name': TEST_NAMES[test],
            'verdict': report.verdict,
            'explanation': report.explanation,
        }
        for test, report in reports.items()
    ]

    informative_count = sum(1 for item in breakdown if item['verdict'])
    overall = informative_count == len(TESTS)

    if overall:
        summary = "✅ informative for every property"
    elif informative_count == 0:
        summary = "❌ informative for no property"
    else:
        passed = ", ".join(item['name'] for item in breakdown if item['verdict'])
        summary = f"⚠️ informative for {passed} only"

    return {
        'informative_count': informative_count,
        'overall': overall,
        'summary': summary,
        'reports': reports,
        'breakdown': breakdown,
    }
